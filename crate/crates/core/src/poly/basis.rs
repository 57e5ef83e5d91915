//! Normalization of polynomial sets into a coprime squarefree basis:
//! scalar canonicalization, Yun squarefree decomposition in the main
//! variable, and pairwise gcd splitting until all pairs are coprime.

use super::{content_in_var, gcd::gcd, Polynomial, Var};

/// Yun decomposition of `p` in `v` into squarefree factors with
/// multiplicities. `p` must have positive degree in `v` and no `v`-content.
pub fn squarefree_decomposition(p: &Polynomial, v: Var) -> Vec<(Polynomial, u32)> {
    let deriv = p.derivative(v);
    let g = gcd(p, &deriv).expect("nonzero input");
    if g.degree(v).unwrap_or(0) == 0 {
        return vec![(p.canonical(), 1)];
    }
    let mut out = Vec::new();
    let mut w = p.exact_div(&g).expect("gcd divides").canonical();
    let mut y = deriv.exact_div(&g).expect("gcd divides");
    let mut mult = 1u32;
    loop {
        let z = &y - &w.derivative(v);
        if z.is_zero() {
            if !w.is_constant() {
                out.push((w.canonical(), mult));
            }
            break;
        }
        let gi = gcd(&w, &z).expect("nonzero");
        if !gi.is_constant() {
            out.push((gi.canonical(), mult));
        }
        w = w.exact_div(&gi).expect("factor divides").canonical();
        y = z.exact_div(&gi).expect("factor divides");
        if w.is_constant() {
            break;
        }
        mult += 1;
    }
    out
}

/// Variety-preserving split of one polynomial into canonical factors.
///
/// A polynomial already squarefree in its main variable (gcd with its main
/// derivative has main-variable degree zero) is kept whole, content included.
/// Otherwise the main-variable content is split off recursively and the
/// primitive part is decomposed with Yun's algorithm. Constants vanish.
pub fn normalize_single(p: &Polynomial) -> Vec<Polynomial> {
    let mut out = Vec::new();
    split_single(p, &mut out);
    out
}

fn split_single(p: &Polynomial, out: &mut Vec<Polynomial>) {
    if p.is_constant() {
        return;
    }
    let v = p.main_var().unwrap();
    let deriv = p.derivative(v);
    let g = gcd(p, &deriv).expect("nonzero input");
    if g.degree(v).unwrap_or(0) == 0 {
        push_unique(out, p.canonical());
        return;
    }
    let c = content_in_var(p, v);
    if !c.is_constant() {
        split_single(&c, out);
    }
    let pp = p.exact_div(&c).expect("content divides");
    for (f, _) in squarefree_decomposition(&pp, v) {
        push_unique(out, f);
    }
}

fn push_unique(out: &mut Vec<Polynomial>, p: Polynomial) {
    if !out.contains(&p) {
        out.push(p);
    }
}

/// Splits entries until all pairwise gcds are constant. Preserves the order
/// in which factors first appear; returns indices of entries that replaced a
/// split entry so callers can track provenance.
pub(crate) fn refine_coprime(list: &mut Vec<Polynomial>) {
    'outer: loop {
        for i in 0..list.len() {
            for j in (i + 1)..list.len() {
                let g = gcd(&list[i], &list[j]).expect("nonzero entries");
                if g.is_constant() {
                    continue;
                }
                let pi = list[i].exact_div(&g).expect("gcd divides").canonical();
                let pj = list[j].exact_div(&g).expect("gcd divides").canonical();
                // replace entry i by g (keeping its slot), drop entry j,
                // then re-append the cofactors
                list[i] = g.canonical();
                list.remove(j);
                for piece in [pj, pi] {
                    if !piece.is_constant() && !list.contains(&piece) {
                        list.push(piece);
                    }
                }
                let mut seen = Vec::new();
                list.retain(|p| {
                    if seen.contains(p) {
                        false
                    } else {
                        seen.push(p.clone());
                        true
                    }
                });
                continue 'outer;
            }
        }
        return;
    }
}

/// Replaces a set of polynomials by a coprime squarefree basis with the same
/// product variety: non-constant, primitive, squarefree in the main variable,
/// pairwise coprime, deduplicated up to rational scalar, sorted canonically.
pub fn normalize_basis(ps: &[Polynomial]) -> Vec<Polynomial> {
    let mut out: Vec<Polynomial> = Vec::new();
    for p in ps {
        for f in normalize_single(p) {
            push_unique(&mut out, f);
        }
    }
    refine_coprime(&mut out);
    out.sort();
    out
}
