//! Multivariate gcd over the rationals by primitive remainder sequences,
//! recursing on the coefficient ring for contents.

use crate::{Error, Result};

use super::{resultant::pseudo_rem, Polynomial, Var};

/// Primitive gcd with positive leading rational under the term order.
/// Errors when both arguments are zero.
pub fn gcd(p: &Polynomial, q: &Polynomial) -> Result<Polynomial> {
    if p.is_zero() && q.is_zero() {
        return Err(Error::BothZero);
    }
    Ok(gcd_inner(p, q))
}

fn gcd_inner(p: &Polynomial, q: &Polynomial) -> Polynomial {
    if p.is_zero() {
        return q.canonical();
    }
    if q.is_zero() {
        return p.canonical();
    }
    // nonzero constants are units over Q
    if p.is_constant() || q.is_constant() {
        return Polynomial::one(p.nvars());
    }
    let (lp, lq) = (p.level(), q.level());
    if lp != lq {
        // only the content of the higher-level polynomial can be shared
        let (hi, lo) = if lp > lq { (p, q) } else { (q, p) };
        let v = hi.main_var().unwrap();
        let c = content_in_var(hi, v);
        return gcd_inner(&c, lo);
    }
    let v = Var(lp - 1);
    let cp = content_in_var(p, v);
    let cq = content_in_var(q, v);
    let pp_p = p.exact_div(&cp).expect("content divides");
    let pp_q = q.exact_div(&cq).expect("content divides");
    let cont = gcd_inner(&cp, &cq);

    let (mut a, mut b) = if pp_p.degree(v) >= pp_q.degree(v) {
        (pp_p, pp_q)
    } else {
        (pp_q, pp_p)
    };
    while !b.is_zero() {
        if b.degree(v).unwrap() == 0 {
            // coprime in v; only the contents are shared
            return cont.canonical();
        }
        let r = pseudo_rem(&a, &b, v);
        a = b;
        b = primitive_part(&r, v);
    }
    (&cont * &primitive_part(&a, v)).canonical()
}

/// Content of `p` with respect to `v`: the gcd of its `v`-coefficients,
/// a polynomial of strictly lower level (or a constant 1).
pub fn content_in_var(p: &Polynomial, v: Var) -> Polynomial {
    let mut acc = Polynomial::zero(p.nvars());
    for c in p.coeffs(v) {
        if c.is_zero() {
            continue;
        }
        acc = gcd_inner(&acc, &c);
        if acc.is_constant() && !acc.is_zero() {
            return Polynomial::one(p.nvars());
        }
    }
    acc.canonical()
}

/// `p` divided by its `v`-content, in canonical scalar form.
fn primitive_part(p: &Polynomial, v: Var) -> Polynomial {
    if p.is_zero() {
        return p.clone();
    }
    if p.degree(v).unwrap_or(0) == 0 {
        return p.canonical();
    }
    let c = content_in_var(p, v);
    p.exact_div(&c).expect("content divides").canonical()
}
