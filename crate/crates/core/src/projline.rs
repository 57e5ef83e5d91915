//! The real projective line: the reals plus a single point at infinity,
//! its cyclic ternary order, and projective roots of univariate polynomials
//! relative to a reference degree.

use std::cmp::Ordering;

use crate::arith::Rat;
use crate::poly::{squarefree_decomposition, Polynomial};
use crate::realroots::{compare, isolate, AlgebraicValue};
use crate::{Error, Result};

/// A point of the projective line: a real algebraic value or infinity.
#[derive(Debug, Clone)]
pub enum ProjPoint {
    Finite(AlgebraicValue),
    Infinity,
}

impl ProjPoint {
    pub fn from_rat(r: Rat) -> ProjPoint {
        ProjPoint::Finite(AlgebraicValue::from_rat(r))
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, ProjPoint::Infinity)
    }

    /// Total order extending the real order with `a < infinity` for all `a`.
    pub fn cmp_extended(&self, other: &ProjPoint) -> Ordering {
        match (self, other) {
            (ProjPoint::Infinity, ProjPoint::Infinity) => Ordering::Equal,
            (ProjPoint::Infinity, ProjPoint::Finite(_)) => Ordering::Greater,
            (ProjPoint::Finite(_), ProjPoint::Infinity) => Ordering::Less,
            (ProjPoint::Finite(a), ProjPoint::Finite(b)) => compare(a, b),
        }
    }
}

impl PartialEq for ProjPoint {
    fn eq(&self, other: &Self) -> bool {
        self.cmp_extended(other) == Ordering::Equal
    }
}

impl Eq for ProjPoint {}

/// True when the triple is clockwise cyclically ordered: under the extended
/// total order, `a < b < c` or `b < c < a` or `c < a < b`. The arguments must
/// be pairwise distinct.
pub fn cyclic3(t1: &ProjPoint, t2: &ProjPoint, t3: &ProjPoint) -> Result<bool> {
    let ab = t1.cmp_extended(t2);
    let bc = t2.cmp_extended(t3);
    let ca = t3.cmp_extended(t1);
    if ab == Ordering::Equal || bc == Ordering::Equal || ca == Ordering::Equal {
        return Err(Error::NotDistinct);
    }
    let asc = |o: Ordering| o == Ordering::Less;
    Ok((asc(ab) && asc(bc)) || (asc(bc) && asc(ca)) || (asc(ca) && asc(ab)))
}

/// True when every index-increasing triple of the chain is cyclically
/// ordered. Requires length at least 3 and pairwise distinct points.
pub fn cyclic_chain(ts: &[ProjPoint]) -> Result<bool> {
    assert!(ts.len() >= 3, "cyclic_chain needs at least three points");
    for i in 0..ts.len() {
        for j in (i + 1)..ts.len() {
            if ts[i].cmp_extended(&ts[j]) == Ordering::Equal {
                return Err(Error::NotDistinct);
            }
        }
    }
    for i in 0..ts.len() {
        for j in (i + 1)..ts.len() {
            for k in (j + 1)..ts.len() {
                if !cyclic3(&ts[i], &ts[j], &ts[k])? {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Projective roots of `p` with respect to reference degree `d`: the real
/// roots with their multiplicities, plus infinity with multiplicity
/// `d - deg(p)` when that is positive. Complex roots are unreported, so the
/// multiplicities sum to at most `d`.
pub struct ProjRootSet {
    pub roots: Vec<(ProjPoint, u32)>,
}

impl ProjRootSet {
    pub fn multiplicity_at_infinity(&self) -> u32 {
        self.roots
            .iter()
            .find(|(p, _)| p.is_infinity())
            .map(|(_, m)| *m)
            .unwrap_or(0)
    }
}

pub fn projective_roots(p: &Polynomial, d: u32) -> Result<ProjRootSet> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let deg = match p.main_var() {
        Some(v) => p.degree(v).unwrap(),
        None => 0,
    };
    if d < deg {
        return Err(Error::DegreeBound { d, deg });
    }
    let mut roots: Vec<(ProjPoint, u32)> = Vec::new();
    if let Some(v) = p.main_var() {
        // multiplicities come from squarefree-decomposition exponents
        for (factor, mult) in squarefree_decomposition(p, v) {
            for value in isolate(&factor)?.roots() {
                roots.push((ProjPoint::Finite(value.clone()), mult));
            }
        }
        roots.sort_by(|a, b| a.0.cmp_extended(&b.0));
    }
    if d > deg {
        roots.push((ProjPoint::Infinity, d - deg));
    }
    Ok(ProjRootSet { roots })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::poly::{parse_poly, VarOrder};

    fn pt(n: i64, d: i64) -> ProjPoint {
        ProjPoint::from_rat(rat(n, d))
    }

    fn inf() -> ProjPoint {
        ProjPoint::Infinity
    }

    fn grid() -> Vec<ProjPoint> {
        let mut g: Vec<ProjPoint> = [-3i64, -2, -1, 0, 1, 2, 3]
            .iter()
            .map(|k| pt(*k, 1))
            .collect();
        g.insert(4, pt(1, 2));
        g.push(inf());
        g
    }

    #[test]
    fn cyclic3_examples() {
        assert!(cyclic3(&pt(1, 1), &pt(2, 1), &pt(3, 1)).unwrap());
        assert!(!cyclic3(&pt(1, 1), &pt(3, 1), &pt(2, 1)).unwrap());
        assert!(cyclic3(&pt(3, 1), &inf(), &pt(1, 1)).unwrap());
        assert!(cyclic3(&pt(1, 1), &pt(2, 1), &inf()).unwrap());
        assert!(cyclic3(&inf(), &pt(1, 1), &pt(2, 1)).unwrap());
        assert!(cyclic3(&pt(2, 1), &inf(), &pt(1, 1)).unwrap());
        assert!(cyclic3(&pt(1, 1), &pt(1, 1), &inf()).is_err());
    }

    #[test]
    fn cyclic_chain_examples() {
        let a = [pt(1, 1), pt(2, 1), pt(3, 1), inf()];
        assert!(cyclic_chain(&a).unwrap());
        let b = [pt(1, 1), pt(3, 1), pt(2, 1), inf()];
        assert!(!cyclic_chain(&b).unwrap());
        let rotated = [pt(0, 1), inf(), pt(-3, 1), pt(-1, 1)];
        assert!(cyclic_chain(&rotated).unwrap());
    }

    #[test]
    fn totality_rotation_restriction_on_grid() {
        let g = grid();
        let n = g.len();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if i == j || j == k || i == k {
                        continue;
                    }
                    let (x, y, z) = (&g[i], &g[j], &g[k]);
                    let xyz = cyclic3(x, y, z).unwrap();
                    let xzy = cyclic3(x, z, y).unwrap();
                    assert!(xyz != xzy, "exactly one orientation holds");
                    // rotation invariance
                    assert_eq!(xyz, cyclic3(y, z, x).unwrap());
                    assert_eq!(xyz, cyclic3(z, x, y).unwrap());
                    // restriction: with finite minimum first, cyclic3 = a<b<c
                    if !x.is_infinity() && !y.is_infinity() && !z.is_infinity() {
                        let min_first = x.cmp_extended(y) == Ordering::Less
                            && x.cmp_extended(z) == Ordering::Less;
                        if min_first {
                            assert_eq!(xyz, y.cmp_extended(z) == Ordering::Less);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn projective_roots_examples() {
        let vars = VarOrder::new(vec!["x"]).unwrap();
        let p = |s: &str| parse_poly(s, &vars).unwrap();

        let set = projective_roots(&p("2*x - 1"), 2).unwrap();
        assert_eq!(set.roots.len(), 2);
        assert_eq!(set.roots[0].0, pt(1, 2));
        assert_eq!(set.roots[0].1, 1);
        assert_eq!(set.multiplicity_at_infinity(), 1);

        let set = projective_roots(&p("x^2 - 1"), 2).unwrap();
        assert_eq!(set.multiplicity_at_infinity(), 0);
        assert_eq!(set.roots.len(), 2);

        let set = projective_roots(&p("3"), 2).unwrap();
        assert_eq!(set.roots.len(), 1);
        assert_eq!(set.multiplicity_at_infinity(), 2);

        assert!(projective_roots(&p("x^2 - 1"), 1).is_err());

        // repeated factor carries its multiplicity
        let sq = &p("x - 1") * &p("x - 1");
        let set = projective_roots(&sq, 3).unwrap();
        assert_eq!(set.roots[0].1, 2);
        assert_eq!(set.multiplicity_at_infinity(), 1);
    }
}
