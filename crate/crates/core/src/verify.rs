//! Independent oracles and randomized verification: sign-invariance sampling
//! inside constructed cells, Sturm-count and Sylvester-determinant
//! cross-checks, and the projection-subset comparator.
//!
//! The oracles here deliberately take different algorithmic routes from the
//! main code paths: the resultant oracle expands the Sylvester determinant by
//! fraction-free elimination (the engine uses subresultant remainder
//! sequences), and root counting uses Sturm sequences (isolation uses
//! Descartes bisection).

use std::collections::BTreeSet;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::arith::{format_rat, sign, Rat};
use crate::cellmodel::{eval_indexed_root, Cell, IndexedRoot, SymbolicInterval};
use crate::poly::{Polynomial, Var, VarOrder};
use crate::realroots::UniPoly;
use crate::{Error, Result};

/// A single verification failure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    SignMismatch { point: Vec<Rat>, poly: Polynomial, expected: i8, observed: i8 },
    UndefinedBound { prefix: Vec<Rat>, poly: Polynomial },
}

/// Result of a sign-invariance sampling run; empty violations means pass.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub samples_tested: u64,
    pub violations: Vec<Violation>,
    pub skipped_section_levels: Vec<usize>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn undefined_bound_events(&self) -> usize {
        self.violations
            .iter()
            .filter(|v| matches!(v, Violation::UndefinedBound { .. }))
            .count()
    }
}

/// Draws rational points inside the cell level by level and compares the
/// sign of every polynomial against its sign at the cell sample.
///
/// Sector levels pick a grid rational strictly between the refined bound
/// values; section levels reuse the evaluated bound when it is rational and
/// otherwise fall back to the sample prefix, recording the level as skipped.
/// An undefined bound at a drawn prefix is reported as a violation.
pub fn verify_sign_invariance(
    polys: &[Polynomial],
    cell: &Cell,
    count: u64,
    seed: u64,
) -> VerifyReport {
    const GRID: i64 = 64;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let expected: Vec<i8> = polys.iter().map(|p| sign(&p.eval(&cell.sample))).collect();
    let mut violations = Vec::new();
    let mut skipped: BTreeSet<usize> = BTreeSet::new();
    let mut samples_tested = 0u64;

    'outer: for _ in 0..count {
        samples_tested += 1;
        let mut point: Vec<Rat> = Vec::with_capacity(cell.intervals.len());
        for (i, interval) in cell.intervals.iter().enumerate() {
            match interval {
                SymbolicInterval::Section { bound } => {
                    match eval_indexed_root(bound, &point) {
                        None => {
                            violations.push(Violation::UndefinedBound {
                                prefix: point.clone(),
                                poly: bound.poly.clone(),
                            });
                            continue 'outer;
                        }
                        Some(v) => match v.as_rat() {
                            Some(r) => point.push(r.clone()),
                            None => {
                                // irrational section value away from the
                                // sample prefix: re-pin this level and all
                                // below to the sample
                                skipped.insert(i + 1);
                                point = cell.sample[..=i].to_vec();
                            }
                        },
                    }
                }
                SymbolicInterval::Sector { lower, upper } => {
                    let eval_side = |b: &Option<IndexedRoot>,
                                     point: &[Rat]|
                     -> std::result::Result<
                        Option<crate::realroots::AlgebraicValue>,
                        Polynomial,
                    > {
                        match b {
                            None => Ok(None),
                            Some(ir) => match eval_indexed_root(ir, point) {
                                Some(v) => Ok(Some(v)),
                                None => Err(ir.poly.clone()),
                            },
                        }
                    };
                    let lo = match eval_side(lower, &point) {
                        Ok(v) => v,
                        Err(poly) => {
                            violations
                                .push(Violation::UndefinedBound { prefix: point.clone(), poly });
                            continue 'outer;
                        }
                    };
                    let hi = match eval_side(upper, &point) {
                        Ok(v) => v,
                        Err(poly) => {
                            violations
                                .push(Violation::UndefinedBound { prefix: point.clone(), poly });
                            continue 'outer;
                        }
                    };
                    let j = rng.gen_range(0..GRID);
                    point.push(pick_between(lo, hi, &cell.sample[i], j, GRID));
                }
            }
        }
        for (p, exp) in polys.iter().zip(&expected) {
            let obs = sign(&p.eval(&point));
            if obs != *exp {
                violations.push(Violation::SignMismatch {
                    point: point.clone(),
                    poly: p.clone(),
                    expected: *exp,
                    observed: obs,
                });
            }
        }
    }

    VerifyReport {
        samples_tested,
        violations,
        skipped_section_levels: skipped.into_iter().collect(),
    }
}

/// A grid rational strictly between two (possibly missing) algebraic bounds.
fn pick_between(
    lo: Option<crate::realroots::AlgebraicValue>,
    hi: Option<crate::realroots::AlgebraicValue>,
    center: &Rat,
    j: i64,
    grid: i64,
) -> Rat {
    let two = Rat::from_integer(2.into());
    match (lo, hi) {
        (Some(mut l), Some(mut h)) => {
            while !l.interval().disjoint(h.interval()) {
                l = l.refine(&(l.interval().width() / &two));
                h = h.refine(&(h.interval().width() / &two));
            }
            let base_lo = if l.interval().is_point() {
                l.interval().lo.clone()
            } else {
                l.interval().hi.clone()
            };
            // for the upper bound, the interval's lower endpoint is always a
            // safe rational at or below the bound value
            let base_hi = h.interval().lo.clone();
            if base_lo == base_hi {
                return base_lo;
            }
            let width = &base_hi - &base_lo;
            base_lo + width * Rat::new((2 * j + 1).into(), (2 * grid).into())
        }
        (None, Some(h)) => {
            let base = h.interval().lo.clone();
            base - Rat::new((8 * (2 * j + 1)).into(), (2 * grid).into())
        }
        (Some(l), None) => {
            let base = if l.interval().is_point() {
                l.interval().lo.clone()
            } else {
                l.interval().hi.clone()
            };
            base + Rat::new((8 * (2 * j + 1)).into(), (2 * grid).into())
        }
        (None, None) => {
            center.clone() + Rat::new((2 * j + 1 - grid).into(), grid.into())
        }
    }
}

/// Resultant by fraction-free determinant expansion of the Sylvester matrix;
/// independent of the remainder-sequence path and exact including sign.
pub fn oracle_resultant(p: &Polynomial, q: &Polynomial, v: Var) -> Result<Polynomial> {
    let m = p.degree(v).ok_or(Error::ZeroPolynomial)?;
    let n = q.degree(v).ok_or(Error::ZeroPolynomial)?;
    if m < 1 || n < 1 {
        return Err(Error::DegreeTooLow { op: "oracle_resultant" });
    }
    let nvars = p.nvars();
    let size = (m + n) as usize;
    let zero = Polynomial::zero(nvars);
    let mut mat = vec![vec![zero.clone(); size]; size];
    let pc = p.coeffs(v);
    let qc = q.coeffs(v);
    for r in 0..n as usize {
        for (k, c) in pc.iter().rev().enumerate() {
            mat[r][r + k] = c.clone();
        }
    }
    for r in 0..m as usize {
        for (k, c) in qc.iter().rev().enumerate() {
            mat[n as usize + r][r + k] = c.clone();
        }
    }
    Ok(det_bareiss(mat, nvars))
}

/// Fraction-free (Bareiss) determinant over the polynomial ring.
fn det_bareiss(mut m: Vec<Vec<Polynomial>>, nvars: usize) -> Polynomial {
    let n = m.len();
    if n == 0 {
        return Polynomial::one(nvars);
    }
    let mut negate = false;
    let mut prev = Polynomial::one(nvars);
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&l| !m[l][k].is_zero()) {
                Some(l) => {
                    m.swap(k, l);
                    negate = !negate;
                }
                None => return Polynomial::zero(nvars),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[k][k] * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num.exact_div(&prev).expect("Bareiss division is exact");
            }
            m[i][k] = Polynomial::zero(nvars);
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        -&det
    } else {
        det
    }
}

/// Number of real roots of a squarefree univariate polynomial in `(lo, hi)`,
/// by Sturm sign-variation counting. The endpoints must not be roots.
pub fn oracle_root_count(p: &Polynomial, lo: &Rat, hi: &Rat) -> Result<usize> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let u = UniPoly::from_polynomial(p)?;
    if u.sign_at(lo) == 0 || u.sign_at(hi) == 0 {
        return Err(Error::EndpointIsRoot);
    }
    let chain = sturm_chain(&u);
    let variations = |x: &Rat| {
        let mut count = 0usize;
        let mut last = 0i8;
        for s in chain.iter().map(|q| q.sign_at(x)) {
            if s != 0 {
                if last != 0 && s != last {
                    count += 1;
                }
                last = s;
            }
        }
        count
    };
    let (vl, vh) = (variations(lo), variations(hi));
    Ok(vl.saturating_sub(vh))
}

fn sturm_chain(p: &UniPoly) -> Vec<UniPoly> {
    let mut chain = vec![p.clone(), p.derivative()];
    while chain.last().is_some_and(|b| !b.is_zero() && b.degree() >= 1) {
        let len = chain.len();
        let r = neg_rem(&chain[len - 2], &chain[len - 1]);
        if r.is_zero() {
            break;
        }
        chain.push(r);
    }
    chain
}

/// `-(a mod b)` over Q, canonicalized.
fn neg_rem(a: &UniPoly, b: &UniPoly) -> UniPoly {
    let mut ra: Vec<Rat> = a.coeffs().iter().map(|c| Rat::from_integer(c.clone())).collect();
    let rb: Vec<Rat> = b.coeffs().iter().map(|c| Rat::from_integer(c.clone())).collect();
    let trim = |v: &mut Vec<Rat>| while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    };
    trim(&mut ra);
    while ra.len() >= rb.len() && !ra.is_empty() {
        let q = ra.last().unwrap() / rb.last().unwrap();
        let shift = ra.len() - rb.len();
        for (i, c) in rb.iter().enumerate() {
            let val = &q * c;
            ra[shift + i] -= val;
        }
        trim(&mut ra);
    }
    let neg: Vec<Rat> = ra.iter().map(|c| -c).collect();
    // sign matters for Sturm chains: negate without canonical sign-flip
    UniPoly::from_rat_coeffs_signed(&neg)
}

/// Outcome of a trace-set comparison.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TraceComparison {
    Subset,
    NotSubset { witnesses: Vec<Polynomial> },
}

/// Compares the normalized trace polynomial sets of two cells built from the
/// same inputs: subset when every trace polynomial of `pd` also occurs in
/// `classical`.
pub fn compare_traces(classical: &Cell, pd: &Cell) -> TraceComparison {
    let cl: BTreeSet<&Polynomial> = classical.trace.iter().map(|e| &e.poly).collect();
    let mut witnesses: Vec<Polynomial> = pd
        .trace
        .iter()
        .map(|e| &e.poly)
        .filter(|p| !cl.contains(*p))
        .cloned()
        .collect();
    witnesses.sort();
    witnesses.dedup();
    if witnesses.is_empty() {
        TraceComparison::Subset
    } else {
        TraceComparison::NotSubset { witnesses }
    }
}

// --- report document --------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ViolationDoc {
    pub kind: String,
    pub point: Vec<String>,
    pub poly: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected: Option<i8>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub observed: Option<i8>,
}

/// Serialized verification report, embedded in the cell document.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerifyReportDoc {
    pub samples_tested: u64,
    pub violations: Vec<ViolationDoc>,
    pub skipped_section_levels: Vec<usize>,
}

pub fn report_doc(report: &VerifyReport, vars: &VarOrder) -> VerifyReportDoc {
    VerifyReportDoc {
        samples_tested: report.samples_tested,
        violations: report
            .violations
            .iter()
            .map(|v| match v {
                Violation::SignMismatch { point, poly, expected, observed } => ViolationDoc {
                    kind: "sign-mismatch".into(),
                    point: point.iter().map(format_rat).collect(),
                    poly: poly.to_text(vars),
                    expected: Some(*expected),
                    observed: Some(*observed),
                },
                Violation::UndefinedBound { prefix, poly } => ViolationDoc {
                    kind: "undefined-bound".into(),
                    point: prefix.iter().map(format_rat).collect(),
                    poly: poly.to_text(vars),
                    expected: None,
                    observed: None,
                },
            })
            .collect(),
        skipped_section_levels: report.skipped_section_levels.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::poly::parse_poly;

    fn vars2() -> VarOrder {
        VarOrder::new(vec!["x1", "x2"]).unwrap()
    }

    fn p2(src: &str) -> Polynomial {
        parse_poly(src, &vars2()).unwrap()
    }

    #[test]
    fn oracle_resultant_matches_prs() {
        use crate::poly::resultant;
        let cases = [
            ("x1^2+x2^2-1", "1/2*x1 - 1/2 - x2"),
            ("x1^2+x2^2-1", "-x1*x2 - 3/4"),
            ("x2^3 + x1*x2 + 1", "x1*x2^2 - x2 + x1^2"),
        ];
        for (a, b) in cases {
            let pa = p2(a);
            let pb = p2(b);
            let fast = resultant(&pa, &pb, Var(1)).unwrap();
            let slow = oracle_resultant(&pa, &pb, Var(1)).unwrap();
            assert_eq!(fast, slow, "resultant mismatch for {a} / {b}");
        }
        // 2x2 case with negative determinant
        let vars1 = VarOrder::new(vec!["x"]).unwrap();
        let a = parse_poly("x + 1", &vars1).unwrap();
        let b = parse_poly("x - 1", &vars1).unwrap();
        assert_eq!(
            oracle_resultant(&a, &b, Var(0)).unwrap(),
            parse_poly("-2", &vars1).unwrap()
        );
    }

    #[test]
    fn oracle_root_count_examples() {
        let vars1 = VarOrder::new(vec!["x"]).unwrap();
        let p = |s: &str| parse_poly(s, &vars1).unwrap();
        assert_eq!(oracle_root_count(&p("x^2 - 2"), &rat(-10, 1), &rat(10, 1)).unwrap(), 2);
        assert_eq!(oracle_root_count(&p("x^2 + 1"), &rat(-10, 1), &rat(10, 1)).unwrap(), 0);
        assert_eq!(oracle_root_count(&p("x^3 - x"), &rat(-10, 1), &rat(10, 1)).unwrap(), 3);
        assert_eq!(oracle_root_count(&p("x^2 - 2"), &rat(0, 1), &rat(10, 1)).unwrap(), 1);
        assert!(oracle_root_count(&p("x^2 - 1"), &rat(1, 1), &rat(2, 1)).is_err());
    }

    #[test]
    fn trace_comparison_witnesses() {
        use crate::cellmodel::{CounterSet, ProjectionTag, TraceEntry};
        let entry = |poly: &str| TraceEntry {
            poly: p2(poly),
            tag: ProjectionTag { kind: crate::cellmodel::TagKind::Res, parents: vec![], var: Var(1) },
        };
        let mk = |polys: &[&str]| Cell {
            sample: vec![rat(0, 1), rat(0, 1)],
            intervals: vec![SymbolicInterval::full(), SymbolicInterval::full()],
            trace: polys.iter().map(|s| entry(s)).collect(),
            stats: CounterSet::default(),
            certificates: vec![],
        };
        let classical = mk(&["x1", "x1^2-1"]);
        let pd = mk(&["x1^2-1"]);
        assert_eq!(compare_traces(&classical, &pd), TraceComparison::Subset);
        let bad = mk(&["x1^2-1", "x1-2"]);
        match compare_traces(&classical, &bad) {
            TraceComparison::NotSubset { witnesses } => {
                assert_eq!(witnesses, vec![p2("x1-2")]);
            }
            _ => panic!("expected witness"),
        }
    }
}
