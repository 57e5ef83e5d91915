//! End-to-end construction tests on the circle/lines instance: two secants
//! and a hyperbola-like branch around a circle, with a sample inside the
//! lens. The classical and projective variants are pinned against
//! hand-expanded projection polynomials and exact interval values.

use std::cmp::Ordering;

use cadcell::arith::rat;
use cadcell::cellmodel::{contains, eval_indexed_root, IndexedRoot, SymbolicInterval, TagKind};
use cadcell::poly::{normalize_basis, parse_poly, Polynomial, VarOrder};
use cadcell::scc::{construct_cell, construct_cell_opts, CellOptions, ConstructError, Heuristic};
use cadcell::scc_projective::{certificate_holds_at, construct_cell_pd, pd_stats};
use cadcell::verify::{compare_traces, verify_sign_invariance, TraceComparison};

fn vars2() -> VarOrder {
    VarOrder::new(vec!["x1", "x2"]).unwrap()
}

fn p(src: &str) -> Polynomial {
    parse_poly(src, &vars2()).unwrap()
}

/// The four inputs: secant above, circle, secant below, hyperbola branch.
fn lens_inputs() -> Vec<Polynomial> {
    vec![
        p("1/2*x1 + 1/2 - x2"),
        p("x1^2 + x2^2 - 1"),
        p("1/2*x1 - 1/2 - x2"),
        p("-x1*x2 - 3/4"),
    ]
}

fn lens_sample() -> Vec<cadcell::Rat> {
    vec![rat(1, 4), rat(-7, 10)]
}

fn sector_values(cell: &cadcell::Cell, level: usize, prefix: &[cadcell::Rat]) -> (cadcell::Rat, cadcell::Rat) {
    match &cell.intervals[level - 1] {
        SymbolicInterval::Sector { lower: Some(l), upper: Some(u) } => {
            let lv = eval_indexed_root(l, prefix).expect("lower bound defined");
            let uv = eval_indexed_root(u, prefix).expect("upper bound defined");
            (
                lv.as_rat().expect("rational lower bound").clone(),
                uv.as_rat().expect("rational upper bound").clone(),
            )
        }
        other => panic!("expected bounded sector at level {level}, got {other:?}"),
    }
}

#[test]
fn classical_golden_trace() {
    let inputs = lens_inputs();
    let cell = construct_cell(&inputs, &lens_sample(), Heuristic::Bc).unwrap();

    // level-2 interval: between the circle's lower arc and the lower secant
    let circle = p("x1^2+x2^2-1");
    let secant_low = p("x1 - 2*x2 - 1");
    assert_eq!(
        cell.intervals[1],
        SymbolicInterval::Sector {
            lower: Some(IndexedRoot::new(circle.clone(), 1)),
            upper: Some(IndexedRoot::new(secant_low.clone(), 1)),
        }
    );

    // the projection trace, in normalized form
    let hyper = p("4*x1*x2 + 3");
    assert!(cell.trace_contains(&p("x1^2 - 1"), TagKind::Disc));
    assert!(cell.trace_contains(&p("x1"), TagKind::Ldcf));
    assert!(cell.trace_contains(&p("5*x1^2 - 2*x1 - 3"), TagKind::Res));
    assert!(cell.trace_contains(&p("16*x1^4 - 16*x1^2 + 9"), TagKind::Res));
    let ldcf_entry = cell
        .trace
        .iter()
        .find(|e| e.tag.kind == TagKind::Ldcf && e.poly == p("x1"))
        .unwrap();
    assert_eq!(ldcf_entry.tag.parents, vec![hyper.clone()]);

    // level-1 interval evaluates to exactly (0, 1)
    assert_eq!(
        cell.intervals[0],
        SymbolicInterval::Sector {
            lower: Some(IndexedRoot::new(p("x1"), 1)),
            upper: Some(IndexedRoot::new(p("x1^2 - 1"), 2)),
        }
    );
    let (lo, hi) = sector_values(&cell, 1, &[]);
    assert_eq!((lo, hi), (rat(0, 1), rat(1, 1)));

    // counters
    assert_eq!(cell.stats.resultants_added, 2);
    assert_eq!(cell.stats.discriminants_added, 1);
    assert_eq!(cell.stats.ldcfs_added, 1);
    assert_eq!(cell.stats.coeffs_added, 0);
    assert_eq!(cell.stats.ldcfs_omitted, 0);
    assert_eq!(cell.stats.roots_computed, 10);
    assert_eq!(cell.stats.max_total_degree, 4);

    // membership
    assert!(contains(&cell, &lens_sample()));
    assert!(!contains(&cell, &[rat(3, 2), rat(-7, 10)]));
}

#[test]
fn projective_golden_trace() {
    let inputs = lens_inputs();
    let cell = construct_cell_pd(&inputs, &lens_sample(), Heuristic::BcPd).unwrap();

    // same level-2 interval as the classical run
    let circle = p("x1^2+x2^2-1");
    let secant_low = p("x1 - 2*x2 - 1");
    assert_eq!(
        cell.intervals[1],
        SymbolicInterval::Sector {
            lower: Some(IndexedRoot::new(circle.clone(), 1)),
            upper: Some(IndexedRoot::new(secant_low.clone(), 1)),
        }
    );

    // the hyperbola's leading coefficient is omitted
    assert!(!cell.trace_polys().contains(&&p("x1")));
    assert_eq!(cell.stats.ldcfs_omitted, 1);
    assert_eq!(cell.stats.pd_blocked_unbounded, 0);
    assert!(cell.trace_contains(&p("x1^2 - 1"), TagKind::Disc));
    assert!(cell.trace_contains(&p("5*x1^2 - 2*x1 - 3"), TagKind::Res));
    assert!(cell.trace_contains(&p("16*x1^4 - 16*x1^2 + 9"), TagKind::Res));

    // enlarged level-1 interval: exactly (-3/5, 1), strictly containing (0, 1)
    let (lo, hi) = sector_values(&cell, 1, &[]);
    assert_eq!((lo.clone(), hi.clone()), (rat(-3, 5), rat(1, 1)));
    assert!(lo < rat(0, 1) && hi == rat(1, 1));

    // stored certificate chain for the omission
    let hyper = p("4*x1*x2 + 3");
    let cert = cell
        .certificates
        .iter()
        .find(|c| c.omitted == hyper)
        .expect("certificate for the omitted ldcf");
    assert_eq!(
        cert.chain,
        vec![
            IndexedRoot::new(circle.clone(), 1),
            IndexedRoot::new(secant_low.clone(), 1),
            IndexedRoot::new(circle.clone(), 2),
            IndexedRoot::new(hyper.clone(), 1),
        ]
    );

    // chain re-evaluates cyclically across the base interval
    for k in 0..50 {
        let x1 = rat(-3, 5) + (rat(1, 1) - rat(-3, 5)) * rat(2 * k + 1, 100);
        assert!(certificate_holds_at(cert, &[x1]), "chain fails at grid point {k}");
    }

    let stats = pd_stats(&cell);
    assert_eq!(stats.ldcfs_omitted, 1);
    assert_eq!(stats.blocked_unbounded, 0);
    assert_eq!(stats.applied_ratio(), Some(rat(1, 2)));

    assert!(contains(&cell, &lens_sample()));
}

#[test]
fn projective_trace_is_subset_of_classical() {
    let inputs = lens_inputs();
    let s = lens_sample();
    for (a, b) in [(Heuristic::Bc, Heuristic::BcPd), (Heuristic::Ldb, Heuristic::LdbPd)] {
        let classical = construct_cell(&inputs, &s, a).unwrap();
        let pd = construct_cell_pd(&inputs, &s, b).unwrap();
        assert_eq!(compare_traces(&classical, &pd), TraceComparison::Subset);
    }
}

#[test]
fn ldb_matches_bc_on_lens() {
    // on this instance every outside root is adjacent to a bound, so the
    // greedy chains degenerate to direct pairs
    let inputs = lens_inputs();
    let s = lens_sample();
    let bc = construct_cell(&inputs, &s, Heuristic::Bc).unwrap();
    let ldb = construct_cell(&inputs, &s, Heuristic::Ldb).unwrap();
    assert_eq!(bc.trace_polys(), ldb.trace_polys());
}

#[test]
fn construction_is_deterministic() {
    let inputs = lens_inputs();
    let s = lens_sample();
    for h in [Heuristic::Bc, Heuristic::Ldb] {
        let a = construct_cell(&inputs, &s, h).unwrap();
        let b = construct_cell(&inputs, &s, h).unwrap();
        assert_eq!(a, b);
    }
    for h in [Heuristic::BcPd, Heuristic::LdbPd] {
        let a = construct_cell_pd(&inputs, &s, h).unwrap();
        let b = construct_cell_pd(&inputs, &s, h).unwrap();
        assert_eq!(a, b);
    }
}

#[test]
fn single_linear_input() {
    let inputs = vec![p("x1 - 1")];
    let cell = construct_cell(&inputs, &[rat(0, 1), rat(0, 1)], Heuristic::Bc).unwrap();
    assert!(cell.trace.is_empty());
    assert_eq!(
        cell.intervals[0],
        SymbolicInterval::Sector { lower: None, upper: Some(IndexedRoot::new(p("x1 - 1"), 1)) }
    );
    assert_eq!(cell.intervals[1], SymbolicInterval::full());
}

#[test]
fn nullification_fails_without_fallback() {
    let inputs = vec![p("x1*x2")];
    assert_eq!(normalize_basis(&inputs), vec![p("x1*x2")], "kept whole by normalization");
    let err = construct_cell(&inputs, &[rat(0, 1), rat(5, 1)], Heuristic::Bc).unwrap_err();
    match err {
        ConstructError::Nullified { poly, level } => {
            assert_eq!(poly, p("x1*x2"));
            assert_eq!(level, 2);
        }
        other => panic!("expected nullification, got {other:?}"),
    }
}

#[test]
fn nullification_fallback_builds_verified_cell() {
    let inputs = vec![p("x1*x2")];
    let sample = [rat(0, 1), rat(5, 1)];
    let opts = CellOptions { derivative_fallback: true };
    let cell = construct_cell_opts(&inputs, &sample, Heuristic::Bc, opts).unwrap();
    assert_eq!(
        cell.intervals[0],
        SymbolicInterval::Section { bound: IndexedRoot::new(p("x1"), 1) }
    );
    assert!(contains(&cell, &sample));
    let report = verify_sign_invariance(&inputs, &cell, 100, 17);
    assert!(report.passed(), "violations: {:?}", report.violations);
    assert_eq!(report.undefined_bound_events(), 0);
}

#[test]
fn lens_cells_verify_clean_and_corruption_is_caught() {
    let inputs = lens_inputs();
    let s = lens_sample();
    let cell = construct_cell(&inputs, &s, Heuristic::Bc).unwrap();
    let report = verify_sign_invariance(&inputs, &cell, 100, 42);
    assert!(report.passed(), "violations: {:?}", report.violations);

    let pd = construct_cell_pd(&inputs, &s, Heuristic::BcPd).unwrap();
    let report = verify_sign_invariance(&inputs, &pd, 100, 42);
    assert!(report.passed(), "violations: {:?}", report.violations);

    // enlarge the level-2 sector past the lower secant: signs must flip
    let mut corrupted = cell.clone();
    corrupted.intervals[1] = SymbolicInterval::Sector {
        lower: Some(IndexedRoot::new(p("x1^2+x2^2-1"), 1)),
        upper: Some(IndexedRoot::new(p("1/2*x1 + 1/2 - x2").canonical(), 1)),
    };
    let report = verify_sign_invariance(&inputs, &corrupted, 100, 42);
    assert!(!report.passed(), "corrupted cell must produce violations");
}

#[test]
fn half_bounded_pd_blocks_the_omission() {
    let inputs = vec![p("x2^2 - x1")];
    let s = [rat(1, 1), rat(5, 1)];
    let classical = construct_cell(&inputs, &s, Heuristic::Bc).unwrap();
    let pd = construct_cell_pd(&inputs, &s, Heuristic::BcPd).unwrap();
    assert_eq!(classical.trace_polys(), pd.trace_polys(), "traces agree when blocked");
    assert_eq!(pd.stats.ldcfs_omitted, 0);
    assert!(pd.stats.pd_blocked_unbounded >= 1);
    match &pd.intervals[1] {
        SymbolicInterval::Sector { lower: Some(l), upper: None } => {
            assert_eq!(l.index, 2);
        }
        other => panic!("expected half-bounded sector, got {other:?}"),
    }
}

#[test]
fn section_cell_pd_needs_no_infinity_pairs() {
    // sample exactly on the intersection of a parabola and a line
    let inputs = vec![p("x2^2 - x1"), p("x1 - x2")];
    let s = [rat(1, 1), rat(1, 1)];
    let classical = construct_cell(&inputs, &s, Heuristic::Bc).unwrap();
    let pd = construct_cell_pd(&inputs, &s, Heuristic::BcPd).unwrap();
    assert!(pd.intervals[1].is_section());
    // the parabola is not the section representative (higher degree), and its
    // ldcf is omitted without any certificate chain
    assert_eq!(pd.stats.ldcfs_omitted, 1);
    assert_eq!(pd.stats.pd_blocked_unbounded, 0);
    assert_eq!(pd.stats.pd_blocked_no_pairing, 0);
    assert_eq!(compare_traces(&classical, &pd), TraceComparison::Subset);
    assert!(contains(&pd, &s));
}

#[test]
fn root_free_polynomial_contributes_only_its_discriminant() {
    // x2^2 + x1^2 + 1 has no real roots anywhere; ldcf is the constant 1
    let inputs = vec![p("x2^2 + x1^2 + 1"), p("x2 - x1")];
    let s = [rat(0, 1), rat(3, 1)];
    let pd = construct_cell_pd(&inputs, &s, Heuristic::BcPd).unwrap();
    // disc of the root-free polynomial normalizes to x1^2 + 1, which has no
    // real roots; nothing else from it may appear
    for e in &pd.trace {
        if e.tag.parents.contains(&p("x1^2 + x2^2 + 1")) {
            assert_eq!(e.tag.kind, TagKind::Disc);
        }
    }
    assert!(contains(&pd, &s));
    let report = verify_sign_invariance(&inputs, &pd, 50, 3);
    assert!(report.passed());
}

#[test]
fn interval_values_respect_root_order() {
    // regression guard: evaluated bounds must straddle the sample coordinate
    let inputs = lens_inputs();
    let s = lens_sample();
    for h in [Heuristic::Bc, Heuristic::Ldb] {
        let cell = construct_cell(&inputs, &s, h).unwrap();
        for (i, iv) in cell.intervals.iter().enumerate() {
            if let SymbolicInterval::Sector { lower, upper } = iv {
                if let Some(l) = lower {
                    let v = eval_indexed_root(l, &s[..i]).unwrap();
                    assert_eq!(v.cmp_rat(&s[i]), Ordering::Less);
                }
                if let Some(u) = upper {
                    let v = eval_indexed_root(u, &s[..i]).unwrap();
                    assert_eq!(v.cmp_rat(&s[i]), Ordering::Greater);
                }
            }
        }
    }
}
