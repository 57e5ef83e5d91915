//! Cross-checks between independent algorithmic routes: subresultant
//! remainder sequences against fraction-free Sylvester determinants, and
//! Descartes-bisection isolation against Sturm counting.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use cadcell::arith::{rat, Rat};
use cadcell::poly::{discriminant, gcd, normalize_basis, resultant, Polynomial, Var, VarOrder};
use cadcell::realroots::{compare, isolate};
use cadcell::verify::{oracle_resultant, oracle_root_count};

fn vars2() -> VarOrder {
    VarOrder::new(vec!["x1", "x2"]).unwrap()
}

/// Random sparse polynomial with the given bounds; never zero.
fn random_poly(
    rng: &mut ChaCha8Rng,
    nvars: usize,
    max_degree: u32,
    coeff_bound: i64,
    terms: usize,
) -> Polynomial {
    loop {
        let mut entries = Vec::new();
        for _ in 0..terms {
            let mut exps = vec![0u32; nvars];
            let mut budget = max_degree;
            for e in exps.iter_mut() {
                let d = rng.gen_range(0..=budget);
                *e = d;
                budget -= d;
            }
            let mut c = 0i64;
            while c == 0 {
                c = rng.gen_range(-coeff_bound..=coeff_bound);
            }
            entries.push((exps, Rat::from_integer(c.into())));
        }
        let p = Polynomial::from_terms(nvars, entries);
        if !p.is_zero() {
            return p;
        }
    }
}

/// Random bivariate polynomial with positive degree in x2.
fn random_bivariate_in_x2(rng: &mut ChaCha8Rng, max_degree: u32) -> Polynomial {
    loop {
        let p = random_poly(rng, 2, max_degree, 9, 4);
        if p.degree(Var(1)).unwrap_or(0) >= 1 {
            return p;
        }
    }
}

#[test]
fn resultant_prs_equals_sylvester_determinant_500() {
    let mut rng = ChaCha8Rng::seed_from_u64(1001);
    for case in 0..500 {
        let a = random_bivariate_in_x2(&mut rng, 4);
        let b = random_bivariate_in_x2(&mut rng, 4);
        let fast = resultant(&a, &b, Var(1)).unwrap();
        let slow = oracle_resultant(&a, &b, Var(1)).unwrap();
        assert_eq!(fast, slow, "case {case}: PRS and determinant disagree");
    }
}

#[test]
fn resultant_antisymmetry_sign_rule() {
    let mut rng = ChaCha8Rng::seed_from_u64(1002);
    for _ in 0..500 {
        let a = random_bivariate_in_x2(&mut rng, 4);
        let b = random_bivariate_in_x2(&mut rng, 4);
        let da = a.degree(Var(1)).unwrap();
        let db = b.degree(Var(1)).unwrap();
        let ab = resultant(&a, &b, Var(1)).unwrap();
        let ba = resultant(&b, &a, Var(1)).unwrap();
        let expected = if (da * db) % 2 == 1 { -&ba } else { ba };
        assert_eq!(ab, expected);
    }
}

#[test]
fn discriminant_vanishes_iff_gcd_with_derivative_is_nonconstant() {
    let vars1 = VarOrder::new(vec!["x"]).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(1003);
    let mut zero_cases = 0;
    for i in 0..300 {
        // half the cases get a planted square factor
        let base = random_poly(&mut rng, 1, 3, 6, 3);
        let p = if i % 2 == 0 {
            let lin = random_poly(&mut rng, 1, 1, 4, 2);
            if lin.degree(Var(0)).unwrap_or(0) >= 1 {
                &(&lin * &lin) * &base
            } else {
                base
            }
        } else {
            base
        };
        if p.degree(Var(0)).unwrap_or(0) < 2 {
            continue;
        }
        let d = discriminant(&p, Var(0)).unwrap();
        let g = gcd(&p, &p.derivative(Var(0))).unwrap();
        let g_nonconstant = g.degree(Var(0)).unwrap_or(0) >= 1;
        assert_eq!(d.is_zero(), g_nonconstant, "poly {}", p.to_text(&vars1));
        if d.is_zero() {
            zero_cases += 1;
        }
    }
    assert!(zero_cases >= 50, "planted square factors must exercise the zero case");
}

#[test]
fn isolation_matches_sturm_counts_500() {
    let mut rng = ChaCha8Rng::seed_from_u64(1004);
    for case in 0..500 {
        let degree = rng.gen_range(1..=8);
        let mut coeffs: Vec<Rat> = (0..=degree)
            .map(|_| Rat::from_integer(rng.gen_range(-20i64..=20).into()))
            .collect();
        if coeffs[degree].clone() == rat(0, 1) {
            coeffs[degree] = rat(1, 1);
        }
        let p = Polynomial::from_univariate(1, Var(0), &coeffs);
        if p.is_zero() || p.is_constant() {
            continue;
        }
        // squarefree part for the Sturm precondition
        let g = gcd(&p, &p.derivative(Var(0))).unwrap();
        let sf = p.exact_div(&g).unwrap().canonical();
        if sf.degree(Var(0)).unwrap_or(0) == 0 {
            continue;
        }

        let roots = isolate(&sf).unwrap();
        // Cauchy-style bound, stretched until the endpoints are not roots
        let mut bound = rat(1, 1)
            + sf
                .terms()
                .map(|(_, c)| c.clone())
                .fold(rat(0, 1), |acc, c| if c.clone() < rat(0, 1) { acc - c } else { acc + c });
        loop {
            let lo = -bound.clone();
            match oracle_root_count(&sf, &lo, &bound) {
                Ok(count) => {
                    assert_eq!(roots.len(), count, "case {case}: {}", sf.to_text(&vars2()));
                    break;
                }
                Err(_) => bound = bound + rat(1, 1),
            }
        }

        // isolating data: disjoint intervals, verified sign changes
        for w in roots.roots().windows(2) {
            assert!(w[0].interval().disjoint(w[1].interval()));
            assert_eq!(compare(&w[0], &w[1]), std::cmp::Ordering::Less);
        }
        for r in roots.roots() {
            if r.as_rat().is_none() {
                let iv = r.interval();
                let slo = r.defining().sign_at(&iv.lo);
                let shi = r.defining().sign_at(&iv.hi);
                assert!(slo != 0 && shi != 0 && slo != shi);
            }
        }
    }
}

#[test]
fn compare_is_a_total_order_with_refined_cross_check() {
    let vars1 = VarOrder::new(vec!["x"]).unwrap();
    let p = |s: &str| parse(s, &vars1);
    fn parse(s: &str, v: &VarOrder) -> Polynomial {
        cadcell::poly::parse_poly(s, v).unwrap()
    }
    // an assortment of algebraic values with duplicates across polynomials
    let mut values = Vec::new();
    for src in ["x^2 - 2", "x^2 - 3", "2*x^2 - 4", "x^3 - x", "4*x^2 - 1"] {
        for r in isolate(&p(src)).unwrap().roots() {
            values.push(r.clone());
        }
    }
    let eps = rat(1, 1_000_000_000);
    for a in &values {
        for b in &values {
            let ord = compare(a, b);
            assert_eq!(ord, compare(b, a).reverse());
            // refined-interval sanity bound
            let ra = a.refine(&eps);
            let rb = b.refine(&eps);
            match ord {
                std::cmp::Ordering::Equal => {
                    assert!(!ra.interval().disjoint(rb.interval()));
                }
                std::cmp::Ordering::Less => {
                    assert!(ra.interval().lo <= rb.interval().hi);
                }
                std::cmp::Ordering::Greater => {
                    assert!(rb.interval().lo <= ra.interval().hi);
                }
            }
        }
    }
    // transitivity on the sorted list
    let mut sorted = values.clone();
    sorted.sort();
    for w in sorted.windows(3) {
        if compare(&w[0], &w[1]) == std::cmp::Ordering::Less
            && compare(&w[1], &w[2]) == std::cmp::Ordering::Less
        {
            assert_eq!(compare(&w[0], &w[2]), std::cmp::Ordering::Less);
        }
    }
}

#[test]
fn normalize_basis_random_sets() {
    let mut rng = ChaCha8Rng::seed_from_u64(1005);
    let grid: Vec<Rat> = (-4..=4).map(|k| rat(k, 2)).collect();
    for _ in 0..60 {
        let k = rng.gen_range(1..=3);
        let mut input = Vec::new();
        for _ in 0..k {
            input.push(random_poly(&mut rng, 2, 3, 5, 3));
        }
        // occasionally multiply two of them to plant shared factors
        if input.len() >= 2 && rng.gen_bool(0.5) {
            let prod = &input[0] * &input[1];
            input.push(prod);
        }
        let input: Vec<Polynomial> = input.into_iter().filter(|p| !p.is_constant()).collect();
        if input.is_empty() {
            continue;
        }
        let out = normalize_basis(&input);
        for (i, a) in out.iter().enumerate() {
            assert!(!a.is_constant());
            let v = a.main_var().unwrap();
            let g = gcd(a, &a.derivative(v)).unwrap();
            assert_eq!(g.degree(v).unwrap_or(0), 0, "squarefree in main variable");
            for b in &out[i + 1..] {
                assert!(gcd(a, b).unwrap().is_constant(), "pairwise coprime");
            }
        }
        for x in &grid {
            for y in &grid {
                let pt = [x.clone(), y.clone()];
                let zin = input.iter().any(|q| q.eval(&pt) == rat(0, 1));
                let zout = out.iter().any(|q| q.eval(&pt) == rat(0, 1));
                assert_eq!(zin, zout, "variety preserved on the grid");
            }
        }
    }
}
