//! Exact real-root isolation for univariate polynomials over the rationals,
//! and exact comparison of the resulting algebraic values.
//!
//! Isolation uses bisection guided by Descartes' rule of signs on the
//! Möbius-transformed polynomial, after detecting exact rational roots from
//! rational-root candidates of the primitive part. Sturm sequences are kept
//! out of this module on purpose: they live in `crate::verify` as the
//! independent oracle.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{sign, Rat, RatInterval};
use crate::poly::{Polynomial, Var};
use crate::{Error, Result};

/// Dense univariate polynomial with coprime integer coefficients and positive
/// leading coefficient. The variable identity is irrelevant to the value.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct UniPoly {
    coeffs: Vec<BigInt>,
}

impl UniPoly {
    /// Canonicalizes rational coefficients (ascending powers) into the
    /// primitive positive integer form.
    pub fn from_rat_coeffs(coeffs: &[Rat]) -> UniPoly {
        let mut u = UniPoly::from_rat_coeffs_signed(coeffs);
        if u.coeffs.last().is_some_and(|c| c.is_negative()) {
            for c in &mut u.coeffs {
                *c = -c.clone();
            }
        }
        u
    }

    /// Primitive integer form that keeps the overall sign; used where sign
    /// sequences matter (Sturm chains).
    pub fn from_rat_coeffs_signed(coeffs: &[Rat]) -> UniPoly {
        let mut den_lcm = BigInt::one();
        for c in coeffs {
            den_lcm = den_lcm.lcm(c.denom());
        }
        let mut ints: Vec<BigInt> = coeffs
            .iter()
            .map(|c| c.numer() * (&den_lcm / c.denom()))
            .collect();
        while ints.last().is_some_and(|c| c.is_zero()) {
            ints.pop();
        }
        if ints.is_empty() {
            return UniPoly { coeffs: ints };
        }
        let mut g = BigInt::zero();
        for c in &ints {
            g = g.gcd(c);
        }
        for c in &mut ints {
            *c /= &g;
        }
        UniPoly { coeffs: ints }
    }

    /// Extracts the univariate view of a polynomial in its main variable.
    pub fn from_polynomial(p: &Polynomial) -> Result<UniPoly> {
        let v = p.main_var().unwrap_or(Var(0));
        Ok(UniPoly::from_rat_coeffs(&p.to_univariate(v)?))
    }

    /// Rebuilds a sparse polynomial in the given variable.
    pub fn to_polynomial(&self, nvars: usize, v: Var) -> Polynomial {
        let coeffs: Vec<Rat> = self.coeffs.iter().map(|c| Rat::from_integer(c.clone())).collect();
        Polynomial::from_univariate(nvars, v, &coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    fn constant(&self) -> &BigInt {
        &self.coeffs[0]
    }

    fn leading(&self) -> &BigInt {
        self.coeffs.last().unwrap()
    }

    pub fn derivative(&self) -> UniPoly {
        if self.coeffs.len() <= 1 {
            return UniPoly { coeffs: vec![] };
        }
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * BigInt::from(k))
            .collect();
        let rats: Vec<Rat> = ints.into_iter().map(Rat::from_integer).collect();
        UniPoly::from_rat_coeffs(&rats)
    }

    /// Exact sign of `p(u/v)` computed as the integer `sum c_i u^i v^(d-i)`.
    pub fn sign_at(&self, r: &Rat) -> i8 {
        if self.is_zero() {
            return 0;
        }
        let (u, v) = (r.numer(), r.denom());
        // Horner: ((c_d*u + c_{d-1}*v)*u + c_{d-2}*v^2)*u + ...
        let mut acc = BigInt::zero();
        let mut vpow = BigInt::one();
        for c in self.coeffs.iter().rev() {
            acc = acc * u + c * &vpow;
            vpow *= v;
        }
        match acc.sign() {
            num_bigint::Sign::Minus => -1,
            num_bigint::Sign::NoSign => 0,
            num_bigint::Sign::Plus => 1,
        }
    }

    pub fn eval(&self, r: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * r + Rat::from_integer(c.clone());
        }
        acc
    }

    /// Univariate gcd over Q, returned in canonical integer form.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let mut a: Vec<Rat> = self.coeffs.iter().map(|c| Rat::from_integer(c.clone())).collect();
        let mut b: Vec<Rat> = other.coeffs.iter().map(|c| Rat::from_integer(c.clone())).collect();
        let trim = |v: &mut Vec<Rat>| while v.last().is_some_and(|c| c.is_zero()) {
            v.pop();
        };
        trim(&mut a);
        trim(&mut b);
        while !b.is_empty() {
            // a mod b
            while a.len() >= b.len() && !a.is_empty() {
                let q = a.last().unwrap() / b.last().unwrap();
                let shift = a.len() - b.len();
                for (i, c) in b.iter().enumerate() {
                    let val = &q * c;
                    a[shift + i] -= val;
                }
                trim(&mut a);
            }
            std::mem::swap(&mut a, &mut b);
        }
        UniPoly::from_rat_coeffs(&a)
    }

    /// Squarefree part `p / gcd(p, p')` in canonical form.
    pub fn squarefree_part(&self) -> UniPoly {
        let g = self.gcd(&self.derivative());
        if g.degree() == 0 {
            return self.clone();
        }
        self.exact_div(&g)
    }

    fn exact_div(&self, d: &UniPoly) -> UniPoly {
        let mut a: Vec<Rat> = self.coeffs.iter().map(|c| Rat::from_integer(c.clone())).collect();
        let b: Vec<Rat> = d.coeffs.iter().map(|c| Rat::from_integer(c.clone())).collect();
        let mut q = vec![Rat::zero(); a.len() - b.len() + 1];
        let trim = |v: &mut Vec<Rat>| while v.last().is_some_and(|c| c.is_zero()) {
            v.pop();
        };
        while a.len() >= b.len() && !a.is_empty() {
            let c = a.last().unwrap() / b.last().unwrap();
            let shift = a.len() - b.len();
            q[shift] = c.clone();
            for (i, bc) in b.iter().enumerate() {
                let val = &c * bc;
                a[shift + i] -= val;
            }
            trim(&mut a);
        }
        debug_assert!(a.is_empty(), "exact_div: division left a remainder");
        UniPoly::from_rat_coeffs(&q)
    }

    /// Strict Cauchy bound: every real root lies in `(-B, B)`.
    fn root_bound(&self) -> Rat {
        let lead = self.leading().abs();
        let max_rest = self
            .coeffs
            .iter()
            .take(self.coeffs.len() - 1)
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(BigInt::zero);
        let b = Rat::one() + Rat::new(max_rest, lead);
        // round up to an integer for dyadic-friendly endpoints
        Rat::from_integer(b.ceil().to_integer() + BigInt::one())
    }
}

/// A real algebraic number: squarefree defining polynomial, isolating
/// interval (or exact rational point), and 1-based index among the real
/// roots of the defining polynomial.
#[derive(Debug, Clone)]
pub struct AlgebraicValue {
    defining: UniPoly,
    interval: RatInterval,
    index: u32,
}

impl AlgebraicValue {
    pub fn from_rat(r: Rat) -> AlgebraicValue {
        let defining = UniPoly::from_rat_coeffs(&[-r.clone(), Rat::one()]);
        AlgebraicValue { defining, interval: RatInterval::point(r), index: 1 }
    }

    pub fn defining(&self) -> &UniPoly {
        &self.defining
    }

    pub fn interval(&self) -> &RatInterval {
        &self.interval
    }

    pub fn index(&self) -> u32 {
        self.index
    }

    /// The exact rational value, when this is a rational point.
    pub fn as_rat(&self) -> Option<&Rat> {
        self.interval.is_point().then_some(&self.interval.lo)
    }

    /// Exact comparison against a rational.
    pub fn cmp_rat(&self, r: &Rat) -> Ordering {
        if let Some(v) = self.as_rat() {
            return v.cmp(r);
        }
        if r <= &self.interval.lo {
            return Ordering::Greater;
        }
        if r >= &self.interval.hi {
            return Ordering::Less;
        }
        let s = self.defining.sign_at(r);
        if s == 0 {
            return Ordering::Equal;
        }
        let s_lo = self.defining.sign_at(&self.interval.lo);
        debug_assert!(s_lo != 0, "isolating interval endpoints are never roots");
        if s == s_lo {
            // r sits on the same side as the lower endpoint
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }

    /// Sign-preserving bisection until the interval width is at most `width`.
    pub fn refine(&self, width: &Rat) -> AlgebraicValue {
        let mut out = self.clone();
        out.refine_in_place(width);
        out
    }

    fn refine_in_place(&mut self, width: &Rat) {
        if self.interval.is_point() {
            return;
        }
        while self.interval.width() > *width {
            if !self.bisect_once() {
                return;
            }
        }
    }

    /// One bisection step; returns false when the value became exact.
    fn bisect_once(&mut self) -> bool {
        let mid = self.interval.midpoint();
        let s = self.defining.sign_at(&mid);
        if s == 0 {
            self.interval = RatInterval::point(mid);
            return false;
        }
        let s_lo = self.defining.sign_at(&self.interval.lo);
        if s == s_lo {
            self.interval = RatInterval::open(mid, self.interval.hi.clone());
        } else {
            self.interval = RatInterval::open(self.interval.lo.clone(), mid);
        }
        true
    }

    /// Refines until the interval no longer contains the given rational.
    fn exclude_point(&mut self, r: &Rat) {
        while !self.interval.is_point() && self.interval.contains(r) {
            if !self.bisect_once() {
                return;
            }
        }
    }
}

/// Exact order comparison. Equality is decided through the gcd of the
/// defining polynomials, never by interval shrinking alone.
pub fn compare(a: &AlgebraicValue, b: &AlgebraicValue) -> Ordering {
    match (a.as_rat(), b.as_rat()) {
        (Some(ra), Some(rb)) => ra.cmp(rb),
        (Some(ra), None) => b.cmp_rat(ra).reverse(),
        (None, Some(rb)) => a.cmp_rat(rb),
        (None, None) => {
            if a.interval.disjoint(&b.interval) {
                return if a.interval.hi <= b.interval.lo {
                    Ordering::Less
                } else {
                    Ordering::Greater
                };
            }
            let g = a.defining.gcd(&b.defining);
            if g.degree() >= 1 {
                // at most one root of g lies in the overlap, and it is a
                // common value exactly when both values coincide
                let lo = a.interval.lo.clone().max(b.interval.lo.clone());
                let hi = a.interval.hi.clone().min(b.interval.hi.clone());
                debug_assert!(lo < hi);
                if g.sign_at(&lo) != g.sign_at(&hi) {
                    return Ordering::Equal;
                }
            }
            // distinct reals: bisect both until the intervals separate
            let mut x = a.clone();
            let mut y = b.clone();
            loop {
                if x.interval.disjoint(&y.interval) {
                    return compare(&x, &y);
                }
                x.bisect_once();
                y.bisect_once();
            }
        }
    }
}

impl PartialEq for AlgebraicValue {
    fn eq(&self, other: &Self) -> bool {
        compare(self, other) == Ordering::Equal
    }
}

impl Eq for AlgebraicValue {}

impl PartialOrd for AlgebraicValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(compare(self, other))
    }
}

impl Ord for AlgebraicValue {
    fn cmp(&self, other: &Self) -> Ordering {
        compare(self, other)
    }
}

/// The distinct real roots of one polynomial, sorted increasing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootList {
    roots: Vec<AlgebraicValue>,
}

impl RootList {
    pub fn roots(&self) -> &[AlgebraicValue] {
        &self.roots
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    /// 1-based access following root indices.
    pub fn get(&self, index: u32) -> Option<&AlgebraicValue> {
        self.roots.get(index as usize - 1)
    }
}

/// Isolates the distinct real roots of a univariate polynomial: one disjoint
/// rational interval per root, exact rational roots reported as points.
/// The polynomial is reduced to its squarefree primitive part internally.
pub fn isolate(p: &Polynomial) -> Result<RootList> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let u = UniPoly::from_polynomial(p)?;
    Ok(isolate_unipoly(&u))
}

pub(crate) fn isolate_unipoly(u: &UniPoly) -> RootList {
    let sf = u.squarefree_part();
    if sf.degree() == 0 {
        return RootList { roots: vec![] };
    }

    // exact rational roots from candidate enumeration, then deflation
    let mut exact: Vec<Rat> = Vec::new();
    let mut rest = sf.clone();
    if rest.constant().is_zero() {
        exact.push(Rat::zero());
        let coeffs: Vec<Rat> =
            rest.coeffs[1..].iter().map(|c| Rat::from_integer(c.clone())).collect();
        rest = UniPoly::from_rat_coeffs(&coeffs);
    }
    if rest.degree() == 1 {
        let r = Rat::new(-rest.constant().clone(), rest.leading().clone());
        exact.push(r);
        rest = UniPoly::from_rat_coeffs(&[Rat::one()]);
    } else if rest.degree() >= 2 {
        if let Some(candidates) = rational_candidates(&rest) {
            for r in candidates {
                if rest.degree() == 0 {
                    break;
                }
                if rest.sign_at(&r) == 0 {
                    exact.push(r.clone());
                    rest = rest.exact_div(&UniPoly::from_rat_coeffs(&[-r.clone(), Rat::one()]));
                }
            }
        }
        if rest.degree() == 1 {
            exact.push(Rat::new(-rest.constant().clone(), rest.leading().clone()));
            rest = UniPoly::from_rat_coeffs(&[Rat::one()]);
        }
    }

    // Descartes bisection on what remains
    let mut isolated: Vec<AlgebraicValue> = Vec::new();
    if rest.degree() >= 1 {
        let bound = rest.root_bound();
        let mut stack = vec![(-bound.clone(), bound)];
        while let Some((lo, hi)) = stack.pop() {
            match descartes_count(&rest, &lo, &hi) {
                0 => {}
                1 => isolated.push(AlgebraicValue {
                    defining: rest.clone(),
                    interval: RatInterval::open(lo, hi),
                    index: 0,
                }),
                _ => {
                    let mid = (&lo + &hi) / Rat::from_integer(2.into());
                    if rest.sign_at(&mid) == 0 {
                        // rational root missed by the candidate phase
                        exact.push(mid.clone());
                        rest = rest.exact_div(&UniPoly::from_rat_coeffs(&[-mid.clone(), Rat::one()]));
                        // restart isolation on the deflated polynomial
                        isolated.clear();
                        stack.clear();
                        if rest.degree() >= 1 {
                            let b = rest.root_bound();
                            stack.push((-b.clone(), b));
                        }
                        continue;
                    }
                    stack.push((lo, mid.clone()));
                    stack.push((mid, hi));
                }
            }
        }
    }

    // keep isolating intervals clear of the exact points
    for v in &mut isolated {
        for r in &exact {
            v.exclude_point(r);
        }
    }

    let mut roots: Vec<AlgebraicValue> = exact.into_iter().map(AlgebraicValue::from_rat).collect();
    roots.append(&mut isolated);
    roots.sort();
    let mut with_index = Vec::with_capacity(roots.len());
    for (i, mut v) in roots.into_iter().enumerate() {
        v.index = i as u32 + 1;
        // exact roots keep their 1-term defining polynomial; interval roots
        // refer to the deflated squarefree polynomial they were isolated from
        with_index.push(v);
    }
    debug_assert!(with_index.windows(2).all(|w| w[0] < w[1]));
    RootList { roots: with_index }
}

/// Number of sign variations in the Möbius-transformed polynomial; an upper
/// bound on (and, when 0 or 1, the exact count of) roots in the open
/// interval `(lo, hi)`.
fn descartes_count(p: &UniPoly, lo: &Rat, hi: &Rat) -> usize {
    // q(x) = p(lo + (hi - lo) x), via Horner over Q
    let width = hi - lo;
    let mut q: Vec<Rat> = vec![];
    for c in p.coeffs.iter().rev() {
        // q = q * (lo + width*x) + c
        let mut next = vec![Rat::zero(); q.len() + 1];
        for (i, qc) in q.iter().enumerate() {
            next[i] += qc * lo;
            next[i + 1] += qc * &width;
        }
        next[0] += Rat::from_integer(c.clone());
        q = next;
    }
    // m(x) = sum_k q_k (1+x)^(d-k), Horner in (1+x)
    let mut m: Vec<Rat> = vec![];
    for qc in q.iter() {
        // m = m * (1 + x) + qc
        let mut next = vec![Rat::zero(); m.len() + 1];
        for (i, mc) in m.iter().enumerate() {
            next[i] += mc;
            next[i + 1] += mc;
        }
        next[0] += qc;
        m = next;
    }
    let mut variations = 0;
    let mut last: i8 = 0;
    for c in &m {
        let s = sign(c);
        if s != 0 {
            if last != 0 && s != last {
                variations += 1;
            }
            last = s;
        }
    }
    variations
}

/// Rational root candidates `±u/v` with `u | constant`, `v | leading`,
/// filtered by the root bound. `None` when the divisor enumeration would be
/// too expensive to complete.
fn rational_candidates(p: &UniPoly) -> Option<Vec<Rat>> {
    const DIVISOR_CAP: usize = 256;
    let c0 = p.constant().abs();
    let lc = p.leading().abs();
    debug_assert!(!c0.is_zero());
    let nums = bounded_divisors(&c0, DIVISOR_CAP)?;
    let dens = bounded_divisors(&lc, DIVISOR_CAP)?;
    let bound = p.root_bound();
    let mut set = std::collections::BTreeSet::new();
    for u in &nums {
        for v in &dens {
            let r = Rat::new(u.clone(), v.clone());
            if r >= bound {
                continue;
            }
            set.insert(-r.clone());
            set.insert(r);
        }
    }
    Some(set.into_iter().collect())
}

/// All positive divisors via trial division; `None` when the factorization
/// cannot be completed cheaply or the divisor count exceeds `cap`.
fn bounded_divisors(n: &BigInt, cap: usize) -> Option<Vec<BigInt>> {
    const TRIAL_LIMIT: u64 = 4096;
    let mut rem = n.clone();
    let mut factors: Vec<(BigInt, u32)> = Vec::new();
    let mut d = 2u64;
    while d <= TRIAL_LIMIT {
        let big_d = BigInt::from(d);
        if (&big_d * &big_d) > rem {
            break;
        }
        let mut mult = 0;
        while (&rem % &big_d).is_zero() {
            rem /= &big_d;
            mult += 1;
        }
        if mult > 0 {
            factors.push((big_d, mult));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if rem > BigInt::one() {
        // rem has no prime factor <= TRIAL_LIMIT, so below TRIAL_LIMIT^2 it
        // must itself be prime; beyond that we cannot certify it cheaply
        let limit_sq = BigInt::from(TRIAL_LIMIT) * BigInt::from(TRIAL_LIMIT);
        if rem <= limit_sq {
            factors.push((rem, 1));
        } else {
            return None;
        }
    }
    let mut divisors = vec![BigInt::one()];
    for (f, m) in &factors {
        let old = divisors.clone();
        let mut fp = BigInt::one();
        for _ in 0..*m {
            fp *= f;
            for base in &old {
                divisors.push(base * &fp);
                if divisors.len() > cap {
                    return None;
                }
            }
        }
    }
    divisors.sort();
    divisors.dedup();
    Some(divisors)
}

/// Exact sign of a univariate polynomial at a rational point.
pub fn sign_at_rational(p: &Polynomial, r: &Rat) -> Result<i8> {
    if p.is_zero() {
        return Ok(0);
    }
    let u = UniPoly::from_polynomial(p)?;
    // the canonical integer form may flip the sign; recover it
    let v = p.main_var().unwrap_or(Var(0));
    let lead_sign = sign(p.ldcf(v).unwrap().constant_value().as_ref().unwrap_or(&Rat::zero()));
    let canon_lead = if u.leading().is_negative() { -1 } else { 1 };
    let flip = if lead_sign != 0 && lead_sign != canon_lead { -1 } else { 1 };
    Ok(u.sign_at(r) * flip)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;
    use crate::poly::{parse_poly, VarOrder};

    fn vars() -> VarOrder {
        VarOrder::new(vec!["x"]).unwrap()
    }

    fn p(src: &str) -> Polynomial {
        parse_poly(src, &vars()).unwrap()
    }

    #[test]
    fn isolate_examples() {
        let roots = isolate(&p("x^2 - 2")).unwrap();
        assert_eq!(roots.len(), 2);
        assert!(roots.roots()[0].cmp_rat(&rat(0, 1)) == Ordering::Less);
        assert!(roots.roots()[1].cmp_rat(&rat(0, 1)) == Ordering::Greater);
        for r in roots.roots() {
            let iv = r.interval();
            assert!(!iv.is_point());
            assert_ne!(
                r.defining().sign_at(&iv.lo),
                r.defining().sign_at(&iv.hi),
                "endpoints bracket the root"
            );
        }

        let roots = isolate(&p("x")).unwrap();
        assert_eq!(roots.len(), 1);
        assert_eq!(roots.roots()[0].as_rat(), Some(&rat(0, 1)));

        assert!(isolate(&p("x^2 + 1")).unwrap().is_empty());
        assert!(isolate(&Polynomial::zero(1)).is_err());
    }

    #[test]
    fn isolate_detects_rational_roots() {
        let roots = isolate(&p("5*x^2 - 2*x - 3")).unwrap();
        assert_eq!(roots.len(), 2);
        assert_eq!(roots.roots()[0].as_rat(), Some(&rat(-3, 5)));
        assert_eq!(roots.roots()[1].as_rat(), Some(&rat(1, 1)));

        let roots = isolate(&p("x^2 - 1")).unwrap();
        assert_eq!(roots.roots()[0].as_rat(), Some(&rat(-1, 1)));
        assert_eq!(roots.roots()[1].as_rat(), Some(&rat(1, 1)));

        assert!(isolate(&p("16*x^4 - 16*x^2 + 9")).unwrap().is_empty());
    }

    #[test]
    fn isolate_mixed_exact_and_irrational() {
        // (x - 1)(x^2 - 2): roots -sqrt(2), 1, sqrt(2)
        let f = &p("x - 1") * &p("x^2 - 2");
        let roots = isolate(&f).unwrap();
        assert_eq!(roots.len(), 3);
        assert_eq!(roots.roots()[1].as_rat(), Some(&rat(1, 1)));
        assert_eq!(roots.roots()[0].index(), 1);
        assert_eq!(roots.roots()[2].cmp_rat(&rat(3, 2)), Ordering::Less);
        assert_eq!(roots.roots()[2].cmp_rat(&rat(7, 5)), Ordering::Greater);
    }

    #[test]
    fn compare_examples() {
        let sqrt2 = isolate(&p("x^2 - 2")).unwrap().roots()[1].clone();
        assert_eq!(sqrt2.cmp_rat(&rat(3, 2)), Ordering::Less);

        let sqrt2_again = isolate(&p("2*x^2 - 4")).unwrap().roots()[1].clone();
        assert_eq!(compare(&sqrt2, &sqrt2_again), Ordering::Equal);

        let neg = isolate(&p("x^2 - 2")).unwrap().roots()[0].clone();
        assert_eq!(compare(&neg, &sqrt2), Ordering::Less);
    }

    #[test]
    fn compare_distinguishes_close_values() {
        // sqrt(2) vs the rational 577/408 (a convergent, within 1e-5)
        let sqrt2 = isolate(&p("x^2 - 2")).unwrap().roots()[1].clone();
        let close = AlgebraicValue::from_rat(rat(577, 408));
        assert_eq!(compare(&sqrt2, &close), Ordering::Less);

        // sqrt(2) vs root of (x^2 - 2)(x - 10)/(...) sharing the defining factor
        let f = &p("x^2 - 2") * &p("x - 10");
        let other = isolate(&f).unwrap().roots()[1].clone();
        assert_eq!(compare(&sqrt2, &other), Ordering::Equal);
    }

    #[test]
    fn refine_is_monotone_and_preserving() {
        let sqrt2 = isolate(&p("x^2 - 2")).unwrap().roots()[1].clone();
        let fine = sqrt2.refine(&rat(1, 8));
        assert!(fine.interval().width() <= rat(1, 8));
        assert!(fine.interval().lo >= sqrt2.interval().lo);
        assert!(fine.interval().hi <= sqrt2.interval().hi);
        assert_eq!(compare(&fine, &sqrt2), Ordering::Equal);

        let exact = AlgebraicValue::from_rat(rat(5, 1));
        assert_eq!(exact.refine(&rat(1, 100)), exact);

        let neg = isolate(&p("x^2 - 2")).unwrap().roots()[0].clone();
        let fine = neg.refine(&rat(1, 100));
        assert!(fine.interval().width() <= rat(1, 100));
        assert_eq!(fine.cmp_rat(&rat(-3, 2)), Ordering::Greater);
        assert_eq!(fine.cmp_rat(&rat(-7, 5)), Ordering::Less);
    }

    #[test]
    fn sign_at_rational_examples() {
        assert_eq!(sign_at_rational(&p("x^2 - 2"), &rat(1, 1)).unwrap(), -1);
        assert_eq!(sign_at_rational(&p("x^2 - 2"), &rat(2, 1)).unwrap(), 1);
        assert_eq!(sign_at_rational(&p("x - 1"), &rat(1, 1)).unwrap(), 0);
        assert_eq!(sign_at_rational(&p("-2*x + 1"), &rat(1, 1)).unwrap(), -1);
    }

    #[test]
    fn isolate_higher_degree() {
        // x^3 - x: roots -1, 0, 1, all rational
        let roots = isolate(&p("x^3 - x")).unwrap();
        assert_eq!(roots.len(), 3);
        let vals: Vec<_> = roots.roots().iter().map(|r| r.as_rat().cloned()).collect();
        assert_eq!(vals, vec![Some(rat(-1, 1)), Some(rat(0, 1)), Some(rat(1, 1))]);

        // Wilkinson-ish with an irrational pair: (x^2-3)(x^2-2)(x+5)
        let f = &(&p("x^2 - 3") * &p("x^2 - 2")) * &p("x + 5");
        let roots = isolate(&f).unwrap();
        assert_eq!(roots.len(), 5);
        for w in roots.roots().windows(2) {
            assert_eq!(compare(&w[0], &w[1]), Ordering::Less);
            assert!(w[0].interval().disjoint(w[1].interval()));
        }
    }
}
