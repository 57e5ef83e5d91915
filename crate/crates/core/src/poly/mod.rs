//! Sparse multivariate polynomials over the rationals under a fixed variable
//! order, together with the projection-operator ingredients: coefficients,
//! leading coefficients, resultants, discriminants, gcds, and normalization
//! into a coprime squarefree basis.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::Rat;
use crate::{Error, Result};

mod basis;
mod display;
mod gcd;
mod parse;
mod resultant;

pub use basis::{normalize_basis, normalize_single, squarefree_decomposition};
pub use display::PolyDisplay;
pub use gcd::{content_in_var, gcd};
pub use parse::{parse_poly, ParseError};
pub use resultant::{discriminant, pseudo_rem, resultant};

/// A variable, identified by its 0-based position in the [`VarOrder`].
/// The variable at index `i` has level `i + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(pub usize);

impl Var {
    pub fn level(self) -> usize {
        self.0 + 1
    }

    pub fn of_level(level: usize) -> Var {
        debug_assert!(level >= 1);
        Var(level - 1)
    }
}

/// The fixed variable ordering `x1 < x2 < ... < xn` for one computation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarOrder {
    names: Vec<String>,
}

impl VarOrder {
    /// Builds an order from distinct names; duplicates are rejected.
    pub fn new<S: Into<String>>(names: Vec<S>) -> std::result::Result<VarOrder, String> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(format!("duplicate variable name `{n}`"));
            }
        }
        Ok(VarOrder { names })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, v: Var) -> &str {
        &self.names[v.0]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<Var> {
        self.names.iter().position(|n| n == name).map(Var)
    }
}

/// Exponent vector of fixed length, ordered by graded reverse-lexicographic
/// comparison so that iteration order is deterministic everywhere downstream.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn unit(nvars: usize) -> Monomial {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, v: Var, k: u32) -> Monomial {
        let mut e = vec![0; nvars];
        e[v.0] = k;
        Monomial(e)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn try_div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(&other.0) {
            if a < b {
                return None;
            }
            out.push(a - b);
        }
        Some(Monomial(out))
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let (da, db) = (self.total_degree(), other.total_degree());
        if da != db {
            return da.cmp(&db);
        }
        // grevlex tie-break: smaller exponent on the last differing variable wins
        for k in (0..self.0.len()).rev() {
            if self.0[k] != other.0[k] {
                return other.0[k].cmp(&self.0[k]);
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse exact polynomial. Zero coefficients are never stored; the zero
/// polynomial has an empty term map and level 0. The level is the largest
/// variable index (1-based) occurring with positive exponent.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, Rat>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Polynomial {
        Polynomial { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Polynomial {
        Polynomial::constant(nvars, Rat::one())
    }

    pub fn constant(nvars: usize, c: Rat) -> Polynomial {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::unit(nvars), c);
        }
        Polynomial { nvars, terms }
    }

    pub fn var(nvars: usize, v: Var) -> Polynomial {
        Polynomial::monomial(nvars, Monomial::var(nvars, v, 1), Rat::one())
    }

    pub fn monomial(nvars: usize, m: Monomial, c: Rat) -> Polynomial {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { nvars, terms }
    }

    pub fn from_terms<I>(nvars: usize, it: I) -> Polynomial
    where
        I: IntoIterator<Item = (Vec<u32>, Rat)>,
    {
        let mut p = Polynomial::zero(nvars);
        for (e, c) in it {
            debug_assert_eq!(e.len(), nvars);
            p.add_term(Monomial(e), c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.level() == 0
    }

    /// The constant value, when the polynomial has level 0.
    pub fn constant_value(&self) -> Option<Rat> {
        if self.is_zero() {
            return Some(Rat::zero());
        }
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            if m.total_degree() == 0 {
                return Some(c.clone());
            }
        }
        None
    }

    pub fn terms(&self) -> std::collections::btree_map::Iter<'_, Monomial, Rat> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// 0 for constants (including zero), otherwise the largest 1-based
    /// variable index occurring with positive exponent.
    pub fn level(&self) -> usize {
        self.terms
            .keys()
            .flat_map(|m| {
                m.0.iter()
                    .enumerate()
                    .filter(|(_, e)| **e > 0)
                    .map(|(i, _)| i + 1)
            })
            .max()
            .unwrap_or(0)
    }

    /// The variable of the polynomial's level, if any.
    pub fn main_var(&self) -> Option<Var> {
        match self.level() {
            0 => None,
            l => Some(Var(l - 1)),
        }
    }

    /// Highest exponent of `v`; `None` for the zero polynomial.
    pub fn degree(&self, v: Var) -> Option<u32> {
        if self.is_zero() {
            return None;
        }
        Some(self.terms.keys().map(|m| m.0[v.0]).max().unwrap())
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.total_degree()).max().unwrap_or(0)
    }

    /// Coefficient of `v^k` as a polynomial in the remaining variables.
    pub fn coeff_of(&self, v: Var, k: u32) -> Polynomial {
        let mut out = Polynomial::zero(self.nvars);
        for (m, c) in &self.terms {
            if m.0[v.0] == k {
                let mut e = m.0.clone();
                e[v.0] = 0;
                out.add_term(Monomial(e), c.clone());
            }
        }
        out
    }

    /// Coefficient list in `v`, position `k` holding the coefficient of `v^k`.
    /// The zero polynomial yields a single zero entry.
    pub fn coeffs(&self, v: Var) -> Vec<Polynomial> {
        let d = self.degree(v).unwrap_or(0);
        (0..=d).map(|k| self.coeff_of(v, k)).collect()
    }

    /// Leading coefficient in `v`; `None` for the zero polynomial. When `v`
    /// does not occur, this is the polynomial itself.
    pub fn ldcf(&self, v: Var) -> Option<Polynomial> {
        let d = self.degree(v)?;
        Some(self.coeff_of(v, d))
    }

    /// Formal partial derivative with respect to `v`.
    pub fn derivative(&self, v: Var) -> Polynomial {
        let mut out = Polynomial::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[v.0];
            if e > 0 {
                let mut exps = m.0.clone();
                exps[v.0] = e - 1;
                out.add_term(Monomial(exps), c * Rat::from_integer(BigInt::from(e)));
            }
        }
        out
    }

    /// Substitutes `r[0..j]` for the first `j` variables exactly.
    pub fn eval_prefix(&self, r: &[Rat]) -> Polynomial {
        debug_assert!(r.len() <= self.nvars);
        let mut out = Polynomial::zero(self.nvars);
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut exps = m.0.clone();
            for (k, val) in r.iter().enumerate() {
                for _ in 0..exps[k] {
                    coeff *= val;
                }
                exps[k] = 0;
            }
            out.add_term(Monomial(exps), coeff);
        }
        out
    }

    /// Full evaluation at a point of length `nvars`.
    pub fn eval(&self, r: &[Rat]) -> Rat {
        debug_assert_eq!(r.len(), self.nvars);
        self.eval_prefix(r).constant_value().expect("full substitution yields a constant")
    }

    /// Grevlex-leading (monomial, coefficient) pair.
    pub fn leading(&self) -> Option<(&Monomial, &Rat)> {
        self.terms.iter().next_back()
    }

    pub fn mul_scalar(&self, c: &Rat) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn mul_var_pow(&self, v: Var, k: u32) -> Polynomial {
        if k == 0 {
            return self.clone();
        }
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut e = m.0.clone();
                    e[v.0] += k;
                    (Monomial(e), c.clone())
                })
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut out = Polynomial::one(self.nvars);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Exact division; `None` when `divisor` does not divide `self`.
    pub fn exact_div(&self, divisor: &Polynomial) -> Option<Polynomial> {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let mut rem = self.clone();
        let mut quot = Polynomial::zero(self.nvars);
        let (dm, dc) = {
            let (m, c) = divisor.leading().unwrap();
            (m.clone(), c.clone())
        };
        while !rem.is_zero() {
            let (rm, rc) = {
                let (m, c) = rem.leading().unwrap();
                (m.clone(), c.clone())
            };
            let qm = rm.try_div(&dm)?;
            let qc = rc / &dc;
            let t = Polynomial::monomial(self.nvars, qm, qc);
            rem = &rem - &(&t * divisor);
            quot = &quot + &t;
        }
        Some(quot)
    }

    /// The positive rational `c` such that `self / c` has coprime integer
    /// coefficients. Zero polynomial yields 1.
    pub fn rational_content(&self) -> Rat {
        if self.is_zero() {
            return Rat::one();
        }
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            num_gcd = num_gcd.gcd(&c.numer().abs());
            den_lcm = den_lcm.lcm(c.denom());
        }
        Rat::new(num_gcd, den_lcm)
    }

    /// Canonical representative up to rational scalar: coprime integer
    /// coefficients with positive grevlex-leading coefficient.
    pub fn canonical(&self) -> Polynomial {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = self.rational_content();
        if self.leading().unwrap().1.is_negative() {
            c = -c;
        }
        self.mul_scalar(&c.recip())
    }

    /// Dense coefficient vector (ascending powers) when the polynomial uses no
    /// variable other than `v`.
    pub fn to_univariate(&self, v: Var) -> Result<Vec<Rat>> {
        let mut coeffs = vec![Rat::zero(); self.degree(v).unwrap_or(0) as usize + 1];
        for (m, c) in &self.terms {
            for (i, e) in m.0.iter().enumerate() {
                if *e > 0 && i != v.0 {
                    return Err(Error::NotUnivariate);
                }
            }
            coeffs[m.0[v.0] as usize] = c.clone();
        }
        Ok(coeffs)
    }

    pub fn from_univariate(nvars: usize, v: Var, coeffs: &[Rat]) -> Polynomial {
        let mut p = Polynomial::zero(nvars);
        for (k, c) in coeffs.iter().enumerate() {
            p.add_term(Monomial::var(nvars, v, k as u32), c.clone());
        }
        p
    }

    /// Renders the polynomial with the given variable names.
    pub fn display<'a>(&'a self, vars: &'a VarOrder) -> PolyDisplay<'a> {
        PolyDisplay::new(self, vars)
    }

    /// Compact text form using the variable names of `vars`.
    pub fn to_text(&self, vars: &VarOrder) -> String {
        self.display(vars).to_string()
    }
}

impl std::ops::Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl std::ops::Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        debug_assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl std::ops::Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        debug_assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl std::ops::Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        debug_assert_eq!(self.nvars, rhs.nvars);
        let mut out = Polynomial::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}
