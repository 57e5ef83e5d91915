//! Resultants via the subresultant remainder sequence and discriminants.
//!
//! The returned resultant equals the Sylvester-matrix determinant exactly,
//! including sign; `crate::verify::oracle_resultant` recomputes it by
//! fraction-free determinant expansion as an independent check.

use crate::{Error, Result};

use super::{Polynomial, Var};

/// Pseudo-remainder: the unique `r` with
/// `ldcf(b)^(deg a - deg b + 1) * a = q*b + r` and `deg_v r < deg_v b`.
///
/// Requires `deg_v a >= deg_v b >= 0` and `b != 0`.
pub fn pseudo_rem(a: &Polynomial, b: &Polynomial, v: Var) -> Polynomial {
    let da = a.degree(v).expect("pseudo_rem: zero dividend");
    let db = b.degree(v).expect("pseudo_rem: zero divisor");
    debug_assert!(da >= db);
    let lb = b.ldcf(v).unwrap();
    let mut r = a.clone();
    let mut steps = 0u32;
    loop {
        if r.is_zero() {
            break;
        }
        let dr = r.degree(v).unwrap();
        if dr < db {
            break;
        }
        let lr = r.ldcf(v).unwrap();
        let shifted = b.mul_var_pow(v, dr - db);
        r = &(&lb * &r) - &(&lr * &shifted);
        steps += 1;
    }
    // pad to the full ldcf(b)^(da-db+1) factor
    for _ in steps..(da - db + 1) {
        r = &lb * &r;
    }
    r
}

/// Resultant of `p` and `q` with respect to `v`. Both arguments must have
/// positive degree in `v`; the caller handles constant cases.
pub fn resultant(p: &Polynomial, q: &Polynomial, v: Var) -> Result<Polynomial> {
    let dp = p.degree(v).ok_or(Error::ZeroPolynomial)?;
    let dq = q.degree(v).ok_or(Error::ZeroPolynomial)?;
    if dp < 1 || dq < 1 {
        return Err(Error::DegreeTooLow { op: "resultant" });
    }
    Ok(resultant_any(p, q, v))
}

/// Subresultant PRS resultant, accepting degree-0 arguments.
fn resultant_any(p: &Polynomial, q: &Polynomial, v: Var) -> Polynomial {
    let nvars = p.nvars();
    let dp = p.degree(v).unwrap();
    let dq = q.degree(v).unwrap();
    if dp == 0 && dq == 0 {
        return Polynomial::one(nvars);
    }
    if dp == 0 {
        return p.pow(dq);
    }
    if dq == 0 {
        return q.pow(dp);
    }

    let mut negative = false;
    let (mut a, mut b) = if dp < dq {
        if dp % 2 == 1 && dq % 2 == 1 {
            negative = !negative;
        }
        (q.clone(), p.clone())
    } else {
        (p.clone(), q.clone())
    };

    let mut g = Polynomial::one(nvars);
    let mut h = Polynomial::one(nvars);
    loop {
        let da = a.degree(v).unwrap();
        let db = b.degree(v).unwrap();
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            negative = !negative;
        }
        let r = pseudo_rem(&a, &b, v);
        a = b;
        let divisor = &g * &h.pow(delta);
        b = r.exact_div(&divisor).expect("subresultant division is exact");
        g = a.ldcf(v).unwrap();
        h = if delta == 0 {
            h
        } else {
            g.pow(delta)
                .exact_div(&h.pow(delta - 1))
                .expect("subresultant h-update is exact")
        };
        if b.is_zero() {
            return Polynomial::zero(nvars);
        }
        if b.degree(v).unwrap() == 0 {
            let da2 = a.degree(v).unwrap();
            let res = b
                .pow(da2)
                .exact_div(&h.pow(da2 - 1))
                .expect("final subresultant division is exact");
            return if negative { -&res } else { res };
        }
    }
}

/// Discriminant of `p` with respect to `v`:
/// `(-1)^(d(d-1)/2) * res_v(p, dp/dv) / ldcf_v(p)` for `d = deg_v p >= 2`.
/// A degree-1 polynomial has discriminant 1 by convention, so that callers
/// adding discriminants unconditionally see trivial entries vanish.
pub fn discriminant(p: &Polynomial, v: Var) -> Result<Polynomial> {
    let d = p.degree(v).ok_or(Error::ZeroPolynomial)?;
    if d < 1 {
        return Err(Error::DegreeTooLow { op: "discriminant" });
    }
    if d == 1 {
        return Ok(Polynomial::one(p.nvars()));
    }
    let dp = p.derivative(v);
    let res = resultant_any(p, &dp, v);
    let quot = res.exact_div(&p.ldcf(v).unwrap()).expect("ldcf divides res(p, p')");
    let sign_flip = (d as u64) * (d as u64 - 1) / 2 % 2 == 1;
    Ok(if sign_flip { -&quot } else { quot })
}
