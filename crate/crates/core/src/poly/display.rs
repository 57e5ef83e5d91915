//! Compact text rendering; the writer output round-trips through the parser.

use std::fmt;

use num_traits::{One, Signed};

use crate::arith::{format_rat, Rat};

use super::{Polynomial, VarOrder};

/// Adapter tying a polynomial to variable names for display.
pub struct PolyDisplay<'a> {
    poly: &'a Polynomial,
    vars: &'a VarOrder,
}

impl<'a> PolyDisplay<'a> {
    pub(super) fn new(poly: &'a Polynomial, vars: &'a VarOrder) -> Self {
        PolyDisplay { poly, vars }
    }
}

fn write_term(
    f: &mut fmt::Formatter<'_>,
    vars: &VarOrder,
    exps: &[u32],
    coeff_abs: &Rat,
) -> fmt::Result {
    let mut parts: Vec<String> = Vec::new();
    if !coeff_abs.is_one() || exps.iter().all(|e| *e == 0) {
        parts.push(format_rat(coeff_abs));
    }
    for (i, e) in exps.iter().enumerate() {
        if *e == 1 {
            parts.push(vars.names()[i].clone());
        } else if *e > 1 {
            parts.push(format!("{}^{}", vars.names()[i], e));
        }
    }
    write!(f, "{}", parts.join("*"))
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.poly.terms().rev().enumerate() {
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, "-")?;
            } else {
                write!(f, "+")?;
            }
            write_term(f, self.vars, m.exps(), &c.abs())?;
        }
        Ok(())
    }
}
