//! Extremal constructions and closed-form size bounds for `px + qy = rz`.

mod multivar;
mod rates;

use std::fmt;

use num_bigint::BigInt;
use serde::Serialize;

use crate::arith::{ceil_div, floor_div, mul, to_i64};
use crate::equation::CanonicalTriple;
use crate::error::{Error, Result};
use crate::set::IntegerSet;

pub use multivar::{mu_formula_multivar, MultivarMu, MuBound};
pub use rates::{
    best_bound, fmax_lower_exponent, fmax_upper_rate, fmax_upper_rate_multivar, lower_rate,
    BoundEntry, BoundName, BoundReport, UpperRate,
};

/// `I_n = [⌊r(n-a)/(p+q)⌋ + 1, n]` with `0 <= a < t`, `t | n - a`.
pub fn interval_in(t: &CanonicalTriple, n: u32) -> IntegerSet {
    let n_ = n as i128;
    let a = n_ % t.t() as i128;
    let lo = floor_div(t.r() as i128 * (n_ - a), (t.p() + t.q()) as i128) + 1;
    match u32::try_from(lo) {
        Ok(lo) => IntegerSet::interval(n, lo, n),
        Err(_) => IntegerSet::empty(n),
    }
}

/// `T_n`: the elements of `[n]` not divisible by `t`.
pub fn residue_tn(t: &CanonicalTriple, n: u32) -> IntegerSet {
    let m = t.t();
    IntegerSet::from_predicate(n, |x| x as i64 % m != 0)
}

/// `A_n`: odd elements together with everything above `2n/3`.
pub fn hybrid_an(n: u32) -> IntegerSet {
    IntegerSet::from_predicate(n, |x| x % 2 == 1 || 3 * x as u64 > 2 * n as u64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MuCase {
    I,
    Ii,
    Iii,
}

impl fmt::Display for MuCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MuCase::I => "i",
            MuCase::Ii => "ii",
            MuCase::Iii => "iii",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MuValue {
    pub value: i64,
    pub case: MuCase,
}

/// The size-formula cases whose hypotheses hold for `t` (independent of `n`).
pub fn mu_cases(t: &CanonicalTriple) -> Result<Vec<MuCase>> {
    t.require_ordered()?;
    let (p, q, r) = (t.p(), t.q(), t.r());
    let mut cases = Vec::new();
    if t.q_divides_p() {
        if p + q <= r * q {
            cases.push(MuCase::I);
        }
        if p + q >= r * q {
            cases.push(MuCase::Ii);
        }
    } else if t.t() > 1 && case_iii_condition(t) {
        cases.push(MuCase::Iii);
    }
    Ok(cases)
}

/// `r D > (r1 r2 - r1 - r2 + 4) r2 ((r1 + 1) D + r2 - 1)` with
/// `D = r1² + (r1 - 1)(r2 - 1)`.
pub(crate) fn case_iii_condition(t: &CanonicalTriple) -> bool {
    let (r, r1, r2) = (BigInt::from(t.r()), BigInt::from(t.r1()), BigInt::from(t.r2()));
    let one = BigInt::from(1);
    let d = &r1 * &r1 + (&r1 - &one) * (&r2 - &one);
    let lhs = &r * &d;
    let rhs = (&r1 * &r2 - &r1 - &r2 + 4) * &r2 * ((&r1 + &one) * &d + &r2 - &one);
    lhs > rhs
}

pub(crate) fn mu_case_value(t: &CanonicalTriple, case: MuCase, n: u32) -> Result<i64> {
    let (p, q, r, tt) = (t.p() as i128, t.q() as i128, t.r() as i128, t.t() as i128);
    let n = n as i128;
    let v = match case {
        MuCase::I => ceil_div(mul(q - 1, n)?, q),
        MuCase::Ii => {
            let a = n % q;
            ceil_div(mul(p + q - r, n - a)?, p + q) + a
        }
        MuCase::Iii => ceil_div(mul(tt - 1, n)?, tt),
    };
    to_i64(v)
}

/// The closed-form μ value from the first applicable case, or `None`.
pub fn mu_formula(t: &CanonicalTriple, n: u32) -> Result<Option<MuValue>> {
    Ok(mu_formula_all(t, n)?.into_iter().next())
}

/// Every applicable case with its value; cases (i) and (ii) both appear when
/// `p + q = rq`.
pub fn mu_formula_all(t: &CanonicalTriple, n: u32) -> Result<Vec<MuValue>> {
    mu_cases(t)?
        .into_iter()
        .map(|case| {
            Ok(MuValue {
                value: mu_case_value(t, case, n)?,
                case,
            })
        })
        .collect()
}

/// Size of the explicit matching in `G_M`; the block term is clamped at zero
/// for small `M`.
pub fn matching_size_formula(t: &CanonicalTriple, m: i64) -> Result<i64> {
    check_divisible(t, m)?;
    let (p, q, r) = (t.p() as i128, t.q() as i128, t.r() as i128);
    let (r1, r2) = (t.r1() as i128, t.r2() as i128);
    let rm = mul(r, m as i128)?;
    let first = floor_div(rm, r2 * (p + q));
    let blocks = block_count(t, m)?;
    let factor = r1 * r2 - r1 - r2 + 1;
    to_i64(first + factor * blocks)
}

/// `max(0, ⌊⌊rM/(r1(p+q)) - 1/r2⌋ / (r1 r2)⌋)`.
pub(crate) fn block_count(t: &CanonicalTriple, m: i64) -> Result<i128> {
    let (p, q, r) = (t.p() as i128, t.q() as i128, t.r() as i128);
    let (r1, r2) = (t.r1() as i128, t.r2() as i128);
    let rm = mul(r, m as i128)?;
    let inner = floor_div(mul(rm, r2)? - r1 * (p + q), r1 * r2 * (p + q));
    Ok(floor_div(inner, r1 * r2).max(0))
}

fn check_divisible(t: &CanonicalTriple, m: i64) -> Result<()> {
    t.require_ordered()?;
    if m < 1 || m % t.t() != 0 {
        return Err(Error::NotDivisible { m, t: t.t() });
    }
    Ok(())
}

/// Without `n`: cap on `|S ∩ [⌈rM/q⌉ - 1]|` for an L-free `S ∋ M`.
/// With `n`: cap on `|S|` when `M` is the largest element of `S` divisible by `t`.
pub fn small_elements_bound(t: &CanonicalTriple, m: i64, n: Option<i64>) -> Result<i64> {
    let matched = matching_size_formula(t, m)? as i128;
    let (q, r, tt) = (t.q() as i128, t.r() as i128, t.t() as i128);
    let m = m as i128;
    let v = match n {
        None => ceil_div(mul(r, m)?, q) - 1 - matched,
        Some(n) => m - matched + ceil_div(mul(n as i128 - m, tt - 1)?, tt),
    };
    to_i64(v)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MuStarMode {
    Formula,
    ExactSet,
}

/// Elements `s > ⌊(rn - p)/q⌋` of `[n]` with `t ∤ s`, counted exactly or by
/// the ceiling expression.
pub fn mu_star(t: &CanonicalTriple, n: u32, mode: MuStarMode) -> Result<i64> {
    t.require_ordered()?;
    let (p, q, r, tt) = (t.p() as i128, t.q() as i128, t.r() as i128, t.t() as i128);
    let n = n as i128;
    let lo = floor_div(mul(r, n)? - p, q);
    let v = match mode {
        MuStarMode::Formula => ceil_div(mul(n - lo, tt - 1)?, tt),
        MuStarMode::ExactSet => {
            let lo = lo.clamp(0, n);
            (n - lo) - (n / tt - lo / tt)
        }
    };
    to_i64(v)
}
