use num_integer::Integer;
use serde::Serialize;

use crate::arith::{ceil_div, mul, to_i64};
use crate::equation::{CanonicalTriple, LinearEquation};
use crate::error::{Error, Result};

use super::{case_iii_condition, mu_case_value, MuCase};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase", tag = "kind")]
pub enum MuBound {
    Exact { value: i64 },
    Interval { lo: i64, hi: i64 },
}

/// Result of the grouped-coefficient size formula, with the grouping used.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MultivarMu {
    pub bound: MuBound,
    pub case: MuCase,
    /// 0-based indices of the `x`, `y` and `z` groups.
    pub groups: [Vec<usize>; 3],
    pub triple: CanonicalTriple,
    /// `true` if the equation was negated to put the larger group on the left.
    pub negated: bool,
}

/// Tries every split of the positive coefficients into an `x` group and a
/// `y` group (`p' >= q' >= r'`); exact cases win over the interval case.
pub fn mu_formula_multivar(l: &LinearEquation, n: u32) -> Result<MultivarMu> {
    if !l.is_homogeneous() {
        return Err(Error::Inhomogeneous(l.rhs()));
    }
    let mut failures = Vec::new();
    let mut interval = None;
    for negated in [false, true] {
        let coeffs: Vec<i64> = l
            .coeffs()
            .iter()
            .map(|&a| if negated { -a } else { a })
            .collect();
        let pos: Vec<usize> = (0..coeffs.len()).filter(|&i| coeffs[i] > 0).collect();
        let neg: Vec<usize> = (0..coeffs.len()).filter(|&i| coeffs[i] < 0).collect();
        if pos.len() < 2 || neg.is_empty() {
            continue;
        }
        if pos.len() > 20 {
            return Err(Error::Hypothesis("too many positive coefficients".into()));
        }
        for mask in 1u32..(1 << pos.len()) - 1 {
            let xs: Vec<usize> = (0..pos.len()).filter(|&j| mask >> j & 1 == 1).map(|j| pos[j]).collect();
            let ys: Vec<usize> = (0..pos.len()).filter(|&j| mask >> j & 1 == 0).map(|j| pos[j]).collect();
            match try_split(&coeffs, &xs, &ys, &neg, n)? {
                Ok((bound, case, triple)) => {
                    let found = MultivarMu {
                        bound,
                        case,
                        groups: [xs, ys, neg.clone()],
                        triple,
                        negated,
                    };
                    if matches!(bound, MuBound::Exact { .. }) {
                        return Ok(found);
                    }
                    interval.get_or_insert(found);
                }
                Err(why) => failures.push(format!("x{xs:?} y{ys:?}: {why}")),
            }
        }
    }
    match interval {
        Some(found) => Ok(found),
        None if failures.is_empty() => Err(Error::Hypothesis(
            "need at least two coefficients of one sign and one of the other".into(),
        )),
        None => Err(Error::Hypothesis(failures.join("; "))),
    }
}

type SplitOutcome = std::result::Result<(MuBound, MuCase, CanonicalTriple), String>;

fn try_split(coeffs: &[i64], xs: &[usize], ys: &[usize], zs: &[usize], n: u32) -> Result<SplitOutcome> {
    let sum = |idx: &[usize]| -> Result<i64> {
        idx.iter()
            .try_fold(0i64, |acc, &i| acc.checked_add(coeffs[i].abs()).ok_or(Error::Overflow))
    };
    let (pp, qq, rr) = (sum(xs)?, sum(ys)?, sum(zs)?);
    if pp < qq || qq < rr {
        return Ok(Err(format!("need p' >= q' >= r', got ({pp},{qq},{rr})")));
    }
    let t_prime = pp.gcd(&qq).gcd(&rr);
    let (p, q, r) = (pp / t_prime, qq / t_prime, rr / t_prime);
    let triple = CanonicalTriple::ordered(p, q, r)?;
    let t = triple.t();
    let mut why = Vec::new();

    // (i)
    let mut clauses = Vec::new();
    if zs.len() != 1 || ys.len() != 1 {
        clauses.push("m=1, ℓ=1");
    } else if xs.iter().any(|&i| coeffs[i] % qq != 0) {
        clauses.push("q'=b_1 divides a_i");
    }
    if p + q > r * q {
        clauses.push("p+q <= rq");
    }
    if clauses.is_empty() {
        let v = mu_case_value(&triple, MuCase::I, n)?;
        return Ok(Ok((MuBound::Exact { value: v }, MuCase::I, triple)));
    }
    why.push(format!("(i) fails {}", clauses.join(", ")));

    // (iii)
    let mut clauses = Vec::new();
    if p % q == 0 {
        clauses.push("q does not divide p");
    }
    if zs.len() != 1 {
        clauses.push("m=1");
    }
    let tt = mul(t as i128, t_prime as i128)?;
    if xs.iter().chain(ys).any(|&i| coeffs[i] as i128 % tt != 0) {
        clauses.push("tt' divides a_i and b_j");
    }
    if t <= 1 || !case_iii_condition(&triple) {
        clauses.push("r bound");
    }
    if clauses.is_empty() {
        let v = mu_case_value(&triple, MuCase::Iii, n)?;
        return Ok(Ok((MuBound::Exact { value: v }, MuCase::Iii, triple)));
    }
    why.push(format!("(iii) fails {}", clauses.join(", ")));

    // (ii)
    let mut clauses = Vec::new();
    if p % q != 0 {
        clauses.push("q divides p");
    }
    if p + q < r * q {
        clauses.push("p+q >= rq");
    }
    if clauses.is_empty() {
        let hi = mu_case_value(&triple, MuCase::Ii, n)?;
        let lo = to_i64(ceil_div(mul((p + q - r) as i128, n as i128)?, (p + q) as i128))?;
        return Ok(Ok((MuBound::Interval { lo, hi }, MuCase::Ii, triple)));
    }
    why.push(format!("(ii) fails {}", clauses.join(", ")));
    Ok(Err(why.join(", ")))
}
