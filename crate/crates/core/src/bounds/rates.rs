use std::cmp::Ordering;
use std::fmt;

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::One;

use crate::arith::{ceil_div, floor_div, mul, to_i64};
use crate::equation::{CanonicalTriple, LinearEquation};
use crate::error::{Error, Result};
use crate::rate::{rational, sign_with_log3, RateExpr};

use super::{mu_cases, MuCase};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UpperRate {
    pub p: i64,
    pub q: i64,
    pub r: i64,
    pub t: i64,
    pub c: BigRational,
    /// `C r / q`.
    pub rate: BigRational,
}

fn upper_rate(p: i64, q: i64, r: i64, t: i64) -> Result<UpperRate> {
    let big = |v: i64| BigRational::from_integer(v.into());
    let (pb, qb, tb) = (big(p), big(q), big(t));
    let inner = (&pb * &pb + (&pb - &tb) * (&qb - &tb)) / (&pb * &pb);
    let c = BigRational::one() - &tb / (&pb + &qb) * inner;
    let rate = &c * big(r) / &qb;
    let upper = BigRational::one() - &tb / (&pb + &qb);
    if c < rational(1, 2) || c > upper {
        return Err(Error::Hypothesis(format!(
            "C = {c} outside [1/2, {upper}] for p={p}, q={q}, t={t}"
        )));
    }
    Ok(UpperRate { p, q, r, t, c, rate })
}

/// `C = 1 - t(p² + (p-t)(q-t)) / (p²(p+q))` and the rate `C r / q`.
pub fn fmax_upper_rate(t: &CanonicalTriple) -> Result<UpperRate> {
    t.require_ordered()?;
    upper_rate(t.p(), t.q(), t.r(), t.t())
}

/// The same constant for `p1 x1 + ... + pk xk = r z` with `p = p1 + ... + p(k-1)`
/// and `q = pk`.
pub fn fmax_upper_rate_multivar(l: &LinearEquation) -> Result<UpperRate> {
    if !l.is_homogeneous() {
        return Err(Error::Inhomogeneous(l.rhs()));
    }
    let c = l.coeffs();
    let (left, last) = c.split_at(c.len() - 1);
    let r = -last[0];
    if left.len() < 2 {
        return Err(Error::Hypothesis("need at least two variables on the left".into()));
    }
    if left.iter().any(|&a| a <= 0) || r <= 0 {
        return Err(Error::Hypothesis(
            "shape p1 x1 + ... + pk xk = r z with positive p_i, r".into(),
        ));
    }
    if left.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::Hypothesis("p1 >= ... >= pk violated".into()));
    }
    let pk = *left.last().expect("non-empty");
    if pk < r {
        return Err(Error::Hypothesis(format!("pk = {pk} < r = {r}")));
    }
    let g_all = left.iter().fold(0i64, |g, &a| g.gcd(&a));
    if g_all.gcd(&r) != 1 {
        return Err(Error::Hypothesis("gcd(p1, ..., pk, r) = 1 violated".into()));
    }
    let p = left[..left.len() - 1]
        .iter()
        .try_fold(0i64, |s, &a| s.checked_add(a))
        .ok_or(Error::Overflow)?;
    let t = p.gcd(&pk);
    if t != g_all {
        return Err(Error::Hypothesis(format!(
            "gcd(p, q) = {t} differs from gcd(p1, ..., pk) = {g_all}"
        )));
    }
    upper_rate(p, pk, r, t)
}

/// `⌈⌊(rn - rq²)/(2q)⌋ (q-1)/q⌉ - 1` for `qx + qy = rz`; may be negative.
pub fn fmax_lower_exponent(q: i64, r: i64, n: i64) -> Result<i64> {
    if !(q > r && r >= 1) {
        return Err(Error::Hypothesis(format!("need q > r >= 1, got q={q}, r={r}")));
    }
    if q.gcd(&r) != 1 {
        return Err(Error::Hypothesis(format!("gcd(q, r) = {} != 1", q.gcd(&r))));
    }
    let (q, r, n) = (q as i128, r as i128, n as i128);
    let inner = floor_div(mul(r, n)? - mul(r, mul(q, q)?)?, 2 * q);
    to_i64(ceil_div(mul(inner, q - 1)?, q) - 1)
}

/// Known lower-bound exponent rate for `qx + qy = rz`: `1/(2q)` when `r = 1`,
/// otherwise `r(q-1)/(2q²)`. `None` unless `p = q`.
pub fn lower_rate(t: &CanonicalTriple) -> Option<BigRational> {
    let (p, q, r) = (t.p(), t.q(), t.r());
    if p != q || q < 2 {
        return None;
    }
    Some(if r == 1 {
        rational(1, 2 * q)
    } else {
        rational(r * (q - 1), 2 * q * q)
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BoundName {
    MainT1,
    Max1,
    Max2,
    Max3,
}

impl fmt::Display for BoundName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BoundName::MainT1 => "MainT1",
            BoundName::Max1 => "max1",
            BoundName::Max2 => "max2",
            BoundName::Max3 => "max3",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundEntry {
    pub name: BoundName,
    pub rate: RateExpr,
    pub conditions: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundReport {
    pub triple: CanonicalTriple,
    pub c: BigRational,
    pub mu_density: BigRational,
    pub mu_star_density: BigRational,
    /// In tie-break order: MainT1, max1, max2, max3.
    pub applicable: Vec<BoundEntry>,
    pub best: BoundEntry,
    pub case_label: String,
    pub case_labels: Vec<String>,
    /// The bound the case label says is best.
    pub designated: BoundName,
}

impl BoundReport {
    pub fn entry(&self, name: BoundName) -> Option<&BoundEntry> {
        self.applicable.iter().find(|e| e.name == name)
    }
}

/// Evaluates the four upper bounds on the number of maximal L-free sets,
/// picks the exact minimum and labels the case of the comparison table.
pub fn best_bound(t: &CanonicalTriple) -> Result<BoundReport> {
    t.require_ordered()?;
    let (p, q, r, tt) = (t.p(), t.q(), t.r(), t.t());
    if p < 2 {
        return Err(Error::Hypothesis("p >= 2 required".into()));
    }
    let unknown = || Error::DensityUnknown { p, q, r };
    let cases = mu_cases(t)?;
    let mu_density = match cases.first() {
        Some(MuCase::I) => rational(q - 1, q),
        Some(MuCase::Ii) => rational(p + q - r, p + q),
        Some(MuCase::Iii) => rational(tt - 1, tt),
        None if r == 1 => rational(p + q - 1, p + q),
        None => return Err(unknown()),
    };
    let mu_star_density = (BigRational::one() - rational(r, q)) * rational(tt - 1, tt);
    let gap = &mu_density - &mu_star_density;
    let upper = fmax_upper_rate(t)?;

    let mut applicable = vec![
        BoundEntry {
            name: BoundName::MainT1,
            rate: RateExpr::rational(upper.rate.clone()),
            conditions: "p >= q >= r, gcd(p,q,r) = 1".into(),
        },
        BoundEntry {
            name: BoundName::Max1,
            rate: RateExpr::base3(&gap / BigRational::from_integer(3.into())),
            conditions: "homogeneous three-variable equation".into(),
        },
    ];
    let q_div_p = t.q_divides_p();
    if r == 1 && q_div_p && q >= 2 && p <= q * q - q {
        applicable.push(BoundEntry {
            name: BoundName::Max2,
            rate: RateExpr::rational(&gap / BigRational::from_integer(2.into())),
            conditions: "r = 1, gcd(p,q) = q, p <= q² - q".into(),
        });
    }
    applicable.push(BoundEntry {
        name: BoundName::Max3,
        rate: RateExpr::rational(rational(r, q) * &mu_density),
        conditions: "p >= q >= r".into(),
    });
    let best = applicable
        .iter()
        .fold(None::<&BoundEntry>, |acc, e| match acc {
            Some(b) if b.rate <= e.rate => Some(b),
            _ => Some(e),
        })
        .expect("non-empty")
        .clone();

    let case_labels = case_labels(t, &cases);
    let Some(case_label) = case_labels.first().cloned() else {
        return Err(unknown());
    };
    let designated = if case_label.starts_with("ii") {
        BoundName::MainT1
    } else {
        BoundName::Max1
    };
    Ok(BoundReport {
        triple: *t,
        c: upper.c,
        mu_density,
        mu_star_density,
        applicable,
        best,
        case_label,
        case_labels,
        designated,
    })
}

fn case_labels(t: &CanonicalTriple, cases: &[MuCase]) -> Vec<String> {
    let (p, q, r) = (t.p(), t.q(), t.r());
    let q_div_p = t.q_divides_p();
    let mu_is_residue = cases.contains(&MuCase::I) || cases.contains(&MuCase::Iii);
    let threshold = x_threshold(p, q);
    let sub = if p != q {
        Some("(1)")
    } else if (2..=18).contains(&q) {
        Some("(2)")
    } else {
        None
    };

    let mut labels = Vec::new();
    if r == 1 && q_div_p && p >= q * q && threshold != Some(Ordering::Less) && q <= 9 {
        labels.push("i(a)".to_string());
    }
    if let Some(sub) = sub {
        if r >= 2 && q_div_p && p + q >= r * q {
            labels.push(format!("i(c){sub}"));
        }
        if r >= 2 && mu_is_residue {
            labels.push(format!("i(b){sub}"));
        }
    }
    if r == 1 && (!q_div_p || q > 9 || p < q * q || threshold == Some(Ordering::Less)) {
        labels.push("ii(a)".to_string());
    }
    if r >= 2 && mu_is_residue && p == q && q >= 19 {
        labels.push("ii(b)".to_string());
    }
    labels
}

/// Compares `p` with `(q² - q) a / (q(3 - 2a) + a)`, `a = log2 3`; `None`
/// when the denominator is negative (the threshold is then not positive).
fn x_threshold(p: i64, q: i64) -> Option<Ordering> {
    let big = |v: i64| BigRational::from_integer(v.into());
    // denominator 3q - (2q - 1) a
    if sign_with_log3(&big(3 * q), &big(-(2 * q - 1))) != Ordering::Greater {
        return None;
    }
    // p * den - (q² - q) a = 3pq - (2pq - p + q² - q) a
    let s = sign_with_log3(&big(3 * p * q), &big(-(2 * p * q - p + q * q - q)));
    Some(if s == Ordering::Less {
        Ordering::Less
    } else {
        Ordering::Greater
    })
}

impl BoundReport {
    /// Whether the designated bound's rate is minimal among the applicable ones.
    pub fn designated_is_minimal(&self) -> bool {
        let Some(d) = self.entry(self.designated) else {
            return false;
        };
        self.applicable.iter().all(|e| d.rate <= e.rate)
    }
}
