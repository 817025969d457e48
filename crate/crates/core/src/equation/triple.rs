use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::LinearEquation;

/// The normalized form `p x + q y = r z` with `p >= q`, `gcd(p,q,r) = 1`.
///
/// `t = gcd(p,q)`, `r1 = p/t`, `r2 = q/t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CanonicalTriple {
    p: i64,
    q: i64,
    r: i64,
    t: i64,
}

impl CanonicalTriple {
    /// Normalizes positive `(p, q, r)`: swaps so `p >= q` and divides by the
    /// common gcd.
    pub fn new(p: i64, q: i64, r: i64) -> Result<Self> {
        if p <= 0 || q <= 0 || r <= 0 {
            return Err(Error::Triple {
                p,
                q,
                r,
                msg: "coefficients must be positive".into(),
            });
        }
        let (p, q) = if p >= q { (p, q) } else { (q, p) };
        let g = p.gcd(&q).gcd(&r);
        let (p, q, r) = (p / g, q / g, r / g);
        Ok(Self {
            p,
            q,
            r,
            t: p.gcd(&q),
        })
    }

    /// Like [`CanonicalTriple::new`] but additionally requires `p >= q >= r`.
    pub fn ordered(p: i64, q: i64, r: i64) -> Result<Self> {
        let t = Self::new(p, q, r)?;
        t.require_ordered()?;
        Ok(t)
    }

    /// Reads `px+qy=rz` off a homogeneous three-variable equation.
    pub fn from_equation(l: &LinearEquation) -> Result<Self> {
        if l.arity() != 3 {
            return Err(Error::WrongArity {
                expected: 3,
                found: l.arity(),
            });
        }
        if l.rhs() != 0 {
            return Err(Error::Inhomogeneous(l.rhs()));
        }
        let mut c = l.coeffs().to_vec();
        let negatives = c.iter().filter(|&&a| a < 0).count();
        match negatives {
            0 | 3 => return Err(Error::SameSign),
            2 => c.iter_mut().for_each(|a| *a = -*a),
            _ => {}
        }
        let mut pos: Vec<i64> = c.iter().copied().filter(|&a| a > 0).collect();
        pos.sort_unstable_by(|a, b| b.cmp(a));
        let r = -c.iter().copied().find(|&a| a < 0).expect("one negative coefficient");
        Self::new(pos[0], pos[1], r)
    }

    pub fn p(&self) -> i64 {
        self.p
    }
    pub fn q(&self) -> i64 {
        self.q
    }
    pub fn r(&self) -> i64 {
        self.r
    }
    pub fn t(&self) -> i64 {
        self.t
    }
    pub fn r1(&self) -> i64 {
        self.p / self.t
    }
    pub fn r2(&self) -> i64 {
        self.q / self.t
    }

    /// `q >= r`, which most of the closed forms assume.
    pub fn is_ordered(&self) -> bool {
        self.q >= self.r
    }

    pub fn require_ordered(&self) -> Result<()> {
        if self.is_ordered() {
            Ok(())
        } else {
            Err(Error::NotOrdered {
                p: self.p,
                q: self.q,
                r: self.r,
            })
        }
    }

    pub fn q_divides_p(&self) -> bool {
        self.p % self.q == 0
    }

    pub fn equation(&self) -> LinearEquation {
        LinearEquation::triple(self.p, self.q, self.r).expect("positive coefficients")
    }

    /// Every ordered canonical triple with `p <= p_max`, in `(p, q, r)` order.
    pub fn enumerate(p_max: i64) -> Vec<Self> {
        let mut out = Vec::new();
        for p in 1..=p_max {
            for q in 1..=p {
                for r in 1..=q {
                    if p.gcd(&q).gcd(&r) == 1 {
                        out.push(Self::ordered(p, q, r).expect("valid"));
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for CanonicalTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.p, self.q, self.r)
    }
}

/// Groups the coefficients into `P1, P2, P3` (0-based indices) and returns the
/// canonical form of `p'x + q'y = r'z` with `p' = sum P1`, `q' = sum P2`,
/// `r' = -sum P3`.
pub fn partition_to_triple(
    l: &LinearEquation,
    p1: &[usize],
    p2: &[usize],
    p3: &[usize],
) -> Result<CanonicalTriple> {
    if !l.is_homogeneous() {
        return Err(Error::Inhomogeneous(l.rhs()));
    }
    let k = l.arity();
    let mut seen = vec![false; k];
    for (name, part) in [("P1", p1), ("P2", p2), ("P3", p3)] {
        if part.is_empty() {
            return Err(Error::Partition(format!("{name} is empty")));
        }
        for &i in part {
            if i >= k {
                return Err(Error::IndexOutOfRange { index: i, len: k });
            }
            if std::mem::replace(&mut seen[i], true) {
                return Err(Error::Partition(format!("index {i} used twice")));
            }
        }
    }
    if let Some(i) = seen.iter().position(|&s| !s) {
        return Err(Error::Partition(format!("index {i} not covered")));
    }
    let sum = |part: &[usize]| -> Result<i64> {
        part.iter().try_fold(0i64, |acc, &i| {
            acc.checked_add(l.coeffs()[i]).ok_or(Error::Overflow)
        })
    };
    let (pp, qq, rr) = (sum(p1)?, sum(p2)?, -sum(p3)?);
    if pp < qq {
        return Err(Error::Partition(format!("p' = {pp} < q' = {qq}")));
    }
    if qq < rr {
        return Err(Error::Partition(format!("q' = {qq} < r' = {rr}")));
    }
    if rr < 1 {
        return Err(Error::Partition(format!("r' = {rr} < 1")));
    }
    CanonicalTriple::ordered(pp, qq, rr)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triple_of(c: &[i64]) -> CanonicalTriple {
        CanonicalTriple::from_equation(&LinearEquation::homogeneous(c).unwrap()).unwrap()
    }

    #[test]
    fn canonical_forms() {
        let t = triple_of(&[1, 1, -1]);
        assert_eq!((t.p(), t.q(), t.r(), t.t(), t.r1(), t.r2()), (1, 1, 1, 1, 1, 1));

        let t = triple_of(&[42, 63, -41]);
        assert_eq!(63i64.gcd(&42).gcd(&41), 1);
        assert_eq!((t.p(), t.q(), t.r(), t.t(), t.r1(), t.r2()), (63, 42, 41, 21, 3, 2));
        assert!(t.is_ordered());

        let t = triple_of(&[2, 2, -4]);
        assert_eq!((t.p(), t.q(), t.r(), t.t()), (1, 1, 2, 1));
        assert!(!t.is_ordered());

        // two negatives: the whole equation is negated first
        let t = triple_of(&[-3, -2, 2]);
        assert_eq!((t.p(), t.q(), t.r()), (3, 2, 2));
    }

    #[test]
    fn canonical_errors() {
        let l = LinearEquation::homogeneous(&[1, 1, 1]).unwrap();
        assert_eq!(CanonicalTriple::from_equation(&l), Err(Error::SameSign));
        let l = LinearEquation::homogeneous(&[1, 1, -1, -1]).unwrap();
        assert!(matches!(
            CanonicalTriple::from_equation(&l),
            Err(Error::WrongArity { .. })
        ));
        let l = LinearEquation::new(vec![1, 1, -1], 2).unwrap();
        assert_eq!(CanonicalTriple::from_equation(&l), Err(Error::Inhomogeneous(2)));
    }

    #[test]
    fn partitions() {
        let l = LinearEquation::homogeneous(&[2, 2, -1]).unwrap();
        let t = partition_to_triple(&l, &[0], &[1], &[2]).unwrap();
        assert_eq!((t.p(), t.q(), t.r()), (2, 2, 1));

        let l = LinearEquation::homogeneous(&[1, 1, 1, 1, -2]).unwrap();
        assert!(matches!(
            partition_to_triple(&l, &[0, 1, 2], &[3], &[4]),
            Err(Error::Partition(_))
        ));

        let l = LinearEquation::homogeneous(&[3, 1, -2]).unwrap();
        assert!(partition_to_triple(&l, &[0], &[1], &[2]).is_err());

        let l = LinearEquation::homogeneous(&[2, 2, 2, -2]).unwrap();
        let t = partition_to_triple(&l, &[0, 1], &[2], &[3]).unwrap();
        assert_eq!((t.p(), t.q(), t.r(), t.t()), (2, 1, 1, 1));
    }

    #[test]
    fn partition_errors() {
        let l = LinearEquation::homogeneous(&[2, 2, -1]).unwrap();
        assert!(partition_to_triple(&l, &[], &[1], &[2]).is_err());
        assert!(partition_to_triple(&l, &[0], &[0], &[2]).is_err());
        assert!(partition_to_triple(&l, &[0], &[1], &[5]).is_err());
        let l = LinearEquation::homogeneous(&[2, 2, -1, 1]).unwrap();
        assert!(partition_to_triple(&l, &[0], &[1], &[2]).is_err());
    }
}
