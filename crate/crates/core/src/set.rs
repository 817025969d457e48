use std::fmt;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize, Serializer};

/// A subset of `[n] = {1, ..., n}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntegerSet {
    n: u32,
    // bit v set iff v is a member; bit 0 unused
    bits: FixedBitSet,
}

impl IntegerSet {
    pub fn empty(n: u32) -> Self {
        Self {
            n,
            bits: FixedBitSet::with_capacity(n as usize + 1),
        }
    }

    /// `[lo, hi] ∩ [n]`; empty when `lo > hi`.
    pub fn interval(n: u32, lo: u32, hi: u32) -> Self {
        let mut s = Self::empty(n);
        let lo = lo.max(1);
        let hi = hi.min(n);
        if lo <= hi {
            s.bits.insert_range(lo as usize..hi as usize + 1);
        }
        s
    }

    pub fn full(n: u32) -> Self {
        Self::interval(n, 1, n)
    }

    /// Panics if a member lies outside `[1, n]`.
    pub fn from_members<I: IntoIterator<Item = u32>>(n: u32, members: I) -> Self {
        let mut s = Self::empty(n);
        for v in members {
            s.insert(v);
        }
        s
    }

    pub fn from_predicate(n: u32, mut keep: impl FnMut(u32) -> bool) -> Self {
        Self::from_members(n, (1..=n).filter(|&v| keep(v)))
    }

    /// Set from a bitmask where bit `v` stands for element `v`.
    pub fn from_mask(n: u32, mask: u128) -> Self {
        Self::from_members(n, (1..=n.min(127)).filter(|&v| mask >> v & 1 == 1))
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn insert(&mut self, v: u32) {
        assert!(
            (1..=self.n).contains(&v),
            "element {v} outside [1, {}]",
            self.n
        );
        self.bits.insert(v as usize);
    }

    pub fn remove(&mut self, v: u32) {
        if v <= self.n {
            self.bits.set(v as usize, false);
        }
    }

    pub fn contains(&self, v: u32) -> bool {
        v >= 1 && v <= self.n && self.bits.contains(v as usize)
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    /// Members in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.bits.ones().map(|v| v as u32)
    }

    pub fn members(&self) -> Vec<u32> {
        self.iter().collect()
    }

    pub fn largest(&self) -> Option<u32> {
        self.bits.maximum().map(|v| v as u32)
    }

    pub fn is_subset(&self, other: &IntegerSet) -> bool {
        self.iter().all(|v| other.contains(v))
    }

    pub fn is_disjoint(&self, other: &IntegerSet) -> bool {
        self.iter().all(|v| !other.contains(v))
    }

    /// Union; the universe is the larger of the two.
    pub fn union(&self, other: &IntegerSet) -> IntegerSet {
        let n = self.n.max(other.n);
        Self::from_members(n, self.iter().chain(other.iter()))
    }

    pub fn difference(&self, other: &IntegerSet) -> IntegerSet {
        Self::from_members(self.n, self.iter().filter(|&v| !other.contains(v)))
    }

    pub fn intersection(&self, other: &IntegerSet) -> IntegerSet {
        Self::from_members(self.n, self.iter().filter(|&v| other.contains(v)))
    }

    /// Same members in a different universe; panics if a member exceeds `n`.
    pub fn with_universe(&self, n: u32) -> IntegerSet {
        Self::from_members(n, self.iter())
    }

    /// Bitmask with bit `v` per member; `None` when a member exceeds 127.
    pub fn to_mask(&self) -> Option<u128> {
        let mut m = 0u128;
        for v in self.iter() {
            if v > 127 {
                return None;
            }
            m |= 1 << v;
        }
        Some(m)
    }
}

impl fmt::Debug for IntegerSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}⊆[{}]", self.n)
    }
}

impl PartialOrd for IntegerSet {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic order on the increasing member sequences.
impl Ord for IntegerSet {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.iter()
            .cmp(other.iter())
            .then_with(|| self.n.cmp(&other.n))
    }
}

impl Serialize for IntegerSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            n: u32,
            members: Vec<u32>,
        }
        Repr {
            n: self.n,
            members: self.members(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for IntegerSet {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            n: u32,
            members: Vec<u32>,
        }
        let r = Repr::deserialize(deserializer)?;
        if let Some(&bad) = r.members.iter().find(|&&v| v == 0 || v > r.n) {
            return Err(serde::de::Error::custom(format!(
                "member {bad} outside [1, {}]",
                r.n
            )));
        }
        Ok(IntegerSet::from_members(r.n, r.members))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_operations() {
        let s = IntegerSet::interval(10, 6, 10);
        assert_eq!(s.members(), vec![6, 7, 8, 9, 10]);
        assert_eq!(s.len(), 5);
        assert!(IntegerSet::interval(10, 11, 10).is_empty());
        let t = IntegerSet::from_members(10, [1, 6]);
        assert!(!t.is_subset(&s));
        assert_eq!(t.intersection(&s).members(), vec![6]);
        assert_eq!(t.difference(&s).members(), vec![1]);
        assert_eq!(t.union(&s).len(), 6);
        assert_eq!(s.largest(), Some(10));
        assert_eq!(IntegerSet::from_mask(10, t.to_mask().unwrap()), t);
    }

    #[test]
    fn lexicographic_order() {
        let a = IntegerSet::from_members(9, [1, 3, 7]);
        let b = IntegerSet::from_members(9, [1, 5]);
        assert!(a < b);
    }

    #[test]
    #[should_panic]
    fn rejects_out_of_range() {
        IntegerSet::from_members(3, [4]);
    }
}
