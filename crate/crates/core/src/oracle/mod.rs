//! Exhaustive ground truth at small `n`.

mod verify;

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigUint;

use crate::equation::LinearEquation;
use crate::error::{Error, Result};
use crate::link::LinkHypergraph;
use crate::mis;
use crate::set::IntegerSet;
use crate::solutions::SolutionHypergraph;

pub use verify::{verify_suite, CellOutcome, CellStatus, Totals, VerifyReport, SUITES};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CapKind {
    Mu,
    Free,
    Maximal,
}

/// Largest `n` the oracles accept; `LFREE_CAP_N` overrides every default.
pub fn cap(kind: CapKind) -> u32 {
    let default = match kind {
        CapKind::Mu => 40,
        CapKind::Free => 34,
        CapKind::Maximal => 30,
    };
    std::env::var("LFREE_CAP_N")
        .ok()
        .and_then(|v| v.trim().parse::<u32>().ok())
        .unwrap_or(default)
        .min(127)
}

fn check_cap(n: u32, kind: CapKind) -> Result<()> {
    let cap = cap(kind);
    if n > cap {
        return Err(Error::CapExceeded { n, cap });
    }
    Ok(())
}

/// Minimal edges of the solution hypergraph as bitmasks, plus the loop mask.
struct Masks {
    n: u32,
    edges: Vec<u128>,
    incident: Vec<Vec<u128>>,
    loops: u128,
    max_edge: usize,
}

impl Masks {
    fn new(l: &LinearEquation, n: u32) -> Self {
        let h = SolutionHypergraph::build(l, n);
        let lists: Vec<Vec<u32>> = h.edges().iter().map(|e| e.members()).collect();
        let minimal = mis::minimal_edges(&lists);
        let mut loops = 0u128;
        let mut edges = Vec::new();
        for e in &minimal {
            let m = e.iter().fold(0u128, |m, &v| m | 1 << v);
            if e.len() == 1 {
                loops |= m;
            } else {
                edges.push(m);
            }
        }
        let mut incident = vec![Vec::new(); n as usize + 1];
        for &e in &edges {
            for v in bits(e) {
                incident[v as usize].push(e);
            }
        }
        let max_edge = edges.iter().map(|e| e.count_ones() as usize).max().unwrap_or(0);
        Self {
            n,
            edges,
            incident,
            loops,
            max_edge,
        }
    }

    fn universe(&self) -> u128 {
        ((1u128 << self.n) - 1) << 1
    }

    /// Adds `v` to `inc`; drops candidates that would now complete an edge.
    fn include(&self, v: u32, inc: u128, cand: u128) -> (u128, u128) {
        let inc2 = inc | 1 << v;
        let mut cand2 = cand & !(1 << v);
        for &e in &self.incident[v as usize] {
            let r = e & !inc2;
            if r.count_ones() == 1 {
                cand2 &= !r;
            }
        }
        (inc2, cand2)
    }

    /// Greedy count of disjoint residual edges inside `cand`, smallest first.
    fn packing(&self, inc: u128, cand: u128) -> u32 {
        let mut used = 0u128;
        let mut count = 0;
        for size in 2..=self.max_edge as u32 {
            for &e in &self.edges {
                let r = e & !inc;
                if r.count_ones() == size && r & !cand == 0 && r & used == 0 {
                    used |= r;
                    count += 1;
                }
            }
        }
        count
    }
}

fn bits(m: u128) -> impl Iterator<Item = u32> {
    let mut m = m;
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let v = m.trailing_zeros();
            m &= m - 1;
            Some(v)
        }
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BruteMu {
    pub value: u32,
    /// Lexicographically first maximum L-free sets, up to the requested limit.
    pub witnesses: Vec<IntegerSet>,
}

/// Largest L-free subset of `[n]` by branch and bound.
pub fn brute_mu(l: &LinearEquation, n: u32, witness_limit: usize) -> Result<BruteMu> {
    check_cap(n, CapKind::Mu)?;
    let masks = Masks::new(l, n);
    let cand = masks.universe() & !masks.loops;

    // greedy descending start
    let (mut inc, mut c) = (0u128, cand);
    while c != 0 {
        let v = 127 - c.leading_zeros();
        (inc, c) = masks.include(v, inc, c);
    }
    let mut best = inc.count_ones();

    fn descend(m: &Masks, inc: u128, cand: u128, best: &mut u32) {
        if cand == 0 {
            *best = (*best).max(inc.count_ones());
            return;
        }
        let ub = inc.count_ones() + cand.count_ones() - m.packing(inc, cand);
        if ub <= *best {
            return;
        }
        let v = 127 - cand.leading_zeros();
        let (i2, c2) = m.include(v, inc, cand);
        descend(m, i2, c2, best);
        descend(m, inc, cand & !(1 << v), best);
    }
    descend(&masks, 0, cand, &mut best);

    let mut witnesses = Vec::new();
    if witness_limit > 0 {
        fn ascend(m: &Masks, inc: u128, cand: u128, target: u32, limit: usize, out: &mut Vec<u128>) {
            if out.len() >= limit {
                return;
            }
            if cand == 0 {
                if inc.count_ones() == target {
                    out.push(inc);
                }
                return;
            }
            let ub = inc.count_ones() + cand.count_ones() - m.packing(inc, cand);
            if ub < target {
                return;
            }
            let v = cand.trailing_zeros();
            let (i2, c2) = m.include(v, inc, cand);
            ascend(m, i2, c2, target, limit, out);
            ascend(m, inc, cand & !(1 << v), target, limit, out);
        }
        let mut found = Vec::new();
        ascend(&masks, 0, cand, best, witness_limit, &mut found);
        witnesses = found.into_iter().map(|m| IntegerSet::from_mask(n, m)).collect();
    }
    Ok(BruteMu {
        value: best,
        witnesses,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CountKind {
    Free,
    Maximal,
}

/// Number of L-free (or maximal L-free) subsets of `[n]`.
pub fn brute_counts(l: &LinearEquation, n: u32, what: CountKind) -> Result<BigUint> {
    match what {
        CountKind::Free => {
            check_cap(n, CapKind::Free)?;
            let masks = Masks::new(l, n);
            Ok(BigUint::from(count_free(&masks, 0, masks.universe() & !masks.loops)))
        }
        CountKind::Maximal => {
            check_cap(n, CapKind::Maximal)?;
            let h = SolutionHypergraph::build(l, n);
            mis::mis_count(&IntegerSet::full(n), h.edges())
        }
    }
}

fn count_free(m: &Masks, inc: u128, cand: u128) -> u128 {
    // candidates on no live residual edge are free choices
    let mut live = 0u128;
    for &e in &m.edges {
        let r = e & !inc;
        if r & !cand == 0 {
            live |= r;
        }
    }
    let free = (cand & !live).count_ones();
    let cand = cand & live;
    let factor = 1u128 << free;
    if cand == 0 {
        return factor;
    }
    let v = 127 - cand.leading_zeros();
    let (i2, c2) = m.include(v, inc, cand);
    factor * (count_free(m, inc, cand & !(1 << v)) + count_free(m, i2, c2))
}

/// Calls `f` on every L-free subset of `[n]` given as a bitmask.
pub fn for_each_free_set(l: &LinearEquation, n: u32, mut f: impl FnMut(u128)) -> Result<()> {
    check_cap(n, CapKind::Free)?;
    let masks = Masks::new(l, n);
    fn rec(m: &Masks, inc: u128, cand: u128, f: &mut dyn FnMut(u128)) {
        if cand == 0 {
            f(inc);
            return;
        }
        let v = 127 - cand.leading_zeros();
        let (i2, c2) = m.include(v, inc, cand);
        rec(m, inc, cand & !(1 << v), f);
        rec(m, i2, c2, f);
    }
    rec(&masks, 0, masks.universe() & !masks.loops, &mut f);
    Ok(())
}

/// Elements of `[n]` lying in no non-trivial solution inside `[n]`.
pub fn brute_mu_star(l: &LinearEquation, n: u32) -> Result<u32> {
    check_cap(n, CapKind::Mu)?;
    let h = SolutionHypergraph::build(l, n);
    Ok(n - h.covered().len() as u32)
}

/// Maximum number of vertex-disjoint edges of a graph; a loop occupies its
/// vertex.
pub fn brute_max_matching(h: &LinkHypergraph) -> Result<usize> {
    let pairs = h.pairs()?;
    Ok(max_matching(&pairs))
}

type Adjacency = BTreeMap<u64, BTreeSet<u64>>;

pub(crate) fn max_matching(pairs: &[(u32, u32)]) -> usize {
    let mut adj: Adjacency = BTreeMap::new();
    let mut link = |a: u64, b: u64| {
        adj.entry(a).or_default().insert(b);
        adj.entry(b).or_default().insert(a);
    };
    for &(x, y) in pairs {
        if x == y {
            // a loop becomes an edge to a private pendant vertex
            link(x as u64, (1u64 << 32) + x as u64);
        } else {
            link(x as u64, y as u64);
        }
    }
    split_components(adj).into_iter().map(solve_component).sum()
}

fn split_components(mut adj: Adjacency) -> Vec<Adjacency> {
    let mut out = Vec::new();
    while let Some(&start) = adj.keys().next() {
        let mut comp = Adjacency::new();
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            if let Some(nb) = adj.remove(&v) {
                stack.extend(nb.iter().copied());
                comp.insert(v, nb);
            }
        }
        out.push(comp);
    }
    out
}

fn remove_vertex(adj: &mut Adjacency, v: u64) {
    if let Some(nb) = adj.remove(&v) {
        for u in nb {
            if let Some(s) = adj.get_mut(&u) {
                s.remove(&v);
            }
        }
    }
}

fn solve_component(mut adj: Adjacency) -> usize {
    let mut matched = 0;
    // a leaf can always be matched to its neighbour
    loop {
        adj.retain(|_, nb| !nb.is_empty());
        let Some((&leaf, nb)) = adj.iter().find(|(_, nb)| nb.len() == 1) else {
            break;
        };
        let u = *nb.iter().next().expect("degree one");
        remove_vertex(&mut adj, leaf);
        remove_vertex(&mut adj, u);
        matched += 1;
    }
    if adj.is_empty() {
        return matched;
    }
    let (&v, nb) = adj
        .iter()
        .min_by_key(|(_, nb)| nb.len())
        .expect("non-empty");
    let nb: Vec<u64> = nb.iter().copied().collect();
    let mut without = adj.clone();
    remove_vertex(&mut without, v);
    let mut best = split_components(without).into_iter().map(solve_component).sum::<usize>();
    for u in nb {
        let mut g = adj.clone();
        remove_vertex(&mut g, v);
        remove_vertex(&mut g, u);
        let got = 1 + split_components(g).into_iter().map(solve_component).sum::<usize>();
        best = best.max(got);
    }
    matched + best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equation::parse_equation;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Brute maximum matching by trying every edge subset (tiny graphs only).
    fn max_matching_exhaustive(pairs: &[(u32, u32)]) -> usize {
        let mut best = 0;
        for mask in 0u32..1 << pairs.len() {
            let mut used = BTreeSet::new();
            let mut ok = true;
            for (i, &(x, y)) in pairs.iter().enumerate() {
                if mask >> i & 1 == 1 && (!used.insert(x) || (x != y && !used.insert(y))) {
                    ok = false;
                    break;
                }
            }
            if ok {
                best = best.max(mask.count_ones() as usize);
            }
        }
        best
    }

    fn eq(s: &str) -> LinearEquation {
        parse_equation(s).unwrap()
    }

    fn subsets_free(l: &LinearEquation, n: u32) -> (u32, usize, usize) {
        let h = SolutionHypergraph::build(l, n);
        let mut best = 0;
        let mut free = 0;
        let mut maximal = 0;
        for mask in 0u32..1 << n {
            let s = IntegerSet::from_members(n, (1..=n).filter(|&v| mask >> (v - 1) & 1 == 1));
            if h.is_independent(&s) {
                free += 1;
                best = best.max(s.len() as u32);
                if mis::is_maximal_independent(&IntegerSet::full(n), h.edges(), &s) {
                    maximal += 1;
                }
            }
        }
        (best, free, maximal)
    }

    #[test]
    fn examples() {
        assert_eq!(brute_mu(&eq("x+y=z"), 10, 0).unwrap().value, 5);
        assert_eq!(brute_mu(&eq("2x+y=z"), 12, 0).unwrap().value, 8);
        let l = eq("x+y=z");
        assert_eq!(brute_counts(&l, 3, CountKind::Free).unwrap(), BigUint::from(6u32));
        assert_eq!(brute_counts(&l, 3, CountKind::Maximal).unwrap(), BigUint::from(2u32));
        assert_eq!(brute_mu_star(&l, 1).unwrap(), 1);
        assert_eq!(brute_mu_star(&l, 10).unwrap(), 0);
        assert_eq!(brute_mu_star(&eq("2x+2y=z"), 20).unwrap(), 5);
        let none = eq("63x+42y=41z");
        assert_eq!(brute_counts(&none, 5, CountKind::Free).unwrap(), BigUint::from(32u32));
        assert_eq!(brute_counts(&none, 5, CountKind::Maximal).unwrap(), BigUint::from(1u32));
    }

    #[test]
    fn witnesses_are_lexicographically_first() {
        let r = brute_mu(&eq("x+y=z"), 6, 10).unwrap();
        assert_eq!(r.value, 3);
        let w: Vec<Vec<u32>> = r.witnesses.iter().map(|s| s.members()).collect();
        assert_eq!(w, vec![vec![1, 3, 5], vec![1, 4, 6], vec![2, 5, 6], vec![3, 4, 5], vec![4, 5, 6]]);
        assert_eq!(brute_mu(&eq("x+y=z"), 6, 2).unwrap().witnesses.len(), 2);
    }

    #[test]
    fn agrees_with_subset_scan() {
        for s in ["x+y=z", "x+y=2z", "3x+2y=2z", "2x+y=z", "x1+x2=x3+x4", "x+y=z+1", "x+2y=3z"] {
            let l = eq(s);
            for n in 1..=11 {
                let (mu, free, maximal) = subsets_free(&l, n);
                assert_eq!(brute_mu(&l, n, 0).unwrap().value, mu, "{s} n={n}");
                assert_eq!(brute_counts(&l, n, CountKind::Free).unwrap(), BigUint::from(free), "{s} n={n}");
                assert_eq!(
                    brute_counts(&l, n, CountKind::Maximal).unwrap(),
                    BigUint::from(maximal),
                    "{s} n={n}"
                );
                let mut seen = 0;
                for_each_free_set(&l, n, |_| seen += 1).unwrap();
                assert_eq!(seen, free);
            }
        }
    }

    #[test]
    fn caps() {
        assert!(matches!(
            brute_mu(&eq("x+y=z"), 41, 0),
            Err(Error::CapExceeded { n: 41, cap: 40 })
        ));
        assert!(brute_counts(&eq("x+y=z"), 31, CountKind::Maximal).is_err());
    }

    #[test]
    fn matchings() {
        assert_eq!(max_matching(&[]), 0);
        assert_eq!(max_matching(&[(1, 2), (2, 3), (1, 3)]), 1);
        assert_eq!(max_matching(&[(1, 9), (2, 8), (3, 7), (4, 6), (5, 5)]), 5);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..300 {
            let v = rng.gen_range(1..=7u32);
            let k = rng.gen_range(0..=10usize);
            let mut pairs: Vec<(u32, u32)> = (0..k)
                .map(|_| {
                    let (a, b) = (rng.gen_range(1..=v), rng.gen_range(1..=v));
                    (a.min(b), a.max(b))
                })
                .collect();
            pairs.sort_unstable();
            pairs.dedup();
            assert_eq!(max_matching(&pairs), max_matching_exhaustive(&pairs), "{pairs:?}");
        }
    }
}
