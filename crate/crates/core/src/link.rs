//! The graph `G_M`, link hypergraphs and the matchings built inside them.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use serde::Serialize;

use crate::arith::{ceil_div, floor_div, mul};
use crate::bounds::{fmax_lower_exponent, matching_size_formula};
use crate::equation::{CanonicalTriple, LinearEquation};
use crate::error::{Error, Result};
use crate::mis;
use crate::set::IntegerSet;
use crate::solutions::for_each_solution_in;

/// Vertices, distinct edges (size 1 = loop) and one witnessing tuple per edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkHypergraph {
    vertices: IntegerSet,
    edges: Vec<IntegerSet>,
    provenance: Vec<Vec<u32>>,
}

pub enum MisMode {
    List,
    Count,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MisOutput {
    List(Vec<IntegerSet>),
    Count(BigUint),
}

impl LinkHypergraph {
    fn from_map(vertices: IntegerSet, map: BTreeMap<IntegerSet, Vec<u32>>) -> Self {
        let (edges, provenance) = map.into_iter().unzip();
        Self {
            vertices,
            edges,
            provenance,
        }
    }

    pub fn vertices(&self) -> &IntegerSet {
        &self.vertices
    }

    /// Edges in lexicographic order.
    pub fn edges(&self) -> &[IntegerSet] {
        &self.edges
    }

    /// Witnessing solution tuple of each edge, aligned with [`Self::edges`].
    pub fn provenance(&self) -> &[Vec<u32>] {
        &self.provenance
    }

    pub fn loops(&self) -> Vec<u32> {
        self.edges
            .iter()
            .filter(|e| e.len() == 1)
            .filter_map(|e| e.largest())
            .collect()
    }

    pub fn is_graph(&self) -> bool {
        self.edges.iter().all(|e| e.len() <= 2)
    }

    /// Edges as `(x, y)` with `x <= y`; a loop is `(x, x)`.
    pub fn pairs(&self) -> Result<Vec<(u32, u32)>> {
        self.edges
            .iter()
            .map(|e| match e.members()[..] {
                [x] => Ok((x, x)),
                [x, y] => Ok((x, y)),
                _ => Err(Error::NotAGraph(e.len())),
            })
            .collect()
    }

    /// The sub-hypergraph induced on `keep ∩ vertices`.
    pub fn induced(&self, keep: &IntegerSet) -> LinkHypergraph {
        let vertices = self.vertices.intersection(keep);
        let map = self
            .edges
            .iter()
            .zip(&self.provenance)
            .filter(|(e, _)| e.is_subset(&vertices))
            .map(|(e, w)| (e.clone(), w.clone()))
            .collect();
        Self::from_map(vertices, map)
    }

    pub fn is_independent(&self, s: &IntegerSet) -> bool {
        s.is_subset(&self.vertices) && mis::is_independent(s, &self.edges)
    }

    pub fn is_maximal_independent(&self, s: &IntegerSet) -> bool {
        mis::is_maximal_independent(&self.vertices, &self.edges, s)
    }

    pub fn mis_enumerate(&self, mode: MisMode) -> Result<MisOutput> {
        Ok(match mode {
            MisMode::List => MisOutput::List(self.mis_list()?),
            MisMode::Count => MisOutput::Count(self.mis_count()?),
        })
    }

    pub fn mis_list(&self) -> Result<Vec<IntegerSet>> {
        mis::mis_list(&self.vertices, &self.edges)
    }

    pub fn mis_count(&self) -> Result<BigUint> {
        mis::mis_count(&self.vertices, &self.edges)
    }
}

/// `G_M`: vertices `[⌈rM/q⌉ - 1]`, an edge `{x, y}` whenever `px + qy = rM`.
pub fn graph_gm(t: &CanonicalTriple, m: i64) -> Result<LinkHypergraph> {
    t.require_ordered()?;
    if m < 1 || m % t.t() != 0 {
        return Err(Error::NotDivisible { m, t: t.t() });
    }
    let (p, q) = (t.p() as i128, t.q() as i128);
    let rm = mul(t.r() as i128, m as i128)?;
    let top = ceil_div(rm, q) - 1;
    let top_u = u32::try_from(top.max(0)).map_err(|_| Error::Overflow)?;
    let mut map = BTreeMap::new();
    for x in 1..=top {
        let rest = rm - p * x;
        if rest <= 0 {
            break;
        }
        if rest % q == 0 && rest / q <= top {
            let y = rest / q;
            let e = IntegerSet::from_members(top_u, [x as u32, y as u32]);
            map.entry(e).or_insert_with(|| vec![x as u32, y as u32, m as u32]);
        }
    }
    Ok(LinkHypergraph::from_map(IntegerSet::full(top_u), map))
}

fn link_impl(l: &LinearEquation, s: &IntegerSet, b: &IntegerSet, need_s: bool) -> Result<LinkHypergraph> {
    if !s.is_disjoint(b) {
        return Err(Error::NotDisjoint);
    }
    let n = s.n().max(b.n());
    let values = s.union(b).with_universe(n).members();
    let mut map: BTreeMap<IntegerSet, Vec<u32>> = BTreeMap::new();
    for_each_solution_in(l, &values, |x| {
        if need_s && !x.iter().any(|&v| s.contains(v)) {
            return;
        }
        let e = IntegerSet::from_members(n, x.iter().copied().filter(|&v| b.contains(v)));
        if e.is_empty() {
            return;
        }
        match map.get_mut(&e) {
            Some(w) if *w <= x.to_vec() => {}
            Some(w) => *w = x.to_vec(),
            None => {
                map.insert(e, x.to_vec());
            }
        }
    });
    Ok(LinkHypergraph::from_map(b.with_universe(n), map))
}

/// `L_S[B]`: an edge `X ∩ B` for every non-trivial solution with value set
/// `X ⊆ S ∪ B` meeting `B`, including solutions that lie inside `B`.
pub fn link_hypergraph(l: &LinearEquation, s: &IntegerSet, b: &IntegerSet) -> Result<LinkHypergraph> {
    link_impl(l, s, b, false)
}

/// Like [`link_hypergraph`] but only from solutions that use an element of
/// `S`. The two agree whenever `B` is L-free.
pub fn link_graph(l: &LinearEquation, s: &IntegerSet, b: &IntegerSet) -> Result<LinkHypergraph> {
    link_impl(l, s, b, true)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Matching {
    /// `(x, y)` with `x <= y`, sorted.
    pub pairs: Vec<(u32, u32)>,
    pub loop_count: usize,
}

impl Matching {
    fn new(mut pairs: Vec<(u32, u32)>) -> Self {
        pairs.iter_mut().for_each(|(x, y)| {
            if x > y {
                std::mem::swap(x, y)
            }
        });
        pairs.sort_unstable();
        let loop_count = pairs.iter().filter(|(x, y)| x == y).count();
        Self { pairs, loop_count }
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn is_vertex_disjoint(&self) -> bool {
        let mut seen = std::collections::BTreeSet::new();
        self.pairs.iter().all(|&(x, y)| {
            let fresh = seen.insert(x);
            fresh && (x == y || seen.insert(y))
        })
    }

    pub fn vertices(&self) -> Vec<u32> {
        let mut v: Vec<u32> = self.pairs.iter().flat_map(|&(x, y)| [x, y]).collect();
        v.sort_unstable();
        v.dedup();
        v
    }
}

/// The explicit matching of `G_M`: a first run of edges `{x + a r2, y - a r1}`
/// below `rM/(p+q)`, then blocks of `r1 r2` consecutive edges from which the
/// edges hitting the forbidden residues are dropped.
pub fn gm1_matching(t: &CanonicalTriple, m: i64) -> Result<Matching> {
    let expected = matching_size_formula(t, m)?;
    let (p, q) = (t.p() as i128, t.q() as i128);
    let (r1, r2) = (t.r1() as i128, t.r2() as i128);
    let rm = mul(t.r() as i128, m as i128)?;
    // x in [1, r2] with q | rM - xp
    let Some(x0) = (1..=r2).find(|&x| (rm - x * p).rem_euclid(q) == 0) else {
        return Err(Error::Domain(format!("no base edge for M = {m}")));
    };
    let y0 = (rm - x0 * p) / q;
    let edge = |a: i128| (x0 + a * r2, y0 - a * r1);

    let mut pairs = Vec::new();
    let first = floor_div(rm, r2 * (p + q));
    for a in 0..first {
        pairs.push(edge(a));
    }
    let blocks = crate::bounds::block_count(t, m)?;
    if blocks > 0 {
        // first index past rM/(p+q)
        let mut a = 0i128;
        while (x0 + a * r2) * (p + q) <= rm {
            a += 1;
        }
        for _ in 0..blocks {
            for _ in 0..r1 * r2 {
                let (x, y) = edge(a);
                if y >= 1 && x.rem_euclid(r1) != y0.rem_euclid(r1) && y.rem_euclid(r2) != x0.rem_euclid(r2) {
                    pairs.push((x, y));
                }
                a += 1;
            }
        }
    }
    let pairs: Vec<(u32, u32)> = pairs
        .into_iter()
        .map(|(x, y)| (x as u32, y as u32))
        .collect();
    let matching = Matching::new(pairs);
    if matching.len() as i64 != expected || !matching.is_vertex_disjoint() || matching.loop_count > 1 {
        return Err(Error::Domain(format!(
            "matching construction for {t}, M = {m} gave {} pairs (formula {expected}), disjoint = {}, loops = {}",
            matching.len(),
            matching.is_vertex_disjoint(),
            matching.loop_count
        )));
    }
    Ok(matching)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducedInstance {
    pub m: u32,
    pub s: IntegerSet,
    pub b: IntegerSet,
    pub matching: Matching,
    pub mis_count: BigUint,
}

/// For `qx + qy = rz`: `S = {M}` with `M` the largest element of `[n]` with
/// `rM/q² ∈ [n]`, `B` the non-multiples of `q`, and the matching
/// `{i, rM/q - i}` (loop dropped), checked to be induced in `L_S[B]`.
pub fn induced_matching_instance(q: i64, r: i64, n: u32) -> Result<InducedInstance> {
    fmax_lower_exponent(q, r, n as i64)?;
    let (q, r) = (q as i128, r as i128);
    let Some(m) = (1..=n as i128)
        .rev()
        .find(|&z| (r * z) % (q * q) == 0 && (1..=n as i128).contains(&(r * z / (q * q))))
    else {
        return Err(Error::Hypothesis(format!("no M in [{n}] with rM/q² in [{n}]")));
    };
    let half = r * m / q;
    let b = IntegerSet::from_predicate(n, |z| z as i128 % q != 0);
    let s = IntegerSet::from_members(n, [m as u32]);
    let mut pairs = Vec::new();
    for i in b.iter().map(|i| i as i128) {
        if 2 * i >= half {
            break;
        }
        let j = half - i;
        debug_assert!(j % q != 0);
        pairs.push((i as u32, j as u32));
    }
    let matching = Matching::new(pairs);
    let l = LinearEquation::triple(q as i64, q as i64, r as i64)?;
    let link = link_hypergraph(&l, &s, &b)?;
    let span = IntegerSet::from_members(n, matching.vertices());
    let induced = link.induced(&span);
    let expected: Vec<IntegerSet> = matching
        .pairs
        .iter()
        .map(|&(x, y)| IntegerSet::from_members(n, [x, y]))
        .collect();
    if induced.edges() != expected.as_slice() {
        return Err(Error::Domain(format!(
            "matching is not induced: span edges {:?}",
            induced.edges()
        )));
    }
    let mis_count = induced.mis_count()?;
    if mis_count != BigUint::from(1u8) << matching.len() {
        return Err(Error::Domain(format!("span has {mis_count} maximal independent sets")));
    }
    Ok(InducedInstance {
        m: m as u32,
        s,
        b,
        matching,
        mis_count,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equation::parse_equation;

    fn tr(p: i64, q: i64, r: i64) -> CanonicalTriple {
        CanonicalTriple::new(p, q, r).unwrap()
    }

    fn pairs(h: &LinkHypergraph) -> Vec<(u32, u32)> {
        h.pairs().unwrap()
    }

    #[test]
    fn gm_examples() {
        let g = graph_gm(&tr(1, 1, 1), 10).unwrap();
        assert_eq!(g.vertices().len(), 9);
        assert_eq!(pairs(&g), vec![(1, 9), (2, 8), (3, 7), (4, 6), (5, 5)]);
        let g = graph_gm(&tr(2, 1, 1), 7).unwrap();
        assert_eq!(pairs(&g), vec![(1, 3), (1, 5), (2, 3)]);
        let g = graph_gm(&tr(63, 42, 41), 21).unwrap();
        assert_eq!(g.vertices().len(), 20);
        assert_eq!(
            pairs(&g),
            vec![(1, 19), (1, 13), (3, 16), (4, 11), (5, 13), (7, 10), (7, 9)]
                .into_iter()
                .collect::<std::collections::BTreeSet<_>>()
                .into_iter()
                .collect::<Vec<_>>()
        );
        assert!(graph_gm(&tr(2, 2, 1), 3).is_err());
    }

    #[test]
    fn gm1_examples() {
        let m = gm1_matching(&tr(1, 1, 1), 10).unwrap();
        assert_eq!(m.pairs, vec![(1, 9), (2, 8), (3, 7), (4, 6), (5, 5)]);
        assert_eq!(m.loop_count, 1);
        let m = gm1_matching(&tr(1, 1, 1), 2).unwrap();
        assert_eq!(m.pairs, vec![(1, 1)]);
        let t = tr(3, 2, 1);
        let m = gm1_matching(&t, 30).unwrap();
        assert_eq!(m.len(), 3);
        assert!(m.pairs.iter().all(|&(x, y)| 3 * x + 2 * y == 30 || 3 * y + 2 * x == 30));
    }

    #[test]
    fn link_examples() {
        let l = parse_equation("x+y=z").unwrap();
        let s = IntegerSet::from_members(10, [10]);
        let b = IntegerSet::interval(10, 1, 9);
        let g = link_graph(&l, &s, &b).unwrap();
        let gm = graph_gm(&tr(1, 1, 1), 10).unwrap();
        assert_eq!(pairs(&g), pairs(&gm));
        // B = [9] is not sum-free, so the full link hypergraph has more edges
        let h = link_hypergraph(&l, &s, &b).unwrap();
        assert!(h.edges().len() > g.edges().len());

        let s = IntegerSet::from_members(5, [3, 5]);
        let b = IntegerSet::from_members(5, [1, 2]);
        let h = link_hypergraph(&l, &s, &b).unwrap();
        let e: Vec<Vec<u32>> = h.edges().iter().map(|e| e.members()).collect();
        assert_eq!(e, vec![vec![1, 2], vec![2]]);
        assert_eq!(h.loops(), vec![2]);

        assert_eq!(
            link_hypergraph(&l, &s, &IntegerSet::from_members(5, [3])),
            Err(Error::NotDisjoint)
        );
    }

    #[test]
    fn empty_s_gives_solution_supports() {
        let l = parse_equation("x+y=z").unwrap();
        let b = IntegerSet::full(6);
        let h = link_hypergraph(&l, &IntegerSet::empty(6), &b).unwrap();
        assert_eq!(h.edges(), crate::solutions::solution_hypergraph(&l, 6).edges());
    }

    #[test]
    fn mis_of_gm10() {
        let g = graph_gm(&tr(1, 1, 1), 10).unwrap();
        assert_eq!(g.mis_count().unwrap(), BigUint::from(16u32));
    }

    #[test]
    fn induced_examples() {
        let inst = induced_matching_instance(2, 1, 20).unwrap();
        assert_eq!(inst.m, 20);
        assert_eq!(inst.matching.pairs, vec![(1, 9), (3, 7)]);
        assert_eq!(inst.mis_count, BigUint::from(4u32));
        let inst = induced_matching_instance(3, 2, 30).unwrap();
        assert_eq!(inst.m, 27);
        assert_eq!(
            inst.matching.pairs,
            vec![(1, 17), (2, 16), (4, 14), (5, 13), (7, 11), (8, 10)]
        );
        assert!(induced_matching_instance(2, 1, 3).is_err());
    }
}
