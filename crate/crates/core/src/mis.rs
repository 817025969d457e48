//! Maximal independent sets of hypergraphs on small vertex sets.
//!
//! Vertices map to local bit indices per connected component; a component
//! holds at most 128 vertices.

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::set::IntegerSet;

/// Keeps only edges with no proper sub-edge. Independence and maximality are
/// both unchanged by this.
pub(crate) fn minimal_edges(edges: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let mut sorted: Vec<Vec<u32>> = edges.to_vec();
    sorted.iter_mut().for_each(|e| {
        e.sort_unstable();
        e.dedup();
    });
    sorted.sort_by_key(|e| e.len());
    sorted.dedup();
    let mut kept: Vec<Vec<u32>> = Vec::new();
    for e in sorted {
        let dominated = kept
            .iter()
            .any(|k| k.iter().all(|v| e.binary_search(v).is_ok()));
        if !dominated {
            kept.push(e);
        }
    }
    kept
}

struct Component {
    /// Local index -> vertex label.
    labels: Vec<u32>,
    /// Edges as local bitmasks.
    edges: Vec<u128>,
}

/// Splits `vertices` into the vertices touched by no edge and the connected
/// components of the rest.
fn components(vertices: &[u32], edges: &[Vec<u32>]) -> Result<(Vec<u32>, Vec<Component>)> {
    let edges = minimal_edges(edges);
    let index = |v: u32| vertices.binary_search(&v).expect("edge vertex outside the vertex set");
    let mut parent: Vec<usize> = (0..vertices.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut touched = vec![false; vertices.len()];
    for e in &edges {
        let first = index(e[0]);
        touched[first] = true;
        for &v in &e[1..] {
            let i = index(v);
            touched[i] = true;
            let (a, b) = (find(&mut parent, first), find(&mut parent, i));
            parent[a] = b;
        }
    }
    let free: Vec<u32> = (0..vertices.len())
        .filter(|&i| !touched[i])
        .map(|i| vertices[i])
        .collect();
    let mut by_root: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for i in (0..vertices.len()).filter(|&i| touched[i]) {
        let root = find(&mut parent, i);
        by_root.entry(root).or_default().push(i);
    }
    let mut comps = Vec::new();
    let mut local = vec![usize::MAX; vertices.len()];
    for members in by_root.into_values() {
        if members.len() > 128 {
            return Err(Error::ComponentTooLarge(members.len()));
        }
        for (j, &i) in members.iter().enumerate() {
            local[i] = j;
        }
        comps.push(Component {
            labels: members.iter().map(|&i| vertices[i]).collect(),
            edges: Vec::new(),
        });
    }
    let comp_of = |i: usize, comps: &[Component]| {
        comps
            .iter()
            .position(|c| c.labels.binary_search(&vertices[i]).is_ok())
            .expect("touched vertex has a component")
    };
    for e in &edges {
        let c = comp_of(index(e[0]), &comps);
        let mask = e.iter().fold(0u128, |m, &v| m | 1u128 << local[index(v)]);
        comps[c].edges.push(mask);
    }
    Ok((free, comps))
}

/// Include/exclude search over ascending local indices. An excluded vertex
/// must keep a possible witness edge (all its other vertices not excluded);
/// at a leaf every witness is fully included, certifying maximality.
struct Search<'a> {
    n: usize,
    incident: Vec<Vec<u128>>,
    neighbours: Vec<u128>,
    on_leaf: &'a mut dyn FnMut(u128),
}

impl Search<'_> {
    fn new<'a>(c: &Component, on_leaf: &'a mut dyn FnMut(u128)) -> Search<'a> {
        let n = c.labels.len();
        let mut incident = vec![Vec::new(); n];
        let mut neighbours = vec![0u128; n];
        for &e in &c.edges {
            for v in 0..n {
                if e >> v & 1 == 1 {
                    incident[v].push(e);
                    neighbours[v] |= e;
                }
            }
        }
        Search {
            n,
            incident,
            neighbours,
            on_leaf,
        }
    }

    fn can_include(&self, v: usize, inc: u128) -> bool {
        let with = inc | 1 << v;
        self.incident[v].iter().all(|&e| e & !with != 0)
    }

    fn has_witness(&self, v: usize, exc: u128) -> bool {
        self.incident[v].iter().any(|&e| e & !(1u128 << v) & exc == 0)
    }

    fn run(&mut self, v: usize, inc: u128, exc: u128) {
        if v == self.n {
            (self.on_leaf)(inc);
            return;
        }
        if self.can_include(v, inc) {
            self.run(v + 1, inc | 1 << v, exc);
        }
        if !self.has_witness(v, exc) {
            return;
        }
        let exc2 = exc | 1 << v;
        // excluding v may kill the last witness of an earlier excluded vertex
        let affected = self.neighbours[v] & exc;
        let ok = (0..self.n)
            .filter(|&u| affected >> u & 1 == 1)
            .all(|u| self.has_witness(u, exc2));
        if ok {
            self.run(v + 1, inc, exc2);
        }
    }
}

fn component_sets(c: &Component) -> Vec<u128> {
    let mut out = Vec::new();
    let mut push = |m: u128| out.push(m);
    Search::new(c, &mut push).run(0, 0, 0);
    out
}

fn component_count(c: &Component) -> BigUint {
    let mut count = 0u64;
    let mut bump = |_| count += 1;
    Search::new(c, &mut bump).run(0, 0, 0);
    BigUint::from(count)
}

/// Number of maximal independent sets (with loops, a loop vertex is never in
/// an independent set).
pub fn mis_count(vertices: &IntegerSet, edges: &[IntegerSet]) -> Result<BigUint> {
    let (_, comps) = components(&vertices.members(), &edge_lists(edges))?;
    Ok(comps
        .iter()
        .map(component_count)
        .fold(BigUint::one(), |acc, c| acc * c))
}

/// All maximal independent sets, lexicographically sorted.
pub fn mis_list(vertices: &IntegerSet, edges: &[IntegerSet]) -> Result<Vec<IntegerSet>> {
    let n = vertices.n();
    let (free, comps) = components(&vertices.members(), &edge_lists(edges))?;
    let mut partial: Vec<Vec<u32>> = vec![free];
    for c in &comps {
        let sets = component_sets(c);
        let mut next = Vec::with_capacity(partial.len() * sets.len());
        for base in &partial {
            for &m in &sets {
                let mut s = base.clone();
                s.extend((0..c.labels.len()).filter(|&i| m >> i & 1 == 1).map(|i| c.labels[i]));
                next.push(s);
            }
        }
        partial = next;
    }
    let mut out: Vec<IntegerSet> = partial
        .into_iter()
        .map(|s| IntegerSet::from_members(n, s))
        .collect();
    out.sort();
    Ok(out)
}

fn edge_lists(edges: &[IntegerSet]) -> Vec<Vec<u32>> {
    edges.iter().filter(|e| !e.is_empty()).map(|e| e.members()).collect()
}

/// `true` iff `s` contains no edge.
pub fn is_independent(s: &IntegerSet, edges: &[IntegerSet]) -> bool {
    edges.iter().all(|e| !e.is_subset(s))
}

/// `true` iff `s ⊆ vertices` is independent and no vertex can be added.
pub fn is_maximal_independent(vertices: &IntegerSet, edges: &[IntegerSet], s: &IntegerSet) -> bool {
    if !s.is_subset(vertices) || !is_independent(s, edges) {
        return false;
    }
    vertices.iter().filter(|&v| !s.contains(v)).all(|v| {
        edges
            .iter()
            .any(|e| e.contains(v) && e.iter().all(|w| w == v || s.contains(w)))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(n: u32, m: &[u32]) -> IntegerSet {
        IntegerSet::from_members(n, m.iter().copied())
    }

    fn brute(vertices: &IntegerSet, edges: &[IntegerSet]) -> Vec<IntegerSet> {
        let vs = vertices.members();
        let mut out: Vec<IntegerSet> = (0u32..1 << vs.len())
            .map(|mask| {
                IntegerSet::from_members(
                    vertices.n(),
                    (0..vs.len()).filter(|&i| mask >> i & 1 == 1).map(|i| vs[i]),
                )
            })
            .filter(|s| is_maximal_independent(vertices, edges, s))
            .collect();
        out.sort();
        out
    }

    #[test]
    fn matching_with_loop() {
        let v = IntegerSet::full(9);
        let edges: Vec<IntegerSet> = [[1, 9], [2, 8], [3, 7], [4, 6]]
            .iter()
            .map(|e| set(9, e))
            .chain([set(9, &[5])])
            .collect();
        assert_eq!(mis_count(&v, &edges).unwrap(), BigUint::from(16u32));
        let list = mis_list(&v, &edges).unwrap();
        assert_eq!(list.len(), 16);
        assert!(list.iter().all(|s| !s.contains(5)));
        assert_eq!(list, brute(&v, &edges));
    }

    #[test]
    fn trivial_shapes() {
        let v = IntegerSet::full(5);
        assert_eq!(mis_list(&v, &[]).unwrap(), vec![v.clone()]);
        let tri = vec![set(5, &[1, 2, 3])];
        assert_eq!(mis_count(&v, &tri).unwrap(), BigUint::from(3u32));
        assert_eq!(mis_list(&v, &tri).unwrap(), brute(&v, &tri));
    }

    #[test]
    fn mixed_hypergraph_matches_brute_force() {
        let v = IntegerSet::full(8);
        let edges = vec![
            set(8, &[1, 2]),
            set(8, &[2, 3, 4]),
            set(8, &[4, 5]),
            set(8, &[1, 5, 6]),
            set(8, &[7]),
            set(8, &[1, 2, 7]),
        ];
        assert_eq!(mis_list(&v, &edges).unwrap(), brute(&v, &edges));
    }

    #[test]
    fn oversized_component_is_an_error() {
        let n = 130;
        let v = IntegerSet::full(n);
        let edges: Vec<IntegerSet> = (1..n).map(|i| set(n, &[i, i + 1])).collect();
        assert_eq!(mis_count(&v, &edges), Err(Error::ComponentTooLarge(130)));
    }
}
