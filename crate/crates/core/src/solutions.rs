//! Non-trivial solutions inside `[n]` and the hypergraph they span.

use std::collections::BTreeSet;

use crate::equation::LinearEquation;
use crate::error::{Error, Result};
use crate::set::IntegerSet;

/// Calls `f` on every non-trivial solution whose entries all lie in `values`
/// (sorted, distinct). Tuples arrive in no particular order.
pub(crate) fn for_each_solution_in(
    l: &LinearEquation,
    values: &[u32],
    mut f: impl FnMut(&[u32]),
) {
    let k = l.arity();
    let Some(&max) = values.last() else {
        return;
    };
    let mut member = vec![false; max as usize + 1];
    for &v in values {
        member[v as usize] = true;
    }
    // solve for the variable with the largest |coefficient|
    let solved = (0..k)
        .max_by_key(|&i| (l.coeffs()[i].unsigned_abs(), std::cmp::Reverse(i)))
        .expect("k >= 2");
    let a_s = l.coeffs()[solved] as i128;
    let free: Vec<usize> = (0..k).filter(|&i| i != solved).collect();
    let mut x = vec![0u32; k];

    fn rec(
        depth: usize,
        partial: i128,
        ctx: &mut Ctx<'_>,
        x: &mut Vec<u32>,
        f: &mut dyn FnMut(&[u32]),
    ) {
        if depth == ctx.free.len() {
            let rem = ctx.l.rhs() as i128 - partial;
            if rem % ctx.a_s != 0 {
                return;
            }
            let v = rem / ctx.a_s;
            if v < 1 || v > ctx.member.len() as i128 - 1 || !ctx.member[v as usize] {
                return;
            }
            x[ctx.solved] = v as u32;
            if !ctx.l.trivial_unchecked(x) {
                f(x);
            }
            return;
        }
        let i = ctx.free[depth];
        let a = ctx.l.coeffs()[i] as i128;
        for &v in ctx.values {
            x[i] = v;
            rec(depth + 1, partial + a * v as i128, ctx, x, f);
        }
    }

    struct Ctx<'a> {
        l: &'a LinearEquation,
        values: &'a [u32],
        member: Vec<bool>,
        free: Vec<usize>,
        solved: usize,
        a_s: i128,
    }

    let mut ctx = Ctx {
        l,
        values,
        member,
        free,
        solved,
        a_s,
    };
    rec(0, 0, &mut ctx, &mut x, &mut f);
}

/// All non-trivial solutions in `[n]^k`, lexicographically sorted.
pub fn enumerate_solutions(l: &LinearEquation, n: u32) -> Vec<Vec<u32>> {
    let values: Vec<u32> = (1..=n).collect();
    solutions_in(l, &values)
}

/// Non-trivial solutions with all entries in `values`, sorted.
pub fn solutions_in(l: &LinearEquation, values: &[u32]) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for_each_solution_in(l, values, |x| out.push(x.to_vec()));
    out.sort_unstable();
    out
}

/// First non-trivial solution found inside `s`, if any.
pub fn find_solution(l: &LinearEquation, s: &IntegerSet) -> Option<Vec<u32>> {
    let values = s.members();
    let mut found = None;
    // no early exit in the recursion; sets handled here are small
    for_each_solution_in(l, &values, |x| {
        if found.is_none() {
            found = Some(x.to_vec());
        }
    });
    found
}

/// `true` iff `s` contains no non-trivial solution (entries may repeat).
pub fn is_free(l: &LinearEquation, s: &IntegerSet) -> bool {
    find_solution(l, s).is_none()
}

/// Hypergraph on `[n]` whose edges are the value sets of non-trivial solutions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolutionHypergraph {
    n: u32,
    edges: Vec<IntegerSet>,
}

impl SolutionHypergraph {
    pub fn build(l: &LinearEquation, n: u32) -> Self {
        let values: Vec<u32> = (1..=n).collect();
        let mut edges = BTreeSet::new();
        for_each_solution_in(l, &values, |x| {
            edges.insert(IntegerSet::from_members(n, x.iter().copied()));
        });
        Self {
            n,
            edges: edges.into_iter().collect(),
        }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Distinct edges in lexicographic order.
    pub fn edges(&self) -> &[IntegerSet] {
        &self.edges
    }

    pub fn loops(&self) -> impl Iterator<Item = u32> + '_ {
        self.edges
            .iter()
            .filter(|e| e.len() == 1)
            .map(|e| e.largest().expect("non-empty"))
    }

    pub fn is_independent(&self, s: &IntegerSet) -> bool {
        self.edges.iter().all(|e| !e.is_subset(s))
    }

    /// Vertices covered by at least one edge.
    pub fn covered(&self) -> IntegerSet {
        IntegerSet::from_members(self.n, self.edges.iter().flat_map(|e| e.members()))
    }

    /// Edges as bitmasks (bit `v` for vertex `v`).
    pub fn masks(&self) -> Result<Vec<u128>> {
        if self.n > 127 {
            return Err(Error::CapExceeded {
                n: self.n,
                cap: 127,
            });
        }
        Ok(self
            .edges
            .iter()
            .map(|e| e.to_mask().expect("n <= 127"))
            .collect())
    }
}

pub fn solution_hypergraph(l: &LinearEquation, n: u32) -> SolutionHypergraph {
    SolutionHypergraph::build(l, n)
}
