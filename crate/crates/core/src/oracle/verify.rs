use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{
    fmax_lower_exponent, interval_in, matching_size_formula, mu_formula_all, mu_star, residue_tn,
    small_elements_bound, MuCase, MuStarMode,
};
use crate::equation::{CanonicalTriple, LinearEquation};
use crate::error::{Error, Result};
use crate::grid::{Cell, GridSpec};
use crate::link::{gm1_matching, graph_gm, induced_matching_instance, link_hypergraph};
use crate::mis;
use crate::set::IntegerSet;
use crate::solutions::{is_free, SolutionHypergraph};

use super::{
    brute_counts, brute_max_matching, brute_mu, brute_mu_star, cap, for_each_free_set, CapKind,
    CountKind,
};

/// Suite names with their default grids.
pub const SUITES: &[(&str, &str)] = &[
    ("mu4", "p=1..6,q=1..p,r=1..q,n=1..24"),
    ("gm1", "p=1..8,q=1..p,r=1..q,M=1..300"),
    (
        "mainL1",
        "p=1,q=1,r=1,n=1..14;p=2,q=1,r=1,n=1..14;p=2,q=2,r=1,n=1..14;p=3,q=3,r=2,n=1..14",
    ),
    ("link-correspondence", "n=12,seed=1..200"),
    ("mu6-mu1", "n=1..18"),
    ("fmax-lower", "q=2,r=1,n=8..24;q=3,r=2,n=8..24;q=5,r=2,n=8..24"),
    ("mu-star", "p=2,q=2,r=1,n=6..30;p=3,q=3,r=2,n=11..30"),
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CellStatus {
    Pass,
    Fail,
    Skip,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CellOutcome {
    pub cell: Cell,
    pub status: CellStatus,
    /// Counterexample for a failure, reason for a skip.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    /// Report-only observation that does not affect the status.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Totals {
    pub pass: usize,
    pub fail: usize,
    pub skip: usize,
    pub notes: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub suite: String,
    pub grid: String,
    pub cells: Vec<CellOutcome>,
    pub totals: Totals,
}

impl VerifyReport {
    pub fn ok(&self) -> bool {
        self.totals.fail == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &CellOutcome> {
        self.cells.iter().filter(|c| c.status == CellStatus::Fail)
    }
}

/// Runs a named battery over `grid` (or the suite default), cells in parallel,
/// results in grid order.
pub fn verify_suite(name: &str, grid: Option<&str>) -> Result<VerifyReport> {
    let Some(&(_, default)) = SUITES.iter().find(|(n, _)| *n == name) else {
        return Err(Error::UnknownSuite(name.to_string()));
    };
    let spec = GridSpec::parse(grid.unwrap_or(default))?;
    let run: fn(&Cell) -> Result<Option<Verdict>> = match name {
        "mu4" => mu4_cell,
        "gm1" => gm1_cell,
        "mainL1" => main_l1_cell,
        "link-correspondence" => link_cell,
        "mu6-mu1" => scaling_cell,
        "fmax-lower" => fmax_lower_cell,
        "mu-star" => mu_star_cell,
        _ => unreachable!("listed in SUITES"),
    };
    let cells: Vec<CellOutcome> = spec
        .cells()
        .par_iter()
        .map(|cell| {
            let verdict = match run(cell) {
                Ok(v) => v,
                Err(Error::CapExceeded { n, cap }) => Some(Verdict::skip(format!("n = {n} over cap {cap}"))),
                Err(e) => Some(Verdict::fail(format!("error: {e}"))),
            };
            verdict.map(|v| CellOutcome {
                cell: cell.clone(),
                status: v.status,
                witness: v.witness,
                note: v.note,
            })
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect();
    let mut totals = Totals::default();
    for c in &cells {
        match c.status {
            CellStatus::Pass => totals.pass += 1,
            CellStatus::Fail => totals.fail += 1,
            CellStatus::Skip => totals.skip += 1,
        }
        totals.notes += c.note.is_some() as usize;
    }
    Ok(VerifyReport {
        suite: name.to_string(),
        grid: spec.to_string(),
        cells,
        totals,
    })
}

struct Verdict {
    status: CellStatus,
    witness: Option<String>,
    note: Option<String>,
}

impl Verdict {
    fn pass() -> Self {
        Self {
            status: CellStatus::Pass,
            witness: None,
            note: None,
        }
    }
    fn fail(w: String) -> Self {
        Self {
            status: CellStatus::Fail,
            witness: Some(w),
            note: None,
        }
    }
    fn skip(w: String) -> Self {
        Self {
            status: CellStatus::Skip,
            witness: Some(w),
            note: None,
        }
    }
    fn with_note(mut self, note: Option<String>) -> Self {
        self.note = note;
        self
    }
}

fn var(cell: &Cell, name: &str, default: Option<i64>) -> Result<i64> {
    cell.get(name)
        .copied()
        .or(default)
        .ok_or_else(|| Error::Grid(format!("grid needs variable `{name}`")))
}

fn bound(cell: &Cell, name: &str) -> Result<u32> {
    let v = var(cell, name, None)?;
    u32::try_from(v)
        .ok()
        .filter(|&v| v >= 1)
        .ok_or_else(|| Error::Grid(format!("`{name}` = {v} must be a positive integer")))
}

/// The ordered canonical triple named by `p,q,r`, or `None` when the cell is
/// not in canonical form.
fn cell_triple(cell: &Cell) -> Result<Option<CanonicalTriple>> {
    let (p, q, r) = (var(cell, "p", Some(1))?, var(cell, "q", Some(1))?, var(cell, "r", Some(1))?);
    if p < 1 || q < 1 || r < 1 {
        return Ok(None);
    }
    Ok(CanonicalTriple::new(p, q, r)
        .ok()
        .filter(|t| (t.p(), t.q(), t.r()) == (p, q, r) && t.is_ordered()))
}

fn mu4_cell(cell: &Cell) -> Result<Option<Verdict>> {
    let Some(t) = cell_triple(cell)? else { return Ok(None) };
    let n = bound(cell, "n")?;
    let l = t.equation();
    let values = mu_formula_all(&t, n)?;
    if values.is_empty() {
        return Ok(Some(Verdict::skip("no formula case applies".into())));
    }
    let (i_n, t_n) = (interval_in(&t, n), residue_tn(&t, n));
    for (name, s) in [("I_n", &i_n), ("T_n", &t_n)] {
        if !is_free(&l, s) {
            return Ok(Some(Verdict::fail(format!("{name} = {s:?} is not L-free"))));
        }
    }
    let brute = brute_mu(&l, n, 1)?;
    let best = || brute.witnesses.first().map(|s| format!("{s:?}")).unwrap_or_default();
    for v in &values {
        if v.value != brute.value as i64 {
            return Ok(Some(Verdict::fail(format!(
                "case {} gives {} but the largest L-free set has {} elements, e.g. {}",
                v.case,
                v.value,
                brute.value,
                best()
            ))));
        }
        let witness = match v.case {
            MuCase::Ii => &i_n,
            MuCase::I | MuCase::Iii => &t_n,
        };
        if witness.len() as i64 != v.value {
            return Ok(Some(Verdict::fail(format!(
                "case {} value {} is not attained by its construction of size {}",
                v.case,
                v.value,
                witness.len()
            ))));
        }
    }
    Ok(Some(Verdict::pass()))
}

fn gm1_cell(cell: &Cell) -> Result<Option<Verdict>> {
    let Some(t) = cell_triple(cell)? else { return Ok(None) };
    let m = var(cell, "M", None)?;
    if m < 1 || m % t.t() != 0 {
        return Ok(None);
    }
    let matching = gm1_matching(&t, m)?;
    let g = graph_gm(&t, m)?;
    let top = g.vertices().len() as i64;
    let edges = g.pairs()?;
    let (p, q, rm) = (t.p(), t.q(), t.r() * m);
    for &(x, y) in &matching.pairs {
        let (x, y) = (x as i64, y as i64);
        let solves = p * x + q * y == rm || p * y + q * x == rm;
        if !solves || x < 1 || y > top {
            return Ok(Some(Verdict::fail(format!("pair ({x},{y}) is not an edge of G_M"))));
        }
    }
    if let Some(e) = matching.pairs.iter().find(|e| edges.binary_search(e).is_err()) {
        return Ok(Some(Verdict::fail(format!("pair {e:?} missing from G_M"))));
    }
    let formula = matching_size_formula(&t, m)?;
    if matching.len() as i64 != formula || !matching.is_vertex_disjoint() || matching.loop_count > 1 {
        return Ok(Some(Verdict::fail(format!(
            "size {} (formula {formula}), loops {}",
            matching.len(),
            matching.loop_count
        ))));
    }
    let max = brute_max_matching(&g)?;
    if max < matching.len() {
        return Ok(Some(Verdict::fail(format!(
            "maximum matching {max} smaller than construction {}",
            matching.len()
        ))));
    }
    Ok(Some(Verdict::pass()))
}

fn main_l1_cell(cell: &Cell) -> Result<Option<Verdict>> {
    let Some(t) = cell_triple(cell)? else { return Ok(None) };
    let n = bound(cell, "n")?;
    let l = t.equation();
    let (q, r, tt) = (t.q(), t.r(), t.t());
    let no_m_cap = ((tt - 1) * n as i64 + tt - 1) / tt;
    let mut failure: Option<String> = None;
    let mut check = |mask: u128| -> Result<()> {
        if failure.is_some() {
            return Ok(());
        }
        let members: Vec<i64> = (1..=n as i64).filter(|&v| mask >> v & 1 == 1).collect();
        let size = members.len() as i64;
        match members.iter().rev().find(|&&v| v % tt == 0) {
            None => {
                if size > no_m_cap {
                    failure = Some(format!("{members:?} has no multiple of t and exceeds {no_m_cap}"));
                }
            }
            Some(&m) => {
                let whole = small_elements_bound(&t, m, Some(n as i64))?;
                let small_top = (r * m + q - 1) / q - 1;
                let small = members.iter().filter(|&&v| v <= small_top).count() as i64;
                let lemma = small_elements_bound(&t, m, None)?;
                if size > whole {
                    failure = Some(format!("{members:?} with M = {m} exceeds the cap {whole}"));
                } else if small > lemma {
                    failure = Some(format!(
                        "{members:?} has {small} elements below {small_top}, cap {lemma}"
                    ));
                }
            }
        }
        Ok(())
    };
    let mut err = None;
    for_each_free_set(&l, n, |mask| {
        if let Err(e) = check(mask) {
            err.get_or_insert(e);
        }
    })?;
    if let Some(e) = err {
        return Err(e);
    }
    Ok(Some(match failure {
        Some(w) => Verdict::fail(w),
        None => Verdict::pass(),
    }))
}

/// One random split of a random maximal L-free `T` into `S ⊆ T` and a vertex
/// set `B ⊇ T \ S` disjoint from `S`; returns whether `T \ S` is maximal
/// independent in `L_S[B]`.
pub(crate) fn random_split_check(
    l: &LinearEquation,
    n: u32,
    maximal: &[IntegerSet],
    rng: &mut ChaCha8Rng,
) -> Result<std::result::Result<(), String>> {
    let t = &maximal[rng.gen_range(0..maximal.len())];
    let s = IntegerSet::from_members(n, t.iter().filter(|_| rng.gen_bool(0.5)));
    let rest = t.difference(&s);
    let b = if rng.gen_bool(0.5) {
        IntegerSet::full(n).difference(&s)
    } else {
        let extra = IntegerSet::from_predicate(n, |v| !t.contains(v) && rng.gen_bool(0.5));
        rest.union(&extra)
    };
    let h = link_hypergraph(l, &s, &b)?;
    Ok(if h.is_maximal_independent(&rest) {
        Ok(())
    } else {
        Err(format!("T = {t:?}, S = {s:?}, B = {b:?}"))
    })
}

fn link_cell(cell: &Cell) -> Result<Option<Verdict>> {
    let Some(t) = cell_triple(cell)? else { return Ok(None) };
    let n = bound(cell, "n")?;
    let seed = var(cell, "seed", Some(0))?;
    if n > cap(CapKind::Maximal) {
        return Err(Error::CapExceeded { n, cap: cap(CapKind::Maximal) });
    }
    let l = t.equation();
    let h = SolutionHypergraph::build(&l, n);
    let maximal = mis::mis_list(&IntegerSet::full(n), h.edges())?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed as u64);
    Ok(Some(match random_split_check(&l, n, &maximal, &mut rng)? {
        Ok(()) => Verdict::pass(),
        Err(w) => Verdict::fail(w),
    }))
}

const SCALING_BASE: &[&[i64]] = &[&[1, 1, -1], &[2, 1, -1], &[3, 2, -2], &[1, 1, -3], &[1, 1, 1, -1]];
const COLLAPSES: &[(&[i64], usize, usize)] = &[
    (&[1, 1, 1, -1], 0, 1),
    (&[1, 1, 1, 1, -2], 0, 1),
    (&[2, 1, 1, -2], 0, 1),
    (&[2, 1, 1, -2], 1, 2),
];

fn scaling_cell(cell: &Cell) -> Result<Option<Verdict>> {
    let n = bound(cell, "n")?;
    let profile = |l: &LinearEquation| -> Result<(u32, BigUint, BigUint)> {
        Ok((
            brute_mu(l, n, 0)?.value,
            brute_counts(l, n, CountKind::Free)?,
            brute_counts(l, n, CountKind::Maximal)?,
        ))
    };
    if n <= 16 {
        for base in SCALING_BASE {
            let l = LinearEquation::homogeneous(base)?;
            let want = profile(&l)?;
            for c in [2, 3] {
                let scaled = l.scaled(c)?;
                let got = profile(&scaled)?;
                if got != want {
                    return Ok(Some(Verdict::fail(format!(
                        "{l} gives (mu, f, fmax) = {want:?} but {scaled} gives {got:?}"
                    ))));
                }
            }
        }
    }
    for &(c, i, j) in COLLAPSES {
        let l1 = LinearEquation::homogeneous(c)?;
        let l2 = l1.collapse_variables(i, j)?;
        let (a, b) = (brute_mu(&l1, n, 0)?.value, brute_mu(&l2, n, 0)?.value);
        if a > b {
            return Ok(Some(Verdict::fail(format!("mu({l1}) = {a} > mu({l2}) = {b}"))));
        }
    }
    Ok(Some(Verdict::pass()))
}

fn fmax_lower_cell(cell: &Cell) -> Result<Option<Verdict>> {
    let (q, r) = (var(cell, "q", None)?, var(cell, "r", None)?);
    let n = bound(cell, "n")?;
    let e = fmax_lower_exponent(q, r, n as i64)?;
    let inst = match induced_matching_instance(q, r, n) {
        Ok(inst) => inst,
        Err(Error::Hypothesis(w)) => return Ok(Some(Verdict::skip(w))),
        Err(e) => return Err(e),
    };
    if (inst.matching.len() as i64) < e {
        return Ok(Some(Verdict::fail(format!(
            "matching of size {} below exponent {e}",
            inst.matching.len()
        ))));
    }
    if n > cap(CapKind::Maximal) {
        return Ok(Some(Verdict::pass().with_note(Some(format!(
            "maximal count skipped above cap {}",
            cap(CapKind::Maximal)
        )))));
    }
    let l = LinearEquation::triple(q, q, r)?;
    let count = brute_counts(&l, n, CountKind::Maximal)?;
    if e > 0 && count < BigUint::from(1u8) << e as usize {
        return Ok(Some(Verdict::fail(format!("{count} maximal sets, fewer than 2^{e}"))));
    }
    Ok(Some(Verdict::pass().with_note(Some(format!(
        "|E| = {}, exponent {e}, maximal sets {count}",
        inst.matching.len()
    )))))
}

fn mu_star_cell(cell: &Cell) -> Result<Option<Verdict>> {
    let Some(t) = cell_triple(cell)? else { return Ok(None) };
    let n = bound(cell, "n")?;
    let l = t.equation();
    let brute = brute_mu_star(&l, n)? as i64;
    let exact = mu_star(&t, n, MuStarMode::ExactSet)?;
    let formula = mu_star(&t, n, MuStarMode::Formula)?;
    let note = (formula != exact).then(|| format!("formula gives {formula}, the set has {exact}"));
    if brute != exact {
        let covered = SolutionHypergraph::build(&l, n).covered();
        let outside = IntegerSet::full(n).difference(&covered);
        return Ok(Some(
            Verdict::fail(format!(
                "{brute} elements lie in no solution ({outside:?}), the set has {exact}"
            ))
            .with_note(note),
        ));
    }
    Ok(Some(Verdict::pass().with_note(note)))
}
