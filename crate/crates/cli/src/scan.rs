//! Grid scans: one CSV row per ordered canonical triple and `n`.

use std::io::Write;
use std::path::Path;

use lfree::bounds::{fmax_upper_rate, interval_in, mu_formula, residue_tn};
use lfree::grid::{Cell, GridSpec};
use lfree::oracle::{brute_counts, brute_mu, cap, CapKind, CountKind};
use lfree::rate::rational;
use lfree::{CanonicalTriple, Error, Result};
use rayon::prelude::*;

pub const SCAN_COLUMNS: &[&str] = &[
    "p",
    "q",
    "r",
    "n",
    "|In|",
    "|Tn|",
    "brute_mu",
    "formula_mu",
    "flag_extremal_gap",
    "fmax",
    "log2_fmax_per_n",
    "q19_exponent",
    "q19_rate",
    "upper_rate",
];

const SKIP: &str = "skip";

/// One scan row; `None` cells print blank, over-cap cells print `skip`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanRow {
    pub triple: CanonicalTriple,
    pub n: u32,
    pub interval: usize,
    pub residue: usize,
    pub brute_mu: Option<u32>,
    pub formula_mu: Option<i64>,
    pub fmax: Option<String>,
    /// `log2(fmax)/n` to six decimals (report only).
    pub log2_fmax_per_n: Option<String>,
    pub q19_exponent: Option<String>,
    pub q19_rate: Option<String>,
    pub upper_rate: Option<String>,
}

impl ScanRow {
    pub fn flag_extremal_gap(&self) -> Option<bool> {
        self.brute_mu
            .map(|b| b as usize > self.interval.max(self.residue))
    }

    /// Whether an exhaustive column was left out because of a cap.
    pub fn skipped(&self) -> bool {
        self.brute_mu.is_none() || (self.triple.p() == self.triple.q() && self.fmax.is_none())
    }

    fn record(&self) -> Vec<String> {
        let t = &self.triple;
        let equal = t.p() == t.q();
        let opt = |v: &Option<String>, applies: bool| match (v, applies) {
            (Some(s), _) => s.clone(),
            (None, true) => SKIP.to_string(),
            (None, false) => String::new(),
        };
        vec![
            t.p().to_string(),
            t.q().to_string(),
            t.r().to_string(),
            self.n.to_string(),
            self.interval.to_string(),
            self.residue.to_string(),
            self.brute_mu.map_or(SKIP.to_string(), |v| v.to_string()),
            self.formula_mu.map_or(String::new(), |v| v.to_string()),
            self.flag_extremal_gap().map_or(SKIP.to_string(), |f| f.to_string()),
            opt(&self.fmax, equal),
            opt(&self.log2_fmax_per_n, equal),
            opt(&self.q19_exponent, false),
            opt(&self.q19_rate, false),
            opt(&self.upper_rate, false),
        ]
    }
}

fn log2(count: &str) -> f64 {
    // a decimal string keeps full precision up to f64 range
    count.parse::<f64>().map(f64::log2).unwrap_or(f64::NAN)
}

fn row(t: CanonicalTriple, n: u32) -> Result<ScanRow> {
    let l = t.equation();
    let brute = match brute_mu(&l, n, 0) {
        Ok(b) => Some(b.value),
        Err(Error::CapExceeded { .. }) => None,
        Err(e) => return Err(e),
    };
    let equal = t.p() == t.q();
    let fmax = if equal && n <= cap(CapKind::Maximal) {
        Some(brute_counts(&l, n, CountKind::Maximal)?.to_string())
    } else {
        None
    };
    let (q, r) = (t.q(), t.r());
    Ok(ScanRow {
        triple: t,
        n,
        interval: interval_in(&t, n).len(),
        residue: residue_tn(&t, n).len(),
        brute_mu: brute,
        formula_mu: mu_formula(&t, n)?.map(|v| v.value),
        log2_fmax_per_n: fmax.as_ref().map(|f| format!("{:.6}", log2(f) / n as f64)),
        fmax,
        q19_exponent: equal.then(|| rational(r * n as i64 * (q - 1), 2 * q * q).to_string()),
        q19_rate: equal.then(|| rational(r * (q - 1), 2 * q * q).to_string()),
        upper_rate: fmax_upper_rate(&t).ok().map(|u| u.rate.to_string()),
    })
}

fn triple_of(cell: &Cell) -> Result<Option<(CanonicalTriple, u32)>> {
    let get = |k: &str| {
        cell.get(k)
            .copied()
            .ok_or_else(|| Error::Grid(format!("scan grid needs `{k}`")))
    };
    let (p, q, r, n) = (get("p")?, get("q")?, get("r")?, get("n")?);
    if !(p >= q && q >= r && r >= 1) || n < 1 || n > u32::MAX as i64 {
        return Ok(None);
    }
    let t = CanonicalTriple::new(p, q, r)?;
    Ok(((t.p(), t.q(), t.r()) == (p, q, r)).then_some((t, n as u32)))
}

/// Rows for the canonical ordered cells of `cells`, in cell order.
pub fn scan_cells(cells: &[Cell]) -> Result<Vec<ScanRow>> {
    let jobs: Vec<(CanonicalTriple, u32)> = cells
        .iter()
        .map(triple_of)
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    jobs.par_iter().map(|&(t, n)| row(t, n)).collect()
}

pub(crate) fn scan_grid_spec(text: &str) -> Result<Vec<ScanRow>> {
    scan_cells(&GridSpec::parse(text)?.cells())
}

/// Scans `p <= p_max, q <= min(p, q_max), r <= min(q, r_max)` over `n_list`
/// and writes the CSV table to `out_path`.
pub fn scan_grid(p_max: i64, q_max: i64, r_max: i64, n_list: &[u32], out_path: &Path) -> Result<Vec<ScanRow>> {
    let mut cells = Vec::new();
    for p in 1..=p_max {
        for q in 1..=p.min(q_max) {
            for r in 1..=q.min(r_max) {
                for &n in n_list {
                    cells.push(Cell::from([
                        ("p".to_string(), p),
                        ("q".to_string(), q),
                        ("r".to_string(), r),
                        ("n".to_string(), n as i64),
                    ]));
                }
            }
        }
    }
    let rows = scan_cells(&cells)?;
    let file = std::fs::File::create(out_path).map_err(|e| Error::Domain(e.to_string()))?;
    write_csv(&rows, file).map_err(|e| Error::Domain(e.to_string()))?;
    Ok(rows)
}

pub fn write_csv<W: Write>(rows: &[ScanRow], out: W) -> std::result::Result<(), csv::Error> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(SCAN_COLUMNS)?;
    for r in rows {
        w.write_record(r.record())?;
    }
    w.flush()?;
    Ok(())
}
