//! Design-space sweeps: read grid search, writability versus array size and
//! the joined power-performance-area summary.
//!
//! Grid points are evaluated in parallel but collected in grid order, so
//! results do not depend on the worker count.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arraysim::{
    reference_read_points, sense, write_current, ArrayModels, EnergyBreakdown, ReadCase, SelectorKind, SenseReport,
    WriteCase,
};
use crate::devices::{Corner, CornerTable};
use crate::error::{Error, Result};
use crate::magnetics::retention_targets;
use crate::techmodel::{bitcell_geometry, ConfigId};

pub const DEFAULT_GRID_CAP: usize = 20_000;

/// Read voltages scanned by the minimal-V_read search: 0.1 V to 3.0 V.
pub fn v_read_grid() -> Vec<f64> {
    (1..=30).map(|k| k as f64 / 10.0).collect()
}

/// One (config, selector) family in a read sweep. 1T1D1R takes either diode,
/// so the selector cannot be inferred from the configuration alone.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CellChoice {
    pub config: ConfigId,
    pub selector: SelectorKind,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "value")]
pub enum Constraint {
    /// Peak sensing margin at least this value [V].
    SmAtLeast(f64),
    /// Sensing threshold reached within the window.
    Feasible,
    LatencyAtMost(f64),
    EnergyAtMost(f64),
}

impl Constraint {
    fn holds(&self, r: &ReadRecord) -> bool {
        match *self {
            Constraint::SmAtLeast(v) => r.sm_peak >= v,
            Constraint::Feasible => r.feasible,
            Constraint::LatencyAtMost(t) => r.latency_s.is_some_and(|l| l <= t),
            Constraint::EnergyAtMost(e) => r.energy.total <= e,
        }
    }
}

/// Cartesian read grid. Threshold shifts only apply to IGZO cells; other
/// selectors are evaluated once per remaining axis combination.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepGrid {
    pub cells: Vec<CellChoice>,
    pub v_read: Vec<f64>,
    pub ra: Vec<f64>,
    pub tmr: Vec<f64>,
    #[serde(default = "zero_shift")]
    pub vt_shift: Vec<f64>,
    #[serde(default = "default_rows")]
    pub rows: Vec<u32>,
    #[serde(default)]
    pub constraints: Vec<Constraint>,
    #[serde(default = "default_cap")]
    pub cap: usize,
}

fn zero_shift() -> Vec<f64> {
    vec![0.0]
}

fn default_rows() -> Vec<u32> {
    vec![128]
}

fn default_cap() -> usize {
    DEFAULT_GRID_CAP
}

impl SweepGrid {
    pub fn points(&self) -> Result<Vec<ReadCase>> {
        if self.cells.is_empty() || self.v_read.is_empty() || self.ra.is_empty() || self.tmr.is_empty() {
            return Err(Error::param("grid", "every axis needs at least one value"));
        }
        if self.vt_shift.is_empty() || self.rows.is_empty() {
            return Err(Error::param("grid", "vt_shift and rows need at least one value"));
        }
        let shifts = |s: SelectorKind| {
            if s == SelectorKind::Igzo {
                self.vt_shift.len()
            } else {
                1
            }
        };
        let per = self.v_read.len() * self.ra.len() * self.tmr.len() * self.rows.len();
        let size: usize = self.cells.iter().map(|c| shifts(c.selector) * per).sum();
        if size > self.cap {
            return Err(Error::GridTooLarge { size, cap: self.cap });
        }
        let mut out = Vec::with_capacity(size);
        for c in &self.cells {
            let vts: &[f64] = if c.selector == SelectorKind::Igzo {
                &self.vt_shift
            } else {
                &[0.0]
            };
            for &rows in &self.rows {
                for &vt in vts {
                    for &ra in &self.ra {
                        for &tmr in &self.tmr {
                            for &v in &self.v_read {
                                let case = ReadCase::new(c.config, c.selector, v, ra, tmr)
                                    .with_vt_shift(vt)
                                    .with_rows(rows);
                                case.validate()?;
                                out.push(case);
                            }
                        }
                    }
                }
            }
        }
        Ok(out)
    }
}

/// One evaluated read design point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReadRecord {
    pub config: ConfigId,
    pub selector: SelectorKind,
    pub rows: u32,
    pub v_read: f64,
    pub ra: f64,
    pub tmr: f64,
    pub vt_shift: f64,
    pub feasible: bool,
    pub sm_peak: f64,
    pub latency_s: Option<f64>,
    pub r_sel: f64,
    pub tmr_eff: f64,
    pub i_dchg: f64,
    pub sigma_i_sneak: f64,
    pub ratio: f64,
    pub energy: EnergyBreakdown,
    /// Solver failure, kept as data so one bad point does not sink a sweep.
    pub error: Option<String>,
}

impl ReadRecord {
    pub fn from_report(case: &ReadCase, r: &SenseReport) -> Self {
        Self {
            config: case.config,
            selector: case.selector,
            rows: case.rows,
            v_read: case.v_read,
            ra: case.ra,
            tmr: case.tmr,
            vt_shift: case.vt_shift,
            feasible: r.feasible,
            sm_peak: r.sm_peak,
            latency_s: r.latency,
            r_sel: r.r_sel,
            tmr_eff: r.tmr_eff,
            i_dchg: r.i_dchg,
            sigma_i_sneak: r.sigma_i_sneak,
            ratio: r.ratio,
            energy: r.energy,
            error: None,
        }
    }

    fn failed(case: &ReadCase, e: &Error) -> Self {
        Self {
            config: case.config,
            selector: case.selector,
            rows: case.rows,
            v_read: case.v_read,
            ra: case.ra,
            tmr: case.tmr,
            vt_shift: case.vt_shift,
            feasible: false,
            sm_peak: f64::NAN,
            latency_s: None,
            r_sel: f64::NAN,
            tmr_eff: f64::NAN,
            i_dchg: f64::NAN,
            sigma_i_sneak: f64::NAN,
            ratio: f64::NAN,
            energy: EnergyBreakdown::default(),
            error: Some(e.to_string()),
        }
    }

    pub fn case(&self) -> ReadCase {
        ReadCase::new(self.config, self.selector, self.v_read, self.ra, self.tmr)
            .with_vt_shift(self.vt_shift)
            .with_rows(self.rows)
    }
}

fn pool(jobs: Option<usize>) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.unwrap_or(0))
        .build()
        .map_err(|e| Error::param("jobs", e.to_string()))
}

/// Evaluates `cases` on `jobs` workers (all cores when `None`), keeping input order.
pub fn evaluate(cases: &[ReadCase], m: &ArrayModels, jobs: Option<usize>) -> Result<Vec<ReadRecord>> {
    m.validate()?;
    let records = pool(jobs)?.install(|| {
        cases
            .par_iter()
            .map(|c| match sense(c, m) {
                Ok(r) => ReadRecord::from_report(c, &r),
                Err(e) => ReadRecord::failed(c, &e),
            })
            .collect()
    });
    Ok(records)
}

/// Runs the grid and keeps the points satisfying every constraint.
pub fn read_design_space(grid: &SweepGrid, m: &ArrayModels, jobs: Option<usize>) -> Result<Vec<ReadRecord>> {
    let cases = grid.points()?;
    let mut records = evaluate(&cases, m, jobs)?;
    records.retain(|r| grid.constraints.iter().all(|c| c.holds(r)));
    Ok(records)
}

/// Grouping key for the minimal-V_read search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct GroupKey {
    pub config: ConfigId,
    pub selector: SelectorKind,
    /// Threshold shift in mV, so the key stays totally ordered.
    pub vt_shift_mv: i64,
}

/// Lowest feasible V_read per (config, selector, threshold shift) group,
/// ties broken by the larger sensing margin.
pub fn min_v_read(records: &[ReadRecord]) -> BTreeMap<GroupKey, ReadRecord> {
    let mut best: BTreeMap<GroupKey, ReadRecord> = BTreeMap::new();
    for r in records.iter().filter(|r| r.feasible) {
        let key = GroupKey {
            config: r.config,
            selector: r.selector,
            vt_shift_mv: (r.vt_shift * 1e3).round() as i64,
        };
        let better = match best.get(&key) {
            None => true,
            Some(b) => r.v_read < b.v_read || (r.v_read == b.v_read && r.sm_peak > b.sm_peak),
        };
        if better {
            best.insert(key, r.clone());
        }
    }
    best
}

/// Reference read point next to the lowest feasible V_read found for its
/// (RA, TMR, shift) on [`v_read_grid`].
#[derive(Debug, Clone, Serialize)]
pub struct ReferenceComparison {
    pub label: &'static str,
    pub reference: ReadRecord,
    pub min_v_read: Option<f64>,
}

pub fn reference_design_space(m: &ArrayModels, jobs: Option<usize>) -> Result<Vec<ReferenceComparison>> {
    let refs = reference_read_points();
    let mut cases: Vec<ReadCase> = refs.iter().map(|(_, c)| c.clone()).collect();
    for (_, c) in &refs {
        cases.extend(v_read_grid().into_iter().map(|v| ReadCase { v_read: v, ..c.clone() }));
    }
    let records = evaluate(&cases, m, jobs)?;
    let (head, scan) = records.split_at(refs.len());
    let n = v_read_grid().len();
    Ok(refs
        .iter()
        .enumerate()
        .map(|(k, (label, _))| ReferenceComparison {
            label,
            reference: head[k].clone(),
            min_v_read: scan[k * n..(k + 1) * n].iter().find(|r| r.feasible).map(|r| r.v_read),
        })
        .collect())
}

/// Write current of one configuration at one array size.
#[derive(Debug, Clone, Serialize)]
pub struct WritabilityRow {
    pub config: ConfigId,
    pub rows: u32,
    pub corner: Corner,
    pub r_bl_ohm: f64,
    pub i_cell: f64,
    /// (retention label, required I_c [A], met)
    pub targets: Vec<(String, f64, bool)>,
}

impl WritabilityRow {
    /// Label of the longest retention target met, if any.
    pub fn best_target(&self) -> Option<&str> {
        self.targets.iter().rev().find(|t| t.2).map(|t| t.0.as_str())
    }

    pub fn targets_met(&self) -> usize {
        self.targets.iter().filter(|t| t.2).count()
    }
}

pub const DEFAULT_ROWS: [u32; 4] = [16, 32, 64, 128];

pub fn writability_vs_rows(
    configs: &[ConfigId],
    rows_list: &[u32],
    corner: Corner,
    m: &ArrayModels,
    jobs: Option<usize>,
) -> Result<Vec<WritabilityRow>> {
    m.validate()?;
    let cases: Vec<WriteCase> = configs
        .iter()
        .flat_map(|&c| rows_list.iter().map(move |&r| WriteCase::new(c, r, corner)))
        .collect();
    pool(jobs)?.install(|| {
        cases
            .par_iter()
            .map(|w| {
                let r = write_current(w, m)?;
                Ok(WritabilityRow {
                    config: r.config,
                    rows: r.rows,
                    corner: r.corner,
                    r_bl_ohm: r.r_bl_ohm,
                    i_cell: r.i_cell,
                    targets: r.targets.into_iter().map(|(l, _, ic, met)| (l, ic, met)).collect(),
                })
            })
            .collect()
    })
}

/// Read-side entry of a PPA record.
#[derive(Debug, Clone, Serialize)]
pub struct ReadSummary {
    pub label: &'static str,
    pub v_read: f64,
    pub feasible: bool,
    pub sm_peak: f64,
    pub latency_s: Option<f64>,
    pub energy: EnergyBreakdown,
    pub energy_vs_2t1r: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct PpaRecord {
    pub config: ConfigId,
    pub area_um2: f64,
    pub i_cell: CornerTable,
    /// Longest retention target met at the slow corner with 128 rows.
    pub attainable_retention: Option<String>,
    /// Reference read points of this configuration; empty when not evaluated.
    pub reads: Vec<ReadSummary>,
}

/// Joins area, 128-row write current and the reference read points per
/// configuration.
pub fn ppa_summary(configs: &[ConfigId], m: &ArrayModels, jobs: Option<usize>) -> Result<Vec<PpaRecord>> {
    let refs = reference_read_points();
    let cases: Vec<ReadCase> = refs.iter().map(|(_, c)| c.clone()).collect();
    let reads = evaluate(&cases, m, jobs)?;
    let base = refs
        .iter()
        .zip(&reads)
        .find(|((_, c), _)| c.config == ConfigId::TwoT1rRv)
        .map(|(_, r)| r.energy.total)
        .unwrap_or(f64::NAN);
    let mut out = Vec::new();
    for &c in configs {
        let w = |k| write_current(&WriteCase::new(c, 128, k), m);
        let ss = w(Corner::Ss)?;
        let i_cell = CornerTable {
            ss: ss.i_cell,
            tt: w(Corner::Tt)?.i_cell,
            ff: w(Corner::Ff)?.i_cell,
        };
        let attainable_retention = ss.targets.iter().rev().find(|t| t.3).map(|t| t.0.clone());
        let reads = refs
            .iter()
            .zip(&reads)
            .filter(|((_, case), _)| case.config == c)
            .map(|((label, case), r)| ReadSummary {
                label,
                v_read: case.v_read,
                feasible: r.feasible,
                sm_peak: r.sm_peak,
                latency_s: r.latency_s,
                energy: r.energy,
                energy_vs_2t1r: r.energy.total / base,
            })
            .collect();
        out.push(PpaRecord {
            config: c,
            area_um2: bitcell_geometry(c, &m.tech, &m.layout).area_um2,
            i_cell,
            attainable_retention,
            reads,
        });
    }
    Ok(out)
}

/// Retention labels in increasing order, as used by [`WritabilityRow::targets`].
pub fn retention_labels() -> Vec<&'static str> {
    retention_targets().into_iter().map(|t| t.0).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_grid() -> SweepGrid {
        SweepGrid {
            cells: vec![
                CellChoice {
                    config: ConfigId::OneT1d1r,
                    selector: SelectorKind::Schottky,
                },
                CellChoice {
                    config: ConfigId::OneT1r1t,
                    selector: SelectorKind::Igzo,
                },
            ],
            v_read: vec![1.4, 1.6],
            ra: vec![100.0],
            tmr: vec![150.0],
            vt_shift: vec![0.0, 0.12],
            rows: vec![16],
            constraints: vec![],
            cap: 100,
        }
    }

    #[test]
    fn grid_cardinality_counts_shifts_for_igzo_only() {
        assert_eq!(small_grid().points().unwrap().len(), 2 + 4);
    }

    #[test]
    fn grid_cap_is_enforced() {
        let mut g = small_grid();
        g.cap = 5;
        assert!(matches!(g.points(), Err(Error::GridTooLarge { size: 6, cap: 5 })));
    }

    #[test]
    fn empty_axis_rejected() {
        let mut g = small_grid();
        g.tmr.clear();
        assert!(g.points().is_err());
    }

    #[test]
    fn v_read_grid_is_decimal() {
        let g = v_read_grid();
        assert_eq!(g.len(), 30);
        assert_eq!(g[6], 0.7);
        assert_eq!(g[20], 2.1);
    }

    #[test]
    fn min_v_read_prefers_lowest_feasible() {
        let m = ArrayModels::default();
        let case = ReadCase::new(ConfigId::OneT1d1r, SelectorKind::Schottky, 1.6, 100.0, 150.0).with_rows(16);
        let r = sense(&case, &m).unwrap();
        let mut a = ReadRecord::from_report(&case, &r);
        a.feasible = true;
        let mut b = a.clone();
        b.v_read = 1.2;
        let mut c = a.clone();
        c.v_read = 0.9;
        c.feasible = false;
        let best = min_v_read(&[a, b, c]);
        assert_eq!(best.len(), 1);
        assert_eq!(best.values().next().unwrap().v_read, 1.2);
    }
}
