//! The full pipeline on one instance and k, with every identity and
//! inequality in the bound's deduction chain checked as a separate verdict,
//! plus the randomized sweep harness.

use serde::{Deserialize, Serialize};

use crate::arrangement::{self, ArrEdge, Arrangement};
use crate::chains::{self, ChainSet};
use crate::generate::{self, GenSpec, Shape};
use crate::geom::{rat, rat_to_string, Rat};
use crate::graph;
use crate::instance::Instance;
use crate::ksets::{self, KSetFamily, Side};
use crate::par;
use crate::Error;

/// One checked (in)equality with exact sides rendered as `p/q` strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub name: String,
    pub lhs: String,
    pub rhs: String,
    pub holds: bool,
}

impl Verdict {
    fn eq_u(name: &str, lhs: u128, rhs: u128) -> Self {
        Verdict {
            name: name.into(),
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
            holds: lhs == rhs,
        }
    }

    fn le_u(name: &str, lhs: u128, rhs: u128) -> Self {
        Verdict {
            name: name.into(),
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
            holds: lhs <= rhs,
        }
    }

    fn with_rat_sides(name: &str, lhs: &Rat, rhs: &Rat, holds: bool) -> Self {
        Verdict {
            name: name.into(),
            lhs: rat_to_string(lhs),
            rhs: rat_to_string(rhs),
            holds,
        }
    }
}

/// Machine-readable verdict sheet for one `(instance, k)` run. Counts are
/// exact; a false verdict is data, not an error.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub n: u64,
    pub k: u64,
    pub t: u64,
    pub x: u64,
    pub tangents: u64,
    pub chain_crossings: u64,
    pub below_level: u64,
    pub nk: u64,
    pub ksets_above: u64,
    pub ksets_below: u64,
    pub verdicts: Vec<Verdict>,
    /// `t^3 <= 64 n^3 k`, the exact form of `t <= 4 n k^(1/3)`.
    pub bound_ok: bool,
    /// `t <= 4n`.
    pub easy_case: bool,
}

impl Report {
    pub fn all_hold(&self) -> bool {
        self.verdicts.iter().all(|v| v.holds)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }
}

/// Everything computable once per instance and shared across k: the
/// arrangement, the certified edge set, and the directed k-set families of
/// both sides.
pub struct Pipeline {
    inst: Instance,
    arr: Arrangement,
    edges: Vec<ArrEdge>,
    above: Vec<KSetFamily>,
    below: Vec<KSetFamily>,
}

impl Pipeline {
    pub fn new(inst: Instance) -> Self {
        let arr = arrangement::build_arrangement(&inst);
        let edges = arrangement::enumerate_edges(&arr);
        let above = ksets::enumerate_all_directed(&inst, Side::Above);
        let below = ksets::enumerate_all_directed(&inst, Side::Below);
        Pipeline {
            inst,
            arr,
            edges,
            above,
            below,
        }
    }

    pub fn instance(&self) -> &Instance {
        &self.inst
    }

    pub fn arrangement(&self) -> &Arrangement {
        &self.arr
    }

    pub fn report(&self, k: usize) -> Result<Report, Error> {
        let n = self.inst.n();
        if k < 1 || k > n - 1 {
            return Err(Error::BadK { k, n });
        }
        let arr = &self.arr;
        let profile = arrangement::level_profile(arr, k)?;
        let level = arrangement::extract_k_level(arr, k)?;
        let cs = chains::decompose_chains(arr, k)?;
        let g = graph::build_dey_graph(&self.inst, arr, k)?;
        let (x, crossing_records) = graph::crossing_number(&g);

        let mut tangents_total: u64 = 0;
        for (i, j) in cs.pairs() {
            tangents_total += chains::common_tangents(arr, &cs, i, j).len() as u64;
            chains::charge_tangents(arr, &cs, i, j)?;
        }
        for rec in &crossing_records {
            graph::crossing_to_tangent(arr, &cs, &g, rec)?;
        }

        let t = g.t();
        let chain_crossings = cs.total_crossings();
        let ksets_above = self.above[k - 1].count();
        let ksets_below = self.below[k - 1].count();
        let vk1 = class_count(&profile.counts, k - 1);
        let v_nk1 = class_count(&profile.counts, n - k - 1);
        let sum_below_k1: u64 = profile.counts[..k.saturating_sub(1)].iter().sum();

        let easy_case = t <= 4 * n as u64;
        let t3 = (t as u128).pow(3);
        let bound_rhs = 64u128 * (n as u128).pow(3) * k as u128;
        let bound_ok = t3 <= bound_rhs;
        let lemma = graph::crossing_lemma_check(t, n as u64, x);

        let mut verdicts = vec![
            Verdict::eq_u("I1", t as u128, vk1 as u128),
            Verdict::eq_u("I2", level_class_mismatch(arr, &level, k), 0),
            Verdict::eq_u("I3a", ksets_above as u128, vk1 as u128 + 1),
            Verdict::eq_u("I3b", ksets_below as u128, v_nk1 as u128 + 1),
            Verdict::eq_u("I4a", cs.chains.len() as u128, k as u128),
            Verdict::eq_u("I4b", concavity_defects(arr, &cs), 0),
            Verdict::eq_u("I4c", turn_partition_defects(arr, &cs, k), 0),
            Verdict::eq_u("I4d", edge_cover_defects(arr, &self.edges, &cs, k), 0),
            Verdict::eq_u("I5", chain_crossings as u128, sum_below_k1 as u128),
            Verdict::le_u("I6a", x as u128, tangents_total as u128),
            Verdict::le_u("I6b", tangents_total as u128, chain_crossings as u128),
            Verdict::le_u("I7", profile.below_level as u128, profile.nk as u128),
            Verdict::with_rat_sides("I8", &rat(x as i64), &lemma.threshold, lemma.holds),
            Verdict::le_u("I9", t3, bound_rhs),
        ];
        // The deduction the bound rests on: (I6 and I7 and I8) or the easy
        // case must imply bound_ok.
        let premise = easy_case
            || (verdicts[9].holds
                && verdicts[10].holds
                && verdicts[11].holds
                && verdicts[12].holds);
        verdicts.push(Verdict::le_u(
            "deduction",
            premise as u128,
            bound_ok as u128,
        ));

        Ok(Report {
            n: n as u64,
            k: k as u64,
            t,
            x,
            tangents: tangents_total,
            chain_crossings,
            below_level: profile.below_level,
            nk: profile.nk,
            ksets_above,
            ksets_below,
            verdicts,
            bound_ok,
            easy_case,
        })
    }

    pub fn report_all(&self) -> Result<Vec<Report>, Error> {
        (1..self.inst.n()).map(|k| self.report(k)).collect()
    }
}

fn class_count(counts: &[u64], j: usize) -> u64 {
    counts.get(j).copied().unwrap_or(0)
}

/// Size of the symmetric difference between the level's vertex set and
/// `V_k union V_{k-1}`.
fn level_class_mismatch(arr: &Arrangement, level: &arrangement::Level, k: usize) -> u128 {
    let mut expected: std::collections::BTreeSet<usize> = arr.class(k).into_iter().collect();
    if k > 0 {
        expected.extend(arr.class(k - 1));
    }
    let actual = level.vertex_set();
    (expected.symmetric_difference(&actual).count()) as u128
}

/// Adjacent piece pairs whose slopes fail to strictly decrease.
fn concavity_defects(arr: &Arrangement, cs: &ChainSet) -> u128 {
    let mut defects = 0u128;
    for chain in &cs.chains {
        for w in chain.pieces.windows(2) {
            if arr.lines[w[0].line].a <= arr.lines[w[1].line].a {
                defects += 1;
            }
        }
    }
    defects
}

/// Deviations of the chains' turn multiset from "each `V_{k-1}` vertex
/// exactly once": duplicated turns plus the symmetric difference against the
/// class.
fn turn_partition_defects(arr: &Arrangement, cs: &ChainSet, k: usize) -> u128 {
    let mut all: Vec<usize> = cs
        .chains
        .iter()
        .flat_map(|c| c.turns.iter().copied())
        .collect();
    let total = all.len();
    all.sort_unstable();
    all.dedup();
    let dupes = total - all.len();
    let turns: std::collections::BTreeSet<usize> = all.into_iter().collect();
    let class: std::collections::BTreeSet<usize> = arr.class(k - 1).into_iter().collect();
    (dupes + turns.symmetric_difference(&class).count()) as u128
}

/// Edges below the k-level must be covered by exactly one chain piece; edges
/// on or above it by none.
fn edge_cover_defects(arr: &Arrangement, edges: &[ArrEdge], cs: &ChainSet, k: usize) -> u128 {
    let vx = |vi: usize| &arr.vertices[vi].location.x;
    let mut defects = 0u128;
    for e in edges {
        let covering = cs
            .chains
            .iter()
            .flat_map(|c| c.pieces.iter())
            .filter(|p| {
                p.line == e.line
                    && match (&p.from, e.from) {
                        (None, _) => true,
                        (Some(_), None) => false,
                        (Some(a), Some(v)) => a <= vx(v),
                    }
                    && match (&p.to, e.to) {
                        (None, _) => true,
                        (Some(_), None) => false,
                        (Some(b), Some(v)) => b >= vx(v),
                    }
            })
            .count();
        let qualifying = e.below < k;
        if (qualifying && covering != 1) || (!qualifying && covering != 0) {
            defects += 1;
        }
    }
    defects
}

/// Runs the whole pipeline on one `(instance, k)`.
pub fn verify_instance(inst: &Instance, k: usize) -> Result<Report, Error> {
    Pipeline::new(inst.clone()).report(k)
}

/// Which k values a sweep verifies per generated instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KChoice {
    One(usize),
    All,
}

#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub n: usize,
    pub k: KChoice,
    pub trials: u64,
    pub seed: u64,
    pub shape: Shape,
    pub range: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub trial: u64,
    pub n: u64,
    pub k: u64,
    pub t: u64,
    pub x: u64,
    pub bound_ok: bool,
}

/// Aggregated sweep outcome. Deterministic for a fixed seed; `failures` is
/// empty on a correct build. Failed verdicts and per-trial errors land there
/// without aborting the sweep: counterexample hunts must keep going.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub trials: u64,
    pub seed: u64,
    pub records: Vec<TrialRecord>,
    pub max_t: u64,
    /// Largest single-side k-set count seen.
    pub max_ksets_directed: u64,
    /// Largest above+below k-set total seen.
    pub max_ksets_total: u64,
    pub easy_case_count: u64,
    pub lemma_applicable_count: u64,
    pub failures: Vec<String>,
}

impl SweepSummary {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("summary serialization cannot fail")
    }
}

struct TrialOutcome {
    records: Vec<TrialRecord>,
    failures: Vec<String>,
    max_t: u64,
    max_ksets_directed: u64,
    max_ksets_total: u64,
    easy_case_count: u64,
    lemma_applicable_count: u64,
}

fn run_trial(cfg: &SweepConfig, trial: u64) -> TrialOutcome {
    let mut out = TrialOutcome {
        records: Vec::new(),
        failures: Vec::new(),
        max_t: 0,
        max_ksets_directed: 0,
        max_ksets_total: 0,
        easy_case_count: 0,
        lemma_applicable_count: 0,
    };
    let spec = GenSpec {
        shape: cfg.shape,
        n: cfg.n,
        range: cfg.range,
        seed: generate::trial_seed(cfg.seed, trial),
    };
    let inst = match generate::generate_instance(&spec) {
        Ok(inst) => inst,
        Err(e) => {
            out.failures
                .push(format!("trial {trial}: generation skipped: {e}"));
            return out;
        }
    };
    let pipeline = Pipeline::new(inst);
    let ks: Vec<usize> = match cfg.k {
        KChoice::One(k) => vec![k],
        KChoice::All => (1..cfg.n).collect(),
    };
    for k in ks {
        match pipeline.report(k) {
            Ok(report) => {
                out.records.push(TrialRecord {
                    trial,
                    n: report.n,
                    k: report.k,
                    t: report.t,
                    x: report.x,
                    bound_ok: report.bound_ok,
                });
                out.max_t = out.max_t.max(report.t);
                out.max_ksets_directed = out
                    .max_ksets_directed
                    .max(report.ksets_above.max(report.ksets_below));
                out.max_ksets_total = out
                    .max_ksets_total
                    .max(report.ksets_above + report.ksets_below);
                if report.easy_case {
                    out.easy_case_count += 1;
                } else {
                    out.lemma_applicable_count += 1;
                }
                for v in report.verdicts.iter().filter(|v| !v.holds) {
                    out.failures.push(format!(
                        "trial {trial}, k={k}: verdict {} failed ({} vs {})",
                        v.name, v.lhs, v.rhs
                    ));
                }
            }
            Err(e) => out.failures.push(format!("trial {trial}, k={k}: {e}")),
        }
    }
    out
}

/// Generates and verifies `trials` instances. Trials are independent and may
/// run concurrently; aggregation is in trial order, so a fixed seed gives a
/// byte-identical summary.
pub fn sweep(cfg: &SweepConfig) -> SweepSummary {
    let outcomes = par::map_range(cfg.trials as usize, |trial| run_trial(cfg, trial as u64));
    let mut summary = SweepSummary {
        trials: cfg.trials,
        seed: cfg.seed,
        records: Vec::new(),
        max_t: 0,
        max_ksets_directed: 0,
        max_ksets_total: 0,
        easy_case_count: 0,
        lemma_applicable_count: 0,
        failures: Vec::new(),
    };
    for out in outcomes {
        summary.records.extend(out.records);
        summary.failures.extend(out.failures);
        summary.max_t = summary.max_t.max(out.max_t);
        summary.max_ksets_directed = summary.max_ksets_directed.max(out.max_ksets_directed);
        summary.max_ksets_total = summary.max_ksets_total.max(out.max_ksets_total);
        summary.easy_case_count += out.easy_case_count;
        summary.lemma_applicable_count += out.lemma_applicable_count;
    }
    summary
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::Point;

    fn q4() -> Instance {
        Instance::new(vec![
            Point::from_ints(0, 0),
            Point::from_ints(4, 0),
            Point::from_ints(2, 3),
            Point::from_ints(1, 1),
        ])
        .unwrap()
    }

    #[test]
    fn q4_k2_report() {
        let report = verify_instance(&q4(), 2).unwrap();
        assert_eq!(report.t, 3);
        assert_eq!(report.x, 0);
        assert_eq!(report.tangents, 0);
        assert_eq!(report.chain_crossings, 2);
        assert_eq!(report.below_level, 5);
        assert_eq!(report.nk, 8);
        assert_eq!(report.ksets_above, 4);
        assert_eq!(report.ksets_below, 4);
        assert!(report.easy_case);
        assert!(report.bound_ok); // 27 <= 64 * 64 * 2
        assert!(report.all_hold(), "verdicts: {:?}", report.verdicts);
    }

    #[test]
    fn q4_k1_report() {
        let report = verify_instance(&q4(), 1).unwrap();
        assert_eq!(report.t, 2);
        assert_eq!(report.chain_crossings, 0);
        assert_eq!(report.ksets_above, 3);
        assert_eq!(report.ksets_below, 2);
        assert!(report.all_hold());
    }

    #[test]
    fn q4_k3_report() {
        let report = verify_instance(&q4(), 3).unwrap();
        assert_eq!(report.t, 1);
        assert_eq!(report.ksets_above, 2);
        assert_eq!(report.below_level, 6);
        assert_eq!(report.nk, 12);
        assert!(report.all_hold());
    }

    #[test]
    fn bad_k_is_an_error() {
        assert!(matches!(verify_instance(&q4(), 0), Err(Error::BadK { .. })));
        assert!(matches!(verify_instance(&q4(), 4), Err(Error::BadK { .. })));
    }

    #[test]
    fn report_json_round_trips() {
        let report = verify_instance(&q4(), 2).unwrap();
        let json = report.to_json();
        let back: Report = serde_json::from_str(&json).unwrap();
        assert_eq!(report, back);
    }

    #[test]
    fn empty_sweep() {
        let cfg = SweepConfig {
            n: 6,
            k: KChoice::All,
            trials: 0,
            seed: 1,
            shape: Shape::Uniform,
            range: 100,
        };
        let summary = sweep(&cfg);
        assert!(summary.records.is_empty() && summary.failures.is_empty());
    }

    #[test]
    fn sweep_is_deterministic() {
        let cfg = SweepConfig {
            n: 7,
            k: KChoice::All,
            trials: 5,
            seed: 42,
            shape: Shape::Uniform,
            range: 50,
        };
        let a = sweep(&cfg);
        let b = sweep(&cfg);
        assert_eq!(a.to_json(), b.to_json());
        assert!(a.failures.is_empty(), "failures: {:?}", a.failures);
    }
}
