//! Dispatch and reporting behind the `hybridparam` binary: which scheme
//! runs for a problem and parameter, the brute-force oracle, and `bench`.

use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::bucket_ocean::{
    cvc_mod_fptas, cycpack_mod_fptas, ds_mod_fptas, mod_alpha, mod_fptas_vertex_deletion, ApproxResult, BaseSolver,
    BruteBySize, ExactBase, LossyBase, SelfReducingBySize,
};
use crate::decomp::{htd_from_modulator, FamilyPredicate, TreeDecomposition, tree_decomposition_for, HTreeDecomposition};
use crate::domset::twh_fptas_ds;
use crate::error::{Error, Result};
use crate::gen::{generate, ManifestEntry, Param, Planted};
use crate::graph::{Graph, VertexSet};
use crate::problem::{Problem, ProblemInstance, Solution};
use crate::solvers::{brute_opt, td_dp_opt};
use crate::twh::{default_packing_exact, default_tw_exact, eta_modulated_fptas, twh_alpha, twh_fptas_is, twh_fptas_packing};

/// Environment variable capping `bench` workers.
pub const THREADS_ENV: &str = "HYBRIDPARAM_THREADS";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Engine {
    Brute,
    TdDp,
}

/// Family assumed for a modulator file without an `f` line.
pub fn default_family(problem: &Problem) -> FamilyPredicate {
    match problem {
        Problem::VertexCover | Problem::DominatingSet { .. } | Problem::ConnectedVertexCover => FamilyPredicate::Forests,
        _ => FamilyPredicate::TwAtMost(2),
    }
}

/// Whether `approx` offers a scheme for the combination.
pub fn supported(problem: &Problem, param: Param, alpha: bool) -> bool {
    let vertex_deletion = matches!(problem, Problem::VertexCover | Problem::FeedbackVertexSet);
    if alpha {
        return vertex_deletion;
    }
    match problem {
        Problem::VertexCover | Problem::FeedbackVertexSet | Problem::IndependentSet => true,
        Problem::DominatingSet { dominated } => dominated.is_empty(),
        Problem::CyclePacking | Problem::MinorPacking { .. } | Problem::SubgraphPacking { .. } => true,
        Problem::ConnectedVertexCover => param == Param::Mod,
        _ => false,
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct ApproxOptions {
    pub alpha: Option<f64>,
    /// Slack of a [`LossyBase`] replacing the exact base solver.
    pub lossy: Option<f64>,
}

/// Structural parameter handed to `approx`.
#[derive(Clone, Debug, PartialEq)]
pub enum Structure {
    Modulator { m: VertexSet, family: FamilyPredicate },
    Htd(HTreeDecomposition),
}

impl From<Planted> for Structure {
    fn from(p: Planted) -> Self {
        match p {
            Planted::Modulator { m, family } => Structure::Modulator { m, family },
            Planted::Htd(d) => Structure::Htd(d),
        }
    }
}

fn as_htd(g: &Graph, s: &Structure) -> Result<HTreeDecomposition> {
    match s {
        Structure::Htd(d) => Ok(d.clone()),
        Structure::Modulator { m, family } => htd_from_modulator(g, m, *family),
    }
}

/// Runs the scheme for `problem` under `param`. Problems without a
/// dedicated modulator scheme (independent set, minor packing) run the
/// decomposition scheme on the modulator's decomposition.
pub fn approx(
    g: &Graph,
    problem: &Problem,
    param: Param,
    structure: &Structure,
    eps: f64,
    opts: ApproxOptions,
) -> Result<ApproxResult> {
    if !supported(problem, param, opts.alpha.is_some()) {
        return Err(Error::Unsupported(format!("no {param} scheme for {problem}")));
    }
    let lossy = opts.lossy.map(LossyBase::new).transpose()?;
    let base: &dyn BaseSolver = match &lossy {
        Some(l) => l,
        None => &ExactBase,
    };
    let alpha_base = opts.alpha.map(LossyBase::with_alpha).transpose()?;
    let modulator = match (param, structure) {
        (Param::Mod, Structure::Modulator { m, family }) => Some((m, *family)),
        (Param::Mod, Structure::Htd(_)) => {
            return Err(Error::Precondition("the mod parameter needs a modulator".into()))
        }
        _ => None,
    };
    if let Some((m, family)) = modulator {
        match problem {
            Problem::VertexCover | Problem::FeedbackVertexSet => {
                return match &alpha_base {
                    Some(a) => mod_alpha(g, m, family, problem, eps, a, &SelfReducingBySize),
                    None => mod_fptas_vertex_deletion(g, m, family, problem, eps, base, &SelfReducingBySize),
                }
            }
            Problem::CyclePacking => return cycpack_mod_fptas(g, m, family, eps, base, &BruteBySize),
            Problem::DominatingSet { .. } => return ds_mod_fptas(g, m, family, eps, base),
            Problem::ConnectedVertexCover => return cvc_mod_fptas(g, m, family, eps, base, &BruteBySize),
            _ => {}
        }
    }
    let d = as_htd(g, structure)?;
    match problem {
        Problem::VertexCover | Problem::FeedbackVertexSet => {
            let eta = usize::from(*problem == Problem::FeedbackVertexSet);
            let tr = match &alpha_base {
                Some(a) => twh_alpha(g, &d, problem, eps, a, &default_tw_exact)?,
                None => eta_modulated_fptas(g, &d, problem, eps, eta, base, &default_tw_exact)?,
            };
            Ok(tr.result)
        }
        Problem::IndependentSet => Ok(twh_fptas_is(g, &d, eps, base, &default_tw_exact)?.result),
        Problem::DominatingSet { .. } => {
            let family = d.family;
            let scheme = |h: &Graph, m: &VertexSet, e: f64| ds_mod_fptas(h, m, family, e, base);
            Ok(twh_fptas_ds(g, &d, eps, &scheme)?.result)
        }
        p if p.is_packing() => Ok(twh_fptas_packing(g, &d, p, eps, base, &default_packing_exact)?.result),
        p => Err(Error::Unsupported(format!("no {param} scheme for {p}"))),
    }
}

/// Exact optimum by brute force, `None` beyond its caps or when infeasible.
pub fn oracle(inst: &ProblemInstance) -> Option<usize> {
    brute_opt(inst).ok().map(|(v, _)| v)
}

/// `alg / opt`; `1` when both are zero, `None` without an optimum or when
/// only the optimum is zero.
pub fn ratio(alg: usize, opt: Option<usize>) -> Option<f64> {
    match opt? {
        0 if alg == 0 => Some(1.0),
        0 => None,
        o => Some(alg as f64 / o as f64),
    }
}

pub fn solve(inst: &ProblemInstance, engine: Engine, td: Option<&TreeDecomposition>) -> Result<(usize, Solution)> {
    match engine {
        Engine::Brute => brute_opt(inst),
        Engine::TdDp => match td {
            Some(td) => td_dp_opt(inst, td),
            None => td_dp_opt(inst, &tree_decomposition_for(&inst.graph)),
        },
    }
}

/// Witness as 1-based labels: `1 3`, or tuples joined by ` | `.
pub fn format_solution(sol: &Solution) -> String {
    let labels = |s: &VertexSet| s.iter().map(|v| (v + 1).to_string()).collect::<Vec<_>>().join(" ");
    match sol {
        Solution::Vertices(s) => labels(s),
        Solution::Packing(p) => p.tuples.iter().map(|t| labels(&t.vertices)).collect::<Vec<_>>().join(" | "),
    }
}

pub fn solution_json(sol: &Solution) -> Value {
    let labels = |s: &VertexSet| s.iter().map(|v| v + 1).collect::<Vec<_>>();
    match sol {
        Solution::Vertices(s) => json!(labels(s)),
        Solution::Packing(p) => json!(p.tuples.iter().map(|t| labels(&t.vertices)).collect::<Vec<_>>()),
    }
}

/// One line of a `bench` report.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReportRow {
    pub instance: String,
    pub problem: String,
    pub param: String,
    pub eps: f64,
    pub alg_value: usize,
    pub opt_value: Option<usize>,
    pub ratio: Option<f64>,
    pub case: String,
    pub time_ms: u64,
    pub seed: u64,
}

/// Worker cap from [`THREADS_ENV`], if set to a positive number.
pub fn thread_cap() -> Option<usize> {
    std::env::var(THREADS_ENV).ok()?.trim().parse().ok().filter(|&t| t > 0)
}

fn bench_one(entry: &ManifestEntry, eps: f64) -> Result<ReportRow> {
    let inst = generate(&entry.spec, entry.seed)?;
    let start = Instant::now();
    let structure: Structure = inst.planted.clone().into();
    let r = approx(&inst.graph, &inst.problem, inst.param, &structure, eps, ApproxOptions::default())?;
    let time_ms = start.elapsed().as_millis() as u64;
    let opt = oracle(&ProblemInstance::new(inst.graph.clone(), inst.problem.clone())?);
    Ok(ReportRow {
        instance: format!("{}-{}", entry.spec, entry.seed),
        problem: inst.problem.name().to_string(),
        param: inst.param.to_string(),
        eps,
        alg_value: r.value(),
        opt_value: opt,
        ratio: ratio(r.value(), opt),
        case: r.case.to_string(),
        time_ms,
        seed: entry.seed,
    })
}

/// Every manifest entry at every `ε`, in manifest order then `ε` order.
pub fn bench(entries: &[ManifestEntry], eps_list: &[f64], threads: Option<usize>) -> Result<Vec<ReportRow>> {
    let jobs: Vec<(&ManifestEntry, f64)> = entries.iter().flat_map(|e| eps_list.iter().map(move |&x| (e, x))).collect();
    let run = || jobs.par_iter().map(|(e, x)| bench_one(e, *x)).collect::<Result<Vec<_>>>();
    match threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| Error::Internal(format!("thread pool: {e}")))?
            .install(run),
        None => run(),
    }
}

fn cell<T: ToString>(v: Option<T>) -> String {
    v.map_or_else(|| "-".to_string(), |x| x.to_string())
}

pub fn report_tsv(rows: &[ReportRow]) -> String {
    let mut out = String::from("instance\tproblem\tparam\teps\talg_value\topt_value\tratio\tcase\ttime_ms\tseed\n");
    for r in rows {
        out.push_str(&format!(
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\n",
            r.instance,
            r.problem,
            r.param,
            r.eps,
            r.alg_value,
            cell(r.opt_value),
            cell(r.ratio.map(|x| format!("{x:.4}"))),
            r.case,
            r.time_ms,
            r.seed
        ));
    }
    out
}

pub fn report_json(rows: &[ReportRow]) -> String {
    serde_json::to_string_pretty(rows).expect("report serializes")
}

/// Report with every `time_ms` zeroed, for comparing runs.
pub fn without_time(rows: &[ReportRow]) -> Vec<ReportRow> {
    rows.iter().cloned().map(|r| ReportRow { time_ms: 0, ..r }).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;

    #[test]
    fn ratios() {
        assert_eq!(ratio(3, Some(2)), Some(1.5));
        assert_eq!(ratio(0, Some(0)), Some(1.0));
        assert_eq!(ratio(1, Some(0)), None);
        assert_eq!(ratio(1, None), None);
    }

    #[test]
    fn dispatch_covers_matrix() {
        let g = wheel(6);
        let m: VertexSet = [0, 6].into();
        let s = Structure::Modulator {
            m: m.clone(),
            family: FamilyPredicate::Forests,
        };
        for p in [Problem::VertexCover, Problem::FeedbackVertexSet, Problem::IndependentSet, Problem::dominating_set(), Problem::CyclePacking, Problem::ConnectedVertexCover] {
            for param in [Param::Mod, Param::Twh] {
                if !supported(&p, param, false) {
                    continue;
                }
                let r = approx(&g, &p, param, &s, 0.5, ApproxOptions::default()).unwrap();
                let inst = ProblemInstance::new(g.clone(), p.clone()).unwrap();
                assert!(crate::problem::verify_solution(&inst, &r.solution).unwrap(), "{p} {param}");
            }
        }
        let alpha = ApproxOptions {
            alpha: Some(2.0),
            lossy: None,
        };
        assert!(approx(&g, &Problem::VertexCover, Param::Twh, &s, 0.5, alpha).is_ok());
        assert!(approx(&g, &Problem::IndependentSet, Param::Mod, &s, 0.5, alpha).is_err());
    }

    #[test]
    fn bench_is_ordered_and_repeatable() {
        let entries = vec![
            ManifestEntry { seed: 1, spec: "vc-mod".into() },
            ManifestEntry { seed: 2, spec: "ds-twh".into() },
        ];
        let a = bench(&entries, &[0.5, 0.2], Some(2)).unwrap();
        assert_eq!(a.len(), 4);
        assert_eq!(a[0].instance, "vc-mod-1");
        assert_eq!(a[1].eps, 0.2);
        let b = bench(&entries, &[0.5, 0.2], Some(1)).unwrap();
        assert_eq!(without_time(&a), without_time(&b));
        let v: Value = serde_json::from_str(&report_json(&a)).unwrap();
        let keys: Vec<&String> = v[0].as_object().unwrap().keys().collect();
        assert_eq!(keys.len(), 10);
    }
}
