//! Monte Carlo harness over sampled CGA graphs.
//!
//! Trials run in parallel but every report is keyed by `(H, trial)` and
//! emitted in that order, so output does not depend on the worker count.

mod config;
mod csv;

use std::time::Instant;

use rand::Rng;
use rayon::prelude::*;
use statrs::function::factorial::ln_binomial;

use crate::bounds::{expected_internal_edges, m_star, sparse_set_bound, LogValue};
use crate::cluster::{event_report, internal_edge_count, is_externally_sparse, ClusterSpec};
use crate::error::{CgaError, Result};
use crate::generator::{expected_edge_count, sample_distinct, sample_graph};
use crate::graph::Graph;
use crate::rng::stream_rng;
use crate::search::{binomial, for_each_subset_starting_at};
use crate::tree::{TreeParams, VertexSet};

pub use config::{
    ExperimentConfig, Measurements, Placement, SetTemplate, DEFAULT_EXHAUSTIVE_LIMIT, DEFAULT_MAX_N,
    DEFAULT_TREND_SAMPLES,
};
pub use csv::{write_events_csv, write_sweep_csv, write_trend_csv, write_xs_csv, SWEEP_HEADER};

// Stream ids for harness randomness; generator streams stay below 2^46.
const PLACEMENT_STREAM: u64 = 1 << 63;
const TREND_STREAM: u64 = 1 << 62;

/// Successes out of trials, with the binomial standard error.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Rate {
    pub count: u64,
    pub total: u64,
}

impl Rate {
    pub fn rate(&self) -> f64 {
        if self.total == 0 {
            f64::NAN
        } else {
            self.count as f64 / self.total as f64
        }
    }

    pub fn stderr(&self) -> f64 {
        let r = self.rate();
        (r * (1.0 - r) / self.total as f64).sqrt()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct EventTally {
    pub dense: usize,
    pub e1: usize,
    pub e2: usize,
    pub e3: usize,
    /// Sets with `D`, `E1`, `E2` and `E3` together.
    pub all: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct XsTally {
    pub sum: u64,
    pub sum_sq: u64,
}

/// Tallies over the `n / b^h` complete sets of one height in one trial.
/// Measurements that were not requested stay `None`.
#[derive(Clone, Debug, PartialEq)]
pub struct HeightTally {
    pub h: u32,
    pub sets: usize,
    pub h_star_used: u32,
    pub cliques: Option<usize>,
    pub dense_complete: Option<usize>,
    pub complete_clusters: Option<usize>,
    pub events: Option<EventTally>,
    pub xs: Option<XsTally>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TrialReport {
    pub trial: usize,
    pub tree_height: u32,
    pub seed: u64,
    pub n: usize,
    pub edges: usize,
    pub heights: Vec<HeightTally>,
    pub wall_ms: Option<f64>,
}

fn trial_graph(cfg: &ExperimentConfig, p: &TreeParams, trial: usize) -> Result<Graph> {
    sample_graph(p, cfg.trial_seed(p.height(), trial), cfg.directed())
}

fn max_internal_edges(k: usize, directed: bool) -> usize {
    if directed {
        k * (k - 1)
    } else {
        k * (k - 1) / 2
    }
}

/// Rough elementary-step count for scanning all complete sets of one
/// height: every vertex and every stored adjacency entry once.
fn scan_cost(p: &TreeParams) -> u128 {
    p.n() as u128 + (4.0 * expected_edge_count(p)).ceil() as u128
}

fn tree_params_all(cfg: &ExperimentConfig) -> Result<Vec<TreeParams>> {
    cfg.validate()?;
    cfg.tree_heights.clone().map(|h| cfg.tree_params(h)).collect()
}

fn tally_height(cfg: &ExperimentConfig, g: &Graph, h: u32) -> Result<HeightTally> {
    let p = g.params();
    let h_star = cfg.resolved_hstar(p, h)?;
    let size = p.pow(h);
    let clique = max_internal_edges(size, g.is_directed());
    let want_events = cfg.measure.clusters || cfg.measure.events;
    let want_xs = cfg.measure.clusters || cfg.measure.xs;
    let (mut cliques, mut ev, mut xs) = (0, EventTally::default(), XsTally::default());
    for k in 0..p.block_count(h) {
        let m = VertexSet::complete(k * size, h, p)?;
        if want_events {
            let r = event_report(&m, g, &cfg.spec, h_star)?;
            ev.dense += usize::from(r.dense);
            ev.e1 += usize::from(r.e1);
            ev.e2 += usize::from(r.e2);
            ev.e3 += usize::from(r.e3);
            ev.all += usize::from(r.is_cluster());
        }
        if want_xs {
            let x = internal_edge_count(&m, g);
            cliques += usize::from(x == clique);
            xs.sum += x as u64;
            xs.sum_sq += (x * x) as u64;
        }
    }
    let clusters = cfg.measure.clusters;
    Ok(HeightTally {
        h,
        sets: p.block_count(h),
        h_star_used: h_star,
        cliques: clusters.then_some(cliques),
        dense_complete: clusters.then_some(ev.dense),
        complete_clusters: clusters.then_some(ev.all),
        events: cfg.measure.events.then_some(ev),
        xs: cfg.measure.xs.then_some(xs),
    })
}

/// One report per `(H, trial)`, ordered by `H` then trial index.
pub fn run_threshold_sweep(cfg: &ExperimentConfig) -> Result<Vec<TrialReport>> {
    let params = tree_params_all(cfg)?;
    for p in &params {
        for &h in &cfg.scan_heights {
            if h > p.height() {
                return Err(CgaError::domain(format!("height h={h} exceeds H={}", p.height())));
            }
            let cost = scan_cost(p);
            if cost > cfg.budget {
                return Err(CgaError::Budget {
                    context: format!("sweep at H={} height h={h}", p.height()),
                    cost,
                    budget: cfg.budget,
                });
            }
        }
    }
    let jobs: Vec<(&TreeParams, usize)> = params
        .iter()
        .flat_map(|p| (0..cfg.trials).map(move |i| (p, i)))
        .collect();
    jobs.into_par_iter()
        .map(|(p, trial)| {
            let start = Instant::now();
            let g = trial_graph(cfg, p, trial)?;
            let heights = cfg
                .scan_heights
                .iter()
                .map(|&h| tally_height(cfg, &g, h))
                .collect::<Result<Vec<_>>>()?;
            Ok(TrialReport {
                trial,
                tree_height: p.height(),
                seed: g.seed(),
                n: p.n(),
                edges: g.edge_count(),
                heights,
                wall_ms: cfg.timing.then(|| start.elapsed().as_secs_f64() * 1e3),
            })
        })
        .collect()
}

/// Empirical event frequencies for one tree height.
#[derive(Clone, Debug, PartialEq)]
pub struct EventEstimate {
    pub tree_height: u32,
    pub n: usize,
    pub template: SetTemplate,
    pub h_star_used: u32,
    pub trials: usize,
    pub dense: Rate,
    pub e1: Rate,
    pub e2: Rate,
    pub e3: Rate,
    pub all: Rate,
}

fn check_template(t: &SetTemplate, b: usize) -> Result<()> {
    let cap = b.checked_pow(t.height).unwrap_or(usize::MAX);
    let lower = if t.height == 0 { 0 } else { b.pow(t.height - 1) };
    let ok = t.size >= 1
        && t.size <= cap
        && match t.placement {
            Placement::Complete => t.size == cap,
            Placement::Leftmost => t.size > lower,
            Placement::Random => t.height == 0 || t.size >= 2,
        };
    if ok {
        Ok(())
    } else {
        Err(CgaError::domain(format!(
            "no {} set of size {} has height {} when b={b}",
            t.placement, t.size, t.height
        )))
    }
}

/// Places one set inside the height-`h_star` block starting at `root`.
fn place<R: Rng>(t: &SetTemplate, p: &TreeParams, root: usize, h_star: u32, rng: &mut R) -> Result<VertexSet> {
    match t.placement {
        Placement::Complete => VertexSet::complete(root, t.height, p),
        Placement::Leftmost => VertexSet::new((root..root + t.size).collect(), p),
        Placement::Random => {
            let width = p.pow(t.height);
            let sub = rng.random_range(0..p.pow(h_star - t.height));
            let base = root + sub * width;
            loop {
                let members = sample_distinct(width as u64, t.size as u64, rng)
                    .into_iter()
                    .map(|x| base + x as usize)
                    .collect();
                let m = VertexSet::new(members, p)?;
                if m.height() == t.height {
                    return Ok(m);
                }
            }
        }
    }
}

/// Places one set per complete height-`h*` block in every trial and
/// tallies `D`, `E1`, `E2`, `E3`.
pub fn estimate_event_probs(cfg: &ExperimentConfig, template: &SetTemplate) -> Result<Vec<EventEstimate>> {
    check_template(template, cfg.b)?;
    let params = tree_params_all(cfg)?;
    let mut out = Vec::with_capacity(params.len());
    for p in &params {
        if template.height > p.height() {
            return Err(CgaError::domain(format!(
                "template height {} exceeds H={}",
                template.height,
                p.height()
            )));
        }
        let h_star = cfg.resolved_hstar(p, template.height)?;
        let cost = scan_cost(p);
        if cost > cfg.budget {
            return Err(CgaError::Budget {
                context: format!("event estimate at H={} height h={}", p.height(), template.height),
                cost,
                budget: cfg.budget,
            });
        }
        let blocks = p.block_count(h_star);
        let per_trial = (0..cfg.trials)
            .into_par_iter()
            .map(|trial| {
                let g = trial_graph(cfg, p, trial)?;
                let mut rng = stream_rng(g.seed(), PLACEMENT_STREAM);
                let mut ev = EventTally::default();
                for k in 0..blocks {
                    let m = place(template, p, k * p.pow(h_star), h_star, &mut rng)?;
                    let r = event_report(&m, &g, &cfg.spec, h_star)?;
                    ev.dense += usize::from(r.dense);
                    ev.e1 += usize::from(r.e1);
                    ev.e2 += usize::from(r.e2);
                    ev.e3 += usize::from(r.e3);
                    ev.all += usize::from(r.is_cluster());
                }
                Ok(ev)
            })
            .collect::<Result<Vec<_>>>()?;
        let total = (cfg.trials * blocks) as u64;
        let rate = |f: fn(&EventTally) -> usize| Rate {
            count: per_trial.iter().map(|e| f(e) as u64).sum(),
            total,
        };
        out.push(EventEstimate {
            tree_height: p.height(),
            n: p.n(),
            template: *template,
            h_star_used: h_star,
            trials: cfg.trials,
            dense: rate(|e| e.dense),
            e1: rate(|e| e.e1),
            e2: rate(|e| e.e2),
            e3: rate(|e| e.e3),
            all: rate(|e| e.all),
        });
    }
    Ok(out)
}

/// Search results for one set size `m < m*`.
#[derive(Clone, Debug, PartialEq)]
pub struct SizeTrend {
    pub m: usize,
    /// Every `m`-subset was checked. Otherwise the candidates are all
    /// `m`-subsets of the smallest complete subtrees that fit them plus
    /// `trend_samples` uniform random subsets.
    pub exhaustive: bool,
    pub candidates_per_trial: u128,
    /// Trials in which some size-`m` candidate was externally sparse.
    pub any: Rate,
    /// Fraction of all `m`-subsets that were sparse; exhaustive runs only.
    pub per_set: Option<Rate>,
    pub per_set_bound: LogValue,
    /// `C(n, m)` times the per-set bound.
    pub union_bound: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TrendPoint {
    pub tree_height: u32,
    pub n: usize,
    pub m_star: f64,
    /// Trials in which any size below `m*` had a sparse candidate.
    pub any: Rate,
    pub sizes: Vec<SizeTrend>,
}

struct SizeSearch {
    m: usize,
    exhaustive: bool,
    candidates: u128,
    local_height: u32,
}

fn plan_search(cfg: &ExperimentConfig, p: &TreeParams, m: usize) -> Result<SizeSearch> {
    let all = binomial(p.n() as u128, m as u128);
    let local_height = (0..=p.height()).find(|&h| p.pow(h) >= m).expect("m < n");
    let (exhaustive, candidates) = if all <= cfg.exhaustive_limit {
        (true, all)
    } else {
        let per_block = binomial(p.pow(local_height) as u128, m as u128);
        let local = per_block.saturating_mul(p.block_count(local_height) as u128);
        (false, local.saturating_add(cfg.trend_samples as u128))
    };
    let cost = candidates
        .saturating_mul(m as u128)
        .saturating_mul(cfg.trials as u128)
        .saturating_add(cfg.trials as u128 * scan_cost(p));
    if cost > cfg.budget {
        return Err(CgaError::Budget {
            context: format!("sparse-set search at H={} size m={m}", p.height()),
            cost,
            budget: cfg.budget,
        });
    }
    Ok(SizeSearch {
        m,
        exhaustive,
        candidates,
        local_height,
    })
}

/// Number of externally sparse candidates for one size in one graph.
fn search_size(cfg: &ExperimentConfig, g: &Graph, plan: &SizeSearch) -> Result<u64> {
    let p = g.params();
    let spec: &ClusterSpec = &cfg.spec;
    let mut hits = 0u64;
    let mut check = |members: Vec<usize>| -> Result<()> {
        let set = VertexSet::new(members, p)?;
        hits += u64::from(is_externally_sparse(&set, g, spec));
        Ok(())
    };
    let mut visit = |span: usize, base: usize| -> Result<()> {
        let mut res = Ok(());
        for first in 0..span {
            for_each_subset_starting_at(span, plan.m, first, |s| {
                if res.is_ok() {
                    res = check(s.iter().map(|&x| base + x).collect());
                }
            });
        }
        res
    };
    if plan.exhaustive {
        visit(p.n(), 0)?;
    } else {
        let width = p.pow(plan.local_height);
        for k in 0..p.block_count(plan.local_height) {
            visit(width, k * width)?;
        }
        let mut rng = stream_rng(g.seed(), TREND_STREAM | plan.m as u64);
        for _ in 0..cfg.trend_samples {
            let members = sample_distinct(p.n() as u64, plan.m as u64, &mut rng)
                .into_iter()
                .map(|x| x as usize)
                .collect();
            check(members)?;
        }
    }
    Ok(hits)
}

/// Frequency of externally sparse sets of every size `m < m*`, per `H`,
/// next to the analytic per-set and union bounds.
pub fn trend_sparse_below_mstar(cfg: &ExperimentConfig) -> Result<Vec<TrendPoint>> {
    let alpha = cfg.spec.alpha().to_f64();
    let ms = m_star(alpha, cfg.b, cfg.c)?;
    if ms <= 1.0 {
        return Err(CgaError::domain(format!(
            "m*={ms} leaves no set size below it to test"
        )));
    }
    let sizes: Vec<usize> = (1..).take_while(|&m| (m as f64) < ms).collect();
    let params = tree_params_all(cfg)?;
    let mut out = Vec::with_capacity(params.len());
    for p in &params {
        let plans = sizes
            .iter()
            .filter(|&&m| m < p.n())
            .map(|&m| plan_search(cfg, p, m))
            .collect::<Result<Vec<_>>>()?;
        let per_trial = (0..cfg.trials)
            .into_par_iter()
            .map(|trial| {
                let g = trial_graph(cfg, p, trial)?;
                plans.iter().map(|plan| search_size(cfg, &g, plan)).collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let trials = cfg.trials as u64;
        let sizes = plans
            .iter()
            .enumerate()
            .map(|(i, plan)| {
                let any = per_trial.iter().filter(|hits| hits[i] > 0).count() as u64;
                let bound = sparse_set_bound(plan.m as u64, alpha, p)?;
                let ln_sets = ln_binomial(p.n() as u64, plan.m as u64);
                Ok(SizeTrend {
                    m: plan.m,
                    exhaustive: plan.exhaustive,
                    candidates_per_trial: plan.candidates,
                    any: Rate { count: any, total: trials },
                    per_set: plan.exhaustive.then(|| Rate {
                        count: per_trial.iter().map(|hits| hits[i]).sum(),
                        total: (plan.candidates as u64).saturating_mul(trials),
                    }),
                    per_set_bound: bound,
                    union_bound: (ln_sets + bound.ln).exp(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let any = per_trial.iter().filter(|hits| hits.iter().any(|&x| x > 0)).count() as u64;
        out.push(TrendPoint {
            tree_height: p.height(),
            n: p.n(),
            m_star: ms,
            any: Rate { count: any, total: trials },
            sizes,
        });
    }
    Ok(out)
}

/// Internal edge counts over all complete height-`h` sets of all trials.
#[derive(Clone, Debug, PartialEq)]
pub struct XsSummary {
    pub tree_height: u32,
    pub n: usize,
    pub h: u32,
    pub trials: usize,
    pub sets: u64,
    pub mean: f64,
    /// Pooled sample variance.
    pub variance: f64,
    pub stderr: f64,
    pub expected: f64,
}

pub fn xs_statistics(cfg: &ExperimentConfig, h: u32) -> Result<Vec<XsSummary>> {
    let params = tree_params_all(cfg)?;
    let mut out = Vec::with_capacity(params.len());
    for p in &params {
        if h > p.height() {
            return Err(CgaError::domain(format!("height h={h} exceeds H={}", p.height())));
        }
        let size = p.pow(h);
        let tallies = (0..cfg.trials)
            .into_par_iter()
            .map(|trial| {
                let g = trial_graph(cfg, p, trial)?;
                let mut t = XsTally::default();
                for k in 0..p.block_count(h) {
                    let x = internal_edge_count(&VertexSet::complete(k * size, h, p)?, &g) as u64;
                    t.sum += x;
                    t.sum_sq += x * x;
                }
                Ok(t)
            })
            .collect::<Result<Vec<_>>>()?;
        let sets = (cfg.trials * p.block_count(h)) as u64;
        let sum: u64 = tallies.iter().map(|t| t.sum).sum();
        let sum_sq: u64 = tallies.iter().map(|t| t.sum_sq).sum();
        let mean = sum as f64 / sets as f64;
        let variance = if sets > 1 {
            (sum_sq as f64 - sets as f64 * mean * mean) / (sets - 1) as f64
        } else {
            0.0
        };
        let mut expected = expected_internal_edges(h, p)?;
        if cfg.directed() {
            expected *= 2.0;
        }
        out.push(XsSummary {
            tree_height: p.height(),
            n: p.n(),
            h,
            trials: cfg.trials,
            sets,
            mean,
            variance,
            stderr: (variance / sets as f64).sqrt(),
            expected,
        });
    }
    Ok(out)
}
