//! Experiment configuration and its plain-text `key=value` file format.
//!
//! ```text
//! # threshold sweep
//! b=2
//! c=2
//! H=10..14
//! alpha=0.5
//! beta=0.5
//! trials=200
//! seed=1
//! heights=1,2,3
//! measure=clusters,events,xs
//! ```
//!
//! Unknown keys and repeated keys are errors. Every resolved setting,
//! defaults included, is echoed as `# key=value` at the top of each CSV.

use std::fmt::Write as _;
use std::ops::RangeInclusive;

use crate::bounds::threshold_heights;
use crate::cluster::{ClusterSpec, EdgeMode};
use crate::error::{CgaError, Result};
use crate::fraction::Fraction;
use crate::rng::derive_seed;
use crate::search::DEFAULT_WORK_BUDGET;
use crate::tree::TreeParams;

/// Default cap on `n`; larger trees need an explicit `max_n`.
pub const DEFAULT_MAX_N: usize = 1 << 22;
pub const DEFAULT_TREND_SAMPLES: usize = 1000;
pub const DEFAULT_EXHAUSTIVE_LIMIT: u128 = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Measurements {
    /// Clique, dense and complete-cluster counts.
    pub clusters: bool,
    /// D / E1 / E2 / E3 rates.
    pub events: bool,
    /// Internal edge counts `X_S`.
    pub xs: bool,
}

impl Default for Measurements {
    fn default() -> Self {
        Measurements {
            clusters: true,
            events: true,
            xs: true,
        }
    }
}

/// How [`estimate_event_probs`](super::estimate_event_probs) places one
/// set inside each complete height-`h*` block.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Placement {
    /// The leftmost complete height-`h` subtree; needs `m = b^h`.
    Complete,
    /// The first `m` leaves of the leftmost height-`h` subtree; needs
    /// `b^(h-1) < m <= b^h` so the set has height exactly `h`.
    Leftmost,
    /// A uniformly chosen height-`h` subtree and a uniform `m`-subset of
    /// it, redrawn until the set has height exactly `h`.
    Random,
}

impl std::str::FromStr for Placement {
    type Err = CgaError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "complete" => Ok(Placement::Complete),
            "leftmost" => Ok(Placement::Leftmost),
            "random" => Ok(Placement::Random),
            _ => Err(CgaError::domain(format!("unknown placement {s:?}"))),
        }
    }
}

impl std::fmt::Display for Placement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Placement::Complete => "complete",
            Placement::Leftmost => "leftmost",
            Placement::Random => "random",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SetTemplate {
    pub height: u32,
    pub size: usize,
    pub placement: Placement,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub b: usize,
    pub c: f64,
    /// Tree heights `H` to sweep.
    pub tree_heights: RangeInclusive<u32>,
    pub spec: ClusterSpec,
    /// `None` resolves to `min(0.1, ln c / (8 ln b))`.
    pub epsilon: Option<f64>,
    pub trials: usize,
    pub seed: u64,
    /// Complete-set heights `h` scanned per trial.
    pub scan_heights: Vec<u32>,
    pub measure: Measurements,
    /// Fixed integer `h*` for the E2/E3 split; `None` uses
    /// `max(h, floor(h*(n, epsilon)))`.
    pub hstar: Option<u32>,
    /// Record wall time per trial. Off by default so CSV output stays
    /// byte-reproducible.
    pub timing: bool,
    pub max_n: usize,
    pub budget: u128,
    pub template: Option<SetTemplate>,
    pub trend_samples: usize,
    pub exhaustive_limit: u128,
}

impl ExperimentConfig {
    pub fn new(b: usize, c: f64, tree_heights: RangeInclusive<u32>, spec: ClusterSpec) -> Self {
        ExperimentConfig {
            b,
            c,
            tree_heights,
            spec,
            epsilon: None,
            trials: 1,
            seed: 0,
            scan_heights: vec![1],
            measure: Measurements::default(),
            hstar: None,
            timing: false,
            max_n: DEFAULT_MAX_N,
            budget: DEFAULT_WORK_BUDGET,
            template: None,
            trend_samples: DEFAULT_TREND_SAMPLES,
            exhaustive_limit: DEFAULT_EXHAUSTIVE_LIMIT,
        }
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
            .unwrap_or_else(|| (self.c.ln() / (8.0 * (self.b as f64).ln())).min(0.1))
    }

    pub fn directed(&self) -> bool {
        self.spec.mode() == EdgeMode::DirectedOut
    }

    pub fn tree_params(&self, tree_height: u32) -> Result<TreeParams> {
        let p = TreeParams::new(self.b, tree_height, self.c)?;
        if p.n() > self.max_n {
            return Err(CgaError::Budget {
                context: format!("tree H={tree_height} has n={} above max_n", p.n()),
                cost: p.n() as u128,
                budget: self.max_n as u128,
            });
        }
        Ok(p)
    }

    /// Seed of trial `i` at tree height `H`:
    /// `derive_seed(master, (H << 32) | i)`.
    pub fn trial_seed(&self, tree_height: u32, trial: usize) -> u64 {
        derive_seed(self.seed, ((tree_height as u64) << 32) | trial as u64)
    }

    /// Integer `h*` used for sets of height `h`.
    pub fn resolved_hstar(&self, p: &TreeParams, h: u32) -> Result<u32> {
        let hs = match self.hstar {
            Some(hs) => hs,
            None => {
                let real = threshold_heights(p, self.epsilon())?.h_star;
                real.max(0.0).floor() as u32
            }
        };
        Ok(hs.max(h).min(p.height()))
    }

    pub fn validate(&self) -> Result<()> {
        TreeParams::new(self.b, 1, self.c)?;
        if self.tree_heights.is_empty() || *self.tree_heights.start() < 1 {
            return Err(CgaError::domain("tree height range must be nonempty and start at 1 or more"));
        }
        if self.trials < 1 {
            return Err(CgaError::domain("trials must be at least 1"));
        }
        if let Some(e) = self.epsilon {
            if !(e > 0.0 && e.is_finite()) {
                return Err(CgaError::domain(format!("epsilon={e} must be positive")));
            }
        }
        let lowest = *self.tree_heights.start();
        if let Some(&h) = self.scan_heights.iter().find(|&&h| h > lowest) {
            return Err(CgaError::domain(format!("scan height {h} exceeds tree height H={lowest}")));
        }
        Ok(())
    }

    /// `# key=value` lines for every resolved setting.
    pub fn echo_lines(&self) -> String {
        let mut out = String::new();
        let mut line = |k: &str, v: String| {
            let _ = writeln!(out, "# {k}={v}");
        };
        line("b", self.b.to_string());
        line("c", self.c.to_string());
        line("H", format!("{}..{}", self.tree_heights.start(), self.tree_heights.end()));
        line("alpha", self.spec.alpha().to_string());
        line("beta", self.spec.beta().to_string());
        line("mode", self.spec.mode().to_string());
        line("epsilon", self.epsilon().to_string());
        line("trials", self.trials.to_string());
        line("seed", self.seed.to_string());
        line("heights", join(&self.scan_heights));
        let mut measured = Vec::new();
        if self.measure.clusters {
            measured.push("clusters");
        }
        if self.measure.events {
            measured.push("events");
        }
        if self.measure.xs {
            measured.push("xs");
        }
        line("measure", measured.join(","));
        line("hstar", self.hstar.map_or_else(|| "auto".to_string(), |h| h.to_string()));
        line("timing", u8::from(self.timing).to_string());
        line("max_n", self.max_n.to_string());
        line("budget", self.budget.to_string());
        if let Some(t) = &self.template {
            line("template_height", t.height.to_string());
            line("template_size", t.size.to_string());
            line("placement", t.placement.to_string());
        }
        line("trend_samples", self.trend_samples.to_string());
        line("exhaustive_limit", self.exhaustive_limit.to_string());
        line("seed_derivation", "splitmix64(seed ^ splitmix64((H << 32) | trial))".to_string());
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut seen = std::collections::BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| CgaError::parse(i + 1, format!("expected key=value, got {line:?}")))?;
            let (k, v) = (k.trim().to_string(), v.trim().to_string());
            if seen.insert(k.clone(), (i + 1, v)).is_some() {
                return Err(CgaError::parse(i + 1, format!("repeated key {k:?}")));
            }
        }
        let take = |seen: &mut std::collections::BTreeMap<String, (usize, String)>, k: &str| seen.remove(k);
        let need = |seen: &mut std::collections::BTreeMap<String, (usize, String)>, k: &str| {
            take(seen, k).ok_or_else(|| CgaError::parse(0, format!("missing required key {k:?}")))
        };
        fn num<T: std::str::FromStr>((line, v): (usize, String), k: &str) -> Result<T> {
            v.parse()
                .map_err(|_| CgaError::parse(line, format!("invalid value {v:?} for {k}")))
        }

        let b: usize = num(need(&mut seen, "b")?, "b")?;
        let c: f64 = num(need(&mut seen, "c")?, "c")?;
        let (hline, hv) = need(&mut seen, "H")?;
        let tree_heights = match hv.split_once("..") {
            Some((lo, hi)) => num::<u32>((hline, lo.to_string()), "H")?..=num::<u32>((hline, hi.to_string()), "H")?,
            None => {
                let h = num::<u32>((hline, hv), "H")?;
                h..=h
            }
        };
        let alpha: Fraction = num(need(&mut seen, "alpha")?, "alpha")?;
        let beta: Fraction = num(need(&mut seen, "beta")?, "beta")?;
        let mode = match take(&mut seen, "mode") {
            Some(v) => num(v, "mode")?,
            None => EdgeMode::Undirected,
        };
        let mut cfg = ExperimentConfig::new(b, c, tree_heights, ClusterSpec::new(alpha, beta, mode)?);
        if let Some(v) = take(&mut seen, "epsilon") {
            cfg.epsilon = Some(num(v, "epsilon")?);
        }
        if let Some(v) = take(&mut seen, "trials") {
            cfg.trials = num(v, "trials")?;
        }
        if let Some(v) = take(&mut seen, "seed") {
            cfg.seed = num(v, "seed")?;
        }
        if let Some((line, v)) = take(&mut seen, "heights") {
            cfg.scan_heights = v
                .split(',')
                .map(|s| num((line, s.trim().to_string()), "heights"))
                .collect::<Result<_>>()?;
        }
        if let Some((line, v)) = take(&mut seen, "measure") {
            let mut m = Measurements {
                clusters: false,
                events: false,
                xs: false,
            };
            for item in v.split(',').map(str::trim).filter(|s| !s.is_empty()) {
                match item {
                    "clusters" => m.clusters = true,
                    "events" => m.events = true,
                    "xs" => m.xs = true,
                    _ => return Err(CgaError::parse(line, format!("unknown measurement {item:?}"))),
                }
            }
            cfg.measure = m;
        }
        if let Some((line, v)) = take(&mut seen, "hstar") {
            cfg.hstar = if v == "auto" { None } else { Some(num((line, v), "hstar")?) };
        }
        if let Some((line, v)) = take(&mut seen, "timing") {
            cfg.timing = match v.as_str() {
                "0" | "false" => false,
                "1" | "true" => true,
                _ => return Err(CgaError::parse(line, format!("invalid timing flag {v:?}"))),
            };
        }
        if let Some(v) = take(&mut seen, "max_n") {
            cfg.max_n = num(v, "max_n")?;
        }
        if let Some(v) = take(&mut seen, "budget") {
            cfg.budget = num(v, "budget")?;
        }
        let th = take(&mut seen, "template_height");
        let ts = take(&mut seen, "template_size");
        let tp = take(&mut seen, "placement");
        match (th, ts) {
            (Some(th), Some(ts)) => {
                cfg.template = Some(SetTemplate {
                    height: num(th, "template_height")?,
                    size: num(ts, "template_size")?,
                    placement: match tp {
                        Some(v) => num(v, "placement")?,
                        None => Placement::Complete,
                    },
                });
            }
            (None, None) if tp.is_none() => {}
            _ => {
                return Err(CgaError::parse(
                    0,
                    "template_height and template_size must be given together",
                ))
            }
        }
        if let Some(v) = take(&mut seen, "trend_samples") {
            cfg.trend_samples = num(v, "trend_samples")?;
        }
        if let Some(v) = take(&mut seen, "exhaustive_limit") {
            cfg.exhaustive_limit = num(v, "exhaustive_limit")?;
        }
        // echoed metadata, ignored on input
        take(&mut seen, "seed_derivation");
        if let Some((k, (line, _))) = seen.into_iter().next() {
            return Err(CgaError::parse(line, format!("unknown key {k:?}")));
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

fn join(xs: &[u32]) -> String {
    xs.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "\
# comment
b=2
c=2
H=8..10
alpha=0.5
beta=0.5
trials=3
seed=42
heights=1,2
measure=clusters,xs
";

    #[test]
    fn parses_sample() {
        let cfg = ExperimentConfig::parse(SAMPLE).unwrap();
        assert_eq!(cfg.tree_heights, 8..=10);
        assert_eq!(cfg.trials, 3);
        assert_eq!(cfg.scan_heights, vec![1, 2]);
        assert!(cfg.measure.clusters && !cfg.measure.events && cfg.measure.xs);
        assert_eq!(cfg.hstar, None);
        assert!(!cfg.timing);
    }

    #[test]
    fn echo_round_trips() {
        let cfg = ExperimentConfig::parse(SAMPLE).unwrap();
        let echoed: String = cfg
            .echo_lines()
            .lines()
            .map(|l| l.trim_start_matches("# ").to_string() + "\n")
            .collect();
        let again = ExperimentConfig::parse(&echoed).unwrap();
        // epsilon is now explicit, everything else identical
        assert_eq!(again.epsilon(), cfg.epsilon());
        assert_eq!(again.echo_lines(), cfg.echo_lines());
    }

    #[test]
    fn default_epsilon() {
        let cfg = ExperimentConfig::parse(SAMPLE).unwrap();
        assert_eq!(cfg.epsilon(), 0.1);
        let cfg = ExperimentConfig::parse(&SAMPLE.replace("c=2", "c=1.5")).unwrap();
        let expected = 1.5f64.ln() / (8.0 * 2f64.ln());
        assert_eq!(cfg.epsilon(), expected);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(ExperimentConfig::parse(&SAMPLE.replace("b=2", "b=1")).is_err());
        assert!(ExperimentConfig::parse(&SAMPLE.replace("trials=3", "trials=0")).is_err());
        assert!(ExperimentConfig::parse(&(SAMPLE.to_string() + "bogus=1\n")).is_err());
        assert!(ExperimentConfig::parse(&(SAMPLE.to_string() + "b=3\n")).is_err());
        assert!(ExperimentConfig::parse(&SAMPLE.replace("heights=1,2", "heights=1,9")).is_err());
        assert!(ExperimentConfig::parse(&SAMPLE.replace("alpha=0.5", "alpha=2")).is_err());
        assert!(ExperimentConfig::parse(&(SAMPLE.to_string() + "template_height=1\n")).is_err());
    }

    #[test]
    fn resolved_hstar_clamps() {
        let cfg = ExperimentConfig::parse(SAMPLE).unwrap();
        let p = TreeParams::new(2, 16, 2.0).unwrap();
        // (0.4) ln ln 65536 / ln 2 = 1.39
        assert_eq!(cfg.resolved_hstar(&p, 0).unwrap(), 1);
        assert_eq!(cfg.resolved_hstar(&p, 3).unwrap(), 3);
        let mut fixed = cfg.clone();
        fixed.hstar = Some(20);
        assert_eq!(fixed.resolved_hstar(&p, 1).unwrap(), 16);
    }

    #[test]
    fn max_n_guard() {
        let mut cfg = ExperimentConfig::parse(SAMPLE).unwrap();
        cfg.max_n = 512;
        assert!(cfg.tree_params(9).is_ok());
        assert!(matches!(cfg.tree_params(10), Err(CgaError::Budget { .. })));
    }
}
