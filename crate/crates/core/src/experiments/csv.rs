//! CSV emission. Each file opens with the `# key=value` config echo, then
//! a header row. Unmeasured values are empty fields.

use std::io::{self, Write};

use super::{EventEstimate, ExperimentConfig, Rate, TrendPoint, TrialReport, XsSummary};

pub const SWEEP_HEADER: &str = "trial,seed,b,H,c,alpha,beta,epsilon,h,n,cliques,dense_complete,\
complete_clusters,e1_rate,e2_rate,e3_rate,d_rate,edges,xs_mean,wall_ms";

const EVENTS_HEADER: &str = "H,n,h,m,placement,h_star,trials,sets,d_rate,d_se,e1_rate,e1_se,\
e2_rate,e2_se,e3_rate,e3_se,all_rate,all_se";

const TREND_HEADER: &str = "H,n,m_star,m,exhaustive,candidates,trials,any_rate,any_se,\
size_any_rate,size_any_se,per_set_rate,per_set_se,per_set_bound,union_bound";

const XS_HEADER: &str = "H,n,h,trials,sets,mean,variance,stderr,expected";

fn opt<T: ToString>(x: Option<T>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

fn ratio(count: usize, total: usize) -> f64 {
    count as f64 / total as f64
}

fn rate_cols(r: &Rate) -> String {
    format!("{},{}", r.rate(), r.stderr())
}

pub fn write_sweep_csv<W: Write>(cfg: &ExperimentConfig, reports: &[TrialReport], mut w: W) -> io::Result<()> {
    w.write_all(cfg.echo_lines().as_bytes())?;
    writeln!(w, "{SWEEP_HEADER}")?;
    let (alpha, beta, eps) = (cfg.spec.alpha(), cfg.spec.beta(), cfg.epsilon());
    for r in reports {
        for t in &r.heights {
            let xs_mean = t.xs.map(|x| x.sum as f64 / t.sets as f64);
            let ev = t.events;
            writeln!(
                w,
                "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
                r.trial,
                r.seed,
                cfg.b,
                r.tree_height,
                cfg.c,
                alpha,
                beta,
                eps,
                t.h,
                r.n,
                opt(t.cliques),
                opt(t.dense_complete),
                opt(t.complete_clusters),
                opt(ev.map(|e| ratio(e.e1, t.sets))),
                opt(ev.map(|e| ratio(e.e2, t.sets))),
                opt(ev.map(|e| ratio(e.e3, t.sets))),
                opt(ev.map(|e| ratio(e.dense, t.sets))),
                r.edges,
                opt(xs_mean),
                opt(r.wall_ms),
            )?;
        }
    }
    Ok(())
}

pub fn write_events_csv<W: Write>(cfg: &ExperimentConfig, rows: &[EventEstimate], mut w: W) -> io::Result<()> {
    w.write_all(cfg.echo_lines().as_bytes())?;
    writeln!(w, "{EVENTS_HEADER}")?;
    for e in rows {
        writeln!(
            w,
            "{},{},{},{},{},{},{},{},{},{},{},{},{}",
            e.tree_height,
            e.n,
            e.template.height,
            e.template.size,
            e.template.placement,
            e.h_star_used,
            e.trials,
            e.all.total,
            rate_cols(&e.dense),
            rate_cols(&e.e1),
            rate_cols(&e.e2),
            rate_cols(&e.e3),
            rate_cols(&e.all),
        )?;
    }
    Ok(())
}

pub fn write_trend_csv<W: Write>(cfg: &ExperimentConfig, rows: &[TrendPoint], mut w: W) -> io::Result<()> {
    w.write_all(cfg.echo_lines().as_bytes())?;
    writeln!(w, "{TREND_HEADER}")?;
    for t in rows {
        for s in &t.sizes {
            writeln!(
                w,
                "{},{},{},{},{},{},{},{},{},{},{},{},{}",
                t.tree_height,
                t.n,
                t.m_star,
                s.m,
                u8::from(s.exhaustive),
                s.candidates_per_trial,
                t.any.total,
                rate_cols(&t.any),
                rate_cols(&s.any),
                opt(s.per_set.map(|r| r.rate())),
                opt(s.per_set.map(|r| r.stderr())),
                s.per_set_bound.value,
                s.union_bound,
            )?;
        }
    }
    Ok(())
}

pub fn write_xs_csv<W: Write>(cfg: &ExperimentConfig, rows: &[XsSummary], mut w: W) -> io::Result<()> {
    w.write_all(cfg.echo_lines().as_bytes())?;
    writeln!(w, "{XS_HEADER}")?;
    for x in rows {
        writeln!(
            w,
            "{},{},{},{},{},{},{},{},{}",
            x.tree_height, x.n, x.h, x.trials, x.sets, x.mean, x.variance, x.stderr, x.expected
        )?;
    }
    Ok(())
}
