//! Table emitters. CSV columns are fixed and documented per command;
//! rationals are serialized as "num/den" strings so nothing is rounded at
//! the boundary; tolerances from the run configuration are echoed into
//! every report.

use num_rational::BigRational;
use serde_json::{json, Value};

use crate::config::RunConfig;
use crate::hessian::CurveCensus;
use crate::moments::{BridgeReport, DistributionReport, MomentReport};

pub fn rational_str(x: &BigRational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

#[derive(Debug, Clone)]
pub struct ClassnumRow {
    pub d: i64,
    pub h: u64,
    pub hurwitz: BigRational,
    pub hurwitz_star: BigRational,
}

#[derive(Debug, Clone)]
pub struct CheckRow {
    pub name: String,
    pub pass: bool,
}

fn config_comment(cfg: &RunConfig) -> String {
    format!(
        "# config km2={} km4={} km6={} ks={} threads={}",
        cfg.km2, cfg.km4, cfg.km6, cfg.ks, cfg.threads
    )
}

fn config_json(cfg: &RunConfig) -> Value {
    json!({
        "km2": cfg.km2,
        "km4": cfg.km4,
        "km6": cfg.km6,
        "ks": cfg.ks,
        "threads": cfg.threads,
        "q_cap": cfg.q_cap,
    })
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map_or_else(String::new, T::to_string)
}

pub fn moments_csv(cfg: &RunConfig, rows: &[MomentReport]) -> String {
    let mut out = String::new();
    out.push_str(&config_comment(cfg));
    out.push_str("\nq,r,m,direct,classnum,scaled,target,abs_error\n");
    for row in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            row.q,
            row.r,
            row.m,
            opt(&row.direct),
            row.classnum_side.as_ref().map_or_else(String::new, rational_str),
            opt(&row.scaled),
            rational_str(&row.target),
            opt(&row.abs_error),
        ));
    }
    out
}

fn moment_row_json(row: &MomentReport) -> Value {
    json!({
        "q": row.q,
        "r": row.r,
        "m": row.m,
        "direct": row.direct.as_ref().map(|d| d.to_string()),
        "classnum": row.classnum_side.as_ref().map(rational_str),
        "scaled": row.scaled,
        "target": rational_str(&row.target),
        "abs_error": row.abs_error,
    })
}

pub fn moments_json(cfg: &RunConfig, rows: &[MomentReport]) -> Value {
    json!({
        "command": "moments",
        "config": config_json(cfg),
        "rows": rows.iter().map(moment_row_json).collect::<Vec<_>>(),
    })
}

pub fn distribution_csv(cfg: &RunConfig, rep: &DistributionReport) -> String {
    let mut out = String::new();
    out.push_str(&format!("# q={} ks={}\n", rep.q, rep.ks));
    out.push_str(&config_comment(cfg));
    out.push_str("\nbin_lo,bin_hi,count,ecdf,scdf\n");
    for row in &rep.rows {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            row.bin_lo, row.bin_hi, row.count, row.ecdf, row.scdf
        ));
    }
    out
}

pub fn distribution_json(cfg: &RunConfig, rep: &DistributionReport) -> Value {
    json!({
        "command": "distribution",
        "config": config_json(cfg),
        "q": rep.q,
        "ks": rep.ks,
        "pass": rep.ks <= cfg.ks,
        "rows": rep.rows.iter().map(|row| json!({
            "bin_lo": row.bin_lo,
            "bin_hi": row.bin_hi,
            "count": row.count,
            "ecdf": row.ecdf,
            "scdf": row.scdf,
        })).collect::<Vec<_>>(),
    })
}

pub fn bridge_csv(cfg: &RunConfig, rep: &BridgeReport) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "# q={} checked={} mismatches={}\n",
        rep.q,
        rep.rows.len(),
        rep.mismatches
    ));
    out.push_str(&config_comment(cfg));
    out.push_str("\nlam,lifted,trace\n");
    for row in &rep.rows {
        out.push_str(&format!("{},{},{}\n", row.lam, row.lifted, row.trace));
    }
    out
}

pub fn bridge_json(cfg: &RunConfig, rep: &BridgeReport) -> Value {
    json!({
        "command": "bridge",
        "config": config_json(cfg),
        "q": rep.q,
        "checked": rep.rows.len(),
        "mismatches": rep.mismatches,
        "pass": rep.mismatches == 0,
        "rows": rep.rows.iter().map(|row| json!({
            "lam": row.lam,
            "lifted": row.lifted,
            "trace": row.trace,
        })).collect::<Vec<_>>(),
    })
}

pub fn classnum_csv(cfg: &RunConfig, rows: &[ClassnumRow]) -> String {
    let mut out = String::new();
    out.push_str(&config_comment(cfg));
    out.push_str("\nd,h,hurwitz,hurwitz_star\n");
    for row in rows {
        out.push_str(&format!(
            "{},{},{},{}\n",
            row.d,
            row.h,
            rational_str(&row.hurwitz),
            rational_str(&row.hurwitz_star)
        ));
    }
    out
}

pub fn classnum_json(cfg: &RunConfig, rows: &[ClassnumRow]) -> Value {
    json!({
        "command": "classnum",
        "config": config_json(cfg),
        "rows": rows.iter().map(|row| json!({
            "d": row.d,
            "h": row.h,
            "hurwitz": rational_str(&row.hurwitz),
            "hurwitz_star": rational_str(&row.hurwitz_star),
        })).collect::<Vec<_>>(),
    })
}

pub fn census_csv(cfg: &RunConfig, census: &CurveCensus) -> String {
    let mut out = String::new();
    out.push_str(&format!("# q={} classes={}\n", census.q, census.classes.len()));
    out.push_str(&config_comment(cfg));
    out.push_str("\nrep_a,rep_b,size,j,trace,t3\n");
    for c in &census.classes {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            c.rep.0, c.rep.1, c.size, c.j, c.trace, c.t3
        ));
    }
    out
}

pub fn census_json(cfg: &RunConfig, census: &CurveCensus, checks: &[CheckRow]) -> Value {
    json!({
        "command": "census",
        "config": config_json(cfg),
        "q": census.q,
        "pass": checks.iter().all(|c| c.pass),
        "checks": checks.iter().map(|c| json!({"name": c.name, "pass": c.pass})).collect::<Vec<_>>(),
        "classes": census.classes.iter().map(|c| json!({
            "rep_a": c.rep.0,
            "rep_b": c.rep.1,
            "size": c.size,
            "j": c.j,
            "trace": c.trace,
            "t3": c.t3,
        })).collect::<Vec<_>>(),
    })
}

pub fn checks_csv(cfg: &RunConfig, checks: &[CheckRow]) -> String {
    let mut out = String::new();
    out.push_str(&config_comment(cfg));
    out.push_str("\ncheck,pass\n");
    for c in checks {
        out.push_str(&format!("{},{}\n", c.name, c.pass));
    }
    out
}

pub fn identities_json(cfg: &RunConfig, checks: &[CheckRow]) -> Value {
    json!({
        "command": "identities",
        "config": config_json(cfg),
        "pass": checks.iter().all(|c| c.pass),
        "checks": checks.iter().map(|c| json!({"name": c.name, "pass": c.pass})).collect::<Vec<_>>(),
    })
}

pub fn sweep_csv(cfg: &RunConfig, rows: &[MomentReport]) -> String {
    let mut out = String::new();
    out.push_str(&config_comment(cfg));
    out.push_str("\nq,r,m,scaled,target,abs_error\n");
    for row in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            row.q,
            row.r,
            row.m,
            opt(&row.scaled),
            rational_str(&row.target),
            opt(&row.abs_error),
        ));
    }
    out
}

pub fn sweep_json(cfg: &RunConfig, rows: &[MomentReport]) -> Value {
    json!({
        "command": "sweep",
        "config": config_json(cfg),
        "rows": rows.iter().map(|row| json!({
            "q": row.q,
            "r": row.r,
            "m": row.m,
            "scaled": row.scaled,
            "target": rational_str(&row.target),
            "abs_error": row.abs_error,
        })).collect::<Vec<_>>(),
    })
}
