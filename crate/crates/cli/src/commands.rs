use std::fmt::Display;
use std::fs;
use std::path::Path;
use std::time::Duration;

use edfn::closed::{closed_curve, default_grid, uniform_grid};
use edfn::crg::CrgJson;
use edfn::embedding::{embeds, EmbedOptions};
use edfn::graph::GraphJson;
use edfn::maxpoint::power_cycle_max_point;
use edfn::qp::GValueJson;
use edfn::rational::{fmt_q, parse_q, qi, to_f64, Q};
use edfn::spectrum::{
    clique_spectrum_auto, gamma_curve, power_cycle_spectrum, CliqueSpectrum, SpectrumSample,
};
use edfn::verify::{self, Suite, VerifyConfig};
use edfn::{g_value, Crg, Graph, Mode, PowerCycleParams};
use serde::de::DeserializeOwned;
use serde_json::{json, Value};

use crate::{
    CurveArgs, EmbedArgs, Format, GArgs, GraphSource, Grid, MaxpointArgs, ModeArg, SpectrumArgs,
    SuiteArg, VerifyArgs,
};

/// Error reported as `{"error": kind, "message": ...}` on stderr.
#[derive(Debug)]
pub struct Failure {
    kind: &'static str,
    message: String,
}

impl Failure {
    pub fn io(path: impl AsRef<Path>, e: impl Display) -> Self {
        Failure {
            kind: "io",
            message: format!("{}: {e}", path.as_ref().display()),
        }
    }

    fn usage(message: impl Into<String>) -> Self {
        Failure {
            kind: "usage",
            message: message.into(),
        }
    }

    pub fn to_json(&self) -> String {
        json!({ "error": self.kind, "message": self.message }).to_string()
    }
}

impl From<edfn::Error> for Failure {
    fn from(e: edfn::Error) -> Self {
        Failure {
            kind: e.kind(),
            message: e.to_string(),
        }
    }
}

type Res<T> = Result<T, Failure>;

fn read_json<T: DeserializeOwned>(path: &Path) -> Res<T> {
    let text = fs::read_to_string(path).map_err(|e| Failure::io(path, e))?;
    serde_json::from_str(&text).map_err(|e| Failure {
        kind: "parse",
        message: format!("{}: {e}", path.display()),
    })
}

fn unit_p(s: &str) -> Res<Q> {
    let p = parse_q(s.trim())?;
    if p < qi(0) || p > qi(1) {
        return Err(edfn::Error::Domain(format!("p = {} is outside [0, 1]", fmt_q(&p))).into());
    }
    Ok(p)
}

/// Explicit list, `samples` points on `[p_min, p_max]`, or the fallback.
fn build_grid(grid: &Grid, fallback: impl FnOnce() -> Res<Vec<Q>>) -> Res<Vec<Q>> {
    if !grid.p.is_empty() {
        return grid.p.iter().map(|s| unit_p(s)).collect();
    }
    let Some(n) = grid.samples else {
        return fallback();
    };
    if n == 0 {
        return Err(Failure::usage("--samples must be at least 1"));
    }
    let lo = grid
        .p_min
        .as_deref()
        .map(unit_p)
        .transpose()?
        .unwrap_or_else(|| qi(0));
    let hi = grid
        .p_max
        .as_deref()
        .map(unit_p)
        .transpose()?
        .unwrap_or_else(|| qi(1));
    if lo > hi {
        return Err(Failure::usage("--p-min exceeds --p-max"));
    }
    Ok(uniform_grid(n)
        .into_iter()
        .map(|u| &lo + (&hi - &lo) * u)
        .collect())
}

fn params(h: usize, t: usize) -> Res<PowerCycleParams> {
    Ok(PowerCycleParams::new(h, t)?)
}

fn f(v: &Q) -> String {
    to_f64(v).to_string()
}

fn json_line(v: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string(v).expect("serialisable");
    s.push('\n');
    s
}

pub fn curve(a: &CurveArgs) -> Res<String> {
    let pr = params(a.cycle.h, a.cycle.t)?;
    let grid = build_grid(&a.grid, || Ok(default_grid(&pr)?))?;
    let rows = closed_curve(&pr, &grid)?;
    let search: Option<Vec<SpectrumSample>> = if !a.no_search && pr.h <= a.bound {
        let spec = power_cycle_spectrum(&pr, a.bound)?;
        Some(gamma_curve(&spec, &grid)?)
    } else {
        None
    };
    if a.format == Format::Json {
        let samples: Vec<Value> = rows
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut row = json!({
                    "p": fmt_q(&r.p),
                    "gamma_closed": fmt_q(&r.gamma_closed),
                    "ed_closed": r.ed_closed.as_ref().map(fmt_q),
                    "branch": r.branch.to_string(),
                    "covered": r.covered,
                });
                if let Some(s) = &search {
                    row["gamma"] = json!(fmt_q(&s[i].gamma));
                    row["branch_r"] = json!(s[i].branch.0);
                    row["branch_s"] = json!(s[i].branch.1);
                }
                row
            })
            .collect();
        return Ok(json_line(&json!({
            "h": pr.h,
            "t": pr.t,
            "ell": pr.ell,
            "chi": pr.chi,
            "p0": fmt_q(&pr.p0),
            "ed_h_range": rows.first().is_some_and(|r| r.ed_h_range),
            "samples": samples,
        })));
    }
    let mut out = String::from("p,gamma_closed,ed_closed,branch,covered");
    if search.is_some() {
        out.push_str(",gamma,branch_r,branch_s");
    }
    out.push_str(",p_float,gamma_closed_float,ed_closed_float\n");
    for (i, r) in rows.iter().enumerate() {
        let ed = r.ed_closed.as_ref();
        out.push_str(&format!(
            "{},{},{},{},{}",
            fmt_q(&r.p),
            fmt_q(&r.gamma_closed),
            ed.map(fmt_q).unwrap_or_default(),
            r.branch,
            r.covered
        ));
        if let Some(s) = &search {
            out.push_str(&format!(
                ",{},{},{}",
                fmt_q(&s[i].gamma),
                s[i].branch.0,
                s[i].branch.1
            ));
        }
        out.push_str(&format!(
            ",{},{},{}\n",
            f(&r.p),
            f(&r.gamma_closed),
            ed.map(f).unwrap_or_default()
        ));
    }
    Ok(out)
}

fn source_graph(src: &GraphSource) -> Res<(Graph, Option<PowerCycleParams>)> {
    match (src.h, src.t, &src.graph) {
        (Some(h), Some(t), None) => {
            let pr = params(h, t)?;
            Ok((pr.graph(), Some(pr)))
        }
        (None, None, Some(path)) => {
            let json: GraphJson = read_json(path)?;
            Ok((Graph::from_json(&json)?, None))
        }
        _ => Err(Failure::usage("give either --h and --t or --graph")),
    }
}

pub fn spectrum(a: &SpectrumArgs) -> Res<String> {
    let (g, pr) = source_graph(&a.source)?;
    let spec: CliqueSpectrum = match &pr {
        Some(pr) => power_cycle_spectrum(pr, a.bound)?,
        None => clique_spectrum_auto(&g, a.bound)?,
    };
    if a.format == Format::Json {
        return Ok(json_line(&spec.to_json()));
    }
    let grid = build_grid(&a.grid, || Ok(uniform_grid(201)))?;
    let mut out = String::from("p,gamma,branch_r,branch_s,p_float,gamma_float\n");
    for s in gamma_curve(&spec, &grid)? {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            fmt_q(&s.p),
            fmt_q(&s.gamma),
            s.branch.0,
            s.branch.1,
            f(&s.p),
            f(&s.gamma)
        ));
    }
    Ok(out)
}

pub fn g(a: &GArgs) -> Res<String> {
    let json: CrgJson = read_json(&a.crg)?;
    let k = Crg::from_json(&json)?;
    let p = unit_p(&a.p)?;
    let mode = match (a.mode, a.exact, a.numeric) {
        (Some(ModeArg::Numeric), _, _) | (None, _, true) => Mode::Numeric,
        _ => Mode::Exact,
    };
    let g = g_value(&k, &p, mode)?;
    Ok(json_line(&GValueJson::new(&p, &g)))
}

pub fn embed(a: &EmbedArgs) -> Res<String> {
    let (g, _) = source_graph(&a.source)?;
    let json: CrgJson = read_json(&a.crg)?;
    let k = Crg::from_json(&json)?;
    if !(a.timeout > 0.0 && a.timeout.is_finite()) {
        return Err(Failure::usage(
            "--timeout must be a positive number of seconds",
        ));
    }
    let opts = EmbedOptions {
        timeout: Duration::from_secs_f64(a.timeout),
        ..Default::default()
    };
    let w = embeds(&g, &k, opts)?;
    Ok(json_line(
        &json!({ "embeds": w.is_some(), "phi": w.map(|w| w.phi) }),
    ))
}

pub fn maxpoint(a: &MaxpointArgs) -> Res<String> {
    let pr = params(a.cycle.h, a.cycle.t)?;
    let m = power_cycle_max_point(&pr)?;
    Ok(json_line(&json!({
        "h": pr.h,
        "t": pr.t,
        "p_star": m.p_star,
        "d_star": m.d_star,
        "method": m.method,
    })))
}

pub fn verify(a: &VerifyArgs) -> Res<(String, bool)> {
    if !(a.timeout > 0.0 && a.timeout.is_finite()) {
        return Err(Failure::usage(
            "--timeout must be a positive number of seconds",
        ));
    }
    let cfg = VerifyConfig {
        suite: match a.suite {
            SuiteArg::All => Suite::All,
            SuiteArg::Facts => Suite::Facts,
            SuiteArg::Lemma1 => Suite::Lemma1,
            SuiteArg::Theorem1 => Suite::Theorem1,
            SuiteArg::Weights => Suite::Weights,
        },
        h_max: a.h_max,
        t_max: a.t_max,
        seed: a.seed,
        corpus_size: a.corpus_size,
        embed_timeout: Duration::from_secs_f64(a.timeout),
        ..Default::default()
    };
    let report = verify::run(&cfg)?;
    Ok((json_line(&report), report.passed))
}

#[cfg(test)]
mod tests {
    use super::*;
    use edfn::rational::q;

    fn grid(p: &[&str], samples: Option<usize>) -> Grid {
        Grid {
            p: p.iter().map(|s| s.to_string()).collect(),
            samples,
            p_min: None,
            p_max: None,
        }
    }

    #[test]
    fn grids() {
        assert_eq!(
            build_grid(&grid(&["1/2", "0.25"], None), || unreachable!()).unwrap(),
            vec![q(1, 2), q(1, 4)]
        );
        assert_eq!(
            build_grid(&grid(&[], Some(3)), || unreachable!()).unwrap(),
            vec![qi(0), q(1, 2), qi(1)]
        );
        assert!(build_grid(&grid(&["3/2"], None), || unreachable!()).is_err());
        assert!(build_grid(&grid(&[], Some(0)), || unreachable!()).is_err());
    }
}
