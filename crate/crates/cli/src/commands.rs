use std::sync::Arc;
use std::time::Duration;

use chipfire::bounds::{bounds_report, BoundsInput};
use chipfire::certificates::{bramble_order, scramble_order_with, treecut_width, Certificate};
use chipfire::dhar::{dollar_game, q_reduce_traced, rank_with};
use chipfire::gonality::{gonality_with, Budget, GonalityOptions, Strategy};
use chipfire::parking::verify_bijection;
use chipfire::{burn, generators, Divisor, Exec, Multigraph};
use serde_json::{json, Value};

use crate::{input, CliError};

pub enum Output {
    Json(Value),
    Text(String),
}

fn to_json<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("engine types serialize")
}

pub struct GonalityArgs {
    pub budget_secs: Option<f64>,
    pub max_candidates: Option<u64>,
    pub raw: bool,
    pub rank: u64,
    pub exec: Exec,
}

pub fn gonality(g: &Arc<Multigraph>, args: &GonalityArgs) -> Result<Output, CliError> {
    if args.rank == 0 {
        return Err(CliError::Input("--rank must be at least 1".into()));
    }
    let max_time = match args.budget_secs {
        Some(s) if !(s.is_finite() && s > 0.0) => return Err(CliError::Input("--budget must be positive".into())),
        Some(s) => Some(Duration::from_secs_f64(s)),
        None => None,
    };
    let opts = GonalityOptions {
        rank: args.rank,
        budget: Budget {
            max_nodes: args.max_candidates,
            max_time,
        },
        strategy: if args.raw { Strategy::Raw } else { Strategy::Reduced },
        exec: args.exec,
        ..GonalityOptions::default()
    };
    let r = gonality_with(g, &opts)?;
    let mut out = to_json(&r);
    out["witness"] = json!(r.winning_divisor.pretty());
    out["genus"] = json!(g.genus()?);
    Ok(Output::Json(out))
}

pub fn rank(d: &Divisor, exec: Exec) -> Result<Output, CliError> {
    let r = rank_with(d, exec)?;
    Ok(Output::Json(json!({
        "divisor": d.pretty(),
        "degree": d.degree(),
        "rank": r.rank,
        "witness": r.witness,
        "witness_pretty": r.witness.pretty(),
    })))
}

pub fn dhar(d: &Divisor, q: usize) -> Result<Output, CliError> {
    let out = burn(d, q)?;
    let mut v = to_json(&out);
    v["all_burned"] = json!(out.all_burned());
    Ok(Output::Json(v))
}

pub fn reduce(d: &Divisor, q: usize) -> Result<Output, CliError> {
    let r = q_reduce_traced(d, q)?;
    let mut v = to_json(&r);
    v["pretty"] = json!(r.reduced.pretty());
    Ok(Output::Json(v))
}

pub fn winnable(d: &Divisor, q: Option<usize>) -> Result<Output, CliError> {
    let q = match q {
        Some(q) => q,
        None => (0..d.graph().vertex_count()).find(|&v| d.get(v) < 0).unwrap_or(0),
    };
    let (won, reduction) = dollar_game(d, q)?;
    Ok(Output::Json(json!({
        "winnable": won,
        "q": q,
        "reduced": reduction.reduced,
        "reduced_pretty": reduction.reduced.pretty(),
        "script": reduction.script,
        "steps": reduction.steps,
    })))
}

pub fn certify(g: &Arc<Multigraph>, cert: &Certificate, exec: Exec) -> Result<Output, CliError> {
    let v = match cert {
        Certificate::Scramble(s) => {
            let o = scramble_order_with(s, exec)?;
            json!({
                "type": "scramble",
                "eggs": s.eggs().len(),
                "hitting_number": o.hitting_number,
                "egg_cut": o.egg_cut,
                "order": o.order,
                "bound": {
                    "gonality_at_least": o.order,
                    "theorem": "scramble number bounds gonality from below",
                },
            })
        }
        Certificate::Bramble(b) => {
            let h = bramble_order(b)?;
            let tw = h.size.saturating_sub(1);
            json!({
                "type": "bramble",
                "sets": b.sets().len(),
                "order": h.size,
                "hitting_set": h.set,
                "bound": {
                    "gonality_at_least": tw,
                    "theorem": "treewidth (at least order - 1) bounds gonality from below",
                },
            })
        }
        Certificate::TreeCut(t) => {
            let w = treecut_width(t, g)?;
            json!({
                "type": "treecut",
                "width": w.width,
                "links": w.links,
                "nodes": w.nodes,
                "bound": {
                    "scramble_number_at_most": w.width,
                    "theorem": "tree-cut width bounds the scramble number from above",
                },
            })
        }
    };
    Ok(Output::Json(v))
}

pub fn bounds(g: &Arc<Multigraph>, input: &BoundsInput, exec: Exec) -> Result<Output, CliError> {
    let r = bounds_report(g, input, exec)?;
    let mut v = to_json(&r);
    v["tight"] = json!(r.is_tight());
    Ok(Output::Json(v))
}

pub fn parking(n: usize, exec: Exec) -> Result<Output, CliError> {
    Ok(Output::Json(to_json(&verify_bijection(n, exec)?)))
}

pub fn generate(family: &str, size: Option<usize>, dot: bool) -> Result<Output, CliError> {
    let g = generators::by_name(family, size)?;
    Ok(if dot {
        Output::Text(g.to_dot())
    } else {
        Output::Json(to_json(&g.to_json()))
    })
}

pub fn load_bounds_input(g: &Arc<Multigraph>, certs: &[String], witnesses: &[String]) -> Result<BoundsInput, CliError> {
    Ok(BoundsInput {
        certificates: certs
            .iter()
            .map(|c| input::certificate(g, c))
            .collect::<Result<_, _>>()?,
        witnesses: witnesses
            .iter()
            .map(|w| input::divisor(g, w))
            .collect::<Result<_, _>>()?,
        product: None,
    })
}
