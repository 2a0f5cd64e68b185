//! Text and JSON rendering. Numbers are plain decimals with 12 significant
//! digits; entropy changes below the conservation tolerance print as 0.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;

use anyhow::{Context, Result};
use serde_json::{json, Value};
use spinboost::entanglement::CONSERVATION_TOL;
use spinboost::sweep::{format_sig, round_sig};
use spinboost::{
    CompositeState, EntanglementChange, ExportFormat, Extremum, NamedState, Parametrization, PartitionSelector,
    WeightBasis,
};

pub fn fmt_num(x: f64) -> String {
    format_sig(x)
}

pub fn fmt_delta(x: f64) -> String {
    format_sig(snap(x))
}

/// Matrix entries and amplitudes below `1e-12` print as 0.
pub fn fmt_amplitude(x: f64) -> String {
    format_sig(snap_amp(x))
}

fn snap(x: f64) -> f64 {
    if x.abs() < CONSERVATION_TOL {
        0.0
    } else {
        x
    }
}

/// Rounded JSON number; amplitudes below `1e-12` become 0.
fn num(x: f64) -> Value {
    json!(round_sig(snap_amp(x)))
}

pub trait Emit {
    fn emit(&self, out: Option<&Path>) -> Result<()>;
}

impl Emit for String {
    fn emit(&self, out: Option<&Path>) -> Result<()> {
        match out {
            Some(path) => std::fs::write(path, self).with_context(|| format!("writing {}", path.display())),
            None => match std::io::stdout().write_all(self.as_bytes()) {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
                _ => Ok(()),
            },
        }
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

pub fn json_matrix(rows: &[Vec<f64>]) -> String {
    let v: Vec<Vec<Value>> = rows.iter().map(|r| r.iter().map(|&x| num(x)).collect()).collect();
    pretty(&json!(v)).trim_end().to_string()
}

fn momentum_label(i: usize) -> &'static str {
    ["+", "-"][i]
}

pub fn composite(psi: &CompositeState, format: ExportFormat) -> String {
    let spin = psi.spin();
    let d = spin.dim();
    let m = spin.m_values();
    let mut rows = Vec::new();
    for ap in 0..2 {
        for a in 0..d {
            for bp in 0..2 {
                for b in 0..d {
                    let z = psi.vector().amplitudes()[CompositeState::index(spin, ap, a, bp, b)];
                    if z.norm() > 1e-12 {
                        rows.push((ap, m[a], bp, m[b], z));
                    }
                }
            }
        }
    }
    match format {
        ExportFormat::Csv => {
            let mut s = String::from("p_A,m_A,p_B,m_B,re,im\n");
            for (ap, ma, bp, mb, z) in rows {
                let _ = writeln!(
                    s,
                    "{},{},{},{},{},{}",
                    momentum_label(ap),
                    fmt_num(ma),
                    momentum_label(bp),
                    fmt_num(mb),
                    fmt_amplitude(z.re),
                    fmt_amplitude(z.im)
                );
            }
            s
        }
        ExportFormat::Json => {
            let v: Vec<Value> = rows
                .into_iter()
                .map(|(ap, ma, bp, mb, z)| {
                    json!({
                        "momentum": [momentum_label(ap), momentum_label(bp)],
                        "spin": [ma, mb],
                        "amplitude": [num(z.re), num(z.im)],
                    })
                })
                .collect();
            pretty(&json!({ "j": spin.to_string(), "amplitudes": v }))
        }
    }
}

fn snap_amp(x: f64) -> f64 {
    if x.abs() < 1e-12 {
        0.0
    } else {
        x
    }
}

pub fn entropy(
    selector: &PartitionSelector,
    labels: &[String],
    change: &EntanglementChange,
    format: ExportFormat,
) -> String {
    let deltas = change.per_block();
    match format {
        ExportFormat::Csv => {
            let mut s = format!("partition,{selector}\nblock,before,after,delta_E\n");
            for (b, label) in labels.iter().enumerate() {
                let _ = writeln!(
                    s,
                    "{label},{},{},{}",
                    fmt_delta(change.before.per_block[b]),
                    fmt_delta(change.after.per_block[b]),
                    fmt_delta(deltas[b])
                );
            }
            let _ = writeln!(
                s,
                "total,{},{},{}",
                fmt_delta(change.before.total),
                fmt_delta(change.after.total),
                fmt_delta(change.total())
            );
            s
        }
        ExportFormat::Json => {
            let r = |x: f64| json!(round_sig(snap(x)));
            let blocks: Vec<Value> = labels
                .iter()
                .enumerate()
                .map(|(b, label)| {
                    json!({
                        "block": label,
                        "before": r(change.before.per_block[b]),
                        "after": r(change.after.per_block[b]),
                        "delta_E": r(deltas[b]),
                    })
                })
                .collect();
            pretty(&json!({
                "partition": selector.to_string(),
                "blocks": blocks,
                "before": r(change.before.total),
                "after": r(change.after.total),
                "delta_E": r(change.total()),
            }))
        }
    }
}

/// Key of the named state at this parameter point, if any.
fn identify(param: Parametrization, chi: f64, e: &Extremum, named: &[NamedState]) -> Option<&'static str> {
    let s = param.state(e.theta, e.phi, chi);
    named.iter().find(|n| n.state().fidelity(&s) > 1.0 - 1e-8).map(|n| n.key)
}

pub fn extrema(
    param: Parametrization,
    chi: f64,
    found: &[Extremum],
    named: &[NamedState],
    format: ExportFormat,
) -> String {
    let kind = |e: &Extremum| match e.kind {
        spinboost::ExtremumKind::Max => "max",
        spinboost::ExtremumKind::Min => "min",
    };
    match format {
        ExportFormat::Csv => {
            let mut s = String::from("kind,theta,phi,delta_E,state\n");
            for e in found {
                let _ = writeln!(
                    s,
                    "{},{},{},{},{}",
                    kind(e),
                    fmt_num(e.theta),
                    fmt_num(e.phi),
                    fmt_delta(e.value),
                    identify(param, chi, e, named).unwrap_or("")
                );
            }
            s
        }
        ExportFormat::Json => {
            let v: Vec<Value> = found
                .iter()
                .map(|e| {
                    json!({
                        "kind": kind(e),
                        "theta": round_sig(e.theta),
                        "phi": round_sig(e.phi),
                        "delta_E": round_sig(snap(e.value)),
                        "state": identify(param, chi, e, named),
                    })
                })
                .collect();
            pretty(&json!(v))
        }
    }
}

pub fn invariant_basis(basis: &WeightBasis) -> String {
    let spin = basis.spin();
    let m = spin.m_values();
    let d = spin.dim();
    let labels: Vec<[f64; 2]> = (0..d * d).map(|k| [m[k / d], m[k % d]]).collect();
    let vectors: Vec<Value> = basis
        .vectors()
        .iter()
        .map(|w| {
            let amps: Vec<Value> = w.vector.amplitudes().iter().map(|z| json!([num(z.re), num(z.im)])).collect();
            json!({ "m": w.m, "amplitudes": amps })
        })
        .collect();
    let weights: Vec<Value> = basis
        .weights()
        .into_iter()
        .map(|mm| json!({ "m": mm, "multiplicity": basis.subspace(mm).count() }))
        .collect();
    pretty(&json!({
        "j": spin.to_string(),
        "basis": labels,
        "weights": weights,
        "vectors": vectors,
    }))
}
