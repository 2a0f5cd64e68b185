//! Parameter sweeps of the entanglement change over the spin families,
//! extremum search and surface export.

use std::f64::consts::{FRAC_PI_4, PI};
use std::fmt::Write as _;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize};

use crate::boost::BoostMap;
use crate::entanglement::{
    entanglement_change, linear_entropy, EntanglementChange, Partition, PartitionSelector, CONSERVATION_TOL,
};
use crate::error::{Error, Result};
use crate::kinematics::{wigner_angle, Angle, BoostSetup};
use crate::spin::SpinJ;
use crate::states::{composite_shape, compose, momentum_state, MomentumState, Parametrization, NORM_TOL};

/// Significant digits of every exported number.
pub const SIG_DIGITS: usize = 12;

/// Parses `0.5`, `pi`, `-pi/2`, `2pi/3`, `3*pi/8` or `π/4`.
pub fn parse_angle(s: &str) -> Result<Angle> {
    let s = s.trim();
    if let Ok(x) = s.parse::<f64>() {
        return Ok(x);
    }
    let bad = || Error::InvalidSweep(format!("cannot parse angle {s:?}"));
    let norm = s.to_ascii_lowercase().replace('π', "pi").replace(' ', "");
    let (num, den) = match norm.split_once('/') {
        Some((n, d)) => (n.to_string(), d.parse::<f64>().map_err(|_| bad())?),
        None => (norm.clone(), 1.0),
    };
    let num = match num.strip_suffix("pi") {
        Some(coef) => {
            let coef = coef.strip_suffix('*').unwrap_or(coef);
            let c = match coef {
                "" | "+" => 1.0,
                "-" => -1.0,
                c => c.parse::<f64>().map_err(|_| bad())?,
            };
            c * PI
        }
        None => num.parse::<f64>().map_err(|_| bad())?,
    };
    if den == 0.0 {
        return Err(bad());
    }
    Ok(num / den)
}

fn de_angle<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<f64, D::Error> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Raw {
        Num(f64),
        Text(String),
    }
    match Raw::deserialize(d)? {
        Raw::Num(x) => Ok(x),
        Raw::Text(s) => parse_angle(&s).map_err(serde::de::Error::custom),
    }
}

fn de_opt_angle<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Option<f64>, D::Error> {
    de_angle(d).map(Some)
}

fn de_range<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<[f64; 2], D::Error> {
    #[derive(Deserialize)]
    struct Wrap(#[serde(deserialize_with = "de_angle")] f64, #[serde(deserialize_with = "de_angle")] f64);
    let Wrap(a, b) = Wrap::deserialize(d)?;
    Ok([a, b])
}

fn default_alpha() -> f64 {
    FRAC_PI_4
}
fn default_theta_range() -> [f64; 2] {
    [0.0, PI]
}
fn default_phi_range() -> [f64; 2] {
    [0.0, 2.0 * PI]
}
fn default_points() -> usize {
    101
}

/// A rectangular `(θ, φ)` sweep of one spin family at fixed `α`, `Ω`, `χ`.
///
/// Angles in JSON may be numbers or expressions such as `"pi/2"`. The Wigner
/// angle is given either directly as `omega` or through `rapidities`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    pub parametrization: Parametrization,
    #[serde(default = "default_alpha", deserialize_with = "de_angle")]
    pub alpha: f64,
    #[serde(default, deserialize_with = "de_opt_angle", skip_serializing_if = "Option::is_none")]
    pub omega: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rapidities: Option<BoostSetup>,
    #[serde(default, deserialize_with = "de_angle")]
    pub chi: f64,
    #[serde(default = "default_theta_range", deserialize_with = "de_range")]
    pub theta_range: [f64; 2],
    #[serde(default = "default_phi_range", deserialize_with = "de_range")]
    pub phi_range: [f64; 2],
    #[serde(default = "default_points")]
    pub n_theta: usize,
    #[serde(default = "default_points")]
    pub n_phi: usize,
    pub partition: PartitionSelector,
}

impl SweepSpec {
    /// Default 101×101 grid over the full `θ`, `φ` ranges at `α = π/4`.
    pub fn new(parametrization: Parametrization, omega: Angle, partition: PartitionSelector) -> Self {
        Self {
            parametrization,
            alpha: default_alpha(),
            omega: Some(omega),
            rapidities: None,
            chi: 0.0,
            theta_range: default_theta_range(),
            phi_range: default_phi_range(),
            n_theta: default_points(),
            n_phi: default_points(),
            partition,
        }
    }

    pub fn from_json(json: &str) -> Result<Self> {
        let spec: Self = serde_json::from_str(json)?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        let err = |m: String| Err(Error::InvalidSweep(m));
        if self.n_theta < 2 || self.n_phi < 2 {
            return err(format!("grid needs at least 2x2 points, got {}x{}", self.n_theta, self.n_phi));
        }
        let eps = 1e-12;
        let [t0, t1] = self.theta_range;
        if !(t0 >= -eps && t1 <= PI + eps && t0 < t1) {
            return err(format!("theta range {:?} must be increasing within [0, pi]", self.theta_range));
        }
        let [p0, p1] = self.phi_range;
        if !(p0 >= -eps && p1 <= 2.0 * PI + eps && p0 < p1) {
            return err(format!("phi range {:?} must be increasing within [0, 2pi]", self.phi_range));
        }
        for (name, x) in [("alpha", self.alpha), ("chi", self.chi)] {
            if !x.is_finite() {
                return err(format!("{name} must be finite"));
            }
        }
        self.wigner_angle().map(|_| ())
    }

    /// The Wigner angle, from `omega` or from `rapidities`.
    pub fn wigner_angle(&self) -> Result<Angle> {
        match (self.omega, &self.rapidities) {
            (Some(o), None) if o.is_finite() => Ok(o),
            (None, Some(r)) => wigner_angle(r),
            (Some(_), Some(_)) => Err(Error::InvalidSweep("give either omega or rapidities, not both".into())),
            (None, None) => Err(Error::InvalidSweep("missing omega or rapidities".into())),
            (Some(o), None) => Err(Error::InvalidSweep(format!("omega must be finite, got {o}"))),
        }
    }

    pub fn thetas(&self) -> Vec<f64> {
        linspace(self.theta_range, self.n_theta)
    }

    pub fn phis(&self) -> Vec<f64> {
        linspace(self.phi_range, self.n_phi)
    }

    fn phi_periodic(&self) -> bool {
        (self.phi_range[1] - self.phi_range[0] - 2.0 * PI).abs() < 1e-9
    }
}

fn linspace([lo, hi]: [f64; 2], n: usize) -> Vec<f64> {
    let step = (hi - lo) / (n - 1) as f64;
    (0..n).map(|i| if i == n - 1 { hi } else { lo + step * i as f64 }).collect()
}

/// Evaluates the entanglement change at single points of a sweep surface.
#[derive(Clone, Debug)]
pub struct SurfaceEvaluator {
    map: BoostMap,
    momentum: MomentumState,
    parametrization: Parametrization,
    chi: f64,
    partition: Partition,
}

impl SurfaceEvaluator {
    pub fn new(spec: &SweepSpec) -> Result<Self> {
        spec.validate()?;
        let map = BoostMap::new(SpinJ::ONE, spec.wigner_angle()?);
        let residual = map.unitarity_residual();
        if residual > 1e-12 {
            return Err(Error::NotUnitary { residual });
        }
        Ok(Self {
            map,
            momentum: momentum_state(spec.alpha),
            parametrization: spec.parametrization,
            chi: spec.chi,
            partition: spec.partition.partition(),
        })
    }

    pub fn change(&self, theta: f64, phi: f64) -> Result<EntanglementChange> {
        let s = self.parametrization.state(theta, phi, self.chi);
        let psi = compose(&self.momentum, &s);
        let boosted = self.map.apply(&psi);
        let norm = boosted.vector().norm();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized { norm });
        }
        Ok(EntanglementChange {
            before: linear_entropy(&psi, &self.partition),
            after: linear_entropy(&boosted, &self.partition),
        })
    }

    pub fn delta_e(&self, theta: f64, phi: f64) -> f64 {
        let s = self.parametrization.state(theta, phi, self.chi);
        entanglement_change(&self.map, &self.momentum, &s, &self.partition).total()
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }
}

/// Sweep results; `values[i][k]` is `ΔE` at `(thetas[i], phis[k])`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepGrid {
    pub spec: SweepSpec,
    pub omega: f64,
    pub thetas: Vec<f64>,
    pub phis: Vec<f64>,
    pub block_labels: Vec<String>,
    pub values: Vec<Vec<f64>>,
    /// `block_values[i][k][b]` is the change of block `b`.
    pub block_values: Vec<Vec<Vec<f64>>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Execution {
    Serial,
    Parallel,
}

pub fn run_sweep(spec: &SweepSpec) -> Result<SweepGrid> {
    run_sweep_with(spec, Execution::Parallel)
}

/// Cells are independent; results are gathered by index so the output does
/// not depend on `execution`.
pub fn run_sweep_with(spec: &SweepSpec, execution: Execution) -> Result<SweepGrid> {
    let eval = SurfaceEvaluator::new(spec)?;
    let thetas = spec.thetas();
    let phis = spec.phis();
    let cells: Vec<(usize, usize)> = (0..thetas.len())
        .flat_map(|i| (0..phis.len()).map(move |k| (i, k)))
        .collect();
    let compute = |&(i, k): &(usize, usize)| eval.change(thetas[i], phis[k]);
    let results: Vec<EntanglementChange> = match execution {
        Execution::Serial => cells.iter().map(compute).collect::<Result<_>>()?,
        Execution::Parallel => cells.par_iter().map(compute).collect::<Result<_>>()?,
    };

    let mut values = vec![vec![0.0; phis.len()]; thetas.len()];
    let mut block_values = vec![vec![Vec::new(); phis.len()]; thetas.len()];
    for (&(i, k), change) in cells.iter().zip(&results) {
        values[i][k] = change.total();
        block_values[i][k] = change.per_block();
    }
    let grid = SweepGrid {
        spec: spec.clone(),
        omega: spec.wigner_angle()?,
        thetas,
        phis,
        block_labels: eval.partition().block_labels(),
        values,
        block_values,
    };
    grid.validate()?;
    Ok(grid)
}

impl SweepGrid {
    /// Finite values bounded by the partition's entropy range.
    pub fn validate(&self) -> Result<()> {
        let dims = composite_shape(SpinJ::ONE);
        let bound = self.spec.partition.partition().entropy_bound(dims.dims()) + 1e-10;
        for row in &self.values {
            for &v in row {
                if !v.is_finite() || v.abs() > bound {
                    return Err(Error::InvalidSweep(format!("value {v} outside entropy bound {bound}")));
                }
            }
        }
        Ok(())
    }

    pub fn max_value(&self) -> f64 {
        self.values.iter().flatten().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn min_value(&self) -> f64 {
        self.values.iter().flatten().copied().fold(f64::INFINITY, f64::min)
    }

    /// Grid points whose value is within `tol` of the global maximum.
    pub fn argmax_points(&self, tol: f64) -> Vec<(f64, f64, f64)> {
        let max = self.max_value();
        self.points().filter(|&(_, _, v)| v >= max - tol).collect()
    }

    /// Grid points whose value is within `tol` of the global minimum.
    pub fn argmin_points(&self, tol: f64) -> Vec<(f64, f64, f64)> {
        let min = self.min_value();
        self.points().filter(|&(_, _, v)| v <= min + tol).collect()
    }

    pub fn points(&self) -> impl Iterator<Item = (f64, f64, f64)> + '_ {
        self.thetas.iter().enumerate().flat_map(move |(i, &t)| {
            self.phis.iter().enumerate().map(move |(k, &p)| (t, p, self.values[i][k]))
        })
    }

    /// Copy with every change below the conservation tolerance set to zero
    /// and all numbers rounded to [`SIG_DIGITS`] significant digits.
    pub fn rounded(&self) -> SweepGrid {
        let snap = |x: f64| round_sig(if x.abs() < CONSERVATION_TOL { 0.0 } else { x });
        SweepGrid {
            spec: self.spec.clone(),
            omega: round_sig(self.omega),
            thetas: self.thetas.iter().map(|&x| round_sig(x)).collect(),
            phis: self.phis.iter().map(|&x| round_sig(x)).collect(),
            block_labels: self.block_labels.clone(),
            values: self.values.iter().map(|r| r.iter().map(|&x| snap(x)).collect()).collect(),
            block_values: self
                .block_values
                .iter()
                .map(|r| r.iter().map(|c| c.iter().map(|&x| snap(x)).collect()).collect())
                .collect(),
        }
    }

    pub fn to_csv(&self) -> String {
        let g = self.rounded();
        let mut out = String::from("theta,phi,delta_E");
        for label in &g.block_labels {
            out.push(',');
            out.push_str(label);
        }
        out.push('\n');
        for (i, &t) in g.thetas.iter().enumerate() {
            for (k, &p) in g.phis.iter().enumerate() {
                let _ = write!(out, "{},{},{}", format_sig(t), format_sig(p), format_sig(g.values[i][k]));
                for &b in &g.block_values[i][k] {
                    let _ = write!(out, ",{}", format_sig(b));
                }
                out.push('\n');
            }
        }
        out
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.rounded()).expect("grid serializes");
        s.push('\n');
        s
    }

    pub fn from_json(json: &str) -> Result<Self> {
        Ok(serde_json::from_str(json)?)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExportFormat {
    Csv,
    Json,
}

impl std::str::FromStr for ExportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(ExportFormat::Csv),
            "json" => Ok(ExportFormat::Json),
            _ => Err(Error::InvalidSweep(format!("unknown format {s:?}"))),
        }
    }
}

pub fn render(grid: &SweepGrid, format: ExportFormat) -> String {
    match format {
        ExportFormat::Csv => grid.to_csv(),
        ExportFormat::Json => grid.to_json(),
    }
}

pub fn export(grid: &SweepGrid, format: ExportFormat, path: &Path) -> Result<()> {
    std::fs::write(path, render(grid, format))?;
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExtremumKind {
    Max,
    Min,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Extremum {
    pub kind: ExtremumKind,
    pub theta: f64,
    pub phi: f64,
    pub value: f64,
}

const FLAT_TOL: f64 = 1e-12;

/// Grid-cell local extrema, merged when they describe the same spin state.
///
/// A point is a local maximum (minimum) when no neighbour exceeds (undercuts)
/// it and at least one neighbour is strictly below (above) it, so flat
/// regions report nothing. `φ` wraps when the grid spans a full turn. With
/// `refine`, each extremum is polished by coordinate search with a halving
/// step down to `1e-8`.
pub fn find_extrema(grid: &SweepGrid, refine: bool) -> Result<Vec<Extremum>> {
    let eval = SurfaceEvaluator::new(&grid.spec)?;
    let (nt, np) = (grid.thetas.len(), grid.phis.len());
    let periodic = grid.spec.phi_periodic();
    let neighbour_phi = |k: usize, dk: isize| -> Option<usize> {
        let k2 = k as isize + dk;
        if (0..np as isize).contains(&k2) {
            Some(k2 as usize)
        } else if periodic {
            // endpoints coincide, so step over the duplicate
            Some(if k2 < 0 { np - 2 } else { 1 })
        } else {
            None
        }
    };

    let mut found = Vec::new();
    for i in 0..nt {
        for k in 0..np {
            let v = grid.values[i][k];
            let mut higher = false;
            let mut lower = false;
            for di in -1isize..=1 {
                let i2 = i as isize + di;
                if !(0..nt as isize).contains(&i2) {
                    continue;
                }
                for dk in -1isize..=1 {
                    if di == 0 && dk == 0 {
                        continue;
                    }
                    let Some(k2) = neighbour_phi(k, dk) else { continue };
                    let w = grid.values[i2 as usize][k2];
                    higher |= w > v + FLAT_TOL;
                    lower |= w < v - FLAT_TOL;
                }
            }
            let kind = match (higher, lower) {
                (false, true) => ExtremumKind::Max,
                (true, false) => ExtremumKind::Min,
                _ => continue,
            };
            found.push(Extremum { kind, theta: grid.thetas[i], phi: grid.phis[k], value: v });
        }
    }

    if refine {
        let dt = grid.thetas[1] - grid.thetas[0];
        let dp = grid.phis[1] - grid.phis[0];
        for e in found.iter_mut() {
            *e = polish(&eval, &grid.spec, *e, dt, dp);
        }
    }

    let mut merged: Vec<Extremum> = Vec::new();
    for e in found {
        let s = grid.spec.parametrization.state(e.theta, e.phi, grid.spec.chi);
        let duplicate = merged.iter().any(|m| {
            m.kind == e.kind
                && (m.value - e.value).abs() < 1e-8
                && grid.spec.parametrization.state(m.theta, m.phi, grid.spec.chi).fidelity(&s) > 1.0 - 1e-8
        });
        if !duplicate {
            merged.push(e);
        }
    }
    Ok(merged)
}

fn polish(eval: &SurfaceEvaluator, spec: &SweepSpec, start: Extremum, dt: f64, dp: f64) -> Extremum {
    let sign = match start.kind {
        ExtremumKind::Max => -1.0,
        ExtremumKind::Min => 1.0,
    };
    let [t0, t1] = spec.theta_range;
    let [p0, p1] = spec.phi_range;
    let periodic = spec.phi_periodic();
    let clamp = |t: f64, p: f64| {
        let t = t.clamp(t0, t1);
        let p = if periodic { p0 + (p - p0).rem_euclid(2.0 * PI) } else { p.clamp(p0, p1) };
        (t, p)
    };
    let objective = |t: f64, p: f64| sign * eval.delta_e(t, p);

    let (mut t, mut p) = (start.theta, start.phi);
    let mut best = objective(t, p);
    let mut step = [dt, dp];
    for _ in 0..100_000 {
        if step[0].max(step[1]) < 1e-8 {
            break;
        }
        let mut moved = false;
        'axes: for axis in 0..2 {
            for dir in [1.0, -1.0] {
                let (ct, cp) = if axis == 0 {
                    clamp(t + dir * step[0], p)
                } else {
                    clamp(t, p + dir * step[1])
                };
                let f = objective(ct, cp);
                if f < best - 1e-15 {
                    (t, p, best) = (ct, cp, f);
                    moved = true;
                    break 'axes;
                }
            }
        }
        if !moved {
            step = [step[0] / 2.0, step[1] / 2.0];
        }
    }
    Extremum { kind: start.kind, theta: t, phi: p, value: sign * best }
}

/// Formats `x` in plain decimal with [`SIG_DIGITS`] significant digits.
pub fn format_sig(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{:.*e}", SIG_DIGITS - 1, x);
    let exp: i32 = sci.split_once('e').and_then(|(_, e)| e.parse().ok()).unwrap_or(0);
    let decimals = (SIG_DIGITS as i32 - 1 - exp).max(0) as usize;
    format!("{x:.decimals$}")
}

/// Rounds to [`SIG_DIGITS`] significant digits.
pub fn round_sig(x: f64) -> f64 {
    let r: f64 = format_sig(x).parse().unwrap_or(x);
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn angle_expressions() {
        assert_eq!(parse_angle("0.5").unwrap(), 0.5);
        assert_eq!(parse_angle("pi").unwrap(), PI);
        assert_eq!(parse_angle("pi/2").unwrap(), FRAC_PI_2);
        assert_eq!(parse_angle("-pi/2").unwrap(), -FRAC_PI_2);
        assert_eq!(parse_angle("2pi/3").unwrap(), 2.0 * PI / 3.0);
        assert_eq!(parse_angle("3*pi/8").unwrap(), 3.0 * PI / 8.0);
        assert_eq!(parse_angle("π/4").unwrap(), FRAC_PI_4);
        for bad in ["pie", "pi/0", "x/2", ""] {
            assert!(parse_angle(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn significant_digits() {
        assert_eq!(format_sig(0.0), "0");
        assert_eq!(format_sig(PI), "3.14159265359");
        assert_eq!(format_sig(-0.000123456789012345), "-0.000123456789012");
        assert_eq!(format_sig(1.0), "1.00000000000");
        assert_eq!(format_sig(9.9999999999999), "10.0000000000");
        assert_eq!(format_sig(123456789012345.0), "123456789012345");
        assert_eq!(round_sig(FRAC_PI_4).to_string(), "0.785398163397");
    }

    #[test]
    fn sweep_validation() {
        let mut spec = SweepSpec::new(Parametrization::One, 0.5, PartitionSelector::MomentumVsSpin);
        assert!(spec.validate().is_ok());
        spec.n_theta = 1;
        assert!(spec.validate().is_err());
        spec.n_theta = 3;
        spec.theta_range = [0.0, 4.0];
        assert!(spec.validate().is_err());
        spec.theta_range = [0.0, PI];
        spec.omega = None;
        assert!(spec.validate().is_err());
        spec.rapidities = Some(BoostSetup { eta: 1.0, omega: 1.0 });
        assert!(spec.validate().is_ok());
        spec.omega = Some(1.0);
        assert!(spec.validate().is_err());
    }

    #[test]
    fn spec_json_with_expressions() {
        let spec = SweepSpec::from_json(
            r#"{"parametrization": 3, "omega": "pi/4", "chi": "2pi/3", "partition": "ps", "n_theta": 5, "n_phi": 7}"#,
        )
        .unwrap();
        assert_eq!(spec.parametrization, Parametrization::Three);
        assert_eq!(spec.omega, Some(FRAC_PI_4));
        assert_eq!(spec.chi, 2.0 * PI / 3.0);
        assert_eq!(spec.alpha, FRAC_PI_4);
        assert_eq!(spec.phi_range, [0.0, 2.0 * PI]);
        assert!(SweepSpec::from_json(r#"{"parametrization": 4, "omega": 1, "partition": "ps"}"#).is_err());
        assert!(SweepSpec::from_json(r#"{"parametrization": 1, "omega": 1, "partition": "ps", "bogus": 1}"#).is_err());
    }

    #[test]
    fn grid_endpoints_are_exact() {
        let spec = SweepSpec::new(Parametrization::One, 0.5, PartitionSelector::AliceVsBob);
        let t = spec.thetas();
        assert_eq!(t.len(), 101);
        assert_eq!(t[0], 0.0);
        assert_eq!(t[100], PI);
        assert_eq!(spec.phis()[100], 2.0 * PI);
    }

    #[test]
    fn unmoving_momentum_gives_flat_grid() {
        let mut spec = SweepSpec::new(Parametrization::Two, 1.0, PartitionSelector::MomentumVsSpin);
        spec.alpha = 0.0;
        spec.n_theta = 6;
        spec.n_phi = 6;
        let grid = run_sweep(&spec).unwrap();
        assert!(grid.values.iter().flatten().all(|v| v.abs() < 1e-12));
        assert!(find_extrema(&grid, true).unwrap().is_empty());
    }

    #[test]
    fn csv_shape() {
        let mut spec = SweepSpec::new(Parametrization::One, 1.0, PartitionSelector::MomentumVsSpin);
        spec.n_theta = 2;
        spec.n_phi = 2;
        let csv = run_sweep(&spec).unwrap().to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 5);
        assert_eq!(lines[0], "theta,phi,delta_E,Ap+Bp,As+Bs");
        assert!(lines[1..].iter().all(|l| l.split(',').count() == 5));
    }

    #[test]
    fn serial_and_parallel_agree() {
        let mut spec = SweepSpec::new(Parametrization::Three, 0.9, PartitionSelector::OneVsThree(None));
        spec.chi = 1.1;
        spec.n_theta = 7;
        spec.n_phi = 9;
        let a = run_sweep_with(&spec, Execution::Serial).unwrap();
        let b = run_sweep_with(&spec, Execution::Parallel).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.block_labels, ["Ap", "As", "Bp", "Bs"]);
    }
}
