mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use spinboost::sweep::{parse_angle, render};
use spinboost::{
    compose, find_extrema, momentum_state, multiplicity, named_states, run_sweep, weight_basis, wigner_angle,
    wigner_d, BoostMap, BoostSetup, Complex64, Error, ExportFormat, Parametrization, PartitionSelector, SpinJ,
    SpinState, StateLiteral, StateVector, SweepSpec,
};

use output::{fmt_num, Emit};

#[derive(Parser, Debug)]
#[command(name = "spinboost", version)]
#[command(about = "Entanglement change of two spin-j particles under a transverse boost")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Wigner angle for particle rapidity `--eta` and boost rapidity `--rapidity`
    WignerAngle {
        #[arg(long, value_parser = rapidity)]
        eta: f64,
        #[arg(long, value_parser = rapidity)]
        rapidity: f64,
    },
    /// Real rotation matrix d^j(Ω), rows and columns ordered m = j..-j
    Dmatrix {
        #[arg(long, default_value = "1")]
        j: SpinJ,
        #[command(flatten)]
        angle: AngleArgs,
        #[arg(long, default_value = "text")]
        format: TextOrJson,
    },
    /// Boosted composite state, non-zero amplitudes only
    Boost {
        #[command(flatten)]
        angle: AngleArgs,
        #[command(flatten)]
        state: StateArgs,
        #[arg(long, default_value = "text")]
        format: TextOrJson,
    },
    /// Linear entropy before and after the boost, per partition block
    Entropy {
        #[command(flatten)]
        angle: AngleArgs,
        #[command(flatten)]
        state: StateArgs,
        /// AB, ps, 1v3 (all four single subsystems) or 1v3:<Ap|As|Bp|Bs>
        #[arg(long, default_value = "ps")]
        partition: PartitionSelector,
        #[arg(long, default_value = "text")]
        format: TextOrJson,
    },
    /// ΔE over a (θ, φ) grid of one spin-1 family
    Sweep {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, default_value = "csv")]
        format: ExportFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Local extrema of a sweep surface
    Extrema {
        #[command(flatten)]
        spec: SpecArgs,
        /// Polish each grid extremum by coordinate search
        #[arg(long)]
        refine: bool,
        #[arg(long, default_value = "csv")]
        format: ExportFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Basis of the spin-pair space on which every boost acts by a phase
    InvariantBasis {
        #[arg(long, default_value = "1")]
        j: SpinJ,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Multiplicity of each weight m in D(Ω) ⊗ D(-Ω)
    Multiplicity {
        #[arg(long, default_value = "1")]
        j: SpinJ,
        #[arg(long, default_value = "text")]
        format: TextOrJson,
    },
}

#[derive(Clone, Copy, Debug, clap::ValueEnum)]
enum TextOrJson {
    Text,
    Json,
}

fn angle(s: &str) -> Result<f64, Error> {
    parse_angle(s)
}

/// Non-negative rapidity; `inf` selects the lightlike limit.
fn rapidity(s: &str) -> Result<f64, String> {
    let x: f64 = s.trim().parse().map_err(|_| format!("cannot parse {s:?} as a rapidity"))?;
    if x.is_nan() || x < 0.0 {
        return Err(format!("rapidity must be non-negative, got {s}"));
    }
    Ok(x)
}

#[derive(Args, Debug)]
struct AngleArgs {
    /// Wigner angle, e.g. 0.4 or pi/2
    #[arg(long, value_parser = angle, conflicts_with_all = ["eta", "rapidity"])]
    omega: Option<f64>,
    /// Particle rapidity along ±z
    #[arg(long, value_parser = rapidity, requires = "rapidity")]
    eta: Option<f64>,
    /// Boost rapidity along x
    #[arg(long, value_parser = rapidity, requires = "eta")]
    rapidity: Option<f64>,
}

impl AngleArgs {
    fn setup(&self) -> Option<BoostSetup> {
        Some(BoostSetup { eta: self.eta?, omega: self.rapidity? })
    }

    fn resolve(&self) -> Result<f64> {
        match (self.omega, self.setup()) {
            (Some(o), _) => Ok(o),
            (None, Some(s)) => Ok(wigner_angle(&s)?),
            (None, None) => bail!("give --omega or both --eta and --rapidity"),
        }
    }
}

#[derive(Args, Debug)]
struct StateArgs {
    #[arg(long, default_value = "1")]
    j: SpinJ,
    /// Momentum superposition angle: cos α |+,-⟩ + sin α |-,+⟩
    #[arg(long, value_parser = angle, default_value = "pi/4")]
    alpha: f64,
    /// Spin-1 family 1, 2 or 3
    #[arg(long, conflicts_with = "state")]
    param: Option<u8>,
    #[arg(long, value_parser = angle, default_value = "0")]
    theta: f64,
    #[arg(long, value_parser = angle, default_value = "0")]
    phi: f64,
    #[arg(long, value_parser = angle, default_value = "0")]
    chi: f64,
    /// JSON literal {"basis": [[mA, mB], ...], "amplitudes": [[re, im], ...]} or a path to one
    #[arg(long)]
    state: Option<String>,
    /// Rescale a --state literal instead of rejecting it when not normalized
    #[arg(long, requires = "state")]
    normalize: bool,
}

/// Largest accepted deviation from unit norm for a typed literal.
const LITERAL_NORM_TOL: f64 = 1e-9;

impl StateArgs {
    fn spin_state(&self) -> Result<SpinState> {
        if let Some(raw) = &self.state {
            let json = if raw.trim_start().starts_with('{') {
                raw.clone()
            } else {
                std::fs::read_to_string(raw).with_context(|| format!("reading state literal {raw}"))?
            };
            let literal: StateLiteral = serde_json::from_str(&json).context("parsing state literal")?;
            let norm = literal_norm(self.j, &literal)?;
            if !self.normalize && (norm - 1.0).abs() > LITERAL_NORM_TOL {
                return Err(Error::NotNormalized { norm }).context("pass --normalize to rescale the literal");
            }
            return Ok(SpinState::from_literal(self.j, &literal)?);
        }
        let Some(id) = self.param else {
            bail!("give --param with --theta/--phi[/--chi], or --state");
        };
        if self.j != SpinJ::ONE {
            bail!("the parametrized families are spin-1; use --state for j = {}", self.j);
        }
        let param = Parametrization::try_from(id)?;
        Ok(param.state(self.theta, self.phi, self.chi))
    }
}

/// Norm of the literal's amplitudes after summing repeated labels.
fn literal_norm(spin: SpinJ, literal: &StateLiteral) -> Result<f64> {
    let d = spin.dim();
    let mut v = StateVector::zeros(d * d);
    for (&[ma, mb], &[re, im]) in literal.basis.iter().zip(&literal.amplitudes) {
        let (Some(a), Some(b)) = (spin.index_of(ma), spin.index_of(mb)) else {
            bail!("({ma}, {mb}) is not a spin-{spin} basis label");
        };
        v.amplitudes_mut()[a * d + b] += Complex64::new(re, im);
    }
    Ok(v.norm())
}

#[derive(Args, Debug)]
struct SpecArgs {
    /// JSON sweep configuration; flags below override its fields
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    param: Option<u8>,
    #[command(flatten)]
    angle: AngleArgs,
    #[arg(long)]
    partition: Option<PartitionSelector>,
    #[arg(long, value_parser = angle)]
    alpha: Option<f64>,
    #[arg(long, value_parser = angle)]
    chi: Option<f64>,
    /// Grid size as THETAxPHI, e.g. 101x101
    #[arg(long, value_parser = grid)]
    grid: Option<(usize, usize)>,
}

fn grid(s: &str) -> Result<(usize, usize), String> {
    let bad = || format!("grid must look like 101x101, got {s:?}");
    let (a, b) = s.split_once(['x', 'X']).ok_or_else(bad)?;
    Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
}

impl SpecArgs {
    fn spec(&self) -> Result<SweepSpec> {
        let mut spec = match &self.config {
            Some(path) => {
                let json = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
                SweepSpec::from_json(&json).with_context(|| format!("in {}", path.display()))?
            }
            None => {
                let (Some(param), Some(partition)) = (self.param, self.partition) else {
                    bail!("give --config, or --param and --partition");
                };
                let mut spec = SweepSpec::new(Parametrization::try_from(param)?, 0.0, partition);
                spec.omega = None;
                spec
            }
        };
        if let Some(p) = self.param {
            spec.parametrization = Parametrization::try_from(p)?;
        }
        if let Some(p) = self.partition {
            spec.partition = p;
        }
        if let Some(o) = self.angle.omega {
            spec.omega = Some(o);
            spec.rapidities = None;
        } else if let Some(s) = self.angle.setup() {
            spec.omega = None;
            spec.rapidities = Some(s);
        }
        if let Some(a) = self.alpha {
            spec.alpha = a;
        }
        if let Some(c) = self.chi {
            spec.chi = c;
        }
        if let Some((nt, np)) = self.grid {
            spec.n_theta = nt;
            spec.n_phi = np;
        }
        spec.validate()?;
        Ok(spec)
    }
}

fn boost_map(spin: SpinJ, omega: f64) -> Result<BoostMap> {
    let map = BoostMap::new(spin, omega);
    let residual = map.unitarity_residual();
    if residual > 1e-12 {
        return Err(Error::NotUnitary { residual }.into());
    }
    Ok(map)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::WignerAngle { eta, rapidity } => {
            println!("{}", fmt_num(wigner_angle(&BoostSetup::new(eta, rapidity)?)?));
        }
        Command::Dmatrix { j, angle, format } => {
            let d = wigner_d(j, angle.resolve()?);
            let residual = d.unitarity_residual();
            if residual > 1e-12 {
                return Err(Error::NotUnitary { residual }.into());
            }
            let rows: Vec<Vec<f64>> = (0..d.rows()).map(|r| (0..d.cols()).map(|c| d[(r, c)].re).collect()).collect();
            match format {
                TextOrJson::Text => {
                    for row in &rows {
                        println!("{}", row.iter().map(|&x| output::fmt_amplitude(x)).collect::<Vec<_>>().join(" "));
                    }
                }
                TextOrJson::Json => println!("{}", output::json_matrix(&rows)),
            }
        }
        Command::Boost { angle, state, format } => {
            let s = state.spin_state()?;
            let psi = compose(&momentum_state(state.alpha), &s);
            let boosted = boost_map(s.spin(), angle.resolve()?)?.apply(&psi);
            boosted.check_normalized()?;
            output::composite(&boosted, format.into()).emit(None)?;
        }
        Command::Entropy { angle, state, partition, format } => {
            let s = state.spin_state()?;
            let map = boost_map(s.spin(), angle.resolve()?)?;
            let p = momentum_state(state.alpha);
            map.apply(&compose(&p, &s)).check_normalized()?;
            let part = partition.partition();
            let change = spinboost::entanglement_change(&map, &p, &s, &part);
            output::entropy(&partition, &part.block_labels(), &change, format.into()).emit(None)?;
        }
        Command::Sweep { spec, format, out } => {
            let grid = run_sweep(&spec.spec()?)?;
            render(&grid, format).emit(out.as_deref())?;
        }
        Command::Extrema { spec, refine, format, out } => {
            let grid = run_sweep(&spec.spec()?)?;
            let extrema = find_extrema(&grid, refine)?;
            output::extrema(grid.spec.parametrization, grid.spec.chi, &extrema, &named_states(), format)
                .emit(out.as_deref())?;
        }
        Command::InvariantBasis { j, out } => {
            let basis = weight_basis(j);
            let residual = basis.change_of_basis().unitarity_residual();
            if residual > 1e-10 {
                return Err(Error::NotUnitary { residual }.into());
            }
            output::invariant_basis(&basis).emit(out.as_deref())?;
        }
        Command::Multiplicity { j, format } => {
            let tj = j.twice() as i32;
            let rows: Vec<(i32, u32)> = (-tj..=tj).map(|m| (m, multiplicity(j, m))).collect();
            match format {
                TextOrJson::Text => {
                    println!("m,a_m");
                    for (m, a) in rows {
                        println!("{m},{a}");
                    }
                }
                TextOrJson::Json => {
                    let v: Vec<_> = rows.iter().map(|&(m, a)| serde_json::json!({"m": m, "a_m": a})).collect();
                    println!("{}", serde_json::to_string_pretty(&v)?);
                }
            }
        }
    }
    Ok(())
}

impl From<TextOrJson> for ExportFormat {
    fn from(f: TextOrJson) -> Self {
        match f {
            TextOrJson::Text => ExportFormat::Csv,
            TextOrJson::Json => ExportFormat::Json,
        }
    }
}
