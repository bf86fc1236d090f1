//! `collgate`: gate budgets, ramp design and reference checks from the
//! command line.

mod config;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Result};
use clap::{Args, Parser, Subcommand};
use collgate::dynamics::{ermakov_evolve, tdse_trace, RampSchedule, TdseSettings};
use collgate::protocol::{design_ramp, simulate_gate, sweep, HoldSpec, SweepAxis};
use collgate::quantities::to_hz;
use collgate::verify::{self, VerifyOptions};
use collgate::{Constants, Dimension, Unit};

use config::{flag_quantity, parse_shape, preset, RunConfig};
use render::{emit, flatten, json_text, Cell, Format, Table};

#[derive(Parser)]
#[command(name = "collgate", version, about = "Collisional phase gate simulator for spin waves in a condensate")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Flat TOML file with unit-carrying values; flags override it.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Starting parameter set.
    #[arg(long, global = true, default_value = "paper")]
    preset: String,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write the report here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Simulate compression, hold and decompression and check the budget.
    Gate(GateArgs),
    /// Design or inspect a single compression ramp.
    #[command(subcommand)]
    Ramp(RampCommand),
    /// Repeat the gate simulation along one parameter axis.
    Sweep(SweepArgs),
    /// Run the reference scenarios and print a pass/fail matrix.
    Verify(VerifyArgs),
}

#[derive(Args, Default)]
struct TrapArgs {
    /// Storage frequency, e.g. "2pi*10 Hz" (bare numbers are Hz).
    #[arg(long)]
    omega_tilde_0: Option<String>,
    /// Hold frequency (bare numbers are Hz).
    #[arg(long)]
    omega_tilde_1: Option<String>,
    /// linear, exponential or smoothstep.
    #[arg(long)]
    shape: Option<String>,
}

#[derive(Args)]
struct GateArgs {
    #[command(flatten)]
    trap: TrapArgs,
    /// Feshbach enhancement factor on a12.
    #[arg(long = "f", visible_alias = "feshbach")]
    f: Option<f64>,
    /// Stay at the storage frequency: no ramps.
    #[arg(long)]
    no_compression: bool,
    /// Total phase to reach, e.g. "pi" (bare numbers are rad).
    #[arg(long, conflicts_with = "tf")]
    target_phase: Option<String>,
    /// Fixed hold time (bare numbers are s).
    #[arg(long)]
    tf: Option<String>,
    /// Ramp time (bare numbers are s).
    #[arg(long)]
    ta: Option<String>,
    /// Condensate atom number.
    #[arg(long)]
    atoms: Option<f64>,
    /// Excitation bound per ramp.
    #[arg(long)]
    pmax: Option<f64>,
    /// Bare-over-effective trap frequency ratio.
    #[arg(long)]
    trap_ratio: Option<f64>,
}

#[derive(Subcommand)]
enum RampCommand {
    /// Shortest ramp time meeting an excitation bound.
    Design {
        #[command(flatten)]
        trap: TrapArgs,
        #[arg(long)]
        pmax: Option<f64>,
    },
    /// Width trajectory and running excitation probability along a ramp.
    Trace {
        #[command(flatten)]
        trap: TrapArgs,
        /// Ramp time (bare numbers are s).
        #[arg(long)]
        ta: Option<String>,
        /// Number of rows for a finite ramp.
        #[arg(long, default_value_t = 101)]
        samples: usize,
        /// Add a column from the grid propagation.
        #[arg(long)]
        oracle: bool,
    },
}

#[derive(Args)]
struct SweepArgs {
    /// F, omega_tilde_1, t_a, l0 or N.
    #[arg(long)]
    axis: String,
    /// Comma-separated values; bare numbers use the axis unit (1, Hz, s, um, 1).
    #[arg(long, value_delimiter = ',', conflicts_with_all = ["from", "to", "steps"])]
    values: Vec<String>,
    #[arg(long, requires_all = ["to", "steps"])]
    from: Option<String>,
    #[arg(long)]
    to: Option<String>,
    #[arg(long)]
    steps: Option<usize>,
    #[command(flatten)]
    gate: GateArgs,
}

#[derive(Args)]
struct VerifyArgs {
    /// Same as --format json.
    #[arg(long)]
    json: bool,
    /// Skip the grid propagations.
    #[arg(long)]
    no_oracle: bool,
    /// Scale ħ by this factor to check that the matrix notices.
    #[arg(long, hide = true)]
    perturb_hbar: Option<f64>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    let mut cfg = preset(&cli.common.preset)?;
    if let Some(path) = &cli.common.config {
        cfg.apply_file(path)?;
    }
    if let Some(f) = cli.common.format {
        cfg.format = f;
    }
    if let Some(o) = &cli.common.output {
        cfg.output = Some(o.clone());
    }
    let c = Constants::RB87;
    match cli.command {
        Command::Gate(args) => {
            args.apply(&mut cfg)?;
            cmd_gate(&cfg, &c)
        }
        Command::Ramp(RampCommand::Design { trap, pmax }) => {
            trap.apply(&mut cfg)?;
            if let Some(p) = pmax {
                cfg.gate.p_exc_max = p;
            }
            cmd_design(&cfg)
        }
        Command::Ramp(RampCommand::Trace { trap, ta, samples, oracle }) => {
            trap.apply(&mut cfg)?;
            if let Some(t) = ta {
                cfg.gate.ramp_time = flag_quantity(&t, Dimension::Time, Unit::Second)?;
            }
            cmd_trace(&cfg, samples, oracle)
        }
        Command::Sweep(args) => {
            args.gate.apply(&mut cfg)?;
            cmd_sweep(&cfg, &args, &c)
        }
        Command::Verify(args) => {
            if args.json {
                cfg.format = Format::Json;
            }
            cmd_verify(&cfg, &args, c)
        }
    }
}

impl TrapArgs {
    fn apply(&self, cfg: &mut RunConfig) -> Result<()> {
        let freq = |s: &str| flag_quantity(s, Dimension::AngularFrequency, Unit::Hertz);
        if let Some(w) = &self.omega_tilde_0 {
            cfg.gate.omega_tilde_0 = freq(w)?;
        }
        if let Some(w) = &self.omega_tilde_1 {
            cfg.gate.omega_tilde_1 = freq(w)?;
        }
        if let Some(s) = &self.shape {
            cfg.gate.ramp_shape = parse_shape(s)?;
        }
        Ok(())
    }
}

impl GateArgs {
    fn apply(&self, cfg: &mut RunConfig) -> Result<()> {
        self.trap.apply(cfg)?;
        let g = &mut cfg.gate;
        if let Some(f) = self.f {
            g.scattering.feshbach_factor = f;
        }
        if let Some(p) = &self.target_phase {
            g.hold = HoldSpec::TargetPhase(flag_quantity(p, Dimension::Dimensionless, Unit::Radian)?);
        }
        if let Some(t) = &self.tf {
            g.hold = HoldSpec::Time(flag_quantity(t, Dimension::Time, Unit::Second)?);
        }
        if let Some(t) = &self.ta {
            g.ramp_time = flag_quantity(t, Dimension::Time, Unit::Second)?;
        }
        if let Some(n) = self.atoms {
            g.atom_number = n;
        }
        if let Some(p) = self.pmax {
            g.p_exc_max = p;
        }
        if let Some(k) = self.trap_ratio {
            g.trap_ratio = Some(k);
        }
        if self.no_compression {
            cfg.no_compression = true;
        }
        Ok(())
    }
}

fn write(cfg: &RunConfig, text: &str) -> Result<()> {
    emit(text, cfg.output.as_deref())
}

fn cmd_gate(cfg: &RunConfig, c: &Constants) -> Result<ExitCode> {
    let report = simulate_gate(&cfg.resolved_gate(), c)?;
    let doc = report.document();
    let text = match cfg.format {
        Format::Json => json_text(&doc)?,
        Format::Csv => flatten(&serde_json::to_value(&doc)?).to_csv()?,
        Format::Table => {
            let mut s = flatten(&serde_json::to_value(&doc)?).to_text();
            let failures = report.flags.failures();
            if failures.is_empty() {
                s.push_str("\nall feasibility checks pass\n");
            } else {
                s.push_str(&format!("\nFAILED: {}\n", failures.join(", ")));
            }
            s
        }
    };
    write(cfg, &text)?;
    Ok(if report.flags.all_pass() { ExitCode::SUCCESS } else { ExitCode::from(2) })
}

fn cmd_design(cfg: &RunConfig) -> Result<ExitCode> {
    let g = cfg.resolved_gate();
    let d = design_ramp(g.omega_tilde_0, g.omega_tilde_1, g.p_exc_max, g.ramp_shape)?;
    let mut t = Table::new(&[
        ("shape", ""),
        ("omega_tilde_0", "Hz"),
        ("omega_tilde_1", "Hz"),
        ("p_exc_max", "1"),
        ("t_a", "s"),
        ("p_exc", "1"),
        ("achieved", ""),
    ]);
    t.push(vec![
        Cell::Text(g.ramp_shape.name().into()),
        Cell::Num(to_hz(g.omega_tilde_0)),
        Cell::Num(to_hz(g.omega_tilde_1)),
        Cell::Num(g.p_exc_max),
        Cell::Num(d.ramp_time),
        Cell::Num(d.excitation_probability),
        Cell::Bool(d.achieved),
    ]);
    write(cfg, &t.render(cfg.format)?)?;
    Ok(if d.achieved { ExitCode::SUCCESS } else { ExitCode::from(2) })
}

fn cmd_trace(cfg: &RunConfig, samples: usize, oracle: bool) -> Result<ExitCode> {
    let g = cfg.resolved_gate();
    let r = RampSchedule::new(g.omega_tilde_0, g.omega_tilde_1, g.ramp_time, g.ramp_shape)?;
    let traj = ermakov_evolve(&r, samples)?;
    let p = traj.excitation_so_far();
    let grid = if oracle {
        let times: Vec<f64> = traj.samples.iter().map(|s| s.t.min(r.duration)).collect();
        Some(tdse_trace(&r, &TdseSettings::default(), &times)?)
    } else {
        None
    };
    let mut cols = vec![("t", "s"), ("omega_tilde", "Hz"), ("b", "1"), ("b_dot", "1/s"), ("p_exc", "1")];
    if oracle {
        cols.push(("p_exc_tdse", "1"));
    }
    let mut t = Table::new(&cols);
    for (i, s) in traj.samples.iter().enumerate() {
        let mut row =
            vec![Cell::Num(s.t), Cell::Num(to_hz(s.omega)), Cell::Num(s.b), Cell::Num(s.b_dot), Cell::Num(p[i])];
        if let Some(q) = &grid {
            row.push(Cell::Num(q[i]));
        }
        t.push(row);
    }
    write(cfg, &t.render(cfg.format)?)?;
    Ok(ExitCode::SUCCESS)
}

fn axis_unit(axis: SweepAxis) -> (Unit, &'static str) {
    match axis {
        SweepAxis::OmegaTilde1 => (Unit::Hertz, "Hz"),
        SweepAxis::RampTime => (Unit::Second, "s"),
        SweepAxis::Fwhm0 => (Unit::Micrometer, "um"),
        SweepAxis::FeshbachFactor | SweepAxis::AtomNumber => (Unit::One, "1"),
    }
}

fn cmd_sweep(cfg: &RunConfig, args: &SweepArgs, c: &Constants) -> Result<ExitCode> {
    let axis: SweepAxis = args.axis.parse()?;
    let (unit, label) = axis_unit(axis);
    let read = |s: &str| flag_quantity(s.trim(), axis.dimension(), unit);
    let values: Vec<f64> = match (&args.from, &args.to, args.steps) {
        (Some(a), Some(b), Some(n)) => {
            if n < 2 {
                bail!("--steps must be at least 2");
            }
            let (a, b) = (read(a)?, read(b)?);
            (0..n).map(|k| a + (b - a) * k as f64 / (n - 1) as f64).collect()
        }
        _ => args.values.iter().map(|v| read(v)).collect::<Result<_>>()?,
    };
    if values.is_empty() {
        bail!("no sweep values: pass --values or --from/--to/--steps");
    }

    let template = cfg.resolved_gate();
    template.validate()?;
    let rows = sweep(&template, axis, &values, c);
    let mut t = Table::new(&[
        (&axis.to_string(), label),
        ("t_f", "s"),
        ("t_total", "s"),
        ("phi_a", "rad"),
        ("p_exc", "1"),
        ("fidelity_metric", "1"),
        ("l_hold", "um"),
        ("all_pass", ""),
        ("error", ""),
    ]);
    let mut clean = true;
    for row in &rows {
        let shown = row.value / unit.si_factor();
        match &row.result {
            Ok(r) => {
                clean &= r.flags.all_pass();
                t.push(vec![
                    Cell::Num(shown),
                    Cell::Num(r.t_f),
                    Cell::Num(r.t_total),
                    Cell::Num(r.phi_a),
                    Cell::Num(r.p_exc_compression),
                    Cell::Num(r.hold_shift.fidelity_metric),
                    Cell::Num(r.hold.l * 1e6),
                    Cell::Bool(r.flags.all_pass()),
                    Cell::Empty,
                ]);
            }
            Err(e) => {
                clean = false;
                let mut cells = vec![Cell::Num(shown)];
                cells.extend(std::iter::repeat_n(Cell::Empty, 7));
                cells.push(Cell::Text(e.to_string()));
                t.push(cells);
            }
        }
    }
    write(cfg, &t.render(cfg.format)?)?;
    Ok(if clean { ExitCode::SUCCESS } else { ExitCode::from(2) })
}

fn cmd_verify(cfg: &RunConfig, args: &VerifyArgs, mut c: Constants) -> Result<ExitCode> {
    if let Some(k) = args.perturb_hbar {
        c.hbar *= k;
    }
    let results = verify::run_with(&c, VerifyOptions { with_oracle: !args.no_oracle });
    let all = results.iter().all(|r| r.pass);
    let text = match cfg.format {
        Format::Json => json_text(&serde_json::json!({ "all_pass": all, "criteria": results }))?,
        format => {
            let mut t =
                Table::new(&[("criterion", ""), ("status", ""), ("check", ""), ("measured", ""), ("expected", "")]);
            for r in &results {
                for k in &r.checks {
                    t.push(vec![
                        Cell::Text(format!("{} {}", r.id, r.title)),
                        Cell::Text(if k.pass { "PASS" } else { "FAIL" }.into()),
                        Cell::Text(k.label.clone()),
                        k.measured.map(Cell::Num).unwrap_or(Cell::Empty),
                        Cell::Text(k.error.clone().unwrap_or_else(|| k.expected.clone())),
                    ]);
                }
            }
            let mut s = t.render(format)?;
            if format == Format::Table {
                let passed = results.iter().filter(|r| r.pass).count();
                s.push_str(&format!("\n{passed}/{} criteria pass\n", results.len()));
            }
            s
        }
    };
    write(cfg, &text)?;
    Ok(if all { ExitCode::SUCCESS } else { ExitCode::from(2) })
}
