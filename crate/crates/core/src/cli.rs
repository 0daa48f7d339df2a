//! Command-line front end.
//!
//! Every subcommand writes one table to standard output (CSV unless
//! `--pretty`) and diagnostics to standard error. Exit codes: 0 success,
//! 1 usage or config error, 2 numeric failure, 3 domain error.

use std::ffi::OsString;
use std::f64::consts::PI;
use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{ArgAction, Args, CommandFactory, Parser, Subcommand};

use crate::config::{parse_bool, Config};
use crate::error::{Error, Result};
use crate::mathieu::Branch;
use crate::output::{self, fmt_sig, Table};
use crate::params::{self, MaterialSpec};
use crate::spectrum::{self, QuantumState, SweepConfig};
use crate::verify::{self, Suite};
use crate::wavefun::{self, WaveSpec};

/// `start:stop:step`, inclusive of `stop` when it lies on the grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Range {
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl Range {
    pub fn values(&self) -> Vec<f64> {
        let count = ((self.stop - self.start) / self.step * (1.0 + 1e-12)).floor() as usize;
        (0..=count).map(|i| self.start + i as f64 * self.step).collect()
    }
}

impl FromStr for Range {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(format!("expected start:stop:step, got '{s}'"));
        }
        let num = |t: &str| t.trim().parse::<f64>().map_err(|e| format!("'{t}': {e}"));
        let (start, stop, step) = (num(parts[0])?, num(parts[1])?, num(parts[2])?);
        if !(step > 0.0 && stop >= start && start.is_finite() && stop.is_finite()) {
            return Err(format!("range '{s}' needs step > 0 and stop >= start"));
        }
        if (stop - start) / step > 1e6 {
            return Err(format!("range '{s}' has more than a million points"));
        }
        Ok(Range { start, stop, step })
    }
}

#[derive(Debug, Parser)]
#[command(name = "qring", version, about = "Spectra of a quantum ring with a dipolar impurity and Aharonov-Bohm flux")]
#[command(args_override_self = true)]
pub struct Cli {
    /// key = value file with defaults for the chosen command; flags win.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,

    /// Aligned table instead of CSV.
    #[arg(long, global = true)]
    pub pretty: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct MaterialArgs {
    /// Built-in material names, comma separated.
    #[arg(long, value_delimiter = ',', action = ArgAction::Set, default_value = "GaAs")]
    pub material: Vec<String>,

    /// Confinement quantum ħω₀ in eV.
    #[arg(long = "hbar-omega0", value_name = "EV")]
    pub hbar_omega0: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct DipoleArgs {
    /// Dipole moments in atomic units, comma separated.
    #[arg(long = "D", value_delimiter = ',', action = ArgAction::Set, allow_negative_numbers = true)]
    pub dipole: Vec<f64>,

    /// Dipole grid start:stop:step.
    #[arg(long = "D-range", conflicts_with = "dipole", value_name = "START:STOP:STEP")]
    pub dipole_range: Option<Range>,
}

#[derive(Debug, Clone, Args)]
pub struct DeltaArgs {
    /// Flux ratios φ_AB/φ₀, comma separated.
    #[arg(long, value_delimiter = ',', action = ArgAction::Set, allow_negative_numbers = true)]
    pub delta: Vec<f64>,

    /// Flux grid start:stop:step.
    #[arg(long = "delta-range", conflicts_with = "delta", value_name = "START:STOP:STEP")]
    pub delta_range: Option<Range>,
}

#[derive(Debug, Clone, Args)]
pub struct StateArgs {
    /// Angular quantum numbers, comma separated.
    #[arg(long, value_delimiter = ',', action = ArgAction::Set, default_value = "0")]
    pub m: Vec<u32>,

    /// ce, se or both, comma separated.
    #[arg(long, value_delimiter = ',', action = ArgAction::Set, default_value = "ce")]
    pub parity: Vec<Branch>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Energies E/ħω₀ and in eV.
    #[command(args_override_self = true)]
    Energies {
        #[command(flatten)]
        material: MaterialArgs,
        #[command(flatten)]
        dipole: DipoleArgs,
        #[command(flatten)]
        delta: DeltaArgs,
        /// Radial quantum numbers, comma separated.
        #[arg(long, value_delimiter = ',', action = ArgAction::Set, default_value = "0")]
        nr: Vec<u32>,
        #[command(flatten)]
        state: StateArgs,
    },
    /// Dipole corrections λ_eff − √(λ² + m²) in units of ħω₀.
    #[command(args_override_self = true)]
    Corrections {
        #[command(flatten)]
        material: MaterialArgs,
        #[command(flatten)]
        dipole: DipoleArgs,
        #[command(flatten)]
        delta: DeltaArgs,
        #[command(flatten)]
        state: StateArgs,
    },
    /// Transition energies (n, m_hi) → (n, m_lo) with and without the dipole.
    #[command(args_override_self = true)]
    Transitions {
        #[command(flatten)]
        material: MaterialArgs,
        #[command(flatten)]
        dipole: DipoleArgs,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        delta: f64,
        #[arg(long, default_value_t = 0)]
        nr: u32,
        #[arg(long = "m-hi")]
        m_hi: u32,
        #[arg(long = "m-lo")]
        m_lo: u32,
        /// Parity of the states; an m_lo = 0 partner is always ce.
        #[arg(long, value_delimiter = ',', action = ArgAction::Set, default_value = "ce")]
        parity: Vec<Branch>,
    },
    /// Aharonov-Bohm corrections λ_eff(δ) − λ_eff(0).
    #[command(name = "ab-sweep", args_override_self = true)]
    AbSweep {
        #[command(flatten)]
        material: MaterialArgs,
        #[command(flatten)]
        dipole: DipoleArgs,
        #[command(flatten)]
        delta: DeltaArgs,
        #[command(flatten)]
        state: StateArgs,
    },
    /// Radial density or angular profile of one eigenfunction.
    #[command(args_override_self = true)]
    Wavefunction {
        #[arg(long, default_value = "GaAs")]
        material: String,
        #[arg(long = "D", default_value_t = 0.0, allow_negative_numbers = true)]
        dipole: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        delta: f64,
        #[arg(long, default_value_t = 0)]
        nr: u32,
        #[arg(long, default_value_t = 0)]
        m: u32,
        #[arg(long, default_value = "ce")]
        parity: Branch,
        /// radial or angular.
        #[arg(long, default_value = "radial")]
        profile: String,
        /// Outer radius of the radial grid in oscillator lengths.
        #[arg(long = "r-max", default_value_t = 8.0, allow_negative_numbers = true)]
        r_max: f64,
        /// Radius of the angular profile in oscillator lengths; defaults to
        /// the radial density maximum of the nodeless state.
        #[arg(long)]
        radius: Option<f64>,
        #[arg(long, default_value_t = 401)]
        points: usize,
    },
    /// Built-in material table.
    #[command(args_override_self = true)]
    Materials,
    /// Compare analytic results with the brute-force oracles.
    #[command(args_override_self = true)]
    Verify {
        #[arg(long, default_value = "all")]
        suite: Suite,
    },
}

fn materials(args: &MaterialArgs) -> Result<Vec<MaterialSpec>> {
    args.material
        .iter()
        .map(|name| {
            let m = params::material(name)?;
            match args.hbar_omega0 {
                Some(ev) => {
                    let m = m.with_hbar_omega0(ev);
                    m.validate()?;
                    Ok(m)
                }
                None => Ok(m),
            }
        })
        .collect()
}

fn dipoles(args: &DipoleArgs) -> Vec<f64> {
    match (&args.dipole_range, args.dipole.is_empty()) {
        (Some(r), _) => r.values(),
        (None, true) => vec![0.0],
        (None, false) => args.dipole.clone(),
    }
}

fn deltas(args: &DeltaArgs) -> Vec<f64> {
    match (&args.delta_range, args.delta.is_empty()) {
        (Some(r), _) => r.values(),
        (None, true) => vec![0.0],
        (None, false) => args.delta.clone(),
    }
}

/// Valid (m, parity) combinations; se with m = 0 is skipped unless it is
/// the only one requested.
fn states(nr: &[u32], args: &StateArgs, delta: f64) -> Result<Vec<QuantumState>> {
    let mut out = Vec::new();
    let mut first_err = None;
    for &n in nr {
        for &m in &args.m {
            for &p in &args.parity {
                match QuantumState::new(n, m, p, delta) {
                    Ok(s) => out.push(s),
                    Err(e) => first_err = first_err.or(Some(e)),
                }
            }
        }
    }
    match (out.is_empty(), first_err) {
        (true, Some(e)) => Err(e),
        _ => Ok(out),
    }
}

/// Output plus the first per-row failure, if any.
struct Outcome {
    table: Table,
    row_error: Option<Error>,
}

impl Outcome {
    fn ok(table: Table) -> Self {
        Outcome { table, row_error: None }
    }
}

fn note_row_error(slot: &mut Option<Error>, err: &mut dyn Write, what: &str, e: Error) {
    let _ = writeln!(err, "qring: skipped {what}: {e}");
    if slot.is_none() {
        *slot = Some(e);
    }
}

fn energies(m: &MaterialArgs, d: &DipoleArgs, dl: &DeltaArgs, nr: &[u32], s: &StateArgs, err: &mut dyn Write) -> Result<Outcome> {
    let mut table = Table::new(output::ENERGIES_SCHEMA);
    let mut row_error = None;
    for delta in deltas(dl) {
        let cfg = SweepConfig { materials: materials(m)?, states: states(nr, s, delta)?, dipoles: dipoles(d) };
        for row in spectrum::sweep(&cfg) {
            match row.result {
                Ok(r) => table.push(vec![
                    row.material,
                    fmt_sig(row.dipole),
                    row.state.n_r.to_string(),
                    row.state.m.to_string(),
                    row.state.parity.to_string(),
                    fmt_sig(delta),
                    fmt_sig(r.row.char_value),
                    fmt_sig(r.row.lambda_eff),
                    fmt_sig(r.energy_hw),
                    fmt_sig(r.energy_ev),
                ]),
                Err(e) => {
                    let what = format!("{} D={} {:?}", row.material, row.dipole, row.state);
                    note_row_error(&mut row_error, err, &what, e);
                }
            }
        }
    }
    Ok(Outcome { table, row_error })
}

fn corrections(m: &MaterialArgs, d: &DipoleArgs, dl: &DeltaArgs, s: &StateArgs, err: &mut dyn Write) -> Result<Outcome> {
    let mut table = Table::new(output::CORRECTIONS_SCHEMA);
    let mut row_error = None;
    for delta in deltas(dl) {
        let mats = materials(m)?;
        let cfg = SweepConfig { materials: mats.clone(), states: states(&[0], s, delta)?, dipoles: dipoles(d) };
        for row in spectrum::sweep(&cfg) {
            match row.result {
                Ok(r) => table.push(vec![
                    row.material,
                    fmt_sig(row.dipole),
                    fmt_sig(r.row.q_mathieu),
                    row.state.m.to_string(),
                    row.state.parity.to_string(),
                    fmt_sig(delta),
                    fmt_sig(r.row.char_value),
                    fmt_sig(r.row.lambda_eff),
                    fmt_sig(r.row.correction),
                ]),
                Err(e) => {
                    let what = format!("{} D={} m={} {}", row.material, row.dipole, row.state.m, row.state.parity);
                    note_row_error(&mut row_error, err, &what, e);
                }
            }
        }
    }
    Ok(Outcome { table, row_error })
}

#[allow(clippy::too_many_arguments)]
fn transitions(
    m: &MaterialArgs,
    d: &DipoleArgs,
    delta: f64,
    nr: u32,
    m_hi: u32,
    m_lo: u32,
    parity: &[Branch],
    err: &mut dyn Write,
) -> Result<Outcome> {
    let mut table = Table::new(output::TRANSITIONS_SCHEMA);
    let mut row_error = None;
    for mat in materials(m)? {
        for &p in parity {
            let upper = QuantumState::new(nr, m_hi, p, delta)?;
            let lower_parity = if m_lo == 0 { Branch::Ce } else { p };
            let lower = QuantumState::new(nr, m_lo, lower_parity, delta)?;
            let mut ds = dipoles(d);
            ds.sort_by(f64::total_cmp);
            for dip in ds {
                match spectrum::transition(&upper, &lower, &mat, dip) {
                    Ok(t) => table.push(vec![
                        mat.name.clone(),
                        fmt_sig(dip),
                        nr.to_string(),
                        m_hi.to_string(),
                        m_lo.to_string(),
                        p.to_string(),
                        fmt_sig(t.de_with_dipole),
                        fmt_sig(t.de_without_dipole),
                        fmt_sig(100.0 * t.relative_shift),
                    ]),
                    Err(e @ Error::Parameter(_)) => return Err(e),
                    Err(e) => note_row_error(&mut row_error, err, &format!("{} D={dip}", mat.name), e),
                }
            }
        }
    }
    Ok(Outcome { table, row_error })
}

fn ab_sweep(m: &MaterialArgs, d: &DipoleArgs, dl: &DeltaArgs, s: &StateArgs, err: &mut dyn Write) -> Result<Outcome> {
    let mut table = Table::new(output::AB_SWEEP_SCHEMA);
    let mut row_error = None;
    let mut ds = dipoles(d);
    ds.sort_by(f64::total_cmp);
    let mut flux = deltas(dl);
    flux.sort_by(f64::total_cmp);
    for mat in materials(m)? {
        for state in states(&[0], s, 0.0)? {
            for &dip in &ds {
                for &delta in &flux {
                    let res = spectrum::ab_correction(&state, &mat, delta, dip)
                        .and_then(|c| spectrum::qr_energy(&state.with_delta(delta), &mat, dip).map(|r| (c, r)));
                    match res {
                        Ok((c, r)) => table.push(vec![
                            mat.name.clone(),
                            fmt_sig(dip),
                            state.m.to_string(),
                            state.parity.to_string(),
                            fmt_sig(delta),
                            fmt_sig(r.row.lambda_eff),
                            fmt_sig(c),
                        ]),
                        Err(e) => {
                            let what = format!("{} D={dip} delta={delta} m={}", mat.name, state.m);
                            note_row_error(&mut row_error, err, &what, e);
                        }
                    }
                }
            }
        }
    }
    Ok(Outcome { table, row_error })
}

#[allow(clippy::too_many_arguments)]
fn wavefunction(
    material: &str,
    dipole: f64,
    delta: f64,
    nr: u32,
    m: u32,
    parity: Branch,
    profile: &str,
    r_max: f64,
    radius: Option<f64>,
    points: usize,
) -> Result<Outcome> {
    if points < 2 {
        return Err(Error::Parameter("need at least two profile points".into()));
    }
    let params = params::from_material(&params::material(material)?, dipole, delta)?;
    let spec = WaveSpec::new(&QuantumState::new(nr, m, parity, delta)?, &params)?;
    match profile {
        "radial" => {
            if !(r_max > 0.0) {
                return Err(Error::Parameter("r-max must be positive".into()));
            }
            let grid: Vec<f64> =
                (0..points).map(|i| r_max * spec.a * i as f64 / (points - 1) as f64).collect();
            let prof = wavefun::radial_profile(&spec, &grid)?;
            let mut table = Table::new(output::RADIAL_PROFILE_SCHEMA);
            for p in prof.points {
                table.push(vec![fmt_sig(p.r), fmt_sig(p.density), prof.nodes.to_string()]);
            }
            Ok(Outcome::ok(table))
        }
        "angular" => {
            let r = radius.unwrap_or((2.0 * spec.alpha).sqrt()) * spec.a;
            let mut table = Table::new(output::ANGULAR_PROFILE_SCHEMA);
            for i in 0..points {
                let theta = 2.0 * PI * i as f64 / (points - 1) as f64;
                let v = wavefun::psi(&spec, r, theta)?;
                table.push(vec![fmt_sig(theta), fmt_sig(v.norm_sqr()), fmt_sig(v.re), fmt_sig(v.im)]);
            }
            Ok(Outcome::ok(table))
        }
        other => Err(Error::Config(format!("unknown profile '{other}', expected radial or angular"))),
    }
}

fn materials_table() -> Outcome {
    let mut table = Table::new(output::MATERIALS_SCHEMA);
    for m in params::builtin_materials() {
        table.push(vec![
            m.name.clone(),
            fmt_sig(m.m_star),
            fmt_sig(m.eps_r),
            fmt_sig(m.lambda),
            fmt_sig(m.hbar_omega0),
            fmt_sig(4.0 * m.mass_over_permittivity()),
        ]);
    }
    Outcome::ok(table)
}

fn verify_table(suite: Suite) -> Result<Outcome> {
    let checks = verify::run(suite)?;
    let mut table = Table::new(output::VERIFY_SCHEMA);
    let mut failed = 0;
    for c in &checks {
        if c.pass == Some(false) {
            failed += 1;
        }
        table.push(vec![
            c.suite.to_string(),
            c.name.clone(),
            fmt_sig(c.value),
            fmt_sig(c.reference),
            fmt_sig(c.error),
            fmt_sig(c.tolerance),
            c.status().to_string(),
        ]);
    }
    let row_error = (failed > 0).then(|| Error::Convergence {
        what: format!("{failed} oracle checks"),
        last: failed as f64,
        previous: checks.len() as f64,
    });
    Ok(Outcome { table, row_error })
}

fn execute(cli: &Cli, err: &mut dyn Write) -> Result<Outcome> {
    match &cli.command {
        Command::Energies { material, dipole, delta, nr, state } => energies(material, dipole, delta, nr, state, err),
        Command::Corrections { material, dipole, delta, state } => corrections(material, dipole, delta, state, err),
        Command::Transitions { material, dipole, delta, nr, m_hi, m_lo, parity } => {
            transitions(material, dipole, *delta, *nr, *m_hi, *m_lo, parity, err)
        }
        Command::AbSweep { material, dipole, delta, state } => ab_sweep(material, dipole, delta, state, err),
        Command::Wavefunction { material, dipole, delta, nr, m, parity, profile, r_max, radius, points } => {
            wavefunction(material, *dipole, *delta, *nr, *m, *parity, profile, *r_max, *radius, *points)
        }
        Command::Materials => Ok(materials_table()),
        Command::Verify { suite } => verify_table(*suite),
    }
}

/// Splices `--config FILE` entries into the argument list ahead of the
/// explicit flags so the flags override them.
pub fn merge_config(mut argv: Vec<String>) -> Result<Vec<String>> {
    let mut path = None;
    let mut i = 1;
    while i < argv.len() {
        if argv[i] == "--" {
            break;
        }
        if argv[i] == "--config" {
            if i + 1 >= argv.len() {
                return Err(Error::Config("--config needs a file".into()));
            }
            path = Some(argv.remove(i + 1));
            argv.remove(i);
            continue;
        }
        if let Some(p) = argv[i].strip_prefix("--config=") {
            path = Some(p.to_string());
            argv.remove(i);
            continue;
        }
        i += 1;
    }
    let Some(path) = path else { return Ok(argv) };
    let mut config = Config::load(path.as_ref())?;
    let root = Cli::command();
    let names: Vec<String> = root.get_subcommands().map(|s| s.get_name().to_string()).collect();
    let from_config = config.take("command");
    let pos = match argv.iter().skip(1).position(|a| names.contains(a)) {
        Some(p) => p + 1,
        None => {
            let cmd = from_config.ok_or_else(|| Error::Config("no command given on the command line or in the config".into()))?;
            if !names.contains(&cmd) {
                return Err(Error::Config(format!("unknown command '{cmd}' in config")));
            }
            argv.insert(1, cmd);
            1
        }
    };
    let sub = root.find_subcommand(&argv[pos]).expect("subcommand exists");
    let args: Vec<&clap::Arg> = sub.get_arguments().chain(root.get_arguments()).collect();
    let allowed: Vec<String> = args
        .iter()
        .filter_map(|a| a.get_long())
        .filter(|l| !matches!(*l, "config" | "help" | "version"))
        .map(str::to_string)
        .collect();
    config.check_keys(&allowed)?;
    let mut injected = Vec::new();
    for (key, value) in &config.entries {
        let arg = args.iter().find(|a| a.get_long() == Some(key.as_str())).expect("key checked");
        if matches!(arg.get_action(), ArgAction::SetTrue) {
            if parse_bool(key, value)? {
                injected.push(format!("--{key}"));
            }
        } else {
            injected.push(format!("--{key}={value}"));
        }
    }
    argv.splice(pos + 1..pos + 1, injected);
    Ok(argv)
}

/// Runs the CLI and returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString>,
{
    let argv: Vec<String> = args.into_iter().map(|a| a.into().to_string_lossy().into_owned()).collect();
    let argv = match merge_config(argv) {
        Ok(a) => a,
        Err(e) => {
            let _ = writeln!(err, "qring: {e}");
            return e.exit_code();
        }
    };
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{text}");
                return 1;
            }
            let _ = write!(out, "{text}");
            return 0;
        }
    };
    let outcome = match execute(&cli, err) {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(err, "qring: {e}");
            return e.exit_code();
        }
    };
    let text = if cli.pretty {
        Ok(outcome.table.to_pretty())
    } else {
        outcome.table.to_csv()
    };
    match text {
        Ok(t) => {
            if out.write_all(t.as_bytes()).and_then(|_| out.flush()).is_err() {
                return 2;
            }
        }
        Err(e) => {
            let _ = writeln!(err, "qring: {e}");
            return e.exit_code();
        }
    }
    match outcome.row_error {
        Some(e) => {
            if matches!(cli.command, Command::Verify { .. }) {
                let _ = writeln!(err, "qring: verification failed: {e}");
            }
            e.exit_code()
        }
        None => 0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut argv = vec!["qring"];
        argv.extend_from_slice(args);
        let code = run(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn range_values() {
        let r: Range = "0:1:0.25".parse().unwrap();
        assert_eq!(r.values(), vec![0.0, 0.25, 0.5, 0.75, 1.0]);
        let r: Range = "0:10:0.1".parse().unwrap();
        assert_eq!(r.values().len(), 101);
        assert!("1:0:0.1".parse::<Range>().is_err());
        assert!("0:1".parse::<Range>().is_err());
        assert!("0:1:0".parse::<Range>().is_err());
    }

    #[test]
    fn energies_single_state() {
        let (code, out, _) = call(&["energies", "--material", "GaAs", "--nr", "0", "--m", "1", "--parity", "ce"]);
        assert_eq!(code, 0);
        let line = out.lines().nth(1).unwrap();
        assert!(line.starts_with("GaAs,0,0,1,ce,0,4,2.2360679775,3.2360679775,"), "{line}");
    }

    #[test]
    fn usage_errors() {
        assert_eq!(call(&["energies", "--bogus"]).0, 1);
        assert_eq!(call(&[]).0, 1);
        assert_eq!(call(&["corrections", "--D", "1", "--D-range", "0:1:1"]).0, 1);
    }

    #[test]
    fn domain_errors() {
        assert_eq!(call(&["energies", "--m", "0", "--parity", "se"]).0, 3);
        assert_eq!(call(&["energies", "--material", "Unobtainium"]).0, 3);
    }

    #[test]
    fn help_exits_zero() {
        let (code, out, _) = call(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("corrections"));
    }

    #[test]
    fn skips_se_zero_in_lists() {
        let (code, out, _) = call(&["corrections", "--m", "0,1", "--parity", "ce,se", "--D", "10"]);
        assert_eq!(code, 0);
        assert_eq!(out.lines().count(), 4);
    }

    #[test]
    fn negative_dipole_rows_fail() {
        let (code, out, err) = call(&["corrections", "--D=-1,1"]);
        assert_eq!(code, 3);
        assert_eq!(out.lines().count(), 2);
        assert!(err.contains("skipped"));
    }

    #[test]
    fn materials_lists_builtins() {
        let (code, out, _) = call(&["materials"]);
        assert_eq!(code, 0);
        assert!(out.contains("GaAs") && out.contains("CdSe"));
    }

    #[test]
    fn pretty_output() {
        let (code, out, _) = call(&["energies", "--pretty"]);
        assert_eq!(code, 0);
        assert!(out.lines().nth(1).unwrap().starts_with('-'));
    }

    #[test]
    fn transitions_reject_mismatch() {
        assert_eq!(call(&["transitions", "--m-hi", "1", "--m-lo", "1"]).0, 3);
    }
}
