//! `nogo` command line: runs experiments and writes one CSV table.

use std::fmt::Write as _;
use std::io::{self, Write};

use clap::{Parser, ValueEnum};

use crate::error::Result;
use crate::nogo::{
    self, ancilla_orthogonality, cloning_holevo, deleting_entropy_gap, demon_deletion,
    demon_spectrum_change, entanglement_cloning, entanglement_deleting, holevo_monotonicity,
    linearity_obstruction, overlap_grid, relative_entropy_monotonicity, sharper_deleting_entropies,
    spectrum_conservation, CloningScenario, CopyTask, DeletingScenario, ExperimentReport,
    LinearityFit, Verdict,
};
use crate::states::{plus, PureState};

pub const CSV_HEADER: &str = "experiment,index,s,param,value_a,value_b,verdict,expected";

const AFTER_HELP: &str = "\
CSV columns: experiment,index,s,param,value_a,value_b,verdict,expected

  experiment                     param      value_a                value_b
  delete-gap                     -          S_in                   S_out
  delete-sweep                   t          S_in                   S_out
  clone-holevo                   e          chi_in                 chi_out
  clone-holevo-weak              e          chi_in                 chi_out
  entangle-delete                t          E_before               E_after
  entangle-clone                 e          E_before               E_after
  linearity-clone                -          training_residual      max_heldout_residual
  linearity-delete               -          training_residual      max_heldout_residual
  linearity-delete-classical     -          training_residual      plus_residual
  spectrum-conservation          dim        max_deviation          -
  relative-entropy-monotonicity  trials     violations             max_gap
  holevo-monotonicity            trials     violations             max_gap
  demon-deletion                 trials     max_channel_deviation  min_dilation_fidelity
  demon-spectrum                 -          deviation_mixed        deviation_plus
  ancilla-orthogonal             -          gram_defect            -
  ancilla-identical              -          gram_defect            -
  cnot-deletion                  -          fidelity_classical     fidelity_plus

Entropies are in bits. Rows are sorted by experiment name, then sweep index.
Exit status: 0 when every verdict matches its expectation, 1 otherwise,
2 on usage errors.";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// Symmetric-subspace entropy against the post-deletion subspace entropy.
    DeleteGap,
    /// Averaged-pair entropies of a deleting machine over the overlap grid.
    DeleteSweep,
    /// Holevo quantities of exact and weak cloning over the overlap grid.
    CloneSweep,
    /// Alice–Bob entanglement before and after local deletion.
    EntangleDelete,
    /// Alice–Bob entanglement before and after local cloning.
    EntangleClone,
    /// Least-squares linear deleting and cloning maps.
    Fit,
    /// Spectrum, relative-entropy and Holevo conservation sweeps.
    Conserve,
    /// Open-system deletion by measurement, ancilla and CNOT checks.
    Demon,
    /// Every experiment above.
    All,
}

#[derive(Clone, Debug, Parser)]
#[command(name = "nogo", version, about = "No-cloning and no-deleting against entropy and entanglement conservation", after_help = AFTER_HELP)]
pub struct Args {
    #[arg(value_enum)]
    pub command: Command,
    /// Number of points on the overlap grid [0, 1], endpoints included.
    #[arg(long, default_value_t = 11)]
    pub overlap_steps: usize,
    /// Overlap of the environment records |e_ψ1⟩, |e_ψ2⟩, in [0, 1].
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub env_overlap: f64,
    /// Overlap of the post-deletion ancillas, in [0, 1]; 1 is exact deletion.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub ancilla_overlap: f64,
    /// Random trials for the conservation and linearity sweeps.
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
    /// Verdict tolerance, in bits.
    #[arg(long, default_value_t = nogo::DEFAULT_TOLERANCE, allow_negative_numbers = true)]
    pub tolerance: f64,
    /// Write the CSV here instead of standard output.
    #[arg(long)]
    pub out: Option<String>,
}

/// Validated run parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub overlap_steps: usize,
    pub env_overlap: f64,
    pub ancilla_overlap: f64,
    pub trials: usize,
    pub seed: u64,
    pub tolerance: f64,
    pub output_path: Option<String>,
}

/// A flag outside its documented range.
#[derive(Clone, Debug, PartialEq)]
pub struct UsageError {
    pub flag: &'static str,
    pub message: String,
}

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "invalid value for {}: {}", self.flag, self.message)
    }
}

impl TryFrom<Args> for RunConfig {
    type Error = UsageError;

    fn try_from(a: Args) -> std::result::Result<Self, UsageError> {
        let unit = |flag: &'static str, x: f64| {
            if (0.0..=1.0).contains(&x) {
                Ok(())
            } else {
                Err(UsageError {
                    flag,
                    message: format!("{x} is outside [0, 1]"),
                })
            }
        };
        if a.overlap_steps < 2 {
            return Err(UsageError {
                flag: "--overlap-steps",
                message: format!("{} is below the minimum of 2", a.overlap_steps),
            });
        }
        unit("--env-overlap", a.env_overlap)?;
        unit("--ancilla-overlap", a.ancilla_overlap)?;
        if a.trials < 1 {
            return Err(UsageError {
                flag: "--trials",
                message: "must be at least 1".into(),
            });
        }
        if !(a.tolerance.is_finite() && a.tolerance > 0.0) {
            return Err(UsageError {
                flag: "--tolerance",
                message: format!("{} must be a positive finite number", a.tolerance),
            });
        }
        Ok(RunConfig {
            command: a.command,
            overlap_steps: a.overlap_steps,
            env_overlap: a.env_overlap,
            ancilla_overlap: a.ancilla_overlap,
            trials: a.trials,
            seed: a.seed,
            tolerance: a.tolerance,
            output_path: a.out,
        })
    }
}

/// One CSV row.
#[derive(Clone, Debug, PartialEq)]
pub struct Row {
    pub experiment: String,
    pub index: usize,
    pub s: Option<f64>,
    pub param: Option<f64>,
    pub value_a: f64,
    pub value_b: Option<f64>,
    pub verdict: Verdict,
    pub expected: Verdict,
}

impl Row {
    fn from_report(r: &ExperimentReport, index: usize) -> Self {
        let s = r.param("s");
        let param = r.params.iter().find(|(n, _)| n != "s").map(|(_, v)| *v);
        Row {
            experiment: r.name.clone(),
            index,
            s,
            param,
            value_a: r.quantities[0].1,
            value_b: r.quantities.get(1).map(|(_, v)| *v),
            verdict: r.verdict,
            expected: r.expected,
        }
    }

    fn renamed(mut self, name: &str) -> Self {
        self.experiment = name.into();
        self
    }

    pub fn to_csv(&self) -> String {
        let opt = |x: Option<f64>| x.map(format_float).unwrap_or_default();
        format!(
            "{},{},{},{},{},{},{},{}",
            self.experiment,
            self.index,
            opt(self.s),
            opt(self.param),
            format_float(self.value_a),
            opt(self.value_b),
            self.verdict,
            self.expected
        )
    }
}

/// Nine significant digits, locale independent.
pub fn format_float(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return if x.is_nan() {
            "nan".into()
        } else if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    let sci = format!("{x:.8e}");
    let exponent: i32 = sci[sci.find('e').expect("exponent") + 1..]
        .parse()
        .expect("integer exponent");
    if (-4..9).contains(&exponent) {
        // Exponent taken after rounding, so 0.9999999999 prints as 1.00000000.
        let decimals = (8 - exponent) as usize;
        format!("{x:.decimals$}")
    } else {
        sci
    }
}

fn sweep<F>(grid: &[f64], name: &str, mut run: F) -> Result<Vec<Row>>
where
    F: FnMut(f64) -> Result<ExperimentReport>,
{
    grid.iter()
        .enumerate()
        .map(|(i, &s)| Ok(Row::from_report(&run(s)?, i).renamed(name)))
        .collect()
}

fn classical_deletion_row(tolerance: f64) -> Result<Row> {
    let fit = LinearityFit::train(
        CopyTask::Delete,
        &[PureState::basis(2, 0), PureState::basis(2, 1)],
    )?;
    Ok(Row {
        experiment: "linearity-delete-classical".into(),
        index: 0,
        s: None,
        param: None,
        value_a: fit.training_residual,
        value_b: Some(fit.residual(&plus())),
        verdict: if fit.training_residual > tolerance {
            Verdict::Violates
        } else {
            Verdict::Consistent
        },
        expected: Verdict::Consistent,
    })
}

fn cnot_row(tolerance: f64) -> Result<Row> {
    let classical = nogo::cnot_deletion_fidelity(&PureState::basis(2, 0))?
        .min(nogo::cnot_deletion_fidelity(&PureState::basis(2, 1))?);
    let quantum = nogo::cnot_deletion_fidelity(&plus())?;
    Ok(Row {
        experiment: "cnot-deletion".into(),
        index: 0,
        s: None,
        param: None,
        value_a: classical,
        value_b: Some(quantum),
        verdict: if 1.0 - quantum > tolerance {
            Verdict::Violates
        } else {
            Verdict::Consistent
        },
        expected: Verdict::Violates,
    })
}

/// Rows for one command, sorted by experiment name then index.
pub fn collect_rows(cfg: &RunConfig) -> Result<Vec<Row>> {
    let tol = cfg.tolerance;
    let grid = overlap_grid(cfg.overlap_steps);
    let mut rows = Vec::new();
    let commands: &[Command] = match cfg.command {
        Command::All => &[
            Command::DeleteGap,
            Command::DeleteSweep,
            Command::CloneSweep,
            Command::EntangleDelete,
            Command::EntangleClone,
            Command::Fit,
            Command::Conserve,
            Command::Demon,
        ],
        ref c => std::slice::from_ref(c),
    };
    for command in commands {
        match command {
            Command::DeleteGap => rows.push(Row::from_report(&deleting_entropy_gap(tol)?, 0)),
            Command::DeleteSweep => {
                let t = cfg.ancilla_overlap;
                let s_grid: Vec<f64> = grid.iter().map(|s| s * t).collect();
                rows.extend(sweep(&s_grid, "delete-sweep", |s| {
                    sharper_deleting_entropies(&DeletingScenario::new(s, t)?, tol)
                })?);
            }
            Command::CloneSweep => {
                let e = cfg.env_overlap;
                rows.extend(sweep(&grid, "clone-holevo", |s| {
                    cloning_holevo(&CloningScenario::new(s, e)?, false, tol)
                })?);
                rows.extend(sweep(&grid, "clone-holevo-weak", |s| {
                    cloning_holevo(&CloningScenario::new(s, e)?, true, tol)
                })?);
            }
            Command::EntangleDelete => rows.extend(sweep(&grid, "entangle-delete", |s| {
                entanglement_deleting(&DeletingScenario::exact(s)?, tol)
            })?),
            Command::EntangleClone => {
                let e = cfg.env_overlap;
                rows.extend(sweep(&grid, "entangle-clone", |s| {
                    entanglement_cloning(&CloningScenario::new(s, e)?, tol)
                })?);
            }
            Command::Fit => {
                for task in [CopyTask::Clone, CopyTask::Delete] {
                    rows.push(Row::from_report(
                        &linearity_obstruction(task, cfg.trials, cfg.seed, tol)?,
                        0,
                    ));
                }
                rows.push(classical_deletion_row(tol)?);
            }
            Command::Conserve => {
                let mut spectrum =
                    Row::from_report(&spectrum_conservation(cfg.trials, 4, cfg.seed, tol)?, 0);
                spectrum.param = Some(4.0);
                rows.push(spectrum);
                rows.push(Row::from_report(
                    &relative_entropy_monotonicity(cfg.trials, cfg.seed, tol)?,
                    0,
                ));
                rows.push(Row::from_report(
                    &holevo_monotonicity(cfg.trials, cfg.seed, tol)?,
                    0,
                ));
            }
            Command::Demon => {
                rows.push(Row::from_report(
                    &demon_deletion(cfg.trials, cfg.seed, tol)?,
                    0,
                ));
                rows.push(Row::from_report(&demon_spectrum_change(tol)?, 0));
                let zero = PureState::basis(2, 0);
                let one = PureState::basis(2, 1);
                rows.push(
                    Row::from_report(&ancilla_orthogonality(&zero, &one, tol)?, 0)
                        .renamed("ancilla-orthogonal"),
                );
                rows.push(
                    Row::from_report(&ancilla_orthogonality(&zero, &zero, tol)?, 0)
                        .renamed("ancilla-identical"),
                );
                rows.push(cnot_row(tol)?);
            }
            Command::All => unreachable!("expanded above"),
        }
    }
    rows.sort_by(|a, b| a.experiment.cmp(&b.experiment).then(a.index.cmp(&b.index)));
    Ok(rows)
}

pub fn render_csv(rows: &[Row]) -> String {
    let mut out = String::with_capacity(64 * (rows.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&r.to_csv());
        out.push('\n');
    }
    out
}

/// Per-experiment summary for humans.
pub fn render_summary(rows: &[Row]) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<32} {:>5} {:>9} {:>9}  status",
        "experiment", "rows", "violates", "mismatch"
    );
    let mut i = 0;
    while i < rows.len() {
        let name = &rows[i].experiment;
        let group: Vec<&Row> = rows[i..]
            .iter()
            .take_while(|r| &r.experiment == name)
            .collect();
        let violates = group
            .iter()
            .filter(|r| r.verdict == Verdict::Violates)
            .count();
        let mismatch = group.iter().filter(|r| r.verdict != r.expected).count();
        let _ = writeln!(
            out,
            "{:<32} {:>5} {:>9} {:>9}  {}",
            name,
            group.len(),
            violates,
            mismatch,
            if mismatch == 0 { "ok" } else { "UNEXPECTED" }
        );
        i += group.len();
    }
    out
}

/// Runs the configured experiments, writes the CSV to `csv` and the summary
/// to `summary`; returns the process exit code (0 all as expected, 1 not).
pub fn run_with(cfg: &RunConfig, csv: &mut dyn Write, summary: &mut dyn Write) -> Result<i32> {
    let rows = collect_rows(cfg)?;
    csv.write_all(render_csv(&rows).as_bytes())
        .and_then(|_| csv.flush())
        .map_err(|e| crate::error::Error::InvalidState(format!("cannot write CSV: {e}")))?;
    let _ = summary.write_all(render_summary(&rows).as_bytes());
    Ok(if rows.iter().all(|r| r.verdict == r.expected) {
        0
    } else {
        1
    })
}

/// Entry point used by the binary.
pub fn run(cfg: &RunConfig) -> i32 {
    let mut stderr = io::stderr();
    let result = match &cfg.output_path {
        Some(path) => match std::fs::File::create(path) {
            Ok(mut f) => run_with(cfg, &mut f, &mut stderr),
            Err(e) => {
                eprintln!("error: cannot create {path}: {e}");
                return 2;
            }
        },
        None => run_with(cfg, &mut io::stdout().lock(), &mut stderr),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

/// Parses `argv` and runs; usage errors exit with 2.
pub fn main_with_args<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args = match Args::try_parse_from(argv) {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match RunConfig::try_from(args) {
        Ok(cfg) => run(&cfg),
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}
