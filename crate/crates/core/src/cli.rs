//! The `ontolabel` command line.
//!
//! Exit codes: 0 when every check passes, 1 when an axiom or theorem check
//! fails, 2 on parse, argument or I/O errors.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::axioms::{
    check_axiom, infer_scales, theorem_macro_distinct, theorem_unitary_x_micro, validate, AxiomId,
    CandidateSystem,
};
use crate::exchange::{
    antisymmetrize, apply_transposition, exchange_degeneracy_class, parse_modes, pauli_admissible,
    symmetrize, symmetry_class, StateVector, Transposition,
};
use crate::model::OntoSystem;
use crate::report::{AxiomEntry, Report, Status, Table, TheoremEntry};
use crate::stats::{
    count_closed_form, enumerate_microstates, mean_occupation, Microstate, ModeSpec, StatisticsRule,
};
use crate::{dsl, Error};

#[derive(Debug, Parser)]
#[command(
    name = "ontolabel",
    version,
    about = "Check hidden-variable particle systems, exchange algebra and microstate counts"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check all seven axioms on a system file.
    Validate(FileArgs),
    /// Print the ontological and physical identity matrices.
    Relations(FileArgs),
    /// Check the macro-distinctness and unitary-X theorems.
    Theorems(FileArgs),
    /// Apply permutation operators to a product ket.
    Exchange(ExchangeArgs),
    /// Compare enumerated microstate counts with closed forms.
    Count(CountArgs),
    /// Canonical mean occupation of each mode.
    Occupancy(OccupancyArgs),
}

#[derive(Debug, Args)]
pub struct FileArgs {
    /// System description in the line-oriented input language.
    pub file: PathBuf,
    /// Mark particles that share a physical state with another as micro
    /// before checking.
    #[arg(long)]
    pub infer_scales: bool,
    /// Emit JSON instead of text.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct ExchangeArgs {
    /// Comma-separated modes, slot i holding the mode of particle i.
    #[arg(long)]
    pub modes: String,
    #[command(flatten)]
    pub op: ExchangeOp,
    /// Emit JSON instead of text.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct ExchangeOp {
    /// Apply the transposition P_ij, given as `i,j`.
    #[arg(long, value_name = "I,J")]
    pub swap: Option<String>,
    /// Project onto the symmetric subspace.
    #[arg(long)]
    pub symmetrize: bool,
    /// Project onto the antisymmetric subspace.
    #[arg(long)]
    pub antisymmetrize: bool,
    /// Report whether the ket is symmetric, antisymmetric or neither.
    #[arg(long)]
    pub classify: bool,
    /// List every ket consistent with the same measurement outcome.
    #[arg(long)]
    pub degeneracy: bool,
    /// Check whether fermions can occupy the given modes.
    #[arg(long)]
    pub pauli: bool,
}

#[derive(Debug, Args)]
pub struct CountArgs {
    /// Number of particles.
    #[arg(long, allow_negative_numbers = true)]
    pub particles: i64,
    /// Number of modes.
    #[arg(long)]
    pub modes: usize,
    /// mb, be, fd or all.
    #[arg(long, default_value = "all")]
    pub stats: String,
    /// Also list every microstate.
    #[arg(long)]
    pub list: bool,
    /// Emit JSON instead of text.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct OccupancyArgs {
    /// Comma-separated mode energies.
    #[arg(long, allow_hyphen_values = true)]
    pub energies: String,
    /// Number of particles.
    #[arg(long, allow_negative_numbers = true)]
    pub particles: i64,
    /// Inverse temperature, at least 0.
    #[arg(long, allow_negative_numbers = true)]
    pub beta: f64,
    /// mb, be, fd or all.
    #[arg(long, default_value = "all")]
    pub stats: String,
    /// Emit JSON instead of text.
    #[arg(long)]
    pub json: bool,
}

impl Command {
    fn json(&self) -> bool {
        match self {
            Command::Validate(a) | Command::Relations(a) | Command::Theorems(a) => a.json,
            Command::Exchange(a) => a.json,
            Command::Count(a) => a.json,
            Command::Occupancy(a) => a.json,
        }
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// rendered output with the exit code.
pub fn run_cli<I, T>(args: I) -> (String, i32)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => return (e.render().to_string(), e.exit_code()),
    };
    let echo = args
        .iter()
        .skip(1)
        .map(|a| a.to_string_lossy().into_owned())
        .collect::<Vec<_>>()
        .join(" ");
    let report = run(&cli.command, echo);
    let text = if cli.command.json() {
        let mut s = report.to_json();
        s.push('\n');
        s
    } else {
        report.to_text()
    };
    (text, report.exit_code())
}

/// Executes one command.
pub fn run(command: &Command, echo: String) -> Report {
    let mut report = Report::new(echo);
    match command {
        Command::Validate(a) => cmd_validate(a, &mut report),
        Command::Relations(a) => cmd_relations(a, &mut report),
        Command::Theorems(a) => cmd_theorems(a, &mut report),
        Command::Exchange(a) => cmd_exchange(a, &mut report),
        Command::Count(a) => cmd_count(a, &mut report),
        Command::Occupancy(a) => cmd_occupancy(a, &mut report),
    }
    report
}

fn load(args: &FileArgs, report: &mut Report) -> Option<CandidateSystem> {
    let src = match std::fs::read_to_string(&args.file) {
        Ok(s) => s,
        Err(e) => {
            report.error(format!("cannot read `{}`: {e}", args.file.display()));
            return None;
        }
    };
    match dsl::parse_spec(&src) {
        Ok(c) => {
            if c.n() == 0 {
                report
                    .warnings
                    .push("empty system (n = 0): every axiom holds vacuously".into());
            }
            Some(if args.infer_scales {
                infer_scales(&c)
            } else {
                c
            })
        }
        Err(e) => {
            report.diagnostics = e.diagnostics;
            report.mark(Status::Error);
            None
        }
    }
}

fn axiom_entries(c: &CandidateSystem, only_failing: bool) -> Vec<AxiomEntry> {
    AxiomId::ALL
        .iter()
        .map(|&a| check_axiom(c, a))
        .filter(|r| !(only_failing && r.holds))
        .map(|r| AxiomEntry {
            axiom: r.axiom.to_string(),
            statement: r.axiom.statement().to_string(),
            holds: r.holds,
            witnesses: r.witnesses.iter().map(|w| w.describe(c)).collect(),
        })
        .collect()
}

/// Loads and certifies a system; on axiom failure the failing reports go
/// into `report`.
fn certified(args: &FileArgs, report: &mut Report) -> Option<OntoSystem> {
    let c = load(args, report)?;
    match validate(&c) {
        Ok(s) => Some(s),
        Err(_) => {
            report.axioms = axiom_entries(&c, true);
            report.mark(Status::Fail);
            None
        }
    }
}

fn cmd_validate(args: &FileArgs, report: &mut Report) {
    let Some(c) = load(args, report) else { return };
    report.axioms = axiom_entries(&c, false);
    if report.axioms.iter().any(|a| !a.holds) {
        report.mark(Status::Fail);
    }
}

fn cmd_relations(args: &FileArgs, report: &mut Report) {
    let Some(s) = certified(args, report) else {
        return;
    };
    let (onto, phys) = s.identity_matrices();
    let names: Vec<&str> = s.particles().iter().map(|p| p.name()).collect();
    let mut columns = vec!["particle"];
    columns.extend(&names);
    for (name, matrix) in [("onto_identity", onto), ("phys_identity", phys)] {
        let mut table = Table::new(name, &columns);
        for (row_name, row) in names.iter().zip(matrix) {
            let mut cells = vec![row_name.to_string()];
            cells.extend(row.iter().map(|&b| if b { "T" } else { "F" }.to_string()));
            table.push(cells);
        }
        report.tables.push(table);
    }
}

fn cmd_theorems(args: &FileArgs, report: &mut Report) {
    let Some(s) = certified(args, report) else {
        return;
    };
    let name_of = |index: usize| {
        s.particle_by_label(index)
            .map_or_else(|| format!("label {index}"), |p| p.name().to_string())
    };

    let macro_outcome = theorem_macro_distinct(&s);
    report.theorems.push(TheoremEntry {
        name: "macro_distinct".into(),
        statement: "two macroscopic particles are never physically identical".into(),
        applicable: true,
        holds: Some(macro_outcome.holds),
        note: None,
        witnesses: macro_outcome
            .witnesses
            .iter()
            .map(|&(i, j)| format!("{}, {}", name_of(i), name_of(j)))
            .collect(),
    });

    let statement = "if X is unitary and #N >= 2, every particle is microscopic".to_string();
    let entry = match theorem_unitary_x_micro(&s) {
        Ok(holds) => TheoremEntry {
            name: "unitary_x_micro".into(),
            statement,
            applicable: true,
            holds: Some(holds),
            note: None,
            witnesses: s
                .particles()
                .iter()
                .filter(|p| !p.scale().is_micro())
                .map(|p| format!("{} is {}", p.name(), p.scale()))
                .collect(),
        },
        Err(e) => TheoremEntry {
            name: "unitary_x_micro".into(),
            statement,
            applicable: false,
            holds: None,
            note: Some(e.to_string()),
            witnesses: Vec::new(),
        },
    };
    report.theorems.push(entry);

    if report.theorems.iter().any(|t| t.holds == Some(false)) {
        report.mark(Status::Fail);
    }
}

fn parse_swap(text: &str) -> Result<Transposition, Error> {
    let bad = || Error::InvalidArgument(format!("--swap expects `i,j`, got `{text}`"));
    let (i, j) = text.split_once(',').ok_or_else(bad)?;
    let i: usize = i.trim().parse().map_err(|_| bad())?;
    let j: usize = j.trim().parse().map_err(|_| bad())?;
    Transposition::new(i, j)
}

fn cmd_exchange(args: &ExchangeArgs, report: &mut Report) {
    let result = (|| -> Result<(String, Vec<String>), Error> {
        let modes = parse_modes(&args.modes)?;
        let ket = StateVector::from_modes(modes.clone());
        let op = &args.op;
        Ok(if let Some(swap) = &op.swap {
            let t = parse_swap(swap)?;
            (
                t.to_string(),
                vec![apply_transposition(t, &ket)?.to_string()],
            )
        } else if op.symmetrize {
            ("symmetrize".into(), vec![symmetrize(&ket).to_string()])
        } else if op.antisymmetrize {
            (
                "antisymmetrize".into(),
                vec![antisymmetrize(&ket).to_string()],
            )
        } else if op.classify {
            ("classify".into(), vec![symmetry_class(&ket).to_string()])
        } else if op.degeneracy {
            let kets = exchange_degeneracy_class(&modes);
            (
                "degeneracy".into(),
                kets.iter().map(|k| k.to_string()).collect(),
            )
        } else {
            let verdict = if pauli_admissible(&modes) {
                "admissible"
            } else {
                "excluded"
            };
            ("pauli".into(), vec![verdict.to_string()])
        })
    })();
    match result {
        Ok((operation, results)) => {
            let input = StateVector::from_modes(parse_modes(&args.modes).expect("parsed above"));
            let mut table = Table::new("exchange", &["input", "operation", "result"]);
            for r in results {
                table.push(vec![input.to_string(), operation.clone(), r]);
            }
            report.tables.push(table);
        }
        Err(e) => report.error(e.to_string()),
    }
}

fn parse_rules(text: &str) -> Result<Vec<StatisticsRule>, Error> {
    if text.eq_ignore_ascii_case("all") {
        Ok(StatisticsRule::ALL.to_vec())
    } else {
        Ok(vec![text.parse()?])
    }
}

fn particle_count(n: i64) -> Result<usize, Error> {
    usize::try_from(n).map_err(|_| {
        Error::InvalidArgument(format!("particle count must be non-negative, got {n}"))
    })
}

fn render_microstate(state: &Microstate, spec: &ModeSpec) -> String {
    match state {
        Microstate::Assignment(a) => {
            let ids: Vec<String> = a
                .iter()
                .map(|&m| spec.modes()[m].label.to_string())
                .collect();
            format!("({})", ids.join(","))
        }
        Microstate::Occupation(o) => {
            let occ: Vec<String> = o.iter().map(u32::to_string).collect();
            format!("[{}]", occ.join(","))
        }
    }
}

fn cmd_count(args: &CountArgs, report: &mut Report) {
    let result = (|| -> Result<(), Error> {
        let n = particle_count(args.particles)?;
        let rules = parse_rules(&args.stats)?;
        if args.modes == 0 {
            return Err(Error::InvalidArgument(
                "at least one mode is required".into(),
            ));
        }
        let spec = ModeSpec::uniform(args.modes)?;
        let mut counts = Table::new(
            "counts",
            &["rule", "n", "g", "enumerated", "closed_form", "match"],
        );
        let mut listing = Table::new("microstates", &["rule", "index", "microstate"]);
        let mut all_match = true;
        for rule in rules {
            let ensemble = enumerate_microstates(n, &spec, rule)?;
            let closed = count_closed_form(n, args.modes, rule);
            let matched = closed == ensemble.states.len().into();
            all_match &= matched;
            counts.push(vec![
                rule.to_string(),
                n.to_string(),
                args.modes.to_string(),
                ensemble.states.len().to_string(),
                closed.to_string(),
                if matched { "yes" } else { "no" }.to_string(),
            ]);
            if args.list {
                for (k, state) in ensemble.states.iter().enumerate() {
                    listing.push(vec![
                        rule.to_string(),
                        (k + 1).to_string(),
                        render_microstate(state, &spec),
                    ]);
                }
            }
        }
        report.tables.push(counts);
        if args.list {
            report.tables.push(listing);
        }
        if !all_match {
            report.mark(Status::Fail);
        }
        Ok(())
    })();
    if let Err(e) = result {
        report.error(e.to_string());
    }
}

fn cmd_occupancy(args: &OccupancyArgs, report: &mut Report) {
    let result = (|| -> Result<(), Error> {
        let n = particle_count(args.particles)?;
        let rules = parse_rules(&args.stats)?;
        let energies = args
            .energies
            .split(',')
            .map(|e| {
                e.trim()
                    .parse::<f64>()
                    .map_err(|_| Error::InvalidArgument(format!("malformed energy `{e}`")))
            })
            .collect::<Result<Vec<f64>, Error>>()?;
        let spec = ModeSpec::from_energies(&energies)?;
        let mut columns = vec!["mode".to_string(), "energy".to_string()];
        let mut values = Vec::new();
        for &rule in &rules {
            columns.push(format!("<n> {rule}"));
            match mean_occupation(n, &spec, rule, args.beta) {
                Ok(v) => values.push(Some(v)),
                Err(e @ Error::NoAdmissibleMicrostates { .. }) if rules.len() > 1 => {
                    report.warnings.push(e.to_string());
                    values.push(None);
                }
                Err(e) => return Err(e),
            }
        }
        let columns: Vec<&str> = columns.iter().map(String::as_str).collect();
        let mut table = Table::new("occupancy", &columns);
        for (j, mode) in spec.modes().iter().enumerate() {
            let mut row = vec![mode.label.to_string(), mode.energy.to_string()];
            row.extend(values.iter().map(|v| match v {
                Some(v) => format!("{:.12}", v[j]),
                None => "n/a".to_string(),
            }));
            table.push(row);
        }
        report.tables.push(table);
        Ok(())
    })();
    if let Err(e) = result {
        report.error(e.to_string());
    }
}
