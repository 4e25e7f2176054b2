//! The `mukai` command line.
//!
//! Exit codes: 0 on success, 1 when a verification scenario fails, 2 on
//! usage or input errors. Diagnostics name the offending flag or field.

use std::ffi::OsString;
use std::fmt::Display;
use std::io::{IsTerminal, Write};
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};

use crate::cohomology::{cyclic_cohomology, AbelianGroupModel};
use crate::isometry::build_word;
use crate::lattice::{parse_vector, smith_normal_form, IntLattice, LatticeJson, LatticeVector, SublatticeSpan};
use crate::mukai::{K3Model, K3ModelJson};
use crate::pseudoheight::{connectedness_verdict, pseudoheight, Degree, ExtDegreeTable};
use crate::scenarios::{run_all, run_scenario, list_scenarios, ScenarioReport};

#[derive(Parser, Debug)]
#[command(name = "mukai", version, about = "Exact Mukai lattice calculator and verification harness")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Replay bundled verification scenarios.
    Verify {
        #[command(subcommand)]
        target: VerifyTarget,
    },
    /// Integer lattice computations on a Gram matrix read from JSON.
    Lattice {
        #[arg(value_enum)]
        op: LatticeOp,
        /// `{"labels": [...], "gram": [[...]]}`
        #[arg(long)]
        input: PathBuf,
        /// A vector as a class expression (`3D-E`) or JSON array; repeatable.
        #[arg(long = "vector", allow_hyphen_values = true)]
        vectors: Vec<String>,
    },
    /// Cohomological action of autoequivalence words.
    Isometry {
        #[command(subcommand)]
        op: IsometryOp,
    },
    /// Hⁿ(Z/m, A) for the trivial action.
    Cohomology {
        #[arg(long, allow_hyphen_values = true)]
        m: i64,
        #[arg(long)]
        n: u32,
        /// e.g. `Cx+Z`, `Z^2`, `Z/4 + Z/6`, `0`
        #[arg(long)]
        coeff: String,
    },
    /// Pseudoheight and connectedness verdict of an Ext-degree table.
    Pseudoheight {
        #[arg(long)]
        input: PathBuf,
        /// Reject tables violating the bounds for collections of sheaves.
        #[arg(long)]
        sheaf: bool,
    },
}

#[derive(Subcommand, Debug)]
enum VerifyTarget {
    /// Run one scenario by name, or all of them.
    #[command(group(ArgGroup::new("which").required(true).args(["name", "all"])))]
    Scenario {
        name: Option<String>,
        #[arg(long)]
        all: bool,
        /// Write the reports as JSON (`-` for standard output).
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Print the scenario catalog.
    List,
}

#[derive(Subcommand, Debug)]
enum IsometryOp {
    /// Image of a Mukai vector and the transcendental sign.
    Apply {
        /// Bundled model name or a model JSON file.
        #[arg(long)]
        model: String,
        /// Generators applied right to left: `shift`, `tw:O`, `tw:U`, `tw:(r,c1,s)`, `lb:<class>`.
        #[arg(long, allow_hyphen_values = true)]
        word: String,
        #[arg(long, allow_hyphen_values = true)]
        vector: String,
    },
    /// Matrix on the algebraic Mukai lattice in the basis (r, Picard basis, s).
    Matrix {
        #[arg(long)]
        model: String,
        #[arg(long, allow_hyphen_values = true)]
        word: String,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum LatticeOp {
    Det,
    Sig,
    Snf,
    Complement,
    Saturate,
    Dualcone,
}

/// A rejected input, reported with exit code 2.
struct UsageError(String);

fn field_err(field: &str, e: impl Display) -> UsageError {
    UsageError(format!("{field}: {e}"))
}

type CliResult = std::result::Result<i32, UsageError>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return if code == 0 { 0 } else { 2 };
        }
    };
    let color = std::env::var_os("NO_COLOR").is_none() && std::io::stdout().is_terminal();
    match dispatch(cli.command, out, color) {
        Ok(code) => code,
        Err(UsageError(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write, color: bool) -> CliResult {
    match command {
        Command::Verify { target } => verify(target, out, color),
        Command::Lattice { op, input, vectors } => lattice(op, &input, &vectors, out),
        Command::Isometry { op } => isometry(op, out),
        Command::Cohomology { m, n, coeff } => {
            let a: AbelianGroupModel = coeff.parse().map_err(|e| field_err("--coeff", e))?;
            let h = cyclic_cohomology(m, n, &a).map_err(|e| field_err("--m", e))?;
            emit(out, format_args!("{h}"))
        }
        Command::Pseudoheight { input, sheaf } => {
            let text = read_input(&input)?;
            let table = ExtDegreeTable::from_json_str(&text).map_err(|e| field_err(&input_field(&input), e))?;
            if sheaf {
                table.validate_sheaf_mode().map_err(|e| field_err(&input_field(&input), e))?;
            }
            let ph = pseudoheight(&table);
            let v = connectedness_verdict(ph, table.rel_dim(), table.n());
            let mut text = format!("pseudoheight: {ph}\n");
            match v.iso_range_max {
                Degree::Finite(k) => text += &format!("isomorphism for i <= {k}\ninjection at i = {}\n", v.injection_at),
                Degree::Infinite => text += "isomorphism in every degree\n",
            }
            text += &format!("connected by criterion (rel_dim >= n + 1): {}", v.connected_by_criterion);
            emit(out, format_args!("{text}"))
        }
    }
}

fn emit(out: &mut dyn Write, text: std::fmt::Arguments<'_>) -> CliResult {
    writeln!(out, "{text}").map_err(|e| UsageError(format!("cannot write output: {e}")))?;
    Ok(0)
}

fn input_field(path: &Path) -> String {
    format!("--input {}", path.display())
}

fn read_input(path: &Path) -> std::result::Result<String, UsageError> {
    std::fs::read_to_string(path).map_err(|e| field_err(&input_field(path), e))
}

fn verify(target: VerifyTarget, out: &mut dyn Write, color: bool) -> CliResult {
    let (name, json) = match target {
        VerifyTarget::List => {
            return emit(out, format_args!("{}", list_scenarios().join("\n")));
        }
        VerifyTarget::Scenario { name, json, .. } => (name, json),
    };
    let reports = match name {
        Some(n) => vec![run_scenario(&n).map_err(|e| field_err("scenario", e))?],
        None => run_all(),
    };
    let io = |e: std::io::Error| UsageError(format!("cannot write output: {e}"));
    for r in &reports {
        write_report(out, r, color).map_err(io)?;
    }
    let passed = reports.iter().filter(|r| r.verdict).count();
    writeln!(out, "{passed}/{} scenarios pass", reports.len()).map_err(io)?;
    if let Some(path) = json {
        let text = serde_json::to_string_pretty(&reports).expect("reports serialize");
        if path.as_os_str() == "-" {
            writeln!(out, "{text}").map_err(io)?;
        } else {
            std::fs::write(&path, text).map_err(|e| field_err(&format!("--json {}", path.display()), e))?;
        }
    }
    Ok(if passed == reports.len() { 0 } else { 1 })
}

fn write_report(out: &mut dyn Write, r: &ScenarioReport, color: bool) -> std::io::Result<()> {
    let tag = |pass: bool| match (pass, color) {
        (true, true) => "\x1b[32mPASS\x1b[0m",
        (false, true) => "\x1b[31mFAIL\x1b[0m",
        (true, false) => "PASS",
        (false, false) => "FAIL",
    };
    writeln!(out, "{} {}", tag(r.verdict), r.name)?;
    for c in &r.checks {
        writeln!(out, "    {} {}: expected {}, got {}", tag(c.pass), c.description, c.expected, c.actual)?;
    }
    Ok(())
}

fn lattice(op: LatticeOp, input: &Path, vectors: &[String], out: &mut dyn Write) -> CliResult {
    let text = read_input(input)?;
    let field = input_field(input);
    let json: LatticeJson = serde_json::from_str(&text).map_err(|e| field_err(&field, e))?;
    let l = json.to_lattice().map_err(|e| field_err(&format!("{field}: gram"), e))?;
    let vs = vectors
        .iter()
        .map(|v| parse_vector(v, l.labels()).map_err(|e| field_err("--vector", e)))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    let basis_lines = |l: &IntLattice, span: &SublatticeSpan| -> String {
        if span.rank() == 0 {
            return "0".to_string();
        }
        span.generators().iter().map(|g| l.format(g)).collect::<Vec<_>>().join("\n")
    };
    match op {
        LatticeOp::Det => emit(out, format_args!("{}", l.determinant())),
        LatticeOp::Sig => emit(out, format_args!("{}", l.signature())),
        LatticeOp::Snf => {
            let s = smith_normal_form(l.gram());
            let n = s.diag.rows().min(s.diag.cols());
            let d: Vec<String> = (0..n).map(|i| s.diag[(i, i)].to_string()).collect();
            emit(out, format_args!("diag({})", d.join(", ")))
        }
        LatticeOp::Complement => {
            let span = SublatticeSpan::new(l.clone(), vs).map_err(|e| field_err("--vector", e))?;
            let perp = span.orthogonal_complement().map_err(|e| field_err(&format!("{field}: gram"), e))?;
            emit(out, format_args!("{}\ngram: {}", basis_lines(&l, &perp), perp.gram()))
        }
        LatticeOp::Saturate => {
            let span = SublatticeSpan::new(l.clone(), vs).map_err(|e| field_err("--vector", e))?;
            let sat = span.saturate();
            emit(out, format_args!("{}\nindex: {}", basis_lines(&l, &sat), span.saturation_index()))
        }
        LatticeOp::Dualcone => {
            let [a, b] = <[LatticeVector; 2]>::try_from(vs)
                .map_err(|v| field_err("--vector", format!("dualcone needs exactly 2 vectors, got {}", v.len())))?;
            let rays = l.dual_cone_rank2([&a, &b]).map_err(|e| field_err("--vector", e))?;
            emit(out, format_args!("{}\n{}", l.format(&rays[0]), l.format(&rays[1])))
        }
    }
}

fn load_model(source: &str) -> std::result::Result<K3Model, UsageError> {
    if let Ok(m) = K3Model::bundled(source) {
        return Ok(m);
    }
    let field = format!("--model {source}");
    let text = std::fs::read_to_string(source).map_err(|e| {
        field_err(&field, format!("not a bundled model ({}) and not readable: {e}", K3Model::BUNDLED.join(", ")))
    })?;
    let json: K3ModelJson = serde_json::from_str(&text).map_err(|e| field_err(&field, e))?;
    json.to_model().map_err(|e| field_err(&field, e))
}

fn isometry(op: IsometryOp, out: &mut dyn Write) -> CliResult {
    match op {
        IsometryOp::Apply { model, word, vector } => {
            let model = Arc::new(load_model(&model)?);
            let phi = build_word(model.clone(), &word).map_err(|e| field_err("--word", e))?;
            let v = model.parse_vector(&vector).map_err(|e| field_err("--vector", e))?;
            let image = phi.apply(&v).map_err(|e| field_err("--vector", e))?;
            emit(out, format_args!("{}\ntranscendental sign: {}", model.format_vector(&image), phi.transcendental_sign()))
        }
        IsometryOp::Matrix { model, word } => {
            let model = Arc::new(load_model(&model)?);
            let phi = build_word(model, &word).map_err(|e| field_err("--word", e))?;
            emit(out, format_args!("{}\ntranscendental sign: {}", phi.matrix(), phi.transcendental_sign()))
        }
    }
}
