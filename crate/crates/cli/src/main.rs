use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use chevalley::decompose::{default_positions, recover};
use chevalley::group::Chevalley;
use chevalley::lie::{basis_label, t_matrix};
use chevalley::matrix::{Mat, SparseInt};
use chevalley::roots::{marked_sequence, verify_marked_properties, Class};
use chevalley::suites::{run_suite, SuiteConfig, SUITES};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "chevalley", version, about = "Adjoint Chevalley groups over finite local rings")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the root system.
    Roots(Common),
    /// Print the marked sequence and its exception list.
    Marked(Common),
    /// Export X_a, T_i and, with --delta, A_delta.
    Adjoint(Common),
    /// Recover normal-form parameters from a JSON matrix (--input).
    Decompose(Common),
    /// Run a verification suite.
    Verify {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(SUITES))]
        suite: String,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args, Clone)]
struct Common {
    #[arg(long, default_value = "A2")]
    system: String,
    #[arg(long)]
    ring: Option<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    count: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Unit for the torus lift.
    #[arg(long)]
    r: Option<String>,
    /// Diagram symmetry as 1-based images of the simple roots, e.g. 3,2,1.
    #[arg(long)]
    delta: Option<String>,
    #[arg(long)]
    input: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

enum Failure {
    Config(String),
    Check(String),
}

impl From<chevalley::Error> for Failure {
    fn from(e: chevalley::Error) -> Failure {
        Failure::Config(e.to_string())
    }
}

fn parse_delta(s: &str) -> Result<Vec<usize>, Failure> {
    s.split(',')
        .map(|x| match x.trim().parse::<usize>() {
            Ok(v) if v >= 1 => Ok(v - 1),
            _ => Err(Failure::Config(format!("bad --delta `{s}`"))),
        })
        .collect()
}

fn emit(format: Format, json: &Value, text: String) {
    let out = match format {
        Format::Json => serde_json::to_string_pretty(json).expect("serializable") + "\n",
        Format::Text => text,
    };
    // a closed pipe is not an error for a report printer
    let _ = std::io::stdout().lock().write_all(out.as_bytes());
}

fn cmd_roots(c: &Common) -> Result<bool, Failure> {
    let ch = Chevalley::parse(&c.system)?;
    let sys = &ch.sys;
    let mut text = format!(
        "{}: rank {}, {} roots, dimension {}\nmaximal root {:?}\n",
        sys.name(),
        sys.rank(),
        sys.num_roots(),
        sys.dim(),
        sys.coeffs(sys.highest_root())
    );
    for a in sys.positive_ids() {
        text.push_str(&format!("{:>5} {:?}\n", basis_label(sys, a), sys.coeffs(a)));
    }
    emit(c.format, &sys.to_json(), text);
    Ok(true)
}

fn cmd_marked(c: &Common) -> Result<bool, Failure> {
    let ch = Chevalley::parse(&c.system)?;
    let sys = &ch.sys;
    let seq = marked_sequence(sys)?;
    let rep = verify_marked_properties(sys, &seq);
    let mut text = format!("{} marked sequence ({} roots)\n", sys.name(), seq.gamma.len());
    for (i, &g) in seq.gamma.iter().enumerate() {
        text.push_str(&format!("  gamma_{} = {:?}\n", i + 1, sys.coeffs(g)));
    }
    text.push_str(&format!("exceptions: {}\n", seq.exceptions.len()));
    for e in &seq.exceptions {
        text.push_str(&format!(
            "  beta = {:?}, delta = {:?} = gamma_{} - beta\n",
            sys.coeffs(e.beta),
            sys.coeffs(e.delta),
            e.anchor + 1
        ));
    }
    for d in &rep.deviations {
        text.push_str(&format!("deviation: {d}\n"));
    }
    let differences = rep.classes.iter().filter(|c| matches!(c.1, Class::Difference(..))).count();
    let mut json = seq.to_json(sys);
    json["differences"] = json!(differences);
    json["deviations"] = json!(rep.deviations);
    emit(c.format, &json, text);
    Ok(true)
}

fn sparse_text(name: &str, ch: &Chevalley, m: &SparseInt) -> String {
    let cells: Vec<String> = m
        .entries
        .iter()
        .map(|&(r, c, v)| format!("{v:+}({},{})", basis_label(&ch.sys, r), basis_label(&ch.sys, c)))
        .collect();
    format!("{name} = {}\n", cells.join(" "))
}

fn cmd_adjoint(c: &Common) -> Result<bool, Failure> {
    let ch = Chevalley::parse(&c.system)?;
    let sys = &ch.sys;
    let mut text = String::new();
    let mut xs = Vec::new();
    for a in sys.ids() {
        text.push_str(&sparse_text(&format!("X{:?}", sys.coeffs(a)), &ch, ch.ad(a)));
        xs.push(json!({ "root": sys.coeffs(a), "matrix": ch.ad(a).to_json() }));
    }
    let mut ts = Vec::new();
    for i in 0..sys.rank() {
        let t = t_matrix(sys, i);
        text.push_str(&sparse_text(&format!("T{}", i + 1), &ch, &t));
        ts.push(t.to_json());
    }
    let mut a_delta = Value::Null;
    if let Some(d) = &c.delta {
        let perm = parse_delta(d)?;
        let eps = ch.graph_signs(&perm)?;
        let nr = sys.num_roots();
        let mut e: Vec<(usize, usize, i64)> = sys.ids().map(|a| (sys.permute(&perm, a), a, eps[a])).collect();
        e.extend(perm.iter().enumerate().map(|(i, &p)| (nr + p, nr + i, 1)));
        let m = SparseInt::new(ch.n(), e);
        text.push_str(&sparse_text("A_delta", &ch, &m));
        a_delta = json!({ "delta": perm.iter().map(|p| p + 1).collect::<Vec<_>>(), "matrix": m.to_json() });
    }
    let json = json!({ "system": sys.name(), "basis": (0..ch.n()).map(|i| basis_label(sys, i)).collect::<Vec<_>>(), "X": xs, "T": ts, "A_delta": a_delta });
    emit(c.format, &json, text);
    Ok(true)
}

fn cmd_decompose(c: &Common) -> Result<bool, Failure> {
    let path = c.input.as_ref().ok_or_else(|| Failure::Config("decompose needs --input".into()))?;
    let raw = std::fs::read_to_string(path).map_err(|e| Failure::Config(format!("{}: {e}", path.display())))?;
    let doc: Value = serde_json::from_str(&raw).map_err(|e| Failure::Config(format!("{}: {e}", path.display())))?;
    let (ring, m): (_, Mat) = Mat::from_json(&doc)?;
    if let Some(want) = &c.ring {
        if chevalley::Ring::parse(want)?.to_string() != ring.to_string() {
            return Err(Failure::Config(format!("--ring {want} differs from the matrix ring {ring}")));
        }
    }
    let ch = Chevalley::parse(&c.system)?;
    if m.n != ch.n() {
        return Err(Failure::Config(format!("matrix is {}x{}, {} needs {}", m.n, m.n, ch.sys.name(), ch.n())));
    }
    let table = default_positions(&ch)?;
    match recover(&ch, &ring, &table, &m) {
        Ok(f) => {
            let fmt = |v: &[chevalley::Elem]| v.iter().map(|&x| ring.format(x)).collect::<Vec<_>>().join(" ");
            let text = format!(
                "lambda = {}\ns = {}\nt = {}\nu = {}\n",
                ring.format(f.lambda),
                fmt(&f.s),
                fmt(&f.t),
                fmt(&f.u)
            );
            emit(c.format, &json!({ "ring": ring.to_string(), "factors": f.to_json(&ring) }), text);
            Ok(true)
        }
        Err(chevalley::Error::NotInNormalForm(why)) => Err(Failure::Check(why)),
        Err(e) => Err(e.into()),
    }
}

fn cmd_verify(suite: &str, c: &Common) -> Result<bool, Failure> {
    let cfg = SuiteConfig {
        system: c.system.clone(),
        ring: c.ring.clone(),
        seed: c.seed,
        count: c.count,
        r: c.r.clone(),
        delta: c.delta.as_deref().map(parse_delta).transpose()?,
    };
    let rep = run_suite(suite, &cfg)?;
    emit(c.format, &rep.to_json(), rep.to_text());
    Ok(rep.passed())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = match &cli.cmd {
        Cmd::Roots(c) => cmd_roots(c),
        Cmd::Marked(c) => cmd_marked(c),
        Cmd::Adjoint(c) => cmd_adjoint(c),
        Cmd::Decompose(c) => cmd_decompose(c),
        Cmd::Verify { suite, common } => cmd_verify(suite, common),
    };
    match out {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Check(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Config(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
