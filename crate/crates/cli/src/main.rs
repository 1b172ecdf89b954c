//! `rspace`: structure of degenerate principal series from the command line.

use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use rspace_core::coeffs::{coeff_c_closed, coeff_triple, CoeffTriple};
use rspace_core::gk::{associated_variety_verdict, orbit_table, RepKind};
use rspace_core::ktype::KType;
use rspace_core::root_data::{catalogue, CaseSpec};
use rspace_core::scalar::{format_ratio, format_short, Rational};
use rspace_core::series::{
    build_graph, composition_series_closed, default_bound, reducibility, series_from_graph, SpectralParam,
};
use rspace_core::unitarity::{spectrum_by_recurrence, unitary_classification, unitary_constituents, Position};
use rspace_core::{run_verification, Error};

#[derive(Parser, Debug)]
#[command(name = "rspace", version, about = "Degenerate principal series on non-unital symmetric R-spaces")]
struct Cli {
    /// Emit a JSON envelope instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Structure constants (n, p, r, d, e, b); all families when no case is given.
    Classify { case: Option<String> },
    /// A(m,k), B(m,k) and C(m) for one K-type.
    Coeffs {
        case: String,
        /// Comma-separated dominant weight, e.g. 2,1.
        #[arg(long)]
        m: String,
    },
    /// Reducibility of I(nu).
    Reduce {
        case: String,
        /// Rational `p/q`, or `i` for the imaginary axis.
        #[arg(long, allow_hyphen_values = true)]
        nu: String,
    },
    /// Composition series of I(nu).
    Compose {
        case: String,
        #[arg(long, allow_hyphen_values = true)]
        nu: String,
        /// Box bound M on m_1 for the graph check.
        #[arg(long = "box")]
        bound: Option<u32>,
        /// Write the transition graph in Graphviz format.
        #[arg(long)]
        dot: Option<PathBuf>,
        /// Re-derive the series from the transition graph and compare.
        #[arg(long)]
        verify_graph: bool,
    },
    /// Unitarizable constituents and their intertwiner spectra.
    Unitary {
        case: String,
        #[arg(long, allow_hyphen_values = true)]
        nu: Option<String>,
        #[arg(long = "box")]
        bound: Option<u32>,
    },
    /// Gelfand-Kirillov dimension and associated variety.
    Gkdim {
        case: String,
        /// `principal` or `small`.
        #[arg(long, default_value = "principal")]
        rep: String,
    },
    /// Run every oracle against the closed forms.
    Verify {
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
}

#[derive(Serialize)]
struct OutputEnvelope {
    command: String,
    case: Option<CaseSpec>,
    result: Value,
    version: &'static str,
    verification: BTreeMap<String, bool>,
}

struct Rendered {
    case: Option<CaseSpec>,
    result: Value,
    text: String,
    verification: BTreeMap<String, bool>,
}

impl Rendered {
    fn new(case: Option<CaseSpec>, result: Value, text: String) -> Self {
        Rendered { case, result, text, verification: BTreeMap::new() }
    }
}

fn parse_case(s: &str) -> Result<CaseSpec, Error> {
    s.parse()
}

fn parse_nu(s: &str) -> Result<SpectralParam, Error> {
    s.parse()
}

fn constants_row(c: &CaseSpec) -> String {
    format!(
        "{:<18} n={:<4} p={:<5} r={} d={} e={} b={}",
        c.name(),
        c.n,
        format_short(&c.p),
        c.r,
        c.d,
        c.e,
        c.b
    )
}

fn classify(case: Option<String>) -> Result<Rendered, Error> {
    match case {
        Some(s) => {
            let c = parse_case(&s)?;
            Ok(Rendered::new(Some(c.clone()), serde_json::to_value(&c).expect("serializable"), constants_row(&c)))
        }
        None => {
            let rows = catalogue();
            let text = rows.iter().map(constants_row).collect::<Vec<_>>().join("\n");
            Ok(Rendered::new(None, serde_json::to_value(&rows).expect("serializable"), text))
        }
    }
}

fn ratios(v: &[Rational]) -> Vec<String> {
    v.iter().map(format_ratio).collect()
}

fn coeffs(case: String, m: String) -> Result<Rendered, Error> {
    let case = parse_case(&case)?;
    let m: KType = m.parse()?;
    let m = KType::for_case(&case, m.entries().to_vec())?;
    let t: CoeffTriple<Rational> = coeff_triple(&case, &m)?;
    let closed: Rational = coeff_c_closed(&case, &m)?;
    let mut text = String::new();
    for k in 1..=case.rank() {
        text.push_str(&format!("A({m},{k}) = {}\n", format_short(&t.a[k - 1])));
        text.push_str(&format!("B({m},{k}) = {}\n", format_short(&t.b[k - 1])));
    }
    text.push_str(&format!("C({m}) = {}", format_short(&t.c)));
    let result = json!({ "m": m, "A": ratios(&t.a), "B": ratios(&t.b), "C": format_ratio(&t.c) });
    let mut out = Rendered::new(Some(case), result, text);
    out.verification.insert("c_closed_equals_direct".into(), closed == t.c);
    if closed != t.c {
        return Err(Error::Internal(format!("closed C = {} differs from direct C = {}", closed, t.c)));
    }
    Ok(out)
}

fn reduce(case: String, nu: String) -> Result<Rendered, Error> {
    let case = parse_case(&case)?;
    let nu = parse_nu(&nu)?;
    let report = reducibility(&case, &nu);
    let text = if report.reducible {
        let series = composition_series_closed(&case, &nu)?;
        let ws: Vec<String> = report.witnesses.iter().map(|w| format!("j={}", w.j)).collect();
        format!("reducible; witness {}; composition chain {}", ws.join(", "), series.chain_string())
    } else {
        "irreducible".to_string()
    };
    Ok(Rendered::new(Some(case), serde_json::to_value(&report).expect("serializable"), text))
}

fn compose(case: String, nu: String, bound: Option<u32>, dot: Option<PathBuf>, verify_graph: bool) -> Result<Rendered, Error> {
    let case = parse_case(&case)?;
    let nu = parse_nu(&nu)?;
    let series = composition_series_closed(&case, &nu)?;
    let mut text = format!("{}\n", series.chain_string());
    for layer in 0..series.length() {
        text.push_str(&format!("  subquotient {layer}: {}\n", series.describe_layer(layer)));
    }
    let mut out = Rendered::new(Some(case.clone()), serde_json::to_value(&series).expect("serializable"), String::new());
    if verify_graph || dot.is_some() {
        let bound = bound.unwrap_or_else(|| default_bound(&case, &series.nu));
        let graph = build_graph(&case, &nu, bound)?;
        if verify_graph {
            let from_graph = series_from_graph(&graph)?;
            let agree = from_graph == series;
            out.verification.insert("graph_condensation_agrees".into(), agree);
            text.push_str(&format!(
                "graph check on m1 <= {bound}: {}\n",
                if agree { "condensation agrees" } else { "MISMATCH" }
            ));
            if !agree {
                return Err(Error::Internal(format!("graph condensation gives {from_graph:?}")));
            }
        }
        if let Some(path) = dot {
            fs::write(&path, graph.to_dot(Some(&series)))
                .map_err(|e| Error::Internal(format!("cannot write {}: {e}", path.display())))?;
            text.push_str(&format!("wrote {}\n", path.display()));
        }
    }
    out.text = text.trim_end().to_string();
    Ok(out)
}

fn unitary(case: String, nu: Option<String>, bound: Option<u32>) -> Result<Rendered, Error> {
    let case = parse_case(&case)?;
    let Some(nu) = nu else {
        let rows = unitary_classification(&case);
        let text = rows
            .iter()
            .map(|e| {
                let which = if e.position == Position::Bottom { "subrepresentation" } else { "top quotient" };
                format!("nu = {:<6} {which:<17} spectrum {}", format_short(&e.nu), e.gamma)
            })
            .collect::<Vec<_>>()
            .join("\n");
        return Ok(Rendered::new(Some(case), serde_json::to_value(&rows).expect("serializable"), text));
    };
    let nu = parse_nu(&nu)?;
    let verdicts = unitary_constituents(&case, &nu);
    let mut text = String::new();
    let mut spectra = Vec::new();
    for v in &verdicts {
        let tag = if v.unitary { "unitary" } else { "not unitarizable" };
        let trivial = if v.trivial { " (trivial)" } else { "" };
        text.push_str(&format!("{}{trivial}: {tag} [{}]", v.constituent, v.description));
        if let Some(g) = &v.spectrum {
            text.push_str(&format!(", spectrum {g}"));
        }
        text.push('\n');
        if v.unitary {
            if let SpectralParam::RealRational(q) = &nu {
                let bound = bound.unwrap_or_else(|| default_bound(&case, q));
                let s = spectrum_by_recurrence(&case, &nu, v.layer, bound)?;
                for e in s.entries.iter().take(8) {
                    text.push_str(&format!("  t{} = {}\n", e.m, format_short(&e.t)));
                }
                spectra.push(s);
            }
        }
    }
    let result = json!({ "verdicts": verdicts, "spectra": spectra });
    Ok(Rendered::new(Some(case), result, text.trim_end().to_string()))
}

fn gkdim(case: String, rep: String) -> Result<Rendered, Error> {
    let case = parse_case(&case)?;
    let rep: RepKind = rep.parse()?;
    let av = associated_variety_verdict(&case, rep)?;
    let table = orbit_table(&case);
    let text = format!(
        "gk_dim = {}\nmin_orbit_dim = {} ({table:?})\nverdict = {:?}",
        av.gk_dim, av.min_orbit_dim, av.verdict
    );
    Ok(Rendered::new(Some(case), serde_json::to_value(&av).expect("serializable"), text))
}

fn verify(trials: usize, seed: u64) -> Result<Rendered, Error> {
    let report = run_verification(trials, seed)?;
    let mut text = String::new();
    for c in &report.checks {
        let status = if c.passed() { "pass" } else { "FAIL" };
        text.push_str(&format!("{status}  {:<48} {}/{}\n", c.name, c.total - c.failed, c.total));
        if let Some(f) = &c.first_failure {
            text.push_str(&format!("      first failure: {f}\n"));
        }
    }
    let all = report.all_passed();
    text.push_str(if all { "all checks passed" } else { "some checks FAILED" });
    let mut out = Rendered::new(None, serde_json::to_value(&report).expect("serializable"), text);
    out.verification = report.checks.iter().map(|c| (c.name.clone(), c.passed())).collect();
    if !all {
        return Err(Error::Internal(out.text));
    }
    Ok(out)
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Classify { .. } => "classify",
        Command::Coeffs { .. } => "coeffs",
        Command::Reduce { .. } => "reduce",
        Command::Compose { .. } => "compose",
        Command::Unitary { .. } => "unitary",
        Command::Gkdim { .. } => "gkdim",
        Command::Verify { .. } => "verify",
    }
}

fn run(cli: Cli) -> Result<(String, Rendered), Error> {
    let name = command_name(&cli.command).to_string();
    let rendered = match cli.command {
        Command::Classify { case } => classify(case),
        Command::Coeffs { case, m } => coeffs(case, m),
        Command::Reduce { case, nu } => reduce(case, nu),
        Command::Compose { case, nu, bound, dot, verify_graph } => compose(case, nu, bound, dot, verify_graph),
        Command::Unitary { case, nu, bound } => unitary(case, nu, bound),
        Command::Gkdim { case, rep } => gkdim(case, rep),
        Command::Verify { trials, seed } => verify(trials, seed),
    }?;
    Ok((name, rendered))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = cli.json;
    match run(cli) {
        Ok((command, out)) => {
            if json {
                let env = OutputEnvelope {
                    command,
                    case: out.case,
                    result: out.result,
                    version: env!("CARGO_PKG_VERSION"),
                    verification: out.verification,
                };
                println!("{}", serde_json::to_string_pretty(&env).expect("serializable"));
            } else {
                println!("{}", out.text);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
