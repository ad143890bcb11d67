mod output;

use std::fmt;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use threeweb::circular::{self, LinearModel};
use threeweb::curvature::blaschke_curvature;
use threeweb::normalform::normalize;
use threeweb::symmetry::{classify_mirror, classify_simple, foliation_permutation, symmetry_witnesses};
use threeweb::{parse_expr, parse_series2, PlaneMap, Series1, Series2, Web};

use output::*;

/// Exact normal forms, symmetries and curvature of planar 3-webs.
#[derive(Parser)]
#[command(name = "threeweb", version)]
struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Refuse any `--order` above this bound.
    #[arg(long, global = true, default_value_t = 40, value_name = "N")]
    max_order: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct OrderArg {
    /// Validity order of every series involved.
    #[arg(long, default_value_t = 10, value_name = "N")]
    order: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Bring the web (x, y, f) to normal form x + y + xy(x - y)g.
    Normalize {
        /// Level function f(x, y); `@path` reads it from a file.
        #[arg(long = "f", value_name = "EXPR", allow_hyphen_values = true)]
        f: String,
        #[command(flatten)]
        order: OrderArg,
    },
    /// Classify the normal-form residual g and list symmetry witnesses.
    Classify {
        #[arg(long = "g", value_name = "EXPR", allow_hyphen_values = true)]
        g: String,
        #[command(flatten)]
        order: OrderArg,
    },
    /// Webs with a symmetry that cycles the three foliations.
    Circular {
        #[command(subcommand)]
        command: CircularCommand,
    },
    /// Blaschke curvature of the web (x, y, f).
    Curvature {
        #[arg(long = "f", value_name = "EXPR", allow_hyphen_values = true)]
        f: String,
        #[command(flatten)]
        order: OrderArg,
    },
    /// Check whether a map is a symmetry of the web and report how it permutes the foliations.
    Verify {
        #[arg(long = "f", value_name = "EXPR", allow_hyphen_values = true)]
        f: String,
        /// Two comma-separated components.
        #[arg(long = "phi", value_name = "EXPR,EXPR", allow_hyphen_values = true)]
        phi: String,
        #[command(flatten)]
        order: OrderArg,
    },
}

#[derive(Subcommand)]
enum CircularCommand {
    /// General solver for V and mu.
    Solve {
        #[arg(long = "V", visible_alias = "v", value_name = "EXPR", allow_hyphen_values = true)]
        v: String,
        /// Series in x (or t).
        #[arg(long = "mu", value_name = "EXPR", allow_hyphen_values = true)]
        mu: String,
        #[arg(long, default_value = "order3")]
        model: LinearModel,
        #[command(flatten)]
        order: OrderArg,
    },
    /// Closed-form synthesis from a perturbation P with V = y + P.
    Lemma1 {
        #[arg(long = "P", visible_alias = "p", value_name = "EXPR", allow_hyphen_values = true)]
        p: String,
        #[arg(long, default_value = "order3")]
        model: LinearModel,
        #[command(flatten)]
        order: OrderArg,
    },
    /// The non-flat example with P = xy(x-y)(x+y)(2x+y)(x+2y).
    ExampleThm3 {
        #[command(flatten)]
        order: OrderArg,
    },
}

#[derive(Debug)]
enum CliError {
    Lib(threeweb::Error),
    Io(String, std::io::Error),
    OrderCap { order: usize, max: usize },
    Usage(String),
    NotASymmetry,
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Lib(e) if e.is_parse() => 2,
            CliError::Lib(threeweb::Error::Residual(_)) => 1,
            CliError::Lib(_) => 3,
            CliError::Usage(_) => 2,
            CliError::OrderCap { .. } => 3,
            CliError::NotASymmetry => 4,
            CliError::Io(..) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Lib(e) => write!(f, "{e}"),
            CliError::Io(path, e) => write!(f, "cannot read {path}: {e}"),
            CliError::OrderCap { order, max } => write!(f, "order {order} exceeds --max-order {max}"),
            CliError::Usage(msg) => f.write_str(msg),
            CliError::NotASymmetry => f.write_str("not a symmetry"),
        }
    }
}

impl From<threeweb::Error> for CliError {
    fn from(e: threeweb::Error) -> Self {
        CliError::Lib(e)
    }
}

type CliResult<T> = Result<T, CliError>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(CliError::NotASymmetry) => {
            if cli.json {
                print!("{}", to_json(&VerifyJson { permutation: None, kind: "none" }));
            } else {
                println!("not a symmetry");
            }
            ExitCode::from(4)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

/// Reads `@path` arguments from disk, passes anything else through.
fn source(arg: &str) -> CliResult<String> {
    match arg.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path)
            .map(|s| s.trim().to_string())
            .map_err(|e| CliError::Io(path.to_string(), e)),
        None => Ok(arg.to_string()),
    }
}

fn series2(arg: &str, order: usize) -> CliResult<Series2> {
    Ok(parse_series2(&source(arg)?, order)?)
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON views contain only strings, numbers and bools");
    s.push('\n');
    s
}

fn run(cli: &Cli) -> CliResult<String> {
    let checked = |o: &OrderArg| {
        if o.order > cli.max_order {
            Err(CliError::OrderCap { order: o.order, max: cli.max_order })
        } else {
            Ok(o.order)
        }
    };
    let json = cli.json;
    match &cli.command {
        Command::Normalize { f, order } => {
            let n = checked(order)?;
            let nf = normalize(&Web::new(series2(f, n)?)?)?;
            Ok(if json {
                to_json(&NormalFormJson::from(&nf))
            } else {
                format!("X(t) = {}\nY(t) = {}\nZ(t) = {}\ng = {}\n", nf.x_map, nf.y_map, nf.z_map, nf.g)
            })
        }
        Command::Classify { g, order } => {
            let n = checked(order)?;
            classify(series2(g, n)?, json)
        }
        Command::Circular { command } => circular(command, &checked, json),
        Command::Curvature { f, order } => {
            let n = checked(order)?;
            let k = blaschke_curvature(&Web::new(series2(f, n)?)?)?;
            let flat = k.is_zero();
            Ok(if json {
                to_json(&CurvatureJson { K: (&k).into(), flat })
            } else {
                format!("K = {k}  (valid to order {})\nflat to that order: {flat}\n", k.order())
            })
        }
        Command::Verify { f, phi, order } => {
            let n = checked(order)?;
            let web = Web::new(series2(f, n)?)?;
            let phi = source(phi)?;
            let parts: Vec<&str> = phi.split(',').collect();
            let [first, second] = parts[..] else {
                return Err(CliError::Usage(format!("--phi needs two comma-separated components, got {}", parts.len())));
            };
            let m = PlaneMap::new(parse_series2(first, n)?, parse_series2(second, n)?)?;
            let perm = foliation_permutation(&m, &web)?.ok_or(CliError::NotASymmetry)?;
            let kind = match perm.fixed_count() {
                3 => "simple",
                1 => "mirror",
                _ => "circular",
            };
            Ok(if json {
                to_json(&VerifyJson { permutation: Some((&perm).into()), kind })
            } else {
                format!("{perm}\n{kind} symmetry\n")
            })
        }
    }
}

fn classify(g: Series2, json: bool) -> CliResult<String> {
    let simple = classify_simple(&g);
    let mirror = classify_mirror(&g);
    let witnesses = symmetry_witnesses(&threeweb::NormalForm::from_residual(g))?;
    if json {
        return Ok(to_json(&ClassifyJson {
            simple: simple.into(),
            mirror: mirror.into(),
            witnesses: witnesses.iter().map(|(m, p)| WitnessJson { map: m.into(), permutation: p.into() }).collect(),
        }));
    }
    let mut out = format!("simple: {}\n", simple_text(simple));
    out += &format!("swap mirror: {}\nantiswap mirror: {}\n", mirror.swap_mirror, mirror.antiswap_mirror);
    for (m, p) in &witnesses {
        out += &format!("witness ({}, {}): {p}\n", m.first(), m.second());
    }
    Ok(out)
}

fn circular(
    command: &CircularCommand,
    checked: &dyn Fn(&OrderArg) -> CliResult<usize>,
    json: bool,
) -> CliResult<String> {
    let result = match command {
        CircularCommand::Solve { v, mu, model, order } => {
            let n = checked(order)?;
            let v = series2(v, n)?;
            let mu: Series1 = parse_expr(&source(mu)?)?.to_series1(n, &['x', 't'])?;
            circular::solve_circular(&v, &mu, *model, n)?
        }
        CircularCommand::Lemma1 { p, model, order } => {
            let n = checked(order)?;
            circular::lemma1_synthesize(&series2(p, n)?, *model, n)?
        }
        CircularCommand::ExampleThm3 { order } => {
            let ex = circular::theorem3_example(checked(order)?)?;
            return Ok(if json {
                to_json(&NonFlatExampleJson::from(&ex))
            } else {
                format!(
                    "{}normal form identities: {}\nline points give t: {}\ng = {}\nnon-flat: {}\n",
                    circular_text(&ex.result),
                    ex.normal_form_identities,
                    ex.line_points,
                    ex.g,
                    ex.non_flat
                )
            });
        }
    };
    Ok(if json { to_json(&CircularJson::from(&result)) } else { circular_text(&result) })
}

fn circular_text(r: &threeweb::CircularResult) -> String {
    let rep = &r.report;
    let mut out = format!(
        "model: {}\nA = {}\nB = {}\nU = {}\nF = {}\nG(t) = {}\nf = {}\n",
        r.model.name(),
        r.a,
        r.b,
        r.u,
        r.big_f,
        r.big_g,
        r.f
    );
    if let Some(theta) = &r.theta {
        out += &format!("theta = {theta}\n");
    }
    out += &format!(
        "residuals vanish: {}\nG independent of y: {}\nperiod: {}\n",
        rep.residuals_vanish(),
        rep.g_independent_of_y,
        rep.period_ok
    );
    if let Some(h) = rep.half_period_is_minus_id {
        out += &format!("half period is -Id: {h}\n");
    }
    match &rep.permutation {
        Some(p) => out += &format!("permutation: {p}\n"),
        None => out += "permutation: none\n",
    }
    out += &format!("flatness: {}\ncertified: {}\n", simple_text(rep.flatness), rep.certified());
    out
}

fn simple_text(c: threeweb::SimpleClass) -> String {
    match c {
        threeweb::SimpleClass::FlatToOrder { order } => format!("{} (order {order})", c.tag()),
        _ => c.tag().to_string(),
    }
}
