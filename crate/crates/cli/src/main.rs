//! `countrep`: command-line front end for the countrep library.

mod input;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use countrep::extensions::{
    check_presentation, eval_word, pigeonhole_commutator, quotient_center, DomainTag, ExtElement,
    GeneratorId, LabelTable, Word,
};
use countrep::representability::{
    induced_action, mod_one, torsion_primary_decompose, FiniteAction,
};
use countrep::unitriangular::{central_coset_separator, UniMatrix};
use countrep::valuation_lemma::{coset_separation_bound, value_set, CosetSpec, SubgroupBasis};
use countrep::{PuiseuxPoly, Valuation};
use num_bigint::BigInt;

use input::{load, parse_group, parse_pair, parse_subgroup, ActionSpec, Failure};

#[derive(Parser)]
#[command(
    name = "countrep",
    version,
    about = "Puiseux series, unitriangular groups and central extensions"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Puiseux polynomial arithmetic.
    #[command(subcommand)]
    Series(SeriesCmd),
    /// Value sets and coset separation bounds.
    #[command(subcommand)]
    Lemma(LemmaCmd),
    /// Unitriangular matrices over the valuation ring.
    #[command(subcommand)]
    Uni(UniCmd),
    /// Central extensions and commutator words.
    #[command(subcommand)]
    Ext(ExtCmd),
    /// Torsion decomposition and induced actions.
    #[command(subcommand)]
    Rep(RepCmd),
}

#[derive(Subcommand)]
enum SeriesCmd {
    /// Evaluate an expression to canonical form.
    Eval { expr: String },
    /// Valuation of an expression.
    Valuation { expr: String },
    /// Reduction modulo t^(n+1) and higher.
    Reduce {
        expr: String,
        #[arg(long)]
        level: u64,
    },
}

#[derive(Subcommand)]
enum LemmaCmd {
    /// Value set of the subgroup generated by independent elements.
    ValueSet {
        #[arg(required = true)]
        generators: Vec<String>,
    },
    /// Least n with v(z + c) <= n for every c in the subgroup.
    CosetBound {
        #[arg(long)]
        z: String,
        #[arg(long = "gen", required = true)]
        generators: Vec<String>,
    },
}

#[derive(Subcommand)]
enum UniCmd {
    /// Congruence level of a matrix.
    Level {
        /// JSON matrix file, or inline JSON.
        #[arg(long)]
        matrix: String,
    },
    /// Reduction modulo the level-n congruence ideal.
    Reduce {
        #[arg(long)]
        matrix: String,
        #[arg(long)]
        level: u64,
    },
    /// Separation certificate for the coset zeta·<gamma>.
    Separate {
        #[arg(long)]
        zeta: String,
        #[arg(long)]
        gamma: String,
    },
}

#[derive(Args)]
struct TagArg {
    /// Coefficient domain: free-int, mod-two or rational.
    #[arg(long, default_value = "free-int")]
    tag: DomainTag,
}

#[derive(Subcommand)]
enum ExtCmd {
    /// Evaluate a word in the generators a<i>, b<i>, c.
    Eval {
        #[command(flatten)]
        tag: TagArg,
        word: String,
    },
    /// Check the defining relations on index pairs.
    Check {
        #[command(flatten)]
        tag: TagArg,
        /// Index pair `i:j`; repeatable.
        #[arg(long = "pair", value_parser = parse_pair, default_value = "1:2")]
        pairs: Vec<(GeneratorId, GeneratorId)>,
        /// Check c^k != e up to this exponent.
        #[arg(long, default_value_t = 100)]
        order_bound: u64,
    },
    /// Find a commutator word equal to c in a label table.
    Pigeonhole {
        #[command(flatten)]
        tag: TagArg,
        /// JSON table file, or inline JSON.
        #[arg(long)]
        table: String,
    },
    /// Image of a word in the quotient by the subgroup generated by c^n.
    Quotient {
        #[arg(long)]
        n: BigInt,
        word: String,
    },
}

#[derive(Subcommand)]
enum RepCmd {
    /// Primary components of a rational modulo 1.
    Torsion { value: String },
    /// Action of G induced from an action of a subgroup.
    Induce {
        /// Named group (Z<n>, D<n>, S<n>, A<n>), JSON file, or inline JSON.
        #[arg(long)]
        group: String,
        /// Comma-separated element indices.
        #[arg(long, value_parser = parse_subgroup, value_delimiter = ',', required = true)]
        subgroup: Vec<usize>,
        /// `{"points": n, "table": [...]}`; defaults to the trivial action on one point.
        #[arg(long)]
        action: Option<String>,
    },
}

/// A command's output in both formats.
struct Report {
    text: String,
    json: Value,
}

impl Report {
    fn new(text: impl Into<String>, json: impl Serialize) -> Result<Self, Failure> {
        let json = serde_json::to_value(json).map_err(|e| Failure::Internal(e.to_string()))?;
        Ok(Report {
            text: text.into(),
            json,
        })
    }
}

fn series(cmd: SeriesCmd) -> Result<Report, Failure> {
    match cmd {
        SeriesCmd::Eval { expr } => {
            let x: PuiseuxPoly = expr.parse()?;
            Report::new(x.to_string(), &x)
        }
        SeriesCmd::Valuation { expr } => {
            let v = expr.parse::<PuiseuxPoly>()?.valuation();
            Report::new(v.to_string(), &v)
        }
        SeriesCmd::Reduce { expr, level } => {
            let x = expr.parse::<PuiseuxPoly>()?.reduce_mod_threshold(level)?;
            Report::new(x.to_string(), &x)
        }
    }
}

fn value_list(values: &std::collections::BTreeSet<Valuation>) -> String {
    let items: Vec<String> = values.iter().map(ToString::to_string).collect();
    format!("{{{}}}", items.join(", "))
}

fn parse_all(exprs: &[String]) -> Result<Vec<PuiseuxPoly>, Failure> {
    exprs.iter().map(|s| Ok(s.parse()?)).collect()
}

fn lemma(cmd: LemmaCmd) -> Result<Report, Failure> {
    match cmd {
        LemmaCmd::ValueSet { generators } => {
            let values = value_set(&SubgroupBasis::new(parse_all(&generators)?)?)?;
            Report::new(value_list(&values), &values)
        }
        LemmaCmd::CosetBound { z, generators } => {
            let spec = CosetSpec::new(z.parse()?, parse_all(&generators)?);
            let bound = coset_separation_bound(&spec)?;
            let text = format!(
                "n = {}\nmax valuation = {}\nenlarged values = {}",
                bound.level,
                bound.max_valuation,
                value_list(&bound.enlarged_values)
            );
            Report::new(text, &bound)
        }
    }
}

fn uni(cmd: UniCmd) -> Result<Report, Failure> {
    match cmd {
        UniCmd::Level { matrix } => {
            let u: UniMatrix = load(&matrix)?;
            let level = u.congruence_level()?;
            let text = match level {
                Some(n) => format!("level = {}", n),
                None => "level = none (identity)".to_string(),
            };
            Report::new(text, json!({ "level": level }))
        }
        UniCmd::Reduce { matrix, level } => {
            let u: UniMatrix = load(&matrix)?;
            let r = u.reduce_mod(level)?;
            Report::new(r.to_string(), &r)
        }
        UniCmd::Separate { zeta, gamma } => {
            let cert = central_coset_separator(&load(&zeta)?, &load(&gamma)?)?;
            let text = format!(
                "n = {}, p = {}, i = {}\nz = {}, step = {}",
                cert.level, cert.row, cert.depth, cert.offset, cert.step
            );
            Report::new(text, &cert)
        }
    }
}

fn describe(g: &ExtElement) -> String {
    if g.is_c() {
        format!("{} = c", g)
    } else if g.is_identity() {
        format!("{} = e", g)
    } else {
        g.to_string()
    }
}

fn ext(cmd: ExtCmd) -> Result<Report, Failure> {
    match cmd {
        ExtCmd::Eval { tag, word } => {
            let g = eval_word(&word.parse::<Word>()?, tag.tag);
            Report::new(describe(&g), &g)
        }
        ExtCmd::Check {
            tag,
            pairs,
            order_bound,
        } => {
            let report = check_presentation(tag.tag, &pairs, order_bound);
            let mut lines: Vec<String> = report
                .checks
                .iter()
                .map(|c| format!("{}  {}", if c.holds { "ok  " } else { "FAIL" }, c.relation))
                .collect();
            let failed = report.failures().count();
            lines.push(format!("{} checks, {} failed", report.checks.len(), failed));
            Report::new(lines.join("\n"), &report)
        }
        ExtCmd::Pigeonhole { tag, table } => {
            let table: LabelTable = load(&table)?;
            match pigeonhole_commutator(&table) {
                None => Report::new("no witness", json!({ "witness": null })),
                Some(w) => {
                    let value = eval_word(&w.word, tag.tag);
                    let text = format!(
                        "witness {{i:{}, j:{}, k:{}}}\nword = {}\nword ↦ {}",
                        w.i,
                        w.j,
                        w.k,
                        w.word,
                        if value.is_c() {
                            "c".to_string()
                        } else {
                            value.to_string()
                        }
                    );
                    Report::new(
                        text,
                        json!({ "witness": w, "value": value, "is_c": value.is_c() }),
                    )
                }
            }
        }
        ExtCmd::Quotient { n, word } => {
            let g = eval_word(&word.parse::<Word>()?, DomainTag::FreeInt);
            let image = quotient_center(&g, &n)?;
            Report::new(image.to_string(), &image)
        }
    }
}

fn rep(cmd: RepCmd) -> Result<Report, Failure> {
    match cmd {
        RepCmd::Torsion { value } => {
            let x = mod_one(&countrep::puiseux::parse_rational(&value)?);
            let parts = torsion_primary_decompose(&x);
            let mut lines = vec![format!("{} mod 1", x)];
            lines.extend(parts.iter().map(|(p, c)| format!("  {}: {}", p, c)));
            let json: serde_json::Map<String, Value> = parts
                .iter()
                .map(|(p, c)| (p.to_string(), Value::String(c.to_string())))
                .collect();
            Report::new(
                lines.join("\n"),
                json!({ "value": x.to_string(), "components": json }),
            )
        }
        RepCmd::Induce {
            group,
            subgroup,
            action,
        } => {
            let g = parse_group(&group)?;
            let h = g.restrict(&subgroup)?;
            let act = match action {
                Some(spec) => {
                    let spec: ActionSpec = load(&spec)?;
                    FiniteAction::new(h, spec.points, spec.table)?
                }
                None => {
                    let order = h.order();
                    FiniteAction::new(h, 1, vec![vec![0]; order])?
                }
            };
            let y = induced_action(&g, &subgroup, &act)?;
            let kernel = y.kernel();
            let names: Vec<&str> = kernel.iter().map(|&k| g.elements()[k].as_str()).collect();
            let text = format!(
                "points = {}, faithful = {}\nkernel = {{{}}}",
                y.points(),
                y.is_faithful(),
                names.join(", ")
            );
            Report::new(
                text,
                json!({ "action": y, "kernel": kernel, "faithful": y.is_faithful() }),
            )
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Series(c) => series(c),
        Command::Lemma(c) => lemma(c),
        Command::Uni(c) => uni(c),
        Command::Ext(c) => ext(c),
        Command::Rep(c) => rep(c),
    };
    match result {
        Ok(report) => {
            match cli.format {
                Format::Text => println!("{}", report.text),
                Format::Json => println!("{}", report.json),
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {}", msg);
            ExitCode::from(2)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("internal error: {}", msg);
            ExitCode::from(1)
        }
    }
}
