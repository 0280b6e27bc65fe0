//! Driver behind the `borcherds` binary: argument parsing, datum loading and
//! the text reports of each sub-command.

use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};

use borcherds::cartan::{CartanDatum, RootWeight, Weight};
use borcherds::characters::{diff, formula_character, render_offset, CharacterSeries};
use borcherds::freesuper::{exdegrees_up_to_height, roots_up_to_height};
use borcherds::modules::{
    brute_character, irreducible_quotient, HighestWeightSlice, QuotientSlice, VermaSlice,
};
use borcherds::pairing::{serre_type_relations, PlusSpace};
use borcherds::rtheta::{compute_theta, Casimir, ThetaSign};
use borcherds::ualgebra::UAlgebra;

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "borcherds", version, about = "Exact computations in quantum Borcherds-Bozec superalgebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Source {
    Formula,
    Module,
    Both,
}

#[derive(Debug, clap::Args)]
pub struct DatumArgs {
    /// Datum file (TOML, or JSON with a .json extension).
    pub datum: PathBuf,
    /// Truncation depth: maximal height of the weights considered.
    #[arg(long, default_value_t = 4)]
    pub depth: u32,
}

#[derive(Debug, clap::Args)]
pub struct WeightArgs {
    #[command(flatten)]
    pub base: DatumArgs,
    /// Highest weight as comma-separated coroot values; defaults to the datum's anchor_weight.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub weight: Option<Vec<i64>>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the datum and classify its indices.
    Validate(DatumArgs),
    /// Dimensions of the positive half per weight.
    Dim(DatumArgs),
    /// Gram block reports per degree: size, rank, radical and pivot words.
    Gram(DatumArgs),
    /// Check that Serre-type elements lie in the radical.
    SerreCheck(DatumArgs),
    /// Blocks of the quasi-R-matrix.
    Theta {
        #[command(flatten)]
        base: DatumArgs,
        /// Height bound; defaults to the depth.
        #[arg(long)]
        height: Option<u32>,
    },
    /// Character of the irreducible module.
    Character {
        #[command(flatten)]
        args: WeightArgs,
        #[arg(long, value_enum, default_value_t = Source::Formula)]
        source: Source,
    },
    /// Weight-space dimensions of the Verma module and its irreducible quotient.
    Verma(WeightArgs),
    /// Casimir eigenvalue exponents on the irreducible module.
    Casimir(WeightArgs),
}

/// An error that ends the run with a given exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

fn input_error(message: impl Into<String>) -> Failure {
    Failure { code: EXIT_INPUT, message: message.into() }
}

impl From<borcherds::Error> for Failure {
    fn from(e: borcherds::Error) -> Self {
        input_error(e.to_string())
    }
}

fn load(args: &DatumArgs) -> Result<CartanDatum, Failure> {
    let datum = CartanDatum::from_file(&args.datum)?;
    let report = datum.validate();
    if !report.is_valid() {
        let lines: Vec<String> = report.violations.iter().map(|v| v.to_string()).collect();
        return Err(input_error(format!("invalid datum: {}", lines.join("; "))));
    }
    Ok(datum)
}

fn weight(datum: &CartanDatum, args: &WeightArgs) -> Result<Weight, Failure> {
    let values = match (&args.weight, datum.anchor_weight()) {
        (Some(w), _) => w.clone(),
        (None, Some(a)) => a.to_vec(),
        (None, None) => return Err(input_error("a weight is required: pass --weight or set anchor_weight")),
    };
    if values.len() != datum.rank() {
        return Err(input_error(format!("--weight needs {} coroot values, got {}", datum.rank(), values.len())));
    }
    let w = Weight::from_coroots(values);
    if !datum.is_dominant(&w) {
        return Err(input_error("the weight must be dominant"));
    }
    Ok(w)
}

fn dims_table(rows: impl IntoIterator<Item = (RootWeight, i64)>) -> String {
    let mut out = String::new();
    for (beta, d) in rows {
        let _ = writeln!(out, "{} : {}", render_offset(&beta), d);
    }
    out
}

fn quotient(datum: &CartanDatum, lambda: Weight, depth: i64) -> Result<QuotientSlice, Failure> {
    let space = Arc::new(PlusSpace::new(datum.clone()));
    let verma = Arc::new(VermaSlice::build(space, lambda, depth)?);
    Ok(irreducible_quotient(verma))
}

fn validate(datum: &CartanDatum) -> String {
    let report = datum.validate();
    let mut out = String::from("valid\n");
    for i in 0..datum.rank() {
        let _ = writeln!(
            out,
            "index {}: {:?}, parity {}, d = {}",
            datum.name(i),
            report.classification[i],
            datum.parity(i),
            datum.d(i)
        );
    }
    let _ = writeln!(out, "bar-consistent: {}", if report.bar_consistent { "yes" } else { "no" });
    out
}

fn dim(datum: &CartanDatum, depth: i64) -> String {
    let space = PlusSpace::new(datum.clone());
    dims_table(roots_up_to_height(datum.rank(), depth).into_iter().map(|b| {
        let d = space.dim(&b) as i64;
        (b, d)
    }))
}

fn gram(datum: &CartanDatum, depth: i64) -> String {
    let space = PlusSpace::new(datum.clone());
    let mut out = String::new();
    for nu in exdegrees_up_to_height(datum, depth) {
        let block = space.block(&nu);
        let _ = writeln!(out, "degree {}", nu.render(datum));
        let _ = writeln!(out, "  words: {}", block.dim());
        let _ = writeln!(out, "  rank: {}", block.rank);
        let _ = writeln!(out, "  radical: {}", block.dim() - block.rank);
        let pivots: Vec<String> = block.pivot_words().iter().map(|w| w.render(datum, 'a')).collect();
        let _ = writeln!(out, "  pivots: {}", pivots.join(", "));
    }
    out
}

fn serre_check(datum: &CartanDatum, depth: i64) -> Result<(String, bool), Failure> {
    let space = PlusSpace::new(datum.clone());
    let mut out = String::new();
    let mut all = true;
    for rel in serre_type_relations(datum, depth)? {
        let member = space.radical_membership(&rel.element).is_member();
        all &= member;
        let _ = writeln!(out, "{}: in radical: {}", rel.label(datum), if member { "yes" } else { "no" });
    }
    Ok((out, all))
}

fn theta(datum: &CartanDatum, height: i64) -> String {
    let space = PlusSpace::new(datum.clone());
    let theta = compute_theta(&space, height, ThetaSign::Parts);
    let mut out = String::new();
    for block in theta.blocks.values() {
        let _ = writeln!(out, "block {} (sign {:+})", block.degree.render(datum), block.sign);
        let cols: Vec<String> = block.words.iter().map(|w| w.render(datum, 'a')).collect();
        let _ = writeln!(out, "  columns: {}", cols.join(" | "));
        for (p, bw) in block.words.iter().enumerate() {
            let row: Vec<String> = (0..block.words.len()).map(|s| block.coeffs.get(p, s).to_string()).collect();
            let _ = writeln!(out, "  {} : {}", bw.render(datum, 'b'), row.join(" | "));
        }
    }
    out
}

fn character(datum: &CartanDatum, lambda: Weight, depth: i64, source: Source) -> Result<(String, bool), Failure> {
    let formula = match source {
        Source::Module => None,
        _ => Some(formula_character(datum, &lambda, depth, None)?),
    };
    let module = match source {
        Source::Formula => None,
        _ => Some(CharacterSeries::from_dims(
            lambda.clone(),
            depth,
            &brute_character(&quotient(datum, lambda, depth)?),
        )),
    };
    match (formula, module) {
        (Some(f), None) => Ok((f.render(), true)),
        (None, Some(m)) => Ok((m.render(), true)),
        (Some(f), Some(m)) => {
            let mut out = format!("formula\n{}module\n{}", f.render(), m.render());
            let d = diff(&f, &m);
            if d.is_empty() {
                out.push_str("diff: none\n");
            } else {
                out.push_str("diff\n");
                for (beta, a, b) in &d {
                    let _ = writeln!(out, "{} : formula {} module {}", render_offset(beta), a, b);
                }
            }
            Ok((out, d.is_empty()))
        }
        (None, None) => unreachable!("every source selects at least one side"),
    }
}

fn verma(datum: &CartanDatum, lambda: Weight, depth: i64) -> Result<String, Failure> {
    let q = quotient(datum, lambda, depth)?;
    let as_i64 = |rows: Vec<(RootWeight, usize)>| rows.into_iter().map(|(b, d)| (b, d as i64));
    Ok(format!(
        "verma\n{}irreducible quotient\n{}",
        dims_table(as_i64(q.verma().dimensions())),
        dims_table(as_i64(q.dimensions()))
    ))
}

fn casimir(datum: &CartanDatum, lambda: Weight, depth: i64) -> Result<(String, bool), Failure> {
    let q = quotient(datum, lambda, depth)?;
    let u = UAlgebra::new(Arc::new(PlusSpace::new(datum.clone())));
    let cas = Casimir::new(&u, &q);
    let mut out = String::new();
    for (beta, exps) in cas.exponents() {
        let e: Vec<String> = exps.iter().map(|e| format!("q^{e}")).collect();
        let _ = writeln!(out, "{} : {}", render_offset(&beta), e.join(", "));
    }
    let commutation = cas.check_commutation();
    let eigen = cas.eigen_check();
    let _ = writeln!(out, "commutation checks: {} ({} violations)", commutation.checked, commutation.violations.len());
    let _ = writeln!(out, "eigenvalue checks: {} ({} violations)", eigen.checked, eigen.violations.len());
    Ok((out, commutation.is_ok() && eigen.is_ok()))
}

/// Runs one parsed command, writing the report to `out`. Returns the exit code.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match execute(&cli.command) {
        Ok((report, ok)) => {
            if out.write_all(report.as_bytes()).is_err() {
                return EXIT_INPUT;
            }
            if ok {
                EXIT_OK
            } else {
                EXIT_MISMATCH
            }
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn execute(command: &Command) -> Result<(String, bool), Failure> {
    let with_weight = |args: &WeightArgs| -> Result<(CartanDatum, Weight, i64), Failure> {
        let datum = load(&args.base)?;
        let w = weight(&datum, args)?;
        Ok((datum, w, args.base.depth as i64))
    };
    match command {
        Command::Validate(args) => Ok((validate(&load(args)?), true)),
        Command::Dim(args) => Ok((dim(&load(args)?, args.depth as i64), true)),
        Command::Gram(args) => Ok((gram(&load(args)?, args.depth as i64), true)),
        Command::SerreCheck(args) => serre_check(&load(args)?, args.depth as i64),
        Command::Theta { base, height } => {
            Ok((theta(&load(base)?, height.unwrap_or(base.depth) as i64), true))
        }
        Command::Character { args, source } => {
            let (datum, w, depth) = with_weight(args)?;
            character(&datum, w, depth, *source)
        }
        Command::Verma(args) => {
            let (datum, w, depth) = with_weight(args)?;
            Ok((verma(&datum, w, depth)?, true))
        }
        Command::Casimir(args) => {
            let (datum, w, depth) = with_weight(args)?;
            casimir(&datum, w, depth)
        }
    }
}
