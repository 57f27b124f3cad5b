//! Command-line front end.
//!
//! Four families of commands: `ring` for ideal calculations in an explicit
//! polynomial ring, `socle` for socle and coefficient calculations over a
//! presented quotient ring, and `check` / `verify` for corpus runs that
//! emit structured reports. Inline ring definitions infer their variable
//! list from the generator text when `--vars` is omitted.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};

use crate::cache;
use crate::corpus::{find_entry, load_corpus};
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::ideal::Ideal;
use crate::monomial::MonomialOrder;
use crate::parse::parse_generators;
use crate::poly::PolyRing;
use crate::report::{run_corpus, RunOptions};
use crate::ring::{make_ring, RIdeal, RingPresentation, SubquotientModule};
use crate::socle_hilbert::{
    hilbert_coefficients, index_of_reducibility, noetherian_coefficients, socle_function_values,
    socle_ideal,
};

#[derive(Parser)]
#[command(
    name = "socle",
    version,
    about = "Exact socle ideals, Hilbert and Noetherian coefficients, and dimension filtrations for graded quotient rings"
)]
pub struct Cli {
    /// Directory for the on-disk basis cache; caching is off when unset
    #[arg(long, global = true, env = "SOCLE_CACHE_DIR")]
    pub cache_dir: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Ideal calculations in a polynomial ring
    Ring {
        #[command(subcommand)]
        op: RingOp,
    },
    /// Socle and coefficient calculations over a quotient ring
    Socle {
        #[command(subcommand)]
        op: SocleOp,
    },
    /// Decide ring properties for every corpus entry
    Check(CheckArgs),
    /// Replay characterization checks for every corpus entry
    Verify(VerifyArgs),
}

#[derive(Args)]
pub struct RingTarget {
    /// Comma-separated variables; inferred from the generators when omitted
    #[arg(long, value_delimiter = ',')]
    pub vars: Vec<String>,
    /// Comma-separated generators
    #[arg(long, default_value = "")]
    pub gens: String,
    /// Monomial order: degrevlex, lex, or block:<split>
    #[arg(long, default_value = "degrevlex")]
    pub order: String,
    /// Prime characteristic; rationals when omitted
    #[arg(long)]
    pub modulus: Option<u64>,
}

#[derive(Subcommand)]
pub enum RingOp {
    /// Print the reduced basis of the ideal
    Gb(RingTarget),
    /// Krull dimension of the quotient by the ideal
    Dim(RingTarget),
    /// Hilbert function of the quotient, degree by degree
    Hf {
        #[command(flatten)]
        target: RingTarget,
        #[arg(long)]
        max_degree: u32,
    },
    /// Length of the quotient when it is finite
    Length(RingTarget),
    /// Colon ideal (gens : by)
    Colon {
        #[command(flatten)]
        target: RingTarget,
        #[arg(long)]
        by: String,
    },
    /// Intersection of two ideals
    Intersect {
        #[command(flatten)]
        target: RingTarget,
        #[arg(long = "with")]
        with_gens: String,
    },
    /// Saturation (gens : by^infinity) and the index where it stabilizes
    Saturate {
        #[command(flatten)]
        target: RingTarget,
        #[arg(long)]
        by: String,
    },
    /// Ideal power
    Power {
        #[command(flatten)]
        target: RingTarget,
        #[arg(long)]
        exponent: u32,
    },
}

#[derive(Args)]
pub struct SocleTarget {
    /// Corpus entry id naming the ring
    #[arg(long)]
    pub ring: Option<String>,
    /// Corpus file used to resolve --ring
    #[arg(long, default_value = "corpus/default.json")]
    pub corpus: PathBuf,
    /// Inline variables for an ad hoc ring
    #[arg(long, value_delimiter = ',')]
    pub vars: Vec<String>,
    /// Inline defining generators for an ad hoc quotient
    #[arg(long, default_value = "")]
    pub defining: String,
    /// Generators of the target ideal in the quotient ring
    #[arg(long)]
    pub ideal: String,
}

#[derive(Subcommand)]
pub enum SocleOp {
    /// Socle ideal (ideal : m)
    Socle(SocleTarget),
    /// Index of reducibility, the socle length of the quotient
    Index(SocleTarget),
    /// Hilbert-Samuel coefficients e_i fitted from length values
    HilbertCoeffs {
        #[command(flatten)]
        target: SocleTarget,
        #[arg(long, default_value_t = 12)]
        n_cap: u32,
    },
    /// Noetherian coefficients f_i fitted from socle values
    NoetherCoeffs {
        #[command(flatten)]
        target: SocleTarget,
        #[arg(long, default_value_t = 12)]
        n_cap: u32,
    },
    /// Socle lengths N(ideal^(n+1)) for n = 0..n-max
    SocleValues {
        #[command(flatten)]
        target: SocleTarget,
        #[arg(long, default_value_t = 6)]
        n_max: u32,
    },
}

#[derive(Args)]
pub struct CheckArgs {
    #[arg(long, default_value = "corpus/default.json")]
    pub corpus: PathBuf,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Attach wall-clock timings to the report (breaks byte determinism)
    #[arg(long)]
    pub timings: bool,
    /// Write the report here instead of standard output
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args)]
pub struct VerifyArgs {
    #[arg(long, default_value = "corpus/default.json")]
    pub corpus: PathBuf,
    /// Comma-separated check ids; defaults to each entry's curated list
    #[arg(long, value_delimiter = ',')]
    pub theorems: Option<Vec<String>>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 5)]
    pub sops_per_theorem: usize,
    #[arg(long, default_value_t = 12)]
    pub n_cap: u32,
    /// Generator degree for sampled parameter systems
    #[arg(long, default_value_t = 2)]
    pub degree: u32,
    /// Attach wall-clock timings to the report (breaks byte determinism)
    #[arg(long)]
    pub timings: bool,
    /// Write the report here instead of standard output
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn infer_vars(texts: &[&str]) -> Vec<String> {
    let mut names = BTreeSet::new();
    for text in texts {
        let bytes = text.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            let c = bytes[i] as char;
            if c.is_ascii_alphabetic() || c == '_' {
                let start = i;
                while i < bytes.len()
                    && ((bytes[i] as char).is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                names.insert(text[start..i].to_string());
            } else {
                i += 1;
            }
        }
    }
    names.into_iter().collect()
}

fn parse_order(text: &str) -> Result<MonomialOrder> {
    match text {
        "degrevlex" => Ok(MonomialOrder::DegRevLex),
        "lex" => Ok(MonomialOrder::Lex),
        other => match other.strip_prefix("block:").and_then(|s| s.parse().ok()) {
            Some(split) => Ok(MonomialOrder::Block { split }),
            None => Err(Error::InvalidArgument(format!(
                "unknown monomial order {other:?}; use degrevlex, lex, or block:<split>"
            ))),
        },
    }
}

fn parse_list(ring: &Arc<PolyRing>, text: &str) -> Result<Vec<crate::poly::Polynomial>> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    parse_generators(ring, text)
}

impl RingTarget {
    fn ambient(&self, extra: &[&str]) -> Result<Arc<PolyRing>> {
        let vars = if self.vars.is_empty() {
            let mut texts = vec![self.gens.as_str()];
            texts.extend_from_slice(extra);
            let inferred = infer_vars(&texts);
            if inferred.is_empty() {
                return Err(Error::InvalidArgument(
                    "no variables given and none appear in the generators".into(),
                ));
            }
            inferred
        } else {
            self.vars.clone()
        };
        let field = match self.modulus {
            Some(p) => FieldSpec::PrimeField { characteristic: p },
            None => FieldSpec::Rationals,
        };
        PolyRing::new(vars, field, parse_order(&self.order)?)
    }

    fn ideal(&self, extra: &[&str]) -> Result<(Arc<PolyRing>, Ideal)> {
        let ring = self.ambient(extra)?;
        let gens = parse_list(&ring, &self.gens)?;
        Ok((ring.clone(), Ideal::new(&ring, gens)?))
    }
}

impl SocleTarget {
    fn resolve(&self) -> Result<(Arc<RingPresentation>, RIdeal)> {
        let presented = match &self.ring {
            Some(id) => {
                let doc = load_corpus(&self.corpus)?;
                find_entry(&doc, id)?.build_ring()?
            }
            None => {
                let vars = if self.vars.is_empty() {
                    let inferred = infer_vars(&[self.defining.as_str(), self.ideal.as_str()]);
                    if inferred.is_empty() {
                        return Err(Error::InvalidArgument(
                            "no ring named and no variables recognizable in the input".into(),
                        ));
                    }
                    inferred
                } else {
                    self.vars.clone()
                };
                let ambient = PolyRing::new(vars, FieldSpec::Rationals, MonomialOrder::DegRevLex)?;
                let defining = parse_list(&ambient, &self.defining)?;
                make_ring(&ambient, Ideal::new(&ambient, defining)?)?
            }
        };
        let target = RIdeal::from_strings(&presented, &self.ideal)?;
        Ok((presented, target))
    }
}

fn print_basis(ideal: &Ideal) -> Result<()> {
    let basis = ideal.default_groebner()?;
    if basis.polys.is_empty() {
        println!("0");
    }
    for p in &basis.polys {
        println!("{}", p.render());
    }
    Ok(())
}

fn coefficient_line(label: &str, coefficients: &[i64]) -> String {
    let body = coefficients
        .iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join(", ");
    format!("{label} = ({body})")
}

fn cmd_ring(op: RingOp) -> Result<()> {
    match op {
        RingOp::Gb(target) => {
            let (_, ideal) = target.ideal(&[])?;
            print_basis(&ideal)
        }
        RingOp::Dim(target) => {
            let (_, ideal) = target.ideal(&[])?;
            match ideal.dimension()? {
                Some(d) => println!("{d}"),
                None => println!("empty (unit ideal)"),
            }
            Ok(())
        }
        RingOp::Hf { target, max_degree } => {
            let (_, ideal) = target.ideal(&[])?;
            for e in 0..=max_degree {
                println!("{e}: {}", ideal.hilbert_function(e)?);
            }
            Ok(())
        }
        RingOp::Length(target) => {
            let (_, ideal) = target.ideal(&[])?;
            println!("{}", ideal.artinian_length()?);
            Ok(())
        }
        RingOp::Colon { target, by } => {
            let (ring, ideal) = target.ideal(&[by.as_str()])?;
            let other = Ideal::new(&ring, parse_list(&ring, &by)?)?;
            print_basis(&ideal.colon(&other)?)
        }
        RingOp::Intersect { target, with_gens } => {
            let (ring, ideal) = target.ideal(&[with_gens.as_str()])?;
            let other = Ideal::new(&ring, parse_list(&ring, &with_gens)?)?;
            print_basis(&ideal.intersect(&other)?)
        }
        RingOp::Saturate { target, by } => {
            let (ring, ideal) = target.ideal(&[by.as_str()])?;
            let other = Ideal::new(&ring, parse_list(&ring, &by)?)?;
            let (saturated, index) = ideal.saturate(&other)?;
            print_basis(&saturated)?;
            println!("stabilized at exponent {index}");
            Ok(())
        }
        RingOp::Power { target, exponent } => {
            let (_, ideal) = target.ideal(&[])?;
            print_basis(&ideal.power(exponent)?.interreduced()?)
        }
    }
}

fn cmd_socle(op: SocleOp) -> Result<()> {
    match op {
        SocleOp::Socle(target) => {
            let (_, q) = target.resolve()?;
            let socle = socle_ideal(&q)?;
            for g in socle.generators() {
                println!("{}", g.render());
            }
            Ok(())
        }
        SocleOp::Index(target) => {
            let (ring, q) = target.resolve()?;
            let full = SubquotientModule::full_ring(&ring)?;
            println!("{}", index_of_reducibility(&q, &full)?);
            Ok(())
        }
        SocleOp::HilbertCoeffs { target, n_cap } => {
            let (ring, q) = target.resolve()?;
            let full = SubquotientModule::full_ring(&ring)?;
            let fit = hilbert_coefficients(&q, &full, n_cap)?;
            println!("{}", coefficient_line("e", &fit.coefficients));
            println!(
                "stabilized from n = {} on the window 0..{}",
                fit.stabilization_index, fit.window_used
            );
            Ok(())
        }
        SocleOp::NoetherCoeffs { target, n_cap } => {
            let (ring, q) = target.resolve()?;
            let full = SubquotientModule::full_ring(&ring)?;
            let fit = noetherian_coefficients(&q, &full, n_cap)?;
            println!("{}", coefficient_line("f", &fit.coefficients));
            println!(
                "stabilized from n = {} on the window 0..{}",
                fit.stabilization_index, fit.window_used
            );
            Ok(())
        }
        SocleOp::SocleValues { target, n_max } => {
            let (ring, q) = target.resolve()?;
            let full = SubquotientModule::full_ring(&ring)?;
            let values = socle_function_values(&q, &full, n_max)?;
            for (n, v) in values.iter().enumerate() {
                println!("n = {n}: {v}");
            }
            Ok(())
        }
    }
}

fn emit_report(report: &crate::report::RunReport, out: Option<&Path>) -> Result<i32> {
    let text = report.to_json();
    match out {
        Some(path) => std::fs::write(path, &text)?,
        None => print!("{text}"),
    }
    let failures = report.failures();
    if failures.is_empty() {
        return Ok(0);
    }
    eprintln!(
        "{}",
        serde_json::to_string_pretty(&failures).expect("failure list serializes")
    );
    Ok(1)
}

fn cmd_check(args: CheckArgs) -> Result<i32> {
    let doc = load_corpus(&args.corpus)?;
    let mut options = RunOptions {
        timings: args.timings,
        ..RunOptions::default()
    };
    options.params.seed = args.seed;
    let report = run_corpus(&doc, &options)?;
    emit_report(&report, args.out.as_deref())
}

fn cmd_verify(args: VerifyArgs) -> Result<i32> {
    let doc = load_corpus(&args.corpus)?;
    let options = RunOptions {
        params: crate::checkers::VerifyParams {
            seed: args.seed,
            sops: args.sops_per_theorem,
            n_cap: args.n_cap,
            degree: args.degree,
        },
        verify: true,
        theorems_override: args.theorems,
        timings: args.timings,
    };
    let report = run_corpus(&doc, &options)?;
    emit_report(&report, args.out.as_deref())
}

/// Parses the process arguments, runs the command, and returns the exit
/// code: 0 clean, 1 for failed gates, 2 for unusable input.
pub fn run() -> i32 {
    let cli = Cli::parse();
    cache::set_cache_dir(cli.cache_dir.as_deref());
    let outcome = match cli.command {
        Command::Ring { op } => cmd_ring(op).map(|()| 0),
        Command::Socle { op } => cmd_socle(op).map(|()| 0),
        Command::Check(args) => cmd_check(args),
        Command::Verify(args) => cmd_verify(args),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Parse { .. }
                | Error::Corpus(_)
                | Error::Json(_)
                | Error::Io(_)
                | Error::UnknownRing(_)
                | Error::UnknownTheorem(_)
                | Error::InvalidArgument(_) => 2,
                _ => 1,
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn variables_are_inferred_and_sorted() {
        assert_eq!(infer_vars(&["x^2 + y*z, w"]), vec!["w", "x", "y", "z"]);
        assert_eq!(infer_vars(&["a1*b + a1^3"]), vec!["a1", "b"]);
        assert!(infer_vars(&["3 + 5"]).is_empty());
    }

    #[test]
    fn orders_parse_by_name() {
        assert_eq!(parse_order("degrevlex").unwrap(), MonomialOrder::DegRevLex);
        assert_eq!(parse_order("lex").unwrap(), MonomialOrder::Lex);
        assert_eq!(
            parse_order("block:2").unwrap(),
            MonomialOrder::Block { split: 2 }
        );
        assert!(parse_order("grlex").is_err());
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
