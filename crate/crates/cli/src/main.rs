//! `homlie`: load Hom-Lie algebras from JSON, validate them, and run the
//! analysis pipelines (centers, tensor and exterior squares, homology, the
//! multiplier oracle, capability) plus the randomized theorem-regression
//! corpus.
//!
//! Exit codes: 0 success, 1 failed checks (axiom violations, corpus or
//! exactness failures), 2 parse/usage/precondition errors.

use std::fs;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use homlie_core::corpus::{self, AlphaMode, CorpusSpec};
use homlie_core::json::{algebra_from_str, algebra_to_json};
use homlie_core::{capability, homology, report, tensorext};
use homlie_core::{Error, FieldSpec, HomLieAlgebra, Subspace};

#[derive(Parser)]
#[command(name = "homlie", version, about = "Exact kernel for finite-dimensional Hom-Lie algebras")]
struct Cli {
    /// Output format for all commands
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args)]
struct FileArg {
    /// Path to an algebra JSON document
    path: String,
}

#[derive(Subcommand)]
enum Command {
    /// Check the Hom-Lie axioms; exit 1 listing every violation
    Validate(FileArg),
    /// Full analysis document: centers, homology, multiplier oracle, capability
    Report {
        #[command(flatten)]
        file: FileArg,
        /// Include a capability witness when one is constructible
        #[arg(long)]
        witness: bool,
    },
    /// Center and alpha-center bases
    Center(FileArg),
    /// Non-abelian tensor square
    Tensor(FileArg),
    /// Non-abelian exterior square
    Exterior(FileArg),
    /// Quadratic functor of the abelianization
    Gamma(FileArg),
    /// Chain-complex homology dimensions
    Homology {
        #[command(flatten)]
        file: FileArg,
        /// Maximal degree
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// Include cycle bases
        #[arg(long)]
        witness: bool,
    },
    /// Schur multiplier through both pipelines (they must agree)
    Multiplier(FileArg),
    /// Capability analysis
    Capability {
        #[command(flatten)]
        file: FileArg,
        /// Include a witness cover when one is constructible
        #[arg(long)]
        witness: bool,
    },
    /// Exactness suites for the extension by the listed ideal
    Sequence {
        #[command(flatten)]
        file: FileArg,
        /// Comma-separated basis indices spanning the kernel ideal
        #[arg(long, value_delimiter = ',')]
        ideal: Vec<usize>,
        /// Verify and use a coordinate splitting
        #[arg(long)]
        split: bool,
    },
    /// Randomized theorem-regression corpus
    Corpus {
        #[arg(long, default_value_t = 50)]
        count: usize,
        /// Dimension range, e.g. 1..5
        #[arg(long, default_value = "1..5")]
        dims: String,
        /// identity | surjective | nilpotent | zero | arbitrary
        #[arg(long, default_value = "arbitrary")]
        alpha: String,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Q for the rationals, or a prime modulus
        #[arg(long, default_value = "Q")]
        field: String,
    },
}

fn max_dim() -> usize {
    std::env::var("HOMLIE_MAX_DIM")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(8)
}

fn load(path: &str) -> Result<HomLieAlgebra, Error> {
    let text = fs::read_to_string(path).map_err(|e| Error::Parse(format!("{path}: {e}")))?;
    let l = algebra_from_str(&text)?;
    let limit = max_dim();
    if l.dim() > limit {
        return Err(Error::Precondition(format!(
            "dimension {} exceeds HOMLIE_MAX_DIM = {limit}",
            l.dim()
        )));
    }
    Ok(l)
}

fn emit(format: Format, doc: &Value, text: impl FnOnce() -> String) {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(doc).expect("serializable")),
        Format::Text => println!("{}", text()),
    }
}

fn parse_dims(s: &str) -> Result<(usize, usize), Error> {
    let (a, b) = s
        .split_once("..")
        .ok_or_else(|| Error::Parse(format!("dimension range must look like 1..5, got {s:?}")))?;
    let lo = a.trim().parse().map_err(|_| Error::Parse(format!("bad dimension {a:?}")))?;
    let hi = b.trim().parse().map_err(|_| Error::Parse(format!("bad dimension {b:?}")))?;
    Ok((lo, hi))
}

fn parse_field(s: &str) -> Result<FieldSpec, Error> {
    if s == "Q" || s == "q" || s == "rational" {
        return Ok(FieldSpec::Rational);
    }
    let p: u64 = s
        .parse()
        .map_err(|_| Error::Parse(format!("field must be Q or a prime, got {s:?}")))?;
    FieldSpec::prime(p)
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Validate(f) => {
            let l = load(&f.path)?;
            let rep = l.validate();
            let doc = json!({
                "valid": rep.is_valid(),
                "violations": rep.violations.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
            });
            emit(cli.format, &doc, || rep.to_string());
            Ok(if rep.is_valid() { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Report { file, witness } => {
            let l = load(&file.path)?;
            let doc = report::full_report(&l, witness)?;
            emit(cli.format, &doc, || {
                format!(
                    "dim {} over {} | Z = {}, Z_a = {}, [L,L] = {}, ab = {}\n\
                     H1 = {}, H2 = {} (= ker lambda: verified), H3 = {}\n\
                     L*L = {}, L^L = {}, J2 = {}, Gamma(ab) = {}\n\
                     tensor center = {}, exterior center = {}, capable: {}",
                    doc["algebra"]["dim"], doc["algebra"]["field"],
                    doc["center_dim"], doc["alpha_center_dim"], doc["derived_dim"], doc["abelianization_dim"],
                    doc["homology_dims"]["h1"], doc["homology_dims"]["h2"], doc["homology_dims"]["h3"],
                    doc["tensor_square_dim"], doc["exterior_square_dim"], doc["j2_dim"], doc["gamma_abelianization_dim"],
                    doc["tensor_center_dim"], doc["exterior_center_dim"], doc["capable"],
                )
            });
            Ok(ExitCode::SUCCESS)
        }
        Command::Center(f) => {
            let l = load(&f.path)?;
            let doc = report::center_report(&l);
            emit(cli.format, &doc, || {
                format!(
                    "center dim {} | alpha-center dim {} | derived dim {}",
                    doc["center"]["dim"], doc["alpha_center"]["dim"], doc["derived_dim"]
                )
            });
            Ok(ExitCode::SUCCESS)
        }
        Command::Tensor(f) => {
            let l = load(&f.path)?;
            let t = tensorext::tensor_square(&l)?;
            let doc = report::tensor_report(&t);
            emit(cli.format, &doc, || {
                format!(
                    "tensor square: dim {} (ambient {}, relations {}), square dim {}, ker lambda dim {}",
                    doc["dim"], doc["ambient_dim"], doc["relation_dim"], doc["square_dim"], doc["lambda_ker_dim"]
                )
            });
            Ok(ExitCode::SUCCESS)
        }
        Command::Exterior(f) => {
            let l = load(&f.path)?;
            let t = tensorext::exterior_square(&l)?;
            let doc = report::tensor_report(&t);
            emit(cli.format, &doc, || {
                format!(
                    "exterior square: dim {} (ambient {}, relations {}), ker lambda dim {}",
                    doc["dim"], doc["ambient_dim"], doc["relation_dim"], doc["lambda_ker_dim"]
                )
            });
            Ok(ExitCode::SUCCESS)
        }
        Command::Gamma(f) => {
            let l = load(&f.path)?;
            let (ab, _) = l.abelianization();
            let g = tensorext::gamma(ab.dim(), ab.alpha())?;
            let doc = json!({
                "abelianization_dim": ab.dim(),
                "gamma_dim": g.dim,
                "alpha_gamma": &g.alpha_gamma,
            });
            emit(cli.format, &doc, || {
                format!("Gamma(L^ab): source dim {}, dim {}", ab.dim(), g.dim)
            });
            Ok(ExitCode::SUCCESS)
        }
        Command::Homology { file, n, witness } => {
            let l = load(&file.path)?;
            let doc = report::homology_report(&l, n, witness)?;
            emit(cli.format, &doc, || {
                doc["degrees"]
                    .as_array()
                    .unwrap()
                    .iter()
                    .map(|d| format!("H{} dim {}", d["degree"], d["dim"]))
                    .collect::<Vec<_>>()
                    .join(" | ")
            });
            Ok(ExitCode::SUCCESS)
        }
        Command::Multiplier(f) => {
            let l = load(&f.path)?;
            let m = homology::multiplier(&l)?;
            let doc = json!({
                "h2_dim": m.h2_dim,
                "ker_lambda_dim": m.ker_lambda_dim,
                "oracle_equality": "verified",
                "witness": {
                    "ambient_dim": m.witness.ambient_dim(),
                    "dim": m.witness.dim(),
                    "basis": m.witness.basis().to_json_rows(),
                },
            });
            emit(cli.format, &doc, || {
                format!(
                    "multiplier dim {} (chain complex {} = exterior kernel {})",
                    m.h2_dim, m.h2_dim, m.ker_lambda_dim
                )
            });
            Ok(ExitCode::SUCCESS)
        }
        Command::Capability { file, witness } => {
            let l = load(&file.path)?;
            let rep = capability::is_capable(&l, witness)?;
            let mut doc = json!({
                "z": rep.z_dim,
                "z_alpha": rep.z_alpha_dim,
                "z_star": { "dim": rep.tensor_center.dim(), "basis": rep.tensor_center.basis().to_json_rows() },
                "z_wedge": { "dim": rep.exterior_center.dim(), "basis": rep.exterior_center.basis().to_json_rows() },
                "capable": rep.capable,
                "criteria_consistency": rep.criteria_consistent,
            });
            if let Some(w) = &rep.witness {
                doc["witness"] = algebra_to_json(w);
            }
            emit(cli.format, &doc, || {
                format!(
                    "Z dim {} | Z_a dim {} | tensor center dim {} | exterior center dim {} | capable: {}",
                    rep.z_dim,
                    rep.z_alpha_dim,
                    rep.tensor_center.dim(),
                    rep.exterior_center.dim(),
                    rep.capable
                )
            });
            Ok(ExitCode::SUCCESS)
        }
        Command::Sequence { file, ideal, split } => {
            let l = load(&file.path)?;
            let field = l.field();
            let mut rows = Vec::new();
            for &i in &ideal {
                if i >= l.dim() {
                    return Err(Error::Parse(format!("ideal index {i} out of range")));
                }
                let mut e = vec![field.zero(); l.dim()];
                e[i] = field.one();
                rows.push(e);
            }
            let m = Subspace::from_vectors(&rows, l.dim(), field)?;
            if !l.is_ideal(&m) {
                return Err(Error::NotIdeal(
                    "the listed basis vectors do not span an alpha-invariant ideal".into(),
                ));
            }
            if split {
                verify_coordinate_splitting(&l, &m)?;
            }
            let seq = tensorext::extension_sequence_check(&l, &m, split)?;
            let six = homology::six_term_check(&l, &m, split)?;
            let seq_ok = seq.middle_exact
                && seq.quotient_map_surjective
                && seq.split_injective.unwrap_or(true);
            let six_ok = six.exact_at.iter().all(|&b| b)
                && six.final_surjective
                && six.split_first_injective.unwrap_or(true)
                && six.split_second_surjective.unwrap_or(true);
            let doc = json!({
                "exterior_sequence": {
                    "dims": { "relative": seq.dim_mk, "middle": seq.dim_kk, "quotient": seq.dim_ll },
                    "middle_exact": seq.middle_exact,
                    "surjective": seq.quotient_map_surjective,
                    "split_injective": seq.split_injective,
                },
                "six_term": {
                    "dims": six.dims,
                    "exact_at": six.exact_at,
                    "final_surjective": six.final_surjective,
                    "split_first_injective": six.split_first_injective,
                    "split_second_surjective": six.split_second_surjective,
                },
                "all_exact": seq_ok && six_ok,
            });
            emit(cli.format, &doc, || {
                format!(
                    "exterior sequence exact: {} | six-term exact: {} (dims {:?})",
                    seq_ok, six_ok, six.dims
                )
            });
            Ok(if seq_ok && six_ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Corpus {
            count,
            dims,
            alpha,
            seed,
            field,
        } => {
            let (dim_min, dim_max) = parse_dims(&dims)?;
            let limit = max_dim();
            if dim_max > limit {
                return Err(Error::Precondition(format!(
                    "corpus dimension {dim_max} exceeds HOMLIE_MAX_DIM = {limit}"
                )));
            }
            let spec = CorpusSpec {
                count,
                dim_min,
                dim_max,
                field: parse_field(&field)?,
                alpha_mode: AlphaMode::parse(&alpha)?,
                seed,
            };
            let summary = corpus::evaluate(&spec)?;
            let doc = summary.to_json();
            emit(cli.format, &doc, || {
                let mut lines = vec![format!(
                    "{} instances, {} pairs, {} extensions",
                    summary.instances, summary.pairs, summary.extensions
                )];
                for (name, (pass, fail)) in &summary.totals {
                    lines.push(format!("  {name}: {pass} pass, {fail} fail"));
                }
                lines.push(if summary.all_passed() {
                    "all checks passed".into()
                } else {
                    format!("{} FAILURES (dumps in JSON output)", summary.failures.len())
                });
                lines.join("\n")
            });
            Ok(if summary.all_passed() { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
    }
}

/// A coordinate splitting: the complement of the ideal's pivot columns must
/// span a subalgebra, so that its inclusion is a section of the projection.
fn verify_coordinate_splitting(l: &HomLieAlgebra, m: &Subspace) -> Result<(), Error> {
    let field = l.field();
    let free: Vec<usize> = (0..l.dim()).filter(|c| !m.pivots().contains(c)).collect();
    let mut rows = Vec::new();
    for &c in &free {
        let mut e = vec![field.zero(); l.dim()];
        e[c] = field.one();
        rows.push(e);
    }
    let complement = Subspace::from_vectors(&rows, l.dim(), field)?;
    let closed = complement.contains(&l.commutator_sub(&complement, &complement))
        && complement.contains(&complement.image_under(l.alpha()));
    if !closed {
        return Err(Error::Precondition(
            "the coordinate complement of the ideal is not a subalgebra; the extension is not split along it".into(),
        ));
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Parse(_) | Error::Precondition(_) | Error::NotIdeal(_) | Error::Characteristic(_) => {
                    ExitCode::from(2)
                }
                _ => ExitCode::from(1),
            }
        }
    }
}
