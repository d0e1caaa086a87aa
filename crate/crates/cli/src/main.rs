//! `linset` — classification queries, orbit censuses and verification
//! suites for the linear sets L_{U(b)} of PG(1, q⁴).
//!
//! Exit status: 0 all checks pass, 1 a mathematical disagreement was found,
//! 2 usage or configuration error.

use std::collections::BTreeMap;
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use linset_core::classify::{
    census, classify_case, norm_invariant, pgammal_equivalent, pgl_equivalent,
    predicted_spectrum, Census, GroupFlavor,
};
use linset_core::linear_set::linear_set_of_b;
use linset_core::oracle::{OracleLimits, VerificationReport};
use linset_core::verify;
use linset_core::{Felt, FieldSpec};

#[derive(Parser)]
#[command(name = "linset", version, about = "Scattered linear sets of PG(1,q^4): classify, census, verify")]
struct Cli {
    /// Worker threads for the parallel sweeps (defaults to all cores;
    /// ignored in a build without the `parallel` feature).
    #[arg(long, global = true, env = "LINSET_JOBS")]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct FieldArgs {
    /// Prime characteristic p.
    #[arg(long, env = "LINSET_P")]
    p: u64,

    /// Extension degree e, so q = p^e and the ambient field is GF(q⁴).
    #[arg(long, env = "LINSET_E")]
    e: u32,

    /// Modulus coefficients over GF(p), ascending degree, comma-separated
    /// (length 4e+1). Defaults to the built-in primitive table.
    #[arg(long, env = "LINSET_MODULUS", value_delimiter = ',')]
    modulus: Option<Vec<u64>>,
}

impl FieldArgs {
    fn build(&self) -> anyhow::Result<FieldSpec> {
        match &self.modulus {
            Some(m) => FieldSpec::with_modulus(self.p, self.e, m),
            None => FieldSpec::new(self.p, self.e),
        }
        .with_context(|| format!("cannot build GF({}^{})", self.p, 4 * self.e))
    }
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Copy, Clone, ValueEnum)]
enum Group {
    Pgl,
    Pgammal,
}

impl From<Group> for GroupFlavor {
    fn from(g: Group) -> Self {
        match g {
            Group::Pgl => GroupFlavor::Pgl,
            Group::Pgammal => GroupFlavor::PGammaL,
        }
    }
}

#[derive(Copy, Clone, ValueEnum)]
enum Suite {
    Weights,
    Orbits,
    Glclass,
    Geometry,
    All,
}

#[derive(Subcommand)]
enum Command {
    /// Case label, predicted and brute-force spectra, size and
    /// scatteredness of one L_U(b); optionally equivalence against a
    /// second parameter c.
    Classify {
        #[command(flatten)]
        field: FieldArgs,

        /// Element code of b (base-p packed coefficient integer).
        #[arg(long, env = "LINSET_B")]
        b: u64,

        /// Optional second element code: also report whether L_U(b) and
        /// L_U(c) are PGL- and PGammaL-equivalent.
        #[arg(long, env = "LINSET_C")]
        c: Option<u64>,

        #[arg(long, value_enum, default_value_t = Format::Text, env = "LINSET_FORMAT")]
        format: Format,
    },

    /// Partition every b in GF(q⁴) into equivalence classes of the chosen
    /// group and report per-case class counts and representatives.
    Census {
        #[command(flatten)]
        field: FieldArgs,

        #[arg(long, value_enum, default_value_t = Group::Pgl, env = "LINSET_GROUP")]
        group: Group,

        #[arg(long, value_enum, default_value_t = Format::Text, env = "LINSET_FORMAT")]
        format: Format,
    },

    /// Run a verification suite; exits 1 if any comparison disagrees.
    Verify {
        /// Which suite to run.
        #[arg(value_enum)]
        suite: Suite,

        #[command(flatten)]
        field: FieldArgs,

        /// Raise or lower every oracle size guard to this q.
        #[arg(long, env = "LINSET_MAX_ORACLE_Q")]
        max_oracle_q: Option<u64>,

        #[arg(long, value_enum, default_value_t = Format::Text, env = "LINSET_FORMAT")]
        format: Format,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    configure_threads(cli.jobs);
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

#[cfg(feature = "parallel")]
fn configure_threads(jobs: Option<usize>) {
    if let Some(n) = jobs {
        // a later global-pool init failure only means a pool already exists
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

#[cfg(not(feature = "parallel"))]
fn configure_threads(_jobs: Option<usize>) {}

fn run(command: Command) -> anyhow::Result<bool> {
    match command {
        Command::Classify { field, b, c, format } => {
            let f = field.build()?;
            let b = f.element(b).context("--b")?;
            let c = c.map(|code| f.element(code).context("--c")).transpose()?;
            classify_cmd(&f, b, c, format);
            Ok(true)
        }
        Command::Census { field, group, format } => {
            let f = field.build()?;
            census_cmd(&f, census(&f, group.into()), format);
            Ok(true)
        }
        Command::Verify {
            suite,
            field,
            max_oracle_q,
            format,
        } => {
            let f = field.build()?;
            let limits = match max_oracle_q {
                Some(q) => OracleLimits::uniform(q),
                None => OracleLimits::default(),
            };
            let reports = run_suite(&f, suite, &limits)?;
            verify_cmd(&f, &reports, format);
            Ok(reports.iter().all(VerificationReport::passed))
        }
    }
}

fn spectrum_map(pairs: &[(u8, u64)]) -> BTreeMap<String, u64> {
    pairs.iter().map(|&(w, n)| (w.to_string(), n)).collect()
}

fn field_header(f: &FieldSpec) -> String {
    let modulus: Vec<String> = f.modulus().iter().map(u64::to_string).collect();
    format!(
        "field: p={} e={} q={} q4={} modulus={}",
        f.p(),
        f.e(),
        f.q(),
        f.q4(),
        modulus.join(",")
    )
}

const CSV_HEADER: &str = "q,b_code,case,size,w1,w2,norm_invariant_code,class_rep_code";

fn csv_row(f: &FieldSpec, b: Felt, rep: Felt) -> String {
    let spectrum = predicted_spectrum(f, classify_case(f, b));
    format!(
        "{},{},{},{},{},{},{},{}",
        f.q(),
        b.code(),
        classify_case(f, b),
        spectrum.size(),
        spectrum.count_of(1),
        spectrum.count_of(2),
        norm_invariant(f, b).code(),
        rep.code()
    )
}

fn classify_cmd(f: &FieldSpec, b: Felt, c: Option<Felt>, format: Format) {
    let case = classify_case(f, b);
    let set = linear_set_of_b(f, b);
    let predicted = predicted_spectrum(f, case);
    let actual = set.spectrum();
    let rep = census(f, GroupFlavor::Pgl).class_of(f, b).rep;
    match format {
        Format::Json => {
            let mut value = json!({
                "q": f.q(),
                "modulus": f.modulus(),
                "b": b.code(),
                "case": case.index(),
                "size": set.size(),
                "scattered": set.is_scattered(),
                "predicted_spectrum": spectrum_map(predicted.pairs()),
                "actual_spectrum": spectrum_map(actual.pairs()),
                "norm_invariant": norm_invariant(f, b).code(),
                "class_rep": rep.code(),
            });
            if let Some(c) = c {
                value["equivalence"] = json!({
                    "c": c.code(),
                    "pgl": pgl_equivalent(f, b, c),
                    "pgammal": pgammal_equivalent(f, b, c),
                });
            }
            println!("{}", serde_json::to_string_pretty(&value).expect("serializable"));
        }
        Format::Csv => {
            println!("{CSV_HEADER}");
            println!("{}", csv_row(f, b, rep));
        }
        Format::Text => {
            println!("{}", field_header(f));
            println!(
                "b={} case={} size={} scattered={}",
                b.code(),
                case,
                set.size(),
                set.is_scattered()
            );
            println!("predicted spectrum: {predicted}");
            println!("actual spectrum:    {actual}");
            println!(
                "norm invariant: {}  PGL class representative: {}",
                norm_invariant(f, b).code(),
                rep.code()
            );
            if let Some(c) = c {
                println!(
                    "equivalence with c={}: PGL={} PGammaL={}",
                    c.code(),
                    pgl_equivalent(f, b, c),
                    pgammal_equivalent(f, b, c)
                );
            }
        }
    }
}

fn census_cmd(f: &FieldSpec, census: Census, format: Format) {
    match format {
        Format::Json => {
            let mut value = serde_json::to_value(census.report()).expect("serializable");
            value["modulus"] = json!(f.modulus());
            println!("{}", serde_json::to_string_pretty(&value).expect("serializable"));
        }
        Format::Csv => {
            println!("{CSV_HEADER}");
            for class in &census.classes {
                println!("{}", csv_row(f, class.rep, class.rep));
            }
        }
        Format::Text => {
            println!("{}", field_header(f));
            println!("group={} classes={}", census.flavor, census.classes.len());
            println!("case rep norm_invariant members");
            for class in &census.classes {
                println!(
                    "{:<4} {:<4} {:<14} {}",
                    class.case.index(),
                    class.rep.code(),
                    class.norm_invariant.code(),
                    class.size
                );
            }
        }
    }
}

fn run_suite(
    f: &FieldSpec,
    suite: Suite,
    limits: &OracleLimits,
) -> anyhow::Result<Vec<VerificationReport>> {
    const RANDOM_PAIRS: u64 = 200;
    let reports = match suite {
        Suite::Weights => vec![verify::verify_weights(f)],
        Suite::Orbits => {
            if f.q() > limits.max_pointset_q {
                return Err(anyhow!(
                    "orbit suite: {} (raise --max-oracle-q to force it)",
                    linset_core::Error::FieldTooLarge {
                        q: f.q(),
                        limit: limits.max_pointset_q
                    }
                ));
            }
            verify::verify_orbits(f, limits, RANDOM_PAIRS)
                .map_err(|e| anyhow!("orbit suite: {e}"))?
        }
        Suite::Glclass => {
            verify::verify_glclass(f, limits).map_err(|e| anyhow!("glclass suite: {e}"))?
        }
        Suite::Geometry => verify::verify_geometry(f),
        Suite::All => verify::verify_all(f, limits, RANDOM_PAIRS)
            .map_err(|e| anyhow!("verification: {e}"))?,
    };
    Ok(reports)
}

fn verify_cmd(f: &FieldSpec, reports: &[VerificationReport], format: Format) {
    match format {
        Format::Json => {
            let value = json!({
                "q": f.q(),
                "modulus": f.modulus(),
                "reports": reports,
                "passed": reports.iter().all(VerificationReport::passed),
            });
            println!("{}", serde_json::to_string_pretty(&value).expect("serializable"));
        }
        Format::Csv => {
            println!("check,q,pairs_tested,agreements,failures");
            for r in reports {
                println!(
                    "{},{},{},{},{}",
                    r.check,
                    r.q,
                    r.pairs_tested,
                    r.agreements,
                    r.failures.len()
                );
            }
        }
        Format::Text => {
            println!("{}", field_header(f));
            for r in reports {
                let status = if r.passed() { "PASS" } else { "FAIL" };
                println!(
                    "{status} {} ({}/{} agree)",
                    r.check, r.agreements, r.pairs_tested
                );
                for failure in &r.failures {
                    println!("  disagreement: {failure}");
                }
            }
        }
    }
}
