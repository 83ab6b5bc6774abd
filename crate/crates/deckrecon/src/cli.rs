//! Command-line surface tying the modules together.
//!
//! Every subcommand writes one machine-readable document to stdout (see
//! [`crate::files`] for the format) and diagnostics to stderr. Exit codes:
//! 0 success, 1 usage or input error, 2 invariant violation (a
//! theorem-contradiction, i.e. a bug signal), 3 instance too large,
//! 4 verification failure from `classify`.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::bounds;
use crate::deck::Multiset;
use crate::error::{Error, Result};
use crate::files::{parse_input, DocWriter, InputFile, SetFile};
use crate::spectral::{self, Distinguishability};
use crate::structure::{self, StandardParams};
use crate::witness;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INVARIANT_VIOLATION: i32 = 2;
pub const EXIT_INSTANCE_TOO_LARGE: i32 = 3;
pub const EXIT_VERIFICATION_FAILURE: i32 = 4;

/// Default for `--workers` when the flag is absent.
pub const WORKERS_ENV: &str = "DECKRECON_WORKERS";

#[derive(Parser)]
#[command(
    name = "deckrecon",
    version,
    about = "Deck reconstruction toolkit for the hypercube Z_2^n"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate the closed-form reconstruction number of Z_2^n.
    Formula {
        /// Hypercube dimension (n >= 1).
        #[arg(long)]
        n: u32,
        /// Also print the feasibility predicate 2^(n+1-k) >= k for k = 1..n+2.
        #[arg(long)]
        table: bool,
    },
    /// Build and verify the deterministic witness pair for (n, k).
    Witness {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
        /// Also write the two sets as documents to <OUT>.a and <OUT>.b.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Distinguishing number of two multisets or sets.
    Distnum {
        /// Path to the first input document (set or multiset).
        #[arg(long)]
        a: PathBuf,
        /// Path to the second input document.
        #[arg(long)]
        b: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::Fourier)]
        method: Method,
        /// Stop the level scan early; the result may then be `unknown`.
        #[arg(long)]
        max_k: Option<u32>,
    },
    /// Canonical set k-deck fingerprint.
    Deck {
        /// Path to a set document.
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        k: u32,
    },
    /// Walsh-Hadamard spectrum of a multiset (or of a set's indicator).
    Wht {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Exhaustive reconstruction number of Z_2^n over all translation classes.
    Exhaustive {
        #[arg(long)]
        n: u32,
        /// Worker threads; defaults to DECKRECON_WORKERS or all cores.
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Standard family pair: counts, spectra, and distinguishing number.
    Standard {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        a: u64,
        #[arg(long)]
        b: u64,
        /// Comma-separated positive weights a_1,..,a_(k-1).
        #[arg(long, value_delimiter = ',')]
        coeffs: Vec<u64>,
    },
    /// Classify a maximally indistinguishable pair against the standard family.
    Classify {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    /// Exact spectral zero-sum product oracle.
    Fourier,
    /// Brute-force deck enumeration (size-guarded).
    Deck,
}

/// Parses and dispatches; returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() {
                EXIT_USAGE
            } else {
                EXIT_OK
            };
            let _ = err.print();
            return code;
        }
    };
    match dispatch(cli.cmd) {
        Ok(doc) => {
            print!("{doc}");
            EXIT_OK
        }
        Err(err) => {
            eprintln!("error: {err}");
            exit_code(&err)
        }
    }
}

fn exit_code(err: &Error) -> i32 {
    match err {
        Error::InvariantViolation(_) => EXIT_INVARIANT_VIOLATION,
        Error::InstanceTooLarge(_) => EXIT_INSTANCE_TOO_LARGE,
        Error::VerificationFailure(_) => EXIT_VERIFICATION_FAILURE,
        _ => EXIT_USAGE,
    }
}

fn dispatch(cmd: Cmd) -> Result<String> {
    match cmd {
        Cmd::Formula { n, table } => cmd_formula(n, table),
        Cmd::Witness { n, k, out } => cmd_witness(n, k, out.as_deref()),
        Cmd::Distnum {
            a,
            b,
            method,
            max_k,
        } => cmd_distnum(&a, &b, method, max_k),
        Cmd::Deck { input, k } => cmd_deck(&input, k),
        Cmd::Wht { input } => cmd_wht(&input),
        Cmd::Exhaustive { n, workers } => cmd_exhaustive(n, workers),
        Cmd::Standard { k, a, b, coeffs } => cmd_standard(k, a, b, coeffs),
        Cmd::Classify { a, b } => cmd_classify(&a, &b),
    }
}

fn require_positive(n: u32, what: &str) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidArgument(format!("{what} must be at least 1")));
    }
    Ok(())
}

fn read_input(path: &Path) -> Result<InputFile> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", path.display())))?;
    parse_input(&text)
}

fn read_multiset(path: &Path) -> Result<Multiset> {
    read_input(path)?.to_multiset()
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents)
        .map_err(|e| Error::InvalidArgument(format!("cannot write {}: {e}", path.display())))
}

fn cmd_formula(n: u32, table: bool) -> Result<String> {
    require_positive(n, "n")?;
    let t = bounds::tee(n);
    let r = bounds::reconstruction_number_formula(n);
    let mut doc = DocWriter::new("formula");
    doc.push_value("n", n);
    doc.push_value("t", t);
    doc.push_value("r", r);
    if table {
        for k in 1..=n + 2 {
            doc.push_list(
                "predicate",
                [k.to_string(), bounds::predicate(n, k).to_string()],
            );
        }
    }
    Ok(doc.finish())
}

fn cmd_witness(n: u32, k: u32, out: Option<&Path>) -> Result<String> {
    let construction = witness::build_witness_detailed(n, k)?;
    let report = witness::verify_witness(
        &construction.a,
        &construction.b,
        k,
        Some(&construction.blocks),
    )?;
    let mut doc = DocWriter::new("witness");
    doc.push_value("n", n);
    doc.push_value("k", k);
    doc.push_list("a_elements", construction.a.members().iter());
    doc.push_list("b_elements", construction.b.members().iter());
    doc.push_value("non_translate", report.non_translate);
    match report.indist_level {
        Some(level) => doc.push_value("indist_level", level),
        None => doc.push_value("indist_level", "infinity"),
    }
    doc.push_value(
        "block_structure_ok",
        report
            .block_structure_ok
            .expect("generator supplies blocks"),
    );
    doc.push_value("sound", report.is_sound());
    if let Some(base) = out {
        let a_path = with_suffix(base, ".a");
        let b_path = with_suffix(base, ".b");
        write_file(&a_path, &SetFile::from_subset(&construction.a).emit())?;
        write_file(&b_path, &SetFile::from_subset(&construction.b).emit())?;
        doc.push_value("out_a", a_path.display());
        doc.push_value("out_b", b_path.display());
    }
    Ok(doc.finish())
}

fn with_suffix(base: &Path, suffix: &str) -> PathBuf {
    let mut os = base.as_os_str().to_os_string();
    os.push(suffix);
    PathBuf::from(os)
}

fn cmd_distnum(a: &Path, b: &Path, method: Method, max_k: Option<u32>) -> Result<String> {
    let fa = read_multiset(a)?;
    let fb = read_multiset(b)?;
    crate::gf2::check_same_dim(fa.dim(), fb.dim())?;
    let dim = fa.dim();
    let full_cap = dim + 1;
    let cap = max_k.unwrap_or(full_cap);

    let mut doc = DocWriter::new("distnum");
    doc.push_value(
        "method",
        match method {
            Method::Fourier => "fourier",
            Method::Deck => "deck",
        },
    );
    doc.push_value("n", dim);

    enum Outcome {
        Level(u32),
        Translates(u32),
        Unknown,
    }

    let outcome = match method {
        Method::Fourier => {
            if cap >= full_cap {
                match spectral::distinguishing_number(&fa, &fb)? {
                    Distinguishability::Distinguishable { level, witness } => {
                        push_witness(&mut doc, level, &witness);
                        return Ok(doc.finish());
                    }
                    Distinguishability::Translates { shift } => Outcome::Translates(shift.value()),
                }
            } else {
                let sa = spectral::wht(&fa);
                let sb = spectral::wht(&fb);
                match spectral::mismatch_level(dim, sa.values(), sb.values(), cap) {
                    Some(_) => match spectral::distinguishing_number(&fa, &fb)? {
                        Distinguishability::Distinguishable { level, witness } => {
                            push_witness(&mut doc, level, &witness);
                            return Ok(doc.finish());
                        }
                        Distinguishability::Translates { .. } => {
                            return Err(Error::InvariantViolation(
                                "capped scan found a mismatch the full scan missed".into(),
                            ))
                        }
                    },
                    None => Outcome::Unknown,
                }
            }
        }
        Method::Deck => {
            let mut found = None;
            for level in 1..=cap.min(full_cap) {
                if dim * level.saturating_sub(1) > crate::deck::DECK_COMPARE_LIMIT {
                    return Err(Error::InstanceTooLarge(format!(
                        "deck method refuses level {level} on dimension {dim} \
                         (needs dim*(k-1) <= {})",
                        crate::deck::DECK_COMPARE_LIMIT
                    )));
                }
                if !fa.deck_level_equal(&fb, level) {
                    found = Some(level);
                    break;
                }
            }
            match found {
                Some(level) => Outcome::Level(level),
                None if cap >= full_cap => match fa.find_translation(&fb)? {
                    Some(shift) => Outcome::Translates(shift.value()),
                    None => {
                        return Err(Error::InvariantViolation(format!(
                            "decks agree through level {full_cap} but the pair is not a \
                             translate pair"
                        )))
                    }
                },
                None => Outcome::Unknown,
            }
        }
    };

    match outcome {
        Outcome::Level(level) => doc.push_value("result", level),
        Outcome::Translates(shift) => {
            doc.push_value("result", "infinity");
            doc.push_value("shift", shift);
        }
        Outcome::Unknown => {
            doc.push_value("result", "unknown");
            doc.push_value("indistinguishable_through", cap);
        }
    }
    Ok(doc.finish())
}

fn push_witness(doc: &mut DocWriter, level: u32, witness: &spectral::ZeroSumWitness) {
    doc.push_value("result", level);
    doc.push_list("witness", witness.elements().iter().map(|e| e.value()));
    doc.push_value("product_left", witness.product_left());
    doc.push_value("product_right", witness.product_right());
}

fn cmd_deck(input: &Path, k: u32) -> Result<String> {
    let set = match read_input(input)? {
        InputFile::Set(s) => s.to_subset()?,
        InputFile::Multiset(_) => {
            return Err(Error::InvalidArgument(
                "deck needs a set document, found kind multiset".into(),
            ))
        }
    };
    let fingerprint = set.deck(k)?;
    let mut doc = DocWriter::new("deck");
    doc.push_value("n", set.dim());
    doc.push_value("k", k);
    doc.push_value("size", set.len());
    doc.push_value("total", fingerprint.total_multiplicity());
    for (elements, multiplicity) in fingerprint.entries() {
        let mut line = vec![multiplicity.to_string(), elements.len().to_string()];
        line.extend(elements.iter().map(|e| e.to_string()));
        doc.push_list("entry", line);
    }
    Ok(doc.finish())
}

fn cmd_wht(input: &Path) -> Result<String> {
    let f = read_multiset(input)?;
    let spectrum = spectral::wht(&f);
    let mut doc = DocWriter::new("spectrum");
    doc.push_value("n", f.dim());
    doc.push_list("values", spectrum.values().iter());
    Ok(doc.finish())
}

fn cmd_exhaustive(n: u32, workers: Option<usize>) -> Result<String> {
    let workers = match workers {
        Some(w) => Some(w),
        None => match std::env::var(WORKERS_ENV) {
            Ok(raw) => Some(raw.parse().map_err(|_| {
                Error::InvalidArgument(format!("malformed {WORKERS_ENV} value '{raw}'"))
            })?),
            Err(_) => None,
        },
    };
    let result = match workers {
        Some(w) if w > 0 => rayon::ThreadPoolBuilder::new()
            .num_threads(w)
            .build()
            .map_err(|e| Error::InvalidArgument(format!("cannot build worker pool: {e}")))?
            .install(|| bounds::exhaustive_reconstruction_number(n)),
        _ => bounds::exhaustive_reconstruction_number(n),
    }?;
    let formula_r = bounds::reconstruction_number_formula(n);
    if result.r != formula_r {
        return Err(Error::InvariantViolation(format!(
            "exhaustive scan found r = {} but the formula gives {formula_r} for n = {n}",
            result.r
        )));
    }
    let mut doc = DocWriter::new("exhaustive");
    doc.push_value("n", n);
    doc.push_value("r", result.r);
    doc.push_value("formula_r", formula_r);
    doc.push_value("class_count", result.class_count);
    doc.push_value("extremal_count", result.extremal_pairs.len());
    for (a, b, level) in &result.extremal_pairs {
        let mut line = vec![level.to_string(), a.len().to_string()];
        line.extend(a.members().iter().map(|m| m.to_string()));
        line.push(b.len().to_string());
        line.extend(b.members().iter().map(|m| m.to_string()));
        doc.push_list("extremal_pair", line);
    }
    Ok(doc.finish())
}

fn cmd_standard(k: u32, a: u64, b: u64, coeffs: Vec<u64>) -> Result<String> {
    let params = StandardParams::new(k, a, b, coeffs)?;
    let (f1, f2) = structure::standard_pair(&params);
    let s1 = structure::standard_spectrum(&params);
    let s2 = structure::standard_spectrum(&params.swapped());
    let mut doc = DocWriter::new("standard");
    doc.push_value("k", k);
    doc.push_value("a", params.a());
    doc.push_value("b", params.b());
    doc.push_list("coeffs", params.coeffs().iter());
    doc.push_list("f1_counts", f1.counts().iter());
    doc.push_list("f2_counts", f2.counts().iter());
    doc.push_list("spectrum1", s1.values().iter());
    doc.push_list("spectrum2", s2.values().iter());
    match spectral::distinguishing_number(&f1, &f2)? {
        Distinguishability::Distinguishable { level, witness } => {
            doc.push_value("distnum", level);
            doc.push_list("witness", witness.elements().iter().map(|e| e.value()));
        }
        Distinguishability::Translates { .. } => {
            return Err(Error::InvariantViolation(
                "standard pair members are never translates".into(),
            ))
        }
    }
    Ok(doc.finish())
}

fn cmd_classify(a: &Path, b: &Path) -> Result<String> {
    let fa = read_multiset(a)?;
    let fb = read_multiset(b)?;
    let classification = structure::classify_pair(&fa, &fb)?;
    let params = classification.params();
    let mut doc = DocWriter::new("classification");
    doc.push_value("n", fa.dim());
    doc.push_value("k", params.k());
    doc.push_list("theta_cols", classification.theta().cols().iter());
    doc.push_value("z1", classification.z1().value());
    doc.push_value("z2", classification.z2().value());
    doc.push_value("a", params.a());
    doc.push_value("b", params.b());
    doc.push_list("coeffs", params.coeffs().iter());
    Ok(doc.finish())
}
