//! The `series-lab` command line.
//!
//! Every command writes one canonical JSON document to stdout or `--out`.
//! Exit status: 0 on success (including negative verdicts), 1 on domain
//! errors, 2 when a precision, index or enumeration cap is hit. Errors are
//! reported as a JSON record on stdout.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::certify::{
    degree_profile, exception_scan, lower_degree_scan, simplicity_check, um_witness, verify,
    ScanParams, DEFAULT_SCAN_BUDGET, DEFAULT_SCAN_PRECISION,
};
use crate::error::{Error, Result};
use crate::exact::{factor_over_z, BigRational, IntPolynomial};
use crate::field::{element_degree, minimal_polynomial, NFElement, NumberField};
use crate::galois::{
    count_sm, discriminant, galois_group, kronecker_small_root, DEFAULT_CENSUS_BUDGET,
};
use crate::heights::{
    audit_height_axioms, height, height_from_minpoly, liouville_check, poly_heights,
};
use crate::numerics::roots::isolate_squarefree;
use crate::numerics::Dyadic;
use crate::radical::{coliou_expansion, radical_degree};
use crate::report;
use crate::series::{
    adversarial_series, tail_bound_at, validate_structure, value_enclosure, Series, SeriesSpec,
};

#[derive(Parser, Debug)]
#[command(
    name = "series-lab",
    version,
    about = "Certified computations with algebraic numbers and lacunary series"
)]
pub struct Cli {
    /// Write the JSON result here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Target width for height enclosures.
    #[arg(long, global = true, default_value_t = 1e-12)]
    pub tol: f64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Height of a root of an integer polynomial.
    Height {
        poly: String,
        #[arg(long, default_value_t = 0)]
        root_index: usize,
    },
    /// Minimal polynomial and height of an element given by power-basis coordinates.
    Minpoly {
        field: String,
        /// Comma-separated rationals, e.g. `1/2,0,3`.
        coords: String,
        #[arg(long, default_value_t = 0)]
        root_index: usize,
    },
    /// Liouville inequality for an element.
    Liouville {
        #[command(flatten)]
        alpha: AlphaArgs,
    },
    #[command(subcommand)]
    Series(SeriesCmd),
    #[command(subcommand)]
    Certify(CertifyCmd),
    /// Degree and subfields of `Q(a^{1/m})`.
    Radical { a: String, m: u64 },
    /// Power-basis expansion of `Σ_{k<m} (a^{1/m})^{k!}`.
    Coliou { a: String, m: u64 },
    #[command(subcommand)]
    Galois(GaloisCmd),
    #[command(subcommand)]
    Audit(AuditCmd),
}

/// `α` as `--alpha q` (rational) or `--field P [--root-index k] --alpha c0,c1,…`.
#[derive(Args, Debug, Clone)]
pub struct AlphaArgs {
    #[arg(long)]
    pub field: Option<String>,
    #[arg(long, default_value_t = 0)]
    pub root_index: usize,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: String,
}

#[derive(Subcommand, Debug)]
pub enum SeriesCmd {
    /// Check block structure and report gap and restart ratios.
    Validate {
        spec: PathBuf,
        #[arg(long, default_value_t = 8)]
        n: u64,
    },
    /// Ball around `f(α)` of radius at most `2^-bits`.
    Eval {
        spec: PathBuf,
        #[command(flatten)]
        alpha: AlphaArgs,
        #[arg(long, default_value_t = 64)]
        bits: u64,
    },
    /// Certified tail bound `|f(α) − F_n(α)|`.
    Tail {
        spec: PathBuf,
        #[command(flatten)]
        alpha: AlphaArgs,
        #[arg(long)]
        n: u64,
    },
    /// Spec for the first `n` blocks of the vanishing construction over `U`.
    Adversarial {
        /// Polynomials `U_1, U_2, …` (repeat the flag).
        #[arg(long = "u", required = true)]
        u: Vec<String>,
        #[arg(long)]
        n: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum CertifyCmd {
    /// Degrees and heights of `F_1(α), …, F_N(α)`.
    Profile {
        #[arg(long)]
        spec: PathBuf,
        #[command(flatten)]
        alpha: AlphaArgs,
        #[arg(long, default_value_t = 6)]
        n: u64,
    },
    /// Witness index for `|f(α) − F_n(α)| ≤ e^{−w h(F_n(α))}` at degree `m`.
    Um {
        #[arg(long)]
        spec: PathBuf,
        #[command(flatten)]
        alpha: AlphaArgs,
        #[arg(long)]
        w: String,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 20)]
        cap: u64,
    },
    /// Minimum of `log|f(α) − β| + η h(β)` over a coefficient box.
    Scan {
        #[arg(long)]
        spec: PathBuf,
        #[command(flatten)]
        alpha: AlphaArgs,
        #[arg(long)]
        deg: usize,
        #[arg(long)]
        coeff_bound: u64,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        eta: String,
        #[arg(long, default_value_t = DEFAULT_SCAN_BUDGET)]
        budget: u64,
        #[arg(long, default_value_t = DEFAULT_SCAN_PRECISION)]
        precision: u64,
    },
    /// Algebraic numbers of small degree and height at which every block vanishes.
    Exceptions {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        deg: usize,
        #[arg(long, default_value_t = 6)]
        prefix: u64,
    },
    /// Whether `Q(α)` has no proper subfield besides `Q`.
    Simple {
        poly: String,
        #[arg(long, default_value_t = 0)]
        root_index: usize,
    },
    /// Re-check a certificate from its own contents.
    Verify { cert: PathBuf },
}

#[derive(Subcommand, Debug)]
pub enum GaloisCmd {
    /// Galois group of a monic irreducible polynomial of degree 2 to 4.
    Group { poly: String },
    /// Census of `T^m + a_{m−1}T^{m−1} + … ± 1` with `|a_i| ≤ X`.
    Count {
        #[arg(long)]
        m: usize,
        #[arg(long = "X", alias = "x")]
        x: u64,
        #[arg(long, default_value_t = DEFAULT_CENSUS_BUDGET)]
        budget: u64,
        /// Also write the per-polynomial table as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Certified root inside the unit disk of a non-cyclotomic monic with `|P(0)| = 1`.
    SmallRoot { poly: String },
}

#[derive(Subcommand, Debug)]
pub enum AuditCmd {
    /// Check height identities and inequalities on a JSON corpus.
    Heights {
        #[arg(long)]
        corpus: PathBuf,
    },
}

/// One field's worth of audit samples.
#[derive(Deserialize, Debug)]
struct CorpusGroup {
    field: String,
    #[serde(default)]
    root_index: usize,
    #[serde(default)]
    pairs: Vec<[String; 2]>,
    #[serde(default)]
    polynomials: Vec<String>,
}

fn parse_poly(s: &str) -> Result<IntPolynomial> {
    s.parse()
}

fn parse_rational(s: &str) -> Result<BigRational> {
    s.trim().parse()
}

fn parse_coords(s: &str) -> Result<Vec<BigRational>> {
    s.split(',').map(parse_rational).collect()
}

fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Invalid(format!("cannot read {}: {e}", path.display())))
}

fn read_json(path: &Path) -> Result<Value> {
    serde_json::from_str(&read_text(path)?)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn load_series(path: &Path) -> Result<Series> {
    SeriesSpec::from_json(&read_text(path)?)?.compile()
}

pub fn parse_alpha(a: &AlphaArgs) -> Result<NFElement> {
    match &a.field {
        None => Ok(NumberField::rationals().from_rational(parse_rational(&a.alpha)?)),
        Some(f) => {
            NumberField::with_root(&parse_poly(f)?, a.root_index)?.element(parse_coords(&a.alpha)?)
        }
    }
}

/// Height of the `k`-th root (in `(re, im)` order) of a possibly reducible polynomial.
fn height_cmd(poly: &str, k: usize, tol: f64) -> Result<Value> {
    let p = parse_poly(poly)?;
    if p.degree() == 0 {
        return Err(Error::Invalid("polynomial has no roots".into()));
    }
    let f = factor_over_z(&p)?;
    let factors: Vec<IntPolynomial> = f.factors.iter().map(|(q, _)| q.clone()).collect();
    let squarefree = factors
        .iter()
        .fold(IntPolynomial::from_i64s(&[1]), |acc, q| &acc * q);
    let roots = isolate_squarefree(&squarefree, 64)?;
    let root = roots.get(k).ok_or_else(|| {
        Error::Invalid(format!(
            "root index {k} out of range ({} distinct roots)",
            roots.len()
        ))
    })?;
    let mut minpoly = None;
    for q in &factors {
        let hit = if q.degree() == 1 {
            root.contains_rational(&BigRational::new(-q.coeff(0), q.coeff(1)))
        } else {
            isolate_squarefree(q, 64)?.iter().any(|r| r.overlaps(root))
        };
        if hit {
            minpoly = Some(q.clone());
            break;
        }
    }
    let m = minpoly.ok_or_else(|| Error::CrossCheck("root not matched to a factor".into()))?;
    let h = height_from_minpoly(&m, tol)?;
    Ok(json!({
        "poly": p.to_string(),
        "root_index": k,
        "root": report::ball(root),
        "minimal_polynomial": m.to_string(),
        "degree": m.degree(),
        "h": h.to_json(),
        "poly_heights": poly_heights(&p, 64)?.to_json(),
    }))
}

fn element_json(beta: &NFElement, tol: f64) -> Result<Value> {
    let f = beta.field();
    Ok(json!({
        "field": f.defining_poly().to_string(),
        "root_index": f.root_index(),
        "coords": beta.coords().iter().map(report::rational).collect::<Vec<_>>(),
        "minimal_polynomial": minimal_polynomial(beta).to_string(),
        "degree": element_degree(beta),
        "h": height(beta, tol)?.to_json(),
    }))
}

fn audit_cmd(path: &Path, tol: f64) -> Result<Value> {
    let groups: Vec<CorpusGroup> = serde_json::from_str(&read_text(path)?)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    let mut records = Vec::new();
    for g in &groups {
        let k = NumberField::with_root(&parse_poly(&g.field)?, g.root_index)?;
        let pairs = g
            .pairs
            .iter()
            .map(|[a, b]| Ok((k.element(parse_coords(a)?)?, k.element(parse_coords(b)?)?)))
            .collect::<Result<Vec<_>>>()?;
        let polys = g
            .polynomials
            .iter()
            .map(|s| parse_poly(s))
            .collect::<Result<Vec<_>>>()?;
        for r in audit_height_axioms(&pairs, &polys, tol)? {
            records.push((g.field.clone(), r));
        }
    }
    let violations = records.iter().filter(|(_, r)| !r.pass).count();
    Ok(json!({
        "checks": records.len(),
        "violations": violations,
        "records": records.iter().map(|(f, r)| {
            let mut v = r.to_json();
            v["field"] = json!(f);
            v
        }).collect::<Vec<_>>(),
    }))
}

fn series_cmd(cmd: &SeriesCmd) -> Result<Value> {
    match cmd {
        SeriesCmd::Validate { spec, n } => {
            Ok(validate_structure(&load_series(spec)?, *n)?.to_json())
        }
        SeriesCmd::Eval { spec, alpha, bits } => {
            let s = load_series(spec)?;
            Ok(
                value_enclosure(&s, &parse_alpha(alpha)?, &Dyadic::pow2(-(*bits as i64)))?
                    .to_json(),
            )
        }
        SeriesCmd::Tail { spec, alpha, n } => {
            Ok(tail_bound_at(&load_series(spec)?, &parse_alpha(alpha)?, *n)?.to_json())
        }
        SeriesCmd::Adversarial { u, n } => {
            let u = u
                .iter()
                .map(|s| parse_poly(s))
                .collect::<Result<Vec<_>>>()?;
            let spec = adversarial_series(&u, *n)?;
            spec.compile()?;
            Ok(spec.to_json())
        }
    }
}

fn certify_cmd(cmd: &CertifyCmd) -> Result<Value> {
    match cmd {
        CertifyCmd::Profile { spec, alpha, n } => {
            Ok(degree_profile(&load_series(spec)?, &parse_alpha(alpha)?, *n)?.to_json())
        }
        CertifyCmd::Um {
            spec,
            alpha,
            w,
            m,
            cap,
        } => {
            let s = load_series(spec)?;
            Ok(um_witness(&s, &parse_alpha(alpha)?, &parse_rational(w)?, *m, *cap)?.to_json())
        }
        CertifyCmd::Scan {
            spec,
            alpha,
            deg,
            coeff_bound,
            eta,
            budget,
            precision,
        } => {
            let s = load_series(spec)?;
            let mut params = ScanParams::new(*deg, *coeff_bound, parse_rational(eta)?);
            params.budget = *budget;
            params.precision = *precision;
            Ok(lower_degree_scan(&s, &parse_alpha(alpha)?, &params)?
                .certificate
                .to_json())
        }
        CertifyCmd::Exceptions { spec, deg, prefix } => {
            Ok(exception_scan(&load_series(spec)?, *deg, *prefix)?
                .certificate
                .to_json())
        }
        CertifyCmd::Simple { poly, root_index } => {
            let k = NumberField::with_root(&parse_poly(poly)?, *root_index)?;
            Ok(
                json!({"poly": k.defining_poly().to_string(), "degree": k.degree(), "simple": simplicity_check(&k)?}),
            )
        }
        CertifyCmd::Verify { cert } => verify(&read_json(cert)?),
    }
}

fn galois_cmd(cmd: &GaloisCmd) -> Result<Value> {
    match cmd {
        GaloisCmd::Group { poly } => {
            let p = parse_poly(poly)?;
            let g = galois_group(&p)?;
            Ok(json!({
                "poly": p.to_string(),
                "group": g.to_string(),
                "symmetric": g.is_symmetric(),
                "discriminant": discriminant(&p).to_string(),
            }))
        }
        GaloisCmd::Count { m, x, budget, csv } => {
            let r = count_sm(*m, *x, *budget)?;
            if let Some(path) = csv {
                write_file(path, &r.to_csv())?;
            }
            Ok(r.to_json())
        }
        GaloisCmd::SmallRoot { poly } => {
            let p = parse_poly(poly)?;
            let b = kronecker_small_root(&p)?;
            Ok(
                json!({"poly": p.to_string(), "root": report::ball(&b), "abs": report::interval(&b.abs())}),
            )
        }
    }
}

fn execute(cli: &Cli) -> Result<Value> {
    if cli.tol.is_nan() || cli.tol <= 0.0 {
        return Err(Error::Invalid("--tol must be positive".into()));
    }
    match &cli.command {
        Command::Height { poly, root_index } => height_cmd(poly, *root_index, cli.tol),
        Command::Minpoly {
            field,
            coords,
            root_index,
        } => {
            let k = NumberField::with_root(&parse_poly(field)?, *root_index)?;
            element_json(&k.element(parse_coords(coords)?)?, cli.tol)
        }
        Command::Liouville { alpha } => Ok(liouville_check(&parse_alpha(alpha)?)?.to_json()),
        Command::Series(c) => series_cmd(c),
        Command::Certify(c) => certify_cmd(c),
        Command::Radical { a, m } => Ok(radical_degree(&parse_rational(a)?, *m)?.to_json()),
        Command::Coliou { a, m } => Ok(coliou_expansion(&parse_rational(a)?, *m)?.to_json()),
        Command::Galois(c) => galois_cmd(c),
        Command::Audit(AuditCmd::Heights { corpus }) => audit_cmd(corpus, cli.tol),
    }
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text)
        .map_err(|e| Error::Invalid(format!("cannot write {}: {e}", path.display())))
}

/// Machine-readable error record.
pub fn error_json(e: &Error) -> Value {
    let (error, detail) = match e {
        Error::Recheck(d) => ("recheck failed".to_string(), d.clone()),
        other => (other.to_string(), String::new()),
    };
    json!({
        "error": error,
        "detail": detail,
        "kind": if e.is_resource() { "resource" } else { "domain" },
    })
}

pub fn exit_code(e: &Error) -> i32 {
    if e.is_resource() {
        2
    } else {
        1
    }
}

/// Parses `args` (including the program name), runs the command and
/// returns the exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(v) => {
            let text = report::to_canonical(&v);
            match &cli.out {
                Some(p) => match write_file(p, &text) {
                    Ok(()) => 0,
                    Err(e) => {
                        print!("{}", report::to_canonical(&error_json(&e)));
                        1
                    }
                },
                None => {
                    print!("{text}");
                    0
                }
            }
        }
        Err(e) => {
            print!("{}", report::to_canonical(&error_json(&e)));
            exit_code(&e)
        }
    }
}
