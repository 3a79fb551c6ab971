//! `kl`: compute Kazhdan-Lusztig polynomials of matroids, render the
//! uniform/braid tables, multiply in the deformed Möbius algebra, and run
//! the verification suites.
//!
//! Exit codes: 0 ok, 1 verification failure, 2 usage or parse error,
//! 3 computation error, 4 cross-path mismatch.

mod output;
mod table;
mod verify;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use klmat::algebra::Algebra;
use klmat::families::{braid_kl, uniform_kl};
use klmat::kl::{kl_poly, ConjectureReport};
use klmat::matroid::{braid_flat_from_blocks, Family, Flat, FlatLattice, MatroidSpec};
use klmat::IntPoly;

use output::{flat_name, laurent_json, poly_strings, OutputRecord};

#[derive(Parser)]
#[command(name = "kl", version, about = "Kazhdan-Lusztig polynomials of matroids")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PathChoice {
    /// Build the lattice and run the defining recursion.
    Generic,
    /// Family recursion (uniform, boolean, braid specs only).
    Fast,
    /// Run both and fail on any disagreement.
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Csv,
}

#[derive(Subcommand)]
enum Cmd {
    /// Compute the Kazhdan-Lusztig and characteristic polynomials of a matroid.
    Compute {
        /// Matroid spec: uniform:m,d | boolean:n | braid:n | graph:@FILE |
        /// matrix:@FILE | flats:@FILE
        spec: String,
        /// Code path (default: fast for family specs, generic otherwise).
        #[arg(long, value_enum)]
        path: Option<PathChoice>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Include the non-negativity / log-concavity report.
        #[arg(long)]
        report: bool,
    },
    /// Render a table of Kazhdan-Lusztig polynomials for a family.
    Table {
        /// `uniform` or `braid`.
        family: String,
        /// Uniform corank parameter m.
        #[arg(long)]
        m: Option<usize>,
        /// First uniform column (default matches the published layout).
        #[arg(long)]
        dmin: Option<usize>,
        #[arg(long)]
        dmax: Option<usize>,
        /// First braid column.
        #[arg(long, default_value_t = 1)]
        nmin: usize,
        #[arg(long)]
        nmax: Option<usize>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Multiply Kazhdan-Lusztig basis elements or scan structure constants.
    Algebra {
        spec: String,
        /// Two flats: element lists like "0,2" (empty string for the bottom
        /// flat), or partitions like "12|34" for braid matroids.
        #[arg(long, num_args = 2, value_names = ["F", "G"])]
        product: Option<Vec<String>>,
        /// Scan all structure constants for negative coefficients.
        #[arg(long, conflicts_with = "product")]
        scan: bool,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Run a verification suite; exits 1 on any failing check.
    Verify {
        /// identities | gf | coefficients | tables | algebra
        suite: String,
        /// Truncation order for the generating-function suite.
        #[arg(long, default_value_t = 6)]
        order: usize,
    },
}

/// Errors carrying their process exit code.
pub enum CliError {
    Usage(String),
    Compute(String),
    Mismatch(String),
    VerifyFailed(usize),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::VerifyFailed(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Compute(_) => 3,
            CliError::Mismatch(_) => 4,
        }
    }
}

impl From<klmat::Error> for CliError {
    fn from(e: klmat::Error) -> Self {
        match e {
            klmat::Error::SpecParse(_) | klmat::Error::Io(_) => CliError::Usage(e.to_string()),
            other => CliError::Compute(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            match &e {
                CliError::Usage(msg) | CliError::Compute(msg) | CliError::Mismatch(msg) => {
                    eprintln!("error: {msg}");
                }
                CliError::VerifyFailed(n) => {
                    eprintln!("verification failed: {n} check(s) did not pass");
                }
            }
            ExitCode::from(e.code())
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.cmd {
        Cmd::Compute {
            spec,
            path,
            format,
            report,
        } => cmd_compute(&spec, path, format, report),
        Cmd::Table {
            family,
            m,
            dmin,
            dmax,
            nmin,
            nmax,
            format,
        } => table::cmd_table(&family, m, dmin, dmax, nmin, nmax, format),
        Cmd::Algebra {
            spec,
            product,
            scan,
            format,
        } => cmd_algebra(&spec, product, scan, format),
        Cmd::Verify { suite, order } => verify::cmd_verify(&suite, order),
    }
}

/// Flat cap for lattice builds, overridable through `KL_FLAT_CAP`.
pub fn flat_cap() -> Result<usize, CliError> {
    match std::env::var("KL_FLAT_CAP") {
        Ok(v) => v
            .parse()
            .map_err(|_| CliError::Usage(format!("KL_FLAT_CAP must be an integer, got `{v}`"))),
        Err(_) => Ok(klmat::matroid::DEFAULT_FLAT_CAP),
    }
}

pub fn build_lattice(spec: &MatroidSpec) -> Result<FlatLattice, CliError> {
    Ok(spec.build_with_cap(flat_cap()?)?)
}

fn family_of(spec: &MatroidSpec) -> Option<Family> {
    match *spec {
        MatroidSpec::Uniform { m, d } => Some(Family::Uniform { m, d }),
        MatroidSpec::Boolean { n } => Some(Family::Boolean { n }),
        MatroidSpec::Braid { n } => Some(Family::Braid { n }),
        _ => None,
    }
}

/// Parameter caps for the family recursions. The braid recursion walks all
/// integer partitions of `n` and the uniform one is cubic in `d`, so
/// unbounded requests would hang rather than fail cleanly.
pub const BRAID_N_CAP: usize = 50;
pub const UNIFORM_D_CAP: usize = 256;

pub fn check_family_caps(family: Family) -> Result<(), CliError> {
    match family {
        Family::Braid { n } if n > BRAID_N_CAP => Err(CliError::Usage(format!(
            "braid parameter {n} exceeds the supported cap of {BRAID_N_CAP}"
        ))),
        Family::Uniform { d, .. } if d > UNIFORM_D_CAP => Err(CliError::Usage(format!(
            "uniform rank {d} exceeds the supported cap of {UNIFORM_D_CAP}"
        ))),
        _ => Ok(()),
    }
}

/// Kazhdan-Lusztig and characteristic polynomials along the family path,
/// with no lattice enumeration.
fn fast_polys(family: Family) -> (usize, IntPoly, IntPoly) {
    use klmat::families::counting::binomial;
    use num_bigint::BigInt;
    use num_traits::Zero;
    match family {
        Family::Boolean { n } => (n, IntPoly::one(), IntPoly::from(vec![-1, 1]).pow(n)),
        Family::Uniform { d: 0, .. } => (0, IntPoly::one(), IntPoly::one()),
        Family::Uniform { m, d } => {
            // chi = sum_{i<d} (-1)^i C(m+d, i) (t^(d-i) - 1)
            let mut coeffs = vec![BigInt::zero(); d + 1];
            for i in 0..d {
                let sign = if i % 2 == 0 { 1 } else { -1 };
                let c = binomial((m + d) as u64, i as i64) * sign;
                coeffs[d - i] += &c;
                coeffs[0] -= &c;
            }
            (d, uniform_kl(m, d), IntPoly::from_coeffs(coeffs))
        }
        Family::Braid { n } => {
            // the empty and one-vertex graphs both give the rank-0 matroid
            let kl = if n == 0 { IntPoly::one() } else { braid_kl(n) };
            let mut chi = IntPoly::one();
            for j in 1..n {
                chi = &chi * &IntPoly::from(vec![-(j as i64), 1]);
            }
            (n.saturating_sub(1), kl, chi)
        }
    }
}

fn cmd_compute(
    spec_str: &str,
    path: Option<PathChoice>,
    format: Format,
    report: bool,
) -> Result<(), CliError> {
    reject_csv(format)?;
    let spec = MatroidSpec::parse(spec_str)?;
    let family = family_of(&spec);
    let path = path.unwrap_or(if family.is_some() {
        PathChoice::Fast
    } else {
        PathChoice::Generic
    });

    let fast = match (path, family) {
        (PathChoice::Generic, _) => None,
        (_, Some(f)) => {
            check_family_caps(f)?;
            Some(fast_polys(f))
        }
        (PathChoice::Fast | PathChoice::Both, None) => {
            return Err(CliError::Compute(format!(
                "no fast path for `{spec_str}`; use --path generic"
            )))
        }
    };
    let generic = match path {
        PathChoice::Fast => None,
        _ => {
            let lat = build_lattice(&spec)?;
            let kl = kl_poly(&lat)?;
            Some((lat.rank(), kl.poly, lat.char_poly()))
        }
    };
    if let (Some(f), Some(g)) = (&fast, &generic) {
        if f != g {
            return Err(CliError::Mismatch(format!(
                "fast and generic paths disagree for `{spec_str}`: \
                 fast P = {}, generic P = {}; fast chi = {}, generic chi = {}",
                f.1, g.1, f.2, g.2
            )));
        }
    }
    let (rank, kl, chi) = fast.or(generic).unwrap();

    let record = OutputRecord {
        matroid: spec_str.to_string(),
        rank,
        kl: poly_strings(&kl),
        char: poly_strings(&chi),
        report: report.then(|| output::report_json(&ConjectureReport::for_poly(&kl))),
        algebra: None,
    };
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&record).unwrap()),
        Format::Text | Format::Csv => {
            println!("matroid: {spec_str}");
            println!("rank: {rank}");
            println!("P(t)   = {kl}");
            println!("chi(t) = {chi}");
            if let Some(rep) = &record.report {
                println!(
                    "report: nonnegative={} log_concave={} no_internal_zeros={}",
                    rep.nonnegative, rep.log_concave, rep.no_internal_zeros
                );
            }
        }
    }
    Ok(())
}

/// Parses a flat argument: for braid matroids a partition of the vertices
/// (1-based, blocks separated by `|`), otherwise a comma-separated list of
/// 0-based elements. The empty string is the bottom flat.
pub fn parse_flat(spec: &MatroidSpec, lat: &FlatLattice, text: &str) -> Result<Flat, CliError> {
    let flat = if let MatroidSpec::Braid { n } = *spec {
        if text.is_empty() {
            Flat::empty()
        } else {
            parse_braid_partition(n, text)?
        }
    } else {
        let mut elems = Vec::new();
        for part in text.split(',').filter(|p| !p.trim().is_empty()) {
            let e: usize = part
                .trim()
                .parse()
                .map_err(|_| CliError::Usage(format!("bad element `{part}` in flat `{text}`")))?;
            if e >= lat.ground_size() {
                return Err(CliError::Usage(format!(
                    "element {e} outside the ground set of size {}",
                    lat.ground_size()
                )));
            }
            elems.push(e);
        }
        Flat::from_elems(elems)
    };
    if !lat.contains_flat(&flat) {
        return Err(CliError::Usage(format!(
            "`{text}` is not a flat of this matroid (not closed)"
        )));
    }
    Ok(flat)
}

fn parse_braid_partition(n: usize, text: &str) -> Result<Flat, CliError> {
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut seen = vec![false; n];
    for block_text in text.split('|') {
        let block_text = block_text.trim();
        if block_text.is_empty() {
            continue;
        }
        let vertices: Vec<usize> = if block_text.contains(',') {
            block_text
                .split(',')
                .map(|v| v.trim().parse::<usize>())
                .collect::<Result<_, _>>()
                .map_err(|_| CliError::Usage(format!("bad block `{block_text}`")))?
        } else {
            block_text
                .chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as usize)
                        .ok_or_else(|| CliError::Usage(format!("bad block `{block_text}`")))
                })
                .collect::<Result<_, _>>()?
        };
        let mut block = Vec::new();
        for v in vertices {
            if v == 0 || v > n {
                return Err(CliError::Usage(format!(
                    "vertex {v} outside 1..={n} in `{text}`"
                )));
            }
            if seen[v - 1] {
                return Err(CliError::Usage(format!("vertex {v} repeated in `{text}`")));
            }
            seen[v - 1] = true;
            block.push(v - 1);
        }
        blocks.push(block);
    }
    // unmentioned vertices are singletons
    for v in 0..n {
        if !seen[v] {
            blocks.push(vec![v]);
        }
    }
    Ok(braid_flat_from_blocks(n, &blocks))
}

fn reject_csv(format: Format) -> Result<(), CliError> {
    if format == Format::Csv {
        return Err(CliError::Usage(
            "csv output is only available for `kl table`".into(),
        ));
    }
    Ok(())
}

fn cmd_algebra(
    spec_str: &str,
    product: Option<Vec<String>>,
    scan: bool,
    format: Format,
) -> Result<(), CliError> {
    reject_csv(format)?;
    let spec = MatroidSpec::parse(spec_str)?;
    let lat = build_lattice(&spec)?;
    let alg = Algebra::new(&lat);

    let payload = if scan {
        let violations = alg.positivity_scan();
        output::AlgebraJson {
            op: "scan".into(),
            f: None,
            g: None,
            expansion: None,
            violations: Some(
                violations
                    .iter()
                    .map(|v| output::ViolationJson {
                        f: flat_name(&spec, &v.f),
                        g: flat_name(&spec, &v.g),
                        h: flat_name(&spec, &v.h),
                        coeff: laurent_json(&v.coefficient),
                    })
                    .collect(),
            ),
        }
    } else if let Some(args) = product {
        let [f_text, g_text] = args.as_slice() else {
            return Err(CliError::Usage("--product needs exactly two flats".into()));
        };
        let f = parse_flat(&spec, &lat, f_text)?;
        let g = parse_flat(&spec, &lat, g_text)?;
        let expansion = alg.kl_product(&f, &g).map_err(klmat_to_cli)?;
        output::AlgebraJson {
            op: "product".into(),
            f: Some(flat_name(&spec, &f)),
            g: Some(flat_name(&spec, &g)),
            expansion: Some(
                expansion
                    .iter()
                    .map(|(&id, c)| output::TermJson {
                        flat: flat_name(&spec, &alg.flat_of(id)),
                        coeff: laurent_json(c),
                    })
                    .collect(),
            ),
            violations: None,
        }
    } else {
        return Err(CliError::Usage(
            "algebra needs either --product F G or --scan".into(),
        ));
    };

    match format {
        Format::Json => {
            let record = OutputRecord {
                matroid: spec_str.to_string(),
                rank: lat.rank(),
                kl: poly_strings(&kl_poly(&lat).map_err(klmat_to_cli)?.poly),
                char: poly_strings(&lat.char_poly()),
                report: None,
                algebra: Some(payload),
            };
            println!("{}", serde_json::to_string_pretty(&record).unwrap());
        }
        Format::Text | Format::Csv => print_algebra_text(&payload),
    }
    Ok(())
}

fn print_algebra_text(payload: &output::AlgebraJson) {
    match payload.op.as_str() {
        "product" => {
            println!(
                "x[{}] * x[{}] =",
                payload.f.as_deref().unwrap_or(""),
                payload.g.as_deref().unwrap_or("")
            );
            for term in payload.expansion.as_deref().unwrap_or_default() {
                println!("  ({})  x[{}]", term.coeff.pretty, term.flat);
            }
        }
        _ => {
            let violations = payload.violations.as_deref().unwrap_or_default();
            if violations.is_empty() {
                println!("positivity scan: no violations");
            } else {
                println!("positivity scan: {} violation(s)", violations.len());
                for v in violations {
                    println!("  C[{}][{}]^[{}] = {}", v.f, v.g, v.h, v.coeff.pretty);
                }
            }
        }
    }
}

fn klmat_to_cli(e: klmat::Error) -> CliError {
    e.into()
}
