//! `mcone`: inspect measure cones from the command line. Validate cone
//! documents, split charges, enumerate minimal decompositions, decide
//! orthogonality with witnesses, tabulate mixing distances, and audit maps.

mod document;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use mcone_core::cone::Decomposition;
use mcone_core::instances::{audit_samples, square_base_cone};
use mcone_core::maps::{audit_map, compare_mixing_distance, DirectionDistance, MixingOrder};
use mcone_core::rational::{int, parse_rational, rat};
use mcone_core::{LinearMap, PolyhedralCone, RVector};

use document::ConeDocument;

#[derive(Parser)]
#[command(name = "mcone", version, about = "Measure cones over exact rationals")]
struct Cli {
    /// Output style: human-readable or line-oriented key=value
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Kv,
}

#[derive(Subcommand)]
enum Command {
    /// Check a cone document against the defining invariants
    Validate { cone: PathBuf },
    /// Charge split, base norm, and minimal decomposition of a vector
    Decompose {
        cone: PathBuf,
        /// Inline "1,0,0" (rationals allowed) or the name of a VEC entry
        #[arg(allow_hyphen_values = true)]
        vector: String,
        /// Also enumerate the vertices of the optimal face
        #[arg(long)]
        all: bool,
        /// Cap on enumerated face vertices
        #[arg(long, default_value_t = 8)]
        max_count: usize,
    },
    /// Decide orthogonality of two cone elements; both decision procedures
    /// are run and compared
    Orthogonal {
        cone: PathBuf,
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        y: String,
        /// Print the witness effect (or NO-WITNESS)
        #[arg(long)]
        witness: bool,
    },
    /// Direction-distance table of a pair; with --compare, the grid verdict
    /// against a second pair
    Mixdist {
        cone: PathBuf,
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        y: String,
        /// Grid resolution on the simplex segment (default: 8 for tables,
        /// 64 for comparisons)
        #[arg(long)]
        grid: Option<usize>,
        /// Compare against the pair X' Y'
        #[arg(long, num_args = 2, value_names = ["XP", "YP"], allow_hyphen_values = true)]
        compare: Option<Vec<String>>,
    },
    /// Audit a named map: positivity, charge preservation, contraction,
    /// isometry, orthogonality preservation
    AuditMap {
        cone: PathBuf,
        map: String,
        /// Number of audit samples
        #[arg(long, default_value_t = 16)]
        samples: usize,
        /// Sample seed
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Walk through the square-base cone and its family of minimal
    /// decompositions
    Demo {
        /// Check a fixture file against the built-in square-base cone first
        #[arg(long)]
        fixture: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    // die quietly when the output pipe closes (e.g. `mcone ... | head`)
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn load_document(path: &Path) -> anyhow::Result<ConeDocument> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    ConeDocument::parse(&text).map_err(|e| anyhow!("{}:{}", path.display(), e))
}

fn load_valid_cone(path: &Path) -> anyhow::Result<(ConeDocument, PolyhedralCone)> {
    let doc = load_document(path)?;
    let cone = doc.cone()?;
    let report = cone.validate();
    if !report.is_valid() {
        bail!(
            "{} is not a valid measure cone: {}",
            path.display(),
            report.failures().join("; ")
        );
    }
    Ok((doc, cone))
}

/// Inline "1,0,0" or the name of a VEC entry in the document.
fn resolve_vector(doc: &ConeDocument, arg: &str) -> anyhow::Result<RVector> {
    if let Some(v) = doc.vector(arg) {
        return Ok(v.clone());
    }
    let parts: Vec<&str> = arg
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .collect();
    let mut coords = Vec::with_capacity(parts.len());
    for p in &parts {
        coords.push(parse_rational(p).map_err(|m| {
            anyhow!("'{arg}' is neither a named vector of the document nor an inline vector: {m}")
        })?);
    }
    if coords.len() != doc.dimension {
        bail!(
            "vector '{arg}' has {} entries, cone dimension is {}",
            coords.len(),
            doc.dimension
        );
    }
    Ok(RVector::new(coords))
}

fn kv_vector(v: &RVector) -> String {
    v.iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn run(cli: &Cli) -> anyhow::Result<u8> {
    match &cli.command {
        Command::Validate { cone } => cmd_validate(cli.format, cone),
        Command::Decompose {
            cone,
            vector,
            all,
            max_count,
        } => cmd_decompose(cli.format, cone, vector, *all, *max_count),
        Command::Orthogonal {
            cone,
            x,
            y,
            witness,
        } => cmd_orthogonal(cli.format, cone, x, y, *witness),
        Command::Mixdist {
            cone,
            x,
            y,
            grid,
            compare,
        } => cmd_mixdist(cli.format, cone, x, y, *grid, compare.as_deref()),
        Command::AuditMap {
            cone,
            map,
            samples,
            seed,
        } => cmd_audit_map(cli.format, cone, map, *samples, *seed),
        Command::Demo { fixture } => cmd_demo(cli.format, fixture.as_deref()),
    }
}

fn cmd_validate(format: Format, path: &Path) -> anyhow::Result<u8> {
    let doc = load_document(path)?;
    let cone = doc.cone()?;
    let report = cone.validate();
    match format {
        Format::Human => {
            println!(
                "cone: dim {}, {} generators, rank {}",
                report.dimension, report.generator_count, report.rank
            );
            if report.is_valid() {
                println!("VALID: generators span, charge strictly positive on every generator");
            } else {
                println!("INVALID:");
                for f in report.failures() {
                    println!("  - {f}");
                }
            }
        }
        Format::Kv => {
            println!("dimension={}", report.dimension);
            println!("generators={}", report.generator_count);
            println!("rank={}", report.rank);
            println!("valid={}", report.is_valid());
            for (i, f) in report.failures().iter().enumerate() {
                println!("failure.{i}={f}");
            }
        }
    }
    Ok(if report.is_valid() { 0 } else { 1 })
}

fn cmd_decompose(
    format: Format,
    path: &Path,
    vector: &str,
    all: bool,
    max_count: usize,
) -> anyhow::Result<u8> {
    let (doc, cone) = load_valid_cone(path)?;
    let z = resolve_vector(&doc, vector)?;
    let split = cone.charge_split(&z)?;
    let one_norm = split.one_norm();
    let d = cone.minimal_decomposition(&z)?;
    match format {
        Format::Human => {
            println!("z = {z}");
            println!("e_plus  = {}", split.plus);
            println!("e_minus = {}", split.minus);
            println!("one_norm = {one_norm}");
            println!("decomposition:");
            println!("  plus  = {}", d.plus);
            println!("  minus = {}", d.minus);
        }
        Format::Kv => {
            println!("e_plus={}", split.plus);
            println!("e_minus={}", split.minus);
            println!("one_norm={one_norm}");
            println!("plus={}", kv_vector(&d.plus));
            println!("minus={}", kv_vector(&d.minus));
        }
    }
    if all {
        let set = cone.all_minimal_decompositions(&z, max_count)?;
        match format {
            Format::Human => {
                let label = if set.non_unique {
                    "NON-UNIQUE"
                } else {
                    "unique"
                };
                println!(
                    "optimal face: {label} ({} vertex decompositions, value {})",
                    set.decompositions.len(),
                    set.value
                );
                for (i, v) in set.decompositions.iter().enumerate() {
                    println!("  vertex {i}: plus = {}, minus = {}", v.plus, v.minus);
                }
                if set.truncated {
                    println!("  (enumeration budget reached; list may be incomplete)");
                }
            }
            Format::Kv => {
                println!("non_unique={}", set.non_unique);
                println!("value={}", set.value);
                println!("vertices={}", set.decompositions.len());
                for (i, v) in set.decompositions.iter().enumerate() {
                    println!("vertex.{i}.plus={}", kv_vector(&v.plus));
                    println!("vertex.{i}.minus={}", kv_vector(&v.minus));
                }
                println!("truncated={}", set.truncated);
            }
        }
    }
    Ok(0)
}

fn cmd_orthogonal(
    format: Format,
    path: &Path,
    x_arg: &str,
    y_arg: &str,
    show_witness: bool,
) -> anyhow::Result<u8> {
    let (doc, cone) = load_valid_cone(path)?;
    let x = resolve_vector(&doc, x_arg)?;
    let y = resolve_vector(&doc, y_arg)?;
    let orthogonal = cone.are_orthogonal(&x, &y)?;
    let witness = cone.disjointness_witness(&x, &y)?;

    match format {
        Format::Human => {
            println!(
                "{}",
                if orthogonal {
                    "ORTHOGONAL"
                } else {
                    "NOT-ORTHOGONAL"
                }
            );
            if show_witness {
                match &witness {
                    Some(w) => {
                        println!("witness a = {}", w.functional());
                        for (i, g) in cone.generators().iter().enumerate() {
                            println!("  a(r{i}) = {}  (charge {})", w.value(g), cone.charge_of(g));
                        }
                        println!("  a(x) = {} = e(x), a(y) = {}", w.value(&x), w.value(&y));
                    }
                    None => println!("NO-WITNESS"),
                }
            }
        }
        Format::Kv => {
            println!("orthogonal={orthogonal}");
            println!("witness_exists={}", witness.is_some());
            if show_witness {
                if let Some(w) = &witness {
                    println!("witness={}", kv_vector(w.functional()));
                    for (i, g) in cone.generators().iter().enumerate() {
                        println!("witness_on_generator.{i}={}", w.value(g));
                    }
                }
            }
        }
    }

    if orthogonal != witness.is_some() {
        eprintln!(
            "self-check failure: norm orthogonality ({orthogonal}) and witness existence \
             ({}) disagree",
            witness.is_some()
        );
        return Ok(2);
    }
    Ok(0)
}

fn order_name(order: &MixingOrder) -> &'static str {
    match order {
        MixingOrder::Dominates => "DOMINATES",
        MixingOrder::DominatedBy => "DOMINATED-BY",
        MixingOrder::Equal => "EQUAL",
        MixingOrder::Incomparable(_) => "INCOMPARABLE",
        MixingOrder::UndecidedAtResolution => "UNDECIDED-AT-RESOLUTION",
    }
}

fn cmd_mixdist(
    format: Format,
    path: &Path,
    x_arg: &str,
    y_arg: &str,
    grid: Option<usize>,
    compare: Option<&[String]>,
) -> anyhow::Result<u8> {
    let (doc, cone) = load_valid_cone(path)?;
    let x = resolve_vector(&doc, x_arg)?;
    let y = resolve_vector(&doc, y_arg)?;
    // coarse table for reading, finer default when deciding an ordering
    let grid = grid.unwrap_or(if compare.is_some() { 64 } else { 8 });

    match compare {
        None => {
            let dd =
                DirectionDistance::with_grid(&cone, &x, &y, mcone_core::maps::simplex_grid(grid))?;
            let table = dd.table()?;
            match format {
                Format::Human => {
                    println!("d[x/y] on the simplex segment (alpha + beta = 1):");
                    println!("{:>8} {:>8} {:>12}", "alpha", "beta", "distance");
                    for (a, b, v) in &table {
                        println!(
                            "{:>8} {:>8} {:>12}",
                            a.to_string(),
                            b.to_string(),
                            v.to_string()
                        );
                    }
                }
                Format::Kv => {
                    for (i, (a, b, v)) in table.iter().enumerate() {
                        println!("d.{i}.alpha={a}");
                        println!("d.{i}.beta={b}");
                        println!("d.{i}.value={v}");
                    }
                }
            }
        }
        Some(args) => {
            let xp = resolve_vector(&doc, &args[0])?;
            let yp = resolve_vector(&doc, &args[1])?;
            let verdict = compare_mixing_distance(&cone, &x, &y, &xp, &yp, grid)?;
            match format {
                Format::Human => {
                    println!("verdict: {}", order_name(&verdict));
                    if let MixingOrder::Incomparable(cert) = &verdict {
                        println!(
                            "  strictly above at (alpha, beta) = ({}, {})",
                            cert.above.0, cert.above.1
                        );
                        println!(
                            "  strictly below at (alpha, beta) = ({}, {})",
                            cert.below.0, cert.below.1
                        );
                    }
                }
                Format::Kv => {
                    println!("verdict={}", order_name(&verdict));
                    if let MixingOrder::Incomparable(cert) = &verdict {
                        println!("above.alpha={}", cert.above.0);
                        println!("above.beta={}", cert.above.1);
                        println!("below.alpha={}", cert.below.0);
                        println!("below.beta={}", cert.below.1);
                    }
                }
            }
        }
    }
    Ok(0)
}

fn cmd_audit_map(
    format: Format,
    path: &Path,
    map_name: &str,
    samples: usize,
    seed: u64,
) -> anyhow::Result<u8> {
    let (doc, cone) = load_valid_cone(path)?;
    let matrix = doc
        .map(map_name)
        .ok_or_else(|| anyhow!("no MAP named '{map_name}' in {}", path.display()))?;
    let map = LinearMap::new(matrix.clone())?;
    let sample_set = audit_samples(&cone, samples, seed);
    let audit = audit_map(&cone, &map, &sample_set)?;
    match format {
        Format::Human => {
            println!("positive            = {} (exact)", audit.positive);
            println!("charge_preserving   = {} (exact)", audit.charge_preserving);
            println!(
                "contraction         = {} (on {} samples)",
                audit.contraction.holds, audit.contraction.checked
            );
            println!(
                "isometry            = {} (on {} samples)",
                audit.isometry.holds, audit.isometry.checked
            );
            println!(
                "orthogonality_pres. = {} (on {} orthogonal pairs)",
                audit.orthogonality_preserving.holds, audit.orthogonality_preserving.checked
            );
            println!(
                "endomorphism: {}",
                if audit.is_endomorphism() { "yes" } else { "no" }
            );
        }
        Format::Kv => {
            println!("positive={}", audit.positive);
            println!("charge_preserving={}", audit.charge_preserving);
            println!("contraction={}", audit.contraction.holds);
            println!("contraction_samples={}", audit.contraction.checked);
            println!("isometry={}", audit.isometry.holds);
            println!("isometry_samples={}", audit.isometry.checked);
            println!(
                "orthogonality_preserving={}",
                audit.orthogonality_preserving.holds
            );
            println!(
                "orthogonality_pairs={}",
                audit.orthogonality_preserving.checked
            );
            println!("endomorphism={}", audit.is_endomorphism());
        }
    }
    Ok(if audit.is_endomorphism() { 0 } else { 1 })
}

fn cmd_demo(format: Format, fixture: Option<&Path>) -> anyhow::Result<u8> {
    let cone = square_base_cone();
    let mut passed = 0usize;
    let mut failed = 0usize;
    let mut index = 0usize;
    let mut check = |name: &str, ok: bool| {
        match format {
            Format::Human => println!("{}: {name}", if ok { "PASS" } else { "FAIL" }),
            Format::Kv => {
                println!("check.{index}.name={name}");
                println!("check.{index}.pass={ok}");
            }
        }
        index += 1;
        if ok {
            passed += 1;
        } else {
            failed += 1;
        }
    };

    if let Some(path) = fixture {
        let matches = match load_document(path) {
            Ok(doc) => match doc.cone() {
                Ok(parsed) => {
                    let mut got = doc.generators.clone();
                    let mut want = cone.generators().to_vec();
                    got.sort();
                    want.sort();
                    parsed.dim() == cone.dim() && got == want && doc.charge == *cone.charge()
                }
                Err(_) => false,
            },
            Err(e) => {
                eprintln!("note: {e:#}");
                false
            }
        };
        check("fixture matches the built-in square-base cone", matches);
    }

    check("square-base cone validates", cone.validate().is_valid());

    let z = RVector::from_ints(&[1, 0, 0]);
    let set = cone.all_minimal_decompositions(&z, 8)?;
    check(
        "joint optimum for the first axis equals 1",
        set.value == int(1),
    );
    check(
        "optimal face is non-unique with at least two vertices",
        set.non_unique && set.decompositions.len() >= 2,
    );

    for numer in [-2i64, -1, 0, 1, 2] {
        let alpha = rat(numer, 2);
        let plus = RVector::new(vec![rat(1, 2), &alpha / int(2), rat(1, 2)]);
        let minus = RVector::new(vec![rat(-1, 2), &alpha / int(2), rat(1, 2)]);
        let in_cone = cone.contains(&plus)? && cone.contains(&minus)?;
        let minimal =
            in_cone && cone.is_minimal(&Decomposition::new(plus.clone(), minus.clone()), &z)?;
        let parts_orthogonal = in_cone && cone.are_orthogonal(&plus, &minus)?;
        check(
            &format!("family member at parameter {alpha} is a minimal orthogonal split"),
            minimal && parts_orthogonal,
        );
    }

    // outside the parameter range the candidate parts leave the cone
    let stray = RVector::from_ints(&[1, 2, 1]);
    check(
        "parameter 2 is rejected: (1, 2, 1) is outside the cone",
        !cone.contains(&stray)?,
    );

    match format {
        Format::Human => println!("demo: {passed}/{} checks passed", passed + failed),
        Format::Kv => {
            println!("passed={passed}");
            println!("failed={failed}");
        }
    }
    Ok(if failed == 0 { 0 } else { 1 })
}
