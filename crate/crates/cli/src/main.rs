//! Command line front end: file-driven minor and cohomology queries,
//! point-set reports, generators, and the seeded verification suites.
//!
//! Exit codes: 0 all checks pass, 1 any fail or FALSIFICATION, 2 unknown
//! or budget exhaustion, 3 usage or parse errors. Reports go to stdout
//! (or `--out`); timings go to stderr only.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use linsyz::error::Error;
use linsyz::field::{Field, FieldSpec, Fp, Rat};
use linsyz::io::{
    field_of, format_linform_matrix, format_pointset, parse_graded_module, parse_linform_matrix,
    parse_pointset,
};
use linsyz::koszul::{koszul_cohomology, KoszulClass};
use linsyz::linforms::{minor_map, LinearFormMatrix, MinorKind};
use linsyz::multilinear::{format_element, subsets, ElementKind};
use linsyz::points::{
    betti_table, dichotomy_witness, np_check, rnc_points, CurveParam, DichotomyOutcome, PointSet,
};
use linsyz::report::{Check, Report, Verdict};
use linsyz::rng::stream;
use linsyz::verify::{run_suite, RunConfig, SUITES};

#[derive(Parser)]
#[command(name = "linsyz", version, disable_help_subcommand = true)]
/// Exterior minors, Koszul cohomology, and syzygies of point sets.
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    #[command(flatten)]
    knobs: Knobs,
}

#[derive(Args)]
struct Knobs {
    /// Scalar field: Fp:N (N an odd prime below 2^31) or Q.
    #[arg(long, global = true, default_value = "Fp:10007")]
    field: String,
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
    #[arg(long, global = true, default_value_t = 100)]
    trials: usize,
    /// Cap on any single enumeration.
    #[arg(long, global = true, default_value_t = 10_000_000)]
    budget: u64,
    /// Primes for finite-field dimension estimates.
    #[arg(long, global = true, default_value = "5,7,11")]
    qlist: String,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Rank and basis of the space spanned by the k by k minors.
    Minors {
        file: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value = "exterior")]
        kind: String,
    },
    /// Cohomology dimension of a graded module at one bidegree.
    Koszul {
        file: PathBuf,
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: i64,
        /// Also print a basis of representing cocycles.
        #[arg(long)]
        basis: bool,
    },
    /// Reports on finite point sets in projective space.
    Points {
        #[command(subcommand)]
        sub: PointsCmd,
    },
    /// Seeded randomized suites; token `all` runs every suite.
    Verify { suite: String },
    /// Emit a seeded random linear-form matrix file.
    Gen {
        #[arg(long)]
        a: usize,
        #[arg(long)]
        b: usize,
        #[arg(long)]
        n: usize,
    },
}

#[derive(Subcommand)]
enum PointsCmd {
    /// Graded Betti table as TSV.
    Betti { file: PathBuf },
    /// Whether the resolution is linear through step p.
    Npcheck {
        file: PathBuf,
        #[arg(long)]
        p: usize,
    },
    /// The guaranteed outcome for 2r+1-p points: the property holds or
    /// some subset on a small span fails it.
    Witness {
        file: PathBuf,
        #[arg(long)]
        p: usize,
    },
    /// Emit m points at distinct parameters of the degree-r rational
    /// normal curve as a pointset file.
    Rnc {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        m: usize,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(3);
        }
    };
    let start = std::time::Instant::now();
    let code = match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Budget { .. } => 2,
                _ => 3,
            }
        }
    };
    eprintln!("[time] total: {:?}", start.elapsed());
    ExitCode::from(code)
}

fn parse_qlist(s: &str) -> Result<Vec<u64>, Error> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<u64>()
                .map_err(|_| Error::invalid(format!("bad prime {t:?} in qlist")))
        })
        .collect()
}

fn config(knobs: &Knobs) -> Result<RunConfig, Error> {
    Ok(RunConfig {
        field: FieldSpec::parse(&knobs.field)?,
        seed: knobs.seed,
        trials: knobs.trials,
        budget: knobs.budget,
        q_list: parse_qlist(&knobs.qlist)?,
    })
}

fn emit(knobs: &Knobs, text: &str) -> Result<(), Error> {
    match &knobs.out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn run(cli: Cli) -> Result<u8, Error> {
    let knobs = &cli.knobs;
    match &cli.cmd {
        Cmd::Minors { file, k, kind } => {
            let kind = match kind.as_str() {
                "exterior" => MinorKind::Exterior,
                "sym" | "symmetric" => MinorKind::Symmetric,
                other => return Err(Error::invalid(format!("unknown minor kind {other:?}"))),
            };
            let text = std::fs::read_to_string(file)?;
            let report = match field_of(&text)? {
                FieldSpec::Prime(p) => cmd_minors::<Fp>(&p, &text, *k, kind)?,
                FieldSpec::Rationals => cmd_minors::<Rat>(&(), &text, *k, kind)?,
            };
            emit(knobs, &report.render())?;
            Ok(report.exit_code() as u8)
        }
        Cmd::Koszul { file, p, q, basis } => {
            let text = std::fs::read_to_string(file)?;
            let report = match field_of(&text)? {
                FieldSpec::Prime(pr) => cmd_koszul::<Fp>(&pr, &text, *p, *q, *basis)?,
                FieldSpec::Rationals => cmd_koszul::<Rat>(&(), &text, *p, *q, *basis)?,
            };
            emit(knobs, &report.render())?;
            Ok(report.exit_code() as u8)
        }
        Cmd::Points { sub } => {
            if let PointsCmd::Rnc { r, m } = sub {
                let cfg = config(knobs)?;
                let text = match cfg.field {
                    FieldSpec::Prime(p) => rnc_file::<Fp>(&p, *r, *m)?,
                    FieldSpec::Rationals => rnc_file::<Rat>(&(), *r, *m)?,
                };
                emit(knobs, &text)?;
                return Ok(0);
            }
            let (file, report_of) = match sub {
                PointsCmd::Betti { file } => (file, PointsQuery::Betti),
                PointsCmd::Npcheck { file, p } => (file, PointsQuery::Np(*p)),
                PointsCmd::Witness { file, p } => (file, PointsQuery::Witness(*p)),
                PointsCmd::Rnc { .. } => unreachable!(),
            };
            let text = std::fs::read_to_string(file)?;
            let report = match field_of(&text)? {
                FieldSpec::Prime(p) => cmd_points::<Fp>(&p, &text, report_of)?,
                FieldSpec::Rationals => cmd_points::<Rat>(&(), &text, report_of)?,
            };
            emit(knobs, &report.render())?;
            Ok(report.exit_code() as u8)
        }
        Cmd::Verify { suite } => {
            if suite != "all" && !SUITES.contains(&suite.as_str()) {
                return Err(Error::invalid(format!(
                    "unknown suite {suite:?}; expected one of {} or all",
                    SUITES.join(", ")
                )));
            }
            let cfg = config(knobs)?;
            let mut report = Report::new(format!("verify {suite}"));
            report.config_lines.extend(cfg.config_lines());
            for check in run_suite(suite, &cfg)? {
                report.push(check);
            }
            emit(knobs, &report.render())?;
            Ok(report.exit_code() as u8)
        }
        Cmd::Gen { a, b, n } => {
            if *a == 0 || *b == 0 || *n == 0 {
                return Err(Error::invalid("dims must be positive"));
            }
            let cfg = config(knobs)?;
            let mut rng = stream(cfg.seed, 0);
            let text = match cfg.field {
                FieldSpec::Prime(p) => {
                    format_linform_matrix(&LinearFormMatrix::<Fp>::random(*a, *b, *n, &p, &mut rng))
                }
                FieldSpec::Rationals => {
                    format_linform_matrix(&LinearFormMatrix::<Rat>::random(*a, *b, *n, &(), &mut rng))
                }
            };
            emit(knobs, &text)?;
            Ok(0)
        }
    }
}

fn cmd_minors<K: Field>(
    ctx: &K::Ctx,
    text: &str,
    k: usize,
    kind: MinorKind,
) -> Result<Report, Error> {
    let m = parse_linform_matrix::<K>(ctx, text)?;
    let kind_name = match kind {
        MinorKind::Exterior => "exterior",
        MinorKind::Symmetric => "symmetric",
    };
    let mm = minor_map(&m, k, kind)?;
    let mut report = Report::new(format!("minors k={k} kind={kind_name}"));
    report.config_lines.push(format!("field: {}", K::spec(ctx)));
    report.config_lines.push(format!("dims: a={} b={} n={}", m.a(), m.b(), m.n()));
    let basis = mm.matrix.image_basis();
    report.section(format!("image dimension: {}", basis.len()));
    let element_kind = match kind {
        MinorKind::Exterior => ElementKind::Ext(k),
        MinorKind::Symmetric => ElementKind::Sym(k),
    };
    let mut dump = String::from("basis:");
    for v in &basis {
        let _ = write!(dump, "\n  {}", format_element(m.n(), element_kind, v));
    }
    if basis.is_empty() {
        dump.push_str("\n  (empty)");
    }
    report.section(dump);
    Ok(report)
}

fn format_class<K: Field>(n: usize, m_dim: usize, class: &KoszulClass<K>) -> String {
    let sets = subsets(n, class.p);
    let mut terms = Vec::new();
    for (si, set) in sets.iter().enumerate() {
        for i in 0..m_dim {
            let c = &class.coords[si * m_dim + i];
            if c.is_zero() {
                continue;
            }
            let wedge: Vec<String> = set.iter().map(|v| format!("x{}", v + 1)).collect();
            let wedge = if wedge.is_empty() {
                "1".to_string()
            } else {
                wedge.join("^")
            };
            terms.push(format!("({c}) {wedge} (x) m{}", i + 1));
        }
    }
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join(" + ")
    }
}

fn cmd_koszul<K: Field>(
    ctx: &K::Ctx,
    text: &str,
    p: usize,
    q: i64,
    basis: bool,
) -> Result<Report, Error> {
    let m = parse_graded_module::<K>(ctx, text)?;
    let (dim, classes) = koszul_cohomology(&m, p, q);
    let mut report = Report::new(format!("koszul p={p} q={q}"));
    report.config_lines.push(format!("field: {}", K::spec(ctx)));
    let dims: Vec<String> = m.dims().iter().map(|d| d.to_string()).collect();
    report.config_lines.push(format!(
        "module: n={} degrees {}..{} dims {}",
        m.n(),
        m.q_min(),
        m.q_max(),
        dims.join(" ")
    ));
    report.section(format!("dim K_{{{p},{q}}} = {dim}"));
    if basis {
        let mut dump = String::from("cocycle basis:");
        for class in &classes {
            let _ = write!(dump, "\n  {}", format_class(m.n(), m.dim_at(q), class));
        }
        if classes.is_empty() {
            dump.push_str("\n  (empty)");
        }
        report.section(dump);
    }
    Ok(report)
}

enum PointsQuery {
    Betti,
    Np(usize),
    Witness(usize),
}

fn cmd_points<K: Field>(ctx: &K::Ctx, text: &str, query: PointsQuery) -> Result<Report, Error> {
    let z = parse_pointset::<K>(ctx, text)?;
    let mut report = Report::new(match &query {
        PointsQuery::Betti => "points betti".to_string(),
        PointsQuery::Np(p) => format!("points npcheck p={p}"),
        PointsQuery::Witness(p) => format!("points witness p={p}"),
    });
    report.config_lines.push(format!("field: {}", K::spec(ctx)));
    report.config_lines.push(format!("points: {} in P^{}", z.n_points(), z.r()));
    match query {
        PointsQuery::Betti => {
            let table = betti_table(&z);
            report.section(format!(
                "regularity: {}\n{}",
                table.reg,
                table.render_tsv().trim_end()
            ));
        }
        PointsQuery::Np(p) => {
            let rep = np_check(&z, p);
            let mut lines = format!(
                "N_{p} {}",
                if rep.holds { "holds" } else { "fails" }
            );
            if let Some(f) = &rep.failure {
                let _ = write!(lines, "\nfailure certificate: {f}");
            }
            report.section(lines);
        }
        PointsQuery::Witness(p) => {
            let rep = dichotomy_witness(&z, p)?;
            if !rep.hypothesis_met {
                report.section(format!(
                    "note: {} points, the guaranteed dichotomy addresses {}",
                    z.n_points(),
                    2 * z.r() + 1 - p
                ));
            }
            match rep.outcome {
                DichotomyOutcome::NpHolds(_) => {
                    report.section(format!("N_{p} holds for the full set"));
                    report.push(Check::new("dichotomy", Verdict::Pass));
                }
                DichotomyOutcome::Witness {
                    indices,
                    span_dim,
                    proof,
                    ..
                } => {
                    let idx: Vec<String> = indices.iter().map(|i| (i + 1).to_string()).collect();
                    let mut lines = format!(
                        "witness: {} points (indices {}) spanning a P^{span_dim}",
                        indices.len(),
                        idx.join(" ")
                    );
                    if let Some(f) = &proof.failure {
                        let _ = write!(lines, "\nfailure inside the span: {f}");
                    }
                    report.section(lines);
                    report.push(Check::new("dichotomy", Verdict::Pass));
                }
                DichotomyOutcome::Falsification { subsets_checked } => {
                    report.push(
                        Check::new("dichotomy", Verdict::Falsification).detail(format!(
                            "no qualifying subset among {subsets_checked} checked"
                        )),
                    );
                }
            }
        }
    }
    Ok(report)
}

fn rnc_file<K: Field>(ctx: &K::Ctx, r: usize, m: usize) -> Result<String, Error> {
    if m == 0 {
        return Err(Error::invalid("m must be positive"));
    }
    let mut params: Vec<CurveParam<K>> = (0..m as i64 - 1)
        .map(|i| CurveParam::Finite(K::from_i64(ctx, i)))
        .collect();
    params.push(CurveParam::Infinity);
    let z: PointSet<K> = rnc_points(ctx, r, &params)?;
    Ok(format_pointset(&z))
}
