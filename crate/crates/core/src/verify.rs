//! Seeded verification suites.
//!
//! Every suite draws its instances from [`crate::rng::stream`] with a
//! fixed per-suite index base, so reports are byte-identical for
//! identical configurations. Elapsed times go to stderr only.

use rand_core::RngCore;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec, Fp, Rat};
use crate::koszul::{
    class_to_subspace, contract_class, euler_strand_check, koszul_cohomology,
    koszul_differential, module_with_relations, monomial_quotient, quotient_descent_check,
    random_two_degree, rank_one_vanishing_check, GradedModule, KoszulClass,
};
use crate::linforms::{
    annihilation_check, companion_identity_check, full_exterior, minor_rank_check,
    rank_strata_witness, Hypothesis, LinearFormMatrix,
};
use crate::matrix::DenseMatrix;
use crate::multilinear::{binomial, subset_rank, wedge};
use crate::points::{
    betti_table, dichotomy_witness, h1_ideal, h1_module, np_check, random_point_set, rnc_points,
    CurveParam, DichotomyOutcome, PointSet,
};
use crate::report::{Check, Verdict};
use crate::rng::stream;
use num_traits::Zero;

/// Knobs shared by all suites.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub field: FieldSpec,
    pub seed: u64,
    pub trials: usize,
    pub budget: u64,
    pub q_list: Vec<u64>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            field: FieldSpec::Prime(10007),
            seed: 42,
            trials: 100,
            budget: 10_000_000,
            q_list: vec![5, 7, 11],
        }
    }
}

impl RunConfig {
    pub fn config_lines(&self) -> Vec<String> {
        let qs: Vec<String> = self.q_list.iter().map(|q| q.to_string()).collect();
        vec![
            format!("field: {}", self.field),
            format!("seed: {}", self.seed),
            format!("trials: {}", self.trials),
            format!("budget: {}", self.budget),
            format!("qlist: {}", qs.join(",")),
        ]
    }
}

/// Suite tokens accepted by `verify`, in report order; `all` runs them
/// all in this order.
pub const SUITES: &[&str] = &[
    "prop1", "prop2", "companion", "prop3", "thm4", "cor5", "lemma7", "thm6", "rnc", "koszul",
    "duality", "betti",
];

// stream-index bases keep the suites' random draws disjoint
const IDX_PROP1: u64 = 100_000;
const IDX_PROP2: u64 = 200_000;
const IDX_PROP2_Q: u64 = 250_000;
const IDX_COMPANION: u64 = 300_000;
const IDX_PROP3: u64 = 400_000;
const IDX_KOSZUL: u64 = 500_000;
const IDX_MODULES: u64 = 600_000;
const IDX_POINTS: u64 = 700_000;
const IDX_LEMMA7: u64 = 800_000;

pub fn run_suite(name: &str, cfg: &RunConfig) -> Result<Vec<Check>> {
    if name == "all" {
        let mut out = Vec::new();
        for s in SUITES {
            out.extend(run_suite(s, cfg)?);
        }
        return Ok(out);
    }
    let start = std::time::Instant::now();
    let checks = match name {
        "prop1" => suite_prop1(cfg),
        "prop2" => suite_prop2(cfg),
        "companion" => suite_companion(cfg),
        "prop3" => suite_prop3(cfg),
        "thm4" => suite_thm4(cfg),
        "cor5" => suite_cor5(cfg),
        "lemma7" => suite_lemma7(cfg),
        "thm6" => suite_thm6(cfg),
        "rnc" => suite_rnc(cfg),
        "koszul" => suite_koszul(cfg),
        "duality" => suite_duality(cfg),
        "betti" => suite_betti(cfg),
        other => {
            return Err(Error::invalid(format!(
                "unknown suite {other:?}; expected one of {} or all",
                SUITES.join(", ")
            )))
        }
    }?;
    eprintln!("[time] suite {name}: {:?}", start.elapsed());
    Ok(checks)
}

fn draw(rng: &mut impl RngCore, lo: usize, hi: usize) -> usize {
    lo + (rng.next_u64() % (hi - lo + 1) as u64) as usize
}

fn rand_vec<K: Field>(ctx: &K::Ctx, rng: &mut impl RngCore, len: usize) -> Vec<K> {
    (0..len).map(|_| K::random(ctx, rng)).collect()
}

fn rand_nonzero_vec<K: Field>(ctx: &K::Ctx, rng: &mut impl RngCore, len: usize) -> Vec<K> {
    loop {
        let v = rand_vec::<K>(ctx, rng, len);
        if v.iter().any(|c| !c.is_zero()) {
            return v;
        }
    }
}

fn independent_rows<K: Field>(
    ctx: &K::Ctx,
    rng: &mut impl RngCore,
    count: usize,
    len: usize,
) -> Vec<Vec<K>> {
    loop {
        let rows: Vec<Vec<K>> = (0..count).map(|_| rand_vec::<K>(ctx, rng, len)).collect();
        let m = DenseMatrix::from_row_vectors(ctx, &rows, len).expect("fixed row length");
        if m.rank() == count {
            return rows;
        }
    }
}

fn distinct_scalars<K: Field>(ctx: &K::Ctx, rng: &mut impl RngCore, count: usize) -> Vec<K> {
    let mut out: Vec<K> = Vec::new();
    while out.len() < count {
        let c = K::random(ctx, rng);
        if !out.contains(&c) {
            out.push(c);
        }
    }
    out
}

// ---------------------------------------------------------------- prop1

fn suite_prop1(cfg: &RunConfig) -> Result<Vec<Check>> {
    match cfg.field {
        FieldSpec::Prime(p) => prop1_impl::<Fp>(&p, cfg),
        FieldSpec::Rationals => prop1_impl::<Rat>(&(), cfg),
    }
}

fn prop1_impl<K: Field>(ctx: &K::Ctx, cfg: &RunConfig) -> Result<Vec<Check>> {
    let shapes = [(1usize, 2usize, 2usize), (2, 2, 3), (2, 3, 4), (3, 2, 4)];
    let per_shape = (cfg.trials / 2).max(50);
    let mut checks = Vec::new();
    for (si, &(a, b, n)) in shapes.iter().enumerate() {
        let runs: Vec<(u64, crate::linforms::MinorRankReport<K>)> = (0..per_shape)
            .into_par_iter()
            .map(|t| -> Result<(u64, crate::linforms::MinorRankReport<K>)> {
                let mut discarded = 0u64;
                loop {
                    let idx = IDX_PROP1 + si as u64 * 10_000 + t as u64 * 40 + discarded;
                    let mut rng = stream(cfg.seed, idx);
                    let m = LinearFormMatrix::<K>::random(a, b, n, ctx, &mut rng);
                    let rep = minor_rank_check(&m, cfg.budget, 20, cfg.seed)?;
                    if matches!(rep.hypothesis, Hypothesis::FailedAt(_)) && discarded < 39 {
                        discarded += 1;
                        continue;
                    }
                    return Ok((discarded, rep));
                }
            })
            .collect::<Result<Vec<_>>>()?;
        let mut enumerated = 0usize;
        let mut sampled = 0usize;
        let mut discards = 0u64;
        let mut unknown = 0usize;
        let mut expected = 0usize;
        let mut bad: Vec<String> = Vec::new();
        let mut bad_enumerated = false;
        for (t, (d, rep)) in runs.iter().enumerate() {
            discards += d;
            expected = rep.expected;
            match rep.hypothesis {
                Hypothesis::Enumerated => enumerated += 1,
                Hypothesis::Sampled(_) => sampled += 1,
                _ => {
                    unknown += 1;
                    continue;
                }
            }
            if rep.pass != Some(true) {
                if matches!(rep.hypothesis, Hypothesis::Enumerated) {
                    bad_enumerated = true;
                }
                bad.push(format!(
                    "instance {t}: minor rank {} != {}",
                    rep.minor_rank, rep.expected
                ));
            }
        }
        let verdict = if !bad.is_empty() {
            if bad_enumerated {
                Verdict::Falsification
            } else {
                Verdict::Fail
            }
        } else if unknown > 0 {
            Verdict::Unknown
        } else {
            Verdict::Pass
        };
        let mut check = Check::new(format!("prop1/a{a}-b{b}-n{n}"), verdict).detail(format!(
            "{per_shape} matrices, expected minor rank {expected}; hypothesis enumerated {enumerated}, sampled {sampled}, discarded draws {discards}"
        ));
        for line in bad {
            check = check.detail(line);
        }
        if unknown > 0 {
            check = check.detail(format!("{unknown} instances without established hypothesis"));
        }
        checks.push(check);
    }
    Ok(checks)
}

// ---------------------------------------------------------------- prop2

fn suite_prop2(cfg: &RunConfig) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    match cfg.field {
        FieldSpec::Prime(p) => {
            checks.push(prop2_impl::<Fp>(
                &p,
                cfg,
                5 * cfg.trials,
                IDX_PROP2,
                format!("prop2/{}", cfg.field),
            )?);
            checks.push(prop2_impl::<Rat>(
                &(),
                cfg,
                (cfg.trials / 5).max(5),
                IDX_PROP2_Q,
                "prop2/Q".to_string(),
            )?);
        }
        FieldSpec::Rationals => {
            checks.push(prop2_impl::<Rat>(
                &(),
                cfg,
                5 * cfg.trials,
                IDX_PROP2,
                "prop2/Q".to_string(),
            )?);
        }
    }
    Ok(checks)
}

fn prop2_impl<K: Field>(
    ctx: &K::Ctx,
    cfg: &RunConfig,
    count: usize,
    base: u64,
    name: String,
) -> Result<Check> {
    let runs: Vec<((usize, usize, usize, usize), crate::linforms::AnnihilationReport)> = (0
        ..count)
        .into_par_iter()
        .map(|t| {
            let mut rng = stream(cfg.seed, base + t as u64);
            let a = draw(&mut rng, 1, 3);
            let b = draw(&mut rng, 1, 3);
            let n = draw(&mut rng, 2, 5);
            let deg = draw(&mut rng, 1, 2.min(n - 1));
            let m = LinearFormMatrix::<K>::random(a, b, n, ctx, &mut rng);
            annihilation_check(&m, deg).map(|r| ((a, b, n, deg), r))
        })
        .collect::<Result<Vec<_>>>()?;
    let vacuous = runs.iter().filter(|(_, r)| r.vacuous).count();
    let bad: Vec<String> = runs
        .iter()
        .enumerate()
        .filter(|(_, (_, r))| !r.pass)
        .map(|(t, ((a, b, n, deg), r))| {
            format!(
                "instance {t} (a={a} b={b} n={n} deg={deg}): nonzero wedge on {}-dim kernel",
                r.kernel_dim
            )
        })
        .collect();
    let verdict = if bad.is_empty() {
        Verdict::Pass
    } else {
        Verdict::Falsification
    };
    let mut check = Check::new(name, verdict)
        .detail(format!("{count} instances, {vacuous} vacuous (deg+a > n)"));
    for line in bad {
        check = check.detail(line);
    }
    Ok(check)
}

// ------------------------------------------------------------ companion

fn suite_companion(cfg: &RunConfig) -> Result<Vec<Check>> {
    match cfg.field {
        FieldSpec::Prime(p) => companion_impl::<Fp>(&p, cfg),
        FieldSpec::Rationals => companion_impl::<Rat>(&(), cfg),
    }
}

fn companion_impl<K: Field>(ctx: &K::Ctx, cfg: &RunConfig) -> Result<Vec<Check>> {
    let count = 2 * cfg.trials;
    let runs: Vec<((usize, usize, usize), crate::linforms::CompanionReport)> = (0..count)
        .into_par_iter()
        .map(|t| {
            let mut rng = stream(cfg.seed, IDX_COMPANION + t as u64);
            let a = draw(&mut rng, 1, 3);
            let b = draw(&mut rng, 1, 3);
            let n = draw(&mut rng, 1, 5);
            let m = LinearFormMatrix::<K>::random(a, b, n, ctx, &mut rng);
            companion_identity_check(&m).map(|r| ((a, b, n), r))
        })
        .collect::<Result<Vec<_>>>()?;
    let degenerate = runs.iter().filter(|(_, r)| r.degenerate).count();
    let bad: Vec<String> = runs
        .iter()
        .enumerate()
        .filter(|(_, (_, r))| !r.pass)
        .map(|(t, ((a, b, n), _))| format!("instance {t} (a={a} b={b} n={n}): identity broken"))
        .collect();
    let verdict = if bad.is_empty() {
        Verdict::Pass
    } else {
        Verdict::Falsification
    };
    let mut random_check = Check::new("companion/random", verdict)
        .detail(format!("{count} instances, {degenerate} with a > n"));
    for line in bad {
        random_check = random_check.detail(line);
    }

    // duplicated-column matrices: the identity must still hold and the
    // full exterior element must vanish
    let rep_count = 10usize;
    let reps: Vec<(bool, bool)> = (0..rep_count)
        .into_par_iter()
        .map(|t| {
            let mut rng = stream(cfg.seed, IDX_COMPANION + 50_000 + t as u64);
            let a = draw(&mut rng, 2, 3);
            let b = draw(&mut rng, 1, 3);
            let n = draw(&mut rng, 1, 4);
            let mut m = LinearFormMatrix::<K>::random(a, b, n, ctx, &mut rng);
            let src = draw(&mut rng, 0, a - 1);
            let dst = (src + 1) % a;
            for j in 0..b {
                for k in 0..n {
                    let c = m.entry(j, src)[k].clone();
                    m.set_coeff(j, dst, k, c);
                }
            }
            let identity_ok = companion_identity_check(&m).map(|r| r.pass)?;
            let full_zero = full_exterior(&m).coords().iter().all(|c| c.is_zero());
            Ok((identity_ok, full_zero))
        })
        .collect::<Result<Vec<_>>>()?;
    let bad_rep: Vec<String> = reps
        .iter()
        .enumerate()
        .filter(|(_, (i, z))| !i || !z)
        .map(|(t, (i, z))| format!("instance {t}: identity_ok={i} full_vanishes={z}"))
        .collect();
    let verdict = if bad_rep.is_empty() {
        Verdict::Pass
    } else {
        Verdict::Falsification
    };
    let mut rep_check = Check::new("companion/repeated-column", verdict).detail(format!(
        "{rep_count} matrices with a duplicated column; full element vanished on all"
    ));
    for line in bad_rep {
        rep_check = rep_check.detail(line);
    }
    Ok(vec![random_check, rep_check])
}

// ---------------------------------------------------------------- prop3

fn wedge_of<K: Field>(ctx: &K::Ctx, n: usize, factors: &[Vec<K>]) -> Vec<K> {
    let mut acc = factors[0].clone();
    for (d, f) in factors.iter().enumerate().skip(1) {
        acc = wedge(ctx, n, d, 1, &acc, f);
    }
    acc
}

/// Independent wedge products of `deg` random vectors each, the first
/// `shared` factors common to every row.
fn decomposable_rows(rng: &mut impl RngCore, n: usize, deg: usize, rows: usize, shared: usize) -> Vec<Vec<Rat>> {
    loop {
        let common: Vec<Vec<Rat>> = (0..shared).map(|_| rand_nonzero_vec(&(), rng, n)).collect();
        let cand: Vec<Vec<Rat>> = (0..rows)
            .map(|_| {
                let mut factors = common.clone();
                while factors.len() < deg {
                    factors.push(rand_nonzero_vec(&(), rng, n));
                }
                wedge_of(&(), n, &factors)
            })
            .collect();
        if cand.iter().any(|w| w.iter().all(|c| c.is_zero())) {
            continue;
        }
        let full = DenseMatrix::from_row_vectors(&(), &cand, binomial(n, deg))
            .map(|m| m.rank() == rows)
            .unwrap_or(false);
        if full {
            return cand;
        }
    }
}

fn suite_prop3(cfg: &RunConfig) -> Result<Vec<Check>> {
    let count = (cfg.trials / 2).max(20);
    // each family places a rational point inside some qualifying stratum,
    // so the per-prime tallies must find a witness at every usable prime
    let runs: Vec<(&str, (usize, usize), crate::linforms::StrataReport)> = (0..count)
        .into_par_iter()
        .map(|t| {
            let mut rng = stream(cfg.seed, IDX_PROP3 + t as u64);
            let (label, n, p, w) = match t % 4 {
                0 => {
                    let n = draw(&mut rng, 3, 5);
                    let w = vec![rand_nonzero_vec::<Rat>(&(), &mut rng, binomial(n, n - 1))];
                    ("line", n, 1, w)
                }
                1 => {
                    let n = draw(&mut rng, 3, 5);
                    ("pair", n, 2, decomposable_rows(&mut rng, n, n - 2, 2, 0))
                }
                2 => {
                    let n = draw(&mut rng, 4, 5);
                    ("pencil", n, 2, decomposable_rows(&mut rng, n, n - 2, 2, n - 3))
                }
                _ => {
                    let n = draw(&mut rng, 4, 5);
                    ("net", n, 3, decomposable_rows(&mut rng, n, n - 3, 3, n - 4))
                }
            };
            rank_strata_witness(n, p, &w, &cfg.q_list, cfg.budget).map(|r| (label, (n, p), r))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut passed = 0usize;
    let mut unknown = 0usize;
    let mut bad: Vec<String> = Vec::new();
    for (t, (label, (n, p), rep)) in runs.iter().enumerate() {
        match rep.pass {
            Some(true) => passed += 1,
            None => unknown += 1,
            Some(false) => bad.push(format!(
                "instance {t} ({label}, n={n} p={p}): no stratum of codim drop k had dim >= p-k"
            )),
        }
    }
    let verdict = if !bad.is_empty() {
        Verdict::Falsification
    } else if passed == 0 {
        Verdict::Unknown
    } else {
        Verdict::Pass
    };
    let mut random_check = Check::new("prop3/witness-families", verdict).detail(format!(
        "{count} subspaces (line/pair/pencil/net families); {passed} witnessed, {unknown} skipped (budget or bad reduction)"
    ));
    for line in bad {
        random_check = random_check.detail(line);
    }

    // end-to-end: the subspace attached to a bottom Koszul class feeds
    // the same stratification
    let n = 4;
    let m0 = 2;
    let zero_acts: Vec<DenseMatrix<Rat>> = (0..n).map(|_| DenseMatrix::zeros(0, m0, &())).collect();
    let module = GradedModule::<Rat>::new(&(), n, 0, vec![m0, 0], vec![zero_acts])
        .expect("zero actions commute");
    let mut coords = vec![Rat::from_int(0); binomial(n, 2) * m0];
    coords[subset_rank(n, &[0, 1]) * m0] = Rat::from_int(1);
    coords[subset_rank(n, &[2, 3]) * m0 + 1] = Rat::from_int(1);
    let class = KoszulClass {
        p: 2,
        q: 0,
        coords,
    };
    let sub = class_to_subspace(&module, &class, &Rat::from_int(1))?;
    let pipeline_check = if sub.shrinkable {
        Check::new("prop3/class-pipeline", Verdict::Fail)
            .detail("designed class unexpectedly shrinkable")
    } else {
        let rep = rank_strata_witness(n, 2, &sub.w_prime_basis, &cfg.q_list, cfg.budget)?;
        match rep.pass {
            Some(true) => Check::new("prop3/class-pipeline", Verdict::Pass).detail(format!(
                "decomposable-pair class: stratum k={} estimated dim {}",
                rep.chosen_k.unwrap_or(0),
                rep.estimated_dim.unwrap_or(0)
            )),
            Some(false) => Check::new("prop3/class-pipeline", Verdict::Falsification)
                .detail("class-derived subspace has no qualifying stratum"),
            None => Check::new("prop3/class-pipeline", Verdict::Unknown)
                .detail("all primes skipped"),
        }
    };
    Ok(vec![random_check, pipeline_check])
}

// --------------------------------------------------------------- koszul

fn suite_koszul(cfg: &RunConfig) -> Result<Vec<Check>> {
    match cfg.field {
        FieldSpec::Prime(p) => koszul_impl::<Fp>(&p, cfg),
        FieldSpec::Rationals => koszul_impl::<Rat>(&(), cfg),
    }
}

fn random_module<K: Field>(ctx: &K::Ctx, rng: &mut impl RngCore, kind: usize) -> GradedModule<K> {
    if kind % 2 == 0 {
        let n = draw(rng, 2, 3);
        let maxdeg = draw(rng, 2, 3);
        let n_gens = draw(rng, 0, 2);
        let gens: Vec<Vec<u32>> = (0..n_gens)
            .map(|_| {
                let d = draw(rng, 1, maxdeg);
                let mut e = vec![0u32; n];
                for _ in 0..d {
                    e[draw(rng, 0, n - 1)] += 1;
                }
                e
            })
            .collect();
        monomial_quotient(ctx, n, maxdeg, &gens).expect("valid monomial data")
    } else {
        let n = draw(rng, 1, 4);
        let m0 = draw(rng, 1, 3);
        let m1 = draw(rng, 0, 3);
        random_two_degree(ctx, n, m0, m1, rng)
    }
}

fn koszul_impl<K: Field>(ctx: &K::Ctx, cfg: &RunConfig) -> Result<Vec<Check>> {
    let count = 2 * cfg.trials;
    let runs: Vec<(bool, bool)> = (0..count)
        .into_par_iter()
        .map(|t| {
            let mut rng = stream(cfg.seed, IDX_KOSZUL + t as u64);
            let m = random_module::<K>(ctx, &mut rng, t);
            let n = m.n();
            let mut dd_ok = true;
            for p in 1..=n {
                for q in m.q_min()..=m.q_max() {
                    let d1 = koszul_differential(&m, p, q);
                    let d2 = koszul_differential(&m, p - 1, q + 1);
                    if !d2.matmul(&d1).expect("chain shapes").is_zero() {
                        dd_ok = false;
                    }
                }
            }
            let euler_ok =
                (m.q_min()..=m.q_max() + n as i64).all(|s| euler_strand_check(&m, s));
            (dd_ok, euler_ok)
        })
        .collect();
    let dd_bad: Vec<String> = runs
        .iter()
        .enumerate()
        .filter(|(_, (dd, _))| !dd)
        .map(|(t, _)| format!("module {t}: d after d is nonzero"))
        .collect();
    let euler_bad: Vec<String> = runs
        .iter()
        .enumerate()
        .filter(|(_, (_, e))| !e)
        .map(|(t, _)| format!("module {t}: strand sums differ"))
        .collect();

    let mut checks = Vec::new();
    let verdict = if dd_bad.is_empty() {
        Verdict::Pass
    } else {
        Verdict::Falsification
    };
    let mut c = Check::new("koszul/differential-squares-to-zero", verdict)
        .detail(format!("{count} modules, all bidegrees"));
    for line in dd_bad {
        c = c.detail(line);
    }
    checks.push(c);

    let mut trivial_bad: Vec<String> = Vec::new();
    for n in 1..=6usize {
        let m = GradedModule::<K>::trivial(ctx, n);
        for p in 0..=n {
            let (dim, _) = koszul_cohomology(&m, p, 0);
            if dim != binomial(n, p) {
                trivial_bad.push(format!("n={n} p={p}: dim {dim} != {}", binomial(n, p)));
            }
        }
    }
    let verdict = if trivial_bad.is_empty() {
        Verdict::Pass
    } else {
        Verdict::Falsification
    };
    let mut c = Check::new("koszul/one-dimensional-module-strand", verdict)
        .detail("bottom-strand dimensions match binomial coefficients for n <= 6");
    for line in trivial_bad {
        c = c.detail(line);
    }
    checks.push(c);

    let verdict = if euler_bad.is_empty() {
        Verdict::Pass
    } else {
        Verdict::Falsification
    };
    let mut c = Check::new("koszul/euler-strands", verdict).detail(format!(
        "alternating sums of chain and cohomology dimensions agree on {count} modules"
    ));
    for line in euler_bad {
        c = c.detail(line);
    }
    checks.push(c);
    Ok(checks)
}

// --------------------------------------------------- shared point corpus

const CELLS: [(usize, usize); 5] = [(2, 0), (2, 1), (3, 0), (3, 1), (3, 2)];

struct PointInstance<K: Field> {
    label: String,
    z: PointSet<K>,
    p: usize,
}

fn gen_point_config<K: Field>(
    ctx: &K::Ctx,
    seed: u64,
    base: u64,
    r: usize,
    p: usize,
    npts: usize,
    mode: usize,
) -> PointSet<K> {
    for attempt in 0..32u64 {
        let mut rng = stream(seed, base + attempt);
        let reps: Vec<Vec<K>> = if mode == 2 && r >= 3 {
            // cluster on a plane conic
            let size = (6 - p).min(npts);
            let rows = independent_rows::<K>(ctx, &mut rng, 3, r + 1);
            let ts = distinct_scalars::<K>(ctx, &mut rng, size);
            let mut pts: Vec<Vec<K>> = ts
                .iter()
                .map(|t| {
                    (0..=r)
                        .map(|k| {
                            rows[0][k].clone()
                                + rows[1][k].clone() * t.clone()
                                + rows[2][k].clone() * t.clone() * t.clone()
                        })
                        .collect()
                })
                .collect();
            for _ in size..npts {
                pts.push(rand_nonzero_vec::<K>(ctx, &mut rng, r + 1));
            }
            pts
        } else if mode == 1 || mode == 2 {
            // collinear cluster; mode 2 in the plane forces one extra point
            let mut size = if p == 0 { 4 } else { 3 };
            if mode == 2 {
                size += 1;
            }
            let size = size.min(npts);
            let rows = independent_rows::<K>(ctx, &mut rng, 2, r + 1);
            let ts = distinct_scalars::<K>(ctx, &mut rng, size);
            let mut pts: Vec<Vec<K>> = ts
                .iter()
                .map(|t| {
                    (0..=r)
                        .map(|k| rows[0][k].clone() + rows[1][k].clone() * t.clone())
                        .collect()
                })
                .collect();
            for _ in size..npts {
                pts.push(rand_nonzero_vec::<K>(ctx, &mut rng, r + 1));
            }
            pts
        } else {
            (0..npts)
                .map(|_| rand_nonzero_vec::<K>(ctx, &mut rng, r + 1))
                .collect()
        };
        if let Ok(z) = PointSet::new(ctx, r, reps) {
            return z;
        }
    }
    let mut rng = stream(seed, base + 33);
    random_point_set(ctx, r, npts, &mut rng)
}

/// The seeded configuration corpus shared by the dichotomy, module, and
/// duality suites: `per_cell` sets for each (r, p) cell, every third one
/// with a forced degenerate cluster.
fn point_corpus<K: Field>(
    ctx: &K::Ctx,
    cfg: &RunConfig,
    per_cell: usize,
    field_tag: u64,
) -> Vec<PointInstance<K>> {
    let mut out = Vec::new();
    for (ci, &(r, p)) in CELLS.iter().enumerate() {
        let npts = 2 * r + 1 - p;
        for t in 0..per_cell {
            let mode = t % 3;
            let base = IDX_POINTS + field_tag * 60_000 + ci as u64 * 10_000 + t as u64 * 64;
            let z = gen_point_config::<K>(ctx, cfg.seed, base, r, p, npts, mode);
            let mode_name = ["rand", "line", "conic"][mode];
            out.push(PointInstance {
                label: format!("r{r}p{p}/{mode_name}/{t}"),
                z,
                p,
            });
        }
    }
    out
}

// ----------------------------------------------------------- thm4 corpus

struct CorpusModule {
    label: String,
    module: GradedModule<Rat>,
    p: usize,
}

/// Modules fed to the rank-one and descent suites: designed relation
/// spaces, monomial quotients, and the degree-shifted cohomology modules
/// of every rational point configuration in the shared corpus.
fn module_corpus(cfg: &RunConfig) -> Vec<CorpusModule> {
    let mut out = Vec::new();
    let designed = (6 * cfg.trials / 10).max(60);
    for t in 0..designed {
        let mut rng = stream(cfg.seed, IDX_MODULES + t as u64);
        let n = draw(&mut rng, 2, 3);
        let m0 = draw(&mut rng, 1, 3);
        let r_dim = draw(&mut rng, 0, (m0 * n).min(5));
        let basis = if r_dim == 0 {
            Vec::new()
        } else {
            independent_rows::<Rat>(&(), &mut rng, r_dim, m0 * n)
        };
        let module = module_with_relations(&(), n, m0, &basis).expect("independent basis");
        out.push(CorpusModule {
            label: format!("designed/{t}"),
            module,
            p: m0,
        });
    }
    for t in 0..10usize {
        let mut rng = stream(cfg.seed, IDX_MODULES + 20_000 + t as u64);
        let module = random_module::<Rat>(&(), &mut rng, 0);
        out.push(CorpusModule {
            label: format!("monomial/{t}"),
            module,
            p: 1,
        });
    }
    let per_cell = (cfg.trials / 2).max(1);
    for inst in point_corpus::<Rat>(&(), cfg, per_cell, 1) {
        let h = h1_module(&inst.z).trim().rebased();
        if h.dims().is_empty() || h.dim_at(0) == 0 {
            continue;
        }
        let p = h.dim_at(0);
        out.push(CorpusModule {
            label: format!("points/{}", inst.label),
            module: h,
            p,
        });
    }
    out
}

// ----------------------------------------------------------------- thm4

fn suite_thm4(cfg: &RunConfig) -> Result<Vec<Check>> {
    let corpus = module_corpus(cfg);
    let runs: Vec<(String, crate::koszul::VanishingReport)> = corpus
        .par_iter()
        .map(|cm| {
            rank_one_vanishing_check(&cm.module, cm.p, &cfg.q_list, cfg.budget)
                .map(|r| (cm.label.clone(), r))
        })
        .collect::<Result<Vec<_>>>()?;
    let total = runs.len();
    let mut nonzero = 0usize;
    let mut unknown = 0usize;
    let mut bad: Vec<String> = Vec::new();
    let mut prop_bad: Vec<String> = Vec::new();
    for (label, rep) in &runs {
        if rep.k_dim > 0 {
            nonzero += 1;
            match rep.consistent {
                Some(true) => {}
                Some(false) => bad.push(format!(
                    "{label}: cohomology dim {} at p={} but rank-one estimate {:?}",
                    rep.k_dim, rep.p, rep.rank_one.estimate
                )),
                None => unknown += 1,
            }
        } else if rep.propagation != Some(true) {
            prop_bad.push(format!("{label}: vanishing failed to propagate above p={}", rep.p));
        }
    }
    let verdict = if !bad.is_empty() {
        Verdict::Falsification
    } else if unknown > 0 {
        Verdict::Unknown
    } else {
        Verdict::Pass
    };
    let mut dichotomy = Check::new("thm4/rank-one-dimension", verdict).detail(format!(
        "{total} modules; {nonzero} with nonzero bottom cohomology, {unknown} without usable estimate"
    ));
    for line in bad {
        dichotomy = dichotomy.detail(line);
    }
    let verdict = if prop_bad.is_empty() {
        Verdict::Pass
    } else {
        Verdict::Falsification
    };
    let mut prop = Check::new("thm4/vanishing-propagation", verdict).detail(format!(
        "{} vanishing instances propagate upward",
        total - nonzero
    ));
    for line in prop_bad {
        prop = prop.detail(line);
    }
    Ok(vec![dichotomy, prop])
}

// ----------------------------------------------------------------- cor5

fn suite_cor5(cfg: &RunConfig) -> Result<Vec<Check>> {
    let corpus = module_corpus(cfg);
    let runs: Vec<Option<(String, crate::koszul::DescentReport)>> = corpus
        .par_iter()
        .enumerate()
        .map(|(i, cm)| -> Result<Option<(String, crate::koszul::DescentReport)>> {
            let based = cm.module.rebased();
            let m0 = based.dim_at(0);
            let mut chosen = None;
            for p in (1..=m0).rev() {
                if koszul_cohomology(&based, p, 0).0 > 0 {
                    chosen = Some(p);
                    break;
                }
            }
            let Some(p) = chosen else {
                return Ok(None);
            };
            let rep = quotient_descent_check(
                &based,
                p,
                3,
                cfg.seed.wrapping_add(1 + i as u64 * 1000),
                &cfg.q_list,
                cfg.budget,
            )?;
            Ok(Some((cm.label.clone(), rep)))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut attempted = 0usize;
    let mut verified = 0usize;
    let mut inconclusive = 0usize;
    let mut bad: Vec<String> = Vec::new();
    for entry in runs.iter().flatten() {
        let (label, rep) = entry;
        attempted += 1;
        match rep.outcome {
            Some(true) => verified += 1,
            None => inconclusive += 1,
            Some(false) => bad.push(format!(
                "{label}: {} of {} surviving quotients dropped below the bound",
                rep.failures, rep.survived
            )),
        }
    }
    let verdict = if !bad.is_empty() {
        Verdict::Falsification
    } else if verified == 0 && attempted > 0 {
        Verdict::Unknown
    } else {
        Verdict::Pass
    };
    let mut check = Check::new("cor5/quotient-descent", verdict).detail(format!(
        "{attempted} modules with nonzero bottom cohomology; {verified} verified, {inconclusive} inconclusive"
    ));
    for line in bad {
        check = check.detail(line);
    }
    Ok(vec![check])
}

// --------------------------------------------------------------- lemma7

fn suite_lemma7(cfg: &RunConfig) -> Result<Vec<Check>> {
    match cfg.field {
        FieldSpec::Prime(p) => lemma7_impl::<Fp>(&p, cfg),
        FieldSpec::Rationals => lemma7_impl::<Rat>(&(), cfg),
    }
}

fn zero_action_module<K: Field>(ctx: &K::Ctx, n: usize, m0: usize) -> GradedModule<K> {
    let acts: Vec<DenseMatrix<K>> = (0..n).map(|_| DenseMatrix::zeros(0, m0, ctx)).collect();
    GradedModule::new(ctx, n, 0, vec![m0, 0], vec![acts]).expect("zero actions commute")
}

fn lemma7_impl<K: Field>(ctx: &K::Ctx, cfg: &RunConfig) -> Result<Vec<Check>> {
    let count = cfg.trials.max(100);
    let runs: Vec<Option<(bool, bool, bool)>> = (0..count)
        .into_par_iter()
        .map(|t| -> Result<Option<(bool, bool, bool)>> {
            let mut rng = stream(cfg.seed, IDX_LEMMA7 + t as u64);
            let module = match t % 3 {
                0 => zero_action_module::<K>(ctx, draw(&mut rng, 2, 4), draw(&mut rng, 1, 3)),
                1 => {
                    let n = draw(&mut rng, 2, 3);
                    let m0 = draw(&mut rng, 1, 2);
                    let r_dim = draw(&mut rng, 1, (m0 * n).min(4));
                    let basis = independent_rows::<K>(ctx, &mut rng, r_dim, m0 * n);
                    module_with_relations(ctx, n, m0, &basis).expect("independent basis")
                }
                _ => {
                    // quotient by one variable: classes supported on it
                    let n = draw(&mut rng, 2, 3);
                    let mut gen = vec![0u32; n];
                    gen[draw(&mut rng, 0, n - 1)] = 1;
                    monomial_quotient(ctx, n, draw(&mut rng, 1, 2), &[gen])
                        .expect("valid monomial data")
                }
            };
            let based = module.rebased();
            let mut found = None;
            for p in (1..=based.n()).rev() {
                let (dim, classes) = koszul_cohomology(&based, p, 0);
                if dim > 0 {
                    found = Some(classes[t % classes.len()].clone());
                    break;
                }
            }
            let Some(class) = found else {
                return Ok(None);
            };
            let v = rand_nonzero_vec::<K>(ctx, &mut rng, based.n());
            let rep = contract_class(&based, &class, &v)?;
            let hypotheses = rep.lower_piece_zero && rep.nonzero_element;
            Ok(Some((rep.cocycle_ok, hypotheses, rep.nonzero_in_cohomology)))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut contracted = 0usize;
    let mut hyp_met = 0usize;
    let mut cocycle_bad = 0usize;
    let mut nonvanish_bad = 0usize;
    for entry in runs.iter().flatten() {
        let (cocycle_ok, hypotheses, nonzero) = *entry;
        contracted += 1;
        if !cocycle_ok {
            cocycle_bad += 1;
        }
        if hypotheses {
            hyp_met += 1;
            if !nonzero {
                nonvanish_bad += 1;
            }
        }
    }
    let verdict = if cocycle_bad > 0 {
        Verdict::Falsification
    } else {
        Verdict::Pass
    };
    let cocycle = Check::new("lemma7/cocycle-after-contraction", verdict).detail(format!(
        "{contracted} classes contracted, {cocycle_bad} cocycle violations"
    ));
    let verdict = if nonvanish_bad > 0 {
        Verdict::Falsification
    } else if hyp_met == 0 {
        Verdict::Unknown
    } else {
        Verdict::Pass
    };
    let nonvanish = Check::new("lemma7/nonvanishing", verdict).detail(format!(
        "{hyp_met} contractions met the hypotheses; {nonvanish_bad} vanished in cohomology anyway"
    ));
    Ok(vec![cocycle, nonvanish])
}

// ----------------------------------------------------------------- thm6

fn suite_thm6(cfg: &RunConfig) -> Result<Vec<Check>> {
    let per_cell = (cfg.trials / 2).max(1);
    let mut checks = Vec::new();
    match cfg.field {
        FieldSpec::Prime(p) => {
            checks.extend(thm6_impl::<Fp>(&p, cfg, per_cell, 0, &format!("{}", cfg.field))?);
            checks.extend(thm6_impl::<Rat>(&(), cfg, per_cell, 1, "Q")?);
        }
        FieldSpec::Rationals => {
            checks.extend(thm6_impl::<Rat>(&(), cfg, per_cell, 1, "Q")?);
        }
    }
    Ok(checks)
}

fn thm6_impl<K: Field>(
    ctx: &K::Ctx,
    cfg: &RunConfig,
    per_cell: usize,
    field_tag: u64,
    fname: &str,
) -> Result<Vec<Check>> {
    let corpus = point_corpus::<K>(ctx, cfg, per_cell, field_tag);
    let outcomes: Vec<crate::points::DichotomyReport<K>> = corpus
        .par_iter()
        .map(|inst| dichotomy_witness(&inst.z, inst.p))
        .collect::<Result<Vec<_>>>()?;
    let mut checks = Vec::new();
    let mut anchor_total = 0usize;
    let mut anchor_bad: Vec<String> = Vec::new();
    for (ci, &(r, p)) in CELLS.iter().enumerate() {
        let cell = &outcomes[ci * per_cell..(ci + 1) * per_cell];
        let labels = &corpus[ci * per_cell..(ci + 1) * per_cell];
        let mut holds = 0usize;
        let mut witnessed = 0usize;
        let mut bad: Vec<String> = Vec::new();
        for (rep, inst) in cell.iter().zip(labels) {
            if !rep.hypothesis_met {
                bad.push(format!("{}: generated size off-hypothesis", inst.label));
                continue;
            }
            match &rep.outcome {
                DichotomyOutcome::NpHolds(_) => holds += 1,
                DichotomyOutcome::Witness {
                    indices, span_dim, ..
                } => {
                    witnessed += 1;
                    if r == 2 && p == 0 {
                        anchor_total += 1;
                        if *span_dim != 1 || indices.len() < 4 {
                            anchor_bad.push(format!(
                                "{}: witness of {} points spanning dim {span_dim}",
                                inst.label,
                                indices.len()
                            ));
                        }
                    }
                }
                DichotomyOutcome::Falsification { subsets_checked } => bad.push(format!(
                    "{}: no witness among {subsets_checked} subsets",
                    inst.label
                )),
            }
        }
        let verdict = if bad.is_empty() {
            Verdict::Pass
        } else {
            Verdict::Falsification
        };
        let mut c = Check::new(format!("thm6/{fname}/r{r}p{p}"), verdict).detail(format!(
            "{per_cell} configurations: {holds} satisfy the property, {witnessed} yield witnesses"
        ));
        for line in bad {
            c = c.detail(line);
        }
        checks.push(c);
    }
    let verdict = if anchor_bad.is_empty() {
        Verdict::Pass
    } else {
        Verdict::Falsification
    };
    let mut c = Check::new(format!("thm6/{fname}/five-point-anchor"), verdict).detail(format!(
        "{anchor_total} planar witnesses, all with >= 4 points on a line"
    ));
    for line in anchor_bad {
        c = c.detail(line);
    }
    checks.push(c);
    Ok(checks)
}

// ------------------------------------------------------------------ rnc

fn suite_rnc(cfg: &RunConfig) -> Result<Vec<Check>> {
    match cfg.field {
        FieldSpec::Prime(p) => rnc_impl::<Fp>(&p, cfg),
        FieldSpec::Rationals => rnc_impl::<Rat>(&(), cfg),
    }
}

fn rnc_config<K: Field>(ctx: &K::Ctx, r: usize, count: usize) -> Result<PointSet<K>> {
    let mut params: Vec<CurveParam<K>> = (0..count as i64 - 1)
        .map(|i| CurveParam::Finite(K::from_i64(ctx, i)))
        .collect();
    params.push(CurveParam::Infinity);
    rnc_points(ctx, r, &params)
}

fn rnc_impl<K: Field>(ctx: &K::Ctx, cfg: &RunConfig) -> Result<Vec<Check>> {
    let _ = cfg;
    let mut checks = Vec::new();
    for &(r, p) in CELLS.iter() {
        let over = rnc_config::<K>(ctx, r, 2 * r + 2 - p)?;
        let over_rep = np_check(&over, p);
        let sharp = rnc_config::<K>(ctx, r, 2 * r + 1 - p)?;
        let sharp_rep = np_check(&sharp, p);
        let mut details = vec![format!(
            "{} points on the degree-{r} curve: N_{p} {}",
            2 * r + 2 - p,
            if over_rep.holds { "holds" } else { "fails" }
        )];
        if let Some(f) = &over_rep.failure {
            details.push(format!("failure certificate: {f}"));
        }
        details.push(format!(
            "{} points: N_{p} {}",
            2 * r + 1 - p,
            if sharp_rep.holds { "holds" } else { "fails" }
        ));
        let verdict = if over_rep.holds {
            Verdict::Falsification
        } else if !sharp_rep.holds {
            Verdict::Fail
        } else {
            Verdict::Pass
        };
        let mut c = Check::new(format!("rnc/r{r}p{p}"), verdict);
        for line in details {
            c = c.detail(line);
        }
        checks.push(c);
    }

    let conic = rnc_config::<K>(ctx, 2, 6)?;
    let h1 = h1_ideal(&conic, 2);
    checks.push(
        Check::new(
            "rnc/six-on-conic",
            if h1 == 1 { Verdict::Pass } else { Verdict::Fail },
        )
        .detail(format!("quadric deficiency h1 = {h1}, expected 1")),
    );
    let cubic = rnc_config::<K>(ctx, 3, 8)?;
    let h1 = h1_ideal(&cubic, 2);
    checks.push(
        Check::new(
            "rnc/eight-on-twisted-cubic",
            if h1 >= 1 { Verdict::Pass } else { Verdict::Fail },
        )
        .detail(format!("quadric deficiency h1 = {h1}, expected >= 1")),
    );
    Ok(checks)
}

// -------------------------------------------------------------- duality

fn suite_duality(cfg: &RunConfig) -> Result<Vec<Check>> {
    let per_cell = (cfg.trials / 2).max(1);
    let mut checks = Vec::new();
    match cfg.field {
        FieldSpec::Prime(p) => {
            checks.extend(duality_impl::<Fp>(&p, cfg, per_cell, 0, &format!("{}", cfg.field))?);
            checks.extend(duality_impl::<Rat>(&(), cfg, per_cell, 1, "Q")?);
        }
        FieldSpec::Rationals => {
            checks.extend(duality_impl::<Rat>(&(), cfg, per_cell, 1, "Q")?);
        }
    }
    Ok(checks)
}

fn duality_impl<K: Field>(
    ctx: &K::Ctx,
    cfg: &RunConfig,
    per_cell: usize,
    field_tag: u64,
    fname: &str,
) -> Result<Vec<Check>> {
    let mut corpus = point_corpus::<K>(ctx, cfg, per_cell, field_tag);
    for &(r, p) in CELLS.iter() {
        corpus.push(PointInstance {
            label: format!("rnc/r{r}p{p}"),
            z: rnc_config::<K>(ctx, r, 2 * r + 2 - p)?,
            p,
        });
    }
    let results: Vec<(Vec<String>, Vec<String>)> = corpus
        .par_iter()
        .enumerate()
        .map(|(i, inst)| {
            let z = &inst.z;
            let r = z.r();
            let table = betti_table(z);
            let gamma = h1_module(z).dual_reversed();
            let mut strand_bad = Vec::new();
            for p in 1..=r {
                let lhs = table.beta(p, p + 2);
                let rhs = koszul_cohomology(&gamma, p + 1, 1).0;
                if lhs != rhs {
                    strand_bad.push(format!(
                        "{}: beta({p},{}) = {lhs} but cohomology dim = {rhs}",
                        inst.label,
                        p + 2
                    ));
                }
            }
            let mut involution_bad = Vec::new();
            if i % 8 == 0 {
                let m = h1_module(z);
                let rev = m.dual_reversed();
                let c = m.q_min() + m.q_max();
                let n = m.n();
                for ii in 0..=n {
                    for j in m.q_min()..=m.q_max() {
                        let lhs = koszul_cohomology(&m, ii, j).0;
                        let rhs = koszul_cohomology(&rev, n - ii, c - j).0;
                        if lhs != rhs {
                            involution_bad.push(format!(
                                "{}: dim K_{{{ii},{j}}} = {lhs} but reversed dual gives {rhs}",
                                inst.label
                            ));
                        }
                    }
                }
            }
            (strand_bad, involution_bad)
        })
        .collect();
    let total = corpus.len();
    let strand_bad: Vec<String> = results.iter().flat_map(|(s, _)| s.clone()).collect();
    let involution_bad: Vec<String> = results.iter().flat_map(|(_, v)| v.clone()).collect();
    let sampled = results.len().div_ceil(8);

    let verdict = if strand_bad.is_empty() {
        Verdict::Pass
    } else {
        Verdict::Falsification
    };
    let mut strand = Check::new(format!("duality/{fname}/second-strand"), verdict).detail(
        format!("{total} configurations: quadratic-strand Betti numbers match the cohomology of the dualized module"),
    );
    for line in strand_bad {
        strand = strand.detail(line);
    }
    let verdict = if involution_bad.is_empty() {
        Verdict::Pass
    } else {
        Verdict::Falsification
    };
    let mut invo = Check::new(format!("duality/{fname}/reversal"), verdict).detail(format!(
        "{sampled} modules: all bidegree dimensions invariant under dualize-and-reverse"
    ));
    for line in involution_bad {
        invo = invo.detail(line);
    }
    Ok(vec![strand, invo])
}

// ---------------------------------------------------------------- betti

fn suite_betti(cfg: &RunConfig) -> Result<Vec<Check>> {
    match cfg.field {
        FieldSpec::Prime(p) => betti_impl::<Fp>(&p, cfg),
        FieldSpec::Rationals => betti_impl::<Rat>(&(), cfg),
    }
}

fn int_points<K: Field>(ctx: &K::Ctx, coords: &[[i64; 3]]) -> PointSet<K> {
    let reps = coords
        .iter()
        .map(|row| row.iter().map(|&v| K::from_i64(ctx, v)).collect())
        .collect();
    PointSet::new(ctx, 2, reps).expect("distinct points")
}

fn betti_impl<K: Field>(ctx: &K::Ctx, cfg: &RunConfig) -> Result<Vec<Check>> {
    let _ = cfg;
    let three = int_points::<K>(ctx, &[[1, 0, 0], [0, 1, 0], [0, 0, 1]]);
    let four = int_points::<K>(ctx, &[[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]]);
    let collinear = int_points::<K>(ctx, &[[1, 0, 0], [1, 1, 0], [1, 2, 0], [1, 3, 0]]);

    let mut checks = Vec::new();
    let cases: [(&str, &PointSet<K>, Vec<((usize, usize), usize)>); 3] = [
        (
            "betti/three-general",
            &three,
            vec![((1, 2), 3), ((2, 3), 2)],
        ),
        (
            "betti/four-general",
            &four,
            vec![((1, 2), 2), ((2, 4), 1)],
        ),
        (
            "betti/four-collinear",
            &collinear,
            vec![((1, 1), 1), ((1, 4), 1)],
        ),
    ];
    let mut tables = Vec::new();
    for (name, z, expected) in &cases {
        let table = betti_table(z);
        let mut bad = Vec::new();
        for &((i, j), want) in expected {
            let got = table.beta(i, j);
            if got != want {
                bad.push(format!("beta({i},{j}) = {got}, expected {want}"));
            }
        }
        let verdict = if bad.is_empty() {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        let mut c = Check::new(*name, verdict);
        let wanted: Vec<String> = expected
            .iter()
            .map(|((i, j), v)| format!("beta({i},{j})={v}"))
            .collect();
        c = c.detail(wanted.join(", "));
        for line in bad {
            c = c.detail(line);
        }
        checks.push(c);
        tables.push((name.to_string(), table));
    }

    // second path to the same numbers through the cohomology module
    let mut cross_bad = Vec::new();
    let mut cross_count = 0usize;
    for (name, z) in [
        ("three-general", &three),
        ("four-general", &four),
        ("four-collinear", &collinear),
    ] {
        let table = betti_table(z);
        let gamma = h1_module(z).dual_reversed();
        for p in 1..=z.r() {
            cross_count += 1;
            let lhs = table.beta(p, p + 2);
            let rhs = koszul_cohomology(&gamma, p + 1, 1).0;
            if lhs != rhs {
                cross_bad.push(format!("{name}: beta({p},{}) {lhs} vs dual path {rhs}", p + 2));
            }
        }
    }
    let verdict = if cross_bad.is_empty() {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    let mut c = Check::new("betti/two-paths", verdict).detail(format!(
        "{cross_count} quadratic-strand entries recomputed through the dualized cohomology module"
    ));
    for line in cross_bad {
        c = c.detail(line);
    }
    checks.push(c);
    let _ = tables;
    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Report;

    fn small_cfg() -> RunConfig {
        RunConfig {
            trials: 12,
            ..RunConfig::default()
        }
    }

    #[test]
    fn unknown_suite_is_rejected() {
        let err = run_suite("nope", &RunConfig::default()).unwrap_err();
        assert!(err.to_string().contains("unknown suite"));
    }

    #[test]
    fn betti_suite_matches_ground_truth() {
        let checks = run_suite("betti", &small_cfg()).unwrap();
        assert!(checks.iter().all(|c| c.verdict == Verdict::Pass), "{checks:?}");
    }

    #[test]
    fn rnc_suite_passes() {
        let checks = run_suite("rnc", &small_cfg()).unwrap();
        assert!(checks.iter().all(|c| c.verdict == Verdict::Pass), "{checks:?}");
    }

    #[test]
    fn prop1_small_run_passes() {
        let mut cfg = small_cfg();
        cfg.trials = 4;
        let checks = run_suite("prop1", &cfg).unwrap();
        assert_eq!(checks.len(), 4);
        assert!(checks.iter().all(|c| c.verdict == Verdict::Pass), "{checks:?}");
    }

    #[test]
    fn reports_are_reproducible() {
        let cfg = RunConfig {
            trials: 6,
            ..RunConfig::default()
        };
        let render = |checks: Vec<Check>| {
            let mut rep = Report::new("verify lemma7");
            for c in checks {
                rep.push(c);
            }
            rep.render()
        };
        let a = render(run_suite("lemma7", &cfg).unwrap());
        let b = render(run_suite("lemma7", &cfg).unwrap());
        assert_eq!(a, b);
    }
}
