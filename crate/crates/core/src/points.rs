//! Finite point sets in projective space: evaluation of forms at the
//! points, cohomology counts h⁰/h¹ of twisted ideals, coordinate-ring and
//! dual-cohomology modules, Betti tables, the syzygy property N_p, and
//! witness searches for its failure.
//!
//! All representatives are normalized so the last nonzero coordinate is 1;
//! that single choice of trivialization makes every multiplication map
//! coordinatewise and keeps evaluation compatible across degrees.

use std::collections::BTreeMap;
use std::fmt;

use rand_core::RngCore;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::{Field, Fp, Rat};
use crate::koszul::{koszul_cohomology, GradedModule};
use crate::matrix::DenseMatrix;
use crate::multilinear::{exponents, subsets};
use crate::reduce::vec_to_fp;

/// A finite set of at least one point in P^r, stored as normalized,
/// pairwise non-proportional representatives in k^{r+1}.
#[derive(Clone, Debug, PartialEq)]
pub struct PointSet<K: Field> {
    r: usize,
    ctx: K::Ctx,
    points: Vec<Vec<K>>,
}

impl<K: Field> PointSet<K> {
    /// Normalizes the representatives (last nonzero coordinate becomes 1)
    /// and rejects zero vectors and proportional pairs.
    pub fn new(ctx: &K::Ctx, r: usize, reps: Vec<Vec<K>>) -> Result<Self> {
        if reps.is_empty() {
            return Err(Error::invalid("a point set needs at least one point"));
        }
        let mut points = Vec::with_capacity(reps.len());
        for (idx, v) in reps.into_iter().enumerate() {
            if v.len() != r + 1 {
                return Err(Error::shape(format!(
                    "point {idx} has {} coordinates, expected {}",
                    v.len(),
                    r + 1
                )));
            }
            let v = v
                .into_iter()
                .map(|c| c.bind(ctx))
                .collect::<Result<Vec<K>>>()?;
            let Some(last) = v.iter().rposition(|c| !c.is_zero()) else {
                return Err(Error::invalid(format!("point {idx} is the zero vector")));
            };
            let inv = v[last].inv().expect("nonzero coordinate");
            points.push(v.into_iter().map(|c| c * inv.clone()).collect::<Vec<K>>());
        }
        for i in 0..points.len() {
            for j in (i + 1)..points.len() {
                if points[i] == points[j] {
                    return Err(Error::invalid(format!(
                        "points {i} and {j} are proportional"
                    )));
                }
            }
        }
        Ok(PointSet {
            r,
            ctx: ctx.clone(),
            points,
        })
    }

    pub fn r(&self) -> usize {
        self.r
    }

    /// Dimension of the ambient vector space V = k^{r+1}.
    pub fn ambient_dim(&self) -> usize {
        self.r + 1
    }

    pub fn ctx(&self) -> &K::Ctx {
        &self.ctx
    }

    pub fn n_points(&self) -> usize {
        self.points.len()
    }

    pub fn point(&self, i: usize) -> &[K] {
        &self.points[i]
    }

    pub fn points(&self) -> &[Vec<K>] {
        &self.points
    }

    /// The sub-point-set on strictly increasing indices.
    pub fn subset(&self, indices: &[usize]) -> Result<PointSet<K>> {
        if indices.is_empty() {
            return Err(Error::invalid("a point set needs at least one point"));
        }
        if indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::invalid("subset indices must be strictly increasing"));
        }
        if *indices.last().unwrap() >= self.points.len() {
            return Err(Error::invalid(format!(
                "subset index {} out of range for {} points",
                indices.last().unwrap(),
                self.points.len()
            )));
        }
        Ok(PointSet {
            r: self.r,
            ctx: self.ctx.clone(),
            points: indices.iter().map(|&i| self.points[i].clone()).collect(),
        })
    }

    /// Re-coordinatizes the points inside their linear span. Returns the
    /// new point set together with the projective dimension of the span.
    pub fn restricted_to_span(&self) -> Result<(PointSet<K>, usize)> {
        let mat = DenseMatrix::from_row_vectors(&self.ctx, &self.points, self.r + 1)?;
        let basis = mat.row_space_basis();
        let s1 = basis.len();
        let cols = DenseMatrix::from_fn(self.r + 1, s1, &self.ctx, |i, j| basis[j][i].clone());
        let reps = self
            .points
            .iter()
            .map(|p| cols.solve(p).expect("point lies in its own span"))
            .collect();
        Ok((PointSet::new(&self.ctx, s1 - 1, reps)?, s1 - 1))
    }
}

/// Seeded random point set: uniform coordinates, retrying any zero vector
/// or proportional collision.
pub fn random_point_set<K: Field>(
    ctx: &K::Ctx,
    r: usize,
    n: usize,
    rng: &mut impl RngCore,
) -> PointSet<K> {
    let mut reps: Vec<Vec<K>> = Vec::with_capacity(n);
    while reps.len() < n {
        let cand: Vec<K> = (0..=r).map(|_| K::random(ctx, rng)).collect();
        if cand.iter().all(|c| c.is_zero()) {
            continue;
        }
        let mut trial = reps.clone();
        trial.push(cand);
        if let Ok(z) = PointSet::new(ctx, r, trial) {
            reps = z.points;
        }
    }
    PointSet {
        r,
        ctx: ctx.clone(),
        points: reps,
    }
}

fn powi<K: Field>(ctx: &K::Ctx, x: &K, e: u32) -> K {
    let mut acc = K::one_in(ctx);
    for _ in 0..e {
        acc = acc * x.clone();
    }
    acc
}

/// The N×dim(S^dV) matrix evaluating each degree-d monomial at each
/// normalized representative; row i, column = monomial index.
pub fn evaluation_matrix<K: Field>(z: &PointSet<K>, d: usize) -> DenseMatrix<K> {
    let n = z.ambient_dim();
    let exps = exponents(n, d);
    DenseMatrix::from_fn(z.n_points(), exps.len(), &z.ctx, |i, j| {
        let mut acc = K::one_in(&z.ctx);
        for (k, &e) in exps[j].iter().enumerate() {
            if e > 0 {
                acc = acc * powi(&z.ctx, &z.points[i][k], e);
            }
        }
        acc
    })
}

/// dim H⁰(I_Z(d)): forms of degree d vanishing on all points.
pub fn h0_ideal<K: Field>(z: &PointSet<K>, d: usize) -> usize {
    let ev = evaluation_matrix(z, d);
    ev.cols() - ev.rank()
}

/// dim H¹(I_Z(d)): failure of the points to impose independent
/// conditions in degree d.
pub fn h1_ideal<K: Field>(z: &PointSet<K>, d: usize) -> usize {
    z.n_points() - evaluation_matrix(z, d).rank()
}

/// Smallest d with rank ev_d = N; at most N−1 for distinct points.
pub fn saturation_degree<K: Field>(z: &PointSet<K>) -> usize {
    let n = z.n_points();
    let mut d = 0;
    loop {
        if evaluation_matrix(z, d).rank() == n {
            return d;
        }
        d += 1;
        assert!(d <= n, "evaluation rank must reach the point count");
    }
}

/// Degreewise image of evaluation in k^N for d = 0..=dmax, with the
/// coordinatewise variable action expressed in the canonical bases.
fn coordinate_ring_window<K: Field>(z: &PointSet<K>, dmax: usize) -> GradedModule<K> {
    let n = z.ambient_dim();
    let npts = z.n_points();
    let bases: Vec<Vec<Vec<K>>> = (0..=dmax)
        .map(|d| evaluation_matrix(z, d).image_basis())
        .collect();
    let dims: Vec<usize> = bases.iter().map(Vec::len).collect();
    let col_mats: Vec<DenseMatrix<K>> = bases
        .iter()
        .map(|b| DenseMatrix::from_fn(npts, b.len(), &z.ctx, |i, j| b[j][i].clone()))
        .collect();
    let mut mult = Vec::with_capacity(dmax);
    for d in 0..dmax {
        let acts: Vec<DenseMatrix<K>> = (0..n)
            .map(|k| {
                let mut m = DenseMatrix::zeros(dims[d + 1], dims[d], &z.ctx);
                for (c, v) in bases[d].iter().enumerate() {
                    let w: Vec<K> = (0..npts)
                        .map(|i| z.points[i][k].clone() * v[i].clone())
                        .collect();
                    let coords = col_mats[d + 1]
                        .solve(&w)
                        .expect("scaled function stays in the next degree's image");
                    for (r, val) in coords.into_iter().enumerate() {
                        m.set(r, c, val);
                    }
                }
                m
            })
            .collect();
        mult.push(acts);
    }
    GradedModule::new(&z.ctx, n, 0, dims, mult).expect("coordinatewise actions commute")
}

/// The homogeneous coordinate ring of the point set, truncated one step
/// past the saturation degree. Its dimensions are the Hilbert function.
pub fn coordinate_ring<K: Field>(z: &PointSet<K>) -> GradedModule<K> {
    coordinate_ring_window(z, saturation_degree(z) + 1)
}

/// The duals of the deficiency spaces H¹(I_Z(k))* = (image of ev_k)^⊥,
/// graded in reverse: piece q holds degree d_sat − q, so the
/// coordinatewise action increases q. Piece 0 is always zero.
pub fn h1_module<K: Field>(z: &PointSet<K>) -> GradedModule<K> {
    let n = z.ambient_dim();
    let npts = z.n_points();
    let d_sat = saturation_degree(z);
    let perp: Vec<Vec<Vec<K>>> = (0..=d_sat)
        .map(|d| {
            let basis = evaluation_matrix(z, d).image_basis();
            DenseMatrix::from_row_vectors(&z.ctx, &basis, npts)
                .expect("image basis shape")
                .kernel_basis()
        })
        .collect();
    let dims: Vec<usize> = (0..=d_sat).map(|q| perp[d_sat - q].len()).collect();
    let col_mats: Vec<DenseMatrix<K>> = perp
        .iter()
        .map(|b| DenseMatrix::from_fn(npts, b.len(), &z.ctx, |i, j| b[j][i].clone()))
        .collect();
    let mut mult = Vec::with_capacity(d_sat);
    for q in 0..d_sat {
        let k_src = d_sat - q;
        let acts: Vec<DenseMatrix<K>> = (0..n)
            .map(|k| {
                let mut m = DenseMatrix::zeros(dims[q + 1], dims[q], &z.ctx);
                for (c, phi) in perp[k_src].iter().enumerate() {
                    let w: Vec<K> = (0..npts)
                        .map(|i| z.points[i][k].clone() * phi[i].clone())
                        .collect();
                    let coords = col_mats[k_src - 1]
                        .solve(&w)
                        .expect("scaled functional stays orthogonal one degree down");
                    for (r, val) in coords.into_iter().enumerate() {
                        m.set(r, c, val);
                    }
                }
                m
            })
            .collect();
        mult.push(acts);
    }
    GradedModule::new(&z.ctx, n, 0, dims, mult).expect("coordinatewise actions commute")
}

/// Graded Betti numbers β_{i,j} of the quotient of the polynomial ring by
/// the vanishing ideal of the points.
#[derive(Clone, Debug, PartialEq)]
pub struct BettiTable {
    /// Regularity bound: β_{i,j} = 0 for j − i > reg (= saturation degree).
    pub reg: usize,
    /// Largest homological index scanned (the ambient dim r+1).
    pub max_i: usize,
    beta: BTreeMap<(usize, usize), usize>,
}

impl BettiTable {
    pub fn beta(&self, i: usize, j: usize) -> usize {
        self.beta.get(&(i, j)).copied().unwrap_or(0)
    }

    /// Nonzero entries in (i, j) order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        self.beta.iter().map(|(&(i, j), &b)| (i, j, b))
    }

    /// TSV rendering: rows i, columns j − i, "." for zero entries.
    pub fn render_tsv(&self) -> String {
        let max_i = self.beta.keys().map(|&(i, _)| i).max().unwrap_or(0);
        let mut out = String::from("i\\j-i");
        for q in 0..=self.reg {
            out.push_str(&format!("\t{q}"));
        }
        out.push('\n');
        for i in 0..=max_i {
            out.push_str(&i.to_string());
            for q in 0..=self.reg {
                let b = self.beta(i, i + q);
                if b == 0 {
                    out.push_str("\t.");
                } else {
                    out.push_str(&format!("\t{b}"));
                }
            }
            out.push('\n');
        }
        out
    }
}

/// Betti table via Koszul cohomology of the coordinate ring:
/// β_{i,j} = dim K_{i,j−i}. The strand one past the saturation degree is
/// computed as well and asserted to vanish.
pub fn betti_table<K: Field>(z: &PointSet<K>) -> BettiTable {
    let d_sat = saturation_degree(z);
    let ring = coordinate_ring_window(z, d_sat + 2);
    let n = z.ambient_dim();
    let mut beta = BTreeMap::new();
    for i in 0..=n {
        for q in 0..=(d_sat + 1) {
            let dim = koszul_cohomology(&ring, i, q as i64).0;
            if q == d_sat + 1 {
                assert_eq!(
                    dim, 0,
                    "syzygies may not extend past the saturation window (i={i}, strand {q})"
                );
            } else if dim > 0 {
                beta.insert((i, i + q), dim);
            }
        }
    }
    BettiTable {
        reg: d_sat,
        max_i: n,
        beta,
    }
}

/// Why N_p failed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NpFailure {
    /// The points fail to impose independent conditions on quadrics.
    Quadrics { h1: usize },
    /// A nonlinear strand entry β_{i,j} with i ≤ p and j ≥ i+2.
    Syzygy { i: usize, j: usize, beta: usize },
}

impl fmt::Display for NpFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NpFailure::Quadrics { h1 } => write!(f, "h1(ideal(2)) = {h1}"),
            NpFailure::Syzygy { i, j, beta } => write!(f, "beta({i},{j}) = {beta}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NpReport {
    pub p: usize,
    pub holds: bool,
    pub failure: Option<NpFailure>,
}

/// Property N_p: independent conditions on quadrics (p = 0), plus
/// vanishing of β_{i,j} for 1 ≤ i ≤ p, j ≥ i+2 (quadric generation at
/// i = 1, linear syzygy steps beyond). The certificate is the quadric
/// deficiency or the first failing (i, j) in lexicographic order.
pub fn np_check<K: Field>(z: &PointSet<K>, p: usize) -> NpReport {
    let h1 = h1_ideal(z, 2);
    if h1 > 0 {
        return NpReport {
            p,
            holds: false,
            failure: Some(NpFailure::Quadrics { h1 }),
        };
    }
    if p > 0 {
        let table = betti_table(z);
        for i in 1..=p.min(table.max_i) {
            for j in (i + 2)..=(i + table.reg) {
                let b = table.beta(i, j);
                if b > 0 {
                    return NpReport {
                        p,
                        holds: false,
                        failure: Some(NpFailure::Syzygy { i, j, beta: b }),
                    };
                }
            }
        }
    }
    NpReport {
        p,
        holds: true,
        failure: None,
    }
}

/// A parameter value on the degree-r rational normal curve.
#[derive(Clone, Debug, PartialEq)]
pub enum CurveParam<K> {
    Finite(K),
    Infinity,
}

/// Points (1, t, t², …, t^r) on the rational normal curve, with
/// Infinity = (0, …, 0, 1). Parameters must be distinct.
pub fn rnc_points<K: Field>(
    ctx: &K::Ctx,
    r: usize,
    params: &[CurveParam<K>],
) -> Result<PointSet<K>> {
    if r == 0 {
        return Err(Error::invalid("the curve needs ambient dimension r >= 1"));
    }
    for i in 0..params.len() {
        for j in (i + 1)..params.len() {
            if params[i] == params[j] {
                return Err(Error::invalid(format!(
                    "curve parameters {i} and {j} coincide"
                )));
            }
        }
    }
    let reps = params
        .iter()
        .map(|p| match p {
            CurveParam::Finite(t) => (0..=r).map(|e| powi(ctx, t, e as u32)).collect(),
            CurveParam::Infinity => {
                let mut v = vec![K::zero_in(ctx); r + 1];
                v[r] = K::one_in(ctx);
                v
            }
        })
        .collect();
    PointSet::new(ctx, r, reps)
}

/// Witness extracted from a minimal subset failing to impose independent
/// conditions on quadrics.
#[derive(Clone, Debug)]
pub struct N0Witness<K: Field> {
    /// Indices of the minimal violating subset, in the original set.
    pub indices: Vec<usize>,
    /// A functional in the quadric deficiency space with no zero
    /// coordinate on the subset.
    pub phi: Vec<K>,
    /// h¹ of the subset's ideal in degree 1.
    pub h1_linear: usize,
    /// A linear form vanishing on the whole subset, when the deficiency
    /// in degree 1 is small enough to force one; None otherwise (the
    /// dichotomy's recursion branch).
    pub hyperplane: Option<Vec<K>>,
}

/// Greedy minimal subset violating independence on quadrics, a
/// full-support deficiency functional on it, and a linear form through
/// all its points when one is forced.
pub fn n0_witness_hyperplane<K: Field>(z: &PointSet<K>) -> Result<N0Witness<K>> {
    if h1_ideal(z, 2) == 0 {
        return Err(Error::invalid("N_0 holds"));
    }
    let mut indices: Vec<usize> = (0..z.n_points()).collect();
    'outer: loop {
        for t in 0..indices.len() {
            if indices.len() == 1 {
                break;
            }
            let mut cand = indices.clone();
            cand.remove(t);
            if h1_ideal(&z.subset(&cand)?, 2) > 0 {
                indices = cand;
                continue 'outer;
            }
        }
        break;
    }
    let zs = z.subset(&indices)?;
    let npts = zs.n_points();
    let basis = evaluation_matrix(&zs, 2).image_basis();
    let perp = DenseMatrix::from_row_vectors(&zs.ctx, &basis, npts)?.kernel_basis();
    // a generic combination has full support; by minimality every
    // coordinate is nonzero on some basis vector, so scanning scalar
    // geometric weights finds one
    let mut phi = None;
    'scan: for c in 0..=(npts * perp.len() + 1) as i64 {
        let cv = K::from_i64(&zs.ctx, c);
        let mut cand = vec![K::zero_in(&zs.ctx); npts];
        let mut weight = K::one_in(&zs.ctx);
        for b in &perp {
            for (dst, src) in cand.iter_mut().zip(b) {
                *dst = dst.clone() + weight.clone() * src.clone();
            }
            weight = weight * cv.clone();
        }
        if cand.iter().all(|x| !x.is_zero()) {
            phi = Some(cand);
            break 'scan;
        }
    }
    let phi = phi.ok_or_else(|| {
        Error::invalid("no full-support deficiency functional found (minimality violated)")
    })?;
    // kernel of h ↦ (h(p_i)·φ_i): since every φ_i ≠ 0 this is exactly
    // the space of linear forms vanishing on the subset
    let d = DenseMatrix::from_fn(npts, z.r + 1, &zs.ctx, |i, k| {
        zs.points[i][k].clone() * phi[i].clone()
    });
    let kernel = d.kernel_basis();
    let hyperplane = kernel.into_iter().next();
    if let Some(h) = &hyperplane {
        for i in 0..npts {
            let val = (0..=z.r).fold(K::zero_in(&zs.ctx), |acc, k| {
                acc + h[k].clone() * zs.points[i][k].clone()
            });
            assert!(val.is_zero(), "hyperplane must vanish on the subset");
        }
    }
    Ok(N0Witness {
        indices,
        phi,
        h1_linear: h1_ideal(&zs, 1),
        hyperplane,
    })
}

/// One decomposition stratum of the rank-one relation locus: linear
/// forms through Z′ tensored with degree-d deficiency functionals
/// supported on Z′.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stratum {
    pub z_prime: Vec<usize>,
    pub h0: usize,
    pub h1: usize,
    /// Affine dimension h0 + h1 − 1 of the stratum's cone.
    pub cone_dim: usize,
}

#[derive(Clone, Debug)]
pub struct RankOneStrata {
    pub d: usize,
    /// Strata with a nonempty cone (both factors nonzero), in subset
    /// bitmask order.
    pub strata: Vec<Stratum>,
    /// Exact affine dimension of the rank-one locus; None when the locus
    /// is only the origin.
    pub max_dim: Option<usize>,
}

/// Exact affine dimension of the locus of rank-one elements l⊗φ with
/// l(p_i)·φ_i = 0 for all i and φ orthogonal to the degree-d image:
/// the maximum of h0(Z′, 1) + h1(Z′, d) − 1 over subsets Z′.
pub fn rank_one_relations_points<K: Field>(z: &PointSet<K>, d: usize) -> Result<RankOneStrata> {
    let npts = z.n_points();
    if npts > 20 {
        return Err(Error::Budget {
            needed: 1u128 << npts,
            budget: 1 << 20,
        });
    }
    let strata: Vec<Stratum> = (1u32..(1u32 << npts))
        .into_par_iter()
        .filter_map(|mask| {
            let idx: Vec<usize> = (0..npts).filter(|&i| mask >> i & 1 == 1).collect();
            let zs = z.subset(&idx).expect("mask indices are valid");
            let h0 = h0_ideal(&zs, 1);
            if h0 == 0 {
                return None;
            }
            let h1 = h1_ideal(&zs, d);
            if h1 == 0 {
                return None;
            }
            Some(Stratum {
                z_prime: idx,
                h0,
                h1,
                cone_dim: h0 + h1 - 1,
            })
        })
        .collect();
    let max_dim = strata.iter().map(|s| s.cone_dim).max();
    Ok(RankOneStrata { d, strata, max_dim })
}

#[derive(Clone, Debug)]
pub enum DichotomyOutcome<K: Field> {
    /// N_p holds for the whole set.
    NpHolds(NpReport),
    /// A subset on a small linear span with at least 2·dim L + 2 − p
    /// points that fails N_p inside its span.
    Witness {
        indices: Vec<usize>,
        span_dim: usize,
        restricted: PointSet<K>,
        proof: NpReport,
    },
    /// Exhausted every subset without finding a guaranteed witness:
    /// indicates an implementation bug.
    Falsification { subsets_checked: usize },
}

#[derive(Clone, Debug)]
pub struct DichotomyReport<K: Field> {
    pub p: usize,
    /// Whether |Z| = 2r + 1 − p, the size the dichotomy addresses.
    pub hypothesis_met: bool,
    pub outcome: DichotomyOutcome<K>,
}

/// Either N_p holds, or some subset of at least 2·dim(span) + 2 − p
/// points fails N_p inside its span. Subsets are scanned largest first,
/// lexicographically within a size.
pub fn dichotomy_witness<K: Field>(z: &PointSet<K>, p: usize) -> Result<DichotomyReport<K>> {
    let npts = z.n_points();
    if npts > 16 {
        return Err(Error::Budget {
            needed: 1u128 << npts,
            budget: 1 << 16,
        });
    }
    let hypothesis_met = npts as i64 == 2 * z.r as i64 + 1 - p as i64;
    let full = np_check(z, p);
    if full.holds {
        return Ok(DichotomyReport {
            p,
            hypothesis_met,
            outcome: DichotomyOutcome::NpHolds(full),
        });
    }
    let mut checked = 0;
    for size in (1..=npts).rev() {
        for idx in subsets(npts, size) {
            checked += 1;
            let zs = z.subset(&idx)?;
            let (restricted, span_dim) = zs.restricted_to_span()?;
            if (size as i64) < 2 * span_dim as i64 + 2 - p as i64 {
                continue;
            }
            let proof = np_check(&restricted, p);
            if !proof.holds {
                return Ok(DichotomyReport {
                    p,
                    hypothesis_met,
                    outcome: DichotomyOutcome::Witness {
                        indices: idx,
                        span_dim,
                        restricted,
                        proof,
                    },
                });
            }
        }
    }
    Ok(DichotomyReport {
        p,
        hypothesis_met,
        outcome: DichotomyOutcome::Falsification {
            subsets_checked: checked,
        },
    })
}

/// Reduces a rational point set modulo p. Fails when a denominator hits
/// the prime or two points collide after reduction.
pub fn points_mod_p(z: &PointSet<Rat>, p: u64) -> Result<PointSet<Fp>> {
    let reps = z
        .points
        .iter()
        .map(|v| vec_to_fp(v, p))
        .collect::<Result<Vec<_>>>()?;
    PointSet::new(&p, z.r, reps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multilinear::binomial;
    use crate::rng::stream;
    use num_traits::Zero;

    const P: u64 = 10007;

    fn fp(v: i64) -> Fp {
        Fp::new(v, P)
    }

    fn fp_points(r: usize, reps: &[&[i64]]) -> PointSet<Fp> {
        PointSet::new(
            &P,
            r,
            reps.iter()
                .map(|p| p.iter().map(|&v| fp(v)).collect())
                .collect(),
        )
        .unwrap()
    }

    fn q_points(r: usize, reps: &[&[i64]]) -> PointSet<Rat> {
        PointSet::new(
            &(),
            r,
            reps.iter()
                .map(|p| p.iter().map(|&v| Rat::from_int(v)).collect())
                .collect(),
        )
        .unwrap()
    }

    fn collinear4() -> PointSet<Fp> {
        fp_points(2, &[&[0, 1, 0], &[1, 1, 0], &[2, 1, 0], &[3, 1, 0]])
    }

    fn general3() -> PointSet<Fp> {
        fp_points(2, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])
    }

    fn general4() -> PointSet<Fp> {
        fp_points(2, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1]])
    }

    #[test]
    fn normalization_and_rejection() {
        let z = q_points(1, &[&[2, 4]]);
        assert_eq!(z.point(0), &[Rat::ratio(1, 2), Rat::from_int(1)]);
        // proportional pair rejected
        let err = PointSet::new(
            &P,
            1,
            vec![vec![fp(1), fp(2)], vec![fp(2), fp(4)]],
        )
        .unwrap_err();
        assert!(err.to_string().contains("proportional"));
        // zero vector rejected
        assert!(PointSet::new(&P, 1, vec![vec![fp(0), fp(0)]]).is_err());
        assert!(PointSet::<Fp>::new(&P, 1, vec![]).is_err());
    }

    #[test]
    fn evaluation_oracles() {
        let z = general3();
        let ev0 = evaluation_matrix(&z, 0);
        assert_eq!((ev0.rows(), ev0.cols()), (3, 1));
        assert!((0..3).all(|i| *ev0.at(i, 0) == fp(1)));
        let ev1 = evaluation_matrix(&z, 1);
        assert_eq!(ev1.rank(), 3);
        // four points on a line: conics restrict to a 3-dim space
        assert_eq!(evaluation_matrix(&collinear4(), 2).rank(), 3);
    }

    #[test]
    fn euler_identity_and_monotonicity() {
        let mut rng = stream(31, 0);
        for trial in 0..6 {
            let r = 2 + trial % 2;
            let n = 3 + trial;
            let z = random_point_set::<Fp>(&P, r, n, &mut rng);
            let mut prev = usize::MAX;
            for d in 0..=3usize {
                let h0 = h0_ideal(&z, d);
                let h1 = h1_ideal(&z, d);
                let chi = binomial(r + d, d) as i64 - n as i64;
                assert_eq!(h0 as i64 - h1 as i64, chi, "r={r} n={n} d={d}");
                if d >= 1 {
                    assert!(h1 <= prev, "h1 must not increase with degree");
                }
                prev = h1;
            }
            // subsets only gain vanishing forms
            let sub = z.subset(&[0, 1, 2]).unwrap();
            assert!(h0_ideal(&sub, 2) >= h0_ideal(&z, 2));
        }
        assert_eq!(h1_ideal(&collinear4(), 2), 1);
    }

    #[test]
    fn single_point_is_clean() {
        for r in 1..=3 {
            let reps: Vec<Vec<Fp>> = vec![(0..=r).map(|k| fp((k == 1) as i64)).collect()];
            let z = PointSet::new(&P, r, reps).unwrap();
            for d in 0..=3 {
                assert_eq!(h1_ideal(&z, d), 0);
            }
            assert_eq!(saturation_degree(&z), 0);
            let ring = coordinate_ring(&z);
            assert_eq!(ring.dims(), &[1, 1]);
            let table = betti_table(&z);
            for i in 0..=r {
                assert_eq!(table.beta(i, i), binomial(r, i), "r={r} i={i}");
            }
        }
    }

    #[test]
    fn coordinate_ring_oracles() {
        let ring = coordinate_ring(&general3());
        assert_eq!(ring.dims(), &[1, 3, 3]);
        let ring = coordinate_ring(&collinear4());
        assert_eq!(ring.dims(), &[1, 2, 3, 4, 4]);
        assert_eq!(saturation_degree(&collinear4()), 3);
    }

    #[test]
    fn h1_module_matches_ideal_cohomology() {
        let z = collinear4();
        let m = h1_module(&z);
        let d_sat = saturation_degree(&z);
        assert_eq!(m.dims(), &[0, 1, 2, 3]);
        for q in 0..=d_sat {
            assert_eq!(m.dim_at(q as i64), h1_ideal(&z, d_sat - q), "q={q}");
        }
        assert!(m.validate().is_ok());
        // sets imposing independent conditions in degree 1 collapse
        let m = h1_module(&general3());
        assert_eq!(m.dims(), &[0, 2]);
    }

    #[test]
    fn betti_ground_truths() {
        let t = betti_table(&general3());
        assert_eq!(t.beta(0, 0), 1);
        assert_eq!(t.beta(1, 2), 3);
        assert_eq!(t.beta(2, 3), 2);
        assert_eq!(
            t.entries().filter(|&(i, _, _)| i >= 1).count(),
            2,
            "no extra syzygies for three general points"
        );

        let t = betti_table(&general4());
        assert_eq!(t.beta(1, 2), 2);
        assert_eq!(t.beta(2, 4), 1);
        assert_eq!(t.entries().filter(|&(i, _, _)| i >= 1).count(), 2);

        // four collinear points: the line, a quartic generator, and the
        // connecting syzygy
        let t = betti_table(&collinear4());
        assert_eq!(t.beta(1, 1), 1);
        assert_eq!(t.beta(1, 4), 1);
        assert_eq!(t.beta(2, 5), 1);
        assert_eq!(t.entries().filter(|&(i, _, _)| i >= 1).count(), 3);

        let tsv = t.render_tsv();
        assert!(tsv.starts_with("i\\j-i\t0\t1\t2\t3\n"));
        assert!(tsv.contains("1\t1\t.\t.\t1\n"));
    }

    #[test]
    fn np_oracles() {
        // six points on a conic fail the quadric condition
        let params: Vec<CurveParam<Fp>> = (0..5)
            .map(|t| CurveParam::Finite(fp(t)))
            .chain([CurveParam::Infinity])
            .collect();
        let z = rnc_points(&P, 2, &params).unwrap();
        let rep = np_check(&z, 0);
        assert!(!rep.holds);
        assert_eq!(rep.failure, Some(NpFailure::Quadrics { h1: 1 }));

        // coordinate points: every N_p
        let z = general3();
        for p in 0..=3 {
            assert!(np_check(&z, p).holds, "p={p}");
        }

        // four general points: quadric generation holds, the first
        // syzygy is quadratic, so p = 2 fails
        let z = general4();
        assert!(np_check(&z, 1).holds);
        let rep = np_check(&z, 2);
        assert!(!rep.holds);
        assert_eq!(rep.failure, Some(NpFailure::Syzygy { i: 2, j: 4, beta: 1 }));

        // monotone in p
        assert!(np_check(&general4(), 0).holds);
    }

    #[test]
    fn rnc_construction() {
        let err = rnc_points::<Fp>(&P, 2, &[CurveParam::Infinity, CurveParam::Infinity])
            .unwrap_err();
        assert!(err.to_string().contains("coincide"));
        assert!(rnc_points(&P, 2, &[CurveParam::Finite(fp(1)), CurveParam::Finite(fp(1))])
            .is_err());

        // eight points on the twisted cubic leave a quadric deficiency
        let params: Vec<CurveParam<Fp>> = (0..8).map(|t| CurveParam::Finite(fp(t))).collect();
        let z = rnc_points(&P, 3, &params).unwrap();
        assert!(h1_ideal(&z, 2) >= 1);
        assert_eq!(z.n_points(), 8);
    }

    #[test]
    fn n0_witness_on_line_configuration() {
        // five points, exactly four on the line {z = 0}
        let z = fp_points(
            2,
            &[&[0, 1, 0], &[1, 1, 0], &[2, 1, 0], &[3, 1, 0], &[0, 0, 1]],
        );
        let w = n0_witness_hyperplane(&z).unwrap();
        assert_eq!(w.indices, vec![0, 1, 2, 3]);
        assert!(w.phi.iter().all(|c| !c.is_zero()));
        let h = w.hyperplane.expect("the line is forced");
        // kernel of evaluation on the 4 collinear points is spanned by z
        assert!(h[0].is_zero() && h[1].is_zero() && !h[2].is_zero());

        // six on a conic: minimal subset is everything, no hyperplane
        let params: Vec<CurveParam<Fp>> = (0..5)
            .map(|t| CurveParam::Finite(fp(t)))
            .chain([CurveParam::Infinity])
            .collect();
        let z = rnc_points(&P, 2, &params).unwrap();
        let w = n0_witness_hyperplane(&z).unwrap();
        assert_eq!(w.indices.len(), 6);
        assert!(w.hyperplane.is_none());
        assert_eq!(w.h1_linear, 3);

        // precondition: quadric independence means no witness
        assert!(n0_witness_hyperplane(&general3()).is_err());
    }

    #[test]
    fn rank_one_strata_oracles() {
        // four collinear points, deficiency degree 2: the only stratum is
        // the full set (line ⊗ functional), affine dimension 1
        let z = collinear4();
        let rep = rank_one_relations_points(&z, 2).unwrap();
        assert_eq!(rep.strata.len(), 1);
        assert_eq!(rep.strata[0].z_prime, vec![0, 1, 2, 3]);
        assert_eq!(rep.strata[0].cone_dim, 1);
        assert_eq!(rep.max_dim, Some(1));

        // independent points have no rank-one relations at all
        let rep = rank_one_relations_points(&general3(), 1).unwrap();
        assert!(rep.strata.is_empty());
        assert_eq!(rep.max_dim, None);
    }

    #[test]
    fn rank_one_strata_cross_validate_with_counting() {
        use crate::koszul::{rank_one_dimension_estimate, DimEstimate};
        let z = q_points(2, &[&[0, 1, 0], &[1, 1, 0], &[2, 1, 0], &[3, 1, 0]]);
        let d_sat = saturation_degree(&z);
        let m = h1_module(&z).trim();
        assert!(m.dims().len() >= 2);
        let d = d_sat - m.q_min() as usize;
        let exact = rank_one_relations_points(&z, d).unwrap();
        let est = rank_one_dimension_estimate(&m.rebased(), &[5, 7, 11], 1_000_000);
        match (exact.max_dim, est.estimate.unwrap()) {
            (None, DimEstimate::Empty) => {}
            (Some(dim), DimEstimate::Dim(e)) => assert_eq!(dim, e),
            other => panic!("strata and point counts disagree: {other:?}"),
        }
    }

    #[test]
    fn dichotomy_finds_collinear_witness() {
        let z = q_points(
            2,
            &[&[0, 1, 0], &[1, 1, 0], &[2, 1, 0], &[3, 1, 0], &[0, 0, 1]],
        );
        let rep = dichotomy_witness(&z, 0).unwrap();
        assert!(rep.hypothesis_met);
        match rep.outcome {
            DichotomyOutcome::Witness {
                indices,
                span_dim,
                proof,
                ..
            } => {
                assert_eq!(indices, vec![0, 1, 2, 3]);
                assert_eq!(span_dim, 1);
                assert!(!proof.holds);
            }
            other => panic!("expected a witness, got {other:?}"),
        }
    }

    #[test]
    fn dichotomy_confirms_general_position() {
        let z = q_points(
            2,
            &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1], &[1, 2, 3]],
        );
        let rep = dichotomy_witness(&z, 0).unwrap();
        assert!(rep.hypothesis_met);
        assert!(matches!(rep.outcome, DichotomyOutcome::NpHolds(_)));

        // size guard
        let mut rng = stream(77, 0);
        let big = random_point_set::<Rat>(&(), 2, 17, &mut rng);
        assert!(matches!(
            dichotomy_witness(&big, 0),
            Err(Error::Budget { .. })
        ));
    }

    #[test]
    fn span_restriction() {
        let z = collinear4();
        let (small, dim) = z.restricted_to_span().unwrap();
        assert_eq!(dim, 1);
        assert_eq!(small.r(), 1);
        assert_eq!(small.n_points(), 4);
        // a spanning set keeps its ambient space
        let (same, dim) = general3().restricted_to_span().unwrap();
        assert_eq!(dim, 2);
        assert_eq!(same.n_points(), 3);
    }

    #[test]
    fn reduction_mod_p() {
        let z = q_points(2, &[&[0, 1, 0], &[1, 1, 0], &[2, 1, 0], &[3, 1, 0]]);
        let zp = points_mod_p(&z, 5).unwrap();
        assert_eq!(zp.n_points(), 4);
        assert_eq!(h1_ideal(&zp, 2), 1);
        // two points colliding mod 5
        let z = q_points(1, &[&[2, 1], &[7, 1]]);
        assert!(points_mod_p(&z, 5).is_err());
        assert!(points_mod_p(&z, 7).is_ok());
    }
}
