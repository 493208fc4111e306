//! Exterior and symmetric powers of a based vector space.
//!
//! `V` has a fixed basis `x1..xn` with dual basis `e1..en`. The basis of
//! `∧^kV` is the set of strictly increasing k-subsets in lexicographic
//! order; the basis of `S^kV` is the set of exponent vectors in graded
//! lexicographic order with the `x1` exponent most significant. Everything
//! downstream (minor maps, Koszul differentials, file formats) relies on
//! these two orders, so they live here and nowhere else.
//!
//! Signs come from inversion counts. `S^kV` and its dual are paired
//! monomial-by-monomial (coefficient extraction), never with divided-power
//! factorials, so every identity in the crate holds in arbitrary
//! characteristic.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::DenseMatrix;

/// The ambient based space `V`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct VSpace {
    pub n: usize,
}

impl VSpace {
    pub fn new(n: usize) -> VSpace {
        assert!(n >= 1, "V must have positive dimension");
        VSpace { n }
    }
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as usize
}

/// dim S^k of an m-dimensional space.
pub fn sym_dim(m: usize, k: usize) -> usize {
    if m == 0 {
        return if k == 0 { 1 } else { 0 };
    }
    binomial(m + k - 1, k)
}

/// All strictly increasing k-subsets of {0..n-1} in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::with_capacity(binomial(n, k));
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        // advance to the next subset
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// Position of a strictly increasing subset in the lexicographic order.
pub fn subset_rank(n: usize, set: &[usize]) -> usize {
    let k = set.len();
    let mut rank = 0;
    let mut prev = 0usize;
    for (t, &s) in set.iter().enumerate() {
        for j in prev..s {
            rank += binomial(n - 1 - j, k - 1 - t);
        }
        prev = s + 1;
    }
    rank
}

/// All exponent vectors of total degree k on n variables, graded-lex with
/// the first variable most significant (for n = 2, k = 2: 20, 11, 02).
pub fn exponents(n: usize, k: usize) -> Vec<Vec<u32>> {
    fn rec(n: usize, k: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 1 {
            cur.push(k);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for e in (0..=k).rev() {
            cur.push(e);
            rec(n - 1, k - e, cur, out);
            cur.pop();
        }
    }
    assert!(n >= 1, "exponent vectors need at least one variable");
    let mut out = Vec::with_capacity(sym_dim(n, k));
    rec(n, k as u32, &mut Vec::new(), &mut out);
    out
}

/// Position of an exponent vector in the order produced by [`exponents`].
pub fn exponent_rank(n: usize, e: &[u32]) -> usize {
    debug_assert_eq!(e.len(), n);
    let mut remaining: u32 = e.iter().sum();
    let mut rank = 0;
    for (idx, &ei) in e.iter().enumerate() {
        let vars_after = n - idx - 1;
        if vars_after == 0 {
            break;
        }
        for t in (ei + 1)..=remaining {
            rank += sym_dim(vars_after, (remaining - t) as usize);
        }
        remaining -= ei;
    }
    rank
}

/// Merges two strictly increasing index sets; `None` on overlap, otherwise
/// the union and whether the interleaving sign is negative.
pub fn merge_wedge(s: &[usize], t: &[usize]) -> Option<(Vec<usize>, bool)> {
    let mut out = Vec::with_capacity(s.len() + t.len());
    let (mut i, mut j) = (0, 0);
    let mut inversions = 0usize;
    while i < s.len() && j < t.len() {
        if s[i] == t[j] {
            return None;
        }
        if s[i] < t[j] {
            out.push(s[i]);
            i += 1;
        } else {
            out.push(t[j]);
            inversions += s.len() - i;
            j += 1;
        }
    }
    out.extend_from_slice(&s[i..]);
    out.extend_from_slice(&t[j..]);
    Some((out, inversions % 2 == 1))
}

/// Sign of the shuffle permutation (S, S^c) of (0..n-1): true = negative.
pub fn split_sign_negative(s: &[usize]) -> bool {
    let total: usize = s.iter().enumerate().map(|(t, &v)| v - t).sum();
    total % 2 == 1
}

/// u ∧ w for u ∈ ∧^pV, w ∈ ∧^qV, coordinates in the fixed subset bases.
pub fn wedge<K: Field>(ctx: &K::Ctx, n: usize, p: usize, q: usize, u: &[K], w: &[K]) -> Vec<K> {
    debug_assert_eq!(u.len(), binomial(n, p));
    debug_assert_eq!(w.len(), binomial(n, q));
    let mut out = vec![K::zero_in(ctx); binomial(n, p + q)];
    if out.is_empty() {
        return out;
    }
    let sp = subsets(n, p);
    let sq = subsets(n, q);
    for (i, s) in sp.iter().enumerate() {
        if u[i].is_zero() {
            continue;
        }
        for (j, t) in sq.iter().enumerate() {
            if w[j].is_zero() {
                continue;
            }
            if let Some((merged, neg)) = merge_wedge(s, t) {
                let idx = subset_rank(n, &merged);
                let term = u[i].clone() * w[j].clone();
                out[idx] = if neg {
                    out[idx].clone() - term
                } else {
                    out[idx].clone() + term
                };
            }
        }
    }
    out
}

/// Interior product ι_f(u) for u ∈ ∧^pV, f ∈ V* (coordinates in e1..en).
pub fn contract<K: Field>(ctx: &K::Ctx, n: usize, p: usize, u: &[K], f: &[K]) -> Vec<K> {
    assert!(p >= 1, "contraction needs positive exterior degree");
    debug_assert_eq!(u.len(), binomial(n, p));
    debug_assert_eq!(f.len(), n);
    let mut out = vec![K::zero_in(ctx); binomial(n, p - 1)];
    for (i, s) in subsets(n, p).iter().enumerate() {
        if u[i].is_zero() {
            continue;
        }
        for (t, &st) in s.iter().enumerate() {
            if f[st].is_zero() {
                continue;
            }
            let mut rest = s.clone();
            rest.remove(t);
            let idx = subset_rank(n, &rest);
            let term = u[i].clone() * f[st].clone();
            out[idx] = if t % 2 == 1 {
                out[idx].clone() - term
            } else {
                out[idx].clone() + term
            };
        }
    }
    out
}

/// Product in the symmetric algebra: S^pV × S^qV → S^{p+q}V.
pub fn sym_mult<K: Field>(ctx: &K::Ctx, n: usize, p: usize, q: usize, u: &[K], w: &[K]) -> Vec<K> {
    debug_assert_eq!(u.len(), sym_dim(n, p));
    debug_assert_eq!(w.len(), sym_dim(n, q));
    let mut out = vec![K::zero_in(ctx); sym_dim(n, p + q)];
    let ep = exponents(n, p as u32 as usize);
    let eq = exponents(n, q);
    for (i, a) in ep.iter().enumerate() {
        if u[i].is_zero() {
            continue;
        }
        for (j, b) in eq.iter().enumerate() {
            if w[j].is_zero() {
                continue;
            }
            let sum: Vec<u32> = a.iter().zip(b).map(|(x, y)| x + y).collect();
            let idx = exponent_rank(n, &sum);
            out[idx] = out[idx].clone() + u[i].clone() * w[j].clone();
        }
    }
    out
}

/// Full contraction against a generator τ = c·(e1∧…∧en) of ∧^nV*:
/// maps ∧^pV → ∧^{n−p}V* by x_S ↦ ±c·e_{S^c}, the sign being that of the
/// shuffle (S, S^c). A linear bijection for c ≠ 0.
pub fn hodge_contract<K: Field>(ctx: &K::Ctx, n: usize, p: usize, u: &[K], tau: &K) -> Result<Vec<K>> {
    if tau.is_zero() {
        return Err(Error::invalid("tau must generate the top dual power"));
    }
    debug_assert_eq!(u.len(), binomial(n, p));
    let mut out = vec![K::zero_in(ctx); binomial(n, n - p)];
    for (i, s) in subsets(n, p).iter().enumerate() {
        if u[i].is_zero() {
            continue;
        }
        let comp: Vec<usize> = (0..n).filter(|j| !s.contains(j)).collect();
        let idx = subset_rank(n, &comp);
        let term = u[i].clone() * tau.clone();
        out[idx] = if split_sign_negative(s) {
            out[idx].clone() - term
        } else {
            out[idx].clone() + term
        };
    }
    Ok(out)
}

/// k-th exterior power of a linear map: entries are k×k minors,
/// rows/columns indexed by the lexicographic subset bases.
pub fn ext_power_matrix<K: Field>(m: &DenseMatrix<K>, k: usize) -> DenseMatrix<K> {
    let row_sets = subsets(m.rows(), k);
    let col_sets = subsets(m.cols(), k);
    let ctx = m.ctx().clone();
    let mut out = DenseMatrix::zeros(row_sets.len(), col_sets.len(), &ctx);
    for (ri, rs) in row_sets.iter().enumerate() {
        for (ci, cs) in col_sets.iter().enumerate() {
            let sub = DenseMatrix::from_fn(k, k, &ctx, |i, j| m.at(rs[i], cs[j]).clone());
            out.set(ri, ci, sub.det());
        }
    }
    out
}

/// One tensor factor of a [`TensorElement`].
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Factor {
    /// ∧^k of an n-dimensional space, basis labeled `letter{i}` wedged.
    Ext { n: usize, k: usize, letter: char },
    /// S^k of an n-dimensional space, monomial basis.
    Sym { n: usize, k: usize, letter: char },
    /// A plain coordinate space with basis `letter1..letterdim`.
    Flat { dim: usize, letter: char },
}

impl Factor {
    pub fn dim(&self) -> usize {
        match *self {
            Factor::Ext { n, k, .. } => binomial(n, k),
            Factor::Sym { n, k, .. } => sym_dim(n, k),
            Factor::Flat { dim, .. } => dim,
        }
    }

    /// Human-readable label of one basis element.
    pub fn label(&self, index: usize) -> String {
        match *self {
            Factor::Ext { n, k, letter } => {
                if k == 0 {
                    return "1".into();
                }
                let set = &subsets(n, k)[index];
                set.iter()
                    .map(|i| format!("{letter}{}", i + 1))
                    .collect::<Vec<_>>()
                    .join("^")
            }
            Factor::Sym { n, k, letter } => {
                if k == 0 {
                    return "1".into();
                }
                let e = &exponents(n, k)[index];
                let mut parts = Vec::new();
                for (i, &ei) in e.iter().enumerate() {
                    if ei == 1 {
                        parts.push(format!("{letter}{}", i + 1));
                    } else if ei > 1 {
                        parts.push(format!("{letter}{}^{ei}", i + 1));
                    }
                }
                parts.join("*")
            }
            Factor::Flat { letter, .. } => format!("{letter}{}", index + 1),
        }
    }
}

/// An element of a tensor product of exterior, symmetric, and plain
/// factors, stored as a dense coordinate vector over the row-major product
/// basis (first factor most significant).
#[derive(Clone, Debug, PartialEq)]
pub struct TensorElement<K: Field> {
    factors: Vec<Factor>,
    ctx: K::Ctx,
    coords: Vec<K>,
}

impl<K: Field> TensorElement<K> {
    pub fn zero(factors: Vec<Factor>, ctx: &K::Ctx) -> Self {
        let dim = factors.iter().map(Factor::dim).product();
        TensorElement {
            factors,
            ctx: ctx.clone(),
            coords: vec![K::zero_in(ctx); dim],
        }
    }

    pub fn from_coords(factors: Vec<Factor>, ctx: &K::Ctx, coords: Vec<K>) -> Result<Self> {
        let dim: usize = factors.iter().map(Factor::dim).product();
        if coords.len() != dim {
            return Err(Error::shape(format!(
                "tensor needs {dim} coordinates, got {}",
                coords.len()
            )));
        }
        let coords = coords
            .into_iter()
            .map(|c| c.bind(ctx))
            .collect::<Result<_>>()?;
        Ok(TensorElement { factors, ctx: ctx.clone(), coords })
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn coords(&self) -> &[K] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    /// Flat index of a multi-index, row-major.
    pub fn index_of(&self, multi: &[usize]) -> usize {
        debug_assert_eq!(multi.len(), self.factors.len());
        let mut idx = 0;
        for (f, &i) in self.factors.iter().zip(multi) {
            debug_assert!(i < f.dim());
            idx = idx * f.dim() + i;
        }
        idx
    }

    pub fn at(&self, multi: &[usize]) -> &K {
        &self.coords[self.index_of(multi)]
    }

    pub fn add_at(&mut self, multi: &[usize], v: K) {
        let idx = self.index_of(multi);
        self.coords[idx] = self.coords[idx].clone() + v.bind(&self.ctx).expect("tensor entry field");
    }
}

impl<K: Field> std::fmt::Display for TensorElement<K> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut terms = Vec::new();
        for (idx, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            // decode the flat index back into per-factor labels
            let mut rem = idx;
            let mut labels = Vec::new();
            for fac in self.factors.iter().rev() {
                labels.push(fac.label(rem % fac.dim()));
                rem /= fac.dim();
            }
            labels.reverse();
            let mono = labels.join(" (x) ");
            let mut term = String::new();
            if c.is_one() {
                write!(term, "{mono}").unwrap();
            } else {
                write!(term, "{c}*{mono}").unwrap();
            }
            terms.push(term);
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

/// Which single-factor space an element string lives in.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ElementKind {
    /// A linear form in V (no constant term).
    Linear,
    /// ∧^kV with `^` separating wedge factors: `3*x1^x2^x4`.
    Ext(usize),
    /// S^kV with `^` introducing exponents: `3*x1^2*x2`.
    Sym(usize),
}

/// Parses one element of V, ∧^kV, or S^kV over the fixed `x` basis.
pub fn parse_element<K: Field>(
    ctx: &K::Ctx,
    n: usize,
    kind: ElementKind,
    s: &str,
) -> Result<Vec<K>> {
    let dim = match kind {
        ElementKind::Linear => n,
        ElementKind::Ext(k) => binomial(n, k),
        ElementKind::Sym(k) => sym_dim(n, k),
    };
    let mut out = vec![K::zero_in(ctx); dim];
    let body = s.trim();
    if body.is_empty() || body == "0" {
        return Ok(out);
    }
    for (sign_neg, term) in split_terms(body)? {
        let (coeff, vars) = parse_term::<K>(ctx, term)?;
        let coeff = if sign_neg { -coeff } else { coeff };
        match kind {
            ElementKind::Linear => {
                if vars.len() != 1 || vars[0].1 != 1 {
                    return Err(Error::invalid(format!(
                        "term {term:?} is not a linear monomial"
                    )));
                }
                let v = vars[0].0;
                check_var(v, n, term)?;
                out[v] = out[v].clone() + coeff;
            }
            ElementKind::Sym(k) => {
                let mut e = vec![0u32; n];
                let mut total = 0u32;
                for &(v, exp) in &vars {
                    check_var(v, n, term)?;
                    e[v] += exp;
                    total += exp;
                }
                if total as usize != k {
                    return Err(Error::invalid(format!(
                        "term {term:?} has degree {total}, expected {k}"
                    )));
                }
                let idx = exponent_rank(n, &e);
                out[idx] = out[idx].clone() + coeff;
            }
            ElementKind::Ext(k) => {
                let mut set = Vec::new();
                for &(v, exp) in &vars {
                    check_var(v, n, term)?;
                    if exp != 1 {
                        return Err(Error::invalid(format!(
                            "term {term:?} repeats a wedge factor"
                        )));
                    }
                    set.push(v);
                }
                if set.len() != k {
                    return Err(Error::invalid(format!(
                        "term {term:?} has {} wedge factors, expected {k}",
                        set.len()
                    )));
                }
                // sort with sign; a repeated factor kills the term
                let Some((sorted, neg)) = sort_with_sign(&set) else {
                    continue;
                };
                let idx = subset_rank(n, &sorted);
                let coeff = if neg { -coeff } else { coeff };
                out[idx] = out[idx].clone() + coeff;
            }
        }
    }
    Ok(out)
}

fn check_var(v: usize, n: usize, term: &str) -> Result<()> {
    if v >= n {
        return Err(Error::invalid(format!(
            "variable x{} out of range 1..{n} in {term:?}",
            v + 1
        )));
    }
    Ok(())
}

fn sort_with_sign(set: &[usize]) -> Option<(Vec<usize>, bool)> {
    let mut v = set.to_vec();
    let mut swaps = 0usize;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            swaps += 1;
            j -= 1;
        }
    }
    for w in v.windows(2) {
        if w[0] == w[1] {
            return None;
        }
    }
    Some((v, swaps % 2 == 1))
}

/// Splits `a + b - c` into sign/term pairs at top level.
fn split_terms(s: &str) -> Result<Vec<(bool, &str)>> {
    let mut out = Vec::new();
    let bytes = s.as_bytes();
    let mut start = 0usize;
    let mut neg = false;
    let mut i = 0usize;
    while i <= bytes.len() {
        let at_sign = i < bytes.len() && (bytes[i] == b'+' || bytes[i] == b'-');
        if i == bytes.len() || at_sign {
            let piece = s[start..i].trim();
            if !piece.is_empty() {
                out.push((neg, piece));
            } else if i > 0 && !out.is_empty() && !at_sign {
                // trailing operator
                return Err(Error::invalid(format!("dangling operator in {s:?}")));
            }
            if i < bytes.len() {
                if piece.is_empty() && !out.is_empty() {
                    return Err(Error::invalid(format!("empty term in {s:?}")));
                }
                neg = bytes[i] == b'-';
                start = i + 1;
            }
        }
        i += 1;
    }
    if out.is_empty() {
        return Err(Error::invalid(format!("no terms in {s:?}")));
    }
    Ok(out)
}

/// Parses `coeff*x2^3*x4` into a coefficient and (variable, exponent)
/// pairs. A bare exterior chain `x1^x2` yields exponent-1 pairs.
fn parse_term<K: Field>(ctx: &K::Ctx, term: &str) -> Result<(K, Vec<(usize, u32)>)> {
    let mut coeff = K::one_in(ctx);
    let mut vars: Vec<(usize, u32)> = Vec::new();
    let mut seen_coeff = false;
    for piece in term.split('*') {
        let piece = piece.trim();
        if piece.is_empty() {
            return Err(Error::invalid(format!("empty factor in {term:?}")));
        }
        if piece.starts_with('x') {
            // variable, possibly ^exponent or a wedge chain x1^x2^x4
            for (count, part) in piece.split('^').enumerate() {
                let part = part.trim();
                if let Some(idx) = part.strip_prefix('x') {
                    let v: usize = idx.parse().map_err(|_| {
                        Error::invalid(format!("bad variable {part:?} in {term:?}"))
                    })?;
                    if v == 0 {
                        return Err(Error::invalid(format!("variables start at x1: {term:?}")));
                    }
                    vars.push((v - 1, 1));
                } else {
                    // numeric exponent attaches to the preceding variable
                    if count == 0 || vars.is_empty() {
                        return Err(Error::invalid(format!("misplaced exponent in {term:?}")));
                    }
                    let e: u32 = part.parse().map_err(|_| {
                        Error::invalid(format!("bad exponent {part:?} in {term:?}"))
                    })?;
                    vars.last_mut().unwrap().1 = e;
                }
            }
        } else {
            if seen_coeff {
                return Err(Error::invalid(format!("two coefficients in {term:?}")));
            }
            seen_coeff = true;
            coeff = coeff * K::parse_scalar(ctx, piece)?;
        }
    }
    Ok((coeff, vars))
}

/// Renders coordinates of one element back into the text syntax; inverse
/// of [`parse_element`] up to term order and coefficient normalization.
pub fn format_element<K: Field>(n: usize, kind: ElementKind, coords: &[K]) -> String {
    let labels: Vec<String> = match kind {
        ElementKind::Linear => (0..n).map(|i| format!("x{}", i + 1)).collect(),
        ElementKind::Ext(k) => subsets(n, k)
            .iter()
            .map(|s| {
                if s.is_empty() {
                    "1".to_string()
                } else {
                    s.iter()
                        .map(|i| format!("x{}", i + 1))
                        .collect::<Vec<_>>()
                        .join("^")
                }
            })
            .collect(),
        ElementKind::Sym(k) => exponents(n, k)
            .iter()
            .map(|e| {
                let parts: Vec<String> = e
                    .iter()
                    .enumerate()
                    .filter(|(_, &ei)| ei > 0)
                    .map(|(i, &ei)| {
                        if ei == 1 {
                            format!("x{}", i + 1)
                        } else {
                            format!("x{}^{ei}", i + 1)
                        }
                    })
                    .collect();
                if parts.is_empty() {
                    "1".to_string()
                } else {
                    parts.join("*")
                }
            })
            .collect(),
    };
    let mut terms = Vec::new();
    for (i, c) in coords.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        if c.is_one() && labels[i] != "1" {
            terms.push(labels[i].clone());
        } else if labels[i] == "1" {
            terms.push(format!("{c}"));
        } else {
            terms.push(format!("{c}*{}", labels[i]));
        }
    }
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Fp, Rat};
    use crate::rng::stream;
    use num_traits::Zero;
    use proptest::prelude::*;
    use rand_core::RngCore;

    const P: u64 = 7;

    fn fp(v: i64) -> Fp {
        Fp::new(v, P)
    }

    fn random_coords(dim: usize, rng: &mut impl RngCore) -> Vec<Fp> {
        (0..dim).map(|_| fp((rng.next_u64() % P) as i64)).collect()
    }

    #[test]
    fn binomials_and_dims() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(4, 0), 1);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(sym_dim(3, 2), 6);
        assert_eq!(sym_dim(0, 0), 1);
        assert_eq!(sym_dim(0, 2), 0);
    }

    #[test]
    fn subsets_are_lexicographic() {
        assert_eq!(
            subsets(4, 2),
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
        assert_eq!(subsets(3, 0), vec![Vec::<usize>::new()]);
        for n in 0..7 {
            for k in 0..=n {
                for (i, s) in subsets(n, k).iter().enumerate() {
                    assert_eq!(subset_rank(n, s), i);
                }
            }
        }
    }

    #[test]
    fn exponents_are_graded_lex() {
        assert_eq!(
            exponents(2, 2),
            vec![vec![2, 0], vec![1, 1], vec![0, 2]]
        );
        for n in 1..5 {
            for k in 0..5 {
                for (i, e) in exponents(n, k).iter().enumerate() {
                    assert_eq!(exponent_rank(n, e), i, "n={n} k={k} e={e:?}");
                }
            }
        }
    }

    #[test]
    fn wedge_basics() {
        let n = 3;
        // x1 ∧ x1 = 0
        let x1 = vec![fp(1), fp(0), fp(0)];
        assert!(wedge(&P, n, 1, 1, &x1, &x1).iter().all(|c| c.is_zero()));
        // x2 ∧ x1 = −x{12}
        let x2 = vec![fp(0), fp(1), fp(0)];
        let r = wedge(&P, n, 1, 1, &x2, &x1);
        assert_eq!(r, vec![fp(-1), fp(0), fp(0)]);
    }

    #[test]
    fn wedge_expansion_oracle() {
        // (x1+x2) ∧ x3 ∧ x2: coefficient of x1^x2^x3 must be −1
        let n = 3;
        let u = vec![fp(1), fp(1), fp(0)];
        let x3 = vec![fp(0), fp(0), fp(1)];
        let x2 = vec![fp(0), fp(1), fp(0)];
        let step = wedge(&P, n, 1, 1, &u, &x3);
        let r = wedge(&P, n, 2, 1, &step, &x2);
        assert_eq!(r, vec![fp(-1)]);
    }

    #[test]
    fn contraction_oracles() {
        let n = 3;
        // ι_{e1}(x1∧x2) = x2
        let x12 = vec![fp(1), fp(0), fp(0)];
        let e1 = vec![fp(1), fp(0), fp(0)];
        assert_eq!(contract(&P, n, 2, &x12, &e1), vec![fp(0), fp(1), fp(0)]);
        // ι_{e3}(x1∧x2) = 0
        let e3 = vec![fp(0), fp(0), fp(1)];
        assert!(contract(&P, n, 2, &x12, &e3).iter().all(|c| c.is_zero()));
        // ι_{e2}(x1∧x2∧x3) = −x1∧x3
        let x123 = vec![fp(1)];
        let e2 = vec![fp(0), fp(1), fp(0)];
        assert_eq!(
            contract(&P, n, 3, &x123, &e2),
            vec![fp(0), fp(-1), fp(0)]
        );
    }

    #[test]
    fn sym_mult_oracles() {
        let n = 2;
        // x1·x2 → exponent (1,1)
        let x1 = vec![fp(1), fp(0)];
        let x2 = vec![fp(0), fp(1)];
        assert_eq!(sym_mult(&P, n, 1, 1, &x1, &x2), vec![fp(0), fp(1), fp(0)]);
        // x1·x1 → (2,0) with coefficient 1, no factorial
        assert_eq!(sym_mult(&P, n, 1, 1, &x1, &x1), vec![fp(1), fp(0), fp(0)]);
        // (x1+x2)·x1 = x1² + x1x2
        let u = vec![fp(1), fp(1)];
        assert_eq!(sym_mult(&P, n, 1, 1, &u, &x1), vec![fp(1), fp(1), fp(0)]);
    }

    #[test]
    fn hodge_contract_oracles() {
        let n = 2;
        let tau = fp(1);
        // x1 ↦ e2, x2 ↦ −e1
        assert_eq!(
            hodge_contract(&P, n, 1, &[fp(1), fp(0)], &tau).unwrap(),
            vec![fp(0), fp(1)]
        );
        assert_eq!(
            hodge_contract(&P, n, 1, &[fp(0), fp(1)], &tau).unwrap(),
            vec![fp(-1), fp(0)]
        );
        // top element ↦ 1
        assert_eq!(hodge_contract(&P, 4, 4, &[fp(1)], &tau).unwrap(), vec![fp(1)]);
        // zero tau rejected
        assert!(hodge_contract(&P, 2, 1, &[fp(1), fp(0)], &Fp::new(0, P)).is_err());
    }

    #[test]
    fn hodge_contract_is_bijective() {
        let n = 4;
        for p in 0..=n {
            let d = binomial(n, p);
            let m = DenseMatrix::from_fn(d, d, &P, |i, j| {
                let mut u = vec![fp(0); d];
                u[j] = fp(1);
                hodge_contract(&P, n, p, &u, &fp(1)).unwrap()[i].clone()
            });
            assert_eq!(m.rank(), d);
        }
    }

    #[test]
    fn ext_power_of_two_by_two() {
        let m = DenseMatrix::from_rows(
            &P,
            vec![vec![fp(1), fp(2)], vec![fp(3), fp(4)]],
        )
        .unwrap();
        let e = ext_power_matrix(&m, 2);
        assert_eq!(e.rows(), 1);
        assert_eq!(*e.at(0, 0), fp(-2));
        let id = DenseMatrix::<Fp>::identity(4, &P);
        assert_eq!(ext_power_matrix(&id, 2), DenseMatrix::identity(6, &P));
    }

    #[test]
    fn tensor_element_indexing_is_row_major() {
        let t: TensorElement<Fp> = TensorElement::zero(
            vec![
                Factor::Flat { dim: 2, letter: 'a' },
                Factor::Flat { dim: 3, letter: 'b' },
            ],
            &P,
        );
        assert_eq!(t.dim(), 6);
        assert_eq!(t.index_of(&[0, 2]), 2);
        assert_eq!(t.index_of(&[1, 0]), 3);
    }

    #[test]
    fn tensor_element_display() {
        let mut t: TensorElement<Fp> = TensorElement::zero(
            vec![
                Factor::Sym { n: 2, k: 2, letter: 'b' },
                Factor::Ext { n: 3, k: 2, letter: 'x' },
            ],
            &P,
        );
        t.add_at(&[1, 0], fp(3));
        assert_eq!(t.to_string(), "3*b1*b2 (x) x1^x2");
    }

    #[test]
    fn element_round_trips() {
        let n = 4;
        let s = parse_element::<Rat>(&(), n, ElementKind::Sym(3), "3*x1^2*x2 - x4^3").unwrap();
        assert_eq!(
            format_element::<Rat>(n, ElementKind::Sym(3), &s),
            "3*x1^2*x2 + -1*x4^3"
        );
        let e = parse_element::<Rat>(&(), n, ElementKind::Ext(3), "3*x1^x2^x4").unwrap();
        assert_eq!(
            format_element::<Rat>(n, ElementKind::Ext(3), &e),
            "3*x1^x2^x4"
        );
        // unsorted wedge picks up a sign; repeated factor vanishes
        let w = parse_element::<Rat>(&(), n, ElementKind::Ext(2), "x2^x1 + x3^x3").unwrap();
        assert_eq!(format_element::<Rat>(n, ElementKind::Ext(2), &w), "-1*x1^x2");
        let l = parse_element::<Rat>(&(), n, ElementKind::Linear, "2*x1 + 3*x4 - x2").unwrap();
        assert_eq!(
            format_element::<Rat>(n, ElementKind::Linear, &l),
            "2*x1 + -1*x2 + 3*x4"
        );
        // errors: range, degree, syntax
        assert!(parse_element::<Rat>(&(), 2, ElementKind::Linear, "x3").is_err());
        assert!(parse_element::<Rat>(&(), 3, ElementKind::Sym(2), "x1").is_err());
        assert!(parse_element::<Rat>(&(), 3, ElementKind::Linear, "2*").is_err());
    }

    proptest! {
        #[test]
        fn graded_commutativity(seed in 0u64..150, p in 1usize..3, q in 1usize..3) {
            let n = 4;
            let mut rng = stream(seed, 10);
            let u = random_coords(binomial(n, p), &mut rng);
            let w = random_coords(binomial(n, q), &mut rng);
            let uw = wedge(&P, n, p, q, &u, &w);
            let wu = wedge(&P, n, q, p, &w, &u);
            let flip = (p * q) % 2 == 1;
            for (a, b) in uw.iter().zip(&wu) {
                let b = if flip { -b.clone() } else { b.clone() };
                prop_assert_eq!(a.clone(), b);
            }
        }

        #[test]
        fn anti_derivation(seed in 0u64..150, p in 1usize..3, q in 1usize..3) {
            let n = 4;
            let mut rng = stream(seed, 11);
            let u = random_coords(binomial(n, p), &mut rng);
            let w = random_coords(binomial(n, q), &mut rng);
            let f = random_coords(n, &mut rng);
            let lhs = contract(&P, n, p + q, &wedge(&P, n, p, q, &u, &w), &f);
            let mut rhs = wedge(&P, n, p - 1, q, &contract(&P, n, p, &u, &f), &w);
            let uiw = wedge(&P, n, p, q - 1, &u, &contract(&P, n, q, &w, &f));
            for (r, x) in rhs.iter_mut().zip(uiw) {
                *r = if p % 2 == 1 { r.clone() - x } else { r.clone() + x };
            }
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn double_contraction_vanishes(seed in 0u64..150, p in 2usize..4) {
            let n = 4;
            let mut rng = stream(seed, 12);
            let u = random_coords(binomial(n, p), &mut rng);
            let f = random_coords(n, &mut rng);
            let once = contract(&P, n, p, &u, &f);
            let twice = contract(&P, n, p - 1, &once, &f);
            prop_assert!(twice.iter().all(|c| c.is_zero()));
        }

        #[test]
        fn wedge_is_associative(seed in 0u64..100) {
            let n = 5;
            let mut rng = stream(seed, 13);
            let u = random_coords(n, &mut rng);
            let w = random_coords(n, &mut rng);
            let z = random_coords(n, &mut rng);
            let left = wedge(&P, n, 2, 1, &wedge(&P, n, 1, 1, &u, &w), &z);
            let right = wedge(&P, n, 1, 2, &u, &wedge(&P, n, 1, 1, &w, &z));
            prop_assert_eq!(left, right);
        }

        #[test]
        fn sym_mult_is_commutative_and_associative(seed in 0u64..100) {
            let n = 3;
            let mut rng = stream(seed, 14);
            let u = random_coords(sym_dim(n, 1), &mut rng);
            let w = random_coords(sym_dim(n, 2), &mut rng);
            let z = random_coords(sym_dim(n, 1), &mut rng);
            prop_assert_eq!(
                sym_mult(&P, n, 1, 2, &u, &w),
                sym_mult(&P, n, 2, 1, &w, &u)
            );
            let left = sym_mult(&P, n, 3, 1, &sym_mult(&P, n, 1, 2, &u, &w), &z);
            let right = sym_mult(&P, n, 1, 3, &u, &sym_mult(&P, n, 2, 1, &w, &z));
            prop_assert_eq!(left, right);
        }
    }
}
