//! Scalars: word-size prime fields and arbitrary-precision rationals.
//!
//! All linear algebra in this crate is exact. The two scalar types are
//! [`Fp`] (integers mod a prime `p < 2^31`) and [`Rat`] (reduced fractions of
//! big integers). Generic code abstracts over them through the [`Field`]
//! trait, which extends the `num-traits` arithmetic traits with the runtime
//! context a field needs (the prime for `F_p`, nothing for `Q`).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand_core::RngCore;

use crate::error::{Error, Result};

/// Runtime choice of coefficient field.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum FieldSpec {
    /// `F_p` for a prime `p < 2^31`.
    Prime(u64),
    /// The rational numbers.
    Rationals,
}

impl FieldSpec {
    /// Checks that a `Prime` modulus really is a prime in range.
    pub fn validate(&self) -> Result<()> {
        match *self {
            FieldSpec::Prime(p) if p >= 2 && p < (1 << 31) && is_prime_u64(p) => Ok(()),
            FieldSpec::Prime(p) => Err(Error::NotPrime(p)),
            FieldSpec::Rationals => Ok(()),
        }
    }

    /// Parses the command-line form: `Q` or `Fp:<prime>`.
    pub fn parse(s: &str) -> Result<FieldSpec> {
        let s = s.trim();
        if s == "Q" {
            return Ok(FieldSpec::Rationals);
        }
        if let Some(p) = s.strip_prefix("Fp:") {
            let p: u64 = p
                .parse()
                .map_err(|_| Error::invalid(format!("bad prime in field spec {s:?}")))?;
            let spec = FieldSpec::Prime(p);
            spec.validate()?;
            return Ok(spec);
        }
        Err(Error::invalid(format!(
            "unknown field {s:?}, expected Q or Fp:<prime>"
        )))
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Prime(p) => write!(f, "Fp:{p}"),
            FieldSpec::Rationals => write!(f, "Q"),
        }
    }
}

const MILLER_RABIN_BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Deterministic Miller-Rabin; the base set above is exact for all `u64`.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MILLER_RABIN_BASES {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &MILLER_RABIN_BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

pub(crate) fn inv_mod(a: u64, m: u64) -> Option<u64> {
    if a == 0 {
        return None;
    }
    let (mut t, mut new_t): (i128, i128) = (0, 1);
    let (mut r, mut new_r): (i128, i128) = (m as i128, a as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    if r != 1 {
        return None;
    }
    let mut t = t % m as i128;
    if t < 0 {
        t += m as i128;
    }
    Some(t as u64)
}

/// Abstraction over the two coefficient fields.
///
/// `Ctx` carries whatever runtime data the field needs to make elements:
/// the prime modulus for [`Fp`], the unit `()` for [`Rat`]. Containers in
/// this crate store a `Ctx` and construct every element through it, so all
/// elements inside one object agree on the field.
pub trait Field:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Zero
    + One
    + Send
    + Sync
    + 'static
{
    type Ctx: Clone + PartialEq + fmt::Debug + Send + Sync + 'static;

    fn spec(ctx: &Self::Ctx) -> FieldSpec;

    /// Context for a parsed [`FieldSpec`]; fails if it names a
    /// different field than `Self`.
    fn ctx_from_spec(spec: &FieldSpec) -> Result<Self::Ctx>;

    fn zero_in(ctx: &Self::Ctx) -> Self;

    fn one_in(ctx: &Self::Ctx) -> Self;

    fn from_i64(ctx: &Self::Ctx, v: i64) -> Self;

    /// Parses one scalar in the text form used by the file formats:
    /// a decimal integer for `F_p`, `a` or `a/b` for `Q`.
    fn parse_scalar(ctx: &Self::Ctx, s: &str) -> Result<Self>;

    /// Multiplicative inverse; `None` for zero.
    fn inv(&self) -> Option<Self>;

    /// The context this element carries, if it is pinned to one.
    /// Only free constants from the generic `zero()`/`one()` return `None`.
    fn ctx(&self) -> Option<Self::Ctx>;

    /// Pins a free constant to `ctx`, or checks an already pinned element
    /// against it.
    fn bind(self, ctx: &Self::Ctx) -> Result<Self>;

    /// Uniform random element (small random integer over `Q`).
    fn random<R: RngCore>(ctx: &Self::Ctx, rng: &mut R) -> Self;

    fn divide(&self, d: &Self) -> Option<Self> {
        d.inv().map(|i| self.clone() * i)
    }
}

/// Element of `F_p`.
///
/// The modulus travels with the value. `m == 0` marks a *free constant*:
/// the only way to obtain one is through the generic `Zero::zero()` and
/// `One::one()`, which have no context to draw a modulus from. Free
/// constants act as the matching residue as soon as they meet a pinned
/// element, and containers pin them on construction via [`Field::bind`].
/// Arithmetic on two pinned elements with different moduli is a programming
/// error and panics; checked, error-returning mixing lives at the container
/// level.
#[derive(Clone, Copy, Debug)]
pub struct Fp {
    v: u64,
    m: u64,
}

impl Fp {
    pub fn new(v: i64, p: u64) -> Fp {
        let p_i = p as i128;
        let r = ((v as i128 % p_i) + p_i) % p_i;
        Fp { v: r as u64, m: p }
    }

    pub fn value(&self) -> u64 {
        self.v
    }

    pub fn modulus(&self) -> Option<u64> {
        if self.m == 0 {
            None
        } else {
            Some(self.m)
        }
    }

    /// Aligns two elements on a common modulus, reducing free constants.
    fn join(a: Fp, b: Fp) -> (u64, u64, u64) {
        match (a.m, b.m) {
            (0, 0) => (a.v, b.v, 0),
            (0, m) => (a.v % m, b.v, m),
            (m, 0) => (a.v, b.v % m, m),
            (ma, mb) => {
                assert_eq!(
                    ma, mb,
                    "elements of F_{ma} and F_{mb} met in one operation"
                );
                (a.v, b.v, ma)
            }
        }
    }
}

impl PartialEq for Fp {
    fn eq(&self, other: &Fp) -> bool {
        match (self.m, other.m) {
            (0, 0) => self.v == other.v,
            (0, m) => self.v % m == other.v,
            (m, 0) => self.v == other.v % m,
            (ma, mb) => ma == mb && self.v == other.v,
        }
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.v)
    }
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, rhs: Fp) -> Fp {
        let (a, b, m) = Fp::join(self, rhs);
        if m == 0 {
            Fp { v: a + b, m: 0 }
        } else {
            Fp { v: (a + b) % m, m }
        }
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, rhs: Fp) -> Fp {
        let (a, b, m) = Fp::join(self, rhs);
        if m == 0 {
            assert!(a >= b, "free-constant subtraction went negative");
            Fp { v: a - b, m: 0 }
        } else {
            Fp { v: (a + m - b) % m, m }
        }
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, rhs: Fp) -> Fp {
        let (a, b, m) = Fp::join(self, rhs);
        if m == 0 {
            Fp { v: a * b, m: 0 }
        } else {
            Fp { v: mul_mod(a, b, m), m }
        }
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        if self.m == 0 {
            assert!(self.v == 0, "negation of a free nonzero constant");
            self
        } else {
            Fp { v: (self.m - self.v) % self.m, m: self.m }
        }
    }
}

impl Zero for Fp {
    fn zero() -> Fp {
        Fp { v: 0, m: 0 }
    }
    fn is_zero(&self) -> bool {
        self.v == 0
    }
}

impl One for Fp {
    fn one() -> Fp {
        Fp { v: 1, m: 0 }
    }
    fn is_one(&self) -> bool {
        if self.m == 0 {
            self.v == 1
        } else {
            self.v == 1 % self.m
        }
    }
}

impl Field for Fp {
    type Ctx = u64;

    fn spec(ctx: &u64) -> FieldSpec {
        FieldSpec::Prime(*ctx)
    }

    fn ctx_from_spec(spec: &FieldSpec) -> Result<u64> {
        match spec {
            FieldSpec::Prime(p) => {
                spec.validate()?;
                Ok(*p)
            }
            FieldSpec::Rationals => Err(Error::invalid(
                "expected a prime field, file declares field Q",
            )),
        }
    }

    fn zero_in(ctx: &u64) -> Fp {
        Fp { v: 0, m: *ctx }
    }

    fn one_in(ctx: &u64) -> Fp {
        Fp { v: 1 % *ctx, m: *ctx }
    }

    fn from_i64(ctx: &u64, v: i64) -> Fp {
        Fp::new(v, *ctx)
    }

    fn parse_scalar(ctx: &u64, s: &str) -> Result<Fp> {
        let v: i128 = s
            .parse()
            .map_err(|_| Error::invalid(format!("bad integer {s:?}")))?;
        let p = *ctx as i128;
        let r = ((v % p) + p) % p;
        Ok(Fp { v: r as u64, m: *ctx })
    }

    fn inv(&self) -> Option<Fp> {
        if self.m == 0 {
            return if self.v == 1 { Some(*self) } else { None };
        }
        inv_mod(self.v, self.m).map(|v| Fp { v, m: self.m })
    }

    fn ctx(&self) -> Option<u64> {
        self.modulus()
    }

    fn bind(self, ctx: &u64) -> Result<Fp> {
        match self.m {
            0 => Ok(Fp { v: self.v % *ctx, m: *ctx }),
            m if m == *ctx => Ok(self),
            m => Err(Error::MixedField(format!("Fp:{m}"), format!("Fp:{ctx}"))),
        }
    }

    fn random<R: RngCore>(ctx: &u64, rng: &mut R) -> Fp {
        Fp { v: rng.next_u64() % *ctx, m: *ctx }
    }
}

/// Rational scalar: a reduced `BigInt` fraction with positive denominator.
#[derive(Clone, PartialEq, Debug)]
pub struct Rat(pub BigRational);

impl Rat {
    pub fn from_int(v: i64) -> Rat {
        Rat(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn ratio(num: i64, den: i64) -> Rat {
        assert!(den != 0, "zero denominator");
        Rat(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Add for Rat {
    type Output = Rat;
    fn add(self, rhs: Rat) -> Rat {
        Rat(self.0 + rhs.0)
    }
}

impl Sub for Rat {
    type Output = Rat;
    fn sub(self, rhs: Rat) -> Rat {
        Rat(self.0 - rhs.0)
    }
}

impl Mul for Rat {
    type Output = Rat;
    fn mul(self, rhs: Rat) -> Rat {
        Rat(self.0 * rhs.0)
    }
}

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}

impl Zero for Rat {
    fn zero() -> Rat {
        Rat(BigRational::zero())
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl One for Rat {
    fn one() -> Rat {
        Rat(BigRational::one())
    }
    fn is_one(&self) -> bool {
        self.0.is_one()
    }
}

impl Field for Rat {
    type Ctx = ();

    fn spec(_: &()) -> FieldSpec {
        FieldSpec::Rationals
    }

    fn ctx_from_spec(spec: &FieldSpec) -> Result<()> {
        match spec {
            FieldSpec::Rationals => Ok(()),
            FieldSpec::Prime(p) => Err(Error::invalid(format!(
                "expected field Q, file declares field Fp {p}"
            ))),
        }
    }

    fn zero_in(_: &()) -> Rat {
        Rat::zero()
    }

    fn one_in(_: &()) -> Rat {
        Rat::one()
    }

    fn from_i64(_: &(), v: i64) -> Rat {
        Rat::from_int(v)
    }

    fn parse_scalar(_: &(), s: &str) -> Result<Rat> {
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n, d),
            None => (s, "1"),
        };
        let num = BigInt::from_str(num.trim())
            .map_err(|_| Error::invalid(format!("bad rational {s:?}")))?;
        let den = BigInt::from_str(den.trim())
            .map_err(|_| Error::invalid(format!("bad rational {s:?}")))?;
        if den.is_zero() {
            return Err(Error::invalid(format!("zero denominator in {s:?}")));
        }
        Ok(Rat(BigRational::new(num, den)))
    }

    fn inv(&self) -> Option<Rat> {
        if self.0.is_zero() {
            None
        } else {
            Some(Rat(self.0.recip()))
        }
    }

    fn ctx(&self) -> Option<()> {
        Some(())
    }

    fn bind(self, _: &()) -> Result<Rat> {
        Ok(self)
    }

    fn random<R: RngCore>(_: &(), rng: &mut R) -> Rat {
        Rat::from_int((rng.next_u64() % 19) as i64 - 9)
    }
}

/// Iterates every vector of F_p^len, last coordinate fastest.
pub struct FpVectors {
    p: u64,
    cur: Vec<u64>,
    done: bool,
}

pub fn all_vectors_fp(p: u64, len: usize) -> FpVectors {
    FpVectors {
        p,
        cur: vec![0; len],
        done: false,
    }
}

impl Iterator for FpVectors {
    type Item = Vec<Fp>;

    fn next(&mut self) -> Option<Vec<Fp>> {
        if self.done {
            return None;
        }
        let out = self
            .cur
            .iter()
            .map(|&v| Fp::new(v as i64, self.p))
            .collect();
        // odometer increment
        let mut i = self.cur.len();
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            self.cur[i] += 1;
            if self.cur[i] < self.p {
                break;
            }
            self.cur[i] = 0;
        }
        Some(out)
    }
}

/// Iterates one representative per point of P^{len−1}(F_p): the leading
/// nonzero coordinate is normalized to 1.
pub struct ProjectiveReps {
    p: u64,
    len: usize,
    lead: usize,
    inner: FpVectors,
}

pub fn projective_reps_fp(p: u64, len: usize) -> ProjectiveReps {
    ProjectiveReps {
        p,
        len,
        lead: 0,
        inner: all_vectors_fp(p, len.saturating_sub(1)),
    }
}

impl Iterator for ProjectiveReps {
    type Item = Vec<Fp>;

    fn next(&mut self) -> Option<Vec<Fp>> {
        loop {
            if self.lead >= self.len {
                return None;
            }
            if let Some(tail) = self.inner.next() {
                let mut v = Vec::with_capacity(self.len);
                for _ in 0..self.lead {
                    v.push(Fp::new(0, self.p));
                }
                v.push(Fp::new(1, self.p));
                v.extend(tail);
                return Some(v);
            }
            self.lead += 1;
            if self.lead < self.len {
                self.inner = all_vectors_fp(self.p, self.len - self.lead - 1);
            }
        }
    }
}

/// Number of points of P^{len−1}(F_p), saturating at u128::MAX.
pub fn projective_count(p: u64, len: usize) -> u128 {
    let mut total: u128 = 0;
    let mut power: u128 = 1;
    for _ in 0..len {
        total = total.saturating_add(power);
        power = power.saturating_mul(p as u128);
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::stream;

    #[test]
    fn fp_arithmetic_mod_seven() {
        let p = 7u64;
        let a = Fp::new(5, p);
        let b = Fp::new(4, p);
        assert_eq!((a + b).value(), 2);
        assert_eq!((a - b).value(), 1);
        assert_eq!((b - a).value(), 6);
        assert_eq!((a * b).value(), 6);
        assert_eq!((-a).value(), 2);
        assert_eq!(Fp::new(-3, p).value(), 4);
    }

    #[test]
    fn fp_inverse_round_trip() {
        let p = 10007u64;
        for v in 1..200i64 {
            let x = Fp::new(v, p);
            let i = x.inv().expect("nonzero element has an inverse");
            assert!((x * i).is_one());
        }
        assert!(Fp::new(0, p).inv().is_none());
    }

    #[test]
    fn free_constants_bind_on_contact() {
        let p = 5u64;
        let one: Fp = One::one();
        let x = Fp::new(3, p);
        assert_eq!((one + x).value(), 4);
        assert_eq!((one + x).modulus(), Some(5));
        let bound = one.bind(&p).unwrap();
        assert_eq!(bound.modulus(), Some(5));
        assert_eq!(Fp::one_in(&p) + Fp::one_in(&p), Fp::new(2, p));
    }

    #[test]
    #[should_panic(expected = "met in one operation")]
    fn mixed_moduli_panic() {
        let _ = Fp::new(1, 5) + Fp::new(1, 7);
    }

    #[test]
    fn mixed_moduli_bind_is_an_error() {
        assert!(Fp::new(1, 5).bind(&7).is_err());
    }

    #[test]
    fn primality_checks() {
        assert!(is_prime_u64(2));
        assert!(is_prime_u64(10007));
        assert!(is_prime_u64(2147483647));
        assert!(!is_prime_u64(1));
        assert!(!is_prime_u64(10005));
        assert!(!is_prime_u64(3215031751));
        assert!(FieldSpec::Prime(10007).validate().is_ok());
        assert!(FieldSpec::Prime(10005).validate().is_err());
        // in range as an integer, out of the supported window
        assert!(FieldSpec::Prime(2147483659).validate().is_err());
    }

    #[test]
    fn field_spec_parse_and_display() {
        assert_eq!(FieldSpec::parse("Q").unwrap(), FieldSpec::Rationals);
        assert_eq!(
            FieldSpec::parse("Fp:10007").unwrap(),
            FieldSpec::Prime(10007)
        );
        assert!(FieldSpec::parse("Fp:10").is_err());
        assert!(FieldSpec::parse("R").is_err());
        assert_eq!(FieldSpec::Prime(5).to_string(), "Fp:5");
        assert_eq!(FieldSpec::Rationals.to_string(), "Q");
    }

    #[test]
    fn rational_parse_reduces() {
        let x = Rat::parse_scalar(&(), "6/4").unwrap();
        assert_eq!(x, Rat::ratio(3, 2));
        assert_eq!(x.to_string(), "3/2");
        let y = Rat::parse_scalar(&(), "-3/-6").unwrap();
        assert_eq!(y.to_string(), "1/2");
        assert!(Rat::parse_scalar(&(), "1/0").is_err());
        assert_eq!(Rat::parse_scalar(&(), "7").unwrap(), Rat::from_int(7));
    }

    #[test]
    fn random_scalars_are_reproducible() {
        let mut r1 = stream(9, 0);
        let mut r2 = stream(9, 0);
        for _ in 0..10 {
            assert_eq!(Fp::random(&10007, &mut r1), Fp::random(&10007, &mut r2));
        }
        let mut r3 = stream(9, 1);
        let q = Rat::random(&(), &mut r3);
        assert!(q.0.is_integer());
    }

    #[test]
    fn vector_enumeration_counts() {
        assert_eq!(all_vectors_fp(3, 2).count(), 9);
        assert_eq!(all_vectors_fp(5, 0).count(), 1);
        let reps: Vec<_> = projective_reps_fp(3, 2).collect();
        assert_eq!(reps.len() as u128, projective_count(3, 2));
        assert_eq!(reps.len(), 4);
        // every rep leads with 1 after zeros, and no two are proportional
        for r in &reps {
            let first = r.iter().position(|c| !c.is_zero()).unwrap();
            assert_eq!(r[first], Fp::new(1, 3));
        }
        assert_eq!(projective_count(5, 3), 31);
        assert_eq!(projective_count(10007, 2), 10008);
    }
}
