//! Reduction of rational data modulo a prime.
//!
//! Multi-prime dimension estimates work by carrying one object defined over
//! the rationals into several small prime fields. Reduction fails exactly
//! when a denominator is divisible by the target prime; callers treat that
//! as a "skip this prime" signal, not a hard error.

use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::field::{inv_mod, Fp, Rat};
use crate::matrix::DenseMatrix;

pub fn rat_to_fp(r: &Rat, p: u64) -> Result<Fp> {
    let big_p = num_bigint::BigInt::from(p);
    let num = r.0.numer().mod_floor(&big_p).to_u64().unwrap();
    let den = r.0.denom().mod_floor(&big_p).to_u64().unwrap();
    let den_inv = inv_mod(den, p).ok_or(Error::BadReduction(p))?;
    Ok(Fp::new(num as i64, p) * Fp::new(den_inv as i64, p))
}

pub fn vec_to_fp(v: &[Rat], p: u64) -> Result<Vec<Fp>> {
    v.iter().map(|r| rat_to_fp(r, p)).collect()
}

pub fn matrix_to_fp(m: &DenseMatrix<Rat>, p: u64) -> Result<DenseMatrix<Fp>> {
    m.try_map(&p, |r| rat_to_fp(r, p))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scalar_reduction() {
        assert_eq!(rat_to_fp(&Rat::ratio(3, 2), 7).unwrap(), Fp::new(5, 7));
        assert_eq!(rat_to_fp(&Rat::from_int(-1), 7).unwrap(), Fp::new(6, 7));
        assert!(matches!(
            rat_to_fp(&Rat::ratio(1, 7), 7),
            Err(Error::BadReduction(7))
        ));
        // numerator divisible by p reduces to zero
        assert_eq!(rat_to_fp(&Rat::from_int(14), 7).unwrap(), Fp::new(0, 7));
    }

    #[test]
    fn matrix_reduction_preserves_rank_generically() {
        let m = DenseMatrix::from_rows(
            &(),
            vec![
                vec![Rat::from_int(1), Rat::from_int(2)],
                vec![Rat::from_int(3), Rat::ratio(1, 2)],
            ],
        )
        .unwrap();
        let r = matrix_to_fp(&m, 5).unwrap();
        assert_eq!(r.rank(), 2);
        assert_eq!(*r.at(1, 1), Fp::new(3, 5));
    }
}
