//! Index laws `n ↦ c·2^a·3^n` for point sequences.

use num_bigint::BigUint;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{Coord, ModelError};

/// The coordinate law of a point sequence: `n ↦ coeff · 2^pow2 · 3^n`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct IndexLaw {
    coeff: u64,
    pow2: u32,
}

impl IndexLaw {
    pub fn new(coeff: u64, pow2: u32) -> Result<IndexLaw, ModelError> {
        if coeff == 0 {
            return Err(ModelError::ZeroCoefficient);
        }
        Ok(IndexLaw { coeff, pow2 })
    }

    /// Law `n ↦ 2^k · 3^n`.
    pub fn two_pow(k: u32) -> IndexLaw {
        IndexLaw { coeff: 1, pow2: k }
    }

    pub fn coeff(&self) -> u64 {
        self.coeff
    }

    pub fn pow2(&self) -> u32 {
        self.pow2
    }

    /// The constant `coeff · 2^pow2`; two laws denote the same function
    /// exactly when their scales agree.
    pub fn scale(&self) -> BigUint {
        BigUint::from(self.coeff) << self.pow2
    }

    pub fn eval(&self, n: u64) -> Coord {
        let exp = u32::try_from(n).expect("sequence index fits in u32");
        self.scale() * BigUint::from(3u8).pow(exp)
    }

    /// Solves `eval(n) = coord` exactly.
    pub fn solve(&self, coord: &Coord) -> Option<u64> {
        let scale = self.scale();
        if coord.is_zero() || !(coord % &scale).is_zero() {
            return None;
        }
        let mut q = coord / &scale;
        let three = BigUint::from(3u8);
        let one = BigUint::from(1u8);
        let mut n: u64 = 0;
        while q > one {
            if !(&q % &three).is_zero() {
                return None;
            }
            q /= &three;
            n += 1;
        }
        Some(n)
    }

    /// Splits the scale as `3^g·h` with `h` prime to 3.
    fn three_adic(&self) -> (u64, BigUint) {
        let mut h = self.scale();
        let three = BigUint::from(3u8);
        let mut g: u64 = 0;
        while (&h % &three).is_zero() {
            h /= &three;
            g += 1;
        }
        (g, h)
    }

    /// If the two laws share values, the solutions of
    /// `self.eval(n) = other.eval(m)` are exactly `m = n + delta` for all
    /// large enough `n`; returns that shift when it exists.
    pub fn shift_delta(&self, other: &IndexLaw) -> Option<i64> {
        let (g_self, h_self) = self.three_adic();
        let (g_other, h_other) = other.three_adic();
        if h_self != h_other {
            return None;
        }
        Some(g_self as i64 - g_other as i64)
    }

    pub fn same_function(&self, other: &IndexLaw) -> bool {
        self.scale() == other.scale()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eval_matches_closed_form() {
        let law = IndexLaw::two_pow(1);
        assert_eq!(law.eval(1), Coord::from(6u8));
        let law = IndexLaw::new(5, 2).unwrap();
        assert_eq!(law.eval(3), Coord::from(5u64 * 4 * 27));
    }

    #[test]
    fn solve_round_trips() {
        let law = IndexLaw::new(3, 4).unwrap();
        for n in 0..40 {
            assert_eq!(law.solve(&law.eval(n)), Some(n));
        }
        assert_eq!(law.solve(&Coord::from(5u8)), None);
        assert_eq!(law.solve(&Coord::from(0u8)), None);
    }

    #[test]
    fn laws_with_distinct_two_parts_never_meet() {
        // 3^n = 2·3^m has no solutions
        let a = IndexLaw::two_pow(0);
        let b = IndexLaw::two_pow(1);
        assert_eq!(a.shift_delta(&b), None);
    }

    #[test]
    fn shifted_laws_overlap() {
        // 3·3^n = 3^m forces m = n+1
        let a = IndexLaw::new(3, 0).unwrap();
        let b = IndexLaw::new(1, 0).unwrap();
        assert_eq!(a.shift_delta(&b), Some(1));
        assert_eq!(b.shift_delta(&a), Some(-1));
    }

    #[test]
    fn same_function_ignores_factor_split() {
        let a = IndexLaw::new(6, 0).unwrap();
        let b = IndexLaw::new(3, 1).unwrap();
        assert!(a.same_function(&b));
        assert_ne!(a, b);
    }
}
