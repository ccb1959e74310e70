//! Base-3 integer codes for elements and the diagonal enumeration of pairs.
//!
//! `encode` writes an element as the integer whose base-3 digit at position
//! `i` is `2 - f(i)`, so absent coordinates contribute digit 0 and the code
//! of any element is positive. `decode` inverts it; together they form a
//! bijection between the carrier and the positive integers, which combined
//! with the diagonal pairing enumerates the square of the carrier.

use num_bigint::BigUint;
use num_traits::Zero;

use super::{Coord, Elt, ModelError, TriVal};

/// Code of an element: `Σ (2 - f(i))·3^i` over the support.
///
/// Cost is linear in the largest coordinate, so this is only meant for
/// elements with small coordinates (file formats, user-facing listings).
pub fn encode(x: &Elt) -> Result<BigUint, ModelError> {
    let three = BigUint::from(3u8);
    let mut total = BigUint::zero();
    for (coord, val) in x.support() {
        let exp: u32 = coord
            .try_into()
            .map_err(|_| ModelError::EncodeOverflow)?;
        let digit = BigUint::from(2 - val.as_u8());
        total += digit * three.pow(exp);
    }
    Ok(total)
}

/// Inverse of [`encode`]. The code 0 would be the all-2 function, which is
/// not an element; it is rejected.
pub fn decode(code: &BigUint) -> Result<Elt, ModelError> {
    if code.is_zero() {
        return Err(ModelError::DecodeZero);
    }
    let three = BigUint::from(3u8);
    let mut rest = code.clone();
    let mut pairs = Vec::new();
    let mut pos: u64 = 0;
    while !rest.is_zero() {
        let digit = (&rest % &three)
            .try_into()
            .map(|d: u8| d)
            .expect("digit below 3");
        match digit {
            1 => pairs.push((Coord::from(pos), TriVal::One)),
            2 => pairs.push((Coord::from(pos), TriVal::Zero)),
            _ => {}
        }
        rest /= &three;
        pos += 1;
    }
    Elt::from_support(pairs)
}

/// Diagonal pairing `(a, b) ↦ (a+b)(a+b+1)/2 + b`.
pub fn cantor_pair(a: u64, b: u64) -> u64 {
    let a = a as u128;
    let b = b as u128;
    let w = a + b;
    let k = w * (w + 1) / 2 + b;
    u64::try_from(k).expect("pair index fits in 64 bits")
}

/// Inverse of [`cantor_pair`].
pub fn cantor_unpair(k: u64) -> (u64, u64) {
    let k = k as u128;
    let w = (isqrt(8 * k + 1) - 1) / 2;
    let t = w * (w + 1) / 2;
    let b = k - t;
    let a = w - b;
    (a as u64, b as u64)
}

fn isqrt(n: u128) -> u128 {
    if n < 2 {
        return n;
    }
    let mut x = 1u128 << (n.ilog2() / 2 + 1);
    loop {
        let y = (x + n / x) / 2;
        if y >= x {
            return x;
        }
        x = y;
    }
}

/// The `k`-th pair of the enumerated square: decode both halves of the
/// diagonal unpairing, shifted by one so codes start at 1.
pub fn pair_enumerate(k: u64) -> (Elt, Elt) {
    let (a, b) = cantor_unpair(k);
    let x = decode(&BigUint::from(a + 1)).expect("positive code");
    let y = decode(&BigUint::from(b + 1)).expect("positive code");
    (x, y)
}
