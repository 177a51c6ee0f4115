//! Small helpers on integer and rational vectors.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub fn int(v: i64) -> BigInt {
    BigInt::from(v)
}

pub fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn rat(v: &BigInt) -> BigRational {
    BigRational::from_integer(v.clone())
}

pub fn rats(v: &[BigInt]) -> Vec<BigRational> {
    v.iter().map(rat).collect()
}

pub fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn dot_rat(a: &[BigInt], b: &[BigRational]) -> BigRational {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = BigRational::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() {
            acc += y * rat(x);
        }
    }
    acc
}

pub fn add(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(k: &BigInt, a: &[BigInt]) -> Vec<BigInt> {
    a.iter().map(|x| k * x).collect()
}

pub fn neg(a: &[BigInt]) -> Vec<BigInt> {
    a.iter().map(|x| -x).collect()
}

pub fn is_zero(a: &[BigInt]) -> bool {
    a.iter().all(Zero::is_zero)
}

/// Gcd of all entries (zero for the zero vector).
pub fn content(a: &[BigInt]) -> BigInt {
    a.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

/// Divides out the content. The zero vector is returned unchanged.
pub fn primitive(a: &[BigInt]) -> Vec<BigInt> {
    let g = content(a);
    if g.is_zero() || g.is_one() {
        return a.to_vec();
    }
    a.iter().map(|x| x / &g).collect()
}

/// Scales a rational vector to a primitive integer vector with the same direction.
pub fn primitive_from_rat(a: &[BigRational]) -> Vec<BigInt> {
    let l = a.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    let v: Vec<BigInt> = a.iter().map(|x| (x * rat(&l)).to_integer()).collect();
    primitive(&v)
}

/// Clears denominators: returns (integer vector, positive common denominator).
pub fn clear_denominators(a: &[BigRational]) -> (Vec<BigInt>, BigInt) {
    let l = a.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    let v = a.iter().map(|x| (x * rat(&l)).to_integer()).collect();
    (v, l)
}

pub fn is_integral(a: &[BigRational]) -> bool {
    a.iter().all(|x| x.is_integer())
}

pub fn to_integral(a: &[BigRational]) -> Option<Vec<BigInt>> {
    if is_integral(a) {
        Some(a.iter().map(|x| x.to_integer()).collect())
    } else {
        None
    }
}

pub fn floor(x: &BigRational) -> BigInt {
    x.floor().to_integer()
}

pub fn ceil(x: &BigRational) -> BigInt {
    x.ceil().to_integer()
}

pub fn max_abs(a: &[BigInt]) -> BigInt {
    a.iter().map(|x| x.abs()).max().unwrap_or_default()
}

/// Converts to i64 when every entry fits.
pub fn to_i64(a: &[BigInt]) -> Option<Vec<i64>> {
    use num_traits::ToPrimitive;
    a.iter().map(|x| x.to_i64()).collect()
}

pub fn sign(x: &BigInt) -> i32 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}
