//! Exact scalars: arbitrary-precision rationals, optionally extended by a
//! root `r` of `r^2 - r + 1`. The element `r` plays the role of a primitive
//! sixth root of unity, and `2r - 1` is a square root of `-3`.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

/// Element `rat + ext * r` of `Q[r]/(r^2 - r + 1)`.
///
/// `BigRational` keeps numerator/denominator reduced with positive
/// denominator, so both invariants of the scalar hold after every operation.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    rat: BigRational,
    ext: BigRational,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar {
            rat: BigRational::zero(),
            ext: BigRational::zero(),
        }
    }

    pub fn one() -> Self {
        Scalar {
            rat: BigRational::one(),
            ext: BigRational::zero(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Scalar {
            rat: BigRational::from_integer(BigInt::from(n)),
            ext: BigRational::zero(),
        }
    }

    pub fn from_frac(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Scalar {
            rat: BigRational::new(BigInt::from(num), BigInt::from(den)),
            ext: BigRational::zero(),
        }
    }

    pub fn from_rational(q: BigRational) -> Self {
        Scalar {
            rat: q,
            ext: BigRational::zero(),
        }
    }

    pub fn from_parts(rat: BigRational, ext: BigRational) -> Self {
        Scalar { rat, ext }
    }

    /// The extension generator `r` (a primitive sixth root of unity).
    pub fn rho() -> Self {
        Scalar {
            rat: BigRational::zero(),
            ext: BigRational::one(),
        }
    }

    /// `rho^k` for any integer `k`; the powers cycle with period 6.
    pub fn rho_pow(k: i64) -> Self {
        let k = k.rem_euclid(6);
        let mut acc = Scalar::one();
        for _ in 0..k {
            acc = &acc * &Scalar::rho();
        }
        acc
    }

    /// `sqrt(-3) = 2r - 1`.
    pub fn sqrt_minus_three() -> Self {
        Scalar {
            rat: -BigRational::one(),
            ext: BigRational::from_integer(BigInt::from(2)),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.rat.is_zero() && self.ext.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.rat.is_one() && self.ext.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.ext.is_zero()
    }

    /// Rational part; the extension part must be zero.
    pub fn expect_rational(&self) -> &BigRational {
        assert!(self.ext.is_zero(), "scalar has a nonzero extension part");
        &self.rat
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.rat
    }

    pub fn extension_part(&self) -> &BigRational {
        &self.ext
    }

    /// Galois conjugate `r -> 1 - r`.
    pub fn conj(&self) -> Self {
        Scalar {
            rat: &self.rat + &self.ext,
            ext: -self.ext.clone(),
        }
    }

    /// Field norm `a^2 + ab + b^2`; zero only for the zero element.
    pub fn norm(&self) -> BigRational {
        &self.rat * &self.rat + &self.rat * &self.ext + &self.ext * &self.ext
    }

    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "division by zero scalar");
        let n = self.norm();
        let c = self.conj();
        Scalar {
            rat: c.rat / &n,
            ext: c.ext / &n,
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Scalar::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Reduce both components modulo a word-sized prime. Fails when `p`
    /// divides one of the denominators.
    pub fn to_mod(&self, p: u64) -> Option<u64> {
        let rat = rational_mod(&self.rat, p)?;
        if self.ext.is_zero() {
            return Some(rat);
        }
        None
    }
}

/// Reduce a rational number modulo `p`; `None` when `p` divides the denominator.
pub fn rational_mod(q: &BigRational, p: u64) -> Option<u64> {
    let pb = BigInt::from(p);
    let num = q.numer().mod_floor_u64(&pb);
    let den = q.denom().mod_floor_u64(&pb);
    if den == 0 {
        return None;
    }
    Some(mul_mod(num, inv_mod(den, p), p))
}

trait ModFloorU64 {
    fn mod_floor_u64(&self, p: &BigInt) -> u64;
}

impl ModFloorU64 for BigInt {
    fn mod_floor_u64(&self, p: &BigInt) -> u64 {
        use num::Integer;
        let m = self.mod_floor(p);
        let (_, digits) = m.to_u64_digits();
        match digits.len() {
            0 => 0,
            1 => digits[0],
            _ => unreachable!("residue exceeds one word"),
        }
    }
}

pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let s = a as u128 + b as u128;
    (s % p as u128) as u64
}

pub fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        p - (b - a)
    }
}

pub fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    assert!(a % p != 0, "inverse of zero residue");
    pow_mod(a, p - 2, p)
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn rat_str(q: &BigRational) -> String {
            if q.denom().is_one() {
                format!("{}", q.numer())
            } else {
                format!("{}/{}", q.numer(), q.denom())
            }
        }
        if self.ext.is_zero() {
            return write!(f, "{}", rat_str(&self.rat));
        }
        let ext_term = if self.ext.is_one() {
            "r".to_string()
        } else if (-&self.ext).is_one() {
            "-r".to_string()
        } else {
            format!("{}*r", rat_str(&self.ext))
        };
        if self.rat.is_zero() {
            write!(f, "({})", ext_term)
        } else if self.ext.is_negative() {
            write!(f, "({}{})", rat_str(&self.rat), ext_term)
        } else {
            write!(f, "({}+{})", rat_str(&self.rat), ext_term)
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            rat: -self.rat.clone(),
            ext: -self.ext.clone(),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        Scalar {
            rat: &self.rat + &rhs.rat,
            ext: &self.ext + &rhs.ext,
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        Scalar {
            rat: &self.rat - &rhs.rat,
            ext: &self.ext - &rhs.ext,
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        // (a + b r)(c + d r), reducing r^2 = r - 1.
        let ac = &self.rat * &rhs.rat;
        let bd = &self.ext * &rhs.ext;
        let cross = &self.rat * &rhs.ext + &self.ext * &rhs.rat;
        Scalar {
            rat: ac - &bd,
            ext: cross + bd,
        }
    }
}

impl Div for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        self * &rhs.inv()
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);
forward_owned_binop!(Div, div);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        self.rat += &rhs.rat;
        self.ext += &rhs.ext;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        self.rat -= &rhs.rat;
        self.ext -= &rhs.ext;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rho_is_a_primitive_sixth_root() {
        let r = Scalar::rho();
        assert_eq!(r.pow(6), Scalar::one());
        for k in 1..6 {
            assert_ne!(r.pow(k), Scalar::one(), "rho^{k} must not be 1");
        }
        // rho^3 = -1
        assert_eq!(r.pow(3), -Scalar::one());
    }

    #[test]
    fn sqrt_minus_three_squares_to_minus_three() {
        let s = Scalar::sqrt_minus_three();
        assert_eq!(&s * &s, Scalar::from_int(-3));
    }

    #[test]
    fn inverse_and_norm() {
        let x = Scalar::from_parts(
            BigRational::new(BigInt::from(3), BigInt::from(2)),
            BigRational::new(BigInt::from(-1), BigInt::from(5)),
        );
        assert_eq!(&x * &x.inv(), Scalar::one());
        assert!(x.norm() > BigRational::zero());
    }

    #[test]
    fn modular_reduction_rejects_bad_primes() {
        let x = Scalar::from_frac(1, 7);
        assert_eq!(x.to_mod(7), None);
        let y = Scalar::from_frac(3, 4);
        let p = 1_000_003u64;
        let r = y.to_mod(p).unwrap();
        assert_eq!(mul_mod(r, 4, p), 3);
    }

    #[test]
    fn display_forms() {
        assert_eq!(Scalar::from_frac(3, 2).to_string(), "3/2");
        assert_eq!(Scalar::rho().to_string(), "(r)");
        let z = Scalar::from_int(1) + Scalar::rho();
        assert_eq!(z.to_string(), "(1+r)");
    }
}
