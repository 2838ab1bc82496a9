//! Exact coefficient fields: the rationals with arbitrary-precision arithmetic,
//! and prime fields `F_p`.
//!
//! Every dimension computed by this crate is the rank of a matrix over one of
//! these fields; there is no floating point anywhere in the system.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::Error;

/// The prime used when no field is specified: a common computer-algebra
/// default, large enough that desk-scale instances never hit an accidental
/// characteristic coincidence.
pub const DEFAULT_PRIME: u64 = 32003;

/// A coefficient field with exact arithmetic.
///
/// The field is a value (not just a type) so that a prime modulus chosen at
/// run time can travel with the computation. Elements carry no pointer back to
/// the field; all operations go through this trait.
pub trait Field: Clone + Send + Sync + fmt::Debug + 'static {
    type Elem: Clone + PartialEq + Send + Sync + fmt::Debug;

    /// 0 for the rationals, `p` for `F_p`.
    fn characteristic(&self) -> u64;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse. Panics on zero.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;

    fn add_assign(&self, a: &mut Self::Elem, b: &Self::Elem) {
        *a = self.add(a, b);
    }

    /// Exact rank of a sparse matrix over this field. The default is sparse
    /// Gaussian elimination; the rationals override it with the
    /// integer-preserving path.
    fn matrix_rank(&self, matrix: &crate::sparse::SparseMatrix<Self>) -> usize
    where
        Self: Sized,
    {
        crate::sparse::rank_generic(matrix, self)
    }

    /// Runtime descriptor, for report metadata.
    fn spec(&self) -> FieldSpec {
        match self.characteristic() {
            0 => FieldSpec::Rationals,
            p => FieldSpec::Prime(p),
        }
    }
}

/// Runtime description of a field, as it appears in CLI flags (`--field 0`,
/// `--field 32003`) and in report metadata.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, serde::Serialize, serde::Deserialize)]
pub enum FieldSpec {
    Rationals,
    Prime(u64),
}

impl FieldSpec {
    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::Prime(p) => *p,
        }
    }

    /// Parse `0` as the rationals and any other number as a prime modulus.
    pub fn parse(s: &str) -> Result<Self, Error> {
        let n: u64 = s
            .parse()
            .map_err(|_| Error::InvalidInput(format!("field must be 0 or a prime, got `{s}`")))?;
        if n == 0 {
            Ok(FieldSpec::Rationals)
        } else if is_prime(n) {
            Ok(FieldSpec::Prime(n))
        } else {
            Err(Error::InvalidInput(format!("{n} is not prime")))
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "QQ"),
            FieldSpec::Prime(p) => write!(f, "F{p}"),
        }
    }
}

/// The field of rational numbers, with `BigRational` elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn characteristic(&self) -> u64 {
        0
    }
    fn zero(&self) -> Self::Elem {
        BigRational::zero()
    }
    fn one(&self) -> Self::Elem {
        BigRational::one()
    }
    fn from_i64(&self, n: i64) -> Self::Elem {
        BigRational::from_integer(BigInt::from(n))
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a + b
    }
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a - b
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a * b
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        -a
    }
    fn inv(&self, a: &Self::Elem) -> Self::Elem {
        assert!(!a.is_zero(), "inverse of zero");
        a.recip()
    }
    fn matrix_rank(&self, matrix: &crate::sparse::SparseMatrix<Self>) -> usize {
        crate::sparse::rank_rational(matrix)
    }
}

/// The prime field `F_p`, elements stored as canonical representatives in `0..p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    /// Rejects non-prime moduli.
    pub fn new(p: u64) -> Result<Self, Error> {
        if !is_prime(p) {
            return Err(Error::InvalidInput(format!("{p} is not prime")));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn characteristic(&self) -> u64 {
        self.p
    }
    fn zero(&self) -> Self::Elem {
        0
    }
    fn one(&self) -> Self::Elem {
        1 % self.p
    }
    fn from_i64(&self, n: i64) -> Self::Elem {
        let m = self.p as i128;
        (((n as i128) % m + m) % m) as u64
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == 0
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &Self::Elem) -> Self::Elem {
        assert!(*a != 0, "inverse of zero");
        // Fermat: a^(p-2) mod p.
        let mut base = *a as u128;
        let mut exp = self.p - 2;
        let m = self.p as u128;
        let mut acc: u128 = 1;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % m;
            }
            base = base * base % m;
            exp >>= 1;
        }
        acc as u64
    }
}

/// Deterministic Miller-Rabin for u64 (the witness set below is exact for all
/// 64-bit inputs).
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a % n, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = ((x as u128 * x as u128) % n as u128) as u64;
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc: u128 = 1;
    let mm = m as u128;
    let mut b = base as u128 % mm;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % mm;
        }
        b = b * b % mm;
        exp >>= 1;
    }
    acc as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_arithmetic() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.add(&5, &4), 2);
        assert_eq!(f.sub(&2, &5), 4);
        assert_eq!(f.mul(&3, &5), 1);
        assert_eq!(f.neg(&3), 4);
        assert_eq!(f.mul(&f.inv(&3), &3), 1);
        assert_eq!(f.from_i64(-1), 6);
        assert_eq!(f.from_i64(-8), 6);
    }

    #[test]
    fn rationals_are_exact() {
        let f = Rationals;
        let third = f.inv(&f.from_i64(3));
        let one = f.mul(&third, &f.from_i64(3));
        assert_eq!(one, f.one());
    }

    #[test]
    fn rejects_non_prime() {
        assert!(PrimeField::new(6).is_err());
        assert!(PrimeField::new(1).is_err());
        assert!(PrimeField::new(32003).is_ok());
        assert!(FieldSpec::parse("0").is_ok());
        assert!(FieldSpec::parse("9").is_err());
    }

    #[test]
    fn primality() {
        assert!(is_prime(2));
        assert!(is_prime(32003));
        assert!(is_prime(1_000_000_007));
        assert!(!is_prime(32001));
        assert!(!is_prime(0));
    }
}
