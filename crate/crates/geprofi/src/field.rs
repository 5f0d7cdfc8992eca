//! Exact field arithmetic over the rationals and prime fields, plus seeded
//! random sampling.
//!
//! Every computation in this crate is a rank or vanishing statement, so the
//! two exact subfields of the complex numbers implemented here (Q and F_p)
//! suffice for all verifications. Rationals are kept in lowest terms with a
//! positive denominator, so equal values always compare equal.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Field descriptor: the rationals or a prime field F_p.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Q,
    Fp(u64),
}

impl Field {
    /// Builds the prime field F_p, rejecting composite moduli.
    pub fn prime(p: u64) -> Result<Field> {
        if is_prime_u64(p) {
            Ok(Field::Fp(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn zero(&self) -> FieldElement {
        self.from_i64(0)
    }

    pub fn one(&self) -> FieldElement {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> FieldElement {
        match self {
            Field::Q => FieldElement::Rational(BigRational::from_integer(BigInt::from(v))),
            Field::Fp(p) => {
                let r = v.rem_euclid(*p as i64) as u64;
                FieldElement::Modular { p: *p, value: r }
            }
        }
    }

    /// Parses the serialized scalar form: `num` or `num/den` over Q, a
    /// decimal residue over F_p.
    pub fn parse(&self, s: &str) -> Result<FieldElement> {
        let bad = || Error::Document(format!("bad scalar `{s}`"));
        match self {
            Field::Q => {
                let (num, den) = match s.split_once('/') {
                    Some((n, d)) => (n, d),
                    None => (s, "1"),
                };
                let num: BigInt = num.trim().parse().map_err(|_| bad())?;
                let den: BigInt = den.trim().parse().map_err(|_| bad())?;
                if den.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                Ok(FieldElement::Rational(BigRational::new(num, den)))
            }
            Field::Fp(_) => {
                let v: i64 = s.trim().parse().map_err(|_| bad())?;
                Ok(self.from_i64(v))
            }
        }
    }
}

/// An element of Q or of F_p. Elements of distinct fields must never be
/// mixed; arithmetic panics on a field mismatch since that is a programming
/// error, not a data error.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FieldElement {
    Rational(BigRational),
    Modular { p: u64, value: u64 },
}

impl FieldElement {
    pub fn field(&self) -> Field {
        match self {
            FieldElement::Rational(_) => Field::Q,
            FieldElement::Modular { p, .. } => Field::Fp(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElement::Rational(r) => r.is_zero(),
            FieldElement::Modular { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldElement::Rational(r) => r.is_one(),
            FieldElement::Modular { value, .. } => *value == 1,
        }
    }

    pub fn add(&self, rhs: &FieldElement) -> FieldElement {
        match (self, rhs) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => FieldElement::Rational(a + b),
            (FieldElement::Modular { p, value: a }, FieldElement::Modular { p: q, value: b }) => {
                assert_eq!(p, q, "field mismatch");
                FieldElement::Modular {
                    p: *p,
                    value: addmod(*a, *b, *p),
                }
            }
            _ => panic!("field mismatch"),
        }
    }

    pub fn sub(&self, rhs: &FieldElement) -> FieldElement {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> FieldElement {
        match self {
            FieldElement::Rational(a) => FieldElement::Rational(-a),
            FieldElement::Modular { p, value } => FieldElement::Modular {
                p: *p,
                value: if *value == 0 { 0 } else { p - value },
            },
        }
    }

    pub fn mul(&self, rhs: &FieldElement) -> FieldElement {
        match (self, rhs) {
            (FieldElement::Rational(a), FieldElement::Rational(b)) => FieldElement::Rational(a * b),
            (FieldElement::Modular { p, value: a }, FieldElement::Modular { p: q, value: b }) => {
                assert_eq!(p, q, "field mismatch");
                FieldElement::Modular {
                    p: *p,
                    value: mulmod(*a, *b, *p),
                }
            }
            _ => panic!("field mismatch"),
        }
    }

    /// Multiplicative inverse; errors on zero.
    pub fn inverse(&self) -> Result<FieldElement> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match self {
            FieldElement::Rational(a) => FieldElement::Rational(a.recip()),
            FieldElement::Modular { p, value } => FieldElement::Modular {
                p: *p,
                value: invmod(*value, *p),
            },
        })
    }

    pub fn div(&self, rhs: &FieldElement) -> Result<FieldElement> {
        Ok(self.mul(&rhs.inverse()?))
    }

    /// Serialized form: `num/den` (den omitted when 1) over Q, a decimal
    /// residue over F_p.
    pub fn repr(&self) -> String {
        match self {
            FieldElement::Rational(r) => {
                if r.denom().is_one() {
                    r.numer().to_string()
                } else {
                    format!("{}/{}", r.numer(), r.denom())
                }
            }
            FieldElement::Modular { value, .. } => value.to_string(),
        }
    }

    /// Numerator and denominator of a rational, in lowest terms.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            FieldElement::Rational(r) => Some(r),
            _ => None,
        }
    }

    pub fn as_modular(&self) -> Option<(u64, u64)> {
        match self {
            FieldElement::Modular { p, value } => Some((*p, *value)),
            _ => None,
        }
    }

    /// True if the rational is a square of another rational (used by the
    /// reducibility test for quadrics).
    pub fn is_square(&self) -> bool {
        match self {
            FieldElement::Rational(r) => {
                if r.is_negative() {
                    return false;
                }
                r.numer().magnitude().sqrt().pow(2) == *r.numer().magnitude()
                    && r.denom().magnitude().sqrt().pow(2) == *r.denom().magnitude()
            }
            FieldElement::Modular { p, value } => {
                if *value == 0 {
                    return true;
                }
                powmod(*value, (p - 1) / 2, *p) == 1
            }
        }
    }

    /// Rational square root when `is_square` holds.
    pub fn sqrt(&self) -> Option<FieldElement> {
        match self {
            FieldElement::Rational(r) => {
                if !self.is_square() {
                    return None;
                }
                let n = BigInt::from(r.numer().magnitude().sqrt());
                let d = BigInt::from(r.denom().magnitude().sqrt());
                Some(FieldElement::Rational(BigRational::new(n, d)))
            }
            FieldElement::Modular { p, value } => {
                // p is small in practice; scan.
                (0..*p)
                    .find(|x| mulmod(*x, *x, *p) == *value)
                    .map(|x| FieldElement::Modular { p: *p, value: x })
            }
        }
    }
}

fn addmod(a: u64, b: u64, p: u64) -> u64 {
    let s = a as u128 + b as u128;
    (s % p as u128) as u64
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, p);
        }
        base = mulmod(base, base, p);
        exp >>= 1;
    }
    acc
}

fn invmod(a: u64, p: u64) -> u64 {
    powmod(a, p - 2, p)
}

/// Deterministic Miller-Rabin for u64.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Seeded random scalar source. Identical seeds produce identical streams;
/// `bound` is the coordinate range for samples over Q (default 1000).
pub struct RandomSource {
    rng: ChaCha8Rng,
    seed: u64,
    bound: i64,
}

impl RandomSource {
    pub fn new(seed: u64) -> RandomSource {
        RandomSource::with_bound(seed, 1000)
    }

    pub fn with_bound(seed: u64, bound: i64) -> RandomSource {
        assert!(bound >= 1, "bound must be positive");
        RandomSource {
            rng: ChaCha8Rng::seed_from_u64(seed),
            seed,
            bound,
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn bound(&self) -> i64 {
        self.bound
    }

    /// Child source with a seed derived from this source's seed and a label;
    /// see [`split_seed`].
    pub fn split(&self, label: &str) -> RandomSource {
        RandomSource::with_bound(split_seed(self.seed, label), self.bound)
    }

    /// Draws `n` scalars: over Q, integers uniform in [-bound, bound]; over
    /// F_p, uniform residues.
    pub fn sample(&mut self, field: &Field, n: usize) -> Result<Vec<FieldElement>> {
        if n == 0 {
            return Err(Error::Precondition("sample size must be at least 1".into()));
        }
        Ok((0..n).map(|_| self.sample_one(field)).collect())
    }

    pub fn sample_one(&mut self, field: &Field) -> FieldElement {
        match field {
            Field::Q => field.from_i64(self.rng.gen_range(-self.bound..=self.bound)),
            Field::Fp(p) => FieldElement::Modular {
                p: *p,
                value: self.rng.gen_range(0..*p),
            },
        }
    }

    /// A nonzero scalar.
    pub fn sample_nonzero(&mut self, field: &Field) -> FieldElement {
        loop {
            let x = self.sample_one(field);
            if !x.is_zero() {
                return x;
            }
        }
    }

    pub fn sample_index(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }
}

/// Deterministic seed splitter used to fan a master seed out to per-step
/// seeds: the label is FNV-1a hashed and the result mixed with the master
/// seed through a splitmix64 finalizer.
pub fn split_seed(master: u64, label: &str) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325;
    for b in label.as_bytes() {
        h ^= *b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    let mut z = master ^ h;
    z = z.wrapping_add(0x9e3779b97f4a7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_examples() {
        let q = Field::Q;
        assert_eq!(q.one().inverse().unwrap(), q.one());
        let two_thirds = q.from_i64(2).div(&q.from_i64(3)).unwrap();
        let three_halves = q.from_i64(3).div(&q.from_i64(2)).unwrap();
        assert_eq!(two_thirds.inverse().unwrap(), three_halves);

        let f7 = Field::prime(7).unwrap();
        // 3 * 5 = 15 = 1 mod 7
        assert_eq!(f7.from_i64(3).inverse().unwrap(), f7.from_i64(5));
        assert!(f7.zero().inverse().is_err());
    }

    #[test]
    fn composite_modulus_rejected() {
        assert!(Field::prime(100).is_err());
        assert!(Field::prime(1).is_err());
        assert!(Field::prime(101).is_ok());
        assert!(Field::prime(2).is_ok());
    }

    #[test]
    fn sampling_is_deterministic() {
        let f = Field::Q;
        let a = RandomSource::new(42).sample(&f, 3).unwrap();
        let b = RandomSource::new(42).sample(&f, 3).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn sampling_respects_fp_range() {
        let f5 = Field::prime(5).unwrap();
        let mut rs = RandomSource::new(9);
        let v = rs.sample(&f5, 1).unwrap();
        let (_, val) = v[0].as_modular().unwrap();
        assert!(val < 5);
    }

    #[test]
    fn neighboring_seeds_differ() {
        let f = Field::Q;
        let a = RandomSource::new(11).sample(&f, 16).unwrap();
        let b = RandomSource::new(12).sample(&f, 16).unwrap();
        assert_ne!(a, b);
    }

    #[test]
    fn zero_sample_size_rejected() {
        let mut rs = RandomSource::new(0);
        assert!(rs.sample(&Field::Q, 0).is_err());
    }

    #[test]
    fn canonical_rationals_compare_equal() {
        let a = Field::Q.parse("2/4").unwrap();
        let b = Field::Q.parse("1/2").unwrap();
        let c = Field::Q.parse("-3/-6").unwrap();
        assert_eq!(a, b);
        assert_eq!(a, c);
        assert_eq!(a.repr(), "1/2");
    }

    #[test]
    fn field_axioms_random_trials() {
        for field in [Field::Q, Field::prime(101).unwrap()] {
            let mut rs = RandomSource::with_bound(7, 50);
            for _ in 0..10_000 {
                let a = rs.sample_one(&field);
                let b = rs.sample_one(&field);
                let c = rs.sample_one(&field);
                // associativity and distributivity
                assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
                assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
                assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
                // additive inverse; exactness of +/- and *//
                assert!(a.add(&a.neg()).is_zero());
                assert_eq!(a.add(&b).sub(&b), a);
                if !b.is_zero() {
                    assert_eq!(a.mul(&b).div(&b).unwrap(), a);
                    assert!(b.mul(&b.inverse().unwrap()).is_one());
                }
            }
        }
    }

    #[test]
    fn square_detection() {
        let q = Field::Q;
        assert!(q.parse("4/9").unwrap().is_square());
        assert!(!q.parse("-4/9").unwrap().is_square());
        assert!(!q.parse("2").unwrap().is_square());
        assert_eq!(
            q.parse("4/9").unwrap().sqrt().unwrap(),
            q.parse("2/3").unwrap()
        );
    }

    #[test]
    fn split_seed_is_stable() {
        assert_eq!(split_seed(1, "a"), split_seed(1, "a"));
        assert_ne!(split_seed(1, "a"), split_seed(1, "b"));
        assert_ne!(split_seed(1, "a"), split_seed(2, "a"));
    }
}
