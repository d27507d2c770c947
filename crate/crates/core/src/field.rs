//! Exact coefficient fields.
//!
//! Three implementations of [`Field`]: the rationals (arbitrary precision),
//! prime fields `F_p` with word-sized residues, and small Galois fields
//! `GF(p^k)` that serve as "large enough" extensions of small prime fields
//! whenever a random generic element is needed (random base changes for
//! generic initial spaces, sample points on rank varieties).

use std::collections::HashMap;
use std::fmt::Debug;
use std::hash::Hash;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Fields smaller than this get a Galois extension for generic sampling.
pub const GENERIC_FIELD_SIZE: u64 = 32003;

/// Default prime for modular searches.
pub const DEFAULT_PRIME: u32 = 32003;

const MAX_TABLE_SIZE: u64 = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FieldKind {
    Rationals,
    PrimeField,
}

/// Runtime description of a coefficient field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldDescriptor {
    pub kind: FieldKind,
    pub characteristic: u64,
    /// 1 in characteristic zero, otherwise the characteristic.
    pub char_exponent_p: u64,
}

impl FieldDescriptor {
    pub fn rationals() -> Self {
        FieldDescriptor { kind: FieldKind::Rationals, characteristic: 0, char_exponent_p: 1 }
    }

    pub fn prime(p: u64) -> Result<Self> {
        if p > (1u64 << 31) || !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not a prime below 2^31")));
        }
        Ok(FieldDescriptor { kind: FieldKind::PrimeField, characteristic: p, char_exponent_p: p })
    }

    /// `0` selects the rationals, anything else must be a prime.
    pub fn from_p(p: u64) -> Result<Self> {
        if p == 0 {
            Ok(Self::rationals())
        } else {
            Self::prime(p)
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// An exact field. Elements are plain values; all arithmetic goes through
/// the field object so that moduli and tables live in one place.
pub trait Field: Clone + Debug + PartialEq + Send + Sync + 'static {
    type Elem: Clone + Debug + PartialEq + Eq + Hash + Send + Sync;
    /// A field of the same characteristic that is large enough for
    /// Schwartz–Zippel style genericity arguments.
    type Ext: Field;

    fn descriptor(&self) -> FieldDescriptor;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn from_i64(&self, v: i64) -> Self::Elem;
    /// `num/den`, or `None` when the denominator vanishes in the field.
    fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Option<Self::Elem>;
    /// Uniform over a finite field; an integer in `[-bound, bound]` over ℚ.
    fn random_elem<R: Rng + ?Sized>(&self, rng: &mut R, bound: i64) -> Self::Elem;
    /// Text form used by the polynomial printer. Finite-field residues are
    /// printed with their representative of least absolute value.
    fn format_elem(&self, a: &Self::Elem) -> String;
    /// Number of elements, `None` if infinite.
    fn size(&self) -> Option<u64>;

    fn generic_extension(&self) -> Self::Ext;
    fn embed(&self, ext: &Self::Ext, a: &Self::Elem) -> <Self::Ext as Field>::Elem;
    /// Inverse of [`Field::embed`] on the image of the base field.
    fn restrict(&self, ext: &Self::Ext, a: &<Self::Ext as Field>::Elem) -> Option<Self::Elem>;

    /// Multiplier that brings a coefficient list into normal form: monic by
    /// default, primitive integral with positive leading entry over ℚ.
    fn normalizer(&self, coeffs: &[Self::Elem]) -> Self::Elem {
        coeffs
            .iter()
            .find(|c| !self.is_zero(c))
            .and_then(|c| self.inv(c))
            .unwrap_or_else(|| self.one())
    }

    fn characteristic(&self) -> u64 {
        self.descriptor().characteristic
    }

    fn char_exponent(&self) -> u64 {
        self.descriptor().char_exponent_p
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }
}

// ---------------------------------------------------------------------------
// Rationals

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;
    type Ext = Rationals;

    fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor::rationals()
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Option<BigRational> {
        if den.is_zero() {
            None
        } else {
            Some(BigRational::new(num.clone(), den.clone()))
        }
    }
    fn random_elem<R: Rng + ?Sized>(&self, rng: &mut R, bound: i64) -> BigRational {
        self.from_i64(rng.random_range(-bound..=bound))
    }
    fn format_elem(&self, a: &BigRational) -> String {
        if a.is_integer() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }
    fn size(&self) -> Option<u64> {
        None
    }
    fn generic_extension(&self) -> Rationals {
        Rationals
    }
    fn embed(&self, _ext: &Rationals, a: &BigRational) -> BigRational {
        a.clone()
    }
    fn restrict(&self, _ext: &Rationals, a: &BigRational) -> Option<BigRational> {
        Some(a.clone())
    }

    fn normalizer(&self, coeffs: &[BigRational]) -> BigRational {
        let mut den_lcm = BigInt::one();
        let mut num_gcd = BigInt::zero();
        let mut lead_negative = None;
        for c in coeffs.iter().filter(|c| !c.is_zero()) {
            den_lcm = den_lcm.lcm(c.denom());
            num_gcd = num_gcd.gcd(c.numer());
            lead_negative.get_or_insert(c.is_negative());
        }
        if num_gcd.is_zero() {
            return BigRational::one();
        }
        let scale = BigRational::new(den_lcm, num_gcd);
        if lead_negative == Some(true) {
            -scale
        } else {
            scale
        }
    }
}

// ---------------------------------------------------------------------------
// Prime fields

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        FieldDescriptor::prime(p as u64)?;
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    #[inline]
    fn reduce_i64(&self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }

    fn reduce_big(&self, v: &BigInt) -> u32 {
        let p = BigInt::from(self.p);
        v.mod_floor(&p).to_u32().expect("residue fits in u32")
    }
}

impl Field for PrimeField {
    type Elem = u32;
    type Ext = GaloisField;

    fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor {
            kind: FieldKind::PrimeField,
            characteristic: self.p as u64,
            char_exponent_p: self.p as u64,
        }
    }
    #[inline]
    fn zero(&self) -> u32 {
        0
    }
    #[inline]
    fn one(&self) -> u32 {
        1
    }
    #[inline]
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    #[inline]
    fn add(&self, a: &u32, b: &u32) -> u32 {
        let s = *a as u64 + *b as u64;
        (if s >= self.p as u64 { s - self.p as u64 } else { s }) as u32
    }
    #[inline]
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        if a >= b {
            a - b
        } else {
            (*a as u64 + self.p as u64 - *b as u64) as u32
        }
    }
    #[inline]
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 * *b as u64) % self.p as u64) as u32
    }
    #[inline]
    fn neg(&self, a: &u32) -> u32 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u32) -> Option<u32> {
        if *a == 0 {
            None
        } else {
            Some(self.pow(a, self.p as u64 - 2))
        }
    }
    fn from_i64(&self, v: i64) -> u32 {
        self.reduce_i64(v)
    }
    fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Option<u32> {
        let d = self.reduce_big(den);
        let n = self.reduce_big(num);
        self.inv(&d).map(|di| self.mul(&n, &di))
    }
    fn random_elem<R: Rng + ?Sized>(&self, rng: &mut R, _bound: i64) -> u32 {
        rng.random_range(0..self.p)
    }
    fn format_elem(&self, a: &u32) -> String {
        signed_residue(*a as u64, self.p as u64)
    }
    fn size(&self) -> Option<u64> {
        Some(self.p as u64)
    }
    fn generic_extension(&self) -> GaloisField {
        GaloisField::generic_over(self.p)
    }
    fn embed(&self, _ext: &GaloisField, a: &u32) -> u32 {
        // base-p digit encoding: the prime subfield is digit 0
        *a
    }
    fn restrict(&self, _ext: &GaloisField, a: &u32) -> Option<u32> {
        (*a < self.p).then_some(*a)
    }
}

fn signed_residue(a: u64, p: u64) -> String {
    if p > 2 && a > p / 2 {
        format!("-{}", p - a)
    } else {
        a.to_string()
    }
}

// ---------------------------------------------------------------------------
// Galois fields GF(p^k)

#[derive(Debug)]
struct GfTables {
    /// `exp[i]` is the encoding of `g^i` for a primitive element `g`.
    exp: Vec<u32>,
    /// `log[a]` for nonzero encodings `a`.
    log: Vec<u32>,
}

/// `GF(p^k)` with elements encoded as base-`p` digit strings
/// `c_0 + c_1 p + ... + c_{k-1} p^{k-1}` of polynomial coefficients.
/// The prime subfield is exactly the encodings `0..p`.
#[derive(Clone, Debug)]
pub struct GaloisField {
    p: u32,
    k: u32,
    q: u64,
    tables: Option<Arc<GfTables>>,
}

impl PartialEq for GaloisField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.k == other.k
    }
}

impl GaloisField {
    /// `GF(p^k)`; `k = 1` is the prime field itself.
    pub fn new(p: u32, k: u32) -> Result<Self> {
        FieldDescriptor::prime(p as u64)?;
        if k == 0 {
            return Err(Error::InvalidField("extension degree must be positive".into()));
        }
        if k == 1 {
            return Ok(GaloisField { p, k, q: p as u64, tables: None });
        }
        let q = (p as u64).checked_pow(k).filter(|&q| q <= MAX_TABLE_SIZE).ok_or_else(|| {
            Error::InvalidField(format!("GF({p}^{k}) exceeds the table size limit"))
        })?;
        Ok(GaloisField { p, k, q, tables: Some(cached_tables(p, k)) })
    }

    /// The smallest extension with at least [`GENERIC_FIELD_SIZE`] elements,
    /// falling back to the prime field when that extension would need
    /// tables beyond the size limit.
    pub fn generic_over(p: u32) -> Self {
        let mut k = 1u32;
        let mut q = p as u64;
        while q < GENERIC_FIELD_SIZE {
            k += 1;
            q *= p as u64;
        }
        if k > 1 && q > MAX_TABLE_SIZE {
            k = 1;
        }
        GaloisField::new(p, k).expect("valid prime")
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn order(&self) -> u64 {
        self.q
    }

    fn digits(&self, mut a: u32) -> impl Iterator<Item = u32> + '_ {
        (0..self.k).map(move |_| {
            let d = a % self.p;
            a /= self.p;
            d
        })
    }

    fn from_digits(&self, digits: impl Iterator<Item = u32>) -> u32 {
        let mut acc = 0u64;
        let mut scale = 1u64;
        for d in digits {
            acc += d as u64 * scale;
            scale *= self.p as u64;
        }
        acc as u32
    }
}

fn cached_tables(p: u32, k: u32) -> Arc<GfTables> {
    static CACHE: OnceLock<Mutex<HashMap<(u32, u32), Arc<GfTables>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().expect("table cache poisoned");
    guard.entry((p, k)).or_insert_with(|| Arc::new(build_tables(p, k))).clone()
}

/// Searches monic degree-`k` polynomials for one with `x` primitive and
/// tabulates the powers of `x`.
fn build_tables(p: u32, k: u32) -> GfTables {
    let q = (p as u64).pow(k) as usize;
    let ku = k as usize;
    // candidate lower coefficients c_0..c_{k-1}, with c_0 != 0
    let mut lower = vec![0u32; ku];
    lower[0] = 1;
    loop {
        if let Some(exp) = powers_of_x(p, &lower, q) {
            let mut log = vec![0u32; q];
            for (i, &e) in exp.iter().enumerate() {
                log[e as usize] = i as u32;
            }
            return GfTables { exp, log };
        }
        // next candidate in base-p counting, skipping c_0 = 0
        let mut i = 0;
        loop {
            lower[i] += 1;
            if lower[i] < p {
                break;
            }
            lower[i] = if i == 0 { 1 } else { 0 };
            i += 1;
            assert!(i < ku, "no primitive polynomial found for GF({p}^{k})");
        }
    }
}

/// Powers of `x` modulo `x^k + sum c_i x^i` until the cycle closes; `None`
/// unless `x` has multiplicative order `q - 1`.
fn powers_of_x(p: u32, lower: &[u32], q: usize) -> Option<Vec<u32>> {
    let k = lower.len();
    let mut cur = vec![0u32; k];
    cur[0] = 1;
    let encode = |v: &[u32]| -> u32 {
        v.iter().rev().fold(0u64, |acc, &d| acc * p as u64 + d as u64) as u32
    };
    let mut exp = Vec::with_capacity(q - 1);
    for step in 0..q - 1 {
        let e = encode(&cur);
        if step > 0 && e == 1 {
            return None;
        }
        exp.push(e);
        // multiply by x
        let top = cur[k - 1];
        for i in (1..k).rev() {
            cur[i] = cur[i - 1];
        }
        cur[0] = 0;
        if top != 0 {
            for i in 0..k {
                // x^k = -sum c_i x^i
                let sub = (top as u64 * lower[i] as u64 % p as u64) as u32;
                cur[i] = (cur[i] + p - sub) % p;
            }
        }
    }
    (encode(&cur) == 1).then_some(exp)
}

impl Field for GaloisField {
    type Elem = u32;
    type Ext = GaloisField;

    fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor {
            kind: FieldKind::PrimeField,
            characteristic: self.p as u64,
            char_exponent_p: self.p as u64,
        }
    }
    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1
    }
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    fn add(&self, a: &u32, b: &u32) -> u32 {
        if self.k == 1 {
            return ((*a as u64 + *b as u64) % self.p as u64) as u32;
        }
        if self.p == 2 {
            return a ^ b;
        }
        let digits: Vec<u32> =
            self.digits(*a).zip(self.digits(*b)).map(|(x, y)| (x + y) % self.p).collect();
        self.from_digits(digits.into_iter())
    }
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        self.add(a, &self.neg(b))
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        match &self.tables {
            None => ((*a as u64 * *b as u64) % self.p as u64) as u32,
            Some(t) => {
                if *a == 0 || *b == 0 {
                    return 0;
                }
                let n = (self.q - 1) as usize;
                t.exp[(t.log[*a as usize] as usize + t.log[*b as usize] as usize) % n]
            }
        }
    }
    fn neg(&self, a: &u32) -> u32 {
        if self.k == 1 {
            return if *a == 0 { 0 } else { self.p - a };
        }
        if self.p == 2 {
            return *a;
        }
        let digits: Vec<u32> = self.digits(*a).map(|x| (self.p - x) % self.p).collect();
        self.from_digits(digits.into_iter())
    }
    fn inv(&self, a: &u32) -> Option<u32> {
        if *a == 0 {
            return None;
        }
        match &self.tables {
            None => Some(self.pow(a, self.p as u64 - 2)),
            Some(t) => {
                let n = (self.q - 1) as usize;
                Some(t.exp[(n - t.log[*a as usize] as usize) % n])
            }
        }
    }
    fn from_i64(&self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }
    fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Option<u32> {
        let p = BigInt::from(self.p);
        let n = num.mod_floor(&p).to_u32()?;
        let d = den.mod_floor(&p).to_u32()?;
        self.inv(&d).map(|di| self.mul(&n, &di))
    }
    fn random_elem<R: Rng + ?Sized>(&self, rng: &mut R, _bound: i64) -> u32 {
        rng.random_range(0..self.q) as u32
    }
    fn format_elem(&self, a: &u32) -> String {
        if self.k == 1 || *a < self.p {
            signed_residue(*a as u64, self.p as u64)
        } else {
            format!("gf{}", a)
        }
    }
    fn size(&self) -> Option<u64> {
        Some(self.q)
    }
    fn generic_extension(&self) -> GaloisField {
        self.clone()
    }
    fn embed(&self, _ext: &GaloisField, a: &u32) -> u32 {
        *a
    }
    fn restrict(&self, _ext: &GaloisField, a: &u32) -> Option<u32> {
        Some(*a)
    }
}

/// Runs `$body` with `$f` bound to the concrete field selected by a
/// descriptor. The body must evaluate to the same type in both arms.
#[macro_export]
macro_rules! with_field {
    ($desc:expr, |$f:ident| $body:expr) => {{
        let desc: $crate::field::FieldDescriptor = $desc;
        match desc.kind {
            $crate::field::FieldKind::Rationals => {
                let $f = $crate::field::Rationals;
                $body
            }
            $crate::field::FieldKind::PrimeField => {
                let $f = $crate::field::PrimeField::new(desc.characteristic as u32)
                    .expect("descriptor holds a valid prime");
                $body
            }
        }
    }};
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn descriptor_validation() {
        assert_eq!(FieldDescriptor::from_p(0).unwrap().char_exponent_p, 1);
        assert_eq!(FieldDescriptor::from_p(7).unwrap().char_exponent_p, 7);
        assert!(FieldDescriptor::from_p(9).is_err());
        assert!(FieldDescriptor::from_p(1).is_err());
    }

    #[test]
    fn prime_field_inverse_and_ratio() {
        let f = PrimeField::new(32003).unwrap();
        for a in [1u32, 2, 17, 32002] {
            assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), 1);
        }
        let half = f.from_ratio(&BigInt::from(1), &BigInt::from(2)).unwrap();
        assert_eq!(f.add(&half, &half), 1);
        assert_eq!(f.from_ratio(&BigInt::from(1), &BigInt::from(32003)), None);
        assert_eq!(f.format_elem(&32002), "-1");
    }

    #[test]
    fn rational_normalizer_is_primitive() {
        let q = Rationals;
        let coeffs = vec![
            BigRational::new((-2).into(), 3.into()),
            BigRational::new(4.into(), 9.into()),
        ];
        let s = q.normalizer(&coeffs);
        let scaled: Vec<_> = coeffs.iter().map(|c| c * &s).collect();
        assert_eq!(scaled[0], BigRational::from_integer(3.into()));
        assert_eq!(scaled[1], BigRational::from_integer((-2).into()));
    }

    fn check_field_axioms<F: Field>(f: &F, trials: usize) {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..trials {
            let a = f.random_elem(&mut rng, 50);
            let b = f.random_elem(&mut rng, 50);
            let c = f.random_elem(&mut rng, 50);
            assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
            assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
            assert_eq!(f.add(&a, &f.neg(&a)), f.zero());
            assert_eq!(f.sub(&a, &b), f.add(&a, &f.neg(&b)));
            if !f.is_zero(&a) {
                assert!(f.is_one(&f.mul(&a, &f.inv(&a).unwrap())));
            }
        }
    }

    #[test]
    fn galois_fields_satisfy_field_axioms() {
        for (p, k) in [(2, 4), (2, 15), (3, 10), (5, 3), (7, 1)] {
            let f = GaloisField::new(p, k).unwrap();
            assert_eq!(f.order(), (p as u64).pow(k));
            check_field_axioms(&f, 300);
        }
        check_field_axioms(&PrimeField::new(3).unwrap(), 100);
        check_field_axioms(&Rationals, 50);
    }

    #[test]
    fn galois_prime_subfield_matches_prime_field() {
        let gf = GaloisField::new(3, 4).unwrap();
        let fp = PrimeField::new(3).unwrap();
        for a in 0..3u32 {
            for b in 0..3u32 {
                assert_eq!(gf.add(&a, &b), fp.add(&a, &b));
                assert_eq!(gf.mul(&a, &b), fp.mul(&a, &b));
            }
        }
    }

    #[test]
    fn generic_extension_sizes() {
        assert_eq!(GaloisField::generic_over(2).order(), 32768);
        assert_eq!(GaloisField::generic_over(3).order(), 59049);
        assert_eq!(GaloisField::generic_over(32003).order(), 32003);
        // 2003^2 exceeds the table limit: falls back to the prime itself
        assert_eq!(GaloisField::generic_over(2003).order(), 2003);
    }

    #[test]
    fn frobenius_fixes_prime_subfield_of_extension() {
        let gf = GaloisField::new(2, 15).unwrap();
        for a in 0..2u32 {
            assert_eq!(gf.pow(&a, 2), a);
        }
        let x = 2u32; // the class of x
        assert_ne!(gf.pow(&x, 2), x);
        assert_eq!(gf.pow(&x, gf.order() - 1), 1);
    }
}
