use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fpoly::UPoly;

/// Largest field order (in bits) the packed element representation supports.
pub const MAX_ORDER_BITS: u32 = 62;

const MAX_ODD_DEGREE: usize = 40;

/// Identifies a field by characteristic and degree. Canonical moduli make this
/// a complete identity: two fields with the same key are the same field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FieldKey {
    pub p: u64,
    pub m: u32,
}

impl fmt::Display for FieldKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.m == 1 {
            write!(f, "GF({})", self.p)
        } else {
            write!(f, "GF({}^{})", self.p, self.m)
        }
    }
}

/// An element of a finite field.
///
/// The payload packs the coefficient vector over the prime field: bit `i` for
/// characteristic 2, base-`p` digit `i` otherwise (coefficient of `t^i`). The
/// packed value doubles as the element's index in the canonical enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FElt {
    owner: FieldKey,
    value: u64,
}

impl FElt {
    pub fn owner(&self) -> FieldKey {
        self.owner
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }
}

/// Checked arithmetic operations, see [`FieldDesc::arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow(u64),
    Inv,
    Neg,
}

#[derive(Debug)]
enum Repr {
    /// Low `m` bits of the modulus (the modulus minus `t^m`).
    Binary {
        tail: u64,
        hw_clmul: bool,
    },
    Odd,
}

#[derive(Debug)]
struct Inner {
    key: FieldKey,
    order: u64,
    modulus: Vec<u64>,
    repr: Repr,
}

/// A concrete finite field GF(p^m) with its canonical modulus.
///
/// Cheap to clone; all clones (and all fields built for the same `(p, m)`)
/// compare equal.
#[derive(Clone)]
pub struct FieldDesc(Arc<Inner>);

impl PartialEq for FieldDesc {
    fn eq(&self, other: &Self) -> bool {
        self.0.key == other.0.key
    }
}

impl Eq for FieldDesc {}

impl fmt::Debug for FieldDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {:?}", self.0.key, self.0.modulus)
    }
}

impl fmt::Display for FieldDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.key.fmt(f)
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime factors in increasing order.
pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Splits a prime power `q = p^k` into `(p, k)`.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = prime_factors(q)[0];
    let mut k = 0;
    let mut r = q;
    while r.is_multiple_of(p) {
        r /= p;
        k += 1;
    }
    (r == 1).then_some((p, k))
}

fn checked_order(p: u64, m: u32) -> Option<u64> {
    let mut order: u64 = 1;
    for _ in 0..m {
        order = order.checked_mul(p)?;
        if order > (1u64 << MAX_ORDER_BITS) {
            return None;
        }
    }
    Some(order)
}

fn field_cache() -> &'static Mutex<HashMap<FieldKey, FieldDesc>> {
    static CACHE: OnceLock<Mutex<HashMap<FieldKey, FieldDesc>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Builds the canonical GF(p^m).
///
/// The modulus is the least monic irreducible polynomial of degree `m` when
/// the lower coefficients are read as a base-`p` number with the constant term
/// least significant. For `m = 1` the modulus is `t`.
pub fn make_field(p: u64, m: u32) -> Result<FieldDesc> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if m == 0 {
        return Err(Error::ZeroDegree);
    }
    if p >= 1 << 31 || (p > 2 && m as usize > MAX_ODD_DEGREE) {
        return Err(Error::Size {
            what: format!("field GF({p}^{m})"),
            size: (p as u128).saturating_pow(m),
            limit: 1 << MAX_ORDER_BITS,
        });
    }
    let order = checked_order(p, m).ok_or_else(|| Error::Size {
        what: format!("field GF({p}^{m})"),
        size: (p as u128).saturating_pow(m),
        limit: 1 << MAX_ORDER_BITS,
    })?;
    let key = FieldKey { p, m };
    let cached = field_cache().lock().unwrap().get(&key).cloned();
    if let Some(f) = cached {
        return Ok(f);
    }

    let modulus = if m == 1 {
        vec![0, 1]
    } else {
        let prime = make_field(p, 1)?;
        let tails = order;
        let mut found = None;
        for tail in 0..tails {
            let mut coeffs = digits(tail, p, m as usize);
            coeffs.push(1);
            let f = UPoly::from_values(&prime, &coeffs);
            if f.is_irreducible()? {
                found = Some(coeffs);
                break;
            }
        }
        found.expect("an irreducible polynomial exists in every degree")
    };
    let field = FieldDesc::with_modulus(p, m, order, modulus);
    let mut cache = field_cache().lock().unwrap();
    Ok(cache.entry(key).or_insert(field).clone())
}

fn digits(mut v: u64, p: u64, len: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push(v % p);
        v /= p;
    }
    out
}

#[cfg(target_arch = "x86_64")]
#[target_feature(enable = "pclmulqdq")]
unsafe fn clmul_hw(a: u64, b: u64) -> u128 {
    use std::arch::x86_64::{_mm_clmulepi64_si128, _mm_set_epi64x};
    let r = _mm_clmulepi64_si128(_mm_set_epi64x(0, a as i64), _mm_set_epi64x(0, b as i64), 0);
    std::mem::transmute(r)
}

fn clmul_sw(a: u64, b: u64) -> u128 {
    let b = b as u128;
    let mut a = a;
    let mut acc = 0u128;
    let mut shift = 0;
    while a != 0 {
        let mask = 0u128.wrapping_sub((a & 1) as u128);
        acc ^= (b << shift) & mask;
        a >>= 1;
        shift += 1;
    }
    acc
}

fn hw_clmul_available() -> bool {
    #[cfg(target_arch = "x86_64")]
    {
        std::arch::is_x86_feature_detected!("pclmulqdq")
    }
    #[cfg(not(target_arch = "x86_64"))]
    {
        false
    }
}

impl FieldDesc {
    fn with_modulus(p: u64, m: u32, order: u64, modulus: Vec<u64>) -> Self {
        let repr = if p == 2 {
            let tail = modulus[..m as usize]
                .iter()
                .enumerate()
                .fold(0u64, |acc, (i, &c)| acc | (c << i));
            Repr::Binary {
                tail,
                hw_clmul: hw_clmul_available(),
            }
        } else {
            Repr::Odd
        };
        FieldDesc(Arc::new(Inner {
            key: FieldKey { p, m },
            order,
            modulus,
            repr,
        }))
    }

    pub fn key(&self) -> FieldKey {
        self.0.key
    }

    pub fn characteristic(&self) -> u64 {
        self.0.key.p
    }

    pub fn degree(&self) -> u32 {
        self.0.key.m
    }

    pub fn order(&self) -> u64 {
        self.0.order
    }

    /// Modulus coefficients, constant term first; monic of degree `m`.
    pub fn modulus(&self) -> &[u64] {
        &self.0.modulus
    }

    pub fn is_binary(&self) -> bool {
        self.0.key.p == 2
    }

    #[inline]
    pub(crate) fn wrap(&self, value: u64) -> FElt {
        FElt {
            owner: self.0.key,
            value,
        }
    }

    pub fn zero(&self) -> FElt {
        self.wrap(0)
    }

    pub fn one(&self) -> FElt {
        self.wrap(1)
    }

    /// The class of `t`, a root of the modulus.
    pub fn root(&self) -> FElt {
        if self.degree() == 1 {
            // t ≡ 0 mod t
            self.zero()
        } else {
            self.wrap(self.characteristic())
        }
    }

    /// `k · 1`.
    pub fn from_int(&self, k: i64) -> FElt {
        let p = self.characteristic() as i64;
        self.wrap(k.rem_euclid(p) as u64)
    }

    /// The element with canonical index `index` (its packed coefficient value).
    pub fn element(&self, index: u64) -> Result<FElt> {
        if index >= self.order() {
            return Err(Error::domain(format!(
                "index {index} out of range for {}",
                self.key()
            )));
        }
        Ok(self.wrap(index))
    }

    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<FElt> {
        let p = self.characteristic();
        if coeffs.len() > self.degree() as usize {
            return Err(Error::domain(format!(
                "{} coefficients given for {}",
                coeffs.len(),
                self.key()
            )));
        }
        if let Some(&c) = coeffs.iter().find(|&&c| c >= p) {
            return Err(Error::domain(format!("coefficient {c} not reduced mod {p}")));
        }
        let value = coeffs.iter().rev().fold(0u64, |acc, &c| acc * p + c);
        Ok(self.wrap(value))
    }

    /// Coefficient vector over the prime field, constant term first, length `m`.
    pub fn coeffs(&self, a: FElt) -> Vec<u64> {
        digits(a.value, self.characteristic(), self.degree() as usize)
    }

    /// Every element in canonical order.
    pub fn elements(&self) -> impl Iterator<Item = FElt> + '_ {
        self.elements_in(0, self.order())
    }

    /// Elements with canonical index in `start..end`; disjoint ranges partition
    /// the field for parallel scans.
    pub fn elements_in(&self, start: u64, end: u64) -> impl Iterator<Item = FElt> + '_ {
        let end = end.min(self.order());
        (start..end).map(move |v| self.wrap(v))
    }

    pub fn owns(&self, a: FElt) -> bool {
        a.owner == self.0.key
    }

    fn check_owner(&self, a: FElt) -> Result<()> {
        if self.owns(a) {
            Ok(())
        } else {
            Err(Error::MixedOwners {
                left: self.key().to_string(),
                right: a.owner.to_string(),
            })
        }
    }

    /// Checked arithmetic: ownership is validated and division by zero is an
    /// error. The unchecked methods below are the hot path.
    pub fn arith(&self, a: FElt, b: FElt, op: ArithOp) -> Result<FElt> {
        self.check_owner(a)?;
        self.check_owner(b)?;
        Ok(match op {
            ArithOp::Add => self.add(a, b),
            ArithOp::Sub => self.sub(a, b),
            ArithOp::Mul => self.mul(a, b),
            ArithOp::Div => self.div(a, b)?,
            ArithOp::Pow(e) => self.pow(a, e),
            ArithOp::Inv => self.inv(a)?,
            ArithOp::Neg => self.neg(a),
        })
    }

    #[inline]
    pub fn add(&self, a: FElt, b: FElt) -> FElt {
        debug_assert!(self.owns(a) && self.owns(b));
        match self.0.repr {
            Repr::Binary { .. } => self.wrap(a.value ^ b.value),
            Repr::Odd => self.odd_combine(a.value, b.value, false),
        }
    }

    #[inline]
    pub fn sub(&self, a: FElt, b: FElt) -> FElt {
        debug_assert!(self.owns(a) && self.owns(b));
        match self.0.repr {
            Repr::Binary { .. } => self.wrap(a.value ^ b.value),
            Repr::Odd => self.odd_combine(a.value, b.value, true),
        }
    }

    #[inline]
    pub fn neg(&self, a: FElt) -> FElt {
        match self.0.repr {
            Repr::Binary { .. } => a,
            Repr::Odd => self.odd_combine(0, a.value, true),
        }
    }

    #[inline]
    pub fn mul(&self, a: FElt, b: FElt) -> FElt {
        debug_assert!(self.owns(a) && self.owns(b));
        match self.0.repr {
            Repr::Binary { tail, hw_clmul } => self.wrap(self.bin_mul(a.value, b.value, tail, hw_clmul)),
            Repr::Odd => self.wrap(self.odd_mul(a.value, b.value)),
        }
    }

    #[inline]
    pub fn square(&self, a: FElt) -> FElt {
        self.mul(a, a)
    }

    pub fn pow(&self, a: FElt, mut e: u64) -> FElt {
        let mut base = a;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            e >>= 1;
            if e > 0 {
                base = self.square(base);
            }
        }
        acc
    }

    pub fn inv(&self, a: FElt) -> Result<FElt> {
        if a.is_zero() {
            return Err(Error::Arithmetic(format!("inverse of zero in {}", self.key())));
        }
        Ok(self.pow(a, self.order() - 2))
    }

    pub fn div(&self, a: FElt, b: FElt) -> Result<FElt> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// Scalar multiple `k · a` for an integer `k`.
    pub fn scale(&self, a: FElt, k: i64) -> FElt {
        self.mul(self.from_int(k), a)
    }

    /// Multiplicative order of a nonzero element.
    pub fn mult_order(&self, a: FElt) -> Result<u64> {
        if a.is_zero() {
            return Err(Error::domain("zero has no multiplicative order"));
        }
        let mut ord = self.order() - 1;
        for r in prime_factors(ord) {
            while ord.is_multiple_of(r) && self.pow(a, ord / r) == self.one() {
                ord /= r;
            }
        }
        Ok(ord)
    }

    /// The first element (canonical order) generating the multiplicative group.
    pub fn primitive_element(&self) -> FElt {
        let full = self.order() - 1;
        let factors = prime_factors(full);
        self.elements()
            .skip(1)
            .find(|&g| factors.iter().all(|&r| self.pow(g, full / r) != self.one()))
            .expect("the multiplicative group of a finite field is cyclic")
    }

    #[inline]
    fn bin_mul(&self, a: u64, b: u64, tail: u64, hw: bool) -> u64 {
        let m = self.degree();
        let clmul = |x: u64, y: u64| -> u128 {
            #[cfg(target_arch = "x86_64")]
            if hw {
                // SAFETY: `hw` is only set when pclmulqdq was detected at runtime.
                return unsafe { clmul_hw(x, y) };
            }
            let _ = hw;
            clmul_sw(x, y)
        };
        let mut r = clmul(a, b);
        let low_mask = (1u128 << m) - 1;
        while r >> m != 0 {
            let hi = (r >> m) as u64;
            r = (r & low_mask) ^ clmul(hi, tail);
        }
        r as u64
    }

    fn odd_digits(&self, mut v: u64, out: &mut [u64; MAX_ODD_DEGREE]) {
        let p = self.characteristic();
        for d in out.iter_mut().take(self.degree() as usize) {
            *d = v % p;
            v /= p;
        }
    }

    fn odd_pack(&self, digits: &[u64]) -> u64 {
        let p = self.characteristic();
        digits.iter().rev().fold(0u64, |acc, &c| acc * p + c)
    }

    fn odd_combine(&self, a: u64, b: u64, subtract: bool) -> FElt {
        let p = self.characteristic();
        let m = self.degree() as usize;
        let mut da = [0u64; MAX_ODD_DEGREE];
        let mut db = [0u64; MAX_ODD_DEGREE];
        self.odd_digits(a, &mut da);
        self.odd_digits(b, &mut db);
        for i in 0..m {
            da[i] = if subtract {
                (da[i] + p - db[i]) % p
            } else {
                (da[i] + db[i]) % p
            };
        }
        self.wrap(self.odd_pack(&da[..m]))
    }

    fn odd_mul(&self, a: u64, b: u64) -> u64 {
        let p = self.characteristic();
        let m = self.degree() as usize;
        let mut da = [0u64; MAX_ODD_DEGREE];
        let mut db = [0u64; MAX_ODD_DEGREE];
        self.odd_digits(a, &mut da);
        self.odd_digits(b, &mut db);
        let mut prod = [0u64; 2 * MAX_ODD_DEGREE];
        for i in 0..m {
            if da[i] == 0 {
                continue;
            }
            for j in 0..m {
                prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
            }
        }
        let modulus = &self.0.modulus;
        for k in (m..2 * m - 1).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            let neg_c = p - c;
            for j in 0..m {
                prod[k - m + j] = (prod[k - m + j] + neg_c * modulus[j]) % p;
            }
            prod[k] = 0;
        }
        self.odd_pack(&prod[..m])
    }
}
