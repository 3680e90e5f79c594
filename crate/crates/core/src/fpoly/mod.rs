//! Univariate polynomials over a finite field.

mod text;

use std::fmt;

use crate::error::{Error, Result};
use crate::ffield::{prime_factors, BaseEmbedding, ExtDesc, FElt, FieldDesc};

/// A polynomial with coefficients in `field`, constant term first. The
/// coefficient vector never carries trailing zeros; the zero polynomial is empty.
#[derive(Clone, PartialEq, Eq)]
pub struct UPoly {
    field: FieldDesc,
    coeffs: Vec<FElt>,
}

impl fmt::Debug for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UPoly[{}]({})", self.field, self)
    }
}

impl UPoly {
    pub fn new(field: &FieldDesc, coeffs: Vec<FElt>) -> Result<Self> {
        if let Some(c) = coeffs.iter().find(|c| !field.owns(**c)) {
            return Err(Error::MixedOwners {
                left: field.key().to_string(),
                right: c.owner().to_string(),
            });
        }
        Ok(Self::raw(field, coeffs))
    }

    fn raw(field: &FieldDesc, mut coeffs: Vec<FElt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UPoly {
            field: field.clone(),
            coeffs,
        }
    }

    /// Builds a polynomial from packed coefficient values, constant term first.
    ///
    /// Panics if a value is not an element index of `field`.
    pub fn from_values(field: &FieldDesc, values: &[u64]) -> Self {
        let coeffs = values
            .iter()
            .map(|&v| field.element(v).expect("coefficient out of range"))
            .collect();
        Self::raw(field, coeffs)
    }

    pub fn zero(field: &FieldDesc) -> Self {
        Self::raw(field, Vec::new())
    }

    pub fn one(field: &FieldDesc) -> Self {
        Self::raw(field, vec![field.one()])
    }

    pub fn constant(field: &FieldDesc, c: FElt) -> Self {
        Self::raw(field, vec![c])
    }

    /// The indeterminate `t`.
    pub fn t(field: &FieldDesc) -> Self {
        Self::raw(field, vec![field.zero(), field.one()])
    }

    pub fn monomial(field: &FieldDesc, c: FElt, k: usize) -> Self {
        let mut coeffs = vec![field.zero(); k + 1];
        coeffs[k] = c;
        Self::raw(field, coeffs)
    }

    /// ∏ (t − r) over `roots`.
    pub fn from_roots(field: &FieldDesc, roots: &[FElt]) -> Self {
        let mut c = vec![field.one()];
        for &r in roots {
            let mut next = vec![field.zero(); c.len() + 1];
            for (i, &ci) in c.iter().enumerate() {
                next[i + 1] = field.add(next[i + 1], ci);
                next[i] = field.sub(next[i], field.mul(r, ci));
            }
            c = next;
        }
        Self::raw(field, c)
    }

    pub fn field(&self) -> &FieldDesc {
        &self.field
    }

    pub fn coeffs(&self) -> &[FElt] {
        &self.coeffs
    }

    /// Coefficient of `t^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> FElt {
        self.coeffs.get(k).copied().unwrap_or_else(|| self.field.zero())
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<FElt> {
        self.coeffs.last().copied()
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == Some(self.field.one())
    }

    fn check_same(&self, other: &UPoly) -> Result<()> {
        if self.field != other.field {
            return Err(Error::MixedOwners {
                left: self.field.key().to_string(),
                right: other.field.key().to_string(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &UPoly) -> Result<UPoly> {
        self.check_same(other)?;
        Ok(self.add_raw(other, false))
    }

    pub fn sub(&self, other: &UPoly) -> Result<UPoly> {
        self.check_same(other)?;
        Ok(self.add_raw(other, true))
    }

    fn add_raw(&self, other: &UPoly, subtract: bool) -> UPoly {
        let f = &self.field;
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|i| {
                let (a, b) = (self.coeff(i), other.coeff(i));
                if subtract {
                    f.sub(a, b)
                } else {
                    f.add(a, b)
                }
            })
            .collect();
        Self::raw(f, coeffs)
    }

    pub fn neg(&self) -> UPoly {
        let f = &self.field;
        Self::raw(f, self.coeffs.iter().map(|&c| f.neg(c)).collect())
    }

    pub fn scale(&self, c: FElt) -> UPoly {
        let f = &self.field;
        Self::raw(f, self.coeffs.iter().map(|&x| f.mul(c, x)).collect())
    }

    pub fn mul(&self, other: &UPoly) -> Result<UPoly> {
        self.check_same(other)?;
        Ok(self.mul_raw(other))
    }

    fn mul_raw(&self, other: &UPoly) -> UPoly {
        let f = &self.field;
        if self.is_zero() || other.is_zero() {
            return Self::zero(f);
        }
        let mut out = vec![f.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Self::raw(f, out)
    }

    /// Quotient and remainder; errors on a zero divisor.
    pub fn divrem(&self, divisor: &UPoly) -> Result<(UPoly, UPoly)> {
        self.check_same(divisor)?;
        let f = &self.field;
        let Some(dd) = divisor.degree() else {
            return Err(Error::Arithmetic("division by the zero polynomial".into()));
        };
        let lead_inv = f.inv(divisor.coeffs[dd])?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(f), self.clone()));
        }
        let mut quot = vec![f.zero(); rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let c = f.mul(rem[k], lead_inv);
            if c.is_zero() {
                continue;
            }
            quot[k - dd] = c;
            for (j, &dc) in divisor.coeffs.iter().enumerate() {
                rem[k - dd + j] = f.sub(rem[k - dd + j], f.mul(c, dc));
            }
        }
        rem.truncate(dd);
        Ok((Self::raw(f, quot), Self::raw(f, rem)))
    }

    pub fn rem(&self, divisor: &UPoly) -> Result<UPoly> {
        Ok(self.divrem(divisor)?.1)
    }

    /// Scales to leading coefficient 1; errors on the zero polynomial.
    pub fn monic(&self) -> Result<UPoly> {
        let lead = self
            .leading()
            .ok_or_else(|| Error::Arithmetic("the zero polynomial has no monic form".into()))?;
        Ok(self.scale(self.field.inv(lead)?))
    }

    /// Monic greatest common divisor; errors when `other` is zero.
    pub fn gcd(&self, other: &UPoly) -> Result<UPoly> {
        self.check_same(other)?;
        if other.is_zero() {
            return Err(Error::Arithmetic("gcd with the zero polynomial".into()));
        }
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Value at `x`, an element of the coefficient field.
    pub fn eval(&self, x: FElt) -> Result<FElt> {
        let f = &self.field;
        if !f.owns(x) {
            return Err(Error::MixedOwners {
                left: f.key().to_string(),
                right: x.owner().to_string(),
            });
        }
        Ok(self
            .coeffs
            .iter()
            .rev()
            .fold(f.zero(), |acc, &c| f.add(f.mul(acc, x), c)))
    }

    /// Value at `x` in an extension `target` of the prime field. Only
    /// polynomials over a prime field embed canonically.
    pub fn eval_in(&self, target: &FieldDesc, x: FElt) -> Result<FElt> {
        if self.field.degree() != 1 || self.field.characteristic() != target.characteristic() {
            return Err(Error::domain(format!(
                "coefficients in {} do not embed canonically into {}",
                self.field, target
            )));
        }
        if !target.owns(x) {
            return Err(Error::MixedOwners {
                left: target.key().to_string(),
                right: x.owner().to_string(),
            });
        }
        Ok(self.coeffs.iter().rev().fold(target.zero(), |acc, &c| {
            target.add(target.mul(acc, x), target.from_int(c.value() as i64))
        }))
    }

    /// `self^e mod modulus` by square-and-multiply.
    pub fn powmod(&self, e: u64, modulus: &UPoly) -> Result<UPoly> {
        self.check_same(modulus)?;
        let mut base = self.rem(modulus)?;
        let mut acc = UPoly::one(&self.field).rem(modulus)?;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_raw(&base).rem(modulus)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_raw(&base).rem(modulus)?;
            }
        }
        Ok(acc)
    }

    /// Rabin's test: with Q the coefficient field order and d the degree,
    /// `t^{Q^d} ≡ t (mod f)` and `gcd(t^{Q^{d/r}} − t, f) = 1` for every prime
    /// `r | d`.
    pub fn is_irreducible(&self) -> Result<bool> {
        let d = match self.degree() {
            None | Some(0) => return Err(Error::domain("irreducibility of a constant polynomial")),
            Some(d) => d,
        };
        if d == 1 {
            return Ok(true);
        }
        let f = self.monic()?;
        let field = &self.field;
        let q = field.order();
        let t = UPoly::t(field);
        // frob[k] = t^{Q^k} mod f
        let mut frob = vec![t.rem(&f)?];
        for k in 1..=d {
            let next = frob[k - 1].powmod(q, &f)?;
            frob.push(next);
        }
        if frob[d] != t.rem(&f)? {
            return Ok(false);
        }
        for r in prime_factors(d as u64) {
            let h = frob[d / r as usize].sub(&t)?;
            if h.is_zero() || f.gcd(&h)?.degree() != Some(0) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Re-expresses a polynomial whose coefficients lie in K ⊂ L over the
    /// canonical GF(q).
    pub fn to_base(&self, emb: &BaseEmbedding) -> Result<UPoly> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|&c| emb.to_small(c))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::raw(emb.small(), coeffs))
    }

    /// Inverse of [`UPoly::to_base`].
    pub fn from_base(&self, emb: &BaseEmbedding, big: &FieldDesc) -> UPoly {
        Self::raw(big, self.coeffs.iter().map(|&c| emb.to_big(c)).collect())
    }
}

/// ∏ (t − c) over the distinct conjugates of `y`. Coefficients lie in K.
pub fn min_poly(y: FElt, ext: &ExtDesc) -> UPoly {
    let mut orbit = vec![y];
    let mut x = ext.frobenius(y);
    while x != y {
        orbit.push(x);
        x = ext.frobenius(x);
    }
    UPoly::from_roots(ext.big(), &orbit)
}

/// ∏_{i<n} (t − y^{q^i}): the characteristic polynomial of multiplication by
/// `y` on L as a K-vector space.
pub fn char_poly(y: FElt, ext: &ExtDesc) -> UPoly {
    UPoly::from_roots(ext.big(), &ext.conjugates(y))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::{make_field, KBasis};
    use crate::linalg;

    fn gf2() -> FieldDesc {
        make_field(2, 1).unwrap()
    }

    /// Möbius count of monic irreducibles of degree `d` over GF(q).
    fn necklace(q: u64, d: u64) -> u64 {
        fn mobius(n: u64) -> i64 {
            let f = prime_factors(n);
            let mut m = n;
            for &p in &f {
                m /= p;
                if m.is_multiple_of(p) {
                    return 0;
                }
            }
            if f.len().is_multiple_of(2) {
                1
            } else {
                -1
            }
        }
        let total: i64 = (1..=d)
            .filter(|k| d.is_multiple_of(*k))
            .map(|k| mobius(d / k) * (q as i64).pow(k as u32))
            .sum();
        (total / d as i64) as u64
    }

    #[test]
    fn basic_arith() {
        let f = gf2();
        let a = UPoly::from_values(&f, &[1, 1]);
        assert_eq!(a.mul(&a).unwrap(), UPoly::from_values(&f, &[1, 0, 1]));
        let g = UPoly::from_values(&f, &[1, 0, 1]).gcd(&a).unwrap();
        assert_eq!(g, a);
        assert!(a.gcd(&UPoly::zero(&f)).is_err());
        assert!(a.rem(&UPoly::zero(&f)).is_err());
    }

    #[test]
    fn divrem_reconstructs() {
        let f = make_field(3, 2).unwrap();
        let a = UPoly::from_values(&f, &[1, 2, 3, 4, 5, 6, 7]);
        let b = UPoly::from_values(&f, &[8, 0, 2]);
        let (q, r) = a.divrem(&b).unwrap();
        assert!(r.degree().is_none_or(|d| d < 2));
        assert_eq!(q.mul(&b).unwrap().add(&r).unwrap(), a);
    }

    #[test]
    fn eval_at_root_of_modulus() {
        let big = make_field(2, 6).unwrap();
        let p = UPoly::from_values(&gf2(), &[1, 1, 0, 0, 0, 0, 1]);
        assert!(p.eval_in(&big, big.root()).unwrap().is_zero());
        let nonprime = UPoly::from_values(&make_field(2, 2).unwrap(), &[1, 1]);
        assert!(nonprime.eval_in(&big, big.root()).is_err());
    }

    #[test]
    fn irreducibility_examples() {
        let f = gf2();
        assert!(UPoly::from_values(&f, &[1, 1, 0, 0, 0, 0, 1])
            .is_irreducible()
            .unwrap());
        assert!(UPoly::from_values(&f, &[1, 1, 1, 0, 1, 0, 1])
            .is_irreducible()
            .unwrap());
        assert!(!UPoly::from_values(&f, &[1, 0, 1]).is_irreducible().unwrap());
        assert!(UPoly::from_values(&f, &[1]).is_irreducible().is_err());

        // t^6 + t^2 + t + α over GF(4), for both α outside GF(2)
        let f4 = make_field(2, 2).unwrap();
        for alpha in [2, 3] {
            let p = UPoly::from_values(&f4, &[alpha, 1, 1, 0, 0, 0, 1]);
            assert!(p.is_irreducible().unwrap());
        }
    }

    #[test]
    fn irreducible_counts_match_mobius() {
        for (p, k, d) in [(2u64, 1u32, 6usize), (2, 1, 4), (3, 1, 3), (2, 2, 3), (5, 1, 2)] {
            let f = make_field(p, k).unwrap();
            let q = f.order();
            let mut count = 0;
            for tail in 0..q.pow(d as u32) {
                let mut v = Vec::with_capacity(d + 1);
                let mut x = tail;
                for _ in 0..d {
                    v.push(x % q);
                    x /= q;
                }
                v.push(1);
                if UPoly::from_values(&f, &v).is_irreducible().unwrap() {
                    count += 1;
                }
            }
            assert_eq!(count, necklace(q, d as u64), "q={q} d={d}");
        }
        assert_eq!(necklace(2, 6), 9);
    }

    #[test]
    fn canonical_modulus_is_minimal() {
        let f = gf2();
        let m = make_field(2, 6).unwrap();
        let tail_value = m.modulus()[..6]
            .iter()
            .enumerate()
            .fold(0u64, |acc, (i, &c)| acc | (c << i));
        for tail in 0..tail_value {
            let mut v: Vec<u64> = (0..6).map(|i| (tail >> i) & 1).collect();
            v.push(1);
            assert!(!UPoly::from_values(&f, &v).is_irreducible().unwrap());
        }
        let f3 = make_field(3, 1).unwrap();
        assert!(!UPoly::from_values(&f3, &[0, 0, 1]).is_irreducible().unwrap());
        assert!(UPoly::from_values(&f3, &[1, 0, 1]).is_irreducible().unwrap());
    }

    #[test]
    fn min_and_char_poly() {
        let ext = ExtDesc::over(2, 6).unwrap();
        let big = ext.big();
        let emb = ext.embedding().unwrap();
        assert_eq!(min_poly(big.zero(), &ext), UPoly::t(big));
        let g = big.root();
        let mp = min_poly(g, &ext).to_base(&emb).unwrap();
        assert_eq!(mp, UPoly::from_values(&gf2(), &[1, 1, 0, 0, 0, 0, 1]));
        assert_eq!(char_poly(g, &ext), min_poly(g, &ext));
        let one = big.one();
        assert_eq!(min_poly(one, &ext).degree(), Some(1));
        let cp = char_poly(one, &ext);
        let lin = UPoly::from_roots(big, &[one]);
        let mut sixth = UPoly::one(big);
        for _ in 0..6 {
            sixth = sixth.mul(&lin).unwrap();
        }
        assert_eq!(cp, sixth);
    }

    #[test]
    fn min_poly_divides_char_poly_and_trace_coefficient() {
        for (q, n) in [(2u64, 6u32), (4, 3), (3, 4)] {
            let ext = ExtDesc::over(q, n).unwrap();
            let big = ext.big();
            for y in big.elements() {
                let mp = min_poly(y, &ext);
                let cp = char_poly(y, &ext);
                assert_eq!(cp.degree(), Some(n as usize));
                assert!(cp.rem(&mp).unwrap().is_zero());
                assert_eq!(n as usize % mp.degree().unwrap(), 0);
                assert_eq!(cp.coeff(n as usize - 1), big.neg(ext.trace(y)));
                assert!(cp.coeffs().iter().all(|&c| ext.in_base(c)));
                // char_poly = min_poly^{n/deg}
                let mut pw = UPoly::one(big);
                for _ in 0..n as usize / mp.degree().unwrap() {
                    pw = pw.mul(&mp).unwrap();
                }
                assert_eq!(pw, cp);
                assert_eq!(ext.is_generator(y), mp.degree() == Some(n as usize));
            }
        }
    }

    #[test]
    fn char_poly_matches_multiplication_matrix() {
        let ext = ExtDesc::over(2, 6).unwrap();
        let kb = KBasis::power_basis(&ext).unwrap();
        for y in ext.big().elements() {
            let via_matrix = linalg::char_poly(ext.big(), &kb.mult_matrix(y));
            assert_eq!(via_matrix, char_poly(y, &ext).coeffs().to_vec());
        }
    }
}
