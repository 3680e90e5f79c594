use std::collections::HashMap;

use super::field::{make_field, prime_factors, prime_power, FElt, FieldDesc};
use crate::error::{Error, Result};

/// An F_2-linear map on a binary field, applied through per-byte lookup tables.
#[derive(Debug, Clone)]
struct BinLinear {
    tables: Vec<[u64; 256]>,
}

impl BinLinear {
    fn build(m: u32, image_of_bit: impl Fn(u32) -> u64) -> Self {
        let images: Vec<u64> = (0..m).map(image_of_bit).collect();
        let chunks = (m as usize).div_ceil(8);
        let mut tables = vec![[0u64; 256]; chunks];
        for (c, table) in tables.iter_mut().enumerate() {
            for byte in 1..256usize {
                let low = byte.trailing_zeros() as usize;
                let bit = c * 8 + low;
                let img = images.get(bit).copied().unwrap_or(0);
                table[byte] = table[byte & (byte - 1)] ^ img;
            }
        }
        BinLinear { tables }
    }

    #[inline]
    fn apply(&self, x: u64) -> u64 {
        let mut acc = 0;
        for (c, table) in self.tables.iter().enumerate() {
            acc ^= table[((x >> (8 * c)) & 0xff) as usize];
        }
        acc
    }
}

/// A relative extension L/K of finite fields, realized inside the single field
/// L = GF(p^{k·n}). K = GF(q), q = p^k, exists only as the fixed set of the
/// relative Frobenius `x ↦ x^q`.
#[derive(Debug, Clone)]
pub struct ExtDesc {
    big: FieldDesc,
    base_degree: u32,
    n: u32,
    q: u64,
    frob: Option<BinLinear>,
    trace: Option<BinLinear>,
}

impl ExtDesc {
    /// L = GF(p^{base_degree·n}) over K = GF(p^base_degree).
    pub fn new(p: u64, base_degree: u32, n: u32) -> Result<Self> {
        if base_degree == 0 || n == 0 {
            return Err(Error::ZeroDegree);
        }
        let big = make_field(p, base_degree * n)?;
        let q = p.pow(base_degree);
        let mut ext = ExtDesc {
            big,
            base_degree,
            n,
            q,
            frob: None,
            trace: None,
        };
        if p == 2 {
            let m = ext.big.degree();
            let frob = BinLinear::build(m, |j| {
                let basis = ext.big.wrap(1u64 << j);
                ext.big.pow(basis, q).value()
            });
            let trace = BinLinear::build(m, |j| {
                let mut x = 1u64 << j;
                let mut acc = 0;
                for _ in 0..n {
                    acc ^= x;
                    x = frob.apply(x);
                }
                acc
            });
            ext.frob = Some(frob);
            ext.trace = Some(trace);
        }
        Ok(ext)
    }

    /// F_{q^n} over F_q for a prime power `q`.
    pub fn over(q: u64, n: u32) -> Result<Self> {
        let (p, k) = prime_power(q).ok_or_else(|| Error::domain(format!("{q} is not a prime power")))?;
        Self::new(p, k, n)
    }

    pub fn big(&self) -> &FieldDesc {
        &self.big
    }

    /// Relative degree [L:K].
    pub fn n(&self) -> u32 {
        self.n
    }

    /// Order of the base field K.
    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn base_degree(&self) -> u32 {
        self.base_degree
    }

    pub fn characteristic(&self) -> u64 {
        self.big.characteristic()
    }

    /// y ↦ y^q.
    #[inline]
    pub fn frobenius(&self, y: FElt) -> FElt {
        debug_assert!(self.big.owns(y));
        match &self.frob {
            Some(map) => self.big.wrap(map.apply(y.value())),
            None => self.big.pow(y, self.q),
        }
    }

    /// y ↦ y^{q^i}.
    pub fn frobenius_pow(&self, y: FElt, i: u32) -> FElt {
        (0..i % self.n).fold(y, |acc, _| self.frobenius(acc))
    }

    /// The `n` conjugates y, y^q, …, y^{q^{n-1}} (with repetition).
    pub fn conjugates(&self, y: FElt) -> Vec<FElt> {
        let mut out = Vec::with_capacity(self.n as usize);
        let mut x = y;
        for _ in 0..self.n {
            out.push(x);
            x = self.frobenius(x);
        }
        out
    }

    /// Relative trace Tr_{L/K}(y) = Σ y^{q^i}.
    #[inline]
    pub fn trace(&self, y: FElt) -> FElt {
        match &self.trace {
            Some(map) => self.big.wrap(map.apply(y.value())),
            None => {
                let mut acc = self.big.zero();
                let mut x = y;
                for _ in 0..self.n {
                    acc = self.big.add(acc, x);
                    x = self.frobenius(x);
                }
                acc
            }
        }
    }

    /// Whether y lies in the intermediate field of degree `d` over K.
    pub fn in_subfield(&self, y: FElt, d: u32) -> Result<bool> {
        if d == 0 || !self.n.is_multiple_of(d) {
            return Err(Error::domain(format!("{d} does not divide {}", self.n)));
        }
        Ok(self.in_subfield_unchecked(y, d))
    }

    #[inline]
    pub(crate) fn in_subfield_unchecked(&self, y: FElt, d: u32) -> bool {
        self.frobenius_pow(y, d) == y
    }

    /// y ∈ K.
    pub fn in_base(&self, y: FElt) -> bool {
        self.frobenius(y) == y
    }

    /// Whether y generates L over K, i.e. lies in no maximal proper intermediate field.
    pub fn is_generator(&self, y: FElt) -> bool {
        if self.n == 1 {
            return true;
        }
        prime_factors(self.n as u64)
            .into_iter()
            .all(|r| !self.in_subfield_unchecked(y, self.n / r as u32))
    }

    /// Identification of the canonical GF(q) with K ⊂ L.
    pub fn embedding(&self) -> Result<BaseEmbedding> {
        BaseEmbedding::new(self)
    }
}

const MAX_EMBEDDED_BASE: u64 = 1 << 24;

/// An explicit isomorphism between the canonical field GF(q) and the fixed
/// field K inside L. The image of `t` is the least (in canonical order) root of
/// GF(q)'s modulus lying in K.
#[derive(Debug, Clone)]
pub struct BaseEmbedding {
    small: FieldDesc,
    big: FieldDesc,
    image: Vec<u64>,
    back: HashMap<u64, u64>,
}

impl BaseEmbedding {
    fn new(ext: &ExtDesc) -> Result<Self> {
        if ext.q > MAX_EMBEDDED_BASE {
            return Err(Error::Size {
                what: "base field embedding".into(),
                size: ext.q as u128,
                limit: MAX_EMBEDDED_BASE as u128,
            });
        }
        let big = ext.big.clone();
        let small = make_field(ext.characteristic(), ext.base_degree)?;
        let theta = if ext.base_degree == 1 {
            big.zero()
        } else {
            // K^* is generated by γ^{(|L|-1)/(q-1)} for a primitive γ of L.
            let gamma = big.primitive_element();
            let h = big.pow(gamma, (big.order() - 1) / (ext.q - 1));
            let modulus = small.modulus();
            let mut x = big.one();
            let mut best: Option<FElt> = None;
            for _ in 0..ext.q - 1 {
                let value = modulus.iter().rev().fold(big.zero(), |acc, &c| {
                    big.add(big.mul(acc, x), big.from_int(c as i64))
                });
                if value.is_zero() && best.is_none_or(|b| x.value() < b.value()) {
                    best = Some(x);
                }
                x = big.mul(x, h);
            }
            best.expect("K contains every root of the modulus of GF(q)")
        };
        let mut image = Vec::with_capacity(ext.q as usize);
        let mut back = HashMap::with_capacity(ext.q as usize);
        for s in small.elements() {
            let y = small.coeffs(s).iter().rev().fold(big.zero(), |acc, &c| {
                big.add(big.mul(acc, theta), big.from_int(c as i64))
            });
            image.push(y.value());
            back.insert(y.value(), s.value());
        }
        Ok(BaseEmbedding {
            small,
            big,
            image,
            back,
        })
    }

    /// The canonical GF(q).
    pub fn small(&self) -> &FieldDesc {
        &self.small
    }

    pub fn to_big(&self, s: FElt) -> FElt {
        debug_assert!(self.small.owns(s));
        self.big.wrap(self.image[s.value() as usize])
    }

    /// Coordinates of an element of K in GF(q); errors if `y ∉ K`.
    pub fn to_small(&self, y: FElt) -> Result<FElt> {
        self.back
            .get(&y.value())
            .map(|&v| self.small.wrap(v))
            .ok_or_else(|| Error::domain(format!("element {} is not in the base field", y.value())))
    }

    /// The elements of K, in the canonical order of GF(q) (0 first, then 1).
    pub fn base_elements(&self) -> Vec<FElt> {
        self.image.iter().map(|&v| self.big.wrap(v)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fpoly::UPoly;

    #[test]
    fn frobenius_fixes_base_and_has_period_n() {
        for (q, n) in [(2u64, 6u32), (4, 3), (3, 2), (5, 2)] {
            let ext = ExtDesc::over(q, n).unwrap();
            let f = ext.big();
            let mut fixed = 0;
            for y in f.elements() {
                assert_eq!(ext.frobenius_pow(y, n), y);
                assert_eq!(ext.frobenius(y), f.pow(y, q));
                if ext.in_base(y) {
                    fixed += 1;
                }
                let t = ext.trace(y);
                assert!(ext.in_base(t));
            }
            assert_eq!(fixed, q);
        }
    }

    #[test]
    fn frobenius_orbit_of_root_has_size_six() {
        let ext = ExtDesc::over(2, 6).unwrap();
        let g = ext.big().root();
        let mut orbit: Vec<_> = ext.conjugates(g);
        orbit.sort();
        orbit.dedup();
        assert_eq!(orbit.len(), 6);
    }

    #[test]
    fn trace_examples() {
        let ext = ExtDesc::over(2, 6).unwrap();
        assert!(ext.trace(ext.big().one()).is_zero());
        let ext = ExtDesc::over(2, 2).unwrap();
        let a = ext.big().root();
        assert_eq!(ext.trace(a), ext.big().one());
        assert_eq!(ext.frobenius(ext.big().zero()), ext.big().zero());
        assert_eq!(ext.frobenius(ext.big().one()), ext.big().one());
    }

    #[test]
    fn quadratic_subfield_has_nonzero_trace() {
        for q in [2u64, 4, 8] {
            let ext = ExtDesc::over(q, 6).unwrap();
            let mut seen = 0;
            for y in ext.big().elements() {
                if ext.in_subfield(y, 2).unwrap() && !ext.in_base(y) {
                    seen += 1;
                    assert!(!ext.trace(y).is_zero());
                }
            }
            assert_eq!(seen, q * q - q);
        }
    }

    #[test]
    fn subfield_membership() {
        let ext = ExtDesc::over(2, 6).unwrap();
        let f = ext.big();
        let g = f.root();
        for d in [1, 2, 3] {
            assert!(!ext.in_subfield(g, d).unwrap());
        }
        assert!(ext.in_subfield(g, 6).unwrap());
        assert!(ext.in_subfield(g, 4).is_err());
        assert!(ext.in_subfield(g, 0).is_err());
        for d in [1, 2, 3, 6] {
            assert!(ext.in_subfield(f.one(), d).unwrap());
        }
        assert_eq!(
            f.elements().filter(|&y| ext.in_subfield(y, 1).unwrap()).count(),
            2
        );
        assert!(f.elements().all(|y| ext.in_subfield(y, 6).unwrap()));

        // a root of the irreducible cubic t^3 + t + 1 lives in F_8 ⊂ F_64
        let cubic = UPoly::from_values(&make_field(2, 1).unwrap(), &[1, 1, 0, 1]);
        let root = f
            .elements()
            .find(|&y| {
                let lifted = cubic.coeffs().iter().rev().fold(f.zero(), |acc, c| {
                    f.add(f.mul(acc, y), f.from_int(c.value() as i64))
                });
                lifted.is_zero()
            })
            .unwrap();
        assert!(ext.in_subfield(root, 3).unwrap());
        assert!(!ext.in_subfield(root, 1).unwrap());
    }

    #[test]
    fn embedding_is_a_field_isomorphism() {
        for (q, n) in [(4u64, 3u32), (8, 2), (9, 2), (16, 2), (2, 6)] {
            let ext = ExtDesc::over(q, n).unwrap();
            let emb = ext.embedding().unwrap();
            let small = emb.small().clone();
            let big = ext.big();
            for a in small.elements() {
                let ia = emb.to_big(a);
                assert!(ext.in_base(ia));
                assert_eq!(emb.to_small(ia).unwrap(), a);
                for b in small.elements() {
                    let ib = emb.to_big(b);
                    assert_eq!(emb.to_big(small.add(a, b)), big.add(ia, ib));
                    assert_eq!(emb.to_big(small.mul(a, b)), big.mul(ia, ib));
                }
            }
            assert_eq!(emb.base_elements().len() as u64, q);
        }
        let ext = ExtDesc::over(4, 3).unwrap();
        let emb = ext.embedding().unwrap();
        assert!(emb.to_small(ext.big().root()).is_err());
    }

    #[test]
    fn bin_linear_matches_pow() {
        let ext = ExtDesc::over(16, 6).unwrap();
        let f = ext.big();
        for v in (0..f.order()).step_by(9973) {
            let y = f.element(v).unwrap();
            assert_eq!(ext.frobenius(y), f.pow(y, 16));
        }
    }
}
