//! σ-coefficients, power traces and the Joubert/generator predicates.

use crate::error::{Error, Result};
use crate::ffield::{ExtDesc, FElt, KBasis};
use crate::fpoly::char_poly;
use crate::linalg;

/// Characteristic-polynomial coefficients of `y` over K together with the
/// power traces `Tr(y), …, Tr(y^k)`.
///
/// The characteristic polynomial is `t^n − σ_1 t^{n−1} + … + (−1)^n σ_n`, so
/// `σ_i` is the i-th elementary symmetric function of the conjugates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigmaProfile {
    pub n: u32,
    /// `sigma[i - 1]` is σ_i.
    pub sigma: Vec<FElt>,
    /// `powtr[j - 1]` is Tr(y^j).
    pub powtr: Vec<FElt>,
}

impl SigmaProfile {
    pub fn sigma(&self, i: usize) -> FElt {
        self.sigma[i - 1]
    }
}

pub fn sigma_profile(y: FElt, ext: &ExtDesc, k: u32) -> SigmaProfile {
    let f = ext.big();
    let n = ext.n() as usize;
    let cp = char_poly(y, ext);
    let sigma = (1..=n)
        .map(|i| {
            let c = cp.coeff(n - i);
            if i % 2 == 0 {
                c
            } else {
                f.neg(c)
            }
        })
        .collect();
    SigmaProfile {
        n: ext.n(),
        sigma,
        powtr: power_traces(y, ext, k),
    }
}

/// `[Tr(y), Tr(y^2), …, Tr(y^k)]`.
pub fn power_traces(y: FElt, ext: &ExtDesc, k: u32) -> Vec<FElt> {
    let f = ext.big();
    let mut out = Vec::with_capacity(k as usize);
    let mut x = y;
    for _ in 0..k {
        out.push(ext.trace(x));
        x = f.mul(x, y);
    }
    out
}

/// σ_1, σ_2, σ_3 from the conjugates.
#[inline]
pub(crate) fn low_sigmas(y: FElt, ext: &ExtDesc) -> [FElt; 3] {
    let f = ext.big();
    let mut e = [f.one(), f.zero(), f.zero(), f.zero()];
    let mut x = y;
    for _ in 0..ext.n() {
        for i in (1..4).rev() {
            e[i] = f.add(e[i], f.mul(x, e[i - 1]));
        }
        x = ext.frobenius(x);
    }
    [e[1], e[2], e[3]]
}

#[inline]
pub(crate) fn is_joubert_unchecked(y: FElt, ext: &ExtDesc) -> bool {
    let [s1, _, s3] = low_sigmas(y, ext);
    s1.is_zero() && s3.is_zero()
}

/// σ_1(y) = σ_3(y) = 0, i.e. the characteristic polynomial has vanishing
/// `t^{n−1}` and `t^{n−3}` coefficients.
pub fn is_joubert(y: FElt, ext: &ExtDesc) -> Result<bool> {
    if ext.n() < 3 {
        return Err(Error::domain(format!(
            "the Joubert condition needs degree at least 3, got {}",
            ext.n()
        )));
    }
    Ok(is_joubert_unchecked(y, ext))
}

/// `y` generates L over K (its minimal polynomial has degree n).
pub fn is_generator(y: FElt, ext: &ExtDesc) -> bool {
    ext.is_generator(y)
}

/// Newton's identity `Tr(y^3) = σ_1^3 − 3σ_1σ_2 + 3σ_3`, with σ_3 = 0 when n < 3.
pub fn newton_holds(y: FElt, ext: &ExtDesc) -> bool {
    let f = ext.big();
    let prof = sigma_profile(y, ext, 3);
    let s2 = if ext.n() >= 2 { prof.sigma(2) } else { f.zero() };
    let s3 = if ext.n() >= 3 { prof.sigma(3) } else { f.zero() };
    let t1 = prof.powtr[0];
    let rhs = f.add(f.sub(f.pow(t1, 3), f.scale(f.mul(t1, s2), 3)), f.scale(s3, 3));
    prof.powtr[2] == rhs
}

/// `Tr(y^2) = Tr(y)^2`; holds for every y in characteristic 2 only.
pub fn squared_trace_holds(y: FElt, ext: &ExtDesc) -> bool {
    let f = ext.big();
    ext.trace(f.square(y)) == f.square(ext.trace(y))
}

/// σ_i from the conjugates equals σ_i read off the characteristic polynomial
/// of multiplication by `y` in the basis `kb`.
pub fn sigma_matches_matrix(y: FElt, ext: &ExtDesc, kb: &KBasis) -> bool {
    let f = ext.big();
    let n = ext.n() as usize;
    let cp = linalg::char_poly(f, &kb.mult_matrix(y));
    let prof = sigma_profile(y, ext, 0);
    (1..=n).all(|i| {
        let from_matrix = if i % 2 == 0 { cp[n - i] } else { f.neg(cp[n - i]) };
        prof.sigma(i) == from_matrix
    })
}
