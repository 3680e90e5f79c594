//! Point counts on the Artin–Schreier curve `u^q − u = x^{2q+1} + x^{q+2}`
//! over `F_{q^6}`, in characteristic 2.
//!
//! An affine point `(x, u)` exists over `x` iff `Tr(c) = 0` for
//! `c = x^{2q+1} + x^{q+2}`, and then there are exactly `q` of them. Since
//! `Tr(c) = Tr((x^q − x)^3)`, the x-coordinates of points are the x with
//! `y = x^q − x` satisfying `Tr(y) = Tr(y^3) = 0`. A point is good when `y`
//! generates `F_{q^6}` over `F_q` and bad when `y ∈ F_{q^3}`.

use serde::Serialize;

use crate::error::{Budget, Error, Result};
use crate::ffield::{ExtDesc, FElt};
use crate::scan;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CurveCensus {
    pub q: u64,
    pub n_affine: u64,
    /// `n_affine + 1`: the smooth model has one point at infinity. Taken as
    /// given, not computed.
    pub n_smooth: u64,
    pub genus: u64,
    pub weil_low: i128,
    pub weil_high: i128,
    /// Affine points whose `y = x^q − x` generates `F_{q^6}`.
    pub good_points: u64,
    /// Affine points with `y ∈ F_{q^3}`.
    pub bad_points: u64,
    /// Affine points whose `y` is neither. Always 0: a trace-zero `y` in
    /// `F_{q^2}` already lies in `F_q`.
    pub other_points: u64,
    /// Number of x-coordinates behind `good_points` and `bad_points`.
    pub good_x: u64,
    pub bad_x: u64,
}

impl CurveCensus {
    pub fn violations(&self) -> Vec<String> {
        let q = self.q;
        let mut out = Vec::new();
        let n = self.n_smooth as i128;
        if n < self.weil_low || n > self.weil_high {
            out.push(format!(
                "n_smooth = {} outside the Weil window [{}, {}]",
                self.n_smooth, self.weil_low, self.weil_high
            ));
        }
        if self.bad_points > q.pow(5) {
            out.push(format!("bad_points = {} exceeds q^5", self.bad_points));
        }
        if !self.n_affine.is_multiple_of(q) {
            out.push(format!("n_affine = {} is not divisible by q", self.n_affine));
        }
        if self.good_points + self.bad_points + self.other_points != self.n_affine {
            out.push("good + bad + other points do not add up to n_affine".into());
        }
        if self.good_points != q * self.good_x || self.bad_points != q * self.bad_x {
            out.push("point counts are not q times the x counts".into());
        }
        out
    }
}

fn check_binary(ext: &ExtDesc) -> Result<()> {
    if ext.characteristic() != 2 {
        return Err(Error::domain("Artin–Schreier counts here need characteristic 2"));
    }
    Ok(())
}

fn binary_ext(q: u64) -> Result<ExtDesc> {
    if q < 2 || !q.is_power_of_two() {
        return Err(Error::domain(format!("q = {q} must be a power of 2")));
    }
    ExtDesc::over(q, 6)
}

/// Number of `u` in the big field with `u^q − u = c`: `q` if `Tr(c) = 0`, else 0.
pub fn fiber_size(c: FElt, ext: &ExtDesc) -> Result<u64> {
    check_binary(ext)?;
    Ok(if ext.trace(c).is_zero() { ext.q() } else { 0 })
}

/// `(q − 1)(d − 1)/2` for `d = 2q + 1`, after checking `gcd(d, q) = 1`.
pub fn genus(q: u64) -> Result<u64> {
    let d = 2 * q + 1;
    let (mut a, mut b) = (d, q);
    while b != 0 {
        (a, b) = (b, a % b);
    }
    if a != 1 {
        return Err(Error::domain(format!("degree {d} is not prime to q = {q}")));
    }
    Ok((q - 1) * (d - 1) / 2)
}

/// `q^6 + 1 ∓ 2 g q^3` with `g = q(q − 1)`.
pub fn weil_window(q: u64) -> (i128, i128) {
    let q = q as i128;
    let centre = q.pow(6) + 1;
    let width = 2 * q * (q - 1) * q.pow(3);
    (centre - width, centre + width)
}

/// `q^6 + 1 − 2q(q−1)q^3 > 1 + q^5`.
pub fn bound_inequality(q: u64) -> bool {
    let q5 = (q as i128).pow(5);
    weil_window(q).0 > 1 + q5
}

fn curve_rhs(x: FElt, ext: &ExtDesc) -> FElt {
    let f = ext.big();
    let xq = ext.frobenius(x);
    f.add(f.mul(f.square(xq), x), f.mul(xq, f.square(x)))
}

pub fn curve_census(q: u64, budget: &Budget) -> Result<CurveCensus> {
    let size = (q as u128).checked_pow(6).unwrap_or(u128::MAX);
    budget.check("x-scan over F_{q^6}", size)?;
    let ext = binary_ext(q)?;
    let genus = genus(q)?;
    let f = ext.big();
    let [n_affine, good_x, bad_x, other] = scan::tally(f.order(), |i| {
        let x = f.wrap(i);
        if fiber_size(curve_rhs(x, &ext), &ext).unwrap_or(0) == 0 {
            return [0; 4];
        }
        let y = f.sub(ext.frobenius(x), x);
        if ext.in_subfield_unchecked(y, 3) {
            [q, 0, 1, 0]
        } else if ext.is_generator(y) {
            [q, 1, 0, 0]
        } else {
            [q, 0, 0, 1]
        }
    });
    let (weil_low, weil_high) = weil_window(q);
    let census = CurveCensus {
        q,
        n_affine,
        n_smooth: n_affine + 1,
        genus,
        weil_low,
        weil_high,
        good_points: q * good_x,
        bad_points: q * bad_x,
        other_points: q * other,
        good_x,
        bad_x,
    };
    Ok(census)
}

/// Affine point count by testing every pair `(x, u)`. Quadratic in the field
/// size; meant as an oracle for tiny q.
pub fn affine_count_naive(q: u64, budget: &Budget) -> Result<u64> {
    let size = (q as u128).checked_pow(12).unwrap_or(u128::MAX);
    budget.check("(x, u) pairs over F_{q^6}", size)?;
    let ext = binary_ext(q)?;
    let f = ext.big();
    Ok(scan::count(f.order() * f.order(), |i| {
        let x = f.wrap(i / f.order());
        let u = f.wrap(i % f.order());
        f.sub(ext.frobenius(u), u) == curve_rhs(x, &ext)
    }))
}

/// Checks `Tr((x^q − x)^3) = Tr(x^{2q+1} + x^{q+2})` for every x.
pub fn trace_identity_check(q: u64, budget: &Budget) -> Result<bool> {
    let size = (q as u128).checked_pow(6).unwrap_or(u128::MAX);
    budget.check("x-scan over F_{q^6}", size)?;
    let ext = binary_ext(q)?;
    let f = ext.big();
    let bad = scan::first_index(f.order(), |i| {
        let x = f.wrap(i);
        let y = f.sub(ext.frobenius(x), x);
        ext.trace(f.pow(y, 3)) != ext.trace(curve_rhs(x, &ext))
    });
    Ok(bad.is_none())
}
