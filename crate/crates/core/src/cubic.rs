//! The cubic surface of trace-zero elements with vanishing cubic trace.
//!
//! For L = F_{q^6} over K = F_q (q a power of 2), let L_0 = {y : Tr(y) = 0}.
//! The cubic threefold Tr(y^3) = 0 in P(L_0) is a cone with vertex 1, so it
//! descends to a cubic surface Ȳ in P(L_0/K) ≅ P^3. A point of Ȳ is a class
//! {λy + μ} with y ∉ K; it is a generator point unless y ∈ F_{q^3}, and the
//! F_{q^3} points form the line Z.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Budget, Error, Result};
use crate::ffield::{make_field, prime_power, BaseEmbedding, ExtDesc, FElt, FieldDesc, KBasis};
use crate::linalg;
use crate::scan;

/// L_0 with a K-basis `b_0 = 1, b_1, …, b_4`; coordinates against
/// `b_1..b_4` parametrize P(L_0/K).
#[derive(Debug, Clone)]
pub struct QuotientFrame {
    ext: ExtDesc,
    emb: BaseEmbedding,
    basis: [FElt; 5],
    base: Vec<FElt>,
}

fn base_degree_of(q: u64) -> Result<u32> {
    match prime_power(q) {
        Some((2, k)) => Ok(k),
        _ => Err(Error::domain(format!("q = {q} is not a power of 2"))),
    }
}

/// Builds the frame: `b_1..b_4` are the first trace-zero elements in canonical
/// order that are K-independent of the ones already chosen (and of 1).
pub fn build_frame(q: u64) -> Result<QuotientFrame> {
    let k = base_degree_of(q)?;
    let ext = ExtDesc::new(2, k, 6)?;
    let emb = ext.embedding()?;
    let kb = KBasis::power_basis(&ext)?;
    let big = ext.big().clone();

    let mut chosen = vec![big.one()];
    let mut rows = vec![kb.coords(big.one())];
    for y in big.elements() {
        if chosen.len() == 5 {
            break;
        }
        if !ext.trace(y).is_zero() {
            continue;
        }
        let mut candidate = rows.clone();
        candidate.push(kb.coords(y));
        if linalg::rank(&big, &candidate) == candidate.len() {
            rows = candidate;
            chosen.push(y);
        }
    }
    let basis: [FElt; 5] = chosen
        .try_into()
        .map_err(|_| Error::domain("trace-zero subspace has dimension below 5"))?;
    let base = emb.base_elements();
    Ok(QuotientFrame {
        ext,
        emb,
        basis,
        base,
    })
}

impl QuotientFrame {
    pub fn q(&self) -> u64 {
        self.ext.q()
    }

    pub fn ext(&self) -> &ExtDesc {
        &self.ext
    }

    pub fn embedding(&self) -> &BaseEmbedding {
        &self.emb
    }

    pub fn basis(&self) -> &[FElt; 5] {
        &self.basis
    }

    /// Elements of K in canonical GF(q) order.
    pub fn base_elements(&self) -> &[FElt] {
        &self.base
    }

    /// `v_1 b_1 + … + v_4 b_4`, with `v` given as elements of K.
    pub fn lift(&self, v: &[FElt; 4]) -> FElt {
        let f = self.ext.big();
        v.iter()
            .zip(&self.basis[1..])
            .fold(f.zero(), |acc, (&c, &b)| f.add(acc, f.mul(c, b)))
    }

    /// `v_0 · 1 + lift(v_1..v_4)`: the full parametrization of L_0.
    pub fn lift5(&self, v: &[FElt; 5]) -> FElt {
        let f = self.ext.big();
        f.add(v[0], self.lift(&[v[1], v[2], v[3], v[4]]))
    }

    /// Normalized representatives of P^3(F_q) (first nonzero coordinate 1).
    pub fn projective_points(&self) -> Vec<[FElt; 4]> {
        let zero = self.ext.big().zero();
        ProjectiveSpace::new(self.base.clone(), zero)
            .points()
            .map(|v| [v[0], v[1], v[2], v[3]])
            .collect()
    }
}

/// Normalized points of P^3 over a list of field elements whose first two
/// entries are 0 and 1.
struct ProjectiveSpace {
    elements: Vec<FElt>,
    zero: FElt,
}

impl ProjectiveSpace {
    fn new(elements: Vec<FElt>, zero: FElt) -> Self {
        ProjectiveSpace { elements, zero }
    }

    fn len(&self) -> u64 {
        let q = self.elements.len() as u64;
        (q.pow(4) - 1) / (q - 1)
    }

    fn point(&self, mut idx: u64) -> [FElt; 4] {
        let q = self.elements.len() as u64;
        let one = self.elements[1];
        for lead in 0..4u32 {
            let block = q.pow(3 - lead);
            if idx < block {
                let mut v = [self.zero; 4];
                v[lead as usize] = one;
                let mut rest = idx;
                for slot in v.iter_mut().skip(lead as usize + 1).rev() {
                    *slot = self.elements[(rest % q) as usize];
                    rest /= q;
                }
                return v;
            }
            idx -= block;
        }
        unreachable!("index past the end of P^3")
    }

    fn points(&self) -> impl Iterator<Item = [FElt; 4]> + '_ {
        (0..self.len()).map(|i| self.point(i))
    }
}

/// F_q-point counts of Ȳ, by two independent routes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceCensus {
    pub q: u64,
    /// |Ȳ(F_q)| from the projective scan.
    pub total: u64,
    /// Points whose representatives lie in F_{q^3}: the line Z.
    pub on_line: u64,
    pub generator_points: u64,
    /// Points that are neither on Z nor generator points (expected 0).
    pub other_points: u64,
    /// q^2 − 7q + 1.
    pub manin_floor: i64,
    /// |{y ∈ L : Tr(y) = Tr(y^3) = 0}|, scanned over all of L.
    pub affine_solutions: u64,
    /// Generators among `affine_solutions`.
    pub affine_generators: u64,
}

impl SurfaceCensus {
    /// Point count recovered from the affine scan: each point of Ȳ is a class
    /// {λy + μ : λ ∈ K^×, μ ∈ K} of q(q − 1) elements outside K.
    pub fn affine_total(&self) -> u64 {
        (self.affine_solutions - self.q) / (self.q * self.q - self.q)
    }

    pub fn affine_generator_points(&self) -> u64 {
        self.affine_generators / (self.q * self.q - self.q)
    }

    /// Names every violated census invariant; empty when all hold.
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        let q = self.q;
        if self.total != self.on_line + self.generator_points {
            out.push(format!(
                "total {} != on_line {} + generator_points {}",
                self.total, self.on_line, self.generator_points
            ));
        }
        if self.other_points != 0 {
            out.push(format!(
                "{} points neither on Z nor generating",
                self.other_points
            ));
        }
        if self.on_line != q + 1 {
            out.push(format!("|Z(F_q)| = {} != q + 1 = {}", self.on_line, q + 1));
        }
        if (self.total as i64) < self.manin_floor {
            out.push(format!(
                "total {} below q^2 - 7q + 1 = {}",
                self.total, self.manin_floor
            ));
        }
        let classes = q * q - q;
        if self.affine_solutions < q || !(self.affine_solutions - q).is_multiple_of(classes) {
            out.push(format!(
                "affine solution count {} is not q + multiple of q(q-1)",
                self.affine_solutions
            ));
        } else if self.affine_total() != self.total {
            out.push(format!(
                "affine route gives {} points, projective scan {}",
                self.affine_total(),
                self.total
            ));
        }
        if !self.affine_generators.is_multiple_of(classes)
            || self.affine_generator_points() != self.generator_points
        {
            out.push(format!(
                "affine generator count {} does not match {} generator points",
                self.affine_generators, self.generator_points
            ));
        }
        out
    }
}

pub fn manin_floor(q: u64) -> i64 {
    let q = q as i64;
    q * q - 7 * q + 1
}

/// Counts Ȳ(F_q) by scanning P^3(F_q) through the frame, and cross-checks by
/// scanning all of L for Tr(y) = Tr(y^3) = 0.
pub fn surface_census(q: u64, budget: &Budget) -> Result<SurfaceCensus> {
    base_degree_of(q)?;
    budget.check("projective points of P^3(F_q)", (q as u128).pow(4))?;
    budget.check(&format!("scan of F_{{{q}^6}}"), (q as u128).pow(6))?;
    let frame = build_frame(q)?;
    let ext = frame.ext();
    let big = ext.big();

    let points = frame.projective_points();
    let [total, on_line, gens, other] = points
        .par_iter()
        .map(|v| {
            let y = frame.lift(v);
            if !ext.trace(big.mul(big.square(y), y)).is_zero() {
                return [0, 0, 0, 0];
            }
            if ext.in_subfield_unchecked(y, 3) {
                [1, 1, 0, 0]
            } else if ext.is_generator(y) {
                [1, 0, 1, 0]
            } else {
                [1, 0, 0, 1]
            }
        })
        .reduce(
            || [0u64; 4],
            |a, b| [a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]],
        );

    let [affine_solutions, affine_generators] = scan::tally(big.order(), |v| {
        let y = big.element(v).expect("in range");
        if !ext.trace(y).is_zero() || !ext.trace(big.mul(big.square(y), y)).is_zero() {
            return [0, 0];
        }
        [1, ext.is_generator(y) as u64]
    });

    Ok(SurfaceCensus {
        q,
        total,
        on_line,
        generator_points: gens,
        other_points: other,
        manin_floor: manin_floor(q),
        affine_solutions,
        affine_generators,
    })
}

/// A cubic form in four variables: `Σ c_{ijk} v_i v_j v_k` over `i ≤ j ≤ k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubicForm {
    field: FieldDesc,
    terms: Vec<([usize; 3], FElt)>,
}

fn monomials() -> impl Iterator<Item = [usize; 3]> {
    (0..4).flat_map(|i| (i..4).flat_map(move |j| (j..4).map(move |k| [i, j, k])))
}

impl CubicForm {
    pub fn field(&self) -> &FieldDesc {
        &self.field
    }

    /// The 20 coefficients, indexed by `i ≤ j ≤ k`.
    pub fn terms(&self) -> &[([usize; 3], FElt)] {
        &self.terms
    }

    pub fn eval(&self, v: &[FElt; 4]) -> FElt {
        let f = &self.field;
        self.terms.iter().fold(f.zero(), |acc, &([i, j, k], c)| {
            f.add(acc, f.mul(c, f.mul(v[i], f.mul(v[j], v[k]))))
        })
    }

    /// Formal partial derivative with respect to `v_l`, evaluated at `v`.
    pub fn partial(&self, l: usize, v: &[FElt; 4]) -> FElt {
        let f = &self.field;
        let mut acc = f.zero();
        for &(idx, c) in &self.terms {
            for pos in 0..3 {
                if idx[pos] != l {
                    continue;
                }
                let others = (0..3)
                    .filter(|&o| o != pos)
                    .fold(f.one(), |prod, o| f.mul(prod, v[idx[o]]));
                acc = f.add(acc, f.mul(c, others));
            }
        }
        acc
    }

    /// Applies a field embedding to every coefficient.
    pub fn map_coeffs(&self, target: &FieldDesc, map: impl Fn(FElt) -> Result<FElt>) -> Result<CubicForm> {
        let terms = self
            .terms
            .iter()
            .map(|&(idx, c)| Ok((idx, map(c)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(CubicForm {
            field: target.clone(),
            terms,
        })
    }
}

/// `C(v) = Tr((v_1 b_1 + … + v_4 b_4)^3)` expanded by K-linearity of the
/// trace; coefficients lie in K.
pub fn cubic_form(frame: &QuotientFrame) -> CubicForm {
    let ext = frame.ext();
    let f = ext.big();
    let b = &frame.basis()[1..];
    let terms = monomials()
        .map(|[i, j, k]| {
            let multinomial = match (i == j, j == k) {
                (true, true) => 1,
                (true, false) | (false, true) => 3,
                (false, false) => 6,
            };
            let tr = ext.trace(f.mul(b[i], f.mul(b[j], b[k])));
            ([i, j, k], f.scale(tr, multinomial))
        })
        .collect();
    CubicForm {
        field: f.clone(),
        terms,
    }
}

/// Result of scanning Ȳ over F_{q^e} for points where the gradient vanishes.
#[derive(Debug, Clone)]
pub struct SmoothnessReport {
    pub q: u64,
    pub ext_deg: u32,
    pub field: FieldDesc,
    pub points_scanned: u64,
    pub surface_points: u64,
    /// Normalized coordinates over GF(q^e) of singular points.
    pub singular: Vec<[FElt; 4]>,
}

/// Scans P^3(F_{q^e}) for points of Ȳ where all four partials of the cubic
/// form vanish. An empty result supports smoothness only up to that degree.
pub fn smoothness_scan(q: u64, ext_deg: u32, budget: &Budget) -> Result<SmoothnessReport> {
    let k = base_degree_of(q)?;
    if ext_deg == 0 {
        return Err(Error::ZeroDegree);
    }
    let big_q = (q as u128).saturating_pow(ext_deg);
    budget.check("projective points of P^3(F_{q^e})", big_q.saturating_pow(4))?;
    let frame = build_frame(q)?;
    let form_k = cubic_form(&frame);
    let down = form_k.map_coeffs(frame.embedding().small(), |c| frame.embedding().to_small(c))?;
    let up_ext = ExtDesc::new(2, k, ext_deg)?;
    let up = up_ext.embedding()?;
    let target = make_field(2, k * ext_deg)?;
    let form = down.map_coeffs(&target, |c| Ok(up.to_big(c)))?;

    let space = ProjectiveSpace::new(target.elements().collect(), target.zero());
    let results: Vec<(bool, bool)> = (0..space.len())
        .into_par_iter()
        .map(|i| {
            let v = space.point(i);
            if !form.eval(&v).is_zero() {
                return (false, false);
            }
            let singular = (0..4).all(|l| form.partial(l, &v).is_zero());
            (true, singular)
        })
        .collect();
    let mut singular = Vec::new();
    let mut surface_points = 0;
    for (i, &(on, sing)) in results.iter().enumerate() {
        surface_points += on as u64;
        if sing {
            singular.push(space.point(i as u64));
        }
    }
    Ok(SmoothnessReport {
        q,
        ext_deg,
        field: target,
        points_scanned: space.len(),
        surface_points,
        singular,
    })
}
