//! The fixed-point obstruction in linear-algebra form.
//!
//! `G = (Z/p)^m × (Z/p)^m` acts on `E^n`, `n = 2p^m`, through the regular
//! action of each factor on its own block of `p^m` coordinates. Over a field
//! `E` of characteristic 2 containing the p-th roots of unity, `E^n` splits
//! into character lines, and no G-invariant plane lies inside the power-sum
//! variety `X = {Σ v_j^k = 0, k = 1..p}`.
//!
//! The statement concerns an algebraically closed field; here `E` is the
//! least GF(2^d) with `p | 2^d − 1` and `|E| > p`. Containment of a plane
//! `span{v, w}` in X means the p homogeneous forms `Σ (λv_j + μw_j)^k` of
//! degree `k ≤ p` vanish identically in `(λ, μ)`. A nonzero binary form of
//! degree `k` has at most `k` zeros on the projective line, and P^1(E) has
//! `|E| + 1 > p + 1` points, so scanning every `(λ, μ) ∈ E^2` decides
//! containment exactly. Invariant planes are sums of character lines because
//! `|G|` is odd, so the decomposition over `E` is the decomposition over the
//! algebraic closure.

use std::collections::{BTreeSet, HashSet};

use rayon::prelude::*;

use crate::error::{Budget, Error, Result};
use crate::ffield::{is_prime, make_field, FElt, FieldDesc};
use crate::linalg;

/// A permutation of `0..n`, stored as the image of each index.
pub type Perm = Vec<usize>;

#[derive(Debug, Clone)]
pub struct GroupG {
    p: u64,
    m: u32,
    block: usize,
    gens: Vec<Perm>,
}

/// Mixed-radix digits of a block index: digit `j` is the exponent of the j-th
/// basis vector of `(Z/p)^m`.
fn index_digits(mut i: usize, p: usize, m: u32) -> Vec<usize> {
    let mut d = Vec::with_capacity(m as usize);
    for _ in 0..m {
        d.push(i % p);
        i /= p;
    }
    d
}

fn index_from_digits(d: &[usize], p: usize) -> usize {
    d.iter().rev().fold(0, |acc, &x| acc * p + x)
}

pub fn build_group(p: u64, m: u32) -> Result<GroupG> {
    if p == 2 || !is_prime(p) {
        return Err(Error::domain(format!("p = {p} must be an odd prime")));
    }
    if m == 0 {
        return Err(Error::ZeroDegree);
    }
    let block = p
        .checked_pow(m)
        .filter(|&b| b <= 1 << 20)
        .ok_or_else(|| Error::Size {
            what: "block size p^m".into(),
            size: (p as u128).saturating_pow(m),
            limit: 1 << 20,
        })? as usize;
    let n = 2 * block;
    let pu = p as usize;
    let mut gens = Vec::with_capacity(2 * m as usize);
    for offset in [0, block] {
        for j in 0..m as usize {
            let mut perm: Perm = (0..n).collect();
            for i in 0..block {
                let mut d = index_digits(i, pu, m);
                d[j] = (d[j] + 1) % pu;
                perm[offset + i] = offset + index_from_digits(&d, pu);
            }
            gens.push(perm);
        }
    }
    let g = GroupG { p, m, block, gens };
    let problems = g.violations();
    if !problems.is_empty() {
        return Err(Error::domain(problems.join("; ")));
    }
    Ok(g)
}

fn compose(a: &Perm, b: &Perm) -> Perm {
    b.iter().map(|&i| a[i]).collect()
}

impl GroupG {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn n(&self) -> usize {
        2 * self.block
    }

    pub fn block_size(&self) -> usize {
        self.block
    }

    /// Generators: the first `m` act on block 1, the last `m` on block 2.
    pub fn generators(&self) -> &[Perm] {
        &self.gens
    }

    pub fn order(&self) -> u128 {
        (self.p as u128).pow(2 * self.m)
    }

    /// `v ↦ v ∘ σ`, i.e. `(σ·v)_k = v_{σ(k)}`.
    pub fn act(&self, sigma: &Perm, v: &[FElt]) -> Vec<FElt> {
        sigma.iter().map(|&k| v[k]).collect()
    }

    /// Every group element, by closure under the generators.
    pub fn elements(&self) -> Vec<Perm> {
        let id: Perm = (0..self.n()).collect();
        let mut seen: HashSet<Perm> = HashSet::from([id.clone()]);
        let mut frontier = vec![id];
        while let Some(x) = frontier.pop() {
            for g in &self.gens {
                let y = compose(g, &x);
                if seen.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        let mut out: Vec<Perm> = seen.into_iter().collect();
        out.sort();
        out
    }

    /// Orbits of G on `0..n`.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut assigned = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if assigned[start] {
                continue;
            }
            let mut orbit = vec![start];
            assigned[start] = true;
            let mut k = 0;
            while k < orbit.len() {
                let x = orbit[k];
                for g in &self.gens {
                    if !assigned[g[x]] {
                        assigned[g[x]] = true;
                        orbit.push(g[x]);
                    }
                }
                k += 1;
            }
            orbit.sort();
            out.push(orbit);
        }
        out
    }

    /// Checks commutation, generator order p, and that the orbits are exactly
    /// the two blocks. The group order is checked by closure when p^{2m} is small.
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        let id: Perm = (0..self.n()).collect();
        for (a, ga) in self.gens.iter().enumerate() {
            let mut x = id.clone();
            for step in 1..=self.p {
                x = compose(ga, &x);
                if (x == id) != (step == self.p) {
                    out.push(format!("generator {a} does not have order {}", self.p));
                    break;
                }
            }
            for (b, gb) in self.gens.iter().enumerate().skip(a + 1) {
                if compose(ga, gb) != compose(gb, ga) {
                    out.push(format!("generators {a} and {b} do not commute"));
                }
            }
        }
        let orbits = self.orbits();
        let blocks = vec![
            (0..self.block).collect::<Vec<_>>(),
            (self.block..self.n()).collect::<Vec<_>>(),
        ];
        if orbits != blocks {
            out.push("orbits are not the two blocks".into());
        }
        if self.order() <= 1 << 16 && self.elements().len() as u128 != self.order() {
            out.push(format!("group closure does not have order {}", self.order()));
        }
        out
    }
}

/// The least GF(2^d) with `p | 2^d − 1` and `2^d > p`.
pub fn choose_char_field(p: u64, _m: u32) -> Result<FieldDesc> {
    if p == 2 || !is_prime(p) {
        return Err(Error::domain(format!("p = {p} must be an odd prime")));
    }
    let mut d = 1u32;
    loop {
        let order = 1u64
            .checked_shl(d)
            .filter(|_| d < 62)
            .ok_or_else(|| Error::Size {
                what: format!("field containing the {p}-th roots of unity"),
                size: 1 << 62,
                limit: 1 << 62,
            })?;
        if (order - 1) % p == 0 && order > p {
            return make_field(2, d);
        }
        d += 1;
    }
}

fn check_roots_of_unity(p: u64, e: &FieldDesc) -> Result<()> {
    if e.characteristic() != 2 || !(e.order() - 1).is_multiple_of(p) {
        return Err(Error::domain(format!(
            "{e} does not contain the {p}-th roots of unity"
        )));
    }
    Ok(())
}

/// A character line `V_χ[block]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharLine {
    /// 1 or 2.
    pub block: u8,
    /// Exponent vector `c ∈ (Z/p)^m`; `χ(g) = ζ^{c·g}`.
    pub exponents: Vec<u64>,
    /// `χ(e_j) = ζ^{c_j}` for each basis vector `e_j`.
    pub chi: Vec<FElt>,
    /// `(χ(g_1), …, χ(g_{p^m}))` in its block, zero in the other.
    pub vector: Vec<FElt>,
}

impl CharLine {
    pub fn is_trivial(&self) -> bool {
        self.exponents.iter().all(|&c| c == 0)
    }
}

/// The 2p^m character lines, block 1 first, characters in mixed-radix order.
pub fn eigen_decomposition(g: &GroupG, e: &FieldDesc) -> Result<Vec<CharLine>> {
    check_roots_of_unity(g.p, e)?;
    let zeta = e.pow(e.primitive_element(), (e.order() - 1) / g.p);
    let pu = g.p as usize;
    let mut lines = Vec::with_capacity(g.n());
    for block in [1u8, 2] {
        let offset = if block == 1 { 0 } else { g.block };
        for c_idx in 0..g.block {
            let c = index_digits(c_idx, pu, g.m);
            let mut vector = vec![e.zero(); g.n()];
            for i in 0..g.block {
                let d = index_digits(i, pu, g.m);
                let dot = c.iter().zip(&d).map(|(a, b)| a * b).sum::<usize>() % pu;
                vector[offset + i] = e.pow(zeta, dot as u64);
            }
            lines.push(CharLine {
                block,
                exponents: c.iter().map(|&x| x as u64).collect(),
                chi: c.iter().map(|&x| e.pow(zeta, x as u64)).collect(),
                vector,
            });
        }
    }
    for line in &lines {
        for (gi, sigma) in g.gens.iter().enumerate() {
            let own = (gi < g.m as usize) == (line.block == 1);
            let scalar = if own { line.chi[gi % g.m as usize] } else { e.one() };
            let image = g.act(sigma, &line.vector);
            let expect: Vec<FElt> = line.vector.iter().map(|&x| e.mul(scalar, x)).collect();
            if image != expect {
                return Err(Error::domain("character line is not an eigenline"));
            }
        }
    }
    Ok(lines)
}

/// `Σ_j v_j^p` for a character line.
pub fn eigenline_powersum(line: &CharLine, p: u64, e: &FieldDesc) -> FElt {
    line.vector
        .iter()
        .fold(e.zero(), |acc, &x| e.add(acc, e.pow(x, p)))
}

/// `X = {v : Σ_j v_j^k = 0 for k = 1..p}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PowerSumVariety {
    pub p: u64,
}

impl PowerSumVariety {
    /// Smallest `k ∈ 1..=p` with `Σ v_j^k ≠ 0`, or `None` if `v ∈ X`.
    pub fn first_violation(&self, e: &FieldDesc, v: &[FElt]) -> Option<u32> {
        let mut powers = v.to_vec();
        for k in 1..=self.p as u32 {
            let s = powers.iter().fold(e.zero(), |acc, &x| e.add(acc, x));
            if !s.is_zero() {
                return Some(k);
            }
            for (pw, &x) in powers.iter_mut().zip(v) {
                *pw = e.mul(*pw, x);
            }
        }
        None
    }

    pub fn contains(&self, e: &FieldDesc, v: &[FElt]) -> bool {
        self.first_violation(e, v).is_none()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PlaneSource {
    /// Span of two character lines with distinct G-characters (a trivial-character
    /// line may be any line of the trivial isotypic plane).
    EigenPair,
    /// The fixed plane `(E^n)^G`, spanned by the two block indicators.
    TrivialIsotypic,
    BruteForce,
}

/// A 2-dimensional subspace in reduced row echelon form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvPlane {
    pub basis: [Vec<FElt>; 2],
    pub source: PlaneSource,
}

impl InvPlane {
    fn from_span(e: &FieldDesc, v: &[FElt], w: &[FElt], source: PlaneSource) -> Result<Self> {
        let mut rows = vec![v.to_vec(), w.to_vec()];
        linalg::rref(e, &mut rows);
        let [a, b]: [Vec<FElt>; 2] = rows
            .try_into()
            .map_err(|_| Error::domain("spanning vectors are dependent"))?;
        Ok(InvPlane {
            basis: [a, b],
            source,
        })
    }

    fn pivots(&self) -> [usize; 2] {
        self.basis
            .clone()
            .map(|r| r.iter().position(|x| !x.is_zero()).expect("nonzero row"))
    }

    /// Packed values of the reduced basis; equal keys mean equal subspaces.
    pub fn key(&self) -> Vec<u64> {
        self.basis.iter().flatten().map(|x| x.value()).collect()
    }

    pub fn is_invariant(&self, g: &GroupG, e: &FieldDesc) -> bool {
        let pivots = self.pivots();
        g.gens.iter().all(|sigma| {
            self.basis
                .iter()
                .all(|r| linalg::in_row_space(e, &self.basis, &pivots, &g.act(sigma, r)))
        })
    }

    /// `λ b_0 + μ b_1`.
    pub fn combination(&self, e: &FieldDesc, lambda: FElt, mu: FElt) -> Vec<FElt> {
        self.basis[0]
            .iter()
            .zip(&self.basis[1])
            .map(|(&a, &b)| e.add(e.mul(lambda, a), e.mul(mu, b)))
            .collect()
    }
}

/// Every G-invariant plane, built from the character decomposition.
pub fn invariant_planes(g: &GroupG, e: &FieldDesc) -> Result<Vec<InvPlane>> {
    let lines = eigen_decomposition(g, e)?;
    let (trivial, nontrivial): (Vec<&CharLine>, Vec<&CharLine>) = lines.iter().partition(|l| l.is_trivial());
    let (t1, t2) = (&trivial[0].vector, &trivial[1].vector);
    // lines of the trivial isotypic plane: [1:0] and [a:1]
    let mut trivial_lines = vec![t1.clone()];
    for a in e.elements() {
        trivial_lines.push(t1.iter().zip(t2).map(|(&x, &y)| e.add(e.mul(a, x), y)).collect());
    }

    let mut planes = Vec::new();
    for (i, a) in nontrivial.iter().enumerate() {
        for b in &nontrivial[i + 1..] {
            planes.push(InvPlane::from_span(
                e,
                &a.vector,
                &b.vector,
                PlaneSource::EigenPair,
            )?);
        }
    }
    for a in &nontrivial {
        for t in &trivial_lines {
            planes.push(InvPlane::from_span(e, &a.vector, t, PlaneSource::EigenPair)?);
        }
    }
    planes.push(InvPlane::from_span(e, t1, t2, PlaneSource::TrivialIsotypic)?);

    let mut keys = HashSet::new();
    for plane in &planes {
        if !plane.is_invariant(g, e) {
            return Err(Error::domain("constructed plane is not G-invariant"));
        }
        if !keys.insert(plane.key()) {
            return Err(Error::domain("constructed planes are not distinct"));
        }
    }
    Ok(planes)
}

/// A point of a plane outside X, with the first violated equation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub lambda: FElt,
    pub mu: FElt,
    pub vector: Vec<FElt>,
    /// `k` with `Σ v_j^k ≠ 0`.
    pub equation: u32,
}

#[derive(Debug, Clone)]
pub struct PlaneVerdict {
    pub plane: InvPlane,
    /// `None` means the plane lies in X.
    pub violation: Option<Violation>,
}

#[derive(Debug, Clone)]
pub struct ObstructionReport {
    pub p: u64,
    pub m: u32,
    pub n: usize,
    pub field: FieldDesc,
    pub group_order: u128,
    pub lines: usize,
    pub rank: usize,
    /// Every character line has p-th power sum equal to 1.
    pub powersums_one: bool,
    pub planes: Vec<PlaneVerdict>,
    /// No invariant plane lies in X.
    pub holds: bool,
}

impl ObstructionReport {
    pub fn planes_in_x(&self) -> usize {
        self.planes.iter().filter(|v| v.violation.is_none()).count()
    }
}

fn find_violation(plane: &InvPlane, x: &PowerSumVariety, e: &FieldDesc) -> Option<Violation> {
    for lambda in e.elements() {
        for mu in e.elements() {
            let v = plane.combination(e, lambda, mu);
            if let Some(k) = x.first_violation(e, &v) {
                return Some(Violation {
                    lambda,
                    mu,
                    vector: v,
                    equation: k,
                });
            }
        }
    }
    None
}

fn check_plane_test_sound(p: u64, e: &FieldDesc) -> Result<()> {
    check_roots_of_unity(p, e)?;
    if e.order() <= p {
        return Err(Error::domain(format!(
            "|{e}| = {} must exceed p = {p} for the containment scan to be exact",
            e.order()
        )));
    }
    Ok(())
}

/// Decomposes `E^n`, checks the eigenline power sums, and tests every
/// invariant plane for containment in X.
#[allow(non_snake_case)]
pub fn no_plane_in_X(g: &GroupG, e: &FieldDesc) -> Result<ObstructionReport> {
    check_plane_test_sound(g.p, e)?;
    let lines = eigen_decomposition(g, e)?;
    let rows: Vec<Vec<FElt>> = lines.iter().map(|l| l.vector.clone()).collect();
    let rank = linalg::rank(e, &rows);
    let powersums_one = lines.iter().all(|l| eigenline_powersum(l, g.p, e) == e.one());
    let x = PowerSumVariety { p: g.p };
    let planes: Vec<PlaneVerdict> = invariant_planes(g, e)?
        .into_par_iter()
        .map(|plane| {
            let violation = find_violation(&plane, &x, e);
            PlaneVerdict { plane, violation }
        })
        .collect();
    let holds = planes.iter().all(|v| v.violation.is_some());
    Ok(ObstructionReport {
        p: g.p,
        m: g.m,
        n: g.n(),
        field: e.clone(),
        group_order: g.order(),
        lines: lines.len(),
        rank,
        powersums_one,
        planes,
        holds,
    })
}

#[derive(Debug, Clone)]
pub struct OracleReport {
    /// Number of 2-dimensional subspaces enumerated.
    pub total_planes: u64,
    /// The invariant ones, in enumeration order.
    pub invariant: Vec<InvPlane>,
    /// None of the invariant planes lies in X.
    pub none_in_x: bool,
}

impl OracleReport {
    /// Whether the invariant planes coincide, as subspaces, with `planes`.
    pub fn agrees_with(&self, planes: &[InvPlane]) -> bool {
        let a: BTreeSet<Vec<u64>> = self.invariant.iter().map(InvPlane::key).collect();
        let b: BTreeSet<Vec<u64>> = planes.iter().map(InvPlane::key).collect();
        a.len() == self.invariant.len() && a == b
    }
}

/// Gaussian binomial `[n choose 2]_Q`.
pub fn plane_count(n: u32, q: u64) -> u128 {
    let q = q as u128;
    (q.pow(n) - 1) * (q.pow(n - 1) - 1) / ((q * q - 1) * (q - 1))
}

/// Enumerates every plane of `E^n` in reduced form, keeps the G-invariant ones
/// and tests each for containment in X. Independent of the character theory.
pub fn brute_force_oracle(g: &GroupG, e: &FieldDesc, budget: &Budget) -> Result<OracleReport> {
    check_plane_test_sound(g.p, e)?;
    let n = g.n();
    budget.check("2-dimensional subspaces", plane_count(n as u32, e.order()))?;
    let q = e.order();
    let elems: Vec<FElt> = e.elements().collect();
    let pivot_pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();

    let per_pair: Vec<(u64, Vec<InvPlane>)> = pivot_pairs
        .par_iter()
        .map(|&(i, j)| {
            let free1: Vec<usize> = (i + 1..n).filter(|&c| c != j).collect();
            let free2: Vec<usize> = (j + 1..n).collect();
            let slots = (free1.len() + free2.len()) as u32;
            let count = q.pow(slots);
            let mut found = Vec::new();
            for idx in 0..count {
                let mut r1 = vec![e.zero(); n];
                let mut r2 = vec![e.zero(); n];
                r1[i] = e.one();
                r2[j] = e.one();
                let mut rest = idx;
                for &c in &free1 {
                    r1[c] = elems[(rest % q) as usize];
                    rest /= q;
                }
                for &c in &free2 {
                    r2[c] = elems[(rest % q) as usize];
                    rest /= q;
                }
                let plane = InvPlane {
                    basis: [r1, r2],
                    source: PlaneSource::BruteForce,
                };
                if plane.is_invariant(g, e) {
                    found.push(plane);
                }
            }
            (count, found)
        })
        .collect();

    let total_planes = per_pair.iter().map(|(c, _)| c).sum();
    let invariant: Vec<InvPlane> = per_pair.into_iter().flat_map(|(_, f)| f).collect();
    let x = PowerSumVariety { p: g.p };
    let none_in_x = invariant.iter().all(|pl| find_violation(pl, &x, e).is_some());
    Ok(OracleReport {
        total_planes,
        invariant,
        none_in_x,
    })
}
