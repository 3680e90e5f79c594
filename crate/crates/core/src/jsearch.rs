//! Exhaustive searches for Joubert and Hermite generators, enumeration of
//! Joubert polynomials, and the trace-condition census.

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::error::{Budget, Error, Result};
use crate::ffield::{is_prime, make_field, prime_power, ExtDesc, FElt};
use crate::fpoly::{min_poly, UPoly};
use crate::scan;
use crate::sigma::is_joubert_unchecked;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SearchMode {
    First,
    Count,
    Enumerate,
}

/// A generator together with its minimal polynomial over the canonical GF(q).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub element: FElt,
    pub min_poly: UPoly,
}

#[derive(Debug, Clone)]
pub struct SearchReport {
    pub q: u64,
    pub n: u32,
    pub mode: SearchMode,
    pub found: Option<Witness>,
    pub count: Option<u64>,
    /// Split of `count` into generators and non-generators, when the search
    /// distinguishes them.
    pub generators: Option<u64>,
    pub non_generators: Option<u64>,
    pub elapsed: Duration,
}

fn power_of_two(q: u64) -> Result<u32> {
    match prime_power(q) {
        Some((2, k)) => Ok(k),
        _ => Err(Error::domain(format!("q = {q} is not a power of 2"))),
    }
}

fn order_of(q: u64, n: u32) -> u128 {
    (q as u128).saturating_pow(n)
}

/// First generator (canonical order) of F_{q^n}/F_q with σ_1 = σ_3 = 0.
fn first_joubert_generator(q: u64, n: u32, budget: &Budget) -> Result<SearchReport> {
    let start = Instant::now();
    budget.check(&format!("scan of F_{{{q}^{n}}}"), order_of(q, n))?;
    let ext = ExtDesc::over(q, n)?;
    let big = ext.big();
    let hit = scan::first_index(big.order(), |v| {
        let y = big.element(v).expect("in range");
        ext.is_generator(y) && is_joubert_unchecked(y, &ext)
    });
    let found = match hit {
        Some(v) => Some(witness(big.element(v)?, &ext)?),
        None => None,
    };
    Ok(SearchReport {
        q,
        n,
        mode: SearchMode::First,
        found,
        count: None,
        generators: None,
        non_generators: None,
        elapsed: start.elapsed(),
    })
}

/// Re-verifies a candidate and attaches its minimal polynomial over GF(q).
fn witness(y: FElt, ext: &ExtDesc) -> Result<Witness> {
    let mp = min_poly(y, ext);
    if mp.degree() != Some(ext.n() as usize) || !is_joubert_unchecked(y, ext) {
        return Err(Error::domain("witness failed re-verification"));
    }
    let n = ext.n() as usize;
    if !(mp.coeff(n - 1).is_zero() && mp.coeff(n - 3).is_zero()) {
        return Err(Error::domain("witness minimal polynomial has the wrong shape"));
    }
    let mp = mp.to_base(&ext.embedding()?)?;
    if !mp.is_irreducible()? {
        return Err(Error::domain("witness minimal polynomial is reducible"));
    }
    Ok(Witness {
        element: y,
        min_poly: mp,
    })
}

/// A Joubert generator of F_{q^6}/F_q for `q` a power of 2.
pub fn find_joubert_generator(q: u64, budget: &Budget) -> Result<SearchReport> {
    power_of_two(q)?;
    first_joubert_generator(q, 6, budget)
}

/// A generator of F_{q^5}/F_q with σ_1 = σ_3 = 0, any prime power `q`.
pub fn hermite_search(q: u64, budget: &Budget) -> Result<SearchReport> {
    first_joubert_generator(q, 5, budget)
}

/// Number of Joubert generators of F_{q^6}/F_q.
pub fn count_joubert_generators(q: u64, budget: &Budget) -> Result<SearchReport> {
    let start = Instant::now();
    budget.check(&format!("scan of F_{{{q}^6}}"), order_of(q, 6))?;
    let ext = ExtDesc::over(q, 6)?;
    let big = ext.big();
    let [gens, non] = scan::tally(big.order(), |v| {
        let y = big.element(v).expect("in range");
        if !is_joubert_unchecked(y, &ext) {
            return [0, 0];
        }
        if ext.is_generator(y) {
            [1, 0]
        } else {
            [0, 1]
        }
    });
    Ok(SearchReport {
        q,
        n: 6,
        mode: SearchMode::Count,
        found: None,
        count: Some(gens),
        generators: Some(gens),
        non_generators: Some(non),
        elapsed: start.elapsed(),
    })
}

/// All irreducible `t^6 + a t^4 + b t^2 + c t + d` over GF(q), ordered by
/// `(a, b, c, d)` in canonical element order.
pub fn enumerate_joubert_polys(q: u64, budget: &Budget) -> Result<Vec<UPoly>> {
    let (p, k) = prime_power(q).ok_or_else(|| Error::domain(format!("{q} is not a prime power")))?;
    budget.check("Joubert polynomial candidates", order_of(q, 4))?;
    let field = make_field(p, k)?;
    let mut out = Vec::new();
    for idx in 0..q.pow(4) {
        let a = idx / q.pow(3);
        let b = (idx / q.pow(2)) % q;
        let c = (idx / q) % q;
        let d = idx % q;
        let poly = UPoly::from_values(&field, &[d, c, b, 0, a, 0, 1]);
        if poly.is_irreducible()? {
            out.push(poly);
        }
    }
    Ok(out)
}

/// Census of `y ∈ F_{q^n} − F_q`, `n = 2p^m`, with `Tr(y^j) = 0` for
/// `j = 1..p`, split by whether `y` generates. Reports counts only.
pub fn explore_trace_conditions(q: u64, p: u64, m: u32, budget: &Budget) -> Result<SearchReport> {
    let start = Instant::now();
    power_of_two(q)?;
    if p == 2 || !is_prime(p) {
        return Err(Error::domain(format!("p = {p} must be an odd prime")));
    }
    if m == 0 {
        return Err(Error::ZeroDegree);
    }
    let n = p
        .checked_pow(m)
        .and_then(|x| x.checked_mul(2))
        .and_then(|x| u32::try_from(x).ok())
        .ok_or_else(|| Error::Size {
            what: "relative degree 2p^m".into(),
            size: 2 * (p as u128).saturating_pow(m),
            limit: u32::MAX as u128,
        })?;
    budget.check(&format!("scan of F_{{{q}^{n}}}"), order_of(q, n))?;
    let ext = ExtDesc::over(q, n)?;
    let big = ext.big();
    let [gens, non] = scan::tally(big.order(), |v| {
        let y = big.element(v).expect("in range");
        if ext.in_base(y) {
            return [0, 0];
        }
        let mut x = y;
        for _ in 0..p {
            if !ext.trace(x).is_zero() {
                return [0, 0];
            }
            x = big.mul(x, y);
        }
        if ext.is_generator(y) {
            [1, 0]
        } else {
            [0, 1]
        }
    });
    Ok(SearchReport {
        q,
        n,
        mode: SearchMode::Count,
        found: None,
        count: Some(gens + non),
        generators: Some(gens),
        non_generators: Some(non),
        elapsed: start.elapsed(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn joubert_polys_over_gf2() {
        let polys = enumerate_joubert_polys(2, &Budget::DEFAULT).unwrap();
        let text: Vec<String> = polys.iter().map(|p| p.to_string()).collect();
        assert_eq!(text, vec!["t^6+t+1", "t^6+t^4+t^2+t+1"]);
    }

    #[test]
    fn joubert_polys_shape_and_gf4_contents() {
        let polys = enumerate_joubert_polys(4, &Budget::DEFAULT).unwrap();
        for p in &polys {
            assert!(p.is_monic());
            assert_eq!(p.degree(), Some(6));
            assert!(p.coeff(5).is_zero() && p.coeff(3).is_zero());
            assert!(p.is_irreducible().unwrap());
        }
        let text: Vec<String> = polys.iter().map(|p| p.to_string()).collect();
        assert!(text.contains(&"t^6+t^2+t+[0,1]".to_string()));
        assert!(text.contains(&"t^6+t^2+t+[1,1]".to_string()));
    }

    #[test]
    fn generator_for_gf2_is_root_of_t6_t_1() {
        let r = find_joubert_generator(2, &Budget::DEFAULT).unwrap();
        let w = r.found.unwrap();
        assert_eq!(w.min_poly.to_string(), "t^6+t+1");
    }

    #[test]
    fn generator_count_matches_polynomials() {
        let r = count_joubert_generators(2, &Budget::DEFAULT).unwrap();
        assert_eq!(r.count, Some(12));
        assert_eq!(r.non_generators, Some(8));
        let polys = enumerate_joubert_polys(2, &Budget::DEFAULT).unwrap();
        let ext = ExtDesc::over(2, 6).unwrap();
        let emb = ext.embedding().unwrap();
        for y in ext.big().elements() {
            if ext.is_generator(y) && is_joubert_unchecked(y, &ext) {
                let mp = min_poly(y, &ext).to_base(&emb).unwrap();
                assert!(polys.contains(&mp));
            }
        }
        // q = 4: 6 roots per irreducible polynomial
        let r4 = count_joubert_generators(4, &Budget::DEFAULT).unwrap();
        let p4 = enumerate_joubert_polys(4, &Budget::DEFAULT).unwrap();
        assert_eq!(r4.count, Some(6 * p4.len() as u64));
    }

    #[test]
    fn hermite_in_small_characteristics() {
        for q in [2u64, 3, 4, 5] {
            let r = hermite_search(q, &Budget::DEFAULT).unwrap();
            let w = r.found.expect("Hermite generator");
            assert_eq!(w.min_poly.degree(), Some(5));
            assert!(w.min_poly.coeff(4).is_zero() && w.min_poly.coeff(2).is_zero());
        }
    }

    #[test]
    fn budget_and_domain_errors() {
        assert!(find_joubert_generator(3, &Budget::DEFAULT).is_err());
        assert!(find_joubert_generator(16, &Budget(1000)).unwrap_err().is_size());
        assert!(explore_trace_conditions(2, 4, 1, &Budget::DEFAULT).is_err());
        assert!(explore_trace_conditions(2, 3, 1, &Budget(10))
            .unwrap_err()
            .is_size());
        assert!(enumerate_joubert_polys(6, &Budget::DEFAULT).is_err());
    }

    #[test]
    fn explore_reports_counts() {
        let r = explore_trace_conditions(2, 3, 1, &Budget::DEFAULT).unwrap();
        assert_eq!(r.n, 6);
        assert_eq!(
            r.count.unwrap(),
            r.generators.unwrap() + r.non_generators.unwrap()
        );
        // in characteristic 2, Tr(y^2) = Tr(y)^2, so the p = 3 conditions are
        // the Joubert conditions: 12 generators, F_8 − F_2 non-generators
        assert_eq!(r.generators, Some(12));
        assert_eq!(r.non_generators, Some(6));
        let r = explore_trace_conditions(2, 5, 1, &Budget::DEFAULT).unwrap();
        assert_eq!(r.n, 10);
    }
}
