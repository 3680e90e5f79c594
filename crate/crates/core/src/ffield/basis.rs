use super::ext::ExtDesc;
use super::field::FElt;
use crate::error::{Error, Result};
use crate::linalg;

/// A K-basis of L together with its trace-dual basis, giving K-coordinates
/// `c_j = Tr(z · b_j^*)`.
#[derive(Debug, Clone)]
pub struct KBasis {
    ext: ExtDesc,
    basis: Vec<FElt>,
    dual: Vec<FElt>,
}

impl KBasis {
    /// `1, g, …, g^{n-1}` for the first generator `g` in canonical order.
    pub fn power_basis(ext: &ExtDesc) -> Result<Self> {
        let f = ext.big();
        let g = f
            .elements()
            .find(|&y| ext.is_generator(y))
            .expect("a finite extension has a primitive element");
        let mut basis = Vec::with_capacity(ext.n() as usize);
        let mut x = f.one();
        for _ in 0..ext.n() {
            basis.push(x);
            x = f.mul(x, g);
        }
        Self::from_elements(ext, basis)
    }

    /// Errors unless `basis` has `n` K-linearly independent elements.
    pub fn from_elements(ext: &ExtDesc, basis: Vec<FElt>) -> Result<Self> {
        let f = ext.big();
        let n = ext.n() as usize;
        if basis.len() != n {
            return Err(Error::domain(format!(
                "{} elements cannot form a basis of degree {n}",
                basis.len()
            )));
        }
        let gram: Vec<Vec<FElt>> = basis
            .iter()
            .map(|&bi| basis.iter().map(|&bj| ext.trace(f.mul(bi, bj))).collect())
            .collect();
        let inv = linalg::invert(f, &gram).map_err(|_| Error::domain("elements are K-linearly dependent"))?;
        let dual = (0..n)
            .map(|j| (0..n).fold(f.zero(), |acc, k| f.add(acc, f.mul(inv[k][j], basis[k]))))
            .collect();
        Ok(KBasis {
            ext: ext.clone(),
            basis,
            dual,
        })
    }

    pub fn elements(&self) -> &[FElt] {
        &self.basis
    }

    /// K-coordinates of `z` (each an element of K inside L).
    pub fn coords(&self, z: FElt) -> Vec<FElt> {
        let f = self.ext.big();
        self.dual.iter().map(|&d| self.ext.trace(f.mul(z, d))).collect()
    }

    pub fn combine(&self, coords: &[FElt]) -> FElt {
        let f = self.ext.big();
        coords
            .iter()
            .zip(&self.basis)
            .fold(f.zero(), |acc, (&c, &b)| f.add(acc, f.mul(c, b)))
    }

    /// Matrix of `z ↦ y·z` in this basis; column `j` holds the coordinates of `y·b_j`.
    pub fn mult_matrix(&self, y: FElt) -> Vec<Vec<FElt>> {
        let f = self.ext.big();
        let cols: Vec<Vec<FElt>> = self.basis.iter().map(|&b| self.coords(f.mul(y, b))).collect();
        let n = self.basis.len();
        (0..n).map(|i| (0..n).map(|j| cols[j][i]).collect()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coordinates_roundtrip() {
        for (q, n) in [(2u64, 6u32), (4, 3), (3, 2)] {
            let ext = ExtDesc::over(q, n).unwrap();
            let kb = KBasis::power_basis(&ext).unwrap();
            for z in ext.big().elements() {
                let c = kb.coords(z);
                assert!(c.iter().all(|&x| ext.in_base(x)));
                assert_eq!(kb.combine(&c), z);
            }
        }
    }

    #[test]
    fn dependent_elements_rejected() {
        let ext = ExtDesc::over(2, 3).unwrap();
        let f = ext.big();
        let r = KBasis::from_elements(&ext, vec![f.one(), f.one(), f.root()]);
        assert!(r.is_err());
    }
}
