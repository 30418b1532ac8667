//! Mode products: multiplying every mode-`n` fiber by a matrix.

use super::{DenseTensor, Matrix};
use crate::error::{Error, Result};

impl DenseTensor {
    /// Mode-`n` product: every mode-`n` fiber `f` of the result is `X f`.
    ///
    /// Equivalently `unfold_mode(R, n) = unfold_mode(D, n) · Xᵀ`, which is
    /// how it is computed. `X` must have `I_n` columns; mode `n` of the
    /// result has `X.nrows()` entries and all other modes are unchanged.
    pub fn mode_product(&self, x: &Matrix, n: usize) -> Result<DenseTensor> {
        self.check_mode(n)?;
        if x.ncols() != self.dims[n] {
            return Err(Error::ShapeMismatch(format!(
                "mode-{} product: factor is {}×{}, tensor mode has length {}",
                n,
                x.nrows(),
                x.ncols(),
                self.dims[n]
            )));
        }
        let unfolded = self.unfold_mode(n)?;
        let product = unfolded.dot(&x.t());
        let mut dims = self.dims.clone();
        dims[n] = x.nrows();
        DenseTensor::fold_mode(&product, &dims, n)
    }

    /// Applies several mode products at pairwise-distinct modes.
    ///
    /// The result does not depend on the order of the factors, so they may
    /// be given in any order; duplicated modes are rejected (composing two
    /// factors at the same mode is `X₂·X₁` at that mode, which the caller
    /// can form explicitly).
    pub fn multi_mode_product(&self, factors: &[(&Matrix, usize)]) -> Result<DenseTensor> {
        let mut seen = vec![false; self.order()];
        for &(x, n) in factors {
            self.check_mode(n)?;
            if seen[n] {
                return Err(Error::DuplicateMode(n));
            }
            seen[n] = true;
            if x.ncols() != self.dims[n] {
                return Err(Error::ShapeMismatch(format!(
                    "mode-{} product: factor is {}×{}, tensor mode has length {}",
                    n,
                    x.nrows(),
                    x.ncols(),
                    self.dims[n]
                )));
            }
        }
        let mut out = self.clone();
        for &(x, n) in factors {
            out = out.mode_product(x, n)?;
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use ndarray::array;
    use num_complex::Complex64;

    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn counting(dims: Vec<usize>) -> DenseTensor {
        let len = dims.iter().product();
        DenseTensor::new(dims, (1..=len).map(|k| c(k as f64)).collect()).unwrap()
    }

    #[test]
    fn identity_factor_is_a_no_op() {
        let d = counting(vec![2, 3, 2]);
        let eye = Matrix::eye(3);
        assert_eq!(d.mode_product(&eye, 1).unwrap(), d);
    }

    #[test]
    fn mode0_product_multiplies_fibers() {
        let d = counting(vec![2, 2, 2]);
        let x = array![[c(1.0), c(2.0)], [c(3.0), c(4.0)]];
        let r = d.mode_product(&x, 0).unwrap();
        // fiber (1,2) -> (5, 11), fiber (3,4) -> (11, 25), etc.
        assert_eq!(r.get(&[0, 0, 0]), c(5.0));
        assert_eq!(r.get(&[1, 0, 0]), c(11.0));
        assert_eq!(r.get(&[0, 1, 0]), c(11.0));
        assert_eq!(r.get(&[1, 1, 0]), c(25.0));
        assert_eq!(r.get(&[0, 0, 1]), c(17.0));
        assert_eq!(r.get(&[1, 1, 1]), c(53.0));
    }

    #[test]
    fn rectangular_factor_resizes_the_mode() {
        let d = counting(vec![2, 3, 2]);
        let x = Matrix::from_shape_fn((4, 3), |(i, j)| c((i * 3 + j) as f64 + 1.0));
        let r = d.mode_product(&x, 1).unwrap();
        assert_eq!(r.dims(), &[2, 4, 2]);
        // defining relation on the unfolding
        let lhs = r.unfold_mode(1).unwrap();
        let rhs = d.unfold_mode(1).unwrap().dot(&x.t());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn products_at_distinct_modes_commute() {
        let d = counting(vec![2, 3, 4]);
        let x = Matrix::from_shape_fn((2, 2), |(i, j)| c((2 * i + j) as f64 - 1.5));
        let y = Matrix::from_shape_fn((5, 4), |(i, j)| c((i + 2 * j) as f64 * 0.5));
        let a = d.mode_product(&x, 0).unwrap().mode_product(&y, 2).unwrap();
        let b = d.mode_product(&y, 2).unwrap().mode_product(&x, 0).unwrap();
        let diff = a.sub(&b).unwrap().frob_norm();
        assert!(diff < 1e-12, "order of distinct-mode products changed the result: {diff}");
        let c_ = d.multi_mode_product(&[(&y, 2), (&x, 0)]).unwrap();
        assert!(a.sub(&c_).unwrap().frob_norm() < 1e-12);
    }

    #[test]
    fn same_mode_products_compose_by_matrix_product() {
        let d = counting(vec![3, 2, 2]);
        let x1 = Matrix::from_shape_fn((2, 3), |(i, j)| c((i as f64) - (j as f64) * 0.3));
        let x2 = Matrix::from_shape_fn((4, 2), |(i, j)| c((i as f64) * 0.2 + (j as f64)));
        let step = d.mode_product(&x1, 0).unwrap().mode_product(&x2, 0).unwrap();
        let fused = d.mode_product(&x2.dot(&x1), 0).unwrap();
        assert!(step.sub(&fused).unwrap().frob_norm() < 1e-12);
    }

    #[test]
    fn rejects_mismatched_factor_and_duplicate_modes() {
        let d = counting(vec![2, 3, 2]);
        let x = Matrix::eye(2);
        assert!(d.mode_product(&x, 1).is_err());
        assert!(matches!(
            d.multi_mode_product(&[(&x, 0), (&x, 0)]),
            Err(Error::DuplicateMode(0))
        ));
    }
}
