//! Complex Schur decomposition with eigenvalue reordering.
//!
//! `M = Z T Zᴴ` with `Z` unitary and `T` upper triangular puts the
//! eigenvalues on the diagonal of `T`; reordering a chosen subset of them to
//! the leading diagonal positions makes the leading columns of `Z` an
//! orthonormal basis of the invariant subspace belonging to that subset.
//! That is the numerically stable route to invariant subspaces — no
//! eigenvector matrices, no null-space powering — and it is the backbone of
//! the primary decomposition.
//!
//! The factorization (`zgees`) and the reordering (`ztrexc`) are LAPACK
//! routines without a safe wrapper in the linear-algebra crates used here,
//! so this module owns the unsafe FFI. Buffers are column-major copies; the
//! routines are called once per matrix with workspace sized by a query call.

use ndarray::Array2;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::tensor::Matrix;

#[derive(Debug, Clone)]
pub(crate) struct Schur {
    /// Upper-triangular factor; eigenvalues on the diagonal.
    pub t: Matrix,
    /// Unitary factor; `M = Z T Zᴴ`.
    pub z: Matrix,
    /// Diagonal of `T`, in `T`'s order.
    pub eigenvalues: Vec<Complex64>,
}

pub(crate) fn schur_decompose(m: &Matrix) -> Result<Schur> {
    let (rows, cols) = m.dim();
    if rows != cols {
        return Err(Error::ShapeMismatch(format!(
            "Schur decomposition needs a square matrix, got {}×{}",
            rows, cols
        )));
    }
    let n = rows as i32;
    let mut a = to_col_major(m);
    let mut vs = vec![Complex64::new(0.0, 0.0); rows * rows];
    let mut w = vec![Complex64::new(0.0, 0.0); rows];
    let mut sdim: i32 = 0;
    let mut rwork = vec![0.0f64; rows.max(1)];
    let mut bwork = vec![0i32; rows.max(1)];
    let mut info: i32 = 0;

    // workspace query, then the real call
    let mut work = vec![Complex64::new(0.0, 0.0); 1];
    let mut lwork: i32 = -1;
    unsafe {
        lapack_sys::zgees_(
            b"V".as_ptr() as *const _,
            b"N".as_ptr() as *const _,
            None,
            &n,
            a.as_mut_ptr() as *mut _,
            &n,
            &mut sdim,
            w.as_mut_ptr() as *mut _,
            vs.as_mut_ptr() as *mut _,
            &n,
            work.as_mut_ptr() as *mut _,
            &lwork,
            rwork.as_mut_ptr(),
            bwork.as_mut_ptr(),
            &mut info,
        );
    }
    if info != 0 {
        return Err(Error::Lapack { routine: "zgees (workspace query)", info });
    }
    lwork = work[0].re as i32;
    work = vec![Complex64::new(0.0, 0.0); lwork.max(1) as usize];
    unsafe {
        lapack_sys::zgees_(
            b"V".as_ptr() as *const _,
            b"N".as_ptr() as *const _,
            None,
            &n,
            a.as_mut_ptr() as *mut _,
            &n,
            &mut sdim,
            w.as_mut_ptr() as *mut _,
            vs.as_mut_ptr() as *mut _,
            &n,
            work.as_mut_ptr() as *mut _,
            &lwork,
            rwork.as_mut_ptr(),
            bwork.as_mut_ptr(),
            &mut info,
        );
    }
    if info != 0 {
        return Err(Error::Lapack { routine: "zgees", info });
    }

    Ok(Schur {
        t: from_col_major(rows, rows, &a),
        z: from_col_major(rows, rows, &vs),
        eigenvalues: w,
    })
}

impl Schur {
    /// Moves the diagonal entries at `positions` (0-based, in `T`'s current
    /// order) to the leading positions, preserving their relative order, and
    /// returns the updated `(T, Z)`.
    ///
    /// After the move, the first `positions.len()` columns of the returned
    /// `Z` span the invariant subspace of the selected eigenvalues, and the
    /// leading principal block of the returned `T` is the restriction of `M`
    /// to it.
    pub fn reorder_to_leading(&self, positions: &[usize]) -> Result<(Matrix, Matrix)> {
        let n = self.t.nrows();
        let mut sorted: Vec<usize> = positions.to_vec();
        sorted.sort_unstable();
        for w in sorted.windows(2) {
            if w[0] == w[1] {
                return Err(Error::InvalidModeSet(format!(
                    "duplicate Schur position {}",
                    w[0]
                )));
            }
        }
        if let Some(&p) = sorted.last() {
            if p >= n {
                return Err(Error::ShapeMismatch(format!(
                    "Schur position {} out of range for a {}×{} factor",
                    p, n, n
                )));
            }
        }

        let ni = n as i32;
        let mut t = to_col_major(&self.t);
        let mut z = to_col_major(&self.z);
        // Moving an eigenvalue from position p to target j ≤ p only shifts
        // the positions in (j, p); entries beyond p are untouched. Since
        // targets grow with the ascending sources, every later source index
        // stays valid.
        for (target, &pos) in sorted.iter().enumerate() {
            if pos == target {
                continue;
            }
            let ifst = (pos + 1) as i32;
            let ilst = (target + 1) as i32;
            let mut info: i32 = 0;
            unsafe {
                lapack_sys::ztrexc_(
                    b"V".as_ptr() as *const _,
                    &ni,
                    t.as_mut_ptr() as *mut _,
                    &ni,
                    z.as_mut_ptr() as *mut _,
                    &ni,
                    &ifst,
                    &ilst,
                    &mut info,
                );
            }
            if info != 0 {
                return Err(Error::Lapack { routine: "ztrexc", info });
            }
        }
        Ok((from_col_major(n, n, &t), from_col_major(n, n, &z)))
    }
}

fn to_col_major(m: &Matrix) -> Vec<Complex64> {
    let (rows, cols) = m.dim();
    let mut v = Vec::with_capacity(rows * cols);
    for j in 0..cols {
        for i in 0..rows {
            v.push(m[[i, j]]);
        }
    }
    v
}

fn from_col_major(rows: usize, cols: usize, v: &[Complex64]) -> Matrix {
    Array2::from_shape_fn((rows, cols), |(i, j)| v[j * rows + i])
}
