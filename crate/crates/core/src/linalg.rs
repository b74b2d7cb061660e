//! Exact linear algebra on [`Matrix`]: echelon forms, kernels, cokernels,
//! images, pushouts, Kronecker products and the factorizations provided by
//! the universal properties of kernels and cokernels.
//!
//! All basis choices are deterministic functions of the input, so derived
//! comparison maps are reproducible bit for bit.

use num_traits::{One, Zero};

use crate::error::{shape, Error, Result};
use crate::field::{inv_mod, mul_mod, residue, to_res, Field, Scalar};
use crate::matrix::Matrix;

/// Reduced row-echelon form and its pivot columns.
pub fn rref(m: &Matrix) -> (Matrix, Vec<usize>) {
    match m.field() {
        Field::Rationals => rref_rational(m),
        Field::PrimeField(p) => rref_modular(m, p),
    }
}

fn rref_rational(m: &Matrix) -> (Matrix, Vec<usize>) {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a: Vec<Vec<Scalar>> = (0..rows).map(|r| m.row_slice(r).to_vec()).collect();
    let mut pivots = Vec::new();
    let mut prow = 0;
    for c in 0..cols {
        if prow == rows {
            break;
        }
        let Some(sel) = (prow..rows).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(prow, sel);
        let inv = a[prow][c].recip();
        if !inv.is_one() {
            for v in a[prow][c..].iter_mut() {
                *v = &*v * &inv;
            }
        }
        let pivot_row = a[prow].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r == prow || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (v, pv) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                if !pv.is_zero() {
                    *v = &*v - &(&factor * pv);
                }
            }
        }
        pivots.push(c);
        prow += 1;
    }
    let data = a.into_iter().flatten().collect();
    (
        Matrix::new(m.field(), rows, cols, data).expect("shape preserved"),
        pivots,
    )
}

fn rref_modular(m: &Matrix, p: u64) -> (Matrix, Vec<usize>) {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a: Vec<Vec<u64>> = (0..rows)
        .map(|r| m.row_slice(r).iter().map(to_res).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut prow = 0;
    for c in 0..cols {
        if prow == rows {
            break;
        }
        let Some(sel) = (prow..rows).find(|&r| a[r][c] != 0) else {
            continue;
        };
        a.swap(prow, sel);
        let inv = inv_mod(a[prow][c], p);
        for v in a[prow][c..].iter_mut() {
            *v = mul_mod(*v, inv, p);
        }
        let pivot_row = a[prow].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r == prow || row[c] == 0 {
                continue;
            }
            let factor = row[c];
            for (v, &pv) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                *v = (*v + p - mul_mod(factor, pv, p)) % p;
            }
        }
        pivots.push(c);
        prow += 1;
    }
    let data = a.into_iter().flatten().map(residue).collect();
    (
        Matrix::new(m.field(), rows, cols, data).expect("shape preserved"),
        pivots,
    )
}

pub fn rank(m: &Matrix) -> usize {
    rref(m).1.len()
}

/// Columns form a basis of `{v : Mv = 0}`: one vector per free column of the
/// echelon form, with a 1 in that column.
pub fn kernel_basis(m: &Matrix) -> Matrix {
    let f = m.field();
    let (r, pivots) = rref(m);
    let free: Vec<usize> = (0..m.cols()).filter(|c| !pivots.contains(c)).collect();
    let mut k = Matrix::zeros(f, m.cols(), free.len());
    for (j, &fc) in free.iter().enumerate() {
        k.set(fc, j, f.one());
        for (i, &pc) in pivots.iter().enumerate() {
            let v = r.get(i, fc);
            if !v.is_zero() {
                k.set(pc, j, f.neg(v));
            }
        }
    }
    k
}

/// Projection `k^m → k^m / Im(M)`.
///
/// The quotient basis is the set of codomain coordinates that are not pivots
/// of the column-reduced image (the echelon form of `Mᵗ`).
pub fn cokernel_projection(m: &Matrix) -> Matrix {
    let f = m.field();
    let (r, pivots) = rref(&m.transpose());
    let free: Vec<usize> = (0..m.rows()).filter(|c| !pivots.contains(c)).collect();
    let mut q = Matrix::zeros(f, free.len(), m.rows());
    for (j, &fc) in free.iter().enumerate() {
        q.set(j, fc, f.one());
    }
    // e_p = (image row with pivot p) − Σ_free R[i][c]·e_c, and the image row is killed.
    for (i, &pc) in pivots.iter().enumerate() {
        for (j, &fc) in free.iter().enumerate() {
            let v = r.get(i, fc);
            if !v.is_zero() {
                q.set(j, pc, f.neg(v));
            }
        }
    }
    q
}

/// Canonical basis of the column space: the nonzero rows of `rref(Mᵗ)`, as columns.
pub fn image_basis(m: &Matrix) -> Matrix {
    let (r, pivots) = rref(&m.transpose());
    r.rows_range(0..pivots.len()).transpose()
}

/// Some `X` with `A·X = B`, free variables set to zero.
pub fn solve(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    a.check_field(b)?;
    if a.rows() != b.rows() {
        return Err(shape(format!(
            "solve: lhs has {} rows, rhs has {}",
            a.rows(),
            b.rows()
        )));
    }
    let n = a.cols();
    let (r, pivots) = rref(&a.hstack(b)?);
    if let Some(&bad) = pivots.iter().find(|&&c| c >= n) {
        return Err(Error::NoFactorization(format!(
            "right-hand column {} is outside the column space",
            bad - n
        )));
    }
    let mut x = Matrix::zeros(a.field(), n, b.cols());
    for (i, &pc) in pivots.iter().enumerate() {
        for c in 0..b.cols() {
            x.set(pc, c, r.get(i, n + c).clone());
        }
    }
    Ok(x)
}

/// The unique `B` with `B·Q = A`, for `Q` a cokernel projection. Fails when
/// `A` does not vanish on `ker Q`.
pub fn factor_through_cokernel(q: &Matrix, a: &Matrix) -> Result<Matrix> {
    if q.cols() != a.cols() {
        return Err(shape(format!(
            "factor_through_cokernel: {} vs {} source dims",
            q.cols(),
            a.cols()
        )));
    }
    let bt = solve(&q.transpose(), &a.transpose()).map_err(|e| match e {
        Error::NoFactorization(_) => {
            Error::NoFactorization("map does not vanish on the kernel of the projection".into())
        }
        other => other,
    })?;
    Ok(bt.transpose())
}

/// The unique `B` with `K·B = A`, for `K` with independent columns. Fails when
/// a column of `A` leaves `span(K)`.
pub fn factor_through_kernel(k: &Matrix, a: &Matrix) -> Result<Matrix> {
    solve(k, a).map_err(|e| match e {
        Error::NoFactorization(_) => {
            Error::NoFactorization("map does not land in the subspace".into())
        }
        other => other,
    })
}

pub fn kronecker(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    a.check_field(b)?;
    let f = a.field();
    let (br, bc) = (b.rows(), b.cols());
    let mut out = Matrix::zeros(f, a.rows() * br, a.cols() * bc);
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            let x = a.get(i, j);
            if x.is_zero() {
                continue;
            }
            for k in 0..br {
                for l in 0..bc {
                    let y = b.get(k, l);
                    if !y.is_zero() {
                        out.set(i * br + k, j * bc + l, f.mul(x, y));
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Block-diagonal `A ⊕ B`.
pub fn direct_sum(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    a.check_field(b)?;
    let mut out = Matrix::zeros(a.field(), a.rows() + b.rows(), a.cols() + b.cols());
    out.set_block(0, 0, a);
    out.set_block(a.rows(), a.cols(), b);
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pushout {
    pub dim: usize,
    pub in_b: Matrix,
    pub in_c: Matrix,
}

impl Pushout {
    /// `[in_b | in_c] : B ⊕ C → P`, the cokernel presentation of the pushout.
    pub fn projection(&self) -> Matrix {
        self.in_b.hstack(&self.in_c).expect("same codomain")
    }
}

/// Pushout of `B ← A → C` computed as `(B ⊕ C) / Im(f, −g)`.
pub fn pushout(f: &Matrix, g: &Matrix) -> Result<Pushout> {
    f.check_field(g)?;
    if f.cols() != g.cols() {
        return Err(shape(format!(
            "pushout legs have domains {} and {}",
            f.cols(),
            g.cols()
        )));
    }
    let q = cokernel_projection(&f.vstack(&-g)?);
    Ok(Pushout {
        dim: q.rows(),
        in_b: q.columns(0..f.rows()),
        in_c: q.columns(f.rows()..q.cols()),
    })
}

pub fn is_mono(m: &Matrix) -> bool {
    rank(m) == m.cols()
}

pub fn is_epi(m: &Matrix) -> bool {
    rank(m) == m.rows()
}

pub fn is_iso(m: &Matrix) -> bool {
    m.is_square() && is_mono(m)
}

pub fn inverse(m: &Matrix) -> Option<Matrix> {
    if !is_iso(m) {
        return None;
    }
    solve(m, &Matrix::identity(m.field(), m.rows())).ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rationals
    }

    #[test]
    fn rref_examples() {
        let id = Matrix::identity(q(), 2);
        assert_eq!(rref(&id), (id.clone(), vec![0, 1]));

        let m = Matrix::from_i64(q(), 2, 2, &[1, 2, 2, 4]);
        let (r, piv) = rref(&m);
        assert_eq!(r, Matrix::from_i64(q(), 2, 2, &[1, 2, 0, 0]));
        assert_eq!(piv, vec![0]);

        let empty = Matrix::zeros(q(), 0, 4);
        assert_eq!(rref(&empty), (empty.clone(), vec![]));
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel_basis(&Matrix::identity(q(), 3)).cols(), 0);
        let zero = Matrix::zeros(q(), 2, 2);
        assert_eq!(kernel_basis(&zero), Matrix::identity(q(), 2));
    }

    #[test]
    fn kernel_over_f5_matches_enumeration() {
        let f5 = Field::prime(5).unwrap();
        let m = Matrix::from_i64(f5, 1, 2, &[1, 1]);
        let k = kernel_basis(&m);
        assert_eq!(k.cols(), 1);
        // Enumerate all 25 vectors: the solutions are exactly the multiples of (1, 4).
        let mut sols = Vec::new();
        for a in 0..5 {
            for b in 0..5 {
                if (a + b) % 5 == 0 {
                    sols.push((a, b));
                }
            }
        }
        assert_eq!(sols.len(), 5);
        let (x, y) = (to_res(k.get(0, 0)), to_res(k.get(1, 0)));
        assert!(sols.contains(&(x as i32, y as i32)) && (x, y) != (0, 0));
        // (x, y) is a nonzero multiple of (1, 4).
        assert_eq!((x * 4) % 5, y);
    }

    #[test]
    fn cokernel_examples() {
        let into_k = Matrix::zeros(q(), 1, 0);
        assert_eq!(cokernel_projection(&into_k), Matrix::identity(q(), 1));
        assert_eq!(cokernel_projection(&Matrix::identity(q(), 3)).rows(), 0);
        let e1 = Matrix::from_i64(q(), 2, 1, &[1, 0]);
        assert_eq!(cokernel_projection(&e1), Matrix::from_i64(q(), 1, 2, &[0, 1]));
    }

    #[test]
    fn image_examples() {
        assert_eq!(image_basis(&Matrix::identity(q(), 2)), Matrix::identity(q(), 2));
        assert_eq!(image_basis(&Matrix::zeros(q(), 3, 2)).cols(), 0);
        let m = Matrix::from_i64(q(), 2, 2, &[1, 2, 2, 4]);
        assert_eq!(image_basis(&m), Matrix::from_i64(q(), 2, 1, &[1, 2]));
    }

    #[test]
    fn factorization_examples() {
        let a = Matrix::from_i64(q(), 2, 3, &[1, 2, 3, 4, 5, 6]);
        assert_eq!(factor_through_cokernel(&Matrix::identity(q(), 3), &a).unwrap(), a);
        let proj = Matrix::from_i64(q(), 1, 2, &[0, 1]);
        assert_eq!(
            factor_through_cokernel(&proj, &Matrix::from_i64(q(), 1, 2, &[0, 3])).unwrap(),
            Matrix::from_i64(q(), 1, 1, &[3])
        );
        assert!(matches!(
            factor_through_cokernel(&proj, &Matrix::from_i64(q(), 1, 2, &[1, 0])),
            Err(Error::NoFactorization(_))
        ));

        let at = a.transpose();
        assert_eq!(factor_through_kernel(&Matrix::identity(q(), 3), &at).unwrap(), at);
        let incl = proj.transpose();
        assert_eq!(
            factor_through_kernel(&incl, &Matrix::from_i64(q(), 2, 1, &[0, 3])).unwrap(),
            Matrix::from_i64(q(), 1, 1, &[3])
        );
        assert!(factor_through_kernel(&incl, &Matrix::from_i64(q(), 2, 1, &[1, 0])).is_err());
    }

    #[test]
    fn kronecker_examples() {
        let k = kronecker(&Matrix::identity(q(), 2), &Matrix::identity(q(), 3)).unwrap();
        assert_eq!(k, Matrix::identity(q(), 6));
        let six = kronecker(&Matrix::from_i64(q(), 1, 1, &[2]), &Matrix::from_i64(q(), 1, 1, &[3]));
        assert_eq!(six.unwrap(), Matrix::from_i64(q(), 1, 1, &[6]));
        // Direct expansion: N ⊗ N has its single 1 at row (0,0), column (1,1).
        let n = Matrix::from_i64(q(), 2, 2, &[0, 1, 0, 0]);
        let mut expected = Matrix::zeros(q(), 4, 4);
        expected.set(0, 3, q().one());
        assert_eq!(kronecker(&n, &n).unwrap(), expected);
        let f3 = Matrix::identity(Field::prime(3).unwrap(), 1);
        assert!(matches!(kronecker(&n, &f3), Err(Error::FieldMismatch(..))));
    }

    #[test]
    fn direct_sum_examples() {
        let id2 = Matrix::identity(q(), 2);
        assert_eq!(direct_sum(&id2, &Matrix::identity(q(), 1)).unwrap(), Matrix::identity(q(), 3));
        assert_eq!(direct_sum(&id2, &Matrix::zeros(q(), 0, 0)).unwrap(), id2);
        let a = Matrix::from_i64(q(), 1, 1, &[5]);
        let b = Matrix::from_i64(q(), 2, 2, &[1, 2, 3, 4]);
        let expected = Matrix::from_i64(q(), 3, 3, &[5, 0, 0, 0, 1, 2, 0, 3, 4]);
        assert_eq!(direct_sum(&a, &b).unwrap(), expected);
    }

    #[test]
    fn pushout_examples() {
        let id = Matrix::identity(q(), 1);
        let p = pushout(&id, &id).unwrap();
        assert_eq!(p.dim, 1);
        assert_eq!(p.in_b, id);
        assert_eq!(p.in_c, id);

        let from_zero = Matrix::zeros(q(), 1, 0);
        let p = pushout(&from_zero, &from_zero).unwrap();
        assert_eq!(p.dim, 2);
        assert_eq!(p.projection(), Matrix::identity(q(), 2));

        let g = Matrix::from_i64(q(), 2, 1, &[1, 0]);
        let p = pushout(&id, &g).unwrap();
        // b + c − rank([f; −g]) = 1 + 2 − 1
        assert_eq!(p.dim, 2);
        assert_eq!(&p.in_b * &id, &p.in_c * &g);
        assert!(is_iso(&p.in_c));
        assert!(pushout(&id, &Matrix::identity(q(), 2)).is_err());
    }

    #[test]
    fn mono_epi_iso() {
        let id = Matrix::identity(q(), 2);
        assert!(is_mono(&id) && is_epi(&id) && is_iso(&id));
        let to_zero = Matrix::zeros(q(), 0, 1);
        assert!(is_epi(&to_zero) && !is_mono(&to_zero));
        let m = Matrix::from_i64(q(), 2, 2, &[1, 2, 2, 4]);
        assert!(!is_mono(&m) && !is_epi(&m) && !is_iso(&m));
    }

    #[test]
    fn inverse_roundtrip() {
        let m = Matrix::from_i64(q(), 2, 2, &[2, 1, 1, 1]);
        let inv = inverse(&m).unwrap();
        assert_eq!(&m * &inv, Matrix::identity(q(), 2));
        assert!(inverse(&Matrix::from_i64(q(), 2, 2, &[1, 2, 2, 4])).is_none());
    }
}
