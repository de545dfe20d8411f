//! Integer linear algebra on the unit lattice `Z^d`.
//!
//! An idempotent integer matrix `M` splits `Z^d` as `im M ⊕ ker M`. The
//! functions here compute canonical bases of both summands (row Hermite
//! normal form with positive pivots), assemble them into a unimodular basis
//! matrix `Y` with its exact inverse `T`, and decide lattice membership.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type IntVector = Vec<BigInt>;

/// Dense integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows_i64(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        IntMatrix {
            rows: r,
            cols: c,
            data: rows.iter().flatten().map(|&v| BigInt::from(v)).collect(),
        }
    }

    /// Builds a `len × columns.len()` matrix from column vectors of length `len`.
    pub fn from_columns(len: usize, columns: &[IntVector]) -> Self {
        let mut m = Self::zeros(len, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), len, "column length");
            for (i, v) in col.iter().enumerate() {
                m[(i, j)] = v.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn column(&self, j: usize) -> IntVector {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn row(&self, i: usize) -> IntVector {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn to_rows(&self) -> Vec<IntVector> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    /// Entries as `i64` rows, if they all fit.
    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(ToPrimitive::to_i64).collect())
            .collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a * &other[(k, j)];
                    out[(i, j)] += prod;
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Result<IntVector> {
        if v.len() != self.cols {
            return Err(Error::Dimension(format!(
                "{}x{} times vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows)
            .map(|i| (0..self.cols).map(|j| &self[(i, j)] * &v[j]).sum())
            .collect())
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Result<BigInt> {
        if !self.is_square() {
            return Err(Error::Dimension("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut a = self.to_rows();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
                return Ok(BigInt::zero());
            };
            if p != k {
                a.swap(p, k);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[k][k] * &a[i][j] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
                a[i][k] = BigInt::zero();
            }
            prev = a[k][k].clone();
        }
        Ok(sign * &a[n - 1][n - 1])
    }

    /// Exact inverse of a unimodular matrix; `None` if `|det| != 1`.
    pub fn inverse_unimodular(&self) -> Option<Self> {
        if !self.is_square() || !self.det().ok()?.abs().is_one() {
            return None;
        }
        let n = self.rows;
        let mut a: Vec<Vec<BigRational>> = (0..n)
            .map(|i| {
                (0..2 * n)
                    .map(|j| {
                        if j < n {
                            BigRational::from_integer(self[(i, j)].clone())
                        } else if j - n == i {
                            BigRational::one()
                        } else {
                            BigRational::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        for k in 0..n {
            let p = (k..n).find(|&i| !a[i][k].is_zero())?;
            a.swap(p, k);
            let piv = a[k][k].clone();
            for v in a[k].iter_mut() {
                *v = &*v / &piv;
            }
            for i in 0..n {
                if i != k && !a[i][k].is_zero() {
                    let f = a[i][k].clone();
                    for j in 0..2 * n {
                        let sub = &f * &a[k][j];
                        a[i][j] -= sub;
                    }
                }
            }
        }
        let mut inv = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let v = &a[i][n + j];
                if !v.is_integer() {
                    return None;
                }
                inv[(i, j)] = v.to_integer();
            }
        }
        Some(inv)
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .to_rows()
            .iter()
            .map(|r| {
                let cells: Vec<String> = r.iter().map(ToString::to_string).collect();
                format!("[{}]", cells.join(","))
            })
            .collect();
        write!(f, "[{}]", rows.join(","))
    }
}

/// Row-style Hermite normal form of the matrix whose rows are `vectors`.
///
/// Returns `(H, U)` with `U` unimodular and `U·A = H`. `H` is in row echelon
/// form with positive pivots and the entries above each pivot reduced into
/// `[0, pivot)`; its zero rows come last.
pub fn hermite_rows(vectors: &[IntVector], width: usize) -> (Vec<IntVector>, Vec<IntVector>) {
    let k = vectors.len();
    let mut h: Vec<IntVector> = vectors.to_vec();
    let mut u: Vec<IntVector> = (0..k)
        .map(|i| (0..k).map(|j| BigInt::from((i == j) as i64)).collect())
        .collect();
    let mut pr = 0;
    for col in 0..width {
        if pr == k {
            break;
        }
        loop {
            // Smallest nonzero entry at or below the pivot row moves up.
            let Some(best) = (pr..k)
                .filter(|&i| !h[i][col].is_zero())
                .min_by(|&a, &b| h[a][col].abs().cmp(&h[b][col].abs()))
            else {
                break;
            };
            h.swap(pr, best);
            u.swap(pr, best);
            let mut done = true;
            for i in pr + 1..k {
                if h[i][col].is_zero() {
                    continue;
                }
                let q = h[i][col].div_floor(&h[pr][col]);
                row_sub(&mut h, i, pr, &q);
                row_sub(&mut u, i, pr, &q);
                if !h[i][col].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h[pr][col].is_zero() {
            continue;
        }
        if h[pr][col].is_negative() {
            h[pr].iter_mut().for_each(|v| *v = -&*v);
            u[pr].iter_mut().for_each(|v| *v = -&*v);
        }
        for i in 0..pr {
            let q = h[i][col].div_floor(&h[pr][col]);
            if !q.is_zero() {
                row_sub(&mut h, i, pr, &q);
                row_sub(&mut u, i, pr, &q);
            }
        }
        pr += 1;
    }
    (h, u)
}

fn row_sub(m: &mut [IntVector], target: usize, src: usize, q: &BigInt) {
    let (a, b) = if target < src {
        let (lo, hi) = m.split_at_mut(src);
        (&mut lo[target], &hi[0])
    } else {
        let (lo, hi) = m.split_at_mut(target);
        (&mut hi[0], &lo[src])
    };
    for (x, y) in a.iter_mut().zip(b.iter()) {
        *x -= q * y;
    }
}

fn canonical_basis(vectors: &[IntVector], width: usize) -> Vec<IntVector> {
    let (h, _) = hermite_rows(vectors, width);
    h.into_iter().filter(|r| r.iter().any(|v| !v.is_zero())).collect()
}

pub fn mat_is_idempotent(m: &IntMatrix) -> Result<bool> {
    if !m.is_square() {
        return Err(Error::Dimension("idempotency test on a non-square matrix".into()));
    }
    Ok(&m.mul(m)? == m)
}

fn require_idempotent(m: &IntMatrix) -> Result<()> {
    if mat_is_idempotent(m)? {
        Ok(())
    } else {
        Err(Error::MatrixNotIdempotent)
    }
}

/// Z-basis of `{v : Mv = v}`, which for idempotent `M` is the column span.
pub fn fixed_lattice_basis(m: &IntMatrix) -> Result<Vec<IntVector>> {
    require_idempotent(m)?;
    let cols: Vec<IntVector> = (0..m.cols()).map(|j| m.column(j)).collect();
    Ok(canonical_basis(&cols, m.rows()))
}

/// Z-basis of `{v : Mv = 0}`.
pub fn kernel_basis(m: &IntMatrix) -> Result<Vec<IntVector>> {
    require_idempotent(m)?;
    Ok(integer_kernel(m))
}

/// Z-basis of the integer kernel of any matrix, canonicalized.
pub fn integer_kernel(m: &IntMatrix) -> Vec<IntVector> {
    // Row operations on M^T: a zero row of U·M^T = H gives u with M·u = 0.
    let (h, u) = hermite_rows(&m.transpose().to_rows(), m.rows());
    let kernel: Vec<IntVector> = h
        .iter()
        .zip(u)
        .filter(|(row, _)| row.iter().all(Zero::is_zero))
        .map(|(_, v)| v)
        .collect();
    canonical_basis(&kernel, m.cols())
}

/// Rank over the rationals.
pub fn rank(m: &IntMatrix) -> usize {
    canonical_basis(&m.to_rows(), m.cols()).len()
}

/// Coordinates `c` with `Σ c_i·basis_i = v`, if they exist over `Z`.
pub fn solve_in_lattice(v: &[BigInt], basis: &[IntVector]) -> Option<IntVector> {
    let width = v.len();
    if basis.iter().any(|b| b.len() != width) {
        return None;
    }
    let (h, u) = hermite_rows(basis, width);
    let mut residual: IntVector = v.to_vec();
    let mut w = vec![BigInt::zero(); basis.len()];
    for (i, row) in h.iter().enumerate() {
        let Some(p) = row.iter().position(|x| !x.is_zero()) else {
            break;
        };
        let (q, r) = residual[p].div_rem(&row[p]);
        if !r.is_zero() {
            return None;
        }
        for (x, y) in residual.iter_mut().zip(row) {
            *x -= &q * y;
        }
        w[i] = q;
    }
    if residual.iter().any(|x| !x.is_zero()) {
        return None;
    }
    // c^T = w^T U
    Some(
        (0..basis.len())
            .map(|j| w.iter().zip(&u).map(|(wi, ui)| wi * &ui[j]).sum())
            .collect(),
    )
}

/// `Z^d = (fixed lattice) ⊕ (kernel)` for an idempotent `M`, witnessed by the
/// basis matrix `Y` (fixed columns first) and its inverse `T`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SummandDecomposition {
    pub m: IntMatrix,
    pub r: usize,
    pub fixed_basis: Vec<IntVector>,
    pub kernel_basis: Vec<IntVector>,
    pub y: IntMatrix,
    pub t: IntMatrix,
    pub det_sign: i8,
}

/// Builds `Y` from the two bases and computes its integer inverse.
///
/// Fails with a certificate error if `|det Y| != 1`; for bases computed from
/// an idempotent matrix that indicates a bug.
pub fn assemble_unimodular(
    fixed: &[IntVector],
    kernel: &[IntVector],
) -> Result<(IntMatrix, IntMatrix, i8)> {
    let d = fixed.len() + kernel.len();
    let cols: Vec<IntVector> = fixed.iter().chain(kernel).cloned().collect();
    if let Some(bad) = cols.iter().find(|c| c.len() != d) {
        return Err(Error::Dimension(format!(
            "{} basis vectors of length {}",
            d,
            bad.len()
        )));
    }
    let y = IntMatrix::from_columns(d, &cols);
    let det = y.det()?;
    if !det.abs().is_one() {
        return Err(Error::certificate(
            "unimodularBasis",
            format!("det Y = {det}, Y = {y}"),
        ));
    }
    let t = y
        .inverse_unimodular()
        .ok_or_else(|| Error::certificate("inverseBasis", format!("Y = {y}")))?;
    Ok((y, t, if det.is_positive() { 1 } else { -1 }))
}

impl SummandDecomposition {
    pub fn new(m: &IntMatrix) -> Result<Self> {
        let fixed_basis = fixed_lattice_basis(m)?;
        let kernel_basis = kernel_basis(m)?;
        let (y, t, det_sign) = assemble_unimodular(&fixed_basis, &kernel_basis)?;
        Ok(SummandDecomposition {
            m: m.clone(),
            r: fixed_basis.len(),
            fixed_basis,
            kernel_basis,
            y,
            t,
            det_sign,
        })
    }

    pub fn d(&self) -> usize {
        self.m.rows()
    }

    /// Coordinates of `v` in the basis `b_1..b_d`, i.e. `T·v`.
    pub fn coordinates(&self, v: &[BigInt]) -> IntVector {
        self.t.mul_vec(v).expect("dimension checked at construction")
    }

    /// `M·Y = Y·diag(1,…,1,0,…,0)` with `r` ones.
    pub fn splits_matrix(&self) -> bool {
        let d = self.d();
        let mut diag = IntMatrix::zeros(d, d);
        for i in 0..self.r {
            diag[(i, i)] = BigInt::one();
        }
        match (self.m.mul(&self.y), self.y.mul(&diag)) {
            (Ok(a), Ok(b)) => a == b,
            _ => false,
        }
    }

    /// `T·Y = Y·T = I`.
    pub fn inverse_holds(&self) -> bool {
        let id = IntMatrix::identity(self.d());
        self.t.mul(&self.y).is_ok_and(|p| p == id) && self.y.mul(&self.t).is_ok_and(|p| p == id)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> IntVector {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows_i64(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
    }

    #[test]
    fn idempotency_examples() {
        assert!(mat_is_idempotent(&IntMatrix::identity(3)).unwrap());
        assert!(mat_is_idempotent(&IntMatrix::zeros(2, 2)).unwrap());
        assert!(mat_is_idempotent(&m(&[&[1, 0], &[1, 0]])).unwrap());
        assert!(!mat_is_idempotent(&m(&[&[0, 1], &[1, 0]])).unwrap());
        assert!(mat_is_idempotent(&IntMatrix::zeros(2, 3)).is_err());
    }

    #[test]
    fn fixed_lattice_examples() {
        assert_eq!(fixed_lattice_basis(&m(&[&[1, 0], &[1, 0]])).unwrap(), vec![v(&[1, 1])]);
        assert_eq!(
            fixed_lattice_basis(&IntMatrix::identity(2)).unwrap(),
            vec![v(&[1, 0]), v(&[0, 1])]
        );
        assert!(fixed_lattice_basis(&IntMatrix::zeros(2, 2)).unwrap().is_empty());
        assert_eq!(
            fixed_lattice_basis(&m(&[&[0, 1], &[1, 0]])),
            Err(Error::MatrixNotIdempotent)
        );
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel_basis(&m(&[&[1, 0], &[1, 0]])).unwrap(), vec![v(&[0, 1])]);
        assert!(kernel_basis(&IntMatrix::identity(2)).unwrap().is_empty());
        assert_eq!(kernel_basis(&m(&[&[1, -2], &[0, 0]])).unwrap(), vec![v(&[2, 1])]);
    }

    #[test]
    fn assembly_examples() {
        let (y, t, s) = assemble_unimodular(&[v(&[1, 1])], &[v(&[0, 1])]).unwrap();
        assert_eq!(y, m(&[&[1, 0], &[1, 1]]));
        assert_eq!(t, m(&[&[1, 0], &[-1, 1]]));
        assert_eq!(s, 1);
        let (y, t, _) = assemble_unimodular(&[v(&[1, 0]), v(&[0, 1])], &[]).unwrap();
        assert_eq!(y, IntMatrix::identity(2));
        assert_eq!(t, IntMatrix::identity(2));
        let (y, t, _) = assemble_unimodular(&[v(&[1, 0])], &[v(&[2, 1])]).unwrap();
        assert_eq!(y, m(&[&[1, 2], &[0, 1]]));
        assert_eq!(t, m(&[&[1, -2], &[0, 1]]));
    }

    #[test]
    fn assembly_rejects_non_unimodular() {
        let err = assemble_unimodular(&[v(&[2, 0])], &[v(&[0, 1])]).unwrap_err();
        assert!(matches!(err, Error::Certificate { .. }));
        assert!(matches!(
            assemble_unimodular(&[v(&[1, 0, 0])], &[v(&[0, 1])]),
            Err(Error::Dimension(_))
        ));
    }

    #[test]
    fn lattice_membership_examples() {
        assert_eq!(solve_in_lattice(&v(&[2, 2]), &[v(&[1, 1])]), Some(v(&[2])));
        assert_eq!(solve_in_lattice(&v(&[1, 0]), &[v(&[1, 1])]), None);
        assert_eq!(solve_in_lattice(&v(&[3, 1]), &[v(&[1, 1]), v(&[2, 0])]), Some(v(&[1, 1])));
        assert_eq!(solve_in_lattice(&v(&[1, 1]), &[v(&[2, 2])]), None);
        assert_eq!(solve_in_lattice(&v(&[0, 0]), &[]), Some(v(&[])));
    }

    #[test]
    fn determinant_and_inverse() {
        let a = m(&[&[2, 1, 0], &[1, 1, 0], &[0, 3, 1]]);
        assert_eq!(a.det().unwrap(), BigInt::from(1));
        let inv = a.inverse_unimodular().unwrap();
        assert_eq!(a.mul(&inv).unwrap(), IntMatrix::identity(3));
        assert_eq!(m(&[&[2, 0], &[0, 1]]).inverse_unimodular(), None);
        assert_eq!(m(&[&[0, 1], &[1, 0]]).det().unwrap(), BigInt::from(-1));
        assert_eq!(IntMatrix::zeros(0, 0).det().unwrap(), BigInt::from(1));
    }

    #[test]
    fn decomposition_of_e1_matrix() {
        let dec = SummandDecomposition::new(&m(&[&[1, 0], &[1, 0]])).unwrap();
        assert_eq!(dec.r, 1);
        assert!(dec.splits_matrix());
        assert!(dec.inverse_holds());
        assert_eq!(dec.coordinates(&v(&[1, 1])), v(&[1, 0]));
        assert_eq!(dec.coordinates(&v(&[0, 1])), v(&[0, 1]));
    }

    #[test]
    fn rank_of_matrices() {
        assert_eq!(rank(&m(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(rank(&IntMatrix::identity(3)), 3);
        assert_eq!(rank(&IntMatrix::zeros(0, 0)), 0);
    }
}
