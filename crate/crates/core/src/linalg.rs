//! Dense exact linear algebra over a [`Field`].

use crate::error::{Error, Result};
use crate::field::Field;

/// Row-major dense matrix. Arithmetic takes the field explicitly.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: Clone> Matrix<E> {
    pub fn filled(rows: usize, cols: usize, value: E) -> Self {
        Matrix { rows, cols, data: vec![value; rows * cols] }
    }

    pub fn zeros<F: Field<Elem = E>>(field: &F, rows: usize, cols: usize) -> Self {
        Self::filled(rows, cols, field.zero())
    }

    pub fn identity<F: Field<Elem = E>>(field: &F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<E>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        Self::from_rows_with_cols(rows, cols)
    }

    pub fn from_rows_with_cols(rows: Vec<Vec<E>>, cols: usize) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, got: r.len() });
            }
            data.extend(r);
        }
        Ok(Matrix { rows: n, cols, data })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> E) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
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

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: E) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[E] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<E>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Matrix::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone())
    }

    pub fn select_cols(&self, cols: &[usize]) -> Self {
        Matrix::from_fn(self.rows, cols.len(), |i, j| self.get(i, cols[j]).clone())
    }

    pub fn map<T: Clone>(&self, mut f: impl FnMut(&E) -> T) -> Matrix<T> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(&mut f).collect() }
    }

    pub fn vstack(blocks: &[Matrix<E>]) -> Result<Self> {
        let cols = blocks.first().map_or(0, |b| b.cols);
        let mut data = Vec::new();
        let mut rows = 0;
        for b in blocks {
            if b.cols != cols {
                return Err(Error::DimensionMismatch { expected: cols, got: b.cols });
            }
            data.extend(b.data.iter().cloned());
            rows += b.rows;
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn hstack(blocks: &[Matrix<E>]) -> Result<Self> {
        let rows = blocks.first().map_or(0, |b| b.rows);
        for b in blocks {
            if b.rows != rows {
                return Err(Error::DimensionMismatch { expected: rows, got: b.rows });
            }
        }
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for b in blocks {
                data.extend(b.row(i).iter().cloned());
            }
        }
        Ok(Matrix { rows, cols, data })
    }
}

pub fn mat_mul<F: Field>(field: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> Result<Matrix<F::Elem>> {
    if a.cols != b.rows {
        return Err(Error::DimensionMismatch { expected: a.cols, got: b.rows });
    }
    let mut out = Matrix::zeros(field, a.rows, b.cols);
    for i in 0..a.rows {
        for l in 0..a.cols {
            let x = a.get(i, l);
            if field.is_zero(x) {
                continue;
            }
            for j in 0..b.cols {
                let v = field.add(out.get(i, j), &field.mul(x, b.get(l, j)));
                out.set(i, j, v);
            }
        }
    }
    Ok(out)
}

pub fn mat_sub<F: Field>(field: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> Result<Matrix<F::Elem>> {
    if a.rows != b.rows || a.cols != b.cols {
        return Err(Error::DimensionMismatch { expected: a.rows * a.cols, got: b.rows * b.cols });
    }
    Ok(Matrix::from_fn(a.rows, a.cols, |i, j| field.sub(a.get(i, j), b.get(i, j))))
}

pub fn mat_vec<F: Field>(field: &F, a: &Matrix<F::Elem>, v: &[F::Elem]) -> Result<Vec<F::Elem>> {
    if a.cols != v.len() {
        return Err(Error::DimensionMismatch { expected: a.cols, got: v.len() });
    }
    Ok((0..a.rows)
        .map(|i| {
            a.row(i).iter().zip(v).fold(field.zero(), |acc, (x, y)| field.add(&acc, &field.mul(x, y)))
        })
        .collect())
}

/// In-place reduced row echelon form. Returns the pivot columns; the
/// first `pivots.len()` rows are the nonzero rows, with pivot entries 1.
pub fn rref<F: Field>(field: &F, m: &mut Matrix<F::Elem>) -> Vec<usize> {
    let (rows, cols) = (m.rows, m.cols);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !field.is_zero(m.get(i, c))) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                m.data.swap(p * cols + j, r * cols + j);
            }
        }
        let inv = field.inv(m.get(r, c)).expect("pivot is nonzero");
        for j in c..cols {
            let v = field.mul(m.get(r, j), &inv);
            m.set(r, j, v);
        }
        for i in 0..rows {
            if i == r {
                continue;
            }
            let factor = m.get(i, c).clone();
            if field.is_zero(&factor) {
                continue;
            }
            for j in c..cols {
                let v = field.sub(m.get(i, j), &field.mul(&factor, m.get(r, j)));
                m.set(i, j, v);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Row echelon form (not reduced), returning the rank. Cheaper than
/// [`rref`] when only the rank matters.
pub fn rank<F: Field>(field: &F, m: &Matrix<F::Elem>) -> usize {
    let mut a = m.clone();
    let (rows, cols) = (a.rows, a.cols);
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !field.is_zero(a.get(i, c))) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                a.data.swap(p * cols + j, r * cols + j);
            }
        }
        let inv = field.inv(a.get(r, c)).expect("pivot is nonzero");
        for i in r + 1..rows {
            let factor = field.mul(a.get(i, c), &inv);
            if field.is_zero(&factor) {
                continue;
            }
            for j in c..cols {
                let v = field.sub(a.get(i, j), &field.mul(&factor, a.get(r, j)));
                a.set(i, j, v);
            }
        }
        r += 1;
    }
    r
}

/// Basis of the right kernel `{v : m v = 0}`, one vector per free column.
pub fn kernel<F: Field>(field: &F, m: &Matrix<F::Elem>) -> Vec<Vec<F::Elem>> {
    let mut a = m.clone();
    let pivots = rref(field, &mut a);
    let mut is_pivot = vec![false; a.cols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    (0..a.cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![field.zero(); a.cols];
            v[free] = field.one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = field.neg(a.get(row, free));
            }
            v
        })
        .collect()
}

pub fn inverse<F: Field>(field: &F, m: &Matrix<F::Elem>) -> Result<Matrix<F::Elem>> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch { expected: m.rows, got: m.cols });
    }
    let n = m.rows;
    let mut aug = Matrix::hstack(&[m.clone(), Matrix::identity(field, n)])?;
    let pivots = rref(field, &mut aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return Err(Error::SingularMatrix);
    }
    Ok(Matrix::from_fn(n, n, |i, j| aug.get(i, n + j).clone()))
}

pub fn determinant<F: Field>(field: &F, m: &Matrix<F::Elem>) -> Result<F::Elem> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch { expected: m.rows, got: m.cols });
    }
    let mut a = m.clone();
    let n = a.rows;
    let mut det = field.one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !field.is_zero(a.get(i, c))) else {
            return Ok(field.zero());
        };
        if p != c {
            for j in 0..n {
                a.data.swap(p * n + j, c * n + j);
            }
            det = field.neg(&det);
        }
        let pivot = a.get(c, c).clone();
        det = field.mul(&det, &pivot);
        let inv = field.inv(&pivot).expect("pivot is nonzero");
        for i in c + 1..n {
            let factor = field.mul(a.get(i, c), &inv);
            if field.is_zero(&factor) {
                continue;
            }
            for j in c..n {
                let v = field.sub(a.get(i, j), &field.mul(&factor, a.get(c, j)));
                a.set(i, j, v);
            }
        }
    }
    Ok(det)
}

/// `m = B * C` with `B = m[:, pivots]` and `C` the nonzero rows of the
/// reduced echelon form; inner dimension equals the rank.
pub fn rank_factorization<F: Field>(
    field: &F,
    m: &Matrix<F::Elem>,
) -> (Matrix<F::Elem>, Matrix<F::Elem>) {
    let mut reduced = m.clone();
    let pivots = rref(field, &mut reduced);
    let b = m.select_cols(&pivots);
    let c = Matrix::from_fn(pivots.len(), m.cols, |i, j| reduced.get(i, j).clone());
    (b, c)
}

pub fn is_skew<F: Field>(field: &F, m: &Matrix<F::Elem>) -> bool {
    m.is_square()
        && (0..m.rows).all(|i| {
            field.is_zero(m.get(i, i))
                && (i + 1..m.cols).all(|j| *m.get(i, j) == field.neg(m.get(j, i)))
        })
}

/// Writes a skew matrix as `B C - C^T B^T` with inner dimension
/// `rank / 2`, by repeated rank-two elimination on a nonzero entry.
pub fn skew_factorization<F: Field>(
    field: &F,
    m: &Matrix<F::Elem>,
) -> Result<(Matrix<F::Elem>, Matrix<F::Elem>)> {
    if !is_skew(field, m) {
        return Err(Error::InvalidSpec("matrix is not skew-symmetric".into()));
    }
    let n = m.rows;
    let mut a = m.clone();
    let mut us: Vec<Vec<F::Elem>> = Vec::new();
    let mut vs: Vec<Vec<F::Elem>> = Vec::new();
    loop {
        let found = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .find(|&(i, j)| !field.is_zero(a.get(i, j)));
        let Some((i, j)) = found else { break };
        let inv = field.inv(a.get(i, j)).expect("nonzero");
        // u = col_i / a_ij, v = col_j; subtracting u v^T - v u^T clears rows/cols i, j
        let u: Vec<F::Elem> = (0..n).map(|k| field.mul(a.get(k, i), &inv)).collect();
        let v: Vec<F::Elem> = (0..n).map(|k| a.get(k, j).clone()).collect();
        for r in 0..n {
            for c in 0..n {
                let upd = field.sub(&field.mul(&u[r], &v[c]), &field.mul(&v[r], &u[c]));
                let val = field.sub(a.get(r, c), &upd);
                a.set(r, c, val);
            }
        }
        us.push(u);
        vs.push(v);
    }
    let s = us.len();
    let b = Matrix::from_fn(n, s, |r, l| us[l][r].clone());
    let c = Matrix::from_fn(s, n, |l, col| vs[l][col].clone());
    Ok((b, c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    fn q(rows: Vec<Vec<i64>>) -> Matrix<num_rational::BigRational> {
        let f = Rationals;
        Matrix::from_rows(rows.into_iter().map(|r| r.into_iter().map(|x| f.from_i64(x)).collect()).collect())
            .unwrap()
    }

    #[test]
    fn rank_and_kernel() {
        let f = Rationals;
        let m = q(vec![vec![1, 2, 3], vec![2, 4, 6], vec![1, 0, 1]]);
        assert_eq!(rank(&f, &m), 2);
        let ker = kernel(&f, &m);
        assert_eq!(ker.len(), 1);
        assert!(mat_vec(&f, &m, &ker[0]).unwrap().iter().all(|x| f.is_zero(x)));
    }

    #[test]
    fn inverse_round_trip() {
        let f = PrimeField::new(101).unwrap();
        let m = Matrix::from_rows(vec![vec![2u32, 1, 0], vec![0, 1, 5], vec![7, 0, 1]]).unwrap();
        let inv = inverse(&f, &m).unwrap();
        assert_eq!(mat_mul(&f, &m, &inv).unwrap(), Matrix::identity(&f, 3));
        let singular = Matrix::from_rows(vec![vec![1u32, 2], vec![2, 4]]).unwrap();
        assert!(matches!(inverse(&f, &singular), Err(Error::SingularMatrix)));
    }

    #[test]
    fn determinant_matches_leibniz_2x2() {
        let f = Rationals;
        let m = q(vec![vec![3, 7], vec![-2, 5]]);
        assert_eq!(determinant(&f, &m).unwrap(), f.from_i64(29));
    }

    #[test]
    fn rank_factorization_reproduces() {
        let f = Rationals;
        let m = q(vec![vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]]);
        let (b, c) = rank_factorization(&f, &m);
        assert_eq!(b.cols(), 2);
        assert_eq!(mat_mul(&f, &b, &c).unwrap(), m);
    }

    #[test]
    fn skew_factorization_reproduces() {
        let f = Rationals;
        // rank-2 skew: u v^T - v u^T
        let m = q(vec![
            vec![0, 1, 2, 3],
            vec![-1, 0, 1, 2],
            vec![-2, -1, 0, 1],
            vec![-3, -2, -1, 0],
        ]);
        let (b, c) = skew_factorization(&f, &m).unwrap();
        assert_eq!(b.cols(), rank(&f, &m) / 2);
        let bc = mat_mul(&f, &b, &c).unwrap();
        let rebuilt = mat_sub(&f, &bc, &bc.transpose()).unwrap();
        assert_eq!(rebuilt, m);
    }
}
