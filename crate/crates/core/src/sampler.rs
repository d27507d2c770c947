//! Random points on rank varieties, block completions and random subspaces.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::ideal::IndexSet;
use crate::linalg::{determinant, kernel, mat_mul, rank, rank_factorization, skew_factorization, Matrix};
use crate::poly::{eval_monomial, MatrixKind, Monomial, Polynomial, VariableMatrix};

/// Integer range for sampled rational entries.
pub const RATIONAL_SAMPLE_BOUND: i64 = 10_000;

/// Deterministic generator for `(seed, stream)`; independent streams
/// never overlap.
pub fn seeded_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

pub fn random_matrix<F: Field, R: Rng + ?Sized>(field: &F, rows: usize, cols: usize, rng: &mut R) -> Matrix<F::Elem> {
    Matrix::from_fn(rows, cols, |_, _| field.random_elem(rng, RATIONAL_SAMPLE_BOUND))
}

/// `B` and `C` with `B * C` (or `B * C - (B * C)^T` when skew) of rank at
/// most the inner dimension (twice it when skew).
#[derive(Clone, Debug, PartialEq)]
pub struct RankFactorization<E> {
    pub b: Matrix<E>,
    pub c: Matrix<E>,
    pub skew: bool,
}

impl<E: Clone + PartialEq> RankFactorization<E> {
    pub fn inner_rank(&self) -> usize {
        if self.skew {
            2 * self.b.cols()
        } else {
            self.b.cols()
        }
    }

    pub fn product<F: Field<Elem = E>>(&self, field: &F) -> Matrix<E> {
        let bc = mat_mul(field, &self.b, &self.c).expect("conforming factors");
        if self.skew {
            let t = bc.transpose();
            Matrix::from_fn(bc.rows(), bc.cols(), |i, j| field.sub(bc.get(i, j), t.get(i, j)))
        } else {
            bc
        }
    }
}

pub fn random_rank_factorization<F: Field, R: Rng + ?Sized>(
    field: &F,
    m: usize,
    n: usize,
    r: usize,
    rng: &mut R,
) -> Result<RankFactorization<F::Elem>> {
    if r > m.min(n) {
        return Err(Error::OutOfRange(format!("rank {r} exceeds min({m}, {n})")));
    }
    Ok(RankFactorization { b: random_matrix(field, m, r, rng), c: random_matrix(field, r, n, rng), skew: false })
}

/// `B * C` for random `B` (m x r) and `C` (r x n).
pub fn random_rank_matrix<F: Field, R: Rng + ?Sized>(
    field: &F,
    m: usize,
    n: usize,
    r: usize,
    rng: &mut R,
) -> Result<Matrix<F::Elem>> {
    Ok(random_rank_factorization(field, m, n, r, rng)?.product(field))
}

/// `B * C - C^T * B^T` for random `B` (m x r/2) and `C` (r/2 x m).
pub fn random_skew_rank_matrix<F: Field, R: Rng + ?Sized>(
    field: &F,
    m: usize,
    r: usize,
    rng: &mut R,
) -> Result<Matrix<F::Elem>> {
    if r % 2 == 1 {
        return Err(Error::OutOfRange(format!("skew-symmetric rank {r} must be even")));
    }
    if r > m {
        return Err(Error::OutOfRange(format!("rank {r} exceeds size {m}")));
    }
    let s = r / 2;
    let f = RankFactorization { b: random_matrix(field, m, s, rng), c: random_matrix(field, s, m, rng), skew: true };
    Ok(f.product(field))
}

/// `B * diag(d) * B^T` for random `B` (m x r) and `d`.
pub fn random_symmetric_rank_matrix<F: Field, R: Rng + ?Sized>(
    field: &F,
    m: usize,
    r: usize,
    rng: &mut R,
) -> Result<Matrix<F::Elem>> {
    if r > m {
        return Err(Error::OutOfRange(format!("rank {r} exceeds size {m}")));
    }
    let b = random_matrix(field, m, r, rng);
    let d: Vec<F::Elem> = (0..r).map(|_| field.random_elem(rng, RATIONAL_SAMPLE_BOUND)).collect();
    let bd = Matrix::from_fn(m, r, |i, k| field.mul(b.get(i, k), &d[k]));
    mat_mul(field, &bd, &b.transpose())
}

fn pad_cols<E: Clone>(m: &Matrix<E>, cols: usize, zero: &E) -> Matrix<E> {
    Matrix::from_fn(m.rows(), cols, |i, j| if j < m.cols() { m.get(i, j).clone() } else { zero.clone() })
}

fn pad_rows<E: Clone>(m: &Matrix<E>, rows: usize, zero: &E) -> Matrix<E> {
    Matrix::from_fn(rows, m.cols(), |i, j| if i < m.rows() { m.get(i, j).clone() } else { zero.clone() })
}

/// A matrix of rank at most `r` whose diagonal blocks are the given blocks:
/// factor each block as `B_i C_i` and stack the factors.
pub fn complete_block_diagonal<F: Field>(field: &F, blocks: &[Matrix<F::Elem>], r: usize) -> Result<Matrix<F::Elem>> {
    let zero = field.zero();
    let mut bs = Vec::with_capacity(blocks.len());
    let mut cs = Vec::with_capacity(blocks.len());
    for (i, a) in blocks.iter().enumerate() {
        let (b, c) = rank_factorization(field, a);
        if b.cols() > r {
            return Err(Error::OutOfRange(format!("block {i} has rank {} > {r}", b.cols())));
        }
        bs.push(pad_cols(&b, r, &zero));
        cs.push(pad_rows(&c, r, &zero));
    }
    if blocks.is_empty() {
        return Ok(Matrix::filled(0, 0, zero));
    }
    mat_mul(field, &Matrix::vstack(&bs)?, &Matrix::hstack(&cs)?)
}

/// Skew analogue of [`complete_block_diagonal`]: each block is written as
/// `B_i C_i - C_i^T B_i^T` and the factors are stacked.
pub fn complete_block_diagonal_skew<F: Field>(
    field: &F,
    blocks: &[Matrix<F::Elem>],
    r: usize,
) -> Result<Matrix<F::Elem>> {
    if r % 2 == 1 {
        return Err(Error::OutOfRange(format!("skew-symmetric rank {r} must be even")));
    }
    let s = r / 2;
    let zero = field.zero();
    let mut bs = Vec::with_capacity(blocks.len());
    let mut cs = Vec::with_capacity(blocks.len());
    for (i, a) in blocks.iter().enumerate() {
        let (b, c) = skew_factorization(field, a)?;
        if b.cols() > s {
            return Err(Error::OutOfRange(format!("block {i} has rank {} > {r}", 2 * b.cols())));
        }
        bs.push(pad_cols(&b, s, &zero));
        cs.push(pad_rows(&c, s, &zero));
    }
    if blocks.is_empty() {
        return Ok(Matrix::filled(0, 0, zero));
    }
    let f = RankFactorization { b: Matrix::vstack(&bs)?, c: Matrix::hstack(&cs)?, skew: true };
    Ok(f.product(field))
}

/// Diagonal block `k` of a block matrix with the given block sizes.
pub fn diagonal_block<E: Clone>(m: &Matrix<E>, sizes: &[usize], k: usize) -> Matrix<E> {
    let start: usize = sizes[..k].iter().sum();
    let idx: Vec<usize> = (start..start + sizes[k]).collect();
    m.submatrix(&idx, &idx)
}

/// The row space of a full-row-rank `r x n` matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Subspace<E> {
    ambient: usize,
    basis: Matrix<E>,
}

impl<E: Clone + PartialEq> Subspace<E> {
    pub fn new<F: Field<Elem = E>>(field: &F, basis: Matrix<E>) -> Result<Self> {
        if rank(field, &basis) != basis.rows() {
            return Err(Error::InvalidSpec("subspace basis is not of full row rank".into()));
        }
        Ok(Subspace { ambient: basis.cols(), basis })
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &Matrix<E> {
        &self.basis
    }

    /// Whether every `r x r` minor of the basis is nonzero, i.e. any `r`
    /// coordinates are independent on the subspace.
    pub fn is_general<F: Field<Elem = E>>(&self, field: &F) -> bool {
        let r = self.dim();
        let rows: Vec<usize> = (0..r).collect();
        IndexSet::subsets(self.ambient, r).iter().all(|cols| {
            let idx: Vec<usize> = cols.as_slice().iter().map(|c| c - 1).collect();
            !field.is_zero(&determinant(field, &self.basis.submatrix(&rows, &idx)).expect("square"))
        })
    }

    /// Coefficient vectors of a basis of the linear forms vanishing on the
    /// subspace.
    pub fn annihilator<F: Field<Elem = E>>(&self, field: &F) -> Vec<Vec<E>> {
        if self.dim() == 0 {
            return (0..self.ambient)
                .map(|i| (0..self.ambient).map(|j| if i == j { field.one() } else { field.zero() }).collect())
                .collect();
        }
        kernel(field, &self.basis)
    }

    pub fn vanishing_linear_forms<F: Field<Elem = E>>(&self, field: &F) -> Vec<Polynomial<F>> {
        self.annihilator(field)
            .into_iter()
            .map(|c| Polynomial::from_terms(field, self.ambient, c.into_iter().enumerate().map(|(j, a)| (a, Monomial::var(j)))))
            .collect()
    }

    pub fn random_point<F: Field<Elem = E>, R: Rng + ?Sized>(&self, field: &F, rng: &mut R) -> Vec<E> {
        let mut p = vec![field.zero(); self.ambient];
        for i in 0..self.dim() {
            let c = field.random_elem(rng, RATIONAL_SAMPLE_BOUND);
            for (j, v) in self.basis.row(i).iter().enumerate() {
                p[j] = field.add(&p[j], &field.mul(&c, v));
            }
        }
        p
    }

    pub fn map<T: Clone + PartialEq>(&self, f: impl FnMut(&E) -> T) -> Subspace<T> {
        Subspace { ambient: self.ambient, basis: self.basis.map(f) }
    }
}

/// Attempts allowed when drawing a general subspace.
pub const SUBSPACE_RESAMPLE_CAP: usize = 100;

/// A random `r`-dimensional subspace of `K^n` in which every `r` coordinates
/// are linearly independent.
pub fn random_subspace<F: Field, R: Rng + ?Sized>(field: &F, n: usize, r: usize, rng: &mut R) -> Result<Subspace<F::Elem>> {
    if r > n {
        return Err(Error::OutOfRange(format!("dimension {r} exceeds ambient {n}")));
    }
    if r == n {
        return Subspace::new(field, Matrix::identity(field, n));
    }
    for _ in 0..SUBSPACE_RESAMPLE_CAP {
        let basis = random_matrix(field, r, n, rng);
        if rank(field, &basis) != r {
            continue;
        }
        let s = Subspace { ambient: n, basis };
        if s.is_general(field) {
            return Ok(s);
        }
    }
    Err(Error::DegenerateSubspace(SUBSPACE_RESAMPLE_CAP))
}

/// Values of the variables of `x` at the matrix `a`.
pub fn matrix_point<E: Clone>(x: &VariableMatrix, a: &Matrix<E>) -> Vec<E> {
    (0..x.nvars())
        .map(|v| {
            let (i, j) = x.position(v);
            a.get(i, j).clone()
        })
        .collect()
}

/// Where sample points come from.
#[derive(Clone, Debug, PartialEq)]
pub enum SampleSource<E> {
    /// Matrices of rank at most `r` in the given layout.
    Rank { matrix: VariableMatrix, r: usize },
    /// Points of a linear subspace.
    Subspace(Subspace<E>),
}

impl<E: Clone + PartialEq> SampleSource<E> {
    pub fn nvars(&self) -> usize {
        match self {
            SampleSource::Rank { matrix, .. } => matrix.nvars(),
            SampleSource::Subspace(s) => s.ambient(),
        }
    }

    pub fn point<F: Field<Elem = E>, R: Rng + ?Sized>(&self, field: &F, rng: &mut R) -> Result<Vec<E>> {
        match self {
            SampleSource::Rank { matrix, r } => {
                let a = match matrix.kind {
                    MatrixKind::Generic => random_rank_matrix(field, matrix.m, matrix.n, *r, rng)?,
                    MatrixKind::Skew => random_skew_rank_matrix(field, matrix.n, *r - *r % 2, rng)?,
                    MatrixKind::Symmetric => random_symmetric_rank_matrix(field, matrix.n, *r, rng)?,
                };
                Ok(matrix_point(matrix, &a))
            }
            SampleSource::Subspace(s) => Ok(s.random_point(field, rng)),
        }
    }

    pub fn map<T: Clone + PartialEq>(&self, f: impl FnMut(&E) -> T) -> SampleSource<T> {
        match self {
            SampleSource::Rank { matrix, r } => SampleSource::Rank { matrix: *matrix, r: *r },
            SampleSource::Subspace(s) => SampleSource::Subspace(s.map(f)),
        }
    }
}

/// `false` as soon as `f` is nonzero at a sample point (certain); `true`
/// if all `trials` points vanish.
pub fn vanishes_probabilistic<F: Field, R: Rng + ?Sized>(
    f: &Polynomial<F>,
    source: &SampleSource<F::Elem>,
    trials: usize,
    rng: &mut R,
) -> Result<bool> {
    let field = f.field();
    for _ in 0..trials {
        let p = source.point(field, rng)?;
        if !field.is_zero(&f.evaluate(&p)?) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Entry `(i, j)` is monomial `j` at point `i`.
pub fn evaluation_matrix<F: Field>(field: &F, support: &[Monomial], points: &[Vec<F::Elem>]) -> Result<Matrix<F::Elem>> {
    let bound = support.iter().map(|m| m.var_bound()).max().unwrap_or(0);
    for p in points {
        if p.len() < bound {
            return Err(Error::DimensionMismatch { expected: bound, got: p.len() });
        }
    }
    Ok(Matrix::from_fn(points.len(), support.len(), |i, j| eval_monomial(field, &support[j], &points[i])))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::ideal::{minor, pfaffian, IdealSpec};
    use crate::linalg::is_skew;
    use proptest::prelude::*;

    fn fp() -> PrimeField {
        PrimeField::new(32003).unwrap()
    }

    #[test]
    fn rank_samples() {
        let f = fp();
        let mut rng = seeded_rng(1, 0);
        assert!(random_rank_matrix(&f, 3, 3, 0, &mut rng).unwrap().row_vecs().iter().flatten().all(|&x| x == 0));
        assert!(random_rank_matrix(&f, 3, 3, 4, &mut rng).is_err());
        let mut deficient = 0;
        for _ in 0..1000 {
            let a = random_rank_matrix(&f, 3, 3, 3, &mut rng).unwrap();
            if rank(&f, &a) < 3 {
                deficient += 1;
            }
        }
        // expected about 1000 * 3/32003 < 1
        assert!(deficient <= 3, "{deficient}");
    }

    #[test]
    fn rank_samples_kill_minors() {
        let f = Rationals;
        let spec = IdealSpec::minors(&f, VariableMatrix::generic(3, 4), 3).unwrap();
        let source = SampleSource::Rank { matrix: VariableMatrix::generic(3, 4), r: 2 };
        let mut rng = seeded_rng(2, 0);
        for g in spec.generators() {
            assert!(vanishes_probabilistic(&g, &source, 20, &mut rng).unwrap());
        }
        assert!(!vanishes_probabilistic(&Polynomial::var(&f, 12, 0), &source, 5, &mut rng).unwrap());
    }

    #[test]
    fn sparse_polynomial_does_not_vanish() {
        // five of the six terms of the determinant
        let f = fp();
        let x = VariableMatrix::generic(3, 3);
        let det = minor(&f, &x, &IndexSet::range(3), &IndexSet::range(3)).unwrap();
        let five = Polynomial::from_terms(&f, 9, det.terms().iter().skip(1).map(|t| (t.coeff, t.monomial.clone())));
        let source = SampleSource::Rank { matrix: x, r: 2 };
        assert!(!vanishes_probabilistic(&five, &source, 10, &mut seeded_rng(3, 0)).unwrap());
    }

    #[test]
    fn skew_samples() {
        let f = fp();
        let mut rng = seeded_rng(4, 0);
        assert!(random_skew_rank_matrix(&f, 4, 3, &mut rng).is_err());
        let x = VariableMatrix::skew(4);
        let pf = pfaffian(&f, &x, &IndexSet::range(4)).unwrap();
        for _ in 0..50 {
            let a = random_skew_rank_matrix(&f, 4, 2, &mut rng).unwrap();
            assert!(is_skew(&f, &a));
            assert_eq!(rank(&f, &a) % 2, 0);
            assert_eq!(pf.evaluate(&matrix_point(&x, &a)).unwrap(), 0);
        }
        let z = random_skew_rank_matrix(&f, 4, 0, &mut rng).unwrap();
        assert_eq!(rank(&f, &z), 0);
    }

    #[test]
    fn symmetric_samples() {
        let f = fp();
        let mut rng = seeded_rng(5, 0);
        let x = VariableMatrix::symmetric(3);
        let det = minor(&f, &x, &IndexSet::range(3), &IndexSet::range(3)).unwrap();
        for _ in 0..20 {
            let a = random_symmetric_rank_matrix(&f, 3, 2, &mut rng).unwrap();
            assert_eq!(a, a.transpose());
            assert_eq!(det.evaluate(&matrix_point(&x, &a)).unwrap(), 0);
        }
    }

    #[test]
    fn block_completion() {
        let f = fp();
        let mut rng = seeded_rng(6, 0);
        let blocks: Vec<_> = (0..2).map(|_| random_rank_matrix(&f, 2, 2, 1, &mut rng).unwrap()).collect();
        let a = complete_block_diagonal(&f, &blocks, 1).unwrap();
        assert!(rank(&f, &a) <= 1);
        for k in 0..2 {
            assert_eq!(diagonal_block(&a, &[2, 2], k), blocks[k]);
        }
        let single = complete_block_diagonal(&f, &blocks[..1], 1).unwrap();
        assert_eq!(single, blocks[0]);
        let full = random_rank_matrix(&f, 2, 2, 2, &mut rng).unwrap();
        assert!(complete_block_diagonal(&f, &[full], 1).is_err());
    }

    #[test]
    fn skew_block_completion() {
        let f = fp();
        let mut rng = seeded_rng(7, 0);
        let zero = Matrix::zeros(&f, 3, 3);
        let z = complete_block_diagonal_skew(&f, &[zero.clone(), zero], 2).unwrap();
        assert_eq!(rank(&f, &z), 0);
        let blocks: Vec<_> = (0..2).map(|_| random_skew_rank_matrix(&f, 4, 2, &mut rng).unwrap()).collect();
        let a = complete_block_diagonal_skew(&f, &blocks, 2).unwrap();
        assert!(is_skew(&f, &a));
        assert!(rank(&f, &a) <= 2);
        assert_eq!(diagonal_block(&a, &[4, 4], 1), blocks[1]);
    }

    #[test]
    fn subspaces() {
        let f = fp();
        let mut rng = seeded_rng(8, 0);
        let s = random_subspace(&f, 4, 2, &mut rng).unwrap();
        assert!(s.is_general(&f));
        assert_eq!(s.annihilator(&f).len(), 2);
        let full = random_subspace(&f, 3, 3, &mut rng).unwrap();
        assert_eq!(full.basis(), &Matrix::identity(&f, 3));
        let zero = random_subspace(&f, 3, 0, &mut rng).unwrap();
        assert_eq!(zero.dim(), 0);
        assert_eq!(zero.annihilator(&f).len(), 3);
        // F_2^2 has only three lines; four coordinates cannot all be independent
        let f2 = PrimeField::new(2).unwrap();
        assert!(matches!(random_subspace(&f2, 4, 2, &mut rng), Err(Error::DegenerateSubspace(_))));
        for l in s.vanishing_linear_forms(&f) {
            for _ in 0..5 {
                assert_eq!(l.evaluate(&s.random_point(&f, &mut rng)).unwrap(), 0);
            }
        }
    }

    #[test]
    fn evaluation_kernels() {
        let f = fp();
        let mut rng = seeded_rng(9, 0);
        let x = VariableMatrix::generic(3, 3);
        let det = minor(&f, &x, &IndexSet::range(3), &IndexSet::range(3)).unwrap();
        let support: Vec<Monomial> = det.monomials().cloned().collect();
        let source = SampleSource::Rank { matrix: x, r: 2 };
        let points: Vec<Vec<u32>> = (0..20).map(|_| source.point(&f, &mut rng).unwrap()).collect();
        let ev = evaluation_matrix(&f, &support, &points).unwrap();
        let ker = kernel(&f, &ev);
        assert_eq!(ker.len(), 1);
        let from_kernel = Polynomial::from_coefficients(&f, 9, &support, &ker[0]);
        assert_eq!(from_kernel.monic(), det.monic());

        let constant = evaluation_matrix(&f, &[Monomial::one()], &points).unwrap();
        assert!(constant.row_vecs().iter().all(|r| r == &vec![1]));

        let generic = SampleSource::Rank { matrix: x, r: 3 };
        let points: Vec<Vec<u32>> = (0..20).map(|_| generic.point(&f, &mut rng).unwrap()).collect();
        assert!(kernel(&f, &evaluation_matrix(&f, &support, &points).unwrap()).is_empty());
        assert!(evaluation_matrix(&f, &support, &[vec![1, 2]]).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn sampled_ranks_are_bounded(seed in any::<u64>(), m in 1usize..5, n in 1usize..5, r in 0usize..4) {
            let f = fp();
            let r = r.min(m.min(n));
            let mut rng = seeded_rng(seed, 0);
            prop_assert!(rank(&f, &random_rank_matrix(&f, m, n, r, &mut rng).unwrap()) <= r);
            let s = 2 * (r / 2);
            if s <= m {
                prop_assert!(rank(&f, &random_skew_rank_matrix(&f, m, s, &mut rng).unwrap()) <= s);
            }
        }

        #[test]
        fn general_subspaces_have_no_short_vanishing_forms(seed in any::<u64>(), n in 2usize..6, r in 1usize..4) {
            let f = fp();
            let r = r.min(n - 1);
            let mut rng = seeded_rng(seed, 0);
            let s = random_subspace(&f, n, r, &mut rng).unwrap();
            // a linear form supported on at most r coordinates vanishes on U only if it is 0
            for size in 1..=r {
                for cols in IndexSet::subsets(n, size) {
                    let idx: Vec<usize> = cols.as_slice().iter().map(|c| c - 1).collect();
                    let sub = s.basis().select_cols(&idx);
                    prop_assert!(kernel(&f, &sub).is_empty());
                }
            }
        }
    }
}
