//! Generic initial spaces, Borel-fixed monomial spaces and the six-permutation lemma.

use std::collections::BTreeSet;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::ideal::IndexSet;
use crate::linalg::{determinant, rref, Matrix};
use crate::poly::{monomials_of_degree, Monomial, Polynomial, VarLayout};
use crate::sampler::{random_matrix, seeded_rng};

/// Integer range of random base changes over ℚ.
pub const RATIONAL_GL_BOUND: i64 = 1000;

pub const DEFAULT_CONFIRMATIONS: usize = 3;

/// A nonempty set of monomials of one degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialSpace {
    degree: u32,
    monomials: BTreeSet<Monomial>,
}

impl MonomialSpace {
    pub fn new(monomials: impl IntoIterator<Item = Monomial>) -> Result<Self> {
        let monomials: BTreeSet<Monomial> = monomials.into_iter().collect();
        let Some(first) = monomials.iter().next() else {
            return Err(Error::InvalidSpec("empty monomial space".into()));
        };
        let degree = first.degree();
        if monomials.iter().any(|m| m.degree() != degree) {
            return Err(Error::InvalidSpec("monomial space mixes degrees".into()));
        }
        Ok(MonomialSpace { degree, monomials })
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.monomials.contains(m)
    }

    /// Monomials in decreasing grevlex order.
    pub fn monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.monomials.iter().rev()
    }

    pub fn to_text(&self, nvars: usize) -> Vec<String> {
        let layout = VarLayout::Plain(nvars);
        let q = crate::field::Rationals;
        self.monomials()
            .map(|m| Polynomial::monomial(&q, nvars, num_rational::BigRational::from_integer(1.into()), m.clone()).to_text(&layout))
            .collect()
    }
}

/// Leading monomials (grevlex, `x_1 > ... > x_n`) of the span of `polys`,
/// which must all be homogeneous of degree `d`.
pub fn initial_space<F: Field>(field: &F, nvars: usize, d: u32, polys: &[Polynomial<F>]) -> Result<MonomialSpace> {
    let monos = monomials_of_degree(nvars, d);
    let index: std::collections::HashMap<&Monomial, usize> = monos.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut mat = Matrix::filled(polys.len(), monos.len(), field.zero());
    for (r, p) in polys.iter().enumerate() {
        for t in p.terms() {
            let c = *index.get(&t.monomial).ok_or(Error::NonHomogeneous)?;
            mat.set(r, c, t.coeff.clone());
        }
    }
    let pivots = rref(field, &mut mat);
    MonomialSpace::new(pivots.into_iter().map(|c| monos[c].clone()))
}

fn check_space<F: Field>(v: &[Polynomial<F>]) -> Result<(usize, u32)> {
    let Some(first) = v.iter().find(|p| !p.is_zero()) else {
        return Err(Error::ZeroPolynomial);
    };
    let d = first.degree().expect("nonzero");
    if v.iter().any(|p| !p.is_zero() && (!p.is_homogeneous() || p.degree() != Some(d))) {
        return Err(Error::NonHomogeneous);
    }
    Ok((first.nvars(), d))
}

fn random_invertible<F: Field, R: Rng + ?Sized>(field: &F, n: usize, rng: &mut R) -> Matrix<F::Elem> {
    loop {
        let g = random_matrix(field, n, n, rng);
        if !field.is_zero(&determinant(field, &g).expect("square")) {
            return g;
        }
    }
}

/// `gin(V)`: the initial space of `gV` for a random `g` in `GL_n` over a
/// large field of the same characteristic, recomputed for `confirmations`
/// independent draws that must all agree.
pub fn generic_initial_space<F: Field>(v: &[Polynomial<F>], seed: u64, confirmations: usize) -> Result<MonomialSpace> {
    let (n, d) = check_space(v)?;
    let field = v[0].field();
    let ext = field.generic_extension();
    let lifted: Vec<Polynomial<F::Ext>> = v.iter().map(|p| p.to_extension(&ext)).collect();
    let mut variants: Vec<MonomialSpace> = Vec::new();
    for c in 0..confirmations.max(1) {
        let mut rng = seeded_rng(seed, 0x6713 + c as u64);
        let g = random_invertible(&ext, n, &mut rng);
        let moved = lifted.iter().map(|p| p.apply_linear_change(&g)).collect::<Result<Vec<_>>>()?;
        let w = initial_space(&ext, n, d, &moved)?;
        if !variants.contains(&w) {
            variants.push(w);
        }
    }
    if variants.len() > 1 {
        let shown: Vec<String> = variants.iter().map(|w| w.to_text(n).join(", ")).collect();
        return Err(Error::GinUnstable(format!("{} variants: [{}]", variants.len(), shown.join("] vs ["))));
    }
    Ok(variants.pop().expect("one variant"))
}

/// `p`-part of `b`: the largest power of `p` dividing it (1 when `p = 1`).
fn p_part(b: u32, p: u64) -> u32 {
    if p <= 1 {
        return 1;
    }
    let p = p as u32;
    let mut q = 1;
    while b.is_multiple_of(q * p) {
        q *= p;
    }
    q
}

/// Borel-fixedness in characteristic exponent `p`: for every `x^b` in `W`
/// and `j` with `b_j = p^e m`, `p` not dividing `m`, moving `p^e` from
/// `x_j` to any earlier `x_i` stays in `W`.
pub fn is_borel_fixed(w: &MonomialSpace, p: u64) -> bool {
    w.monomials.iter().all(|m| {
        m.iter().all(|(j, b)| {
            let q = p_part(b, p);
            let base = m.checked_div(&Monomial::var_pow(j, q)).expect("exponent present");
            (0..j).all(|i| w.contains(&base.mul(&Monomial::var_pow(i, q))))
        })
    })
}

pub fn gin_is_borel<F: Field>(v: &[Polynomial<F>], seed: u64) -> Result<bool> {
    let gin = generic_initial_space(v, seed, DEFAULT_CONFIRMATIONS)?;
    Ok(is_borel_fixed(&gin, v[0].field().char_exponent()))
}

/// A random homogeneous form of degree `d` with every monomial present.
pub fn random_form<F: Field, R: Rng + ?Sized>(field: &F, nvars: usize, d: u32, rng: &mut R) -> Polynomial<F> {
    Polynomial::from_terms(
        field,
        nvars,
        monomials_of_degree(nvars, d).into_iter().map(|m| (field.random_elem(rng, RATIONAL_GL_BOUND), m)),
    )
}

/// `V = f * <l_1^q, ..., l_s^q>` for random `f` of degree `d - q` and random
/// linear forms, `q = p^e`, together with the predicted
/// `gin(V) = x_1^(d-q) * <x_1^q, ..., x_s^q>`.
pub fn gin_lemma_instance<F: Field>(
    field: &F,
    n: usize,
    s: usize,
    d: u32,
    e: u32,
    seed: u64,
) -> Result<(Vec<Polynomial<F>>, MonomialSpace)> {
    let q = (field.char_exponent() as u32).pow(e);
    if s == 0 || s > n || q > d {
        return Err(Error::OutOfRange(format!("need 1 <= s <= n and p^e <= d, got s = {s}, n = {n}, p^e = {q}, d = {d}")));
    }
    let mut rng = seeded_rng(seed, 0x4c47);
    let (f, forms) = loop {
        let f = random_form(field, n, d - q, &mut rng);
        let forms: Vec<Polynomial<F>> = (0..s).map(|_| random_form(field, n, 1, &mut rng)).collect();
        let coeffs = Matrix::from_fn(s, n, |i, j| forms[i].coeff(&Monomial::var(j)));
        if !f.is_zero() && crate::linalg::rank(field, &coeffs) == s {
            break (f, forms);
        }
    };
    let v = forms.iter().map(|l| &f * &l.power(q)).collect();
    let lead = Monomial::var_pow(0, d - q);
    let expected = MonomialSpace::new((0..s).map(|i| lead.mul(&Monomial::var_pow(i, q))))?;
    Ok((v, expected))
}

/// A set of permutations of `0..n` (stored 0-based).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PermSubset {
    pub n: usize,
    pub perms: Vec<Vec<usize>>,
}

impl PermSubset {
    pub fn new(n: usize, mut perms: Vec<Vec<usize>>) -> Result<Self> {
        for p in &perms {
            let mut seen = vec![false; n];
            if p.len() != n || p.iter().any(|&x| x >= n || std::mem::replace(&mut seen[x], true)) {
                return Err(Error::InvalidSpec(format!("{p:?} is not a permutation of {n} points")));
            }
        }
        perms.sort();
        let len = perms.len();
        perms.dedup();
        if perms.len() != len {
            return Err(Error::InvalidSpec("repeated permutation".into()));
        }
        Ok(PermSubset { n, perms })
    }

    pub fn full(n: usize) -> Self {
        let perms = crate::ideal::permutations_with_sign(n).into_iter().map(|(p, _)| p).collect();
        PermSubset::new(n, perms).expect("distinct permutations")
    }

    /// Embeds into `S_m`, fixing the extra points.
    pub fn embed(&self, m: usize) -> Self {
        let perms = self.perms.iter().map(|p| p.iter().copied().chain(self.n..m).collect()).collect();
        PermSubset::new(m, perms).expect("embedding keeps permutations distinct")
    }
}

/// For all `I, J` of equal size, `#{pi in P : pi(I) = J}` is 0 or at least
/// 2, and 0 or exactly 2 when `|I| = |J| = 1`.
pub fn s3_predicate(p: &PermSubset) -> bool {
    let n = p.n;
    let masks: Vec<Vec<u32>> = p
        .perms
        .iter()
        .map(|pi| (0u32..1 << n).map(|i| (0..n).filter(|&b| i >> b & 1 == 1).fold(0, |acc, b| acc | 1 << pi[b])).collect())
        .collect();
    for i in 0u32..1 << n {
        let size = i.count_ones();
        for j in (0u32..1 << n).filter(|j| j.count_ones() == size) {
            let count = masks.iter().filter(|m| m[i as usize] == j).count();
            let ok = if size == 1 { count == 0 || count == 2 } else { count == 0 || count >= 2 };
            if !ok {
                return false;
            }
        }
    }
    true
}

/// Every 6-element subset of `S_n` satisfying [`s3_predicate`], for
/// `n` in `{3, 4}`.
pub fn s3_lemma_search(n: usize) -> Result<Vec<PermSubset>> {
    if !(3..=4).contains(&n) {
        return Err(Error::OutOfRange(format!("s3 search supports n = 3 or 4, got {n}")));
    }
    let all = PermSubset::full(n).perms;
    let combos = IndexSet::subsets(all.len(), 6);
    Ok(combos
        .par_iter()
        .filter_map(|c| {
            let perms = c.as_slice().iter().map(|&i| all[i - 1].clone()).collect();
            let p = PermSubset::new(n, perms).expect("distinct");
            s3_predicate(&p).then_some(p)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use proptest::prelude::*;

    fn mono(exps: &[u32]) -> Monomial {
        Monomial::from_exponents(exps)
    }

    fn space(ms: &[&[u32]]) -> MonomialSpace {
        MonomialSpace::new(ms.iter().map(|e| mono(e))).unwrap()
    }

    /// Borel closure check by brute force over all pairs `i < j` and all
    /// admissible shifts, without the `p`-part shortcut.
    fn borel_oracle(w: &MonomialSpace, p: u64) -> bool {
        w.monomials().all(|m| {
            let dense = m.to_dense(3);
            (0..3).all(|j| {
                if dense[j] == 0 {
                    return true;
                }
                let mut q = 1;
                while p > 1 && dense[j] % (q * p as u32) == 0 {
                    q *= p as u32;
                }
                (0..j).all(|i| {
                    let mut e = dense.clone();
                    e[j] -= q;
                    e[i] += q;
                    w.contains(&mono(&e))
                })
            })
        })
    }

    #[test]
    fn borel_examples() {
        assert!(is_borel_fixed(&space(&[&[2, 0], &[1, 1]]), 1));
        assert!(!is_borel_fixed(&space(&[&[1, 1], &[0, 2]]), 1));
        let squares = space(&[&[2, 0], &[0, 2]]);
        assert!(is_borel_fixed(&squares, 2));
        assert!(!is_borel_fixed(&squares, 1));
        for w in [space(&[&[2, 0, 0], &[0, 2, 0]]), space(&[&[1, 0, 1], &[2, 0, 0], &[1, 1, 0]])] {
            for p in [1, 2, 3] {
                assert_eq!(is_borel_fixed(&w, p), borel_oracle(&w, p));
            }
        }
    }

    #[test]
    fn gin_of_monomial_borel_space_is_itself() {
        let f = PrimeField::new(32003).unwrap();
        let w = space(&[&[2, 0, 0], &[1, 1, 0], &[1, 0, 1]]);
        let v: Vec<Polynomial<PrimeField>> = w.monomials().map(|m| Polynomial::monomial(&f, 3, 1, m.clone())).collect();
        assert_eq!(generic_initial_space(&v, 1, 3).unwrap(), w);
    }

    #[test]
    fn gin_of_linear_multiples() {
        let f = PrimeField::new(32003).unwrap();
        let layout = VarLayout::Plain(3);
        let v: Vec<_> = ["x(1)^2 + x(1)*x(2) + x(1)*x(3)", "x(1)*x(2) + x(2)^2 + x(2)*x(3)", "x(1)*x(3) + x(2)*x(3) + x(3)^2"]
            .iter()
            .map(|s| Polynomial::parse(&f, &layout, s).unwrap())
            .collect();
        let gins: Vec<MonomialSpace> = (0..5).map(|s| generic_initial_space(&v, s, 3).unwrap()).collect();
        assert!(gins.windows(2).all(|w| w[0] == w[1]));
        assert_eq!(gins[0], space(&[&[2, 0, 0], &[1, 1, 0], &[1, 0, 1]]));
    }

    #[test]
    fn lemma_instances() {
        let f = PrimeField::new(32003).unwrap();
        for d in 1..=3 {
            let (v, expected) = gin_lemma_instance(&f, 4, 3, d, 0, d as u64).unwrap();
            assert_eq!(generic_initial_space(&v, 7, 3).unwrap(), expected);
        }
        let f2 = PrimeField::new(2).unwrap();
        let (v, expected) = gin_lemma_instance(&f2, 4, 3, 3, 1, 5).unwrap();
        let gin = generic_initial_space(&v, 7, 3).unwrap();
        assert_eq!(gin, expected);
        assert!(is_borel_fixed(&gin, 2));
        assert!(!is_borel_fixed(&gin, 1));
    }

    #[test]
    fn non_borel_monomial_space_moves() {
        let w = space(&[&[1, 1, 0], &[0, 2, 0]]);
        let v: Vec<Polynomial<Rationals>> = w
            .monomials()
            .map(|m| Polynomial::monomial(&Rationals, 3, num_rational::BigRational::from_integer(1.into()), m.clone()))
            .collect();
        let gin = generic_initial_space(&v, 3, 3).unwrap();
        assert_ne!(gin, w);
        assert!(is_borel_fixed(&gin, 1));
        assert_eq!(gin.len(), 2);
    }

    #[test]
    fn six_permutations() {
        let found = s3_lemma_search(3).unwrap();
        assert_eq!(found, vec![PermSubset::full(3)]);
        assert!(!s3_predicate(&PermSubset::full(3).embed(4)));
        assert!(s3_lemma_search(5).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(12))]

        #[test]
        fn gin_is_borel_and_basis_independent(seed in any::<u64>(), dim in 1usize..5) {
            let f = PrimeField::new(32003).unwrap();
            let mut rng = seeded_rng(seed, 1);
            let v: Vec<_> = (0..dim).map(|_| random_form(&f, 4, 3, &mut rng)).collect();
            let gin = generic_initial_space(&v, seed, 3).unwrap();
            prop_assert_eq!(gin.len(), dim);
            prop_assert!(is_borel_fixed(&gin, 1));
            // another basis of the same space
            let mut w = v.clone();
            w[0] = &w[0] + &w[dim - 1].scale(&5);
            w.reverse();
            prop_assert_eq!(generic_initial_space(&w, seed ^ 77, 3).unwrap(), gin);
        }
    }
}
