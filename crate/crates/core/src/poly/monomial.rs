use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A monomial as a sparse exponent map: `(variable, exponent)` pairs
/// sorted by variable, exponents positive.
///
/// The `Ord` impl is the canonical storage order: graded reverse
/// lexicographic with `x_0 > x_1 > ...`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    exps: Vec<(u32, u32)>,
    degree: u32,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn var(v: usize) -> Self {
        Monomial { exps: vec![(v as u32, 1)], degree: 1 }
    }

    pub fn var_pow(v: usize, e: u32) -> Self {
        if e == 0 {
            Monomial::one()
        } else {
            Monomial { exps: vec![(v as u32, e)], degree: e }
        }
    }

    /// From a dense exponent vector.
    pub fn from_exponents(exps: &[u32]) -> Self {
        let exps: Vec<(u32, u32)> =
            exps.iter().enumerate().filter(|(_, &e)| e > 0).map(|(v, &e)| (v as u32, e)).collect();
        let degree = exps.iter().map(|&(_, e)| e).sum();
        Monomial { exps, degree }
    }

    /// From unsorted `(variable, exponent)` pairs; repeated variables add up.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, u32)>) -> Self {
        let mut v: Vec<(u32, u32)> =
            pairs.into_iter().filter(|&(_, e)| e > 0).map(|(x, e)| (x as u32, e)).collect();
        v.sort_unstable();
        let mut exps: Vec<(u32, u32)> = Vec::with_capacity(v.len());
        for (x, e) in v {
            match exps.last_mut() {
                Some(last) if last.0 == x => last.1 += e,
                _ => exps.push((x, e)),
            }
        }
        let degree = exps.iter().map(|&(_, e)| e).sum();
        Monomial { exps, degree }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn exponent(&self, v: usize) -> u32 {
        self.exps
            .binary_search_by_key(&(v as u32), |&(x, _)| x)
            .map(|i| self.exps[i].1)
            .unwrap_or(0)
    }

    /// `(variable, exponent)` pairs in increasing variable order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.exps.iter().map(|&(v, e)| (v as usize, e))
    }

    pub fn support_len(&self) -> usize {
        self.exps.len()
    }

    /// One past the largest variable index present.
    pub fn var_bound(&self) -> usize {
        self.exps.last().map_or(0, |&(v, _)| v as usize + 1)
    }

    pub fn to_dense(&self, nvars: usize) -> Vec<u32> {
        let mut d = vec![0; nvars];
        for &(v, e) in &self.exps {
            d[v as usize] = e;
        }
        d
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut exps = Vec::with_capacity(self.exps.len() + other.exps.len());
        let (mut i, mut j) = (0, 0);
        while i < self.exps.len() && j < other.exps.len() {
            let (a, b) = (self.exps[i], other.exps[j]);
            match a.0.cmp(&b.0) {
                Ordering::Less => {
                    exps.push(a);
                    i += 1;
                }
                Ordering::Greater => {
                    exps.push(b);
                    j += 1;
                }
                Ordering::Equal => {
                    exps.push((a.0, a.1 + b.1));
                    i += 1;
                    j += 1;
                }
            }
        }
        exps.extend_from_slice(&self.exps[i..]);
        exps.extend_from_slice(&other.exps[j..]);
        Monomial { exps, degree: self.degree + other.degree }
    }

    pub fn pow(&self, k: u32) -> Monomial {
        if k == 0 {
            return Monomial::one();
        }
        Monomial {
            exps: self.exps.iter().map(|&(v, e)| (v, e * k)).collect(),
            degree: self.degree * k,
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        if self.degree > other.degree {
            return false;
        }
        let mut j = 0;
        for &(v, e) in &self.exps {
            while j < other.exps.len() && other.exps[j].0 < v {
                j += 1;
            }
            if j == other.exps.len() || other.exps[j].0 != v || other.exps[j].1 < e {
                return false;
            }
        }
        true
    }

    /// `self / other` if `other` divides `self`.
    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        let pairs = self.exps.iter().map(|&(v, e)| (v as usize, e - other.exponent(v as usize)));
        Some(Monomial::from_pairs(pairs))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        self.merge_with(other, u32::max)
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        self.merge_with(other, u32::min)
    }

    fn merge_with(&self, other: &Monomial, op: fn(u32, u32) -> u32) -> Monomial {
        let bound = self.var_bound().max(other.var_bound());
        let pairs = (0..bound).map(|v| (v, op(self.exponent(v), other.exponent(v))));
        Monomial::from_pairs(pairs)
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        let (mut i, mut j) = (0, 0);
        while i < self.exps.len() && j < other.exps.len() {
            match self.exps[i].0.cmp(&other.exps[j].0) {
                Ordering::Less => i += 1,
                Ordering::Greater => j += 1,
                Ordering::Equal => return false,
            }
        }
        true
    }

    /// Relabels variables through `map`, which must be injective on the
    /// variables present.
    pub fn rename(&self, map: impl Fn(usize) -> usize) -> Monomial {
        Monomial::from_pairs(self.iter().map(|(v, e)| (map(v), e)))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        grevlex_natural(self, other)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .exps
            .iter()
            .map(|&(v, e)| if e == 1 { format!("x{v}") } else { format!("x{v}^{e}") })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

fn grevlex_natural(a: &Monomial, b: &Monomial) -> Ordering {
    if a.degree != b.degree {
        return a.degree.cmp(&b.degree);
    }
    let (mut i, mut j) = (a.exps.len(), b.exps.len());
    while i > 0 && j > 0 {
        let (va, ea) = a.exps[i - 1];
        let (vb, eb) = b.exps[j - 1];
        match va.cmp(&vb) {
            // the monomial carrying the later variable is smaller
            Ordering::Greater => return Ordering::Less,
            Ordering::Less => return Ordering::Greater,
            Ordering::Equal => {
                if ea != eb {
                    return eb.cmp(&ea);
                }
                i -= 1;
                j -= 1;
            }
        }
    }
    Ordering::Equal
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OrderKind {
    Lex,
    Grevlex,
}

/// A monomial order given by a kind and a variable priority list
/// (position 0 is the most significant variable).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialOrder {
    kind: OrderKind,
    priority: Vec<usize>,
    rank: Vec<usize>,
    natural: bool,
}

impl MonomialOrder {
    pub fn new(kind: OrderKind, priority: Vec<usize>) -> Result<Self> {
        let n = priority.len();
        let mut rank = vec![usize::MAX; n];
        for (pos, &v) in priority.iter().enumerate() {
            if v >= n || rank[v] != usize::MAX {
                return Err(Error::OutOfRange(format!(
                    "variable priority is not a permutation of 0..{n}"
                )));
            }
            rank[v] = pos;
        }
        let natural = priority.iter().enumerate().all(|(i, &v)| i == v);
        Ok(MonomialOrder { kind, priority, rank, natural })
    }

    pub fn grevlex(nvars: usize) -> Self {
        Self::new(OrderKind::Grevlex, (0..nvars).collect()).expect("identity permutation")
    }

    pub fn lex(nvars: usize) -> Self {
        Self::new(OrderKind::Lex, (0..nvars).collect()).expect("identity permutation")
    }

    /// Lex order on an `m x n` generic matrix with
    /// `x_{1,n} > x_{1,n-1} > ... > x_{1,1} > x_{2,n} > ... > x_{m,1}`;
    /// leading terms of minors are anti-diagonal products.
    pub fn matrix_lex(m: usize, n: usize) -> Self {
        let priority = (0..m).flat_map(|i| (0..n).rev().map(move |j| i * n + j)).collect();
        Self::new(OrderKind::Lex, priority).expect("permutation")
    }

    /// Lex order on the strictly upper entries of an `n x n` skew matrix with
    /// `x_{1,n} > ... > x_{1,2} > x_{2,n} > ... > x_{2,3} > ... > x_{n-1,n}`.
    pub fn skew_lex(n: usize) -> Self {
        let index = |i: usize, j: usize| i * (n - 1) - i * (i + 1) / 2 + (j - 1);
        let priority =
            (0..n).flat_map(|i| (i + 1..n).rev().map(move |j| index(i, j))).collect();
        Self::new(OrderKind::Lex, priority).expect("permutation")
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn priority(&self) -> &[usize] {
        &self.priority
    }

    pub fn nvars(&self) -> usize {
        self.priority.len()
    }

    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match (self.kind, self.natural) {
            (OrderKind::Grevlex, true) => grevlex_natural(a, b),
            (OrderKind::Lex, true) => lex_ranked(a.exps.iter().copied(), b.exps.iter().copied()),
            (kind, false) => {
                let ra = self.ranked(a);
                let rb = self.ranked(b);
                match kind {
                    OrderKind::Lex => lex_ranked(ra.into_iter(), rb.into_iter()),
                    OrderKind::Grevlex => {
                        let ma = Monomial { exps: ra, degree: a.degree };
                        let mb = Monomial { exps: rb, degree: b.degree };
                        grevlex_natural(&ma, &mb)
                    }
                }
            }
        }
    }

    fn ranked(&self, m: &Monomial) -> Vec<(u32, u32)> {
        let mut v: Vec<(u32, u32)> =
            m.exps.iter().map(|&(x, e)| (self.rank[x as usize] as u32, e)).collect();
        v.sort_unstable();
        v
    }
}

/// Lex comparison of rank-sorted exponent lists.
fn lex_ranked(
    mut a: impl Iterator<Item = (u32, u32)>,
    mut b: impl Iterator<Item = (u32, u32)>,
) -> Ordering {
    loop {
        match (a.next(), b.next()) {
            (None, None) => return Ordering::Equal,
            (Some(_), None) => return Ordering::Greater,
            (None, Some(_)) => return Ordering::Less,
            (Some((va, ea)), Some((vb, eb))) => {
                if va != vb {
                    // the earlier (more significant) variable is present in one only
                    return vb.cmp(&va);
                }
                if ea != eb {
                    return ea.cmp(&eb);
                }
            }
        }
    }
}

/// All monomials of degree `d` in `nvars` variables, in decreasing
/// canonical (grevlex) order.
pub fn monomials_of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; nvars];
    fn rec(v: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if v + 1 == cur.len() {
            cur[v] = left;
            out.push(Monomial::from_exponents(cur));
            cur[v] = 0;
            return;
        }
        for e in 0..=left {
            cur[v] = e;
            rec(v + 1, left - e, cur, out);
        }
        cur[v] = 0;
    }
    if nvars == 0 {
        if d == 0 {
            out.push(Monomial::one());
        }
        return out;
    }
    rec(0, d, &mut cur, &mut out);
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e)
    }

    #[test]
    fn grevlex_chain_in_three_variables() {
        let got = monomials_of_degree(3, 2);
        let want = vec![m(&[2, 0, 0]), m(&[1, 1, 0]), m(&[0, 2, 0]), m(&[1, 0, 1]), m(&[0, 1, 1]), m(&[0, 0, 2])];
        assert_eq!(got, want);
        let ord = MonomialOrder::grevlex(3);
        assert_eq!(ord.compare(&want[2], &want[2]), Ordering::Equal);
        for w in want.windows(2) {
            assert_eq!(ord.compare(&w[0], &w[1]), Ordering::Greater);
        }
    }

    #[test]
    fn matrix_lex_two_by_two() {
        // x11=0, x12=1, x21=2, x22=3
        let ord = MonomialOrder::matrix_lex(2, 2);
        assert_eq!(ord.priority(), &[1, 0, 3, 2]);
        let vars: Vec<Monomial> = [1, 0, 3, 2].iter().map(|&v| Monomial::var(v)).collect();
        for w in vars.windows(2) {
            assert_eq!(ord.compare(&w[0], &w[1]), Ordering::Greater);
        }
    }

    #[test]
    fn skew_lex_priority() {
        // n=4 upper entries: 12,13,14,23,24,34 -> indices 0..6
        let ord = MonomialOrder::skew_lex(4);
        assert_eq!(ord.priority(), &[2, 1, 0, 4, 3, 5]);
    }

    #[test]
    fn divisibility_and_lcm() {
        let a = m(&[1, 2, 0]);
        let b = m(&[2, 1, 1]);
        assert!(!a.divides(&b));
        assert_eq!(a.lcm(&b), m(&[2, 2, 1]));
        assert_eq!(a.gcd(&b), m(&[1, 1, 0]));
        assert_eq!(b.checked_div(&m(&[1, 1, 0])), Some(m(&[1, 0, 1])));
        assert!(!a.is_coprime(&b));
        assert!(m(&[1, 0, 0]).is_coprime(&m(&[0, 3, 1])));
    }

    #[test]
    fn bad_priority_rejected() {
        assert!(MonomialOrder::new(OrderKind::Lex, vec![0, 0]).is_err());
    }

    fn arb_monomial() -> impl Strategy<Value = Monomial> {
        proptest::collection::vec(0u32..3, 4).prop_map(|e| Monomial::from_exponents(&e))
    }

    fn arb_order() -> impl Strategy<Value = MonomialOrder> {
        (any::<bool>(), Just((0..4usize).collect::<Vec<_>>()).prop_shuffle()).prop_map(|(lex, p)| {
            MonomialOrder::new(if lex { OrderKind::Lex } else { OrderKind::Grevlex }, p).unwrap()
        })
    }

    proptest! {
        #[test]
        fn orders_are_strict_total(ord in arb_order(), a in arb_monomial(), b in arb_monomial(), c in arb_monomial()) {
            let ab = ord.compare(&a, &b);
            prop_assert_eq!(ab, ord.compare(&b, &a).reverse());
            prop_assert_eq!(ab == Ordering::Equal, a == b);
            if ab == Ordering::Greater && ord.compare(&b, &c) == Ordering::Greater {
                prop_assert_eq!(ord.compare(&a, &c), Ordering::Greater);
            }
            // multiplicative
            prop_assert_eq!(ord.compare(&a.mul(&c), &b.mul(&c)), ab);
        }
    }
}
