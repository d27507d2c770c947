use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MatrixKind {
    Generic,
    Symmetric,
    Skew,
}

/// A symbolic `m x n` matrix of variables.
///
/// Variable numbering is row-major: generic `(i,j) -> i*n + j`; symmetric
/// matrices number the entries with `i <= j`, skew matrices those with
/// `i < j`, both row-major (all indices 0-based here).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VariableMatrix {
    pub kind: MatrixKind,
    pub m: usize,
    pub n: usize,
}

/// One entry of a [`VariableMatrix`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Entry {
    Zero,
    Var { var: usize, negated: bool },
}

impl VariableMatrix {
    pub fn generic(m: usize, n: usize) -> Self {
        VariableMatrix { kind: MatrixKind::Generic, m, n }
    }

    pub fn symmetric(n: usize) -> Self {
        VariableMatrix { kind: MatrixKind::Symmetric, m: n, n }
    }

    pub fn skew(n: usize) -> Self {
        VariableMatrix { kind: MatrixKind::Skew, m: n, n }
    }

    pub fn new(kind: MatrixKind, m: usize, n: usize) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::InvalidSpec("matrix dimensions must be positive".into()));
        }
        if kind != MatrixKind::Generic && m != n {
            return Err(Error::InvalidSpec(format!("{kind:?} matrix must be square")));
        }
        Ok(VariableMatrix { kind, m, n })
    }

    pub fn nvars(&self) -> usize {
        match self.kind {
            MatrixKind::Generic => self.m * self.n,
            MatrixKind::Symmetric => self.n * (self.n + 1) / 2,
            MatrixKind::Skew => self.n * (self.n - 1) / 2,
        }
    }

    fn upper_index(&self, i: usize, j: usize, strict: bool) -> usize {
        let n = self.n;
        if strict {
            i * (n - 1) - i * (i + 1) / 2 + (j - 1)
        } else {
            i * n + j - i - i * i.saturating_sub(1) / 2
        }
    }

    /// Entry at 0-based `(i, j)`.
    pub fn entry(&self, i: usize, j: usize) -> Entry {
        match self.kind {
            MatrixKind::Generic => Entry::Var { var: i * self.n + j, negated: false },
            MatrixKind::Symmetric => {
                let (a, b) = if i <= j { (i, j) } else { (j, i) };
                Entry::Var { var: self.upper_index(a, b, false), negated: false }
            }
            MatrixKind::Skew => {
                if i == j {
                    Entry::Zero
                } else if i < j {
                    Entry::Var { var: self.upper_index(i, j, true), negated: false }
                } else {
                    Entry::Var { var: self.upper_index(j, i, true), negated: true }
                }
            }
        }
    }

    /// 0-based position `(i, j)` of a variable (upper triangle for
    /// symmetric and skew matrices).
    pub fn position(&self, var: usize) -> (usize, usize) {
        match self.kind {
            MatrixKind::Generic => (var / self.n, var % self.n),
            MatrixKind::Symmetric | MatrixKind::Skew => {
                let strict = self.kind == MatrixKind::Skew;
                let mut k = var;
                for i in 0..self.n {
                    let len = if strict { self.n - i - 1 } else { self.n - i };
                    if k < len {
                        return (i, if strict { i + 1 + k } else { i + k });
                    }
                    k -= len;
                }
                panic!("variable {var} out of range")
            }
        }
    }
}

/// The variable universe of a polynomial ring together with how variables
/// are named in the text format.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VarLayout {
    /// `x(1), ..., x(n)`.
    Plain(usize),
    /// `x(i,j)` for the entries of a symbolic matrix.
    Matrix(VariableMatrix),
}

impl VarLayout {
    pub fn nvars(&self) -> usize {
        match self {
            VarLayout::Plain(n) => *n,
            VarLayout::Matrix(x) => x.nvars(),
        }
    }

    pub fn matrix(&self) -> Option<&VariableMatrix> {
        match self {
            VarLayout::Plain(_) => None,
            VarLayout::Matrix(x) => Some(x),
        }
    }

    /// Text name of a 0-based variable index, 1-based in the output.
    pub fn var_name(&self, v: usize) -> String {
        match self {
            VarLayout::Plain(_) => format!("x({})", v + 1),
            VarLayout::Matrix(x) => {
                let (i, j) = x.position(v);
                format!("x({},{})", i + 1, j + 1)
            }
        }
    }

    /// Resolves 1-based text indices to a variable and a sign.
    pub fn resolve(&self, i: usize, j: Option<usize>) -> Result<(usize, bool), String> {
        match (self, j) {
            (VarLayout::Plain(n), None) => {
                if i == 0 || i > *n {
                    Err(format!("x({i}) outside 1..={n}"))
                } else {
                    Ok((i - 1, false))
                }
            }
            (VarLayout::Matrix(x), Some(j)) => {
                if i == 0 || j == 0 || i > x.m || j > x.n {
                    return Err(format!("x({i},{j}) outside the {}x{} matrix", x.m, x.n));
                }
                match x.entry(i - 1, j - 1) {
                    Entry::Zero => Err(format!("x({i},{j}) is a structural zero")),
                    Entry::Var { var, negated } => Ok((var, negated)),
                }
            }
            (VarLayout::Plain(_), Some(_)) => Err("matrix variable in a plain layout".into()),
            (VarLayout::Matrix(_), None) => Err("plain variable in a matrix layout".into()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn variable_counts() {
        assert_eq!(VariableMatrix::generic(3, 4).nvars(), 12);
        assert_eq!(VariableMatrix::symmetric(4).nvars(), 10);
        assert_eq!(VariableMatrix::skew(5).nvars(), 10);
    }

    #[test]
    fn positions_round_trip() {
        for x in [VariableMatrix::generic(3, 4), VariableMatrix::symmetric(4), VariableMatrix::skew(5)] {
            for v in 0..x.nvars() {
                let (i, j) = x.position(v);
                assert_eq!(x.entry(i, j), Entry::Var { var: v, negated: false });
            }
        }
    }

    #[test]
    fn skew_entries() {
        let x = VariableMatrix::skew(4);
        assert_eq!(x.entry(2, 2), Entry::Zero);
        assert_eq!(x.entry(0, 1), Entry::Var { var: 0, negated: false });
        assert_eq!(x.entry(3, 2), Entry::Var { var: 5, negated: true });
        assert_eq!(x.entry(1, 2), Entry::Var { var: 3, negated: false });
    }

    #[test]
    fn symmetric_entries() {
        let x = VariableMatrix::symmetric(3);
        // 11,12,13,22,23,33
        assert_eq!(x.entry(1, 0), Entry::Var { var: 1, negated: false });
        assert_eq!(x.entry(1, 1), Entry::Var { var: 3, negated: false });
        assert_eq!(x.entry(2, 2), Entry::Var { var: 5, negated: false });
    }
}
