//! Dense matrices over `Q(i)` and the matrix models: the symplectic form,
//! the complex structure, the map from `u(n)` into `sp(2n,R)` and the
//! `su(1,2)` form.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use super::span::LieElement;
use crate::arith::GQ;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("expected real entries")]
    NonReal,
}

#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<GQ>,
}

impl ComplexMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![GQ::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, GQ::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<GQ>>) -> Result<Self, MatrixError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(MatrixError::Dimension("ragged rows".into()));
        }
        Ok(Self {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| GQ::from_int(v)).collect())
                .collect(),
        )
        .expect("rectangular literal")
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

    pub fn get(&self, i: usize, j: usize) -> &GQ {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: GQ) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(GQ::is_zero)
    }

    pub fn is_real(&self) -> bool {
        self.entries.iter().all(GQ::is_real)
    }

    pub fn trace(&self) -> GQ {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i).clone()).sum()
    }

    fn map(&self, f: impl Fn(&GQ) -> GQ) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn scale(&self, c: &GQ) -> Self {
        self.map(|v| v * c)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn conj_transpose(&self) -> Self {
        self.transpose().map(GQ::conj)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, MatrixError> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(MatrixError::Dimension(format!(
                "{}x{} + {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, MatrixError> {
        self.checked_add(&other.scale(&GQ::from_int(-1)))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, MatrixError> {
        if self.cols != other.rows {
            return Err(MatrixError::Dimension(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.entries[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// `[a, b] = ab - ba` for square matrices of equal size.
    pub fn checked_bracket(&self, other: &Self) -> Result<Self, MatrixError> {
        self.checked_mul(other)?.checked_sub(&other.checked_mul(self)?)
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.checked_mul(other).expect("matrix dimensions")
    }

    pub fn add(&self, other: &Self) -> Self {
        self.checked_add(other).expect("matrix dimensions")
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.checked_sub(other).expect("matrix dimensions")
    }

    /// Assembles `[[a, b], [c, d]]` from four equal square blocks.
    pub fn block(a: &Self, b: &Self, c: &Self, d: &Self) -> Result<Self, MatrixError> {
        let n = a.rows;
        if [a, b, c, d].iter().any(|m| m.rows != n || m.cols != n) {
            return Err(MatrixError::Dimension("blocks must be equal and square".into()));
        }
        let mut out = Self::zeros(2 * n, 2 * n);
        for (blk, (ro, co)) in [(a, (0, 0)), (b, (0, n)), (c, (n, 0)), (d, (n, n))] {
            for i in 0..n {
                for j in 0..n {
                    out.set(ro + i, co + j, blk.get(i, j).clone());
                }
            }
        }
        Ok(out)
    }

    /// Matrix with a single `1` at `(i, j)`.
    pub fn unit(rows: usize, cols: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(rows, cols);
        m.set(i, j, GQ::one());
        m
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        write!(f, "]")
    }
}

impl LieElement for ComplexMatrix {
    type Key = (usize, usize);

    fn bracket(&self, other: &Self) -> Self {
        self.checked_bracket(other).expect("square matrices of equal size")
    }

    fn coordinates(&self) -> BTreeMap<(usize, usize), GQ> {
        let mut out = BTreeMap::new();
        for i in 0..self.rows {
            for j in 0..self.cols {
                let v = self.get(i, j);
                if !v.is_zero() {
                    out.insert((i, j), v.clone());
                }
            }
        }
        out
    }

    fn scaled(&self, c: &GQ) -> Self {
        self.scale(c)
    }
}

/// `Ω₀ = [[0, I], [-I, 0]]`.
pub fn omega0(n: usize) -> ComplexMatrix {
    let z = ComplexMatrix::zeros(n, n);
    let i = ComplexMatrix::identity(n);
    ComplexMatrix::block(&z, &i, &i.scale(&GQ::from_int(-1)), &z).expect("square blocks")
}

/// The complex structure `𝕁 = [[0, -I], [I, 0]]`.
pub fn complex_structure(n: usize) -> ComplexMatrix {
    omega0(n).scale(&GQ::from_int(-1))
}

/// Antidiagonal ones, the form preserved by `su(1,2)`.
pub fn eta() -> ComplexMatrix {
    ComplexMatrix::from_ints(&[&[0, 0, 1], &[0, 1, 0], &[1, 0, 0]])
}

/// `(A, B) ↦ [[A, B], [-B, A]]`, the real form of `A + iB`.
pub fn phi_map(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix, MatrixError> {
    if !a.is_square() || (a.rows, a.cols) != (b.rows, b.cols) {
        return Err(MatrixError::Dimension("phi needs two n x n blocks".into()));
    }
    if !a.is_real() || !b.is_real() {
        return Err(MatrixError::NonReal);
    }
    ComplexMatrix::block(a, b, &b.scale(&GQ::from_int(-1)), a)
}

/// Splits `U` into real and imaginary parts and applies [`phi_map`].
pub fn phi_of_complex(u: &ComplexMatrix) -> Result<ComplexMatrix, MatrixError> {
    let a = u.map(|v| GQ::from_rational(v.re().clone()));
    let b = u.map(|v| GQ::from_rational(v.im().clone()));
    phi_map(&a, &b)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Predicate {
    SymplecticGroup,
    SymplecticAlgebra,
    CommutesWithJ,
    Unitary,
    Su12,
}

/// Exact membership tests. Symplectic predicates require a real `2n x 2n`
/// matrix; `Su12` a `3 x 3` one.
pub fn membership(m: &ComplexMatrix, p: Predicate) -> Result<bool, MatrixError> {
    if !m.is_square() {
        return Err(MatrixError::Dimension("square matrix required".into()));
    }
    let size = m.rows;
    let even = || {
        if size % 2 == 0 && size > 0 {
            Ok(size / 2)
        } else {
            Err(MatrixError::Dimension(format!("{size}x{size} is not 2n x 2n")))
        }
    };
    Ok(match p {
        Predicate::SymplecticGroup => {
            let o = omega0(even()?);
            m.is_real() && m.transpose().mul(&o).mul(m) == o
        }
        Predicate::SymplecticAlgebra => {
            let o = omega0(even()?);
            m.is_real() && m.transpose().mul(&o).add(&o.mul(m)).is_zero()
        }
        Predicate::CommutesWithJ => {
            let j = complex_structure(even()?);
            m.mul(&j) == j.mul(m)
        }
        Predicate::Unitary => m.conj_transpose().mul(m) == ComplexMatrix::identity(size),
        Predicate::Su12 => {
            if size != 3 {
                return Err(MatrixError::Dimension("su(1,2) acts on 3x3 matrices".into()));
            }
            let e = eta();
            m.conj_transpose().mul(&e).add(&e.mul(m)).is_zero() && m.trace().is_zero()
        }
    })
}

/// Real basis of `u(n)`: `E_jk - E_kj` and `i(E_jk + E_kj)` for `j < k`,
/// and `i E_jj`.
pub fn un_basis(n: usize) -> Vec<(String, ComplexMatrix)> {
    let mut out = Vec::new();
    for j in 0..n {
        for k in j..n {
            let ejk = ComplexMatrix::unit(n, n, j, k);
            let ekj = ComplexMatrix::unit(n, n, k, j);
            if j == k {
                out.push((format!("iE_{}{}", j + 1, j + 1), ejk.scale(&GQ::i())));
            } else {
                out.push((format!("S_{}{}", j + 1, k + 1), ejk.sub(&ekj)));
                out.push((format!("T_{}{}", j + 1, k + 1), ejk.add(&ekj).scale(&GQ::i())));
            }
        }
    }
    out
}

/// A real basis of `su(1,2)` in the antidiagonal form.
pub fn su12_basis() -> Vec<(String, ComplexMatrix)> {
    let i = GQ::i();
    let u = |r: usize, c: usize| ComplexMatrix::unit(3, 3, r, c);
    let mut out: Vec<(String, ComplexMatrix)> = Vec::new();
    // Cartan part: diag(α, ᾱ - α, -ᾱ) for α = 1 and α = i.
    out.push(("h_re".into(), u(0, 0).sub(&u(2, 2))));
    out.push((
        "h_im".into(),
        u(0, 0).sub(&u(1, 1).scale(&GQ::from_int(2))).add(&u(2, 2)).scale(&i),
    ));
    // Root vectors: E_01 - E_12 style pairs with conjugate partners.
    for (name, c) in [("re", GQ::one()), ("im", i.clone())] {
        let cbar = c.conj();
        out.push((
            format!("e1_{name}"),
            u(0, 1).scale(&c).sub(&u(1, 2).scale(&cbar)),
        ));
        out.push((
            format!("f1_{name}"),
            u(1, 0).scale(&c).sub(&u(2, 1).scale(&cbar)),
        ));
    }
    out.push(("e2".into(), u(0, 2).scale(&i)));
    out.push(("f2".into(), u(2, 0).scale(&i)));
    out
}
