//! Graded matrices of the operators on truncated `P_k ⊗ S_{≤m}`, their exact
//! kernels, and the spectrum of the Hermite operator.

pub mod elim;

pub use elim::SparseMatrix;

use std::collections::HashMap;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::arith::GQ;
use crate::space::{apply, Monomial, SpinorElement, SpinorModel};
use crate::weyl::{catalog, MultiIndex, WeylOperator};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KernelError {
    #[error("operator mixes base-degree shifts {0:?}; not usable for kernels")]
    NonGraded(Vec<i64>),
    #[error("dimension mismatch: operator on n = {op}, basis on n = {basis}")]
    DimensionMismatch { op: usize, basis: usize },
    #[error("image leaves the truncated space (monomial {0})")]
    Truncation(String),
}

/// `C(a, b)` as a `usize`.
pub fn binomial(a: usize, b: usize) -> usize {
    if b > a {
        return 0;
    }
    let b = b.min(a - b);
    (0..b).fold(1usize, |acc, t| acc * (a - t) / (t + 1))
}

/// Monomials `x^a y^b q^g` with `|a|+|b| = k` and `|g| <= m`, sorted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GradedBasis {
    pub n: usize,
    pub k: u32,
    pub m: u32,
    pub monomials: Vec<Monomial>,
    #[serde(skip)]
    index: HashMap<Monomial, usize>,
}

impl GradedBasis {
    pub fn new(n: usize, k: u32, m: u32) -> Self {
        let mut monomials = Vec::new();
        for base in MultiIndex::all_of_degree(2 * n, k) {
            let s = base.as_slice();
            for d in 0..=m {
                for g in MultiIndex::all_of_degree(n, d) {
                    monomials.push(Monomial {
                        x: MultiIndex::from_vec(s[..n].to_vec()),
                        y: MultiIndex::from_vec(s[n..].to_vec()),
                        q: g,
                    });
                }
            }
        }
        monomials.sort();
        let index = monomials.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        Self {
            n,
            k,
            m,
            monomials,
            index,
        }
    }

    /// The zero space, used as the codomain below base degree zero.
    pub fn empty(n: usize, m: u32) -> Self {
        Self {
            n,
            k: 0,
            m,
            monomials: Vec::new(),
            index: HashMap::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    /// `C(k+2n-1, k) · Σ_{j<=m} C(n+j-1, j)`.
    pub fn expected_size(n: usize, k: u32, m: u32) -> usize {
        let (k, m) = (k as usize, m as usize);
        binomial(k + 2 * n - 1, k) * (0..=m).map(|j| binomial(n + j - 1, j)).sum::<usize>()
    }

    pub fn position(&self, mono: &Monomial) -> Option<usize> {
        self.index.get(mono).copied()
    }
}

/// How a matrix is going to be used.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixUse {
    /// Graded operator; the codomain is the target base degree with the
    /// spinor cap raised far enough that nothing is cut off.
    Kernel,
    /// Square matrix on the source space itself; any image outside it is an
    /// error.
    Spectrum,
}

/// Largest possible spinor-degree increase of `a` in the given model.
fn spinor_raise(a: &WeylOperator, model: SpinorModel) -> u32 {
    a.terms()
        .map(|t| {
            let up = t.key.q.degree();
            match model {
                SpinorModel::Plain => up,
                // Each ∂q may also contribute a factor q.
                SpinorModel::GaussianWeighted => up + t.key.dq.degree(),
            }
        })
        .max()
        .unwrap_or(0)
}

/// Matrix of `a` on `src` with column `j` the coordinates of `a` applied to
/// the `j`-th monomial. Returns the matrix and its codomain basis.
pub fn operator_matrix(
    a: &WeylOperator,
    src: &GradedBasis,
    model: SpinorModel,
    usage: MatrixUse,
) -> Result<(SparseMatrix, GradedBasis), KernelError> {
    if a.n() != src.n {
        return Err(KernelError::DimensionMismatch {
            op: a.n(),
            basis: src.n,
        });
    }
    let codomain = match usage {
        MatrixUse::Spectrum => src.clone(),
        MatrixUse::Kernel => {
            let shifts: Vec<i64> = a.base_shifts().into_iter().collect();
            let shift = match shifts.as_slice() {
                [] => 0,
                [s] => *s,
                _ => return Err(KernelError::NonGraded(shifts)),
            };
            let k = i64::from(src.k) + shift;
            let m = src.m + spinor_raise(a, model);
            if k < 0 {
                // Every image vanishes.
                GradedBasis::empty(src.n, m)
            } else {
                GradedBasis::new(src.n, k as u32, m)
            }
        }
    };
    let columns: Vec<Result<Vec<(usize, usize, GQ)>, KernelError>> = src
        .monomials
        .par_iter()
        .enumerate()
        .map(|(col, mono)| {
            let f = SpinorElement::monomial(model, mono.clone(), GQ::one());
            let image = apply(a, &f).expect("dimensions checked");
            image
                .terms()
                .map(|(m, c)| {
                    let row = codomain
                        .position(m)
                        .ok_or_else(|| KernelError::Truncation(format!("{m:?}")))?;
                    Ok((row, col, c.clone()))
                })
                .collect()
        })
        .collect();
    let mut triples = Vec::new();
    for c in columns {
        triples.extend(c?);
    }
    Ok((
        SparseMatrix::from_triples(codomain.len(), src.len(), triples),
        codomain,
    ))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KernelReport {
    pub n: usize,
    pub k: u32,
    pub m: u32,
    pub model: SpinorModel,
    pub source_dim: usize,
    pub dim_ker_ds: usize,
    pub dim_ker_ds_tilde: usize,
    pub dim_joint: usize,
    /// Number of holomorphic monomials of degree `k`; only meaningful in
    /// the weighted model.
    pub holomorphic_lower_bound: Option<usize>,
}

impl KernelReport {
    pub const CSV_HEADER: &'static str =
        "n,k,m,model,source_dim,dim_ker_ds,dim_ker_ds_tilde,dim_joint,holomorphic_lower_bound";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{}",
            self.n,
            self.k,
            self.m,
            self.model.label(),
            self.source_dim,
            self.dim_ker_ds,
            self.dim_ker_ds_tilde,
            self.dim_joint,
            self.holomorphic_lower_bound.map_or(String::new(), |v| v.to_string())
        )
    }
}

/// Kernel dimensions of `D_s`, `~D_s` and their joint kernel on the block
/// of base degree `k` and spinor degree at most `m`.
pub fn monogenic_dims(n: usize, k: u32, m: u32, model: SpinorModel) -> KernelReport {
    let src = GradedBasis::new(n, k, m);
    let ds = catalog("D_s", n, &[]).expect("catalog");
    let dt = catalog("Dt_s", n, &[]).expect("catalog");
    let (a, _) = operator_matrix(&ds, &src, model, MatrixUse::Kernel).expect("D_s is graded");
    let (b, _) = operator_matrix(&dt, &src, model, MatrixUse::Kernel).expect("~D_s is graded");
    let (ra, (rb, rj)) = rayon::join(|| a.rank(), || rayon::join(|| b.rank(), || a.vstack(&b).rank()));
    KernelReport {
        n,
        k,
        m,
        model,
        source_dim: src.len(),
        dim_ker_ds: src.len() - ra,
        dim_ker_ds_tilde: src.len() - rb,
        dim_joint: src.len() - rj,
        holomorphic_lower_bound: (model == SpinorModel::GaussianWeighted)
            .then(|| binomial(n + k as usize - 1, k as usize)),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Eigenspace {
    pub k: u32,
    pub eigenvalue: GQ,
    pub dimension: usize,
    pub expected: usize,
}

impl Eigenspace {
    pub const CSV_HEADER: &'static str = "k,eigenvalue,dimension";

    pub fn csv_row(&self) -> String {
        format!("{},{},{}", self.k, self.eigenvalue, self.dimension)
    }
}

/// Eigenspaces of the Hermite operator on weighted spinors of degree at most
/// `kmax`: for each `k`, the exact nullity of `H - λ_k` with
/// `λ_k = -(k + n/2)`, read off the triangular diagonal.
pub fn hermite_eigenspaces(n: usize, kmax: u32) -> Vec<Eigenspace> {
    let h = catalog("H", n, &[]).expect("catalog");
    hermite_eigenspaces_of(&h, n, kmax).expect("H preserves the truncation")
}

/// As [`hermite_eigenspaces`] for an arbitrary operator in the role of `H`.
pub fn hermite_eigenspaces_of(
    h: &WeylOperator,
    n: usize,
    kmax: u32,
) -> Result<Vec<Eigenspace>, KernelError> {
    let src = GradedBasis::new(n, 0, kmax);
    let (mat, _) = operator_matrix(h, &src, SpinorModel::GaussianWeighted, MatrixUse::Spectrum)?;
    let half_n = GQ::ratio(n as i64, 2);
    Ok((0..=kmax)
        .into_par_iter()
        .map(|k| {
            let eigenvalue = -&(&GQ::from_int(i64::from(k)) + &half_n);
            let dimension = mat.shift_diagonal(&eigenvalue).nullity();
            Eigenspace {
                k,
                eigenvalue,
                dimension,
                expected: binomial(n + k as usize - 1, k as usize),
            }
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SplitCheck {
    pub n: usize,
    pub holds: bool,
    /// `O - Σ i(x∂y - y∂x) - 2H`, rendered; `0` when the identity holds.
    pub difference: String,
}

/// Checks `O = Σ_j i(x_j ∂y_j - y_j ∂x_j) + 2H` with the given `H`.
pub fn oscillator_split_with(n: usize, h: &WeylOperator) -> SplitCheck {
    let o = catalog("O", n, &[]).expect("catalog");
    let mut rot = WeylOperator::zero(n);
    for j in 1..=n {
        let x = catalog("x", n, &[j]).expect("catalog");
        let y = catalog("y", n, &[j]).expect("catalog");
        let dx = catalog("dx", n, &[j]).expect("catalog");
        let dy = catalog("dy", n, &[j]).expect("catalog");
        rot = rot + (x * dy - y * dx).scale(&GQ::i());
    }
    let diff = o - rot - h.scale(&GQ::from_int(2));
    SplitCheck {
        n,
        holds: diff.is_zero(),
        difference: diff.to_string(),
    }
}

pub fn oscillator_split(n: usize) -> SplitCheck {
    oscillator_split_with(n, &catalog("H", n, &[]).expect("catalog"))
}

/// CSV for a list of kernel reports.
pub fn kernel_csv(reports: &[KernelReport]) -> String {
    let mut out = String::from(KernelReport::CSV_HEADER);
    out.push('\n');
    for r in reports {
        let _ = writeln!(out, "{}", r.csv_row());
    }
    out
}

#[cfg(test)]
mod tests;
