//! Every named operator of the hermitian symplectic setting, built from the
//! Weyl generators exactly as written (constant terms included).
//!
//! Indices are one-based at this interface. Indexed families follow their
//! index rules: `X, Y, Z` and the tilded variants take `j <= k`; `A, C` take
//! `j < k`; `B` takes a single `j` (or `j, j`); the ladder symbols `F`,
//! `F_dag`, the complex derivatives `dz`, `dzbar` and the raw generators take
//! a single index.

use super::{Var, WeylError, WeylOperator};
use crate::arith::GQ;

/// Canonical catalog names accepted by [`catalog`].
pub const CATALOG_NAMES: &[&str] = &[
    "1", "x", "y", "q", "dx", "dy", "dq", "D_s", "X_s", "Dt_s", "Xt_s", "E", "E+n", "Delta", "r2",
    "O", "H", "D_z", "D_z_dag", "F", "F_dag", "dz", "dzbar", "X", "Y", "Z", "Xt", "Yt", "Zt",
    "Xt_corrected", "A", "B", "C",
];

fn canonical_name(name: &str) -> Option<&'static str> {
    let alias = match name {
        "~D_s" | "D~_s" | "Dt" | "D_s~" => "Dt_s",
        "~X_s" | "X~_s" | "X_s~" => "Xt_s",
        "En" | "E_n" => "E+n",
        "Δ" | "Lap" | "Laplace" => "Delta",
        "r^2" | "r²" => "r2",
        "D_z^dagger" | "D_zdag" | "D_z†" => "D_z_dag",
        "F^dagger" | "F†" => "F_dag",
        other => other,
    };
    CATALOG_NAMES.iter().copied().find(|&c| c == alias)
}

struct Builder {
    n: usize,
}

impl Builder {
    fn x(&self, j: usize) -> WeylOperator {
        WeylOperator::var(self.n, Var::X, j)
    }
    fn y(&self, j: usize) -> WeylOperator {
        WeylOperator::var(self.n, Var::Y, j)
    }
    fn q(&self, j: usize) -> WeylOperator {
        WeylOperator::var(self.n, Var::Q, j)
    }
    fn dx(&self, j: usize) -> WeylOperator {
        WeylOperator::der(self.n, Var::X, j)
    }
    fn dy(&self, j: usize) -> WeylOperator {
        WeylOperator::der(self.n, Var::Y, j)
    }
    fn dq(&self, j: usize) -> WeylOperator {
        WeylOperator::der(self.n, Var::Q, j)
    }
    fn c(&self, v: GQ) -> WeylOperator {
        WeylOperator::constant(self.n, v)
    }
    fn sum(&self, f: impl Fn(usize) -> WeylOperator) -> WeylOperator {
        (0..self.n).fold(WeylOperator::zero(self.n), |acc, j| acc + f(j))
    }
}

fn i() -> GQ {
    GQ::i()
}

fn half() -> GQ {
    GQ::ratio(1, 2)
}

fn delta(j: usize, k: usize) -> i64 {
    i64::from(j == k)
}

#[derive(Clone, Copy)]
enum Indexing {
    None,
    One,
    /// Two indices with `j <= k` (`strict = false`) or `j < k`.
    Pair { strict: bool },
}

fn indexing_of(name: &str) -> Indexing {
    match name {
        "x" | "y" | "q" | "dx" | "dy" | "dq" | "F" | "F_dag" | "dz" | "dzbar" | "B" => Indexing::One,
        "X" | "Y" | "Z" | "Xt" | "Yt" | "Zt" | "Xt_corrected" => Indexing::Pair { strict: false },
        "A" | "C" => Indexing::Pair { strict: true },
        _ => Indexing::None,
    }
}

fn validate(name: &str, n: usize, indices: &[usize]) -> Result<Vec<usize>, WeylError> {
    let bad = |reason: &str| WeylError::BadIndices {
        name: name.to_string(),
        indices: indices.to_vec(),
        reason: reason.to_string(),
    };
    if indices.iter().any(|&j| j == 0 || j > n) {
        return Err(bad(&format!("indices must lie in 1..={n}")));
    }
    let zero_based: Vec<usize> = indices.iter().map(|j| j - 1).collect();
    match indexing_of(name) {
        Indexing::None if !indices.is_empty() => Err(bad("operator takes no indices")),
        Indexing::None => Ok(zero_based),
        // B_jj may be written with a repeated index.
        Indexing::One if name == "B" && indices.len() == 2 && indices[0] == indices[1] => {
            Ok(vec![zero_based[0]])
        }
        Indexing::One if indices.len() != 1 => Err(bad("operator takes exactly one index")),
        Indexing::One => Ok(zero_based),
        Indexing::Pair { .. } if indices.len() != 2 => Err(bad("operator takes two indices")),
        Indexing::Pair { strict: true } if indices[0] >= indices[1] => Err(bad("requires j < k")),
        Indexing::Pair { strict: false } if indices[0] > indices[1] => Err(bad("requires j <= k")),
        Indexing::Pair { .. } => Ok(zero_based),
    }
}

/// Looks up a named operator for `n` base pairs.
pub fn catalog(name: &str, n: usize, indices: &[usize]) -> Result<WeylOperator, WeylError> {
    let canon =
        canonical_name(name).ok_or_else(|| WeylError::UnknownOperator(name.to_string()))?;
    if n == 0 {
        return Err(WeylError::BadIndices {
            name: name.to_string(),
            indices: indices.to_vec(),
            reason: "n must be positive".to_string(),
        });
    }
    let idx = validate(canon, n, indices)?;
    let b = Builder { n };
    let op = match canon {
        "1" => WeylOperator::identity(n),
        "x" => b.x(idx[0]),
        "y" => b.y(idx[0]),
        "q" => b.q(idx[0]),
        "dx" => b.dx(idx[0]),
        "dy" => b.dy(idx[0]),
        "dq" => b.dq(idx[0]),
        "D_s" => b.sum(|j| (b.q(j) * b.dy(j)).scale(&i()) - b.dq(j) * b.dx(j)),
        "X_s" => b.sum(|j| (b.q(j) * b.x(j)).scale(&i()) + b.dq(j) * b.y(j)),
        "Dt_s" => b.sum(|j| (b.q(j) * b.dx(j)).scale(&i()) + b.dy(j) * b.dq(j)),
        "Xt_s" => b.sum(|j| b.x(j) * b.dq(j) - (b.y(j) * b.q(j)).scale(&i())),
        "E" => b.sum(|j| b.x(j) * b.dx(j) + b.y(j) * b.dy(j)),
        "E+n" => catalog("E", n, &[])? + b.c(GQ::from_int(n as i64)),
        "Delta" => b.sum(|j| b.dx(j) * b.dx(j) + b.dy(j) * b.dy(j)),
        "r2" => b.sum(|j| b.x(j) * b.x(j) + b.y(j) * b.y(j)),
        "O" => b.sum(|j| {
            (b.x(j) * b.dy(j) - b.y(j) * b.dx(j)).scale(&i()) + b.dq(j) * b.dq(j)
                - b.q(j) * b.q(j)
        }),
        "H" => b.sum(|j| (b.dq(j) * b.dq(j) - b.q(j) * b.q(j)).scale(&half())),
        "D_z" => (catalog("D_s", n, &[])? + catalog("Dt_s", n, &[])?.scale(&i())).scale(&half()),
        "D_z_dag" => {
            (catalog("D_s", n, &[])? - catalog("Dt_s", n, &[])?.scale(&i())).scale(&half())
        }
        "F" => b.q(idx[0]) + b.dq(idx[0]),
        "F_dag" => b.q(idx[0]) - b.dq(idx[0]),
        "dz" => (b.dx(idx[0]) - b.dy(idx[0]).scale(&i())).scale(&half()),
        "dzbar" => (b.dx(idx[0]) + b.dy(idx[0]).scale(&i())).scale(&half()),
        "X" => {
            let (j, k) = (idx[0], idx[1]);
            b.x(j) * b.dx(k) - b.y(k) * b.dy(j) - b.q(k) * b.dq(j) - b.c(GQ::ratio(delta(j, k), 2))
        }
        "Xt" | "Xt_corrected" => {
            let (j, k) = (idx[0], idx[1]);
            let spinor = if canon == "Xt" {
                b.q(k) * b.dq(j)
            } else {
                b.q(j) * b.dq(k)
            };
            b.x(j) * b.dx(k) - b.y(k) * b.dy(j) + spinor
                + b.c(GQ::ratio(delta(j, k), 2))
        }
        "Y" | "Yt" | "Z" | "Zt" => {
            let (j, k) = (idx[0], idx[1]);
            let base = match canon {
                "Y" | "Yt" if j == k => b.x(j) * b.dy(j),
                "Y" | "Yt" => b.x(j) * b.dy(k) + b.x(k) * b.dy(j),
                _ if j == k => b.y(j) * b.dx(j),
                _ => b.y(j) * b.dx(k) + b.y(k) * b.dx(j),
            };
            let weight = if j == k { i() * half() } else { i() };
            let spinor = match canon {
                "Y" => (b.dq(j) * b.dq(k)).scale(&weight),
                "Z" => (b.q(j) * b.q(k)).scale(&weight),
                "Yt" => -&(b.q(j) * b.q(k)).scale(&weight),
                _ => -&(b.dq(j) * b.dq(k)).scale(&weight),
            };
            base + spinor
        }
        "A" => {
            let (j, k) = (idx[0], idx[1]);
            b.y(j) * b.dx(k) + b.y(k) * b.dx(j) - b.x(j) * b.dy(k) - b.x(k) * b.dy(j)
                + (b.q(j) * b.q(k) - b.dq(j) * b.dq(k)).scale(&i())
        }
        "B" => {
            let j = idx[0];
            b.y(j) * b.dx(j) - b.x(j) * b.dy(j)
                + (b.q(j) * b.q(j) - b.dq(j) * b.dq(j)).scale(&(i() * half()))
        }
        "C" => {
            let (j, k) = (idx[0], idx[1]);
            b.x(j) * b.dx(k) - b.x(k) * b.dx(j) + b.y(j) * b.dy(k) - b.y(k) * b.dy(j)
                + b.q(j) * b.dq(k)
                - b.q(k) * b.dq(j)
        }
        _ => unreachable!("catalog name {canon} without a definition"),
    };
    Ok(op)
}

/// The generator families used for closure and invariance checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// `X_jk, Y_jk, Z_jk` for `j <= k`: the realization preserving `D_s`.
    SpFirst,
    /// `Xt_jk, Yt_jk, Zt_jk` for `j <= k`, exactly as printed.
    SpSecond,
    /// Second realization with the spinor part of `Xt_jk` read as `q_j ∂q_k`.
    SpSecondCorrected,
    /// `A_jk (j<k), B_jj, C_jk (j<k)`.
    Unitary,
}

impl Family {
    pub fn label(self) -> &'static str {
        match self {
            Family::SpFirst => "sp-first",
            Family::SpSecond => "sp-second",
            Family::SpSecondCorrected => "sp-second-corrected",
            Family::Unitary => "u(n)",
        }
    }
}

/// Labelled generators of a family for `n` base pairs.
pub fn family(f: Family, n: usize) -> Vec<(String, WeylOperator)> {
    let names: &[&str] = match f {
        Family::SpFirst => &["X", "Y", "Z"],
        Family::SpSecond => &["Xt", "Yt", "Zt"],
        Family::SpSecondCorrected => &["Xt_corrected", "Yt", "Zt"],
        Family::Unitary => &["A", "B", "C"],
    };
    let mut out = Vec::new();
    for &name in names {
        for j in 1..=n {
            for k in j..=n {
                let idx: Vec<usize> = match (name, j == k) {
                    ("A" | "C", true) => continue,
                    ("B", false) => continue,
                    ("B", true) => vec![j],
                    _ => vec![j, k],
                };
                let op = catalog(name, n, &idx).expect("family indices are valid");
                out.push((format!("{name}_{j}{k}"), op));
            }
        }
    }
    out
}
