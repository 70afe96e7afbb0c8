//! The 8×8 commutator table of `D_s, ~D_s, Δ, X_s, 𝔼, O, ~X_s, r²`, computed
//! exactly and compared cell by cell with the published table.

use serde::Serialize;

use super::span::{jacobi_check, LieSpan, SpanField};
use crate::arith::GQ;
use crate::weyl::{catalog, render_sum, WeylOperator};

/// Catalog names of the table symbols, in table order.
pub const TABLE_OPERATORS: [&str; 8] = ["D_s", "Dt_s", "Delta", "X_s", "E", "O", "Xt_s", "r2"];

/// Short symbols used when rendering table cells.
pub const TABLE_SYMBOLS: [&str; 8] = ["D", "~D", "Δ", "X", "E", "O", "~X", "r²"];

const ZERO: (i64, usize) = (0, 0);

/// The published table as `(coefficient, symbol index)` for `[row, col]`.
const PRINTED: [[(i64, usize); 8]; 8] = [
    [ZERO, (1, 2), ZERO, (-1, 4), (1, 0), (-3, 1), (-1, 5), (-2, 6)],
    [(-1, 2), ZERO, ZERO, (1, 5), (1, 1), (3, 0), (-1, 4), (2, 3)],
    [ZERO, ZERO, ZERO, (1, 1), (1, 2), ZERO, (-2, 0), (1, 4)],
    [(1, 4), (-1, 5), (-1, 1), ZERO, (1, 3), (-3, 6), (-1, 7), ZERO],
    [(-1, 0), (-1, 1), (-1, 2), (-1, 3), ZERO, ZERO, (-1, 6), ZERO],
    [(3, 1), (-3, 0), ZERO, (3, 6), ZERO, ZERO, (-3, 3), ZERO],
    [(1, 5), (1, 4), (2, 0), (1, 7), (1, 6), (-3, 3), ZERO, ZERO],
    [(2, 6), (-2, 3), (-1, 4), ZERO, (-2, 7), ZERO, ZERO, ZERO],
];

/// A table entry: `Σ coeffs[s]·symbol_s + constant`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Cell {
    pub coeffs: Vec<GQ>,
    pub constant: GQ,
}

impl Cell {
    fn zero() -> Self {
        Self {
            coeffs: vec![GQ::zero(); 8],
            constant: GQ::zero(),
        }
    }

    fn printed(row: usize, col: usize) -> Self {
        let (c, s) = PRINTED[row][col];
        let mut cell = Self::zero();
        cell.coeffs[s] = GQ::from_int(c);
        cell
    }

    fn neg(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            constant: -&self.constant,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.constant.is_zero() && self.coeffs.iter().all(GQ::is_zero)
    }

    pub fn render(&self) -> String {
        let mut terms: Vec<(GQ, Vec<String>)> = self
            .coeffs
            .iter()
            .zip(TABLE_SYMBOLS)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, s)| (c.clone(), vec![s.to_string()]))
            .collect();
        if !self.constant.is_zero() {
            terms.push((self.constant.clone(), Vec::new()));
        }
        render_sum(&terms)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum CellStatus {
    ExactMatch,
    /// Computed = `unit` × printed.
    UnitScalar { unit: GQ },
    /// Computed = `unit` × printed + `shift`·1.
    CentralShift { unit: GQ, shift: GQ },
    /// `ratio` is set when the non-central parts are proportional by a
    /// non-unit scalar.
    Mismatch { ratio: Option<GQ> },
}

impl CellStatus {
    pub fn acceptable(&self) -> bool {
        !matches!(self, CellStatus::Mismatch { .. })
    }

    pub fn short(&self) -> String {
        match self {
            CellStatus::ExactMatch => "=".to_string(),
            CellStatus::UnitScalar { unit } => format!("×({unit})"),
            CellStatus::CentralShift { unit, shift } => format!("×({unit}) +({shift})"),
            CellStatus::Mismatch { ratio: Some(r) } => format!("MISMATCH ×({r})"),
            CellStatus::Mismatch { ratio: None } => "MISMATCH".to_string(),
        }
    }
}

fn compare(computed: &Cell, printed: &Cell) -> CellStatus {
    let nonzero: Vec<usize> = (0..8).filter(|&s| !printed.coeffs[s].is_zero()).collect();
    let shift = computed.constant.clone();
    let ratio = match nonzero.as_slice() {
        [] => {
            return if computed.is_zero() {
                CellStatus::ExactMatch
            } else if computed.coeffs.iter().all(GQ::is_zero) {
                CellStatus::CentralShift {
                    unit: GQ::one(),
                    shift,
                }
            } else {
                CellStatus::Mismatch { ratio: None }
            };
        }
        [s] => computed.coeffs[*s]
            .checked_div(&printed.coeffs[*s])
            .expect("printed coefficient is nonzero"),
        _ => unreachable!("printed cells have one symbol"),
    };
    let proportional = !ratio.is_zero()
        && (0..8).all(|t| computed.coeffs[t] == &ratio * &printed.coeffs[t]);
    if !proportional {
        return CellStatus::Mismatch { ratio: None };
    }
    if !ratio.is_unit() {
        return CellStatus::Mismatch { ratio: Some(ratio) };
    }
    match (ratio.is_one(), shift.is_zero()) {
        (true, true) => CellStatus::ExactMatch,
        (false, true) => CellStatus::UnitScalar { unit: ratio },
        _ => CellStatus::CentralShift { unit: ratio, shift },
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Orientation {
    /// Cell `(r, c)` holds `[row_r, col_c]`.
    RowCol,
    /// Cell `(r, c)` holds `[col_c, row_r]`.
    ColRow,
}

#[derive(Debug, Clone, Serialize)]
pub struct OrientationScore {
    pub orientation: Orientation,
    pub acceptable_cells: usize,
    pub exact_cells: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct CellReport {
    pub row: String,
    pub col: String,
    pub computed: String,
    pub printed: String,
    #[serde(flatten)]
    pub status: CellStatus,
}

#[derive(Debug, Clone, Serialize)]
pub struct TableDiff {
    pub n: usize,
    pub symbols: Vec<String>,
    pub orientation: Orientation,
    pub scores: Vec<OrientationScore>,
    /// Row-major, 64 cells, under the chosen orientation.
    pub cells: Vec<CellReport>,
    /// Unordered pairs `(a, b)` where the printed `(a,b)` is not minus the
    /// printed `(b,a)`.
    pub printed_antisymmetry_violations: Vec<(String, String)>,
    pub computed_antisymmetric: bool,
    pub computed_jacobi: bool,
    pub all_cells_acceptable: bool,
}

impl TableDiff {
    pub fn mismatches(&self) -> impl Iterator<Item = &CellReport> {
        self.cells.iter().filter(|c| !c.status.acceptable())
    }

    /// Text rendering in the printed 8×8 layout: computed value with the
    /// per-cell comparison against the published entry underneath.
    pub fn to_text(&self) -> String {
        let mut grid: Vec<Vec<String>> = Vec::new();
        let mut header = vec![String::new()];
        header.extend(self.symbols.iter().cloned());
        grid.push(header);
        for (r, sym) in self.symbols.iter().enumerate() {
            let mut line = vec![sym.clone()];
            let mut notes = vec![String::new()];
            for c in 0..8 {
                let cell = &self.cells[r * 8 + c];
                line.push(cell.computed.clone());
                notes.push(match &cell.status {
                    CellStatus::ExactMatch => "=".to_string(),
                    other => format!("{} [{}]", other.short(), cell.printed),
                });
            }
            grid.push(line);
            grid.push(notes);
        }
        let widths: Vec<usize> = (0..9)
            .map(|c| grid.iter().map(|row| row[c].chars().count()).max().unwrap_or(0))
            .collect();
        let mut out = String::new();
        let orient = match self.orientation {
            Orientation::RowCol => "[row, col]",
            Orientation::ColRow => "[col, row]",
        };
        out.push_str(&format!("commutator table, n = {}, cells read as {orient}\n", self.n));
        for row in &grid {
            let line: Vec<String> = row
                .iter()
                .zip(&widths)
                .map(|(s, w)| format!("{s:<w$}", w = *w))
                .collect();
            out.push_str(line.join(" | ").trim_end());
            out.push('\n');
        }
        out.push_str(&format!(
            "computed table: antisymmetric {}, Jacobi {}\n",
            self.computed_antisymmetric, self.computed_jacobi
        ));
        for (a, b) in &self.printed_antisymmetry_violations {
            out.push_str(&format!("printed table not antisymmetric at ({a}, {b})\n"));
        }
        out
    }
}

/// The 64 computed brackets `[T_r, T_c]` expressed in the table symbols plus
/// a constant, with the span used (the 8 symbols and the identity).
pub fn computed_table(n: usize) -> (Vec<Vec<Cell>>, LieSpan<WeylOperator>) {
    let ops: Vec<WeylOperator> = TABLE_OPERATORS
        .iter()
        .map(|name| catalog(name, n, &[]).expect("table operators are in the catalog"))
        .collect();
    let mut elements: Vec<(String, WeylOperator)> = TABLE_SYMBOLS
        .iter()
        .map(|s| s.to_string())
        .zip(ops.iter().cloned())
        .collect();
    elements.push(("1".to_string(), WeylOperator::identity(n)));
    let span = LieSpan::from_elements(SpanField::ComplexSpan, elements);
    assert_eq!(span.dim(), 9, "table operators and 1 are independent");
    let cells = ops
        .iter()
        .map(|a| {
            ops.iter()
                .map(|b| {
                    let coords = span
                        .coordinates(&a.commutator(b))
                        .expect("table brackets stay in the span");
                    Cell {
                        coeffs: coords[..8].to_vec(),
                        constant: coords[8].clone(),
                    }
                })
                .collect()
        })
        .collect();
    (cells, span)
}

/// Compares the exact table with the published one under both readings of
/// its orientation and keeps the better-matching one.
pub fn paper_table_diff(n: usize) -> TableDiff {
    let (computed, span) = computed_table(n);
    let symbols: Vec<String> = TABLE_SYMBOLS.iter().map(|s| s.to_string()).collect();

    let statuses = |o: Orientation| -> Vec<CellStatus> {
        (0..64)
            .map(|idx| {
                let (r, c) = (idx / 8, idx % 8);
                let cell = match o {
                    Orientation::RowCol => computed[r][c].clone(),
                    Orientation::ColRow => computed[r][c].neg(),
                };
                compare(&cell, &Cell::printed(r, c))
            })
            .collect()
    };
    let mut best: Option<(Orientation, Vec<CellStatus>)> = None;
    let mut scores = Vec::new();
    for o in [Orientation::RowCol, Orientation::ColRow] {
        let st = statuses(o);
        let acceptable = st.iter().filter(|s| s.acceptable()).count();
        let exact = st.iter().filter(|s| **s == CellStatus::ExactMatch).count();
        scores.push(OrientationScore {
            orientation: o,
            acceptable_cells: acceptable,
            exact_cells: exact,
        });
        let better = match &best {
            None => true,
            Some((_, b)) => acceptable > b.iter().filter(|s| s.acceptable()).count(),
        };
        if better {
            best = Some((o, st));
        }
    }
    let (orientation, st) = best.expect("two orientations scored");

    let cells: Vec<CellReport> = st
        .into_iter()
        .enumerate()
        .map(|(idx, status)| {
            let (r, c) = (idx / 8, idx % 8);
            let value = match orientation {
                Orientation::RowCol => computed[r][c].clone(),
                Orientation::ColRow => computed[r][c].neg(),
            };
            CellReport {
                row: symbols[r].clone(),
                col: symbols[c].clone(),
                computed: value.render(),
                printed: Cell::printed(r, c).render(),
                status,
            }
        })
        .collect();

    let mut violations = Vec::new();
    for a in 0..8 {
        for b in a..8 {
            if Cell::printed(a, b) != Cell::printed(b, a).neg() {
                violations.push((symbols[a].clone(), symbols[b].clone()));
            }
        }
    }

    let computed_antisymmetric =
        (0..8).all(|a| (0..8).all(|b| computed[a][b] == computed[b][a].neg()));
    let sc = span.structure_constants();
    let computed_jacobi = jacobi_check(&sc).is_empty();
    let all_cells_acceptable = cells.iter().all(|c| c.status.acceptable());

    TableDiff {
        n,
        symbols,
        orientation,
        scores,
        cells,
        printed_antisymmetry_violations: violations,
        computed_antisymmetric,
        computed_jacobi,
        all_cells_acceptable,
    }
}
