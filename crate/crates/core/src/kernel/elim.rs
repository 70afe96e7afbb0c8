//! Sparse exact elimination over `Q(i)`.
//!
//! Rows are cleared to Gaussian integers and reduced one at a time,
//! fraction-free, against an echelon of primitive pivot rows. Before elimination the matrix is split into connected components
//! (columns linked by a shared row), which for the graded operators here
//! turns one large system into many small independent ones.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::GQ;

/// Sparse matrix with at most one stored entry per `(row, col)` and no
/// stored zeros.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), GQ>,
}

type Row = Vec<(usize, GQ)>;

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, GQ::one());
        }
        m
    }

    pub fn from_triples(
        rows: usize,
        cols: usize,
        triples: impl IntoIterator<Item = (usize, usize, GQ)>,
    ) -> Self {
        let mut m = Self::zeros(rows, cols);
        for (r, c, v) in triples {
            let slot = m.entries.entry((r, c)).or_default();
            *slot += &v;
            if slot.is_zero() {
                m.entries.remove(&(r, c));
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

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, r: usize, c: usize) -> GQ {
        self.entries.get(&(r, c)).cloned().unwrap_or_default()
    }

    pub fn set(&mut self, r: usize, c: usize, v: GQ) {
        assert!(r < self.rows && c < self.cols, "entry outside the matrix");
        if v.is_zero() {
            self.entries.remove(&(r, c));
        } else {
            self.entries.insert((r, c), v);
        }
    }

    pub fn triples(&self) -> impl Iterator<Item = (usize, usize, &GQ)> {
        self.entries.iter().map(|(&(r, c), v)| (r, c, v))
    }

    /// `self` on top of `other`.
    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols, "vstack needs equal column counts");
        let mut m = self.clone();
        m.rows += other.rows;
        for (&(r, c), v) in &other.entries {
            m.entries.insert((r + self.rows, c), v.clone());
        }
        m
    }

    /// `self - λ·I` for a square matrix.
    pub fn shift_diagonal(&self, lambda: &GQ) -> Self {
        assert_eq!(self.rows, self.cols, "square matrix required");
        let mut m = self.clone();
        for i in 0..self.rows {
            let v = &m.get(i, i) - lambda;
            m.set(i, i, v);
        }
        m
    }

    pub fn mul_vec(&self, v: &[GQ]) -> Vec<GQ> {
        let mut out = vec![GQ::zero(); self.rows];
        for (&(r, c), a) in &self.entries {
            if !v[c].is_zero() {
                out[r] += a * &v[c];
            }
        }
        out
    }

    fn row_lists(&self) -> Vec<Row> {
        let mut rows: Vec<Row> = vec![Vec::new(); self.rows];
        for (&(r, c), v) in &self.entries {
            rows[r].push((c, v.clone()));
        }
        rows
    }

    /// Column sets of the connected components, with their rows.
    fn components(&self) -> Vec<(Vec<usize>, Vec<Row>)> {
        let mut parent: Vec<usize> = (0..self.cols).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let rows = self.row_lists();
        for row in &rows {
            if let Some(&(c0, _)) = row.first() {
                for &(c, _) in &row[1..] {
                    let (a, b) = (find(&mut parent, c0), find(&mut parent, c));
                    if a != b {
                        parent[a.max(b)] = a.min(b);
                    }
                }
            }
        }
        let mut index: HashMap<usize, usize> = HashMap::new();
        let mut comps: Vec<(Vec<usize>, Vec<Row>)> = Vec::new();
        for c in 0..self.cols {
            let root = find(&mut parent, c);
            let k = *index.entry(root).or_insert_with(|| {
                comps.push((Vec::new(), Vec::new()));
                comps.len() - 1
            });
            comps[k].0.push(c);
        }
        for row in rows {
            if let Some(&(c0, _)) = row.first() {
                let k = index[&find(&mut parent, c0)];
                comps[k].1.push(row);
            }
        }
        comps
    }

    pub fn rank(&self) -> usize {
        self.components()
            .into_par_iter()
            .map(|(cols, rows)| Echelon::build(&cols, rows).pivots.len())
            .sum()
    }

    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }

    /// Exact nullspace basis: one vector per free column, with a `1` in that
    /// column. Deterministic for a given matrix.
    pub fn nullspace(&self) -> Vec<Vec<GQ>> {
        let per_comp: Vec<Vec<(usize, Vec<(usize, GQ)>)>> = self
            .components()
            .into_par_iter()
            .map(|(cols, rows)| Echelon::build(&cols, rows).kernel(&cols))
            .collect();
        let mut all: Vec<(usize, Vec<(usize, GQ)>)> = per_comp.into_iter().flatten().collect();
        all.sort_by_key(|e| e.0);
        all.into_iter()
            .map(|(_, sparse)| {
                let mut v = vec![GQ::zero(); self.cols];
                for (c, x) in sparse {
                    v[c] = x;
                }
                v
            })
            .collect()
    }
}

/// Gaussian integer, used for fraction-free elimination.
#[derive(Clone, Debug)]
struct GInt {
    re: BigInt,
    im: BigInt,
}

impl GInt {
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn mul(&self, o: &GInt) -> GInt {
        GInt {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }

    fn sub(&self, o: &GInt) -> GInt {
        GInt {
            re: &self.re - &o.re,
            im: &self.im - &o.im,
        }
    }

    fn div_int(&self, g: &BigInt) -> GInt {
        GInt {
            re: &self.re / g,
            im: &self.im / g,
        }
    }

    fn to_gq(&self) -> GQ {
        GQ::new(
            BigRational::from_integer(self.re.clone()),
            BigRational::from_integer(self.im.clone()),
        )
    }
}

type IRow = Vec<(usize, GInt)>;

/// Scales a row by the common denominator so every entry is in `Z[i]`.
fn integral_row(row: Row) -> IRow {
    let mut l = BigInt::one();
    for (_, v) in &row {
        l = l.lcm(v.re().denom()).lcm(v.im().denom());
    }
    row.into_iter()
        .map(|(c, v)| {
            let re = (v.re() * BigRational::from_integer(l.clone())).to_integer();
            let im = (v.im() * BigRational::from_integer(l.clone())).to_integer();
            (c, GInt { re, im })
        })
        .collect()
}

/// Divides out the integer content of a row.
fn primitive(mut row: IRow) -> IRow {
    let mut g = BigInt::zero();
    for (_, v) in &row {
        g = g.gcd(&v.re).gcd(&v.im);
        if g.is_one() {
            return row;
        }
    }
    if !g.is_zero() {
        for (_, v) in row.iter_mut() {
            *v = v.div_int(&g);
        }
    }
    row
}

/// `a·target - b·pivot` with both rows sorted by column.
fn combine(a: &GInt, target: &IRow, b: &GInt, pivot: &IRow) -> IRow {
    let mut out = Vec::with_capacity(target.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < target.len() || j < pivot.len() {
        let ci = target.get(i).map_or(usize::MAX, |e| e.0);
        let cj = pivot.get(j).map_or(usize::MAX, |e| e.0);
        let v = if ci < cj {
            i += 1;
            (ci, a.mul(&target[i - 1].1))
        } else if cj < ci {
            j += 1;
            (cj, GInt { re: BigInt::zero(), im: BigInt::zero() }.sub(&b.mul(&pivot[j - 1].1)))
        } else {
            i += 1;
            j += 1;
            (ci, a.mul(&target[i - 1].1).sub(&b.mul(&pivot[j - 1].1)))
        };
        if !v.1.is_zero() {
            out.push(v);
        }
    }
    out
}

/// Echelon form of one component in local column numbering.
struct Echelon {
    /// Primitive pivot rows keyed by their leading local column; each row
    /// is sorted and starts with that column.
    pivots: BTreeMap<usize, IRow>,
}

impl Echelon {
    fn build(cols: &[usize], rows: Vec<Row>) -> Self {
        let local: HashMap<usize, usize> = cols.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let mut rows: Vec<IRow> = rows
            .into_iter()
            .map(|r| {
                let mut r: Row = r.into_iter().map(|(c, v)| (local[&c], v)).collect();
                r.sort_by_key(|e| e.0);
                primitive(integral_row(r))
            })
            .collect();
        // Short rows first keeps fill-in down.
        rows.sort_by_key(|r| (r.len(), r.first().map(|e| e.0)));
        let mut pivots: BTreeMap<usize, IRow> = BTreeMap::new();
        for mut row in rows {
            loop {
                let Some((lead, b)) = row.first().cloned() else {
                    break;
                };
                match pivots.get(&lead) {
                    Some(p) => {
                        let a = &p[0].1;
                        let g = a.re.gcd(&a.im).gcd(&b.re).gcd(&b.im);
                        row = primitive(combine(&a.div_int(&g), &row, &b.div_int(&g), p));
                    }
                    None => {
                        pivots.insert(lead, row);
                        break;
                    }
                }
            }
        }
        Self { pivots }
    }

    /// Kernel vectors in global column numbering, as sparse lists tagged
    /// with their free column.
    fn kernel(&self, cols: &[usize]) -> Vec<(usize, Vec<(usize, GQ)>)> {
        let free: Vec<usize> = (0..cols.len()).filter(|c| !self.pivots.contains_key(c)).collect();
        let normalized: Vec<(usize, Row)> = self
            .pivots
            .iter()
            .rev()
            .map(|(&lead, row)| {
                let inv = row[0].1.to_gq().inv().expect("nonzero leading entry");
                (lead, row.iter().map(|(c, v)| (*c, v.to_gq() * &inv)).collect())
            })
            .collect();
        free.iter()
            .map(|&f| {
                let mut v: HashMap<usize, GQ> = HashMap::new();
                v.insert(f, GQ::one());
                for (lead, row) in &normalized {
                    let lead = *lead;
                    let mut acc = GQ::zero();
                    for (c, a) in &row[1..] {
                        if let Some(x) = v.get(c) {
                            acc -= &(a * x);
                        }
                    }
                    if !acc.is_zero() {
                        v.insert(lead, acc);
                    }
                }
                let mut out: Vec<(usize, GQ)> = v.into_iter().map(|(c, x)| (cols[c], x)).collect();
                out.sort_by_key(|e| e.0);
                (cols[f], out)
            })
            .collect()
    }
}
