//! Finite-dimensional Lie spans: exact independence tests, closure under the
//! bracket, structure constants and the checks built on them.

use std::collections::BTreeMap;
use std::fmt::Debug;

use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::arith::GQ;
use crate::linalg;

/// Anything with a bracket and linear coordinates.
pub trait LieElement: Clone + Send + Sync {
    type Key: Ord + Clone + Debug + Send + Sync;

    fn bracket(&self, other: &Self) -> Self;

    /// Nonzero coordinates in some fixed (possibly infinite) basis.
    fn coordinates(&self) -> BTreeMap<Self::Key, GQ>;

    /// The scalar part, for elements that can carry a central constant.
    fn constant_part(&self) -> GQ {
        GQ::zero()
    }

    /// The central unit (`1`) of the ambient algebra, if it has one.
    fn unit_like(&self) -> Option<Self> {
        None
    }

    fn scaled(&self, c: &GQ) -> Self;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SpanField {
    ComplexSpan,
    /// Coefficients restricted to the reals: real and imaginary parts are
    /// independent coordinates.
    RealSpan,
}

type VecKey<K> = (K, u8);

fn vectorize<E: LieElement>(e: &E, field: SpanField) -> BTreeMap<VecKey<E::Key>, GQ> {
    let mut out = BTreeMap::new();
    for (k, c) in e.coordinates() {
        match field {
            SpanField::ComplexSpan => {
                out.insert((k, 0), c);
            }
            SpanField::RealSpan => {
                if !c.is_imaginary() {
                    out.insert((k.clone(), 0), GQ::from_rational(c.re().clone()));
                }
                if !c.is_real() {
                    out.insert((k, 1), GQ::from_rational(c.im().clone()));
                }
            }
        }
    }
    out
}

#[derive(Debug, Clone)]
struct EchelonRow<K> {
    pivot: K,
    vec: BTreeMap<K, GQ>,
    /// This row as a combination of the basis elements.
    combo: Vec<GQ>,
}

/// Incremental echelon form tracking how each row was built from the basis.
#[derive(Debug, Clone)]
struct Echelon<K> {
    rows: Vec<EchelonRow<K>>,
}

impl<K: Ord + Clone> Echelon<K> {
    fn new() -> Self {
        Self { rows: Vec::new() }
    }

    /// Returns the remainder of `v` and the multipliers `t_i` with
    /// `v = remainder + Σ t_i row_i`.
    fn reduce(&self, mut v: BTreeMap<K, GQ>) -> (BTreeMap<K, GQ>, Vec<GQ>) {
        let mut ts = Vec::with_capacity(self.rows.len());
        for row in &self.rows {
            let t = v.get(&row.pivot).cloned().unwrap_or_default();
            if !t.is_zero() {
                for (k, c) in &row.vec {
                    let slot = v.entry(k.clone()).or_default();
                    *slot -= &(&t * c);
                    if slot.is_zero() {
                        v.remove(k);
                    }
                }
            }
            ts.push(t);
        }
        (v, ts)
    }

    fn combination(&self, ts: &[GQ], dim: usize) -> Vec<GQ> {
        let mut out = vec![GQ::zero(); dim];
        for (t, row) in ts.iter().zip(&self.rows) {
            if t.is_zero() {
                continue;
            }
            for (o, c) in out.iter_mut().zip(&row.combo) {
                *o += &(t * c);
            }
        }
        out
    }

    /// Adds basis element number `index` given its reduction against the
    /// current rows.
    fn push(&mut self, remainder: BTreeMap<K, GQ>, ts: &[GQ], index: usize) {
        let mut combo = self.combination(ts, index + 1);
        for c in combo.iter_mut() {
            *c = -&*c;
        }
        combo[index] = GQ::one();
        let (pivot, lead) = remainder
            .iter()
            .next()
            .map(|(k, c)| (k.clone(), c.clone()))
            .expect("nonzero remainder");
        let inv = lead.inv().expect("nonzero pivot");
        let vec = remainder.into_iter().map(|(k, c)| (k, c * &inv)).collect();
        let combo = combo.into_iter().map(|c| c * &inv).collect();
        for row in self.rows.iter_mut() {
            row.combo.resize(index + 1, GQ::zero());
        }
        self.rows.push(EchelonRow { pivot, vec, combo });
    }
}

/// A list of linearly independent elements with exact coordinate lookup.
#[derive(Debug, Clone)]
pub struct LieSpan<E: LieElement> {
    pub basis: Vec<E>,
    pub labels: Vec<String>,
    pub field: SpanField,
    /// Index of the adjoined central constant, if any.
    pub central: Option<usize>,
    echelon: Echelon<VecKey<E::Key>>,
}

impl<E: LieElement> LieSpan<E> {
    pub fn new(field: SpanField) -> Self {
        Self {
            basis: Vec::new(),
            labels: Vec::new(),
            field,
            central: None,
            echelon: Echelon::new(),
        }
    }

    /// Builds a span from the independent members of `elements`.
    pub fn from_elements(field: SpanField, elements: impl IntoIterator<Item = (String, E)>) -> Self {
        let mut span = Self::new(field);
        for (label, e) in elements {
            span.try_push(label, e);
        }
        span
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Appends `e` if it is independent of the current basis.
    pub fn try_push(&mut self, label: String, e: E) -> bool {
        let (rem, ts) = self.echelon.reduce(vectorize(&e, self.field));
        if rem.is_empty() {
            return false;
        }
        let idx = self.basis.len();
        self.echelon.push(rem, &ts, idx);
        self.basis.push(e);
        self.labels.push(label);
        true
    }

    /// Coordinates of `e` in the basis, or `None` if it lies outside the span.
    pub fn coordinates(&self, e: &E) -> Option<Vec<GQ>> {
        let (rem, ts) = self.echelon.reduce(vectorize(e, self.field));
        rem.is_empty()
            .then(|| self.echelon.combination(&ts, self.basis.len()))
    }

    pub fn contains(&self, e: &E) -> bool {
        self.coordinates(e).is_some()
    }

    pub fn structure_constants(&self) -> StructureConstants {
        let d = self.dim();
        let pairs: Vec<(usize, usize)> = (0..d).flat_map(|a| (a + 1..d).map(move |b| (a, b))).collect();
        let brackets: Vec<Vec<GQ>> = pairs
            .par_iter()
            .map(|&(a, b)| {
                let br = self.basis[a].bracket(&self.basis[b]);
                self.coordinates(&br)
                    .expect("structure constants requested for a span that is not closed")
            })
            .collect();
        let mut c = vec![vec![vec![GQ::zero(); d]; d]; d];
        for (&(a, b), coords) in pairs.iter().zip(brackets) {
            for (k, v) in coords.into_iter().enumerate() {
                c[b][a][k] = -&v;
                c[a][b][k] = v;
            }
        }
        StructureConstants {
            labels: self.labels.clone(),
            c,
        }
    }
}

#[derive(Debug, Clone, Error)]
pub enum LieError {
    #[error("closure exceeded {cap} basis elements")]
    CapExceeded { cap: usize, reached: usize },
    #[error("structure constants are not real")]
    NonReal,
    #[error("index {0} is not central")]
    NotCentral(usize),
}

/// Result of [`span_closure`].
#[derive(Debug, Clone)]
pub struct Closure<E: LieElement> {
    pub span: LieSpan<E>,
    pub constants: StructureConstants,
    pub closed: bool,
}

impl<E: LieElement> Closure<E> {
    /// Dimension with the adjoined center (if any) quotiented out.
    pub fn reduced_dim(&self) -> usize {
        self.span.dim() - usize::from(self.span.central.is_some())
    }

    /// Structure constants modulo the adjoined center.
    pub fn reduced_constants(&self) -> StructureConstants {
        match self.span.central {
            Some(idx) => self.constants.quotient(idx).expect("adjoined constant is central"),
            None => self.constants.clone(),
        }
    }
}

/// Brackets basis pairs until the span is closed. With `constants_allowed`
/// the central unit is adjoined the first time a bracket has a scalar part.
pub fn span_closure<E: LieElement>(
    generators: Vec<(String, E)>,
    constants_allowed: bool,
    field: SpanField,
    cap: usize,
) -> Result<Closure<E>, LieError> {
    let mut span = LieSpan::from_elements(field, generators);
    let mut t = 0;
    while t < span.dim() {
        let current = span.basis[t].clone();
        let brackets: Vec<E> = span.basis[..t]
            .par_iter()
            .map(|s| s.bracket(&current))
            .collect();
        for (s, br) in brackets.into_iter().enumerate() {
            if constants_allowed && span.central.is_none() && !br.constant_part().is_zero() {
                if let Some(unit) = br.unit_like() {
                    let idx = span.dim();
                    if span.try_push("1".to_string(), unit) {
                        span.central = Some(idx);
                    }
                }
            }
            let label = format!("[{},{}]", span.labels[s], span.labels[t]);
            span.try_push(label, br);
            if span.dim() > cap {
                return Err(LieError::CapExceeded {
                    cap,
                    reached: span.dim(),
                });
            }
        }
        t += 1;
    }
    let constants = span.structure_constants();
    Ok(Closure {
        span,
        constants,
        closed: true,
    })
}

/// `[e_a, e_b] = Σ_k c[a][b][k] e_k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructureConstants {
    pub labels: Vec<String>,
    pub c: Vec<Vec<Vec<GQ>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct JacobiViolation {
    pub triple: (usize, usize, usize),
    pub component: usize,
    pub value: GQ,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Signature {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl StructureConstants {
    pub fn dim(&self) -> usize {
        self.c.len()
    }

    pub fn is_real(&self) -> bool {
        self.c.iter().flatten().flatten().all(GQ::is_real)
    }

    pub fn is_antisymmetric(&self) -> bool {
        let d = self.dim();
        (0..d).all(|a| {
            (0..d).all(|b| (0..d).all(|k| (&self.c[a][b][k] + &self.c[b][a][k]).is_zero()))
        })
    }

    /// Drops a central basis element.
    pub fn quotient(&self, idx: usize) -> Result<StructureConstants, LieError> {
        let d = self.dim();
        if (0..d).any(|b| self.c[idx][b].iter().any(|v| !v.is_zero())) {
            return Err(LieError::NotCentral(idx));
        }
        let keep = |v: &Vec<GQ>| -> Vec<GQ> {
            v.iter()
                .enumerate()
                .filter(|&(k, _)| k != idx)
                .map(|(_, x)| x.clone())
                .collect()
        };
        let c = self
            .c
            .iter()
            .enumerate()
            .filter(|&(a, _)| a != idx)
            .map(|(_, row)| {
                row.iter()
                    .enumerate()
                    .filter(|&(b, _)| b != idx)
                    .map(|(_, v)| keep(v))
                    .collect()
            })
            .collect();
        let labels = keep_labels(&self.labels, idx);
        Ok(StructureConstants { labels, c })
    }

    /// Constants in the basis `e'_a = u_a e_a`.
    pub fn rescaled(&self, scalars: &[GQ]) -> StructureConstants {
        let d = self.dim();
        let inv: Vec<GQ> = scalars.iter().map(|u| u.inv().expect("nonzero scalar")).collect();
        let mut c = self.c.clone();
        for a in 0..d {
            for b in 0..d {
                let ab = &scalars[a] * &scalars[b];
                for k in 0..d {
                    if !c[a][b][k].is_zero() {
                        c[a][b][k] = &ab * &self.c[a][b][k] * &inv[k];
                    }
                }
            }
        }
        StructureConstants {
            labels: self.labels.clone(),
            c,
        }
    }

    /// Killing form `K(a,b) = tr(ad a ∘ ad b) = Σ c[a][m][k] c[b][k][m]`.
    pub fn killing_form(&self) -> Vec<Vec<GQ>> {
        let d = self.dim();
        let mut k = vec![vec![GQ::zero(); d]; d];
        for a in 0..d {
            for b in a..d {
                let mut acc = GQ::zero();
                for m in 0..d {
                    for kk in 0..d {
                        let (x, y) = (&self.c[a][m][kk], &self.c[b][kk][m]);
                        if !x.is_zero() && !y.is_zero() {
                            acc += x * y;
                        }
                    }
                }
                k[b][a] = acc.clone();
                k[a][b] = acc;
            }
        }
        k
    }

    pub fn killing_rank(&self) -> usize {
        linalg::rank(&self.killing_form())
    }
}

fn keep_labels(labels: &[String], idx: usize) -> Vec<String> {
    labels
        .iter()
        .enumerate()
        .filter(|&(k, _)| k != idx)
        .map(|(_, l)| l.clone())
        .collect()
}

/// Every basis triple `a <= b <= c` whose Jacobi sum has a nonzero component.
pub fn jacobi_check(sc: &StructureConstants) -> Vec<JacobiViolation> {
    let d = sc.dim();
    let sparse: Vec<Vec<Vec<(usize, GQ)>>> = sc
        .c
        .iter()
        .map(|row| {
            row.iter()
                .map(|v| {
                    v.iter()
                        .enumerate()
                        .filter(|(_, x)| !x.is_zero())
                        .map(|(k, x)| (k, x.clone()))
                        .collect()
                })
                .collect()
        })
        .collect();
    let triples: Vec<(usize, usize, usize)> = (0..d)
        .flat_map(|a| (a..d).flat_map(move |b| (b..d).map(move |c| (a, b, c))))
        .collect();
    triples
        .par_iter()
        .flat_map_iter(|&(a, b, c)| {
            let mut acc = vec![GQ::zero(); d];
            // [a,[b,c]] + [b,[c,a]] + [c,[a,b]]
            for (outer, inner) in [(a, (b, c)), (b, (c, a)), (c, (a, b))] {
                for (m, x) in &sparse[inner.0][inner.1] {
                    for (k, y) in &sparse[outer][*m] {
                        acc[*k] += x * y;
                    }
                }
            }
            acc.into_iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(move |(k, value)| JacobiViolation {
                    triple: (a, b, c),
                    component: k,
                    value,
                })
                .collect::<Vec<_>>()
        })
        .collect()
}

/// Inertia of the Killing form; requires real structure constants.
pub fn killing_signature(sc: &StructureConstants) -> Result<Signature, LieError> {
    if !sc.is_real() {
        return Err(LieError::NonReal);
    }
    let k: Vec<Vec<BigRational>> = sc
        .killing_form()
        .into_iter()
        .map(|row| row.into_iter().map(|v| v.re().clone()).collect())
        .collect();
    let (positive, negative, zero) = linalg::symmetric_inertia(&k);
    Ok(Signature {
        positive,
        negative,
        zero,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Rescale {
    pub scalars: Vec<GQ>,
    pub success: bool,
}

/// Searches per-element unit scalings making every structure constant real.
///
/// Multiplying by `-1` never changes reality, so the search runs over
/// `{1, i}` per element; in the lexicographic order `1, -1, i, -i` that is
/// exactly where the first solution lies.
pub fn real_form_rescale(sc: &StructureConstants) -> Rescale {
    let d = sc.dim();
    let choices = [GQ::one(), GQ::i()];
    let mut assign: Vec<usize> = Vec::with_capacity(d);
    let consistent = |assign: &[usize]| -> bool {
        let t = assign.len() - 1;
        let u = |i: usize| &choices[assign[i]];
        // Only constants whose three indices are all assigned and that touch t.
        for a in 0..=t {
            for b in 0..=t {
                for k in 0..=t {
                    if a != t && b != t && k != t {
                        continue;
                    }
                    let v = &sc.c[a][b][k];
                    if v.is_zero() {
                        continue;
                    }
                    let w = u(a) * u(b) * v * u(k).inv().expect("unit");
                    if !w.is_real() {
                        return false;
                    }
                }
            }
        }
        true
    };
    // Iterative backtracking over choice indices.
    let mut next_choice = vec![0usize; d + 1];
    let mut depth = 0;
    loop {
        if depth == d {
            return Rescale {
                scalars: assign.iter().map(|&i| choices[i].clone()).collect(),
                success: true,
            };
        }
        if next_choice[depth] >= choices.len() {
            if depth == 0 {
                return Rescale {
                    scalars: vec![GQ::one(); d],
                    success: false,
                };
            }
            next_choice[depth] = 0;
            depth -= 1;
            assign.pop();
            continue;
        }
        assign.push(next_choice[depth]);
        next_choice[depth] += 1;
        if consistent(&assign) {
            depth += 1;
        } else {
            assign.pop();
        }
    }
}
