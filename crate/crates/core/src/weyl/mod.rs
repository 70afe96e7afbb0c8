//! Normal-ordered differential operators with polynomial coefficients.
//!
//! An operator acts on functions of `x_1..x_n, y_1..y_n, q_1..q_n`. Each term
//! is stored as `c · x^a y^b q^g ∂x^d ∂y^e ∂q^f` with every multiplication
//! operator to the left of every derivative. Composition rewrites products
//! back into this normal form, so operator equality is a structural
//! comparison of term maps.

mod catalog;
mod display;

pub use catalog::{catalog, family, Family, CATALOG_NAMES};
pub(crate) use display::render_sum;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::GQ;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeylError {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("unknown operator name {0:?}")]
    UnknownOperator(String),
    #[error("invalid indices {indices:?} for {name}: {reason}")]
    BadIndices {
        name: String,
        indices: Vec<usize>,
        reason: String,
    },
    #[error("malformed serialized operator: {0}")]
    Malformed(String),
}

/// The three variable groups of the phase space: base `x`, base `y` and the
/// spinor variables `q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    X,
    Y,
    Q,
}

impl Var {
    pub const ALL: [Var; 3] = [Var::X, Var::Y, Var::Q];

    pub fn symbol(self) -> &'static str {
        match self {
            Var::X => "x",
            Var::Y => "y",
            Var::Q => "q",
        }
    }
}

/// Exponents of one variable group, one entry per base pair.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn zeros(n: usize) -> Self {
        Self(vec![0; n])
    }

    pub fn unit(n: usize, j: usize, power: u32) -> Self {
        let mut m = Self::zeros(n);
        m.0[j] = power;
        m
    }

    pub fn from_vec(v: Vec<u32>) -> Self {
        Self(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn get(&self, j: usize) -> u32 {
        self.0[j]
    }

    pub fn set(&mut self, j: usize, v: u32) {
        self.0[j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn add(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Componentwise `self - other`, or `None` if any entry would go negative.
    pub fn checked_sub(&self, other: &Self) -> Option<Self> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Self)
    }

    /// All multi-indices of length `n` with total degree exactly `d`, in
    /// descending lexicographic order.
    pub fn all_of_degree(n: usize, d: u32) -> Vec<Self> {
        fn rec(n: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
            if prefix.len() + 1 == n {
                prefix.push(d);
                out.push(MultiIndex(prefix.clone()));
                prefix.pop();
                return;
            }
            for first in (0..=d).rev() {
                prefix.push(first);
                rec(n, d - first, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        if n == 0 {
            if d == 0 {
                out.push(MultiIndex(Vec::new()));
            }
            return out;
        }
        rec(n, d, &mut Vec::with_capacity(n), &mut out);
        out
    }
}

/// Exponent tuple of a normal-ordered term. Field order defines the
/// canonical lexicographic order `(x, y, q, ∂x, ∂y, ∂q)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TermKey {
    pub x: MultiIndex,
    pub y: MultiIndex,
    pub q: MultiIndex,
    pub dx: MultiIndex,
    pub dy: MultiIndex,
    pub dq: MultiIndex,
}

impl TermKey {
    pub fn constant(n: usize) -> Self {
        let z = MultiIndex::zeros(n);
        Self {
            x: z.clone(),
            y: z.clone(),
            q: z.clone(),
            dx: z.clone(),
            dy: z.clone(),
            dq: z,
        }
    }

    pub fn n(&self) -> usize {
        self.x.len()
    }

    pub fn var(&self, v: Var) -> &MultiIndex {
        match v {
            Var::X => &self.x,
            Var::Y => &self.y,
            Var::Q => &self.q,
        }
    }

    pub fn der(&self, v: Var) -> &MultiIndex {
        match v {
            Var::X => &self.dx,
            Var::Y => &self.dy,
            Var::Q => &self.dq,
        }
    }

    pub fn var_mut(&mut self, v: Var) -> &mut MultiIndex {
        match v {
            Var::X => &mut self.x,
            Var::Y => &mut self.y,
            Var::Q => &mut self.q,
        }
    }

    pub fn der_mut(&mut self, v: Var) -> &mut MultiIndex {
        match v {
            Var::X => &mut self.dx,
            Var::Y => &mut self.dy,
            Var::Q => &mut self.dq,
        }
    }

    pub fn is_constant(&self) -> bool {
        Var::ALL
            .iter()
            .all(|&v| self.var(v).is_zero() && self.der(v).is_zero())
    }

    /// Change of `|x| + |y|` effected by the term.
    pub fn base_shift(&self) -> i64 {
        i64::from(self.x.degree() + self.y.degree()) - i64::from(self.dx.degree() + self.dy.degree())
    }

    /// Change of `|q|` effected by the term.
    pub fn spinor_shift(&self) -> i64 {
        i64::from(self.q.degree()) - i64::from(self.dq.degree())
    }

    /// Swaps every variable exponent with the matching derivative exponent.
    pub fn swapped(&self) -> Self {
        Self {
            x: self.dx.clone(),
            y: self.dy.clone(),
            q: self.dq.clone(),
            dx: self.x.clone(),
            dy: self.y.clone(),
            dq: self.q.clone(),
        }
    }
}

/// A single stored term, borrowed from an operator.
#[derive(Debug, Clone, Copy)]
pub struct WeylTerm<'a> {
    pub coeff: &'a GQ,
    pub key: &'a TermKey,
}

/// Finite sum of normal-ordered terms over `n` base pairs. The empty sum is
/// the zero operator.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeylOperator {
    n: usize,
    terms: BTreeMap<TermKey, GQ>,
}

/// Weight `C(k,j)·C(m,j)·j!` of the `j`-fold contraction in
/// `∂^k ∘ u^m = Σ_j C(k,j) C(m,j) j! u^{m-j} ∂^{k-j}`.
fn contraction_weight(k: u32, m: u32, j: u32) -> BigInt {
    let mut w = BigInt::one();
    // C(k,j)·C(m,j)·j! = k!/(k-j)! · m!/(m-j)! / j!
    for t in 0..j {
        w *= BigInt::from(k - t) * BigInt::from(m - t);
    }
    for t in 1..=j {
        w /= BigInt::from(t);
    }
    w
}

impl WeylOperator {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n: usize, c: GQ) -> Self {
        let mut op = Self::zero(n);
        op.add_term(TermKey::constant(n), c);
        op
    }

    pub fn identity(n: usize) -> Self {
        Self::constant(n, GQ::one())
    }

    /// Multiplication by the variable `v_j` (zero-based `j`).
    pub fn var(n: usize, v: Var, j: usize) -> Self {
        let mut key = TermKey::constant(n);
        *key.var_mut(v) = MultiIndex::unit(n, j, 1);
        Self::from_term(n, key, GQ::one())
    }

    /// The partial derivative `∂/∂v_j` (zero-based `j`).
    pub fn der(n: usize, v: Var, j: usize) -> Self {
        let mut key = TermKey::constant(n);
        *key.der_mut(v) = MultiIndex::unit(n, j, 1);
        Self::from_term(n, key, GQ::one())
    }

    pub fn from_term(n: usize, key: TermKey, coeff: GQ) -> Self {
        let mut op = Self::zero(n);
        op.add_term(key, coeff);
        op
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (TermKey, GQ)>) -> Self {
        let mut op = Self::zero(n);
        for (k, c) in terms {
            op.add_term(k, c);
        }
        op
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical order: descending lexicographic on the exponent
    /// tuple, so higher powers of `x` come first and constants last.
    pub fn terms(&self) -> impl Iterator<Item = WeylTerm<'_>> {
        self.terms
            .iter()
            .rev()
            .map(|(key, coeff)| WeylTerm { coeff, key })
    }

    pub fn term_map(&self) -> &BTreeMap<TermKey, GQ> {
        &self.terms
    }

    pub fn coeff(&self, key: &TermKey) -> GQ {
        self.terms.get(key).cloned().unwrap_or_default()
    }

    pub fn constant_part(&self) -> GQ {
        self.coeff(&TermKey::constant(self.n))
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(TermKey::is_constant)
    }

    fn add_term(&mut self, key: TermKey, coeff: GQ) {
        debug_assert_eq!(key.n(), self.n);
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check_dims(&self, other: &Self) -> Result<(), WeylError> {
        if self.n != other.n {
            return Err(WeylError::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(())
    }

    pub fn scale(&self, c: &GQ) -> Self {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        Self {
            n: self.n,
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, WeylError> {
        self.check_dims(other)?;
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, WeylError> {
        self.checked_add(&other.scale(&GQ::from_int(-1)))
    }

    /// `self + scalar·other`.
    pub fn checked_axpy(&self, scalar: &GQ, other: &Self) -> Result<Self, WeylError> {
        self.check_dims(other)?;
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c * scalar);
        }
        Ok(out)
    }

    /// The product `self ∘ other`, rewritten into normal order.
    pub fn checked_compose(&self, other: &Self) -> Result<Self, WeylError> {
        self.check_dims(other)?;
        let n = self.n;
        let mut out = Self::zero(n);
        for (ka, ca) in &self.terms {
            for (kb, cb) in &other.terms {
                let coeff = ca * cb;
                let base = TermKey {
                    x: ka.x.add(&kb.x),
                    y: ka.y.add(&kb.y),
                    q: ka.q.add(&kb.q),
                    dx: ka.dx.add(&kb.dx),
                    dy: ka.dy.add(&kb.dy),
                    dq: ka.dq.add(&kb.dq),
                };
                let mut partial = vec![(BigInt::one(), base)];
                for v in Var::ALL {
                    for j in 0..n {
                        let k = ka.der(v).get(j);
                        let m = kb.var(v).get(j);
                        if k == 0 || m == 0 {
                            continue;
                        }
                        let mut next = Vec::with_capacity(partial.len() * (k.min(m) as usize + 1));
                        for (w, key) in &partial {
                            for c in 0..=k.min(m) {
                                let mut key = key.clone();
                                let e = key.var(v).get(j) - c;
                                key.var_mut(v).set(j, e);
                                let e = key.der(v).get(j) - c;
                                key.der_mut(v).set(j, e);
                                next.push((w * contraction_weight(k, m, c), key));
                            }
                        }
                        partial = next;
                    }
                }
                for (w, key) in partial {
                    out.add_term(key, &coeff * &GQ::from_bigint(w));
                }
            }
        }
        Ok(out)
    }

    /// `[self, other] = self∘other − other∘self`.
    pub fn checked_commutator(&self, other: &Self) -> Result<Self, WeylError> {
        let ab = self.checked_compose(other)?;
        let ba = other.checked_compose(self)?;
        ab.checked_sub(&ba)
    }

    pub fn compose(&self, other: &Self) -> Self {
        self.checked_compose(other).expect("operator dimensions differ")
    }

    pub fn commutator(&self, other: &Self) -> Self {
        self.checked_commutator(other)
            .expect("operator dimensions differ")
    }

    /// Adjoint under the sesquilinear factorial (Fischer) pairing: each
    /// variable trades places with its derivative and coefficients are
    /// conjugated. `(x^a ∂^d)† = x^d ∂^a` is already normal-ordered.
    pub fn fischer_adjoint(&self) -> Self {
        Self::from_terms(
            self.n,
            self.terms.iter().map(|(k, c)| (k.swapped(), c.conj())),
        )
    }

    /// Transpose under the bilinear factorial pairing: like
    /// [`fischer_adjoint`](Self::fischer_adjoint) but without conjugation.
    pub fn fischer_transpose(&self) -> Self {
        Self::from_terms(
            self.n,
            self.terms.iter().map(|(k, c)| (k.swapped(), c.clone())),
        )
    }

    /// Set of base-degree shifts of the terms.
    pub fn base_shifts(&self) -> std::collections::BTreeSet<i64> {
        self.terms.keys().map(TermKey::base_shift).collect()
    }

    /// Set of spinor-degree shifts of the terms.
    pub fn spinor_shifts(&self) -> std::collections::BTreeSet<i64> {
        self.terms.keys().map(TermKey::spinor_shift).collect()
    }

    /// If `self == c · other` for a single scalar `c`, returns it.
    pub fn ratio_to(&self, other: &Self) -> Option<GQ> {
        if self.n != other.n {
            return None;
        }
        if other.is_zero() {
            return self.is_zero().then(GQ::zero);
        }
        let (k0, c0) = other.terms.iter().next()?;
        let c = self.coeff(k0).checked_div(c0).ok()?;
        (other.scale(&c) == *self).then_some(c)
    }

    pub fn to_serial(&self) -> SerialOperator {
        SerialOperator {
            n: self.n,
            terms: self
                .terms()
                .map(|t| SerialTerm {
                    coeff: t.coeff.clone(),
                    x: t.key.x.clone(),
                    y: t.key.y.clone(),
                    q: t.key.q.clone(),
                    dx: t.key.dx.clone(),
                    dy: t.key.dy.clone(),
                    dq: t.key.dq.clone(),
                })
                .collect(),
        }
    }

    pub fn from_serial(s: &SerialOperator) -> Result<Self, WeylError> {
        let mut op = Self::zero(s.n);
        for t in &s.terms {
            let key = TermKey {
                x: t.x.clone(),
                y: t.y.clone(),
                q: t.q.clone(),
                dx: t.dx.clone(),
                dy: t.dy.clone(),
                dq: t.dq.clone(),
            };
            if Var::ALL
                .iter()
                .any(|&v| key.var(v).len() != s.n || key.der(v).len() != s.n)
            {
                return Err(WeylError::Malformed(format!(
                    "exponent list length differs from n = {}",
                    s.n
                )));
            }
            op.add_term(key, t.coeff.clone());
        }
        Ok(op)
    }
}

macro_rules! operator_binop {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl std::ops::$tr<&WeylOperator> for &WeylOperator {
            type Output = WeylOperator;
            fn $m(self, rhs: &WeylOperator) -> WeylOperator {
                self.$checked(rhs).expect("operator dimensions differ")
            }
        }
        impl std::ops::$tr<WeylOperator> for WeylOperator {
            type Output = WeylOperator;
            fn $m(self, rhs: WeylOperator) -> WeylOperator {
                (&self).$m(&rhs)
            }
        }
        impl std::ops::$tr<&WeylOperator> for WeylOperator {
            type Output = WeylOperator;
            fn $m(self, rhs: &WeylOperator) -> WeylOperator {
                (&self).$m(rhs)
            }
        }
        impl std::ops::$tr<WeylOperator> for &WeylOperator {
            type Output = WeylOperator;
            fn $m(self, rhs: WeylOperator) -> WeylOperator {
                self.$m(&rhs)
            }
        }
    };
}

operator_binop!(Add, add, checked_add);
operator_binop!(Sub, sub, checked_sub);
// `a * b` is composition.
operator_binop!(Mul, mul, checked_compose);

impl std::ops::Neg for &WeylOperator {
    type Output = WeylOperator;
    fn neg(self) -> WeylOperator {
        self.scale(&GQ::from_int(-1))
    }
}

/// JSON-compatible term list form of an operator.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SerialOperator {
    pub n: usize,
    pub terms: Vec<SerialTerm>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SerialTerm {
    pub coeff: GQ,
    pub x: MultiIndex,
    pub y: MultiIndex,
    pub q: MultiIndex,
    pub dx: MultiIndex,
    pub dy: MultiIndex,
    pub dq: MultiIndex,
}
