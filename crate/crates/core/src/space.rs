//! Spinor-valued polynomials and the action of Weyl operators on them.
//!
//! A [`SpinorElement`] is a polynomial in `x, y, q`. In the
//! [`SpinorModel::GaussianWeighted`] model the stored polynomial `p` stands
//! for `p · exp(-|q|²/2)`; the exponential is never represented; derivatives
//! in `q` pick up the product-rule term instead.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::GQ;
use crate::weyl::{MultiIndex, TermKey, Var, WeylOperator};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpaceError {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("spinor model mismatch: {left:?} vs {right:?}")]
    ModelMismatch { left: SpinorModel, right: SpinorModel },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SpinorModel {
    Plain,
    #[serde(rename = "weighted", alias = "gaussian-weighted")]
    GaussianWeighted,
}

impl SpinorModel {
    pub fn label(self) -> &'static str {
        match self {
            SpinorModel::Plain => "plain",
            SpinorModel::GaussianWeighted => "weighted",
        }
    }
}

/// Exponents of `x^a y^b q^g`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Monomial {
    pub x: MultiIndex,
    pub y: MultiIndex,
    pub q: MultiIndex,
}

impl Monomial {
    pub fn one(n: usize) -> Self {
        Self {
            x: MultiIndex::zeros(n),
            y: MultiIndex::zeros(n),
            q: MultiIndex::zeros(n),
        }
    }

    pub fn n(&self) -> usize {
        self.x.len()
    }

    pub fn part(&self, v: Var) -> &MultiIndex {
        match v {
            Var::X => &self.x,
            Var::Y => &self.y,
            Var::Q => &self.q,
        }
    }

    fn part_mut(&mut self, v: Var) -> &mut MultiIndex {
        match v {
            Var::X => &mut self.x,
            Var::Y => &mut self.y,
            Var::Q => &mut self.q,
        }
    }

    pub fn base_degree(&self) -> u32 {
        self.x.degree() + self.y.degree()
    }

    pub fn spinor_degree(&self) -> u32 {
        self.q.degree()
    }

    pub fn times(&self, other: &Self) -> Self {
        Self {
            x: self.x.add(&other.x),
            y: self.y.add(&other.y),
            q: self.q.add(&other.q),
        }
    }

    /// `a!·b!·g!` over all exponents: the squared norm under the factorial
    /// pairing.
    pub fn factorial_weight(&self) -> BigInt {
        let mut w = BigInt::one();
        for v in Var::ALL {
            for &e in self.part(v).as_slice() {
                for t in 2..=e {
                    w *= BigInt::from(t);
                }
            }
        }
        w
    }

    /// Every monomial in `3n` variables of total degree at most `cap`.
    pub fn all_up_to(n: usize, cap: u32) -> Vec<Self> {
        let mut out = Vec::new();
        for d in 0..=cap {
            for e in MultiIndex::all_of_degree(3 * n, d) {
                let s = e.as_slice();
                out.push(Self {
                    x: MultiIndex::from_vec(s[..n].to_vec()),
                    y: MultiIndex::from_vec(s[n..2 * n].to_vec()),
                    q: MultiIndex::from_vec(s[2 * n..].to_vec()),
                });
            }
        }
        out
    }
}

/// A truncated model element of `P(R^{2n}) ⊗ S`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpinorElement {
    n: usize,
    model: SpinorModel,
    coeffs: BTreeMap<Monomial, GQ>,
}

impl SpinorElement {
    pub fn zero(n: usize, model: SpinorModel) -> Self {
        Self {
            n,
            model,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn monomial(model: SpinorModel, mono: Monomial, c: GQ) -> Self {
        let mut e = Self::zero(mono.n(), model);
        e.add_term(mono, c);
        e
    }

    pub fn from_terms(
        n: usize,
        model: SpinorModel,
        terms: impl IntoIterator<Item = (Monomial, GQ)>,
    ) -> Self {
        let mut e = Self::zero(n, model);
        for (m, c) in terms {
            e.add_term(m, c);
        }
        e
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn model(&self) -> SpinorModel {
        self.model
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &GQ)> {
        self.coeffs.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> GQ {
        self.coeffs.get(m).cloned().unwrap_or_default()
    }

    pub fn with_model(mut self, model: SpinorModel) -> Self {
        self.model = model;
        self
    }

    fn add_term(&mut self, m: Monomial, c: GQ) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(m).or_default();
        *slot += &c;
        if slot.is_zero() {
            self.coeffs.retain(|_, v| !v.is_zero());
        }
    }

    fn check(&self, other: &Self) -> Result<(), SpaceError> {
        if self.n != other.n {
            return Err(SpaceError::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        if self.model != other.model {
            return Err(SpaceError::ModelMismatch {
                left: self.model,
                right: other.model,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, SpaceError> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.coeffs {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &GQ) -> Self {
        Self::from_terms(
            self.n,
            self.model,
            self.coeffs.iter().map(|(m, v)| (m.clone(), v * c)),
        )
    }

    /// Polynomial product of the stored parts (the model of `self` is kept).
    pub fn poly_mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.n, self.model);
        for (ma, ca) in &self.coeffs {
            for (mb, cb) in &other.coeffs {
                out.add_term(ma.times(mb), ca * cb);
            }
        }
        out
    }

    pub fn to_serial(&self) -> SerialElement {
        SerialElement {
            n: self.n,
            model: self.model,
            terms: self
                .coeffs
                .iter()
                .map(|(m, c)| SerialMonomial {
                    coeff: c.clone(),
                    x: m.x.clone(),
                    y: m.y.clone(),
                    q: m.q.clone(),
                })
                .collect(),
        }
    }
}

/// Exponent-tuple → coefficient form of an element.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SerialElement {
    pub n: usize,
    pub model: SpinorModel,
    pub terms: Vec<SerialMonomial>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SerialMonomial {
    pub coeff: GQ,
    pub x: MultiIndex,
    pub y: MultiIndex,
    pub q: MultiIndex,
}

/// `∂^d (v^e) = e!/(e-d)! v^{e-d}` applied to one monomial for the given
/// derivative exponents. Returns `None` when the result vanishes.
fn differentiate(
    mono: &Monomial,
    der: impl Fn(Var) -> MultiIndex,
    groups: &[Var],
) -> Option<(Monomial, BigInt)> {
    let mut out = mono.clone();
    let mut w = BigInt::one();
    for &v in groups {
        let d = der(v);
        for j in 0..mono.n() {
            let (e, k) = (mono.part(v).get(j), d.get(j));
            if k > e {
                return None;
            }
            for t in 0..k {
                w *= BigInt::from(e - t);
            }
            out.part_mut(v).set(j, e - k);
        }
    }
    Some((out, w))
}

fn multiply_vars(mono: &Monomial, key: &TermKey) -> Monomial {
    Monomial {
        x: mono.x.add(&key.x),
        y: mono.y.add(&key.y),
        q: mono.q.add(&key.q),
    }
}

fn apply_plain_term(key: &TermKey, c: &GQ, f: &SpinorElement, out: &mut SpinorElement) {
    for (mono, fc) in &f.coeffs {
        if let Some((m, w)) = differentiate(mono, |v| key.der(v).clone(), &Var::ALL) {
            out.add_term(multiply_vars(&m, key), c * fc * GQ::from_bigint(w));
        }
    }
}

/// Weighted model: `∂q_j (p·w) = (∂q_j p − q_j p)·w` for `w = exp(-|q|²/2)`.
fn apply_weighted_term(key: &TermKey, c: &GQ, f: &SpinorElement, out: &mut SpinorElement) {
    let n = f.n;
    let mut poly: BTreeMap<Monomial, GQ> = BTreeMap::new();
    for (mono, fc) in &f.coeffs {
        if let Some((m, w)) = differentiate(mono, |v| key.der(v).clone(), &[Var::X, Var::Y]) {
            *poly.entry(m).or_default() += fc * &GQ::from_bigint(w);
        }
    }
    for j in 0..n {
        for _ in 0..key.dq.get(j) {
            let mut next: BTreeMap<Monomial, GQ> = BTreeMap::new();
            for (mono, pc) in &poly {
                let e = mono.q.get(j);
                if e > 0 {
                    let mut m = mono.clone();
                    m.q.set(j, e - 1);
                    *next.entry(m).or_default() += pc * &GQ::from_int(i64::from(e));
                }
                let mut m = mono.clone();
                m.q.set(j, e + 1);
                *next.entry(m).or_default() -= pc;
            }
            next.retain(|_, v| !v.is_zero());
            poly = next;
        }
    }
    for (mono, pc) in poly {
        out.add_term(multiply_vars(&mono, key), c * &pc);
    }
}

/// The action of `a` on `f` in `f`'s spinor model. Never truncates.
pub fn apply(a: &WeylOperator, f: &SpinorElement) -> Result<SpinorElement, SpaceError> {
    if a.n() != f.n {
        return Err(SpaceError::DimensionMismatch {
            left: a.n(),
            right: f.n,
        });
    }
    let mut out = SpinorElement::zero(f.n, f.model);
    for t in a.terms() {
        match f.model {
            SpinorModel::Plain => apply_plain_term(t.key, t.coeff, f, &mut out),
            SpinorModel::GaussianWeighted => apply_weighted_term(t.key, t.coeff, f, &mut out),
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Pairing {
    /// Conjugate-linear in the first slot.
    Sesquilinear,
    Bilinear,
}

/// Factorial (Fischer) pairing `<x^a y^b q^g, x^a' y^b' q^g'> = δ·a!·b!·g!`,
/// conjugate-linear in `f`.
pub fn fischer_pair(f: &SpinorElement, g: &SpinorElement) -> Result<GQ, SpaceError> {
    pair_with(f, g, Pairing::Sesquilinear)
}

pub fn pair_with(f: &SpinorElement, g: &SpinorElement, kind: Pairing) -> Result<GQ, SpaceError> {
    f.check(g)?;
    let mut acc = GQ::zero();
    for (m, fc) in &f.coeffs {
        if let Some(gc) = g.coeffs.get(m) {
            let left = match kind {
                Pairing::Sesquilinear => fc.conj(),
                Pairing::Bilinear => fc.clone(),
            };
            acc += left * gc * GQ::from_bigint(m.factorial_weight());
        }
    }
    Ok(acc)
}

/// `Π_j (x_j + i y_j)^{α_j}` expanded, with spinor part 1, in the weighted
/// model.
pub fn holomorphic_element(alpha: &MultiIndex) -> SpinorElement {
    let n = alpha.len();
    let model = SpinorModel::GaussianWeighted;
    let mut acc = SpinorElement::monomial(model, Monomial::one(n), GQ::one());
    for j in 0..n {
        let mut zx = Monomial::one(n);
        zx.x.set(j, 1);
        let mut zy = Monomial::one(n);
        zy.y.set(j, 1);
        let z = SpinorElement::from_terms(n, model, [(zx, GQ::one()), (zy, GQ::i())]);
        for _ in 0..alpha.get(j) {
            acc = acc.poly_mul(&z);
        }
    }
    acc
}

/// `Π_j (x_j − i y_j)^{α_j}`, the anti-holomorphic counterpart.
pub fn antiholomorphic_element(alpha: &MultiIndex) -> SpinorElement {
    let h = holomorphic_element(alpha);
    SpinorElement::from_terms(
        h.n,
        h.model,
        h.coeffs.iter().map(|(m, c)| (m.clone(), c.conj())),
    )
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum ProbeOutcome {
    /// `<a f, g> = c <f, b g>` for every tested pair.
    Scalar { c: GQ },
    /// Some pair contradicts every candidate scalar.
    Inconsistent { f: String, g: String },
    /// Both sides vanished on every tested pair.
    Degenerate,
}

/// Tests `<a f, g> = c <f, b g>` over all monomial pairs of total degree at
/// most `degree_cap` (plain model) and returns the unique consistent `c`.
pub fn adjointness_probe(
    a: &WeylOperator,
    b: &WeylOperator,
    degree_cap: u32,
    kind: Pairing,
) -> Result<ProbeOutcome, SpaceError> {
    if a.n() != b.n() {
        return Err(SpaceError::DimensionMismatch {
            left: a.n(),
            right: b.n(),
        });
    }
    let n = a.n();
    let model = SpinorModel::Plain;
    let basis: Vec<SpinorElement> = Monomial::all_up_to(n, degree_cap)
        .into_iter()
        .map(|m| SpinorElement::monomial(model, m, GQ::one()))
        .collect();
    let af: Vec<SpinorElement> = basis.iter().map(|f| apply(a, f)).collect::<Result<_, _>>()?;
    let bg: Vec<SpinorElement> = basis.iter().map(|g| apply(b, g)).collect::<Result<_, _>>()?;
    let mut scalar: Option<GQ> = None;
    let describe = |e: &SpinorElement| {
        e.terms()
            .next()
            .map(|(m, _)| format!("x{:?} y{:?} q{:?}", m.x.as_slice(), m.y.as_slice(), m.q.as_slice()))
            .unwrap_or_default()
    };
    for (fi, f) in basis.iter().enumerate() {
        for (gi, g) in basis.iter().enumerate() {
            let lhs = pair_with(&af[fi], g, kind)?;
            let rhs = pair_with(f, &bg[gi], kind)?;
            let inconsistent = || ProbeOutcome::Inconsistent {
                f: describe(f),
                g: describe(g),
            };
            if rhs.is_zero() {
                if !lhs.is_zero() {
                    return Ok(inconsistent());
                }
                continue;
            }
            let c = lhs.checked_div(&rhs).expect("nonzero");
            match &scalar {
                None => scalar = Some(c),
                Some(s) if *s == c => {}
                Some(_) => return Ok(inconsistent()),
            }
        }
    }
    Ok(match scalar {
        Some(c) => ProbeOutcome::Scalar { c },
        None => ProbeOutcome::Degenerate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::catalog;
    use proptest::prelude::*;

    fn mono(n: usize, x: &[u32], y: &[u32], q: &[u32]) -> Monomial {
        let _ = n;
        Monomial {
            x: MultiIndex::from_vec(x.to_vec()),
            y: MultiIndex::from_vec(y.to_vec()),
            q: MultiIndex::from_vec(q.to_vec()),
        }
    }

    fn el(model: SpinorModel, x: &[u32], y: &[u32], q: &[u32]) -> SpinorElement {
        SpinorElement::monomial(model, mono(x.len(), x, y, q), GQ::one())
    }

    const P: SpinorModel = SpinorModel::Plain;
    const W: SpinorModel = SpinorModel::GaussianWeighted;

    #[test]
    fn dirac_on_small_monomials() {
        let ds = catalog("D_s", 1, &[]).unwrap();
        let r = apply(&ds, &el(P, &[1], &[0], &[1])).unwrap();
        assert_eq!(r, el(P, &[0], &[0], &[0]).scale(&GQ::from_int(-1)));
        let r = apply(&ds, &el(P, &[0], &[1], &[0])).unwrap();
        assert_eq!(r, el(P, &[0], &[0], &[1]).scale(&GQ::i()));
    }

    #[test]
    fn weighted_holomorphic_is_annihilated() {
        let z = holomorphic_element(&MultiIndex::from_vec(vec![1]));
        for name in ["D_s", "Dt_s"] {
            let op = catalog(name, 1, &[]).unwrap();
            assert!(apply(&op, &z).unwrap().is_zero(), "{name}");
        }
        // The plain model does not see the Gaussian, so z alone is not a solution.
        let ds = catalog("D_s", 1, &[]).unwrap();
        assert!(!apply(&ds, &z.clone().with_model(P)).unwrap().is_zero());
    }

    #[test]
    fn antiholomorphic_probe_survives() {
        let zbar = antiholomorphic_element(&MultiIndex::from_vec(vec![1]));
        let ds = catalog("D_s", 1, &[]).unwrap();
        // Residue q·(∂x + i∂y)(x − iy) = 2q.
        let r = apply(&ds, &zbar).unwrap();
        assert_eq!(r, el(W, &[0], &[0], &[1]).scale(&GQ::from_int(2)));
    }

    #[test]
    fn holomorphic_expansions() {
        let z2 = holomorphic_element(&MultiIndex::from_vec(vec![2]));
        let expect = SpinorElement::from_terms(
            1,
            W,
            [
                (mono(1, &[2], &[0], &[0]), GQ::one()),
                (mono(1, &[1], &[1], &[0]), GQ::complex((0, 1), (2, 1))),
                (mono(1, &[0], &[2], &[0]), GQ::from_int(-1)),
            ],
        );
        assert_eq!(z2, expect);
        assert_eq!(holomorphic_element(&MultiIndex::from_vec(vec![1, 1])).len(), 4);
    }

    #[test]
    fn pairing_values() {
        let x = el(P, &[1], &[0], &[0]);
        let y = el(P, &[0], &[1], &[0]);
        let x2q = el(P, &[2], &[0], &[1]);
        assert_eq!(fischer_pair(&x, &x).unwrap(), GQ::one());
        assert_eq!(fischer_pair(&x, &y).unwrap(), GQ::zero());
        assert_eq!(fischer_pair(&x2q, &x2q).unwrap(), GQ::from_int(2));
        let ix = x.scale(&GQ::i());
        assert_eq!(fischer_pair(&ix, &x).unwrap(), -GQ::i());
        assert!(matches!(fischer_pair(&x, &x.clone().with_model(W)), Err(SpaceError::ModelMismatch { .. })));
        assert!(fischer_pair(&x, &el(P, &[1, 0], &[0, 0], &[0, 0])).is_err());
    }

    #[test]
    fn probes() {
        let n = 1;
        let x = WeylOperator::var(n, Var::X, 0);
        let dx = WeylOperator::der(n, Var::X, 0);
        assert_eq!(
            adjointness_probe(&x, &dx, 3, Pairing::Sesquilinear).unwrap(),
            ProbeOutcome::Scalar { c: GQ::one() }
        );
        let e = catalog("E", n, &[]).unwrap();
        assert_eq!(
            adjointness_probe(&e, &e, 3, Pairing::Sesquilinear).unwrap(),
            ProbeOutcome::Scalar { c: GQ::one() }
        );
        let ds = catalog("D_s", n, &[]).unwrap();
        let xs = catalog("X_s", n, &[]).unwrap();
        assert!(matches!(
            adjointness_probe(&ds, &xs, 3, Pairing::Sesquilinear).unwrap(),
            ProbeOutcome::Inconsistent { .. }
        ));
        assert_eq!(
            adjointness_probe(&ds, &xs, 3, Pairing::Bilinear).unwrap(),
            ProbeOutcome::Scalar { c: GQ::i() }
        );
    }

    /// `e^{|q|²/2} ∘ a ∘ e^{-|q|²/2}`: every `∂q_j` becomes `∂q_j − q_j`.
    fn conjugated(a: &WeylOperator) -> WeylOperator {
        let n = a.n();
        let mut out = WeylOperator::zero(n);
        for t in a.terms() {
            let mut head = t.key.clone();
            head.dq = MultiIndex::zeros(n);
            let mut op = WeylOperator::from_term(n, head, t.coeff.clone());
            for j in 0..n {
                let shifted = WeylOperator::der(n, Var::Q, j) - WeylOperator::var(n, Var::Q, j);
                for _ in 0..t.key.dq.get(j) {
                    op = op * &shifted;
                }
            }
            out = out + op;
        }
        out
    }

    fn arb_element(n: usize, model: SpinorModel) -> impl Strategy<Value = SpinorElement> {
        prop::collection::vec((prop::collection::vec(0u32..3, 3 * n), -3i64..4, -3i64..4), 1..4)
            .prop_map(move |ts| {
                SpinorElement::from_terms(
                    n,
                    model,
                    ts.into_iter().map(|(e, re, im)| {
                        (
                            Monomial {
                                x: MultiIndex::from_vec(e[..n].to_vec()),
                                y: MultiIndex::from_vec(e[n..2 * n].to_vec()),
                                q: MultiIndex::from_vec(e[2 * n..].to_vec()),
                            },
                            GQ::complex((re, 1), (im, 1)),
                        )
                    }),
                )
            })
    }

    const NAMES: &[&str] = &["D_s", "Dt_s", "X_s", "Xt_s", "E+n", "O", "H", "Delta", "r2"];

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn action_is_a_module(ia in 0..NAMES.len(), ib in 0..NAMES.len(),
                              f in arb_element(2, P), g in arb_element(2, W)) {
            let a = catalog(NAMES[ia], 2, &[]).unwrap();
            let b = catalog(NAMES[ib], 2, &[]).unwrap();
            let ab = a.compose(&b);
            for h in [f, g] {
                prop_assert_eq!(apply(&ab, &h).unwrap(), apply(&a, &apply(&b, &h).unwrap()).unwrap());
            }
        }

        #[test]
        fn weighted_action_matches_conjugated_operator(ia in 0..NAMES.len(), f in arb_element(2, W)) {
            let a = catalog(NAMES[ia], 2, &[]).unwrap();
            let direct = apply(&a, &f).unwrap();
            let via_plain = apply(&conjugated(&a), &f.clone().with_model(P)).unwrap().with_model(W);
            prop_assert_eq!(direct, via_plain);
        }

        #[test]
        fn dirac_grading(f in arb_element(2, P)) {
            let ds = catalog("D_s", 2, &[]).unwrap();
            for (m, _) in f.terms() {
                let one = SpinorElement::monomial(P, m.clone(), GQ::one());
                for (r, _) in apply(&ds, &one).unwrap().terms() {
                    prop_assert_eq!(r.base_degree() + 1, m.base_degree());
                    prop_assert_eq!((i64::from(r.spinor_degree()) - i64::from(m.spinor_degree())).abs(), 1);
                }
            }
        }
    }

    #[test]
    fn holomorphic_annihilation_sweep() {
        for n in 1..=2usize {
            for d in 0..=5 {
                for alpha in MultiIndex::all_of_degree(n, d) {
                    let h = holomorphic_element(&alpha);
                    for name in ["D_s", "Dt_s"] {
                        let op = catalog(name, n, &[]).unwrap();
                        assert!(apply(&op, &h).unwrap().is_zero());
                    }
                    if d > 0 {
                        let hb = antiholomorphic_element(&alpha);
                        let ds = catalog("D_s", n, &[]).unwrap();
                        assert!(!apply(&ds, &hb).unwrap().is_zero());
                    }
                }
            }
        }
    }
}
