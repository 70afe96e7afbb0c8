//! Lie-algebraic verification: spans and closures of operators or matrices,
//! structure constants, Jacobi and Killing-form checks, the matrix models and
//! the comparison against the printed commutator table.

pub mod matrix;
pub mod span;
pub mod table;

pub use matrix::{membership, phi_map, ComplexMatrix, MatrixError, Predicate};
pub use span::{
    jacobi_check, killing_signature, real_form_rescale, span_closure, Closure, LieElement,
    LieError, LieSpan, Rescale, Signature, SpanField, StructureConstants,
};
pub use table::{paper_table_diff, CellStatus, TableDiff};

use std::collections::BTreeMap;

use crate::arith::GQ;
use crate::weyl::{TermKey, WeylOperator};

impl LieElement for WeylOperator {
    type Key = TermKey;

    fn bracket(&self, other: &Self) -> Self {
        self.commutator(other)
    }

    fn coordinates(&self) -> BTreeMap<TermKey, GQ> {
        self.term_map().clone()
    }

    fn constant_part(&self) -> GQ {
        WeylOperator::constant_part(self)
    }

    fn unit_like(&self) -> Option<Self> {
        Some(WeylOperator::identity(self.n()))
    }

    fn scaled(&self, c: &GQ) -> Self {
        self.scale(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::{catalog, family, Family};

    fn op(name: &str, n: usize) -> WeylOperator {
        catalog(name, n, &[]).unwrap()
    }

    fn named(names: &[&str], n: usize) -> Vec<(String, WeylOperator)> {
        names.iter().map(|s| (s.to_string(), op(s, n))).collect()
    }

    fn generators(names: &[&str]) -> Vec<(String, WeylOperator)> {
        names
            .iter()
            .map(|s| (s.to_string(), catalog(s, 1, &[1]).unwrap()))
            .collect()
    }

    #[test]
    fn sl2_triple_closes() {
        for n in 1..=3 {
            let c = span_closure(named(&["D_s", "X_s", "E+n"], n), false, SpanField::ComplexSpan, 10)
                .unwrap();
            assert_eq!(c.span.dim(), 3);
            assert!(jacobi_check(&c.constants).is_empty());
            assert!(c.constants.is_antisymmetric());
            // [D_s, X_s] = -i (E+n)
            assert_eq!(c.constants.c[0][1], vec![GQ::zero(), GQ::zero(), -GQ::i()]);
        }
    }

    #[test]
    fn sl2_rescale_and_signature() {
        let c = span_closure(named(&["D_s", "X_s", "E+n"], 1), false, SpanField::ComplexSpan, 10)
            .unwrap();
        assert!(killing_signature(&c.constants).is_err());
        let r = real_form_rescale(&c.constants);
        assert!(r.success);
        let real = c.constants.rescaled(&r.scalars);
        assert!(real.is_real());
        let s = killing_signature(&real).unwrap();
        assert_eq!((s.positive, s.negative, s.zero), (2, 1, 0));
    }

    #[test]
    fn real_constants_need_no_rescale() {
        let c = span_closure(generators(&["x", "dx"]), true, SpanField::ComplexSpan, 10).unwrap();
        assert_eq!(c.span.dim(), 3);
        assert!(c.span.central.is_some());
        let r = real_form_rescale(&c.constants);
        assert!(r.success);
        assert!(r.scalars.iter().all(GQ::is_one));
        assert_eq!(c.reduced_dim(), 2);
        let q = c.reduced_constants();
        assert!(q.c.iter().flatten().flatten().all(GQ::is_zero));
    }

    #[test]
    fn constant_without_permission_is_a_basis_element_only_if_reached() {
        let c = span_closure(generators(&["x", "dx"]), false, SpanField::ComplexSpan, 10).unwrap();
        // The constant still shows up as an ordinary bracket result.
        assert_eq!(c.span.dim(), 3);
        assert!(c.span.central.is_none());
    }

    #[test]
    fn jacobi_detects_fault() {
        let c = span_closure(named(&["D_s", "X_s", "E+n"], 1), false, SpanField::ComplexSpan, 10)
            .unwrap();
        let mut bad = c.constants.clone();
        // [D_s, X_s] picks up an extra D_s.
        bad.c[0][1][0] += &GQ::one();
        bad.c[1][0][0] -= &GQ::one();
        let v = jacobi_check(&bad);
        assert!(!v.is_empty());
        assert!(v.iter().any(|w| w.triple == (0, 1, 2)));
    }

    #[test]
    fn cap_is_reported() {
        let mut gens = generators(&["x", "dx", "q", "dq"]);
        gens.push(("r2".to_string(), op("r2", 1)));
        let err = span_closure(gens, true, SpanField::ComplexSpan, 5)
            .unwrap_err();
        assert!(matches!(err, LieError::CapExceeded { cap: 5, .. }));
    }

    #[test]
    fn unitary_family_closes_at_n_squared() {
        for n in 1..=3 {
            let c = span_closure(family(Family::Unitary, n), false, SpanField::ComplexSpan, 50)
                .unwrap();
            assert_eq!(c.span.dim(), n * n);
        }
    }

    #[test]
    fn eight_operator_span() {
        let names = ["D_s", "Dt_s", "Delta", "X_s", "Xt_s", "E+n", "O", "r2"];
        let mut previous: Option<StructureConstants> = None;
        for n in 1..=2 {
            let c = span_closure(named(&names, n), true, SpanField::ComplexSpan, 20).unwrap();
            assert_eq!(c.reduced_dim(), 8);
            let q = c.reduced_constants();
            assert!(jacobi_check(&q).is_empty());
            assert_eq!(q.killing_rank(), 8);
            let r = real_form_rescale(&q);
            assert!(r.success);
            let s = killing_signature(&q.rescaled(&r.scalars)).unwrap();
            assert_eq!((s.positive, s.negative, s.zero), (4, 4, 0));
            if let Some(p) = &previous {
                assert_eq!(p.c, q.c);
            }
            previous = Some(q);
        }
    }
}
