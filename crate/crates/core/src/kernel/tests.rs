use super::*;
use crate::space::holomorphic_element;

fn plain() -> SpinorModel {
    SpinorModel::Plain
}

fn weighted() -> SpinorModel {
    SpinorModel::GaussianWeighted
}

#[test]
fn basis_sizes() {
    for n in 1..=3 {
        for k in 0..=3 {
            for m in 0..=3 {
                let b = GradedBasis::new(n, k, m);
                assert_eq!(b.len(), GradedBasis::expected_size(n, k, m));
                assert!(b.monomials.windows(2).all(|w| w[0] < w[1]));
            }
        }
    }
    assert_eq!(GradedBasis::new(1, 1, 0).len(), 2);
}

#[test]
fn degree_zero_is_annihilated() {
    let ds = catalog("D_s", 1, &[]).unwrap();
    let src = GradedBasis::new(1, 0, 2);
    let (mat, cod) = operator_matrix(&ds, &src, plain(), MatrixUse::Kernel).unwrap();
    assert!(cod.is_empty());
    assert_eq!((mat.rows(), mat.cols(), mat.nnz()), (0, 3, 0));
    let r = monogenic_dims(1, 0, 2, plain());
    assert_eq!(r.dim_ker_ds, 3);
    assert_eq!(r.dim_joint, 3);
}

#[test]
fn ds_on_linear_block() {
    let ds = catalog("D_s", 1, &[]).unwrap();
    let src = GradedBasis::new(1, 1, 0);
    let (mat, cod) = operator_matrix(&ds, &src, plain(), MatrixUse::Kernel).unwrap();
    assert_eq!(cod.k, 0);
    assert_eq!(cod.m, 1);
    let y = src
        .monomials
        .iter()
        .position(|m| m.y.get(0) == 1)
        .unwrap();
    let mut q = Monomial::one(1);
    q.q.set(0, 1);
    let row = cod.position(&q).unwrap();
    assert_eq!(mat.get(row, y), GQ::i());
    assert_eq!(mat.nnz(), 1);
}

#[test]
fn non_graded_rejected_for_kernels() {
    let h = catalog("X_s", 1, &[]).unwrap() + catalog("D_s", 1, &[]).unwrap();
    let src = GradedBasis::new(1, 2, 1);
    assert!(matches!(
        operator_matrix(&h, &src, plain(), MatrixUse::Kernel),
        Err(KernelError::NonGraded(_))
    ));
}

#[test]
fn matrix_columns_match_apply() {
    for model in [plain(), weighted()] {
        for name in ["D_s", "Dt_s", "X_s", "O"] {
            let a = catalog(name, 2, &[]).unwrap();
            let src = GradedBasis::new(2, 2, 2);
            let (mat, cod) = operator_matrix(&a, &src, model, MatrixUse::Kernel).unwrap();
            for (col, mono) in src.monomials.iter().enumerate() {
                let img = apply(&a, &SpinorElement::monomial(model, mono.clone(), GQ::one())).unwrap();
                for (row, m) in cod.monomials.iter().enumerate() {
                    assert_eq!(mat.get(row, col), img.coeff(m), "{name} {model:?}");
                }
            }
        }
    }
}

#[test]
fn kernel_vectors_are_kernel_elements() {
    let ds = catalog("D_s", 1, &[]).unwrap();
    let src = GradedBasis::new(1, 2, 3);
    let (mat, _) = operator_matrix(&ds, &src, weighted(), MatrixUse::Kernel).unwrap();
    let ns = mat.nullspace();
    assert_eq!(ns.len(), mat.nullity());
    for v in ns {
        let f = SpinorElement::from_terms(
            1,
            weighted(),
            src.monomials.iter().cloned().zip(v.iter().cloned()),
        );
        assert!(apply(&ds, &f).unwrap().is_zero());
    }
}

#[test]
fn weighted_joint_kernel_contains_holomorphic_class() {
    let r = monogenic_dims(1, 1, 2, weighted());
    assert!(r.dim_joint >= 1);
    let r = monogenic_dims(2, 2, 2, weighted());
    assert_eq!(r.holomorphic_lower_bound, Some(3));
    assert!(r.dim_joint >= 3);
    assert!(r.dim_joint <= r.dim_ker_ds.min(r.dim_ker_ds_tilde));
}

#[test]
fn holomorphic_elements_lie_in_the_computed_kernel() {
    let n = 2;
    let k = 3;
    let src = GradedBasis::new(n, k, 1);
    let ds = catalog("D_s", n, &[]).unwrap();
    let dt = catalog("Dt_s", n, &[]).unwrap();
    let (a, _) = operator_matrix(&ds, &src, weighted(), MatrixUse::Kernel).unwrap();
    let (b, _) = operator_matrix(&dt, &src, weighted(), MatrixUse::Kernel).unwrap();
    let joint = a.vstack(&b);
    for alpha in MultiIndex::all_of_degree(n, k) {
        let h = holomorphic_element(&alpha);
        let mut v = vec![GQ::zero(); src.len()];
        for (m, c) in h.terms() {
            v[src.position(m).unwrap()] = c.clone();
        }
        assert!(joint.mul_vec(&v).iter().all(GQ::is_zero));
    }
}

#[test]
fn joint_kernel_monotone_in_spinor_cap() {
    for model in [plain(), weighted()] {
        for n in 1..=2 {
            for k in 0..=3 {
                let mut last = 0;
                for m in 0..=4 {
                    let d = monogenic_dims(n, k, m, model).dim_joint;
                    assert!(d >= last, "n={n} k={k} m={m} {model:?}");
                    last = d;
                }
            }
        }
    }
}

#[test]
fn hermite_spectrum() {
    let n1 = hermite_eigenspaces(1, 4);
    assert_eq!(n1[0].eigenvalue, GQ::ratio(-1, 2));
    assert!(n1.iter().all(|e| e.dimension == 1));
    let n2 = hermite_eigenspaces(2, 3);
    assert_eq!(n2[3].eigenvalue, GQ::from_int(-4));
    assert_eq!(n2[3].dimension, 4);
    assert_eq!(n2[3].csv_row(), "3,-4,4");
    let n3 = hermite_eigenspaces(3, 0);
    assert_eq!((n3[0].eigenvalue.clone(), n3[0].dimension), (GQ::ratio(-3, 2), 1));
}

#[test]
fn hermite_matrix_is_triangular_with_expected_diagonal() {
    let n = 2;
    let h = catalog("H", n, &[]).unwrap();
    let src = GradedBasis::new(n, 0, 4);
    let (mat, _) = operator_matrix(&h, &src, weighted(), MatrixUse::Spectrum).unwrap();
    for (r, c, _) in mat.triples() {
        let (dr, dc) = (src.monomials[r].spinor_degree(), src.monomials[c].spinor_degree());
        assert!(dr <= dc);
        if r == c {
            let expected = -(&GQ::from_int(i64::from(dc)) + &GQ::ratio(n as i64, 2));
            assert_eq!(mat.get(r, c), expected);
        } else {
            assert!(dr < dc);
        }
    }
    // The plain model raises spinor degree, so a square truncation fails.
    assert!(matches!(
        operator_matrix(&h, &src, plain(), MatrixUse::Spectrum),
        Err(KernelError::Truncation(_))
    ));
}

#[test]
fn oscillator_identity() {
    for n in 1..=3 {
        let s = oscillator_split(n);
        assert!(s.holds, "{}", s.difference);
        assert_eq!(s.difference, "0");
    }
    let bad = catalog("H", 1, &[]).unwrap() + WeylOperator::identity(1);
    let s = oscillator_split_with(1, &bad);
    assert!(!s.holds);
    assert_eq!(s.difference, "-2");
}
