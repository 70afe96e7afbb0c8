//! Acceptance criteria 1-10. Every criterion prints one PASS/FAIL line; the
//! run then requires the failing set to be exactly `UNATTAINABLE`, so a
//! regression and an unexpected fix both show up as a test failure.

use std::time::{Duration, Instant};

use weyl_howe::kernel::{hermite_eigenspaces, monogenic_dims};
use weyl_howe::lie::matrix::{phi_map, ComplexMatrix};
use weyl_howe::lie::{
    jacobi_check, killing_signature, membership, paper_table_diff, real_form_rescale, span_closure,
    Predicate, SpanField,
};
use weyl_howe::space::{apply, holomorphic_element, SpinorModel};
use weyl_howe::verify::{run_suite, verify, SuiteResult};
use weyl_howe::weyl::{catalog, family, Family, MultiIndex, WeylOperator};
use weyl_howe::GQ;

/// Criteria that cannot pass as stated, with the reason printed on the line.
const UNATTAINABLE: &[u32] = &[4];

type Outcome = Result<String, String>;

fn op(name: &str, n: usize) -> WeylOperator {
    catalog(name, n, &[]).unwrap()
}

fn named(names: &[&str], n: usize) -> Vec<(String, WeylOperator)> {
    names.iter().map(|s| (s.to_string(), op(s, n))).collect()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn suite_ok(s: &SuiteResult) -> Result<(), String> {
    ensure(s.passed(), || {
        let bad: Vec<String> = s
            .checks
            .iter()
            .filter(|c| !c.status.is_pass())
            .map(|c| format!("{} ({})", c.name, c.witness.clone().unwrap_or_default()))
            .collect();
        format!("{}: {}", s.name, bad.join("; "))
    })
}

fn binom(a: u64, b: u64) -> u64 {
    (1..=b).fold(1, |acc, t| acc * (a + 1 - t) / t)
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    for n in 1..=3 {
        let en = op("E+n", n);
        let minus_i = -GQ::i();
        for (d, x) in [("D_s", "X_s"), ("Dt_s", "Xt_s")] {
            let (d, x) = (op(d, n), op(x, n));
            ensure(en.commutator(&x) == x, || format!("[E+n, X] != X at n = {n}"))?;
            ensure(en.commutator(&d) == -&d, || format!("[E+n, D] != -D at n = {n}"))?;
            ensure(d.commutator(&x) == en.scale(&minus_i), || {
                format!("[D, X] = {} at n = {n}", d.commutator(&x))
            })?;
        }
        suite_ok(&run_suite("sl2-relations", n))?;
    }
    let t = start.elapsed();
    ensure(t < Duration::from_secs(5), || format!("took {t:?}"))?;
    Ok(format!("n = 1..3, both triples, {t:.2?}"))
}

fn criterion_2() -> Outcome {
    let mut dims = Vec::new();
    for n in 1..=3 {
        let expected = 2 * n * n + n;
        let ds = op("D_s", n);
        let dt = op("Dt_s", n);
        for (f, target) in [(Family::SpFirst, &ds), (Family::SpSecondCorrected, &dt)] {
            let gens = family(f, n);
            for (label, g) in &gens {
                let c = g.commutator(target);
                ensure(c.is_zero(), || format!("[{label}, target] = {c} at n = {n}"))?;
            }
            let cl = span_closure(gens, false, SpanField::ComplexSpan, 100).map_err(|e| e.to_string())?;
            ensure(cl.span.dim() == expected, || {
                format!("{} closes at {} at n = {n}", f.label(), cl.span.dim())
            })?;
            ensure(jacobi_check(&cl.constants).is_empty(), || format!("Jacobi fails at n = {n}"))?;
            dims.push(cl.span.dim());
        }
        suite_ok(&run_suite("sp-closures", n))?;
    }
    let printed_fails = family(Family::SpSecond, 2)
        .iter()
        .any(|(_, g)| !g.commutator(&op("Dt_s", 2)).is_zero());
    Ok(format!(
        "dimensions {dims:?}; second family with Xt_jk spinor part q_j dq_k (printed q_k dq_j breaks invariance at n >= 2: {printed_fails})"
    ))
}

fn criterion_3() -> Outcome {
    let mut dims = Vec::new();
    for n in 1..=3 {
        let ds = op("D_s", n);
        let dt = op("Dt_s", n);
        let gens = family(Family::Unitary, n);
        ensure(gens.len() == n * n, || format!("{} generators at n = {n}", gens.len()))?;
        for (label, g) in &gens {
            ensure(g.commutator(&ds).is_zero() && g.commutator(&dt).is_zero(), || {
                format!("{label} fails at n = {n}")
            })?;
        }
        let cl = span_closure(gens, false, SpanField::ComplexSpan, 100).map_err(|e| e.to_string())?;
        ensure(cl.span.dim() == n * n, || format!("closes at {} at n = {n}", cl.span.dim()))?;
        dims.push(cl.span.dim());
    }
    Ok(format!("closure dimensions {dims:?}"))
}

fn criterion_4() -> Outcome {
    let names = ["D_s", "Dt_s", "Delta", "X_s", "Xt_s", "E+n", "O", "r2"];
    for n in 1..=3 {
        let cl = span_closure(named(&names, n), true, SpanField::ComplexSpan, 40).map_err(|e| e.to_string())?;
        ensure(cl.reduced_dim() == 8, || format!("dimension {} at n = {n}", cl.reduced_dim()))?;
        let q = cl.reduced_constants();
        ensure(q.killing_rank() == 8, || format!("Killing rank {} at n = {n}", q.killing_rank()))?;
        let r = real_form_rescale(&q);
        ensure(r.success, || "no unit rescaling".into())?;
        let s = killing_signature(&q.rescaled(&r.scalars)).map_err(|e| e.to_string())?;
        ensure((s.positive, s.negative, s.zero) == (4, 4, 0), || {
            format!("signature ({}, {}, {})", s.positive, s.negative, s.zero)
        })?;
    }
    let d = paper_table_diff(1);
    ensure(d.computed_antisymmetric && d.computed_jacobi, || {
        "computed table not antisymmetric or not Jacobi-consistent".into()
    })?;
    let mut flagged: Vec<(String, String)> = d.printed_antisymmetry_violations.clone();
    flagged.sort();
    ensure(
        flagged == vec![("E".to_string(), "r²".to_string()), ("O".to_string(), "~X".to_string())],
        || format!("printed antisymmetry violations {flagged:?}"),
    )?;
    let bad: Vec<String> = d
        .mismatches()
        .map(|c| format!("({}, {}) computed {} vs printed {}", c.row, c.col, c.computed, c.printed))
        .collect();
    ensure(bad.is_empty(), || {
        format!(
            "span dim 8, Killing rank 8, signature (4,4) and computed-table checks hold, but {} printed cells are neither exact nor unit-scalar/central-shift: {}",
            bad.len(),
            bad.join("; ")
        )
    })?;
    Ok("all 64 cells acceptable".into())
}

fn criterion_5() -> Outcome {
    for n in 1..=3 {
        for (a, b, c) in [("D_s", "Dt_s", "Delta"), ("X_s", "Xt_s", "r2")] {
            let cl = span_closure(named(&[a, b, c], n), false, SpanField::ComplexSpan, 10)
                .map_err(|e| e.to_string())?;
            ensure(cl.span.dim() == 3, || format!("span{{{a}, {b}, {c}}} has dim {}", cl.span.dim()))?;
            let (oa, ob, oc) = (op(a, n), op(b, n), op(c, n));
            ensure(oa.commutator(&ob).ratio_to(&oc).is_some_and(|r| !r.is_zero()), || {
                format!("[{a}, {b}] not a nonzero multiple of {c}")
            })?;
            ensure(oa.commutator(&oc).is_zero() && ob.commutator(&oc).is_zero(), || {
                format!("{c} not central")
            })?;
            // Two-step nilpotent: every double bracket vanishes.
            let basis = [&oa, &ob, &oc];
            for u in basis {
                for v in basis {
                    for w in basis {
                        ensure(u.commutator(&v.commutator(w)).is_zero(), || "not two-step nilpotent".into())?;
                    }
                }
            }
        }
        suite_ok(&run_suite("heisenberg-triples", n))?;
    }
    Ok("both triples, n = 1..3".into())
}

fn criterion_6() -> Outcome {
    for n in 1..=3 {
        let half = GQ::ratio(1, 2);
        let ds = op("D_s", n);
        let dt = op("Dt_s", n);
        let plus = (&ds + &dt.scale(&GQ::i())).scale(&half);
        let minus = (&ds - &dt.scale(&GQ::i())).scale(&half);
        let mut f_dz = WeylOperator::zero(n);
        let mut fd_dzb = WeylOperator::zero(n);
        for j in 1..=n {
            // Independent spelling of F_j, F_j^dag and the complex derivatives.
            let q = WeylOperator::var(n, weyl_howe::Var::Q, j - 1);
            let dq = WeylOperator::der(n, weyl_howe::Var::Q, j - 1);
            let dx = WeylOperator::der(n, weyl_howe::Var::X, j - 1);
            let dy = WeylOperator::der(n, weyl_howe::Var::Y, j - 1);
            let dz = (&dx - &dy.scale(&GQ::i())).scale(&half);
            let dzb = (&dx + &dy.scale(&GQ::i())).scale(&half);
            f_dz = f_dz + (&q + &dq) * dz;
            fd_dzb = fd_dzb + (&q - &dq) * dzb;
        }
        ensure(plus == -&f_dz, || format!("(D_s + i Dt_s)/2 + sum F dz = {}", &plus + &f_dz))?;
        ensure(minus == fd_dzb, || format!("(D_s - i Dt_s)/2 - sum F^dag dzbar = {}", &minus - &fd_dzb))?;
        suite_ok(&run_suite("dolbeault-identity", n))?;
    }
    Ok("both factorizations, n = 1..3".into())
}

fn criterion_7() -> Outcome {
    let mut seen = Vec::new();
    for n in 1..=3u64 {
        for e in hermite_eigenspaces(n as usize, 6) {
            let k = u64::from(e.k);
            let lambda = -(&GQ::from_int(k as i64) + &GQ::ratio(n as i64, 2));
            ensure(e.eigenvalue == lambda, || format!("eigenvalue {} at n = {n}, k = {k}", e.eigenvalue))?;
            ensure(e.dimension as u64 == binom(n + k - 1, k), || {
                format!("dimension {} at n = {n}, k = {k}", e.dimension)
            })?;
            if (n, k) == (2, 3) {
                seen.push(format!("(n=2, k=3) -> {} with eigenvalue {}", e.dimension, e.eigenvalue));
            }
        }
    }
    Ok(seen.join(""))
}

fn criterion_8() -> Outcome {
    let mut probes = 0;
    for n in 1..=2 {
        let ds = op("D_s", n);
        let dt = op("Dt_s", n);
        for d in 0..=5 {
            for alpha in MultiIndex::all_of_degree(n, d) {
                let h = holomorphic_element(&alpha);
                ensure(apply(&ds, &h).unwrap().is_zero() && apply(&dt, &h).unwrap().is_zero(), || {
                    format!("z^{:?} not annihilated", alpha.as_slice())
                })?;
                probes += 1;
            }
        }
        let zbar = weyl_howe::space::antiholomorphic_element(&MultiIndex::unit(n, 0, 1));
        ensure(!apply(&ds, &zbar).unwrap().is_zero(), || "zbar annihilated".into())?;
    }
    let mut blocks = 0;
    for n in 1..=2usize {
        for k in 0..=4u32 {
            for m in 0..=4u32 {
                let r = monogenic_dims(n, k, m, SpinorModel::GaussianWeighted);
                let bound = binom(n as u64 + u64::from(k) - 1, u64::from(k)) as usize;
                ensure(r.dim_joint >= bound, || format!("joint {} < {bound} at {:?}", r.dim_joint, (n, k, m)))?;
                blocks += 1;
            }
        }
    }
    Ok(format!("{probes} holomorphic monomials, {blocks} truncations"))
}

/// Integer-matrix oracle for the `Φ` conditions at `n = 2`.
fn criterion_9() -> Outcome {
    type M = [[i64; 4]; 4];
    fn mul(a: &M, b: &M) -> M {
        let mut c = [[0; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                c[i][j] = (0..4).map(|k| a[i][k] * b[k][j]).sum();
            }
        }
        c
    }
    fn t(a: &M) -> M {
        let mut c = [[0; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                c[i][j] = a[j][i];
            }
        }
        c
    }
    fn add(a: &M, b: &M, s: i64) -> M {
        let mut c = *a;
        for i in 0..4 {
            for j in 0..4 {
                c[i][j] += s * b[i][j];
            }
        }
        c
    }
    fn phi(a: [[i64; 2]; 2], b: [[i64; 2]; 2]) -> M {
        let mut m = [[0; 4]; 4];
        for i in 0..2 {
            for j in 0..2 {
                m[i][j] = a[i][j];
                m[i][j + 2] = b[i][j];
                m[i + 2][j] = -b[i][j];
                m[i + 2][j + 2] = a[i][j];
            }
        }
        m
    }
    let omega = phi([[0, 0], [0, 0]], [[1, 0], [0, 1]]);
    let j = add(&[[0; 4]; 4], &omega, -1);
    let zero2 = [[0; 2]; 2];
    let mut basis = vec![phi([[0, 1], [-1, 0]], zero2)];
    for b in [[[1, 0], [0, 0]], [[0, 0], [0, 1]], [[0, 1], [1, 0]]] {
        basis.push(phi(zero2, b));
    }
    for m in &basis {
        ensure(add(&mul(&t(m), &omega), &mul(&omega, m), 1) == [[0; 4]; 4], || format!("{m:?} not in sp"))?;
        ensure(mul(m, &j) == mul(&j, m), || format!("{m:?} does not commute with J"))?;
        // The library agrees on the same matrices.
        let cm = ComplexMatrix::from_ints(&m.iter().map(|r| &r[..]).collect::<Vec<_>>());
        ensure(membership(&cm, Predicate::SymplecticAlgebra) == Ok(true), || "library disagrees".into())?;
    }
    // Bracket preservation: Φ is linear, so [Φ(U), Φ(V)] = Φ([U, V]) is
    // checked through the complex form U = A + iB.
    for a in &basis {
        for b in &basis {
            let br = add(&mul(a, b), &mul(b, a), -1);
            let (ra, rb) = ([[br[0][0], br[0][1]], [br[1][0], br[1][1]]], [[br[0][2], br[0][3]], [br[1][2], br[1][3]]]);
            ensure(phi(ra, rb) == br, || "bracket leaves the image of phi".into())?;
            ensure(add(&mul(&t(&br), &omega), &mul(&omega, &br), 1) == [[0; 4]; 4], || "bracket not in sp".into())?;
        }
    }
    let id2 = [[1, 0], [0, 1]];
    let mut group = vec![phi(id2, zero2), omega];
    for p in [[[1, 0], [0, 1]], [[0, 1], [1, 0]]] {
        for s0 in [1, -1] {
            for s1 in [1, -1] {
                let sp = [[p[0][0] * s0, p[0][1] * s0], [p[1][0] * s1, p[1][1] * s1]];
                group.push(phi(sp, zero2));
                group.push(phi(zero2, sp));
            }
        }
    }
    for m in &group {
        ensure(mul(&mul(&t(m), &omega), m) == omega, || format!("{m:?} not symplectic"))?;
        ensure(mul(m, &j) == mul(&j, m), || format!("{m:?} does not commute with J"))?;
    }
    let shear: M = [[1, 0, 1, 0], [0, 1, 0, 1], [0, 0, 1, 0], [0, 0, 0, 1]];
    ensure(mul(&mul(&t(&shear), &omega), &shear) == omega && mul(&shear, &j) != mul(&j, &shear), || {
        "shear control".into()
    })?;
    let id = phi_map(&ComplexMatrix::identity(2), &ComplexMatrix::zeros(2, 2)).unwrap();
    ensure(membership(&id, Predicate::CommutesWithJ) == Ok(true), || "library disagrees".into())?;
    suite_ok(&run_suite("phi-lemma", 2))?;
    Ok(format!("{} algebra basis elements, {} group elements", basis.len(), group.len()))
}

fn criterion_10() -> Outcome {
    let start = Instant::now();
    let report = verify(3);
    let tv = start.elapsed();
    ensure(report.status.is_pass(), || "verify --n 3 reports failures".into())?;
    ensure(tv < Duration::from_secs(180), || format!("verify --n 3 took {tv:?}"))?;
    let start = Instant::now();
    let mut joint = Vec::new();
    for model in [SpinorModel::Plain, SpinorModel::GaussianWeighted] {
        let r = monogenic_dims(2, 6, 8, model);
        joint.push(r.dim_joint);
    }
    let tk = start.elapsed();
    ensure(tk < Duration::from_secs(300), || format!("kernel (2,6,8) took {tk:?}"))?;
    Ok(format!("verify --n 3 in {tv:.2?}; kernel (2,6,8) both models in {tk:.2?} (joint {joint:?})"))
}

fn main() {
    let criteria: [(u32, fn() -> Outcome); 10] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
        (10, criterion_10),
    ];
    let mut failing = Vec::new();
    for (id, f) in criteria {
        match f() {
            Ok(msg) => println!("criterion {id:>2}: PASS  {msg}"),
            Err(msg) => {
                println!("criterion {id:>2}: FAIL  {msg}");
                failing.push(id);
            }
        }
    }
    if failing != UNATTAINABLE {
        eprintln!("failing criteria {failing:?} differ from the known unattainable set {UNATTAINABLE:?}");
        std::process::exit(1);
    }
}
