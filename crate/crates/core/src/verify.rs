//! The verification suites behind `weyl-howe verify`. Each suite is a list of
//! exact checks; a failing check carries the offending operator (or other
//! witness), and facts worth reporting that are not pass/fail go into
//! findings.

use rayon::prelude::*;
use serde::Serialize;

use crate::arith::GQ;
use crate::kernel::{binomial, hermite_eigenspaces, oscillator_split, oscillator_split_with};
use crate::lie::matrix::{
    omega0, phi_map, phi_of_complex, su12_basis, un_basis, ComplexMatrix,
};
use crate::lie::{
    jacobi_check, killing_signature, membership, paper_table_diff, real_form_rescale,
    span_closure, LieElement, LieSpan, Predicate, SpanField, StructureConstants,
};
use crate::linalg;
use crate::space::{
    adjointness_probe, antiholomorphic_element, apply, holomorphic_element, Pairing, ProbeOutcome,
};
use crate::weyl::{catalog, family, Family, MultiIndex, WeylOperator};

pub const SCHEMA_VERSION: &str = "1.0.0";

/// Suite names in report order.
pub const SUITES: [&str; 9] = [
    "sl2-relations",
    "sp-closures",
    "un-invariance",
    "su12-closure-and-signature",
    "heisenberg-triples",
    "dolbeault-identity",
    "table-diff",
    "phi-lemma",
    "oscillator-split",
];

const CLOSURE_CAP: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    fn of(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn is_pass(self) -> bool {
        self == Status::Pass
    }

    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    /// Present on failure: the nonzero operator or other counterexample.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteResult {
    pub name: String,
    pub status: Status,
    pub checks: Vec<Check>,
    pub findings: Vec<String>,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.status.is_pass()
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub schema_version: String,
    pub n: usize,
    pub status: Status,
    pub suites: Vec<SuiteResult>,
}

impl VerificationReport {
    pub fn suite(&self, name: &str) -> Option<&SuiteResult> {
        self.suites.iter().find(|s| s.name == name)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("verification report (n = {}): {}\n", self.n, self.status.label());
        for s in &self.suites {
            out.push_str(&format!("\n[{}] {}\n", s.status.label(), s.name));
            for c in &s.checks {
                out.push_str(&format!("  {} {}", c.status.label(), c.name));
                if let Some(d) = &c.detail {
                    out.push_str(&format!(": {d}"));
                }
                out.push('\n');
                if let Some(w) = &c.witness {
                    out.push_str(&format!("       witness: {w}\n"));
                }
            }
            for f in &s.findings {
                out.push_str(&format!("  finding: {f}\n"));
            }
        }
        out
    }
}

struct Suite {
    name: &'static str,
    checks: Vec<Check>,
    findings: Vec<String>,
}

impl Suite {
    fn new(name: &'static str) -> Self {
        Self {
            name,
            checks: Vec::new(),
            findings: Vec::new(),
        }
    }

    fn check(&mut self, name: impl Into<String>, ok: bool, detail: Option<String>, witness: Option<String>) {
        self.checks.push(Check {
            name: name.into(),
            status: Status::of(ok),
            detail,
            witness: if ok { None } else { witness },
        });
    }

    fn truth(&mut self, name: impl Into<String>, ok: bool, detail: impl Into<String>) {
        let detail = detail.into();
        self.check(name, ok, Some(detail.clone()), Some(detail));
    }

    /// `lhs == rhs` as operators; the witness is `lhs - rhs`.
    fn identity(&mut self, name: impl Into<String>, lhs: &WeylOperator, rhs: &WeylOperator) {
        let diff = lhs - rhs;
        self.check(name, diff.is_zero(), None, Some(diff.to_string()));
    }

    fn finding(&mut self, text: impl Into<String>) {
        self.findings.push(text.into());
    }

    fn finish(self) -> SuiteResult {
        let ok = self.checks.iter().all(|c| c.status.is_pass());
        SuiteResult {
            name: self.name.to_string(),
            status: Status::of(ok),
            checks: self.checks,
            findings: self.findings,
        }
    }
}

fn op(name: &str, n: usize) -> WeylOperator {
    catalog(name, n, &[]).expect("catalog operator")
}

fn named(names: &[&str], n: usize) -> Vec<(String, WeylOperator)> {
    names.iter().map(|s| (s.to_string(), op(s, n))).collect()
}

fn i() -> GQ {
    GQ::i()
}

/// Runs every suite for `n` base pairs.
pub fn verify(n: usize) -> VerificationReport {
    let suites: Vec<SuiteResult> = SUITES.par_iter().map(|s| run_suite(s, n)).collect();
    let ok = suites.iter().all(SuiteResult::passed);
    VerificationReport {
        schema_version: SCHEMA_VERSION.to_string(),
        n,
        status: Status::of(ok),
        suites,
    }
}

/// Runs one named suite. Panics on an unknown name.
pub fn run_suite(name: &str, n: usize) -> SuiteResult {
    match name {
        "sl2-relations" => sl2_relations(n),
        "sp-closures" => sp_closures(n),
        "un-invariance" => un_invariance(n),
        "su12-closure-and-signature" => su12(n),
        "heisenberg-triples" => heisenberg(n),
        "dolbeault-identity" => dolbeault(n),
        "table-diff" => table_diff(n),
        "phi-lemma" => phi_lemma(n),
        "oscillator-split" => oscillator(n),
        other => panic!("unknown suite {other}"),
    }
}

fn sl2_relations(n: usize) -> SuiteResult {
    let mut s = Suite::new("sl2-relations");
    let en = op("E+n", n);
    for (d, x, label) in [("D_s", "X_s", ""), ("Dt_s", "Xt_s", "twisted ")] {
        let (dd, xx) = (op(d, n), op(x, n));
        s.identity(format!("{label}[E+n, {x}] = {x}"), &en.commutator(&xx), &xx);
        s.identity(format!("{label}[E+n, {d}] = -{d}"), &en.commutator(&dd), &-&dd);
        s.identity(format!("{label}[{d}, {x}] = -i(E+n)"), &dd.commutator(&xx), &en.scale(&-i()));
        match span_closure(named(&[d, x, "E+n"], n), false, SpanField::ComplexSpan, 10) {
            Ok(c) => s.truth(
                format!("{label}triple closes at dimension 3"),
                c.span.dim() == 3 && jacobi_check(&c.constants).is_empty(),
                format!("dimension {}", c.span.dim()),
            ),
            Err(e) => s.truth(format!("{label}triple closes at dimension 3"), false, e.to_string()),
        }
    }

    // Fischer adjoints under the factorial pairing.
    let e = op("E", n);
    s.identity("E is self-adjoint", &e.fischer_adjoint(), &e);
    let x1 = catalog("x", n, &[1]).expect("catalog");
    let dx1 = catalog("dx", n, &[1]).expect("catalog");
    s.identity("x_1 adjoint is dx_1", &x1.fischer_adjoint(), &dx1);
    for (a, b, label) in [(&x1, &dx1, "x_1 vs dx_1"), (&e, &e, "E vs E")] {
        let probe = adjointness_probe(a, b, 3, Pairing::Sesquilinear).expect("same n");
        s.truth(
            format!("pairing probe {label} gives 1"),
            probe == ProbeOutcome::Scalar { c: GQ::one() },
            format!("{probe:?}"),
        );
    }
    let ds = op("D_s", n);
    let xs = op("X_s", n);
    let adj = ds.fischer_adjoint();
    match adj.ratio_to(&xs) {
        Some(c) => s.finding(format!("sesquilinear Fischer adjoint of D_s equals ({c}) X_s")),
        None => s.finding(format!(
            "sesquilinear Fischer adjoint of D_s is {adj}, not a scalar multiple of X_s"
        )),
    }
    match ds.fischer_transpose().ratio_to(&xs) {
        Some(c) => s.finding(format!("bilinear Fischer transpose of D_s equals ({c}) X_s")),
        None => s.finding("bilinear Fischer transpose of D_s is not a multiple of X_s"),
    }
    if n <= 2 {
        let cap = if n == 1 { 3 } else { 2 };
        for kind in [Pairing::Sesquilinear, Pairing::Bilinear] {
            let probe = adjointness_probe(&ds, &xs, cap, kind).expect("same n");
            s.finding(format!(
                "pairing probe D_s vs X_s ({kind:?}, degree <= {cap}): {}",
                describe_probe(&probe)
            ));
        }
    }
    s.finish()
}

fn describe_probe(p: &ProbeOutcome) -> String {
    match p {
        ProbeOutcome::Scalar { c } => format!("consistent scalar {c}"),
        ProbeOutcome::Inconsistent { f, g } => format!("no consistent scalar (pair {f} / {g})"),
        ProbeOutcome::Degenerate => "both sides vanish".to_string(),
    }
}

/// First generator of `fam` not commuting with `target`, if any.
fn invariance_failures(fam: &[(String, WeylOperator)], target: &WeylOperator) -> Vec<(String, WeylOperator)> {
    fam.iter()
        .filter_map(|(label, g)| {
            let c = g.commutator(target);
            (!c.is_zero()).then(|| (label.clone(), c))
        })
        .collect()
}

fn closure_check(s: &mut Suite, label: &str, gens: Vec<(String, WeylOperator)>, expected: usize) {
    match span_closure(gens, false, SpanField::ComplexSpan, CLOSURE_CAP) {
        Ok(c) => {
            let jac = jacobi_check(&c.constants);
            s.truth(
                format!("{label} closes at dimension {expected}"),
                c.span.dim() == expected,
                format!("dimension {}", c.span.dim()),
            );
            s.truth(
                format!("{label} Jacobi"),
                jac.is_empty(),
                format!("{} violations", jac.len()),
            );
        }
        Err(e) => s.truth(format!("{label} closes at dimension {expected}"), false, e.to_string()),
    }
}

fn sp_closures(n: usize) -> SuiteResult {
    let mut s = Suite::new("sp-closures");
    let dim = 2 * n * n + n;
    let ds = op("D_s", n);
    let dt = op("Dt_s", n);
    let first = family(Family::SpFirst, n);
    let second = family(Family::SpSecondCorrected, n);
    let printed = family(Family::SpSecond, n);

    closure_check(&mut s, "first realization", first.clone(), dim);
    closure_check(&mut s, "second realization", second.clone(), dim);

    for (label, fam, target, tname) in [
        ("first realization", &first, &ds, "D_s"),
        ("second realization", &second, &dt, "Dt_s"),
    ] {
        let bad = invariance_failures(fam, target);
        s.check(
            format!("{tname} invariant under the {label}"),
            bad.is_empty(),
            None,
            bad.first().map(|(g, c)| format!("[{g}, {tname}] = {c}")),
        );
    }
    for (label, fam, target, tname) in [
        ("first realization", &first, &dt, "Dt_s"),
        ("second realization", &second, &ds, "D_s"),
    ] {
        let bad = invariance_failures(fam, target);
        let detail = bad
            .first()
            .map(|(g, c)| format!("[{g}, {tname}] = {c}"))
            .unwrap_or_else(|| "no counterexample".to_string());
        s.truth(format!("{tname} not invariant under the {label}"), !bad.is_empty(), detail.clone());
        if !bad.is_empty() {
            s.finding(format!("cross-invariance counterexample: {detail}"));
        }
    }

    // The second family exactly as printed, with q_k ∂q_j in Xt_jk.
    let bad = invariance_failures(&printed, &dt);
    if bad.is_empty() {
        s.finding("printed second family leaves Dt_s invariant");
    } else {
        let names: Vec<&str> = bad.iter().map(|(g, _)| g.as_str()).collect();
        s.finding(format!(
            "printed second family (spinor part q_k dq_j in Xt_jk) does not leave Dt_s invariant: fails for {}; e.g. [{}, Dt_s] = {}. Reading the spinor part as q_j dq_k restores invariance.",
            names.join(", "),
            bad[0].0,
            bad[0].1
        ));
    }
    match span_closure(printed, false, SpanField::ComplexSpan, CLOSURE_CAP) {
        Ok(c) => s.finding(format!(
            "printed second family closes at dimension {} (expected {dim})",
            c.span.dim()
        )),
        Err(e) => s.finding(format!("printed second family: {e}")),
    }
    s.finish()
}

fn un_invariance(n: usize) -> SuiteResult {
    let mut s = Suite::new("un-invariance");
    let ds = op("D_s", n);
    let dt = op("Dt_s", n);
    let fam = family(Family::Unitary, n);
    s.truth(
        format!("family has n^2 = {} generators", n * n),
        fam.len() == n * n,
        format!("{} generators", fam.len()),
    );
    for (label, g) in &fam {
        s.identity(format!("[{label}, D_s] = 0"), &g.commutator(&ds), &WeylOperator::zero(n));
        s.identity(format!("[{label}, Dt_s] = 0"), &g.commutator(&dt), &WeylOperator::zero(n));
    }
    closure_check(&mut s, "u(n) family", fam, n * n);
    s.finish()
}

fn su12(n: usize) -> SuiteResult {
    let mut s = Suite::new("su12-closure-and-signature");
    let names = ["D_s", "Dt_s", "Delta", "X_s", "Xt_s", "E+n", "O", "r2"];
    let closure = match span_closure(named(&names, n), true, SpanField::ComplexSpan, CLOSURE_CAP) {
        Ok(c) => c,
        Err(e) => {
            s.truth("8-operator span closes", false, e.to_string());
            return s.finish();
        }
    };
    s.truth(
        "8-operator span closes at dimension 8 modulo the center",
        closure.reduced_dim() == 8,
        format!(
            "dimension {} with {} central constant",
            closure.span.dim(),
            if closure.span.central.is_some() { "an adjoined" } else { "no" }
        ),
    );
    let q = closure.reduced_constants();
    let jac = jacobi_check(&q);
    s.truth("Jacobi", jac.is_empty(), format!("{} violations", jac.len()));
    s.truth("antisymmetry", q.is_antisymmetric(), "structure constants");
    let rank = q.killing_rank();
    s.truth(
        "Killing form nondegenerate",
        rank == q.dim(),
        format!("rank {rank} of {}", q.dim()),
    );
    let rescale = real_form_rescale(&q);
    s.truth(
        "unit rescaling to real structure constants",
        rescale.success,
        format!(
            "scalars {}",
            rescale
                .scalars
                .iter()
                .zip(&q.labels)
                .map(|(u, l)| format!("{l}:{u}"))
                .collect::<Vec<_>>()
                .join(", ")
        ),
    );
    if rescale.success {
        match killing_signature(&q.rescaled(&rescale.scalars)) {
            Ok(sig) => s.truth(
                "Killing signature (4,4)",
                (sig.positive, sig.negative, sig.zero) == (4, 4, 0),
                format!("({}, {}, {})", sig.positive, sig.negative, sig.zero),
            ),
            Err(e) => s.truth("Killing signature (4,4)", false, e.to_string()),
        }
    }
    if n > 1 {
        let base = span_closure(named(&names, 1), true, SpanField::ComplexSpan, CLOSURE_CAP)
            .map(|c| c.reduced_constants());
        s.truth(
            "structure constants agree with n = 1",
            base.map(|b| b.c == q.c).unwrap_or(false),
            "E replaced by E+n",
        );
    }
    // Matrix model cross-check.
    let m = su12_basis();
    let all_in = m.iter().all(|(_, x)| membership(x, Predicate::Su12).unwrap_or(false));
    s.truth("matrix su(1,2) basis satisfies X^dag eta + eta X = 0, tr X = 0", all_in, "8 elements");
    if let Ok(mc) = span_closure(m, false, SpanField::RealSpan, 8) {
        if let Ok(sig) = killing_signature(&mc.constants) {
            s.truth(
                "matrix su(1,2) Killing signature (4,4)",
                (sig.positive, sig.negative) == (4, 4),
                format!("({}, {}, {})", sig.positive, sig.negative, sig.zero),
            );
        }
    }
    s.finish()
}

/// `span{a, b, c}` closes as a Heisenberg algebra with center `c`.
fn heisenberg_check(s: &mut Suite, a: &str, b: &str, c: &str, n: usize) {
    let (oa, ob, oc) = (op(a, n), op(b, n), op(c, n));
    let ab = oa.commutator(&ob);
    let ratio = ab.ratio_to(&oc);
    s.truth(
        format!("[{a}, {b}] is a nonzero multiple of {c}"),
        ratio.as_ref().is_some_and(|r| !r.is_zero()),
        format!("[{a}, {b}] = {ab}"),
    );
    if let Some(r) = ratio {
        s.finding(format!("[{a}, {b}] = ({r}) {c}"));
    }
    s.identity(format!("[{a}, {c}] = 0"), &oa.commutator(&oc), &WeylOperator::zero(n));
    s.identity(format!("[{b}, {c}] = 0"), &ob.commutator(&oc), &WeylOperator::zero(n));
    let span = LieSpan::from_elements(SpanField::ComplexSpan, named(&[a, b, c], n));
    s.truth(format!("span{{{a}, {b}, {c}}} has dimension 3"), span.dim() == 3, format!("dimension {}", span.dim()));
}

fn heisenberg(n: usize) -> SuiteResult {
    let mut s = Suite::new("heisenberg-triples");
    heisenberg_check(&mut s, "D_s", "Dt_s", "Delta", n);
    heisenberg_check(&mut s, "X_s", "Xt_s", "r2", n);
    s.finish()
}

fn dolbeault(n: usize) -> SuiteResult {
    let mut s = Suite::new("dolbeault-identity");
    let dz = op("D_z", n);
    let dzd = op("D_z_dag", n);
    let mut rhs = WeylOperator::zero(n);
    let mut rhs_dag = WeylOperator::zero(n);
    let mut rhs_dag_printed = WeylOperator::zero(n);
    for j in 1..=n {
        let f = catalog("F", n, &[j]).expect("catalog");
        let fd = catalog("F_dag", n, &[j]).expect("catalog");
        let pz = catalog("dz", n, &[j]).expect("catalog");
        let pzb = catalog("dzbar", n, &[j]).expect("catalog");
        // ½(∂x + ∂y) exactly as printed.
        let printed = (catalog("dx", n, &[j]).expect("catalog") + catalog("dy", n, &[j]).expect("catalog"))
            .scale(&GQ::ratio(1, 2));
        rhs = rhs - f * pz;
        rhs_dag = rhs_dag + &fd * pzb;
        rhs_dag_printed = rhs_dag_printed + fd * printed;
    }
    s.identity("D_z = -sum F_j dz_j", &dz, &rhs);
    s.identity("D_z_dag = sum F_dag_j dzbar_j", &dzd, &rhs_dag);
    let diff = &dzd - &rhs_dag_printed;
    if !diff.is_zero() {
        s.finding(format!(
            "with dzbar read as (dx + dy)/2 the second factorization fails: difference {diff}"
        ));
    }
    let adj = dz.fischer_adjoint();
    match adj.ratio_to(&dzd) {
        Some(c) if c.is_one() => s.finding("D_z_dag is the Fischer adjoint of D_z"),
        Some(c) => s.finding(format!("Fischer adjoint of D_z is ({c}) D_z_dag")),
        None => s.finding(format!(
            "D_z_dag is not the Fischer adjoint of D_z; the adjoint is {adj}"
        )),
    }

    // Gaussian times holomorphic polynomials.
    let ds = op("D_s", n);
    let dt = op("Dt_s", n);
    let mut failures = Vec::new();
    let mut count = 0;
    for d in 0..=5 {
        for alpha in MultiIndex::all_of_degree(n, d) {
            let h = holomorphic_element(&alpha);
            for (name, a) in [("D_s", &ds), ("Dt_s", &dt)] {
                count += 1;
                let img = apply(a, &h).expect("same n");
                if !img.is_zero() {
                    failures.push(format!("{name} on z^{:?}", alpha.as_slice()));
                }
            }
        }
    }
    s.check(
        "D_s and Dt_s annihilate exp(-|q|^2/2) z^alpha, |alpha| <= 5",
        failures.is_empty(),
        Some(format!("{count} applications")),
        failures.first().cloned(),
    );
    let zbar = antiholomorphic_element(&MultiIndex::unit(n, 0, 1));
    let img = apply(&ds, &zbar).expect("same n");
    s.truth(
        "D_s does not annihilate exp(-|q|^2/2) zbar_1",
        !img.is_zero(),
        format!("{} terms", img.len()),
    );
    s.finish()
}

fn table_diff(n: usize) -> SuiteResult {
    let mut s = Suite::new("table-diff");
    let d = paper_table_diff(n);
    s.truth("computed table is antisymmetric", d.computed_antisymmetric, "64 cells");
    s.truth("computed table satisfies Jacobi", d.computed_jacobi, "9-element span with 1");
    let scores: Vec<String> = d
        .scores
        .iter()
        .map(|o| format!("{:?}: {} acceptable, {} exact", o.orientation, o.acceptable_cells, o.exact_cells))
        .collect();
    s.finding(format!("orientation {:?} chosen ({})", d.orientation, scores.join("; ")));
    for c in d.mismatches() {
        s.finding(format!(
            "cell ({}, {}): computed {}, printed {} ({})",
            c.row,
            c.col,
            c.computed,
            c.printed,
            c.status.short()
        ));
    }
    for c in &d.cells {
        if let crate::lie::CellStatus::UnitScalar { unit } = &c.status {
            if *unit == GQ::from_int(-1) {
                s.finding(format!(
                    "cell ({}, {}): sign differs, computed {}, printed {}",
                    c.row, c.col, c.computed, c.printed
                ));
            }
        }
    }
    for (a, b) in &d.printed_antisymmetry_violations {
        s.finding(format!("printed table is not antisymmetric at ({a}, {b})"));
    }
    s.finding(format!(
        "{} of 64 cells match up to a unit scalar and central shift",
        d.cells.iter().filter(|c| c.status.acceptable()).count()
    ));
    s.finish()
}

/// Unitary matrices with one unit (±1, ±i) per row and column.
fn monomial_unitaries(n: usize) -> Vec<ComplexMatrix> {
    fn perms(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for p in perms(n - 1) {
            for pos in 0..=p.len() {
                let mut q = p.clone();
                q.insert(pos, n - 1);
                out.push(q);
            }
        }
        out
    }
    let units = GQ::units();
    let mut out = Vec::new();
    for p in perms(n) {
        for code in 0..4usize.pow(n as u32) {
            let mut m = ComplexMatrix::zeros(n, n);
            let mut c = code;
            for (r, &col) in p.iter().enumerate() {
                m.set(r, col, units[c % 4].clone());
                c /= 4;
            }
            out.push(m);
        }
    }
    out
}

/// Cayley transforms `(I - S)(I + S)^{-1}` of a few rational
/// skew-hermitian `S`: unitary with rational entries.
fn cayley_unitaries(n: usize) -> Vec<ComplexMatrix> {
    let basis = un_basis(n);
    let mut out = Vec::new();
    for (k, (_, x)) in basis.iter().enumerate() {
        let s = x.scale(&GQ::ratio(1, k as i64 + 2));
        let id = ComplexMatrix::identity(n);
        let plus = id.add(&s);
        let rows: Vec<Vec<GQ>> = (0..n).map(|r| (0..n).map(|c| plus.get(r, c).clone()).collect()).collect();
        if let Some(inv) = linalg::inverse(&rows) {
            let inv = ComplexMatrix::from_rows(inv).expect("square");
            out.push(id.sub(&s).mul(&inv));
        }
    }
    out
}

fn phi_lemma(n: usize) -> SuiteResult {
    let mut s = Suite::new("phi-lemma");
    let basis = un_basis(n);
    let images: Vec<ComplexMatrix> = basis
        .iter()
        .map(|(_, x)| phi_of_complex(x).expect("u(n) basis splits into real blocks"))
        .collect();
    let mut bad_alg = Vec::new();
    for ((label, _), m) in basis.iter().zip(&images) {
        let in_sp = membership(m, Predicate::SymplecticAlgebra).unwrap_or(false);
        let with_j = membership(m, Predicate::CommutesWithJ).unwrap_or(false);
        if !(in_sp && with_j) {
            bad_alg.push(label.clone());
        }
    }
    s.check(
        format!("phi(u({n}) basis) lies in sp(2n,R) and commutes with J"),
        bad_alg.is_empty(),
        Some(format!("{} basis elements", basis.len())),
        bad_alg.first().cloned(),
    );
    let mut bad_br = Vec::new();
    for (a, (la, xa)) in basis.iter().enumerate() {
        for (b, (lb, xb)) in basis.iter().enumerate() {
            let lhs = phi_of_complex(&xa.bracket(xb)).expect("real blocks");
            if lhs != images[a].bracket(&images[b]) {
                bad_br.push(format!("[{la}, {lb}]"));
            }
        }
    }
    s.check(
        "phi preserves brackets",
        bad_br.is_empty(),
        Some(format!("{} pairs", basis.len() * basis.len())),
        bad_br.first().cloned(),
    );

    let id = ComplexMatrix::identity(n);
    let z = ComplexMatrix::zeros(n, n);
    let mut group: Vec<(String, ComplexMatrix)> = vec![
        ("phi(I, 0)".to_string(), phi_map(&id, &z).expect("blocks")),
        ("phi(0, I)".to_string(), phi_map(&z, &id).expect("blocks")),
    ];
    for (k, u) in monomial_unitaries(n).into_iter().enumerate() {
        group.push((format!("monomial unitary #{k}"), phi_of_complex(&u).expect("blocks")));
    }
    for (k, u) in cayley_unitaries(n).into_iter().enumerate() {
        group.push((format!("Cayley unitary #{k}"), phi_of_complex(&u).expect("blocks")));
    }
    let mut bad_grp = Vec::new();
    for (label, m) in &group {
        let sp = membership(m, Predicate::SymplecticGroup).unwrap_or(false);
        let cj = membership(m, Predicate::CommutesWithJ).unwrap_or(false);
        if !(sp && cj) {
            bad_grp.push(format!("{label}: {m}"));
        }
    }
    s.check(
        "group elements satisfy M^T Omega0 M = Omega0 and MJ = JM",
        bad_grp.is_empty(),
        Some(format!("{} matrices", group.len())),
        bad_grp.first().cloned(),
    );
    s.truth(
        "phi(0, I) = [[0, I], [-I, 0]] = Omega0",
        group[1].1 == omega0(n),
        group[1].1.to_string(),
    );
    let sample = monomial_unitaries(n);
    let (u, v) = (&sample[1 % sample.len()], &sample[sample.len() / 2]);
    let hom = phi_of_complex(&u.mul(v)).expect("blocks")
        == phi_of_complex(u).expect("blocks").mul(&phi_of_complex(v).expect("blocks"));
    s.truth("phi(UV) = phi(U) phi(V)", hom, "sampled pair");

    // A symplectic shear that is not complex-linear.
    let shear = ComplexMatrix::block(&id, &id, &z, &id).expect("blocks");
    let sp = membership(&shear, Predicate::SymplecticGroup).unwrap_or(false);
    let cj = membership(&shear, Predicate::CommutesWithJ).unwrap_or(true);
    s.truth(
        "shear [[I, I], [0, I]] is symplectic but does not commute with J",
        sp && !cj,
        format!("symplectic {sp}, commutes with J {cj}"),
    );
    s.finish()
}

fn oscillator(n: usize) -> SuiteResult {
    let mut s = Suite::new("oscillator-split");
    let split = oscillator_split(n);
    s.check(
        "O = sum i(x_j dy_j - y_j dx_j) + 2H",
        split.holds,
        None,
        Some(split.difference.clone()),
    );
    let perturbed = op("H", n) + WeylOperator::identity(n);
    let bad = oscillator_split_with(n, &perturbed);
    s.truth(
        "identity fails for a perturbed H",
        !bad.holds,
        format!("difference {}", bad.difference),
    );
    let kmax = 6;
    let spec = hermite_eigenspaces(n, kmax);
    let wrong: Vec<String> = spec
        .iter()
        .filter(|e| e.dimension != e.expected)
        .map(|e| format!("k = {}: dimension {} vs {}", e.k, e.dimension, e.expected))
        .collect();
    s.check(
        format!("Hermite eigenspace dimensions C(n+k-1, k) for k <= {kmax}"),
        wrong.is_empty(),
        Some(
            spec.iter()
                .map(|e| format!("{}:{}", e.eigenvalue, e.dimension))
                .collect::<Vec<_>>()
                .join(", "),
        ),
        wrong.first().cloned(),
    );
    let ev_ok = spec.iter().all(|e| {
        e.eigenvalue == -(&GQ::from_int(i64::from(e.k)) + &GQ::ratio(n as i64, 2))
            && binomial(n + e.k as usize - 1, e.k as usize) == e.expected
    });
    s.truth("eigenvalues -(k + n/2)", ev_ok, format!("n = {n}"));
    s.finish()
}

/// Structure constants of the 8-operator span modulo its center.
pub fn su12_constants(n: usize) -> Option<StructureConstants> {
    let names = ["D_s", "Dt_s", "Delta", "X_s", "Xt_s", "E+n", "O", "r2"];
    span_closure(named(&names, n), true, SpanField::ComplexSpan, CLOSURE_CAP)
        .ok()
        .map(|c| c.reduced_constants())
}
