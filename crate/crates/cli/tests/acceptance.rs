//! End-to-end acceptance run: one PASS/FAIL line per criterion.
//!
//! Expected values come from tables and brute-force searches written out
//! here, independently of the library's prediction code.

#![allow(clippy::needless_range_loop, clippy::type_complexity, clippy::neg_cmp_op_on_partial_ord)]

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use trform_core::csa::{self, Algebra, Cocycle, CrossedProduct, TraceRoute};
use trform_core::field::{linalg, poly};
use trform_core::quadform::{self, BrauerClass, QuadraticForm, QuaternionSymbol, WittClass};
use trform_core::theorems::{self, Claim, Grid};
use trform_core::{Elem, Field, Poly};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($arg:tt)+) => {
        if !$cond {
            return Err(format!($($arg)+));
        }
    };
}

fn err(e: trform_core::Error) -> String {
    e.to_string()
}

fn gf2() -> Field {
    Field::gf2()
}

fn gf4() -> Field {
    Field::gf2().extend_str("a^2+a+1").unwrap()
}

fn gf8() -> Field {
    Field::gf2().extend_str("b^3+b+1").unwrap()
}

fn ext(base: &Field, n: usize) -> Field {
    base.extend(&poly::first_irreducible(base, n), "g").unwrap()
}

fn nonzero(f: &Field) -> Vec<Elem> {
    f.elements().filter(|e| !e.is_zero()).collect()
}

/// Absolute trace of 1: whether [1,1] is anisotropic over `f`.
fn tr1(f: &Field) -> u8 {
    f.absolute_trace(Elem::ONE).0 as u8
}

/// (total dimension, radical dimension, Arf bit).
fn sig(w: &WittClass) -> (usize, usize, u8) {
    (w.dim + w.radical_dim, w.radical_dim, w.arf_bit())
}

fn trace_form(alg: &Algebra) -> Result<QuadraticForm, String> {
    Ok(csa::second_trace_form(alg).map_err(err)?.form)
}

fn trace_witt(alg: &Algebra) -> Result<WittClass, String> {
    Ok(trace_form(alg)?.witt_class())
}

fn harness(claim: Claim) -> Result<usize, String> {
    let reports = theorems::run_verification(claim, &Grid::default());
    if let Some(bad) = reports.iter().find(|r| !r.passed()) {
        return Err(format!("harness {claim} failed: {:?}", bad.params));
    }
    Ok(reports.len())
}

fn random_form(f: &Field, dim: usize, rng: &mut ChaCha8Rng) -> QuadraticForm {
    loop {
        let diag = (0..dim).map(|_| f.random(rng)).collect();
        let mut polar = vec![vec![Elem::ZERO; dim]; dim];
        for i in 0..dim {
            for j in i + 1..dim {
                let c = f.random(rng);
                polar[i][j] = c;
                polar[j][i] = c;
            }
        }
        let q = QuadraticForm::new(f, diag, polar).unwrap();
        if q.is_nonsingular() {
            return q;
        }
    }
}

// Reduced traces straight from the reduced characteristic polynomial; the
// polar form is taken from its definition q(x+y) + q(x) + q(y).

fn t1(alg: &Algebra, x: &[Elem]) -> Result<Elem, String> {
    Ok(csa::reduced_charpoly(alg, x).map_err(err)?.t1())
}

fn t2(alg: &Algebra, x: &[Elem]) -> Result<Elem, String> {
    Ok(csa::reduced_charpoly(alg, x).map_err(err)?.t2())
}

fn polar(alg: &Algebra, x: &[Elem], y: &[Elem]) -> Result<Elem, String> {
    Ok(t2(alg, &alg.add(x, y))? + t2(alg, x)? + t2(alg, y)?)
}

fn kron(f: &Field, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    a.iter().flat_map(|&x| b.iter().map(move |&y| f.mul(x, y))).collect()
}

fn random_trace_zero(alg: &Algebra, rng: &mut ChaCha8Rng) -> Result<Vec<Elem>, String> {
    let f = alg.field();
    let basis = csa::trace_zero_subspace(alg).map_err(err)?.dense_basis();
    let mut v = alg.zero_vector();
    for b in &basis {
        v = alg.add(&v, &alg.scale(f.random(rng), b));
    }
    Ok(v)
}

// ---------------------------------------------------------------- tables

/// T_{M_n}: dimension n^2 or n^2 - 1, one [1,1] summand for n = 3..6 mod 8.
fn matrix_table(f: &Field, n: usize) -> (usize, usize, u8) {
    let dim = if n.is_multiple_of(2) { n * n } else { n * n - 1 };
    let ones = matches!(n % 8, 3..=6) as u8;
    (dim, 0, ones & tr1(f))
}

/// The six-branch tensor product table over GF(2), from the constituent
/// (dimension, Arf bit) pairs.
fn tensor_table(n1: usize, n2: usize, s1: (usize, u8), s2: (usize, u8)) -> (usize, u8) {
    let big = n1 * n1 * n2 * n2;
    if n1 % 2 == 1 && n2 % 2 == 1 {
        return (s1.0 + s2.0 + (n1 * n1 - 1) * (n2 * n2 - 1), s1.1 ^ s2.1);
    }
    if n1 % 4 == 2 && n2 % 4 == 2 {
        return (big, 1);
    }
    let first = n1.is_multiple_of(4) || (n1 % 4 == 2 && n2 % 2 == 1);
    let (ni, nj, si) = if first { (n1, n2, s1) } else { (n2, n1, s2) };
    match (ni % 4, nj % 4) {
        (0, 0) | (0, 2) => (big, 0),
        (0, _) | (2, 1) => (si.0 + ni * ni * (nj * nj - 1), si.1),
        (2, 3) => (si.0 + ni * ni * (nj * nj - 1), si.1 ^ 1),
        _ => unreachable!("branch table is exhaustive"),
    }
}

const PAIRS: [(usize, usize); 12] =
    [(3, 5), (3, 7), (2, 2), (2, 6), (4, 2), (4, 4), (4, 3), (4, 5), (2, 5), (2, 3), (2, 7), (6, 3)];

struct TensorCase {
    n1: usize,
    n2: usize,
    w1: WittClass,
    w2: WittClass,
    form: QuadraticForm,
    witt: WittClass,
}

fn tensor_cases() -> Result<(Vec<TensorCase>, f64), String> {
    let start = Instant::now();
    let f = gf2();
    let mut out = Vec::new();
    for (n1, n2) in PAIRS {
        let (a1, a2) = (csa::matrix_algebra(&f, n1), csa::matrix_algebra(&f, n2));
        let t = csa::tensor_product(&a1, &a2).map_err(err)?;
        let form = trace_form(&t)?;
        out.push(TensorCase { n1, n2, w1: trace_witt(&a1)?, w2: trace_witt(&a2)?, witt: form.witt_class(), form });
    }
    Ok((out, start.elapsed().as_secs_f64()))
}

// ------------------------------------------------------------- criteria

fn c1() -> Outcome {
    let start = Instant::now();
    let mut passed = 0;
    for f in [gf2(), gf4()] {
        for n in 2..=9 {
            let w = trace_witt(&csa::matrix_algebra(&f, n))?;
            let expect = matrix_table(&f, n);
            ensure!(sig(&w) == expect, "M{n} over {}: got {:?}, expected {expect:?}", f.describe(), sig(&w));
            ensure!(w == theorems::predicted_matrix_class(&f, n), "M{n}: predicted class disagrees");
            passed += 1;
        }
    }
    let secs = start.elapsed().as_secs_f64();
    ensure!(secs < 10.0, "took {secs:.1}s");
    harness(Claim::Prop1)?;
    Ok(format!("{passed}/16 matrix classes in {secs:.2}s"))
}

fn c2(tensors: &[TensorCase]) -> Outcome {
    let mut corpus: Vec<Algebra> = Vec::new();
    for n in 2..=9 {
        corpus.push(csa::matrix_algebra(&gf2(), n));
    }
    for n in 2..=5 {
        corpus.push(csa::matrix_algebra(&gf4(), n));
    }
    for f in [gf2(), gf4(), gf8()] {
        for a in nonzero(&f) {
            for b in f.elements() {
                corpus.push(csa::quaternion_algebra(&f, a, b).map_err(err)?);
            }
        }
    }
    let mut crossed: Vec<CrossedProduct> = Vec::new();
    for n in 2..=5 {
        crossed.push(csa::crossed_product(&ext(&gf2(), n), Cocycle::Trivial).map_err(err)?);
    }
    for n in 2..=3 {
        for c in nonzero(&gf4()) {
            crossed.push(csa::crossed_product(&ext(&gf4(), n), Cocycle::Cyclic(c)).map_err(err)?);
        }
    }
    for c in nonzero(&gf8()) {
        crossed.push(csa::crossed_product(&ext(&gf8(), 2), Cocycle::Cyclic(c)).map_err(err)?);
    }
    corpus.extend(crossed.into_iter().map(|cp| cp.algebra));
    for alg in &corpus {
        let q = trace_form(alg)?;
        ensure!(q.is_nonsingular() && q.radical().is_empty(), "{} is singular", alg.label());
    }
    for t in tensors {
        ensure!(t.form.is_nonsingular(), "Mat({})⊗Mat({}) is singular", t.n1, t.n2);
    }
    harness(Claim::Prop2)?;
    Ok(format!("{} algebras, 0 singular", corpus.len() + tensors.len()))
}

fn c3() -> Outcome {
    let f = gf2();
    for n in [3, 5, 7, 9] {
        let e = ext(&f, n);
        let cp = csa::crossed_product(&e, Cocycle::Trivial).map_err(err)?;
        let ta = trace_witt(&cp.algebra)?;
        let te_form = theorems::revoy_trace_form(&f, e.modulus()).map_err(err)?;
        let te = te_form.witt_class();
        // m H for n = 1, 7 mod 8, [1,1] + (m - 1) H for n = 3, 5 mod 8
        let ones = matches!(n % 8, 3 | 5) as u8;
        ensure!(sig(&te) == (n - 1, 0, ones), "T_E, n = {n}: got {:?}", sig(&te));
        ensure!(sig(&ta) == (n * n - 1, 0, ones), "T_A, n = {n}: got {:?}", sig(&ta));
        ensure!(ta.arf == te.arf, "n = {n}: T_A and T_E differ in Arf");
        if te_form.dim() <= 6 {
            let oracle = quadform::isotropic_split_oracle(&te_form).map_err(err)?.witt_class();
            ensure!(oracle == te, "n = {n}: isotropic search disagrees on T_E");
        }
    }
    for n in [2, 4] {
        let e = ext(&f, n);
        let cp = csa::crossed_product(&e, Cocycle::Trivial).map_err(err)?;
        let ta = trace_witt(&cp.algebra)?;
        let te = theorems::revoy_trace_form(&f, e.modulus()).map_err(err)?;
        let b = csa::b_subspace_form(&cp).map_err(err)?;
        let sum = te.direct_sum(&b).map_err(err)?;
        let pad = QuadraticForm::hyperbolic(&f, (n * n - sum.dim()) / 2);
        let full = sum.direct_sum(&pad).map_err(err)?;
        ensure!(full.is_nonsingular(), "n = {n}: T_E ⊥ B is singular");
        ensure!(ta == full.witt_class(), "n = {n}: T_A {:?} vs T_E ⊥ B {:?}", sig(&ta), sig(&full.witt_class()));
    }
    harness(Claim::Thm1)?;
    harness(Claim::Cor1)?;
    Ok("n = 3, 5, 7, 9 and n = 2, 4 exact".into())
}

fn c4(tensors: &[TensorCase], secs: f64) -> Outcome {
    for t in tensors {
        let s = |w: &WittClass| (w.dim + w.radical_dim, w.arf_bit());
        let expect = tensor_table(t.n1, t.n2, s(&t.w1), s(&t.w2));
        let got = s(&t.witt);
        ensure!(t.witt.radical_dim == 0, "Mat({})⊗Mat({}) singular", t.n1, t.n2);
        ensure!(got == expect, "Mat({})⊗Mat({}): got {got:?}, expected {expect:?}", t.n1, t.n2);
        let predicted = theorems::predicted_tensor(&t.w1, &t.w2, t.n1, t.n2);
        ensure!(predicted == t.witt, "Mat({})⊗Mat({}): library prediction disagrees", t.n1, t.n2);
    }
    ensure!(secs <= 60.0, "took {secs:.1}s");
    harness(Claim::Thm2)?;
    let largest = tensors.iter().map(|t| t.form.dim()).max().unwrap_or(0);
    Ok(format!("{}/12 pairs in {secs:.2}s, largest form dim {largest}", tensors.len()))
}

fn c5() -> Outcome {
    let mut count = 0;
    for f in [gf2(), gf4(), gf8()] {
        let quat = csa::quaternion_algebra(&f, Elem::ONE, f.nonresidue()).map_err(err)?;
        for n in [2, 4, 6, 8] {
            let expect = ((n / 4) % 2) as u8 & tr1(&f);
            let mut algs = vec![csa::matrix_algebra(&f, n)];
            algs.push(if n == 2 {
                quat.clone()
            } else {
                csa::tensor_product(&quat, &csa::matrix_algebra(&f, n / 2)).map_err(err)?
            });
            for alg in &algs {
                let q = trace_form(alg)?;
                ensure!(q.is_nonsingular(), "{} singular", alg.label());
                let arf = q.arf().map_err(err)?;
                let bit = f.absolute_trace(arf).0 as u8;
                ensure!(bit == expect, "{} over {}: Arf bit {bit}, expected {expect}", alg.label(), f.describe());
                count += 1;
            }
        }
    }
    harness(Claim::Thm3)?;
    Ok(format!("{count} algebras"))
}

/// Zero of the reduced norm of (a, b] on x0 + x1 e + x2 f + x3 ef.
fn norm_form_isotropic(f: &Field, a: Elem, b: Elem) -> bool {
    let els: Vec<Elem> = f.elements().collect();
    let n = |u: Elem, v: Elem| f.square(u) + f.mul(u, v) + f.mul(b, f.square(v));
    for &x0 in &els {
        for &x1 in &els {
            for &x2 in &els {
                for &x3 in &els {
                    let zero = [x0, x1, x2, x3].iter().all(|x| x.is_zero());
                    if !zero && (n(x0, x2) + f.mul(a, n(x1, x3))).is_zero() {
                        return true;
                    }
                }
            }
        }
    }
    false
}

fn c6(tensors: &[TensorCase]) -> Outcome {
    let f = gf2();
    let mut forms: Vec<&QuadraticForm> = Vec::new();
    for t in tensors {
        let n = t.n1 * t.n2;
        let expect = if n % 2 == 1 { t.w1.arf_bit() ^ t.w2.arf_bit() } else { ((n / 4) % 2) as u8 };
        ensure!(t.witt.arf_bit() == expect, "Mat({})⊗Mat({}): Arf bit", t.n1, t.n2);
        let predicted = theorems::predicted_tensor_invariants(&f, (t.n1, t.w1.arf, &[]), (t.n2, t.w2.arf, &[]));
        ensure!(predicted.clifford == BrauerClass::trivial(), "predicted Clifford class is not trivial");
        forms.push(&t.form);
    }
    // odd x odd with a crossed product factor: sum rule
    let cp = csa::crossed_product(&ext(&f, 3), Cocycle::Trivial).map_err(err)?;
    let m3 = csa::matrix_algebra(&f, 3);
    let (wa, wb) = (trace_witt(&cp.algebra)?, trace_witt(&m3)?);
    let odd = trace_form(&csa::tensor_product(&cp.algebra, &m3).map_err(err)?)?;
    let wo = odd.witt_class();
    ensure!(wo.arf_bit() == wa.arf_bit() ^ wb.arf_bit(), "crossed(3)⊗Mat(3): sum rule");
    ensure!(wo.arf == f.wp_class(wa.arf + wb.arf), "crossed(3)⊗Mat(3): Arf class");
    forms.push(&odd);
    for q in &forms {
        let c = quadform::clifford_invariant(q).map_err(err)?;
        ensure!(c.is_trivial() && c == BrauerClass::trivial(), "nontrivial Clifford class");
    }
    // C([a,b]) is the symbol (a, ab]
    let f8 = gf8();
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for _ in 0..20 {
        let (a, b) = (f8.random_nonzero(&mut rng), f8.random(&mut rng));
        let q = QuadraticForm::binary(&f8, a, b);
        let c = quadform::clifford_algebra(&q).map_err(err)?;
        let (e1, e2) = (c.basis_vector(1), c.basis_vector(2));
        let (e, g) = (e1.clone(), c.mul(&e1, &e2));
        let ab = f8.mul(a, b);
        ensure!(c.mul(&e, &e) == c.scalar(a), "e^2 != a");
        ensure!(c.add(&c.mul(&g, &g), &g) == c.scalar(ab), "f^2 + f != ab");
        ensure!(c.add(&c.mul(&e, &g), &c.mul(&g, &e)) == e, "ef + fe != e");
        let span = vec![c.identity().to_vec(), e.clone(), g.clone(), c.mul(&e, &g)];
        ensure!(linalg::rank(&f8, &span) == 4, "1, e, f, ef dependent");
        let symbols = quadform::clifford_symbols(&q).map_err(err)?;
        ensure!(symbols == vec![QuaternionSymbol { a, b: ab }], "Clifford symbol of [a,b]");
        ensure!(
            quadform::quaternion_is_split(&f8, a, ab) == norm_form_isotropic(&f8, a, ab),
            "splitting test disagrees with norm search"
        );
    }
    harness(Claim::Thm4)?;
    Ok(format!("{} Arf checks, {} Clifford classes trivial, 20 symbols", tensors.len() + 1, forms.len()))
}

fn c7() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let fields = [gf2(), gf4()];
    for i in 0..50 {
        let f = &fields[i % 2];
        let dim = [2, 4, 6, 8][(i / 2) % 4];
        let q = random_form(f, dim, &mut rng);
        let arf = q.arf().map_err(err)?;
        let center = quadform::arf_via_even_clifford_center(&q).map_err(err)?;
        ensure!(
            f.wp_member(arf + center),
            "dim {dim} over {}: {} vs {}",
            f.describe(),
            f.format(arf),
            f.format(center)
        );
    }
    let secs = start.elapsed().as_secs_f64();
    ensure!(secs < 15.0, "took {secs:.1}s");
    Ok(format!("50/50 in {secs:.2}s"))
}

fn c8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let f = gf2();
    for i in 0..100 {
        let q = random_form(&f, 2 + 2 * (i % 2), &mut rng);
        let oracle = quadform::isotropic_split_oracle(&q).map_err(err)?.witt_class();
        ensure!(q.witt_class() == oracle, "form {i}: {:?} vs {:?}", sig(&q.witt_class()), sig(&oracle));
    }
    let f4 = gf4();
    let mut binary = 0;
    for a in f4.elements() {
        for b in f4.elements() {
            let q = QuadraticForm::binary(&f4, a, b);
            let oracle = quadform::isotropic_split_oracle(&q).map_err(err)?.witt_class();
            ensure!(q.witt_class() == oracle, "[{},{}]", f4.format(a), f4.format(b));
            binary += 1;
        }
    }
    Ok(format!("100 random + {binary} binary forms"))
}

fn c9() -> Outcome {
    let f = gf4();
    let a = f.generator().unwrap();
    let p = |x: Elem| f.mul(f.square(x), x) + x + a;
    let found: Vec<Elem> = f.elements().filter(|&x| p(x).is_zero()).collect();
    ensure!(found == vec![a + Elem::ONE], "exhaustive roots {:?}", found);
    let poly = Poly::parse(&f, "x^3+x+a", "x").map_err(err)?;
    ensure!(poly::roots(&f, &poly) == found, "root finder disagrees");

    let out = Command::new(env!("CARGO_BIN_EXE_trform"))
        .args(["cmd=verify", "claim=example1"])
        .output()
        .map_err(|e| e.to_string())?;
    ensure!(out.status.success(), "exit status {:?}", out.status.code());
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    let report = &json[0];
    ensure!(report["verdict"] == "documented-discrepancy", "verdict {}", report["verdict"]);
    let details = &report["details"];
    for key in ["factorization", "etale_form", "etale_arf", "stated_form"] {
        ensure!(details[key].is_string(), "missing detail {key}");
    }
    ensure!(details["stated_form"] == "[1,a]", "stated form {}", details["stated_form"]);
    ensure!(details["roots"] == "a+1", "reported roots {}", details["roots"]);
    Ok(format!("root a+1, factorization {}", details["factorization"].as_str().unwrap_or("")))
}

fn c10() -> Outcome {
    const TRIALS: usize = 100;
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let (f2, f4, f8) = (gf2(), gf4(), gf8());
    let a4 = f4.generator().unwrap();
    let pool = [
        csa::matrix_algebra(&f4, 2),
        csa::matrix_algebra(&f2, 3),
        csa::matrix_algebra(&f2, 4),
        csa::quaternion_algebra(&f8, f8.generator().unwrap(), f8.nonresidue()).map_err(err)?,
        csa::crossed_product(&ext(&f2, 3), Cocycle::Trivial).map_err(err)?.algebra,
        csa::crossed_product(&ext(&f4, 2), Cocycle::Cyclic(a4)).map_err(err)?.algebra,
    ];

    // polar identity and t1(x^2) = t1(x)^2
    for _ in 0..TRIALS {
        let alg = &pool[rng.gen_range(0..pool.len())];
        let f = alg.field();
        let x = alg.random_element(&mut rng);
        let y = alg.random_element(&mut rng);
        let lhs = polar(alg, &x, &y)?;
        let rhs = t1(alg, &alg.mul(&x, &y))? + f.mul(t1(alg, &x)?, t1(alg, &y)?);
        ensure!(lhs == rhs, "polar identity on {}", alg.label());
        ensure!(t1(alg, &alg.mul(&x, &x))? == f.square(t1(alg, &x)?), "t1(x^2) on {}", alg.label());
    }

    // tensor product identities
    let factors = [
        (csa::matrix_algebra(&f4, 2), csa::quaternion_algebra(&f4, a4, Elem::ONE).map_err(err)?),
        (csa::matrix_algebra(&f2, 3), csa::crossed_product(&ext(&f2, 3), Cocycle::Trivial).map_err(err)?.algebra),
        (csa::quaternion_algebra(&f2, Elem::ONE, Elem::ONE).map_err(err)?, csa::matrix_algebra(&f2, 3)),
        (csa::matrix_algebra(&f2, 2), csa::matrix_algebra(&f2, 2)),
    ];
    let products: Vec<Algebra> =
        factors.iter().map(|(a, b)| csa::tensor_product(a, b).map_err(err)).collect::<Result<_, _>>()?;
    for _ in 0..TRIALS {
        let k = rng.gen_range(0..factors.len());
        let ((a_alg, b_alg), t) = (&factors[k], &products[k]);
        let f = t.field();
        let (a, a2) = (a_alg.random_element(&mut rng), a_alg.random_element(&mut rng));
        let (b, b2) = (b_alg.random_element(&mut rng), b_alg.random_element(&mut rng));
        let (ab, ab2) = (kron(f, &a, &b), kron(f, &a2, &b2));
        let (ta, tb) = (t1(a_alg, &a)?, t1(b_alg, &b)?);
        ensure!(t1(t, &ab)? == f.mul(ta, tb), "trace of a⊗b");
        let t2ab = f.mul(f.square(ta), t2(b_alg, &b)?) + f.mul(f.square(tb), t2(a_alg, &a)?);
        ensure!(t2(t, &ab)? == t2ab, "t2 of a⊗b");
        let bt = polar(t, &ab, &ab2)?;
        let first = f.mul(t1(a_alg, &a_alg.mul(&a, &a2))?, polar(b_alg, &b, &b2)?)
            + f.mul(f.mul(tb, t1(b_alg, &b2)?), polar(a_alg, &a, &a2)?);
        let second = f.mul(t1(b_alg, &b_alg.mul(&b, &b2))?, polar(a_alg, &a, &a2)?)
            + f.mul(f.mul(ta, t1(a_alg, &a2)?), polar(b_alg, &b, &b2)?);
        ensure!(bt == first && bt == second, "polar form of a⊗b");
        // one factor of each pair trace-free
        let mut pa = [a_alg.random_element(&mut rng), random_trace_zero(a_alg, &mut rng)?];
        let mut pb = [b_alg.random_element(&mut rng), random_trace_zero(b_alg, &mut rng)?];
        if rng.gen() {
            pa.swap(0, 1);
        }
        if rng.gen() {
            pb.swap(0, 1);
        }
        let lhs = polar(t, &kron(f, &pa[0], &pb[0]), &kron(f, &pa[1], &pb[1]))?;
        let rhs = f.mul(polar(a_alg, &pa[0], &pa[1])?, polar(b_alg, &pb[0], &pb[1])?);
        ensure!(lhs == rhs, "polar product rule with trace-free factors");
    }

    // crossed product items ii-vi and the splitting representation
    let crossed: Vec<CrossedProduct> = vec![
        csa::crossed_product(&ext(&f2, 2), Cocycle::Trivial).map_err(err)?,
        csa::crossed_product(&ext(&f2, 3), Cocycle::Trivial).map_err(err)?,
        csa::crossed_product(&ext(&f2, 4), Cocycle::Trivial).map_err(err)?,
        csa::crossed_product(&ext(&f2, 5), Cocycle::Trivial).map_err(err)?,
        csa::crossed_product(&ext(&f4, 2), Cocycle::Cyclic(a4)).map_err(err)?,
        csa::crossed_product(&ext(&f4, 3), Cocycle::Cyclic(a4 + Elem::ONE)).map_err(err)?,
        csa::crossed_product(&ext(&f8, 2), Cocycle::Cyclic(f8.generator().unwrap())).map_err(err)?,
    ];
    for _ in 0..TRIALS {
        let cp = &crossed[rng.gen_range(0..crossed.len())];
        let (alg, e, d) = (&cp.algebra, &cp.ext, cp.degree());
        let x = alg.random_element(&mut rng);
        ensure!(t1(alg, &x)? == e.relative_trace(cp.component(&x, 0)), "t1 is the trace of c_id");
        let (i, j) = (rng.gen_range(1..d), rng.gen_range(0..d));
        let (c, c2) = (e.random(&mut rng), e.random(&mut rng));
        ensure!(t1(alg, &cp.element(i, c))?.is_zero(), "u_s c not trace-free");
        let k = rng.gen_range(0..d);
        if (k + j) % d != 0 {
            ensure!(polar(alg, &cp.element(k, c), &cp.element(j, c2))?.is_zero(), "b(u_s c, u_t d) != 0");
        }
        ensure!(polar(alg, &cp.element(0, c), &cp.element(i, c2))?.is_zero(), "E not orthogonal to u_s E");
        if (2 * i) % d != 0 {
            ensure!(t2(alg, &cp.element(i, c))?.is_zero(), "t2(u_r c) != 0 with r^2 != id");
        }
        let rep = Poly::new(linalg::charpoly(e, &csa::crossed_splitting_rep(cp, &x)));
        let regular = csa::reduced_charpoly_via(alg, &x, TraceRoute::Regular).map_err(err)?;
        ensure!(&rep == regular.poly(), "splitting representation disagrees with regular route");
    }

    // odd-degree algebras share the class of the matrix algebra
    let bases = [f2.clone(), f4.clone(), f8.clone()];
    for _ in 0..TRIALS {
        let base = &bases[rng.gen_range(0..bases.len())];
        let n = [3, 5][rng.gen_range(0..2)];
        let cocycle = Cocycle::Cyclic(base.random_nonzero(&mut rng));
        let cp = csa::crossed_product(&ext(base, n), cocycle).map_err(err)?;
        let w = trace_witt(&cp.algebra)?;
        ensure!(sig(&w) == matrix_table(base, n), "crossed({n}) over {}: {:?}", base.describe(), sig(&w));
    }
    Ok(format!("6 suites x {TRIALS} trials"))
}

fn c11() -> Outcome {
    let f = gf2();
    let m3 = csa::matrix_algebra(&f, 3);
    let w = trace_witt(&csa::tensor_product(&m3, &m3).map_err(err)?)?;
    let n = 9;
    let planes = (n * n - 1) / 2;
    ensure!(n % 8 == 1, "9 = 1 mod 8");
    ensure!(sig(&w) == (80, 0, 0), "got {:?}", sig(&w));
    ensure!(w.hyperbolic_planes() == planes, "{} planes", w.hyperbolic_planes());
    harness(Claim::Remark2)?;
    Ok(format!("dim 80, Arf 0, {planes} H"))
}

#[cfg(feature = "rational")]
mod rational {
    use super::*;
    use trform_core::field::rational::RationalField;
    use trform_core::field::FieldOps;
    use trform_core::theorems::GaloisVerdict;

    // GF(2)[t] as bit masks, bit i the coefficient of t^i

    fn clmul(a: u64, b: u64) -> u64 {
        (0..64).filter(|i| b >> i & 1 == 1).fold(0, |acc, i| acc ^ (a << i))
    }

    fn to_poly(mask: u64) -> Poly {
        Poly::new((0..64).map(|i| Elem(mask >> i & 1)).collect())
    }

    /// c = num/den lies in wp(GF(2)(t)) iff s^2 + s q = c q^2 for some
    /// s, q of degree at most 6.
    fn wp_search(num: u64, den: u64) -> bool {
        (1u64..128).any(|q| (0u64..128).any(|s| clmul(clmul(s, s) ^ clmul(s, q), den) == clmul(num, clmul(q, q))))
    }

    /// Whether x^3 + x + c has a root other than x in E = F[x]/(x^3+x+c),
    /// among y = c0 + c1 x + c2 x^2 with c_i in GF(2)[t] of degree <= 6.
    /// Such a root is a root of X^2 + x X + x^2 + 1.
    fn second_root(c: u64) -> bool {
        let sq = |a: u64| clmul(a, a);
        for c2 in 0u64..128 {
            for c1 in 0u64..128 {
                if sq(c1) ^ sq(c2) ^ c1 ^ 1 != 0 {
                    continue;
                }
                for c0 in 0u64..128 {
                    let k0 = sq(c0) ^ clmul(c2, c) ^ 1;
                    let k1 = clmul(sq(c2), c) ^ c0 ^ c2;
                    if k0 == 0 && k1 == 0 {
                        return true;
                    }
                }
            }
        }
        false
    }

    pub fn c12() -> Outcome {
        let f = gf2();
        let k = RationalField::new(&f, "t");
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let mut members = 0;
        for i in 0..50 {
            let (num, den) = if i % 2 == 0 {
                (rng.gen_range(0u64..32), rng.gen_range(1u64..32))
            } else {
                // u^2 + u for u = s/q of degree <= 2
                let (s, q) = (rng.gen_range(0u64..8), rng.gen_range(1u64..8));
                (clmul(s, s) ^ clmul(s, q), clmul(q, q))
            };
            let c = k.make(to_poly(num), to_poly(den)).map_err(err)?;
            let expect = wp_search(num, den);
            members += expect as usize;
            ensure!(k.wp_member(&c) == expect, "{}: library {}, search {expect}", k.format(&c), !expect);
        }
        // x^3 + x + t, and x^3 + x + 1 as a Galois control
        let mut verdicts = Vec::new();
        for (c, galois) in [(0b10u64, false), (0b1, true)] {
            let coeffs = [k.from_poly(to_poly(c)), k.one(), k.zero(), k.one()];
            let check = theorems::galois_obstruction_rational(&k, &coeffs).map_err(err)?;
            let split = second_root(c);
            ensure!(split == galois, "root search on constant {c:#b}: split {split}");
            ensure!(!(split && check.verdict == GaloisVerdict::NotGalois), "not-galois reported for a split extension");
            verdicts.push(check.verdict.as_str());
        }
        ensure!(verdicts[0] == "not-galois", "x^3+x+t: {}", verdicts[0]);
        Ok(format!("50 inputs ({members} in wp), x^3+x+t {}", verdicts[0]))
    }
}

fn main() -> ExitCode {
    let start = Instant::now();
    let tensors = tensor_cases();
    let (cases, secs) = match &tensors {
        Ok((c, s)) => (c.as_slice(), *s),
        Err(_) => (&[][..], 0.0),
    };
    let with_tensors = |run: &dyn Fn(&[TensorCase]) -> Outcome| match &tensors {
        Ok(_) => run(cases),
        Err(e) => Err(format!("tensor corpus: {e}")),
    };
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome + '_>)> = vec![
        ("matrix algebra table", Box::new(c1)),
        ("nonsingularity over the corpus", Box::new(|| with_tensors(&c2))),
        ("crossed products vs extension forms", Box::new(c3)),
        ("tensor product branches", Box::new(|| with_tensors(&|t| c4(t, secs)))),
        ("Arf invariant of even degree", Box::new(c5)),
        ("tensor invariants", Box::new(|| with_tensors(&c6))),
        ("Arf via even Clifford center", Box::new(c7)),
        ("Witt class vs isotropic search", Box::new(c8)),
        ("x^3+x+a over GF(4) audit", Box::new(c9)),
        ("identity suites", Box::new(c10)),
        ("Mat(3)⊗Mat(3)", Box::new(c11)),
        #[cfg(feature = "rational")]
        ("rational function field", Box::new(rational::c12)),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or(p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default())
        });
        let ms = t.elapsed().as_millis();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS {name}: {detail} [{ms} ms]", i + 1),
            Err(e) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name}: {e} [{ms} ms]", i + 1);
            }
        }
    }
    #[cfg(not(feature = "rational"))]
    println!("criterion 12 SKIP rational function field: feature disabled");
    println!("total {:.2}s, {failed} failed", start.elapsed().as_secs_f64());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
