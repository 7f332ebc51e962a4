use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use trform_core::csa::{self, Algebra, Cocycle, CrossedProduct, TraceRoute};
use trform_core::field::{linalg, poly};
use trform_core::theorems::{predicted_matrix_class, small_fields};
use trform_core::{Elem, Field, Poly};

fn config() -> Config {
    Config { cases: 100, rng_seed: RngSeed::Fixed(0), failure_persistence: None, ..Config::default() }
}

fn ext(base: &Field, n: usize) -> Field {
    base.extend(&poly::first_irreducible(base, n), "g").unwrap()
}

fn t1(alg: &Algebra, x: &[Elem]) -> Elem {
    csa::reduced_charpoly(alg, x).unwrap().t1()
}

fn t2(alg: &Algebra, x: &[Elem]) -> Elem {
    csa::reduced_charpoly(alg, x).unwrap().t2()
}

fn polar(alg: &Algebra, x: &[Elem], y: &[Elem]) -> Elem {
    t2(alg, &alg.add(x, y)) + t2(alg, x) + t2(alg, y)
}

fn kron(f: &Field, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    a.iter().flat_map(|&x| b.iter().map(move |&y| f.mul(x, y))).collect()
}

fn trace_free(alg: &Algebra, rng: &mut ChaCha8Rng) -> Vec<Elem> {
    let f = alg.field();
    csa::trace_zero_subspace(alg)
        .unwrap()
        .dense_basis()
        .iter()
        .fold(alg.zero_vector(), |v, b| alg.add(&v, &alg.scale(f.random(rng), b)))
}

fn pool() -> Vec<Algebra> {
    let [f2, f4, f8] = small_fields();
    let a = f4.generator().unwrap();
    vec![
        csa::matrix_algebra(&f4, 2),
        csa::matrix_algebra(&f2, 3),
        csa::matrix_algebra(&f8, 4),
        csa::quaternion_algebra(&f8, f8.generator().unwrap(), f8.nonresidue()).unwrap(),
        csa::crossed_product(&ext(&f2, 3), Cocycle::Trivial).unwrap().algebra,
        csa::crossed_product(&ext(&f4, 2), Cocycle::Cyclic(a)).unwrap().algebra,
        csa::tensor_product(&csa::quaternion_algebra(&f2, Elem::ONE, Elem::ONE).unwrap(), &csa::matrix_algebra(&f2, 2))
            .unwrap(),
    ]
}

fn crossed_pool() -> Vec<CrossedProduct> {
    let [f2, f4, f8] = small_fields();
    let a = f4.generator().unwrap();
    vec![
        csa::crossed_product(&ext(&f2, 2), Cocycle::Trivial).unwrap(),
        csa::crossed_product(&ext(&f2, 3), Cocycle::Trivial).unwrap(),
        csa::crossed_product(&ext(&f2, 4), Cocycle::Trivial).unwrap(),
        csa::crossed_product(&ext(&f2, 6), Cocycle::Trivial).unwrap(),
        csa::crossed_product(&ext(&f4, 2), Cocycle::Cyclic(a)).unwrap(),
        csa::crossed_product(&ext(&f4, 3), Cocycle::Cyclic(a + Elem::ONE)).unwrap(),
        csa::crossed_product(&ext(&f8, 2), Cocycle::Cyclic(f8.generator().unwrap())).unwrap(),
    ]
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn polar_form_from_reduced_trace(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let algs = pool();
        let alg = &algs[rng.gen_range(0..algs.len())];
        let f = alg.field();
        let (x, y) = (alg.random_element(&mut rng), alg.random_element(&mut rng));
        prop_assert_eq!(polar(alg, &x, &y), t1(alg, &alg.mul(&x, &y)) + f.mul(t1(alg, &x), t1(alg, &y)));
        prop_assert_eq!(alg.b_t2(&x, &y).unwrap(), polar(alg, &x, &y));
        prop_assert_eq!(alg.t1(&x).unwrap(), t1(alg, &x));
    }

    #[test]
    fn trace_of_square_is_square_of_trace(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let algs = pool();
        let alg = &algs[rng.gen_range(0..algs.len())];
        let f = alg.field();
        let x = alg.random_element(&mut rng);
        prop_assert_eq!(t1(alg, &alg.mul(&x, &x)), f.square(t1(alg, &x)));
        let y = alg.random_element(&mut rng);
        let nrd = |v: &[Elem]| csa::reduced_charpoly(alg, v).unwrap().nrd();
        prop_assert_eq!(nrd(&alg.mul(&x, &y)), f.mul(nrd(&x), nrd(&y)));
    }

    #[test]
    fn tensor_product_identities(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let [f2, f4, _] = small_fields();
        let a4 = f4.generator().unwrap();
        let factors = [
            (csa::matrix_algebra(&f4, 2), csa::quaternion_algebra(&f4, a4, Elem::ONE).unwrap()),
            (csa::matrix_algebra(&f2, 3), csa::crossed_product(&ext(&f2, 3), Cocycle::Trivial).unwrap().algebra),
            (csa::quaternion_algebra(&f2, Elem::ONE, Elem::ONE).unwrap(), csa::matrix_algebra(&f2, 3)),
        ];
        let (aa, ba) = &factors[rng.gen_range(0..factors.len())];
        let t = csa::tensor_product(aa, ba).unwrap();
        let f = t.field();
        let (a, a2) = (aa.random_element(&mut rng), aa.random_element(&mut rng));
        let (b, b2) = (ba.random_element(&mut rng), ba.random_element(&mut rng));
        let (ab, ab2) = (kron(f, &a, &b), kron(f, &a2, &b2));
        let (ta, tb) = (t1(aa, &a), t1(ba, &b));
        prop_assert_eq!(t1(&t, &ab), f.mul(ta, tb));
        prop_assert_eq!(t2(&t, &ab), f.mul(f.square(ta), t2(ba, &b)) + f.mul(f.square(tb), t2(aa, &a)));
        let bt = polar(&t, &ab, &ab2);
        prop_assert_eq!(
            bt,
            f.mul(t1(aa, &aa.mul(&a, &a2)), polar(ba, &b, &b2)) + f.mul(f.mul(tb, t1(ba, &b2)), polar(aa, &a, &a2))
        );
        prop_assert_eq!(
            bt,
            f.mul(t1(ba, &ba.mul(&b, &b2)), polar(aa, &a, &a2)) + f.mul(f.mul(ta, t1(aa, &a2)), polar(ba, &b, &b2))
        );
        let (a0, b0) = (trace_free(aa, &mut rng), trace_free(ba, &mut rng));
        prop_assert_eq!(polar(&t, &kron(f, &a0, &b), &kron(f, &a2, &b0)), f.mul(polar(aa, &a0, &a2), polar(ba, &b, &b0)));
        // 1 (x) B_0 and A_0 (x) 1 are orthogonal
        let one_b0 = kron(f, aa.identity(), &b0);
        let a0_one = kron(f, &a0, ba.identity());
        prop_assert!(polar(&t, &one_b0, &a0_one).is_zero());
    }

    #[test]
    fn crossed_product_orthogonality(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pool = crossed_pool();
        let cp = &pool[rng.gen_range(0..pool.len())];
        let (alg, e, d) = (&cp.algebra, &cp.ext, cp.degree());
        let x = alg.random_element(&mut rng);
        prop_assert_eq!(t1(alg, &x), e.relative_trace(cp.component(&x, 0)));
        let (i, j, k) = (rng.gen_range(1..d), rng.gen_range(0..d), rng.gen_range(0..d));
        let (c, c2) = (e.random(&mut rng), e.random(&mut rng));
        prop_assert!(t1(alg, &cp.element(i, c)).is_zero());
        if (k + j) % d != 0 {
            prop_assert!(polar(alg, &cp.element(k, c), &cp.element(j, c2)).is_zero());
        }
        prop_assert!(polar(alg, &cp.element(0, c), &cp.element(i, c2)).is_zero());
        if (2 * i) % d != 0 {
            prop_assert!(t2(alg, &cp.element(i, c)).is_zero());
        }
        // on E itself t_2 is the second coefficient of the field polynomial
        let g = e.generator().unwrap();
        let cols: Vec<Vec<Elem>> = (0..d).map(|s| e.coeffs(e.mul(c, e.pow(g, s as u64)))).collect();
        let m: Vec<Vec<Elem>> = (0..d).map(|r| (0..d).map(|s| cols[s][r]).collect()).collect();
        let cpoly = linalg::charpoly(&cp.base, &m);
        prop_assert_eq!(t2(alg, &cp.element(0, c)), cpoly[d - 2]);
    }

    #[test]
    fn splitting_representation_agrees(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pool = crossed_pool();
        let cp = &pool[rng.gen_range(0..pool.len())];
        let x = cp.algebra.random_element(&mut rng);
        let rep = Poly::new(linalg::charpoly(&cp.ext, &csa::crossed_splitting_rep(cp, &x)));
        let regular = csa::reduced_charpoly_via(&cp.algebra, &x, TraceRoute::Regular).unwrap();
        prop_assert_eq!(&rep, regular.poly());
        let module = csa::reduced_charpoly_via(&cp.algebra, &x, TraceRoute::Splitting).unwrap();
        prop_assert_eq!(&module, &regular);
    }

    #[test]
    fn odd_degree_algebras_match_matrix_class(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let fields = small_fields();
        let base = &fields[rng.gen_range(0..3)];
        let n = [3, 5][rng.gen_range(0..2)];
        let cp = csa::crossed_product(&ext(base, n), Cocycle::Cyclic(base.random_nonzero(&mut rng))).unwrap();
        let w = csa::second_trace_form(&cp.algebra).unwrap().form.witt_class();
        prop_assert_eq!(w, predicted_matrix_class(base, n));
    }
}
