use num_bigint::BigInt;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qsuper::hookcomb::{
    enumerate_hook_partitions, hook_tableaux_dim, howe_dim_sum, supermatrix_monomial_count, HookPartition,
};
use qsuper::invariants::{permutation_sign, sign_by_transpositions, InvariantParams, InvariantTheory};
use qsuper::uqaction::Action;
use qsuper::{AlgebraPresentation, CoeffMatrix, Laurent, NCElement, Word};

fn laurent() -> impl Strategy<Value = Laurent> {
    prop::collection::vec((-4i32..=4, -6i64..=6), 0..5).prop_map(Laurent::from_terms)
}

fn small_laurent() -> impl Strategy<Value = Laurent> {
    prop::collection::vec((-1i32..=1, -2i64..=2), 0..3).prop_map(Laurent::from_terms)
}

fn matrix(max: usize) -> impl Strategy<Value = CoeffMatrix> {
    (1..=max, 1..=max).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec(small_laurent(), c), r)
            .prop_map(move |rows| CoeffMatrix::from_rows(c, rows).unwrap())
    })
}

/// Low-rank matrices, so that nullspaces are nontrivial.
fn product_matrix() -> impl Strategy<Value = CoeffMatrix> {
    (1usize..=4, 1usize..=3, 1usize..=4).prop_flat_map(|(r, k, c)| {
        (
            prop::collection::vec(prop::collection::vec(small_laurent(), k), r),
            prop::collection::vec(prop::collection::vec(small_laurent(), c), k),
        )
            .prop_map(move |(a, b)| {
                CoeffMatrix::from_rows(k, a).unwrap().mul(&CoeffMatrix::from_rows(c, b).unwrap()).unwrap()
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn laurent_ring_axioms(a in laurent(), b in laurent(), c in laurent()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a - &a, Laurent::zero());
        prop_assert_eq!(&a * &Laurent::one(), a.clone());
    }

    #[test]
    fn eval_at_one_is_multiplicative(a in laurent(), b in laurent()) {
        prop_assert_eq!((&a * &b).eval_q1(), a.eval_q1() * b.eval_q1());
        prop_assert_eq!((&a + &b).eval_q1(), a.eval_q1() + b.eval_q1());
    }

    #[test]
    fn laurent_text_round_trip(a in laurent()) {
        let back: Laurent = a.to_string().parse().unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn exact_division(a in laurent(), b in laurent()) {
        prop_assume!(!b.is_zero());
        prop_assert_eq!((&a * &b).div_exact(&b), Some(a));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn rank_equals_transpose_rank(m in matrix(4)) {
        prop_assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn nullspace_is_kernel(m in product_matrix()) {
        let ns = m.nullspace();
        prop_assert_eq!(ns.len() + m.rank(), m.cols());
        for v in &ns {
            prop_assert!(m.mul_vec(v).unwrap().iter().all(Laurent::is_zero));
        }
        if !ns.is_empty() {
            prop_assert_eq!(CoeffMatrix::from_columns(m.cols(), &ns).unwrap().rank(), ns.len());
        }
    }

    #[test]
    fn graded_sign_is_well_defined(
        odd in prop::collection::vec(any::<bool>(), 2..7),
        raw in prop::collection::vec(0usize..100, 0..12),
    ) {
        let word: Vec<usize> = raw.iter().map(|t| t % (odd.len() - 1)).collect();
        let (perm, neg) = sign_by_transpositions(&word, &odd);
        prop_assert_eq!(neg, permutation_sign(&perm, &odd));
    }
}

#[test]
fn monomial_count_equals_hook_sum() {
    for k in 0..=2 {
        for l in 0..=2 {
            for r in 0..=2 {
                for s in 0..=2 {
                    for n in 0..=5 {
                        assert_eq!(
                            supermatrix_monomial_count(k, l, r, s, n),
                            howe_dim_sum(k, l, r, s, n),
                            "({k},{l},{r},{s}) size {n}"
                        );
                    }
                }
            }
        }
    }
}

/// Weyl dimension of the irreducible GL_k module of highest weight `λ`.
fn weyl_dim(lambda: &HookPartition, k: usize) -> u64 {
    let (mut num, mut den) = (BigInt::from(1), BigInt::from(1));
    for i in 0..k {
        for j in i + 1..k {
            num *= (lambda.part(i + 1) + j) as i64 - (lambda.part(j + 1) + i) as i64;
            den *= (j - i) as i64;
        }
    }
    u64::try_from(num / den).unwrap()
}

#[test]
fn tableaux_match_weyl_dimension() {
    for k in 1..=4 {
        for size in 0..=6 {
            for lam in enumerate_hook_partitions(k, 0, size) {
                assert_eq!(hook_tableaux_dim(&lam, k, 0).unwrap(), weyl_dim(&lam, k), "{lam:?} k={k}");
            }
        }
    }
}

fn random_element(pres: &AlgebraPresentation, rng: &mut ChaCha8Rng, max_len: usize) -> NCElement {
    let gens = pres.generators();
    let mut e = NCElement::zero();
    for _ in 0..rng.gen_range(1..=3) {
        let len = rng.gen_range(0..=max_len);
        let w = Word((0..len).map(|_| gens[rng.gen_range(0..gens.len())]).collect());
        let c = Laurent::monomial(rng.gen_range(-3i64..=3), rng.gen_range(-2..=2));
        e.add_term(w, c);
    }
    e
}

const SPECS: [&str; 6] = ["M:2,1,1,2", "Mb:1,2,2,1", "Mt:2,1,2,1", "P:1,1,1,1,1,1", "P:2,0,1,1,1,1", "M:2,2,2,2"];

#[test]
fn element_text_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for spec in SPECS {
        let pres = AlgebraPresentation::from_spec(spec).unwrap();
        for _ in 0..200 {
            let e = random_element(&pres, &mut rng, 4);
            let back = pres.parse_element(&e.to_string()).unwrap();
            assert_eq!(back, e, "{spec}: {e}");
            let nf = pres.normal_form(&e).unwrap();
            let nf_back = pres.parse_element(&nf.to_string()).unwrap();
            assert_eq!(nf_back, nf);
            assert_eq!(pres.normal_form(&nf).unwrap(), nf);
            assert!(nf.is_normal());
        }
    }
}

#[test]
fn rewriting_stays_within_cubic_budget() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for spec in SPECS {
        let pres = AlgebraPresentation::from_spec(spec).unwrap();
        let gens = pres.generators();
        for _ in 0..300 {
            let len = rng.gen_range(1..=7);
            let w = Word((0..len).map(|_| gens[rng.gen_range(0..gens.len())]).collect());
            let (_, steps) = pres.normal_form_counted(&NCElement::from_word(w, Laurent::one()));
            assert!(steps <= 4 * len * len * len, "{spec}: {steps} steps for length {len}");
        }
    }
}

#[test]
fn multiplication_is_associative_on_elements() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for spec in SPECS {
        let pres = AlgebraPresentation::from_spec(spec).unwrap();
        for _ in 0..100 {
            let (a, b, c) = (
                random_element(&pres, &mut rng, 2),
                random_element(&pres, &mut rng, 2),
                random_element(&pres, &mut rng, 2),
            );
            let left = pres.multiply(&pres.multiply(&a, &b).unwrap(), &c).unwrap();
            let right = pres.multiply(&a, &pres.multiply(&b, &c).unwrap()).unwrap();
            assert_eq!(left, right, "{spec}");
        }
    }
}

#[test]
fn psi_is_multiplicative() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for (k, l, r, s, m, n) in [(1, 1, 1, 1, 1, 1), (2, 0, 2, 0, 1, 0), (1, 1, 2, 1, 1, 2), (2, 1, 1, 1, 0, 1)] {
        let th = InvariantTheory::new(InvariantParams::new(k, l, r, s, m, n).unwrap()).unwrap();
        let mt = th.mtilde();
        for _ in 0..100 {
            let a = random_element(mt, &mut rng, 2);
            let b = random_element(mt, &mut rng, 2);
            let lhs = th.psi(&mt.multiply(&a, &b).unwrap()).unwrap();
            let rhs = th.p().multiply(&th.psi(&a).unwrap(), &th.psi(&b).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn invariants_closed_under_products() {
    for (k, l, r, s, m, n) in [(1, 1, 1, 1, 1, 1), (2, 0, 1, 1, 1, 1), (1, 1, 2, 0, 2, 1)] {
        let prm = InvariantParams::new(k, l, r, s, m, n).unwrap();
        let th = InvariantTheory::new(prm).unwrap();
        let act = Action::new(th.p()).unwrap();
        for a in prm.rows().iter() {
            for b in prm.cols().iter() {
                for c in prm.rows().iter() {
                    for d in prm.cols().iter() {
                        let prod = th.p().multiply(th.x(a, b).unwrap(), th.x(c, d).unwrap()).unwrap();
                        assert!(act.is_invariant(&prod).unwrap(), "X{a}{b} X{c}{d}");
                    }
                }
            }
        }
        let non = NCElement::generator(th.p().generators()[0]);
        assert!(!act.is_invariant(&non).unwrap());
    }
}
