use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use endtn::{classify, compose, conjugate, enumerate_all, permutations, Parity, Transformation};

fn random_transformation(n: usize, rng: &mut impl Rng) -> Transformation {
    let images: Vec<usize> = (0..n).map(|_| rng.gen_range(1..=n)).collect();
    Transformation::new(&images).unwrap()
}

fn any_transformation(n: usize) -> impl Strategy<Value = Transformation> {
    proptest::collection::vec(1..=n, n).prop_map(|v| Transformation::new(&v).unwrap())
}

fn any_permutation(n: usize) -> impl Strategy<Value = Transformation> {
    Just((1..=n).collect::<Vec<usize>>()).prop_shuffle().prop_map(|v| Transformation::new(&v).unwrap())
}

fn sign(p: Parity) -> i32 {
    match p {
        Parity::Even => 1,
        Parity::Odd => -1,
        Parity::NotAPermutation => panic!("not a permutation"),
    }
}

/// Composition straight from the definition, left to right.
fn compose_by_hand(s: &Transformation, t: &Transformation) -> Vec<usize> {
    s.images_one_based().iter().map(|&x| t.images_one_based()[x - 1]).collect()
}

#[test]
fn compose_is_associative_on_small_degrees() {
    for n in 2..=3 {
        let all: Vec<Transformation> = enumerate_all(n).unwrap().collect();
        for a in &all {
            for b in &all {
                let ab = compose(a, b).unwrap();
                for c in &all {
                    assert_eq!(compose(&ab, c).unwrap(), compose(a, &compose(b, c).unwrap()).unwrap());
                }
            }
        }
    }
}

#[test]
fn compose_is_associative_on_random_triples() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for n in [5, 6] {
        for _ in 0..100_000 {
            let (a, b, c) = (random_transformation(n, &mut rng), random_transformation(n, &mut rng), random_transformation(n, &mut rng));
            assert_eq!(compose(&compose(&a, &b).unwrap(), &c).unwrap(), compose(&a, &compose(&b, &c).unwrap()).unwrap());
        }
    }
}

#[test]
fn idempotent_flag_matches_squaring() {
    for n in 1..=4 {
        for t in enumerate_all(n).unwrap() {
            assert_eq!(classify(&t).is_idempotent, compose(&t, &t).unwrap() == t, "{t}");
        }
    }
}

#[test]
fn permutation_counts() {
    for n in 1..=6 {
        let perms: Vec<Transformation> = permutations(n).unwrap().collect();
        assert_eq!(perms.len(), (1..=n).product::<usize>());
        let even = perms.iter().filter(|g| g.parity() == Parity::Even).count();
        let expected = if n == 1 { 1 } else { perms.len() / 2 };
        assert_eq!(even, expected, "n={n}");
    }
}

proptest! {
    #[test]
    fn compose_matches_definition(s in any_transformation(7), t in any_transformation(7)) {
        prop_assert_eq!(compose(&s, &t).unwrap().images_one_based(), compose_by_hand(&s, &t));
    }

    #[test]
    fn parity_is_a_homomorphism(g in any_permutation(6), h in any_permutation(6)) {
        let gh = compose(&g, &h).unwrap();
        prop_assert_eq!(sign(gh.parity()), sign(g.parity()) * sign(h.parity()));
    }

    #[test]
    fn conjugation_composes(t in any_transformation(6), g in any_permutation(6), h in any_permutation(6)) {
        let gh = compose(&g, &h).unwrap();
        prop_assert_eq!(conjugate(&t, &gh).unwrap(), conjugate(&conjugate(&t, &g).unwrap(), &h).unwrap());
    }

    #[test]
    fn conjugation_is_g_inverse_t_g(t in any_transformation(5), g in any_permutation(5)) {
        let expected = compose(&compose(&g.inverse().unwrap(), &t).unwrap(), &g).unwrap();
        prop_assert_eq!(conjugate(&t, &g).unwrap(), expected);
    }

    #[test]
    fn text_round_trip(t in any_transformation(9)) {
        prop_assert_eq!(t.to_string().parse::<Transformation>().unwrap(), t);
    }

    #[test]
    fn lex_index_round_trip(t in any_transformation(6)) {
        prop_assert_eq!(Transformation::from_lex_index(6, t.lex_index()).unwrap(), t);
    }

    #[test]
    fn rank_counts_distinct_images(t in any_transformation(8)) {
        let mut images = t.images_one_based();
        images.sort_unstable();
        images.dedup();
        prop_assert_eq!(t.rank(), images.len());
        prop_assert_eq!(classify(&t).rank, images.len());
    }
}
