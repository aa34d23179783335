use freedyn::automorphisms::{random_automorphism, Automorphism};
use freedyn::dynamics::{omega_limit_boundary, verify_cycle, w_sequence, OmegaConfig, Point};
use freedyn::graphmaps::{rose_path_to_word, try_make_train_track, word_to_rose_path, GraphMap};
use freedyn::words::{gromov_product, EpWord, GromovProduct, Letter, Word};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn word(rank: usize, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((0..rank, any::<bool>()), 0..=max_len)
        .prop_map(move |raw| Word::reduce(&raw.into_iter().map(|(g, inv)| Letter::new(g, inv)).collect::<Vec<_>>(), rank).unwrap())
}

fn automorphism(rank: usize, max_moves: usize) -> impl Strategy<Value = Automorphism> {
    (any::<u64>(), 0..=max_moves).prop_map(move |(seed, moves)| {
        random_automorphism(rank, moves, &mut ChaCha8Rng::seed_from_u64(seed))
    })
}

fn is_reduced(w: &Word) -> bool {
    w.letters().windows(2).all(|p| p[0] != p[1].inverse())
}

proptest! {
    #[test]
    fn products_are_reduced_and_associative(x in word(3, 10), y in word(3, 10), z in word(3, 10)) {
        let xy = x.mul(&y);
        prop_assert!(is_reduced(&xy));
        prop_assert_eq!(xy.mul(&z), x.mul(&y.mul(&z)));
        prop_assert!(x.mul(&x.invert()).is_empty());
    }

    #[test]
    fn conjugacy_key_is_a_class_invariant(x in word(3, 10), g in word(3, 6)) {
        let conj = g.mul(&x).mul(&g.invert());
        prop_assert_eq!(conj.conjugacy_key(), x.conjugacy_key());
    }

    #[test]
    fn automorphisms_are_homomorphisms_with_inverses(alpha in automorphism(3, 8), x in word(3, 8), y in word(3, 8)) {
        let ax = alpha.apply(&x).unwrap();
        prop_assert_eq!(alpha.apply(&x.mul(&y)).unwrap(), ax.mul(&alpha.apply(&y).unwrap()));
        prop_assert_eq!(alpha.inverse().apply(&ax).unwrap(), x);
    }

    #[test]
    fn w_sequence_recursion(alpha in automorphism(3, 6), w in word(3, 4)) {
        let seq = w_sequence(&alpha, &w, 6);
        for p in 1..seq.len() {
            prop_assert_eq!(&seq[p], &alpha.apply(&seq[p - 1]).unwrap().mul(&w));
        }
    }

    #[test]
    fn ep_normal_form_is_canonical(u in word(2, 4), c in word(2, 4), k in 1usize..4) {
        prop_assume!(!c.is_empty());
        let (conj, core) = c.cyclic_reduce();
        prop_assume!(!core.is_empty());
        let u2 = u.mul(&conj);
        let x = EpWord::normalize(&u2, &core).unwrap();
        // repeating the period or unrolling it into the prefix names the same point
        let y = EpWord::normalize(&u2.mul(&core), &core.pow(k as i64)).unwrap();
        prop_assert_eq!(&x, &y);
        prop_assert!(x.same_point(&y));
        prop_assert_eq!(gromov_product(&x, &y), GromovProduct::Infinite);
    }

    #[test]
    fn gromov_product_is_common_prefix(x in word(2, 12), y in word(2, 12)) {
        let n = x.letters().iter().zip(y.letters()).take_while(|(a, b)| a == b).count();
        prop_assert_eq!(gromov_product(&x, &y), GromovProduct::Finite(n));
        prop_assert_eq!(gromov_product(&x, &y), gromov_product(&y, &x));
    }

    #[test]
    fn rose_paths_round_trip(x in word(3, 12)) {
        prop_assert_eq!(rose_path_to_word(&word_to_rose_path(&x), 3), x);
    }

    #[test]
    fn graph_map_text_round_trips(alpha in automorphism(2, 6)) {
        let f = try_make_train_track(&GraphMap::rose_from_automorphism(&alpha), 40, 4).map().clone();
        prop_assert_eq!(GraphMap::from_text(&f.to_text()).unwrap(), f);
    }

    #[test]
    fn certified_limits_are_cycles(alpha in automorphism(2, 6), g in word(2, 4)) {
        prop_assume!(!g.is_empty());
        let cfg = OmegaConfig::default();
        if let Ok(lim) = omega_limit_boundary(&alpha, &Point::Finite(g), &cfg) {
            prop_assert!(verify_cycle(&alpha, &lim, cfg.cert_depth));
            prop_assert_eq!(lim.points.len(), lim.period);
        }
    }
}
