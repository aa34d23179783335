use rand::Rng;

use super::{Automorphism, Endomorphism, NielsenMove, Side};
use crate::words::Word;

/// A uniformly chosen elementary Nielsen move on a rank-`rank` tuple.
fn random_move<R: Rng + ?Sized>(rank: usize, rng: &mut R) -> NielsenMove {
    if rank == 1 || rng.gen_ratio(1, 8) {
        return NielsenMove::Invert(rng.gen_range(0..rank));
    }
    let target = rng.gen_range(0..rank);
    let mut source = rng.gen_range(0..rank - 1);
    if source >= target {
        source += 1;
    }
    let side = if rng.gen() { Side::Left } else { Side::Right };
    NielsenMove::Multiply { target, source, side, inverse: rng.gen() }
}

/// Images of the basis after `moves` random Nielsen moves. Always an
/// automorphism, since every move is invertible.
pub fn random_nielsen_product<R: Rng + ?Sized>(rank: usize, moves: usize, rng: &mut R) -> Endomorphism {
    let mut tuple: Vec<Word> = (0..rank).map(|i| Word::generator(rank, i)).collect();
    for _ in 0..moves {
        random_move(rank, rng).apply(&mut tuple);
    }
    Endomorphism::new(tuple).expect("tuple has the right rank")
}

/// A random certified automorphism built from `moves` Nielsen moves.
pub fn random_automorphism<R: Rng + ?Sized>(rank: usize, moves: usize, rng: &mut R) -> Automorphism {
    let phi = random_nielsen_product(rank, moves, rng);
    Automorphism::verify_and_invert(&phi).expect("products of Nielsen moves are automorphisms")
}
