//! Fixtures shared by the criterion benches in `benches/`.

use tpqr_core::hms::{ExceptionalCollectionState, Move};
use tpqr_core::lattice::IntMatrix;
use tpqr_core::{coxeter_matrix, Triple};

/// `I - S` for the collection of `t` after a fixed mutation word, whose entries
/// are large enough to exercise the Smith normal form.
pub fn mutated_i_minus_s(t: Triple) -> IntMatrix {
    let state = ExceptionalCollectionState::for_triple(t);
    let word: Vec<Move> = (1..state.len())
        .map(Move::left)
        .chain((1..state.len() / 2).map(Move::right))
        .collect();
    let s = coxeter_matrix(&state.apply_word(&word).unwrap().euler_matrix()).unwrap();
    IntMatrix::identity(s.rows()).sub(&s)
}
