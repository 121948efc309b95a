//! Exact structure-constant models of the directed Fukaya category of the `T_{p,q,r}`
//! Lefschetz fibration and of the exceptional sequence on the blown-up plane `Y_{p,q,r}`,
//! with the checks that compare them.
//!
//! All arithmetic is over `BigInt`/`BigRational`.

pub mod cusp;
pub mod error;
pub mod fukaya;
pub mod hms;
pub mod lattice;
pub mod picard;
pub mod quiver;
pub mod sheafalg;
pub mod triple;

pub use cusp::{charge, dual_cycle, triangle_cycle, Block, CycleSeq};
pub use error::{Error, Result};
pub use fukaya::{
    build_directed, build_directed_algebra, build_fiber_bimodule, coxeter_matrix, expected_dim_table,
    expected_total_dim, restrict_to_fiber, BimoduleModel, DimTable, DirectedAlgebra, FukayaGen,
};
pub use hms::{
    check_phi_A, check_restriction_square, euler_crosscheck, k0_localization, k0_localization_twist, parse_word,
    serre_vs_twist, vanishing_cycle_classes, AlgebraIsoReport, Direction, EulerReport, ExceptionalCollectionState,
    LocalizationResult, Move, SerreReport, SquareReport, VanishingLedger,
};
pub use lattice::{cokernel_invariants, smith_normal_form, IntMatrix, SmithDecomposition};
pub use picard::{
    chern_character, named_classes, riemann_roch_matrix, twist_matrix, ChernCharacter, DivisorClass, ObjectId,
};
pub use quiver::{AlgebraMap, GradedAlgebra, Quiver, Relation};
pub use sheafalg::{build_sheaf, build_sheaf_algebra, fiber_sheaf_dims, restriction_images, SheafAlgebra, SheafGen};
pub use triple::{Chain, Slot, Triple, GRID};
