use num_bigint::BigInt;
use proptest::prelude::*;
use tpqr_core::fukaya::{antisymmetrized, build_fiber_bimodule, dim_table_of, fibre_object_of};
use tpqr_core::hms::{localization_of, Direction, ExceptionalCollectionState};
use tpqr_core::lattice::{cokernel_invariants, IntMatrix};
use tpqr_core::picard::{intersection, named_classes};
use tpqr_core::sheafalg::fiber_sheaf_dims;
use tpqr_core::*;

fn t(p: u32, q: u32, r: u32) -> Triple {
    Triple::new(p, q, r).unwrap()
}

fn n(x: i64) -> BigInt {
    BigInt::from(x)
}

#[test]
fn grid_comparisons() {
    for (p, q, r) in GRID {
        let tr = t(p, q, r);
        assert_eq!(
            dim_table_of(&build_directed_algebra(tr).unwrap()),
            expected_dim_table(tr)
        );
        assert_eq!(dim_table_of(&build_sheaf_algebra(tr)), expected_dim_table(tr));
        assert_eq!(build_sheaf_algebra(tr).total_dim(), expected_total_dim(tr));
        assert!(check_phi_A(tr).unwrap().passed(), "{tr}");
        assert!(euler_crosscheck(tr).unwrap().passed(), "{tr}");
        assert!(serre_vs_twist(tr).unwrap().passed(), "{tr}");
        assert!(check_restriction_square(tr).unwrap().passed(), "{tr}");
    }
}

#[test]
fn lattice_geometry() {
    for (p, q, r) in GRID {
        let tr = t(p, q, r);
        let c = named_classes(tr);
        let sq = |name: &str| intersection(&c[name], &c[name]).unwrap();
        assert_eq!(sq("H~"), n(-2));
        assert_eq!(sq("D1"), n(1 - p as i64));
        assert_eq!(sq("D2"), n(1 - q as i64));
        assert_eq!(sq("D3"), n(1 - r as i64));
        assert_eq!(sq("D"), n(9 - (p + q + r) as i64));
        assert!(c["D"].try_add(&c["K"]).unwrap().is_zero());
    }
}

#[test]
fn bimodule_matches_fibre_sheaves_on_corresponding_pairs() {
    let fibre = fiber_sheaf_dims();
    for tr in [t(3, 3, 3), t(4, 1, 2)] {
        let b = build_fiber_bimodule(tr).unwrap();
        let slots = tr.slots();
        for (i, &si) in slots.iter().enumerate() {
            for (j, &sj) in slots.iter().enumerate() {
                let key = (fibre_object_of(si), fibre_object_of(sj));
                assert_eq!(
                    b.graded_dim(i, j),
                    fibre.get(&key).cloned().unwrap_or_default(),
                    "{i} {j}"
                );
            }
        }
        let xb = antisymmetrized(&b.base.algebra.euler_matrix());
        assert_eq!(xb.add(&xb.transpose()), IntMatrix::zeros(xb.rows(), xb.cols()));
        let (e1, e3) = (tr.e_position(1), tr.e_position(3));
        assert_eq!(xb[(0, e1)], n(1));
        assert_eq!(xb[(e1, e3)], n(6));
    }
}

fn unitriangular(size: usize, entries: &[i64]) -> IntMatrix {
    let mut it = entries.iter().cycle();
    IntMatrix::from_fn(size, size, |i, j| match i.cmp(&j) {
        std::cmp::Ordering::Equal => n(1),
        std::cmp::Ordering::Less => n(*it.next().unwrap()),
        std::cmp::Ordering::Greater => n(0),
    })
}

proptest! {
    #[test]
    fn mutation_preserves_structure(size in 2usize..=6, entries in prop::collection::vec(-4i64..=4, 15), moves in prop::collection::vec((1usize..6, any::<bool>()), 0..6)) {
        let chi = unitriangular(size, &entries);
        let labels = (1..=size).map(|i| format!("X{i}")).collect();
        let mut s = ExceptionalCollectionState::from_euler(chi.clone(), labels).unwrap();
        let base = localization_of(&coxeter_matrix(&chi).unwrap());
        for (slot, left) in moves {
            if slot >= size { continue; }
            s = s.mutate(slot, if left { Direction::Left } else { Direction::Right }).unwrap();
            prop_assert!(s.is_exceptional());
            let b = s.basis_matrix();
            prop_assert_eq!(s.euler_matrix(), &(&b.transpose() * &chi) * &b);
            let l = localization_of(&coxeter_matrix(&s.euler_matrix()).unwrap());
            prop_assert_eq!((l.free_rank, l.torsion), (base.free_rank, base.torsion.clone()));
        }
    }

    #[test]
    fn cokernel_ignores_unimodular_conjugation(ops in prop::collection::vec((0usize..7, 0usize..7, -3i64..=3), 0..12)) {
        let s = coxeter_matrix(&riemann_roch_matrix(t(2, 1, 1))).unwrap();
        let size = s.rows();
        let mut u = IntMatrix::identity(size);
        for (i, j, k) in ops {
            if i != j {
                let e = IntMatrix::from_fn(size, size, |a, b| if a == b { n(1) } else if (a, b) == (i, j) { n(k) } else { n(0) });
                u = &u * &e;
            }
        }
        let conj = &(&u.inverse().unwrap() * &s) * &u;
        let id = IntMatrix::identity(size);
        prop_assert_eq!(cokernel_invariants(&id.sub(&conj)), cokernel_invariants(&id.sub(&s)));
    }
}
