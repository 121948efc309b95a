//! Comparisons between the Fukaya-side and sheaf-side data.

mod mutation;

pub use mutation::{parse_word, Direction, ExceptionalCollectionState, Move};

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::Result;
use crate::fukaya::{
    build_directed, coxeter_matrix, fibre_algebra, restrict_to_fiber, satisfies_serre_identity, x_sign,
    DirectedAlgebra, FukayaGen,
};
use crate::lattice::{cokernel_invariants, rational_inverse, IntMatrix};
use crate::picard::{
    canonical_class, chern_character, euler_pairing, exceptional_objects, h_tilde, riemann_roch_matrix,
    strict_transform, strict_transform_name, twist_matrix, ChernCharacter, DivisorClass, ObjectId,
};
use crate::quiver::{scaled, AlgebraMap, Combination, GradedAlgebra};
use crate::sheafalg::{
    build_sheaf, fibre_sheaf_algebra, monomial_mul, restrict_sheaves_to_fiber, restriction_images, SheafAlgebra,
    SheafGen, DEGREE_ONE,
};
use crate::triple::{Chain, Slot, Triple};

/// Image of a Fukaya-side generator under `φ_A`, as a sheaf generator with a sign.
pub fn phi_generator(g: FukayaGen) -> (SheafGen, i64) {
    let mono = |i: usize| DEGREE_ONE[i - 1];
    match g {
        FukayaGen::Unit => (SheafGen::Unit, 1),
        FukayaGen::E(c, i, j) => (SheafGen::E(c, i, j), 1),
        FukayaGen::X(c, i, j) => (SheafGen::X(c, i, j), x_sign(i)),
        FukayaGen::Y(c, i, k) => (SheafGen::Y(c, i, k as u32 - 1), 1),
        FukayaGen::A(i) | FukayaGen::C(i) => (SheafGen::Mono(mono(i)), 1),
        FukayaGen::B(i, j) => (SheafGen::Mono(monomial_mul(mono(i), mono(j))), 1),
    }
}

/// `φ_A: A_F -> A_C`, identity on object positions (`P_i ↦ D(P,i)`, `E_k ↦ πO(k-1)`).
pub fn phi_a(directed: &DirectedAlgebra, sheaf: &SheafAlgebra) -> AlgebraMap {
    let n = directed.algebra.num_objects();
    let mut morphisms = BTreeMap::new();
    for (&(i, j), basis) in directed.algebra.homs() {
        let images = (0..basis.len())
            .map(|a| {
                let (g, sign) = phi_generator(directed.generator(i, j, a));
                sheaf.index_of(i, j, g).map(|idx| scaled(idx, sign)).unwrap_or_default()
            })
            .collect();
        morphisms.insert((i, j), images);
    }
    AlgebraMap {
        object_map: (0..n).collect(),
        morphisms,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraIsoReport {
    pub triple: Triple,
    pub object_map: Vec<(String, String)>,
    pub dimension_mismatches: Vec<String>,
    pub non_bijective_blocks: Vec<String>,
    pub pairs_checked: usize,
    pub mismatches: Vec<String>,
}

impl AlgebraIsoReport {
    pub fn passed(&self) -> bool {
        self.dimension_mismatches.is_empty() && self.non_bijective_blocks.is_empty() && self.mismatches.is_empty()
    }
}

fn block_is_invertible(map: &AlgebraMap, i: usize, j: usize, len: usize) -> bool {
    let m: Vec<Vec<BigRational>> = (0..len)
        .map(|a| {
            let img = map.image(i, j, a);
            if img.keys().any(|&k| k >= len) {
                return vec![BigRational::zero(); len];
            }
            (0..len)
                .map(|t| img.get(&t).cloned().unwrap_or_else(BigRational::zero))
                .collect()
        })
        .collect();
    rational_inverse(&m).is_some()
}

/// Compares `A_F` and `A_C` through `φ_A`: dimensions first, then the basis bijection,
/// then every structure constant.
pub fn compare_via_phi(directed: &DirectedAlgebra, sheaf: &SheafAlgebra) -> AlgebraIsoReport {
    let (a, c) = (&directed.algebra, &sheaf.algebra);
    let object_map = a.objects().iter().cloned().zip(c.objects().iter().cloned()).collect();
    let mut report = AlgebraIsoReport {
        triple: directed.triple,
        object_map,
        dimension_mismatches: Vec::new(),
        non_bijective_blocks: Vec::new(),
        pairs_checked: 0,
        mismatches: Vec::new(),
    };
    let n = a.num_objects();
    if c.num_objects() != n {
        report
            .dimension_mismatches
            .push(format!("{} objects vs {}", n, c.num_objects()));
        return report;
    }
    for i in 0..n {
        for j in 0..n {
            let (da, dc) = (a.graded_dim(i, j), c.graded_dim(i, j));
            if da != dc {
                report.dimension_mismatches.push(format!(
                    "hom({}, {}): {:?} vs {:?}",
                    a.objects()[i],
                    a.objects()[j],
                    da,
                    dc
                ));
            }
        }
    }
    if !report.dimension_mismatches.is_empty() {
        return report;
    }
    let phi = phi_a(directed, sheaf);
    for (&(i, j), basis) in a.homs() {
        if !block_is_invertible(&phi, i, j, basis.len()) {
            report
                .non_bijective_blocks
                .push(format!("hom({}, {})", a.objects()[i], a.objects()[j]));
        }
    }
    let functor = phi.check_functor(a, c);
    report.pairs_checked = functor.pairs_checked;
    report.mismatches = functor.violations;
    report
}

#[allow(non_snake_case)]
pub fn check_phi_A(triple: Triple) -> Result<AlgebraIsoReport> {
    Ok(compare_via_phi(&build_directed(triple)?, &build_sheaf(triple)))
}

/// Negates `ê^X_{1,2}·ê^X_{2,3}` (or `ê·x̂` on a chain of length 2) in a copy of `A_C`.
pub fn flip_chain_sign(sheaf: &SheafAlgebra) -> Option<SheafAlgebra> {
    let t = sheaf.triple;
    let mut out = sheaf.clone();
    for chain in Chain::ALL {
        let n = t.chain_len(chain);
        let pos = |i| t.chain_position(chain, i);
        if n >= 3 {
            let a = sheaf.index_of(pos(1), pos(2), SheafGen::E(chain, 1, 2))?;
            let b = sheaf.index_of(pos(2), pos(3), SheafGen::E(chain, 2, 3))?;
            let c = sheaf.index_of(pos(1), pos(3), SheafGen::E(chain, 1, 3))?;
            out.algebra
                .override_product((pos(1), pos(2), pos(3), a, b), scaled(c, -1));
            return Some(out);
        }
        if n == 2 {
            let e1 = t.e_position(1);
            let a = sheaf.index_of(pos(1), pos(2), SheafGen::E(chain, 1, 2))?;
            let b = sheaf.index_of(pos(2), e1, SheafGen::Y(chain, 2, 0))?;
            let c = sheaf.index_of(pos(1), e1, SheafGen::Y(chain, 1, 0))?;
            out.algebra.override_product((pos(1), pos(2), e1, a, b), scaled(c, -1));
            return Some(out);
        }
    }
    None
}

/// Outcome of comparing the two ways around the restriction square.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareReport {
    pub triple: Triple,
    pub objects_checked: usize,
    pub object_failures: Vec<String>,
    pub morphisms_checked: usize,
    pub morphism_failures: Vec<String>,
    /// Functor checks for `c_Fuk`, `c_vect`, `φ_A`, `φ_B`.
    pub functor_failures: Vec<String>,
    /// All `e^X_{i,j}` share one image; all `x^X_{i,j}` share one image up to sign.
    pub collapse_ok: bool,
}

impl SquareReport {
    pub fn passed(&self) -> bool {
        self.object_failures.is_empty()
            && self.morphism_failures.is_empty()
            && self.functor_failures.is_empty()
            && self.collapse_ok
    }
}

/// `φ_B: B_F -> B_C`, extended from `φ_A` on `(1,1,1)`.
pub fn phi_b() -> Result<(AlgebraMap, GradedAlgebra, GradedAlgebra)> {
    let (fibre_f, bf) = fibre_algebra()?;
    let (fibre_c, bc) = fibre_sheaf_algebra()?;
    let phi = phi_a(&fibre_f, &fibre_c);
    let map = bf
        .extend_map(&phi, &fibre_f.algebra, &fibre_c.algebra, &bc)
        .expect("φ_A is invertible on every block of the fibre algebra");
    Ok((map, bf.algebra, bc.algebra))
}

pub fn check_restriction_square(triple: Triple) -> Result<SquareReport> {
    let c_fuk = restrict_to_fiber(triple)?;
    let c_vect = restrict_sheaves_to_fiber(triple)?;
    let phi = phi_a(&c_fuk.source, &c_vect.source);
    let (phi_b, bf, bc) = phi_b()?;
    let a = &c_fuk.source.algebra;

    let mut functor_failures = Vec::new();
    let checks = [
        ("c_Fuk", c_fuk.map.check_functor(a, &bf)),
        ("c_vect", c_vect.map.check_functor(&c_vect.source.algebra, &bc)),
        ("phi_A", phi.check_functor(a, &c_vect.source.algebra)),
        ("phi_B", phi_b.check_functor(&bf, &bc)),
    ];
    for (name, rep) in checks {
        functor_failures.extend(rep.violations.into_iter().map(|v| format!("{name}: {v}")));
    }

    let upper = c_fuk.map.compose(&phi_b);
    let lower = phi.compose(&c_vect.map);
    let ledger = restriction_images(triple)?;
    let mut object_failures = Vec::new();
    for (i, slot) in triple.slots().into_iter().enumerate() {
        let (u, l) = (upper.object_map[i], lower.object_map[i]);
        if u != l {
            object_failures.push(format!(
                "{}: {} vs {}",
                a.objects()[i],
                bc.objects()[u],
                bc.objects()[l]
            ));
            continue;
        }
        let entry = &ledger[i];
        let expected = match slot {
            Slot::Chain(c, _) => {
                let mut m = [0; 3];
                m[c.component()] = -1;
                u == c.component() && entry.multidegree == m
            }
            Slot::E(k) => {
                let d = k as i64 - 1;
                u == 2 + k && entry.multidegree == [d; 3] && entry.consistent()
            }
        };
        if !expected {
            object_failures.push(format!(
                "{} lands on {} with multidegree {:?}",
                a.objects()[i],
                bc.objects()[u],
                entry.multidegree
            ));
        }
    }

    let mut morphism_failures = Vec::new();
    let mut morphisms_checked = 0;
    for (&(i, j), basis) in a.homs() {
        for (x, elem) in basis.iter().enumerate() {
            morphisms_checked += 1;
            let (u, l) = (upper.image(i, j, x), lower.image(i, j, x));
            if u != l {
                morphism_failures.push(format!("{}: {:?} vs {:?}", elem.label, u, l));
            }
        }
    }

    let mut collapse_ok = true;
    for chain in Chain::ALL {
        let mut e_images: Vec<Combination> = Vec::new();
        let mut x_images: Vec<Combination> = Vec::new();
        for &(i, j) in a.homs().keys() {
            for x in 0..a.hom(i, j).len() {
                match c_fuk.source.generator(i, j, x) {
                    FukayaGen::E(c, ..) if c == chain => e_images.push(c_fuk.map.image(i, j, x)),
                    FukayaGen::X(c, ..) if c == chain => {
                        let img = c_fuk.map.image(i, j, x);
                        let flip = img.values().next().is_some_and(|v| v.is_negative());
                        x_images.push(if flip {
                            img.into_iter().map(|(k, v)| (k, -v)).collect()
                        } else {
                            img
                        });
                    }
                    _ => {}
                }
            }
        }
        collapse_ok &= e_images.windows(2).all(|w| w[0] == w[1]) && x_images.windows(2).all(|w| w[0] == w[1]);
    }

    Ok(SquareReport {
        triple,
        objects_checked: triple.num_objects(),
        object_failures,
        morphisms_checked,
        morphism_failures,
        functor_failures,
        collapse_ok,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EulerReport {
    pub triple: Triple,
    pub quiver: IntMatrix,
    pub sheaf_algebra: IntMatrix,
    pub riemann_roch: IntMatrix,
    pub mismatches: Vec<(usize, usize)>,
    pub unitriangular: bool,
}

impl EulerReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty() && self.unitriangular
    }
}

/// Euler matrices from the path algebra, the sheaf algebra and Riemann–Roch, entrywise.
pub fn euler_crosscheck(triple: Triple) -> Result<EulerReport> {
    let quiver = build_directed(triple)?.algebra.euler_matrix();
    let sheaf_algebra = build_sheaf(triple).algebra.euler_matrix();
    let riemann_roch = riemann_roch_matrix(triple);
    let n = quiver.rows();
    let mut mismatches = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if quiver[(i, j)] != riemann_roch[(i, j)] || sheaf_algebra[(i, j)] != riemann_roch[(i, j)] {
                mismatches.push((i, j));
            }
        }
    }
    let unitriangular = quiver.is_upper_unitriangular();
    Ok(EulerReport {
        triple,
        quiver,
        sheaf_algebra,
        riemann_roch,
        mismatches,
        unitriangular,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SerreReport {
    pub triple: Triple,
    pub coxeter: IntMatrix,
    pub twist: IntMatrix,
    pub equal: bool,
    pub serre_identity: bool,
    pub twist_preserves_form: bool,
}

impl SerreReport {
    pub fn passed(&self) -> bool {
        self.equal && self.serre_identity && self.twist_preserves_form
    }
}

/// The Serre matrix of the quiver-side Euler form against twisting by `K`.
pub fn serre_vs_twist(triple: Triple) -> Result<SerreReport> {
    let chi = build_directed(triple)?.algebra.euler_matrix();
    let coxeter = coxeter_matrix(&chi)?;
    let twist = twist_matrix(&canonical_class(triple))?;
    let serre_identity = satisfies_serre_identity(&chi, &coxeter);
    let twist_preserves_form = (&(&twist.transpose() * &chi) * &twist) == chi;
    Ok(SerreReport {
        triple,
        equal: coxeter == twist,
        coxeter,
        twist,
        serre_identity,
        twist_preserves_form,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalizationResult {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
    pub i_minus_s: IntMatrix,
}

/// `coker(I - S)`.
pub fn localization_of(s: &IntMatrix) -> LocalizationResult {
    let i_minus_s = IntMatrix::identity(s.rows()).sub(s);
    let (free_rank, torsion) = cokernel_invariants(&i_minus_s);
    LocalizationResult {
        free_rank,
        torsion,
        i_minus_s,
    }
}

/// K-level localization with `S` from the Fukaya pipeline.
pub fn k0_localization(triple: Triple) -> Result<LocalizationResult> {
    let chi = build_directed(triple)?.algebra.euler_matrix();
    Ok(localization_of(&coxeter_matrix(&chi)?))
}

/// K-level localization with `S` from twisting by `K`.
pub fn k0_localization_twist(triple: Triple) -> Result<LocalizationResult> {
    Ok(localization_of(&twist_matrix(&canonical_class(triple))?))
}

/// Position in the original chain of the `j`-th object of the reversed chain.
pub fn reversed_chain_index(len: usize, j: usize) -> usize {
    len + 1 - j
}

/// `cone = sign·sheaf + shift·[pt]`, if such a relation exists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gauge {
    pub sign: i64,
    pub point_shift: BigInt,
}

pub fn find_gauge(cone: &ChernCharacter, sheaf: &ChernCharacter) -> Option<Gauge> {
    [1i64, -1].into_iter().find_map(|sign| {
        let diff = cone.try_sub(&sheaf.scale(&BigInt::from(sign))).ok()?;
        (diff.rank.is_zero() && diff.c1.is_zero() && diff.ch2_doubled.is_even()).then(|| Gauge {
            sign,
            point_shift: &diff.ch2_doubled / 2,
        })
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VanishingEntry {
    pub chain: Chain,
    /// Index `j` of the matching cycle in the reversed chain.
    pub index: usize,
    pub cone: ChernCharacter,
    pub sheaf_name: String,
    pub sheaf: ChernCharacter,
    pub gauge: Option<Gauge>,
    pub cone_self_pairing: BigInt,
    pub sheaf_self_pairing: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VanishingLedger {
    pub triple: Triple,
    pub entries: Vec<VanishingEntry>,
    pub h_tilde: ChernCharacter,
    pub h_tilde_twisted: ChernCharacter,
    pub h_difference: ChernCharacter,
    pub h_difference_is_point: bool,
    pub h_self_pairings: (BigInt, BigInt),
}

/// Classes of the cones `{D_{X,n-j} -> D_{X,n-j+1}}` against `i_*O_{Ẽ_{X,n-j+1}}`, and the `H̃` pair.
pub fn vanishing_cycle_classes(triple: Triple) -> Result<VanishingLedger> {
    let mut entries = Vec::new();
    for chain in Chain::ALL {
        let n = triple.chain_len(chain);
        for j in 1..n {
            let hi = reversed_chain_index(n, j);
            let cone = chern_character(ObjectId::ChainSheaf(chain, hi), triple)?
                .try_sub(&chern_character(ObjectId::ChainSheaf(chain, hi - 1), triple)?)?;
            let sheaf = ChernCharacter::structure_sheaf_of_curve(&strict_transform(triple, chain, hi));
            entries.push(VanishingEntry {
                chain,
                index: j,
                gauge: find_gauge(&cone, &sheaf),
                cone_self_pairing: euler_pairing(&cone, &cone)?,
                sheaf_self_pairing: euler_pairing(&sheaf, &sheaf)?,
                sheaf_name: format!("O_{}", strict_transform_name(chain, hi)),
                cone,
                sheaf,
            });
        }
    }
    let h = h_tilde(triple);
    let h_tilde = ChernCharacter::structure_sheaf_of_curve(&h);
    // any class of degree -1 on H~; f^P_p·H~ = 1
    let minus_one = DivisorClass::exceptional(triple, Chain::P, triple.chain_len(Chain::P)).scale(&BigInt::from(-1));
    let h_tilde_twisted = h_tilde.twist(&minus_one)?;
    let h_difference = h_tilde.try_sub(&h_tilde_twisted)?;
    let h_difference_is_point = h_difference == ChernCharacter::point(triple);
    let h_self_pairings = (
        euler_pairing(&h_tilde, &h_tilde)?,
        euler_pairing(&h_tilde_twisted, &h_tilde_twisted)?,
    );
    Ok(VanishingLedger {
        triple,
        entries,
        h_tilde,
        h_tilde_twisted,
        h_difference,
        h_difference_is_point,
        h_self_pairings,
    })
}

/// Labels of the exceptional objects paired with the Fukaya-side objects.
pub fn object_correspondence(triple: Triple) -> Vec<(String, String)> {
    let labels = crate::fukaya::object_labels(triple);
    labels
        .into_iter()
        .zip(exceptional_objects(triple).iter().map(ToString::to_string))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::IntMatrix;
    use crate::triple::GRID;

    fn t(p: u32, q: u32, r: u32) -> Triple {
        Triple::new(p, q, r).unwrap()
    }

    #[test]
    fn phi_a_is_clean() {
        for tr in [t(3, 3, 3), t(6, 3, 2), t(1, 1, 1)] {
            let rep = check_phi_A(tr).unwrap();
            assert!(rep.passed(), "{tr}: {:?}", rep);
            assert!(rep.pairs_checked > 0);
        }
    }

    #[test]
    fn flipped_sign_is_caught() {
        for tr in [t(3, 3, 3), t(2, 1, 1)] {
            let d = build_directed(tr).unwrap();
            let bad = flip_chain_sign(&build_sheaf(tr)).unwrap();
            let rep = compare_via_phi(&d, &bad);
            assert!(rep.dimension_mismatches.is_empty());
            assert!(!rep.mismatches.is_empty());
        }
        assert!(flip_chain_sign(&build_sheaf(t(1, 1, 1))).is_none());
    }

    #[test]
    fn square_commutes() {
        for tr in [t(3, 3, 3), t(1, 1, 1), t(4, 2, 1)] {
            let rep = check_restriction_square(tr).unwrap();
            assert!(rep.passed(), "{tr}: {:?}", rep);
        }
    }

    #[test]
    fn euler_and_serre_on_grid() {
        for (p, q, r) in GRID {
            let tr = t(p, q, r);
            let e = euler_crosscheck(tr).unwrap();
            assert!(e.passed(), "{tr}");
            let s = serre_vs_twist(tr).unwrap();
            assert!(s.passed(), "{tr}");
        }
    }

    #[test]
    fn euler_anchor_entries() {
        let tr = t(3, 3, 3);
        let e = euler_crosscheck(tr).unwrap();
        assert_eq!(e.quiver[(0, tr.e_position(2))], BigInt::from(1));
        assert_eq!(e.quiver[(tr.e_position(1), tr.e_position(3))], BigInt::from(6));
    }

    #[test]
    fn localization_pipelines_agree() {
        for tr in [t(3, 3, 3), t(2, 2, 2), t(4, 4, 2)] {
            let a = k0_localization(tr).unwrap();
            let b = k0_localization_twist(tr).unwrap();
            assert_eq!((a.free_rank, a.torsion), (b.free_rank, b.torsion));
        }
    }

    #[test]
    fn localization_examples() {
        let l = localization_of(&IntMatrix::identity(3));
        assert_eq!(l.free_rank, 3);
        assert!(l.torsion.is_empty());
        let l = localization_of(&IntMatrix::from_rows(&[vec![-1]]));
        assert_eq!((l.free_rank, l.torsion), (0, vec![BigInt::from(2)]));
    }

    #[test]
    fn vanishing_cycles() {
        let v = vanishing_cycle_classes(t(3, 3, 3)).unwrap();
        assert_eq!(v.entries.len(), 6);
        for e in &v.entries {
            assert_eq!(
                e.gauge,
                Some(Gauge {
                    sign: -1,
                    point_shift: BigInt::from(1)
                })
            );
            assert_eq!(e.sheaf_self_pairing, BigInt::from(2));
            assert_eq!(e.cone_self_pairing, BigInt::from(2));
        }
        assert_eq!(v.entries[0].sheaf_name, "O_E~(P,3)");
        assert!(v.h_difference_is_point);
        assert_eq!(v.h_self_pairings, (BigInt::from(2), BigInt::from(2)));
        assert!(vanishing_cycle_classes(t(1, 1, 1)).unwrap().entries.is_empty());
    }
}
