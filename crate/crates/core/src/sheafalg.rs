//! The sheaf-side algebra `A_C(p,q,r)` assembled from Ext data and monomial
//! multiplication, the fibre algebra on the anticanonical cycle and the
//! restriction `c_vect`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::error::Result;
use crate::fukaya::{fibre_object_of, DimTable};
use crate::picard::{chern_character, component, exceptional_objects, intersection, ObjectId};
use crate::quiver::{single, AlgebraBuilder, AlgebraMap, Combination, GradedAlgebra, TrivialExtension};
use crate::triple::{Chain, Slot, Triple};

/// Exponents of `u^a v^b w^c`.
pub type Monomial = [u32; 3];

pub const VARIABLES: [char; 3] = ['u', 'v', 'w'];

/// Basis of `hom(πO(s), πO(s+1))`.
pub const DEGREE_ONE: [Monomial; 3] = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];

/// Basis of `hom(πO, πO(2))` in the order `u², uv, v², vw, w², wu`.
pub const DEGREE_TWO: [Monomial; 6] = [[2, 0, 0], [1, 1, 0], [0, 2, 0], [0, 1, 1], [0, 0, 2], [1, 0, 1]];

pub fn monomial_degree(m: Monomial) -> u32 {
    m.iter().sum()
}

pub fn monomial_mul(a: Monomial, b: Monomial) -> Monomial {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

pub fn monomial_label(m: Monomial) -> String {
    if m == [1, 0, 1] {
        return "wu".into();
    }
    let mut s = String::new();
    for (var, &e) in VARIABLES.iter().zip(&m) {
        match e {
            0 => {}
            1 => s.push(*var),
            _ => s.push_str(&format!("{var}^{e}")),
        }
    }
    s
}

fn monomial_basis(degree: u32) -> &'static [Monomial] {
    match degree {
        1 => &DEGREE_ONE,
        2 => &DEGREE_TWO,
        _ => &[],
    }
}

/// Which variable each chain's generator `ŷ` is killed by.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChainAnnihilator;

impl ChainAnnihilator {
    /// `P ↦ w`, `Q ↦ u`, `R ↦ v`, as an index into `VARIABLES`.
    pub fn killing_variable(chain: Chain) -> usize {
        match chain {
            Chain::P => 2,
            Chain::Q => 0,
            Chain::R => 1,
        }
    }

    pub fn kills(chain: Chain, m: Monomial) -> bool {
        m[Self::killing_variable(chain)] > 0
    }
}

/// What a basis element of `A_C` is.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SheafGen {
    Unit,
    /// `ê^X_{i,j}`
    E(Chain, usize, usize),
    /// `x̂^X_{i,j}`
    X(Chain, usize, usize),
    /// `ŷ^X_{i,s}`: `D(X,i) -> πO(s)`
    Y(Chain, usize, u32),
    Mono(Monomial),
}

pub fn sheaf_generator_label(g: SheafGen) -> String {
    match g {
        SheafGen::Unit => "id".into(),
        SheafGen::E(c, i, j) => format!("ê^{c}_{{{i},{j}}}"),
        SheafGen::X(c, i, j) => format!("x̂^{c}_{{{i},{j}}}"),
        SheafGen::Y(c, i, s) => format!("ŷ^{c}_{{{i},{s}}}"),
        SheafGen::Mono(m) => monomial_label(m),
    }
}

pub fn sheaf_object_labels(triple: Triple) -> Vec<String> {
    exceptional_objects(triple).iter().map(ToString::to_string).collect()
}

#[derive(Debug, Clone)]
pub struct SheafAlgebra {
    pub triple: Triple,
    pub algebra: GradedAlgebra,
    pub generators: BTreeMap<(usize, usize), Vec<SheafGen>>,
}

impl SheafAlgebra {
    pub fn generator(&self, i: usize, j: usize, a: usize) -> SheafGen {
        if i == j {
            SheafGen::Unit
        } else {
            self.generators[&(i, j)][a]
        }
    }

    pub fn index_of(&self, i: usize, j: usize, g: SheafGen) -> Option<usize> {
        if g == SheafGen::Unit {
            return (i == j).then_some(0);
        }
        self.generators.get(&(i, j))?.iter().position(|h| *h == g)
    }
}

fn generator_degree(g: SheafGen) -> i32 {
    match g {
        SheafGen::X(..) => 1,
        _ => 0,
    }
}

/// Product of two non-unit generators, as a generator of the target block.
fn generator_product(a: SheafGen, b: SheafGen) -> Option<SheafGen> {
    use SheafGen::*;
    match (a, b) {
        (E(c, i, _), E(_, _, k)) => Some(E(c, i, k)),
        (E(c, i, _), X(_, _, k)) | (X(c, i, _), E(_, _, k)) => Some(X(c, i, k)),
        (X(..), X(..)) => None,
        (E(c, i, _), Y(_, _, s)) => Some(Y(c, i, s)),
        (X(..), Y(..)) => None,
        (Y(c, i, s), Mono(m)) => (!ChainAnnihilator::kills(c, m)).then_some(Y(c, i, s + monomial_degree(m))),
        (Mono(m), Mono(n)) => Some(Mono(monomial_mul(m, n))),
        _ => None,
    }
}

pub fn build_sheaf(triple: Triple) -> SheafAlgebra {
    let mut builder = AlgebraBuilder::new(sheaf_object_labels(triple));
    let mut generators: BTreeMap<(usize, usize), Vec<SheafGen>> = BTreeMap::new();
    let e = |s: u32| triple.e_position(s as usize + 1);
    for chain in Chain::ALL {
        let n = triple.chain_len(chain);
        let pos = |i| triple.chain_position(chain, i);
        for i in 1..=n {
            for j in i + 1..=n {
                generators
                    .entry((pos(i), pos(j)))
                    .or_default()
                    .extend([SheafGen::E(chain, i, j), SheafGen::X(chain, i, j)]);
            }
            for s in 0..3 {
                generators.insert((pos(i), e(s)), vec![SheafGen::Y(chain, i, s)]);
            }
        }
    }
    for s in 0..3u32 {
        for t in s + 1..3 {
            generators.insert(
                (e(s), e(t)),
                monomial_basis(t - s).iter().map(|&m| SheafGen::Mono(m)).collect(),
            );
        }
    }
    for (&(i, j), gens) in &generators {
        for &g in gens {
            builder.add_basis(i, j, sheaf_generator_label(g), generator_degree(g));
        }
    }
    let index = |gens: &BTreeMap<(usize, usize), Vec<SheafGen>>, i, k, g: SheafGen| -> Option<usize> {
        gens.get(&(i, k))?.iter().position(|h| *h == g)
    };
    for (&(i, j), left) in &generators {
        for (&(j2, k), right) in generators.range((j, 0)..(j + 1, 0)) {
            debug_assert_eq!(j, j2);
            for (a, &ga) in left.iter().enumerate() {
                for (b, &gb) in right.iter().enumerate() {
                    if let Some(g) = generator_product(ga, gb) {
                        let c = index(&generators, i, k, g).expect("product lands in the basis");
                        builder.set_product((i, j, k, a, b), single(c));
                    }
                }
            }
        }
    }
    SheafAlgebra {
        triple,
        algebra: builder.build(),
        generators,
    }
}

/// `A_C(p,q,r)`.
pub fn build_sheaf_algebra(triple: Triple) -> GradedAlgebra {
    build_sheaf(triple).algebra
}

/// Degree-2 monomials annihilated by `ŷ^X`.
pub fn annihilated_quadratics(sheaf: &SheafAlgebra, chain: Chain) -> Vec<Monomial> {
    let t = sheaf.triple;
    let (d, e0, e2) = (t.chain_position(chain, 1), t.e_position(1), t.e_position(3));
    let y = sheaf.index_of(d, e0, SheafGen::Y(chain, 1, 0)).expect("ŷ present");
    DEGREE_TWO
        .iter()
        .copied()
        .filter(|&m| {
            let b = sheaf.index_of(e0, e2, SheafGen::Mono(m)).expect("monomial present");
            sheaf.algebra.product(d, e0, e2, y, b).is_empty()
        })
        .collect()
}

/// One line of the restriction ledger.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RestrictionImage {
    pub object: ObjectId,
    pub target: String,
    /// Degrees of the restricted class on the components `D_1, D_2, D_3`.
    pub multidegree: [i64; 3],
    pub gluing_parameter: Option<BigRational>,
    /// `c1(object)·D_j` computed in the Picard lattice.
    pub picard_degrees: [BigInt; 3],
}

impl RestrictionImage {
    pub fn consistent(&self) -> bool {
        self.multidegree
            .iter()
            .zip(&self.picard_degrees)
            .all(|(m, p)| BigInt::from(*m) == *p)
    }
}

/// Where each exceptional object goes on the anticanonical cycle `D`.
pub fn restriction_images(triple: Triple) -> Result<Vec<RestrictionImage>> {
    let comps: Vec<_> = Chain::ALL.iter().map(|&c| component(triple, c)).collect();
    exceptional_objects(triple)
        .into_iter()
        .map(|object| {
            let ch = chern_character(object, triple)?;
            let mut picard_degrees = [BigInt::from(0), BigInt::from(0), BigInt::from(0)];
            for (d, c) in picard_degrees.iter_mut().zip(&comps) {
                *d = intersection(&ch.c1, c)?;
            }
            let (target, multidegree, gluing_parameter) = match object {
                ObjectId::ChainSheaf(c, _) => {
                    let k = c.component();
                    let mut m = [0; 3];
                    m[k] = -1;
                    (format!("O_D(-s{}) -> O_D", k + 1), m, None)
                }
                ObjectId::LineBundle(s) => {
                    let d = i64::from(s);
                    let label = if s == 0 {
                        "O_D".to_string()
                    } else {
                        format!("O_D({d},{d},{d})")
                    };
                    (label, [d; 3], (s > 0).then(BigRational::one))
                }
            };
            Ok(RestrictionImage {
                object,
                target,
                multidegree,
                gluing_parameter,
                picard_degrees,
            })
        })
        .collect()
}

/// Objects of the fibre category on `D`: three skyscrapers and three line bundles.
pub const FIBRE_SHEAVES: [&str; 6] = ["S1", "S2", "S3", "O_D", "L1", "L2"];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum FibreSheaf {
    /// `O_{s_k}[-1]`
    Skyscraper(usize),
    /// `O_D(d,d,d)`
    Line(i64),
}

fn fibre_sheaf(i: usize) -> FibreSheaf {
    if i < 3 {
        FibreSheaf::Skyscraper(i)
    } else {
        FibreSheaf::Line(i as i64 - 3)
    }
}

fn graded(entries: &[(i32, usize)]) -> BTreeMap<i32, usize> {
    entries.iter().copied().filter(|&(_, n)| n > 0).collect()
}

/// Graded hom dimensions on the genus-one cycle `D` (trivial dualizing sheaf), with
/// skyscrapers taken as `O_s[-1]`.
pub fn fiber_sheaf_dims() -> DimTable {
    let mut t = DimTable::new();
    for i in 0..6 {
        for j in 0..6 {
            let dims = match (fibre_sheaf(i), fibre_sheaf(j)) {
                (FibreSheaf::Line(a), FibreSheaf::Line(b)) => {
                    let d = b - a;
                    match d.signum() {
                        1 => graded(&[(0, 3 * d as usize)]),
                        0 => graded(&[(0, 1), (1, 1)]),
                        _ => graded(&[(1, (-3 * d) as usize)]),
                    }
                }
                (FibreSheaf::Skyscraper(a), FibreSheaf::Skyscraper(b)) if a == b => graded(&[(0, 1), (1, 1)]),
                (FibreSheaf::Skyscraper(_), FibreSheaf::Skyscraper(_)) => BTreeMap::new(),
                (FibreSheaf::Skyscraper(_), FibreSheaf::Line(_)) => graded(&[(0, 1)]),
                (FibreSheaf::Line(_), FibreSheaf::Skyscraper(_)) => graded(&[(1, 1)]),
            };
            if !dims.is_empty() {
                t.insert((i, j), dims);
            }
        }
    }
    t
}

pub fn euler_of_dims(dims: &BTreeMap<i32, usize>) -> i64 {
    dims.iter()
        .map(|(&d, &n)| if d % 2 == 0 { n as i64 } else { -(n as i64) })
        .sum()
}

/// The fibre algebra `B_C`: the trivial extension of `A_C(1,1,1)` on `S1..S3, O_D, L1, L2`.
pub fn fibre_sheaf_algebra() -> Result<(SheafAlgebra, TrivialExtension)> {
    let base = build_sheaf(Triple::new(1, 1, 1)?);
    let ext = TrivialExtension::new(&base.algebra, FIBRE_SHEAVES.iter().map(|s| s.to_string()).collect());
    Ok((base, ext))
}

/// Restriction `c_vect: A_C(p,q,r) -> B_C`.
#[derive(Debug, Clone)]
pub struct SheafRestriction {
    pub source: SheafAlgebra,
    pub target: TrivialExtension,
    pub map: AlgebraMap,
}

pub fn restrict_sheaves_to_fiber(triple: Triple) -> Result<SheafRestriction> {
    let source = build_sheaf(triple);
    let (fibre, target) = fibre_sheaf_algebra()?;
    let object_map: Vec<usize> = triple.slots().into_iter().map(fibre_object_of).collect();
    let mut morphisms = BTreeMap::new();
    for &(i, j) in source.algebra.homs().keys() {
        let (fi, fj) = (object_map[i], object_map[j]);
        let images: Vec<Combination> = (0..source.algebra.hom(i, j).len())
            .map(|a| match source.generator(i, j, a) {
                SheafGen::Unit | SheafGen::E(..) => single(0),
                SheafGen::X(..) => single(target.dual_index(fi, fi, 0)),
                SheafGen::Y(c, _, s) => single(fibre.index_of(fi, fj, SheafGen::Y(c, 1, s)).expect("fibre ŷ")),
                g => single(fibre.index_of(fi, fj, g).expect("fibre monomial")),
            })
            .collect();
        morphisms.insert((i, j), images);
    }
    Ok(SheafRestriction {
        source,
        target,
        map: AlgebraMap { object_map, morphisms },
    })
}

/// Fibre sheaf hit by a collection slot.
pub fn fibre_sheaf_of(slot: Slot) -> &'static str {
    FIBRE_SHEAVES[fibre_object_of(slot)]
}
