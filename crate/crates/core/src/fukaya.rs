//! The directed algebra `A_F(p,q,r)` from its quiver presentation, the fibre
//! model `B`, the restriction functor to the fibre and Serre/Coxeter data.

use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::lattice::{rational_to_integer, solve_rational, IntMatrix};
use crate::quiver::{
    scaled, single, AlgebraMap, Combination, GradedAlgebra, NamedElement, PathAlgebra, Quiver, Relation,
    TrivialExtension,
};
use crate::triple::{Chain, Slot, Triple};

/// Graded dimensions of every nonzero hom space, keyed by object pair.
pub type DimTable = BTreeMap<(usize, usize), BTreeMap<i32, usize>>;

/// What a basis element of `A_F` is, independent of its label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FukayaGen {
    Unit,
    /// `e^X_{i,j}`
    E(Chain, usize, usize),
    /// `x^X_{i,j}`
    X(Chain, usize, usize),
    /// `y^X_{i,k}`: `X_i -> E_k`
    Y(Chain, usize, usize),
    /// `a_i`: `E_1 -> E_2`
    A(usize),
    /// `c_i`: `E_2 -> E_3`
    C(usize),
    /// `b_i` (as `B(i,i)`) and `b_{i,i+1}`: `E_1 -> E_3`
    B(usize, usize),
}

pub fn object_labels(triple: Triple) -> Vec<String> {
    triple
        .slots()
        .into_iter()
        .map(|s| match s {
            Slot::Chain(c, i) => format!("{c}{i}"),
            Slot::E(k) => format!("E{k}"),
        })
        .collect()
}

fn e_arrow(c: Chain, i: usize) -> String {
    format!("e^{c}_{{{},{}}}", i, i + 1)
}

fn x_arrow(c: Chain, i: usize) -> String {
    format!("x^{c}_{{{},{}}}", i, i + 1)
}

fn y_arrow(c: Chain, n: usize) -> String {
    format!("y^{c}_{{{n},1}}")
}

/// Index of the `a`/`c` arrow that `y^X` does not kill and that names `y^X_{i,2}`, `y^X_{i,3}`.
fn preferred_index(c: Chain) -> usize {
    match c {
        Chain::P => 1,
        Chain::Q => 2,
        Chain::R => 3,
    }
}

/// `(killed, pair)`: `y^X·a_killed = 0` and `y^X·(a_pair.0 - a_pair.1) = 0`.
fn y_relations(c: Chain) -> (usize, (usize, usize)) {
    match c {
        Chain::P => (3, (1, 2)),
        Chain::Q => (1, (2, 3)),
        Chain::R => (2, (3, 1)),
    }
}

/// The quiver and relations presenting `A_F(p,q,r)`.
pub fn fukaya_quiver(triple: Triple) -> (Quiver, Vec<Relation>) {
    let mut q = Quiver::new(object_labels(triple));
    let mut rels = Vec::new();
    let e1 = triple.e_position(1);
    for chain in Chain::ALL {
        let n = triple.chain_len(chain);
        for i in 1..n {
            let (s, t) = (triple.chain_position(chain, i), triple.chain_position(chain, i + 1));
            q.add_arrow(s, t, 0, e_arrow(chain, i)).expect("forward arrow");
            q.add_arrow(s, t, 1, x_arrow(chain, i)).expect("forward arrow");
        }
        q.add_arrow(triple.chain_position(chain, n), e1, 0, y_arrow(chain, n))
            .expect("forward arrow");
        for i in 1..n.saturating_sub(1) {
            let (x1, e2, e1_, x2) = (
                x_arrow(chain, i),
                e_arrow(chain, i + 1),
                e_arrow(chain, i),
                x_arrow(chain, i + 1),
            );
            rels.push(Relation::new(&[(1, &[&x1, &e2]), (1, &[&e1_, &x2])]));
            rels.push(Relation::monomial(&[&x1, &x2]));
        }
        if n >= 2 {
            rels.push(Relation::monomial(&[&x_arrow(chain, n - 1), &y_arrow(chain, n)]));
        }
    }
    for i in 1..=3 {
        q.add_arrow(e1, e1 + 1, 0, format!("a{i}")).expect("forward arrow");
    }
    for i in 1..=3 {
        q.add_arrow(e1 + 1, e1 + 2, 0, format!("c{i}")).expect("forward arrow");
    }
    for i in 1..=3 {
        let j = i % 3 + 1;
        let (ai, cj, aj, ci) = (format!("a{i}"), format!("c{j}"), format!("a{j}"), format!("c{i}"));
        rels.push(Relation::new(&[(1, &[&ai, &cj]), (-1, &[&aj, &ci])]));
    }
    for chain in Chain::ALL {
        let y = y_arrow(chain, triple.chain_len(chain));
        let (killed, (s, t)) = y_relations(chain);
        rels.push(Relation::monomial(&[&y, &format!("a{killed}")]));
        rels.push(Relation::new(&[
            (1, &[&y, &format!("a{s}")]),
            (-1, &[&y, &format!("a{t}")]),
        ]));
    }
    (q, rels)
}

fn b_label(i: usize, j: usize) -> String {
    if i == j {
        format!("b{i}")
    } else {
        format!("b{i}{j}")
    }
}

/// Label of a generator as used in the named basis.
pub fn generator_label(g: FukayaGen) -> String {
    match g {
        FukayaGen::Unit => "id".into(),
        FukayaGen::E(c, i, j) => format!("e^{c}_{{{i},{j}}}"),
        FukayaGen::X(c, i, j) => format!("x^{c}_{{{i},{j}}}"),
        FukayaGen::Y(c, i, k) => format!("y^{c}_{{{i},{k}}}"),
        FukayaGen::A(i) => format!("a{i}"),
        FukayaGen::C(i) => format!("c{i}"),
        FukayaGen::B(i, j) => b_label(i, j),
    }
}

/// Ordered named basis: generator and representative path for every pair `s < t`.
pub fn named_generators(triple: Triple) -> BTreeMap<(usize, usize), Vec<(FukayaGen, Vec<String>)>> {
    let mut out: BTreeMap<(usize, usize), Vec<(FukayaGen, Vec<String>)>> = BTreeMap::new();
    let e = |k| triple.e_position(k);
    for chain in Chain::ALL {
        let n = triple.chain_len(chain);
        let pos = |i| triple.chain_position(chain, i);
        let es = |from: usize, to: usize| -> Vec<String> { (from..to).map(|l| e_arrow(chain, l)).collect() };
        for i in 1..=n {
            for j in i + 1..=n {
                let mut x = vec![x_arrow(chain, i)];
                x.extend(es(i + 1, j));
                out.entry((pos(i), pos(j)))
                    .or_default()
                    .extend([(FukayaGen::E(chain, i, j), es(i, j)), (FukayaGen::X(chain, i, j), x)]);
            }
            let mut y1 = es(i, n);
            y1.push(y_arrow(chain, n));
            let mut y2 = y1.clone();
            y2.push(format!("a{}", preferred_index(chain)));
            let mut y3 = y2.clone();
            y3.push(format!("c{}", preferred_index(chain)));
            out.insert((pos(i), e(1)), vec![(FukayaGen::Y(chain, i, 1), y1)]);
            out.insert((pos(i), e(2)), vec![(FukayaGen::Y(chain, i, 2), y2)]);
            out.insert((pos(i), e(3)), vec![(FukayaGen::Y(chain, i, 3), y3)]);
        }
    }
    out.insert(
        (e(1), e(2)),
        (1..=3).map(|i| (FukayaGen::A(i), vec![format!("a{i}")])).collect(),
    );
    out.insert(
        (e(2), e(3)),
        (1..=3).map(|i| (FukayaGen::C(i), vec![format!("c{i}")])).collect(),
    );
    let bs = [(1, 1), (1, 2), (2, 2), (2, 3), (3, 3), (3, 1)];
    out.insert(
        (e(1), e(3)),
        bs.iter()
            .map(|&(i, j)| (FukayaGen::B(i, j), vec![format!("a{i}"), format!("c{j}")]))
            .collect(),
    );
    out
}

/// `A_F(p,q,r)` in its named basis, with the generator type of each basis element.
#[derive(Debug, Clone)]
pub struct DirectedAlgebra {
    pub triple: Triple,
    pub algebra: GradedAlgebra,
    pub generators: BTreeMap<(usize, usize), Vec<FukayaGen>>,
}

impl DirectedAlgebra {
    pub fn generator(&self, i: usize, j: usize, a: usize) -> FukayaGen {
        if i == j {
            FukayaGen::Unit
        } else {
            self.generators[&(i, j)][a]
        }
    }
}

pub fn build_directed(triple: Triple) -> Result<DirectedAlgebra> {
    let (quiver, rels) = fukaya_quiver(triple);
    let path_algebra = PathAlgebra::new(quiver, &rels)?;
    let gens = named_generators(triple);
    let named: BTreeMap<(usize, usize), Vec<NamedElement>> = gens
        .iter()
        .map(|(&k, v)| {
            let elems = v
                .iter()
                .map(|(g, path)| {
                    let refs: Vec<&str> = path.iter().map(String::as_str).collect();
                    NamedElement::new(generator_label(*g), &refs)
                })
                .collect();
            (k, elems)
        })
        .collect();
    let algebra = path_algebra.to_named_algebra(&named)?;
    let generators = gens
        .into_iter()
        .map(|(k, v)| (k, v.into_iter().map(|(g, _)| g).collect()))
        .collect();
    Ok(DirectedAlgebra {
        triple,
        algebra,
        generators,
    })
}

/// The algebra `A_F(p,q,r)` of the quiver presentation.
pub fn build_directed_algebra(triple: Triple) -> Result<GradedAlgebra> {
    Ok(build_directed(triple)?.algebra)
}

/// Closed-form graded dimensions (units included).
pub fn expected_dim_table(triple: Triple) -> DimTable {
    let mut t = DimTable::new();
    let n = triple.num_objects();
    for i in 0..n {
        t.insert((i, i), BTreeMap::from([(0, 1)]));
    }
    for chain in Chain::ALL {
        let len = triple.chain_len(chain);
        for i in 1..=len {
            let pi = triple.chain_position(chain, i);
            for j in i + 1..=len {
                t.insert((pi, triple.chain_position(chain, j)), BTreeMap::from([(0, 1), (1, 1)]));
            }
            for k in 1..=3 {
                t.insert((pi, triple.e_position(k)), BTreeMap::from([(0, 1)]));
            }
        }
    }
    let e = |k| triple.e_position(k);
    t.insert((e(1), e(2)), BTreeMap::from([(0, 3)]));
    t.insert((e(2), e(3)), BTreeMap::from([(0, 3)]));
    t.insert((e(1), e(3)), BTreeMap::from([(0, 6)]));
    t
}

/// `(p+q+r+3) + 2(C(p,2)+C(q,2)+C(r,2)) + 3(p+q+r) + 12`.
pub fn expected_total_dim(triple: Triple) -> usize {
    let c2 = |n: u32| (n as usize) * (n as usize).saturating_sub(1) / 2;
    let s = (triple.p + triple.q + triple.r) as usize;
    (s + 3) + 2 * (c2(triple.p) + c2(triple.q) + c2(triple.r)) + 3 * s + 12
}

pub fn dim_table_of(alg: &GradedAlgebra) -> DimTable {
    alg.homs()
        .keys()
        .map(|&(i, j)| ((i, j), alg.graded_dim(i, j)))
        .filter(|(_, d)| !d.is_empty())
        .collect()
}

/// `χ_B(X,Y) = χ_A(X,Y) - χ_A(Y,X)`.
pub fn antisymmetrized(chi: &IntMatrix) -> IntMatrix {
    chi.sub(&chi.transpose())
}

/// Serre matrix `S` with `χ(x,y) = χ(y, S x)`, i.e. `S = χ^{-1} χ^T`.
pub fn coxeter_matrix(chi: &IntMatrix) -> Result<IntMatrix> {
    if !chi.is_square() {
        return Err(Error::NotInvertible);
    }
    let sol = solve_rational(chi, &chi.transpose()).ok_or(Error::NotInvertible)?;
    rational_to_integer(&sol).ok_or(Error::NotInvertible)
}

/// `true` iff `χ(e_i, e_j) = χ(e_j, S e_i)` for all basis vectors.
pub fn satisfies_serre_identity(chi: &IntMatrix, s: &IntMatrix) -> bool {
    let n = chi.rows();
    let basis = |i: usize| -> Vec<BigInt> { (0..n).map(|k| BigInt::from(u8::from(k == i))).collect() };
    (0..n).all(|i| {
        let sx = s.mul_vec(&basis(i));
        (0..n).all(|j| chi[(i, j)] == chi.bilinear(&basis(j), &sx))
    })
}

/// Fibre objects: the three chain circles and the three `E` circles.
pub const FIBRE_OBJECTS: [&str; 6] = ["P", "Q", "R", "E", "E'", "E''"];

/// Cohomology-level model of `B`, the trivial extension of `A_F`: `hom_B(X,Y) = hom_A(X,Y) ⊕ hom_A(Y,X)^∨[-1]`.
#[derive(Debug, Clone)]
pub struct BimoduleModel {
    pub base: DirectedAlgebra,
    pub extension: TrivialExtension,
}

impl BimoduleModel {
    pub fn graded_dim(&self, i: usize, j: usize) -> BTreeMap<i32, usize> {
        self.extension.algebra.graded_dim(i, j)
    }

    /// `a·φ` for `a` in `hom_A(i,j)` and `φ` the dual of basis element `d` of `hom_A(k,j)`.
    pub fn left_action(&self, i: usize, j: usize, k: usize, a: usize, d: usize) -> Combination {
        self.extension
            .algebra
            .product(i, j, k, a, self.extension.dual_index(j, k, d))
    }

    /// `φ·b` for `φ` the dual of basis element `d` of `hom_A(j,i)` and `b` in `hom_A(j,k)`.
    pub fn right_action(&self, i: usize, j: usize, k: usize, d: usize, b: usize) -> Combination {
        self.extension
            .algebra
            .product(i, j, k, self.extension.dual_index(i, j, d), b)
    }

    /// Checks `dim hom_B^k(X,Y) = dim hom_A^k(X,Y) + dim hom_A^{1-k}(Y,X)` on every pair.
    pub fn dimension_rule_violations(&self) -> Vec<(usize, usize)> {
        let a = &self.base.algebra;
        let n = a.num_objects();
        let mut bad = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let mut expected = a.graded_dim(i, j);
                for (d, c) in a.graded_dim(j, i) {
                    *expected.entry(1 - d).or_insert(0) += c;
                }
                if self.graded_dim(i, j) != expected {
                    bad.push((i, j));
                }
            }
        }
        bad
    }
}

pub fn build_fiber_bimodule(triple: Triple) -> Result<BimoduleModel> {
    let base = build_directed(triple)?;
    let extension = TrivialExtension::new(&base.algebra, object_labels(triple));
    Ok(BimoduleModel { base, extension })
}

/// The fibre algebra `B_F` on `P, Q, R, E, E', E''`: the trivial extension of `A_F(1,1,1)`.
pub fn fibre_algebra() -> Result<(DirectedAlgebra, TrivialExtension)> {
    let base = build_directed(Triple::new(1, 1, 1)?)?;
    let ext = TrivialExtension::new(&base.algebra, FIBRE_OBJECTS.iter().map(|s| s.to_string()).collect());
    Ok((base, ext))
}

/// Position of a `(1,1,1)` generator in the fibre algebra; `Unit` is not handled here.
fn fibre_index(fibre: &DirectedAlgebra, i: usize, j: usize, g: FukayaGen) -> usize {
    fibre.generators[&(i, j)]
        .iter()
        .position(|h| *h == g)
        .expect("generator present in the fibre")
}

/// Restriction `c_Fuk: A_F(p,q,r) -> B_F`.
#[derive(Debug, Clone)]
pub struct RestrictionFunctor {
    pub source: DirectedAlgebra,
    pub target: TrivialExtension,
    pub map: AlgebraMap,
}

/// Fibre object hit by a collection slot: chains go to `P, Q, R`, `E_k` to `E, E', E''`.
pub fn fibre_object_of(slot: Slot) -> usize {
    match slot {
        Slot::Chain(c, _) => c.component(),
        Slot::E(k) => 2 + k,
    }
}

/// Sign carried by `x^X_{i,j}` under restriction to the fibre and under `φ_A`.
pub fn x_sign(i: usize) -> i64 {
    if i % 2 == 1 {
        1
    } else {
        -1
    }
}

pub fn restrict_to_fiber(triple: Triple) -> Result<RestrictionFunctor> {
    let source = build_directed(triple)?;
    let (fibre, target) = fibre_algebra()?;
    let slots = triple.slots();
    let object_map: Vec<usize> = slots.iter().map(|&s| fibre_object_of(s)).collect();
    let mut morphisms = BTreeMap::new();
    for &(i, j) in source.algebra.homs().keys() {
        let (fi, fj) = (object_map[i], object_map[j]);
        let images: Vec<Combination> = (0..source.algebra.hom(i, j).len())
            .map(|a| match source.generator(i, j, a) {
                FukayaGen::Unit | FukayaGen::E(..) => single(0),
                // dual of the unit of the circle: the degree-one class
                FukayaGen::X(_, i0, _) => scaled(target.dual_index(fi, fi, 0), x_sign(i0)),
                FukayaGen::Y(c, _, k) => single(fibre_index(&fibre, fi, fj, FukayaGen::Y(c, 1, k))),
                g => single(fibre_index(&fibre, fi, fj, g)),
            })
            .collect();
        morphisms.insert((i, j), images);
    }
    Ok(RestrictionFunctor {
        source,
        target,
        map: AlgebraMap { object_map, morphisms },
    })
}
