//! Finite-dimensional graded algebras over a semisimple base, stored as
//! structure constants, and maps between them.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::lattice::IntMatrix;

/// Sparse linear combination of basis indices with nonzero coefficients.
pub type Combination = BTreeMap<usize, BigRational>;

pub fn single(index: usize) -> Combination {
    BTreeMap::from([(index, BigRational::one())])
}

pub fn scaled(index: usize, coeff: i64) -> Combination {
    let mut c = Combination::new();
    accumulate(&mut c, index, &BigRational::from_integer(coeff.into()));
    c
}

/// `target += coeff * e_index`, dropping zeros.
pub fn accumulate(target: &mut Combination, index: usize, coeff: &BigRational) {
    if coeff.is_zero() {
        return;
    }
    let entry = target.entry(index).or_insert_with(BigRational::zero);
    *entry += coeff;
    if entry.is_zero() {
        target.remove(&index);
    }
}

pub fn add_scaled(target: &mut Combination, source: &Combination, coeff: &BigRational) {
    for (i, c) in source {
        accumulate(target, *i, &(c * coeff));
    }
}

pub fn format_combination(c: &Combination, labels: &[BasisElement]) -> String {
    if c.is_empty() {
        return "0".to_string();
    }
    let parts: Vec<String> = c
        .iter()
        .map(|(i, x)| {
            let name = labels.get(*i).map_or_else(|| format!("#{i}"), |b| b.label.clone());
            if x.is_one() {
                name
            } else {
                format!("{x}*{name}")
            }
        })
        .collect();
    parts.join(" + ")
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisElement {
    pub label: String,
    pub degree: i32,
}

/// Key `(i, j, k, a, b)`: basis `a` of `hom(i,j)` followed by basis `b` of `hom(j,k)`.
pub type ProductKey = (usize, usize, usize, usize, usize);

/// A graded algebra on ordered objects. Products are diagrammatic: `a·b`
/// means `a: X_i -> X_j` then `b: X_j -> X_k`. Index 0 of every `hom(i,i)` is the unit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedAlgebra {
    objects: Vec<String>,
    homs: BTreeMap<(usize, usize), Vec<BasisElement>>,
    products: BTreeMap<ProductKey, Combination>,
}

pub struct AlgebraBuilder {
    objects: Vec<String>,
    homs: BTreeMap<(usize, usize), Vec<BasisElement>>,
    products: BTreeMap<ProductKey, Combination>,
}

impl AlgebraBuilder {
    pub fn new(objects: Vec<String>) -> Self {
        let homs = (0..objects.len())
            .map(|i| {
                (
                    (i, i),
                    vec![BasisElement {
                        label: format!("id[{}]", objects[i]),
                        degree: 0,
                    }],
                )
            })
            .collect();
        AlgebraBuilder {
            objects,
            homs,
            products: BTreeMap::new(),
        }
    }

    pub fn add_basis(&mut self, i: usize, j: usize, label: impl Into<String>, degree: i32) -> usize {
        let list = self.homs.entry((i, j)).or_default();
        list.push(BasisElement {
            label: label.into(),
            degree,
        });
        list.len() - 1
    }

    /// Sets `a·b`; products never set are zero. Unit products are filled in by `build`.
    pub fn set_product(&mut self, key: ProductKey, value: Combination) {
        self.products.insert(key, value);
    }

    pub fn build(mut self) -> GradedAlgebra {
        let pairs: Vec<((usize, usize), usize)> = self.homs.iter().map(|(k, v)| (*k, v.len())).collect();
        for ((i, j), len) in pairs {
            for a in 0..len {
                self.products.insert((i, i, j, 0, a), single(a));
                self.products.insert((i, j, j, a, 0), single(a));
            }
        }
        self.products.retain(|_, v| !v.is_empty());
        GradedAlgebra {
            objects: self.objects,
            homs: self.homs,
            products: self.products,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssociativityReport {
    pub triples_checked: usize,
    /// `(i, j, k, l, a, b, c)` with `(a·b)·c != a·(b·c)`.
    pub violations: Vec<(usize, usize, usize, usize, usize, usize, usize)>,
}

impl AssociativityReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

impl GradedAlgebra {
    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn object_index(&self, label: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == label)
    }

    pub fn hom(&self, i: usize, j: usize) -> &[BasisElement] {
        self.homs.get(&(i, j)).map_or(&[], Vec::as_slice)
    }

    pub fn homs(&self) -> &BTreeMap<(usize, usize), Vec<BasisElement>> {
        &self.homs
    }

    pub fn products(&self) -> &BTreeMap<ProductKey, Combination> {
        &self.products
    }

    pub fn basis_index(&self, i: usize, j: usize, label: &str) -> Option<usize> {
        self.hom(i, j).iter().position(|b| b.label == label)
    }

    /// Graded dimension of `hom(i,j)`, degree to count.
    pub fn graded_dim(&self, i: usize, j: usize) -> BTreeMap<i32, usize> {
        let mut out = BTreeMap::new();
        for b in self.hom(i, j) {
            *out.entry(b.degree).or_insert(0) += 1;
        }
        out
    }

    pub fn total_dim(&self) -> usize {
        self.homs.values().map(Vec::len).sum()
    }

    pub fn product(&self, i: usize, j: usize, k: usize, a: usize, b: usize) -> Combination {
        self.products.get(&(i, j, k, a, b)).cloned().unwrap_or_default()
    }

    pub fn multiply(&self, i: usize, j: usize, k: usize, x: &Combination, y: &Combination) -> Combination {
        let mut out = Combination::new();
        for (a, ca) in x {
            for (b, cb) in y {
                if let Some(p) = self.products.get(&(i, j, k, *a, *b)) {
                    add_scaled(&mut out, p, &(ca * cb));
                }
            }
        }
        out
    }

    /// Replaces one structure constant; used for negative controls.
    pub fn override_product(&mut self, key: ProductKey, value: Combination) {
        if value.is_empty() {
            self.products.remove(&key);
        } else {
            self.products.insert(key, value);
        }
    }

    pub fn verify_associativity(&self) -> AssociativityReport {
        let n = self.objects.len();
        let mut checked = 0;
        let mut violations = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let hij = self.hom(i, j).len();
                if hij == 0 {
                    continue;
                }
                for k in 0..n {
                    let hjk = self.hom(j, k).len();
                    if hjk == 0 {
                        continue;
                    }
                    for l in 0..n {
                        let hkl = self.hom(k, l).len();
                        if hkl == 0 {
                            continue;
                        }
                        for a in 0..hij {
                            for b in 0..hjk {
                                let ab = self.product(i, j, k, a, b);
                                for c in 0..hkl {
                                    let bc = self.product(j, k, l, b, c);
                                    let left = self.multiply(i, k, l, &ab, &single(c));
                                    let right = self.multiply(i, j, l, &single(a), &bc);
                                    checked += 1;
                                    if left != right {
                                        violations.push((i, j, k, l, a, b, c));
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        AssociativityReport {
            triples_checked: checked,
            violations,
        }
    }

    /// Unit laws: index 0 of each `hom(i,i)` is a two-sided unit of degree 0.
    pub fn unit_violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        for i in 0..self.objects.len() {
            match self.hom(i, i).first() {
                Some(u) if u.degree == 0 => {}
                _ => out.push(format!("object {} has no degree-0 unit", self.objects[i])),
            }
        }
        for (&(i, j), basis) in &self.homs {
            for a in 0..basis.len() {
                if self.product(i, i, j, 0, a) != single(a) {
                    out.push(format!("left unit fails on {}", basis[a].label));
                }
                if self.product(i, j, j, a, 0) != single(a) {
                    out.push(format!("right unit fails on {}", basis[a].label));
                }
            }
        }
        out
    }

    /// Degree additivity of every nonzero structure constant.
    pub fn degree_violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (&(i, j, k, a, b), value) in &self.products {
            let expected = self.hom(i, j)[a].degree + self.hom(j, k)[b].degree;
            for c in value.keys() {
                if self.hom(i, k).get(*c).map(|e| e.degree) != Some(expected) {
                    out.push(format!(
                        "{}·{} has a term of the wrong degree",
                        self.hom(i, j)[a].label,
                        self.hom(j, k)[b].label
                    ));
                }
            }
        }
        out
    }

    /// Every structure constant is an integer.
    pub fn is_integral(&self) -> bool {
        self.products.values().all(|c| c.values().all(|x| x.is_integer()))
    }

    /// `(i,j)` entry: `Σ_d (-1)^d dim hom^d(X_i, X_j)`.
    pub fn euler_matrix(&self) -> IntMatrix {
        let n = self.objects.len();
        IntMatrix::from_fn(n, n, |i, j| {
            self.hom(i, j)
                .iter()
                .map(|b| {
                    if b.degree.rem_euclid(2) == 0 {
                        BigInt::one()
                    } else {
                        -BigInt::one()
                    }
                })
                .sum()
        })
    }
}

impl fmt::Display for GradedAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "objects: {}", self.objects.join(", "))?;
        for (&(i, j), basis) in &self.homs {
            let labels: Vec<String> = basis.iter().map(|b| format!("{}[{}]", b.label, b.degree)).collect();
            writeln!(
                f,
                "hom({}, {}) = {}",
                self.objects[i],
                self.objects[j],
                labels.join(" ")
            )?;
        }
        Ok(())
    }
}

/// A map of graded algebras: objects to objects, basis elements to combinations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraMap {
    pub object_map: Vec<usize>,
    /// Image of each basis element of `hom(i,j)` in `hom(F i, F j)`.
    pub morphisms: BTreeMap<(usize, usize), Vec<Combination>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctorReport {
    pub pairs_checked: usize,
    pub violations: Vec<String>,
}

impl FunctorReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

impl AlgebraMap {
    pub fn image(&self, i: usize, j: usize, a: usize) -> Combination {
        self.morphisms
            .get(&(i, j))
            .and_then(|v| v.get(a))
            .cloned()
            .unwrap_or_default()
    }

    pub fn apply(&self, i: usize, j: usize, x: &Combination) -> Combination {
        let mut out = Combination::new();
        for (a, c) in x {
            add_scaled(&mut out, &self.image(i, j, *a), c);
        }
        out
    }

    pub fn compose(&self, then: &AlgebraMap) -> AlgebraMap {
        let object_map = self.object_map.iter().map(|&o| then.object_map[o]).collect();
        let morphisms = self
            .morphisms
            .iter()
            .map(|(&(i, j), images)| {
                let (fi, fj) = (self.object_map[i], self.object_map[j]);
                ((i, j), images.iter().map(|x| then.apply(fi, fj, x)).collect())
            })
            .collect();
        AlgebraMap { object_map, morphisms }
    }

    /// Units to units, degrees preserved, and `F(a·b) = F(a)·F(b)` on every composable basis pair.
    pub fn check_functor(&self, source: &GradedAlgebra, target: &GradedAlgebra) -> FunctorReport {
        let mut violations = Vec::new();
        let mut checked = 0;
        let n = source.num_objects();
        if self.object_map.len() != n {
            violations.push(format!(
                "object map has {} entries for {} objects",
                self.object_map.len(),
                n
            ));
            return FunctorReport {
                pairs_checked: 0,
                violations,
            };
        }
        for i in 0..n {
            if self.image(i, i, 0) != single(0) {
                violations.push(format!("unit of {} is not sent to a unit", source.objects()[i]));
            }
        }
        for (&(i, j), basis) in source.homs() {
            let (fi, fj) = (self.object_map[i], self.object_map[j]);
            for (a, elem) in basis.iter().enumerate() {
                for t in self.image(i, j, a).keys() {
                    if target.hom(fi, fj).get(*t).map(|e| e.degree) != Some(elem.degree) {
                        violations.push(format!("image of {} leaves degree {}", elem.label, elem.degree));
                    }
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let (hij, hjk) = (source.hom(i, j).len(), source.hom(j, k).len());
                    if hij == 0 || hjk == 0 {
                        continue;
                    }
                    let (fi, fj, fk) = (self.object_map[i], self.object_map[j], self.object_map[k]);
                    for a in 0..hij {
                        for b in 0..hjk {
                            checked += 1;
                            let lhs = self.apply(i, k, &source.product(i, j, k, a, b));
                            let rhs = target.multiply(fi, fj, fk, &self.image(i, j, a), &self.image(j, k, b));
                            if lhs != rhs {
                                violations.push(format!(
                                    "F({}·{}) = {} but F({})·F({}) = {}",
                                    source.hom(i, j)[a].label,
                                    source.hom(j, k)[b].label,
                                    format_combination(&lhs, target.hom(fi, fk)),
                                    source.hom(i, j)[a].label,
                                    source.hom(j, k)[b].label,
                                    format_combination(&rhs, target.hom(fi, fk)),
                                ));
                            }
                        }
                    }
                }
            }
        }
        FunctorReport {
            pairs_checked: checked,
            violations,
        }
    }
}

/// The trivial extension `A ⋉ A^∨[-1]`: `hom(i,j) = hom_A(i,j) ⊕ hom_A(j,i)^∨`, the dual
/// of a degree-`d` element sitting in degree `1 - d`. Left and right actions on the dual
/// summand are `(a·φ)(m) = φ(m·a)` and `(φ·b)(m) = φ(b·m)`; two duals multiply to zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrivialExtension {
    pub algebra: GradedAlgebra,
    /// Number of leading basis elements of `hom(i,j)` that come from `A` itself.
    pub split: BTreeMap<(usize, usize), usize>,
}

impl TrivialExtension {
    pub fn new(a: &GradedAlgebra, objects: Vec<String>) -> Self {
        assert_eq!(objects.len(), a.num_objects());
        let n = a.num_objects();
        let mut builder = AlgebraBuilder::new(objects.clone());
        let mut split = BTreeMap::new();
        for i in 0..n {
            for j in 0..n {
                let forward = a.hom(i, j);
                let skip = usize::from(i == j);
                for e in forward.iter().skip(skip) {
                    builder.add_basis(i, j, e.label.clone(), e.degree);
                }
                for (idx, e) in a.hom(j, i).iter().enumerate() {
                    let label = if i == j && idx == 0 {
                        format!("x[{}]", objects[i])
                    } else {
                        format!("{}*", e.label)
                    };
                    builder.add_basis(i, j, label, 1 - e.degree);
                }
                if !forward.is_empty() || !a.hom(j, i).is_empty() {
                    split.insert((i, j), forward.len());
                }
            }
        }
        let offset = |i: usize, j: usize| split.get(&(i, j)).copied().unwrap_or(0);
        for (&(i, j, k, x, y), value) in a.products() {
            builder.set_product((i, j, k, x, y), value.clone());
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    // forward a: i -> j, dual d^∨ with d: k -> j
                    for x in 0..a.hom(i, j).len() {
                        for d in 0..a.hom(k, j).len() {
                            let mut out = Combination::new();
                            for m in 0..a.hom(k, i).len() {
                                if let Some(c) = a.product(k, i, j, m, x).get(&d) {
                                    accumulate(&mut out, offset(i, k) + m, c);
                                }
                            }
                            builder.set_product((i, j, k, x, offset(j, k) + d), out);
                        }
                    }
                    // dual d^∨ with d: j -> i, forward b: j -> k
                    for d in 0..a.hom(j, i).len() {
                        for y in 0..a.hom(j, k).len() {
                            let mut out = Combination::new();
                            for m in 0..a.hom(k, i).len() {
                                if let Some(c) = a.product(j, k, i, y, m).get(&d) {
                                    accumulate(&mut out, offset(i, k) + m, c);
                                }
                            }
                            builder.set_product((i, j, k, offset(i, j) + d, y), out);
                        }
                    }
                }
            }
        }
        TrivialExtension {
            algebra: builder.build(),
            split,
        }
    }

    pub fn forward_len(&self, i: usize, j: usize) -> usize {
        self.split.get(&(i, j)).copied().unwrap_or(0)
    }

    /// Index in `hom(i,j)` of the dual of basis element `d` of `hom_A(j,i)`.
    pub fn dual_index(&self, i: usize, j: usize, d: usize) -> usize {
        self.forward_len(i, j) + d
    }

    /// Extends an isomorphism `phi: A -> A'` to the trivial extensions, acting on
    /// duals by the inverse transpose. Fails if some hom block of `phi` is not invertible.
    pub fn extend_map(
        &self,
        phi: &AlgebraMap,
        source: &GradedAlgebra,
        target: &GradedAlgebra,
        image: &TrivialExtension,
    ) -> Option<AlgebraMap> {
        let n = source.num_objects();
        let mut morphisms = BTreeMap::new();
        for i in 0..n {
            for j in 0..n {
                let (fi, fj) = (phi.object_map[i], phi.object_map[j]);
                let mut images: Vec<Combination> = Vec::new();
                let forward = source.hom(i, j).len();
                for x in 0..forward {
                    images.push(phi.image(i, j, x));
                }
                let back = source.hom(j, i).len();
                if back > 0 {
                    if target.hom(fj, fi).len() != back {
                        return None;
                    }
                    let m: Vec<Vec<BigRational>> = (0..back)
                        .map(|d| {
                            let img = phi.image(j, i, d);
                            (0..back)
                                .map(|t| img.get(&t).cloned().unwrap_or_else(BigRational::zero))
                                .collect()
                        })
                        .collect();
                    let inv = crate::lattice::rational_inverse(&m)?;
                    for d in 0..back {
                        let mut out = Combination::new();
                        for (t, row) in inv.iter().enumerate() {
                            accumulate(&mut out, image.dual_index(fi, fj, t), &row[d]);
                        }
                        images.push(out);
                    }
                }
                if !images.is_empty() {
                    morphisms.insert((i, j), images);
                }
            }
        }
        Some(AlgebraMap {
            object_map: phi.object_map.clone(),
            morphisms,
        })
    }
}
