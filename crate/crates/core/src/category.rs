//! Finite linear categories given by presented hom-modules and composition
//! tensors, and functors from them into free `B`-modules.

use std::sync::Arc;

use crate::algebra::{BAlgebra, BMatrix};
use crate::error::{Error, Result};
use crate::linalg;
use crate::matrix::{vec_ops, Matrix};
use crate::modules::{subquotient, BModule, Presentation};
use crate::report::CheckReport;
use crate::ring::{Ring, Scalar};
use crate::system::LinearSystem;

/// A hom-module `Hom(A, A')` presented by named generators and relations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomModule {
    pub names: Vec<String>,
    pub presentation: Presentation,
}

impl HomModule {
    pub fn zero(ring: &Ring) -> Self {
        HomModule { names: Vec::new(), presentation: Presentation::free(ring, 0) }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }
}

/// A linear category on finitely many objects.
///
/// The composite "`f` then `g`" of `f : A → B` and `g : B → C` is bilinear
/// and stored as a matrix with one row per generator pair: row
/// `i * |Hom(B,C)| + j` holds the coordinates of `f_i` then `g_j` in
/// `Hom(A, C)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearCategory {
    ring: Ring,
    objects: Vec<String>,
    homs: Vec<HomModule>,
    comps: Vec<Matrix>,
    identities: Vec<Vec<Scalar>>,
}

impl LinearCategory {
    /// All homs zero; fill in with the setters.
    pub fn new(ring: &Ring, objects: Vec<String>) -> Self {
        let n = objects.len();
        let homs = vec![HomModule::zero(ring); n * n];
        let comps = vec![Matrix::zeros(ring, 0, 0); n * n * n];
        LinearCategory { ring: ring.clone(), objects, homs, comps, identities: vec![Vec::new(); n] }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == label)
    }

    pub fn hom(&self, a: usize, b: usize) -> &HomModule {
        &self.homs[a * self.len() + b]
    }

    fn comp_index(&self, a: usize, b: usize, c: usize) -> usize {
        (a * self.len() + b) * self.len() + c
    }

    /// Resets the compositions touching `Hom(a, b)` to zero.
    pub fn set_hom(&mut self, a: usize, b: usize, names: Vec<String>, relations: Matrix) -> Result<()> {
        let pres = Presentation::new(&self.ring, names.len(), relations)?;
        let n = self.len();
        self.homs[a * n + b] = HomModule { names, presentation: pres };
        if a == b {
            self.identities[a] = vec![self.ring.zero(); self.hom(a, a).len()];
        }
        for p in 0..n {
            for q in 0..n {
                for r in 0..n {
                    let shape = (self.hom(p, q).len() * self.hom(q, r).len(), self.hom(p, r).len());
                    let idx = self.comp_index(p, q, r);
                    if self.comps[idx].shape() != shape {
                        self.comps[idx] = Matrix::zeros(&self.ring, shape.0, shape.1);
                    }
                }
            }
        }
        Ok(())
    }

    pub fn set_identity(&mut self, a: usize, id: Vec<Scalar>) -> Result<()> {
        if id.len() != self.hom(a, a).len() {
            return Err(Error::DimensionMismatch(format!(
                "identity of {} has {} coordinates but Hom has {} generators",
                self.objects[a],
                id.len(),
                self.hom(a, a).len()
            )));
        }
        self.identities[a] = id.into_iter().map(|s| self.ring.normalize(s)).collect::<Result<_>>()?;
        Ok(())
    }

    pub fn set_composition(&mut self, a: usize, b: usize, c: usize, table: Matrix) -> Result<()> {
        let shape = (self.hom(a, b).len() * self.hom(b, c).len(), self.hom(a, c).len());
        if table.shape() != shape {
            return Err(Error::DimensionMismatch(format!(
                "composition {} → {} → {} must be {}x{}",
                self.objects[a], self.objects[b], self.objects[c], shape.0, shape.1
            )));
        }
        let idx = self.comp_index(a, b, c);
        self.comps[idx] = table;
        Ok(())
    }

    pub fn composition(&self, a: usize, b: usize, c: usize) -> &Matrix {
        &self.comps[self.comp_index(a, b, c)]
    }

    pub fn identity(&self, a: usize) -> &[Scalar] {
        &self.identities[a]
    }

    /// `f` then `g` for `f ∈ Hom(a, b)` and `g ∈ Hom(b, c)`.
    pub fn compose(&self, a: usize, b: usize, c: usize, f: &[Scalar], g: &[Scalar]) -> Vec<Scalar> {
        let table = self.composition(a, b, c);
        if table.rows() == 0 {
            return vec![self.ring.zero(); self.hom(a, c).len()];
        }
        table.apply(&vec_ops::kron(&self.ring, f, g))
    }

    pub fn generator(&self, a: usize, b: usize, i: usize) -> Vec<Scalar> {
        Matrix::unit_vector(&self.ring, self.hom(a, b).len(), i)
    }

    fn label(&self, a: usize, b: usize, i: usize) -> String {
        format!("{}:{}→{}", self.hom(a, b).names[i], self.objects[a], self.objects[b])
    }
}

/// Checks well-definedness over relations, the unit laws and associativity
/// on all generators.
pub fn check_category(c: &LinearCategory) -> CheckReport {
    let mut report = CheckReport::new();
    let n = c.len();
    for a in 0..n {
        if c.identity(a).len() != c.hom(a, a).len() {
            report.fail("identity", &c.objects[a], "identity has the wrong number of coordinates");
            return report;
        }
    }
    for a in 0..n {
        for b in 0..n {
            for d in 0..n {
                let target = &c.hom(a, d).presentation;
                let rel_ab = c.hom(a, b).presentation.relations();
                let rel_bd = c.hom(b, d).presentation.relations();
                for r in 0..rel_ab.rows() {
                    for j in 0..c.hom(b, d).len() {
                        let v = c.compose(a, b, d, rel_ab.row(r), &c.generator(b, d, j));
                        if !target.is_zero_vector(&v) {
                            report.fail(
                                "composition-well-defined",
                                format!("relation {r} of Hom({},{}) then {}", c.objects[a], c.objects[b], c.label(b, d, j)),
                                "composite of a relation is nonzero",
                            );
                        }
                    }
                }
                for r in 0..rel_bd.rows() {
                    for i in 0..c.hom(a, b).len() {
                        let v = c.compose(a, b, d, &c.generator(a, b, i), rel_bd.row(r));
                        if !target.is_zero_vector(&v) {
                            report.fail(
                                "composition-well-defined",
                                format!("{} then relation {r} of Hom({},{})", c.label(a, b, i), c.objects[b], c.objects[d]),
                                "composite of a relation is nonzero",
                            );
                        }
                    }
                }
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            let pres = &c.hom(a, b).presentation;
            for i in 0..c.hom(a, b).len() {
                let f = c.generator(a, b, i);
                if !pres.equal_vectors(&c.compose(a, a, b, c.identity(a), &f), &f) {
                    report.fail("left-unit", c.label(a, b, i), "id then f differs from f");
                }
                if !pres.equal_vectors(&c.compose(a, b, b, &f, c.identity(b)), &f) {
                    report.fail("right-unit", c.label(a, b, i), "f then id differs from f");
                }
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            for x in 0..n {
                for d in 0..n {
                    let pres = &c.hom(a, d).presentation;
                    for i in 0..c.hom(a, b).len() {
                        let f = c.generator(a, b, i);
                        for j in 0..c.hom(b, x).len() {
                            let g = c.generator(b, x, j);
                            let fg = c.compose(a, b, x, &f, &g);
                            for k in 0..c.hom(x, d).len() {
                                let h = c.generator(x, d, k);
                                let lhs = c.compose(a, x, d, &fg, &h);
                                let rhs = c.compose(a, b, d, &f, &c.compose(b, x, d, &g, &h));
                                if !pres.equal_vectors(&lhs, &rhs) {
                                    report.fail(
                                        "associativity",
                                        format!("({}, {}, {})", c.label(a, b, i), c.label(b, x, j), c.label(x, d, k)),
                                        format!("{lhs:?} vs {rhs:?}"),
                                    );
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    report
}

/// A functor into free `B`-modules: object `A` goes to `B^{rank(A)}` with its
/// standard basis and each hom generator to a matrix over `B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearFunctor {
    category: Arc<LinearCategory>,
    algebra: Arc<BAlgebra>,
    ranks: Vec<usize>,
    images: Vec<Vec<BMatrix>>,
}

impl LinearFunctor {
    /// `images[a * n + b][i]` is the image of generator `i` of `Hom(a, b)`.
    pub fn new(category: &Arc<LinearCategory>, algebra: &Arc<BAlgebra>, ranks: Vec<usize>, images: Vec<Vec<BMatrix>>) -> Result<Self> {
        let n = category.len();
        if algebra.ring() != category.ring() {
            return Err(Error::RingMismatch(format!("{:?}", algebra.ring().kind()), format!("{:?}", category.ring().kind())));
        }
        if ranks.len() != n || images.len() != n * n {
            return Err(Error::DimensionMismatch("functor data does not match the object list".into()));
        }
        for a in 0..n {
            for b in 0..n {
                let imgs = &images[a * n + b];
                if imgs.len() != category.hom(a, b).len() {
                    return Err(Error::DimensionMismatch(format!(
                        "Hom({},{}) has {} generators but {} images were given",
                        category.objects()[a],
                        category.objects()[b],
                        category.hom(a, b).len(),
                        imgs.len()
                    )));
                }
                for (i, m) in imgs.iter().enumerate() {
                    if (m.rows(), m.cols()) != (ranks[a], ranks[b]) || m.algebra() != algebra {
                        return Err(Error::DimensionMismatch(format!(
                            "image of {} must be a {}x{} matrix over B",
                            category.label(a, b, i),
                            ranks[a],
                            ranks[b]
                        )));
                    }
                }
            }
        }
        Ok(LinearFunctor { category: category.clone(), algebra: algebra.clone(), ranks, images })
    }

    pub fn category(&self) -> &Arc<LinearCategory> {
        &self.category
    }

    pub fn algebra(&self) -> &Arc<BAlgebra> {
        &self.algebra
    }

    pub fn ring(&self) -> &Ring {
        self.algebra.ring()
    }

    pub fn rank(&self, a: usize) -> usize {
        self.ranks[a]
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn object(&self, a: usize) -> BModule {
        BModule::free(&self.algebra, self.ranks[a])
    }

    pub fn generator_image(&self, a: usize, b: usize, i: usize) -> &BMatrix {
        &self.images[a * self.category.len() + b][i]
    }

    /// The same functor written in new bases: row `i` of `bases[a]` is the
    /// `i`-th new basis vector of `w(a)` in old coordinates.
    pub fn rebased(&self, bases: &[BMatrix]) -> Result<LinearFunctor> {
        let n = self.category.len();
        if bases.len() != n {
            return Err(Error::DimensionMismatch("one basis per object required".into()));
        }
        let inverses = bases
            .iter()
            .enumerate()
            .map(|(a, m)| m.inverse().ok_or_else(|| Error::NotInvertible(format!("basis at {}", self.category.objects()[a]))))
            .collect::<Result<Vec<_>>>()?;
        let mut images = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                images.push(
                    (0..self.category.hom(a, b).len())
                        .map(|i| bases[a].mul(self.generator_image(a, b, i)).mul(&inverses[b]))
                        .collect(),
                );
            }
        }
        LinearFunctor::new(&self.category, &self.algebra, self.ranks.clone(), images)
    }

    /// Image of an arbitrary element of `Hom(a, b)`.
    pub fn map_of(&self, a: usize, b: usize, f: &[Scalar]) -> BMatrix {
        let mut out = BMatrix::zeros(&self.algebra, self.ranks[a], self.ranks[b]);
        for (i, c) in f.iter().enumerate() {
            if !self.ring().is_zero(c) {
                out = out.add(&self.generator_image(a, b, i).scale(c));
            }
        }
        out
    }
}

/// Checks that relations map to zero and that identities and composites of
/// generators are preserved.
pub fn check_functor(w: &LinearFunctor) -> CheckReport {
    let mut report = CheckReport::new();
    let c = w.category();
    let n = c.len();
    for a in 0..n {
        for b in 0..n {
            let rel = c.hom(a, b).presentation.relations();
            for r in 0..rel.rows() {
                if !w.map_of(a, b, rel.row(r)).is_zero() {
                    report.fail("functor-relation", format!("relation {r} of Hom({},{})", c.objects[a], c.objects[b]), "image is nonzero");
                }
            }
        }
        let id = w.map_of(a, a, c.identity(a));
        if id != BMatrix::identity(w.algebra(), w.rank(a)) {
            report.fail("functor-identity", &c.objects[a], "identity is not sent to the identity");
        }
    }
    for a in 0..n {
        for b in 0..n {
            for d in 0..n {
                for i in 0..c.hom(a, b).len() {
                    for j in 0..c.hom(b, d).len() {
                        let composite = c.compose(a, b, d, &c.generator(a, b, i), &c.generator(b, d, j));
                        let lhs = w.generator_image(a, b, i).mul(w.generator_image(b, d, j));
                        if lhs != w.map_of(a, d, &composite) {
                            report.fail(
                                "functor-composition",
                                format!("({}, {})", c.label(a, b, i), c.label(b, d, j)),
                                "image of the composite differs from the composite of images",
                            );
                        }
                    }
                }
            }
        }
    }
    report
}

/// The module of natural families between two functors on the same
/// category, with the families its generators stand for.
#[derive(Clone, Debug)]
pub struct NatSpace {
    pub module: BModule,
    /// One family per generator of `module`; entry `a` is the component at
    /// object `a`.
    pub families: Vec<Vec<BMatrix>>,
}

/// Families `η_A : F(A) → G(A)` with `F(f) η_{A'} = η_A G(f)` for every hom
/// generator `f : A → A'`.
pub fn nat_space(f: &LinearFunctor, g: &LinearFunctor) -> Result<NatSpace> {
    if f.category() != g.category() {
        return Err(Error::InvalidInput("functors have different domains".into()));
    }
    if f.algebra() != g.algebra() {
        return Err(Error::AlgebraMismatch);
    }
    let c = f.category();
    let algebra = f.algebra();
    let ring = f.ring();
    let d = algebra.rank();
    let n = c.len();
    let mut offsets = Vec::with_capacity(n + 1);
    offsets.push(0);
    for a in 0..n {
        offsets.push(offsets[a] + f.rank(a) * g.rank(a) * d);
    }
    let unknowns = offsets[n];
    let family_of = |v: &[Scalar]| -> Vec<BMatrix> {
        (0..n)
            .map(|a| {
                let (p, q) = (f.rank(a), g.rank(a));
                let entries = (0..p * q).map(|e| v[offsets[a] + e * d..offsets[a] + (e + 1) * d].to_vec()).collect();
                BMatrix::new(algebra, p, q, entries).expect("shapes agree")
            })
            .collect()
    };
    let mut system = LinearSystem::new(ring, unknowns);
    for a in 0..n {
        for b in 0..n {
            for i in 0..c.hom(a, b).len() {
                let width = f.rank(a) * g.rank(b) * d;
                if width == 0 {
                    continue;
                }
                let rows: Vec<Vec<Scalar>> = (0..unknowns)
                    .map(|u| {
                        let eta = family_of(&Matrix::unit_vector(ring, unknowns, u));
                        let lhs = f.generator_image(a, b, i).mul(&eta[b]);
                        let rhs = eta[a].mul(g.generator_image(a, b, i));
                        lhs.sub(&rhs).hat_entries()
                    })
                    .collect();
                system.constrain(Matrix::from_rows(ring, width, rows)?, None, None);
            }
        }
    }
    let generators = system.homogeneous_solutions();
    // B acts on each component entrywise
    let action: Vec<Matrix> = (0..d)
        .map(|l| {
            let blocks = unknowns / d.max(1);
            Matrix::identity(ring, blocks).kron(algebra.mult_matrix(l))
        })
        .collect();
    let module = subquotient(algebra, &generators, &Matrix::zeros(ring, 0, unknowns), &action)?;
    let families = (0..generators.rows()).map(|k| family_of(generators.row(k))).collect();
    Ok(NatSpace { module, families })
}

/// A hom generator given by its matrix in a concrete subcategory of free
/// `B`-modules.
#[derive(Clone, Debug)]
pub struct ConcreteHom {
    pub source: usize,
    pub target: usize,
    pub name: String,
    pub matrix: BMatrix,
}

/// The category whose hom-modules are the `R`-spans of the given matrices,
/// with the inclusion as fiber functor. Linear dependencies among the
/// generators become relations; identities and composites are found by
/// solving and must lie in the spans.
pub fn concrete_category(
    algebra: &Arc<BAlgebra>,
    objects: Vec<String>,
    ranks: Vec<usize>,
    generators: Vec<ConcreteHom>,
) -> Result<(Arc<LinearCategory>, Arc<LinearFunctor>)> {
    let ring = algebra.ring();
    let n = objects.len();
    if ranks.len() != n {
        return Err(Error::DimensionMismatch("one rank per object required".into()));
    }
    let mut gens: Vec<Vec<ConcreteHom>> = vec![Vec::new(); n * n];
    for g in generators {
        if g.source >= n || g.target >= n {
            return Err(Error::InvalidInput(format!("generator {} has an unknown endpoint", g.name)));
        }
        if (g.matrix.rows(), g.matrix.cols()) != (ranks[g.source], ranks[g.target]) {
            return Err(Error::DimensionMismatch(format!("generator {} has the wrong shape", g.name)));
        }
        gens[g.source * n + g.target].push(g);
    }
    let span = |a: usize, b: usize| -> Matrix {
        let width = ranks[a] * ranks[b] * algebra.rank();
        let rows = gens[a * n + b].iter().map(|g| g.matrix.hat_entries()).collect();
        Matrix::from_rows(ring, width, rows).expect("shapes agree")
    };
    let spans: Vec<Matrix> = (0..n * n).map(|k| span(k / n, k % n)).collect();
    let echelons: Vec<linalg::Echelon> = spans.iter().map(linalg::Echelon::new).collect();
    let mut cat = LinearCategory::new(ring, objects);
    for a in 0..n {
        for b in 0..n {
            let names = gens[a * n + b].iter().map(|g| g.name.clone()).collect();
            cat.set_hom(a, b, names, linalg::kernel(&spans[a * n + b]))?;
        }
    }
    for a in 0..n {
        let id = BMatrix::identity(algebra, ranks[a]).hat_entries();
        let coords = echelons[a * n + a]
            .solve(&id)
            .ok_or_else(|| Error::InvalidInput(format!("identity of {} is not in the span of its endomorphisms", cat.objects()[a])))?;
        cat.set_identity(a, coords)?;
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let (gab, gbc) = (&gens[a * n + b], &gens[b * n + c]);
                let width = gens[a * n + c].len();
                let mut rows = Vec::with_capacity(gab.len() * gbc.len());
                for f in gab {
                    for g in gbc {
                        let prod = f.matrix.mul(&g.matrix).hat_entries();
                        let coords = echelons[a * n + c].solve(&prod).ok_or_else(|| {
                            Error::InvalidInput(format!("composite of {} and {} is not in the span of generators", f.name, g.name))
                        })?;
                        rows.push(coords);
                    }
                }
                cat.set_composition(a, b, c, Matrix::from_rows(ring, width, rows)?)?;
            }
        }
    }
    let cat = Arc::new(cat);
    let images = gens.into_iter().map(|gs| gs.into_iter().map(|g| g.matrix).collect()).collect();
    let functor = LinearFunctor::new(&cat, algebra, ranks, images)?;
    Ok((cat, Arc::new(functor)))
}
