//! Finitely presented modules over the base ring and over a finite-rank
//! algebra `B`, with the linear algebra of maps between them.
//!
//! A module is stored at the base-ring level: an ambient `R^m`, relations
//! whose row span is quotiented out, and for `B` one action matrix per basis
//! element of `B`.

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::algebra::{BAlgebra, BElem, BMatrix};
use crate::error::{Error, Result};
use crate::linalg::{self, Echelon, ModuleStructure};
use crate::matrix::{vec_ops, Matrix};
use crate::ring::{Ring, Scalar};

/// `R^ambient / rowspan(relations)`.
pub struct Presentation {
    ring: Ring,
    ambient: usize,
    relations: Matrix,
    reducer: OnceLock<Echelon>,
}

impl Clone for Presentation {
    fn clone(&self) -> Self {
        Presentation {
            ring: self.ring.clone(),
            ambient: self.ambient,
            relations: self.relations.clone(),
            reducer: self.reducer.clone(),
        }
    }
}

impl fmt::Debug for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Presentation").field("ambient", &self.ambient).field("relations", &self.relations).finish()
    }
}

impl PartialEq for Presentation {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.relations == other.relations
    }
}

impl Eq for Presentation {}

/// A presentation rewritten on fewer generators, with the maps relating old
/// and new ambient coordinates.
#[derive(Clone, Debug)]
pub struct Simplification {
    pub presentation: Presentation,
    /// old ambient → new ambient
    pub proj: Matrix,
    /// new ambient → old ambient
    pub sect: Matrix,
    pub structure: ModuleStructure,
}

impl Presentation {
    pub fn new(ring: &Ring, ambient: usize, relations: Matrix) -> Result<Self> {
        if relations.cols() != ambient {
            return Err(Error::DimensionMismatch(format!(
                "relations have {} columns but the ambient rank is {ambient}",
                relations.cols()
            )));
        }
        if relations.ring() != ring {
            return Err(Error::RingMismatch(format!("{:?}", ring.kind()), format!("{:?}", relations.ring().kind())));
        }
        Ok(Presentation { ring: ring.clone(), ambient, relations: relations.without_zero_rows(), reducer: OnceLock::new() })
    }

    pub fn free(ring: &Ring, n: usize) -> Self {
        Presentation { ring: ring.clone(), ambient: n, relations: Matrix::zeros(ring, 0, n), reducer: OnceLock::new() }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn relations(&self) -> &Matrix {
        &self.relations
    }

    fn reducer(&self) -> &Echelon {
        self.reducer.get_or_init(|| Echelon::new(&self.relations))
    }

    /// Whether the ambient vector `v` represents zero.
    pub fn is_zero_vector(&self, v: &[Scalar]) -> bool {
        if vec_ops::is_zero(&self.ring, v) {
            return true;
        }
        if self.relations.rows() == 0 {
            return false;
        }
        self.reducer().contains(v)
    }

    pub fn equal_vectors(&self, u: &[Scalar], v: &[Scalar]) -> bool {
        self.is_zero_vector(&vec_ops::sub(&self.ring, u, v))
    }

    /// First row where two maps into this module differ, if any.
    pub fn maps_differ_at(&self, f: &Matrix, g: &Matrix) -> Option<usize> {
        assert_eq!(f.shape(), g.shape(), "comparing maps of different shapes");
        (0..f.rows()).find(|&i| !self.equal_vectors(f.row(i), g.row(i)))
    }

    pub fn maps_agree(&self, f: &Matrix, g: &Matrix) -> bool {
        self.maps_differ_at(f, g).is_none()
    }

    /// First row of `m` that is not zero in this module.
    pub fn nonzero_row(&self, m: &Matrix) -> Option<usize> {
        (0..m.rows()).find(|&i| !self.is_zero_vector(m.row(i)))
    }

    pub fn is_zero_map(&self, m: &Matrix) -> bool {
        self.nonzero_row(m).is_none()
    }

    /// Adds relations.
    pub fn quotient(&self, extra: &Matrix) -> Presentation {
        Presentation {
            ring: self.ring.clone(),
            ambient: self.ambient,
            relations: self.relations.vstack(extra).without_zero_rows(),
            reducer: OnceLock::new(),
        }
    }

    pub fn direct_sum(&self, other: &Presentation) -> Presentation {
        Presentation {
            ring: self.ring.clone(),
            ambient: self.ambient + other.ambient,
            relations: self.relations.direct_sum(&other.relations),
            reducer: OnceLock::new(),
        }
    }

    /// Tensor product over the base ring.
    pub fn tensor(&self, other: &Presentation) -> Presentation {
        Presentation {
            ring: self.ring.clone(),
            ambient: self.ambient * other.ambient,
            relations: tensor_relations(self, other),
            reducer: OnceLock::new(),
        }
    }

    pub fn structure(&self) -> ModuleStructure {
        linalg::module_structure(&self.relations, self.ambient)
    }

    pub fn is_zero_module(&self) -> bool {
        (0..self.ambient).all(|j| self.is_zero_vector(&Matrix::unit_vector(&self.ring, self.ambient, j)))
    }

    pub fn simplify(&self) -> Simplification {
        let s = linalg::simplify_presentation(&self.relations, self.ambient);
        let n = s.proj.cols();
        Simplification {
            presentation: Presentation { ring: self.ring.clone(), ambient: n, relations: s.relations, reducer: OnceLock::new() },
            proj: s.proj,
            sect: s.sect,
            structure: s.structure,
        }
    }

    /// Whether `f` maps relations of `source` to relations of this module.
    pub fn receives_well_defined(&self, source: &Presentation, f: &Matrix) -> bool {
        self.is_zero_map(&source.relations.mul(f))
    }
}

/// Relations of `P ⊗_R Q` on `R^{m n}`.
pub fn tensor_relations(p: &Presentation, q: &Presentation) -> Matrix {
    let ring = p.ring();
    let a = p.relations().kron(&Matrix::identity(ring, q.ambient()));
    let b = Matrix::identity(ring, p.ambient()).kron(q.relations());
    a.vstack(&b).without_zero_rows()
}

/// Relations `x b ⊗ y = x ⊗ b y` making a tensor product balanced over `B`.
pub fn balancing_relations(left: &[Matrix], right: &[Matrix]) -> Matrix {
    assert_eq!(left.len(), right.len(), "balancing over algebras of different rank");
    let ring = left[0].ring();
    let (m, n) = (left[0].rows(), right[0].rows());
    let parts: Vec<Matrix> = left
        .iter()
        .zip(right)
        .map(|(a, b)| a.kron(&Matrix::identity(ring, n)).sub(&Matrix::identity(ring, m).kron(b)).without_zero_rows())
        .collect();
    let refs: Vec<&Matrix> = parts.iter().collect();
    Matrix::vstack_all(ring, m * n, &refs)
}

/// Balanced tensor product of two presentations along given right and left
/// actions of `B`.
pub fn balanced_tensor(p: &Presentation, p_action: &[Matrix], q: &Presentation, q_action: &[Matrix]) -> Presentation {
    let rel = tensor_relations(p, q).vstack(&balancing_relations(p_action, q_action));
    Presentation::new(p.ring(), p.ambient() * q.ambient(), rel).expect("shapes agree")
}

/// An element of the source that is nonzero but maps to zero, or `None` when
/// `f : source → target` is injective.
pub fn injectivity_witness(source: &Presentation, target: &Presentation, f: &Matrix) -> Option<Vec<Scalar>> {
    let stacked = f.vstack(target.relations());
    let k = linalg::kernel(&stacked).col_range(0, source.ambient());
    (0..k.rows()).map(|i| k.row_vec(i)).find(|v| !source.is_zero_vector(v))
}

/// A target generator not hit by `f`, or `None` when `f` is surjective.
pub fn surjectivity_witness(target: &Presentation, f: &Matrix) -> Option<usize> {
    let e = Echelon::new(&f.vstack(target.relations()));
    (0..target.ambient()).find(|&j| !e.contains(&Matrix::unit_vector(target.ring(), target.ambient(), j)))
}

/// Some `x` with `x f ≡ y` in the target, if one exists.
pub fn preimage(target: &Presentation, f: &Matrix, y: &[Scalar]) -> Option<Vec<Scalar>> {
    let x = linalg::solve(&f.vstack(target.relations()), y)?;
    Some(x[..f.rows()].to_vec())
}

/// A module over a commutative algebra `B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BModule {
    algebra: Arc<BAlgebra>,
    pres: Presentation,
    action: Vec<Matrix>,
    basis: Option<Matrix>,
}

impl BModule {
    /// Validates that the actions are well defined and satisfy the algebra's
    /// multiplication table.
    pub fn new(algebra: &Arc<BAlgebra>, pres: Presentation, action: Vec<Matrix>) -> Result<Self> {
        let d = algebra.rank();
        let m = pres.ambient();
        if action.len() != d {
            return Err(Error::DimensionMismatch(format!("{} action matrices for an algebra of rank {d}", action.len())));
        }
        if action.iter().any(|a| a.shape() != (m, m)) {
            return Err(Error::DimensionMismatch(format!("action matrices must be {m}x{m}")));
        }
        let module = BModule { algebra: algebra.clone(), pres, action, basis: None };
        module.validate()?;
        Ok(module)
    }

    pub(crate) fn new_unchecked(algebra: &Arc<BAlgebra>, pres: Presentation, action: Vec<Matrix>) -> Self {
        BModule { algebra: algebra.clone(), pres, action, basis: None }
    }

    fn validate(&self) -> Result<()> {
        let b = &self.algebra;
        let ring = b.ring();
        let m = self.pres.ambient();
        for (l, a) in self.action.iter().enumerate() {
            if !self.pres.receives_well_defined(&self.pres, a) {
                return Err(Error::NotWellDefined(format!("action of b{l} does not preserve the relations")));
            }
        }
        let unit = self.action_of(b.unit());
        if !self.pres.maps_agree(&unit, &Matrix::identity(ring, m)) {
            return Err(Error::InvalidInput("unit of B does not act as the identity".into()));
        }
        for i in 0..b.rank() {
            for j in 0..b.rank() {
                let lhs = self.action[i].mul(&self.action[j]);
                let rhs = self.action_of(&b.constants()[i][j]);
                if !self.pres.maps_agree(&lhs, &rhs) {
                    return Err(Error::InvalidInput(format!("actions of b{i} and b{j} violate the multiplication table")));
                }
            }
        }
        Ok(())
    }

    /// `B^r` with its standard basis.
    pub fn free(algebra: &Arc<BAlgebra>, r: usize) -> Self {
        let ring = algebra.ring();
        let d = algebra.rank();
        let action = (0..d).map(|l| Matrix::identity(ring, r).kron(algebra.mult_matrix(l))).collect();
        let mut basis = Matrix::zeros(ring, r, r * d);
        for i in 0..r {
            for (l, u) in algebra.unit().iter().enumerate() {
                basis.set(i, i * d + l, u.clone());
            }
        }
        BModule { algebra: algebra.clone(), pres: Presentation::free(ring, r * d), action, basis: Some(basis) }
    }

    /// A module over the base ring viewed over `B = R`.
    pub fn over_base(algebra: &Arc<BAlgebra>, pres: Presentation) -> Result<Self> {
        if !algebra.is_trivial() {
            return Err(Error::AlgebraMismatch);
        }
        let action = vec![Matrix::identity(pres.ring(), pres.ambient()).scale(&algebra.unit()[0])];
        Ok(BModule::new_unchecked(algebra, pres, action))
    }

    /// Attaches a `B`-basis, given as rows of ambient vectors, after checking
    /// that it is one.
    pub fn with_basis(mut self, basis: Matrix) -> Result<Self> {
        if basis.cols() != self.pres.ambient() {
            return Err(Error::DimensionMismatch("basis vectors have the wrong length".into()));
        }
        let g = self.basis_map_for(&basis);
        if let Some(v) = injectivity_witness(&Presentation::free(self.ring(), g.rows()), &self.pres, &g) {
            return Err(Error::NotFree(format!("basis is not B-independent: {v:?}")));
        }
        if let Some(j) = surjectivity_witness(&self.pres, &g) {
            return Err(Error::NotFree(format!("basis does not generate ambient generator {j}")));
        }
        self.basis = Some(basis);
        Ok(self)
    }

    pub fn algebra(&self) -> &Arc<BAlgebra> {
        &self.algebra
    }

    pub fn ring(&self) -> &Ring {
        self.algebra.ring()
    }

    pub fn presentation(&self) -> &Presentation {
        &self.pres
    }

    pub fn ambient(&self) -> usize {
        self.pres.ambient()
    }

    pub fn action(&self) -> &[Matrix] {
        &self.action
    }

    pub fn basis(&self) -> Option<&Matrix> {
        self.basis.as_ref()
    }

    /// Rank over `B` of the chosen basis.
    pub fn rank(&self) -> Option<usize> {
        self.basis.as_ref().map(|b| b.rows())
    }

    /// Matrix of `x ↦ x b`.
    pub fn action_of(&self, b: &[Scalar]) -> Matrix {
        let ring = self.ring();
        let m = self.ambient();
        let mut out = Matrix::zeros(ring, m, m);
        for (l, c) in b.iter().enumerate() {
            if !ring.is_zero(c) {
                out = out.add(&self.action[l].scale(c));
            }
        }
        out
    }

    pub fn act(&self, x: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        self.action_of(b).apply(x)
    }

    fn basis_map_for(&self, basis: &Matrix) -> Matrix {
        let d = self.algebra.rank();
        let ring = self.ring();
        let mut g = Matrix::zeros(ring, basis.rows() * d, self.ambient());
        for i in 0..basis.rows() {
            let row = Matrix::row_vector(ring, basis.row_vec(i));
            for l in 0..d {
                g.set_block(i * d + l, 0, &row.mul(&self.action[l]));
            }
        }
        g
    }

    /// The `R`-level matrix of `B^r → M` sending `e_i b_l` to `g_i b_l`.
    pub fn basis_map(&self) -> Option<Matrix> {
        self.basis.as_ref().map(|b| self.basis_map_for(b))
    }

    /// The inverse of [`BModule::basis_map`]: ambient generators written in
    /// coordinates of `B^r`.
    pub fn basis_coordinates(&self) -> Option<Matrix> {
        let g = self.basis_map()?;
        let ring = self.ring();
        let stacked = g.vstack(self.pres.relations());
        let e = Echelon::new(&stacked);
        let rows = (0..self.ambient())
            .map(|j| {
                let x = e.solve(&Matrix::unit_vector(ring, self.ambient(), j)).expect("basis generates");
                x[..g.rows()].to_vec()
            })
            .collect();
        Some(Matrix::from_rows(ring, g.rows(), rows).expect("shapes agree"))
    }

    /// Rewrites the module on a minimal set of ambient generators.
    pub fn simplify(&self) -> (BModule, Matrix, Matrix) {
        let s = self.pres.simplify();
        let action = self.action.iter().map(|a| s.sect.mul(a).mul(&s.proj)).collect();
        let basis = self.basis.as_ref().map(|b| b.mul(&s.proj));
        let module = BModule { algebra: self.algebra.clone(), pres: s.presentation, action, basis };
        (module, s.proj, s.sect)
    }

    /// `B`-linearity of an `R`-linear `f : self → target`: the first algebra
    /// basis index where `f` fails to commute with the action.
    pub fn linearity_failure(&self, target: &BModule, f: &Matrix) -> Option<usize> {
        (0..self.algebra.rank()).find(|&l| !target.pres.maps_agree(&self.action[l].mul(f), &f.mul(&target.action[l])))
    }
}

/// A `B`-linear map between modules.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BLinearMap {
    source: BModule,
    target: BModule,
    matrix: Matrix,
}

impl BLinearMap {
    pub fn new(source: &BModule, target: &BModule, matrix: Matrix) -> Result<Self> {
        if matrix.shape() != (source.ambient(), target.ambient()) {
            return Err(Error::DimensionMismatch(format!(
                "map is {}x{} but modules have ambient ranks {} and {}",
                matrix.rows(),
                matrix.cols(),
                source.ambient(),
                target.ambient()
            )));
        }
        if source.algebra() != target.algebra() {
            return Err(Error::AlgebraMismatch);
        }
        if !target.presentation().receives_well_defined(source.presentation(), &matrix) {
            return Err(Error::NotWellDefined("map does not respect the source relations".into()));
        }
        if let Some(l) = source.linearity_failure(target, &matrix) {
            return Err(Error::InvalidInput(format!("map does not commute with the action of b{l}")));
        }
        Ok(BLinearMap { source: source.clone(), target: target.clone(), matrix })
    }

    pub(crate) fn new_unchecked(source: &BModule, target: &BModule, matrix: Matrix) -> Self {
        BLinearMap { source: source.clone(), target: target.clone(), matrix }
    }

    /// The map `B^r → B^s` given by a matrix over `B`.
    pub fn from_b_matrix(m: &BMatrix) -> Self {
        let a = m.algebra();
        BLinearMap::new_unchecked(&BModule::free(a, m.rows()), &BModule::free(a, m.cols()), m.hat())
    }

    pub fn identity(m: &BModule) -> Self {
        BLinearMap::new_unchecked(m, m, Matrix::identity(m.ring(), m.ambient()))
    }

    pub fn source(&self) -> &BModule {
        &self.source
    }

    pub fn target(&self) -> &BModule {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &BLinearMap) -> Result<BLinearMap> {
        if self.target.ambient() != next.source.ambient() || self.target.presentation() != next.source.presentation() {
            return Err(Error::DimensionMismatch("composable maps must share the middle module".into()));
        }
        Ok(BLinearMap::new_unchecked(&self.source, &next.target, self.matrix.mul(&next.matrix)))
    }

    pub fn agrees_with(&self, other: &BLinearMap) -> bool {
        self.target.presentation().maps_agree(&self.matrix, &other.matrix)
    }

    pub fn is_zero(&self) -> bool {
        self.target.presentation().is_zero_map(&self.matrix)
    }

    pub fn is_injective(&self) -> bool {
        injectivity_witness(self.source.presentation(), self.target.presentation(), &self.matrix).is_none()
    }

    pub fn is_surjective(&self) -> bool {
        surjectivity_witness(self.target.presentation(), &self.matrix).is_none()
    }

    pub fn is_iso(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }

    /// An inverse map, when this one is bijective.
    pub fn inverse(&self) -> Option<BLinearMap> {
        if !self.is_iso() {
            return None;
        }
        let ring = self.source.ring();
        let n = self.target.ambient();
        let rows = (0..n)
            .map(|j| preimage(self.target.presentation(), &self.matrix, &Matrix::unit_vector(ring, n, j)))
            .collect::<Option<Vec<_>>>()?;
        let inv = Matrix::from_rows(ring, self.source.ambient(), rows).ok()?;
        Some(BLinearMap::new_unchecked(&self.target, &self.source, inv))
    }
}

/// The module `span(generators) / (span(generators) ∩ span(zero))` inside an
/// ambient `R^N` on which `B` acts by `action`, presented on the given
/// generators. Both spans must be stable under the action.
pub fn subquotient(algebra: &Arc<BAlgebra>, generators: &Matrix, zero: &Matrix, action: &[Matrix]) -> Result<BModule> {
    let ring = algebra.ring();
    let k = generators.rows();
    let stacked = generators.vstack(zero);
    let relations = linalg::kernel(&stacked).col_range(0, k);
    let e = Echelon::new(&stacked);
    let mut acts = Vec::with_capacity(action.len());
    for (l, a) in action.iter().enumerate() {
        let images = generators.mul(a);
        let rows = (0..k)
            .map(|i| {
                e.solve(images.row(i))
                    .map(|x| x[..k].to_vec())
                    .ok_or_else(|| Error::NotWellDefined(format!("generator {i} leaves the submodule under b{l}")))
            })
            .collect::<Result<Vec<_>>>()?;
        acts.push(Matrix::from_rows(ring, k, rows)?);
    }
    Ok(BModule::new_unchecked(algebra, Presentation::new(ring, k, relations)?, acts))
}

/// `M ⊗_B N`; the pair `(x, y)` maps to `kron(x, y)`.
pub fn tensor_over_b(m: &BModule, n: &BModule) -> Result<BModule> {
    if m.algebra() != n.algebra() {
        return Err(Error::AlgebraMismatch);
    }
    let pres = balanced_tensor(m.presentation(), m.action(), n.presentation(), n.action());
    let ring = m.ring();
    let action = m.action().iter().map(|a| a.kron(&Matrix::identity(ring, n.ambient()))).collect();
    let mut out = BModule::new_unchecked(m.algebra(), pres, action);
    if let (Some(bm), Some(bn)) = (m.basis(), n.basis()) {
        let mut rows = Vec::new();
        for i in 0..bm.rows() {
            for j in 0..bn.rows() {
                rows.push(vec_ops::kron(ring, bm.row(i), bn.row(j)));
            }
        }
        let basis = Matrix::from_rows(ring, m.ambient() * n.ambient(), rows)?;
        out = out.with_basis(basis)?;
    }
    Ok(out)
}

/// Image of a pair under the canonical balanced map into `M ⊗_B N`.
pub fn tensor_pair(ring: &Ring, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
    vec_ops::kron(ring, x, y)
}

/// The dual `Hom_B(M, B)` of a module with a chosen basis, presented as
/// `B^r` with the dual basis, and the evaluation map `M^∨ ⊗_B M → B`.
#[derive(Clone, Debug)]
pub struct Dual {
    pub module: BModule,
    pub evaluation: BLinearMap,
}

pub fn dual_over_b(m: &BModule) -> Result<Dual> {
    let r = m.rank().ok_or_else(|| Error::NotFree("dual requires a chosen B-basis".into()))?;
    let algebra = m.algebra();
    let ring = m.ring();
    let d = algebra.rank();
    let dual = BModule::free(algebra, r);
    let coords = m.basis_coordinates().expect("basis present");
    let pair = tensor_over_b(&dual, m)?;
    let mut ev = Matrix::zeros(ring, pair.ambient(), d);
    for i in 0..r {
        for l in 0..d {
            for j in 0..m.ambient() {
                let beta = &coords.row(j)[i * d..(i + 1) * d];
                let v = algebra.mul(&algebra.basis(l), beta);
                for (k, s) in v.into_iter().enumerate() {
                    ev.set((i * d + l) * m.ambient() + j, k, s);
                }
            }
        }
    }
    let evaluation = BLinearMap::new(&pair, &BModule::free(algebra, 1), ev)?;
    Ok(Dual { module: dual, evaluation })
}

/// Cokernel of a map with the canonical projection.
pub fn cokernel(f: &BLinearMap) -> (BModule, BLinearMap) {
    let target = f.target();
    let pres = target.presentation().quotient(f.matrix());
    let module = BModule::new_unchecked(target.algebra(), pres, target.action().to_vec());
    let proj = BLinearMap::new_unchecked(target, &module, Matrix::identity(target.ring(), target.ambient()));
    (module, proj)
}

/// Checks that `B` is local with maximal ideal generated by `ideal`. Finite
/// algebras are checked exhaustively; among infinite ones only fields of
/// rank one with the zero ideal are recognized.
pub fn validate_local(algebra: &BAlgebra, ideal: &[BElem]) -> Result<()> {
    let ring = algebra.ring();
    let d = algebra.rank();
    let mut span_rows = Vec::new();
    for g in ideal {
        if g.len() != d {
            return Err(Error::DimensionMismatch("ideal generator has the wrong length".into()));
        }
        for l in 0..d {
            span_rows.push(algebra.mul(g, &algebra.basis(l)));
        }
    }
    let span = Matrix::from_rows(ring, d, span_rows)?;
    let ideal_span = Echelon::new(&span);
    if ideal_span.contains(algebra.unit()) {
        return Err(Error::Precondition("ideal is not proper".into()));
    }
    if ring.is_finite() {
        let elements = algebra
            .elements(1 << 20)
            .ok_or_else(|| Error::Unsupported("algebra too large to check locality".into()))?;
        for x in elements {
            if !ideal_span.contains(&x) && algebra.inverse(&x).is_none() {
                return Err(Error::Precondition(format!("{x:?} lies outside the ideal but is not a unit")));
            }
        }
        return Ok(());
    }
    if ring.is_field() && d == 1 && span.is_zero() {
        return Ok(());
    }
    Err(Error::Unsupported("locality can only be checked over finite rings or for a field".into()))
}

/// Decides freeness of a finitely presented module over a local algebra with
/// maximal ideal generated by `ideal`. Returns a `B`-basis as rows of ambient
/// vectors, or `None` when the module is not free.
pub fn is_free_over_local(m: &BModule, ideal: &[BElem]) -> Result<Option<Matrix>> {
    validate_local(m.algebra(), ideal)?;
    let ring = m.ring();
    let n = m.ambient();
    // mM + relations
    let mut base = m.presentation().relations().clone();
    for g in ideal {
        base = base.vstack(&m.action_of(g));
    }
    let mut chosen: Vec<Vec<Scalar>> = Vec::new();
    let mut span = base.clone();
    for j in 0..n {
        let e = Matrix::unit_vector(ring, n, j);
        if linalg::row_span_contains(&span, &e) {
            continue;
        }
        chosen.push(e.clone());
        let row = Matrix::row_vector(ring, e);
        for a in m.action() {
            span = span.vstack(&row.mul(a));
        }
    }
    let basis = Matrix::from_rows(ring, n, chosen)?;
    Ok(m.clone().with_basis(basis.clone()).ok().map(|_| basis))
}
