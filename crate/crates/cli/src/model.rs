//! Validation of a [`Document`] into core objects. Every error names the
//! field path it came from.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use num_bigint::BigInt;
use tannaka::category::{check_category, concrete_category, ConcreteHom, LinearCategory, LinearFunctor};
use tannaka::coalgebroid::{Coalgebroid, Comodule};
use tannaka::flmod::{witt_ring, FLObject};
use tannaka::monoidal::{Bialgebroid, FiberMonoidal, MonoidalFiber, SymmetryData};
use tannaka::recognition::CokernelDeclaration;
use tannaka::{BAlgebra, BElem, BMatrix, BModule, Error, Matrix, Presentation, Ring, RingKind, Scalar};

use crate::dto::*;
use crate::CliError;

type Result<T> = std::result::Result<T, CliError>;

/// Values from the command line that complete a document.
#[derive(Clone, Debug, Default)]
pub struct ParseOptions {
    pub p: Option<u64>,
    pub n: Option<u32>,
}

#[derive(Clone, Debug)]
pub struct BialgebroidModel {
    pub bialgebroid: Bialgebroid,
    pub commutative: bool,
    pub antipode: Option<Matrix>,
}

#[derive(Clone, Debug)]
pub struct ComoduleModel {
    pub comodule: Comodule,
    /// Comodule map into the coalgebroid.
    pub map: Option<Matrix>,
}

#[derive(Clone, Debug)]
pub struct FlModel {
    pub p: u64,
    pub n: u32,
    pub objects: Vec<FLObject>,
}

/// A fully validated model.
#[derive(Clone, Debug)]
pub struct Model {
    pub ring: Ring,
    pub algebra: Arc<BAlgebra>,
    pub category: Option<Arc<LinearCategory>>,
    pub functor: Option<Arc<LinearFunctor>>,
    pub monoidal: Option<MonoidalFiber>,
    pub coalgebroid: Option<Arc<Coalgebroid>>,
    pub bialgebroid: Option<BialgebroidModel>,
    pub comodules: Vec<ComoduleModel>,
    pub cokernels: Vec<CokernelDeclaration>,
    pub local_ideal: Option<Vec<BElem>>,
    pub all_elements: Option<bool>,
    pub base_change_target: Option<Ring>,
    pub fl: Option<FlModel>,
}

fn core_error(path: &str, e: Error) -> CliError {
    match e {
        Error::Unsupported(m) => CliError::Unsupported(m),
        other => CliError::parse(path, other.to_string()),
    }
}

pub fn parse_document(text: &str) -> Result<Document> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let path = if path == "." { "document".to_string() } else { path };
        CliError::parse(path, e.into_inner().to_string())
    })
}

pub fn parse_model(path: &Path, options: &ParseOptions) -> Result<Model> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    build_model(&parse_document(&text)?, options)
}

fn bigint(v: &Num, path: &str) -> Result<BigInt> {
    match v {
        Num::Int(i) => Ok(BigInt::from(*i)),
        Num::Text(s) => s.trim().parse().map_err(|_| CliError::parse(path, format!("expected an integer, found {s:?}"))),
    }
}

pub fn ring_from(dto: &RingDto, path: &str) -> Result<Ring> {
    let param = |v: &Option<Num>, name: &str| -> Result<BigInt> {
        let p = format!("{path}.{name}");
        bigint(v.as_ref().ok_or_else(|| CliError::parse(&p, "missing field"))?, &p)
    };
    let ring = match dto.kind.as_str() {
        "Integers" => Ring::integers(),
        "Rationals" => Ring::rationals(),
        "PrimeField" => Ring::prime_field(param(&dto.p, "p")?).map_err(|e| core_error(&format!("{path}.p"), e))?,
        "IntegersMod" => {
            Ring::integers_mod(param(&dto.modulus, "modulus")?).map_err(|e| core_error(&format!("{path}.modulus"), e))?
        }
        other => return Err(CliError::Unsupported(format!("ring kind {other:?}"))),
    };
    Ok(ring)
}

/// Converts values and matrices against a fixed ring and `B`.
pub struct Reader {
    pub ring: Ring,
    pub algebra: Arc<BAlgebra>,
}

impl Reader {
    pub fn new(ring: &Ring, algebra: &Arc<BAlgebra>) -> Self {
        Reader { ring: ring.clone(), algebra: algebra.clone() }
    }

    pub fn scalar(&self, v: &Num, path: &str) -> Result<Scalar> {
        if let Some(n) = self.ring.modulus() {
            let x = bigint(v, path)?;
            if x < BigInt::from(0) || &x >= n {
                return Err(CliError::parse(path, format!("residue {x} outside [0, {n})")));
            }
            return Ok(self.ring.from_bigint(x));
        }
        let text = match v {
            Num::Int(i) => i.to_string(),
            Num::Text(s) => s.clone(),
        };
        self.ring.parse_scalar(&text).map_err(|e| core_error(path, e))
    }

    pub fn vector(&self, v: &[Num], len: usize, path: &str) -> Result<Vec<Scalar>> {
        if v.len() != len {
            return Err(CliError::parse(path, format!("expected {len} entries, found {}", v.len())));
        }
        v.iter().enumerate().map(|(i, x)| self.scalar(x, &format!("{path}[{i}]"))).collect()
    }

    pub fn element(&self, e: &Entry, path: &str) -> Result<BElem> {
        match e {
            Entry::Scalar(s) => Ok(self.algebra.scalar(&self.scalar(s, path)?)),
            Entry::Element(v) => self.vector(v, self.algebra.rank(), path),
        }
    }

    fn check_shape(m: &MatrixDto, rows: Option<usize>, cols: usize, path: &str) -> Result<()> {
        let r = rows.unwrap_or(m.len());
        let bad_row = m.iter().position(|row| row.len() != cols);
        if m.len() != r || bad_row.is_some() {
            let width = bad_row.or(if m.is_empty() { None } else { Some(0) }).map_or(cols, |i| m[i].len());
            return Err(CliError::parse(
                path,
                format!("expected a {r}×{cols} matrix, found {}×{width}", m.len()),
            ));
        }
        Ok(())
    }

    /// A matrix over the base ring; `rows` is checked when given.
    pub fn matrix(&self, m: &MatrixDto, rows: Option<usize>, cols: usize, path: &str) -> Result<Matrix> {
        Self::check_shape(m, rows, cols, path)?;
        let mut data = Vec::with_capacity(m.len() * cols);
        for (i, row) in m.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                let p = format!("{path}[{i}][{j}]");
                match e {
                    Entry::Scalar(s) => data.push(self.scalar(s, &p)?),
                    Entry::Element(_) => return Err(CliError::parse(p, "expected a scalar")),
                }
            }
        }
        Matrix::new(&self.ring, m.len(), cols, data).map_err(|e| core_error(path, e))
    }

    pub fn bmatrix(&self, m: &MatrixDto, rows: usize, cols: usize, path: &str) -> Result<BMatrix> {
        Self::check_shape(m, Some(rows), cols, path)?;
        let mut entries = Vec::with_capacity(rows * cols);
        for (i, row) in m.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                entries.push(self.element(e, &format!("{path}[{i}][{j}]"))?);
            }
        }
        BMatrix::new(&self.algebra, rows, cols, entries).map_err(|e| core_error(path, e))
    }

    fn actions(&self, list: &[MatrixDto], n: usize, path: &str) -> Result<Vec<Matrix>> {
        let d = self.algebra.rank();
        if list.len() != d {
            return Err(CliError::parse(path, format!("expected {d} action matrices, found {}", list.len())));
        }
        list.iter().enumerate().map(|(l, m)| self.matrix(m, Some(n), n, &format!("{path}[{l}]"))).collect()
    }

    fn presentation(&self, ambient: usize, relations: &MatrixDto, path: &str) -> Result<Presentation> {
        let rel = self.matrix(relations, None, ambient, path)?;
        Presentation::new(&self.ring, ambient, rel).map_err(|e| core_error(path, e))
    }
}

fn labels(objects: &[String], path: &str) -> Result<BTreeMap<String, usize>> {
    let mut map = BTreeMap::new();
    for (i, o) in objects.iter().enumerate() {
        if map.insert(o.clone(), i).is_some() {
            return Err(CliError::parse(format!("{path}[{i}]"), format!("duplicate object {o:?}")));
        }
    }
    Ok(map)
}

fn lookup(map: &BTreeMap<String, usize>, label: &str, path: &str) -> Result<usize> {
    map.get(label).copied().ok_or_else(|| CliError::parse(path, format!("unknown object {label:?}")))
}

fn build_category(r: &Reader, dto: &CategoryDto) -> Result<LinearCategory> {
    let idx = labels(&dto.objects, "category.objects")?;
    let mut c = LinearCategory::new(&r.ring, dto.objects.clone());
    let mut seen = BTreeMap::new();
    for (k, h) in dto.homs.iter().enumerate() {
        let path = format!("category.homs[{k}]");
        let a = lookup(&idx, &h.source, &format!("{path}.source"))?;
        let b = lookup(&idx, &h.target, &format!("{path}.target"))?;
        if seen.insert((a, b), k).is_some() {
            return Err(CliError::parse(path, format!("Hom({},{}) given twice", h.source, h.target)));
        }
        let rel = r.matrix(&h.relations, None, h.generators.len(), &format!("{path}.relations"))?;
        c.set_hom(a, b, h.generators.clone(), rel).map_err(|e| core_error(&path, e))?;
    }
    for label in dto.identities.keys() {
        lookup(&idx, label, "category.identities")?;
    }
    for (a, label) in dto.objects.iter().enumerate() {
        let path = format!("category.identities.{label}");
        let v = dto.identities.get(label).ok_or_else(|| CliError::parse(&path, "missing identity"))?;
        let id = r.vector(v, c.hom(a, a).len(), &path)?;
        c.set_identity(a, id).map_err(|e| core_error(&path, e))?;
    }
    for (k, comp) in dto.compositions.iter().enumerate() {
        let path = format!("category.compositions[{k}]");
        let [a, b, cc] = &comp.objects;
        let a = lookup(&idx, a, &format!("{path}.objects[0]"))?;
        let b = lookup(&idx, b, &format!("{path}.objects[1]"))?;
        let cc = lookup(&idx, cc, &format!("{path}.objects[2]"))?;
        let rows = c.hom(a, b).len() * c.hom(b, cc).len();
        let table = r.matrix(&comp.table, Some(rows), c.hom(a, cc).len(), &format!("{path}.table"))?;
        c.set_composition(a, b, cc, table).map_err(|e| core_error(&path, e))?;
    }
    Ok(c)
}

fn build_functor(r: &Reader, dto: &FunctorDto, category: Option<&Arc<LinearCategory>>) -> Result<Arc<LinearFunctor>> {
    match category {
        Some(c) => {
            if dto.objects.as_ref().is_some_and(|o| o != c.objects()) {
                return Err(CliError::parse("functor.objects", "does not match category.objects"));
            }
            let n = c.len();
            if dto.ranks.len() != n {
                return Err(CliError::parse("functor.ranks", format!("expected {n} ranks, found {}", dto.ranks.len())));
            }
            let idx = labels(c.objects(), "category.objects")?;
            let mut images: Vec<Vec<Option<BMatrix>>> =
                (0..n * n).map(|k| vec![None; c.hom(k / n, k % n).len()]).collect();
            for (k, img) in dto.images.iter().enumerate() {
                let path = format!("functor.images[{k}]");
                let a = lookup(&idx, &img.source, &format!("{path}.source"))?;
                let b = lookup(&idx, &img.target, &format!("{path}.target"))?;
                let i = c.hom(a, b).names.iter().position(|g| g == &img.generator).ok_or_else(|| {
                    CliError::parse(format!("{path}.generator"), format!("no generator {:?} in Hom({},{})", img.generator, img.source, img.target))
                })?;
                if images[a * n + b][i].is_some() {
                    return Err(CliError::parse(path, format!("generator {:?} given twice", img.generator)));
                }
                images[a * n + b][i] = Some(r.bmatrix(&img.matrix, dto.ranks[a], dto.ranks[b], &format!("{path}.matrix"))?);
            }
            let mut full = Vec::with_capacity(n * n);
            for (k, list) in images.into_iter().enumerate() {
                let (a, b) = (k / n, k % n);
                let mut row = Vec::with_capacity(list.len());
                for (i, m) in list.into_iter().enumerate() {
                    row.push(m.ok_or_else(|| {
                        CliError::parse(
                            "functor.images",
                            format!("missing image of {} in Hom({},{})", c.hom(a, b).names[i], c.objects()[a], c.objects()[b]),
                        )
                    })?);
                }
                full.push(row);
            }
            let w = LinearFunctor::new(c, &r.algebra, dto.ranks.clone(), full).map_err(|e| core_error("functor", e))?;
            Ok(Arc::new(w))
        }
        None => {
            let objects = dto
                .objects
                .clone()
                .ok_or_else(|| CliError::parse("functor.objects", "required when there is no category section"))?;
            let idx = labels(&objects, "functor.objects")?;
            if dto.ranks.len() != objects.len() {
                return Err(CliError::parse(
                    "functor.ranks",
                    format!("expected {} ranks, found {}", objects.len(), dto.ranks.len()),
                ));
            }
            let mut gens: Vec<ConcreteHom> = objects
                .iter()
                .enumerate()
                .map(|(a, o)| ConcreteHom {
                    source: a,
                    target: a,
                    name: format!("id_{o}"),
                    matrix: BMatrix::identity(&r.algebra, dto.ranks[a]),
                })
                .collect();
            for (k, img) in dto.images.iter().enumerate() {
                let path = format!("functor.images[{k}]");
                let a = lookup(&idx, &img.source, &format!("{path}.source"))?;
                let b = lookup(&idx, &img.target, &format!("{path}.target"))?;
                let matrix = r.bmatrix(&img.matrix, dto.ranks[a], dto.ranks[b], &format!("{path}.matrix"))?;
                gens.push(ConcreteHom { source: a, target: b, name: img.generator.clone(), matrix });
            }
            let (_, w) = concrete_category(&r.algebra, objects, dto.ranks.clone(), gens).map_err(|e| core_error("functor", e))?;
            Ok(w)
        }
    }
}

fn build_monoidal(r: &Reader, w: &Arc<LinearFunctor>, m: &MonoidalDto, sym: Option<&SymmetryDto>, dual: Option<&DualityDto>) -> Result<MonoidalFiber> {
    let c = w.category();
    let n = c.len();
    let idx = labels(c.objects(), "objects")?;
    let mut tensor = vec![None; n * n];
    for (k, [a, b, ab]) in m.tensor.iter().enumerate() {
        let path = format!("monoidal.tensor[{k}]");
        let (a, b) = (lookup(&idx, a, &path)?, lookup(&idx, b, &path)?);
        if tensor[a * n + b].replace(lookup(&idx, ab, &path)?).is_some() {
            return Err(CliError::parse(path, "pair given twice"));
        }
    }
    let tensor: Vec<usize> = tensor
        .into_iter()
        .enumerate()
        .map(|(k, t)| {
            t.ok_or_else(|| CliError::parse("monoidal.tensor", format!("missing {} ⊗ {}", c.objects()[k / n], c.objects()[k % n])))
        })
        .collect::<Result<_>>()?;
    let unit = lookup(&idx, &m.unit, "monoidal.unit")?;
    let mut psi = vec![None; n * n];
    for (k, p) in m.psi.iter().enumerate() {
        let path = format!("monoidal.psi[{k}]");
        let a = lookup(&idx, &p.left, &format!("{path}.left"))?;
        let b = lookup(&idx, &p.right, &format!("{path}.right"))?;
        let mat = r.bmatrix(&p.matrix, w.rank(a) * w.rank(b), w.rank(tensor[a * n + b]), &format!("{path}.matrix"))?;
        if psi[a * n + b].replace(mat).is_some() {
            return Err(CliError::parse(path, "pair given twice"));
        }
    }
    let psi: Vec<BMatrix> = psi
        .into_iter()
        .enumerate()
        .map(|(k, t)| t.ok_or_else(|| CliError::parse("monoidal.psi", format!("missing ({}, {})", c.objects()[k / n], c.objects()[k % n]))))
        .collect::<Result<_>>()?;
    let psi_unit = r.bmatrix(&m.psi_unit, 1, w.rank(unit), "monoidal.psi_unit")?;
    let duals = match dual {
        None => None,
        Some(d) => {
            let mut list = vec![None; n];
            for (k, e) in d.duals.iter().enumerate() {
                let path = format!("duality.duals[{k}]");
                let a = lookup(&idx, &e.object, &format!("{path}.object"))?;
                let da = lookup(&idx, &e.dual, &format!("{path}.dual"))?;
                let ev = r.bmatrix(&e.evaluation, w.rank(tensor[da * n + a]), w.rank(unit), &format!("{path}.evaluation"))?;
                let coev = r.bmatrix(&e.coevaluation, w.rank(unit), w.rank(tensor[a * n + da]), &format!("{path}.coevaluation"))?;
                if list[a].replace((da, ev, coev)).is_some() {
                    return Err(CliError::parse(path, "object given twice"));
                }
            }
            let list = list
                .into_iter()
                .enumerate()
                .map(|(a, e)| e.ok_or_else(|| CliError::parse("duality.duals", format!("missing dual of {}", c.objects()[a]))))
                .collect::<Result<Vec<_>>>()?;
            Some(list)
        }
    };
    let fiber = FiberMonoidal { psi, unit: psi_unit };
    let mut mf = MonoidalFiber::derive(w, tensor.clone(), unit, fiber, sym.is_some(), duals).map_err(|e| core_error("monoidal", e))?;
    let obj = |a: usize, b: usize| tensor[a * n + b];
    for (k, e) in m.associator.iter().enumerate() {
        let path = format!("monoidal.associator[{k}]");
        let [a, b, x] = &e.objects;
        let (a, b, x) = (lookup(&idx, a, &path)?, lookup(&idx, b, &path)?, lookup(&idx, x, &path)?);
        let len = c.hom(obj(obj(a, b), x), obj(a, obj(b, x))).len();
        mf.monoidal.associator[(a * n + b) * n + x] = r.vector(&e.element, len, &format!("{path}.element"))?;
    }
    for (k, e) in m.left_unitor.iter().enumerate() {
        let path = format!("monoidal.left_unitor[{k}]");
        let a = lookup(&idx, &e.object, &format!("{path}.object"))?;
        mf.monoidal.left_unitor[a] = r.vector(&e.element, c.hom(obj(unit, a), a).len(), &format!("{path}.element"))?;
    }
    for (k, e) in m.right_unitor.iter().enumerate() {
        let path = format!("monoidal.right_unitor[{k}]");
        let a = lookup(&idx, &e.object, &format!("{path}.object"))?;
        mf.monoidal.right_unitor[a] = r.vector(&e.element, c.hom(obj(a, unit), a).len(), &format!("{path}.element"))?;
    }
    if let (Some(s), Some(SymmetryData { braiding })) = (sym, mf.symmetry.as_mut()) {
        for (k, e) in s.braiding.iter().enumerate() {
            let path = format!("symmetry.braiding[{k}]");
            let [a, b] = &e.objects;
            let (a, b) = (lookup(&idx, a, &path)?, lookup(&idx, b, &path)?);
            braiding[a * n + b] = r.vector(&e.element, c.hom(obj(a, b), obj(b, a)).len(), &format!("{path}.element"))?;
        }
    }
    Ok(mf)
}

fn build_coalgebroid(r: &Reader, dto: &CoalgebroidDto) -> Result<Coalgebroid> {
    let m = dto.ambient;
    let d = r.algebra.rank();
    let carrier = r.presentation(m, &dto.relations, "coalgebroid.relations")?;
    let source = r.actions(&dto.source_action, m, "coalgebroid.source_action")?;
    let target = r.actions(&dto.target_action, m, "coalgebroid.target_action")?;
    let delta = r.matrix(&dto.delta, Some(m), m * m, "coalgebroid.delta")?;
    let counit = r.matrix(&dto.counit, Some(m), d, "coalgebroid.counit")?;
    Coalgebroid::new(&r.algebra, carrier, source, target, delta, counit).map_err(|e| core_error("coalgebroid", e))
}

fn build_bialgebroid(r: &Reader, c: &Arc<Coalgebroid>, dto: &BialgebroidDto) -> Result<BialgebroidModel> {
    let m = c.ambient();
    let d = r.algebra.rank();
    let bialgebroid = Bialgebroid {
        coalgebroid: c.clone(),
        mult: r.matrix(&dto.mult, Some(m * m), m, "bialgebroid.mult")?,
        unit: r.vector(&dto.unit, m, "bialgebroid.unit")?,
        source_map: r.matrix(&dto.source_map, Some(d), m, "bialgebroid.source_map")?,
        target_map: r.matrix(&dto.target_map, Some(d), m, "bialgebroid.target_map")?,
    };
    let antipode = dto.antipode.as_ref().map(|s| r.matrix(s, Some(m), m, "bialgebroid.antipode")).transpose()?;
    Ok(BialgebroidModel { bialgebroid, commutative: dto.commutative, antipode })
}

fn build_comodule(r: &Reader, c: &Arc<Coalgebroid>, dto: &ComoduleDto, path: &str) -> Result<ComoduleModel> {
    let k = dto.ambient;
    let pres = r.presentation(k, &dto.relations, &format!("{path}.relations"))?;
    let module = match &dto.action {
        Some(a) => {
            let action = r.actions(a, k, &format!("{path}.action"))?;
            BModule::new(&r.algebra, pres, action)
        }
        None => BModule::over_base(&r.algebra, pres),
    }
    .map_err(|e| core_error(path, e))?;
    let coaction = r.matrix(&dto.coaction, Some(k), c.ambient() * k, &format!("{path}.coaction"))?;
    let comodule = Comodule::new(c, module, coaction).map_err(|e| core_error(path, e))?;
    let map = dto.map.as_ref().map(|m| r.matrix(m, Some(k), c.ambient(), &format!("{path}.map"))).transpose()?;
    Ok(ComoduleModel { comodule, map })
}

fn build_fl(dto: &FlDto, ring: Option<&Ring>, options: &ParseOptions) -> Result<FlModel> {
    let from_ring = ring.and_then(|r| r.prime_power()).and_then(|(p, n)| Some((u64::try_from(p).ok()?, n)));
    let p = options.p.or(dto.p).or(from_ring.map(|x| x.0)).ok_or_else(|| CliError::parse("fl.p", "missing prime"))?;
    let n = options.n.or(dto.n).or(from_ring.map(|x| x.1)).unwrap_or(1);
    let wring = witt_ring(p, n).map_err(|e| core_error("fl", e))?;
    if let Some(r) = ring {
        if r != &wring {
            return Err(CliError::parse("ring", format!("FL objects live over W_{n} for p = {p}, not {r}")));
        }
    }
    let reader = Reader::new(&wring, &Arc::new(BAlgebra::trivial(&wring)));
    let mut objects = Vec::with_capacity(dto.objects.len());
    for (k, o) in dto.objects.iter().enumerate() {
        let path = format!("fl.objects[{k}]");
        let x = if let Some(t) = o.twist {
            let mut x = FLObject::twist(p, n, t).map_err(|e| core_error(&path, e))?;
            if let Some(name) = &o.name {
                x.name = name.clone();
            }
            x
        } else {
            let need = |v: Option<i64>, f: &str| v.ok_or_else(|| CliError::parse(format!("{path}.{f}"), "missing field"));
            let rank = o.rank.ok_or_else(|| CliError::parse(format!("{path}.rank"), "missing field"))?;
            let (low, high) = (need(o.low, "low")?, need(o.high, "high")?);
            if high < low {
                return Err(CliError::parse(format!("{path}.high"), "below low"));
            }
            let levels = (high - low + 1) as usize;
            let list = |v: &Option<Vec<MatrixDto>>, f: &str| -> Result<Vec<MatrixDto>> {
                let v = v.clone().ok_or_else(|| CliError::parse(format!("{path}.{f}"), "missing field"))?;
                if v.len() != levels {
                    return Err(CliError::parse(format!("{path}.{f}"), format!("expected {levels} levels, found {}", v.len())));
                }
                Ok(v)
            };
            let (fil_dto, ret_dto, phi_dto) = (list(&o.fil, "fil")?, list(&o.retraction, "retraction")?, list(&o.phi, "phi")?);
            let (mut fil, mut ret, mut phi) = (Vec::new(), Vec::new(), Vec::new());
            for i in 0..levels {
                let f = reader.matrix(&fil_dto[i], None, rank, &format!("{path}.fil[{i}]"))?;
                let k = f.rows();
                ret.push(reader.matrix(&ret_dto[i], Some(rank), k, &format!("{path}.retraction[{i}]"))?);
                phi.push(reader.matrix(&phi_dto[i], Some(k), rank, &format!("{path}.phi[{i}]"))?);
                fil.push(f);
            }
            let name = o.name.clone().unwrap_or_else(|| format!("X{k}"));
            FLObject::new(&name, p, n, rank, low, high, fil, ret, phi).map_err(|e| core_error(&path, e))?
        };
        objects.push(x);
    }
    let names: Vec<String> = objects.iter().map(|x| x.name.clone()).collect();
    labels(&names, "fl.objects")?;
    Ok(FlModel { p, n, objects })
}

pub fn build_model(doc: &Document, options: &ParseOptions) -> Result<Model> {
    let declared = doc.ring.as_ref().map(|r| ring_from(r, "ring")).transpose()?;
    let fl = doc.fl.as_ref().map(|f| build_fl(f, declared.as_ref(), options)).transpose()?;
    let ring = match (declared, &fl) {
        (Some(r), _) => r,
        (None, Some(f)) => f.objects.first().map(|x| x.ring()).map_or_else(|| witt_ring(f.p, f.n), Ok).map_err(|e| core_error("fl", e))?,
        (None, None) => return Err(CliError::parse("ring", "missing field")),
    };
    let algebra = match &doc.algebra {
        None => Arc::new(BAlgebra::trivial(&ring)),
        Some(a) => {
            let d = a.unit.len();
            let plain = Reader::new(&ring, &Arc::new(BAlgebra::trivial(&ring)));
            if a.constants.len() != d {
                return Err(CliError::parse("algebraB.constants", format!("expected {d} rows, found {}", a.constants.len())));
            }
            let mut constants = Vec::with_capacity(d);
            for (i, row) in a.constants.iter().enumerate() {
                if row.len() != d {
                    return Err(CliError::parse(format!("algebraB.constants[{i}]"), format!("expected {d} products, found {}", row.len())));
                }
                constants.push(
                    row.iter()
                        .enumerate()
                        .map(|(j, v)| plain.vector(v, d, &format!("algebraB.constants[{i}][{j}]")))
                        .collect::<Result<Vec<_>>>()?,
                );
            }
            let unit = plain.vector(&a.unit, d, "algebraB.unit")?;
            Arc::new(BAlgebra::new(&ring, constants, unit).map_err(|e| core_error("algebraB", e))?)
        }
    };
    let r = Reader::new(&ring, &algebra);
    let category = doc.category.as_ref().map(|c| build_category(&r, c).map(Arc::new)).transpose()?;
    let functor = doc.functor.as_ref().map(|f| build_functor(&r, f, category.as_ref())).transpose()?;
    let category = category.or_else(|| functor.as_ref().map(|w| w.category().clone()));
    let monoidal = match (&doc.monoidal, &functor) {
        (None, _) => {
            if doc.symmetry.is_some() || doc.duality.is_some() {
                return Err(CliError::parse("monoidal", "symmetry and duality need a monoidal section"));
            }
            None
        }
        (Some(_), None) => return Err(CliError::parse("functor", "a monoidal section needs a functor")),
        (Some(m), Some(w)) => {
            if !check_category(w.category()).is_pass() {
                return Err(CliError::parse("category", "monoidal structure needs a valid category"));
            }
            Some(build_monoidal(&r, w, m, doc.symmetry.as_ref(), doc.duality.as_ref())?)
        }
    };
    let coalgebroid = doc.coalgebroid.as_ref().map(|c| build_coalgebroid(&r, c).map(Arc::new)).transpose()?;
    let bialgebroid = match (&doc.bialgebroid, &coalgebroid) {
        (None, _) => None,
        (Some(_), None) => return Err(CliError::parse("bialgebroid", "needs a coalgebroid section")),
        (Some(b), Some(c)) => Some(build_bialgebroid(&r, c, b)?),
    };
    let comodules = match (&doc.comodules, &coalgebroid) {
        (None, _) => Vec::new(),
        (Some(list), Some(c)) => list
            .iter()
            .enumerate()
            .map(|(k, m)| build_comodule(&r, c, m, &format!("comodules[{k}]")))
            .collect::<Result<_>>()?,
        (Some(_), None) => return Err(CliError::parse("comodules", "needs a coalgebroid section")),
    };
    let cokernels = match (&doc.cokernels, &category) {
        (None, _) => Vec::new(),
        (Some(_), None) => return Err(CliError::parse("cokernels", "needs a category")),
        (Some(list), Some(c)) => {
            let idx = labels(c.objects(), "objects")?;
            let mut out = Vec::with_capacity(list.len());
            for (k, d) in list.iter().enumerate() {
                let path = format!("cokernels[{k}]");
                let source = lookup(&idx, &d.source, &format!("{path}.source"))?;
                let target = lookup(&idx, &d.target, &format!("{path}.target"))?;
                let quotient = lookup(&idx, &d.quotient, &format!("{path}.quotient"))?;
                out.push(CokernelDeclaration {
                    source,
                    target,
                    map: r.vector(&d.map, c.hom(source, target).len(), &format!("{path}.map"))?,
                    quotient,
                    projection: r.vector(&d.projection, c.hom(target, quotient).len(), &format!("{path}.projection"))?,
                });
            }
            out
        }
    };
    let (local_ideal, all_elements) = match &doc.recognition {
        None => (None, None),
        Some(rec) => {
            let ideal = rec
                .local_ideal
                .as_ref()
                .map(|l| {
                    l.iter()
                        .enumerate()
                        .map(|(k, v)| r.vector(v, algebra.rank(), &format!("recognition.local_ideal[{k}]")))
                        .collect::<Result<Vec<_>>>()
                })
                .transpose()?;
            (ideal, rec.all_elements)
        }
    };
    let base_change_target = doc.base_change.as_ref().map(|b| ring_from(&b.target, "base_change.target")).transpose()?;
    Ok(Model {
        ring,
        algebra,
        category,
        functor,
        monoidal,
        coalgebroid,
        bialgebroid,
        comodules,
        cokernels,
        local_ideal,
        all_elements,
        base_change_target,
        fl,
    })
}

/// Human name of a ring, e.g. `Z/4`.
pub fn ring_name(r: &Ring) -> String {
    match r.kind() {
        RingKind::Integers => "Z".into(),
        RingKind::Rationals => "Q".into(),
        RingKind::PrimeField { p } => format!("F_{p}"),
        RingKind::IntegersMod { modulus } => format!("Z/{modulus}"),
    }
}
