//! The on-disk model document. Every section but the ring is optional.
//!
//! Scalars are JSON integers, or strings holding an integer or `a/b`.
//! Matrices are arrays of rows. Over a nontrivial `B` an entry may be an
//! array of coordinates in the basis of `B`; a bare scalar `s` means `s·1`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Num {
    Int(i64),
    Text(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Scalar(Num),
    Element(Vec<Num>),
}

pub type MatrixDto = Vec<Vec<Entry>>;

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Document {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ring: Option<RingDto>,
    #[serde(rename = "algebraB", default, skip_serializing_if = "Option::is_none")]
    pub algebra: Option<AlgebraDto>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub category: Option<CategoryDto>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub functor: Option<FunctorDto>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub monoidal: Option<MonoidalDto>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub symmetry: Option<SymmetryDto>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub duality: Option<DualityDto>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coalgebroid: Option<CoalgebroidDto>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bialgebroid: Option<BialgebroidDto>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub comodules: Option<Vec<ComoduleDto>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cokernels: Option<Vec<CokernelDto>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub recognition: Option<RecognitionDto>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base_change: Option<BaseChangeDto>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fl: Option<FlDto>,
}

/// `{"kind": "Integers" | "Rationals" | "PrimeField" | "IntegersMod", ...}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingDto {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<Num>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<Num>,
}

/// `constants[i][j]` holds the coordinates of `b_i b_j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDto {
    pub constants: Vec<Vec<Vec<Num>>>,
    pub unit: Vec<Num>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CategoryDto {
    pub objects: Vec<String>,
    /// Pairs left out have the zero hom module.
    #[serde(default)]
    pub homs: Vec<HomDto>,
    pub identities: BTreeMap<String, Vec<Num>>,
    /// Triples left out compose to zero.
    #[serde(default)]
    pub compositions: Vec<CompositionDto>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HomDto {
    pub source: String,
    pub target: String,
    pub generators: Vec<String>,
    #[serde(default)]
    pub relations: MatrixDto,
}

/// Row `i * |Hom(b,c)| + j` is the composite of generator `i` of
/// `Hom(a,b)` followed by generator `j` of `Hom(b,c)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CompositionDto {
    pub objects: [String; 3],
    pub table: MatrixDto,
}

/// With a `category` section, `images` must cover every generator. Without
/// one, `objects` is required and the images generate a category of
/// matrices; identities are added automatically.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctorDto {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub objects: Option<Vec<String>>,
    pub ranks: Vec<usize>,
    #[serde(default)]
    pub images: Vec<ImageDto>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ImageDto {
    pub source: String,
    pub target: String,
    pub generator: String,
    pub matrix: MatrixDto,
}

/// Structure morphisms are read off `psi` through the functor. Entries in
/// `associator`, `left_unitor` and `right_unitor` replace derived ones.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonoidalDto {
    /// `[a, b, a⊗b]` for every ordered pair.
    pub tensor: Vec<[String; 3]>,
    pub unit: String,
    pub psi: Vec<PsiDto>,
    pub psi_unit: MatrixDto,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub associator: Vec<TripleElementDto>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub left_unitor: Vec<ObjectElementDto>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub right_unitor: Vec<ObjectElementDto>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PsiDto {
    pub left: String,
    pub right: String,
    pub matrix: MatrixDto,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TripleElementDto {
    pub objects: [String; 3],
    pub element: Vec<Num>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairElementDto {
    pub objects: [String; 2],
    pub element: Vec<Num>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObjectElementDto {
    pub object: String,
    pub element: Vec<Num>,
}

/// Present means symmetric; braidings default to the transported swap.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SymmetryDto {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub braiding: Vec<PairElementDto>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DualityDto {
    pub duals: Vec<DualDto>,
}

/// Evaluation `w(dual ⊗ object) → w(I)` and coevaluation
/// `w(I) → w(object ⊗ dual)` as matrices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DualDto {
    pub object: String,
    pub dual: String,
    pub evaluation: MatrixDto,
    pub coevaluation: MatrixDto,
}

/// A coalgebroid on `R^ambient / relations`. Actions are one matrix per
/// basis element of `B`; `delta` lands in `R^(ambient²)`, index `i*ambient+j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoalgebroidDto {
    pub ambient: usize,
    #[serde(default)]
    pub relations: MatrixDto,
    pub source_action: Vec<MatrixDto>,
    pub target_action: Vec<MatrixDto>,
    pub delta: MatrixDto,
    pub counit: MatrixDto,
}

/// Extra structure on the `coalgebroid` section.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BialgebroidDto {
    pub mult: MatrixDto,
    pub unit: Vec<Num>,
    pub source_map: MatrixDto,
    pub target_map: MatrixDto,
    #[serde(default)]
    pub commutative: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub antipode: Option<MatrixDto>,
}

/// A comodule over the `coalgebroid` section, optionally with a comodule
/// map into the coalgebroid for `counit`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComoduleDto {
    pub ambient: usize,
    #[serde(default)]
    pub relations: MatrixDto,
    /// Defaults to the action through `R → B` when `B` is the base ring.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub action: Option<Vec<MatrixDto>>,
    pub coaction: MatrixDto,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub map: Option<MatrixDto>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CokernelDto {
    pub source: String,
    pub target: String,
    pub map: Vec<Num>,
    pub quotient: String,
    pub projection: Vec<Num>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RecognitionDto {
    /// Generators of the maximal ideal of a local `B`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub local_ideal: Option<Vec<Vec<Num>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub all_elements: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BaseChangeDto {
    pub target: RingDto,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FlDto {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<u32>,
    pub objects: Vec<FlObjectDto>,
}

/// Either `{"twist": k}` or the full filtration data, one matrix per level
/// from `low` to `high`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FlObjectDto {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub twist: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub low: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub high: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fil: Option<Vec<MatrixDto>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub retraction: Option<Vec<MatrixDto>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi: Option<Vec<MatrixDto>>,
}
