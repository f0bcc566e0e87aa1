//! Core objects back to documents, in the same schema the parser reads.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use tannaka::category::{LinearCategory, LinearFunctor};
use tannaka::coalgebroid::Coalgebroid;
use tannaka::monoidal::Bialgebroid;
use tannaka::{BAlgebra, BMatrix, Matrix, Ring, RingKind, Scalar};

use crate::dto::*;

fn int(v: &BigInt) -> Num {
    i64::try_from(v).map(Num::Int).unwrap_or_else(|_| Num::Text(v.to_string()))
}

pub fn num(s: &Scalar) -> Num {
    match s {
        Scalar::Int(v) => int(v),
        Scalar::Rat(q) if q.is_integer() => int(q.numer()),
        Scalar::Rat(_) => Num::Text(s.to_string()),
    }
}

pub fn vector(v: &[Scalar]) -> Vec<Num> {
    v.iter().map(num).collect()
}

pub fn matrix(m: &Matrix) -> MatrixDto {
    (0..m.rows()).map(|i| m.row(i).iter().map(|s| Entry::Scalar(num(s))).collect()).collect()
}

pub fn bmatrix(m: &BMatrix) -> MatrixDto {
    let trivial = m.algebra().is_trivial();
    (0..m.rows())
        .map(|i| {
            (0..m.cols())
                .map(|j| {
                    let e = m.get(i, j);
                    if trivial {
                        Entry::Scalar(num(&e[0]))
                    } else {
                        Entry::Element(vector(e))
                    }
                })
                .collect()
        })
        .collect()
}

pub fn ring(r: &Ring) -> RingDto {
    let (kind, p, modulus) = match r.kind() {
        RingKind::Integers => ("Integers", None, None),
        RingKind::Rationals => ("Rationals", None, None),
        RingKind::PrimeField { p } => ("PrimeField", Some(int(p)), None),
        RingKind::IntegersMod { modulus } => ("IntegersMod", None, Some(int(modulus))),
    };
    RingDto { kind: kind.into(), p, modulus }
}

pub fn algebra(b: &BAlgebra) -> Option<AlgebraDto> {
    (!b.is_trivial()).then(|| AlgebraDto {
        constants: b.constants().iter().map(|row| row.iter().map(|v| vector(v)).collect()).collect(),
        unit: vector(b.unit()),
    })
}

pub fn coalgebroid(c: &Coalgebroid) -> CoalgebroidDto {
    CoalgebroidDto {
        ambient: c.ambient(),
        relations: matrix(c.carrier().relations()),
        source_action: c.source_action().iter().map(matrix).collect(),
        target_action: c.target_action().iter().map(matrix).collect(),
        delta: matrix(c.delta()),
        counit: matrix(c.counit()),
    }
}

pub fn bialgebroid(bi: &Bialgebroid, commutative: bool, antipode: Option<&Matrix>) -> BialgebroidDto {
    BialgebroidDto {
        mult: matrix(&bi.mult),
        unit: vector(&bi.unit),
        source_map: matrix(&bi.source_map),
        target_map: matrix(&bi.target_map),
        commutative,
        antipode: antipode.map(matrix),
    }
}

pub fn category(c: &LinearCategory) -> CategoryDto {
    let n = c.len();
    let o = c.objects();
    let mut homs = Vec::new();
    let mut compositions = Vec::new();
    for a in 0..n {
        for b in 0..n {
            let h = c.hom(a, b);
            if !h.is_empty() {
                homs.push(HomDto {
                    source: o[a].clone(),
                    target: o[b].clone(),
                    generators: h.names.clone(),
                    relations: matrix(h.presentation.relations()),
                });
            }
            for d in 0..n {
                let t = c.composition(a, b, d);
                if t.rows() > 0 && !t.is_zero() {
                    compositions.push(CompositionDto { objects: [o[a].clone(), o[b].clone(), o[d].clone()], table: matrix(t) });
                }
            }
        }
    }
    let identities: BTreeMap<String, Vec<Num>> = (0..n).map(|a| (o[a].clone(), vector(c.identity(a)))).collect();
    CategoryDto { objects: o.to_vec(), homs, identities, compositions }
}

pub fn functor(w: &LinearFunctor) -> FunctorDto {
    let c = w.category();
    let n = c.len();
    let o = c.objects();
    let mut images = Vec::new();
    for a in 0..n {
        for b in 0..n {
            for (i, name) in c.hom(a, b).names.iter().enumerate() {
                images.push(ImageDto {
                    source: o[a].clone(),
                    target: o[b].clone(),
                    generator: name.clone(),
                    matrix: bmatrix(w.generator_image(a, b, i)),
                });
            }
        }
    }
    FunctorDto { objects: None, ranks: w.ranks().to_vec(), images }
}

/// A document holding a coalgebroid and, optionally, bialgebroid structure.
pub fn coalgebroid_document(c: &Coalgebroid, bi: Option<BialgebroidDto>) -> Document {
    Document {
        ring: Some(ring(c.ring())),
        algebra: algebra(c.algebra()),
        coalgebroid: Some(coalgebroid(c)),
        bialgebroid: bi,
        ..Document::default()
    }
}

/// A document holding a category and a functor out of it.
pub fn functor_document(w: &LinearFunctor) -> Document {
    Document {
        ring: Some(ring(w.ring())),
        algebra: algebra(w.algebra()),
        category: Some(category(w.category())),
        functor: Some(functor(w)),
        ..Document::default()
    }
}
