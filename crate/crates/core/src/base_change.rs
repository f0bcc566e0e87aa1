//! Ring homomorphisms between supported base rings and extension of scalars
//! along them.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::algebra::{BAlgebra, BMatrix};
use crate::category::{LinearCategory, LinearFunctor};
use crate::coalgebroid::Coalgebroid;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::modules::{BModule, Presentation};
use crate::ring::{Ring, RingKind, Scalar};

/// The canonical map between two base rings, when there is one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingMap {
    source: Ring,
    target: Ring,
}

fn describe(r: &Ring) -> String {
    match r.kind() {
        RingKind::Integers => "Z".into(),
        RingKind::Rationals => "Q".into(),
        RingKind::PrimeField { p } => format!("F_{p}"),
        RingKind::IntegersMod { modulus } => format!("Z/{modulus}"),
    }
}

impl RingMap {
    /// Supported: identity, `Z → Q`, `Z → Z/N`, `Z → F_p` and `Z/N → Z/M`
    /// (either side possibly a prime field) when `M | N`.
    pub fn new(source: &Ring, target: &Ring) -> Result<Self> {
        let ok = source == target
            || match (source.kind(), target.modulus()) {
                (RingKind::Integers, _) => true,
                (RingKind::Rationals, _) => false,
                (_, None) => false,
                (_, Some(m)) => {
                    let n = source.modulus().expect("finite ring");
                    (n % m).is_zero()
                }
            };
        if ok {
            Ok(RingMap { source: source.clone(), target: target.clone() })
        } else {
            Err(Error::Unsupported(format!("no ring map {} → {}", describe(source), describe(target))))
        }
    }

    pub fn source(&self) -> &Ring {
        &self.source
    }

    pub fn target(&self) -> &Ring {
        &self.target
    }

    pub fn scalar(&self, s: &Scalar) -> Scalar {
        match s {
            Scalar::Int(v) => self.target.from_bigint(v.clone()),
            Scalar::Rat(q) => {
                // only the identity on Q reaches here
                debug_assert_eq!(self.source, self.target);
                Scalar::Rat(q.clone())
            }
        }
    }

    pub fn matrix(&self, m: &Matrix) -> Matrix {
        m.map_entries(&self.target, |s| self.scalar(s))
    }

    pub fn vector(&self, v: &[Scalar]) -> Vec<Scalar> {
        v.iter().map(|s| self.scalar(s)).collect()
    }

    pub fn algebra(&self, b: &BAlgebra) -> Result<BAlgebra> {
        let constants = b
            .constants()
            .iter()
            .map(|plane| plane.iter().map(|v| self.vector(v)).collect())
            .collect();
        BAlgebra::new(&self.target, constants, self.vector(b.unit()))
    }

    pub fn presentation(&self, p: &Presentation) -> Presentation {
        Presentation::new(&self.target, p.ambient(), self.matrix(p.relations())).expect("shapes preserved")
    }

    /// `M ⊗_R R'` over the base-changed algebra.
    pub fn module(&self, algebra: &Arc<BAlgebra>, m: &BModule) -> Result<BModule> {
        let pres = self.presentation(m.presentation());
        let action = m.action().iter().map(|a| self.matrix(a)).collect();
        let out = BModule::new(algebra, pres, action)?;
        match m.basis() {
            Some(b) => out.with_basis(self.matrix(b)),
            None => Ok(out),
        }
    }

    pub fn category(&self, c: &LinearCategory) -> Result<LinearCategory> {
        let n = c.len();
        let mut out = LinearCategory::new(&self.target, c.objects().to_vec());
        for a in 0..n {
            for b in 0..n {
                let hom = c.hom(a, b);
                out.set_hom(a, b, hom.names.clone(), self.matrix(hom.presentation.relations()))?;
            }
        }
        for a in 0..n {
            out.set_identity(a, self.vector(c.identity(a)))?;
            for b in 0..n {
                for x in 0..n {
                    out.set_composition(a, b, x, self.matrix(c.composition(a, b, x)))?;
                }
            }
        }
        Ok(out)
    }

    pub fn functor(&self, w: &LinearFunctor) -> Result<LinearFunctor> {
        let c = w.category();
        let n = c.len();
        let category = Arc::new(self.category(c)?);
        let algebra = Arc::new(self.algebra(w.algebra())?);
        let mut images = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                let imgs = (0..c.hom(a, b).len())
                    .map(|i| {
                        let m = w.generator_image(a, b, i);
                        let entries = (0..m.rows())
                            .flat_map(|r| (0..m.cols()).map(move |s| (r, s)))
                            .map(|(r, s)| self.vector(m.get(r, s)))
                            .collect();
                        BMatrix::new(&algebra, m.rows(), m.cols(), entries)
                    })
                    .collect::<Result<Vec<_>>>()?;
                images.push(imgs);
            }
        }
        LinearFunctor::new(&category, &algebra, w.ranks().to_vec(), images)
    }

    pub fn coalgebroid(&self, c: &Coalgebroid) -> Result<Coalgebroid> {
        let algebra = Arc::new(self.algebra(c.algebra())?);
        let map_all = |v: &[Matrix]| v.iter().map(|m| self.matrix(m)).collect::<Vec<_>>();
        Coalgebroid::new(
            &algebra,
            self.presentation(c.carrier()),
            map_all(c.source_action()),
            map_all(c.target_action()),
            self.matrix(c.delta()),
            self.matrix(c.counit()),
        )
    }

    /// Reduction of an integer; exposed for callers building oracles.
    pub fn reduce(&self, v: &BigInt) -> Scalar {
        match self.target.modulus() {
            Some(m) => Scalar::Int(v.mod_floor(m)),
            None => self.target.from_bigint(v.clone()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn supported_maps() {
        let z = Ring::integers();
        let q = Ring::rationals();
        let z4 = Ring::integers_mod(4).unwrap();
        let f2 = Ring::prime_field(2).unwrap();
        let z6 = Ring::integers_mod(6).unwrap();
        assert!(RingMap::new(&z, &q).is_ok());
        assert!(RingMap::new(&z4, &f2).is_ok());
        assert!(RingMap::new(&z6, &Ring::prime_field(3).unwrap()).is_ok());
        assert!(RingMap::new(&z4, &z6).is_err());
        assert!(RingMap::new(&q, &z).is_err());
        assert!(RingMap::new(&z4, &z).is_err());
    }

    #[test]
    fn torsion_relation_vanishes_mod_two() {
        let z4 = Ring::integers_mod(4).unwrap();
        let z2 = Ring::integers_mod(2).unwrap();
        let p = Presentation::new(&z4, 1, Matrix::from_i64(&z4, &[&[2]])).unwrap();
        let q = RingMap::new(&z4, &z2).unwrap().presentation(&p);
        assert_eq!(q.relations().rows(), 0);
        assert!(q.structure().is_free());
        assert_eq!(q.structure().free_rank, 1);
    }
}
