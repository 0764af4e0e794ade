//! Finitely presented groups, their representations over the algebras
//! `B_s`, relation residuals, group cohomology, singularity invariants and
//! the regeneration solvers.

mod cocycle;
mod invariants;
mod regen;

pub use cocycle::{
    coboundary, coboundary_space, cocycle_extend, cocycle_residual, cocycle_space, h1_dimension,
    Cocycle, CocycleSpace, H1Report,
};
pub use invariants::{
    boost_angle, lifted_rotation_angle, model_cone_generators, pointwise_fixed_line,
    rotation_angle, tachyon_mass, ModelGeometry, RotAngle,
};
pub use regen::{
    combine_idempotent, gauss_newton, hp_from_cocycle, infinitesimal_cone_angle, regenerate_ads,
    regenerate_hyp, rescaled_limit_check, LimitCheck, MeridianConstraint, NewtonCfg,
};

use crate::algebra::AlgebraTag;
use crate::error::{Error, Result};
use crate::geom::{Dim, GroupElem};
use crate::linalg::Mat2;
use alloc::string::String;
use alloc::vec::Vec;

/// A word in the generators: 1-based indices, negative for inverses.
pub type Word = Vec<i32>;

/// Word from a slice literal.
pub fn word(letters: &[i32]) -> Word {
    letters.to_vec()
}

/// A finite presentation: ordered generator names plus relator words.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub generators: Vec<String>,
    pub relators: Vec<Word>,
}

impl Presentation {
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::Precondition("presentation needs at least one generator"));
        }
        let p = Presentation { generators, relators };
        for r in &p.relators {
            p.validate_word(r)?;
        }
        Ok(p)
    }

    pub fn free(generators: &[&str]) -> Self {
        Presentation {
            generators: generators.iter().map(|s| String::from(*s)).collect(),
            relators: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn validate_word(&self, w: &Word) -> Result<()> {
        let n = self.generators.len() as i32;
        for &letter in w {
            if letter == 0 || letter.abs() > n {
                return Err(Error::WordIndexOutOfRange {
                    index: letter,
                    generators: self.generators.len(),
                });
            }
        }
        Ok(())
    }
}

/// A representation into `PSL(2, R)`, used as the real part `rho_0` of
/// half-pipe holonomies and as the base point for cocycle computations.
/// Images are 2x2 real matrices with `det = ±1`.
#[derive(Clone, Debug)]
pub struct RealRep {
    pub presentation: Presentation,
    pub images: Vec<Mat2>,
}

impl RealRep {
    pub fn new(presentation: Presentation, images: Vec<Mat2>) -> Result<Self> {
        if images.len() != presentation.rank() {
            return Err(Error::Precondition("one image per generator required"));
        }
        Ok(RealRep { presentation, images })
    }

    pub fn evaluate_word(&self, w: &Word) -> Result<Mat2> {
        self.presentation.validate_word(w)?;
        let mut acc = Mat2::identity();
        for &letter in w {
            let g = self.images[(letter.abs() - 1) as usize];
            let f = if letter > 0 {
                g
            } else {
                g.inv().ok_or(Error::NotInvertible)?
            };
            acc = acc * f;
        }
        Ok(acc)
    }

    /// Max over relators of the distance to the identity in `PSL(2,R)`
    /// (up to the sign of the lift).
    pub fn relation_residual(&self) -> f64 {
        let id = Mat2::identity();
        self.presentation
            .relators
            .iter()
            .map(|r| {
                let m = self.evaluate_word(r).expect("validated relator");
                (m - id).max_abs().min((m + id).max_abs())
            })
            .fold(0.0, f64::max)
    }
}

/// A representation with generator images in `PGL^+(2, B_s)` over a fixed
/// algebra tag. `dim` records whether the projective picture lives in
/// dimension 2 or 3 (dimension-2 scenarios embed as the `x3 = 0` slice).
#[derive(Clone, Debug)]
pub struct Representation {
    pub presentation: Presentation,
    pub tag: AlgebraTag,
    pub dim: Dim,
    pub images: Vec<GroupElem>,
}

impl Representation {
    pub fn new(
        presentation: Presentation,
        tag: AlgebraTag,
        dim: Dim,
        images: Vec<GroupElem>,
    ) -> Result<Self> {
        if images.len() != presentation.rank() {
            return Err(Error::Precondition("one image per generator required"));
        }
        for g in &images {
            if g.tag().s() != tag.s() {
                return Err(Error::TagMismatch { left: tag.s(), right: g.tag().s() });
            }
        }
        Ok(Representation { presentation, tag, dim, images })
    }

    /// Re-tags a real representation over any algebra (zero imaginary
    /// parts).
    pub fn from_real(rep: &RealRep, tag: AlgebraTag, dim: Dim) -> Result<Self> {
        let images = rep
            .images
            .iter()
            .map(|m| GroupElem::from_real(*m, tag))
            .collect::<Result<Vec<_>>>()?;
        Representation::new(rep.presentation.clone(), tag, dim, images)
    }

    /// Product of generator images and inverses in word order; the empty
    /// word gives the identity.
    pub fn evaluate_word(&self, w: &Word) -> Result<GroupElem> {
        self.presentation.validate_word(w)?;
        let mut acc = GroupElem::identity(self.tag);
        for &letter in w {
            let g = &self.images[(letter.abs() - 1) as usize];
            let f = if letter > 0 { *g } else { g.inverse() };
            acc = acc * f;
        }
        Ok(acc)
    }

    /// Max over relators of the group distance of the relator image to the
    /// identity; zero when there are no relators.
    pub fn relation_residual(&self) -> f64 {
        let id = GroupElem::identity(self.tag);
        self.presentation
            .relators
            .iter()
            .map(|r| self.evaluate_word(r).expect("validated relator").dist(&id))
            .fold(0.0, f64::max)
    }

    /// Entrywise rescaling `B_{sign s} -> B_s` of every image.
    pub fn rescale_to(&self, s: f64) -> Result<Self> {
        let images = self
            .images
            .iter()
            .map(|g| g.rescale_to(s))
            .collect::<Result<Vec<_>>>()?;
        Representation::new(self.presentation.clone(), AlgebraTag::new(s), self.dim, images)
    }
}

/// Which side of the transition a parameter value belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StructureKind {
    Hyperbolic,
    HalfPipe,
    AntiDeSitter,
}

/// The singularity invariant carried by one row of a transition report.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SingularInvariant {
    ConeAngle(f64),
    TachyonMass(f64),
    InfConeAngle(f64),
}

impl SingularInvariant {
    pub fn kind_name(&self) -> &'static str {
        match self {
            SingularInvariant::ConeAngle(_) => "cone_angle",
            SingularInvariant::TachyonMass(_) => "tachyon_mass",
            SingularInvariant::InfConeAngle(_) => "inf_cone_angle",
        }
    }

    pub fn value(&self) -> f64 {
        match self {
            SingularInvariant::ConeAngle(v)
            | SingularInvariant::TachyonMass(v)
            | SingularInvariant::InfConeAngle(v) => *v,
        }
    }
}

/// One sampled point of a transition path.
#[derive(Clone, Debug)]
pub struct TransitionRow {
    pub t: f64,
    pub s: f64,
    pub kind: StructureKind,
    pub residual: f64,
    pub invariant: SingularInvariant,
    pub rep: Representation,
}

/// A transition path at the representation level: one row per grid value
/// of `t`, classified by the sign of `t`.
#[derive(Clone, Debug)]
pub struct TransitionReport {
    pub rows: Vec<TransitionRow>,
}

impl TransitionReport {
    /// Classification must match the sign of `t` and the algebra tag.
    pub fn classification_consistent(&self) -> bool {
        self.rows.iter().all(|r| {
            let by_t = if r.t > 0.0 {
                StructureKind::Hyperbolic
            } else if r.t < 0.0 {
                StructureKind::AntiDeSitter
            } else {
                StructureKind::HalfPipe
            };
            let tag_ok = match r.kind {
                StructureKind::Hyperbolic => r.rep.tag.s() > 0.0,
                StructureKind::AntiDeSitter => r.rep.tag.s() < 0.0,
                StructureKind::HalfPipe => r.rep.tag.is_half_pipe(),
            };
            r.kind == by_t && tag_ok
        })
    }
}
