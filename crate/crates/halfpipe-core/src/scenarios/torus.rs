//! The singular torus: a family of hyperbolic cone tori collapsing onto a
//! circle, its AdS counterpart, and the common half-pipe limit.
//!
//! The structures are two-dimensional; they are embedded in the
//! three-dimensional algebra picture through the `x3 = 0` slice, so that
//! the classical 3x3 matrices appear as the `(x1, x2, x4)` submatrix of
//! the projective image. In that picture with `p = 1 + sqrt(2)`:
//!
//! - `rho_t(a) = diag(p, 1/p)` (a hyperbolic translation, independent of
//!   `t`),
//! - `rho_t(b) = cosh(d/2) + sinh(d/2) [[0,-i],[i,0]]` with
//!   `sinh(d) = t`, which realizes `[[sqrt(1+t^2),0,t],[0,1,0],[t,0,
//!   sqrt(1+t^2)]]`,
//! - AdS side: `sigma_t(b) = cos(h/2) + sin(h/2) [[0,-tau],[tau,0]]` with
//!   `sin(h) = t`, realizing `[[sqrt(1-t^2),0,-t],[0,1,0],[t,0,
//!   sqrt(1-t^2)]]` for `t < 0`.
//!
//! The commutator is elliptic of angle `2 pi - 2t + O(t^2)` on the
//! hyperbolic side and a boost of hyperbolic angle `-2t + O(t^2)` on the
//! AdS side; both rescaled families share the half-pipe representation
//! with `z(b)` the unit infinitesimal rotation at the origin.

use crate::algebra::{AlgebraTag, BElem};
use crate::error::Result;
use crate::geom::{Dim, GroupElem, ProjMat};
use crate::linalg::Mat2;
use crate::math;
use crate::reps::{
    boost_angle, rescaled_limit_check, rotation_angle, word, Cocycle, LimitCheck, Presentation,
    RealRep, Representation, SingularInvariant, StructureKind, TransitionReport, TransitionRow,
    Word,
};
use alloc::vec;
use alloc::vec::Vec;

/// 3x3 submatrix in the `(x1, x2, x4)` coordinates of the dimension-2
/// slice.
pub fn dim2_submatrix(m: &ProjMat) -> ProjMat {
    let idx = [0usize, 1, 3];
    let mut out = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = m.m[idx[i]][idx[j]];
        }
    }
    ProjMat::from_3x3(out)
}

fn translation_a(tag: AlgebraTag) -> GroupElem {
    let p = 1.0 + math::sqrt(2.0);
    GroupElem::from_real(Mat2::new(p, 0.0, 0.0, 1.0 / p), tag).expect("det 1")
}

/// Hyperbolic-side generator pair at parameter `t > 0`.
pub fn torus_hyp_rep(t: f64) -> Result<Representation> {
    let tag = AlgebraTag::hyperbolic();
    let d = math::asinh(t);
    let (c, s) = (math::cosh(d / 2.0), math::sinh(d / 2.0));
    let b = GroupElem::new([
        [BElem::real(c, tag), BElem::new(0.0, -s, tag)],
        [BElem::new(0.0, s, tag), BElem::real(c, tag)],
    ])?;
    Representation::new(
        Presentation::free(&["a", "b"]),
        tag,
        Dim::Two,
        vec![translation_a(tag), b],
    )
}

/// AdS-side generator pair at parameter `t < 0`.
pub fn torus_ads_rep(t: f64) -> Result<Representation> {
    let tag = AlgebraTag::anti_de_sitter();
    let h = math::asin(t);
    let (c, s) = (math::cos(h / 2.0), math::sin(h / 2.0));
    let b = GroupElem::new([
        [BElem::real(c, tag), BElem::new(0.0, -s, tag)],
        [BElem::new(0.0, s, tag), BElem::real(c, tag)],
    ])?;
    Representation::new(
        Presentation::free(&["a", "b"]),
        tag,
        Dim::Two,
        vec![translation_a(tag), b],
    )
}

/// The collapsed real representation and the deformation cocycle of the
/// half-pipe limit: `rho_0(a)` the translation, `rho_0(b) = 1`, `z(a) = 0`
/// and `z(b)` the unit infinitesimal rotation at the origin.
pub fn torus_base() -> (RealRep, Cocycle) {
    let p = 1.0 + math::sqrt(2.0);
    let base = RealRep::new(
        Presentation::free(&["a", "b"]),
        vec![Mat2::new(p, 0.0, 0.0, 1.0 / p), Mat2::identity()],
    )
    .expect("two images");
    let z = Cocycle::new(vec![Mat2::zero(), Mat2::new(0.0, -0.5, 0.5, 0.0)]).expect("traceless");
    (base, z)
}

/// The half-pipe limit representation.
pub fn torus_hp_rep() -> Representation {
    let (base, z) = torus_base();
    crate::reps::hp_from_cocycle(&base, &z, Dim::Two).expect("torus cocycle")
}

/// The meridian of the singular point: the commutator `[a, b]`.
pub fn torus_meridian() -> Word {
    word(&[1, 2, -1, -2])
}

/// Everything the torus scenario produces: the sampled transition path,
/// the limit checks of both sides against the common half-pipe
/// representation, and the finite-difference cone-angle slope at small t.
#[derive(Clone, Debug)]
pub struct TorusScenario {
    pub report: TransitionReport,
    pub hyp_limit: LimitCheck,
    pub ads_limit: LimitCheck,
    /// `(theta(t) - 2 pi) / t` at `t = 1e-4`; the model value is `-2`.
    pub angle_slope: f64,
    /// Max-abs error of the rescaled hyperbolic generator against its
    /// printed closed form, over the sampled grid.
    pub printed_matrix_error: f64,
}

/// Signed cone angle of the commutator on the hyperbolic side: the total
/// rotational part `2 pi` plus the small signed rotation of the holonomy.
fn commutator_cone_angle(rep: &Representation) -> Result<f64> {
    let c = rep.evaluate_word(&torus_meridian())?;
    let m = dim2_submatrix(&c.to_projective4());
    let r = rotation_angle(&m, 1.0)?;
    Ok(2.0 * core::f64::consts::PI + r.angle)
}

fn commutator_boost_angle(rep: &Representation) -> Result<f64> {
    let c = rep.evaluate_word(&torus_meridian())?;
    let m = dim2_submatrix(&c.to_projective4());
    boost_angle(&m, -1.0)
}

/// Runs the full scenario over a grid of `t` values straddling zero.
pub fn torus_scenario(t_grid: &[f64]) -> Result<TorusScenario> {
    let rho_hp = torus_hp_rep();
    let mut rows = Vec::new();
    for &t in t_grid {
        let row = if t > 0.0 {
            let rep = torus_hyp_rep(t)?;
            TransitionRow {
                t,
                s: t,
                kind: StructureKind::Hyperbolic,
                residual: rep.relation_residual(),
                invariant: SingularInvariant::ConeAngle(commutator_cone_angle(&rep)?),
                rep,
            }
        } else if t < 0.0 {
            let rep = torus_ads_rep(t)?;
            TransitionRow {
                t,
                s: t,
                kind: StructureKind::AntiDeSitter,
                residual: rep.relation_residual(),
                invariant: SingularInvariant::TachyonMass(commutator_boost_angle(&rep)?),
                rep,
            }
        } else {
            let rep = rho_hp.clone();
            // The half-pipe commutator is an infinitesimal rotation whose
            // first-order angle matches the one-sided rates (-2).
            TransitionRow {
                t,
                s: 0.0,
                kind: StructureKind::HalfPipe,
                residual: rep.relation_residual(),
                invariant: SingularInvariant::InfConeAngle(-2.0),
                rep,
            }
        };
        rows.push(row);
    }
    let report = TransitionReport { rows };

    // Printed-matrix check: the rescaled hyperbolic generator equals
    // [[sqrt(1+t^2),0,t^2],[0,1,0],[1,0,sqrt(1+t^2)]] in the slice.
    let mut printed_err = 0.0f64;
    for &t in t_grid.iter().filter(|&&t| t > 0.0) {
        let rep = torus_hyp_rep(t)?;
        let resc = rep.images[1].rescale_to(t)?;
        let got = dim2_submatrix(&resc.to_projective4());
        let c = math::sqrt(1.0 + t * t);
        let expect = ProjMat::from_3x3([[c, 0.0, t * t], [0.0, 1.0, 0.0], [1.0, 0.0, c]]);
        printed_err = printed_err.max(got.dist_up_to_sign(&expect));
        // The constant generator is untouched by the rescaling.
        let resc_a = rep.images[0].rescale_to(t)?;
        let got_a = dim2_submatrix(&resc_a.to_projective4());
        let p2 = (1.0 + math::sqrt(2.0)) * (1.0 + math::sqrt(2.0));
        let expect_a = ProjMat::from_3x3([
            [(p2 + 1.0 / p2) / 2.0, (p2 - 1.0 / p2) / 2.0, 0.0],
            [(p2 - 1.0 / p2) / 2.0, (p2 + 1.0 / p2) / 2.0, 0.0],
            [0.0, 0.0, 1.0],
        ]);
        printed_err = printed_err.max(got_a.dist_up_to_sign(&expect_a));
    }

    // First-order compatibility of both families with the common limit.
    let hyp_path: Vec<(f64, Representation)> = [1e-2, 1e-3, 1e-4]
        .iter()
        .map(|&t| Ok((t, torus_hyp_rep(t)?)))
        .collect::<Result<_>>()?;
    let ads_path: Vec<(f64, Representation)> = [-1e-2, -1e-3, -1e-4]
        .iter()
        .map(|&t| Ok((t, torus_ads_rep(t)?)))
        .collect::<Result<_>>()?;
    let hyp_limit = rescaled_limit_check(&hyp_path, &rho_hp)?;
    let ads_limit = rescaled_limit_check(&ads_path, &rho_hp)?;

    // Cone-angle slope at t = 1e-4.
    let t = 1e-4;
    let theta = commutator_cone_angle(&torus_hyp_rep(t)?)?;
    let angle_slope = (theta - 2.0 * core::f64::consts::PI) / t;

    Ok(TorusScenario { report, hyp_limit, ads_limit, angle_slope, printed_matrix_error: printed_err })
}
