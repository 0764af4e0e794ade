//! The Borromean-rings representation variety and its flexibility
//! phenomenon.
//!
//! The group is `<a, b, c | [[a,b],c] = [[c,b^-1],a] = 1>`. The
//! representations with `rho[a,b]` parabolic form two two-dimensional
//! components: the product component with `rho(c) = 1`, and a second
//! component with `rho(c)` a nontrivial parabolic offset
//! `x = (1/2) sech(l_a/2) sech(l_b/2) cot(phi)`. They meet exactly along
//! the rectangular locus `cot(phi) = 0`. A half-pipe structure built from
//! a mixed tangent direction `v + eps u` (one summand from each
//! component) regenerates to AdS structures through the idempotent
//! formula, but fails first-order compatibility with every hyperbolic
//! candidate path as soon as `eps` is on: the indicator reported here is
//! the terminal incompatibility after Newton projection over a grid of
//! real directions.

use crate::error::{Error, Result};
use crate::geom::Dim;
use crate::linalg::{exp_sl2, exp_sl2_cplx, lstsq_damped, DMat, Mat2};
use crate::math;
use crate::reps::{
    combine_idempotent, gauss_newton, hp_from_cocycle, rescaled_limit_check,
    word, Cocycle, LimitCheck, NewtonCfg, Presentation, RealRep, Representation, Word,
};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

const PI: f64 = core::f64::consts::PI;

/// Which solution branch of the parabolic-offset equation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BorromeanBranch {
    /// `rho(c) = 1`: the product (Teichmueller-like) component.
    T,
    /// The nontrivial offset: the component that regenerates.
    R,
}

/// A point of the parabolic representation variety.
#[derive(Clone, Debug)]
pub struct BorromeanRep {
    pub l_a: f64,
    pub l_b: f64,
    /// Angle between the axes of `rho(a)` and `rho(b)`.
    pub phi_angle: f64,
    pub branch: BorromeanBranch,
    /// Parabolic offset of `rho(c)` relative to `rho[a,b]`.
    pub x: f64,
    pub rep: RealRep,
}

pub fn borromean_presentation() -> Presentation {
    Presentation::new(
        vec![String::from("a"), String::from("b"), String::from("c")],
        vec![
            // [[a,b],c]
            word(&[1, 2, -1, -2, 3, 2, 1, -2, -1, -3]),
            // [[c,b^-1],a]
            word(&[3, -2, -3, 2, 1, -2, 3, 2, -3, -1]),
        ],
    )
    .expect("valid words")
}

fn rotation(theta: f64) -> Mat2 {
    exp_sl2(Mat2::new(0.0, -theta / 2.0, theta / 2.0, 0.0))
}

/// Builds the pair `rho(a), rho(b)` with prescribed translation lengths
/// and axis angle, normalized so that `rho[a,b]` is exactly
/// `[[-1, 1], [0, -1]]`, then solves for the parabolic offset of
/// `rho(c)`.
pub fn borromean_rep_angle(l_a: f64, l_b: f64, phi: f64, branch: BorromeanBranch) -> Result<BorromeanRep> {
    if l_a <= 0.0 || l_b <= 0.0 || phi <= 0.0 || phi >= PI {
        return Err(Error::Precondition("need positive lengths and phi in (0, pi)"));
    }
    let sa = math::sinh(l_a / 2.0);
    let sb = math::sinh(l_b / 2.0);
    let par_defect = sa * sb * math::sin(phi) - 1.0;
    if math::abs(par_defect) > 1e-12 {
        return Err(Error::Precondition("lengths and angle violate the parabolicity locus"));
    }
    let mut rho_a = Mat2::new(math::exp(l_a / 2.0), 0.0, 0.0, math::exp(-l_a / 2.0));
    let u = rotation(phi);
    let mut rho_b = u * Mat2::new(math::exp(l_b / 2.0), 0.0, 0.0, math::exp(-l_b / 2.0))
        * u.inv().expect("rotation");

    // Normalize the frame: send the commutator to [[-1, 1], [0, -1]].
    let k = rho_a * rho_b * rho_a.inv().unwrap() * rho_b.inv().unwrap();
    if math::abs(k.tr() + 2.0) > 1e-9 {
        return Err(Error::Precondition("commutator is not parabolic"));
    }
    // Fixed direction of the parabolic: the kernel of the rank-one K + I,
    // orthogonal to its larger row.
    let n = k + Mat2::identity();
    let r0 = [n.0[0][0], n.0[0][1]];
    let r1 = [n.0[1][0], n.0[1][1]];
    let row = if math::hypot(r0[0], r0[1]) >= math::hypot(r1[0], r1[1]) { r0 } else { r1 };
    let mut xi = [-row[1], row[0]];
    let norm = math::hypot(xi[0], xi[1]);
    xi = [xi[0] / norm, xi[1] / norm];
    // Deterministic, locally continuous sign anchor.
    if xi[0] + 0.137 * xi[1] < 0.0 {
        xi = [-xi[0], -xi[1]];
    }
    let zeta = [-xi[1], xi[0]];
    let basis = Mat2::new(xi[0], zeta[0], xi[1], zeta[1]);
    let mut g = basis.inv().expect("unit basis");
    let mut k1 = g * k * basis;
    // Mirror if the parabolic offset came out negative.
    if k1.0[0][1] < 0.0 {
        let w = Mat2::new(1.0, 0.0, 0.0, -1.0);
        g = w * g;
        k1 = w * k1 * w.inv().unwrap();
    }
    // Scale the offset to exactly one.
    let lam = math::sqrt(k1.0[0][1]);
    let d = Mat2::new(1.0 / lam, 0.0, 0.0, lam);
    let g = d * g;
    let ginv = g.inv().expect("invertible frame");
    rho_a = g * rho_a * ginv;
    rho_b = g * rho_b * ginv;

    // The offset of rho(c): zero on the product branch, the closed form on
    // the regenerating branch, polished by a one-variable projection of
    // the second relator.
    let x0 = match branch {
        BorromeanBranch::T => 0.0,
        BorromeanBranch::R => {
            0.5 / (math::cosh(l_a / 2.0) * math::cosh(l_b / 2.0)) * (math::cos(phi) / math::sin(phi))
        }
    };
    let pres = borromean_presentation();
    let make_rep = |x: f64| -> RealRep {
        let rho_c = Mat2::new(-1.0, x, 0.0, -1.0);
        RealRep::new(pres.clone(), vec![rho_a, rho_b, rho_c]).expect("sized")
    };
    let x = if branch == BorromeanBranch::R {
        let mut residual = |xs: &[f64]| -> Vec<f64> {
            let rep = make_rep(xs[0]);
            let m = rep.evaluate_word(&pres.relators[1]).expect("validated");
            let sign = if m.tr() >= 0.0 { 1.0 } else { -1.0 };
            let mut out = Vec::new();
            for i in 0..2 {
                for j in 0..2 {
                    out.push(m.0[i][j] - if i == j { sign } else { 0.0 });
                }
            }
            out
        };
        let cfg = NewtonCfg::default();
        let (xs, res, ok) = gauss_newton(&mut residual, &[x0], &cfg);
        if !ok && res > 1e-10 {
            return Err(Error::ConstructionFailed {
                equation: String::from("parabolic offset"),
                residual: res,
            });
        }
        xs[0]
    } else {
        0.0
    };
    let rep = make_rep(x);
    let res = rep.relation_residual();
    if res > 1e-10 {
        return Err(Error::ConstructionFailed {
            equation: String::from("borromean relators"),
            residual: res,
        });
    }
    Ok(BorromeanRep { l_a, l_b, phi_angle: phi, branch, x, rep })
}

/// Builds the representation from the two translation lengths, with the
/// principal axis angle `phi = arcsin(1/(sinh(l_a/2) sinh(l_b/2)))`.
pub fn borromean_rep(l_a: f64, l_b: f64, branch: BorromeanBranch) -> Result<BorromeanRep> {
    let sa = math::sinh(l_a / 2.0);
    let sb = math::sinh(l_b / 2.0);
    if sa * sb < 1.0 {
        return Err(Error::NoParabolicAngle);
    }
    let phi = math::asin((1.0 / (sa * sb)).min(1.0));
    borromean_rep_angle(l_a, l_b, phi, branch)
}

/// The rectangular base point: `sinh(l/2) = 1` on both generators and
/// perpendicular axes, where the two components meet.
pub fn rectangular_length() -> f64 {
    2.0 * math::asinh(1.0)
}

/// Finite-difference tangent of a branch in the angle direction at the
/// rectangular point, as a cocycle at the base representation.
fn branch_phi_tangent(branch: BorromeanBranch, base: &RealRep) -> Result<Cocycle> {
    let l0 = rectangular_length();
    let h = 1e-5;
    let mut vals = Vec::new();
    let lb = |phi: f64| 2.0 * math::asinh(1.0 / math::sin(phi));
    let plus = borromean_rep_angle(l0, lb(PI / 2.0 + h), PI / 2.0 + h, branch)?;
    let minus = borromean_rep_angle(l0, lb(PI / 2.0 - h), PI / 2.0 - h, branch)?;
    for ((p, m), r0) in plus
        .rep
        .images
        .iter()
        .zip(minus.rep.images.iter())
        .zip(base.images.iter())
    {
        let dot = (*p - *m).scale(1.0 / (2.0 * h));
        vals.push((dot * r0.inv().ok_or(Error::NotInvertible)?).traceless());
    }
    Cocycle::new(vals)
}

/// Distance of a cocycle from the span of the coboundaries plus listed
/// directions, relative to its own size.
fn cocycle_dist_mod(
    base: &RealRep,
    target: &Cocycle,
    extra: &[&Cocycle],
) -> f64 {
    let n = base.presentation.rank();
    let dims = 3 * n;
    let pack = |z: &Cocycle| -> Vec<f64> {
        let mut out = Vec::with_capacity(dims);
        for m in &z.values {
            out.push(m.0[0][0]);
            out.push((m.0[0][1] + m.0[1][0]) / 2.0);
            out.push((m.0[1][0] - m.0[0][1]) / 2.0);
        }
        out
    };
    let mut cols: Vec<Vec<f64>> = Vec::new();
    for k in 0..3 {
        let mut c = [0.0; 3];
        c[k] = 1.0;
        let u = Mat2::new(c[0], c[1] - c[2], c[1] + c[2], -c[0]);
        cols.push(pack(&crate::reps::coboundary(base, u)));
    }
    for e in extra {
        cols.push(pack(e));
    }
    let a = DMat::from_fn(dims, cols.len(), |i, j| cols[j][i]);
    let b = pack(target);
    let sol = lstsq_damped(&a, &b, 0.0);
    let fit = a.matvec(&sol);
    let mut err = 0.0f64;
    let mut scale = 0.0f64;
    for i in 0..dims {
        err = err.max(math::abs(fit[i] - b[i]));
        scale = scale.max(math::abs(b[i]));
    }
    err / scale.max(1e-30)
}

/// One hyperbolic regeneration attempt from the guess
/// `exp(t (w + i z)) rho_0` projected onto the relators and the parabolic
/// cusp condition, followed by a first-order compatibility measurement of
/// the found path against `z` modulo coboundaries.
struct HypAttempt {
    converged: bool,
    newton_residual: f64,
    /// `t` times the relative incompatibility of the found path with the
    /// prescribed sigma-part, modulo coboundaries.
    obstruction: f64,
}

fn attempt_hyp(
    base: &RealRep,
    z: &Cocycle,
    w_dir: &Cocycle,
    t: f64,
    cfg: &NewtonCfg,
) -> Result<HypAttempt> {
    let n = base.presentation.rank();
    let guesses: Vec<(Mat2, Mat2)> = base
        .images
        .iter()
        .enumerate()
        .map(|(k, r)| {
            let e = exp_sl2_cplx(w_dir.values[k].scale(t), z.values[k].scale(t));
            (e.0 * *r, e.1 * *r)
        })
        .collect();
    let relators = base.presentation.relators.clone();
    let cusp = word(&[1, 2, -1, -2]);
    let sl2 = |c: &[f64]| Mat2::new(c[0], c[1] - c[2], c[1] + c[2], -c[0]);
    let unpack = |x: &[f64]| -> Vec<(Mat2, Mat2)> {
        (0..n)
            .map(|k| {
                let e = exp_sl2_cplx(sl2(&x[6 * k..6 * k + 3]), sl2(&x[6 * k + 3..6 * k + 6]));
                (
                    e.0 * guesses[k].0 - e.1 * guesses[k].1,
                    e.0 * guesses[k].1 + e.1 * guesses[k].0,
                )
            })
            .collect()
    };
    let ceval = |imgs: &[(Mat2, Mat2)], w: &Word| -> (Mat2, Mat2) {
        let mut acc = (Mat2::identity(), Mat2::zero());
        for &l in w {
            let g = imgs[(l.abs() - 1) as usize];
            let f = if l > 0 {
                g
            } else {
                // complex 2x2 inverse with det computed honestly
                let dr = g.0 .0[0][0] * g.0 .0[1][1] - g.1 .0[0][0] * g.1 .0[1][1]
                    - (g.0 .0[0][1] * g.0 .0[1][0] - g.1 .0[0][1] * g.1 .0[1][0]);
                let di = g.0 .0[0][0] * g.1 .0[1][1] + g.1 .0[0][0] * g.0 .0[1][1]
                    - (g.0 .0[0][1] * g.1 .0[1][0] + g.1 .0[0][1] * g.0 .0[1][0]);
                let nn = dr * dr + di * di;
                let adj_re = Mat2::new(g.0 .0[1][1], -g.0 .0[0][1], -g.0 .0[1][0], g.0 .0[0][0]);
                let adj_im = Mat2::new(g.1 .0[1][1], -g.1 .0[0][1], -g.1 .0[1][0], g.1 .0[0][0]);
                (
                    (adj_re.scale(dr) + adj_im.scale(di)).scale(1.0 / nn),
                    (adj_im.scale(dr) - adj_re.scale(di)).scale(1.0 / nn),
                )
            };
            acc = (
                acc.0 * f.0 - acc.1 * f.1,
                acc.0 * f.1 + acc.1 * f.0,
            );
        }
        acc
    };
    let mut residual = |x: &[f64]| -> Vec<f64> {
        let imgs = unpack(x);
        let mut out = Vec::new();
        for r in &relators {
            let m = ceval(&imgs, r);
            let sign = if m.0.tr() >= 0.0 { 1.0 } else { -1.0 };
            for i in 0..2 {
                for j in 0..2 {
                    out.push(m.0 .0[i][j] - if i == j { sign } else { 0.0 });
                    out.push(m.1 .0[i][j]);
                }
            }
        }
        // The c-cusp stays a cusp: tr rho([a,b]) = -2 exactly.
        let m = ceval(&imgs, &cusp);
        out.push(m.0.tr() + 2.0);
        out.push(m.1.tr());
        out
    };
    let x0 = vec![0.0; 6 * n];
    let (x, res, ok) = gauss_newton(&mut residual, &x0, cfg);
    // First-order compatibility of the found path with z, mod coboundaries
    // and mod the real directions (which only shift the real part).
    let imgs = unpack(&x);
    let mut vals = Vec::new();
    for (k, r0) in base.images.iter().enumerate() {
        let im_part = imgs[k].1;
        vals.push((im_part.scale(1.0 / t) * r0.inv().ok_or(Error::NotInvertible)?).traceless());
    }
    let found = Cocycle::new(vals)?;
    let diff = found.add(&z.scale(-1.0));
    let rel_incompat = cocycle_dist_mod(base, &diff, &[]) * {
        // normalize by |z| so the measure is relative to the prescribed part
        let zn = z.values.iter().fold(0.0f64, |m, v| m.max(v.max_abs()));
        let dn = diff.values.iter().fold(0.0f64, |m, v| m.max(v.max_abs()));
        if zn > 0.0 {
            dn / zn
        } else {
            0.0
        }
    };
    Ok(HypAttempt { converged: ok, newton_residual: res, obstruction: rel_incompat * t })
}

/// Report of one flexibility run.
#[derive(Clone, Debug)]
pub struct FlexibilityReport {
    pub eps: f64,
    /// `(t, relator residual)` rows of the AdS regeneration.
    pub ads_rows: Vec<(f64, f64, Representation)>,
    pub ads_limit: LimitCheck,
    /// `(direction label, converged, newton residual, obstruction)` per
    /// sampled real direction.
    pub hyp_attempts: Vec<(String, bool, f64, f64)>,
    /// True when every sampled direction exceeded the obstruction
    /// threshold.
    pub obstructed: bool,
    pub hp_rep: Representation,
}

/// Obstruction threshold for the indicator (calibrated against the
/// epsilon = 0 run, which stays two orders of magnitude below it).
pub const OBSTRUCTION_THRESHOLD: f64 = 1e-6;

/// Deforms the transitional half-pipe structure at the rectangular point
/// by `v + eps u` (one tangent from each component) and attempts both
/// regenerations: AdS through `e+ sigma_t + e- mu_{-t}` and hyperbolic by
/// Newton projection over a grid of real directions.
pub fn borromean_flexibility(eps: f64, t_grid: &[f64]) -> Result<FlexibilityReport> {
    let l0 = rectangular_length();
    let base_rep = borromean_rep_angle(l0, l0, PI / 2.0, BorromeanBranch::T)?;
    let base = base_rep.rep.clone();
    let v = branch_phi_tangent(BorromeanBranch::R, &base)?;
    let u = branch_phi_tangent(BorromeanBranch::T, &base)?;
    let z = v.add(&u.scale(eps));
    let hp_rep = hp_from_cocycle(&base, &z, Dim::Three)?;

    // AdS side: exact branch paths with derivatives 2v and 2 eps u.
    let lb = |phi: f64| 2.0 * math::asinh(1.0 / math::sin(phi));
    let mut ads_rows = Vec::new();
    let mut ads_path = Vec::new();
    for &t in t_grid.iter().filter(|&&t| t < 0.0) {
        let phi_s = PI / 2.0 + 2.0 * t;
        let sigma = borromean_rep_angle(l0, lb(phi_s), phi_s, BorromeanBranch::R)?;
        let phi_m = PI / 2.0 + 2.0 * eps * (-t);
        let mu = if eps == 0.0 {
            base_rep.rep.clone()
        } else {
            borromean_rep_angle(l0, lb(phi_m), phi_m, BorromeanBranch::T)?.rep
        };
        let combined = combine_idempotent(&base, &sigma.rep.images, &mu.images, Dim::Three)?;
        let res = combined.relation_residual();
        ads_rows.push((t, res, combined.clone()));
        ads_path.push((t, combined));
    }
    let ads_limit = rescaled_limit_check(&ads_path, &hp_rep)?;

    // Hyperbolic side: grid of real first-order directions.
    let t = t_grid
        .iter()
        .copied()
        .filter(|&t| t > 0.0)
        .fold(f64::NAN, |acc, t| if acc.is_nan() { t } else { acc.min(t) });
    let t = if t.is_nan() { 1e-3 } else { t };
    let cfg = NewtonCfg::default();
    let zero = Cocycle::zero(3);
    let dirs: Vec<(String, Cocycle)> = vec![
        (String::from("0"), zero.clone()),
        (String::from("+v"), v.clone()),
        (String::from("-v"), v.scale(-1.0)),
        (String::from("+u"), u.clone()),
        (String::from("-u"), u.scale(-1.0)),
        (String::from("v+u"), v.add(&u)),
        (String::from("v-u"), v.add(&u.scale(-1.0))),
    ];
    let mut hyp_attempts = Vec::new();
    let mut all_obstructed = true;
    for (name, w_dir) in dirs {
        let a = attempt_hyp(&base, &z, &w_dir, t, &cfg)?;
        let obstructed = !a.converged || a.obstruction > OBSTRUCTION_THRESHOLD;
        if !obstructed {
            all_obstructed = false;
        }
        hyp_attempts.push((name, a.converged, a.newton_residual, a.obstruction));
    }

    Ok(FlexibilityReport {
        eps,
        ads_rows,
        ads_limit,
        hyp_attempts,
        obstructed: all_obstructed,
        hp_rep,
    })
}
