//! The regeneration engine: producing hyperbolic and AdS representation
//! paths from a half-pipe representation `rho_0 + z sigma`.
//!
//! The hyperbolic side Newton-projects the first-order guess
//! `g -> exp(t i z(g)) rho_0(g)` onto the variety cut out by the relators
//! plus an elliptic-meridian trace condition. The AdS side finds a real
//! path `phi_t` through `rho_0` with derivative `z` the same way and
//! assembles `rho_t = e+ phi_t + e- phi_{-t}` through the idempotents of
//! the split-complex algebra.

use super::cocycle::{cocycle_residual, Cocycle};
use super::{RealRep, Representation, Word};
use crate::algebra::{from_idempotent_pair, AlgebraTag, BElem};
use crate::error::{Error, Result};
use crate::geom::{Dim, GroupElem};
use crate::hp::HPIsometry;
use crate::linalg::{exp_sl2, exp_sl2_cplx, lstsq_damped, DMat, Mat2};
use crate::math;
use alloc::vec;
use alloc::vec::Vec;

/// How well a cocycle must satisfy the relator conditions before it is
/// accepted as an input to the builders.
const COCYCLE_TOL: f64 = 1e-8;

// ---------------------------------------------------------------------------
// Complex 2x2 matrices as (re, im) pairs; the Newton inner loop works on
// raw matrices so the residuals stay smooth (the canonical representative
// of a GroupElem can flip discontinuously).

pub(crate) type CMat = (Mat2, Mat2);

pub(crate) fn cmul(a: &CMat, b: &CMat) -> CMat {
    (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0)
}

pub(crate) fn cinv(a: &CMat) -> CMat {
    // det = dr + i di; inverse = adj / det.
    let dr = a.0 .0[0][0] * a.0 .0[1][1] - a.1 .0[0][0] * a.1 .0[1][1]
        - (a.0 .0[0][1] * a.0 .0[1][0] - a.1 .0[0][1] * a.1 .0[1][0]);
    let di = a.0 .0[0][0] * a.1 .0[1][1] + a.1 .0[0][0] * a.0 .0[1][1]
        - (a.0 .0[0][1] * a.1 .0[1][0] + a.1 .0[0][1] * a.0 .0[1][0]);
    let n = dr * dr + di * di;
    let adj_re = Mat2::new(a.0 .0[1][1], -a.0 .0[0][1], -a.0 .0[1][0], a.0 .0[0][0]);
    let adj_im = Mat2::new(a.1 .0[1][1], -a.1 .0[0][1], -a.1 .0[1][0], a.1 .0[0][0]);
    (
        (adj_re.scale(dr) + adj_im.scale(di)).scale(1.0 / n),
        (adj_im.scale(dr) - adj_re.scale(di)).scale(1.0 / n),
    )
}

pub(crate) fn ceval_word(images: &[CMat], w: &Word) -> CMat {
    let mut acc = (Mat2::identity(), Mat2::zero());
    for &letter in w {
        let g = &images[(letter.abs() - 1) as usize];
        let f = if letter > 0 { *g } else { cinv(g) };
        acc = cmul(&acc, &f);
    }
    acc
}

// ---------------------------------------------------------------------------
// Damped Gauss-Newton with finite-difference Jacobians.

/// Solver configuration. The defaults implement the standard policy:
/// convergence at residual `1e-12`, at most 50 iterations, divergence
/// declared when the residual stalls above `1e-8` for 10 iterations.
#[derive(Clone, Copy, Debug)]
pub struct NewtonCfg {
    pub max_iter: usize,
    pub tol: f64,
    pub stall_tol: f64,
    pub stall_window: usize,
    pub fd_step: f64,
}

impl Default for NewtonCfg {
    fn default() -> Self {
        NewtonCfg {
            max_iter: 50,
            tol: 1e-12,
            stall_tol: 1e-8,
            stall_window: 10,
            fd_step: 1e-7,
        }
    }
}

fn inf_norm(v: &[f64]) -> f64 {
    v.iter().fold(0.0f64, |m, &x| m.max(math::abs(x)))
}

/// Damped Gauss-Newton on a residual map. Returns the final iterate, its
/// residual inf-norm and whether the tolerance was reached.
pub fn gauss_newton(
    residual: &mut dyn FnMut(&[f64]) -> Vec<f64>,
    x0: &[f64],
    cfg: &NewtonCfg,
) -> (Vec<f64>, f64, bool) {
    let mut x = x0.to_vec();
    let mut f = residual(&x);
    let mut fnorm = inf_norm(&f);
    let mut lambda = 1e-6;
    let mut history: Vec<f64> = Vec::new();
    for iter in 0..cfg.max_iter {
        if fnorm < cfg.tol {
            return (x, fnorm, true);
        }
        history.push(fnorm);
        if iter >= cfg.stall_window
            && fnorm > cfg.stall_tol
            && fnorm > 0.99 * history[iter - cfg.stall_window]
        {
            return (x, fnorm, false);
        }
        // Central-difference Jacobian.
        let m = f.len();
        let n = x.len();
        let mut jac = DMat::zeros(m, n);
        for j in 0..n {
            let h = cfg.fd_step * (1.0 + math::abs(x[j]));
            let mut xp = x.clone();
            xp[j] += h;
            let fp = residual(&xp);
            let mut xm = x.clone();
            xm[j] -= h;
            let fm = residual(&xm);
            for i in 0..m {
                jac.set(i, j, (fp[i] - fm[i]) / (2.0 * h));
            }
        }
        let mut accepted = false;
        for _ in 0..12 {
            let step = lstsq_damped(&jac, &f, lambda);
            let xn: Vec<f64> = x.iter().zip(step.iter()).map(|(a, b)| a - b).collect();
            let fnew = residual(&xn);
            let fnew_norm = inf_norm(&fnew);
            if fnew_norm < fnorm {
                x = xn;
                f = fnew;
                fnorm = fnew_norm;
                lambda = (lambda * 0.3).max(1e-14);
                accepted = true;
                break;
            }
            lambda *= 10.0;
            if lambda > 1e10 {
                break;
            }
        }
        if !accepted {
            return (x, fnorm, fnorm < cfg.tol);
        }
    }
    let converged = fnorm < cfg.tol;
    (x, fnorm, converged)
}

// ---------------------------------------------------------------------------
// Builders.

/// Builds the half-pipe representation `rho_HP(g) = (1 + z(g) sigma)
/// rho_0(g)` from a cocycle at `rho_0`. The cocycle rule makes the relator
/// images exactly one (to first order, which `sigma^2 = 0` makes exact).
pub fn hp_from_cocycle(rho0: &RealRep, z: &Cocycle, dim: Dim) -> Result<Representation> {
    let zres = cocycle_residual(rho0, z)?;
    if zres > COCYCLE_TOL {
        return Err(Error::NotACocycle { residual: zres });
    }
    let tag = AlgebraTag::half_pipe();
    let images = rho0
        .images
        .iter()
        .zip(z.values.iter())
        .map(|(r, zg)| GroupElem::from_parts(*r, *zg * *r, tag))
        .collect::<Result<Vec<_>>>()?;
    Representation::new(rho0.presentation.clone(), tag, dim, images)
}

/// Optional meridian constraint for the regeneration solvers: the word and
/// the rate `omega` entering the angle `2 pi - omega t` (hyperbolic side)
/// or the mass `omega t` (AdS side).
#[derive(Clone, Debug)]
pub struct MeridianConstraint {
    pub word: Word,
    pub omega: f64,
}

fn unpack_sl2(c: &[f64]) -> Mat2 {
    super::cocycle::sl2_from_coords(c)
}

/// Unit translation direction of the meridian cocycle: `z` extended to the
/// meridian word, normalized so its square is `I/4`. The rotation angle
/// (resp. boost length) of the meridian is then read through the pairing
/// `tr(rho(m) zhat)`, which has a nondegenerate gradient where the plain
/// trace is critical (`rho_0(m) = 1`).
fn meridian_direction(rho0: &RealRep, z: &Cocycle, w: &Word) -> Result<Mat2> {
    let ext = super::cocycle::cocycle_extend(rho0, z, w)?;
    let q = -ext.det();
    if q <= 1e-20 {
        return Err(Error::Precondition(
            "meridian cocycle direction must be an infinitesimal translation",
        ));
    }
    Ok(ext.scale(1.0 / math::sqrt(4.0 * q)))
}

/// Extracts the normalized traceless direction of a hyperbolic 2x2 matrix,
/// sign-aligned with `zhat`.
fn boost_direction(m: &Mat2, zhat: &Mat2) -> Option<Mat2> {
    let t = m.traceless();
    let q = -t.det();
    if q <= 1e-24 {
        return None;
    }
    let d = t.scale(1.0 / math::sqrt(4.0 * q));
    let align = (d * *zhat).tr();
    Some(if align >= 0.0 { d } else { -d })
}

/// Newton projection of the first-order guess `exp(t i z(g)) rho_0(g)`
/// onto `{relators = 1} ∩ {tr rho(m) = ±2 cos((2 pi - omega t)/2)}`,
/// producing a hyperbolic-side representation over `B_1`.
pub fn regenerate_hyp(
    rho0: &RealRep,
    z: &Cocycle,
    t: f64,
    meridian: Option<&MeridianConstraint>,
    dim: Dim,
    cfg: &NewtonCfg,
) -> Result<Representation> {
    if t <= 0.0 {
        return Err(Error::Precondition("hyperbolic side needs t > 0"));
    }
    let zres = cocycle_residual(rho0, z)?;
    if zres > COCYCLE_TOL {
        return Err(Error::NotACocycle { residual: zres });
    }
    let n = rho0.presentation.rank();
    let guesses: Vec<CMat> = rho0
        .images
        .iter()
        .zip(z.values.iter())
        .map(|(r, zg)| {
            let e = exp_sl2_cplx(Mat2::zero(), zg.scale(t));
            (e.0 * *r, e.1 * *r)
        })
        .collect();
    let relators = rho0.presentation.relators.clone();
    let mer = meridian.cloned();
    // Elliptic meridian: rotation by omega t away from the full turn, read
    // through the zhat pairing: tr(rho(m) zhat) = i sin(omega t / 2).
    let constraint = match &mer {
        Some(m) => Some((
            m.word.clone(),
            meridian_direction(rho0, z, &m.word)?,
            math::sin(m.omega * t / 2.0),
        )),
        None => None,
    };

    let mut residual = |x: &[f64]| -> Vec<f64> {
        let images: Vec<CMat> = (0..n)
            .map(|k| {
                let ure = unpack_sl2(&x[6 * k..6 * k + 3]);
                let uim = unpack_sl2(&x[6 * k + 3..6 * k + 6]);
                let e = exp_sl2_cplx(ure, uim);
                cmul(&e, &guesses[k])
            })
            .collect();
        let mut out = Vec::new();
        for r in &relators {
            let m = ceval_word(&images, r);
            let sign = if m.0.tr() >= 0.0 { 1.0 } else { -1.0 };
            for i in 0..2 {
                for j in 0..2 {
                    let target = if i == j { sign } else { 0.0 };
                    out.push(m.0 .0[i][j] - target);
                    out.push(m.1 .0[i][j]);
                }
            }
        }
        if let Some((w, zhat, target_im)) = &constraint {
            let g = ceval_word(&images, w);
            out.push((g.0 * *zhat).tr());
            out.push((g.1 * *zhat).tr() - target_im);
        }
        out
    };

    let x0 = vec![0.0; 6 * n];
    let (x, res, ok) = gauss_newton(&mut residual, &x0, cfg);
    if !ok {
        return Err(Error::Obstructed { residual: res });
    }
    let tag = AlgebraTag::hyperbolic();
    let images = (0..n)
        .map(|k| {
            let ure = unpack_sl2(&x[6 * k..6 * k + 3]);
            let uim = unpack_sl2(&x[6 * k + 3..6 * k + 6]);
            let e = exp_sl2_cplx(ure, uim);
            let m = cmul(&e, &guesses[k]);
            GroupElem::from_parts(m.0, m.1, tag)
        })
        .collect::<Result<Vec<_>>>()?;
    Representation::new(rho0.presentation.clone(), tag, dim, images)
}

/// Newton projection of a real first-order guess `exp(t z(g)) rho_0(g)`
/// onto `{relators = 1}` with the meridian pinned to be a translation of
/// length exactly `omega t` along its own axis: the paired functional
/// `tr(rho(m) dhat) = sinh(omega t / 2)` is solved twice, the second pass
/// using the converged meridian's own direction `dhat`, which makes the
/// length exact rather than first-order accurate.
fn project_real_path(
    rho0: &RealRep,
    z: &Cocycle,
    t: f64,
    meridian: Option<&MeridianConstraint>,
    cfg: &NewtonCfg,
) -> Result<Vec<Mat2>> {
    let n = rho0.presentation.rank();
    let guesses: Vec<Mat2> = rho0
        .images
        .iter()
        .zip(z.values.iter())
        .map(|(r, zg)| exp_sl2(zg.scale(t)) * *r)
        .collect();
    let relators = rho0.presentation.relators.clone();
    let mer = meridian.cloned();
    let zhat = match &mer {
        Some(m) => Some(meridian_direction(rho0, z, &m.word)?),
        None => None,
    };

    let eval = |images: &[Mat2], w: &Word| -> Mat2 {
        let mut acc = Mat2::identity();
        for &letter in w {
            let g = images[(letter.abs() - 1) as usize];
            let f = if letter > 0 { g } else { g.inv().expect("det ±1") };
            acc = acc * f;
        }
        acc
    };
    let unpack_images = |x: &[f64]| -> Vec<Mat2> {
        (0..n)
            .map(|k| exp_sl2(unpack_sl2(&x[3 * k..3 * k + 3])) * guesses[k])
            .collect()
    };

    let mut x = vec![0.0; 3 * n];
    let mut pairing = zhat;
    for pass in 0..2 {
        let target = mer.as_ref().map(|m| math::sinh(m.omega * t / 2.0));
        let mer_word = mer.as_ref().map(|m| m.word.clone());
        let pair = pairing;
        let mut residual = |xs: &[f64]| -> Vec<f64> {
            let images = unpack_images(xs);
            let mut out = Vec::new();
            for r in &relators {
                let m = eval(&images, r);
                let sign = if m.tr() >= 0.0 { 1.0 } else { -1.0 };
                for i in 0..2 {
                    for j in 0..2 {
                        let tgt = if i == j { sign } else { 0.0 };
                        out.push(m.0[i][j] - tgt);
                    }
                }
            }
            if let (Some(w), Some(d), Some(tg)) = (&mer_word, &pair, target) {
                let g = eval(&images, w);
                out.push((g * *d).tr() - tg);
            }
            out
        };
        let (xn, res, ok) = gauss_newton(&mut residual, &x, cfg);
        if !ok {
            return Err(Error::NoRealPath { residual: res });
        }
        x = xn;
        match (&mer, &zhat) {
            (Some(m), Some(zh)) => {
                // Refine the pairing direction to the converged meridian's
                // own axis and solve once more.
                let g = eval(&unpack_images(&x), &m.word);
                match boost_direction(&g, zh) {
                    Some(d) => pairing = Some(d),
                    None => break,
                }
            }
            _ => break,
        }
        if pass == 1 {
            break;
        }
    }
    Ok(unpack_images(&x))
}

/// AdS-side regeneration through the idempotent decomposition:
/// `rho_t = e+ phi_t + e- phi_{-t}` entrywise over `B_{-1}`, where the
/// real paths are Newton projections of `exp(±t z(g)) rho_0(g)`.
pub fn regenerate_ads(
    rho0: &RealRep,
    z: &Cocycle,
    t: f64,
    meridian: Option<&MeridianConstraint>,
    dim: Dim,
    cfg: &NewtonCfg,
) -> Result<Representation> {
    if t >= 0.0 {
        return Err(Error::Precondition("AdS side needs t < 0"));
    }
    let zres = cocycle_residual(rho0, z)?;
    if zres > COCYCLE_TOL {
        return Err(Error::NotACocycle { residual: zres });
    }
    let plus = project_real_path(rho0, z, t, meridian, cfg)?;
    let minus = project_real_path(rho0, z, -t, meridian, cfg)?;
    combine_idempotent(rho0, &plus, &minus, dim)
}

/// Entrywise `e+ P + e- Q` over `B_{-1}` for two real image lists.
pub fn combine_idempotent(
    rho0: &RealRep,
    plus: &[Mat2],
    minus: &[Mat2],
    dim: Dim,
) -> Result<Representation> {
    let tag = AlgebraTag::anti_de_sitter();
    let images = plus
        .iter()
        .zip(minus.iter())
        .map(|(p, q)| {
            let mut e = [[BElem::zero(tag); 2]; 2];
            for i in 0..2 {
                for j in 0..2 {
                    e[i][j] = from_idempotent_pair(p.0[i][j], q.0[i][j], tag)?;
                }
            }
            GroupElem::new(e)
        })
        .collect::<Result<Vec<_>>>()?;
    Representation::new(rho0.presentation.clone(), tag, dim, images)
}

// ---------------------------------------------------------------------------
// First-order compatibility of a path with a half-pipe representation.

/// Outcome of a rescaled-limit check: per-grid residuals, the fitted
/// convergence order, and the verdict.
#[derive(Clone, Debug)]
pub struct LimitCheck {
    pub residuals: Vec<(f64, f64)>,
    pub order: f64,
    pub pass: bool,
}

/// Checks that the entrywise-rescaled path converges to `rho_HP` at first
/// order: `d(rescale_s(rho_t), rho_HP) <= C |t|` with observed order at
/// least `0.9` on the grid.
///
/// The imaginary parts are divided by signed `t`, so that compatibility
/// means exactly "the imaginary-part derivative equals the sigma-part";
/// with the unsigned divisor an AdS path approaching from `t < 0` would
/// land on the mirror image of its half-pipe limit.
pub fn rescaled_limit_check(
    path: &[(f64, Representation)],
    rho_hp: &Representation,
) -> Result<LimitCheck> {
    if !rho_hp.tag.is_half_pipe() {
        return Err(Error::Precondition("limit target must live over B_0"));
    }
    let mut residuals = Vec::new();
    for (t, rep) in path {
        if *t == 0.0 {
            return Err(Error::Precondition("grid must be one-sided, away from 0"));
        }
        let mut worst = 0.0f64;
        for (a, b) in rep.images.iter().zip(rho_hp.images.iter()) {
            // Componentwise comparison across algebras: divide the
            // imaginary part by signed t and reinterpret over B_0.
            let a0 = GroupElem::from_parts(
                a.real_part(),
                a.im_part().scale(1.0 / *t),
                AlgebraTag::half_pipe(),
            )?;
            worst = worst.max(a0.dist(b));
        }
        residuals.push((*t, worst));
    }
    // Fit log-residual against log |t|.
    let pts: Vec<(f64, f64)> = residuals
        .iter()
        .filter(|(_, r)| *r > 1e-15)
        .map(|(t, r)| (math::ln(math::abs(*t)), math::ln(*r)))
        .collect();
    let (order, converges_exactly) = if pts.len() < 2 {
        (f64::INFINITY, true)
    } else {
        let n = pts.len() as f64;
        let sx: f64 = pts.iter().map(|p| p.0).sum();
        let sy: f64 = pts.iter().map(|p| p.1).sum();
        let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
        let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
        ((n * sxy - sx * sy) / (n * sxx - sx * sx), false)
    };
    let all_tiny = residuals.iter().all(|(_, r)| *r < 1e-12);
    let pass = all_tiny || converges_exactly || order >= 0.9;
    Ok(LimitCheck { residuals, order, pass })
}

// ---------------------------------------------------------------------------
// Infinitesimal cone angle.

/// Reads the infinitesimal cone angle `omega` off a half-pipe meridian
/// image: the meridian must be a pure infinitesimal `1 + z sigma` whose
/// `z` fixes a non-degenerate line (a space-like `z`, `det z < 0`). In the
/// standard position `z = [[-omega/2, 0], [0, omega/2]]`, which is the
/// projective matrix with lower row `(0, 0, omega, 1)`; a general meridian
/// is conjugated there by the deterministic eigenbasis rule below.
pub fn infinitesimal_cone_angle(rep: &Representation, meridian: &Word) -> Result<f64> {
    if !rep.tag.is_half_pipe() {
        return Err(Error::Precondition("infinitesimal cone angles live over B_0"));
    }
    let g = rep.evaluate_word(meridian)?;
    let h = HPIsometry::from_group_elem(&g)?;
    let id = Mat2::identity();
    let fin_res = (h.finite - id)
        .max_abs()
        .min((h.finite + id).max_abs());
    if fin_res > 1e-10 {
        return Err(Error::NotInfinitesimal { residual: fin_res });
    }
    let z = h.inf;
    if z.max_abs() < 1e-14 {
        return Ok(0.0); // smooth point
    }
    let q = -z.det();
    if q <= 0.0 {
        return Err(Error::NotAxial { residual: -q });
    }
    let lam = math::sqrt(q);
    // Eigenvectors for +lam and -lam.
    let eigvec = |l: f64| -> [f64; 2] {
        let r1 = [z.0[0][1], l - z.0[0][0]];
        let r2 = [l - z.0[1][1], z.0[1][0]];
        let n1 = math::hypot(r1[0], r1[1]);
        let n2 = math::hypot(r2[0], r2[1]);
        let mut v = if n1 >= n2 { [r1[0] / n1, r1[1] / n1] } else { [r2[0] / n2, r2[1] / n2] };
        // Canonical sign: first significant component positive.
        let lead = if math::abs(v[0]) > 1e-9 { v[0] } else { v[1] };
        if lead < 0.0 {
            v = [-v[0], -v[1]];
        }
        v
    };
    let vp = eigvec(lam);
    let vm = eigvec(-lam);
    // Deterministic frame: the lexicographically larger eigenvector comes
    // first; omega = -2 * (its eigenvalue). For the standard form this
    // reads the (4,3) entry verbatim, either sign.
    let first_is_plus = vp[0] > vm[0] || (vp[0] == vm[0] && vp[1] > vm[1]);
    let lam_first = if first_is_plus { lam } else { -lam };
    Ok(-2.0 * lam_first)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reps::cocycle::coboundary;
    use crate::reps::{word, Presentation};
    use crate::rng::Rng;
    use approx::assert_abs_diff_eq;

    fn f2_base() -> RealRep {
        let a = exp_sl2(Mat2::new(0.9, 0.0, 0.0, -0.9));
        let b = exp_sl2(Mat2::new(0.0, 0.7, 0.7, 0.0));
        RealRep::new(Presentation::free(&["a", "b"]), vec![a, b]).unwrap()
    }

    #[test]
    fn hp_from_zero_cocycle_is_the_retagged_base() {
        let base = f2_base();
        let rep = hp_from_cocycle(&base, &Cocycle::zero(2), Dim::Three).unwrap();
        for (g, r) in rep.images.iter().zip(base.images.iter()) {
            assert!(g.im_part().max_abs() < 1e-15);
            let d = (g.real_part() - *r)
                .max_abs()
                .min((g.real_part() + *r).max_abs());
            assert!(d < 1e-13);
        }
    }

    #[test]
    fn hp_from_coboundary_is_conjugate_to_base() {
        let mut rng = Rng::new(5);
        let base = f2_base();
        for _ in 0..20 {
            let u = Mat2::new(rng.sym(0.7), rng.sym(0.7), rng.sym(0.7), 0.0).traceless();
            let z = coboundary(&base, u);
            let rep = hp_from_cocycle(&base, &z, Dim::Three).unwrap();
            // Conjugating by 1 + u sigma recovers the retagged base.
            let c = HPIsometry::infinitesimal(u).unwrap().to_group_elem().unwrap();
            let plain = hp_from_cocycle(&base, &Cocycle::zero(2), Dim::Three).unwrap();
            for (g, r) in rep.images.iter().zip(plain.images.iter()) {
                let conj = c * *r * c.inverse();
                assert!(g.dist(&conj) < 1e-11);
            }
        }
    }

    #[test]
    fn hp_relator_residual_vanishes_for_cocycles() {
        // <g | g^5> with elliptic image; cocycles are the translation
        // plane. The built HP representation satisfies the relator exactly.
        let pres = Presentation::new(
            vec![alloc::string::String::from("g")],
            vec![vec![1i32; 5]],
        )
        .unwrap();
        let theta = 2.0 * core::f64::consts::PI / 5.0;
        let g = exp_sl2(Mat2::new(0.0, -theta / 2.0, theta / 2.0, 0.0));
        let base = RealRep::new(pres, vec![g]).unwrap();
        let space = crate::reps::cocycle_space(&base).unwrap();
        for z in &space.basis {
            let rep = hp_from_cocycle(&base, z, Dim::Three).unwrap();
            assert!(rep.relation_residual() < 1e-10);
        }
        // A non-cocycle is rejected.
        let bad = Cocycle::new(vec![Mat2::new(0.0, -0.5, 0.5, 0.0)]).unwrap();
        assert!(matches!(
            hp_from_cocycle(&base, &bad, Dim::Three),
            Err(Error::NotACocycle { .. })
        ));
    }

    #[test]
    fn zero_cocycle_regenerates_to_the_constant_path() {
        let base = f2_base();
        let z = Cocycle::zero(2);
        let cfg = NewtonCfg::default();
        let hyp = regenerate_hyp(&base, &z, 1e-3, None, Dim::Three, &cfg).unwrap();
        for (g, r) in hyp.images.iter().zip(base.images.iter()) {
            let target = GroupElem::from_real(*r, AlgebraTag::hyperbolic()).unwrap();
            assert!(g.dist(&target) < 1e-10);
        }
        let ads = regenerate_ads(&base, &z, -1e-3, None, Dim::Three, &cfg).unwrap();
        for (g, r) in ads.images.iter().zip(base.images.iter()) {
            let target = GroupElem::from_real(*r, AlgebraTag::anti_de_sitter()).unwrap();
            assert!(g.dist(&target) < 1e-10);
        }
    }

    #[test]
    fn constant_path_fails_limit_check_against_nonzero_cocycle() {
        let base = f2_base();
        let z = Cocycle::new(vec![
            Mat2::zero(),
            Mat2::new(0.0, -0.5, 0.5, 0.0),
        ])
        .unwrap();
        let rho_hp = hp_from_cocycle(&base, &z, Dim::Three).unwrap();
        let tag = AlgebraTag::hyperbolic();
        let constant = Representation::from_real(&base, tag, Dim::Three).unwrap();
        let grid: Vec<(f64, Representation)> = [1e-2, 1e-3, 1e-4]
            .iter()
            .map(|&t| (t, constant.clone()))
            .collect();
        let check = rescaled_limit_check(&grid, &rho_hp).unwrap();
        assert!(!check.pass);
        // And the matching path passes.
        let cfg = NewtonCfg::default();
        let grid: Vec<(f64, Representation)> = [1e-2, 1e-3, 1e-4]
            .iter()
            .map(|&t| {
                (
                    t,
                    regenerate_hyp(&base, &z, t, None, Dim::Three, &cfg).unwrap(),
                )
            })
            .collect();
        let check = rescaled_limit_check(&grid, &rho_hp).unwrap();
        assert!(check.pass, "order {} residuals {:?}", check.order, check.residuals);
    }

    #[test]
    fn infinitesimal_cone_angle_standard_forms() {
        let tag = AlgebraTag::half_pipe();
        let pres = Presentation::free(&["m"]);
        for omega in [-2.0, 2.0, -0.7] {
            let z = Mat2::new(-omega / 2.0, 0.0, 0.0, omega / 2.0);
            let g = GroupElem::from_parts(Mat2::identity(), z, tag).unwrap();
            // Cross-check against the projective lower row (0, 0, omega, 1).
            let p = g.to_projective4();
            assert_abs_diff_eq!(p.m[3][2], omega, epsilon = 1e-12);
            let rep = Representation::new(
                pres.clone(),
                tag,
                Dim::Three,
                vec![g],
            )
            .unwrap();
            let w = infinitesimal_cone_angle(&rep, &word(&[1])).unwrap();
            assert_abs_diff_eq!(w, omega, epsilon = 1e-12);
        }
        // Smooth point: meridian the identity.
        let rep = Representation::new(
            pres,
            tag,
            Dim::Three,
            vec![GroupElem::identity(tag)],
        )
        .unwrap();
        assert_abs_diff_eq!(
            infinitesimal_cone_angle(&rep, &word(&[1])).unwrap(),
            0.0
        );
    }

    #[test]
    fn infinitesimal_cone_angle_rejects_finite_parts() {
        let tag = AlgebraTag::half_pipe();
        let pres = Presentation::free(&["m"]);
        let g = GroupElem::from_real(exp_sl2(Mat2::new(0.3, 0.0, 0.0, -0.3)), tag).unwrap();
        let rep = Representation::new(pres, tag, Dim::Three, vec![g]).unwrap();
        assert!(matches!(
            infinitesimal_cone_angle(&rep, &word(&[1])),
            Err(Error::NotInfinitesimal { .. })
        ));
    }
}
