//! Singularity invariants read off projective matrices: rotation angles
//! (plain and lifted along a path), tachyon masses, and the explicit model
//! meridian/longitude families for cone, tachyon and infinitesimal-cone
//! singularities.

use crate::error::{Error, Result};
use crate::geom::{eta_diag, Dim, ProjMat};
use crate::linalg::{numeric_rank, svd, DMat};
use crate::math;
use alloc::vec::Vec;

/// Result of a rotation-angle extraction.
#[derive(Clone, Copy, Debug)]
pub struct RotAngle {
    /// Angle in `(-pi, pi]`; `0` with `is_rotation = false` for elements
    /// whose complementary eigenvalues are real (no rotation).
    pub angle: f64,
    pub is_rotation: bool,
}

fn eta_inner(dim: Dim, s: f64, x: &[f64; 4], y: &[f64; 4]) -> f64 {
    let eta = eta_diag(s, dim);
    let n = dim.size();
    (0..n).map(|i| eta[i] * x[i] * y[i]).sum()
}

/// Pointwise-fixed set of `g` (eigenvalue-one eigenspace), as orthonormal
/// coordinate vectors. Tries both signs of the projective representative
/// and returns the sign that has a fixed space of the requested dimension.
fn fixed_space(g: &ProjMat, want_dim: usize) -> Result<(f64, Vec<[f64; 4]>)> {
    let n = g.dim.size();
    for sign in [1.0, -1.0] {
        let a = DMat::from_fn(n, n, |i, j| sign * g.m[i][j] - if i == j { 1.0 } else { 0.0 });
        let dec = svd(&a);
        let scale = dec.s[0].max(1.0);
        let nullity = dec.s.iter().filter(|&&x| x <= 1e-9 * scale).count();
        if nullity == want_dim {
            let mut basis = Vec::new();
            for j in (n - nullity)..n {
                let mut v = [0.0; 4];
                for i in 0..n {
                    v[i] = dec.v.get(i, j);
                }
                basis.push(canonical_sign(v, n));
            }
            basis.sort_by(|a, b| {
                let la = leading_index(a, n);
                let lb = leading_index(b, n);
                la.cmp(&lb)
            });
            return Ok((sign, basis));
        }
    }
    Err(Error::NotAxial { residual: f64::NAN })
}

fn leading_index(v: &[f64; 4], n: usize) -> usize {
    let mut best = 0;
    let mut bestv = 0.0;
    for (i, &x) in v.iter().enumerate().take(n) {
        if math::abs(x) > bestv + 1e-12 {
            best = i;
            bestv = math::abs(x);
        }
    }
    best
}

fn canonical_sign(mut v: [f64; 4], n: usize) -> [f64; 4] {
    for &x in v.iter().take(n) {
        if math::abs(x) > 1e-9 {
            if x < 0.0 {
                for y in v.iter_mut() {
                    *y = -*y;
                }
            }
            break;
        }
    }
    v
}

/// Scales `v` to unit eta-norm and returns the sign of its norm square.
fn normalize_eta(dim: Dim, s: f64, v: &mut [f64; 4]) -> f64 {
    let q = eta_inner(dim, s, v, v);
    let a = math::sqrt(math::abs(q));
    if a > 0.0 {
        for x in v.iter_mut() {
            *x /= a;
        }
    }
    if q > 0.0 {
        1.0
    } else if q < 0.0 {
        -1.0
    } else {
        0.0
    }
}

/// Orthonormal (w.r.t. `eta_s`) basis of the complement of the fixed
/// space, ordered so that space-like vectors come before time-like ones,
/// with the overall orientation fixed by `det[fixed..., w1, w2] > 0`.
fn complement_basis(
    dim: Dim,
    s: f64,
    fixed: &[[f64; 4]],
) -> Result<([f64; 4], f64, [f64; 4], f64)> {
    let n = dim.size();
    // Solve <w, p_i> = 0 for all fixed basis vectors.
    let rows = fixed.len();
    let a = DMat::from_fn(rows, n, |i, j| {
        let eta = eta_diag(s, dim);
        eta[j] * fixed[i][j]
    });
    let dec = svd(&a);
    let mut raw = Vec::new();
    let (rank, _) = numeric_rank(&dec.s, 1e-10);
    // For wide systems complete with Gram-Schmidt against the rows.
    let mut dirs: Vec<[f64; 4]> = (0..rank)
        .map(|j| {
            let mut v = [0.0; 4];
            for i in 0..n {
                v[i] = dec.v.get(i, j);
            }
            v
        })
        .collect();
    for k in 0..n {
        let mut v = [0.0; 4];
        v[k] = 1.0;
        for d in &dirs {
            let dot: f64 = (0..n).map(|i| v[i] * d[i]).sum();
            for i in 0..n {
                v[i] -= dot * d[i];
            }
        }
        let norm: f64 = math::sqrt((0..n).map(|i| v[i] * v[i]).sum());
        if norm > 1e-9 {
            for x in v.iter_mut() {
                *x /= norm;
            }
            dirs.push(v);
            raw.push(v);
        }
    }
    if raw.len() != 2 {
        return Err(Error::NotAxial { residual: f64::NAN });
    }
    // eta-orthogonalize the two complement vectors.
    let mut w1 = raw[0];
    let q1 = eta_inner(dim, s, &w1, &w1);
    let mut w2 = raw[1];
    if math::abs(q1) > 1e-12 {
        let c = eta_inner(dim, s, &w2, &w1) / q1;
        for i in 0..n {
            w2[i] -= c * w1[i];
        }
    }
    let q1 = normalize_eta(dim, s, &mut w1);
    let q2 = normalize_eta(dim, s, &mut w2);
    // Space-like first.
    let (mut w1, q1, mut w2, q2) = if q1 < 0.0 && q2 > 0.0 {
        (w2, q2, w1, q1)
    } else {
        (w1, q1, w2, q2)
    };
    w1 = canonical_sign(w1, n);
    // Fix the orientation of the full frame.
    let mut det_cols: Vec<[f64; 4]> = fixed.to_vec();
    det_cols.push(w1);
    det_cols.push(w2);
    if det_n(&det_cols, n) < 0.0 {
        for x in w2.iter_mut() {
            *x = -*x;
        }
    }
    Ok((w1, q1, w2, q2))
}

fn det_n(cols: &[[f64; 4]], n: usize) -> f64 {
    let a = DMat::from_fn(n, n, |i, j| cols[j][i]);
    // LU-free small determinant by Laplace on n <= 4 via permutations is
    // overkill; use the SVD-free Bareiss-style elimination.
    let mut m: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| a.get(i, j)).collect())
        .collect();
    let mut det = 1.0;
    for k in 0..n {
        // Partial pivot.
        let mut piv = k;
        for i in k + 1..n {
            if math::abs(m[i][k]) > math::abs(m[piv][k]) {
                piv = i;
            }
        }
        if m[piv][k] == 0.0 {
            return 0.0;
        }
        if piv != k {
            m.swap(piv, k);
            det = -det;
        }
        det *= m[k][k];
        for i in k + 1..n {
            let f = m[i][k] / m[k][k];
            for j in k..n {
                m[i][j] -= f * m[k][j];
            }
        }
    }
    det
}

/// Rotation angle of an element fixing a point (dimension 2) or a line
/// (dimension 3) pointwise, following the eigenvalue classification: a
/// complex pair on the complement gives the angle, a real pair gives
/// "no rotation".
///
/// `s` selects the metric used for the complement construction (`1.0` for
/// the hyperbolic side).
pub fn rotation_angle(g: &ProjMat, s: f64) -> Result<RotAngle> {
    let id = ProjMat::identity(g.dim);
    if g.dist_up_to_sign(&id) < 1e-12 {
        return Ok(RotAngle { angle: 0.0, is_rotation: true });
    }
    let fixed_dim = match g.dim {
        Dim::Two => 1,
        Dim::Three => 2,
    };
    let (sign, fixed) = fixed_space(g, fixed_dim)?;
    let (w1, q1, w2, q2) = complement_basis(g.dim, s, &fixed)?;
    let n = g.dim.size();
    let apply = |v: &[f64; 4]| -> [f64; 4] {
        let mut y = g.apply(v);
        for x in y.iter_mut().take(n) {
            *x *= sign;
        }
        y
    };
    let gw1 = apply(&w1);
    if q1 > 0.0 && q2 > 0.0 {
        // Positive definite complement: a bona fide rotation plane.
        let c = eta_inner(g.dim, s, &gw1, &w1) / q1;
        let sn = eta_inner(g.dim, s, &gw1, &w2) / q2;
        Ok(RotAngle { angle: math::atan2(sn, c), is_rotation: true })
    } else if q1 < 0.0 && q2 < 0.0 {
        // Negative definite complement (AdS time-like plane): still a
        // rotation, with angle read in the eta-negative plane.
        let c = eta_inner(g.dim, s, &gw1, &w1) / q1;
        let sn = eta_inner(g.dim, s, &gw1, &w2) / q2;
        Ok(RotAngle { angle: math::atan2(sn, c), is_rotation: true })
    } else {
        // Mixed signature: boost-like, real eigenvalues, no rotation.
        Ok(RotAngle { angle: 0.0, is_rotation: false })
    }
}

/// Total rotation angle along a discretely sampled continuous path from
/// the identity, by unwrapped angle tracking. Steps must differ by less
/// than `pi/2`.
pub fn lifted_rotation_angle(path: &[ProjMat], s: f64) -> Result<f64> {
    if path.is_empty() {
        return Ok(0.0);
    }
    let id = ProjMat::identity(path[0].dim);
    if path[0].dist_up_to_sign(&id) > 1e-9 {
        return Err(Error::Precondition("lifted tracking must start at the identity"));
    }
    let mut total = 0.0;
    let mut prev = 0.0;
    for g in &path[1..] {
        let r = rotation_angle(g, s)?;
        let raw = if r.is_rotation { r.angle } else { 0.0 };
        // Unwrap relative to the previous sample.
        let mut delta = raw - prev;
        while delta > core::f64::consts::PI {
            delta -= 2.0 * core::f64::consts::PI;
        }
        while delta < -core::f64::consts::PI {
            delta += 2.0 * core::f64::consts::PI;
        }
        if math::abs(delta) >= core::f64::consts::FRAC_PI_2 {
            return Err(Error::StepTooLarge { step: delta });
        }
        total += delta;
        prev = raw;
    }
    Ok(total)
}

/// The pointwise-fixed line of a dimension-3 projective element, as two
/// spanning coordinate vectors.
pub fn pointwise_fixed_line(g: &ProjMat) -> Result<[[f64; 4]; 2]> {
    if g.dim != Dim::Three {
        return Err(Error::Precondition("fixed lines live in dimension 3"));
    }
    let (_, basis) = fixed_space(g, 2)?;
    Ok([basis[0], basis[1]])
}

/// Hyperbolic angle of a boost fixing a point (dimension 2) or a line
/// (dimension 3) pointwise, when the complement of the fixed set has mixed
/// signature. Signed by the orientation of the complement frame.
pub fn boost_angle(g: &ProjMat, s: f64) -> Result<f64> {
    let id = ProjMat::identity(g.dim);
    if g.dist_up_to_sign(&id) < 1e-12 {
        return Ok(0.0);
    }
    let fixed_dim = match g.dim {
        Dim::Two => 1,
        Dim::Three => 2,
    };
    let (sign, fixed) = fixed_space(g, fixed_dim)?;
    let (w1, q1, w2, q2) = complement_basis(g.dim, s, &fixed)?;
    if !(q1 > 0.0 && q2 < 0.0) {
        return Err(Error::NotAxial { residual: f64::NAN });
    }
    let n = g.dim.size();
    let mut gw1 = g.apply(&w1);
    for x in gw1.iter_mut().take(n) {
        *x *= sign;
    }
    let ch = eta_inner(g.dim, s, &gw1, &w1);
    if ch < 1.0 - 1e-9 {
        return Err(Error::NotAxial { residual: 1.0 - ch });
    }
    Ok(math::asinh(-eta_inner(g.dim, s, &gw1, &w2)))
}

/// Tachyon mass: the hyperbolic angle of a boost about a space-like axis
/// in `AdS^3`, with `cosh(phi) = <v, A v>` for a unit space-like `v`
/// orthogonal to the axis, signed by the orientation of the complement
/// frame.
pub fn tachyon_mass(g: &ProjMat, s: f64, axis: &[[f64; 4]; 2]) -> Result<f64> {
    if g.dim != Dim::Three {
        return Err(Error::Precondition("tachyon mass lives in dimension 3"));
    }
    if s >= 0.0 {
        return Err(Error::Precondition("tachyon mass needs an AdS-side metric (s < 0)"));
    }
    // The axis must be pointwise fixed (projectively: common eigenvalue).
    let p0 = g.apply(&axis[0]);
    let lam = {
        let mut best = 0.0;
        let mut bestv = 0.0;
        for i in 0..4 {
            if math::abs(axis[0][i]) > bestv {
                bestv = math::abs(axis[0][i]);
                best = p0[i] / axis[0][i];
            }
        }
        best
    };
    let mut residual = 0.0f64;
    for p in axis {
        let gp = g.apply(p);
        for i in 0..4 {
            residual = residual.max(math::abs(gp[i] - lam * p[i]));
        }
    }
    if residual > 1e-9 * g.max_abs().max(1.0) {
        return Err(Error::NotAxial { residual });
    }
    // Normalize the representative so the axis eigenvalues are one.
    let mut gn = *g;
    for i in 0..4 {
        for j in 0..4 {
            gn.m[i][j] /= lam;
        }
    }
    let fixed = [canonical_sign(axis[0], 4), canonical_sign(axis[1], 4)];
    let (w1, q1, w2, q2) = complement_basis(Dim::Three, s, &fixed)?;
    if !(q1 > 0.0 && q2 < 0.0) {
        return Err(Error::NotAxial { residual: f64::NAN });
    }
    let gw1 = gn.apply(&w1);
    let ch = eta_inner(Dim::Three, s, &gw1, &w1) / q1;
    if ch < 1.0 - 1e-9 {
        return Err(Error::NotAxial { residual: 1.0 - ch });
    }
    // Signed component along the time-like direction.
    let sh = -eta_inner(Dim::Three, s, &gw1, &w2);
    Ok(math::asinh(sh))
}

/// Model geometry selector for the explicit singular families.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModelGeometry {
    Hyperbolic,
    AntiDeSitter,
    HalfPipe,
}

/// The explicit model meridian/longitude pairs around a singular axis in
/// standard position (the axis is the `x3 = x4 = 0` line):
///
/// - hyperbolic: meridian rotates by `omega t` in the `(x3, x4)` plane,
///   longitude translates by `d` and rotates by `mu t`;
/// - AdS: the rotations are replaced by boosts of the same parameters;
/// - half-pipe: the rescaled limits, with the meridian the standard
///   infinitesimal rotation with `(4,3)` entry `omega` and the longitude
///   carrying `mu` in the `(4,3)` slot.
pub fn model_cone_generators(
    geometry: ModelGeometry,
    omega: f64,
    d: f64,
    mu: f64,
    t: f64,
) -> (ProjMat, ProjMat) {
    let mut mer = ProjMat::identity(Dim::Three);
    let mut lon = ProjMat::identity(Dim::Three);
    lon.m[0][0] = math::cosh(d);
    lon.m[0][1] = math::sinh(d);
    lon.m[1][0] = math::sinh(d);
    lon.m[1][1] = math::cosh(d);
    match geometry {
        ModelGeometry::Hyperbolic => {
            let (c, sn) = (math::cos(omega * t), math::sin(omega * t));
            mer.m[2][2] = c;
            mer.m[2][3] = -sn;
            mer.m[3][2] = sn;
            mer.m[3][3] = c;
            let (cl, sl) = (math::cos(mu * t), math::sin(mu * t));
            lon.m[2][2] = cl;
            lon.m[2][3] = -sl;
            lon.m[3][2] = sl;
            lon.m[3][3] = cl;
        }
        ModelGeometry::AntiDeSitter => {
            let (c, sn) = (math::cosh(omega * t), math::sinh(omega * t));
            mer.m[2][2] = c;
            mer.m[2][3] = sn;
            mer.m[3][2] = sn;
            mer.m[3][3] = c;
            let (cl, sl) = (math::cosh(mu * t), math::sinh(mu * t));
            lon.m[2][2] = cl;
            lon.m[2][3] = sl;
            lon.m[3][2] = sl;
            lon.m[3][3] = cl;
        }
        ModelGeometry::HalfPipe => {
            mer.m[3][2] = omega;
            lon.m[3][2] = mu;
        }
    }
    (mer, lon)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::conjugate_by_rescaling;
    use approx::assert_abs_diff_eq;

    #[test]
    fn rotation_angle_of_standard_block() {
        let theta = 0.3;
        let (mer, _) = model_cone_generators(ModelGeometry::Hyperbolic, 1.0, 0.7, 0.0, theta);
        let r = rotation_angle(&mer, 1.0).unwrap();
        assert!(r.is_rotation);
        assert_abs_diff_eq!(r.angle, theta, epsilon = 1e-10);
        // Identity.
        let r = rotation_angle(&ProjMat::identity(Dim::Three), 1.0).unwrap();
        assert_abs_diff_eq!(r.angle, 0.0);
    }

    #[test]
    fn boost_is_not_a_rotation() {
        let (mer, _) = model_cone_generators(ModelGeometry::AntiDeSitter, 1.0, 0.7, 0.0, 0.3);
        let r = rotation_angle(&mer, -1.0).unwrap();
        assert!(!r.is_rotation);
        assert_abs_diff_eq!(r.angle, 0.0);
    }

    #[test]
    fn lifted_angle_tracks_full_turn() {
        let n = 40;
        let path: Vec<ProjMat> = (0..=n)
            .map(|k| {
                let theta = 2.0 * core::f64::consts::PI * k as f64 / n as f64;
                model_cone_generators(ModelGeometry::Hyperbolic, 1.0, 0.0, 0.0, theta).0
            })
            .collect();
        let total = lifted_rotation_angle(&path, 1.0).unwrap();
        assert_abs_diff_eq!(total, 2.0 * core::f64::consts::PI, epsilon = 1e-9);
        // Too-coarse sampling errors out.
        let coarse: Vec<ProjMat> = (0..=2)
            .map(|k| {
                let theta = 2.0 * core::f64::consts::PI * k as f64 / 2.0;
                model_cone_generators(ModelGeometry::Hyperbolic, 1.0, 0.0, 0.0, theta).0
            })
            .collect();
        assert!(matches!(
            lifted_rotation_angle(&coarse, 1.0),
            Err(Error::StepTooLarge { .. })
        ));
    }

    #[test]
    fn tachyon_mass_of_standard_boost() {
        let phi = 0.2;
        let (mer, _) = model_cone_generators(ModelGeometry::AntiDeSitter, 1.0, 0.0, 0.0, phi);
        let axis = [[1.0, 0.0, 0.0, 0.0], [0.0, 1.0, 0.0, 0.0]];
        let mass = tachyon_mass(&mer, -1.0, &axis).unwrap();
        assert_abs_diff_eq!(mass, phi, epsilon = 1e-12);
        // Identity has zero mass.
        let id = ProjMat::identity(Dim::Three);
        assert_abs_diff_eq!(tachyon_mass(&id, -1.0, &axis).unwrap(), 0.0, epsilon = 1e-12);
        // An element preserving but not pointwise fixing the axis errors
        // out: the longitude translates along it.
        let (_, lon) = model_cone_generators(ModelGeometry::AntiDeSitter, 1.0, 0.5, 0.0, 0.0);
        assert!(tachyon_mass(&lon, -1.0, &axis).is_err());
    }

    #[test]
    fn rescaled_model_families_limit_to_half_pipe_forms() {
        // conjugating the hyperbolic meridian by r_t reproduces the
        // sin(omega t)/t entry, converging to the half-pipe form.
        let omega = -1.7;
        let (hp_mer, hp_lon) = model_cone_generators(ModelGeometry::HalfPipe, omega, 0.9, 0.4, 0.0);
        for geom in [ModelGeometry::Hyperbolic, ModelGeometry::AntiDeSitter] {
            let mut prev = f64::INFINITY;
            for k in 2..6 {
                let t = 10f64.powi(-k);
                let (mer, lon) = model_cone_generators(geom, omega, 0.9, 0.4, t);
                let rm = conjugate_by_rescaling(&mer, t).unwrap();
                let rl = conjugate_by_rescaling(&lon, t).unwrap();
                assert_abs_diff_eq!(
                    rm.m[3][2],
                    match geom {
                        ModelGeometry::Hyperbolic => math::sin(omega * t) / t,
                        _ => math::sinh(omega * t) / t,
                    },
                    epsilon = 1e-12
                );
                let d = rm.dist_up_to_sign(&hp_mer).max(rl.dist_up_to_sign(&hp_lon));
                assert!(d < prev || d < 1e-10);
                prev = d;
            }
            assert!(prev < 2e-4 * omega.abs());
        }
    }
}
