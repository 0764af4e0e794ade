//! Half-pipe specific structure: the `(X, L)` product coordinates on
//! `HP^3`, the fiber length, the projection to the hyperbolic base, the
//! semidirect-product description `(A, a) -> A + A a sigma` of the
//! structure group, and the infinitesimal rotation amount `rot(a, X)` that
//! drives the fiber action.

use crate::algebra::AlgebraTag;
use crate::error::{Error, Result};
use crate::geom::{GroupElem, ModelPoint, PointClass};
use crate::linalg::{sym2_sqrt, Mat2};
use crate::math;

/// A point of `HP^3` in product coordinates: a hyperbolic-plane point
/// stored as a symmetric positive definite 2x2 matrix with `det = 1`, plus
/// the real fiber coordinate `L`.
#[derive(Clone, Copy, Debug)]
pub struct HPPoint {
    base: Mat2,
    pub fiber: f64,
}

impl HPPoint {
    /// Normalizes the base to determinant one.
    pub fn new(base: Mat2, fiber: f64) -> Result<Self> {
        let d = base.det();
        if d <= 0.0 || base.tr() <= 0.0 {
            return Err(Error::Precondition("HP base must be positive definite"));
        }
        let sym_err = math::abs(base.0[0][1] - base.0[1][0]);
        if sym_err > 1e-12 * base.max_abs() {
            return Err(Error::Precondition("HP base must be symmetric"));
        }
        Ok(HPPoint { base: base.scale(1.0 / math::sqrt(d)), fiber })
    }

    pub fn origin() -> Self {
        HPPoint { base: Mat2::identity(), fiber: 0.0 }
    }

    pub fn base(&self) -> Mat2 {
        self.base
    }

    /// The corresponding model point over `B_0`: `X + Y sigma` with
    /// `Y = L sqrt(det X) [[0,-1],[1,0]]`.
    pub fn to_model_point(&self) -> ModelPoint {
        let x = self.base;
        ModelPoint::new(
            [
                (x.0[0][0] + x.0[1][1]) / 2.0,
                (x.0[0][0] - x.0[1][1]) / 2.0,
                x.0[0][1],
                self.fiber,
            ],
            AlgebraTag::half_pipe(),
        )
    }

    /// Inverse of [`HPPoint::to_model_point`] on interior points.
    pub fn from_model_point(p: &ModelPoint) -> Result<Self> {
        if !p.tag.is_half_pipe() {
            return Err(Error::TagMismatch { left: 0.0, right: p.tag.s() });
        }
        if p.classify()? != PointClass::Interior {
            return Err(Error::NotInterior);
        }
        let flip = if p.x[0] < 0.0 { -1.0 } else { 1.0 };
        let x = Mat2::new(
            flip * (p.x[0] + p.x[1]),
            flip * p.x[2],
            flip * p.x[2],
            flip * (p.x[0] - p.x[1]),
        );
        let d = x.det();
        // fiber length in coordinates: x4 / sqrt(x1^2 - x2^2 - x3^2).
        HPPoint::new(x, flip * p.x[3] / math::sqrt(d))
    }
}

/// An element of the identity component of the half-pipe structure group,
/// as a pair: finite part `A` in `PSL(2,R)` and infinitesimal part `a` in
/// `sl(2,R)`, corresponding to the group element `A + A a sigma`.
#[derive(Clone, Copy, Debug)]
pub struct HPIsometry {
    pub finite: Mat2,
    pub inf: Mat2,
}

impl HPIsometry {
    pub fn new(finite: Mat2, inf: Mat2) -> Result<Self> {
        if math::abs(inf.tr()) > 1e-12 * (1.0 + inf.max_abs()) {
            return Err(Error::Precondition("infinitesimal part must be traceless"));
        }
        let d = finite.det();
        if math::abs(math::abs(d) - 1.0) > 1e-9 {
            return Err(Error::Precondition("finite part must have det = ±1"));
        }
        Ok(HPIsometry { finite, inf })
    }

    pub fn identity() -> Self {
        HPIsometry { finite: Mat2::identity(), inf: Mat2::zero() }
    }

    /// Pure infinitesimal `1 + a sigma`.
    pub fn infinitesimal(a: Mat2) -> Result<Self> {
        HPIsometry::new(Mat2::identity(), a)
    }

    /// The group element `A + A a sigma` over `B_0`.
    pub fn to_group_elem(&self) -> Result<GroupElem> {
        GroupElem::from_parts(
            self.finite,
            self.finite * self.inf,
            AlgebraTag::half_pipe(),
        )
    }

    /// Reads the `(A, a)` pair back from a group element over `B_0`.
    pub fn from_group_elem(g: &GroupElem) -> Result<Self> {
        if !g.tag().is_half_pipe() {
            return Err(Error::TagMismatch { left: 0.0, right: g.tag().s() });
        }
        let a = g.real_part();
        let ainv = a.inv().ok_or(Error::NotInvertible)?;
        let inf = ainv * g.im_part();
        if math::abs(inf.tr()) > 1e-9 * (1.0 + inf.max_abs()) {
            return Err(Error::Precondition("group element is not in PSL(2, R + R sigma)"));
        }
        // Re-symmetrize the trace exactly.
        HPIsometry::new(a, inf.traceless())
    }
}

/// The rotational amount of the infinitesimal isometry `a` at the point
/// `X`: decompose `a = a_sym + a_skew` with
/// `a_skew = (a - X a^T X^-1)/2`; then
/// `sqrt(X)^-1 a_skew sqrt(X) = rot(a, X) [[0,-1/2],[1/2,0]]`.
pub fn rot(a: Mat2, x: Mat2) -> Result<f64> {
    if math::abs(a.tr()) > 1e-12 * (1.0 + a.max_abs()) {
        return Err(Error::Precondition("rot needs a traceless matrix"));
    }
    let xinv = x.inv().ok_or(Error::Precondition("rot base must be invertible"))?;
    if x.det() <= 0.0 || x.tr() <= 0.0 {
        return Err(Error::Precondition("rot base must be positive definite"));
    }
    let skew = (a - x * a.transpose() * xinv).scale(0.5);
    let r = sym2_sqrt(x).ok_or(Error::Precondition("rot base must be positive definite"))?;
    let rinv = r.inv().ok_or(Error::Precondition("rot base must be positive definite"))?;
    let c = rinv * skew * r;
    // c must be exactly antisymmetric (up to round-off).
    let scale = 1.0 + c.max_abs();
    if math::abs(c.0[0][0]) > 1e-12 * scale
        || math::abs(c.0[1][1]) > 1e-12 * scale
        || math::abs(c.0[0][1] + c.0[1][0]) > 1e-12 * scale
    {
        return Err(Error::Precondition("skew part failed to antisymmetrize"));
    }
    Ok(c.0[1][0] - c.0[0][1])
}

/// The product-coordinate action: `(A, a)` maps `(X, L)` to
/// `(A X A^T, L + rot(a, X))`.
pub fn hp_act(g: &HPIsometry, p: &HPPoint) -> Result<HPPoint> {
    let new_base = g.finite * p.base() * g.finite.transpose();
    let delta = rot(g.inf, p.base())?;
    HPPoint::new(new_base, p.fiber + delta)
}

/// Fiber coordinate of an interior model point over `B_0`:
/// `L = x4 / (x1 sqrt(1 - (x2/x1)^2 - (x3/x1)^2))`, scale-invariant.
pub fn fiber_length(p: &ModelPoint) -> Result<f64> {
    Ok(HPPoint::from_model_point(p)?.fiber)
}

/// Projection `pi` of `HP^3` onto the hyperbolic base: drops the last
/// coordinate.
pub fn projection_pi(p: &ModelPoint) -> Result<[f64; 3]> {
    if !p.tag.is_half_pipe() {
        return Err(Error::TagMismatch { left: 0.0, right: p.tag.s() });
    }
    if p.classify()? != PointClass::Interior {
        return Err(Error::NotInterior);
    }
    Ok([p.x[0], p.x[1], p.x[2]])
}

/// Push-forward `pi_*`: the upper-left 3x3 block of the projective image.
pub fn projection_pi_star(g: &GroupElem) -> [[f64; 3]; 3] {
    let m = g.to_projective4();
    let mut out = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = m.m[i][j];
        }
    }
    out
}

/// Whether the half-pipe element preserves the fiber direction: the sign
/// of the (4,4) entry of its projective image.
pub fn preserves_fiber_direction(g: &GroupElem) -> bool {
    g.to_projective4().m[3][3] > 0.0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::exp_sl2;
    use crate::rng::Rng;
    use approx::assert_abs_diff_eq;

    fn j_rot() -> Mat2 {
        Mat2::new(0.0, -0.5, 0.5, 0.0)
    }

    #[test]
    fn rot_examples() {
        assert_abs_diff_eq!(rot(j_rot(), Mat2::identity()).unwrap(), 1.0);
        let sym = Mat2::new(0.5, 0.0, 0.0, -0.5);
        assert_abs_diff_eq!(rot(sym, Mat2::identity()).unwrap(), 0.0);
        // At distance d from the center, a unit rotation contributes cosh d.
        let d = 0.9;
        let x = Mat2::new(math::exp(d), 0.0, 0.0, math::exp(-d));
        assert_abs_diff_eq!(rot(j_rot(), x).unwrap(), math::cosh(d), epsilon = 1e-12);
    }

    #[test]
    fn hp_act_examples() {
        // Pure unit rotation at the origin translates the fiber by one.
        let g = HPIsometry::infinitesimal(j_rot()).unwrap();
        let p = hp_act(&g, &HPPoint::origin()).unwrap();
        assert_abs_diff_eq!(p.fiber, 1.0, epsilon = 1e-14);
        // Finite part only: the fiber is untouched.
        let a = exp_sl2(Mat2::new(0.4, 0.1, 0.1, -0.4));
        let g = HPIsometry::new(a, Mat2::zero()).unwrap();
        let base = Mat2::new(1.3, 0.2, 0.2, (1.0 + 0.2 * 0.2) / 1.3);
        let start = HPPoint::new(base, 0.7).unwrap();
        let p = hp_act(&g, &start).unwrap();
        assert_abs_diff_eq!(p.fiber, 0.7, epsilon = 1e-14);
        // Unit rotation above a point at distance d moves the fiber cosh d.
        let d = 1.1;
        let x = Mat2::new(math::exp(d), 0.0, 0.0, math::exp(-d));
        let g = HPIsometry::infinitesimal(j_rot()).unwrap();
        let p = hp_act(&g, &HPPoint::new(x, 0.0).unwrap()).unwrap();
        assert_abs_diff_eq!(p.fiber, math::cosh(d), epsilon = 1e-12);
    }

    #[test]
    fn fiber_length_examples() {
        let t = AlgebraTag::half_pipe();
        let c = 0.8;
        assert_abs_diff_eq!(
            fiber_length(&ModelPoint::new([1.0, 0.0, 0.0, c], t)).unwrap(),
            c
        );
        let r = 0.6;
        assert_abs_diff_eq!(
            fiber_length(&ModelPoint::new([math::cosh(r), math::sinh(r), 0.0, c], t)).unwrap(),
            c,
            epsilon = 1e-13
        );
        assert_abs_diff_eq!(
            fiber_length(&ModelPoint::new([2.0, 0.0, 0.0, 6.0], t)).unwrap(),
            3.0
        );
    }

    #[test]
    fn model_point_round_trip() {
        let mut rng = Rng::new(8);
        for _ in 0..200 {
            let a = exp_sl2(Mat2::new(rng.sym(0.8), rng.sym(0.8), rng.sym(0.8), 0.0).traceless());
            let base = a * a.transpose();
            let p = HPPoint::new(base, rng.sym(2.0)).unwrap();
            let q = HPPoint::from_model_point(&p.to_model_point()).unwrap();
            assert_abs_diff_eq!(p.fiber, q.fiber, epsilon = 1e-12);
            let d = p.base() - q.base();
            assert!(d.max_abs() < 1e-12);
        }
    }

    fn random_hp_isometry(rng: &mut Rng) -> HPIsometry {
        let a = exp_sl2(Mat2::new(rng.sym(0.8), rng.sym(0.8), rng.sym(0.8), 0.0).traceless());
        let inf = Mat2::new(rng.sym(0.8), rng.sym(0.8), rng.sym(0.8), 0.0).traceless();
        HPIsometry::new(a, inf).unwrap()
    }

    #[test]
    fn group_elem_round_trip() {
        let mut rng = Rng::new(15);
        for _ in 0..200 {
            let g = random_hp_isometry(&mut rng);
            let h = HPIsometry::from_group_elem(&g.to_group_elem().unwrap()).unwrap();
            // The group element is only defined projectively, so compare up
            // to overall sign of the finite part.
            let dp = (g.finite - h.finite).max_abs().min((g.finite + h.finite).max_abs());
            assert!(dp < 1e-13, "finite part round trip failed: {dp}");
            let di = (g.inf - h.inf).max_abs();
            assert!(di < 1e-13, "infinitesimal part round trip failed: {di}");
        }
        let id = HPIsometry::identity().to_group_elem().unwrap();
        assert!(id.dist_to_identity() < 1e-15);
    }

    #[test]
    fn product_action_matches_hermitian_route() {
        // Lemma-vs-matrix oracle: the (X, L) formula agrees with acting by
        // A + A a sigma on the Hermitian model.
        let mut rng = Rng::new(21);
        for _ in 0..500 {
            let g = random_hp_isometry(&mut rng);
            let a = exp_sl2(Mat2::new(rng.sym(0.9), rng.sym(0.9), rng.sym(0.9), 0.0).traceless());
            let p = HPPoint::new(a * a.transpose(), rng.sym(1.5)).unwrap();
            let lhs = hp_act(&g, &p).unwrap();
            let rhs = HPPoint::from_model_point(
                &g.to_group_elem()
                    .unwrap()
                    .act(&p.to_model_point())
                    .unwrap(),
            )
            .unwrap();
            assert_abs_diff_eq!(lhs.fiber, rhs.fiber, epsilon = 1e-10 * (1.0 + lhs.fiber.abs()));
            let d = lhs.base() - rhs.base();
            assert!(d.max_abs() < 1e-10);
        }
    }

    #[test]
    fn fiber_length_differences_are_invariant() {
        let mut rng = Rng::new(33);
        for _ in 0..300 {
            let g = random_hp_isometry(&mut rng);
            let a = exp_sl2(Mat2::new(rng.sym(0.9), rng.sym(0.9), rng.sym(0.9), 0.0).traceless());
            let base = a * a.transpose();
            let p = HPPoint::new(base, rng.sym(1.5)).unwrap();
            let q = HPPoint::new(base, rng.sym(1.5)).unwrap();
            let before = p.fiber - q.fiber;
            let gp = hp_act(&g, &p).unwrap();
            let gq = hp_act(&g, &q).unwrap();
            let after = gp.fiber - gq.fiber;
            assert_abs_diff_eq!(after, before, epsilon = 1e-10 * (1.0 + before.abs()));
            assert!(preserves_fiber_direction(&g.to_group_elem().unwrap()));
        }
        // A fiber-flipping element (finite det = -1) reverses the sign but
        // keeps the magnitude.
        let flip = GroupElem::from_real(Mat2::new(1.0, 0.0, 0.0, -1.0), AlgebraTag::half_pipe())
            .unwrap();
        assert!(!preserves_fiber_direction(&flip));
        let p = HPPoint::origin().to_model_point();
        let q = HPPoint::new(Mat2::identity(), 1.0).unwrap().to_model_point();
        let lp = fiber_length(&flip.act(&p).unwrap()).unwrap();
        let lq = fiber_length(&flip.act(&q).unwrap()).unwrap();
        assert_abs_diff_eq!(lq - lp, -1.0, epsilon = 1e-12);
    }

    #[test]
    fn infinitesimals_commute() {
        let mut rng = Rng::new(40);
        for _ in 0..100 {
            let a = Mat2::new(rng.sym(1.0), rng.sym(1.0), rng.sym(1.0), 0.0).traceless();
            let b = Mat2::new(rng.sym(1.0), rng.sym(1.0), rng.sym(1.0), 0.0).traceless();
            let ga = HPIsometry::infinitesimal(a).unwrap().to_group_elem().unwrap();
            let gb = HPIsometry::infinitesimal(b).unwrap().to_group_elem().unwrap();
            assert!((ga * gb).dist(&(gb * ga)) < 1e-14);
        }
    }

    #[test]
    fn conjugation_of_infinitesimals_sees_only_finite_part() {
        let mut rng = Rng::new(41);
        for _ in 0..100 {
            let g = random_hp_isometry(&mut rng);
            let h = Mat2::new(rng.sym(1.0), rng.sym(1.0), rng.sym(1.0), 0.0).traceless();
            let k = g.to_group_elem().unwrap();
            let inner = HPIsometry::infinitesimal(h).unwrap().to_group_elem().unwrap();
            let lhs = k * inner * k.inverse();
            let rhs = HPIsometry::infinitesimal(g.finite.ad(h).traceless())
                .unwrap()
                .to_group_elem()
                .unwrap();
            assert!(lhs.dist(&rhs) < 1e-12);
        }
    }

    #[test]
    fn projection_equivariance() {
        let mut rng = Rng::new(55);
        for _ in 0..300 {
            let g = random_hp_isometry(&mut rng);
            let ge = g.to_group_elem().unwrap();
            let a = exp_sl2(Mat2::new(rng.sym(0.9), rng.sym(0.9), rng.sym(0.9), 0.0).traceless());
            let p = HPPoint::new(a * a.transpose(), rng.sym(1.5))
                .unwrap()
                .to_model_point();
            let lhs = projection_pi(&ge.act(&p).unwrap()).unwrap();
            let m = projection_pi_star(&ge);
            let base = projection_pi(&p).unwrap();
            let mut rhs = [0.0; 3];
            for i in 0..3 {
                for j in 0..3 {
                    rhs[i] += m[i][j] * base[j];
                }
            }
            // Projectively equal: normalize both by the first coordinate.
            for i in 0..3 {
                assert_abs_diff_eq!(lhs[i] / lhs[0], rhs[i] / rhs[0], epsilon = 1e-10);
            }
        }
        // A pure infinitesimal projects to the identity on the base.
        let t = AlgebraTag::half_pipe();
        let g = HPIsometry::infinitesimal(j_rot()).unwrap().to_group_elem().unwrap();
        let p = ModelPoint::new([1.0, 0.1, -0.2, 0.4], t);
        let lhs = projection_pi(&g.act(&p).unwrap()).unwrap();
        let rhs = projection_pi(&p).unwrap();
        for i in 0..3 {
            assert_abs_diff_eq!(lhs[i], rhs[i], epsilon = 1e-12);
        }
    }
}
