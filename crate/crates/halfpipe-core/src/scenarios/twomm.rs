//! The half-pipe structure on the unit tangent bundle of the `(2,m,m)`
//! triangle orbifold, built from two lifted rotations, and its transition
//! to hyperbolic cone structures and AdS tachyon structures.
//!
//! Construction data, all in the symmetric-matrix model of `H^2`:
//!
//! - `R = arccosh(cot(pi/m))`: circumradius of the right-angled regular
//!   m-gon (also the distance from either rotation center to the order-2
//!   corner); needs `m >= 5`.
//! - `p` at the origin; `qt` (the lifted second center) at distance `D`
//!   with `cosh D = cot^2(pi/m)` in the direction `pi/m`, so that the
//!   corner `r` sits on the positive x-axis at distance `R`, forming the
//!   right angle of the `(pi/2, pi/m, pi/m)` triangle.
//! - `alpha = A + A a sigma`: rotation by `2 pi/m` about `p` with
//!   infinitesimal angle rate `theta_dot`; `beta~ = S alpha S^-1` with `S`
//!   the pi-rotation about the midpoint of `[p, qt]` (the symmetry that
//!   swaps the two polygon pieces).
//! - `mu = sqrt(alpha^-m beta~^m)`, a pure infinitesimal translation; the
//!   square root of `1 + h sigma` is `1 + (h/2) sigma`.
//!
//! The glueing maps come from the symmetric choice `g_A = S`,
//! `beta = S^-1 beta~ S`, `g_B = (beta~ alpha)^-1 g_A`, `g_D = mu g_A`,
//! `g_C = alpha^-1 g_D beta^-1`, and every displayed glueing equation is
//! evaluated as a residual.

use crate::algebra::AlgebraTag;
use crate::error::{Error, Result};
use crate::geom::{Dim, GroupElem, ProjMat};
use crate::hp::HPIsometry;
use crate::linalg::{exp_sl2, Mat2};
use crate::math;
use crate::reps::{
    h1_dimension, infinitesimal_cone_angle, pointwise_fixed_line, regenerate_ads, regenerate_hyp,
    rescaled_limit_check, rotation_angle, tachyon_mass, word, Cocycle, LimitCheck,
    MeridianConstraint, NewtonCfg, Presentation, RealRep, Representation, SingularInvariant,
    StructureKind, TransitionReport, TransitionRow, Word,
};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

const PI: f64 = core::f64::consts::PI;

fn j_rot() -> Mat2 {
    Mat2::new(0.0, -0.5, 0.5, 0.0)
}

/// Traceless matrix from three coordinates.
fn sl2(c: &[f64]) -> Mat2 {
    Mat2::new(c[0], c[1] - c[2], c[1] + c[2], -c[0])
}

/// Rotation by `theta` about the origin (as an isometry of `H^2`).
fn rotation(theta: f64) -> Mat2 {
    exp_sl2(j_rot().scale(theta))
}

/// PSL(2,R) element moving the origin distance `d` along the direction at
/// angle `phi` from the x-axis.
fn translation(d: f64, phi: f64) -> Mat2 {
    let u = rotation(phi);
    let t = Mat2::new(math::exp(d / 2.0), 0.0, 0.0, math::exp(-d / 2.0));
    u * t * u.inv().expect("rotation invertible")
}

fn ge_pow(g: &GroupElem, n: usize) -> GroupElem {
    let mut acc = GroupElem::identity(g.tag());
    for _ in 0..n {
        acc = acc * *g;
    }
    acc
}

/// Fixed point of an elliptic PSL(2,R) element, as a det-1 symmetric
/// matrix.
fn elliptic_fixed_point(k: &Mat2) -> Result<Mat2> {
    let tr = k.tr();
    let disc = 4.0 - tr * tr;
    let c = k.0[1][0];
    if disc <= 0.0 || math::abs(c) < 1e-13 {
        return Err(Error::Precondition("element is not elliptic"));
    }
    let y = math::sqrt(disc) / (2.0 * math::abs(c));
    let x = (k.0[0][0] - k.0[1][1]) / (2.0 * c);
    Ok(Mat2::new((x * x + y * y) / y, x / y, x / y, 1.0 / y))
}

/// Lorentz cross product in `R^{2,1}` with `eta = diag(-1, 1, 1)`:
/// eta-orthogonal to both arguments.
fn lorentz_cross(u: &[f64; 3], v: &[f64; 3]) -> [f64; 3] {
    [
        -(u[1] * v[2] - u[2] * v[1]),
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    ]
}

fn eta3(u: &[f64; 3], v: &[f64; 3]) -> f64 {
    -u[0] * v[0] + u[1] * v[1] + u[2] * v[2]
}

/// A non-degenerate line in `HP^3` as a 2-plane of coordinate vectors.
#[derive(Clone, Copy, Debug)]
struct Line {
    v: [[f64; 4]; 2],
}

impl Line {
    fn transported(&self, g: &ProjMat) -> Line {
        Line { v: [g.apply(&self.v[0]), g.apply(&self.v[1])] }
    }

    /// Projection of a spanning vector to the hyperbolic base.
    fn base(&self, k: usize) -> [f64; 3] {
        [self.v[k][0], self.v[k][1], self.v[k][2]]
    }

    /// Pole (space-like normal) of the base geodesic.
    fn base_pole(&self) -> [f64; 3] {
        let w = lorentz_cross(&self.base(0), &self.base(1));
        let n = math::sqrt(math::abs(eta3(&w, &w)));
        [w[0] / n, w[1] / n, w[2] / n]
    }

    /// Fiber coordinate of the line above the base point `u`, which must
    /// lie on the base geodesic.
    fn fiber_above(&self, u: &[f64; 3]) -> Result<f64> {
        let pv = self.base(0);
        let pw = self.base(1);
        let cross = |a: &[f64; 3], b: &[f64; 3]| {
            [
                a[1] * b[2] - a[2] * b[1],
                a[2] * b[0] - a[0] * b[2],
                a[0] * b[1] - a[1] * b[0],
            ]
        };
        let cv = cross(&pv, u);
        let cw = cross(&pw, u);
        // c1 cv + c2 cw = 0 picks the combination projecting onto u.
        let mut k = 0;
        for i in 1..3 {
            if math::abs(cv[i]) + math::abs(cw[i]) > math::abs(cv[k]) + math::abs(cw[k]) {
                k = i;
            }
        }
        let (c1, c2) = (cw[k], -cv[k]);
        let x = [
            c1 * self.v[0][0] + c2 * self.v[1][0],
            c1 * self.v[0][1] + c2 * self.v[1][1],
            c1 * self.v[0][2] + c2 * self.v[1][2],
            c1 * self.v[0][3] + c2 * self.v[1][3],
        ];
        crate::hp::fiber_length(&crate::geom::ModelPoint::new(x, AlgebraTag::half_pipe()))
    }
}

/// Invariant axis of a half-pipe translation (hyperbolic finite part):
/// the span of the lifted eigenvectors over the two fixed null directions.
fn hp_translation_axis(g: &GroupElem) -> Result<Line> {
    let h = HPIsometry::from_group_elem(g)?;
    let fin = h.finite;
    let tr = fin.tr();
    if tr * tr <= 4.0 + 1e-12 {
        return Err(Error::Precondition("axis needs a hyperbolic finite part"));
    }
    let p = g.to_projective4();
    let disc = math::sqrt(tr * tr - 4.0);
    let mut vs = [[0.0; 4]; 2];
    for (k, lam) in [(0usize, (tr + disc) / 2.0), (1usize, (tr - disc) / 2.0)] {
        let r1 = [fin.0[0][1], lam - fin.0[0][0]];
        let r2 = [lam - fin.0[1][1], fin.0[1][0]];
        let xi = if math::hypot(r1[0], r1[1]) >= math::hypot(r2[0], r2[1]) { r1 } else { r2 };
        // Null point of the base plane.
        let n = [
            (xi[0] * xi[0] + xi[1] * xi[1]) / 2.0,
            (xi[0] * xi[0] - xi[1] * xi[1]) / 2.0,
            xi[0] * xi[1],
        ];
        // Lift to a 4-dimensional eigenvector of the projective image; the
        // action is quadratic in the 2x2 picture, eigenvalue lam^2.
        let ev = lam * lam;
        let denom = ev - p.m[3][3];
        let mut num = 0.0;
        for i in 0..3 {
            num += p.m[3][i] * n[i];
        }
        vs[k] = [n[0], n[1], n[2], num / denom];
    }
    Ok(Line { v: vs })
}

/// Everything a `(2,m,m)` build produces.
#[derive(Clone, Debug)]
pub struct TwoMMReport {
    pub m: u32,
    pub theta_dot: f64,
    /// Circumradius of the right-angled regular m-gon.
    pub circumradius: f64,
    /// Infinitesimal cone angle of the meridian, measured from the
    /// holonomy; negative for `theta_dot > 0`.
    pub phi: f64,
    /// `-sqrt(2) m theta_dot sqrt(cot^2(pi/m) - 1)`, the closed form that
    /// `phi` is checked against.
    pub phi_closed_form: f64,
    /// Named residuals of every displayed glueing/holonomy equation.
    pub residuals: Vec<(String, f64)>,
    /// Strict orderings of the singular-locus lifts (both clauses).
    pub placement_between_l1_l3: bool,
    pub placement_l4_between: bool,
    /// The half-pipe holonomy with generators `alpha, beta~, mu`.
    pub hp_rep: Representation,
    /// Its real part and deformation cocycle.
    pub base: RealRep,
    pub cocycle: Cocycle,
}

impl TwoMMReport {
    pub fn worst_residual(&self) -> f64 {
        self.residuals.iter().map(|(_, r)| *r).fold(0.0, f64::max)
    }

    /// The full meridian turn `mu^2 = alpha^-m beta~^m`; its infinitesimal
    /// translation is the cone-angle rate `phi`.
    pub fn meridian_word() -> Word {
        word(&[3, 3])
    }
}

/// The assembled presentation on `alpha, beta~, mu`: the displayed glueing
/// equations with the glueing maps eliminated through `t = (beta~ alpha)^-1`
/// and `g_B = t g_A`, `g_D = mu g_A`, `g_C = alpha^-1 mu alpha t g_A`.
///
/// The further reductions to `(beta~ alpha)^2 = beta~^m mu^-1 alpha^-1 mu
/// alpha` and `mu^2 = alpha^-m beta~^m` use the commutation of
/// infinitesimals, which holds at the half-pipe point but not as a group
/// identity; using them as relators would add a spurious component to the
/// representation variety (with a parabolic meridian) on which no cone
/// structure lives. The unreduced set below is what the regeneration
/// Newton projects onto.
fn presentation_2mm(m: u32) -> Presentation {
    let m = m as usize;
    let rep = |letter: i32, count: usize| core::iter::repeat(letter).take(count);
    // order-2 fiber equations (four faces around the exceptional fiber):
    // beta~ mu^-1 alpha mu beta~^{1-m} alpha
    let mut w1 = vec![2, -3, 1, 3];
    w1.extend(rep(-2, m - 1));
    w1.push(1);
    // mu beta~ mu^-1 alpha^{1-m} beta~ alpha
    let mut w2 = vec![3, 2, -3];
    w2.extend(rep(-1, m - 1));
    w2.extend([2, 1]);
    // mu beta~^{1-m} alpha beta~ mu^-1 alpha
    let mut w3 = vec![3];
    w3.extend(rep(-2, m - 1));
    w3.extend([1, 2, -3, 1]);
    // beta~ alpha mu beta~ mu^-1 alpha^{1-m}
    let mut w4 = vec![2, 1, 3, 2, -3];
    w4.extend(rep(-1, m - 1));
    // meridian-conjugacy equations (the two non-trivial ones):
    // beta~ mu beta~^-1 alpha^-1 beta~^m mu^-1 alpha^{1-m}
    let mut w5 = vec![2, 3, -2, -1];
    w5.extend(rep(2, m));
    w5.push(-3);
    w5.extend(rep(-1, m - 1));
    // mu beta~^{1-m} alpha^m mu beta~^-1 mu^-1 alpha^-1 mu^-1 alpha
    let mut w6 = vec![3];
    w6.extend(rep(-2, m - 1));
    w6.extend(rep(1, m));
    w6.extend([3, -2, -3, -1, -3, 1]);
    Presentation::new(
        vec![String::from("alpha"), String::from("beta~"), String::from("mu")],
        vec![w1, w2, w3, w4, w5, w6],
    )
    .expect("valid words")
}

/// The two reduced relations plus the meridian square, valid at the
/// half-pipe point; reported as residuals of the build.
fn reduced_relations(m: u32) -> Vec<(&'static str, Word)> {
    let m = m as usize;
    let mut r1 = vec![2, 1, 2, 1, -1, -3, 1, 3];
    r1.extend(core::iter::repeat(-2).take(m));
    let mut r2 = vec![1, 2, 1, 2, -2, 3, 2, -3];
    r2.extend(core::iter::repeat(-1).take(m));
    let mut r3 = vec![3, 3];
    r3.extend(core::iter::repeat(-2).take(m));
    r3.extend(core::iter::repeat(1).take(m));
    vec![("reduced_ba", r1), ("reduced_ab", r2), ("meridian_square", r3)]
}

/// Builds the singular half-pipe structure for `m >= 5` with infinitesimal
/// rotation rate `theta_dot > 0`, optionally breaking the rate symmetry by
/// the factor `1 + rate_break` on `alpha` (used to certify that the
/// equations are non-vacuous).
pub fn build_2mm_with_break(m: u32, theta_dot: f64, rate_break: f64) -> Result<TwoMMReport> {
    if m < 5 {
        return Err(Error::RightAngleImpossible { m });
    }
    if theta_dot <= 0.0 {
        return Err(Error::Precondition("theta_dot must be positive"));
    }
    let cot = 1.0 / math::tan(PI / m as f64);
    let circumradius = math::acosh(cot);
    let dist_pq = math::acosh(cot * cot);
    let tag = AlgebraTag::half_pipe();

    let theta_alpha = theta_dot * (1.0 + rate_break);
    let a_fin = rotation(2.0 * PI / m as f64);
    let alpha = HPIsometry::new(a_fin, j_rot().scale(theta_alpha))?.to_group_elem()?;
    // The finite part of the glueing map g_A is the swapping symmetry: the
    // pi-rotation about the midpoint of [p, qt].
    let t_mid = translation(dist_pq / 2.0, PI / m as f64);
    let sym = t_mid * rotation(PI) * t_mid.inv().expect("translation invertible");
    let alpha_beta_rate = HPIsometry::new(a_fin, j_rot().scale(theta_dot))?.to_group_elem()?;
    let m_us = m as usize;
    let pres = presentation_2mm(m);

    // g_A also carries an infinitesimal part c: at first order the second
    // rotation center drifts off the symmetric position, and the two
    // reduced relations pin that drift down. Solve for c by Gauss-Newton
    // on the relator residuals; the meridian-square relation is exact by
    // construction of mu.
    let assemble = |c: &[f64]| -> Result<(GroupElem, GroupElem, GroupElem)> {
        let g_a = GroupElem::from_parts(sym, sym * sl2(c), tag)?;
        let beta_tilde = g_a * alpha_beta_rate * g_a.inverse();
        let alpha_m = ge_pow(&alpha, m_us);
        let beta_m = ge_pow(&beta_tilde, m_us);
        let mu_sq = alpha_m.inverse() * beta_m;
        let h = HPIsometry::from_group_elem(&mu_sq)?;
        let fin_err = (h.finite - Mat2::identity())
            .max_abs()
            .min((h.finite + Mat2::identity()).max_abs());
        if fin_err > 1e-9 {
            return Err(Error::ConstructionFailed {
                equation: String::from("mu^2 finite part"),
                residual: fin_err,
            });
        }
        let mu = HPIsometry::infinitesimal(h.inf.scale(0.5))?.to_group_elem()?;
        Ok((g_a, beta_tilde, mu))
    };
    let relator_entries = |c: &[f64]| -> Vec<f64> {
        let mut out = Vec::new();
        match assemble(c) {
            Ok((_, beta_tilde, mu)) => {
                let rep = Representation::new(
                    pres.clone(),
                    tag,
                    Dim::Three,
                    vec![alpha, beta_tilde, mu],
                )
                .expect("sized");
                for r in &pres.relators {
                    let g = rep.evaluate_word(r).expect("validated");
                    let sign = if g.real_part().tr() >= 0.0 { 1.0 } else { -1.0 };
                    for i in 0..2 {
                        for k in 0..2 {
                            let target = if i == k { sign } else { 0.0 };
                            out.push(g.entry(i, k).re - target);
                            out.push(g.entry(i, k).im);
                        }
                    }
                }
            }
            Err(_) => out.extend(core::iter::repeat(1.0).take(8 * pres.relators.len())),
        }
        out
    };
    let cfg = NewtonCfg { max_iter: 60, ..NewtonCfg::default() };
    let mut res_fn = |x: &[f64]| relator_entries(x);
    let (c_sol, _, _) = crate::reps::gauss_newton(&mut res_fn, &[0.0; 3], &cfg);

    let (g_a_solved, beta_tilde, mu) = assemble(&c_sol)?;
    let sym_ge = g_a_solved;
    let alpha_m = ge_pow(&alpha, m_us);
    let hp_rep = Representation::new(pres.clone(), tag, Dim::Three, vec![alpha, beta_tilde, mu])?;

    // Residuals: the assembled relators and the reduced relations that
    // hold at the half-pipe point.
    let id = GroupElem::identity(tag);
    let mut residuals: Vec<(String, f64)> = Vec::new();
    let rel_names = [
        "assembled_w1",
        "assembled_w2",
        "assembled_w3",
        "assembled_w4",
        "assembled_w5",
        "assembled_w6",
    ];
    for (name, r) in rel_names.iter().zip(pres.relators.iter()) {
        residuals.push((String::from(*name), hp_rep.evaluate_word(r)?.dist(&id)));
    }
    for (name, r) in reduced_relations(m) {
        residuals.push((String::from(name), hp_rep.evaluate_word(&r)?.dist(&id)));
    }

    // Glueing maps from the symmetric choice, and the displayed equations.
    let g_a = sym_ge;
    let beta = g_a.inverse() * beta_tilde * g_a;
    let g_b = (beta_tilde * alpha).inverse() * g_a;
    let g_d = mu * g_a;
    let g_c = alpha.inverse() * g_d * beta.inverse();
    let beta_mi = ge_pow(&beta, m_us).inverse();
    let alpha_mi = alpha_m.inverse();

    let eqs: Vec<(&str, GroupElem)> = vec![
        ("order2_fiber_a", g_a * g_c.inverse() * g_d * beta_mi * g_b.inverse()),
        ("order2_fiber_b", g_d * g_c.inverse() * alpha_mi * g_a * g_b.inverse()),
        ("order2_fiber_c", g_d * beta_mi * g_b.inverse() * g_a * g_c.inverse()),
        ("order2_fiber_d", g_a * g_b.inverse() * g_d * g_c.inverse() * alpha_mi),
        (
            "meridians_conjugate_a",
            (g_d * g_a.inverse()) * (alpha * g_c * g_b.inverse() * alpha.inverse()).inverse(),
        ),
        (
            "meridians_conjugate_b",
            (g_d * beta_mi * g_a.inverse() * alpha_m)
                * (alpha * g_c * beta_mi * g_b.inverse() * alpha_m * alpha.inverse()).inverse(),
        ),
        (
            "meridians_conjugate_c",
            (g_a * g_b.inverse() * g_c * g_a.inverse())
                * (alpha_m * g_c * beta_mi * g_b.inverse()).inverse(),
        ),
        (
            "meridians_conjugate_d",
            (g_d * beta_mi * g_b.inverse() * alpha_m * g_c * g_d.inverse())
                * (g_c * g_b.inverse()).inverse(),
        ),
        ("artificial_edge_a", alpha * g_b * beta * g_a.inverse()),
        ("artificial_edge_b", alpha * g_c * beta * g_d.inverse()),
    ];
    for (name, g) in eqs {
        residuals.push((String::from(name), g.dist(&id)));
    }

    // Rate relation 2 theta_dot_{ba} = m cosh(d(q,r)) theta_dot_beta, with
    // theta_dot_{ba} the rotation rate of beta~ alpha at its fixed point
    // and cosh(d(q,r)) = cot(pi/m). A degenerate fixed point (possible for
    // a deliberately broken build) counts as an unbounded residual.
    let ba = HPIsometry::from_group_elem(&(beta_tilde * alpha))?;
    let rate_res = elliptic_fixed_point(&ba.finite)
        .and_then(|center| crate::hp::rot(ba.inf, center))
        .map(|rate_ba| math::abs(2.0 * rate_ba - m as f64 * cot * theta_dot))
        .unwrap_or(f64::INFINITY);
    residuals.push((String::from("rate_relation"), rate_res));

    // Infinitesimal cone angle, measured and closed form.
    let phi = infinitesimal_cone_angle(&hp_rep, &TwoMMReport::meridian_word())?;
    let phi_closed_form = -math::sqrt(2.0) * m as f64 * theta_dot * math::sqrt(cot * cot - 1.0);
    residuals.push((String::from("phi_vs_closed_form"), math::abs(phi - phi_closed_form)));

    // Line placement: the strict orderings of the singular-locus lifts.
    // For a deliberately broken build the configuration may degenerate, in
    // which case the placement simply reports false.
    let placement = || -> Result<(bool, bool)> {
        let lambda = alpha.inverse() * beta_tilde.inverse() * alpha * beta_tilde;
        let l2 = hp_translation_axis(&lambda)?;
        let l1 = l2.transported(&(beta_tilde * alpha).to_projective4());
        let l3 = l2.transported(
            &(alpha.inverse() * mu * alpha * (beta_tilde * alpha).inverse()).to_projective4(),
        );
        let l4 = l1.transported(&alpha.inverse().to_projective4());

        // Sample points along the base geodesic e of L2, around the
        // corner r (the fixed point of beta~ alpha).
        let r3 = {
            let x = elliptic_fixed_point(&ba.finite)?;
            [(x.0[0][0] + x.0[1][1]) / 2.0, (x.0[0][0] - x.0[1][1]) / 2.0, x.0[0][1]]
        };
        let n_plus = l2.base(0);
        let n_minus = l2.base(1);
        let s_r = 0.5 * math::ln(math::abs(eta3(&r3, &n_minus) / eta3(&r3, &n_plus)));
        let mut between_13 = true;
        for k in -6..=6 {
            let s = s_r + 0.35 * k as f64;
            let es = math::exp(s);
            let u = [
                es * n_plus[0] + n_minus[0] / es,
                es * n_plus[1] + n_minus[1] / es,
                es * n_plus[2] + n_minus[2] / es,
            ];
            let f1 = l1.fiber_above(&u)?;
            let f2 = l2.fiber_above(&u)?;
            let f3 = l3.fiber_above(&u)?;
            let lo = f1.min(f3);
            let hi = f1.max(f3);
            if !(f2 > lo + 1e-12 && f2 < hi - 1e-12) {
                between_13 = false;
            }
        }
        // L4 lives over A^-1 e; compare fibers above the crossing point of
        // the two base geodesics.
        let pole_e = l2.base_pole();
        let pole_ae = l4.base_pole();
        let mut xstar = lorentz_cross(&pole_e, &pole_ae);
        if eta3(&xstar, &xstar) >= 0.0 {
            return Err(Error::ConstructionFailed {
                equation: String::from("base geodesics of L2 and L4 do not cross"),
                residual: eta3(&xstar, &xstar),
            });
        }
        if xstar[0] < 0.0 {
            for x in xstar.iter_mut() {
                *x = -*x;
            }
        }
        let f1 = l1.fiber_above(&xstar)?;
        let f2 = l2.fiber_above(&xstar)?;
        let f4 = l4.fiber_above(&xstar)?;
        let l4_between = f4 > f1.min(f2) + 1e-12 && f4 < f1.max(f2) - 1e-12;
        Ok((between_13, l4_between))
    };
    let (between_13, l4_between) = placement().unwrap_or((false, false));

    // The real part and the deformation cocycle z(g) = Y(g) rho_0(g)^-1.
    let base = RealRep::new(
        pres,
        vec![alpha.real_part(), beta_tilde.real_part(), mu.real_part()],
    )?;
    let z = Cocycle::new(
        hp_rep
            .images
            .iter()
            .map(|g| {
                let rinv = g.real_part().inv().expect("det ±1");
                (g.im_part() * rinv).traceless()
            })
            .collect(),
    )?;

    Ok(TwoMMReport {
        m,
        theta_dot,
        circumradius,
        phi,
        phi_closed_form,
        residuals,
        placement_between_l1_l3: between_13,
        placement_l4_between: l4_between,
        hp_rep,
        base,
        cocycle: z,
    })
}

/// The standard build with the rate symmetry intact.
pub fn build_2mm(m: u32, theta_dot: f64) -> Result<TwoMMReport> {
    build_2mm_with_break(m, theta_dot, 0.0)
}

/// Regenerates the transition path from a valid build: hyperbolic cone
/// structures with meridian angle `2 pi - |phi| t` for `t > 0`, AdS
/// structures with meridian mass `phi t` for `t < 0`. Gated on `H^1 = R`
/// for the assembled presentation.
pub fn transition_2mm(report: &TwoMMReport, t_grid: &[f64]) -> Result<TransitionReport> {
    let h1 = h1_dimension(&report.base)?;
    if h1.h1_dim != 1 {
        return Err(Error::SmoothnessGateFailed { h1: h1.h1_dim });
    }
    let cfg = NewtonCfg::default();
    let meridian = TwoMMReport::meridian_word();
    let omega = math::abs(report.phi);
    let mut rows = Vec::new();
    for &t in t_grid {
        let row = if t > 0.0 {
            let constraint = MeridianConstraint { word: meridian.clone(), omega };
            let rep = regenerate_hyp(
                &report.base,
                &report.cocycle,
                t,
                Some(&constraint),
                Dim::Three,
                &cfg,
            )?;
            let g = rep.evaluate_word(&meridian)?.to_projective4();
            let rot = rotation_angle(&g, 1.0)?;
            let angle = 2.0 * PI - math::abs(rot.angle);
            TransitionRow {
                t,
                s: t,
                kind: StructureKind::Hyperbolic,
                residual: rep.relation_residual(),
                invariant: SingularInvariant::ConeAngle(angle),
                rep,
            }
        } else if t < 0.0 {
            let constraint = MeridianConstraint { word: meridian.clone(), omega: report.phi };
            let rep = regenerate_ads(
                &report.base,
                &report.cocycle,
                t,
                Some(&constraint),
                Dim::Three,
                &cfg,
            )?;
            let g = rep.evaluate_word(&meridian)?.to_projective4();
            let axis = pointwise_fixed_line(&g)?;
            let mass = tachyon_mass(&g, -1.0, &axis)?;
            TransitionRow {
                t,
                s: t,
                kind: StructureKind::AntiDeSitter,
                residual: rep.relation_residual(),
                invariant: SingularInvariant::TachyonMass(mass),
                rep,
            }
        } else {
            TransitionRow {
                t: 0.0,
                s: 0.0,
                kind: StructureKind::HalfPipe,
                residual: report.hp_rep.relation_residual(),
                invariant: SingularInvariant::InfConeAngle(report.phi),
                rep: report.hp_rep.clone(),
            }
        };
        rows.push(row);
    }
    Ok(TransitionReport { rows })
}

/// First-order compatibility of both regenerated sides with the source
/// half-pipe representation.
pub fn transition_2mm_limit_checks(report: &TwoMMReport) -> Result<(LimitCheck, LimitCheck)> {
    let cfg = NewtonCfg::default();
    let meridian = TwoMMReport::meridian_word();
    let omega = math::abs(report.phi);
    let hyp: Vec<(f64, Representation)> = [1e-2, 1e-3, 1e-4]
        .iter()
        .map(|&t| {
            let constraint = MeridianConstraint { word: meridian.clone(), omega };
            Ok((
                t,
                regenerate_hyp(
                    &report.base,
                    &report.cocycle,
                    t,
                    Some(&constraint),
                    Dim::Three,
                    &cfg,
                )?,
            ))
        })
        .collect::<Result<_>>()?;
    let ads: Vec<(f64, Representation)> = [-1e-2, -1e-3, -1e-4]
        .iter()
        .map(|&t| {
            let constraint = MeridianConstraint { word: meridian.clone(), omega: report.phi };
            Ok((
                t,
                regenerate_ads(
                    &report.base,
                    &report.cocycle,
                    t,
                    Some(&constraint),
                    Dim::Three,
                    &cfg,
                )?,
            ))
        })
        .collect::<Result<_>>()?;
    Ok((
        rescaled_limit_check(&hyp, &report.hp_rep)?,
        rescaled_limit_check(&ads, &report.hp_rep)?,
    ))
}
