//! The model spaces `X_s` inside projective space, their isometry groups in
//! both the 2x2-over-`B_s` picture and the real projective picture, the
//! explicit isomorphisms between the two, and the rescaling maps that
//! interpolate the family.
//!
//! Conventions: `eta_s = diag(-1, I_{n-1}, sign(s) s^2)` and
//! `X_s = { x : x^T eta_s x < 0 }`. Points are also Hermitian matrices
//! `X = [[x1+x2, x3-x4 k],[x3+x4 k, x1-x2]]` with `<X,X> = -det X`, and a
//! group element acts by `X -> A X A^*`.

use crate::algebra::{AlgebraTag, BElem};
use crate::error::{Error, Result};
use crate::linalg::Mat2;
use crate::math;
use alloc::vec::Vec;

/// Model dimension; the general-n formulas are specialized to 2 and 3.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dim {
    Two,
    Three,
}

impl Dim {
    /// Size of the matrix/vector representation (`n + 1`).
    pub fn size(&self) -> usize {
        match self {
            Dim::Two => 3,
            Dim::Three => 4,
        }
    }
}

/// Diagonal of `eta_s` for the given dimension, padded with ones.
pub fn eta_diag(s: f64, dim: Dim) -> [f64; 4] {
    let last = if s > 0.0 {
        s * s
    } else if s < 0.0 {
        -s * s
    } else {
        0.0
    };
    match dim {
        Dim::Two => [-1.0, 1.0, last, 1.0],
        Dim::Three => [-1.0, 1.0, 1.0, last],
    }
}

// ---------------------------------------------------------------------------
// Group elements.

const PIVOT_TOL: f64 = 1e-12;

/// An element of `PGL^+(2, B_s)`: a 2x2 matrix over `B_s` with
/// `|det|^2 > 0`, stored as the representative with `det = det_sign = ±1`
/// and a canonical choice among the unit-scalar multiples.
#[derive(Clone, Copy, Debug)]
pub struct GroupElem {
    entries: [[BElem; 2]; 2],
    det_sign: f64,
    tag: AlgebraTag,
}

impl GroupElem {
    /// Normalizes arbitrary entries with `|det|^2 > 0` to the canonical
    /// representative.
    pub fn new(entries: [[BElem; 2]; 2]) -> Result<Self> {
        let tag = entries[0][0].tag;
        let det = entries[0][0] * entries[1][1] - entries[0][1] * entries[1][0];
        let sq = det.sqnorm();
        let scale = det.max_abs();
        if sq <= PIVOT_TOL * scale * scale {
            return Err(Error::NotInvertible);
        }
        let det_sign = if tag.s() > 0.0 {
            1.0
        } else if det.re > 0.0 {
            1.0
        } else {
            -1.0
        };
        let lam = det.scale(det_sign).sqrt().map_err(|_| Error::NotInvertible)?;
        let lam_inv = lam.invert().map_err(|_| Error::NotInvertible)?;
        let mut e = entries;
        for row in &mut e {
            for x in row.iter_mut() {
                *x = *x * lam_inv;
            }
        }
        let mut g = GroupElem { entries: e, det_sign, tag };
        g.canonicalize();
        Ok(g)
    }

    pub fn identity(tag: AlgebraTag) -> Self {
        GroupElem {
            entries: [
                [BElem::one(tag), BElem::zero(tag)],
                [BElem::zero(tag), BElem::one(tag)],
            ],
            det_sign: 1.0,
            tag,
        }
    }

    /// Element with real entries (zero imaginary parts).
    pub fn from_real(m: Mat2, tag: AlgebraTag) -> Result<Self> {
        GroupElem::new([
            [BElem::real(m.0[0][0], tag), BElem::real(m.0[0][1], tag)],
            [BElem::real(m.0[1][0], tag), BElem::real(m.0[1][1], tag)],
        ])
    }

    /// Element `re + im*kappa` from a pair of real matrices.
    pub fn from_parts(re: Mat2, im: Mat2, tag: AlgebraTag) -> Result<Self> {
        GroupElem::new([
            [
                BElem::new(re.0[0][0], im.0[0][0], tag),
                BElem::new(re.0[0][1], im.0[0][1], tag),
            ],
            [
                BElem::new(re.0[1][0], im.0[1][0], tag),
                BElem::new(re.0[1][1], im.0[1][1], tag),
            ],
        ])
    }

    pub fn tag(&self) -> AlgebraTag {
        self.tag
    }

    pub fn det_sign(&self) -> f64 {
        self.det_sign
    }

    pub fn entry(&self, i: usize, j: usize) -> BElem {
        self.entries[i][j]
    }

    pub fn real_part(&self) -> Mat2 {
        Mat2([
            [self.entries[0][0].re, self.entries[0][1].re],
            [self.entries[1][0].re, self.entries[1][1].re],
        ])
    }

    pub fn im_part(&self) -> Mat2 {
        Mat2([
            [self.entries[0][0].im, self.entries[0][1].im],
            [self.entries[1][0].im, self.entries[1][1].im],
        ])
    }

    /// Conjugate transpose.
    pub fn star(&self) -> [[BElem; 2]; 2] {
        [
            [self.entries[0][0].conj(), self.entries[1][0].conj()],
            [self.entries[0][1].conj(), self.entries[1][1].conj()],
        ]
    }

    pub fn inverse(&self) -> Self {
        // det = det_sign (real), so inv = adj * det_sign.
        let s = self.det_sign;
        let adj = [
            [self.entries[1][1].scale(s), -self.entries[0][1].scale(s)],
            [-self.entries[1][0].scale(s), self.entries[0][0].scale(s)],
        ];
        GroupElem::new(adj).expect("inverse of a group element stays in the group")
    }

    /// Entrywise application of the algebra isomorphism `B_{sign s} -> B_s`.
    pub fn rescale_to(&self, s: f64) -> Result<Self> {
        let mut e = self.entries;
        for row in &mut e {
            for x in row.iter_mut() {
                *x = x.rescale_to(s)?;
            }
        }
        GroupElem::new(e)
    }

    /// Forgets the imaginary part; valid when the element is close to real.
    pub fn retag(&self, tag: AlgebraTag) -> Result<Self> {
        GroupElem::from_parts(self.real_part(), self.im_part(), tag)
    }

    fn canonicalize(&mut self) {
        let units: Vec<BElem> = self
            .tag
            .unit_scalars()
            .into_iter()
            .flatten()
            .collect();
        // Pivot: first entry with |sqnorm| above tolerance; unit-scalar
        // multiplication preserves |sqnorm| so the pivot index is common to
        // all candidates.
        let flat = [
            self.entries[0][0],
            self.entries[0][1],
            self.entries[1][0],
            self.entries[1][1],
        ];
        let pivot = flat.iter().position(|e| math::abs(e.sqnorm()) > PIVOT_TOL);
        let key = |u: &BElem| -> [f64; 8] {
            match pivot {
                Some(p) => {
                    let e = flat[p] * *u;
                    [e.re, e.im, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]
                }
                None => {
                    let mut k = [0.0; 8];
                    for (i, e) in flat.iter().enumerate() {
                        let x = *e * *u;
                        k[2 * i] = x.re;
                        k[2 * i + 1] = x.im;
                    }
                    k
                }
            }
        };
        let lex_gt = |a: &[f64; 8], b: &[f64; 8]| -> bool {
            for (x, y) in a.iter().zip(b.iter()) {
                if x > y {
                    return true;
                }
                if x < y {
                    return false;
                }
            }
            false
        };
        let mut best = units[0];
        let mut best_key = key(&units[0]);
        for u in &units[1..] {
            let k = key(u);
            if lex_gt(&k, &best_key) {
                best = *u;
                best_key = k;
            }
        }
        for row in &mut self.entries {
            for x in row.iter_mut() {
                *x = *x * best;
            }
        }
    }

    /// Group distance: `min` over unit scalars `u` of the max-abs entry
    /// difference of `self - u * other`.
    pub fn dist(&self, other: &GroupElem) -> f64 {
        assert!(
            self.tag.s() == other.tag.s(),
            "algebra tag mismatch: s = {} vs s = {}",
            self.tag.s(),
            other.tag.s()
        );
        let mut best = f64::INFINITY;
        for u in self.tag.unit_scalars().into_iter().flatten() {
            let mut m = 0.0f64;
            for i in 0..2 {
                for j in 0..2 {
                    let d = self.entries[i][j] - other.entries[i][j] * u;
                    m = m.max(d.max_abs());
                }
            }
            best = best.min(m);
        }
        best
    }

    pub fn dist_to_identity(&self) -> f64 {
        self.dist(&GroupElem::identity(self.tag))
    }

    /// Action `X -> A X A^*` on a model point.
    pub fn act(&self, x: &ModelPoint) -> Result<ModelPoint> {
        if self.tag.s() != x.tag.s() {
            return Err(Error::TagMismatch { left: self.tag.s(), right: x.tag.s() });
        }
        let h = x.herm();
        let a = &self.entries;
        let astar = self.star();
        // r = a * h * astar
        let mut tmp = [[BElem::zero(self.tag); 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                tmp[i][j] = a[i][0] * h[0][j] + a[i][1] * h[1][j];
            }
        }
        let mut r = [[BElem::zero(self.tag); 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                r[i][j] = tmp[i][0] * astar[0][j] + tmp[i][1] * astar[1][j];
            }
        }
        ModelPoint::from_herm(r, x.tag)
    }

    /// The matrix of `X -> A X A^*` in `(x1, x2, x3, x4)` coordinates,
    /// computed column by column on the basis Hermitian matrices. A
    /// homomorphism up to sign.
    pub fn to_projective4(&self) -> ProjMat {
        let mut m = ProjMat::identity(Dim::Three);
        for j in 0..4 {
            let mut coords = [0.0; 4];
            coords[j] = 1.0;
            let p = ModelPoint::new(coords, self.tag);
            let image = self.act(&p).expect("basis point action");
            for i in 0..4 {
                m.m[i][j] = image.x[i];
            }
        }
        m
    }
}

impl core::ops::Mul for GroupElem {
    type Output = GroupElem;
    fn mul(self, rhs: GroupElem) -> GroupElem {
        let a = &self.entries;
        let b = &rhs.entries;
        let mut e = [[BElem::zero(self.tag); 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                e[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        GroupElem::new(e).expect("product of group elements stays in the group")
    }
}

// ---------------------------------------------------------------------------
// Model points.

/// Classification of a nonzero projective vector against `eta_s`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PointClass {
    Interior,
    Ideal,
    Exterior,
}

/// A point of `X_s` (or its complement) as a real 4-vector up to scale,
/// doubling as the Hermitian matrix `[[x1+x2, x3-x4 k],[x3+x4 k, x1-x2]]`.
#[derive(Clone, Copy, Debug)]
pub struct ModelPoint {
    pub x: [f64; 4],
    pub tag: AlgebraTag,
}

impl ModelPoint {
    pub fn new(x: [f64; 4], tag: AlgebraTag) -> Self {
        ModelPoint { x, tag }
    }

    /// The Hermitian 2x2 matrix with these coordinates.
    pub fn herm(&self) -> [[BElem; 2]; 2] {
        let t = self.tag;
        [
            [
                BElem::real(self.x[0] + self.x[1], t),
                BElem::new(self.x[2], -self.x[3], t),
            ],
            [
                BElem::new(self.x[2], self.x[3], t),
                BElem::real(self.x[0] - self.x[1], t),
            ],
        ]
    }

    /// Reads coordinates back from a (numerically) Hermitian matrix.
    pub fn from_herm(h: [[BElem; 2]; 2], tag: AlgebraTag) -> Result<Self> {
        let scale = h
            .iter()
            .flatten()
            .fold(0.0f64, |m, e| m.max(e.max_abs()));
        let herm_err = math::abs(h[0][0].im)
            .max(math::abs(h[1][1].im))
            .max(math::abs(h[0][1].re - h[1][0].re))
            .max(math::abs(h[0][1].im + h[1][0].im));
        if herm_err > 1e-9 * (1.0 + scale) {
            return Err(Error::Precondition("matrix is not Hermitian"));
        }
        Ok(ModelPoint::new(
            [
                (h[0][0].re + h[1][1].re) / 2.0,
                (h[0][0].re - h[1][1].re) / 2.0,
                h[1][0].re,
                h[1][0].im,
            ],
            tag,
        ))
    }

    /// `<X, Y> = -x1 y1 + x2 y2 + x3 y3 - kappa^2 x4 y4`; satisfies
    /// `<X, X> = -det X`.
    pub fn herm_inner(&self, other: &ModelPoint) -> Result<f64> {
        if self.tag.s() != other.tag.s() {
            return Err(Error::TagMismatch { left: self.tag.s(), right: other.tag.s() });
        }
        let k2 = self.tag.kappa_sq();
        Ok(-self.x[0] * other.x[0] + self.x[1] * other.x[1] + self.x[2] * other.x[2]
            - k2 * self.x[3] * other.x[3])
    }

    pub fn norm_sq_euclid(&self) -> f64 {
        self.x.iter().map(|v| v * v).sum()
    }

    /// Sign of `x^T eta_s x` with an ideal band of width
    /// `1e-12 * |x|^2`.
    pub fn classify(&self) -> Result<PointClass> {
        let n2 = self.norm_sq_euclid();
        if n2 == 0.0 {
            return Err(Error::Precondition("zero vector has no projective class"));
        }
        let q = self.herm_inner(self)?;
        if math::abs(q) <= 1e-12 * n2 {
            Ok(PointClass::Ideal)
        } else if q < 0.0 {
            Ok(PointClass::Interior)
        } else {
            Ok(PointClass::Exterior)
        }
    }

    /// Representative on the hyperboloid `x^T eta_s x = -1` with `x1 > 0`.
    pub fn normalize_hyperboloid(&self) -> Result<Self> {
        if self.classify()? != PointClass::Interior {
            return Err(Error::NotInterior);
        }
        let q = self.herm_inner(self)?;
        let c = 1.0 / math::sqrt(-q);
        let c = if self.x[0] * c < 0.0 { -c } else { c };
        Ok(ModelPoint::new(
            [self.x[0] * c, self.x[1] * c, self.x[2] * c, self.x[3] * c],
            self.tag,
        ))
    }
}

// ---------------------------------------------------------------------------
// Real projective matrices.

/// An element of `PGL(n+1, R)` for `n = 2, 3`, stored as a full 4x4 array
/// whose inactive block is the identity.
#[derive(Clone, Copy, Debug)]
pub struct ProjMat {
    pub dim: Dim,
    pub m: [[f64; 4]; 4],
}

impl ProjMat {
    pub fn identity(dim: Dim) -> Self {
        let mut m = [[0.0; 4]; 4];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 1.0;
        }
        ProjMat { dim, m }
    }

    pub fn from_3x3(a: [[f64; 3]; 3]) -> Self {
        let mut m = ProjMat::identity(Dim::Two);
        for i in 0..3 {
            for j in 0..3 {
                m.m[i][j] = a[i][j];
            }
        }
        m
    }

    pub fn from_4x4(a: [[f64; 4]; 4]) -> Self {
        ProjMat { dim: Dim::Three, m: a }
    }

    pub fn mul(&self, other: &ProjMat) -> ProjMat {
        assert_eq!(self.dim, other.dim, "projective dimension mismatch");
        let n = self.dim.size();
        let mut out = ProjMat::identity(self.dim);
        for i in 0..n {
            for j in 0..n {
                let mut s = 0.0;
                for k in 0..n {
                    s += self.m[i][k] * other.m[k][j];
                }
                out.m[i][j] = s;
            }
        }
        out
    }

    pub fn transpose(&self) -> ProjMat {
        let n = self.dim.size();
        let mut out = ProjMat::identity(self.dim);
        for i in 0..n {
            for j in 0..n {
                out.m[i][j] = self.m[j][i];
            }
        }
        out
    }

    pub fn apply(&self, x: &[f64; 4]) -> [f64; 4] {
        let n = self.dim.size();
        let mut y = [0.0; 4];
        for i in 0..n {
            for j in 0..n {
                y[i] += self.m[i][j] * x[j];
            }
        }
        if self.dim == Dim::Two {
            y[3] = x[3];
        }
        y
    }

    pub fn max_abs(&self) -> f64 {
        let n = self.dim.size();
        let mut v = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                v = v.max(math::abs(self.m[i][j]));
            }
        }
        v
    }

    /// `max` entry difference, minimized over the global sign.
    pub fn dist_up_to_sign(&self, other: &ProjMat) -> f64 {
        let n = self.dim.size();
        let mut plus = 0.0f64;
        let mut minus = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                plus = plus.max(math::abs(self.m[i][j] - other.m[i][j]));
                minus = minus.max(math::abs(self.m[i][j] + other.m[i][j]));
            }
        }
        plus.min(minus)
    }

    /// `max` entry residual of `m^T eta_s m - eta_s` (how far from being an
    /// isometry of `X_s`).
    pub fn eta_residual(&self, s: f64) -> f64 {
        let n = self.dim.size();
        let eta = eta_diag(s, self.dim);
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                let mut v = 0.0;
                for k in 0..n {
                    v += self.m[k][i] * eta[k] * self.m[k][j];
                }
                let target = if i == j { eta[i] } else { 0.0 };
                worst = worst.max(math::abs(v - target));
            }
        }
        worst
    }
}

/// The rescaling map `r_s = diag(I_n, 1/|s|)`.
pub fn rescaling_matrix(s: f64, dim: Dim) -> Result<ProjMat> {
    if s == 0.0 {
        return Err(Error::InvalidRescale);
    }
    let mut m = ProjMat::identity(dim);
    let last = dim.size() - 1;
    m.m[last][last] = 1.0 / math::abs(s);
    Ok(m)
}

/// Conjugation `r_s m r_s^-1`: the last row scales by `1/|s|`, the last
/// column by `|s|`.
pub fn conjugate_by_rescaling(m: &ProjMat, s: f64) -> Result<ProjMat> {
    if s == 0.0 {
        return Err(Error::InvalidRescale);
    }
    let a = math::abs(s);
    let n = m.dim.size();
    let last = n - 1;
    let mut out = *m;
    for j in 0..n {
        out.m[last][j] /= a;
    }
    for i in 0..n {
        out.m[i][last] *= a;
    }
    Ok(out)
}

/// The printed bottom-row formula `v(A, B)` of the half-pipe isomorphism
/// `PGL(2, R + R sigma) -> G_HP^+`: the image of `A + B sigma` is
/// `[[Phi(A), 0], [v(A,B), det A]]`. Used as an independent oracle for
/// [`GroupElem::to_projective4`] at `s = 0`.
pub fn hp_v_row(a_m: Mat2, b_m: Mat2) -> [f64; 3] {
    let [[a, b], [c, d]] = a_m.0;
    let [[e, f], [g, h]] = b_m.0;
    [
        -c * e - d * f + a * g + b * h,
        -c * e + d * f + a * g - b * h,
        -c * f - d * e + a * h + b * g,
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::Rng;
    use approx::assert_abs_diff_eq;

    fn c_tag() -> AlgebraTag {
        AlgebraTag::hyperbolic()
    }

    #[test]
    fn herm_inner_examples() {
        let t = c_tag();
        let x = ModelPoint::new([1.0, 0.0, 0.0, 0.0], t);
        assert_abs_diff_eq!(x.herm_inner(&x).unwrap(), -1.0);
        let y = ModelPoint::new([0.0, 1.0, 0.0, 0.0], t);
        assert_abs_diff_eq!(y.herm_inner(&y).unwrap(), 1.0);
        // [[2,0],[0,0]] has coords (1,1,0,0): det = 0.
        let z = ModelPoint::new([1.0, 1.0, 0.0, 0.0], t);
        assert_abs_diff_eq!(z.herm_inner(&z).unwrap(), 0.0);
    }

    #[test]
    fn act_identity_and_diag() {
        let t = c_tag();
        let x = ModelPoint::new([0.3, 0.1, -0.2, 0.05], t);
        let id = GroupElem::identity(t);
        let y = id.act(&x).unwrap();
        for i in 0..4 {
            assert_abs_diff_eq!(y.x[i], x.x[i], epsilon = 1e-15);
        }
        // A = diag(e^{u/2}, e^{-u/2}) on I gives diag(e^u, e^{-u}).
        let u = 0.8f64;
        let a = GroupElem::from_real(
            Mat2::new(math::exp(u / 2.0), 0.0, 0.0, math::exp(-u / 2.0)),
            t,
        )
        .unwrap();
        let y = a.act(&ModelPoint::new([1.0, 0.0, 0.0, 0.0], t)).unwrap();
        assert_abs_diff_eq!(y.x[0], math::cosh(u), epsilon = 1e-12);
        assert_abs_diff_eq!(y.x[1], math::sinh(u), epsilon = 1e-12);
        assert_abs_diff_eq!(y.x[2], 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(y.x[3], 0.0, epsilon = 1e-12);
    }

    #[test]
    fn act_infinitesimal_rotation_moves_fiber() {
        // s = 0, A = 1 + a sigma with a the unit rotation generator maps
        // (1,0,0,0) to (1,0,0,1).
        let t = AlgebraTag::half_pipe();
        let a = GroupElem::from_parts(
            Mat2::identity(),
            Mat2::new(0.0, -0.5, 0.5, 0.0),
            t,
        )
        .unwrap();
        let y = a.act(&ModelPoint::new([1.0, 0.0, 0.0, 0.0], t)).unwrap();
        assert_abs_diff_eq!(y.x[0], 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(y.x[1], 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!(y.x[2], 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!(y.x[3], 1.0, epsilon = 1e-14);
    }

    fn random_group_elem(rng: &mut Rng, tag: AlgebraTag) -> GroupElem {
        // exp of a random traceless matrix (real + imaginary part), which
        // always has |det|^2 > 0.
        loop {
            let re = Mat2::new(rng.sym(0.8), rng.sym(0.8), rng.sym(0.8), 0.0);
            let re = Mat2::new(re.0[0][0], re.0[0][1], re.0[1][0], -re.0[0][0]);
            let im = Mat2::new(rng.sym(0.8), rng.sym(0.8), rng.sym(0.8), 0.0);
            let im = Mat2::new(im.0[0][0], im.0[0][1], im.0[1][0], -im.0[0][0]);
            // crude exponential: I + m + m^2/2 is not in the group; instead
            // exponentiate the real part and add a sigma/kappa part by
            // multiplication so the result is exactly a group element.
            let g = GroupElem::from_real(crate::linalg::exp_sl2(re), tag);
            let h = GroupElem::from_parts(Mat2::identity(), im.scale(0.3), tag);
            match (g, h) {
                (Ok(g), Ok(h)) => return g * h,
                _ => continue,
            }
        }
    }

    #[test]
    fn projective_image_preserves_eta() {
        let mut rng = Rng::new(42);
        for s in [1.0, 0.5, -0.5, -1.0] {
            let tag = AlgebraTag::new(s);
            for _ in 0..50 {
                let g = random_group_elem(&mut rng, tag);
                let p = g.to_projective4();
                assert!(
                    p.eta_residual(s) < 1e-10,
                    "eta residual too big at s = {s}: {}",
                    p.eta_residual(s)
                );
            }
        }
    }

    #[test]
    fn projective_image_block_form_and_v_row_at_s0() {
        let tag = AlgebraTag::half_pipe();
        let mut rng = Rng::new(7);
        for _ in 0..50 {
            let g = random_group_elem(&mut rng, tag);
            let p = g.to_projective4();
            // Upper-right block vanishes; bottom-right is det(A) = ±1.
            for i in 0..3 {
                assert_abs_diff_eq!(p.m[i][3], 0.0, epsilon = 1e-12);
            }
            assert_abs_diff_eq!(math::abs(p.m[3][3]), 1.0, epsilon = 1e-12);
            // Printed bottom-row formula. The normalized representative has
            // det(A + B sigma) = ±1 which forces det(Re) = ±1.
            let a = g.real_part();
            let b = g.im_part();
            let v = hp_v_row(a, b);
            for j in 0..3 {
                assert_abs_diff_eq!(p.m[3][j], v[j], epsilon = 1e-11);
            }
            assert_abs_diff_eq!(p.m[3][3], a.det(), epsilon = 1e-11);
        }
    }

    #[test]
    fn projective_image_is_homomorphism_up_to_sign() {
        let mut rng = Rng::new(9);
        for s in [1.0, 0.5, -0.5, -1.0, 0.0] {
            let tag = AlgebraTag::new(s);
            for _ in 0..30 {
                let g = random_group_elem(&mut rng, tag);
                let h = random_group_elem(&mut rng, tag);
                let lhs = (g * h).to_projective4();
                let rhs = g.to_projective4().mul(&h.to_projective4());
                assert!(lhs.dist_up_to_sign(&rhs) < 1e-10);
            }
        }
    }

    #[test]
    fn rescaling_commutative_square() {
        // to_projective4(rescale(A)) = ± r_s to_projective4(A) r_s^-1.
        let mut rng = Rng::new(31);
        for s in [0.5, 2.0, -0.5, -2.0] {
            let src = AlgebraTag::new(if s > 0.0 { 1.0 } else { -1.0 });
            for _ in 0..30 {
                let g = random_group_elem(&mut rng, src);
                let lhs = g.rescale_to(s).unwrap().to_projective4();
                let rhs = conjugate_by_rescaling(&g.to_projective4(), s).unwrap();
                assert!(lhs.dist_up_to_sign(&rhs) < 1e-9);
            }
        }
    }

    #[test]
    fn act_preserves_inner_and_class() {
        let mut rng = Rng::new(4);
        for s in [1.0, -1.0, 0.5, -0.5] {
            let tag = AlgebraTag::new(s);
            for _ in 0..100 {
                let g = random_group_elem(&mut rng, tag);
                let x = ModelPoint::new(
                    [1.0 + rng.next_f64(), rng.sym(0.9), rng.sym(0.9), rng.sym(0.9)],
                    tag,
                );
                let y = ModelPoint::new(
                    [1.0 + rng.next_f64(), rng.sym(0.9), rng.sym(0.9), rng.sym(0.9)],
                    tag,
                );
                let before = x.herm_inner(&y).unwrap();
                let after = g.act(&x).unwrap().herm_inner(&g.act(&y).unwrap()).unwrap();
                assert_abs_diff_eq!(before, after, epsilon = 1e-10 * (1.0 + before.abs()));
                if let (Ok(c0), Ok(c1)) = (x.classify(), g.act(&x).unwrap().classify()) {
                    // The ideal band can flip under floating point, skip it.
                    if c0 != PointClass::Ideal {
                        assert_eq!(c0, c1);
                    }
                }
            }
        }
    }

    #[test]
    fn rescaling_matrices() {
        let m = rescaling_matrix(0.5, Dim::Three).unwrap();
        assert_abs_diff_eq!(m.m[3][3], 2.0);
        let m = rescaling_matrix(-2.0, Dim::Three).unwrap();
        assert_abs_diff_eq!(m.m[3][3], 0.5);
        let m = rescaling_matrix(1.0, Dim::Two).unwrap();
        assert!(m.dist_up_to_sign(&ProjMat::identity(Dim::Two)) == 0.0);
        assert!(rescaling_matrix(0.0, Dim::Two).is_err());
    }

    #[test]
    fn conjugate_by_rescaling_matches_torus_generator() {
        // The printed rescaled family for the singular-torus generator.
        let t = 0.37;
        let c = math::sqrt(1.0 + t * t);
        let b = ProjMat::from_3x3([[c, 0.0, t], [0.0, 1.0, 0.0], [t, 0.0, c]]);
        let r = conjugate_by_rescaling(&b, t).unwrap();
        let expect = ProjMat::from_3x3([[c, 0.0, t * t], [0.0, 1.0, 0.0], [1.0, 0.0, c]]);
        assert!(r.dist_up_to_sign(&expect) < 1e-14);
        // Identity is fixed by any rescaling.
        let id = ProjMat::identity(Dim::Three);
        assert!(conjugate_by_rescaling(&id, -0.3).unwrap().dist_up_to_sign(&id) < 1e-15);
    }

    #[test]
    fn classify_and_normalize() {
        let t = c_tag();
        assert_eq!(
            ModelPoint::new([1.0, 0.0, 0.0, 0.0], t).classify().unwrap(),
            PointClass::Interior
        );
        assert_eq!(
            ModelPoint::new([1.0, 1.0, 0.0, 0.0], t).classify().unwrap(),
            PointClass::Ideal
        );
        // s = -1: the fourth direction is time-like, (0,0,0,1) is interior.
        let ads = AlgebraTag::anti_de_sitter();
        assert_eq!(
            ModelPoint::new([0.0, 0.0, 0.0, 1.0], ads).classify().unwrap(),
            PointClass::Interior
        );
        let n = ModelPoint::new([2.0, 0.0, 0.0, 0.0], t)
            .normalize_hyperboloid()
            .unwrap();
        assert_abs_diff_eq!(n.x[0], 1.0, epsilon = 1e-15);
        assert!(ModelPoint::new([1.0, 0.0, 0.0, 1.0], t)
            .normalize_hyperboloid()
            .is_err());
        let n = ModelPoint::new([2.0, 1.0, 0.0, 0.0], t)
            .normalize_hyperboloid()
            .unwrap();
        // q = -4 + 1 = -3.
        assert_abs_diff_eq!(n.x[0], 2.0 / math::sqrt(3.0), epsilon = 1e-14);
    }

    #[test]
    fn canonical_representative_is_stable() {
        // Multiplying by any unit scalar does not change the stored
        // representative.
        let mut rng = Rng::new(12);
        for s in [1.0, 0.0, -1.0, -0.5] {
            let tag = AlgebraTag::new(s);
            for _ in 0..50 {
                let g = random_group_elem(&mut rng, tag);
                for u in tag.unit_scalars().into_iter().flatten() {
                    let mut e = [[BElem::zero(tag); 2]; 2];
                    for i in 0..2 {
                        for j in 0..2 {
                            e[i][j] = g.entry(i, j) * u;
                        }
                    }
                    let h = GroupElem::new(e).unwrap();
                    assert!(g.dist(&h) < 1e-12);
                    // And the canonical entries agree exactly-ish entrywise.
                    for i in 0..2 {
                        for j in 0..2 {
                            assert_abs_diff_eq!(
                                g.entry(i, j).re,
                                h.entry(i, j).re,
                                epsilon = 1e-12
                            );
                        }
                    }
                }
            }
        }
    }
}
