//! Small dense linear algebra: real 2x2 matrices, closed-form matrix
//! exponentials on `sl(2)`, and a one-sided Jacobi SVD for the tiny dense
//! systems that the cocycle and Newton machinery assembles (at most a few
//! dozen rows).

use crate::math;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

/// Real 2x2 matrix.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mat2(pub [[f64; 2]; 2]);

impl Mat2 {
    pub fn identity() -> Self {
        Mat2([[1.0, 0.0], [0.0, 1.0]])
    }

    pub fn zero() -> Self {
        Mat2([[0.0; 2]; 2])
    }

    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Self {
        Mat2([[a, b], [c, d]])
    }

    pub fn det(&self) -> f64 {
        self.0[0][0] * self.0[1][1] - self.0[0][1] * self.0[1][0]
    }

    pub fn tr(&self) -> f64 {
        self.0[0][0] + self.0[1][1]
    }

    pub fn transpose(&self) -> Self {
        Mat2([[self.0[0][0], self.0[1][0]], [self.0[0][1], self.0[1][1]]])
    }

    pub fn scale(&self, c: f64) -> Self {
        Mat2([
            [c * self.0[0][0], c * self.0[0][1]],
            [c * self.0[1][0], c * self.0[1][1]],
        ])
    }

    pub fn inv(&self) -> Option<Self> {
        let d = self.det();
        if d == 0.0 {
            return None;
        }
        Some(Mat2([
            [self.0[1][1] / d, -self.0[0][1] / d],
            [-self.0[1][0] / d, self.0[0][0] / d],
        ]))
    }

    pub fn max_abs(&self) -> f64 {
        let mut m = 0.0f64;
        for r in &self.0 {
            for &x in r {
                m = m.max(math::abs(x));
            }
        }
        m
    }

    /// Conjugation `self * x * self^-1`.
    pub fn ad(&self, x: Mat2) -> Mat2 {
        *self * x * self.inv().expect("Ad by a singular matrix")
    }

    /// Traceless part `x - tr(x)/2 * I`.
    pub fn traceless(&self) -> Mat2 {
        let h = self.tr() / 2.0;
        Mat2([
            [self.0[0][0] - h, self.0[0][1]],
            [self.0[1][0], self.0[1][1] - h],
        ])
    }
}

impl Add for Mat2 {
    type Output = Mat2;
    fn add(self, r: Mat2) -> Mat2 {
        Mat2([
            [self.0[0][0] + r.0[0][0], self.0[0][1] + r.0[0][1]],
            [self.0[1][0] + r.0[1][0], self.0[1][1] + r.0[1][1]],
        ])
    }
}

impl Sub for Mat2 {
    type Output = Mat2;
    fn sub(self, r: Mat2) -> Mat2 {
        Mat2([
            [self.0[0][0] - r.0[0][0], self.0[0][1] - r.0[0][1]],
            [self.0[1][0] - r.0[1][0], self.0[1][1] - r.0[1][1]],
        ])
    }
}

impl Neg for Mat2 {
    type Output = Mat2;
    fn neg(self) -> Mat2 {
        self.scale(-1.0)
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, r: Mat2) -> Mat2 {
        let a = &self.0;
        let b = &r.0;
        Mat2([
            [
                a[0][0] * b[0][0] + a[0][1] * b[1][0],
                a[0][0] * b[0][1] + a[0][1] * b[1][1],
            ],
            [
                a[1][0] * b[0][0] + a[1][1] * b[1][0],
                a[1][0] * b[0][1] + a[1][1] * b[1][1],
            ],
        ])
    }
}

/// Exponential of a traceless real 2x2 matrix, closed form via
/// Cayley-Hamilton: `m^2 = -det(m)·I`, so `exp(m) = c·I + s·m` with
/// `(c, s) = (cosh w, sinhc w)` for `w^2 = -det(m)`.
pub fn exp_sl2(m: Mat2) -> Mat2 {
    let q = -m.det();
    let (c, s) = if q >= 0.0 {
        let w = math::sqrt(q);
        (math::cosh(w), math::sinhc(w))
    } else {
        let w = math::sqrt(-q);
        (math::cos(w), math::sinc(w))
    };
    Mat2([
        [c + s * m.0[0][0], s * m.0[0][1]],
        [s * m.0[1][0], c + s * m.0[1][1]],
    ])
}

/// Principal square root of a symmetric positive definite 2x2 matrix:
/// `sqrt(X) = (X + sqrt(det X)·I) / sqrt(tr X + 2 sqrt(det X))`.
pub fn sym2_sqrt(x: Mat2) -> Option<Mat2> {
    let d = x.det();
    let t = x.tr();
    if d <= 0.0 || t <= 0.0 {
        return None;
    }
    let sd = math::sqrt(d);
    let denom = math::sqrt(t + 2.0 * sd);
    Some(Mat2([
        [(x.0[0][0] + sd) / denom, x.0[0][1] / denom],
        [x.0[1][0] / denom, (x.0[1][1] + sd) / denom],
    ]))
}

// ---------------------------------------------------------------------------
// Complex helpers (used for sl(2,C) exponentials; B_1 is C).

#[derive(Clone, Copy, Debug)]
pub struct Cplx {
    pub re: f64,
    pub im: f64,
}

impl Cplx {
    pub fn new(re: f64, im: f64) -> Self {
        Cplx { re, im }
    }

    pub fn mul(self, o: Cplx) -> Cplx {
        Cplx::new(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)
    }

    pub fn sqrt(self) -> Cplx {
        let r = math::hypot(self.re, self.im);
        let u = math::sqrt((r + self.re) / 2.0);
        let v = if self.im >= 0.0 {
            math::sqrt((r - self.re) / 2.0)
        } else {
            -math::sqrt((r - self.re) / 2.0)
        };
        Cplx::new(u, v)
    }

    pub fn cosh(self) -> Cplx {
        Cplx::new(
            math::cosh(self.re) * math::cos(self.im),
            math::sinh(self.re) * math::sin(self.im),
        )
    }

    pub fn sinh(self) -> Cplx {
        Cplx::new(
            math::sinh(self.re) * math::cos(self.im),
            math::cosh(self.re) * math::sin(self.im),
        )
    }

    /// sinh(z)/z with a series fallback near the origin.
    pub fn sinhc(self) -> Cplx {
        let n = math::hypot(self.re, self.im);
        if n < 1e-4 {
            let z2 = self.mul(self);
            Cplx::new(1.0 + z2.re / 6.0, z2.im / 6.0)
        } else {
            let s = self.sinh();
            let d = self.re * self.re + self.im * self.im;
            Cplx::new(
                (s.re * self.re + s.im * self.im) / d,
                (s.im * self.re - s.re * self.im) / d,
            )
        }
    }
}

/// Exponential of a traceless complex 2x2 matrix given as real and
/// imaginary parts. Returns `(re, im)` of the exponential.
pub fn exp_sl2_cplx(re: Mat2, im: Mat2) -> (Mat2, Mat2) {
    let a = re.0;
    let b = im.0;
    // det = (a00 + i b00)(a11 + i b11) - (a01 + i b01)(a10 + i b10)
    let d_re = a[0][0] * a[1][1] - b[0][0] * b[1][1] - (a[0][1] * a[1][0] - b[0][1] * b[1][0]);
    let d_im = a[0][0] * b[1][1] + b[0][0] * a[1][1] - (a[0][1] * b[1][0] + b[0][1] * a[1][0]);
    let w = Cplx::new(-d_re, -d_im).sqrt();
    let c = w.cosh();
    let s = w.sinhc();
    let mut out_re = Mat2::zero();
    let mut out_im = Mat2::zero();
    for i in 0..2 {
        for j in 0..2 {
            let m = Cplx::new(a[i][j], b[i][j]);
            let sm = s.mul(m);
            out_re.0[i][j] = sm.re + if i == j { c.re } else { 0.0 };
            out_im.0[i][j] = sm.im + if i == j { c.im } else { 0.0 };
        }
    }
    (out_re, out_im)
}

// ---------------------------------------------------------------------------
// Dynamic matrices and SVD.

/// Dense row-major dynamically sized real matrix.
#[derive(Clone, Debug)]
pub struct DMat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<f64>,
}

impl DMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        DMat { rows, cols, data: vec![0.0; rows * cols] }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = DMat::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.data[i * cols + j] = f(i, j);
            }
        }
        m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn transpose(&self) -> DMat {
        DMat::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.cols);
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j) * x[j]).sum())
            .collect()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0f64, |m, &x| m.max(math::abs(x)))
    }
}

/// Thin SVD `A = U diag(s) V^T` with `s` sorted descending.
/// `u` is `rows x k`, `v` is `cols x k`, `k = min(rows, cols)`.
pub struct Svd {
    pub u: DMat,
    pub s: Vec<f64>,
    pub v: DMat,
}

/// One-sided Jacobi SVD. Accurate and simple; fine for the small systems
/// used here.
pub fn svd(a: &DMat) -> Svd {
    if a.rows < a.cols {
        let t = svd(&a.transpose());
        return Svd { u: t.v, s: t.s, v: t.u };
    }
    let m = a.rows;
    let n = a.cols;
    let mut u = a.clone();
    let mut v = DMat::from_fn(n, n, |i, j| if i == j { 1.0 } else { 0.0 });

    let col_dot = |w: &DMat, p: usize, q: usize| -> f64 {
        (0..w.rows).map(|i| w.get(i, p) * w.get(i, q)).sum()
    };

    for _sweep in 0..64 {
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let app = col_dot(&u, p, p);
                let aqq = col_dot(&u, q, q);
                let apq = col_dot(&u, p, q);
                if math::abs(apq) <= 1e-15 * math::sqrt(app * aqq) + 1e-300 {
                    continue;
                }
                rotated = true;
                let zeta = (aqq - app) / (2.0 * apq);
                let t = if zeta >= 0.0 {
                    1.0 / (zeta + math::sqrt(1.0 + zeta * zeta))
                } else {
                    -1.0 / (-zeta + math::sqrt(1.0 + zeta * zeta))
                };
                let c = 1.0 / math::sqrt(1.0 + t * t);
                let s = c * t;
                for i in 0..m {
                    let up = u.get(i, p);
                    let uq = u.get(i, q);
                    u.set(i, p, c * up - s * uq);
                    u.set(i, q, s * up + c * uq);
                }
                for i in 0..n {
                    let vp = v.get(i, p);
                    let vq = v.get(i, q);
                    v.set(i, p, c * vp - s * vq);
                    v.set(i, q, s * vp + c * vq);
                }
            }
        }
        if !rotated {
            break;
        }
    }

    let mut sig: Vec<f64> = (0..n).map(|j| math::sqrt(col_dot(&u, j, j))).collect();
    // Normalize columns of U (leave zero columns as they are; their
    // singular value is zero and U's column is unused downstream).
    for j in 0..n {
        if sig[j] > 0.0 {
            for i in 0..m {
                let x = u.get(i, j) / sig[j];
                u.set(i, j, x);
            }
        }
    }
    // Sort descending.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| sig[j].partial_cmp(&sig[i]).unwrap());
    let u_sorted = DMat::from_fn(m, n, |i, j| u.get(i, order[j]));
    let v_sorted = DMat::from_fn(n, n, |i, j| v.get(i, order[j]));
    sig = order.iter().map(|&j| sig[j]).collect();
    Svd { u: u_sorted, s: sig, v: v_sorted }
}

/// Rank decision with an explicit audit trail: singular values below
/// `rel_tol * s_max` count as zero. Returns `(rank, gap_ratio)` where the
/// gap ratio is `s_rank-1 / s_rank` (infinite when everything is kept or
/// dropped).
pub fn numeric_rank(s: &[f64], rel_tol: f64) -> (usize, f64) {
    if s.is_empty() {
        return (0, f64::INFINITY);
    }
    let smax = s[0];
    if smax == 0.0 {
        return (0, f64::INFINITY);
    }
    let thresh = rel_tol * smax;
    let rank = s.iter().take_while(|&&x| x > thresh).count();
    let gap = if rank == 0 || rank == s.len() {
        f64::INFINITY
    } else {
        s[rank - 1] / s[rank].max(1e-300)
    };
    (rank, gap)
}

/// Minimum-norm damped least squares step: minimizes
/// `|A x - b|^2 + lambda^2 |x|^2` through the SVD.
pub fn lstsq_damped(a: &DMat, b: &[f64], lambda: f64) -> Vec<f64> {
    let dec = svd(a);
    let k = dec.s.len();
    let mut x = vec![0.0; a.cols];
    for j in 0..k {
        let sj = dec.s[j];
        if sj <= 1e-14 * dec.s[0] {
            continue;
        }
        let utb: f64 = (0..a.rows).map(|i| dec.u.get(i, j) * b[i]).sum();
        let f = sj / (sj * sj + lambda * lambda);
        for i in 0..a.cols {
            x[i] += dec.v.get(i, j) * f * utb;
        }
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn exp_sl2_matches_rotation_and_boost() {
        // Rotation generator theta*[[0,-1/2],[1/2,0]] exponentiates to
        // R(theta/2).
        let theta = 0.73;
        let m = Mat2::new(0.0, -theta / 2.0, theta / 2.0, 0.0);
        let e = exp_sl2(m);
        assert_abs_diff_eq!(e.0[0][0], math::cos(theta / 2.0), epsilon = 1e-14);
        assert_abs_diff_eq!(e.0[1][0], math::sin(theta / 2.0), epsilon = 1e-14);
        // Boost generator d*[[1/2,0],[0,-1/2]] gives diag(e^{d/2}, e^{-d/2}).
        let d = 1.3;
        let e = exp_sl2(Mat2::new(d / 2.0, 0.0, 0.0, -d / 2.0));
        assert_abs_diff_eq!(e.0[0][0], math::exp(d / 2.0), epsilon = 1e-12);
        assert_abs_diff_eq!(e.0[1][1], math::exp(-d / 2.0), epsilon = 1e-12);
    }

    #[test]
    fn exp_sl2_cplx_agrees_with_real_case() {
        let m = Mat2::new(0.3, -0.2, 0.5, -0.3);
        let (re, im) = exp_sl2_cplx(m, Mat2::zero());
        let e = exp_sl2(m);
        for i in 0..2 {
            for j in 0..2 {
                assert_abs_diff_eq!(re.0[i][j], e.0[i][j], epsilon = 1e-13);
                assert_abs_diff_eq!(im.0[i][j], 0.0, epsilon = 1e-13);
            }
        }
        // Pure imaginary traceless matrix: exp(i t h/2) = diag(e^{it/2}, ..).
        let t = 0.41;
        let (re, im) = exp_sl2_cplx(Mat2::zero(), Mat2::new(t / 2.0, 0.0, 0.0, -t / 2.0));
        assert_abs_diff_eq!(re.0[0][0], math::cos(t / 2.0), epsilon = 1e-13);
        assert_abs_diff_eq!(im.0[0][0], math::sin(t / 2.0), epsilon = 1e-13);
        assert_abs_diff_eq!(im.0[1][1], -math::sin(t / 2.0), epsilon = 1e-13);
    }

    #[test]
    fn sym2_sqrt_squares_back() {
        let x = Mat2::new(2.0, 0.7, 0.7, 1.1);
        let r = sym2_sqrt(x).unwrap();
        let rr = r * r;
        for i in 0..2 {
            for j in 0..2 {
                assert_abs_diff_eq!(rr.0[i][j], x.0[i][j], epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn svd_reconstructs_and_orders() {
        let a = DMat::from_fn(5, 3, |i, j| ((i * 3 + j) as f64 * 0.37).sin() + 0.1 * j as f64);
        let d = svd(&a);
        assert!(d.s[0] >= d.s[1] && d.s[1] >= d.s[2]);
        // Reconstruct.
        for i in 0..5 {
            for j in 0..3 {
                let mut x = 0.0;
                for k in 0..3 {
                    x += d.u.get(i, k) * d.s[k] * d.v.get(j, k);
                }
                assert_abs_diff_eq!(x, a.get(i, j), epsilon = 1e-12);
            }
        }
        // V orthonormal.
        for p in 0..3 {
            for q in 0..3 {
                let dot: f64 = (0..3).map(|i| d.v.get(i, p) * d.v.get(i, q)).sum();
                assert_abs_diff_eq!(dot, if p == q { 1.0 } else { 0.0 }, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn svd_finds_nullspace() {
        // Rank-2 matrix with known kernel (1,1,1)/sqrt(3).
        let a = DMat::from_fn(4, 3, |i, j| {
            let rows = [[1.0, -1.0, 0.0], [0.0, 1.0, -1.0], [2.0, -1.0, -1.0], [1.0, 0.0, -1.0]];
            rows[i][j]
        });
        let d = svd(&a);
        let (rank, gap) = numeric_rank(&d.s, 1e-8);
        assert_eq!(rank, 2);
        assert!(gap > 1e3);
        let k: Vec<f64> = (0..3).map(|i| d.v.get(i, 2)).collect();
        let norm = (k[0] * k[0] + k[1] * k[1] + k[2] * k[2]).sqrt();
        for i in 0..3 {
            assert_abs_diff_eq!(k[i].abs() / norm, 1.0 / 3.0f64.sqrt(), epsilon = 1e-10);
        }
    }

    #[test]
    fn lstsq_solves_consistent_system() {
        let a = DMat::from_fn(3, 2, |i, j| [[1.0, 2.0], [3.0, 1.0], [0.0, 1.0]][i][j]);
        let x_true = [0.7, -0.4];
        let b = a.matvec(&x_true);
        let x = lstsq_damped(&a, &b, 0.0);
        assert_abs_diff_eq!(x[0], x_true[0], epsilon = 1e-12);
        assert_abs_diff_eq!(x[1], x_true[1], epsilon = 1e-12);
    }
}
