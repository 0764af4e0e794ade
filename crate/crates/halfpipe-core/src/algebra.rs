//! Arithmetic in the one-parameter family of two-dimensional real
//! commutative algebras `B_s = R + R·kappa_s` with
//! `kappa_s^2 = -sign(s)·s^2`.
//!
//! For `s > 0` this is the complex numbers (kappa plays the role of
//! `|s|·i`), for `s = 0` the dual numbers (`sigma^2 = 0`) and for `s < 0`
//! the split-complex numbers (`kappa = |s|·tau` with `tau^2 = 1`).
//! Elements carry their tag at runtime so one path type can hold values
//! over varying `s`.

use crate::error::{Error, Result};
use crate::math;
use core::ops::{Add, Mul, Neg, Sub};

/// Threshold scale for zero-divisor detection, relative to
/// `max(|re|, |im|)`.
pub const ZERO_DIVISOR_TOL: f64 = 1e-12;

/// The algebra `B_s`, identified by the real parameter `s`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AlgebraTag {
    s: f64,
}

impl AlgebraTag {
    pub fn new(s: f64) -> Self {
        AlgebraTag { s }
    }

    /// `B_1 = C`, the hyperbolic side.
    pub fn hyperbolic() -> Self {
        AlgebraTag { s: 1.0 }
    }

    /// `B_0 = R + R·sigma`, the half-pipe algebra of dual numbers.
    pub fn half_pipe() -> Self {
        AlgebraTag { s: 0.0 }
    }

    /// `B_{-1} = R + R·tau`, the anti-de Sitter algebra of split-complex
    /// numbers.
    pub fn anti_de_sitter() -> Self {
        AlgebraTag { s: -1.0 }
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    /// `kappa_s^2 = -sign(s)·s^2`. Recomputed, never stored.
    pub fn kappa_sq(&self) -> f64 {
        if self.s > 0.0 {
            -self.s * self.s
        } else if self.s < 0.0 {
            self.s * self.s
        } else {
            0.0
        }
    }

    pub fn is_half_pipe(&self) -> bool {
        self.s == 0.0
    }

    /// The unit scalars `lambda` with `lambda^2 = 1`: `{±1}` for `s >= 0`
    /// and `{±1, ±kappa/|s|}` for `s < 0`.
    pub fn unit_scalars(&self) -> [Option<BElem>; 4] {
        let one = BElem::real(1.0, *self);
        let minus_one = BElem::real(-1.0, *self);
        if self.s < 0.0 {
            let tau = BElem::new(0.0, 1.0 / math::abs(self.s), *self);
            [Some(one), Some(minus_one), Some(tau), Some(-tau)]
        } else {
            [Some(one), Some(minus_one), None, None]
        }
    }

    fn check(&self, other: &AlgebraTag) -> Result<()> {
        if self.s == other.s {
            Ok(())
        } else {
            Err(Error::TagMismatch { left: self.s, right: other.s })
        }
    }
}

/// An element `re + im·kappa_s` of `B_s`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BElem {
    pub re: f64,
    pub im: f64,
    pub tag: AlgebraTag,
}

impl BElem {
    pub fn new(re: f64, im: f64, tag: AlgebraTag) -> Self {
        BElem { re, im, tag }
    }

    pub fn real(re: f64, tag: AlgebraTag) -> Self {
        BElem { re, im: 0.0, tag }
    }

    pub fn zero(tag: AlgebraTag) -> Self {
        BElem::real(0.0, tag)
    }

    pub fn one(tag: AlgebraTag) -> Self {
        BElem::real(1.0, tag)
    }

    /// `kappa_s` itself.
    pub fn kappa(tag: AlgebraTag) -> Self {
        BElem { re: 0.0, im: 1.0, tag }
    }

    /// Conjugation: flips the sign of the imaginary part. An algebra
    /// automorphism.
    pub fn conj(self) -> Self {
        BElem { re: self.re, im: -self.im, tag: self.tag }
    }

    /// Square-norm `|a + b·kappa|^2 = a^2 - b^2·kappa^2`. Real, but not
    /// positive definite for `s <= 0`; multiplicative.
    pub fn sqnorm(self) -> f64 {
        self.re * self.re - self.im * self.im * self.tag.kappa_sq()
    }

    /// Max-abs of the two components, used for scale-aware comparisons.
    pub fn max_abs(self) -> f64 {
        math::abs(self.re).max(math::abs(self.im))
    }

    /// True when the element is not invertible at the working precision:
    /// `|sqnorm| <= ZERO_DIVISOR_TOL * max(|re|, |im|)`.
    pub fn is_zero_divisor(self) -> bool {
        math::abs(self.sqnorm()) <= ZERO_DIVISOR_TOL * self.max_abs()
    }

    /// Multiplicative inverse `conj(z)/sqnorm(z)`.
    pub fn invert(self) -> Result<Self> {
        if self.is_zero_divisor() {
            return Err(Error::ZeroDivisor);
        }
        let n = self.sqnorm();
        Ok(BElem { re: self.re / n, im: -self.im / n, tag: self.tag })
    }

    pub fn scale(self, c: f64) -> Self {
        BElem { re: c * self.re, im: c * self.im, tag: self.tag }
    }

    /// A square root, where one exists in `B_s`.
    ///
    /// For `s > 0` this is the principal complex square root expressed in
    /// the kappa basis; for `s = 0` it needs `re > 0`; for `s < 0` both
    /// idempotent components must be positive.
    pub fn sqrt(self) -> Result<Self> {
        let s = self.tag.s();
        if s > 0.0 {
            // z = re + im*kappa with kappa = |s| i; as a complex number
            // x + y i with x = re, y = im*|s|.
            let x = self.re;
            let y = self.im * s;
            let r = math::hypot(x, y);
            let u = math::sqrt((r + x) / 2.0);
            let v = if y >= 0.0 { math::sqrt((r - x) / 2.0) } else { -math::sqrt((r - x) / 2.0) };
            Ok(BElem::new(u, v / s, self.tag))
        } else if s == 0.0 {
            if self.re <= 0.0 {
                return Err(Error::Precondition("dual-number square root needs re > 0"));
            }
            let u = math::sqrt(self.re);
            Ok(BElem::new(u, self.im / (2.0 * u), self.tag))
        } else {
            let a = math::abs(s);
            // Idempotent coordinates: z = u e+ + v e- with
            // u = re + im*a, v = re - im*a.
            let u = self.re + self.im * a;
            let v = self.re - self.im * a;
            if u <= 0.0 || v <= 0.0 {
                return Err(Error::Precondition(
                    "split-complex square root needs positive idempotent components",
                ));
            }
            let su = math::sqrt(u);
            let sv = math::sqrt(v);
            Ok(BElem::new((su + sv) / 2.0, (su - sv) / (2.0 * a), self.tag))
        }
    }

    /// The algebra isomorphism `B_{sign(s)} -> B_s` defined by sending the
    /// unit imaginary (`i` or `tau`) to `kappa_s / |s|`.
    pub fn rescale_to(self, s: f64) -> Result<Self> {
        if s == 0.0 {
            return Err(Error::InvalidRescale);
        }
        let sign = if s > 0.0 { 1.0 } else { -1.0 };
        if self.tag.s() != sign {
            return Err(Error::Precondition("rescale source must be tagged B_{sign(s)}"));
        }
        Ok(BElem::new(self.re, self.im / math::abs(s), AlgebraTag::new(s)))
    }

    /// Inverse of [`BElem::rescale_to`]: maps `B_s` back to `B_{sign(s)}`.
    pub fn rescale_back(self) -> Result<Self> {
        let s = self.tag.s();
        if s == 0.0 {
            return Err(Error::InvalidRescale);
        }
        let sign = if s > 0.0 { 1.0 } else { -1.0 };
        Ok(BElem::new(self.re, self.im * math::abs(s), AlgebraTag::new(sign)))
    }

    fn joined(self, other: &BElem) -> AlgebraTag {
        self.tag
            .check(&other.tag)
            .unwrap_or_else(|e| panic!("BElem arithmetic: {e}"));
        self.tag
    }
}

impl Add for BElem {
    type Output = BElem;
    fn add(self, rhs: BElem) -> BElem {
        let tag = self.joined(&rhs);
        BElem::new(self.re + rhs.re, self.im + rhs.im, tag)
    }
}

impl Sub for BElem {
    type Output = BElem;
    fn sub(self, rhs: BElem) -> BElem {
        let tag = self.joined(&rhs);
        BElem::new(self.re - rhs.re, self.im - rhs.im, tag)
    }
}

impl Neg for BElem {
    type Output = BElem;
    fn neg(self) -> BElem {
        BElem::new(-self.re, -self.im, self.tag)
    }
}

impl Mul for BElem {
    type Output = BElem;
    /// `(a + b kappa)(c + d kappa) = (ac + bd kappa^2) + (ad + bc) kappa`.
    fn mul(self, rhs: BElem) -> BElem {
        let tag = self.joined(&rhs);
        let k2 = tag.kappa_sq();
        BElem::new(
            self.re * rhs.re + self.im * rhs.im * k2,
            self.re * rhs.im + self.im * rhs.re,
            tag,
        )
    }
}

/// The idempotent pair `e± = (1 ± kappa/|s|)/2` for `s < 0`, satisfying
/// `e±^2 = e±`, `e+ e- = 0` and `e+ + e- = 1`. They split `B_s` as
/// `R ⊕ R`, which is what lets an AdS representation be assembled from two
/// real ones.
pub fn idempotents(tag: AlgebraTag) -> Result<(BElem, BElem)> {
    if tag.s() >= 0.0 {
        return Err(Error::NoIdempotents);
    }
    let a = math::abs(tag.s());
    Ok((
        BElem::new(0.5, 0.5 / a, tag),
        BElem::new(0.5, -0.5 / a, tag),
    ))
}

/// Assemble `e+ * p + e- * q` from two real numbers, for `s < 0`.
pub fn from_idempotent_pair(p: f64, q: f64, tag: AlgebraTag) -> Result<BElem> {
    if tag.s() >= 0.0 {
        return Err(Error::NoIdempotents);
    }
    let a = math::abs(tag.s());
    Ok(BElem::new((p + q) / 2.0, (p - q) / (2.0 * a), tag))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::Rng;
    use approx::assert_abs_diff_eq;

    fn tags() -> [AlgebraTag; 5] {
        [
            AlgebraTag::new(1.0),
            AlgebraTag::new(0.5),
            AlgebraTag::new(-0.5),
            AlgebraTag::new(-1.0),
            AlgebraTag::new(0.0),
        ]
    }

    #[test]
    fn kappa_sq_sign_convention() {
        assert_eq!(AlgebraTag::new(2.0).kappa_sq(), -4.0);
        assert_eq!(AlgebraTag::new(-2.0).kappa_sq(), 4.0);
        assert_eq!(AlgebraTag::new(0.0).kappa_sq(), 0.0);
        // -0.0 counts as zero, not as negative.
        assert_eq!(AlgebraTag::new(-0.0).kappa_sq(), 0.0);
    }

    #[test]
    fn mul_examples() {
        // s = -1: (1+tau)(1-tau) = 0, a zero divisor product.
        let t = AlgebraTag::anti_de_sitter();
        let z = BElem::new(1.0, 1.0, t) * BElem::new(1.0, -1.0, t);
        assert_abs_diff_eq!(z.re, 0.0);
        assert_abs_diff_eq!(z.im, 0.0);

        // s = 0: (2+3sigma)(4+5sigma) = 8 + 22 sigma.
        let h = AlgebraTag::half_pipe();
        let z = BElem::new(2.0, 3.0, h) * BElem::new(4.0, 5.0, h);
        assert_abs_diff_eq!(z.re, 8.0);
        assert_abs_diff_eq!(z.im, 22.0);

        // s = 1: (1+i)(1-i) = 2.
        let c = AlgebraTag::hyperbolic();
        let z = BElem::new(1.0, 1.0, c) * BElem::new(1.0, -1.0, c);
        assert_abs_diff_eq!(z.re, 2.0);
        assert_abs_diff_eq!(z.im, 0.0);
    }

    #[test]
    fn sqnorm_examples() {
        let t = AlgebraTag::anti_de_sitter();
        for k in 0..5 {
            let x = 0.37 * k as f64;
            let z = BElem::new(math::cosh(x), math::sinh(x), t);
            assert_abs_diff_eq!(z.sqnorm(), 1.0, epsilon = 1e-12);
        }
        let h = AlgebraTag::half_pipe();
        assert_abs_diff_eq!(BElem::new(1.0, 5.0, h).sqnorm(), 1.0);
        let c = AlgebraTag::hyperbolic();
        assert_abs_diff_eq!(BElem::new(3.0, 4.0, c).sqnorm(), 25.0);
    }

    #[test]
    fn sqnorm_equals_z_times_conj() {
        let mut rng = Rng::new(11);
        for tag in tags() {
            for _ in 0..200 {
                let z = BElem::new(rng.sym(3.0), rng.sym(3.0), tag);
                let p = z * z.conj();
                assert_abs_diff_eq!(p.re, z.sqnorm(), epsilon = 1e-12 * (1.0 + p.re.abs()));
                assert_eq!(p.im, 0.0);
            }
        }
    }

    #[test]
    fn sqnorm_multiplicative_and_conj_automorphism() {
        let mut rng = Rng::new(5);
        for tag in tags() {
            for _ in 0..500 {
                let z = BElem::new(rng.sym(2.0), rng.sym(2.0), tag);
                let w = BElem::new(rng.sym(2.0), rng.sym(2.0), tag);
                let lhs = (z * w).sqnorm();
                let rhs = z.sqnorm() * w.sqnorm();
                assert_abs_diff_eq!(lhs, rhs, epsilon = 1e-12 * (1.0 + lhs.abs() + rhs.abs()));
                let a = (z * w).conj();
                let b = z.conj() * w.conj();
                assert_abs_diff_eq!(a.re, b.re, epsilon = 1e-13 * (1.0 + a.re.abs()));
                assert_abs_diff_eq!(a.im, b.im, epsilon = 1e-13 * (1.0 + a.im.abs()));
            }
        }
    }

    #[test]
    fn invert_examples() {
        let c = AlgebraTag::hyperbolic();
        let z = BElem::kappa(c).invert().unwrap(); // 1/i = -i
        assert_abs_diff_eq!(z.re, 0.0);
        assert_abs_diff_eq!(z.im, -1.0);

        let h = AlgebraTag::half_pipe();
        let z = BElem::new(1.0, 1.0, h).invert().unwrap(); // (1+sigma)^-1 = 1-sigma
        assert_abs_diff_eq!(z.re, 1.0);
        assert_abs_diff_eq!(z.im, -1.0);

        let t = AlgebraTag::anti_de_sitter();
        assert_eq!(BElem::new(1.0, 1.0, t).invert(), Err(Error::ZeroDivisor));
    }

    #[test]
    fn invert_round_trip() {
        let mut rng = Rng::new(3);
        for tag in tags() {
            for _ in 0..300 {
                let z = BElem::new(rng.sym(2.0), rng.sym(2.0), tag);
                if z.is_zero_divisor() {
                    continue;
                }
                let p = z * z.invert().unwrap();
                assert_abs_diff_eq!(p.re, 1.0, epsilon = 1e-10);
                assert_abs_diff_eq!(p.im, 0.0, epsilon = 1e-10);
            }
        }
    }

    #[test]
    fn zero_divisor_set_for_negative_s() {
        // For s < 0 the zero divisors are exactly a^2 = b^2 s^2.
        let tag = AlgebraTag::new(-0.5);
        let z = BElem::new(0.25, 0.5, tag); // 0.25^2 = 0.5^2 * 0.25
        assert!(z.is_zero_divisor());
        let z = BElem::new(0.3, 0.5, tag);
        assert!(!z.is_zero_divisor());
        assert!(BElem::zero(tag).is_zero_divisor());
    }

    #[test]
    fn rescale_examples() {
        // 3 + 2i over B_1 to s = 0.5 gives 3 + 4 kappa.
        let z = BElem::new(3.0, 2.0, AlgebraTag::hyperbolic());
        let w = z.rescale_to(0.5).unwrap();
        assert_abs_diff_eq!(w.re, 3.0);
        assert_abs_diff_eq!(w.im, 4.0);

        // 1 + tau over B_{-1} to s = -0.25 gives 1 + 4 kappa.
        let z = BElem::new(1.0, 1.0, AlgebraTag::anti_de_sitter());
        let w = z.rescale_to(-0.25).unwrap();
        assert_abs_diff_eq!(w.im, 4.0);

        // rescale(i)^2 = -1 for any s > 0.
        for s in [0.3, 1.7] {
            let i = BElem::kappa(AlgebraTag::hyperbolic());
            let k = i.rescale_to(s).unwrap();
            let sq = k * k;
            assert_abs_diff_eq!(sq.re, -1.0, epsilon = 1e-14);
            assert_abs_diff_eq!(sq.im, 0.0, epsilon = 1e-14);
        }

        assert_eq!(
            BElem::one(AlgebraTag::hyperbolic()).rescale_to(0.0),
            Err(Error::InvalidRescale)
        );
    }

    #[test]
    fn rescale_is_homomorphism_and_invertible() {
        let mut rng = Rng::new(17);
        for s in [0.5, 2.0, -0.5, -2.0] {
            let src = AlgebraTag::new(if s > 0.0 { 1.0 } else { -1.0 });
            for _ in 0..200 {
                let z = BElem::new(rng.sym(2.0), rng.sym(2.0), src);
                let w = BElem::new(rng.sym(2.0), rng.sym(2.0), src);
                let a = (z * w).rescale_to(s).unwrap();
                let b = z.rescale_to(s).unwrap() * w.rescale_to(s).unwrap();
                assert_abs_diff_eq!(a.re, b.re, epsilon = 1e-12 * (1.0 + a.re.abs()));
                assert_abs_diff_eq!(a.im, b.im, epsilon = 1e-12 * (1.0 + a.im.abs()));
                let back = z.rescale_to(s).unwrap().rescale_back().unwrap();
                assert_abs_diff_eq!(back.re, z.re, epsilon = 1e-14 * (1.0 + z.re.abs()));
                assert_abs_diff_eq!(back.im, z.im, epsilon = 1e-14 * (1.0 + z.im.abs()));
            }
        }
    }

    #[test]
    fn idempotent_identities() {
        for s in [-1.0, -2.0, -0.3] {
            let tag = AlgebraTag::new(s);
            let (ep, em) = idempotents(tag).unwrap();
            for e in [ep, em] {
                let d = e * e - e;
                assert_abs_diff_eq!(d.re, 0.0, epsilon = 1e-14);
                assert_abs_diff_eq!(d.im, 0.0, epsilon = 1e-14);
            }
            let p = ep * em;
            assert_abs_diff_eq!(p.re, 0.0, epsilon = 1e-14);
            assert_abs_diff_eq!(p.im, 0.0, epsilon = 1e-14);
            let s_ = ep + em;
            assert_abs_diff_eq!(s_.re, 1.0);
            assert_abs_diff_eq!(s_.im, 0.0);
        }
        // s = -1 gives the (1 ± tau)/2 pair.
        let (ep, _) = idempotents(AlgebraTag::anti_de_sitter()).unwrap();
        assert_abs_diff_eq!(ep.re, 0.5);
        assert_abs_diff_eq!(ep.im, 0.5);
        assert_eq!(idempotents(AlgebraTag::hyperbolic()), Err(Error::NoIdempotents));
        assert_eq!(idempotents(AlgebraTag::half_pipe()), Err(Error::NoIdempotents));
    }

    #[test]
    fn sqrt_round_trip() {
        let mut rng = Rng::new(23);
        for tag in tags() {
            for _ in 0..200 {
                let z = BElem::new(1.0 + rng.next_f64() * 2.0, rng.sym(0.8), tag);
                if let Ok(r) = z.sqrt() {
                    let p = r * r;
                    assert_abs_diff_eq!(p.re, z.re, epsilon = 1e-12 * (1.0 + z.re.abs()));
                    assert_abs_diff_eq!(p.im, z.im, epsilon = 1e-12 * (1.0 + z.im.abs()));
                }
            }
        }
    }

    #[test]
    #[should_panic(expected = "tag mismatch")]
    fn mixing_tags_is_a_contract_violation() {
        let _ = BElem::one(AlgebraTag::hyperbolic()) + BElem::one(AlgebraTag::half_pipe());
    }
}
