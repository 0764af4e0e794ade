//! Group cocycles, coboundaries and `H^1` for `sl(2,R)`-valued
//! infinitesimal deformations of a real representation.
//!
//! A cocycle assigns a traceless matrix to each generator and extends by
//! `z(ab) = z(a) + Ad_{rho0(a)} z(b)`; it lies in `Z^1` when the extension
//! of every relator vanishes. Coboundaries are `z(g) = u - Ad_{rho0(g)} u`.

use super::{RealRep, Word};
use crate::error::{Error, Result};
use crate::linalg::{numeric_rank, svd, DMat, Mat2};
use alloc::vec::Vec;

/// Relative singular-value threshold for rank decisions.
const RANK_REL_TOL: f64 = 1e-8;
/// Minimum acceptable gap between kept and dropped singular values.
const RANK_GAP_MIN: f64 = 1e3;
/// A base representation must satisfy its relators this well before any
/// cohomology is computed against it.
const BASE_REP_TOL: f64 = 1e-8;

/// Generator-indexed traceless 2x2 matrices, extended to all words by the
/// cocycle rule.
#[derive(Clone, Debug)]
pub struct Cocycle {
    pub values: Vec<Mat2>,
}

impl Cocycle {
    pub fn new(values: Vec<Mat2>) -> Result<Self> {
        for v in &values {
            if crate::math::abs(v.tr()) > 1e-12 * (1.0 + v.max_abs()) {
                return Err(Error::Precondition("cocycle values must be traceless"));
            }
        }
        Ok(Cocycle { values })
    }

    pub fn zero(rank: usize) -> Self {
        Cocycle { values: alloc::vec![Mat2::zero(); rank] }
    }

    pub fn scale(&self, c: f64) -> Self {
        Cocycle { values: self.values.iter().map(|m| m.scale(c)).collect() }
    }

    pub fn add(&self, other: &Cocycle) -> Self {
        Cocycle {
            values: self
                .values
                .iter()
                .zip(other.values.iter())
                .map(|(a, b)| *a + *b)
                .collect(),
        }
    }
}

/// Coordinates of a traceless 2x2 matrix in the basis
/// `E1 = [[1,0],[0,-1]]`, `E2 = [[0,1],[1,0]]`, `E3 = [[0,-1],[1,0]]`.
pub(crate) fn sl2_coords(m: &Mat2) -> [f64; 3] {
    [m.0[0][0], (m.0[0][1] + m.0[1][0]) / 2.0, (m.0[1][0] - m.0[0][1]) / 2.0]
}

pub(crate) fn sl2_from_coords(c: &[f64]) -> Mat2 {
    Mat2::new(c[0], c[1] - c[2], c[1] + c[2], -c[0])
}

/// Recursive extension of a cocycle to an arbitrary word, with
/// `z(g^-1) = -Ad_{rho0(g)^-1} z(g)`.
pub fn cocycle_extend(base: &RealRep, z: &Cocycle, w: &Word) -> Result<Mat2> {
    base.presentation.validate_word(w)?;
    if z.values.len() != base.presentation.rank() {
        return Err(Error::Precondition("one cocycle value per generator required"));
    }
    let mut acc = Mat2::zero();
    let mut prefix = Mat2::identity();
    for &letter in w {
        let idx = (letter.abs() - 1) as usize;
        let g = base.images[idx];
        let val = if letter > 0 {
            z.values[idx]
        } else {
            let ginv = g.inv().ok_or(Error::NotInvertible)?;
            -(ginv.ad(z.values[idx]))
        };
        acc = acc + prefix.ad(val);
        let f = if letter > 0 { g } else { g.inv().ok_or(Error::NotInvertible)? };
        prefix = prefix * f;
    }
    Ok(acc.traceless())
}

/// Max extension residual of `z` over the relators of the base
/// presentation.
pub fn cocycle_residual(base: &RealRep, z: &Cocycle) -> Result<f64> {
    let mut worst = 0.0f64;
    for r in &base.presentation.relators {
        worst = worst.max(cocycle_extend(base, z, r)?.max_abs());
    }
    Ok(worst)
}

/// The coboundary of `u`: `(delta u)(g) = u - Ad_{rho0(g)} u`.
pub fn coboundary(base: &RealRep, u: Mat2) -> Cocycle {
    Cocycle {
        values: base.images.iter().map(|g| (u - g.ad(u)).traceless()).collect(),
    }
}

/// An orthonormal basis of a cocycle or coboundary space together with the
/// singular values of the defining system, kept for auditability.
#[derive(Clone, Debug)]
pub struct CocycleSpace {
    pub basis: Vec<Cocycle>,
    pub singular_values: Vec<f64>,
}

impl CocycleSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

fn check_base(base: &RealRep) -> Result<()> {
    let res = base.relation_residual();
    if res > BASE_REP_TOL {
        return Err(Error::InvalidRepresentation { residual: res });
    }
    Ok(())
}

/// Assembles the linear system `{cocycle_extend(z, r) = 0 for all
/// relators}` over the `3 * rank` unknowns and returns an orthonormal basis
/// of its null space.
pub fn cocycle_space(base: &RealRep) -> Result<CocycleSpace> {
    check_base(base)?;
    let n = base.presentation.rank();
    let nvars = 3 * n;
    let relators = &base.presentation.relators;
    if relators.is_empty() {
        // Free group: every assignment is a cocycle.
        let mut basis = Vec::new();
        for k in 0..nvars {
            let mut coords = alloc::vec![0.0; nvars];
            coords[k] = 1.0;
            basis.push(unpack_cocycle(&coords, n));
        }
        return Ok(CocycleSpace { basis, singular_values: Vec::new() });
    }
    let rows = 3 * relators.len();
    let mut a = DMat::zeros(rows, nvars);
    for col in 0..nvars {
        let mut coords = alloc::vec![0.0; nvars];
        coords[col] = 1.0;
        let z = unpack_cocycle(&coords, n);
        for (ri, r) in relators.iter().enumerate() {
            let ext = cocycle_extend(base, &z, r)?;
            let c = sl2_coords(&ext);
            for k in 0..3 {
                a.set(3 * ri + k, col, c[k]);
            }
        }
    }
    let dec = svd(&a);
    let (rank, gap) = numeric_rank(&dec.s, RANK_REL_TOL);
    if gap < RANK_GAP_MIN {
        return Err(Error::AmbiguousRank { gap_ratio: gap });
    }
    let k = dec.s.len();
    let mut basis = Vec::new();
    for j in rank..k {
        let coords: Vec<f64> = (0..nvars).map(|i| dec.v.get(i, j)).collect();
        basis.push(unpack_cocycle(&coords, n));
    }
    // For a wide system (more unknowns than rows) the SVD only produces
    // min(rows, cols) right vectors; complete the kernel from the
    // orthogonal complement of the row space.
    let expected_nullity = nvars - rank;
    if basis.len() < expected_nullity {
        basis = complete_nullspace(&a, rank, n);
    }
    Ok(CocycleSpace { basis, singular_values: dec.s })
}

/// Kernel basis via the SVD of the stacked system with explicit
/// orthogonal completion (used when the constraint matrix is wide).
fn complete_nullspace(a: &DMat, rank: usize, gens: usize) -> Vec<Cocycle> {
    let nvars = a.cols;
    let dec = svd(a);
    // Row space directions: the first `rank` right singular vectors.
    let mut dirs: Vec<Vec<f64>> = (0..rank)
        .map(|j| (0..nvars).map(|i| dec.v.get(i, j)).collect())
        .collect();
    // Gram-Schmidt the coordinate directions against the row space.
    let mut basis = Vec::new();
    for k in 0..nvars {
        let mut v = alloc::vec![0.0; nvars];
        v[k] = 1.0;
        for d in &dirs {
            let dot: f64 = v.iter().zip(d.iter()).map(|(x, y)| x * y).sum();
            for (x, y) in v.iter_mut().zip(d.iter()) {
                *x -= dot * y;
            }
        }
        let norm: f64 = crate::math::sqrt(v.iter().map(|x| x * x).sum());
        if norm > 1e-9 {
            for x in v.iter_mut() {
                *x /= norm;
            }
            dirs.push(v.clone());
            basis.push(unpack_cocycle(&v, gens));
        }
    }
    basis
}

fn unpack_cocycle(coords: &[f64], gens: usize) -> Cocycle {
    let values = (0..gens)
        .map(|g| sl2_from_coords(&coords[3 * g..3 * g + 3]))
        .collect();
    Cocycle { values }
}

/// The image of `u -> delta u`, dimension `3 - dim(centralizer)`.
pub fn coboundary_space(base: &RealRep) -> Result<CocycleSpace> {
    check_base(base)?;
    let n = base.presentation.rank();
    let nvars = 3 * n;
    let mut a = DMat::zeros(nvars, 3);
    for col in 0..3 {
        let mut c = [0.0; 3];
        c[col] = 1.0;
        let z = coboundary(base, sl2_from_coords(&c));
        for (g, m) in z.values.iter().enumerate() {
            let cc = sl2_coords(m);
            for k in 0..3 {
                a.set(3 * g + k, col, cc[k]);
            }
        }
    }
    let dec = svd(&a);
    let (rank, gap) = numeric_rank(&dec.s, RANK_REL_TOL);
    if gap < RANK_GAP_MIN {
        return Err(Error::AmbiguousRank { gap_ratio: gap });
    }
    let basis = (0..rank)
        .map(|j| {
            let coords: Vec<f64> = (0..nvars).map(|i| dec.u.get(i, j)).collect();
            unpack_cocycle(&coords, n)
        })
        .collect();
    Ok(CocycleSpace { basis, singular_values: dec.s })
}

/// `dim Z^1`, `dim B^1` and their difference, with the singular values of
/// both systems for audit.
#[derive(Clone, Debug)]
pub struct H1Report {
    pub z1_dim: usize,
    pub b1_dim: usize,
    pub h1_dim: usize,
    pub z1_singular_values: Vec<f64>,
    pub b1_singular_values: Vec<f64>,
}

pub fn h1_dimension(base: &RealRep) -> Result<H1Report> {
    let z1 = cocycle_space(base)?;
    let b1 = coboundary_space(base)?;
    Ok(H1Report {
        z1_dim: z1.dim(),
        b1_dim: b1.dim(),
        h1_dim: z1.dim() - b1.dim(),
        z1_singular_values: z1.singular_values,
        b1_singular_values: b1.singular_values,
    })
}
