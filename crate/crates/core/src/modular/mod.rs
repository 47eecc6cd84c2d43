//! Genus-1 modular data `(θ, S, T, C, ζ)` of su(N) at level k.

mod json;
mod phase;
mod relations;
mod smatrix;
pub(crate) mod symmetry;

use num_complex::Complex64;

use crate::intmat::IntMatrix;
use crate::liealg::{conformal_weight, Alcove, Rational, Weight};
use crate::linalg::matmul;
pub use crate::linalg::CMatrix;
use crate::{Error, Result};

pub use json::DatumJson;
pub use phase::RationalPhase;
pub use relations::{verify_relations, verify_relations_with, RelationMethod, RelationReport};
pub use smatrix::{quantum_dimensions, s_matrix, s_matrix_direct, shifted_labels};

/// Default max-norm tolerance for the SL(2,Z) relations.
pub const RELATION_TOLERANCE: f64 = 1e-9;

/// `θ_λ = exp(-2πi Δ_λ)`, exact.
pub fn twist(rank: usize, level: u32, weight: &Weight) -> RationalPhase {
    RationalPhase::from_conformal_weight(conformal_weight(rank, level, weight))
}

/// The modular datum of su(N) level k. Immutable once built.
#[derive(Clone, Debug)]
pub struct ModularDatum {
    pub rank: usize,
    pub level: u32,
    pub alcove: Alcove,
    pub conformal_weights: Vec<Rational>,
    pub theta: Vec<RationalPhase>,
    pub s: CMatrix,
    /// Diagonal of `T = ζ^{-1} θ`.
    pub t: Vec<Complex64>,
    /// `conjugation[i]` is the index of the dual of object `i`.
    pub conjugation: Vec<usize>,
    pub zeta: Complex64,
    pub qdim: Vec<f64>,
}

impl ModularDatum {
    pub fn new(rank: usize, level: u32) -> Result<Self> {
        if rank < 2 {
            return Err(Error::InvalidArgument(format!(
                "rank must be >= 2, got {rank}"
            )));
        }
        let alcove = Alcove::new(rank, level);
        let s = s_matrix(&alcove);
        Self::from_parts(alcove, s)
    }

    pub(crate) fn from_parts(alcove: Alcove, s: CMatrix) -> Result<Self> {
        let (rank, level) = (alcove.rank(), alcove.level());
        let conformal_weights = alcove.conformal_weights();
        let theta: Vec<RationalPhase> = conformal_weights
            .iter()
            .map(|&d| RationalPhase::from_conformal_weight(d))
            .collect();
        let conjugation = alcove.conjugation();
        let qdim = quantum_dimensions(&s);
        let zeta = zeta(&s, &theta, &qdim)?;
        let t = theta.iter().map(|th| th.to_complex() / zeta).collect();
        Ok(ModularDatum {
            rank,
            level,
            alcove,
            conformal_weights,
            theta,
            s,
            t,
            conjugation,
            zeta,
            qdim,
        })
    }

    pub fn len(&self) -> usize {
        self.alcove.len()
    }

    pub fn is_empty(&self) -> bool {
        self.alcove.is_empty()
    }

    pub fn t_matrix(&self) -> CMatrix {
        CMatrix::from_diagonal(&nalgebra::DVector::from_vec(self.t.clone()))
    }

    /// Charge conjugation as a 0/1 permutation matrix.
    pub fn c_matrix(&self) -> IntMatrix {
        let mut c = IntMatrix::zeros(self.len());
        for (i, &j) in self.conjugation.iter().enumerate() {
            c.set(i, j, 1);
        }
        c
    }

    pub fn verify_relations(&self) -> RelationReport {
        verify_relations(self)
    }
}

fn probe_residual(s: &CMatrix, theta: &[Complex64], branch: Complex64) -> f64 {
    // (ST)^3 e_0 against S^2 e_0, with T = ζ^{-1} θ.
    let n = s.nrows();
    let mut v = CMatrix::zeros(n, 1);
    v[(0, 0)] = Complex64::new(1.0, 0.0);
    let s2 = matmul(s, &matmul(s, &v));
    let scale = branch.inv();
    for _ in 0..3 {
        for (i, th) in theta.iter().enumerate() {
            v[(i, 0)] *= th * scale;
        }
        v = matmul(s, &v);
    }
    (0..n).fold(0.0, |m, i| m.max((v[(i, 0)] - s2[(i, 0)]).norm()))
}

/// `ζ = (Σ θ_i d_i² / Σ θ_i^{-1} d_i²)^{1/6}` on the branch for which
/// `T = ζ^{-1} θ` satisfies `(ST)^3 = S^2`. Three of the six branches pass
/// (they differ by cube roots of unity); the one with the smallest argument
/// in `[0, 2π)` is returned.
pub fn zeta(s: &CMatrix, theta: &[RationalPhase], qdim: &[f64]) -> Result<Complex64> {
    let th: Vec<Complex64> = theta.iter().map(|p| p.to_complex()).collect();
    let num: Complex64 = th.iter().zip(qdim).map(|(t, d)| t * d * d).sum();
    let den: Complex64 = th.iter().zip(qdim).map(|(t, d)| t.conj() * d * d).sum();
    let quotient = num / den;
    let base = quotient.norm().powf(1.0 / 6.0);
    let arg0 = quotient.arg().rem_euclid(std::f64::consts::TAU) / 6.0;
    let mut best = f64::INFINITY;
    for m in 0..6 {
        let branch = Complex64::from_polar(base, arg0 + std::f64::consts::TAU * m as f64 / 6.0);
        let r = probe_residual(s, &th, branch);
        if r < 1e-8 {
            return Ok(branch);
        }
        best = best.min(r);
    }
    Err(Error::NoZetaBranch {
        best_residual: best,
    })
}
