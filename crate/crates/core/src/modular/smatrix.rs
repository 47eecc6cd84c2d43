//! The su(N) level-k S-matrix from the Weyl-group determinant formula.
//!
//! With shifted labels `ℓ_a(λ) = Σ_{j≥a} λ_j + (N - a)` (so `ℓ_N = 0`) and
//! `K = k + N`,
//!
//! ```text
//! S_{λμ} = c · exp(-2πi |ℓ||ℓ'| / (N K)) · det[ exp(2πi ℓ_a ℓ'_b / K) ]_{a,b}
//! ```
//!
//! where `|ℓ| = Σ_a ℓ_a` and `c` has modulus `N^{-1/2} K^{-(N-1)/2}` and the
//! phase that makes `S_{00}` positive. Since `ℓ_N = ℓ'_N = 0`, subtracting the
//! last row reduces the determinant to `det[ω^{ℓ_a ℓ'_b} - 1]_{a,b<N}`.

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::liealg::{Alcove, Weight};
use crate::linalg::CMatrix;
use crate::modular::symmetry::AlcoveSymmetry;

/// `ℓ_1, …, ℓ_{N-1}`; the omitted `ℓ_N` is zero.
pub fn shifted_labels(rank: usize, weight: &Weight) -> Vec<i64> {
    let labels = weight.labels();
    (0..rank - 1)
        .map(|a| labels[a..].iter().map(|&x| x as i64).sum::<i64>() + (rank - 1 - a) as i64)
        .collect()
}

struct Kernel {
    dim: usize,
    modulus: i64,
    // ω^m - 1 for m mod K
    shifted_roots: Vec<Complex64>,
    // exp(-2πi m / (N K)) for m mod N K
    correction: Vec<Complex64>,
    ells: Vec<Vec<i64>>,
    sums: Vec<i64>,
    scale: Complex64,
}

impl Kernel {
    fn new(alcove: &Alcove) -> Self {
        let rank = alcove.rank();
        let modulus = alcove.level() as i64 + rank as i64;
        let big = modulus * rank as i64;
        let shifted_roots = (0..modulus)
            .map(|m| Complex64::from_polar(1.0, TAU * m as f64 / modulus as f64) - 1.0)
            .collect();
        let correction = (0..big)
            .map(|m| Complex64::from_polar(1.0, -TAU * m as f64 / big as f64))
            .collect();
        let ells: Vec<Vec<i64>> = alcove
            .weights()
            .iter()
            .map(|w| shifted_labels(rank, w))
            .collect();
        let sums = ells.iter().map(|l| l.iter().sum()).collect();
        let mut kernel = Kernel {
            dim: rank - 1,
            modulus,
            shifted_roots,
            correction,
            ells,
            sums,
            scale: Complex64::new(1.0, 0.0),
        };
        let raw = kernel.entry(
            0,
            0,
            &mut vec![Complex64::new(0.0, 0.0); kernel.dim * kernel.dim],
        );
        let magnitude =
            1.0 / ((rank as f64).sqrt() * (modulus as f64).powf((rank as f64 - 1.0) / 2.0));
        kernel.scale = magnitude * raw.conj() / raw.norm();
        kernel
    }

    fn entry(&self, i: usize, j: usize, buf: &mut [Complex64]) -> Complex64 {
        let d = self.dim;
        let (l, lp) = (&self.ells[i], &self.ells[j]);
        for a in 0..d {
            for b in 0..d {
                buf[a * d + b] = self.shifted_roots[((l[a] * lp[b]) % self.modulus) as usize];
            }
        }
        let big = self.correction.len() as i64;
        let corr = self.correction[((self.sums[i] * self.sums[j]) % big) as usize];
        self.scale * corr * determinant(buf, d)
    }

    fn row(&self, i: usize, n: usize) -> Vec<Complex64> {
        let mut buf = vec![Complex64::new(0.0, 0.0); self.dim * self.dim];
        (0..n).map(|j| self.entry(i, j, &mut buf)).collect()
    }
}

// LU with partial pivoting; destroys `m`.
fn determinant(m: &mut [Complex64], d: usize) -> Complex64 {
    let mut det = Complex64::new(1.0, 0.0);
    for c in 0..d {
        let mut piv = c;
        let mut best = m[c * d + c].norm_sqr();
        for r in c + 1..d {
            let v = m[r * d + c].norm_sqr();
            if v > best {
                best = v;
                piv = r;
            }
        }
        if best == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        if piv != c {
            for j in c..d {
                m.swap(c * d + j, piv * d + j);
            }
            det = -det;
        }
        let p = m[c * d + c];
        det *= p;
        let inv = 1.0 / p;
        for r in c + 1..d {
            let f = m[r * d + c] * inv;
            for j in c + 1..d {
                let t = m[c * d + j];
                m[r * d + j] -= f * t;
            }
        }
    }
    det
}

/// Every entry evaluated from the determinant formula.
pub fn s_matrix_direct(alcove: &Alcove) -> CMatrix {
    let n = alcove.len();
    if n == 1 {
        return CMatrix::identity(1, 1);
    }
    let kernel = Kernel::new(alcove);
    let mut buf = vec![Complex64::new(0.0, 0.0); kernel.dim * kernel.dim];
    CMatrix::from_fn(n, n, |i, j| kernel.entry(i, j, &mut buf))
}

/// The S-matrix with only one row per orbit of `⟨J, conjugation⟩` evaluated
/// from the determinant formula; the other rows follow from
/// `S_{J^p r, μ} = ψ(μ)^p S_{r,μ}` and `S_{λ̄,μ} = conj(S_{λ,μ})`.
pub fn s_matrix(alcove: &Alcove) -> CMatrix {
    let sym = AlcoveSymmetry::new(alcove);
    s_matrix_with(alcove, &sym)
}

pub(crate) fn s_matrix_with(alcove: &Alcove, sym: &AlcoveSymmetry) -> CMatrix {
    let n = alcove.len();
    if n == 1 {
        return CMatrix::identity(1, 1);
    }
    let kernel = Kernel::new(alcove);
    let mut s = CMatrix::zeros(n, n);
    let mut rep_rows: Vec<Option<Vec<Complex64>>> = vec![None; n];
    for &r in &sym.dihedral_reps {
        rep_rows[r] = Some(kernel.row(r, n));
    }
    // ψ(μ)^p as complex numbers, p = 0..N-1.
    let psi_pow: Vec<Vec<Complex64>> = (0..sym.rank as i64)
        .map(|p| sym.psi.iter().map(|ph| ph.pow(p).to_complex()).collect())
        .collect();
    for lambda in 0..n {
        let pos = sym.position[lambda];
        let base = rep_rows[pos.rep].as_ref().unwrap();
        let phases = &psi_pow[pos.power as usize];
        for mu in 0..n {
            let v = phases[mu] * base[mu];
            s[(lambda, mu)] = if pos.conjugated { v.conj() } else { v };
        }
    }
    s
}

/// `S_{0,i} / S_{0,0}`.
pub fn quantum_dimensions(s: &CMatrix) -> Vec<f64> {
    let s00 = s[(0, 0)];
    (0..s.ncols()).map(|i| (s[(0, i)] / s00).re).collect()
}
