use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::linalg::CMatrix;

/// Joint commutant of `S` and a diagonal `T`.
#[derive(Clone, Debug)]
pub struct CommutantReport {
    pub dimension: usize,
    /// Orthonormal in the Frobenius inner product.
    pub basis: Vec<CMatrix>,
}

#[derive(Serialize)]
struct CommutantSummary {
    dimension: usize,
}

impl Serialize for CommutantReport {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        CommutantSummary {
            dimension: self.dimension,
        }
        .serialize(serializer)
    }
}

/// Null space of `X ↦ (XS - SX, XT - TX)`.
///
/// `XT = TX` forces `X_ij = 0` unless `T_ii ≈ T_jj`, so the unknowns are the
/// entries on that mask and only `XS = SX` enters the singular value
/// decomposition. Singular values below `1e-9 · σ_max` count as zero.
pub fn commutant(s: &CMatrix, t: &[Complex64]) -> CommutantReport {
    let n = s.nrows();
    assert_eq!(s.ncols(), n, "S must be square");
    assert_eq!(t.len(), n, "T must match S");
    let mask: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|&(i, j)| (t[i] - t[j]).norm() < 1e-9)
        .collect();
    let m = mask.len();
    let rows = (n * n).max(m);
    // (XS - SX)_{ab} = Σ_j X_aj S_jb - Σ_i S_ai X_ib
    let mut a = DMatrix::<Complex64>::zeros(rows, m);
    for (v, &(i, j)) in mask.iter().enumerate() {
        for b in 0..n {
            a[(i * n + b, v)] += s[(j, b)];
        }
        for r in 0..n {
            a[(r * n + j, v)] -= s[(r, i)];
        }
    }
    let svd = a.svd(false, true);
    let v_t = svd.v_t.expect("requested V^T");
    let sigma_max = svd.singular_values.iter().fold(0.0_f64, |x, &y| x.max(y));
    let threshold = 1e-9 * sigma_max.max(f64::MIN_POSITIVE);
    let basis: Vec<CMatrix> = svd
        .singular_values
        .iter()
        .enumerate()
        .filter(|&(_, &sv)| sv < threshold)
        .map(|(r, _)| {
            let mut x = CMatrix::zeros(n, n);
            for (v, &(i, j)) in mask.iter().enumerate() {
                x[(i, j)] = v_t[(r, v)].conj();
            }
            x
        })
        .collect();
    CommutantReport {
        dimension: basis.len(),
        basis,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{matmul, max_abs_diff};
    use crate::modular::ModularDatum;
    use crate::schellekens::{build_algebra, torus_partition_function};

    #[test]
    fn one_by_one() {
        let s = CMatrix::from_element(1, 1, Complex64::new(1.0, 0.0));
        assert_eq!(commutant(&s, &[Complex64::new(1.0, 0.0)]).dimension, 1);
    }

    fn dim(rank: usize, level: u32) -> usize {
        let d = ModularDatum::new(rank, level).unwrap();
        commutant(&d.s, &d.t).dimension
    }

    #[test]
    fn su2_dimensions() {
        // k+2 prime
        for k in [1, 3, 5, 9, 11] {
            assert_eq!(dim(2, k), 1, "k={k}");
        }
        for (k, expect) in [(4, 2), (6, 2), (8, 2), (10, 3), (14, 2)] {
            assert_eq!(dim(2, k), expect, "k={k}");
        }
    }

    #[test]
    fn basis_commutes_and_is_orthonormal() {
        let d = ModularDatum::new(2, 10).unwrap();
        let c = commutant(&d.s, &d.t);
        let t = d.t_matrix();
        for x in &c.basis {
            assert!(max_abs_diff(&matmul(x, &d.s), &matmul(&d.s, x)) < 1e-9);
            assert!(max_abs_diff(&matmul(x, &t), &matmul(&t, x)) < 1e-9);
        }
        for (p, x) in c.basis.iter().enumerate() {
            for (q, y) in c.basis.iter().enumerate() {
                let ip: Complex64 = x.iter().zip(y.iter()).map(|(a, b)| a.conj() * b).sum();
                let expect = if p == q { 1.0 } else { 0.0 };
                assert!((ip - expect).norm() < 1e-9);
            }
        }
    }

    #[test]
    fn schellekens_z_lies_in_the_commutant() {
        let d = ModularDatum::new(3, 3).unwrap();
        let c = commutant(&d.s, &d.t);
        assert!(c.dimension >= 2);
        let z = torus_partition_function(&build_algebra(3, 3, 1).unwrap())
            .z
            .to_complex();
        // Project onto the basis and check nothing is left over.
        let mut rest = z.clone();
        for x in &c.basis {
            let ip: Complex64 = x.iter().zip(z.iter()).map(|(a, b)| a.conj() * b).sum();
            rest -= x * ip;
        }
        assert!(rest.iter().all(|v| v.norm() < 1e-8));
    }

    #[test]
    fn su3_level1_contains_identity_and_conjugation() {
        assert_eq!(dim(3, 1), 2);
    }
}
