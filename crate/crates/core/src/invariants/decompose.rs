use nalgebra::DMatrix;
use serde::Serialize;

use crate::intmat::IntMatrix;
use crate::{Error, Result};

const CLUSTER_TOLERANCE: f64 = 1e-6;

/// One eigenvalue of a symmetric matrix, with an orthonormal basis of its
/// eigenspace (columns of `basis`).
#[derive(Clone, Debug, Serialize)]
pub struct EigenCluster {
    pub eigenvalue: f64,
    pub multiplicity: usize,
    #[serde(skip)]
    pub basis: DMatrix<f64>,
}

/// Eigenvalues of a symmetric integer matrix, clustered at `1e-6`, in
/// decreasing order.
pub fn decompose(z: &IntMatrix) -> Result<Vec<EigenCluster>> {
    if let Some((row, col)) = z.first_asymmetry() {
        return Err(Error::NonSymmetric { row, col });
    }
    let n = z.size();
    if n == 0 {
        return Ok(Vec::new());
    }
    let m = DMatrix::<f64>::from_fn(n, n, |i, j| z.get(i, j) as f64);
    let eig = m.symmetric_eigen();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));

    let mut clusters: Vec<Vec<usize>> = Vec::new();
    for &i in &order {
        match clusters.last_mut() {
            Some(c)
                if eig.eigenvalues[*c.last().unwrap()] - eig.eigenvalues[i]
                    <= CLUSTER_TOLERANCE =>
            {
                c.push(i)
            }
            _ => clusters.push(vec![i]),
        }
    }
    Ok(clusters
        .into_iter()
        .map(|c| {
            let mean = c.iter().map(|&i| eig.eigenvalues[i]).sum::<f64>() / c.len() as f64;
            let basis = DMatrix::from_fn(n, c.len(), |r, k| eig.eigenvectors[(r, c[k])]);
            EigenCluster {
                eigenvalue: mean,
                multiplicity: c.len(),
                basis,
            }
        })
        .collect())
}

/// As [`decompose`], asserting that every eigenvalue is within `1e-6` of an
/// integer. Returns `(eigenvalue, multiplicity)` pairs.
pub fn decompose_integral(z: &IntMatrix) -> Result<Vec<(i64, usize)>> {
    decompose(z)?
        .into_iter()
        .map(|c| {
            let r = c.eigenvalue.round();
            if (c.eigenvalue - r).abs() >= CLUSTER_TOLERANCE {
                return Err(Error::NonIntegralEigenvalue {
                    value: c.eigenvalue,
                    tolerance: CLUSTER_TOLERANCE,
                });
            }
            Ok((r as i64, c.multiplicity))
        })
        .collect()
}
