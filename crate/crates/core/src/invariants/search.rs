//! Exhaustive search for modular invariants: non-negative integer matrices
//! `Z` with `Z_00 = 1` commuting with `S` and `T`.
//!
//! `ZT = TZ` is imposed exactly: `Z_ij` may be non-zero only when
//! `θ_i = θ_j` as rational phases. The linear equations `ZS = SZ` are then
//! solved on that mask, and the integer points of the solution space with
//! entries in `0..=max_entry` are enumerated over its free parameters.

use serde::Serialize;

use crate::intmat::IntMatrix;
use crate::invariants::decompose::decompose;
use crate::modular::ModularDatum;
use crate::schellekens::modular_residuals;
use crate::{Error, Result};

/// Overrides [`SearchConfig::budget`] when set.
pub const BUDGET_ENV: &str = "MTC_BUDGET";

const PIVOT_TOLERANCE: f64 = 1e-9;
const INTEGER_TOLERANCE: f64 = 1e-6;
const RESIDUAL_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SearchConfig {
    pub max_entry: u32,
    /// Maximum number of free parameters left after solving `ZS = SZ`.
    pub budget: usize,
    /// Maximum alcove size.
    pub guard: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            max_entry: 3,
            budget: 24,
            guard: 36,
        }
    }
}

impl SearchConfig {
    /// Apply `MTC_BUDGET` if it is set.
    pub fn with_env_override(mut self) -> Result<Self> {
        if let Ok(v) = std::env::var(BUDGET_ENV) {
            self.budget = v.trim().parse().map_err(|_| {
                Error::InvalidArgument(format!("{BUDGET_ENV}={v:?} is not a non-negative integer"))
            })?;
        }
        Ok(self)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct InvariantMatrix {
    pub z: IntMatrix,
    pub residual_s: f64,
    pub residual_t: f64,
    pub trivial: bool,
    /// `(eigenvalue, multiplicity)`; absent for non-symmetric `Z`.
    pub eigen_decomposition: Option<Vec<(f64, usize)>>,
}

impl InvariantMatrix {
    pub fn new(z: IntMatrix, datum: &ModularDatum) -> Self {
        let (residual_s, residual_t) = modular_residuals(&z, datum);
        let eigen_decomposition = decompose(&z)
            .ok()
            .map(|cs| cs.iter().map(|c| (c.eigenvalue, c.multiplicity)).collect());
        InvariantMatrix {
            trivial: z.is_scalar(),
            z,
            residual_s,
            residual_t,
            eigen_decomposition,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct InvariantsReport {
    pub rank: usize,
    pub level: u32,
    pub config: SearchConfig,
    pub masked_entries: usize,
    pub free_parameters: usize,
    pub invariants: Vec<InvariantMatrix>,
}

/// Pairs `(i, j)` with `θ_i = θ_j`, row-major.
pub fn theta_mask(datum: &ModularDatum) -> Vec<(usize, usize)> {
    let n = datum.len();
    (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|&(i, j)| datum.theta[i] == datum.theta[j])
        .collect()
}

/// Solution set of `A x = b` as `x_pivot = offset - Σ coeff · x_free`.
struct AffineSolution {
    free: Vec<usize>,
    /// `(variable, offset, coefficient per free variable)`
    pivots: Vec<(usize, f64, Vec<f64>)>,
    consistent: bool,
}

fn solve(mut a: Vec<Vec<f64>>, mut b: Vec<f64>, vars: usize) -> AffineSolution {
    let scale = a
        .iter()
        .flat_map(|r| r.iter())
        .fold(0.0_f64, |m, x| m.max(x.abs()))
        .max(1.0);
    let tol = PIVOT_TOLERANCE * scale;
    let mut pivot_cols = Vec::new();
    let mut row = 0;
    for col in 0..vars {
        if row == a.len() {
            break;
        }
        let best = (row..a.len())
            .max_by(|&x, &y| a[x][col].abs().total_cmp(&a[y][col].abs()))
            .unwrap();
        if a[best][col].abs() <= tol {
            continue;
        }
        a.swap(row, best);
        b.swap(row, best);
        let p = a[row][col];
        for x in a[row].iter_mut() {
            *x /= p;
        }
        b[row] /= p;
        let pivot = a[row].clone();
        for r in 0..a.len() {
            if r != row && a[r][col] != 0.0 {
                let f = a[r][col];
                for (x, y) in a[r][col..vars].iter_mut().zip(&pivot[col..vars]) {
                    *x -= f * y;
                }
                b[r] -= f * b[row];
            }
        }
        pivot_cols.push(col);
        row += 1;
    }
    let consistent = b[row..].iter().all(|x| x.abs() <= tol.max(PIVOT_TOLERANCE));
    let free: Vec<usize> = (0..vars).filter(|c| !pivot_cols.contains(c)).collect();
    let pivots = pivot_cols
        .iter()
        .enumerate()
        .map(|(r, &c)| (c, b[r], free.iter().map(|&f| a[r][f]).collect()))
        .collect();
    AffineSolution {
        free,
        pivots,
        consistent,
    }
}

struct Search<'a> {
    sol: &'a AffineSolution,
    max: f64,
    /// `(min, max)` of `Σ_{f ≥ d} coeff_f x_f` over the box, per pivot and depth.
    tails: Vec<Vec<(f64, f64)>>,
    assignment: Vec<u32>,
    found: Vec<Vec<u32>>,
}

impl Search<'_> {
    fn run(&mut self, depth: usize, partial: &mut Vec<f64>) {
        for (p, (_, offset, _)) in self.sol.pivots.iter().enumerate() {
            // pivot = offset - partial - tail, tail ∈ [lo, hi]
            let (lo, hi) = self.tails[p][depth];
            let base = offset - partial[p];
            if base - hi > self.max + INTEGER_TOLERANCE || base - lo < -INTEGER_TOLERANCE {
                return;
            }
        }
        if depth == self.sol.free.len() {
            let mut values = self.assignment.clone();
            for (p, (_, offset, _)) in self.sol.pivots.iter().enumerate() {
                let v = offset - partial[p];
                let r = v.round();
                if (v - r).abs() > INTEGER_TOLERANCE || r < 0.0 || r > self.max {
                    return;
                }
                values.push(r as u32);
            }
            self.found.push(values);
            return;
        }
        for v in 0..=self.max as u32 {
            self.assignment.push(v);
            for (p, (_, _, coeff)) in self.sol.pivots.iter().enumerate() {
                partial[p] += coeff[depth] * v as f64;
            }
            self.run(depth + 1, partial);
            for (p, (_, _, coeff)) in self.sol.pivots.iter().enumerate() {
                partial[p] -= coeff[depth] * v as f64;
            }
            self.assignment.pop();
        }
    }
}

/// All modular invariants with entries in `0..=max_entry`, sorted.
pub fn enumerate_integer_invariants(
    datum: &ModularDatum,
    config: &SearchConfig,
) -> Result<InvariantsReport> {
    let n = datum.len();
    if n > config.guard {
        return Err(Error::GuardExceeded {
            size: n,
            guard: config.guard,
        });
    }
    let mask = theta_mask(datum);
    // Variable 0 is Z_00, fixed to 1; the rest are the other mask entries.
    debug_assert_eq!(mask[0], (0, 0));
    let vars = mask.len() - 1;
    let s = &datum.s;

    // Re and Im of (ZS - SZ)_{ab} = Σ_j Z_aj S_jb - Σ_i S_ai Z_ib.
    let mut a = vec![vec![0.0; vars]; 2 * n * n];
    let mut b = vec![0.0; 2 * n * n];
    for (v, &(i, j)) in mask.iter().enumerate() {
        let mut put = |r: usize, z: num_complex::Complex64| {
            if v == 0 {
                b[2 * r] -= z.re;
                b[2 * r + 1] -= z.im;
            } else {
                a[2 * r][v - 1] += z.re;
                a[2 * r + 1][v - 1] += z.im;
            }
        };
        for col in 0..n {
            put(i * n + col, s[(j, col)]);
        }
        for r in 0..n {
            put(r * n + j, -s[(r, i)]);
        }
    }
    let sol = solve(a, b, vars);
    let free_parameters = sol.free.len();
    if free_parameters > config.budget {
        return Err(Error::BudgetExceeded {
            free: free_parameters,
            budget: config.budget,
        });
    }

    let max = config.max_entry as f64;
    let f = sol.free.len();
    let tails = sol
        .pivots
        .iter()
        .map(|(_, _, coeff)| {
            let mut t = vec![(0.0, 0.0); f + 1];
            for d in (0..f).rev() {
                let c = coeff[d] * max;
                let (lo, hi) = t[d + 1];
                t[d] = (lo + c.min(0.0), hi + c.max(0.0));
            }
            t
        })
        .collect();
    let mut search = Search {
        sol: &sol,
        max,
        tails,
        assignment: Vec::new(),
        found: Vec::new(),
    };
    if sol.consistent {
        search.run(0, &mut vec![0.0; sol.pivots.len()]);
    }

    let mut matrices: Vec<IntMatrix> = search
        .found
        .into_iter()
        .filter_map(|values| {
            let mut z = IntMatrix::zeros(n);
            z.set(0, 0, 1);
            let order = sol.free.iter().chain(sol.pivots.iter().map(|(c, _, _)| c));
            for (&var, &val) in order.zip(&values) {
                let (i, j) = mask[var + 1];
                z.set(i, j, val);
            }
            let (rs, rt) = modular_residuals(&z, datum);
            (rs < RESIDUAL_TOLERANCE && rt < RESIDUAL_TOLERANCE).then_some(z)
        })
        .collect();
    matrices.sort();
    matrices.dedup();

    Ok(InvariantsReport {
        rank: datum.rank,
        level: datum.level,
        config: *config,
        masked_entries: mask.len(),
        free_parameters,
        invariants: matrices
            .into_iter()
            .map(|z| InvariantMatrix::new(z, datum))
            .collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schellekens::{build_algebra, torus_partition_function};
    use crate::simple_currents::effective_center;

    fn count(rank: usize, level: u32) -> usize {
        let d = ModularDatum::new(rank, level).unwrap();
        enumerate_integer_invariants(&d, &SearchConfig::default())
            .unwrap()
            .invariants
            .len()
    }

    #[test]
    fn su2_counts() {
        assert_eq!(count(2, 4), 2);
        assert_eq!(count(2, 5), 1);
        assert_eq!(count(2, 10), 3);
        assert_eq!(count(2, 1), 1);
        assert_eq!(count(2, 2), 1);
    }

    #[test]
    fn returned_matrices_are_invariants() {
        let d = ModularDatum::new(2, 10).unwrap();
        let r = enumerate_integer_invariants(&d, &SearchConfig::default()).unwrap();
        assert!(r.invariants.iter().any(|m| m.z.is_identity()));
        for m in &r.invariants {
            assert_eq!(m.z.get(0, 0), 1);
            assert!(m.residual_s < 1e-9 && m.residual_t < 1e-9);
            let total: usize = m
                .eigen_decomposition
                .as_ref()
                .unwrap()
                .iter()
                .map(|e| e.1)
                .sum();
            assert_eq!(total, d.len());
        }
    }

    #[test]
    fn schellekens_matrices_are_found() {
        for (rank, level) in [(2, 4), (2, 6), (2, 8), (3, 1), (3, 2), (3, 3), (4, 2)] {
            let d = ModularDatum::new(rank, level).unwrap();
            let r = enumerate_integer_invariants(&d, &SearchConfig::default()).unwrap();
            for &p in &effective_center(rank, level).unwrap().exponents {
                let z = torus_partition_function(&build_algebra(rank, level, p).unwrap()).z;
                assert!(
                    r.invariants.iter().any(|m| m.z == z),
                    "N={rank} k={level} p={p}"
                );
            }
        }
    }

    #[test]
    fn su3_level1_has_identity_and_conjugation() {
        let d = ModularDatum::new(3, 1).unwrap();
        let r = enumerate_integer_invariants(&d, &SearchConfig::default()).unwrap();
        let zs: Vec<&IntMatrix> = r.invariants.iter().map(|m| &m.z).collect();
        assert_eq!(zs.len(), 2);
        assert!(zs.contains(&&d.c_matrix()));
    }

    #[test]
    fn limits() {
        let d = ModularDatum::new(2, 40).unwrap();
        assert!(matches!(
            enumerate_integer_invariants(&d, &SearchConfig::default()),
            Err(Error::GuardExceeded {
                size: 41,
                guard: 36
            })
        ));
        let d = ModularDatum::new(2, 10).unwrap();
        let tight = SearchConfig {
            budget: 0,
            ..SearchConfig::default()
        };
        assert!(matches!(
            enumerate_integer_invariants(&d, &tight),
            Err(Error::BudgetExceeded { budget: 0, .. })
        ));
    }

    #[test]
    fn solver_parametrizes_solutions() {
        // x0 + x1 = 2, x2 = 1
        let a = vec![
            vec![1.0, 1.0, 0.0],
            vec![0.0, 0.0, 1.0],
            vec![2.0, 2.0, 0.0],
        ];
        let sol = solve(a, vec![2.0, 1.0, 4.0], 3);
        assert!(sol.consistent);
        assert_eq!(sol.free, vec![1]);
        assert_eq!(sol.pivots.len(), 2);
        let bad = solve(vec![vec![1.0], vec![1.0]], vec![1.0, 2.0], 1);
        assert!(!bad.consistent);
    }
}
