//! Weight combinatorics for su(N) at level k.
//!
//! Weights are stored as Dynkin labels `(λ_1, …, λ_{N-1})`. Formulas that are
//! naturally 1-based (the inverse Cartan matrix, the p'th label of `J^p`) are
//! written with 1-based math indices and mapped to 0-based storage at the
//! point of use: label `λ_i` lives at `labels()[i - 1]`.

use std::collections::HashMap;
use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

pub type Rational = num_rational::Rational64;

/// Dynkin labels of an integrable highest weight.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(Vec<u32>);

impl Weight {
    pub fn new(labels: Vec<u32>) -> Self {
        Weight(labels)
    }

    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank - 1])
    }

    pub fn labels(&self) -> &[u32] {
        &self.0
    }

    /// Number of labels, i.e. `N - 1`.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Sum of the labels.
    pub fn level(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&l| l == 0)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, ")")
    }
}

/// All weights with label sum at most `level`, in lexicographic order of the
/// label vectors. The zero weight comes first.
pub fn enumerate_alcove(rank: usize, level: u32) -> Vec<Weight> {
    assert!(rank >= 2, "su(N) needs N >= 2, got {rank}");
    fn fill(pos: usize, remaining: u32, cur: &mut Vec<u32>, out: &mut Vec<Weight>) {
        if pos == cur.len() {
            out.push(Weight(cur.clone()));
            return;
        }
        for v in 0..=remaining {
            cur[pos] = v;
            fill(pos + 1, remaining - v, cur, out);
        }
        cur[pos] = 0;
    }
    let mut out = Vec::new();
    fill(0, level, &mut vec![0; rank - 1], &mut out);
    out
}

/// Symmetrized inverse Cartan matrix of su(N):
/// `G_ij = min(i,j) (N - max(i,j)) / N` for `1 <= i, j <= N-1`.
pub fn inverse_cartan(rank: usize) -> Vec<Vec<Rational>> {
    assert!(rank >= 2, "su(N) needs N >= 2, got {rank}");
    let n = rank as i64;
    (1..n)
        .map(|i| {
            (1..n)
                .map(|j| Rational::new(i.min(j) * (n - i.max(j)), n))
                .collect()
        })
        .collect()
}

fn check_len(rank: usize, w: &Weight) -> Result<()> {
    if w.len() != rank - 1 {
        return Err(Error::DimensionMismatch {
            expected: rank - 1,
            found: w.len(),
        });
    }
    Ok(())
}

// (μ,ν) with integer labels. Summing min(i,j)(N-max(i,j)) μ_i ν_j over
// integers first keeps a single division by N at the end.
fn form_numerator(rank: usize, mu: &[i64], nu: &[i64]) -> i64 {
    let n = rank as i64;
    let mut acc = 0i64;
    for (i, &m) in mu.iter().enumerate() {
        if m == 0 {
            continue;
        }
        let i1 = i as i64 + 1;
        for (j, &v) in nu.iter().enumerate() {
            let j1 = j as i64 + 1;
            acc += m * v * i1.min(j1) * (n - i1.max(j1));
        }
    }
    acc
}

/// Exact value of the bilinear form `(μ,ν) = Σ_ij μ_i ν_j G_ij`.
pub fn inner_product(rank: usize, mu: &Weight, nu: &Weight) -> Result<Rational> {
    check_len(rank, mu)?;
    check_len(rank, nu)?;
    let a: Vec<i64> = mu.0.iter().map(|&x| x as i64).collect();
    let b: Vec<i64> = nu.0.iter().map(|&x| x as i64).collect();
    Ok(Rational::new(form_numerator(rank, &a, &b), rank as i64))
}

/// Conformal weight `Δ_λ = (λ, λ + 2ρ) / (2 (k + N))` with `ρ = (1,…,1)` and
/// dual Coxeter number `N`.
///
/// Panics if `λ` does not have `N - 1` labels.
pub fn conformal_weight(rank: usize, level: u32, weight: &Weight) -> Rational {
    check_len(rank, weight).expect("conformal_weight: wrong number of labels");
    let lam: Vec<i64> = weight.0.iter().map(|&x| x as i64).collect();
    let shifted: Vec<i64> = lam.iter().map(|&x| x + 2).collect();
    let num = form_numerator(rank, &lam, &shifted);
    if num.is_zero() {
        return Rational::zero();
    }
    Rational::new(num, 2 * rank as i64 * (level as i64 + rank as i64))
}

/// Charge conjugation: reverses the Dynkin labels.
pub fn conjugate(weight: &Weight) -> Weight {
    Weight(weight.0.iter().rev().copied().collect())
}

/// The alcove `P^{N,k}_{++}` together with an index lookup.
#[derive(Clone, Debug)]
pub struct Alcove {
    rank: usize,
    level: u32,
    weights: Vec<Weight>,
    index: HashMap<Weight, usize>,
}

impl Alcove {
    pub fn new(rank: usize, level: u32) -> Self {
        let weights = enumerate_alcove(rank, level);
        let index = weights
            .iter()
            .enumerate()
            .map(|(i, w)| (w.clone(), i))
            .collect();
        Alcove {
            rank,
            level,
            weights,
            index,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn weights(&self) -> &[Weight] {
        &self.weights
    }

    pub fn weight(&self, i: usize) -> &Weight {
        &self.weights[i]
    }

    pub fn index_of(&self, w: &Weight) -> Option<usize> {
        self.index.get(w).copied()
    }

    pub fn contains(&self, w: &Weight) -> bool {
        self.index.contains_key(w)
    }

    /// Index of the conjugate of each weight.
    pub fn conjugation(&self) -> Vec<usize> {
        self.weights
            .iter()
            .map(|w| self.index[&conjugate(w)])
            .collect()
    }

    /// Exact conformal weight of every alcove member, in alcove order.
    pub fn conformal_weights(&self) -> Vec<Rational> {
        self.weights
            .iter()
            .map(|w| conformal_weight(self.rank, self.level, w))
            .collect()
    }
}

#[cfg(test)]
#[allow(clippy::needless_range_loop)]
mod tests {
    use super::*;
    use num_integer::binomial;
    use proptest::prelude::*;

    fn w(labels: &[u32]) -> Weight {
        Weight::new(labels.to_vec())
    }

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    // Every vector in [0,k]^{N-1} filtered by level, then sorted.
    fn brute_alcove(rank: usize, level: u32) -> Vec<Weight> {
        let mut all = vec![vec![]];
        for _ in 0..rank - 1 {
            all = all
                .into_iter()
                .flat_map(|v: Vec<u32>| {
                    (0..=level).map(move |x| {
                        let mut v = v.clone();
                        v.push(x);
                        v
                    })
                })
                .collect();
        }
        let mut out: Vec<Weight> = all
            .into_iter()
            .filter(|v| v.iter().sum::<u32>() <= level)
            .map(Weight::new)
            .collect();
        out.sort();
        out
    }

    #[test]
    fn alcove_small_cases() {
        assert_eq!(
            enumerate_alcove(2, 4),
            vec![w(&[0]), w(&[1]), w(&[2]), w(&[3]), w(&[4])]
        );
        assert_eq!(
            enumerate_alcove(3, 1),
            vec![w(&[0, 0]), w(&[0, 1]), w(&[1, 0])]
        );
        assert_eq!(enumerate_alcove(2, 0), vec![w(&[0])]);
    }

    #[test]
    fn alcove_matches_brute_force_and_binomial() {
        for rank in 2..=6 {
            for level in 0..=8u32 {
                let a = enumerate_alcove(rank, level);
                assert!(a[0].is_zero());
                assert_eq!(
                    a.len() as u64,
                    binomial((rank - 1) as u64 + level as u64, level as u64),
                    "N={rank} k={level}"
                );
                if rank <= 4 {
                    assert_eq!(a, brute_alcove(rank, level));
                }
            }
        }
    }

    #[test]
    fn inverse_cartan_values() {
        assert_eq!(inverse_cartan(2), vec![vec![r(1, 2)]]);
        assert_eq!(
            inverse_cartan(3),
            vec![vec![r(2, 3), r(1, 3)], vec![r(1, 3), r(2, 3)]]
        );
        let g = inverse_cartan(7);
        for i in 0..6 {
            for j in 0..6 {
                assert_eq!(g[i][j], g[j][i]);
            }
        }
    }

    #[test]
    fn inverse_cartan_inverts_cartan() {
        for rank in 2..=8 {
            let g = inverse_cartan(rank);
            let m = rank - 1;
            for i in 0..m {
                for j in 0..m {
                    let mut acc = Rational::zero();
                    for l in 0..m {
                        let a = if i == l {
                            2
                        } else if i.abs_diff(l) == 1 {
                            -1
                        } else {
                            0
                        };
                        acc += Rational::from_integer(a) * g[l][j];
                    }
                    let expect = if i == j { 1 } else { 0 };
                    assert_eq!(acc, Rational::from_integer(expect));
                }
            }
        }
    }

    #[test]
    fn inner_products() {
        assert_eq!(inner_product(2, &w(&[1]), &w(&[1])).unwrap(), r(1, 2));
        assert_eq!(inner_product(3, &w(&[1, 0]), &w(&[0, 1])).unwrap(), r(1, 3));
        assert_eq!(
            inner_product(4, &w(&[0, 0, 0]), &w(&[3, 1, 2])).unwrap(),
            Rational::zero()
        );
        assert!(matches!(
            inner_product(3, &w(&[1]), &w(&[0, 1])),
            Err(Error::DimensionMismatch {
                expected: 2,
                found: 1
            })
        ));
    }

    #[test]
    fn conformal_weight_examples() {
        assert_eq!(conformal_weight(4, 3, &w(&[0, 0, 0])), Rational::zero());
        assert_eq!(conformal_weight(2, 4, &w(&[2])), r(1, 3));
        // su(2): Δ_n = n(n+2) / (4(k+2)).
        for k in 0..10u32 {
            for n in 0..=k {
                let expect = r((n * (n + 2)) as i64, 4 * (k as i64 + 2));
                assert_eq!(conformal_weight(2, k, &w(&[n])), expect);
            }
        }
    }

    #[test]
    fn conjugation() {
        assert_eq!(conjugate(&w(&[1, 0])), w(&[0, 1]));
        assert_eq!(conjugate(&w(&[5])), w(&[5]));
        for lam in enumerate_alcove(4, 3) {
            assert_eq!(conjugate(&conjugate(&lam)), lam);
            assert_eq!(conjugate(&lam).level(), lam.level());
        }
    }

    #[test]
    fn alcove_lookup() {
        let a = Alcove::new(3, 2);
        assert_eq!(a.len(), 6);
        for (i, wt) in a.weights().iter().enumerate() {
            assert_eq!(a.index_of(wt), Some(i));
        }
        assert_eq!(a.index_of(&w(&[2, 1])), None);
        let c = a.conjugation();
        for i in 0..a.len() {
            assert_eq!(c[c[i]], i);
        }
    }

    proptest! {
        #[test]
        fn conformal_weight_conjugation_invariant(rank in 2usize..7, level in 0u32..9, pick in 0usize..10_000) {
            let a = enumerate_alcove(rank, level);
            let lam = &a[pick % a.len()];
            prop_assert_eq!(
                conformal_weight(rank, level, lam),
                conformal_weight(rank, level, &conjugate(lam))
            );
            prop_assert!(conformal_weight(rank, level, lam) >= Rational::zero());
        }

        #[test]
        fn norm_is_positive_definite(labels in proptest::collection::vec(0u32..6, 1..6)) {
            let rank = labels.len() + 1;
            let lam = Weight::new(labels);
            let norm = inner_product(rank, &lam, &lam).unwrap();
            if lam.is_zero() {
                prop_assert_eq!(norm, Rational::zero());
            } else {
                prop_assert!(norm > Rational::zero());
            }
        }
    }
}
