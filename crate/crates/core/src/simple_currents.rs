//! The Picard group `Z/N` of su(N) level k, generated by `J = (k,0,…,0)`,
//! its action on the alcove and its effective center.

use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;

use crate::liealg::{conformal_weight, Alcove, Rational, Weight};
use crate::{Error, Result};

/// The simple current `J^p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SimpleCurrent {
    pub power: u32,
    pub weight: Weight,
}

impl SimpleCurrent {
    /// `J^p`: label `k` in (1-based) position `p`, zero elsewhere; `J^0` is
    /// the zero weight.
    pub fn new(rank: usize, level: u32, p: u32) -> Self {
        let power = p % rank as u32;
        let mut labels = vec![0; rank - 1];
        if power != 0 {
            labels[power as usize - 1] = level;
        }
        SimpleCurrent {
            power,
            weight: Weight::new(labels),
        }
    }

    pub fn conformal_weight(&self, rank: usize, level: u32) -> Rational {
        conformal_weight(rank, level, &self.weight)
    }
}

fn act_once(level: u32, labels: &[u32]) -> Vec<u32> {
    let sum: u32 = labels.iter().sum();
    debug_assert!(sum <= level, "weight outside the alcove");
    let mut out = Vec::with_capacity(labels.len());
    out.push(level - sum);
    out.extend_from_slice(&labels[..labels.len() - 1]);
    out
}

/// `J^p λ`, the p-fold iterate of
/// `(λ_1,…,λ_{N-1}) ↦ (k - Σλ_i, λ_1, …, λ_{N-2})`.
pub fn act(rank: usize, level: u32, p: u32, weight: &Weight) -> Weight {
    assert_eq!(weight.len(), rank - 1, "act: wrong number of labels");
    let mut labels = weight.labels().to_vec();
    for _ in 0..p % rank as u32 {
        labels = act_once(level, &labels);
    }
    Weight::new(labels)
}

/// Alcove index of `J^p λ` for every alcove index `λ`.
pub fn action_permutation(alcove: &Alcove, p: u32) -> Vec<usize> {
    let one: Vec<usize> = alcove
        .weights()
        .iter()
        .map(|w| {
            let image = Weight::new(act_once(alcove.level(), w.labels()));
            alcove
                .index_of(&image)
                .expect("J maps the alcove to itself")
        })
        .collect();
    let mut perm: Vec<usize> = (0..alcove.len()).collect();
    for _ in 0..p % alcove.rank() as u32 {
        perm = perm.iter().map(|&i| one[i]).collect();
    }
    perm
}

/// Order of `J^p` in `Z/N`.
pub fn order(rank: usize, p: u32) -> u32 {
    let n = rank as u32;
    n / (p % n).gcd(&n)
}

/// Exponents `p` with `J^p` in the effective center, i.e. `θ_{J^p}^{|J^p|} = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EffectiveCenter {
    pub rank: usize,
    pub level: u32,
    /// Sorted exponents `p ∈ {0,…,N-1}`.
    pub exponents: Vec<u32>,
    /// Smallest positive member, if any.
    pub generator: Option<u32>,
}

impl EffectiveCenter {
    fn from_exponents(rank: usize, level: u32, exponents: Vec<u32>) -> Self {
        let generator = exponents.iter().copied().find(|&p| p > 0);
        EffectiveCenter {
            rank,
            level,
            exponents,
            generator,
        }
    }

    pub fn contains(&self, p: u32) -> bool {
        self.exponents
            .binary_search(&(p % self.rank as u32))
            .is_ok()
    }

    /// Whether the cyclic subgroup `⟨J^p⟩` lies inside.
    pub fn contains_subgroup(&self, p: u32) -> bool {
        let n = self.rank as u32;
        (0..order(self.rank, p)).all(|a| self.contains((a * p) % n))
    }

    pub fn size(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_full(&self) -> bool {
        self.exponents.len() == self.rank
    }
}

/// Exact test `|J^p| Δ_{J^p} ∈ Z` with `Δ` evaluated from the weight `J^p`.
pub fn effective_center_first_principles(rank: usize, level: u32) -> EffectiveCenter {
    let exponents = (0..rank as u32)
        .filter(|&p| {
            let delta = SimpleCurrent::new(rank, level, p).conformal_weight(rank, level);
            (delta * Rational::from_integer(order(rank, p) as i64)).is_integer()
        })
        .collect();
    EffectiveCenter::from_exponents(rank, level, exponents)
}

/// Closed form: everything when `N` is odd or `N`, `k` are both even,
/// otherwise the even powers `⟨J^2⟩`.
pub fn effective_center_closed_form(rank: usize, level: u32) -> EffectiveCenter {
    let n = rank as u32;
    let exponents = if n % 2 == 1 || level.is_multiple_of(2) {
        (0..n).collect()
    } else {
        (0..n).step_by(2).collect()
    };
    EffectiveCenter::from_exponents(rank, level, exponents)
}

/// Effective center, computed from first principles and checked against the
/// closed form.
pub fn effective_center(rank: usize, level: u32) -> Result<EffectiveCenter> {
    if rank < 2 {
        return Err(Error::InvalidArgument(format!(
            "rank must be >= 2, got {rank}"
        )));
    }
    let computed = effective_center_first_principles(rank, level);
    let closed = effective_center_closed_form(rank, level);
    if computed != closed {
        return Err(Error::EffectiveCenterMismatch {
            rank,
            level,
            computed: computed.exponents,
            closed_form: closed.exponents,
        });
    }
    Ok(computed)
}

/// `Δ_{J^p} = p (N - p) k / (2N)`.
pub fn current_conformal_weight_closed_form(rank: usize, level: u32, p: u32) -> Rational {
    let n = rank as i64;
    let p = (p % rank as u32) as i64;
    let num = p * (n - p) * level as i64;
    if num.is_zero() {
        return Rational::zero();
    }
    Rational::new(num, 2 * n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::enumerate_alcove;

    fn w(labels: &[u32]) -> Weight {
        Weight::new(labels.to_vec())
    }

    #[test]
    fn currents() {
        assert_eq!(SimpleCurrent::new(4, 3, 0).weight, w(&[0, 0, 0]));
        assert_eq!(SimpleCurrent::new(4, 3, 1).weight, w(&[3, 0, 0]));
        assert_eq!(SimpleCurrent::new(4, 3, 3).weight, w(&[0, 0, 3]));
        assert_eq!(SimpleCurrent::new(4, 3, 5).power, 1);
    }

    #[test]
    fn action_examples() {
        assert_eq!(act(2, 4, 1, &w(&[1])), w(&[3]));
        assert_eq!(act(3, 5, 0, &w(&[2, 1])), w(&[2, 1]));
        for lam in enumerate_alcove(3, 2) {
            assert_eq!(act(3, 2, 3, &lam), lam);
        }
        for rank in 2..=6 {
            for level in 0..=5 {
                let zero = Weight::zero(rank);
                for p in 0..rank as u32 {
                    assert_eq!(
                        act(rank, level, p, &zero),
                        SimpleCurrent::new(rank, level, p).weight
                    );
                }
            }
        }
    }

    #[test]
    fn action_is_an_order_n_permutation() {
        for rank in 2..=5 {
            for level in 0..=5 {
                let alcove = Alcove::new(rank, level);
                let perm = action_permutation(&alcove, 1);
                let mut seen = vec![false; alcove.len()];
                for &i in &perm {
                    assert!(!seen[i]);
                    seen[i] = true;
                }
                let full = action_permutation(&alcove, rank as u32);
                assert_eq!(full, (0..alcove.len()).collect::<Vec<_>>());
                let p2 = action_permutation(&alcove, 2);
                for i in 0..alcove.len() {
                    assert_eq!(p2[i], perm[perm[i]]);
                    assert_eq!(
                        alcove.index_of(&act(rank, level, 2, alcove.weight(i))),
                        Some(p2[i])
                    );
                }
            }
        }
    }

    #[test]
    fn orders() {
        assert_eq!(order(6, 4), 3);
        assert_eq!(order(7, 0), 1);
        assert_eq!(order(5, 2), 5);
        assert_eq!(order(8, 6), 4);
    }

    #[test]
    fn effective_center_examples() {
        assert_eq!(
            effective_center(5, 3).unwrap().exponents,
            vec![0, 1, 2, 3, 4]
        );
        let c = effective_center(4, 3).unwrap();
        assert_eq!(c.exponents, vec![0, 2]);
        assert_eq!(c.generator, Some(2));
        let c = effective_center(2, 5).unwrap();
        assert_eq!(c.exponents, vec![0]);
        assert_eq!(c.generator, None);
        assert_eq!(effective_center(2, 4).unwrap().exponents, vec![0, 1]);
        assert!(effective_center(1, 4).is_err());
    }

    #[test]
    fn current_weights_agree_with_closed_form() {
        for rank in 2..=8 {
            for level in 0..=12 {
                for p in 0..rank as u32 {
                    assert_eq!(
                        SimpleCurrent::new(rank, level, p).conformal_weight(rank, level),
                        current_conformal_weight_closed_form(rank, level, p),
                        "N={rank} k={level} p={p}"
                    );
                }
            }
        }
    }

    #[test]
    fn odd_order_elements_are_effective() {
        for rank in 2..=10 {
            for level in 1..=12 {
                let c = effective_center(rank, level).unwrap();
                for p in 0..rank as u32 {
                    if order(rank, p) % 2 == 1 {
                        assert!(c.contains(p), "N={rank} k={level} p={p}");
                    }
                }
                // closed under the group law here
                for &a in &c.exponents {
                    assert!(c.contains_subgroup(a));
                }
            }
        }
    }
}
