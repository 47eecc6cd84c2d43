//! Reducibility verdicts from non-trivial Schellekens partition functions.

use std::fmt;

use num_integer::Integer;
use serde::Serialize;

use crate::intmat::IntMatrix;
use crate::liealg::{Alcove, Weight};
use crate::schellekens::{build_algebra, torus_partition_function_on};
use crate::simple_currents::{act, effective_center, order, SimpleCurrent};
use crate::{Error, Result};

/// Which branch of the case analysis selects the support.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum VerdictCase {
    /// `N > 2`, `k ≡ 0 mod N`.
    LevelDivisibleByRank,
    /// `N` odd.
    OddRank,
    /// `N > 2` even, `k` even.
    EvenRankEvenLevel,
    /// `N > 2` even, `k` odd.
    EvenRankOddLevel,
    Su2,
}

impl fmt::Display for VerdictCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VerdictCase::LevelDivisibleByRank => "level-divisible-by-rank",
            VerdictCase::OddRank => "odd-rank",
            VerdictCase::EvenRankEvenLevel => "even-rank-even-level",
            VerdictCase::EvenRankOddLevel => "even-rank-odd-level",
            VerdictCase::Su2 => "su2",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "reducible (all g ≥ 1)")]
    Reducible,
    #[serde(rename = "no conclusion from this criterion")]
    NoConclusion,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Reducible => "reducible (all g ≥ 1)",
            Verdict::NoConclusion => "no conclusion from this criterion",
        })
    }
}

/// An entry `Z_{row,col}` of a partition function.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub row: usize,
    pub col: usize,
    pub row_weight: Weight,
    pub col_weight: Weight,
    pub value: u32,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Z[{}, {}] = {}",
            self.row_weight, self.col_weight, self.value
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SupportSummary {
    pub generator: u32,
    pub order: u32,
    pub trivial: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReducibilityReport {
    pub rank: usize,
    pub level: u32,
    pub case: VerdictCase,
    pub effective_center: Vec<u32>,
    /// Every cyclic support inside the effective center.
    pub valid_supports: Vec<SupportSummary>,
    pub support: u32,
    pub support_order: u32,
    pub z: IntMatrix,
    pub trivial: bool,
    /// An off-diagonal entry `Z_{ij} ≥ 1`: the predicted one when it holds,
    /// otherwise the first in row-major order.
    pub witness: Option<Witness>,
    /// The entry singled out by the case analysis, with its computed value.
    pub predicted_witness: Option<Witness>,
    pub equals_charge_conjugation: bool,
    pub verdict: Verdict,
}

impl ReducibilityReport {
    pub fn verdict_line(&self) -> String {
        let mut line = format!(
            "su({}) level {}: {} [{}; support <J^{}> of order {}]",
            self.rank, self.level, self.verdict, self.case, self.support, self.support_order
        );
        match &self.witness {
            Some(w) => line.push_str(&format!("; witness {w}")),
            None => line.push_str("; Z trivial"),
        }
        if self.equals_charge_conjugation && !self.z.is_identity() {
            line.push_str("; Z = C");
        }
        line
    }
}

/// Inverse of `m` modulo `n`, when it exists.
fn inverse_mod(m: i64, n: i64) -> Option<i64> {
    let e = m.extended_gcd(&n);
    (e.gcd == 1).then(|| e.x.rem_euclid(n))
}

/// The case, the support generator and the entry `(i, j)` predicted to be 1.
pub(crate) fn case_analysis(
    rank: usize,
    level: u32,
) -> (VerdictCase, u32, Option<(Weight, Weight)>) {
    let n = rank as u32;
    let k = level;
    let j = |p: u32| SimpleCurrent::new(rank, level, p).weight;
    let zero = Weight::zero(rank);
    let x = {
        let mut l = vec![0; rank - 1];
        l[0] = 1;
        Weight::new(l)
    };
    // Z_{X, J^b X} with b (N-1)k/2 ≡ 1 mod N.
    let x_witness = || {
        let m = ((n as i64 - 1) * k as i64 / 2).rem_euclid(n as i64);
        inverse_mod(m, n as i64).map(|b| {
            let jx = act(rank, level, b as u32, &x);
            (x.clone(), jx)
        })
    };
    if rank == 2 {
        let center = effective_center(rank, level).expect("rank 2 is valid");
        return (VerdictCase::Su2, center.generator.unwrap_or(0), None);
    }
    let half = n / 2;
    if k.is_multiple_of(n) {
        let col = if n % 2 == 1 { j(1) } else { j(2) };
        return (VerdictCase::LevelDivisibleByRank, 1, Some((zero, col)));
    }
    if n % 2 == 1 {
        let q = k.gcd(&n);
        let w = if q != 1 {
            Some((zero, j(n / q)))
        } else {
            x_witness()
        };
        return (VerdictCase::OddRank, 1, w);
    }
    if k.is_multiple_of(2) {
        let l = k / 2;
        let q = l.gcd(&half);
        if !k.is_multiple_of(4) || q != 1 {
            let w = if q != 1 {
                Some((zero, j(n / q)))
            } else {
                x_witness()
            };
            (VerdictCase::EvenRankEvenLevel, 1, w)
        } else {
            (
                VerdictCase::EvenRankEvenLevel,
                2,
                Some((j(half - 1), j(half + 1))),
            )
        }
    } else {
        let q = k.gcd(&half);
        let w = if q != 1 {
            Some((zero, j(n / q)))
        } else {
            Some((j(half - 1), j(half + 1)))
        };
        (VerdictCase::EvenRankOddLevel, 2, w)
    }
}

/// The entry the case analysis singles out, as `(row weight, column weight)`.
pub fn predicted_witness(rank: usize, level: u32) -> Option<(Weight, Weight)> {
    case_analysis(rank, level).2
}

fn witness_at(alcove: &Alcove, z: &IntMatrix, row: usize, col: usize) -> Witness {
    Witness {
        row,
        col,
        row_weight: alcove.weight(row).clone(),
        col_weight: alcove.weight(col).clone(),
        value: z.get(row, col),
    }
}

pub fn reducibility_verdict(rank: usize, level: u32) -> Result<ReducibilityReport> {
    reducibility_verdict_with(rank, level, None)
}

/// As [`reducibility_verdict`], optionally forcing the support `⟨J^p⟩`.
pub fn reducibility_verdict_with(
    rank: usize,
    level: u32,
    support: Option<u32>,
) -> Result<ReducibilityReport> {
    if rank < 2 {
        return Err(Error::InvalidArgument(format!(
            "rank must be >= 2, got {rank}"
        )));
    }
    if level < 1 {
        return Err(Error::InvalidArgument("level must be >= 1".into()));
    }
    let center = effective_center(rank, level)?;
    let alcove = Alcove::new(rank, level);
    let (case, case_support, predicted) = case_analysis(rank, level);
    let support = match support {
        None => case_support,
        Some(p) => {
            // ⟨J^p⟩ = ⟨J^gcd(p,N)⟩
            let g = p.gcd(&(rank as u32)) % rank as u32;
            if !center.contains_subgroup(g) {
                return Err(Error::SupportNotInEffectiveCenter {
                    rank,
                    level,
                    generator: p,
                });
            }
            g
        }
    };
    let predicted = if support == case_support {
        predicted
    } else {
        None
    };

    let mut valid_supports = Vec::new();
    let mut chosen = None;
    for d in (1..=rank as u32).filter(|d| (rank as u32).is_multiple_of(*d)) {
        let p = d % rank as u32;
        if !center.contains_subgroup(p) {
            continue;
        }
        let alg = build_algebra(rank, level, p)?;
        let tpf = torus_partition_function_on(&alg, &alcove);
        valid_supports.push(SupportSummary {
            generator: p,
            order: order(rank, p),
            trivial: tpf.is_trivial(),
        });
        if p == support {
            chosen = Some(tpf);
        }
    }
    let tpf = chosen.ok_or(Error::SupportNotInEffectiveCenter {
        rank,
        level,
        generator: support,
    })?;
    let z = tpf.z;
    let trivial = z.is_scalar();

    let predicted_witness = predicted.map(|(a, b)| {
        let (i, j) = (alcove.index_of(&a).unwrap(), alcove.index_of(&b).unwrap());
        witness_at(&alcove, &z, i, j)
    });
    let witness = match &predicted_witness {
        Some(w) if w.value >= 1 && w.row != w.col => Some(w.clone()),
        _ => z
            .off_diagonal_support()
            .first()
            .map(|&(i, j, _)| witness_at(&alcove, &z, i, j)),
    };
    let conj = alcove.conjugation();
    let equals_charge_conjugation = (0..alcove.len())
        .all(|i| (0..alcove.len()).all(|j| z.get(i, j) == u32::from(conj[i] == j)));
    let verdict = if trivial {
        Verdict::NoConclusion
    } else {
        Verdict::Reducible
    };
    Ok(ReducibilityReport {
        rank,
        level,
        case,
        effective_center: center.exponents,
        valid_supports,
        support,
        support_order: order(rank, support),
        z,
        trivial,
        witness,
        predicted_witness,
        equals_charge_conjugation,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(labels: &[u32]) -> Weight {
        Weight::new(labels.to_vec())
    }

    #[test]
    fn su3_level5_is_reducible() {
        let r = reducibility_verdict(3, 5).unwrap();
        assert_eq!(r.case, VerdictCase::OddRank);
        assert!(!r.trivial);
        assert_eq!(r.verdict, Verdict::Reducible);
        assert_eq!(r.predicted_witness.as_ref().unwrap().value, 1);
    }

    #[test]
    fn su4_level7_uses_even_powers() {
        let r = reducibility_verdict(4, 7).unwrap();
        assert_eq!(r.support, 2);
        assert_eq!(r.support_order, 2);
        assert!(!r.trivial);
        let wit = r.witness.unwrap();
        assert_eq!(wit.row_weight, w(&[7, 0, 0]));
        assert_eq!(wit.col_weight, w(&[0, 0, 7]));
        assert_eq!(wit.value, 1);
    }

    #[test]
    fn su2_verdicts() {
        for k in [1, 2, 3, 5, 7] {
            let r = reducibility_verdict(2, k).unwrap();
            assert!(r.trivial);
            assert_eq!(r.verdict, Verdict::NoConclusion);
            assert!(r.witness.is_none());
        }
        for k in [4, 6, 8, 10] {
            let r = reducibility_verdict(2, k).unwrap();
            assert_eq!(r.verdict, Verdict::Reducible);
        }
        let r = reducibility_verdict(2, 3).unwrap();
        assert_eq!(r.valid_supports.len(), 1);
        assert!(r
            .verdict_line()
            .contains("no conclusion from this criterion"));
    }

    #[test]
    fn su3_level1_gives_charge_conjugation() {
        let r = reducibility_verdict(3, 1).unwrap();
        assert!(r.equals_charge_conjugation);
        assert_eq!(r.verdict, Verdict::Reducible);
        assert!(r.verdict_line().contains("Z = C"));
    }

    #[test]
    fn predicted_witnesses_hold_on_the_desk_grid() {
        for rank in 3..=6 {
            for level in 1..=12 {
                let r = reducibility_verdict(rank, level).unwrap();
                assert_eq!(r.verdict, Verdict::Reducible, "N={rank} k={level}");
                let p = r.predicted_witness.unwrap();
                assert_eq!(p.value, 1, "N={rank} k={level}: {p}");
                assert_ne!(p.row, p.col);
            }
        }
    }

    #[test]
    fn case_selection() {
        assert_eq!(case_analysis(4, 8).0, VerdictCase::LevelDivisibleByRank);
        assert_eq!(case_analysis(5, 3).0, VerdictCase::OddRank);
        assert_eq!(
            case_analysis(6, 4),
            (
                VerdictCase::EvenRankEvenLevel,
                2,
                Some((w(&[0, 4, 0, 0, 0]), w(&[0, 0, 0, 4, 0])))
            )
        );
        assert_eq!(case_analysis(6, 2).1, 1);
        assert_eq!(case_analysis(4, 5).0, VerdictCase::EvenRankOddLevel);
        assert_eq!(inverse_mod(3, 7), Some(5));
        assert_eq!(inverse_mod(2, 4), None);
    }
}
