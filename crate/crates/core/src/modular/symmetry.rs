//! Bookkeeping for the simple-current and conjugation symmetries of the
//! S-matrix.
//!
//! With `ψ(μ) = χ_μ(J)^{-1}` the S-matrix satisfies
//! `S_{Jλ,μ} = ψ(μ) S_{λ,μ}` and `S_{λ̄,μ} = conj(S_{λ,μ})`. Rows are therefore
//! determined by one representative per orbit of the group generated by `J`
//! and conjugation, and sums over the alcove collapse along `J`-orbits.

use crate::liealg::{Alcove, Weight};
use crate::modular::RationalPhase;
use crate::schellekens::character;
use crate::simple_currents::{action_permutation, SimpleCurrent};

/// How an alcove element is reached from its orbit representative:
/// `λ = J^power(rep)`, followed by conjugation when `conjugated`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct OrbitPosition {
    pub rep: usize,
    pub power: u32,
    pub conjugated: bool,
}

#[derive(Clone, Debug)]
pub(crate) struct AlcoveSymmetry {
    pub rank: usize,
    /// `jpow[p][i]` = index of `J^p λ_i`.
    pub jpow: Vec<Vec<usize>>,
    pub conj: Vec<usize>,
    /// `ψ(μ)` for every alcove index.
    pub psi: Vec<RationalPhase>,
    /// `N ψ(μ)` as an integer mod N.
    pub charge: Vec<usize>,
    /// Representatives of the orbits of `⟨J, conjugation⟩`.
    pub dihedral_reps: Vec<usize>,
    pub position: Vec<OrbitPosition>,
    /// Representatives of the `J`-orbits with their orbit lengths.
    pub j_reps: Vec<(usize, usize)>,
}

impl AlcoveSymmetry {
    pub fn new(alcove: &Alcove) -> Self {
        let rank = alcove.rank();
        let level = alcove.level();
        let n = alcove.len();
        let jpow: Vec<Vec<usize>> = (0..rank as u32)
            .map(|p| action_permutation(alcove, p))
            .collect();
        let conj = alcove.conjugation();
        let j = SimpleCurrent::new(rank, level, 1);
        let psi: Vec<RationalPhase> = alcove
            .weights()
            .iter()
            .map(|w: &Weight| character(rank, level, w, &j).inverse())
            .collect();
        let charge = psi
            .iter()
            .map(|p| {
                let t = p.turns() * crate::liealg::Rational::from_integer(rank as i64);
                assert!(t.is_integer(), "monodromy charge is not in (1/N)Z");
                t.to_integer() as usize % rank
            })
            .collect();

        let mut position: Vec<Option<OrbitPosition>> = vec![None; n];
        let mut dihedral_reps = Vec::new();
        for r in 0..n {
            if position[r].is_some() {
                continue;
            }
            dihedral_reps.push(r);
            for p in 0..rank as u32 {
                let x = jpow[p as usize][r];
                if position[x].is_none() {
                    position[x] = Some(OrbitPosition {
                        rep: r,
                        power: p,
                        conjugated: false,
                    });
                }
                let y = conj[x];
                if position[y].is_none() {
                    position[y] = Some(OrbitPosition {
                        rep: r,
                        power: p,
                        conjugated: true,
                    });
                }
            }
        }
        let position = position.into_iter().map(|p| p.unwrap()).collect();

        let mut seen = vec![false; n];
        let mut j_reps = Vec::new();
        for r in 0..n {
            if seen[r] {
                continue;
            }
            let mut len = 0;
            let mut x = r;
            while !seen[x] {
                seen[x] = true;
                len += 1;
                x = jpow[1][x];
            }
            j_reps.push((r, len));
        }

        AlcoveSymmetry {
            rank,
            jpow,
            conj,
            psi,
            charge,
            dihedral_reps,
            position,
            j_reps,
        }
    }
}
