//! Square non-negative integer matrices indexed by the alcove.

use std::fmt;
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::liealg::Alcove;
use crate::Result;

/// Row-major `n × n` matrix of non-negative integers. Serialized as a list
/// of rows.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntMatrix {
    n: usize,
    data: Vec<u32>,
}

impl IntMatrix {
    pub fn zeros(n: usize) -> Self {
        IntMatrix {
            n,
            data: vec![0; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Panics unless every row has length `rows.len()`.
    pub fn from_rows(rows: Vec<Vec<u32>>) -> Self {
        let n = rows.len();
        assert!(
            rows.iter().all(|r| r.len() == n),
            "IntMatrix rows must be square"
        );
        IntMatrix {
            n,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.n + j] = v;
    }

    pub fn add(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.n + j] += v;
    }

    pub fn rows(&self) -> Vec<Vec<u32>> {
        self.data
            .chunks(self.n.max(1))
            .take(self.n)
            .map(|r| r.to_vec())
            .collect()
    }

    pub fn max_entry(&self) -> u32 {
        self.data.iter().copied().max().unwrap_or(0)
    }

    pub fn is_symmetric(&self) -> bool {
        self.first_asymmetry().is_none()
    }

    pub(crate) fn first_asymmetry(&self) -> Option<(usize, usize)> {
        for i in 0..self.n {
            for j in i + 1..self.n {
                if self.get(i, j) != self.get(j, i) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.n)
    }

    /// `c · 1` for some scalar `c`: zero off the diagonal, constant on it.
    pub fn is_scalar(&self) -> bool {
        let c = if self.n == 0 { 0 } else { self.get(0, 0) };
        (0..self.n).all(|i| (0..self.n).all(|j| self.get(i, j) == if i == j { c } else { 0 }))
    }

    /// Off-diagonal entries `(i, j, Z_ij)` with `Z_ij ≥ 1`, row-major.
    pub fn off_diagonal_support(&self) -> Vec<(usize, usize, u32)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in 0..self.n {
                let v = self.get(i, j);
                if i != j && v > 0 {
                    out.push((i, j, v));
                }
            }
        }
        out
    }

    #[cfg(test)]
    pub(crate) fn to_complex(&self) -> crate::linalg::CMatrix {
        crate::linalg::CMatrix::from_fn(self.n, self.n, |i, j| {
            num_complex::Complex64::new(self.get(i, j) as f64, 0.0)
        })
    }

    /// CSV with a header row of alcove labels, then one row of integers per
    /// alcove element.
    pub fn write_csv<W: Write>(&self, alcove: &Alcove, out: W) -> Result<()> {
        assert_eq!(alcove.len(), self.n, "alcove and matrix sizes differ");
        let mut w = csv::Writer::from_writer(out);
        w.write_record(alcove.weights().iter().map(|x| x.to_string()))?;
        for row in self.rows() {
            w.write_record(row.iter().map(|v| v.to_string()))?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_csv_string(&self, alcove: &Alcove) -> Result<String> {
        let mut buf = Vec::new();
        self.write_csv(alcove, &mut buf)?;
        Ok(String::from_utf8(buf).expect("csv output is utf-8"))
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.max_entry().to_string().len();
        for row in self.rows() {
            let cells: Vec<String> = row.iter().map(|v| format!("{v:>width$}")).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

impl Serialize for IntMatrix {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        self.rows().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for IntMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<u32>>::deserialize(deserializer)?;
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(serde::de::Error::custom("matrix rows must be square"));
        }
        Ok(IntMatrix::from_rows(rows))
    }
}
