//! Weighted Coxeter systems and their enumerated groups.

mod bruhat;
mod parabolic;
mod reflections;
mod table;
mod words;

pub use bruhat::{bruhat_leq, Bruhat};
pub use parabolic::{coset_max, coset_min, parabolic_table, Parabolic};
pub use reflections::{eta, prefix_reflections, reflections, Reflection};
pub use table::{Extent, GroupTable, Side};
pub use words::WordProblem;

use crate::error::{Error, Result};

/// Generator index. Groups of rank above 32 are out of scope.
pub type Gen = u8;

/// A Coxeter matrix with a positive weight function. `m(s,t) = 0` encodes infinity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoxeterSystem {
    names: Vec<String>,
    m: Vec<Vec<u32>>,
    weights: Vec<u32>,
}

impl CoxeterSystem {
    pub fn new(names: Vec<String>, m: Vec<Vec<u32>>, weights: Vec<u32>) -> Result<Self> {
        let n = names.len();
        if n > 32 {
            return Err(Error::BadMatrix("rank above 32".into()));
        }
        if m.len() != n || m.iter().any(|r| r.len() != n) {
            return Err(Error::BadMatrix(format!("matrix must be {n}x{n}")));
        }
        for i in 0..n {
            if m[i][i] != 1 {
                return Err(Error::BadMatrix(format!("diagonal entry ({i},{i}) is not 1")));
            }
            for j in 0..n {
                if i != j {
                    if m[i][j] != m[j][i] {
                        return Err(Error::BadMatrix(format!("entries ({i},{j}) and ({j},{i}) differ")));
                    }
                    if m[i][j] == 1 {
                        return Err(Error::BadMatrix(format!("off-diagonal entry ({i},{j}) is 1")));
                    }
                }
            }
        }
        if weights.len() != n {
            return Err(Error::BadWeights(format!("expected {n} weights, got {}", weights.len())));
        }
        if let Some(i) = weights.iter().position(|&w| w == 0) {
            return Err(Error::BadWeights(format!("weight of generator {} is not positive", names[i])));
        }
        for i in 0..n {
            for j in 0..n {
                let mij = m[i][j];
                if i != j && mij != 0 && mij % 2 == 1 && weights[i] != weights[j] {
                    return Err(Error::BadWeights(format!(
                        "generators {} and {} are joined by an odd bond but have weights {} and {}",
                        names[i], names[j], weights[i], weights[j]
                    )));
                }
            }
        }
        Ok(CoxeterSystem { names, m, weights })
    }

    /// Default generator names `1, 2, ..., n`.
    pub fn from_matrix(m: Vec<Vec<u32>>, weights: Vec<u32>) -> Result<Self> {
        let names = (1..=m.len()).map(|i| i.to_string()).collect();
        Self::new(names, m, weights)
    }

    /// Linear diagram with the given bonds between consecutive generators.
    pub fn linear(bonds: &[u32], weights: Vec<u32>) -> Result<Self> {
        let n = bonds.len() + 1;
        let mut m = vec![vec![2u32; n]; n];
        for i in 0..n {
            m[i][i] = 1;
        }
        for (i, &b) in bonds.iter().enumerate() {
            m[i][i + 1] = b;
            m[i + 1][i] = b;
        }
        Self::from_matrix(m, weights)
    }

    /// Dihedral group of order `2m`; `None` is the infinite dihedral group.
    pub fn dihedral(m: Option<u32>, l1: u32, l2: u32) -> Result<Self> {
        Self::linear(&[m.unwrap_or(0)], vec![l1, l2])
    }

    /// Parse a type label: `A3`, `B2`, `G2`, `H3`, `F4`, `A1xA1`, `I2(5)`, `I2(inf)`.
    /// A single weight is broadcast; for `B_n`, `F4`, `G2` two weights
    /// are read as (first generator, the rest) or (first half, second half).
    pub fn from_type(label: &str, weights: &[u32]) -> Result<Self> {
        let l = label.trim().replace(['_', ' '], "");
        let up = l.to_ascii_uppercase();
        let bad = || Error::Parse(format!("unknown type {label:?}"));
        let (bonds, rank): (Vec<u32>, usize) = if up == "A1XA1" {
            (vec![2], 2)
        } else if let Some(rest) = up.strip_prefix("I2") {
            let inner = rest.trim_start_matches('(').trim_end_matches(')');
            let m = match inner {
                "INF" | "INFINITY" | "∞" | "0" => 0,
                s => s.parse().map_err(|_| bad())?,
            };
            (vec![m], 2)
        } else {
            let (kind, n) = up.split_at(1);
            let n: usize = n.parse().map_err(|_| bad())?;
            if n == 0 {
                return Err(bad());
            }
            let mut b = vec![3u32; n - 1];
            match kind {
                "A" => {}
                "B" | "C" => {
                    if n < 2 {
                        return Err(bad());
                    }
                    b[0] = 4;
                }
                "D" => {
                    // handled separately below
                }
                "G" if n == 2 => b[0] = 6,
                "H" if n == 3 || n == 4 => b[0] = 5,
                "F" if n == 4 => b[1] = 4,
                "E" if (6..=8).contains(&n) => {}
                _ => return Err(bad()),
            }
            if kind == "D" || kind == "E" {
                return Self::branched(kind, n, weights);
            }
            (b, n)
        };
        let w = Self::expand_weights(&up, rank, weights)?;
        Self::linear(&bonds, w)
    }

    fn branched(kind: &str, n: usize, weights: &[u32]) -> Result<Self> {
        if kind == "D" && n < 4 {
            return Err(Error::Parse("D_n needs n >= 4".into()));
        }
        let mut m = vec![vec![2u32; n]; n];
        for i in 0..n {
            m[i][i] = 1;
        }
        let mut join = |i: usize, j: usize| {
            m[i][j] = 3;
            m[j][i] = 3;
        };
        if kind == "D" {
            for i in 0..n - 2 {
                join(i, i + 1);
            }
            join(n - 3, n - 1);
        } else {
            // E_n in Bourbaki numbering: 1-3-4-5-..., 2 attached to 4.
            join(0, 2);
            join(1, 3);
            for i in 2..n - 1 {
                join(i, i + 1);
            }
        }
        let w = Self::expand_weights("", n, weights)?;
        Self::from_matrix(m, w)
    }

    fn expand_weights(label: &str, rank: usize, weights: &[u32]) -> Result<Vec<u32>> {
        match weights.len() {
            0 => Ok(vec![1; rank]),
            1 => Ok(vec![weights[0]; rank]),
            2 if rank > 2 && (label.starts_with('B') || label.starts_with('C')) => {
                let mut w = vec![weights[1]; rank];
                w[0] = weights[0];
                Ok(w)
            }
            2 if label == "F4" => Ok(vec![weights[0], weights[0], weights[1], weights[1]]),
            k if k == rank => Ok(weights.to_vec()),
            k => Err(Error::BadWeights(format!("{k} weights given for rank {rank}"))),
        }
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, s: Gen) -> &str {
        &self.names[s as usize]
    }

    /// `m(s,t)`, `None` for infinity.
    pub fn m(&self, s: Gen, t: Gen) -> Option<u32> {
        match self.m[s as usize][t as usize] {
            0 => None,
            x => Some(x),
        }
    }

    pub fn matrix(&self) -> &[Vec<u32>] {
        &self.m
    }

    pub fn weight(&self, s: Gen) -> u32 {
        self.weights[s as usize]
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn gens(&self) -> impl Iterator<Item = Gen> {
        0..self.rank() as Gen
    }

    /// `L(s) = l(s)` for all generators.
    pub fn is_split(&self) -> bool {
        self.weights.iter().all(|&w| w == self.weights[0])
    }

    /// The subsystem on the generators in `gens` (in the given order).
    pub fn restrict(&self, gens: &[Gen]) -> Result<Self> {
        let names = gens.iter().map(|&s| self.names[s as usize].clone()).collect();
        let m = gens
            .iter()
            .map(|&s| gens.iter().map(|&t| self.m[s as usize][t as usize]).collect())
            .collect();
        let w = gens.iter().map(|&s| self.weights[s as usize]).collect();
        Self::new(names, m, w)
    }

    /// Render a word with generator names; names longer than one character are dot-separated.
    pub fn format_word(&self, word: &[Gen]) -> String {
        if word.is_empty() {
            return "e".into();
        }
        let sep = if self.names.iter().all(|n| n.chars().count() == 1) { "" } else { "." };
        word.iter().map(|&s| self.names[s as usize].as_str()).collect::<Vec<_>>().join(sep)
    }

    /// Inverse of `format_word`.
    pub fn parse_word(&self, text: &str) -> Result<Vec<Gen>> {
        let t = text.trim();
        if t.is_empty() || t == "e" || t == "1" && !self.names.iter().any(|n| n == "1") {
            return Ok(Vec::new());
        }
        let lookup = |tok: &str| {
            self.names
                .iter()
                .position(|n| n == tok)
                .map(|i| i as Gen)
                .ok_or_else(|| Error::Parse(format!("unknown generator {tok:?}")))
        };
        if t.contains('.') || t.contains(',') {
            t.split(['.', ','])
                .map(|tok| lookup(tok.trim()))
                .collect()
        } else {
            t.chars().map(|c| lookup(&c.to_string())).collect()
        }
    }
}
