//! Classical and degenerate Euler-Seidel matrices.
//!
//! Entries `a_{n,k}` are indexed by sequence position `n` and iteration `k`. Row
//! `k = 0` is the initial sequence and column `n = 0` the final sequence. The
//! recurrences are
//!
//! ```text
//! classical:   a_{n,k} = a_{n,k-1} + a_{n+1,k-1}
//! degenerate:  a_{n,k} = (1 - (k-n)λ)·a_{n,k-1} + a_{n+1,k-1}
//! ```
//!
//! An initial sequence of length `size + 1` determines exactly the triangle
//! `n + k <= size`; addressing anything outside it is an error.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rational::{int, Rational};
use crate::sequences::{binomial, falling_factorial, rising_factorial};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Classical,
    Degenerate,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Classical => "classical",
            Mode::Degenerate => "degenerate",
        }
    }

    /// The multiplier of `a_{n,k-1}` in the recurrence.
    fn step_weight(self, n: usize, k: usize) -> Poly {
        match self {
            Mode::Classical => Poly::one(),
            Mode::Degenerate => {
                let shift = int(k as i64 - n as i64);
                Poly::one() - Poly::lambda().scale(&shift)
            }
        }
    }

    /// Weight of `a_{k,0}` in the forward transform: `(1-λ)_{j,λ}` or `1`.
    fn forward_weight(self, j: usize) -> Poly {
        match self {
            Mode::Classical => Poly::one(),
            Mode::Degenerate => falling_factorial(&one_minus_lambda(), j),
        }
    }

    /// Weight of `a_{0,k}` in the inverse transform: `(-1)^j ⟨1-λ⟩_{j,λ}` or `(-1)^j`.
    fn inverse_weight(self, j: usize) -> Poly {
        let magnitude = match self {
            Mode::Classical => Poly::one(),
            Mode::Degenerate => rising_factorial(&one_minus_lambda(), j),
        };
        if j % 2 == 1 {
            -magnitude
        } else {
            magnitude
        }
    }
}

fn one_minus_lambda() -> Poly {
    Poly::one() - Poly::lambda()
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "classical" => Ok(Mode::Classical),
            "degenerate" => Ok(Mode::Degenerate),
            other => Err(format!(
                "unknown mode `{other}` (expected classical or degenerate)"
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeidelMatrix {
    mode: Mode,
    size: usize,
    /// `rows[k][n] = a_{n,k}` for `n + k <= size`.
    rows: Vec<Vec<Poly>>,
}

impl SeidelMatrix {
    /// Fills the triangle from `initial`; `size = initial.len() - 1`.
    pub fn build(initial: &[Poly], mode: Mode) -> Result<Self> {
        if initial.is_empty() {
            return Err(Error::EmptyInitial);
        }
        let size = initial.len() - 1;
        let mut rows = Vec::with_capacity(size + 1);
        rows.push(initial.to_vec());
        for k in 1..=size {
            let prev: &Vec<Poly> = &rows[k - 1];
            let row = (0..=size - k)
                .map(|n| &(&mode.step_weight(n, k) * &prev[n]) + &prev[n + 1])
                .collect();
            rows.push(row);
        }
        Ok(SeidelMatrix { mode, size, rows })
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// `a_{n,k}`.
    pub fn get(&self, n: usize, k: usize) -> Result<&Poly> {
        self.rows
            .get(k)
            .and_then(|row| row.get(n))
            .ok_or(Error::EntryOutOfRange {
                n,
                k,
                size: self.size,
            })
    }

    pub fn initial_sequence(&self) -> &[Poly] {
        &self.rows[0]
    }

    /// `[a_{0,0}, a_{0,1}, …, a_{0,size}]`.
    pub fn final_sequence(&self) -> Vec<Poly> {
        self.rows.iter().map(|row| row[0].clone()).collect()
    }

    /// Entries `(n, k, a_{n,k})`, row-major by `k`.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Poly)> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(k, row)| row.iter().enumerate().map(move |(n, p)| (n, k, p)))
    }

    /// Substitutes the given values into every entry.
    pub fn evaluate(&self, at_lambda: Option<&Rational>, at_x: Option<&Rational>) -> Self {
        SeidelMatrix {
            mode: self.mode,
            size: self.size,
            rows: self
                .rows
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|p| p.eval_partial(at_lambda, at_x))
                        .collect()
                })
                .collect(),
        }
    }

    /// JSON export: `{"mode":…,"size":…,"entries":[{"n":…,"k":…,"poly":…},…]}`.
    pub fn to_json(&self) -> String {
        let export = MatrixExport {
            mode: self.mode,
            size: self.size,
            entries: self
                .entries()
                .map(|(n, k, p)| EntryExport {
                    n,
                    k,
                    poly: p.to_string(),
                })
                .collect(),
        };
        serde_json::to_string(&export).expect("plain data serializes")
    }

    /// CSV export. The header is `n,k,value` when every entry is a constant,
    /// otherwise `n,k,poly`.
    pub fn to_csv(&self) -> String {
        let numeric = self.entries().all(|(_, _, p)| p.is_constant());
        let mut out = String::from(if numeric { "n,k,value\n" } else { "n,k,poly\n" });
        for (n, k, p) in self.entries() {
            out.push_str(&format!("{n},{k},{p}\n"));
        }
        out
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct MatrixExport {
    pub mode: Mode,
    pub size: usize,
    pub entries: Vec<EntryExport>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct EntryExport {
    pub n: usize,
    pub k: usize,
    pub poly: String,
}

/// Final-sequence entry `a_{0,n}` from the closed-form binomial sum
/// `Σ_k C(n,k)·w_{n-k}·a_{k,0}`, with `w_j = (1-λ)_{j,λ}` (degenerate) or `1`.
pub fn final_from_initial(initial: &[Poly], n: usize, mode: Mode) -> Result<Poly> {
    if n >= initial.len() {
        return Err(Error::IndexOutOfRange {
            index: n,
            len: initial.len(),
        });
    }
    Ok((0..=n)
        .map(|k| (&mode.forward_weight(n - k) * &initial[k]).scale(&binomial(n, k)))
        .sum())
}

/// Inverse transform `a_{n,0} = Σ_k C(n,k)(-1)^{n-k}·v_{n-k}·a_{0,k}` with
/// `v_j = ⟨1-λ⟩_{j,λ}` (degenerate) or `1`.
pub fn initial_from_final(final_seq: &[Poly], n: usize, mode: Mode) -> Result<Poly> {
    if n >= final_seq.len() {
        return Err(Error::IndexOutOfRange {
            index: n,
            len: final_seq.len(),
        });
    }
    Ok((0..=n)
        .map(|k| (&mode.inverse_weight(n - k) * &final_seq[k]).scale(&binomial(n, k)))
        .sum())
}

/// Both sides of the unrolled recurrence for `a_{1,n}`:
///
/// `a_{1,n} = Σ_{k=0}^{l} C(l,k)·(1-(n-l)λ)_{l-k,λ}·a_{k+1,n-l}` for `0 <= l <= n`.
///
/// In classical mode the factorial weight is `1`.
pub fn lemma21_sides(m: &SeidelMatrix, n: usize, l: usize) -> Result<(Poly, Poly)> {
    if l > n {
        return Err(Error::IndexOutOfRange {
            index: l,
            len: n + 1,
        });
    }
    let lhs = m.get(1, n)?.clone();
    let base = Poly::one() - Poly::lambda().scale(&int((n - l) as i64));
    let mut rhs = Poly::zero();
    for k in 0..=l {
        let weight = match m.mode() {
            Mode::Classical => Poly::one(),
            Mode::Degenerate => falling_factorial(&base, l - k),
        };
        rhs += &(&weight * m.get(k + 1, n - l)?).scale(&binomial(l, k));
    }
    Ok((lhs, rhs))
}
