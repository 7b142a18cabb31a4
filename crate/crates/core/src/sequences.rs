//! Generalized factorials and the degenerate Stirling, Bell and Fubini families.
//!
//! `(x)_{n,λ} = x(x-λ)…(x-(n-1)λ)` and `⟨x⟩_{n,λ} = x(x+λ)…(x+(n-1)λ)`. The degenerate
//! Stirling number `{n k}_λ` is the coefficient of the classical falling factorial
//! `(x)_k` in `(x)_{n,λ}`. Bell and Fubini *numbers* are their polynomials at `x = 1`.

use std::fmt;
use std::str::FromStr;
use std::sync::RwLock;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::poly::{Poly, Var};
use crate::rational::Rational;

/// Generalized falling factorial `(arg)_{n,λ}`.
pub fn falling_factorial(arg: &Poly, n: usize) -> Poly {
    (0..n).fold(Poly::one(), |acc, j| &acc * &(arg - &lambda_multiple(j)))
}

/// Generalized rising factorial `⟨arg⟩_{n,λ}`.
pub fn rising_factorial(arg: &Poly, n: usize) -> Poly {
    (0..n).fold(Poly::one(), |acc, j| &acc * &(arg + &lambda_multiple(j)))
}

/// Classical falling factorial `arg(arg-1)…(arg-n+1)`.
pub fn classical_falling_factorial(arg: &Poly, n: usize) -> Poly {
    (0..n).fold(Poly::one(), |acc, j| &acc * &(arg - &Poly::int(j as i64)))
}

/// Generalized binomial coefficient `C(arg, n) = (arg)_n / n!` as a polynomial.
pub fn binomial_poly(arg: &Poly, n: usize) -> Poly {
    classical_falling_factorial(arg, n).scale(&factorial(n).recip())
}

fn lambda_multiple(j: usize) -> Poly {
    Poly::lambda().scale(&Rational::from_integer(BigInt::from(j)))
}

static FACTORIALS: RwLock<Vec<BigInt>> = RwLock::new(Vec::new());
static PASCAL: RwLock<Vec<Vec<BigInt>>> = RwLock::new(Vec::new());
static STIRLING: RwLock<Vec<Vec<Poly>>> = RwLock::new(Vec::new());

/// Reads entry `index` of a grow-only table, extending it under the write lock first
/// if needed. `extend` appends rows until `index` is covered.
fn memo<T: Clone, R>(
    table: &RwLock<Vec<T>>,
    index: usize,
    extend: impl FnOnce(&mut Vec<T>),
    read: impl Fn(&T) -> R,
) -> R {
    {
        let rows = table.read().expect("memo table poisoned");
        if let Some(row) = rows.get(index) {
            return read(row);
        }
    }
    let mut rows = table.write().expect("memo table poisoned");
    if rows.len() <= index {
        extend(&mut rows);
    }
    read(&rows[index])
}

/// `n!`, memoized.
pub fn factorial(n: usize) -> Rational {
    Rational::from_integer(factorial_int(n))
}

pub fn factorial_int(n: usize) -> BigInt {
    memo(
        &FACTORIALS,
        n,
        |rows| {
            if rows.is_empty() {
                rows.push(BigInt::one());
            }
            while rows.len() <= n {
                let next = rows.last().unwrap() * rows.len();
                rows.push(next);
            }
        },
        BigInt::clone,
    )
}

/// `C(n, k)` from a memoized Pascal triangle; zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> Rational {
    Rational::from_integer(binomial_int(n, k))
}

pub fn binomial_int(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::default();
    }
    memo(
        &PASCAL,
        n,
        |rows| {
            while rows.len() <= n {
                let row = match rows.last() {
                    None => vec![BigInt::one()],
                    Some(prev) => {
                        let mut row = Vec::with_capacity(prev.len() + 1);
                        row.push(BigInt::one());
                        row.extend(prev.windows(2).map(|w| &w[0] + &w[1]));
                        row.push(BigInt::one());
                        row
                    }
                };
                rows.push(row);
            }
        },
        |row| row[k].clone(),
    )
}

/// Degenerate Stirling number of the second kind `{n k}_λ`, a polynomial in `λ`.
///
/// Uses the memoized recurrence `{n+1 k} = {n k-1} + (k - nλ){n k}`, which follows
/// from `(x)_{n+1,λ} = (x)_{n,λ}(x - nλ)` and `x·(x)_k = (x)_{k+1} + k(x)_k`.
/// [`degen_stirling2_by_basis`] is the independent oracle for it.
pub fn degen_stirling2(n: usize, k: usize) -> Result<Poly> {
    if k > n {
        return Err(Error::StirlingIndex { n, k });
    }
    Ok(memo(&STIRLING, n, extend_stirling(n), |row| row[k].clone()))
}

/// The whole row `[{n 0}_λ, …, {n n}_λ]`.
pub fn degen_stirling2_row(n: usize) -> Vec<Poly> {
    memo(&STIRLING, n, extend_stirling(n), Vec::clone)
}

fn extend_stirling(n: usize) -> impl FnOnce(&mut Vec<Vec<Poly>>) {
    move |rows| {
        if rows.is_empty() {
            rows.push(vec![Poly::one()]);
        }
        while rows.len() <= n {
            let m = rows.len() - 1;
            let prev = &rows[m];
            let mut row = Vec::with_capacity(m + 2);
            for k in 0..=m + 1 {
                let mut entry = Poly::zero();
                if k >= 1 {
                    entry += &prev[k - 1];
                }
                if k <= m {
                    let weight = Poly::int(k as i64) - lambda_multiple(m);
                    entry += &(&weight * &prev[k]);
                }
                row.push(entry);
            }
            rows.push(row);
        }
    }
}

/// Oracle for `{n k}_λ`: expands `(x)_{n,λ}` in powers of `x` and converts to the
/// classical falling-factorial basis by back-substitution from degree `n` down.
pub fn degen_stirling2_by_basis(n: usize, k: usize) -> Result<Poly> {
    if k > n {
        return Err(Error::StirlingIndex { n, k });
    }
    Ok(stirling_row_by_basis(n).swap_remove(k))
}

pub fn stirling_row_by_basis(n: usize) -> Vec<Poly> {
    let mut remainder = falling_factorial(&Poly::x(), n);
    let mut row = vec![Poly::zero(); n + 1];
    for k in (0..=n).rev() {
        // (x)_k is monic of degree k, so the leading coefficient is {n k}_λ.
        let lead = remainder.x_coeff(k as u32);
        remainder -= &(&lead * &classical_falling_factorial(&Poly::x(), k));
        row[k] = lead;
    }
    debug_assert!(remainder.is_zero());
    row
}

/// Degenerate Bell polynomial `φ_{n,λ}(x) = Σ_k {n k}_λ x^k`.
pub fn bell_poly(n: usize) -> Poly {
    degen_stirling2_row(n)
        .iter()
        .enumerate()
        .map(|(k, s)| s * &Poly::x().pow(k as u32))
        .sum()
}

/// Degenerate Fubini polynomial `F_{n,λ}(x) = Σ_k {n k}_λ k! x^k`.
pub fn fubini_poly(n: usize) -> Poly {
    degen_stirling2_row(n)
        .iter()
        .enumerate()
        .map(|(k, s)| (s * &Poly::x().pow(k as u32)).scale(&factorial(k)))
        .sum()
}

/// `p(1, λ)`: the number attached to a polynomial family.
pub fn at_x_one(p: &Poly) -> Poly {
    p.eval_partial(None, Some(&Rational::one()))
}

pub fn bell_number(n: usize) -> Poly {
    at_x_one(&bell_poly(n))
}

pub fn fubini_number(n: usize) -> Poly {
    at_x_one(&fubini_poly(n))
}

/// `d/dx`, the derivative used by the theorems on `φ'_{n,λ}` and `F'_{n,λ}`.
pub fn x_derivative(p: &Poly) -> Poly {
    p.derivative(Var::X)
}

/// A named initial sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SeqName {
    BellNumbers,
    BellPolys,
    FubiniNumbers,
    FubiniPolys,
    Custom(Vec<Poly>),
}

impl SeqName {
    /// The `n`-th term; `None` when a custom list is too short.
    pub fn term(&self, n: usize) -> Option<Poly> {
        match self {
            SeqName::BellNumbers => Some(bell_number(n)),
            SeqName::BellPolys => Some(bell_poly(n)),
            SeqName::FubiniNumbers => Some(fubini_number(n)),
            SeqName::FubiniPolys => Some(fubini_poly(n)),
            SeqName::Custom(terms) => terms.get(n).cloned(),
        }
    }

    pub fn token(&self) -> &'static str {
        match self {
            SeqName::BellNumbers => "bell",
            SeqName::BellPolys => "bell-poly",
            SeqName::FubiniNumbers => "fubini",
            SeqName::FubiniPolys => "fubini-poly",
            SeqName::Custom(_) => "custom",
        }
    }
}

impl fmt::Display for SeqName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for SeqName {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "bell" => Ok(SeqName::BellNumbers),
            "bell-poly" => Ok(SeqName::BellPolys),
            "fubini" => Ok(SeqName::FubiniNumbers),
            "fubini-poly" => Ok(SeqName::FubiniPolys),
            other => Err(format!(
                "unknown sequence `{other}` (expected bell, bell-poly, fubini or fubini-poly)"
            )),
        }
    }
}

/// The first `count` terms of `name`, index 0 first.
pub fn sequence_terms(name: &SeqName, count: usize) -> Result<Vec<Poly>> {
    if let SeqName::Custom(terms) = name {
        if count > terms.len() {
            return Err(Error::IndexOutOfRange {
                index: count - 1,
                len: terms.len(),
            });
        }
        return Ok(terms[..count].to_vec());
    }
    Ok((0..count)
        .map(|n| name.term(n).expect("named sequences are infinite"))
        .collect())
}
