//! Truncated formal power series in `t` with [`Poly`] coefficients.
//!
//! A [`Series`] of order `N` stores the raw coefficients `c_0..=c_N` of `t^0..=t^N` and
//! all arithmetic is exact modulo `t^{N+1}`. The sequence attached to a series as an
//! exponential generating function is `a_n = n!·c_n` (see [`Series::egf_terms`]).
//! Orders are never changed implicitly: mixing orders is an error.

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rational::Rational;
use crate::seidel::Mode;
use crate::sequences::{factorial, falling_factorial};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Series {
    coeffs: Vec<Poly>,
}

impl Series {
    pub fn zero(order: usize) -> Self {
        Series {
            coeffs: vec![Poly::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Series::constant(Poly::one(), order)
    }

    pub fn constant(value: Poly, order: usize) -> Self {
        let mut s = Series::zero(order);
        s.coeffs[0] = value;
        s
    }

    /// The series `t` (order ≥ 1) or `0` (order 0).
    pub fn t(order: usize) -> Self {
        let mut s = Series::zero(order);
        if order >= 1 {
            s.coeffs[1] = Poly::one();
        }
        s
    }

    /// Raw coefficients; shorter input is zero-padded, longer input is rejected.
    pub fn from_coeffs(coeffs: Vec<Poly>, order: usize) -> Result<Self> {
        if coeffs.len() > order + 1 {
            return Err(Error::OrderMismatch {
                left: coeffs.len() - 1,
                right: order,
            });
        }
        let mut s = Series::zero(order);
        for (slot, c) in s.coeffs.iter_mut().zip(coeffs) {
            *slot = c;
        }
        Ok(s)
    }

    /// Exponential generating function `Σ a_n t^n/n!` of the first `order + 1` terms.
    pub fn from_egf_terms(terms: &[Poly], order: usize) -> Result<Self> {
        if terms.len() <= order {
            return Err(Error::IndexOutOfRange {
                index: order,
                len: terms.len(),
            });
        }
        Ok(Series {
            coeffs: terms[..=order]
                .iter()
                .enumerate()
                .map(|(n, a)| a.scale(&factorial(n).recip()))
                .collect(),
        })
    }

    /// Ordinary generating function `Σ a_n t^n` of the first `order + 1` terms.
    pub fn from_ogf_terms(terms: &[Poly], order: usize) -> Result<Self> {
        if terms.len() <= order {
            return Err(Error::IndexOutOfRange {
                index: order,
                len: terms.len(),
            });
        }
        Ok(Series {
            coeffs: terms[..=order].to_vec(),
        })
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, j: usize) -> &Poly {
        &self.coeffs[j]
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    /// `n!·c_n` for every stored `n`.
    pub fn egf_terms(&self) -> Vec<Poly> {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(n, c)| c.scale(&factorial(n)))
            .collect()
    }

    fn check_order(&self, other: &Series) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch {
                left: self.order(),
                right: other.order(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Series) -> Result<Series> {
        self.check_order(other)?;
        Ok(Series {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &Series) -> Result<Series> {
        self.check_order(other)?;
        Ok(Series {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    /// Multiplies every coefficient by a polynomial in `x`, `λ`.
    pub fn scale(&self, factor: &Poly) -> Series {
        Series {
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    /// Truncated Cauchy product.
    pub fn mul(&self, other: &Series) -> Result<Series> {
        self.check_order(other)?;
        let order = self.order();
        let mut out = Series::zero(order);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=order - i].iter().enumerate() {
                if !b.is_zero() {
                    out.coeffs[i + j] += &(a * b);
                }
            }
        }
        Ok(out)
    }

    /// Multiplicative inverse of a series with constant term exactly 1.
    pub fn reciprocal(&self) -> Result<Series> {
        if !self.coeffs[0].is_one() {
            return Err(Error::NonUnitConstant);
        }
        let mut out = Series::zero(self.order());
        out.coeffs[0] = Poly::one();
        for n in 1..=self.order() {
            let mut acc = Poly::zero();
            for k in 1..=n {
                acc -= &(&self.coeffs[k] * &out.coeffs[n - k]);
            }
            out.coeffs[n] = acc;
        }
        Ok(out)
    }

    /// Formal `d/dt`; the result has order one less.
    pub fn derivative(&self) -> Result<Series> {
        if self.order() == 0 {
            return Err(Error::ZeroOrder);
        }
        Ok(Series {
            coeffs: self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(j, c)| c.scale(&Rational::from_integer((j + 1).into())))
                .collect(),
        })
    }

    /// `exp(a)` for a series with zero constant term.
    ///
    /// Equal to `Σ a^k/k!` modulo `t^{N+1}`; computed from `b' = a'b`, i.e.
    /// `n·b_n = Σ_{k=1}^{n} k·a_k·b_{n-k}`.
    pub fn exp(&self) -> Result<Series> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NonZeroConstant);
        }
        let mut out = Series::zero(self.order());
        out.coeffs[0] = Poly::one();
        for n in 1..=self.order() {
            let mut acc = Poly::zero();
            for k in 1..=n {
                if self.coeffs[k].is_zero() {
                    continue;
                }
                let weighted = self.coeffs[k].scale(&Rational::from_integer(k.into()));
                acc += &(&weighted * &out.coeffs[n - k]);
            }
            out.coeffs[n] = acc.scale(&Rational::from_integer(n.into()).recip());
        }
        Ok(out)
    }

    /// `self(inner(t))` for an inner series with zero constant term.
    pub fn compose(&self, inner: &Series) -> Result<Series> {
        self.check_order(inner)?;
        if !inner.coeffs[0].is_zero() {
            return Err(Error::NonZeroConstant);
        }
        let order = self.order();
        let mut acc = Series::zero(order);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(inner)?;
            acc.coeffs[0] += c;
        }
        Ok(acc)
    }
}

/// Degenerate exponential `e_λ^p(t) = Σ (p)_{k,λ} t^k/k!`.
pub fn degen_exp(exponent: &Poly, order: usize) -> Series {
    let mut coeffs = Vec::with_capacity(order + 1);
    let mut falling = Poly::one();
    for k in 0..=order {
        if k > 0 {
            let shift = Poly::lambda().scale(&Rational::from_integer((k - 1).into()));
            falling = &falling * &(exponent - &shift);
        }
        coeffs.push(falling.scale(&factorial(k).recip()));
    }
    debug_assert_eq!(
        coeffs[order].scale(&factorial(order)),
        falling_factorial(exponent, order)
    );
    Series { coeffs }
}

/// Classical `e^{t}`.
pub fn exp_t(order: usize) -> Series {
    Series {
        coeffs: (0..=order)
            .map(|k| Poly::constant(factorial(k).recip()))
            .collect(),
    }
}

/// `(e_λ(t) - 1)^k / k!`, whose EGF terms are `{n k}_λ`.
pub fn stirling_col_egf(k: usize, order: usize) -> Series {
    let base = degen_exp(&Poly::one(), order)
        .sub(&Series::one(order))
        .expect("same order");
    let mut acc = Series::one(order);
    for _ in 0..k {
        acc = acc.mul(&base).expect("same order");
    }
    acc.scale(&Poly::constant(factorial(k).recip()))
}

/// Euler's transform on ordinary generating functions: `A(t) ↦ A(t/(1-t))/(1-t)`.
pub fn euler_ogf_transform(a: &Series) -> Series {
    let order = a.order();
    let one_minus_t = Series::one(order)
        .sub(&Series::t(order))
        .expect("same order");
    let geometric = one_minus_t.reciprocal().expect("unit constant term");
    let inner = Series::t(order).mul(&geometric).expect("same order");
    a.compose(&inner)
        .and_then(|composed| geometric.mul(&composed))
        .expect("inner series has zero constant term")
}

/// Seidel's transform on exponential generating functions: multiplies by `e^t`
/// (classical) or `e_λ^{1-λ}(t)` (degenerate).
pub fn seidel_transform(a: &Series, mode: Mode) -> Series {
    let multiplier = match mode {
        Mode::Classical => exp_t(a.order()),
        Mode::Degenerate => degen_exp(&(Poly::one() - Poly::lambda()), a.order()),
    };
    multiplier.mul(a).expect("same order")
}

/// `exp(x·(e_λ(t) - 1))`, the generating function of `φ_{n,λ}(x)`.
pub fn bell_egf(order: usize) -> Series {
    let inner = degen_exp(&Poly::one(), order)
        .sub(&Series::one(order))
        .expect("same order")
        .scale(&Poly::x());
    inner.exp().expect("zero constant term")
}

/// `1 / (1 - x·(e_λ(t) - 1))`, the generating function of `F_{n,λ}(x)`.
pub fn fubini_egf(order: usize) -> Series {
    let inner = degen_exp(&Poly::one(), order)
        .sub(&Series::one(order))
        .expect("same order")
        .scale(&Poly::x());
    Series::one(order)
        .sub(&inner)
        .expect("same order")
        .reciprocal()
        .expect("unit constant term")
}
