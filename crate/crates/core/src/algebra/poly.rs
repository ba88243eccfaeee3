use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::AlgebraError;
use crate::numeric::Rat;

/// Dense univariate polynomial; entry `j` is the coefficient of `x^j`.
///
/// The zero polynomial has no coefficients; otherwise the last entry is nonzero.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<Rat>", into = "Vec<Rat>")]
pub struct Poly {
    coeffs: Vec<Rat>,
}

impl TryFrom<Vec<Rat>> for Poly {
    type Error = std::convert::Infallible;
    fn try_from(v: Vec<Rat>) -> Result<Poly, Self::Error> {
        Ok(Poly::new(v))
    }
}

impl From<Poly> for Vec<Rat> {
    fn from(p: Poly) -> Vec<Rat> {
        p.coeffs
    }
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rat>) -> Poly {
        while coeffs.last().is_some_and(Rat::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Poly {
        Poly::new(coeffs.iter().map(|&c| Rat::integer(c)).collect())
    }

    pub fn zero() -> Poly {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rat) -> Poly {
        Poly::new(vec![c])
    }

    /// The polynomial `x`.
    pub fn x() -> Poly {
        Poly::new(vec![Rat::zero(), Rat::one()])
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// Coefficient of `x^j` (zero past the degree).
    pub fn coeff(&self, j: usize) -> Rat {
        self.coeffs.get(j).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Constant value, if the polynomial is constant.
    pub fn as_constant(&self) -> Option<Rat> {
        self.is_constant().then(|| self.coeff(0))
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        self.coeffs
            .iter()
            .rev()
            .fold(Rat::zero(), |acc, c| acc * x + c)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|j| self.coeff(j) + other.coeff(j)).collect())
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|j| self.coeff(j) - other.coeff(j)).collect())
    }

    pub fn neg(&self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn scale(&self, k: &Rat) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + a * b;
            }
        }
        Poly::new(out)
    }

    pub fn pow(&self, exp: u32) -> Poly {
        (0..exp).fold(Poly::constant(Rat::one()), |acc, _| acc.mul(self))
    }

    /// Coefficients of `p(c + t)` as a polynomial in `t`:
    /// `b_j = sum_{k >= j} a_k C(k, j) c^(k-j)`.
    pub fn taylor_shift(&self, c: &Rat) -> Poly {
        let n = self.coeffs.len();
        if n == 0 {
            return Poly::zero();
        }
        let binom = pascal_rows(n - 1);
        let mut c_pow = vec![Rat::one()];
        for k in 1..n {
            c_pow.push(&c_pow[k - 1] * c);
        }
        let mut out = Vec::with_capacity(n);
        for j in 0..n {
            let mut b = Rat::zero();
            for k in j..n {
                let a = &self.coeffs[k];
                if a.is_zero() {
                    continue;
                }
                b = b + a * Rat::from_bigint(binom[k][j].clone()) * &c_pow[k - j];
            }
            out.push(b);
        }
        Poly::new(out)
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(j, c)| c * Rat::integer(j as i64))
                .collect(),
        )
    }

    /// Coefficients reversed and padded to `len` entries: `x^(len-1) p(1/x)`.
    pub(crate) fn reversed_to(&self, len: usize) -> Poly {
        let mut v: Vec<Rat> = (0..len).map(|j| self.coeff(j)).collect();
        v.reverse();
        Poly::new(v)
    }

    /// `p(t) / t` for a polynomial with zero constant term.
    pub(crate) fn shift_down(&self) -> Poly {
        debug_assert!(self.coeff(0).is_zero());
        Poly::new(self.coeffs.iter().skip(1).cloned().collect())
    }

    /// The polynomial with its constant coefficient replaced by zero.
    pub fn without_constant(&self) -> Poly {
        let mut v = self.coeffs.clone();
        if let Some(c) = v.first_mut() {
            *c = Rat::zero();
        }
        Poly::new(v)
    }

    /// Sum of `|b_j|` for `j >= 1`.
    pub fn tail_abs_sum(&self) -> Rat {
        self.coeffs.iter().skip(1).map(Rat::abs).sum()
    }

    /// Render in the variable `var` with descending powers, e.g. `t^2 + 5t`.
    pub fn display_in<'a>(&'a self, var: &'a str) -> PolyDisplay<'a> {
        PolyDisplay { poly: self, var }
    }
}

/// Rows `0..=n` of Pascal's triangle.
pub(crate) fn pascal_rows(n: usize) -> Vec<Vec<BigInt>> {
    let mut rows: Vec<Vec<BigInt>> = vec![vec![BigInt::from(1)]];
    for k in 1..=n {
        let prev = &rows[k - 1];
        let mut row = vec![BigInt::from(1); k + 1];
        for j in 1..k {
            row[j] = &prev[j - 1] + &prev[j];
        }
        rows.push(row);
    }
    rows
}

/// `(b_{d}, ..., b_0)` printer; see [`Poly::display_in`].
pub struct PolyDisplay<'a> {
    poly: &'a Poly,
    var: &'a str,
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (j, c) in self.poly.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            let coeff = if mag.is_integer() {
                mag.to_string()
            } else {
                format!("({mag})")
            };
            match j {
                0 => write!(f, "{}", mag)?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{coeff}")?;
                    }
                    write!(f, "{}", self.var)?;
                    if j > 1 {
                        write!(f, "^{j}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({})", self.display_in("x"))
    }
}

/// Taylor-shifted coefficients of `p` about `c` together with
/// `B = sum_{j>=1} |b_j|`, the factor that scales `eps` in the `min{1, eps/B}` threshold.
pub fn centered_tail_bound(p: &Poly, c: &Rat) -> Result<(Poly, Rat), AlgebraError> {
    if p.is_constant() {
        return Err(AlgebraError::Degenerate(
            "constant polynomial has no tail to bound".into(),
        ));
    }
    let b = p.taylor_shift(c);
    let bound = b.tail_abs_sum();
    Ok((b, bound))
}
