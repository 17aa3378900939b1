//! Dense univariate polynomials over `Z` with exact big-integer coefficients.
//!
//! Coefficients are stored in ascending degree order and the representation is
//! kept normalized: the vector is empty exactly for the zero polynomial, and a
//! nonempty vector never ends in a zero.  The zero polynomial has no degree
//! (`degree()` returns `None`), so it can never be confused with a nonzero
//! constant.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPoly::constant(BigInt::one())
    }

    pub fn x() -> Self {
        IntPoly::from_coeffs(vec![BigInt::zero(), BigInt::one()])
    }

    pub fn constant(c: BigInt) -> Self {
        IntPoly::from_coeffs(vec![c])
    }

    /// `x^n`.
    pub fn x_pow(n: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[n] = BigInt::one();
        IntPoly { coeffs }
    }

    /// Builds a polynomial from ascending coefficients, dropping trailing zeros.
    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64_coeffs(coeffs: &[i64]) -> Self {
        IntPoly::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    /// Leading coefficient, or `None` for the zero polynomial.
    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Coefficient of `x^i` (zero beyond the stored length).
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeff(0)
    }

    /// Largest absolute value among the coefficients (zero for the zero polynomial).
    pub fn max_abs_coeff(&self) -> BigUint {
        self.coeffs
            .iter()
            .map(|c| c.magnitude().clone())
            .max()
            .unwrap_or_else(BigUint::zero)
    }

    /// Number of leading zero coefficients, i.e. the multiplicity of the root 0.
    /// Zero for the zero polynomial by convention.
    pub fn x_valuation(&self) -> usize {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .unwrap_or(0)
    }

    /// Multiplies by `x^k`.
    pub fn mul_x_pow(&self, k: usize) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend_from_slice(&self.coeffs);
        IntPoly { coeffs }
    }

    /// Divides by `x^k`; requires `x^k | self`.
    pub fn div_x_pow(&self, k: usize) -> Result<IntPoly, Error> {
        if self.x_valuation() < k && !self.is_zero() {
            return Err(Error::NonMonicDivisor);
        }
        if self.is_zero() {
            return Ok(IntPoly::zero());
        }
        Ok(IntPoly {
            coeffs: self.coeffs[k..].to_vec(),
        })
    }

    /// `f(x^k)` for `k >= 1`: spreads coefficient `i` to position `i * k`.
    pub fn substitute_x_pow(&self, k: usize) -> IntPoly {
        assert!(k >= 1, "substitution exponent must be >= 1");
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); (self.coeffs.len() - 1) * k + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * k] = c.clone();
        }
        IntPoly { coeffs }
    }

    pub fn pow(&self, e: u32) -> IntPoly {
        let mut acc = IntPoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Quotient and remainder by a monic divisor: `self = q * h + r` with
    /// `deg r < deg h`.  Exact over `Z` because `h` is monic.
    pub fn divrem_monic(&self, h: &IntPoly) -> Result<(IntPoly, IntPoly), Error> {
        if !h.is_monic() {
            return Err(Error::NonMonicDivisor);
        }
        let dh = h.degree().expect("monic implies nonzero");
        let Some(df) = self.degree() else {
            return Ok((IntPoly::zero(), IntPoly::zero()));
        };
        if df < dh {
            return Ok((IntPoly::zero(), self.clone()));
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); df - dh + 1];
        for i in (0..=df - dh).rev() {
            let c = rem[i + dh].clone();
            if c.is_zero() {
                continue;
            }
            for (j, hj) in h.coeffs.iter().enumerate() {
                let t = hj * &c;
                rem[i + j] -= t;
            }
            quot[i] = c;
        }
        debug_assert!(rem[dh..].iter().all(|c| c.is_zero()));
        rem.truncate(dh);
        Ok((IntPoly::from_coeffs(quot), IntPoly::from_coeffs(rem)))
    }

    /// Exact quotient by a monic divisor, or `None` when the division leaves a
    /// remainder.
    pub fn exact_divide(&self, h: &IntPoly) -> Result<Option<IntPoly>, Error> {
        let (q, r) = self.divrem_monic(h)?;
        Ok(if r.is_zero() { Some(q) } else { None })
    }

    /// Exact evaluation at an integer point (Horner).
    pub fn eval(&self, t: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * t + c;
        }
        acc
    }

    /// Evaluation mod `m >= 1`, reducing after every Horner step so the
    /// intermediate values never exceed `m^2`.  The result is in `[0, m)`.
    pub fn eval_mod(&self, t: &BigInt, m: &BigUint) -> Result<BigUint, Error> {
        if m.is_zero() {
            return Err(Error::ZeroModulus);
        }
        let mi = BigInt::from(m.clone());
        let tr = t.mod_floor(&mi);
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = (acc * &tr + c).mod_floor(&mi);
        }
        Ok(acc.magnitude().clone())
    }

    pub fn derivative(&self) -> IntPoly {
        if self.coeffs.len() <= 1 {
            return IntPoly::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigInt::from(i))
            .collect();
        IntPoly::from_coeffs(coeffs)
    }

    /// Content: the gcd of the coefficients' absolute values.
    pub fn content(&self) -> BigUint {
        self.coeffs
            .iter()
            .fold(BigUint::zero(), |acc, c| acc.gcd(c.magnitude()))
    }

    fn primitive_part(&self) -> IntPoly {
        let c = self.content();
        if c.is_zero() || c.is_one() {
            return self.clone();
        }
        let ci = BigInt::from(c);
        IntPoly {
            coeffs: self.coeffs.iter().map(|x| x / &ci).collect(),
        }
    }

    /// Pseudo-remainder: `lc(b)^(deg a - deg b + 1) * a = q * b + r`.
    fn pseudo_rem(&self, b: &IntPoly) -> IntPoly {
        let da = self.degree().expect("nonzero");
        let db = b.degree().expect("nonzero");
        debug_assert!(da >= db);
        let lc = b.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        for i in (0..=da - db).rev() {
            let c = rem[i + db].clone();
            for r in rem.iter_mut() {
                *r *= &lc;
            }
            if !c.is_zero() {
                for (j, bj) in b.coeffs.iter().enumerate() {
                    let t = bj * &c;
                    rem[i + j] -= t;
                }
            }
            debug_assert!(rem[i + db].is_zero());
        }
        rem.truncate(db);
        IntPoly::from_coeffs(rem)
    }

    /// True iff `gcd(f, f')` over the rationals is constant, i.e. `f` has no
    /// repeated irreducible factor.  Computed with a primitive polynomial
    /// remainder sequence over `Z`, so no floating point or modular heuristics
    /// are involved.
    pub fn is_squarefree(&self) -> Result<bool, Error> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if self.degree() == Some(0) {
            return Ok(true);
        }
        let mut a = self.primitive_part();
        let mut b = self.derivative().primitive_part();
        while !b.is_zero() {
            if a.degree() < b.degree() {
                std::mem::swap(&mut a, &mut b);
                continue;
            }
            let r = a.pseudo_rem(&b).primitive_part();
            a = b;
            b = r;
        }
        Ok(a.degree() == Some(0))
    }

    /// Decimal coefficient list, ascending, as used by the `--coeffs` CLI format.
    pub fn coeff_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| c.to_string()).collect()
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({self})")
    }
}

/// Canonical rendering: descending powers, explicit signs, no `*`, e.g.
/// `x^4 + x^3 - x - 1`.
impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.magnitude();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let show_coeff = i == 0 || !mag.is_one();
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) + rhs.coeff(i));
        }
        IntPoly::from_coeffs(coeffs)
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) - rhs.coeff(i));
        }
        IntPoly::from_coeffs(coeffs)
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        IntPoly::from_coeffs(coeffs)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for IntPoly {
            type Output = IntPoly;
            fn $method(self, rhs: IntPoly) -> IntPoly {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&IntPoly> for IntPoly {
            type Output = IntPoly;
            fn $method(self, rhs: &IntPoly) -> IntPoly {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

/// Convenience used by tests and the CLI: evaluation at a `u64` point.
pub fn eval_at_u64(f: &IntPoly, t: u64) -> BigInt {
    f.eval(&BigInt::from(t))
}

/// `x^n - 1`.
pub fn x_pow_minus_one(n: usize) -> IntPoly {
    assert!(n >= 1);
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[0] = -BigInt::one();
    coeffs[n] = BigInt::one();
    IntPoly { coeffs }
}

/// Checked exponent cast for contexts where an exponent arrives as `u64`.
pub fn exponent_as_usize(e: u64) -> Result<usize, Error> {
    e.to_usize().ok_or(Error::ExponentTooLarge(e))
}
