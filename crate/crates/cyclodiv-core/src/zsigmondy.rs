//! Primitive prime divisors of `b^d - 1` through the cyclotomic value
//! `Phi_d(b)`.
//!
//! A prime `q | b^d - 1` is *primitive* when it divides no earlier `b^i - 1`
//! (`1 <= i < d`).  Every primitive prime divides `Phi_d(b)`, and the only
//! prime that can divide `Phi_d(b)` without being primitive is the largest
//! prime factor of `d` — so stripping that one prime leaves a cofactor whose
//! prime divisors are exactly the primitive primes.  Each of them is
//! `1 (mod d)` and therefore greater than `d`.  Existence of a
//! primitive prime is thus decided by `cofactor > 1`, with no factorization,
//! and the classical exception list says exactly when the cofactor collapses:
//! `(b, d) = (2, 1)`, `b = 2^a - 1` with `d = 2`, and `(b, d) = (2, 6)`.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};

use crate::cyclotomic::cyclotomic;
use crate::error::Error;
use crate::numtheory::{factor, is_prime, largest_prime_factor, FactorBudget};

/// Why a cell has no primitive prime: the three classical exception shapes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExceptionTag {
    /// `b = 2, d = 1`: the value `Phi_1(2) = 1` has no prime divisors at all.
    B2D1,
    /// `b = 2^a - 1, d = 2`: `Phi_2(b) = b + 1` is a power of 2, and 2
    /// already divides `b - 1`.
    MersenneD2,
    /// `b = 2, d = 6`: `Phi_6(2) = 3` and 3 already divides `2^2 - 1`.
    B2D6,
}

impl ExceptionTag {
    /// Stable lowercase code used in reports.
    pub fn code(self) -> &'static str {
        match self {
            ExceptionTag::B2D1 => "b2_d1",
            ExceptionTag::MersenneD2 => "mersenne_d2",
            ExceptionTag::B2D6 => "b2_d6",
        }
    }
}

/// Everything [`analyze`] can say about one `(b, d)` cell.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimitiveDivisorReport {
    pub b: u64,
    pub d: u64,
    /// `Phi_d(b)`, exactly.
    pub value: BigUint,
    pub exception: Option<ExceptionTag>,
    /// The stripped contribution of the largest prime factor of `d`
    /// (1 when nothing was stripped).
    pub nonprimitive_part: BigUint,
    /// `value / nonprimitive_part`; its prime divisors are exactly the
    /// primitive primes of `b^d - 1`.
    pub primitive_cofactor: BigUint,
    pub smallest_primitive_prime: Option<BigUint>,
    /// True when the cofactor resisted the budget, so the *smallest*
    /// primitive prime could not be certified (existence still could).
    pub cofactor_unfactored: bool,
}

impl PrimitiveDivisorReport {
    /// Whether a primitive prime exists; decided without factoring.
    pub fn has_primitive_prime(&self) -> bool {
        !self.primitive_cofactor.is_one()
    }
}

/// Search budget used by the convenience wrappers: trial division over the
/// residue-class progression up to 10^7, then the general factoring budget.
pub fn default_budget() -> FactorBudget {
    FactorBudget {
        trial_bound: 10_000_000,
        ..FactorBudget::default()
    }
}

enum ProgressionOutcome {
    /// A divisor (necessarily the smallest prime factor) was found.
    Found(u64),
    /// Trial covered every candidate up to the square root: `n` is prime.
    CofactorIsPrime,
    /// The limit was exhausted first.
    Exhausted,
}

/// Smallest divisor `> 1` of `n` among candidates `1 (mod d)` up to `limit`.
/// Every divisor of `n` lies in that progression (its prime factors all do),
/// so the first hit is automatically `n`'s smallest prime factor.
fn smallest_divisor_in_progression(n: &BigUint, d: u64, limit: u64) -> ProgressionOutcome {
    debug_assert!(*n > BigUint::one());
    let (start, step) = match d {
        1 => (2u64, 2u64), // 2, then the odd numbers
        2 => (3, 2),
        _ => (d + 1, d),
    };
    let limit = limit.min(u64::MAX - 2 * step);
    let bump = |c: u64| -> u64 {
        if d == 1 && c == 2 {
            1
        } else {
            step
        }
    };
    if let Some(n64) = n.to_u64() {
        let mut c = start;
        while c <= limit && (c as u128) * (c as u128) <= n64 as u128 {
            if n64 % c == 0 {
                return ProgressionOutcome::Found(c);
            }
            c += bump(c);
        }
        if (c as u128) * (c as u128) > n64 as u128 {
            ProgressionOutcome::CofactorIsPrime
        } else {
            ProgressionOutcome::Exhausted
        }
    } else {
        let sqrt = n.sqrt();
        let mut c = start;
        loop {
            if BigUint::from(c) > sqrt {
                return ProgressionOutcome::CofactorIsPrime;
            }
            if c > limit {
                return ProgressionOutcome::Exhausted;
            }
            if (n % c).is_zero() {
                return ProgressionOutcome::Found(c);
            }
            c += bump(c);
        }
    }
}

/// Classifies the primitive part of `Phi_d(b)` for `b >= 2`, `d >= 1`.
pub fn analyze(b: u64, d: u64, budget: &FactorBudget) -> Result<PrimitiveDivisorReport, Error> {
    if b < 2 {
        return Err(Error::BaseTooSmall(b));
    }
    if d == 0 {
        return Err(Error::CyclotomicIndexZero);
    }
    let value = cyclotomic(d)?.eval(&BigInt::from(b)).magnitude().clone();
    debug_assert!(!value.is_zero());

    let exception = if (b, d) == (2, 1) {
        Some(ExceptionTag::B2D1)
    } else if (b, d) == (2, 6) {
        Some(ExceptionTag::B2D6)
    } else if d == 2 && b.checked_add(1).is_some_and(u64::is_power_of_two) {
        Some(ExceptionTag::MersenneD2)
    } else {
        None
    };

    // Strip the one possible non-primitive prime: the largest prime factor
    // of d.  For d = 2 it may appear to any power (b + 1 can be divisible by
    // a high power of 2); for d > 2 a second copy is impossible, and finding
    // one means the arithmetic is broken.
    let mut cofactor = value.clone();
    let mut nonprimitive_part = BigUint::one();
    if d >= 2 {
        let l = largest_prime_factor(d).expect("d >= 2 has a prime factor");
        let mut stripped = 0u32;
        while (&cofactor % l).is_zero() {
            cofactor /= l;
            nonprimitive_part *= l;
            stripped += 1;
            if d > 2 && stripped > 1 {
                return Err(Error::StrippedTwice { b, d, l });
            }
        }
    }

    let (smallest_primitive_prime, cofactor_unfactored) = if cofactor.is_one() {
        (None, false)
    } else {
        match smallest_divisor_in_progression(&cofactor, d, budget.trial_bound) {
            ProgressionOutcome::Found(q) => (Some(BigUint::from(q)), false),
            ProgressionOutcome::CofactorIsPrime => (Some(cofactor.clone()), false),
            ProgressionOutcome::Exhausted => {
                if is_prime(&cofactor) {
                    (Some(cofactor.clone()), false)
                } else {
                    // Composite with every prime factor past the trial limit:
                    // skip redundant re-trial and go straight at it.
                    let inner = FactorBudget {
                        trial_bound: 100,
                        ..budget.clone()
                    };
                    let fm = factor(&cofactor, &inner);
                    if fm.is_complete() {
                        (fm.smallest_prime().cloned(), false)
                    } else {
                        // A hidden factor could undercut anything we found.
                        (None, true)
                    }
                }
            }
        }
    };

    Ok(PrimitiveDivisorReport {
        b,
        d,
        value,
        exception,
        nonprimitive_part,
        primitive_cofactor: cofactor,
        smallest_primitive_prime,
        cofactor_unfactored,
    })
}

/// Analyzes the full grid `2 <= b <= b_max`, `1 <= d <= d_max` (row-major in
/// `b`) and enforces, for every cell, that an exception tag appears exactly
/// when no primitive prime exists.
pub fn scan(
    b_max: u64,
    d_max: u64,
    budget: &FactorBudget,
) -> Result<Vec<PrimitiveDivisorReport>, Error> {
    if b_max < 2 {
        return Err(Error::BaseTooSmall(b_max));
    }
    if d_max == 0 {
        return Err(Error::CyclotomicIndexZero);
    }
    let mut out = Vec::with_capacity(((b_max - 1) * d_max) as usize);
    for b in 2..=b_max {
        for d in 1..=d_max {
            let report = analyze(b, d, budget)?;
            if report.exception.is_some() == report.has_primitive_prime() {
                return Err(Error::ExceptionMismatch { b, d });
            }
            out.push(report);
        }
    }
    Ok(out)
}

/// Brute-force primitivity straight from the definition: `q` divides
/// `b^d - 1` but no earlier `b^i - 1`.  Independent of the congruence
/// classification, so it can serve as its oracle.  `q >= 2` need not be
/// prime for the computation, but the notion is only meaningful for primes.
pub fn primitivity_oracle(b: u64, d: u64, q: &BigUint) -> Result<bool, Error> {
    if b < 2 {
        return Err(Error::BaseTooSmall(b));
    }
    if d == 0 {
        return Err(Error::CyclotomicIndexZero);
    }
    let value = cyclotomic(d)?.eval(&BigInt::from(b)).magnitude().clone();
    if q < &BigUint::from(2u32) || !(&value % q).is_zero() {
        return Err(Error::NotADivisor {
            b,
            d,
            q: q.to_string(),
        });
    }
    // Walk b^i mod q for i = 1 .. d-1; any hit of 1 makes q non-primitive.
    let mut acc = BigUint::from(b) % q;
    for _ in 1..d {
        if acc.is_one() {
            return Ok(false);
        }
        acc = acc * b % q;
    }
    Ok(true)
}
