//! Cyclotomic polynomials `Phi_d`, the cyclotomic-product classifier, and the
//! identities the divisor-property arguments lean on.
//!
//! `Phi_d` is computed exactly as `(x^d - 1) / prod Phi_e` over the proper
//! divisors `e | d`, with results memoized behind a mutex (recomputation on a
//! racing miss is benign: the value is a pure function of `d`).

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::Error;
use crate::numtheory::{
    divisors, euler_phi, factor, is_prime_u64, FactorBudget, FactorMap,
};
use crate::poly::{exponent_as_usize, x_pow_minus_one, IntPoly};

/// Hard cap on the cyclotomic index, to keep the dense `x^d - 1`
/// representation from allocating absurd amounts of memory.
pub const MAX_CYCLOTOMIC_INDEX: u64 = 1 << 20;

const CACHE_MAX_ENTRIES: usize = 4096;

fn cache() -> &'static Mutex<HashMap<u64, Arc<IntPoly>>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<IntPoly>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The `d`-th cyclotomic polynomial, exactly.
pub fn cyclotomic(d: u64) -> Result<IntPoly, Error> {
    if d == 0 {
        return Err(Error::CyclotomicIndexZero);
    }
    if d > MAX_CYCLOTOMIC_INDEX {
        return Err(Error::ExponentTooLarge(d));
    }
    if let Some(hit) = cache().lock().unwrap().get(&d) {
        return Ok((**hit).clone());
    }
    let mut poly = x_pow_minus_one(exponent_as_usize(d)?);
    for e in divisors(d) {
        if e == d {
            continue;
        }
        poly = poly
            .exact_divide(&cyclotomic(e)?)?
            .expect("prod of Phi_e over e | d divides x^d - 1");
    }
    let mut guard = cache().lock().unwrap();
    if guard.len() < CACHE_MAX_ENTRIES {
        guard.insert(d, Arc::new(poly.clone()));
    }
    Ok(poly)
}

/// A membership certificate for the cyclotomic-product family:
/// `x^e0 * prod Phi_{d_i}^{e_i}` with the `d_i` strictly ascending and every
/// multiplicity at least 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycloFactorization {
    e0: u32,
    factors: Vec<(u64, u32)>,
}

impl CycloFactorization {
    pub fn new(e0: u32, factors: Vec<(u64, u32)>) -> Result<Self, Error> {
        for w in factors.windows(2) {
            if w[0].0 >= w[1].0 {
                return Err(Error::UnsortedFactors(w[0].0, w[1].0));
            }
        }
        for &(d, e) in &factors {
            if d == 0 {
                return Err(Error::CyclotomicIndexZero);
            }
            if e == 0 {
                return Err(Error::ZeroMultiplicity(d));
            }
        }
        Ok(CycloFactorization { e0, factors })
    }

    pub fn e0(&self) -> u32 {
        self.e0
    }

    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn indices(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(d, _)| d)
    }

    pub fn contains_index(&self, d: u64) -> bool {
        self.factors.binary_search_by_key(&d, |&(i, _)| i).is_ok()
    }

    pub fn max_index(&self) -> Option<u64> {
        self.factors.last().map(|&(d, _)| d)
    }

    /// Total degree: `e0 + sum e_i * phi(d_i)`.
    pub fn degree(&self) -> u64 {
        self.e0 as u64
            + self
                .factors
                .iter()
                .map(|&(d, e)| e as u64 * euler_phi(d))
                .sum::<u64>()
    }

    /// Multiplies the certificate back out.
    pub fn expand(&self) -> Result<IntPoly, Error> {
        let mut acc = IntPoly::x_pow(self.e0 as usize);
        for &(d, e) in &self.factors {
            let phi = cyclotomic(d)?;
            for _ in 0..e {
                acc = &acc * &phi;
            }
        }
        Ok(acc)
    }
}

/// Outcome of [`classify_cyclotomic_product`]: either a certificate, or the
/// diagnostics of the failed attempt (what was peeled off and what residual
/// resisted every admissible cyclotomic).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Classification {
    InFamily(CycloFactorization),
    NotInFamily(NotInFamilyDiag),
}

impl Classification {
    pub fn certificate(&self) -> Option<&CycloFactorization> {
        match self {
            Classification::InFamily(c) => Some(c),
            Classification::NotInFamily(_) => None,
        }
    }

    pub fn is_in_family(&self) -> bool {
        matches!(self, Classification::InFamily(_))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NotInFamilyDiag {
    pub e0: u32,
    pub partial: Vec<(u64, u32)>,
    /// What is left of `f` after stripping `x^e0` and every cyclotomic factor
    /// found; no `Phi_d` with `phi(d) <= deg(residual)` divides it.
    pub residual: IntPoly,
}

/// Decides membership in the family `x^e0 * prod Phi_{d_i}^{e_i}` by trial
/// division in ascending `d`.  A cyclotomic divisor of the residual satisfies
/// `phi(d) <= deg`, and `phi(d) >= sqrt(d/2)` bounds the indices worth
/// trying by `2 * deg^2`, recomputed as the residual shrinks.
pub fn classify_cyclotomic_product(f: &IntPoly) -> Result<Classification, Error> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    let e0 = u32::try_from(f.x_valuation()).expect("degree fits u32");
    let mut rem = f.div_x_pow(e0 as usize)?;
    let mut partial: Vec<(u64, u32)> = Vec::new();
    let mut d = 0u64;
    while !rem.is_one() {
        d += 1;
        let deg = rem.degree().expect("monic residual is nonzero") as u64;
        if d > 2 * deg * deg {
            return Ok(Classification::NotInFamily(NotInFamilyDiag {
                e0,
                partial,
                residual: rem,
            }));
        }
        if euler_phi(d) > deg {
            continue;
        }
        let phi = cyclotomic(d)?;
        let mut e = 0u32;
        while let Some(q) = rem.exact_divide(&phi)? {
            rem = q;
            e += 1;
        }
        if e > 0 {
            partial.push((d, e));
        }
    }
    Ok(Classification::InFamily(CycloFactorization::new(
        e0, partial,
    )?))
}

/// The substitution identity behind the divisor property: for prime `p`,
/// `Phi_d(x^p) = Phi_{pd}(x)` when `p | d`, and `Phi_d(x^p) =
/// Phi_{pd}(x) * Phi_d(x)` when `p` does not divide `d`.  Both sides are
/// expanded and compared exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubstitutionIdentity {
    pub d: u64,
    pub p: u64,
    /// Whether `p | d`, selecting which right-hand side applies.
    pub p_divides_d: bool,
    pub lhs: IntPoly,
    pub rhs: IntPoly,
    pub verified: bool,
}

pub fn cyclotomic_substitution_identity(d: u64, p: u64) -> Result<SubstitutionIdentity, Error> {
    if d == 0 {
        return Err(Error::CyclotomicIndexZero);
    }
    if !is_prime_u64(p) {
        return Err(Error::NotPrime(p));
    }
    let phi_d = cyclotomic(d)?;
    let lhs = phi_d.substitute_x_pow(exponent_as_usize(p)?);
    let p_divides_d = d.is_multiple_of(p);
    let rhs = if p_divides_d {
        cyclotomic(p * d)?
    } else {
        &cyclotomic(p * d)? * &phi_d
    };
    let verified = lhs == rhs;
    Ok(SubstitutionIdentity {
        d,
        p,
        p_divides_d,
        lhs,
        rhs,
        verified,
    })
}

/// One shared prime of `gcd(Phi_n(b), Phi_m(b))` and whether `m/n` is the
/// power of that prime the theory demands (the exponent may be negative).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SharedPrimeRatio {
    pub prime: BigUint,
    /// `a` with `m/n = prime^a`, when such an integer exists.
    pub exponent: Option<i64>,
    pub consistent: bool,
}

/// Outcome of [`shared_prime_ratio_check`]; `unfactored` carries any part of
/// the gcd the factoring budget could not expose, so a clean `all_consistent`
/// is never claimed on hidden primes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SharedPrimeOutcome {
    pub n: u64,
    pub m: u64,
    pub b: u64,
    pub gcd: BigUint,
    pub shared: Vec<SharedPrimeRatio>,
    pub unfactored: Option<BigUint>,
    pub all_consistent: bool,
}

/// Checks, for every exposed prime `p | gcd(Phi_n(b), Phi_m(b))`, that
/// `m/n = p^a` for some integer `a` (possibly negative).
pub fn shared_prime_ratio_check(
    n: u64,
    m: u64,
    b: u64,
    budget: &FactorBudget,
) -> Result<SharedPrimeOutcome, Error> {
    if n == 0 || m == 0 {
        return Err(Error::CyclotomicIndexZero);
    }
    if b < 2 {
        return Err(Error::BaseTooSmall(b));
    }
    let bv = BigInt::from(b);
    let vn = cyclotomic(n)?.eval(&bv).magnitude().clone();
    let vm = cyclotomic(m)?.eval(&bv).magnitude().clone();
    let g = vn.gcd(&vm);
    let mut shared = Vec::new();
    let mut unfactored = None;
    if !g.is_one() {
        let fm: FactorMap = factor(&g, budget);
        for (p, _) in fm.factors() {
            let exponent = ratio_prime_power(n, m, p);
            shared.push(SharedPrimeRatio {
                prime: p.clone(),
                consistent: exponent.is_some(),
                exponent,
            });
        }
        unfactored = fm.cofactor().cloned();
    }
    let all_consistent = shared.iter().all(|s| s.consistent) && unfactored.is_none();
    Ok(SharedPrimeOutcome {
        n,
        m,
        b,
        gcd: g,
        shared,
        unfactored,
        all_consistent,
    })
}

/// `a` such that `m/n = p^a` exactly, if one exists.
fn ratio_prime_power(n: u64, m: u64, p: &BigUint) -> Option<i64> {
    if n == m {
        return Some(0);
    }
    let (ratio, sign) = if m.is_multiple_of(n) {
        (m / n, 1i64)
    } else if n.is_multiple_of(m) {
        (n / m, -1i64)
    } else {
        return None;
    };
    let mut t = BigUint::from(ratio);
    let mut a = 0i64;
    while (&t % p).is_zero() {
        t /= p;
        a += 1;
    }
    if t.is_one() && a > 0 {
        Some(sign * a)
    } else {
        None
    }
}

/// Verifies `x^m - 1 = prod_{d | m} Phi_d(x)` by exact expansion.
pub fn product_of_cyclotomics_equals(m: u64) -> Result<bool, Error> {
    if m == 0 {
        return Err(Error::CyclotomicIndexZero);
    }
    let mut prod = IntPoly::one();
    for d in divisors(m) {
        prod = &prod * &cyclotomic(d)?;
    }
    Ok(prod == x_pow_minus_one(exponent_as_usize(m)?))
}
