//! Empirical and structural verification of the divisibility property
//! `f(p) | f(p^p)`: per-prime checks, prime-range scans, threshold
//! estimation, the `N = 2` trichotomy, and the radical side condition.

use std::collections::{BTreeSet, VecDeque};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::cyclotomic::{classify_cyclotomic_product, Classification, CycloFactorization};
use crate::error::Error;
use crate::numtheory::{
    factor, factor_u64, is_prime_u64, largest_prime_factor, next_prime_after, primes_up_to,
    radical_u64, FactorBudget,
};
use crate::poly::IntPoly;

/// Default ceiling for [`find_failing_prime`]; every corpus polynomial's
/// first failure sits far below it.
pub const DEFAULT_FAILURE_SEARCH_LIMIT: u64 = 10_000;

/// Does `f(p)` divide `f(p^p)`?  Computed without ever materializing
/// `f(p^p)`: with `m = |f(p)|`, the check is `f(p^p) = 0 mod m`, and
/// `p^p mod m` comes from modular exponentiation.  When `f(p) = 0` the
/// convention is "0 divides only 0", so the check holds exactly when `p^p`
/// is also a root; a root of a monic polynomial is bounded by
/// `1 + max |coeff|`, which makes that case cheap to decide by bit lengths.
pub fn check_at_prime(f: &IntPoly, p: u64) -> Result<bool, Error> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    if !is_prime_u64(p) {
        return Err(Error::NotPrime(p));
    }
    let fp = f.eval(&BigInt::from(p));
    if fp.is_zero() {
        let root_bound_bits = (BigUint::one() + f.max_abs_coeff()).bits() as u128;
        // p >= 2^(bits(p) - 1), so p^p has at least p * (bits(p) - 1) + 1 bits.
        let pp_bits_floor = (p as u128) * (64 - u128::from(p.leading_zeros()) - 1) + 1;
        if pp_bits_floor > root_bound_bits {
            return Ok(false);
        }
        let pp = BigInt::from(p).pow(u32::try_from(p).expect("p is tiny in this branch"));
        return Ok(f.eval(&pp).is_zero());
    }
    let m = fp.magnitude();
    if m.is_one() {
        return Ok(true);
    }
    let t = BigUint::from(p).modpow(&BigUint::from(p), m);
    Ok(f.eval_mod(&BigInt::from(t), m)?.is_zero())
}

/// Outcome of a prime-range scan, echoing the input and bracketing the
/// threshold past which the property holds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisibilityReport {
    pub poly: IntPoly,
    pub lo: u64,
    pub hi: u64,
    /// Primes in range where the divisibility failed, ascending.
    pub failures: Vec<u64>,
    pub passes: u64,
    /// Next prime after the largest failure (or `lo` with a clean range):
    /// evidence for the threshold, never proof of it.
    pub candidate_n: u64,
    /// `max d_i + 1` when the input is a certified cyclotomic product
    /// (2 for pure powers of x): past this point failures are impossible.
    pub theory_n: Option<u64>,
    /// True when no structural threshold backs the candidate.
    pub empirical: bool,
    /// False exactly when a failure contradicts `theory_n` — an invariant
    /// breach that callers must treat as fatal.
    pub consistent: bool,
}

/// Runs [`check_at_prime`] over every prime in `[lo, hi]` (in parallel, with
/// deterministic ascending assembly) and brackets the threshold.
pub fn scan(f: &IntPoly, lo: u64, hi: u64) -> Result<DivisibilityReport, Error> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    if lo < 2 || lo > hi {
        return Err(Error::BadPrimeRange(lo, hi));
    }
    let primes: Vec<u64> = primes_up_to(hi)
        .into_iter()
        .filter(|&p| p >= lo)
        .collect();
    let mut checked: Vec<(u64, bool)> = primes
        .par_iter()
        .map(|&p| check_at_prime(f, p).map(|ok| (p, ok)))
        .collect::<Result<_, _>>()?;
    checked.sort_unstable_by_key(|&(p, _)| p);
    let failures: Vec<u64> = checked
        .iter()
        .filter(|&&(_, ok)| !ok)
        .map(|&(p, _)| p)
        .collect();
    let passes = (checked.len() - failures.len()) as u64;
    let candidate_n = failures.last().map_or(lo, |&p| next_prime_after(p));
    let theory_n = match classify_cyclotomic_product(f)? {
        Classification::InFamily(cert) => Some(cert.max_index().map_or(2, |d| d + 1)),
        Classification::NotInFamily(_) => None,
    };
    let consistent = theory_n.is_none_or(|n| failures.iter().all(|&p| p < n));
    Ok(DivisibilityReport {
        poly: f.clone(),
        lo,
        hi,
        failures,
        passes,
        candidate_n,
        empirical: theory_n.is_none(),
        theory_n,
        consistent,
    })
}

/// Smallest prime `<= search_limit` at which the divisibility fails, or
/// `None` for a clean sweep.  "None" is inconclusive evidence, never proof.
pub fn find_failing_prime(f: &IntPoly, search_limit: u64) -> Result<Option<u64>, Error> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    let mut p = 2u64;
    while p <= search_limit {
        if !check_at_prime(f, p)? {
            return Ok(Some(p));
        }
        p = next_prime_after(p);
    }
    Ok(None)
}

/// The `f(1) = 0` necessary condition for the property to hold from `p = 2`
/// onward (vacuous for pure powers of x).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct N2Necessity {
    pub pure_power_of_x: bool,
    pub value_at_one: BigInt,
    /// True when the necessary condition is met (or vacuous).
    pub consistent: bool,
}

pub fn n2_necessary_check(f: &IntPoly) -> Result<N2Necessity, Error> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    let pure_power_of_x = f.x_valuation() == f.degree().expect("nonzero");
    let value_at_one = f.eval(&BigInt::one());
    Ok(N2Necessity {
        pure_power_of_x,
        consistent: pure_power_of_x || value_at_one.is_zero(),
        value_at_one,
    })
}

/// The certified-from-`p = 2` family: index 1 together with finitely many
/// distinct primes, all to the first power.
pub fn n2_sufficient_family(primes: &[u64]) -> Result<CycloFactorization, Error> {
    let mut sorted = primes.to_vec();
    sorted.sort_unstable();
    for w in sorted.windows(2) {
        if w[0] == w[1] {
            return Err(Error::DuplicatePrime(w[0]));
        }
    }
    for &p in &sorted {
        if !is_prime_u64(p) {
            return Err(Error::FamilyPrimeRequired(p));
        }
    }
    let mut factors = vec![(1u64, 1u32)];
    factors.extend(sorted.into_iter().map(|p| (p, 1u32)));
    CycloFactorization::new(0, factors)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum N2Status {
    /// Certified: the divisibility holds at every prime from 2 on.
    SufficientFamily,
    /// No obstruction found and no failing prime observed; not certified.
    EmpiricallyConsistentUnknown,
    /// A concrete reason the property fails at some prime.
    Obstructed,
    /// `f(1) != 0` for a non-power-of-x, so holding from 2 is impossible.
    NecessaryViolated,
}

impl N2Status {
    pub fn code(self) -> &'static str {
        match self {
            N2Status::SufficientFamily => "sufficient_family",
            N2Status::EmpiricallyConsistentUnknown => "empirically_consistent_unknown",
            N2Status::Obstructed => "obstructed",
            N2Status::NecessaryViolated => "necessary_violated",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum N2Witness {
    /// Index `d` is present, prime `p` divides it, but `d / p` is absent:
    /// the check must fail at `p`.
    MissingDivisor { d: u64, p: u64, required: u64 },
    /// Index 6 is present with no power of 3 (including 1) alongside: the
    /// value 3 contributed at the prime 2 cannot be matched, so the check
    /// fails at 2.
    MissingPowerOfThree { d: u64, p: u64 },
    /// An observed counterexample prime.
    FailingPrime { p: u64 },
}

impl N2Witness {
    /// The prime at which the property provably (or observedly) fails.
    pub fn failing_at(&self) -> u64 {
        match *self {
            N2Witness::MissingDivisor { p, .. } => p,
            N2Witness::MissingPowerOfThree { p, .. } => p,
            N2Witness::FailingPrime { p } => p,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct N2Verdict {
    pub status: N2Status,
    pub witness: Option<N2Witness>,
    pub notes: Vec<String>,
}

fn is_power_of_three(mut t: u64) -> bool {
    if t == 0 {
        return false;
    }
    while t.is_multiple_of(3) {
        t /= 3;
    }
    t == 1
}

/// Whether the certificate matches the certified family shape:
/// `x^e0 * Phi_1^e1 * prod Phi_q^eq` with distinct primes `q` and every
/// `eq <= e1`.  (The exponent cap matters: with `eq > e1` the q-part of
/// `f(p)` at `p = q` can outgrow what `f(p^p)` has to offer.)
fn is_family_shape(cert: &CycloFactorization) -> bool {
    match cert.factors() {
        [] => true,
        [(1, e1), rest @ ..] => rest.iter().all(|&(d, e)| is_prime_u64(d) && e <= *e1),
        _ => false,
    }
}

/// The peeling argument on the index set `A` of a certificate: with `p_k`
/// the largest prime dividing any index, every index `d` divisible by `p_k`
/// must keep `d / p` in `A` for each prime `p | d` — except the pair
/// `(p, d) = (2, 6)`, where the demand becomes "some power of 3 lies in
/// `A`".  A missing element yields an `Obstructed` verdict whose witness
/// prime is guaranteed to fail [`check_at_prime`] on the expanded
/// polynomial.  A silent peel yields `SufficientFamily` when the shape is
/// certified, else `EmpiricallyConsistentUnknown`.
pub fn n2_structural_obstruction(cert: &CycloFactorization) -> Result<N2Verdict, Error> {
    let indices: BTreeSet<u64> = cert.indices().collect();
    if !indices.iter().any(|&d| d >= 2) {
        return Err(Error::NoNontrivialFactor);
    }
    let p_k = indices
        .iter()
        .filter_map(|&d| largest_prime_factor(d))
        .max()
        .expect("a nontrivial index exists");
    let mut notes = vec![format!("peeling at the largest prime in play, {p_k}")];
    let mut queue: VecDeque<u64> = indices.iter().copied().filter(|&d| d % p_k == 0).collect();
    let mut enqueued: BTreeSet<u64> = queue.iter().copied().collect();
    while let Some(d) = queue.pop_front() {
        for (p, _) in factor_u64(d) {
            if (p, d) == (2, 6) {
                debug_assert_eq!(p_k, 3, "6 enters the worklist only under p_k = 3");
                if !indices.iter().any(|&t| is_power_of_three(t)) {
                    notes.push(
                        "index 6 contributes 3 at the prime 2, and no power-of-3 index can answer it"
                            .to_string(),
                    );
                    return Ok(N2Verdict {
                        status: N2Status::Obstructed,
                        witness: Some(N2Witness::MissingPowerOfThree { d, p }),
                        notes,
                    });
                }
                continue;
            }
            let required = d / p;
            if !indices.contains(&required) {
                notes.push(format!(
                    "index {d} demands {required} = {d}/{p} in the set, which is absent"
                ));
                return Ok(N2Verdict {
                    status: N2Status::Obstructed,
                    witness: Some(N2Witness::MissingDivisor { d, p, required }),
                    notes,
                });
            }
            if required % p_k == 0 && enqueued.insert(required) {
                queue.push_back(required);
            }
        }
    }
    if is_family_shape(cert) {
        notes.push("index set peels cleanly and matches the certified family shape".to_string());
        Ok(N2Verdict {
            status: N2Status::SufficientFamily,
            witness: None,
            notes,
        })
    } else {
        notes.push(
            "index set peels cleanly but the shape is not covered by the sufficiency result"
                .to_string(),
        );
        Ok(N2Verdict {
            status: N2Status::EmpiricallyConsistentUnknown,
            witness: None,
            notes,
        })
    }
}

/// Full `N = 2` analysis of a monic polynomial: classify, run the necessary
/// condition and the structural peel where they apply, and fall back to an
/// empirical counterexample search up to `search_limit`.
pub fn n2_analyze(f: &IntPoly, search_limit: u64) -> Result<N2Verdict, Error> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    match classify_cyclotomic_product(f)? {
        Classification::InFamily(cert) => {
            if cert.indices().all(|d| d < 2) {
                return Ok(N2Verdict {
                    status: N2Status::SufficientFamily,
                    witness: None,
                    notes: vec![
                        "a power of x times a power of (x - 1); the divisibility holds at every prime"
                            .to_string(),
                    ],
                });
            }
            let mut verdict = n2_structural_obstruction(&cert)?;
            if matches!(
                verdict.status,
                N2Status::Obstructed | N2Status::SufficientFamily
            ) {
                return Ok(verdict);
            }
            match find_failing_prime(f, search_limit)? {
                Some(p) => {
                    verdict.status = N2Status::Obstructed;
                    verdict.witness = Some(N2Witness::FailingPrime { p });
                    verdict
                        .notes
                        .push(format!("empirical counterexample at p = {p}"));
                }
                None => {
                    verdict
                        .notes
                        .push(format!("no failing prime up to {search_limit}"));
                }
            }
            Ok(verdict)
        }
        Classification::NotInFamily(diag) => {
            let value_at_one = f.eval(&BigInt::one());
            let witness = find_failing_prime(f, search_limit)?.map(|p| N2Witness::FailingPrime { p });
            let mut notes = vec![format!(
                "not a cyclotomic product: residual {} resists every admissible factor",
                diag.residual
            )];
            if !value_at_one.is_zero() {
                notes.push(format!(
                    "f(1) = {value_at_one} is nonzero, violating the necessary condition"
                ));
                if witness.is_none() {
                    notes.push(format!("no failing prime up to {search_limit}"));
                }
                return Ok(N2Verdict {
                    status: N2Status::NecessaryViolated,
                    witness,
                    notes,
                });
            }
            match witness {
                Some(w) => {
                    notes.push(format!("empirical counterexample at p = {}", w.failing_at()));
                    Ok(N2Verdict {
                        status: N2Status::Obstructed,
                        witness: Some(w),
                        notes,
                    })
                }
                None => {
                    notes.push(format!(
                        "no failing prime up to {search_limit}; inconclusive"
                    ));
                    Ok(N2Verdict {
                        status: N2Status::EmpiricallyConsistentUnknown,
                        witness: None,
                        notes,
                    })
                }
            }
        }
    }
}

/// A failure of the radical condition at one input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RadicalViolation {
    pub n: u64,
    /// `f(n)`.
    pub value: BigUint,
    /// `rad(f(n))` when the factoring budget could certify it.
    pub radical: Option<BigUint>,
    /// The portion of `f(n)` none of whose primes divides the right side.
    pub blocking_part: BigUint,
    /// `f(n^rad(n))`, exactly.
    pub rhs: BigUint,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RadicalReport {
    pub poly: IntPoly,
    pub n_limit: u64,
    pub checked: u64,
    pub violation: Option<RadicalViolation>,
}

/// Checks `rad(f(n)) | f(n^rad(n))` for all `0 <= n <= n_limit`, for `f`
/// with nonnegative coefficients.  The radical divisibility is decided by
/// iterated gcd-stripping against `f(n^rad(n)) mod u`, which never
/// materializes the right-hand value; it is reconstructed exactly only for
/// the single reported violation.
pub fn radical_property_check(f: &IntPoly, n_limit: u64) -> Result<RadicalReport, Error> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.coeffs().iter().any(|c| c.is_negative()) {
        return Err(Error::NegativeCoefficient);
    }
    for n in 0..=n_limit {
        let value = f.eval(&BigInt::from(n)).magnitude().clone();
        if value <= BigUint::one() {
            continue; // rad(0) = rad(1) = 1 divides everything
        }
        let rad_n = radical_u64(n);
        // Strip u by gcd with f(n^rad(n)) mod u: u's primes are f(n)'s
        // primes, and u reaching 1 is exactly rad(f(n)) dividing the rhs.
        let mut u = value.clone();
        loop {
            if u.is_one() {
                break;
            }
            let t = BigUint::from(n).modpow(&BigUint::from(rad_n), &u);
            let w = f.eval_mod(&BigInt::from(t), &u)?;
            let g = u.gcd(&w);
            if g.is_one() {
                let arg = BigInt::from(n).pow(
                    u32::try_from(rad_n).expect("rad(n) <= n fits u32 at checkable scales"),
                );
                let rhs = f.eval(&arg).magnitude().clone();
                let radical = factor(&value, &FactorBudget::default())
                    .radical();
                return Ok(RadicalReport {
                    poly: f.clone(),
                    n_limit,
                    checked: n + 1,
                    violation: Some(RadicalViolation {
                        n,
                        value,
                        radical,
                        blocking_part: u,
                        rhs,
                    }),
                });
            }
            u /= g;
        }
    }
    Ok(RadicalReport {
        poly: f.clone(),
        n_limit,
        checked: n_limit + 1,
        violation: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::cyclotomic;
    use crate::poly::eval_at_u64;

    fn ip(coeffs: &[i64]) -> IntPoly {
        IntPoly::from_i64_coeffs(coeffs)
    }

    /// Reference implementation that materializes f(p^p) in full.
    fn naive_check(f: &IntPoly, p: u64) -> bool {
        let a = eval_at_u64(f, p);
        let big = BigInt::from(p).pow(u32::try_from(p).unwrap());
        let b = f.eval(&big);
        if a.is_zero() {
            return b.is_zero();
        }
        (b % a).is_zero()
    }

    #[test]
    fn worked_divisibility_examples() {
        // f(2) = 21 divides f(4) = 315.
        let f = ip(&[-1, -1, 0, 1, 1]);
        assert_eq!(check_at_prime(&f, 2), Ok(true));
        // f(3) = 13 does not divide f(27) = 757 = 58 * 13 + 3.
        let g = ip(&[1, 1, 1]);
        assert_eq!(check_at_prime(&g, 3), Ok(false));
        // x + 2: f(3) = 5 does not divide f(27) = 29.
        assert_eq!(check_at_prime(&ip(&[2, 1]), 3), Ok(false));
        // x^m - 1 passes at any prime.
        for m in [1usize, 2, 5, 8] {
            let f = crate::poly::x_pow_minus_one(m);
            for p in [2u64, 3, 5, 13] {
                assert_eq!(check_at_prime(&f, p), Ok(true), "m={m} p={p}");
            }
        }
    }

    #[test]
    fn zero_value_convention() {
        // (x - 2)(x + 1): f(2) = 0 but f(4) = 10, and 0 divides only 0.
        assert_eq!(check_at_prime(&ip(&[-2, -1, 1]), 2), Ok(false));
        // (x - 2)(x - 4): both f(2) and f(4) vanish.
        assert_eq!(check_at_prime(&ip(&[8, -6, 1]), 2), Ok(true));
        // (x - 3)(x + 1): f(3) = 0, f(27) = 672 - far out of root range,
        // rejected by the bit-length cutoff without big arithmetic.
        assert_eq!(check_at_prime(&ip(&[-3, -2, 1]), 3), Ok(false));
    }

    #[test]
    fn check_preconditions() {
        assert_eq!(check_at_prime(&ip(&[1, 2]), 3), Err(Error::NotMonic));
        assert_eq!(check_at_prime(&ip(&[1, 1]), 4), Err(Error::NotPrime(4)));
        assert_eq!(
            check_at_prime(&IntPoly::zero(), 3),
            Err(Error::ZeroPolynomial)
        );
    }

    #[test]
    fn agrees_with_the_materializing_oracle() {
        let samples = [
            ip(&[-1, -1, 0, 1, 1]),
            ip(&[1, 1, 1]),
            ip(&[2, 1]),
            ip(&[-2, 0, 1]),
            ip(&[1, 0, 1]),
            ip(&[-6, 2, -3, 1]),
            ip(&[0, 0, 1]),
            ip(&[5, -1, 0, 0, 1]),
        ];
        for f in &samples {
            for p in primes_up_to(31) {
                assert_eq!(
                    check_at_prime(f, p).unwrap(),
                    naive_check(f, p),
                    "f = {f}, p = {p}"
                );
            }
        }
    }

    #[test]
    fn scan_brackets_the_threshold() {
        let report = scan(&ip(&[1, 1, 1]), 2, 1000).unwrap();
        assert_eq!(report.failures, vec![3]);
        assert_eq!(report.candidate_n, 5);
        assert_eq!(report.theory_n, Some(4));
        assert!(report.consistent);
        assert!(!report.empirical);
        // 168 primes up to 1000, one failure.
        assert_eq!(report.passes, 167);
    }

    #[test]
    fn scan_on_non_family_input_is_empirical() {
        let report = scan(&ip(&[2, 1]), 2, 100).unwrap();
        assert!(report.failures.contains(&3));
        assert_eq!(report.theory_n, None);
        assert!(report.empirical);
        assert!(report.consistent);
    }

    #[test]
    fn scan_of_pure_powers_is_clean() {
        let report = scan(&IntPoly::x_pow(7), 2, 500).unwrap();
        assert!(report.failures.is_empty());
        assert_eq!(report.candidate_n, 2);
        assert_eq!(report.theory_n, Some(2));
    }

    #[test]
    fn scan_rejects_bad_ranges() {
        let f = ip(&[1, 1]);
        assert_eq!(scan(&f, 1, 10), Err(Error::BadPrimeRange(1, 10)));
        assert_eq!(scan(&f, 10, 9), Err(Error::BadPrimeRange(10, 9)));
    }

    #[test]
    fn scan_is_reproducible() {
        let f = ip(&[-1, -1, 0, 1, 1]);
        assert_eq!(scan(&f, 2, 500).unwrap(), scan(&f, 2, 500).unwrap());
    }

    #[test]
    fn failing_prime_fixtures() {
        // x + 2 already fails at 2: f(2) = 4 does not divide f(4) = 6.
        assert_eq!(find_failing_prime(&ip(&[2, 1]), 100).unwrap(), Some(2));
        assert_eq!(find_failing_prime(&ip(&[-2, 0, 1]), 100).unwrap(), Some(3));
        // In-family input: clean sweep.
        assert_eq!(
            find_failing_prime(&ip(&[-1, -1, 0, 1, 1]), 1000).unwrap(),
            None
        );
    }

    #[test]
    fn necessity_check() {
        let r = n2_necessary_check(&ip(&[-1, -1, 0, 1, 1])).unwrap();
        assert!(r.consistent && !r.pure_power_of_x);
        assert!(r.value_at_one.is_zero());
        let r = n2_necessary_check(&IntPoly::x_pow(7)).unwrap();
        assert!(r.consistent && r.pure_power_of_x);
        let r = n2_necessary_check(&ip(&[1, 0, 1])).unwrap();
        assert!(!r.consistent);
        assert_eq!(r.value_at_one, BigInt::from(2));
        // ... and such an f indeed fails at a small prime.
        assert!(find_failing_prime(&ip(&[1, 0, 1]), 100).unwrap().is_some());
    }

    #[test]
    fn family_construction() {
        let c = n2_sufficient_family(&[]).unwrap();
        assert_eq!(c.factors(), &[(1, 1)]);
        let c = n2_sufficient_family(&[3, 2]).unwrap();
        assert_eq!(c.factors(), &[(1, 1), (2, 1), (3, 1)]);
        assert_eq!(c.expand().unwrap(), ip(&[-1, -1, 0, 1, 1]));
        assert_eq!(
            n2_sufficient_family(&[2, 2]).unwrap_err(),
            Error::DuplicatePrime(2)
        );
        assert_eq!(
            n2_sufficient_family(&[4]).unwrap_err(),
            Error::FamilyPrimeRequired(4)
        );
    }

    #[test]
    fn family_scan_is_clean_from_two() {
        let c = n2_sufficient_family(&[3, 5]).unwrap();
        let f = c.expand().unwrap();
        let report = scan(&f, 2, 500).unwrap();
        assert!(report.failures.is_empty(), "failures: {:?}", report.failures);
    }

    #[test]
    fn structural_obstructions_name_their_witness() {
        // {2}: peeling demands 1.
        let c = CycloFactorization::new(0, vec![(2, 1)]).unwrap();
        let v = n2_structural_obstruction(&c).unwrap();
        assert_eq!(v.status, N2Status::Obstructed);
        assert_eq!(
            v.witness,
            Some(N2Witness::MissingDivisor {
                d: 2,
                p: 2,
                required: 1
            })
        );
        // {1, 6}: the non-exceptional route demands 6/3 = 2.
        let c = CycloFactorization::new(0, vec![(1, 1), (6, 1)]).unwrap();
        let v = n2_structural_obstruction(&c).unwrap();
        assert_eq!(
            v.witness,
            Some(N2Witness::MissingDivisor {
                d: 6,
                p: 3,
                required: 2
            })
        );
        // {6} alone: no power of 3 to answer the index-6 value at 2.
        let c = CycloFactorization::new(0, vec![(6, 1)]).unwrap();
        let v = n2_structural_obstruction(&c).unwrap();
        assert_eq!(v.status, N2Status::Obstructed);
        assert_eq!(
            v.witness,
            Some(N2Witness::MissingPowerOfThree { d: 6, p: 2 })
        );
        // {1, 2, 3}: peels cleanly into the certified shape.
        let c = CycloFactorization::new(0, vec![(1, 1), (2, 1), (3, 1)]).unwrap();
        let v = n2_structural_obstruction(&c).unwrap();
        assert_eq!(v.status, N2Status::SufficientFamily);
        // {1, 3, 9}: peels cleanly, shape not certified.
        let c = CycloFactorization::new(0, vec![(1, 1), (3, 1), (9, 1)]).unwrap();
        let v = n2_structural_obstruction(&c).unwrap();
        assert_eq!(v.status, N2Status::EmpiricallyConsistentUnknown);
        // All-trivial certificates are rejected.
        let c = CycloFactorization::new(2, vec![(1, 3)]).unwrap();
        assert_eq!(
            n2_structural_obstruction(&c).unwrap_err(),
            Error::NoNontrivialFactor
        );
    }

    #[test]
    fn structural_witnesses_fail_empirically() {
        let sets: [&[(u64, u32)]; 6] = [
            &[(2, 1)],
            &[(3, 1)],
            &[(2, 1), (4, 1)],
            &[(6, 1)],
            &[(1, 1), (6, 1)],
            &[(5, 1), (25, 1)],
        ];
        for factors in sets {
            let c = CycloFactorization::new(0, factors.to_vec()).unwrap();
            let v = n2_structural_obstruction(&c).unwrap();
            if let Some(w) = &v.witness {
                let p = w.failing_at();
                let f = c.expand().unwrap();
                assert_eq!(
                    check_at_prime(&f, p),
                    Ok(false),
                    "witness {w:?} did not fail for {f}"
                );
            }
        }
    }

    #[test]
    fn n2_analysis_end_to_end() {
        // Certified family.
        let v = n2_analyze(&ip(&[-1, -1, 0, 1, 1]), 1000).unwrap();
        assert_eq!(v.status, N2Status::SufficientFamily);
        // Pure power of x.
        let v = n2_analyze(&IntPoly::x_pow(4), 1000).unwrap();
        assert_eq!(v.status, N2Status::SufficientFamily);
        // Non-family with f(1) != 0.
        let v = n2_analyze(&ip(&[-2, 0, 1]), 1000).unwrap();
        assert_eq!(v.status, N2Status::NecessaryViolated);
        assert_eq!(v.witness, Some(N2Witness::FailingPrime { p: 3 }));
        // Non-family with f(1) = 0: (x - 1)(x^2 - 2).
        let f = &cyclotomic(1).unwrap() * &ip(&[-2, 0, 1]);
        let v = n2_analyze(&f, 1000).unwrap();
        assert_eq!(v.status, N2Status::Obstructed);
        assert_eq!(v.witness, Some(N2Witness::FailingPrime { p: 3 }));
        // In-family, cleanly peeling, exponent cap breached:
        // (x - 1)(x + 1)^5 fails at 2 (f(2) = 243, f(4) = 3 * 5^5).
        let f = &cyclotomic(1).unwrap() * &cyclotomic(2).unwrap().pow(5);
        let v = n2_analyze(&f, 1000).unwrap();
        assert_eq!(v.status, N2Status::Obstructed);
        assert_eq!(v.witness, Some(N2Witness::FailingPrime { p: 2 }));
        // ... while the mirrored exponents are certified.
        let f = &cyclotomic(1).unwrap().pow(5) * &cyclotomic(2).unwrap();
        let v = n2_analyze(&f, 1000).unwrap();
        assert_eq!(v.status, N2Status::SufficientFamily);
        // x^9 - 1 = {1, 3, 9}: holds at every prime but outside the
        // certified shape, and no counterexample exists to find.
        let v = n2_analyze(&crate::poly::x_pow_minus_one(9), 1000).unwrap();
        assert_eq!(v.status, N2Status::EmpiricallyConsistentUnknown);
        assert_eq!(v.witness, None);
    }

    #[test]
    fn radical_condition_examples() {
        // x + 1 breaks at n = 2: rad(3) = 3 does not divide f(4) = 5.
        let report = radical_property_check(&ip(&[1, 1]), 10).unwrap();
        let v = report.violation.expect("violation at n = 2");
        assert_eq!(v.n, 2);
        assert_eq!(v.value, BigUint::from(3u32));
        assert_eq!(v.radical, Some(BigUint::from(3u32)));
        assert_eq!(v.blocking_part, BigUint::from(3u32));
        assert_eq!(v.rhs, BigUint::from(5u32));
        // Monomials pass.
        for f in [ip(&[0, 0, 3]), ip(&[0, 2]), ip(&[0, 0, 0, 1]), ip(&[7])] {
            let report = radical_property_check(&f, 300).unwrap();
            assert!(report.violation.is_none(), "f = {f}");
            assert_eq!(report.checked, 301);
        }
        // x^2 + x = x(x + 1) breaks at n = 2 as well: rad(6) = 6 with
        // f(4) = 20.
        let report = radical_property_check(&ip(&[0, 1, 1]), 10).unwrap();
        assert_eq!(report.violation.unwrap().n, 2);
        // Negative coefficients are outside the statement.
        assert_eq!(
            radical_property_check(&ip(&[-1, 1]), 10).unwrap_err(),
            Error::NegativeCoefficient
        );
    }
}
