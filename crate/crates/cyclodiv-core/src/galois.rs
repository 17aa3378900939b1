//! Splitting statistics over prime ranges: the density of completely-split
//! primes, multiplicative orders of roots at split primes, and a
//! root-implication divisibility probe that turns a single large split
//! prime into an exact divisibility verdict.

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::error::Error;
use crate::modpoly::{modp_divides, roots_mod_seeded, splits_completely};
use crate::numtheory::{multiplicative_order, next_prime_after, primes_up_to};
use crate::poly::IntPoly;
use crate::DEFAULT_SEED;

/// How often a squarefree monic polynomial splits into distinct linear
/// factors modulo the primes up to a limit.  The long-run fraction tracks
/// `1 / |G|` for the Galois group `G` of the splitting field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitDensityReport {
    pub poly: IntPoly,
    pub prime_limit: u64,
    pub primes_tested: u64,
    pub split_count: u64,
}

impl SplitDensityReport {
    /// `split_count / primes_tested` in lowest terms; `(0, 1)` when the
    /// range held no primes.
    pub fn density_rational(&self) -> (u64, u64) {
        if self.primes_tested == 0 {
            return (0, 1);
        }
        let g = gcd_u64(self.split_count, self.primes_tested);
        if g == 0 {
            return (0, 1);
        }
        (self.split_count / g, self.primes_tested / g)
    }

    pub fn density(&self) -> f64 {
        if self.primes_tested == 0 {
            return 0.0;
        }
        self.split_count as f64 / self.primes_tested as f64
    }
}

fn gcd_u64(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd_u64(b, a % b)
    }
}

/// Counts the primes `q <= prime_limit` where `f` splits completely.
/// Requires monic squarefree input; constants split vacuously everywhere.
pub fn split_density(f: &IntPoly, prime_limit: u64) -> Result<SplitDensityReport, Error> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    if !f.is_squarefree()? {
        return Err(Error::NotSquarefree);
    }
    let primes = primes_up_to(prime_limit);
    let mut split_count = 0u64;
    for &q in &primes {
        if splits_completely(f, q)? {
            split_count += 1;
        }
    }
    Ok(SplitDensityReport {
        poly: f.clone(),
        prime_limit,
        primes_tested: primes.len() as u64,
        split_count,
    })
}

/// The multiplicative orders of the roots of `f` at one split prime,
/// in ascending-root order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderRecord {
    pub q: u64,
    pub orders: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderProfile {
    pub poly: IntPoly,
    pub prime_limit: u64,
    /// One record per completely-split prime with good reduction.
    pub records: Vec<OrderRecord>,
    pub max_order_seen: u64,
}

/// [`root_order_profile_seeded`] with the crate default seed.
pub fn root_order_profile(f: &IntPoly, prime_limit: u64) -> Result<OrderProfile, Error> {
    root_order_profile_seeded(f, prime_limit, DEFAULT_SEED)
}

/// For each prime `q <= prime_limit` where monic squarefree `f` splits
/// completely, the multiplicative orders mod `q` of all its roots.  Primes
/// dividing `f(0)` are excluded — there the residue 0 would appear as a
/// root, and 0 has no multiplicative order — which is why `f(0) = 0` is
/// rejected outright.  The seed steers only the internal root search; the
/// profile itself is seed-independent.
pub fn root_order_profile_seeded(
    f: &IntPoly,
    prime_limit: u64,
    seed: u64,
) -> Result<OrderProfile, Error> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    if !f.is_squarefree()? {
        return Err(Error::NotSquarefree);
    }
    if f.constant_term().is_zero() {
        return Err(Error::ConstantTermZero);
    }
    let bad = f.constant_term().magnitude().clone();
    let mut records = Vec::new();
    let mut max_order_seen = 0u64;
    for q in primes_up_to(prime_limit) {
        if (&bad % q).is_zero() {
            continue;
        }
        if !splits_completely(f, q)? {
            continue;
        }
        let roots = roots_mod_seeded(f, q, seed)?;
        let orders = roots
            .iter()
            .map(|&r| multiplicative_order(r, q))
            .collect::<Result<Vec<u64>, Error>>()?;
        if let Some(&m) = orders.iter().max() {
            max_order_seen = max_order_seen.max(m);
        }
        records.push(OrderRecord { q, orders });
    }
    Ok(OrderProfile {
        poly: f.clone(),
        prime_limit,
        records,
        max_order_seen,
    })
}

/// One test of "every root of `h` is a root of `g` mod `q`" at a split
/// prime `q` of `h`.  Probative only when `q` exceeds the remainder's
/// coefficient bound — then the outcome settles exact divisibility.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ImplicationProbe {
    pub q: u64,
    pub held: bool,
    pub probative: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootImplicationReport {
    pub g: IntPoly,
    pub h: IntPoly,
    /// `g mod h` over the integers (`h` monic makes this exact).
    pub remainder: IntPoly,
    /// Largest absolute coefficient of the remainder.
    pub remainder_bound: BigUint,
    /// Whether `h | g` exactly, by direct division.
    pub divides: bool,
    /// Illustrative probes at split primes at or below the bound: they can
    /// hold without divisibility (nothing stops a coefficient from being a
    /// multiple of a small `q`).  Capped at 8.
    pub probes: Vec<ImplicationProbe>,
    /// First split prime past the bound within budget, if any.
    pub qualifying: Option<ImplicationProbe>,
    /// True when a qualifying probe existed in budget.
    pub conclusive: bool,
    /// The qualifying probe's verdict must match `divides`; vacuously true
    /// without one.  False is an arithmetic invariant breach.
    pub consistent: bool,
}

/// Does every root of `h` force a root of `g`?  Exactly: does `h` divide
/// `g` over the integers?  The direct answer comes from division; the
/// probes demonstrate how a single completely-split prime larger than the
/// remainder's coefficients answers the same question, because mod such a
/// prime `h` is a product of distinct linears and a nonzero remainder
/// cannot vanish.
pub fn root_implication_divides(
    g: &IntPoly,
    h: &IntPoly,
    prime_budget: u64,
) -> Result<RootImplicationReport, Error> {
    if g.is_zero() || h.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !g.is_monic() || !h.is_monic() {
        return Err(Error::NotMonic);
    }
    if !h.is_squarefree()? {
        return Err(Error::NotSquarefree);
    }
    let (_, remainder) = g.divrem_monic(h)?;
    let divides = remainder.is_zero();
    let remainder_bound = remainder.max_abs_coeff();

    let probe_cap = remainder_bound.to_u64().map_or(1000, |b| b.min(1000));
    let mut probes = Vec::new();
    for q in primes_up_to(probe_cap) {
        if probes.len() == 8 {
            break;
        }
        if splits_completely(h, q)? {
            probes.push(ImplicationProbe {
                q,
                held: modp_divides(h, g, q)?,
                probative: false,
            });
        }
    }

    let mut qualifying = None;
    if let Some(start) = remainder_bound.to_u64() {
        let mut q = next_prime_after(start);
        while q <= prime_budget {
            if splits_completely(h, q)? {
                qualifying = Some(ImplicationProbe {
                    q,
                    held: modp_divides(h, g, q)?,
                    probative: true,
                });
                break;
            }
            q = next_prime_after(q);
        }
    }

    let conclusive = qualifying.is_some();
    let consistent = qualifying.is_none_or(|pr| pr.held == divides);
    Ok(RootImplicationReport {
        g: g.clone(),
        h: h.clone(),
        remainder,
        remainder_bound,
        divides,
        probes,
        qualifying,
        conclusive,
        consistent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::cyclotomic;

    fn ip(coeffs: &[i64]) -> IntPoly {
        IntPoly::from_i64_coeffs(coeffs)
    }

    #[test]
    fn quadratic_split_density() {
        // x^2 + 1 splits at q = 1 mod 4: up to 100 that is
        // {5, 13, 17, 29, 37, 41, 53, 61, 73, 89, 97}.
        let r = split_density(&ip(&[1, 0, 1]), 100).unwrap();
        assert_eq!(r.primes_tested, 25);
        assert_eq!(r.split_count, 11);
    }

    #[test]
    fn fifth_cyclotomic_split_density() {
        // Phi_5 splits at q = 1 mod 5: up to 100, {11, 31, 41, 61, 71}.
        let f = cyclotomic(5).unwrap();
        let r = split_density(&f, 100).unwrap();
        assert_eq!(r.primes_tested, 25);
        assert_eq!(r.split_count, 5);
        assert_eq!(r.density_rational(), (1, 5));
    }

    #[test]
    fn biquadratic_split_density() {
        // (x^2 - 2)(x^2 - 3) splits iff both 2 and 3 are squares,
        // i.e. q = +-1 mod 24: up to 100, {23, 47, 71, 73, 97}.
        let f = &ip(&[-2, 0, 1]) * &ip(&[-3, 0, 1]);
        let r = split_density(&f, 100).unwrap();
        assert_eq!(r.split_count, 5);
    }

    #[test]
    fn constants_split_vacuously() {
        let r = split_density(&IntPoly::one(), 50).unwrap();
        assert_eq!(r.split_count, r.primes_tested);
        assert_eq!(r.density_rational(), (1, 1));
    }

    #[test]
    fn density_preconditions() {
        assert_eq!(
            split_density(&ip(&[1, 2]), 10).unwrap_err(),
            Error::NotMonic
        );
        // (x - 1)^2 is not squarefree.
        assert_eq!(
            split_density(&ip(&[1, -2, 1]), 10).unwrap_err(),
            Error::NotSquarefree
        );
    }

    #[test]
    fn cyclotomic_root_orders_are_the_index() {
        // Roots of Phi_5 mod a split prime are the primitive 5th roots of
        // unity, so every order is exactly 5.
        let f = cyclotomic(5).unwrap();
        let profile = root_order_profile(&f, 200).unwrap();
        assert!(!profile.records.is_empty());
        for rec in &profile.records {
            assert_eq!(rec.q % 5, 1);
            assert_eq!(rec.orders.len(), 4);
            assert!(rec.orders.iter().all(|&o| o == 5), "at q = {}", rec.q);
        }
        assert_eq!(profile.max_order_seen, 5);
    }

    #[test]
    fn sqrt_two_orders_grow() {
        let f = ip(&[-2, 0, 1]);
        let profile = root_order_profile(&f, 100).unwrap();
        // First split prime is 7 (2 = 3^2 mod 7): roots {3, 4} with
        // orders ord(3) = 6 and ord(4) = 3.
        let first = &profile.records[0];
        assert_eq!(first.q, 7);
        assert_eq!(first.orders, vec![6, 3]);
        // Bad-reduction prime 2 never appears; orders are unbounded in the
        // large, so the max over a range beats the first record's.
        assert!(profile.records.iter().all(|r| r.q % 2 == 1));
        assert!(profile.max_order_seen >= 6);
        let wider = root_order_profile(&f, 1000).unwrap();
        assert!(wider.max_order_seen > profile.max_order_seen);
    }

    #[test]
    fn order_profile_rejects_zero_constant_term() {
        assert_eq!(
            root_order_profile(&ip(&[0, 1, 1]), 50).unwrap_err(),
            Error::ConstantTermZero
        );
    }

    #[test]
    fn seed_does_not_change_the_profile() {
        let f = ip(&[-3, 0, 1]);
        let a = root_order_profile_seeded(&f, 400, 1).unwrap();
        let b = root_order_profile_seeded(&f, 400, 99).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn implication_detects_divisibility() {
        // x^2 + 1 divides x^4 - 1.
        let r = root_implication_divides(&ip(&[-1, 0, 0, 0, 1]), &ip(&[1, 0, 1]), 10_000).unwrap();
        assert!(r.divides);
        assert!(r.remainder.is_zero());
        assert!(r.probes.is_empty());
        let q = r.qualifying.expect("conclusive");
        assert_eq!(q.q, 5);
        assert!(q.held && r.conclusive && r.consistent);
    }

    #[test]
    fn implication_detects_nondivisibility() {
        // x^3 - 1 mod (x^2 + 1) = -x - 1: bound 1, first split prime past
        // it is 5, where the implication visibly fails.
        let r = root_implication_divides(&ip(&[-1, 0, 0, 1]), &ip(&[1, 0, 1]), 10_000).unwrap();
        assert!(!r.divides);
        assert_eq!(r.remainder, ip(&[-1, -1]));
        assert_eq!(r.remainder_bound, BigUint::from(1u32));
        let q = r.qualifying.expect("conclusive");
        assert_eq!(q.q, 5);
        assert!(!q.held && r.consistent);
    }

    #[test]
    fn small_primes_can_mislead() {
        // g = x^4 + 5x + 4 mod (x^2 + 1) leaves 5x + 5: at the split prime
        // 5 the implication holds spuriously, but 5 is not past the bound.
        let g = ip(&[4, 5, 0, 0, 1]);
        let h = ip(&[1, 0, 1]);
        let r = root_implication_divides(&g, &h, 10_000).unwrap();
        assert!(!r.divides);
        assert_eq!(r.remainder, ip(&[5, 5]));
        let misleading = r
            .probes
            .iter()
            .find(|pr| pr.q == 5)
            .expect("5 is a split prime below the bound");
        assert!(misleading.held && !misleading.probative);
        // The qualifying probe (q = 13) tells the truth.
        let q = r.qualifying.expect("conclusive");
        assert_eq!(q.q, 13);
        assert!(!q.held && r.consistent);
    }

    #[test]
    fn budget_exhaustion_is_inconclusive() {
        // x^3 - 1 mod (x^2 + 3) = -3x - 1, bound 3; x^2 + 3 splits only at
        // q = 1 mod 3, first 7, past the budget of 5: nothing qualifies.
        let r = root_implication_divides(&ip(&[-1, 0, 0, 1]), &ip(&[3, 0, 1]), 5).unwrap();
        assert!(!r.conclusive);
        assert!(r.qualifying.is_none());
        assert!(r.consistent);
    }
}
