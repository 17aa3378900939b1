//! Primality, factorization, multiplicative orders, and the small arithmetic
//! functions (phi, mu, divisor lists) the rest of the crate leans on.
//!
//! Primality below 2^64 is decided by Miller-Rabin with a fixed witness set
//! that is known to be deterministic for the whole range; above 2^64 a strong
//! probable-prime combination (base-2 Miller-Rabin plus a strong Lucas test
//! with Selfridge parameters) is used, which has no known counterexample.
//! Factorization is trial division up to a caller-chosen bound followed by
//! Pollard rho with Brent cycle detection; composites past a size cutoff are
//! returned as an explicit unfactored cofactor instead of stalling.

use num_bigint::{BigInt, BigUint};
use num_integer::{Integer, Roots};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;
use crate::DEFAULT_SEED;

/// Witnesses that make Miller-Rabin deterministic for every n < 2^64.
const MR_WITNESSES_U64: [u64; 7] = [2, 325, 9375, 28178, 450775, 9780504, 1795265022];

const SMALL_PRIMES: [u64; 25] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
];

/// Knobs for [`factor`]: how far to trial divide, how large a composite rho
/// may attack, how many rho iterations to spend, and the seed steering the
/// rho walks.  The defaults fit interactive, single-machine use.
#[derive(Debug, Clone)]
pub struct FactorBudget {
    pub trial_bound: u64,
    pub rho_cutoff: BigUint,
    pub rho_iters: u64,
    pub seed: u64,
}

impl Default for FactorBudget {
    fn default() -> Self {
        FactorBudget {
            trial_bound: 100_000,
            rho_cutoff: BigUint::from(10u32).pow(24),
            rho_iters: 8_000_000,
            seed: DEFAULT_SEED,
        }
    }
}

impl FactorBudget {
    pub fn with_seed(seed: u64) -> Self {
        FactorBudget {
            seed,
            ..FactorBudget::default()
        }
    }
}

/// A (possibly partial) factorization: prime powers sorted by prime, plus an
/// optional composite cofactor when the budget ran out.  The invariant
/// `value() == product of primes^exponents * cofactor` always holds, and the
/// cofactor never has a prime factor at or below the trial bound it was
/// produced with.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorMap {
    factors: Vec<(BigUint, u32)>,
    cofactor: Option<BigUint>,
}

impl FactorMap {
    pub fn factors(&self) -> &[(BigUint, u32)] {
        &self.factors
    }

    pub fn cofactor(&self) -> Option<&BigUint> {
        self.cofactor.as_ref()
    }

    pub fn is_complete(&self) -> bool {
        self.cofactor.is_none()
    }

    /// Reassembles the factored integer.
    pub fn value(&self) -> BigUint {
        let mut v = BigUint::one();
        for (p, e) in &self.factors {
            v *= p.pow(*e);
        }
        if let Some(c) = &self.cofactor {
            v *= c;
        }
        v
    }

    /// Product of the distinct known primes; `None` when the factorization is
    /// partial (the radical of the hidden part is unknown).
    pub fn radical(&self) -> Option<BigUint> {
        if !self.is_complete() {
            return None;
        }
        Some(
            self.factors
                .iter()
                .fold(BigUint::one(), |acc, (p, _)| acc * p),
        )
    }

    pub fn smallest_prime(&self) -> Option<&BigUint> {
        self.factors.first().map(|(p, _)| p)
    }
}

/// Sieve of Eratosthenes: all primes `<= limit`, ascending.
pub fn primes_up_to(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            primes.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    primes
}

pub(crate) fn mulmod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn powmod_u64(mut b: u64, mut e: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod_u64(acc, b, m);
        }
        b = mulmod_u64(b, b, m);
        e >>= 1;
    }
    acc
}

/// Deterministic primality for the full `u64` range.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &SMALL_PRIMES {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &MR_WITNESSES_U64 {
        let a = a % n;
        if a == 0 {
            continue;
        }
        let mut x = powmod_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod_u64(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Smallest prime strictly greater than `n`.
pub fn next_prime_after(n: u64) -> u64 {
    let mut k = n + 1;
    if k <= 2 {
        return 2;
    }
    if k.is_multiple_of(2) {
        k += 1;
    }
    while !is_prime_u64(k) {
        k += 2;
    }
    k
}

fn mr_round_big(n: &BigUint, base: &BigUint, d: &BigUint, s: u64) -> bool {
    let n1 = n - 1u32;
    let mut x = base.modpow(d, n);
    if x.is_one() || x == n1 {
        return true;
    }
    for _ in 1..s {
        x = (&x * &x) % n;
        if x == n1 {
            return true;
        }
    }
    false
}

fn jacobi(a: &BigInt, n: &BigUint) -> i32 {
    // n odd positive
    let mut a = a.mod_floor(&BigInt::from(n.clone())).magnitude().clone();
    let mut n = n.clone();
    let mut t = 1i32;
    while !a.is_zero() {
        while a.is_even() {
            a >>= 1;
            let r = (&n % 8u32).to_u32().unwrap();
            if r == 3 || r == 5 {
                t = -t;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if (&a % 4u32).to_u32().unwrap() == 3 && (&n % 4u32).to_u32().unwrap() == 3 {
            t = -t;
        }
        a %= &n;
    }
    if n.is_one() {
        t
    } else {
        0
    }
}

/// Strong Lucas probable-prime test with Selfridge's parameter choice.
/// `n` must be odd, >= 3, and not a perfect square.
fn strong_lucas_prp(n: &BigUint) -> bool {
    // First D in 5, -7, 9, -11, ... with Jacobi(D, n) = -1.
    let mut d_abs = 5i64;
    let mut sign = 1i64;
    let d = loop {
        let d = BigInt::from(d_abs * sign);
        match jacobi(&d, n) {
            -1 => break d,
            0 => {
                // Shares a factor with n; prime only if the factor is n itself.
                return BigInt::from(n.clone()) == d.abs();
            }
            _ => {
                sign = -sign;
                d_abs += 2;
            }
        }
    };
    // P = 1, Q = (1 - D) / 4
    let ni = BigInt::from(n.clone());
    let q = (BigInt::one() - &d) / BigInt::from(4);
    let inv2 = BigInt::from((n + 1u32) >> 1); // inverse of 2 mod odd n
    let np1 = n + 1u32;
    let s = np1.trailing_zeros().expect("n + 1 is even");
    let dd: BigUint = &np1 >> s;

    let red = |x: BigInt| -> BigInt { x.mod_floor(&ni) };
    // Binary ladder for U_dd, V_dd, Q^dd over the bits of dd, MSB first.
    let mut u = BigInt::zero();
    let mut v = BigInt::from(2);
    let mut qk = BigInt::one();
    let bits = dd.bits();
    for i in (0..bits).rev() {
        // double: (U, V, Q^k) -> (U*V, V^2 - 2Q^k, Q^2k)
        u = red(&u * &v);
        v = red(&v * &v - 2 * &qk);
        qk = red(&qk * &qk);
        if dd.bit(i) {
            // increment: U' = (U + V)/2, V' = (D*U + V)/2, Q^k *= Q
            let u1 = red(red(&u + &v) * &inv2);
            let v1 = red(red(&d * &u + &v) * &inv2);
            u = u1;
            v = v1;
            qk = red(&qk * &q);
        }
    }
    if u.is_zero() || v.is_zero() {
        return true;
    }
    for _ in 1..s {
        v = red(&v * &v - 2 * &qk);
        if v.is_zero() {
            return true;
        }
        qk = red(&qk * &qk);
    }
    false
}

/// Primality for arbitrary-size integers: deterministic below 2^64, a strong
/// probable-prime combination (no known counterexample) above.
pub fn is_prime(n: &BigUint) -> bool {
    if let Some(n64) = n.to_u64() {
        return is_prime_u64(n64);
    }
    for &p in &SMALL_PRIMES {
        if (n % p).is_zero() {
            return false;
        }
    }
    let s = (n - 1u32).trailing_zeros().expect("n - 1 is even");
    let d: BigUint = (n - 1u32) >> s;
    if !mr_round_big(n, &BigUint::from(2u32), &d, s) {
        return false;
    }
    let r = n.sqrt();
    if &r * &r == *n {
        return false;
    }
    strong_lucas_prp(n)
}

/// SplitMix64 step; the crate's one source of pseudo-randomness.
pub(crate) fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn rho_u64(n: u64, seed: &mut u64) -> u64 {
    // Brent's cycle-finding variant; n must be odd, composite, > 1.
    loop {
        let c = splitmix64(seed) % (n - 1) + 1;
        let mut y = splitmix64(seed) % n;
        let m = 128u64;
        let (mut r, mut q, mut g) = (1u64, 1u64, 1u64);
        let (mut x, mut ys) = (0u64, 0u64);
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = mulmod_u64(y, y, n).wrapping_add(c) % n;
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..m.min(r - k) {
                    y = (mulmod_u64(y, y, n) + c) % n;
                    q = mulmod_u64(q, x.abs_diff(y), n);
                }
                g = q.gcd(&n);
                k += m;
            }
            r *= 2;
        }
        if g == n {
            g = 1;
            while g == 1 {
                ys = (mulmod_u64(ys, ys, n) + c) % n;
                g = x.abs_diff(ys).gcd(&n);
            }
        }
        if g != n {
            return g;
        }
    }
}

/// Complete factorization of a machine-word integer; panics on `n = 0`.
pub fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    assert!(n > 0, "factor_u64(0) is undefined");
    let mut out: Vec<(u64, u32)> = Vec::new();
    for p in [2u64, 3, 5] {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
    }
    let mut d = 7u64;
    let wheel = [4u64, 2, 4, 2, 4, 6, 2, 6];
    let mut w = 0;
    while d <= 4096 && d * d <= n {
        let mut e = 0;
        while n.is_multiple_of(d) {
            n /= d;
            e += 1;
        }
        if e > 0 {
            out.push((d, e));
        }
        d += wheel[w];
        w = (w + 1) % wheel.len();
    }
    let mut seed = DEFAULT_SEED ^ n;
    let mut stack = Vec::new();
    if n > 1 {
        stack.push(n);
    }
    while let Some(m) = stack.pop() {
        if is_prime_u64(m) {
            match out.iter_mut().find(|(p, _)| *p == m) {
                Some((_, e)) => *e += 1,
                None => out.push((m, 1)),
            }
            continue;
        }
        let g = rho_u64(m, &mut seed);
        stack.push(g);
        stack.push(m / g);
    }
    out.sort_unstable_by_key(|&(p, _)| p);
    out
}

fn rho_big(n: &BigUint, seed: &mut u64, max_iters: u64) -> Option<BigUint> {
    // Brent with product batching; returns a nontrivial factor if one surfaces
    // within the iteration budget.
    let one = BigUint::one();
    for _ in 0..12 {
        let c = BigUint::from(splitmix64(seed) % 1_000_003 + 1);
        let mut y = BigUint::from(splitmix64(seed)) % n;
        let m = 128u64;
        let mut r = 1u64;
        let mut q = BigUint::one();
        let mut g = BigUint::one();
        let mut x = BigUint::zero();
        let mut ys = BigUint::zero();
        let mut spent = 0u64;
        while g.is_one() && spent < max_iters {
            x = y.clone();
            for _ in 0..r {
                y = (&y * &y + &c) % n;
            }
            spent += r;
            let mut k = 0;
            while k < r && g.is_one() {
                ys = y.clone();
                for _ in 0..m.min(r - k) {
                    y = (&y * &y + &c) % n;
                    let diff = if x >= y { &x - &y } else { &y - &x };
                    q = (&q * &diff) % n;
                    spent += 1;
                }
                g = q.gcd(n);
                k += m;
            }
            r *= 2;
        }
        if g == *n {
            g = one.clone();
            while g.is_one() {
                ys = (&ys * &ys + &c) % n;
                let diff = if x >= ys { &x - &ys } else { &ys - &x };
                g = diff.gcd(n);
            }
        }
        if !g.is_one() && g != *n {
            return Some(g);
        }
        if spent >= max_iters {
            return None;
        }
    }
    None
}

/// Trial division up to `budget.trial_bound`, then Pollard rho (Brent) on what
/// remains, as long as it stays at or below `budget.rho_cutoff`.  Anything the
/// budget cannot finish comes back as the unfactored cofactor rather than a
/// stall or a silent omission.  Panics on `n = 0`.
pub fn factor(n: &BigUint, budget: &FactorBudget) -> FactorMap {
    assert!(!n.is_zero(), "factor(0) is undefined");
    if let Some(n64) = n.to_u64() {
        // Machine-word inputs always factor completely.
        let factors = if n64 == 1 {
            Vec::new()
        } else {
            factor_u64(n64)
                .into_iter()
                .map(|(p, e)| (BigUint::from(p), e))
                .collect()
        };
        return FactorMap {
            factors,
            cofactor: None,
        };
    }

    let mut rest = n.clone();
    let mut factors: Vec<(BigUint, u32)> = Vec::new();
    let mut push = |p: BigUint, e: u32| match factors.iter_mut().find(|(q, _)| *q == p) {
        Some((_, ex)) => *ex += e,
        None => factors.push((p, e)),
    };

    for p in [2u64, 3, 5] {
        if p > budget.trial_bound {
            break;
        }
        let mut e = 0;
        while (&rest % p).is_zero() {
            rest /= p;
            e += 1;
        }
        if e > 0 {
            push(BigUint::from(p), e);
        }
    }
    let mut d = 7u64;
    let wheel = [4u64, 2, 4, 2, 4, 6, 2, 6];
    let mut w = 0;
    while d <= budget.trial_bound && !rest.is_one() {
        if let Some(r64) = rest.to_u64() {
            // Finish small remainders exactly.
            for (p, e) in factor_u64(r64) {
                push(BigUint::from(p), e);
            }
            rest = BigUint::one();
            break;
        }
        let mut e = 0;
        while (&rest % d).is_zero() {
            rest /= d;
            e += 1;
        }
        if e > 0 {
            push(BigUint::from(d), e);
        }
        d += wheel[w];
        w = (w + 1) % wheel.len();
    }

    let mut seed = budget.seed;
    let mut cofactor = BigUint::one();
    let mut stack = Vec::new();
    if !rest.is_one() {
        stack.push(rest);
    }
    while let Some(m) = stack.pop() {
        if let Some(m64) = m.to_u64() {
            for (p, e) in factor_u64(m64) {
                push(BigUint::from(p), e);
            }
            continue;
        }
        if is_prime(&m) {
            push(m, 1);
            continue;
        }
        if m > budget.rho_cutoff {
            cofactor *= m;
            continue;
        }
        match rho_big(&m, &mut seed, budget.rho_iters) {
            Some(g) => {
                stack.push(&m / &g);
                stack.push(g);
            }
            None => cofactor *= m,
        }
    }

    factors.sort_by(|a, b| a.0.cmp(&b.0));
    FactorMap {
        factors,
        cofactor: if cofactor.is_one() {
            None
        } else {
            Some(cofactor)
        },
    }
}

/// Least `k >= 1` with `r^k = 1 mod q`, for prime `q` and `r` nonzero mod `q`.
pub fn multiplicative_order(r: u64, q: u64) -> Result<u64, Error> {
    if !is_prime_u64(q) {
        return Err(Error::CompositeModulus(q));
    }
    let r = r % q;
    if r == 0 {
        return Err(Error::ZeroResidue(q));
    }
    let mut order = q - 1;
    for (p, e) in factor_u64(q - 1) {
        for _ in 0..e {
            if order.is_multiple_of(p) && powmod_u64(r, order / p, q) == 1 {
                order /= p;
            } else {
                break;
            }
        }
    }
    Ok(order)
}

/// Euler's totient; `n >= 1`.
pub fn euler_phi(n: u64) -> u64 {
    assert!(n > 0, "euler_phi(0) is undefined");
    factor_u64(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

/// Moebius function; `n >= 1`.
pub fn moebius(n: u64) -> i32 {
    assert!(n > 0, "moebius(0) is undefined");
    let fs = factor_u64(n);
    if fs.iter().any(|&(_, e)| e > 1) {
        return 0;
    }
    if fs.len().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// All divisors of `n >= 1`, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    assert!(n > 0, "divisors(0) is undefined");
    let mut out = vec![1u64];
    for (p, e) in factor_u64(n) {
        let snapshot = out.clone();
        let mut pk = 1u64;
        for _ in 0..e {
            pk *= p;
            out.extend(snapshot.iter().map(|d| d * pk));
        }
    }
    out.sort_unstable();
    out
}

/// Product of the distinct primes dividing `n`; `rad(0) = rad(1) = 1`.
pub fn radical_u64(n: u64) -> u64 {
    if n <= 1 {
        return 1;
    }
    factor_u64(n).into_iter().map(|(p, _)| p).product()
}

pub fn largest_prime_factor(n: u64) -> Option<u64> {
    if n <= 1 {
        return None;
    }
    factor_u64(n).last().map(|&(p, _)| p)
}

pub fn least_prime_factor(n: u64) -> Option<u64> {
    if n <= 1 {
        return None;
    }
    factor_u64(n).first().map(|&(p, _)| p)
}

/// Integer square root for `u64` (floor).
pub fn isqrt_u64(n: u64) -> u64 {
    n.sqrt()
}
