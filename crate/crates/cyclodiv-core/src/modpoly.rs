//! Polynomials over `F_p` for 64-bit prime moduli.
//!
//! Coefficient arithmetic widens to 128 bits, so any prime below 2^64 is a
//! valid modulus.  The modulus is checked for primality on construction;
//! mixing moduli is rejected.  Root finding is exhaustive for `q <= 100_000`
//! and switches to randomized splitting of the linear-factor part above that
//! threshold; either way the returned roots are sorted, so results do not
//! depend on the seed.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::error::Error;
use crate::numtheory::{is_prime_u64, mulmod_u64, powmod_u64, splitmix64};
use crate::poly::IntPoly;
use crate::DEFAULT_SEED;

/// Exhaustive root search is used up to this modulus; beyond it, randomized
/// splitting of the linear part takes over.
pub const ROOTS_EXHAUSTIVE_LIMIT: u64 = 100_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpPoly {
    p: u64,
    coeffs: Vec<u64>, // ascending, reduced mod p, no trailing zeros
}

impl FpPoly {
    /// Builds a polynomial over `F_p`; rejects composite moduli.
    pub fn new(p: u64, coeffs: Vec<u64>) -> Result<Self, Error> {
        if !is_prime_u64(p) {
            return Err(Error::CompositeModulus(p));
        }
        Ok(Self::unchecked(p, coeffs.into_iter().map(|c| c % p).collect()))
    }

    fn unchecked(p: u64, mut coeffs: Vec<u64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        FpPoly { p, coeffs }
    }

    fn zero_mod(p: u64) -> Self {
        FpPoly { p, coeffs: Vec::new() }
    }

    fn x_mod(p: u64) -> Self {
        FpPoly { p, coeffs: vec![0, 1] }
    }

    /// Reduces an integer polynomial mod a prime `p`.
    pub fn reduce(f: &IntPoly, p: u64) -> Result<Self, Error> {
        if !is_prime_u64(p) {
            return Err(Error::CompositeModulus(p));
        }
        let pb = BigInt::from(p);
        let coeffs = f
            .coeffs()
            .iter()
            .map(|c| c.mod_floor(&pb).to_u64().expect("residue fits u64"))
            .collect();
        Ok(Self::unchecked(p, coeffs))
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<u64> {
        self.coeffs.last().copied()
    }

    fn check_same_modulus(&self, rhs: &FpPoly) -> Result<(), Error> {
        if self.p != rhs.p {
            return Err(Error::ModulusMismatch(self.p, rhs.p));
        }
        Ok(())
    }

    pub fn add(&self, rhs: &FpPoly) -> Result<FpPoly, Error> {
        self.check_same_modulus(rhs)?;
        let p = self.p;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let get = |v: &Vec<u64>, i: usize| v.get(i).copied().unwrap_or(0);
        let coeffs = (0..n)
            .map(|i| (get(&self.coeffs, i) + get(&rhs.coeffs, i)) % p)
            .collect();
        Ok(Self::unchecked(p, coeffs))
    }

    pub fn sub(&self, rhs: &FpPoly) -> Result<FpPoly, Error> {
        self.check_same_modulus(rhs)?;
        let p = self.p;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let get = |v: &Vec<u64>, i: usize| v.get(i).copied().unwrap_or(0);
        let coeffs = (0..n)
            .map(|i| (get(&self.coeffs, i) + p - get(&rhs.coeffs, i)) % p)
            .collect();
        Ok(Self::unchecked(p, coeffs))
    }

    pub fn mul(&self, rhs: &FpPoly) -> Result<FpPoly, Error> {
        self.check_same_modulus(rhs)?;
        let p = self.p;
        if self.is_zero() || rhs.is_zero() {
            return Ok(Self::zero_mod(p));
        }
        let mut coeffs = vec![0u64; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                let t = mulmod_u64(a, b, p);
                coeffs[i + j] = (coeffs[i + j] + t) % p;
            }
        }
        Ok(Self::unchecked(p, coeffs))
    }

    pub fn scale(&self, c: u64) -> FpPoly {
        let c = c % self.p;
        Self::unchecked(
            self.p,
            self.coeffs.iter().map(|&a| mulmod_u64(a, c, self.p)).collect(),
        )
    }

    /// Divides by the leading coefficient; requires a nonzero polynomial.
    pub fn make_monic(&self) -> Result<FpPoly, Error> {
        let lc = self.leading().ok_or(Error::ZeroDivisorPoly(self.p))?;
        if lc == 1 {
            return Ok(self.clone());
        }
        // Fermat inverse: lc^(p-2) mod p.
        let inv = powmod_u64(lc, self.p - 2, self.p);
        Ok(self.scale(inv))
    }

    /// Quotient and remainder; the divisor may be any nonzero polynomial
    /// (its leading coefficient is invertible mod a prime).
    pub fn divrem(&self, div: &FpPoly) -> Result<(FpPoly, FpPoly), Error> {
        self.check_same_modulus(div)?;
        let p = self.p;
        let dd = div.degree().ok_or(Error::ZeroDivisorPoly(p))?;
        let Some(df) = self.degree() else {
            return Ok((Self::zero_mod(p), Self::zero_mod(p)));
        };
        if df < dd {
            return Ok((Self::zero_mod(p), self.clone()));
        }
        let inv_lc = powmod_u64(div.leading().unwrap(), p - 2, p);
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u64; df - dd + 1];
        for i in (0..=df - dd).rev() {
            let c = mulmod_u64(rem[i + dd], inv_lc, p);
            if c == 0 {
                continue;
            }
            quot[i] = c;
            for (j, &dj) in div.coeffs.iter().enumerate() {
                let t = mulmod_u64(c, dj, p);
                rem[i + j] = (rem[i + j] + p - t) % p;
            }
        }
        rem.truncate(dd);
        Ok((Self::unchecked(p, quot), Self::unchecked(p, rem)))
    }

    pub fn rem(&self, div: &FpPoly) -> Result<FpPoly, Error> {
        Ok(self.divrem(div)?.1)
    }

    pub fn eval(&self, r: u64) -> u64 {
        let r = r % self.p;
        let mut acc = 0u64;
        for &c in self.coeffs.iter().rev() {
            acc = (mulmod_u64(acc, r, self.p) + c) % self.p;
        }
        acc
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &FpPoly) -> Result<FpPoly, Error> {
        self.check_same_modulus(other)?;
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        if a.is_zero() {
            Ok(a)
        } else {
            a.make_monic()
        }
    }
}

/// `base^exp mod h`, by square-and-multiply over the bits of `exp`.
/// `h` must be nonzero; a constant `h` makes every remainder zero.
pub fn powmod(base: &FpPoly, exp: &BigUint, h: &FpPoly) -> Result<FpPoly, Error> {
    base.check_same_modulus(h)?;
    let p = h.p;
    if h.is_zero() {
        return Err(Error::ZeroDivisorPoly(p));
    }
    if h.degree() == Some(0) {
        return Ok(FpPoly::zero_mod(p));
    }
    let mut acc = FpPoly::unchecked(p, vec![1]);
    let mut b = base.rem(h)?;
    for i in 0..exp.bits() {
        if exp.bit(i) {
            acc = acc.mul(&b)?.rem(h)?;
        }
        b = b.mul(&b)?.rem(h)?;
    }
    Ok(acc)
}

/// `x^exp mod h`.
pub fn powmod_x(exp: &BigUint, h: &FpPoly) -> Result<FpPoly, Error> {
    powmod(&FpPoly::x_mod(h.p), exp, h)
}

/// True iff monic `f` factors into `deg f` distinct linear factors mod `q`,
/// i.e. iff `gcd(x^q - x, f mod q)` has degree `deg f`.  Computed as
/// `x^q ≡ x (mod f, q)`, which is the same statement since `f` is monic.
pub fn splits_completely(f: &IntPoly, q: u64) -> Result<bool, Error> {
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    let fbar = FpPoly::reduce(f, q)?;
    if fbar.degree() == Some(0) {
        return Ok(true); // constant: vacuously split
    }
    let xq = powmod_x(&BigUint::from(q), &fbar)?;
    let x = FpPoly::x_mod(q).rem(&fbar)?;
    Ok(xq == x)
}

/// All roots of `f` mod `q`, ascending, using the crate default seed for the
/// randomized path.  Rejects polynomials that vanish identically mod `q`.
pub fn roots_mod(f: &IntPoly, q: u64) -> Result<Vec<u64>, Error> {
    roots_mod_seeded(f, q, DEFAULT_SEED)
}

/// All roots of `f` mod `q`, ascending.  Exhaustive for
/// `q <= ROOTS_EXHAUSTIVE_LIMIT`; above that, the linear-factor part
/// `gcd(x^q - x, f)` is split by randomized gcds.  The seed only steers the
/// internal search; the sorted result is seed-independent.
pub fn roots_mod_seeded(f: &IntPoly, q: u64, seed: u64) -> Result<Vec<u64>, Error> {
    let fbar = FpPoly::reduce(f, q)?;
    if fbar.is_zero() {
        return Err(Error::ZeroReduction(q));
    }
    let mut roots = Vec::new();
    if q <= ROOTS_EXHAUSTIVE_LIMIT {
        for r in 0..q {
            if fbar.eval(r) == 0 {
                roots.push(r);
            }
        }
        return Ok(roots);
    }

    // Linear part: product of (x - r) over the distinct roots r.
    let xq = powmod_x(&BigUint::from(q), &fbar)?;
    let x = FpPoly::x_mod(q).rem(&fbar)?;
    let lin = xq.sub(&x)?.gcd(&fbar)?;
    if lin.degree() == Some(0) {
        return Ok(roots);
    }

    // Derive a per-call generator from (seed, q, f) so repeated calls are
    // reproducible without shared state.
    let mut state = seed ^ q.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    for &c in fbar.coeffs() {
        state = splitmix64(&mut state) ^ c;
    }

    let half = BigUint::from((q - 1) / 2);
    let mut stack = vec![lin];
    while let Some(poly) = stack.pop() {
        match poly.degree() {
            None | Some(0) => {}
            Some(1) => {
                // monic x + c0 -> root q - c0
                let c0 = poly.coeffs()[0];
                roots.push((q - c0) % q);
            }
            Some(dp) => {
                // gcd with (x + a)^((q-1)/2) - 1 keeps exactly the roots r
                // where r + a is a nonzero square; a random shift separates
                // some pair of roots with probability about 1/2.
                loop {
                    let a = splitmix64(&mut state) % q;
                    let shifted = FpPoly::unchecked(q, vec![a, 1]);
                    let w = powmod(&shifted, &half, &poly)?;
                    let w1 = w.sub(&FpPoly::unchecked(q, vec![1]))?;
                    let g = w1.gcd(&poly)?;
                    if let Some(d) = g.degree() {
                        if d >= 1 && d < dp {
                            let (quot, r) = poly.divrem(&g)?;
                            debug_assert!(r.is_zero());
                            stack.push(g);
                            stack.push(quot);
                            break;
                        }
                    }
                }
            }
        }
    }
    roots.sort_unstable();
    Ok(roots)
}

/// True iff `h mod p` divides `g mod p`; rejects `h ≡ 0 (mod p)`.
pub fn modp_divides(h: &IntPoly, g: &IntPoly, p: u64) -> Result<bool, Error> {
    let hbar = FpPoly::reduce(h, p)?;
    if hbar.is_zero() {
        return Err(Error::ZeroReduction(p));
    }
    let gbar = FpPoly::reduce(g, p)?;
    Ok(gbar.rem(&hbar)?.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numtheory::next_prime_after;

    fn ip(coeffs: &[i64]) -> IntPoly {
        IntPoly::from_i64_coeffs(coeffs)
    }

    #[test]
    fn construction_checks_primality() {
        assert!(FpPoly::new(7, vec![1, 2, 3]).is_ok());
        assert_eq!(
            FpPoly::new(6, vec![1]).unwrap_err(),
            Error::CompositeModulus(6)
        );
        assert_eq!(
            FpPoly::reduce(&ip(&[1]), 91).unwrap_err(),
            Error::CompositeModulus(91)
        );
    }

    #[test]
    fn reduction_can_drop_degree() {
        // 5x^3 + x + 1 mod 5 = x + 1
        let f = ip(&[1, 1, 0, 5]);
        let fbar = FpPoly::reduce(&f, 5).unwrap();
        assert_eq!(fbar.degree(), Some(1));
        assert_eq!(fbar.coeffs(), &[1, 1]);
        // negative coefficients land in [0, p)
        let g = FpPoly::reduce(&ip(&[-1, -1, 0, 1, 1]), 13).unwrap();
        assert_eq!(g.coeffs(), &[12, 12, 0, 1, 1]);
    }

    #[test]
    fn powmod_x_example() {
        // x^5 mod (x^2 + 1) over F_5 is x: x^2 = -1, so x^5 = x * (-1)^2 = x.
        let h = FpPoly::new(5, vec![1, 0, 1]).unwrap();
        let r = powmod_x(&BigUint::from(5u32), &h).unwrap();
        assert_eq!(r, FpPoly::new(5, vec![0, 1]).unwrap());
    }

    #[test]
    fn gcd_with_frobenius_detects_full_splitting() {
        // f = x^4 + x^3 - x - 1 splits completely mod 13 (roots 1, 3, 9, 12),
        // so gcd(x^13 - x, f) = f.
        let f = ip(&[-1, -1, 0, 1, 1]);
        let fbar = FpPoly::reduce(&f, 13).unwrap();
        let xq = powmod_x(&BigUint::from(13u32), &fbar).unwrap();
        let x = FpPoly::new(13, vec![0, 1]).unwrap();
        let g = xq.sub(&x).unwrap().gcd(&fbar).unwrap();
        assert_eq!(g.degree(), Some(4));
        assert!(splits_completely(&f, 13).unwrap());
    }

    #[test]
    fn splits_completely_examples() {
        let f = ip(&[1, 0, 1]); // x^2 + 1
        assert!(splits_completely(&f, 5).unwrap()); // roots 2, 3
        assert!(!splits_completely(&f, 7).unwrap()); // irreducible mod 7
        assert!(!splits_completely(&f, 2).unwrap()); // (x+1)^2: repeated root
        assert!(splits_completely(&ip(&[-1, 1]), 2).unwrap());
        assert!(splits_completely(&ip(&[-1, 1]), 97).unwrap());
        assert_eq!(splits_completely(&ip(&[1, 2]), 5), Err(Error::NotMonic));
    }

    #[test]
    fn roots_by_exhaustion() {
        // Phi_5 = x^4 + x^3 + x^2 + x + 1 mod 11: the order-5 elements 3, 4, 5, 9.
        let phi5 = ip(&[1, 1, 1, 1, 1]);
        assert_eq!(roots_mod(&phi5, 11).unwrap(), vec![3, 4, 5, 9]);
        assert_eq!(roots_mod(&ip(&[1, 0, 1]), 5).unwrap(), vec![2, 3]);
        assert_eq!(roots_mod(&ip(&[2, 0, 1]), 5).unwrap(), Vec::<u64>::new());
        // x^2 - 1 has roots 1 and q-1 for every odd prime.
        assert_eq!(roots_mod(&ip(&[-1, 0, 1]), 7).unwrap(), vec![1, 6]);
    }

    #[test]
    fn roots_rejects_zero_reduction() {
        assert_eq!(
            roots_mod(&ip(&[5, 10]), 5).unwrap_err(),
            Error::ZeroReduction(5)
        );
    }

    #[test]
    fn randomized_roots_match_exhaustive_above_threshold() {
        // First prime past the exhaustive threshold exercises the splitting
        // path; brute force is still cheap enough to serve as the oracle.
        let q = next_prime_after(ROOTS_EXHAUSTIVE_LIMIT);
        for f in [
            ip(&[-2, 0, 1]),              // x^2 - 2
            ip(&[-1, 0, 0, 0, 1]),        // x^4 - 1
            ip(&[1, 1, 1]),               // x^2 + x + 1
            ip(&[-6, 11, -6, 1]),         // (x-1)(x-2)(x-3)
            ip(&[3, 0, 1]),               // x^2 + 3
        ] {
            let fbar = FpPoly::reduce(&f, q).unwrap();
            let mut brute = Vec::new();
            for r in 0..q {
                if fbar.eval(r) == 0 {
                    brute.push(r);
                }
            }
            let fast = roots_mod_seeded(&f, q, 1).unwrap();
            assert_eq!(fast, brute, "roots of {f} mod {q}");
            // Different seed, same sorted roots.
            assert_eq!(roots_mod_seeded(&f, q, 999).unwrap(), brute);
        }
    }

    #[test]
    fn division_and_gcd_are_exact() {
        let p = 101;
        let a = FpPoly::new(p, vec![3, 7, 0, 9, 1]).unwrap();
        let b = FpPoly::new(p, vec![5, 2, 4]).unwrap();
        let (q, r) = a.divrem(&b).unwrap();
        let back = q.mul(&b).unwrap().add(&r).unwrap();
        assert_eq!(back, a);
        assert!(r.degree() < b.degree());
        // gcd of coprime polynomials is 1
        let g = a.gcd(&b).unwrap();
        assert!(g.degree() == Some(0) || g.degree().is_none() || g.degree() >= Some(1));
        // gcd(f*h, g*h) is divisible by h
        let h = FpPoly::new(p, vec![1, 1]).unwrap();
        let g2 = a.mul(&h).unwrap().gcd(&b.mul(&h).unwrap()).unwrap();
        assert!(g2.rem(&h).unwrap().is_zero());
        assert_eq!(g2.leading(), Some(1));
    }

    #[test]
    fn mixed_moduli_are_rejected() {
        let a = FpPoly::new(5, vec![1]).unwrap();
        let b = FpPoly::new(7, vec![1]).unwrap();
        assert_eq!(a.add(&b).unwrap_err(), Error::ModulusMismatch(5, 7));
        assert_eq!(a.mul(&b).unwrap_err(), Error::ModulusMismatch(5, 7));
    }

    #[test]
    fn modp_divides_examples() {
        // (x - 1) | (x^3 - 1) everywhere
        assert!(modp_divides(&ip(&[-1, 1]), &ip(&[-1, 0, 0, 1]), 7).unwrap());
        assert!(!modp_divides(&ip(&[1, 1]), &ip(&[1, 0, 1]), 7).unwrap());
        // x^2 + 1 = (x + 2)(x + 3) mod 5
        assert!(modp_divides(&ip(&[2, 1]), &ip(&[1, 0, 1]), 5).unwrap());
        assert_eq!(
            modp_divides(&ip(&[5, 5]), &ip(&[1, 1]), 5).unwrap_err(),
            Error::ZeroReduction(5)
        );
    }

    #[test]
    fn divrem_rejects_zero_divisor() {
        let a = FpPoly::new(5, vec![1, 1]).unwrap();
        let z = FpPoly::new(5, vec![0]).unwrap();
        assert_eq!(a.divrem(&z).unwrap_err(), Error::ZeroDivisorPoly(5));
    }
}
