//! Prime field arithmetic F_q for a runtime-chosen odd prime q < 2^31.
//!
//! Scalars are plain `u64` residues in `[0, q)`; the modulus travels in a
//! small copyable [`Fp`] context instead of inside every scalar. Products of
//! two reduced scalars fit in a `u64`, which keeps the elimination kernels
//! free of 128-bit divisions: reduction is a Mersenne fold for the default
//! prime and a Barrett multiply otherwise.

use rand::Rng;

use crate::error::{Error, Result};

/// Default modulus, the Mersenne prime 2^31 - 1.
pub const DEFAULT_PRIME: u64 = 2_147_483_647;

const M31: u64 = (1 << 31) - 1;

/// Prime field context. Copy it freely; it is a single word plus a Barrett
/// constant.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Fp {
    q: u64,
    // floor(2^64 / q), for Barrett reduction of values < 2^62.
    barrett: u64,
    mersenne: bool,
}

impl Fp {
    /// Builds the field, verifying that `q` is an odd prime below 2^31.
    pub fn new(q: u64) -> Result<Self> {
        if q < 3 || q >= (1 << 31) || !is_prime_u64(q) {
            return Err(Error::BadModulus(q));
        }
        Ok(Fp {
            q,
            barrett: ((1u128 << 64) / q as u128) as u64,
            mersenne: q == M31,
        })
    }

    pub fn modulus(&self) -> u64 {
        self.q
    }

    /// Reduces any `x < 2^63` modulo q.
    #[inline(always)]
    pub fn reduce(&self, x: u64) -> u64 {
        if self.mersenne {
            // two folds bring x < 2^63 down below 2^32, then below q + 1
            let x = (x & M31) + (x >> 31);
            let x = (x & M31) + (x >> 31);
            if x >= M31 {
                x - M31
            } else {
                x
            }
        } else {
            // Barrett: estimate quotient via the high half of x * floor(2^64/q)
            let quot = ((x as u128 * self.barrett as u128) >> 64) as u64;
            let mut r = x.wrapping_sub(quot.wrapping_mul(self.q));
            while r >= self.q {
                r -= self.q;
            }
            r
        }
    }

    #[inline(always)]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.q {
            s - self.q
        } else {
            s
        }
    }

    #[inline(always)]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.q - b
        }
    }

    #[inline(always)]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.q - a
        }
    }

    #[inline(always)]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        self.reduce(a * b)
    }

    /// a + b*c, with all three reduced.
    #[inline(always)]
    pub fn mul_add(&self, a: u64, b: u64, c: u64) -> u64 {
        self.reduce(a + b * c)
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64;
        base %= self.q;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse of a nonzero scalar.
    pub fn inv(&self, a: u64) -> u64 {
        assert!(a != 0, "inverse of zero");
        self.pow(a, self.q - 2)
    }

    pub fn from_i64(&self, v: i64) -> u64 {
        let r = v.rem_euclid(self.q as i64);
        r as u64
    }

    /// Uniform scalar in `[0, q)`.
    pub fn rand_scalar<R: Rng>(&self, rng: &mut R) -> u64 {
        rng.gen_range(0..self.q)
    }
}

impl Default for Fp {
    fn default() -> Self {
        Fp::new(DEFAULT_PRIME).unwrap()
    }
}

/// Deterministic Miller-Rabin, valid for all u64.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    let mul = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut base: u64, mut exp: u64| {
        let mut acc = 1u64;
        base %= n;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = mul(acc, base);
            }
            base = mul(base, base);
            exp >>= 1;
        }
        acc
    };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mul(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Exact binomial coefficient in machine integers; the table ranges used here
/// stay far below u64 overflow.
pub fn binomial(n: i64, k: i64) -> u64 {
    if k < 0 || n < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k) as u64;
    let n = n as u64;
    let mut acc: u64 = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn default_prime_is_prime() {
        assert!(is_prime_u64(DEFAULT_PRIME));
        assert!(is_prime_u64(2_147_483_629));
        assert!(!is_prime_u64(2_147_483_645));
    }

    #[test]
    fn rejects_bad_moduli() {
        assert!(Fp::new(4).is_err());
        assert!(Fp::new(1 << 31).is_err());
        assert!(Fp::new(2).is_err());
        assert!(Fp::new(101).is_ok());
    }

    #[test]
    fn field_axioms_spot() {
        for q in [DEFAULT_PRIME, 101, 2_147_483_629] {
            let f = Fp::new(q).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(7);
            for _ in 0..200 {
                let a = f.rand_scalar(&mut rng);
                let b = f.rand_scalar(&mut rng);
                assert_eq!(f.add(a, f.neg(a)), 0);
                assert_eq!(f.mul(a, b), ((a as u128 * b as u128) % q as u128) as u64);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a)), 1);
                }
            }
        }
    }

    #[test]
    fn reduce_handles_large_inputs() {
        for q in [DEFAULT_PRIME, 1009, 2_147_483_629] {
            let f = Fp::new(q).unwrap();
            for x in [0u64, 1, q - 1, q, q + 1, (1 << 62) - 1, (1 << 63) - 1] {
                assert_eq!(f.reduce(x), x % q, "q={q} x={x}");
            }
        }
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(0, 0), 1);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(binomial(-1, 0), 0);
        assert_eq!(binomial(12, 6), 924);
    }
}
