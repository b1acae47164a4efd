use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PrimePower {
    pub prime: u64,
    pub exponent: u32,
}

impl PrimePower {
    pub fn value(self) -> u64 {
        self.prime.pow(self.exponent)
    }
}

/// Finitely generated abelian group: free rank plus prime-power torsion,
/// torsion sorted by (prime, exponent).
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AbelianGroup {
    pub free_rank: usize,
    pub torsion: Vec<PrimePower>,
}

impl AbelianGroup {
    pub fn new(free_rank: usize, mut torsion: Vec<PrimePower>) -> AbelianGroup {
        torsion.sort();
        AbelianGroup { free_rank, torsion }
    }

    /// Splits each divisor greater than one into prime powers.
    pub fn from_divisors(free_rank: usize, divisors: &[BigInt]) -> Result<AbelianGroup> {
        let mut torsion = Vec::new();
        for d in divisors {
            if d.is_one() {
                continue;
            }
            let v = d
                .to_u64()
                .ok_or_else(|| Error::ResourceLimit(format!("torsion coefficient {d} does not fit in 64 bits")))?;
            for (prime, exponent) in factorize(v) {
                torsion.push(PrimePower { prime, exponent });
            }
        }
        Ok(AbelianGroup::new(free_rank, torsion))
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Number of cyclic factors of even order.
    pub fn even_torsion_count(&self) -> usize {
        self.torsion.iter().filter(|t| t.prime == 2).count()
    }

    /// Dimension of Hom(G, Z2).
    pub fn mod2_rank(&self) -> usize {
        self.free_rank + self.even_torsion_count()
    }

    /// Order of the torsion subgroup.
    pub fn torsion_order(&self) -> BigInt {
        self.torsion.iter().fold(BigInt::one(), |acc, t| acc * BigInt::from(t.value()))
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            b => parts.push(format!("Z^{b}")),
        }
        let mut i = 0;
        while i < self.torsion.len() {
            let t = self.torsion[i];
            let mut j = i;
            while j < self.torsion.len() && self.torsion[j] == t {
                j += 1;
            }
            match j - i {
                1 => parts.push(format!("Z{}", t.value())),
                m => parts.push(format!("Z{}^{m}", t.value())),
            }
            i = j;
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl FromStr for AbelianGroup {
    type Err = Error;

    fn from_str(s: &str) -> Result<AbelianGroup> {
        let bad = || Error::InvalidInput(format!("malformed abelian group {s:?}"));
        let s = s.trim();
        if s == "0" {
            return Ok(AbelianGroup::default());
        }
        let mut free_rank = 0;
        let mut torsion = Vec::new();
        for part in s.split('+').map(str::trim) {
            let rest = part.strip_prefix('Z').ok_or_else(bad)?;
            let (base, mult) = match rest.split_once('^') {
                Some((b, m)) => (b, m.parse::<u32>().map_err(|_| bad())?),
                None => (rest, 1),
            };
            if base.is_empty() {
                free_rank += mult as usize;
                continue;
            }
            let q: u64 = base.parse().map_err(|_| bad())?;
            let f = factorize(q);
            if f.len() != 1 {
                return Err(Error::InvalidInput(format!("{q} is not a prime power in {s:?}")));
            }
            for _ in 0..mult {
                torsion.push(PrimePower { prime: f[0].0, exponent: f[0].1 });
            }
        }
        Ok(AbelianGroup::new(free_rank, torsion))
    }
}

impl Serialize for AbelianGroup {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for AbelianGroup {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<AbelianGroup, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    (a as u128 * b as u128 % m as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, m);
        }
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller-Rabin for 64-bit integers.
fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for p in BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Pollard's rho; `n` is odd, composite and not a prime power of a small prime.
fn rho(n: u64) -> u64 {
    for c in 1.. {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = gcd(x.abs_diff(y), n);
        }
        if d != n {
            return d;
        }
    }
    unreachable!()
}

fn prime_factors(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    let d = rho(n);
    prime_factors(d, out);
    prime_factors(n / d, out);
}

/// Prime factorization as (prime, exponent) pairs in increasing order.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut primes = Vec::new();
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        while n.is_multiple_of(p) {
            primes.push(p);
            n /= p;
        }
    }
    if n > 1 {
        prime_factors(n, &mut primes);
    }
    primes.sort_unstable();
    let mut out: Vec<(u64, u32)> = Vec::new();
    for p in primes {
        match out.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => out.push((p, 1)),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorize_examples() {
        assert_eq!(factorize(1), vec![]);
        assert_eq!(factorize(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(factorize(83 * 83 * 1_000_003), vec![(83, 2), (1_000_003, 1)]);
        assert_eq!(factorize(4_294_967_291 * 65_521), vec![(65_521, 1), (4_294_967_291, 1)]);
    }

    #[test]
    fn display_and_parse_round_trip() {
        let g = AbelianGroup::from_divisors(5, &[BigInt::from(2), BigInt::from(10), BigInt::from(5), BigInt::from(5)])
            .unwrap();
        assert_eq!(g.to_string(), "Z^5 + Z2^2 + Z5^3");
        assert_eq!(g.to_string().parse::<AbelianGroup>().unwrap(), g);
        for s in ["0", "Z", "Z25", "Z^4 + Z3^2", "Z3 + Z5 + Z25^3"] {
            assert_eq!(s.parse::<AbelianGroup>().unwrap().to_string(), s);
        }
        assert!("Z6".parse::<AbelianGroup>().is_err());
        assert!("Q".parse::<AbelianGroup>().is_err());
    }

    #[test]
    fn mod2_rank_counts_even_factors() {
        let g: AbelianGroup = "Z^41 + Z2^12".parse().unwrap();
        assert_eq!(g.mod2_rank(), 53);
    }
}
