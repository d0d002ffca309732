//! Number-theoretic kernel: Möbius function, divisors, gcd/lcm and
//! enumeration of exponent multisets (integer partitions written as
//! multiplicity vectors).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use crate::error::{Result, WittError};

/// Möbius function by trial division.
pub fn mobius(n: u64) -> Result<i8> {
    if n == 0 {
        return Err(WittError::ZeroArgument("mobius"));
    }
    let mut m = n;
    let mut sign = 1i8;
    let mut p = 2u64;
    while p * p <= m {
        if m.is_multiple_of(p) {
            m /= p;
            if m.is_multiple_of(p) {
                return Ok(0);
            }
            sign = -sign;
        }
        p += 1;
    }
    if m > 1 {
        sign = -sign;
    }
    Ok(sign)
}

/// Positive divisors of `n` in ascending order.
pub fn divisors(n: u64) -> Result<Vec<u64>> {
    if n == 0 {
        return Err(WittError::ZeroArgument("divisors"));
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    Ok(small)
}

/// `(gcd(a, b), lcm(a, b))` for positive arguments.
pub fn gcd_lcm(a: u64, b: u64) -> Result<(u64, u64)> {
    if a == 0 || b == 0 {
        return Err(WittError::ZeroArgument("gcd_lcm"));
    }
    let (g, l) = a.gcd_lcm(&b);
    debug_assert_eq!(g as u128 * l as u128, a as u128 * b as u128);
    Ok((g, l))
}

/// All ordered pairs `(s, t)` of positive integers with `lcm(s, t) = n`,
/// sorted lexicographically.
pub fn pairs_with_lcm(n: u64) -> Result<Vec<(u64, u64)>> {
    let divs = divisors(n)?;
    let mut out = Vec::new();
    for &s in &divs {
        for &t in &divs {
            if s.lcm(&t) == n {
                out.push((s, t));
            }
        }
    }
    Ok(out)
}

/// All ordered tuples `(s_1, .., s_len)` of divisors of `n` whose lcm is `n`.
pub fn tuples_with_lcm(n: u64, len: usize) -> Result<Vec<Vec<u64>>> {
    let divs = divisors(n)?;
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(len);
    fn rec(divs: &[u64], n: u64, len: usize, acc: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if cur.len() == len {
            if acc == n {
                out.push(cur.clone());
            }
            return;
        }
        for &d in divs {
            cur.push(d);
            rec(divs, n, len, acc.lcm(&d), cur, out);
            cur.pop();
        }
    }
    rec(&divs, n, len, 1, &mut cur, &mut out);
    Ok(out)
}

/// `n!` as a big integer.
pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// A multiset of positive part sizes, stored as `(part, multiplicity)` pairs
/// with ascending parts and nonzero multiplicities.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExponentMultiset {
    parts: Vec<(u64, u64)>,
}

impl ExponentMultiset {
    /// Builds a multiset from `(part, multiplicity)` pairs; zero multiplicities
    /// are dropped and repeated parts are merged.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (u64, u64)>) -> Self {
        let mut parts: Vec<(u64, u64)> = Vec::new();
        for (p, m) in pairs {
            if m == 0 {
                continue;
            }
            match parts.iter_mut().find(|(q, _)| *q == p) {
                Some(slot) => slot.1 += m,
                None => parts.push((p, m)),
            }
        }
        parts.sort_unstable();
        ExponentMultiset { parts }
    }

    fn from_descending_parts(desc: &[u64]) -> Self {
        let mut parts: Vec<(u64, u64)> = Vec::new();
        for &p in desc.iter().rev() {
            match parts.last_mut() {
                Some((q, m)) if *q == p => *m += 1,
                _ => parts.push((p, 1)),
            }
        }
        ExponentMultiset { parts }
    }

    /// `(part, multiplicity)` pairs, ascending by part.
    pub fn pairs(&self) -> &[(u64, u64)] {
        &self.parts
    }

    /// Multiplicity of part `i` (`s_i`).
    pub fn multiplicity(&self, i: u64) -> u64 {
        self.parts.iter().find(|(p, _)| *p == i).map_or(0, |(_, m)| *m)
    }

    /// `|s| = Σ s_i`.
    pub fn size(&self) -> u64 {
        self.parts.iter().map(|(_, m)| m).sum()
    }

    /// `Σ i·s_i`.
    pub fn weight(&self) -> u64 {
        self.parts.iter().map(|(p, m)| p * m).sum()
    }

    /// `s! = Π s_i!`.
    pub fn factorial(&self) -> BigInt {
        self.parts.iter().map(|(_, m)| factorial(*m)).product()
    }
}

/// Streams every exponent multiset of weight `n` with parts `≤ max_part`,
/// each exactly once, in reverse lexicographic order of the underlying
/// partitions.
pub fn enumerate_exponent_multisets(n: u64, max_part: u64) -> Result<ExponentMultisets> {
    if n == 0 {
        return Err(WittError::ZeroArgument("enumerate_exponent_multisets"));
    }
    if max_part == 0 {
        return Err(WittError::ZeroArgument("max_part"));
    }
    let m = max_part.min(n);
    let mut first = vec![m; (n / m) as usize];
    if !n.is_multiple_of(m) {
        first.push(n % m);
    }
    Ok(ExponentMultisets { current: Some(first) })
}

/// Iterator returned by [`enumerate_exponent_multisets`].
#[derive(Debug, Clone)]
pub struct ExponentMultisets {
    current: Option<Vec<u64>>,
}

impl Iterator for ExponentMultisets {
    type Item = ExponentMultiset;

    fn next(&mut self) -> Option<ExponentMultiset> {
        let parts = self.current.take()?;
        let out = ExponentMultiset::from_descending_parts(&parts);

        let mut next = parts;
        let mut rem = 0u64;
        while next.last() == Some(&1) {
            next.pop();
            rem += 1;
        }
        if let Some(last) = next.last_mut() {
            let x = *last - 1;
            *last = x;
            rem += 1;
            while rem > x {
                next.push(x);
                rem -= x;
            }
            if rem > 0 {
                next.push(rem);
            }
            self.current = Some(next);
        }
        Some(out)
    }
}
