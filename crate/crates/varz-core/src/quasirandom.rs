//! Low-discrepancy and number-theory helpers: the Van der Corput radical
//! inverse, a prime sieve, and the Halton-named initial probe distribution.

use crate::cfo::{init_probe_lines, DecisionSpace, Positions};
use crate::{Error, Result};

/// Largest index accepted by [`radical_inverse`].
pub const MAX_RADICAL_INDEX: u64 = (1 << 63) - 2;

/// Van der Corput radical inverse: the base-`base` digits of `n` mirrored
/// about the radix point.
///
/// The digit-reversed numerator and `base^k` denominator are accumulated
/// exactly in integers, so the result is a single correctly rounded division.
pub fn radical_inverse(n: u64, base: u32) -> Result<f64> {
    if base < 2 {
        return Err(Error::Range(format!("radical inverse base must be >= 2, got {base}")));
    }
    if n > MAX_RADICAL_INDEX {
        return Err(Error::Range(format!("radical inverse index {n} exceeds {MAX_RADICAL_INDEX}")));
    }
    let b = u128::from(base);
    let (mut rest, mut num, mut den) = (u128::from(n), 0u128, 1u128);
    while rest > 0 {
        num = num * b + rest % b;
        den *= b;
        rest /= b;
    }
    Ok(num as f64 / den as f64)
}

/// All primes in `[2, n]`, ascending, by the Sieve of Eratosthenes.
pub fn primes_up_to(n: u64) -> Result<Vec<u64>> {
    if n < 2 {
        return Err(Error::Range(format!("primes_up_to needs n >= 2, got {n}")));
    }
    let n = usize::try_from(n).map_err(|_| Error::Range(format!("{n} is too large to sieve")))?;
    let mut composite = vec![false; n + 1];
    let mut i = 2;
    while i * i <= n {
        if !composite[i] {
            for k in (i * i..=n).step_by(i) {
                composite[k] = true;
            }
        }
        i += 1;
    }
    Ok((2..=n).filter(|&k| !composite[k]).map(|k| k as u64).collect())
}

/// Initial probe distribution under its Halton name. The reference routine
/// places probes on the coordinate-axis lines exactly as [`init_probe_lines`]
/// does, so this delegates to it.
pub fn halton_ipd(space: &DecisionSpace, np_per_dim: usize, gamma: f64) -> Result<Positions> {
    init_probe_lines(space, np_per_dim, gamma)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn base_two_check_values() {
        let table = [(0, 0.0), (1, 0.5), (2, 0.25), (3, 0.75), (4, 0.125), (7, 0.875), (532, 0.1572265625)];
        for (n, want) in table {
            assert_eq!(radical_inverse(n, 2).unwrap(), want, "n = {n}");
        }
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(matches!(radical_inverse(MAX_RADICAL_INDEX + 1, 2), Err(Error::Range(_))));
        assert!(matches!(radical_inverse(5, 1), Err(Error::Range(_))));
        assert!(radical_inverse(MAX_RADICAL_INDEX, 2).unwrap() < 1.0);
        assert!(matches!(primes_up_to(1), Err(Error::Range(_))));
    }

    #[test]
    fn small_sieves() {
        assert_eq!(primes_up_to(2).unwrap(), vec![2]);
        assert_eq!(primes_up_to(30).unwrap(), vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }
}
