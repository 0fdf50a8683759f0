//! Ascending table of the first `N` primes.
//!
//! Generation uses a segmented sieve of Eratosthenes. The sieve bound comes
//! from the Rosser upper estimate `p_n < n (ln n + ln ln n)` (valid for
//! `n >= 6`), so a single pass always reaches the requested count and the
//! result is trimmed to exactly `N` entries. Memory is bounded by the segment
//! size plus the output table.

use crate::{Error, Result};

/// Largest prime count accepted by [`PrimeTable::generate`].
pub const MAX_PRIME_COUNT: usize = 20_000_000;

const SEGMENT_LEN: u64 = 1 << 18;

/// Immutable table of the first `count` primes, with `ln p` cached per entry.
#[derive(Debug, Clone, PartialEq)]
pub struct PrimeTable {
    primes: Vec<u64>,
    logs: Vec<f64>,
}

/// Borrowed view over a prefix of a [`PrimeTable`].
#[derive(Debug, Clone, Copy)]
pub struct PrimeSlice<'a> {
    primes: &'a [u64],
    logs: &'a [f64],
}

/// Returns the first `count` primes.
pub fn generate_primes(count: usize) -> Result<PrimeTable> {
    PrimeTable::generate(count)
}

impl PrimeTable {
    pub fn generate(count: usize) -> Result<Self> {
        if count == 0 {
            return Err(Error::invalid("prime count must be at least 1"));
        }
        if count > MAX_PRIME_COUNT {
            return Err(Error::invalid(format!(
                "prime count {count} exceeds the limit of {MAX_PRIME_COUNT}"
            )));
        }
        let primes = segmented_sieve(count, sieve_bound(count));
        debug_assert_eq!(primes.len(), count);
        let logs = primes.iter().map(|&p| (p as f64).ln()).collect();
        Ok(PrimeTable { primes, logs })
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    /// `ln p` for every entry, in table order.
    pub fn logs(&self) -> &[f64] {
        &self.logs
    }

    pub fn last(&self) -> u64 {
        *self.primes.last().expect("table is never empty")
    }

    pub fn as_slice(&self) -> PrimeSlice<'_> {
        PrimeSlice {
            primes: &self.primes,
            logs: &self.logs,
        }
    }

    /// View of the first `count` primes.
    pub fn prefix(&self, count: usize) -> Result<PrimeSlice<'_>> {
        if count == 0 || count > self.len() {
            return Err(Error::invalid(format!(
                "prefix of {count} primes requested from a table of {}",
                self.len()
            )));
        }
        Ok(PrimeSlice {
            primes: &self.primes[..count],
            logs: &self.logs[..count],
        })
    }
}

impl<'a> PrimeSlice<'a> {
    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    pub fn primes(&self) -> &'a [u64] {
        self.primes
    }

    pub fn logs(&self) -> &'a [f64] {
        self.logs
    }

    /// Sub-view `[start, end)`.
    pub(crate) fn range(&self, start: usize, end: usize) -> PrimeSlice<'a> {
        PrimeSlice {
            primes: &self.primes[start..end],
            logs: &self.logs[start..end],
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, f64)> + 'a {
        self.primes.iter().copied().zip(self.logs.iter().copied())
    }
}

impl<'a> From<&'a PrimeTable> for PrimeSlice<'a> {
    fn from(table: &'a PrimeTable) -> Self {
        table.as_slice()
    }
}

/// Upper bound on the `count`-th prime.
fn sieve_bound(count: usize) -> u64 {
    if count < 6 {
        return 13;
    }
    let n = count as f64;
    (n * (n.ln() + n.ln().ln())).ceil() as u64 + 1
}

/// Plain sieve of all primes `<= limit`, used for the base primes.
fn small_primes(limit: u64) -> Vec<u64> {
    let limit = limit as usize;
    let mut composite = vec![false; limit + 1];
    let mut out = Vec::new();
    for i in 2..=limit {
        if composite[i] {
            continue;
        }
        out.push(i as u64);
        let mut j = i * i;
        while j <= limit {
            composite[j] = true;
            j += i;
        }
    }
    out
}

fn segmented_sieve(count: usize, limit: u64) -> Vec<u64> {
    let root = (limit as f64).sqrt() as u64 + 1;
    let base = small_primes(root);
    let mut out = Vec::with_capacity(count);
    let mut segment = vec![true; SEGMENT_LEN as usize];

    let mut low = 2u64;
    while low <= limit && out.len() < count {
        let high = (low + SEGMENT_LEN).min(limit + 1);
        let width = (high - low) as usize;
        segment[..width].fill(true);

        for &p in &base {
            if p * p >= high {
                break;
            }
            // first multiple of p in [low, high) that is not p itself
            let start = (p * p).max(low.div_ceil(p) * p);
            let mut m = start;
            while m < high {
                segment[(m - low) as usize] = false;
                m += p;
            }
        }

        for (offset, &is_prime) in segment[..width].iter().enumerate() {
            if is_prime {
                out.push(low + offset as u64);
                if out.len() == count {
                    break;
                }
            }
        }
        low = high;
    }
    out
}
