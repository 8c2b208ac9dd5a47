//! Global maximal complexity statistics: closed forms for K(N) and R(N)
//! and a brute-force oracle for (K, R, M) by exhaustive enumeration.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde_json::json;

use crate::word::{max_and_argmax, Word};
use crate::{checked_pow, Error, Result};

/// Which route produced a set of statistics.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum Method {
    ClosedForm,
    Brute,
    Graph,
    Tree,
    Formula,
}

impl Method {
    pub fn tag(&self) -> &'static str {
        match self {
            Method::ClosedForm => "closed",
            Method::Brute => "brute",
            Method::Graph => "graph",
            Method::Tree => "tree",
            Method::Formula => "formula",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// The triple (K(N), R(N), M(N)) for given (q, N), with method provenance.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GlobalStats {
    pub q: u8,
    pub n: usize,
    pub k_max: u64,
    pub r_lengths: BTreeSet<usize>,
    pub m_count: BigUint,
    pub method: Method,
}

impl GlobalStats {
    /// JSON with M as a decimal string, so big values survive.
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "q": self.q,
            "N": self.n,
            "K": self.k_max,
            "R": self.r_lengths.iter().collect::<Vec<_>>(),
            "M": self.m_count.to_string(),
            "method": self.method.tag(),
        })
    }
}

/// The unique k >= 1 with q^k + k <= N <= q^(k+1) + k, for N > q >= 2.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Bracket {
    pub q: u8,
    pub n: usize,
    pub k: u32,
    /// N = q^k + k, where the maximum is attained at both lengths k and k+1.
    pub at_lower_endpoint: bool,
}

pub fn bracket_k(q: u8, n: usize) -> Result<Bracket> {
    assert!(q >= 2, "bracket requires q >= 2");
    if n <= q as usize {
        return Err(Error::SmallN { q, n });
    }
    let n128 = n as u128;
    let mut k = 1u32;
    loop {
        let lo = checked_pow(q, k).ok_or(Error::Overflow)? + k as u128;
        let hi = checked_pow(q, k + 1).ok_or(Error::Overflow)? + k as u128;
        if lo <= n128 && n128 <= hi {
            return Ok(Bracket {
                q,
                n,
                k,
                at_lower_endpoint: lo == n128,
            });
        }
        if lo > n128 {
            // cannot happen: the intervals tile all N > q
            unreachable!("no bracket for q={q}, N={n}");
        }
        k += 1;
    }
}

/// K(N): 1 for q=1; N for N <= q; otherwise N - k.
pub fn global_k(q: u8, n: usize) -> Result<u64> {
    assert!(q >= 1 && n >= 1);
    if q == 1 {
        return Ok(1);
    }
    if n <= q as usize {
        return Ok(n as u64);
    }
    let b = bracket_k(q, n)?;
    Ok((n - b.k as usize) as u64)
}

/// R(N): {1..N} for q=1; {1} for N <= q; {k, k+1} at N = q^k + k; else {k+1}.
pub fn global_r(q: u8, n: usize) -> Result<BTreeSet<usize>> {
    assert!(q >= 1 && n >= 1);
    if q == 1 {
        return Ok((1..=n).collect());
    }
    if n <= q as usize {
        return Ok(BTreeSet::from([1]));
    }
    let b = bracket_k(q, n)?;
    let k = b.k as usize;
    Ok(if b.at_lower_endpoint {
        BTreeSet::from([k, k + 1])
    } else {
        BTreeSet::from([k + 1])
    })
}

/// M(N) for N <= q: the number of arrangements of N distinct letters,
/// q (q-1) ... (q-N+1).
pub fn small_n_m(q: u8, n: usize) -> BigUint {
    assert!(n >= 1 && n <= q as usize);
    let mut m = BigUint::from(1u32);
    for i in 0..n {
        m *= BigUint::from(q as u64 - i as u64);
    }
    m
}

/// Closed-form stats; M is available only in the small-N regime
/// (q = 1 or N <= q), which is the only regime with a general formula.
pub fn closed_stats(q: u8, n: usize) -> Result<GlobalStats> {
    let m_count = if q == 1 {
        BigUint::from(1u32)
    } else if n <= q as usize {
        small_n_m(q, n)
    } else {
        return Err(Error::FormulaNotApplicable { q, n });
    };
    Ok(GlobalStats {
        q,
        n,
        k_max: global_k(q, n)?,
        r_lengths: global_r(q, n)?,
        m_count,
        method: Method::ClosedForm,
    })
}

/// Accumulator for one slice of the enumeration; merging is associative
/// and order-independent.
#[derive(Clone, Default)]
struct Acc {
    k: u64,
    r: BTreeSet<usize>,
    m: u64,
}

impl Acc {
    fn absorb_word(&mut self, max: u64, argmax: &[usize]) -> Result<()> {
        match max.cmp(&self.k) {
            std::cmp::Ordering::Greater => {
                self.k = max;
                self.r = argmax.iter().copied().collect();
                self.m = 1;
            }
            std::cmp::Ordering::Equal => {
                self.r.extend(argmax.iter().copied());
                self.m = self.m.checked_add(1).ok_or(Error::Overflow)?;
            }
            std::cmp::Ordering::Less => {}
        }
        Ok(())
    }

    fn merge(mut self, other: Acc) -> Result<Acc> {
        match other.k.cmp(&self.k) {
            std::cmp::Ordering::Greater => Ok(other),
            std::cmp::Ordering::Less => Ok(self),
            std::cmp::Ordering::Equal => {
                self.r.extend(other.r);
                self.m = self.m.checked_add(other.m).ok_or(Error::Overflow)?;
                Ok(self)
            }
        }
    }
}

/// Visits every word of length n with the given first symbol, in
/// lexicographic order.
fn scan_prefix(q: u8, n: usize, first: u8, mut visit: impl FnMut(&[u8]) -> Result<()>) -> Result<()> {
    let mut symbols = vec![0u8; n];
    symbols[0] = first;
    loop {
        visit(&symbols)?;
        // odometer over positions 1..n
        let mut pos = n;
        loop {
            if pos == 1 {
                return Ok(());
            }
            pos -= 1;
            if symbols[pos] + 1 < q {
                symbols[pos] += 1;
                break;
            }
            symbols[pos] = 0;
        }
    }
}

/// Exhaustive enumeration of all q^n words: exact (K, R, M), where R is the
/// union of argmax lengths over maximal words and M counts maximal words.
///
/// When `emit` is given, every maximal word is streamed in lexicographic
/// order (this forces a second, sequential pass).
pub fn brute_force_stats(
    q: u8,
    n: usize,
    budget: u64,
    emit: Option<&mut dyn FnMut(&Word)>,
) -> Result<GlobalStats> {
    assert!(q >= 1 && n >= 1);
    let total = checked_pow(q, n as u32).ok_or(Error::Overflow)?;
    if total > budget as u128 {
        return Err(Error::BudgetExceeded {
            needed: total,
            budget: budget as u128,
            unit: "words",
        });
    }
    let acc = (0..q)
        .into_par_iter()
        .map(|first| {
            let mut acc = Acc::default();
            scan_prefix(q, n, first, |symbols| {
                let (max, argmax) = max_and_argmax(symbols, q);
                acc.absorb_word(max, &argmax)
            })?;
            Ok(acc)
        })
        .try_reduce(Acc::default, Acc::merge)?;

    if let Some(sink) = emit {
        for first in 0..q {
            scan_prefix(q, n, first, |symbols| {
                let (max, _) = max_and_argmax(symbols, q);
                if max == acc.k {
                    sink(&Word::from_symbols(q, symbols.to_vec())?);
                }
                Ok(())
            })?;
        }
    }

    Ok(GlobalStats {
        q,
        n,
        k_max: acc.k,
        r_lengths: acc.r,
        m_count: BigUint::from(acc.m),
        method: Method::Brute,
    })
}

pub const DEFAULT_BRUTE_BUDGET: u64 = 1 << 26;
