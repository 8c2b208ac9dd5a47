//! Martin's greedy construction of de Bruijn words, and its extension to
//! words of any length that attain the global maximal complexity.

use crate::global::bracket_k;
use crate::word::Word;
use crate::{checked_pow, Error, Result};

pub const DEFAULT_LENGTH_BUDGET: usize = 1 << 26;

/// The greedy de Bruijn word for (q, k): start with k-1 copies of the
/// smallest letter, then repeatedly append the largest letter whose new
/// length-k suffix has not occurred before, until stuck. The result has
/// length q^k + k - 1 and contains every length-k word exactly once.
pub fn martin_word(q: u8, k: u32, budget: usize) -> Result<Word> {
    assert!(q >= 2 && k >= 1);
    let qk = checked_pow(q, k).ok_or(Error::Overflow)?;
    let target_len = qk + k as u128 - 1;
    if target_len > budget as u128 {
        return Err(Error::BudgetExceeded {
            needed: target_len,
            budget: budget as u128,
            unit: "letters",
        });
    }
    let qk = qk as usize;
    let q_us = q as usize;
    let prefix_mod = qk / q_us; // q^(k-1)

    let mut symbols: Vec<u8> = vec![0; k as usize - 1];
    let mut seen = vec![false; qk];
    // base-q code of the last k-1 symbols
    let mut prefix_code = 0usize;
    loop {
        let mut appended = false;
        for s in (0..q).rev() {
            let code = prefix_code * q_us + s as usize;
            if !seen[code] {
                seen[code] = true;
                symbols.push(s);
                prefix_code = code % prefix_mod;
                appended = true;
                break;
            }
        }
        if !appended {
            break;
        }
    }
    debug_assert_eq!(symbols.len(), qk + k as usize - 1);
    Word::from_symbols(q, symbols)
}

/// A word of length N whose maximal complexity equals K(N), built as a
/// prefix of the Martin word one order up: for q^k + k <= N <= q^(k+1) + k,
/// the first N letters of martin_word(q, k+1). For N <= q the word of N
/// distinct letters 0,1,...,N-1 is returned instead.
pub fn extended_martin_word(q: u8, n: usize, budget: usize) -> Result<Word> {
    assert!(q >= 1 && n >= 1);
    if q == 1 {
        return Word::from_symbols(1, vec![0; n]);
    }
    if n <= q as usize {
        return Word::from_symbols(q, (0..n as u8).collect());
    }
    let b = bracket_k(q, n)?;
    let full = martin_word(q, b.k + 1, budget)?;
    Word::from_symbols(q, full.symbols()[..n].to_vec())
}

/// The alternative construction at the lower endpoint N = q^k + k: the
/// Martin word for (q, k) with one extra letter appended. Such a word
/// attains K(N) at both lengths k and k+1.
pub fn extended_martin_word_appended(q: u8, k: u32, extra: u8, budget: usize) -> Result<Word> {
    assert!(extra < q);
    let base = martin_word(q, k, budget)?;
    let mut symbols = base.symbols().to_vec();
    symbols.push(extra);
    Word::from_symbols(q, symbols)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::global::{global_k, global_r};
    use crate::word::{complexity_profile, factor_set, max_complexity};
    use std::collections::BTreeSet;

    #[test]
    fn martin_examples() {
        assert_eq!(martin_word(2, 2, 1 << 20).unwrap().to_string(), "01100");
        assert_eq!(
            martin_word(2, 3, 1 << 20).unwrap().to_string(),
            "0011101000"
        );
        assert_eq!(martin_word(2, 1, 1 << 20).unwrap().to_string(), "10");
        // k=1 yields the letters in descending order
        assert_eq!(martin_word(4, 1, 1 << 20).unwrap().to_string(), "3210");
    }

    #[test]
    fn martin_contains_every_k_word_once() {
        for (q, k) in [(2u8, 1u32), (2, 2), (2, 3), (2, 4), (3, 1), (3, 2), (3, 3)] {
            let w = martin_word(q, k, 1 << 20).unwrap();
            let qk = (q as usize).pow(k);
            assert_eq!(w.len(), qk + k as usize - 1, "length q={q} k={k}");
            // exactly q^k windows, all distinct: every k-word occurs once
            assert_eq!(factor_set(&w, k as usize).len(), qk, "q={q} k={k}");
            // first k-1 symbols are 0, the k-th is q-1
            for i in 0..(k as usize - 1) {
                assert_eq!(w.symbols()[i], 0);
            }
            assert_eq!(w.symbols()[k as usize - 1], q - 1);
        }
    }

    #[test]
    fn martin_budget() {
        assert!(matches!(
            martin_word(2, 30, 1 << 10),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn extended_examples() {
        let w = extended_martin_word(2, 8, 1 << 20).unwrap();
        assert_eq!(w.to_string(), "00111010");
        assert_eq!(max_complexity(&w).unwrap(), 6);

        let w = extended_martin_word_appended(2, 2, 0, 1 << 20).unwrap();
        assert_eq!(w.to_string(), "011000");
        let p = complexity_profile(&w).unwrap();
        assert_eq!(p.values[1], 4);
        assert_eq!(p.values[2], 4);
        assert_eq!(p.max_value, 4);
        assert_eq!(p.argmax_lengths, BTreeSet::from([2, 3]));

        let w = extended_martin_word(2, 10, 1 << 20).unwrap();
        assert_eq!(w.to_string(), "0011101000");
        assert_eq!(max_complexity(&w).unwrap(), 8);
    }

    #[test]
    fn extended_attains_global_maximum() {
        for q in [2u8, 3] {
            for n in 1..=40 {
                let w = extended_martin_word(q, n, 1 << 20).unwrap();
                assert_eq!(w.len(), n);
                let p = complexity_profile(&w).unwrap();
                assert_eq!(p.max_value, global_k(q, n).unwrap(), "q={q} n={n}");
                let r = global_r(q, n).unwrap();
                assert!(
                    p.argmax_lengths.is_subset(&r),
                    "q={q} n={n} argmax={:?} R={:?}",
                    p.argmax_lengths,
                    r
                );
            }
        }
    }
}
