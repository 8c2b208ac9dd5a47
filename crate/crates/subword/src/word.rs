//! Words over a q-letter alphabet and their subword-complexity profiles.
//!
//! Letters are the integers 0..q-1 under their natural order, rendered as
//! the characters 0-9a-z. All types are immutable after construction and
//! all operations are pure.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use crate::{Error, Result};

/// Alphabet of q letters, 1 <= q <= 36. Letter i renders as a digit or a
/// lowercase letter (0-9 then a-z).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Alphabet {
    q: u8,
}

impl Alphabet {
    pub fn new(q: u8) -> Result<Self> {
        if q == 0 || q > 36 {
            return Err(Error::BadAlphabet(q as u64));
        }
        Ok(Alphabet { q })
    }

    pub fn size(&self) -> u8 {
        self.q
    }

    pub fn letter_to_char(letter: u8) -> char {
        if letter < 10 {
            (b'0' + letter) as char
        } else {
            (b'a' + letter - 10) as char
        }
    }

    pub fn char_to_letter(c: char) -> Result<u8> {
        match c {
            '0'..='9' => Ok(c as u8 - b'0'),
            'a'..='z' => Ok(c as u8 - b'a' + 10),
            _ => Err(Error::BadChar(c)),
        }
    }
}

/// A finite word: a sequence of symbols, each below the alphabet size.
/// The empty word is representable but rejected by profile operations.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Word {
    q: u8,
    symbols: Vec<u8>,
}

impl Word {
    pub fn new(alphabet: Alphabet, symbols: Vec<u8>) -> Result<Self> {
        let q = alphabet.size();
        for &s in &symbols {
            if s >= q {
                return Err(Error::SymbolOutOfRange { symbol: s, q });
            }
        }
        Ok(Word { q, symbols })
    }

    pub fn from_symbols(q: u8, symbols: Vec<u8>) -> Result<Self> {
        Word::new(Alphabet::new(q)?, symbols)
    }

    /// Parses the text format: characters 0-9a-z, optionally preceded by a
    /// "q=<int>:" prefix. Without the prefix, q defaults to the maximum
    /// symbol value plus one (at least 1).
    pub fn parse(text: &str) -> Result<Self> {
        let (q_given, body) = match text.split_once(':') {
            Some((head, rest)) if head.starts_with("q=") => {
                let q: u64 = head[2..]
                    .parse()
                    .map_err(|_| Error::BadChar(head.chars().nth(2).unwrap_or('?')))?;
                if q == 0 || q > 36 {
                    return Err(Error::BadAlphabet(q));
                }
                (Some(q as u8), rest)
            }
            _ => (None, text),
        };
        let mut symbols = Vec::with_capacity(body.len());
        for c in body.chars() {
            symbols.push(Alphabet::char_to_letter(c)?);
        }
        let q = match q_given {
            Some(q) => q,
            None => symbols.iter().copied().max().map_or(1, |m| m + 1),
        };
        Word::from_symbols(q, symbols)
    }

    pub fn alphabet(&self) -> Alphabet {
        Alphabet { q: self.q }
    }

    pub fn q(&self) -> u8 {
        self.q
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[u8] {
        &self.symbols
    }

    pub fn reversed(&self) -> Word {
        let mut symbols = self.symbols.clone();
        symbols.reverse();
        Word { q: self.q, symbols }
    }

    /// Applies a letter permutation: symbol s becomes perm[s].
    /// perm must be a permutation of 0..q-1.
    pub fn permuted(&self, perm: &[u8]) -> Result<Word> {
        assert_eq!(perm.len(), self.q as usize, "permutation size must equal q");
        let symbols = self.symbols.iter().map(|&s| perm[s as usize]).collect();
        Word::from_symbols(self.q, symbols)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &s in &self.symbols {
            write!(f, "{}", Alphabet::letter_to_char(s))?;
        }
        Ok(())
    }
}

/// The vector (f_w(1), ..., f_w(N)) together with its maximum C(w) and the
/// set of lengths attaining it.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ComplexityProfile {
    pub values: Vec<u64>,
    pub max_value: u64,
    pub argmax_lengths: BTreeSet<usize>,
}

/// F_n(w): all distinct factors of w of length n. Empty for n > |w|.
pub fn factor_set(w: &Word, n: usize) -> BTreeSet<Word> {
    assert!(n >= 1, "factor length must be positive");
    let mut out = BTreeSet::new();
    if n > w.len() {
        return out;
    }
    let mut seen: HashSet<&[u8]> = HashSet::new();
    for window in w.symbols().windows(n) {
        if seen.insert(window) {
            out.insert(Word {
                q: w.q,
                symbols: window.to_vec(),
            });
        }
    }
    out
}

/// Counts of distinct length-n windows for every n in 1..=N, without
/// materializing the factors. Window codes are base-q integers while they
/// fit in a u64; longer windows fall back to hashing the symbol slices.
fn factor_counts(symbols: &[u8], q: u8) -> Vec<u64> {
    let n_total = symbols.len();
    let q = q as u64;
    let mut counts = Vec::with_capacity(n_total);
    // codes[i] holds the base-q code of the window starting at i; its
    // length grows by one per outer iteration.
    let mut codes: Vec<u64> = vec![0; n_total];
    let mut scratch: Vec<u64> = Vec::with_capacity(n_total);
    let mut overflowed = false;
    for n in 1..=n_total {
        let windows = n_total - n + 1;
        if !overflowed {
            for i in 0..windows {
                match codes[i]
                    .checked_mul(q)
                    .and_then(|c| c.checked_add(symbols[i + n - 1] as u64))
                {
                    Some(c) => codes[i] = c,
                    None => {
                        overflowed = true;
                        break;
                    }
                }
            }
        }
        if overflowed {
            let mut seen: HashSet<&[u8]> = HashSet::with_capacity(windows);
            for window in symbols.windows(n) {
                seen.insert(window);
            }
            counts.push(seen.len() as u64);
        } else {
            scratch.clear();
            scratch.extend_from_slice(&codes[..windows]);
            scratch.sort_unstable();
            scratch.dedup();
            counts.push(scratch.len() as u64);
        }
    }
    counts
}

/// The complexity profile of a nonempty word.
pub fn complexity_profile(w: &Word) -> Result<ComplexityProfile> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    let values = factor_counts(w.symbols(), w.q());
    let max_value = *values.iter().max().expect("nonempty");
    let argmax_lengths = values
        .iter()
        .enumerate()
        .filter(|(_, &v)| v == max_value)
        .map(|(i, _)| i + 1)
        .collect();
    Ok(ComplexityProfile {
        values,
        max_value,
        argmax_lengths,
    })
}

/// C(w), the maximum of the profile.
pub fn max_complexity(w: &Word) -> Result<u64> {
    Ok(complexity_profile(w)?.max_value)
}

/// Internal fast path shared with the brute-force enumerator: maximum
/// profile value and its argmax lengths, straight from the symbol slice.
pub(crate) fn max_and_argmax(symbols: &[u8], q: u8) -> (u64, Vec<usize>) {
    let values = factor_counts(symbols, q);
    let max = *values.iter().max().expect("nonempty");
    let argmax = values
        .iter()
        .enumerate()
        .filter(|(_, &v)| v == max)
        .map(|(i, _)| i + 1)
        .collect();
    (max, argmax)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(text: &str) -> Word {
        Word::parse(text).unwrap()
    }

    #[test]
    fn factor_set_examples() {
        let f = factor_set(&w("00101"), 2);
        let expect: BTreeSet<Word> = ["00", "01", "10"]
            .iter()
            .map(|s| Word::from_symbols(2, s.bytes().map(|b| b - b'0').collect()).unwrap())
            .collect();
        assert_eq!(f, expect);
        assert_eq!(f.len(), 3);

        assert_eq!(factor_set(&w("010"), 1).len(), 2);
        assert!(factor_set(&w("010"), 4).is_empty());
    }

    #[test]
    fn profile_examples() {
        let p = complexity_profile(&w("010")).unwrap();
        assert_eq!(p.values, vec![2, 2, 1]);
        assert_eq!(p.max_value, 2);
        assert_eq!(p.argmax_lengths, BTreeSet::from([1, 2]));

        let p = complexity_profile(&w("000")).unwrap();
        assert_eq!(p.values, vec![1, 1, 1]);
        assert_eq!(p.max_value, 1);

        let p = complexity_profile(&w("0011101000")).unwrap();
        assert_eq!(p.values, vec![2, 4, 8, 7, 6, 5, 4, 3, 2, 1]);
        assert_eq!(p.max_value, 8);
        assert_eq!(p.argmax_lengths, BTreeSet::from([3]));
    }

    #[test]
    fn max_complexity_examples() {
        assert_eq!(max_complexity(&w("110")).unwrap(), 2);
        assert_eq!(max_complexity(&w("0000000")).unwrap(), 1);
        assert_eq!(max_complexity(&w("01100")).unwrap(), 4);
    }

    #[test]
    fn empty_word_rejected() {
        let e = Word::from_symbols(2, vec![]).unwrap();
        assert!(matches!(complexity_profile(&e), Err(Error::EmptyWord)));
        assert!(matches!(max_complexity(&e), Err(Error::EmptyWord)));
    }

    #[test]
    fn parse_and_render() {
        let v = Word::parse("q=3:012").unwrap();
        assert_eq!(v.q(), 3);
        assert_eq!(v.to_string(), "012");
        // default q is max symbol + 1
        assert_eq!(w("010").q(), 2);
        assert_eq!(w("0").q(), 1);
        assert_eq!(Word::parse("a9").unwrap().q(), 11);
        assert!(Word::parse("01!").is_err());
        assert!(Word::parse("q=40:0").is_err());
        // symbol outside declared alphabet
        assert!(Word::parse("q=2:012").is_err());
    }

    #[test]
    fn long_window_fallback_matches_factor_set() {
        // 70 symbols over q=3: window codes overflow u64 beyond n=40.
        let symbols: Vec<u8> = (0..70u32).map(|i| ((i * i + i / 3) % 3) as u8).collect();
        let word = Word::from_symbols(3, symbols).unwrap();
        let p = complexity_profile(&word).unwrap();
        for n in [1usize, 39, 40, 41, 69, 70] {
            assert_eq!(
                p.values[n - 1],
                factor_set(&word, n).len() as u64,
                "n={n}"
            );
        }
    }

    fn arb_word(max_q: u8, max_len: usize) -> impl Strategy<Value = Word> {
        (1..=max_q).prop_flat_map(move |q| {
            prop::collection::vec(0..q, 1..=max_len)
                .prop_map(move |s| Word::from_symbols(q, s).unwrap())
        })
    }

    proptest! {
        #[test]
        fn factor_count_bound(word in arb_word(4, 24)) {
            let p = complexity_profile(&word).unwrap();
            let n_total = word.len() as u64;
            for (i, &v) in p.values.iter().enumerate() {
                let n = (i + 1) as u64;
                let qn = (word.q() as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
                let bound = qn.min((n_total - n + 1) as u128);
                prop_assert!(v >= 1 && v as u128 <= bound);
            }
            // the single factor of full length is the word itself
            prop_assert_eq!(*p.values.last().unwrap(), 1);
            let full = factor_set(&word, word.len());
            prop_assert_eq!(full.into_iter().next().unwrap(), word.clone());
        }

        #[test]
        fn reversal_preserves_counts(word in arb_word(4, 20)) {
            let rev = word.reversed();
            for n in 1..=word.len() {
                prop_assert_eq!(factor_set(&word, n).len(), factor_set(&rev, n).len());
            }
        }

        #[test]
        fn letter_permutation_invariance(word in arb_word(4, 20), seed in 0u64..24) {
            let q = word.q() as usize;
            let mut perm: Vec<u8> = (0..q as u8).collect();
            // cheap deterministic shuffle
            let mut s = seed;
            for i in (1..q).rev() {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1);
                perm.swap(i, (s % (i as u64 + 1)) as usize);
            }
            let permuted = word.permuted(&perm).unwrap();
            prop_assert_eq!(
                complexity_profile(&word).unwrap(),
                complexity_profile(&permuted).unwrap()
            );
        }
    }
}
