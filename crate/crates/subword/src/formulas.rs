//! Closed formulas for M(N) at de Bruijn lengths N = q^k + k - 1, in
//! arbitrary precision. The general (q!)^(q^(k-1)) formula is kept
//! separate from the binary 2^(2^(k-1)) one so the two can be
//! cross-asserted, and both are gated behind enumeration checks at small
//! sizes elsewhere in the test suite.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::{checked_pow, Error, Result};

/// Exponents larger than this are refused rather than computed.
pub const DEFAULT_EXPONENT_BUDGET: u64 = 1 << 20;

/// The de Bruijn length q^k + k - 1.
pub fn de_bruijn_length(q: u8, k: u32) -> Result<usize> {
    let n = checked_pow(q, k).ok_or(Error::Overflow)? + k as u128 - 1;
    usize::try_from(n).map_err(|_| Error::Overflow)
}

/// The k with N = q^k + k - 1, if any.
pub fn de_bruijn_order(q: u8, n: usize) -> Option<u32> {
    (1..)
        .take_while(|&k| checked_pow(q, k).is_some_and(|p| p + k as u128 - 1 <= n as u128))
        .find(|&k| de_bruijn_length(q, k).is_ok_and(|len| len == n))
}

/// M(2^k + k - 1) = 2^(2^(k-1)) over the binary alphabet.
pub fn m_at_debruijn_length_binary(k: u32) -> Result<BigUint> {
    assert!(k >= 1);
    let exp = checked_pow(2, k - 1).ok_or(Error::Overflow)?;
    if exp > DEFAULT_EXPONENT_BUDGET as u128 {
        return Err(Error::BudgetExceeded {
            needed: exp,
            budget: DEFAULT_EXPONENT_BUDGET as u128,
            unit: "exponent",
        });
    }
    Ok(BigUint::from(2u32).pow(exp as u32))
}

fn factorial(q: u8) -> BigUint {
    (1..=q as u64).map(BigUint::from).fold(BigUint::one(), |a, b| a * b)
}

/// M(q^k + k - 1) = (q!)^(q^(k-1)) for q >= 2.
pub fn m_at_debruijn_length(q: u8, k: u32) -> Result<BigUint> {
    assert!(q >= 2 && k >= 1);
    let exp = checked_pow(q, k - 1).ok_or(Error::Overflow)?;
    if exp > DEFAULT_EXPONENT_BUDGET as u128 {
        return Err(Error::BudgetExceeded {
            needed: exp,
            budget: DEFAULT_EXPONENT_BUDGET as u128,
            unit: "exponent",
        });
    }
    Ok(factorial(q).pow(exp as u32))
}

/// Number of directed Hamiltonian cycles in B(2,k): 2^(2^(k-1) - k).
pub fn hamiltonian_cycle_count_formula(k: u32) -> Result<BigUint> {
    assert!(k >= 1);
    let exp = checked_pow(2, k - 1).ok_or(Error::Overflow)?;
    if exp < k as u128 {
        return Err(Error::FormulaOutOfRange(k));
    }
    let exp = exp - k as u128;
    if exp > DEFAULT_EXPONENT_BUDGET as u128 {
        return Err(Error::BudgetExceeded {
            needed: exp,
            budget: DEFAULT_EXPONENT_BUDGET as u128,
            unit: "exponent",
        });
    }
    Ok(BigUint::from(2u32).pow(exp as u32))
}

/// The proof-structure decomposition M = q^k * (cycle count): every
/// maximal-complexity word of de Bruijn length starts at one of the q^k
/// vertices of some Hamiltonian cycle. The cycle count is derived as
/// M / q^k, with integrality verified.
pub fn decompose_m_theorem(q: u8, k: u32) -> Result<(BigUint, BigUint)> {
    let starts = BigUint::from(q as u64).pow(k);
    let m = m_at_debruijn_length(q, k)?;
    if !(&m % &starts).is_zero() {
        return Err(Error::MethodDisagreement(format!(
            "M = {m} is not divisible by q^k = {starts}"
        )));
    }
    let cycles = &m / &starts;
    Ok((starts, cycles))
}
