//! Exact polynomial fitting of integer-valued windows by finite differences.

use num::BigInt;
use num::Zero;

/// Degree of the unique polynomial interpolating consecutive values, checked
/// for consistency across the whole window: returns None when no polynomial
/// of degree < window length fits, Some(-1) for the identically-zero window.
pub fn polynomial_degree(values: &[BigInt]) -> Option<i64> {
    if values.is_empty() {
        return None;
    }
    if values.iter().all(|v| v.is_zero()) {
        return Some(-1);
    }
    let mut diffs: Vec<BigInt> = values.to_vec();
    let mut degree = 0i64;
    loop {
        if diffs.iter().all(|v| v.is_zero()) {
            return Some(degree - 1);
        }
        if diffs.len() == 1 {
            // Ran out of window before the differences vanished.
            return None;
        }
        diffs = diffs.windows(2).map(|w| &w[1] - &w[0]).collect();
        degree += 1;
    }
}

/// Degree fit restricted to values at even (parity 0) or odd (parity 1)
/// indices of a window starting at `offset`.
pub fn parity_degree(values: &[BigInt], offset: usize, parity: usize) -> Option<i64> {
    let sub: Vec<BigInt> = values
        .iter()
        .enumerate()
        .filter(|(i, _)| (i + offset) % 2 == parity)
        .map(|(_, v)| v.clone())
        .collect();
    polynomial_degree(&sub)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn degrees() {
        assert_eq!(polynomial_degree(&ints(&[0, 0, 0, 0])), Some(-1));
        assert_eq!(polynomial_degree(&ints(&[5, 5, 5, 5])), Some(0));
        assert_eq!(polynomial_degree(&ints(&[1, 2, 3, 4, 5])), Some(1));
        assert_eq!(polynomial_degree(&ints(&[1, 4, 9, 16, 25])), Some(2));
        assert_eq!(polynomial_degree(&ints(&[1, 2, 4, 8])), None);
    }
}
