//! Weak compositions, multinomials and Narayana numbers.

use num_bigint::BigInt;
use num_traits::One;

use super::rational::{big, binomial, factorial, Rational};
use crate::error::{Error, Result};

/// A weak composition: `parts.len()` nonnegative parts summing to `weight`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Composition {
    parts: Vec<u32>,
}

impl Composition {
    pub fn new(parts: Vec<u32>) -> Self {
        Self { parts }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn weight(&self) -> u64 {
        self.parts.iter().map(|&p| p as u64).sum()
    }

    /// k! / (k_1! ... k_N!)
    pub fn multinomial(&self) -> BigInt {
        let mut acc = factorial(self.weight());
        for &p in &self.parts {
            acc /= factorial(p as u64);
        }
        acc
    }
}

/// Iterator over weak compositions of `k` into `n` parts, in descending
/// lexicographic order: (k,0,..,0) first, (0,..,0,k) last.
pub struct Compositions {
    next: Option<Vec<u32>>,
}

pub fn compositions(k: u32, n: usize) -> Compositions {
    let next = if n == 0 {
        if k == 0 {
            Some(Vec::new())
        } else {
            None
        }
    } else {
        let mut v = vec![0; n];
        v[0] = k;
        Some(v)
    };
    Compositions { next }
}

impl Iterator for Compositions {
    type Item = Composition;

    fn next(&mut self) -> Option<Composition> {
        let cur = self.next.take()?;
        let n = cur.len();
        // Successor: find the rightmost nonzero part before the last slot,
        // move one unit right and gather everything behind it.
        if n >= 2 {
            if let Some(i) = (0..n - 1).rev().find(|&i| cur[i] > 0) {
                let mut nx = cur.clone();
                let tail: u32 = nx[i + 1..].iter().sum();
                nx[i] -= 1;
                for v in &mut nx[i + 1..] {
                    *v = 0;
                }
                nx[i + 1] = tail + 1;
                self.next = Some(nx);
            }
        }
        Some(Composition::new(cur))
    }
}

/// Number of weak compositions of k into n parts.
pub fn composition_count(k: u32, n: usize) -> BigInt {
    if n == 0 {
        return if k == 0 { BigInt::one() } else { BigInt::from(0) };
    }
    binomial(k as u64 + n as u64 - 1, n as u64 - 1)
}

/// N_{q,k} = (1/q) C(q,k) C(q,k-1).
pub fn narayana(q: u32, k: u32) -> Result<Rational> {
    if q == 0 || k == 0 || k > q {
        return Err(Error::Domain(format!(
            "Narayana index out of range: q={q}, k={k} (need 1 <= k <= q)"
        )));
    }
    let n = binomial(q as u64, k as u64) * binomial(q as u64, k as u64 - 1);
    Ok(big(n) / big(BigInt::from(q)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::math::rational::int;
    use proptest::prelude::*;

    fn parts(k: u32, n: usize) -> Vec<Vec<u32>> {
        compositions(k, n).map(|c| c.parts().to_vec()).collect()
    }

    #[test]
    fn small_enumerations() {
        assert_eq!(parts(1, 2), vec![vec![1, 0], vec![0, 1]]);
        assert_eq!(parts(2, 2), vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
        assert_eq!(parts(0, 3), vec![vec![0, 0, 0]]);
        assert_eq!(parts(3, 1), vec![vec![3]]);
        assert_eq!(compositions(3, 3).count(), 10);
    }

    #[test]
    fn multinomial_values() {
        assert_eq!(Composition::new(vec![2, 1, 1]).multinomial(), BigInt::from(12));
        assert_eq!(Composition::new(vec![0, 0]).multinomial(), BigInt::from(1));
    }

    #[test]
    fn narayana_rows() {
        assert_eq!(narayana(2, 1).unwrap(), int(1));
        assert_eq!(narayana(2, 2).unwrap(), int(1));
        let row: Vec<_> = (1..=3).map(|k| narayana(3, k).unwrap()).collect();
        assert_eq!(row, vec![int(1), int(3), int(1)]);
        assert!(narayana(3, 4).is_err());
        assert!(narayana(3, 0).is_err());
    }

    proptest! {
        #[test]
        fn count_matches_binomial(k in 0u32..=6, n in 1usize..=6) {
            let all: Vec<_> = compositions(k, n).collect();
            prop_assert_eq!(BigInt::from(all.len()), composition_count(k, n));
            let mut seen = std::collections::HashSet::new();
            for c in &all {
                prop_assert_eq!(c.weight(), k as u64);
                prop_assert_eq!(c.parts().len(), n);
                prop_assert!(seen.insert(c.clone()));
            }
        }

        #[test]
        fn narayana_row_sums_are_catalan(q in 1u32..12) {
            let s: Rational = (1..=q).map(|k| narayana(q, k).unwrap()).sum();
            let catalan = big(binomial(2 * q as u64, q as u64)) / int(q as i64 + 1);
            prop_assert_eq!(s, catalan);
        }
    }
}
