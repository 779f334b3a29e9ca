use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Transforms applied while normalizing, in order: divide by `gcd`, optional sign flip,
/// optional exchange of the two indices, optional second sign flip.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairSwaps {
    pub gcd: i64,
    pub first_flip: bool,
    pub exchanged: bool,
    pub second_flip: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalizedPair {
    pub n1: i64,
    pub n2: i64,
    pub a: i64,
    pub b: i64,
    pub swaps: PairSwaps,
}

impl NormalizedPair {
    /// Recovers the input pair from the normalized one.
    pub fn original(&self) -> (i64, i64) {
        let (mut x, mut y) = (self.n1, self.n2);
        if self.swaps.second_flip {
            (x, y) = (-x, -y);
        }
        if self.swaps.exchanged {
            (x, y) = (y, x);
        }
        if self.swaps.first_flip {
            (x, y) = (-x, -y);
        }
        (x * self.swaps.gcd, y * self.swaps.gcd)
    }

    /// True when `(n1, n2)` is already in normal form.
    pub fn is_canonical(n1: i64, n2: i64) -> bool {
        matches!(normalize_pair(n1, n2), Ok(p) if p.n1 == n1 && p.n2 == n2)
    }

    pub fn check_invariants(&self) -> bool {
        let (n1, n2, a, b) = (self.n1, self.n2, self.a, self.b);
        if n1.gcd(&n2) != 1 || n1 * a + n2 * b != 1 || a >= b {
            return false;
        }
        let shape = if n1 * n2 >= 0 { n2 >= n1 && n1 >= 0 } else { 0 < n2 && n2 <= -n1 };
        let coeffs = if n1 != 0 { 0 < b && b <= n1.abs() && a.abs() < n2 } else { (a, b) == (0, 1) };
        shape && coeffs
    }
}

pub fn normalize_pair(n1: i64, n2: i64) -> Result<NormalizedPair> {
    if n1 == 0 && n2 == 0 {
        return Err(Error::InvalidInput("the pair (0, 0) carries no relation".into()));
    }
    let g = n1.gcd(&n2);
    let (mut x, mut y) = (n1 / g, n2 / g);
    let mut swaps = PairSwaps { gcd: g, first_flip: false, exchanged: false, second_flip: false };
    if x * y >= 0 {
        if x <= 0 && y <= 0 {
            (x, y) = (-x, -y);
            swaps.first_flip = true;
        }
        if x > y {
            (x, y) = (y, x);
            swaps.exchanged = true;
        }
    } else {
        if y < 0 {
            (x, y) = (-x, -y);
            swaps.first_flip = true;
        }
        if y > -x {
            (x, y) = (-y, -x);
            swaps.exchanged = true;
            swaps.second_flip = true;
        }
    }
    let (a, b) = if x == 0 {
        (0, 1)
    } else {
        let m = x.abs();
        let inv = y.extended_gcd(&m).x.mod_floor(&m);
        let b = if inv == 0 { m } else { inv };
        ((1 - y * b) / x, b)
    };
    Ok(NormalizedPair { n1: x, n2: y, a, b, swaps })
}

/// Normalized coprime pairs with `|n1| + |n2| <= bound`, ordered by `(|n1| + |n2|, n1, n2)`.
pub fn canonical_pairs(bound: u32) -> Vec<NormalizedPair> {
    let l = bound as i64;
    let mut out = Vec::new();
    for s in 1..=l {
        for n1 in -s..=s {
            for n2 in [s - n1.abs(), -(s - n1.abs())] {
                if NormalizedPair::is_canonical(n1, n2) && !out.iter().any(|p: &NormalizedPair| (p.n1, p.n2) == (n1, n2)) {
                    out.push(normalize_pair(n1, n2).unwrap());
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worked_pairs() {
        let p = normalize_pair(-3, 2).unwrap();
        assert_eq!((p.n1, p.n2, p.a, p.b), (-3, 2, 1, 2));
        let p = normalize_pair(0, 5).unwrap();
        assert_eq!((p.n1, p.n2, p.a, p.b), (0, 1, 0, 1));
        let p = normalize_pair(2, -4).unwrap();
        assert_eq!((p.n1, p.n2), (-2, 1));
        assert!(p.swaps.exchanged);
        assert_eq!(p.original(), (2, -4));
        let p = normalize_pair(1, 1).unwrap();
        assert_eq!((p.a, p.b), (0, 1));
        assert!(normalize_pair(0, 0).is_err());
    }

    #[test]
    fn all_small_pairs_satisfy_invariants() {
        for n1 in -12..=12 {
            for n2 in -12..=12 {
                if (n1, n2) == (0, 0) {
                    continue;
                }
                let p = normalize_pair(n1, n2).unwrap();
                assert!(p.check_invariants(), "{n1} {n2} -> {p:?}");
                assert_eq!(p.original(), (n1, n2));
            }
        }
    }

    #[test]
    fn pairs_up_to_two() {
        let v: Vec<(i64, i64)> = canonical_pairs(2).iter().map(|p| (p.n1, p.n2)).collect();
        assert_eq!(v, vec![(0, 1), (-1, 1), (1, 1)]);
    }
}
