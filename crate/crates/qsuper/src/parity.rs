//! Graded index sets `I_{m|n} = {1, ..., m+n}` with `[a] = 0` iff `a <= m`.

use serde::Serialize;

use crate::laurent::Laurent;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct IndexSet {
    pub even: usize,
    pub odd: usize,
}

impl IndexSet {
    pub const fn new(even: usize, odd: usize) -> Self {
        IndexSet { even, odd }
    }

    pub fn len(&self) -> usize {
        self.even + self.odd
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn contains(&self, a: usize) -> bool {
        a >= 1 && a <= self.len()
    }

    /// `[a]`, for 1-based `a`.
    pub fn odd(&self, a: usize) -> bool {
        debug_assert!(self.contains(a));
        a > self.even
    }

    pub fn par(&self, a: usize) -> u8 {
        self.odd(a) as u8
    }

    /// `q_a^power`.
    pub fn q(&self, a: usize, power: i32) -> Laurent {
        Laurent::q_parity(self.odd(a), power)
    }

    pub fn iter(&self) -> std::ops::RangeInclusive<usize> {
        1..=self.len()
    }
}

/// `(-1)^e` as a Laurent constant.
pub fn sign(e: u32) -> Laurent {
    Laurent::sign(e % 2 == 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parities() {
        let s = IndexSet::new(2, 1);
        assert!(!s.odd(1) && !s.odd(2) && s.odd(3));
        assert_eq!(s.q(3, 1), Laurent::q_pow(-1));
        assert_eq!(s.q(1, -1), Laurent::q_pow(-1));
    }
}
