//! The Thue–Morse sign sequence and the odious/evil split of the positive
//! integers.

use std::fmt;

use crate::error::{Error, Result};

/// `(-1)^(number of ones in the binary expansion of n)`.
#[inline]
pub fn tm_sign(n: u64) -> i8 {
    if n.count_ones() & 1 == 0 {
        1
    } else {
        -1
    }
}

/// Binary digit sum parity as 0/1.
#[inline]
pub fn odious_indicator(n: u64) -> u8 {
    (n.count_ones() & 1) as u8
}

pub fn is_odious(n: u64) -> Result<bool> {
    if n == 0 {
        return Err(Error::Domain(
            "odious/evil sets contain positive integers only".into(),
        ));
    }
    Ok(odious_indicator(n) == 1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ParityClass {
    Odious,
    Evil,
}

impl ParityClass {
    pub fn of(n: u64) -> Result<Self> {
        Ok(if is_odious(n)? {
            ParityClass::Odious
        } else {
            ParityClass::Evil
        })
    }

    pub fn contains(self, n: u64) -> bool {
        n >= 1 && (odious_indicator(n) == 1) == (self == ParityClass::Odious)
    }

    pub fn other(self) -> Self {
        match self {
            ParityClass::Odious => ParityClass::Evil,
            ParityClass::Evil => ParityClass::Odious,
        }
    }

    /// Members in increasing order.
    pub fn members(self) -> impl Iterator<Item = u64> {
        (1u64..).filter(move |&n| self.contains(n))
    }
}

impl fmt::Display for ParityClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParityClass::Odious => f.write_str("odious"),
            ParityClass::Evil => f.write_str("evil"),
        }
    }
}

/// The k-th smallest member (1-based) of `class`.
pub fn nth_member(class: ParityClass, k: u64) -> Result<u64> {
    if k == 0 {
        return Err(Error::Domain("member index is 1-based".into()));
    }
    // each pair {2m, 2m+1} holds exactly one member of each class, so the
    // scan starts close to the answer
    let mut n = (2 * k).saturating_sub(2).max(1);
    let mut count = (1..n).filter(|&i| class.contains(i)).count() as u64;
    loop {
        if class.contains(n) {
            count += 1;
            if count == k {
                return Ok(n);
            }
        }
        n += 1;
    }
}
