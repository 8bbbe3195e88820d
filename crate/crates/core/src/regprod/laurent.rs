//! Truncated Laurent series in `s` about 0 with ball coefficients.

use crate::error::{Error, Result};
use crate::mpcore::ApproxReal;

/// `Σ_{k=lowest}^{truncation} c_k s^k + O(s^(truncation+1))`.
#[derive(Clone, Debug)]
pub struct LaurentSeries {
    lowest_order: i32,
    coefficients: Vec<ApproxReal>,
}

impl LaurentSeries {
    pub fn new(lowest_order: i32, coefficients: Vec<ApproxReal>) -> Result<Self> {
        if coefficients.is_empty() {
            return Err(Error::Domain("a Laurent series needs at least one coefficient".into()));
        }
        if lowest_order < -2 {
            return Err(Error::Domain(format!("pole order {} is not supported", -lowest_order)));
        }
        Ok(Self {
            lowest_order,
            coefficients,
        })
    }

    pub fn lowest_order(&self) -> i32 {
        self.lowest_order
    }

    pub fn truncation_order(&self) -> i32 {
        self.lowest_order + self.coefficients.len() as i32 - 1
    }

    pub fn coefficients(&self) -> &[ApproxReal] {
        &self.coefficients
    }

    /// Coefficient of `s^k`; `None` past the truncation order.
    pub fn coefficient(&self, k: i32) -> Option<ApproxReal> {
        if k > self.truncation_order() {
            return None;
        }
        if k < self.lowest_order {
            let prec = self.coefficients[0].prec();
            return Some(ApproxReal::from_int(0, prec));
        }
        Some(self.coefficients[(k - self.lowest_order) as usize].clone())
    }

    pub fn add(&self, other: &Self) -> Self {
        let lo = self.lowest_order.min(other.lowest_order);
        let hi = self.truncation_order().min(other.truncation_order());
        let coefficients = (lo..=hi)
            .map(|k| {
                let a = self.coefficient(k).expect("within truncation");
                let b = other.coefficient(k).expect("within truncation");
                &a + &b
            })
            .collect();
        Self {
            lowest_order: lo,
            coefficients,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let lo = self.lowest_order + other.lowest_order;
        let hi = (self.truncation_order() + other.lowest_order).min(other.truncation_order() + self.lowest_order);
        let prec = self.coefficients[0].prec();
        let coefficients = (lo..=hi)
            .map(|k| {
                let mut acc = ApproxReal::from_int(0, prec);
                for (i, a) in self.coefficients.iter().enumerate() {
                    let j = k - self.lowest_order - i as i32 - other.lowest_order;
                    if j >= 0 && (j as usize) < other.coefficients.len() {
                        acc = &acc + &(a * &other.coefficients[j as usize]);
                    }
                }
                acc
            })
            .collect();
        Self {
            lowest_order: lo,
            coefficients,
        }
    }

    /// `1 / self`; the leading coefficient must be bounded away from zero.
    pub fn invert(&self) -> Result<Self> {
        let a0 = &self.coefficients[0];
        if !a0.mag_lower().is_normal() {
            return Err(Error::Domain("leading coefficient may vanish".into()));
        }
        let n = self.coefficients.len();
        let prec = a0.prec();
        let one = ApproxReal::from_int(1, prec);
        let mut b: Vec<ApproxReal> = Vec::with_capacity(n);
        b.push(one.checked_div(a0)?);
        for k in 1..n {
            let mut acc = ApproxReal::from_int(0, prec);
            for i in 1..=k {
                acc = &acc + &(&self.coefficients[i] * &b[k - i]);
            }
            b.push((-acc).checked_div(a0)?);
        }
        if -self.lowest_order < -2 {
            return Err(Error::Domain("inverse has a pole of order above 2".into()));
        }
        Ok(Self {
            lowest_order: -self.lowest_order,
            coefficients: b,
        })
    }

    pub fn scale(&self, c: &ApproxReal) -> Self {
        Self {
            lowest_order: self.lowest_order,
            coefficients: self.coefficients.iter().map(|a| a * c).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mpcore::agreement_digits;

    fn r(n: i64, d: i64) -> ApproxReal {
        ApproxReal::from_ratio(n, d, 128)
    }

    #[test]
    fn inverse_of_one_minus_s() {
        // 1/(1-s) = 1 + s + s^2 + s^3
        let a = LaurentSeries::new(0, vec![r(1, 1), r(-1, 1), r(0, 1), r(0, 1)]).unwrap();
        let b = a.invert().unwrap();
        assert_eq!(b.truncation_order(), 3);
        for k in 0..=3 {
            assert!(agreement_digits(&b.coefficient(k).unwrap(), &r(1, 1)) > 30.0);
        }
        let p = a.mul(&b);
        assert!(agreement_digits(&p.coefficient(0).unwrap(), &r(1, 1)) > 30.0);
        assert!(p.coefficient(2).unwrap().mag_upper() < 1e-30);
    }

    #[test]
    fn truncation_bookkeeping() {
        let a = LaurentSeries::new(1, vec![r(1, 1), r(1, 2), r(1, 6), r(1, 24)]).unwrap();
        assert_eq!(a.truncation_order(), 4);
        let inv = a.invert().unwrap();
        assert_eq!(inv.lowest_order(), -1);
        assert_eq!(inv.truncation_order(), 2);
        let b = LaurentSeries::new(0, vec![r(2, 1), r(3, 1)]).unwrap();
        assert_eq!(a.mul(&b).truncation_order(), 2);
        assert_eq!(a.add(&b).truncation_order(), 1);
        assert!(a.coefficient(5).is_none());
        assert!(LaurentSeries::new(-3, vec![r(1, 1)]).is_err());
    }
}
