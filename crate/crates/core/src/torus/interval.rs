//! Exact interval arithmetic with rational endpoints.
//!
//! Used for conservative range bounds of polynomials over boxes: the natural
//! extension evaluates each term over the box and sums. Overestimates are
//! possible but containment verdicts are always sound.

use num_traits::Zero;

use crate::poly::Polynomial;
use crate::rational::{rational_to_f64, Rational};

/// Closed interval `[lo, hi]` with rational endpoints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatInterval {
    pub lo: Rational,
    pub hi: Rational,
}

impl RatInterval {
    pub fn new(lo: Rational, hi: Rational) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        RatInterval { lo, hi }
    }

    pub fn point(value: Rational) -> Self {
        RatInterval {
            lo: value.clone(),
            hi: value,
        }
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, value: &Rational) -> bool {
        &self.lo <= value && value <= &self.hi
    }

    pub fn contains_interval(&self, other: &RatInterval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn overlaps(&self, other: &RatInterval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / Rational::from_integer(2.into())
    }

    pub fn add(&self, other: &RatInterval) -> RatInterval {
        RatInterval {
            lo: &self.lo + &other.lo,
            hi: &self.hi + &other.hi,
        }
    }

    pub fn neg(&self) -> RatInterval {
        RatInterval {
            lo: -self.hi.clone(),
            hi: -self.lo.clone(),
        }
    }

    pub fn mul(&self, other: &RatInterval) -> RatInterval {
        let products = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let lo = products.iter().min().expect("nonempty").clone();
        let hi = products.iter().max().expect("nonempty").clone();
        RatInterval { lo, hi }
    }

    pub fn scale(&self, factor: &Rational) -> RatInterval {
        let a = &self.lo * factor;
        let b = &self.hi * factor;
        if a <= b {
            RatInterval { lo: a, hi: b }
        } else {
            RatInterval { lo: b, hi: a }
        }
    }

    /// Tight power of an interval.
    pub fn pow(&self, exponent: u32) -> RatInterval {
        if exponent == 0 {
            return RatInterval::point(Rational::from_integer(1.into()));
        }
        let lo_pow = pow_rational(&self.lo, exponent);
        let hi_pow = pow_rational(&self.hi, exponent);
        if exponent % 2 == 1 || self.lo >= Rational::zero() {
            RatInterval {
                lo: lo_pow,
                hi: hi_pow,
            }
        } else if self.hi <= Rational::zero() {
            RatInterval {
                lo: hi_pow,
                hi: lo_pow,
            }
        } else {
            RatInterval {
                lo: Rational::zero(),
                hi: lo_pow.max(hi_pow),
            }
        }
    }
}

fn pow_rational(base: &Rational, exponent: u32) -> Rational {
    let mut out = Rational::from_integer(1.into());
    for _ in 0..exponent {
        out *= base;
    }
    out
}

/// Axis-aligned box with rational bounds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatBox {
    intervals: Vec<RatInterval>,
}

impl RatBox {
    pub fn new(intervals: Vec<RatInterval>) -> Self {
        RatBox { intervals }
    }

    pub fn dimension(&self) -> usize {
        self.intervals.len()
    }

    pub fn intervals(&self) -> &[RatInterval] {
        &self.intervals
    }

    pub fn interval(&self, axis: usize) -> &RatInterval {
        &self.intervals[axis]
    }

    pub fn contains_point(&self, point: &[Rational]) -> bool {
        point.len() == self.dimension()
            && self
                .intervals
                .iter()
                .zip(point)
                .all(|(interval, value)| interval.contains(value))
    }

    pub fn contains_origin_strictly(&self) -> bool {
        self.intervals
            .iter()
            .all(|i| i.lo < Rational::zero() && Rational::zero() < i.hi)
    }

    /// All `2^d` corner points.
    pub fn vertices(&self) -> Vec<Vec<Rational>> {
        let d = self.dimension();
        let mut out = Vec::with_capacity(1 << d);
        for mask in 0..(1usize << d) {
            let vertex = (0..d)
                .map(|axis| {
                    if mask & (1 << axis) == 0 {
                        self.intervals[axis].lo.clone()
                    } else {
                        self.intervals[axis].hi.clone()
                    }
                })
                .collect();
            out.push(vertex);
        }
        out
    }

    /// Floating-point bounds `(lo, hi)` per axis.
    pub fn bounds_f64(&self) -> Vec<(f64, f64)> {
        self.intervals
            .iter()
            .map(|i| (rational_to_f64(&i.lo), rational_to_f64(&i.hi)))
            .collect()
    }

    pub fn contains_f64(&self, point: &[f64]) -> bool {
        self.bounds_f64()
            .iter()
            .zip(point)
            .all(|((lo, hi), v)| lo <= v && v <= hi)
    }
}

/// Natural-extension range bound of a polynomial over a box.
pub fn interval_eval(p: &Polynomial, domain: &RatBox) -> RatInterval {
    assert_eq!(p.variable_count(), domain.dimension());
    let mut range = RatInterval::point(Rational::zero());
    for (mono, coeff) in p.terms() {
        let mut term = RatInterval::point(coeff.clone());
        for (axis, &e) in mono.exponents().iter().enumerate() {
            if e > 0 {
                term = term.mul(&domain.interval(axis).pow(e));
            }
        }
        range = range.add(&term);
    }
    range
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rational, rational_frac};

    fn interval(lo: i64, hi: i64) -> RatInterval {
        RatInterval::new(rational(lo), rational(hi))
    }

    #[test]
    fn even_powers_clamp_at_zero() {
        let i = interval(-1, 2);
        assert_eq!(i.pow(2), RatInterval::new(rational(0), rational(4)));
        assert_eq!(i.pow(3), RatInterval::new(rational(-1), rational(8)));
    }

    #[test]
    fn negation_image_of_a_symmetric_box_is_itself() {
        let domain = RatBox::new(vec![interval(-1, 1)]);
        let sigma = Polynomial::parse("-x1", &["x1"]).unwrap();
        let image = interval_eval(&sigma, &domain);
        assert!(domain.interval(0).contains_interval(&image));
    }

    #[test]
    fn range_bound_is_sound_on_samples() {
        let domain = RatBox::new(vec![interval(-1, 2), interval(0, 1)]);
        let p = Polynomial::parse("x1^2*x2 - 1/2*x1 + x2", &["x1", "x2"]).unwrap();
        let range = interval_eval(&p, &domain);
        for vertex in domain.vertices() {
            let value = p.evaluate(&vertex).unwrap();
            assert!(range.contains(&value));
        }
        let inner = vec![rational_frac(1, 3), rational_frac(2, 5)];
        assert!(range.contains(&p.evaluate(&inner).unwrap()));
    }

    #[test]
    fn vertices_enumerate_all_corners() {
        let domain = RatBox::new(vec![interval(-1, 1), interval(0, 2)]);
        assert_eq!(domain.vertices().len(), 4);
        assert!(domain.contains_point(&[rational(0), rational(1)]));
        assert!(!domain.contains_point(&[rational(0), rational(3)]));
    }
}
