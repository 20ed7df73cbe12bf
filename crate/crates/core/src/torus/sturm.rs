//! Exact real-root isolation for univariate rational polynomials.
//!
//! Sturm chains on the square-free part give exact root counts on half-open
//! intervals `(a, b]`; recursive bisection at non-root split points isolates
//! the roots, and count-driven bisection refines each enclosure. Everything
//! is rational, so a midpoint that happens to be a root is detected exactly.

use num_traits::{Signed, Zero};

use crate::poly::Polynomial;
use crate::rational::{rational_to_f64, Rational};

fn abs_rational(value: &Rational) -> Rational {
    value.abs()
}

use super::interval::RatInterval;

/// Dense univariate polynomial, coefficient of degree `i` at index `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().map(Rational::is_zero).unwrap_or(false) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Converts a one-variable sparse polynomial.
    pub fn from_polynomial(p: &Polynomial) -> Self {
        assert_eq!(p.variable_count(), 1, "univariate conversion needs one variable");
        let degree = p.total_degree().unwrap_or(0) as usize;
        let mut coeffs = vec![Rational::zero(); degree + 1];
        for (mono, coeff) in p.terms() {
            coeffs[mono.exponents()[0] as usize] = coeff.clone();
        }
        UniPoly::new(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for coeff in self.coeffs.iter().rev() {
            acc = acc * x + coeff;
        }
        acc
    }

    pub fn derivative(&self) -> UniPoly {
        if self.coeffs.len() <= 1 {
            return UniPoly::new(Vec::new());
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * Rational::from_integer((i as i64).into()))
            .collect();
        UniPoly::new(coeffs)
    }

    /// Remainder of `self` divided by `other` over the field of rationals.
    fn rem(&self, other: &UniPoly) -> UniPoly {
        let divisor_degree = other.degree().expect("nonzero divisor");
        let lead = other.coeffs[divisor_degree].clone();
        let mut rem = self.coeffs.clone();
        while rem.len() > divisor_degree && !rem.is_empty() {
            let rem_degree = rem.len() - 1;
            let factor = rem[rem_degree].clone() / &lead;
            if !factor.is_zero() {
                let shift = rem_degree - divisor_degree;
                for (i, c) in other.coeffs.iter().enumerate() {
                    let delta = c * &factor;
                    rem[i + shift] -= delta;
                }
            }
            rem.pop();
            while rem.last().map(Rational::is_zero).unwrap_or(false) {
                rem.pop();
            }
        }
        UniPoly::new(rem)
    }

    /// Scales by the absolute leading coefficient. Sturm chains are only
    /// stable under positive constant factors, so the sign must be kept.
    fn positive_normalized(&self) -> UniPoly {
        match self.degree() {
            None => self.clone(),
            Some(d) => {
                let lead = abs_rational(&self.coeffs[d]);
                UniPoly::new(self.coeffs.iter().map(|c| c / &lead).collect())
            }
        }
    }

    /// Monic associate (used for gcds, where signs do not matter).
    fn monic(&self) -> UniPoly {
        match self.degree() {
            None => self.clone(),
            Some(d) => {
                let lead = self.coeffs[d].clone();
                UniPoly::new(self.coeffs.iter().map(|c| c / &lead).collect())
            }
        }
    }

    /// Euclidean gcd over the rationals, monic.
    fn gcd(&self, other: &UniPoly) -> UniPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// The square-free part `self / gcd(self, self')`.
    pub fn square_free(&self) -> UniPoly {
        if self.degree().unwrap_or(0) == 0 {
            return self.clone();
        }
        let g = self.gcd(&self.derivative());
        if g.degree() == Some(0) {
            return self.clone();
        }
        self.div_exact(&g)
    }

    fn div_exact(&self, divisor: &UniPoly) -> UniPoly {
        let divisor_degree = divisor.degree().expect("nonzero divisor");
        let lead = divisor.coeffs[divisor_degree].clone();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); self.coeffs.len().saturating_sub(divisor_degree)];
        while rem.len() > divisor_degree {
            let rem_degree = rem.len() - 1;
            let factor = rem[rem_degree].clone() / &lead;
            let shift = rem_degree - divisor_degree;
            quot[shift] = factor.clone();
            for (i, c) in divisor.coeffs.iter().enumerate() {
                let delta = c * &factor;
                rem[i + shift] -= delta;
            }
            rem.pop();
            while rem.last().map(Rational::is_zero).unwrap_or(false) {
                rem.pop();
            }
        }
        debug_assert!(rem.is_empty(), "division was not exact");
        UniPoly::new(quot)
    }
}

/// Sturm chain of a square-free polynomial.
pub struct SturmChain {
    chain: Vec<UniPoly>,
}

impl SturmChain {
    pub fn new(square_free: UniPoly) -> Self {
        let mut chain = vec![square_free.clone(), square_free.derivative()];
        loop {
            let n = chain.len();
            if chain[n - 1].is_zero() {
                chain.pop();
                break;
            }
            let rem = chain[n - 2].rem(&chain[n - 1]);
            if rem.is_zero() {
                break;
            }
            let mut neg = rem;
            for c in neg.coeffs.iter_mut() {
                *c = -c.clone();
            }
            chain.push(neg.positive_normalized());
        }
        SturmChain { chain }
    }

    fn sign_variations(&self, x: &Rational) -> usize {
        let values: Vec<Rational> = self
            .chain
            .iter()
            .map(|p| p.eval(x))
            .filter(|v| !v.is_zero())
            .collect();
        values
            .windows(2)
            .filter(|w| (w[0] < Rational::zero()) != (w[1] < Rational::zero()))
            .count()
    }

    /// Number of distinct roots in `(a, b]`.
    pub fn count_half_open(&self, a: &Rational, b: &Rational) -> usize {
        debug_assert!(a <= b);
        let at_a = self.sign_variations(a);
        let at_b = self.sign_variations(b);
        debug_assert!(at_a >= at_b, "sign variations must not increase");
        at_a.saturating_sub(at_b)
    }
}

/// Enclosure of exactly one real root; `lo == hi` marks an exact root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootEnclosure {
    pub lo: Rational,
    pub hi: Rational,
}

impl RootEnclosure {
    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn as_interval(&self) -> RatInterval {
        RatInterval::new(self.lo.clone(), self.hi.clone())
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / Rational::from_integer(2.into())
    }

    pub fn midpoint_f64(&self) -> f64 {
        rational_to_f64(&self.midpoint())
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }
}

/// Isolates and refines the real roots of `p` in the closed interval
/// `[lo, hi]`, sorted increasing; each enclosure contains exactly one root of
/// `p` and enclosures of distinct roots are disjoint as point sets of roots.
/// Returns `None` when `p` is the zero polynomial.
pub fn isolate_roots(
    p: &UniPoly,
    lo: &Rational,
    hi: &Rational,
    width_target: &Rational,
) -> Option<Vec<RootEnclosure>> {
    if p.is_zero() {
        return None;
    }
    let sf = p.square_free();
    if sf.degree() == Some(0) {
        return Some(Vec::new());
    }
    let chain = SturmChain::new(sf.clone());
    let mut enclosures = Vec::new();

    if sf.eval(lo).is_zero() {
        enclosures.push(RootEnclosure {
            lo: lo.clone(),
            hi: lo.clone(),
        });
    }

    let mut stack = vec![(lo.clone(), hi.clone(), chain.count_half_open(lo, hi))];
    while let Some((a, b, count)) = stack.pop() {
        match count {
            0 => {}
            1 => enclosures.push(refine(&sf, &chain, a, b, width_target)),
            _ => {
                let m = non_root_split(&sf, &a, &b);
                let left = chain.count_half_open(&a, &m);
                stack.push((a, m.clone(), left));
                stack.push((m, b, count - left));
            }
        }
    }
    enclosures.sort_by(|x, y| x.lo.cmp(&y.lo));
    Some(enclosures)
}

/// Count-driven bisection of an `(a, b]` bracket with exactly one root.
fn refine(
    sf: &UniPoly,
    chain: &SturmChain,
    mut a: Rational,
    mut b: Rational,
    width_target: &Rational,
) -> RootEnclosure {
    while &(&b - &a) > width_target {
        let m = (&a + &b) / Rational::from_integer(2.into());
        if sf.eval(&m).is_zero() {
            return RootEnclosure { lo: m.clone(), hi: m };
        }
        if chain.count_half_open(&a, &m) == 1 {
            b = m;
        } else {
            a = m;
        }
    }
    if sf.eval(&b).is_zero() {
        return RootEnclosure { lo: b.clone(), hi: b };
    }
    RootEnclosure { lo: a, hi: b }
}

/// Halves the width of an existing enclosure (used when orbit matching needs
/// sharper boxes).
pub fn refine_further(sf: &UniPoly, chain: &SturmChain, enclosure: &RootEnclosure) -> RootEnclosure {
    if enclosure.is_exact() {
        return enclosure.clone();
    }
    let half = enclosure.width() / Rational::from_integer(2.into());
    refine(sf, chain, enclosure.lo.clone(), enclosure.hi.clone(), &half)
}

/// A split point strictly inside `(a, b)` where `sf` does not vanish.
fn non_root_split(sf: &UniPoly, a: &Rational, b: &Rational) -> Rational {
    let width = b - a;
    // sf has finitely many roots, so some small-denominator fraction works.
    for denom in [2i64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31] {
        for numer in 1..denom {
            let candidate =
                a + &width * Rational::new(numer.into(), denom.into());
            if !sf.eval(&candidate).is_zero() {
                return candidate;
            }
        }
    }
    unreachable!("a square-free polynomial cannot vanish at that many points");
}

/// Square-free part and chain bundled for reuse across refinements.
pub struct RootIsolator {
    pub square_free: UniPoly,
    pub chain: SturmChain,
}

impl RootIsolator {
    pub fn new(p: &UniPoly) -> Option<Self> {
        if p.is_zero() {
            return None;
        }
        let square_free = p.square_free();
        let chain = SturmChain::new(square_free.clone());
        Some(RootIsolator { square_free, chain })
    }
}
