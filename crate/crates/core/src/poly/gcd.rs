//! Multivariate GCD and exact division.
//!
//! The GCD is computed by content/primitive-part recursion on the highest
//! occurring variable with a primitive pseudo-remainder sequence, which is
//! entirely adequate at desk scale (a handful of variables, moderate degree).
//! Results are normalized to a canonical representative: integer coefficients
//! with content 1 and a positive graded-lex leading coefficient.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::Rational;

use super::{PolyError, Polynomial};

/// Canonical associate: clears denominators, divides by the integer content,
/// and makes the graded-lex leading coefficient positive. Zero stays zero.
pub fn normalize(p: &Polynomial) -> Polynomial {
    if p.is_zero() {
        return p.clone();
    }
    let mut denom_lcm = BigInt::one();
    for (_, c) in p.terms() {
        denom_lcm = denom_lcm.lcm(c.denom());
    }
    let mut numer_gcd = BigInt::zero();
    for (_, c) in p.terms() {
        let scaled = c * Rational::from_integer(denom_lcm.clone());
        debug_assert!(scaled.denom().is_one());
        numer_gcd = numer_gcd.gcd(scaled.numer());
    }
    let mut factor = Rational::new(denom_lcm, numer_gcd);
    let leading = p.leading_term().expect("nonzero").1;
    if (leading * &factor).is_negative() {
        factor = -factor;
    }
    p.scale(&factor)
}

/// Exact multivariate division: `Some(q)` with `p = q * d`, or `None` when
/// `d` does not divide `p`. Division by zero divides only zero.
pub fn exact_div(p: &Polynomial, d: &Polynomial) -> Option<Polynomial> {
    assert_eq!(p.variable_count(), d.variable_count(), "variable count mismatch");
    if d.is_zero() {
        return p.is_zero().then(|| p.clone());
    }
    let nvars = p.variable_count();
    let (lead_mono, lead_coeff) = {
        let (m, c) = d.leading_term().expect("nonzero divisor");
        (m.clone(), c.clone())
    };
    let mut remainder = p.clone();
    let mut quotient = Polynomial::zero(nvars);
    while let Some((mono, coeff)) = remainder
        .leading_term()
        .map(|(m, c)| (m.clone(), c.clone()))
    {
        if !lead_mono.divides(&mono) {
            return None;
        }
        let q_mono = mono.div(&lead_mono);
        let q_coeff = coeff / &lead_coeff;
        quotient.add_term(q_mono.clone(), q_coeff.clone());
        remainder = remainder.sub(&d.mul_term(&q_mono, &q_coeff));
    }
    Some(quotient)
}

/// GCD of two polynomials, canonically normalized.
pub fn gcd(a: &Polynomial, b: &Polynomial) -> Polynomial {
    assert_eq!(a.variable_count(), b.variable_count(), "variable count mismatch");
    if a.is_zero() {
        return normalize(b);
    }
    if b.is_zero() {
        return normalize(a);
    }

    // Trial division settles the common case where one input divides the
    // other, skipping the remainder sequence entirely.
    if exact_div(b, a).is_some() {
        return normalize(a);
    }
    if exact_div(a, b).is_some() {
        return normalize(b);
    }

    let mut occurring = a.occurring_variables();
    for v in b.occurring_variables() {
        if !occurring.contains(&v) {
            occurring.push(v);
        }
    }
    if occurring.is_empty() {
        // Two nonzero constants: any nonzero rational is a unit.
        return Polynomial::one(a.variable_count());
    }
    // The remainder sequence is shortest in the variable where the smaller
    // degree is least.
    let var = occurring
        .into_iter()
        .min_by_key(|&v| (a.degree_in(v).min(b.degree_in(v)), usize::MAX - v))
        .expect("nonempty");

    let content_a = content_in(a, var);
    let content_b = content_in(b, var);
    let content = gcd(&content_a, &content_b);
    let prim_a = normalize(&exact_div(a, &content_a).expect("content divides"));
    let prim_b = normalize(&exact_div(b, &content_b).expect("content divides"));

    // Primitive pseudo-remainder sequence in `var`; every remainder is
    // re-normalized so coefficients stay integer-primitive throughout.
    let (mut f, mut g) = if prim_a.degree_in(var) >= prim_b.degree_in(var) {
        (prim_a, prim_b)
    } else {
        (prim_b, prim_a)
    };
    loop {
        let r = pseudo_rem(&f, &g, var);
        if r.is_zero() {
            break;
        }
        let r = normalize(&r);
        let r_content = content_in(&r, var);
        f = g;
        g = normalize(&exact_div(&r, &r_content).expect("content divides"));
    }
    normalize(&content.mul(&g))
}

/// GCD of a nonempty family; the gcd of all-zero input is 0.
pub fn gcd_many(polys: &[Polynomial]) -> Result<Polynomial, PolyError> {
    if polys.is_empty() {
        return Err(PolyError::EmptyInput);
    }
    // Accumulating from the smallest input keeps the intermediate gcds
    // small and reaches the constant short-circuit sooner.
    let mut ordered: Vec<&Polynomial> = polys.iter().collect();
    ordered.sort_by_key(|p| (p.total_degree().unwrap_or(0), p.num_terms()));
    let mut acc = normalize(ordered[0]);
    for p in &ordered[1..] {
        if acc.is_constant() && !acc.is_zero() {
            // Already a unit; normalized form is 1.
            break;
        }
        acc = gcd(&acc, p);
    }
    Ok(acc)
}

/// Content of `p` viewed as univariate in `var`: gcd of its coefficient
/// polynomials (normalized, so the content of a primitive input is 1).
fn content_in(p: &Polynomial, var: usize) -> Polynomial {
    let coeffs = p.coefficients_in(var);
    let nonzero: Vec<Polynomial> = coeffs.into_iter().filter(|c| !c.is_zero()).collect();
    gcd_many(&nonzero).expect("nonzero polynomial has coefficients")
}

/// Pseudo-remainder of `f` by `g` in `var`: repeatedly multiplies by the
/// leading coefficient of `g` so every cancellation stays fraction-free.
/// Intermediate remainders are normalized; that only changes the result by a
/// unit, which the gcd does not see.
fn pseudo_rem(f: &Polynomial, g: &Polynomial, var: usize) -> Polynomial {
    let deg_g = g.degree_in(var);
    let lead_g = leading_coefficient_in(g, var);
    let mut r = f.clone();
    while !r.is_zero() && r.degree_in(var) >= deg_g {
        let deg_r = r.degree_in(var);
        let lead_r = leading_coefficient_in(&r, var);
        let shift = Polynomial::var(r.variable_count(), var).pow(deg_r - deg_g);
        r = normalize(&r.mul(&lead_g).sub(&g.mul(&lead_r).mul(&shift)));
    }
    r
}

fn leading_coefficient_in(p: &Polynomial, var: usize) -> Polynomial {
    let coeffs = p.coefficients_in(var);
    coeffs.last().expect("nonzero").clone()
}
