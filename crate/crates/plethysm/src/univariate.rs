//! Dense one-variable power series, truncated at a fixed degree.
//!
//! Coefficients are exact rationals indexed by degree.  The composition
//! here is the ordinary single-variable one; the series module's
//! multivariate substitution must agree with it after restricting every
//! series to its first variable, which makes this module an independent
//! cross-check.

use crate::lambda::factorial;
use crate::series::Rational;
use num_bigint::BigInt;
use num_traits::Zero;

/// Truncated product of dense coefficient slices (index = degree), keeping
/// degrees ≤ `degree`.
pub fn multiply(a: &[Rational], b: &[Rational], degree: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); degree + 1];
    for (i, ca) in a.iter().enumerate().take(degree + 1) {
        if ca.is_zero() {
            continue;
        }
        for (j, cb) in b.iter().enumerate().take(degree + 1 - i) {
            if !cb.is_zero() {
                out[i + j] += ca * cb;
            }
        }
    }
    out
}

/// Ordinary composition (g ∘ f) truncated at `degree`.  f must have zero
/// constant term.
pub fn compose(g: &[Rational], f: &[Rational], degree: usize) -> Vec<Rational> {
    assert!(
        f.first().is_none_or(Rational::is_zero),
        "inner series must have zero constant term"
    );
    let mut out = vec![Rational::zero(); degree + 1];
    for gk in g.iter().take(degree + 1).rev() {
        out = multiply(&out, f, degree);
        out[0] += gk;
    }
    out
}

/// Composition on exponential coefficient lists: `g` and `f` hold the
/// coefficients g_n = n![x^n]·ĝ for n = 1..=W (no constant slot), and the
/// result is in the same shape.  Computed by converting to ordinary
/// coefficients, composing, and converting back.
pub fn compose_exponential(g: &[Rational], f: &[Rational]) -> Vec<Rational> {
    assert_eq!(g.len(), f.len(), "coefficient lists must share a truncation");
    let degree = g.len();
    let to_ordinary = |coeffs: &[Rational]| {
        let mut ord = vec![Rational::zero(); degree + 1];
        for (n, c) in coeffs.iter().enumerate() {
            let div = Rational::from(BigInt::from(factorial(n as u64 + 1)));
            ord[n + 1] = c / div;
        }
        ord
    };
    let composed = compose(&to_ordinary(g), &to_ordinary(f), degree);
    (1..=degree)
        .map(|n| &composed[n] * Rational::from(BigInt::from(factorial(n as u64))))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    fn ints(values: &[i64]) -> Vec<Rational> {
        values.iter().map(|&v| rat(v, 1)).collect()
    }

    #[test]
    fn multiply_truncates() {
        // (1 + x)(1 + x) = 1 + 2x + x², truncated at degree 1
        let got = multiply(&ints(&[1, 1]), &ints(&[1, 1]), 1);
        assert_eq!(got, ints(&[1, 2]));
    }

    #[test]
    fn compose_linear_inner() {
        // g(y) = 1 + y², f(x) = 2x: g(f) = 1 + 4x²
        let got = compose(&ints(&[1, 0, 1]), &ints(&[0, 2]), 2);
        assert_eq!(got, ints(&[1, 0, 4]));
    }

    #[test]
    fn compose_exponential_square() {
        // ĝ = y²/2 (g_2 = 1), f̂ = x + x²/2 (f_1 = f_2 = 1):
        // ĝ∘f̂ = x²/2 + x³/2 + x⁴/8, so h = (0, 1, 3, 3)
        let g = ints(&[0, 1, 0, 0]);
        let f = ints(&[1, 1, 0, 0]);
        assert_eq!(compose_exponential(&g, &f), ints(&[0, 1, 3, 3]));
    }

    #[test]
    fn compose_exponential_identity() {
        let f = vec![rat(1, 1), rat(-2, 3), rat(5, 1), rat(0, 1)];
        let id = ints(&[1, 0, 0, 0]);
        assert_eq!(compose_exponential(&id, &f), f);
        assert_eq!(compose_exponential(&f, &id), f);
    }
}
