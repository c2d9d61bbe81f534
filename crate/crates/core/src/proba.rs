//! Exact binomial and hypergeometric point probabilities, plus numeric checks
//! of the two elementary inequalities used alongside them.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{binomial, ratio, Rational};

fn int(x: num_bigint::BigUint) -> Rational {
    Rational::from_integer(BigInt::from(x))
}

/// `C(k, s) p^s (1 - p)^(k - s)`.
pub fn binom_point(k: u64, p: &Rational, s: u64) -> Result<Rational> {
    if p.is_negative() || *p > Rational::one() {
        return Err(Error::input(format!("p = {p} is not a probability")));
    }
    if s > k {
        return Err(Error::input(format!("s = {s} exceeds k = {k}")));
    }
    let (num, den) = (p.numer(), p.denom());
    if num.is_zero() || num == den {
        let q = Rational::one() - p;
        return Ok(int(binomial(k, s)) * num_traits::pow(p.clone(), s as usize) * num_traits::pow(q, (k - s) as usize));
    }
    // num and den - num are coprime to den, so only the binomial factor can
    // share anything with den^k; this avoids a gcd of two huge numbers
    let c = BigInt::from(binomial(k, s));
    let bottom = den.pow(k as u32);
    let g = c.gcd(&(&bottom % &c));
    let top = (&c / &g) * num.pow(s as u32) * (den - num).pow((k - s) as u32);
    Ok(Rational::new_raw(top, bottom / g))
}

/// The maximum over `p` of [`binom_point`], attained at `p = s / k`.
pub fn binom_point_max_bound(k: u64, s: u64) -> Result<Rational> {
    if s == 0 || s >= k {
        return Err(Error::input(format!("need 1 <= s <= k - 1, got s = {s}, k = {k}")));
    }
    binom_point(k, &ratio(s, k), s)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct HypergeomParams {
    pub population: u64,
    pub successes: u64,
    pub sample: u64,
    pub hits: u64,
}

/// `C(r, s) C(n - r, k - s) / C(n, k)`, zero when infeasible.
pub fn hypergeom_point(p: &HypergeomParams) -> Result<Rational> {
    let HypergeomParams {
        population: n,
        successes: r,
        sample: k,
        hits: s,
    } = *p;
    if s > k || k > n || r > n {
        return Err(Error::input(format!("inconsistent hypergeometric parameters {p:?}")));
    }
    if k - s > n - r {
        return Ok(Rational::zero());
    }
    Ok(int(binomial(r, s) * binomial(n - r, k - s)) / int(binomial(n, k)))
}

/// Probability that a uniform `k`-subset of an `n`-set meets each of the
/// disjoint parts in exactly `s` elements.
pub fn multi_hypergeom_joint(n: u64, k: u64, part_sizes: &[u64], s: u64) -> Result<Rational> {
    let covered: u64 = part_sizes.iter().sum();
    if covered > n || k > n {
        return Err(Error::input(format!("parts cover {covered} and sample is {k}, population is {n}")));
    }
    let taken = s * part_sizes.len() as u64;
    if taken > k {
        return Ok(Rational::zero());
    }
    let mut ways = binomial(n - covered, k - taken);
    for &size in part_sizes {
        ways *= binomial(size, s);
    }
    Ok(int(ways) / int(binomial(n, k)))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PolyExpCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub ok: bool,
}

/// `x^s e^{-x} <= (s/e)^s`. The comparison is made between logarithms with
/// slack `1e-12`, so it stays meaningful where both sides are huge.
pub fn poly_exp_check(s: u32, x: f64) -> Result<PolyExpCheck> {
    if s == 0 || !(x >= 0.0) || !x.is_finite() {
        return Err(Error::input(format!("need s >= 1 and finite x >= 0, got s = {s}, x = {x}")));
    }
    let sf = f64::from(s);
    let log_rhs = sf * (sf.ln() - 1.0);
    let (lhs, ok) = if x == 0.0 {
        (0.0, true)
    } else {
        let log_lhs = sf * x.ln() - x;
        (log_lhs.exp(), log_lhs <= log_rhs + 1e-12)
    };
    Ok(PolyExpCheck {
        lhs,
        rhs: log_rhs.exp(),
        ok,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LambdaSplit {
    pub y: f64,
    pub z: f64,
    pub lo: f64,
    pub hi: f64,
    pub lambda: f64,
}

/// The interval `[y² e^{2-y-z} / 4, 1 - z e^{1-y-z}]` and its clamped midpoint.
/// An empty interval would contradict the underlying inequality and is
/// reported as an invariant failure.
pub fn lambda_split(y: f64, z: f64) -> Result<LambdaSplit> {
    if !(y >= 0.0 && z >= 0.0 && y.is_finite() && z.is_finite()) {
        return Err(Error::input(format!("need finite y, z >= 0, got y = {y}, z = {z}")));
    }
    let lo = y * y * (2.0 - y - z).exp() / 4.0;
    let hi = 1.0 - z * (1.0 - y - z).exp();
    if lo > hi + 1e-12 {
        return Err(Error::Invariant(format!("empty lambda interval at y = {y}, z = {z}: [{lo}, {hi}]")));
    }
    Ok(LambdaSplit {
        y,
        z,
        lo,
        hi,
        lambda: ((lo + hi) / 2.0).clamp(0.0, 1.0),
    })
}

/// `e^{y+z} - y² e² / 4 - z e`, nonnegative exactly when the interval of
/// [`lambda_split`] is nonempty.
pub fn lambda_gap(y: f64, z: f64) -> f64 {
    let e = std::f64::consts::E;
    (y + z).exp() - y * y * e * e / 4.0 - z * e
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::to_f64;
    use std::f64::consts::E;

    #[test]
    fn binomial_examples() {
        assert_eq!(binom_point(2, &ratio(1, 2), 1).unwrap(), ratio(1, 2));
        assert_eq!(binom_point(5, &ratio(0, 1), 0).unwrap(), ratio(1, 1));
        assert_eq!(binom_point(4, &ratio(1, 3), 2).unwrap(), ratio(8, 27));
        assert!(binom_point(4, &ratio(4, 3), 2).is_err());
        assert!(binom_point(4, &ratio(1, 3), 5).is_err());
        assert_eq!(binom_point_max_bound(2, 1).unwrap(), ratio(1, 2));
        assert_eq!(binom_point_max_bound(4, 2).unwrap(), ratio(3, 8));
        assert!(binom_point_max_bound(4, 0).is_err());
        for i in 0..=20 {
            assert!(binom_point(4, &ratio(i, 20), 2).unwrap() <= ratio(3, 8));
        }
    }

    #[test]
    fn hypergeometric_examples() {
        let p = |n, r, k, s| HypergeomParams {
            population: n,
            successes: r,
            sample: k,
            hits: s,
        };
        assert_eq!(hypergeom_point(&p(4, 2, 2, 1)).unwrap(), ratio(2, 3));
        let total: Rational = (0..=3).map(|s| hypergeom_point(&p(10, 4, 3, s)).unwrap()).sum();
        assert_eq!(total, ratio(1, 1));
        let h = to_f64(&hypergeom_point(&p(10_000, 1000, 10, 1)).unwrap());
        let b = to_f64(&binom_point(10, &ratio(1, 10), 1).unwrap());
        assert!((h - b).abs() < 0.002);
        assert_eq!(hypergeom_point(&p(5, 5, 3, 0)).unwrap(), ratio(0, 1));
        assert!(hypergeom_point(&p(5, 6, 3, 0)).is_err());
    }

    #[test]
    fn multi_examples() {
        assert_eq!(multi_hypergeom_joint(4, 2, &[2, 2], 1).unwrap(), ratio(2, 3));
        assert_eq!(multi_hypergeom_joint(9, 4, &[], 1).unwrap(), ratio(1, 1));
        // n = 6, k = 3, parts {0,1} and {2,3}: brute force over the 20 subsets
        let hits = (0u32..64)
            .filter(|w| w.count_ones() == 3 && (w & 0b11).count_ones() == 1 && (w & 0b1100).count_ones() == 1)
            .count() as u64;
        assert_eq!(multi_hypergeom_joint(6, 3, &[2, 2], 1).unwrap(), ratio(hits, 20));
        assert!(multi_hypergeom_joint(3, 2, &[2, 2], 1).is_err());
        assert_eq!(multi_hypergeom_joint(6, 1, &[2, 2], 1).unwrap(), ratio(0, 1));
    }

    #[test]
    fn poly_exp_examples() {
        let c = poly_exp_check(1, 0.0).unwrap();
        assert!(c.ok && c.lhs == 0.0 && (c.rhs - 1.0 / E).abs() < 1e-15);
        for s in 1..=20 {
            let c = poly_exp_check(s, f64::from(s)).unwrap();
            assert!(c.ok && (c.lhs - c.rhs).abs() <= 1e-12 * c.rhs);
        }
    }

    #[test]
    fn lambda_examples() {
        let l = lambda_split(0.0, 0.0).unwrap();
        assert_eq!((l.lo, l.hi, l.lambda), (0.0, 1.0, 0.5));
        let l = lambda_split(2.0 / E, 1.0 - 2.0 / E).unwrap();
        assert!((l.lo - 1.0 / E).abs() < 1e-12 && (l.hi - 2.0 / E).abs() < 1e-12);
        assert!((lambda_gap(2.0 / E, 1.0 - 2.0 / E) - 1.0).abs() < 1e-12);
        assert!(lambda_split(-1.0, 0.0).is_err());
    }
}
