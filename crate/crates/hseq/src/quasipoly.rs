//! Eventual quasipolynomial form of `n ↦ h(n, d_n - k)`.
//!
//! Fix `k` and a residue `b` mod 3, and let `m` be the smallest admissible
//! base point above the strong-boundedness threshold. For `n ≡ b` mod 3
//! with `n ≥ m`,
//!
//! ```text
//! h(n, d_n - k) = Σ_{l=0}^{k} h(m, d_m - l) · C(d_n - d_m, k - l)
//! ```
//!
//! and `d_n` is a quasilinear function of `n` with period 6, so the right
//! side expands to a degree-`k` polynomial in `n` on each residue class
//! mod 6 — two classes per `b`. The expansion is done symbolically over
//! exact rationals; nothing is fitted.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::fastcount::{binomial, fast_h, FastCountError};
use crate::ri::{frame, strong_bound_threshold};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum QuasipolyError {
    #[error("n = {n} is not congruent to the base point m = {m} mod 3")]
    ResidueMismatch { m: u32, n: u32 },
    #[error("n = {n} precedes the base point m = {m}")]
    BelowBase { m: u32, n: u64 },
    #[error("residue {residue} mod 6 is not covered by this quasipolynomial")]
    ResidueNotCovered { residue: u8 },
    #[error("n = {n} is below the validity threshold {n_min} of its residue class")]
    BelowValidity { n: u64, n_min: u64 },
    #[error("evaluation produced the non-integer {value}; this is a bug")]
    NonIntegral { value: String },
    #[error(transparent)]
    FastCount(#[from] FastCountError),
}

/// `d_n` as a closed form per residue of `n` mod 6; equals
/// `⌊(n-1)/2⌋ - ⌊n/3⌋` for every `n ≥ 1`.
pub fn d_closed_form(n: u32) -> u32 {
    assert!(n >= 1);
    match n % 6 {
        0 => n / 6 - 1,
        1 => (n - 1) / 6,
        2 => (n - 2) / 6,
        3 => (n - 3) / 6,
        4 => (n - 4) / 6,
        _ => (n + 1) / 6,
    }
}

/// Constant `c` in `d_n = (n + c)/6` for each residue class mod 6.
const D_SHIFT: [i64; 6] = [-6, -1, -2, -3, -4, 1];

/// Evaluates the recurrence directly: `tail[l]` holds `h(m, d_m - l)` and
/// the result is `h(n, d_n - k)` for `k = tail.len() - 1`, valid for
/// `n ≡ m` mod 3, `n ≥ m` (and `m` above the threshold for `k`).
pub fn recurrence_eval(m: u32, tail: &[BigUint], n: u64) -> Result<BigUint, QuasipolyError> {
    assert!(!tail.is_empty());
    if n % 3 != (m % 3) as u64 {
        return Err(QuasipolyError::ResidueMismatch { m, n: n as u32 });
    }
    if n < m as u64 {
        return Err(QuasipolyError::BelowBase { m, n });
    }
    let d_m = frame(m).d as u64;
    let d_n = d_of(n);
    let k = tail.len() - 1;
    let mut sum = BigUint::zero();
    for (l, h) in tail.iter().enumerate() {
        sum += h * binomial(d_n - d_m, (k - l) as u64);
    }
    Ok(sum)
}

fn d_of(n: u64) -> u64 {
    ((n as i64 + D_SHIFT[(n % 6) as usize]) / 6) as u64
}

/// One residue class of a quasipolynomial: exact-rational coefficients by
/// ascending power, and the smallest `n` in the class where it is valid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassPoly {
    pub coeffs: Vec<BigRational>,
    pub n_min: u64,
}

impl ClassPoly {
    pub fn eval(&self, n: u64) -> BigRational {
        let x = BigRational::from_integer(BigInt::from(n));
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * &x + c;
        }
        acc
    }
}

/// A period-6 family of exact-rational polynomials for `n ↦ h(n, d_n - k)`,
/// keyed by residue mod 6. Extraction for one residue `b` mod 3 covers the
/// two classes `b` and `b + 3`; families may be merged to cover all six.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quasipolynomial {
    pub degree: u32,
    pub classes: BTreeMap<u8, ClassPoly>,
}

impl Quasipolynomial {
    /// Exact value at `n`. The residue class must be covered, `n` must meet
    /// its validity threshold, and the rational evaluation must come out a
    /// nonnegative integer (anything else signals an internal bug).
    pub fn eval(&self, n: u64) -> Result<BigUint, QuasipolyError> {
        let residue = (n % 6) as u8;
        let class = self
            .classes
            .get(&residue)
            .ok_or(QuasipolyError::ResidueNotCovered { residue })?;
        if n < class.n_min {
            return Err(QuasipolyError::BelowValidity { n, n_min: class.n_min });
        }
        let value = class.eval(n);
        if !value.is_integer() || value.is_negative() {
            return Err(QuasipolyError::NonIntegral { value: value.to_string() });
        }
        Ok(value.to_integer().to_biguint().expect("checked nonnegative"))
    }

    /// Merges residue classes from `other` into `self`; classes present in
    /// both must agree.
    pub fn merge(&mut self, other: Quasipolynomial) {
        assert_eq!(self.degree, other.degree);
        for (r, class) in other.classes {
            match self.classes.get(&r) {
                None => {
                    self.classes.insert(r, class);
                }
                Some(existing) => assert_eq!(existing, &class, "conflicting class {r}"),
            }
        }
    }
}

/// Smallest admissible base point for `(k, b)`: the least positive
/// `m ≡ b` mod 3 strictly above the strong-boundedness threshold.
pub fn base_point(k: u32, b: u8) -> u32 {
    let t = strong_bound_threshold(k, b);
    let mut m = if t < 0 { 1 } else { t as u32 + 1 };
    while m % 3 != b as u32 {
        m += 1;
    }
    m
}

/// Extracts the exact quasipolynomial for `h(n, d_n - k)` on the two
/// residue classes mod 6 congruent to `b` mod 3. The tail values at the
/// base point come from [`fast_h`]; the binomial recurrence is expanded
/// symbolically in `n` with rational coefficients, and each class records
/// the smallest member above the threshold as its validity bound.
pub fn extract(k: u32, b: u8) -> Result<Quasipolynomial, QuasipolyError> {
    assert!(b < 3);
    let m = base_point(k, b);
    let d_m = frame(m).d as i64;
    let tail: Vec<BigUint> = (0..=k).map(|l| fast_h(m, l)).collect::<Result<_, _>>()?;

    let mut classes = BTreeMap::new();
    for residue in [b, b + 3] {
        // d_n - d_m as a linear polynomial in n on this class
        let six = BigRational::from_integer(BigInt::from(6));
        let shift = BigRational::from_integer(BigInt::from(D_SHIFT[residue as usize]));
        let dn_minus_dm = vec![
            shift / &six - BigRational::from_integer(BigInt::from(d_m)),
            six.recip(),
        ];

        let mut poly = vec![BigRational::zero(); k as usize + 1];
        for (l, h) in tail.iter().enumerate() {
            let term = falling_binomial(&dn_minus_dm, k - l as u32);
            let h = BigRational::from_integer(BigInt::from(h.clone()));
            for (i, c) in term.into_iter().enumerate() {
                poly[i] += c * &h;
            }
        }

        classes.insert(residue, ClassPoly { coeffs: poly, n_min: class_min(k, b, residue) });
    }
    Ok(Quasipolynomial { degree: k, classes })
}

/// Smallest positive member of the residue class `r` mod 6 strictly above
/// the `(k, b)` threshold.
fn class_min(k: u32, b: u8, residue: u8) -> u64 {
    let t = strong_bound_threshold(k, b);
    let mut n = if t < 0 { 1 } else { t as u64 + 1 };
    while n % 6 != residue as u64 {
        n += 1;
    }
    n
}

/// `C(p, j)` where `p` is a polynomial: `p (p-1) ... (p-j+1) / j!`.
fn falling_binomial(p: &[BigRational], j: u32) -> Vec<BigRational> {
    let mut result = vec![BigRational::one()];
    for i in 0..j {
        let mut shifted = p.to_vec();
        shifted[0] -= BigRational::from_integer(BigInt::from(i));
        result = poly_mul(&result, &shifted);
    }
    let factorial: BigInt = (1..=j as i64).map(BigInt::from).product();
    let inv = BigRational::from_integer(factorial).recip();
    result.into_iter().map(|c| c * &inv).collect()
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

impl fmt::Display for Quasipolynomial {
    /// One line per covered residue class:
    /// `r mod 6: (c_k n^k + ... + c_0)/D for n >= n_min` with integer
    /// coefficients over a common denominator `D`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (r, class) in &self.classes {
            let denom = class
                .coeffs
                .iter()
                .fold(BigInt::one(), |acc, c| lcm(&acc, c.denom()));
            let nums: Vec<BigInt> = class
                .coeffs
                .iter()
                .map(|c| c.numer() * (&denom / c.denom()))
                .collect();
            let body = format_poly(&nums);
            if denom.is_one() {
                writeln!(f, "{r} mod 6: {body} for n >= {}", class.n_min)?;
            } else {
                writeln!(f, "{r} mod 6: ({body})/{denom} for n >= {}", class.n_min)?;
            }
        }
        Ok(())
    }
}

fn lcm(a: &BigInt, b: &BigInt) -> BigInt {
    let mut x = a.clone().abs();
    let mut y = b.clone().abs();
    while !y.is_zero() {
        let r = &x % &y;
        x = y;
        y = r;
    }
    (a * b).abs() / x
}

fn format_poly(nums: &[BigInt]) -> String {
    let mut parts: Vec<String> = Vec::new();
    for (pow, c) in nums.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        let var = match pow {
            0 => String::new(),
            1 => " n".to_string(),
            _ => format!(" n^{pow}"),
        };
        let term = if pow > 0 && mag.is_one() {
            var.trim_start().to_string()
        } else {
            format!("{mag}{var}")
        };
        if parts.is_empty() {
            parts.push(if c.is_negative() { format!("-{term}") } else { term });
        } else {
            parts.push(format!("{} {term}", if c.is_negative() { "-" } else { "+" }));
        }
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(num: i64, den: i64) -> BigRational {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    #[test]
    fn d_closed_form_matches_frame() {
        for n in 1..=10_000 {
            assert_eq!(d_closed_form(n), frame(n).d, "n = {n}");
        }
        assert_eq!(d_closed_form(90), 14);
        assert_eq!(d_closed_form(87), 14);
        assert_eq!(d_closed_form(68), 11);
    }

    #[test]
    fn base_points() {
        assert_eq!(base_point(3, 0), 87);
        assert_eq!(base_point(0, 2), 2);
        assert_eq!(base_point(7, 0), 183);
        assert_eq!(base_point(0, 1), 7);
    }

    #[test]
    fn recurrence_examples() {
        let tail: Vec<BigUint> =
            [2u32, 31, 228, 1055].iter().map(|&v| BigUint::from(v)).collect();
        assert_eq!(recurrence_eval(87, &tail, 87).unwrap(), BigUint::from(1055u32));
        assert_eq!(recurrence_eval(87, &tail, 93).unwrap(), BigUint::from(1283u32));
        // cross-check against the closed cubic on the 0-class at n = 90
        let at_90 = (90u64.pow(3) - 9 * 90u64.pow(2) + 342 * 90 - 3240) / 648;
        assert_eq!(recurrence_eval(87, &tail, 90).unwrap(), BigUint::from(at_90));
        assert_eq!(
            recurrence_eval(87, &tail, 88).unwrap_err(),
            QuasipolyError::ResidueMismatch { m: 87, n: 88 }
        );
    }

    #[test]
    fn extract_linear_class() {
        let qp = extract(1, 2).unwrap();
        let c2 = &qp.classes[&2];
        assert_eq!(c2.coeffs, vec![rat(16, 6), rat(1, 6)]); // (n + 16)/6
        assert_eq!(c2.n_min, 26);
        let c5 = &qp.classes[&5];
        assert_eq!(c5.coeffs, vec![rat(19, 6), rat(1, 6)]); // (n + 19)/6
        assert_eq!(c5.n_min, 23);
    }

    #[test]
    fn extract_constant_class() {
        let qp = extract(0, 1).unwrap();
        for r in [1u8, 4] {
            assert_eq!(qp.classes[&r].coeffs, vec![rat(2, 1)]);
        }
        assert_eq!(qp.classes[&1].n_min, 7);
        assert_eq!(qp.classes[&4].n_min, 10);
    }

    #[test]
    fn extract_cubic_class() {
        let qp = extract(3, 0).unwrap();
        let c0 = &qp.classes[&0];
        assert_eq!(
            c0.coeffs,
            vec![rat(-3240, 648), rat(342, 648), rat(-9, 648), rat(1, 648)]
        );
        assert_eq!(c0.n_min, 90);
        let c3 = &qp.classes[&3];
        assert_eq!(
            c3.coeffs,
            vec![rat(-2268, 648), rat(315, 648), rat(0, 1), rat(1, 648)]
        );
        assert_eq!(c3.n_min, 87);
    }

    #[test]
    fn eval_examples() {
        let qp = extract(2, 2).unwrap();
        assert_eq!(qp.eval(68).unwrap(), BigUint::from(91u32));
        let qp = extract(0, 2).unwrap();
        assert_eq!(qp.eval(23).unwrap(), BigUint::one());
        assert_eq!(
            qp.eval(24).unwrap_err(),
            QuasipolyError::ResidueNotCovered { residue: 0 }
        );
        let qp = extract(4, 2).unwrap();
        assert_eq!(
            qp.eval(89).unwrap_err(),
            QuasipolyError::BelowValidity { n: 89, n_min: 95 }
        );
        qp.eval(95).unwrap(); // integrality asserted inside
    }

    #[test]
    fn eval_is_integral_across_classes() {
        for k in 0..=4u32 {
            for b in 0..3u8 {
                let qp = extract(k, b).unwrap();
                for class in qp.classes.values() {
                    for step in 0..1000u64 {
                        let n = class.n_min + 6 * step;
                        assert!(qp.eval(n).is_ok(), "k = {k}, b = {b}, n = {n}");
                    }
                }
            }
        }
    }

    #[test]
    fn display_form() {
        let qp = extract(3, 0).unwrap();
        let text = qp.to_string();
        assert!(text.contains("0 mod 6: (n^3 - 9 n^2 + 342 n - 3240)/648 for n >= 90"));
        assert!(text.contains("3 mod 6: (n^3 + 315 n - 2268)/648 for n >= 87"));
        let qp = extract(0, 1).unwrap();
        assert!(qp.to_string().contains("1 mod 6: 2 for n >= 7"));
    }
}
