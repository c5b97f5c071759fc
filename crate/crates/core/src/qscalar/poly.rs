//! Dense univariate polynomials over `Z` in the indeterminate `q`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Polynomial in `Z[q]`, coefficients stored lowest degree first with no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Poly {
    coeffs: Vec<BigInt>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Poly::from_coeffs(vec![c])
    }

    /// `c * q^k`.
    pub fn monomial(c: BigInt, k: usize) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        Poly { coeffs }
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_i64s(cs: &[i64]) -> Self {
        Poly::from_coeffs(cs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Lowest exponent carrying a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// True when the polynomial is `c * q^k` for a single term.
    pub fn is_monomial(&self) -> bool {
        match (self.valuation(), self.degree()) {
            (Some(v), Some(d)) => v == d,
            _ => false,
        }
    }

    pub fn neg(&self) -> Poly {
        Poly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i);
            let b = other.coeffs.get(i);
            out.push(match (a, b) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        Poly::from_coeffs(out)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Poly::from_coeffs(out)
    }

    pub fn scale(&self, c: &BigInt) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    /// Multiply by `q^k`.
    pub fn shift_up(&self, k: usize) -> Poly {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    /// Divide by `q^k`; the caller guarantees `k <= valuation`.
    pub fn shift_down(&self, k: usize) -> Poly {
        debug_assert!(self.is_zero() || self.valuation().unwrap() >= k);
        if self.is_zero() {
            return Poly::zero();
        }
        Poly { coeffs: self.coeffs[k..].to_vec() }
    }

    /// Divide every coefficient by an integer that divides all of them.
    pub fn div_exact_int(&self, c: &BigInt) -> Poly {
        Poly { coeffs: self.coeffs.iter().map(|x| x / c).collect() }
    }

    /// Non-negative gcd of the coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut c = self.content();
        if self.leading().unwrap().is_negative() {
            c = -c;
        }
        self.div_exact_int(&c)
    }

    /// Pseudo-remainder: `lc(b)^(deg a - deg b + 1) * a mod b`.
    pub fn pseudo_rem(&self, b: &Poly) -> Poly {
        let db = b.degree().expect("pseudo_rem by zero");
        let lb = b.leading().unwrap().clone();
        let mut r = self.coeffs.clone();
        while r.len() > db && !r.is_empty() {
            let dr = r.len() - 1;
            let lr = r[dr].clone();
            for c in r.iter_mut() {
                *c *= &lb;
            }
            let off = dr - db;
            for (j, bj) in b.coeffs.iter().enumerate() {
                r[off + j] -= &lr * bj;
            }
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        Poly::from_coeffs(r)
    }

    /// Exact division in `Z[q]`; returns `None` when `b` does not divide `self`.
    pub fn div_exact(&self, b: &Poly) -> Option<Poly> {
        let db = b.degree().expect("division by zero polynomial");
        if self.is_zero() {
            return Some(Poly::zero());
        }
        let da = self.degree().unwrap();
        if da < db {
            return None;
        }
        let lb = b.leading().unwrap();
        let mut r = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); da - db + 1];
        for k in (0..=da - db).rev() {
            let top = &r[k + db];
            if top.is_zero() {
                continue;
            }
            let (qk, rem) = top.div_rem(lb);
            if !rem.is_zero() {
                return None;
            }
            for (j, bj) in b.coeffs.iter().enumerate() {
                r[k + j] -= &qk * bj;
            }
            quot[k] = qk;
        }
        if r.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Poly::from_coeffs(quot))
    }

    /// Primitive gcd over `Q[q]`, normalized to positive leading coefficient.
    pub fn gcd(&self, other: &Poly) -> Poly {
        if self.is_zero() {
            return other.primitive();
        }
        if other.is_zero() {
            return self.primitive();
        }
        if self.is_monomial() || other.is_monomial() {
            // A monomial shares only powers of q with anything.
            let v = self.valuation().unwrap().min(other.valuation().unwrap());
            return Poly::monomial(BigInt::one(), v);
        }
        let (mut a, mut b) = if self.degree() >= other.degree() {
            (self.primitive(), other.primitive())
        } else {
            (other.primitive(), self.primitive())
        };
        while !b.is_zero() {
            let r = a.pseudo_rem(&b);
            a = b;
            b = r.primitive();
        }
        a.primitive()
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    fn fmt_terms(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            if neg {
                f.write_str("-")?;
            } else if !first {
                f.write_str("+")?;
            }
            first = false;
            let a = c.abs();
            match k {
                0 => write!(f, "{a}")?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{a}")?;
                    }
                    f.write_str("q")?;
                    if k > 1 {
                        write!(f, "^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }

    /// Parse the output of `Display`: signed terms like `-3q^2`, `+q`, `7`.
    pub fn parse(s: &str) -> Option<Poly> {
        let s = s.trim();
        if s.is_empty() {
            return None;
        }
        let bytes = s.as_bytes();
        let mut coeffs: Vec<BigInt> = Vec::new();
        let mut i = 0;
        while i < bytes.len() {
            let mut neg = false;
            if bytes[i] == b'+' || bytes[i] == b'-' {
                neg = bytes[i] == b'-';
                i += 1;
            } else if i != 0 {
                return None;
            }
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let mut c: BigInt = if start == i { BigInt::one() } else { s[start..i].parse().ok()? };
            let mut k = 0usize;
            if i < bytes.len() && bytes[i] == b'q' {
                i += 1;
                k = 1;
                if i < bytes.len() && bytes[i] == b'^' {
                    i += 1;
                    let st = i;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    k = s[st..i].parse().ok()?;
                }
            } else if start == i {
                return None;
            }
            if neg {
                c = -c;
            }
            if coeffs.len() <= k {
                coeffs.resize(k + 1, BigInt::zero());
            }
            coeffs[k] += c;
        }
        Some(Poly::from_coeffs(coeffs))
    }

    /// Order by degree, then by coefficients from the top down.
    pub fn cmp_canonical(&self, other: &Poly) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_terms(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(cs: &[i64]) -> Poly {
        Poly::from_i64s(cs)
    }

    #[test]
    fn display_and_parse() {
        let x = p(&[-1, 2, 0, -1]);
        assert_eq!(x.to_string(), "-q^3+2q-1");
        assert_eq!(Poly::parse("-q^3+2q-1"), Some(x));
        assert_eq!(p(&[0, 1]).to_string(), "q");
        assert_eq!(Poly::zero().to_string(), "0");
        assert_eq!(Poly::parse("0"), Some(Poly::zero()));
        assert_eq!(Poly::parse("q^"), None);
        assert_eq!(Poly::parse("2x"), None);
    }

    #[test]
    fn gcd_of_products() {
        let a = p(&[1, 0, 1]);
        let b = p(&[-1, 1]);
        let c = p(&[2, 3]);
        let g = a.mul(&b).scale(&BigInt::from(6)).gcd(&a.mul(&c));
        assert_eq!(g, a);
        assert_eq!(p(&[0, 0, 3]).gcd(&p(&[0, 2, 4])), p(&[0, 1]));
    }

    #[test]
    fn exact_division() {
        let a = p(&[1, 1]);
        let b = p(&[-1, 0, 2, 5]);
        assert_eq!(a.mul(&b).div_exact(&b), Some(a.clone()));
        assert_eq!(b.div_exact(&a), None);
    }
}
