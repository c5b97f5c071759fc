//! Exact scalars in the rational function field `Q(q)`.
//!
//! A [`QRat`] is kept in canonical form: numerator and denominator in `Z[q]`
//! share no common factor over `Q[q]`, their combined integer content is 1,
//! and the denominator has a positive leading coefficient. Structural equality
//! is therefore field equality, and the textual form `(num)/(den)` round-trips.

mod poly;

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub use poly::Poly;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("pole of {value} at q = {at}")]
    Pole { value: String, at: String },
    #[error("cannot parse scalar `{0}`")]
    Parse(String),
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct QRat {
    num: Poly,
    den: Poly,
}

impl QRat {
    pub fn zero() -> Self {
        QRat { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        QRat { num: Poly::one(), den: Poly::one() }
    }

    pub fn from_int(c: i64) -> Self {
        QRat::from_poly(Poly::constant(BigInt::from(c)))
    }

    pub fn from_poly(p: Poly) -> Self {
        QRat { num: p, den: Poly::one() }
    }

    /// `q`
    pub fn q() -> Self {
        QRat::q_pow(1)
    }

    /// `q^e` for any integer `e`.
    pub fn q_pow(e: i64) -> Self {
        QRat::laurent(1, e)
    }

    /// `c * q^e`.
    pub fn laurent(c: i64, e: i64) -> Self {
        if c == 0 {
            return QRat::zero();
        }
        let c = BigInt::from(c);
        if e >= 0 {
            QRat { num: Poly::monomial(c, e as usize), den: Poly::one() }
        } else {
            QRat { num: Poly::constant(c), den: Poly::monomial(BigInt::one(), (-e) as usize) }
        }
    }

    /// Build `num/den` and bring it into canonical form.
    pub fn new(num: Poly, den: Poly) -> Result<Self, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(QRat::normalize(num, den))
    }

    fn normalize(mut num: Poly, mut den: Poly) -> Self {
        if num.is_zero() {
            return QRat::zero();
        }
        if den.is_one() {
            return QRat { num, den };
        }
        if den.is_monomial() {
            let s = den.valuation().unwrap().min(num.valuation().unwrap());
            if s > 0 {
                num = num.shift_down(s);
                den = den.shift_down(s);
            }
        } else {
            let g = num.gcd(&den);
            if !g.is_one() {
                num = num.div_exact(&g).expect("gcd divides numerator");
                den = den.div_exact(&g).expect("gcd divides denominator");
            }
        }
        let c = num.content().gcd(&den.content());
        let c = if den.leading().unwrap().is_negative() { -c } else { c };
        if !c.is_one() {
            num = num.div_exact_int(&c);
            den = den.div_exact_int(&c);
        }
        QRat { num, den }
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn inv(&self) -> Result<QRat, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(QRat::normalize(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, other: &QRat) -> Result<QRat, ScalarError> {
        Ok(self * &other.inv()?)
    }

    /// Specialize `q` to a rational value.
    pub fn eval(&self, q0: &BigRational) -> Result<BigRational, ScalarError> {
        let d = self.den.eval(q0);
        if d.is_zero() {
            return Err(ScalarError::Pole { value: self.to_string(), at: q0.to_string() });
        }
        Ok(self.num.eval(q0) / d)
    }

    /// Multiply by `q^e`.
    pub fn mul_q_pow(&self, e: i64) -> QRat {
        if e == 0 || self.is_zero() {
            return self.clone();
        }
        self * &QRat::q_pow(e)
    }

    /// Replace `q` by `q^{-1}` (the bar involution).
    pub fn bar(&self) -> QRat {
        let dn = self.num.degree().unwrap_or(0);
        let dd = self.den.degree().unwrap_or(0);
        let rev = |p: &Poly, d: usize| {
            let mut cs = vec![BigInt::zero(); d + 1];
            for (k, c) in p.coeffs().iter().enumerate() {
                cs[d - k] = c.clone();
            }
            Poly::from_coeffs(cs)
        };
        let (mut n, mut d) = (rev(&self.num, dn), rev(&self.den, dd));
        if dn > dd {
            d = d.shift_up(dn - dd);
        } else {
            n = n.shift_up(dd - dn);
        }
        QRat::normalize(n, d)
    }
}

impl Default for QRat {
    fn default() -> Self {
        QRat::zero()
    }
}

impl fmt::Display for QRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})/({})", self.num, self.den)
    }
}

impl FromStr for QRat {
    type Err = ScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ScalarError::Parse(s.to_string());
        let t = s.trim();
        let (n, d) = match t.split_once(")/(") {
            Some((a, b)) => (
                a.strip_prefix('(').ok_or_else(err)?,
                b.strip_suffix(')').ok_or_else(err)?,
            ),
            None => (t, "1"),
        };
        let num = Poly::parse(n).ok_or_else(err)?;
        let den = Poly::parse(d).ok_or_else(err)?;
        QRat::new(num, den)
    }
}

impl<'a> Add<&'a QRat> for &'a QRat {
    type Output = QRat;

    fn add(self, rhs: &'a QRat) -> QRat {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return QRat::normalize(self.num.add(&rhs.num), self.den.clone());
        }
        let num = self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den));
        QRat::normalize(num, self.den.mul(&rhs.den))
    }
}

impl<'a> Sub<&'a QRat> for &'a QRat {
    type Output = QRat;

    fn sub(self, rhs: &'a QRat) -> QRat {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a QRat> for &'a QRat {
    type Output = QRat;

    fn mul(self, rhs: &'a QRat) -> QRat {
        if self.is_zero() || rhs.is_zero() {
            return QRat::zero();
        }
        if self.is_one() {
            return rhs.clone();
        }
        if rhs.is_one() {
            return self.clone();
        }
        QRat::normalize(self.num.mul(&rhs.num), self.den.mul(&rhs.den))
    }
}

impl Neg for &QRat {
    type Output = QRat;

    fn neg(self) -> QRat {
        QRat { num: self.num.neg(), den: self.den.clone() }
    }
}

impl Neg for QRat {
    type Output = QRat;

    fn neg(self) -> QRat {
        -&self
    }
}

impl Add for QRat {
    type Output = QRat;

    fn add(self, rhs: QRat) -> QRat {
        &self + &rhs
    }
}

impl Sub for QRat {
    type Output = QRat;

    fn sub(self, rhs: QRat) -> QRat {
        &self - &rhs
    }
}

impl Mul for QRat {
    type Output = QRat;

    fn mul(self, rhs: QRat) -> QRat {
        &self * &rhs
    }
}

impl AddAssign<&QRat> for QRat {
    fn add_assign(&mut self, rhs: &QRat) {
        *self = &*self + rhs;
    }
}

/// The scalar by which `(K - K^{-1})/(q - q^{-1})` acts on a vector where `K = q^{-h}`,
/// i.e. `(q^{-h} - q^{h})/(q - q^{-1})`.
pub fn quantum_cartan(h: i64) -> QRat {
    let num = &QRat::q_pow(-h) - &QRat::q_pow(h);
    let den = &QRat::q() - &QRat::q_pow(-1);
    num.checked_div(&den).expect("q - q^-1 is nonzero")
}

/// Quantum integer `[k] = (q^k - q^{-k})/(q - q^{-1})`.
pub fn quantum_int(k: i64) -> QRat {
    -quantum_cartan(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn qr(s: &str) -> QRat {
        s.parse().unwrap()
    }

    #[test]
    fn canonical_rendering() {
        let x = &QRat::q() + &QRat::q_pow(-1);
        assert_eq!(x.to_string(), "(q^2+1)/(q)");
        assert_eq!(qr("(q^2+1)/(q)"), x);
        assert_eq!(QRat::zero().to_string(), "(0)/(1)");
        assert_eq!(qr("(2q+2)/(-4q^2-4q)").to_string(), "(-1)/(2q)");
    }

    #[test]
    fn cancellation() {
        let x = qr("(q^2-1)/(q-1)");
        assert_eq!(x, qr("(q+1)/(1)"));
        assert_eq!(&qr("(1)/(q+1)") + &qr("(q)/(q+1)"), QRat::one());
    }

    #[test]
    fn errors_are_distinct() {
        assert_eq!(QRat::zero().inv(), Err(ScalarError::DivisionByZero));
        let pole = qr("(1)/(q-1)").eval(&BigRational::one());
        assert!(matches!(pole, Err(ScalarError::Pole { .. })));
        assert!(matches!("q+".parse::<QRat>(), Err(ScalarError::Parse(_))));
    }

    #[test]
    fn cartan_values() {
        assert_eq!(quantum_cartan(0), QRat::zero());
        assert_eq!(quantum_cartan(1), QRat::from_int(-1));
        assert_eq!(quantum_cartan(-2), &QRat::q() + &QRat::q_pow(-1));
        assert_eq!(quantum_int(3), qr("(q^4+q^2+1)/(q^2)"));
    }

    #[test]
    fn bar_involution() {
        let x = qr("(q^3-2q+1)/(q^2+1)");
        assert_eq!(x.bar().bar(), x);
        assert_eq!(QRat::q().bar(), QRat::q_pow(-1));
    }

    fn arb_poly() -> impl Strategy<Value = Poly> {
        prop::collection::vec(-4i64..=4, 0..4).prop_map(|cs| Poly::from_i64s(&cs))
    }

    fn arb_qrat() -> impl Strategy<Value = QRat> {
        (arb_poly(), arb_poly(), 0i64..3).prop_filter_map("nonzero denominator", |(n, d, s)| {
            if d.is_zero() {
                None
            } else {
                Some(QRat::new(n, d.shift_up(s as usize)).unwrap())
            }
        })
    }

    proptest! {
        #[test]
        fn field_axioms(a in arb_qrat(), b in arb_qrat(), c in arb_qrat()) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert!((&a - &a).is_zero());
            if !a.is_zero() {
                prop_assert_eq!(&a * &a.inv().unwrap(), QRat::one());
            }
        }

        #[test]
        fn render_parse_round_trip(a in arb_qrat()) {
            let s = a.to_string();
            let back: QRat = s.parse().unwrap();
            prop_assert_eq!(&back, &a);
            prop_assert_eq!(back.to_string(), s);
        }

        #[test]
        fn evaluation_is_a_homomorphism(a in arb_qrat(), b in arb_qrat(), k in 2i64..7) {
            let q0 = BigRational::new(BigInt::from(k), BigInt::from(3));
            if let (Ok(x), Ok(y)) = (a.eval(&q0), b.eval(&q0)) {
                prop_assert_eq!((&a * &b).eval(&q0).unwrap(), &x * &y);
                prop_assert_eq!((&a + &b).eval(&q0).unwrap(), x + y);
            }
        }
    }
}
