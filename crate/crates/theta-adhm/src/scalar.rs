//! Exact coefficients: Gaussian rationals and Laurent polynomials in the
//! deformation unit `mu`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, One, Signed, ToPrimitive, Zero};
use smallvec::SmallVec;

/// Rational number stored in machine words and promoted to big integers on
/// overflow. Values that fit are always demoted, so derived equality is
/// structural equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Rat {
    Small(Ratio<i64>),
    Big(BigRational),
}

impl Rat {
    pub fn new(n: i64, d: i64) -> Rat {
        Rat::Small(Ratio::new(n, d))
    }

    pub fn int(n: i64) -> Rat {
        Rat::Small(Ratio::from_integer(n))
    }

    fn big(&self) -> BigRational {
        match self {
            Rat::Small(r) => BigRational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom())),
            Rat::Big(b) => b.clone(),
        }
    }

    fn demote(b: BigRational) -> Rat {
        match (b.numer().to_i64(), b.denom().to_i64()) {
            (Some(n), Some(d)) => Rat::Small(Ratio::new_raw(n, d)),
            _ => Rat::Big(b),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Rat::Small(r) => r.is_zero(),
            Rat::Big(b) => b.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Rat::Small(r) if r.is_one())
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Rat::Small(r) => r.is_negative(),
            Rat::Big(b) => b.is_negative(),
        }
    }

    pub fn abs(&self) -> Rat {
        if self.is_negative() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    pub fn recip(&self) -> Rat {
        assert!(!self.is_zero(), "division by zero rational");
        match self {
            Rat::Small(r) if *r.numer() != i64::MIN => Rat::Small(r.recip()),
            _ => Rat::demote(self.big().recip()),
        }
    }

    pub fn numer_denom(&self) -> (BigInt, BigInt) {
        let b = self.big();
        (b.numer().clone(), b.denom().clone())
    }
}

impl Default for Rat {
    fn default() -> Self {
        Rat::int(0)
    }
}

impl PartialOrd for Rat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rat {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Rat::Small(a), Rat::Small(b)) => {
                // cross-multiplication in i128 cannot overflow
                let l = *a.numer() as i128 * *b.denom() as i128;
                let r = *b.numer() as i128 * *a.denom() as i128;
                l.cmp(&r)
            }
            _ => self.big().cmp(&other.big()),
        }
    }
}

macro_rules! rat_binop {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl $tr for &Rat {
            type Output = Rat;
            fn $m(self, rhs: &Rat) -> Rat {
                if let (Rat::Small(a), Rat::Small(b)) = (self, rhs) {
                    if let Some(r) = a.$checked(b) {
                        return Rat::Small(r);
                    }
                }
                Rat::demote(self.big().$m(rhs.big()))
            }
        }
        impl $tr for Rat {
            type Output = Rat;
            fn $m(self, rhs: Rat) -> Rat {
                (&self).$m(&rhs)
            }
        }
    };
}

rat_binop!(Add, add, checked_add);
rat_binop!(Sub, sub, checked_sub);
rat_binop!(Mul, mul, checked_mul);

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        match self {
            Rat::Small(r) if *r.numer() != i64::MIN => Rat::Small(-r),
            other => Rat::demote(-other.big()),
        }
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rat::Small(r) if r.is_integer() => write!(f, "{}", r.numer()),
            Rat::Small(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            Rat::Big(b) if b.is_integer() => write!(f, "{}", b.numer()),
            Rat::Big(b) => write!(f, "{}/{}", b.numer(), b.denom()),
        }
    }
}

/// Element of Q(i).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GaussRat {
    pub re: Rat,
    pub im: Rat,
}

impl GaussRat {
    pub fn new(re: Rat, im: Rat) -> GaussRat {
        GaussRat { re, im }
    }

    pub fn real(re: Rat) -> GaussRat {
        GaussRat { re, im: Rat::int(0) }
    }

    pub fn int(n: i64) -> GaussRat {
        GaussRat::real(Rat::int(n))
    }

    pub fn i() -> GaussRat {
        GaussRat::new(Rat::int(0), Rat::int(1))
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn conj(&self) -> GaussRat {
        GaussRat::new(self.re.clone(), -self.im.clone())
    }

    pub fn inv(&self) -> GaussRat {
        let n = &(&self.re * &self.re) + &(&self.im * &self.im);
        let ni = n.recip();
        GaussRat::new(&self.re * &ni, -(&self.im * &ni))
    }

    pub fn add(&self, o: &GaussRat) -> GaussRat {
        GaussRat::new(&self.re + &o.re, &self.im + &o.im)
    }

    pub fn sub(&self, o: &GaussRat) -> GaussRat {
        GaussRat::new(&self.re - &o.re, &self.im - &o.im)
    }

    pub fn mul(&self, o: &GaussRat) -> GaussRat {
        if self.im.is_zero() && o.im.is_zero() {
            return GaussRat::real(&self.re * &o.re);
        }
        GaussRat::new(
            &(&self.re * &o.re) - &(&self.im * &o.im),
            &(&self.re * &o.im) + &(&self.im * &o.re),
        )
    }

    pub fn neg(&self) -> GaussRat {
        GaussRat::new(-self.re.clone(), -self.im.clone())
    }

    fn fmt_atom(&self) -> (String, bool) {
        // returns text and whether it needs parentheses when followed by a factor
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => (self.re.to_string(), false),
            (true, false) => {
                if self.im.is_one() {
                    ("i".into(), false)
                } else if (-self.im.clone()).is_one() {
                    ("-i".into(), false)
                } else {
                    (format!("{} i", self.im), false)
                }
            }
            (false, false) => {
                let sign = if self.im.is_negative() { "-" } else { "+" };
                let a = self.im.abs();
                let imt = if a.is_one() { "i".to_string() } else { format!("{} i", a) };
                (format!("{} {} {}", self.re, sign, imt), true)
            }
        }
    }
}

impl fmt::Display for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (s, paren) = self.fmt_atom();
        if paren {
            write!(f, "({})", s)
        } else {
            write!(f, "{}", s)
        }
    }
}

/// Laurent polynomial in `mu` over Q(i): sorted `(exponent, coefficient)`
/// pairs with no zero coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    terms: SmallVec<[(i32, GaussRat); 1]>,
}

impl Scalar {
    pub fn zero() -> Scalar {
        Scalar { terms: SmallVec::new() }
    }

    pub fn one() -> Scalar {
        Scalar::int(1)
    }

    pub fn int(n: i64) -> Scalar {
        Scalar::term(0, GaussRat::int(n))
    }

    pub fn rat(n: i64, d: i64) -> Scalar {
        Scalar::term(0, GaussRat::real(Rat::new(n, d)))
    }

    pub fn i() -> Scalar {
        Scalar::term(0, GaussRat::i())
    }

    /// `mu^n`.
    pub fn mu_pow(n: i32) -> Scalar {
        Scalar::term(n, GaussRat::int(1))
    }

    pub fn mu() -> Scalar {
        Scalar::mu_pow(1)
    }

    /// `lambda = mu^2`.
    pub fn lambda() -> Scalar {
        Scalar::mu_pow(2)
    }

    pub fn term(exp: i32, c: GaussRat) -> Scalar {
        let mut terms = SmallVec::new();
        if !c.is_zero() {
            terms.push((exp, c));
        }
        Scalar { terms }
    }

    pub fn from_gauss(c: GaussRat) -> Scalar {
        Scalar::term(0, c)
    }

    pub fn terms(&self) -> &[(i32, GaussRat)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == 0 && self.terms[0].1.is_one()
    }

    /// A unit of the Laurent ring: a single nonzero term `c mu^n`.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn conj(&self) -> Scalar {
        let mut terms: SmallVec<[(i32, GaussRat); 1]> =
            self.terms.iter().map(|(e, c)| (-e, c.conj())).collect();
        terms.reverse();
        Scalar { terms }
    }

    /// Value at `mu = 1`.
    pub fn at_one(&self) -> GaussRat {
        self.terms.iter().fold(GaussRat::int(0), |acc, (_, c)| acc.add(c))
    }

    /// Substitute `mu = 1`, keeping the result as a constant `Scalar`.
    pub fn specialize(&self) -> Scalar {
        Scalar::from_gauss(self.at_one())
    }

    pub fn shift(&self, n: i32) -> Scalar {
        if n == 0 {
            return self.clone();
        }
        Scalar { terms: self.terms.iter().map(|(e, c)| (e + n, c.clone())).collect() }
    }

    pub fn scale(&self, c: &GaussRat) -> Scalar {
        if c.is_zero() {
            return Scalar::zero();
        }
        Scalar { terms: self.terms.iter().map(|(e, x)| (*e, x.mul(c))).collect() }
    }

    pub fn add(&self, o: &Scalar) -> Scalar {
        if o.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return o.clone();
        }
        let mut out: SmallVec<[(i32, GaussRat); 1]> = SmallVec::new();
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &o.terms);
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
                out.push(a[i].clone());
                i += 1;
            } else if i == a.len() || b[j].0 < a[i].0 {
                out.push(b[j].clone());
                j += 1;
            } else {
                let c = a[i].1.add(&b[j].1);
                if !c.is_zero() {
                    out.push((a[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
        Scalar { terms: out }
    }

    pub fn neg(&self) -> Scalar {
        Scalar { terms: self.terms.iter().map(|(e, c)| (*e, c.neg())).collect() }
    }

    pub fn sub(&self, o: &Scalar) -> Scalar {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Scalar) -> Scalar {
        if self.is_zero() || o.is_zero() {
            return Scalar::zero();
        }
        if self.terms.len() == 1 {
            let (e, c) = &self.terms[0];
            return Scalar { terms: o.terms.iter().map(|(f, d)| (e + f, c.mul(d))).collect() };
        }
        if o.terms.len() == 1 {
            let (f, d) = &o.terms[0];
            return Scalar { terms: self.terms.iter().map(|(e, c)| (e + f, c.mul(d))).collect() };
        }
        let mut acc = Scalar::zero();
        for (e, c) in &self.terms {
            let part = Scalar { terms: o.terms.iter().map(|(f, d)| (e + f, c.mul(d))).collect() };
            acc = acc.add(&part);
        }
        acc
    }

    pub fn pow(&self, n: u32) -> Scalar {
        let mut r = Scalar::one();
        for _ in 0..n {
            r = r.mul(self);
        }
        r
    }

    fn low(&self) -> i32 {
        self.terms[0].0
    }

    fn high(&self) -> i32 {
        self.terms[self.terms.len() - 1].0
    }

    /// Width of the exponent range; units have width zero.
    pub fn span(&self) -> i32 {
        if self.is_zero() {
            0
        } else {
            self.high() - self.low()
        }
    }

    /// Inverse in the Laurent ring, defined for units only.
    pub fn unit_inverse(&self) -> Option<Scalar> {
        if !self.is_unit() {
            return None;
        }
        let (e, c) = &self.terms[0];
        Some(Scalar::term(-e, c.inv()))
    }

    /// Exact quotient `self / d` in the Laurent ring, if it exists.
    pub fn div_exact(&self, d: &Scalar) -> Option<Scalar> {
        assert!(!d.is_zero(), "division by zero scalar");
        if self.is_zero() {
            return Some(Scalar::zero());
        }
        if let Some(inv) = d.unit_inverse() {
            return Some(self.mul(&inv));
        }
        let (q, r) = self.divrem(d);
        if r.is_zero() {
            Some(q)
        } else {
            None
        }
    }

    /// Polynomial division after normalising both operands to start at
    /// exponent zero; the remainder has span smaller than the divisor's.
    fn divrem(&self, d: &Scalar) -> (Scalar, Scalar) {
        let dl = d.low();
        let dh = d.high();
        let lead_inv = d.terms[d.terms.len() - 1].1.inv();
        let mut r = self.clone();
        let mut q = Scalar::zero();
        let base = if r.is_zero() { 0 } else { r.low() };
        while !r.is_zero() && r.high() - base >= dh - dl {
            let (rh, rc) = r.terms[r.terms.len() - 1].clone();
            let t = Scalar::term(rh - dh, rc.mul(&lead_inv));
            r = r.sub(&t.mul(d));
            q = q.add(&t);
        }
        (q, r)
    }

    /// Monic greatest common divisor over Q(i), normalised to lowest
    /// exponent zero.
    pub fn gcd(&self, o: &Scalar) -> Scalar {
        if self.is_zero() {
            return o.normalize_monic();
        }
        if o.is_zero() {
            return self.normalize_monic();
        }
        let mut a = self.normalize_monic();
        let mut b = o.normalize_monic();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r.normalize_monic();
        }
        a
    }

    fn normalize_monic(&self) -> Scalar {
        if self.is_zero() {
            return Scalar::zero();
        }
        let low = self.low();
        let inv = self.terms[self.terms.len() - 1].1.inv();
        self.shift(-low).scale(&inv)
    }

    fn fmt_with_paren(&self) -> (String, bool) {
        if self.terms.len() == 1 {
            let (e, c) = &self.terms[0];
            if *e == 0 {
                let (s, p) = c.fmt_atom();
                return (s, p);
            }
            let mu = fmt_mu(*e);
            if c.is_one() {
                return (mu, false);
            }
            if c.neg().is_one() {
                return (format!("-{}", mu), false);
            }
            let (s, p) = c.fmt_atom();
            let s = if p { format!("({})", s) } else { s };
            return (format!("{} {}", s, mu), false);
        }
        let mut out = String::new();
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let single = Scalar::term(*e, c.clone());
            let (s, _) = single.fmt_with_paren();
            if k == 0 {
                out.push_str(&s);
            } else if let Some(rest) = s.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(rest);
            } else {
                out.push_str(" + ");
                out.push_str(&s);
            }
        }
        (out, true)
    }

    /// Text usable as a leading factor in the expression grammar.
    pub fn factor_text(&self) -> String {
        let (s, p) = self.fmt_with_paren();
        if p {
            format!("({})", s)
        } else {
            s
        }
    }
}

fn fmt_mu(e: i32) -> String {
    if e == 1 {
        "mu".into()
    } else {
        format!("mu^{}", e)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let (s, _) = self.fmt_with_paren();
        write!(f, "{}", s)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::int(n)
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        Scalar::add(self, o)
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        Scalar::sub(self, o)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        Scalar::mul(self, o)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rat_promotes_on_overflow() {
        let big = Rat::int(i64::MAX);
        let s = &big + &big;
        assert!(matches!(s, Rat::Big(_)));
        let back = &s - &big;
        assert_eq!(back, Rat::int(i64::MAX));
        assert!(matches!(back, Rat::Small(_)));
    }

    #[test]
    fn conj_inverts_exponents() {
        let s = Scalar::term(0, GaussRat::i()).mul(&Scalar::mu());
        let c = s.conj();
        assert_eq!(c, Scalar::term(-1, GaussRat::i().neg()));
        assert_eq!(c.conj(), s);
    }

    #[test]
    fn specialization_is_multiplicative() {
        let a = Scalar::mu().add(&Scalar::rat(1, 2));
        let b = Scalar::mu_pow(-3).sub(&Scalar::i());
        assert_eq!(a.mul(&b).at_one(), a.at_one().mul(&b.at_one()));
    }

    #[test]
    fn exact_division_and_gcd() {
        let one_minus_mu = Scalar::one().sub(&Scalar::mu());
        let p = one_minus_mu.mul(&Scalar::mu_pow(-2).add(&Scalar::int(3)));
        assert_eq!(p.div_exact(&one_minus_mu), Some(Scalar::mu_pow(-2).add(&Scalar::int(3))));
        assert_eq!(Scalar::one().div_exact(&one_minus_mu), None);
        let g = p.gcd(&one_minus_mu.mul(&Scalar::mu()));
        assert_eq!(g, Scalar::mu().sub(&Scalar::one()));
    }

    #[test]
    fn display_forms() {
        assert_eq!(Scalar::mu_pow(-1).to_string(), "mu^-1");
        assert_eq!(Scalar::rat(-1, 2).mul(&Scalar::mu()).to_string(), "-1/2 mu");
        assert_eq!(Scalar::one().add(&Scalar::mu()).factor_text(), "(mu + 1)");
    }
}
