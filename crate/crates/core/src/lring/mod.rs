//! Exact arithmetic in the field of rational functions in the Lefschetz symbol `L`.
//!
//! Every motivic class handled by the crate is a rational function in `L`, so
//! [`MClass`] stores a reduced fraction of integer polynomials. The localized
//! Grothendieck ring of stacks with affine stabilizers sits inside this field as
//! the fractions whose denominators divide `L^a * prod (L^i - 1)^{e_i}`; see
//! [`MClass::in_localization`].

mod parse;
mod poly;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{MotiveError, Result};

pub(crate) use poly::mobius;
pub use poly::IntPoly;

/// An element of `Q(L)` in canonical form.
///
/// Canonical form: numerator and denominator are coprime in `Q[L]`, the integer
/// contents of numerator and denominator are coprime, and the denominator has a
/// positive leading coefficient. Zero is `0/1`. Two classes are equal exactly when
/// their stored fields are equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MClass {
    num: IntPoly,
    den: IntPoly,
}

impl MClass {
    /// Builds `num / den` and brings it into canonical form.
    pub fn new(num: IntPoly, den: IntPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(MotiveError::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(mut num: IntPoly, mut den: IntPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        if !den.is_constant() {
            let g = num.primitive_gcd(&den);
            if !g.is_one() {
                num = num.div_exact(&g).expect("gcd divides numerator");
                den = den.div_exact(&g).expect("gcd divides denominator");
            }
        }
        let mut c = num.content().gcd(&den.content());
        if den.leading().is_some_and(|l| l.is_negative()) {
            c = -c;
        }
        if !c.is_one() {
            num = num.div_scalar(&c);
            den = den.div_scalar(&c);
        }
        MClass { num, den }
    }

    pub fn zero() -> Self {
        MClass {
            num: IntPoly::zero(),
            den: IntPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(c: i64) -> Self {
        Self::from_poly(IntPoly::constant(BigInt::from(c)))
    }

    pub fn from_bigint(c: BigInt) -> Self {
        Self::from_poly(IntPoly::constant(c))
    }

    pub fn from_ratio(n: i64, d: i64) -> Result<Self> {
        Self::new(
            IntPoly::constant(BigInt::from(n)),
            IntPoly::constant(BigInt::from(d)),
        )
    }

    pub fn from_poly(p: IntPoly) -> Self {
        MClass {
            num: p,
            den: IntPoly::one(),
        }
    }

    /// The Lefschetz class `L`.
    pub fn lefschetz() -> Self {
        Self::l_pow(1)
    }

    /// `L^k` for any integer `k`.
    pub fn l_pow(k: i64) -> Self {
        let mono = IntPoly::monomial(BigInt::one(), k.unsigned_abs() as usize);
        if k >= 0 {
            Self::from_poly(mono)
        } else {
            MClass {
                num: IntPoly::one(),
                den: mono,
            }
        }
    }

    /// `L^k - 1` for `k >= 0`.
    pub fn l_power_minus_one(k: usize) -> Self {
        Self::from_poly(IntPoly::l_power_minus_one(k))
    }

    pub fn numerator(&self) -> &IntPoly {
        &self.num
    }

    pub fn denominator(&self) -> &IntPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// The class as a polynomial in `L`, if its denominator is 1.
    pub fn as_polynomial(&self) -> Option<&IntPoly> {
        self.den.is_one().then_some(&self.num)
    }

    /// `deg(num) - deg(den)`; `None` for zero. This is minus the `1/L`-adic valuation.
    pub fn degree(&self) -> Option<i64> {
        Some(self.num.degree()? as i64 - self.den.degree().unwrap() as i64)
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(MotiveError::DivisionByZero);
        }
        Ok(Self::reduce(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, rhs: &MClass) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    /// Multiplies by the rational number `1/k`.
    pub fn div_int(&self, k: i64) -> Self {
        assert!(k != 0, "division by integer zero");
        Self::reduce(self.num.clone(), self.den.mul_scalar(&BigInt::from(k)))
    }

    pub fn mul_int(&self, k: i64) -> Self {
        Self::reduce(self.num.mul_scalar(&BigInt::from(k)), self.den.clone())
    }

    /// Integer power; negative exponents invert.
    pub fn pow(&self, k: i64) -> Result<Self> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let e = u32::try_from(k.unsigned_abs())
            .map_err(|_| MotiveError::InvalidArgument(format!("exponent {k} too large")))?;
        Ok(MClass {
            num: base.num.pow(e),
            den: base.den.pow(e),
        })
    }

    /// The Adams operation `psi_m`, the ring endomorphism of `Q(L)` induced by
    /// `L -> L^m`.
    pub fn adams(&self, m: usize) -> Self {
        assert!(m >= 1, "Adams operations are indexed by positive integers");
        if m == 1 {
            return self.clone();
        }
        // Substitution preserves coprimality, contents and the sign of the leading
        // coefficient, so the result is already canonical.
        MClass {
            num: self.num.substitute_power(m),
            den: self.den.substitute_power(m),
        }
    }

    /// Evaluates at `L = q`, the point-counting measure over a field with `q` elements.
    pub fn eval_at(&self, q: &BigRational) -> Result<BigRational> {
        let d: BigRational = self.den.eval(q);
        if d.is_zero() {
            return Err(MotiveError::Pole(q.to_string()));
        }
        let n: BigRational = self.num.eval(q);
        Ok(n / d)
    }

    pub fn eval_at_int(&self, q: i64) -> Result<BigRational> {
        self.eval_at(&BigRational::from_integer(BigInt::from(q)))
    }

    /// Whether the class lies in `Z[L, 1/L, 1/(L^n - 1) : n >= 1]`.
    ///
    /// The irreducible factors of the `L^n - 1` are the cyclotomic polynomials, so
    /// the denominator is stripped of powers of `L` and of every cyclotomic factor
    /// it contains; the class is in the ring iff what remains is the constant 1.
    pub fn in_localization(&self) -> bool {
        let mut rest = self.den.clone();
        if rest.is_one() {
            return true;
        }
        if !rest.content().is_one() {
            return false;
        }
        if let Some(v) = rest.valuation() {
            rest = rest.unshift(v);
        }
        let deg = rest.degree().unwrap_or(0);
        // phi(d) >= sqrt(d / 2), so no cyclotomic factor of degree <= deg has d > 2 deg^2.
        let max_d = 2 * deg * deg + 2;
        for d in 1..=max_d {
            if rest.is_constant() {
                break;
            }
            let remaining = rest.degree().unwrap();
            if poly::euler_phi(d) > remaining {
                continue;
            }
            let phi_d = IntPoly::cyclotomic(d);
            while let Some(q) = rest.div_exact(&phi_d) {
                rest = q;
            }
        }
        rest.is_one()
    }

    /// Laurent coefficients when the denominator is a power of `L`.
    pub fn is_laurent_polynomial(&self) -> Option<BTreeMap<i64, BigInt>> {
        let v = self.den.valuation()?;
        if self.den != IntPoly::monomial(BigInt::one(), v) {
            return None;
        }
        Some(
            self.num
                .terms()
                .map(|(e, c)| (e as i64 - v as i64, c.clone()))
                .collect(),
        )
    }

    /// Factors the denominator as `c * L^a * prod (L^i - 1)^{e_i}` when possible,
    /// peeling off the largest `i` first. Returns `(a, [(i, e_i)], leftover)`.
    pub fn cyclotomic_denominator(&self) -> (usize, Vec<(usize, u32)>, IntPoly) {
        let mut rest = self.den.clone();
        let a = rest.valuation().unwrap_or(0);
        rest = rest.unshift(a);
        let mut factors = Vec::new();
        let top = rest.degree().unwrap_or(0);
        for i in (1..=top).rev() {
            let cyc = IntPoly::l_power_minus_one(i);
            let mut e = 0;
            while let Some(q) = rest.div_exact(&cyc) {
                rest = q;
                e += 1;
            }
            if e > 0 {
                factors.push((i, e));
            }
        }
        factors.reverse();
        (a, factors, rest)
    }

    /// Human-readable form with the denominator factored into `L^a` and
    /// `(L^i - 1)` powers where that is possible; raw fraction otherwise.
    pub fn render_factored(&self) -> String {
        if self.den.is_one() {
            return self.num.to_string();
        }
        let (a, factors, rest) = self.cyclotomic_denominator();
        if !rest.is_one() {
            return self.to_string();
        }
        let mut parts = Vec::new();
        match a {
            0 => {}
            1 => parts.push("L".to_string()),
            _ => parts.push(format!("L^{a}")),
        }
        for (i, e) in factors {
            let base = if i == 1 {
                "(L - 1)".to_string()
            } else {
                format!("(L^{i} - 1)")
            };
            parts.push(if e == 1 { base } else { format!("{base}^{e}") });
        }
        let num = if self.num.terms().count() > 1 {
            format!("({})", self.num)
        } else {
            self.num.to_string()
        };
        if parts.len() == 1 {
            format!("{num}/{}", parts[0])
        } else {
            format!("{num}/({})", parts.join("*"))
        }
    }

    /// Sparse `(exponent, decimal coefficient)` list, ascending.
    fn encode_poly(p: &IntPoly) -> Vec<(usize, String)> {
        p.terms().map(|(e, c)| (e, c.to_string())).collect()
    }

    fn decode_poly(terms: &[(usize, String)]) -> Result<IntPoly> {
        let mut parsed = Vec::with_capacity(terms.len());
        for (e, c) in terms {
            let c: BigInt = c
                .parse()
                .map_err(|_| MotiveError::Parse(format!("bad coefficient {c:?}")))?;
            parsed.push((*e, c));
        }
        Ok(IntPoly::from_terms(parsed))
    }
}

/// `[GL_n] = prod_{i=0}^{n-1} (L^n - L^i)`.
pub fn gl_class(n: usize) -> MClass {
    let mut acc = IntPoly::one();
    for i in 0..n {
        let factor = &IntPoly::monomial(BigInt::one(), n) - &IntPoly::monomial(BigInt::one(), i);
        acc = &acc * &factor;
    }
    MClass::from_poly(acc)
}

impl Default for MClass {
    fn default() -> Self {
        Self::zero()
    }
}

impl fmt::Display for MClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let num = if self.num.terms().count() > 1 {
            format!("({})", self.num)
        } else {
            self.num.to_string()
        };
        let den = self.den.to_string();
        if self.den.terms().count() > 1 || den.contains('*') {
            write!(f, "{num}/({den})")
        } else {
            write!(f, "{num}/{den}")
        }
    }
}

impl fmt::Debug for MClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MClass({self})")
    }
}

impl Add for &MClass {
    type Output = MClass;
    fn add(self, rhs: &MClass) -> MClass {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return MClass::reduce(&self.num + &rhs.num, self.den.clone());
        }
        // Combine over lcm(den_a, den_b) to keep the intermediate small.
        let g = self.den.primitive_gcd(&rhs.den);
        let a_cof = self.den.div_exact(&g).expect("gcd divides");
        let b_cof = rhs.den.div_exact(&g).expect("gcd divides");
        let num = &(&self.num * &b_cof) + &(&rhs.num * &a_cof);
        MClass::reduce(num, &self.den * &b_cof)
    }
}

impl Sub for &MClass {
    type Output = MClass;
    fn sub(self, rhs: &MClass) -> MClass {
        self + &(-rhs)
    }
}

impl Neg for &MClass {
    type Output = MClass;
    fn neg(self) -> MClass {
        MClass {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Mul for &MClass {
    type Output = MClass;
    fn mul(self, rhs: &MClass) -> MClass {
        if self.is_zero() || rhs.is_zero() {
            return MClass::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return MClass::from_poly(&self.num * &rhs.num);
        }
        // Cross-cancel first so the final gcd works on smaller polynomials.
        let g1 = self.num.primitive_gcd(&rhs.den);
        let g2 = rhs.num.primitive_gcd(&self.den);
        let n1 = self.num.div_exact(&g1).expect("gcd divides");
        let d2 = rhs.den.div_exact(&g1).expect("gcd divides");
        let n2 = rhs.num.div_exact(&g2).expect("gcd divides");
        let d1 = self.den.div_exact(&g2).expect("gcd divides");
        MClass::reduce(&n1 * &n2, &d1 * &d2)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for MClass {
            type Output = MClass;
            fn $f(self, rhs: MClass) -> MClass {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&MClass> for MClass {
            type Output = MClass;
            fn $f(self, rhs: &MClass) -> MClass {
                (&self).$f(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for MClass {
    type Output = MClass;
    fn neg(self) -> MClass {
        -&self
    }
}

impl From<IntPoly> for MClass {
    fn from(p: IntPoly) -> Self {
        Self::from_poly(p)
    }
}

impl From<i64> for MClass {
    fn from(c: i64) -> Self {
        Self::from_int(c)
    }
}

#[derive(Serialize, Deserialize)]
struct MClassRepr {
    num: Vec<(usize, String)>,
    den: Vec<(usize, String)>,
}

impl Serialize for MClass {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MClassRepr {
            num: Self::encode_poly(&self.num),
            den: Self::encode_poly(&self.den),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for MClass {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = MClassRepr::deserialize(d)?;
        let num = MClass::decode_poly(&repr.num).map_err(D::Error::custom)?;
        let den = MClass::decode_poly(&repr.den).map_err(D::Error::custom)?;
        MClass::new(num, den).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l() -> MClass {
        MClass::lefschetz()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn basic_field_operations() {
        assert_eq!((&l() + &MClass::one()).to_string(), "L + 1");
        let lm1 = MClass::l_power_minus_one(1);
        assert!((&lm1.inv().unwrap() * &lm1).is_one());
        let l2m1 = MClass::l_power_minus_one(2);
        assert_eq!(&l2m1 * &lm1.inv().unwrap(), &l() + &MClass::one());
        assert_eq!(MClass::zero().inv(), Err(MotiveError::DivisionByZero));
    }

    #[test]
    fn rational_constants_are_canonical() {
        let half = MClass::from_ratio(2, -4).unwrap();
        assert_eq!(half.numerator(), &IntPoly::from_i64s(&[-1]));
        assert_eq!(half.denominator(), &IntPoly::from_i64s(&[2]));
        // (2L + 2) / (4L - 4) = (L + 1) / (2L - 2)
        let c = MClass::new(IntPoly::from_i64s(&[2, 2]), IntPoly::from_i64s(&[-4, 4])).unwrap();
        assert_eq!(c.numerator(), &IntPoly::from_i64s(&[1, 1]));
        assert_eq!(c.denominator(), &IntPoly::from_i64s(&[-2, 2]));
    }

    #[test]
    fn gl_classes() {
        assert!(gl_class(0).is_one());
        let expected = &MClass::l_power_minus_one(2) * &(&l().pow(2).unwrap() - &l());
        assert_eq!(gl_class(2), expected);
        assert_eq!(gl_class(2).eval_at_int(2).unwrap(), q(6, 1));
        assert_eq!(gl_class(3).eval_at_int(2).unwrap(), q(168, 1));
    }

    #[test]
    fn adams_examples() {
        assert_eq!(l().adams(3), MClass::l_pow(3));
        let inv = MClass::l_power_minus_one(1).inv().unwrap();
        assert_eq!(inv.adams(2), MClass::l_power_minus_one(2).inv().unwrap());
        let lp1 = &l() + &MClass::one();
        assert_eq!(lp1.adams(3).adams(2), lp1.adams(6));
        assert_eq!(lp1.adams(6), &MClass::l_pow(6) + &MClass::one());
    }

    #[test]
    fn evaluation() {
        let c = MClass::l_pow(4).div(&gl_class(2)).unwrap();
        assert_eq!(c.eval_at_int(2).unwrap(), q(8, 3));
        assert_eq!(l().eval_at_int(7).unwrap(), q(7, 1));
        let pole = MClass::l_power_minus_one(1).inv().unwrap();
        assert!(matches!(pole.eval_at_int(1), Err(MotiveError::Pole(_))));
    }

    #[test]
    fn localization_membership() {
        assert!(gl_class(2).inv().unwrap().in_localization());
        let lm2 = MClass::from_poly(IntPoly::from_i64s(&[-2, 1]));
        assert!(!lm2.inv().unwrap().in_localization());
        assert!(MClass::from_poly(IntPoly::from_i64s(&[5, -3, 0, 7])).in_localization());
        assert!(!MClass::from_ratio(1, 2).unwrap().in_localization());
        // (L^2 + L + 1) divides L^3 - 1
        let c = MClass::from_poly(IntPoly::from_i64s(&[1, 1, 1]))
            .inv()
            .unwrap();
        assert!(c.in_localization());
        // (L^2 + 1)^2 divides (L^4 - 1)^2
        let d = MClass::from_poly(IntPoly::from_i64s(&[1, 0, 1]).pow(2))
            .inv()
            .unwrap();
        assert!(d.in_localization());
    }

    #[test]
    fn laurent_detection() {
        let a = &MClass::l_pow(4) + &MClass::l_pow(3);
        let m = a.is_laurent_polynomial().unwrap();
        assert_eq!(
            m.into_iter().collect::<Vec<_>>(),
            vec![(3, 1.into()), (4, 1.into())]
        );
        let b = (&MClass::l_pow(2) + &MClass::one()).div(&l()).unwrap();
        let m = b.is_laurent_polynomial().unwrap();
        assert_eq!(
            m.into_iter().collect::<Vec<_>>(),
            vec![(-1, 1.into()), (1, 1.into())]
        );
        assert!(MClass::l_power_minus_one(1)
            .inv()
            .unwrap()
            .is_laurent_polynomial()
            .is_none());
    }

    #[test]
    fn factored_rendering() {
        let c = MClass::l_pow(4).div(&gl_class(2)).unwrap();
        assert_eq!(c.render_factored(), "L^3/((L - 1)*(L^2 - 1))");
        let nonloc = MClass::from_poly(IntPoly::from_i64s(&[-2, 1]))
            .inv()
            .unwrap();
        assert_eq!(nonloc.render_factored(), "1/(L - 2)");
        let single: MClass = "L^2/(L^2-1)".parse().unwrap();
        assert_eq!(single.render_factored(), "L^2/(L^2 - 1)");
        assert_eq!(MClass::l_pow(-2).render_factored(), "1/L^2");
    }

    #[test]
    fn json_encoding() {
        let c = MClass::l_pow(4).div(&gl_class(2)).unwrap();
        let s = serde_json::to_string(&c).unwrap();
        assert_eq!(
            s,
            r#"{"num":[[3,"1"]],"den":[[0,"1"],[1,"-1"],[2,"-1"],[3,"1"]]}"#
        );
        let back: MClass = serde_json::from_str(&s).unwrap();
        assert_eq!(back, c);
        assert!(serde_json::from_str::<MClass>(r#"{"num":[[0,"1"]],"den":[]}"#).is_err());
    }
}
