//! Dense univariate polynomials over the integers, in the variable `L`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// A polynomial in `L` with arbitrary-precision integer coefficients.
///
/// Coefficients are stored densely by exponent. The last stored coefficient is
/// never zero, so the zero polynomial is the empty vector.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c * L^exp`.
    pub fn monomial(c: BigInt, exp: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); exp + 1];
        coeffs[exp] = c;
        IntPoly { coeffs }
    }

    /// `L^k - 1`.
    pub fn l_power_minus_one(k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] += 1;
        coeffs[0] -= 1;
        Self::from_coeffs(coeffs)
    }

    /// Builds a polynomial from coefficients in ascending exponent order,
    /// trimming trailing zeros.
    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Builds a polynomial from sparse `(exponent, coefficient)` pairs. Repeated
    /// exponents are summed.
    pub fn from_terms<I: IntoIterator<Item = (usize, BigInt)>>(terms: I) -> Self {
        let mut coeffs: Vec<BigInt> = Vec::new();
        for (e, c) in terms {
            if coeffs.len() <= e {
                coeffs.resize(e + 1, BigInt::zero());
            }
            coeffs[e] += c;
        }
        Self::from_coeffs(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, exp: usize) -> BigInt {
        self.coeffs.get(exp).cloned().unwrap_or_default()
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Lowest exponent carrying a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Nonzero terms as `(exponent, coefficient)`, ascending.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &BigInt)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    /// Non-negative gcd of all coefficients; zero for the zero polynomial.
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

    /// The polynomial divided by its content, with positive leading coefficient.
    pub fn primitive_part(&self) -> IntPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = self.content();
        if self.leading().is_some_and(|l| l.is_negative()) {
            c = -c;
        }
        self.div_scalar(&c)
    }

    /// Exact division of every coefficient by `c`.
    pub fn div_scalar(&self, c: &BigInt) -> IntPoly {
        if c.is_one() {
            return self.clone();
        }
        IntPoly {
            coeffs: self.coeffs.iter().map(|x| x / c).collect(),
        }
    }

    pub fn mul_scalar(&self, c: &BigInt) -> IntPoly {
        if c.is_zero() {
            return IntPoly::zero();
        }
        IntPoly {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Multiplies by `L^k`.
    pub fn shift(&self, k: usize) -> IntPoly {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPoly { coeffs }
    }

    /// Divides by `L^k`; the low `k` coefficients must be zero.
    pub fn unshift(&self, k: usize) -> IntPoly {
        debug_assert!(self.coeffs.iter().take(k).all(|c| c.is_zero()));
        IntPoly::from_coeffs(self.coeffs.iter().skip(k).cloned().collect())
    }

    /// Substitutes `L -> L^m`.
    pub fn substitute_power(&self, m: usize) -> IntPoly {
        assert!(m >= 1, "substitution exponent must be positive");
        if m == 1 || self.is_constant() {
            return self.clone();
        }
        let deg = self.coeffs.len() - 1;
        let mut coeffs = vec![BigInt::zero(); deg * m + 1];
        for (e, c) in self.coeffs.iter().enumerate() {
            coeffs[e * m] = c.clone();
        }
        IntPoly { coeffs }
    }

    pub fn pow(&self, mut k: u32) -> IntPoly {
        let mut base = self.clone();
        let mut acc = IntPoly::one();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Horner evaluation at an integer-like value of any ring with the needed ops.
    pub fn eval<T>(&self, x: &T) -> T
    where
        T: Clone + Zero + From<BigInt> + for<'a> Mul<&'a T, Output = T>,
    {
        let mut acc = T::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + T::from(c.clone());
        }
        acc
    }

    /// Pseudo-remainder of `self` by `divisor`: the remainder of
    /// `lc(divisor)^(deg self - deg divisor + 1) * self` on division by `divisor`.
    pub fn pseudo_rem(&self, divisor: &IntPoly) -> IntPoly {
        let dd = divisor
            .degree()
            .expect("pseudo-remainder by zero polynomial");
        let lc = divisor.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        while rem.len() > dd && !rem.is_empty() {
            let top = rem.len() - 1;
            let lead = rem[top].clone();
            if lead.is_zero() {
                rem.pop();
                continue;
            }
            let shift = top - dd;
            for c in rem.iter_mut() {
                *c *= &lc;
            }
            for (i, d) in divisor.coeffs.iter().enumerate() {
                rem[shift + i] -= &lead * d;
            }
            rem.pop();
        }
        IntPoly::from_coeffs(rem)
    }

    /// Division in `Z[L]` that must leave no remainder; returns `None` otherwise.
    pub fn div_exact(&self, divisor: &IntPoly) -> Option<IntPoly> {
        let dd = divisor.degree().expect("division by zero polynomial");
        if self.is_zero() {
            return Some(IntPoly::zero());
        }
        let sd = self.degree().unwrap();
        if sd < dd {
            return None;
        }
        let lc = divisor.leading().unwrap();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); sd - dd + 1];
        for shift in (0..=sd - dd).rev() {
            let lead = &rem[shift + dd];
            if lead.is_zero() {
                continue;
            }
            let (q, r) = lead.div_rem(lc);
            if !r.is_zero() {
                return None;
            }
            for (i, d) in divisor.coeffs.iter().enumerate() {
                rem[shift + i] -= &q * d;
            }
            quot[shift] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(IntPoly::from_coeffs(quot))
    }

    /// Primitive gcd over `Q[L]`, normalized to content 1 and positive leading
    /// coefficient. Computed with the primitive polynomial remainder sequence.
    pub fn primitive_gcd(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() {
            return other.primitive_part();
        }
        if other.is_zero() {
            return self.primitive_part();
        }
        // Dividing out common powers of L first keeps the remainder sequence short.
        let v = self.valuation().unwrap().min(other.valuation().unwrap());
        let mut a = self.unshift(self.valuation().unwrap()).primitive_part();
        let mut b = other.unshift(other.valuation().unwrap()).primitive_part();
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            if b.is_constant() {
                a = IntPoly::one();
                break;
            }
            let r = a.pseudo_rem(&b);
            a = b;
            b = r.primitive_part();
        }
        a.primitive_part().shift(v)
    }

    /// The `d`-th cyclotomic polynomial, computed as the truncated power series
    /// `prod_{e | d} (1 - L^e)^{mu(d / e)}` modulo `L^{phi(d) + 1}`.
    pub fn cyclotomic(d: usize) -> IntPoly {
        assert!(d >= 1);
        if d == 1 {
            return IntPoly::from_i64s(&[-1, 1]);
        }
        let deg = euler_phi(d);
        let mut series = vec![BigInt::zero(); deg + 1];
        series[0] = BigInt::one();
        for e in (1..=d.min(deg)).filter(|e| d.is_multiple_of(*e)) {
            match mobius(d / e) {
                1 => {
                    // multiply by (1 - L^e)
                    for i in (e..=deg).rev() {
                        let t = series[i - e].clone();
                        series[i] -= t;
                    }
                }
                -1 => {
                    // divide by (1 - L^e)
                    for i in e..=deg {
                        let t = series[i - e].clone();
                        series[i] += t;
                    }
                }
                _ => {}
            }
        }
        IntPoly::from_coeffs(series)
    }

    /// Renders the polynomial with `var` as the variable name, highest degree first.
    pub fn render(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (e, c) in self.terms().collect::<Vec<_>>().into_iter().rev() {
            let neg = c.is_negative();
            let abs = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match e {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{e}"),
            };
            if mono.is_empty() {
                out.push_str(&abs.to_string());
            } else if abs.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{abs}*{mono}"));
            }
        }
        out
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({})", self.render("L"))
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("L"))
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (c, d) in coeffs.iter_mut().zip(&short.coeffs) {
            *c += d;
        }
        IntPoly::from_coeffs(coeffs)
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        self + &(-rhs)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        IntPoly::from_coeffs(coeffs)
    }
}

impl PartialOrd for IntPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for IntPoly {
    /// Degree first, then coefficients from the top. Only used for stable sorting.
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

/// Euler's totient.
pub(crate) fn euler_phi(mut n: usize) -> usize {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

pub(crate) fn mobius(mut n: usize) -> i32 {
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn trailing_zeros_are_trimmed() {
        assert!(p(&[0, 0]).is_zero());
        assert_eq!(p(&[1, 2, 0]).degree(), Some(1));
    }

    #[test]
    fn gcd_of_cyclotomic_products() {
        // (L^2 - 1) and (L^3 - 1) share L - 1
        let g = IntPoly::l_power_minus_one(2).primitive_gcd(&IntPoly::l_power_minus_one(3));
        assert_eq!(g, p(&[-1, 1]));
        // 2L^2(L+1) and 4L(L+1)(L-2) share L(L+1) over Q
        let a = p(&[0, 0, 2, 2]);
        let b = &(&p(&[0, 4]) * &p(&[1, 1])) * &p(&[-2, 1]);
        assert_eq!(a.primitive_gcd(&b), p(&[0, 1, 1]));
    }

    #[test]
    fn exact_division_detects_remainders() {
        let a = &p(&[-1, 1]) * &p(&[1, 1]);
        assert_eq!(a.div_exact(&p(&[1, 1])), Some(p(&[-1, 1])));
        assert_eq!(a.div_exact(&p(&[1, 2])), None);
    }

    #[test]
    fn cyclotomic_polynomials_multiply_to_l_power_minus_one() {
        for n in 1..=30 {
            let prod = (1..=n)
                .filter(|d| n % d == 0)
                .fold(IntPoly::one(), |acc, d| &acc * &IntPoly::cyclotomic(d));
            assert_eq!(prod, IntPoly::l_power_minus_one(n), "n = {n}");
        }
        assert_eq!(IntPoly::cyclotomic(3), p(&[1, 1, 1]));
        assert_eq!(IntPoly::cyclotomic(6), p(&[1, -1, 1]));
    }

    #[test]
    fn substitution_and_render() {
        assert_eq!(p(&[1, 1]).substitute_power(3), p(&[1, 0, 0, 1]));
        assert_eq!(p(&[-1, 0, 3]).render("L"), "3*L^2 - 1");
    }
}
