//! Truncated power series in `t` with coefficients in `Q(L)`.
//!
//! A series of order `N` stores exactly the coefficients of `t^0 .. t^N`. Series
//! of different orders never mix: binary operations on mismatched orders fail
//! instead of silently truncating.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize};

use crate::error::{MotiveError, Result};
use crate::lring::MClass;

#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct MSeries {
    order: usize,
    coeffs: Vec<MClass>,
}

impl MSeries {
    /// Builds a series of the given order. Missing coefficients are zero; any
    /// beyond `t^order` are dropped.
    pub fn from_coeffs(order: usize, mut coeffs: Vec<MClass>) -> Self {
        coeffs.resize(order + 1, MClass::zero());
        MSeries { order, coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self::from_coeffs(order, Vec::new())
    }

    pub fn one(order: usize) -> Self {
        Self::constant(MClass::one(), order)
    }

    pub fn constant(c: MClass, order: usize) -> Self {
        Self::from_coeffs(order, vec![c])
    }

    /// `c * t^k`, zero if `k > order`.
    pub fn monomial(c: MClass, k: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    /// `1 / (1 - c t) = sum c^n t^n`.
    pub fn geometric(c: &MClass, order: usize) -> Self {
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut acc = MClass::one();
        for _ in 0..=order {
            coeffs.push(acc.clone());
            acc = &acc * c;
        }
        MSeries { order, coeffs }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeff(&self, n: usize) -> &MClass {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[MClass] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(MClass::is_zero)
    }

    /// The same series cut down to a smaller order.
    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order, "cannot raise truncation order");
        Self::from_coeffs(order, self.coeffs[..=order].to_vec())
    }

    fn check_order(&self, other: &MSeries) -> Result<()> {
        if self.order != other.order {
            return Err(MotiveError::OrderMismatch(self.order, other.order));
        }
        Ok(())
    }

    pub fn add(&self, other: &MSeries) -> Result<MSeries> {
        self.check_order(other)?;
        Ok(MSeries {
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &MSeries) -> Result<MSeries> {
        self.check_order(other)?;
        Ok(MSeries {
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn neg(&self) -> MSeries {
        self.map_coeffs(|c| -c)
    }

    /// Multiplies every coefficient by `c`.
    pub fn scale(&self, c: &MClass) -> MSeries {
        self.map_coeffs(|x| x * c)
    }

    pub fn map_coeffs<F: Fn(&MClass) -> MClass>(&self, f: F) -> MSeries {
        MSeries {
            order: self.order,
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    /// Truncated Cauchy product.
    pub fn mul(&self, other: &MSeries) -> Result<MSeries> {
        self.check_order(other)?;
        let n = self.order;
        let mut coeffs = vec![MClass::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=n - i].iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] = &coeffs[i + j] + &(a * b);
                }
            }
        }
        Ok(MSeries { order: n, coeffs })
    }

    /// Multiplicative inverse; requires an invertible constant term.
    pub fn inv(&self) -> Result<MSeries> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(MotiveError::NonInvertibleConstant);
        }
        let c0_inv = c0.inv()?;
        let mut out: Vec<MClass> = Vec::with_capacity(self.order + 1);
        out.push(c0_inv.clone());
        for n in 1..=self.order {
            let mut acc = MClass::zero();
            for k in 1..=n {
                let a = &self.coeffs[k];
                if !a.is_zero() {
                    acc = &acc + &(a * &out[n - k]);
                }
            }
            out.push(-(&acc * &c0_inv));
        }
        Ok(MSeries {
            order: self.order,
            coeffs: out,
        })
    }

    /// Integer power by repeated squaring; negative exponents invert first.
    pub fn pow_int(&self, k: i64) -> Result<MSeries> {
        let mut base = if k < 0 { self.inv()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = MSeries::one(self.order);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// `t -> scale * t^e`: the coefficient of `t^{e n}` becomes `scale^n c_n`.
    pub fn substitute(&self, scale: &MClass, e: usize) -> Result<MSeries> {
        if e == 0 {
            return Err(MotiveError::InvalidArgument(
                "substitution exponent must be positive".into(),
            ));
        }
        let mut out = MSeries::zero(self.order);
        let mut power = MClass::one();
        for n in 0..=self.order / e {
            out.coeffs[e * n] = &self.coeffs[n] * &power;
            power = &power * scale;
        }
        Ok(out)
    }

    /// Ordinary exponential of a series with zero constant term.
    pub fn exp(&self) -> Result<MSeries> {
        if !self.coeffs[0].is_zero() {
            return Err(MotiveError::BadConstantTerm {
                expected: "0",
                found: self.coeffs[0].to_string(),
            });
        }
        // E' = F' E, so n E_n = sum_{k=1}^n k F_k E_{n-k}.
        let mut out: Vec<MClass> = Vec::with_capacity(self.order + 1);
        out.push(MClass::one());
        for n in 1..=self.order {
            let mut acc = MClass::zero();
            for k in 1..=n {
                let f = &self.coeffs[k];
                if !f.is_zero() {
                    acc = &acc + &(&f.mul_int(k as i64) * &out[n - k]);
                }
            }
            out.push(acc.div_int(n as i64));
        }
        Ok(MSeries {
            order: self.order,
            coeffs: out,
        })
    }

    /// Ordinary logarithm of a series with constant term 1.
    pub fn log(&self) -> Result<MSeries> {
        if !self.coeffs[0].is_one() {
            return Err(MotiveError::BadConstantTerm {
                expected: "1",
                found: self.coeffs[0].to_string(),
            });
        }
        // A' = L' A, so n L_n = n A_n - sum_{k=1}^{n-1} k L_k A_{n-k}.
        let mut out: Vec<MClass> = Vec::with_capacity(self.order + 1);
        out.push(MClass::zero());
        for n in 1..=self.order {
            let mut acc = self.coeffs[n].mul_int(n as i64);
            for k in 1..n {
                let a = &self.coeffs[n - k];
                if !a.is_zero() && !out[k].is_zero() {
                    acc = &acc - &(&out[k].mul_int(k as i64) * a);
                }
            }
            out.push(acc.div_int(n as i64));
        }
        Ok(MSeries {
            order: self.order,
            coeffs: out,
        })
    }
}

impl<'de> Deserialize<'de> for MSeries {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            order: usize,
            coeffs: Vec<MClass>,
        }
        let repr = Repr::deserialize(d)?;
        if repr.coeffs.len() != repr.order + 1 {
            return Err(D::Error::custom(format!(
                "series of order {} needs {} coefficients, found {}",
                repr.order,
                repr.order + 1,
                repr.coeffs.len()
            )));
        }
        Ok(MSeries {
            order: repr.order,
            coeffs: repr.coeffs,
        })
    }
}

/// Product of finitely many series of a common order; the empty product is 1.
pub fn finite_product(factors: &[MSeries], order: usize) -> Result<MSeries> {
    factors
        .iter()
        .try_fold(MSeries::one(order), |acc, f| acc.mul(f))
}

/// The t-adically convergent product `prod_{k >= 1} factor(k)`, where
/// `factor(k) = 1 + O(t^k)`. Only `k = 1..=order` can contribute, and every
/// factor is checked against that contract.
pub fn tadic_product<F>(order: usize, mut factor: F) -> Result<MSeries>
where
    F: FnMut(usize) -> Result<MSeries>,
{
    let mut acc = MSeries::one(order);
    for k in 1..=order {
        let f = factor(k)?;
        if f.order() != order {
            return Err(MotiveError::OrderMismatch(order, f.order()));
        }
        for (j, c) in f.coeffs().iter().enumerate().take(k) {
            let expected_one = j == 0;
            if (expected_one && !c.is_one()) || (!expected_one && !c.is_zero()) {
                return Err(MotiveError::FactorContract {
                    index: k,
                    degree: j,
                    coeff: c.to_string(),
                });
            }
        }
        acc = acc.mul(&f)?;
    }
    Ok(acc)
}

/// `prod_{m >= 1} (1 - u L^{-m} t^k)^{-1}`, resummed exactly with Euler's
/// identity as `sum_j (u t^k)^j L^{-j} / prod_{i=1}^j (1 - L^{-i})`.
///
/// The product over `m` does not converge t-adically, so it cannot be truncated
/// term by term; the resummation gives every coefficient in closed form.
pub fn pochhammer_inverse_sum(u: &MClass, k: usize, order: usize) -> Result<MSeries> {
    if k == 0 {
        return Err(MotiveError::InvalidArgument(
            "t-exponent must be positive".into(),
        ));
    }
    let mut out = MSeries::one(order);
    if u.is_zero() {
        return Ok(out);
    }
    let l_inv = MClass::l_pow(-1);
    let step = u * &l_inv;
    // term_j = (u / L)^j / prod_{i=1}^j (1 - L^{-i})
    let mut term = MClass::one();
    for j in 1..=order / k {
        let denom = &MClass::one() - &MClass::l_pow(-(j as i64));
        term = (&term * &step).div(&denom)?;
        out.coeffs[j * k] = term.clone();
    }
    Ok(out)
}
