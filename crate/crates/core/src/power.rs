//! Power structure on `Q(L)[[t]]`: plethystic `Exp` and `Log`, Kapranov zeta
//! functions `(1 - t)^{-m}`, and `A(t)^m` for arbitrary classes `m`.
//!
//! Everything goes through Adams operations: with `psi_j` acting on coefficients
//! and sending `t -> t^j`,
//!
//! ```text
//! Exp(f) = exp( sum_{j >= 1} psi_j(f) / j )
//! Log(A) = sum_{j >= 1} mu(j) / j * psi_j( log A )
//! A^m    = Exp( m * Log(A) )
//! ```
//!
//! The intermediate sums have rational denominators; the final coefficients are
//! checked to lie in the localized ring whenever the inputs do.

use crate::error::{MotiveError, Result};
use crate::lring::{mobius, MClass};
use crate::series::MSeries;

/// `psi_j` on a series: Adams operation on each coefficient, then `t -> t^j`.
pub fn adams_series(f: &MSeries, j: usize) -> MSeries {
    assert!(j >= 1);
    let order = f.order();
    let mut coeffs = vec![MClass::zero(); order + 1];
    for n in 0..=order / j {
        coeffs[j * n] = f.coeff(n).adams(j);
    }
    MSeries::from_coeffs(order, coeffs)
}

fn all_localized(s: &MSeries) -> bool {
    s.coeffs().iter().all(MClass::in_localization)
}

/// Fails if some coefficient of `out` left the localized ring.
pub(crate) fn ensure_localized(out: &MSeries) -> Result<()> {
    for (index, c) in out.coeffs().iter().enumerate() {
        if !c.in_localization() {
            return Err(MotiveError::LeftLocalization {
                index,
                coeff: c.to_string(),
            });
        }
    }
    Ok(())
}

/// Plethystic exponential of a series with zero constant term.
pub fn plethystic_exp(f: &MSeries) -> Result<MSeries> {
    if !f.coeff(0).is_zero() {
        return Err(MotiveError::BadConstantTerm {
            expected: "0",
            found: f.coeff(0).to_string(),
        });
    }
    let out = exp_unchecked(f)?;
    if all_localized(f) {
        ensure_localized(&out)?;
    }
    Ok(out)
}

fn exp_unchecked(f: &MSeries) -> Result<MSeries> {
    let order = f.order();
    if f.is_zero() {
        return Ok(MSeries::one(order));
    }
    let mut sum = MSeries::zero(order);
    for j in 1..=order {
        let term = adams_series(f, j).map_coeffs(|c| c.div_int(j as i64));
        sum = sum.add(&term)?;
    }
    sum.exp()
}

/// Plethystic logarithm: the inverse of [`plethystic_exp`] on series with
/// constant term 1.
pub fn plethystic_log(a: &MSeries) -> Result<MSeries> {
    let out = log_unchecked(a)?;
    if all_localized(a) {
        ensure_localized(&out)?;
    }
    Ok(out)
}

fn log_unchecked(a: &MSeries) -> Result<MSeries> {
    let order = a.order();
    let log = a.log()?;
    if log.is_zero() {
        return Ok(log);
    }
    let mut out = MSeries::zero(order);
    for j in 1..=order {
        let mu = mobius(j);
        if mu == 0 {
            continue;
        }
        let term = adams_series(&log, j).map_coeffs(|c| c.mul_int(mu as i64).div_int(j as i64));
        out = out.add(&term)?;
    }
    Ok(out)
}

/// `A(t)^m = Exp(m Log A)` for `A` with constant term 1 and any class `m`.
pub fn power(a: &MSeries, m: &MClass) -> Result<MSeries> {
    if !a.coeff(0).is_one() {
        return Err(MotiveError::BadConstantTerm {
            expected: "1",
            found: a.coeff(0).to_string(),
        });
    }
    let order = a.order();
    if m.is_zero() || *a == MSeries::one(order) {
        return Ok(MSeries::one(order));
    }
    if m.is_one() {
        return Ok(a.clone());
    }
    let out = exp_unchecked(&log_unchecked(a)?.scale(m))?;
    if m.in_localization() && all_localized(a) {
        ensure_localized(&out)?;
    }
    Ok(out)
}

/// Kapranov zeta function `(1 - t)^{-m} = Exp(m t)`.
pub fn zeta_of_class(m: &MClass, order: usize) -> Result<MSeries> {
    plethystic_exp(&MSeries::monomial(m.clone(), 1, order))
}

/// `(1 - t)^{-m}` for an effective Laurent polynomial `m = sum a_k L^k` by the
/// product rule `prod_k (1 - L^k t)^{-a_k}`.
pub fn zeta_effective(m: &MClass, order: usize) -> Result<MSeries> {
    let terms = m
        .is_laurent_polynomial()
        .ok_or_else(|| MotiveError::NotEffective(m.to_string()))?;
    let mut acc = MSeries::one(order);
    for (k, a) in terms {
        let a = u32::try_from(a).map_err(|_| MotiveError::NotEffective(m.to_string()))?;
        let factor = MSeries::geometric(&MClass::l_pow(k), order);
        for _ in 0..a {
            acc = acc.mul(&factor)?;
        }
    }
    Ok(acc)
}
