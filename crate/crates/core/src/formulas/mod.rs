//! Generating functions for stacks of 0-dimensional sheaves and Quot schemes of
//! points on affine spaces and curves, and the compositions that build global
//! series from punctual ones.

mod report;
pub mod suites;

use serde::Serialize;

use crate::error::{MotiveError, Result};
use crate::lring::{gl_class, MClass};
use crate::power::power;
use crate::series::{pochhammer_inverse_sum, tadic_product, MSeries};

pub use report::{
    polynomiality_report, render_polynomiality, render_table, stratum_report, CoefficientCheck,
    IdentityReport, PolynomialityEntry, StratumReport, StratumRow,
};

/// Curves whose Kapranov zeta function is built in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Curve {
    Point,
    A1,
    P1,
}

impl Curve {
    pub fn parse(name: &str) -> Result<Curve> {
        match name {
            "point" | "pt" => Ok(Curve::Point),
            "A1" | "a1" => Ok(Curve::A1),
            "P1" | "p1" => Ok(Curve::P1),
            other => Err(MotiveError::InvalidArgument(format!(
                "unknown curve {other:?}"
            ))),
        }
    }

    /// `zeta_C(t)`: `1/(1-t)`, `1/(1-Lt)` or `1/((1-t)(1-Lt))`.
    pub fn zeta(&self, order: usize) -> MSeries {
        let point = MSeries::geometric(&MClass::one(), order);
        let line = MSeries::geometric(&MClass::lefschetz(), order);
        match self {
            Curve::Point => point,
            Curve::A1 => line,
            Curve::P1 => point.mul(&line).expect("same order"),
        }
    }
}

/// `[Coh^n(A^1)] = L^{n^2} / [GL_n]`.
pub fn coh_a1_series(order: usize) -> MSeries {
    let coeffs = (0..=order)
        .map(|n| {
            MClass::l_pow((n * n) as i64)
                .div(&gl_class(n))
                .expect("[GL_n] is nonzero")
        })
        .collect();
    MSeries::from_coeffs(order, coeffs)
}

/// `prod_{k >= 0} (1 - L^{-k} t)^{-1}`, whose `n`-th coefficient is
/// `1 / prod_{i=1}^n (1 - L^{-i})`.
pub fn euler_rhs_series(order: usize) -> MSeries {
    pochhammer_inverse_sum(&MClass::lefschetz(), 1, order).expect("k = 1 is valid")
}

/// `Z_{A^2}(t) = prod_{m >= 1} prod_{k >= 1} (1 - L^{2-m} t^k)^{-1}`.
///
/// The product over `k` converges t-adically; for each `k` the product over `m`
/// is resummed in closed form.
pub fn feit_fine_series(order: usize) -> MSeries {
    let l2 = MClass::l_pow(2);
    tadic_product(order, |k| pochhammer_inverse_sum(&l2, k, order))
        .expect("Feit-Fine factors are 1 + O(t^k)")
}

/// `[P^{r-1}] = 1 + L + ... + L^{r-1}`.
pub fn projective_space_class(r: usize) -> MClass {
    (0..r).fold(MClass::zero(), |acc, i| &acc + &MClass::l_pow(i as i64))
}

/// Quot scheme of a rank `r` locally free sheaf on a smooth curve with zeta
/// function `zeta_c`: `prod_{i=1}^r zeta_C(L^{i-1} t)`.
pub fn quot_curve_series(r: usize, zeta_c: &MSeries) -> Result<MSeries> {
    if r == 0 {
        return Err(MotiveError::InvalidArgument("rank must be positive".into()));
    }
    if !zeta_c.coeff(0).is_one() {
        return Err(MotiveError::BadConstantTerm {
            expected: "1",
            found: zeta_c.coeff(0).to_string(),
        });
    }
    let mut acc = MSeries::one(zeta_c.order());
    for i in 0..r {
        acc = acc.mul(&zeta_c.substitute(&MClass::l_pow(i as i64), 1)?)?;
    }
    Ok(acc)
}

/// Quot scheme of a rank `r` locally free sheaf on a smooth surface `S`:
/// `Exp([S x P^{r-1}] t / (1 - L^r t))`. The surface class must be a polynomial
/// in `L`.
pub fn quot_surface_series(r: usize, surface: &MClass, order: usize) -> Result<MSeries> {
    if r == 0 {
        return Err(MotiveError::InvalidArgument("rank must be positive".into()));
    }
    if surface.as_polynomial().is_none() {
        return Err(MotiveError::NotPolynomial(surface.to_string()));
    }
    let base = surface * &projective_space_class(r);
    let lr = MClass::l_pow(r as i64);
    let mut coeffs = vec![MClass::zero()];
    let mut c = base;
    for _ in 1..=order {
        coeffs.push(c.clone());
        c = &c * &lr;
    }
    crate::power::plethystic_exp(&MSeries::from_coeffs(order, coeffs))
}

fn check_dimension(d: usize) -> Result<()> {
    if d == 1 || d == 2 {
        Ok(())
    } else {
        Err(MotiveError::InvalidArgument(format!(
            "dimension {d} not supported (only 1 and 2)"
        )))
    }
}

/// `Z_{A^d}(t)` for `d` in `{1, 2}`.
pub fn coh_affine_series(d: usize, order: usize) -> Result<MSeries> {
    check_dimension(d)?;
    Ok(if d == 1 {
        coh_a1_series(order)
    } else {
        feit_fine_series(order)
    })
}

/// `Q_{O^r}(t)` on `A^d` for `d` in `{1, 2}`.
pub fn quot_affine_series(r: usize, d: usize, order: usize) -> Result<MSeries> {
    check_dimension(d)?;
    if d == 1 {
        quot_curve_series(r, &Curve::A1.zeta(order))
    } else {
        quot_surface_series(r, &MClass::l_pow(2), order)
    }
}

/// Punctual series `Z_{sm_d}(t) = sum [Coh^n(A^d)_0] t^n`, extracted from
/// `Z_{A^d} = Z_{sm_d}^{L^d}` as `Z_{A^d}^{L^{-d}}`.
pub fn punctual_series_smooth(d: usize, order: usize) -> Result<MSeries> {
    power(&coh_affine_series(d, order)?, &MClass::l_pow(-(d as i64)))
}

/// Punctual Quot series `Q_{r, sm_d}(t)`, extracted as `Q_{A^d}^{L^{-d}}`.
pub fn quot_punctual_smooth(r: usize, d: usize, order: usize) -> Result<MSeries> {
    power(
        &quot_affine_series(r, d, order)?,
        &MClass::l_pow(-(d as i64)),
    )
}

/// A singularity type entering a global series: its punctual series and the
/// number of points of that type.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SingularityDatum {
    punctual_series: MSeries,
    multiplicity: u32,
}

impl SingularityDatum {
    pub fn new(punctual_series: MSeries, multiplicity: u32) -> Result<Self> {
        if !punctual_series.coeff(0).is_one() {
            return Err(MotiveError::BadConstantTerm {
                expected: "1",
                found: punctual_series.coeff(0).to_string(),
            });
        }
        Ok(SingularityDatum {
            punctual_series,
            multiplicity,
        })
    }

    pub fn punctual_series(&self) -> &MSeries {
        &self.punctual_series
    }

    pub fn multiplicity(&self) -> u32 {
        self.multiplicity
    }
}

/// `Z_{sm}(t)^{[X_sm]} * prod_i Z_{sigma_i}(t)^{k_i}`.
pub fn compose_with_singularities(
    smooth_punctual: &MSeries,
    smooth_locus: &MClass,
    singularities: &[SingularityDatum],
) -> Result<MSeries> {
    let mut acc = power(smooth_punctual, smooth_locus)?;
    for s in singularities {
        acc = acc.mul(&s.punctual_series.pow_int(s.multiplicity as i64)?)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(s: &str) -> MClass {
        s.parse().unwrap()
    }

    #[test]
    fn coh_a1_values() {
        let s = coh_a1_series(3);
        assert!(s.coeff(0).is_one());
        assert_eq!(s.coeff(2), &c("L^4/((L^2-1)(L^2-L))"));
        assert_eq!(
            s.coeff(1).eval_at_int(2).unwrap(),
            num_bigint::BigInt::from(2).into()
        );
    }

    #[test]
    fn euler_rhs_values() {
        let s = euler_rhs_series(3);
        assert!(s.coeff(0).is_one());
        assert_eq!(s.coeff(1), &c("L/(L-1)"));
        assert_eq!(s.coeff(2), &c("1/((1-L^-1)(1-L^-2))"));
        assert_eq!(s.coeff(2), coh_a1_series(3).coeff(2));
    }

    #[test]
    fn feit_fine_values() {
        let s = feit_fine_series(3);
        assert!(s.coeff(0).is_one());
        assert_eq!(s.coeff(1), &c("L^2/(L-1)"));
        assert_eq!(
            s.coeff(2).eval_at_int(2).unwrap(),
            num_rational::BigRational::new(44.into(), 3.into())
        );
    }

    #[test]
    fn quot_curve_values() {
        let a1 = Curve::A1.zeta(4);
        let s = quot_curve_series(1, &a1).unwrap();
        for n in 0..=4 {
            assert_eq!(s.coeff(n), &MClass::l_pow(n as i64));
        }
        let s = quot_curve_series(2, &a1).unwrap();
        assert_eq!(s.coeff(1), &c("L + L^2"));
        assert_eq!(
            s.coeff(1).eval_at_int(2).unwrap(),
            num_bigint::BigInt::from(6).into()
        );
        let s = quot_curve_series(2, &Curve::Point.zeta(4)).unwrap();
        assert_eq!(s.coeff(1), &c("1 + L"));
        assert!(quot_curve_series(0, &a1).is_err());
    }

    #[test]
    fn quot_surface_values() {
        let s = quot_surface_series(1, &c("L^2"), 3).unwrap();
        assert_eq!(s.coeff(1), &c("L^2"));
        assert_eq!(s.coeff(2), &c("L^4 + L^3"));
        let s = quot_surface_series(1, &c("L^2 + 3L + 1"), 2).unwrap();
        assert_eq!(s.coeff(1), &c("L^2 + 3L + 1"));
        let s = quot_surface_series(2, &c("L^2"), 2).unwrap();
        assert_eq!(s.coeff(1), &c("L^2(1+L)"));
        assert!(matches!(
            quot_surface_series(1, &c("1/(L-1)"), 2),
            Err(MotiveError::NotPolynomial(_))
        ));
    }

    #[test]
    fn punctual_values() {
        let p1 = punctual_series_smooth(1, 3).unwrap();
        assert_eq!(p1.coeff(1), &c("1/(L-1)"));
        assert_eq!(p1.coeff(2), &c("L/((L-1)(L^2-1))"));
        // closed form: prod_{m >= 1} (1 - L^{-m} t)^{-1}
        assert_eq!(p1, pochhammer_inverse_sum(&MClass::one(), 1, 3).unwrap());
        let p2 = punctual_series_smooth(2, 3).unwrap();
        assert!(p2.coeff(0).is_one());
        assert!(punctual_series_smooth(3, 3).is_err());
        // punctual Hilbert scheme of a curve point: one point in each length
        let h1 = quot_punctual_smooth(1, 1, 4).unwrap();
        assert_eq!(h1, MSeries::geometric(&MClass::one(), 4));
    }

    #[test]
    fn compose_examples() {
        let p1 = punctual_series_smooth(1, 4).unwrap();
        let z = compose_with_singularities(&p1, &MClass::lefschetz(), &[]).unwrap();
        assert_eq!(z, coh_a1_series(4));
        let sigma = SingularityDatum::new(p1.clone(), 1).unwrap();
        let z = compose_with_singularities(&p1, &c("L - 1"), std::slice::from_ref(&sigma)).unwrap();
        assert_eq!(z, coh_a1_series(4));
        let z = compose_with_singularities(&p1, &MClass::zero(), &[sigma]).unwrap();
        assert_eq!(z, p1);
        assert!(SingularityDatum::new(MSeries::zero(2), 1).is_err());
    }
}
