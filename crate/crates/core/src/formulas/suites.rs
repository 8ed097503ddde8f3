//! Verification suites: exact identities between independently built series,
//! randomized power-structure axioms, and formula-versus-oracle comparisons.

use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{
    coh_a1_series, coh_affine_series, euler_rhs_series, feit_fine_series, punctual_series_smooth,
    quot_affine_series, quot_curve_series, quot_punctual_smooth, quot_surface_series, Curve,
    IdentityReport,
};
use crate::error::{MotiveError, Result};
use crate::lring::{IntPoly, MClass};
use crate::oracle::{self, GroupoidCount, OracleConfig, Space};
use crate::power::{plethystic_exp, plethystic_log, power, zeta_effective, zeta_of_class};
use crate::series::{pochhammer_inverse_sum, MSeries};

pub const DEFAULT_SEED: u64 = 42;

/// `L^{n^2} / [GL_n]` against the resummed Euler product.
pub fn euler_identity(order: usize) -> Result<IdentityReport> {
    IdentityReport::compare("euler", &coh_a1_series(order), &euler_rhs_series(order))
}

/// `Z_{A^1} = Z_{G_m} * Z_{A^1, 0}` with `Z_{G_m} = P^{L - 1}`, where `P` is the
/// punctual series in closed form `prod_{m >= 1} (1 - L^{-m} t)^{-1}`.
pub fn strata_coh_a1(order: usize) -> Result<IdentityReport> {
    let punctual = pochhammer_inverse_sum(&MClass::one(), 1, order)?;
    let open = power(&punctual, &MClass::l_power_minus_one(1))?;
    IdentityReport::compare(
        "strata-coh-a1",
        &coh_a1_series(order),
        &open.mul(&punctual)?,
    )
}

/// Quot analogue on `A^1 = G_m + {0}` for `O^r`; the punctual series is
/// `prod_{i=1}^r (1 - L^{i-1} t)^{-1}`.
pub fn strata_quot_a1(r: usize, order: usize) -> Result<IdentityReport> {
    let punctual = quot_curve_series(r, &Curve::Point.zeta(order))?;
    let open = power(&punctual, &MClass::l_power_minus_one(1))?;
    let full = quot_curve_series(r, &Curve::A1.zeta(order))?;
    IdentityReport::compare(format!("strata-quot-a1-r{r}"), &full, &open.mul(&punctual)?)
}

/// Coh instance and Quot instances for `r = 1, 2`.
pub fn verify_strata_decomposition(order: usize) -> Result<Vec<IdentityReport>> {
    Ok(vec![
        strata_coh_a1(order)?,
        strata_quot_a1(1, order)?,
        strata_quot_a1(2, order)?,
    ])
}

/// `power(Z_{sm_d}, L^d)` against `Z_{A^d}`.
pub fn punctual_power_roundtrip(d: usize, order: usize) -> Result<IdentityReport> {
    let full = coh_affine_series(d, order)?;
    let rebuilt = power(&punctual_series_smooth(d, order)?, &MClass::l_pow(d as i64))?;
    IdentityReport::compare(format!("punctual-roundtrip-d{d}"), &rebuilt, &full)
}

/// Quot version of [`punctual_power_roundtrip`].
pub fn quot_punctual_power_roundtrip(r: usize, d: usize, order: usize) -> Result<IdentityReport> {
    let full = quot_affine_series(r, d, order)?;
    let rebuilt = power(
        &quot_punctual_smooth(r, d, order)?,
        &MClass::l_pow(d as i64),
    )?;
    IdentityReport::compare(
        format!("quot-punctual-roundtrip-r{r}-d{d}"),
        &rebuilt,
        &full,
    )
}

fn random_poly_class<R: Rng>(rng: &mut R, max_deg: usize, bound: i64) -> MClass {
    let deg = rng.gen_range(0..=max_deg);
    let coeffs: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-bound..=bound)).collect();
    MClass::from_poly(IntPoly::from_i64s(&coeffs))
}

/// `1 + sum_{n >= 1} a_n t^n` with small random polynomial coefficients.
pub fn random_unit_series<R: Rng>(rng: &mut R, order: usize) -> MSeries {
    let mut coeffs = vec![MClass::one()];
    coeffs.extend((1..=order).map(|_| random_poly_class(rng, 2, 3)));
    MSeries::from_coeffs(order, coeffs)
}

/// Random series with zero constant term.
pub fn random_exponent_series<R: Rng>(rng: &mut R, order: usize) -> MSeries {
    let mut coeffs = vec![MClass::zero()];
    coeffs.extend((1..=order).map(|_| random_poly_class(rng, 2, 3)));
    MSeries::from_coeffs(order, coeffs)
}

/// An exponent from the family: small integers, `L`, `L^2`, `L + 1`, `1/(L - 1)`.
pub fn random_exponent_class<R: Rng>(rng: &mut R) -> MClass {
    match rng.gen_range(0..5) {
        0 => MClass::from_int(rng.gen_range(-3..=3)),
        1 => MClass::lefschetz(),
        2 => MClass::l_pow(2),
        3 => &MClass::lefschetz() + &MClass::one(),
        _ => MClass::l_power_minus_one(1).inv().expect("nonzero"),
    }
}

/// Effective Laurent polynomial: exponents in `-1..=3`, coefficients in `0..=3`.
pub fn random_effective_class<R: Rng>(rng: &mut R) -> MClass {
    let mut exps: Vec<i64> = (-1..=3).collect();
    exps.shuffle(rng);
    let terms = rng.gen_range(1..=3);
    exps.iter()
        .take(terms)
        .map(|&e| MClass::l_pow(e).mul_int(rng.gen_range(0..=3)))
        .fold(MClass::zero(), |acc, c| &acc + &c)
}

/// The seven power-structure axioms on one random instance.
pub fn power_axioms_instance<R: Rng>(
    rng: &mut R,
    order: usize,
    tag: usize,
) -> Result<Vec<IdentityReport>> {
    let a = random_unit_series(rng, order);
    let b = random_unit_series(rng, order);
    let m = random_exponent_class(rng);
    let m2 = random_exponent_class(rng);
    let e = rng.gen_range(1..=3);
    let name = |k: usize| format!("axiom-{k}#{tag}");
    let one = MSeries::one(order);

    let a_m = power(&a, &m)?;
    let mut reports = vec![
        IdentityReport::compare(name(1), &power(&a, &MClass::zero())?, &one)?,
        IdentityReport::compare(name(2), &power(&a, &MClass::one())?, &a)?,
        IdentityReport::compare(
            name(3),
            &power(&a.mul(&b)?, &m)?,
            &a_m.mul(&power(&b, &m)?)?,
        )?,
        IdentityReport::compare(
            name(4),
            &power(&a, &(&m + &m2))?,
            &a_m.mul(&power(&a, &m2)?)?,
        )?,
        IdentityReport::compare(name(5), &power(&a, &(&m * &m2))?, &power(&a_m, &m2)?)?,
    ];
    // (1 + t)^m = 1 + m t + O(t^2): compare through t^1 only
    let one_plus_t = MSeries::from_coeffs(order, vec![MClass::one(), MClass::one()]);
    let lhs = power(&one_plus_t, &m)?.truncate(order.min(1));
    let rhs = MSeries::from_coeffs(order.min(1), vec![MClass::one(), m.clone()]);
    reports.push(IdentityReport::compare(name(6), &lhs, &rhs)?);
    let sub = |s: &MSeries| s.substitute(&MClass::one(), e);
    reports.push(IdentityReport::compare(
        name(7),
        &sub(&a_m)?,
        &power(&sub(&a)?, &m)?,
    )?);
    Ok(reports)
}

/// All seven axioms on `instances` seeded random instances.
pub fn power_axioms(order: usize, seed: u64, instances: usize) -> Result<Vec<IdentityReport>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(7 * instances);
    for i in 0..instances {
        out.extend(power_axioms_instance(&mut rng, order, i)?);
    }
    Ok(out)
}

/// `Exp(Log A) = A` and `Log(Exp f) = f` on random instances.
pub fn exp_log_roundtrips(
    order: usize,
    seed: u64,
    instances: usize,
) -> Result<Vec<IdentityReport>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(2 * instances);
    for i in 0..instances {
        let a = random_unit_series(&mut rng, order);
        out.push(IdentityReport::compare(
            format!("exp-log#{i}"),
            &plethystic_exp(&plethystic_log(&a)?)?,
            &a,
        )?);
        let f = random_exponent_series(&mut rng, order);
        out.push(IdentityReport::compare(
            format!("log-exp#{i}"),
            &plethystic_log(&plethystic_exp(&f)?)?,
            &f,
        )?);
    }
    Ok(out)
}

/// Adams-route zeta function against the effective product rule.
pub fn zeta_cross_checks(order: usize, seed: u64, instances: usize) -> Result<Vec<IdentityReport>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..instances)
        .map(|i| {
            let m = random_effective_class(&mut rng);
            IdentityReport::compare(
                format!("zeta[{m}]#{i}"),
                &zeta_of_class(&m, order)?,
                &zeta_effective(&m, order)?,
            )
        })
        .collect()
}

/// Generating functions that have an enumeration oracle.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Formula {
    CohA1,
    FeitFine,
    QuotCurve { r: usize },
    QuotSurface { r: usize },
    Punctual { d: usize },
    QuotPunctual { r: usize, d: usize },
}

impl Formula {
    pub fn name(&self) -> String {
        match self {
            Formula::CohA1 => "coh-a1".into(),
            Formula::FeitFine => "feit-fine".into(),
            Formula::QuotCurve { r } => format!("quot-curve(r={r})"),
            Formula::QuotSurface { r } => format!("quot-surface(r={r})"),
            Formula::Punctual { d } => format!("punctual-smooth(d={d})"),
            Formula::QuotPunctual { r, d } => format!("quot-punctual(r={r},d={d})"),
        }
    }

    pub fn series(&self, order: usize) -> Result<MSeries> {
        match *self {
            Formula::CohA1 => Ok(coh_a1_series(order)),
            Formula::FeitFine => Ok(feit_fine_series(order)),
            Formula::QuotCurve { r } => quot_curve_series(r, &Curve::A1.zeta(order)),
            Formula::QuotSurface { r } => quot_surface_series(r, &MClass::l_pow(2), order),
            Formula::Punctual { d } => punctual_series_smooth(d, order),
            Formula::QuotPunctual { r, d } => quot_punctual_smooth(r, d, order),
        }
    }

    pub fn space(&self) -> Result<Space> {
        Ok(match *self {
            Formula::CohA1 => Space::CohA1,
            Formula::FeitFine => Space::CohA2,
            Formula::QuotCurve { r } => Space::QuotA1 { r },
            Formula::QuotSurface { r } => Space::QuotA2 { r },
            Formula::Punctual { d: 1 } => Space::CohNilpA1,
            Formula::Punctual { d: 2 } => Space::CohNilpA2,
            Formula::QuotPunctual { r, d: 1 } => Space::QuotNilpA1 { r },
            Formula::QuotPunctual { r, d: 2 } => Space::QuotNilpA2 { r },
            other => {
                return Err(MotiveError::InvalidArgument(format!(
                    "no oracle for {}",
                    other.name()
                )))
            }
        })
    }

    /// Framed problems (Quot schemes) have a free group action and integer counts.
    pub fn is_framed(&self) -> bool {
        matches!(
            self,
            Formula::QuotCurve { .. } | Formula::QuotSurface { .. } | Formula::QuotPunctual { .. }
        )
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckRow {
    pub n: usize,
    pub q: u64,
    pub class: MClass,
    pub formula_value: String,
    pub oracle: GroupoidCount,
    pub matches: bool,
    /// For framed problems: the count is an integer.
    pub integral: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub formula: String,
    pub passed: bool,
    pub rows: Vec<CheckRow>,
}

impl CheckReport {
    pub fn render_table(&self) -> String {
        let rows: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|r| {
                vec![
                    r.n.to_string(),
                    r.q.to_string(),
                    r.class.render_factored(),
                    r.formula_value.clone(),
                    r.oracle.value_string(),
                    r.oracle.raw.to_string(),
                    if r.matches { "yes" } else { "NO" }.into(),
                ]
            })
            .collect();
        format!(
            "{}: {}\n{}",
            self.formula,
            if self.passed { "pass" } else { "FAIL" },
            super::report::render_table(
                &["n", "q", "class", "formula", "oracle", "raw", "match"],
                &rows
            )
        )
    }
}

fn ratio_string(v: &BigRational) -> String {
    format!("{}/{}", v.numer(), v.denom())
}

/// Evaluates the formula's coefficients at `L = q` and compares them with
/// enumeration counts for every `(n, q)` in `points`.
pub fn check_against_oracle(
    formula: Formula,
    points: &[(usize, u64)],
    cfg: &OracleConfig,
) -> Result<CheckReport> {
    let order = points.iter().map(|(n, _)| *n).max().unwrap_or(0);
    let series = formula.series(order)?;
    let space = formula.space()?;
    let mut rows = Vec::with_capacity(points.len());
    for &(n, q) in points {
        let class = series.coeff(n).clone();
        let value = class.eval_at_int(q as i64)?;
        let oracle = oracle::count(space, n, q, cfg)?;
        rows.push(CheckRow {
            n,
            q,
            matches: value == oracle.value(),
            integral: formula.is_framed().then(|| oracle.is_integral()),
            formula_value: ratio_string(&value),
            class,
            oracle,
        });
    }
    Ok(CheckReport {
        formula: formula.name(),
        passed: rows.iter().all(|r| r.matches && r.integral != Some(false)),
        rows,
    })
}

/// All `(n, q)` with `1 <= n <= n_max` and `q` in `qs`.
pub fn grid(n_max: usize, qs: &[u64]) -> Vec<(usize, u64)> {
    (1..=n_max)
        .flat_map(|n| qs.iter().map(move |&q| (n, q)))
        .collect()
}
