use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_rational::BigRational;
use serde::Serialize;

use super::{coh_a1_series, punctual_series_smooth};
use crate::error::{MotiveError, Result};
use crate::lring::{gl_class, MClass};
use crate::oracle::{self, OracleConfig};
use crate::power::zeta_of_class;
use crate::series::MSeries;

/// Lays out rows under headers with every column padded to its widest cell.
pub fn render_table(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        let mut s = String::new();
        for (i, (cell, w)) in cells.iter().zip(&widths).enumerate() {
            if i > 0 {
                s.push_str("  ");
            }
            let pad = w - cell.chars().count();
            s.push_str(cell);
            if i + 1 < widths.len() {
                s.push_str(&" ".repeat(pad));
            }
        }
        s.trim_end().to_string()
    };
    let mut out = line(headers.to_vec());
    out.push('\n');
    out.push_str(&line(
        widths
            .iter()
            .map(|w| "-".repeat(*w))
            .collect::<Vec<_>>()
            .iter()
            .map(String::as_str)
            .collect(),
    ));
    for row in rows {
        out.push('\n');
        out.push_str(&line(row.iter().map(String::as_str).collect()));
    }
    out
}

fn fraction(v: &BigRational) -> String {
    if v.is_integer() {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoefficientCheck {
    pub n: usize,
    pub lhs: MClass,
    pub rhs: MClass,
    pub equal: bool,
}

/// Coefficient-by-coefficient comparison of two series.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub name: String,
    pub order: usize,
    pub holds: bool,
    pub per_coefficient: Vec<CoefficientCheck>,
}

impl IdentityReport {
    pub fn compare(name: impl Into<String>, lhs: &MSeries, rhs: &MSeries) -> Result<Self> {
        if lhs.order() != rhs.order() {
            return Err(MotiveError::OrderMismatch(lhs.order(), rhs.order()));
        }
        let per_coefficient: Vec<CoefficientCheck> = lhs
            .coeffs()
            .iter()
            .zip(rhs.coeffs())
            .enumerate()
            .map(|(n, (l, r))| CoefficientCheck {
                n,
                lhs: l.clone(),
                rhs: r.clone(),
                equal: l == r,
            })
            .collect();
        Ok(IdentityReport {
            name: name.into(),
            order: lhs.order(),
            holds: per_coefficient.iter().all(|c| c.equal),
            per_coefficient,
        })
    }

    /// Every lhs and rhs coefficient lies in the localized ring.
    pub fn all_localized(&self) -> bool {
        self.per_coefficient
            .iter()
            .all(|c| c.lhs.in_localization() && c.rhs.in_localization())
    }

    pub fn failures(&self) -> impl Iterator<Item = &CoefficientCheck> {
        self.per_coefficient.iter().filter(|c| !c.equal)
    }

    pub fn render_table(&self) -> String {
        let rows: Vec<Vec<String>> = self
            .per_coefficient
            .iter()
            .map(|c| {
                vec![
                    c.n.to_string(),
                    c.lhs.render_factored(),
                    c.rhs.render_factored(),
                    if c.equal { "yes" } else { "NO" }.to_string(),
                ]
            })
            .collect();
        format!(
            "{} (order {}): {}\n{}",
            self.name,
            self.order,
            if self.holds { "holds" } else { "FAILS" },
            render_table(&["n", "lhs", "rhs", "equal"], &rows)
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PolynomialityEntry {
    pub n: usize,
    pub coeff: MClass,
    pub polynomial: bool,
    pub laurent_polynomial: bool,
    pub in_localization: bool,
}

/// For each coefficient: is it a polynomial in `L`, a Laurent polynomial, and
/// does it lie in the localized ring.
pub fn polynomiality_report(series: &MSeries) -> Vec<PolynomialityEntry> {
    series
        .coeffs()
        .iter()
        .enumerate()
        .map(|(n, c)| {
            let laurent = c.is_laurent_polynomial();
            PolynomialityEntry {
                n,
                coeff: c.clone(),
                polynomial: laurent.as_ref().is_some_and(|m| m.keys().all(|&e| e >= 0)),
                laurent_polynomial: laurent.is_some(),
                in_localization: c.in_localization(),
            }
        })
        .collect()
}

pub fn render_polynomiality(entries: &[PolynomialityEntry]) -> String {
    let yn = |b: bool| if b { "yes" } else { "no" }.to_string();
    let rows: Vec<Vec<String>> = entries
        .iter()
        .map(|e| {
            vec![
                e.n.to_string(),
                e.coeff.render_factored(),
                yn(e.polynomial),
                yn(e.laurent_polynomial),
                yn(e.in_localization),
            ]
        })
        .collect();
    render_table(&["n", "class", "polynomial", "laurent", "localized"], &rows)
}

/// One quantity of the length-2 example on the affine line.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StratumRow {
    pub quantity: String,
    pub tool: MClass,
    /// Reference value shown for comparison.
    pub reference: MClass,
    pub tool_at: BTreeMap<u64, String>,
    pub reference_at: BTreeMap<u64, String>,
    /// Groupoid count over `F_q`, when the quantity is a stack with an oracle.
    pub oracle_at: BTreeMap<u64, String>,
}

/// Non-multiplicativity of the support map on the stratum of length-2 sheaves
/// on `A^1` with two distinct support points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StratumReport {
    /// `[Coh^2(A^1)]`
    pub coh2: MClass,
    /// `[Coh^2(A^1)_0]`
    pub punctual2: MClass,
    /// `[Coh^2_{(1^2)}(A^1)] = [Coh^2] - L [Coh^2_0]`
    pub stratum: MClass,
    /// `[Sym^2_{(1^2)}(A^1)]`
    pub sym2_distinct: MClass,
    /// `[Coh^1(A^1)_0]`
    pub punctual1: MClass,
    /// `[Sym^2_{(1^2)}] * [Coh^1_0]^2`, the value a Zariski fibration would give.
    pub product: MClass,
    /// `stratum != product` in canonical form.
    pub inequality_holds: bool,
    /// The reference value `1/(L^2 - 1)` also differs from `product`.
    pub reference_inequality_holds: bool,
    pub rows: Vec<StratumRow>,
}

impl StratumReport {
    pub fn render_table(&self) -> String {
        let qs: Vec<u64> = self.rows[0].tool_at.keys().copied().collect();
        let mut headers: Vec<String> = vec!["quantity".into(), "tool".into(), "reference".into()];
        for q in &qs {
            headers.push(format!("tool@{q}"));
            headers.push(format!("reference@{q}"));
            headers.push(format!("oracle@{q}"));
        }
        let rows: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|r| {
                let mut row = vec![
                    r.quantity.clone(),
                    r.tool.render_factored(),
                    r.reference.render_factored(),
                ];
                for q in &qs {
                    row.push(r.tool_at[q].clone());
                    row.push(r.reference_at[q].clone());
                    row.push(r.oracle_at.get(q).cloned().unwrap_or_else(|| "-".into()));
                }
                row
            })
            .collect();
        let header_refs: Vec<&str> = headers.iter().map(String::as_str).collect();
        let mut out = String::new();
        let _ = writeln!(
            out,
            "[Coh^2_(1^2)(A^1)] = {}  vs  [Sym^2_(1^2)(A^1)]*[Coh^1(A^1)_0]^2 = {}: {}",
            self.stratum.render_factored(),
            self.product.render_factored(),
            if self.inequality_holds {
                "different"
            } else {
                "EQUAL"
            }
        );
        out.push_str(&render_table(&header_refs, &rows));
        out
    }
}

/// The length-2 example on `A^1`, with point counts at each `q` in `qs`.
pub fn stratum_report(qs: &[u64]) -> Result<StratumReport> {
    let order = 2;
    let coh = coh_a1_series(order);
    let punctual = punctual_series_smooth(1, order)?;
    let l = MClass::lefschetz();
    let coh2 = coh.coeff(2).clone();
    let punctual2 = punctual.coeff(2).clone();
    let punctual1 = punctual.coeff(1).clone();
    let stratum = &coh2 - &(&l * &punctual2);
    let sym2_distinct = zeta_of_class(&l, order)?.coeff(2) - &l;
    let product = &sym2_distinct * &punctual1.pow(2)?;

    let reference_coh2 = MClass::l_pow(4).div(&gl_class(2))?;
    let reference_punctual2 = &gl_class(2).inv()? + &gl_class(1).inv()?;
    let reference_stratum = MClass::l_power_minus_one(2).inv()?;
    let reference_sym2 = &MClass::l_pow(2) - &l;
    let reference_punctual1 = MClass::l_power_minus_one(1).inv()?;
    let reference_product = &l * &MClass::l_power_minus_one(1).inv()?;

    let cfg = OracleConfig::default();
    let mut oracles: Vec<BTreeMap<u64, String>> = vec![BTreeMap::new(); 6];
    for &q in qs {
        let v = |c: oracle::GroupoidCount| fraction(&c.value());
        oracles[0].insert(q, v(oracle::count_coh_a1(2, q, &cfg)?));
        oracles[1].insert(q, v(oracle::count_nilpotent_coh(1, 2, q, &cfg)?));
        oracles[2].insert(q, v(oracle::count_coh2_a1_distinct_support(q)?));
        oracles[3].insert(q, v(oracle::count_squarefree_monic_quadratics(q)?));
        oracles[4].insert(q, v(oracle::count_nilpotent_coh(1, 1, q, &cfg)?));
    }

    let quantities = [
        ("[Coh^2(A^1)]", coh2.clone(), reference_coh2),
        ("[Coh^2(A^1)_0]", punctual2.clone(), reference_punctual2),
        (
            "[Coh^2_(1^2)(A^1)]",
            stratum.clone(),
            reference_stratum.clone(),
        ),
        ("[Sym^2_(1^2)(A^1)]", sym2_distinct.clone(), reference_sym2),
        ("[Coh^1(A^1)_0]", punctual1.clone(), reference_punctual1),
        (
            "[Sym^2_(1^2)]*[Coh^1_0]^2",
            product.clone(),
            reference_product,
        ),
    ];
    let mut rows = Vec::new();
    for ((name, tool, reference), oracle_at) in quantities.into_iter().zip(oracles) {
        let mut tool_at = BTreeMap::new();
        let mut reference_at = BTreeMap::new();
        for &q in qs {
            tool_at.insert(q, fraction(&tool.eval_at_int(q as i64)?));
            reference_at.insert(q, fraction(&reference.eval_at_int(q as i64)?));
        }
        rows.push(StratumRow {
            quantity: name.to_string(),
            tool,
            reference,
            tool_at,
            reference_at,
            oracle_at,
        });
    }

    Ok(StratumReport {
        inequality_holds: stratum != product,
        reference_inequality_holds: reference_stratum != product,
        coh2,
        punctual2,
        stratum,
        sym2_distinct,
        punctual1,
        product,
        rows,
    })
}
