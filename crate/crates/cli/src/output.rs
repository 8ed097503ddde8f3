use std::path::PathBuf;

use clap::ValueEnum;
use motivic_core::formulas::suites::CheckReport;
use motivic_core::formulas::{render_table, IdentityReport, StratumReport};
use motivic_core::oracle::GroupoidCount;
use motivic_core::MSeries;
use serde_json::json;

use crate::{usage, CliResult, Failure};

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

/// Text ready to be written to stdout or a file.
pub struct Rendered(String);

impl Rendered {
    pub fn emit(self, path: Option<&PathBuf>) -> CliResult<()> {
        let mut text = self.0;
        if !text.ends_with('\n') {
            text.push('\n');
        }
        match path {
            Some(p) => std::fs::write(p, text).map_err(|e| usage(format!("{}: {e}", p.display()))),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }
}

fn json_text(v: &impl serde::Serialize) -> CliResult<Rendered> {
    serde_json::to_string_pretty(v)
        .map(Rendered)
        .map_err(|e| Failure::Compute(e.to_string()))
}

fn csv_text(header: &[String], rows: &[Vec<String>]) -> CliResult<Rendered> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Failure::Compute(e.to_string());
    w.write_record(header).map_err(io)?;
    for row in rows {
        w.write_record(row).map_err(io)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| Failure::Compute(e.to_string()))?;
    Ok(Rendered(
        String::from_utf8(bytes).expect("csv output is utf-8"),
    ))
}

fn table_text(header: &[String], rows: &[Vec<String>]) -> Rendered {
    let refs: Vec<&str> = header.iter().map(String::as_str).collect();
    Rendered(render_table(&refs, rows))
}

fn fraction_at(c: &motivic_core::MClass, q: u64) -> String {
    match c.eval_at_int(q as i64) {
        Ok(v) if v.is_integer() => v.numer().to_string(),
        Ok(v) => format!("{}/{}", v.numer(), v.denom()),
        Err(_) => "pole".into(),
    }
}

pub fn series(name: &str, s: &MSeries, qs: &[u64], format: Format) -> CliResult<Rendered> {
    let mut header = vec!["n".to_string(), "coefficient".to_string()];
    header.extend(qs.iter().map(|q| format!("L={q}")));
    let rows: Vec<Vec<String>> = s
        .coeffs()
        .iter()
        .enumerate()
        .map(|(n, c)| {
            let mut row = vec![
                n.to_string(),
                if format == Format::Table {
                    c.render_factored()
                } else {
                    c.to_string()
                },
            ];
            row.extend(qs.iter().map(|&q| fraction_at(c, q)));
            row
        })
        .collect();
    match format {
        Format::Table => Ok(table_text(&header, &rows)),
        Format::Csv => csv_text(&header, &rows),
        Format::Json => {
            let values: serde_json::Map<String, serde_json::Value> = qs
                .iter()
                .map(|&q| {
                    (
                        q.to_string(),
                        json!(s
                            .coeffs()
                            .iter()
                            .map(|c| fraction_at(c, q))
                            .collect::<Vec<_>>()),
                    )
                })
                .collect();
            json_text(&json!({ "name": name, "series": s, "values": values }))
        }
    }
}

pub fn identities(suite: &str, reports: &[IdentityReport], format: Format) -> CliResult<Rendered> {
    let passed = reports.iter().all(|r| r.holds && r.all_localized());
    match format {
        Format::Json => json_text(&json!({ "suite": suite, "passed": passed, "reports": reports })),
        Format::Csv => {
            let header: Vec<String> = ["identity", "n", "lhs", "rhs", "equal"]
                .map(String::from)
                .to_vec();
            let rows: Vec<Vec<String>> = reports
                .iter()
                .flat_map(|r| {
                    r.per_coefficient.iter().map(move |c| {
                        vec![
                            r.name.clone(),
                            c.n.to_string(),
                            c.lhs.to_string(),
                            c.rhs.to_string(),
                            c.equal.to_string(),
                        ]
                    })
                })
                .collect();
            csv_text(&header, &rows)
        }
        Format::Table => {
            // failing identities in full, passing ones as one summary line each
            let mut out = String::new();
            let mut holding = 0;
            for r in reports {
                if r.holds {
                    holding += 1;
                    if reports.len() <= 4 {
                        out.push_str(&r.render_table());
                        out.push_str("\n\n");
                    }
                } else {
                    out.push_str(&r.render_table());
                    out.push_str("\n\n");
                }
            }
            out.push_str(&format!(
                "{suite}: {holding}/{} identities hold: {}",
                reports.len(),
                if passed { "pass" } else { "FAIL" }
            ));
            Ok(Rendered(out))
        }
    }
}

pub fn stratum(report: &StratumReport, format: Format) -> CliResult<Rendered> {
    match format {
        Format::Json => json_text(report),
        Format::Table => Ok(Rendered(report.render_table())),
        Format::Csv => {
            let qs: Vec<u64> = report.rows[0].tool_at.keys().copied().collect();
            let mut header: Vec<String> =
                ["quantity", "tool", "reference"].map(String::from).to_vec();
            for q in &qs {
                header.extend([
                    format!("tool@{q}"),
                    format!("reference@{q}"),
                    format!("oracle@{q}"),
                ]);
            }
            let rows: Vec<Vec<String>> = report
                .rows
                .iter()
                .map(|r| {
                    let mut row = vec![
                        r.quantity.clone(),
                        r.tool.to_string(),
                        r.reference.to_string(),
                    ];
                    for q in &qs {
                        row.push(r.tool_at[q].clone());
                        row.push(r.reference_at[q].clone());
                        row.push(r.oracle_at.get(q).cloned().unwrap_or_default());
                    }
                    row
                })
                .collect();
            csv_text(&header, &rows)
        }
    }
}

pub fn counts(counts: &[GroupoidCount], format: Format) -> CliResult<Rendered> {
    let header: Vec<String> = GroupoidCount::CSV_HEADER.map(String::from).to_vec();
    let rows: Vec<Vec<String>> = counts.iter().map(|c| c.csv_record().to_vec()).collect();
    match format {
        Format::Json if counts.len() == 1 => json_text(&counts[0]),
        Format::Json => json_text(&counts),
        Format::Csv => csv_text(&header, &rows),
        Format::Table => Ok(table_text(&header, &rows)),
    }
}

pub fn check(report: &CheckReport, format: Format) -> CliResult<Rendered> {
    match format {
        Format::Json => json_text(report),
        Format::Table => Ok(Rendered(report.render_table())),
        Format::Csv => {
            let header: Vec<String> = [
                "formula",
                "n",
                "q",
                "class",
                "formula_value",
                "oracle_value",
                "raw",
                "match",
                "integral",
            ]
            .map(String::from)
            .to_vec();
            let rows: Vec<Vec<String>> = report
                .rows
                .iter()
                .map(|r| {
                    vec![
                        report.formula.clone(),
                        r.n.to_string(),
                        r.q.to_string(),
                        r.class.to_string(),
                        r.formula_value.clone(),
                        r.oracle.value_string(),
                        r.oracle.raw.to_string(),
                        r.matches.to_string(),
                        r.integral.map(|b| b.to_string()).unwrap_or_default(),
                    ]
                })
                .collect();
            csv_text(&header, &rows)
        }
    }
}
