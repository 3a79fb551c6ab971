//! Table rendering: polynomials read vertically, one column per matroid,
//! matching the published layout.

use serde::Serialize;

use klmat::families::{braid_kl, uniform_kl};
use klmat::matroid::Family;
use klmat::IntPoly;

use crate::{check_family_caps, CliError, Format};

#[derive(Serialize)]
struct TableJson {
    family: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    m: Option<usize>,
    columns: Vec<ColumnJson>,
}

#[derive(Serialize)]
struct ColumnJson {
    /// `d` for uniform tables, `n` for braid tables.
    index: usize,
    kl: Vec<String>,
}

pub fn cmd_table(
    family: &str,
    m: Option<usize>,
    dmin: Option<usize>,
    dmax: Option<usize>,
    nmin: usize,
    nmax: Option<usize>,
    format: Format,
) -> Result<(), CliError> {
    const MAX_COLUMNS: usize = 64;
    let (label, m, range): (&str, Option<usize>, Vec<usize>) = match family {
        "uniform" => {
            let m = m.ok_or_else(|| CliError::Usage("uniform tables need --m".into()))?;
            let dmax = dmax.ok_or_else(|| CliError::Usage("uniform tables need --dmax".into()))?;
            // the published tables start at d = 1 for m <= 1 and d = 3 beyond
            let dmin = dmin.unwrap_or(if m <= 1 { 1 } else { 3 });
            if dmin > dmax || dmax - dmin >= MAX_COLUMNS {
                return Err(CliError::Usage(format!(
                    "bad d range {dmin}..={dmax}"
                )));
            }
            check_family_caps(Family::Uniform { m, d: dmax })?;
            ("d", Some(m), (dmin..=dmax).collect())
        }
        "braid" => {
            let nmax = nmax.ok_or_else(|| CliError::Usage("braid tables need --nmax".into()))?;
            if nmin > nmax || nmax - nmin >= MAX_COLUMNS || nmin == 0 {
                return Err(CliError::Usage(format!("bad n range {nmin}..={nmax}")));
            }
            check_family_caps(Family::Braid { n: nmax })?;
            ("n", None, (nmin..=nmax).collect())
        }
        other => {
            return Err(CliError::Usage(format!(
                "unknown family `{other}` (uniform or braid)"
            )))
        }
    };

    let columns: Vec<(usize, IntPoly)> = range
        .iter()
        .map(|&i| match m {
            Some(m) => (i, uniform_kl(m, i)),
            None => (i, braid_kl(i)),
        })
        .collect();
    let height = columns
        .iter()
        .map(|(_, p)| p.coeffs().len())
        .max()
        .unwrap_or(1);

    match format {
        Format::Json => {
            let json = TableJson {
                family: family.to_string(),
                m,
                columns: columns
                    .iter()
                    .map(|(i, p)| ColumnJson {
                        index: *i,
                        kl: p.coeffs().iter().map(|c| c.to_string()).collect(),
                    })
                    .collect(),
            };
            println!("{}", serde_json::to_string_pretty(&json).unwrap());
        }
        Format::Csv => {
            let header: Vec<String> = std::iter::once("power".to_string())
                .chain(columns.iter().map(|(i, _)| format!("{label}={i}")))
                .collect();
            println!("{}", header.join(","));
            for row in 0..height {
                let mut cells = vec![power_label(row)];
                for (_, p) in &columns {
                    cells.push(cell(p, row));
                }
                println!("{}", cells.join(","));
            }
        }
        Format::Text => {
            let mut widths: Vec<usize> = columns
                .iter()
                .map(|(i, p)| {
                    let digits = p.coeffs().iter().map(|c| c.to_string().len()).max();
                    digits.unwrap_or(1).max(format!("{i}").len())
                })
                .collect();
            let label_width = power_label(height.saturating_sub(1)).len().max(4);
            print!("{:<label_width$}", format!("{label}="));
            for ((i, _), w) in columns.iter().zip(&widths) {
                print!(" {i:>w$}");
            }
            println!();
            for row in 0..height {
                print!("{:<label_width$}", power_label(row));
                for ((_, p), w) in columns.iter().zip(&mut widths) {
                    print!(" {:>w$}", cell(p, row));
                }
                println!();
            }
        }
    }
    Ok(())
}

fn power_label(row: usize) -> String {
    match row {
        0 => "1".to_string(),
        1 => "t".to_string(),
        k => format!("t^{k}"),
    }
}

/// Empty cell beyond the polynomial degree, like the published tables.
fn cell(p: &IntPoly, row: usize) -> String {
    if row < p.coeffs().len() {
        p.coeff(row).to_string()
    } else {
        String::new()
    }
}
