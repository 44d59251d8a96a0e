use std::io::Write;

use cheb_core::sweep::{ComparisonTable, TableCell};
use cheb_core::{GridSpec, SweepReport};

use crate::args::Format;

pub const CSV_HEADER: [&str; 12] = [
    "algorithm",
    "degree",
    "a",
    "b",
    "h",
    "points",
    "e_N",
    "worst_x",
    "nonfinite_count",
    "L_observed",
    "L_theoretical",
    "passed",
];

/// Shortest decimal that parses back to the same `f64`; `inf` for infinity.
pub fn fmt_f64(v: f64) -> String {
    let a = v.abs();
    if v.is_nan() {
        "NaN".into()
    } else if v.is_infinite() {
        if v > 0.0 { "inf" } else { "-inf" }.into()
    } else if a == 0.0 || (1e-4..1e15).contains(&a) {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}

/// Compact form for human-facing tables.
fn fmt_short(v: f64) -> String {
    if !v.is_finite() {
        fmt_f64(v)
    } else if v != 0.0 && !(1e-2..1e5).contains(&v.abs()) {
        format!("{v:.2e}")
    } else {
        format!("{v:.2}")
    }
}

fn grid_fields(grid: &GridSpec) -> [String; 4] {
    [
        fmt_f64(grid.a()),
        fmt_f64(grid.b()),
        fmt_f64(grid.step()),
        grid.point_count().to_string(),
    ]
}

fn csv_row(r: &SweepReport) -> Vec<String> {
    let c = &r.certificate;
    let mut row = vec![r.algorithm.label().to_string(), r.degree.to_string()];
    row.extend(grid_fields(&r.grid));
    row.extend([
        fmt_f64(r.e_n),
        fmt_f64(r.worst_x),
        r.nonfinite_count.to_string(),
        fmt_f64(c.l_observed),
        c.l_theoretical.map(fmt_f64).unwrap_or_default(),
        c.passed.to_string(),
    ]);
    row
}

fn skipped_row(cell: &TableCell, grid: &GridSpec) -> Vec<String> {
    let TableCell::Skipped { algorithm, degree } = cell else {
        unreachable!("only skipped cells")
    };
    let mut row = vec![algorithm.label().to_string(), degree.to_string()];
    row.extend(grid_fields(grid));
    row.resize(CSV_HEADER.len(), String::new());
    row
}

pub fn write_csv(table: &ComparisonTable, out: impl Write) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for cell in table.rows.iter().flatten() {
        match cell {
            TableCell::Done(r) => w.write_record(csv_row(r))?,
            TableCell::Skipped { .. } => w.write_record(skipped_row(cell, &table.grid))?,
        }
    }
    w.flush()?;
    Ok(())
}

/// Degrees down, algorithms across; each cell is `e_N`.
pub fn write_markdown_table(table: &ComparisonTable, mut out: impl Write) -> std::io::Result<()> {
    let g = &table.grid;
    writeln!(
        out,
        "e_N = max |T_N(x) - T~_N(x)| / eps_M on [{}, {}], h = {}, {} points",
        fmt_f64(g.a()),
        fmt_f64(g.b()),
        fmt_f64(g.step()),
        g.point_count()
    )?;
    writeln!(out)?;
    write!(out, "| N |")?;
    for a in &table.algorithms {
        write!(out, " Algorithm {} |", a.label())?;
    }
    writeln!(out)?;
    write!(out, "|---:|")?;
    for _ in &table.algorithms {
        write!(out, "---:|")?;
    }
    writeln!(out)?;
    for (degree, row) in table.degrees.iter().zip(&table.rows) {
        write!(out, "| {degree} |")?;
        for cell in row {
            match cell.report() {
                Some(r) => write!(out, " {} |", fmt_short(r.e_n))?,
                None => write!(out, " - |")?,
            }
        }
        writeln!(out)?;
    }
    Ok(())
}

/// One line per certificate.
pub fn write_markdown_certificates(
    table: &ComparisonTable,
    mut out: impl Write,
) -> std::io::Result<()> {
    writeln!(
        out,
        "| algorithm | N | points | L_observed | L_theoretical | worst x | passed |"
    )?;
    writeln!(out, "|---|---:|---:|---:|---:|---:|---|")?;
    for r in table.reports() {
        let c = &r.certificate;
        writeln!(
            out,
            "| {} | {} | {} | {} | {} | {} | {} |",
            r.algorithm.label(),
            r.degree,
            c.point_count,
            fmt_short(c.l_observed),
            c.l_theoretical.map(fmt_short).unwrap_or_else(|| "-".into()),
            fmt_f64(c.worst_point),
            if c.passed { "yes" } else { "NO" },
        )?;
    }
    Ok(())
}

/// Renders `table` in the requested format. `certificates` selects the
/// per-certificate Markdown layout instead of the degree-by-algorithm grid.
pub fn emit_report(
    table: &ComparisonTable,
    format: Format,
    certificates: bool,
    out: impl Write,
) -> std::io::Result<()> {
    match format {
        Format::Csv => write_csv(table, out).map_err(std::io::Error::other),
        Format::Markdown if certificates => write_markdown_certificates(table, out),
        Format::Markdown => write_markdown_table(table, out),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use cheb_core::sweep::compare_table;
    use cheb_core::Algorithm;

    #[test]
    fn float_formatting_round_trips() {
        for v in [
            0.0,
            1.0,
            0.1,
            5.25,
            1e-17,
            3.13e10,
            1.09e96,
            -0.6,
            5e-324,
            f64::MAX,
        ] {
            let s = fmt_f64(v);
            assert_eq!(s.parse::<f64>().unwrap().to_bits(), v.to_bits(), "{s}");
        }
        assert_eq!(fmt_f64(f64::INFINITY), "inf");
        assert_eq!(fmt_f64(0.01), "0.01");
    }

    #[test]
    fn single_csv_row() {
        let g = GridSpec::with_points(-1.0, 1.0, 3).unwrap();
        let t = compare_table(&[Algorithm::Recurrence], &[2], &g).unwrap();
        let mut buf = Vec::new();
        write_csv(&t, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 2);
        assert_eq!(lines[0], CSV_HEADER.join(","));
        assert_eq!(lines[1].split(',').count(), 12);
        assert!(lines[1].starts_with("I,2,-1,1,1,3,0,"), "{}", lines[1]);
    }

    #[test]
    fn skipped_cells_are_blank() {
        let g = GridSpec::with_points(-1.0, 1.0, 3).unwrap();
        let t = compare_table(&[Algorithm::Doubling], &[3], &g).unwrap();
        let mut buf = Vec::new();
        write_csv(&t, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().nth(1).unwrap(), "II,3,-1,1,1,3,,,,,,");
    }

    #[test]
    fn markdown_shape() {
        let g = GridSpec::with_points(-1.0, 1.0, 5).unwrap();
        let t = compare_table(&Algorithm::ALL, &[3, 4], &g).unwrap();
        let mut buf = Vec::new();
        write_markdown_table(&t, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let rows: Vec<&str> = text.lines().filter(|l| l.starts_with("| ")).collect();
        assert_eq!(rows.len(), 3);
        assert!(rows[0].contains("Algorithm IV"));
        assert!(rows[1].starts_with("| 3 |") && rows[1].contains(" - |"));
    }
}
