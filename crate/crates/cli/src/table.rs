//! Plot-ready CSV tables.

use std::fmt::Write as _;

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn new(header: Vec<String>) -> Self {
        Table {
            header,
            rows: Vec::new(),
        }
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let index = self.header.iter().position(|h| h == name)?;
        Some(self.rows.iter().map(|row| row[index]).collect())
    }

    /// Header row plus one line per row, comma separated, LF endings.
    pub fn to_csv(&self) -> String {
        let mut out = self.header.join(",");
        out.push('\n');
        for row in &self.rows {
            for (i, value) in row.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                out.push_str(&format_number(*value));
            }
            out.push('\n');
        }
        out
    }
}

/// Twelve significant digits in scientific notation; `-0` prints as `0`.
pub fn format_number(value: f64) -> String {
    let value = if value == 0.0 { 0.0 } else { value };
    let mut s = String::new();
    let _ = write!(s, "{value:.11e}");
    s
}

/// Column label for a swept value, e.g. `c_a2_0.35`.
pub fn label(prefix: &str, value: f64) -> String {
    let value = if value == 0.0 { 0.0 } else { value };
    format!("{prefix}_{value}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numbers_carry_twelve_significant_digits() {
        assert_eq!(format_number(1.0), "1.00000000000e0");
        assert_eq!(format_number(-0.0), "0.00000000000e0");
        assert_eq!(format_number(0.123456789012345), "1.23456789012e-1");
        assert_eq!(format_number(-12345.678901234), "-1.23456789012e4");
    }

    #[test]
    fn csv_layout() {
        let mut table = Table::new(vec!["beta_t".into(), "P".into()]);
        table.rows.push(vec![0.0, 1.0]);
        table.rows.push(vec![0.5, 0.25]);
        assert_eq!(
            table.to_csv(),
            "beta_t,P\n0.00000000000e0,1.00000000000e0\n5.00000000000e-1,2.50000000000e-1\n"
        );
        assert_eq!(table.column("P").unwrap(), vec![1.0, 0.25]);
        assert!(table.column("S").is_none());
    }

    #[test]
    fn labels_normalise_negative_zero() {
        assert_eq!(label("c_delta", -0.0), "c_delta_0");
        assert_eq!(label("c_delta", -0.5), "c_delta_-0.5");
    }
}
