//! CSV assembly with C-style `%.9g` numbers.

use std::fmt::Write as _;

const SIGNIFICANT: usize = 9;

/// Formats `x` the way `printf("%.9g", x)` does.
pub fn g9(x: f64) -> String {
    format_g(x, SIGNIFICANT)
}

pub fn format_g(x: f64, precision: usize) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let p = precision.max(1);
    if x == 0.0 {
        return if x.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    // Rounding to `p` significant digits decides the exponent.
    let sci = format!("{:.*e}", p - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent marker");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= p as i32 {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", strip_zeros(mantissa), exp.abs())
    } else {
        let decimals = (p as i32 - 1 - exp).max(0) as usize;
        strip_zeros(&format!("{x:.decimals$}")).to_string()
    }
}

fn strip_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Comment lines, header and rows, rendered in insertion order.
#[derive(Debug, Default)]
pub struct Table {
    preamble: Vec<String>,
    header: Vec<&'static str>,
    rows: Vec<Vec<f64>>,
    footer: Vec<String>,
}

impl Table {
    pub fn new(header: &[&'static str]) -> Self {
        Table {
            header: header.to_vec(),
            ..Default::default()
        }
    }

    pub fn comment(&mut self, line: impl Into<String>) {
        self.preamble.push(line.into());
    }

    pub fn footer(&mut self, line: impl Into<String>) {
        self.footer.push(line.into());
    }

    pub fn row(&mut self, values: Vec<f64>) {
        debug_assert_eq!(values.len(), self.header.len());
        self.rows.push(values);
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for c in &self.preamble {
            writeln!(out, "# {c}").unwrap();
        }
        writeln!(out, "{}", self.header.join(",")).unwrap();
        for r in &self.rows {
            let cells: Vec<String> = r.iter().map(|&v| g9(v)).collect();
            writeln!(out, "{}", cells.join(",")).unwrap();
        }
        for c in &self.footer {
            writeln!(out, "# {c}").unwrap();
        }
        out
    }
}
