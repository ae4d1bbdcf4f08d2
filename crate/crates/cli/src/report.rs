//! Output formatting: 12 significant digits, JSON or CSV.

use serde::Serialize;

/// `x` rounded to 12 significant digits; `-0` becomes `0`.
pub fn sig(x: f64) -> f64 {
    if !x.is_finite() {
        return x;
    }
    let r: f64 = format!("{x:.11e}").parse().expect("formatted float parses");
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

pub fn sigs(xs: &[f64]) -> Vec<f64> {
    xs.iter().copied().map(sig).collect()
}

pub fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}

/// `index,eigenvalue` rows, 1-based, in the order given.
pub fn spectrum_csv(values: &[f64]) -> String {
    let mut out = String::from("index,eigenvalue\n");
    for (i, x) in values.iter().enumerate() {
        out.push_str(&format!("{},{}\n", i + 1, sig(*x)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding() {
        assert_eq!(sig(1.0 - 3.0 / 10f64.sqrt()), 0.0513167019495);
        assert_eq!(sig(2.0 / 3.0), 0.666666666667);
        assert_eq!(sig(-1e-300 * 1e-300).to_bits(), 0.0f64.to_bits());
        assert_eq!(sig(123456789012345.0), 123456789012000.0);
    }

    #[test]
    fn csv_layout() {
        assert_eq!(spectrum_csv(&[0.5, 1.0]), "index,eigenvalue\n1,0.5\n2,1\n");
    }
}
