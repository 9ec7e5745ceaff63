//! Plain decimal formatting helpers for text and CSV output.

/// `x` in plain decimal notation with `digits` significant digits.
pub fn sig(x: f64, digits: usize) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let magnitude = x.abs().log10().floor() as i64;
    let decimals = (digits as i64 - 1 - magnitude).max(0) as usize;
    format!("{:.*}", decimals, x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digits() {
        assert_eq!(sig(0.0, 10), "0");
        assert_eq!(sig(0.375, 3), "0.375");
        assert_eq!(sig(7.458336114326415e-6, 4), "0.000007458");
        assert_eq!(sig(1234.5678, 6), "1234.57");
        assert_eq!(sig(-0.5, 2), "-0.50");
        assert_eq!(sig(123456.0, 3), "123456");
    }
}
