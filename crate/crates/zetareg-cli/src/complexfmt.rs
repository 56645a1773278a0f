//! Parsing and printing of complex scalars in the `re+imi` form.

use num_complex::Complex64;

/// Parse "1.5", "-2", "3i", "1+2i", "0.5-0.3i", "1e-3+2.5e4i", "i", "-i".
pub fn parse_complex(input: &str) -> Result<Complex64, String> {
    let s = input.trim();
    if s.is_empty() {
        return Err("empty complex literal".into());
    }
    if let Some(body) = s.strip_suffix(['i', 'I']) {
        // find the split between real and imaginary parts: the last +/- that
        // is neither leading nor an exponent sign
        let bytes = body.as_bytes();
        let mut split = None;
        for (idx, &b) in bytes.iter().enumerate().skip(1) {
            if (b == b'+' || b == b'-') && !matches!(bytes[idx - 1], b'e' | b'E') {
                split = Some(idx);
            }
        }
        return match split {
            Some(idx) => {
                let re: f64 = body[..idx]
                    .parse()
                    .map_err(|_| format!("bad real part in {input:?}"))?;
                let im = parse_imag_magnitude(&body[idx..])?;
                Ok(Complex64::new(re, im))
            }
            None => Ok(Complex64::new(0.0, parse_imag_magnitude(body)?)),
        };
    }
    s.parse::<f64>()
        .map(|re| Complex64::new(re, 0.0))
        .map_err(|_| format!("bad number {input:?}"))
}

fn parse_imag_magnitude(part: &str) -> Result<f64, String> {
    match part {
        "" | "+" => Ok(1.0),
        "-" => Ok(-1.0),
        other => other
            .parse()
            .map_err(|_| format!("bad imaginary part {other:?}")),
    }
}

/// Shortest round-trip display: plain real when the imaginary part is exactly
/// zero, `re+imi` otherwise.
pub fn display_complex(z: Complex64) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else if z.im < 0.0 {
        format!("{}-{}i", z.re, -z.im)
    } else {
        format!("{}+{}i", z.re, z.im)
    }
}

/// Report form: always `re+imi`, 17 significant digits.
pub fn report_complex(z: Complex64) -> String {
    if z.im < 0.0 {
        format!("{:.16e}-{:.16e}i", z.re, -z.im)
    } else {
        format!("{:.16e}+{:.16e}i", z.re, z.im)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_the_common_forms() {
        assert_eq!(parse_complex("1.5").unwrap(), Complex64::new(1.5, 0.0));
        assert_eq!(parse_complex("-2").unwrap(), Complex64::new(-2.0, 0.0));
        assert_eq!(parse_complex("3i").unwrap(), Complex64::new(0.0, 3.0));
        assert_eq!(parse_complex("1+2i").unwrap(), Complex64::new(1.0, 2.0));
        assert_eq!(
            parse_complex("0.5-0.3i").unwrap(),
            Complex64::new(0.5, -0.3)
        );
        assert_eq!(
            parse_complex("1e-3+2.5e4i").unwrap(),
            Complex64::new(1e-3, 2.5e4)
        );
        assert_eq!(parse_complex("i").unwrap(), Complex64::new(0.0, 1.0));
        assert_eq!(parse_complex("-i").unwrap(), Complex64::new(0.0, -1.0));
        assert_eq!(parse_complex("-1-i").unwrap(), Complex64::new(-1.0, -1.0));
        assert!(parse_complex("").is_err());
        assert!(parse_complex("1+2j").is_err());
        assert!(parse_complex("abc").is_err());
    }

    #[test]
    fn display_round_trips() {
        for z in [
            Complex64::new(2.5066282746310002, 0.0),
            Complex64::new(-0.5, 1.25),
            Complex64::new(0.0, -3.5),
        ] {
            let shown = display_complex(z);
            assert_eq!(parse_complex(&shown).unwrap(), z, "{shown}");
        }
    }

    #[test]
    fn report_form_is_fixed_width_scientific() {
        let s = report_complex(Complex64::new(1.0, -2.0));
        assert_eq!(s, "1.0000000000000000e0-2.0000000000000000e0i");
    }
}
