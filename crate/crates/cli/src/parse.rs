//! Literal parsers for the CLI surface: complex numbers in `a+bi` form,
//! exact rationals `p/q` (so parameters like -223/225 survive the command
//! line), scan ranges `a:b:step`, rectangles and waypoint lists.

use num_complex::Complex;

pub type C64 = Complex<f64>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseFail(pub String);

impl std::fmt::Display for ParseFail {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}
impl std::error::Error for ParseFail {}

/// Real literal: plain float or exact rational `p/q`.
pub fn parse_real(s: &str) -> Result<f64, ParseFail> {
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let p: f64 = num
            .trim()
            .parse()
            .map_err(|_| ParseFail(format!("bad rational numerator in {s:?}")))?;
        let q: f64 = den
            .trim()
            .parse()
            .map_err(|_| ParseFail(format!("bad rational denominator in {s:?}")))?;
        if q == 0.0 {
            return Err(ParseFail(format!("zero denominator in {s:?}")));
        }
        return Ok(p / q);
    }
    let v: f64 = s.parse().map_err(|_| ParseFail(format!("bad real literal {s:?}")))?;
    if !v.is_finite() {
        return Err(ParseFail(format!("non-finite literal {s:?}")));
    }
    Ok(v)
}

/// Complex literal: `a`, `bi`, `a+bi`, `a-bi`, with rational parts allowed.
pub fn parse_complex(s: &str) -> Result<C64, ParseFail> {
    let t: String = s.trim().replace(' ', "");
    if t.is_empty() {
        return Err(ParseFail("empty complex literal".into()));
    }
    if !t.ends_with('i') {
        return Ok(Complex::new(parse_real(&t)?, 0.0));
    }
    let body = &t[..t.len() - 1];
    // split at the last +/- that is not a leading sign and not an exponent sign
    let bytes = body.as_bytes();
    let mut split = None;
    for k in (1..bytes.len()).rev() {
        let c = bytes[k] as char;
        if (c == '+' || c == '-') && !matches!(bytes[k - 1] as char, 'e' | 'E') {
            split = Some(k);
            break;
        }
    }
    match split {
        Some(k) => {
            let re = parse_real(&body[..k])?;
            let imag_part = &body[k..];
            let im = match imag_part {
                "+" => 1.0,
                "-" => -1.0,
                _ => parse_real(imag_part)?,
            };
            Ok(Complex::new(re, im))
        }
        None => {
            let im = match body {
                "" => 1.0,
                "-" => -1.0,
                "+" => 1.0,
                _ => parse_real(body)?,
            };
            Ok(Complex::new(0.0, im))
        }
    }
}

/// Wrapper so clap treats a parsed scan as one value, not repeated values.
#[derive(Debug, Clone, PartialEq)]
pub struct Scan(pub Vec<f64>);

/// Wrapper so clap treats a parsed waypoint list as one value.
#[derive(Debug, Clone, PartialEq)]
pub struct Waypoints(pub Vec<C64>);

/// Scan range `a:b:step`, inclusive of both ends up to rounding.
pub fn parse_scan(s: &str) -> Result<Scan, ParseFail> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 3 {
        return Err(ParseFail(format!("scan must be a:b:step, got {s:?}")));
    }
    let a = parse_real(parts[0])?;
    let b = parse_real(parts[1])?;
    let step = parse_real(parts[2])?;
    if step <= 0.0 || b < a {
        return Err(ParseFail(format!("bad scan range {s:?}")));
    }
    let count = ((b - a) / step).round() as usize + 1;
    Ok(Scan(
        (0..count).map(|k| a + step * k as f64).filter(|v| *v <= b + step * 1e-9).collect(),
    ))
}

/// Rectangle `xmin,xmax,ymin,ymax`.
pub fn parse_rect(s: &str) -> Result<(f64, f64, f64, f64), ParseFail> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 4 {
        return Err(ParseFail(format!("rect must be xmin,xmax,ymin,ymax, got {s:?}")));
    }
    Ok((
        parse_real(parts[0])?,
        parse_real(parts[1])?,
        parse_real(parts[2])?,
        parse_real(parts[3])?,
    ))
}

/// Comma-separated complex waypoints.
pub fn parse_path(s: &str) -> Result<Waypoints, ParseFail> {
    s.split(',').map(parse_complex).collect::<Result<_, _>>().map(Waypoints)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reals_and_rationals() {
        assert_eq!(parse_real("0.98").unwrap(), 0.98);
        assert_eq!(parse_real("-223/225").unwrap(), -223.0 / 225.0);
        assert_eq!(parse_real(" 7/2 ").unwrap(), 3.5);
        assert!(parse_real("1/0").is_err());
        assert!(parse_real("abc").is_err());
    }

    #[test]
    fn complex_forms() {
        assert_eq!(parse_complex("1.5").unwrap(), Complex::new(1.5, 0.0));
        assert_eq!(parse_complex("2i").unwrap(), Complex::new(0.0, 2.0));
        assert_eq!(parse_complex("1+2i").unwrap(), Complex::new(1.0, 2.0));
        assert_eq!(parse_complex("1-2i").unwrap(), Complex::new(1.0, -2.0));
        assert_eq!(parse_complex("-1.5e-2+0.5i").unwrap(), Complex::new(-0.015, 0.5));
        assert_eq!(parse_complex("i").unwrap(), Complex::new(0.0, 1.0));
        assert_eq!(parse_complex("-i").unwrap(), Complex::new(0.0, -1.0));
        assert_eq!(parse_complex("3e2").unwrap(), Complex::new(300.0, 0.0));
        assert_eq!(parse_complex("1+i").unwrap(), Complex::new(1.0, 1.0));
        assert_eq!(parse_complex("-223/225").unwrap(), Complex::new(-223.0 / 225.0, 0.0));
        assert!(parse_complex("").is_err());
        assert!(parse_complex("1+2j").is_err());
    }

    #[test]
    fn scans_rects_paths() {
        let v = parse_scan("-1:1:0.5").unwrap();
        assert_eq!(v.0, vec![-1.0, -0.5, 0.0, 0.5, 1.0]);
        assert!(parse_scan("1:0:0.5").is_err());
        let r = parse_rect("1,7,-1,1").unwrap();
        assert_eq!(r, (1.0, 7.0, -1.0, 1.0));
        let p = parse_path("1,1+0.5i,2+0.5i,2").unwrap();
        assert_eq!(p.0.len(), 4);
        assert_eq!(p.0[1], Complex::new(1.0, 0.5));
    }
}
