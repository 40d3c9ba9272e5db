//! Plain-text point files.
//!
//! One point per line, two or three whitespace-separated fields. A field is an
//! integer, a rational `p/q`, or a decimal literal. Lines starting with `#`
//! and blank lines are ignored. A file whose fields are all integers or
//! rationals is read in exact mode; anything else makes it a float file.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use angles_core::{Dim, GeomError, PointConfig, Points, Vec3};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Malformed { line: usize, msg: String },
    #[error("line {line}: expected {expected} fields like the first point, found {found}")]
    DimensionMismatch {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("line {line}: duplicate of the point on line {first}")]
    Duplicate { line: usize, first: usize },
    #[error("no points in input")]
    Empty,
}

#[derive(Debug, Clone)]
enum Field {
    Exact(BigRational),
    Decimal { text: String, value: f64 },
}

impl Field {
    fn to_f64(&self) -> f64 {
        match self {
            Field::Exact(r) => r.to_f64().unwrap_or(f64::NAN),
            Field::Decimal { value, .. } => *value,
        }
    }
}

fn parse_int(s: &str) -> Option<BigInt> {
    let digits = s.strip_prefix(['+', '-']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.trim_start_matches('+').parse().ok()
}

fn parse_field(s: &str) -> Result<Field, String> {
    if let Some((p, q)) = s.split_once('/') {
        let (p, q) = match (parse_int(p), parse_int(q)) {
            (Some(p), Some(q)) => (p, q),
            _ => return Err(format!("malformed rational `{s}`")),
        };
        if q.is_zero() {
            return Err(format!("zero denominator in `{s}`"));
        }
        return Ok(Field::Exact(BigRational::new(p, q)));
    }
    if let Some(i) = parse_int(s) {
        return Ok(Field::Exact(BigRational::from_integer(i)));
    }
    match s.parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(Field::Decimal {
            text: s.to_string(),
            value: v,
        }),
        _ => Err(format!("malformed number `{s}`")),
    }
}

/// Exact value of a finite decimal literal such as `-1.25e-3`.
pub fn decimal_to_rational(s: &str) -> Option<BigRational> {
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].trim_start_matches('+').parse::<i64>().ok()?),
        None => (s, 0),
    };
    let (neg, mantissa) = match mantissa.strip_prefix('-') {
        Some(m) => (true, m),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !(int_part.bytes().all(|b| b.is_ascii_digit()) && frac_part.bytes().all(|b| b.is_ascii_digit())) {
        return None;
    }
    let digits: BigInt = format!("0{int_part}{frac_part}").parse().ok()?;
    let scale = exp - frac_part.len() as i64;
    let ten = BigInt::from(10);
    let pow = num_traits::pow(ten, usize::try_from(scale.unsigned_abs()).ok()?);
    let mut r = if scale >= 0 {
        BigRational::from_integer(digits * pow)
    } else {
        BigRational::new(digits, pow)
    };
    if neg {
        r = -r;
    }
    Some(r)
}

/// Parse options.
#[derive(Debug, Clone, Copy, Default)]
pub struct ParseOptions {
    /// Read decimal literals as their exact rational values, so the file is
    /// always exact.
    pub force_exact: bool,
}

pub fn parse_config(text: &str) -> Result<PointConfig, ParseError> {
    parse_config_with(text, ParseOptions::default())
}

pub fn parse_config_with(text: &str, opts: ParseOptions) -> Result<PointConfig, ParseError> {
    let mut rows: Vec<(usize, Vec<Field>)> = Vec::new();
    let mut width = None;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let fields = trimmed
            .split_whitespace()
            .map(parse_field)
            .collect::<Result<Vec<_>, _>>()
            .map_err(|msg| ParseError::Malformed { line, msg })?;
        if !(2..=3).contains(&fields.len()) {
            return Err(ParseError::Malformed {
                line,
                msg: format!("expected 2 or 3 fields, found {}", fields.len()),
            });
        }
        match width {
            None => width = Some(fields.len()),
            Some(w) if w != fields.len() => {
                return Err(ParseError::DimensionMismatch {
                    line,
                    expected: w,
                    found: fields.len(),
                })
            }
            _ => {}
        }
        rows.push((line, fields));
    }
    let width = width.ok_or(ParseError::Empty)?;
    let dim = Dim::from_usize(width).expect("2 or 3 fields");
    let lines: Vec<usize> = rows.iter().map(|(l, _)| *l).collect();

    let all_exact = rows
        .iter()
        .all(|(_, fs)| fs.iter().all(|f| matches!(f, Field::Exact(_))));
    let result = if all_exact || opts.force_exact {
        let to_rat = |f: &Field, line: usize| match f {
            Field::Exact(r) => Ok(r.clone()),
            Field::Decimal { text, .. } => decimal_to_rational(text).ok_or_else(|| ParseError::Malformed {
                line,
                msg: format!("`{text}` is not a finite decimal"),
            }),
        };
        let mut pts = Vec::with_capacity(rows.len());
        for (line, fs) in &rows {
            let x = to_rat(&fs[0], *line)?;
            let y = to_rat(&fs[1], *line)?;
            let z = match fs.get(2) {
                Some(f) => to_rat(f, *line)?,
                None => BigRational::zero(),
            };
            pts.push(Vec3::new(x, y, z));
        }
        PointConfig::exact("", dim, pts)
    } else {
        let pts = rows
            .iter()
            .map(|(_, fs)| Vec3::new(fs[0].to_f64(), fs[1].to_f64(), fs.get(2).map_or(0.0, Field::to_f64)))
            .collect();
        PointConfig::float("", dim, pts)
    };
    result.map_err(|e| match e {
        GeomError::Coincident(i, j) => ParseError::Duplicate {
            line: lines[j],
            first: lines[i],
        },
        other => ParseError::Malformed {
            line: 0,
            msg: other.to_string(),
        },
    })
}

/// Serialize a configuration. Exact coordinates are written as integers or
/// `p/q`; floats with 17 significant digits, which round-trip bit-exactly.
/// The label becomes a leading comment and is not read back.
pub fn write_config(config: &PointConfig) -> String {
    let mut out = String::new();
    if !config.label.is_empty() {
        out.push_str("# ");
        out.push_str(&config.label.replace('\n', " "));
        out.push('\n');
    }
    let planar = config.dim() == Dim::Two;
    match config.points() {
        Points::Exact(pts) => {
            for p in pts {
                if planar {
                    out.push_str(&format!("{} {}\n", p.x, p.y));
                } else {
                    out.push_str(&format!("{} {} {}\n", p.x, p.y, p.z));
                }
            }
        }
        Points::Float(pts) => {
            for p in pts {
                if planar {
                    out.push_str(&format!("{:.16e} {:.16e}\n", p.x, p.y));
                } else {
                    out.push_str(&format!("{:.16e} {:.16e} {:.16e}\n", p.x, p.y, p.z));
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use angles_core::Mode;

    #[test]
    fn parses_exact_3d() {
        let c = parse_config("0 0 0\n1 0 0\n0 1 0\n").unwrap();
        assert_eq!(c.len(), 3);
        assert_eq!(c.dim(), Dim::Three);
        assert_eq!(c.mode(), Mode::Exact);
    }

    #[test]
    fn parses_exact_2d_with_rationals() {
        let c = parse_config("1/2 1/3\n0 0\n2 7\n").unwrap();
        assert_eq!(c.dim(), Dim::Two);
        assert_eq!(c.mode(), Mode::Exact);
        let p = &c.as_exact().unwrap()[0];
        assert_eq!(p.y, BigRational::new(1.into(), 3.into()));
    }

    #[test]
    fn dimension_mismatch_reports_line_two() {
        assert_eq!(
            parse_config("1 2\n3 4 5\n"),
            Err(ParseError::DimensionMismatch {
                line: 2,
                expected: 2,
                found: 3
            })
        );
    }

    #[test]
    fn comments_and_blank_lines_are_skipped() {
        let c = parse_config("# header\n\n0 0\n  # indented\n1 0\n0 1\n").unwrap();
        assert_eq!(c.len(), 3);
    }

    #[test]
    fn decimals_make_a_float_file() {
        let c = parse_config("0.5 0\n1 0\n0 1\n").unwrap();
        assert_eq!(c.mode(), Mode::Float);
        assert_eq!(c.as_float().unwrap()[0].x, 0.5);
    }

    #[test]
    fn force_exact_reads_decimals_exactly() {
        let c = parse_config_with("0.25 -1.5e1\n1 0\n", ParseOptions { force_exact: true }).unwrap();
        let p = &c.as_exact().unwrap()[0];
        assert_eq!(p.x, BigRational::new(1.into(), 4.into()));
        assert_eq!(p.y, BigRational::from_integer((-15).into()));
    }

    #[test]
    fn malformed_and_duplicate_lines() {
        assert!(matches!(
            parse_config("0 0\n1 x\n"),
            Err(ParseError::Malformed { line: 2, .. })
        ));
        assert!(matches!(parse_config("1/0 2\n"), Err(ParseError::Malformed { line: 1, .. })));
        assert_eq!(
            parse_config("0 0\n# c\n1 1\n2/2 1\n"),
            Err(ParseError::Duplicate { line: 4, first: 3 })
        );
        assert_eq!(parse_config("# nothing\n"), Err(ParseError::Empty));
        assert!(parse_config("1 2 3 4\n").is_err());
        assert!(parse_config("inf 0\n").is_err());
    }

    #[test]
    fn decimal_conversion() {
        let r = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        assert_eq!(decimal_to_rational("1.25"), Some(r(5, 4)));
        assert_eq!(decimal_to_rational("-.5"), Some(r(-1, 2)));
        assert_eq!(decimal_to_rational("3e2"), Some(r(300, 1)));
        assert_eq!(decimal_to_rational("1.5E-1"), Some(r(3, 20)));
        assert_eq!(decimal_to_rational("abc"), None);
        assert_eq!(decimal_to_rational("."), None);
    }

    #[test]
    fn labels_are_written_as_comments() {
        let mut c = parse_config("0 0\n1 0\n").unwrap();
        c.label = "two points".into();
        let text = write_config(&c);
        assert!(text.starts_with("# two points\n"));
        assert_eq!(parse_config(&text).unwrap(), c);
    }
}
