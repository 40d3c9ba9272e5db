//! Point files, sweeps, scaling fits and the `angles` command line, on top of
//! `angles-core`.

use std::fmt;
use std::str::FromStr;

use angles_core::counters::PinSpec;

pub mod cli;
pub mod fit;
pub mod io;
pub mod sweep;

/// Pin kinds by command-line name.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PinKind {
    Endpoint,
    Center,
    EndpointCenter,
    Endpoints,
    PairAllRoles,
}

impl PinKind {
    pub const ALL: [PinKind; 5] = [
        PinKind::Endpoint,
        PinKind::Center,
        PinKind::EndpointCenter,
        PinKind::Endpoints,
        PinKind::PairAllRoles,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PinKind::Endpoint => "endpoint",
            PinKind::Center => "center",
            PinKind::EndpointCenter => "endpoint_center",
            PinKind::Endpoints => "endpoints",
            PinKind::PairAllRoles => "pair_all_roles",
        }
    }

    /// Single-point kinds ignore `b`.
    pub fn spec(self, a: usize, b: usize) -> PinSpec {
        match self {
            PinKind::Endpoint => PinSpec::Endpoint(a),
            PinKind::Center => PinSpec::Center(a),
            PinKind::EndpointCenter => PinSpec::EndpointCenter(a, b),
            PinKind::Endpoints => PinSpec::Endpoints(a, b),
            PinKind::PairAllRoles => PinSpec::PairAllRoles(a, b),
        }
    }
}

impl fmt::Display for PinKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PinKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s == "pair" {
            return Ok(PinKind::PairAllRoles);
        }
        PinKind::ALL.into_iter().find(|k| k.name() == s).ok_or_else(|| {
            let names: Vec<_> = PinKind::ALL.iter().map(|k| k.name()).collect();
            format!("unknown pin kind `{s}` (expected one of {})", names.join(", "))
        })
    }
}

/// Parse an angle in radians: a number, or a multiple of pi such as `pi/4`,
/// `2pi/3` or `0.5pi`.
pub fn parse_angle(s: &str) -> Result<f64, String> {
    let t = s.trim();
    if let Ok(v) = t.parse::<f64>() {
        return Ok(v);
    }
    let bad = || format!("cannot read `{s}` as an angle");
    let (num, den) = match t.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim().parse::<f64>().map_err(|_| bad())?),
        None => (t, 1.0),
    };
    let coef = num.strip_suffix("pi").ok_or_else(bad)?.trim().trim_end_matches('*');
    let coef = match coef {
        "" => 1.0,
        "-" => -1.0,
        c => c.parse::<f64>().map_err(|_| bad())?,
    };
    Ok(coef * std::f64::consts::PI / den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn angles() {
        assert_eq!(parse_angle("pi/4"), Ok(PI / 4.0));
        assert_eq!(parse_angle("2pi/3"), Ok(2.0 * PI / 3.0));
        assert_eq!(parse_angle("0.5*pi"), Ok(PI / 2.0));
        assert_eq!(parse_angle("pi"), Ok(PI));
        assert_eq!(parse_angle("1.25"), Ok(1.25));
        assert!(parse_angle("tau").is_err());
        assert!(parse_angle("pi/x").is_err());
    }

    #[test]
    fn pin_kind_names() {
        for k in PinKind::ALL {
            assert_eq!(k.name().parse::<PinKind>(), Ok(k));
        }
        assert!("middle".parse::<PinKind>().is_err());
    }
}
