//! JSON and CSV file formats.
//!
//! Instance files look like
//! `{"points":[{"x":"1/2","y":"-3","color":"R"}, ...]}`. Coordinates may be
//! written as integers, `p/q` fractions or decimal strings; they are always
//! written back as reduced `p/q` (or plain integers).

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geom::{Color, GeomError, Instance, LabeledPoint, Rational};
use crate::oracle::BalancedLine;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid rational {0:?}")]
    BadRational(String),
    #[error("invalid color {0:?}; expected \"R\" or \"B\"")]
    BadColor(String),
    #[error(transparent)]
    Invalid(#[from] GeomError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointRecord {
    pub x: String,
    pub y: String,
    pub color: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceFile {
    pub points: Vec<PointRecord>,
}

pub fn parse_rational(s: &str) -> Result<Rational, IoError> {
    let bad = || IoError::BadRational(s.to_string());
    let t = s.trim();
    if let Some((n, d)) = t.split_once('/') {
        let n: i64 = n.trim().parse().map_err(|_| bad())?;
        let d: i64 = d.trim().parse().map_err(|_| bad())?;
        if d == 0 {
            return Err(bad());
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((int, frac)) = t.split_once('.') {
        let neg = int.starts_with('-');
        let digits = format!("{}{}", int.trim_start_matches(['-', '+']), frac);
        if frac.is_empty() || !frac.bytes().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let num: i64 = digits.parse().map_err(|_| bad())?;
        let den = 10i64.checked_pow(frac.len() as u32).ok_or_else(bad)?;
        return Ok(Rational::new(if neg { -num } else { num }, den));
    }
    t.parse::<i64>().map(Rational::from_integer).map_err(|_| bad())
}

pub fn format_rational(v: &Rational) -> String {
    if *v.denom() == 1 {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

impl InstanceFile {
    pub fn from_instance(inst: &Instance) -> Self {
        InstanceFile {
            points: inst
                .points()
                .iter()
                .map(|p| PointRecord {
                    x: format_rational(&p.x),
                    y: format_rational(&p.y),
                    color: p.color.letter().to_string(),
                })
                .collect(),
        }
    }

    pub fn to_points(&self) -> Result<Vec<LabeledPoint>, IoError> {
        self.points
            .iter()
            .enumerate()
            .map(|(id, rec)| {
                let color = match rec.color.as_str() {
                    "R" => Color::Red,
                    "B" => Color::Blue,
                    other => return Err(IoError::BadColor(other.to_string())),
                };
                Ok(LabeledPoint::new(id, parse_rational(&rec.x)?, parse_rational(&rec.y)?, color))
            })
            .collect()
    }

    pub fn to_instance(&self) -> Result<Instance, IoError> {
        Ok(Instance::validate(self.to_points()?)?)
    }
}

pub fn instance_to_json(inst: &Instance) -> String {
    serde_json::to_string_pretty(&InstanceFile::from_instance(inst)).expect("instance serializes")
}

pub fn instance_from_json(text: &str) -> Result<Instance, IoError> {
    let file: InstanceFile = serde_json::from_str(text)?;
    file.to_instance()
}

/// `redId,blueId` rows under a comment header carrying delta and the count.
pub fn lines_to_csv(inst: &Instance, lines: &[BalancedLine]) -> String {
    let mut out = format!(
        "# r={} b={} delta={} count={}\nredId,blueId\n",
        inst.r(),
        inst.b(),
        inst.delta(),
        lines.len()
    );
    for l in lines {
        out.push_str(&format!("{},{}\n", l.red, l.blue));
    }
    out
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct LineListing {
    pub delta: i64,
    pub count: usize,
    pub lines: Vec<BalancedLine>,
}

pub fn lines_to_json(inst: &Instance, lines: &[BalancedLine]) -> String {
    let listing = LineListing { delta: inst.delta(), count: lines.len(), lines: lines.to_vec() };
    serde_json::to_string_pretty(&listing).expect("listing serializes")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_forms() {
        assert_eq!(parse_rational("3").unwrap(), Rational::from_integer(3));
        assert_eq!(parse_rational("-6/4").unwrap(), Rational::new(-3, 2));
        assert_eq!(parse_rational("-1.25").unwrap(), Rational::new(-5, 4));
        assert_eq!(parse_rational("0.5").unwrap(), Rational::new(1, 2));
        for bad in ["", "1/0", "x", "1.", "1.2.3", "1.-2"] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
        assert_eq!(format_rational(&Rational::new(-6, 4)), "-3/2");
        assert_eq!(format_rational(&Rational::new(8, 4)), "2");
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{"points":[{"x":"1/2","y":"0.25","color":"R"},{"x":"-3","y":"7/3","color":"B"}]}"#;
        let inst = instance_from_json(text).unwrap();
        let again = instance_from_json(&instance_to_json(&inst)).unwrap();
        assert_eq!(inst, again);
        assert_eq!(inst.point(0).y, Rational::new(1, 4));
    }

    #[test]
    fn json_errors() {
        assert!(matches!(instance_from_json("{"), Err(IoError::Json(_))));
        let bad_color = r#"{"points":[{"x":"1","y":"0","color":"G"}]}"#;
        assert!(matches!(instance_from_json(bad_color), Err(IoError::BadColor(_))));
        let collinear = r#"{"points":[{"x":"0","y":"0","color":"R"},{"x":"1","y":"1","color":"B"},{"x":"2","y":"2","color":"B"},{"x":"3","y":"0","color":"B"}]}"#;
        assert!(matches!(
            instance_from_json(collinear),
            Err(IoError::Invalid(GeomError::CollinearTriple(0, 1, 2)))
        ));
    }
}
