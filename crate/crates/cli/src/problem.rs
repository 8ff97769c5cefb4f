//! Problem files: a ring description plus the generators of an ideal.

use std::path::Path;

use cmreg::{Field, Ideal, MonomialOrder, Ring};
use serde::Deserialize;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub ring: RingSpec,
    pub ideal: Vec<String>,
    #[serde(default)]
    pub order: Option<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingSpec {
    pub variables: Vec<String>,
    pub coefficients: Coefficients,
}

/// `"QQ"` or `{"GF": p}`.
#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum Coefficients {
    Named(String),
    Prime {
        #[serde(rename = "GF")]
        gf: u64,
    },
}

/// A failure to turn input into a ring and ideal; maps to exit code 2.
#[derive(Debug)]
pub struct InputError(pub String);

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

/// Accepts `QQ`, `GF(p)`, `GF:p` or a bare prime.
pub fn parse_field(text: &str) -> Result<Field, InputError> {
    let t = text.trim();
    if t.eq_ignore_ascii_case("QQ") {
        return Ok(Field::Rational);
    }
    let digits = t
        .strip_prefix("GF(")
        .and_then(|r| r.strip_suffix(')'))
        .or_else(|| t.strip_prefix("GF:"))
        .unwrap_or(t);
    let p: u64 = digits
        .trim()
        .parse()
        .map_err(|_| InputError(format!("unknown coefficient field '{text}'")))?;
    Field::prime(p).map_err(|e| InputError(e.to_string()))
}

impl Coefficients {
    fn field(&self) -> Result<Field, InputError> {
        match self {
            Coefficients::Named(name) => parse_field(name),
            Coefficients::Prime { gf } => Field::prime(*gf).map_err(|e| InputError(e.to_string())),
        }
    }
}

pub struct Overrides<'a> {
    pub field: Option<&'a str>,
    pub order: Option<&'a str>,
}

pub fn load(path: &Path, overrides: &Overrides) -> Result<Ideal, InputError> {
    let text = std::fs::read_to_string(path).map_err(|e| InputError(format!("cannot read {}: {e}", path.display())))?;
    let problem: ProblemFile =
        serde_json::from_str(&text).map_err(|e| InputError(format!("malformed problem file: {e}")))?;
    build(&problem, overrides)
}

pub fn build(problem: &ProblemFile, overrides: &Overrides) -> Result<Ideal, InputError> {
    let field = match overrides.field {
        Some(f) => parse_field(f)?,
        None => problem.ring.coefficients.field()?,
    };
    let order_text = overrides.order.or(problem.order.as_deref()).unwrap_or("grevlex");
    let order: MonomialOrder = order_text
        .parse()
        .map_err(|e: cmreg::Error| InputError(e.to_string()))?;
    let ring = Ring::new(&problem.ring.variables, field, order).map_err(|e| InputError(e.to_string()))?;
    Ideal::parse(&ring, &problem.ideal).map_err(|e| InputError(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn problem(json: &str) -> ProblemFile {
        serde_json::from_str(json).unwrap()
    }

    const NONE: Overrides = Overrides {
        field: None,
        order: None,
    };

    #[test]
    fn parses_both_coefficient_forms() {
        let p = problem(r#"{"ring": {"variables": ["x", "y"], "coefficients": "QQ"}, "ideal": ["x^2", "x*y"]}"#);
        assert_eq!(build(&p, &NONE).unwrap().ring().field(), Field::Rational);
        let p = problem(r#"{"ring": {"variables": ["x"], "coefficients": {"GF": 7}}, "ideal": ["x"], "order": "lex"}"#);
        let i = build(&p, &NONE).unwrap();
        assert_eq!(i.ring().field(), Field::Prime(7));
        assert_eq!(i.ring().order(), MonomialOrder::Lex);
    }

    #[test]
    fn overrides_win() {
        let p = problem(r#"{"ring": {"variables": ["x", "y"], "coefficients": "QQ"}, "ideal": ["x"]}"#);
        let o = Overrides {
            field: Some("GF(32003)"),
            order: Some("lex"),
        };
        let i = build(&p, &o).unwrap();
        assert_eq!(i.ring().field(), Field::Prime(32003));
        assert_eq!(i.ring().order(), MonomialOrder::Lex);
    }

    #[test]
    fn field_syntax() {
        assert_eq!(parse_field("qq").unwrap(), Field::Rational);
        assert_eq!(parse_field("GF:11").unwrap(), Field::Prime(11));
        assert_eq!(parse_field("101").unwrap(), Field::Prime(101));
        assert!(parse_field("GF(12)").is_err());
        assert!(parse_field("RR").is_err());
    }

    #[test]
    fn rejects_non_homogeneous() {
        let p = problem(r#"{"ring": {"variables": ["x", "y"], "coefficients": "QQ"}, "ideal": ["x+y^2"]}"#);
        let e = build(&p, &NONE).unwrap_err();
        assert!(e.0.contains("generator not homogeneous"), "{e}");
        assert!(e.0.contains("y^2"), "{e}");
    }
}
