//! Named tolerances and the `NAME=VALUE` override syntax.

use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ToleranceError {
    #[error("tolerance override {0:?} is not of the form NAME=VALUE")]
    Syntax(String),
    #[error("tolerance name {0:?} must be a non-empty identifier")]
    BadName(String),
    #[error("tolerance value {value:?} for {name} is not a finite non-negative number")]
    BadValue { name: String, value: String },
    #[error("unknown tolerance {name:?}; known: {known}")]
    Unknown { name: String, known: String },
}

/// Parses `NAME=VALUE` with a finite, non-negative value.
pub fn parse_override(text: &str) -> Result<(String, f64), ToleranceError> {
    let (name, value) = text
        .split_once('=')
        .ok_or_else(|| ToleranceError::Syntax(text.to_string()))?;
    let (name, value) = (name.trim(), value.trim());
    if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
        return Err(ToleranceError::BadName(name.to_string()));
    }
    match value.parse::<f64>() {
        Ok(v) if v.is_finite() && v >= 0.0 => Ok((name.to_string(), v)),
        _ => Err(ToleranceError::BadValue {
            name: name.to_string(),
            value: value.to_string(),
        }),
    }
}

/// Default tolerances of one command, with overrides applied.
#[derive(Debug, Clone)]
pub struct Tolerances {
    values: BTreeMap<&'static str, f64>,
}

impl Tolerances {
    pub fn new(defaults: &[(&'static str, f64)]) -> Self {
        Self {
            values: defaults.iter().copied().collect(),
        }
    }

    pub fn with_overrides(mut self, overrides: &[String]) -> Result<Self, ToleranceError> {
        for text in overrides {
            let (name, value) = parse_override(text)?;
            match self.values.get_mut(name.as_str()) {
                Some(slot) => *slot = value,
                None => {
                    return Err(ToleranceError::Unknown {
                        name,
                        known: self.values.keys().copied().collect::<Vec<_>>().join(", "),
                    })
                }
            }
        }
        Ok(self)
    }

    pub fn get(&self, name: &str) -> f64 {
        *self
            .values
            .get(name)
            .unwrap_or_else(|| panic!("no tolerance named {name}"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_overrides() {
        assert_eq!(parse_override("spectrum=1e-6").unwrap(), ("spectrum".into(), 1e-6));
        assert_eq!(parse_override(" a_b = 0 ").unwrap(), ("a_b".into(), 0.0));
        assert!(matches!(parse_override("spectrum"), Err(ToleranceError::Syntax(_))));
        assert!(matches!(parse_override("=1"), Err(ToleranceError::BadName(_))));
        assert!(matches!(parse_override("x-y=1"), Err(ToleranceError::BadName(_))));
        for bad in ["x=", "x=abc", "x=-1", "x=NaN", "x=inf", "x=1e999"] {
            assert!(matches!(parse_override(bad), Err(ToleranceError::BadValue { .. })), "{bad}");
        }
    }

    #[test]
    fn applies_known_names_only() {
        let t = Tolerances::new(&[("a", 1.0), ("b", 2.0)]);
        let t2 = t.clone().with_overrides(&["b=0.5".to_string()]).unwrap();
        assert_eq!(t2.get("a"), 1.0);
        assert_eq!(t2.get("b"), 0.5);
        assert!(matches!(
            t.with_overrides(&["c=1".to_string()]),
            Err(ToleranceError::Unknown { .. })
        ));
    }
}
