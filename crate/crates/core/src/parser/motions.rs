use std::collections::BTreeMap;

use crate::error::ParseError;
use crate::node::MotionLabel;

/// Success rate in `[0, 1]` per motion label.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct MotionSuccessTable {
    rates: BTreeMap<MotionLabel, f64>,
}

impl MotionSuccessTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Inserts a rate; returns the previous one for that motion, if any.
    ///
    /// # Panics
    ///
    /// If `rate` is outside `[0, 1]`.
    pub fn insert(&mut self, motion: MotionLabel, rate: f64) -> Option<f64> {
        assert!((0.0..=1.0).contains(&rate), "success rate {rate} outside [0, 1]");
        self.rates.insert(motion, rate)
    }

    pub fn get(&self, motion: &str) -> Option<f64> {
        MotionLabel::new(motion)
            .ok()
            .and_then(|m| self.rates.get(&m).copied())
    }

    pub fn len(&self) -> usize {
        self.rates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rates.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&MotionLabel, f64)> {
        self.rates.iter().map(|(m, &r)| (m, r))
    }
}

/// Reads `label <whitespace> rate` records; `#` starts a comment line.
pub fn parse_motions(text: &str) -> Result<MotionSuccessTable, ParseError> {
    let mut table = MotionSuccessTable::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut fields: Vec<&str> = trimmed.split_whitespace().collect();
        let rate_text = fields.pop().filter(|_| !fields.is_empty()).ok_or_else(|| {
            ParseError::line(line, "expected a motion label followed by a rate")
        })?;
        let rate: f64 = rate_text
            .parse()
            .ok()
            .filter(|r: &f64| r.is_finite())
            .ok_or_else(|| ParseError::line(line, format!("rate {rate_text:?} is not a number")))?;
        let label = MotionLabel::new(&fields.join(" ")).map_err(|e| ParseError::line(line, e.to_string()))?;
        if !(0.0..=1.0).contains(&rate) {
            return Err(ParseError::RateOutOfRange {
                line,
                label: label.to_string(),
                rate,
            });
        }
        if table.rates.contains_key(&label) {
            return Err(ParseError::DuplicateLabel {
                line,
                label: label.to_string(),
            });
        }
        table.rates.insert(label, rate);
    }
    Ok(table)
}
