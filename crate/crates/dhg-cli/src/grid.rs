//! `min:max:steps` grid specifications with linear or logarithmic spacing.

use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub min: f64,
    pub max: f64,
    pub steps: usize,
}

impl FromStr for GridSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(format!("grid must be min:max:steps, got '{s}'"));
        }
        let min: f64 = parts[0].parse().map_err(|e| format!("bad grid min: {e}"))?;
        let max: f64 = parts[1].parse().map_err(|e| format!("bad grid max: {e}"))?;
        let steps: usize = parts[2].parse().map_err(|e| format!("bad grid steps: {e}"))?;
        if steps < 1 {
            return Err("grid needs at least one step".into());
        }
        if !(min.is_finite() && max.is_finite()) || max < min {
            return Err(format!("bad grid range [{min}, {max}]"));
        }
        Ok(GridSpec { min, max, steps })
    }
}

impl GridSpec {
    pub fn points(&self, log_spacing: bool) -> Result<Vec<f64>, String> {
        if self.steps == 1 {
            return Ok(vec![self.min]);
        }
        if log_spacing {
            if self.min <= 0.0 {
                return Err("log spacing needs a positive grid minimum".into());
            }
            let (la, lb) = (self.min.ln(), self.max.ln());
            Ok((0..self.steps)
                .map(|i| (la + (lb - la) * i as f64 / (self.steps - 1) as f64).exp())
                .collect())
        } else {
            Ok((0..self.steps)
                .map(|i| self.min + (self.max - self.min) * i as f64 / (self.steps - 1) as f64)
                .collect())
        }
    }
}
