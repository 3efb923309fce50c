use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use super::cyclo::CycloElement;
use super::poly::free_amplitude;
use crate::error::{Error, Result};

/// A point source at `position` with initial phase `zeta_M^phase`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Source {
    pub position: i64,
    pub phase: i64,
}

/// Parses `"-4:0,4:2"` into sources.
pub fn parse_sources(text: &str) -> Result<Vec<Source>> {
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| {
            let (p, f) = s
                .trim()
                .split_once(':')
                .ok_or_else(|| Error::invalid(format!("source {s:?} is not position:phase")))?;
            let position = p.trim().parse().map_err(|_| Error::invalid(format!("bad position {p:?}")))?;
            let phase = f.trim().parse().map_err(|_| Error::invalid(format!("bad phase {f:?}")))?;
            Ok(Source { position, phase })
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct PatternPoint {
    pub x: i64,
    pub amplitude: CycloElement,
    /// `|A|^2` when it is a rational integer.
    pub exact: Option<BigInt>,
    pub magnitude: f64,
    /// `magnitude` divided by the maximum over the pattern.
    pub probability: f64,
}

#[derive(Clone, Debug)]
pub struct InterferencePattern {
    pub modulus: u32,
    pub steps: u32,
    pub points: Vec<PatternPoint>,
}

impl InterferencePattern {
    pub fn at(&self, x: i64) -> Option<&PatternPoint> {
        self.points.iter().find(|p| p.x == x)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("x,probability\n");
        for p in &self.points {
            writeln!(out, "{},{:.12}", p.x, p.probability).unwrap();
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let pts: Vec<serde_json::Value> = self
            .points
            .iter()
            .map(|p| {
                serde_json::json!({
                    "x": p.x,
                    "amplitude": p.amplitude.to_string(),
                    "norm_sq": p.exact.as_ref().map(|e| e.to_string()),
                    "probability": format!("{:.12}", p.probability),
                })
            })
            .collect();
        serde_json::json!({ "m": self.modulus, "t": self.steps, "points": pts })
    }
}

/// Superposes `A_(x - x_s)^t(w)` over sources with `w = zeta_M`, in exact
/// cyclotomic arithmetic. Squared magnitudes are normalised by their maximum.
pub fn interference(sources: &[Source], steps: u32, modulus: u32) -> Result<InterferencePattern> {
    if modulus == 0 {
        return Err(Error::invalid("modulus must be at least 1"));
    }
    if sources.is_empty() {
        return Err(Error::invalid("no sources"));
    }
    let t = steps as i64;
    let lo = sources.iter().map(|s| s.position).min().unwrap() - t;
    let hi = sources.iter().map(|s| s.position).max().unwrap() + t;
    let mut points: Vec<PatternPoint> = (lo..=hi)
        .into_par_iter()
        .map(|x| {
            let mut a = CycloElement::zero(modulus);
            for s in sources {
                let d = x - s.position;
                if d.abs() > t {
                    continue;
                }
                let amp = CycloElement::eval(&free_amplitude(d, steps).expect("within light cone"), modulus, 1);
                a = &a + &(&amp * &CycloElement::zeta_pow(modulus, s.phase));
            }
            let n = a.norm_sq();
            let exact = n.as_integer();
            let magnitude = match &exact {
                Some(e) => e.to_f64().unwrap_or(f64::INFINITY),
                None => n.to_complex().re,
            };
            PatternPoint { x, amplitude: a, exact, magnitude, probability: 0.0 }
        })
        .collect();
    let max = points.iter().map(|p| p.magnitude).fold(0.0f64, f64::max);
    for p in &mut points {
        p.probability = if max > 0.0 && !p.exact.as_ref().is_some_and(Zero::is_zero) { p.magnitude / max } else { 0.0 };
    }
    Ok(InterferencePattern { modulus, steps, points })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn opposite_phases_cancel_at_midpoint() {
        let src = parse_sources("-4:0,4:2").unwrap();
        let p = interference(&src, 20, 4).unwrap();
        assert_eq!(p.at(0).unwrap().exact, Some(BigInt::zero()));
        let same = interference(&parse_sources("-4:0, 4:0").unwrap(), 20, 4).unwrap();
        for x in 0..=24 {
            assert_eq!(same.at(x).unwrap().exact, same.at(-x).unwrap().exact);
        }
        assert!(parse_sources("4").is_err());
    }
}
