use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const DEFAULT_POINTS: usize = 4096;

/// Relative inset applied to support endpoints when building grids on a
/// support interior.
pub const SUPPORT_INSET: f64 = 1e-6;

/// Linearly spaced evaluation grid `lo, lo + h, ..., hi`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub lo: f64,
    pub hi: f64,
    #[serde(default = "default_points")]
    pub points: usize,
}

fn default_points() -> usize {
    DEFAULT_POINTS
}

impl GridSpec {
    pub fn new(lo: f64, hi: f64, points: usize) -> Result<Self> {
        let g = GridSpec { lo, hi, points };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        if !self.lo.is_finite() || !self.hi.is_finite() {
            return Err(Error::InvalidGrid(format!(
                "endpoints must be finite, got {}:{}",
                self.lo, self.hi
            )));
        }
        if self.lo >= self.hi {
            return Err(Error::InvalidGrid(format!(
                "lo ({}) must be below hi ({})",
                self.lo, self.hi
            )));
        }
        if self.points < 2 {
            return Err(Error::InvalidGrid(format!(
                "need at least 2 points, got {}",
                self.points
            )));
        }
        Ok(())
    }

    /// Grid covering `[lower, upper]` shrunk by `SUPPORT_INSET * (upper - lower)`
    /// at both ends.
    pub fn inset(lower: f64, upper: f64, points: usize) -> Result<Self> {
        let pad = SUPPORT_INSET * (upper - lower);
        GridSpec::new(lower + pad, upper - pad, points)
    }

    pub fn spacing(&self) -> f64 {
        (self.hi - self.lo) / (self.points - 1) as f64
    }

    pub fn range(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn at(&self, i: usize) -> f64 {
        if i + 1 == self.points {
            self.hi
        } else {
            self.lo + i as f64 * self.spacing()
        }
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = f64> + '_ {
        (0..self.points).map(move |i| self.at(i))
    }

    pub fn to_vec(&self) -> Vec<f64> {
        self.iter().collect()
    }

    /// Same interval with the spacing halved; contains every point of `self`.
    pub fn refined(&self) -> Self {
        GridSpec {
            lo: self.lo,
            hi: self.hi,
            points: 2 * self.points - 1,
        }
    }

    pub fn with_hi(&self, hi: f64) -> Self {
        GridSpec { hi, ..*self }
    }
}

impl fmt::Display for GridSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.lo, self.hi, self.points)
    }
}

/// Parses `lo:hi` or `lo:hi:points`.
impl FromStr for GridSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let num = |p: &str, what: &str| -> Result<f64> {
            p.trim()
                .parse::<f64>()
                .map_err(|_| Error::InvalidGrid(format!("cannot parse {what} `{p}` in `{s}`")))
        };
        match parts.as_slice() {
            [lo, hi] => GridSpec::new(num(lo, "lo")?, num(hi, "hi")?, DEFAULT_POINTS),
            [lo, hi, n] => {
                let points = n
                    .trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidGrid(format!("cannot parse points `{n}` in `{s}`")))?;
                GridSpec::new(num(lo, "lo")?, num(hi, "hi")?, points)
            }
            _ => Err(Error::InvalidGrid(format!("expected lo:hi[:points], got `{s}`"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn endpoints_exact() {
        let g = GridSpec::new(4.001, 100.0, 2048).unwrap();
        assert_eq!(g.at(0), 4.001);
        assert_eq!(g.at(2047), 100.0);
        assert_eq!(g.iter().count(), 2048);
    }

    #[test]
    fn refined_contains_original_points() {
        let g = GridSpec::new(0.0, 1.0, 11).unwrap();
        let r = g.refined();
        assert_eq!(r.points, 21);
        for i in 0..g.points {
            assert!((r.at(2 * i) - g.at(i)).abs() < 1e-15);
        }
    }

    #[test]
    fn parse_flag_syntax() {
        let g: GridSpec = "4.001:100:2048".parse().unwrap();
        assert_eq!(g, GridSpec::new(4.001, 100.0, 2048).unwrap());
        let d: GridSpec = "1:2".parse().unwrap();
        assert_eq!(d.points, DEFAULT_POINTS);
        assert!("3:1:10".parse::<GridSpec>().is_err());
        assert!("1:2:1".parse::<GridSpec>().is_err());
        assert!("a:b".parse::<GridSpec>().is_err());
    }
}
