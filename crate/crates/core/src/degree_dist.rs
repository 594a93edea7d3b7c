//! Repetition-rate law used by every contending vehicle.
//!
//! A vehicle draws its number of request copies `l` from a discrete law
//! `{Λ_l}`. The law is written as an explicit list of `degree:probability`
//! pairs, e.g. `2:0.5,3:0.28,8:0.22`.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use thiserror::Error;

/// Largest number of copies a vehicle may send.
pub const MAX_DEGREE: u32 = 8;

/// Absolute tolerance on the total probability mass.
pub const MASS_TOLERANCE: f64 = 1e-9;

/// Textual form of the default law `0.5x^2 + 0.28x^3 + 0.22x^8`.
pub const DEFAULT_DISTRIBUTION: &str = "2:0.5,3:0.28,8:0.22";

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DistributionError {
    #[error("distribution has no entries")]
    Empty,
    #[error("degree {0} appears more than once")]
    DuplicateDegree(u32),
    #[error("degree {degree} outside [1, {max}]")]
    DegreeOutOfRange { degree: u32, max: u32 },
    #[error("probability {probability} of degree {degree} is not strictly positive")]
    NonPositiveProbability { degree: u32, probability: f64 },
    #[error("probabilities sum to {0}, expected 1")]
    NonUnitMass(f64),
    #[error("cannot parse distribution entry {0:?}, expected `degree:probability`")]
    Syntax(String),
}

/// Checks the raw `(degree, probability)` list against every invariant of a
/// degree distribution.
pub fn validate(entries: &[(u32, f64)]) -> Result<(), DistributionError> {
    if entries.is_empty() {
        return Err(DistributionError::Empty);
    }
    let mut seen = [false; MAX_DEGREE as usize + 1];
    for &(degree, probability) in entries {
        if degree == 0 || degree > MAX_DEGREE {
            return Err(DistributionError::DegreeOutOfRange {
                degree,
                max: MAX_DEGREE,
            });
        }
        if seen[degree as usize] {
            return Err(DistributionError::DuplicateDegree(degree));
        }
        seen[degree as usize] = true;
        if !probability.is_finite() || probability <= 0.0 {
            return Err(DistributionError::NonPositiveProbability {
                degree,
                probability,
            });
        }
    }
    let mass: f64 = entries.iter().map(|&(_, p)| p).sum();
    if (mass - 1.0).abs() > MASS_TOLERANCE {
        return Err(DistributionError::NonUnitMass(mass));
    }
    Ok(())
}

/// A validated repetition-rate distribution. Entries are kept in ascending
/// degree order, which fixes the inverse-CDF mapping used by
/// [`DegreeDistribution::sample_degree`].
#[derive(Debug, Clone, PartialEq)]
pub struct DegreeDistribution {
    entries: Vec<(u32, f64)>,
    cumulative: Vec<f64>,
}

impl DegreeDistribution {
    pub fn new(mut entries: Vec<(u32, f64)>) -> Result<Self, DistributionError> {
        validate(&entries)?;
        entries.sort_by_key(|&(degree, _)| degree);
        let cumulative = entries
            .iter()
            .scan(0.0, |acc, &(_, p)| {
                *acc += p;
                Some(*acc)
            })
            .collect();
        Ok(Self {
            entries,
            cumulative,
        })
    }

    /// `(degree, probability)` pairs in ascending degree order.
    pub fn entries(&self) -> &[(u32, f64)] {
        &self.entries
    }

    pub fn max_degree(&self) -> u32 {
        self.entries.last().map(|&(d, _)| d).unwrap_or(0)
    }

    pub fn probability(&self, degree: u32) -> f64 {
        self.entries
            .iter()
            .find(|&&(d, _)| d == degree)
            .map(|&(_, p)| p)
            .unwrap_or(0.0)
    }

    /// Average number of copies per vehicle, `Σ l·Λ_l`.
    pub fn mean_degree(&self) -> f64 {
        self.entries.iter().map(|&(d, p)| d as f64 * p).sum()
    }

    /// Draws one degree by inverting the CDF with a single uniform variate.
    pub fn sample_degree<R: Rng + ?Sized>(&self, rng: &mut R) -> u32 {
        let u: f64 = rng.gen();
        // The last entry absorbs any rounding slack in the cumulative sum.
        let idx = self
            .cumulative
            .iter()
            .position(|&c| u < c)
            .unwrap_or(self.entries.len() - 1);
        self.entries[idx].0
    }
}

impl Default for DegreeDistribution {
    fn default() -> Self {
        DEFAULT_DISTRIBUTION
            .parse()
            .expect("default distribution is valid")
    }
}

impl FromStr for DegreeDistribution {
    type Err = DistributionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut entries = Vec::new();
        for item in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let (degree, probability) = item
                .split_once(':')
                .ok_or_else(|| DistributionError::Syntax(item.to_string()))?;
            let degree = degree
                .trim()
                .parse::<u32>()
                .map_err(|_| DistributionError::Syntax(item.to_string()))?;
            let probability = probability
                .trim()
                .parse::<f64>()
                .map_err(|_| DistributionError::Syntax(item.to_string()))?;
            entries.push((degree, probability));
        }
        Self::new(entries)
    }
}

impl fmt::Display for DegreeDistribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (d, p)) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{d}:{p}")?;
        }
        Ok(())
    }
}
