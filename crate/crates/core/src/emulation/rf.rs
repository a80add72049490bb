//! Discrete rf-power distributions.
//!
//! Text format: one bin per line, fields separated by commas, semicolons or
//! whitespace. Two columns are `scale, probability` for a single control
//! channel; three are `scale_c, scale_h, probability` for the joint
//! carbon/hydrogen table. `#` starts a comment and one non-numeric header
//! line is allowed before the first bin.

use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::scalar::Real;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RfBin<T> {
    /// One scale per channel: `[s]`, or `[s_carbon, s_hydrogen]`.
    pub scales: Vec<T>,
    pub probability: T,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<RfBin<T>>", into = "Vec<RfBin<T>>")]
#[serde(bound(serialize = "T: Real + Serialize", deserialize = "T: Real + Deserialize<'de>"))]
pub struct RfDistribution<T> {
    bins: Vec<RfBin<T>>,
}

impl<T: Real> TryFrom<Vec<RfBin<T>>> for RfDistribution<T> {
    type Error = Error;

    fn try_from(bins: Vec<RfBin<T>>) -> Result<Self> {
        Self::new(bins)
    }
}

impl<T: Real> From<RfDistribution<T>> for Vec<RfBin<T>> {
    fn from(d: RfDistribution<T>) -> Self {
        d.bins
    }
}

impl<T: Real> RfDistribution<T> {
    pub fn new(bins: Vec<RfBin<T>>) -> Result<Self> {
        let first = bins.first().ok_or(Error::ProbabilitySum { sum: 0.0 })?;
        let channels = first.scales.len();
        if !(1..=2).contains(&channels) {
            return Err(Error::OutOfRange {
                name: "rf channels",
                value: channels as f64,
                allowed: "1 or 2",
            });
        }
        let mut sum = T::zero();
        for b in &bins {
            if b.scales.len() != channels {
                return Err(Error::DimensionMismatch {
                    expected: channels,
                    found: b.scales.len(),
                });
            }
            if let Some(&s) = b.scales.iter().find(|s| !(s.is_finite() && **s > T::zero())) {
                return Err(Error::OutOfRange {
                    name: "rf scale",
                    value: s.as_f64(),
                    allowed: "> 0",
                });
            }
            if !(b.probability.is_finite() && b.probability >= T::zero()) {
                return Err(Error::OutOfRange {
                    name: "rf probability",
                    value: b.probability.as_f64(),
                    allowed: ">= 0",
                });
            }
            sum += b.probability;
        }
        if (sum - T::one()).abs() > T::tolerance(1e-6) {
            return Err(Error::ProbabilitySum { sum: sum.as_f64() });
        }
        Ok(Self { bins })
    }

    pub fn single(scales: &[T], probabilities: &[T]) -> Result<Self> {
        if scales.len() != probabilities.len() {
            return Err(Error::DimensionMismatch {
                expected: scales.len(),
                found: probabilities.len(),
            });
        }
        Self::new(
            scales
                .iter()
                .zip(probabilities)
                .map(|(&s, &p)| RfBin {
                    scales: vec![s],
                    probability: p,
                })
                .collect(),
        )
    }

    /// Every member sees the nominal power.
    pub fn delta() -> Self {
        Self::single(&[T::one()], &[T::one()]).expect("valid")
    }

    /// A Gaussian-like nine-bin stand-in for a measured carbon distribution,
    /// mean slightly below nominal. Synthetic, not measured data.
    pub fn synthetic_carbon() -> Self {
        let s = [0.80, 0.85, 0.90, 0.93, 0.96, 1.00, 1.03, 1.06, 1.10].map(T::lit);
        let p = [0.02, 0.04, 0.07, 0.12, 0.17, 0.25, 0.17, 0.11, 0.05].map(T::lit);
        Self::single(&s, &p).expect("valid")
    }

    pub fn channels(&self) -> usize {
        self.bins[0].scales.len()
    }

    pub fn is_joint(&self) -> bool {
        self.channels() == 2
    }

    pub fn bins(&self) -> &[RfBin<T>] {
        &self.bins
    }

    pub fn len(&self) -> usize {
        self.bins.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bins.is_empty()
    }

    pub fn is_delta_at_nominal(&self) -> bool {
        self.bins
            .iter()
            .all(|b| b.probability == T::zero() || b.scales.iter().all(|&s| s == T::one()))
    }

    /// Probability-weighted mean scale of each channel.
    pub fn mean(&self) -> Vec<T> {
        (0..self.channels())
            .map(|c| self.bins.iter().map(|b| b.scales[c] * b.probability).sum())
            .collect()
    }

    /// Index of the bin whose scales are closest to nominal.
    pub fn nominal_bin(&self) -> usize {
        let dist = |b: &RfBin<T>| b.scales.iter().map(|&s| (s - T::one()).abs()).fold(T::zero(), T::max);
        let mut best = 0;
        for (i, b) in self.bins.iter().enumerate() {
            if dist(b) < dist(&self.bins[best]) {
                best = i;
            }
        }
        best
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut bins = Vec::new();
        let mut header_allowed = true;
        for (k, raw) in text.lines().enumerate() {
            let line = k + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let fields: Vec<&str> = content
                .split(|c: char| c == ',' || c == ';' || c.is_whitespace())
                .filter(|f| !f.is_empty())
                .collect();
            let parsed: Vec<Option<f64>> = fields.iter().map(|f| f.parse::<f64>().ok()).collect();
            if parsed.iter().all(Option::is_none) && header_allowed {
                header_allowed = false;
                continue;
            }
            header_allowed = false;
            let values: Vec<f64> = parsed
                .iter()
                .zip(&fields)
                .map(|(v, f)| {
                    v.ok_or_else(|| Error::Parse {
                        line,
                        message: format!("not a number: {f:?}"),
                    })
                })
                .collect::<Result<_>>()?;
            if !(2..=3).contains(&values.len()) {
                return Err(Error::Parse {
                    line,
                    message: format!("expected 2 or 3 columns, found {}", values.len()),
                });
            }
            if let Some(prev) = bins.first().map(|b: &RfBin<T>| b.scales.len() + 1) {
                if prev != values.len() {
                    return Err(Error::Parse {
                        line,
                        message: format!("expected {prev} columns, found {}", values.len()),
                    });
                }
            }
            let (p, s) = values.split_last().expect("at least two values");
            bins.push(RfBin {
                scales: s.iter().map(|&x| T::lit(x)).collect(),
                probability: T::lit(*p),
            });
        }
        if bins.is_empty() {
            return Err(Error::Parse {
                line: 0,
                message: "no bins".into(),
            });
        }
        Self::new(bins)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    /// Comma-separated text that [`RfDistribution::parse`] reads back exactly.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(if self.is_joint() {
            "scale_c,scale_h,probability\n"
        } else {
            "scale,probability\n"
        });
        for b in &self.bins {
            for s in &b.scales {
                let _ = write!(out, "{},", s.as_f64());
            }
            let _ = writeln!(out, "{}", b.probability.as_f64());
        }
        out
    }
}
