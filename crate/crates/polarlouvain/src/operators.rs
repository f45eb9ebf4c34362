//! Aggregation operator registry: grouping, overlap, negation, and the
//! symmetrizer used when summarizing a fuzzy measure into a weighted graph.
//!
//! The registry is closed on purpose: every operator has a stable string id
//! so that run configs serialize and replay exactly. Inputs must already be
//! in `[0,1]`; out-of-range values are caller bugs and panic rather than
//! being clamped.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

#[inline]
fn check_unit(name: &str, x: f64) {
    assert!(
        (0.0..=1.0).contains(&x),
        "{name} expects inputs in [0,1], got {x}"
    );
}

/// Disjunction-like grouping function: commutative, monotone, `g(x,0)=x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Grouping {
    Max,
    ProbabilisticSum,
}

impl Grouping {
    pub fn eval(self, x: f64, y: f64) -> f64 {
        check_unit("grouping", x);
        check_unit("grouping", y);
        match self {
            Grouping::Max => x.max(y),
            Grouping::ProbabilisticSum => x + y - x * y,
        }
    }
}

/// Conjunction-like overlap function: commutative, monotone, `o(x,0)=0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Overlap {
    Min,
    Product,
    GeometricMean,
}

impl Overlap {
    pub fn eval(self, x: f64, y: f64) -> f64 {
        check_unit("overlap", x);
        check_unit("overlap", y);
        match self {
            Overlap::Min => x.min(y),
            Overlap::Product => x * y,
            Overlap::GeometricMean => (x * y).sqrt(),
        }
    }
}

/// Strictly decreasing negation with `N(0)=1`, `N(1)=0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Negation {
    Standard,
}

impl Negation {
    pub fn eval(self, x: f64) -> f64 {
        check_unit("negation", x);
        match self {
            Negation::Standard => 1.0 - x,
        }
    }
}

/// Bivariate aggregator applied to the two directed Shapley differences
/// when building the associated weighted graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Symmetrizer {
    Max,
    Min,
    Mean,
}

impl Symmetrizer {
    pub fn eval(self, x: f64, y: f64) -> f64 {
        match self {
            Symmetrizer::Max => x.max(y),
            Symmetrizer::Min => x.min(y),
            Symmetrizer::Mean => 0.5 * (x + y),
        }
    }
}

/// The full operator selection parameterizing every measure in this crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct OperatorConfig {
    pub grouping: Grouping,
    pub overlap: Overlap,
    pub negation: Negation,
    pub symmetrizer: Symmetrizer,
}

impl Default for OperatorConfig {
    /// max / product / standard negation / mean, the combination used for
    /// the worked numeric fixtures in this crate.
    fn default() -> Self {
        OperatorConfig {
            grouping: Grouping::Max,
            overlap: Overlap::Product,
            negation: Negation::Standard,
            symmetrizer: Symmetrizer::Mean,
        }
    }
}

impl OperatorConfig {
    pub fn grouping(&self, x: f64, y: f64) -> f64 {
        self.grouping.eval(x, y)
    }

    pub fn overlap(&self, x: f64, y: f64) -> f64 {
        self.overlap.eval(x, y)
    }

    pub fn negation(&self, x: f64) -> f64 {
        self.negation.eval(x)
    }

    pub fn symmetrizer(&self, x: f64, y: f64) -> f64 {
        self.symmetrizer.eval(x, y)
    }
}

macro_rules! id_strings {
    ($ty:ty { $($variant:path => $id:literal),+ $(,)? }) => {
        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                let s = match self {
                    $($variant => $id),+
                };
                f.write_str(s)
            }
        }

        impl FromStr for $ty {
            type Err = Error;

            fn from_str(s: &str) -> Result<Self, Error> {
                match s {
                    $($id => Ok($variant)),+,
                    other => Err(Error::Config(format!(
                        concat!("unknown ", stringify!($ty), " id {:?} (expected one of: ",
                                $($id, " "),+, ")"),
                        other
                    ))),
                }
            }
        }
    };
}

id_strings!(Grouping {
    Grouping::Max => "max",
    Grouping::ProbabilisticSum => "probabilistic-sum",
});
id_strings!(Overlap {
    Overlap::Min => "min",
    Overlap::Product => "product",
    Overlap::GeometricMean => "geometric-mean",
});
id_strings!(Negation {
    Negation::Standard => "standard",
});
id_strings!(Symmetrizer {
    Symmetrizer::Max => "max",
    Symmetrizer::Min => "min",
    Symmetrizer::Mean => "mean",
});

pub const ALL_GROUPINGS: &[Grouping] = &[Grouping::Max, Grouping::ProbabilisticSum];
pub const ALL_OVERLAPS: &[Overlap] = &[Overlap::Min, Overlap::Product, Overlap::GeometricMean];
pub const ALL_NEGATIONS: &[Negation] = &[Negation::Standard];
pub const ALL_SYMMETRIZERS: &[Symmetrizer] =
    &[Symmetrizer::Max, Symmetrizer::Min, Symmetrizer::Mean];
