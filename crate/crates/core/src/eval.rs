//! Satisfied/unsatisfied weights and the six normalized objective values.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::instance::{metrics, GugpInstance, Labeling, RelationalInstance};
use crate::rational::Rational;

/// The normalized value definitions for unique games with signed weights.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Objective {
    MaxUgp,
    MinUgp,
    MaxPwt,
    MinPwt,
    MaxNwa,
    MinNwa,
}

impl Objective {
    pub const ALL: [Objective; 6] = [
        Objective::MaxUgp,
        Objective::MinUgp,
        Objective::MaxPwt,
        Objective::MinPwt,
        Objective::MaxNwa,
        Objective::MinNwa,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Objective::MaxUgp => "max-ugp",
            Objective::MinUgp => "min-ugp",
            Objective::MaxPwt => "max-pwt",
            Objective::MinPwt => "min-pwt",
            Objective::MaxNwa => "max-nwa",
            Objective::MinNwa => "min-nwa",
        }
    }

    /// Checks the weight-sign precondition and returns the normalizer.
    fn normalizer(self, g: &GugpInstance) -> Result<Rational> {
        let m = metrics(g);
        let norm = match self {
            Objective::MaxUgp | Objective::MinUgp => {
                if !g.all_positive() {
                    return Err(Error::ObjectiveMismatch(format!(
                        "{} needs all edge weights positive",
                        self.name()
                    )));
                }
                m.sigma
            }
            Objective::MaxPwt | Objective::MinPwt => {
                if !m.sigma.is_positive() {
                    return Err(Error::ObjectiveMismatch(format!(
                        "{} needs positive total weight, got {}",
                        self.name(),
                        m.sigma
                    )));
                }
                m.sigma
            }
            Objective::MaxNwa | Objective::MinNwa => {
                if !g.all_negative() {
                    return Err(Error::ObjectiveMismatch(format!(
                        "{} needs all edge weights negative",
                        self.name()
                    )));
                }
                m.w_minus.abs()
            }
        };
        if norm.is_zero() {
            return Err(Error::Degenerate(format!(
                "{} normalizer is zero",
                self.name()
            )));
        }
        Ok(norm)
    }

    /// Fails unless `g` meets this objective's weight-sign precondition.
    pub fn check(self, g: &GugpInstance) -> Result<()> {
        self.normalizer(g).map(|_| ())
    }
}

impl fmt::Display for Objective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Objective {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let norm = s.to_ascii_lowercase().replace('_', "-");
        Objective::ALL
            .into_iter()
            .find(|o| o.name() == norm)
            .ok_or_else(|| Error::Usage(format!("unknown objective {s:?}")))
    }
}

pub fn satisfied_weight(g: &GugpInstance, f: &Labeling) -> Result<Rational> {
    f.check(g.n(), g.k())?;
    Ok(g.edges()
        .iter()
        .filter(|e| e.pi.at(f.get(e.u)) == f.get(e.v))
        .map(|e| &e.weight)
        .sum())
}

pub fn unsatisfied_weight(g: &GugpInstance, f: &Labeling) -> Result<Rational> {
    Ok(g.total_weight() - satisfied_weight(g, f)?)
}

/// The normalized value of labeling `f` under `obj`. PWT values may be
/// negative or exceed 1.
pub fn labeling_value(g: &GugpInstance, f: &Labeling, obj: Objective) -> Result<Rational> {
    let norm = obj.normalizer(g)?;
    let sat = satisfied_weight(g, f)?;
    let numerator = match obj {
        Objective::MaxUgp | Objective::MaxPwt => sat,
        Objective::MinUgp | Objective::MinPwt => g.total_weight() - sat,
        Objective::MaxNwa => (g.total_weight() - sat).abs(),
        Objective::MinNwa => sat.abs(),
    };
    Ok(numerator / norm)
}

pub fn relational_satisfied_weight(inst: &RelationalInstance, f: &Labeling) -> Result<Rational> {
    f.check_with(inst.n(), |v| inst.label_count(v))?;
    Ok(inst
        .edges()
        .iter()
        .filter(|e| e.rel.contains(f.get(e.u), f.get(e.v)))
        .map(|e| &e.weight)
        .sum())
}
