//! Exact moments of power-sum statistics T_q = Σ λ_j^q for the Laguerre and
//! fixed-trace Laguerre ensembles.

mod power_sum;
mod purity;
mod recurrence;
mod schur;

use std::collections::BTreeMap;

use serde::Serialize;

use crate::math::rational::{to_decimal, Rational};
use crate::params::{EnsembleParams, ParamsRecord};

pub use power_sum::{
    flue_tq_mean_3f2, flue_tq_mean_narayana, flue_tq_moment_sum, flue_tq_moment_sum_with,
    flue_tq_moments, mp_limit_moment,
};
pub use purity::{purity_cdf_n2, purity_pdf_n2, tsallis_moment, PurityDensityValue};
pub use recurrence::{flue_moment_recurrence, lue_moment_recurrence};
pub use schur::{flue_normalization, schur_flue_integral, tq_moment_via_schur};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Ensemble {
    Lue,
    Flue,
    #[serde(rename = "lbeta")]
    LBeta,
    #[serde(rename = "flbeta")]
    FlBeta,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Route {
    CompositionSum,
    Hypergeometric3F2,
    Narayana,
    Recurrence,
    Painleve,
    Schur,
    BidiagonalRecursion,
}

/// What the entries of a table index.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Statistic {
    /// Entry k is ⟨T_q^k⟩ (or the k-th cumulant of T_q).
    PowerSum(u32),
    /// Entry k is ∫ x^k ρ(x) dx = ⟨T_k⟩.
    DensityMoments,
}

impl Statistic {
    pub fn label(&self) -> String {
        match self {
            Statistic::PowerSum(q) => format!("T_{q}"),
            Statistic::DensityMoments => "density".into(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Quantity {
    Moments,
    Cumulants,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MomentTable {
    pub statistic: Statistic,
    pub quantity: Quantity,
    pub ensemble: Ensemble,
    pub route: Route,
    pub params: EnsembleParams,
    pub entries: BTreeMap<u32, Rational>,
}

impl MomentTable {
    pub fn get(&self, k: u32) -> Option<&Rational> {
        self.entries.get(&k)
    }

    /// Serialisable form; rationals become "p/q" strings, with an optional
    /// decimal rendering.
    pub fn record(&self, digits: Option<usize>) -> MomentRecord {
        MomentRecord {
            statistic: self.statistic.label(),
            quantity: self.quantity,
            ensemble: self.ensemble,
            route: self.route,
            parameters: ParamsRecord::from(&self.params),
            entries: self
                .entries
                .iter()
                .map(|(k, v)| EntryRecord {
                    order: *k,
                    value: v.to_string(),
                    decimal: digits.map(|d| to_decimal(v, d)),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct MomentRecord {
    pub statistic: String,
    pub quantity: Quantity,
    pub ensemble: Ensemble,
    pub route: Route,
    pub parameters: ParamsRecord,
    pub entries: Vec<EntryRecord>,
}

#[derive(Clone, Debug, Serialize)]
pub struct EntryRecord {
    pub order: u32,
    pub value: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub decimal: Option<String>,
}
