//! State families, variant/method selections and single-point evaluation.

use std::sync::Arc;

use clap::ValueEnum;
use qdiscord_core::closed_form::{
    circulant_closed_forms, isotropic_closed_forms, make_circulant, make_isotropic, make_werner, werner_closed_forms,
};
use qdiscord_core::measurement::q_discord;
use qdiscord_core::{
    CirculantParams, DensityMatrix, DiscordVariant, IsotropicParam, OptimizerConfig, Rank, WernerParam,
};

use crate::error::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Werner,
    Isotropic,
    Circulant,
    Custom,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Werner => "werner",
            Family::Isotropic => "isotropic",
            Family::Circulant => "circulant",
            Family::Custom => "custom",
        }
    }

    /// Parameter names in CSV column order.
    pub fn param_names(self) -> &'static [&'static str] {
        match self {
            Family::Werner | Family::Isotropic => &["lambda"],
            Family::Circulant => &["epsilon", "g"],
            Family::Custom => &[],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VariantSel {
    Qexp,
    Additive,
    Both,
}

impl VariantSel {
    pub fn variants(self) -> &'static [DiscordVariant] {
        match self {
            VariantSel::Qexp => &[DiscordVariant::QExp],
            VariantSel::Additive => &[DiscordVariant::Additive],
            VariantSel::Both => &[DiscordVariant::QExp, DiscordVariant::Additive],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Closed,
    Numeric,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Closed => "closed",
            Method::Numeric => "numeric",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodSel {
    Closed,
    Numeric,
    Both,
}

impl MethodSel {
    pub fn methods(self) -> &'static [Method] {
        match self {
            MethodSel::Closed => &[Method::Closed],
            MethodSel::Numeric => &[Method::Numeric],
            MethodSel::Both => &[Method::Closed, Method::Numeric],
        }
    }
}

/// A concrete member of a family.
#[derive(Debug, Clone)]
pub enum StatePoint {
    Werner(WernerParam),
    Isotropic(IsotropicParam),
    Circulant(CirculantParams),
    Custom(Arc<DensityMatrix>),
}

impl StatePoint {
    pub fn family(&self) -> Family {
        match self {
            StatePoint::Werner(_) => Family::Werner,
            StatePoint::Isotropic(_) => Family::Isotropic,
            StatePoint::Circulant(_) => Family::Circulant,
            StatePoint::Custom(_) => Family::Custom,
        }
    }

    /// Parameter values aligned with [`Family::param_names`].
    pub fn params(&self) -> Vec<f64> {
        match self {
            StatePoint::Werner(p) => vec![p.lambda()],
            StatePoint::Isotropic(p) => vec![p.lambda()],
            StatePoint::Circulant(p) => vec![p.epsilon(), p.g()],
            StatePoint::Custom(_) => vec![],
        }
    }

    pub fn density_matrix(&self) -> Result<DensityMatrix> {
        Ok(match self {
            StatePoint::Werner(p) => make_werner(*p),
            StatePoint::Isotropic(p) => make_isotropic(*p),
            StatePoint::Circulant(p) => make_circulant(*p)?,
            StatePoint::Custom(rho) => (**rho).clone(),
        })
    }

    /// Whether a closed form exists for this family and variant.
    pub fn has_closed_form(&self, variant: DiscordVariant) -> bool {
        match self {
            StatePoint::Werner(_) | StatePoint::Isotropic(_) => true,
            StatePoint::Circulant(_) => variant == DiscordVariant::QExp,
            StatePoint::Custom(_) => false,
        }
    }
}

/// Discord value with its decomposition; angles only for the numeric method.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Evaluation {
    pub discord: f64,
    pub classical: f64,
    pub mutual: f64,
    pub angles: Option<(f64, f64)>,
    pub converged: Option<bool>,
}

pub fn evaluate(
    point: &StatePoint,
    q: Rank,
    variant: DiscordVariant,
    method: Method,
    opt: &OptimizerConfig,
) -> Result<Evaluation> {
    match method {
        Method::Closed => closed(point, q, variant),
        Method::Numeric => {
            let d = q_discord(&point.density_matrix()?, q, variant, opt)?;
            Ok(Evaluation {
                discord: d.value,
                classical: d.classical_part,
                mutual: d.mutual_part,
                angles: Some(d.optimal_measurement.angles()),
                converged: Some(d.converged),
            })
        }
    }
}

fn closed(point: &StatePoint, q: Rank, variant: DiscordVariant) -> Result<Evaluation> {
    let qexp = variant == DiscordVariant::QExp;
    let (discord, classical, mutual) = match point {
        StatePoint::Werner(p) => {
            let r = werner_closed_forms(*p, q);
            if qexp {
                (r.discord_qexp, r.classical, r.mutual_qexp)
            } else {
                (r.discord_additive, r.classical, r.mutual_additive)
            }
        }
        StatePoint::Isotropic(p) => {
            let r = isotropic_closed_forms(*p, q);
            if qexp {
                (r.discord_qexp, r.classical, r.mutual_qexp)
            } else {
                (r.discord_additive, r.classical, r.mutual_additive)
            }
        }
        StatePoint::Circulant(p) if qexp => {
            let r = circulant_closed_forms(*p, q)?;
            (r.discord_qexp, r.classical_qexp, r.mutual_qexp)
        }
        _ => {
            return Err(CliError::Usage(format!(
                "no closed form for the {} variant of {} states",
                variant.name(),
                point.family().name()
            )))
        }
    };
    Ok(Evaluation { discord, classical, mutual, angles: None, converged: None })
}

pub fn rank(q: f64) -> Result<Rank> {
    Rank::new(q).map_err(|e| CliError::Usage(format!("q = {q}: {e}")))
}
