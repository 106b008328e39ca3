//! JSON input describing a bundle and a class, and body output with metadata.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polytope::{AnyPolytope, PolytopeJson};
use crate::scalar::Number;

use super::body::{no_body_divisor, FlagPermutation};
use super::dual::{dual_volume, no_body_curve};
use super::{classify_curve, classify_divisor, CurveClass, DivisorClass, HnData, HnQuotient};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BundleInput {
    /// Quotients in filtration order.
    pub hn: Vec<HnQuotient>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub divisor: Option<DivisorClass>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub curve: Option<CurveClass>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega: Option<Vec<usize>>,
}

impl BundleInput {
    pub fn hn_data(&self) -> Result<HnData> {
        HnData::from_quotients(&self.hn)
    }

    pub fn omega(&self) -> Result<Option<FlagPermutation>> {
        self.omega.clone().map(FlagPermutation::new).transpose()
    }

    pub fn require_divisor(&self) -> Result<&DivisorClass> {
        self.divisor
            .as_ref()
            .ok_or_else(|| Error::InvalidInput("input has no \"divisor\"".into()))
    }

    pub fn require_curve(&self) -> Result<&CurveClass> {
        self.curve
            .as_ref()
            .ok_or_else(|| Error::InvalidInput("input has no \"curve\"".into()))
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct BodyMetadata {
    pub sigma: Vec<Number>,
    pub d: Number,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<Number>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<Number>,
    pub classification: String,
    /// `r!` times the Euclidean volume of the body.
    pub volume: Number,
    #[serde(rename = "M", default, skip_serializing_if = "Option::is_none")]
    pub m: Option<Number>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct BodyOutput {
    #[serde(flatten)]
    pub body: PolytopeJson,
    pub metadata: BodyMetadata,
}

fn normalized_volume(x: &HnData, body: &AnyPolytope) -> Number {
    if body.is_empty() {
        return Number::from_int(0);
    }
    let fact: i64 = (1..=x.rank() as i64).product();
    Number::from_int(fact) * body.volume()
}

fn sigma_numbers(x: &HnData) -> Vec<Number> {
    x.sigma().iter().cloned().map(Number::Exact).collect()
}

/// Body of the input divisor with its metadata.
pub fn divisor_body(input: &BundleInput) -> Result<(AnyPolytope, BodyOutput)> {
    let x = input.hn_data()?;
    let d = input.require_divisor()?;
    let omega = input.omega()?;
    let body = no_body_divisor(&x, d, omega.as_ref())?;
    let metadata = BodyMetadata {
        sigma: sigma_numbers(&x),
        d: Number::Exact(x.degree().clone()),
        t: d.t(),
        a: Some(d.x.clone()),
        classification: classify_divisor(d, &x).as_str().to_string(),
        volume: normalized_volume(&x, &body),
        m: None,
    };
    Ok((
        body.clone(),
        BodyOutput {
            body: body.to_json(),
            metadata,
        },
    ))
}

/// Body of the input curve class with its metadata.
pub fn curve_body(input: &BundleInput) -> Result<(AnyPolytope, BodyOutput)> {
    let x = input.hn_data()?;
    let alpha = input.require_curve()?;
    let dv = dual_volume(&x, alpha)?;
    let body = no_body_curve(&x, alpha)?;
    let metadata = BodyMetadata {
        sigma: sigma_numbers(&x),
        d: Number::Exact(x.degree().clone()),
        t: Some(dv.u_star.clone()),
        a: None,
        classification: classify_curve(alpha, &x).as_str().to_string(),
        volume: normalized_volume(&x, &body),
        m: Some(dv.m),
    };
    Ok((
        body.clone(),
        BodyOutput {
            body: body.to_json(),
            metadata,
        },
    ))
}
