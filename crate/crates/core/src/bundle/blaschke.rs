//! Closed form for the Blaschke sum of bodies of two nef divisors.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polytope::AnyPolytope;
use crate::scalar::Number;

use super::body::no_body_divisor;
use super::{DivisorClass, HnData};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ClosedFormBlaschke {
    pub t3: Number,
    /// Scale of the result: it is the body of `b(χ - t3 f)`.
    pub b: Number,
    pub divisor: DivisorClass,
}

/// Blaschke sum of the bodies of `χ - t1 f` and `a(χ - t2 f)`.
pub fn blaschke_closed_form(
    x: &HnData,
    a: &Number,
    t1: &Number,
    t2: &Number,
) -> Result<(ClosedFormBlaschke, AnyPolytope)> {
    if a.signum() != std::cmp::Ordering::Greater {
        return Err(Error::InvalidInput("scale a must be positive".into()));
    }
    let r = x.rank();
    let sigma_r = x.sigma_num(r);
    for t in [t1, t2] {
        if *t > sigma_r {
            return Err(Error::NotNef {
                t: t.to_f64(),
                sigma_r: sigma_r.to_f64(),
            });
        }
    }
    let e = (r - 1) as u32;
    let w = a.powi(e);
    let one = Number::from_int(1);
    let t3 = (t1.clone() + w.clone() * t2.clone()) / (one.clone() + w.clone());
    let b = (one + w).nth_root(e);
    let divisor = DivisorClass::from_a_t(b.clone(), t3.clone());
    let body = no_body_divisor(x, &divisor, None)?;
    Ok((ClosedFormBlaschke { t3, b, divisor }, body))
}
