//! Product tori in `C^n`: unit bookkeeping between areas and moment values,
//! exact squared volumes, and the volume-reducing witness within a Chekanov
//! class.
//!
//! A product torus `T(b)` with circle areas `b_i` is the fibre
//! `μ₀⁻¹(b / 2π)` of the standard moment map. The `2π` factors are tracked
//! as tags and never evaluated, so every comparison stays exact.

use serde::{Deserialize, Serialize};

use crate::chekanov::{invariants, ChekanovInvariants};
use crate::error::{Error, Result};
use crate::rational::{int, RatVec, Rational};

/// How the coefficients of an area vector relate to the actual areas.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AreaUnit {
    /// `b_i = 2π · coeff_i`.
    TwoPi,
    /// `b_i = coeff_i`.
    Plain,
}

/// How the coefficients of a moment vector relate to the moment values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MomentUnit {
    /// `a_i = coeff_i`.
    Moment,
    /// `a_i = coeff_i / 2π`.
    AreaOver2Pi,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AreaVec {
    pub coeffs: RatVec,
    pub unit: AreaUnit,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MomentVec {
    pub coeffs: RatVec,
    pub unit: MomentUnit,
}

pub fn areas_to_moment(b: &AreaVec) -> Result<MomentVec> {
    b.coeffs.require_positive()?;
    let unit = match b.unit {
        AreaUnit::TwoPi => MomentUnit::Moment,
        AreaUnit::Plain => MomentUnit::AreaOver2Pi,
    };
    Ok(MomentVec {
        coeffs: b.coeffs.clone(),
        unit,
    })
}

pub fn moment_to_areas(a: &MomentVec) -> Result<AreaVec> {
    a.coeffs.require_positive()?;
    let unit = match a.unit {
        MomentUnit::Moment => AreaUnit::TwoPi,
        MomentUnit::AreaOver2Pi => AreaUnit::Plain,
    };
    Ok(AreaVec {
        coeffs: a.coeffs.clone(),
        unit,
    })
}

/// A squared volume `coeff · (2π)^two_pi_power`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SqVolume {
    #[serde(with = "crate::rational::string")]
    pub coeff: Rational,
    pub two_pi_power: u32,
}

impl SqVolume {
    /// Compares two squared volumes carrying the same `2π` power.
    pub fn partial_cmp_same_unit(&self, other: &SqVolume) -> Option<std::cmp::Ordering> {
        (self.two_pi_power == other.two_pi_power).then(|| self.coeff.cmp(&other.coeff))
    }
}

/// Squared volume of `μ₀⁻¹(a)`, a product of circles of radii `√(2a_i)`:
/// `Vol² = (2π)^{2n} · 2^n · Π a_i`.
pub fn product_torus_sqvolume(a: &RatVec) -> Result<SqVolume> {
    a.require_positive()?;
    let n = a.len() as u32;
    Ok(SqVolume {
        coeff: int(2).pow(n as i32) * a.product(),
        two_pi_power: 2 * n,
    })
}

/// Same as [`product_torus_sqvolume`] with the moment unit folded into the
/// `2π` power: `a_i = c_i / 2π` lowers it by `n`.
pub fn moment_sqvolume(a: &MomentVec) -> Result<SqVolume> {
    let mut vol = product_torus_sqvolume(&a.coeffs)?;
    if a.unit == MomentUnit::AreaOver2Pi {
        vol.two_pi_power -= a.coeffs.len() as u32;
    }
    Ok(vol)
}

/// One application of the volume-reducing move inside a Chekanov class:
/// `a_j` is replaced by `a_j - a_i + min a` where `min a < a_i < a_j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "WitnessStepJson", try_from = "WitnessStepJson")]
pub struct WitnessStep {
    pub index_i: usize,
    pub index_j: usize,
    pub before: RatVec,
    pub after: RatVec,
}

impl WitnessStep {
    pub fn product_before(&self) -> Rational {
        self.before.product()
    }

    pub fn product_after(&self) -> Rational {
        self.after.product()
    }
}

#[derive(Serialize, Deserialize)]
struct WitnessStepJson {
    i: usize,
    j: usize,
    before: RatVec,
    after: RatVec,
    #[serde(with = "crate::rational::string")]
    product_before: Rational,
    #[serde(with = "crate::rational::string")]
    product_after: Rational,
}

impl From<WitnessStep> for WitnessStepJson {
    fn from(step: WitnessStep) -> Self {
        WitnessStepJson {
            i: step.index_i,
            j: step.index_j,
            product_before: step.product_before(),
            product_after: step.product_after(),
            before: step.before,
            after: step.after,
        }
    }
}

impl TryFrom<WitnessStepJson> for WitnessStep {
    type Error = Error;

    fn try_from(json: WitnessStepJson) -> Result<Self> {
        let step = WitnessStep {
            index_i: json.i,
            index_j: json.j,
            before: json.before,
            after: json.after,
        };
        if step.after.len() != step.before.len()
            || step.index_i >= step.before.len()
            || step.index_j >= step.before.len()
        {
            return Err(Error::Parse("witness indices out of range".into()));
        }
        if step.product_before() != json.product_before
            || step.product_after() != json.product_after
        {
            return Err(Error::Parse("witness products do not match vectors".into()));
        }
        Ok(step)
    }
}

/// Picks `i` at the second-smallest distinct value and `j` at the maximum
/// (lowest index on ties) and applies the move.
pub fn witness(a: &RatVec) -> Result<WitnessStep> {
    let inv = invariants(a)?;
    witness_with(a, &inv)
}

fn witness_with(a: &RatVec, inv: &ChekanovInvariants) -> Result<WitnessStep> {
    if inv.n_distinct < 3 {
        return Err(Error::NotApplicable(format!(
            "need at least 3 distinct entries, found {}",
            inv.n_distinct
        )));
    }
    let min = &inv.min_val;
    let second = a
        .iter()
        .filter(|v| *v > min)
        .min()
        .expect("n_distinct >= 3");
    let index_i = a.iter().position(|v| v == second).expect("present");
    let max = a.max();
    let index_j = a.iter().position(|v| v == max).expect("present");
    let after = a.with_entry(index_j, &a[index_j] - &a[index_i] + min);
    Ok(WitnessStep {
        index_i,
        index_j,
        before: a.clone(),
        after,
    })
}

/// Applies [`witness`] until fewer than three distinct entries remain.
///
/// Each step lowers `Σ (a_k - min a) / gamma_gen` by at least one, so the
/// loop runs at most that many times.
pub fn greedy_reduce(a: &RatVec) -> Result<Vec<WitnessStep>> {
    let mut current = a.clone();
    let mut steps = Vec::new();
    loop {
        let inv = invariants(&current)?;
        if inv.n_distinct < 3 {
            return Ok(steps);
        }
        let step = witness_with(&current, &inv)?;
        current = step.after.clone();
        steps.push(step);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chekanov::isotopy_equivalent;
    use crate::rational::rat;
    use num_traits::ToPrimitive;

    fn v(xs: &[i64]) -> RatVec {
        RatVec::from_ints(xs).unwrap()
    }

    #[test]
    fn area_moment_units() {
        let b = AreaVec {
            coeffs: v(&[1, 2]),
            unit: AreaUnit::TwoPi,
        };
        let a = areas_to_moment(&b).unwrap();
        assert_eq!(a.coeffs, v(&[1, 2]));
        assert_eq!(a.unit, MomentUnit::Moment);

        let b = AreaVec {
            coeffs: v(&[1, 2, 3]),
            unit: AreaUnit::Plain,
        };
        let a = areas_to_moment(&b).unwrap();
        assert_eq!(a.coeffs, v(&[1, 2, 3]));
        assert_eq!(a.unit, MomentUnit::AreaOver2Pi);
        assert_eq!(areas_to_moment(&moment_to_areas(&a).unwrap()).unwrap(), a);

        let bad = AreaVec {
            coeffs: v(&[1, -2]),
            unit: AreaUnit::Plain,
        };
        assert!(matches!(areas_to_moment(&bad), Err(Error::NonPositiveEntry { .. })));
    }

    #[test]
    fn unit_circle_volume_matches_arclength() {
        let vol = product_torus_sqvolume(&RatVec::from_fractions(&[(1, 2)]).unwrap()).unwrap();
        assert_eq!(vol.coeff, int(1));
        assert_eq!(vol.two_pi_power, 2);

        // Arclength of the circle of radius sqrt(2 * 1/2) by the midpoint rule.
        let radius = 1.0f64;
        let steps = 100_000;
        let h = std::f64::consts::TAU / steps as f64;
        let length: f64 = (0..steps)
            .map(|k| {
                let t = (k as f64 + 0.5) * h;
                let (dx, dy) = (-radius * t.sin(), radius * t.cos());
                (dx * dx + dy * dy).sqrt() * h
            })
            .sum();
        let from_coeff = vol.coeff.to_f64().unwrap().sqrt() * std::f64::consts::TAU;
        assert!((length - from_coeff).abs() < 1e-9);
    }

    #[test]
    fn sqvolume_examples() {
        let a = product_torus_sqvolume(&v(&[1, 1])).unwrap();
        assert_eq!(a, product_torus_sqvolume(&v(&[1, 1])).unwrap());
        let big = product_torus_sqvolume(&v(&[1, 2, 2, 4])).unwrap();
        let small = product_torus_sqvolume(&v(&[1, 2, 2, 3])).unwrap();
        assert_eq!(big.coeff, int(256));
        assert_eq!(small.coeff, int(192));
        assert_eq!(
            big.partial_cmp_same_unit(&small),
            Some(std::cmp::Ordering::Greater)
        );

        let per_2pi = moment_sqvolume(&MomentVec {
            coeffs: v(&[1, 2]),
            unit: MomentUnit::AreaOver2Pi,
        })
        .unwrap();
        assert_eq!(per_2pi.two_pi_power, 2);
    }

    #[test]
    fn witness_examples() {
        let step = witness(&v(&[1, 2, 2, 4])).unwrap();
        assert_eq!(step.after, v(&[1, 2, 2, 3]));
        assert_eq!((step.index_i, step.index_j), (1, 3));
        assert!(isotopy_equivalent(&step.before, &step.after).unwrap());

        let step = witness(&v(&[1, 2, 3])).unwrap();
        assert_eq!(step.after, v(&[1, 2, 2]));

        assert!(matches!(witness(&v(&[1, 1, 2])), Err(Error::NotApplicable(_))));
    }

    #[test]
    fn witness_tie_breaking() {
        let step = witness(&v(&[5, 2, 1, 2, 5])).unwrap();
        assert_eq!((step.index_i, step.index_j), (1, 0));
        assert_eq!(step.after, v(&[4, 2, 1, 2, 5]));
    }

    #[test]
    fn greedy_examples() {
        let steps = greedy_reduce(&v(&[1, 2, 2, 4])).unwrap();
        let afters: Vec<_> = steps.iter().map(|s| s.after.clone()).collect();
        assert_eq!(afters, vec![v(&[1, 2, 2, 3]), v(&[1, 2, 2, 2])]);
        assert!(greedy_reduce(&v(&[1, 1, 1])).unwrap().is_empty());
    }

    #[test]
    fn witness_json_shape() {
        let step = witness(&RatVec::from_fractions(&[(1, 2), (1, 1), (3, 2)]).unwrap()).unwrap();
        let json = serde_json::to_string(&step).unwrap();
        assert_eq!(
            json,
            r#"{"i":1,"j":2,"before":["1/2","1","3/2"],"after":["1/2","1","1"],"product_before":"3/4","product_after":"1/2"}"#
        );
        let back: WitnessStep = serde_json::from_str(&json).unwrap();
        assert_eq!(back, step);
        let tampered = json.replace(r#""product_after":"1/2""#, r#""product_after":"1""#);
        assert!(serde_json::from_str::<WitnessStep>(&tampered).is_err());
        assert_eq!(step.product_after(), rat(1, 2));
    }
}
