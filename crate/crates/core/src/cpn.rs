//! Torus orbits of `CP^n` in the `e_i`-action charts.
//!
//! The moment polytope is the standard simplex `Δ`. Chart `0` uses the
//! coordinates `u_0 = μ` directly; chart `i >= 1` replaces the `i`-th
//! coordinate by `1 - Σ_j u_0^j` and keeps the others. Each chart identifies
//! its affine piece with the ball `μ₀⁻¹(Δ̃_1) ⊂ C^n`, so the product torus
//! machinery of [`crate::cn_tori`] applies inside any chart whose
//! coordinates satisfy `|‖u_i‖| <= 1`.
//!
//! Volumes are reported as the coefficient of the positive normalisation
//! constant `C` in `Vol² = C (1 - Σ u) Π u`.

use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::certificate::{Certificate, Verdict};
use crate::cn_tori::witness;
use crate::error::{Error, Result};
use crate::rational::{RatVec, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChartPoint {
    pub chart: usize,
    pub coords: RatVec,
}

fn check_interior(coords: &RatVec) -> Result<()> {
    if let Some(k) = coords.iter().position(|u| !u.is_positive()) {
        return Err(Error::OutsideInterior(format!(
            "coordinate {k} is {} (must be > 0)",
            coords[k]
        )));
    }
    let total = coords.total();
    if total >= Rational::one() {
        return Err(Error::OutsideInterior(format!(
            "coordinates sum to {total} (must be < 1)"
        )));
    }
    Ok(())
}

/// Replaces coordinate `chart - 1` by `1 - Σ u`; the identity for chart 0.
fn flip(coords: &RatVec, chart: usize) -> RatVec {
    if chart == 0 {
        coords.clone()
    } else {
        coords.with_entry(chart - 1, Rational::one() - coords.total())
    }
}

impl ChartPoint {
    pub fn new(chart: usize, coords: RatVec) -> Result<Self> {
        let p = ChartPoint { chart, coords };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if self.chart > self.dim() {
            return Err(Error::OutsideInterior(format!(
                "chart {} out of range 0..={}",
                self.chart,
                self.dim()
            )));
        }
        check_interior(&self.coords)
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    /// The barycentre of `Δ` in chart 0.
    pub fn barycentre(n: usize) -> Result<Self> {
        let c = Rational::new(1.into(), (n as i64 + 1).into());
        ChartPoint::new(0, RatVec::new(vec![c; n])?)
    }

    /// Coordinates in chart 0, i.e. the moment map value.
    pub fn to_hub(&self) -> RatVec {
        flip(&self.coords, self.chart)
    }
}

pub fn chart_transform(p: &ChartPoint, target_chart: usize) -> Result<ChartPoint> {
    p.validate()?;
    if target_chart > p.dim() {
        return Err(Error::OutsideInterior(format!(
            "target chart {target_chart} out of range 0..={}",
            p.dim()
        )));
    }
    if target_chart == p.chart {
        return Ok(p.clone());
    }
    let coords = flip(&p.to_hub(), target_chart);
    debug_assert!(check_interior(&coords).is_ok());
    Ok(ChartPoint {
        chart: target_chart,
        coords,
    })
}

/// A chart in which `|‖u_i‖| <= 1`: chart 0 if it already qualifies,
/// otherwise the chart of the largest `u_0` coordinate.
pub fn find_good_chart(p: &ChartPoint) -> Result<ChartPoint> {
    let hub = chart_transform(p, 0)?;
    if hub.coords.conorm() <= Rational::one() {
        return Ok(hub);
    }
    let max = hub.coords.max();
    let i = hub.coords.iter().position(|u| u == max).expect("non-empty");
    chart_transform(&hub, i + 1)
}

/// `(1 - Σ u) Π u`, the coefficient of `C` in the squared orbit volume.
pub fn orbit_sqvolume(p: &ChartPoint) -> Result<Rational> {
    p.validate()?;
    Ok(sqvolume_coeff(&p.coords))
}

fn sqvolume_coeff(coords: &RatVec) -> Rational {
    (Rational::one() - coords.total()) * coords.product()
}

/// The factored squared-volume drop for the move `u_b ↦ u_b - u_a + min u`:
/// `(Π u / u_b)(u_a - min u)(1 - Σ u - u_b + u_a - min u)`.
pub fn closed_form_drop(coords: &RatVec, a: usize, b: usize) -> Rational {
    let min = coords.min();
    let gap = &coords[a] - min;
    let slack = Rational::one() - coords.total() - &coords[b] + &gap;
    coords.product() / &coords[b] * gap * slack
}

/// Scans every chart for one with `|‖u‖| <= 1` and at least three distinct
/// coordinates, applies the witness there and keeps the largest drop
/// (lowest chart on ties).
pub fn certify(p: &ChartPoint) -> Result<Certificate> {
    p.validate()?;
    let hub = p.to_hub();
    let one = Rational::one();
    let slack = &one - hub.total();
    let mut best: Option<(usize, RatVec, Rational, crate::cn_tori::WitnessStep)> = None;
    for chart in 0..=p.dim() {
        // |u_i| = 1 - u_0^i, so the conorm test needs no new vector.
        let (total, replaced) = if chart == 0 {
            (&one - &slack, None)
        } else {
            (&one - &hub[chart - 1], Some(chart - 1))
        };
        let max = hub
            .iter()
            .enumerate()
            .filter(|&(k, _)| Some(k) != replaced)
            .map(|(_, u)| u)
            .chain(replaced.map(|_| &slack))
            .max()
            .expect("n >= 1");
        if total + max > one {
            continue;
        }
        let coords = flip(&hub, chart);
        if coords.n_distinct() < 3 {
            continue;
        }
        let step = witness(&coords)?;
        let drop = sqvolume_coeff(&coords) - sqvolume_coeff(&step.after);
        if best.as_ref().is_none_or(|(_, _, d, _)| drop > *d) {
            best = Some((chart, coords, drop, step));
        }
    }
    let Some((chart, source, drop, step)) = best else {
        return Ok(Certificate::unknown(
            "no chart has conorm <= 1 and at least 3 distinct coordinates",
        ));
    };
    debug_assert!(drop.is_positive());
    Ok(Certificate {
        verdict: Verdict::NotVolumeMinimizing,
        chart: Some(chart),
        target: Some(step.after.clone()),
        source: Some(source),
        sqvol_drop: Some(drop),
        details: Some(step),
        s0: None,
        c_threshold: None,
        reason: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn point(chart: usize, xs: &[(i64, i64)]) -> ChartPoint {
        ChartPoint::new(chart, RatVec::from_fractions(xs).unwrap()).unwrap()
    }

    #[test]
    fn transform_example() {
        let p = point(0, &[(1, 2), (3, 10), (1, 10)]);
        let q = chart_transform(&p, 1).unwrap();
        assert_eq!(q, point(1, &[(1, 10), (3, 10), (1, 10)]));
        assert_eq!(chart_transform(&p, 0).unwrap(), p);
        for k in 0..=3 {
            let there = chart_transform(&p, k).unwrap();
            assert_eq!(chart_transform(&there, p.chart).unwrap(), p);
            let via = chart_transform(&q, k).unwrap();
            assert_eq!(via, there);
        }
    }

    #[test]
    fn good_chart_examples() {
        let p = point(0, &[(1, 2), (3, 10), (1, 10)]);
        assert_eq!(p.coords.conorm(), rat(7, 5));
        let g = find_good_chart(&p).unwrap();
        assert_eq!(g, point(1, &[(1, 10), (3, 10), (1, 10)]));
        assert_eq!(g.coords.conorm(), rat(4, 5));

        for n in 1..6 {
            let b = ChartPoint::barycentre(n).unwrap();
            let g = find_good_chart(&b).unwrap();
            assert_eq!(g.chart, 0);
            assert_eq!(g.coords.conorm(), Rational::one());
        }
    }

    #[test]
    fn volume_examples() {
        let p = point(0, &[(1, 5), (3, 10), (1, 10)]);
        assert_eq!(orbit_sqvolume(&p).unwrap(), rat(3, 1250));
        let q = point(1, &[(2, 5), (3, 10), (1, 10)]);
        assert_eq!(chart_transform(&p, 1).unwrap(), q);
        assert_eq!(orbit_sqvolume(&q).unwrap(), rat(3, 1250));
        let b = ChartPoint::barycentre(2).unwrap();
        assert_eq!(orbit_sqvolume(&b).unwrap(), rat(1, 27));
    }

    #[test]
    fn certify_example() {
        let p = point(0, &[(1, 10), (1, 5), (2, 5)]);
        assert_eq!(p.coords.conorm(), rat(11, 10));
        let cert = certify(&p).unwrap();
        assert_eq!(cert.verdict, Verdict::NotVolumeMinimizing);
        assert_eq!(cert.chart, Some(3));
        let source = cert.source.clone().unwrap();
        assert_eq!(source, RatVec::from_fractions(&[(1, 10), (1, 5), (3, 10)]).unwrap());
        assert_eq!(source.conorm(), rat(9, 10));
        assert_eq!(
            cert.target.clone().unwrap(),
            RatVec::from_fractions(&[(1, 10), (1, 5), (1, 5)]).unwrap()
        );
        assert_eq!(cert.sqvol_drop.clone().unwrap(), rat(1, 2500));
        let step = cert.details.unwrap();
        assert_eq!(
            closed_form_drop(&source, step.index_i, step.index_j),
            rat(1, 2500)
        );
    }

    #[test]
    fn certify_unknown_cases() {
        for n in 1..=6 {
            let b = ChartPoint::barycentre(n).unwrap();
            assert_eq!(certify(&b).unwrap().verdict, Verdict::Unknown);
        }
        // Two distinct values in chart 0; every other chart either fails
        // the conorm bound or has at most two distinct values.
        let p = point(0, &[(1, 5), (1, 5), (1, 10)]);
        let cert = certify(&p).unwrap();
        assert_eq!(cert.verdict, Verdict::Unknown);
    }

    #[test]
    fn boundary_points_rejected() {
        let zero = ChartPoint {
            chart: 0,
            coords: RatVec::from_fractions(&[(0, 1), (1, 2)]).unwrap(),
        };
        assert!(matches!(orbit_sqvolume(&zero), Err(Error::OutsideInterior(_))));
        let full = RatVec::from_fractions(&[(1, 2), (1, 2)]).unwrap();
        assert!(matches!(ChartPoint::new(0, full), Err(Error::OutsideInterior(_))));
        let p = point(0, &[(1, 4), (1, 4)]);
        assert!(chart_transform(&p, 3).is_err());
        assert!(ChartPoint::new(4, p.coords.clone()).is_err());
    }
}
