//! Torus fibres of a compact toric Kähler manifold near the fixed point
//! over the origin of its moment polytope.
//!
//! Near that vertex the manifold is equivariantly `C^n`, so the witness of
//! [`crate::cn_tori`] transplants as long as the isotopy stays inside
//! `Δ̃_{s0}`, i.e. when `‖a‖ < s0`. The volumes there depend on the unknown
//! positive profile `δ`; scaling `a ↦ c a` makes the comparison decidable
//! for small `c`, and [`c_threshold`] computes how small.

mod polytope;
mod volume;

pub use polytope::{DelzantPolytope, Facet};
pub use volume::{toric_orbit_sqvolume, Monomial, VolumeModel};

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::certificate::{Certificate, Verdict};
use crate::cn_tori::{witness, WitnessStep};
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rational::{RatVec, Rational};

/// Width of the bracket around an irrational sign change of `F`.
pub const ROOT_TOLERANCE_BITS: u32 = 40;

pub fn root_tolerance() -> Rational {
    Rational::new(BigInt::one(), BigInt::one() << ROOT_TOLERANCE_BITS)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ToricWitness {
    pub step: WitnessStep,
    #[serde(with = "crate::rational::string")]
    pub s0: Rational,
    /// `‖a‖ < s0`: the isotopy can be supported inside the chart.
    pub support_ok: bool,
}

impl ToricWitness {
    pub fn source(&self) -> &RatVec {
        &self.step.before
    }

    pub fn target(&self) -> &RatVec {
        &self.step.after
    }
}

pub fn s0(polytope: &DelzantPolytope) -> Rational {
    polytope.s0()
}

pub fn toric_witness(polytope: &DelzantPolytope, a: &RatVec) -> Result<ToricWitness> {
    polytope.require_interior(a)?;
    let step = witness(a)?;
    let s0 = polytope.s0();
    let support_ok = a.norm() < s0;
    if support_ok {
        // ‖a'‖ < ‖a‖ < s0 puts a' in Δ̃_{s0}, strictly inside Δ.
        assert!(step.after.norm() < s0);
        polytope
            .require_interior(&step.after)
            .expect("witness target inside the inscribed simplex");
    }
    Ok(ToricWitness {
        step,
        s0,
        support_ok,
    })
}

/// `F(c) = δ(c a) Π a_i Π l_r(c a) - δ(c a') Π a'_i Π l_r(c a')`, which is
/// `c^{-n}` times the squared-volume difference of the fibres over `c a`
/// and `c a'`.
pub fn threshold_polynomial(
    polytope: &DelzantPolytope,
    model: &VolumeModel,
    a: &RatVec,
    a_prime: &RatVec,
) -> Poly {
    let side = |v: &RatVec| -> Poly {
        let mut acc = model.delta_along(v).scale(&v.product());
        for f in polytope.facets() {
            // l_r(c v) = c ⟨v, μ_r⟩ - λ_r
            let l = Poly::linear(-f.offset.clone(), v.dot_int(&f.normal));
            acc = &acc * &l;
        }
        acc
    };
    &side(a) - &side(a_prime)
}

/// The largest `ĉ ∈ (0, 1]` with `F > 0` on `(0, ĉ)`.
///
/// Exact when the first root of `F` in `(0, 1)` is rational and hit by
/// bisection; otherwise the lower end of a bracket of width
/// `2^-ROOT_TOLERANCE_BITS`, so the returned value is never too large.
pub fn c_threshold(
    polytope: &DelzantPolytope,
    model: &VolumeModel,
    a: &RatVec,
    a_prime: &RatVec,
) -> Result<Rational> {
    polytope.require_interior(a)?;
    polytope.require_interior(a_prime)?;
    let (pa, pb) = (a.product(), a_prime.product());
    if pa <= pb {
        return Err(Error::ProductNotDecreasing {
            source_product: pa.to_string(),
            target_product: pb.to_string(),
        });
    }
    let f = threshold_polynomial(polytope, model, a, a_prime);
    debug_assert!(f.eval(&Rational::from_integer(0.into())).is_positive());
    let zero = Rational::from_integer(0.into());
    let root = f.smallest_root_in(&zero, &Rational::one(), &root_tolerance());
    Ok(match root {
        Some(r) => r.lower().clone(),
        None => Rational::one(),
    })
}

/// Witness, support check, threshold and volume drop at `a` in one
/// certificate. The verdict is `NotVolumeMinimizing` when the witness is
/// supported in the chart and the fibre over `a` itself loses volume; the
/// threshold is reported either way.
pub fn certify(
    polytope: &DelzantPolytope,
    model: &VolumeModel,
    a: &RatVec,
) -> Result<Certificate> {
    let tw = match toric_witness(polytope, a) {
        Ok(tw) => tw,
        Err(Error::NotApplicable(reason)) => {
            let mut cert = Certificate::unknown(reason);
            cert.s0 = Some(polytope.s0());
            return Ok(cert);
        }
        Err(e) => return Err(e),
    };
    if !tw.support_ok {
        let mut cert = Certificate::unknown(format!(
            "norm {} is not below s0 = {}",
            a.norm(),
            tw.s0
        ));
        cert.s0 = Some(tw.s0);
        return Ok(cert);
    }
    let threshold = c_threshold(polytope, model, tw.source(), tw.target())?;
    let drop = toric_orbit_sqvolume(polytope, model, tw.source())?
        - toric_orbit_sqvolume(polytope, model, tw.target())?;
    let certified = drop.is_positive();
    Ok(Certificate {
        verdict: if certified {
            Verdict::NotVolumeMinimizing
        } else {
            Verdict::Unknown
        },
        chart: Some(0),
        source: Some(tw.source().clone()),
        target: Some(tw.target().clone()),
        sqvol_drop: Some(drop),
        reason: (!certified).then(|| {
            format!("volume increases at c = 1; fibres over c a with c < {threshold} lose volume")
        }),
        details: Some(tw.step),
        s0: Some(tw.s0),
        c_threshold: Some(threshold),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cpn::{self, ChartPoint};
    use crate::rational::{int, rat};
    use num_traits::Zero;

    fn v(xs: &[(i64, i64)]) -> RatVec {
        RatVec::from_fractions(xs).unwrap()
    }

    #[test]
    fn witness_examples() {
        let a = v(&[(1, 10), (1, 5), (2, 5)]);
        assert_eq!(a.norm(), rat(4, 5));
        let tw = toric_witness(&DelzantPolytope::simplex(3), &a).unwrap();
        assert!(tw.support_ok);
        assert_eq!(tw.target(), &v(&[(1, 10), (1, 5), (3, 10)]));
        let tw = toric_witness(&DelzantPolytope::cube(3), &a).unwrap();
        assert!(tw.support_ok);
        assert_eq!(tw.s0, int(1));

        let far = v(&[(1, 10), (1, 5), (1, 2)]);
        let tw = toric_witness(&DelzantPolytope::cube(3), &far).unwrap();
        assert_eq!(far.norm(), int(9) / int(10));
        assert!(tw.support_ok);
        let far = v(&[(1, 5), (3, 10), (1, 2)]);
        let tw = toric_witness(&DelzantPolytope::cube(3), &far).unwrap();
        assert!(!tw.support_ok);
        let cert = certify(&DelzantPolytope::cube(3), &VolumeModel::default(), &far).unwrap();
        assert_eq!(cert.verdict, Verdict::Unknown);
        assert_eq!(cert.c_threshold, None);

        assert!(matches!(
            toric_witness(&DelzantPolytope::cube(3), &v(&[(1, 10), (1, 10), (1, 5)])),
            Err(Error::NotApplicable(_))
        ));
        assert!(matches!(
            toric_witness(&DelzantPolytope::simplex(3), &v(&[(1, 2), (1, 5), (2, 5)])),
            Err(Error::OutsideInterior(_))
        ));
    }

    #[test]
    fn f_at_zero() {
        let p = DelzantPolytope::new(
            3,
            vec![
                Facet::new(vec![-1, -1, -1], int(-2)),
                Facet::new(vec![0, 0, -1], rat(-1, 2)),
            ],
        )
        .unwrap();
        let model = VolumeModel::constant(rat(3, 2)).unwrap();
        let a = v(&[(1, 10), (1, 5), (2, 5)]);
        let b = witness(&a).unwrap().after;
        let f = threshold_polynomial(&p, &model, &a, &b);
        let expected = rat(3, 2) * int(2) * rat(1, 2) * (a.product() - b.product());
        assert_eq!(f.eval(&Rational::zero()), expected);
    }

    #[test]
    fn simplex_threshold_is_one() {
        let p = DelzantPolytope::simplex(3);
        let a = v(&[(1, 10), (1, 5), (2, 5)]);
        assert!(a.conorm() > int(1));
        let b = v(&[(1, 10), (1, 5), (3, 10)]);
        assert!(b.conorm() <= int(1));
        let target = witness(&b).unwrap().after;
        let model = VolumeModel::default();
        assert_eq!(c_threshold(&p, &model, &b, &target).unwrap(), int(1));
        let cert = certify(&p, &model, &b).unwrap();
        let cp = cpn::certify(&ChartPoint::new(0, b).unwrap()).unwrap();
        assert_eq!(cert.verdict, Verdict::NotVolumeMinimizing);
        assert_eq!(cert.sqvol_drop, cp.sqvol_drop);
    }

    #[test]
    fn cube_threshold_matches_dense_scan() {
        let cube = DelzantPolytope::cube(3);
        let model = VolumeModel::default();
        let a = v(&[(1, 10), (1, 5), (2, 5)]);
        let b = v(&[(1, 10), (1, 5), (3, 10)]);
        let c = c_threshold(&cube, &model, &a, &b).unwrap();
        let f = threshold_polynomial(&cube, &model, &a, &b);
        assert_eq!(c, int(1));
        for k in 1..=1000 {
            assert!(f.eval(&rat(k, 1000)).is_positive());
        }
    }

    #[test]
    fn cube_threshold_below_one() {
        // F factors as R(c) (a_j - a'_j)(1 - c (a_j + a'_j)) on the cube,
        // so the first sign change is at c = 1 / (a_j + a'_j) = 100/179.
        let cube = DelzantPolytope::cube(3);
        let model = VolumeModel::default();
        let a = v(&[(1, 100), (1, 50), (9, 10)]);
        let tw = toric_witness(&cube, &a).unwrap();
        assert!(tw.support_ok);
        assert_eq!(tw.target(), &v(&[(1, 100), (1, 50), (89, 100)]));
        let c = c_threshold(&cube, &model, tw.source(), tw.target()).unwrap();
        assert!(c <= rat(100, 179));
        assert!(rat(100, 179) - &c <= root_tolerance());
        let f = threshold_polynomial(&cube, &model, tw.source(), tw.target());
        assert!(f.eval(&(rat(100, 179) + rat(1, 1000))).is_negative());

        let cert = certify(&cube, &model, &a).unwrap();
        assert_eq!(cert.verdict, Verdict::Unknown);
        assert_eq!(cert.c_threshold, Some(c));
        assert!(cert.sqvol_drop.unwrap().is_negative());
    }

    #[test]
    fn threshold_rejects_non_decreasing() {
        let cube = DelzantPolytope::cube(3);
        let a = v(&[(1, 10), (1, 5), (2, 5)]);
        let b = v(&[(1, 10), (1, 5), (3, 10)]);
        assert!(matches!(
            c_threshold(&cube, &VolumeModel::default(), &b, &a),
            Err(Error::ProductNotDecreasing { .. })
        ));
    }
}
