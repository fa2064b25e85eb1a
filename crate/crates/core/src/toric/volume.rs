use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::polytope::DelzantPolytope;
use crate::density::uniform_simplex;
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rational::{dyadic_round, RatVec, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Monomial {
    #[serde(with = "crate::rational::string")]
    pub coeff: Rational,
    pub exponents: Vec<u32>,
}

impl Monomial {
    fn degree(&self) -> u32 {
        self.exponents.iter().sum()
    }

    fn eval(&self, a: &RatVec) -> Rational {
        self.exponents
            .iter()
            .zip(a.iter())
            .fold(self.coeff.clone(), |acc, (&e, x)| acc * x.pow(e as i32))
    }
}

/// The positive factor `δ` in `Vol(μ⁻¹(a))² = (2π)^{2n} δ(a) Π a_i Π l_r(a)`.
///
/// Only `δ(0)` is known in general; a polynomial profile may be supplied
/// for experiments, and its positivity on the polytope is the caller's
/// responsibility ([`VolumeModel::check_positive`] spot-checks it).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VolumeModel {
    #[serde(with = "crate::rational::string")]
    delta0: Rational,
    profile: Option<Vec<Monomial>>,
}

impl Default for VolumeModel {
    fn default() -> Self {
        VolumeModel {
            delta0: Rational::one(),
            profile: None,
        }
    }
}

impl VolumeModel {
    pub fn constant(delta0: Rational) -> Result<Self> {
        if !delta0.is_positive() {
            return Err(Error::NonPositiveEntry {
                index: 0,
                value: delta0.to_string(),
            });
        }
        Ok(VolumeModel {
            delta0,
            profile: None,
        })
    }

    /// A polynomial `δ`; `delta0` is its constant term and must be positive.
    pub fn polynomial(terms: Vec<Monomial>, dim: usize) -> Result<Self> {
        if let Some(t) = terms.iter().find(|t| t.exponents.len() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: t.exponents.len(),
            });
        }
        let delta0 = terms
            .iter()
            .filter(|t| t.degree() == 0)
            .fold(Rational::zero(), |acc, t| acc + &t.coeff);
        let mut model = VolumeModel::constant(delta0)?;
        model.profile = Some(terms);
        Ok(model)
    }

    pub fn delta0(&self) -> &Rational {
        &self.delta0
    }

    pub fn is_constant(&self) -> bool {
        self.profile.is_none()
    }

    pub fn delta(&self, a: &RatVec) -> Rational {
        match &self.profile {
            None => self.delta0.clone(),
            Some(terms) => terms
                .iter()
                .fold(Rational::zero(), |acc, t| acc + t.eval(a)),
        }
    }

    /// `c ↦ δ(c a)` as a polynomial in `c`.
    pub fn delta_along(&self, a: &RatVec) -> Poly {
        match &self.profile {
            None => Poly::constant(self.delta0.clone()),
            Some(terms) => {
                let mut coeffs = Vec::new();
                for t in terms {
                    let d = t.degree() as usize;
                    if coeffs.len() <= d {
                        coeffs.resize(d + 1, Rational::zero());
                    }
                    coeffs[d] += t.eval(a);
                }
                Poly::new(coeffs)
            }
        }
    }

    /// Samples `samples` points of `Δ̃_{s0}` (the region where the threshold
    /// computation evaluates `δ`) and checks `δ > 0` there.
    pub fn check_positive(&self, polytope: &DelzantPolytope, samples: usize, seed: u64) -> Result<()> {
        if self.is_constant() {
            return Ok(());
        }
        let s0 = polytope.s0();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..samples {
            let coords = uniform_simplex(&mut rng, polytope.dim())
                .into_iter()
                .map(|x| dyadic_round(x, 30) * &s0)
                .collect();
            let a = RatVec::new(coords)?;
            let value = self.delta(&a);
            if !value.is_positive() {
                return Err(Error::NotApplicable(format!(
                    "volume profile is {value} at {a}, must be positive"
                )));
            }
        }
        Ok(())
    }
}

/// `δ(a) Π a_i Π l_r(a)`, the coefficient of `(2π)^{2n}` in the squared
/// volume of the fibre over `a`.
pub fn toric_orbit_sqvolume(
    polytope: &DelzantPolytope,
    model: &VolumeModel,
    a: &RatVec,
) -> Result<Rational> {
    polytope.require_interior(a)?;
    let facets = polytope
        .facet_values(a)
        .into_iter()
        .fold(Rational::one(), |acc, l| acc * l);
    Ok(model.delta(a) * a.product() * facets)
}
