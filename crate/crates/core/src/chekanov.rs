//! Chekanov's invariants of product tori `T(2πa) ⊂ C^n` and the relation
//! `a ≃ a'` that classifies them up to Hamiltonian isotopy.
//!
//! The invariants are `(min a, m(a), Γ(a))` where `Γ(a)` is the subgroup of
//! the reals spanned over the integers by the differences `a_i - min a`.
//! Only rational input is accepted: there `Γ(a) = gℤ` for a single
//! generator `g >= 0`, so equality of subgroups reduces to equality of
//! generators. For irrational data the group need not be cyclic and the
//! relation is not decided here.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::rational::{rational_gcd, RatVec, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChekanovInvariants {
    #[serde(with = "crate::rational::string")]
    pub min_val: Rational,
    pub multiplicity: usize,
    /// Non-negative generator of `Γ(a)`.
    #[serde(with = "crate::rational::string")]
    pub gamma_gen: Rational,
    pub n_distinct: usize,
    #[serde(with = "crate::rational::string")]
    pub total: Rational,
    #[serde(with = "crate::rational::string")]
    pub norm: Rational,
    #[serde(with = "crate::rational::string")]
    pub conorm: Rational,
}

impl ChekanovInvariants {
    /// The classifying triple `(min, multiplicity, gamma_gen)`.
    pub fn key(&self) -> (&Rational, usize, &Rational) {
        (&self.min_val, self.multiplicity, &self.gamma_gen)
    }
}

pub fn invariants(a: &RatVec) -> Result<ChekanovInvariants> {
    a.require_positive()?;
    let min_val = a.min().clone();
    let max_val = a.max();
    let multiplicity = a.iter().filter(|v| **v == min_val).count();
    let diffs: Vec<Rational> = a.iter().map(|v| v - &min_val).collect();
    let gamma_gen = rational_gcd(&diffs);
    let total = a.total();
    Ok(ChekanovInvariants {
        norm: &total + &min_val,
        conorm: &total + max_val,
        n_distinct: a.n_distinct(),
        min_val,
        multiplicity,
        gamma_gen,
        total,
    })
}

/// Whether `T(2πa)` and `T(2πb)` are Hamiltonian isotopic.
pub fn isotopy_equivalent(a: &RatVec, b: &RatVec) -> Result<bool> {
    b.require_len(a.len())?;
    let ia = invariants(a)?;
    let ib = invariants(b)?;
    Ok(ia.key() == ib.key())
}

/// Whether `value` lies in `Γ = gℤ`.
pub fn in_gamma(gamma_gen: &Rational, value: &Rational) -> bool {
    if gamma_gen.is_zero() {
        value.is_zero()
    } else {
        (value / gamma_gen).is_integer()
    }
}
