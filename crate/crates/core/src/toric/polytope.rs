use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lp::find_nonnegative_solution;
use crate::rational::{int, RatVec, Rational};

/// One facet inequality `l(a) = ⟨a, normal⟩ - offset >= 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Facet {
    #[serde(rename = "mu")]
    pub normal: Vec<i64>,
    #[serde(rename = "lambda", with = "crate::rational::string")]
    pub offset: Rational,
}

impl Facet {
    pub fn new(normal: Vec<i64>, offset: Rational) -> Self {
        Facet { normal, offset }
    }

    pub fn eval(&self, a: &RatVec) -> Rational {
        a.dot_int(&self.normal) - &self.offset
    }
}

/// A moment polytope in normalized position: the coordinate half-spaces
/// `a_i >= 0` are implicit and every listed facet has `offset < 0`, so the
/// origin is a vertex and `l_r(0) > 0`.
///
/// Construction checks primitivity of normals, the sign of offsets and
/// boundedness. Smoothness at the vertices is not checked.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "PolytopeJson")]
pub struct DelzantPolytope {
    dim: usize,
    facets: Vec<Facet>,
}

#[derive(Deserialize)]
struct PolytopeJson {
    dim: usize,
    facets: Vec<Facet>,
}

impl TryFrom<PolytopeJson> for DelzantPolytope {
    type Error = Error;

    fn try_from(json: PolytopeJson) -> Result<Self> {
        DelzantPolytope::new(json.dim, json.facets)
    }
}

impl DelzantPolytope {
    pub fn new(dim: usize, facets: Vec<Facet>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidPolytope("dimension must be positive".into()));
        }
        for (r, f) in facets.iter().enumerate() {
            if f.normal.len() != dim {
                return Err(Error::InvalidPolytope(format!(
                    "facet {r}: normal has length {}, expected {dim}",
                    f.normal.len()
                )));
            }
            let g = f.normal.iter().fold(0i64, |g, &m| g.gcd(&m));
            if g != 1 {
                return Err(Error::InvalidPolytope(format!(
                    "facet {r}: normal {:?} is not primitive",
                    f.normal
                )));
            }
            if !f.offset.is_negative() {
                return Err(Error::InvalidPolytope(format!(
                    "facet {r}: offset {} must be negative",
                    f.offset
                )));
            }
        }
        let p = DelzantPolytope { dim, facets };
        if let Some(direction) = p.recession_direction() {
            return Err(Error::InvalidPolytope(format!(
                "unbounded along direction {direction}"
            )));
        }
        Ok(p)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    /// The moment simplex of `CP^n`: one facet `1 - Σ a_i >= 0`.
    pub fn simplex(n: usize) -> Self {
        Self::scaled_simplex(n, Rational::one())
    }

    pub fn scaled_simplex(n: usize, size: Rational) -> Self {
        DelzantPolytope::new(n, vec![Facet::new(vec![-1; n], -size)]).expect("valid simplex")
    }

    /// `[0, 1]^n`.
    pub fn cube(n: usize) -> Self {
        let facets = (0..n)
            .map(|i| {
                let mut normal = vec![0; n];
                normal[i] = -1;
                Facet::new(normal, int(-1))
            })
            .collect();
        DelzantPolytope::new(n, facets).expect("valid cube")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    /// A direction `v >= 0`, `Σ v = 1`, with `⟨v, μ_r⟩ >= 0` for every facet.
    fn recession_direction(&self) -> Option<RatVec> {
        let n = self.dim;
        let d = self.facets.len();
        // Unknowns (v, s) >= 0 with ⟨μ_r, v⟩ - s_r = 0 and Σ v = 1.
        let mut rows = Vec::with_capacity(d + 1);
        let mut rhs = Vec::with_capacity(d + 1);
        for (r, f) in self.facets.iter().enumerate() {
            let mut row: Vec<Rational> = f.normal.iter().map(|&m| int(m)).collect();
            row.extend((0..d).map(|k| if k == r { int(-1) } else { Rational::zero() }));
            rows.push(row);
            rhs.push(Rational::zero());
        }
        let mut sum_row = vec![Rational::one(); n];
        sum_row.extend((0..d).map(|_| Rational::zero()));
        rows.push(sum_row);
        rhs.push(Rational::one());
        let x = find_nonnegative_solution(&rows, &rhs)?;
        RatVec::new(x[..n].to_vec()).ok()
    }

    /// Values `l_r(a)` of the listed facets.
    pub fn facet_values(&self, a: &RatVec) -> Vec<Rational> {
        self.facets.iter().map(|f| f.eval(a)).collect()
    }

    pub fn contains(&self, a: &RatVec) -> bool {
        a.len() == self.dim
            && a.iter().all(|x| !x.is_negative())
            && self.facets.iter().all(|f| !f.eval(a).is_negative())
    }

    pub fn require_interior(&self, a: &RatVec) -> Result<()> {
        a.require_len(self.dim)?;
        if let Some(i) = a.iter().position(|x| !x.is_positive()) {
            return Err(Error::OutsideInterior(format!(
                "coordinate {i} is {} (must be > 0)",
                a[i]
            )));
        }
        if let Some(r) = self.facets.iter().position(|f| !f.eval(a).is_positive()) {
            return Err(Error::OutsideInterior(format!(
                "facet {r} evaluates to {} (must be > 0)",
                self.facets[r].eval(a)
            )));
        }
        Ok(())
    }

    /// `sup { s > 0 : Δ̃_s ⊂ Δ }`.
    ///
    /// The closure of `Δ̃_s` is the simplex spanned by `0` and the `s e_i`,
    /// so containment is a vertex check: `s μ_r^i - λ_r >= 0` for all `r, i`.
    /// Only negative `μ_r^i` constrain `s`. A bounded polytope always has one,
    /// since otherwise `e_i` would be a recession direction.
    pub fn s0(&self) -> Rational {
        self.facets
            .iter()
            .flat_map(|f| {
                f.normal
                    .iter()
                    .filter(|&&m| m < 0)
                    .map(move |&m| &f.offset / int(m))
            })
            .min()
            .expect("bounded polytope has a negative normal entry")
    }

    /// Whether the closed simplex spanned by `0` and the `s e_i` lies in `Δ`.
    pub fn contains_scaled_simplex(&self, s: &Rational) -> bool {
        (0..self.dim).all(|i| {
            let vertex = RatVec::new(
                (0..self.dim)
                    .map(|k| if k == i { s.clone() } else { Rational::zero() })
                    .collect(),
            )
            .expect("dim > 0");
            self.contains(&vertex)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn s0_examples() {
        for n in 1..6 {
            assert_eq!(DelzantPolytope::simplex(n).s0(), int(1));
            assert_eq!(DelzantPolytope::cube(n).s0(), int(1));
            assert_eq!(DelzantPolytope::scaled_simplex(n, rat(7, 3)).s0(), rat(7, 3));
        }
    }

    #[test]
    fn s0_mixed_normals() {
        // Hirzebruch-like trapezoid: a2 <= 1, a1 + a2 <= 3.
        let p = DelzantPolytope::new(
            2,
            vec![
                Facet::new(vec![0, -1], int(-1)),
                Facet::new(vec![-1, -1], int(-3)),
            ],
        )
        .unwrap();
        assert_eq!(p.s0(), int(1));
        assert!(p.contains_scaled_simplex(&int(1)));
        assert!(!p.contains_scaled_simplex(&rat(101, 100)));
    }

    #[test]
    fn rejects_invalid() {
        let bad = |facets| DelzantPolytope::new(2, facets);
        assert!(matches!(
            bad(vec![Facet::new(vec![-2, -2], int(-1))]),
            Err(Error::InvalidPolytope(_))
        ));
        assert!(bad(vec![Facet::new(vec![-1, -1], int(1))]).is_err());
        assert!(bad(vec![Facet::new(vec![-1, -1], int(0))]).is_err());
        assert!(bad(vec![Facet::new(vec![-1], int(-1))]).is_err());
        // Only a2 is bounded.
        assert!(bad(vec![Facet::new(vec![0, -1], int(-1))]).is_err());
        // a1 - a2 >= -1 and a2 <= 1 leave a1 unbounded.
        assert!(bad(vec![
            Facet::new(vec![1, -1], int(-1)),
            Facet::new(vec![0, -1], int(-1)),
        ])
        .is_err());
        assert!(DelzantPolytope::new(0, vec![]).is_err());
        assert!(DelzantPolytope::new(2, vec![]).is_err());
    }

    #[test]
    fn json_form() {
        let text = r#"{"dim":2,"facets":[{"mu":[-1,-1],"lambda":"-3/2"}]}"#;
        let p = DelzantPolytope::from_json(text).unwrap();
        assert_eq!(p, DelzantPolytope::scaled_simplex(2, rat(3, 2)));
        assert_eq!(serde_json::to_string(&p).unwrap(), text);
        assert!(DelzantPolytope::from_json(r#"{"dim":2,"facets":[{"mu":[1,1],"lambda":"-1"}]}"#)
            .is_err());
    }

    #[test]
    fn interior_checks() {
        let p = DelzantPolytope::simplex(2);
        assert!(p.require_interior(&RatVec::from_fractions(&[(1, 4), (1, 4)]).unwrap()).is_ok());
        assert!(p.require_interior(&RatVec::from_fractions(&[(1, 2), (1, 2)]).unwrap()).is_err());
        assert!(p.require_interior(&RatVec::from_fractions(&[(0, 1), (1, 2)]).unwrap()).is_err());
        assert!(matches!(
            p.require_interior(&RatVec::from_ints(&[1]).unwrap()),
            Err(Error::DimensionMismatch { .. })
        ));
    }
}
