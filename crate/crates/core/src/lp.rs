//! Exact linear feasibility: find `x >= 0` with `A x = b` by the phase-one
//! simplex method over the rationals, Bland's rule for pivoting.

use num_traits::{Signed, Zero};

use crate::rational::Rational;

pub fn find_nonnegative_solution(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let m = a.len();
    assert_eq!(m, b.len(), "row count mismatch");
    let k = a.first().map_or(0, Vec::len);
    if m == 0 {
        return Some(vec![Rational::zero(); k]);
    }
    let width = k + m;

    // Rows [A | I | b] with b >= 0, artificial columns k..k+m.
    let mut rows: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .enumerate()
        .map(|(i, (row, rhs))| {
            assert_eq!(row.len(), k, "ragged constraint matrix");
            let flip = rhs.is_negative();
            let mut r: Vec<Rational> = row
                .iter()
                .map(|v| if flip { -v.clone() } else { v.clone() })
                .collect();
            r.extend((0..m).map(|j| {
                if j == i {
                    Rational::from_integer(1.into())
                } else {
                    Rational::zero()
                }
            }));
            r.push(if flip { -rhs.clone() } else { rhs.clone() });
            r
        })
        .collect();
    let mut basis: Vec<usize> = (k..width).collect();

    // Reduced costs of `min Σ artificials`, objective value in the last slot.
    let mut cost = vec![Rational::zero(); width + 1];
    for r in &rows {
        for j in 0..k {
            cost[j] -= &r[j];
        }
        cost[width] -= &r[width];
    }

    while let Some(enter) = (0..width).find(|&j| cost[j].is_negative()) {
        let leave = (0..m)
            .filter(|&i| rows[i][enter].is_positive())
            .min_by(|&i, &l| {
                let ri = &rows[i][width] / &rows[i][enter];
                let rl = &rows[l][width] / &rows[l][enter];
                ri.cmp(&rl).then(basis[i].cmp(&basis[l]))
            });
        // The phase-one objective is bounded below by zero.
        let leave = leave.expect("phase one cannot be unbounded");
        pivot(&mut rows, &mut cost, leave, enter);
        basis[leave] = enter;
    }

    if !cost[width].is_zero() {
        return None;
    }
    let mut x = vec![Rational::zero(); k];
    for (i, &var) in basis.iter().enumerate() {
        if var < k {
            x[var] = rows[i][width].clone();
        }
    }
    Some(x)
}

fn pivot(rows: &mut [Vec<Rational>], cost: &mut [Rational], leave: usize, enter: usize) {
    let p = rows[leave][enter].clone();
    for v in rows[leave].iter_mut() {
        *v /= &p;
    }
    let pivot_row = rows[leave].clone();
    for (i, row) in rows.iter_mut().enumerate() {
        if i == leave || row[enter].is_zero() {
            continue;
        }
        let f = row[enter].clone();
        for (v, pv) in row.iter_mut().zip(&pivot_row) {
            *v -= &f * pv;
        }
    }
    let f = cost[enter].clone();
    if !f.is_zero() {
        for (v, pv) in cost.iter_mut().zip(&pivot_row) {
            *v -= &f * pv;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn check(a: &[Vec<Rational>], b: &[Rational], x: &[Rational]) {
        for (row, rhs) in a.iter().zip(b) {
            let lhs = row.iter().zip(x).fold(Rational::zero(), |acc, (c, v)| acc + c * v);
            assert_eq!(&lhs, rhs);
        }
        assert!(x.iter().all(|v| !v.is_negative()));
    }

    #[test]
    fn feasible_system() {
        let a = vec![vec![int(1), int(1), int(0)], vec![int(1), int(-1), int(1)]];
        let b = vec![int(1), rat(-1, 2)];
        let x = find_nonnegative_solution(&a, &b).unwrap();
        check(&a, &b, &x);
    }

    #[test]
    fn infeasible_system() {
        // x + y = 1, x + y = 2
        let a = vec![vec![int(1), int(1)], vec![int(1), int(1)]];
        assert!(find_nonnegative_solution(&a, &[int(1), int(2)]).is_none());
        // -x = 1 with x >= 0
        assert!(find_nonnegative_solution(&[vec![int(-1)]], &[int(1)]).is_none());
    }

    #[test]
    fn degenerate_system() {
        let a = vec![
            vec![int(1), int(-1), int(0), int(0)],
            vec![int(1), int(0), int(-1), int(0)],
            vec![int(1), int(1), int(1), int(1)],
        ];
        let b = vec![int(0), int(0), int(1)];
        let x = find_nonnegative_solution(&a, &b).unwrap();
        check(&a, &b, &x);
    }
}
