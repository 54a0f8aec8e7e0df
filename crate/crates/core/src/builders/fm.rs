//! Exact feasibility of systems `a·x ≥ b` over the rationals by
//! Fourier–Motzkin elimination, with back substitution for a witness point.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// `coeffs · x ≥ rhs`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Inequality {
    pub coeffs: Vec<BigRational>,
    pub rhs: BigRational,
}

impl Inequality {
    pub fn new(coeffs: Vec<BigRational>, rhs: BigRational) -> Self {
        Inequality { coeffs, rhs }
    }

    /// `sign · u · x ≥ rhs` for an integer vector `u`.
    pub fn from_integers(u: &[i64], sign: i64, rhs: i64) -> Self {
        Inequality {
            coeffs: u.iter().map(|&c| int(c * sign)).collect(),
            rhs: int(rhs),
        }
    }

    fn normalized(mut self) -> Self {
        if let Some(lead) = self.coeffs.iter().find(|c| !c.is_zero()).map(|c| c.abs()) {
            for c in &mut self.coeffs {
                *c = &*c / &lead;
            }
            self.rhs = &self.rhs / &lead;
        }
        self
    }

    pub fn holds_at(&self, x: &[BigRational]) -> bool {
        dot(&self.coeffs, x) >= self.rhs
    }
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn dot(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter()
        .zip(b)
        .fold(BigRational::zero(), |acc, (x, y)| acc + x * y)
}

/// Eliminates the last variable of a system in `k + 1` variables; `None` if
/// a constant inequality `0 ≥ b > 0` appears.
fn eliminate(system: &[Inequality], k: usize) -> Option<Vec<Inequality>> {
    let mut pos = Vec::new();
    let mut neg = Vec::new();
    let mut out: HashSet<Inequality> = HashSet::new();
    for ineq in system {
        let c = &ineq.coeffs[k];
        if c.is_positive() {
            pos.push(ineq);
        } else if c.is_negative() {
            neg.push(ineq);
        } else {
            out.insert(ineq.clone());
        }
    }
    for p in &pos {
        for n in &neg {
            let (cp, cn) = (&p.coeffs[k], -&n.coeffs[k]);
            let coeffs = (0..=k)
                .map(|j| &p.coeffs[j] * &cn + &n.coeffs[j] * cp)
                .collect();
            let rhs = &p.rhs * &cn + &n.rhs * cp;
            out.insert(Inequality::new(coeffs, rhs).normalized());
        }
    }
    let mut next = Vec::new();
    for mut ineq in out {
        ineq.coeffs.truncate(k);
        if ineq.coeffs.iter().all(Zero::is_zero) {
            if ineq.rhs.is_positive() {
                return None;
            }
        } else {
            next.push(ineq);
        }
    }
    Some(next)
}

/// A point satisfying every inequality, or `None` if the system is infeasible.
pub fn feasible_point(dim: usize, ineqs: &[Inequality]) -> Option<Vec<BigRational>> {
    for ineq in ineqs {
        assert_eq!(ineq.coeffs.len(), dim, "inequality has the wrong dimension");
        if ineq.coeffs.iter().all(Zero::is_zero) && ineq.rhs.is_positive() {
            return None;
        }
    }
    let mut stages: Vec<Vec<Inequality>> = vec![Vec::new(); dim + 1];
    stages[dim] = ineqs
        .iter()
        .filter(|i| !i.coeffs.iter().all(Zero::is_zero))
        .cloned()
        .collect();
    for k in (0..dim).rev() {
        stages[k] = eliminate(&stages[k + 1], k)?;
    }
    let mut x: Vec<BigRational> = Vec::with_capacity(dim);
    for k in 0..dim {
        let mut lower: Option<BigRational> = None;
        let mut upper: Option<BigRational> = None;
        for ineq in &stages[k + 1] {
            let c = &ineq.coeffs[k];
            if c.is_zero() {
                continue;
            }
            let v = (&ineq.rhs - dot(&ineq.coeffs[..k], &x)) / c;
            if c.is_positive() {
                if lower.as_ref().is_none_or(|l| v > *l) {
                    lower = Some(v);
                }
            } else if upper.as_ref().is_none_or(|u| v < *u) {
                upper = Some(v);
            }
        }
        let value = match (lower, upper) {
            (Some(l), Some(u)) => {
                debug_assert!(l <= u);
                (l + u) / int(2)
            }
            (Some(l), None) => l + BigRational::one(),
            (None, Some(u)) => u - BigRational::one(),
            (None, None) => BigRational::zero(),
        };
        x.push(value);
    }
    debug_assert!(ineqs.iter().all(|i| i.holds_at(&x)));
    Some(x)
}

/// Rank of a family of rational vectors.
pub fn rank(vectors: &[Vec<BigRational>]) -> usize {
    let mut rows: Vec<Vec<BigRational>> = vectors.to_vec();
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let pivot = rows[r][c].clone();
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = &rows[i][c] / &pivot;
                for j in c..cols {
                    let t = &rows[r][j] * &f;
                    rows[i][j] -= t;
                }
            }
        }
        r += 1;
    }
    r
}
