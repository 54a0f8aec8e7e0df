//! Exact arithmetic in the cyclotomic integers `Z[ζ_M] = Z[x] / Φ_M(x)`.
//!
//! Every value `2cos(π/m)` with `m | M/2` equals `ζ^k + ζ^{M-k}` for
//! `k = M/(2m)`, so the geometric representation of a Coxeter group has
//! entries in this ring and equality of group elements is decidable.

use std::collections::BTreeMap;

use crate::error::{Error, Result};

/// The ring `Z[ζ_M]` with elements stored as coefficient vectors of length `φ(M)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclotomicRing {
    order: usize,
    /// Monic `Φ_M`, lowest degree first.
    modulus: Vec<i64>,
}

pub type Cyc = Vec<i64>;

fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut q = vec![0; num.len() - dd];
    for i in (0..q.len()).rev() {
        let c = rem[i + dd];
        q[i] = c;
        for (j, &d) in den.iter().enumerate() {
            rem[i + j] -= c * d;
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0));
    q
}

/// `Φ_n` as coefficients, lowest degree first.
pub fn cyclotomic_polynomial(n: usize) -> Vec<i64> {
    fn go(n: usize, memo: &mut BTreeMap<usize, Vec<i64>>) -> Vec<i64> {
        if let Some(p) = memo.get(&n) {
            return p.clone();
        }
        let mut p = vec![0i64; n + 1];
        p[0] = -1;
        p[n] = 1;
        for d in 1..n {
            if n.is_multiple_of(d) {
                let f = go(d, memo);
                p = poly_div_exact(&p, &f);
            }
        }
        memo.insert(n, p.clone());
        p
    }
    go(n, &mut BTreeMap::new())
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl CyclotomicRing {
    /// The smallest ring containing `2cos(π/m)` for every finite `m ≥ 3` given.
    pub fn for_orders(ms: impl IntoIterator<Item = usize>) -> CyclotomicRing {
        let l = ms
            .into_iter()
            .filter(|&m| m >= 3)
            .fold(1, |acc, m| acc / gcd(acc, m) * m);
        CyclotomicRing::new(2 * l)
    }

    pub fn new(order: usize) -> CyclotomicRing {
        CyclotomicRing {
            order,
            modulus: cyclotomic_polynomial(order),
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn zero(&self) -> Cyc {
        vec![0; self.degree()]
    }

    pub fn integer(&self, n: i64) -> Cyc {
        let mut z = self.zero();
        z[0] = n;
        z
    }

    /// `ζ^k`, reduced.
    pub fn zeta_power(&self, k: usize) -> Result<Cyc> {
        let mut p = vec![0; self.order.max(self.degree())];
        p[k % self.order] = 1;
        self.reduce(p)
    }

    /// `2cos(π/m)`; `None` encodes `m = ∞` (value 2).
    pub fn two_cos_pi_over(&self, m: Option<usize>) -> Result<Cyc> {
        match m {
            None => Ok(self.integer(2)),
            Some(1) => Ok(self.integer(-2)),
            Some(2) => Ok(self.zero()),
            Some(m) => {
                if !self.order.is_multiple_of(2 * m) {
                    return Err(Error::CoxeterMatrix(format!(
                        "order {m} is not supported by this ring"
                    )));
                }
                let k = self.order / (2 * m);
                let a = self.zeta_power(k)?;
                let b = self.zeta_power(self.order - k)?;
                self.add(&a, &b)
            }
        }
    }

    fn reduce(&self, mut p: Vec<i64>) -> Result<Cyc> {
        let d = self.degree();
        for i in (d..p.len()).rev() {
            let c = p[i];
            if c == 0 {
                continue;
            }
            for (j, &m) in self.modulus.iter().enumerate().take(d) {
                let t = c.checked_mul(m).ok_or(Error::Overflow)?;
                p[i - d + j] = p[i - d + j].checked_sub(t).ok_or(Error::Overflow)?;
            }
            p[i] = 0;
        }
        p.resize(d, 0);
        Ok(p)
    }

    pub fn add(&self, a: &Cyc, b: &Cyc) -> Result<Cyc> {
        a.iter()
            .zip(b)
            .map(|(x, y)| x.checked_add(*y).ok_or(Error::Overflow))
            .collect()
    }

    pub fn neg(&self, a: &Cyc) -> Result<Cyc> {
        a.iter()
            .map(|x| x.checked_neg().ok_or(Error::Overflow))
            .collect()
    }

    pub fn mul(&self, a: &Cyc, b: &Cyc) -> Result<Cyc> {
        let d = self.degree();
        let mut p = vec![0i64; (2 * d).saturating_sub(1).max(d)];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                let t = x.checked_mul(y).ok_or(Error::Overflow)?;
                p[i + j] = p[i + j].checked_add(t).ok_or(Error::Overflow)?;
            }
        }
        self.reduce(p)
    }

    /// `a + c·b`.
    pub fn add_mul(&self, a: &Cyc, c: &Cyc, b: &Cyc) -> Result<Cyc> {
        self.add(a, &self.mul(c, b)?)
    }

    pub fn is_zero(&self, a: &Cyc) -> bool {
        a.iter().all(|&x| x == 0)
    }
}
