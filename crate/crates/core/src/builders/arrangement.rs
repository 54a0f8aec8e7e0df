//! Central hyperplane arrangements with integer normals: chambers, walls and
//! the arrangement protorootoid on the simply connected groupoid of chambers.

use std::sync::Arc;

use fixedbitset::FixedBitSet;
use num_rational::BigRational;
use rayon::prelude::*;

use super::fm::{self, feasible_point, Inequality};
use crate::error::{Error, Result};
use crate::groupoid::{Groupoid, Mor};
use crate::prd::{PowerSetRep, Protorootoid};
use crate::setalg::GroundSet;
use crate::signed::SignedGroupoidSet;

/// A finite, central, essential arrangement given by primitive integer normals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrangement {
    dim: usize,
    normals: Vec<Vec<i64>>,
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn primitive(v: &[i64]) -> Vec<i64> {
    let g = v.iter().fold(0i64, |acc, &x| gcd(acc, x));
    v.iter().map(|&x| x / g).collect()
}

fn to_rational(v: &[i64]) -> Vec<BigRational> {
    v.iter().map(|&x| fm::int(x)).collect()
}

impl Arrangement {
    /// Normals are scaled to primitive vectors; zero, parallel or
    /// non-spanning normals are rejected.
    pub fn new(dim: usize, normals: Vec<Vec<i64>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Arrangement("dimension must be at least 1".into()));
        }
        let mut prim = Vec::with_capacity(normals.len());
        for (i, u) in normals.iter().enumerate() {
            if u.len() != dim {
                return Err(Error::Arrangement(format!(
                    "normal h{i} does not have {dim} coordinates"
                )));
            }
            if u.iter().all(|&x| x == 0) {
                return Err(Error::Arrangement(format!("normal h{i} is zero")));
            }
            prim.push(primitive(u));
        }
        for i in 0..prim.len() {
            for j in 0..i {
                if fm::rank(&[to_rational(&prim[i]), to_rational(&prim[j])]) < 2 {
                    return Err(Error::Arrangement(format!(
                        "normals h{j} and h{i} are parallel"
                    )));
                }
            }
        }
        let all: Vec<_> = prim.iter().map(|u| to_rational(u)).collect();
        if fm::rank(&all) < dim {
            return Err(Error::Arrangement("arrangement is not essential".into()));
        }
        Ok(Arrangement { dim, normals: prim })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn normals(&self) -> &[Vec<i64>] {
        &self.normals
    }

    pub fn len(&self) -> usize {
        self.normals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.normals.is_empty()
    }

    /// `σ_i u_i · x ≥ 1` for every `i` in the prefix.
    fn chamber_system(&self, signs: &[bool]) -> Vec<Inequality> {
        signs
            .iter()
            .zip(&self.normals)
            .map(|(&s, u)| Inequality::from_integers(u, if s { 1 } else { -1 }, 1))
            .collect()
    }

    /// The common face of the chamber `signs` with the hyperplane `i`.
    fn face_feasible(&self, signs: &[bool], i: usize) -> bool {
        let mut sys = self.chamber_system(signs);
        sys[i] = Inequality::from_integers(&self.normals[i], 1, 0);
        sys.push(Inequality::from_integers(&self.normals[i], -1, 0));
        feasible_point(self.dim, &sys).is_some()
    }
}

/// A chamber as a sign vector with an interior point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chamber {
    pub signs: Vec<bool>,
    pub label: String,
    pub point: Vec<BigRational>,
}

fn sign_label(signs: &[bool]) -> String {
    signs.iter().map(|&s| if s { '+' } else { '-' }).collect()
}

/// All chambers, sorted by sign label.
pub fn chambers(arr: &Arrangement) -> Vec<Chamber> {
    let mut prefixes: Vec<Vec<bool>> = vec![Vec::new()];
    for _ in 0..arr.len() {
        prefixes = prefixes
            .par_iter()
            .flat_map_iter(|p| {
                [true, false].into_iter().filter_map(move |s| {
                    let mut q = p.clone();
                    q.push(s);
                    feasible_point(arr.dim, &arr.chamber_system(&q)).map(|_| q)
                })
            })
            .collect();
    }
    let mut out: Vec<Chamber> = prefixes
        .into_par_iter()
        .map(|signs| {
            let point =
                feasible_point(arr.dim, &arr.chamber_system(&signs)).expect("feasible prefix");
            Chamber {
                label: sign_label(&signs),
                signs,
                point,
            }
        })
        .collect();
    out.sort_by(|a, b| a.label.cmp(&b.label));
    out
}

/// The arrangement protorootoid with its chambers, walls and signed root data.
#[derive(Clone, Debug)]
pub struct ArrangementRootoid {
    pub arrangement: Arrangement,
    pub chambers: Vec<Chamber>,
    /// Hyperplane indices of the walls of each chamber.
    pub walls: Vec<Vec<usize>>,
    /// Flipped-sign adjacency agrees with the common-face oracle everywhere.
    pub adjacency_agrees: bool,
    pub simplicial: bool,
    /// A chamber that is not a simplicial cone, with its wall count.
    pub non_simplicial_witness: Option<(String, usize)>,
    pub protorootoid: Arc<Protorootoid>,
    pub signed: SignedGroupoidSet,
}

impl ArrangementRootoid {
    pub fn chamber_index(&self, label: &str) -> Option<usize> {
        self.chambers.iter().position(|c| c.label == label)
    }

    /// The morphism `E <- D`.
    pub fn morphism(&self, e: usize, d: usize) -> Mor {
        Mor(e * self.chambers.len() + d)
    }

    /// Number of hyperplanes separating two chambers.
    pub fn distance(&self, e: usize, d: usize) -> usize {
        self.protorootoid.n(self.morphism(e, d)).rank()
    }
}

pub fn build_arrangement(arr: &Arrangement) -> Result<ArrangementRootoid> {
    let chambers = chambers(arr);
    let n = arr.len();
    let labels: Vec<String> = chambers.iter().map(|c| c.label.clone()).collect();
    let results: Vec<(Vec<usize>, bool)> = chambers
        .par_iter()
        .map(|c| {
            let mut walls = Vec::new();
            let mut agrees = true;
            for i in 0..n {
                let mut flipped = c.signs.clone();
                flipped[i] = !flipped[i];
                let adjacent = labels.binary_search(&sign_label(&flipped)).is_ok();
                if adjacent != arr.face_feasible(&c.signs, i) {
                    agrees = false;
                }
                if adjacent {
                    walls.push(i);
                }
            }
            (walls, agrees)
        })
        .collect();
    let adjacency_agrees = results.iter().all(|(_, a)| *a);
    let walls: Vec<Vec<usize>> = results.into_iter().map(|(w, _)| w).collect();
    let mut non_simplicial_witness = None;
    for (c, w) in chambers.iter().zip(&walls) {
        let normals: Vec<_> = w.iter().map(|&i| to_rational(&arr.normals[i])).collect();
        if w.len() != arr.dim || fm::rank(&normals) != arr.dim {
            non_simplicial_witness = Some((c.label.clone(), w.len()));
            break;
        }
    }

    let groupoid = Arc::new(Groupoid::simply_connected(&labels, |cod, dom| {
        format!("{cod}<-{dom}")
    })?);
    let hyperplanes: Vec<String> = (0..n).map(|i| format!("h{i}")).collect();
    let grounds = labels
        .iter()
        .map(|l| GroundSet::new(l.clone(), hyperplanes.iter().cloned()))
        .collect::<Result<Vec<_>>>()?;
    let identity: Vec<Vec<usize>> = groupoid.morphisms().map(|_| (0..n).collect()).collect();
    let rep = PowerSetRep::new(&groupoid, grounds.clone(), identity.clone(), None)?;
    let separating = |g: Mor| -> FixedBitSet {
        let (e, d) = (groupoid.cod(g).0, groupoid.dom(g).0);
        let mut s = FixedBitSet::with_capacity(n);
        for i in 0..n {
            if chambers[e].signs[i] != chambers[d].signs[i] {
                s.insert(i);
            }
        }
        s
    };
    let values = groupoid
        .morphisms()
        .map(|g| grounds[groupoid.cod(g).0].elem_from_indices(separating(g).ones()))
        .collect::<Result<Vec<_>>>()?;
    let protorootoid = Arc::new(Protorootoid::new(Arc::clone(&groupoid), rep, values)?);
    let positive = chambers
        .iter()
        .map(|c| {
            let mut p = FixedBitSet::with_capacity(2 * n);
            for (i, &s) in c.signs.iter().enumerate() {
                p.insert(2 * i + usize::from(!s));
            }
            p
        })
        .collect();
    let no_flips = groupoid
        .morphisms()
        .map(|_| FixedBitSet::with_capacity(n))
        .collect();
    let signed = SignedGroupoidSet::from_orbit_action(
        Arc::clone(&groupoid),
        grounds,
        identity,
        no_flips,
        Some(positive),
    )?;
    Ok(ArrangementRootoid {
        arrangement: arr.clone(),
        chambers,
        walls,
        adjacency_agrees,
        simplicial: non_simplicial_witness.is_none(),
        non_simplicial_witness,
        protorootoid,
        signed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_two_arrangement() {
        let arr = Arrangement::new(2, vec![vec![1, 0], vec![0, 1], vec![1, 1]]).unwrap();
        let r = build_arrangement(&arr).unwrap();
        assert_eq!(r.chambers.len(), 6);
        assert!(r.simplicial && r.adjacency_agrees);
        assert!(r.walls.iter().all(|w| w.len() == 2));
        assert_eq!(r.protorootoid.groupoid().num_morphisms(), 36);
    }

    #[test]
    fn line_has_two_chambers() {
        let arr = Arrangement::new(1, vec![vec![3]]).unwrap();
        assert_eq!(arr.normals(), [vec![1]]);
        let r = build_arrangement(&arr).unwrap();
        let labels: Vec<_> = r.chambers.iter().map(|c| c.label.as_str()).collect();
        assert_eq!(labels, ["+", "-"]);
        assert!(r.simplicial);
    }

    #[test]
    fn non_simplicial_arrangement() {
        let arr = Arrangement::new(
            3,
            vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1], vec![1, 1, 1]],
        )
        .unwrap();
        let r = build_arrangement(&arr).unwrap();
        assert_eq!(r.chambers.len(), 14);
        assert!(!r.simplicial && r.adjacency_agrees);
        assert!(r.walls.iter().any(|w| w.len() == 4));
    }

    #[test]
    fn invalid_arrangements() {
        assert!(Arrangement::new(2, vec![vec![1, 0], vec![-2, 0], vec![0, 1]]).is_err());
        assert!(Arrangement::new(2, vec![vec![1, 0]]).is_err());
        assert!(Arrangement::new(2, vec![vec![0, 0], vec![0, 1]]).is_err());
        assert!(Arrangement::new(0, vec![]).is_err());
    }

    #[test]
    fn distance_is_a_metric() {
        let arr = Arrangement::new(2, vec![vec![1, 0], vec![0, 1], vec![1, 1]]).unwrap();
        let r = build_arrangement(&arr).unwrap();
        let k = r.chambers.len();
        for a in 0..k {
            for b in 0..k {
                assert_eq!(r.distance(a, b), r.distance(b, a));
                assert_eq!(r.distance(a, b) == 0, a == b);
                assert_eq!(
                    r.distance(a, b) == 1,
                    r.walls[a].iter().any(|&i| {
                        let mut s = r.chambers[a].signs.clone();
                        s[i] = !s[i];
                        s == r.chambers[b].signs
                    })
                );
                for c in 0..k {
                    assert!(r.distance(a, c) <= r.distance(a, b) + r.distance(b, c));
                }
            }
        }
    }
}
