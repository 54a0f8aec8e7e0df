//! Coxeter systems from their Coxeter matrices: enumeration of `W` in the
//! geometric representation, the reflection cocycle and the root system.

use std::collections::HashMap;
use std::sync::Arc;

use fixedbitset::FixedBitSet;

use super::cyclotomic::{Cyc, CyclotomicRing};
use crate::error::{Error, Result};
use crate::groupoid::{Groupoid, Mor, Obj};
use crate::prd::{PowerSetRep, Protorootoid};
use crate::setalg::GroundSet;
use crate::signed::SignedGroupoidSet;

/// Default cap on the number of enumerated group elements.
pub const DEFAULT_BUDGET: usize = 2000;

/// Name of the single object of a Coxeter group viewed as a groupoid.
pub const COXETER_OBJECT: &str = "W";

/// A symmetric Coxeter matrix with generator labels; `None` encodes `∞`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoxeterMatrix {
    labels: Vec<String>,
    m: Vec<Vec<Option<usize>>>,
}

impl CoxeterMatrix {
    pub fn new(labels: Vec<String>, m: Vec<Vec<Option<usize>>>) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::CoxeterMatrix("has no generators".into()));
        }
        if m.len() != n || m.iter().any(|row| row.len() != n) {
            return Err(Error::CoxeterMatrix(format!("must be {n} x {n}")));
        }
        for (i, l) in labels.iter().enumerate() {
            if l.is_empty() || l == "1" {
                return Err(Error::CoxeterMatrix(format!(
                    "has invalid generator label `{l}`"
                )));
            }
            if labels[..i].contains(l) {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        for i in 0..n {
            if m[i][i] != Some(1) {
                return Err(Error::CoxeterMatrix("diagonal entries must be 1".into()));
            }
            for j in 0..n {
                if m[i][j] != m[j][i] {
                    return Err(Error::CoxeterMatrix("not symmetric".into()));
                }
                if i != j && matches!(m[i][j], Some(k) if k < 2) {
                    return Err(Error::CoxeterMatrix(
                        "off-diagonal entries must be at least 2 or infinity".into(),
                    ));
                }
            }
        }
        Ok(CoxeterMatrix { labels, m })
    }

    /// `r, s, t, u` up to rank 4, otherwise `s1, ..., sn`.
    pub fn default_labels(n: usize) -> Vec<String> {
        if n <= 4 {
            ["r", "s", "t", "u"][..n]
                .iter()
                .map(|s| s.to_string())
                .collect()
        } else {
            (1..=n).map(|i| format!("s{i}")).collect()
        }
    }

    pub fn with_default_labels(m: Vec<Vec<Option<usize>>>) -> Result<Self> {
        CoxeterMatrix::new(CoxeterMatrix::default_labels(m.len()), m)
    }

    /// Linear diagram with the given bond orders between consecutive generators.
    pub fn linear(bonds: &[usize]) -> Result<Self> {
        let n = bonds.len() + 1;
        let mut m = vec![vec![Some(2); n]; n];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = Some(1);
        }
        for (i, &b) in bonds.iter().enumerate() {
            m[i][i + 1] = Some(b);
            m[i + 1][i] = Some(b);
        }
        CoxeterMatrix::with_default_labels(m)
    }

    pub fn type_a(n: usize) -> Result<Self> {
        CoxeterMatrix::linear(&vec![3; n.saturating_sub(1)])
    }

    pub fn type_b(n: usize) -> Result<Self> {
        let mut bonds = vec![3; n.saturating_sub(1)];
        if let Some(last) = bonds.last_mut() {
            *last = 4;
        }
        CoxeterMatrix::linear(&bonds)
    }

    pub fn dihedral(m: Option<usize>) -> Result<Self> {
        CoxeterMatrix::with_default_labels(vec![vec![Some(1), m], vec![m, Some(1)]])
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn entry(&self, i: usize, j: usize) -> Option<usize> {
        self.m[i][j]
    }

    pub fn rows(&self) -> &[Vec<Option<usize>>] {
        &self.m
    }

    fn word_label(&self, word: &[usize]) -> String {
        if word.is_empty() {
            return "1".into();
        }
        let sep = if self.labels.iter().any(|l| l.chars().count() > 1) {
            "."
        } else {
            ""
        };
        word.iter()
            .map(|&i| self.labels[i].as_str())
            .collect::<Vec<_>>()
            .join(sep)
    }
}

/// Group elements in the geometric representation, found by BFS.
struct Enumeration {
    ring: CyclotomicRing,
    n: usize,
    coeff: Vec<Vec<Cyc>>,
    mats: Vec<Vec<i64>>,
    index: HashMap<Vec<i64>, usize>,
    words: Vec<Vec<usize>>,
    parent: Vec<Option<(usize, usize)>>,
    right: Vec<Vec<Option<usize>>>,
}

impl Enumeration {
    fn run(m: &CoxeterMatrix, max_len: Option<usize>, budget: usize) -> Result<Enumeration> {
        let n = m.rank();
        let ring = CyclotomicRing::for_orders(m.rows().iter().flatten().filter_map(|x| *x));
        let mut coeff = vec![vec![ring.zero(); n]; n];
        for (s, row) in coeff.iter_mut().enumerate() {
            for (t, c) in row.iter_mut().enumerate() {
                if s != t {
                    *c = ring.two_cos_pi_over(m.entry(s, t))?;
                }
            }
        }
        let d = ring.degree();
        let mut id = vec![0i64; n * n * d];
        for i in 0..n {
            id[(i * n + i) * d] = 1;
        }
        let mut e = Enumeration {
            ring,
            n,
            coeff,
            mats: vec![id.clone()],
            index: HashMap::from([(id, 0)]),
            words: vec![Vec::new()],
            parent: vec![None],
            right: Vec::new(),
        };
        let mut head = 0;
        while head < e.mats.len() {
            let mut row = vec![None; n];
            let len = e.words[head].len();
            for (s, slot) in row.iter_mut().enumerate() {
                let prod = e.right_mul(&e.mats[head], s)?;
                if let Some(&j) = e.index.get(&prod) {
                    *slot = Some(j);
                    continue;
                }
                if max_len.is_some_and(|k| len + 1 > k) {
                    continue;
                }
                if e.mats.len() >= budget {
                    return Err(Error::BudgetExhausted(budget));
                }
                let j = e.mats.len();
                let mut w = e.words[head].clone();
                w.push(s);
                e.index.insert(prod.clone(), j);
                e.mats.push(prod);
                e.words.push(w);
                e.parent.push(Some((head, s)));
                *slot = Some(j);
            }
            e.right.push(row);
            head += 1;
        }
        Ok(e)
    }

    fn entry<'a>(&self, mat: &'a [i64], row: usize, col: usize) -> &'a [i64] {
        let d = self.ring.degree();
        let k = (col * self.n + row) * d;
        &mat[k..k + d]
    }

    /// `w σ_s`: column `t` gains `c_st` times column `s`, column `s` is negated.
    fn right_mul(&self, mat: &[i64], s: usize) -> Result<Vec<i64>> {
        let (n, d) = (self.n, self.ring.degree());
        let mut out = mat.to_vec();
        for t in 0..n {
            for i in 0..n {
                let k = (t * n + i) * d;
                let v = if t == s {
                    self.ring.neg(&self.entry(mat, i, s).to_vec())?
                } else {
                    self.ring.add_mul(
                        &self.entry(mat, i, t).to_vec(),
                        &self.coeff[s][t],
                        &self.entry(mat, i, s).to_vec(),
                    )?
                };
                out[k..k + d].copy_from_slice(&v);
            }
        }
        Ok(out)
    }

    fn mat_mul(&self, a: &[i64], b: &[i64]) -> Result<Vec<i64>> {
        let (n, d) = (self.n, self.ring.degree());
        let mut out = vec![0i64; n * n * d];
        for j in 0..n {
            for i in 0..n {
                let mut acc = self.ring.zero();
                for k in 0..n {
                    acc = self.ring.add_mul(
                        &acc,
                        &self.entry(a, i, k).to_vec(),
                        &self.entry(b, k, j).to_vec(),
                    )?;
                }
                let o = (j * n + i) * d;
                out[o..o + d].copy_from_slice(&acc);
            }
        }
        Ok(out)
    }

    fn lookup_product(&self, x: usize, y: usize) -> Result<Option<usize>> {
        let p = self.mat_mul(&self.mats[x], &self.mats[y])?;
        Ok(self.index.get(&p).copied())
    }
}

/// Outcome of the reflection-cocycle and exchange checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoxeterChecks {
    /// `N(w) = {t ∈ T : l(tw) < l(w)}` for every `w`.
    pub inversion_formula: bool,
    /// `|N(w)| = l(w)` for every `w`.
    pub length_formula: bool,
    /// `l(tw) ≢ l(w) (mod 2)` for every `t, w`.
    pub parity: bool,
    /// `l(tw) ≥ l(w) ∧ l(twr) ≤ l(wr) ⟹ tw = wr`.
    pub strong_exchange: bool,
    /// The root action commutes with negation and `Φ_w` maps onto `N(w)`.
    pub root_system: bool,
}

impl CoxeterChecks {
    pub fn holds(&self) -> bool {
        self.inversion_formula
            && self.length_formula
            && self.parity
            && self.strong_exchange
            && self.root_system
    }
}

/// A finite Coxeter system with its protorootoid and standard signed groupoid-set.
#[derive(Clone, Debug)]
pub struct CoxeterSystem {
    pub matrix: CoxeterMatrix,
    /// Element labels (shortlex-first reduced words); element `0` is the identity.
    pub labels: Vec<String>,
    pub words: Vec<Vec<usize>>,
    pub table: Vec<Vec<u32>>,
    pub inverse: Vec<usize>,
    /// Reflections as element indices, in ground-set order (sorted by label).
    pub reflections: Vec<usize>,
    /// Position in `reflections` of each element, if it is a reflection.
    pub reflection_position: Vec<Option<usize>>,
    pub protorootoid: Arc<Protorootoid>,
    pub signed: SignedGroupoidSet,
    pub checks: CoxeterChecks,
}

impl CoxeterSystem {
    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn length(&self, w: usize) -> usize {
        self.words[w].len()
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.table[x][y] as usize
    }

    pub fn element(&self, label: &str) -> Result<usize> {
        self.protorootoid.groupoid().morphism(label).map(|m| m.0)
    }

    /// The simple reflections as element indices.
    pub fn generators(&self) -> Vec<usize> {
        (0..self.matrix.rank())
            .map(|s| self.words.iter().position(|w| w.as_slice() == [s]).unwrap())
            .collect()
    }

    pub fn ground(&self) -> &GroundSet {
        self.protorootoid.ground(Obj(0))
    }

    /// `N(w)` as reflection labels in ground order.
    pub fn inversion_labels(&self, w: usize) -> Vec<&str> {
        self.protorootoid.n(Mor(w)).labels()
    }

    pub fn longest(&self) -> usize {
        (0..self.order()).max_by_key(|&w| self.length(w)).unwrap()
    }
}

/// Enumerates a finite Coxeter group and builds `(W, Λ, N)` and `C_(W,S)`.
pub fn build_coxeter(m: &CoxeterMatrix, budget: usize) -> Result<CoxeterSystem> {
    let e = Enumeration::run(m, None, budget)?;
    let count = e.mats.len();
    let rank = m.rank();
    let labels: Vec<String> = e.words.iter().map(|w| m.word_label(w)).collect();
    let right: Vec<Vec<usize>> = e
        .right
        .iter()
        .map(|r| r.iter().map(|x| x.expect("finite group closes")).collect())
        .collect();
    let mut table = vec![vec![0u32; count]; count];
    for (x, row) in table.iter_mut().enumerate() {
        row[0] = x as u32;
        for y in 1..count {
            let (p, s) = e.parent[y].unwrap();
            row[y] = right[row[p] as usize][s] as u32;
        }
    }
    let inverse: Vec<usize> = (0..count)
        .map(|x| table[x].iter().position(|&v| v == 0).unwrap())
        .collect();
    let gens: Vec<usize> = (0..rank).map(|s| right[0][s]).collect();
    let mut is_refl = vec![false; count];
    for w in 0..count {
        for &s in &gens {
            is_refl[table[table[w][s] as usize][inverse[w]] as usize] = true;
        }
    }
    let mut reflections: Vec<usize> = (0..count).filter(|&x| is_refl[x]).collect();
    reflections.sort_by(|&a, &b| labels[a].cmp(&labels[b]));
    let mut reflection_position = vec![None; count];
    for (i, &t) in reflections.iter().enumerate() {
        reflection_position[t] = Some(i);
    }
    let groupoid = Arc::new(Groupoid::from_group(COXETER_OBJECT, &labels, 0, |x, y| {
        table[x][y] as usize
    })?);
    let ground = GroundSet::new(
        COXETER_OBJECT,
        reflections.iter().map(|&t| labels[t].clone()),
    )?;
    let conj = |w: usize, t: usize| table[table[w][t] as usize][inverse[w]] as usize;
    let perms: Vec<Vec<usize>> = (0..count)
        .map(|w| {
            reflections
                .iter()
                .map(|&t| reflection_position[conj(w, t)].unwrap())
                .collect()
        })
        .collect();
    let rep = PowerSetRep::new(&groupoid, vec![ground.clone()], perms.clone(), None)?;
    let mut inv_bits = vec![FixedBitSet::with_capacity(reflections.len()); count];
    for w in 1..count {
        let (p, s) = e.parent[w].unwrap();
        let mut bits = inv_bits[p].clone();
        bits.toggle(reflection_position[conj(p, gens[s])].unwrap());
        inv_bits[w] = bits;
    }
    let values = inv_bits
        .iter()
        .map(|b| ground.elem_from_indices(b.ones()))
        .collect::<Result<Vec<_>>>()?;
    let protorootoid = Arc::new(Protorootoid::new(Arc::clone(&groupoid), rep, values)?);

    let len = |w: usize| e.words[w].len();
    let mut checks = CoxeterChecks {
        inversion_formula: true,
        length_formula: true,
        parity: true,
        strong_exchange: true,
        root_system: true,
    };
    for w in 0..count {
        if inv_bits[w].count_ones(..) != len(w) {
            checks.length_formula = false;
        }
        for (i, &t) in reflections.iter().enumerate() {
            let tw = table[t][w] as usize;
            if (len(tw) < len(w)) != inv_bits[w].contains(i) {
                checks.inversion_formula = false;
            }
            if len(tw) % 2 == len(w) % 2 {
                checks.parity = false;
            }
            for &r in &gens {
                let wr = table[w][r] as usize;
                let twr = table[tw][r] as usize;
                if len(tw) >= len(w) && len(twr) <= len(wr) && tw != wr {
                    checks.strong_exchange = false;
                }
            }
        }
    }
    let flips: Vec<FixedBitSet> = (0..count)
        .map(|w| {
            let mut f = FixedBitSet::with_capacity(reflections.len());
            for (i, &t) in reflections.iter().enumerate() {
                if len(table[w][t] as usize) < len(w) {
                    f.insert(i);
                }
            }
            f
        })
        .collect();
    let signed = SignedGroupoidSet::from_orbit_action(
        Arc::clone(&groupoid),
        vec![ground],
        perms,
        flips,
        None,
    )?;
    for w in 0..count {
        let phi = signed.phi_orbits(Mor(w));
        if phi != inv_bits[w] {
            checks.root_system = false;
        }
    }
    Ok(CoxeterSystem {
        matrix: m.clone(),
        labels,
        words: e.words,
        table,
        inverse,
        reflections,
        reflection_position,
        protorootoid,
        signed,
        checks,
    })
}

/// The elements of length at most a cutoff, with their inversion sets.
/// Not a protorootoid: the cocycle leaves the ball.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoxeterBall {
    pub cutoff: usize,
    pub labels: Vec<String>,
    pub lengths: Vec<usize>,
    /// Reflections `w s w⁻¹` with `l(w) < cutoff`, sorted by label.
    pub reflections: Vec<String>,
    pub inversion_sets: Vec<Vec<String>>,
    /// Whether the group has elements beyond the ball.
    pub truncated: bool,
    /// `N(w) = {t : l(tw) < l(w)}` and `|N(w)| = l(w)` on the ball.
    pub checks_hold: bool,
}

/// Enumerates the ball of radius `cutoff` (using radius `2·cutoff` internally).
pub fn coxeter_ball(m: &CoxeterMatrix, cutoff: usize, budget: usize) -> Result<CoxeterBall> {
    let e = Enumeration::run(m, Some(2 * cutoff), budget)?;
    let truncated = e.right.iter().flatten().any(Option::is_none);
    let len = |w: usize| e.words[w].len();
    let inner: Vec<usize> = (0..e.mats.len()).filter(|&w| len(w) <= cutoff).collect();
    let word_of = |w: usize| m.word_label(&e.words[w]);
    let inverse = |w: usize| -> Result<usize> {
        let mut word = e.words[w].clone();
        word.reverse();
        let mut x = 0;
        for s in word {
            x = e.right[x][s].ok_or(Error::BudgetExhausted(budget))?;
        }
        Ok(x)
    };
    let mut refl: Vec<usize> = Vec::new();
    let mut refl_of = vec![None; e.mats.len()];
    let mut inv: Vec<Vec<usize>> = vec![Vec::new(); e.mats.len()];
    for &w in &inner {
        if w == 0 {
            continue;
        }
        let (p, s) = e.parent[w].unwrap();
        let ps = e.right[p][s].unwrap();
        let t = e
            .lookup_product(ps, inverse(p)?)?
            .expect("reflections of the inner ball lie in the outer ball");
        if refl_of[t].is_none() {
            refl_of[t] = Some(refl.len());
            refl.push(t);
        }
        let mut set = inv[p].clone();
        if let Some(pos) = set.iter().position(|&x| x == t) {
            set.remove(pos);
        } else {
            set.push(t);
        }
        inv[w] = set;
    }
    let mut checks_hold = true;
    for &w in &inner {
        if inv[w].len() != len(w) {
            checks_hold = false;
        }
        for &t in &refl {
            let shorter = match e.lookup_product(t, w)? {
                Some(tw) => len(tw) < len(w),
                None => false,
            };
            if shorter != inv[w].contains(&t) {
                checks_hold = false;
            }
        }
    }
    let mut reflections: Vec<String> = refl.iter().map(|&t| word_of(t)).collect();
    reflections.sort();
    Ok(CoxeterBall {
        cutoff,
        labels: inner.iter().map(|&w| word_of(w)).collect(),
        lengths: inner.iter().map(|&w| len(w)).collect(),
        reflections,
        inversion_sets: inner
            .iter()
            .map(|&w| {
                let mut v: Vec<String> = inv[w].iter().map(|&t| word_of(t)).collect();
                v.sort();
                v
            })
            .collect(),
        truncated,
        checks_hold,
    })
}

/// A reflection subgroup `W′` with `N′(w) = N(w) ∩ T′`.
#[derive(Clone, Debug)]
pub struct ReflectionSubgroup {
    /// Elements of `W′` as indices into `W`.
    pub elements: Vec<usize>,
    /// `T′ = T ∩ W′` as indices into `W`.
    pub reflections: Vec<usize>,
    /// `S′ = {w ∈ W′ : |N′(w)| = 1}` as indices into `W`.
    pub simple: Vec<usize>,
    pub protorootoid: Arc<Protorootoid>,
    /// `S′` generates `W′`, `l_{S′} = |N′|` and the strong exchange condition holds.
    pub exchange_holds: bool,
    /// `N(x) ⊆ N(y) ⟹ N′(x) ⊆ N′(y)` on `W′`.
    pub order_preserving: bool,
    /// `(x, y)` with `N′(x) ⊆ N′(y)` but `N(x) ⊄ N(y)`.
    pub non_isomorphism_witness: Option<(String, String)>,
}

pub fn reflection_subgroup(sys: &CoxeterSystem, gens: &[&str]) -> Result<ReflectionSubgroup> {
    let gp = sys.protorootoid.groupoid();
    let mut gen_idx = Vec::new();
    for &g in gens {
        let w = gp.morphism(g)?.0;
        if sys.reflection_position[w].is_none() {
            return Err(Error::Precondition(format!("`{g}` is not a reflection")));
        }
        gen_idx.push(w);
    }
    let count = sys.order();
    let mut member = vec![false; count];
    member[0] = true;
    let mut queue = vec![0usize];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        for &g in &gen_idx {
            let y = sys.mul(x, g);
            if !member[y] {
                member[y] = true;
                queue.push(y);
            }
        }
    }
    let elements: Vec<usize> = (0..count).filter(|&x| member[x]).collect();
    let pos: HashMap<usize, usize> = elements.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let reflections: Vec<usize> = sys
        .reflections
        .iter()
        .copied()
        .filter(|&t| member[t])
        .collect();
    let rpos: HashMap<usize, usize> = reflections
        .iter()
        .enumerate()
        .map(|(i, &t)| (t, i))
        .collect();
    let sub_labels: Vec<String> = elements.iter().map(|&x| sys.labels[x].clone()).collect();
    let groupoid = Arc::new(Groupoid::from_group(
        COXETER_OBJECT,
        &sub_labels,
        0,
        |i, j| pos[&sys.mul(elements[i], elements[j])],
    )?);
    let ground = GroundSet::new(
        COXETER_OBJECT,
        reflections.iter().map(|&t| sys.labels[t].clone()),
    )?;
    let perms = elements
        .iter()
        .map(|&w| {
            reflections
                .iter()
                .map(|&t| rpos[&sys.mul(sys.mul(w, t), sys.inverse[w])])
                .collect()
        })
        .collect();
    let rep = PowerSetRep::new(&groupoid, vec![ground.clone()], perms, None)?;
    let full_n = |w: usize| sys.protorootoid.n(Mor(w));
    let values = elements
        .iter()
        .map(|&w| {
            ground.elem_from_indices(
                full_n(w)
                    .indices()
                    .filter_map(|i| rpos.get(&sys.reflections[i]).copied()),
            )
        })
        .collect::<Result<Vec<_>>>()?;
    let p = Arc::new(Protorootoid::new(groupoid, rep, values)?);
    let n_sub = |i: usize| p.n(Mor(i));
    let simple_pos: Vec<usize> = (0..elements.len())
        .filter(|&i| n_sub(i).rank() == 1)
        .collect();
    let simple: Vec<usize> = simple_pos.iter().map(|&i| elements[i]).collect();

    // word length over S′ by BFS
    let mut len = vec![usize::MAX; elements.len()];
    len[0] = 0;
    let mut queue = vec![0usize];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        for &s in &simple_pos {
            let y = pos[&sys.mul(elements[x], elements[s])];
            if len[y] == usize::MAX {
                len[y] = len[x] + 1;
                queue.push(y);
            }
        }
    }
    let mut exchange_holds = len.iter().all(|&l| l != usize::MAX);
    if exchange_holds {
        let refl_pos: Vec<usize> = reflections.iter().map(|t| pos[t]).collect();
        let mul = |i: usize, j: usize| pos[&sys.mul(elements[i], elements[j])];
        for w in 0..elements.len() {
            if len[w] != n_sub(w).rank() {
                exchange_holds = false;
            }
            for &t in &refl_pos {
                let tw = mul(t, w);
                for &r in &simple_pos {
                    let (wr, twr) = (mul(w, r), mul(tw, r));
                    if len[tw] >= len[w] && len[twr] <= len[wr] && tw != wr {
                        exchange_holds = false;
                    }
                }
            }
        }
    }
    let mut order_preserving = true;
    let mut witness = None;
    for (i, &x) in elements.iter().enumerate() {
        for (j, &y) in elements.iter().enumerate() {
            let big = full_n(x).bits().is_subset(full_n(y).bits());
            let small = n_sub(i).bits().is_subset(n_sub(j).bits());
            if big && !small {
                order_preserving = false;
            }
            if small && !big && witness.is_none() {
                witness = Some((sys.labels[x].clone(), sys.labels[y].clone()));
            }
        }
    }
    Ok(ReflectionSubgroup {
        elements,
        reflections,
        simple,
        protorootoid: p,
        exchange_holds,
        order_preserving,
        non_isomorphism_witness: witness,
    })
}
