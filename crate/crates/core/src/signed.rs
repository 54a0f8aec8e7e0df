//! Signed groupoid-sets, set protorootoids and the functors `𝔏`, `𝔎`, `𝔍`.
//!
//! Roots at an object are indexed `0..2k`: root `2i` is `(x_i, +)` and
//! `2i + 1` is `(x_i, -)`, so negation is `i ^ 1`. The positive part is an
//! explicit choice of one root per orbit and need not be preserved by the action.

use std::sync::Arc;

use fixedbitset::FixedBitSet;

use crate::cat::{check_prd_morphism, PrdMorphism};
use crate::classify::{abridge, classify, jop_pair_failure, meet_failure};
use crate::error::{Error, Result};
use crate::groupoid::{Groupoid, GroupoidFunctor, Mor, Obj};
use crate::poset::FinitePoset;
use crate::prd::{coboundary, PowerSetRep, Protorootoid};
use crate::setalg::{GroundSet, PartialMap, SetElem};

/// A representation of a groupoid in definitely signed sets.
#[derive(Clone, Debug)]
pub struct SignedGroupoidSet {
    groupoid: Arc<Groupoid>,
    orbits: Vec<GroundSet>,
    positive: Vec<FixedBitSet>,
    perms: Vec<Vec<u32>>,
}

fn standard_positive(k: usize) -> FixedBitSet {
    let mut p = FixedBitSet::with_capacity(2 * k);
    for i in 0..k {
        p.insert(2 * i);
    }
    p
}

impl SignedGroupoidSet {
    /// `perms[g][i]` is the image in the roots of `cod g` of root `i` of `dom g`.
    pub fn new(
        groupoid: Arc<Groupoid>,
        orbits: Vec<GroundSet>,
        positive: Vec<FixedBitSet>,
        perms: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let gp = groupoid.as_ref();
        let bad = |s: String| Err(Error::InvalidSigned(s));
        if orbits.len() != gp.num_objects() || positive.len() != gp.num_objects() {
            return bad("need one orbit set and one positive part per object".into());
        }
        if perms.len() != gp.num_morphisms() {
            return bad("need one root bijection per morphism".into());
        }
        for a in gp.objects() {
            let k = orbits[a.0].len();
            let pos = &positive[a.0];
            let ok = pos.len() == 2 * k
                && (0..k).all(|i| pos.contains(2 * i) != pos.contains(2 * i + 1));
            if !ok {
                return bad(format!(
                    "positive part at `{}` must contain exactly one root of each orbit",
                    gp.object_label(a)
                ));
            }
        }
        let mut packed = Vec::with_capacity(perms.len());
        for g in gp.morphisms() {
            let p = &perms[g.0];
            let (nb, na) = (2 * orbits[gp.dom(g).0].len(), 2 * orbits[gp.cod(g).0].len());
            let mut seen = FixedBitSet::with_capacity(na);
            if p.len() != nb || nb != na || p.iter().any(|&x| x >= na) {
                return bad(format!("action of `{}` has the wrong shape", gp.label(g)));
            }
            for (i, &x) in p.iter().enumerate() {
                if seen.put(x) {
                    return bad(format!("action of `{}` is not a bijection", gp.label(g)));
                }
                if p[i ^ 1] != x ^ 1 {
                    return bad(format!(
                        "action of `{}` does not commute with negation",
                        gp.label(g)
                    ));
                }
            }
            if gp.is_identity(g) && p.iter().enumerate().any(|(i, &x)| i != x) {
                return bad(format!("identity `{}` acts nontrivially", gp.label(g)));
            }
            packed.push(p.iter().map(|&x| x as u32).collect::<Vec<u32>>());
        }
        for (g, h) in gp.composable_pairs() {
            let gh = gp.mul(g, h);
            let ok = (0..packed[h.0].len())
                .all(|i| packed[g.0][packed[h.0][i] as usize] == packed[gh.0][i]);
            if !ok {
                return bad(format!(
                    "action is not functorial at (`{}`, `{}`)",
                    gp.label(g),
                    gp.label(h)
                ));
            }
        }
        Ok(SignedGroupoidSet {
            groupoid,
            orbits,
            positive,
            perms: packed,
        })
    }

    /// Root action `(x, ε) ↦ (π(x), ε')`, with `ε' = -ε` exactly when `x ∈ flips[g]`.
    /// `positive = None` chooses every `(x, +)`.
    pub fn from_orbit_action(
        groupoid: Arc<Groupoid>,
        orbits: Vec<GroundSet>,
        orbit_perms: Vec<Vec<usize>>,
        flips: Vec<FixedBitSet>,
        positive: Option<Vec<FixedBitSet>>,
    ) -> Result<Self> {
        if orbit_perms.len() != groupoid.num_morphisms() || flips.len() != orbit_perms.len() {
            return Err(Error::InvalidSigned(
                "need one orbit action and flip set per morphism".into(),
            ));
        }
        let perms = orbit_perms
            .iter()
            .zip(&flips)
            .map(|(p, f)| {
                let mut out = vec![0; 2 * p.len()];
                for (x, &y) in p.iter().enumerate() {
                    let flip = usize::from(f.contains(x));
                    out[2 * x] = 2 * y + flip;
                    out[2 * x + 1] = 2 * y + (1 - flip);
                }
                out
            })
            .collect();
        let positive =
            positive.unwrap_or_else(|| orbits.iter().map(|o| standard_positive(o.len())).collect());
        SignedGroupoidSet::new(groupoid, orbits, positive, perms)
    }

    /// The same action with other positive parts.
    pub fn with_positive(&self, positive: Vec<FixedBitSet>) -> Result<Self> {
        SignedGroupoidSet::new(
            Arc::clone(&self.groupoid),
            self.orbits.clone(),
            positive,
            self.perms
                .iter()
                .map(|p| p.iter().map(|&x| x as usize).collect())
                .collect(),
        )
    }

    pub fn groupoid(&self) -> &Groupoid {
        &self.groupoid
    }

    pub fn groupoid_arc(&self) -> &Arc<Groupoid> {
        &self.groupoid
    }

    pub fn orbits(&self, a: Obj) -> &GroundSet {
        &self.orbits[a.0]
    }

    pub fn num_roots(&self, a: Obj) -> usize {
        2 * self.orbits[a.0].len()
    }

    pub fn root_label(&self, a: Obj, i: usize) -> String {
        let sign = if i.is_multiple_of(2) { '+' } else { '-' };
        format!("{}{sign}", self.orbits[a.0].label(i / 2))
    }

    pub fn root_index(&self, a: Obj, label: &str) -> Option<usize> {
        let (x, sign) = label.split_at(label.len().checked_sub(1)?);
        let k = self.orbits[a.0].index_of(x)?;
        match sign {
            "+" => Some(2 * k),
            "-" => Some(2 * k + 1),
            _ => None,
        }
    }

    pub fn neg(i: usize) -> usize {
        i ^ 1
    }

    pub fn positive(&self, a: Obj) -> &FixedBitSet {
        &self.positive[a.0]
    }

    pub fn negative(&self, a: Obj) -> FixedBitSet {
        let mut n = self.positive[a.0].clone();
        n.toggle_range(..);
        n
    }

    pub fn perm(&self, g: Mor) -> &[u32] {
        &self.perms[g.0]
    }

    pub fn act(&self, g: Mor, i: usize) -> usize {
        self.perms[g.0][i] as usize
    }

    pub fn image(&self, g: Mor, set: &FixedBitSet) -> FixedBitSet {
        let mut out = FixedBitSet::with_capacity(self.num_roots(self.groupoid.cod(g)));
        for i in set.ones() {
            out.insert(self.act(g, i));
        }
        out
    }

    /// `Φ_g = Φ₊(a) ∩ g(Φ₋(b))` for `g: b -> a`.
    pub fn phi(&self, g: Mor) -> FixedBitSet {
        let (b, a) = (self.groupoid.dom(g), self.groupoid.cod(g));
        let mut out = self.image(g, &self.negative(b));
        out.intersect_with(&self.positive[a.0]);
        out
    }

    pub fn phi_labels(&self, g: Mor) -> Vec<String> {
        let a = self.groupoid.cod(g);
        self.phi(g).ones().map(|i| self.root_label(a, i)).collect()
    }

    /// `π_a(Φ_g)` as a set of orbit indices.
    pub fn phi_orbits(&self, g: Mor) -> FixedBitSet {
        let a = self.groupoid.cod(g);
        let mut out = FixedBitSet::with_capacity(self.orbits[a.0].len());
        for i in self.phi(g).ones() {
            out.insert(i / 2);
        }
        out
    }

    /// `N'(g) = Φ₊(a) + g(Φ₊(b))`.
    pub fn n_prime(&self, g: Mor) -> FixedBitSet {
        let (b, a) = (self.groupoid.dom(g), self.groupoid.cod(g));
        let mut out = self.image(g, &self.positive[b.0]);
        out.symmetric_difference_with(&self.positive[a.0]);
        out
    }

    /// Root ground sets, one per object, with labels `x+` and `x-`.
    pub fn root_grounds(&self) -> Result<Vec<GroundSet>> {
        self.groupoid
            .objects()
            .map(|a| {
                GroundSet::new(
                    self.groupoid.object_label(a),
                    (0..self.num_roots(a)).map(|i| self.root_label(a, i)),
                )
            })
            .collect()
    }

    /// The protorootoid `(G, ℘(Φ), N')` after checking that `N'` is the
    /// coboundary of `a ↦ Φ₊(a)` and that `N'(g) = Φ_g ⊔ -Φ_g`.
    pub fn n_prime_protorootoid(&self) -> Result<Protorootoid> {
        let gp = self.groupoid.as_ref();
        let grounds = self.root_grounds()?;
        let perms = self
            .perms
            .iter()
            .map(|p| p.iter().map(|&x| x as usize).collect())
            .collect();
        let rep = PowerSetRep::new(gp, grounds.clone(), perms, None)?;
        let elem = |a: Obj, bits: FixedBitSet| grounds[a.0].elem_from_indices(bits.ones());
        let values = gp
            .morphisms()
            .map(|g| elem(gp.cod(g), self.n_prime(g)))
            .collect::<Result<Vec<_>>>()?;
        let family = gp
            .objects()
            .map(|a| elem(a, self.positive[a.0].clone()))
            .collect::<Result<Vec<_>>>()?;
        if coboundary(gp, &rep, &family)? != values {
            return Err(Error::InvalidSigned(
                "N' is not the coboundary of the positive parts".into(),
            ));
        }
        for g in gp.morphisms() {
            let phi = self.phi(g);
            let mut both = phi.clone();
            for i in phi.ones() {
                both.insert(i ^ 1);
            }
            if both != self.n_prime(g) {
                return Err(Error::InvalidSigned(format!(
                    "N'({}) is not the union of the inversion set and its negative",
                    gp.label(g)
                )));
            }
        }
        Protorootoid::new(Arc::clone(&self.groupoid), rep, values)
    }
}

/// A protorootoid whose rings are full power sets.
#[derive(Clone, Debug)]
pub struct SetProtorootoid(Protorootoid);

impl SetProtorootoid {
    pub fn new(p: Protorootoid) -> Result<Self> {
        if p.rep().has_subrings() {
            let gp = p.groupoid();
            if let Some(a) = gp.objects().find(|&a| !p.ring(a).is_power_set()) {
                return Err(Error::Precondition(format!(
                    "ring at `{}` is not a full power set",
                    gp.object_label(a)
                )));
            }
        }
        Ok(SetProtorootoid(p))
    }

    pub fn inner(&self) -> &Protorootoid {
        &self.0
    }

    pub fn into_inner(self) -> Protorootoid {
        self.0
    }
}

/// `𝔍`: the power-set protorootoid on the same cocycle.
pub fn i_functor(t: &SetProtorootoid) -> Protorootoid {
    t.0.clone()
}

/// `𝔏`: orbit spaces with `N(g) = π(Φ₊(a) ∩ g(Φ₋(b)))`.
pub fn l_functor(r: &SignedGroupoidSet) -> Result<SetProtorootoid> {
    let gp = r.groupoid();
    let perms = gp
        .morphisms()
        .map(|g| {
            r.perm(g)
                .iter()
                .step_by(2)
                .map(|&x| x as usize / 2)
                .collect()
        })
        .collect();
    let rep = PowerSetRep::new(gp, r.orbits.clone(), perms, None)?;
    let values = gp
        .morphisms()
        .map(|g| r.orbits[gp.cod(g).0].elem_from_indices(r.phi_orbits(g).ones()))
        .collect::<Result<Vec<_>>>()?;
    SetProtorootoid::new(Protorootoid::new(
        Arc::clone(r.groupoid_arc()),
        rep,
        values,
    )?)
}

/// `𝔎`: roots `Λ × {±}`, with `g` flipping the sign of `x` exactly when `x ∈ N(g*)`.
pub fn k_functor(t: &SetProtorootoid) -> Result<SignedGroupoidSet> {
    let p = &t.0;
    let gp = p.groupoid();
    let orbits = gp.objects().map(|a| p.ground(a).clone()).collect();
    let perms = gp
        .morphisms()
        .map(|g| p.rep().perm(g).iter().map(|&x| x as usize).collect())
        .collect();
    let flips = gp
        .morphisms()
        .map(|g| p.n(gp.inverse(g)).bits().clone())
        .collect();
    SignedGroupoidSet::from_orbit_action(Arc::clone(p.groupoid_arc()), orbits, perms, flips, None)
}

/// The comparison `𝔏𝔎(T) -> T` with identity components, checked to be an
/// isomorphism of protorootoids.
pub fn lk_comparison(t: &SetProtorootoid) -> Result<PrdMorphism> {
    let lk = Arc::new(l_functor(&k_functor(t)?)?.into_inner());
    let target = Arc::new(t.0.clone());
    let groupoid = Arc::clone(target.groupoid_arc());
    let gp = groupoid.as_ref();
    let comps = |src: &Protorootoid, tgt: &Protorootoid| {
        gp.objects()
            .map(|a| PartialMap::identity_between(tgt.ground(a).clone(), src.ground(a).clone()))
            .collect::<Result<Vec<_>>>()
    };
    let there = PrdMorphism {
        mu: comps(&lk, &target)?,
        source: Arc::clone(&lk),
        target: Arc::clone(&target),
        functor: GroupoidFunctor::identity(gp),
    };
    let back = PrdMorphism {
        mu: comps(&target, &lk)?,
        source: target,
        target: lk,
        functor: GroupoidFunctor::identity(gp),
    };
    for f in [&there, &back] {
        check_prd_morphism(f).map_err(|v| Error::Precondition(v.describe(f)))?;
    }
    for round in [there.then(&back)?, back.then(&there)?] {
        if !round.mu.iter().all(PartialMap::is_identity) {
            return Err(Error::Precondition(
                "comparison maps are not mutually inverse".into(),
            ));
        }
    }
    Ok(there)
}

/// A morphism of signed groupoid-sets over the identity functor, given by
/// per-object root bijections `ν_a: Φ(a) -> Ψ(a)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedIsomorphism {
    pub components: Vec<Vec<usize>>,
}

/// Checks bijectivity, negation- and positivity-compatibility and naturality.
pub fn check_signed_isomorphism(
    src: &SignedGroupoidSet,
    tgt: &SignedGroupoidSet,
    iso: &SignedIsomorphism,
) -> Result<()> {
    let gp = src.groupoid();
    let bad = |s: String| Err(Error::InvalidSigned(s));
    if tgt.groupoid().num_morphisms() != gp.num_morphisms()
        || iso.components.len() != gp.num_objects()
    {
        return bad("signed sets live over different groupoids".into());
    }
    for a in gp.objects() {
        let nu = &iso.components[a.0];
        let n = src.num_roots(a);
        if nu.len() != n || tgt.num_roots(a) != n {
            return bad(format!(
                "component at `{}` has the wrong size",
                gp.object_label(a)
            ));
        }
        let mut seen = FixedBitSet::with_capacity(n);
        for (i, &x) in nu.iter().enumerate() {
            if x >= n || seen.put(x) {
                return bad(format!(
                    "component at `{}` is not a bijection",
                    gp.object_label(a)
                ));
            }
            if nu[i ^ 1] != x ^ 1 {
                return bad(format!(
                    "component at `{}` does not commute with negation",
                    gp.object_label(a)
                ));
            }
            if src.positive(a).contains(i) != tgt.positive(a).contains(x) {
                return bad(format!(
                    "component at `{}` does not preserve positive roots",
                    gp.object_label(a)
                ));
            }
        }
    }
    for g in gp.morphisms() {
        let (b, a) = (gp.dom(g), gp.cod(g));
        for i in 0..src.num_roots(b) {
            if iso.components[a.0][src.act(g, i)] != tgt.act(g, iso.components[b.0][i]) {
                return bad(format!("component is not natural at `{}`", gp.label(g)));
            }
        }
    }
    Ok(())
}

/// The comparison `R -> 𝔎𝔏(R)`, `α ↦ (π α, sign of α relative to Φ₊)`, checked.
pub fn kl_comparison(r: &SignedGroupoidSet) -> Result<(SignedGroupoidSet, SignedIsomorphism)> {
    let kl = k_functor(&l_functor(r)?)?;
    let components = r
        .groupoid()
        .objects()
        .map(|a| {
            (0..r.num_roots(a))
                .map(|i| (i / 2) * 2 + usize::from(!r.positive(a).contains(i)))
                .collect()
        })
        .collect();
    let iso = SignedIsomorphism { components };
    check_signed_isomorphism(r, &kl, &iso)?;
    Ok((kl, iso))
}

/// Why a signed groupoid-set is not rootoidal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SignedFailure {
    /// `Φ_g = ∅` for a non-identity `g`.
    NotStronglyFaithful { g: Mor },
    /// Two inversion sets without a meet in the weak order.
    MissingMeet { object: Obj, x: Mor, y: Mor },
    /// `A₁, A₂` disjoint from `B` whose join is not.
    JoinNotOrthogonal {
        object: Obj,
        a1: Mor,
        a2: Mor,
        b: Mor,
    },
}

impl SignedFailure {
    pub fn describe(&self, r: &SignedGroupoidSet) -> String {
        let gp = r.groupoid();
        match self {
            SignedFailure::NotStronglyFaithful { g } => {
                format!("(i) fails: Phi_{} is empty", gp.label(*g))
            }
            SignedFailure::MissingMeet { object, x, y } => format!(
                "(ii) fails at `{}`: Phi_{} and Phi_{} have no meet",
                gp.object_label(*object),
                gp.label(*x),
                gp.label(*y)
            ),
            SignedFailure::JoinNotOrthogonal { object, a1, a2, b } => format!(
                "(iii) fails at `{}`: Phi_{} and Phi_{} miss Phi_{} but their join does not",
                gp.object_label(*object),
                gp.label(*a1),
                gp.label(*a2),
                gp.label(*b)
            ),
        }
    }
}

/// Conditions (i)–(iii) on the weak orders `{Φ_g}` of the positive roots.
pub fn rootoidal_signed_check(r: &SignedGroupoidSet) -> Result<Option<SignedFailure>> {
    let gp = r.groupoid();
    for g in gp.morphisms() {
        if !gp.is_identity(g) && r.phi(g).is_clear() {
            return Ok(Some(SignedFailure::NotStronglyFaithful { g }));
        }
    }
    let grounds = r.root_grounds()?;
    for a in gp.objects() {
        let star = gp.star(a);
        let values: Vec<SetElem> = star
            .iter()
            .map(|&g| grounds[a.0].elem_from_indices(r.phi(g).ones()))
            .collect::<Result<_>>()?;
        let poset = FinitePoset::from_relation(values.len(), |i, j| {
            values[i].bits().is_subset(values[j].bits())
        });
        if let Some((i, j)) = meet_failure(&poset) {
            return Ok(Some(SignedFailure::MissingMeet {
                object: a,
                x: star[i],
                y: star[j],
            }));
        }
        if let Some((i, j, k)) = jop_pair_failure(&values, &poset) {
            return Ok(Some(SignedFailure::JoinNotOrthogonal {
                object: a,
                a1: star[i],
                a2: star[j],
                b: star[k],
            }));
        }
    }
    Ok(None)
}

/// A principal protorootoid rewritten over the orbits of its simple values,
/// with the comparison isomorphisms between the abridgements.
#[derive(Clone, Debug)]
pub struct SetForm {
    pub set: SetProtorootoid,
    /// `𝔄𝔍(set) -> 𝔄(P)`.
    pub forward: PrdMorphism,
    /// `𝔄(P) -> 𝔄𝔍(set)`.
    pub backward: PrdMorphism,
}

pub fn to_set_protorootoid(p: &Protorootoid) -> Result<SetForm> {
    let report = classify(p);
    if !report.principal {
        return Err(Error::Precondition("protorootoid is not principal".into()));
    }
    let gp = p.groupoid();
    let mut atoms: Vec<Vec<SetElem>> = vec![Vec::new(); gp.num_objects()];
    for &s in &report.simple_morphisms {
        let b = gp.cod(s);
        for g in gp.morphisms().filter(|&g| gp.dom(g) == b) {
            let x = p.act(g, p.n(s))?;
            let list = &mut atoms[gp.cod(g).0];
            if !list.contains(&x) {
                list.push(x);
            }
        }
    }
    for list in &mut atoms {
        list.sort_by_key(SetElem::sort_key);
    }
    let grounds = gp
        .objects()
        .map(|a| {
            GroundSet::new(
                gp.object_label(a),
                atoms[a.0].iter().map(|x| x.sorted_labels().join(",")),
            )
        })
        .collect::<Result<Vec<_>>>()?;
    let perms =
        gp.morphisms()
            .map(|g| {
                let a = gp.cod(g);
                atoms[gp.dom(g).0]
                    .iter()
                    .map(|x| {
                        let y = p.act(g, x)?;
                        atoms[a.0].iter().position(|z| *z == y).ok_or_else(|| {
                            Error::Precondition("simple orbits are not stable".into())
                        })
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
    let rep = PowerSetRep::new(gp, grounds.clone(), perms, None)?;
    let values = gp
        .morphisms()
        .map(|g| {
            let a = gp.cod(g);
            let n = p.n(g);
            grounds[a.0].elem_from_indices(
                (0..atoms[a.0].len()).filter(|&i| atoms[a.0][i].bits().is_subset(n.bits())),
            )
        })
        .collect::<Result<Vec<_>>>()?;
    let set = SetProtorootoid::new(Protorootoid::new(
        Arc::clone(p.groupoid_arc()),
        rep,
        values,
    )?)?;

    let ab_set = Arc::new(abridge(set.inner()));
    let ab_p = Arc::new(abridge(p));
    let forward_mu = gp
        .objects()
        .map(|a| {
            let map = (0..p.ground(a).len())
                .map(|y| atoms[a.0].iter().position(|x| x.contains(y)))
                .collect();
            PartialMap::new(p.ground(a).clone(), grounds[a.0].clone(), map)
        })
        .collect::<Result<Vec<_>>>()?;
    let backward_mu = gp
        .objects()
        .map(|a| {
            let map = atoms[a.0].iter().map(|x| x.indices().next()).collect();
            PartialMap::new(grounds[a.0].clone(), p.ground(a).clone(), map)
        })
        .collect::<Result<Vec<_>>>()?;
    let forward = PrdMorphism {
        source: Arc::clone(&ab_set),
        target: Arc::clone(&ab_p),
        functor: GroupoidFunctor::identity(gp),
        mu: forward_mu,
    };
    let backward = PrdMorphism {
        source: Arc::clone(&ab_p),
        target: Arc::clone(&ab_set),
        functor: GroupoidFunctor::identity(gp),
        mu: backward_mu,
    };
    for f in [&forward, &backward] {
        check_prd_morphism(f).map_err(|v| Error::Precondition(v.describe(f)))?;
    }
    for (round, base) in [
        (forward.then(&backward)?, &ab_set),
        (backward.then(&forward)?, &ab_p),
    ] {
        for a in gp.objects() {
            for blk in base.ring(a).blocks() {
                if round.mu_apply(a, blk)? != *blk {
                    return Err(Error::Precondition(format!(
                        "abridgements are not isomorphic at `{}`",
                        gp.object_label(a)
                    )));
                }
            }
        }
    }
    Ok(SetForm {
        set,
        forward,
        backward,
    })
}
