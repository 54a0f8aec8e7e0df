//! Protorootoids: a groupoid, a representation in Boolean set algebras and a
//! 1-cocycle satisfying `N(gh) = N(g) + g N(h)`.

use std::collections::HashMap;
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::groupoid::{Expression, Groupoid, Mor, Obj};
use crate::poset::FinitePoset;
use crate::setalg::{GroundSet, SetElem, SubringPartition};

/// A representation of a groupoid by ground-set bijections, optionally
/// restricted to subrings of the power sets.
#[derive(Clone, Debug)]
pub struct PowerSetRep {
    grounds: Vec<GroundSet>,
    dom: Vec<Obj>,
    cod: Vec<Obj>,
    perms: Vec<Vec<u32>>,
    rings: Vec<SubringPartition>,
    proper_subrings: bool,
}

impl PowerSetRep {
    /// `perms[g][i]` is the image in `ground(cod g)` of point `i` of `ground(dom g)`.
    pub fn new(
        groupoid: &Groupoid,
        grounds: Vec<GroundSet>,
        perms: Vec<Vec<usize>>,
        subrings: Option<Vec<SubringPartition>>,
    ) -> Result<Self> {
        if grounds.len() != groupoid.num_objects() {
            return Err(Error::InvalidRepresentation(format!(
                "{} ground sets for {} objects",
                grounds.len(),
                groupoid.num_objects()
            )));
        }
        if perms.len() != groupoid.num_morphisms() {
            return Err(Error::InvalidRepresentation(format!(
                "{} action tables for {} morphisms",
                perms.len(),
                groupoid.num_morphisms()
            )));
        }
        for i in 0..grounds.len() {
            for j in 0..i {
                if grounds[i] == grounds[j] {
                    return Err(Error::InvalidRepresentation(format!(
                        "objects `{}` and `{}` share a ground set",
                        groupoid.object_label(Obj(j)),
                        groupoid.object_label(Obj(i))
                    )));
                }
            }
        }
        let mut packed = Vec::with_capacity(perms.len());
        for (m, p) in perms.into_iter().enumerate() {
            let g = Mor(m);
            let (b, a) = (groupoid.dom(g), groupoid.cod(g));
            let (nb, na) = (grounds[b.0].len(), grounds[a.0].len());
            if p.len() != nb || na != nb {
                return Err(Error::InvalidRepresentation(format!(
                    "action of `{}` is not a bijection between ground sets",
                    groupoid.label(g)
                )));
            }
            let mut seen = FixedBitSet::with_capacity(na);
            for &x in &p {
                if x >= na || seen.contains(x) {
                    return Err(Error::InvalidRepresentation(format!(
                        "action of `{}` is not a bijection",
                        groupoid.label(g)
                    )));
                }
                seen.insert(x);
            }
            packed.push(p.into_iter().map(|x| x as u32).collect::<Vec<u32>>());
        }
        for a in groupoid.objects() {
            let e = groupoid.identity(a);
            if packed[e.0]
                .iter()
                .enumerate()
                .any(|(i, &x)| x as usize != i)
            {
                return Err(Error::InvalidRepresentation(format!(
                    "identity of `{}` does not act trivially",
                    groupoid.object_label(a)
                )));
            }
        }
        for (g, h) in groupoid.composable_pairs() {
            let gh = groupoid.mul(g, h);
            let (pg, ph, pgh) = (&packed[g.0], &packed[h.0], &packed[gh.0]);
            if ph.iter().zip(pgh).any(|(&y, &z)| pg[y as usize] != z) {
                return Err(Error::InvalidRepresentation(format!(
                    "action is not functorial at (`{}`, `{}`)",
                    groupoid.label(g),
                    groupoid.label(h)
                )));
            }
        }
        let proper_subrings = subrings.is_some();
        let rings = match subrings {
            None => grounds.iter().map(SubringPartition::power_set).collect(),
            Some(s) => {
                if s.len() != grounds.len() {
                    return Err(Error::InvalidRepresentation(
                        "wrong number of subrings".into(),
                    ));
                }
                for (a, r) in s.iter().enumerate() {
                    if *r.ambient() != grounds[a] {
                        return Err(Error::InvalidRepresentation(format!(
                            "subring at `{}` lives over another ground set",
                            groupoid.object_label(Obj(a))
                        )));
                    }
                }
                s
            }
        };
        let rep = PowerSetRep {
            grounds,
            dom: groupoid.morphisms().map(|g| groupoid.dom(g)).collect(),
            cod: groupoid.morphisms().map(|g| groupoid.cod(g)).collect(),
            perms: packed,
            rings,
            proper_subrings,
        };
        if proper_subrings {
            for g in groupoid.morphisms() {
                let (b, a) = (rep.dom[g.0], rep.cod[g.0]);
                let target = &rep.rings[a.0];
                let source = &rep.rings[b.0];
                let image_ok = source.blocks().len() == target.blocks().len()
                    && source
                        .blocks()
                        .iter()
                        .all(|blk| target.is_atom(&rep.act_unchecked(g, blk)));
                if !image_ok {
                    return Err(Error::InvalidRepresentation(format!(
                        "action of `{}` does not map subring blocks onto subring blocks",
                        groupoid.label(g)
                    )));
                }
            }
        }
        Ok(rep)
    }

    /// Every object gets a copy of `labels` and every morphism acts as the identity.
    pub fn constant<S: AsRef<str>>(groupoid: &Groupoid, labels: &[S]) -> Result<Self> {
        let grounds = groupoid
            .objects()
            .map(|a| {
                GroundSet::new(
                    groupoid.object_label(a),
                    labels.iter().map(|l| l.as_ref().to_string()),
                )
            })
            .collect::<Result<Vec<_>>>()?;
        let perms = groupoid
            .morphisms()
            .map(|_| (0..labels.len()).collect())
            .collect();
        PowerSetRep::new(groupoid, grounds, perms, None)
    }

    /// Empty ground sets everywhere.
    pub fn trivial(groupoid: &Groupoid) -> Self {
        PowerSetRep::constant::<&str>(groupoid, &[]).expect("empty representation is valid")
    }

    pub fn ground(&self, a: Obj) -> &GroundSet {
        &self.grounds[a.0]
    }

    pub fn grounds(&self) -> &[GroundSet] {
        &self.grounds
    }

    /// The Boolean ring at `a` (the power set when no subring was given).
    pub fn ring(&self, a: Obj) -> &SubringPartition {
        &self.rings[a.0]
    }

    /// Whether subrings were specified explicitly.
    pub fn has_subrings(&self) -> bool {
        self.proper_subrings
    }

    pub fn perm(&self, g: Mor) -> &[u32] {
        &self.perms[g.0]
    }

    /// Image of `x` under the ground bijection of `g`.
    pub fn act(&self, g: Mor, x: &SetElem) -> Result<SetElem> {
        let b = self.dom[g.0];
        if *x.ground() != self.grounds[b.0] {
            return Err(Error::GroundMismatch(
                x.ground().owner().to_string(),
                self.grounds[b.0].owner().to_string(),
            ));
        }
        Ok(self.act_unchecked(g, x))
    }

    pub(crate) fn act_unchecked(&self, g: Mor, x: &SetElem) -> SetElem {
        let a = self.cod[g.0];
        let ground = &self.grounds[a.0];
        ground.elem_from_bits(self.act_bits(g, x.bits()))
    }

    pub(crate) fn act_bits(&self, g: Mor, x: &FixedBitSet) -> FixedBitSet {
        let a = self.cod[g.0];
        let p = &self.perms[g.0];
        let mut out = FixedBitSet::with_capacity(self.grounds[a.0].len());
        for i in x.ones() {
            out.insert(p[i] as usize);
        }
        out
    }

    /// The same representation with the rings replaced by `subrings`.
    pub fn with_subrings(
        &self,
        groupoid: &Groupoid,
        subrings: Vec<SubringPartition>,
    ) -> Result<Self> {
        PowerSetRep::new(
            groupoid,
            self.grounds.clone(),
            self.perms
                .iter()
                .map(|p| p.iter().map(|&x| x as usize).collect())
                .collect(),
            Some(subrings),
        )
    }
}

/// Evidence that a family of values is not a cocycle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CocycleWitness {
    pub g: Mor,
    pub h: Mor,
    /// `N(gh)`
    pub lhs: SetElem,
    /// `N(g) + g N(h)`
    pub rhs: SetElem,
}

fn validate_values(groupoid: &Groupoid, rep: &PowerSetRep, values: &[SetElem]) -> Result<()> {
    if values.len() != groupoid.num_morphisms() {
        return Err(Error::InvalidRepresentation(format!(
            "{} cocycle values for {} morphisms",
            values.len(),
            groupoid.num_morphisms()
        )));
    }
    for g in groupoid.morphisms() {
        let a = groupoid.cod(g);
        let v = &values[g.0];
        if v.ground() != rep.ground(a) {
            return Err(Error::GroundMismatch(
                v.ground().owner().to_string(),
                rep.ground(a).owner().to_string(),
            ));
        }
        if !rep.ring(a).contains(v) {
            return Err(Error::InvalidRepresentation(format!(
                "N({}) = {} is not in the ring at `{}`",
                groupoid.label(g),
                v,
                groupoid.object_label(a)
            )));
        }
    }
    Ok(())
}

/// The first composable pair violating the cocycle identity, if any.
pub fn find_cocycle_violation(
    groupoid: &Groupoid,
    rep: &PowerSetRep,
    values: &[SetElem],
) -> Option<CocycleWitness> {
    groupoid.composable_pairs().find_map(|(g, h)| {
        let gh = groupoid.mul(g, h);
        let mut rhs = rep.act_bits(g, values[h.0].bits());
        rhs.symmetric_difference_with(values[g.0].bits());
        (rhs != *values[gh.0].bits()).then(|| CocycleWitness {
            g,
            h,
            lhs: values[gh.0].clone(),
            rhs: rep.ground(groupoid.cod(g)).elem_from_bits(rhs),
        })
    })
}

/// Verifies the cocycle identity on every composable pair and builds the protorootoid.
pub fn check_cocycle(
    groupoid: Arc<Groupoid>,
    rep: PowerSetRep,
    values: Vec<SetElem>,
) -> Result<Protorootoid> {
    validate_values(&groupoid, &rep, &values)?;
    if let Some(w) = find_cocycle_violation(&groupoid, &rep, &values) {
        return Err(Error::CocycleViolation {
            g: groupoid.label(w.g).to_string(),
            h: groupoid.label(w.h).to_string(),
            lhs: w.lhs.to_string(),
            rhs: w.rhs.to_string(),
        });
    }
    Ok(Protorootoid {
        groupoid,
        rep,
        cocycle: values,
    })
}

/// `N(g) = x_a + g(x_b)` for `g: b -> a`.
pub fn coboundary(
    groupoid: &Groupoid,
    rep: &PowerSetRep,
    family: &[SetElem],
) -> Result<Vec<SetElem>> {
    if family.len() != groupoid.num_objects() {
        return Err(Error::InvalidRepresentation(
            "family must have one value per object".into(),
        ));
    }
    for a in groupoid.objects() {
        if !rep.ring(a).contains(&family[a.0]) {
            return Err(Error::InvalidRepresentation(format!(
                "x at `{}` is not in the ring",
                groupoid.object_label(a)
            )));
        }
    }
    groupoid
        .morphisms()
        .map(|g| {
            let xb = rep.act(g, &family[groupoid.dom(g).0])?;
            family[groupoid.cod(g).0].sum(&xb)
        })
        .collect()
}

/// Outcome of [`trivialize`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Trivialization {
    /// A family `x_a` whose coboundary is the cocycle.
    Family(Vec<SetElem>),
    /// Some component is not simply connected.
    NotSimplyConnected { object: Obj },
}

/// A protorootoid with its cocycle verified.
#[derive(Clone, Debug)]
pub struct Protorootoid {
    groupoid: Arc<Groupoid>,
    rep: PowerSetRep,
    cocycle: Vec<SetElem>,
}

impl Protorootoid {
    pub fn new(groupoid: Arc<Groupoid>, rep: PowerSetRep, values: Vec<SetElem>) -> Result<Self> {
        check_cocycle(groupoid, rep, values)
    }

    /// The zero cocycle for `rep`.
    pub fn zero(groupoid: Arc<Groupoid>, rep: PowerSetRep) -> Self {
        let values = groupoid
            .morphisms()
            .map(|g| rep.ground(groupoid.cod(g)).empty_elem())
            .collect();
        Protorootoid {
            groupoid,
            rep,
            cocycle: values,
        }
    }

    pub fn groupoid(&self) -> &Groupoid {
        &self.groupoid
    }

    pub fn groupoid_arc(&self) -> &Arc<Groupoid> {
        &self.groupoid
    }

    pub fn rep(&self) -> &PowerSetRep {
        &self.rep
    }

    pub fn cocycle(&self) -> &[SetElem] {
        &self.cocycle
    }

    /// `N(g)`.
    pub fn n(&self, g: Mor) -> &SetElem {
        &self.cocycle[g.0]
    }

    pub fn ring(&self, a: Obj) -> &SubringPartition {
        self.rep.ring(a)
    }

    pub fn ground(&self, a: Obj) -> &GroundSet {
        self.rep.ground(a)
    }

    pub fn act(&self, g: Mor, x: &SetElem) -> Result<SetElem> {
        self.rep.act(g, x)
    }

    /// `l_N(g)`: the ring rank of `N(g)`.
    pub fn l_n(&self, g: Mor) -> usize {
        self.ring(self.groupoid.cod(g)).rank(self.n(g))
    }

    /// The dot action `g . x = N(g) + g x`.
    pub fn dot_action(&self, g: Mor, x: &SetElem) -> Result<SetElem> {
        self.n(g).sum(&self.rep.act(g, x)?)
    }

    /// `N(g) ∩ N(h) = ∅` for morphisms with a common codomain.
    pub fn orthogonal(&self, g: Mor, h: Mor) -> Result<bool> {
        let gp = &self.groupoid;
        if gp.cod(g) != gp.cod(h) {
            return Err(Error::Precondition(format!(
                "`{}` and `{}` have different codomains",
                gp.label(g),
                gp.label(h)
            )));
        }
        self.n(g).is_disjoint(self.n(h))
    }

    /// The terms `g1...g_{i-1} N(g_i)` of an expression, all over the anchor's ground.
    pub fn expression_terms(&self, e: &Expression) -> Vec<SetElem> {
        let gp = &self.groupoid;
        let mut prefix = gp.identity(e.anchor());
        let mut out = Vec::with_capacity(e.len());
        for &m in e.morphisms() {
            out.push(self.rep.act_unchecked(prefix, self.n(m)));
            prefix = gp.mul(prefix, m);
        }
        out
    }

    /// Whether the terms of the expression are pairwise disjoint.
    pub fn is_compatible(&self, e: &Expression) -> bool {
        let mut seen = FixedBitSet::with_capacity(self.ground(e.anchor()).len());
        for t in self.expression_terms(e) {
            if !t.bits().is_disjoint(&seen) {
                return false;
            }
            seen.union_with(t.bits());
        }
        true
    }

    /// The chain form `N(g1) ⊆ N(g1 g2) ⊆ ... ⊆ N(g1...gn)`, equivalent to
    /// [`is_compatible`](Self::is_compatible).
    pub fn is_compatible_chain(&self, e: &Expression) -> bool {
        let gp = &self.groupoid;
        let mut prefix = gp.identity(e.anchor());
        for &m in e.morphisms() {
            let next = gp.mul(prefix, m);
            if !self.n(prefix).bits().is_subset(self.n(next).bits()) {
                return false;
            }
            prefix = next;
        }
        true
    }

    /// The first pair `(g, h)` of distinct morphisms with a common codomain and `N(g) = N(h)`.
    pub fn faithfulness_witness(&self) -> Option<(Mor, Mor)> {
        let gp = &self.groupoid;
        for a in gp.objects() {
            let mut seen: HashMap<&SetElem, Mor> = HashMap::new();
            for &g in gp.star(a) {
                if let Some(&h) = seen.get(self.n(g)) {
                    return Some((h, g));
                }
                seen.insert(self.n(g), g);
            }
        }
        None
    }

    /// `N(g) = ∅` only for identities.
    pub fn is_faithful(&self) -> bool {
        self.groupoid
            .morphisms()
            .all(|g| self.groupoid.is_identity(g) || !self.n(g).is_empty())
    }

    pub fn weak_order(&self, a: Obj) -> WeakOrder {
        WeakOrder::build(self, a)
    }

    /// Weak orders at every object, in object order.
    pub fn weak_orders(&self) -> Vec<WeakOrder> {
        let objs: Vec<Obj> = self.groupoid.objects().collect();
        objs.par_iter().map(|&a| self.weak_order(a)).collect()
    }

    /// Expresses the cocycle as a coboundary when every component is simply connected.
    pub fn trivialize(&self) -> Trivialization {
        let gp = &self.groupoid;
        let comps = gp.components();
        if !comps.simply_connected {
            let bad = gp
                .objects()
                .find(|&a| {
                    let mut doms: Vec<Obj> = gp.star(a).iter().map(|&g| gp.dom(g)).collect();
                    let n = doms.len();
                    doms.sort();
                    doms.dedup();
                    doms.len() != n
                })
                .unwrap();
            return Trivialization::NotSimplyConnected { object: bad };
        }
        let mut family: Vec<Option<SetElem>> = vec![None; gp.num_objects()];
        for members in &comps.components {
            let base = *members
                .iter()
                .min_by(|x, y| gp.object_label(**x).cmp(gp.object_label(**y)))
                .unwrap();
            for &f in gp.star(base) {
                let c = gp.dom(f);
                family[c.0] = Some(self.rep.act_unchecked(gp.inverse(f), self.n(f)));
            }
        }
        Trivialization::Family(family.into_iter().map(Option::unwrap).collect())
    }

    /// The transport of `(ring at a, weak order at a)` along `g: a -> b`.
    pub fn translate_protomesh(&self, g: Mor) -> Result<ProtomeshTranslation> {
        let gp = &self.groupoid;
        let (a, b) = (gp.dom(g), gp.cod(g));
        let gamma = self.n(g).clone();
        let mut pairs = Vec::new();
        for &x in gp.star(a) {
            let image = self.rep.act_unchecked(g, self.n(x));
            let expected = gamma.sum(self.n(gp.mul(g, x)))?;
            if image != expected {
                return Err(Error::Precondition(format!(
                    "translation along `{}` fails at `{}`",
                    gp.label(g),
                    gp.label(x)
                )));
            }
            pairs.push((self.n(x).clone(), image));
        }
        let source = Protomesh::new(
            self.ring(a).clone(),
            pairs.iter().map(|p| p.0.clone()).collect(),
        )?;
        let target_l: Vec<SetElem> = gp.star(b).iter().map(|&y| self.n(y).clone()).collect();
        let target = Protomesh::new(self.ring(b).clone(), target_l)?.shifted(&gamma)?;
        let image = Protomesh::new(
            self.ring(b).clone(),
            pairs.iter().map(|p| p.1.clone()).collect(),
        )?;
        if image.members != target.members {
            return Err(Error::Precondition(format!(
                "translation along `{}` is not onto the shifted weak order",
                gp.label(g)
            )));
        }
        pairs.sort_by_key(|p| p.0.sort_key());
        pairs.dedup();
        Ok(ProtomeshTranslation {
            gamma,
            source,
            target,
            pairs,
        })
    }
}

/// A Boolean ring together with a subset of it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Protomesh {
    pub ring: SubringPartition,
    /// Distinct members in canonical order.
    pub members: Vec<SetElem>,
}

impl Protomesh {
    pub fn new(ring: SubringPartition, mut members: Vec<SetElem>) -> Result<Self> {
        for m in &members {
            if !ring.contains(m) {
                return Err(Error::InvalidRepresentation(format!(
                    "{m} is not in the ring"
                )));
            }
        }
        members.sort_by_key(|m| m.sort_key());
        members.dedup();
        Ok(Protomesh { ring, members })
    }

    /// `Γ + L`.
    pub fn shifted(&self, gamma: &SetElem) -> Result<Protomesh> {
        let members = self
            .members
            .iter()
            .map(|m| gamma.sum(m))
            .collect::<Result<Vec<_>>>()?;
        Protomesh::new(self.ring.clone(), members)
    }
}

/// The isomorphism `(Λ_a, L_a) -> (Λ_b, Γ + L_b)` induced by a morphism.
#[derive(Clone, Debug)]
pub struct ProtomeshTranslation {
    pub gamma: SetElem,
    pub source: Protomesh,
    pub target: Protomesh,
    /// `(N(x), g N(x))` for the distinct values `N(x)`.
    pub pairs: Vec<(SetElem, SetElem)>,
}

/// The poset of distinct cocycle values on a star, ordered by containment,
/// with the morphisms witnessing each value.
#[derive(Clone, Debug)]
pub struct WeakOrder {
    object: Obj,
    values: Vec<SetElem>,
    witnesses: Vec<Vec<Mor>>,
    index: HashMap<Mor, usize>,
    poset: FinitePoset,
}

impl WeakOrder {
    fn build(p: &Protorootoid, a: Obj) -> WeakOrder {
        let gp = p.groupoid();
        let mut groups: HashMap<&SetElem, Vec<Mor>> = HashMap::new();
        for &g in gp.star(a) {
            groups.entry(p.n(g)).or_default().push(g);
        }
        let mut entries: Vec<(SetElem, Vec<Mor>)> =
            groups.into_iter().map(|(k, v)| (k.clone(), v)).collect();
        entries.sort_by_key(|(k, _)| k.sort_key());
        let mut index = HashMap::new();
        let mut values = Vec::with_capacity(entries.len());
        let mut witnesses = Vec::with_capacity(entries.len());
        for (i, (v, ws)) in entries.into_iter().enumerate() {
            for &g in &ws {
                index.insert(g, i);
            }
            values.push(v);
            witnesses.push(ws);
        }
        let poset = FinitePoset::from_relation(values.len(), |i, j| {
            values[i].bits().is_subset(values[j].bits())
        });
        WeakOrder {
            object: a,
            values,
            witnesses,
            index,
            poset,
        }
    }

    pub fn object(&self) -> Obj {
        self.object
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// The distinct values, sorted by size and then by bit indices.
    pub fn values(&self) -> &[SetElem] {
        &self.values
    }

    pub fn value(&self, i: usize) -> &SetElem {
        &self.values[i]
    }

    /// Morphisms of the star with value `i`.
    pub fn witnesses(&self, i: usize) -> &[Mor] {
        &self.witnesses[i]
    }

    /// Index of the value `N(g)` for `g` in the star.
    pub fn index_of(&self, g: Mor) -> Option<usize> {
        self.index.get(&g).copied()
    }

    /// Index of a value, if it occurs.
    pub fn find(&self, v: &SetElem) -> Option<usize> {
        self.values.iter().position(|x| x == v)
    }

    pub fn poset(&self) -> &FinitePoset {
        &self.poset
    }

    /// Cover relation as index pairs `(lower, upper)`.
    pub fn hasse(&self) -> Vec<(usize, usize)> {
        self.poset.covers()
    }

    /// Whether each value has a single witness.
    pub fn is_injective(&self) -> bool {
        self.witnesses.iter().all(|w| w.len() == 1)
    }

    /// `x ≤ y` in the weak preorder of the star.
    pub fn leq(&self, x: Mor, y: Mor) -> bool {
        self.poset.leq(self.index[&x], self.index[&y])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn zero_cocycle_is_valid() {
        let w = fixtures::coxeter_a2();
        let p = Protorootoid::zero(w.groupoid_arc().clone(), w.rep().clone());
        assert!(check_cocycle(
            p.groupoid_arc().clone(),
            p.rep().clone(),
            p.cocycle().to_vec()
        )
        .is_ok());
        assert!(!p.is_faithful());
        assert!(p.faithfulness_witness().is_some());
    }

    #[test]
    fn corrupted_cocycle_is_rejected() {
        let w = fixtures::coxeter_a2();
        let gp = w.groupoid();
        let r = gp.morphism("r").unwrap();
        let mut values = w.cocycle().to_vec();
        values[r.0] = w.ground(gp.cod(r)).elem_from_labels(["s"]).unwrap();
        let witness = find_cocycle_violation(gp, w.rep(), &values).unwrap();
        assert_ne!(witness.lhs, witness.rhs);
        assert!(matches!(
            check_cocycle(w.groupoid_arc().clone(), w.rep().clone(), values),
            Err(Error::CocycleViolation { .. })
        ));
    }

    #[test]
    fn a2_weak_order_and_actions() {
        let w = fixtures::coxeter_a2();
        let gp = w.groupoid();
        let a = Obj(0);
        let wo = w.weak_order(a);
        assert_eq!(wo.len(), 6);
        assert_eq!(wo.poset().height(), 3);
        assert_eq!(
            wo.value(wo.poset().maximum().unwrap()),
            &w.ground(a).full_elem()
        );
        assert!(w.is_faithful());
        let (r, s) = (gp.morphism("r").unwrap(), gp.morphism("s").unwrap());
        let rs = gp.morphism("rs").unwrap();
        assert_eq!(w.dot_action(r, w.n(s)).unwrap(), *w.n(rs));
        assert_eq!(w.n(rs).to_string(), "{r,rsr}");
        assert!(w.orthogonal(r, s).unwrap());
        assert!(!w.orthogonal(r, r).unwrap());
        let ok = Expression::new(gp, a, vec![r, s]).unwrap();
        let bad = Expression::new(gp, a, vec![r, r]).unwrap();
        assert!(w.is_compatible(&ok));
        assert!(!w.is_compatible(&bad));
        assert!(w.is_compatible(&Expression::new(gp, a, vec![]).unwrap()));
    }

    #[test]
    fn trivialize_simply_connected_round_trip() {
        let p = fixtures::set_system(&[&[], &[0], &[1], &[0, 1, 2]], 3);
        match p.trivialize() {
            Trivialization::Family(x) => {
                let n = coboundary(p.groupoid(), p.rep(), &x).unwrap();
                assert_eq!(n, p.cocycle());
            }
            other => panic!("expected a family, got {other:?}"),
        }
        let w = fixtures::coxeter_a2();
        assert!(matches!(
            w.trivialize(),
            Trivialization::NotSimplyConnected { .. }
        ));
    }

    #[test]
    fn a2_cocycle_is_not_a_coboundary() {
        let w = fixtures::coxeter_a2();
        let ground = w.ground(Obj(0)).clone();
        for mask in 0..(1usize << ground.len()) {
            let x = ground
                .elem_from_indices((0..ground.len()).filter(|i| mask & (1 << i) != 0))
                .unwrap();
            let n = coboundary(w.groupoid(), w.rep(), &[x]).unwrap();
            assert_ne!(n, w.cocycle());
        }
    }

    #[test]
    fn protomesh_translation_along_r() {
        let w = fixtures::coxeter_a2();
        let r = w.groupoid().morphism("r").unwrap();
        let t = w.translate_protomesh(r).unwrap();
        assert_eq!(t.gamma.to_string(), "{r}");
        assert_eq!(t.pairs.len(), 6);
        assert_eq!(t.source.members.len(), t.target.members.len());
        let id = w.groupoid().identity(Obj(0));
        let t = w.translate_protomesh(id).unwrap();
        assert!(t.gamma.is_empty());
        assert!(t.pairs.iter().all(|(x, y)| x == y));
    }
}
