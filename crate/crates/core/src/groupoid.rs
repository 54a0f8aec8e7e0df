//! Finite groupoids, their stars, components, generation and coverings.
//!
//! Composition follows the convention `gh` = "first `h`, then `g`", defined
//! when `dom(g) = cod(h)`.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Obj(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mor(pub usize);

/// A finite groupoid with a full composition table on composable pairs.
#[derive(Clone, Debug)]
pub struct Groupoid {
    obj_labels: Vec<String>,
    obj_index: HashMap<String, Obj>,
    mor_labels: Vec<String>,
    mor_index: HashMap<String, Mor>,
    dom: Vec<Obj>,
    cod: Vec<Obj>,
    identity: Vec<Mor>,
    inverse: Vec<Mor>,
    star: Vec<Vec<Mor>>,
    star_pos: Vec<usize>,
    comp: Vec<Vec<u32>>,
}

/// Incremental construction of a [`Groupoid`].
#[derive(Default)]
pub struct GroupoidBuilder {
    obj_labels: Vec<String>,
    obj_index: HashMap<String, Obj>,
    mor_labels: Vec<String>,
    mor_index: HashMap<String, Mor>,
    dom: Vec<Obj>,
    cod: Vec<Obj>,
}

impl GroupoidBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_object(&mut self, label: impl Into<String>) -> Result<Obj> {
        let label = label.into();
        let id = Obj(self.obj_labels.len());
        if self.obj_index.insert(label.clone(), id).is_some() {
            return Err(Error::DuplicateLabel(label));
        }
        self.obj_labels.push(label);
        Ok(id)
    }

    pub fn add_morphism(&mut self, label: impl Into<String>, dom: Obj, cod: Obj) -> Result<Mor> {
        let label = label.into();
        if dom.0 >= self.obj_labels.len() || cod.0 >= self.obj_labels.len() {
            return Err(Error::UnknownObject(format!("for morphism `{label}`")));
        }
        let id = Mor(self.mor_labels.len());
        if self.mor_index.insert(label.clone(), id).is_some() {
            return Err(Error::DuplicateLabel(label));
        }
        self.mor_labels.push(label);
        self.dom.push(dom);
        self.cod.push(cod);
        Ok(id)
    }

    pub fn object(&self, label: &str) -> Option<Obj> {
        self.obj_index.get(label).copied()
    }

    pub fn morphism(&self, label: &str) -> Option<Mor> {
        self.mor_index.get(label).copied()
    }

    /// Finishes construction. `identities[a]` is the identity at object `a`;
    /// `compose(g, h)` must return `gh` for every composable pair. The
    /// category and groupoid laws are verified; associativity only when
    /// `verify_associativity` is set.
    pub fn build(
        self,
        identities: Vec<Mor>,
        mut compose: impl FnMut(Mor, Mor) -> Option<Mor>,
        verify_associativity: bool,
    ) -> Result<Groupoid> {
        let n_obj = self.obj_labels.len();
        let n_mor = self.mor_labels.len();
        if identities.len() != n_obj {
            return Err(Error::InvalidGroupoid(format!(
                "{} identities given for {} objects",
                identities.len(),
                n_obj
            )));
        }
        for (a, &e) in identities.iter().enumerate() {
            if e.0 >= n_mor || self.dom[e.0] != Obj(a) || self.cod[e.0] != Obj(a) {
                return Err(Error::InvalidGroupoid(format!(
                    "identity of `{}` is not an endomorphism of it",
                    self.obj_labels[a]
                )));
            }
        }
        let mut star = vec![Vec::new(); n_obj];
        let mut star_pos = vec![0; n_mor];
        for m in 0..n_mor {
            let a = self.cod[m].0;
            star_pos[m] = star[a].len();
            star[a].push(Mor(m));
        }
        let mut comp = Vec::with_capacity(n_mor);
        for g in 0..n_mor {
            let b = self.dom[g].0;
            let mut row = Vec::with_capacity(star[b].len());
            for &h in &star[b] {
                let gh = compose(Mor(g), h).ok_or_else(|| {
                    Error::InvalidGroupoid(format!(
                        "composite of `{}` and `{}` is missing",
                        self.mor_labels[g], self.mor_labels[h.0]
                    ))
                })?;
                if gh.0 >= n_mor || self.cod[gh.0] != self.cod[g] || self.dom[gh.0] != self.dom[h.0]
                {
                    return Err(Error::InvalidGroupoid(format!(
                        "composite of `{}` and `{}` has the wrong type",
                        self.mor_labels[g], self.mor_labels[h.0]
                    )));
                }
                row.push(gh.0 as u32);
            }
            comp.push(row);
        }
        let mut gpd = Groupoid {
            obj_labels: self.obj_labels,
            obj_index: self.obj_index,
            mor_labels: self.mor_labels,
            mor_index: self.mor_index,
            dom: self.dom,
            cod: self.cod,
            identity: identities,
            inverse: vec![Mor(usize::MAX); n_mor],
            star,
            star_pos,
            comp,
        };
        for g in 0..n_mor {
            let g = Mor(g);
            let (a, b) = (gpd.cod(g), gpd.dom(g));
            if gpd.mul(g, gpd.identity(b)) != g || gpd.mul(gpd.identity(a), g) != g {
                return Err(Error::InvalidGroupoid(format!(
                    "identity law fails for `{}`",
                    gpd.label(g)
                )));
            }
        }
        for g in 0..n_mor {
            let g = Mor(g);
            let (a, b) = (gpd.cod(g), gpd.dom(g));
            let inv = gpd.star[b.0]
                .iter()
                .copied()
                .find(|&h| gpd.dom(h) == a && gpd.mul(g, h) == gpd.identity(a));
            match inv {
                Some(h) if gpd.mul(h, g) == gpd.identity(b) => gpd.inverse[g.0] = h,
                _ => {
                    return Err(Error::InvalidGroupoid(format!(
                        "`{}` has no two-sided inverse",
                        gpd.label(g)
                    )))
                }
            }
        }
        if verify_associativity {
            gpd.check_associativity()?;
        }
        Ok(gpd)
    }
}

impl Groupoid {
    /// The groupoid with no objects.
    pub fn empty() -> Groupoid {
        GroupoidBuilder::new()
            .build(Vec::new(), |_, _| None, false)
            .unwrap()
    }

    /// One object with only its identity.
    pub fn trivial(object: &str) -> Groupoid {
        Groupoid::from_group(object, &["1".to_string()], 0, |_, _| 0).unwrap()
    }

    /// A group as a one-object groupoid. `mult(i, j)` is the product of
    /// elements `i` and `j`; `identity` indexes the unit.
    pub fn from_group(
        object: &str,
        elements: &[String],
        identity: usize,
        mult: impl Fn(usize, usize) -> usize,
    ) -> Result<Groupoid> {
        let mut b = GroupoidBuilder::new();
        let o = b.add_object(object)?;
        for e in elements {
            b.add_morphism(e.clone(), o, o)?;
        }
        b.build(vec![Mor(identity)], |g, h| Some(Mor(mult(g.0, h.0))), false)
    }

    /// The simply connected groupoid on `objects` with exactly one morphism
    /// between any two of them, labelled by `label(cod, dom)`.
    pub fn simply_connected(
        objects: &[String],
        label: impl Fn(&str, &str) -> String,
    ) -> Result<Groupoid> {
        let n = objects.len();
        let mut b = GroupoidBuilder::new();
        for o in objects {
            b.add_object(o.clone())?;
        }
        for a in 0..n {
            for c in 0..n {
                b.add_morphism(label(&objects[a], &objects[c]), Obj(c), Obj(a))?;
            }
        }
        let idx = move |a: usize, c: usize| Mor(a * n + c);
        let ids = (0..n).map(|a| idx(a, a)).collect();
        b.build(
            ids,
            |g, h| {
                let (a, _) = (g.0 / n, g.0 % n);
                let (_, d) = (h.0 / n, h.0 % n);
                Some(idx(a, d))
            },
            false,
        )
    }

    /// Disjoint union; labels of part `k` are prefixed with `prefixes[k]`.
    pub fn disjoint_union(parts: &[&Groupoid], prefixes: &[&str]) -> Result<Groupoid> {
        let mut b = GroupoidBuilder::new();
        let mut obj_off = Vec::new();
        let mut mor_off = Vec::new();
        let (mut no, mut nm) = (0, 0);
        for (p, pre) in parts.iter().zip(prefixes) {
            obj_off.push(no);
            mor_off.push(nm);
            for l in &p.obj_labels {
                b.add_object(format!("{pre}{l}"))?;
            }
            no += p.num_objects();
            nm += p.num_morphisms();
        }
        for (k, (p, pre)) in parts.iter().zip(prefixes).enumerate() {
            for m in p.morphisms() {
                b.add_morphism(
                    format!("{pre}{}", p.label(m)),
                    Obj(p.dom(m).0 + obj_off[k]),
                    Obj(p.cod(m).0 + obj_off[k]),
                )?;
            }
        }
        let mut owner = Vec::new();
        for (k, p) in parts.iter().enumerate() {
            owner.extend(std::iter::repeat_n(k, p.num_morphisms()));
        }
        let mut ids = Vec::new();
        for (k, p) in parts.iter().enumerate() {
            ids.extend(p.identity.iter().map(|e| Mor(e.0 + mor_off[k])));
        }
        b.build(
            ids,
            |g, h| {
                let k = owner[g.0];
                if owner[h.0] != k {
                    return None;
                }
                let p = parts[k];
                p.compose(Mor(g.0 - mor_off[k]), Mor(h.0 - mor_off[k]))
                    .map(|m| Mor(m.0 + mor_off[k]))
            },
            false,
        )
    }

    pub fn num_objects(&self) -> usize {
        self.obj_labels.len()
    }

    pub fn num_morphisms(&self) -> usize {
        self.mor_labels.len()
    }

    pub fn objects(&self) -> impl Iterator<Item = Obj> + '_ {
        (0..self.num_objects()).map(Obj)
    }

    pub fn morphisms(&self) -> impl Iterator<Item = Mor> + '_ {
        (0..self.num_morphisms()).map(Mor)
    }

    pub fn object_label(&self, a: Obj) -> &str {
        &self.obj_labels[a.0]
    }

    pub fn label(&self, g: Mor) -> &str {
        &self.mor_labels[g.0]
    }

    pub fn object(&self, label: &str) -> Result<Obj> {
        self.obj_index
            .get(label)
            .copied()
            .ok_or_else(|| Error::UnknownObject(label.to_string()))
    }

    pub fn morphism(&self, label: &str) -> Result<Mor> {
        self.mor_index
            .get(label)
            .copied()
            .ok_or_else(|| Error::UnknownMorphism(label.to_string()))
    }

    pub fn dom(&self, g: Mor) -> Obj {
        self.dom[g.0]
    }

    pub fn cod(&self, g: Mor) -> Obj {
        self.cod[g.0]
    }

    pub fn identity(&self, a: Obj) -> Mor {
        self.identity[a.0]
    }

    pub fn is_identity(&self, g: Mor) -> bool {
        self.identity[self.cod[g.0].0] == g
    }

    /// The inverse `g*`.
    pub fn inverse(&self, g: Mor) -> Mor {
        self.inverse[g.0]
    }

    /// The left star: all morphisms with codomain `a`.
    pub fn star(&self, a: Obj) -> &[Mor] {
        &self.star[a.0]
    }

    /// Position of `g` in the star of its codomain.
    pub fn star_position(&self, g: Mor) -> usize {
        self.star_pos[g.0]
    }

    /// `star(G, a)` by object label.
    pub fn star_of(&self, label: &str) -> Result<&[Mor]> {
        Ok(self.star(self.object(label)?))
    }

    /// Morphisms `b -> a`.
    pub fn hom(&self, b: Obj, a: Obj) -> impl Iterator<Item = Mor> + '_ {
        self.star[a.0]
            .iter()
            .copied()
            .filter(move |&g| self.dom(g) == b)
    }

    /// `gh`, if composable.
    pub fn compose(&self, g: Mor, h: Mor) -> Option<Mor> {
        (self.dom(g) == self.cod(h)).then(|| self.mul(g, h))
    }

    /// `gh` for a composable pair.
    pub fn mul(&self, g: Mor, h: Mor) -> Mor {
        debug_assert_eq!(self.dom(g), self.cod(h));
        Mor(self.comp[g.0][self.star_pos[h.0]] as usize)
    }

    /// All composable pairs `(g, h)`.
    pub fn composable_pairs(&self) -> impl Iterator<Item = (Mor, Mor)> + '_ {
        self.morphisms()
            .flat_map(move |g| self.star(self.dom(g)).iter().map(move |&h| (g, h)))
    }

    pub fn check_associativity(&self) -> Result<()> {
        for f in self.morphisms() {
            for &g in self.star(self.dom(f)) {
                let fg = self.mul(f, g);
                for &h in self.star(self.dom(g)) {
                    if self.mul(fg, h) != self.mul(f, self.mul(g, h)) {
                        return Err(Error::InvalidGroupoid(format!(
                            "associativity fails for (`{}`, `{}`, `{}`)",
                            self.label(f),
                            self.label(g),
                            self.label(h)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Connected components of the object set.
    pub fn components(&self) -> Components {
        let n = self.num_objects();
        let mut comp = vec![usize::MAX; n];
        let mut components = Vec::new();
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            let k = components.len();
            let mut members = Vec::new();
            let mut queue = VecDeque::from([start]);
            comp[start] = k;
            while let Some(a) = queue.pop_front() {
                members.push(Obj(a));
                for &g in &self.star[a] {
                    let b = self.dom(g).0;
                    if comp[b] == usize::MAX {
                        comp[b] = k;
                        queue.push_back(b);
                    }
                }
            }
            members.sort();
            components.push(members);
        }
        let connected = components.len() == 1;
        let simply_connected = (0..n).all(|a| {
            let mut seen = FixedBitSet::with_capacity(n);
            self.star[a].iter().all(|&g| {
                let b = self.dom(g).0;
                let fresh = !seen.contains(b);
                seen.insert(b);
                fresh
            })
        });
        Components {
            object_component: comp,
            components,
            connected,
            simply_connected,
        }
    }

    /// The subgroupoid generated by `gens`, with the word length `l_S`
    /// computed by breadth-first search over `S` and `S*`.
    pub fn generated_subgroupoid(&self, gens: &[Mor]) -> Generated {
        let mut letters: Vec<Mor> = gens.iter().flat_map(|&s| [s, self.inverse(s)]).collect();
        letters.sort();
        letters.dedup();
        let mut by_cod: Vec<Vec<Mor>> = vec![Vec::new(); self.num_objects()];
        for &s in &letters {
            by_cod[self.cod(s).0].push(s);
        }
        let mut lengths = vec![None; self.num_morphisms()];
        let mut queue = VecDeque::new();
        for &e in &self.identity {
            lengths[e.0] = Some(0);
            queue.push_back(e);
        }
        while let Some(w) = queue.pop_front() {
            let l = lengths[w.0].unwrap();
            for &s in &by_cod[self.dom(w).0] {
                let ws = self.mul(w, s);
                if lengths[ws.0].is_none() {
                    lengths[ws.0] = Some(l + 1);
                    queue.push_back(ws);
                }
            }
        }
        let generates = lengths.iter().all(Option::is_some);
        Generated { lengths, generates }
    }

    /// The subgroupoid on all objects consisting of the morphisms in `members`
    /// (which must be closed under composition and inverses and contain all
    /// identities), with its inclusion functor.
    pub fn subgroupoid(&self, members: &FixedBitSet) -> Result<(Groupoid, GroupoidFunctor)> {
        let mut b = GroupoidBuilder::new();
        for l in &self.obj_labels {
            b.add_object(l.clone())?;
        }
        let mut new_id = vec![usize::MAX; self.num_morphisms()];
        let mut mor_map = Vec::new();
        for g in members.ones() {
            let g = Mor(g);
            new_id[g.0] = b.add_morphism(self.label(g), self.dom(g), self.cod(g))?.0;
            mor_map.push(g);
        }
        for &e in &self.identity {
            if new_id[e.0] == usize::MAX {
                return Err(Error::InvalidGroupoid(
                    "subgroupoid misses an identity".into(),
                ));
            }
        }
        let ids = self.identity.iter().map(|e| Mor(new_id[e.0])).collect();
        let sub = b.build(
            ids,
            |g, h| {
                let gh = self.mul(mor_map[g.0], mor_map[h.0]);
                (new_id[gh.0] != usize::MAX).then(|| Mor(new_id[gh.0]))
            },
            false,
        )?;
        let functor = GroupoidFunctor {
            obj_map: self.objects().collect(),
            mor_map,
        };
        Ok((sub, functor))
    }

    /// `(-1)^{l_S}` when it is a functor to `{1, -1}`.
    pub fn sign_character(&self, gens: &[Mor]) -> Result<SignCharacter> {
        let gen = self.generated_subgroupoid(gens);
        if !gen.generates {
            return Err(Error::Precondition(
                "generators do not generate the groupoid".into(),
            ));
        }
        let sign: Vec<i8> = gen
            .lengths
            .iter()
            .map(|l| if l.unwrap() % 2 == 0 { 1 } else { -1 })
            .collect();
        for (g, h) in self.composable_pairs() {
            if sign[self.mul(g, h).0] != sign[g.0] * sign[h.0] {
                return Ok(SignCharacter::Failure { g, h });
            }
        }
        Ok(SignCharacter::Character(sign))
    }

    /// The universal covering groupoid and its covering functor. Each
    /// component is rebuilt from the slice over its lexicographically least
    /// object `a`: objects are the morphisms `f: b -> a`, and the unique
    /// morphism `f -> f'` is `f'* f`.
    pub fn universal_cover(&self) -> (Groupoid, GroupoidFunctor) {
        let comps = self.components();
        let mut b = GroupoidBuilder::new();
        let mut obj_map = Vec::new();
        let mut fibres: Vec<Vec<Mor>> = Vec::new();
        let mut obj_of_slice = vec![usize::MAX; self.num_morphisms()];
        for members in &comps.components {
            let base = *members
                .iter()
                .min_by(|x, y| self.object_label(**x).cmp(self.object_label(**y)))
                .unwrap();
            let mut fibre: Vec<Mor> = self.star(base).to_vec();
            fibre.sort_by(|x, y| self.label(*x).cmp(self.label(*y)));
            for &f in &fibre {
                obj_of_slice[f.0] = b.add_object(self.label(f)).unwrap().0;
                obj_map.push(self.dom(f));
            }
            fibres.push(fibre);
        }
        let mut mor_map = Vec::new();
        let mut pair_index: HashMap<(usize, usize), Mor> = HashMap::new();
        let mut ids = vec![Mor(0); obj_map.len()];
        for fibre in &fibres {
            for &tgt in fibre {
                for &src in fibre {
                    let m = b
                        .add_morphism(
                            format!("{}<-{}", self.label(tgt), self.label(src)),
                            Obj(obj_of_slice[src.0]),
                            Obj(obj_of_slice[tgt.0]),
                        )
                        .unwrap();
                    pair_index.insert((obj_of_slice[tgt.0], obj_of_slice[src.0]), m);
                    mor_map.push(self.mul(self.inverse(tgt), src));
                    if tgt == src {
                        ids[obj_of_slice[src.0]] = m;
                    }
                }
            }
        }
        let ends: Vec<(usize, usize)> = {
            let mut v = vec![(0, 0); pair_index.len()];
            for (&(t, s), m) in &pair_index {
                v[m.0] = (t, s);
            }
            v
        };
        let cover = b
            .build(
                ids,
                |g, h| {
                    let (t, _) = ends[g.0];
                    let (_, s) = ends[h.0];
                    pair_index.get(&(t, s)).copied()
                },
                false,
            )
            .expect("slice construction yields a groupoid");
        (cover, GroupoidFunctor { obj_map, mor_map })
    }
}

/// Connected components and the connectivity flags.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Components {
    pub object_component: Vec<usize>,
    pub components: Vec<Vec<Obj>>,
    /// Exactly one component (the empty groupoid is not connected).
    pub connected: bool,
    /// At most one morphism between any two objects.
    pub simply_connected: bool,
}

/// Membership and word length in a generated subgroupoid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generated {
    pub lengths: Vec<Option<usize>>,
    pub generates: bool,
}

impl Generated {
    pub fn contains(&self, g: Mor) -> bool {
        self.lengths[g.0].is_some()
    }

    pub fn length(&self, g: Mor) -> Option<usize> {
        self.lengths[g.0]
    }

    pub fn members(&self) -> FixedBitSet {
        let mut s = FixedBitSet::with_capacity(self.lengths.len());
        for (i, l) in self.lengths.iter().enumerate() {
            if l.is_some() {
                s.insert(i);
            }
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SignCharacter {
    Character(Vec<i8>),
    /// A composable pair on which the parity of the length is not multiplicative.
    Failure {
        g: Mor,
        h: Mor,
    },
}

/// A functor between finite groupoids given on objects and morphisms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupoidFunctor {
    pub obj_map: Vec<Obj>,
    pub mor_map: Vec<Mor>,
}

impl GroupoidFunctor {
    pub fn identity(g: &Groupoid) -> Self {
        GroupoidFunctor {
            obj_map: g.objects().collect(),
            mor_map: g.morphisms().collect(),
        }
    }

    pub fn obj(&self, a: Obj) -> Obj {
        self.obj_map[a.0]
    }

    pub fn mor(&self, g: Mor) -> Mor {
        self.mor_map[g.0]
    }

    /// Verifies that this is a functor `src -> tgt`.
    pub fn check(&self, src: &Groupoid, tgt: &Groupoid) -> Result<()> {
        if self.obj_map.len() != src.num_objects() || self.mor_map.len() != src.num_morphisms() {
            return Err(Error::InvalidFunctor(
                "map sizes do not match the source".into(),
            ));
        }
        if self.obj_map.iter().any(|a| a.0 >= tgt.num_objects())
            || self.mor_map.iter().any(|g| g.0 >= tgt.num_morphisms())
        {
            return Err(Error::InvalidFunctor("map leaves the target".into()));
        }
        for g in src.morphisms() {
            let fg = self.mor(g);
            if tgt.dom(fg) != self.obj(src.dom(g)) || tgt.cod(fg) != self.obj(src.cod(g)) {
                return Err(Error::InvalidFunctor(format!(
                    "`{}` is sent to a morphism of the wrong type",
                    src.label(g)
                )));
            }
        }
        for a in src.objects() {
            if self.mor(src.identity(a)) != tgt.identity(self.obj(a)) {
                return Err(Error::InvalidFunctor(format!(
                    "identity of `{}` is not preserved",
                    src.object_label(a)
                )));
            }
        }
        for (g, h) in src.composable_pairs() {
            if self.mor(src.mul(g, h)) != tgt.mul(self.mor(g), self.mor(h)) {
                return Err(Error::InvalidFunctor(format!(
                    "composite of `{}` and `{}` is not preserved",
                    src.label(g),
                    src.label(h)
                )));
            }
        }
        Ok(())
    }

    /// Whether every star map `star(a) -> star(F a)` is bijective.
    pub fn is_covering(&self, src: &Groupoid, tgt: &Groupoid) -> bool {
        src.objects().all(|a| {
            let fa = self.obj(a);
            let star = src.star(a);
            if star.len() != tgt.star(fa).len() {
                return false;
            }
            let mut seen = FixedBitSet::with_capacity(tgt.star(fa).len());
            star.iter().all(|&g| {
                let p = tgt.star_position(self.mor(g));
                let fresh = !seen.contains(p);
                seen.insert(p);
                fresh
            })
        })
    }

    pub fn is_object_surjective(&self, tgt: &Groupoid) -> bool {
        let mut seen = FixedBitSet::with_capacity(tgt.num_objects());
        for a in &self.obj_map {
            seen.insert(a.0);
        }
        seen.count_ones(..) == tgt.num_objects()
    }

    /// "First `self`, then `next`".
    pub fn then(&self, next: &GroupoidFunctor) -> GroupoidFunctor {
        GroupoidFunctor {
            obj_map: self.obj_map.iter().map(|&a| next.obj(a)).collect(),
            mor_map: self.mor_map.iter().map(|&g| next.mor(g)).collect(),
        }
    }
}

/// A composable sequence `[g1, ..., gn]` with `cod(g_{i+1}) = dom(g_i)`,
/// anchored at `cod(g1)` (or an explicit object when empty).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expression {
    anchor: Obj,
    morphisms: Vec<Mor>,
}

impl Expression {
    pub fn new(g: &Groupoid, anchor: Obj, morphisms: Vec<Mor>) -> Result<Self> {
        if anchor.0 >= g.num_objects() {
            return Err(Error::UnknownObject(format!("#{}", anchor.0)));
        }
        let mut cur = anchor;
        for &m in &morphisms {
            if m.0 >= g.num_morphisms() || g.cod(m) != cur {
                return Err(Error::InvalidExpression(format!(
                    "morphism #{} is not composable at `{}`",
                    m.0,
                    g.object_label(cur)
                )));
            }
            cur = g.dom(m);
        }
        Ok(Expression { anchor, morphisms })
    }

    pub fn anchor(&self) -> Obj {
        self.anchor
    }

    pub fn morphisms(&self) -> &[Mor] {
        &self.morphisms
    }

    pub fn len(&self) -> usize {
        self.morphisms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.morphisms.is_empty()
    }

    /// The value `g1 g2 ... gn` (the identity at the anchor when empty).
    pub fn value(&self, g: &Groupoid) -> Mor {
        self.morphisms
            .iter()
            .fold(g.identity(self.anchor), |acc, &m| g.mul(acc, m))
    }

    /// The value computed by folding from the right.
    pub fn value_right(&self, g: &Groupoid) -> Mor {
        match self.morphisms.last() {
            None => g.identity(self.anchor),
            Some(&last) => self.morphisms[..self.morphisms.len() - 1]
                .iter()
                .rev()
                .fold(last, |acc, &m| g.mul(m, acc)),
        }
    }
}

impl fmt::Display for Obj {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

impl fmt::Display for Mor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}
