//! Morphisms of protorootoids, their grades, inverse images, coverings and
//! the duality of complete rootoids.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::classify::{classify, is_rootoid, PropertyReport};
use crate::error::{Error, Result};
use crate::groupoid::{Groupoid, GroupoidFunctor, Mor, Obj};
use crate::prd::{PowerSetRep, Protorootoid, WeakOrder};
use crate::setalg::{PartialMap, SetElem, SubringPartition};

/// A morphism `(α, μ)`: a functor on groupoids and, per source object `a`,
/// a ring homomorphism `μ_a: Λ(a) -> Λ'(α a)` encoded as a partial map
/// from the target ground to the source ground.
#[derive(Clone, Debug)]
pub struct PrdMorphism {
    pub source: Arc<Protorootoid>,
    pub target: Arc<Protorootoid>,
    pub functor: GroupoidFunctor,
    pub mu: Vec<PartialMap>,
}

/// Why a candidate is not a morphism of protorootoids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PrdViolation {
    Functor(String),
    Component {
        object: Obj,
        reason: String,
    },
    Naturality {
        g: Mor,
        atom: SetElem,
    },
    Cocycle {
        g: Mor,
        image: SetElem,
        expected: SetElem,
    },
    Preorder {
        x: Mor,
        y: Mor,
    },
}

impl PrdViolation {
    pub fn describe(&self, f: &PrdMorphism) -> String {
        let src = f.source.groupoid();
        match self {
            PrdViolation::Functor(s) => format!("not a functor: {s}"),
            PrdViolation::Component { object, reason } => {
                format!("component at `{}`: {reason}", src.object_label(*object))
            }
            PrdViolation::Naturality { g, atom } => {
                format!("not natural at `{}` on {atom}", src.label(*g))
            }
            PrdViolation::Cocycle { g, image, expected } => format!(
                "mu(N({})) = {image} but N'(alpha({0})) = {expected}",
                src.label(*g)
            ),
            PrdViolation::Preorder { x, y } => format!(
                "weak preorder not preserved: {} <= {} upstairs only",
                src.label(*x),
                src.label(*y)
            ),
        }
    }
}

impl PrdMorphism {
    /// The identity morphism.
    pub fn identity(p: Arc<Protorootoid>) -> PrdMorphism {
        let gp = p.groupoid();
        let mu = gp
            .objects()
            .map(|a| PartialMap::identity(p.ground(a)))
            .collect();
        PrdMorphism {
            functor: GroupoidFunctor::identity(gp),
            mu,
            source: Arc::clone(&p),
            target: p,
        }
    }

    /// "First `self`, then `next`".
    pub fn then(&self, next: &PrdMorphism) -> Result<PrdMorphism> {
        let functor = self.functor.then(&next.functor);
        let mu = self
            .source
            .groupoid()
            .objects()
            .map(|a| self.mu[a.0].then(&next.mu[self.functor.obj(a).0]))
            .collect::<Result<Vec<_>>>()?;
        Ok(PrdMorphism {
            source: Arc::clone(&self.source),
            target: Arc::clone(&next.target),
            functor,
            mu,
        })
    }

    pub fn mu_apply(&self, a: Obj, x: &SetElem) -> Result<SetElem> {
        self.mu[a.0].apply(x)
    }

    /// Whether two morphisms have equal functors and equal components.
    pub fn same_data(&self, other: &PrdMorphism) -> bool {
        self.functor == other.functor
            && self.mu.len() == other.mu.len()
            && self
                .mu
                .iter()
                .zip(&other.mu)
                .all(|(x, y)| x.entries().eq(y.entries()))
    }
}

/// Functoriality, component shapes, naturality, `μN = N'α`, and preservation
/// of the weak preorders.
pub fn check_prd_morphism(f: &PrdMorphism) -> std::result::Result<(), PrdViolation> {
    let (src, tgt) = (f.source.as_ref(), f.target.as_ref());
    let (sg, tg) = (src.groupoid(), tgt.groupoid());
    f.functor
        .check(sg, tg)
        .map_err(|e| PrdViolation::Functor(e.to_string()))?;
    if f.mu.len() != sg.num_objects() {
        return Err(PrdViolation::Functor("wrong number of components".into()));
    }
    for a in sg.objects() {
        let fa = f.functor.obj(a);
        let m = &f.mu[a.0];
        if m.target() != src.ground(a) || m.source() != tgt.ground(fa) {
            return Err(PrdViolation::Component {
                object: a,
                reason: "component is not between the right ground sets".into(),
            });
        }
        let tring = tgt.ring(fa);
        for blk in src.ring(a).blocks() {
            let img = m.apply(blk).expect("grounds checked");
            if !tring.contains(&img) {
                return Err(PrdViolation::Component {
                    object: a,
                    reason: format!("image {img} of {blk} leaves the target ring"),
                });
            }
        }
    }
    for g in sg.morphisms() {
        let (b, a) = (sg.dom(g), sg.cod(g));
        let fg = f.functor.mor(g);
        for blk in src.ring(b).blocks() {
            let left = f.mu[a.0].apply(&src.rep().act(g, blk).unwrap()).unwrap();
            let right = tgt.rep().act(fg, &f.mu[b.0].apply(blk).unwrap()).unwrap();
            if left != right {
                return Err(PrdViolation::Naturality {
                    g,
                    atom: blk.clone(),
                });
            }
        }
        let image = f.mu[a.0].apply(src.n(g)).unwrap();
        if image != *tgt.n(fg) {
            return Err(PrdViolation::Cocycle {
                g,
                image,
                expected: tgt.n(fg).clone(),
            });
        }
    }
    for a in sg.objects() {
        let star = sg.star(a);
        for &x in star {
            for &y in star {
                if src.n(x).bits().is_subset(src.n(y).bits())
                    && !tgt
                        .n(f.functor.mor(x))
                        .bits()
                        .is_subset(tgt.n(f.functor.mor(y)).bits())
                {
                    return Err(PrdViolation::Preorder { x, y });
                }
            }
        }
    }
    Ok(())
}

/// The partial left adjoint of a star map `θ: star(a) -> star(α a)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaPerp {
    pub object: Obj,
    /// `(γ, θ⊥(γ))` for every `γ` in the order ideal generated by the image.
    pub table: Vec<(Mor, Mor)>,
}

impl ThetaPerp {
    pub fn get(&self, gamma: Mor) -> Option<Mor> {
        self.table
            .iter()
            .find(|(g, _)| *g == gamma)
            .map(|(_, v)| *v)
    }

    pub fn domain(&self) -> impl Iterator<Item = Mor> + '_ {
        self.table.iter().map(|(g, _)| *g)
    }
}

fn star_orders(f: &PrdMorphism, a: Obj) -> (WeakOrder, WeakOrder) {
    (
        f.source.weak_order(a),
        f.target.weak_order(f.functor.obj(a)),
    )
}

/// Checks that the star map at `a` preserves the minimum, meets and existing
/// joins, and returns its partial left adjoint.
pub fn theta_perp(f: &PrdMorphism, a: Obj) -> Result<ThetaPerp> {
    let sg = f.source.groupoid();
    let tg = f.target.groupoid();
    let object = sg.object_label(a).to_string();
    let (so, to) = star_orders(f, a);
    if !so.is_injective() || !to.is_injective() {
        return Err(Error::Precondition(
            "star maps are compared on faithful protorootoids".into(),
        ));
    }
    let star = sg.star(a);
    let theta = |x: Mor| to.index_of(f.functor.mor(x)).unwrap();
    let idx = |x: Mor| so.index_of(x).unwrap();
    let (sp, tp) = (so.poset(), to.poset());
    if Some(theta(sg.identity(a))) != tp.minimum() {
        return Err(Error::NotCsl0 {
            object,
            reason: "minimum is not preserved".into(),
        });
    }
    for &x in star {
        for &y in star {
            let m = sp.meet(idx(x), idx(y)).ok_or_else(|| Error::NotCsl0 {
                object: object.clone(),
                reason: format!(
                    "source meet of `{}` and `{}` missing",
                    sg.label(x),
                    sg.label(y)
                ),
            })?;
            let m_img = theta(so.witnesses(m)[0]);
            if tp.meet(theta(x), theta(y)) != Some(m_img) {
                return Err(Error::NotCsl0 {
                    object,
                    reason: format!(
                        "meet of `{}` and `{}` is not preserved",
                        sg.label(x),
                        sg.label(y)
                    ),
                });
            }
            if let Some(j) = sp.join(idx(x), idx(y)) {
                let j_img = theta(so.witnesses(j)[0]);
                if tp.join(theta(x), theta(y)) != Some(j_img) {
                    return Err(Error::NotCsl0 {
                        object,
                        reason: format!(
                            "join of `{}` and `{}` is not preserved",
                            sg.label(x),
                            sg.label(y)
                        ),
                    });
                }
            }
        }
    }
    let mut table = Vec::new();
    for &gamma in tg.star(f.functor.obj(a)) {
        let gi = to.index_of(gamma).unwrap();
        let mut above = fixedbitset::FixedBitSet::with_capacity(so.len());
        for &x in star {
            if tp.leq(gi, theta(x)) {
                above.insert(idx(x));
            }
        }
        if above.is_clear() {
            continue;
        }
        let least = sp.least_in(&above).ok_or_else(|| Error::NotCsl0 {
            object: object.clone(),
            reason: format!("no least preimage above `{}`", tg.label(gamma)),
        })?;
        table.push((gamma, so.witnesses(least)[0]));
    }
    for &(gamma, v) in &table {
        let gi = to.index_of(gamma).unwrap();
        for &x in star {
            if tp.leq(gi, theta(x)) != sp.leq(idx(v), idx(x)) {
                return Err(Error::NotCsl0 {
                    object,
                    reason: format!(
                        "adjunction fails for `{}` and `{}`",
                        tg.label(gamma),
                        sg.label(x)
                    ),
                });
            }
        }
    }
    Ok(ThetaPerp { object: a, table })
}

/// Membership of a morphism in the categories `Prd ⊇ rd ⊇ Rd ⊇ RdE`.
#[allow(non_snake_case)]
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismGrade {
    pub in_prd: bool,
    pub in_rd: bool,
    pub in_Rd: bool,
    pub in_RdE: bool,
    /// `N(g) ∩ N(θ⊥ g') = ∅ ⟹ N'(α g) ∩ N'(g') = ∅` held everywhere it was tested.
    pub aop_converse_holds: bool,
    pub witnesses: BTreeMap<&'static str, String>,
    pub adjoints: Vec<ThetaPerp>,
}

/// Grades a morphism between rootoids.
pub fn grade_morphism(f: &PrdMorphism) -> Result<MorphismGrade> {
    for (name, p) in [("source", &f.source), ("target", &f.target)] {
        if let Some(fail) = is_rootoid(p).failure {
            return Err(Error::Precondition(format!(
                "{name} is not a rootoid: {}",
                fail.describe(p)
            )));
        }
    }
    let mut witnesses = BTreeMap::new();
    let mut grade = MorphismGrade {
        in_prd: true,
        in_rd: true,
        in_Rd: true,
        in_RdE: true,
        aop_converse_holds: true,
        witnesses: BTreeMap::new(),
        adjoints: Vec::new(),
    };
    if let Err(v) = check_prd_morphism(f) {
        witnesses.insert("in_prd", v.describe(f));
        return Ok(MorphismGrade {
            in_prd: false,
            in_rd: false,
            in_Rd: false,
            in_RdE: false,
            witnesses,
            ..grade
        });
    }
    let sg = f.source.groupoid();
    for a in sg.objects() {
        match theta_perp(f, a) {
            Ok(t) => grade.adjoints.push(t),
            Err(e) => {
                witnesses.insert("in_rd", e.to_string());
                grade.in_rd = false;
                break;
            }
        }
    }
    if !grade.in_rd {
        grade.in_Rd = false;
        grade.in_RdE = false;
        grade.adjoints.clear();
        grade.witnesses = witnesses;
        return Ok(grade);
    }
    let (src, tgt) = (f.source.as_ref(), f.target.as_ref());
    for t in &grade.adjoints {
        let a = t.object;
        for &g in sg.star(a) {
            let ag = f.functor.mor(g);
            for &(gp, back) in &t.table {
                let down = src.n(g).bits().is_disjoint(src.n(back).bits());
                let up = tgt.n(ag).bits().is_disjoint(tgt.n(gp).bits());
                if up && !down && grade.in_Rd {
                    grade.in_Rd = false;
                    witnesses.insert(
                        "in_Rd",
                        format!(
                            "alpha({}) is orthogonal to `{}` but `{}` is not orthogonal to its adjoint image `{}`",
                            sg.label(g),
                            f.target.groupoid().label(gp),
                            sg.label(g),
                            sg.label(back)
                        ),
                    );
                }
                if down && !up && grade.aop_converse_holds {
                    grade.aop_converse_holds = false;
                    witnesses.insert(
                        "aop_converse",
                        format!("`{}` and `{}`", sg.label(g), f.target.groupoid().label(gp)),
                    );
                }
            }
        }
    }
    if grade.in_Rd {
        if let Some(why) = embedding_failure(f) {
            grade.in_RdE = false;
            witnesses.insert("in_RdE", why);
        }
    } else {
        grade.in_RdE = false;
    }
    grade.witnesses = witnesses;
    Ok(grade)
}

/// Star maps injective with image a join-closed meet subsemilattice.
fn embedding_failure(f: &PrdMorphism) -> Option<String> {
    let sg = f.source.groupoid();
    let tg = f.target.groupoid();
    for a in sg.objects() {
        let to = f.target.weak_order(f.functor.obj(a));
        let mut image = fixedbitset::FixedBitSet::with_capacity(to.len());
        for &x in sg.star(a) {
            let i = to.index_of(f.functor.mor(x)).unwrap();
            if image.contains(i) {
                return Some(format!(
                    "star map at `{}` is not injective",
                    sg.object_label(a)
                ));
            }
            image.insert(i);
        }
        let members: Vec<usize> = image.ones().collect();
        let tp = to.poset();
        for &i in &members {
            for &j in &members {
                if let Some(m) = tp.meet(i, j) {
                    if !image.contains(m) {
                        return Some(format!(
                            "image at `{}` is not closed under the meet of `{}` and `{}`",
                            sg.object_label(a),
                            tg.label(to.witnesses(i)[0]),
                            tg.label(to.witnesses(j)[0])
                        ));
                    }
                }
                if let Some(k) = tp.join(i, j) {
                    if !image.contains(k) {
                        return Some(format!(
                            "image at `{}` is not closed under the join of `{}` and `{}`",
                            sg.object_label(a),
                            tg.label(to.witnesses(i)[0]),
                            tg.label(to.witnesses(j)[0])
                        ));
                    }
                }
            }
        }
    }
    None
}

/// The pullback of `p` along a functor `i: H -> G`, with the canonical
/// morphism back to `p`.
pub fn inverse_image(
    p: &Arc<Protorootoid>,
    h: Arc<Groupoid>,
    i: &GroupoidFunctor,
) -> Result<(Arc<Protorootoid>, PrdMorphism)> {
    let g = p.groupoid();
    i.check(&h, g)?;
    let grounds: Vec<_> = h
        .objects()
        .map(|x| p.ground(i.obj(x)).with_owner(h.object_label(x)))
        .collect();
    let perms = h
        .morphisms()
        .map(|m| p.rep().perm(i.mor(m)).iter().map(|&v| v as usize).collect())
        .collect();
    let subrings = if p.rep().has_subrings() {
        Some(
            h.objects()
                .map(|x| {
                    let blocks = p
                        .ring(i.obj(x))
                        .blocks()
                        .iter()
                        .map(|b| b.transport(&grounds[x.0]))
                        .collect::<Result<Vec<_>>>()?;
                    SubringPartition::new(&grounds[x.0], blocks)
                })
                .collect::<Result<Vec<_>>>()?,
        )
    } else {
        None
    };
    let rep = PowerSetRep::new(&h, grounds.clone(), perms, subrings)?;
    let values = h
        .morphisms()
        .map(|m| p.n(i.mor(m)).transport(&grounds[h.cod(m).0]))
        .collect::<Result<Vec<_>>>()?;
    let pulled = Arc::new(Protorootoid::new(Arc::clone(&h), rep, values)?);
    let mu = h
        .objects()
        .map(|x| PartialMap::identity_between(p.ground(i.obj(x)).clone(), grounds[x.0].clone()))
        .collect::<Result<Vec<_>>>()?;
    let flat = PrdMorphism {
        source: Arc::clone(&pulled),
        target: Arc::clone(p),
        functor: i.clone(),
        mu,
    };
    Ok((pulled, flat))
}

/// Restriction to the subgroupoid generated by `gens`.
pub fn restrict(p: &Arc<Protorootoid>, gens: &[Mor]) -> Result<(Arc<Protorootoid>, PrdMorphism)> {
    let members = p.groupoid().generated_subgroupoid(gens).members();
    let (sub, incl) = p.groupoid().subgroupoid(&members)?;
    inverse_image(p, Arc::new(sub), &incl)
}

/// Given `f = (i, μ): R' -> R` and the pullback `i♮R` with its morphism
/// `i♭`, the factorization `g = (Id, μ): R' -> i♮R` with `i♭ ∘ g = f`.
pub fn factor_through_inverse_image(
    f: &PrdMorphism,
    pulled: &Arc<Protorootoid>,
    flat: &PrdMorphism,
) -> Result<PrdMorphism> {
    let h = f.source.groupoid();
    let mu = h
        .objects()
        .map(|x| {
            let entries = f.mu[x.0].entries().map(|(_, v)| v).collect();
            PartialMap::new(
                pulled.ground(x).clone(),
                f.source.ground(x).clone(),
                entries,
            )
        })
        .collect::<Result<Vec<_>>>()?;
    let g = PrdMorphism {
        source: Arc::clone(&f.source),
        target: Arc::clone(pulled),
        functor: GroupoidFunctor::identity(h),
        mu,
    };
    check_prd_morphism(&g).map_err(|v| Error::Precondition(v.describe(&g)))?;
    let composite = g.then(flat)?;
    if !composite.same_data(f) {
        return Err(Error::Precondition(
            "factorization does not recover the morphism".into(),
        ));
    }
    Ok(g)
}

/// A groupoid covering whose components are ring isomorphisms.
pub fn is_covering(f: &PrdMorphism) -> bool {
    let (src, tgt) = (f.source.as_ref(), f.target.as_ref());
    if !f.functor.is_covering(src.groupoid(), tgt.groupoid()) {
        return false;
    }
    src.groupoid().objects().all(|a| {
        let tring = tgt.ring(f.functor.obj(a));
        let sring = src.ring(a);
        if sring.blocks().len() != tring.blocks().len() {
            return false;
        }
        let mut images: Vec<SetElem> = Vec::new();
        for blk in sring.blocks() {
            match f.mu[a.0].apply(blk) {
                Ok(img) if tring.is_atom(&img) && !images.contains(&img) => images.push(img),
                _ => return false,
            }
        }
        true
    })
}

/// The universal covering protorootoid and its covering morphism.
pub fn cover(p: &Arc<Protorootoid>) -> Result<(Arc<Protorootoid>, PrdMorphism)> {
    let (h, pi) = p.groupoid().universal_cover();
    inverse_image(p, Arc::new(h), &pi)
}

/// One row of the covering transfer table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransferRow {
    pub property: &'static str,
    pub upstairs: bool,
    pub downstairs: bool,
}

/// Property comparison across a covering `f: R' -> R`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransferReport {
    pub rows: Vec<TransferRow>,
    pub object_surjective: bool,
    /// Atomic and simple morphisms upstairs are exactly the preimages of those downstairs.
    pub generators_transfer: bool,
    /// Downstairs properties hold upstairs, and conversely for surjective coverings.
    pub consistent: bool,
}

const TRANSFERRED: [&str; 9] = [
    "faithful",
    "complete",
    "interval_finite",
    "cocycle_finite",
    "preprincipal",
    "principal",
    "pseudoprincipal",
    "regular",
    "rootoid",
];

fn flag(r: &PropertyReport, name: &str) -> bool {
    r.flags().iter().find(|(n, _)| *n == name).unwrap().1
}

/// Compares classification flags across a covering morphism.
pub fn covering_transfer(f: &PrdMorphism) -> Result<TransferReport> {
    if !is_covering(f) {
        return Err(Error::Precondition("not a covering morphism".into()));
    }
    let up = classify(&f.source);
    let down = classify(&f.target);
    let object_surjective = f.functor.is_object_surjective(f.target.groupoid());
    let rows: Vec<TransferRow> = TRANSFERRED
        .iter()
        .map(|&name| TransferRow {
            property: name,
            upstairs: flag(&up, name),
            downstairs: flag(&down, name),
        })
        .collect();
    let consistent = rows.iter().all(|r| {
        (!r.downstairs || r.upstairs) && (!object_surjective || !r.upstairs || r.downstairs)
    });
    let sg = f.source.groupoid();
    let preimages = |down_set: &[Mor]| -> Vec<Mor> {
        sg.morphisms()
            .filter(|&m| down_set.contains(&f.functor.mor(m)))
            .collect()
    };
    let generators_transfer = preimages(&down.atomic_morphisms) == up.atomic_morphisms
        && preimages(&down.simple_morphisms) == up.simple_morphisms;
    Ok(TransferReport {
        rows,
        object_surjective,
        generators_transfer,
        consistent,
    })
}

/// The longest elements, ring identities and duality automorphism of a
/// faithful, complete, abridged protorootoid.
#[derive(Clone, Debug)]
pub struct CompleteStructure {
    /// `ω(a)`, the maximum of the star at `a`.
    pub omega: Vec<Mor>,
    /// `e_a = N(ω(a))`.
    pub e: Vec<SetElem>,
    /// `a' = dom ω(a)`.
    pub opposite: Vec<Obj>,
    /// `D = (d, Λω*)` with `d(f) = ω(a)* f ω(b)`.
    pub duality: PrdMorphism,
}

/// Computes and verifies the complete structure.
pub fn complete_structure(p: &Arc<Protorootoid>) -> Result<CompleteStructure> {
    let gp = p.groupoid();
    if !p.is_faithful() {
        return Err(Error::Precondition(
            "complete structure needs a faithful protorootoid".into(),
        ));
    }
    let orders = p.weak_orders();
    let mut omega = Vec::new();
    for wo in &orders {
        let a = wo.object();
        if !wo.poset().is_lattice() {
            return Err(Error::Precondition(format!(
                "weak order at `{}` is not a complete lattice",
                gp.object_label(a)
            )));
        }
        omega.push(wo.witnesses(wo.poset().maximum().unwrap())[0]);
    }
    let report = classify(p);
    if !report.abridged {
        return Err(Error::Precondition(
            "complete structure needs an abridged protorootoid".into(),
        ));
    }
    let fail = |what: String| Err(Error::Precondition(what));
    let e: Vec<SetElem> = omega.iter().map(|&w| p.n(w).clone()).collect();
    let opposite: Vec<Obj> = omega.iter().map(|&w| gp.dom(w)).collect();
    for (wo, a) in orders.iter().zip(gp.objects()) {
        let al = gp.object_label(a);
        let ring = p.ring(a);
        if e[a.0] != *ring.support() {
            return fail(format!("N(omega) is not the ring identity at `{al}`"));
        }
        let w = omega[a.0];
        if gp.inverse(w) != omega[opposite[a.0].0] {
            return fail(format!("omega({al})* is not omega({al}')"));
        }
        for &x in gp.star(a) {
            for &y in gp.star(a) {
                let (wx, wy) = (gp.mul(gp.inverse(w), x), gp.mul(gp.inverse(w), y));
                let up = wo.leq(x, y);
                let wo_b = &orders[opposite[a.0].0];
                if up != wo_b.leq(wy, wx) {
                    return fail(format!("h -> omega* h is not order reversing at `{al}`"));
                }
            }
        }
        for g in gp.morphisms().filter(|&g| gp.dom(g) == a) {
            let gw = gp.mul(g, omega[a.0]);
            let c = p.ring(gp.cod(g)).complement(p.n(g))?;
            if *p.n(gw) != c {
                return fail(format!(
                    "N(g omega) is not the complement for `{}`",
                    gp.label(g)
                ));
            }
        }
        for i in 0..wo.len() {
            let c = ring.complement(wo.value(i))?;
            let Some(ci) = wo.find(&c) else {
                return fail(format!(
                    "weak order at `{al}` is not closed under complements"
                ));
            };
            let poset = wo.poset();
            if poset.meet(i, ci) != poset.minimum() || poset.join(i, ci) != poset.maximum() {
                return fail(format!("complement axioms fail at `{al}`"));
            }
            for j in 0..wo.len() {
                let cj = wo.find(&ring.complement(wo.value(j))?).unwrap();
                if poset.leq(i, j) != poset.leq(cj, ci) {
                    return fail(format!("complementation is not order reversing at `{al}`"));
                }
            }
        }
    }
    let obj_map = opposite.clone();
    let mor_map = gp
        .morphisms()
        .map(|f| {
            let (a, b) = (gp.cod(f), gp.dom(f));
            gp.mul(gp.mul(gp.inverse(omega[a.0]), f), omega[b.0])
        })
        .collect();
    let mu = gp
        .objects()
        .map(|a| {
            let w = omega[a.0];
            let entries = p.rep().perm(w).iter().map(|&x| Some(x as usize)).collect();
            PartialMap::new(
                p.ground(opposite[a.0]).clone(),
                p.ground(a).clone(),
                entries,
            )
        })
        .collect::<Result<Vec<_>>>()?;
    let duality = PrdMorphism {
        source: Arc::clone(p),
        target: Arc::clone(p),
        functor: GroupoidFunctor { obj_map, mor_map },
        mu,
    };
    check_prd_morphism(&duality).map_err(|v| Error::Precondition(v.describe(&duality)))?;
    let square = duality.then(&duality)?;
    if square.functor != GroupoidFunctor::identity(gp)
        || !square.mu.iter().all(PartialMap::is_identity)
    {
        return fail("D is not an involution".into());
    }
    Ok(CompleteStructure {
        omega,
        e,
        opposite,
        duality,
    })
}
