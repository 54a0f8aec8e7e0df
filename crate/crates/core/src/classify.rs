//! Classification of protorootoids and the rootoid axioms.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use rand::Rng;

use crate::error::{Error, Result};
use crate::groupoid::{Expression, Mor, Obj};
use crate::poset::FinitePoset;
use crate::prd::{Protorootoid, WeakOrder};
use crate::setalg::{generated_subring, SetElem};

/// Largest star for which directed subsets are enumerated when checking regularity.
pub const REGULAR_ENUMERATION_LIMIT: usize = 15;
/// Largest star for which the exhaustive join orthogonality check is allowed.
pub const EXHAUSTIVE_JOP_LIMIT: usize = 20;

/// Every classification flag together with the atomic and simple morphisms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropertyReport {
    pub connected: bool,
    pub simply_connected: bool,
    pub complemented: bool,
    pub complete: bool,
    pub interval_finite: bool,
    pub cocycle_finite: bool,
    pub atomically_generated: bool,
    pub simply_generated: bool,
    pub principal: bool,
    pub preprincipal: bool,
    pub abridged: bool,
    pub saturated: bool,
    pub pseudoprincipal: bool,
    pub regular: bool,
    pub faithful: bool,
    pub rootoid: bool,
    pub atomic_morphisms: Vec<Mor>,
    pub simple_morphisms: Vec<Mor>,
    /// Failure evidence (or a note on how a flag was decided), keyed by flag name.
    pub witnesses: BTreeMap<&'static str, String>,
}

impl PropertyReport {
    /// `(name, value)` for every flag, in a fixed order.
    pub fn flags(&self) -> [(&'static str, bool); 16] {
        [
            ("connected", self.connected),
            ("simply_connected", self.simply_connected),
            ("complemented", self.complemented),
            ("complete", self.complete),
            ("interval_finite", self.interval_finite),
            ("cocycle_finite", self.cocycle_finite),
            ("atomically_generated", self.atomically_generated),
            ("simply_generated", self.simply_generated),
            ("principal", self.principal),
            ("preprincipal", self.preprincipal),
            ("abridged", self.abridged),
            ("saturated", self.saturated),
            ("pseudoprincipal", self.pseudoprincipal),
            ("regular", self.regular),
            ("faithful", self.faithful),
            ("rootoid", self.rootoid),
        ]
    }
}

/// Why a protorootoid fails to be a rootoid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RootoidFailure {
    /// Distinct morphisms with the same codomain and the same cocycle value.
    NotFaithful { g: Mor, h: Mor },
    /// Two elements of a weak order without a meet (witnessed by morphisms).
    MissingMeet { object: Obj, x: Mor, y: Mor },
    /// `N(a1), N(a2)` are orthogonal to `N(b)` but their join is not.
    JopViolation {
        object: Obj,
        a1: Mor,
        a2: Mor,
        b: Mor,
    },
    /// A family (exhaustive mode) orthogonal to `N(b)` whose join is not.
    JopFamilyViolation {
        object: Obj,
        family: Vec<Mor>,
        b: Mor,
    },
}

impl RootoidFailure {
    pub fn describe(&self, p: &Protorootoid) -> String {
        let gp = p.groupoid();
        let l = |g: &Mor| gp.label(*g).to_string();
        match self {
            RootoidFailure::NotFaithful { g, h } => format!(
                "not faithful: N({}) = N({}) = {}",
                l(g),
                l(h),
                p.n(*g)
            ),
            RootoidFailure::MissingMeet { object, x, y } => format!(
                "weak order at `{}` is not a meet semilattice: {} = N({}) and {} = N({}) have no meet",
                gp.object_label(*object),
                p.n(*x),
                l(x),
                p.n(*y),
                l(y)
            ),
            RootoidFailure::JopViolation { object, a1, a2, b } => format!(
                "join orthogonality fails at `{}`: N({}) and N({}) miss N({}) but their join does not",
                gp.object_label(*object),
                l(a1),
                l(a2),
                l(b)
            ),
            RootoidFailure::JopFamilyViolation { object, family, b } => format!(
                "join orthogonality fails at `{}`: the family {{{}}} misses N({}) but its join does not",
                gp.object_label(*object),
                family.iter().map(l).collect::<Vec<_>>().join(","),
                l(b)
            ),
        }
    }
}

/// Outcome of the rootoid test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootoidVerdict {
    pub failure: Option<RootoidFailure>,
}

impl RootoidVerdict {
    pub fn holds(&self) -> bool {
        self.failure.is_none()
    }
}

/// A pair of value indices of a star lacking a meet, when the star has a minimum.
pub(crate) fn meet_failure(poset: &FinitePoset) -> Option<(usize, usize)> {
    poset.missing_meet()
}

/// The first triple `(i, j, b)` violating join orthogonality for pairs with a join.
pub(crate) fn jop_pair_failure(
    values: &[SetElem],
    poset: &FinitePoset,
) -> Option<(usize, usize, usize)> {
    let n = values.len();
    let orth: Vec<FixedBitSet> = (0..n)
        .map(|b| {
            let mut s = FixedBitSet::with_capacity(n);
            for a in 0..n {
                if values[a].bits().is_disjoint(values[b].bits()) {
                    s.insert(a);
                }
            }
            s
        })
        .collect();
    for i in 0..n {
        for j in i + 1..n {
            let Some(k) = poset.join(i, j) else { continue };
            for (b, o) in orth.iter().enumerate() {
                if o.contains(i) && o.contains(j) && !o.contains(k) {
                    return Some((i, j, b));
                }
            }
        }
    }
    None
}

/// Join orthogonality over all subfamilies; `None` when it holds.
pub(crate) fn jop_exhaustive_failure(
    values: &[SetElem],
    poset: &FinitePoset,
) -> Option<(Vec<usize>, usize)> {
    let n = values.len();
    for mask in 1u64..(1u64 << n) {
        let family: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        let Some(k) = poset.join_of(&family) else {
            continue;
        };
        for b in 0..n {
            let vb = values[b].bits();
            if family.iter().all(|&a| values[a].bits().is_disjoint(vb))
                && !values[k].bits().is_disjoint(vb)
            {
                return Some((family, b));
            }
        }
    }
    None
}

fn rootoid_verdict(
    p: &Protorootoid,
    orders: &[WeakOrder],
    exhaustive: bool,
) -> Result<RootoidVerdict> {
    if let Some((g, h)) = p.faithfulness_witness() {
        return Ok(RootoidVerdict {
            failure: Some(RootoidFailure::NotFaithful { g, h }),
        });
    }
    for wo in orders {
        let a = wo.object();
        if let Some((i, j)) = meet_failure(wo.poset()) {
            return Ok(RootoidVerdict {
                failure: Some(RootoidFailure::MissingMeet {
                    object: a,
                    x: wo.witnesses(i)[0],
                    y: wo.witnesses(j)[0],
                }),
            });
        }
    }
    for wo in orders {
        let a = wo.object();
        if exhaustive {
            if wo.len() > EXHAUSTIVE_JOP_LIMIT {
                return Err(Error::Precondition(format!(
                    "star at `{}` has {} elements; exhaustive join orthogonality is limited to {}",
                    p.groupoid().object_label(a),
                    wo.len(),
                    EXHAUSTIVE_JOP_LIMIT
                )));
            }
            if let Some((family, b)) = jop_exhaustive_failure(wo.values(), wo.poset()) {
                return Ok(RootoidVerdict {
                    failure: Some(RootoidFailure::JopFamilyViolation {
                        object: a,
                        family: family.iter().map(|&i| wo.witnesses(i)[0]).collect(),
                        b: wo.witnesses(b)[0],
                    }),
                });
            }
        } else if let Some((i, j, b)) = jop_pair_failure(wo.values(), wo.poset()) {
            return Ok(RootoidVerdict {
                failure: Some(RootoidFailure::JopViolation {
                    object: a,
                    a1: wo.witnesses(i)[0],
                    a2: wo.witnesses(j)[0],
                    b: wo.witnesses(b)[0],
                }),
            });
        }
    }
    Ok(RootoidVerdict { failure: None })
}

/// The rootoid axioms: faithfulness, weak orders that are complete meet
/// semilattices, and join orthogonality (checked on pairs with a join).
pub fn is_rootoid(p: &Protorootoid) -> RootoidVerdict {
    rootoid_verdict(p, &p.weak_orders(), false).expect("pair mode never fails")
}

/// As [`is_rootoid`], with join orthogonality checked over all subfamilies.
/// Stars are limited to [`EXHAUSTIVE_JOP_LIMIT`] elements.
pub fn is_rootoid_exhaustive(p: &Protorootoid) -> Result<RootoidVerdict> {
    rootoid_verdict(p, &p.weak_orders(), true)
}

fn atomic_and_simple(p: &Protorootoid, orders: &[WeakOrder]) -> (Vec<Mor>, Vec<Mor>) {
    let gp = p.groupoid();
    let mut atomic = Vec::new();
    for wo in orders {
        for i in wo.poset().atoms() {
            atomic.extend_from_slice(wo.witnesses(i));
        }
    }
    atomic.sort();
    let simple = gp
        .morphisms()
        .filter(|&g| p.ring(gp.cod(g)).is_atom(p.n(g)))
        .collect();
    (atomic, simple)
}

/// Atomic morphisms: those whose value is an atom of the weak order.
pub fn atomic_morphisms(p: &Protorootoid) -> Vec<Mor> {
    atomic_and_simple(p, &p.weak_orders()).0
}

/// Simple morphisms: those whose value is an atom of the Boolean ring.
pub fn simple_morphisms(p: &Protorootoid) -> Vec<Mor> {
    let gp = p.groupoid();
    gp.morphisms()
        .filter(|&g| p.ring(gp.cod(g)).is_atom(p.n(g)))
        .collect()
}

fn describe_value(p: &Protorootoid, wo: &WeakOrder, i: usize) -> String {
    format!(
        "{} = N({})",
        wo.value(i),
        p.groupoid().label(wo.witnesses(i)[0])
    )
}

/// Evaluates every classification predicate from its definition.
pub fn classify(p: &Protorootoid) -> PropertyReport {
    let gp = p.groupoid();
    let orders = p.weak_orders();
    let comps = gp.components();
    let mut w: BTreeMap<&'static str, String> = BTreeMap::new();
    let (atomic, simple) = atomic_and_simple(p, &orders);

    let faithful = match p.faithfulness_witness() {
        None => true,
        Some((g, h)) => {
            w.insert(
                "faithful",
                format!("N({}) = N({})", gp.label(g), gp.label(h)),
            );
            false
        }
    };

    let mut complemented = true;
    let mut complete = true;
    let mut saturated = true;
    let mut pseudoprincipal = true;
    let mut abridged = true;
    let mut preprincipal_dichotomy = true;
    let atomic_set: std::collections::HashSet<Mor> = atomic.iter().copied().collect();
    for wo in &orders {
        let a = wo.object();
        let ring = p.ring(a);
        let alabel = gp.object_label(a);
        if complemented {
            if let Some(i) = (0..wo.len()).find(|&i| {
                let c = ring.complement(wo.value(i)).unwrap();
                wo.find(&c).is_none()
            }) {
                complemented = false;
                w.insert(
                    "complemented",
                    format!(
                        "complement of {} missing at `{alabel}`",
                        describe_value(p, wo, i)
                    ),
                );
            }
        }
        if complete && !wo.poset().is_lattice() {
            complete = false;
            let why = match wo.poset().missing_meet() {
                Some((i, j)) => format!(
                    "at `{alabel}`: {} and {} have no meet",
                    describe_value(p, wo, i),
                    describe_value(p, wo, j)
                ),
                None => format!("at `{alabel}`: no maximum"),
            };
            w.insert("complete", why);
        }
        if saturated {
            if let Some((i, j)) = wo
                .hasse()
                .into_iter()
                .find(|&(i, j)| ring.rank(wo.value(j)) != ring.rank(wo.value(i)) + 1)
            {
                saturated = false;
                w.insert(
                    "saturated",
                    format!(
                        "at `{alabel}`: cover {} < {} skips ring rank",
                        describe_value(p, wo, i),
                        describe_value(p, wo, j)
                    ),
                );
            }
        }
        if pseudoprincipal {
            let n = wo.len();
            'outer: for h in 0..n {
                if wo.value(h).is_empty() {
                    continue;
                }
                for g in 0..n {
                    let vg = wo.value(g).bits();
                    let found = wo.poset().down_set(h).ones().any(|x| {
                        let vx = wo.value(x).bits();
                        !vx.is_clear() && (vx.is_subset(vg) || vx.is_disjoint(vg))
                    });
                    if !found {
                        pseudoprincipal = false;
                        w.insert(
                            "pseudoprincipal",
                            format!(
                                "at `{alabel}`: no x below {} comparable-or-orthogonal to {}",
                                describe_value(p, wo, h),
                                describe_value(p, wo, g)
                            ),
                        );
                        break 'outer;
                    }
                }
            }
        }
        if preprincipal_dichotomy {
            'dich: for &s in gp.star(a) {
                if !atomic_set.contains(&s) {
                    continue;
                }
                let ns = p.n(s).bits();
                for &g in gp.star(a) {
                    let ng = p.n(g).bits();
                    if !(ns.is_disjoint(ng) || ns.is_subset(ng)) {
                        preprincipal_dichotomy = false;
                        w.insert(
                            "preprincipal",
                            format!(
                                "atomic {} neither inside nor orthogonal to N({})",
                                gp.label(s),
                                gp.label(g)
                            ),
                        );
                        break 'dich;
                    }
                }
            }
        }
        if abridged {
            let gen = generated_subring(p.ground(a), wo.values()).expect("same ground");
            if gen.blocks() != ring.blocks() {
                abridged = false;
                w.insert(
                    "abridged",
                    format!("weak order at `{alabel}` generates a proper subring"),
                );
            }
        }
    }

    let regular = regular_check(p, &orders, &mut w);

    let gen_a = gp.generated_subgroupoid(&atomic);
    let atomically_generated = gen_a.generates;
    if !atomically_generated {
        w.insert(
            "atomically_generated",
            "atomic morphisms generate a proper subgroupoid".into(),
        );
    }
    let gen_s = gp.generated_subgroupoid(&simple);
    let simply_generated = gen_s.generates;
    if !simply_generated {
        w.insert(
            "simply_generated",
            "simple morphisms generate a proper subgroupoid".into(),
        );
    }
    let mut principal = simply_generated;
    if simply_generated {
        if let Some(g) = gp.morphisms().find(|&g| gen_s.length(g) != Some(p.l_n(g))) {
            principal = false;
            w.insert(
                "principal",
                format!(
                    "l_S({0}) = {1} but l_N({0}) = {2}",
                    gp.label(g),
                    gen_s.length(g).unwrap(),
                    p.l_n(g)
                ),
            );
        }
    } else {
        w.insert("principal", "not simply generated".into());
    }
    let preprincipal = faithful && preprincipal_dichotomy;
    if !faithful && !w.contains_key("preprincipal") {
        w.insert("preprincipal", "not faithful".into());
    }

    let verdict = rootoid_verdict(p, &orders, false).expect("pair mode never fails");
    if let Some(f) = &verdict.failure {
        w.insert("rootoid", f.describe(p));
    }
    if !comps.connected {
        w.insert(
            "connected",
            format!("{} components", comps.components.len()),
        );
    }

    PropertyReport {
        connected: comps.connected,
        simply_connected: comps.simply_connected,
        complemented,
        complete,
        interval_finite: true,
        cocycle_finite: true,
        atomically_generated,
        simply_generated,
        principal,
        preprincipal,
        abridged,
        saturated,
        pseudoprincipal,
        regular,
        faithful,
        rootoid: verdict.holds(),
        atomic_morphisms: atomic,
        simple_morphisms: simple,
        witnesses: w,
    }
}

fn regular_check(
    p: &Protorootoid,
    orders: &[WeakOrder],
    w: &mut BTreeMap<&'static str, String>,
) -> bool {
    let mut enumerated_all = true;
    for wo in orders {
        let n = wo.len();
        if n > REGULAR_ENUMERATION_LIMIT {
            enumerated_all = false;
            continue;
        }
        let poset = wo.poset();
        let up: Vec<u32> = (0..n)
            .map(|i| poset.up_set(i).ones().fold(0u32, |m, k| m | 1 << k))
            .collect();
        let mut union = FixedBitSet::with_capacity(p.ground(wo.object()).len());
        for mask in 1u32..(1u32 << n) {
            let x: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
            let directed = x
                .iter()
                .all(|&i| x.iter().all(|&j| up[i] & up[j] & mask != 0));
            if !directed {
                continue;
            }
            let bounds = x.iter().fold(u32::MAX >> (32 - n), |m, &i| m & up[i]);
            let Some(join) = (0..n).find(|&k| bounds & (1 << k) != 0 && up[k] & bounds == bounds)
            else {
                continue;
            };
            union.clear();
            for &i in &x {
                union.union_with(wo.value(i).bits());
            }
            if union != *wo.value(join).bits() {
                let union = p
                    .ground(wo.object())
                    .elem_from_indices(union.ones())
                    .unwrap();
                w.insert(
                    "regular",
                    format!(
                        "directed family at `{}` with join {} has union {}",
                        p.groupoid().object_label(wo.object()),
                        wo.value(join),
                        union
                    ),
                );
                return false;
            }
        }
    }
    if !enumerated_all {
        w.insert(
            "regular",
            "large stars decided by interval finiteness (a finite directed family contains its join)".into(),
        );
    }
    true
}

/// Why the semilocal criterion fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SlcFailure {
    /// `N(r), N(s)` are bounded above but have no join.
    MissingJoin { object: Obj, r: Mor, s: Mor, g: Mor },
    /// The join of `N(r), N(s)` meets `N(g)`.
    JoinNotOrthogonal { object: Obj, r: Mor, s: Mor, g: Mor },
}

impl SlcFailure {
    pub fn describe(&self, p: &Protorootoid) -> String {
        let gp = p.groupoid();
        match self {
            SlcFailure::MissingJoin { object, r, s, g } => format!(
                "at `{}`: atoms {} and {} miss N({}) and are bounded above but have no join",
                gp.object_label(*object),
                gp.label(*r),
                gp.label(*s),
                gp.label(*g)
            ),
            SlcFailure::JoinNotOrthogonal { object, r, s, g } => format!(
                "at `{}`: the join of atoms {} and {} meets N({})",
                gp.object_label(*object),
                gp.label(*r),
                gp.label(*s),
                gp.label(*g)
            ),
        }
    }
}

/// The semilocal criterion. Requires a faithful protorootoid (interval
/// finiteness is automatic for finite input).
pub fn slc_check(p: &Protorootoid) -> Result<Option<SlcFailure>> {
    if !p.is_faithful() {
        return Err(Error::Precondition(
            "the semilocal criterion needs a faithful protorootoid".into(),
        ));
    }
    let gp = p.groupoid();
    for wo in p.weak_orders() {
        let a = wo.object();
        let poset = wo.poset();
        let atoms = poset.atoms();
        for (x, &i) in atoms.iter().enumerate() {
            for &j in &atoms[x + 1..] {
                if poset.upper_bounds(&[i, j]).is_clear() {
                    continue;
                }
                let join = poset.join(i, j);
                for &g in gp.star(a) {
                    let ng = p.n(g).bits();
                    if !wo.value(i).bits().is_disjoint(ng) || !wo.value(j).bits().is_disjoint(ng) {
                        continue;
                    }
                    let (r, s) = (wo.witnesses(i)[0], wo.witnesses(j)[0]);
                    match join {
                        None => return Ok(Some(SlcFailure::MissingJoin { object: a, r, s, g })),
                        Some(k) if !wo.value(k).bits().is_disjoint(ng) => {
                            return Ok(Some(SlcFailure::JoinNotOrthogonal { object: a, r, s, g }))
                        }
                        Some(_) => {}
                    }
                }
            }
        }
    }
    Ok(None)
}

/// The abridgement: each ring replaced by the subring generated by the weak order.
pub fn abridge(p: &Protorootoid) -> Protorootoid {
    let gp = p.groupoid();
    let subrings = gp
        .objects()
        .map(|a| {
            let vals: Vec<SetElem> = gp.star(a).iter().map(|&g| p.n(g).clone()).collect();
            generated_subring(p.ground(a), &vals).expect("values live over the ground")
        })
        .collect();
    let rep = p
        .rep()
        .with_subrings(gp, subrings)
        .expect("the action permutes cocycle values, hence generated blocks");
    Protorootoid::new(Arc::clone(p.groupoid_arc()), rep, p.cocycle().to_vec())
        .expect("cocycle is unchanged")
}

/// Results of the length-function characterizations.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LengthReport {
    pub expressions_checked: usize,
    pub pairs_checked: usize,
    /// Whether `l_S` was compared as well (principal input).
    pub used_l_s: bool,
    pub mismatches: Vec<String>,
}

impl LengthReport {
    pub fn holds(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// A random composable expression of length `len` anchored at `anchor`.
pub fn random_expression<R: Rng>(
    p: &Protorootoid,
    anchor: Obj,
    len: usize,
    rng: &mut R,
) -> Expression {
    let gp = p.groupoid();
    let mut cur = anchor;
    let mut mors = Vec::with_capacity(len);
    for _ in 0..len {
        let star = gp.star(cur);
        let m = star[rng.gen_range(0..star.len())];
        mors.push(m);
        cur = gp.dom(m);
    }
    Expression::new(gp, anchor, mors).expect("built composably")
}

/// For `samples` random expressions: compatible iff `l_N` (and `l_S` when
/// principal) is additive along it. For all pairs in every star:
/// `x ≤ y` iff `l(y) = l(x) + l(x* y)`.
pub fn length_reports<R: Rng>(
    p: &Protorootoid,
    samples: usize,
    max_len: usize,
    rng: &mut R,
) -> LengthReport {
    let gp = p.groupoid();
    let report = classify(p);
    let l_s = report
        .principal
        .then(|| gp.generated_subgroupoid(&report.simple_morphisms));
    let mut out = LengthReport {
        used_l_s: l_s.is_some(),
        ..LengthReport::default()
    };
    let objs: Vec<Obj> = gp.objects().collect();
    if !objs.is_empty() {
        for _ in 0..samples {
            let a = objs[rng.gen_range(0..objs.len())];
            let len = rng.gen_range(0..=max_len);
            let e = random_expression(p, a, len, rng);
            let v = e.value(gp);
            let compatible = p.is_compatible(&e);
            let additive_n = p.l_n(v) == e.morphisms().iter().map(|&m| p.l_n(m)).sum::<usize>();
            if compatible != additive_n {
                out.mismatches
                    .push(format!("l_N additivity disagrees on {:?}", labels(p, &e)));
            }
            if let Some(gen) = &l_s {
                let additive_s = gen.length(v).unwrap()
                    == e.morphisms()
                        .iter()
                        .map(|&m| gen.length(m).unwrap())
                        .sum::<usize>();
                if compatible != additive_s {
                    out.mismatches
                        .push(format!("l_S additivity disagrees on {:?}", labels(p, &e)));
                }
            }
            out.expressions_checked += 1;
        }
    }
    for wo in p.weak_orders() {
        let star = gp.star(wo.object());
        for &x in star {
            for &y in star {
                let z = gp.mul(gp.inverse(x), y);
                let leq = wo.leq(x, y);
                if leq != (p.l_n(y) == p.l_n(x) + p.l_n(z)) {
                    out.mismatches.push(format!(
                        "l_N test disagrees on ({}, {})",
                        gp.label(x),
                        gp.label(y)
                    ));
                }
                if let Some(gen) = &l_s {
                    let (lx, ly, lz) = (
                        gen.length(x).unwrap(),
                        gen.length(y).unwrap(),
                        gen.length(z).unwrap(),
                    );
                    if leq != (ly == lx + lz) {
                        out.mismatches.push(format!(
                            "l_S test disagrees on ({}, {})",
                            gp.label(x),
                            gp.label(y)
                        ));
                    }
                }
                out.pairs_checked += 1;
            }
        }
    }
    out
}

fn labels(p: &Protorootoid, e: &Expression) -> Vec<String> {
    e.morphisms()
        .iter()
        .map(|&m| p.groupoid().label(m).to_string())
        .collect()
}

/// Pseudocomplements `x' = ⋁{y : y ∧ x = 1}` for every `x` in the star at `a`,
/// each verified against `y ∧ x = 1 ⟺ y ≤ x'`.
pub fn pseudocomplements(p: &Protorootoid, a: Obj) -> Result<Vec<(Mor, Mor)>> {
    let report = classify(p);
    if !(report.principal && report.complete && report.rootoid) {
        return Err(Error::Precondition(
            "pseudocomplements need a principal complete rootoid".into(),
        ));
    }
    let gp = p.groupoid();
    let wo = p.weak_order(a);
    let poset = wo.poset();
    let bottom = poset.minimum().expect("weak orders contain the empty set");
    let mut out = Vec::new();
    for &x in gp.star(a) {
        let xi = wo.index_of(x).unwrap();
        let disjoint: Vec<usize> = (0..wo.len())
            .filter(|&y| poset.meet(y, xi) == Some(bottom))
            .collect();
        let xp = poset
            .join_of(&disjoint)
            .ok_or_else(|| Error::Precondition("pseudocomplement join does not exist".into()))?;
        for y in 0..wo.len() {
            if (poset.meet(y, xi) == Some(bottom)) != poset.leq(y, xp) {
                return Err(Error::Precondition(format!(
                    "pseudocomplement of `{}` fails its defining property",
                    gp.label(x)
                )));
            }
        }
        out.push((x, wo.witnesses(xp)[0]));
    }
    Ok(out)
}

/// The pseudocomplement of a single morphism.
pub fn pseudocomplement(p: &Protorootoid, x: Mor) -> Result<Mor> {
    let a = p.groupoid().cod(x);
    Ok(pseudocomplements(p, a)?
        .into_iter()
        .find(|(m, _)| *m == x)
        .expect("x lies in its star")
        .1)
}

impl fmt::Display for PropertyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (name, value) in self.flags() {
            writeln!(f, "{name}: {value}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn a2_is_a_principal_complete_rootoid() {
        let w = fixtures::coxeter_a2();
        let r = classify(&w);
        assert!(r.principal && r.complete && r.rootoid && r.complemented);
        let mut simple: Vec<&str> = r
            .simple_morphisms
            .iter()
            .map(|&g| w.groupoid().label(g))
            .collect();
        simple.sort();
        assert_eq!(simple, ["r", "s"]);
        assert!(slc_check(&w).unwrap().is_none());
    }

    #[test]
    fn trivial_groupoid_report() {
        let t = fixtures::trivial();
        let r = classify(&t);
        assert!(r.atomically_generated && r.simply_generated && r.principal);
        assert!(r.complete && r.rootoid && r.abridged);
    }

    #[test]
    fn zero_cocycle_is_not_a_rootoid() {
        let z = fixtures::zero_cocycle_a2();
        let v = is_rootoid(&z);
        assert!(matches!(
            v.failure,
            Some(RootoidFailure::NotFaithful { .. })
        ));
        assert!(slc_check(&z).is_err());
    }

    #[test]
    fn padded_a2_is_preprincipal_but_not_principal() {
        let p = fixtures::padded_a2();
        let r = classify(&p);
        assert!(r.preprincipal && !r.principal && !r.abridged);
        let ab = abridge(&p);
        let ra = classify(&ab);
        assert!(ra.principal && ra.abridged);
        assert_eq!(ra.simple_morphisms, r.atomic_morphisms);
        let again = abridge(&ab);
        for a in ab.groupoid().objects() {
            assert_eq!(again.ring(a), ab.ring(a));
        }
    }

    #[test]
    fn pseudocomplement_of_r_in_a2() {
        let w = fixtures::coxeter_a2();
        let gp = w.groupoid();
        let r = gp.morphism("r").unwrap();
        assert_eq!(gp.label(pseudocomplement(&w, r).unwrap()), "sr");
        let one = gp.identity(Obj(0));
        assert_eq!(gp.label(pseudocomplement(&w, one).unwrap()), "rsr");
        let top = gp.morphism("rsr").unwrap();
        assert_eq!(pseudocomplement(&w, top).unwrap(), one);
    }
}
