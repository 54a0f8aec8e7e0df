//! Small named examples used by the test suites and the command line tool.

use std::sync::Arc;

use crate::builders::DEFAULT_BUDGET;
use crate::builders::{
    build_arrangement, build_coxeter, Arrangement, ArrangementRootoid, CoxeterMatrix, CoxeterSystem,
};
use crate::error::Result;
use crate::groupoid::{Groupoid, Mor, Obj};
use crate::prd::{PowerSetRep, Protorootoid};
use crate::setalg::{GroundSet, SubringPartition};

pub fn coxeter_system(m: &CoxeterMatrix) -> CoxeterSystem {
    build_coxeter(m, DEFAULT_BUDGET).expect("finite Coxeter group")
}

pub fn coxeter_system_a2() -> CoxeterSystem {
    coxeter_system(&CoxeterMatrix::type_a(2).unwrap())
}

fn coxeter(m: CoxeterMatrix) -> Protorootoid {
    (*coxeter_system(&m).protorootoid).clone()
}

pub fn coxeter_a1() -> Protorootoid {
    coxeter(CoxeterMatrix::type_a(1).unwrap())
}

pub fn coxeter_a2() -> Protorootoid {
    coxeter(CoxeterMatrix::type_a(2).unwrap())
}

pub fn coxeter_b2() -> Protorootoid {
    coxeter(CoxeterMatrix::type_b(2).unwrap())
}

pub fn coxeter_a3() -> Protorootoid {
    coxeter(CoxeterMatrix::type_a(3).unwrap())
}

pub fn coxeter_b3() -> Protorootoid {
    coxeter(CoxeterMatrix::type_b(3).unwrap())
}

/// The dihedral group of order `2m`.
pub fn coxeter_i2(m: usize) -> Protorootoid {
    coxeter(CoxeterMatrix::dihedral(Some(m)).unwrap())
}

/// One object, only its identity, empty ground set.
pub fn trivial() -> Protorootoid {
    let g = Groupoid::trivial("a");
    let rep = PowerSetRep::trivial(&g);
    Protorootoid::zero(Arc::new(g), rep)
}

pub fn empty() -> Protorootoid {
    let g = Groupoid::empty();
    let rep = PowerSetRep::trivial(&g);
    Protorootoid::zero(Arc::new(g), rep)
}

/// The A₂ representation on reflections with the zero cocycle (not faithful).
pub fn zero_cocycle_a2() -> Protorootoid {
    let w = coxeter_a2();
    Protorootoid::zero(Arc::clone(w.groupoid_arc()), w.rep().clone())
}

/// A₂ with every reflection doubled and two fixed points added: each
/// `N(s)` has rank two, so the protorootoid is preprincipal but not principal.
pub fn padded_a2() -> Protorootoid {
    let w = coxeter_a2();
    let gp = w.groupoid();
    let base = w.ground(Obj(0));
    let k = base.len();
    let mut labels: Vec<String> = Vec::with_capacity(2 * k + 2);
    for i in 0..k {
        labels.push(format!("{}.0", base.label(i)));
        labels.push(format!("{}.1", base.label(i)));
    }
    labels.push("p0".into());
    labels.push("p1".into());
    let ground = GroundSet::new(gp.object_label(Obj(0)), labels).unwrap();
    let perms = gp
        .morphisms()
        .map(|g| {
            let p = w.rep().perm(g);
            let mut out: Vec<usize> = (0..k)
                .flat_map(|i| [2 * p[i] as usize, 2 * p[i] as usize + 1])
                .collect();
            out.extend([2 * k, 2 * k + 1]);
            out
        })
        .collect();
    let rep = PowerSetRep::new(gp, vec![ground.clone()], perms, None).unwrap();
    let values = gp
        .morphisms()
        .map(|g| {
            ground
                .elem_from_indices(w.n(g).indices().flat_map(|i| [2 * i, 2 * i + 1]))
                .unwrap()
        })
        .collect();
    Protorootoid::new(Arc::clone(w.groupoid_arc()), rep, values).unwrap()
}

/// The simply connected groupoid on objects `x0, x1, ...` (one per member of
/// `family`) acting trivially on `{0, ..., k-1}`, with the coboundary
/// `N(x_a <- x_b) = X_a + X_b`. Its weak order at `x0` is `family` when `X_0 = ∅`.
pub fn set_system(family: &[&[usize]], k: usize) -> Protorootoid {
    let objects: Vec<String> = (0..family.len()).map(|i| format!("x{i}")).collect();
    let g = Groupoid::simply_connected(&objects, |cod, dom| format!("{cod}<-{dom}")).unwrap();
    let labels: Vec<String> = (0..k).map(|i| i.to_string()).collect();
    let rep = PowerSetRep::constant(&g, &labels).unwrap();
    let xs: Vec<_> = g
        .objects()
        .map(|a| {
            rep.ground(a)
                .elem_from_indices(family[a.0].iter().copied())
                .unwrap()
        })
        .collect();
    let values = crate::prd::coboundary(&g, &rep, &xs).unwrap();
    Protorootoid::new(Arc::new(g), rep, values).unwrap()
}

/// A faithful set system whose weak order at `x0` has two elements without a meet.
pub fn no_meets() -> Protorootoid {
    set_system(&[&[], &[0], &[1], &[0, 1, 2], &[0, 1, 3]], 4)
}

/// A faithful set system with all meets in which `{0} ∨ {1} = {0,1,2}` meets `{2}`.
pub fn jop_failure() -> Protorootoid {
    set_system(&[&[], &[0], &[1], &[2], &[0, 1, 2]], 3)
}

/// The full power set of `{0, 1}` as a set system (a rootoid).
pub fn boolean_square() -> Protorootoid {
    set_system(&[&[], &[0], &[1], &[0, 1]], 2)
}

/// Disjoint union; object and morphism labels of part `k` get `prefixes[k]`.
pub fn disjoint_union(parts: &[&Protorootoid], prefixes: &[&str]) -> Result<Protorootoid> {
    let groupoids: Vec<&Groupoid> = parts.iter().map(|p| p.groupoid()).collect();
    let g = Groupoid::disjoint_union(&groupoids, prefixes)?;
    let mut grounds = Vec::new();
    let mut subrings = Vec::new();
    let mut perms = Vec::new();
    let mut values = Vec::new();
    let mut obj = 0;
    for p in parts {
        let start = grounds.len();
        for a in p.groupoid().objects() {
            let ground = p.ground(a).with_owner(g.object_label(Obj(obj)));
            let blocks = p
                .ring(a)
                .blocks()
                .iter()
                .map(|b| b.transport(&ground))
                .collect::<Result<Vec<_>>>()?;
            subrings.push(SubringPartition::new(&ground, blocks)?);
            grounds.push(ground);
            obj += 1;
        }
        for m in p.groupoid().morphisms() {
            perms.push(p.rep().perm(m).iter().map(|&x| x as usize).collect());
            let a = p.groupoid().cod(m).0;
            values.push(p.n(m).transport(&grounds[start + a])?);
        }
    }
    let any_subrings = parts.iter().any(|p| p.rep().has_subrings());
    let rep = PowerSetRep::new(&g, grounds, perms, any_subrings.then_some(subrings))?;
    Protorootoid::new(Arc::new(g), rep, values)
}

/// A₂ alongside A₁.
pub fn two_component() -> Protorootoid {
    disjoint_union(&[&coxeter_a2(), &coxeter_a1()], &["a:", "b:"]).unwrap()
}

/// Lines with normals `(1,0), (0,1), (1,1)`: six chambers, simplicial.
pub fn arrangement_a2() -> ArrangementRootoid {
    build_arrangement(&Arrangement::new(2, vec![vec![1, 0], vec![0, 1], vec![1, 1]]).unwrap())
        .unwrap()
}

/// Planes with normals `e1, e2, e3, e1+e2+e3`: fourteen chambers, not simplicial.
pub fn arrangement_non_simplicial() -> ArrangementRootoid {
    build_arrangement(
        &Arrangement::new(
            3,
            vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1], vec![1, 1, 1]],
        )
        .unwrap(),
    )
    .unwrap()
}

/// One point in the line: two chambers.
pub fn arrangement_line() -> ArrangementRootoid {
    build_arrangement(&Arrangement::new(1, vec![vec![1]]).unwrap()).unwrap()
}

/// The morphism of `p` with the given label.
pub fn mor(p: &Protorootoid, label: &str) -> Mor {
    p.groupoid().morphism(label).unwrap()
}
