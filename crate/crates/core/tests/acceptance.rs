//! End-to-end acceptance run: one PASS/FAIL line per criterion.

use std::collections::BTreeSet;
use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rootoid_core::builders::{reflection_subgroup, CoxeterMatrix, CoxeterSystem};
use rootoid_core::cat::{
    check_prd_morphism, complete_structure, cover, covering_transfer, grade_morphism, PrdMorphism,
};
use rootoid_core::classify::{
    abridge, classify, is_rootoid, is_rootoid_exhaustive, length_reports, random_expression,
    slc_check,
};
use rootoid_core::fixtures;
use rootoid_core::groupoid::{Expression, Mor, Obj};
use rootoid_core::prd::Protorootoid;
use rootoid_core::setalg::SetElem;
use rootoid_core::signed::{kl_comparison, lk_comparison, SetProtorootoid};

mod common;
use common::{leq, max_star, named_fixtures, random_set_systems, Fixture};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn ok<T, E: std::fmt::Display>(r: Result<T, E>, what: &str) -> Result<T, String> {
    r.map_err(|e| format!("{what}: {e}"))
}

// Integer matrix models of the Weyl groups of types A and B.

type Mat = Vec<Vec<i64>>;

struct LinearModel {
    gens: Vec<Mat>,
    positive: Vec<Vec<i64>>,
    height: Vec<i64>,
    order: usize,
}

fn identity(n: usize) -> Mat {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum())
                .collect()
        })
        .collect()
}

fn swap(n: usize, i: usize) -> Mat {
    let mut m = identity(n);
    m.swap(i, i + 1);
    m
}

fn unit(n: usize, i: usize, sign: i64) -> Vec<i64> {
    let mut v = vec![0; n];
    v[i] = sign;
    v
}

fn add(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

impl LinearModel {
    /// `A_n` permuting the coordinates of `R^{n+1}`.
    fn type_a(n: usize) -> Self {
        let d = n + 1;
        let mut positive = Vec::new();
        for i in 0..d {
            for j in i + 1..d {
                positive.push(add(&unit(d, i, 1), &unit(d, j, -1)));
            }
        }
        LinearModel {
            gens: (0..n).map(|i| swap(d, i)).collect(),
            positive,
            height: (0..d).map(|i| (d - i) as i64).collect(),
            order: factorial(d),
        }
    }

    /// `B_n` as signed permutations, the last generator negating the last coordinate.
    fn type_b(n: usize) -> Self {
        let mut gens: Vec<Mat> = (0..n - 1).map(|i| swap(n, i)).collect();
        let mut neg = identity(n);
        neg[n - 1][n - 1] = -1;
        gens.push(neg);
        let mut positive = Vec::new();
        for i in 0..n {
            positive.push(unit(n, i, 1));
            for j in i + 1..n {
                positive.push(add(&unit(n, i, 1), &unit(n, j, -1)));
                positive.push(add(&unit(n, i, 1), &unit(n, j, 1)));
            }
        }
        LinearModel {
            gens,
            positive,
            height: (0..n).map(|i| (n - i) as i64).collect(),
            order: (1 << n) * factorial(n),
        }
    }

    fn word(&self, w: &[usize]) -> Mat {
        w.iter().fold(identity(self.height.len()), |acc, &s| {
            mat_mul(&acc, &self.gens[s])
        })
    }

    /// Positive roots sent to negative roots.
    fn length(&self, m: &Mat) -> usize {
        self.positive
            .iter()
            .filter(|r| {
                let image: Vec<i64> = m
                    .iter()
                    .map(|row| row.iter().zip(r.iter()).map(|(a, b)| a * b).sum())
                    .collect();
                image
                    .iter()
                    .zip(&self.height)
                    .map(|(a, b)| a * b)
                    .sum::<i64>()
                    < 0
            })
            .count()
    }
}

struct CoxeterCase {
    name: &'static str,
    matrix: CoxeterMatrix,
    model: LinearModel,
}

fn coxeter_cases() -> Vec<CoxeterCase> {
    vec![
        CoxeterCase {
            name: "A1",
            matrix: CoxeterMatrix::type_a(1).unwrap(),
            model: LinearModel::type_a(1),
        },
        CoxeterCase {
            name: "A2",
            matrix: CoxeterMatrix::type_a(2).unwrap(),
            model: LinearModel::type_a(2),
        },
        CoxeterCase {
            name: "B2",
            matrix: CoxeterMatrix::type_b(2).unwrap(),
            model: LinearModel::type_b(2),
        },
        CoxeterCase {
            name: "A3",
            matrix: CoxeterMatrix::type_a(3).unwrap(),
            model: LinearModel::type_a(3),
        },
        CoxeterCase {
            name: "B3",
            matrix: CoxeterMatrix::type_b(3).unwrap(),
            model: LinearModel::type_b(3),
        },
    ]
}

/// Model matrices of every element, checked to form a faithful copy of the group.
fn model_matrices(sys: &CoxeterSystem, model: &LinearModel) -> Result<Vec<Mat>, String> {
    let mats: Vec<Mat> = sys.words.iter().map(|w| model.word(w)).collect();
    ensure!(
        sys.order() == model.order,
        "order {} but expected {}",
        sys.order(),
        model.order
    );
    let distinct: BTreeSet<&Mat> = mats.iter().collect();
    ensure!(distinct.len() == mats.len(), "two elements share a matrix");
    for x in 0..sys.order() {
        for y in 0..sys.order() {
            ensure!(
                mats[sys.mul(x, y)] == mat_mul(&mats[x], &mats[y]),
                "product {}·{} disagrees with the matrix model",
                sys.labels[x],
                sys.labels[y]
            );
        }
    }
    Ok(mats)
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut sizes = Vec::new();
    for case in coxeter_cases() {
        let sys = ok(
            rootoid_core::builders::build_coxeter(&case.matrix, 2000),
            case.name,
        )?;
        let mats = model_matrices(&sys, &case.model)?;
        let p = &sys.protorootoid;
        let report = classify(p);
        ensure!(report.principal, "{} is not principal", case.name);
        ensure!(report.rootoid, "{} is not a rootoid", case.name);
        ensure!(report.complete, "{} is not complete", case.name);
        let s: Vec<Mor> = sys.generators().into_iter().map(Mor).collect();
        let mut simple = report.simple_morphisms.clone();
        simple.sort();
        let mut expected = s.clone();
        expected.sort();
        ensure!(
            simple == expected,
            "{}: simple generators differ from S",
            case.name
        );
        let gen = p.groupoid().generated_subgroupoid(&s);
        for w in 0..sys.order() {
            let l_s = gen.length(Mor(w));
            let l_n = p.l_n(Mor(w));
            let l = case.model.length(&mats[w]);
            ensure!(
                l_s == Some(l_n) && l_n == l,
                "{}: lengths of {} are l_S={:?}, l_N={}, model={}",
                case.name,
                sys.labels[w],
                l_s,
                l_n,
                l
            );
        }
        sizes.push(format!("{}:{}", case.name, sys.order()));
    }
    let elapsed = start.elapsed();
    ensure!(elapsed.as_secs_f64() < 5.0, "took {:.2?}", elapsed);
    Ok(format!("{} in {:.2?}", sizes.join(" "), elapsed))
}

fn criterion_2() -> Outcome {
    let mut pairs = 0;
    for case in coxeter_cases() {
        let sys = ok(
            rootoid_core::builders::build_coxeter(&case.matrix, 2000),
            case.name,
        )?;
        let mats = model_matrices(&sys, &case.model)?;
        let c = &sys.checks;
        ensure!(
            c.inversion_formula && c.length_formula && c.parity,
            "{}: builder checks {:?}",
            case.name,
            c
        );
        ensure!(
            sys.reflections.len() == case.model.positive.len(),
            "{}: reflection count",
            case.name
        );
        let len = |m: &Mat| case.model.length(m);
        for w in 0..sys.order() {
            let n = sys.protorootoid.n(Mor(w));
            let lw = len(&mats[w]);
            ensure!(
                n.rank() == lw,
                "{}: |N({})| = {} but l = {}",
                case.name,
                sys.labels[w],
                n.rank(),
                lw
            );
            for (i, &t) in sys.reflections.iter().enumerate() {
                let ltw = len(&mat_mul(&mats[t], &mats[w]));
                ensure!(
                    (ltw < lw) == n.contains(i),
                    "{}: N({}) disagrees at {}",
                    case.name,
                    sys.labels[w],
                    sys.labels[t]
                );
                ensure!(
                    (ltw + lw) % 2 == 1,
                    "{}: parity fails at ({}, {})",
                    case.name,
                    sys.labels[t],
                    sys.labels[w]
                );
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} (t, w) pairs"))
}

/// Sign labels of integer grid points off every hyperplane.
fn grid_chambers(normals: &[Vec<i64>], dim: usize, radius: i64) -> BTreeSet<String> {
    let side = (2 * radius + 1) as usize;
    let mut out = BTreeSet::new();
    for code in 0..side.pow(dim as u32) {
        let x: Vec<i64> = (0..dim)
            .map(|k| (code / side.pow(k as u32) % side) as i64 - radius)
            .collect();
        let values: Vec<i64> = normals
            .iter()
            .map(|u| u.iter().zip(&x).map(|(a, b)| a * b).sum())
            .collect();
        if values.iter().all(|&v| v != 0) {
            out.insert(
                values
                    .iter()
                    .map(|&v| if v > 0 { '+' } else { '-' })
                    .collect(),
            );
        }
    }
    out
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let flat = fixtures::arrangement_a2();
    let labels: BTreeSet<String> = flat.chambers.iter().map(|c| c.label.clone()).collect();
    let oracle = grid_chambers(flat.arrangement.normals(), 2, 3);
    ensure!(
        labels == oracle && labels.len() == 6,
        "2D chambers {labels:?} vs {oracle:?}"
    );
    ensure!(
        flat.simplicial && flat.adjacency_agrees,
        "2D arrangement not simplicial"
    );
    let report = classify(&flat.protorootoid);
    ensure!(
        report.rootoid && report.complete && report.principal,
        "2D arrangement: rootoid={} complete={} principal={}",
        report.rootoid,
        report.complete,
        report.principal
    );

    let cone = fixtures::arrangement_non_simplicial();
    let labels: BTreeSet<String> = cone.chambers.iter().map(|c| c.label.clone()).collect();
    let oracle = grid_chambers(cone.arrangement.normals(), 3, 3);
    ensure!(
        labels == oracle && labels.len() == 14,
        "3D chambers {} vs oracle {}",
        labels.len(),
        oracle.len()
    );
    ensure!(
        !cone.simplicial && cone.adjacency_agrees,
        "3D arrangement reported simplicial"
    );
    let (chamber, walls) = cone.non_simplicial_witness.clone().unwrap_or_default();
    let verdict = is_rootoid(&cone.protorootoid);
    let Some(failure) = verdict.failure else {
        return Err("3D arrangement reported as a rootoid".into());
    };
    let elapsed = start.elapsed();
    ensure!(elapsed.as_secs_f64() < 5.0, "took {:.2?}", elapsed);
    Ok(format!(
        "6 and 14 chambers; chamber {chamber} has {walls} walls; {}",
        failure.describe(&cone.protorootoid)
    ))
}

fn criterion_4() -> Outcome {
    let mut named = 0;
    let mut verdicts = [0usize; 2];
    let mut all = named_fixtures();
    all.extend(random_set_systems(60, 4));
    for f in &all {
        if !f.p.is_faithful() {
            continue;
        }
        let slc = ok(slc_check(&f.p), &f.name)?;
        let rootoid = is_rootoid(&f.p).holds();
        ensure!(
            slc.is_none() == rootoid,
            "{}: slc says {} but is_rootoid says {}",
            f.name,
            slc.is_none(),
            rootoid
        );
        verdicts[usize::from(rootoid)] += 1;
        if !f.name.starts_with("random") {
            named += 1;
        }
    }
    ensure!(named >= 10, "only {named} named faithful fixtures");
    ensure!(
        verdicts[0] > 0 && verdicts[1] > 0,
        "only one verdict value seen"
    );
    Ok(format!(
        "{named} named and {} random fixtures; {} rootoids, {} non-rootoids",
        verdicts[0] + verdicts[1] - named,
        verdicts[1],
        verdicts[0]
    ))
}

fn criterion_5() -> Outcome {
    let padded = fixtures::padded_a2();
    let report = classify(&padded);
    ensure!(report.preprincipal, "padded A2 is not preprincipal");
    ensure!(!report.principal, "padded A2 is principal");
    let abridged = abridge(&padded);
    let after = classify(&abridged);
    ensure!(after.principal, "abridgement is not principal");
    ensure!(
        after.simple_morphisms == report.atomic_morphisms,
        "simple generators {:?} differ from atomic generators {:?}",
        after.simple_morphisms,
        report.atomic_morphisms
    );
    let gp = padded.groupoid();
    let names: Vec<&str> = after
        .simple_morphisms
        .iter()
        .map(|&m| gp.label(m))
        .collect();
    Ok(format!("abridged simple generators {}", names.join(",")))
}

fn is_isomorphism(f: &PrdMorphism) -> bool {
    check_prd_morphism(f).is_ok() && f.mu.iter().all(|m| m.is_bijective())
}

fn criterion_6() -> Outcome {
    let sets = [
        ("A1", fixtures::coxeter_a1()),
        ("A2", fixtures::coxeter_a2()),
        ("B2", fixtures::coxeter_b2()),
        ("boolean square", fixtures::boolean_square()),
        ("no meets", fixtures::no_meets()),
        ("jop failure", fixtures::jop_failure()),
        ("two components", fixtures::two_component()),
        (
            "plane arrangement",
            (*fixtures::arrangement_a2().protorootoid).clone(),
        ),
    ];
    for (name, p) in &sets {
        let t = ok(SetProtorootoid::new(p.clone()), name)?;
        let f = ok(lk_comparison(&t), name)?;
        ensure!(
            is_isomorphism(&f),
            "{name}: comparison is not an isomorphism"
        );
    }
    let mut signed = 0;
    for m in [
        CoxeterMatrix::type_a(2).unwrap(),
        CoxeterMatrix::type_b(2).unwrap(),
    ] {
        let sys = fixtures::coxeter_system(&m);
        let (kl, _) = ok(kl_comparison(&sys.signed), "standard signed set")?;
        for g in sys.protorootoid.groupoid().morphisms() {
            ensure!(
                kl.phi_orbits(g) == sys.signed.phi_orbits(g),
                "inversion sets differ at {}",
                sys.labels[g.0]
            );
        }
        signed += 1;
    }
    ok(
        kl_comparison(&fixtures::arrangement_a2().signed),
        "arrangement signed set",
    )?;
    Ok(format!(
        "{} set protorootoids, {} Coxeter signed sets and one arrangement",
        sets.len(),
        signed
    ))
}

fn criterion_7() -> Outcome {
    let base = Arc::new(fixtures::coxeter_a2());
    let (up, f) = ok(cover(&base), "cover")?;
    let gp = up.groupoid();
    ensure!(
        gp.num_objects() == 6 && gp.num_morphisms() == 36,
        "cover has {} objects and {} morphisms",
        gp.num_objects(),
        gp.num_morphisms()
    );
    let down = base.weak_order(Obj(0));
    for a in gp.objects() {
        ensure!(
            up.weak_order(a).poset().isomorphism(down.poset()).is_some(),
            "star at {} is not isomorphic to the A2 weak order",
            gp.object_label(a)
        );
    }
    let transfer = ok(covering_transfer(&f), "transfer")?;
    ensure!(
        transfer.consistent && transfer.generators_transfer,
        "transfer report {:?}",
        transfer
    );
    for row in &transfer.rows {
        ensure!(
            row.upstairs == row.downstairs,
            "{} is not preserved",
            row.property
        );
    }
    let grade = ok(grade_morphism(&f), "grade")?;
    ensure!(
        grade.in_Rd && grade.in_RdE,
        "covering grade {:?}",
        grade.witnesses
    );
    Ok(format!(
        "{} flags preserved; in_Rd and in_RdE",
        transfer.rows.len()
    ))
}

fn check_complete(name: &str, p: Protorootoid) -> Result<(), String> {
    let ab = Arc::new(abridge(&p));
    let cs = ok(complete_structure(&ab), name)?;
    let gp = ab.groupoid();
    for a in gp.objects() {
        let w = cs.omega[a.0];
        ensure!(
            gp.cod(w) == a && gp.dom(w) == cs.opposite[a.0],
            "{name}: ω at {} misplaced",
            gp.object_label(a)
        );
        ensure!(
            gp.star(a).iter().all(|&x| leq(&ab, x, w)),
            "{name}: ω is not the maximum"
        );
    }
    for g in gp.morphisms() {
        let w = cs.omega[gp.dom(g).0];
        let complement = ok(ab.ring(gp.cod(g)).complement(ab.n(g)), name)?;
        ensure!(
            *ab.n(gp.mul(g, w)) == complement,
            "{name}: N(gω) is not the complement at {}",
            gp.label(g)
        );
    }
    for a in gp.objects() {
        let w = cs.omega[a.0];
        let star = gp.star(cs.opposite[a.0]);
        for &x in star {
            for &y in star {
                ensure!(
                    leq(&ab, x, y) == leq(&ab, gp.mul(w, y), gp.mul(w, x)),
                    "{name}: h ↦ ωh is not an anti-isomorphism"
                );
            }
        }
        let wo = ab.weak_order(a);
        let poset = wo.poset();
        let idx = |m: Mor| wo.index_of(m).unwrap();
        let perp = |x: Mor| gp.mul(x, cs.omega[gp.dom(x).0]);
        let (bottom, top) = (poset.minimum(), poset.maximum());
        for &x in gp.star(a) {
            let c = perp(x);
            ensure!(
                ab.n(perp(c)) == ab.n(x),
                "{name}: complement is not involutive"
            );
            ensure!(
                poset.meet(idx(x), idx(c)) == bottom,
                "{name}: x ∧ x⊥ is not the bottom"
            );
            ensure!(
                poset.join(idx(x), idx(c)) == top,
                "{name}: x ∨ x⊥ is not the top"
            );
            for &y in gp.star(a) {
                ensure!(
                    leq(&ab, x, y) == leq(&ab, perp(y), c),
                    "{name}: complement does not reverse order"
                );
            }
        }
    }
    ensure!(
        check_prd_morphism(&cs.duality).is_ok(),
        "{name}: D is not a morphism"
    );
    let twice = ok(cs.duality.then(&cs.duality), name)?;
    ensure!(
        twice.same_data(&PrdMorphism::identity(Arc::clone(&ab))),
        "{name}: D² is not the identity"
    );
    Ok(())
}

fn criterion_8() -> Outcome {
    let cases = [
        ("A2", fixtures::coxeter_a2()),
        ("B2", fixtures::coxeter_b2()),
        ("B3", fixtures::coxeter_b3()),
        (
            "plane arrangement",
            (*fixtures::arrangement_a2().protorootoid).clone(),
        ),
    ];
    for (name, p) in cases {
        check_complete(name, p)?;
    }
    Ok("A2, B2, B3 and the plane arrangement".into())
}

fn cocycle_law(f: &Fixture) -> Result<usize, String> {
    let p = &f.p;
    let gp = p.groupoid();
    let mut count = 0;
    for (g, h) in gp.composable_pairs() {
        let moved = ok(p.act(g, p.n(h)), &f.name)?;
        let expected = ok(p.n(g).sum(&moved), &f.name)?;
        ensure!(
            *p.n(gp.mul(g, h)) == expected,
            "{}: cocycle law fails at ({}, {})",
            f.name,
            gp.label(g),
            gp.label(h)
        );
        count += 1;
    }
    Ok(count)
}

fn disjoint(x: &SetElem, y: &SetElem) -> bool {
    x.is_disjoint(y).unwrap()
}

fn comparability_reformulations(f: &Fixture) -> Result<(), String> {
    let p = &f.p;
    let gp = p.groupoid();
    for (x, y) in gp.composable_pairs() {
        let z = gp.mul(x, y);
        let (xs, ys, zs) = (gp.inverse(x), gp.inverse(y), gp.inverse(z));
        let c = [
            leq(p, x, z),
            disjoint(p.n(x), &p.act(x, p.n(y)).unwrap()),
            disjoint(p.n(xs), p.n(y)),
            disjoint(p.n(ys), &p.act(ys, p.n(xs)).unwrap()),
            leq(p, ys, zs),
        ];
        ensure!(
            c.iter().all(|&v| v == c[0]),
            "{}: comparability reformulations disagree at ({}, {}): {:?}",
            f.name,
            gp.label(x),
            gp.label(y),
            c
        );
    }
    Ok(())
}

fn weak_preorder_properties(f: &Fixture) -> Result<(), String> {
    let p = &f.p;
    let gp = p.groupoid();
    let inv = |g: Mor| gp.inverse(g);
    let mul = |g: Mor, h: Mor| gp.mul(g, h);
    let name = &f.name;
    for a in gp.objects() {
        let one = gp.identity(a);
        for &x in gp.star(a) {
            ensure!(leq(p, one, x), "{name}: (a) fails at {}", gp.label(x));
            let b = gp.dom(x);
            for &y in gp.star(b) {
                let xy = mul(x, y);
                if leq(p, x, xy) {
                    ensure!(
                        leq(p, inv(y), inv(xy)),
                        "{name}: (b) fails at ({}, {})",
                        gp.label(x),
                        gp.label(y)
                    );
                }
                for &w in gp.star(b) {
                    let xw = mul(x, w);
                    if leq(p, x, xy) && leq(p, x, xw) {
                        ensure!(
                            leq(p, xy, xw) == leq(p, y, w),
                            "{name}: (c) fails at ({}, {}, {})",
                            gp.label(x),
                            gp.label(y),
                            gp.label(w)
                        );
                    }
                    if leq(p, y, w) && leq(p, w, y) {
                        ensure!(leq(p, xy, xw), "{name}: (e) fails");
                    }
                }
            }
        }
    }
    if max_star(p) > 24 {
        return Ok(());
    }
    for a in gp.objects() {
        for &v in gp.star(a) {
            let vs = inv(v);
            for &x in gp.star(a) {
                if !leq(p, vs, mul(vs, x)) {
                    continue;
                }
                let b = gp.dom(x);
                for &y in gp.star(b) {
                    if !leq(p, v, mul(x, y)) {
                        continue;
                    }
                    for &w in gp.star(b) {
                        if leq(p, inv(y), mul(inv(y), w)) {
                            ensure!(
                                leq(p, vs, mul(mul(vs, x), w)),
                                "{name}: (d) fails at ({}, {}, {}, {})",
                                gp.label(v),
                                gp.label(x),
                                gp.label(y),
                                gp.label(w)
                            );
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

/// Compatibility of a random expression against its blocks and their contraction.
fn substitution(fixtures: &[Fixture], samples: usize, rng: &mut ChaCha8Rng) -> Result<(), String> {
    let pool: Vec<&Fixture> = fixtures
        .iter()
        .filter(|f| f.p.groupoid().num_objects() > 0)
        .collect();
    for _ in 0..samples {
        let f = pool[rng.gen_range(0..pool.len())];
        let p = &f.p;
        let gp = p.groupoid();
        let anchor = Obj(rng.gen_range(0..gp.num_objects()));
        let len = rng.gen_range(1..=8);
        let e = random_expression(p, anchor, len, rng);
        let mors = e.morphisms();
        let mut cuts: Vec<usize> = (1..len).filter(|_| rng.gen_bool(0.4)).collect();
        cuts.insert(0, 0);
        cuts.push(len);
        let mut blocks_ok = true;
        let mut contracted = Vec::new();
        for pair in cuts.windows(2) {
            let block = &mors[pair[0]..pair[1]];
            let sub = Expression::new(gp, gp.cod(block[0]), block.to_vec()).unwrap();
            blocks_ok &= p.is_compatible(&sub);
            contracted.push(sub.value(gp));
        }
        let outer = Expression::new(gp, anchor, contracted).unwrap();
        ensure!(
            p.is_compatible(&e) == (blocks_ok && p.is_compatible(&outer)),
            "{}: substitution fails on {:?} cut at {:?}",
            f.name,
            mors.iter().map(|&m| gp.label(m)).collect::<Vec<_>>(),
            cuts
        );
    }
    Ok(())
}

fn rank_identity(f: &Fixture) -> Result<(), String> {
    for p in [f.p.as_ref(), &abridge(&f.p)] {
        let gp = p.groupoid();
        for a in gp.objects() {
            let ring = p.ring(a);
            for &g in gp.star(a) {
                for &h in gp.star(a) {
                    let (x, y) = (p.n(g), p.n(h));
                    let lhs = ring.rank(x) + ring.rank(y);
                    let rhs =
                        ring.rank(&x.intersection(y).unwrap()) + ring.rank(&x.union(y).unwrap());
                    ensure!(
                        lhs == rhs,
                        "{}: rank identity fails at ({}, {})",
                        f.name,
                        gp.label(g),
                        gp.label(h)
                    );
                }
            }
        }
    }
    Ok(())
}

/// Length additivity against compatibility and the weak order, with model lengths.
fn length_characterizations(case: &CoxeterCase, rng: &mut ChaCha8Rng) -> Result<usize, String> {
    let sys = fixtures::coxeter_system(&case.matrix);
    let mats = model_matrices(&sys, &case.model)?;
    let lengths: Vec<usize> = mats.iter().map(|m| case.model.length(m)).collect();
    let p = &sys.protorootoid;
    let gp = p.groupoid();
    let l = |g: Mor| lengths[g.0];
    let mut pairs = 0;
    for x in gp.morphisms() {
        for y in gp.morphisms() {
            let xy = gp.mul(x, y);
            let compatible = p.is_compatible(&Expression::new(gp, gp.cod(x), vec![x, y]).unwrap());
            ensure!(
                compatible == (l(xy) == l(x) + l(y)),
                "{}: compatibility of ({}, {})",
                case.name,
                gp.label(x),
                gp.label(y)
            );
            ensure!(
                compatible == (p.l_n(xy) == p.l_n(x) + p.l_n(y)),
                "{}: l_N additivity",
                case.name
            );
            let between = gp.mul(gp.inverse(x), y);
            ensure!(
                leq(p, x, y) == (l(y) == l(x) + l(between)),
                "{}: weak order of ({}, {})",
                case.name,
                gp.label(x),
                gp.label(y)
            );
            pairs += 1;
        }
    }
    let report = length_reports(p, 300, 8, rng);
    ensure!(
        report.holds() && report.used_l_s,
        "{}: {:?}",
        case.name,
        report.mismatches
    );
    Ok(pairs)
}

fn criterion_9() -> Outcome {
    let start = Instant::now();
    let mut all = named_fixtures();
    all.extend(random_set_systems(40, 9));
    let mut pairs = 0;
    for f in &all {
        pairs += cocycle_law(f)?;
        comparability_reformulations(f)?;
        weak_preorder_properties(f)?;
        rank_identity(f)?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    substitution(&all, 1000, &mut rng)?;
    let mut length_pairs = 0;
    for case in coxeter_cases()
        .into_iter()
        .filter(|c| c.name == "A2" || c.name == "B2")
    {
        length_pairs += length_characterizations(&case, &mut rng)?;
    }
    let mut stars = 0;
    for f in all.iter().filter(|f| max_star(&f.p) <= 20) {
        let pair = is_rootoid(&f.p).holds();
        let full = ok(is_rootoid_exhaustive(&f.p), &f.name)?.holds();
        ensure!(
            pair == full,
            "{}: pairwise JOP {} but exhaustive {}",
            f.name,
            pair,
            full
        );
        stars += 1;
    }
    let elapsed = start.elapsed();
    ensure!(elapsed.as_secs_f64() < 60.0, "took {:.2?}", elapsed);
    Ok(format!(
        "{} fixtures, {pairs} composable pairs, 1000 expressions, {length_pairs} length pairs, {stars} JOP comparisons in {:.2?}",
        all.len(),
        elapsed
    ))
}

fn criterion_10() -> Outcome {
    let sys = fixtures::coxeter_system(&CoxeterMatrix::type_b(2).unwrap());
    let sub = ok(
        reflection_subgroup(&sys, &["r", "srs"]),
        "reflection subgroup",
    )?;
    let p = &sub.protorootoid;
    let gp = p.groupoid();
    let cocycle = cocycle_law(&Fixture {
        name: "W'".into(),
        p: Arc::clone(p),
    })?;
    let sub_reflections: BTreeSet<&str> = sub
        .reflections
        .iter()
        .map(|&t| sys.labels[t].as_str())
        .collect();
    ensure!(
        sub.elements.len() == 4,
        "W' has {} elements",
        sub.elements.len()
    );
    for (i, &w) in sub.elements.iter().enumerate() {
        let expected: BTreeSet<&str> = sys
            .inversion_labels(w)
            .into_iter()
            .filter(|t| sub_reflections.contains(t))
            .collect();
        let actual: BTreeSet<&str> = p.n(Mor(i)).labels().into_iter().collect();
        ensure!(
            actual == expected,
            "N'({}) = {:?} but N ∩ T' = {:?}",
            sys.labels[w],
            actual,
            expected
        );
    }
    let simple: BTreeSet<&str> = sub.simple.iter().map(|&w| sys.labels[w].as_str()).collect();
    ensure!(simple == BTreeSet::from(["r", "srs"]), "S' = {simple:?}");
    let s_prime: Vec<Mor> = simple.iter().map(|l| gp.morphism(l).unwrap()).collect();
    let gen = gp.generated_subgroupoid(&s_prime);
    ensure!(
        gp.morphisms().all(|g| gen.length(g) == Some(p.l_n(g))),
        "l_S' differs from |N'|"
    );
    ensure!(sub.exchange_holds, "exchange condition fails");
    ensure!(sub.order_preserving, "inclusion is not order preserving");
    let witness = match &sub.non_isomorphism_witness {
        Some((x, y)) => format!("non-isomorphism witness ({x}, {y})"),
        None => "inclusion reflects the order".into(),
    };
    Ok(format!("{cocycle} cocycle pairs; S' = r,srs; {witness}"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("Coxeter rootoids", criterion_1),
        ("reflection cocycle", criterion_2),
        ("arrangement dichotomy", criterion_3),
        ("semilocal criterion", criterion_4),
        ("abridgement", criterion_5),
        ("signed round trip", criterion_6),
        ("covering transfer", criterion_7),
        ("complete structure", criterion_8),
        ("property suites", criterion_9),
        ("reflection subgroup", criterion_10),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = panic::catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(detail) => println!("criterion {}: PASS {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL {name}: {why}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
