//! Fixture lists shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rootoid_core::cat::cover;
use rootoid_core::fixtures;
use rootoid_core::groupoid::Mor;
use rootoid_core::prd::Protorootoid;

pub struct Fixture {
    pub name: String,
    pub p: Arc<Protorootoid>,
}

pub fn fixture(name: &str, p: Protorootoid) -> Fixture {
    Fixture {
        name: name.into(),
        p: Arc::new(p),
    }
}

pub fn named_fixtures() -> Vec<Fixture> {
    let a2 = Arc::new(fixtures::coxeter_a2());
    let (up, _) = cover(&a2).expect("cover of A2");
    vec![
        fixture("A1", fixtures::coxeter_a1()),
        fixture("A2", fixtures::coxeter_a2()),
        fixture("B2", fixtures::coxeter_b2()),
        fixture("A3", fixtures::coxeter_a3()),
        fixture("B3", fixtures::coxeter_b3()),
        fixture("I2(5)", fixtures::coxeter_i2(5)),
        fixture("I2(6)", fixtures::coxeter_i2(6)),
        fixture("trivial", fixtures::trivial()),
        fixture("empty", fixtures::empty()),
        fixture("zero cocycle A2", fixtures::zero_cocycle_a2()),
        fixture("padded A2", fixtures::padded_a2()),
        fixture("no meets", fixtures::no_meets()),
        fixture("jop failure", fixtures::jop_failure()),
        fixture("boolean square", fixtures::boolean_square()),
        fixture("two components", fixtures::two_component()),
        fixture(
            "line arrangement",
            (*fixtures::arrangement_line().protorootoid).clone(),
        ),
        fixture(
            "plane arrangement",
            (*fixtures::arrangement_a2().protorootoid).clone(),
        ),
        fixture(
            "non-simplicial arrangement",
            (*fixtures::arrangement_non_simplicial().protorootoid).clone(),
        ),
        Fixture {
            name: "cover of A2".into(),
            p: up,
        },
    ]
}

/// Random families of subsets of `{0, .., k-1}` containing the empty set.
pub fn random_set_systems(count: usize, seed: u64) -> Vec<Fixture> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let k = rng.gen_range(2..=4);
            let mut family: BTreeSet<Vec<usize>> = BTreeSet::new();
            family.insert(Vec::new());
            let size = rng.gen_range(2..=(1usize << k).min(9));
            while family.len() < size {
                let mask: usize = rng.gen_range(1..1 << k);
                family.insert((0..k).filter(|b| mask >> b & 1 == 1).collect());
            }
            let sets: Vec<&[usize]> = family.iter().map(Vec::as_slice).collect();
            fixture(
                &format!("random set system {i}"),
                fixtures::set_system(&sets, k),
            )
        })
        .collect()
}

pub fn max_star(p: &Protorootoid) -> usize {
    let gp = p.groupoid();
    gp.objects().map(|a| gp.star(a).len()).max().unwrap_or(0)
}

pub fn leq(p: &Protorootoid, x: Mor, y: Mor) -> bool {
    p.n(x).is_subset(p.n(y)).unwrap()
}
