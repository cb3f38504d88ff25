//! Wu formula against an expansion in formal roots.

use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};
use swcore::f2algebra::{Poly, Ring, TermOrder, Variable};
use swcore::formalring::{wu_sq, wu_table, Ambient};

/// Each `w_j(r)` written as `e_j` of its own formal roots.
struct Roots {
    ring: Ring,
    images: Vec<Poly>,
}

impl Roots {
    fn new(group: &str) -> (Ambient, Roots) {
        let r = super::common::rep(group);
        let amb = Ambient::new(&r).unwrap();
        let mut vars = Vec::new();
        let mut owned = Vec::new();
        for (i, rr) in r.reals.iter().enumerate() {
            let start = vars.len();
            if !rr.trivial {
                for k in 0..rr.dim {
                    vars.push(Variable::new(format!("t{i}_{k}"), 1));
                }
            }
            owned.push((start..vars.len()).collect::<Vec<_>>());
        }
        let ring = Ring::new(vars, TermOrder::DegRevLex).unwrap();
        let mut images = vec![Poly::zero(); amb.ring.nvars()];
        for (i, idx) in amb.index.iter().enumerate() {
            for (j, &v) in idx.iter().enumerate() {
                images[v] = super::common::elementary(&ring, &owned[i], j + 1);
            }
        }
        (amb, Roots { ring, images })
    }

    /// Total square `t -> t + t^2` on the root ring, degree `d + k` part.
    fn sq(&self, k: u32, p: &Poly) -> Poly {
        let total: Vec<Poly> = (0..self.ring.nvars())
            .map(|v| {
                let t = Poly::var(&self.ring, v);
                t.add(&t.square(), &self.ring)
            })
            .collect();
        let d = p.homogeneous_degree().unwrap_or(0);
        p.substitute(&total, &self.ring).homogeneous_part(d + k)
    }
}

fn agrees(
    (group, factors, k): (&'static str, Vec<prop::sample::Index>, u32),
) -> Result<(), TestCaseError> {
    let (amb, roots) = Roots::new(group);
    let table = wu_table(&super::common::rep(group), &amb);
    let mut p = Poly::one();
    for f in &factors {
        let v = f.index(amb.ring.nvars());
        p = p.mul(&Poly::var(&amb.ring, v), &amb.ring);
    }
    let got = wu_sq(&table, k, &p)
        .unwrap()
        .substitute(&roots.images, &roots.ring);
    let want = roots.sq(k, &p.substitute(&roots.images, &roots.ring));
    prop_assert_eq!(got, want);
    Ok(())
}

pub const NAME: &str = "Wu formula agrees with formal roots for dims <= 4, k <= 4";

pub fn run(cases: u32) -> Result<(), String> {
    let config = Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    };
    let strategy = (
        prop::sample::select(vec!["z4", "q8", "g16_11"]),
        prop::collection::vec(any::<prop::sample::Index>(), 1..=2),
        0u32..=4,
    );
    TestRunner::new(config)
        .run(&strategy, agrees)
        .map_err(|e| e.to_string())
}
