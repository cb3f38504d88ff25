//! Bundled fixture runs and seeded property checks.

use std::path::Path;

use clap::ValueEnum;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use swcore::chow::{chern_classes, chow_pipeline, milnor_derivations, UnstableAlgebra};
use swcore::error::{Error, Result};
use swcore::f2algebra::{
    buchberger, format_poly, monomials_of_degree, parse_poly, BitVec, Echelon, Limits, Poly,
    PresentedAlgebra, Ring, SqTable, TermOrder, Variable,
};
use swcore::formalring::{build_formal_ring, FormalOptions, FormalRing};
use swcore::repdata::RepTheoryData;
use swcore::swsolver::{solve, FinalPresentation, Sequential, SolveOptions, SolveStatus};

use crate::repdoc::{parse_cohomology, parse_repdata};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    FormalRing,
    Solve,
    Chow,
    Properties,
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub suite: Suite,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

const BUNDLED: [(&str, &str); 8] = [
    (
        "z4.repdata.json",
        include_str!("../fixtures/z4.repdata.json"),
    ),
    (
        "z4.cohomology.json",
        include_str!("../fixtures/z4.cohomology.json"),
    ),
    (
        "q8.repdata.json",
        include_str!("../fixtures/q8.repdata.json"),
    ),
    (
        "q8.cohomology.json",
        include_str!("../fixtures/q8.cohomology.json"),
    ),
    (
        "g16_11.repdata.json",
        include_str!("../fixtures/g16_11.repdata.json"),
    ),
    (
        "g16_11.cohomology.json",
        include_str!("../fixtures/g16_11.cohomology.json"),
    ),
    (
        "z2cubed.repdata.json",
        include_str!("../fixtures/z2cubed.repdata.json"),
    ),
    (
        "z2cubed.cohomology.json",
        include_str!("../fixtures/z2cubed.cohomology.json"),
    ),
];

struct Fixtures<'a> {
    dir: Option<&'a Path>,
}

impl Fixtures<'_> {
    fn text(&self, name: &str) -> Result<String> {
        match self.dir {
            Some(d) => crate::cli::read_input(&d.join(name)),
            None => Ok(BUNDLED
                .iter()
                .find(|(n, _)| *n == name)
                .unwrap()
                .1
                .to_string()),
        }
    }

    fn rep(&self, group: &str) -> Result<RepTheoryData> {
        parse_repdata(&self.text(&format!("{group}.repdata.json"))?)
    }

    fn formal(&self, group: &str) -> Result<(RepTheoryData, FormalRing)> {
        let rep = self.rep(group)?;
        let w = build_formal_ring(&rep, &FormalOptions::default())?;
        Ok((rep, w))
    }

    fn solved(&self, group: &str) -> Result<FinalPresentation> {
        let (rep, w) = self.formal(group)?;
        let limits = Limits::default();
        let h = parse_cohomology(&self.text(&format!("{group}.cohomology.json"))?, &limits)?;
        let r = solve(&rep, &w, &h, &SolveOptions::default(), &Sequential)?;
        if r.status != SolveStatus::Success {
            return Err(Error::Inconsistent(format!(
                "solve ended with {}: {}",
                r.status.code(),
                r.message.unwrap_or_default()
            )));
        }
        Ok(r.presentation.unwrap())
    }
}

fn expect(cond: bool, what: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Inconsistent(what()))
    }
}

fn same_ideal(ring: &Ring, got: &[Poly], want: &[&str]) -> Result<bool> {
    let limits = Limits::default();
    let want: Vec<Poly> = want
        .iter()
        .map(|s| parse_poly(ring, s))
        .collect::<Result<_>>()?;
    let a = buchberger(ring, got, &limits)?;
    let b = buchberger(ring, &want, &limits)?;
    swcore::f2algebra::ideal_equal(&a, &b, &limits)
}

fn formal_checks(fx: &Fixtures, out: &mut Vec<Check>) {
    push(out, Suite::FormalRing, "formal-ring/z4", || {
        let (_, w) = fx.formal("z4")?;
        let gens = swcore::f2algebra::minimal_generators(&w.ideal, &Limits::default())?;
        let mut got: Vec<String> = gens
            .iter()
            .map(|p| format_poly(&w.ambient.ring, p))
            .collect();
        got.sort();
        expect(got == ["w1(alpha)^2", "w1(beta)"], || {
            format!("ambient generators {got:?}")
        })
    });
    push(out, Suite::FormalRing, "formal-ring/q8", || {
        let (_, w) = fx.formal("q8")?;
        let ring = w.ring();
        let names: Vec<&str> = (0..ring.nvars()).map(|v| ring.name(v)).collect();
        expect(names.len() == 3 && names.contains(&"w4(Delta)"), || {
            format!("survivors {names:?}")
        })?;
        expect(w.minimal_relations.len() == 2, || {
            format!("{} minimal relations", w.minimal_relations.len())
        })
    });
    push(out, Suite::FormalRing, "formal-ring/g16_11", || {
        let (_, w) = fx.formal("g16_11")?;
        let ok = same_ideal(
            w.ring(),
            &w.minimal_relations,
            &["w1(r3)^2 + w1(r2)^2", "w1(r3)*w1(r2)^2 + w1(r2)^3"],
        )?;
        expect(ok, || "relations differ from the expected pair".into())
    });
}

fn solve_checks(fx: &Fixtures, out: &mut Vec<Check>) {
    for (group, adjoined) in [("z4", 0), ("q8", 0), ("g16_11", 1), ("z2cubed", 0)] {
        push(out, Suite::Solve, &format!("solve/{group}"), || {
            let fp = fx.solved(group)?;
            let n = fp.ring.nvars() - fp.sw_count;
            expect(n == adjoined, || format!("{n} adjoined generators"))
        });
    }
}

fn chow_checks(fx: &Fixtures, out: &mut Vec<Check>) {
    for (group, n) in [("z2cubed", 1), ("q8", 0)] {
        push(out, Suite::Chow, &format!("chow/{group}"), || {
            let fp = fx.solved(group)?;
            let a = UnstableAlgebra::from_presentation(&fp)?;
            let (r, _) = chow_pipeline(&a, &chern_classes(&fp), 4, &Limits::default())?;
            expect(r.equal && r.termination == Some(n), || {
                format!("equal {}, termination {:?}", r.equal, r.termination)
            })
        });
    }
}

fn random_ring(rng: &mut StdRng) -> Result<Ring> {
    let n = rng.gen_range(2..=4);
    let vars = (0..n)
        .map(|i| Variable::new(format!("x{i}"), rng.gen_range(1..=2)))
        .collect();
    Ring::new(vars, TermOrder::DegRevLex)
}

fn random_homogeneous(ring: &Ring, d: u32, rng: &mut StdRng) -> Poly {
    let terms = monomials_of_degree(ring, d)
        .into_iter()
        .filter(|_| rng.gen_bool(0.5))
        .collect();
    Poly::from_terms(ring, terms)
}

fn property_checks(out: &mut Vec<Check>) {
    let limits = Limits::default();
    push(
        out,
        Suite::Properties,
        "properties/s-pair-criterion",
        || {
            let mut rng = StdRng::seed_from_u64(1);
            for case in 0..100 {
                let ring = random_ring(&mut rng)?;
                let gens: Vec<Poly> = (0..3)
                    .map(|_| {
                        let d = rng.gen_range(1..=4);
                        random_homogeneous(&ring, d, &mut rng)
                    })
                    .collect();
                let gb = buchberger(&ring, &gens, &limits)?;
                expect(gb.satisfies_s_pair_criterion(), || format!("case {case}"))?;
                expect(gens.iter().all(|g| gb.contains(g)), || {
                    format!("case {case}: generator lost")
                })?;
            }
            Ok(())
        },
    );
    push(
        out,
        Suite::Properties,
        "properties/graded-dimension",
        || {
            let mut rng = StdRng::seed_from_u64(2);
            for case in 0..100 {
                let ring = random_ring(&mut rng)?;
                let gens: Vec<Poly> = (0..2)
                    .map(|_| {
                        let d = rng.gen_range(1..=3);
                        random_homogeneous(&ring, d, &mut rng)
                    })
                    .collect();
                let alg = PresentedAlgebra::new(&ring, &gens, &limits)?;
                for d in 0..=5 {
                    let mons = monomials_of_degree(&ring, d);
                    let mut ech = Echelon::new();
                    for g in &gens {
                        let Some(e) = g.homogeneous_degree() else {
                            continue;
                        };
                        if e > d {
                            continue;
                        }
                        for m in monomials_of_degree(&ring, d - e) {
                            let p = g.mul_monomial(&m);
                            let mut v = BitVec::zeros(mons.len());
                            for t in p.terms() {
                                v.set(mons.iter().position(|x| x == t).unwrap(), true);
                            }
                            let _ = ech.insert(&v);
                        }
                    }
                    let want = mons.len() - ech.rank();
                    let got = alg.graded_dimension(d);
                    expect(got == want, || {
                        format!("case {case} degree {d}: {got} != {want}")
                    })?;
                }
            }
            Ok(())
        },
    );
    push(out, Suite::Properties, "properties/cartan-formula", || {
        let mut rng = StdRng::seed_from_u64(3);
        let ring = Ring::new(
            (0..3).map(|i| Variable::new(format!("x{i}"), 1)).collect(),
            TermOrder::DegRevLex,
        )?;
        let table = SqTable::degree_one(&ring);
        for case in 0..100 {
            let (a, b) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
            let x = random_homogeneous(&ring, a, &mut rng);
            let y = random_homogeneous(&ring, b, &mut rng);
            for k in 0..=a + b {
                let lhs = table.sq(k, &x.mul(&y, &ring))?;
                let mut rhs = Poly::default();
                for i in 0..=k {
                    rhs.add_assign(&table.sq(i, &x)?.mul(&table.sq(k - i, &y)?, &ring), &ring);
                }
                expect(lhs == rhs, || format!("case {case} Sq^{k}"))?;
            }
        }
        Ok(())
    });
    push(
        out,
        Suite::Properties,
        "properties/milnor-square-zero",
        || {
            let mut rng = StdRng::seed_from_u64(4);
            let ring = Ring::new(
                (0..3).map(|i| Variable::new(format!("x{i}"), 1)).collect(),
                TermOrder::DegRevLex,
            )?;
            let a =
                UnstableAlgebra::new(PresentedAlgebra::free(&ring), SqTable::degree_one(&ring))?;
            let qs = milnor_derivations(&a, 2)?;
            for case in 0..50 {
                let d = rng.gen_range(1..=4);
                let p = random_homogeneous(&ring, d, &mut rng);
                for (i, qi) in qs.iter().enumerate() {
                    let qp = qi.apply(a.algebra(), &p);
                    expect(qi.apply(a.algebra(), &qp).is_zero(), || {
                        format!("case {case}: Q_{i}Q_{i} != 0")
                    })?;
                    for (j, qj) in qs.iter().enumerate() {
                        let l = qi.apply(a.algebra(), &qj.apply(a.algebra(), &p));
                        let r = qj.apply(a.algebra(), &qp);
                        expect(l == r, || {
                            format!("case {case}: Q_{i}, Q_{j} do not commute")
                        })?;
                    }
                }
            }
            Ok(())
        },
    );
}

fn push(out: &mut Vec<Check>, suite: Suite, name: &str, f: impl FnOnce() -> Result<()>) {
    let r = f();
    out.push(Check {
        suite,
        name: name.to_string(),
        passed: r.is_ok(),
        detail: r.err().map(|e| e.to_string()).unwrap_or_default(),
    });
}

/// Runs every suite, or just `only`, reading fixtures from `dir` when given.
#[must_use]
pub fn run_selftest(only: Option<Suite>, dir: Option<&Path>) -> Vec<Check> {
    let fx = Fixtures { dir };
    let mut out = Vec::new();
    let on = |s: Suite| only.is_none_or(|o| o == s);
    if on(Suite::FormalRing) {
        formal_checks(&fx, &mut out);
    }
    if on(Suite::Solve) {
        solve_checks(&fx, &mut out);
    }
    if on(Suite::Chow) {
        chow_checks(&fx, &mut out);
    }
    if on(Suite::Properties) {
        property_checks(&mut out);
    }
    out
}
