//! End-to-end acceptance run: one line per criterion, nonzero exit on any
//! failure.

#![allow(clippy::duplicate_mod)]

mod common;
#[path = "../../swcore/tests/suites/mod.rs"]
mod core_suites;
mod wu;

use std::path::PathBuf;
use std::time::{Duration, Instant};

use common::*;
use swc::cli::{
    cmd_chow, cmd_formal_ring, cmd_solve, BudgetArgs, ChowArgs, FormalRingArgs, ModeArg, SolveArgs,
};
use swc::report::PresentationDoc;
use swcore::chow::{chern_classes, chow_pipeline, UnstableAlgebra};
use swcore::f2algebra::{format_poly, minimal_generators, Limits, Poly, Ring, TermOrder, Variable};
use swcore::swsolver::{
    step1_degree_one, step2_q_assignments, step3_p_assignments, test1_admissible,
    test2_polynomial_vars, LiftMode, SolveOptions, SolveStatus, Test2,
};

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome, Duration);

macro_rules! ensure {
    ($cond:expr, $($arg:tt)*) => {
        if !$cond {
            return Err(format!($($arg)*));
        }
    };
}

fn budget() -> BudgetArgs {
    BudgetArgs { budget: None }
}

fn solve_args(group: &str, threads: u64) -> SolveArgs {
    SolveArgs {
        repdata: fixture_path(&format!("{group}.repdata.json")).into(),
        cohomology: fixture_path(&format!("{group}.cohomology.json")).into(),
        mode: ModeArg::QuotientLift,
        max_candidates: 1_000_000,
        verify_bound: None,
        out: None,
        threads,
        budget: budget(),
    }
}

fn scratch(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name)
}

/// The presentation carried by a `solve` document, with its ring and
/// parsed relations.
fn presentation(document: &str) -> Result<(PresentationDoc, Ring, Vec<Poly>), String> {
    let v: serde_json::Value = serde_json::from_str(document).map_err(|e| e.to_string())?;
    let p = v
        .pointer("/payload/presentation")
        .ok_or("no presentation")?
        .clone();
    let doc: PresentationDoc = serde_json::from_value(p).map_err(|e| e.to_string())?;
    let ring = Ring::new(
        doc.generators
            .iter()
            .map(|g| Variable::new(g.name.clone(), g.degree))
            .collect(),
        TermOrder::DegRevLex,
    )
    .map_err(|e| e.to_string())?;
    let rels = doc
        .relations
        .iter()
        .map(|s| swcore::f2algebra::parse_poly(&ring, s).map_err(|e| e.to_string()))
        .collect::<Result<Vec<_>, _>>()?;
    Ok((doc, ring, rels))
}

fn z4_ambient_generators() -> Outcome {
    let (_, w) = formal("z4");
    let gens = minimal_generators(&w.ideal, &Limits::default()).map_err(|e| e.to_string())?;
    let mut got: Vec<String> = gens
        .iter()
        .map(|p| format_poly(&w.ambient.ring, p))
        .collect();
    got.sort();
    ensure!(
        got == ["w1(alpha)^2", "w1(beta)"],
        "minimal generators {got:?}"
    );
    Ok(())
}

fn q8_end_to_end() -> Outcome {
    let out = cmd_solve(&solve_args("q8", 1));
    ensure!(out.exit == 0, "exit {}", out.exit);
    let (doc, ring, rels) = presentation(&out.document)?;
    let names: Vec<&str> = doc.generators.iter().map(|g| g.name.as_str()).collect();
    ensure!(
        doc.generators.iter().all(|g| g.kind == "sw"),
        "adjoined generators in {names:?}"
    );
    let mut sorted = names.clone();
    sorted.sort_unstable();
    ensure!(
        sorted == ["w1(r1)", "w1(r2)", "w4(Delta)"],
        "generators {names:?}"
    );
    let r = "w1(r1)^2 + w1(r2)^2 + w1(r1)*w1(r2)";
    let sq1r = "w1(r1)^2*w1(r2) + w1(r1)*w1(r2)^2";
    ensure!(
        same_ideal(&ring, &rels, &polys(&ring, &[r, sq1r])),
        "relations {:?}",
        doc.relations
    );
    // z, y in degree 1 and x in degree 4 with Carlson's relations
    let carlson = Ring::new(
        vec![
            Variable::new("z", 1),
            Variable::new("y", 1),
            Variable::new("x", 4),
        ],
        TermOrder::DegRevLex,
    )
    .unwrap();
    let crels = polys(&carlson, &["z^2 + y^2 + z*y", "z^3"]);
    let poincare = series(&[1, 2, 2, 1], &[4], 12);
    for d in 0..=12u32 {
        let ours = oracle::Degree::new(&ring, &rels, d).quotient_dim();
        let theirs = oracle::Degree::new(&carlson, &crels, d).quotient_dim();
        ensure!(
            ours == theirs && ours as i64 == poincare[d as usize],
            "degree {d}: {ours} vs {theirs} vs {}",
            poincare[d as usize]
        );
    }
    let row = doc.steenrod_table["w4(Delta)"]
        .as_array()
        .ok_or("no squares of w4(Delta)")?;
    for (k, s) in row.iter().enumerate().skip(1).take(3) {
        ensure!(s == "0", "Sq^{k} w4(Delta) = {s}");
    }
    Ok(())
}

fn g16_11_end_to_end() -> Outcome {
    let limits = Limits::default();
    let (rep, w) = formal("g16_11");
    let h = cohomology("g16_11");
    let hr = h.ring();
    let opts = SolveOptions::default();
    let s1 = step1_degree_one(&w, &h, &opts).map_err(|e| e.to_string())?;
    ensure!(s1.maps.len() == 1, "{} Step-1 survivors", s1.maps.len());
    let images = s1.maps[0].completed();
    let image = |name: &str| format_poly(hr, &images[w.ring().index_of(name).unwrap()]);
    ensure!(
        image("w1(r2)") == format_poly(hr, &polys(hr, &["z + y"])[0]) && image("w1(r3)") == "y",
        "Step-1 map {} / {}",
        image("w1(r2)"),
        image("w1(r3)")
    );
    let s2 = step2_q_assignments(&s1.maps, &w, &h, &opts).map_err(|e| e.to_string())?;
    let s3 = step3_p_assignments(&s2, &w, &h, &opts).map_err(|e| e.to_string())?;
    ensure!(
        s3.raw == 8 && s3.maps.len() == 2,
        "Step 3: {} raw, {} kept",
        s3.raw,
        s3.maps.len()
    );
    let admissible: Vec<_> = s3
        .maps
        .iter()
        .filter(|c| test1_admissible(c, &h, &limits).unwrap())
        .collect();
    ensure!(admissible.len() == 1, "{} admissible", admissible.len());
    let w4 = w.ring().index_of("w4(r8)").unwrap();
    ensure!(
        format_poly(hr, admissible[0].images[w4].as_ref().unwrap()) == "w",
        "admissible map sends w4(r8) elsewhere"
    );
    let ext =
        match test2_polynomial_vars(admissible[0], &w, &h, &limits).map_err(|e| e.to_string())? {
            Test2::Pass(e) => e,
            Test2::Abort(..) => return Err("Test 2 aborted".into()),
        };
    let expected = [
        "w1(r2)^2 + w1(r3)^2",
        "w1(r2)^2*w1(r3) + w1(r2)*w1(r3)^2",
        "w1(r2)*x + w1(r3)*x",
        "x^2",
    ];
    let er = &ext.ring;
    ensure!(
        ext.kernel.len() == 4,
        "Test-2 basis has {} elements",
        ext.kernel.len()
    );
    ensure!(
        same_ideal(er, ext.kernel.polys(), &polys(er, &expected)),
        "Test-2 basis differs"
    );
    let _ = rep;

    let out = cmd_solve(&solve_args("g16_11", 1));
    ensure!(out.exit == 0, "exit {}", out.exit);
    let (doc, ring, rels) = presentation(&out.document)?;
    let mut gens: Vec<(String, u32, String)> = doc
        .generators
        .iter()
        .map(|g| (g.name.clone(), g.degree, g.kind.clone()))
        .collect();
    gens.sort();
    let want = [
        ("w1(r2)", 1, "sw"),
        ("w1(r3)", 1, "sw"),
        ("w4(r8)", 4, "sw"),
        ("x", 3, "adjoined"),
    ];
    ensure!(
        gens.iter()
            .zip(&want)
            .all(|(g, w)| g.0 == w.0 && g.1 == w.1 && g.2 == w.2)
            && gens.len() == 4,
        "generators {gens:?}"
    );
    ensure!(rels.len() == 4, "{} relations", rels.len());
    ensure!(
        same_ideal(&ring, &rels, &polys(&ring, &expected)),
        "relations {:?}",
        doc.relations
    );
    let row = doc.steenrod_table["w4(r8)"]
        .as_array()
        .ok_or("no squares of w4(r8)")?;
    let sq = |k: usize| polys(&ring, &[row[k].as_str().unwrap()]).remove(0);
    let zero = |p: &Poly| ideal_contains(&ring, &rels, std::slice::from_ref(p));
    ensure!(zero(&sq(1)), "Sq^1 = {}", row[1]);
    ensure!(
        zero(&sq(2).add(&polys(&ring, &["w4(r8)*w1(r2)*w1(r3)"])[0], &ring)),
        "Sq^2 = {}",
        row[2]
    );
    ensure!(zero(&sq(3)), "Sq^3 = {}", row[3]);
    ensure!(doc.steenrod_table["x"] == "unknown", "squares of x claimed");
    Ok(())
}

fn g16_11_formal_ring() -> Outcome {
    let (_, w) = formal("g16_11");
    let ring = w.ring();
    let mut names: Vec<&str> = (0..ring.nvars()).map(|v| ring.name(v)).collect();
    names.sort_unstable();
    ensure!(
        names == ["w1(r2)", "w1(r3)", "w4(r8)"],
        "variables {names:?}"
    );
    let r = "w1(r2)^2*w1(r3) + w1(r2)*w1(r3)^2";
    let s = "w1(r2)^2 + w1(r3)^2";
    let rels = w.algebra.relations().polys().to_vec();
    ensure!(
        same_ideal(ring, &rels, &polys(ring, &[r, s])),
        "relations differ"
    );
    let expected = [
        ("w2(r4)", "w1(r2)^2 + w1(r2)*w1(r3)"),
        ("w2(r6)", "w1(r2)*w1(r3)"),
        ("w2(r8)", "w1(r2)*w1(r3)"),
    ];
    for (name, value) in expected {
        let v = w.ambient.ring.index_of(name).unwrap();
        let e = w
            .eliminated
            .iter()
            .find(|(u, _)| *u == v)
            .ok_or(format!("{name} survives"))?;
        let diff = e.1.add(&polys(ring, &[value])[0], ring);
        ensure!(
            ideal_contains(ring, &rels, &[diff]),
            "{name} = {}",
            format_poly(ring, &e.1)
        );
    }
    Ok(())
}

fn z2cubed_chow() -> Outcome {
    let limits = Limits::default();
    let (w, _, report) = solved("z2cubed", &SolveOptions::default());
    let fp = report.presentation.ok_or("no presentation")?;
    let ring = fp.ring.clone();
    let a = UnstableAlgebra::from_presentation(&fp).map_err(|e| e.to_string())?;
    let (r, tilde) =
        chow_pipeline(&a, &chern_classes(&fp), 4, &limits).map_err(|e| e.to_string())?;
    let _ = w;
    let xyz = |s: &str| {
        s.replace('x', "w1(r1)")
            .replace('y', "w1(r2)")
            .replace('z', "w1(r3)")
    };
    let p = |ts: &[&str]| {
        polys(
            &ring,
            &ts.iter()
                .map(|t| xyz(t))
                .collect::<Vec<_>>()
                .iter()
                .map(String::as_str)
                .collect::<Vec<_>>(),
        )
    };
    let b = p(&["x^2", "y^2", "z^2"]);
    let first: Vec<Poly> = b
        .iter()
        .cloned()
        .chain(p(&[
            "z^2*x + z*x^2",
            "y^2*x + y*x^2",
            "y^2*z + y*z^2",
            "y^2*z*x + y*z^2*x + y*z*x^2",
        ]))
        .collect();
    let second: Vec<Poly> = b
        .iter()
        .cloned()
        .chain(p(&[
            "y^4*z^2*x + y^4*z*x^2 + y^2*z*x^4 + z^4*y^2*x + z^4*y*x^2 + y*z^2*x^4",
        ]))
        .collect();
    ensure!(
        tilde.termination == Some(1),
        "termination {:?}",
        tilde.termination
    );
    ensure!(
        same_subalgebra(&ring, &[], &tilde.stages[0].kernel.generators, &first),
        "first kernel differs from B[a1..a4]"
    );
    ensure!(
        same_subalgebra(&ring, &[], &tilde.stages[1].kernel.generators, &second),
        "second kernel differs"
    );
    ensure!(
        same_subalgebra(&ring, &[], &tilde.generators, &b),
        "tilde subring differs"
    );
    ensure!(
        same_subalgebra(&ring, &[], &r.chern.generators, &b),
        "Chern subring differs"
    );
    ensure!(r.equal, "bounds reported unequal");

    let path = scratch("z2cubed.solve.json");
    std::fs::write(&path, cmd_solve(&solve_args("z2cubed", 1)).document)
        .map_err(|e| e.to_string())?;
    let out = cmd_chow(&ChowArgs {
        presentation: path,
        max_q: 4,
        probe: None,
        out: None,
        budget: budget(),
    });
    ensure!(out.exit == 0, "chow exit {}", out.exit);
    let v: serde_json::Value = serde_json::from_str(&out.document).unwrap();
    ensure!(
        v["payload"]["equal"] == true && v["payload"]["termination"] == 1,
        "chow document {}",
        v["payload"]["termination"]
    );
    Ok(())
}

fn q8_chow() -> Outcome {
    let path = scratch("q8.solve.json");
    std::fs::write(&path, cmd_solve(&solve_args("q8", 1)).document).map_err(|e| e.to_string())?;
    let solve_doc = std::fs::read_to_string(&path).unwrap();
    let (_, ring, rels) = presentation(&solve_doc)?;
    let out = cmd_chow(&ChowArgs {
        presentation: path,
        max_q: 4,
        probe: None,
        out: None,
        budget: budget(),
    });
    ensure!(out.exit == 0, "chow exit {}", out.exit);
    let v: serde_json::Value = serde_json::from_str(&out.document).unwrap();
    let chern: Vec<&str> = v["payload"]["chern"]["generators"]
        .as_array()
        .unwrap()
        .iter()
        .map(|g| g["expression"].as_str().unwrap())
        .collect();
    let chern = polys(&ring, &chern);
    let expected = polys(&ring, &["w1(r1)^2", "w1(r2)^2", "w4(Delta)"]);
    ensure!(
        same_subalgebra(&ring, &rels, &chern, &expected),
        "Chern subring differs"
    );
    ensure!(v["payload"]["equal"] == true, "bounds reported unequal");
    Ok(())
}

fn property_suites() -> Outcome {
    let mut failures = Vec::new();
    for p in core_suites::all() {
        if let Err(e) = (p.run)(200) {
            failures.push(format!("{}: {e}", p.name));
        }
    }
    if let Err(e) = wu::run(200) {
        failures.push(format!("{}: {e}", wu::NAME));
    }
    ensure!(failures.is_empty(), "{}", failures.join("; "));
    Ok(())
}

fn determinism() -> Outcome {
    for group in ["z4", "q8", "g16_11", "z2cubed"] {
        let f = || {
            cmd_formal_ring(&FormalRingArgs {
                repdata: fixture_path(&format!("{group}.repdata.json")).into(),
                cap: None,
                out: None,
                budget: budget(),
            })
            .document
        };
        ensure!(f() == f(), "{group}: formal-ring documents differ");
        let a = cmd_solve(&solve_args(group, 1)).document;
        let b = cmd_solve(&solve_args(group, 1)).document;
        let c = cmd_solve(&solve_args(group, 4)).document;
        ensure!(a == b && a == c, "{group}: solve documents differ");
        let mut exhaustive = solve_args(group, 1);
        exhaustive.mode = ModeArg::Exhaustive;
        ensure!(
            cmd_solve(&exhaustive).document == cmd_solve(&exhaustive).document,
            "{group}: exhaustive documents differ"
        );
        let path = scratch(&format!("{group}.determinism.json"));
        std::fs::write(&path, &a).unwrap();
        let chow = || {
            cmd_chow(&ChowArgs {
                presentation: path.clone(),
                max_q: 4,
                probe: Some(2),
                out: None,
                budget: budget(),
            })
            .document
        };
        ensure!(chow() == chow(), "{group}: chow documents differ");
    }
    let _ = (LiftMode::Exhaustive, SolveStatus::Success);
    Ok(())
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("Z/4 formal ring: ambient ideal generated by w1(beta), w1(alpha)^2", z4_ambient_generators, Duration::from_secs(1)),
        ("Q8 end to end: (R, Sq^1 R), no adjoined generators, Carlson dimensions through degree 12", q8_end_to_end, Duration::from_secs(10)),
        ("16#11 end to end: generators, four relations, squares of w4(r8), checkpoints", g16_11_end_to_end, Duration::from_secs(30)),
        ("16#11 formal ring: F2[w1(r2), w1(r3), w4(r8)]/(R, S) with eliminated classes", g16_11_formal_ring, Duration::from_secs(30)),
        ("(Z/2)^3 Chow: N = 1, kernels B[a1..a4] then B[one generator], equal bounds", z2cubed_chow, Duration::from_secs(60)),
        ("Q8 Chow: Chern subring generated by w1(r1)^2, w1(r2)^2, w4(Delta), equal bounds", q8_chow, Duration::from_secs(60)),
        ("property suites, 200 cases each", property_suites, Duration::from_secs(300)),
        ("determinism: repeated runs give byte-identical documents", determinism, Duration::from_secs(120)),
    ];
    let mut failed = 0;
    for (name, f, limit) in criteria {
        let start = Instant::now();
        let r = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let took = start.elapsed();
        let r = r.and_then(|()| {
            if took > limit {
                Err(format!("took {took:.2?}, limit {limit:?}"))
            } else {
                Ok(())
            }
        });
        match r {
            Ok(()) => println!("PASS  {name}  ({:.2}s)", took.as_secs_f64()),
            Err(e) => {
                failed += 1;
                println!("FAIL  {name}: {e}");
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria pass",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
