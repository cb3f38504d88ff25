#![allow(dead_code)]

use swc::repdoc::{parse_cohomology, parse_repdata};
use swcore::f2algebra::{Limits, Poly, PresentedAlgebra, Ring};
use swcore::formalring::{build_formal_ring, FormalOptions, FormalRing};
use swcore::repdata::RepTheoryData;
use swcore::swsolver::{solve, Sequential, SolveOptions, SolveReport};

pub fn fixture_path(name: &str) -> String {
    format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

pub fn fixture(name: &str) -> String {
    std::fs::read_to_string(fixture_path(name)).unwrap()
}

pub fn rep(group: &str) -> RepTheoryData {
    parse_repdata(&fixture(&format!("{group}.repdata.json"))).unwrap()
}

pub fn cohomology(group: &str) -> PresentedAlgebra {
    parse_cohomology(
        &fixture(&format!("{group}.cohomology.json")),
        &Limits::default(),
    )
    .unwrap()
}

pub fn formal(group: &str) -> (RepTheoryData, FormalRing) {
    let r = rep(group);
    let w = build_formal_ring(&r, &FormalOptions::default()).unwrap();
    (r, w)
}

pub fn solved(group: &str, opts: &SolveOptions) -> (FormalRing, PresentedAlgebra, SolveReport) {
    let (r, w) = formal(group);
    let h = cohomology(group);
    let report = solve(&r, &w, &h, opts, &Sequential).unwrap();
    (w, h, report)
}

/// Coefficients of a power series given as a rational function
/// `num / prod (1 - t^e)`, through degree `top`.
pub fn series(num: &[i64], dens: &[usize], top: usize) -> Vec<i64> {
    let mut c = vec![0i64; top + 1];
    for (i, &a) in num.iter().enumerate() {
        if i <= top {
            c[i] = a;
        }
    }
    for &e in dens {
        for d in e..=top {
            c[d] += c[d - e];
        }
    }
    c
}

/// Elementary symmetric polynomial `e_j` of the variables `vars`.
pub fn elementary(ring: &Ring, vars: &[usize], j: usize) -> Poly {
    let mut acc = vec![Poly::zero(); j + 1];
    acc[0] = Poly::one();
    for &v in vars {
        let x = Poly::var(ring, v);
        for k in (1..=j).rev() {
            let t = acc[k - 1].mul(&x, ring);
            acc[k].add_assign(&t, ring);
        }
    }
    acc.swap_remove(j)
}

#[path = "../../../swcore/tests/suites/oracle.rs"]
pub mod oracle;

/// Whether every generator of `a` lies in the ideal generated by `b`.
pub fn ideal_contains(ring: &Ring, b: &[Poly], a: &[Poly]) -> bool {
    a.iter().all(|g| {
        oracle::homogeneous_pieces(ring, g).iter().all(|piece| {
            let d = oracle::degree_of(&oracle::weights(ring), &piece[0]);
            oracle::Degree::new(ring, b, d).in_ideal(ring, &oracle::poly_of(ring, piece))
        })
    })
}

pub fn same_ideal(ring: &Ring, a: &[Poly], b: &[Poly]) -> bool {
    ideal_contains(ring, a, b) && ideal_contains(ring, b, a)
}

/// Spans of the subalgebra generated by `gens` in `F2[ring]/(rels)`,
/// degree by degree through `top`.
pub fn subalgebra_spans(
    ring: &Ring,
    rels: &[Poly],
    gens: &[Poly],
    top: u32,
) -> Vec<(oracle::Degree, oracle::Span)> {
    let mut bases: Vec<Vec<Poly>> = Vec::new();
    let mut out = Vec::new();
    for d in 0..=top {
        let deg = oracle::Degree::new(ring, rels, d);
        let mut s = deg.ideal.clone();
        let mut basis = Vec::new();
        if d == 0 && s.add(&deg.coords(ring, &Poly::one())) {
            basis.push(Poly::one());
        }
        for g in gens {
            let Some(e) = g.homogeneous_degree() else {
                continue;
            };
            if e == 0 || e > d {
                continue;
            }
            for b in &bases[(d - e) as usize] {
                let p = g.mul(b, ring);
                if s.add(&deg.coords(ring, &p)) {
                    basis.push(p);
                }
            }
        }
        bases.push(basis);
        out.push((deg, s));
    }
    out
}

/// Whether the subalgebra generated by `gens` contains every element of
/// `elems`, modulo `rels`.
pub fn subalgebra_contains(ring: &Ring, rels: &[Poly], gens: &[Poly], elems: &[Poly]) -> bool {
    let top = elems.iter().filter_map(Poly::max_degree).max().unwrap_or(0);
    let spans = subalgebra_spans(ring, rels, gens, top);
    elems.iter().all(|u| {
        oracle::homogeneous_pieces(ring, u).iter().all(|piece| {
            let d = oracle::degree_of(&oracle::weights(ring), &piece[0]) as usize;
            let (deg, span) = &spans[d];
            let v = deg.coords(ring, &oracle::poly_of(ring, piece));
            span.reduce(&v).iter().all(|b| !b)
        })
    })
}

pub fn same_subalgebra(ring: &Ring, rels: &[Poly], a: &[Poly], b: &[Poly]) -> bool {
    subalgebra_contains(ring, rels, a, b) && subalgebra_contains(ring, rels, b, a)
}

pub fn polys(ring: &Ring, texts: &[&str]) -> Vec<Poly> {
    texts
        .iter()
        .map(|s| swcore::f2algebra::parse_poly(ring, s).unwrap())
        .collect()
}
