use proptest::prelude::*;
use swcore::chow::{derivation_kernel, milnor_derivations, Derivation, UnstableAlgebra};
use swcore::f2algebra::{Limits, Poly, PresentedAlgebra, Ring, SqTable};

use super::oracle::*;
use super::{check, Case, Property};

/// `F2[x_0..x_{n-1}]` in degree one modulo powers `l^(2^a)` of linear forms,
/// an ideal closed under the squares.
fn algebra(n: usize, rels: &[(u64, u32)]) -> (Ring, Vec<Poly>, UnstableAlgebra) {
    let ring = ring_with(&vec![1; n]);
    let mut gens = Vec::new();
    for &(mask, a) in rels {
        let mask = mask % (1 << n);
        if mask == 0 {
            continue;
        }
        let mut l = Poly::zero();
        for v in 0..n {
            if mask >> v & 1 == 1 {
                l.add_assign(&Poly::var(&ring, v), &ring);
            }
        }
        gens.push(l.pow(1 << a, &ring));
    }
    let alg = PresentedAlgebra::new(&ring, &gens, &Limits::default()).unwrap();
    let a = UnstableAlgebra::new(alg, SqTable::degree_one(&ring)).unwrap();
    (ring, gens, a)
}

/// Leibniz rule on exponent vectors, without reduction.
fn derive(ring: &Ring, q: &Derivation, p: &Poly) -> Poly {
    let mut out = Poly::zero();
    for e in exps_of(ring, p) {
        for v in 0..ring.nvars() {
            if e[v] % 2 == 1 {
                let mut rest = e.clone();
                rest[v] -= 1;
                let r = poly_of(ring, &[rest]);
                out.add_assign(&r.mul(&q.values[v], ring), ring);
            }
        }
    }
    out
}

fn joint_kernel_dim(ring: &Ring, gens: &[Poly], ds: &[Derivation], d: u32) -> usize {
    let here = Degree::new(ring, gens, d);
    let mut basis = Vec::new();
    let mut s = here.ideal.clone();
    for e in &here.monomials {
        let m = poly_of(ring, std::slice::from_ref(e));
        if s.add(&here.coords(ring, &m)) {
            basis.push(m);
        }
    }
    let targets: Vec<Degree> = ds
        .iter()
        .map(|q| Degree::new(ring, gens, d + q.degree))
        .collect();
    let mut image = Span::default();
    for m in &basis {
        let mut v = Vec::new();
        for (q, t) in ds.iter().zip(&targets) {
            v.extend(t.residue(ring, &derive(ring, q, m)));
        }
        image.add(&v);
    }
    basis.len() - image.rank()
}

/// Dimensions through degree `top` of the subalgebra generated by `gens`.
fn subalgebra_dims(ring: &Ring, rels: &[Poly], gens: &[Poly], top: u32) -> Vec<usize> {
    let degrees: Vec<Degree> = (0..=top).map(|d| Degree::new(ring, rels, d)).collect();
    let mut bases: Vec<Vec<Poly>> = vec![vec![Poly::one()]];
    let mut dims = vec![if degrees[0].quotient_dim() > 0 { 1 } else { 0 }];
    for d in 1..=top {
        let deg = &degrees[d as usize];
        let mut s = deg.ideal.clone();
        let mut basis = Vec::new();
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
        dims.push(basis.len());
        bases.push(basis);
    }
    dims
}

fn relations() -> impl Strategy<Value = Vec<(u64, u32)>> {
    prop::collection::vec((any::<u64>(), 1u32..=2), 0..=2)
}

type Seeds = Vec<(u32, u64)>;

fn commute_and_square_to_zero((n, rels, seeds): (usize, Vec<(u64, u32)>, Seeds)) -> Case {
    let (ring, _, a) = algebra(n, &rels);
    let qs = milnor_derivations(&a, 2).unwrap();
    for (i, q) in qs.iter().enumerate() {
        prop_assert_eq!(q.degree, (1 << (i + 1)) - 1);
    }
    for &(d, mask) in &seeds {
        let p = pick(&ring, d, mask);
        for (i, qi) in qs.iter().enumerate() {
            let qp = qi.apply(a.algebra(), &p);
            prop_assert!(qi.apply(a.algebra(), &qp).is_zero(), "Q_{} Q_{}", i, i);
            for (j, qj) in qs.iter().enumerate() {
                let l = qi.apply(a.algebra(), &qj.apply(a.algebra(), &p));
                let r = qj.apply(a.algebra(), &qp);
                prop_assert_eq!(l, r, "Q_{} Q_{}", i, j);
            }
        }
    }
    Ok(())
}

fn raise_degree_one_classes(n: usize) -> Case {
    let (ring, _, a) = algebra(n, &[]);
    let qs = milnor_derivations(&a, 2).unwrap();
    for (i, q) in qs.iter().enumerate() {
        for v in 0..n {
            let x = Poly::var(&ring, v);
            prop_assert_eq!(&q.values[v], &x.pow(1 << (i + 1), &ring));
        }
    }
    Ok(())
}

fn kernel_nullity((n, rels, top): (usize, Vec<(u64, u32)>, u32)) -> Case {
    let (ring, gens, a) = algebra(n, &rels);
    let ds = milnor_derivations(&a, top).unwrap();
    let k = derivation_kernel(a.algebra(), &ds, &Limits::default()).unwrap();
    for g in &k.generators {
        for q in &ds {
            prop_assert!(q.apply(a.algebra(), g).is_zero());
        }
    }
    let dims = subalgebra_dims(&ring, &gens, &k.generators, 8);
    for d in 0..=8 {
        prop_assert_eq!(
            dims[d as usize],
            joint_kernel_dim(&ring, &gens, &ds, d),
            "degree {}",
            d
        );
    }
    Ok(())
}

#[must_use]
pub fn properties() -> Vec<Property> {
    vec![
        Property {
            name: "Milnor derivations commute and square to zero",
            run: |n| {
                check(
                    n,
                    (
                        1usize..=3,
                        relations(),
                        prop::collection::vec((1u32..=4, any::<u64>()), 1..=3),
                    ),
                    commute_and_square_to_zero,
                )
            },
        },
        Property {
            name: "Q_i sends a degree-one class x to x^(2^(i+1))",
            run: |n| check(n, 1usize..=3, raise_degree_one_classes),
        },
        Property {
            name: "derivation kernel matches degreewise nullity through degree 8",
            run: |n| check(n, (1usize..=3, relations(), 0u32..=1), kernel_nullity),
        },
    ]
}
