use proptest::prelude::*;
use swcore::f2algebra::{buchberger, kernel_of_map, syzygies, Limits, Poly, PresentedAlgebra};

use super::oracle::*;
use super::{check, Case, Property};

fn leading_terms_count_the_quotient((degs, s): (Vec<u32>, Vec<(u32, u64)>)) -> Case {
    let ring = ring_with(&degs);
    let gens = build(&ring, &s);
    let gb = buchberger(&ring, &gens, &Limits::default()).unwrap();
    prop_assert!(gb.satisfies_s_pair_criterion());
    for d in 0..=6 {
        let deg = Degree::new(&ring, &gens, d);
        for g in gb.polys() {
            for piece in homogeneous_pieces(&ring, g) {
                if degree_of(&weights(&ring), &piece[0]) == d {
                    prop_assert!(deg.in_ideal(&ring, &poly_of(&ring, &piece)));
                }
            }
        }
        let standard = deg
            .monomials
            .iter()
            .filter(|e| !gb.is_reducible(&ring.monomial(e)))
            .count();
        prop_assert_eq!(standard, deg.quotient_dim(), "degree {}", d);
    }
    Ok(())
}

fn ignores_generator_order((degs, s, rot): (Vec<u32>, Vec<(u32, u64)>, usize)) -> Case {
    let ring = ring_with(&degs);
    let gens = build(&ring, &s);
    let mut moved = gens.clone();
    if !moved.is_empty() {
        let k = rot % moved.len();
        moved.rotate_left(k);
        moved.reverse();
    }
    let limits = Limits::default();
    let mut a = buchberger(&ring, &gens, &limits).unwrap().polys().to_vec();
    let mut b = buchberger(&ring, &moved, &limits).unwrap().polys().to_vec();
    a.sort();
    b.sort();
    prop_assert_eq!(a, b);
    Ok(())
}

fn graded_dimension((degs, s): (Vec<u32>, Vec<(u32, u64)>)) -> Case {
    let ring = ring_with(&degs);
    let gens = build(&ring, &s);
    let alg = PresentedAlgebra::new(&ring, &gens, &Limits::default()).unwrap();
    for d in 0..=6 {
        let deg = Degree::new(&ring, &gens, d);
        prop_assert_eq!(alg.graded_dimension(d), deg.quotient_dim(), "degree {}", d);
    }
    Ok(())
}

type KernelInput = (Vec<u32>, Vec<u32>, Vec<(u32, u64)>, Vec<u64>);

fn kernel_nullity((src, tgt, rels, masks): KernelInput) -> Case {
    let source = ring_with(&src);
    let target = ring_with(&tgt);
    let trels = build(&target, &rels);
    let h = PresentedAlgebra::new(&target, &trels, &Limits::default()).unwrap();
    let images: Vec<Poly> = (0..source.nvars())
        .map(|v| pick(&target, source.degree_of(v), masks[v]))
        .collect();
    let k = kernel_of_map(&source, &[], &h, &images, &Limits::default()).unwrap();
    for d in 0..=5 {
        let sdeg = Degree::new(&source, &[], d);
        let tdeg = Degree::new(&target, &trels, d);
        let imgs: Vec<Poly> = sdeg
            .monomials
            .iter()
            .map(|e| poly_of(&source, std::slice::from_ref(e)).substitute(&images, &target))
            .collect();
        let nullity = sdeg.monomials.len() - rank_mod(&target, &tdeg, &imgs);
        let kdeg = Degree::new(&source, k.polys(), d);
        prop_assert_eq!(kdeg.ideal.rank(), nullity, "degree {}", d);
    }
    Ok(())
}

type VectorsInput = (Vec<u32>, Vec<(u32, u64, u64)>);

fn vectors(ring: &swcore::f2algebra::Ring, s: &[(u32, u64, u64)]) -> Vec<Vec<Poly>> {
    s.iter()
        .map(|&(d, a, b)| vec![pick(ring, d, a), pick(ring, d, b)])
        .collect()
}

fn syzygies_annihilate((degs, s): VectorsInput) -> Case {
    let ring = ring_with(&degs);
    let vs = vectors(&ring, &s);
    let syz = syzygies(&ring, &vs, None, &Limits::default()).unwrap();
    for c in &syz {
        prop_assert_eq!(c.len(), vs.len());
        for comp in 0..2 {
            let mut acc = Poly::zero();
            for (ci, v) in c.iter().zip(&vs) {
                acc.add_assign(&ci.mul(&v[comp], &ring), &ring);
            }
            prop_assert!(acc.is_zero());
        }
    }
    Ok(())
}

fn syzygies_generate((degs, s): VectorsInput) -> Case {
    let ring = ring_with(&degs);
    let w = weights(&ring);
    let vs = vectors(&ring, &s);
    let vdeg: Vec<u32> = s.iter().map(|t| t.0).collect();
    let syz = syzygies(&ring, &vs, None, &Limits::default()).unwrap();
    for total in 1..=5u32 {
        // coefficient tuples of total degree `total`, flattened
        let blocks: Vec<Vec<Vec<u8>>> = vdeg
            .iter()
            .map(|&d| {
                if d <= total {
                    exponents(&w, total - d)
                } else {
                    Vec::new()
                }
            })
            .collect();
        let target = exponents(&w, total);
        let mut image = Span::default();
        let mut cols = 0;
        for (i, b) in blocks.iter().enumerate() {
            for e in b {
                let m = poly_of(&ring, std::slice::from_ref(e));
                let mut v = Vec::new();
                for c in &vs[i] {
                    v.extend(vector(&target, &exps_of(&ring, &m.mul(c, &ring))));
                }
                image.add(&v);
                cols += 1;
            }
        }
        let nullity = cols - image.rank();
        let mut span = Span::default();
        for c in &syz {
            let Some(sd) = c
                .iter()
                .zip(&vdeg)
                .find_map(|(p, &d)| p.terms().first().map(|t| t.degree() + d))
            else {
                continue;
            };
            if sd > total {
                continue;
            }
            for m in exponents(&w, total - sd) {
                let m = poly_of(&ring, &[m]);
                let mut v = Vec::new();
                for (ci, b) in c.iter().zip(&blocks) {
                    v.extend(vector(b, &exps_of(&ring, &m.mul(ci, &ring))));
                }
                span.add(&v);
            }
        }
        prop_assert_eq!(span.rank(), nullity, "degree {}", total);
    }
    Ok(())
}

fn vector_seeds() -> impl Strategy<Value = VectorsInput> {
    (
        degrees(),
        prop::collection::vec((1u32..=2, any::<u64>(), any::<u64>()), 1..=3),
    )
}

#[must_use]
pub fn properties() -> Vec<Property> {
    vec![
        Property {
            name: "Buchberger output satisfies the S-pair criterion and counts the quotient",
            run: |n| {
                check(
                    n,
                    (degrees(), seeds(4, 4)),
                    leading_terms_count_the_quotient,
                )
            },
        },
        Property {
            name: "reduced basis is independent of generator order",
            run: |n| {
                check(
                    n,
                    (degrees(), seeds(4, 4), 0usize..4),
                    ignores_generator_order,
                )
            },
        },
        Property {
            name: "graded dimension matches linear algebra through degree 6",
            run: |n| check(n, (degrees(), seeds(3, 3)), graded_dimension),
        },
        Property {
            name: "kernel of a map matches degreewise nullity through degree 5",
            run: |n| {
                check(
                    n,
                    (
                        prop::collection::vec(1u32..=2, 1..=3),
                        prop::collection::vec(1u32..=2, 1..=3),
                        seeds(2, 3),
                        prop::collection::vec(any::<u64>(), 3),
                    ),
                    kernel_nullity,
                )
            },
        },
        Property {
            name: "syzygies annihilate their vectors",
            run: |n| check(n, vector_seeds(), syzygies_annihilate),
        },
        Property {
            name: "syzygies generate every relation through degree 5",
            run: |n| check(n, vector_seeds(), syzygies_generate),
        },
    ]
}
