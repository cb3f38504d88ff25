//! Splitting-principle expansions rewritten in elementary symmetric classes.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::f2algebra::{Monomial, Poly, Ring, TermOrder, Variable};

/// Root rings, elementary-class rings and memoized conversions.
#[derive(Default)]
pub struct Symmetric {
    rings: BTreeMap<usize, (Ring, Ring, Vec<Poly>)>,
    monomial_cache: BTreeMap<Vec<u8>, Poly>,
}

impl Symmetric {
    #[must_use]
    pub fn new() -> Self {
        Self::default()
    }

    /// `(roots, elementary, e_j as root polynomials)` for `n` roots.
    pub fn rings(&mut self, n: usize) -> Result<(Ring, Ring, Vec<Poly>)> {
        if let Some(r) = self.rings.get(&n) {
            return Ok(r.clone());
        }
        let roots = Ring::new(
            (0..n).map(|i| Variable::new(format!("a{i}"), 1)).collect(),
            TermOrder::DegRevLex,
        )?;
        let elem = Ring::new(
            (1..=n)
                .map(|j| Variable::new(format!("e{j}"), j as u32))
                .collect(),
            TermOrder::DegRevLex,
        )?;
        let mut es = Vec::new();
        for j in 1..=n {
            let mut terms = Vec::new();
            for mask in 0u64..1 << n {
                if mask.count_ones() as usize == j {
                    let exps: Vec<u8> = (0..n).map(|i| (mask >> i & 1) as u8).collect();
                    terms.push(roots.monomial(&exps));
                }
            }
            es.push(Poly::from_terms(&roots, terms));
        }
        let out = (roots, elem, es);
        self.rings.insert(n, out.clone());
        Ok(out)
    }

    /// Rewrites a symmetric polynomial in `n` roots in terms of `e_1..e_n`.
    pub fn to_elementary(&mut self, n: usize, p: &Poly) -> Result<Poly> {
        let (roots, elem, es) = self.rings(n)?;
        let mut rest = p.clone();
        let mut out: Vec<Monomial> = Vec::new();
        while let Some(lt) = rest.leading().copied() {
            let mu: Vec<u8> = (0..n).map(|i| lt.exponent(i)).collect();
            if mu.windows(2).any(|w| w[0] < w[1]) {
                return Err(Error::Inconsistent(
                    "expansion is not symmetric in its roots".into(),
                ));
            }
            let mut c = alloc::vec![0u8; n];
            let mut prod = Poly::one();
            for j in 0..n {
                let next = if j + 1 < n { mu[j + 1] } else { 0 };
                c[j] = mu[j] - next;
                if c[j] > 0 {
                    prod = prod.mul(&es[j].pow(u32::from(c[j]), &roots), &roots);
                }
            }
            out.push(elem.monomial(&c));
            rest.add_assign(&prod, &roots);
        }
        Ok(Poly::from_terms(&elem, out))
    }

    /// The monomial symmetric function of a partition, padded to `n` parts.
    fn monomial_symmetric(&mut self, lambda: &[u8]) -> Result<Poly> {
        if let Some(p) = self.monomial_cache.get(lambda) {
            return Ok(p.clone());
        }
        let n = lambda.len();
        let (roots, _, _) = self.rings(n)?;
        let mut perms: BTreeSet<Vec<u8>> = BTreeSet::new();
        permutations(&mut lambda.to_vec(), 0, &mut perms);
        let terms = perms.iter().map(|e| roots.monomial(e)).collect();
        let p = Poly::from_terms(&roots, terms);
        let e = self.to_elementary(n, &p)?;
        self.monomial_cache.insert(lambda.to_vec(), e.clone());
        Ok(e)
    }

    /// `prod_{k,l} (1 + a_k + b_l)` where `a`, `b` are the classes
    /// `w_1, w_2, ...` of two blocks.
    pub fn tensor_total(&mut self, a: &[Poly], b: &[Poly], ring: &Ring) -> Result<Poly> {
        let m = a.len();
        let n = b.len();
        let mut g: Vec<Poly> = Vec::with_capacity(m + 1);
        for k in 0..=m {
            let mut acc = Poly::zero();
            for s in 0..=m - k {
                if crate::f2algebra::binom_mod2((m - s) as i64, k as i64) {
                    let w = if s == 0 {
                        Poly::one()
                    } else {
                        a[s - 1].clone()
                    };
                    acc.add_assign(&w, ring);
                }
            }
            g.push(acc);
        }
        let mut total = Poly::zero();
        let mut lambda = alloc::vec![0u8; n];
        let mut parts = Vec::new();
        partitions(n, m as u8, 0, &mut lambda, &mut parts);
        for lam in parts {
            let mut coeff = Poly::one();
            for &k in &lam {
                coeff = coeff.mul(&g[usize::from(k)], ring);
                if coeff.is_zero() {
                    break;
                }
            }
            if coeff.is_zero() {
                continue;
            }
            let e = self.monomial_symmetric(&lam)?;
            let sym = e.substitute(b, ring);
            total.add_assign(&coeff.mul(&sym, ring), ring);
        }
        Ok(total)
    }

    /// `prod_{|S| = p} (1 + sum_{i in S} a_i)` in terms of the block classes.
    pub fn lambda_total(&mut self, a: &[Poly], p: usize, ring: &Ring) -> Result<Poly> {
        let n = a.len();
        if p == 0 || p > n {
            return Err(Error::Contract("exterior power out of range".into()));
        }
        let (roots, _, _) = self.rings(n)?;
        let mut prod = Poly::one();
        for mask in 0u64..1 << n {
            if mask.count_ones() as usize != p {
                continue;
            }
            let mut terms = alloc::vec![Monomial::one()];
            for i in 0..n {
                if mask >> i & 1 == 1 {
                    terms.push(roots.var(i));
                }
            }
            prod = prod.mul(&Poly::from_terms(&roots, terms), &roots);
        }
        let e = self.to_elementary(n, &prod)?;
        Ok(e.substitute(a, ring))
    }
}

fn permutations(v: &mut Vec<u8>, k: usize, out: &mut BTreeSet<Vec<u8>>) {
    if k == v.len() {
        out.insert(v.clone());
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permutations(v, k + 1, out);
        v.swap(k, i);
    }
}

fn partitions(n: usize, max: u8, i: usize, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
    if i == n {
        out.push(cur.clone());
        return;
    }
    for v in (0..=max).rev() {
        cur[i] = v;
        partitions(n, v, i + 1, cur, out);
    }
    cur[i] = 0;
}

/// `1 + w_1 + ... + w_n`.
#[must_use]
pub fn total_of(classes: &[Poly], ring: &Ring) -> Poly {
    let mut acc = Poly::one();
    for c in classes {
        acc.add_assign(c, ring);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::f2algebra::parse_poly;
    use alloc::vec;

    #[test]
    fn power_sum_in_elementary() {
        let mut s = Symmetric::new();
        let (roots, elem, _) = s.rings(3).unwrap();
        let p2 = parse_poly(&roots, "a0^2 + a1^2 + a2^2").unwrap();
        assert_eq!(
            s.to_elementary(3, &p2).unwrap(),
            parse_poly(&elem, "e1^2").unwrap()
        );
        let bad = parse_poly(&roots, "a0").unwrap();
        assert!(s.to_elementary(3, &bad).is_err());
    }

    #[test]
    fn one_dimensional_tensor() {
        let r = Ring::graded(vec![Variable::new("x", 1), Variable::new("y", 1)]).unwrap();
        let mut s = Symmetric::new();
        let t = s
            .tensor_total(&[Poly::var(&r, 0)], &[Poly::var(&r, 1)], &r)
            .unwrap();
        assert_eq!(t, parse_poly(&r, "1 + x + y").unwrap());
    }
}
