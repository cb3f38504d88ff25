//! Graded variable sets and term orders.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::cmp::Ordering;

use super::monomial::{Monomial, MAX_VARS};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Variable {
    pub name: String,
    pub degree: u32,
}

impl Variable {
    #[must_use]
    pub fn new(name: impl Into<String>, degree: u32) -> Self {
        Variable {
            name: name.into(),
            degree,
        }
    }
}

/// Monomial orders. Variable index 0 is the largest variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TermOrder {
    /// Weighted degree reverse lexicographic.
    DegRevLex,
    /// Variables `[0, split)` form a front block eliminated before the rest;
    /// each block is ordered by weighted degrevlex.
    BlockElim { split: usize },
}

#[derive(Debug, PartialEq, Eq)]
struct RingInner {
    vars: Vec<Variable>,
    weights: Vec<u32>,
    order: TermOrder,
    lookup: BTreeMap<String, usize>,
}

/// A polynomial ring over the field with two elements.
#[derive(Clone, Debug)]
pub struct Ring {
    inner: Arc<RingInner>,
}

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner == other.inner
    }
}

impl Eq for Ring {}

impl Ring {
    /// Keeps the variables in the given index order.
    pub fn new(vars: Vec<Variable>, order: TermOrder) -> Result<Ring> {
        if vars.len() > MAX_VARS {
            return Err(Error::Contract(format!(
                "{} variables exceed the limit of {MAX_VARS}",
                vars.len()
            )));
        }
        if let TermOrder::BlockElim { split } = order {
            if split > vars.len() {
                return Err(Error::Contract("block split beyond variable count".into()));
            }
        }
        let mut lookup = BTreeMap::new();
        for (i, v) in vars.iter().enumerate() {
            if v.degree == 0 {
                return Err(Error::Contract(format!("variable {} has degree 0", v.name)));
            }
            if lookup.insert(v.name.clone(), i).is_some() {
                return Err(Error::Contract(format!("duplicate variable {}", v.name)));
            }
        }
        let weights = vars.iter().map(|v| v.degree).collect();
        Ok(Ring {
            inner: Arc::new(RingInner {
                vars,
                weights,
                order,
                lookup,
            }),
        })
    }

    /// Degrevlex ring with variables sorted by descending degree; within a
    /// degree a later declaration is a larger variable.
    pub fn graded(declared: Vec<Variable>) -> Result<Ring> {
        let mut idx: Vec<usize> = (0..declared.len()).collect();
        idx.sort_by(|&a, &b| declared[b].degree.cmp(&declared[a].degree).then(b.cmp(&a)));
        let vars = idx.into_iter().map(|i| declared[i].clone()).collect();
        Ring::new(vars, TermOrder::DegRevLex)
    }

    #[must_use]
    pub fn vars(&self) -> &[Variable] {
        &self.inner.vars
    }

    #[must_use]
    pub fn nvars(&self) -> usize {
        self.inner.vars.len()
    }

    #[must_use]
    pub fn weights(&self) -> &[u32] {
        &self.inner.weights
    }

    #[must_use]
    pub fn order(&self) -> TermOrder {
        self.inner.order
    }

    #[must_use]
    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.inner.lookup.get(name).copied()
    }

    #[must_use]
    pub fn name(&self, i: usize) -> &str {
        &self.inner.vars[i].name
    }

    #[must_use]
    pub fn degree_of(&self, i: usize) -> u32 {
        self.inner.weights[i]
    }

    #[must_use]
    pub fn var(&self, i: usize) -> Monomial {
        Monomial::var(i, self.inner.weights[i])
    }

    #[must_use]
    pub fn monomial(&self, exps: &[u8]) -> Monomial {
        Monomial::from_exponents(exps, &self.inner.weights)
    }

    #[must_use]
    pub fn lcm(&self, a: &Monomial, b: &Monomial) -> Monomial {
        a.lcm(b, &self.inner.weights)
    }

    /// Same variables, different order.
    pub fn with_order(&self, order: TermOrder) -> Result<Ring> {
        Ring::new(self.inner.vars.clone(), order)
    }

    /// Compares two monomials of this ring.
    #[inline]
    #[must_use]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self.inner.order {
            TermOrder::DegRevLex => a
                .degree()
                .cmp(&b.degree())
                .then_with(|| revlex(a, b, 0, self.nvars())),
            TermOrder::BlockElim { split } => {
                let w = &self.inner.weights;
                let da = partial_degree(a, w, 0, split);
                let db = partial_degree(b, w, 0, split);
                da.cmp(&db)
                    .then_with(|| revlex(a, b, 0, split))
                    .then_with(|| (a.degree() - da).cmp(&(b.degree() - db)))
                    .then_with(|| revlex(a, b, split, self.nvars()))
            }
        }
    }
}

#[inline]
fn revlex(a: &Monomial, b: &Monomial, lo: usize, hi: usize) -> Ordering {
    let (ea, eb) = (a.exponents(), b.exponents());
    for i in (lo..hi).rev() {
        if ea[i] != eb[i] {
            return eb[i].cmp(&ea[i]);
        }
    }
    Ordering::Equal
}

#[inline]
fn partial_degree(m: &Monomial, w: &[u32], lo: usize, hi: usize) -> u32 {
    let mut d = 0;
    for (i, e) in m.factors() {
        if i >= lo && i < hi {
            d += u32::from(e) * w[i];
        }
    }
    d
}
