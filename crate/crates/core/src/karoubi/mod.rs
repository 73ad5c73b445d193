//! Karoubi envelopes of finite semigroups.

mod functor;
mod poset;

pub use functor::{induced_on_arrow, induced_on_idempotent, TermArrow};
pub use poset::{karoubi_vs_lu_comparison, lu_labeled_poset, poset_isomorphic, Comparison, Label, LabeledPoset, PosetVerdict};

use std::collections::BTreeMap;

use thiserror::Error;

use crate::pseudowords::PseudoError;
use crate::semigroups::{FiniteGroup, FiniteSemigroup};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KaroubiError {
    /// Two computations that must agree did not.
    #[error("internal disagreement: {0}")]
    MismatchBug(String),
    #[error("poset has more than {0} elements")]
    SizeLimit(usize),
    #[error("invalid arrow: {0}")]
    InvalidArrow(String),
    #[error("element {0} is not an object (idempotent)")]
    NotAnObject(usize),
    #[error(transparent)]
    Pseudo(#[from] PseudoError),
}

/// An arrow `(e, s, f)` with `s = esf`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Arrow {
    pub e: usize,
    pub s: usize,
    pub f: usize,
}

/// `K(S)`: idempotents as objects, `(e, s, f)` with `s = esf` as arrows.
#[derive(Debug, Clone)]
pub struct KaroubiCategory<'a> {
    base: &'a FiniteSemigroup,
    objects: Vec<usize>,
}

impl<'a> KaroubiCategory<'a> {
    pub fn build(base: &'a FiniteSemigroup) -> Self {
        KaroubiCategory { base, objects: base.idempotents() }
    }

    pub fn base(&self) -> &FiniteSemigroup {
        self.base
    }

    pub fn objects(&self) -> &[usize] {
        &self.objects
    }

    fn check_object(&self, e: usize) -> Result<(), KaroubiError> {
        if self.objects.binary_search(&e).is_ok() {
            Ok(())
        } else {
            Err(KaroubiError::NotAnObject(e))
        }
    }

    /// Middle components of arrows `e → f`, sorted.
    pub fn hom(&self, e: usize, f: usize) -> Result<Vec<usize>, KaroubiError> {
        self.check_object(e)?;
        self.check_object(f)?;
        let s = self.base;
        Ok(s.elements().filter(|&x| s.mul(s.mul(e, x), f) == x).collect())
    }

    pub fn arrows(&self) -> Vec<Arrow> {
        let mut out = Vec::new();
        for &e in &self.objects {
            for &f in &self.objects {
                for s in self.hom(e, f).expect("objects") {
                    out.push(Arrow { e, s, f });
                }
            }
        }
        out
    }

    pub fn arrow_count(&self) -> usize {
        self.objects
            .iter()
            .flat_map(|&e| self.objects.iter().map(move |&f| (e, f)))
            .map(|(e, f)| self.hom(e, f).expect("objects").len())
            .sum()
    }

    pub fn identity(&self, e: usize) -> Result<Arrow, KaroubiError> {
        self.check_object(e)?;
        Ok(Arrow { e, s: e, f: e })
    }

    /// `(e,s,f)(f,t,g) = (e,st,g)`.
    pub fn compose(&self, a: Arrow, b: Arrow) -> Option<Arrow> {
        (a.f == b.e).then(|| Arrow { e: a.e, s: self.base.mul(a.s, b.s), f: b.f })
    }

    /// Arrows `φ: e → f`, `ψ: f → e` with `φψ = 1_e`, if any.
    pub fn retraction(&self, e: usize, f: usize) -> Result<Option<(Arrow, Arrow)>, KaroubiError> {
        let forth = self.hom(e, f)?;
        let back = self.hom(f, e)?;
        for &s in &forth {
            for &t in &back {
                if self.base.mul(s, t) == e {
                    return Ok(Some((Arrow { e, s, f }, Arrow { e: f, s: t, f: e })));
                }
            }
        }
        Ok(None)
    }

    /// `order[i][j]`: object `i` is a retract of object `j` (indices into
    /// [`objects`](Self::objects)). Computed from retraction witnesses and
    /// checked against the J-order of the base.
    pub fn retraction_order(&self) -> Result<Vec<Vec<bool>>, KaroubiError> {
        let g = self.base.green();
        let n = self.objects.len();
        let mut order = vec![vec![false; n]; n];
        for (i, &e) in self.objects.iter().enumerate() {
            for (j, &f) in self.objects.iter().enumerate() {
                let by_arrows = self.retraction(e, f)?.is_some();
                let by_j = g.leq_j(e, f);
                if by_arrows != by_j {
                    return Err(KaroubiError::MismatchBug(format!(
                        "retraction of {e} onto {f}: arrows say {by_arrows}, J-order says {by_j}"
                    )));
                }
                order[i][j] = by_arrows;
            }
        }
        Ok(order)
    }

    /// Invertible arrows `e → e`, as a group, checked isomorphic to the
    /// maximal subgroup at `e`.
    pub fn automorphism_group(&self, e: usize) -> Result<FiniteGroup, KaroubiError> {
        let ends = self.hom(e, e)?;
        let s = self.base;
        let units: Vec<usize> =
            ends.iter().copied().filter(|&x| ends.iter().any(|&y| s.mul(x, y) == e && s.mul(y, x) == e)).collect();
        let pos = |x: usize| units.binary_search(&x).expect("units closed under product");
        let table = units.iter().map(|&x| units.iter().map(|&y| pos(s.mul(x, y))).collect()).collect();
        let group = FiniteGroup::from_table(table)
            .ok_or_else(|| KaroubiError::MismatchBug(format!("units at {e} do not form a group")))?;
        let maximal = s.maximal_subgroup(e).map_err(|err| KaroubiError::MismatchBug(err.to_string()))?;
        if let crate::semigroups::GroupIso::NotIsomorphic(why) = group.isomorphic(&maximal) {
            return Err(KaroubiError::MismatchBug(format!("Aut({e}) differs from the maximal subgroup: {why}")));
        }
        Ok(group)
    }

    /// Arrows `e → f` and `f → e` that are mutually inverse, if any.
    pub fn isomorphism(&self, e: usize, f: usize) -> Result<Option<(Arrow, Arrow)>, KaroubiError> {
        let forth = self.hom(e, f)?;
        let back = self.hom(f, e)?;
        let s = self.base;
        for &x in &forth {
            for &y in &back {
                if s.mul(x, y) == e && s.mul(y, x) == f {
                    return Ok(Some((Arrow { e, s: x, f }, Arrow { e: f, s: y, f: e })));
                }
            }
        }
        Ok(None)
    }

    /// Isomorphism classes of objects, each sorted, in order of least member.
    pub fn isomorphism_classes(&self) -> Result<Vec<Vec<usize>>, KaroubiError> {
        let mut classes: Vec<Vec<usize>> = Vec::new();
        'outer: for &e in &self.objects {
            for class in classes.iter_mut() {
                if self.isomorphism(class[0], e)?.is_some() {
                    class.push(e);
                    continue 'outer;
                }
            }
            classes.push(vec![e]);
        }
        Ok(classes)
    }

    /// `n ↦` number of objects whose isomorphism class has `n` elements.
    ///
    /// Computed from explicit isomorphisms and, independently, from the
    /// idempotent counts of the J-classes of the base.
    pub fn iso_class_census(&self) -> Result<BTreeMap<usize, usize>, KaroubiError> {
        let mut by_search = BTreeMap::new();
        for class in self.isomorphism_classes()? {
            *by_search.entry(class.len()).or_insert(0) += class.len();
        }
        let g = self.base.green();
        let mut by_green = BTreeMap::new();
        for class in g.j_classes() {
            let n = class.iter().filter(|&&x| self.base.is_idempotent(x)).count();
            if n > 0 {
                *by_green.entry(n).or_insert(0) += n;
            }
        }
        if by_search != by_green {
            return Err(KaroubiError::MismatchBug(format!(
                "census by isomorphism search {by_search:?} differs from J-class count {by_green:?}"
            )));
        }
        Ok(by_search)
    }

    pub fn census_json(&self) -> Result<serde_json::Value, KaroubiError> {
        let census = self.iso_class_census()?;
        let map: serde_json::Map<String, serde_json::Value> =
            census.iter().map(|(n, c)| (n.to_string(), serde_json::json!(c))).collect();
        Ok(serde_json::json!({
            "schema": "shiftcat/karoubi-census@1",
            "objects": self.objects.len(),
            "arrows": self.arrow_count(),
            "census": map,
        }))
    }
}
