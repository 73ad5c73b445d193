use std::collections::HashMap;
use std::fmt::Write as _;

use super::{Arrow, KaroubiCategory, KaroubiError};
use crate::semigroups::{FiniteGroup, FiniteSemigroup, GreenData, GroupIso};
use crate::words::Alphabet;

/// Largest poset handled by [`poset_isomorphic`].
pub const POSET_ISO_LIMIT: usize = 16;

/// The pair (regular, Γ(J)) attached to a J-class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Label {
    pub regular: bool,
    pub group: FiniteGroup,
}

impl Label {
    pub fn descriptor(&self) -> String {
        format!("({}, {})", u8::from(self.regular), self.group.descriptor())
    }
}

/// A finite poset of J-classes with (regular, group) labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledPoset {
    /// Class ids in the structure the poset was read from.
    pub classes: Vec<usize>,
    /// `leq[i][j]`: element `i` lies below element `j`.
    pub leq: Vec<Vec<bool>>,
    pub labels: Vec<Label>,
}

/// Outcome of a labeled poset comparison.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PosetVerdict {
    /// `witness[i]` is the image of element `i`.
    Iso(Vec<usize>),
    NotIso(String),
    /// A bijection exists when large groups are matched by invariants only.
    InvariantEqual(Vec<usize>),
}

impl PosetVerdict {
    pub fn is_iso_or_invariant_equal(&self) -> bool {
        !matches!(self, PosetVerdict::NotIso(_))
    }

    pub fn name(&self) -> &'static str {
        match self {
            PosetVerdict::Iso(_) => "Iso",
            PosetVerdict::NotIso(_) => "NotIso",
            PosetVerdict::InvariantEqual(_) => "InvariantEqual",
        }
    }
}

impl LabeledPoset {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Pairs `(i, j)` with `i < j` and nothing strictly between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let lt = |i: usize, j: usize| i != j && self.leq[i][j];
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if lt(i, j) && !(0..n).any(|k| lt(i, k) && lt(k, j)) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Minimum element, if any.
    pub fn minimum(&self) -> Option<usize> {
        (0..self.len()).find(|&i| (0..self.len()).all(|j| self.leq[i][j]))
    }

    pub fn is_partial_order(&self) -> bool {
        let n = self.len();
        (0..n).all(|i| self.leq[i][i])
            && (0..n).all(|i| (0..n).all(|j| i == j || !(self.leq[i][j] && self.leq[j][i])))
            && (0..n).all(|i| (0..n).all(|j| (0..n).all(|k| !(self.leq[i][j] && self.leq[j][k]) || self.leq[i][k])))
    }

    /// Hasse diagram, larger classes on top.
    pub fn to_dot(&self, name: &str) -> String {
        let mut out = format!("digraph \"{name}\" {{\n  rankdir=BT;\n  node [shape=box];\n");
        for (i, (c, l)) in self.classes.iter().zip(&self.labels).enumerate() {
            let _ = writeln!(out, "  n{i} [label=\"J{c} {}\"];", l.descriptor());
        }
        for (i, j) in self.covers() {
            let _ = writeln!(out, "  n{i} -> n{j};");
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "schema": "shiftcat/labeled-poset@1",
            "classes": self.classes,
            "labels": self.labels.iter().map(|l| serde_json::json!({
                "regular": l.regular,
                "group": l.group.descriptor(),
                "order": l.group.order(),
            })).collect::<Vec<_>>(),
            "covers": self.covers(),
        })
    }

    fn from_green(g: &GreenData, s: &FiniteSemigroup, classes: Vec<usize>) -> LabeledPoset {
        let leq = classes.iter().map(|&a| classes.iter().map(|&b| g.j_leq(a, b)).collect()).collect();
        let labels = classes
            .iter()
            .map(|&j| {
                let h = g.h_classes_in(j)[0];
                Label { regular: g.is_regular(j), group: s.schutzenberger(h).as_group() }
            })
            .collect();
        LabeledPoset { classes, leq, labels }
    }
}

/// `LU(K)†`: the J-classes of `s` meeting the local units of `k`, ordered
/// by `≤_J`, labeled by regularity and Schützenberger group.
pub fn lu_labeled_poset(s: &FiniteSemigroup, k: &[usize]) -> LabeledPoset {
    let g = s.green();
    let mut classes: Vec<usize> = s.local_units(k).iter().map(|&x| g.j_of(x)).collect();
    classes.sort_unstable();
    classes.dedup();
    LabeledPoset::from_green(g, s, classes)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Match {
    No,
    Exact,
    Invariant,
}

/// Searches for a bijection preserving order and labels in both directions.
pub fn poset_isomorphic(p: &LabeledPoset, q: &LabeledPoset) -> Result<PosetVerdict, KaroubiError> {
    let n = p.len();
    if n.max(q.len()) > POSET_ISO_LIMIT {
        return Err(KaroubiError::SizeLimit(POSET_ISO_LIMIT));
    }
    if n != q.len() {
        return Ok(PosetVerdict::NotIso(format!("cardinality {n} vs {}", q.len())));
    }
    let shape = |x: &LabeledPoset, i: usize| {
        let below = (0..x.len()).filter(|&j| x.leq[j][i]).count();
        let above = (0..x.len()).filter(|&j| x.leq[i][j]).count();
        (below, above)
    };
    let compat: Vec<Vec<Match>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let (a, b) = (&p.labels[i], &q.labels[j]);
                    if a.regular != b.regular || shape(p, i) != shape(q, j) {
                        return Match::No;
                    }
                    match a.group.isomorphic(&b.group) {
                        GroupIso::Isomorphic => Match::Exact,
                        GroupIso::InvariantEqual => Match::Invariant,
                        GroupIso::NotIsomorphic(_) => Match::No,
                    }
                })
                .collect()
        })
        .collect();
    if let Some(w) = search(p, q, &compat, false) {
        return Ok(PosetVerdict::Iso(w));
    }
    if let Some(w) = search(p, q, &compat, true) {
        return Ok(PosetVerdict::InvariantEqual(w));
    }
    let mut lp: Vec<String> = p.labels.iter().map(Label::descriptor).collect();
    let mut lq: Vec<String> = q.labels.iter().map(Label::descriptor).collect();
    lp.sort();
    lq.sort();
    if lp != lq {
        return Ok(PosetVerdict::NotIso(format!("labels {lp:?} vs {lq:?}")));
    }
    Ok(PosetVerdict::NotIso("no order-preserving bijection respects the labels".into()))
}

fn search(p: &LabeledPoset, q: &LabeledPoset, compat: &[Vec<Match>], loose: bool) -> Option<Vec<usize>> {
    fn go(
        i: usize,
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
        p: &LabeledPoset,
        q: &LabeledPoset,
        ok: &dyn Fn(usize, usize) -> bool,
    ) -> bool {
        if i == map.len() {
            return true;
        }
        for j in 0..map.len() {
            if used[j] || !ok(i, j) {
                continue;
            }
            if (0..i).any(|k| p.leq[i][k] != q.leq[j][map[k]] || p.leq[k][i] != q.leq[map[k]][j]) {
                continue;
            }
            map[i] = j;
            used[j] = true;
            if go(i + 1, map, used, p, q, ok) {
                return true;
            }
            used[j] = false;
        }
        false
    }
    let n = p.len();
    let ok = |i: usize, j: usize| match compat[i][j] {
        Match::No => false,
        Match::Exact => true,
        Match::Invariant => loose,
    };
    let mut map = vec![0; n];
    let mut used = vec![false; n];
    go(0, &mut map, &mut used, p, q, &ok).then_some(map)
}

/// Both posets of the comparison and the verdict on the map
/// `[(e,u,f)]_J ↦ [u]_J` between them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Comparison {
    pub verdict: PosetVerdict,
    /// J-classes of arrows of `K(S)` with middle in `K`, in the
    /// consolidation of `K(S)`.
    pub arrow_poset: LabeledPoset,
    pub lu_poset: LabeledPoset,
    pub arrow_count: usize,
}

/// The consolidation of `K(S)`: arrows plus a zero, with composition where
/// defined and zero elsewhere. The zero is the last element.
fn consolidation(k: &KaroubiCategory<'_>) -> Result<(FiniteSemigroup, Vec<Arrow>), KaroubiError> {
    let arrows = k.arrows();
    let index: HashMap<Arrow, usize> = arrows.iter().enumerate().map(|(i, &a)| (a, i)).collect();
    let zero = arrows.len();
    let n = zero + 1;
    let mut table = vec![vec![zero; n]; n];
    for (i, &a) in arrows.iter().enumerate() {
        for (j, &b) in arrows.iter().enumerate() {
            if let Some(c) = k.compose(a, b) {
                table[i][j] = index[&c];
            }
        }
    }
    let names: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
    let alphabet = Alphabet::new(names).map_err(|e| KaroubiError::MismatchBug(e.to_string()))?;
    let s = FiniteSemigroup::from_table_unchecked(table, alphabet, (0..n).collect())
        .map_err(|e| KaroubiError::MismatchBug(e.to_string()))?;
    Ok((s, arrows))
}

/// Checks that `[(e,u,f)]_J ↦ [u]_J` is a labeled poset isomorphism from
/// the arrow classes with middle in `k` onto `LU(k)†`.
pub fn karoubi_vs_lu_comparison(s: &FiniteSemigroup, k: &[usize]) -> Result<Comparison, KaroubiError> {
    let in_k: Vec<bool> = {
        let mut v = vec![false; s.size()];
        for &x in k {
            v[x] = true;
        }
        v
    };
    let cat = KaroubiCategory::build(s);
    let (cons, arrows) = consolidation(&cat)?;
    let cg = cons.green();
    let mut arrow_classes: Vec<usize> =
        arrows.iter().enumerate().filter(|(_, a)| in_k[a.s]).map(|(i, _)| cg.j_of(i)).collect();
    arrow_classes.sort_unstable();
    arrow_classes.dedup();
    let arrow_poset = LabeledPoset::from_green(cg, &cons, arrow_classes);
    let lu_poset = lu_labeled_poset(s, k);

    let g = s.green();
    let lu_pos: HashMap<usize, usize> = lu_poset.classes.iter().enumerate().map(|(i, &j)| (j, i)).collect();
    let mut image = Vec::with_capacity(arrow_poset.len());
    for &c in &arrow_poset.classes {
        let mut targets: Vec<usize> = cg.j_classes()[c].iter().map(|&x| g.j_of(arrows[x].s)).collect();
        targets.sort_unstable();
        targets.dedup();
        if targets.len() != 1 {
            return Err(KaroubiError::MismatchBug(format!("arrow class {c} meets J-classes {targets:?} of the base")));
        }
        let pos = *lu_pos
            .get(&targets[0])
            .ok_or_else(|| KaroubiError::MismatchBug(format!("arrow class {c} maps outside LU(K)")))?;
        image.push(pos);
    }
    let mut seen = image.clone();
    seen.sort_unstable();
    seen.dedup();
    if seen.len() != image.len() || seen.len() != lu_poset.len() {
        return Err(KaroubiError::MismatchBug(format!(
            "{} arrow classes map onto {} of {} LU classes",
            image.len(),
            seen.len(),
            lu_poset.len()
        )));
    }
    let mut invariant_only = false;
    for i in 0..image.len() {
        for j in 0..image.len() {
            if arrow_poset.leq[i][j] != lu_poset.leq[image[i]][image[j]] {
                return Err(KaroubiError::MismatchBug(format!("order differs between arrow classes {i} and {j}")));
            }
        }
        let (a, b) = (&arrow_poset.labels[i], &lu_poset.labels[image[i]]);
        if a.regular != b.regular {
            return Err(KaroubiError::MismatchBug(format!("regularity differs at arrow class {i}")));
        }
        match a.group.isomorphic(&b.group) {
            GroupIso::Isomorphic => {}
            GroupIso::InvariantEqual => invariant_only = true,
            GroupIso::NotIsomorphic(why) => {
                return Err(KaroubiError::MismatchBug(format!("groups differ at arrow class {i}: {why}")));
            }
        }
    }
    let verdict = if invariant_only { PosetVerdict::InvariantEqual(image) } else { PosetVerdict::Iso(image) };
    Ok(Comparison { verdict, arrow_poset, lu_poset, arrow_count: arrows.len() })
}
