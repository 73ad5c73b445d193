use std::collections::{BTreeSet, VecDeque};
use std::fmt;

/// Orders up to this bound are compared by exhaustive isomorphism search.
pub const EXACT_ISO_BOUND: usize = 64;

/// A finite group by multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
    identity: usize,
}

/// Outcome of comparing two finite groups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupIso {
    Isomorphic,
    NotIsomorphic(String),
    /// Too large for exhaustive search; invariants agree.
    InvariantEqual,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupInvariants {
    pub order: usize,
    pub abelianization: usize,
    pub element_orders: Vec<usize>,
}

impl FiniteGroup {
    /// Returns `None` unless the table has an identity and inverses.
    pub fn from_table(table: Vec<Vec<usize>>) -> Option<Self> {
        let n = table.len();
        if n == 0 || table.iter().any(|r| r.len() != n) {
            return None;
        }
        let identity = (0..n).find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))?;
        if !(0..n).all(|x| (0..n).any(|y| table[x][y] == identity)) {
            return None;
        }
        Some(FiniteGroup { table, identity })
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.table[x][y]
    }

    pub fn inverse(&self, x: usize) -> usize {
        (0..self.order()).find(|&y| self.table[x][y] == self.identity).expect("group element has an inverse")
    }

    pub fn element_order(&self, x: usize) -> usize {
        let mut k = 1;
        let mut cur = x;
        while cur != self.identity {
            cur = self.table[cur][x];
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|x| (0..n).all(|y| self.table[x][y] == self.table[y][x]))
    }

    pub fn is_cyclic(&self) -> bool {
        (0..self.order()).any(|x| self.element_order(x) == self.order())
    }

    /// Subgroup generated by `gens`, sorted.
    pub fn subgroup(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        seen[self.identity] = true;
        let mut queue: VecDeque<usize> = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.table[x][g];
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        (0..self.order()).filter(|&x| seen[x]).collect()
    }

    /// Order of `G / [G, G]`.
    pub fn abelianization_order(&self) -> usize {
        let n = self.order();
        let commutators: BTreeSet<usize> = (0..n)
            .flat_map(|x| (0..n).map(move |y| (x, y)))
            .map(|(x, y)| self.mul(self.mul(self.inverse(x), self.inverse(y)), self.mul(x, y)))
            .collect();
        n / self.subgroup(&commutators.into_iter().collect::<Vec<_>>()).len()
    }

    pub fn invariants(&self) -> GroupInvariants {
        let mut element_orders: Vec<usize> = (0..self.order()).map(|x| self.element_order(x)).collect();
        element_orders.sort_unstable();
        GroupInvariants { order: self.order(), abelianization: self.abelianization_order(), element_orders }
    }

    /// A generating set chosen greedily, largest element orders first.
    pub fn generating_set(&self) -> Vec<usize> {
        let mut candidates: Vec<usize> = (0..self.order()).collect();
        candidates.sort_by_key(|&x| (std::cmp::Reverse(self.element_order(x)), x));
        let mut gens = Vec::new();
        let mut span = self.subgroup(&gens);
        for x in candidates {
            if span.len() == self.order() {
                break;
            }
            if span.binary_search(&x).is_err() {
                gens.push(x);
                span = self.subgroup(&gens);
            }
        }
        gens
    }

    /// Exhaustive isomorphism search up to [`EXACT_ISO_BOUND`], invariant
    /// comparison above.
    pub fn isomorphic(&self, other: &FiniteGroup) -> GroupIso {
        let (a, b) = (self.invariants(), other.invariants());
        if a != b {
            let reason = if a.order != b.order {
                format!("orders {} and {}", a.order, b.order)
            } else {
                "invariants differ".to_string()
            };
            return GroupIso::NotIsomorphic(reason);
        }
        if self.order() > EXACT_ISO_BOUND {
            return GroupIso::InvariantEqual;
        }
        if self.find_isomorphism(other).is_some() {
            GroupIso::Isomorphic
        } else {
            GroupIso::NotIsomorphic("no isomorphism".to_string())
        }
    }

    /// An isomorphism `self → other` as an image table, if one exists.
    pub fn find_isomorphism(&self, other: &FiniteGroup) -> Option<Vec<usize>> {
        if self.order() != other.order() {
            return None;
        }
        let gens = self.generating_set();
        let choices: Vec<Vec<usize>> = gens
            .iter()
            .map(|&g| (0..other.order()).filter(|&y| other.element_order(y) == self.element_order(g)).collect())
            .collect();
        let mut images = vec![0; gens.len()];
        self.search(other, &gens, &choices, 0, &mut images)
    }

    fn search(
        &self,
        other: &FiniteGroup,
        gens: &[usize],
        choices: &[Vec<usize>],
        i: usize,
        images: &mut Vec<usize>,
    ) -> Option<Vec<usize>> {
        if i == gens.len() {
            return self.extend(other, gens, images);
        }
        for &c in &choices[i] {
            images[i] = c;
            if let Some(m) = self.search(other, gens, choices, i + 1, images) {
                return Some(m);
            }
        }
        None
    }

    fn extend(&self, other: &FiniteGroup, gens: &[usize], images: &[usize]) -> Option<Vec<usize>> {
        let n = self.order();
        let mut map = vec![usize::MAX; n];
        map[self.identity] = other.identity;
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for (&g, &img) in gens.iter().zip(images) {
                let y = self.mul(x, g);
                let fy = other.mul(map[x], img);
                if map[y] == usize::MAX {
                    map[y] = fy;
                    queue.push_back(y);
                } else if map[y] != fy {
                    return None;
                }
            }
        }
        let distinct: BTreeSet<usize> = map.iter().copied().collect();
        if distinct.len() != n || map.contains(&usize::MAX) {
            return None;
        }
        for x in 0..n {
            for y in 0..n {
                if map[self.mul(x, y)] != other.mul(map[x], map[y]) {
                    return None;
                }
            }
        }
        Some(map)
    }

    /// Short label: `1`, `C<n>` for cyclic groups, otherwise
    /// `G<n>/ab<k>` with the abelianization order.
    pub fn descriptor(&self) -> String {
        let n = self.order();
        if n == 1 {
            "1".to_string()
        } else if self.is_cyclic() {
            format!("C{n}")
        } else {
            format!("G{n}/ab{}", self.abelianization_order())
        }
    }
}

/// A group of permutations of an H-class (points `0..degree`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchutzGroup {
    carrier: Vec<Vec<usize>>,
    generators: Vec<Vec<usize>>,
}

impl SchutzGroup {
    /// Closure of `perms` under composition; the identity is added.
    pub fn from_permutations(perms: Vec<Vec<usize>>) -> Self {
        let degree = perms.first().map_or(0, |p| p.len());
        let identity: Vec<usize> = (0..degree).collect();
        let gens: BTreeSet<Vec<usize>> = perms.into_iter().filter(|p| *p != identity).collect();
        let mut carrier: BTreeSet<Vec<usize>> = BTreeSet::from([identity.clone()]);
        let mut queue = VecDeque::from([identity]);
        while let Some(p) = queue.pop_front() {
            for g in &gens {
                let q = compose(&p, g);
                if carrier.insert(q.clone()) {
                    queue.push_back(q);
                }
            }
        }
        let carrier: Vec<Vec<usize>> = carrier.into_iter().collect();
        let mut s = SchutzGroup { carrier, generators: Vec::new() };
        let group = s.as_group();
        s.generators = group.generating_set().into_iter().map(|i| s.carrier[i].clone()).collect();
        s
    }

    pub fn order(&self) -> usize {
        self.carrier.len()
    }

    pub fn degree(&self) -> usize {
        self.carrier[0].len()
    }

    pub fn carrier(&self) -> &[Vec<usize>] {
        &self.carrier
    }

    /// A small generating set.
    pub fn generators(&self) -> &[Vec<usize>] {
        &self.generators
    }

    /// Every point is moved to every other by exactly one element.
    pub fn is_simply_transitive(&self) -> bool {
        let d = self.degree();
        self.order() == d && (0..d).all(|j| self.carrier.iter().any(|p| p[0] == j))
    }

    /// Multiplication table, elements numbered as in [`carrier`](Self::carrier).
    pub fn as_group(&self) -> FiniteGroup {
        let idx = |p: &Vec<usize>| self.carrier.binary_search(p).expect("closed under composition");
        let table = self.carrier.iter().map(|p| self.carrier.iter().map(|q| idx(&compose(p, q))).collect()).collect();
        FiniteGroup::from_table(table).expect("permutation group")
    }

    pub fn descriptor(&self) -> String {
        self.as_group().descriptor()
    }
}

impl fmt::Display for SchutzGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.descriptor())
    }
}

/// `p` then `q`.
fn compose(p: &[usize], q: &[usize]) -> Vec<usize> {
    p.iter().map(|&i| q[i]).collect()
}
