use std::collections::{BTreeSet, HashMap};

use super::FiniteSemigroup;
use crate::shifts::tarjan;

/// Green's relations R, L, J, H of a finite semigroup, with the J-order.
///
/// Class ids are assigned in order of the smallest element of each class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GreenData {
    r_of: Vec<usize>,
    l_of: Vec<usize>,
    j_of: Vec<usize>,
    h_of: Vec<usize>,
    r_classes: Vec<Vec<usize>>,
    l_classes: Vec<Vec<usize>>,
    j_classes: Vec<Vec<usize>>,
    h_classes: Vec<Vec<usize>>,
    // j_leq[a][b]: J-class a lies below J-class b
    j_leq: Vec<Vec<bool>>,
    regular: Vec<bool>,
}

/// Partition from SCCs, relabeled by smallest member.
fn classes(adj: &[Vec<usize>]) -> (Vec<usize>, Vec<Vec<usize>>) {
    let mut comps = tarjan(adj);
    for c in &mut comps {
        c.sort_unstable();
    }
    comps.sort();
    let mut of = vec![0; adj.len()];
    for (i, c) in comps.iter().enumerate() {
        for &x in c {
            of[x] = i;
        }
    }
    (of, comps)
}

impl GreenData {
    /// `x S^I` and `S^I x` are the sets reachable from `x` in the right and
    /// left Cayley graphs over the generators; the classes are the strongly
    /// connected components.
    pub(super) fn compute(s: &FiniteSemigroup) -> GreenData {
        let n = s.size();
        let gens = s.generators();
        let right: Vec<Vec<usize>> = (0..n).map(|x| gens.iter().map(|&g| s.mul(x, g)).collect()).collect();
        let left: Vec<Vec<usize>> = (0..n).map(|x| gens.iter().map(|&g| s.mul(g, x)).collect()).collect();
        let both: Vec<Vec<usize>> = (0..n).map(|x| right[x].iter().chain(&left[x]).copied().collect()).collect();
        let (r_of, r_classes) = classes(&right);
        let (l_of, l_classes) = classes(&left);
        let (j_of, j_classes) = classes(&both);

        let mut h_ids: HashMap<(usize, usize), usize> = HashMap::new();
        let mut h_of = vec![0; n];
        let mut h_classes: Vec<Vec<usize>> = Vec::new();
        for x in 0..n {
            let id = *h_ids.entry((r_of[x], l_of[x])).or_insert_with(|| {
                h_classes.push(Vec::new());
                h_classes.len() - 1
            });
            h_of[x] = id;
            h_classes[id].push(x);
        }

        // J-order by reachability on the condensation
        let c = j_classes.len();
        let mut down: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); c];
        for x in 0..n {
            for &y in &both[x] {
                if j_of[x] != j_of[y] {
                    down[j_of[x]].insert(j_of[y]);
                }
            }
        }
        let mut j_leq = vec![vec![false; c]; c];
        #[allow(clippy::needless_range_loop)]
        for top in 0..c {
            let mut stack = vec![top];
            while let Some(a) = stack.pop() {
                if !j_leq[a][top] {
                    j_leq[a][top] = true;
                    stack.extend(down[a].iter().copied());
                }
            }
        }
        let regular = j_classes.iter().map(|cl| cl.iter().any(|&x| s.is_idempotent(x))).collect();

        let g = GreenData { r_of, l_of, j_of, h_of, r_classes, l_classes, j_classes, h_classes, j_leq, regular };
        // D = J: every R-class and L-class inside a J-class meet
        for (j, cl) in g.j_classes.iter().enumerate() {
            let rs = g.r_classes_in(j).len();
            let ls = g.l_classes_in(j).len();
            let hs: BTreeSet<usize> = cl.iter().map(|&x| g.h_of[x]).collect();
            assert_eq!(hs.len(), rs * ls, "D differs from J in J-class {j}");
        }
        g
    }

    pub fn r_of(&self, x: usize) -> usize {
        self.r_of[x]
    }

    pub fn l_of(&self, x: usize) -> usize {
        self.l_of[x]
    }

    pub fn j_of(&self, x: usize) -> usize {
        self.j_of[x]
    }

    pub fn h_of(&self, x: usize) -> usize {
        self.h_of[x]
    }

    pub fn r_classes(&self) -> &[Vec<usize>] {
        &self.r_classes
    }

    pub fn l_classes(&self) -> &[Vec<usize>] {
        &self.l_classes
    }

    pub fn j_classes(&self) -> &[Vec<usize>] {
        &self.j_classes
    }

    pub fn h_classes(&self) -> &[Vec<usize>] {
        &self.h_classes
    }

    /// R-class ids contained in J-class `j`.
    pub fn r_classes_in(&self, j: usize) -> Vec<usize> {
        self.j_classes[j].iter().map(|&x| self.r_of[x]).collect::<BTreeSet<_>>().into_iter().collect()
    }

    pub fn l_classes_in(&self, j: usize) -> Vec<usize> {
        self.j_classes[j].iter().map(|&x| self.l_of[x]).collect::<BTreeSet<_>>().into_iter().collect()
    }

    pub fn h_classes_in(&self, j: usize) -> Vec<usize> {
        self.j_classes[j].iter().map(|&x| self.h_of[x]).collect::<BTreeSet<_>>().into_iter().collect()
    }

    /// J-class `a` ≤_J J-class `b`.
    pub fn j_leq(&self, a: usize, b: usize) -> bool {
        self.j_leq[a][b]
    }

    /// `x ≤_J y` on elements.
    pub fn leq_j(&self, x: usize, y: usize) -> bool {
        self.j_leq[self.j_of[x]][self.j_of[y]]
    }

    pub fn is_regular(&self, j: usize) -> bool {
        self.regular[j]
    }

    /// J-classes with nothing strictly below them.
    pub fn minimal_j_classes(&self) -> Vec<usize> {
        let c = self.j_classes.len();
        (0..c).filter(|&a| (0..c).all(|b| b == a || !self.j_leq[b][a])).collect()
    }
}
