//! Deterministic automata for block languages.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::shifts::{Shift, VertexSet};
use crate::words::{Letter, Word};

/// A complete DFA over letters `0..alphabet_size`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dfa {
    alphabet_size: usize,
    delta: Vec<Vec<usize>>,
    initial: usize,
    accepting: Vec<bool>,
}

impl Dfa {
    pub fn new(alphabet_size: usize, delta: Vec<Vec<usize>>, initial: usize, accepting: Vec<bool>) -> Self {
        assert_eq!(delta.len(), accepting.len());
        assert!(delta.iter().all(|row| row.len() == alphabet_size && row.iter().all(|&t| t < accepting.len())));
        Dfa { alphabet_size, delta, initial, accepting }
    }

    /// Subset construction for the block language of `shift`: start at
    /// the set of all vertices, accept every nonempty subset, and send
    /// dead words to the empty set, which is the sink.
    pub fn for_blocks(shift: &Shift) -> Self {
        let g = shift.graph();
        let k = g.alphabet_size();
        let mut ids: BTreeMap<VertexSet, usize> = BTreeMap::new();
        let mut sets: Vec<VertexSet> = Vec::new();
        let mut queue = VecDeque::new();
        let start = g.all_vertices();
        ids.insert(start.clone(), 0);
        sets.push(start.clone());
        queue.push_back(start);
        let mut delta: Vec<Vec<usize>> = Vec::new();
        while let Some(set) = queue.pop_front() {
            let mut row = Vec::with_capacity(k);
            for l in 0..k as u32 {
                let next = g.step(&set, Letter(l));
                let id = match ids.get(&next) {
                    Some(&id) => id,
                    None => {
                        let id = sets.len();
                        ids.insert(next.clone(), id);
                        sets.push(next.clone());
                        queue.push_back(next);
                        id
                    }
                };
                row.push(id);
            }
            delta.push(row);
        }
        let accepting = sets.iter().map(|s| !s.is_empty()).collect();
        Dfa::new(k, delta, 0, accepting)
    }

    pub fn state_count(&self) -> usize {
        self.delta.len()
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet_size
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn is_accepting(&self, q: usize) -> bool {
        self.accepting[q]
    }

    pub fn next(&self, q: usize, l: Letter) -> usize {
        self.delta[q][l.index()]
    }

    pub fn run_from(&self, q: usize, w: &Word) -> usize {
        w.iter().fold(q, |q, &l| self.next(q, l))
    }

    pub fn accepts(&self, w: &Word) -> bool {
        self.accepting[self.run_from(self.initial, w)]
    }

    /// The action of letter `l` as a map on states.
    pub fn letter_map(&self, l: Letter) -> Vec<usize> {
        self.delta.iter().map(|row| row[l.index()]).collect()
    }

    fn reachable(&self) -> Vec<usize> {
        let mut seen = vec![false; self.state_count()];
        let mut order = vec![self.initial];
        seen[self.initial] = true;
        let mut i = 0;
        while i < order.len() {
            for &t in &self.delta[order[i]] {
                if !seen[t] {
                    seen[t] = true;
                    order.push(t);
                }
            }
            i += 1;
        }
        order
    }

    /// Minimal complete DFA for the same language (Hopcroft), restricted to
    /// reachable states and numbered in breadth-first order from the
    /// initial state.
    pub fn minimize(&self) -> Dfa {
        let reach = self.reachable();
        let n = reach.len();
        let mut local = vec![usize::MAX; self.state_count()];
        for (i, &q) in reach.iter().enumerate() {
            local[q] = i;
        }
        let delta: Vec<Vec<usize>> = reach.iter().map(|&q| self.delta[q].iter().map(|&t| local[t]).collect()).collect();
        let accepting: Vec<bool> = reach.iter().map(|&q| self.accepting[q]).collect();

        let k = self.alphabet_size;
        // inverse[l][q] = states p with delta[p][l] = q
        let mut inverse = vec![vec![Vec::new(); n]; k];
        for (p, row) in delta.iter().enumerate() {
            for (l, &q) in row.iter().enumerate() {
                inverse[l][q].push(p);
            }
        }
        let acc: BTreeSet<usize> = (0..n).filter(|&q| accepting[q]).collect();
        let rej: BTreeSet<usize> = (0..n).filter(|&q| !accepting[q]).collect();
        let mut partition: Vec<BTreeSet<usize>> = [acc, rej].into_iter().filter(|b| !b.is_empty()).collect();
        let mut block_of = vec![0usize; n];
        for (b, set) in partition.iter().enumerate() {
            for &q in set {
                block_of[q] = b;
            }
        }
        let mut work: VecDeque<(usize, usize)> = VecDeque::new();
        let smaller = if partition.len() == 2 && partition[1].len() < partition[0].len() { 1 } else { 0 };
        for l in 0..k {
            work.push_back((smaller, l));
        }
        while let Some((b, l)) = work.pop_front() {
            let splitter: BTreeSet<usize> =
                partition[b].iter().flat_map(|&q| inverse[l][q].iter().copied()).collect();
            let touched: BTreeSet<usize> = splitter.iter().map(|&p| block_of[p]).collect();
            for y in touched {
                let (inside, outside): (BTreeSet<usize>, BTreeSet<usize>) =
                    partition[y].iter().partition(|q| splitter.contains(q));
                if inside.is_empty() || outside.is_empty() {
                    continue;
                }
                let new_id = partition.len();
                let (keep, moved) = if inside.len() <= outside.len() { (outside, inside) } else { (inside, outside) };
                for &q in &moved {
                    block_of[q] = new_id;
                }
                partition[y] = keep;
                partition.push(moved);
                // `moved` is the smaller half: whether or not (y, l) is still
                // pending, queueing the new block is enough
                for l2 in 0..k {
                    work.push_back((new_id, l2));
                }
            }
        }
        // renumber blocks by BFS from the initial state
        let mut order: Vec<usize> = Vec::new();
        let mut id = vec![usize::MAX; partition.len()];
        let start = block_of[local[self.initial]];
        id[start] = 0;
        order.push(start);
        let mut i = 0;
        while i < order.len() {
            let b = order[i];
            let rep = *partition[b].iter().next().expect("nonempty block");
            for &t in &delta[rep] {
                let tb = block_of[t];
                if id[tb] == usize::MAX {
                    id[tb] = order.len();
                    order.push(tb);
                }
            }
            i += 1;
        }
        let min_delta = order
            .iter()
            .map(|&b| {
                let rep = *partition[b].iter().next().expect("nonempty block");
                delta[rep].iter().map(|&t| id[block_of[t]]).collect()
            })
            .collect();
        let min_acc = order.iter().map(|&b| accepting[*partition[b].iter().next().expect("nonempty")]).collect();
        Dfa::new(k, min_delta, 0, min_acc)
    }
}
