//! Finite semigroups given by Cayley tables.

mod green;
mod groups;
mod syntactic;

pub use green::GreenData;
pub use groups::{FiniteGroup, GroupInvariants, GroupIso, SchutzGroup};
pub use syntactic::{syntactic_semigroup, SyntacticSemigroup};

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;
use std::hash::Hash;
use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;
use thiserror::Error;

use crate::shifts::ShiftError;
use crate::words::{Alphabet, Letter, Word, WordError};

pub const SEMIGROUP_SCHEMA: &str = "shiftcat/semigroup@1";

/// Element limit used when none is given.
pub const DEFAULT_SIZE_LIMIT: usize = 20_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SemigroupError {
    #[error("semigroup exceeds the size limit of {0} elements")]
    SizeLimit(usize),
    #[error("product table is not associative: ({0}·{1})·{2} differs from {0}·({1}·{2})")]
    NotAssociative(usize, usize, usize),
    #[error("invalid table: {0}")]
    InvalidTable(String),
    #[error("element {0} is not idempotent")]
    NotIdempotent(usize),
    #[error("elements {0} and {1} are not J-equivalent")]
    NotJEquivalent(usize, usize),
    #[error("generators do not generate the table (element {0} unreachable)")]
    NotGenerated(usize),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Shift(#[from] ShiftError),
    #[error("invalid semigroup JSON: {0}")]
    Json(String),
}

/// A total map on `{0..n}`; `x·y` means "apply `x`, then `y`".
pub type Transformation = Vec<usize>;

#[derive(Debug, Clone)]
pub struct FiniteSemigroup {
    size: usize,
    table: Vec<usize>,
    alphabet: Alphabet,
    generators: Vec<usize>,
    witness: Vec<Word>,
    green: OnceLock<GreenData>,
}

impl PartialEq for FiniteSemigroup {
    fn eq(&self, other: &Self) -> bool {
        self.table == other.table && self.generators == other.generators && self.alphabet == other.alphabet
    }
}

impl Eq for FiniteSemigroup {}

impl FiniteSemigroup {
    /// Closure of `gens` under `mul`, numbered in order of discovery by
    /// breadth-first search (generators first), with shortest witnesses.
    pub fn generate_by<T, F>(gens: &[T], alphabet: Alphabet, limit: usize, mul: F) -> Result<Self, SemigroupError>
    where
        T: Clone + Eq + Hash,
        F: Fn(&T, &T) -> T,
    {
        if gens.len() != alphabet.len() {
            return Err(SemigroupError::InvalidTable("one generator per letter is required".into()));
        }
        let mut ids: HashMap<T, usize> = HashMap::new();
        let mut elems: Vec<T> = Vec::new();
        let mut witness: Vec<Word> = Vec::new();
        let mut generators = Vec::new();
        for (i, g) in gens.iter().enumerate() {
            let id = *ids.entry(g.clone()).or_insert_with(|| {
                elems.push(g.clone());
                witness.push(Word::letter(Letter(i as u32)));
                elems.len() - 1
            });
            generators.push(id);
        }
        if elems.len() > limit {
            return Err(SemigroupError::SizeLimit(limit));
        }
        // right Cayley graph
        let mut right: Vec<Vec<usize>> = Vec::new();
        let mut i = 0;
        while i < elems.len() {
            let mut row = Vec::with_capacity(gens.len());
            for (l, g) in gens.iter().enumerate() {
                let p = mul(&elems[i], g);
                let id = match ids.get(&p) {
                    Some(&id) => id,
                    None => {
                        if elems.len() == limit {
                            return Err(SemigroupError::SizeLimit(limit));
                        }
                        let mut w = witness[i].clone();
                        w.push(Letter(l as u32));
                        ids.insert(p.clone(), elems.len());
                        elems.push(p);
                        witness.push(w);
                        elems.len() - 1
                    }
                };
                row.push(id);
            }
            right.push(row);
            i += 1;
        }
        let n = elems.len();
        let mut table = vec![0usize; n * n];
        for x in 0..n {
            for y in 0..n {
                table[x * n + y] = witness[y].iter().fold(x, |acc, l| right[acc][l.index()]);
            }
        }
        let s = FiniteSemigroup { size: n, table, alphabet, generators, witness, green: OnceLock::new() };
        s.check_associative()?;
        Ok(s)
    }

    /// The transformation semigroup generated by one map per letter.
    pub fn generate(maps: &[Transformation], alphabet: Alphabet, limit: usize) -> Result<Self, SemigroupError> {
        let states = maps.first().map_or(0, |m| m.len());
        if maps.iter().any(|m| m.len() != states || m.iter().any(|&q| q >= states)) {
            return Err(SemigroupError::InvalidTable("transformations must be total maps on one state set".into()));
        }
        Self::generate_by(maps, alphabet, limit, |x: &Transformation, y: &Transformation| {
            x.iter().map(|&q| y[q]).collect()
        })
    }

    /// A semigroup from a product table, generated by all its elements
    /// (named `s0`, `s1`, …).
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Self, SemigroupError> {
        let n = table.len();
        let names: Vec<String> = (0..n).map(|i| format!("s{i}")).collect();
        Self::from_table_with_generators(table, Alphabet::new(names)?, (0..n).collect())
    }

    /// A semigroup from a product table with declared generators; witnesses
    /// are shortest words found by breadth-first search.
    pub fn from_table_with_generators(
        table: Vec<Vec<usize>>,
        alphabet: Alphabet,
        generators: Vec<usize>,
    ) -> Result<Self, SemigroupError> {
        let s = Self::from_table_unchecked(table, alphabet, generators)?;
        s.check_associative()?;
        Ok(s)
    }

    /// As [`from_table_with_generators`](Self::from_table_with_generators)
    /// without the associativity check, for tables associative by
    /// construction.
    pub(crate) fn from_table_unchecked(
        table: Vec<Vec<usize>>,
        alphabet: Alphabet,
        generators: Vec<usize>,
    ) -> Result<Self, SemigroupError> {
        let n = table.len();
        if n == 0 {
            return Err(SemigroupError::InvalidTable("empty table".into()));
        }
        if table.iter().any(|row| row.len() != n || row.iter().any(|&x| x >= n)) {
            return Err(SemigroupError::InvalidTable("table must be square with entries in range".into()));
        }
        if generators.len() != alphabet.len() || generators.iter().any(|&g| g >= n) {
            return Err(SemigroupError::InvalidTable("one in-range generator per letter is required".into()));
        }
        let flat: Vec<usize> = table.into_iter().flatten().collect();
        let mut witness: Vec<Option<Word>> = vec![None; n];
        let mut queue = VecDeque::new();
        for (i, &g) in generators.iter().enumerate() {
            if witness[g].is_none() {
                witness[g] = Some(Word::letter(Letter(i as u32)));
                queue.push_back(g);
            }
        }
        while let Some(x) = queue.pop_front() {
            for (i, &g) in generators.iter().enumerate() {
                let y = flat[x * n + g];
                if witness[y].is_none() {
                    let mut w = witness[x].clone().expect("visited");
                    w.push(Letter(i as u32));
                    witness[y] = Some(w);
                    queue.push_back(y);
                }
            }
        }
        let witness = witness
            .into_iter()
            .enumerate()
            .map(|(i, w)| w.ok_or(SemigroupError::NotGenerated(i)))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(FiniteSemigroup { size: n, table: flat, alphabet, generators, witness, green: OnceLock::new() })
    }

    /// Exhaustive up to 512 elements, 200 000 seeded random triples above.
    fn check_associative(&self) -> Result<(), SemigroupError> {
        let n = self.size;
        let check = |x: usize, y: usize, z: usize| {
            if self.mul(self.mul(x, y), z) != self.mul(x, self.mul(y, z)) {
                Err(SemigroupError::NotAssociative(x, y, z))
            } else {
                Ok(())
            }
        };
        if n <= 512 {
            for x in 0..n {
                for y in 0..n {
                    let xy = self.mul(x, y);
                    for z in 0..n {
                        if self.mul(xy, z) != self.mul(x, self.mul(y, z)) {
                            return Err(SemigroupError::NotAssociative(x, y, z));
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
            for _ in 0..200_000 {
                check(rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n))?;
            }
        }
        Ok(())
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.size
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.table[x * self.size + y]
    }

    pub fn product(&self, xs: &[usize]) -> Option<usize> {
        let (&first, rest) = xs.split_first()?;
        Some(rest.iter().fold(first, |acc, &y| self.mul(acc, y)))
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn generator(&self, l: Letter) -> usize {
        self.generators[l.index()]
    }

    pub fn witness(&self, x: usize) -> &Word {
        &self.witness[x]
    }

    /// Image of a nonempty word under the generating morphism.
    pub fn eval_word(&self, w: &Word) -> Option<usize> {
        let mut it = w.iter();
        let first = self.generator(*it.next()?);
        Some(it.fold(first, |acc, &l| self.mul(acc, self.generator(l))))
    }

    pub fn is_idempotent(&self, x: usize) -> bool {
        self.mul(x, x) == x
    }

    pub fn idempotents(&self) -> Vec<usize> {
        self.elements().filter(|&x| self.is_idempotent(x)).collect()
    }

    /// `s^n` for `n ≥ 1`.
    pub fn pow(&self, s: usize, n: usize) -> usize {
        assert!(n >= 1);
        let mut result = s;
        let mut base = s;
        let mut e = n - 1;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(result, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        result
    }

    /// Index `i` and period `p` of the monogenic subsemigroup: `s^(i+p) = s^i`
    /// with both minimal.
    pub fn index_period(&self, s: usize) -> (usize, usize) {
        let mut seen: HashMap<usize, usize> = HashMap::new();
        let mut cur = s;
        let mut k = 1;
        loop {
            if let Some(&j) = seen.get(&cur) {
                return (j, k - j);
            }
            seen.insert(cur, k);
            cur = self.mul(cur, s);
            k += 1;
        }
    }

    /// The idempotent power of `s`.
    pub fn omega_power(&self, s: usize) -> usize {
        let (i, p) = self.index_period(s);
        self.pow(s, i.div_ceil(p) * p)
    }

    /// `s^(ω+q) = s^ω · s^(q mod p)`, `q` any integer.
    pub fn omega_plus(&self, s: usize, q: i64) -> usize {
        let (_, p) = self.index_period(s);
        let e = self.omega_power(s);
        let r = q.rem_euclid(p as i64) as usize;
        if r == 0 {
            e
        } else {
            self.mul(e, self.pow(s, r))
        }
    }

    /// Green's relations, computed once.
    pub fn green(&self) -> &GreenData {
        self.green.get_or_init(|| GreenData::compute(self))
    }

    /// `S^I`: `self` with an identity adjoined as the last element (named
    /// `1`, or `1'` if taken). Witnesses of old elements are kept.
    pub fn with_identity(&self) -> (FiniteSemigroup, usize) {
        let n = self.size;
        let one = n;
        let mut table = vec![vec![0; n + 1]; n + 1];
        for (x, row) in table.iter_mut().enumerate() {
            for (y, cell) in row.iter_mut().enumerate() {
                *cell = match (x == one, y == one) {
                    (true, _) => y,
                    (_, true) => x,
                    _ => self.mul(x, y),
                };
            }
        }
        let mut name = "1".to_string();
        while self.alphabet.contains(&name) {
            name.push('\'');
        }
        let alphabet = self.alphabet.extended(&name).expect("fresh name");
        let mut generators = self.generators.clone();
        generators.push(one);
        let s = FiniteSemigroup::from_table_with_generators(table, alphabet, generators).expect("monoid extension");
        (s, one)
    }

    /// `{s ∈ K : s = esf for idempotents e, f}`.
    pub fn local_units(&self, k: &[usize]) -> Vec<usize> {
        let idem = self.idempotents();
        let mut out: Vec<usize> = k
            .iter()
            .copied()
            .filter(|&s| idem.iter().any(|&e| self.mul(e, s) == s) && idem.iter().any(|&f| self.mul(s, f) == s))
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// `(x, y)` with `e = xy` and `f = yx`, first in (x, y) order.
    pub fn conjugation_witness(&self, e: usize, f: usize) -> Result<(usize, usize), SemigroupError> {
        for &z in &[e, f] {
            if !self.is_idempotent(z) {
                return Err(SemigroupError::NotIdempotent(z));
            }
        }
        let g = self.green();
        if g.j_of(e) != g.j_of(f) {
            return Err(SemigroupError::NotJEquivalent(e, f));
        }
        for x in self.elements() {
            for y in self.elements() {
                if self.mul(x, y) == e && self.mul(y, x) == f {
                    return Ok((x, y));
                }
            }
        }
        unreachable!("J-equivalent idempotents of a finite semigroup are conjugate")
    }

    /// Group of permutations of the H-class `h` induced by right translations
    /// that stabilize it.
    pub fn schutzenberger(&self, h: usize) -> SchutzGroup {
        let class = &self.green().h_classes()[h];
        let pos: HashMap<usize, usize> = class.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let mut perms: Vec<Vec<usize>> = vec![(0..class.len()).collect()];
        for s in self.elements() {
            if pos.contains_key(&self.mul(class[0], s)) {
                perms.push(class.iter().map(|&x| pos[&self.mul(x, s)]).collect());
            }
        }
        SchutzGroup::from_permutations(perms)
    }

    /// The maximal subgroup at an idempotent, as the H-class with the
    /// restricted table.
    pub fn maximal_subgroup(&self, e: usize) -> Result<FiniteGroup, SemigroupError> {
        if !self.is_idempotent(e) {
            return Err(SemigroupError::NotIdempotent(e));
        }
        let g = self.green();
        let class = &g.h_classes()[g.h_of(e)];
        let pos: HashMap<usize, usize> = class.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let table = class.iter().map(|&x| class.iter().map(|&y| pos[&self.mul(x, y)]).collect()).collect();
        Ok(FiniteGroup::from_table(table).expect("H-class of an idempotent is a group"))
    }

    pub fn to_json(&self) -> serde_json::Value {
        let table: Vec<Vec<usize>> = (0..self.size).map(|x| (0..self.size).map(|y| self.mul(x, y)).collect()).collect();
        let generators: Vec<serde_json::Value> = self
            .generators
            .iter()
            .zip(self.alphabet.symbols())
            .map(|(&g, s)| serde_json::json!({"symbol": s, "element": g}))
            .collect();
        let witnesses: Vec<String> = self.witness.iter().map(|w| self.alphabet.format(w)).collect();
        serde_json::json!({
            "schema": SEMIGROUP_SCHEMA,
            "size": self.size,
            "generators": generators,
            "table": table,
            "witnesses": witnesses,
        })
    }

    pub fn from_json(text: &str) -> Result<Self, SemigroupError> {
        #[derive(Deserialize)]
        struct Gen {
            symbol: String,
            element: usize,
        }
        #[derive(Deserialize)]
        struct Raw {
            #[serde(default)]
            schema: Option<String>,
            table: Vec<Vec<usize>>,
            #[serde(default)]
            generators: Option<Vec<Gen>>,
        }
        let raw: Raw = serde_json::from_str(text).map_err(|e| SemigroupError::Json(e.to_string()))?;
        if let Some(s) = &raw.schema {
            if s != SEMIGROUP_SCHEMA {
                return Err(SemigroupError::Json(format!("unsupported schema `{s}`")));
            }
        }
        match raw.generators {
            None => Self::from_table(raw.table),
            Some(gens) => {
                let alphabet = Alphabet::new(gens.iter().map(|g| g.symbol.clone()).collect::<Vec<_>>())?;
                Self::from_table_with_generators(raw.table, alphabet, gens.iter().map(|g| g.element).collect())
            }
        }
    }

    /// Plain-text table readable by GAP's `SemigroupByMultiplicationTable`
    /// (1-based).
    pub fn to_gap(&self) -> String {
        let mut out = String::from("SemigroupByMultiplicationTable([\n");
        for x in 0..self.size {
            let row: Vec<String> = (0..self.size).map(|y| (self.mul(x, y) + 1).to_string()).collect();
            let sep = if x + 1 == self.size { "" } else { "," };
            writeln!(out, "  [{}]{sep}", row.join(",")).expect("write to string");
        }
        out.push_str("]);\n");
        out
    }

    /// Cyclic group of order `n` generated by `g`.
    pub fn cyclic_group(n: usize) -> Self {
        let maps = vec![(0..n).map(|q| (q + 1) % n).collect::<Vec<_>>()];
        Self::generate(&maps, Alphabet::from_chars("g").expect("alphabet"), n).expect("cyclic group")
    }

    /// `xy = y` on `n` elements.
    pub fn right_zero(n: usize) -> Self {
        Self::from_table((0..n).map(|_| (0..n).collect()).collect()).expect("right-zero")
    }

    /// `n` elements, every product equal to element 0.
    pub fn null(n: usize) -> Self {
        Self::from_table(vec![vec![0; n]; n]).expect("null semigroup")
    }

    pub fn trivial() -> Self {
        Self::from_table(vec![vec![0]]).expect("trivial")
    }

    /// Chain semilattice `0 < 1 < … < n-1` under minimum.
    pub fn chain(n: usize) -> Self {
        Self::from_table((0..n).map(|x| (0..n).map(|y| x.min(y)).collect()).collect()).expect("chain")
    }

    /// A random transformation semigroup with at most `max_size` elements,
    /// one random map per letter of `alphabet` on 2 to 4 states.
    pub fn random_transformation<R: Rng>(alphabet: &Alphabet, max_size: usize, rng: &mut R) -> Self {
        loop {
            let states = rng.gen_range(2..=4);
            let maps: Vec<Transformation> =
                (0..alphabet.len()).map(|_| (0..states).map(|_| rng.gen_range(0..states)).collect()).collect();
            if let Ok(s) = Self::generate(&maps, alphabet.clone(), max_size) {
                return s;
            }
        }
    }
}
