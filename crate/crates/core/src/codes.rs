//! Block maps and the word codes they induce.
//!
//! A [`BlockMap`] with memory `m` and anticipation `n` reads windows of
//! `N = m + n + 1` letters. Its word code sends a word `u` with `|u| >= N` to
//! the word of images of its consecutive length-`N` factors and every
//! shorter word to ε. A [`CentralBlockMap`] is one with `m = n = k`, the
//! wing.

use std::collections::{BTreeMap, HashMap};

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::shifts::{Edge, LabeledGraph, PeriodicPoint, Shift, ShiftError};
use crate::words::{Alphabet, Letter, Word, WordError};

pub const BLOCK_MAP_SCHEMA: &str = "shiftcat/block-map@1";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CodeError {
    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),
    #[error("block map table is missing window `{0}`")]
    IncompleteTable(String),
    #[error("window {window} does not equal memory {memory} + anticipation {anticipation} + 1")]
    WindowMismatch { window: usize, memory: usize, anticipation: usize },
    #[error("block map is not central (memory {0}, anticipation {1})")]
    NotCentral(usize, usize),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Shift(#[from] ShiftError),
    #[error("invalid block map JSON: {0}")]
    Json(String),
}

/// Anything that induces a word code through a fixed window.
pub trait WordCode {
    fn window(&self) -> usize;
    fn word_code(&self, u: &Word) -> Word;
}

impl WordCode for BlockMap {
    fn window(&self) -> usize {
        BlockMap::window(self)
    }

    fn word_code(&self, u: &Word) -> Word {
        BlockMap::word_code(self, u)
    }
}

impl WordCode for CentralBlockMap {
    fn window(&self) -> usize {
        CentralBlockMap::window(self)
    }

    fn word_code(&self, u: &Word) -> Word {
        CentralBlockMap::word_code(self, u)
    }
}

/// A total map `A^N → B` with declared memory and anticipation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockMap {
    source: Alphabet,
    target: Alphabet,
    memory: usize,
    anticipation: usize,
    // indexed by the base-|A| value of the window, first letter most significant
    table: Vec<Letter>,
}

impl BlockMap {
    pub fn from_fn(
        source: Alphabet,
        target: Alphabet,
        memory: usize,
        anticipation: usize,
        f: impl Fn(&[Letter]) -> Letter,
    ) -> Self {
        let window = memory + anticipation + 1;
        let table = source
            .words_of_length(window)
            .iter()
            .map(|w| {
                let b = f(w.letters());
                assert!(b.index() < target.len(), "image outside target alphabet");
                b
            })
            .collect();
        BlockMap { source, target, memory, anticipation, table }
    }

    pub fn from_table(
        source: Alphabet,
        target: Alphabet,
        memory: usize,
        anticipation: usize,
        entries: &HashMap<Word, Letter>,
    ) -> Result<Self, CodeError> {
        let window = memory + anticipation + 1;
        let mut table = Vec::new();
        for w in source.words_of_length(window) {
            match entries.get(&w) {
                Some(&b) if b.index() < target.len() => table.push(b),
                Some(_) => return Err(CodeError::AlphabetMismatch("image outside target".into())),
                None => return Err(CodeError::IncompleteTable(source.format(&w))),
            }
        }
        Ok(BlockMap { source, target, memory, anticipation, table })
    }

    /// A one-letter-window map given letter by letter.
    pub fn letter_map(source: Alphabet, target: Alphabet, f: impl Fn(Letter) -> Letter) -> Self {
        BlockMap::from_fn(source, target, 0, 0, |w| f(w[0]))
    }

    /// Uniformly random table.
    pub fn random<R: Rng>(source: Alphabet, target: Alphabet, memory: usize, anticipation: usize, rng: &mut R) -> Self {
        let t = target.len() as u32;
        let n = source.len().pow((memory + anticipation + 1) as u32);
        let table = (0..n).map(|_| Letter(rng.gen_range(0..t))).collect();
        BlockMap { source, target, memory, anticipation, table }
    }

    pub fn source(&self) -> &Alphabet {
        &self.source
    }

    pub fn target(&self) -> &Alphabet {
        &self.target
    }

    pub fn memory(&self) -> usize {
        self.memory
    }

    pub fn anticipation(&self) -> usize {
        self.anticipation
    }

    pub fn window(&self) -> usize {
        self.memory + self.anticipation + 1
    }

    fn index_of(&self, window: &[Letter]) -> usize {
        let base = self.source.len();
        window.iter().fold(0, |acc, l| acc * base + l.index())
    }

    /// Image of one window; panics if the window has the wrong length.
    pub fn apply(&self, window: &[Letter]) -> Letter {
        assert_eq!(window.len(), self.window(), "window length");
        self.table[self.index_of(window)]
    }

    /// The word code: images of consecutive windows, ε for short words.
    pub fn word_code(&self, u: &Word) -> Word {
        let n = self.window();
        if u.len() < n {
            return Word::empty();
        }
        u.letters().windows(n).map(|w| self.apply(w)).collect()
    }

    /// Central form with wing `max(m, n)`:
    /// `Ψ(a_{-k} … a_k) = Φ(a_{-m} … a_n)`.
    pub fn centralize(&self) -> CentralBlockMap {
        let k = self.memory.max(self.anticipation);
        let (m, n) = (self.memory, self.anticipation);
        let inner = BlockMap::from_fn(self.source.clone(), self.target.clone(), k, k, |w| {
            self.apply(&w[k - m..=k + n])
        });
        CentralBlockMap { inner }
    }

    pub fn from_json(text: &str) -> Result<Self, CodeError> {
        let raw: BlockMapJson = serde_json::from_str(text).map_err(|e| CodeError::Json(e.to_string()))?;
        if let Some(s) = &raw.schema {
            if s != BLOCK_MAP_SCHEMA {
                return Err(CodeError::Json(format!("unsupported schema `{s}`")));
            }
        }
        if raw.window != raw.memory + raw.anticipation + 1 {
            return Err(CodeError::WindowMismatch {
                window: raw.window,
                memory: raw.memory,
                anticipation: raw.anticipation,
            });
        }
        let source = Alphabet::new(raw.source)?;
        let target = Alphabet::new(raw.target)?;
        let mut entries = HashMap::new();
        for (k, v) in &raw.table {
            let w = source.parse_word(k)?;
            if w.len() != raw.window {
                return Err(CodeError::Json(format!("table key `{k}` has the wrong length")));
            }
            entries.insert(w, target.letter(v)?);
        }
        BlockMap::from_table(source, target, raw.memory, raw.anticipation, &entries)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let table: BTreeMap<String, String> = self
            .source
            .words_of_length(self.window())
            .iter()
            .map(|w| (self.source.format(w), self.target.symbol(self.apply(w.letters())).to_string()))
            .collect();
        serde_json::json!({
            "schema": BLOCK_MAP_SCHEMA,
            "window": self.window(),
            "source": self.source.symbols(),
            "target": self.target.symbols(),
            "memory": self.memory,
            "anticipation": self.anticipation,
            "table": table,
        })
    }
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct BlockMapJson {
    #[serde(default)]
    schema: Option<String>,
    window: usize,
    source: Vec<String>,
    target: Vec<String>,
    memory: usize,
    anticipation: usize,
    table: BTreeMap<String, String>,
}

/// A block map with odd window and memory = anticipation = wing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CentralBlockMap {
    inner: BlockMap,
}

impl CentralBlockMap {
    pub fn new(inner: BlockMap) -> Result<Self, CodeError> {
        if inner.memory != inner.anticipation {
            return Err(CodeError::NotCentral(inner.memory, inner.anticipation));
        }
        Ok(CentralBlockMap { inner })
    }

    pub fn from_fn(source: Alphabet, target: Alphabet, wing: usize, f: impl Fn(&[Letter]) -> Letter) -> Self {
        CentralBlockMap { inner: BlockMap::from_fn(source, target, wing, wing, f) }
    }

    pub fn wing(&self) -> usize {
        self.inner.memory
    }

    pub fn window(&self) -> usize {
        self.inner.window()
    }

    pub fn block_map(&self) -> &BlockMap {
        &self.inner
    }

    pub fn into_block_map(self) -> BlockMap {
        self.inner
    }

    pub fn source(&self) -> &Alphabet {
        &self.inner.source
    }

    pub fn target(&self) -> &Alphabet {
        &self.inner.target
    }

    pub fn apply(&self, window: &[Letter]) -> Letter {
        self.inner.apply(window)
    }

    pub fn word_code(&self, u: &Word) -> Word {
        self.inner.word_code(u)
    }

    /// The same sliding block code read through a wider window.
    pub fn widen(&self, wing: usize) -> CentralBlockMap {
        assert!(wing >= self.wing());
        let d = wing - self.wing();
        let w = self.window();
        CentralBlockMap::from_fn(self.source().clone(), self.target().clone(), wing, |win| {
            self.apply(&win[d..d + w])
        })
    }

    /// Central block map of `psi ∘ self`: `Λ(u) = Ψ(Φ̄(u))` on windows of
    /// length `2k + 2l + 1`.
    pub fn then(&self, psi: &CentralBlockMap) -> Result<CentralBlockMap, CodeError> {
        compose(self, psi)
    }

    /// Image of a shift under the sliding block code.
    ///
    /// Vertices of the result are the paths of length `2k` of the trimmed
    /// graph (its vertices when `k = 0`), edges the paths of length
    /// `2k + 1`, each relabeled by the image of its label. Bi-infinite paths
    /// correspond one-to-one, so the result presents exactly the image.
    pub fn apply_to_shift(&self, shift: &Shift) -> Result<Shift, CodeError> {
        if shift.alphabet() != self.source() {
            return Err(CodeError::AlphabetMismatch("shift alphabet differs from block map source".into()));
        }
        let k = self.wing();
        let g = shift.graph();
        if k == 0 {
            let edges = g
                .edges()
                .iter()
                .map(|e| Edge { src: e.src, label: self.apply(&[e.label]), dst: e.dst })
                .collect();
            let graph = LabeledGraph::new(g.vertex_count(), self.target().len(), edges);
            return Ok(Shift::from_graph(self.target().clone(), graph, shift.vertex_names().to_vec())?);
        }
        let short = edge_paths(g, 2 * k);
        let index: HashMap<&[usize], usize> = short.iter().enumerate().map(|(i, p)| (p.as_slice(), i)).collect();
        let mut edges = Vec::new();
        for path in edge_paths(g, 2 * k + 1) {
            let label: Vec<Letter> = path.iter().map(|&e| g.edges()[e].label).collect();
            edges.push(Edge {
                src: index[&path[..2 * k]],
                label: self.apply(&label),
                dst: index[&path[1..]],
            });
        }
        let names = short
            .iter()
            .map(|p| p.iter().map(|e| format!("e{e}")).collect::<Vec<_>>().join("."))
            .collect();
        let graph = LabeledGraph::new(short.len(), self.target().len(), edges);
        Ok(Shift::from_graph(self.target().clone(), graph, names)?)
    }

    /// Image of a periodic point: `y_i = Φ(x_[i-k, i+k])`, read cyclically.
    pub fn apply_to_periodic(&self, pt: &PeriodicPoint) -> PeriodicPoint {
        let x = pt.block();
        let n = x.len();
        let k = self.wing();
        let y: Word = (0..n)
            .map(|i| {
                let window: Vec<Letter> = (0..self.window()).map(|j| x.letters()[(i + n * (k + 1) + j - k) % n]).collect();
                self.apply(&window)
            })
            .collect();
        PeriodicPoint::from_word(&y).expect("nonempty")
    }
}

/// All paths with exactly `len` edges, as edge-index sequences, in
/// lexicographic order of edge indices.
fn edge_paths(g: &LabeledGraph, len: usize) -> Vec<Vec<usize>> {
    let mut out_by_vertex: Vec<Vec<usize>> = vec![Vec::new(); g.vertex_count()];
    for (i, e) in g.edges().iter().enumerate() {
        out_by_vertex[e.src].push(i);
    }
    let mut paths: Vec<Vec<usize>> = (0..g.edges().len()).map(|e| vec![e]).collect();
    for _ in 1..len {
        paths = paths
            .into_iter()
            .flat_map(|p| {
                let end = g.edges()[*p.last().expect("nonempty")].dst;
                out_by_vertex[end].iter().map(move |&e| {
                    let mut q = p.clone();
                    q.push(e);
                    q
                })
            })
            .collect();
    }
    paths
}

/// `Λ(u) = Ψ(Φ̄(u))` with wing `k + l`.
pub fn compose(phi: &CentralBlockMap, psi: &CentralBlockMap) -> Result<CentralBlockMap, CodeError> {
    if phi.target() != psi.source() {
        return Err(CodeError::AlphabetMismatch("target of the first map is not the source of the second".into()));
    }
    let wing = phi.wing() + psi.wing();
    Ok(CentralBlockMap::from_fn(phi.source().clone(), psi.target().clone(), wing, |w| {
        let mid = phi.word_code(&Word::from_letters(w.iter().copied()));
        psi.apply(mid.letters())
    }))
}

/// `A^N` viewed as an alphabet; symbol `i` is the `i`-th word of length `N`
/// in lexicographic order, named by its concatenated letters.
pub fn block_alphabet(a: &Alphabet, n: usize) -> Alphabet {
    let single = a.symbols().iter().all(|s| s.chars().count() == 1);
    let names = a.words_of_length(n).into_iter().map(|w| {
        let toks = a.tokens(&w);
        if single {
            toks.concat()
        } else {
            toks.join(",")
        }
    });
    Alphabet::new(names.collect::<Vec<_>>()).expect("distinct names")
}

/// `Υ_N`: the identity `A^N → A_N`, memory 0, anticipation `N - 1`.
pub fn higher_block_map(a: &Alphabet, n: usize) -> BlockMap {
    assert!(n >= 1);
    let target = block_alphabet(a, n);
    let base = a.len();
    BlockMap::from_fn(a.clone(), target, 0, n - 1, |w| {
        Letter(w.iter().fold(0, |acc, l| acc * base + l.index()) as u32)
    })
}

/// `λ`: the window-1 map `A_N → A` keeping the first letter of each block.
pub fn lambda_first_letter(a: &Alphabet, n: usize) -> BlockMap {
    let blocks = a.words_of_length(n);
    BlockMap::letter_map(block_alphabet(a, n), a.clone(), |l| blocks[l.index()].letters()[0])
}
