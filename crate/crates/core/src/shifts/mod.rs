//! Subshift presentations.
//!
//! A [`ShiftPresentation`] is what users write down: forbidden words (SFT) or
//! a labeled graph (sofic). [`ShiftPresentation::trim`] turns either into a
//! [`Shift`], a labeled graph in which every vertex lies on a bi-infinite
//! path, so that the words labeling finite paths are exactly the blocks.
//! Every query on subshifts is defined on `Shift`.

mod graph;
mod periodic;

pub use graph::{Edge, LabeledGraph, VertexSet};
pub(crate) use graph::tarjan;
pub use periodic::{PeriodicCounts, PeriodicPoint, ZetaFunction};

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::words::{Alphabet, Letter, Word, WordError};

pub const SHIFT_SCHEMA: &str = "shiftcat/shift@1";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ShiftError {
    #[error("the presented subshift is empty")]
    EmptyShift,
    #[error(transparent)]
    Word(#[from] WordError),
    #[error("invalid presentation: {0}")]
    Invalid(String),
    #[error("invalid shift JSON: {0}")]
    Json(String),
    #[error("zeta coefficient of t^{n} is not a nonnegative integer: {value}")]
    NonIntegralCoefficient { n: usize, value: String },
    #[error("Möbius-inverted q({n}) = {inverted} disagrees with direct count {direct}")]
    MobiusMismatch { n: usize, inverted: i64, direct: u64 },
    #[error("irreducibility checks disagree: component test says irreducible, word criterion fails on ({0}, {1})")]
    IrreducibilityMismatch(String, String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PresentationKind {
    Sft { forbidden: Vec<Word> },
    Sofic { vertices: Vec<String>, edges: Vec<(usize, Letter, usize)> },
}

/// An SFT or sofic description of a subshift, as supplied.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShiftPresentation {
    pub alphabet: Alphabet,
    pub kind: PresentationKind,
}

impl ShiftPresentation {
    pub fn sft(alphabet: Alphabet, forbidden: Vec<Word>) -> Result<Self, ShiftError> {
        for w in &forbidden {
            if w.is_empty() {
                return Err(ShiftError::Invalid("forbidden words must be nonempty".into()));
            }
            if !alphabet.contains_word(w) {
                return Err(ShiftError::Invalid("forbidden word outside the alphabet".into()));
            }
        }
        Ok(ShiftPresentation { alphabet, kind: PresentationKind::Sft { forbidden } })
    }

    /// SFT from forbidden words written over single-character symbols.
    pub fn sft_from_strs(alphabet: &str, forbidden: &[&str]) -> Result<Self, ShiftError> {
        let a = Alphabet::from_chars(alphabet)?;
        let f = forbidden.iter().map(|s| a.parse_word(s)).collect::<Result<Vec<_>, _>>()?;
        Self::sft(a, f)
    }

    pub fn sofic(
        alphabet: Alphabet,
        vertices: Vec<String>,
        edges: Vec<(usize, Letter, usize)>,
    ) -> Result<Self, ShiftError> {
        for &(s, l, d) in &edges {
            if s >= vertices.len() || d >= vertices.len() || l.index() >= alphabet.len() {
                return Err(ShiftError::Invalid("edge endpoint or label out of range".into()));
            }
        }
        Ok(ShiftPresentation { alphabet, kind: PresentationKind::Sofic { vertices, edges } })
    }

    /// Sofic presentation from `(src, symbol, dst)` triples with vertex
    /// names; vertices are numbered in order of first appearance.
    pub fn sofic_from_triples(alphabet: &str, edges: &[(&str, &str, &str)]) -> Result<Self, ShiftError> {
        let a = Alphabet::from_chars(alphabet)?;
        let mut names: Vec<String> = Vec::new();
        let idx = |n: &str, names: &mut Vec<String>| match names.iter().position(|x| x == n) {
            Some(i) => i,
            None => {
                names.push(n.to_string());
                names.len() - 1
            }
        };
        let mut es = Vec::new();
        for (s, l, d) in edges {
            let si = idx(s, &mut names);
            let di = idx(d, &mut names);
            es.push((si, a.letter(l)?, di));
        }
        Self::sofic(a, names, es)
    }

    /// Converts to a labeled graph and keeps its essential part.
    ///
    /// SFTs go through the de Bruijn construction: vertices are the allowed
    /// words of length `m = max(1, longest forbidden - 1)`, edges the allowed
    /// `(m+1)`-words, labeled by their last letter.
    pub fn trim(&self) -> Result<Shift, ShiftError> {
        let (graph, names) = match &self.kind {
            PresentationKind::Sofic { vertices, edges } => {
                let es = edges.iter().map(|&(src, label, dst)| Edge { src, label, dst }).collect();
                (LabeledGraph::new(vertices.len(), self.alphabet.len(), es), vertices.clone())
            }
            PresentationKind::Sft { forbidden } => self.de_bruijn(forbidden),
        };
        let (g, kept) = graph.essential_part();
        if g.vertex_count() == 0 {
            return Err(ShiftError::EmptyShift);
        }
        let vertex_names = kept.iter().map(|&v| names[v].clone()).collect();
        Ok(Shift { alphabet: self.alphabet.clone(), graph: g, vertex_names })
    }

    fn de_bruijn(&self, forbidden: &[Word]) -> (LabeledGraph, Vec<String>) {
        let m = forbidden.iter().map(Word::len).max().unwrap_or(1).saturating_sub(1).max(1);
        let allowed = |w: &Word| !forbidden.iter().any(|f| w.contains_factor(f));
        let verts: Vec<Word> = self.alphabet.words_of_length(m).into_iter().filter(|w| allowed(w)).collect();
        let index: HashMap<&Word, usize> = verts.iter().enumerate().map(|(i, w)| (w, i)).collect();
        let mut edges = Vec::new();
        for (i, v) in verts.iter().enumerate() {
            for l in self.alphabet.letters() {
                let mut ext = v.clone();
                ext.push(l);
                if !allowed(&ext) {
                    continue;
                }
                let next = ext.suffix(m);
                if let Some(&j) = index.get(&next) {
                    edges.push(Edge { src: i, label: l, dst: j });
                }
            }
        }
        let names = verts.iter().map(|w| self.alphabet.format(w)).collect();
        (LabeledGraph::new(verts.len(), self.alphabet.len(), edges), names)
    }

    pub fn from_json(text: &str) -> Result<Self, ShiftError> {
        let raw: ShiftJson = serde_json::from_str(text).map_err(|e| ShiftError::Json(e.to_string()))?;
        raw.into_presentation()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let alphabet = self.alphabet.symbols().to_vec();
        match &self.kind {
            PresentationKind::Sft { forbidden } => serde_json::json!({
                "schema": SHIFT_SCHEMA,
                "alphabet": alphabet,
                "kind": "sft",
                "forbidden": forbidden.iter().map(|w| self.alphabet.tokens(w)).collect::<Vec<_>>(),
            }),
            PresentationKind::Sofic { vertices, edges } => serde_json::json!({
                "schema": SHIFT_SCHEMA,
                "alphabet": alphabet,
                "kind": "sofic",
                "vertices": vertices,
                "edges": edges
                    .iter()
                    .map(|&(s, l, d)| [vertices[s].clone(), self.alphabet.symbol(l).to_string(), vertices[d].clone()])
                    .collect::<Vec<_>>(),
            }),
        }
    }
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(untagged)]
enum WordJson {
    Text(String),
    Tokens(Vec<String>),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ShiftJson {
    #[serde(default)]
    schema: Option<String>,
    #[serde(default)]
    alphabet: Option<Vec<String>>,
    kind: String,
    #[serde(default)]
    forbidden: Vec<WordJson>,
    #[serde(default)]
    vertices: Option<Vec<String>>,
    #[serde(default)]
    edges: Vec<(String, String, String)>,
}

impl ShiftJson {
    fn into_presentation(self) -> Result<ShiftPresentation, ShiftError> {
        if let Some(s) = &self.schema {
            if s != SHIFT_SCHEMA {
                return Err(ShiftError::Json(format!("unsupported schema `{s}`")));
            }
        }
        match self.kind.as_str() {
            "sft" => {
                let alphabet = Alphabet::new(
                    self.alphabet.ok_or_else(|| ShiftError::Json("sft needs an alphabet".into()))?,
                )?;
                let forbidden = self
                    .forbidden
                    .iter()
                    .map(|w| match w {
                        WordJson::Text(s) => alphabet.parse_word(s),
                        WordJson::Tokens(t) => alphabet.word_from_tokens(t),
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                ShiftPresentation::sft(alphabet, forbidden)
            }
            "sofic" => {
                let alphabet = match self.alphabet {
                    Some(a) => Alphabet::new(a)?,
                    None => {
                        let mut seen: Vec<String> = Vec::new();
                        for (_, l, _) in &self.edges {
                            if !seen.contains(l) {
                                seen.push(l.clone());
                            }
                        }
                        Alphabet::new(seen)?
                    }
                };
                let mut vertices = self.vertices.unwrap_or_default();
                let mut edges = Vec::new();
                for (s, l, d) in &self.edges {
                    let mut pos = |name: &str| match vertices.iter().position(|v| v == name) {
                        Some(i) => i,
                        None => {
                            vertices.push(name.to_string());
                            vertices.len() - 1
                        }
                    };
                    let si = pos(s);
                    let di = pos(d);
                    edges.push((si, alphabet.letter(l)?, di));
                }
                ShiftPresentation::sofic(alphabet, vertices, edges)
            }
            other => Err(ShiftError::Json(format!("unknown kind `{other}`"))),
        }
    }
}

/// A trimmed (essential) labeled-graph presentation of a nonempty subshift.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Shift {
    alphabet: Alphabet,
    graph: LabeledGraph,
    vertex_names: Vec<String>,
}

impl Shift {
    /// Builds a shift from an already-built graph; trims it.
    pub fn from_graph(alphabet: Alphabet, graph: LabeledGraph, vertex_names: Vec<String>) -> Result<Self, ShiftError> {
        let (g, kept) = graph.essential_part();
        if g.vertex_count() == 0 {
            return Err(ShiftError::EmptyShift);
        }
        let vertex_names = kept.iter().map(|&v| vertex_names[v].clone()).collect();
        Ok(Shift { alphabet, graph: g, vertex_names })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn graph(&self) -> &LabeledGraph {
        &self.graph
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertex_names
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    /// The trimmed graph as a sofic presentation.
    pub fn to_presentation(&self) -> ShiftPresentation {
        ShiftPresentation {
            alphabet: self.alphabet.clone(),
            kind: PresentationKind::Sofic {
                vertices: self.vertex_names.clone(),
                edges: self.graph.edges().iter().map(|e| (e.src, e.label, e.dst)).collect(),
            },
        }
    }

    pub fn is_block(&self, w: &Word) -> bool {
        self.graph.labels_path(w)
    }

    /// Blocks of length exactly `n`, in lexicographic order.
    pub fn blocks_of_length(&self, n: usize) -> Vec<Word> {
        let mut out = Vec::new();
        let mut word = Word::empty();
        self.blocks_dfs(&self.graph.all_vertices(), &mut word, n, &mut out);
        out
    }

    fn blocks_dfs(&self, set: &[usize], word: &mut Word, n: usize, out: &mut Vec<Word>) {
        if word.len() == n {
            out.push(word.clone());
            return;
        }
        for l in self.alphabet.letters() {
            let next = self.graph.step(set, l);
            if next.is_empty() {
                continue;
            }
            word.push(l);
            self.blocks_dfs(&next, word, n, out);
            word.0.pop();
        }
    }

    /// All blocks of length `1..=n`, shortlex order.
    pub fn blocks(&self, n: usize) -> Vec<Word> {
        (1..=n).flat_map(|k| self.blocks_of_length(k)).collect()
    }

    /// True iff every factor of `w` of length at most `k` is a block.
    pub fn mirage_membership_k(&self, w: &Word, k: usize) -> bool {
        w.factors_up_to(k).iter().all(|f| self.is_block(f))
    }

    /// Irreducibility of the presented subshift.
    ///
    /// Decided by looking for a strongly connected component of the trimmed
    /// graph whose language already contains all blocks; a sofic shift is
    /// irreducible exactly when such a component exists. The word criterion
    /// (for blocks `u`, `v` some `w` has `uwv` a block) is evaluated exactly
    /// on all pairs of blocks of length at most 4 as a second check.
    pub fn is_irreducible(&self) -> Result<bool, ShiftError> {
        let by_component = self.covering_component().is_some();
        if by_component {
            if let Some((u, v)) = self.word_criterion_failure(4) {
                return Err(ShiftError::IrreducibilityMismatch(
                    self.alphabet.format(&u),
                    self.alphabet.format(&v),
                ));
            }
        }
        Ok(by_component)
    }

    /// A strongly connected component presenting the whole shift, if any.
    pub fn covering_component(&self) -> Option<Vec<usize>> {
        self.graph.sccs().into_iter().find(|comp| {
            let sub = self.graph.induced(comp);
            !sub.edges().is_empty() && self.graph.language_included_in(&sub)
        })
    }

    /// First pair of blocks `(u, v)` with `|u|, |v| <= max_len` for which no
    /// word `w` makes `uwv` a block.
    pub fn word_criterion_failure(&self, max_len: usize) -> Option<(Word, Word)> {
        let blocks = self.blocks(max_len);
        for u in &blocks {
            let start = self.graph.run(&self.graph.all_vertices(), u);
            let reach = self.reachable_sets(start);
            for v in &blocks {
                if !reach.iter().any(|s| !self.graph.run(s, v).is_empty()) {
                    return Some((u.clone(), v.clone()));
                }
            }
        }
        None
    }

    fn reachable_sets(&self, start: VertexSet) -> Vec<VertexSet> {
        let mut seen = BTreeSet::new();
        let mut queue = VecDeque::new();
        seen.insert(start.clone());
        queue.push_back(start);
        while let Some(s) = queue.pop_front() {
            for l in self.alphabet.letters() {
                let n = self.graph.step(&s, l);
                if !n.is_empty() && seen.insert(n.clone()) {
                    queue.push_back(n);
                }
            }
        }
        seen.into_iter().collect()
    }

    /// Graphviz rendering of the trimmed presentation.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph shift {\n  rankdir=LR;\n");
        for (i, name) in self.vertex_names.iter().enumerate() {
            let _ = writeln!(out, "  v{i} [label=\"{}\"];", escape(name));
        }
        for e in self.graph.edges() {
            let _ = writeln!(
                out,
                "  v{} -> v{} [label=\"{}\"];",
                e.src,
                e.dst,
                escape(self.alphabet.symbol(e.label))
            );
        }
        out.push_str("}\n");
        out
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}
