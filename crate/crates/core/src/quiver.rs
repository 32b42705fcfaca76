//! Labelled quivers modelling domains and codomains of operators.
//!
//! A word is read right to left as a composition of maps: in `a b` the map
//! `b` applies first, so the path starts at the source of `b` and ends at the
//! target of `a`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::freealg::{render, Polynomial, Sym, SymbolTable, Word};

/// Index of a vertex inside one [`LabelledQuiver`].
pub type Vertex = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Edge {
    pub label: Sym,
    pub source: Vertex,
    pub target: Vertex,
}

/// Directed multigraph whose edges carry pairwise distinct indeterminates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelledQuiver {
    vertices: Vec<String>,
    edges: Vec<Edge>,
    by_label: HashMap<Sym, usize>,
}

/// Source and target of a path. The empty word has [`PathSignature::Any`]:
/// an empty path exists at every vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PathSignature {
    Any,
    Path { source: Vertex, target: Vertex },
}

impl PathSignature {
    /// Combines two signatures that must agree; `Any` matches only loops.
    fn unify(self, other: PathSignature) -> Option<PathSignature> {
        match (self, other) {
            (PathSignature::Any, PathSignature::Any) => Some(PathSignature::Any),
            (PathSignature::Any, p @ PathSignature::Path { source, target })
            | (p @ PathSignature::Path { source, target }, PathSignature::Any) => {
                (source == target).then_some(p)
            }
            (a, b) => (a == b).then_some(a),
        }
    }
}

/// Why a polynomial is not compatible with a quiver.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Incompatibility {
    /// The monomial labels no path.
    Unpathable(Word),
    /// Two monomials label paths with different endpoints.
    Conflict(Word, Word),
}

impl Incompatibility {
    pub fn monomials(&self) -> Vec<&Word> {
        match self {
            Incompatibility::Unpathable(w) => vec![w],
            Incompatibility::Conflict(u, v) => vec![u, v],
        }
    }

    pub fn describe(&self, table: &SymbolTable) -> String {
        let show = |w: &Word| render(&Polynomial::word(w.clone()), table);
        match self {
            Incompatibility::Unpathable(w) => format!("monomial {} is not the label of a path", show(w)),
            Incompatibility::Conflict(u, v) => {
                format!("monomials {} and {} label paths with different endpoints", show(u), show(v))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Compatibility {
    Yes(PathSignature),
    No(Incompatibility),
}

impl Compatibility {
    pub fn is_yes(&self) -> bool {
        matches!(self, Compatibility::Yes(_))
    }
}

impl LabelledQuiver {
    /// Builds a quiver. Fails if two edges share a label or an edge refers to
    /// a missing vertex.
    pub fn new(vertices: Vec<String>, edges: Vec<Edge>) -> Result<Self> {
        let mut by_label = HashMap::new();
        for (k, e) in edges.iter().enumerate() {
            if e.source >= vertices.len() || e.target >= vertices.len() {
                return Err(Error::Quiver(format!("edge {k} refers to a vertex that does not exist")));
            }
            if by_label.insert(e.label, k).is_some() {
                return Err(Error::Quiver(format!("label {} is used by more than one edge", e.label)));
            }
        }
        Ok(LabelledQuiver { vertices, edges, by_label })
    }

    /// Builds a quiver from `(label, source, target)` triples given by name,
    /// creating vertices in order of first mention.
    pub fn from_named(table: &SymbolTable, edges: &[(&str, &str, &str)]) -> Result<Self> {
        let mut vertices: Vec<String> = Vec::new();
        let mut vertex = |name: &str| match vertices.iter().position(|v| v == name) {
            Some(k) => k,
            None => {
                vertices.push(name.to_string());
                vertices.len() - 1
            }
        };
        let mut out = Vec::new();
        for &(label, s, t) in edges {
            let sym = table
                .lookup(label)
                .ok_or_else(|| Error::Quiver(format!("edge label '{label}' is not declared")))?;
            out.push(Edge { label: sym, source: vertex(s), target: vertex(t) });
        }
        LabelledQuiver::new(vertices, out)
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_name(&self, v: Vertex) -> &str {
        &self.vertices[v]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, label: Sym) -> Option<&Edge> {
        self.by_label.get(&label).map(|&k| &self.edges[k])
    }

    /// Per-label `(source, target)`.
    pub fn signature(&self) -> BTreeMap<Sym, (Vertex, Vertex)> {
        self.edges.iter().map(|e| (e.label, (e.source, e.target))).collect()
    }

    /// The same quiver with the edge labelled `label` removed.
    pub fn without_edge(&self, label: Sym) -> LabelledQuiver {
        let edges = self.edges.iter().filter(|e| e.label != label).copied().collect();
        LabelledQuiver::new(self.vertices.clone(), edges).expect("subset of a valid edge set")
    }

    /// Writes the quiver as `label: source -> target` lines.
    pub fn export(&self, table: &SymbolTable) -> String {
        let mut out = format!("vertices {}\n", self.vertices.join(" "));
        for e in &self.edges {
            out.push_str(&format!(
                "{}: {} -> {}\n",
                table.name(e.label),
                self.vertices[e.source],
                self.vertices[e.target]
            ));
        }
        out
    }
}

impl fmt::Display for PathSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PathSignature::Any => write!(f, "(v, v)"),
            PathSignature::Path { source, target } => write!(f, "({source}, {target})"),
        }
    }
}

/// Signature of the path labelled `w`, if there is one.
pub fn path_signature(w: &Word, q: &LabelledQuiver) -> Option<PathSignature> {
    let mut letters = w.letters().iter().rev();
    let Some(&first) = letters.next() else {
        return Some(PathSignature::Any);
    };
    let e = q.edge(first)?;
    let source = e.source;
    let mut at = e.target;
    for &x in letters {
        let e = q.edge(x)?;
        if e.source != at {
            return None;
        }
        at = e.target;
    }
    Some(PathSignature::Path { source, target: at })
}

/// Decides whether all monomials of `p` label paths with common endpoints.
/// Monomials are scanned from the largest down; the witness is the first
/// offending monomial, or the first pair that disagrees.
pub fn compatible(p: &Polynomial, q: &LabelledQuiver) -> Compatibility {
    let mut sig: Option<(PathSignature, &Word)> = None;
    for (w, _) in p.terms().iter().rev() {
        let Some(s) = path_signature(w, q) else {
            return Compatibility::No(Incompatibility::Unpathable(w.clone()));
        };
        sig = match sig {
            None => Some((s, w)),
            Some((acc, first)) => match acc.unify(s) {
                Some(u) => Some((u, first)),
                None => return Compatibility::No(Incompatibility::Conflict(first.clone(), w.clone())),
            },
        };
    }
    Compatibility::Yes(sig.map_or(PathSignature::Any, |(s, _)| s))
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut y = x;
        while self.parent[y] != r {
            let next = self.parent[y];
            self.parent[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// A fixed endpoint for an indeterminate, e.g. from a declared signature.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pin {
    pub label: Sym,
    pub source: String,
    pub target: String,
}

/// The most general quiver with one edge per indeterminate of `table` that
/// makes every polynomial compatible and every adjoint edge reversed.
///
/// Without pins the constraints are equalities and always satisfiable (in the
/// worst case by a single vertex). Pins name vertices; `None` is returned when
/// the constraints force two differently named pinned vertices together.
pub fn infer_signatures(polys: &[Polynomial], table: &SymbolTable, pins: &[Pin]) -> Option<LabelledQuiver> {
    let n = table.len();
    let src = |s: Sym| 2 * s.index();
    let tgt = |s: Sym| 2 * s.index() + 1;
    let mut uf = UnionFind::new(2 * n);
    for ind in table.iter() {
        if let Some(adj) = ind.adjoint {
            uf.union(src(adj), tgt(ind.id));
            uf.union(tgt(adj), src(ind.id));
        }
    }
    for p in polys {
        let mut ends: Option<(usize, usize)> = None;
        let mut has_one = false;
        for (w, _) in p.terms() {
            let l = w.letters();
            if l.is_empty() {
                has_one = true;
                continue;
            }
            for pair in l.windows(2) {
                uf.union(src(pair[0]), tgt(pair[1]));
            }
            let here = (src(l[l.len() - 1]), tgt(l[0]));
            match ends {
                None => ends = Some(here),
                Some((s, t)) => {
                    uf.union(s, here.0);
                    uf.union(t, here.1);
                }
            }
        }
        if let (true, Some((s, t))) = (has_one, ends) {
            uf.union(s, t);
        }
    }

    let mut by_name: HashMap<&str, usize> = HashMap::new();
    for pin in pins {
        for (slot, name) in [(src(pin.label), &pin.source), (tgt(pin.label), &pin.target)] {
            match by_name.get(name.as_str()) {
                Some(&other) => uf.union(slot, other),
                None => {
                    by_name.insert(name, slot);
                }
            }
        }
    }
    let mut pinned: HashMap<usize, String> = HashMap::new();
    for (name, slot) in by_name {
        let root = uf.find(slot);
        if pinned.insert(root, name.to_string()).is_some() {
            return None;
        }
    }

    let mut vertex_of: HashMap<usize, Vertex> = HashMap::new();
    let mut vertices: Vec<String> = Vec::new();
    let mut counter = 0;
    let mut vertex = |root: usize, vertices: &mut Vec<String>| -> Vertex {
        if let Some(&v) = vertex_of.get(&root) {
            return v;
        }
        let name = match pinned.get(&root) {
            Some(name) => name.clone(),
            None => loop {
                counter += 1;
                let candidate = format!("o{counter}");
                if !pinned.values().any(|p| *p == candidate) {
                    break candidate;
                }
            },
        };
        vertices.push(name);
        vertex_of.insert(root, vertices.len() - 1);
        vertices.len() - 1
    };
    let mut edges = Vec::with_capacity(n);
    for ind in table.iter() {
        let (rs, rt) = (uf.find(src(ind.id)), uf.find(tgt(ind.id)));
        let source = vertex(rs, &mut vertices);
        let target = vertex(rt, &mut vertices);
        edges.push(Edge { label: ind.id, source, target });
    }
    Some(LabelledQuiver::new(vertices, edges).expect("one edge per indeterminate"))
}

/// A polynomial that failed the compatibility check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompatFailure {
    pub name: String,
    pub reason: Incompatibility,
}

/// Result of [`check_problem`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct QuiverReport {
    /// Endpoints of every compatible assumption and claim, by name.
    pub signatures: Vec<(String, PathSignature)>,
    pub failures: Vec<CompatFailure>,
    /// Labels whose adjoint edge is missing or not reversed.
    pub adjoint_violations: Vec<Sym>,
}

impl QuiverReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.adjoint_violations.is_empty()
    }

    pub fn describe(&self, table: &SymbolTable) -> String {
        let mut out = String::new();
        for f in &self.failures {
            out.push_str(&format!("{}: {}\n", f.name, f.reason.describe(table)));
        }
        for &s in &self.adjoint_violations {
            out.push_str(&format!("edge {} is not reversed by its adjoint\n", table.name(s)));
        }
        if out.is_empty() {
            out.push_str("compatible\n");
        }
        out
    }
}

/// Checks named assumptions and claims against `q`, and that every edge
/// whose label has an adjoint partner is matched by the reversed edge.
pub fn check_problem(
    assumptions: &[(String, Polynomial)],
    claims: &[(String, Polynomial)],
    q: &LabelledQuiver,
    table: &SymbolTable,
) -> QuiverReport {
    let mut report = QuiverReport::default();
    for (name, p) in assumptions.iter().chain(claims) {
        match compatible(p, q) {
            Compatibility::Yes(sig) => report.signatures.push((name.clone(), sig)),
            Compatibility::No(reason) => report.failures.push(CompatFailure { name: name.clone(), reason }),
        }
    }
    for e in q.edges() {
        if e.label.index() >= table.len() {
            continue;
        }
        if let Some(adj) = table.adjoint_of(e.label) {
            let ok = q.edge(adj).is_some_and(|d| d.source == e.target && d.target == e.source);
            if !ok {
                report.adjoint_violations.push(e.label);
            }
        }
    }
    report
}
