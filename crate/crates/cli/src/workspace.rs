//! The workspace file: one TOML document holding a field, a bound quiver and
//! named modules, morphisms and short exact sequences.
//!
//! ```toml
//! field = "Q"            # or a prime, e.g. 5
//!
//! [algebra]
//! vertices = ["1"]
//! arrows = [{ name = "x", from = "1", to = "1" }]
//!
//! [[algebra.relations]]
//! terms = [{ coeff = "1", path = ["x", "x"] }]
//!
//! [modules.S]
//! dims = [1]
//! arrows = { x = [["0"]] }
//! ```
//!
//! Matrices are row-major, `dims[target] × dims[source]`; an arrow or block
//! left out is zero. Scalars are strings (`"3/2"`) or integers.

use std::fmt;
use std::ops::Range;
use std::sync::Arc;

use art_core::algebra::{Algebra, Arrow, Presentation, Quiver, Relation, DEFAULT_MAX_PATH_LEN};
use art_core::module::ShortExactSequence;
use art_core::{Error, Field, Matrix, Module, Morphism, Scalar};
use indexmap::IndexMap;
use serde::{Deserialize, Serialize};
use toml::Spanned;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
enum Literal {
    Int(i64),
    Text(String),
}

impl Literal {
    fn text(&self) -> String {
        match self {
            Literal::Int(n) => n.to_string(),
            Literal::Text(s) => s.clone(),
        }
    }
}

fn one() -> Literal {
    Literal::Int(1)
}

type RawMatrix = Vec<Vec<Literal>>;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawWorkspace {
    field: Spanned<Literal>,
    algebra: Spanned<RawAlgebra>,
    #[serde(default)]
    modules: IndexMap<String, Spanned<RawModule>>,
    #[serde(default)]
    morphisms: IndexMap<String, Spanned<RawMorphism>>,
    #[serde(default)]
    sequences: IndexMap<String, Spanned<RawSequence>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAlgebra {
    vertices: Vec<String>,
    #[serde(default)]
    arrows: Vec<RawArrow>,
    #[serde(default)]
    relations: Vec<Spanned<RawRelation>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawArrow {
    name: String,
    from: String,
    to: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRelation {
    terms: Vec<RawTerm>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTerm {
    #[serde(default = "one")]
    coeff: Literal,
    path: Vec<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawModule {
    dims: Vec<usize>,
    #[serde(default)]
    arrows: IndexMap<String, RawMatrix>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMorphism {
    from: String,
    to: String,
    #[serde(default)]
    blocks: IndexMap<String, RawMatrix>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSequence {
    iota: String,
    pi: String,
}

/// One problem found while loading, with where it was found.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub line: Option<usize>,
    pub path: String,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(l) => write!(f, "line {l}: {}: {}", self.path, self.message),
            None => write!(f, "{}: {}", self.path, self.message),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoadError {
    pub diagnostics: Vec<Diagnostic>,
}

impl fmt::Display for LoadError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, d) in self.diagnostics.iter().enumerate() {
            if k > 0 {
                writeln!(f)?;
            }
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

impl std::error::Error for LoadError {}

#[derive(Clone, Debug)]
pub struct Workspace {
    pub field: Field,
    pub algebra: Arc<Algebra>,
    pub modules: Vec<(String, Module)>,
    pub morphisms: Vec<(String, Morphism)>,
    pub sequences: Vec<(String, ShortExactSequence)>,
}

impl PartialEq for Workspace {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && self.algebra == other.algebra
            && self.modules == other.modules
            && self.morphisms == other.morphisms
            && self.sequences == other.sequences
    }
}

/// Names close to `name`, best first.
pub fn suggestions<'a>(name: &str, known: impl IntoIterator<Item = &'a str>) -> Vec<String> {
    let mut scored: Vec<(usize, &str)> = known.into_iter().map(|k| (strsim::levenshtein(name, k), k)).collect();
    scored.sort();
    scored.into_iter().map(|(_, k)| k.to_string()).collect()
}

fn unknown(kind: &str, name: &str, known: Vec<String>) -> String {
    if known.is_empty() {
        format!("unknown {kind} {name:?} (none defined)")
    } else {
        format!("unknown {kind} {name:?}; known: {}", known.join(", "))
    }
}

struct Loader<'t> {
    text: &'t str,
    diags: Vec<Diagnostic>,
}

impl Loader<'_> {
    fn line(&self, span: Range<usize>) -> usize {
        self.text[..span.start.min(self.text.len())].matches('\n').count() + 1
    }

    fn report(&mut self, span: Option<Range<usize>>, path: impl Into<String>, message: impl Into<String>) {
        let line = span.map(|s| self.line(s));
        self.diags.push(Diagnostic { line, path: path.into(), message: message.into() });
    }

    fn scalar(&mut self, field: Field, lit: &Literal, span: &Range<usize>, path: &str) -> Option<Scalar> {
        match field.parse(&lit.text()) {
            Ok(s) => Some(s),
            Err(e) => {
                self.report(Some(span.clone()), path, e.to_string());
                None
            }
        }
    }

    fn matrix(
        &mut self,
        field: Field,
        raw: Option<&RawMatrix>,
        shape: (usize, usize),
        span: &Range<usize>,
        path: &str,
        what: &str,
    ) -> Option<Matrix> {
        let (r, c) = shape;
        let Some(raw) = raw else {
            return Some(Matrix::zeros(field, r, c));
        };
        if raw.is_empty() && (r == 0 || c == 0) {
            return Some(Matrix::zeros(field, r, c));
        }
        let bad_shape = raw.len() != r || raw.iter().any(|row| row.len() != c);
        if bad_shape {
            let got = match raw.iter().map(|row| row.len()).min() {
                Some(w) if raw.iter().all(|row| row.len() == w) => format!("{}×{w}", raw.len()),
                _ => format!("{} ragged rows", raw.len()),
            };
            self.report(Some(span.clone()), path, format!("{what} needs a {r}×{c} matrix, got {got}"));
            return None;
        }
        let mut rows = Vec::with_capacity(r);
        for row in raw {
            let mut out = Vec::with_capacity(c);
            for lit in row {
                out.push(self.scalar(field, lit, span, path)?);
            }
            rows.push(out);
        }
        Matrix::from_rows(field, rows, c).ok()
    }
}

fn parse_field(lit: &Literal) -> Result<Field, String> {
    let text = lit.text();
    let t = text.trim();
    if matches!(t, "Q" | "QQ" | "rationals") {
        return Ok(Field::Rationals);
    }
    let digits = t
        .strip_prefix("GF(")
        .and_then(|s| s.strip_suffix(')'))
        .or_else(|| t.strip_prefix("F_"))
        .or_else(|| t.strip_prefix('F'))
        .unwrap_or(t);
    let p: u64 = digits.parse().map_err(|_| format!("expected \"Q\" or a prime, got {t:?}"))?;
    Field::prime(p).map_err(|e| e.to_string())
}

fn vertex(quiver: &Quiver, name: &str) -> Result<usize, String> {
    quiver.vertex_index(name).ok_or_else(|| unknown("vertex", name, suggestions(name, quiver.vertices.iter().map(|s| s.as_str()))))
}

/// Parse and validate a workspace with the default path-length bound.
pub fn parse_workspace(text: &str) -> Result<Workspace, LoadError> {
    parse_workspace_with_bound(text, DEFAULT_MAX_PATH_LEN)
}

/// Parse and validate a workspace; `max_path_len` bounds the search for
/// the nilpotency index of the arrow ideal.
pub fn parse_workspace_with_bound(text: &str, max_path_len: usize) -> Result<Workspace, LoadError> {
    let raw: RawWorkspace = toml::from_str(text).map_err(|e| {
        let line = e.span().map(|s| text[..s.start.min(text.len())].matches('\n').count() + 1);
        LoadError {
            diagnostics: vec![Diagnostic { line, path: "syntax".into(), message: e.message().to_string() }],
        }
    })?;
    let mut ld = Loader { text, diags: Vec::new() };
    let fail = |ld: Loader| Err(LoadError { diagnostics: ld.diags });

    let field = match parse_field(raw.field.get_ref()) {
        Ok(f) => f,
        Err(e) => {
            ld.report(Some(raw.field.span()), "field", e);
            return fail(ld);
        }
    };

    // algebra
    let alg_span = raw.algebra.span();
    let ra = raw.algebra.get_ref();
    let mut arrows = Vec::new();
    let stub = Quiver { vertices: ra.vertices.clone(), arrows: Vec::new() };
    for a in &ra.arrows {
        match (vertex(&stub, &a.from), vertex(&stub, &a.to)) {
            (Ok(s), Ok(t)) => arrows.push(Arrow { id: a.name.clone(), source: s, target: t }),
            (Err(e), _) | (_, Err(e)) => ld.report(Some(alg_span.clone()), format!("algebra.arrows.{}", a.name), e),
        }
    }
    if !ld.diags.is_empty() {
        return fail(ld);
    }
    let quiver = match Quiver::new(ra.vertices.clone(), arrows) {
        Ok(q) => q,
        Err(e) => {
            ld.report(Some(alg_span), "algebra", e.to_string());
            return fail(ld);
        }
    };
    let mut relations = Vec::new();
    for (k, rel) in ra.relations.iter().enumerate() {
        let path = format!("algebra.relations[{k}]");
        let span = rel.span();
        let mut terms = Vec::new();
        for term in &rel.get_ref().terms {
            for id in &term.path {
                if quiver.arrow_index(id).is_none() {
                    let known = suggestions(id, quiver.arrows.iter().map(|a| a.id.as_str()));
                    ld.report(Some(span.clone()), &path, unknown("arrow", id, known));
                }
            }
            if let Some(c) = ld.scalar(field, &term.coeff, &span, &path) {
                terms.push((c, term.path.clone()));
            }
        }
        relations.push(Relation::new(terms));
    }
    if !ld.diags.is_empty() {
        return fail(ld);
    }
    let algebra = match Algebra::bound_quiver_with_bound(quiver.clone(), relations, field, max_path_len) {
        Ok(a) => Arc::new(a),
        Err(e) => {
            ld.report(Some(alg_span), "algebra", e.to_string());
            return fail(ld);
        }
    };

    // modules
    let nv = quiver.vertices.len();
    let mut modules = Vec::new();
    for (name, rm) in &raw.modules {
        let span = rm.span();
        let rm = rm.get_ref();
        let path = format!("modules.{name}");
        if rm.dims.len() != nv {
            ld.report(Some(span), &path, format!("expected {nv} vertex dimensions, got {}", rm.dims.len()));
            continue;
        }
        for key in rm.arrows.keys() {
            if quiver.arrow_index(key).is_none() {
                let known = suggestions(key, quiver.arrows.iter().map(|a| a.id.as_str()));
                ld.report(Some(span.clone()), format!("{path}.arrows"), unknown("arrow", key, known));
            }
        }
        let mut mats = Vec::new();
        for a in &quiver.arrows {
            let shape = (rm.dims[a.target], rm.dims[a.source]);
            let apath = format!("{path}.arrows.{}", a.id);
            mats.push(ld.matrix(field, rm.arrows.get(&a.id), shape, &span, &apath, &format!("arrow {}", a.id)));
        }
        let Some(mats) = mats.into_iter().collect::<Option<Vec<_>>>() else { continue };
        match Module::from_arrows(algebra.clone(), rm.dims.clone(), mats) {
            Ok(m) => modules.push((name.clone(), m)),
            Err(Error::InvalidModule(errs)) => {
                for e in errs {
                    ld.report(Some(span.clone()), &path, e);
                }
            }
            Err(e) => ld.report(Some(span), &path, e.to_string()),
        }
    }

    // morphisms
    let module_names: Vec<&str> = raw.modules.keys().map(|s| s.as_str()).collect();
    let find_module = |name: &str| modules.iter().find(|(n, _)| n == name).map(|(_, m)| m.clone());
    let mut morphisms = Vec::new();
    for (name, rf) in &raw.morphisms {
        let span = rf.span();
        let rf = rf.get_ref();
        let path = format!("morphisms.{name}");
        let mut ends = Vec::new();
        for end in [&rf.from, &rf.to] {
            if !raw.modules.contains_key(end) {
                ld.report(Some(span.clone()), &path, unknown("module", end, suggestions(end, module_names.iter().copied())));
            }
            ends.push(find_module(end));
        }
        let (Some(src), Some(dst)) = (ends[0].clone(), ends[1].clone()) else { continue };
        for key in rf.blocks.keys() {
            if let Err(e) = vertex(&quiver, key) {
                ld.report(Some(span.clone()), format!("{path}.blocks"), e);
            }
        }
        let mut blocks = Vec::new();
        for (v, vname) in quiver.vertices.iter().enumerate() {
            let shape = (dst.dims()[v], src.dims()[v]);
            let bpath = format!("{path}.blocks.{vname}");
            blocks.push(ld.matrix(field, rf.blocks.get(vname), shape, &span, &bpath, &format!("block at vertex {vname}")));
        }
        let Some(blocks) = blocks.into_iter().collect::<Option<Vec<_>>>() else { continue };
        match Morphism::new(src, dst, blocks) {
            Ok(f) => morphisms.push((name.clone(), f)),
            Err(e) => ld.report(Some(span), &path, e.to_string()),
        }
    }

    // sequences
    let morphism_names: Vec<&str> = raw.morphisms.keys().map(|s| s.as_str()).collect();
    let mut sequences = Vec::new();
    for (name, rs) in &raw.sequences {
        let span = rs.span();
        let rs = rs.get_ref();
        let path = format!("sequences.{name}");
        let mut maps = Vec::new();
        for m in [&rs.iota, &rs.pi] {
            if !raw.morphisms.contains_key(m) {
                ld.report(Some(span.clone()), &path, unknown("morphism", m, suggestions(m, morphism_names.iter().copied())));
            }
            maps.push(morphisms.iter().find(|(n, _)| n == m).map(|(_, f)| f.clone()));
        }
        let (Some(iota), Some(pi)) = (maps[0].clone(), maps[1].clone()) else { continue };
        match ShortExactSequence::new(iota, pi) {
            Ok(s) => sequences.push((name.clone(), s)),
            Err(e) => ld.report(Some(span), &path, e.to_string()),
        }
    }

    if !ld.diags.is_empty() {
        return fail(ld);
    }
    Ok(Workspace { field, algebra, modules, morphisms, sequences })
}

fn literal(field: Field, s: &Scalar) -> Literal {
    match (field, s.residue()) {
        (Field::Prime(_), Some(r)) => Literal::Int(r as i64),
        _ => Literal::Text(s.to_string()),
    }
}

fn raw_matrix(field: Field, m: &Matrix) -> RawMatrix {
    if m.rows() == 0 || m.cols() == 0 {
        return Vec::new();
    }
    m.row_vecs().iter().map(|row| row.iter().map(|s| literal(field, s)).collect()).collect()
}

impl Workspace {
    /// A workspace over a quiver algebra with the given modules and nothing
    /// else.
    pub fn with_modules(algebra: Arc<Algebra>, modules: Vec<(String, Module)>) -> Workspace {
        Workspace { field: algebra.field(), algebra, modules, morphisms: Vec::new(), sequences: Vec::new() }
    }

    fn quiver(&self) -> (&Quiver, &[Relation]) {
        match self.algebra.presentation() {
            Presentation::Quiver { quiver, relations, .. } => (quiver, relations),
            Presentation::Structure => panic!("workspaces hold quiver algebras"),
        }
    }

    /// Serialize back to the TOML workspace format.
    pub fn to_toml(&self) -> String {
        let f = self.field;
        let (quiver, relations) = self.quiver();
        let name = |v: usize| quiver.vertices[v].clone();
        let span = || 0..0;
        let algebra = RawAlgebra {
            vertices: quiver.vertices.clone(),
            arrows: quiver
                .arrows
                .iter()
                .map(|a| RawArrow { name: a.id.clone(), from: name(a.source), to: name(a.target) })
                .collect(),
            relations: relations
                .iter()
                .map(|r| {
                    let terms = r.terms.iter().map(|(c, p)| RawTerm { coeff: literal(f, c), path: p.clone() }).collect();
                    Spanned::new(span(), RawRelation { terms })
                })
                .collect(),
        };
        let modules = self
            .modules
            .iter()
            .map(|(n, m)| {
                let arrows = quiver
                    .arrows
                    .iter()
                    .zip(m.generator_actions())
                    .map(|(a, mat)| (a.id.clone(), raw_matrix(f, &mat)))
                    .collect();
                (n.clone(), Spanned::new(span(), RawModule { dims: m.dims().to_vec(), arrows }))
            })
            .collect();
        let module_name = |m: &Module| {
            self.modules.iter().find(|(_, x)| x == m).map(|(n, _)| n.clone()).expect("morphism ends are named modules")
        };
        let morphisms = self
            .morphisms
            .iter()
            .map(|(n, g)| {
                let blocks = (0..quiver.vertices.len()).map(|v| (name(v), raw_matrix(f, g.block(v)))).collect();
                let raw = RawMorphism { from: module_name(g.source()), to: module_name(g.target()), blocks };
                (n.clone(), Spanned::new(span(), raw))
            })
            .collect();
        let morphism_name = |g: &Morphism| {
            self.morphisms.iter().find(|(_, x)| x == g).map(|(n, _)| n.clone()).expect("sequence maps are named morphisms")
        };
        let sequences = self
            .sequences
            .iter()
            .map(|(n, s)| {
                let raw = RawSequence { iota: morphism_name(s.iota()), pi: morphism_name(s.pi()) };
                (n.clone(), Spanned::new(span(), raw))
            })
            .collect();
        let field = match f {
            Field::Rationals => Literal::Text("Q".into()),
            Field::Prime(p) => Literal::Int(p as i64),
        };
        let raw = RawWorkspace {
            field: Spanned::new(span(), field),
            algebra: Spanned::new(span(), algebra),
            modules,
            morphisms,
            sequences,
        };
        toml::to_string(&raw).expect("workspace serializes")
    }

    pub fn module(&self, name: &str) -> Result<&Module, String> {
        lookup("module", &self.modules, name)
    }

    pub fn morphism(&self, name: &str) -> Result<&Morphism, String> {
        lookup("morphism", &self.morphisms, name)
    }

    pub fn sequence(&self, name: &str) -> Result<&ShortExactSequence, String> {
        lookup("sequence", &self.sequences, name)
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.quiver().0.vertices
    }
}

fn lookup<'a, T>(kind: &str, items: &'a [(String, T)], name: &str) -> Result<&'a T, String> {
    items
        .iter()
        .find(|(n, _)| n == name)
        .map(|(_, t)| t)
        .ok_or_else(|| unknown(kind, name, suggestions(name, items.iter().map(|(n, _)| n.as_str()))))
}
