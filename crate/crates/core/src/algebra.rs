//! Finite-dimensional algebras given either by a bound quiver or by
//! structure constants.
//!
//! Path convention: a path is written as its arrows in traversal order, and
//! the product `p * q` means "first `q`, then `p`" (defined when
//! `source(p) == target(q)`). With this convention a representation of the
//! quiver is exactly a left module.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::matrix::{quotient_map, quotient_section, rref_rows, unit, Matrix, Subspace};

/// Default bound for the admissibility search.
pub const DEFAULT_MAX_PATH_LEN: usize = 32;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub id: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new(vertices: Vec<String>, arrows: Vec<Arrow>) -> Result<Self> {
        let q = Quiver { vertices, arrows };
        q.validate()?;
        Ok(q)
    }

    /// Vertices named `1..=n`, arrows given as `(id, source, target)` with
    /// zero-based vertex indices.
    pub fn with_vertices(n: usize, arrows: &[(&str, usize, usize)]) -> Result<Self> {
        Quiver::new(
            (1..=n).map(|i| i.to_string()).collect(),
            arrows.iter().map(|&(id, s, t)| Arrow { id: id.to_string(), source: s, target: t }).collect(),
        )
    }

    fn validate(&self) -> Result<()> {
        for (i, a) in self.arrows.iter().enumerate() {
            if a.source >= self.vertices.len() || a.target >= self.vertices.len() {
                return Err(Error::Quiver(format!("arrow {} has an endpoint out of range", a.id)));
            }
            if self.arrows[..i].iter().any(|b| b.id == a.id) {
                return Err(Error::Quiver(format!("duplicate arrow id {}", a.id)));
            }
        }
        for (i, v) in self.vertices.iter().enumerate() {
            if self.vertices[..i].contains(v) {
                return Err(Error::Quiver(format!("duplicate vertex name {v}")));
            }
        }
        Ok(())
    }

    pub fn arrow_index(&self, id: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.id == id)
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn opposite(&self) -> Quiver {
        Quiver {
            vertices: self.vertices.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| Arrow { id: a.id.clone(), source: a.target, target: a.source })
                .collect(),
        }
    }
}

/// `(source, target, terms)` with arrow indices.
type ResolvedRelation = (usize, usize, Vec<(Scalar, Vec<usize>)>);

/// A linear combination of parallel paths (arrow ids in traversal order).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub terms: Vec<(Scalar, Vec<String>)>,
}

impl Relation {
    pub fn new(terms: Vec<(Scalar, Vec<String>)>) -> Self {
        Relation { terms }
    }

    /// A single path relation (`path = 0`).
    pub fn zero_path(field: Field, path: &[&str]) -> Self {
        Relation { terms: vec![(field.one(), path.iter().map(|s| s.to_string()).collect())] }
    }

    fn reversed(&self) -> Relation {
        Relation {
            terms: self
                .terms
                .iter()
                .map(|(c, p)| (c.clone(), p.iter().rev().cloned().collect()))
                .collect(),
        }
    }

    /// Resolve to arrow indices and check composability, parallelism and
    /// length; returns `(source, target, terms)`.
    fn resolve(&self, q: &Quiver) -> Result<ResolvedRelation> {
        if self.terms.is_empty() {
            return Err(Error::Quiver("empty relation".into()));
        }
        let mut ends = None;
        let mut out = Vec::new();
        for (c, p) in &self.terms {
            if p.len() < 2 {
                return Err(Error::Quiver(format!("relation path {} has length < 2", p.join("·"))));
            }
            let idx: Vec<usize> = p
                .iter()
                .map(|id| q.arrow_index(id).ok_or_else(|| Error::Quiver(format!("unknown arrow {id}"))))
                .collect::<Result<_>>()?;
            for w in idx.windows(2) {
                if q.arrows[w[0]].target != q.arrows[w[1]].source {
                    return Err(Error::Quiver(format!("relation path {} is not composable", p.join("·"))));
                }
            }
            let se = (q.arrows[idx[0]].source, q.arrows[*idx.last().unwrap()].target);
            match ends {
                None => ends = Some(se),
                Some(e) if e != se => {
                    return Err(Error::Quiver("relation mixes paths with different endpoints".into()))
                }
                _ => {}
            }
            out.push((c.clone(), idx));
        }
        let (s, t) = ends.unwrap();
        Ok((s, t, out))
    }
}

/// One basis vector: `e_target · b · e_source = b`. For quiver algebras
/// `word` lists the arrows of the path in traversal order (empty for the
/// vertex idempotent); for structure algebras it is `[index]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisElement {
    pub source: usize,
    pub target: usize,
    pub word: Vec<usize>,
    pub label: String,
}

/// A generator of the algebra used to present modules: an arrow, or (for
/// structure algebras) a basis element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub source: usize,
    pub target: usize,
    pub element: usize,
    pub label: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Presentation {
    Quiver { quiver: Quiver, relations: Vec<Relation>, nilpotency: usize },
    Structure,
}

type Product = Vec<(usize, Scalar)>;

/// A finite-dimensional associative unital algebra with a fixed basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    field: Field,
    presentation: Presentation,
    opposite: bool,
    vertex_count: usize,
    basis: Vec<BasisElement>,
    generators: Vec<Generator>,
    table: Vec<Vec<Product>>,
    unit: Vec<Scalar>,
    radical: Result<Subspace>,
    idempotents: Result<Vec<(usize, Vec<Scalar>)>>,
}

impl Algebra {
    /// Path algebra of `quiver` modulo the ideal generated by `relations`.
    pub fn bound_quiver(quiver: Quiver, relations: Vec<Relation>, field: Field) -> Result<Self> {
        Self::bound_quiver_with_bound(quiver, relations, field, DEFAULT_MAX_PATH_LEN)
    }

    pub fn bound_quiver_with_bound(
        quiver: Quiver,
        relations: Vec<Relation>,
        field: Field,
        max_path_len: usize,
    ) -> Result<Self> {
        quiver.validate()?;
        let resolved: Vec<_> = relations.iter().map(|r| r.resolve(&quiver)).collect::<Result<_>>()?;
        for (_, _, terms) in &resolved {
            for (c, _) in terms {
                if c.field() != field {
                    return Err(Error::Quiver("relation coefficient from a different field".into()));
                }
            }
        }
        let (nilpotency, reducer) = reduce_paths(&quiver, &resolved, field, max_path_len)?;
        let n = quiver.vertices.len();

        // standard monomials ordered by length, then source vertex, then word
        let mut keys: Vec<&PathKey> = reducer.standard.iter().collect();
        keys.sort_by(|a, b| a.1.len().cmp(&b.1.len()).then(a.0.cmp(&b.0)).then(a.1.cmp(&b.1)));
        let basis: Vec<BasisElement> = keys
            .iter()
            .map(|(s, w)| {
                let target = w.last().map_or(*s, |&a| quiver.arrows[a].target);
                let label = if w.is_empty() {
                    format!("e{}", quiver.vertices[*s])
                } else {
                    w.iter().map(|&a| quiver.arrows[a].id.as_str()).collect::<Vec<_>>().join("·")
                };
                BasisElement { source: *s, target, word: w.clone(), label }
            })
            .collect();
        let index: BTreeMap<PathKey, usize> =
            keys.iter().enumerate().map(|(i, k)| ((*k).clone(), i)).collect();
        let coords = |key: &PathKey| -> Product {
            if key.1.len() >= nilpotency {
                return Vec::new();
            }
            match index.get(key) {
                Some(&i) => vec![(i, field.one())],
                None => reducer.reductions[key].iter().map(|(k, c)| (index[k], c.clone())).collect(),
            }
        };

        let dim = basis.len();
        let mut table = vec![vec![Vec::new(); dim]; dim];
        for (i, bi) in basis.iter().enumerate() {
            for (j, bj) in basis.iter().enumerate() {
                if bi.source != bj.target {
                    continue;
                }
                let mut w = bj.word.clone();
                w.extend_from_slice(&bi.word);
                table[i][j] = coords(&(bj.source, w));
            }
        }
        let generators = quiver
            .arrows
            .iter()
            .enumerate()
            .map(|(a, arr)| Generator {
                source: arr.source,
                target: arr.target,
                element: index[&(arr.source, vec![a])],
                label: arr.id.clone(),
            })
            .collect();
        let mut unit_v = vec![field.zero(); dim];
        let mut idempotents = Vec::new();
        for v in 0..n {
            let i = index[&(v, Vec::new())];
            unit_v[i] = field.one();
            idempotents.push((v, unit(field, dim, i)));
        }
        let radical = Subspace::span(
            field,
            dim,
            (0..dim).filter(|&i| !basis[i].word.is_empty()).map(|i| unit(field, dim, i)).collect(),
        );
        Ok(Algebra {
            field,
            presentation: Presentation::Quiver { quiver, relations, nilpotency },
            opposite: false,
            vertex_count: n,
            basis,
            generators,
            table,
            unit: unit_v,
            radical: Ok(radical),
            idempotents: Ok(idempotents),
        })
    }

    /// An algebra from structure constants: `table[i][j]` is the coordinate
    /// vector of `b_i * b_j`. Associativity and the unit are verified.
    pub fn from_structure_constants(field: Field, table: Vec<Vec<Vec<Scalar>>>, unit_v: Vec<Scalar>) -> Result<Self> {
        let dim = unit_v.len();
        if table.len() != dim || table.iter().any(|r| r.len() != dim || r.iter().any(|v| v.len() != dim)) {
            return Err(Error::Dimension("structure constant table has the wrong shape".into()));
        }
        let sparse: Vec<Vec<Product>> = table
            .iter()
            .map(|r| {
                r.iter()
                    .map(|v| v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (k, c.clone())).collect())
                    .collect()
            })
            .collect();
        let basis = (0..dim)
            .map(|i| BasisElement { source: 0, target: 0, word: vec![i], label: format!("b{i}") })
            .collect();
        let generators = Vec::new();
        let mut alg = Algebra {
            field,
            presentation: Presentation::Structure,
            opposite: false,
            vertex_count: 1,
            basis,
            generators,
            table: sparse,
            unit: unit_v.clone(),
            radical: Ok(Subspace::zero(field, dim)),
            idempotents: Ok(vec![(0, unit_v)]),
        };
        alg.check_associative_unital()?;
        alg.generators = alg
            .generating_subset()
            .into_iter()
            .map(|i| Generator { source: 0, target: 0, element: i, label: format!("b{i}") })
            .collect();
        alg.radical = alg.trace_radical();
        if dim > 0 {
            alg.idempotents = crate::module::decompose::primitive_idempotents(&alg);
        }
        Ok(alg)
    }

    fn check_associative_unital(&self) -> Result<()> {
        let d = self.dim();
        for i in 0..d {
            let e = unit(self.field, d, i);
            if self.mul(&self.unit, &e) != e || self.mul(&e, &self.unit) != e {
                return Err(Error::Dimension(format!("unit does not act as identity on b{i}")));
            }
        }
        for i in 0..d {
            for j in 0..d {
                let ij = self.product_vec(i, j);
                for k in 0..d {
                    let ek = unit(self.field, d, k);
                    let jk = self.product_vec(j, k);
                    let left = self.mul(&ij, &ek);
                    let right = self.mul(&unit(self.field, d, i), &jk);
                    if left != right {
                        return Err(Error::Dimension(format!("structure constants not associative on (b{i}, b{j}, b{k})")));
                    }
                }
            }
        }
        Ok(())
    }

    /// Greedy set of basis indices generating the algebra (with the unit).
    fn generating_subset(&self) -> Vec<usize> {
        let d = self.dim();
        let mut chosen = Vec::new();
        let mut span = Subspace::span(self.field, d, vec![self.unit.clone()]);
        for i in 0..d {
            if span.dim() == d {
                break;
            }
            let e = unit(self.field, d, i);
            if span.contains(&e) {
                continue;
            }
            chosen.push(i);
            span = span.sum(&Subspace::span(self.field, d, vec![e]));
            loop {
                let mut vecs = span.basis().to_vec();
                for &g in &chosen {
                    let eg = unit(self.field, d, g);
                    for x in span.basis() {
                        vecs.push(self.mul(&eg, x));
                    }
                }
                let next = Subspace::span(self.field, d, vecs);
                if next.dim() == span.dim() {
                    break;
                }
                span = next;
            }
        }
        chosen
    }

    /// The idempotent of vertex `v`: the trivial path for quiver algebras,
    /// the unit for structure algebras.
    pub fn vertex_idempotent(&self, v: usize) -> Vec<Scalar> {
        match self.presentation {
            Presentation::Quiver { .. } => {
                let i = self.basis.iter().position(|b| b.word.is_empty() && b.source == v).expect("vertex");
                unit(self.field, self.dim(), i)
            }
            Presentation::Structure => self.unit.clone(),
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }
    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }
    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }
    pub fn unit(&self) -> &[Scalar] {
        &self.unit
    }
    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }
    pub fn is_opposite(&self) -> bool {
        self.opposite
    }
    pub fn is_quiver(&self) -> bool {
        matches!(self.presentation, Presentation::Quiver { .. })
    }

    pub fn quiver(&self) -> Option<&Quiver> {
        match &self.presentation {
            Presentation::Quiver { quiver, .. } => Some(quiver),
            Presentation::Structure => None,
        }
    }

    pub fn relations(&self) -> &[Relation] {
        match &self.presentation {
            Presentation::Quiver { relations, .. } => relations,
            Presentation::Structure => &[],
        }
    }

    /// Least `N` with all paths of length `N` in the ideal (quiver case).
    pub fn nilpotency_degree(&self) -> Option<usize> {
        match &self.presentation {
            Presentation::Quiver { nilpotency, .. } => Some(*nilpotency),
            Presentation::Structure => None,
        }
    }

    /// Sparse coordinates of `b_i * b_j`.
    pub fn product(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        &self.table[i][j]
    }

    pub fn product_vec(&self, i: usize, j: usize) -> Vec<Scalar> {
        let mut v = vec![self.field.zero(); self.dim()];
        for (k, c) in &self.table[i][j] {
            v[*k] = c.clone();
        }
        v
    }

    /// Product of two elements given in coordinates.
    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![self.field.zero(); self.dim()];
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a * b;
                for (k, c) in &self.table[i][j] {
                    out[*k] = &out[*k] + &(&ab * c);
                }
            }
        }
        out
    }

    /// Matrix of `y ↦ x·y` on the algebra.
    pub fn left_mult(&self, x: &[Scalar]) -> Matrix {
        let d = self.dim();
        let mut m = Matrix::zeros(self.field, d, d);
        for j in 0..d {
            let col = self.mul(x, &unit(self.field, d, j));
            for (i, c) in col.into_iter().enumerate() {
                m.set(i, j, c);
            }
        }
        m
    }

    /// Matrix of `y ↦ y·x` on the algebra.
    pub fn right_mult(&self, x: &[Scalar]) -> Matrix {
        let d = self.dim();
        let mut m = Matrix::zeros(self.field, d, d);
        for j in 0..d {
            let col = self.mul(&unit(self.field, d, j), x);
            for (i, c) in col.into_iter().enumerate() {
                m.set(i, j, c);
            }
        }
        m
    }

    /// The Jacobson radical: the arrow ideal for quiver algebras, the
    /// radical of the trace form otherwise.
    pub fn radical(&self) -> Result<&Subspace> {
        self.radical.as_ref().map_err(Clone::clone)
    }

    /// Primitive orthogonal idempotents summing to one, each tagged with the
    /// vertex it lives at.
    pub fn idempotents(&self) -> Result<&[(usize, Vec<Scalar>)]> {
        self.idempotents.as_deref().map_err(Clone::clone)
    }

    fn trace_radical(&self) -> Result<Subspace> {
        let d = self.dim();
        let p = self.field.characteristic();
        if p != 0 && p as usize <= d {
            return Err(Error::UnsupportedCharacteristic { p, dim: d });
        }
        let mults: Vec<Matrix> = (0..d).map(|i| self.left_mult(&unit(self.field, d, i))).collect();
        let gram = Matrix::from_fn(self.field, d, d, |i, j| mults[i].mul(&mults[j]).trace());
        Ok(gram.kernel())
    }

    /// The opposite algebra, on the same basis (`b_i *op b_j = b_j * b_i`).
    pub fn opposite(&self) -> Algebra {
        let d = self.dim();
        let table = (0..d).map(|i| (0..d).map(|j| self.table[j][i].clone()).collect()).collect();
        let (presentation, basis, generators) = match &self.presentation {
            Presentation::Quiver { quiver, relations, nilpotency } => (
                Presentation::Quiver {
                    quiver: quiver.opposite(),
                    relations: relations.iter().map(Relation::reversed).collect(),
                    nilpotency: *nilpotency,
                },
                self.basis
                    .iter()
                    .map(|b| BasisElement {
                        source: b.target,
                        target: b.source,
                        word: b.word.iter().rev().copied().collect(),
                        label: b.label.split('·').rev().collect::<Vec<_>>().join("·"),
                    })
                    .collect(),
                self.generators
                    .iter()
                    .map(|g| Generator { source: g.target, target: g.source, element: g.element, label: g.label.clone() })
                    .collect(),
            ),
            Presentation::Structure => (Presentation::Structure, self.basis.clone(), self.generators.clone()),
        };
        Algebra {
            field: self.field,
            presentation,
            opposite: !self.opposite,
            vertex_count: self.vertex_count,
            basis,
            generators,
            table,
            unit: self.unit.clone(),
            radical: self.radical.clone(),
            idempotents: self.idempotents.clone(),
        }
    }

    /// Structure constants as dense vectors (for serialization and checks).
    pub fn dense_table(&self) -> Vec<Vec<Vec<Scalar>>> {
        let d = self.dim();
        (0..d).map(|i| (0..d).map(|j| self.product_vec(i, j)).collect()).collect()
    }

    /// Whether `sub` is a two-sided ideal.
    pub fn is_two_sided_ideal(&self, sub: &Subspace) -> bool {
        let d = self.dim();
        sub.basis().iter().all(|x| {
            (0..d).all(|i| {
                let e = unit(self.field, d, i);
                sub.contains(&self.mul(&e, x)) && sub.contains(&self.mul(x, &e))
            })
        })
    }

    /// `A / ideal` with its projection and a linear section.
    pub fn quotient(&self, ideal: &Subspace) -> Result<AlgebraQuotient> {
        let d = self.dim();
        if !self.is_two_sided_ideal(ideal) {
            return Err(Error::Dimension("subspace is not a two-sided ideal".into()));
        }
        let projection = quotient_map(d, ideal);
        let section = quotient_section(d, ideal);
        let qd = projection.rows();
        let cols: Vec<Vec<Scalar>> = (0..qd).map(|i| section.col(i)).collect();
        let table = (0..qd)
            .map(|i| (0..qd).map(|j| projection.mul_vec(&self.mul(&cols[i], &cols[j]))).collect())
            .collect();
        let unit_v = projection.mul_vec(&self.unit);
        let quotient = if qd == 0 {
            None
        } else {
            Some(Algebra::from_structure_constants(self.field, table, unit_v)?)
        };
        Ok(AlgebraQuotient { ideal: ideal.clone(), quotient, projection, section })
    }
}

/// `π: A → A/I`. The quotient is `None` when `I = A`.
#[derive(Clone, Debug)]
pub struct AlgebraQuotient {
    pub ideal: Subspace,
    pub quotient: Option<Algebra>,
    pub projection: Matrix,
    pub section: Matrix,
}

impl AlgebraQuotient {
    pub fn dim(&self) -> usize {
        self.projection.rows()
    }
}

type PathKey = (usize, Vec<usize>);

struct Reducer {
    standard: Vec<PathKey>,
    reductions: BTreeMap<PathKey, Vec<(PathKey, Scalar)>>,
}

fn path_target(q: &Quiver, key: &PathKey) -> usize {
    key.1.last().map_or(key.0, |&a| q.arrows[a].target)
}

/// Find the nilpotency degree `N` and normal forms modulo `I + R^N`.
fn reduce_paths(
    q: &Quiver,
    relations: &[ResolvedRelation],
    field: Field,
    max_len: usize,
) -> Result<(usize, Reducer)> {
    let n = q.vertices.len();
    // paths[l] = all paths of length l
    let mut paths: Vec<Vec<PathKey>> = vec![(0..n).map(|v| (v, Vec::new())).collect()];
    for limit in 2..=max_len + 1 {
        while paths.len() < limit {
            let last = paths.last().unwrap();
            let mut next = Vec::new();
            for key in last {
                let t = path_target(q, key);
                for (a, arr) in q.arrows.iter().enumerate() {
                    if arr.source == t {
                        let mut w = key.1.clone();
                        w.push(a);
                        next.push((key.0, w));
                    }
                }
            }
            paths.push(next);
        }
        // group paths of length < limit by endpoints, longest first
        let mut groups: BTreeMap<(usize, usize), Vec<PathKey>> = BTreeMap::new();
        for l in (0..limit).rev() {
            for key in &paths[l] {
                groups.entry((key.0, path_target(q, key))).or_default().push(key.clone());
            }
        }
        let mut ideal: BTreeMap<(usize, usize), Vec<Vec<Scalar>>> = BTreeMap::new();
        for (rs, rt, terms) in relations {
            let min_len = terms.iter().map(|(_, p)| p.len()).min().unwrap();
            for lu in 0..limit.saturating_sub(min_len) {
                for lw in 0..limit - min_len - lu {
                    for u in paths[lu].iter().filter(|u| u.0 == *rt) {
                        for w in paths[lw].iter().filter(|w| path_target(q, w) == *rs) {
                            let s = w.0;
                            let t = path_target(q, u);
                            let cols = &groups[&(s, t)];
                            let mut v = vec![field.zero(); cols.len()];
                            let mut any = false;
                            for (c, p) in terms {
                                let mut word = w.1.clone();
                                word.extend_from_slice(p);
                                word.extend_from_slice(&u.1);
                                if word.len() >= limit {
                                    continue;
                                }
                                let idx = cols.iter().position(|k| k.1 == word).unwrap();
                                v[idx] = &v[idx] + c;
                                any = true;
                            }
                            if any {
                                ideal.entry((s, t)).or_default().push(v);
                            }
                        }
                    }
                }
            }
        }
        // R^(limit-1) ⊆ I + R^limit ?
        type Echelon = (Vec<Vec<Scalar>>, Vec<usize>);
        let mut echelon: BTreeMap<(usize, usize), Echelon> = BTreeMap::new();
        let mut truncates = true;
        for (ends, cols) in &groups {
            let mut rows = ideal.remove(ends).unwrap_or_default();
            let width = cols.len();
            let piv = rref_rows(&mut rows, width, width);
            rows.truncate(piv.len());
            for (ci, key) in cols.iter().enumerate() {
                if key.1.len() == limit - 1 && !(piv.contains(&ci) && rows[piv.iter().position(|&p| p == ci).unwrap()]
                    .iter()
                    .enumerate()
                    .all(|(j, x)| j == ci || x.is_zero()))
                {
                    truncates = false;
                }
            }
            echelon.insert(*ends, (rows, piv));
        }
        if !truncates {
            continue;
        }
        let nilpotency = limit - 1;
        let mut standard = Vec::new();
        let mut reductions = BTreeMap::new();
        for (ends, cols) in &groups {
            let (rows, piv) = &echelon[ends];
            for (ci, key) in cols.iter().enumerate() {
                if key.1.len() >= nilpotency {
                    continue;
                }
                match piv.iter().position(|&p| p == ci) {
                    None => standard.push(key.clone()),
                    Some(r) => {
                        let red = rows[r]
                            .iter()
                            .enumerate()
                            .filter(|(j, x)| *j != ci && !x.is_zero() && cols[*j].1.len() < nilpotency)
                            .map(|(j, x)| (cols[j].clone(), -x))
                            .collect();
                        reductions.insert(key.clone(), red);
                    }
                }
            }
        }
        return Ok((nilpotency, Reducer { standard, reductions }));
    }
    Err(Error::NotAdmissible(max_len))
}
