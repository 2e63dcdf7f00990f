//! Finite-dimensional modules and their morphisms.
//!
//! Every module is a left module over its algebra. A right module over `A`
//! is a left module over `A^op`; [`Module::side`] reports which of the two
//! an algebra handle represents.

pub mod decompose;
mod proj;
mod seq;
mod tensor;

pub use decompose::{endomorphism_algebra, find_isomorphism, fitting_decompose, Decomposition, Summand};
pub use proj::{ProjectiveCover, ProjectivePresentation};
pub use seq::ShortExactSequence;
pub use tensor::{hom_to_regular, StarModule, TensorSpace};

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::algebra::{Algebra, Presentation};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::matrix::{quotient_map, quotient_section, rref_rows, Matrix, Subspace};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

struct Inner {
    algebra: Arc<Algebra>,
    dims: Vec<usize>,
    offsets: Vec<usize>,
    /// One matrix per algebra basis element `b: s → t`, of shape
    /// `dims[t] × dims[s]`.
    action: Vec<Matrix>,
}

#[derive(Clone)]
pub struct Module(Arc<Inner>);

impl fmt::Debug for Module {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Module({:?}, dims {:?})", self.side(), self.dims())
    }
}

impl PartialEq for Module {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.same_algebra(other) && self.0.dims == other.0.dims && self.0.action == other.0.action)
    }
}

impl Eq for Module {}

fn fmt_value(m: &Matrix) -> String {
    if m.rows() == 1 && m.cols() == 1 {
        format!("{}", m.get(0, 0))
    } else {
        format!("{m}")
    }
}

fn offsets_of(dims: &[usize]) -> Vec<usize> {
    let mut off = Vec::with_capacity(dims.len() + 1);
    let mut acc = 0;
    for d in dims {
        off.push(acc);
        acc += d;
    }
    off.push(acc);
    off
}

impl Module {
    /// A representation of a quiver algebra, one matrix per arrow. The
    /// matrix of `a: s → t` has shape `dims[t] × dims[s]`.
    pub fn from_arrows(algebra: Arc<Algebra>, dims: Vec<usize>, arrows: Vec<Matrix>) -> Result<Module> {
        let field = algebra.field();
        let Presentation::Quiver { quiver, .. } = algebra.presentation() else {
            return Err(Error::InvalidModule(vec!["arrow matrices need a quiver presentation".into()]));
        };
        let mut errs = Vec::new();
        if dims.len() != algebra.vertex_count() {
            errs.push(format!("expected {} vertex dimensions, got {}", algebra.vertex_count(), dims.len()));
            return Err(Error::InvalidModule(errs));
        }
        if arrows.len() != quiver.arrows.len() {
            errs.push(format!("expected {} arrow matrices, got {}", quiver.arrows.len(), arrows.len()));
            return Err(Error::InvalidModule(errs));
        }
        for (a, m) in quiver.arrows.iter().zip(&arrows) {
            if m.shape() != (dims[a.target], dims[a.source]) {
                errs.push(format!(
                    "arrow {} needs a {}×{} matrix, got {}×{}",
                    a.id,
                    dims[a.target],
                    dims[a.source],
                    m.rows(),
                    m.cols()
                ));
            } else if m.field() != field {
                errs.push(format!("arrow {} has entries from a different field", a.id));
            }
        }
        if !errs.is_empty() {
            return Err(Error::InvalidModule(errs));
        }
        let action = algebra
            .basis()
            .iter()
            .map(|b| {
                let mut m = Matrix::identity(field, dims[b.source]);
                for &a in &b.word {
                    m = arrows[a].mul(&m);
                }
                m
            })
            .collect();
        let module = Module::unchecked(algebra, dims, action);
        module.validate()?;
        Ok(module)
    }

    /// A module given by the action of every algebra basis element.
    pub fn from_basis_action(algebra: Arc<Algebra>, dims: Vec<usize>, action: Vec<Matrix>) -> Result<Module> {
        if dims.len() != algebra.vertex_count() || action.len() != algebra.dim() {
            return Err(Error::InvalidModule(vec![format!(
                "expected {} dimensions and {} action matrices",
                algebra.vertex_count(),
                algebra.dim()
            )]));
        }
        let mut errs = Vec::new();
        for (b, m) in algebra.basis().iter().zip(&action) {
            if m.shape() != (dims[b.target], dims[b.source]) {
                errs.push(format!("{} needs a {}×{} matrix", b.label, dims[b.target], dims[b.source]));
            }
        }
        if !errs.is_empty() {
            return Err(Error::InvalidModule(errs));
        }
        let module = Module::unchecked(algebra, dims, action);
        module.validate()?;
        Ok(module)
    }

    fn unchecked(algebra: Arc<Algebra>, dims: Vec<usize>, action: Vec<Matrix>) -> Module {
        let offsets = offsets_of(&dims);
        Module(Arc::new(Inner { algebra, dims, offsets, action }))
    }

    pub(crate) fn raw(algebra: Arc<Algebra>, dims: Vec<usize>, action: Vec<Matrix>) -> Module {
        let m = Module::unchecked(algebra, dims, action);
        debug_assert!(m.validate().is_ok(), "derived module violates the algebra: {:?}", m.validate());
        m
    }

    pub fn zero(algebra: Arc<Algebra>) -> Module {
        let field = algebra.field();
        let dims = vec![0; algebra.vertex_count()];
        let action = (0..algebra.dim()).map(|_| Matrix::zeros(field, 0, 0)).collect();
        Module::raw(algebra, dims, action)
    }

    /// Re-check that the action respects the algebra: relations act as
    /// zero, the unit acts as the identity and the action is multiplicative.
    pub fn validate(&self) -> Result<()> {
        let alg = self.algebra();
        let field = alg.field();
        let mut errs = Vec::new();
        if let Presentation::Quiver { quiver, relations, .. } = alg.presentation() {
            let arrow_mats: Vec<&Matrix> = alg.generators().iter().map(|g| self.action(g.element)).collect();
            for rel in relations {
                let mut total: Option<Matrix> = None;
                let mut labels = Vec::new();
                for (c, path) in &rel.terms {
                    let idx: Vec<usize> = path.iter().filter_map(|id| quiver.arrow_index(id)).collect();
                    let s = quiver.arrows[idx[0]].source;
                    let mut m = Matrix::identity(field, self.dims()[s]);
                    for &a in &idx {
                        m = arrow_mats[a].mul(&m);
                    }
                    let m = m.scale(c);
                    total = Some(match total {
                        None => m,
                        Some(t) => t.add(&m),
                    });
                    let word = path.join("·");
                    labels.push(if c.is_one() { word } else { format!("{c}·{word}") });
                }
                if let Some(t) = total {
                    if !t.is_zero() {
                        errs.push(format!("relation {} acts as {} ≠ 0", labels.join(" + "), fmt_value(&t)));
                    }
                }
            }
            if !errs.is_empty() {
                return Err(Error::InvalidModule(errs));
            }
        } else {
            let u = alg.unit();
            let mut m = Matrix::zeros(field, self.dim(), self.dim());
            for (j, c) in u.iter().enumerate() {
                if !c.is_zero() {
                    m = m.add(&self.action(j).scale(c));
                }
            }
            if m != Matrix::identity(field, self.dim()) {
                errs.push("the unit does not act as the identity".into());
            }
        }
        let basis = alg.basis();
        for g in alg.generators() {
            let i = g.element;
            for (j, bj) in basis.iter().enumerate() {
                if basis[i].source != bj.target {
                    continue;
                }
                let lhs = self.action(i).mul(self.action(j));
                let mut rhs = Matrix::zeros(field, lhs.rows(), lhs.cols());
                for (k, c) in alg.product(i, j) {
                    rhs.add_scaled(c, self.action(*k));
                }
                if lhs != rhs {
                    errs.push(format!("action is not multiplicative on {} then {}", bj.label, basis[i].label));
                }
            }
        }
        if errs.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidModule(errs))
        }
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.0.algebra
    }
    pub fn field(&self) -> Field {
        self.0.algebra.field()
    }
    pub fn side(&self) -> Side {
        if self.0.algebra.is_opposite() {
            Side::Right
        } else {
            Side::Left
        }
    }
    pub fn dims(&self) -> &[usize] {
        &self.0.dims
    }
    pub fn dim(&self) -> usize {
        *self.0.offsets.last().unwrap()
    }
    pub fn offset(&self, v: usize) -> usize {
        self.0.offsets[v]
    }
    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    /// Action of the `i`-th algebra basis element.
    pub fn action(&self, i: usize) -> &Matrix {
        &self.0.action[i]
    }

    /// Action matrices of the algebra generators (the arrows, for quiver
    /// algebras).
    pub fn generator_actions(&self) -> Vec<Matrix> {
        self.algebra().generators().iter().map(|g| self.action(g.element).clone()).collect()
    }

    pub fn same_algebra(&self, other: &Module) -> bool {
        Arc::ptr_eq(self.algebra(), other.algebra()) || self.algebra() == other.algebra()
    }

    /// Action of basis element `i` on the whole module.
    pub fn global_action(&self, i: usize) -> Matrix {
        let b = &self.algebra().basis()[i];
        let mut m = Matrix::zeros(self.field(), self.dim(), self.dim());
        m.set_block(self.offset(b.target), self.offset(b.source), self.action(i));
        m
    }

    /// Action of an algebra element (in basis coordinates) on the whole module.
    pub fn element_action(&self, x: &[Scalar]) -> Matrix {
        let mut m = Matrix::zeros(self.field(), self.dim(), self.dim());
        for (i, c) in x.iter().enumerate() {
            if !c.is_zero() {
                let b = &self.algebra().basis()[i];
                let blk = self.action(i).scale(c);
                let (r0, c0) = (self.offset(b.target), self.offset(b.source));
                let cur = m.block(r0, blk.rows(), c0, blk.cols()).add(&blk);
                m.set_block(r0, c0, &cur);
            }
        }
        m
    }

    /// `x · v` for an algebra element `x` and a module vector `v`.
    pub fn act(&self, x: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![self.field().zero(); self.dim()];
        for (i, c) in x.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let b = &self.algebra().basis()[i];
            let src = &v[self.offset(b.source)..self.offset(b.source + 1)];
            let img = self.action(i).mul_vec(src);
            let o = self.offset(b.target);
            for (k, y) in img.into_iter().enumerate() {
                if !y.is_zero() {
                    out[o + k] = &out[o + k] + &(c * &y);
                }
            }
        }
        out
    }

    /// Split a module vector into its vertex components.
    pub fn components(&self, v: &[Scalar]) -> Vec<Vec<Scalar>> {
        (0..self.dims().len()).map(|w| v[self.offset(w)..self.offset(w + 1)].to_vec()).collect()
    }

    /// Per-vertex subspaces spanned by the submodule generated by `vectors`.
    pub fn generated(&self, vectors: &[Vec<Scalar>]) -> Vec<Subspace> {
        let alg = self.algebra();
        let mut spans: Vec<Vec<Vec<Scalar>>> = vec![Vec::new(); self.dims().len()];
        for v in vectors {
            for (i, b) in alg.basis().iter().enumerate() {
                let src = &v[self.offset(b.source)..self.offset(b.source + 1)];
                let img = self.action(i).mul_vec(src);
                if img.iter().any(|x| !x.is_zero()) {
                    spans[b.target].push(img);
                }
            }
        }
        spans
            .into_iter()
            .enumerate()
            .map(|(w, vs)| Subspace::span(self.field(), self.dims()[w], vs))
            .collect()
    }

    /// Submodule from invariant per-vertex subspaces, with its inclusion.
    pub fn submodule(&self, subs: &[Subspace]) -> Result<(Module, Morphism)> {
        let incs: Vec<Matrix> = subs.iter().map(Subspace::inclusion).collect();
        let lefts: Vec<Matrix> = incs.iter().map(|m| m.left_inverse().expect("independent basis")).collect();
        let mut action = Vec::with_capacity(self.algebra().dim());
        for (i, b) in self.algebra().basis().iter().enumerate() {
            let img = self.action(i).mul(&incs[b.source]);
            let x = lefts[b.target].mul(&img);
            if incs[b.target].mul(&x) != img {
                return Err(Error::InvalidModule(vec![format!("subspace is not invariant under {}", b.label)]));
            }
            action.push(x);
        }
        let dims = subs.iter().map(Subspace::dim).collect();
        let sub = Module::raw(self.algebra().clone(), dims, action);
        let inc = Morphism::raw(sub.clone(), self.clone(), incs);
        Ok((sub, inc))
    }

    /// Quotient by invariant per-vertex subspaces, with its projection.
    pub fn quotient(&self, subs: &[Subspace]) -> Result<(Module, Morphism)> {
        let qs: Vec<Matrix> = subs.iter().enumerate().map(|(w, s)| quotient_map(self.dims()[w], s)).collect();
        let ss: Vec<Matrix> = subs.iter().enumerate().map(|(w, s)| quotient_section(self.dims()[w], s)).collect();
        let mut action = Vec::with_capacity(self.algebra().dim());
        for (i, b) in self.algebra().basis().iter().enumerate() {
            let img = self.action(i).mul(&subs[b.source].inclusion());
            if !qs[b.target].mul(&img).is_zero() {
                return Err(Error::InvalidModule(vec![format!("subspace is not invariant under {}", b.label)]));
            }
            action.push(qs[b.target].mul(self.action(i)).mul(&ss[b.source]));
        }
        let dims = qs.iter().map(Matrix::rows).collect();
        let q = Module::raw(self.algebra().clone(), dims, action);
        let proj = Morphism::raw(self.clone(), q.clone(), qs);
        Ok((q, proj))
    }

    /// Direct sum with canonical inclusions and projections.
    pub fn direct_sum(parts: &[Module]) -> Result<DirectSum> {
        let first = parts.first().ok_or_else(|| Error::Dimension("empty direct sum".into()))?;
        if parts.iter().any(|p| !p.same_algebra(first)) {
            return Err(Error::AlgebraMismatch);
        }
        let alg = first.algebra().clone();
        let field = alg.field();
        let nv = alg.vertex_count();
        let dims: Vec<usize> = (0..nv).map(|v| parts.iter().map(|p| p.dims()[v]).sum()).collect();
        let action = (0..alg.dim())
            .map(|i| Matrix::block_diag(field, &parts.iter().map(|p| p.action(i).clone()).collect::<Vec<_>>()))
            .collect();
        let sum = Module::raw(alg, dims.clone(), action);
        let mut inclusions = Vec::new();
        let mut projections = Vec::new();
        let mut run = vec![0usize; nv];
        for p in parts {
            let mut ib = Vec::new();
            let mut pb = Vec::new();
            for v in 0..nv {
                let mut i = Matrix::zeros(field, dims[v], p.dims()[v]);
                i.set_block(run[v], 0, &Matrix::identity(field, p.dims()[v]));
                pb.push(i.transpose());
                ib.push(i);
                run[v] += p.dims()[v];
            }
            inclusions.push(Morphism::raw(p.clone(), sum.clone(), ib));
            projections.push(Morphism::raw(sum.clone(), p.clone(), pb));
        }
        Ok(DirectSum { module: sum, inclusions, projections })
    }

    pub fn sum_with(&self, other: &Module) -> Result<Module> {
        Ok(Module::direct_sum(&[self.clone(), other.clone()])?.module)
    }
}

#[derive(Clone, Debug)]
pub struct DirectSum {
    pub module: Module,
    pub inclusions: Vec<Morphism>,
    pub projections: Vec<Morphism>,
}

/// A module homomorphism, stored as one matrix per vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    source: Module,
    target: Module,
    blocks: Vec<Matrix>,
}

impl Morphism {
    /// Checked constructor: shapes and intertwining are verified.
    pub fn new(source: Module, target: Module, blocks: Vec<Matrix>) -> Result<Morphism> {
        if !source.same_algebra(&target) {
            return Err(Error::AlgebraMismatch);
        }
        let nv = source.dims().len();
        if blocks.len() != nv {
            return Err(Error::InvalidMorphism(format!("expected {nv} blocks, got {}", blocks.len())));
        }
        for (v, b) in blocks.iter().enumerate() {
            if b.shape() != (target.dims()[v], source.dims()[v]) {
                return Err(Error::InvalidMorphism(format!(
                    "block at vertex {v} must be {}×{}, got {}×{}",
                    target.dims()[v],
                    source.dims()[v],
                    b.rows(),
                    b.cols()
                )));
            }
        }
        let f = Morphism { source, target, blocks };
        f.check_intertwines()?;
        Ok(f)
    }

    pub(crate) fn raw(source: Module, target: Module, blocks: Vec<Matrix>) -> Morphism {
        let f = Morphism { source, target, blocks };
        debug_assert!(f.check_intertwines().is_ok(), "morphism does not intertwine");
        f
    }

    fn check_intertwines(&self) -> Result<()> {
        let alg = self.source.algebra();
        for g in alg.generators() {
            let lhs = self.blocks[g.target].mul(self.source.action(g.element));
            let rhs = self.target.action(g.element).mul(&self.blocks[g.source]);
            if lhs != rhs {
                return Err(Error::InvalidMorphism(format!("does not intertwine the action of {}", g.label)));
            }
        }
        Ok(())
    }

    /// Split a block-diagonal global matrix into vertex blocks.
    pub(crate) fn from_global(source: Module, target: Module, m: &Matrix) -> Morphism {
        let blocks = (0..source.dims().len())
            .map(|v| m.block(target.offset(v), target.dims()[v], source.offset(v), source.dims()[v]))
            .collect();
        Morphism::raw(source, target, blocks)
    }

    pub fn identity(m: &Module) -> Morphism {
        let blocks = m.dims().iter().map(|&d| Matrix::identity(m.field(), d)).collect();
        Morphism { source: m.clone(), target: m.clone(), blocks }
    }

    pub fn zero(source: &Module, target: &Module) -> Morphism {
        let blocks = (0..source.dims().len())
            .map(|v| Matrix::zeros(source.field(), target.dims()[v], source.dims()[v]))
            .collect();
        Morphism { source: source.clone(), target: target.clone(), blocks }
    }

    pub fn source(&self) -> &Module {
        &self.source
    }
    pub fn target(&self) -> &Module {
        &self.target
    }
    pub fn blocks(&self) -> &[Matrix] {
        &self.blocks
    }
    pub fn block(&self, v: usize) -> &Matrix {
        &self.blocks[v]
    }
    pub fn field(&self) -> Field {
        self.source.field()
    }

    /// `self ∘ g` (apply `g` first).
    pub fn compose(&self, g: &Morphism) -> Morphism {
        assert_eq!(g.target.dims(), self.source.dims(), "composition of non-composable morphisms");
        let blocks = self.blocks.iter().zip(&g.blocks).map(|(a, b)| a.mul(b)).collect();
        Morphism { source: g.source.clone(), target: self.target.clone(), blocks }
    }

    pub fn add(&self, o: &Morphism) -> Morphism {
        let blocks = self.blocks.iter().zip(&o.blocks).map(|(a, b)| a.add(b)).collect();
        Morphism { source: self.source.clone(), target: self.target.clone(), blocks }
    }

    pub fn sub(&self, o: &Morphism) -> Morphism {
        let blocks = self.blocks.iter().zip(&o.blocks).map(|(a, b)| a.sub(b)).collect();
        Morphism { source: self.source.clone(), target: self.target.clone(), blocks }
    }

    pub fn scale(&self, c: &Scalar) -> Morphism {
        let blocks = self.blocks.iter().map(|a| a.scale(c)).collect();
        Morphism { source: self.source.clone(), target: self.target.clone(), blocks }
    }

    /// Same blocks, reinterpreted between equal modules.
    pub fn with_ends(&self, source: &Module, target: &Module) -> Morphism {
        assert_eq!(source.dims(), self.source.dims());
        assert_eq!(target.dims(), self.target.dims());
        Morphism::raw(source.clone(), target.clone(), self.blocks.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(Matrix::is_zero)
    }

    pub fn global(&self) -> Matrix {
        let mut m = Matrix::zeros(self.field(), self.target.dim(), self.source.dim());
        for (v, b) in self.blocks.iter().enumerate() {
            m.set_block(self.target.offset(v), self.source.offset(v), b);
        }
        m
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut out = Vec::with_capacity(self.target.dim());
        for (w, b) in self.blocks.iter().enumerate() {
            out.extend(b.mul_vec(&v[self.source.offset(w)..self.source.offset(w + 1)]));
        }
        out
    }

    /// Blocks vectorized column-major and concatenated.
    pub fn flat(&self) -> Vec<Scalar> {
        self.blocks.iter().flat_map(Matrix::vectorize).collect()
    }

    pub fn rank(&self) -> usize {
        self.blocks.iter().map(Matrix::rank).sum()
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.source.dim()
    }

    pub fn is_surjective(&self) -> bool {
        self.rank() == self.target.dim()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.source.dims() == self.target.dims() && self.is_injective()
    }

    pub fn inverse(&self) -> Option<Morphism> {
        let blocks = self.blocks.iter().map(Matrix::inverse).collect::<Option<Vec<_>>>()?;
        Some(Morphism { source: self.target.clone(), target: self.source.clone(), blocks })
    }

    pub fn kernel(&self) -> (Module, Morphism) {
        let subs: Vec<Subspace> = self.blocks.iter().map(Matrix::kernel).collect();
        self.source.submodule(&subs).expect("kernels are submodules")
    }

    pub fn image(&self) -> (Module, Morphism) {
        let subs: Vec<Subspace> = self.blocks.iter().map(Matrix::image).collect();
        self.target.submodule(&subs).expect("images are submodules")
    }

    pub fn image_spaces(&self) -> Vec<Subspace> {
        self.blocks.iter().map(Matrix::image).collect()
    }

    pub fn cokernel(&self) -> (Module, Morphism) {
        self.target.quotient(&self.image_spaces()).expect("images are submodules")
    }

    /// Every `h` with `self ∘ h = u`, as one solution if any exists.
    /// `u` and `h` share their source.
    pub fn lift(&self, u: &Morphism) -> Result<Option<Morphism>> {
        let space = hom(u.source(), self.source())?;
        let images: Vec<Vec<Scalar>> = space.basis().iter().map(|h| self.compose(h).flat()).collect();
        let a = Matrix::from_columns(self.field(), u.flat().len(), &images);
        Ok(a.solve_vec(&u.flat()).map(|c| space.combine(&c)))
    }

    /// Some `h` with `h ∘ self = u` (extension along `self`).
    pub fn extend(&self, u: &Morphism) -> Result<Option<Morphism>> {
        let space = hom(self.target(), u.target())?;
        let images: Vec<Vec<Scalar>> = space.basis().iter().map(|h| h.compose(self).flat()).collect();
        let a = Matrix::from_columns(self.field(), u.flat().len(), &images);
        Ok(a.solve_vec(&u.flat()).map(|c| space.combine(&c)))
    }
}

/// `Hom_A(M, N)` with a fixed basis.
#[derive(Clone, Debug)]
pub struct HomSpace {
    source: Module,
    target: Module,
    basis: Vec<Morphism>,
    free: Vec<usize>,
}

impl HomSpace {
    pub fn source(&self) -> &Module {
        &self.source
    }
    pub fn target(&self) -> &Module {
        &self.target
    }
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
    pub fn basis(&self) -> &[Morphism] {
        &self.basis
    }
    pub fn field(&self) -> Field {
        self.source.field()
    }

    /// Coordinates of a homomorphism `M → N` in this basis.
    pub fn coordinates(&self, f: &Morphism) -> Vec<Scalar> {
        let flat = f.flat();
        self.free.iter().map(|&i| flat[i].clone()).collect()
    }

    pub fn combine(&self, coeffs: &[Scalar]) -> Morphism {
        let mut f = Morphism::zero(&self.source, &self.target);
        for (c, b) in coeffs.iter().zip(&self.basis) {
            if !c.is_zero() {
                for (x, y) in f.blocks.iter_mut().zip(&b.blocks) {
                    x.add_scaled(c, y);
                }
            }
        }
        f
    }
}

/// Basis of the homomorphism space from the intertwining equations.
pub fn hom(m: &Module, n: &Module) -> Result<HomSpace> {
    if !m.same_algebra(n) {
        return Err(Error::AlgebraMismatch);
    }
    let field = m.field();
    let nv = m.dims().len();
    let mut voff = vec![0usize; nv + 1];
    for v in 0..nv {
        voff[v + 1] = voff[v] + n.dims()[v] * m.dims()[v];
    }
    let nvars = voff[nv];
    let var = |v: usize, i: usize, j: usize| voff[v] + i + j * n.dims()[v];
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    let alg = m.algebra();
    for g in alg.generators() {
        let (s, t) = (g.source, g.target);
        let a = m.action(g.element);
        let b = n.action(g.element);
        for i in 0..n.dims()[t] {
            for j in 0..m.dims()[s] {
                let mut row = vec![field.zero(); nvars];
                let mut nz = false;
                for k in 0..m.dims()[t] {
                    let c = a.get(k, j);
                    if !c.is_zero() {
                        let x = var(t, i, k);
                        row[x] = &row[x] + c;
                        nz = true;
                    }
                }
                for k in 0..n.dims()[s] {
                    let c = b.get(i, k);
                    if !c.is_zero() {
                        let x = var(s, k, j);
                        row[x] = &row[x] - c;
                        nz = true;
                    }
                }
                if nz {
                    rows.push(row);
                }
            }
        }
    }
    let pivots = rref_rows(&mut rows, nvars, nvars);
    let mut is_pivot = vec![false; nvars];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let free: Vec<usize> = (0..nvars).filter(|&c| !is_pivot[c]).collect();
    let basis = free
        .iter()
        .map(|&f| {
            let mut v = vec![field.zero(); nvars];
            v[f] = field.one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -&rows[r][f];
            }
            let blocks = (0..nv)
                .map(|w| Matrix::unvectorize(field, n.dims()[w], m.dims()[w], &v[voff[w]..voff[w + 1]]))
                .collect();
            Morphism::raw(m.clone(), n.clone(), blocks)
        })
        .collect();
    Ok(HomSpace { source: m.clone(), target: n.clone(), basis, free })
}

#[cfg(test)]
pub(crate) mod tests;
