use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use super::proj::{left_ideal, LeftIdeal};
use super::{hom, HomSpace, Module, Morphism};
use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::matrix::{quotient_map, quotient_section, unit, Matrix, Subspace};

/// `M* = Hom_A(M, A)` as a module over `A^op`. The component at vertex `v`
/// is `Hom_A(M, A e_v)`; the action is post-composition with right
/// multiplication.
#[derive(Clone, Debug)]
pub struct StarModule {
    pub base: Module,
    pub module: Module,
    pub spaces: Vec<HomSpace>,
    ideals: Vec<LeftIdeal>,
}

/// Compute `M*` over the given handle for `A^op`.
pub fn hom_to_regular(m: &Module, op: &Arc<Algebra>) -> Result<StarModule> {
    let alg = m.algebra();
    let field = m.field();
    let d = alg.dim();
    let nv = alg.vertex_count();
    let ideals: Vec<LeftIdeal> = (0..nv).map(|v| left_ideal(alg, &alg.vertex_idempotent(v))).collect();
    let spaces: Vec<HomSpace> = ideals.iter().map(|l| hom(m, &l.module)).collect::<Result<_>>()?;
    let lefts: Vec<Vec<Matrix>> = ideals
        .iter()
        .map(|l| l.embed.iter().map(|e| e.left_inverse().expect("independent")).collect())
        .collect();
    let mut action = Vec::with_capacity(d);
    for (i, b) in alg.basis().iter().enumerate() {
        // right multiplication by b_i maps A e_t into A e_s
        let (s, t) = (b.source, b.target);
        let r = alg.right_mult(&unit(field, d, i));
        let mut cols = Vec::with_capacity(spaces[t].dim());
        for f in spaces[t].basis() {
            let blocks: Vec<Matrix> = (0..nv)
                .map(|w| lefts[s][w].mul(&r).mul(&ideals[t].embed[w]).mul(f.block(w)))
                .collect();
            let g = Morphism::raw(m.clone(), ideals[s].module.clone(), blocks);
            cols.push(spaces[s].coordinates(&g));
        }
        action.push(Matrix::from_columns(field, spaces[s].dim(), &cols));
    }
    let dims = spaces.iter().map(HomSpace::dim).collect();
    let module = Module::raw(op.clone(), dims, action);
    Ok(StarModule { base: m.clone(), module, spaces, ideals })
}

impl StarModule {
    /// `f*: N* → M*`, `g ↦ g ∘ f`, where `self = N*`, `f: M → N` and
    /// `m_star = M*`.
    pub fn pullback(&self, f: &Morphism, m_star: &StarModule) -> Morphism {
        let field = f.field();
        let blocks = (0..self.spaces.len())
            .map(|v| {
                let cols: Vec<Vec<Scalar>> =
                    self.spaces[v].basis().iter().map(|g| m_star.spaces[v].coordinates(&g.compose(f))).collect();
                Matrix::from_columns(field, m_star.spaces[v].dim(), &cols)
            })
            .collect();
        Morphism::raw(self.module.clone(), m_star.module.clone(), blocks)
    }

    /// The homomorphism `M → A e_v` with the given coordinates.
    pub fn element(&self, v: usize, coords: &[Scalar]) -> Morphism {
        self.spaces[v].combine(coords)
    }

    /// Embedding of the vertex-`v` projective into `A` (per vertex).
    pub fn embedding(&self, v: usize) -> &[Matrix] {
        &self.ideals[v].embed
    }
}

/// `R ⊗_A L` for a right module `R` (left over `A^op`) and a left module `L`.
#[derive(Clone, Debug)]
pub struct TensorSpace {
    pub right: Module,
    pub left: Module,
    offsets: Vec<usize>,
    pub relations: Subspace,
    pub projection: Matrix,
    pub section: Matrix,
}

impl TensorSpace {
    pub fn new(right: &Module, left: &Module) -> Result<TensorSpace> {
        let (ra, la) = (right.algebra(), left.algebra());
        if ra.is_opposite() == la.is_opposite() || ra.dim() != la.dim() || ra.vertex_count() != la.vertex_count() {
            return Err(Error::SideMismatch("tensor needs a right and a left module over one algebra".into()));
        }
        let field = left.field();
        let nv = la.vertex_count();
        let mut offsets = vec![0usize; nv + 1];
        for v in 0..nv {
            offsets[v + 1] = offsets[v] + right.dims()[v] * left.dims()[v];
        }
        let raw = offsets[nv];
        let idx = |v: usize, i: usize, j: usize| offsets[v] + i * left.dims()[v] + j;
        let mut rels = Vec::new();
        for g in la.generators() {
            let (s, t) = (g.source, g.target);
            let rg = right.action(g.element); // R_t → R_s
            let lg = left.action(g.element); // L_s → L_t
            for m in 0..right.dims()[t] {
                for n in 0..left.dims()[s] {
                    let mut v = vec![field.zero(); raw];
                    for i in 0..right.dims()[s] {
                        let c = rg.get(i, m);
                        if !c.is_zero() {
                            let x = idx(s, i, n);
                            v[x] = &v[x] + c;
                        }
                    }
                    for j in 0..left.dims()[t] {
                        let c = lg.get(j, n);
                        if !c.is_zero() {
                            let x = idx(t, m, j);
                            v[x] = &v[x] - c;
                        }
                    }
                    if v.iter().any(|x| !x.is_zero()) {
                        rels.push(v);
                    }
                }
            }
        }
        let relations = Subspace::span(field, raw, rels);
        let projection = quotient_map(raw, &relations);
        let section = quotient_section(raw, &relations);
        Ok(TensorSpace { right: right.clone(), left: left.clone(), offsets, relations, projection, section })
    }

    pub fn dim(&self) -> usize {
        self.projection.rows()
    }

    /// Class of `r ⊗ l` for homogeneous vectors at vertex `v`.
    pub fn pure(&self, v: usize, r: &[Scalar], l: &[Scalar]) -> Vec<Scalar> {
        let field = self.left.field();
        let mut raw = vec![field.zero(); *self.offsets.last().unwrap()];
        let ld = self.left.dims()[v];
        for (i, a) in r.iter().enumerate() {
            for (j, b) in l.iter().enumerate() {
                raw[self.offsets[v] + i * ld + j] = a * b;
            }
        }
        self.projection.mul_vec(&raw)
    }

    /// Matrix of `f ⊗ g: self → other`.
    pub fn map(&self, other: &TensorSpace, f: &Morphism, g: &Morphism) -> Matrix {
        let field = self.left.field();
        let nv = self.offsets.len() - 1;
        let mut raw = Matrix::zeros(field, *other.offsets.last().unwrap(), *self.offsets.last().unwrap());
        for v in 0..nv {
            let (fv, gv) = (f.block(v), g.block(v));
            let (ld, old) = (self.left.dims()[v], other.left.dims()[v]);
            for i in 0..fv.cols() {
                for j in 0..gv.cols() {
                    let src = self.offsets[v] + i * ld + j;
                    for i2 in 0..fv.rows() {
                        let a = fv.get(i2, i);
                        if a.is_zero() {
                            continue;
                        }
                        for j2 in 0..gv.rows() {
                            let b = gv.get(j2, j);
                            if !b.is_zero() {
                                raw.set(other.offsets[v] + i2 * old + j2, src, a * b);
                            }
                        }
                    }
                }
            }
        }
        other.projection.mul(&raw).mul(&self.section)
    }
}
