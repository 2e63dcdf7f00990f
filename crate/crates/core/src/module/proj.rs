use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use super::{Module, Morphism};
use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::matrix::{unit, Matrix, Subspace};

/// The left ideal `A e` for an element `e`, with the embedding of each
/// vertex component into `A` (basis vectors as columns).
#[derive(Clone, Debug)]
pub(crate) struct LeftIdeal {
    pub module: Module,
    pub embed: Vec<Matrix>,
}

pub(crate) fn left_ideal(alg: &Arc<Algebra>, e: &[Scalar]) -> LeftIdeal {
    let field = alg.field();
    let d = alg.dim();
    let nv = alg.vertex_count();
    let mut spans: Vec<Vec<Vec<Scalar>>> = vec![Vec::new(); nv];
    for (j, b) in alg.basis().iter().enumerate() {
        let v = alg.mul(&unit(field, d, j), e);
        if v.iter().any(|x| !x.is_zero()) {
            spans[b.target].push(v);
        }
    }
    let subs: Vec<Subspace> = spans.into_iter().map(|vs| Subspace::span(field, d, vs)).collect();
    let embed: Vec<Matrix> = subs.iter().map(Subspace::inclusion).collect();
    let lefts: Vec<Matrix> = embed.iter().map(|m| m.left_inverse().expect("independent")).collect();
    let mut action = Vec::with_capacity(d);
    for (i, b) in alg.basis().iter().enumerate() {
        let l = alg.left_mult(&unit(field, d, i));
        action.push(lefts[b.target].mul(&l).mul(&embed[b.source]));
    }
    let dims: Vec<usize> = subs.iter().map(Subspace::dim).collect();
    let module = Module::raw(alg.clone(), dims, action);
    LeftIdeal { module, embed }
}

impl LeftIdeal {
    /// The homomorphism `A e → M` sending `e` to `m` (requires `m ∈ eM`).
    pub fn map_to(&self, target: &Module, m: &[Scalar]) -> Morphism {
        let blocks = self
            .embed
            .iter()
            .enumerate()
            .map(|(w, emb)| {
                let cols: Vec<Vec<Scalar>> = (0..emb.cols())
                    .map(|c| {
                        let y = emb.col(c);
                        let img = target.act(&y, m);
                        img[target.offset(w)..target.offset(w + 1)].to_vec()
                    })
                    .collect();
                Matrix::from_columns(target.field(), target.dims()[w], &cols)
            })
            .collect();
        Morphism::raw(self.module.clone(), target.clone(), blocks)
    }
}

/// `P → M` with `P` a direct sum of indecomposable projectives `A e_k`.
#[derive(Clone, Debug)]
pub struct ProjectiveCover {
    pub morphism: Morphism,
    /// Index into the algebra's idempotent list, one per summand.
    pub summands: Vec<usize>,
    /// Image in `M` of the generator of each summand.
    pub generators: Vec<Vec<Scalar>>,
}

#[derive(Clone, Debug)]
pub struct ProjectivePresentation {
    pub p1: Module,
    pub p0: Module,
    pub d: Morphism,
    pub eps: Morphism,
    pub minimal: bool,
    pub cover0: ProjectiveCover,
    pub cover1: ProjectiveCover,
}

impl Module {
    /// Regular module `A` over itself.
    pub fn regular(alg: &Arc<Algebra>) -> Module {
        left_ideal(alg, alg.unit()).module
    }

    /// Indecomposable projective for the `k`-th primitive idempotent
    /// (for quiver algebras, vertex `k`).
    pub fn projective_at(alg: &Arc<Algebra>, k: usize) -> Result<Module> {
        let idem = alg.idempotents()?;
        let (_, e) = idem.get(k).ok_or_else(|| Error::Dimension("no such vertex".into()))?;
        Ok(left_ideal(alg, e).module)
    }

    /// Indecomposable injective `D(e_k A)`.
    pub fn injective_at(alg: &Arc<Algebra>, k: usize) -> Result<Module> {
        let op = Arc::new(alg.opposite());
        Ok(Module::projective_at(&op, k)?.dual_over(alg.clone()))
    }

    pub fn simple_at(alg: &Arc<Algebra>, k: usize) -> Result<Module> {
        Module::projective_at(alg, k)?.top()
    }

    /// `rad(A)·M` as per-vertex subspaces.
    pub fn radical_spaces(&self) -> Result<Vec<Subspace>> {
        let alg = self.algebra();
        let field = self.field();
        let nv = self.dims().len();
        let mut spans: Vec<Vec<Vec<Scalar>>> = vec![Vec::new(); nv];
        if alg.is_quiver() {
            for g in alg.generators() {
                let a = self.action(g.element);
                for c in 0..a.cols() {
                    spans[g.target].push(a.col(c));
                }
            }
        } else {
            for r in alg.radical()?.basis() {
                let a = self.element_action(r);
                for c in 0..a.cols() {
                    spans[0].push(a.col(c));
                }
            }
        }
        Ok(spans.into_iter().enumerate().map(|(w, vs)| Subspace::span(field, self.dims()[w], vs)).collect())
    }

    pub fn radical(&self) -> Result<(Module, Morphism)> {
        self.submodule(&self.radical_spaces()?)
    }

    /// `M / rad(A)·M`.
    pub fn top(&self) -> Result<Module> {
        Ok(self.quotient(&self.radical_spaces()?)?.0)
    }

    /// `{m : rad(A)·m = 0}` as per-vertex subspaces.
    pub fn socle_spaces(&self) -> Result<Vec<Subspace>> {
        let alg = self.algebra();
        let field = self.field();
        let nv = self.dims().len();
        if alg.is_quiver() {
            Ok((0..nv)
                .map(|w| {
                    let mut stack = Matrix::zeros(field, 0, self.dims()[w]);
                    for g in alg.generators().iter().filter(|g| g.source == w) {
                        stack = stack.vstack(self.action(g.element));
                    }
                    stack.kernel()
                })
                .collect())
        } else {
            let mut stack = Matrix::zeros(field, 0, self.dim());
            for r in alg.radical()?.basis() {
                stack = stack.vstack(&self.element_action(r));
            }
            Ok(vec![stack.kernel()])
        }
    }

    pub fn socle(&self) -> Result<(Module, Morphism)> {
        self.submodule(&self.socle_spaces()?)
    }

    /// Minimal epimorphism from a projective module.
    pub fn projective_cover(&self) -> Result<ProjectiveCover> {
        let alg = self.algebra().clone();
        let idems = alg.idempotents()?.to_vec();
        let mut covered = self.radical_spaces()?;
        let mut summands = Vec::new();
        let mut generators: Vec<Vec<Scalar>> = Vec::new();
        let full = |c: &[Subspace]| c.iter().map(Subspace::dim).sum::<usize>() == self.dim();
        while !full(&covered) {
            let mut found = None;
            'search: for (k, (_, e)) in idems.iter().enumerate() {
                let ea = self.element_action(e);
                for c in 0..ea.cols() {
                    let x = ea.col(c);
                    let comps = self.components(&x);
                    if comps.iter().zip(&covered).any(|(xc, s)| !s.contains(xc)) {
                        found = Some((k, x));
                        break 'search;
                    }
                }
            }
            let (k, x) = found.expect("top is spanned by idempotent translates");
            let gen = self.generated(core::slice::from_ref(&x));
            covered = covered.iter().zip(&gen).map(|(a, b)| a.sum(b)).collect();
            summands.push(k);
            generators.push(x);
        }
        let ideals: Vec<LeftIdeal> = summands.iter().map(|&k| left_ideal(&alg, &idems[k].1)).collect();
        let morphism = if ideals.is_empty() {
            Morphism::zero(&Module::zero(alg.clone()), self)
        } else {
            let sum = Module::direct_sum(&ideals.iter().map(|l| l.module.clone()).collect::<Vec<_>>())?;
            let mut eps = Morphism::zero(&sum.module, self);
            for ((l, x), p) in ideals.iter().zip(&generators).zip(&sum.projections) {
                eps = eps.add(&l.map_to(self, x).compose(p));
            }
            eps
        };
        Ok(ProjectiveCover { morphism, summands, generators })
    }

    /// Minimal monomorphism into an injective module, dual to the
    /// projective cover of `D(M)` over the opposite algebra.
    pub fn injective_envelope(&self) -> Result<Morphism> {
        let op = Arc::new(self.algebra().opposite());
        let cover = self.dual_over(op).projective_cover()?;
        let e = cover.morphism.source().dual_over(self.algebra().clone());
        let blocks = cover.morphism.blocks().iter().map(Matrix::transpose).collect();
        Ok(Morphism::raw(self.clone(), e, blocks))
    }

    pub fn is_projective(&self) -> Result<bool> {
        Ok(self.projective_cover()?.morphism.source().dim() == self.dim())
    }

    pub fn is_injective(&self) -> Result<bool> {
        Ok(self.injective_envelope()?.target().dim() == self.dim())
    }

    /// `P1 → P0 → M → 0` with both maps projective covers onto their images.
    pub fn minimal_presentation(&self) -> Result<ProjectivePresentation> {
        let cover0 = self.projective_cover()?;
        let eps = cover0.morphism.clone();
        let (k, inc) = eps.kernel();
        let cover1 = k.projective_cover()?;
        let d = inc.compose(&cover1.morphism);
        Ok(ProjectivePresentation {
            p1: d.source().clone(),
            p0: eps.source().clone(),
            d,
            eps,
            minimal: true,
            cover0,
            cover1,
        })
    }

    /// `D(M) = Hom_k(M, k)` over the opposite algebra.
    pub fn dual(&self) -> Module {
        self.dual_over(Arc::new(self.algebra().opposite()))
    }

    /// `D(M)` over a given handle for the opposite algebra.
    pub fn dual_over(&self, op: Arc<Algebra>) -> Module {
        let action = (0..self.algebra().dim()).map(|i| self.action(i).transpose()).collect();
        Module::raw(op, self.dims().to_vec(), action)
    }
}

impl Morphism {
    /// `D(f): D(N) → D(M)` between the given duals.
    pub fn dual_between(&self, dn: &Module, dm: &Module) -> Morphism {
        let blocks = self.blocks().iter().map(Matrix::transpose).collect();
        Morphism::raw(dn.clone(), dm.clone(), blocks)
    }

    pub fn dual(&self) -> Morphism {
        let op = Arc::new(self.source().algebra().opposite());
        let dn = self.target().dual_over(op.clone());
        let dm = self.source().dual_over(op);
        self.dual_between(&dn, &dm)
    }
}
