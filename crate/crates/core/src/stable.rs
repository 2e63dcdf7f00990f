//! Stable categories, the transpose and the Auslander-Reiten translate.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Algebra, AlgebraQuotient};
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::matrix::{quotient_map, quotient_section, Matrix, Subspace};
use crate::module::decompose::{random_scalar, DEFAULT_TRIALS};
use crate::module::{
    endomorphism_algebra, find_isomorphism, hom, hom_to_regular, HomSpace, Module, Morphism, ProjectivePresentation,
    StarModule,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Modulo {
    Projectives,
    Injectives,
}

/// `Hom(M, N)` modulo the maps factoring through projectives (resp.
/// injectives).
#[derive(Clone, Debug)]
pub struct StableHomSpace {
    pub full: HomSpace,
    pub factoring: Subspace,
    pub modulo: Modulo,
    projection: Matrix,
    section: Matrix,
}

impl StableHomSpace {
    fn new(full: HomSpace, factoring: Subspace, modulo: Modulo) -> Self {
        let n = full.dim();
        let projection = quotient_map(n, &factoring);
        let section = quotient_section(n, &factoring);
        StableHomSpace { full, factoring, modulo, projection, section }
    }

    pub fn dim(&self) -> usize {
        self.projection.rows()
    }

    pub fn full_basis(&self) -> &[Morphism] {
        self.full.basis()
    }

    /// Coordinates of the stable class of `f`.
    pub fn class(&self, f: &Morphism) -> Vec<Scalar> {
        self.projection.mul_vec(&self.full.coordinates(f))
    }

    pub fn is_zero_class(&self, f: &Morphism) -> bool {
        self.factoring.contains(&self.full.coordinates(f))
    }

    pub fn representative(&self, coords: &[Scalar]) -> Morphism {
        self.full.combine(&self.section.mul_vec(coords))
    }

    pub fn quotient_basis(&self) -> Vec<Morphism> {
        (0..self.dim()).map(|k| self.full.combine(&self.section.col(k))).collect()
    }

    /// The quotient map on full coordinates.
    pub fn projection(&self) -> &Matrix {
        &self.projection
    }
}

/// A lift of `f` along the projective cover of its target, if `f` factors
/// through a projective.
pub fn factors_through_projective(f: &Morphism) -> Result<Option<Morphism>> {
    let cover = f.target().projective_cover()?.morphism;
    cover.lift(f)
}

/// An extension of `f` along the injective envelope of its source, if `f`
/// factors through an injective.
pub fn factors_through_injective(f: &Morphism) -> Result<Option<Morphism>> {
    f.source().injective_envelope()?.extend(f)
}

/// Coordinates in `full` of the maps `M → N` of the form `cover ∘ h`.
pub(crate) fn through_cover(full: &HomSpace, cover: &Morphism) -> Result<Subspace> {
    let via = hom(full.source(), cover.source())?;
    let vecs = via.basis().iter().map(|h| full.coordinates(&cover.compose(h))).collect();
    Ok(Subspace::span(full.field(), full.dim(), vecs))
}

/// Coordinates in `full` of the maps `M → N` of the form `h ∘ env`.
pub(crate) fn through_envelope(full: &HomSpace, env: &Morphism) -> Result<Subspace> {
    let via = hom(env.target(), full.target())?;
    let vecs = via.basis().iter().map(|h| full.coordinates(&h.compose(env))).collect();
    Ok(Subspace::span(full.field(), full.dim(), vecs))
}

pub fn stable_hom_proj(m: &Module, n: &Module) -> Result<StableHomSpace> {
    let full = hom(m, n)?;
    let factoring = through_cover(&full, &n.projective_cover()?.morphism)?;
    Ok(StableHomSpace::new(full, factoring, Modulo::Projectives))
}

pub fn stable_hom_inj(m: &Module, n: &Module) -> Result<StableHomSpace> {
    let full = hom(m, n)?;
    let factoring = through_envelope(&full, &m.injective_envelope()?)?;
    Ok(StableHomSpace::new(full, factoring, Modulo::Injectives))
}

pub fn stable_hom(m: &Module, n: &Module, modulo: Modulo) -> Result<StableHomSpace> {
    match modulo {
        Modulo::Projectives => stable_hom_proj(m, n),
        Modulo::Injectives => stable_hom_inj(m, n),
    }
}

/// `Ω M` with its inclusion into the projective cover.
pub fn syzygy(m: &Module) -> Result<(Module, Morphism)> {
    Ok(m.projective_cover()?.morphism.kernel())
}

/// `P₀* → P₁* → Tr M → 0` from a minimal presentation of `M`.
#[derive(Clone, Debug)]
pub struct TransposeResult {
    pub tr: Module,
    pub presentation: ProjectivePresentation,
    pub p0_star: StarModule,
    pub p1_star: StarModule,
    pub star_map: Morphism,
    /// `P₁* ↠ Tr M`.
    pub projection: Morphism,
}

pub fn transpose(m: &Module) -> Result<TransposeResult> {
    transpose_over(m, &Arc::new(m.algebra().opposite()))
}

/// The transpose as a module over the given handle for the opposite algebra.
pub fn transpose_over(m: &Module, op: &Arc<Algebra>) -> Result<TransposeResult> {
    let presentation = m.minimal_presentation()?;
    let p0_star = hom_to_regular(&presentation.p0, op)?;
    let p1_star = hom_to_regular(&presentation.p1, op)?;
    let star_map = p0_star.pullback(&presentation.d, &p1_star);
    let (tr, projection) = star_map.cokernel();
    Ok(TransposeResult { tr, presentation, p0_star, p1_star, star_map, projection })
}

pub(crate) fn right_inverse(m: &Matrix) -> Matrix {
    m.transpose().left_inverse().expect("surjective map").transpose()
}

/// `Tr f: Tr C′ → Tr C` for `f: C → C′`, by lifting to the minimal
/// presentations and dualizing. Well defined on stable classes.
pub fn transpose_on_stable_morphism(f: &Morphism, src: &TransposeResult, dst: &TransposeResult) -> Result<Morphism> {
    let (p, q) = (&src.presentation, &dst.presentation);
    let f0 = q.eps.lift(&f.compose(&p.eps))?.expect("maps from projectives lift along epimorphisms");
    let f1 = q.d.lift(&f0.compose(&p.d))?.expect("maps from projectives lift onto the syzygy");
    let f1_star = dst.p1_star.pullback(&f1, &src.p1_star);
    let blocks = (0..f.source().dims().len())
        .map(|v| {
            src.projection.block(v).mul(f1_star.block(v)).mul(&right_inverse(dst.projection.block(v)))
        })
        .collect();
    Morphism::new(dst.tr.clone(), src.tr.clone(), blocks)
}

/// `τ C = D Tr C`.
pub fn ar_translate_classical(c: &Module) -> Result<Module> {
    Ok(transpose(c)?.tr.dual_over(c.algebra().clone()))
}

/// A pair of maps inverse to each other in the stable category.
#[derive(Clone, Debug)]
pub struct StableIso {
    pub forward: Morphism,
    pub backward: Morphism,
}

/// An isomorphism `a ≅ b` in the stable category, if one is found.
pub fn stable_isomorphism(a: &Module, b: &Module, modulo: Modulo, seed: u64) -> Result<Option<StableIso>> {
    if let Some(f) = find_isomorphism(a, b, seed)? {
        let g = f.inverse().expect("isomorphism");
        return Ok(Some(StableIso { forward: f, backward: g }));
    }
    let ab = stable_hom(a, b, modulo)?;
    let ba = stable_hom(b, a, modulo)?;
    let aa = stable_hom(a, a, modulo)?;
    let bb = stable_hom(b, b, modulo)?;
    if ab.dim() == 0 || ba.dim() == 0 {
        let ok = aa.dim() == 0 && bb.dim() == 0;
        return Ok(ok.then(|| StableIso { forward: Morphism::zero(a, b), backward: Morphism::zero(b, a) }));
    }
    let field = a.field();
    let id_a = aa.class(&Morphism::identity(a));
    let id_b = bb.class(&Morphism::identity(b));
    let attempt = |f: &Morphism| -> Option<Morphism> {
        // g ↦ (class(f∘g), class(g∘f)) is linear in g
        let cols: Vec<Vec<Scalar>> = ba
            .full_basis()
            .iter()
            .map(|g| {
                let mut v = bb.class(&f.compose(g));
                v.extend(aa.class(&g.compose(f)));
                v
            })
            .collect();
        let mut rhs = id_b.clone();
        rhs.extend(id_a.iter().cloned());
        let sys = Matrix::from_columns(field, rhs.len(), &cols);
        sys.solve_vec(&rhs).map(|y| ba.full.combine(&y))
    };
    let basis = ab.quotient_basis();
    for f in &basis {
        if let Some(g) = attempt(f) {
            return Ok(Some(StableIso { forward: f.clone(), backward: g }));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..DEFAULT_TRIALS {
        let coeffs: Vec<Scalar> = (0..ab.dim()).map(|_| random_scalar(field, &mut rng)).collect();
        let f = ab.representative(&coeffs);
        if let Some(g) = attempt(&f) {
            return Ok(Some(StableIso { forward: f, backward: g }));
        }
    }
    Ok(None)
}

/// Data attached to a fixed module `C`: `Γ = End(C)`, its stable ideal, the
/// transpose and a syzygy presentation, shared by every computation that
/// treats `Hom(C, −)` and `Ext¹(C, −)` as `Γ`-modules.
///
/// `Γ`-modules are right modules, represented as left modules over
/// `gamma_op`; `h ∈ Hom(C, X)` is acted on by `h ↦ h ∘ b`.
#[derive(Clone, Debug)]
pub struct EndContext {
    pub c: Module,
    pub op: Arc<Algebra>,
    pub end: HomSpace,
    pub gamma: Arc<Algebra>,
    pub gamma_op: Arc<Algebra>,
    /// `Γ`-coordinates of the endomorphisms factoring through a projective.
    pub stable_ideal: Subspace,
    pub transpose: TransposeResult,
    /// `P₀ ↠ C`.
    pub cover: Morphism,
    /// `Ω C ↪ P₀`.
    pub omega: Morphism,
    /// Each basis endomorphism of `C` lifted to `P₀` and restricted to `Ω C`.
    pub omega_action: Vec<Morphism>,
    pub seed: u64,
}

impl EndContext {
    pub fn new(c: &Module) -> Result<Self> {
        EndContext::with_seed(c, crate::module::decompose::DEFAULT_SEED)
    }

    pub fn with_seed(c: &Module, seed: u64) -> Result<Self> {
        if c.is_zero() {
            return Err(Error::Dimension("the base module must be nonzero".into()));
        }
        let op = Arc::new(c.algebra().opposite());
        let (gamma, end) = endomorphism_algebra(c)?;
        let gamma_op = Arc::new(gamma.opposite());
        let gamma = Arc::new(gamma);
        let transpose = transpose_over(c, &op)?;
        let cover = transpose.presentation.eps.clone();
        let stable_ideal = through_cover(&end, &cover)?;
        let (_, omega) = cover.kernel();
        let omega_action = end
            .basis()
            .iter()
            .map(|b| {
                let f0 = cover.lift(&b.compose(&cover))?.expect("projective lifts");
                Ok(omega.lift(&f0.compose(&omega))?.expect("lift preserves the kernel"))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(EndContext { c: c.clone(), op, end, gamma, gamma_op, stable_ideal, transpose, cover, omega, omega_action, seed })
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        self.c.algebra()
    }

    pub fn omega_module(&self) -> &Module {
        self.omega.source()
    }

    /// `Γ̄ = Γ / P(C, C)`.
    pub fn gamma_bar(&self) -> Result<AlgebraQuotient> {
        self.gamma.quotient(&self.stable_ideal)
    }

    /// A right `Γ`-module from a space of maps out of `C`, acted on by
    /// precomposition.
    pub(crate) fn precomposition_module(&self, space: &HomSpace) -> Result<Module> {
        let field = self.c.field();
        let action = self
            .end
            .basis()
            .iter()
            .map(|b| {
                let cols: Vec<Vec<Scalar>> = space.basis().iter().map(|h| space.coordinates(&h.compose(b))).collect();
                Matrix::from_columns(field, space.dim(), &cols)
            })
            .collect();
        Module::from_basis_action(self.gamma_op.clone(), vec![space.dim()], action)
    }

    /// `Hom(C, X)` as a right `Γ`-module.
    pub fn hom_module(&self, x: &Module) -> Result<(HomSpace, Module)> {
        let space = hom(&self.c, x)?;
        let module = self.precomposition_module(&space)?;
        Ok((space, module))
    }

    /// `Hom-underline(C, X)` as a right `Γ`-module, with the projection
    /// `Hom(C, X) ↠ Hom-underline(C, X)`.
    pub fn stable_hom_module(&self, x: &Module) -> Result<(StableHomSpace, Morphism)> {
        let (space, full) = self.hom_module(x)?;
        let factoring = through_cover(&space, &x.projective_cover()?.morphism)?;
        let (_, proj) = full.quotient(core::slice::from_ref(&factoring))?;
        Ok((StableHomSpace::new(space, factoring, Modulo::Projectives), proj))
    }

    /// The right regular module `Γ_Γ`.
    pub fn gamma_regular(&self) -> Module {
        Module::regular(&self.gamma_op)
    }

    /// `D(Γ)`, the injective cogenerator among right `Γ`-modules.
    pub fn dual_gamma(&self) -> Module {
        Module::regular(&self.gamma).dual_over(self.gamma_op.clone())
    }
}

/// `τ_C(I) = Hom_Σ(Tr C, E(Ī))` and its ingredients.
#[derive(Clone, Debug)]
pub struct GeneralTranslateResult {
    pub gamma_bar: AlgebraQuotient,
    /// `T = End(Tr C)`, so that `Σ = T^op`; right `Σ`-modules are left
    /// `T`-modules.
    pub t_algebra: Option<Arc<Algebra>>,
    pub t_end: Option<HomSpace>,
    /// `T`-coordinates of the endomorphisms of `Tr C` factoring through a
    /// projective.
    pub t_stable_ideal: Option<Subspace>,
    /// `γ: Γ → T̄` on coordinates (kernel: the stable ideal of `Γ`).
    pub gamma_map: Matrix,
    pub i_bar: Module,
    pub i_bar_inclusion: Morphism,
    /// `Ī` as a `Σ`-module via `γ`.
    pub i_bar_sigma: Option<Module>,
    /// `Ī ↪ E(Ī)` over `Σ`.
    pub envelope: Option<Morphism>,
    /// `Tr C` restricted to each vertex, as `Σ`-modules.
    pub tr_parts: Vec<Module>,
    pub tau: Module,
}

/// `τ_C(I)` for an injective right `Γ`-module `I`.
pub fn tau_general(ctx: &EndContext, i: &Module) -> Result<GeneralTranslateResult> {
    if !Arc::ptr_eq(i.algebra(), &ctx.gamma_op) && **i.algebra() != *ctx.gamma_op {
        return Err(Error::AlgebraMismatch);
    }
    if !i.is_injective()? {
        return Err(Error::NotInjective("the coefficient module is not injective over End(C)".into()));
    }
    let field = ctx.c.field();
    let alg = ctx.algebra().clone();
    let gamma_bar = ctx.gamma_bar()?;

    let mut stack = Matrix::zeros(field, 0, i.dim());
    for k in ctx.stable_ideal.basis() {
        stack = stack.vstack(&i.element_action(k));
    }
    let (i_bar, i_bar_inclusion) = i.submodule(&[stack.kernel()])?;

    let tp = &ctx.transpose;
    let tr = &tp.tr;
    if tr.is_zero() {
        return Ok(GeneralTranslateResult {
            gamma_bar,
            t_algebra: None,
            t_end: None,
            t_stable_ideal: None,
            gamma_map: Matrix::zeros(field, 0, ctx.gamma.dim()),
            i_bar,
            i_bar_inclusion,
            i_bar_sigma: None,
            envelope: None,
            tr_parts: Vec::new(),
            tau: Module::zero(alg),
        });
    }

    let (t_alg, t_end) = endomorphism_algebra(tr)?;
    let t_alg = Arc::new(t_alg);
    let t_stable_ideal = through_cover(&t_end, &tr.projective_cover()?.morphism)?;
    let tq = quotient_map(t_end.dim(), &t_stable_ideal);
    let gamma_cols: Vec<Vec<Scalar>> = ctx
        .end
        .basis()
        .iter()
        .map(|b| Ok(tq.mul_vec(&t_end.coordinates(&transpose_on_stable_morphism(b, tp, tp)?))))
        .collect::<Result<_>>()?;
    let gamma_map = Matrix::from_columns(field, tq.rows(), &gamma_cols);

    // t acts on Ī as any preimage of its stable class under γ
    let left = i_bar_inclusion.block(0).left_inverse().expect("inclusion");
    let inc = i_bar_inclusion.block(0);
    let mut t_action = Vec::with_capacity(t_end.dim());
    for j in 0..t_end.dim() {
        let g = gamma_map.solve_vec(&tq.col(j)).ok_or(Error::NotExact("γ is not surjective".into()))?;
        t_action.push(left.mul(&i.element_action(&g)).mul(inc));
    }
    let i_bar_sigma = Module::from_basis_action(t_alg.clone(), vec![i_bar.dim()], t_action)?;
    let envelope = i_bar_sigma.injective_envelope()?;
    let e = envelope.target().clone();

    let nv = alg.vertex_count();
    let tr_parts: Vec<Module> = (0..nv)
        .map(|v| {
            let action = t_end.basis().iter().map(|t| t.block(v).clone()).collect();
            Module::from_basis_action(t_alg.clone(), vec![tr.dims()[v]], action)
        })
        .collect::<Result<_>>()?;
    let spaces: Vec<HomSpace> = tr_parts.iter().map(|p| hom(p, &e)).collect::<Result<_>>()?;
    let mut action = Vec::with_capacity(alg.dim());
    for (k, b) in alg.basis().iter().enumerate() {
        let (s, t) = (b.source, b.target);
        // b acts on Tr C from the right: Tr C_t → Tr C_s
        let rho = Morphism::new(tr_parts[t].clone(), tr_parts[s].clone(), vec![tr.action(k).clone()])?;
        let cols: Vec<Vec<Scalar>> = spaces[s].basis().iter().map(|h| spaces[t].coordinates(&h.compose(&rho))).collect();
        action.push(Matrix::from_columns(field, spaces[t].dim(), &cols));
    }
    let tau = Module::from_basis_action(alg.clone(), spaces.iter().map(HomSpace::dim).collect(), action)?;
    Ok(GeneralTranslateResult {
        gamma_bar,
        t_algebra: Some(t_alg),
        t_end: Some(t_end),
        t_stable_ideal: Some(t_stable_ideal),
        gamma_map,
        i_bar,
        i_bar_inclusion,
        i_bar_sigma: Some(i_bar_sigma),
        envelope: Some(envelope),
        tr_parts,
        tau,
    })
}
