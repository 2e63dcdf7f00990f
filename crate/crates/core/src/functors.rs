//! Finitely presented functors, defects of exact sequences, coinduction and
//! `Ext¹`, all evaluated on demand from presentations.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::matrix::{quotient_map, quotient_section, Matrix, Subspace};
use crate::module::{hom, HomSpace, Module, Morphism, ShortExactSequence};
use crate::stable::{right_inverse, through_envelope, EndContext};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variance {
    /// `F = Coker Hom(−, φ)`.
    Contra,
    /// `F = Coker Hom(φ, −)`.
    Cov,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpFunctor {
    pub variance: Variance,
    pub presenting: Morphism,
}

/// A cokernel `Hom-space / image`, with coset coordinates.
#[derive(Clone, Debug)]
pub struct FunctorValue {
    pub space: HomSpace,
    pub image: Subspace,
    projection: Matrix,
    section: Matrix,
}

impl FunctorValue {
    fn new(space: HomSpace, image: Subspace) -> Self {
        let projection = quotient_map(space.dim(), &image);
        let section = quotient_section(space.dim(), &image);
        FunctorValue { space, image, projection, section }
    }

    pub fn dim(&self) -> usize {
        self.projection.rows()
    }

    pub fn class(&self, f: &Morphism) -> Vec<Scalar> {
        self.projection.mul_vec(&self.space.coordinates(f))
    }

    pub fn representative(&self, coords: &[Scalar]) -> Morphism {
        self.space.combine(&self.section.mul_vec(coords))
    }

    pub fn representatives(&self) -> Vec<Morphism> {
        (0..self.dim()).map(|k| self.space.combine(&self.section.col(k))).collect()
    }
}

impl FpFunctor {
    pub fn contravariant(phi: Morphism) -> Self {
        FpFunctor { variance: Variance::Contra, presenting: phi }
    }

    pub fn covariant(phi: Morphism) -> Self {
        FpFunctor { variance: Variance::Cov, presenting: phi }
    }

    pub fn evaluate(&self, m: &Module) -> Result<FunctorValue> {
        let phi = &self.presenting;
        match self.variance {
            Variance::Contra => {
                let space = hom(m, phi.target())?;
                let via = hom(m, phi.source())?;
                let vecs = via.basis().iter().map(|g| space.coordinates(&phi.compose(g))).collect();
                let image = Subspace::span(m.field(), space.dim(), vecs);
                Ok(FunctorValue::new(space, image))
            }
            Variance::Cov => {
                let space = hom(phi.source(), m)?;
                let via = hom(phi.target(), m)?;
                let vecs = via.basis().iter().map(|g| space.coordinates(&g.compose(phi))).collect();
                let image = Subspace::span(m.field(), space.dim(), vecs);
                Ok(FunctorValue::new(space, image))
            }
        }
    }

    /// `F(u)` for `u: M → M′`, given `F(M)` and `F(M′)`. The matrix maps
    /// `F(M′) → F(M)` for contravariant `F` and `F(M) → F(M′)` otherwise.
    pub fn induced(&self, u: &Morphism, at_source: &FunctorValue, at_target: &FunctorValue) -> Matrix {
        let field = u.field();
        match self.variance {
            Variance::Contra => {
                let cols: Vec<Vec<Scalar>> =
                    at_target.representatives().iter().map(|h| at_source.class(&h.compose(u))).collect();
                Matrix::from_columns(field, at_source.dim(), &cols)
            }
            Variance::Cov => {
                let cols: Vec<Vec<Scalar>> =
                    at_source.representatives().iter().map(|h| at_target.class(&u.compose(h))).collect();
                Matrix::from_columns(field, at_target.dim(), &cols)
            }
        }
    }
}

/// `ξ* = Coker Hom(−, ψ)` and `ξ_* = Coker Hom(φ, −)` for
/// `ξ: 0 → X → Y → Z → 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DefectPair {
    pub seq: ShortExactSequence,
    pub contra: FpFunctor,
    pub cov: FpFunctor,
}

pub fn defects(seq: &ShortExactSequence) -> DefectPair {
    DefectPair {
        seq: seq.clone(),
        contra: FpFunctor::contravariant(seq.pi().clone()),
        cov: FpFunctor::covariant(seq.iota().clone()),
    }
}

/// The defects of `D(ξ)` over the opposite algebra; `D(ξ_*)` becomes the
/// contravariant defect and `D(ξ*)` the covariant one.
pub fn defect_duality_swap(pair: &DefectPair) -> DefectPair {
    defects(&pair.seq.dual())
}

/// Dimensions of the two sides of `ξ_*(M) ≅ Coker Hom-overline(φ, M)` and
/// `ξ*(M) ≅ Ker Ext¹(M, φ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DefectIdentities {
    pub cov: usize,
    pub cov_stable: usize,
    pub contra: usize,
    pub contra_ext: usize,
}

impl DefectPair {
    pub fn identities(&self, m: &Module) -> Result<DefectIdentities> {
        let (x, y) = (self.seq.left(), self.seq.middle());
        let phi = self.seq.iota();
        // Coker(Hom-overline(Y, M) → Hom-overline(X, M))
        let hx = hom(x, m)?;
        let inj = through_envelope(&hx, &x.injective_envelope()?)?;
        let hy = hom(y, m)?;
        let img: Vec<Vec<Scalar>> = hy.basis().iter().map(|g| hx.coordinates(&g.compose(phi))).collect();
        let cov_stable = hx.dim() - inj.sum(&Subspace::span(m.field(), hx.dim(), img)).dim();
        // Ker(Ext¹(M, X) → Ext¹(M, Y))
        let ex = ext1(m, x)?;
        let ey = ex.with_target(y)?;
        let contra_ext = ex.dim() - ex.push(phi, &ey).rank();
        Ok(DefectIdentities {
            cov: self.cov.evaluate(m)?.dim(),
            cov_stable,
            contra: self.contra.evaluate(m)?.dim(),
            contra_ext,
        })
    }
}

/// The effaceable part: `Coker Hom(−, φ)` becomes `Coker Hom(−, φ′)` with
/// `φ′: X → Im φ`.
pub fn eff(f: &FpFunctor) -> Result<FpFunctor> {
    if f.variance != Variance::Contra {
        return Err(Error::Variance("eff takes a contravariant functor".into()));
    }
    let phi = &f.presenting;
    let (_, inc) = phi.image();
    let corestricted = inc.lift(phi)?.expect("a map factors through its image");
    Ok(FpFunctor::contravariant(corestricted))
}

/// `dim Nat(G, F)` for contravariant `G = Coker Hom(−, ψ: A → B)`: by
/// Yoneda, the kernel of `F(ψ): F(B) → F(A)`.
pub fn natural_transformations(g: &FpFunctor, f: &FpFunctor) -> Result<usize> {
    if g.variance != Variance::Contra || f.variance != Variance::Contra {
        return Err(Error::Variance("both functors must be contravariant".into()));
    }
    let psi = &g.presenting;
    let at_a = f.evaluate(psi.source())?;
    let at_b = f.evaluate(psi.target())?;
    let m = f.induced(psi, &at_a, &at_b);
    Ok(at_b.dim() - m.rank())
}

/// `Hom_Γ(Hom(C, X), I)` for a right `Γ`-module `I`.
pub fn coind_eval(ctx: &EndContext, i: &Module, x: &Module) -> Result<Coinduced> {
    let (maps, module) = ctx.hom_module(x)?;
    let value = hom(&module, i)?;
    Ok(Coinduced { maps, module, value })
}

#[derive(Clone, Debug)]
pub struct Coinduced {
    /// `Hom(C, X)`.
    pub maps: HomSpace,
    /// `Hom(C, X)` as a right `Γ`-module.
    pub module: Module,
    pub value: HomSpace,
}

impl Coinduced {
    pub fn dim(&self) -> usize {
        self.value.dim()
    }

    /// The map `coind(X′) → coind(X)` induced by `u: X → X′`.
    pub fn induced(&self, u: &Morphism, target: &Coinduced) -> Result<Matrix> {
        let field = u.field();
        let cols: Vec<Vec<Scalar>> =
            self.maps.basis().iter().map(|h| target.maps.coordinates(&u.compose(h))).collect();
        let hu = Morphism::new(self.module.clone(), target.module.clone(), vec![Matrix::from_columns(
            field,
            target.maps.dim(),
            &cols,
        )])?;
        let cols: Vec<Vec<Scalar>> =
            target.value.basis().iter().map(|t| self.value.coordinates(&t.compose(&hu))).collect();
        Ok(Matrix::from_columns(field, self.value.dim(), &cols))
    }
}

/// `Ext¹(C, X) = Hom(Ω C, X) / ι* Hom(P₀, X)`.
#[derive(Clone, Debug)]
pub struct ExtSpace {
    pub c: Module,
    pub x: Module,
    /// `P₀ ↠ C`.
    pub cover: Morphism,
    /// `Ω C ↪ P₀`.
    pub omega: Morphism,
    pub cocycles: HomSpace,
    pub coboundaries: Subspace,
    projection: Matrix,
    section: Matrix,
}

pub fn ext1(c: &Module, x: &Module) -> Result<ExtSpace> {
    let cover = c.projective_cover()?.morphism;
    let (_, omega) = cover.kernel();
    ExtSpace::from_syzygy(cover, omega, x)
}

impl ExtSpace {
    pub fn from_syzygy(cover: Morphism, omega: Morphism, x: &Module) -> Result<ExtSpace> {
        let cocycles = hom(omega.source(), x)?;
        let from_p0 = hom(omega.target(), x)?;
        let vecs = from_p0.basis().iter().map(|g| cocycles.coordinates(&g.compose(&omega))).collect();
        let coboundaries = Subspace::span(x.field(), cocycles.dim(), vecs);
        let projection = quotient_map(cocycles.dim(), &coboundaries);
        let section = quotient_section(cocycles.dim(), &coboundaries);
        Ok(ExtSpace { c: cover.target().clone(), x: x.clone(), cover, omega, cocycles, coboundaries, projection, section })
    }

    /// `Ext¹(C, X′)` sharing this presentation of `C`.
    pub fn with_target(&self, x: &Module) -> Result<ExtSpace> {
        ExtSpace::from_syzygy(self.cover.clone(), self.omega.clone(), x)
    }

    pub fn dim(&self) -> usize {
        self.projection.rows()
    }

    pub fn class(&self, h: &Morphism) -> Vec<Scalar> {
        self.projection.mul_vec(&self.cocycles.coordinates(h))
    }

    pub fn representative(&self, coords: &[Scalar]) -> Morphism {
        self.cocycles.combine(&self.section.mul_vec(coords))
    }

    pub fn representatives(&self) -> Vec<Morphism> {
        (0..self.dim()).map(|k| self.cocycles.combine(&self.section.col(k))).collect()
    }

    /// `Ext¹(C, g)` for `g: X → X′`.
    pub fn push(&self, g: &Morphism, target: &ExtSpace) -> Matrix {
        let cols: Vec<Vec<Scalar>> = self.representatives().iter().map(|h| target.class(&g.compose(h))).collect();
        Matrix::from_columns(g.field(), target.dim(), &cols)
    }

    /// `Ext¹(u, X): Ext¹(C, X) → Ext¹(C′, X)` for `u: C′ → C`.
    pub fn pull(&self, u: &Morphism, target: &ExtSpace) -> Result<Matrix> {
        let w = syzygy_map(u, &target.cover, &target.omega, &self.cover, &self.omega)?;
        let cols: Vec<Vec<Scalar>> = self.representatives().iter().map(|h| target.class(&h.compose(&w))).collect();
        Ok(Matrix::from_columns(u.field(), target.dim(), &cols))
    }

    /// The pushout of `0 → Ω C → P₀ → C → 0` along a representative.
    pub fn realize(&self, coords: &[Scalar]) -> Result<ShortExactSequence> {
        let h = self.representative(coords);
        let p0 = self.omega.target();
        let sum = Module::direct_sum(&[self.x.clone(), p0.clone()])?;
        let u = sum.inclusions[0].compose(&h).sub(&sum.inclusions[1].compose(&self.omega));
        let (e, q) = u.cokernel();
        let iota = q.compose(&sum.inclusions[0]);
        let down = self.cover.compose(&sum.projections[1]);
        let blocks = (0..e.dims().len()).map(|v| down.block(v).mul(&right_inverse(q.block(v)))).collect();
        let pi = Morphism::new(e, self.c.clone(), blocks)?;
        ShortExactSequence::new(iota, pi)
    }

    pub fn basis_sequences(&self) -> Result<Vec<ShortExactSequence>> {
        let field = self.x.field();
        (0..self.dim()).map(|k| self.realize(&crate::matrix::unit(field, self.dim(), k))).collect()
    }

    /// `δ(u)` for `u: C → Z`, the class of the pullback along `u` of
    /// `0 → X → Y → Z → 0`.
    pub fn connecting(&self, seq: &ShortExactSequence, u: &Morphism) -> Result<Vec<Scalar>> {
        Ok(self.class(&self.connecting_cocycle(seq, u)?))
    }

    pub(crate) fn connecting_cocycle(&self, seq: &ShortExactSequence, u: &Morphism) -> Result<Morphism> {
        if seq.left() != &self.x {
            return Err(Error::NotExact("sequence does not start at the Ext target".into()));
        }
        let g = seq.pi().lift(&u.compose(&self.cover))?.expect("projectives lift along epimorphisms");
        Ok(seq.iota().lift(&g.compose(&self.omega))?.expect("the composite lands in the kernel"))
    }

    /// The class of an extension `0 → X → E → C → 0`.
    pub fn class_of(&self, seq: &ShortExactSequence) -> Result<Vec<Scalar>> {
        if seq.right() != &self.c {
            return Err(Error::NotExact("sequence does not end at the Ext source".into()));
        }
        self.connecting(seq, &Morphism::identity(&self.c))
    }
}

/// The restriction `Ω C′ → Ω C` of a lift of `u: C′ → C` to the covers.
pub(crate) fn syzygy_map(
    u: &Morphism,
    cover_src: &Morphism,
    omega_src: &Morphism,
    cover_dst: &Morphism,
    omega_dst: &Morphism,
) -> Result<Morphism> {
    let f0 = cover_dst.lift(&u.compose(cover_src))?.expect("projectives lift along epimorphisms");
    Ok(omega_dst.lift(&f0.compose(omega_src))?.expect("lift preserves the kernel"))
}

/// `Ext¹(C, X)` as a right `Γ`-module, `Γ = End(C)` acting by pullback.
pub fn ext_module(ctx: &EndContext, x: &Module) -> Result<(ExtSpace, Module)> {
    let ext = ExtSpace::from_syzygy(ctx.cover.clone(), ctx.omega.clone(), x)?;
    let field = x.field();
    let reps = ext.representatives();
    let action = ctx
        .omega_action
        .iter()
        .map(|w| {
            let cols: Vec<Vec<Scalar>> = reps.iter().map(|h| ext.class(&h.compose(w))).collect();
            Matrix::from_columns(field, ext.dim(), &cols)
        })
        .collect();
    let module = Module::from_basis_action(ctx.gamma_op.clone(), vec![ext.dim()], action)?;
    Ok((ext, module))
}

#[cfg(test)]
mod tests;
