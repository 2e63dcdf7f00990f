use alloc::format;

use super::{Module, Morphism};
use crate::error::{Error, Result};

/// `0 → X → Y → Z → 0`, checked exact on construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShortExactSequence {
    iota: Morphism,
    pi: Morphism,
}

impl ShortExactSequence {
    pub fn new(iota: Morphism, pi: Morphism) -> Result<Self> {
        if iota.target() != pi.source() {
            return Err(Error::NotExact("middle terms differ".into()));
        }
        if !iota.is_injective() {
            return Err(Error::NotExact("first map is not injective".into()));
        }
        if !pi.is_surjective() {
            return Err(Error::NotExact("second map is not surjective".into()));
        }
        if !pi.compose(&iota).is_zero() {
            return Err(Error::NotExact("composite is not zero".into()));
        }
        let y = iota.target();
        for v in 0..y.dims().len() {
            if iota.block(v).rank() + pi.block(v).rank() != y.dims()[v] {
                return Err(Error::NotExact(format!("image and kernel differ at vertex {v}")));
            }
        }
        Ok(ShortExactSequence { iota, pi })
    }

    /// `0 → X → X ⊕ Z → Z → 0`.
    pub fn split(x: &Module, z: &Module) -> Result<Self> {
        let s = Module::direct_sum(&[x.clone(), z.clone()])?;
        ShortExactSequence::new(s.inclusions[0].clone(), s.projections[1].clone())
    }

    pub fn iota(&self) -> &Morphism {
        &self.iota
    }
    pub fn pi(&self) -> &Morphism {
        &self.pi
    }
    pub fn left(&self) -> &Module {
        self.iota.source()
    }
    pub fn middle(&self) -> &Module {
        self.iota.target()
    }
    pub fn right(&self) -> &Module {
        self.pi.target()
    }

    /// A section of the epimorphism, if the sequence splits.
    pub fn section(&self) -> Result<Option<Morphism>> {
        self.pi.lift(&Morphism::identity(self.right()))
    }

    pub fn is_split(&self) -> Result<bool> {
        Ok(self.section()?.is_some())
    }

    /// `D(ξ): 0 → DZ → DY → DX → 0` over the opposite algebra.
    pub fn dual(&self) -> ShortExactSequence {
        let op = alloc::sync::Arc::new(self.middle().algebra().opposite());
        let (dx, dy, dz) = (
            self.left().dual_over(op.clone()),
            self.middle().dual_over(op.clone()),
            self.right().dual_over(op),
        );
        ShortExactSequence { iota: self.pi.dual_between(&dz, &dy), pi: self.iota.dual_between(&dy, &dx) }
    }
}
