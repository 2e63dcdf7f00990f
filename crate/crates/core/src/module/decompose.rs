//! Fitting decomposition, locality, isomorphism search and endomorphism
//! algebras.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{hom, HomSpace, Module, Morphism};
use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::matrix::Subspace;
use crate::poly::charpoly;

pub const DEFAULT_SEED: u64 = 0x5eed;
pub const DEFAULT_TRIALS: usize = 32;

#[derive(Clone, Debug)]
pub struct Summand {
    pub module: Module,
    pub inclusion: Morphism,
    pub projection: Morphism,
}

#[derive(Clone, Debug)]
pub struct Decomposition {
    pub summands: Vec<Summand>,
}

impl Decomposition {
    pub fn len(&self) -> usize {
        self.summands.len()
    }
    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }
    pub fn modules(&self) -> Vec<Module> {
        self.summands.iter().map(|s| s.module.clone()).collect()
    }
}

pub(crate) fn random_scalar<R: Rng>(field: Field, rng: &mut R) -> Scalar {
    match field {
        Field::Rationals => field.from_i64(rng.gen_range(-3..=3)),
        Field::Prime(p) => field.element(rng.gen_range(0..p)),
    }
}

/// Split `m` into indecomposable summands with local endomorphism rings.
pub fn fitting_decompose(m: &Module, seed: u64) -> Result<Decomposition> {
    fitting_decompose_with(m, seed, DEFAULT_TRIALS)
}

pub fn fitting_decompose_with(m: &Module, seed: u64, trials: usize) -> Result<Decomposition> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut summands = Vec::new();
    let id = Morphism::identity(m);
    split_rec(m, id.clone(), id, &mut rng, trials, &mut summands)?;
    Ok(Decomposition { summands })
}

fn split_rec(
    n: &Module,
    inc: Morphism,
    proj: Morphism,
    rng: &mut ChaCha8Rng,
    trials: usize,
    out: &mut Vec<Summand>,
) -> Result<()> {
    if n.is_zero() {
        return Ok(());
    }
    match split_once(n, rng, trials)? {
        None => out.push(Summand { module: n.clone(), inclusion: inc, projection: proj }),
        Some(parts) => {
            for (i, p) in parts {
                split_rec(i.source(), inc.compose(&i), p.compose(&proj), rng, trials, out)?;
            }
        }
    }
    Ok(())
}

type Parts = Vec<(Morphism, Morphism)>;

/// `None` when `n` is certified local; otherwise two complementary
/// summands as (inclusion, projection) pairs.
fn split_once(n: &Module, rng: &mut ChaCha8Rng, trials: usize) -> Result<Option<Parts>> {
    let end = hom(n, n)?;
    if end.dim() == 1 {
        return Ok(None);
    }
    let field = n.field();
    let mut shifts = Vec::new();
    let mut opaque = Vec::new();
    for f in end.basis() {
        match try_split(n, f, rng) {
            Attempt::Split(p) => return Ok(Some(p)),
            Attempt::Shift(s) => shifts.push(s),
            Attempt::Opaque => opaque.push(f.clone()),
        }
    }
    if opaque.is_empty() && is_nilpotent_ideal(&end, &shifts) {
        return Ok(None);
    }
    if opaque.iter().any(|f| residue_field_certificate(&end, f)) {
        return Ok(None);
    }
    for _ in 0..trials {
        let coeffs: Vec<Scalar> = (0..end.dim()).map(|_| random_scalar(field, rng)).collect();
        let f = end.combine(&coeffs);
        match try_split(n, &f, rng) {
            Attempt::Split(p) => return Ok(Some(p)),
            Attempt::Opaque if residue_field_certificate(&end, &f) => return Ok(None),
            _ => {}
        }
    }
    Err(Error::Undecided(trials))
}

enum Attempt {
    Split(Parts),
    /// `f − λ` is nilpotent.
    Shift(Morphism),
    /// No eigenvalue in the base field.
    Opaque,
}

fn try_split(n: &Module, f: &Morphism, rng: &mut ChaCha8Rng) -> Attempt {
    let g = f.global();
    let roots = charpoly(&g).roots(rng).unwrap_or_default();
    for lam in &roots {
        let h = f.sub(&Morphism::identity(n).scale(lam));
        let hp = power(&h, n.dim());
        if hp.is_zero() {
            if roots.len() == 1 {
                return Attempt::Shift(h);
            }
            continue;
        }
        if let Some(p) = fitting_split(&hp) {
            return Attempt::Split(p);
        }
    }
    Attempt::Opaque
}

fn power(h: &Morphism, e: usize) -> Morphism {
    let mut r = Morphism::identity(h.source());
    let mut b = h.clone();
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            r = r.compose(&b);
        }
        b = b.compose(&b);
        e >>= 1;
    }
    r
}

/// `M = ker(h) ⊕ im(h)` for `h` a stable power of an endomorphism.
fn fitting_split(h: &Morphism) -> Option<Parts> {
    let n = h.source();
    let (k, kinc) = h.kernel();
    let (i, iinc) = h.image();
    if k.is_zero() || i.is_zero() {
        return None;
    }
    let both = kinc.global().hstack(&iinc.global());
    let inv = both.inverse()?;
    let kd = k.dim();
    let kp = Morphism::from_global(n.clone(), k, &inv.block(0, kd, 0, n.dim()));
    let ip = Morphism::from_global(n.clone(), i, &inv.block(kd, inv.rows() - kd, 0, n.dim()));
    Some(vec![(kinc, kp), (iinc, ip)])
}

/// `End` is local with residue field `k[f]/(g)` when `g`, the squarefree
/// part of the characteristic polynomial of `f`, is irreducible, the ideal
/// generated by `g(f)` is nilpotent, and `k[f]` spans `End` modulo it.
fn residue_field_certificate(end: &HomSpace, f: &Morphism) -> bool {
    let Some(g) = charpoly(&f.global()).squarefree_part() else { return false };
    if g.is_irreducible() != Some(true) {
        return false;
    }
    let field = end.field();
    let d = end.dim();
    let id = Morphism::identity(f.source());
    let gf = g.coeffs().iter().rev().fold(Morphism::zero(f.source(), f.source()), |acc, c| {
        f.compose(&acc).add(&id.scale(c))
    });
    let mut sides = vec![id.clone()];
    sides.extend(end.basis().iter().cloned());
    let gens = sides.iter().flat_map(|a| sides.iter().map(|b| end.coordinates(&a.compose(&gf).compose(b)))).collect();
    let ideal = Subspace::span(field, d, gens);
    let mut powers = vec![end.coordinates(&id)];
    let mut p = id;
    for _ in 1..g.degree().unwrap_or(0) {
        p = p.compose(f);
        powers.push(end.coordinates(&p));
    }
    if ideal.sum(&Subspace::span(field, d, powers)).dim() != d {
        return false;
    }
    nilpotent(end, &ideal)
}

fn nilpotent(end: &HomSpace, ideal: &Subspace) -> bool {
    let field = end.field();
    let d = end.dim();
    let elems: Vec<Morphism> = ideal.basis().iter().map(|c| end.combine(c)).collect();
    let mut power = elems.clone();
    for _ in 0..=d {
        if power.is_empty() {
            return true;
        }
        let next: Vec<Vec<Scalar>> =
            power.iter().flat_map(|p| elems.iter().map(move |x| p.compose(x))).map(|m| end.coordinates(&m)).collect();
        let span = Subspace::span(field, d, next);
        power = span.basis().iter().map(|c| end.combine(c)).collect();
    }
    power.is_empty()
}

/// Whether the span of `gens` inside `End` is a nilpotent two-sided ideal
/// of codimension one (which certifies that `End` is local with residue
/// field `k`).
fn is_nilpotent_ideal(end: &HomSpace, gens: &[Morphism]) -> bool {
    let field = end.field();
    let d = end.dim();
    let ideal = Subspace::span(field, d, gens.iter().map(|g| end.coordinates(g)).collect());
    if ideal.dim() + 1 != d {
        return false;
    }
    let elems: Vec<Morphism> = ideal.basis().iter().map(|c| end.combine(c)).collect();
    for x in &elems {
        for b in end.basis() {
            if !ideal.contains(&end.coordinates(&x.compose(b))) || !ideal.contains(&end.coordinates(&b.compose(x))) {
                return false;
            }
        }
    }
    nilpotent(end, &ideal)
}

/// Whether `m` is nonzero with a local endomorphism ring.
pub fn is_indecomposable(m: &Module, seed: u64) -> Result<bool> {
    Ok(fitting_decompose(m, seed)?.len() == 1)
}

/// An isomorphism `m → n` if one exists. Exhaustive over the Hom basis,
/// which suffices when either side is indecomposable; otherwise random
/// combinations are tried as well.
pub fn find_isomorphism(m: &Module, n: &Module, seed: u64) -> Result<Option<Morphism>> {
    if m.dims() != n.dims() {
        return Ok(None);
    }
    if m.is_zero() {
        return Ok(Some(Morphism::zero(m, n)));
    }
    let space = hom(m, n)?;
    for f in space.basis() {
        if f.is_isomorphism() {
            return Ok(Some(f.clone()));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..DEFAULT_TRIALS {
        let c: Vec<Scalar> = (0..space.dim()).map(|_| random_scalar(m.field(), &mut rng)).collect();
        let f = space.combine(&c);
        if f.is_isomorphism() {
            return Ok(Some(f));
        }
    }
    Ok(None)
}

/// `End_A(M)` with product `b_i · b_j = b_i ∘ b_j`, together with the Hom
/// basis realizing its basis.
pub fn endomorphism_algebra(m: &Module) -> Result<(Algebra, HomSpace)> {
    let end = hom(m, m)?;
    let d = end.dim();
    let table = (0..d)
        .map(|i| (0..d).map(|j| end.coordinates(&end.basis()[i].compose(&end.basis()[j]))).collect())
        .collect();
    let unit = end.coordinates(&Morphism::identity(m));
    let alg = Algebra::from_structure_constants(m.field(), table, unit)?;
    Ok((alg, end))
}

/// Primitive orthogonal idempotents summing to one, from a decomposition
/// of the regular module.
pub(crate) fn primitive_idempotents(alg: &Algebra) -> Result<Vec<(usize, Vec<Scalar>)>> {
    let a = Arc::new(alg.clone());
    let reg = Module::regular(&a);
    let dec = fitting_decompose(&reg, DEFAULT_SEED)?;
    let one = alg.unit().to_vec();
    let mut out = Vec::new();
    for s in &dec.summands {
        let e = s.inclusion.apply(&s.projection.apply(&one));
        out.push((0, e));
    }
    Ok(out)
}
