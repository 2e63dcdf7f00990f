use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use super::decompose::{fitting_decompose, DEFAULT_SEED};
use super::*;
use crate::fixtures;
use crate::matrix::Matrix;

fn q() -> Field {
    Field::Rationals
}

#[test]
fn hom_examples() {
    let fx = fixtures::a2(q());
    let (s1, s2, p1) = (fx.module("S1"), fx.module("S2"), fx.module("P1"));
    assert_eq!(hom(s1, s2).unwrap().dim(), 0);
    assert_eq!(hom(p1, p1).unwrap().dim(), 1);
    assert_eq!(hom(s2, p1).unwrap().dim(), 1);
    assert_eq!(hom(p1, s1).unwrap().dim(), 1);
    for f in fixtures::all(q()) {
        let reg = Module::regular(&f.algebra);
        for (_, m) in &f.modules {
            assert_eq!(hom(&reg, m).unwrap().dim(), m.dim());
        }
    }
}

#[test]
fn kernel_cokernel_image() {
    let fx = fixtures::a2(q());
    let p1 = fx.module("P1");
    let (k, _) = Morphism::identity(p1).kernel();
    assert!(k.is_zero());
    let s2 = fx.module("S2");
    let (c, _) = Morphism::zero(s2, p1).cokernel();
    assert_eq!(&c, p1);
    let space = hom(p1, fx.module("S1")).unwrap();
    let epi = &space.basis()[0];
    let (im, _) = epi.image();
    assert_eq!(im.dims(), &[1, 0]);
}

#[test]
fn projectives_injectives_simples() {
    let fx = fixtures::a2(q());
    let a = &fx.algebra;
    assert_eq!(Module::projective_at(a, 0).unwrap().dims(), &[1, 1]);
    assert_eq!(Module::projective_at(a, 1).unwrap().dims(), &[0, 1]);
    assert_eq!(Module::injective_at(a, 0).unwrap().dims(), &[1, 0]);
    assert_eq!(Module::injective_at(a, 1).unwrap().dims(), &[1, 1]);
    assert_eq!(Module::simple_at(a, 1).unwrap().dims(), &[0, 1]);
    let f1 = fixtures::dual_numbers(q());
    let p = Module::projective_at(&f1.algebra, 0).unwrap();
    let i = Module::injective_at(&f1.algebra, 0).unwrap();
    assert_eq!(p.dim(), 2);
    assert_eq!(i.dim(), 2);
    assert!(find_isomorphism(&p, &i, 1).unwrap().is_some());
    for f in fixtures::all(q()) {
        for v in 0..f.algebra.vertex_count() {
            let p = Module::projective_at(&f.algebra, v).unwrap();
            let inj = Module::injective_at(&f.algebra, v).unwrap();
            for (_, m) in &f.modules {
                assert_eq!(hom(&p, m).unwrap().dim(), m.dims()[v]);
                assert_eq!(hom(m, &inj).unwrap().dim(), m.dims()[v]);
            }
        }
    }
}

#[test]
fn covers_and_envelopes() {
    let f1 = fixtures::dual_numbers(q());
    let s = f1.module("S");
    let c = s.projective_cover().unwrap();
    assert_eq!(c.morphism.source().dim(), 2);
    assert_eq!(c.morphism.kernel().0.dim(), 1);
    let env = s.injective_envelope().unwrap();
    assert_eq!(env.target().dim(), 2);
    assert!(env.is_injective());
    let fx = fixtures::a2(q());
    let c = fx.module("S1").projective_cover().unwrap();
    assert_eq!(c.morphism.source().dims(), &[1, 1]);
    assert_eq!(c.morphism.kernel().0.dims(), &[0, 1]);
    let p1 = fx.module("P1");
    assert!(p1.projective_cover().unwrap().morphism.is_isomorphism());
    let e = fx.module("S2").injective_envelope().unwrap();
    assert_eq!(e.target().dims(), &[1, 1]);
    let e = fx.module("S1").injective_envelope().unwrap();
    assert!(e.is_isomorphism());
}

#[test]
fn cover_minimality() {
    for f in fixtures::all(q()) {
        for (_, m) in &f.modules {
            let eps = m.projective_cover().unwrap().morphism;
            let p = eps.source().clone();
            let end = hom(&p, &p).unwrap();
            for e in end.basis() {
                if eps.compose(e) == eps {
                    assert!(e.is_isomorphism());
                }
            }
        }
    }
}

#[test]
fn minimal_presentations() {
    let f1 = fixtures::dual_numbers(q());
    let pres = f1.module("S").minimal_presentation().unwrap();
    assert_eq!((pres.p1.dim(), pres.p0.dim()), (2, 2));
    assert_eq!(pres.d.rank(), 1);
    let fx = fixtures::a2(q());
    let pres = fx.module("P1").minimal_presentation().unwrap();
    assert!(pres.p1.is_zero());
    let pres = fx.module("S1").minimal_presentation().unwrap();
    assert_eq!(pres.p1.dims(), &[0, 1]);
}

#[test]
fn duals() {
    let fx = fixtures::a2(q());
    let p1 = fx.module("P1");
    let d = p1.dual();
    assert_eq!(d.side(), Side::Right);
    let inj = Module::injective_at(d.algebra(), 0).unwrap();
    assert!(find_isomorphism(&d, &inj, 1).unwrap().is_some());
    for f in fixtures::all(q()) {
        for (_, m) in &f.modules {
            assert_eq!(&m.dual().dual(), m);
        }
    }
}

#[test]
fn tensor_examples() {
    let f1 = fixtures::dual_numbers(q());
    let op = Arc::new(f1.algebra.opposite());
    let s = f1.module("S");
    let t = TensorSpace::new(&s.dual_over(op.clone()), s).unwrap();
    assert_eq!(t.dim(), 1);
    let reg_op = Module::regular(&op);
    for f in fixtures::all(q()) {
        let op = Arc::new(f.algebra.opposite());
        let reg = Module::regular(&op);
        for (_, m) in &f.modules {
            assert_eq!(TensorSpace::new(&reg, m).unwrap().dim(), m.dim());
            for v in 0..f.algebra.vertex_count() {
                let ev = Module::projective_at(&op, v).unwrap();
                assert_eq!(TensorSpace::new(&ev, m).unwrap().dim(), m.dims()[v]);
            }
        }
    }
    assert!(TensorSpace::new(&reg_op, &reg_op).is_err());
}

#[test]
fn star_of_regular_is_regular() {
    for f in fixtures::all(q()) {
        let op = Arc::new(f.algebra.opposite());
        let reg = Module::regular(&f.algebra);
        let star = hom_to_regular(&reg, &op).unwrap();
        assert_eq!(star.module.dim(), f.algebra.dim());
        let reg_op = Module::regular(&op);
        assert!(find_isomorphism(&star.module, &reg_op, 3).unwrap().is_some());
    }
}

#[test]
fn fitting_examples() {
    let f1 = fixtures::dual_numbers(q());
    let s = f1.module("S");
    let ss = s.sum_with(s).unwrap();
    let dec = fitting_decompose(&ss, DEFAULT_SEED).unwrap();
    assert_eq!(dec.len(), 2);
    for part in &dec.summands {
        assert!(find_isomorphism(&part.module, s, 0).unwrap().is_some());
        assert_eq!(part.projection.compose(&part.inclusion), Morphism::identity(&part.module));
    }
    let fx = fixtures::a2(q());
    assert_eq!(fitting_decompose(fx.module("P1"), 0).unwrap().len(), 1);
    assert!(fitting_decompose(&Module::zero(fx.algebra.clone()), 0).unwrap().is_empty());
    for field in [q(), Field::prime(5).unwrap()] {
        for f in fixtures::all(field) {
            for (_, m) in &f.modules {
                assert_eq!(fitting_decompose(m, 9).unwrap().len(), 1);
            }
            let reg = Module::regular(&f.algebra);
            let dec = fitting_decompose(&reg, 9).unwrap();
            assert_eq!(dec.len(), f.algebra.vertex_count());
            let total: usize = dec.summands.iter().map(|s| s.module.dim()).sum();
            assert_eq!(total, reg.dim());
        }
    }
}

#[test]
fn endomorphism_algebras() {
    let fx = fixtures::a2(q());
    assert_eq!(endomorphism_algebra(fx.module("S1")).unwrap().0.dim(), 1);
    let f1 = fixtures::dual_numbers(q());
    let (g, _) = endomorphism_algebra(f1.module("L")).unwrap();
    assert_eq!(g.dim(), 2);
    assert_eq!(g.radical().unwrap().dim(), 1);
    let s = f1.module("S");
    let (g, basis) = endomorphism_algebra(&s.sum_with(s).unwrap()).unwrap();
    assert_eq!(g.dim(), 4);
    assert_eq!(g.idempotents().unwrap().len(), 2);
    for i in 0..4 {
        for j in 0..4 {
            let prod = basis.basis()[i].compose(&basis.basis()[j]);
            assert_eq!(basis.coordinates(&prod), g.product_vec(i, j));
        }
    }
}

#[test]
fn invalid_modules_are_diagnosed() {
    let f1 = fixtures::dual_numbers(q());
    let err = Module::from_arrows(f1.algebra.clone(), vec![1], vec![Matrix::identity(q(), 1)]).unwrap_err();
    assert_eq!(err, Error::InvalidModule(vec!["relation x·x acts as 1 ≠ 0".into()]));
    let fx = fixtures::a2(q());
    let err = Module::from_arrows(fx.algebra.clone(), vec![1, 1], vec![Matrix::zeros(q(), 2, 1)]).unwrap_err();
    assert!(matches!(err, Error::InvalidModule(ref v) if v[0].contains("needs a 1×1 matrix")));
    let bad: Vec<Matrix> = vec![Matrix::identity(q(), 1)];
    let s1 = fx.module("S1");
    let p1 = fx.module("P1");
    assert!(Morphism::new(s1.clone(), p1.clone(), vec![bad[0].clone(), Matrix::zeros(q(), 1, 0)]).is_err());
}

#[test]
fn local_endomorphism_ring_with_larger_residue_field() {
    // a = 1, b = companion of x² − 2: End is ℚ(√2), no eigenvalue in ℚ
    let q = Field::Rationals;
    let alg = crate::fixtures::kronecker_algebra(q);
    let a = Matrix::identity(q, 2);
    let b = Matrix::from_i64(q, &[&[0, 2], &[1, 0]]);
    let m = Module::from_arrows(alg.clone(), vec![2, 2], vec![a.clone(), b.clone()]).unwrap();
    assert_eq!(hom(&m, &m).unwrap().dim(), 2);
    assert!(decompose::is_indecomposable(&m, 0).unwrap());
    // over 𝔽_7, 2 = 3² so the same pencil splits
    let f7 = Field::prime(7).unwrap();
    let alg = crate::fixtures::kronecker_algebra(f7);
    let m = Module::from_arrows(alg, vec![2, 2], vec![Matrix::identity(f7, 2), Matrix::from_i64(f7, &[&[0, 2], &[1, 0]])]).unwrap();
    assert_eq!(fitting_decompose(&m, 0).unwrap().len(), 2);
}
