use alloc::vec::Vec;

use super::*;
use crate::field::Field;
use crate::fixtures::{self, Fixture};
use crate::matrix::unit;
use crate::module::find_isomorphism;

fn q() -> Field {
    Field::Rationals
}

fn first_extension(c: &Module, x: &Module) -> ShortExactSequence {
    ext1(c, x).unwrap().basis_sequences().unwrap().remove(0)
}

fn all_sequences(f: &Fixture) -> Vec<ShortExactSequence> {
    let mut out = Vec::new();
    for (_, c) in &f.modules {
        for (_, x) in &f.modules {
            out.extend(ext1(c, x).unwrap().basis_sequences().unwrap());
        }
    }
    out
}

#[test]
fn evaluation_examples() {
    let fx = fixtures::a2(q());
    let p1 = fx.module("P1");
    let id = FpFunctor::contravariant(Morphism::identity(p1));
    let zero = FpFunctor::contravariant(Morphism::zero(&Module::zero(fx.algebra.clone()), p1));
    for (_, m) in &fx.modules {
        assert_eq!(id.evaluate(m).unwrap().dim(), 0);
        assert_eq!(zero.evaluate(m).unwrap().dim(), hom(m, p1).unwrap().dim());
    }
    let f1 = fixtures::dual_numbers(q());
    let s = f1.module("S");
    let xi = first_extension(s, s);
    assert_eq!(xi.middle().dim(), 2);
    assert_eq!(defects(&xi).contra.evaluate(s).unwrap().dim(), 1);
}

#[test]
fn a2_defects() {
    let fx = fixtures::a2(q());
    let (s1, s2, p1) = (fx.module("S1"), fx.module("S2"), fx.module("P1"));
    let xi = first_extension(s1, s2);
    assert!(find_isomorphism(xi.middle(), p1, 0).unwrap().is_some());
    let d = defects(&xi);
    assert_eq!(d.contra.evaluate(s1).unwrap().dim(), 1);
    assert_eq!(d.contra.evaluate(p1).unwrap().dim(), 0);
    assert_eq!(d.cov.evaluate(s2).unwrap().dim(), 1);
}

#[test]
fn split_sequences_have_no_defect() {
    for f in fixtures::all(q()) {
        for (_, a) in &f.modules {
            let xi = ShortExactSequence::split(a, a).unwrap();
            assert!(xi.is_split().unwrap());
            let d = defects(&xi);
            for (_, m) in &f.modules {
                assert_eq!(d.contra.evaluate(m).unwrap().dim(), 0);
                assert_eq!(d.cov.evaluate(m).unwrap().dim(), 0);
            }
            let swapped = defect_duality_swap(&d);
            assert_eq!(defect_duality_swap(&swapped), d);
        }
    }
}

#[test]
fn defects_detect_splitting() {
    for f in fixtures::all(q()) {
        for xi in all_sequences(&f) {
            let d = defects(&xi);
            assert!(!xi.is_split().unwrap());
            let contra = f.modules.iter().any(|(_, m)| d.contra.evaluate(m).unwrap().dim() > 0);
            let cov = f.modules.iter().any(|(_, m)| d.cov.evaluate(m).unwrap().dim() > 0);
            assert!(contra && cov);
        }
    }
}

#[test]
fn defect_identities_and_exactness() {
    for f in fixtures::all(q()) {
        for xi in all_sequences(&f) {
            let d = defects(&xi);
            for (_, m) in &f.modules {
                let ids = d.identities(m).unwrap();
                assert_eq!(ids.cov, ids.cov_stable);
                assert_eq!(ids.contra, ids.contra_ext);
                // 0 → Hom(Z,M) → Hom(Y,M) → Hom(X,M) → ξ_*(M) → 0
                let hz = hom(xi.right(), m).unwrap().dim();
                let hy = hom(xi.middle(), m).unwrap().dim();
                let hx = hom(xi.left(), m).unwrap().dim();
                assert_eq!(ids.cov + hy, hx + hz);
            }
        }
    }
}

#[test]
fn swap_exchanges_defects() {
    let fx = fixtures::a2(q());
    let xi = first_extension(fx.module("S1"), fx.module("S2"));
    let d = defects(&xi);
    let s = defect_duality_swap(&d);
    assert_eq!(defect_duality_swap(&s), d);
    let op = s.seq.middle().algebra().clone();
    for (_, m) in &fx.modules {
        let dm = m.dual_over(op.clone());
        assert_eq!(s.contra.evaluate(&dm).unwrap().dim(), d.cov.evaluate(m).unwrap().dim());
        assert_eq!(s.cov.evaluate(&dm).unwrap().dim(), d.contra.evaluate(m).unwrap().dim());
    }
}

#[test]
fn eff_examples() {
    let fx = fixtures::a2(q());
    let (s1, s2, p1) = (fx.module("S1"), fx.module("S2"), fx.module("P1"));
    let xi = first_extension(s1, s2);
    let epi = FpFunctor::contravariant(xi.pi().clone());
    assert_eq!(eff(&epi).unwrap().presenting.target().dims(), s1.dims());
    let mono = eff(&FpFunctor::contravariant(xi.iota().clone())).unwrap();
    assert!(mono.presenting.is_isomorphism());
    let zero = eff(&FpFunctor::contravariant(Morphism::zero(s2, p1))).unwrap();
    for (_, m) in &fx.modules {
        assert_eq!(mono.evaluate(m).unwrap().dim(), 0);
        assert_eq!(zero.evaluate(m).unwrap().dim(), 0);
    }
    assert!(eff(&FpFunctor::covariant(xi.pi().clone())).is_err());
}

#[test]
fn eff_agrees_on_effaceable_values() {
    // Coker Hom(−, ψ) with ψ epi is effaceable, so eff leaves it unchanged
    for f in fixtures::all(q()) {
        for xi in all_sequences(&f) {
            let fun = FpFunctor::contravariant(xi.pi().clone());
            let e = eff(&fun).unwrap();
            for (_, m) in &f.modules {
                assert_eq!(e.evaluate(m).unwrap().dim(), fun.evaluate(m).unwrap().dim());
            }
        }
    }
}

#[test]
fn eff_is_right_adjoint() {
    for f in fixtures::all(q()) {
        let seqs = all_sequences(&f);
        for xi in &seqs {
            let g = FpFunctor::contravariant(xi.pi().clone());
            for other in &seqs {
                for phi in [other.iota(), other.pi()] {
                    let fun = FpFunctor::contravariant(phi.clone());
                    let e = eff(&fun).unwrap();
                    assert_eq!(natural_transformations(&g, &fun).unwrap(), natural_transformations(&g, &e).unwrap());
                }
            }
        }
    }
}

#[test]
fn coinduction_examples() {
    let f1 = fixtures::dual_numbers(q());
    let s = f1.module("S");
    let ctx = EndContext::new(s).unwrap();
    assert_eq!(coind_eval(&ctx, &ctx.gamma_regular(), s).unwrap().dim(), 1);
    let zero = Module::zero(f1.algebra.clone());
    assert_eq!(coind_eval(&ctx, &ctx.dual_gamma(), &zero).unwrap().dim(), 0);
    let fx = fixtures::a2(q());
    let ctx = EndContext::new(fx.module("S1")).unwrap();
    assert_eq!(coind_eval(&ctx, &ctx.dual_gamma(), fx.module("P1")).unwrap().dim(), 0);
    let wrong = EndContext::new(f1.module("L")).unwrap();
    assert!(coind_eval(&ctx, &wrong.dual_gamma(), fx.module("P1")).is_err());
}

#[test]
fn coinduction_is_functorial() {
    let f3 = fixtures::kronecker(q());
    let ctx = EndContext::new(f3.module("R0x2")).unwrap();
    let i = ctx.dual_gamma();
    for (_, x) in &f3.modules {
        let cx = coind_eval(&ctx, &i, x).unwrap();
        assert_eq!(cx.dim(), hom(&ctx.c, x).unwrap().dim());
        for (_, y) in &f3.modules {
            let cy = coind_eval(&ctx, &i, y).unwrap();
            for (_, z) in &f3.modules {
                let cz = coind_eval(&ctx, &i, z).unwrap();
                for u in hom(x, y).unwrap().basis().iter().take(2) {
                    for v in hom(y, z).unwrap().basis().iter().take(2) {
                        let lhs = cx.induced(&v.compose(u), &cz).unwrap();
                        let rhs = cx.induced(u, &cy).unwrap().mul(&cy.induced(v, &cz).unwrap());
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }
}

#[test]
fn ext_examples() {
    let f1 = fixtures::dual_numbers(q());
    let s = f1.module("S");
    assert_eq!(ext1(s, s).unwrap().dim(), 1);
    let p = Module::regular(&f1.algebra);
    assert_eq!(ext1(&p, s).unwrap().dim(), 0);
    let fx = fixtures::a2(q());
    assert_eq!(ext1(fx.module("S1"), fx.module("S2")).unwrap().dim(), 1);
    assert_eq!(ext1(fx.module("S1"), fx.module("S1")).unwrap().dim(), 0);
}

#[test]
fn ext_realizations_round_trip() {
    for field in [q(), Field::prime(5).unwrap()] {
        for f in fixtures::all(field) {
            for (_, c) in &f.modules {
                for (_, x) in &f.modules {
                    let e = ext1(c, x).unwrap();
                    for k in 0..e.dim() {
                        let v = unit(field, e.dim(), k);
                        let seq = e.realize(&v).unwrap();
                        assert!(!seq.is_split().unwrap());
                        assert_eq!(e.class_of(&seq).unwrap(), v);
                    }
                    let zero = e.realize(&alloc::vec![field.zero(); e.dim()]).unwrap();
                    assert!(zero.is_split().unwrap());
                }
            }
        }
    }
}

#[test]
fn ext_is_additive() {
    for f in fixtures::all(q()) {
        for (_, c) in &f.modules {
            for (_, x) in &f.modules {
                for (_, y) in &f.modules {
                    let sum = x.sum_with(y).unwrap();
                    let d = ext1(c, x).unwrap().dim() + ext1(c, y).unwrap().dim();
                    assert_eq!(ext1(c, &sum).unwrap().dim(), d);
                    assert_eq!(ext1(&sum, c).unwrap().dim(), ext1(x, c).unwrap().dim() + ext1(y, c).unwrap().dim());
                }
            }
        }
    }
}

#[test]
fn ext_module_structure() {
    for f in fixtures::all(q()) {
        for (_, c) in &f.modules {
            let ctx = EndContext::new(c).unwrap();
            for (_, x) in &f.modules {
                let (e, m) = ext_module(&ctx, x).unwrap();
                assert_eq!(m.dim(), e.dim());
                m.validate().unwrap();
            }
        }
    }
}
