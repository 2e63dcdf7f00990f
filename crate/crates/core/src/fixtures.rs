//! Small algebras with hand-listed indecomposable modules, used by the
//! verification suites and the CLI.

use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::{Algebra, Quiver, Relation};
use crate::field::Field;
use crate::matrix::Matrix;
use crate::module::Module;

#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: &'static str,
    pub algebra: Arc<Algebra>,
    pub modules: Vec<(String, Module)>,
}

impl Fixture {
    pub fn module(&self, name: &str) -> &Module {
        &self.modules.iter().find(|(n, _)| n == name).expect("fixture module").1
    }
}

fn m(f: Field, rows: &[&[i64]], r: usize, c: usize) -> Matrix {
    if rows.is_empty() {
        Matrix::zeros(f, r, c)
    } else {
        Matrix::from_i64(f, rows)
    }
}

fn module(alg: &Arc<Algebra>, dims: &[usize], arrows: Vec<Matrix>) -> Module {
    Module::from_arrows(alg.clone(), dims.to_vec(), arrows).expect("fixture module is valid")
}

/// Shift matrix with ones below the diagonal (`x` acting on `k[x]/x^n`).
fn shift(f: Field, n: usize) -> Matrix {
    Matrix::from_fn(f, n, n, |i, j| if i == j + 1 { f.one() } else { f.zero() })
}

/// `k[x]/(x^n)` as a one-loop quiver algebra.
pub fn truncated_polynomial(f: Field, n: usize) -> Arc<Algebra> {
    let q = Quiver::with_vertices(1, &[("x", 0, 0)]).unwrap();
    let word: Vec<&str> = vec!["x"; n];
    Arc::new(Algebra::bound_quiver(q, vec![Relation::zero_path(f, &word)], f).unwrap())
}

pub fn dual_numbers(f: Field) -> Fixture {
    let alg = truncated_polynomial(f, 2);
    let s = module(&alg, &[1], vec![Matrix::zeros(f, 1, 1)]);
    let l = module(&alg, &[2], vec![shift(f, 2)]);
    Fixture { name: "F1", algebra: alg, modules: vec![("S".into(), s), ("L".into(), l)] }
}

pub fn a2(f: Field) -> Fixture {
    let q = Quiver::with_vertices(2, &[("a", 0, 1)]).unwrap();
    let alg = Arc::new(Algebra::bound_quiver(q, vec![], f).unwrap());
    let s1 = module(&alg, &[1, 0], vec![m(f, &[], 0, 1)]);
    let s2 = module(&alg, &[0, 1], vec![m(f, &[], 1, 0)]);
    let p1 = module(&alg, &[1, 1], vec![m(f, &[&[1]], 1, 1)]);
    Fixture { name: "F2", algebra: alg, modules: vec![("S1".into(), s1), ("S2".into(), s2), ("P1".into(), p1)] }
}

pub fn kronecker_algebra(f: Field) -> Arc<Algebra> {
    let q = Quiver::with_vertices(2, &[("a", 0, 1), ("b", 0, 1)]).unwrap();
    Arc::new(Algebra::bound_quiver(q, vec![], f).unwrap())
}

pub fn kronecker(f: Field) -> Fixture {
    let alg = kronecker_algebra(f);
    let mut mods: Vec<(String, Module)> = Vec::new();
    let mut add = |name: &str, dims: &[usize], a: Matrix, b: Matrix| {
        mods.push((name.to_string(), module(&alg, dims, vec![a, b])));
    };
    add("P2", &[0, 1], m(f, &[], 1, 0), m(f, &[], 1, 0));
    add("P1", &[1, 2], m(f, &[&[1], &[0]], 2, 1), m(f, &[&[0], &[1]], 2, 1));
    add("P3", &[2, 3], m(f, &[&[1, 0], &[0, 1], &[0, 0]], 3, 2), m(f, &[&[0, 0], &[1, 0], &[0, 1]], 3, 2));
    add("I1", &[1, 0], m(f, &[], 0, 1), m(f, &[], 0, 1));
    add("I2", &[2, 1], m(f, &[&[1, 0]], 1, 2), m(f, &[&[0, 1]], 1, 2));
    add("I3", &[3, 2], m(f, &[&[1, 0, 0], &[0, 1, 0]], 2, 3), m(f, &[&[0, 1, 0], &[0, 0, 1]], 2, 3));
    add("R0", &[1, 1], m(f, &[&[1]], 1, 1), m(f, &[&[0]], 1, 1));
    add("R1", &[1, 1], m(f, &[&[1]], 1, 1), m(f, &[&[1]], 1, 1));
    add("Rinf", &[1, 1], m(f, &[&[0]], 1, 1), m(f, &[&[1]], 1, 1));
    add("R0x2", &[2, 2], m(f, &[&[1, 0], &[0, 1]], 2, 2), m(f, &[&[0, 0], &[1, 0]], 2, 2));
    Fixture { name: "F3", algebra: alg, modules: mods }
}

pub fn cubic(f: Field) -> Fixture {
    let alg = truncated_polynomial(f, 3);
    let mods = (1..=3)
        .map(|j| (alloc::format!("M{j}"), module(&alg, &[j], vec![shift(f, j)])))
        .collect();
    Fixture { name: "F4", algebra: alg, modules: mods }
}

/// All four fixture algebras over one field.
pub fn all(f: Field) -> Vec<Fixture> {
    vec![dual_numbers(f), a2(f), kronecker(f), cubic(f)]
}
