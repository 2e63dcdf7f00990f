//! Brute-force dimensions for quiver representations, sharing nothing with
//! the library but the scalar type and the module data.
//!
//! Ext¹ is `Z/B` for cocycles of block upper-triangular extensions of
//! representations; stable Homs quotient by the span of every composite
//! through an indecomposable projective (or injective).

#![allow(dead_code)]

use art_core::algebra::Algebra;
use art_core::{Field, Module, Scalar};

pub type Mat = Vec<Vec<Scalar>>;

fn zeros(f: Field, r: usize, c: usize) -> Mat {
    vec![vec![f.zero(); c]; r]
}

fn mul(f: Field, a: &Mat, b: &Mat, inner: usize, cols: usize) -> Mat {
    let mut out = zeros(f, a.len(), cols);
    for (i, row) in a.iter().enumerate() {
        for k in 0..inner {
            if row[k].is_zero() {
                continue;
            }
            for j in 0..cols {
                out[i][j] = out[i][j].clone() + row[k].clone() * b[k][j].clone();
            }
        }
    }
    out
}

/// Row reduction without any pivoting strategy beyond "first nonzero".
pub fn rank(rows: &[Vec<Scalar>]) -> usize {
    let mut m: Mat = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].inv();
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let k = m[i][c].clone() * inv.clone();
                let pivot_row = m[r].clone();
                for (x, y) in m[i].iter_mut().zip(&pivot_row) {
                    *x = x.clone() - y.clone() * k.clone();
                }
            }
        }
        r += 1;
    }
    r
}

/// A representation: vertex dimensions and per-arrow blocks.
pub struct Rep {
    pub field: Field,
    pub dims: Vec<usize>,
    pub arrows: Vec<(usize, usize, Mat)>,
}

impl Rep {
    pub fn of(m: &Module) -> Rep {
        let alg = m.algebra();
        let quiver = alg.quiver().expect("oracle needs a quiver algebra");
        let gens = alg.generators();
        let arrows = quiver
            .arrows
            .iter()
            .map(|a| {
                let g = gens.iter().find(|g| g.label == a.id).expect("arrow generator");
                let blk = m.action(g.element);
                let rows = (0..blk.rows()).map(|i| blk.row(i).to_vec()).collect();
                (a.source, a.target, rows)
            })
            .collect();
        Rep { field: m.field(), dims: m.dims().to_vec(), arrows }
    }
}

/// Enumerate the unit vectors of `⊕_v Hom_k(k^{m_v}, k^{n_v})`.
fn vertex_units(f: Field, m: &[usize], n: &[usize]) -> Vec<Vec<Mat>> {
    let mut out = Vec::new();
    for v in 0..m.len() {
        for i in 0..n[v] {
            for j in 0..m[v] {
                let mut blocks: Vec<Mat> = (0..m.len()).map(|w| zeros(f, n[w], m[w])).collect();
                blocks[v][i][j] = f.one();
                out.push(blocks);
            }
        }
    }
    out
}

fn flatten(blocks: &[Mat]) -> Vec<Scalar> {
    blocks.iter().flat_map(|b| b.iter().flat_map(|r| r.iter().cloned())).collect()
}

/// Intertwining residuals `N_a F_s − F_t M_a` for vertex maps `F`.
fn residual(m: &Rep, n: &Rep, f_blocks: &[Mat]) -> Vec<Scalar> {
    let f = m.field;
    let mut out = Vec::new();
    for ((s, t, ma), (_, _, na)) in m.arrows.iter().zip(&n.arrows) {
        let left = mul(f, na, &f_blocks[*s], n.dims[*s], m.dims[*s]);
        let right = mul(f, &f_blocks[*t], ma, m.dims[*t], m.dims[*s]);
        for (lr, rr) in left.iter().zip(&right) {
            for (a, b) in lr.iter().zip(rr) {
                out.push(a.clone() - b.clone());
            }
        }
    }
    out
}

/// Kernel basis of the linear map whose values on unit inputs are `cols`.
fn kernel(f: Field, cols: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    let n = cols.len();
    let height = cols.first().map_or(0, Vec::len);
    // reduce [A | I] row-wise on the transpose: rows are images of units
    let mut rows: Mat = cols
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let mut r = c.clone();
            r.extend((0..n).map(|j| if i == j { f.one() } else { f.zero() }));
            r
        })
        .collect();
    let mut r = 0;
    for c in 0..height {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = rows[r][c].inv();
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let k = rows[i][c].clone() * inv.clone();
                for j in 0..rows[i].len() {
                    let t = rows[r][j].clone() * k.clone();
                    rows[i][j] = rows[i][j].clone() - t;
                }
            }
        }
        r += 1;
    }
    rows[r..].iter().map(|row| row[height..].to_vec()).collect()
}

fn combine(f: Field, units: &[Vec<Mat>], coeffs: &[Scalar]) -> Vec<Mat> {
    let mut out: Vec<Mat> = units[0].iter().map(|b| b.iter().map(|r| vec![f.zero(); r.len()]).collect()).collect();
    for (u, c) in units.iter().zip(coeffs) {
        if c.is_zero() {
            continue;
        }
        for (ob, ub) in out.iter_mut().zip(u) {
            for (orow, urow) in ob.iter_mut().zip(ub) {
                for (x, y) in orow.iter_mut().zip(urow) {
                    *x = x.clone() + c.clone() * y.clone();
                }
            }
        }
    }
    out
}

/// Homomorphisms as lists of vertex blocks.
pub fn hom_basis(m: &Rep, n: &Rep) -> Vec<Vec<Mat>> {
    let f = m.field;
    let units = vertex_units(f, &m.dims, &n.dims);
    if units.is_empty() {
        return Vec::new();
    }
    let cols: Vec<Vec<Scalar>> = units.iter().map(|u| residual(m, n, u)).collect();
    if cols[0].is_empty() {
        return units;
    }
    kernel(f, &cols).iter().map(|k| combine(f, &units, k)).collect()
}

pub fn hom_dim(m: &Rep, n: &Rep) -> usize {
    hom_basis(m, n).len()
}

fn compose(f: Field, g: &[Mat], h: &[Mat], mid: &[usize], src: &[usize]) -> Vec<Mat> {
    (0..g.len()).map(|v| mul(f, &g[v], &h[v], mid[v], src[v])).collect()
}

/// Dimension of the span of all composites `m → p → n`, over the given `p`.
pub fn factoring_dim(m: &Rep, n: &Rep, through: &[Rep]) -> usize {
    let f = m.field;
    let mut vecs = Vec::new();
    for p in through {
        let hs = hom_basis(m, p);
        let gs = hom_basis(p, n);
        for g in &gs {
            for h in &hs {
                vecs.push(flatten(&compose(f, g, h, &p.dims, &m.dims)));
            }
        }
    }
    if vecs.is_empty() {
        0
    } else {
        rank(&vecs)
    }
}

pub fn projectives(alg: &std::sync::Arc<Algebra>) -> Vec<Rep> {
    (0..alg.vertex_count()).map(|v| Rep::of(&Module::projective_at(alg, v).unwrap())).collect()
}

pub fn injectives(alg: &std::sync::Arc<Algebra>) -> Vec<Rep> {
    (0..alg.vertex_count()).map(|v| Rep::of(&Module::injective_at(alg, v).unwrap())).collect()
}

pub fn stable_proj_dim(m: &Module, n: &Module) -> usize {
    let (rm, rn) = (Rep::of(m), Rep::of(n));
    hom_dim(&rm, &rn) - factoring_dim(&rm, &rn, &projectives(m.algebra()))
}

pub fn stable_inj_dim(m: &Module, n: &Module) -> usize {
    let (rm, rn) = (Rep::of(m), Rep::of(n));
    hom_dim(&rm, &rn) - factoring_dim(&rm, &rn, &injectives(m.algebra()))
}

/// Product along a word of block upper-triangular arrows `[[X_a, H_a], [0, C_a]]`,
/// returning the off-diagonal block.
fn word_corner(c: &Rep, x: &Rep, h: &[Mat], word: &[usize]) -> Mat {
    let f = c.field;
    let (s0, _, _) = c.arrows[word[0]];
    // running product of the C parts and the corner
    let mut cp = identity(f, c.dims[s0]);
    let mut corner = zeros(f, x.dims[s0], c.dims[s0]);
    let mut cur = s0;
    for &a in word {
        let (s, t, ref ca) = c.arrows[a];
        assert_eq!(s, cur);
        let xa = &x.arrows[a].2;
        let new_corner = add(
            &mul(f, xa, &corner, x.dims[s], c.dims[s0]),
            &mul(f, &h[a], &cp, c.dims[s], c.dims[s0]),
        );
        cp = mul(f, ca, &cp, c.dims[s], c.dims[s0]);
        corner = new_corner;
        cur = t;
    }
    corner
}

fn identity(f: Field, n: usize) -> Mat {
    (0..n).map(|i| (0..n).map(|j| if i == j { f.one() } else { f.zero() }).collect()).collect()
}

fn add(a: &Mat, b: &Mat) -> Mat {
    a.iter().zip(b).map(|(r, s)| r.iter().zip(s).map(|(x, y)| x.clone() + y.clone()).collect()).collect()
}

/// `dim Ext¹(c, x)` as cocycles modulo coboundaries.
pub fn ext_dim(c: &Module, x: &Module) -> usize {
    let alg = c.algebra();
    let quiver = alg.quiver().expect("quiver algebra");
    let (rc, rx) = (Rep::of(c), Rep::of(x));
    let f = rc.field;
    // unknowns: one block Hom_k(c_s, x_t) per arrow
    let mut units: Vec<Vec<Mat>> = Vec::new();
    for (a, (s, t, _)) in rc.arrows.iter().enumerate() {
        for i in 0..rx.dims[*t] {
            for j in 0..rc.dims[*s] {
                let mut blocks: Vec<Mat> =
                    rc.arrows.iter().map(|(s2, t2, _)| zeros(f, rx.dims[*t2], rc.dims[*s2])).collect();
                blocks[a][i][j] = f.one();
                units.push(blocks);
            }
        }
    }
    if units.is_empty() {
        return 0;
    }
    let relation_value = |h: &[Mat]| -> Vec<Scalar> {
        let mut out = Vec::new();
        for rel in alg.relations() {
            let words: Vec<(Scalar, Vec<usize>)> = rel
                .terms
                .iter()
                .map(|(k, w)| (k.clone(), w.iter().map(|id| quiver.arrow_index(id).unwrap()).collect()))
                .collect();
            let (s, _, _) = rc.arrows[words[0].1[0]];
            let t = rc.arrows[*words[0].1.last().unwrap()].1;
            let mut acc = zeros(f, rx.dims[t], rc.dims[s]);
            for (k, w) in &words {
                let corner = word_corner(&rc, &rx, h, w);
                for (ar, cr) in acc.iter_mut().zip(&corner) {
                    for (a, b) in ar.iter_mut().zip(cr) {
                        *a = a.clone() + k.clone() * b.clone();
                    }
                }
            }
            out.extend(acc.into_iter().flatten());
        }
        out
    };
    let cols: Vec<Vec<Scalar>> = units.iter().map(|u| relation_value(u)).collect();
    let cocycles: Vec<Vec<Scalar>> = if cols[0].is_empty() {
        (0..units.len()).map(|i| (0..units.len()).map(|j| if i == j { f.one() } else { f.zero() }).collect()).collect()
    } else {
        kernel(f, &cols)
    };
    // coboundaries: h_a = X_a F_s − F_t C_a
    let mut bounds = Vec::new();
    for fu in vertex_units(f, &rc.dims, &rx.dims) {
        let mut h = Vec::new();
        for ((s, t, ca), (_, _, xa)) in rc.arrows.iter().zip(&rx.arrows) {
            let l = mul(f, xa, &fu[*s], rx.dims[*s], rc.dims[*s]);
            let r = mul(f, &fu[*t], ca, rc.dims[*t], rc.dims[*s]);
            h.extend(l.iter().zip(&r).flat_map(|(lr, rr)| lr.iter().zip(rr).map(|(a, b)| a.clone() - b.clone())));
        }
        bounds.push(h);
    }
    let b = if bounds.is_empty() { 0 } else { rank(&bounds) };
    cocycles.len() - b
}
