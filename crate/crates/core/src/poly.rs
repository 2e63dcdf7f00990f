//! Univariate polynomials: just enough to find eigenvalues that lie in the
//! base field, which is what the Fitting splitter needs.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use crate::field::{Field, Scalar};
use crate::matrix::Matrix;

/// Coefficients from the constant term upwards, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    field: Field,
    coeffs: Vec<Scalar>,
}

impl Poly {
    pub fn new(field: Field, mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    pub fn x(field: Field) -> Self {
        Poly::new(field, vec![field.zero(), field.one()])
    }

    pub fn constant(field: Field, c: Scalar) -> Self {
        Poly::new(field, vec![c])
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let mut acc = self.field.zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let z = self.field.zero();
        let c = (0..n).map(|i| self.coeffs.get(i).unwrap_or(&z) + o.coeffs.get(i).unwrap_or(&z)).collect();
        Poly::new(self.field, c)
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.add(&o.scale(&(-self.field.one())))
    }

    pub fn scale(&self, s: &Scalar) -> Poly {
        Poly::new(self.field, self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::new(self.field, Vec::new());
        }
        let mut c = vec![self.field.zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                c[i + j] = &c[i + j] + &(a * b);
            }
        }
        Poly::new(self.field, c)
    }

    pub fn divmod(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("division by zero polynomial");
        let lead_inv = d.coeffs[dd].inv();
        let mut r = self.coeffs.clone();
        let mut q = vec![self.field.zero(); self.coeffs.len().saturating_sub(dd)];
        while r.len() > dd && !r.is_empty() {
            let k = r.len() - 1;
            let c = &r[k] * &lead_inv;
            if !c.is_zero() {
                for (j, dj) in d.coeffs.iter().enumerate() {
                    r[k - dd + j] = &r[k - dd + j] - &(&c * dj);
                }
            }
            q[k - dd] = c;
            r.pop();
        }
        (Poly::new(self.field, q), Poly::new(self.field, r))
    }

    pub fn monic(&self) -> Poly {
        match self.coeffs.last() {
            Some(l) => self.scale(&l.inv()),
            None => self.clone(),
        }
    }

    pub fn gcd(&self, o: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.divmod(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    fn powmod(&self, mut e: u64, m: &Poly) -> Poly {
        let mut base = self.divmod(m).1;
        let mut r = Poly::constant(self.field, self.field.one()).divmod(m).1;
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(&base).divmod(m).1;
            }
            base = base.mul(&base).divmod(m).1;
            e >>= 1;
        }
        r
    }

    pub fn derivative(&self) -> Poly {
        let c = self.coeffs.iter().enumerate().skip(1).map(|(i, a)| a * &self.field.from_i64(i as i64)).collect();
        Poly::new(self.field, c)
    }

    /// `f / gcd(f, f′)`; `None` when `f′ = 0` (a `p`-th power in
    /// characteristic `p`).
    pub fn squarefree_part(&self) -> Option<Poly> {
        let d = self.derivative();
        if d.is_zero() {
            return if self.degree() == Some(0) { Some(self.monic()) } else { None };
        }
        Some(self.divmod(&self.gcd(&d)).0.monic())
    }

    /// Irreducibility over the base field. Rabin's test over `𝔽_p`; over `ℚ`
    /// only degrees up to 3 are decided (no rational root).
    pub fn is_irreducible(&self) -> Option<bool> {
        let n = self.degree()?;
        if n <= 1 {
            return Some(n == 1);
        }
        match self.field {
            Field::Prime(p) => {
                let f = self.monic();
                let x = Poly::x(self.field);
                let frob = |k: usize| (0..k).fold(x.clone(), |h, _| h.powmod(p, &f));
                for r in (2..=n).filter(|r| n % r == 0 && (2..*r).all(|q| r % q != 0)) {
                    if f.gcd(&frob(n / r).sub(&x)).degree() != Some(0) {
                        return Some(false);
                    }
                }
                Some(frob(n).sub(&x).divmod(&f).1.is_zero())
            }
            Field::Rationals if n <= 3 => rational_roots(self).map(|r| r.is_empty()),
            Field::Rationals => None,
        }
    }

    /// Distinct roots lying in the base field, in ascending order for
    /// rationals and residue order for prime fields. `None` when the search
    /// was abandoned (rational coefficients too large to factor).
    pub fn roots<R: Rng>(&self, rng: &mut R) -> Option<Vec<Scalar>> {
        if self.degree().unwrap_or(0) == 0 {
            return Some(Vec::new());
        }
        match self.field {
            Field::Prime(p) if p <= 1 << 16 => {
                Some((0..p).map(|i| self.field.element(i)).filter(|x| self.eval(x).is_zero()).collect())
            }
            Field::Prime(p) => {
                let lin = self.monic();
                let xp = Poly::x(self.field).powmod(p, &lin);
                let g = lin.gcd(&xp.sub(&Poly::x(self.field)));
                let mut out = Vec::new();
                split_linear(&g, p, rng, &mut out);
                out.sort_by_key(|s| s.residue());
                Some(out)
            }
            Field::Rationals => rational_roots(self),
        }
    }
}

fn split_linear<R: Rng>(g: &Poly, p: u64, rng: &mut R, out: &mut Vec<Scalar>) {
    let field = g.field;
    match g.degree() {
        None | Some(0) => {}
        Some(1) => out.push(-&(&g.coeffs[0] / &g.coeffs[1])),
        Some(_) => loop {
            let a = field.element(rng.gen_range(0..p));
            let shifted = Poly::new(field, vec![a, field.one()]);
            let h = shifted.powmod((p - 1) / 2, g).sub(&Poly::constant(field, field.one()));
            let d = g.gcd(&h);
            let deg = d.degree().unwrap_or(0);
            if deg > 0 && deg < g.degree().unwrap() {
                let rest = g.divmod(&d).0;
                split_linear(&d, p, rng, out);
                split_linear(&rest, p, rng, out);
                return;
            }
        },
    }
}

const DIVISOR_LIMIT: u64 = 1_000_000_000_000;

fn rational_roots(f: &Poly) -> Option<Vec<Scalar>> {
    let field = f.field;
    // clear denominators
    let mut lcm = BigInt::one();
    for c in &f.coeffs {
        lcm = lcm.lcm(&c.to_fraction().1);
    }
    let mut ints: Vec<BigInt> = f
        .coeffs
        .iter()
        .map(|c| {
            let (n, d) = c.to_fraction();
            n * (&lcm / d)
        })
        .collect();
    let mut roots = Vec::new();
    let mut shift = 0;
    while ints.first().is_some_and(Zero::is_zero) {
        ints.remove(0);
        shift += 1;
    }
    if shift > 0 {
        roots.push(field.zero());
    }
    if ints.len() <= 1 {
        return Some(roots);
    }
    let a0 = ints[0].abs().to_u64().filter(|&v| v <= DIVISOR_LIMIT)?;
    let an = ints.last().unwrap().abs().to_u64().filter(|&v| v <= DIVISOR_LIMIT)?;
    for num in divisors(a0) {
        for den in divisors(an) {
            if num.gcd(&den) != 1 {
                continue;
            }
            for sign in [1i64, -1] {
                let cand = Scalar::from_fraction(field, &BigInt::from(sign * num as i64), &BigInt::from(den));
                if f.eval(&cand).is_zero() && !roots.contains(&cand) {
                    roots.push(cand);
                }
            }
        }
    }
    roots.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Some(roots)
}

fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Characteristic polynomial `det(xI − a)` via reduction to Hessenberg form.
pub fn charpoly(a: &Matrix) -> Poly {
    assert!(a.is_square());
    let field = a.field();
    let n = a.rows();
    let mut h = a.clone();
    // similarity reduction to upper Hessenberg form
    for m in 1..n.saturating_sub(1) {
        let Some(piv) = (m..n).find(|&i| !h.get(i, m - 1).is_zero()) else { continue };
        if piv != m {
            for j in 0..n {
                let t = h.get(piv, j).clone();
                h.set(piv, j, h.get(m, j).clone());
                h.set(m, j, t);
            }
            for i in 0..n {
                let t = h.get(i, piv).clone();
                h.set(i, piv, h.get(i, m).clone());
                h.set(i, m, t);
            }
        }
        let pinv = h.get(m, m - 1).inv();
        for i in m + 1..n {
            let u = h.get(i, m - 1) * &pinv;
            if u.is_zero() {
                continue;
            }
            for j in 0..n {
                let v = h.get(i, j) - &(&u * h.get(m, j));
                h.set(i, j, v);
            }
            for k in 0..n {
                let v = h.get(k, m) + &(&u * h.get(k, i));
                h.set(k, m, v);
            }
        }
    }
    let x = Poly::x(field);
    let mut p: Vec<Poly> = vec![Poly::constant(field, field.one())];
    for m in 1..=n {
        let diag = Poly::constant(field, h.get(m - 1, m - 1).clone());
        let mut next = x.sub(&diag).mul(&p[m - 1]);
        let mut t = field.one();
        for i in (1..m).rev() {
            t = &t * h.get(i, i - 1);
            let c = &t * h.get(i - 1, m - 1);
            if !c.is_zero() {
                next = next.sub(&p[i - 1].scale(&c));
            }
        }
        p.push(next);
    }
    p.pop().unwrap()
}
