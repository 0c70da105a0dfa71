//! The total Steenrod operation on `Ch(GL₃/B; 𝔽_p)` computed in the Borel
//! presentation `ℤ[x₁, x₂, x₃]/(e₁, e₂, e₃)` with Schubert polynomials and
//! divided differences, without any fixed-point localization.
//!
//! Coefficients are expanded with `c_u(f) = ε(∂_u f)`, where `ε` sets every
//! `x_i` to zero; this is valid for any representative of `f` modulo the
//! symmetric ideal.

use std::collections::BTreeMap;

/// Exponents of `x₁, x₂, x₃, t`.
type Mono = [u32; 4];

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Poly(BTreeMap<Mono, i64>);

impl Poly {
    pub fn monomial(m: Mono, c: i64) -> Self {
        let mut p = Poly::default();
        p.add_term(m, c);
        p
    }

    fn add_term(&mut self, m: Mono, c: i64) {
        let e = self.0.entry(m).or_insert(0);
        *e += c;
        if *e == 0 {
            self.0.remove(&m);
        }
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &o.0 {
            out.add_term(*m, *c);
        }
        out
    }

    fn mul(&self, o: &Poly) -> Poly {
        let mut out = Poly::default();
        for (a, ca) in &self.0 {
            for (b, cb) in &o.0 {
                let m = [a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]];
                out.add_term(m, ca * cb);
            }
        }
        out
    }

    fn pow(&self, n: u32) -> Poly {
        (0..n).fold(Poly::monomial([0; 4], 1), |acc, _| acc.mul(self))
    }

    fn reduce(&self, p: i64) -> Poly {
        let mut out = Poly::default();
        for (m, c) in &self.0 {
            out.add_term(*m, c.rem_euclid(p));
        }
        out
    }

    /// `∂_i f = (f − s_i f)/(x_i − x_{i+1})`.
    fn divided_difference(&self, i: usize) -> Poly {
        let mut out = Poly::default();
        for (m, c) in &self.0 {
            let (a, b) = (m[i], m[i + 1]);
            let (lo, hi, sign) = if a > b { (b, a, 1) } else { (a, b, -1) };
            for k in 0..hi - lo {
                let mut n = *m;
                n[i] = lo + k;
                n[i + 1] = hi - 1 - k;
                out.add_term(n, sign * c);
            }
        }
        out
    }

    /// Terms free of every `x_i`, as `(t-exponent, coefficient)`.
    fn augment(&self) -> Vec<(i32, i64)> {
        self.0.iter().filter(|(m, _)| m[..3] == [0, 0, 0]).map(|(m, c)| (m[3] as i32, *c)).collect()
    }

    /// The ring map `x_i ↦ x_i^p − t^{p−1} x_i`.
    fn steenrod(&self, p: u32) -> Poly {
        let image = |i: usize| {
            let mut x = [0; 4];
            x[i] = 1;
            let mut tx = x;
            tx[3] = p - 1;
            Poly::monomial(x, 1).pow(p).add(&Poly::monomial(tx, -1))
        };
        let images = [image(0), image(1), image(2)];
        let mut out = Poly::default();
        for (m, c) in &self.0 {
            let mut term = Poly::monomial([0, 0, 0, m[3]], *c);
            for i in 0..3 {
                term = term.mul(&images[i].pow(m[i]));
            }
            out = out.add(&term);
        }
        out
    }
}

/// One-line notation on `{0, 1, 2}`.
pub type Perm = [usize; 3];

const W0: Perm = [2, 1, 0];

/// `s_{i₁} ⋯ s_{i_k}` for 0-based simple indices.
pub fn perm_from_word(word: &[usize]) -> Perm {
    let mut w = [0, 1, 2];
    for i in word {
        w.swap(*i, i + 1);
    }
    w
}

fn reduced_word(w: Perm) -> Vec<usize> {
    match (0..2).find(|i| w[*i] > w[i + 1]) {
        None => Vec::new(),
        Some(i) => {
            let mut shorter = w;
            shorter.swap(i, i + 1);
            let mut word = reduced_word(shorter);
            word.push(i);
            word
        }
    }
}

fn inverse(w: Perm) -> Perm {
    let mut out = [0; 3];
    for (i, v) in w.iter().enumerate() {
        out[*v] = i;
    }
    out
}

/// `(a ∘ b)(j) = a(b(j))`.
fn compose(a: Perm, b: Perm) -> Perm {
    [a[b[0]], a[b[1]], a[b[2]]]
}

/// `∂_w = ∂_{i₁} ∘ ⋯ ∘ ∂_{i_k}` for a reduced word of `w`.
fn divided_difference_of(w: Perm, f: &Poly) -> Poly {
    reduced_word(w).iter().rev().fold(f.clone(), |g, i| g.divided_difference(*i))
}

/// `𝔖_w = ∂_{w⁻¹w₀} (x₁² x₂)`.
pub fn schubert_polynomial(w: Perm) -> Poly {
    let top = Poly::monomial([2, 1, 0, 0], 1);
    divided_difference_of(compose(inverse(w), W0), &top)
}

/// Coefficient of the class of the Schubert variety `X_v` in the total
/// Steenrod operation applied to the class of `X_w`, as a polynomial in
/// `t` over `𝔽_p`. `[X_w]` is represented by `𝔖_{w₀w}`.
pub fn steenrod_coefficient(p: u32, w_word: &[usize], v_word: &[usize]) -> Vec<(i32, i64)> {
    let w = compose(W0, perm_from_word(w_word));
    let v = compose(W0, perm_from_word(v_word));
    let image = schubert_polynomial(w).steenrod(p);
    divided_difference_of(v, &image).reduce(p as i64).augment()
}
