//! Equivariant cohomology of `G/B` in the fixed-point model: tuples
//! `Σ p_w f_w` of elements of `S`, acted on by push-pull operators.
//!
//! The Schubert classes `ζ_w` come from the point class by push-pull along
//! the canonical reduced word of `w`. The dual basis classes `Y*_w` come
//! from inverting the triangular matrix `D` of Schubert coordinates.

use std::sync::Arc;

use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::group_ring::{QElement, SCtx};
use crate::ring::RingElement;
use crate::roots::{Elem, RootId};
use crate::series::TruncatedSeries;

/// An element `Σ p_w f_w` over the cosets `W/W_Θ` (all of `W` when `Θ` is
/// empty), indexed by minimal coset representatives.
#[derive(Clone, Debug)]
pub struct FixedLocusClass {
    ctx: Arc<SCtx>,
    theta: Vec<usize>,
    reps: Arc<Vec<Elem>>,
    coords: Vec<TruncatedSeries>,
}

fn all_reps(ctx: &SCtx, theta: &[usize]) -> Arc<Vec<Elem>> {
    Arc::new(ctx.datum().coset_min_reps(theta))
}

impl FixedLocusClass {
    /// A class on `G/B` from coordinates in the linear order of `W`.
    pub fn new(ctx: &Arc<SCtx>, coords: Vec<TruncatedSeries>) -> Result<Self> {
        Self::parabolic(ctx, &[], coords)
    }

    /// A class on `G/P_Θ` from coordinates over the minimal coset
    /// representatives, in the linear order.
    pub fn parabolic(ctx: &Arc<SCtx>, theta: &[usize], coords: Vec<TruncatedSeries>) -> Result<Self> {
        let reps = all_reps(ctx, theta);
        if coords.len() != reps.len() {
            return Err(Error::ContextMismatch(format!(
                "{} coordinates for {} fixed points",
                coords.len(),
                reps.len()
            )));
        }
        Ok(FixedLocusClass { ctx: ctx.clone(), theta: theta.to_vec(), reps, coords })
    }

    pub fn zero(ctx: &Arc<SCtx>, theta: &[usize]) -> Self {
        let reps = all_reps(ctx, theta);
        let coords = vec![ctx.zero(); reps.len()];
        FixedLocusClass { ctx: ctx.clone(), theta: theta.to_vec(), reps, coords }
    }

    /// `Σ f_w`.
    pub fn unit(ctx: &Arc<SCtx>, theta: &[usize]) -> Self {
        let reps = all_reps(ctx, theta);
        let coords = vec![ctx.one(); reps.len()];
        FixedLocusClass { ctx: ctx.clone(), theta: theta.to_vec(), reps, coords }
    }

    /// `[pt] = x_Π f_e`.
    pub fn point_class(ctx: &Arc<SCtx>) -> Result<Self> {
        let mut z = Self::zero(ctx, &[]);
        z.coords[0] = ctx.x_pi()?;
        Ok(z)
    }

    pub fn ctx(&self) -> &Arc<SCtx> {
        &self.ctx
    }

    pub fn theta(&self) -> &[usize] {
        &self.theta
    }

    /// Coset representatives, parallel to [`coords`](Self::coords).
    pub fn reps(&self) -> &[Elem] {
        &self.reps
    }

    pub fn coords(&self) -> &[TruncatedSeries] {
        &self.coords
    }

    pub fn coord(&self, w: Elem) -> Option<&TruncatedSeries> {
        self.reps.iter().position(|r| *r == w).map(|i| &self.coords[i])
    }

    pub fn precision(&self) -> i32 {
        self.coords.iter().map(|c| c.precision()).min().unwrap_or(self.ctx.order())
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    fn check(&self, other: &Self) -> Result<()> {
        if !Arc::ptr_eq(&self.ctx, &other.ctx) || self.theta != other.theta {
            return Err(Error::ContextMismatch("classes over different fixed loci".into()));
        }
        Ok(())
    }

    fn zip_with(
        &self,
        other: &Self,
        f: impl Fn(&TruncatedSeries, &TruncatedSeries) -> Result<TruncatedSeries>,
    ) -> Result<Self> {
        self.check(other)?;
        let coords = self.coords.iter().zip(&other.coords).map(|(a, b)| f(a, b)).collect::<Result<_>>()?;
        Ok(FixedLocusClass { coords, ..self.clone() })
    }

    pub fn map_coords(&self, f: impl Fn(Elem, &TruncatedSeries) -> Result<TruncatedSeries>) -> Result<Self> {
        let coords = self.reps.iter().zip(&self.coords).map(|(w, p)| f(*w, p)).collect::<Result<_>>()?;
        Ok(FixedLocusClass { coords, ..self.clone() })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a.add(b))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a.sub(b))
    }

    /// Pointwise product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a.mul(b))
    }

    /// Multiply every coordinate by `q` (the `S`-module structure pulled
    /// back from a point).
    pub fn scale(&self, q: &TruncatedSeries) -> Result<Self> {
        self.map_coords(|_, p| p.mul(q))
    }

    /// `q ∙ z`: coordinate `v` is multiplied by `v(q)`.
    pub fn hecke_scalar(&self, q: &TruncatedSeries) -> Result<Self> {
        self.map_coords(|v, p| p.mul(&self.ctx.weyl_act(v, q)?))
    }

    /// The push-pull operator `Y_α ∙ z` for the `i`-th simple root:
    /// coordinate `v` becomes `κ_{v(α)} p_v + (p_{v s_α} − p_v)/x_{v(α)}`.
    pub fn hecke_y(&self, i: usize) -> Result<Self> {
        if !self.theta.is_empty() {
            return Err(Error::ContextMismatch("push-pull operators act on G/B only".into()));
        }
        let datum = self.ctx.datum();
        let alpha = datum.simple_root(i);
        let coords = datum
            .elements()
            .map(|v| {
                let root = datum.act_on_root(v, alpha);
                let p = &self.coords[v];
                let q = &self.coords[datum.mul_simple(v, i)];
                let delta = self.ctx.divide_by_root(&q.sub(p)?, root).map_err(|e| {
                    with_location(e, format!("push-pull at {}", datum.word_name(v)))
                })?;
                let kappa = self.ctx.kappa(root)?;
                if kappa.is_zero() {
                    // κ is exactly zero here; only Δ's precision matters.
                    Ok(delta)
                } else {
                    kappa.mul(p)?.add(&delta)
                }
            })
            .collect::<Result<_>>()?;
        Ok(FixedLocusClass { coords, ..self.clone() })
    }

    /// Apply `Y_{i_1}` first through `Y_{i_l}` last.
    pub fn hecke_word(&self, word: &[usize]) -> Result<Self> {
        word.iter().try_fold(self.clone(), |z, i| z.hecke_y(*i))
    }

    /// Check that `x_β` divides `p_w − p_{s_β w}` for all `β > 0` and all
    /// `w`; on failure returns the first offending `(β, w)`.
    pub fn gkm_witness(&self) -> Result<Option<(RootId, Elem)>> {
        if !self.theta.is_empty() {
            return Err(Error::ContextMismatch("the GKM test is implemented for G/B".into()));
        }
        let datum = self.ctx.datum();
        for beta in datum.positive_roots() {
            let s = datum.reflection(beta);
            for w in datum.elements() {
                let sw = datum.mul(s, w);
                if sw < w {
                    continue;
                }
                let diff = self.coords[w].sub(&self.coords[sw])?;
                match self.ctx.divide_by_root(&diff, beta) {
                    Ok(_) => {}
                    Err(Error::NotDivisible(_)) => return Ok(Some((beta, w))),
                    Err(e) => return Err(e),
                }
            }
        }
        Ok(None)
    }

    pub fn is_gkm(&self) -> Result<bool> {
        Ok(self.gkm_witness()?.is_none())
    }

    /// Coordinates keyed by canonical word.
    pub fn to_json(&self) -> Value {
        let datum = self.ctx.datum();
        let mut m = Map::new();
        for (w, p) in self.reps.iter().zip(&self.coords) {
            m.insert(datum.word_name(*w), Value::String(p.render()));
        }
        Value::Object(m)
    }
}

fn with_location(e: Error, loc: String) -> Error {
    match e {
        Error::NotDivisible(msg) => {
            Error::not_divisible(format!("{loc}: {}", msg.unwrap_or_default()))
        }
        other => other,
    }
}

/// `c(p) = Σ_w w(p) f_w` over `W/W_Θ`; `p` must be `W_Θ`-invariant.
pub fn char_map(ctx: &Arc<SCtx>, p: &TruncatedSeries, theta: &[usize]) -> Result<FixedLocusClass> {
    for i in theta {
        let s = ctx.datum().simple_reflection(*i);
        if !ctx.weyl_act(s, p)?.agrees_with(p) {
            return Err(Error::NotInvariant);
        }
    }
    let z = FixedLocusClass::zero(ctx, theta);
    z.map_coords(|w, _| ctx.weyl_act(w, p))
}

/// `p₁ ⊗ p₂ ↦ p₁ · c(p₂)`.
pub fn borel_map(
    ctx: &Arc<SCtx>,
    p1: &TruncatedSeries,
    p2: &TruncatedSeries,
    theta: &[usize],
) -> Result<FixedLocusClass> {
    char_map(ctx, p2, theta)?.scale(p1)
}

/// Augment every coefficient.
pub fn forgetful(coeffs: &[TruncatedSeries]) -> Vec<RingElement> {
    coeffs.iter().map(|p| p.constant_term()).collect()
}

/// The Schubert and dual bases of `h_T(G/B)` with their transition data.
#[derive(Debug)]
pub struct FlagCohomology {
    ctx: Arc<SCtx>,
    /// `d[w][v]`: coordinate `v` of `ζ_w`.
    d: Vec<Vec<TruncatedSeries>>,
    /// `c[v][w]`: coordinate `v` of `Y*_w`.
    c: Vec<Vec<TruncatedSeries>>,
    /// `E_u = P⁺ / u(x_Π)`, a unit.
    units: Vec<TruncatedSeries>,
    positive: Vec<RootId>,
}

impl FlagCohomology {
    pub fn compute(ctx: &Arc<SCtx>) -> Result<Self> {
        ctx.regularity_check()?;
        let datum = ctx.datum().clone();
        let n = datum.weyl_order();
        let positive: Vec<RootId> = datum.positive_roots().collect();

        let mut rows: Vec<FixedLocusClass> = Vec::with_capacity(n);
        rows.push(FixedLocusClass::point_class(ctx)?);
        for w in 1..n {
            let last = *datum.word(w).last().unwrap();
            let prev = datum.mul_simple(w, last);
            let z = rows[prev].hecke_y(last)?;
            rows.push(z);
        }
        let d: Vec<Vec<TruncatedSeries>> = rows.into_iter().map(|z| z.coords).collect();

        let thetas: Vec<TruncatedSeries> = positive.iter().map(|b| ctx.theta(*b)).collect::<Result<_>>()?;
        let units: Vec<TruncatedSeries> = datum
            .elements()
            .map(|u| {
                let inv = datum.inversion_set(u);
                let factors = positive.iter().zip(&thetas).filter(|(b, _)| !inv.contains(b)).map(|(_, t)| t);
                TruncatedSeries::product(ctx.series_ctx(), factors)
            })
            .collect::<Result<_>>()?;

        // Forward substitution for D⁻¹ = (b_{v,w} / v(x_Π)), scaled so that
        // only units and root characters appear:
        //   b_{x,w} = −(Σ_{w ≤ u < x} D_{x,u} b_{u,w} E_u) / ∏_{β ∉ inv(x)} x_β.
        let mut c = vec![vec![ctx.zero(); n]; n];
        let not_inv: Vec<Vec<RootId>> = datum
            .elements()
            .map(|x| {
                let inv = datum.inversion_set(x);
                positive.iter().copied().filter(|b| !inv.contains(b)).collect()
            })
            .collect();
        for w in 0..n {
            c[w][w] = ctx.product_of_roots(&datum.inversion_set(w))?;
            for x in w + 1..n {
                if !datum.bruhat_leq(w, x) {
                    continue;
                }
                let mut acc = ctx.zero();
                for u in w..x {
                    if d[x][u].is_zero() || c[u][w].is_zero() {
                        continue;
                    }
                    acc = acc.add(&d[x][u].mul(&c[u][w])?.mul(&units[u])?)?;
                }
                c[x][w] = ctx.divide_by_roots(&acc.neg(), &not_inv[x]).map_err(|e| {
                    with_location(e, format!("entry ({}, {})", datum.word_name(x), datum.word_name(w)))
                })?;
            }
        }
        Ok(FlagCohomology { ctx: ctx.clone(), d, c, units, positive })
    }

    pub fn ctx(&self) -> &Arc<SCtx> {
        &self.ctx
    }

    /// `D[w][v] = p_v^{I_w}`.
    pub fn d_entry(&self, w: Elem, v: Elem) -> &TruncatedSeries {
        &self.d[w][v]
    }

    /// `C[v][w] = b_{v, I_w}`.
    pub fn c_entry(&self, v: Elem, w: Elem) -> &TruncatedSeries {
        &self.c[v][w]
    }

    /// `D⁻¹[v][w] = b_{v,I_w} / v(x_Π)`.
    pub fn dinv_entry(&self, v: Elem, w: Elem) -> QElement {
        let datum = self.ctx.datum();
        let den = datum.negative_roots().map(|b| datum.act_on_root(v, b)).collect();
        QElement::new(self.c[v][w].clone(), den)
    }

    pub fn unit_factor(&self, u: Elem) -> &TruncatedSeries {
        &self.units[u]
    }

    pub fn schubert_class(&self, w: Elem) -> FixedLocusClass {
        FixedLocusClass::new(&self.ctx, self.d[w].clone()).expect("row has |W| entries")
    }

    pub fn qdual_class(&self, w: Elem) -> FixedLocusClass {
        let coords = self.c.iter().map(|row| row[w].clone()).collect();
        FixedLocusClass::new(&self.ctx, coords).expect("column has |W| entries")
    }

    /// `A_Π(z) = Σ_v p_v / v(x_Π)`, written over the common denominator
    /// `∏_{β > 0} x_β`.
    pub fn pairing(&self, z: &FixedLocusClass) -> Result<QElement> {
        let mut num = self.ctx.zero();
        for (u, p) in z.coords().iter().enumerate() {
            if !p.is_zero() {
                num = num.add(&p.mul(&self.units[u])?)?;
            }
        }
        Ok(QElement::new(num, self.positive.clone()))
    }

    /// Coefficients `a_w` with `z = Σ_w a_w Y*_w`, by repeatedly clearing
    /// the earliest nonzero coordinate.
    pub fn elimination(&self, z: &FixedLocusClass) -> Result<Vec<TruncatedSeries>> {
        let datum = self.ctx.datum();
        let n = datum.weyl_order();
        let mut p: Vec<TruncatedSeries> = z.coords().to_vec();
        let mut out = vec![self.ctx.zero(); n];
        for u in 0..n {
            if p[u].is_zero() {
                continue;
            }
            let a = self
                .ctx
                .divide_by_roots(&p[u], &datum.inversion_set(u))
                .map_err(|e| with_location(e, format!("elimination at {}", datum.word_name(u))))?;
            for v in u + 1..n {
                if !self.c[v][u].is_zero() {
                    p[v] = p[v].sub(&a.mul(&self.c[v][u])?)?;
                }
            }
            p[u] = self.ctx.zero();
            out[u] = a;
        }
        Ok(out)
    }

    /// Coefficients `c_v` with `z = Σ_v c_v ζ_v`, via
    /// `c_v = A_Π(Y*_v · z)`.
    pub fn schubert_expansion(&self, z: &FixedLocusClass) -> Result<Vec<TruncatedSeries>> {
        let datum = self.ctx.datum();
        let n = datum.weyl_order();
        (0..n)
            .map(|v| {
                let mut num = self.ctx.zero();
                for u in v..n {
                    let (p, b) = (&z.coords()[u], &self.c[u][v]);
                    if !p.is_zero() && !b.is_zero() {
                        num = num.add(&p.mul(b)?.mul(&self.units[u])?)?;
                    }
                }
                self.ctx
                    .divide_by_roots(&num, &self.positive)
                    .map_err(|e| with_location(e, format!("Schubert coefficient at {}", datum.word_name(v))))
            })
            .collect()
    }
}
