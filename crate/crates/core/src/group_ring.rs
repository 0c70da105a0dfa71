//! The formal group ring of a character lattice: truncated series in one
//! variable per lattice basis vector, with `x_λ` built from the group law.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::fgl::FormalGroupLaw;
use crate::ring::{RingElement, RingSpec};
use crate::roots::{Elem, RootDatum, RootId};
use crate::series::{SeriesCtx, TruncatedSeries};

/// Extra truncation degrees carried internally beyond the requested output
/// precision: each pipeline divides by at most `2·|Σ⁺|` root characters.
pub fn guard_order(datum: &RootDatum, output_precision: i32) -> i32 {
    output_precision + 2 * datum.num_positive() as i32
}

/// Default output precision `|Σ⁺| + 2`.
pub fn default_precision(datum: &RootDatum) -> i32 {
    datum.num_positive() as i32 + 2
}

/// The formal group ring `S = S_F(Λ)` for a root datum and a law.
#[derive(Debug)]
pub struct SCtx {
    datum: Arc<RootDatum>,
    law: FormalGroupLaw,
    series: Arc<SeriesCtx>,
    root_x: Vec<TruncatedSeries>,
    weight_memo: Mutex<HashMap<Vec<i32>, TruncatedSeries>>,
    action_memo: Mutex<HashMap<Elem, Arc<Vec<TruncatedSeries>>>>,
    kappa_memo: Mutex<HashMap<RootId, TruncatedSeries>>,
}

impl SCtx {
    /// Build `S` truncated at `order`; the law must be known at least that
    /// far.
    pub fn new(datum: &Arc<RootDatum>, law: &FormalGroupLaw, order: i32) -> Result<Arc<Self>> {
        if law.precision() < order {
            return Err(Error::ContextMismatch(format!(
                "law known to degree {} but the ring is truncated at {order}",
                law.precision()
            )));
        }
        let series = SeriesCtx::standard(datum.rank(), order, law.ring())?;
        let mut ctx = SCtx {
            datum: datum.clone(),
            law: law.clone(),
            series,
            root_x: Vec::new(),
            weight_memo: Mutex::new(HashMap::new()),
            action_memo: Mutex::new(HashMap::new()),
            kappa_memo: Mutex::new(HashMap::new()),
        };
        ctx.root_x = datum.roots().iter().map(|r| ctx.x_of_weight(&r.weight)).collect::<Result<_>>()?;
        Ok(Arc::new(ctx))
    }

    pub fn datum(&self) -> &Arc<RootDatum> {
        &self.datum
    }

    pub fn law(&self) -> &FormalGroupLaw {
        &self.law
    }

    pub fn series_ctx(&self) -> &Arc<SeriesCtx> {
        &self.series
    }

    pub fn ring(&self) -> &Arc<RingSpec> {
        self.series.ring()
    }

    pub fn order(&self) -> i32 {
        self.series.order()
    }

    pub fn zero(&self) -> TruncatedSeries {
        TruncatedSeries::zero(&self.series)
    }

    pub fn one(&self) -> TruncatedSeries {
        TruncatedSeries::one(&self.series)
    }

    pub fn var(&self, i: usize) -> TruncatedSeries {
        TruncatedSeries::var(&self.series, i)
    }

    pub fn constant(&self, c: &RingElement) -> Result<TruncatedSeries> {
        TruncatedSeries::constant(&self.series, c)
    }

    /// `x_λ`, with `x_{λ+μ} = x_λ +_F x_μ`.
    pub fn x_of_weight(&self, weight: &[i32]) -> Result<TruncatedSeries> {
        if weight.len() != self.datum.rank() {
            return Err(Error::ContextMismatch("weight has the wrong length".into()));
        }
        if let Some(v) = self.weight_memo.lock().unwrap().get(weight) {
            return Ok(v.clone());
        }
        let mut acc = self.zero();
        for (i, n) in weight.iter().enumerate() {
            if *n == 0 {
                continue;
            }
            let mut e = vec![0; weight.len()];
            e[i] = *n;
            let part = match self.weight_memo.lock().unwrap().get(&e).cloned() {
                Some(v) => v,
                None => self.law.int_multiple(*n as i64, &self.var(i))?,
            };
            self.weight_memo.lock().unwrap().insert(e, part.clone());
            acc = if acc.is_zero() { part } else { self.law.sum(&acc, &part)? };
        }
        self.weight_memo.lock().unwrap().insert(weight.to_vec(), acc.clone());
        Ok(acc)
    }

    /// `x_α` for a root.
    pub fn x_root(&self, alpha: RootId) -> &TruncatedSeries {
        &self.root_x[alpha]
    }

    fn action_images(&self, w: Elem) -> Result<Arc<Vec<TruncatedSeries>>> {
        if let Some(v) = self.action_memo.lock().unwrap().get(&w) {
            return Ok(v.clone());
        }
        let r = self.datum.rank();
        let images = (0..r)
            .map(|i| {
                let mut e = vec![0; r];
                e[i] = 1;
                self.x_of_weight(&self.datum.act(w, &e))
            })
            .collect::<Result<Vec<_>>>()?;
        let images = Arc::new(images);
        self.action_memo.lock().unwrap().insert(w, images.clone());
        Ok(images)
    }

    /// `w(p)`: substitute `x_i ↦ x_{w(e_i)}`.
    pub fn weyl_act(&self, w: Elem, p: &TruncatedSeries) -> Result<TruncatedSeries> {
        if w == self.datum.identity() {
            return Ok(p.clone());
        }
        p.substitute(&self.action_images(w)?)
    }

    /// The augmentation `S → R`.
    pub fn augment(&self, p: &TruncatedSeries) -> RingElement {
        p.constant_term()
    }

    /// `p / x_β`, reporting the root on failure.
    pub fn divide_by_root(&self, p: &TruncatedSeries, beta: RootId) -> Result<TruncatedSeries> {
        p.exact_divide(self.x_root(beta)).map_err(|e| match e {
            Error::NotDivisible(msg) => Error::not_divisible(format!(
                "by x_{}{}",
                self.datum.root_name(beta),
                msg.map(|m| format!(" ({m})")).unwrap_or_default()
            )),
            other => other,
        })
    }

    /// `p / ∏ x_β`, one root at a time.
    pub fn divide_by_roots(&self, p: &TruncatedSeries, betas: &[RootId]) -> Result<TruncatedSeries> {
        betas.iter().try_fold(p.clone(), |acc, b| self.divide_by_root(&acc, *b))
    }

    /// `∏ x_β`.
    pub fn product_of_roots(&self, betas: &[RootId]) -> Result<TruncatedSeries> {
        TruncatedSeries::product(&self.series, betas.iter().map(|b| self.x_root(*b)))
    }

    /// `Δ_α(p) = (s_α(p) − p) / x_α`.
    pub fn delta_op(&self, alpha: RootId, p: &TruncatedSeries) -> Result<TruncatedSeries> {
        let s = self.datum.reflection(alpha);
        let diff = self.weyl_act(s, p)?.sub(p)?;
        self.divide_by_root(&diff, alpha)
    }

    /// `κ_α = 1/x_α + 1/x_{−α}`.
    pub fn kappa(&self, alpha: RootId) -> Result<TruncatedSeries> {
        if let Some(v) = self.kappa_memo.lock().unwrap().get(&alpha) {
            return Ok(v.clone());
        }
        let neg = self.datum.neg_root(alpha);
        let sum = self.x_root(alpha).add(self.x_root(neg))?;
        let k = self.divide_by_roots(&sum, &[alpha, neg])?;
        let mut memo = self.kappa_memo.lock().unwrap();
        memo.insert(alpha, k.clone());
        memo.insert(neg, k.clone());
        Ok(k)
    }

    /// `x_Π = ∏_{α ∈ Σ⁻} x_α`.
    pub fn x_pi(&self) -> Result<TruncatedSeries> {
        let neg: Vec<RootId> = self.datum.negative_roots().collect();
        self.product_of_roots(&neg)
    }

    /// Every `x_α` must have a nonzero linear part over the coefficient
    /// ring; otherwise the localization machinery cannot divide by it.
    pub fn regularity_check(&self) -> Result<()> {
        for alpha in 0..self.datum.roots().len() {
            if self.x_root(alpha).homogeneous_part(1).is_zero() {
                return Err(Error::RegularityFailure(self.datum.root_name(alpha)));
            }
        }
        Ok(())
    }

    /// `θ_β = x_β / x_{−β}`, a unit of `S`.
    pub fn theta(&self, beta: RootId) -> Result<TruncatedSeries> {
        self.divide_by_root(self.x_root(beta), self.datum.neg_root(beta))
    }
}

/// An element of `S` localized at root characters: `numerator / ∏ x_β`.
#[derive(Clone, Debug)]
pub struct QElement {
    pub numerator: TruncatedSeries,
    /// Sorted multiset of roots.
    pub denominator: Vec<RootId>,
}

impl QElement {
    pub fn new(numerator: TruncatedSeries, mut denominator: Vec<RootId>) -> Self {
        denominator.sort_unstable();
        QElement { numerator, denominator }
    }

    pub fn from_series(p: TruncatedSeries) -> Self {
        QElement { numerator: p, denominator: Vec::new() }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        let mut den = self.denominator.clone();
        den.extend_from_slice(&other.denominator);
        Ok(QElement::new(self.numerator.mul(&other.numerator)?, den))
    }

    pub fn neg(&self) -> Self {
        QElement { numerator: self.numerator.neg(), denominator: self.denominator.clone() }
    }

    pub fn add(&self, other: &Self, ctx: &SCtx) -> Result<Self> {
        let (lcm, extra_a, extra_b) = merge_denominators(&self.denominator, &other.denominator);
        let a = self.numerator.mul(&ctx.product_of_roots(&extra_a)?)?;
        let b = other.numerator.mul(&ctx.product_of_roots(&extra_b)?)?;
        Ok(QElement { numerator: a.add(&b)?, denominator: lcm })
    }

    /// Apply a Weyl group element to numerator and denominator.
    pub fn weyl_act(&self, w: Elem, ctx: &SCtx) -> Result<Self> {
        let den = self.denominator.iter().map(|b| ctx.datum().act_on_root(w, *b)).collect();
        Ok(QElement::new(ctx.weyl_act(w, &self.numerator)?, den))
    }

    /// Equality after cross-multiplication.
    pub fn equals(&self, other: &Self, ctx: &SCtx) -> Result<bool> {
        let (_, extra_a, extra_b) = merge_denominators(&self.denominator, &other.denominator);
        let a = self.numerator.mul(&ctx.product_of_roots(&extra_a)?)?;
        let b = other.numerator.mul(&ctx.product_of_roots(&extra_b)?)?;
        Ok(a.agrees_with(&b))
    }

    /// The element as a series, if the denominator divides out.
    pub fn simplify(&self, ctx: &SCtx) -> Result<TruncatedSeries> {
        ctx.divide_by_roots(&self.numerator, &self.denominator)
    }
}

/// Least common multiple of two sorted multisets, and the factors each side
/// is missing.
fn merge_denominators(a: &[RootId], b: &[RootId]) -> (Vec<RootId>, Vec<RootId>, Vec<RootId>) {
    let (mut i, mut j) = (0, 0);
    let (mut lcm, mut extra_a, mut extra_b) = (Vec::new(), Vec::new(), Vec::new());
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i] < b[j]) {
            lcm.push(a[i]);
            extra_b.push(a[i]);
            i += 1;
        } else if i == a.len() || b[j] < a[i] {
            lcm.push(b[j]);
            extra_a.push(b[j]);
            j += 1;
        } else {
            lcm.push(a[i]);
            i += 1;
            j += 1;
        }
    }
    (lcm, extra_a, extra_b)
}
