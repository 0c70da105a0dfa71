//! Truncated multivariate power series over a graded coefficient ring.
//!
//! A series stores a flat term map whose exponent vectors are the `x`
//! exponents followed by the coefficient-ring generator exponents. Every
//! value carries the total `x`-degree up to which it is exact; arithmetic
//! propagates that bound using valuations, so dividing by a series of lowest
//! degree `k` costs `k` degrees and multiplying by a high-valuation factor
//! costs nothing.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::poly::{self, Mono, Terms};
use crate::ring::{Degree, RingElement, RingHom, RingSpec};
use crate::scalar::Scalar;

/// Variables, truncation order and coefficient ring shared by a family of
/// series.
#[derive(Debug, PartialEq, Eq, Hash)]
pub struct SeriesCtx {
    names: Vec<String>,
    order: i32,
    ring: Arc<RingSpec>,
}

impl SeriesCtx {
    pub fn new(names: Vec<String>, order: i32, ring: &Arc<RingSpec>) -> Result<Arc<Self>> {
        if names.is_empty() {
            return Err(Error::ContextMismatch("a series context needs at least one variable".into()));
        }
        if order < 1 {
            return Err(Error::ContextMismatch(format!("truncation order {order} < 1")));
        }
        for n in &names {
            if ring.gen_index(n).is_some() {
                return Err(Error::ContextMismatch(format!("variable `{n}` clashes with a ring generator")));
            }
        }
        Ok(Arc::new(SeriesCtx { names, order, ring: ring.clone() }))
    }

    /// Context with variables `x1, …, xr` (or `x` when `r == 1`).
    pub fn standard(r: usize, order: i32, ring: &Arc<RingSpec>) -> Result<Arc<Self>> {
        let names = if r == 1 { vec!["x".to_string()] } else { (1..=r).map(|i| format!("x{i}")).collect() };
        Self::new(names, order, ring)
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn order(&self) -> i32 {
        self.order
    }

    pub fn ring(&self) -> &Arc<RingSpec> {
        &self.ring
    }

    pub fn with_order(&self, order: i32) -> Result<Arc<Self>> {
        Self::new(self.names.clone(), order, &self.ring)
    }

    pub fn with_ring(&self, ring: &Arc<RingSpec>) -> Result<Arc<Self>> {
        Self::new(self.names.clone(), self.order, ring)
    }

    fn width(&self) -> usize {
        self.names.len() + self.ring.ngens()
    }

    fn laurent_mask(&self) -> Vec<bool> {
        let mut m = vec![false; self.nvars()];
        m.extend(self.ring.laurent_mask());
        m
    }
}

fn same_ctx(a: &Arc<SeriesCtx>, b: &Arc<SeriesCtx>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

fn xdeg(m: &[i32], r: usize) -> i32 {
    m[..r].iter().sum()
}

/// Product of two term maps, dropping everything of `x`-degree above `bound`.
fn mul_trunc(a: &Terms, b: &Terms, r: usize, bound: i32) -> Terms {
    let bdeg: Vec<(i32, &Mono, &Scalar)> = b.iter().map(|(m, c)| (xdeg(m, r), m, c)).collect();
    let mut out = Terms::new();
    for (ma, ca) in a {
        let da = xdeg(ma, r);
        if da > bound {
            continue;
        }
        for (db, mb, cb) in &bdeg {
            if da + db <= bound {
                poly::add_term(&mut out, poly::mono_mul(ma, mb), ca.mul(cb));
            }
        }
    }
    out
}

/// A power series exact modulo terms of total `x`-degree above `precision`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    ctx: Arc<SeriesCtx>,
    prec: i32,
    terms: Terms,
}

impl TruncatedSeries {
    pub fn zero(ctx: &Arc<SeriesCtx>) -> Self {
        TruncatedSeries { ctx: ctx.clone(), prec: ctx.order, terms: Terms::new() }
    }

    pub fn one(ctx: &Arc<SeriesCtx>) -> Self {
        Self::from_int(ctx, 1)
    }

    pub fn from_int(ctx: &Arc<SeriesCtx>, n: i64) -> Self {
        let mut terms = Terms::new();
        poly::add_term(&mut terms, vec![0; ctx.width()], ctx.ring.scalar(n));
        TruncatedSeries { ctx: ctx.clone(), prec: ctx.order, terms }
    }

    /// The constant series with the given coefficient.
    pub fn constant(ctx: &Arc<SeriesCtx>, c: &RingElement) -> Result<Self> {
        Self::monomial(ctx, &vec![0; ctx.nvars()], c)
    }

    /// The `i`-th variable.
    pub fn var(ctx: &Arc<SeriesCtx>, i: usize) -> Self {
        let mut m = vec![0; ctx.width()];
        m[i] = 1;
        let mut terms = Terms::new();
        poly::add_term(&mut terms, m, ctx.ring.scalar(1));
        TruncatedSeries { ctx: ctx.clone(), prec: ctx.order, terms }
    }

    /// `c · x^exps`.
    pub fn monomial(ctx: &Arc<SeriesCtx>, exps: &[i32], c: &RingElement) -> Result<Self> {
        if c.spec() != &ctx.ring {
            return Err(Error::ContextMismatch("coefficient ring differs from the series ring".into()));
        }
        if exps.len() != ctx.nvars() || exps.iter().any(|e| *e < 0) {
            return Err(Error::ContextMismatch("bad exponent vector for series monomial".into()));
        }
        let mut terms = Terms::new();
        if exps.iter().sum::<i32>() <= ctx.order {
            for (g, s) in c.terms() {
                let mut m = exps.to_vec();
                m.extend_from_slice(g);
                poly::add_term(&mut terms, m, s.clone());
            }
        }
        Ok(TruncatedSeries { ctx: ctx.clone(), prec: ctx.order, terms })
    }

    pub(crate) fn from_terms(ctx: &Arc<SeriesCtx>, prec: i32, terms: Terms) -> Self {
        let prec = prec.min(ctx.order);
        let r = ctx.nvars();
        let terms = terms.into_iter().filter(|(m, _)| xdeg(m, r) <= prec).collect();
        TruncatedSeries { ctx: ctx.clone(), prec, terms }
    }

    pub fn ctx(&self) -> &Arc<SeriesCtx> {
        &self.ctx
    }

    pub fn ring(&self) -> &Arc<RingSpec> {
        &self.ctx.ring
    }

    pub fn precision(&self) -> i32 {
        self.prec
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Lowest total `x`-degree of a stored term, or `precision + 1` for zero.
    pub fn valuation(&self) -> i32 {
        let r = self.ctx.nvars();
        self.terms.keys().map(|m| xdeg(m, r)).min().unwrap_or(self.prec + 1)
    }

    /// Lower the precision, discarding terms above it.
    pub fn truncate(&self, prec: i32) -> Self {
        Self::from_terms(&self.ctx, prec.min(self.prec), self.terms.clone())
    }

    /// Same terms with precision raised to the context order. Only sound
    /// when the caller knows the stored terms are the whole series, e.g. a
    /// polynomial read from input.
    pub fn assume_exact(mut self) -> Self {
        self.prec = self.ctx.order;
        self
    }

    /// Equality modulo the smaller of the two precisions.
    pub fn agrees_with(&self, other: &Self) -> bool {
        if !same_ctx(&self.ctx, &other.ctx) {
            return false;
        }
        let p = self.prec.min(other.prec);
        self.truncate(p).terms == other.truncate(p).terms
    }

    fn check(&self, other: &Self) -> Result<()> {
        if !same_ctx(&self.ctx, &other.ctx) {
            return Err(Error::ContextMismatch("series live in different contexts".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let prec = self.prec.min(other.prec);
        Ok(Self::from_terms(&self.ctx, prec, poly::add_terms(&self.terms, &other.terms)))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        TruncatedSeries { ctx: self.ctx.clone(), prec: self.prec, terms: poly::neg_terms(&self.terms) }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let prec = (self.prec + other.valuation())
            .min(other.prec + self.valuation())
            .min(self.ctx.order);
        let terms = mul_trunc(&self.terms, &other.terms, self.ctx.nvars(), prec);
        Ok(TruncatedSeries { ctx: self.ctx.clone(), prec, terms })
    }

    /// Multiply by a coefficient-ring element.
    pub fn scale(&self, c: &RingElement) -> Result<Self> {
        self.mul(&Self::constant(&self.ctx, c)?)
    }

    pub fn scale_int(&self, n: i64) -> Self {
        let c = self.ctx.ring.scalar(n);
        let zero = vec![0; self.ctx.width()];
        Self::from_terms(&self.ctx, self.prec, poly::scale_terms(&self.terms, &zero, &c))
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(&self.ctx);
        for _ in 0..n {
            acc = acc.mul(self).expect("same context");
        }
        acc
    }

    /// Product of a list of series (`1` for the empty list).
    pub fn product<'a>(ctx: &Arc<SeriesCtx>, factors: impl IntoIterator<Item = &'a Self>) -> Result<Self> {
        let mut acc = Self::one(ctx);
        for f in factors {
            acc = acc.mul(f)?;
        }
        Ok(acc)
    }

    /// Coefficient of `x^exps` as a ring element.
    pub fn coefficient(&self, exps: &[i32]) -> RingElement {
        let r = self.ctx.nvars();
        let mut out = Terms::new();
        for (m, c) in self.terms.range(exps.to_vec()..) {
            if m[..r] != *exps {
                break;
            }
            out.insert(m[r..].to_vec(), c.clone());
        }
        RingElement::from_terms_unchecked(&self.ctx.ring, out)
    }

    /// The constant term (augmentation).
    pub fn constant_term(&self) -> RingElement {
        self.coefficient(&vec![0; self.ctx.nvars()])
    }

    /// Iterate over `(x-exponents, coefficient)` with coefficients grouped
    /// into ring elements.
    pub fn coefficients(&self) -> Vec<(Vec<i32>, RingElement)> {
        let r = self.ctx.nvars();
        let mut grouped: BTreeMap<Vec<i32>, Terms> = BTreeMap::new();
        for (m, c) in &self.terms {
            grouped.entry(m[..r].to_vec()).or_default().insert(m[r..].to_vec(), c.clone());
        }
        grouped
            .into_iter()
            .map(|(x, t)| (x, RingElement::from_terms_unchecked(&self.ctx.ring, t)))
            .collect()
    }

    /// The part of total `x`-degree exactly `d`.
    pub fn homogeneous_part(&self, d: i32) -> Self {
        let r = self.ctx.nvars();
        let terms = self.terms.iter().filter(|(m, _)| xdeg(m, r) == d).map(|(m, c)| (m.clone(), c.clone())).collect();
        TruncatedSeries { ctx: self.ctx.clone(), prec: self.prec, terms }
    }

    /// The lowest nonzero homogeneous part and its degree.
    pub fn lowest_form(&self) -> Option<(i32, Self)> {
        if self.is_zero() {
            return None;
        }
        let k = self.valuation();
        Some((k, self.homogeneous_part(k)))
    }

    /// Part of total degree `d`, where each variable has degree 1 and
    /// coefficients carry their ring degree.
    pub fn graded_component(&self, d: i32) -> Self {
        let r = self.ctx.nvars();
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| xdeg(m, r) + self.ctx.ring.mono_degree(&m[r..]) == d)
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        TruncatedSeries { ctx: self.ctx.clone(), prec: self.prec, terms }
    }

    /// Common total degree (variables plus coefficients) of all terms.
    pub fn total_degree(&self) -> Degree {
        let r = self.ctx.nvars();
        let mut degs = self.terms.keys().map(|m| xdeg(m, r) + self.ctx.ring.mono_degree(&m[r..]));
        match degs.next() {
            None => Degree::Zero,
            Some(d) if degs.all(|e| e == d) => Degree::Of(d),
            Some(_) => Degree::Inhomogeneous,
        }
    }

    /// Keep the terms whose coefficient monomials have exactly the given
    /// exponents at the given generator positions, and drop those
    /// generators from them.
    pub fn generator_coefficient(&self, wanted: &[(usize, i32)]) -> Self {
        let r = self.ctx.nvars();
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| wanted.iter().all(|(g, e)| m[r + g] == *e))
            .map(|(m, c)| {
                let mut m = m.clone();
                for (g, _) in wanted {
                    m[r + g] = 0;
                }
                (m, c.clone())
            })
            .collect();
        TruncatedSeries { ctx: self.ctx.clone(), prec: self.prec, terms }
    }

    /// Apply `hom` to every coefficient, keeping the variables. The target
    /// context must have the same number of variables.
    pub fn map_coefficients(&self, target: &Arc<SeriesCtx>, hom: &RingHom) -> Result<Self> {
        let images: Vec<Self> = (0..self.ctx.nvars()).map(|i| Self::var(target, i)).collect();
        self.substitute_with(&images, Some(hom))
    }

    /// Substitute `images[i]` for the `i`-th variable.
    pub fn substitute(&self, images: &[Self]) -> Result<Self> {
        self.substitute_with(images, None)
    }

    /// Substitute images for the variables, mapping coefficients through
    /// `hom` first (identity when `None`).
    pub fn substitute_with(&self, images: &[Self], hom: Option<&RingHom>) -> Result<Self> {
        let r = self.ctx.nvars();
        if images.len() != r {
            return Err(Error::ContextMismatch(format!("{} images for {r} variables", images.len())));
        }
        let target = images
            .first()
            .map(|s| s.ctx.clone())
            .ok_or_else(|| Error::ContextMismatch("no images".into()))?;
        if images.iter().any(|s| !same_ctx(&s.ctx, &target)) {
            return Err(Error::ContextMismatch("images live in different contexts".into()));
        }
        match hom {
            Some(h) => {
                if h.source() != &self.ctx.ring || h.target() != &target.ring {
                    return Err(Error::ContextMismatch("homomorphism does not match the series rings".into()));
                }
            }
            None => {
                if self.ctx.ring != target.ring {
                    return Err(Error::ContextMismatch("substitution needs a coefficient map".into()));
                }
            }
        }
        if images.iter().any(|s| !s.constant_term().is_zero()) {
            return Err(Error::NotTopologicallyNilpotent);
        }

        let vmin = images.iter().map(|s| s.valuation()).min().unwrap();
        let mut prec = target.order.min((self.prec + 1).saturating_mul(vmin) - 1);
        for (i, img) in images.iter().enumerate() {
            let lowest_use = self.terms.keys().filter(|m| m[i] > 0).map(|m| xdeg(m, r)).min();
            if let Some(d) = lowest_use {
                prec = prec.min(img.prec + (d - 1) * vmin);
            }
        }

        let rt = target.nvars();
        let mut powers: HashMap<(usize, i32), Terms> = HashMap::new();
        let mut coeff_cache: HashMap<Vec<i32>, RingElement> = HashMap::new();
        let mut out = Terms::new();
        let mut grouped: BTreeMap<Vec<i32>, Vec<(&[i32], &Scalar)>> = BTreeMap::new();
        for (m, c) in &self.terms {
            grouped.entry(m[..r].to_vec()).or_default().push((&m[r..], c));
        }
        for (xm, coeffs) in grouped {
            // Coefficient of this x-monomial, mapped into the target ring.
            let mut coeff = Terms::new();
            for (g, c) in coeffs {
                let img = match hom {
                    None => {
                        let mut t = Terms::new();
                        t.insert(g.to_vec(), c.clone());
                        RingElement::from_terms_unchecked(&target.ring, t)
                    }
                    Some(h) => {
                        let c = h.map_scalar(c)?;
                        let mono = match coeff_cache.get(g) {
                            Some(v) => v.clone(),
                            None => {
                                let v = h.map_mono(g)?;
                                coeff_cache.insert(g.to_vec(), v.clone());
                                v
                            }
                        };
                        mono.mul(&RingElement::from_scalar(&target.ring, c))?
                    }
                };
                for (gm, gc) in img.terms() {
                    let mut m = vec![0; rt];
                    m.extend_from_slice(gm);
                    poly::add_term(&mut coeff, m, gc.clone());
                }
            }
            if coeff.is_empty() {
                continue;
            }
            let mut acc = coeff;
            for (i, e) in xm.iter().enumerate() {
                if *e == 0 {
                    continue;
                }
                let pw = power_of(&mut powers, &images[i].terms, i, *e, rt, prec);
                acc = mul_trunc(&acc, pw, rt, prec);
                if acc.is_empty() {
                    break;
                }
            }
            for (m, c) in acc {
                poly::add_term(&mut out, m, c);
            }
        }
        Ok(Self::from_terms(&target, prec, out))
    }

    /// Compositional inverse of a univariate series `u·x + …` with `u` a unit.
    pub fn reversion(&self) -> Result<Self> {
        if self.ctx.nvars() != 1 {
            return Err(Error::ContextMismatch("reversion needs a univariate series".into()));
        }
        if !self.constant_term().is_zero() {
            return Err(Error::NotReversible);
        }
        let lead = self.coefficient(&[1]);
        let lead_inv = lead.inverse().ok_or(Error::NotReversible)?;
        let ctx = &self.ctx;
        let prec = self.prec;
        // Fix the coefficients of the inverse one degree at a time: the
        // degree-d coefficient of λ(μ) is u·μ_d plus terms in lower μ_j.
        let mut mu = TruncatedSeries::monomial(ctx, &[1], &lead_inv)?.truncate(prec);
        for d in 2..=prec {
            let comp = self.substitute(&[mu.clone()])?;
            let err = comp.coefficient(&[d]);
            if err.is_zero() {
                continue;
            }
            let fix = err.mul(&lead_inv)?.neg();
            mu = mu.add(&TruncatedSeries::monomial(ctx, &[d], &fix)?)?;
        }
        Ok(mu.truncate(prec))
    }

    /// The quotient `q` with `divisor · q = self`, exact over the
    /// coefficient ring, or `NotDivisible`.
    pub fn exact_divide(&self, divisor: &Self) -> Result<Self> {
        self.check(divisor)?;
        let r = self.ctx.nvars();
        let (k, lead) = divisor
            .lowest_form()
            .ok_or_else(|| Error::not_divisible("division by zero"))?;
        let split = |s: &Self| -> BTreeMap<i32, Terms> {
            let mut out: BTreeMap<i32, Terms> = BTreeMap::new();
            for (m, c) in &s.terms {
                out.entry(xdeg(m, r)).or_default().insert(m.clone(), c.clone());
            }
            out
        };
        let num = split(self);
        let den = split(divisor);
        if num.range(..k).next().is_some() {
            return Err(Error::not_divisible("dividend vanishes to lower order than the divisor"));
        }
        let prec = if self.is_zero() {
            self.prec - k
        } else {
            (self.prec - k).min(divisor.prec - k + self.valuation() - k)
        };
        let mask = self.ctx.laurent_mask();
        let integral = self.ctx.ring.is_integral();
        let mut quot: BTreeMap<i32, Terms> = BTreeMap::new();
        let start = self.valuation().min(self.prec + 1) - k;
        for d in start.max(0)..=prec {
            let mut rem = num.get(&(d + k)).cloned().unwrap_or_default();
            for (j, uj) in den.range(k + 1..).take_while(|(j, _)| **j <= d + k) {
                if let Some(q) = quot.get(&(d + k - j)) {
                    for (m, c) in mul_trunc(uj, q, r, i32::MAX) {
                        poly::add_term(&mut rem, m, c.neg());
                    }
                }
            }
            if rem.is_empty() {
                continue;
            }
            let q = poly::div_exact(&rem, &lead.terms, &mask, integral)
                .ok_or_else(|| Error::not_divisible(format!("in degree {}", d + k)))?;
            quot.insert(d, q);
        }
        let terms = quot.into_values().flatten().collect();
        Ok(Self::from_terms(&self.ctx, prec, terms))
    }

    /// Human-readable rendering with terms in graded-lexicographic order.
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let r = self.ctx.nvars();
        let mut groups = self.coefficients();
        groups.sort_by(|(a, _), (b, _)| {
            let (da, db): (i32, i32) = (a.iter().sum(), b.iter().sum());
            da.cmp(&db).then_with(|| b.cmp(a))
        });
        let mut out = String::new();
        for (xm, coeff) in groups {
            let xs: Vec<String> = (0..r)
                .filter(|i| xm[*i] != 0)
                .map(|i| {
                    let n = &self.ctx.names[i];
                    if xm[i] == 1 { n.clone() } else { format!("{n}^{}", xm[i]) }
                })
                .collect();
            let xs = xs.join("*");
            let cs = coeff.to_string();
            let (neg, body) = if coeff.num_terms() == 1 && cs.starts_with('-') {
                (true, cs[1..].to_string())
            } else {
                (false, cs)
            };
            let body = if xs.is_empty() {
                body
            } else if body == "1" {
                xs
            } else if coeff.num_terms() > 1 {
                format!("({body})*{xs}")
            } else {
                format!("{body}*{xs}")
            };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            out.push_str(&body);
        }
        out
    }

    /// JSON rendering: a list of `{exponents, coefficient}` objects.
    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .coefficients()
            .into_iter()
            .map(|(x, c)| json!({ "exponents": x, "coefficient": c.to_string() }))
            .collect();
        json!({ "precision": self.prec, "terms": terms })
    }
}

fn power_of<'a>(
    cache: &'a mut HashMap<(usize, i32), Terms>,
    base: &Terms,
    i: usize,
    e: i32,
    r: usize,
    bound: i32,
) -> &'a Terms {
    if !cache.contains_key(&(i, e)) {
        let val = if e == 1 {
            base.iter().filter(|(m, _)| xdeg(m, r) <= bound).map(|(m, c)| (m.clone(), c.clone())).collect()
        } else {
            let prev = power_of(cache, base, i, e - 1, r, bound).clone();
            mul_trunc(&prev, base, r, bound)
        };
        cache.insert((i, e), val);
    }
    &cache[&(i, e)]
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + O({})", self.render(), self.prec + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{BaseRing, Generator};

    fn tring() -> Arc<RingSpec> {
        RingSpec::new(BaseRing::Integers, vec![Generator::new("t1", -1), Generator::new("t2", -2)]).unwrap()
    }

    fn x(ctx: &Arc<SeriesCtx>) -> TruncatedSeries {
        TruncatedSeries::var(ctx, 0)
    }

    #[test]
    fn products() {
        let z = RingSpec::integers();
        let c5 = SeriesCtx::standard(1, 5, &z).unwrap();
        assert_eq!(x(&c5).mul(&x(&c5)).unwrap(), x(&c5).pow(2));
        assert_eq!(x(&c5).pow(2).render(), "x^2");

        let c3 = SeriesCtx::standard(1, 3, &z).unwrap();
        let one = TruncatedSeries::one(&c3);
        let a = one.sub(&x(&c3)).unwrap();
        let b = one.add(&x(&c3)).unwrap().add(&x(&c3).pow(2)).unwrap().add(&x(&c3).pow(3)).unwrap();
        assert_eq!(a.mul(&b).unwrap().render(), "1");
    }

    #[test]
    fn product_with_coefficients() {
        let r = tring();
        let c = SeriesCtx::standard(1, 6, &r).unwrap();
        let t1 = RingElement::generator(&r, "t1").unwrap();
        let a = x(&c).add(&x(&c).pow(2).scale(&t1).unwrap()).unwrap();
        assert_eq!(a.mul(&x(&c)).unwrap().render(), "x^2 + t1*x^3");
    }

    #[test]
    fn sharp_precision() {
        let z = RingSpec::integers();
        let c = SeriesCtx::standard(1, 10, &z).unwrap();
        let a = x(&c).truncate(4);
        let b = x(&c).pow(3).truncate(6);
        assert_eq!(a.mul(&b).unwrap().precision(), 7);
    }

    #[test]
    fn substitution_examples() {
        let z = RingSpec::integers();
        let c1 = SeriesCtx::standard(1, 4, &z).unwrap();
        let c2 = SeriesCtx::new(vec!["x".into(), "y".into()], 4, &z).unwrap();
        let xy = TruncatedSeries::var(&c2, 0).add(&TruncatedSeries::var(&c2, 1)).unwrap();
        let s = x(&c1).pow(2).substitute(&[xy]).unwrap();
        assert_eq!(s.render(), "x^2 + 2*x*y + y^2");
        assert_eq!(x(&c1).pow(2).substitute(&[x(&c1)]).unwrap(), x(&c1).pow(2));

        let one = TruncatedSeries::one(&c1);
        assert_eq!(x(&c1).substitute(&[one]).unwrap_err(), Error::NotTopologicallyNilpotent);
    }

    #[test]
    fn steenrod_substitution_mod_two() {
        let f2t = RingSpec::new(BaseRing::PrimeField(2), vec![Generator::new("t", 1)]).unwrap();
        let c = SeriesCtx::standard(1, 5, &f2t).unwrap();
        let t = RingElement::generator(&f2t, "t").unwrap();
        let gamma = x(&c).scale(&t.neg()).unwrap().add(&x(&c).pow(2)).unwrap();
        let out = x(&c).substitute(&[gamma]).unwrap();
        assert_eq!(out.render(), "t*x + x^2");
        assert_eq!(out.graded_component(2), out);
    }

    #[test]
    fn reversion_examples() {
        let z = RingSpec::integers();
        let c = SeriesCtx::standard(1, 4, &z).unwrap();
        assert_eq!(x(&c).reversion().unwrap(), x(&c));
        let lam = x(&c).add(&x(&c).pow(2)).unwrap();
        assert_eq!(lam.reversion().unwrap().render(), "x - x^2 + 2*x^3 - 5*x^4");

        let r = tring();
        let c = SeriesCtx::standard(1, 3, &r).unwrap();
        let t1 = RingElement::generator(&r, "t1").unwrap();
        let t2 = RingElement::generator(&r, "t2").unwrap();
        let lam = x(&c)
            .add(&x(&c).pow(2).scale(&t1).unwrap())
            .unwrap()
            .add(&x(&c).pow(3).scale(&t2).unwrap())
            .unwrap();
        assert_eq!(lam.reversion().unwrap().render(), "x - t1*x^2 + (2*t1^2 - t2)*x^3");

        let two_x = x(&c).scale_int(2);
        assert_eq!(two_x.reversion().unwrap_err(), Error::NotReversible);
    }

    #[test]
    fn division_examples() {
        let b = RingSpec::new(BaseRing::Integers, vec![Generator::invertible("b", -1)]).unwrap();
        let c = SeriesCtx::standard(1, 5, &b).unwrap();
        let beta = RingElement::generator(&b, "b").unwrap();
        let p = x(&c).pow(2).add(&x(&c).pow(3).scale(&beta).unwrap()).unwrap();
        let q = p.exact_divide(&x(&c)).unwrap();
        assert_eq!(q.render(), "x + b*x^2");
        assert_eq!(q.precision(), 4);

        let z = RingSpec::integers();
        let c2 = SeriesCtx::standard(2, 4, &z).unwrap();
        let x1 = TruncatedSeries::var(&c2, 0);
        let x2 = TruncatedSeries::var(&c2, 1);
        assert!(matches!(x1.exact_divide(&x2), Err(Error::NotDivisible(_))));
        assert!(matches!(x1.exact_divide(&x1.scale_int(2)), Err(Error::NotDivisible(_))));
    }

    #[test]
    fn graded_components() {
        let r = tring();
        let c = SeriesCtx::standard(1, 4, &r).unwrap();
        let t1 = RingElement::generator(&r, "t1").unwrap();
        let p = x(&c).add(&x(&c).pow(2).scale(&t1).unwrap()).unwrap();
        assert_eq!(p.graded_component(1), p);
        let q = TruncatedSeries::one(&c).add(&x(&c)).unwrap();
        assert_eq!(q.graded_component(0).render(), "1");
    }
}
