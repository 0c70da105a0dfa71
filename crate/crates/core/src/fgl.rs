//! Formal group laws as bivariate truncated series, and morphisms between
//! them.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ring::{BaseRing, Generator, RingElement, RingHom, RingSpec};
use crate::scalar::{Rational, Scalar};
use crate::series::{SeriesCtx, TruncatedSeries};

/// A formal group law `F(x, y) = x + y + Σ a_ij x^i y^j`.
#[derive(Clone, Debug, PartialEq)]
pub struct FormalGroupLaw {
    name: String,
    law: TruncatedSeries,
}

fn bivariate(ring: &Arc<RingSpec>, prec: i32) -> Result<Arc<SeriesCtx>> {
    SeriesCtx::new(vec!["x".into(), "y".into()], prec, ring)
}

fn univariate(ring: &Arc<RingSpec>, prec: i32) -> Result<Arc<SeriesCtx>> {
    SeriesCtx::new(vec!["x".into()], prec, ring)
}

impl FormalGroupLaw {
    /// Wrap a bivariate series after checking the group-law axioms to its
    /// precision.
    pub fn from_series(name: impl Into<String>, law: TruncatedSeries) -> Result<Self> {
        let ctx = law.ctx().clone();
        if ctx.nvars() != 2 {
            return Err(Error::NotAGroupLaw("a law needs exactly two variables".into()));
        }
        let x = TruncatedSeries::var(&ctx, 0);
        let y = TruncatedSeries::var(&ctx, 1);
        let zero = TruncatedSeries::zero(&ctx);
        if !law.constant_term().is_zero() || !law.homogeneous_part(1).agrees_with(&x.add(&y)?) {
            return Err(Error::NotAGroupLaw("linear part is not x + y".into()));
        }
        if !law.substitute(&[x.clone(), zero.clone()])?.agrees_with(&x) {
            return Err(Error::NotAGroupLaw("F(x, 0) != x".into()));
        }
        if !law.substitute(&[y.clone(), x.clone()])?.agrees_with(&law) {
            return Err(Error::NotAGroupLaw("F is not symmetric".into()));
        }
        let tri = SeriesCtx::new(vec!["x".into(), "y".into(), "z".into()], ctx.order(), ctx.ring())?;
        let (a, b, c) = (
            TruncatedSeries::var(&tri, 0),
            TruncatedSeries::var(&tri, 1),
            TruncatedSeries::var(&tri, 2),
        );
        let ab = law.substitute(&[a.clone(), b.clone()])?;
        let bc = law.substitute(&[b, c.clone()])?;
        let left = law.substitute(&[ab, c])?;
        let right = law.substitute(&[a, bc])?;
        if !left.agrees_with(&right) {
            return Err(Error::NotAGroupLaw("F is not associative".into()));
        }
        Ok(FormalGroupLaw { name: name.into(), law })
    }

    /// `x + y`.
    pub fn additive(ring: &Arc<RingSpec>, prec: i32) -> Result<Self> {
        let ctx = bivariate(ring, prec)?;
        let law = TruncatedSeries::var(&ctx, 0).add(&TruncatedSeries::var(&ctx, 1))?;
        Ok(FormalGroupLaw { name: "additive".into(), law })
    }

    /// `x + y − β x y` for a chosen `β` in the coefficient ring.
    pub fn multiplicative_with(beta: &RingElement, prec: i32) -> Result<Self> {
        let ctx = bivariate(beta.spec(), prec)?;
        let x = TruncatedSeries::var(&ctx, 0);
        let y = TruncatedSeries::var(&ctx, 1);
        let law = x.add(&y)?.sub(&x.mul(&y)?.scale(beta)?)?;
        Ok(FormalGroupLaw { name: "multiplicative".into(), law })
    }

    /// `x + y − β x y` over `ℤ[β]`, `deg β = −1`.
    pub fn multiplicative(prec: i32) -> Result<Self> {
        let ring = RingSpec::new(BaseRing::Integers, vec![Generator::new("beta", -1)])?;
        Self::multiplicative_with(&RingElement::generator(&ring, "beta")?, prec)
    }

    /// `x + y − β x y` over `ℤ[β^{±1}]`.
    pub fn multiplicative_periodic(prec: i32) -> Result<Self> {
        let ring = RingSpec::new(BaseRing::Integers, vec![Generator::invertible("beta", -1)])?;
        let mut law = Self::multiplicative_with(&RingElement::generator(&ring, "beta")?, prec)?;
        law.name = "multiplicative_periodic".into();
        Ok(law)
    }

    /// `x + y + a11·xy + a12·(x²y + xy²)` over `ℤ[a11, a12]`: the most
    /// general law through total degree 3. Higher precision is rejected,
    /// since no finite polynomial is a group law there.
    pub fn generic_cubic(prec: i32) -> Result<Self> {
        let ring = RingSpec::new(
            BaseRing::Integers,
            vec![Generator::new("a11", -1), Generator::new("a12", -2)],
        )?;
        let ctx = bivariate(&ring, prec)?;
        let x = TruncatedSeries::var(&ctx, 0);
        let y = TruncatedSeries::var(&ctx, 1);
        let a11 = RingElement::generator(&ring, "a11")?;
        let a12 = RingElement::generator(&ring, "a12")?;
        let xy = x.mul(&y)?;
        let law = x
            .add(&y)?
            .add(&xy.scale(&a11)?)?
            .add(&xy.mul(&x.add(&y)?)?.scale(&a12)?)?;
        Self::from_series("generic", law)
    }

    /// The law `λ(F(λ⁻¹(x), λ⁻¹(y)))`, where `λ = x + …` lives over an
    /// extension of the base law's ring (generators matched by name).
    pub fn twisted(base: &Self, lambda: &TruncatedSeries) -> Result<Self> {
        let ring = lambda.ring().clone();
        if lambda.ctx().nvars() != 1 || !lambda.coefficient(&[1]).is_one() || !lambda.constant_term().is_zero() {
            return Err(Error::NotAGroupLaw("twisting series must be x + higher terms".into()));
        }
        let prec = base.precision().min(lambda.precision());
        let inc = RingHom::inclusion(base.ring(), &ring)?;
        let ctx = bivariate(&ring, prec)?;
        let lifted = base.law.map_coefficients(&ctx, &inc)?;
        let mu = lambda.reversion()?;
        let x = TruncatedSeries::var(&ctx, 0);
        let y = TruncatedSeries::var(&ctx, 1);
        let inner = lifted.substitute(&[mu.substitute(&[x])?, mu.substitute(&[y])?])?;
        let law = lambda.substitute(&[inner])?;
        FormalGroupLaw::from_series(format!("{}~twisted", base.name), law)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn ring(&self) -> &Arc<RingSpec> {
        self.law.ring()
    }

    pub fn precision(&self) -> i32 {
        self.law.precision()
    }

    pub fn series(&self) -> &TruncatedSeries {
        &self.law
    }

    /// Coefficient `a_ij` of `x^i y^j`.
    pub fn coefficient(&self, i: i32, j: i32) -> RingElement {
        self.law.coefficient(&[i, j])
    }

    /// The same law read at a lower precision.
    pub fn truncate(&self, prec: i32) -> Result<Self> {
        let ctx = bivariate(self.ring(), prec.min(self.precision()))?;
        let x = TruncatedSeries::var(&ctx, 0);
        let y = TruncatedSeries::var(&ctx, 1);
        Ok(FormalGroupLaw { name: self.name.clone(), law: self.law.substitute(&[x, y])? })
    }

    /// The law with coefficients pushed through `hom`.
    pub fn map_coefficients(&self, hom: &RingHom) -> Result<Self> {
        let ctx = bivariate(hom.target(), self.precision())?;
        Ok(FormalGroupLaw { name: self.name.clone(), law: self.law.map_coefficients(&ctx, hom)? })
    }

    /// The series `ι(x)` with `F(x, ι(x)) = 0`.
    pub fn formal_inverse(&self) -> Result<TruncatedSeries> {
        let ctx = univariate(self.ring(), self.precision())?;
        let x = TruncatedSeries::var(&ctx, 0);
        // ∂F/∂y at the origin is 1, so the degree-d coefficient of
        // F(x, ι(x)) is ι_d plus terms in lower coefficients.
        let mut inv = x.neg();
        for d in 2..=self.precision() {
            let err = self.law.substitute(&[x.clone(), inv.clone()])?.coefficient(&[d]);
            if !err.is_zero() {
                inv = inv.sub(&TruncatedSeries::monomial(&ctx, &[d], &err)?)?;
            }
        }
        Ok(inv)
    }

    /// `s₁ +_F s₂`.
    pub fn sum(&self, s1: &TruncatedSeries, s2: &TruncatedSeries) -> Result<TruncatedSeries> {
        self.law.substitute(&[s1.clone(), s2.clone()])
    }

    /// `[n]_F(s)`; negative `n` goes through the formal inverse.
    pub fn int_multiple(&self, n: i64, s: &TruncatedSeries) -> Result<TruncatedSeries> {
        if !s.constant_term().is_zero() {
            return Err(Error::NotTopologicallyNilpotent);
        }
        let base = if n < 0 { self.formal_inverse()?.substitute(std::slice::from_ref(s))? } else { s.clone() };
        let mut acc = TruncatedSeries::zero(s.ctx());
        for _ in 0..n.unsigned_abs() {
            acc = self.sum(&acc, &base)?;
        }
        Ok(acc)
    }

    /// Whether the formal inverse is `−x`.
    pub fn is_additive_type(&self) -> Result<bool> {
        let inv = self.formal_inverse()?;
        let x = TruncatedSeries::var(inv.ctx(), 0);
        Ok(inv.agrees_with(&x.neg()))
    }
}

/// Result of checking the morphism identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MorphismCheck {
    Holds,
    /// First bidegree `(i, j)`, in graded-lexicographic order, where the
    /// two sides differ.
    FailsAt(i32, i32),
}

impl MorphismCheck {
    pub fn holds(&self) -> bool {
        *self == MorphismCheck::Holds
    }
}

/// A pair `(φ, γ)` with `φ(F₁)(γ(x), γ(y)) = γ(F₂(x, y))`.
#[derive(Clone, Debug)]
pub struct FglMorphism {
    pub source: FormalGroupLaw,
    pub target: FormalGroupLaw,
    pub phi: RingHom,
    pub gamma: TruncatedSeries,
}

impl FglMorphism {
    pub fn new(
        source: FormalGroupLaw,
        target: FormalGroupLaw,
        phi: RingHom,
        gamma: TruncatedSeries,
    ) -> Result<Self> {
        if phi.source() != source.ring() || phi.target() != target.ring() {
            return Err(Error::ContextMismatch("coefficient map does not match the laws".into()));
        }
        if gamma.ctx().nvars() != 1 || gamma.ring() != target.ring() {
            return Err(Error::ContextMismatch("γ must be univariate over the target ring".into()));
        }
        if !gamma.constant_term().is_zero() {
            return Err(Error::NotTopologicallyNilpotent);
        }
        Ok(FglMorphism { source, target, phi, gamma })
    }

    pub fn identity(law: &FormalGroupLaw) -> Result<Self> {
        let ctx = univariate(law.ring(), law.precision())?;
        Self::new(law.clone(), law.clone(), RingHom::identity(law.ring()), TruncatedSeries::var(&ctx, 0))
    }

    /// Check the defining identity to the common precision.
    pub fn verify(&self) -> Result<MorphismCheck> {
        let prec = self.source.precision().min(self.target.precision()).min(self.gamma.precision());
        let ctx = bivariate(self.target.ring(), prec)?;
        let x = TruncatedSeries::var(&ctx, 0);
        let y = TruncatedSeries::var(&ctx, 1);
        let gx = self.gamma.substitute(std::slice::from_ref(&x))?;
        let gy = self.gamma.substitute(std::slice::from_ref(&y))?;
        let left = self.source.series().substitute_with(&[gx, gy], Some(&self.phi))?;
        let f2 = self.target.series().substitute(&[x, y])?;
        let right = self.gamma.substitute(&[f2])?;
        let p = left.precision().min(right.precision());
        let diff = left.sub(&right)?.truncate(p);
        let mut bad: Vec<Vec<i32>> = diff.coefficients().into_iter().map(|(m, _)| m).collect();
        bad.sort_by_key(|m| (m[0] + m[1], std::cmp::Reverse(m[0])));
        Ok(match bad.first() {
            None => MorphismCheck::Holds,
            Some(m) => MorphismCheck::FailsAt(m[0], m[1]),
        })
    }

    /// The morphism `self` followed by `next`:
    /// `(φ₂∘φ₁, φ₂(γ₁)∘γ₂)`.
    pub fn then(&self, next: &FglMorphism) -> Result<Self> {
        if self.target.ring() != next.source.ring() {
            return Err(Error::ContextMismatch("morphisms do not compose".into()));
        }
        let phi = self.phi.then(&next.phi)?;
        let ctx = univariate(next.target.ring(), self.gamma.precision().min(next.gamma.precision()))?;
        let g2 = next.gamma.substitute(&[TruncatedSeries::var(&ctx, 0)])?;
        let gamma = self.gamma.substitute_with(&[g2], Some(&next.phi))?;
        Self::new(self.source.clone(), next.target.clone(), phi, gamma)
    }

    /// Inverse Todd genus `γ(x)/x`.
    pub fn inverse_todd(&self) -> Result<TruncatedSeries> {
        let x = TruncatedSeries::var(self.gamma.ctx(), 0);
        self.gamma.exact_divide(&x)
    }
}

/// Generators `t_{p^r − 1}` for `p^r ≤ prec`, named `t1, t3, …` for `p = 2`.
fn chow_trace_generators(p: u32, prec: i32) -> Vec<(i32, Generator)> {
    let mut out = Vec::new();
    let mut q = p as i64;
    while q <= prec as i64 {
        let i = (q - 1) as i32;
        out.push((q as i32, Generator::new(format!("t{i}"), -i)));
        q *= p as i64;
    }
    out
}

/// The twisting series `x + Σ t_i x^{i+1}` over `ring`, for the generators
/// `t1, …, tK` present there.
pub fn twisting_series(ring: &Arc<RingSpec>, prefix: &str, k: usize, prec: i32) -> Result<TruncatedSeries> {
    let ctx = univariate(ring, prec)?;
    let mut lam = TruncatedSeries::var(&ctx, 0);
    for i in 1..=k {
        let t = RingElement::generator(ring, &format!("{prefix}{i}"))?;
        lam = lam.add(&TruncatedSeries::monomial(&ctx, &[i as i32 + 1], &t)?)?;
    }
    Ok(lam)
}

fn twist_generators(prefix: &str, k: usize) -> Vec<Generator> {
    (1..=k).map(|i| Generator::new(format!("{prefix}{i}"), -(i as i32))).collect()
}

/// Named morphisms used throughout.
pub mod catalogue {
    use super::*;

    /// The total Steenrod operation: `(id, −t^{p−1}x + x^p)` from the
    /// additive law over `𝔽_p` to the additive law over `𝔽_p[t]`, `deg t = 1`.
    pub fn steenrod(p: u32, prec: i32) -> Result<FglMorphism> {
        let src_ring = RingSpec::prime_field(p)?;
        let tgt_ring = src_ring.extend(vec![Generator::new("t", 1)])?;
        let ctx = univariate(&tgt_ring, prec)?;
        let x = TruncatedSeries::var(&ctx, 0);
        let t = RingElement::generator(&tgt_ring, "t")?;
        let gamma = x.pow(p).sub(&x.scale(&t.pow(p - 1))?)?;
        FglMorphism::new(
            FormalGroupLaw::additive(&src_ring, prec)?,
            FormalGroupLaw::additive(&tgt_ring, prec)?,
            RingHom::inclusion(&src_ring, &tgt_ring)?,
            gamma,
        )
    }

    /// The Chow-trace twist `(id, x + Σ_r t_{p^r−1} x^{p^r})` between
    /// additive laws over `𝔽_p` and `𝔽_p[t_{p−1}, t_{p²−1}, …]`.
    pub fn chow_trace(p: u32, prec: i32) -> Result<FglMorphism> {
        let src_ring = RingSpec::prime_field(p)?;
        let gens = chow_trace_generators(p, prec);
        let tgt_ring = src_ring.extend(gens.iter().map(|(_, g)| g.clone()).collect())?;
        let ctx = univariate(&tgt_ring, prec)?;
        let mut gamma = TruncatedSeries::var(&ctx, 0);
        for (q, g) in &gens {
            let t = RingElement::generator(&tgt_ring, &g.name)?;
            gamma = gamma.add(&TruncatedSeries::monomial(&ctx, &[*q], &t)?)?;
        }
        FglMorphism::new(
            FormalGroupLaw::additive(&src_ring, prec)?,
            FormalGroupLaw::additive(&tgt_ring, prec)?,
            RingHom::inclusion(&src_ring, &tgt_ring)?,
            gamma,
        )
    }

    /// The Chern character `(β ↦ 1, 1 − e^{−x})` from the periodic
    /// multiplicative law over `ℤ[β^{±1}]` to the additive law over `ℚ`.
    pub fn chern_character(prec: i32) -> Result<FglMorphism> {
        let source = FormalGroupLaw::multiplicative_periodic(prec)?;
        let q = RingSpec::rationals();
        let ctx = univariate(&q, prec)?;
        let mut gamma = TruncatedSeries::zero(&ctx);
        let mut fact: i64 = 1;
        for n in 1..=prec {
            fact *= n as i64;
            let sign = if n % 2 == 1 { 1 } else { -1 };
            let c = RingElement::from_scalar(&q, Scalar::Q(Rational::new(sign, fact)));
            gamma = gamma.add(&TruncatedSeries::monomial(&ctx, &[n], &c)?)?;
        }
        let phi = RingHom::new(source.ring(), &q, vec![("beta", RingElement::one(&q))])?;
        FglMorphism::new(source, FormalGroupLaw::additive(&q, prec)?, phi, gamma)
    }

    /// Finite approximation of the Landweber–Novikov operation with twist
    /// variables `t_1..t_K`. The source is the additive law over `ℤ`
    /// twisted by `λ_b = x + Σ b_i x^{i+1}`, a law over `ℤ[b_1..b_{N−1}]`
    /// whose coefficients are as free as the Lazard ring allows after
    /// inverting nothing. It maps to itself over `ℤ[b, t]` by `(b ↦ u, λ_t)`
    /// where `λ_t ∘ λ_b = x + Σ u_i x^{i+1}`. All `N − 1` of the `b_i` are
    /// needed for `φ(λ_b)` to match that composite through degree `N`.
    pub fn twist(k: usize, prec: i32) -> Result<FglMorphism> {
        let nb = (prec - 1).max(1) as usize;
        let z = RingSpec::integers();
        let src_ring = z.extend(twist_generators("b", nb))?;
        let tgt_ring = src_ring.extend(twist_generators("t", k))?;
        let lam_b = twisting_series(&src_ring, "b", nb, prec)?;
        let source = FormalGroupLaw::twisted(&FormalGroupLaw::additive(&z, prec)?, &lam_b)?
            .with_name(format!("twist({k})"));
        let inc = RingHom::inclusion(&src_ring, &tgt_ring)?;
        let target = source.map_coefficients(&inc)?;
        let lam_t = twisting_series(&tgt_ring, "t", k, prec)?;
        let lam_b_t = twisting_series(&tgt_ring, "b", nb, prec)?;
        let composite = lam_t.substitute(&[lam_b_t])?;
        let mut images = Vec::new();
        let names: Vec<String> = (1..=nb).map(|i| format!("b{i}")).collect();
        for i in 1..=nb {
            images.push(composite.coefficient(&[i as i32 + 1]));
        }
        let pairs = names.iter().map(|s| s.as_str()).zip(images).collect();
        let phi = RingHom::new(&src_ring, &tgt_ring, pairs)?;
        FglMorphism::new(source, target, phi, lam_t)
    }

    /// The twist of a law by `λ_t` as the morphism `(a_ij ↦ ã_ij, λ_t)`
    /// from `F` to `F[t]`, where `ã_ij` are the coefficients of the twisted
    /// law. Requires `F`'s ring generators to be named `a<i><j>`.
    pub fn twist_pair(base: &FormalGroupLaw, k: usize) -> Result<(FormalGroupLaw, FglMorphism)> {
        let prec = base.precision();
        let tgt_ring = base.ring().extend(twist_generators("t", k))?;
        let lam = twisting_series(&tgt_ring, "t", k, prec)?;
        let twisted = FormalGroupLaw::twisted(base, &lam)?;
        let mut pairs = Vec::new();
        for g in base.ring().generators() {
            let digits: Vec<i32> = g.name[1..].chars().filter_map(|c| c.to_digit(10)).map(|d| d as i32).collect();
            if !g.name.starts_with('a') || digits.len() != 2 {
                return Err(Error::InvalidRing(format!("generator `{}` is not a law coefficient", g.name)));
            }
            pairs.push((g.name.clone(), twisted.coefficient(digits[0], digits[1])));
        }
        let phi = RingHom::new(
            base.ring(),
            &tgt_ring,
            pairs.iter().map(|(n, e)| (n.as_str(), e.clone())).collect(),
        )?;
        let target = base.map_coefficients(&RingHom::inclusion(base.ring(), &tgt_ring)?)?;
        let m = FglMorphism::new(base.clone(), target, phi, lam)?;
        Ok((twisted, m))
    }
}
