//! Graded coefficient rings: a base (ℤ, ℚ or 𝔽_p) extended by named
//! polynomial generators, some of which may be inverted.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::poly::{self, Mono, Terms};
use crate::scalar::{Rational, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BaseRing {
    Integers,
    Rationals,
    PrimeField(u32),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Generator {
    pub name: String,
    pub degree: i32,
    pub invertible: bool,
}

impl Generator {
    pub fn new(name: impl Into<String>, degree: i32) -> Self {
        Generator { name: name.into(), degree, invertible: false }
    }

    pub fn invertible(name: impl Into<String>, degree: i32) -> Self {
        Generator { name: name.into(), degree, invertible: true }
    }
}

/// Coefficient ring `base[g_1, …, g_k]` (Laurent in the invertible `g_i`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingSpec {
    base: BaseRing,
    generators: Vec<Generator>,
}

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

impl RingSpec {
    pub fn new(base: BaseRing, generators: Vec<Generator>) -> Result<Arc<Self>> {
        if let BaseRing::PrimeField(p) = base {
            if !is_prime(p) || p > 46_337 {
                return Err(Error::InvalidRing(format!("{p} is not a supported prime")));
            }
        }
        for (i, g) in generators.iter().enumerate() {
            if g.name.is_empty() || !g.name.chars().next().unwrap().is_alphabetic() {
                return Err(Error::InvalidRing(format!("bad generator name `{}`", g.name)));
            }
            if generators[..i].iter().any(|h| h.name == g.name) {
                return Err(Error::InvalidRing(format!("duplicate generator `{}`", g.name)));
            }
        }
        Ok(Arc::new(RingSpec { base, generators }))
    }

    pub fn integers() -> Arc<Self> {
        Arc::new(RingSpec { base: BaseRing::Integers, generators: vec![] })
    }

    pub fn rationals() -> Arc<Self> {
        Arc::new(RingSpec { base: BaseRing::Rationals, generators: vec![] })
    }

    pub fn prime_field(p: u32) -> Result<Arc<Self>> {
        Self::new(BaseRing::PrimeField(p), vec![])
    }

    /// The same base with additional generators appended.
    pub fn extend(&self, more: Vec<Generator>) -> Result<Arc<Self>> {
        let mut gens = self.generators.clone();
        gens.extend(more);
        Self::new(self.base, gens)
    }

    pub fn base(&self) -> BaseRing {
        self.base
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn ngens(&self) -> usize {
        self.generators.len()
    }

    pub fn gen_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    pub fn characteristic(&self) -> u32 {
        match self.base {
            BaseRing::PrimeField(p) => p,
            _ => 0,
        }
    }

    /// Whether exact quotients must have integer coefficients.
    pub fn is_integral(&self) -> bool {
        self.base == BaseRing::Integers
    }

    pub fn scalar(&self, n: i64) -> Scalar {
        match self.base {
            BaseRing::PrimeField(p) => Scalar::modp(n, p),
            _ => Scalar::int(n),
        }
    }

    /// Embed a rational number; fails for fractions over ℤ or when the
    /// denominator vanishes mod p.
    pub fn scalar_from_rational(&self, r: &Rational) -> Result<Scalar> {
        match self.base {
            BaseRing::Integers if !r.is_integer() => {
                Err(Error::InvalidRing(format!("{r} is not an integer")))
            }
            BaseRing::Integers | BaseRing::Rationals => Ok(Scalar::Q(r.clone())),
            BaseRing::PrimeField(p) => r
                .reduce_mod(p)
                .map(|v| Scalar::Fp { v, p })
                .ok_or_else(|| Error::InvalidRing(format!("{r} is not defined mod {p}"))),
        }
    }

    pub(crate) fn laurent_mask(&self) -> Vec<bool> {
        self.generators.iter().map(|g| g.invertible).collect()
    }

    pub(crate) fn check_mono(&self, m: &[i32]) -> Result<()> {
        for (g, e) in self.generators.iter().zip(m) {
            if *e < 0 && !g.invertible {
                return Err(Error::InvalidExponent(g.name.clone()));
            }
        }
        Ok(())
    }

    pub(crate) fn mono_degree(&self, m: &[i32]) -> i32 {
        self.generators.iter().zip(m).map(|(g, e)| g.degree * e).sum()
    }

    /// Whether `scalar` is a unit of the base ring.
    pub(crate) fn is_unit_scalar(&self, c: &Scalar) -> bool {
        match self.base {
            BaseRing::Integers => c.is_one() || c.neg().is_one(),
            _ => !c.is_zero(),
        }
    }

    pub(crate) fn render_mono(&self, m: &[i32]) -> String {
        let parts: Vec<String> = self
            .generators
            .iter()
            .zip(m)
            .filter(|(_, e)| **e != 0)
            .map(|(g, e)| if *e == 1 { g.name.clone() } else { format!("{}^{}", g.name, e) })
            .collect();
        parts.join("*")
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.base {
            BaseRing::Integers => write!(f, "Z")?,
            BaseRing::Rationals => write!(f, "Q")?,
            BaseRing::PrimeField(p) => write!(f, "F{p}")?,
        }
        if !self.generators.is_empty() {
            let names: Vec<String> = self
                .generators
                .iter()
                .map(|g| if g.invertible { format!("{}^±1", g.name) } else { g.name.clone() })
                .collect();
            write!(f, "[{}]", names.join(","))?;
        }
        Ok(())
    }
}

/// Degree of a ring element in the grading carried by its generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Degree {
    Zero,
    Of(i32),
    Inhomogeneous,
}

/// Element of a [`RingSpec`], kept in canonical sparse form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingElement {
    spec: Arc<RingSpec>,
    pub(crate) terms: Terms,
}

impl RingElement {
    pub fn zero(spec: &Arc<RingSpec>) -> Self {
        RingElement { spec: spec.clone(), terms: Terms::new() }
    }

    pub fn one(spec: &Arc<RingSpec>) -> Self {
        Self::from_int(spec, 1)
    }

    pub fn from_int(spec: &Arc<RingSpec>, n: i64) -> Self {
        Self::from_scalar(spec, spec.scalar(n))
    }

    pub fn from_scalar(spec: &Arc<RingSpec>, c: Scalar) -> Self {
        let mut terms = Terms::new();
        poly::add_term(&mut terms, vec![0; spec.ngens()], c);
        RingElement { spec: spec.clone(), terms }
    }

    /// The generator named `name`.
    pub fn generator(spec: &Arc<RingSpec>, name: &str) -> Result<Self> {
        let i = spec
            .gen_index(name)
            .ok_or_else(|| Error::InvalidRing(format!("unknown generator `{name}`")))?;
        let mut m = vec![0; spec.ngens()];
        m[i] = 1;
        Self::monomial(spec, m, spec.scalar(1))
    }

    pub fn monomial(spec: &Arc<RingSpec>, exps: Vec<i32>, c: Scalar) -> Result<Self> {
        if exps.len() != spec.ngens() {
            return Err(Error::ContextMismatch("exponent vector length".into()));
        }
        spec.check_mono(&exps)?;
        let mut terms = Terms::new();
        poly::add_term(&mut terms, exps, c);
        Ok(RingElement { spec: spec.clone(), terms })
    }

    pub(crate) fn from_terms_unchecked(spec: &Arc<RingSpec>, terms: Terms) -> Self {
        RingElement { spec: spec.clone(), terms }
    }

    pub fn spec(&self) -> &Arc<RingSpec> {
        &self.spec
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && {
            let (m, c) = self.terms.iter().next().unwrap();
            c.is_one() && m.iter().all(|e| *e == 0)
        }
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Iterate over `(exponents, coefficient)` pairs in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&[i32], &Scalar)> {
        self.terms.iter().map(|(m, c)| (m.as_slice(), c))
    }

    /// Coefficient of the given generator monomial.
    pub fn coefficient(&self, exps: &[i32]) -> Scalar {
        self.terms.get(exps).cloned().unwrap_or_else(|| self.spec.scalar(0))
    }

    /// The constant coefficient, if this element is a base-ring scalar.
    pub fn as_scalar(&self) -> Option<Scalar> {
        if self.terms.is_empty() {
            return Some(self.spec.scalar(0));
        }
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            if m.iter().all(|e| *e == 0) {
                return Some(c.clone());
            }
        }
        None
    }

    fn same(&self, other: &Self) -> Result<()> {
        if self.spec != other.spec {
            return Err(Error::ContextMismatch(format!("{} vs {}", self.spec, other.spec)));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same(other)?;
        Ok(RingElement { spec: self.spec.clone(), terms: poly::add_terms(&self.terms, &other.terms) })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        RingElement { spec: self.spec.clone(), terms: poly::neg_terms(&self.terms) }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same(other)?;
        Ok(RingElement { spec: self.spec.clone(), terms: poly::mul_terms(&self.terms, &other.terms) })
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(&self.spec);
        for _ in 0..n {
            acc = acc.mul(self).unwrap();
        }
        acc
    }

    /// Inverse when this element is a unit monomial.
    pub fn inverse(&self) -> Option<Self> {
        if self.terms.len() != 1 {
            return None;
        }
        let (m, c) = self.terms.iter().next().unwrap();
        if !self.spec.is_unit_scalar(c) {
            return None;
        }
        let inv: Mono = m.iter().map(|e| -e).collect();
        self.spec.check_mono(&inv).ok()?;
        Self::monomial(&self.spec, inv, c.inv()?).ok()
    }

    /// Exact quotient in the ring, or `None` if `other` does not divide.
    pub fn div_exact(&self, other: &Self) -> Option<Self> {
        if self.spec != other.spec {
            return None;
        }
        poly::div_exact(&self.terms, &other.terms, &self.spec.laurent_mask(), self.spec.is_integral())
            .map(|terms| RingElement { spec: self.spec.clone(), terms })
    }

    pub fn degree_of(&self) -> Degree {
        let mut degs = self.terms.keys().map(|m| self.spec.mono_degree(m));
        match degs.next() {
            None => Degree::Zero,
            Some(d) if degs.all(|e| e == d) => Degree::Of(d),
            Some(_) => Degree::Inhomogeneous,
        }
    }

    /// Re-canonicalize from raw terms; a no-op on any stored element.
    pub fn canonicalize(&self) -> Self {
        let mut terms = Terms::new();
        for (m, c) in &self.terms {
            poly::add_term(&mut terms, m.clone(), c.clone());
        }
        RingElement { spec: self.spec.clone(), terms }
    }
}

pub(crate) fn render_terms(spec: &RingSpec, terms: &Terms) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (m, c)) in terms.iter().rev().enumerate() {
        let mono = spec.render_mono(m);
        let neg = c.is_negative();
        let abs = if neg { c.neg() } else { c.clone() };
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if mono.is_empty() {
            out.push_str(&abs.to_string());
        } else if abs.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{abs}*{mono}"));
        }
    }
    out
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", render_terms(&self.spec, &self.terms))
    }
}

/// How a homomorphism acts on base-ring scalars.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BaseMap {
    Identity,
    /// ℤ → ℚ.
    Include,
    /// ℤ or ℚ → 𝔽_p.
    Reduce,
}

/// A ring homomorphism determined by the base map and generator images.
#[derive(Clone, Debug, PartialEq)]
pub struct RingHom {
    source: Arc<RingSpec>,
    target: Arc<RingSpec>,
    base_map: BaseMap,
    images: Vec<Option<RingElement>>,
}

impl RingHom {
    /// Build a homomorphism from named generator images. Generators left
    /// out have no image; applying the map to them fails.
    pub fn new(
        source: &Arc<RingSpec>,
        target: &Arc<RingSpec>,
        images: Vec<(&str, RingElement)>,
    ) -> Result<Self> {
        let base_map = match (source.base(), target.base()) {
            (a, b) if a == b => BaseMap::Identity,
            (BaseRing::Integers, BaseRing::Rationals) => BaseMap::Include,
            (BaseRing::Integers, BaseRing::PrimeField(_)) => BaseMap::Reduce,
            (BaseRing::Rationals, BaseRing::PrimeField(_)) => BaseMap::Reduce,
            (a, b) => {
                return Err(Error::InvalidRing(format!("no base map {a:?} -> {b:?}")));
            }
        };
        let mut slots: Vec<Option<RingElement>> = vec![None; source.ngens()];
        for (name, img) in images {
            let i = source
                .gen_index(name)
                .ok_or_else(|| Error::InvalidRing(format!("unknown generator `{name}`")))?;
            if img.spec() != target {
                return Err(Error::ContextMismatch(format!("image of `{name}` lives in {}", img.spec())));
            }
            if source.generators()[i].invertible && img.inverse().is_none() {
                return Err(Error::NonUnitImage(name.to_string()));
            }
            slots[i] = Some(img);
        }
        Ok(RingHom { source: source.clone(), target: target.clone(), base_map, images: slots })
    }

    pub fn identity(spec: &Arc<RingSpec>) -> Self {
        Self::inclusion(spec, spec).expect("identity is always defined")
    }

    /// Send each source generator to the target generator of the same name.
    pub fn inclusion(source: &Arc<RingSpec>, target: &Arc<RingSpec>) -> Result<Self> {
        let mut images = Vec::new();
        for g in source.generators() {
            images.push((g.name.as_str(), RingElement::generator(target, &g.name)?));
        }
        Self::new(source, target, images)
    }

    pub fn source(&self) -> &Arc<RingSpec> {
        &self.source
    }

    pub fn target(&self) -> &Arc<RingSpec> {
        &self.target
    }

    pub fn base_map(&self) -> BaseMap {
        self.base_map
    }

    pub fn image(&self, name: &str) -> Option<&RingElement> {
        self.source.gen_index(name).and_then(|i| self.images[i].as_ref())
    }

    pub(crate) fn map_scalar(&self, c: &Scalar) -> Result<Scalar> {
        match (self.base_map, c) {
            (BaseMap::Identity | BaseMap::Include, _) => Ok(c.clone()),
            (BaseMap::Reduce, Scalar::Q(r)) => self.target.scalar_from_rational(r),
            (BaseMap::Reduce, Scalar::Fp { .. }) => Ok(c.clone()),
        }
    }

    /// Image of a generator monomial (coefficient 1).
    pub(crate) fn map_mono(&self, m: &[i32]) -> Result<RingElement> {
        let mut acc = RingElement::one(&self.target);
        for (i, e) in m.iter().enumerate() {
            if *e == 0 {
                continue;
            }
            let img = self.images[i]
                .as_ref()
                .ok_or_else(|| Error::UnmappedGenerator(self.source.generators()[i].name.clone()))?;
            let base = if *e < 0 { img.inverse().expect("checked at construction") } else { img.clone() };
            acc = acc.mul(&base.pow(e.unsigned_abs()))?;
        }
        Ok(acc)
    }

    pub fn apply(&self, r: &RingElement) -> Result<RingElement> {
        if r.spec() != &self.source {
            return Err(Error::ContextMismatch("element is not in the source ring".into()));
        }
        let mut out = Terms::new();
        let mut cache: HashMap<&Mono, RingElement> = HashMap::new();
        for (m, c) in &r.terms {
            let c = self.map_scalar(c)?;
            if c.is_zero() {
                continue;
            }
            let img = match cache.get(m) {
                Some(v) => v.clone(),
                None => {
                    let v = self.map_mono(m)?;
                    cache.insert(m, v.clone());
                    v
                }
            };
            for (im, ic) in &img.terms {
                poly::add_term(&mut out, im.clone(), ic.mul(&c));
            }
        }
        Ok(RingElement::from_terms_unchecked(&self.target, out))
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &RingHom) -> Result<RingHom> {
        if self.target != other.source {
            return Err(Error::ContextMismatch("homomorphisms do not compose".into()));
        }
        let mut images = Vec::new();
        let mut names = Vec::new();
        for (i, g) in self.source.generators().iter().enumerate() {
            if let Some(img) = &self.images[i] {
                names.push(g.name.clone());
                images.push(other.apply(img)?);
            }
        }
        let pairs = names.iter().map(|s| s.as_str()).zip(images).collect();
        RingHom::new(&self.source, &other.target, pairs)
    }
}
