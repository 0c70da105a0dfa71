//! Multiplicative operations on equivariant cohomology of `G/B`, applied
//! coordinate-wise on fixed points, and their coefficient tables in the
//! Schubert and dual bases.

use std::sync::Arc;

use serde_json::{json, Map, Value};

use crate::equivariant::{forgetful, FixedLocusClass, FlagCohomology};
use crate::error::{Error, Result};
use crate::fgl::FglMorphism;
use crate::group_ring::SCtx;
use crate::ring::{Degree, RingElement};
use crate::roots::{Elem, RootDatum};
use crate::series::TruncatedSeries;

/// A morphism of group laws realized on the formal group rings of one root
/// datum.
#[derive(Debug)]
pub struct Operation {
    morphism: FglMorphism,
    source: Arc<SCtx>,
    target: Arc<SCtx>,
    var_images: Vec<TruncatedSeries>,
}

impl Operation {
    /// Build source and target rings truncated at `order`.
    pub fn new(morphism: FglMorphism, datum: &Arc<RootDatum>, order: i32) -> Result<Self> {
        let source = SCtx::new(datum, &morphism.source, order)?;
        let target = SCtx::new(datum, &morphism.target, order)?;
        Self::from_contexts(morphism, source, target)
    }

    pub fn from_contexts(morphism: FglMorphism, source: Arc<SCtx>, target: Arc<SCtx>) -> Result<Self> {
        if !Arc::ptr_eq(source.datum(), target.datum()) {
            return Err(Error::ContextMismatch("source and target use different root data".into()));
        }
        if source.ring() != morphism.phi.source() || target.ring() != morphism.phi.target() {
            return Err(Error::ContextMismatch("rings do not match the morphism".into()));
        }
        let var_images = (0..target.datum().rank())
            .map(|i| morphism.gamma.substitute(&[target.var(i)]))
            .collect::<Result<_>>()?;
        Ok(Operation { morphism, source, target, var_images })
    }

    pub fn morphism(&self) -> &FglMorphism {
        &self.morphism
    }

    pub fn source(&self) -> &Arc<SCtx> {
        &self.source
    }

    pub fn target(&self) -> &Arc<SCtx> {
        &self.target
    }

    /// `𝒞(p) = φ(p)(γ(x_1), …, γ(x_r))`.
    pub fn apply(&self, p: &TruncatedSeries) -> Result<TruncatedSeries> {
        p.substitute_with(&self.var_images, Some(&self.morphism.phi))
    }

    /// `𝒞` applied to every coordinate.
    pub fn apply_class(&self, z: &FixedLocusClass) -> Result<FixedLocusClass> {
        if !Arc::ptr_eq(z.ctx(), &self.source) {
            return Err(Error::ContextMismatch("class is not over the source ring".into()));
        }
        let coords = z.coords().iter().map(|p| self.apply(p)).collect::<Result<_>>()?;
        FixedLocusClass::parabolic(&self.target, z.theta(), coords)
    }

    /// Apply `𝒞` to table coefficients, which live in the target ring of a
    /// preceding operation.
    pub fn apply_all(&self, ps: &[TruncatedSeries]) -> Result<Vec<TruncatedSeries>> {
        ps.iter().map(|p| self.apply(p)).collect()
    }

    /// Coefficients in the dual basis: eliminate `𝒞(Y*_w)` in the target.
    pub fn table_qdual(&self, src: &FlagCohomology, tgt: &FlagCohomology) -> Result<OperationTable> {
        self.check_bases(src, tgt)?;
        let datum = self.source.datum();
        let rows = datum
            .elements()
            .map(|w| {
                let image = self.apply_class(&src.qdual_class(w))?;
                tgt.elimination(&image).map_err(|e| locate(e, datum, w))
            })
            .collect::<Result<_>>()?;
        Ok(OperationTable::new(BasisKind::Qdual, datum.clone(), rows))
    }

    /// Coefficients in the Schubert basis: pair `𝒞(ζ_w)` against the
    /// target's dual classes.
    pub fn table_schubert(&self, src: &FlagCohomology, tgt: &FlagCohomology) -> Result<OperationTable> {
        self.check_bases(src, tgt)?;
        let datum = self.source.datum();
        let rows = datum
            .elements()
            .map(|w| {
                let image = self.apply_class(&src.schubert_class(w))?;
                tgt.schubert_expansion(&image).map_err(|e| locate(e, datum, w))
            })
            .collect::<Result<_>>()?;
        Ok(OperationTable::new(BasisKind::Schubert, datum.clone(), rows))
    }

    pub fn table(&self, basis: BasisKind, src: &FlagCohomology, tgt: &FlagCohomology) -> Result<OperationTable> {
        match basis {
            BasisKind::Qdual => self.table_qdual(src, tgt),
            BasisKind::Schubert => self.table_schubert(src, tgt),
        }
    }

    fn check_bases(&self, src: &FlagCohomology, tgt: &FlagCohomology) -> Result<()> {
        if !Arc::ptr_eq(src.ctx(), &self.source) || !Arc::ptr_eq(tgt.ctx(), &self.target) {
            return Err(Error::ContextMismatch("bases were computed over other rings".into()));
        }
        Ok(())
    }

    /// Check `itd(x_α) ∙ 𝒞(Y_α ∙ z) = Y_α ∙ 𝒞(z)` for the `i`-th simple
    /// root, where `∙` by a scalar acts on coordinate `v` through `v`.
    /// Returns the first fixed point where the sides differ.
    pub fn pushpull_twist_check(&self, i: usize, z: &FixedLocusClass) -> Result<Option<Elem>> {
        if !self.morphism.source.is_additive_type()? || !self.morphism.target.is_additive_type()? {
            return Err(Error::NotAdditiveType);
        }
        let itd = self.morphism.inverse_todd()?;
        let alpha = self.target.datum().simple_root(i);
        let q = itd.substitute(&[self.target.x_root(alpha).clone()])?;
        let left = self.apply_class(&z.hecke_y(i)?)?.hecke_scalar(&q)?;
        let right = self.apply_class(z)?.hecke_y(i)?;
        for (k, (a, b)) in left.coords().iter().zip(right.coords()).enumerate() {
            if !a.agrees_with(b) {
                return Ok(Some(left.reps()[k]));
            }
        }
        Ok(None)
    }
}

fn locate(e: Error, datum: &RootDatum, w: Elem) -> Error {
    match e {
        Error::NotDivisible(msg) => Error::not_divisible(format!(
            "row {}: {}",
            datum.word_name(w),
            msg.unwrap_or_default()
        )),
        other => other,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BasisKind {
    Schubert,
    Qdual,
}

impl BasisKind {
    pub fn name(self) -> &'static str {
        match self {
            BasisKind::Schubert => "schubert",
            BasisKind::Qdual => "qdual",
        }
    }
}

/// `c_{w,v}` with `𝒞(b_w) = Σ_v c_{w,v} b_v`, plus their augmentations.
#[derive(Clone, Debug)]
pub struct OperationTable {
    pub basis: BasisKind,
    datum: Arc<RootDatum>,
    pub rows: Vec<Vec<TruncatedSeries>>,
}

impl OperationTable {
    pub fn new(basis: BasisKind, datum: Arc<RootDatum>, rows: Vec<Vec<TruncatedSeries>>) -> Self {
        OperationTable { basis, datum, rows }
    }

    pub fn entry(&self, w: Elem, v: Elem) -> &TruncatedSeries {
        &self.rows[w][v]
    }

    /// The non-equivariant table `ε(c_{w,v})`.
    pub fn forgetful(&self) -> Vec<Vec<RingElement>> {
        self.rows.iter().map(|r| forgetful(r)).collect()
    }

    /// Least precision of any entry.
    pub fn precision(&self) -> i32 {
        self.rows.iter().flatten().map(|p| p.precision()).min().unwrap_or(i32::MAX)
    }

    pub fn truncate(&self, prec: i32) -> Self {
        let rows = self.rows.iter().map(|r| r.iter().map(|p| p.truncate(prec)).collect()).collect();
        OperationTable { rows, ..self.clone() }
    }

    /// Degree of the source basis element `w`: `l(w)` for the dual basis,
    /// `|Σ⁺| − l(w)` for Schubert classes.
    pub fn source_degree(&self, w: Elem) -> i32 {
        let l = self.datum.length(w) as i32;
        match self.basis {
            BasisKind::Qdual => l,
            BasisKind::Schubert => self.datum.num_positive() as i32 - l,
        }
    }

    /// Apply a component extraction to every entry.
    pub fn extract(&self, descriptor: &Extraction) -> Result<Self> {
        let rows = self
            .rows
            .iter()
            .enumerate()
            .map(|(w, r)| {
                let m = self.source_degree(w);
                r.iter().map(|p| descriptor.apply(p, Some(m))).collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        Ok(OperationTable { rows, ..self.clone() })
    }

    /// The table of `𝒞₁` followed by `𝒞₂`, given the table of `𝒞₂`:
    /// `T[w][u] = Σ_v 𝒞₂(T₁[w][v]) · T₂[v][u]`.
    pub fn then(&self, second_op: &Operation, second: &OperationTable) -> Result<Self> {
        let n = self.rows.len();
        let zero = second_op.target().zero();
        let mut rows = Vec::with_capacity(n);
        for w in 0..n {
            let mapped = second_op.apply_all(&self.rows[w])?;
            let mut row = vec![zero.clone(); n];
            for (v, c) in mapped.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for u in 0..n {
                    if !second.rows[v][u].is_zero() {
                        row[u] = row[u].add(&c.mul(&second.rows[v][u])?)?;
                    }
                }
            }
            rows.push(row);
        }
        Ok(OperationTable { rows, ..self.clone() })
    }

    pub fn to_json(&self) -> Value {
        let d = &self.datum;
        let rows: Vec<Value> = d
            .elements()
            .map(|w| {
                let mut coeffs = Map::new();
                let mut forget = Map::new();
                for v in d.elements() {
                    let p = &self.rows[w][v];
                    if !p.is_zero() {
                        coeffs.insert(d.word_name(v), Value::String(p.render()));
                    }
                    let e = p.constant_term();
                    if !e.is_zero() {
                        forget.insert(d.word_name(v), Value::String(e.to_string()));
                    }
                }
                json!({ "source": d.word_name(w), "coeffs": coeffs, "forgetful": forget })
            })
            .collect();
        json!({ "basis": self.basis.name(), "rows": rows })
    }
}

/// Selects a graded piece of an operation's output by a monomial in the
/// operation's formal variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Extraction {
    /// The `i`-th Steenrod operation: the coefficient of `t^{(m−i)(p−1)}`
    /// on an input of degree `m`.
    Steenrod { i: i32, p: u32, degree: Option<i32> },
    /// The coefficient of `t_{i_1} ⋯ t_{i_k}`, all other `t_j` absent.
    Partition(Vec<u32>),
    /// The coefficient of an explicit monomial in named generators; the
    /// generators not listed must be absent.
    Monomial(Vec<(String, i32)>),
}

fn is_twist_variable(name: &str) -> bool {
    name.len() > 1 && name.starts_with('t') && name[1..].chars().all(|c| c.is_ascii_digit())
}

impl Extraction {
    /// Extract from a series; `degree` is the input degree when known
    /// (it overrides the descriptor's own).
    pub fn apply(&self, p: &TruncatedSeries, degree: Option<i32>) -> Result<TruncatedSeries> {
        let ring = p.ring();
        let mut wanted: Vec<(usize, i32)> = Vec::new();
        match self {
            Extraction::Steenrod { i, p: prime, degree: own } => {
                let m = degree.or(*own).ok_or(Error::AmbiguousDegree)?;
                let t = ring
                    .gen_index("t")
                    .ok_or_else(|| Error::InvalidRing("no Steenrod variable `t` in the target ring".into()))?;
                let e = (m - i) * (*prime as i32 - 1);
                if e < 0 {
                    return Ok(TruncatedSeries::zero(p.ctx()).truncate(p.precision()));
                }
                wanted.push((t, e));
            }
            Extraction::Partition(parts) => {
                let mut used = 0;
                for (k, g) in ring.generators().iter().enumerate() {
                    if is_twist_variable(&g.name) {
                        let idx: u32 = g.name[1..].parse().unwrap();
                        let e = parts.iter().filter(|x| **x == idx).count() as i32;
                        used += e;
                        wanted.push((k, e));
                    }
                }
                if used as usize != parts.len() {
                    return Err(Error::InvalidRing(format!("partition {parts:?} uses missing variables")));
                }
            }
            Extraction::Monomial(list) => {
                for (k, g) in ring.generators().iter().enumerate() {
                    let e = list.iter().find(|(n, _)| *n == g.name).map(|(_, e)| *e).unwrap_or(0);
                    wanted.push((k, e));
                }
                for (n, _) in list {
                    if ring.gen_index(n).is_none() {
                        return Err(Error::InvalidRing(format!("unknown generator `{n}`")));
                    }
                }
            }
        }
        Ok(p.generator_coefficient(&wanted))
    }

    /// Extract from a class; the degree is read off when the class is
    /// homogeneous.
    pub fn apply_class(&self, z: &FixedLocusClass, degree: Option<i32>) -> Result<FixedLocusClass> {
        let degree = match degree {
            Some(d) => Some(d),
            None => class_degree(z),
        };
        if matches!(self, Extraction::Steenrod { degree: None, .. }) && degree.is_none() {
            return Err(Error::AmbiguousDegree);
        }
        z.map_coords(|_, p| self.apply(p, degree))
    }
}

/// The common total degree of all coordinates, if there is one.
pub fn class_degree(z: &FixedLocusClass) -> Option<i32> {
    let mut deg = None;
    for p in z.coords() {
        match p.total_degree() {
            Degree::Zero => {}
            Degree::Of(d) if deg.is_none() || deg == Some(d) => deg = Some(d),
            _ => return None,
        }
    }
    deg
}
