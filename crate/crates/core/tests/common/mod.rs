//! Helpers shared by the integration suites, including oracles that do not
//! go through the localization machinery.

#![allow(dead_code)]

pub mod borel;

use std::sync::Arc;

use flagops_core::equivariant::{FixedLocusClass, FlagCohomology};
use flagops_core::fgl::FormalGroupLaw;
use flagops_core::group_ring::{default_precision, guard_order, SCtx};
use flagops_core::ring::{RingElement, RingSpec};
use flagops_core::roots::{Lattice, RootDatum};
use flagops_core::series::TruncatedSeries;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub const DATA: [&str; 3] = ["A1", "A2", "B2"];

#[derive(Clone, Copy, Debug)]
pub enum LawKind {
    Additive,
    Multiplicative,
}

pub fn adjoint(designator: &str) -> Arc<RootDatum> {
    RootDatum::parse(designator, Lattice::Adjoint).unwrap()
}

/// Basis data at the default precision, with the guard order.
pub fn flag(designator: &str, kind: LawKind) -> (i32, FlagCohomology) {
    let datum = adjoint(designator);
    let p = default_precision(&datum);
    let k = guard_order(&datum, p);
    let law = match kind {
        LawKind::Additive => FormalGroupLaw::additive(&RingSpec::integers(), k).unwrap(),
        LawKind::Multiplicative => FormalGroupLaw::multiplicative(k).unwrap(),
    };
    let ctx = SCtx::new(&datum, &law, k).unwrap();
    (p, FlagCohomology::compute(&ctx).unwrap())
}

/// A random polynomial of degree at most `deg` in the variables of `ctx`
/// with small integer coefficients.
pub fn random_poly(ctx: &SCtx, rng: &mut ChaCha8Rng, deg: u32) -> TruncatedSeries {
    let r = ctx.datum().rank();
    let mut p = ctx.zero();
    for _ in 0..4 {
        let mut m = ctx.one().scale_int(rng.gen_range(-3..=3));
        for _ in 0..rng.gen_range(0..=deg) {
            m = m.mul(&ctx.var(rng.gen_range(0..r))).unwrap();
        }
        p = p.add(&m).unwrap();
    }
    p
}

/// Classes agree coordinate-wise to their common precision.
pub fn same_class(a: &FixedLocusClass, b: &FixedLocusClass) -> bool {
    a.coords().iter().zip(b.coords()).all(|(p, q)| p.agrees_with(q))
}

/// `Σ c_{(e)} t^e` as an element of `ring`, which must have the single
/// generator `t`.
pub fn t_poly(ring: &Arc<RingSpec>, coeffs: &[(i32, i64)]) -> RingElement {
    let mut out = RingElement::zero(ring);
    for (e, c) in coeffs {
        let m = RingElement::monomial(ring, vec![*e], ring.scalar(*c)).unwrap();
        out = out.add(&m).unwrap();
    }
    out
}

/// Solve `C a = z` row by row, dividing by the diagonal directly.
pub fn triangular_solve(fc: &FlagCohomology, z: &FixedLocusClass) -> Vec<TruncatedSeries> {
    let n = fc.ctx().datum().weyl_order();
    let mut a: Vec<TruncatedSeries> = Vec::with_capacity(n);
    for v in 0..n {
        let mut rest = z.coords()[v].clone();
        for (w, aw) in a.iter().enumerate() {
            rest = rest.sub(&fc.c_entry(v, w).mul(aw).unwrap()).unwrap();
        }
        a.push(rest.exact_divide(fc.c_entry(v, v)).unwrap());
    }
    a
}

/// `Σ_w a_w ζ_w` with random polynomial coefficients.
pub fn random_schubert_combination(fc: &FlagCohomology, rng: &mut ChaCha8Rng) -> FixedLocusClass {
    let ctx = fc.ctx();
    let mut z = FixedLocusClass::zero(ctx, &[]);
    for w in ctx.datum().elements() {
        z = z.add(&fc.schubert_class(w).scale(&random_poly(ctx, rng, 2)).unwrap()).unwrap();
    }
    z
}
