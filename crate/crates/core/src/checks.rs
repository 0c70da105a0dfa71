//! Property checks over a computed basis and over operations, shared by the
//! command-line `verify` command and the test suites.

use crate::equivariant::{char_map, FixedLocusClass, FlagCohomology};
use crate::error::Result;
use crate::group_ring::SCtx;
use crate::operations::Operation;
use crate::roots::{Elem, RootId};
use crate::series::TruncatedSeries;

/// Verdict for one named property, with the first counterexample.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: Option<String>,
}

impl CheckOutcome {
    fn from_failure(name: &'static str, failure: Option<String>) -> Self {
        CheckOutcome { name, passed: failure.is_none(), detail: failure }
    }
}

fn first_failure<T>(items: impl IntoIterator<Item = T>, mut bad: impl FnMut(T) -> Result<Option<String>>) -> Result<Option<String>> {
    for item in items {
        if let Some(msg) = bad(item)? {
            return Ok(Some(msg));
        }
    }
    Ok(None)
}

fn same_class(a: &FixedLocusClass, b: &FixedLocusClass) -> Option<Elem> {
    a.coords().iter().zip(b.coords()).position(|(p, q)| !p.agrees_with(q)).map(|k| a.reps()[k])
}

/// `w(x_Π) = ∏_{β > 0} x_{w(−β)}`.
pub fn translated_x_pi(ctx: &SCtx, w: Elem) -> Result<TruncatedSeries> {
    let datum = ctx.datum();
    let roots: Vec<RootId> = datum.negative_roots().map(|b| datum.act_on_root(w, b)).collect();
    ctx.product_of_roots(&roots)
}

/// Triangularity, diagonals, duality, GKM membership and the elimination
/// round trip. `precision` is the least precision results must retain.
pub fn structure_suite(fc: &FlagCohomology, precision: i32) -> Result<Vec<CheckOutcome>> {
    let ctx = fc.ctx();
    let datum = ctx.datum().clone();
    let pairs = || datum.elements().flat_map(|w| datum.elements().map(move |v| (w, v)));
    let name = |w: Elem| datum.word_name(w);
    let mut out = Vec::new();

    let f = first_failure(pairs(), |(w, v)| {
        Ok((!datum.bruhat_leq(v, w) && !fc.d_entry(w, v).is_zero())
            .then(|| format!("Schubert class {} is nonzero at {}", name(w), name(v))))
    })?;
    out.push(CheckOutcome::from_failure("schubert_triangular", f));

    let f = first_failure(pairs(), |(v, w)| {
        Ok((!datum.bruhat_leq(w, v) && !fc.c_entry(v, w).is_zero())
            .then(|| format!("dual class {} is nonzero at {}", name(w), name(v))))
    })?;
    out.push(CheckOutcome::from_failure("qdual_triangular", f));

    let f = first_failure(datum.elements(), |w| {
        let want = ctx.product_of_roots(&datum.inversion_set(w))?;
        Ok((!fc.c_entry(w, w).agrees_with(&want)).then(|| format!("dual diagonal at {}", name(w))))
    })?;
    out.push(CheckOutcome::from_failure("qdual_diagonal", f));

    let f = first_failure(datum.elements(), |w| {
        let lhs = fc.d_entry(w, w).mul(fc.c_entry(w, w))?;
        Ok((!lhs.agrees_with(&translated_x_pi(ctx, w)?)).then(|| format!("Schubert diagonal at {}", name(w))))
    })?;
    out.push(CheckOutcome::from_failure("schubert_diagonal", f));

    let mut worst = i32::MAX;
    let f = first_failure(pairs(), |(w, v)| {
        let prod = fc.qdual_class(w).mul(&fc.schubert_class(v))?;
        let value = fc.pairing(&prod)?.simplify(ctx)?;
        worst = worst.min(value.precision());
        let want = if w == v { ctx.one() } else { ctx.zero() };
        Ok((!value.agrees_with(&want)).then(|| format!("pairing of {} with {} is {}", name(w), name(v), value)))
    })?;
    let f = f.or_else(|| {
        (worst < precision).then(|| format!("pairings are exact only to degree {worst} < {precision}"))
    });
    out.push(CheckOutcome::from_failure("duality", f));

    let f = first_failure(datum.elements(), |w| {
        for (label, z) in [("Schubert", fc.schubert_class(w)), ("dual", fc.qdual_class(w))] {
            if let Some((beta, v)) = z.gkm_witness()? {
                return Ok(Some(format!(
                    "{label} class {} fails at {} along {}",
                    name(w),
                    name(v),
                    datum.root_name(beta)
                )));
            }
        }
        Ok(None)
    })?;
    out.push(CheckOutcome::from_failure("gkm", f));

    let f = first_failure(datum.elements(), |w| {
        let z = fc.schubert_class(w);
        let coeffs = fc.elimination(&z)?;
        let mut back = FixedLocusClass::zero(ctx, &[]);
        for (v, a) in coeffs.iter().enumerate() {
            if !a.is_zero() {
                back = back.add(&fc.qdual_class(v).scale(a)?)?;
            }
        }
        Ok(same_class(&z, &back).map(|v| format!("expansion of {} differs at {}", name(w), name(v))))
    })?;
    out.push(CheckOutcome::from_failure("elimination_roundtrip", f));

    Ok(out)
}

/// `W_Θ`-invariant polynomials: orbit sums of the monomials of degree at
/// most 2, in a fixed order.
pub fn invariant_samples(ctx: &SCtx, theta: &[usize], count: usize) -> Result<Vec<TruncatedSeries>> {
    let datum = ctx.datum();
    let group = datum.parabolic_subgroup(theta);
    let r = datum.rank();
    let mut monomials = Vec::new();
    for i in 0..r {
        monomials.push(ctx.var(i));
    }
    for i in 0..r {
        for j in i..r {
            monomials.push(ctx.var(i).mul(&ctx.var(j))?);
        }
    }
    let mut out = Vec::new();
    for (k, m) in monomials.iter().enumerate().take(count) {
        let mut sum = ctx.one().scale_int(k as i64 + 1);
        for u in &group {
            sum = sum.add(&ctx.weyl_act(*u, m)?)?;
        }
        out.push(sum);
    }
    Ok(out)
}

/// Properties of an operation: the morphism identity, compatibility with
/// characteristic maps, multiplicativity, agreement of the Schubert table
/// with the image classes, and the push-pull twist formula when both laws
/// are of additive type.
pub fn operation_suite(
    op: &Operation,
    src: &FlagCohomology,
    tgt: &FlagCohomology,
    theta: &[usize],
) -> Result<Vec<CheckOutcome>> {
    let datum = op.source().datum().clone();
    let name = |w: Elem| datum.word_name(w);
    let mut out = Vec::new();

    let f = match op.morphism().verify()? {
        crate::fgl::MorphismCheck::Holds => None,
        crate::fgl::MorphismCheck::FailsAt(i, j) => Some(format!("coefficient of x^{i} y^{j}")),
    };
    out.push(CheckOutcome::from_failure("morphism_identity", f));

    let samples = invariant_samples(op.source(), theta, 6)?;
    let f = first_failure(samples.iter().enumerate(), |(k, p)| {
        let lhs = op.apply_class(&char_map(op.source(), p, theta)?)?;
        let rhs = char_map(op.target(), &op.apply(p)?, theta)?;
        Ok(same_class(&lhs, &rhs).map(|v| format!("sample {} differs at {}", k + 1, name(v))))
    })?;
    out.push(CheckOutcome::from_failure("char_map_commutes", f));

    let classes: Vec<FixedLocusClass> = datum.elements().map(|w| src.schubert_class(w)).collect();
    let f = first_failure(datum.elements().flat_map(|w| (w..datum.weyl_order()).map(move |v| (w, v))), |(w, v)| {
        let lhs = op.apply_class(&classes[w].mul(&classes[v])?)?;
        let rhs = op.apply_class(&classes[w])?.mul(&op.apply_class(&classes[v])?)?;
        Ok(same_class(&lhs, &rhs).map(|u| format!("product of {} and {} differs at {}", name(w), name(v), name(u))))
    })?;
    out.push(CheckOutcome::from_failure("multiplicative", f));

    let table = op.table_schubert(src, tgt)?;
    let f = first_failure(datum.elements(), |w| {
        let mut back = FixedLocusClass::zero(op.target(), &[]);
        for (v, c) in table.rows[w].iter().enumerate() {
            if !c.is_zero() {
                back = back.add(&tgt.schubert_class(v).scale(c)?)?;
            }
        }
        let image = op.apply_class(&classes[w])?;
        Ok(same_class(&image, &back).map(|v| format!("row {} differs at {}", name(w), name(v))))
    })?;
    out.push(CheckOutcome::from_failure("schubert_table_reconstructs", f));

    if op.morphism().source.is_additive_type()? && op.morphism().target.is_additive_type()? {
        let f = first_failure(datum.elements(), |w| {
            for z in [src.schubert_class(w), src.qdual_class(w)] {
                for i in 0..datum.rank() {
                    if let Some(v) = op.pushpull_twist_check(i, &z)? {
                        return Ok(Some(format!("class {} along s{} at {}", name(w), i + 1, name(v))));
                    }
                }
            }
            Ok(None)
        })?;
        out.push(CheckOutcome::from_failure("pushpull_twist", f));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fgl::{catalogue, FglMorphism, FormalGroupLaw};
    use crate::group_ring::guard_order;
    use crate::roots::{Lattice, RootDatum};

    #[test]
    fn structure_suite_passes_for_a2_multiplicative() {
        let datum = RootDatum::parse("A2", Lattice::Adjoint).unwrap();
        let k = guard_order(&datum, 5);
        let ctx = SCtx::new(&datum, &FormalGroupLaw::multiplicative(k).unwrap(), k).unwrap();
        let fc = FlagCohomology::compute(&ctx).unwrap();
        for c in structure_suite(&fc, 5).unwrap() {
            assert!(c.passed, "{c:?}");
        }
    }

    #[test]
    fn operation_suite_for_steenrod_a2() {
        let datum = RootDatum::parse("A2", Lattice::Adjoint).unwrap();
        let k = guard_order(&datum, 5);
        let op = Operation::new(catalogue::steenrod(3, k).unwrap(), &datum, k).unwrap();
        let src = FlagCohomology::compute(op.source()).unwrap();
        let tgt = FlagCohomology::compute(op.target()).unwrap();
        let results = operation_suite(&op, &src, &tgt, &[0]).unwrap();
        assert_eq!(results.len(), 5);
        for c in results {
            assert!(c.passed, "{c:?}");
        }
    }

    #[test]
    fn identity_operation_suite() {
        let datum = RootDatum::parse("A1", Lattice::Adjoint).unwrap();
        let law = FormalGroupLaw::multiplicative(5).unwrap();
        let op = Operation::new(FglMorphism::identity(&law).unwrap(), &datum, 5).unwrap();
        let src = FlagCohomology::compute(op.source()).unwrap();
        let tgt = FlagCohomology::compute(op.target()).unwrap();
        let results = operation_suite(&op, &src, &tgt, &[]).unwrap();
        assert!(results.iter().all(|c| c.passed));
        assert!(!results.iter().any(|c| c.name == "pushpull_twist"));
    }
}
