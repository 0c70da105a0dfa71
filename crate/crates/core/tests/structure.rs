mod common;

use flagops_core::checks::structure_suite;
use flagops_core::equivariant::{FixedLocusClass, FlagCohomology};
use flagops_core::fgl::FormalGroupLaw;
use flagops_core::group_ring::{guard_order, QElement, SCtx};
use flagops_core::ring::RingSpec;
use flagops_core::roots::{Lattice, RootDatum};
use flagops_core::series::TruncatedSeries;
use flagops_core::Error;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::{flag, random_poly, same_class, triangular_solve, LawKind, DATA};

const LAWS: [LawKind; 2] = [LawKind::Additive, LawKind::Multiplicative];

#[test]
fn structure_suite_passes() {
    for d in DATA {
        for law in LAWS {
            let (p, fc) = flag(d, law);
            for check in structure_suite(&fc, p).unwrap() {
                assert!(check.passed, "{d} {law:?}: {check:?}");
            }
        }
    }
}

#[test]
fn schubert_classes_do_not_depend_on_the_reduced_word() {
    for d in ["A2", "B2"] {
        for law in LAWS {
            let (_, fc) = flag(d, law);
            let ctx = fc.ctx();
            let datum = ctx.datum();
            let pt = FixedLocusClass::point_class(ctx).unwrap();
            let w0 = datum.longest();
            let word = datum.word(w0);
            let other: Vec<usize> = word.iter().map(|i| 1 - i).collect();
            assert_eq!(datum.from_word(&other), w0);
            let along = pt.hecke_word(&other).unwrap();
            assert!(same_class(&along, &fc.schubert_class(w0)), "{d} {law:?}");
        }
    }
}

#[test]
fn elimination_matches_triangular_solve() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for d in DATA {
        for law in LAWS {
            let (p, fc) = flag(d, law);
            let ctx = fc.ctx();
            for _ in 0..20 {
                let coeffs: Vec<TruncatedSeries> =
                    ctx.datum().elements().map(|_| random_poly(ctx, &mut rng, 2)).collect();
                let mut z = FixedLocusClass::zero(ctx, &[]);
                for (w, a) in coeffs.iter().enumerate() {
                    z = z.add(&fc.qdual_class(w).scale(a).unwrap()).unwrap();
                }
                let eliminated = fc.elimination(&z).unwrap();
                let solved = triangular_solve(&fc, &z);
                for w in 0..coeffs.len() {
                    assert!(eliminated[w].agrees_with(&solved[w]), "{d} {law:?}");
                    assert!(eliminated[w].agrees_with(&coeffs[w]), "{d} {law:?}");
                    assert!(eliminated[w].precision() >= p, "{d} {law:?}");
                }
            }
        }
    }
}

#[test]
fn inverse_transition_matrix_in_fraction_field() {
    for d in DATA {
        let (_, fc) = flag(d, LawKind::Multiplicative);
        let ctx = fc.ctx();
        let n = ctx.datum().weyl_order();
        for x in 0..n {
            for w in 0..n {
                let mut sum = QElement::from_series(ctx.zero());
                for u in 0..n {
                    let term = QElement::from_series(fc.d_entry(x, u).clone()).mul(&fc.dinv_entry(u, w)).unwrap();
                    sum = sum.add(&term, ctx).unwrap();
                }
                let want = QElement::from_series(if x == w { ctx.one() } else { ctx.zero() });
                assert!(sum.equals(&want, ctx).unwrap(), "{d}: ({x}, {w})");
            }
        }
    }
}

#[test]
fn more_precision_agrees() {
    let datum = RootDatum::parse("A2", Lattice::Adjoint).unwrap();
    let build = |p: i32| {
        let k = guard_order(&datum, p);
        let ctx = SCtx::new(&datum, &FormalGroupLaw::multiplicative(k).unwrap(), k).unwrap();
        FlagCohomology::compute(&ctx).unwrap()
    };
    let (low, high) = (build(5), build(7));
    for w in datum.elements() {
        for v in datum.elements() {
            let a = low.c_entry(v, w).render();
            let b = high.c_entry(v, w).truncate(low.c_entry(v, w).precision()).render();
            assert_eq!(a, b);
        }
    }
}

#[test]
fn regularity_guard() {
    let f2 = RingSpec::prime_field(2).unwrap();
    let law = FormalGroupLaw::additive(&f2, 5).unwrap();
    let datum = RootDatum::parse("A1", Lattice::SimplyConnected).unwrap();
    let ctx = SCtx::new(&datum, &law, 5).unwrap();
    assert_eq!(FlagCohomology::compute(&ctx).unwrap_err(), Error::RegularityFailure("a1".into()));

    let datum = RootDatum::parse("B2", Lattice::SimplyConnected).unwrap();
    let law = FormalGroupLaw::additive(&f2, 14).unwrap();
    let ctx = SCtx::new(&datum, &law, 14).unwrap();
    assert!(matches!(FlagCohomology::compute(&ctx), Err(Error::RegularityFailure(_))));

    let law = FormalGroupLaw::additive(&RingSpec::integers(), 5).unwrap();
    let datum = RootDatum::parse("A1", Lattice::SimplyConnected).unwrap();
    let ctx = SCtx::new(&datum, &law, 5).unwrap();
    assert!(FlagCohomology::compute(&ctx).is_ok());
}

#[test]
fn adjoint_b2_over_f2_is_accepted() {
    let datum = RootDatum::parse("B2", Lattice::Adjoint).unwrap();
    let k = guard_order(&datum, 6);
    let law = FormalGroupLaw::additive(&RingSpec::prime_field(2).unwrap(), k).unwrap();
    let ctx = SCtx::new(&datum, &law, k).unwrap();
    let fc = FlagCohomology::compute(&ctx).unwrap();
    assert!(structure_suite(&fc, 6).unwrap().iter().all(|c| c.passed));
}
