mod common;

use flagops_core::equivariant::{char_map, FlagCohomology};
use flagops_core::fgl::{catalogue, FglMorphism, FormalGroupLaw};
use flagops_core::group_ring::{default_precision, guard_order};
use flagops_core::operations::{BasisKind, Operation};
use flagops_core::Error;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::{adjoint, borel, random_poly, random_schubert_combination, same_class, t_poly};

fn steenrod(designator: &str, p: u32) -> (i32, Operation, FlagCohomology, FlagCohomology) {
    let datum = adjoint(designator);
    let prec = default_precision(&datum);
    let k = guard_order(&datum, prec);
    let op = Operation::new(catalogue::steenrod(p, k).unwrap(), &datum, k).unwrap();
    let src = FlagCohomology::compute(op.source()).unwrap();
    let tgt = FlagCohomology::compute(op.target()).unwrap();
    (prec, op, src, tgt)
}

#[test]
fn borel_oracle_schubert_polynomials() {
    use borel::{schubert_polynomial, Poly};
    assert_eq!(schubert_polynomial([0, 1, 2]), Poly::monomial([0; 4], 1));
    assert_eq!(schubert_polynomial([1, 0, 2]), Poly::monomial([1, 0, 0, 0], 1));
    let s2 = Poly::monomial([1, 0, 0, 0], 1).add(&Poly::monomial([0, 1, 0, 0], 1));
    assert_eq!(schubert_polynomial([0, 2, 1]), s2);
}

#[test]
fn steenrod_matches_borel_presentation_on_a2() {
    for p in [2, 3] {
        let (prec, op, src, tgt) = steenrod("A2", p);
        let table = op.table_schubert(&src, &tgt).unwrap();
        assert!(table.precision() >= prec);
        let forgetful = table.forgetful();
        let datum = op.source().datum();
        let ring = op.target().ring();
        for w in datum.elements() {
            for v in datum.elements() {
                let expected = borel::steenrod_coefficient(p, datum.word(w), datum.word(v));
                assert_eq!(
                    forgetful[w][v],
                    t_poly(ring, &expected),
                    "p = {p}, row {}, column {}",
                    datum.word_name(w),
                    datum.word_name(v)
                );
            }
        }
    }
}

#[test]
fn pushpull_twist_formula_for_steenrod() {
    for designator in common::DATA {
        for p in [2, 3] {
            let (_, op, src, _) = steenrod(designator, p);
            let datum = op.source().datum();
            for w in datum.elements() {
                for z in [src.schubert_class(w), src.qdual_class(w)] {
                    for i in 0..datum.rank() {
                        assert_eq!(
                            op.pushpull_twist_check(i, &z).unwrap(),
                            None,
                            "{designator}, p = {p}, class {}, root {i}",
                            datum.word_name(w)
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn pushpull_twist_rejects_multiplicative_source() {
    let datum = adjoint("A2");
    let k = guard_order(&datum, 5);
    let law = FormalGroupLaw::multiplicative(k).unwrap();
    let op = Operation::new(FglMorphism::identity(&law).unwrap(), &datum, k).unwrap();
    let src = FlagCohomology::compute(op.source()).unwrap();
    assert_eq!(op.pushpull_twist_check(0, &src.schubert_class(1)), Err(Error::NotAdditiveType));
}

#[test]
fn chern_character_is_multiplicative_on_gkm_classes() {
    let datum = adjoint("A2");
    let k = guard_order(&datum, 5);
    let morphism = catalogue::chern_character(8.max(k)).unwrap();
    assert!(morphism.verify().unwrap().holds());
    let op = Operation::new(morphism, &datum, k).unwrap();
    let src = FlagCohomology::compute(op.source()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..20 {
        let a = random_schubert_combination(&src, &mut rng);
        let b = random_schubert_combination(&src, &mut rng);
        assert!(a.is_gkm().unwrap() && b.is_gkm().unwrap());
        let lhs = op.apply_class(&a.mul(&b).unwrap()).unwrap();
        let rhs = op.apply_class(&a).unwrap().mul(&op.apply_class(&b).unwrap()).unwrap();
        assert!(same_class(&lhs, &rhs));
        assert!(lhs.precision() >= 5);
    }
}

#[test]
fn operations_commute_with_characteristic_maps() {
    let datum = adjoint("A2");
    let k = guard_order(&datum, 5);
    let mut rng = ChaCha8Rng::seed_from_u64(44);
    let ops = [
        Operation::new(catalogue::steenrod(2, k).unwrap(), &datum, k).unwrap(),
        Operation::new(catalogue::chern_character(k).unwrap(), &datum, k).unwrap(),
    ];
    for op in &ops {
        for theta in [vec![], vec![0]] {
            let group = datum.parabolic_subgroup(&theta);
            for _ in 0..20 {
                let q = random_poly(op.source(), &mut rng, 3);
                let mut p = op.source().zero();
                for u in &group {
                    p = p.add(&op.source().weyl_act(*u, &q).unwrap()).unwrap();
                }
                let lhs = op.apply_class(&char_map(op.source(), &p, &theta).unwrap()).unwrap();
                let rhs = char_map(op.target(), &op.apply(&p).unwrap(), &theta).unwrap();
                assert!(same_class(&lhs, &rhs));
            }
        }
    }
}

#[test]
fn char_map_rejects_non_invariant_input() {
    let datum = adjoint("A2");
    let (_, op, _, _) = steenrod("A2", 2);
    // Over 𝔽₂ the class x_{α₁} is fixed by s₁ already; x_{α₂} is not.
    let x1 = op.source().var(0);
    let x2 = op.source().var(1);
    assert!(char_map(op.source(), &x1, &[0]).is_ok());
    assert_eq!(char_map(op.source(), &x2, &[0]).unwrap_err(), Error::NotInvariant);
    assert!(char_map(op.source(), &x2, &[]).is_ok());
    assert_eq!(datum.parabolic_subgroup(&[0]).len(), 2);
}

#[test]
fn tables_compose_with_the_identity() {
    let (_, op, src, tgt) = steenrod("A2", 3);
    let id = FglMorphism::identity(&op.morphism().target).unwrap();
    let id = Operation::from_contexts(id, op.target().clone(), op.target().clone()).unwrap();
    for basis in [BasisKind::Schubert, BasisKind::Qdual] {
        let first = op.table(basis, &src, &tgt).unwrap();
        let second = id.table(basis, &tgt, &tgt).unwrap();
        let both = first.then(&id, &second).unwrap();
        for (r1, r2) in first.rows.iter().zip(&both.rows) {
            for (a, b) in r1.iter().zip(r2) {
                assert_eq!(a.render(), b.render());
            }
        }
    }
}

#[test]
fn steenrod_entries_on_p1() {
    let (_, op, src, tgt) = steenrod("A1", 2);
    let s = op.table(BasisKind::Schubert, &src, &tgt).unwrap().forgetful();
    let q = op.table(BasisKind::Qdual, &src, &tgt).unwrap();
    assert_eq!(s[0][0].to_string(), "t");
    assert_eq!(q.entry(1, 1).render(), "t + x");
}
