//! End-to-end acceptance run. Each criterion prints one line with its
//! verdict, wall time and time limit. The process exits non-zero when a
//! criterion fails for a reason not recorded as a known conflict.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use flagops_core::checks::structure_suite;
use flagops_core::equivariant::{char_map, FlagCohomology};
use flagops_core::fgl::{catalogue, twisting_series, FglMorphism, FormalGroupLaw};
use flagops_core::group_ring::{default_precision, guard_order, SCtx};
use flagops_core::operations::Operation;
use flagops_core::ring::{Generator, RingSpec};
use flagops_core::roots::{Lattice, RootDatum};
use flagops_core::series::TruncatedSeries;
use flagops_core::Error;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::{adjoint, borel, flag, random_poly, random_schubert_combination, same_class, t_poly, triangular_solve, LawKind, DATA};

enum Verdict {
    Pass,
    Fail(String),
    /// A failure whose cause is understood and documented; it is reported
    /// but does not fail the run.
    Known(String),
}

type Check = fn() -> Result<Verdict, Error>;

fn require(cond: bool, what: impl Into<String>) -> Result<(), Verdict> {
    if cond { Ok(()) } else { Err(Verdict::Fail(what.into())) }
}

macro_rules! ensure {
    ($cond:expr, $($msg:tt)*) => {
        if let Err(v) = require($cond, format!($($msg)*)) {
            return Ok(v);
        }
    };
}

fn twisted_coefficients() -> Result<Verdict, Error> {
    let base = FormalGroupLaw::generic_cubic(3)?;
    let (twisted, m) = catalogue::twist_pair(&base, 3)?;
    ensure!(m.verify()?.holds(), "twist pair is not a morphism");
    let a11 = twisted.coefficient(1, 1).to_string();
    ensure!(a11 == "a11 + 2*t1", "ã11 = {a11}");
    let a12 = twisted.coefficient(1, 2).to_string();
    let expected = "a11*t1 + a12 - 2*t1^2";
    if a12 == expected {
        return Ok(Verdict::Pass);
    }
    let (one_var, _) = catalogue::twist_pair(&base, 1)?;
    let truncated = one_var.coefficient(1, 2).to_string();
    let derived = "a11*t1 + a12 - 2*t1^2 + 3*t2";
    if a12 == derived && truncated == expected {
        Ok(Verdict::Known(format!("ã12 = {a12}; the stated value holds only when t2 = 0")))
    } else {
        Ok(Verdict::Fail(format!("ã12 = {a12}")))
    }
}

fn reversion() -> Result<Verdict, Error> {
    let ring = RingSpec::integers().extend((1..=3).map(|i| Generator::new(format!("t{i}"), -i)).collect())?;
    let lam = twisting_series(&ring, "t", 3, 6)?;
    let inv = lam.reversion()?.truncate(3);
    let got = inv.render();
    ensure!(got == "x - t1*x^2 + (2*t1^2 - t2)*x^3", "reversion = {got}");
    ensure!(inv.precision() == 3, "precision {}", inv.precision());
    Ok(Verdict::Pass)
}

fn twist_degeneration() -> Result<Verdict, Error> {
    for p in [2, 3] {
        let m = catalogue::chow_trace(p, 10)?;
        let ring = m.target.ring().clone();
        let plain = FormalGroupLaw::additive(&ring, 10)?;
        let twisted = FormalGroupLaw::twisted(&plain, &m.gamma)?;
        ensure!(twisted.precision() >= 10, "p = {p}: precision {}", twisted.precision());
        ensure!(twisted.series().agrees_with(plain.series()), "p = {p}: twisted law is {}", twisted.series().render());
    }
    Ok(Verdict::Pass)
}

fn structure() -> Result<Verdict, Error> {
    for d in DATA {
        for law in [LawKind::Additive, LawKind::Multiplicative] {
            let (p, fc) = flag(d, law);
            for check in structure_suite(&fc, p)? {
                ensure!(check.passed, "{d} {law:?} {}: {:?}", check.name, check.detail);
            }
        }
    }
    Ok(Verdict::Pass)
}

fn elimination() -> Result<Verdict, Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for d in DATA {
        for law in [LawKind::Additive, LawKind::Multiplicative] {
            let (_, fc) = flag(d, law);
            let ctx = fc.ctx();
            for trial in 0..20 {
                let mut z = flagops_core::equivariant::FixedLocusClass::zero(ctx, &[]);
                for w in ctx.datum().elements() {
                    z = z.add(&fc.qdual_class(w).scale(&random_poly(ctx, &mut rng, 2))?)?;
                }
                let eliminated = fc.elimination(&z)?;
                let solved = triangular_solve(&fc, &z);
                let agree = eliminated.iter().zip(&solved).all(|(a, b)| a.agrees_with(b));
                ensure!(agree, "{d} {law:?}, trial {trial}");
            }
        }
    }
    Ok(Verdict::Pass)
}

fn steenrod_operation(designator: &str, p: u32) -> Result<(Operation, FlagCohomology, FlagCohomology), Error> {
    let datum = adjoint(designator);
    let k = guard_order(&datum, default_precision(&datum));
    let op = Operation::new(catalogue::steenrod(p, k)?, &datum, k)?;
    let src = FlagCohomology::compute(op.source())?;
    let tgt = FlagCohomology::compute(op.target())?;
    Ok((op, src, tgt))
}

fn steenrod_diagram() -> Result<Verdict, Error> {
    for p in [2, 3] {
        let (op, src, tgt) = steenrod_operation("A2", p)?;
        let forgetful = op.table_schubert(&src, &tgt)?.forgetful();
        let datum = op.source().datum();
        for w in datum.elements() {
            for v in datum.elements() {
                let expected = t_poly(op.target().ring(), &borel::steenrod_coefficient(p, datum.word(w), datum.word(v)));
                ensure!(
                    forgetful[w][v] == expected,
                    "p = {p}, [{}][{}]: {} vs {}",
                    datum.word_name(w),
                    datum.word_name(v),
                    forgetful[w][v],
                    expected
                );
            }
        }
    }
    Ok(Verdict::Pass)
}

fn pushpull_twist() -> Result<Verdict, Error> {
    for d in DATA {
        for p in [2, 3] {
            let (op, src, _) = steenrod_operation(d, p)?;
            let datum = op.source().datum();
            for w in datum.elements() {
                for z in [src.schubert_class(w), src.qdual_class(w)] {
                    for i in 0..datum.rank() {
                        let residue = op.pushpull_twist_check(i, &z)?;
                        ensure!(residue.is_none(), "{d}, p = {p}, class {}, root {}", datum.word_name(w), i + 1);
                    }
                }
            }
        }
    }
    let datum = adjoint("A2");
    let k = guard_order(&datum, 5);
    let op = Operation::new(FglMorphism::identity(&FormalGroupLaw::multiplicative(k)?)?, &datum, k)?;
    let src = FlagCohomology::compute(op.source())?;
    let refused = op.pushpull_twist_check(0, &src.schubert_class(1));
    ensure!(refused == Err(Error::NotAdditiveType), "multiplicative source gave {refused:?}");
    Ok(Verdict::Pass)
}

fn chern_character() -> Result<Verdict, Error> {
    ensure!(catalogue::chern_character(8)?.verify()?.holds(), "morphism identity fails at precision 8");
    let datum = adjoint("A2");
    let k = guard_order(&datum, default_precision(&datum));
    let op = Operation::new(catalogue::chern_character(k)?, &datum, k)?;
    let src = FlagCohomology::compute(op.source())?;
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for trial in 0..20 {
        let a = random_schubert_combination(&src, &mut rng);
        let b = random_schubert_combination(&src, &mut rng);
        ensure!(a.is_gkm()? && b.is_gkm()?, "trial {trial}: input outside the GKM image");
        let lhs = op.apply_class(&a.mul(&b)?)?;
        let rhs = op.apply_class(&a)?.mul(&op.apply_class(&b)?)?;
        ensure!(same_class(&lhs, &rhs), "trial {trial}");
    }
    Ok(Verdict::Pass)
}

fn characteristic_maps() -> Result<Verdict, Error> {
    let datum = adjoint("A2");
    let k = guard_order(&datum, default_precision(&datum));
    let ops = [
        Operation::new(catalogue::steenrod(2, k)?, &datum, k)?,
        Operation::new(catalogue::chern_character(k)?, &datum, k)?,
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for op in &ops {
        let name = op.morphism().source.name().to_string();
        for theta in [vec![], vec![0]] {
            let group = datum.parabolic_subgroup(&theta);
            for trial in 0..20 {
                let q = random_poly(op.source(), &mut rng, 3);
                let mut p: TruncatedSeries = op.source().zero();
                for u in &group {
                    p = p.add(&op.source().weyl_act(*u, &q)?)?;
                }
                let lhs = op.apply_class(&char_map(op.source(), &p, &theta)?)?;
                let rhs = char_map(op.target(), &op.apply(&p)?, &theta)?;
                ensure!(same_class(&lhs, &rhs), "{name}, Θ = {theta:?}, trial {trial}");
            }
        }
    }
    Ok(Verdict::Pass)
}

fn regularity() -> Result<Verdict, Error> {
    let datum = RootDatum::parse("A1", Lattice::SimplyConnected)?;
    let law = FormalGroupLaw::additive(&RingSpec::prime_field(2)?, 5)?;
    let ctx = SCtx::new(&datum, &law, 5)?;
    match FlagCohomology::compute(&ctx) {
        Err(Error::RegularityFailure(root)) if root == "a1" => Ok(Verdict::Pass),
        Err(e) => Ok(Verdict::Fail(format!("wrong error: {e}"))),
        Ok(_) => Ok(Verdict::Fail("accepted".into())),
    }
}

fn main() -> ExitCode {
    let criteria: [(&str, Check, Duration); 10] = [
        ("twisted-law coefficients", twisted_coefficients, Duration::from_secs(1)),
        ("reversion of the twisting series", reversion, Duration::from_secs(1)),
        ("twist degeneration over F_p", twist_degeneration, Duration::from_secs(5)),
        ("structure suite", structure, Duration::from_secs(60)),
        ("elimination against triangular solve", elimination, Duration::from_secs(30)),
        ("Steenrod table against Borel presentation", steenrod_diagram, Duration::from_secs(60)),
        ("push-pull twist identity", pushpull_twist, Duration::from_secs(120)),
        ("Chern character", chern_character, Duration::from_secs(60)),
        ("characteristic maps commute with operations", characteristic_maps, Duration::from_secs(30)),
        ("regularity guard", regularity, Duration::from_secs(1)),
    ];
    let mut hard_failures = 0;
    for (n, (name, check, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let verdict = check().unwrap_or_else(|e| Verdict::Fail(format!("error: {e}")));
        let elapsed = start.elapsed();
        let (label, detail) = match verdict {
            Verdict::Pass if elapsed <= *limit => ("PASS", String::new()),
            Verdict::Pass => {
                hard_failures += 1;
                ("FAIL", "time limit exceeded".to_string())
            }
            Verdict::Fail(why) => {
                hard_failures += 1;
                ("FAIL", why)
            }
            Verdict::Known(why) => ("FAIL", format!("known conflict: {why}")),
        };
        let timing = format!("{:.3}s / {}s", elapsed.as_secs_f64(), limit.as_secs());
        let detail = if detail.is_empty() { String::new() } else { format!("  ({detail})") };
        println!("criterion {:>2}  {label}  {name:<46} {timing}{detail}", n + 1);
    }
    if hard_failures == 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE }
}
