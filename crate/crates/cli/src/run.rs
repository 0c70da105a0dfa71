//! Turning a validated job into contexts, running it, and assembling the
//! output document.

use std::sync::Arc;

use serde_json::{json, Value};

use flagops_core::checks::{operation_suite, structure_suite, CheckOutcome};
use flagops_core::equivariant::FlagCohomology;
use flagops_core::expr::{parse_ring_element, parse_series};
use flagops_core::fgl::{catalogue, twisting_series, FglMorphism, FormalGroupLaw, MorphismCheck};
use flagops_core::group_ring::{default_precision, guard_order, SCtx};
use flagops_core::operations::{BasisKind, Extraction, Operation};
use flagops_core::ring::{Generator, RingHom, RingSpec};
use flagops_core::roots::{Lattice, RootDatum};
use flagops_core::series::SeriesCtx;
use flagops_core::Error;

use crate::config::{Basis, Command, ConfigError, JobConfig, LatticeKind, OperationConfig, RingConfig, TheoryConfig};
use crate::render;

/// Why a job stopped without producing its document.
#[derive(Debug)]
pub enum Failure {
    Config(ConfigError),
    Algebra(Error),
}

impl From<ConfigError> for Failure {
    fn from(e: ConfigError) -> Self {
        Failure::Config(e)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Algebra(e)
    }
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Config(_) => 2,
            Failure::Algebra(e) => match e {
                Error::RegularityFailure(_)
                | Error::NotDivisible(_)
                | Error::PrecisionExhausted(_)
                | Error::NotInvariant
                | Error::NotAdditiveType
                | Error::AmbiguousDegree
                | Error::NotReversible
                | Error::NotTopologicallyNilpotent => 3,
                _ => 2,
            },
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Config(e) => write!(f, "configuration error: {e}"),
            Failure::Algebra(e) => write!(f, "{e}"),
        }
    }
}

/// The emitted document in both renderings, with the exit status.
pub struct Outcome {
    pub document: Value,
    pub text: String,
    pub exit_code: i32,
}

fn at(path: &str) -> impl Fn(Error) -> Failure + '_ {
    move |e| Failure::Config(ConfigError::new(path, e.to_string()))
}

struct Job<'a> {
    cfg: &'a JobConfig,
    datum: Arc<RootDatum>,
    precision: i32,
    order: i32,
    theta: Vec<usize>,
}

pub fn run(cfg: &JobConfig) -> Result<Outcome, Failure> {
    cfg.validate()?;
    let lattice = match cfg.datum.lattice {
        LatticeKind::SimplyConnected => Lattice::SimplyConnected,
        LatticeKind::Adjoint => Lattice::Adjoint,
    };
    let datum = RootDatum::parse(&cfg.datum.designator(), lattice).map_err(at("datum"))?;
    let precision = cfg.precision.unwrap_or_else(|| default_precision(&datum));
    let theta: Vec<usize> = cfg.datum.theta.iter().map(|i| i - 1).collect();
    if let Some(bad) = theta.iter().find(|i| **i >= datum.rank()) {
        return Err(ConfigError::new("datum.theta", format!("index {} exceeds the rank", bad + 1)).into());
    }
    let job = Job { cfg, order: guard_order(&datum, precision), datum, precision, theta };
    match cfg.command {
        Command::Compute => job.compute(),
        Command::SchubertTable => job.schubert_table(),
        Command::Verify => job.verify(),
    }
}

fn build_ring(cfg: &RingConfig, path: &str) -> Result<Arc<RingSpec>, Failure> {
    let base = match cfg.base.as_str() {
        "Z" => RingSpec::integers(),
        "Q" => RingSpec::rationals(),
        "Fp" => {
            let p = cfg.p.ok_or_else(|| ConfigError::new(format!("{path}.p"), "required for base Fp"))?;
            RingSpec::prime_field(p).map_err(at(&format!("{path}.p")))?
        }
        other => {
            return Err(ConfigError::new(format!("{path}.base"), format!("unknown base `{other}`; use Z, Q or Fp")).into())
        }
    };
    let gens = cfg
        .generators
        .iter()
        .map(|g| if g.invertible { Generator::invertible(&g.name, g.degree) } else { Generator::new(&g.name, g.degree) })
        .collect();
    base.extend(gens).map_err(at(&format!("{path}.generators")))
}

fn twist_variables(k: usize) -> Vec<Generator> {
    (1..=k).map(|i| Generator::new(format!("t{i}"), -(i as i32))).collect()
}

fn parse_twist_name(law: &str) -> Option<usize> {
    law.strip_prefix("twist(")?.strip_suffix(')')?.trim().parse().ok()
}

fn build_law(theory: &TheoryConfig, order: i32, path: &str) -> Result<FormalGroupLaw, Failure> {
    let ring_path = format!("{path}.ring");
    let ring = theory.ring.as_ref().map(|r| build_ring(r, &ring_path)).transpose()?;
    let law_path = format!("{path}.law");
    let law = match theory.law.as_str() {
        "additive" => FormalGroupLaw::additive(&ring.unwrap_or_else(RingSpec::integers), order),
        "multiplicative" => match theory.params.get("beta") {
            Some(expr) => {
                let ring = ring.unwrap_or_else(RingSpec::integers);
                let beta = parse_ring_element(&ring, expr).map_err(at(&format!("{path}.params.beta")))?;
                FormalGroupLaw::multiplicative_with(&beta, order)
            }
            None if ring.is_some() => {
                return Err(ConfigError::new(format!("{path}.params.beta"), "required when a ring is given").into())
            }
            None => FormalGroupLaw::multiplicative(order),
        },
        "multiplicative_periodic" => {
            if ring.is_some() {
                return Err(ConfigError::new(ring_path, "the periodic law has a fixed ring").into());
            }
            FormalGroupLaw::multiplicative_periodic(order)
        }
        name => {
            let k = parse_twist_name(name).ok_or_else(|| {
                ConfigError::new(&law_path, format!("unknown law `{name}`"))
            })?;
            let ring = ring.unwrap_or_else(RingSpec::integers);
            let ring = ring.extend(twist_variables(k)).map_err(at(&ring_path))?;
            let lambda = twisting_series(&ring, "t", k, order)?;
            FormalGroupLaw::twisted(&FormalGroupLaw::additive(&ring, order)?, &lambda)
                .map(|l| l.with_name(name.to_string()))
        }
    };
    law.map_err(at(&law_path))
}

fn default_theory() -> TheoryConfig {
    TheoryConfig { law: "additive".into(), ring: None, params: Default::default() }
}

impl Job<'_> {
    fn source_law(&self) -> Result<FormalGroupLaw, Failure> {
        let theory = self.cfg.source_theory.clone().unwrap_or_else(default_theory);
        build_law(&theory, self.order, "source_theory")
    }

    fn morphism(&self, op: &OperationConfig) -> Result<FglMorphism, Failure> {
        let k = self.order;
        let m = match op {
            OperationConfig::Steenrod { p, .. } => catalogue::steenrod(*p, k).map_err(at("operation.p"))?,
            OperationConfig::ChowTrace { p, .. } => catalogue::chow_trace(*p, k).map_err(at("operation.p"))?,
            OperationConfig::ChernCharacter => catalogue::chern_character(k)?,
            OperationConfig::Twist { k: n, .. } => match &self.cfg.source_theory {
                None => catalogue::twist(*n, k)?,
                Some(_) => {
                    let source = self.source_law()?;
                    let ring = source.ring().extend(twist_variables(*n)).map_err(at("operation.k"))?;
                    let lambda = twisting_series(&ring, "t", *n, k)?;
                    let inc = RingHom::inclusion(source.ring(), &ring)?;
                    let lifted = source.map_coefficients(&inc)?;
                    let target = FormalGroupLaw::twisted(&lifted, &lambda.reversion()?)?;
                    FglMorphism::new(source, target, inc, lambda)?
                }
            },
            OperationConfig::Identity => FglMorphism::identity(&self.source_law()?)?,
            OperationConfig::Custom { phi, gamma } => {
                let source = self.source_law()?;
                let theory = self.cfg.target_theory.as_ref().expect("validated");
                let target = build_law(theory, k, "target_theory")?;
                let mut images = Vec::new();
                for (name, expr) in phi {
                    let e = parse_ring_element(target.ring(), expr).map_err(at(&format!("operation.phi.{name}")))?;
                    images.push((name.as_str(), e));
                }
                let hom = RingHom::new(source.ring(), target.ring(), images).map_err(at("operation.phi"))?;
                let ctx = SeriesCtx::standard(1, k, target.ring())?;
                let gamma = parse_series(&ctx, gamma).map_err(at("operation.gamma"))?;
                FglMorphism::new(source, target, hom, gamma).map_err(at("operation.gamma"))?
            }
        };
        if let MorphismCheck::FailsAt(i, j) = m.verify()? {
            return Err(ConfigError::new(
                "operation",
                format!("not a morphism of formal group laws: identity fails at x^{i} y^{j}"),
            )
            .into());
        }
        Ok(m)
    }

    fn extraction(op: &OperationConfig) -> Option<Extraction> {
        match op {
            OperationConfig::Steenrod { p, i: Some(i) } => Some(Extraction::Steenrod { i: *i, p: *p, degree: None }),
            OperationConfig::ChowTrace { partition: Some(parts), .. }
            | OperationConfig::Twist { partition: Some(parts), .. } => Some(Extraction::Partition(parts.clone())),
            _ => None,
        }
    }

    fn header(&self) -> Value {
        json!({
            "designator": self.cfg.datum.designator(),
            "lattice": match self.cfg.datum.lattice { LatticeKind::SimplyConnected => "sc", LatticeKind::Adjoint => "adj" },
            "theta": self.cfg.datum.theta,
        })
    }

    fn operation(&self) -> Result<(Operation, FlagCohomology, FlagCohomology), Failure> {
        let op_cfg = self.cfg.operation.as_ref().expect("validated");
        let op = Operation::new(self.morphism(op_cfg)?, &self.datum, self.order)?;
        let src = FlagCohomology::compute(op.source())?;
        let tgt = FlagCohomology::compute(op.target())?;
        Ok((op, src, tgt))
    }

    fn compute(&self) -> Result<Outcome, Failure> {
        let (op, src, tgt) = self.operation()?;
        let basis = match self.cfg.basis {
            Basis::Schubert => BasisKind::Schubert,
            Basis::Qdual => BasisKind::Qdual,
        };
        let table = op.table(basis, &src, &tgt)?;
        if table.precision() < self.precision {
            return Err(Error::PrecisionExhausted(format!(
                "table is exact only to degree {} < {}",
                table.precision(),
                self.precision
            ))
            .into());
        }
        let mut table = table.truncate(self.precision);
        if let Some(ex) = Self::extraction(self.cfg.operation.as_ref().expect("validated")) {
            table = table.extract(&ex)?;
        }
        let mut doc = json!({
            "command": "compute",
            "datum": self.header(),
            "precision": self.precision,
            "operation": self.cfg.operation,
            "source_law": op.morphism().source.name(),
            "target_law": op.morphism().target.name(),
        });
        let t = table.to_json();
        doc["basis"] = t["basis"].clone();
        doc["rows"] = t["rows"].clone();
        let text = render::operation_table(&self.datum, &table);
        Ok(Outcome { document: doc, text, exit_code: 0 })
    }

    fn schubert_table(&self) -> Result<Outcome, Failure> {
        let law = self.source_law()?;
        let ctx = SCtx::new(&self.datum, &law, self.order)?;
        let fc = FlagCohomology::compute(&ctx)?;
        let d = &self.datum;
        let mut rows = Vec::new();
        let mut classes = Vec::new();
        for w in d.elements() {
            let certificate = |z: &flagops_core::equivariant::FixedLocusClass| -> Result<Value, Failure> {
                Ok(match z.gkm_witness()? {
                    None => Value::Bool(true),
                    Some((beta, v)) => json!({ "root": d.root_name(beta), "at": d.word_name(v) }),
                })
            };
            let sch = certificate(&fc.schubert_class(w))?;
            let dual = certificate(&fc.qdual_class(w))?;
            let dd = fc.d_entry(w, w).truncate(self.precision).render();
            let cd = fc.c_entry(w, w).truncate(self.precision).render();
            rows.push(vec![
                d.word_name(w),
                d.length(w).to_string(),
                dd.clone(),
                cd.clone(),
                render::verdict(&sch),
                render::verdict(&dual),
            ]);
            classes.push(json!({
                "element": d.word_name(w),
                "length": d.length(w),
                "schubert_diagonal": dd,
                "qdual_diagonal": cd,
                "gkm": { "schubert": sch, "qdual": dual },
            }));
        }
        let doc = json!({
            "command": "schubert-table",
            "datum": self.header(),
            "precision": self.precision,
            "law": law.name(),
            "classes": classes,
        });
        let text = render::aligned(
            &["element", "length", "schubert diagonal", "dual diagonal", "gkm schubert", "gkm dual"],
            &rows,
        );
        Ok(Outcome { document: doc, text, exit_code: 0 })
    }

    fn verify(&self) -> Result<Outcome, Failure> {
        let mut results: Vec<(String, CheckOutcome)> = Vec::new();
        let mut push = |prefix: &str, list: Vec<CheckOutcome>| {
            for c in list {
                results.push((format!("{prefix}.{}", c.name), c));
            }
        };
        match &self.cfg.operation {
            None => {
                let ctx = SCtx::new(&self.datum, &self.source_law()?, self.order)?;
                let fc = FlagCohomology::compute(&ctx)?;
                push("source", structure_suite(&fc, self.precision)?);
            }
            Some(_) => {
                let (op, src, tgt) = self.operation()?;
                push("source", structure_suite(&src, self.precision)?);
                push("target", structure_suite(&tgt, self.precision)?);
                push("operation", operation_suite(&op, &src, &tgt, &self.theta)?);
            }
        }
        let passed = results.iter().all(|(_, c)| c.passed);
        let checks: Vec<Value> = results
            .iter()
            .map(|(name, c)| json!({ "name": name, "passed": c.passed, "detail": c.detail }))
            .collect();
        let doc = json!({
            "command": "verify",
            "datum": self.header(),
            "precision": self.precision,
            "checks": checks,
            "passed": passed,
        });
        let rows: Vec<Vec<String>> = results
            .iter()
            .map(|(name, c)| {
                vec![name.clone(), if c.passed { "pass" } else { "FAIL" }.into(), c.detail.clone().unwrap_or_default()]
            })
            .collect();
        let text = render::aligned(&["check", "verdict", "detail"], &rows);
        Ok(Outcome { document: doc, text, exit_code: if passed { 0 } else { 4 } })
    }
}
