//! Jobs: one command on one input (plus an optional secondary input).

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::time::Instant;

use serde_json::{json, Value};

use super::report::{sha256_hex, Format, JobEcho, Report, Status, Table, Verdict};
use super::schema::{self, Document, Kind, Object, ParseContext};
use crate::cdga::{cellular_resolve, cotangent_fiber, ArtinianAlgebra, CellKind};
use crate::ce::{adjoint_derivation, ce_cohomological, ce_homological, ce_with_coefficients, weight_one_block};
use crate::error::{Error, Result};
use crate::lie::{adjoint_rep, free_lie, pbw_check, random_basis_change, DgLieAlgebra, LieMorphism, Representation};
use crate::moduli::{mc_set, mc_tangent, schlessinger_check, unit_check};
use crate::monomial::poly_label;
use crate::rational::format_q;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, clap::ValueEnum)]
pub enum Command {
    CeHomology,
    CeCohomology,
    CeCoefficients,
    PbwCheck,
    FreeLie,
    CellularResolve,
    CotangentFiber,
    Mc,
    McTangent,
    Schlessinger,
    UnitCheck,
    AdjointDerivation,
    Validate,
}

impl Command {
    pub fn name(self) -> String {
        clap::ValueEnum::to_possible_value(&self).expect("named").get_name().to_string()
    }
}

#[derive(Clone, Debug)]
pub struct JobSpec {
    pub command: Command,
    pub input: PathBuf,
    pub rep: Option<PathBuf>,
    pub max_weight: u32,
    pub depth: usize,
    pub degree_window: Option<(i32, i32)>,
    pub seed: u64,
    pub format: Format,
}

impl JobSpec {
    pub fn new(command: Command, input: impl Into<PathBuf>) -> Self {
        Self {
            command,
            input: input.into(),
            rep: None,
            max_weight: 3,
            depth: 3,
            degree_window: None,
            seed: 0,
            format: Format::Json,
        }
    }
}

/// Exit status for an error: 2 input, 3 verdict, 4 truncation.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Schema(_) | Error::Invalid(_) | Error::Io(_) | Error::NotArtinian(_) | Error::Axiom(_) => 2,
        Error::NotChainMap(_) | Error::Certification { .. } => 3,
        Error::Truncation(_) => 4,
    }
}

pub fn exit_status(report: &Report) -> i32 {
    match report.verdict.status {
        Status::Fail => 3,
        _ => 0,
    }
}

pub fn parse_window(s: &str) -> Result<(i32, i32)> {
    let bad = || Error::Schema(format!("degree window `{s}` is not of the form a:b"));
    let (a, b) = s.split_once(':').ok_or_else(bad)?;
    let (a, b) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
    if a > b {
        return Err(bad());
    }
    Ok((a, b))
}

struct Inputs {
    main: String,
    rep: Option<String>,
    hashes: BTreeMap<String, String>,
}

fn read_inputs(job: &JobSpec) -> Result<Inputs> {
    let read = |p: &PathBuf| std::fs::read_to_string(p).map_err(|e| Error::Io(format!("{}: {e}", p.display())));
    let main = read(&job.input)?;
    let rep = job.rep.as_ref().map(read).transpose()?;
    let mut hashes = BTreeMap::from([("in".to_string(), sha256_hex(main.as_bytes()))]);
    if let Some(r) = &rep {
        hashes.insert("rep".into(), sha256_hex(r.as_bytes()));
    }
    Ok(Inputs { main, rep, hashes })
}

struct Outcome {
    verdict: Verdict,
    tables: Vec<Table>,
    result: Value,
}

pub fn run(job: &JobSpec) -> Result<Report> {
    if job.max_weight == 0 {
        return Err(Error::Truncation("max weight must be positive".into()));
    }
    let start = Instant::now();
    let inputs = read_inputs(job)?;
    let out = dispatch(job, &inputs)?;
    Ok(Report {
        tool: "dgla".into(),
        version: env!("CARGO_PKG_VERSION").into(),
        job: JobEcho {
            command: job.command.name(),
            max_weight: job.max_weight,
            depth: job.depth,
            degree_window: job.degree_window,
            seed: job.seed,
        },
        inputs: inputs.hashes,
        verdict: out.verdict,
        tables: out.tables,
        result: out.result,
        timing_ms: start.elapsed().as_millis() as u64,
    })
}

fn ctx(job: &JobSpec) -> ParseContext {
    ParseContext {
        max_weight: Some(job.max_weight),
        lie: None,
    }
}

fn lie_input(job: &JobSpec, text: &str) -> Result<DgLieAlgebra> {
    match schema::parse_str(text, &ctx(job))? {
        Object::Lie(l) => Ok(l),
        o => Err(Error::Schema(format!("expected a Lie algebra, found {}", o.kind_name()))),
    }
}

fn artinian_input(job: &JobSpec, text: &str) -> Result<ArtinianAlgebra> {
    match schema::parse_str(text, &ctx(job))? {
        Object::Artinian(a) => Ok(a),
        Object::Cdga(p) => p.to_artinian(),
        o => Err(Error::Schema(format!("expected an artinian algebra or cdga, found {}", o.kind_name()))),
    }
}

fn in_window(job: &JobSpec, d: i32) -> bool {
    job.degree_window.is_none_or(|(a, b)| a <= d && d <= b)
}

fn windowed<V: Clone>(job: &JobSpec, m: &BTreeMap<i32, V>) -> BTreeMap<i32, V> {
    m.iter().filter(|(d, _)| in_window(job, **d)).map(|(d, v)| (*d, v.clone())).collect()
}

fn windowed2<V: Clone>(job: &JobSpec, m: &BTreeMap<(i32, u32), V>) -> BTreeMap<(i32, u32), V> {
    m.iter().filter(|((d, _), _)| in_window(job, *d)).map(|(k, v)| (*k, v.clone())).collect()
}

fn keyed<K: ToString, V: serde::Serialize>(m: &BTreeMap<K, V>) -> Value {
    Value::Object(m.iter().map(|(k, v)| (k.to_string(), json!(v))).collect())
}

fn keyed2<V: serde::Serialize>(m: &BTreeMap<(i32, u32), V>) -> Value {
    Value::Object(m.iter().map(|((d, w), v)| (format!("{d},{w}"), json!(v))).collect())
}

fn dispatch(job: &JobSpec, inputs: &Inputs) -> Result<Outcome> {
    let w = job.max_weight;
    let rep_text = || {
        inputs
            .rep
            .as_deref()
            .ok_or_else(|| Error::Schema(format!("{} needs --rep", job.command.name())))
    };
    match job.command {
        Command::CeHomology | Command::CeCohomology => {
            let l = lie_input(job, &inputs.main)?;
            let (dims, exactness, by_weight, chain_dims) = if job.command == Command::CeHomology {
                let c = ce_homological(&l, w);
                (c.homology_dims(), c.exactness(), c.homology_by_weight(), c.complex.space().dims())
            } else {
                let c = ce_cohomological(&l, w);
                (c.homology_dims(), c.exactness(), c.chains.homology_by_weight().map(|m| {
                    m.into_iter().map(|((d, wt), n)| ((-d, wt), n)).collect()
                }), c.dims())
            };
            let dims = windowed(job, &dims);
            let mut t = Table::new("homology", &["degree", "dim", "exactness"]);
            let mut all_exact = true;
            for (d, n) in &dims {
                let e = exactness.get(d).map(|e| e.label()).unwrap_or_else(|| "exact".into());
                all_exact &= e == "exact";
                t.push(vec![d.to_string(), n.to_string(), e]);
            }
            let mut tables = vec![t];
            if let Some(bw) = &by_weight {
                tables.push(Table::from_bigraded("homology_by_weight", &windowed2(job, bw)));
            }
            let mut verdict = Verdict::info(format!("{} dimensions through weight {w}", job.command.name()));
            if !all_exact {
                verdict = verdict.truncated(job.degree_window);
            }
            Ok(Outcome {
                verdict,
                tables,
                result: json!({
                    "dims": keyed(&dims),
                    "complex_dims": keyed(&windowed(job, &chain_dims)),
                    "exact": all_exact,
                }),
            })
        }
        Command::CeCoefficients => {
            let l = lie_input(job, &inputs.main)?;
            let m: Representation = match inputs.rep.as_deref() {
                None => adjoint_rep(&l),
                Some(text) => {
                    let c = ParseContext {
                        max_weight: Some(w),
                        lie: Some(l.clone()),
                    };
                    match schema::parse_str(text, &c)? {
                        Object::Representation(r) => r,
                        o => return Err(Error::Schema(format!("--rep: expected a representation, found {}", o.kind_name()))),
                    }
                }
            };
            if m.lie != l {
                return Err(Error::Invalid("the representation acts on a different Lie algebra".into()));
            }
            let c = ce_with_coefficients(&l, &m, w);
            let defect = c.complex.d_squared_defect();
            let dims = windowed(job, &c.homology_dims());
            Ok(Outcome {
                verdict: Verdict::check(
                    defect.is_none(),
                    format!("d² = 0; cohomology with coefficients through weight {w}"),
                    format!("d² ≠ 0 in degree {}", defect.unwrap_or_default()),
                ),
                tables: vec![Table::from_dims("cohomology", &dims)],
                result: json!({"dims": keyed(&dims), "module_dim": m.dim(), "complex_dim": c.len()}),
            })
        }
        Command::PbwCheck => {
            let l = lie_input(job, &inputs.main)?;
            let r = pbw_check(&l, w)?;
            let mut t = Table::new("pbw_blocks", &["degree", "weight", "sym", "quotient", "rank", "pbw_rank", "bijective"]);
            for b in r.blocks.iter().filter(|b| in_window(job, b.degree)) {
                t.push(vec![
                    b.degree.to_string(),
                    b.weight.to_string(),
                    b.source_dim.to_string(),
                    b.quotient_dim.to_string(),
                    b.quotient_rank.to_string(),
                    b.pbw_rank.to_string(),
                    b.bijective.to_string(),
                ]);
            }
            let bad = r.blocks.iter().filter(|b| !b.bijective).count();
            Ok(Outcome {
                verdict: Verdict::check(
                    r.bijective,
                    "bijective in all blocks",
                    format!("{bad} blocks are not bijective"),
                )
                .truncated(None),
                tables: vec![t],
                result: json!({"blocks": r.blocks.len(), "bijective": r.bijective}),
            })
        }
        Command::FreeLie => {
            let doc: Document = serde_json::from_str(&inputs.main).map_err(|e| Error::Schema(e.to_string()))?;
            if doc.kind != Kind::FreeLie {
                return Err(Error::Schema("free-lie expects a free_lie document".into()));
            }
            let mw = doc.max_weight.unwrap_or(w);
            let gens: Vec<(String, i32)> = doc.generators.iter().map(|g| (g.label.clone(), g.degree)).collect();
            if gens.iter().any(|(_, d)| *d < 1) {
                return Err(Error::Schema("generators: free Lie generators must have degree ≥ 1".into()));
            }
            let f = free_lie(&gens, mw)?;
            let mut t = Table::new("basis", &["weight", "degree", "label"]);
            let mut k = 0;
            for (wt, labels) in &f.hall_basis {
                for label in labels {
                    t.push(vec![wt.to_string(), f.lie.degree(k).to_string(), label.clone()]);
                    k += 1;
                }
            }
            let dims: BTreeMap<(i32, u32), usize> =
                f.dims().dims.iter().map(|((wt, d), n)| ((*d, *wt), *n)).collect();
            let valid = f.lie.validate().is_ok();
            Ok(Outcome {
                verdict: Verdict::check(valid, format!("free Lie algebra through weight {mw}"), "axioms fail")
                    .truncated(None),
                tables: vec![Table::from_bigraded("dims", &windowed2(job, &dims)), t],
                result: json!({"dim": f.lie.dim(), "document": schema::lie_document(&f.lie)}),
            })
        }
        Command::CellularResolve | Command::CotangentFiber => {
            let b = artinian_input(job, &inputs.main)?;
            let tower = cellular_resolve(&b, job.depth, w)?;
            let window = Some((tower.window, 0));
            if job.command == Command::CellularResolve {
                let mut cells = Table::new("cells", &["label", "kind", "stage", "degree", "weight", "d"]);
                for (i, c) in tower.cells.iter().enumerate() {
                    let kind = match c.kind {
                        CellKind::Generator => "generator",
                        CellKind::Relation => "relation",
                    };
                    cells.push(vec![
                        c.label.clone(),
                        kind.into(),
                        c.stage.to_string(),
                        c.degree.to_string(),
                        c.weight.to_string(),
                        tower.describe(i),
                    ]);
                }
                let mut stages = Table::new("stages", &["stage", "relations", "generators"]);
                for s in &tower.stages {
                    stages.push(vec![s.stage.to_string(), s.relations.to_string(), s.generators.to_string()]);
                }
                let counts = tower.cell_counts();
                Ok(Outcome {
                    verdict: Verdict::new(
                        Status::Pass,
                        format!("every stage certified; stabilized at stage {}", tower.stabilized_at),
                    )
                    .truncated(window),
                    tables: vec![cells, stages, Table::from_bigraded("cell_counts", &counts)],
                    result: json!({
                        "stabilized_at": tower.stabilized_at,
                        "window": [tower.window, 0],
                        "cell_counts": keyed2(&counts),
                        "target_dim": b.dim(),
                    }),
                })
            } else {
                let f = cotangent_fiber(&tower)?;
                let dims = windowed2(job, &f.dims());
                Ok(Outcome {
                    verdict: Verdict::info("cotangent fiber of the cellular model").truncated(Some((f.valid_from, 0))),
                    tables: vec![Table::from_bigraded("fiber", &dims)],
                    result: json!({"dims": keyed2(&dims), "valid_from": f.valid_from}),
                })
            }
        }
        Command::Mc => {
            let l = lie_input(job, &inputs.main)?;
            let b = match inputs.rep.as_deref() {
                Some(text) => artinian_input(job, text)?,
                None => ArtinianAlgebra::eps(1),
            };
            let ev = mc_set(&l, &b)?;
            let g = &ev.lie;
            let mut eqs = Table::new("equations", &["component", "equation"]);
            for (j, p) in &ev.equations {
                eqs.push(vec![g.label(*j).to_string(), format!("{} = 0", poly_label(&ev.variables, p))]);
            }
            let mut vars = Table::new("variables", &["variable", "basis"]);
            for (k, e) in ev.degree_one.iter().enumerate() {
                vars.push(vec![ev.variables.labels[k].clone(), g.label(*e).to_string()]);
            }
            let reps: Option<Vec<String>> = ev.pi0.as_ref().map(|r| {
                r.iter()
                    .map(|v| {
                        v.iter()
                            .map(|(i, c)| crate::rational::format_coeff(c, g.label(*i)))
                            .collect::<Vec<_>>()
                            .join(" + ")
                    })
                    .collect()
            });
            let (m, _) = random_basis_change(&l, job.seed);
            let other = mc_set(&m, &b)?;
            let verdict = if !ev.is_linear() {
                Verdict::new(Status::NotApplicable, "nonlinear regime: equations returned symbolically")
            } else {
                let same = other.pi0_dim() == ev.pi0_dim() && other.tangent_dims == ev.tangent_dims;
                Verdict::check(
                    same,
                    format!("π₀ has dimension {}, stable under a seeded basis change", ev.pi0_dim().unwrap_or(0)),
                    "π₀ census changed under a basis change",
                )
            };
            Ok(Outcome {
                verdict,
                tables: vec![vars, eqs, Table::from_dims("tangent", &windowed(job, &ev.tangent_dims))],
                result: json!({
                    "regime": ev.regime,
                    "degree_one": ev.degree_one.len(),
                    "gauge": ev.gauge.iter().map(|i| g.label(*i)).collect::<Vec<_>>(),
                    "pi0_dim": ev.pi0_dim(),
                    "pi0": reps,
                    "coefficients": schema::artinian_document(&b),
                }),
            })
        }
        Command::McTangent => {
            let l = lie_input(job, &inputs.main)?;
            let mut t = Table::new("tangent", &["n", "pi0_dim", "dim_H^{n+1}", "agrees"]);
            let mut ok = true;
            for n in 1..=job.depth as u32 {
                let r = mc_tangent(&l, n)?;
                ok &= r.agrees();
                t.push(vec![n.to_string(), r.pi0_dim.to_string(), r.expected.to_string(), r.agrees().to_string()]);
            }
            Ok(Outcome {
                verdict: Verdict::check(ok, format!("π₀ over ε_n matches H^(n+1) for n = 1..{}", job.depth), "mismatch"),
                tables: vec![t],
                result: json!({"n_max": job.depth}),
            })
        }
        Command::Schlessinger => {
            let l = lie_input(job, &inputs.main)?;
            let f = match schema::parse_str(rep_text()?, &ctx(job))? {
                Object::AlgebraMap(f) => f,
                o => return Err(Error::Schema(format!("--rep: expected an algebra_map, found {}", o.kind_name()))),
            };
            let r = schlessinger_check(&l, &f)?;
            let verdict = match r.agrees() {
                Some(ok) => Verdict::check(
                    ok,
                    format!("π₀ agree: {} = {}", r.lhs.unwrap_or(0), r.rhs.unwrap_or(0)),
                    format!("π₀ differ: {} ≠ {}", r.lhs.unwrap_or(0), r.rhs.unwrap_or(0)),
                ),
                None => Verdict::new(Status::NotApplicable, "outside the linear regime"),
            };
            Ok(Outcome {
                verdict,
                tables: vec![],
                result: json!(r),
            })
        }
        Command::UnitCheck => {
            let l = lie_input(job, &inputs.main)?;
            let (v, tower) = unit_check(&l, w, job.depth)?;
            let mut t = Table::new("comparison", &["degree", "weight", "dim_L", "dim_DCL"]);
            for ((d, wt), (a, b)) in v.comparison.iter().filter(|((d, _), _)| in_window(job, *d)) {
                t.push(vec![d.to_string(), wt.to_string(), a.to_string(), b.to_string()]);
            }
            Ok(Outcome {
                verdict: Verdict::check(v.passed(), "L → DC(L) is a quasi-isomorphism in the window", "dimensions differ")
                    .truncated(Some(v.degrees)),
                tables: vec![t, Table::from_bigraded("cells", &tower.cell_counts())],
                result: json!({
                    "cells": v.cells,
                    "stabilized_at": v.stabilized_at,
                    "degree_weights": v.degree_weights,
                }),
            })
        }
        Command::AdjointDerivation => {
            let alpha = match schema::parse_str(&inputs.main, &ctx(job))? {
                Object::Lie(l) => LieMorphism::identity(&l),
                Object::LieMorphism(m) => m,
                o => return Err(Error::Schema(format!("expected a Lie algebra or lie_morphism, found {}", o.kind_name()))),
            };
            let d = adjoint_derivation(&alpha, w)?;
            let n = d.source.len();
            let mut failures = 0;
            let mut checked = 0;
            for a in 0..n {
                for b in 0..n {
                    if d.source.weight(a) + d.source.weight(b) <= w {
                        checked += 1;
                        if !d.derivation_residual(a, b).is_empty() {
                            failures += 1;
                        }
                    }
                }
            }
            let mut t = Table::new("weight_one", &["generator", "dual", "coeff"]);
            for ((k, j), c) in weight_one_block(&d) {
                t.push(vec![alpha.target.label(k).into(), alpha.target.label(j).into(), format_q(&c)]);
            }
            Ok(Outcome {
                verdict: Verdict::check(
                    failures == 0,
                    format!("δ is a chain map and a derivation on {checked} pairs"),
                    format!("derivation rule fails on {failures} of {checked} pairs"),
                )
                .truncated(None),
                tables: vec![t],
                result: json!({
                    "source_dim": n,
                    "target_dim": d.target.len(),
                    "chain_map_checked": d.checked_range().len(),
                    "pairs_checked": checked,
                }),
            })
        }
        Command::Validate => validate(job, &inputs.main),
    }
}

fn validate(job: &JobSpec, text: &str) -> Result<Outcome> {
    let obj = match schema::parse_unvalidated(text, &ctx(job)) {
        Ok(o) => o,
        Err(Error::Axiom(msg)) => {
            return Ok(Outcome {
                verdict: Verdict::new(Status::Fail, msg.clone()),
                tables: vec![],
                result: json!({"valid": false, "message": msg}),
            })
        }
        Err(e) => return Err(e),
    };
    let (kind, violations): (&str, Vec<(String, Vec<String>)>) = match &obj {
        Object::Lie(l) => ("dg_lie", l.validate().violations.iter().map(|v| (v.axiom.clone(), v.witness.clone())).collect()),
        Object::Representation(r) => ("representation", r.validate().into_iter().map(|v| (v.axiom, v.witness)).collect()),
        o => (o.kind_name(), vec![]),
    };
    let mut t = Table::new("violations", &["axiom", "witness"]);
    for (a, w) in &violations {
        t.push(vec![a.clone(), w.join(",")]);
    }
    let msg = violations
        .first()
        .map(|(a, w)| format!("{a} fails at ({})", w.join(",")))
        .unwrap_or_default();
    Ok(Outcome {
        verdict: Verdict::check(violations.is_empty(), format!("valid {kind}"), msg),
        tables: vec![t],
        result: json!({"kind": kind, "valid": violations.is_empty()}),
    })
}
