//! Verb implementations. Every command reads schema-versioned JSON, acts
//! through the core crate, and returns a JSON report plus an exit code:
//! 0 verified/success, 1 property violation (with a structured
//! counterexample), 2 usage or input error.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;
use std::sync::Arc;

use serde::Deserialize;
use serde_json::json;

use tambara::classify::{
    algebraic_closure_map, classify, module_decomposition_check, MackeyModule, Verdict,
};
use tambara::constructions::{burnside_tambara, coinduce, constant, fixed_point};
use tambara::free_poly::eval_expr;
use tambara::functor::check_axioms;
use tambara::groups::SubgroupLattice;
use tambara::ideals::{ideal_closure, is_field_like, FieldLikeVerdict};
use tambara::rings::{GAction, GRing};

use crate::formats::*;
use crate::sexpr::parse_expr;
use crate::{CliError, CliResult, Outcome, SCHEMA_VERSION};

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> CliResult<T> {
    let text = fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

#[derive(Deserialize)]
struct GroupFile {
    schema: u64,
    #[serde(flatten)]
    group: GroupJson,
}

#[derive(Deserialize)]
struct GSetFile {
    schema: u64,
    group: GroupJson,
    gset: GSetJson,
}

#[derive(Deserialize)]
struct BispanComposeFile {
    schema: u64,
    group: GroupJson,
    first: BispanJson,
    then: BispanJson,
}

#[derive(Deserialize)]
struct RingFile {
    schema: u64,
    #[serde(flatten)]
    ring: RingJson,
}

#[derive(Deserialize)]
struct GRingFile {
    schema: u64,
    ring: RingJson,
    /// Per group element, an element-map table; omitted means trivial.
    #[serde(default)]
    action: BTreeMap<String, EltMapJson>,
}

#[derive(Deserialize)]
struct AssignFile {
    schema: u64,
    gens: Vec<AssignEntry>,
}

#[derive(Deserialize)]
struct AssignEntry {
    level: String,
    value: EltJson,
}

#[derive(Deserialize)]
struct GeneratorsFile {
    schema: u64,
    generators: Vec<GeneratorEntry>,
}

#[derive(Deserialize)]
struct GeneratorEntry {
    class: String,
    value: EltJson,
}

#[derive(Deserialize)]
struct ModuleFile {
    schema: u64,
    green: TambaraJson,
    module: String,
}

pub fn cmd_group(input: &Path) -> CliResult<Outcome> {
    let file: GroupFile = read_json(input)?;
    check_schema(file.schema)?;
    let group = group_from_json(&file.group)?;
    let lat = SubgroupLattice::new(group.clone());
    let classes: Vec<serde_json::Value> = (0..lat.num_classes())
        .map(|c| {
            let data = &lat.classes()[c];
            let weyl = lat.weyl_group(c);
            json!({
                "name": lat.class_name(c),
                "order": data.order,
                "class_size": data.members.len(),
                "normalizer_order": tambara::groups::mask_len(data.normalizer),
                "weyl_order": weyl.order(),
            })
        })
        .collect();
    let subconj: Vec<Vec<bool>> = (0..lat.num_classes())
        .map(|h| (0..lat.num_classes()).map(|k| lat.subconjugate(h, k)).collect())
        .collect();
    Ok(Outcome {
        report: json!({
            "schema": SCHEMA_VERSION,
            "order": group.order(),
            "classes": classes,
            "subconjugacy": subconj,
        }),
        exit_code: 0,
    })
}

pub fn cmd_gset(input: &Path) -> CliResult<Outcome> {
    let file: GSetFile = read_json(input)?;
    check_schema(file.schema)?;
    let group = group_from_json(&file.group)?;
    let lat = SubgroupLattice::new(group.clone());
    let x = gset_from_json(&group, &file.gset)?;
    let orbit_type: Vec<serde_json::Value> = x
        .orbit_type(&lat)?
        .into_iter()
        .map(|(class, mult)| json!({"class": lat.class_name(class), "multiplicity": mult}))
        .collect();
    Ok(Outcome {
        report: json!({
            "schema": SCHEMA_VERSION,
            "points": x.len(),
            "orbits": orbit_type,
        }),
        exit_code: 0,
    })
}

pub fn cmd_bispan_compose(input: &Path) -> CliResult<Outcome> {
    let file: BispanComposeFile = read_json(input)?;
    check_schema(file.schema)?;
    let group = group_from_json(&file.group)?;
    let lat = SubgroupLattice::new(group.clone());
    let x = gset_from_json(&group, &file.first.x)?;
    let y = gset_from_json(&group, &file.first.y)?;
    let y2 = gset_from_json(&group, &file.then.x)?;
    let z = gset_from_json(&group, &file.then.y)?;
    if y != y2 {
        return Err(CliError::Input(
            "`then` must start at the codomain of `first`".into(),
        ));
    }
    let b1 = bispan_from_json(&group, &file.first, &x, &y)?;
    let b2 = bispan_from_json(&group, &file.then, &y2, &z)?;
    let composed = b2.compose(&b1)?;
    Ok(Outcome {
        report: json!({
            "schema": SCHEMA_VERSION,
            "composed": bispan_to_json(&composed),
            "pretty": composed.pretty(&lat)?,
        }),
        exit_code: 0,
    })
}

pub fn cmd_build(
    what: &str,
    group_path: &Path,
    ring_path: Option<&Path>,
    gring_path: Option<&Path>,
) -> CliResult<Outcome> {
    let gfile: GroupFile = read_json(group_path)?;
    check_schema(gfile.schema)?;
    let group = group_from_json(&gfile.group)?;
    let need_ring = |p: Option<&Path>| -> CliResult<tambara::rings::Ring> {
        let path = p.ok_or_else(|| CliError::Input(format!("build {what} needs --ring")))?;
        let rf: RingFile = read_json(path)?;
        check_schema(rf.schema)?;
        ring_from_json(&rf.ring)
    };
    let t = match what {
        "burnside" => burnside_tambara(group)?,
        "constant" => constant(group, need_ring(ring_path)?)?,
        "coinduce" => coinduce(group, need_ring(ring_path)?)?,
        "fixed" => {
            let path = gring_path
                .or(ring_path)
                .ok_or_else(|| CliError::Input("build fixed needs --ring (a G-ring file)".into()))?;
            let gf: GRingFile = read_json(path)?;
            check_schema(gf.schema)?;
            let ring = ring_from_json(&gf.ring)?;
            let gring = if gf.action.is_empty() {
                GRing {
                    group: group.clone(),
                    ring,
                    action: GAction::Trivial,
                }
            } else {
                let elems = ring.enumerate()?;
                let mut tables = Vec::with_capacity(group.order());
                for g in group.elements() {
                    let label = group.label(g);
                    let m = gf
                        .action
                        .get(label)
                        .ok_or_else(|| CliError::Input(format!("action missing element {label}")))?;
                    let lookup: BTreeMap<_, _> = m
                        .iter()
                        .map(|(a, b)| (elt_from_json(a), elt_from_json(b)))
                        .collect();
                    let perm: Vec<u64> = elems
                        .iter()
                        .map(|e| {
                            let img = lookup.get(e).ok_or_else(|| {
                                CliError::Input(format!("action of {label} missing element {e}"))
                            })?;
                            Ok(ring.index_of(img)?)
                        })
                        .collect::<CliResult<_>>()?;
                    tables.push(perm);
                }
                GRing::from_tables(group.clone(), ring, tables)?
            };
            fixed_point(gring)?
        }
        other => return Err(CliError::Input(format!("unknown build target {other}"))),
    };
    Ok(Outcome {
        report: serde_json::to_value(tambara_to_json(&t)?)?,
        exit_code: 0,
    })
}

pub fn cmd_check(input: &Path, seed: u64, budget: usize) -> CliResult<Outcome> {
    let file: TambaraJson = read_json(input)?;
    let t = tambara_from_json(&file)?;
    let report = check_axioms(&t, seed, budget)?;
    let violations: Vec<serde_json::Value> = report
        .violations
        .iter()
        .map(|v| json!({"family": v.family, "detail": v.detail}))
        .collect();
    let ok = report.ok();
    Ok(Outcome {
        report: json!({
            "schema": SCHEMA_VERSION,
            "functor": t.describe(),
            "seed": seed,
            "samples": report.samples,
            "skipped": report.skipped,
            "violations": violations,
            "verified": ok,
        }),
        exit_code: if ok { 0 } else { 1 },
    })
}

pub fn cmd_eval(input: &Path, expr_text: &str, assign_path: &Path) -> CliResult<Outcome> {
    let file: TambaraJson = read_json(input)?;
    let t = tambara_from_json(&file)?;
    let group = t.group().clone();
    let assign_file: AssignFile = read_json(assign_path)?;
    check_schema(assign_file.schema)?;
    let mut gen_levels = Vec::new();
    let mut assign = Vec::new();
    for entry in &assign_file.gens {
        gen_levels.push(mask_from_name(&group, &entry.level)?);
        assign.push(elt_from_json(&entry.value));
    }
    let expr = parse_expr(&group, expr_text)?;
    expr.infer_level(&gen_levels)?;
    let (mask, value) = eval_expr(&expr, &t, &gen_levels, &assign)?;
    Ok(Outcome {
        report: json!({
            "schema": SCHEMA_VERSION,
            "level": mask_name(&group, mask),
            "class": t.lattice().class_name(t.lattice().class_of_mask(mask)?),
            "value": elt_to_json(&value),
        }),
        exit_code: 0,
    })
}

pub fn cmd_ideal_close(input: &Path, generators_path: &Path) -> CliResult<Outcome> {
    let file: TambaraJson = read_json(input)?;
    let t = tambara_from_json(&file)?;
    let gens_file: GeneratorsFile = read_json(generators_path)?;
    check_schema(gens_file.schema)?;
    let lat = t.lattice().clone();
    let mut gens = Vec::new();
    for entry in &gens_file.generators {
        let c = (0..lat.num_classes())
            .find(|&c| lat.class_name(c) == entry.class)
            .ok_or_else(|| CliError::Input(format!("unknown class {}", entry.class)))?;
        gens.push((c, elt_from_json(&entry.value)));
    }
    let ideal = ideal_closure(&t, &gens)?;
    Ok(Outcome {
        report: serde_json::to_value(ideal_to_json(&t, &ideal))?,
        exit_code: 0,
    })
}

pub fn cmd_fieldlike(input: &Path, cap: u64) -> CliResult<Outcome> {
    let file: TambaraJson = read_json(input)?;
    let t = tambara_from_json(&file)?;
    match is_field_like(&t, cap)? {
        FieldLikeVerdict::FieldLike => Ok(Outcome {
            report: json!({
                "schema": SCHEMA_VERSION,
                "functor": t.describe(),
                "field_like": true,
            }),
            exit_code: 0,
        }),
        FieldLikeVerdict::NotFieldLike { reason, witness } => Ok(Outcome {
            report: json!({
                "schema": SCHEMA_VERSION,
                "functor": t.describe(),
                "field_like": false,
                "reason": reason,
                "witness_ideal": witness.map(|w| ideal_to_json(&t, &w)),
            }),
            exit_code: 1,
        }),
    }
}

pub fn cmd_classify(input: &Path, cap: u64) -> CliResult<Outcome> {
    let file: TambaraJson = read_json(input)?;
    let t = tambara_from_json(&file)?;
    match classify(&t, cap)? {
        Verdict::CoinducedFromField {
            field_size,
            certificate,
        } => Ok(Outcome {
            report: json!({
                "schema": SCHEMA_VERSION,
                "functor": t.describe(),
                "verdict": "coinduced_from_field",
                "field_size": field_size,
                "note": "Nullstellensatzian exactly in the limit along the closure tower of the base field",
                "certificate": certificate_to_json(&t, &certificate)?,
            }),
            exit_code: 0,
        }),
        Verdict::NotCoinduced { reason, splitting } => Ok(Outcome {
            report: json!({
                "schema": SCHEMA_VERSION,
                "functor": t.describe(),
                "verdict": "not_coinduced",
                "reason": reason,
                "splitting": splitting
                    .map(|c| certificate_to_json(&t, &c))
                    .transpose()?,
            }),
            exit_code: 1,
        }),
    }
}

pub fn cmd_closure_map(input: &Path, degree: usize, mprime_cap: usize) -> CliResult<Outcome> {
    let file: TambaraJson = read_json(input)?;
    let t = tambara_from_json(&file)?;
    let report = algebraic_closure_map(&t, degree, mprime_cap)?;
    let all = report.factoring.iter().all(|f| f.all_factor);
    let factoring: Vec<serde_json::Value> = report
        .factoring
        .iter()
        .map(|f| {
            json!({
                "tower_degree": f.tower_degree,
                "homs_found": f.homs_found,
                "all_factor": f.all_factor,
            })
        })
        .collect();
    let adjunct: Vec<(EltJson, EltJson)> = report
        .adjunct
        .map
        .iter()
        .map(|(a, b)| (elt_to_json(a), elt_to_json(b)))
        .collect();
    Ok(Outcome {
        report: json!({
            "schema": SCHEMA_VERSION,
            "functor": t.describe(),
            "fixed_field_size": report.fixed_field_size,
            "tower_degree": report.tower_degree,
            "adjunct": adjunct,
            "hom": hom_to_json(&t, &report.hom),
            "factoring": factoring,
        }),
        exit_code: if all { 0 } else { 1 },
    })
}

pub fn cmd_module_check(input: &Path) -> CliResult<Outcome> {
    let file: ModuleFile = read_json(input)?;
    check_schema(file.schema)?;
    let green = Arc::new(tambara_from_json(&file.green)?);
    let module = match file.module.as_str() {
        "self" => MackeyModule::self_module(green.clone())?,
        "self_square" => MackeyModule::self_module_square(green.clone())?,
        other => {
            return Err(CliError::Input(format!(
                "unknown module selector {other}; use self or self_square"
            )))
        }
    };
    let report = module_decomposition_check(&module)?;
    let ok = report.ok();
    Ok(Outcome {
        report: json!({
            "schema": SCHEMA_VERSION,
            "green": green.describe(),
            "module": file.module,
            "restrictions_injective": report.restrictions_injective,
            "comparison_iso": report.comparison_iso,
            "decomposes_along_idempotents": report.decomposes_along_idempotents,
            "details": report.details,
            "verified": ok,
        }),
        exit_code: if ok { 0 } else { 1 },
    })
}
