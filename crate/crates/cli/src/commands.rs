use grpd_core::gpath::{
    chi, chi_round_trip_witness, colimit_normal_form, gpath_equivalent_direct, induced_map, iso_check, lift_gpath,
    push_forward, GPath,
};
use grpd_core::groupoid::SkeletonSummary;
use grpd_core::homotopy::{check_homotopy, constant_path_witness, contraction_homotopy, equivariant_nt_exists};
use grpd_core::loopbase::{
    based_with, free_loop_with, loop_to_path_projection, path_loop_morphism, Based, BasedKind, LoopContext,
};
use grpd_core::morphism::{are_equivalent, groupoid_pullback, is_essential_equivalence, translation_pullback};
use grpd_core::space::PathSpace;
use grpd_core::{FiniteGroupoid, GroupAction};
use serde_json::{json, Value};
use std::collections::BTreeMap;

use crate::criteria;
use crate::report::Report;
use crate::spec::{check_grid, InputError, Instance};

type Res<T> = std::result::Result<T, InputError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Command {
    Validate,
    Orbits,
    Skeleton,
    Normalize,
    Equiv,
    Loops,
    Based,
    Pullback,
    Morita,
    Lift,
    HomotopyCheck,
    ReportAll,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Validate => "validate",
            Command::Orbits => "orbits",
            Command::Skeleton => "skeleton",
            Command::Normalize => "normalize",
            Command::Equiv => "equiv",
            Command::Loops => "loops",
            Command::Based => "based",
            Command::Pullback => "pullback",
            Command::Morita => "morita",
            Command::Lift => "lift",
            Command::HomotopyCheck => "homotopy-check",
            Command::ReportAll => "report-all",
        }
    }
}

/// Names picked out on the command line.
#[derive(Clone, Debug, Default)]
pub struct Selection {
    pub paths: Vec<String>,
    pub maps: Vec<String>,
    pub basepoints: Vec<String>,
}

fn core(e: grpd_core::Error) -> InputError {
    InputError(e.to_string())
}

fn pick(given: &[String], i: usize, fallback: impl FnOnce() -> Option<String>, what: &str) -> Res<String> {
    match given.get(i) {
        Some(s) => Ok(s.clone()),
        None => fallback().ok_or_else(|| InputError(format!("no {what} given and none to default to"))),
    }
}

fn labels_of(action: &GroupAction, elems: &[usize]) -> Vec<String> {
    elems.iter().map(|&g| action.group().label(g).to_string()).collect()
}

fn vertex_labels(action: &GroupAction, vs: &[usize]) -> Vec<String> {
    vs.iter().map(|&v| action.graph().label(v).to_string()).collect()
}

fn skeleton(g: &FiniteGroupoid) -> Value {
    let sk: Vec<SkeletonSummary> = g.skeleton().iter().map(SkeletonSummary::from).collect();
    json!({
        "objects": g.object_count(),
        "arrows": g.arrow_count(),
        "classes": sk.len(),
        "components": sk,
    })
}

/// Runs one command. `instance` is `None` only for `report-all`.
pub fn run(cmd: Command, instance: Option<&Instance>, grid: Option<usize>, sel: &Selection) -> Res<Report> {
    if cmd == Command::ReportAll {
        let results = criteria::run_all().map_err(core)?;
        let ok = results.iter().all(|c| c.pass);
        let name = instance.map(|i| i.name.as_str());
        return Ok(Report::new(cmd.name(), name, None, ok, json!({ "criteria": results })));
    }
    let inst = instance.ok_or_else(|| InputError(format!("`{}` needs --instance", cmd.name())))?;
    let t = check_grid(grid.unwrap_or(inst.grid))?;
    let (ok, result) = match cmd {
        Command::Validate => validate(inst)?,
        Command::Orbits => orbits(inst),
        Command::Skeleton => skeleton_cmd(inst, t)?,
        Command::Normalize => normalize(inst, sel)?,
        Command::Equiv => equiv(inst, sel)?,
        Command::Loops => loops(inst, t)?,
        Command::Based => based(inst, t, sel)?,
        Command::Pullback => pullback(inst, sel)?,
        Command::Morita => morita(inst, t, sel)?,
        Command::Lift => lift(inst, sel)?,
        Command::HomotopyCheck => homotopy(inst, t, sel)?,
        Command::ReportAll => unreachable!(),
    };
    Ok(Report::new(cmd.name(), Some(&inst.name), Some(t), ok, result))
}

fn validate(inst: &Instance) -> Res<(bool, Value)> {
    let a = &inst.action;
    a.validate().map_err(core)?;
    let gpd = FiniteGroupoid::translation(a);
    gpd.validate().map_err(core)?;
    for (_, p) in &inst.gpaths {
        p.validate(a).map_err(core)?;
    }
    let maps: Vec<Value> = inst
        .maps
        .iter()
        .map(|m| json!({ "name": m.name, "essential_equivalence": is_essential_equivalence(&m.map.strict()).holds() }))
        .collect();
    Ok((
        true,
        json!({
            "group": a.group().labels(),
            "vertices": a.graph().labels(),
            "edges": a.graph().edges().len(),
            "free": a.is_free(),
            "connected": a.graph().is_connected(),
            "basepoints": inst.basepoints.iter().map(|(n, v)| (n.clone(), a.graph().label(*v).to_string())).collect::<BTreeMap<_, _>>(),
            "paths": inst.paths.iter().map(|(n, p)| (n.clone(), p.label(a.graph()))).collect::<BTreeMap<_, _>>(),
            "gpaths": inst.gpaths.iter().map(|(n, p)| (n.clone(), p.label(a))).collect::<BTreeMap<_, _>>(),
            "maps": maps,
        }),
    ))
}

fn orbits(inst: &Instance) -> (bool, Value) {
    let a = &inst.action;
    let list: Vec<Value> = a
        .orbits()
        .iter()
        .map(|o| json!({ "orbit": vertex_labels(a, o), "stabilizer": labels_of(a, &a.stabilizer(o[0])) }))
        .collect();
    (true, json!({ "free": a.is_free(), "count": list.len(), "orbits": list }))
}

fn skeleton_cmd(inst: &Instance, t: usize) -> Res<(bool, Value)> {
    let gpd = FiniteGroupoid::translation(&inst.action);
    let paths = PathSpace::new(&inst.action, t).map_err(core)?;
    Ok((true, json!({ "groupoid": skeleton(&gpd), "paths": skeleton(&paths.groupoid()) })))
}

fn default_gpath(inst: &Instance, i: usize) -> Option<String> {
    inst.gpaths.get(i).map(|(n, _)| n.clone())
}

fn normalize(inst: &Instance, sel: &Selection) -> Res<(bool, Value)> {
    let a = &inst.action;
    let name = pick(&sel.paths, 0, || default_gpath(inst, 0), "G-path")?;
    let p = inst.gpath(&name)?;
    let c = chi(a, p);
    let nf = colimit_normal_form(a, p);
    let w = chi_round_trip_witness(a, p).map_err(core)?;
    let valid = w.validate(a).is_ok();
    let same = chi(a, &nf) == c;
    Ok((
        valid && same,
        json!({
            "path": name,
            "label": p.label(a),
            "chi": c.label(a.graph()),
            "normal_form": nf.label(a),
            "round_trip": { "source": w.source.label(a), "target": w.target.label(a), "tuple": labels_of(a, &w.arrow.tuple), "valid": valid },
            "normal_form_has_same_chi": same,
        }),
    ))
}

fn equiv(inst: &Instance, sel: &Selection) -> Res<(bool, Value)> {
    let a = &inst.action;
    let left = pick(&sel.paths, 0, || default_gpath(inst, 0), "G-path")?;
    let right = pick(&sel.paths, 1, || default_gpath(inst, 1), "second G-path")?;
    let (p, q) = (inst.gpath(&left)?, inst.gpath(&right)?);
    let fast = iso_check(a, p, q).map_err(core)?;
    let direct = gpath_equivalent_direct(a, p, q).map_err(core)?;
    let agree = fast.is_some() == direct.is_some();
    if !agree {
        eprintln!("error: oracles disagree on {left} vs {right}: iso_check {fast:?}, direct {}", direct.is_some());
    }
    let valid = direct.as_ref().is_none_or(|w| w.validate(a).is_ok());
    let fast_valid = fast.is_none_or(|g| chi(a, p).map(|v| a.act(g, v)) == chi(a, q));
    if !valid || !fast_valid {
        eprintln!("error: a witness for {left} vs {right} failed validation");
    }
    Ok((
        agree && valid && fast_valid,
        json!({
            "left": left,
            "right": right,
            "equivalent": agree && fast.is_some(),
            "oracles_agree": agree,
            "iso_check": fast.map(|g| a.group().label(g).to_string()),
            "witness": direct.as_ref().map(|w| json!({
                "source": w.source.label(a),
                "target": w.target.label(a),
                "tuple": labels_of(a, &w.arrow.tuple),
                "valid": valid,
            })),
        }),
    ))
}

fn loops(inst: &Instance, t: usize) -> Res<(bool, Value)> {
    let ctx = LoopContext::new(&inst.action, t).map_err(core)?;
    let fl = free_loop_with(&ctx, true).map_err(core)?;
    let (_, proj) = loop_to_path_projection(&ctx, &fl).map_err(core)?;
    let r = &fl.report;
    Ok((
        r.holds(),
        json!({
            "classes": r.classes,
            "isotropy_orders": r.isotropy_orders,
            "reduced": skeleton(&fl.reduced_groupoid),
            "pullback_objects": r.pullback_objects,
            "pullback_arrows": r.pullback_arrows,
            "structure_group_order": r.structure_group_order,
            "forms_equivalent": r.certificate.equivalent,
            "reduction_essential": r.reduction.holds(),
            "matches_groupoid_pullback": r.matches_groupoid_pullback,
            "projection": proj,
        }),
    ))
}

fn based_summary(b: &Based) -> Value {
    let r = &b.construction.report;
    json!({
        "classes": r.classes,
        "isotropy_orders": r.isotropy_orders,
        "objects": r.reduced_objects,
        "trivial_isotropy": b.trivial_isotropy,
        "reduction_invariant": b.reduction_invariant,
        "second_presentation": b.second_presentation.as_ref().map(|c| c.equivalent),
        "holds": b.holds(),
    })
}

fn based(inst: &Instance, t: usize, sel: &Selection) -> Res<(bool, Value)> {
    let first = || inst.basepoints.first().map(|(n, _)| n.clone());
    let xn = pick(&sel.basepoints, 0, first, "basepoint")?;
    let yn =
        pick(&sel.basepoints, 1, || inst.basepoints.get(1).map(|(n, _)| n.clone()).or(Some(xn.clone())), "basepoint")?;
    let (x, y) = (inst.basepoint(&xn)?, inst.basepoint(&yn)?);
    let ctx = LoopContext::new(&inst.action, t).map_err(core)?;
    let between = based_with(&ctx, BasedKind::Between(x, y), true).map_err(core)?;
    let loops = based_with(&ctx, BasedKind::Loops(x), true).map_err(core)?;
    let from = based_with(&ctx, BasedKind::From(x), true).map_err(core)?;
    let pl = path_loop_morphism(&ctx, x, y).map_err(core)?;
    let ok = between.holds() && loops.holds() && from.holds() && pl.certificate.equivalent;
    Ok((
        ok,
        json!({
            "x": xn,
            "y": yn,
            "between": based_summary(&between),
            "loops": based_summary(&loops),
            "from": based_summary(&from),
            "fibre_of_endpoint_map_equivalent": pl.certificate.equivalent,
        }),
    ))
}

fn default_map(inst: &Instance) -> Option<String> {
    Some(inst.maps.first().map_or_else(|| "id".to_string(), |m| m.name.clone()))
}

fn pullback(inst: &Instance, sel: &Selection) -> Res<(bool, Value)> {
    let ln = pick(&sel.maps, 0, || default_map(inst), "map")?;
    let rn = pick(&sel.maps, 1, || Some(ln.clone()), "map")?;
    let (psi, phi) = (inst.map(&ln)?.map, inst.map(&rn)?.map);
    let tp = translation_pullback(&psi, &phi).map_err(core)?;
    let pb = groupoid_pullback(&psi.strict(), &phi.strict()).map_err(core)?;
    let iso = tp.isomorphism_to(&psi, &phi, &pb).map_err(core)?.is_isomorphism();
    let projections = tp.pi1.hom == tp.product.left_projection()
        && tp.pi2.hom == tp.product.right_projection()
        && tp.pi1.validate().is_ok()
        && tp.pi2.validate().is_ok();
    let order = tp.action.group().order();
    let expected = psi.source.group().order() * phi.source.group().order();
    let ok = iso && projections && order == expected;
    Ok((
        ok,
        json!({
            "left": ln,
            "right": rn,
            "points": tp.points.len(),
            "structure_group_order": order,
            "left_order": tp.product.left_order(),
            "right_order": tp.product.right_order(),
            "projections_are_group_components": projections,
            "isomorphic_to_groupoid_pullback": iso,
            "groupoid_pullback": skeleton(&pb.groupoid),
        }),
    ))
}

fn morita(inst: &Instance, t: usize, sel: &Selection) -> Res<(bool, Value)> {
    let name = pick(&sel.maps, 0, || default_map(inst), "map")?;
    let f = inst.map(&name)?.map;
    let ee = is_essential_equivalence(&f.strict());
    let cert = are_equivalent(&f.strict().source, &f.strict().target).map_err(core)?;
    let induced = induced_map(&f, t).map_err(core)?;
    let iee = is_essential_equivalence(&induced.map.strict());
    Ok((
        ee.holds() && cert.equivalent && iee.holds(),
        json!({
            "map": name,
            "essential_equivalence": ee,
            "equivalent": cert.equivalent,
            "certificate": cert,
            "paths": { "grid": t, "essential_equivalence": iee },
        }),
    ))
}

fn lift(inst: &Instance, sel: &Selection) -> Res<(bool, Value)> {
    let name = pick(&sel.maps, 0, || default_map(inst), "map")?;
    let m = inst.map(&name)?;
    let f = &m.map;
    let fallback = || m.target_gpaths.first().or(inst.gpaths.first()).map(|(n, _)| n.clone());
    let pname = pick(&sel.paths, 0, fallback, "G-path")?;
    // A G-path of the source is pushed forward first.
    let (gamma, pushed): (GPath, bool) = match m.target_gpaths.iter().find(|(n, _)| *n == pname) {
        Some((_, p)) => (p.clone(), false),
        None => (push_forward(f, inst.gpath(&pname)?), true),
    };
    let l = lift_gpath(f, &gamma).map_err(core)?;
    let (src, tgt) = (&*f.source, &*f.target);
    let back = iso_check(tgt, &push_forward(f, &l.normal_form), &gamma).map_err(core)?;
    let original = if pushed { iso_check(src, &l.normal_form, inst.gpath(&pname)?).map_err(core)? } else { None };
    let ok = back.is_some() && (!pushed || original.is_some());
    Ok((
        ok,
        json!({
            "map": name,
            "path": pname,
            "pushed_forward_first": pushed,
            "target_path": gamma.label(tgt),
            "raw": l.raw.label(src),
            "normal_form": l.normal_form.label(src),
            "witness": labels_of(tgt, &l.witness.tuple),
            "iso_check": tgt.group().label(l.iso_check),
            "image_isomorphic": back.map(|g| tgt.group().label(g).to_string()),
            "isomorphic_to_original": original.map(|g| src.group().label(g).to_string()),
        }),
    ))
}

fn homotopy(inst: &Instance, t: usize, sel: &Selection) -> Res<(bool, Value)> {
    let fname = pick(&sel.maps, 0, || Some("id".into()), "map")?;
    let gname = pick(&sel.maps, 1, || default_map(inst), "map")?;
    let (f, g) = (inst.map(&fname)?.map, inst.map(&gname)?.map);
    let nt = equivariant_nt_exists(&f, &g).map_err(core)?;
    let target = f.target.clone();
    let (mut ok, mut transformation, mut check) = (true, Value::Null, Value::Null);
    if let Some(nt) = &nt {
        let w = constant_path_witness(&f, &nt.gamma, t);
        let c = check_homotopy(&f, &g, &w).map_err(core)?;
        ok &= c.holds();
        let gamma: BTreeMap<String, String> = f
            .source
            .graph()
            .vertices()
            .map(|z| (f.source.graph().label(z).to_string(), target.group().label(nt.gamma[z]).to_string()))
            .collect();
        let connected = nt
            .connected
            .as_ref()
            .map(|c| json!({ "h": target.group().label(c.h), "translates": c.translates, "conjugates": c.conjugates }));
        transformation = json!({ "gamma": gamma, "connected": connected });
        check = serde_json::to_value(&c).expect("serializes");
    }
    let contraction = contraction_homotopy(&f.source, t).map_err(core)?;
    ok &= contraction.report.holds();
    Ok((
        ok,
        json!({
            "from": fname,
            "to": gname,
            "homotopic": nt.is_some(),
            "transformation": transformation,
            "witness_check": check,
            "contraction": contraction.report,
        }),
    ))
}
