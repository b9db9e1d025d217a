//! The acceptance checks run by `report-all`, over the built-in corpus.

use std::sync::Arc;

use grpd_core::corpus::{self, Instance};
use grpd_core::gpath::{gpath_equivalent_direct, induced_map, iso_check};
use grpd_core::groupoid::StandardKind;
use grpd_core::homotopy::{check_homotopy, constant_path_witness, contraction_homotopy, equivariant_nt_exists};
use grpd_core::loopbase::{
    based_with, free_action_collapse, free_loop_with, path_loop_morphism, BasedKind, LoopContext,
};
use grpd_core::morphism::{
    are_equivalent, find_arrow, groupoid_pullback, is_essential_equivalence, translation_pullback, EquivariantMap,
};
use grpd_core::par::Exec;
use grpd_core::space::free_path_translation_groupoid;
use grpd_core::sweeps::{chi_round_trips, oracle_agreement, y_alpha_sweep};
use grpd_core::{FiniteGroup, FiniteGroupoid, GroupAction, Result};
use serde::Serialize;
use serde_json::{json, Value};

/// Groupoids above this many arrows are not enumerated for the axiom check.
pub const AXIOM_ARROW_LIMIT: usize = 1000;
pub const Y_ALPHA_SAMPLES: usize = 50;
pub const Y_ALPHA_SEED: u64 = 0x5eed;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Criterion {
    pub id: u32,
    pub name: &'static str,
    pub pass: bool,
    pub detail: Value,
}

fn crit(id: u32, name: &'static str, pass: bool, detail: Value) -> Criterion {
    Criterion { id, name, pass, detail }
}

pub fn run_all() -> Result<Vec<Criterion>> {
    let corpus = corpus::all()?;
    Ok(vec![
        groupoid_axioms(&corpus)?,
        oracle_equivalence()?,
        round_trips()?,
        y_alpha(&corpus)?,
        morita_invariance()?,
        point_table()?,
        free_collapse()?,
        loop_path_divergence()?,
        based_triviality(&corpus)?,
        pullback_identities(&corpus)?,
        homotopy_layer(&corpus)?,
    ])
}

fn point_groups() -> Vec<(&'static str, FiniteGroup)> {
    vec![("Z2", FiniteGroup::cyclic(2)), ("Z3", FiniteGroup::cyclic(3)), ("S3", FiniteGroup::symmetric(3))]
}

fn groupoid_axioms(corpus: &[Instance]) -> Result<Criterion> {
    let mut checked: Vec<(String, FiniteGroupoid)> = Vec::new();
    for inst in corpus {
        checked.push((format!("{}/translation", inst.name), FiniteGroupoid::translation(&inst.action)));
        let (_, paths) = free_path_translation_groupoid(&inst.action, 2)?;
        checked.push((format!("{}/paths", inst.name), paths));
        let ctx = LoopContext::new(&inst.action, 1)?;
        let fl = free_loop_with(&ctx, false)?;
        checked.push((format!("{}/loops", inst.name), (*fl.reduced_groupoid).clone()));
        checked.push((format!("{}/loops-pullback", inst.name), (*fl.pullback_groupoid).clone()));
        let b = based_with(&ctx, BasedKind::From(0), false)?;
        checked.push((format!("{}/based-from", inst.name), (*b.construction.reduced_groupoid).clone()));
    }
    for (name, g) in point_groups() {
        let all: Vec<usize> = g.elements().collect();
        let kinds = [
            ("point", StandardKind::Point(g.clone())),
            ("conjugation", StandardKind::Conjugation { group: g.clone(), subgroup: all.clone() }),
            ("multiplication", StandardKind::Multiplication { group: g.clone(), subgroup: all }),
            ("unit", StandardKind::Unit(g.labels().to_vec())),
        ];
        for (kind, k) in kinds {
            checked.push((format!("{name}/{kind}"), FiniteGroupoid::standard(&k)?));
        }
    }
    let mut rows = Vec::new();
    let (mut pass, mut enumerated) = (true, 0);
    for (name, g) in &checked {
        if g.arrow_count() > AXIOM_ARROW_LIMIT {
            rows.push(json!({ "name": name, "arrows": g.arrow_count(), "skipped": true }));
            continue;
        }
        enumerated += 1;
        let ok = g.validate().is_ok();
        pass &= ok;
        rows.push(json!({ "name": name, "objects": g.object_count(), "arrows": g.arrow_count(), "ok": ok }));
    }
    Ok(crit(1, "groupoid axioms", pass && enumerated > 0, json!({ "enumerated": enumerated, "groupoids": rows })))
}

fn oracle_equivalence() -> Result<Criterion> {
    let mut rows = Vec::new();
    let mut pass = true;
    for (name, a) in
        [("reflection-c4", corpus::reflection_action()), ("free-rotation-c6", corpus::free_rotation_action())]
    {
        for t in 0..=3 {
            let s = oracle_agreement(&a, t, Exec::Parallel)?;
            pass &= s.holds() && s.equivalent_pairs > 0;
            rows.push(json!({ "instance": name, "sweep": s }));
        }
    }
    Ok(crit(2, "oracle agreement on all pairs of G-paths", pass, json!(rows)))
}

fn round_trips() -> Result<Criterion> {
    let mut rows = Vec::new();
    let mut pass = true;
    let plus = corpus::plus_graph()?;
    let actions = [
        ("reflection-c4", corpus::reflection_action(), 3),
        ("free-rotation-c6", corpus::free_rotation_action(), 3),
        ("plus-graph", (*plus.action).clone(), 2),
    ];
    for (name, a, max_t) in actions {
        for t in 0..=max_t {
            let s = chi_round_trips(&a, t, Exec::Parallel)?;
            pass &= s.holds();
            rows.push(json!({ "instance": name, "sweep": s }));
        }
    }
    Ok(crit(3, "chi round trips", pass, json!(rows)))
}

fn y_alpha(corpus: &[Instance]) -> Result<Criterion> {
    let mut rows = Vec::new();
    let mut pass = true;
    for inst in corpus {
        let s = y_alpha_sweep(&inst.action, 3, Y_ALPHA_SAMPLES, 4, Y_ALPHA_SEED, Exec::Parallel)?;
        pass &= s.holds() && s.samples >= Y_ALPHA_SAMPLES;
        rows.push(json!({ "instance": inst.name, "sweep": s }));
    }
    Ok(crit(4, "Y_alpha certification", pass, json!(rows)))
}

fn morita_invariance() -> Result<Criterion> {
    let q = corpus::quotient_c6_c3()?;
    let f = q.map("quotient").expect("shipped map");
    let base = is_essential_equivalence(&f.strict());
    let mut pass = base.holds();
    let mut rows = Vec::new();
    for t in 0..=3 {
        let im = induced_map(f, t)?;
        let r = is_essential_equivalence(&im.map.strict());
        pass &= r.holds();
        rows.push(json!({ "grid": t, "source_paths": im.source.len(), "target_paths": im.target.len(), "report": r }));
    }
    Ok(crit(5, "Morita invariance of path groupoids", pass, json!({ "map": base, "induced": rows })))
}

fn point_table() -> Result<Criterion> {
    let mut rows = Vec::new();
    let mut pass = true;
    for (name, g) in point_groups() {
        let a = GroupAction::point(g.clone());
        let all: Vec<usize> = g.elements().collect();
        let point = FiniteGroupoid::standard(&StandardKind::Point(g.clone()))?;
        let conj = FiniteGroupoid::standard(&StandardKind::Conjugation { group: g.clone(), subgroup: all.clone() })?;
        let discrete = FiniteGroupoid::standard(&StandardKind::Unit(g.labels().to_vec()))?;
        let mult = FiniteGroupoid::standard(&StandardKind::Multiplication { group: g.clone(), subgroup: all })?;
        let ctx = LoopContext::new(&a, 2)?;
        let (_, paths) = free_path_translation_groupoid(&a, 2)?;
        let loops = free_loop_with(&ctx, true)?;
        let omega = based_with(&ctx, BasedKind::Loops(0), true)?;
        let from = based_with(&ctx, BasedKind::From(0), true)?;
        let p = are_equivalent(&paths, &point)?.equivalent;
        let l = are_equivalent(&loops.reduced_groupoid, &conj)?.equivalent;
        let o = are_equivalent(&omega.construction.reduced_groupoid, &discrete)?.equivalent;
        let px = are_equivalent(&from.construction.reduced_groupoid, &mult)?.equivalent;
        pass &= p && l && o && px;
        rows.push(json!({ "group": name, "paths": p, "loops": l, "based_loops": o, "based_paths": px }));
    }
    Ok(crit(6, "point groupoid table", pass, json!(rows)))
}

fn free_collapse() -> Result<Criterion> {
    let c6 = Arc::new(corpus::free_rotation_action());
    let mut rows = Vec::new();
    let mut pass = true;
    for t in 0..=3 {
        let r = free_action_collapse(&c6, t)?;
        pass &= r.holds();
        rows.push(r);
    }
    Ok(crit(7, "free action collapse", pass, json!(rows)))
}

fn no_arrow(g: &FiniteGroupoid, a: &str, b: &str) -> Result<bool> {
    Ok(find_arrow(g, g.object_index(a)?, g.object_index(b)?).is_none())
}

fn loop_path_divergence() -> Result<Criterion> {
    let inst = corpus::reflection_c4()?;
    let a = &inst.action;
    let (bent, back) = (inst.gpath("bent").expect("shipped"), inst.gpath("back").expect("shipped"));
    let fast = iso_check(a, bent, back)?;
    let direct = gpath_equivalent_direct(a, bent, back)?;
    let paths = fast.is_some() && direct.as_ref().is_some_and(|w| w.validate(a).is_ok());
    let ctx = LoopContext::new(a, 2)?;
    let fl = free_loop_with(&ctx, true)?;
    let loops_apart = no_arrow(&fl.reduced_groupoid, "((0,1,0),g)", "((0,1,0),e)")?;
    let based = based_with(&ctx, BasedKind::Between(0, 0), true)?;
    let based_apart = no_arrow(&based.construction.reduced_groupoid, "((0,1,0),e)", "((0,1,0),g)")?;
    let (jump, plain) = (inst.gpath("jump").expect("shipped"), inst.gpath("plain").expect("shipped"));
    let pair = iso_check(a, jump, plain)?.is_some() && gpath_equivalent_direct(a, jump, plain)?.is_some();
    Ok(crit(
        8,
        "loops and based paths separate equivalent free paths",
        paths && loops_apart && based_apart && pair,
        json!({
            "free_paths_equivalent": paths,
            "free_loops_inequivalent": loops_apart,
            "based_paths_inequivalent": based_apart,
            "connector_pair_equivalent": pair,
        }),
    ))
}

fn based_triviality(corpus: &[Instance]) -> Result<Criterion> {
    let mut rows = Vec::new();
    let mut pass = true;
    for inst in corpus {
        let ctx = LoopContext::new(&inst.action, 2)?;
        for (xn, x) in &inst.basepoints {
            for (yn, y) in &inst.basepoints {
                let b = based_with(&ctx, BasedKind::Between(*x, *y), true)?;
                let trivial = b.construction.report.isotropy_orders.iter().all(|&o| o == 1);
                let ok = b.holds() && trivial && b.trivial_isotropy == Some(true);
                pass &= ok;
                rows.push(json!({ "instance": inst.name, "x": xn, "y": yn, "classes": b.construction.report.classes, "ok": ok }));
            }
        }
    }
    Ok(crit(9, "based path groupoids have trivial isotropy", pass, json!(rows)))
}

fn pullback_identities(corpus: &[Instance]) -> Result<Criterion> {
    let mut loops = Vec::new();
    let mut fibres = Vec::new();
    let mut structure = Vec::new();
    let mut pass = true;
    for inst in corpus {
        let ctx = LoopContext::new(&inst.action, 2)?;
        let fl = free_loop_with(&ctx, true)?;
        let ok = fl.report.certificate.equivalent && fl.report.matches_groupoid_pullback == Some(true);
        pass &= ok;
        loops.push(json!({ "instance": inst.name, "ok": ok }));
        let ctx1 = LoopContext::new(&inst.action, 1)?;
        for (xn, x) in &inst.basepoints {
            for (yn, y) in &inst.basepoints {
                let ok = path_loop_morphism(&ctx1, *x, *y)?.certificate.equivalent;
                pass &= ok;
                fibres.push(json!({ "instance": inst.name, "x": xn, "y": yn, "ok": ok }));
            }
        }
        let mut legs: Vec<(String, EquivariantMap)> =
            vec![("id".into(), EquivariantMap::identity(inst.action.clone()))];
        legs.extend(inst.maps.iter().map(|m| (m.name.clone(), m.map.clone())));
        for (name, m) in &legs {
            let tp = translation_pullback(m, m)?;
            let pb = groupoid_pullback(&m.strict(), &m.strict())?;
            let g = m.source.group().order();
            let ok = tp.action.group().order() == g * g
                && tp.product.left_order() == g
                && tp.product.right_order() == g
                && tp.pi1.hom == tp.product.left_projection()
                && tp.pi2.hom == tp.product.right_projection()
                && tp.pi1.validate().is_ok()
                && tp.pi2.validate().is_ok()
                && tp.isomorphism_to(m, m, &pb)?.is_isomorphism();
            pass &= ok;
            structure.push(json!({ "instance": inst.name, "map": name, "order": tp.action.group().order(), "ok": ok }));
        }
    }
    Ok(crit(
        10,
        "pullback identities",
        pass,
        json!({ "free_loop_forms": loops, "endpoint_fibres": fibres, "structure_groups": structure }),
    ))
}

fn homotopy_layer(corpus: &[Instance]) -> Result<Criterion> {
    let mut connected = Vec::new();
    let mut contraction = Vec::new();
    let mut pass = true;
    for inst in corpus {
        let a = &inst.action;
        let id = EquivariantMap::identity(a.clone());
        let mut ok = true;
        for h in a.group().elements() {
            let g = EquivariantMap::translate(a.clone(), h);
            let Some(nt) = equivariant_nt_exists(&id, &g)? else {
                ok = false;
                continue;
            };
            if a.graph().is_connected() {
                ok &= nt
                    .connected
                    .as_ref()
                    .is_some_and(|c| c.conjugates && c.translates && nt.gamma.iter().all(|&x| x == c.h));
            }
            for t in 1..=2 {
                ok &= check_homotopy(&id, &g, &constant_path_witness(&id, &nt.gamma, t))?.holds();
            }
        }
        pass &= ok;
        connected.push(json!({ "instance": inst.name, "ok": ok }));
        for t in 1..=4 {
            let c = contraction_homotopy(a, t)?;
            pass &= c.report.holds();
            contraction.push(json!({ "instance": inst.name, "grid": t, "ok": c.report.holds() }));
        }
    }
    Ok(crit(11, "homotopy layer", pass, json!({ "transformations": connected, "contraction": contraction })))
}
