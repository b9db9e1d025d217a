use std::sync::Arc;

use grpd_core::homotopy::{
    check_homotopy, check_span_homotopy, constant_lifting_problem, constant_path_witness, contraction_homotopy,
    contraction_stage, equivariant_nt_exists, gamma_failure, verify_fibration_lift, FibrationSetting, SpanHomotopy,
};
use grpd_core::loopbase::{path_loop_morphism, LoopContext};
use grpd_core::morphism::EquivariantMap;
use grpd_core::space::DiscretePath;
use grpd_core::{corpus, GroupAction};

fn translate(a: &Arc<GroupAction>, h: usize) -> EquivariantMap {
    let m = EquivariantMap::translate(a.clone(), h);
    m.validate().unwrap();
    m
}

#[test]
fn translates_are_constant_gammas() {
    for inst in [corpus::reflection_c4().unwrap(), corpus::plus_graph().unwrap()] {
        let a = &inst.action;
        let id = EquivariantMap::identity(a.clone());
        for h in a.group().elements() {
            let g = translate(a, h);
            let nt = equivariant_nt_exists(&id, &g).unwrap().unwrap();
            assert!(nt.gamma.iter().all(|&x| x == h), "{} {h}", inst.name);
            let c = nt.connected.as_ref().unwrap();
            assert_eq!(c.h, h);
            assert!(c.translates && c.conjugates);
        }
    }
}

#[test]
fn inverse_runs_backwards() {
    for inst in corpus::all().unwrap() {
        let a = &inst.action;
        let id = EquivariantMap::identity(a.clone());
        for h in a.group().elements() {
            let g = translate(a, h);
            let nt = equivariant_nt_exists(&id, &g).unwrap().unwrap();
            assert!(gamma_failure(&id, &g, &nt.gamma).is_none());
            assert!(gamma_failure(&g, &id, &nt.inverse(&id).gamma).is_none(), "{}", inst.name);
            nt.to_natural_transformation(&id, &g).unwrap();
        }
    }
}

#[test]
fn connected_carriers_give_constant_gammas() {
    for inst in corpus::all().unwrap() {
        let a = &inst.action;
        if !a.graph().is_connected() {
            continue;
        }
        let id = EquivariantMap::identity(a.clone());
        for h in a.group().elements() {
            let nt = equivariant_nt_exists(&id, &translate(a, h)).unwrap().unwrap();
            let c = nt.connected.expect("connected carrier");
            assert!(nt.gamma.iter().all(|&x| x == c.h));
        }
    }
}

#[test]
fn transformations_give_homotopies() {
    for inst in corpus::all().unwrap() {
        let a = &inst.action;
        let id = EquivariantMap::identity(a.clone());
        for h in a.group().elements() {
            let g = translate(a, h);
            let Some(nt) = equivariant_nt_exists(&id, &g).unwrap() else { continue };
            for t in 1..=2 {
                let w = constant_path_witness(&id, &nt.gamma, t);
                let r = check_homotopy(&id, &g, &w).unwrap();
                assert!(r.holds(), "{} {h} {:?}", inst.name, r.diagnostics);
            }
        }
    }
}

#[test]
fn wrong_gamma_is_reported() {
    let inst = corpus::reflection_c4().unwrap();
    let a = &inst.action;
    let id = EquivariantMap::identity(a.clone());
    let g = translate(a, 1);
    let mut gamma = vec![1; 4];
    gamma[2] = 0;
    assert!(gamma_failure(&id, &g, &gamma).is_some());
    let w = constant_path_witness(&id, &gamma, 1);
    let r = check_homotopy(&id, &g, &w).unwrap();
    assert!(!r.holds());
    assert!(!r.diagnostics.is_empty());
}

#[test]
fn contraction_across_corpus() {
    for inst in corpus::all().unwrap() {
        for t in 1..=4 {
            let c = contraction_homotopy(&inst.action, t).unwrap();
            assert!(c.report.holds(), "{} T={t} {:?}", inst.name, c.report);
        }
    }
}

#[test]
fn contraction_fixes_constant_paths() {
    let a = corpus::reflection_action();
    let c = DiscretePath::constant(2, 0, 3);
    for s in 0..=3 {
        assert_eq!(contraction_stage(&c, 3, s), vec![2; 4]);
    }
    let alpha = DiscretePath::from_labels(a.graph(), &["1", "0", "3", "0"]).unwrap();
    let st: Vec<_> = (0..=3).map(|s| contraction_stage(&alpha, 3, s)).collect();
    assert_eq!(st[0], vec![1, 0, 3, 0]);
    assert_eq!(st[3], vec![0, 0, 0, 0]);
    // g·λ_s(α) = λ_s(g·α)
    let moved = DiscretePath::from_labels(a.graph(), &["3", "0", "1", "0"]).unwrap();
    for s in 0..=3 {
        let lhs: Vec<_> = contraction_stage(&alpha, 3, s).iter().map(|&v| a.act(1, v)).collect();
        assert_eq!(lhs, contraction_stage(&moved, 3, s));
    }
}

#[test]
fn identity_lifts() {
    let r = corpus::reflection_action();
    let ctx = LoopContext::new(&r, 1).unwrap();
    let p1 = path_loop_morphism(&ctx, 1, 1).unwrap().p1;
    let q = corpus::quotient_c6_c3().unwrap();
    for f in [p1, q.map("quotient").unwrap().clone(), EquivariantMap::identity(Arc::new(r.clone()))] {
        let setting = FibrationSetting::new(&f, 1).unwrap();
        let (problem, candidate) = constant_lifting_problem(&setting).unwrap();
        let rep = verify_fibration_lift(&setting, &problem, &candidate).unwrap();
        assert!(rep.holds(), "{rep:?}");
        assert_eq!(rep.squares.len(), 4);
    }
}

fn span_example() -> SpanHomotopy {
    let inst = corpus::reflection_c4().unwrap();
    let a = inst.action.clone();
    let id = EquivariantMap::identity(a.clone());
    let g = translate(&a, 1);
    let n = a.carrier_len();
    SpanHomotopy {
        sigma: id.clone(),
        f: id.clone(),
        tau: id.clone(),
        g,
        epsilon: id.clone(),
        h: constant_path_witness(&id, &vec![0; n], 2),
        u0: id.clone(),
        v0: id.clone(),
        u1: id.clone(),
        v1: id,
        cells: [vec![0; n], vec![1; n], vec![0; n], vec![0; n]],
    }
}

#[test]
fn span_homotopy_between_translates() {
    let w = span_example();
    let r = check_span_homotopy(&w).unwrap();
    assert!(r.holds(), "{r:?}");

    let mut bad = span_example();
    bad.cells[1][3] = 0;
    let r = check_span_homotopy(&bad).unwrap();
    assert_eq!(r.cells, [true, false, true, true]);
    assert!(r.diagnostics.iter().any(|d| d.starts_with("evT")));

    let mut broken = span_example();
    broken.h.stages[1] = vec![1, 2, 2];
    let r = check_span_homotopy(&broken).unwrap();
    assert!(!r.h_valid);
}
