use std::sync::Arc;

use grpd_core::gpath::{
    certify_y_alpha, chi, chi_inverse, colimit_normal_form, enumerate_gpaths, gpath_equivalent_direct, induced_map,
    iso_check, lift_gpath, push_forward, refine, xi, xi_inverse, GPath,
};
use grpd_core::morphism::{are_equivalent, is_essential_equivalence, EquivariantMap};
use grpd_core::space::{
    act_on_path, concat, enumerate_paths, interval_groupoid, DiscretePath, GridSubdivision, PathSpace,
    DEFAULT_PATH_LIMIT,
};
use grpd_core::{corpus, FiniteGroup, FiniteGroupoid, GroupAction, SpaceGraph};

fn path(a: &GroupAction, labels: &[&str]) -> DiscretePath {
    DiscretePath::from_labels(a.graph(), labels).unwrap()
}

fn piece(a: &GroupAction, start: usize, labels: &[&str]) -> DiscretePath {
    let v = labels.iter().map(|l| a.graph().index_of(l).unwrap()).collect();
    DiscretePath::new(a.graph(), start, v).unwrap()
}

#[test]
fn acting_on_paths() {
    let r = corpus::reflection_action();
    let p = path(&r, &["0", "1", "2"]);
    assert_eq!(act_on_path(&r, 0, &p), p);
    assert_eq!(act_on_path(&r, 1, &p), path(&r, &["0", "3", "2"]));
    let c = corpus::free_rotation_action();
    assert_eq!(act_on_path(&c, 1, &path(&c, &["0", "1"])), path(&c, &["3", "4"]));
}

#[test]
fn concatenation() {
    let r = corpus::reflection_action();
    let g = r.graph();
    let joined = concat(g, &path(&r, &["0", "1"]), &piece(&r, 1, &["1", "2"])).unwrap();
    assert_eq!(joined, path(&r, &["0", "1", "2"]));
    assert_eq!(joined.restrict(0, 1).unwrap(), path(&r, &["0", "1"]));
    let stay = concat(g, &path(&r, &["0", "1"]), &DiscretePath::constant(1, 1, 3)).unwrap();
    assert_eq!(stay, path(&r, &["0", "1", "1", "1"]));
    assert!(concat(g, &path(&r, &["0", "1"]), &piece(&r, 1, &["2", "3"])).is_err());
}

#[test]
fn interval_groupoids() {
    let s1 = interval_groupoid(&GridSubdivision::trivial(2));
    assert_eq!((s1.object_count(), s1.arrow_count()), (3, 3));
    let s2 = interval_groupoid(&GridSubdivision::new(2, vec![0, 1, 2]).unwrap());
    assert_eq!(s2.object_labels(), &["(0,1)", "(1,1)", "(1,2)", "(2,2)"]);
    let a = s2.object_index("(1,1)").unwrap();
    let b = s2.object_index("(1,2)").unwrap();
    assert_eq!(s2.hom(a, b).len(), 1);
    assert_eq!(s2.hom(b, a).len(), 1);
    assert_eq!(s2.arrow_count(), 6);
    let deg = interval_groupoid(&GridSubdivision::new(2, vec![0, 2, 2]).unwrap());
    deg.validate().unwrap();
    let x = deg.object_index("(2,1)").unwrap();
    let y = deg.object_index("(2,2)").unwrap();
    assert_eq!(deg.hom(x, y).len(), 1);
}

#[test]
fn path_counts() {
    assert_eq!(enumerate_paths(&SpaceGraph::point(), 4, DEFAULT_PATH_LIMIT).unwrap().len(), 1);
    assert_eq!(enumerate_paths(&SpaceGraph::cycle(4), 1, DEFAULT_PATH_LIMIT).unwrap().len(), 12);
    assert_eq!(enumerate_paths(&SpaceGraph::cycle(6), 2, DEFAULT_PATH_LIMIT).unwrap().len(), 54);
}

#[test]
fn path_groupoids() {
    let r = corpus::reflection_action();
    let ps = PathSpace::new(&r, 1).unwrap();
    let g = ps.groupoid();
    assert_eq!((g.object_count(), g.arrow_count()), (12, 24));
    let point = GroupAction::point(FiniteGroup::symmetric(3));
    let pp = PathSpace::new(&point, 3).unwrap().groupoid();
    assert!(are_equivalent(&pp, &FiniteGroupoid::translation(&point)).unwrap().equivalent);
    let plain = GroupAction::trivial(FiniteGroup::trivial(), SpaceGraph::cycle(4));
    let pg = PathSpace::new(&plain, 2).unwrap().groupoid();
    assert_eq!(pg.arrow_count(), pg.object_count());
    assert_eq!(pg.object_count(), 36);
}

#[test]
fn refinement_and_normal_form() {
    let r = corpus::reflection_action();
    let p = GPath::single(path(&r, &["0", "1", "2"])).unwrap();
    let q = refine(&p, 1, 0).unwrap();
    assert_eq!(q.cuts(), &[0, 1, 2]);
    assert_eq!(q.pieces(), &[path(&r, &["0", "1"]), piece(&r, 1, &["1", "2"])]);
    assert_eq!(q.connectors(), &[0]);
    assert_eq!(colimit_normal_form(&r, &q), p);
    // refining at an existing cut inserts a one-sample piece
    let d = refine(&q, 1, 1).unwrap();
    assert_eq!(d.cuts(), &[0, 1, 1, 2]);
    assert_eq!(colimit_normal_form(&r, &d), p);
    let jump = corpus::reflection_c4().unwrap().gpath("jump").unwrap().clone();
    assert_eq!(colimit_normal_form(&r, &jump), jump);
}

#[test]
fn merging_identity_connectors() {
    let r = corpus::reflection_action();
    let sub = GridSubdivision::new(3, vec![0, 1, 2, 3]).unwrap();
    let p = GPath::new(
        &r,
        sub,
        vec![path(&r, &["0", "1"]), piece(&r, 1, &["1", "2"]), piece(&r, 2, &["2", "1"])],
        vec![0, 1],
    )
    .unwrap();
    let n = colimit_normal_form(&r, &p);
    assert_eq!(n.cuts(), &[0, 2, 3]);
    assert_eq!(n.pieces(), &[path(&r, &["0", "1", "2"]), piece(&r, 2, &["2", "1"])]);
    assert_eq!(n.connectors(), &[1]);
    n.validate(&r).unwrap();
}

#[test]
fn example_pair_is_equivalent() {
    let inst = corpus::reflection_c4().unwrap();
    let r = &inst.action;
    let (a, b) = (inst.gpath("jump").unwrap(), inst.gpath("plain").unwrap());
    let w = gpath_equivalent_direct(r, a, b).unwrap().expect("the pair is isomorphic");
    w.validate(r).unwrap();
    assert_eq!(w.arrow.tuple, vec![0, 1]);
    // both have honest path (0,1)
    assert_eq!(iso_check(r, a, b).unwrap(), Some(0));
    let same = gpath_equivalent_direct(r, a, a).unwrap().unwrap();
    assert!(same.arrow.tuple.iter().all(|&g| g == 0));
    assert_eq!(iso_check(r, a, a).unwrap(), Some(0));
}

#[test]
fn pointwise_equivalence_and_absence() {
    let r = corpus::reflection_action();
    let a = GPath::single(path(&r, &["0", "1", "2"])).unwrap();
    let b = GPath::single(path(&r, &["0", "3", "2"])).unwrap();
    assert_eq!(gpath_equivalent_direct(&r, &a, &b).unwrap().unwrap().arrow.tuple, vec![1]);
    let c = GPath::single(path(&r, &["0", "1"])).unwrap();
    let d = GPath::single(path(&r, &["2", "1"])).unwrap();
    assert!(iso_check(&r, &c, &d).unwrap().is_none());
    assert!(gpath_equivalent_direct(&r, &c, &d).unwrap().is_none());
}

#[test]
fn honest_paths() {
    let r = corpus::reflection_action();
    let sub = GridSubdivision::new(2, vec![0, 1, 2]).unwrap();
    let p = GPath::new(&r, sub, vec![path(&r, &["0", "1"]), piece(&r, 1, &["3", "2"])], vec![1]).unwrap();
    let c = chi(&r, &p);
    assert_eq!(c, path(&r, &["0", "1", "2"]));
    assert!(gpath_equivalent_direct(&r, &p, &chi_inverse(&c)).unwrap().is_some());
    let single = GPath::single(path(&r, &["1", "2"])).unwrap();
    assert_eq!(chi(&r, &single), path(&r, &["1", "2"]));
    let k = DiscretePath::constant(2, 0, 3);
    assert_eq!(chi_inverse(&k).pieces(), std::slice::from_ref(&k));
    let c6 = corpus::free_rotation_action();
    for c in enumerate_paths(c6.graph(), 2, DEFAULT_PATH_LIMIT).unwrap() {
        chi_inverse(&c).validate(&c6).unwrap();
        assert_eq!(chi(&c6, &chi_inverse(&c)), c);
    }
}

#[test]
fn multiple_gpaths() {
    let r = corpus::reflection_action();
    let c = path(&r, &["0", "1", "2"]);
    let m = xi_inverse(&c);
    assert_eq!(xi(&m), c);
    assert_eq!(xi_inverse(&xi(&m)), m);
    assert!(m.check_equivariance(&r));
    let table: Vec<Vec<usize>> = (0..2).map(|g| (0..=2).map(|t| m.sigma(&r, g, t)).collect()).collect();
    assert_eq!(table, vec![vec![0, 1, 2], vec![0, 3, 2]]);
}

#[test]
fn y_alpha_on_examples() {
    let inst = corpus::reflection_c4().unwrap();
    let r = &inst.action;
    let (y, report) = certify_y_alpha(r, inst.gpath("jump").unwrap()).unwrap();
    assert!(report.holds(), "{report:?}");
    assert!(report.nu.holds());
    assert_eq!(y.len(), 4);
    let single = GPath::single(path(r, &["0", "1", "2"])).unwrap();
    let (y, report) = certify_y_alpha(r, &single).unwrap();
    assert!(report.holds());
    for g in 0..2 {
        for t in 0..=2 {
            assert_eq!(y.gamma[y.gamma_inverse(r.group(), g, t)], (g, t));
        }
    }
}

#[test]
fn induced_maps() {
    let q = corpus::quotient_c6_c3().unwrap();
    let f = q.map("quotient").unwrap();
    let ind = induced_map(f, 1).unwrap();
    let p = ind.source.index_of(&path(&q.action, &["0", "1"])).unwrap();
    let image = ind.target.path(ind.map.map(p));
    assert_eq!(image.label(f.target.graph()), "(0,1)");
    let id = EquivariantMap::identity(q.action.clone());
    let ind_id = induced_map(&id, 2).unwrap();
    assert!(ind_id.map.carrier_map.iter().enumerate().all(|(i, &j)| i == j));
    // composition along C6 -> C3 -> point
    let pt = Arc::new(GroupAction::trivial(FiniteGroup::trivial(), SpaceGraph::point()));
    let to_pt = EquivariantMap::new(f.target.clone(), pt, vec![0], vec![0; 3]).unwrap();
    let both = f.then(&to_pt).unwrap();
    let (a, b, ab) = (induced_map(f, 2).unwrap(), induced_map(&to_pt, 2).unwrap(), induced_map(&both, 2).unwrap());
    let chained = a.map.then(&b.map).unwrap();
    assert_eq!(chained.carrier_map, ab.map.carrier_map);
    assert!(is_essential_equivalence(&a.map.strict()).holds());
}

#[test]
fn lifting_along_the_quotient() {
    let q = corpus::quotient_c6_c3().unwrap();
    let f = q.map("quotient").unwrap();
    let tgt = &f.target;
    let gamma = GPath::single(DiscretePath::from_labels(tgt.graph(), &["0", "1", "2"]).unwrap()).unwrap();
    let lift = lift_gpath(f, &gamma).unwrap();
    lift.normal_form.validate(&q.action).unwrap();
    let down: Vec<usize> = chi(&q.action, &lift.normal_form).samples().iter().map(|&v| f.map(v)).collect();
    assert_eq!(down, vec![0, 1, 2]);
    assert!(iso_check(tgt, &push_forward(f, &lift.normal_form), &gamma).unwrap().is_some());

    let r = Arc::new(corpus::reflection_action());
    let id = EquivariantMap::identity(r.clone());
    let jump = corpus::reflection_c4().unwrap().gpath("jump").unwrap().clone();
    let l = lift_gpath(&id, &jump).unwrap();
    assert_eq!(l.normal_form, jump);
    assert!(l.witness.tuple.iter().all(|&g| g == 0));
}

/// `(Z₂ × Z₂) ⋉ (C₄ × Z₂)` projecting onto the reflection: the second factor
/// acts freely and transitively, so the projection is an essential equivalence.
fn doubled_reflection() -> EquivariantMap {
    let r = corpus::reflection_action();
    let z2 = FiniteGroup::cyclic(2);
    let free = GroupAction::multiplication(&z2, &[0, 1]).unwrap();
    let (prod, pg) = r.product(&free);
    let n = free.carrier_len();
    EquivariantMap::new(Arc::new(prod), Arc::new(r), pg.left_projection(), (0..8).map(|x| x / n).collect()).unwrap()
}

#[test]
fn lifting_with_a_connector() {
    let f = doubled_reflection();
    assert!(is_essential_equivalence(&f.strict()).holds());
    let tgt = &f.target;
    for gamma in enumerate_gpaths(tgt, 2).into_iter().filter(|p| p.connectors().iter().any(|&k| k != 0)).take(40) {
        let lift = lift_gpath(&f, &gamma).unwrap();
        lift.raw.validate(&f.source).unwrap();
        assert!(iso_check(tgt, &push_forward(&f, &lift.normal_form), &gamma).unwrap().is_some());
    }
}
