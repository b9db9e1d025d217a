use std::sync::Arc;

use grpd_core::groupoid::StandardKind;
use grpd_core::morphism::{
    are_equivalent, groupoid_pullback, is_essential_equivalence, natural_transformation_exists, translation_pullback,
    EquivariantMap, StrictMorphism,
};
use grpd_core::{corpus, FiniteGroup, FiniteGroupoid, GroupAction, SpaceGraph};

fn labels(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

#[test]
fn point_groupoids() {
    let z2 = FiniteGroupoid::translation(&GroupAction::point(FiniteGroup::cyclic(2)));
    assert_eq!((z2.object_count(), z2.arrow_count()), (1, 2));
    assert!(z2.arrows().all(|a| z2.src(a) == 0 && z2.tgt(a) == 0));
    let z3 = FiniteGroupoid::standard(&StandardKind::Point(FiniteGroup::cyclic(3))).unwrap();
    assert_eq!((z3.object_count(), z3.arrow_count()), (1, 3));
    let one = FiniteGroupoid::standard(&StandardKind::Unit(labels(&["x"]))).unwrap();
    assert_eq!((one.object_count(), one.arrow_count()), (1, 1));
}

#[test]
fn unit_groupoid_on_two_points() {
    let u = FiniteGroupoid::standard(&StandardKind::Unit(labels(&["a", "b"]))).unwrap();
    assert_eq!((u.object_count(), u.arrow_count()), (2, 2));
    let sk = u.skeleton();
    assert_eq!(sk.len(), 2);
    assert!(sk.iter().all(|e| e.isotropy.order() == 1));
    assert_eq!(sk[0].label, "a");
    assert_eq!(sk[1].label, "b");
}

#[test]
fn reflection_groupoid() {
    let a = corpus::reflection_action();
    let g = FiniteGroupoid::translation(&a);
    g.validate().unwrap();
    assert_eq!(g.arrow_count(), 8);
    let arrow = g.arrow_index("(g,1)").unwrap();
    assert_eq!(g.object_label(g.tgt(arrow)), "3");
    assert_eq!(g.isotropy(0).unwrap().order(), 2);
    assert_eq!(g.isotropy(1).unwrap().order(), 1);
    let sk = g.skeleton();
    let members: Vec<Vec<&str>> = sk.iter().map(|e| e.members.iter().map(|&x| g.object_label(x)).collect()).collect();
    assert_eq!(members, vec![vec!["0"], vec!["1", "3"], vec!["2"]]);
    let orders: Vec<usize> = sk.iter().map(|e| e.isotropy.order()).collect();
    assert_eq!(orders, vec![2, 1, 2]);
}

#[test]
fn conjugation_in_s3() {
    let s3 = FiniteGroup::symmetric(3);
    let s = s3.index_of("s").unwrap();
    let sub = s3.generated(&[s]);
    let g = FiniteGroupoid::standard(&StandardKind::Conjugation { group: s3.clone(), subgroup: sub.clone() }).unwrap();
    assert_eq!((g.object_count(), g.arrow_count()), (6, 12));
    g.validate().unwrap();
    let action = GroupAction::conjugation(&s3, &sub).unwrap();
    assert_eq!(action.group().order(), 2);
    for k in action.group().elements() {
        let h = s3.index_of(action.group().label(k)).unwrap();
        for x in s3.elements() {
            assert_eq!(action.act(k, x), s3.conj(h, x));
        }
    }
}

#[test]
fn point_s3_skeleton() {
    let g = FiniteGroupoid::translation(&corpus::point_s3().action);
    let sk = g.skeleton();
    assert_eq!(sk.len(), 1);
    assert_eq!(sk[0].label, "•");
    assert_eq!(sk[0].isotropy.order(), 6);
    assert!(!sk[0].isotropy.is_abelian());
}

#[test]
fn natural_transformations_between_point_maps() {
    let z3 = Arc::new(FiniteGroupoid::translation(&GroupAction::point(FiniteGroup::cyclic(3))));
    let id = StrictMorphism::identity(z3.clone());
    let nt = natural_transformation_exists(&id, &id).unwrap().unwrap();
    assert_eq!(nt.component, vec![z3.unit(0)]);
    // conjugating by r changes nothing in an abelian group, so the
    // component at • may be any arrow, r among them
    let r = z3.arrow_index("(r,•)").unwrap();
    assert!(grpd_core::morphism::first_unnatural_arrow(&id, &id, &[r]).is_none());

    let u = Arc::new(FiniteGroupoid::standard(&StandardKind::Unit(labels(&["a", "b"]))).unwrap());
    let swap = StrictMorphism::new(u.clone(), u.clone(), vec![1, 0], vec![1, 0]).unwrap();
    let id_u = StrictMorphism::identity(u);
    assert!(natural_transformation_exists(&id_u, &swap).unwrap().is_none());
}

#[test]
fn essential_equivalences() {
    let q = corpus::quotient_c6_c3().unwrap();
    let map = q.map("quotient").unwrap();
    let rep = is_essential_equivalence(&map.strict());
    assert!(rep.fully_faithful && rep.essentially_surjective);
    let id = StrictMorphism::identity(Arc::new(FiniteGroupoid::translation(&q.action)));
    assert!(is_essential_equivalence(&id).holds());

    let a = Arc::new(FiniteGroupoid::standard(&StandardKind::Unit(labels(&["a"]))).unwrap());
    let ab = Arc::new(FiniteGroupoid::standard(&StandardKind::Unit(labels(&["a", "b"]))).unwrap());
    let incl = StrictMorphism::new(a, ab, vec![0], vec![0]).unwrap();
    let rep = is_essential_equivalence(&incl);
    assert!(rep.fully_faithful && !rep.essentially_surjective);
    assert_eq!(rep.unreached, vec!["b".to_string()]);
}

#[test]
fn trivial_pullback() {
    let one = Arc::new(GroupAction::unit(labels(&["x"])).unwrap());
    let id = EquivariantMap::identity(one.clone());
    let pb = groupoid_pullback(&id.strict(), &id.strict()).unwrap();
    assert_eq!((pb.groupoid.object_count(), pb.groupoid.arrow_count()), (1, 1));
    let tp = translation_pullback(&id, &id).unwrap();
    assert_eq!(tp.action.group().order(), 1);
}

#[test]
fn structure_group_of_identity_legs() {
    let a = Arc::new(corpus::reflection_action());
    let id = EquivariantMap::identity(a.clone());
    let tp = translation_pullback(&id, &id).unwrap();
    assert_eq!(tp.product.left_order(), 2);
    assert_eq!(tp.product.right_order(), 2);
    assert_eq!(tp.action.group().order(), 4);
    // points (x, l, y) with l·y = x
    assert_eq!(tp.points.len(), 8);
    let pb = groupoid_pullback(&id.strict(), &id.strict()).unwrap();
    let iso = tp.isomorphism_to(&id, &id, &pb).unwrap();
    assert!(iso.is_isomorphism());
    assert!(are_equivalent(&FiniteGroupoid::translation(&tp.action), &pb.groupoid).unwrap().equivalent);
}

#[test]
fn loop_pullback_on_point_z2() {
    let ctx = grpd_core::loopbase::LoopContext::new(&GroupAction::point(FiniteGroup::cyclic(2)), 2).unwrap();
    let pb = groupoid_pullback(&ctx.delta.strict(), &ctx.ev.strict()).unwrap();
    assert_eq!(pb.groupoid.object_count(), 4);
    let tp = translation_pullback(&ctx.delta, &ctx.ev).unwrap();
    assert_eq!(tp.points.len(), 4);
}

#[test]
fn loop_square_of_point_z3_is_conjugation() {
    // (a,b)·(h,l) = (b h a^-1, b l a^-1) on G×G
    let z3 = FiniteGroup::cyclic(3);
    let pg = z3.product(&z3);
    let n = pg.group.order();
    let table: Vec<Vec<usize>> = (0..n)
        .map(|ab| {
            let (a, b) = pg.split(ab);
            (0..n)
                .map(|hl| {
                    let (h, l) = pg.split(hl);
                    pg.pair(z3.mul(z3.mul(b, h), z3.inv(a)), z3.mul(z3.mul(b, l), z3.inv(a)))
                })
                .collect()
        })
        .collect();
    let graph = SpaceGraph::discrete(pg.group.labels().to_vec()).unwrap();
    let action = GroupAction::new(pg.group.clone(), graph, |g, x| table[g][x]).unwrap();
    let left = FiniteGroupoid::translation(&action);
    let right =
        FiniteGroupoid::standard(&StandardKind::Conjugation { group: z3.clone(), subgroup: vec![0, 1, 2] }).unwrap();
    assert!(are_equivalent(&left, &right).unwrap().equivalent);
    let p2 = FiniteGroupoid::standard(&StandardKind::Point(FiniteGroup::cyclic(2))).unwrap();
    let p3 = FiniteGroupoid::standard(&StandardKind::Point(FiniteGroup::cyclic(3))).unwrap();
    assert!(!are_equivalent(&p2, &p3).unwrap().equivalent);
    assert!(are_equivalent(&p3, &p3).unwrap().equivalent);
}

#[test]
fn essential_equivalence_implies_equivalent_on_corpus() {
    for inst in corpus::all().unwrap() {
        for m in &inst.maps {
            let s = m.map.strict();
            if is_essential_equivalence(&s).holds() {
                assert!(are_equivalent(&s.source, &s.target).unwrap().equivalent, "{}", m.name);
            }
        }
        let id = StrictMorphism::identity(Arc::new(FiniteGroupoid::translation(&inst.action)));
        assert!(is_essential_equivalence(&id).holds());
    }
}
