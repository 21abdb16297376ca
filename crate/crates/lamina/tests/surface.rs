use std::collections::BTreeSet;

use lamina::cluster::Quiver;
use lamina::exec::Exec;
use lamina::fixtures;
use lamina::surface::{compatible, flip_bfs, load_surface_str, Rot, Tag, TaggedArc, TrackedTriangulation};
use lamina::Error;

fn tracked(name: &str) -> TrackedTriangulation {
    TrackedTriangulation::new(fixtures::surface(name).unwrap().1)
}

#[test]
fn digon_base_has_one_self_folded_triangle() {
    let (_, t) = fixtures::surface("digon").unwrap();
    let sf = t.base().self_folded();
    assert_eq!(sf.len(), 1);
    assert_eq!(t.base().arc_names()[sf[0].inner_arc], "1");
    assert_eq!(t.base().arc_names()[sf[0].loop_arc], "2");
    assert!(t.flipped().is_empty());
    assert_eq!(t.quiver(), Quiver::empty(2));
}

#[test]
fn fixture_quivers() {
    assert_eq!(fixtures::surface("annulus").unwrap().1.quiver(), Quiver::kronecker());
    assert_eq!(fixtures::surface("torus").unwrap().1.quiver(), Quiver::markov());
    // d03 -> d02
    let q = fixtures::surface("pentagon").unwrap().1.quiver();
    assert_eq!(q, Quiver::from_arrows(2, &[(2, 1)]).unwrap());
}

#[test]
fn loader_rejects_bad_input() {
    let wrong_count = r#"{"genus":0,"boundary":[6],"punctures":0,
        "triangles":[["b01","b12","d02"],["d02","b23","d03"],["d03","b34","b40"]]}"#;
    assert!(matches!(load_surface_str(wrong_count), Err(Error::WrongArcCount { .. }) | Err(Error::BadSurface(_))));
    let tripled = r#"{"genus":0,"boundary":[5],"punctures":0,
        "triangles":[["x","x","x"],["d02","b23","d03"],["d03","b34","b40"]]}"#;
    assert!(matches!(load_surface_str(tripled), Err(Error::NonManifoldGluing(_))));
    let boundary_notch = r#"{"genus":0,"boundary":[2],"punctures":1,
        "triangles":[["bR","bL","2"],["2","1","1"]],"tags":{"1":{"m0":"notched"}}}"#;
    assert!(matches!(load_surface_str(boundary_notch), Err(Error::IllegalTag(_))));
    let excluded = r#"{"genus":0,"boundary":[3],"punctures":0,"triangles":[["a","b","c"]]}"#;
    assert!(matches!(load_surface_str(excluded), Err(Error::BadSurface(_))));
}

#[test]
fn notched_input_is_normalized() {
    // both arcs at the puncture notched: the base is unchanged, the loop
    // and its inner arc trade places
    let text = r#"{"genus":0,"boundary":[2],"punctures":1,
        "triangles":[["bR","bL","2"],["2","1","1"]],
        "tags":{"1":{"p0":"notched"},"2":{"p0":"plain"}}}"#;
    let (_, t) = load_surface_str(text).unwrap();
    assert!(t.flipped().is_empty());
    let one = t.position("1").unwrap();
    let (_, _, tags) = t.tagged_ends(one);
    assert_eq!(tags[1], Tag::Notched);
}

#[test]
fn flip_is_an_involution() {
    for (name, _) in fixtures::SURFACES {
        let (_, t) = fixtures::surface(name).unwrap();
        for k in 0..t.size() {
            let (t1, _) = t.flip(k).unwrap();
            let (t2, _) = t1.flip(k).unwrap();
            assert_eq!(t2.layout_key(), t.layout_key(), "{name} position {k}");
        }
    }
}

#[test]
fn tracked_flip_is_an_involution() {
    for (name, _) in fixtures::SURFACES {
        let t = tracked(name);
        for k in 0..t.size() {
            let (t1, _) = t.flip(k).unwrap();
            assert_ne!(t1.key(), t.key());
            let (t2, _) = t1.flip(k).unwrap();
            assert_eq!(t2.key(), t.key(), "{name} position {k}");
        }
    }
}

#[test]
fn flips_commute_with_mutation() {
    for (name, _) in fixtures::SURFACES.iter().chain(fixtures::EXTRA.iter()) {
        let nodes = flip_bfs(&tracked(name), 4, Exec::default()).unwrap();
        for n in &nodes {
            let q = n.tri.tagged().quiver();
            for k in 0..n.tri.size() {
                let (t, _) = n.tri.flip(k).unwrap();
                assert_eq!(t.tagged().quiver(), q.mutate(k).unwrap(), "{name} {:?} then {k}", n.path);
            }
        }
    }
}

#[test]
fn digon_has_four_tagged_triangulations() {
    let nodes = flip_bfs(&tracked("digon"), 6, Exec::default()).unwrap();
    assert_eq!(nodes.len(), 4);
}

#[test]
fn pentagon_has_five_triangulations() {
    let nodes = flip_bfs(&tracked("pentagon"), 6, Exec::default()).unwrap();
    assert_eq!(nodes.len(), 5);
}

#[test]
fn annulus_exchange_graph_grows_in_both_directions() {
    let nodes = flip_bfs(&tracked("annulus"), 5, Exec::default()).unwrap();
    // a bi-infinite path
    assert_eq!(nodes.len(), 11);
}

#[test]
fn euler_count_survives_flips() {
    for (name, _) in fixtures::SURFACES {
        let (s, _) = fixtures::surface(name).unwrap();
        for n in flip_bfs(&tracked(name), 3, Exec::default()).unwrap() {
            s.check(n.tri.tagged().base()).unwrap();
        }
    }
}

#[test]
fn torus_never_reaches_its_rotation() {
    let t = tracked("torus");
    let r = t.reference().clone();
    let mut rotated: Vec<TaggedArc> = t.rotated(Rot::Ccw).unwrap().iter().map(|a| a.canonical(&r)).collect();
    rotated.sort();
    let all_notched: BTreeSet<Tag> = rotated.iter().flat_map(|a| a.tags).collect();
    assert_eq!(all_notched, BTreeSet::from([Tag::Notched]));
    for n in flip_bfs(&t, 4, Exec::default()).unwrap() {
        assert_ne!(n.tri.key(), rotated);
    }
}

#[test]
fn compatibility_clauses() {
    let t = tracked("digon");
    let r = t.reference();
    let ctx = t.underlying_routes();
    let plain = t.tagged_arc(0);
    let notched = t.tagged_arc(1);
    // conjugate pair
    assert_eq!(plain.route, notched.route);
    assert!(compatible(r, &plain, &notched, &ctx).unwrap());
    let opposite = TaggedArc { tags: [plain.tags[0], Tag::Notched], ..plain.clone() };
    assert!(compatible(r, &plain, &opposite, &ctx).unwrap());
    // a tagged arc and the same arc with both ends changed share no tag;
    // on a digon only the puncture end can change, so use the torus
    let tt = tracked("torus");
    let tr = tt.reference();
    let a = tt.tagged_arc(0);
    let a_notched = TaggedArc { tags: [Tag::Notched, Tag::Notched], ..a.clone() };
    let tctx = tt.underlying_routes();
    assert!(!compatible(tr, &a, &a_notched, &tctx).unwrap());
    // distinct arcs at a common puncture with different tags
    let b_notched = TaggedArc { tags: [Tag::Notched, Tag::Notched], ..tt.tagged_arc(1) };
    assert!(!compatible(tr, &a, &b_notched, &tctx).unwrap());
    assert!(compatible(tr, &a, &tt.tagged_arc(1), &tctx).unwrap());
    // unknown arcs
    let (t1, _) = tt.flip(0).unwrap();
    assert!(matches!(compatible(tr, &t1.tagged_arc(0), &a, &tctx), Err(Error::UnknownIntersectionData)));
}

#[test]
fn pentagon_rotation_twice_moves_endpoints_two_steps() {
    let t = tracked("pentagon");
    let r = t.reference();
    let d = t.tagged_arc(0);
    let once = d.rotate(r, Rot::Ccw).unwrap();
    let twice = once.rotate(r, Rot::Ccw).unwrap();
    assert_ne!(once.ends, d.ends);
    assert_ne!(twice.ends, once.ends);
    assert_ne!(twice.ends, d.ends);
    // five rotations bring every arc back on a pentagon
    let mut x = d.clone();
    for _ in 0..5 {
        x = x.rotate(r, Rot::Ccw).unwrap();
    }
    assert_eq!(x.canonical(r), d.canonical(r));
}

#[test]
fn punctured_annulus_reaches_self_folded_triangles() {
    let nodes = flip_bfs(&tracked("punctured-annulus"), 5, Exec::default()).unwrap();
    assert!(nodes.iter().any(|n| !n.tri.tagged().base().self_folded().is_empty()));
    assert!(nodes.iter().any(|n| !n.tri.tagged().flipped().is_empty()));
    for n in &nodes {
        for k in 0..n.tri.size() {
            let (once, _) = n.tri.flip(k).unwrap();
            assert_eq!(once.flip(k).unwrap().0.key(), n.tri.key());
        }
    }
}
