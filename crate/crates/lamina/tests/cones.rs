use lamina::cluster::{exchange_bfs_with, Engine, Quiver};
use lamina::cones::{coverage, halfspace_residual, pairwise_face_check, rank, RationalCone};
use lamina::exec::Exec;

fn cones_of(q: &Quiver, depth: usize) -> Vec<RationalCone> {
    exchange_bfs_with(q, depth, Engine::Tropical, Exec::default())
        .unwrap()
        .clusters
        .iter()
        .map(|c| RationalCone::new(q.size(), c.gvectors.clone()).unwrap())
        .collect()
}

#[test]
fn kronecker_is_not_confined_to_a_halfspace() {
    assert_eq!(halfspace_residual(&cones_of(&Quiver::kronecker(), 6), &[1, 1]), Some(-1));
}

#[test]
fn kronecker_depth_five_is_a_fan() {
    assert!(pairwise_face_check(&cones_of(&Quiver::kronecker(), 5)).unwrap());
}

#[test]
fn markov_cones_are_a_fan_at_small_depth() {
    assert!(pairwise_face_check(&cones_of(&Quiver::markov(), 3)).unwrap());
}

#[test]
fn cones_are_full_dimensional() {
    for q in [Quiver::kronecker(), Quiver::markov()] {
        for c in cones_of(&q, 5) {
            assert_eq!(rank(c.gens()), q.size());
            assert!(c.is_full_dimensional());
        }
    }
}

#[test]
fn coverage_grows_with_depth() {
    let q = Quiver::kronecker();
    let mut last = 0;
    for depth in 0..=14 {
        let cov = coverage(&cones_of(&q, depth), 2, 6, Exec::default(), 0).unwrap();
        assert!(cov.covered >= last);
        last = cov.covered;
    }
    assert_eq!(last, 163);
}

#[test]
fn coverage_ignores_the_seed() {
    let cones = cones_of(&Quiver::kronecker(), 4);
    let a = coverage(&cones, 2, 4, Exec::default(), 1).unwrap();
    let b = coverage(&cones, 2, 4, Exec::Sequential, 12345).unwrap();
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
}

#[test]
fn markov_mutation_reverses_arrows() {
    assert_eq!(Quiver::markov().mutate(0).unwrap(), Quiver::markov().opposite());
}
