use proptest::prelude::*;
use rgglab::geometry::{
    cap_area, intersection_volume, sphere_surface, unit_ball_volume, visibility, Domain, Obstacle, Point,
};
use rgglab::RandomState;

#[test]
fn lens_at_zero_separation_is_the_ball() {
    for d in 1..=6 {
        let v = intersection_volume(d, 0.0).unwrap();
        assert!((v - unit_ball_volume(d)).abs() < 1e-12 * unit_ball_volume(d), "d = {d}");
        assert_eq!(intersection_volume(d, 2.0).unwrap(), 0.0);
    }
}

#[test]
fn cap_at_pi_is_whole_sphere() {
    for d in 2..=6 {
        for r in [0.5, 1.0, 3.0] {
            let c = cap_area(d, r, std::f64::consts::PI).unwrap();
            let s = sphere_surface(d, r);
            assert!((c - s).abs() < 1e-12 * s, "d = {d}, r = {r}");
        }
    }
}

#[test]
fn out_of_range_arguments_are_rejected() {
    assert!(intersection_volume(0, 0.5).is_err());
    assert!(intersection_volume(2, -0.1).is_err());
    assert!(cap_area(1, 1.0, 0.3).is_err());
}

fn domains() -> Vec<Domain> {
    vec![
        Domain::disk(5.0).unwrap(),
        Domain::annulus(2.0, 6.0).unwrap(),
        Domain::square_with_obstacles(10.0, vec![Obstacle::new(3.0, 3.0, 1.0), Obstacle::new(7.0, 6.0, 1.5)]).unwrap(),
        Domain::sphere(3.0).unwrap(),
        Domain::shell(1.0, 3.0).unwrap(),
        Domain::torus(4.0).unwrap(),
    ]
}

#[test]
fn visibility_is_symmetric() {
    let mut rng = RandomState::new(21);
    for d in domains() {
        for _ in 0..1000 {
            let x = d.sample_uniform(&mut rng);
            let y = d.sample_uniform(&mut rng);
            assert_eq!(visibility(&d, &x, &y).unwrap(), visibility(&d, &y, &x).unwrap());
        }
    }
}

#[test]
fn convex_domains_see_everything() {
    let mut rng = RandomState::new(22);
    for d in [Domain::disk(2.0).unwrap(), Domain::square(3.0).unwrap(), Domain::sphere(1.0).unwrap()] {
        assert!(d.is_convex());
        for _ in 0..500 {
            let x = d.sample_uniform(&mut rng);
            let y = d.sample_uniform(&mut rng);
            assert!(visibility(&d, &x, &y).unwrap());
        }
    }
}

#[test]
fn annulus_blocks_opposite_points() {
    let d = Domain::annulus(1.0, 3.0).unwrap();
    assert!(!visibility(&d, &Point::xy(2.0, 0.0), &Point::xy(-2.0, 0.0)).unwrap());
    assert!(visibility(&d, &Point::xy(2.0, 0.0), &Point::xy(2.0, 1.0)).unwrap());
    assert!(visibility(&d, &Point::xy(0.0, 0.0), &Point::xy(2.0, 0.0)).is_err());
}

#[test]
fn uniform_samples_fill_the_measure() {
    let mut rng = RandomState::new(23);
    let d = Domain::annulus(1.0, 2.0).unwrap();
    let n = 20_000;
    let inside = (0..n)
        .filter(|_| d.sample_uniform(&mut rng).norm() < 1.5f64)
        .count() as f64
        / n as f64;
    // area fraction of the annulus between radii 1 and 1.5
    let want = (1.5f64 * 1.5 - 1.0) / (4.0 - 1.0);
    assert!((inside - want).abs() < 4.0 * (want * (1.0 - want) / n as f64).sqrt());
}

proptest! {
    #[test]
    fn lens_volume_is_non_increasing(d in 1usize..=6, a in 0.0f64..2.0, b in 0.0f64..2.0) {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        prop_assert!(intersection_volume(d, hi).unwrap() <= intersection_volume(d, lo).unwrap() + 1e-12);
    }

    #[test]
    fn samples_lie_in_their_domain(seed in any::<u64>(), k in 0usize..6) {
        let d = &domains()[k];
        let mut rng = RandomState::new(seed);
        for _ in 0..20 {
            let p = d.sample_uniform(&mut rng);
            prop_assert!(d.contains(&p));
        }
    }

    #[test]
    fn torus_distance_is_bounded(seed in any::<u64>()) {
        let d = Domain::torus(5.0).unwrap();
        let mut rng = RandomState::new(seed);
        let x = d.sample_uniform(&mut rng);
        let y = d.sample_uniform(&mut rng);
        let dist = d.distance(&x, &y);
        prop_assert!(dist <= d.diameter() + 1e-12);
        prop_assert!((dist - d.distance(&y, &x)).abs() < 1e-12);
    }
}
