use std::f64::consts::PI;

use proptest::prelude::*;
use rgglab::analytic::{
    beta_optimal_correction, connectivity_mass, continuum_betweenness, elliptic_e, expected_geodesic_cardinality,
    expected_isolated, expected_two_hop_exact, geodesic_recursion_numeric, negbin_fit, pfc_closed_form,
    GeodesicQuery, PfcDomainSpec, PfcGeometry, ShellRegime,
};
use rgglab::geometry::{Domain, Point};
use rgglab::graph::ConnectionModel;
use rgglab::Error;
use statrs::function::gamma::gamma;

fn q(d: usize, rho: f64, r: f64) -> GeodesicQuery {
    GeodesicQuery::new(d, rho, r).unwrap()
}

/// Leading coefficient of the closed form: value divided by the power of the gap.
fn coefficient(d: usize, rho: f64, k: usize) -> f64 {
    let r = k as f64 + 0.5;
    let gap: f64 = 0.5;
    expected_geodesic_cardinality(&q(d, rho, r)).unwrap() / gap.powf(k as f64 * (d as f64 + 1.0) / 2.0)
}

#[test]
fn planar_table_coefficients() {
    let s3 = 3f64.sqrt();
    for rho in [1.0f64, 3.7, 10.0] {
        let table = [
            4.0 * rho / 3.0,
            PI * rho.powi(2) / (3.0 * s3),
            32.0 * PI * rho.powi(3) * 2f64.sqrt() / 945.0,
            PI * PI * rho.powi(4) / (180.0 * 5f64.sqrt()),
            1024.0 * PI * PI * rho.powi(5) / (2027025.0 * s3),
        ];
        for (k, want) in table.iter().enumerate() {
            let got = coefficient(2, rho, k + 1);
            assert!((got - want).abs() <= 1e-9 * want, "k = {}: {got} vs {want}", k + 1);
        }
    }
}

#[test]
fn spatial_table_coefficients() {
    for rho in [1.0f64, 3.7, 10.0] {
        let table = [
            PI * rho / 2.0,
            PI.powi(2) * rho.powi(2) / 18.0,
            PI.powi(3) * rho.powi(3) / 360.0,
            PI.powi(4) * rho.powi(4) / 12600.0,
            PI.powi(5) * rho.powi(5) / 680400.0,
        ];
        for (k, want) in table.iter().enumerate() {
            let got = coefficient(3, rho, k + 1);
            assert!((got - want).abs() <= 1e-9 * want, "k = {}: {got} vs {want}", k + 1);
        }
    }
}

#[test]
fn planar_closed_form_matches_specialised_form() {
    for i in 0..10 {
        let rho = 0.5 + 2.0 * i as f64;
        for j in 0..50 {
            let r = 1.01 + j as f64 * 0.0987;
            let f = r.floor();
            let c = r.ceil();
            let want = rho.powf(f) * (2.0 * PI).powf(f / 2.0) / (gamma(1.5 * f + 1.0) * c.sqrt()) * (c - r).powf(1.5 * f);
            let got = expected_geodesic_cardinality(&q(2, rho, r)).unwrap();
            assert!((got - want).abs() <= 1e-12 * want.abs().max(f64::MIN_POSITIVE), "rho {rho} r {r}");
        }
    }
}

#[test]
fn short_pairs_have_one_geodesic() {
    assert_eq!(expected_geodesic_cardinality(&q(2, 10.0, 0.5)).unwrap(), 1.0);
    assert_eq!(expected_geodesic_cardinality(&q(4, 1.0, 0.0)).unwrap(), 1.0);
    assert!(GeodesicQuery::new(1, 1.0, 1.5).is_err());
    assert!(GeodesicQuery::new(2, 1.0, f64::INFINITY).is_err());
}

#[test]
fn two_hop_lens_values() {
    let a = expected_two_hop_exact(&q(2, 10.0, 1.5)).unwrap();
    assert!((a - 4.53311753977609750).abs() < 1e-12);
    let b = expected_two_hop_exact(&q(3, 10.0, 1.5)).unwrap();
    assert!((b - 10.0 * PI / 12.0 * 5.5 * 0.25).abs() < 1e-12);
    assert!(expected_two_hop_exact(&q(2, 10.0, 2.0 - 1e-12)).unwrap() < 1e-12);
    assert!(expected_two_hop_exact(&q(2, 10.0, 2.5)).is_err());
}

#[test]
fn spatial_recursion_is_polynomial_on_second_interval() {
    let rho = 7.0;
    for k in 0..20 {
        let r = 2.0 + k as f64 * 0.05;
        let want = rho * rho * PI * PI / 1260.0 * ((r + 3.0) * (r + 9.0) - 6.0 / r) * (3.0 - r).powi(4);
        let got = geodesic_recursion_numeric(&q(3, rho, r), 1e-11).unwrap();
        assert!((got - want).abs() <= 1e-8 * want.max(1e-300), "r = {r}: {got} vs {want}");
    }
}

#[test]
fn recursion_and_closed_form_agree_near_integer() {
    for d in [2, 3] {
        for r in [1.96, 2.95, 3.97] {
            let num = geodesic_recursion_numeric(&q(d, 10.0, r), 1e-9).unwrap();
            let closed = expected_geodesic_cardinality(&q(d, 10.0, r)).unwrap();
            assert!((closed / num - 1.0).abs() < 0.10, "d {d} r {r}: {closed} vs {num}");
        }
    }
    assert!(matches!(geodesic_recursion_numeric(&q(4, 10.0, 2.5), 1e-8), Err(Error::Unsupported(_))));
    assert!(geodesic_recursion_numeric(&q(2, 10.0, 6.5), 1e-8).is_err());
}

#[test]
fn beta_optimal_limits() {
    assert_eq!(beta_optimal_correction(0.0, 1.5).unwrap(), 0.0);
    let a = expected_two_hop_exact(&q(2, 1.0, 1.2)).unwrap();
    let big = beta_optimal_correction(400.0, 1.2).unwrap();
    assert!((big / (400.0 * a) - 1.0).abs() < 1e-9);
    // adaptive quadrature oracle
    assert!((beta_optimal_correction(10.0, 1.9).unwrap() - 41.848051862856494).abs() < 1e-6);
}

#[test]
fn elliptic_and_profile_values() {
    assert!((elliptic_e(0.0).unwrap() - PI / 2.0).abs() < 1e-15);
    assert_eq!(elliptic_e(1.0).unwrap(), 1.0);
    assert!((elliptic_e(0.5).unwrap() - 1.4674622093394272).abs() < 1e-9);
    assert!(elliptic_e(1.1).is_err());
    assert!((continuum_betweenness(0.0).unwrap() - 1.0).abs() < 1e-15);
    assert_eq!(continuum_betweenness(1.0).unwrap(), 0.0);
    assert!((continuum_betweenness(0.5).unwrap() - 0.7006615932507706).abs() < 1e-9);
    assert!(continuum_betweenness(-0.1).is_err());
}

#[test]
fn profile_decreases_strictly() {
    let mut prev = f64::INFINITY;
    for k in 0..=1000 {
        let g = continuum_betweenness(k as f64 / 1000.0).unwrap();
        assert!(g < prev);
        prev = g;
    }
}

#[test]
fn profile_series_coefficients() {
    // even function: g(h) = 1 + a h^2 + b h^4 + ...; central differences at 0
    let g = |x: f64| continuum_betweenness(x.abs()).unwrap();
    let h: f64 = 0.02;
    let d2 = (-g(2.0 * h) + 16.0 * g(h) - 30.0 * g(0.0) + 16.0 * g(-h) - g(-2.0 * h)) / (12.0 * h * h);
    let h4: f64 = 0.05;
    let d4 = (-g(3.0 * h4) + 12.0 * g(2.0 * h4) - 39.0 * g(h4) + 56.0 * g(0.0) - 39.0 * g(-h4) + 12.0 * g(-2.0 * h4)
        - g(-3.0 * h4))
        / (6.0 * h4.powi(4));
    assert!((d2 / 2.0 + 1.25).abs() < 1e-3, "quadratic {}", d2 / 2.0);
    assert!((d4 / 24.0 - 13.0 / 64.0).abs() < 1e-3, "quartic {}", d4 / 24.0);
}

#[test]
fn negative_binomial_inversion() {
    let f = negbin_fit(2.0, 4.0 + 4.0).unwrap();
    assert!((f.p - 0.5).abs() < 1e-15 && (f.r - 2.0).abs() < 1e-12);
    let f = negbin_fit(3.0, 6.0 + 9.0).unwrap();
    assert!((f.p - 0.5).abs() < 1e-15 && (f.r - 3.0).abs() < 1e-12);
    assert!(matches!(negbin_fit(2.0, 6.0), Err(Error::NotOverDispersed { .. })));
}

fn disk(rho: f64) -> f64 {
    pfc_closed_form(&PfcDomainSpec {
        geometry: PfcGeometry::Disk { outer: 5.0 },
        rho,
        beta: 1.0,
    })
    .unwrap()
    .value
}

#[test]
fn disk_connection_probability() {
    assert!((disk(5.0) - 0.989).abs() < 5e-4);
    assert!((disk(200.0) - 1.0).abs() < 1e-12);
    let low = pfc_closed_form(&PfcDomainSpec {
        geometry: PfcGeometry::Disk { outer: 5.0 },
        rho: 0.5,
        beta: 1.0,
    })
    .unwrap();
    assert!(low.clamped && low.value == 0.0 && low.raw < 0.0);
}

#[test]
fn tiny_hole_leaves_disk_value() {
    for rho in [3.0, 5.0, 8.0] {
        let small = pfc_closed_form(&PfcDomainSpec {
            geometry: PfcGeometry::AnnulusSmall { inner: 1e-9, outer: 5.0 },
            rho,
            beta: 1.0,
        })
        .unwrap();
        let plain = pfc_closed_form(&PfcDomainSpec {
            geometry: PfcGeometry::Disk { outer: 5.0 },
            rho,
            beta: 1.0,
        })
        .unwrap();
        assert!((small.raw - plain.raw).abs() < 1e-12);
    }
}

#[test]
fn regime_violations_are_reported() {
    let cases = [
        PfcGeometry::AnnulusSmall { inner: 0.5, outer: 5.0 },
        PfcGeometry::AnnulusLarge { inner: 2.0, outer: 20.0 },
        PfcGeometry::Shell {
            inner: 1.0,
            outer: 5.0,
            regime: ShellRegime::Large,
        },
    ];
    for geometry in cases {
        let r = pfc_closed_form(&PfcDomainSpec { geometry, rho: 5.0, beta: 1.0 });
        assert!(matches!(r, Err(Error::Regime(_))), "{r:?}");
    }
    assert!(matches!(
        pfc_closed_form(&PfcDomainSpec {
            geometry: PfcGeometry::AnnulusLarge { inner: 6.0, outer: 5.0 },
            rho: 5.0,
            beta: 1.0
        }),
        Err(Error::InvalidInput(_))
    ));
}

#[test]
fn boundary_term_dominates_bulk() {
    let r: f64 = 5.0;
    let mut prev = 0.0;
    for rho in [4.0, 8.0, 12.0] {
        let bulk = PI * r * r * rho * (-rho * PI).exp();
        let total = 1.0 - pfc_closed_form(&PfcDomainSpec {
            geometry: PfcGeometry::Disk { outer: r },
            rho,
            beta: 1.0,
        })
        .unwrap()
        .raw;
        let ratio = (total - bulk) / bulk;
        assert!(ratio > prev, "rho {rho}");
        prev = ratio;
    }
    assert!(prev > 1e6, "ratio {prev}");
}

#[test]
fn bulk_and_wall_masses() {
    let soft = ConnectionModel::rayleigh(1.0, 2.0).unwrap();
    let d = Domain::disk(12.0).unwrap();
    assert!((connectivity_mass(&d, &soft, &Point::xy(0.0, 0.0)).unwrap() - PI).abs() < 1e-6);
    let sq = Domain::square(30.0).unwrap();
    let wall = connectivity_mass(&sq, &soft, &Point::xy(15.0, 0.0)).unwrap();
    assert!((wall - PI / 2.0).abs() < 0.01 * PI / 2.0);
    assert!(matches!(
        connectivity_mass(&d, &ConnectionModel::hard(1.0).unwrap(), &Point::xy(0.0, 0.0)),
        Err(Error::Unsupported(_))
    ));
}

#[test]
fn mass_next_to_large_hole() {
    let soft = ConnectionModel::rayleigh(1.0, 2.0).unwrap();
    let d = Domain::annulus(2.0, 20.0).unwrap();
    let m = connectivity_mass(&d, &soft, &Point::xy(2.1, 0.0)).unwrap();
    // independent ray quadrature of the visible region
    assert!((m - 1.9201273175678502).abs() < 1e-7);
    let series = PI / 2.0 + (PI.sqrt() / 4.0) / 2.0 + PI.sqrt() * 0.1;
    assert!((m - series).abs() < 0.03 * m);
}

#[test]
fn isolated_vertex_integral() {
    let soft = ConnectionModel::rayleigh(1.0, 2.0).unwrap();
    let d = Domain::disk(5.0).unwrap();
    assert_eq!(expected_isolated(&d, &soft, 0.0).unwrap(), 0.0);
    let v = expected_isolated(&d, &soft, 2.0).unwrap();
    assert!((v - 1.102280521419469).abs() < 1e-8);
    // H vanishes almost everywhere: every vertex is isolated
    let spiky = ConnectionModel::rayleigh(1e12, 2.0).unwrap();
    let all = expected_isolated(&d, &spiky, 0.3).unwrap();
    assert!((all - 0.3 * 25.0 * PI).abs() < 1e-6 * all);
}

proptest! {
    #[test]
    fn closed_form_is_positive_and_vanishes_at_integers(d in 2usize..6, rho in 0.1f64..20.0, r in 1.001f64..5.9) {
        let v = expected_geodesic_cardinality(&q(d, rho, r)).unwrap();
        prop_assert!(v >= 0.0 && v.is_finite());
        let at = expected_geodesic_cardinality(&q(d, rho, r.ceil() - 1e-12)).unwrap();
        prop_assert!(at < 1e-6);
    }

    #[test]
    fn pfc_value_is_a_probability(rho in 0.0f64..50.0, beta in 0.2f64..5.0, outer in 1.0f64..20.0) {
        let v = pfc_closed_form(&PfcDomainSpec { geometry: PfcGeometry::Disk { outer }, rho, beta }).unwrap();
        prop_assert!((0.0..=1.0).contains(&v.value));
        prop_assert_eq!(v.clamped, v.value != v.raw);
    }
}
