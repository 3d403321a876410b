use fibertrap::constants::FLUX_QUANTUM;
use fibertrap::coupling::{coupling_rate, flux_quantum_field, rescale_simulated_field, single_photon_field};
use proptest::prelude::*;

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * b.abs()
}

#[test]
fn square_root_scalings() {
    let b = single_photon_field(6.8e9, 1e-15).unwrap();
    assert!(close(single_photon_field(6.8e9, 4e-15).unwrap(), b / 2.0, 1e-15));
    assert!(close(single_photon_field(4.0 * 6.8e9, 1e-15).unwrap(), 2.0 * b, 1e-15));
    assert!(close(flux_quantum_field(2e-10, 1.0).unwrap(), flux_quantum_field(1e-10, 1.0).unwrap() / 2.0, 1e-15));
    assert_eq!(rescale_simulated_field(3.0e-10, 1.0).unwrap(), 3.0e-10);
    assert_eq!(rescale_simulated_field(3.0e-10, 4.0).unwrap(), 1.5e-10);
}

#[test]
fn reference_rates() {
    assert!(close(coupling_rate(2.47e-9, 1.4e10, 1).unwrap().g, 34.58, 1e-12));
    assert!(close(coupling_rate(1e-8, 1.4e10, 1).unwrap().g, 140.0, 1e-12));
    let ensemble = coupling_rate(34.6 / 1.4e10, 1.4e10, 10_000).unwrap();
    assert!(close(ensemble.collective, 3460.0, 1e-12));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn field_depends_on_frequency_over_volume(f in 1e8f64..1e11, v in 1e-18f64..1e-9, c in 0.01f64..100.0) {
        let b = single_photon_field(f, v).unwrap();
        prop_assert!(close(single_photon_field(c * f, c * v).unwrap(), b, 1e-14));
        prop_assert!(close(single_photon_field(c * f, v).unwrap(), b * c.sqrt(), 1e-14));
    }

    #[test]
    fn rate_linear_in_field_and_moment(b in 0.0f64..1e-6, m in 1e8f64..1e11, c in 0.1f64..10.0) {
        let base = coupling_rate(b, m, 1).unwrap().g;
        prop_assert!(close(coupling_rate(c * b, m, 1).unwrap().g, c * base, 1e-15) || base == 0.0);
        prop_assert!(close(coupling_rate(b, c * m, 1).unwrap().g, c * base, 1e-15) || base == 0.0);
    }

    #[test]
    fn rescaling_composes(b in 1e-12f64..1e-6, n1 in 1e-3f64..1e3, n2 in 1e-3f64..1e3) {
        let twice = rescale_simulated_field(rescale_simulated_field(b, n1).unwrap(), n2).unwrap();
        prop_assert!(close(twice, rescale_simulated_field(b, n1 * n2).unwrap(), 1e-14));
    }

    #[test]
    fn flux_times_area_is_flux_quantum(area in 1e-14f64..1e-2) {
        prop_assert!(close(flux_quantum_field(area, 1.0).unwrap() * area, FLUX_QUANTUM, 1e-15));
    }

    #[test]
    fn collective_rate_grows_as_square_root(b in 1e-10f64..1e-7, n in 1u64..1_000_000) {
        let est = coupling_rate(b, 1.4e10, n).unwrap();
        prop_assert!(close(est.collective, est.g * (n as f64).sqrt(), 1e-15));
    }
}
