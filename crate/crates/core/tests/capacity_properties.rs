use gausscap::capacities::{
    coherent_information, maximal_capacity, private_lower_approx, private_upper,
    private_upper_general, scaling_gap,
};
use gausscap::channels::{channel_output_entropies, ChannelSpec};
use gausscap::gaussian::{entropy, g_function, make_squeezed_thermal, make_thermal, purify};

fn bs(tau: f64, n_e: f64) -> ChannelSpec {
    ChannelSpec::beam_splitter(tau, make_thermal(n_e).unwrap()).unwrap()
}

fn g(x: f64) -> f64 {
    g_function(x).unwrap()
}

#[test]
fn beam_splitter_ordering_and_gap() {
    for ti in 1..=19 {
        let tau = ti as f64 * 0.05;
        for n_e in [0.0, 0.5, 1.0, 2.0] {
            let spec = bs(tau, n_e);
            for ni in 0..=10 {
                let n = ni as f64;
                let max = maximal_capacity(&spec, n).unwrap();
                let up = private_upper(&spec, n).unwrap();
                let lo = private_lower_approx(&spec, n).unwrap();
                assert!(max >= up && up >= lo && lo >= 0.0);
                let gap = 2.0 * (g((1.0 - tau) * n_e) - (1.0 - tau) * g(n_e));
                assert!((up - lo - gap).abs() < 1e-10);
                assert!((gap - 2.0 * scaling_gap(1.0 - tau, n_e)).abs() < 1e-15);
            }
        }
    }
}

#[test]
fn squeezing_does_not_change_general_bound() {
    for tau in [0.1, 0.5, 0.85] {
        for n in [0.0, 1.0, 4.0] {
            let reference = private_upper(&bs(tau, 1.0), n).unwrap();
            for ri in 0..=10 {
                let r = ri as f64 * 0.2;
                let env = make_squeezed_thermal(1.0, r).unwrap();
                let spec = ChannelSpec::beam_splitter(tau, env).unwrap();
                let v = private_upper_general(&spec, n).unwrap();
                assert!((v - reference).abs() <= 1e-12 * reference.abs().max(1e-300));
            }
        }
    }
}

#[test]
fn degenerate_limits_are_exact() {
    for n_e in [0.0, 0.5, 3.0] {
        for n in [0.0, 0.5, 2.0, 10.0] {
            assert_eq!(private_upper(&bs(0.0, n_e), n).unwrap(), 0.0);
            assert_eq!(private_upper(&bs(1.0, n_e), n).unwrap(), 2.0 * g(n));
        }
    }
}

#[test]
fn upper_is_nondecreasing_in_input_energy() {
    for tau in [0.1, 0.5, 0.85] {
        for n_e in [0.0, 1.0, 2.0] {
            let spec = bs(tau, n_e);
            let vals: Vec<f64> = (0..=100).map(|i| private_upper(&spec, 0.1 * i as f64).unwrap()).collect();
            assert!(vals.windows(2).all(|w| w[1] >= w[0]));
        }
    }
}

#[test]
fn noise_dependence_changes_sign_at_matched_energy() {
    // d/dN_E has the sign of N_E − N.
    for tau in [0.2, 0.85] {
        let n = 2.0;
        let above: Vec<f64> = (0..=40).map(|i| private_upper(&bs(tau, n + 0.1 * i as f64), n).unwrap()).collect();
        assert!(above.windows(2).all(|w| w[1] >= w[0]));
        let below: Vec<f64> = (0..=20).map(|i| private_upper(&bs(tau, 0.1 * i as f64), n).unwrap()).collect();
        assert!(below.windows(2).all(|w| w[1] <= w[0]));
    }
}

#[test]
fn factor_two_relation() {
    for tau in [0.05, 0.35, 0.85] {
        for n_e in [0.0, 0.5, 2.0] {
            for n in [0.0, 1.5, 6.0] {
                let single = g(tau * n + (1.0 - tau) * n_e) - (1.0 - tau) * g(n_e);
                assert_eq!(private_upper(&bs(tau, n_e), n).unwrap(), 2.0 * single);
            }
        }
    }
}

#[test]
fn coherent_information_via_purified_input() {
    for (tau, n_e, n) in [(0.85, 1.0, 2.0), (0.3, 0.5, 4.0), (0.6, 2.0, 0.2)] {
        let spec = bs(tau, n_e);
        let ic = coherent_information(&spec, n).unwrap();
        let input = make_thermal(n).unwrap();
        let s_b = channel_output_entropies(&input, &spec).unwrap().output;
        let global = purify(&input).unwrap().direct_sum(&purify(spec.environment()).unwrap());
        let out = global.transformed(&spec.symplectic().embed(4, &[0, 2]).unwrap());
        let s_ba = entropy(&out.reduced(&[0, 1]).unwrap()).unwrap();
        assert!((ic - (s_b - s_ba)).abs() < 1e-8);
    }
}
