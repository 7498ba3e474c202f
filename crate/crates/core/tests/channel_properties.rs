use gausscap::channels::{
    channel_output_entropies, closed_form_outputs, complementary, propagate, weak_complementary,
    ChannelSpec,
};
use gausscap::gaussian::{entropy, purify, random_gaussian_state, CovarianceMatrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_spec(rng: &mut ChaCha8Rng, env: CovarianceMatrix) -> ChannelSpec {
    if rng.random_bool(0.5) {
        ChannelSpec::beam_splitter(rng.random::<f64>(), env).unwrap()
    } else {
        ChannelSpec::amplifier(1.0 + 9.0 * rng.random::<f64>(), env).unwrap()
    }
}

#[test]
fn conjugate_and_trace_matches_closed_form() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for seed in 0..100u64 {
        let a = random_gaussian_state(1, 5.0, 1.5, 2 * seed).unwrap();
        let e = random_gaussian_state(1, 5.0, 1.5, 2 * seed + 1).unwrap();
        let spec = random_spec(&mut rng, e);
        let out = propagate(&a, &spec, false).unwrap();
        let (b, f) = closed_form_outputs(&a, &spec);
        let scale = b.amax().max(f.amax()).max(1.0);
        assert!((out.output.matrix() - b).amax() <= 1e-12 * scale);
        assert!((out.weak_complement.matrix() - f).amax() <= 1e-12 * scale);
    }
}

#[test]
fn complement_reduces_to_weak_complement() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for seed in 0..100u64 {
        let a = random_gaussian_state(1, 5.0, 1.5, 1000 + seed).unwrap();
        let e = random_gaussian_state(1, 5.0, 1.5, 2000 + seed).unwrap();
        let spec = random_spec(&mut rng, e);
        let fc = complementary(&a, &spec).unwrap();
        let f = weak_complementary(&a, &spec).unwrap();
        let scale = f.matrix().amax().max(1.0);
        assert!((fc.reduced(&[0]).unwrap().matrix() - f.matrix()).amax() <= 1e-10 * scale);
    }
}

#[test]
fn pure_input_and_environment_balance() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for seed in 0..100u64 {
        let a = random_gaussian_state(1, 0.0, 1.5, 3000 + seed).unwrap();
        let e = random_gaussian_state(1, 0.0, 1.5, 4000 + seed).unwrap();
        let spec = random_spec(&mut rng, e);
        let s = channel_output_entropies(&a, &spec).unwrap();
        assert!((s.output - s.weak_complement).abs() < 1e-8, "seed {seed}");
        assert!((s.weak_complement - s.complement).abs() < 1e-8, "seed {seed}");
    }
}

#[test]
fn purified_input_balance() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for seed in 0..100u64 {
        let a = random_gaussian_state(1, 5.0, 1.5, 5000 + seed).unwrap();
        let e = random_gaussian_state(1, 5.0, 1.5, 6000 + seed).unwrap();
        let spec = random_spec(&mut rng, e);
        let s_fc = channel_output_entropies(&a, &spec).unwrap().complement;

        // modes A, A', E, C; channel on (A, E)
        let global = purify(&a).unwrap().direct_sum(&purify(spec.environment()).unwrap());
        let out = global.transformed(&spec.symplectic().embed(4, &[0, 2]).unwrap());
        let s_ba = entropy(&out.reduced(&[0, 1]).unwrap()).unwrap();
        assert!((s_fc - s_ba).abs() < 1e-8, "seed {seed}: {s_fc} vs {s_ba}");
    }
}
