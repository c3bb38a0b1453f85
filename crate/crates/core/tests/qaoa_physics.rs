mod common;

use common::{fidelity, random_qubo, GateCircuit};
use num_complex::Complex64;
use qubo_forge::exact::spectrum;
use qubo_forge::problems::{max_cut, number_partitioning, Graph, PartitionInstance};
use qubo_forge::qaoa::{
    cost_layer, expectation_exact, expectation_sampled, hadamard_layer, mixer_layer, optimize,
    run_circuit, sample, QaoaConfig, Statevector,
};
use qubo_forge::QuboModel;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_state(rng: &mut ChaCha8Rng, n: usize) -> Statevector {
    let mut amps: Vec<Complex64> = (0..1 << n)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    for a in &mut amps {
        *a /= norm;
    }
    Statevector::from_amplitudes(amps).unwrap()
}

#[test]
fn every_layer_preserves_norm() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for _ in 0..1000 {
        let n = rng.gen_range(1..=10);
        let ising = random_qubo(&mut rng, n, 9).to_ising();
        let s = random_state(&mut rng, n);
        let s = hadamard_layer(s);
        assert!((s.norm_sqr() - 1.0).abs() < 1e-9);
        let s = cost_layer(s, &ising, rng.gen_range(-3.0..3.0)).unwrap();
        assert!((s.norm_sqr() - 1.0).abs() < 1e-9);
        let s = mixer_layer(s, rng.gen_range(-3.0..3.0));
        assert!((s.norm_sqr() - 1.0).abs() < 1e-9);
    }
}

#[test]
fn zero_angles_give_uniform_distribution() {
    let mut rng = ChaCha8Rng::seed_from_u64(32);
    for n in 1..=10 {
        let q = random_qubo(&mut rng, n, 20);
        let layers = rng.gen_range(1..=3);
        let s = run_circuit(&q, &vec![0.0; layers], &vec![0.0; layers]).unwrap();
        let uniform = 1.0 / (1u64 << n) as f64;
        assert!(s
            .probabilities()
            .iter()
            .all(|p| (p - uniform).abs() < 1e-12));
    }
}

#[test]
fn uniform_expectation_is_spectrum_mean() {
    let mut rng = ChaCha8Rng::seed_from_u64(33);
    let mut models: Vec<QuboModel> = (1..=10).map(|n| random_qubo(&mut rng, n, 15)).collect();
    models.push(max_cut(&Graph::new(2, [(0, 1)]).unwrap()).unwrap());
    models.push(number_partitioning(&PartitionInstance::new(vec![1, 5, 5, 11]).unwrap()).unwrap());
    for q in &models {
        let s = run_circuit(q, &[0.0], &[0.0]).unwrap();
        let spec = spectrum(q).unwrap();
        let mean = spec.iter().sum::<f64>() / spec.len() as f64;
        let e = expectation_exact(q, &s).unwrap();
        assert!(
            (e - mean).abs() <= 1e-9 * mean.abs().max(1.0),
            "{e} vs {mean}"
        );
    }
    let edge = &models[10];
    let e = expectation_exact(edge, &run_circuit(edge, &[0.0], &[0.0]).unwrap()).unwrap();
    assert!((e + 0.5).abs() < 1e-12);
}

#[test]
fn diagonal_cost_matches_gate_network() {
    let mut rng = ChaCha8Rng::seed_from_u64(34);
    for _ in 0..200 {
        let q = random_qubo(&mut rng, 3, 6);
        let p = rng.gen_range(1..=3);
        let gammas: Vec<f64> = (0..p).map(|_| rng.gen_range(-2.0..2.0)).collect();
        let betas: Vec<f64> = (0..p).map(|_| rng.gen_range(-2.0..2.0)).collect();
        let diag = run_circuit(&q, &gammas, &betas).unwrap();
        let gates = GateCircuit::qaoa(&q, &gammas, &betas);
        let f = fidelity(diag.amplitudes(), &gates.amps);
        assert!(f >= 1.0 - 1e-9, "fidelity {f}");
    }
}

#[test]
fn sampled_expectation_within_five_sigma() {
    let mut rng = ChaCha8Rng::seed_from_u64(35);
    let q = random_qubo(&mut rng, 5, 10);
    let s = run_circuit(&q, &[0.4, 0.9], &[0.7, 0.3]).unwrap();
    let exact = expectation_exact(&q, &s).unwrap();
    let spec = spectrum(&q).unwrap();
    let var: f64 = s
        .probabilities()
        .iter()
        .zip(&spec)
        .map(|(p, e)| p * (e - exact).powi(2))
        .sum();
    let shots = 1000;
    let bound = 5.0 * var.sqrt() / (shots as f64).sqrt();
    let hits = (0..1000u64)
        .filter(|&seed| (expectation_sampled(&q, &s, shots, seed).unwrap() - exact).abs() <= bound)
        .count();
    assert!(hits >= 990, "{hits}/1000 within 5 sigma");
}

#[test]
fn sampling_statistics_and_determinism() {
    let basis = Statevector::basis(3, 6).unwrap();
    let counts = sample(&basis, 1000, 1).unwrap();
    assert_eq!(counts.len(), 1);
    assert_eq!(counts["011"], 1000);

    let uniform = hadamard_layer(Statevector::zero(2).unwrap());
    let shots = 1_000_000u64;
    let counts = sample(&uniform, shots, 7).unwrap();
    assert_eq!(counts.values().sum::<u64>(), shots);
    let sigma = (shots as f64 * 0.25 * 0.75).sqrt();
    for c in counts.values() {
        assert!((*c as f64 - 250_000.0).abs() <= 5.0 * sigma, "{counts:?}");
    }
    assert_eq!(
        sample(&uniform, 500, 9).unwrap(),
        sample(&uniform, 500, 9).unwrap()
    );
}

#[test]
fn constant_shift_changes_no_probability_or_choice() {
    let mut rng = ChaCha8Rng::seed_from_u64(36);
    for _ in 0..5 {
        let q = random_qubo(&mut rng, 4, 8);
        let c = rng.gen_range(-50..50) as f64;
        let shifted = q.shifted(c);
        let (g, b) = ([0.3, 1.1], [0.8, 0.2]);
        let p0 = run_circuit(&q, &g, &b).unwrap().probabilities();
        let p1 = run_circuit(&shifted, &g, &b).unwrap().probabilities();
        assert!(p0.iter().zip(&p1).all(|(x, y)| (x - y).abs() < 1e-12));

        let cfg = QaoaConfig {
            layers: 1,
            max_iterations: 60,
            ..Default::default()
        };
        let r0 = optimize(&q, &cfg).unwrap();
        let r1 = optimize(&shifted, &cfg).unwrap();
        assert_eq!(r0.best.assignment, r1.best.assignment);
        assert!((r1.expectation - r0.expectation - c).abs() < 1e-9);
    }
}

#[test]
fn constant_model_trace_is_flat() {
    let q = QuboModel::constant_only(3, 4.5).unwrap();
    let r = optimize(&q, &QaoaConfig::default()).unwrap();
    assert!((r.expectation - 4.5).abs() < 1e-12);
    assert!(!r.trace.is_empty());
    assert!(r.trace.iter().all(|v| (v - 4.5).abs() < 1e-12));
}

#[test]
fn running_best_of_trace_never_increases() {
    let q = number_partitioning(&PartitionInstance::new(vec![3, 1, 4, 2]).unwrap()).unwrap();
    let r = optimize(
        &q,
        &QaoaConfig {
            layers: 2,
            restarts: 1,
            ..Default::default()
        },
    )
    .unwrap();
    let mut best = f64::INFINITY;
    let running: Vec<f64> = r
        .trace
        .iter()
        .map(|&v| {
            best = best.min(v);
            best
        })
        .collect();
    assert!(running.windows(2).all(|w| w[1] <= w[0]));
    assert_eq!(*running.last().unwrap(), r.expectation);
}

#[test]
fn optimized_partition_state_favors_optimum() {
    let q = number_partitioning(&PartitionInstance::new(vec![1, 5, 5, 11]).unwrap()).unwrap();
    let r = optimize(
        &q,
        &QaoaConfig {
            layers: 2,
            ..Default::default()
        },
    )
    .unwrap();
    let probs = run_circuit(&q, &r.gammas, &r.betas)
        .unwrap()
        .probabilities();
    // 0001 has basis index 8 and 1110 has index 7
    assert!(probs[7] + probs[8] > 2.0 / 16.0);
}
