#![allow(dead_code)]

use num_complex::Complex64;
use qubo_forge::problems::Graph;
use qubo_forge::{Assignment, QuboModel};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn fixture(name: &str) -> String {
    format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

pub fn all_assignments(n: usize) -> impl Iterator<Item = Assignment> {
    (0..1u64 << n).map(move |z| Assignment::from_index(z, n))
}

/// Dense random integer QUBO with coefficients in `-range..=range`.
pub fn random_qubo(rng: &mut ChaCha8Rng, n: usize, range: i64) -> QuboModel {
    let mut terms = Vec::new();
    for i in 0..n {
        for j in i..n {
            terms.push((i, j, rng.gen_range(-range..=range) as f64));
        }
    }
    let constant = rng.gen_range(-range..=range) as f64;
    QuboModel::from_terms(n, terms, constant).unwrap()
}

pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges).unwrap()
}

pub fn is_connected(g: &Graph) -> bool {
    let n = g.node_count();
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(u) = stack.pop() {
        for &(a, b) in g.edges() {
            let other = if a == u {
                b
            } else if b == u {
                a
            } else {
                continue;
            };
            if !seen[other] {
                seen[other] = true;
                stack.push(other);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Direct `xᵀQx + c` over the stored terms.
pub fn dense_energy(model: &QuboModel, a: &Assignment) -> f64 {
    let x = |i: usize| a.get(i) as u8 as f64;
    let mut e = model.constant();
    for (i, j, v) in model.terms() {
        e += v * x(i) * x(j);
    }
    e
}

pub fn brute_force_min(model: &QuboModel) -> f64 {
    all_assignments(model.num_variables())
        .map(|a| dense_energy(model, &a))
        .fold(f64::INFINITY, f64::min)
}

pub fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
}

/// Reference QAOA circuit assembled gate by gate: Hadamards, then per layer
/// `RZ` on every field term and `RZZ` on every coupling, then `RX(2β)`.
/// Spin `σ = +1` is bit 1, so `σ = −Z` and `σ_i σ_j = Z_i Z_j`.
pub struct GateCircuit {
    pub n: usize,
    pub amps: Vec<Complex64>,
}

impl GateCircuit {
    pub fn plus_state(n: usize) -> Self {
        let dim = 1usize << n;
        let mut c = GateCircuit {
            n,
            amps: vec![Complex64::new(0.0, 0.0); dim],
        };
        c.amps[0] = Complex64::new(1.0, 0.0);
        let h = std::f64::consts::FRAC_1_SQRT_2;
        for q in 0..n {
            c.single(q, [[h.into(), h.into()], [h.into(), (-h).into()]]);
        }
        c
    }

    fn single(&mut self, q: usize, m: [[Complex64; 2]; 2]) {
        let bit = 1usize << q;
        for z in 0..self.amps.len() {
            if z & bit == 0 {
                let (a0, a1) = (self.amps[z], self.amps[z | bit]);
                self.amps[z] = m[0][0] * a0 + m[0][1] * a1;
                self.amps[z | bit] = m[1][0] * a0 + m[1][1] * a1;
            }
        }
    }

    /// `exp(−iθZ/2)`.
    pub fn rz(&mut self, q: usize, theta: f64) {
        let m0 = Complex64::from_polar(1.0, -theta / 2.0);
        let m1 = Complex64::from_polar(1.0, theta / 2.0);
        let zero = Complex64::new(0.0, 0.0);
        self.single(q, [[m0, zero], [zero, m1]]);
    }

    /// `exp(−iθ Z_a Z_b / 2)`.
    pub fn rzz(&mut self, a: usize, b: usize, theta: f64) {
        for (z, amp) in self.amps.iter_mut().enumerate() {
            let parity = ((z >> a) ^ (z >> b)) & 1;
            let sign = if parity == 0 { -1.0 } else { 1.0 };
            *amp *= Complex64::from_polar(1.0, sign * theta / 2.0);
        }
    }

    pub fn rx(&mut self, q: usize, theta: f64) {
        let c = Complex64::new((theta / 2.0).cos(), 0.0);
        let s = Complex64::new(0.0, -(theta / 2.0).sin());
        self.single(q, [[c, s], [s, c]]);
    }

    pub fn qaoa(model: &QuboModel, gammas: &[f64], betas: &[f64]) -> Self {
        let ising = model.to_ising();
        let mut c = GateCircuit::plus_state(model.num_variables());
        for (&g, &b) in gammas.iter().zip(betas) {
            // exp(−iγ h σ) = exp(+iγ h Z)
            for (&i, &h) in ising.fields() {
                c.rz(i, -2.0 * g * h);
            }
            for (&(i, j), &jij) in ising.couplings() {
                c.rzz(i, j, 2.0 * g * jij);
            }
            for q in 0..c.n {
                c.rx(q, 2.0 * b);
            }
        }
        c
    }
}

pub fn fidelity(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.conj() * y)
        .sum::<Complex64>()
        .norm()
}

pub fn run_cli(args: &[String]) -> std::process::Output {
    std::process::Command::new(env!("CARGO_BIN_EXE_qubo-forge"))
        .args(args)
        .env_remove("QUBO_FORGE_THREADS")
        .output()
        .expect("binary runs")
}

pub fn args(parts: &[&str]) -> Vec<String> {
    parts
        .iter()
        .map(|p| match p.strip_prefix('@') {
            Some(name) => fixture(name),
            None => p.to_string(),
        })
        .collect()
}

/// Every subcommand against the shipped fixtures, paired with the schema
/// its output follows. `@name` expands to a fixture path.
pub fn fixture_commands() -> Vec<(&'static str, Vec<String>)> {
    vec![
        ("partition", args(&["partition", "--values", "1,5,5,11"])),
        (
            "partition",
            args(&[
                "partition",
                "--values",
                "1,5,5,11",
                "--solver",
                "sa",
                "--seed",
                "3",
            ]),
        ),
        (
            "partition",
            args(&[
                "partition",
                "--values",
                "1,5,5,11",
                "--solver",
                "qaoa",
                "--p-layers",
                "2",
            ]),
        ),
        (
            "partition",
            args(&[
                "partition",
                "--values",
                "3,1,1",
                "--solver",
                "sa",
                "--seed",
                "0",
            ]),
        ),
        ("maxcut", args(&["maxcut", "--graph", "@triangle.graph"])),
        (
            "maxcut",
            args(&[
                "maxcut",
                "--graph",
                "@six_node.graph",
                "--solver",
                "sa",
                "--seed",
                "1",
            ]),
        ),
        ("maxcut", args(&["maxcut", "--graph", "@edgeless.graph"])),
        (
            "vertex-cover",
            args(&["vertex-cover", "--graph", "@path3.graph"]),
        ),
        (
            "vertex-cover",
            args(&[
                "vertex-cover",
                "--graph",
                "@triangle.graph",
                "--solver",
                "sa",
                "--seed",
                "2",
            ]),
        ),
        (
            "vertex-cover",
            args(&[
                "vertex-cover",
                "--graph",
                "@triangle.graph",
                "--penalty",
                "0.5",
            ]),
        ),
        (
            "genomics",
            args(&[
                "genomics",
                "--mutations",
                "@mutations_3patient.tsv",
                "--alpha",
                "3",
            ]),
        ),
        (
            "genomics",
            args(&[
                "genomics",
                "--mutations",
                "@mutations_toy.tsv",
                "--pathways",
                "2",
                "--alpha-orth",
                "10",
                "--solver",
                "sa",
            ]),
        ),
        (
            "order-partition",
            args(&[
                "order-partition",
                "--stocks",
                "@stocks.csv",
                "--risks",
                "@risks.csv",
            ]),
        ),
        (
            "order-partition",
            args(&[
                "order-partition",
                "--stocks",
                "@stocks.csv",
                "--risks",
                "@risks.csv",
                "--solver",
                "sa",
                "--seed",
                "4",
            ]),
        ),
        ("solve", args(&["solve", "--qubo", "@np_1_5_5_11.json"])),
        (
            "solve",
            args(&["solve", "--qubo", "@constant.json", "--solver", "sa"]),
        ),
        (
            "solve",
            args(&[
                "solve",
                "--qubo",
                "@np_1_5_5_11.json",
                "--solver",
                "qaoa",
                "--expectation",
                "sampled",
            ]),
        ),
    ]
}

pub fn schema_path(name: &str) -> String {
    format!("{}/schema/{name}.schema.json", env!("CARGO_MANIFEST_DIR"))
}
