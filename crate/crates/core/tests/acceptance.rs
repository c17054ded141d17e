//! Acceptance criteria, one line each. Closed-form values are recomputed here
//! rather than taken from the library.

use std::process::{Command, ExitCode};

use nogo_core::channels::cnot;
use nogo_core::nogo::{
    cloning_holevo, deleting_entropy_gap, demon_deletion, entanglement_cloning,
    entanglement_deleting, holevo_monotonicity, linearity_obstruction,
    relative_entropy_monotonicity, sharper_deleting_entropies, spectrum_conservation,
    CloningScenario, CopyTask, DeletingScenario, LinearityFit, DEFAULT_TOLERANCE,
};
use nogo_core::states::plus;
use nogo_core::PureState;

const TOL: f64 = DEFAULT_TOLERANCE;

fn h(p: f64) -> f64 {
    [p, 1.0 - p]
        .iter()
        .filter(|&&x| x > 0.0)
        .map(|&x| -x * x.log2())
        .sum()
}

fn grid(n: usize) -> Vec<f64> {
    (0..n).map(|i| i as f64 / (n - 1) as f64).collect()
}

fn interior(s: f64) -> bool {
    s > 0.0 && s < 1.0
}

/// Sub-check results for one criterion.
struct Checks(Vec<(String, bool)>);

impl Checks {
    fn new() -> Self {
        Checks(Vec::new())
    }

    fn near(&mut self, label: &str, got: f64, want: f64, tol: f64) {
        self.0.push((
            format!("{label} = {got:.9} (want {want} ± {tol:e})"),
            (got - want).abs() <= tol,
        ));
    }

    fn holds(&mut self, label: impl Into<String>, ok: bool) {
        self.0.push((label.into(), ok));
    }

    fn report(self, n: usize, title: &str) -> bool {
        let failed: Vec<&str> = self
            .0
            .iter()
            .filter(|(_, ok)| !ok)
            .map(|(l, _)| l.as_str())
            .collect();
        if failed.is_empty() {
            println!("PASS criterion {n}: {title} ({} checks)", self.0.len());
            true
        } else {
            println!("FAIL criterion {n}: {title}: {}", failed.join("; "));
            false
        }
    }
}

fn criterion_1() -> bool {
    let mut c = Checks::new();
    let r = deleting_entropy_gap(TOL).unwrap();
    c.near(
        "S(symmetric)",
        r.quantity("S_in").unwrap(),
        1.584962500,
        1e-9,
    );
    c.near("S(output)", r.quantity("S_out").unwrap(), 1.0, 1e-9);
    c.near(
        "log2(3) oracle",
        r.quantity("S_in").unwrap(),
        3f64.log2(),
        1e-9,
    );
    c.report(1, "symmetric-subspace entropy")
}

fn criterion_2() -> bool {
    let mut c = Checks::new();
    let s = 1.0 / 2f64.sqrt();
    let r = sharper_deleting_entropies(&DeletingScenario::exact(s).unwrap(), TOL).unwrap();
    c.near("S_in(1/√2)", r.quantity("S_in").unwrap(), 0.811278, 1e-6);
    c.near("S_out(1/√2)", r.quantity("S_out").unwrap(), 0.600876, 1e-6);
    let mut worst = 0.0f64;
    for s in grid(101) {
        let r = sharper_deleting_entropies(&DeletingScenario::exact(s).unwrap(), TOL).unwrap();
        worst = worst
            .max((r.quantity("S_in").unwrap() - h((1.0 + s * s) / 2.0)).abs())
            .max((r.quantity("S_out").unwrap() - h((1.0 + s) / 2.0)).abs());
    }
    c.holds(
        format!("101-point closed-form deviation {worst:.3e} ≤ 1e-6"),
        worst <= 1e-6,
    );
    c.report(2, "deleting entropy decrease")
}

fn criterion_3() -> bool {
    let mut c = Checks::new();
    let r = cloning_holevo(&CloningScenario::new(0.5, 1.0).unwrap(), false, TOL).unwrap();
    c.near(
        "chi_in(0.5, 1)",
        r.quantity("chi_in").unwrap(),
        0.811278,
        1e-6,
    );
    c.near(
        "chi_out(0.5, 1)",
        r.quantity("chi_out").unwrap(),
        0.954434,
        1e-6,
    );
    let mut below = Vec::new();
    let mut not_strict = Vec::new();
    for s in grid(11) {
        for e in grid(11) {
            let r = cloning_holevo(&CloningScenario::new(s, e).unwrap(), false, TOL).unwrap();
            let gain = r.quantity("chi_out").unwrap() - r.quantity("chi_in").unwrap();
            if gain < -1e-9 {
                below.push((s, e));
            }
            if interior(s) && gain <= 1e-9 {
                not_strict.push((s, e));
            }
        }
    }
    c.holds(
        format!("chi_out ≥ chi_in − 1e-9 on 11×11 grid, failures {below:?}"),
        below.is_empty(),
    );
    c.holds(
        format!("strict for interior s, failures {not_strict:?}"),
        not_strict.is_empty(),
    );
    c.report(3, "cloning Holevo increase")
}

fn criterion_4() -> bool {
    let mut c = Checks::new();
    let mut deleting_bad = Vec::new();
    for s in grid(11).into_iter().filter(|&s| interior(s)) {
        let r = entanglement_deleting(&DeletingScenario::exact(s).unwrap(), TOL).unwrap();
        if r.quantity("E_before").unwrap() <= r.quantity("E_after").unwrap() {
            deleting_bad.push(s);
        }
    }
    c.holds(
        format!("E(Ψ) > E(Ψ′) for interior s, failures {deleting_bad:?}"),
        deleting_bad.is_empty(),
    );
    let mut cloning_bad = Vec::new();
    for s in grid(11).into_iter().filter(|&s| interior(s)) {
        for e in grid(11) {
            let r = entanglement_cloning(&CloningScenario::new(s, e).unwrap(), TOL).unwrap();
            if r.quantity("E_after").unwrap() <= r.quantity("E_before").unwrap() {
                cloning_bad.push((s, e));
            }
        }
    }
    c.holds(
        format!("E(Φ′) > E(Φ) for interior (s,e), failures {cloning_bad:?}"),
        cloning_bad.is_empty(),
    );
    let r = entanglement_cloning(&CloningScenario::new(0.5, 1.0).unwrap(), TOL).unwrap();
    let after = r.quantity("E_after").unwrap();
    c.near(
        "E(Φ)(0.5, 1)",
        r.quantity("E_before").unwrap(),
        0.811278,
        1e-6,
    );
    c.near("E(Φ′)(0.5, 1)", after, 0.988699, 1e-6);
    // 0.988699 is h((1+s²e)/2) at e = 1/2, not e = 1.
    c.near(
        "E(Φ′) closed form h((1+s²)/2)",
        after,
        h((1.0 + 0.25) / 2.0),
        1e-6,
    );
    c.report(4, "entanglement arguments")
}

fn criterion_5() -> bool {
    let mut c = Checks::new();
    let r = demon_deletion(100, 2024, TOL).unwrap();
    let dev = r.quantity("max_channel_deviation").unwrap();
    let fid = r.quantity("min_dilation_fidelity").unwrap();
    c.holds(
        format!("max |Λ(ρ) − |0⟩⟨0|| = {dev:.3e} ≤ 1e-10 over 100 ρ"),
        dev <= 1e-10,
    );
    c.near("min dilation fidelity over 100 ψ", fid, 1.0, 1e-9);
    c.report(5, "demon channel")
}

fn criterion_6() -> bool {
    let mut c = Checks::new();
    let spectrum = spectrum_conservation(100, 4, 31, TOL).unwrap();
    let dev = spectrum.quantity("max_deviation").unwrap();
    c.holds(
        format!("spectral deviation {dev:.3e} ≤ 1e-9 over 100 unitaries"),
        dev <= 1e-9,
    );
    let rel = relative_entropy_monotonicity(200, 32, TOL).unwrap();
    c.holds(
        format!(
            "relative-entropy violations {} over 200 channels",
            rel.quantity("violations").unwrap()
        ),
        rel.quantity("violations").unwrap() == 0.0,
    );
    let chi = holevo_monotonicity(200, 33, TOL).unwrap();
    c.holds(
        format!(
            "Holevo increases {} over 200 channels",
            chi.quantity("violations").unwrap()
        ),
        chi.quantity("violations").unwrap() == 0.0,
    );
    c.report(6, "conservation properties")
}

fn criterion_7() -> bool {
    let mut c = Checks::new();
    let clone = linearity_obstruction(CopyTask::Clone, 100, 41, TOL).unwrap();
    c.near(
        "CLONE residual at |+⟩",
        clone.quantity("plus_residual").unwrap(),
        0.765367,
        1e-6,
    );
    c.near(
        "CLONE residual oracle √(2−√2)",
        clone.quantity("plus_residual").unwrap(),
        (2.0 - 2f64.sqrt()).sqrt(),
        1e-9,
    );
    let delete = linearity_obstruction(CopyTask::Delete, 100, 42, TOL).unwrap();
    let worst = delete.quantity("max_heldout_residual").unwrap();
    c.holds(
        format!("DELETE held-out max residual {worst:.6} > 0.2"),
        worst > 0.2,
    );
    let classical = LinearityFit::train(
        CopyTask::Delete,
        &[PureState::basis(2, 0), PureState::basis(2, 1)],
    )
    .unwrap();
    c.holds(
        format!(
            "classical DELETE training residual {:.3e} < 1e-10",
            classical.training_residual
        ),
        classical.training_residual < 1e-10,
    );
    c.report(7, "linearity obstructions")
}

fn criterion_8() -> bool {
    let mut c = Checks::new();
    let gate = cnot();
    let out = gate.matrix().apply(PureState::basis(4, 3).amplitudes());
    c.holds(
        "CNOT|11⟩ = |10⟩ exactly",
        out == PureState::basis(4, 2).amplitudes(),
    );
    let psi = plus();
    let moved = psi.tensor(&psi).evolve(&gate).unwrap();
    let fidelity = moved
        .overlap(&psi.tensor(&PureState::basis(2, 0)))
        .unwrap()
        .norm_sqr();
    c.near("deletion fidelity at |+⟩", fidelity, 0.5, 1e-9);
    c.report(8, "CNOT behavior")
}

fn criterion_9() -> bool {
    let mut c = Checks::new();
    let run = |seed: &str| {
        Command::new(env!("CARGO_BIN_EXE_nogo"))
            .args(["all", "--seed", seed, "--trials", "50"])
            .output()
            .expect("run nogo")
    };
    let a = run("42");
    let b = run("42");
    c.holds(
        "identical seeds give byte-identical CSV",
        a.stdout == b.stdout && !a.stdout.is_empty(),
    );
    c.holds(
        format!("`all` exit status {:?}", a.status.code()),
        a.status.code() == Some(0),
    );
    c.report(9, "CLI determinism")
}

fn main() -> ExitCode {
    let results = [
        criterion_1(),
        criterion_2(),
        criterion_3(),
        criterion_4(),
        criterion_5(),
        criterion_6(),
        criterion_7(),
        criterion_8(),
        criterion_9(),
    ];
    let passed = results.iter().filter(|&&ok| ok).count();
    println!("acceptance: {passed}/{} criteria passed", results.len());
    if passed == results.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
