//! Deleting and cloning machines confronted with entropy, relative-entropy and
//! entanglement bookkeeping, plus the conservation checks they are measured
//! against.
//!
//! Every scenario builds its states as explicit vectors and runs them through
//! the generic partial-trace and entropy code. Closed-form binary-entropy
//! expressions live only in the tests, where they serve as oracles.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

use crate::channels::{apply_channel, demon_channel, random_channel_any_env, stinespring};
use crate::error::{Error, Result};
use crate::linalg::{fit_linear_operator, ComplexMatrix};
use crate::measures::{
    entanglement_entropy, holevo_quantity, relative_entropy, von_neumann_entropy, Ensemble,
};
use crate::states::{
    self, maximally_mixed_on, qubit, random_density_matrix, random_pure_state, random_unitary,
    sub_seed, symmetric_projector_two_qubits, DensityMatrix, PureState,
};

pub const DEFAULT_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Violates,
    Consistent,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Violates => "VIOLATES",
            Verdict::Consistent => "CONSISTENT",
        }
    }

    fn from_flag(violates: bool) -> Self {
        if violates {
            Verdict::Violates
        } else {
            Verdict::Consistent
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Outcome of one experiment.
///
/// `expected` is what the governing principle predicts for the given
/// parameters, worked out from overlaps alone; `verdict` is what the numerics
/// found.
#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentReport {
    pub name: String,
    pub params: Vec<(String, f64)>,
    pub quantities: Vec<(String, f64)>,
    pub verdict: Verdict,
    pub expected: Verdict,
    pub tolerance: f64,
}

impl ExperimentReport {
    pub fn quantity(&self, name: &str) -> Option<f64> {
        self.quantities
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, v)| *v)
    }

    pub fn param(&self, name: &str) -> Option<f64> {
        self.params.iter().find(|(n, _)| n == name).map(|(_, v)| *v)
    }

    pub fn as_expected(&self) -> bool {
        self.verdict == self.expected
    }
}

fn named(pairs: &[(&str, f64)]) -> Vec<(String, f64)> {
    pairs.iter().map(|(n, v)| (n.to_string(), *v)).collect()
}

fn check_unit(name: &str, x: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::InvalidScenario(format!(
            "{name} = {x} is outside [0, 1]"
        )));
    }
    Ok(())
}

/// Pair `qubit(0, 0)`, `qubit(acos(overlap), 0)` with real inner product `overlap`.
pub fn state_pair(overlap: f64) -> (PureState, PureState) {
    (qubit(0.0, 0.0), qubit(overlap.clamp(-1.0, 1.0).acos(), 0.0))
}

/// Deleting machine `|ψᵢ⟩|ψᵢ⟩ → |ψᵢ⟩|a_ψᵢ⟩`.
///
/// `s = ⟨ψ₁|ψ₂⟩`, `t = |⟨a_ψ₁|a_ψ₂⟩|`. `t = 1` is exact deletion to `|0⟩`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DeletingScenario {
    s: f64,
    t: f64,
}

impl DeletingScenario {
    pub fn new(s: f64, t: f64) -> Result<Self> {
        check_unit("s", s)?;
        check_unit("t", t)?;
        if t < s {
            return Err(Error::InvalidScenario(format!(
                "ancilla overlap t = {t} must be at least the input overlap s = {s}"
            )));
        }
        Ok(Self { s, t })
    }

    pub fn exact(s: f64) -> Result<Self> {
        Self::new(s, 1.0)
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn inputs(&self) -> (PureState, PureState) {
        state_pair(self.s)
    }

    /// Post-deletion ancillas; both are `|0⟩` when `t = 1`.
    pub fn ancillas(&self) -> (PureState, PureState) {
        state_pair(self.t)
    }

    /// Entropy drops iff the output pair is strictly closer than the input
    /// pair: `s² < s·t`.
    pub fn expected(&self) -> Verdict {
        Verdict::from_flag(self.s > 0.0 && self.t > self.s)
    }
}

/// Cloning machine `|ψᵢ⟩|0⟩|0⟩_E → |ψᵢ⟩|ψᵢ⟩|e_ψᵢ⟩_E`.
///
/// `s = ⟨ψ₁|ψ₂⟩`, `e = |⟨e_ψ₁|e_ψ₂⟩|`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CloningScenario {
    s: f64,
    e: f64,
}

impl CloningScenario {
    pub fn new(s: f64, e: f64) -> Result<Self> {
        check_unit("s", s)?;
        check_unit("e", e)?;
        Ok(Self { s, e })
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    pub fn e(&self) -> f64 {
        self.e
    }

    pub fn inputs(&self) -> (PureState, PureState) {
        state_pair(self.s)
    }

    pub fn records(&self) -> (PureState, PureState) {
        state_pair(self.e)
    }

    /// Distinguishability grows iff the output overlap (`s²e`, or `s·e` for
    /// the weak machine) is strictly below `s`.
    pub fn expected(&self, weak: bool) -> Verdict {
        let out = if weak {
            self.s * self.e
        } else {
            self.s * self.s * self.e
        };
        Verdict::from_flag(out < self.s)
    }
}

fn zero() -> PureState {
    PureState::basis(2, 0)
}

fn one() -> PureState {
    PureState::basis(2, 1)
}

fn pure_average(states: &[PureState]) -> Result<DensityMatrix> {
    Ensemble::uniform_pure(states)?.average()
}

/// Maximally mixed state on the symmetric subspace (span of all `|ψψ⟩`)
/// against the maximally mixed state on the span of all `|ψ0⟩`.
pub fn deleting_entropy_gap(tolerance: f64) -> Result<ExperimentReport> {
    let input = maximally_mixed_on(&symmetric_projector_two_qubits())?;
    let outputs: Vec<PureState> = [zero(), one(), states::plus()]
        .iter()
        .map(|psi| psi.tensor(&zero()))
        .collect();
    let output = maximally_mixed_on(&states::span_projector(&outputs)?)?;
    let s_in = von_neumann_entropy(&input)?;
    let s_out = von_neumann_entropy(&output)?;
    Ok(ExperimentReport {
        name: "delete-gap".into(),
        params: vec![],
        quantities: named(&[("S_in", s_in), ("S_out", s_out), ("gap", s_in - s_out)]),
        verdict: Verdict::from_flag(s_in - s_out > tolerance),
        expected: Verdict::Violates,
        tolerance,
    })
}

/// Entropy of the averaged input pair `|ψᵢψᵢ⟩` against the averaged output
/// pair `|ψᵢ a_ψᵢ⟩`. A deleting machine lowers closed-system entropy.
pub fn sharper_deleting_entropies(
    scenario: &DeletingScenario,
    tolerance: f64,
) -> Result<ExperimentReport> {
    let (p1, p2) = scenario.inputs();
    let (a1, a2) = scenario.ancillas();
    let s_in = von_neumann_entropy(&pure_average(&[p1.tensor(&p1), p2.tensor(&p2)])?)?;
    let s_out = von_neumann_entropy(&pure_average(&[p1.tensor(&a1), p2.tensor(&a2)])?)?;
    Ok(ExperimentReport {
        name: "delete-sweep".into(),
        params: named(&[("s", scenario.s), ("t", scenario.t)]),
        quantities: named(&[("S_in", s_in), ("S_out", s_out)]),
        verdict: Verdict::from_flag(s_in > s_out + tolerance),
        expected: scenario.expected(),
        tolerance,
    })
}

/// Holevo quantity of the input ensemble against that of the output
/// ensemble. `weak` drops the second copy: `|ψᵢ⟩|0⟩_E → |ψᵢ⟩|e_ψᵢ⟩_E`.
pub fn cloning_holevo(
    scenario: &CloningScenario,
    weak: bool,
    tolerance: f64,
) -> Result<ExperimentReport> {
    let (p1, p2) = scenario.inputs();
    let (e1, e2) = scenario.records();
    let (inputs, outputs) = if weak {
        (
            [p1.tensor(&zero()), p2.tensor(&zero())],
            [p1.tensor(&e1), p2.tensor(&e2)],
        )
    } else {
        (
            [
                PureState::tensor_all(&[&p1, &zero(), &zero()]),
                PureState::tensor_all(&[&p2, &zero(), &zero()]),
            ],
            [
                PureState::tensor_all(&[&p1, &p1, &e1]),
                PureState::tensor_all(&[&p2, &p2, &e2]),
            ],
        )
    };
    let chi_in = holevo_quantity(&Ensemble::uniform_pure(&inputs)?)?;
    let chi_out = holevo_quantity(&Ensemble::uniform_pure(&outputs)?)?;
    Ok(ExperimentReport {
        name: if weak {
            "clone-holevo-weak"
        } else {
            "clone-holevo"
        }
        .into(),
        params: named(&[("s", scenario.s), ("e", scenario.e)]),
        quantities: named(&[("chi_in", chi_in), ("chi_out", chi_out)]),
        verdict: Verdict::from_flag(chi_out > chi_in + tolerance),
        expected: scenario.expected(weak),
        tolerance,
    })
}

/// `|Ψ⟩ = (|0⟩|ψ₁ψ₁⟩ + |1⟩|ψ₂ψ₂⟩)/√2` shared between Alice (first qubit) and
/// Bob, who deletes locally to `|Ψ′⟩ = (|0⟩|ψ₁0⟩ + |1⟩|ψ₂0⟩)/√2`.
pub fn entanglement_deleting(
    scenario: &DeletingScenario,
    tolerance: f64,
) -> Result<ExperimentReport> {
    if scenario.t != 1.0 {
        return Err(Error::InvalidScenario(
            "entanglement deleting needs exact deletion (t = 1)".into(),
        ));
    }
    let (p1, p2) = scenario.inputs();
    let before = PureState::superpose(&[
        &PureState::tensor_all(&[&zero(), &p1, &p1]),
        &PureState::tensor_all(&[&one(), &p2, &p2]),
    ])?;
    let after = PureState::superpose(&[
        &PureState::tensor_all(&[&zero(), &p1, &zero()]),
        &PureState::tensor_all(&[&one(), &p2, &zero()]),
    ])?;
    let e_before = entanglement_entropy(&before, &[0])?;
    let e_after = entanglement_entropy(&after, &[0])?;
    Ok(ExperimentReport {
        name: "entangle-delete".into(),
        params: named(&[("s", scenario.s), ("t", scenario.t)]),
        quantities: named(&[("E_before", e_before), ("E_after", e_after)]),
        verdict: Verdict::from_flag(e_before > e_after + tolerance),
        expected: scenario.expected(),
        tolerance,
    })
}

/// `|Φ⟩ = (|0⟩|ψ₁00⟩ + |1⟩|ψ₂00⟩)/√2` with Alice on the first qubit; Bob
/// clones locally to `|Φ′⟩ = (|0⟩|ψ₁ψ₁e_ψ₁⟩ + |1⟩|ψ₂ψ₂e_ψ₂⟩)/√2`.
pub fn entanglement_cloning(
    scenario: &CloningScenario,
    tolerance: f64,
) -> Result<ExperimentReport> {
    let (p1, p2) = scenario.inputs();
    let (e1, e2) = scenario.records();
    let before = PureState::superpose(&[
        &PureState::tensor_all(&[&zero(), &p1, &zero(), &zero()]),
        &PureState::tensor_all(&[&one(), &p2, &zero(), &zero()]),
    ])?;
    let after = PureState::superpose(&[
        &PureState::tensor_all(&[&zero(), &p1, &p1, &e1]),
        &PureState::tensor_all(&[&one(), &p2, &p2, &e2]),
    ])?;
    let e_before = entanglement_entropy(&before, &[0])?;
    let e_after = entanglement_entropy(&after, &[0])?;
    Ok(ExperimentReport {
        name: "entangle-clone".into(),
        params: named(&[("s", scenario.s), ("e", scenario.e)]),
        quantities: named(&[("E_before", e_before), ("E_after", e_after)]),
        verdict: Verdict::from_flag(e_after > e_before + tolerance),
        expected: scenario.expected(false),
        tolerance,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CopyTask {
    /// `|ψψ⟩ → |ψ0⟩`
    Delete,
    /// `|ψ0⟩ → |ψψ⟩`
    Clone,
}

impl CopyTask {
    pub fn source(self, psi: &PureState) -> PureState {
        match self {
            CopyTask::Delete => psi.tensor(psi),
            CopyTask::Clone => psi.tensor(&zero()),
        }
    }

    pub fn target(self, psi: &PureState) -> PureState {
        match self {
            CopyTask::Delete => psi.tensor(&zero()),
            CopyTask::Clone => psi.tensor(psi),
        }
    }

    /// Training states used by [`linearity_obstruction`].
    pub fn default_training(self) -> Vec<PureState> {
        match self {
            CopyTask::Delete => vec![zero(), one(), states::plus()],
            CopyTask::Clone => vec![zero(), one()],
        }
    }

    fn name(self) -> &'static str {
        match self {
            CopyTask::Delete => "delete",
            CopyTask::Clone => "clone",
        }
    }
}

/// Best linear map for a copy task, fitted on a training set.
#[derive(Clone, Debug)]
pub struct LinearityFit {
    pub task: CopyTask,
    pub operator: ComplexMatrix,
    pub training_residual: f64,
}

impl LinearityFit {
    pub fn train(task: CopyTask, training: &[PureState]) -> Result<Self> {
        let sources: Vec<PureState> = training.iter().map(|p| task.source(p)).collect();
        let targets: Vec<PureState> = training.iter().map(|p| task.target(p)).collect();
        let operator = fit_linear_operator(&sources, &targets)?;
        let mut fit = Self {
            task,
            operator,
            training_residual: 0.0,
        };
        fit.training_residual = training.iter().map(|p| fit.residual(p)).fold(0.0, f64::max);
        Ok(fit)
    }

    /// `‖L·source(ψ) − target(ψ)‖`.
    pub fn residual(&self, psi: &PureState) -> f64 {
        let got = self.operator.apply(self.task.source(psi).amplitudes());
        let want = self.task.target(psi);
        got.iter()
            .zip(want.amplitudes())
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }
}

/// Fits the copy task on its standard training set and evaluates it on
/// `heldout_count` random qubits. A nonzero residual means no linear map
/// performs the task.
pub fn linearity_obstruction(
    task: CopyTask,
    heldout_count: usize,
    seed: u64,
    tolerance: f64,
) -> Result<ExperimentReport> {
    if heldout_count == 0 {
        return Err(Error::InvalidScenario(
            "need at least one held-out state".into(),
        ));
    }
    let fit = LinearityFit::train(task, &task.default_training())?;
    let max_heldout = (0..heldout_count as u64)
        .map(|k| fit.residual(&random_pure_state(2, sub_seed(seed, k))))
        .fold(0.0, f64::max);
    Ok(ExperimentReport {
        name: format!("linearity-{}", task.name()),
        params: vec![],
        quantities: named(&[
            ("training_residual", fit.training_residual),
            ("max_heldout_residual", max_heldout),
            ("plus_residual", fit.residual(&states::plus())),
        ]),
        verdict: Verdict::from_flag(max_heldout > tolerance),
        expected: Verdict::Violates,
        tolerance,
    })
}

/// `L∞` distance between the sorted spectra of two states of equal dimension.
pub fn spectral_deviation(a: &DensityMatrix, b: &DensityMatrix) -> Result<f64> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch(
            "spectra of different lengths".into(),
        ));
    }
    let (sa, sb) = (a.spectrum()?, b.spectrum()?);
    Ok(sa
        .iter()
        .zip(&sb)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max))
}

/// Largest spectral change of random states under random unitaries.
pub fn spectrum_conservation(
    trials: usize,
    dim: usize,
    seed: u64,
    tolerance: f64,
) -> Result<ExperimentReport> {
    if trials == 0 || dim == 0 {
        return Err(Error::InvalidScenario(
            "trials and dim must be positive".into(),
        ));
    }
    let mut worst = 0.0f64;
    for k in 0..trials as u64 {
        let rho = random_density_matrix(dim, sub_seed(seed, 2 * k));
        let u = random_unitary(dim, sub_seed(seed, 2 * k + 1));
        worst = worst.max(spectral_deviation(&rho, &rho.evolve(&u)?)?);
    }
    Ok(ExperimentReport {
        name: "spectrum-conservation".into(),
        params: named(&[("trials", trials as f64), ("dim", dim as f64)]),
        quantities: named(&[("max_deviation", worst)]),
        verdict: Verdict::from_flag(worst > tolerance),
        expected: Verdict::Consistent,
        tolerance,
    })
}

/// Checks `S(Λρ|Λσ) ≤ S(ρ|σ)` for random full-rank two-qubit states and random
/// channels.
pub fn relative_entropy_monotonicity(
    trials: usize,
    seed: u64,
    tolerance: f64,
) -> Result<ExperimentReport> {
    if trials == 0 {
        return Err(Error::InvalidScenario("trials must be positive".into()));
    }
    let mut violations = 0usize;
    let mut max_gap = f64::NEG_INFINITY;
    for k in 0..trials as u64 {
        let rho = random_density_matrix(4, sub_seed(seed, 3 * k)).with_dims(vec![2, 2])?;
        let sigma = random_density_matrix(4, sub_seed(seed, 3 * k + 1)).with_dims(vec![2, 2])?;
        let channel = random_channel_any_env(4, 4, 4, sub_seed(seed, 3 * k + 2))?;
        let before = relative_entropy(&rho, &sigma)?.bits();
        let after = relative_entropy(
            &apply_channel(&channel, &rho.with_dims(vec![4])?)?,
            &apply_channel(&channel, &sigma.with_dims(vec![4])?)?,
        )?
        .bits();
        let gap = after - before;
        max_gap = max_gap.max(gap);
        if gap.is_nan() || gap > tolerance {
            violations += 1;
        }
    }
    Ok(ExperimentReport {
        name: "relative-entropy-monotonicity".into(),
        params: named(&[("trials", trials as f64)]),
        quantities: named(&[("violations", violations as f64), ("max_gap", max_gap)]),
        verdict: Verdict::from_flag(violations > 0),
        expected: Verdict::Consistent,
        tolerance,
    })
}

/// Checks that random channels never raise the Holevo quantity of a random
/// two-member pure-state ensemble.
pub fn holevo_monotonicity(trials: usize, seed: u64, tolerance: f64) -> Result<ExperimentReport> {
    if trials == 0 {
        return Err(Error::InvalidScenario("trials must be positive".into()));
    }
    let mut violations = 0usize;
    let mut max_gap = f64::NEG_INFINITY;
    for k in 0..trials as u64 {
        let mut rng = ChaCha20Rng::seed_from_u64(sub_seed(seed, 4 * k));
        let p: f64 = rng.random_range(0.05..0.95);
        let a = random_pure_state(4, sub_seed(seed, 4 * k + 1));
        let b = random_pure_state(4, sub_seed(seed, 4 * k + 2));
        let channel = random_channel_any_env(4, 4, 4, sub_seed(seed, 4 * k + 3))?;
        let ensemble = Ensemble::new(vec![(p, a.to_density()), (1.0 - p, b.to_density())])?;
        let mapped = ensemble.map(|r| apply_channel(&channel, r))?;
        let gap = holevo_quantity(&mapped)? - holevo_quantity(&ensemble)?;
        max_gap = max_gap.max(gap);
        if gap.is_nan() || gap > tolerance {
            violations += 1;
        }
    }
    Ok(ExperimentReport {
        name: "holevo-monotonicity".into(),
        params: named(&[("trials", trials as f64)]),
        quantities: named(&[("violations", violations as f64), ("max_gap", max_gap)]),
        verdict: Verdict::from_flag(violations > 0),
        expected: Verdict::Consistent,
        tolerance,
    })
}

/// Attempted deletion `|0⟩|A⟩ → |0⟩|A₀⟩`, `|1⟩|A⟩ → |0⟩|A₁⟩`. A unitary must
/// preserve the inner product of the two inputs (zero), so any overlap of the
/// ancilla outputs is a defect.
pub fn ancilla_orthogonality(
    a0: &PureState,
    a1: &PureState,
    tolerance: f64,
) -> Result<ExperimentReport> {
    if a0.dim() != a1.dim() {
        return Err(Error::DimensionMismatch(
            "ancilla states differ in dimension".into(),
        ));
    }
    let blank = PureState::basis(a0.dim(), 0);
    let in0 = zero().tensor(&blank);
    let in1 = one().tensor(&blank);
    let out0 = zero().tensor(a0);
    let out1 = zero().tensor(a1);
    let defect = (out0.overlap(&out1)? - in0.overlap(&in1)?).norm();
    Ok(ExperimentReport {
        name: "ancilla-orthogonality".into(),
        params: vec![],
        quantities: named(&[("gram_defect", defect)]),
        verdict: Verdict::from_flag(defect > tolerance),
        expected: Verdict::from_flag(a0.overlap(a1)?.norm() > tolerance),
        tolerance,
    })
}

/// Open-system deletion by the measure-and-flip channel: output is always
/// `|0⟩⟨0|`, and the dilation sends `|ψ⟩|0⟩_E` to `|0⟩|ψ⟩_E`.
pub fn demon_deletion(trials: usize, seed: u64, tolerance: f64) -> Result<ExperimentReport> {
    if trials == 0 {
        return Err(Error::InvalidScenario("trials must be positive".into()));
    }
    let channel = demon_channel();
    let dilation = stinespring(&channel)?;
    let target = zero().to_density();
    let mut max_dev = 0.0f64;
    let mut min_fidelity = f64::INFINITY;
    for k in 0..trials as u64 {
        let rho = random_density_matrix(2, sub_seed(seed, 2 * k));
        max_dev = max_dev.max(apply_channel(&channel, &rho)?.max_abs_diff(&target));
        let psi = random_pure_state(2, sub_seed(seed, 2 * k + 1));
        let out = dilation.unitary_apply(&psi)?;
        let fidelity = out.overlap(&zero().tensor(&psi))?.norm_sqr();
        min_fidelity = min_fidelity.min(fidelity);
    }
    Ok(ExperimentReport {
        name: "demon-deletion".into(),
        params: named(&[("trials", trials as f64)]),
        quantities: named(&[
            ("max_channel_deviation", max_dev),
            ("min_dilation_fidelity", min_fidelity),
        ]),
        verdict: Verdict::from_flag(max_dev > tolerance || (1.0 - min_fidelity).abs() > tolerance),
        expected: Verdict::Consistent,
        tolerance,
    })
}

/// The measure-and-flip channel changes the spectrum of `I/2` from `{½, ½}` to
/// `{1, 0}`: it is not a closed-system evolution.
pub fn demon_spectrum_change(tolerance: f64) -> Result<ExperimentReport> {
    let mixed = DensityMatrix::maximally_mixed(2);
    let plus = states::plus().to_density();
    let channel = demon_channel();
    let on_mixed = spectral_deviation(&mixed, &apply_channel(&channel, &mixed)?)?;
    let on_plus = spectral_deviation(&plus, &apply_channel(&channel, &plus)?)?;
    Ok(ExperimentReport {
        name: "demon-spectrum".into(),
        params: vec![],
        quantities: named(&[("deviation_mixed", on_mixed), ("deviation_plus", on_plus)]),
        verdict: Verdict::from_flag(on_mixed.max(on_plus) > tolerance),
        expected: Verdict::Violates,
        tolerance,
    })
}

/// `|⟨ψ,0| CNOT |ψ,ψ⟩|²`: how well CNOT deletes one copy of `ψ`.
pub fn cnot_deletion_fidelity(psi: &PureState) -> Result<f64> {
    let out = psi.tensor(psi).evolve(&crate::channels::cnot())?;
    Ok(out.overlap(&psi.tensor(&zero()))?.norm_sqr())
}

/// `s` values `0, 1/(n−1), …, 1`.
pub fn overlap_grid(steps: usize) -> Vec<f64> {
    assert!(steps >= 2, "a grid needs both endpoints");
    (0..steps).map(|i| i as f64 / (steps - 1) as f64).collect()
}
