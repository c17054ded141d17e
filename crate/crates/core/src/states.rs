//! Pure states, density matrices, gates and seeded sampling.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, hermitian_eig, ComplexMatrix, MatrixJson, ONE, ZERO};

/// Tolerance for normalization, Hermiticity, unit trace and positivity.
pub const STATE_TOLERANCE: f64 = 1e-9;

fn check_dims(dims: &[usize], len: usize) -> Result<()> {
    if dims.is_empty() || dims.contains(&0) {
        return Err(Error::InvalidState(format!(
            "subsystem dims must be positive, got {dims:?}"
        )));
    }
    let product: usize = dims.iter().product();
    if product != len {
        return Err(Error::DimensionMismatch(format!(
            "dims {dims:?} multiply to {product}, state has dimension {len}"
        )));
    }
    Ok(())
}

/// Normalized state vector with a tensor factorization.
#[derive(Clone, Debug, PartialEq)]
pub struct PureState {
    amplitudes: Vec<Complex64>,
    dims: Vec<usize>,
}

impl PureState {
    /// Fails unless the amplitudes are normalized within [`STATE_TOLERANCE`].
    pub fn new(amplitudes: Vec<Complex64>, dims: Vec<usize>) -> Result<Self> {
        check_dims(&dims, amplitudes.len())?;
        if amplitudes
            .iter()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::InvalidState("non-finite amplitude".into()));
        }
        let n = linalg::norm(&amplitudes);
        if (n - 1.0).abs() > STATE_TOLERANCE {
            return Err(Error::InvalidState(format!("norm is {n}, expected 1")));
        }
        Ok(Self { amplitudes, dims })
    }

    /// Rescales to unit norm before validating.
    pub fn normalized(amplitudes: Vec<Complex64>, dims: Vec<usize>) -> Result<Self> {
        let n = linalg::norm(&amplitudes);
        if !(n.is_finite() && n > 0.0) {
            return Err(Error::InvalidState("cannot normalize a zero vector".into()));
        }
        Self::new(amplitudes.into_iter().map(|z| z / n).collect(), dims)
    }

    /// Single-system basis state |k⟩ in dimension `dim`.
    pub fn basis(dim: usize, k: usize) -> Self {
        assert!(k < dim, "basis index {k} out of range for dimension {dim}");
        let mut amplitudes = vec![ZERO; dim];
        amplitudes[k] = ONE;
        Self {
            amplitudes,
            dims: vec![dim],
        }
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    /// |self⟩ ⊗ |other⟩, concatenating the subsystem lists.
    pub fn tensor(&self, other: &PureState) -> PureState {
        let mut dims = self.dims.clone();
        dims.extend_from_slice(&other.dims);
        PureState {
            amplitudes: linalg::kron_vec(&self.amplitudes, &other.amplitudes),
            dims,
        }
    }

    /// Tensor product of a nonempty list of states.
    pub fn tensor_all(parts: &[&PureState]) -> PureState {
        let (first, rest) = parts
            .split_first()
            .expect("tensor_all needs at least one state");
        rest.iter().fold((*first).clone(), |acc, p| acc.tensor(p))
    }

    /// Equal-weight superposition `(Σ |vₖ⟩)/‖Σ |vₖ⟩‖` of states with identical dims.
    pub fn superpose(parts: &[&PureState]) -> Result<PureState> {
        let first = parts
            .first()
            .ok_or_else(|| Error::InvalidState("empty superposition".into()))?;
        let mut sum = vec![ZERO; first.dim()];
        for p in parts {
            if p.dims != first.dims {
                return Err(Error::DimensionMismatch(
                    "superposed states have different dims".into(),
                ));
            }
            for (s, a) in sum.iter_mut().zip(&p.amplitudes) {
                *s += a;
            }
        }
        PureState::normalized(sum, first.dims.clone())
    }

    /// ⟨self|other⟩.
    pub fn overlap(&self, other: &PureState) -> Result<Complex64> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch(format!(
                "overlap of {}-dim and {}-dim states",
                self.dim(),
                other.dim()
            )));
        }
        Ok(linalg::inner(&self.amplitudes, &other.amplitudes))
    }

    pub fn projector(&self) -> ComplexMatrix {
        ComplexMatrix::outer(&self.amplitudes, &self.amplitudes)
    }

    pub fn to_density(&self) -> DensityMatrix {
        DensityMatrix {
            matrix: self.projector(),
            dims: self.dims.clone(),
        }
    }

    /// Applies a gate; the result keeps this state's subsystem list.
    pub fn evolve(&self, gate: &Gate) -> Result<PureState> {
        if gate.dim() != self.dim() {
            return Err(Error::DimensionMismatch(format!(
                "{}-dim gate on {}-dim state",
                gate.dim(),
                self.dim()
            )));
        }
        PureState::new(gate.matrix().apply(&self.amplitudes), self.dims.clone())
    }

    /// `‖self − other‖₂`.
    pub fn distance(&self, other: &PureState) -> Result<f64> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch(
                "distance between states of different dimension".into(),
            ));
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt())
    }
}

impl AsRef<[Complex64]> for PureState {
    fn as_ref(&self) -> &[Complex64] {
        &self.amplitudes
    }
}

/// JSON form of a state: a column-vector matrix plus `dims`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct StateJson {
    #[serde(flatten)]
    pub matrix: MatrixJson,
    pub dims: Vec<usize>,
}

impl Serialize for PureState {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let column =
            ComplexMatrix::column_vector(&self.amplitudes).map_err(serde::ser::Error::custom)?;
        StateJson {
            matrix: MatrixJson::from(&column),
            dims: self.dims.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for PureState {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = StateJson::deserialize(d)?;
        let m = ComplexMatrix::try_from(j.matrix).map_err(serde::de::Error::custom)?;
        if m.cols() != 1 {
            return Err(serde::de::Error::custom("a state must be a column vector"));
        }
        PureState::new(m.entries().to_vec(), j.dims).map_err(serde::de::Error::custom)
    }
}

/// Hermitian, positive semidefinite, unit-trace operator.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
    dims: Vec<usize>,
}

impl DensityMatrix {
    pub fn new(matrix: ComplexMatrix, dims: Vec<usize>) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::InvalidState("density matrix must be square".into()));
        }
        check_dims(&dims, matrix.rows())?;
        let herm = matrix.hermitian_deviation();
        if herm > STATE_TOLERANCE {
            return Err(Error::InvalidState(format!(
                "not Hermitian (deviation {herm:e})"
            )));
        }
        let tr = matrix.trace();
        if (tr - ONE).norm() > STATE_TOLERANCE {
            return Err(Error::InvalidState(format!("trace is {tr}, expected 1")));
        }
        let min = hermitian_eig(&matrix)?
            .eigenvalues
            .last()
            .copied()
            .unwrap_or(0.0);
        if min < -STATE_TOLERANCE {
            return Err(Error::InvalidState(format!("negative eigenvalue {min:e}")));
        }
        Ok(Self { matrix, dims })
    }

    /// `I/d` on a single system of dimension `dim`.
    pub fn maximally_mixed(dim: usize) -> Self {
        Self {
            matrix: ComplexMatrix::identity(dim).scale(Complex64::new(1.0 / dim as f64, 0.0)),
            dims: vec![dim],
        }
    }

    /// `Σ pₖ ρₖ`; weights must be nonnegative and sum to one.
    pub fn mixture(members: &[(f64, &DensityMatrix)]) -> Result<Self> {
        let (_, first) = members
            .first()
            .ok_or_else(|| Error::InvalidState("empty mixture".into()))?;
        let mut acc = ComplexMatrix::zeros(first.dim(), first.dim());
        for (p, rho) in members {
            if rho.dims != first.dims {
                return Err(Error::DimensionMismatch(
                    "mixture members have different dims".into(),
                ));
            }
            if *p < 0.0 {
                return Err(Error::InvalidState(format!("negative weight {p}")));
            }
            acc = &acc + &rho.matrix.scale(Complex64::new(*p, 0.0));
        }
        Self::new(acc, first.dims.clone())
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    /// Same operator, different tensor factorization.
    pub fn with_dims(&self, dims: Vec<usize>) -> Result<Self> {
        check_dims(&dims, self.dim())?;
        Ok(Self {
            matrix: self.matrix.clone(),
            dims,
        })
    }

    pub fn tensor(&self, other: &DensityMatrix) -> DensityMatrix {
        let mut dims = self.dims.clone();
        dims.extend_from_slice(&other.dims);
        DensityMatrix {
            matrix: self.matrix.kron(&other.matrix),
            dims,
        }
    }

    /// Reduced state on the subsystems in `keep`.
    pub fn partial_trace(&self, keep: &[usize]) -> Result<DensityMatrix> {
        let (matrix, dims) = linalg::partial_trace(&self.matrix, &self.dims, keep)?;
        DensityMatrix::new(matrix, dims)
    }

    /// `U ρ U†`.
    pub fn evolve(&self, gate: &Gate) -> Result<DensityMatrix> {
        if gate.dim() != self.dim() {
            return Err(Error::DimensionMismatch(format!(
                "{}-dim gate on {}-dim state",
                gate.dim(),
                self.dim()
            )));
        }
        DensityMatrix::new(gate.matrix().conjugate(&self.matrix), self.dims.clone())
    }

    /// Eigenvalues, descending.
    pub fn spectrum(&self) -> Result<Vec<f64>> {
        Ok(hermitian_eig(&self.matrix)?.eigenvalues)
    }

    pub fn max_abs_diff(&self, other: &DensityMatrix) -> f64 {
        self.matrix.max_abs_diff(&other.matrix)
    }
}

/// Square matrix with `U†U = I` within [`STATE_TOLERANCE`].
#[derive(Clone, Debug, PartialEq)]
pub struct Gate(ComplexMatrix);

impl Gate {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::InvalidMatrix("a gate must be square".into()));
        }
        let dev = matrix.unitarity_deviation();
        if dev > STATE_TOLERANCE {
            return Err(Error::InvalidMatrix(format!(
                "not unitary (deviation {dev:e})"
            )));
        }
        Ok(Self(matrix))
    }

    pub fn identity(dim: usize) -> Self {
        Self(ComplexMatrix::identity(dim))
    }

    pub fn sigma_x() -> Self {
        Self(ComplexMatrix::from_real(2, 2, &[0.0, 1.0, 1.0, 0.0]).expect("static shape"))
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.0
    }

    pub fn dim(&self) -> usize {
        self.0.rows()
    }

    pub fn kron(&self, other: &Gate) -> Gate {
        Gate(self.0.kron(&other.0))
    }
}

/// `cos θ |0⟩ + e^{iφ} sin θ |1⟩`.
pub fn qubit(theta: f64, phi: f64) -> PureState {
    PureState {
        amplitudes: vec![
            Complex64::new(theta.cos(), 0.0),
            Complex64::from_polar(theta.sin(), phi),
        ],
        dims: vec![2],
    }
}

/// |+⟩ = (|0⟩ + |1⟩)/√2.
pub fn plus() -> PureState {
    qubit(std::f64::consts::FRAC_PI_4, 0.0)
}

/// Projector onto span{|00⟩, (|01⟩+|10⟩)/√2, |11⟩}.
pub fn symmetric_projector_two_qubits() -> ComplexMatrix {
    // (I + SWAP)/2
    ComplexMatrix::from_real(
        4,
        4,
        &[
            1.0, 0.0, 0.0, 0.0, //
            0.0, 0.5, 0.5, 0.0, //
            0.0, 0.5, 0.5, 0.0, //
            0.0, 0.0, 0.0, 1.0,
        ],
    )
    .expect("static shape")
}

/// Normalized projector `P / rank(P)`, on a single system of dimension `dim(P)`.
pub fn maximally_mixed_on(projector: &ComplexMatrix) -> Result<DensityMatrix> {
    if !projector.is_square() {
        return Err(Error::NotAProjector("not square".into()));
    }
    let herm = projector.hermitian_deviation();
    if herm > STATE_TOLERANCE {
        return Err(Error::NotAProjector(format!(
            "not Hermitian (deviation {herm:e})"
        )));
    }
    let idem = projector.matmul(projector).max_abs_diff(projector);
    if idem > STATE_TOLERANCE {
        return Err(Error::NotAProjector(format!(
            "not idempotent (deviation {idem:e})"
        )));
    }
    let rank = projector.trace().re.round();
    if rank < 1.0 {
        return Err(Error::NotAProjector("rank zero".into()));
    }
    DensityMatrix::new(
        projector.scale(Complex64::new(1.0 / rank, 0.0)),
        vec![projector.rows()],
    )
}

/// Orthogonal projector onto the span of the given states. Dependent states
/// are skipped.
pub fn span_projector(states: &[PureState]) -> Result<ComplexMatrix> {
    let first = states
        .first()
        .ok_or_else(|| Error::InvalidState("empty spanning set".into()))?;
    let mut basis: Vec<Vec<Complex64>> = Vec::new();
    for s in states {
        if s.dim() != first.dim() {
            return Err(Error::DimensionMismatch(
                "spanning states differ in dimension".into(),
            ));
        }
        let r = project_out(s.amplitudes(), &basis);
        let n = linalg::norm(&r);
        if n >= 1e-8 {
            basis.push(r.into_iter().map(|z| z / n).collect());
        }
    }
    let mut p = ComplexMatrix::zeros(first.dim(), first.dim());
    for b in &basis {
        p = &p + &ComplexMatrix::outer(b, b);
    }
    Ok(p)
}

/// Like [`maximally_mixed_on`] but labelled with an explicit factorization.
pub fn maximally_mixed_on_with_dims(
    projector: &ComplexMatrix,
    dims: Vec<usize>,
) -> Result<DensityMatrix> {
    maximally_mixed_on(projector)?.with_dims(dims)
}

fn complex_gaussian(rng: &mut ChaCha20Rng) -> Complex64 {
    let re: f64 = StandardNormal.sample(rng);
    let im: f64 = StandardNormal.sample(rng);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

/// Normalized Ginibre vector; deterministic per seed.
pub fn random_pure_state(dim: usize, seed: u64) -> PureState {
    assert!(dim >= 1, "dimension must be positive");
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    loop {
        let v: Vec<Complex64> = (0..dim).map(|_| complex_gaussian(&mut rng)).collect();
        if let Ok(state) = PureState::normalized(v, vec![dim]) {
            return state;
        }
    }
}

/// Haar-random unitary: Gram–Schmidt QR of a Ginibre matrix.
///
/// Gram–Schmidt yields an `R` factor with positive real diagonal, which is the
/// phase fix that makes `Q` Haar distributed.
pub fn random_unitary(dim: usize, seed: u64) -> Gate {
    assert!(dim >= 1, "dimension must be positive");
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    loop {
        let columns: Vec<Vec<Complex64>> = (0..dim)
            .map(|_| (0..dim).map(|_| complex_gaussian(&mut rng)).collect())
            .collect();
        if let Some(q) = orthonormalize(&columns) {
            let m = ComplexMatrix::from_columns(&q).expect("square");
            return Gate(m);
        }
    }
}

/// Modified Gram–Schmidt with one reorthogonalization pass. `None` when the
/// columns are numerically dependent.
pub(crate) fn orthonormalize(columns: &[Vec<Complex64>]) -> Option<Vec<Vec<Complex64>>> {
    let mut basis: Vec<Vec<Complex64>> = Vec::with_capacity(columns.len());
    for c in columns {
        let v = project_out(c, &basis);
        let n = linalg::norm(&v);
        if n < 1e-8 {
            return None;
        }
        basis.push(v.into_iter().map(|z| z / n).collect());
    }
    Some(basis)
}

/// Removes the components of `v` along the orthonormal `basis` (twice).
pub(crate) fn project_out(v: &[Complex64], basis: &[Vec<Complex64>]) -> Vec<Complex64> {
    let mut v = v.to_vec();
    for _ in 0..2 {
        for b in basis {
            let coeff = linalg::inner(b, &v);
            for (x, y) in v.iter_mut().zip(b) {
                *x -= coeff * y;
            }
        }
    }
    v
}

/// Mixed state obtained by tracing an environment of the same dimension out
/// of a random pure state; full rank with probability one.
pub fn random_density_matrix(dim: usize, seed: u64) -> DensityMatrix {
    let psi = random_pure_state(dim * dim, seed);
    let rho = DensityMatrix {
        matrix: psi.projector(),
        dims: vec![dim, dim],
    };
    rho.partial_trace(&[0]).expect("valid bipartition")
}

/// Derives the `k`-th independent sub-seed from a master seed (splitmix64).
pub fn sub_seed(seed: u64, k: u64) -> u64 {
    let mut z = seed.wrapping_add(0x9E37_79B9_7F4A_7C15u64.wrapping_mul(k.wrapping_add(1)));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn qubit_parametrization() {
        assert_eq!(
            qubit(0.0, 0.0).amplitudes(),
            PureState::basis(2, 0).amplitudes()
        );
        let p = qubit(FRAC_PI_4, 0.0);
        assert!((p.amplitudes()[0].re - FRAC_1_SQRT_2).abs() < 1e-15);
        assert!((p.amplitudes()[1].re - FRAC_1_SQRT_2).abs() < 1e-15);
        for (t1, t2) in [(0.1, 0.9), (0.0, 1.2), (2.0, -0.3)] {
            let ov = qubit(t1, 0.0).overlap(&qubit(t2, 0.0)).unwrap();
            assert!((ov.re - (t1 - t2).cos()).abs() < 1e-14 && ov.im.abs() < 1e-15);
        }
    }

    #[test]
    fn symmetric_projector_properties() {
        let p = symmetric_projector_two_qubits();
        assert!(p.matmul(&p).max_abs_diff(&p) < 1e-15);
        assert_eq!(p.hermitian_deviation(), 0.0);
        assert!((p.trace().re - 3.0).abs() < 1e-15);
        let singlet = [ZERO, c(FRAC_1_SQRT_2, 0.0), c(-FRAC_1_SQRT_2, 0.0), ZERO];
        assert!(linalg::norm(&p.apply(&singlet)) < 1e-15);
        for seed in 0..100 {
            let psi = random_pure_state(2, seed);
            let pp = psi.tensor(&psi);
            let out = p.apply(pp.amplitudes());
            let dev = out
                .iter()
                .zip(pp.amplitudes())
                .map(|(a, b)| (a - b).norm())
                .fold(0.0, f64::max);
            assert!(dev < 1e-10);
        }
    }

    #[test]
    fn maximally_mixed_cases() {
        let rho = maximally_mixed_on(&ComplexMatrix::identity(2)).unwrap();
        assert_eq!(rho, DensityMatrix::maximally_mixed(2));
        let zero = PureState::basis(2, 0).projector();
        assert_eq!(maximally_mixed_on(&zero).unwrap().matrix(), &zero);
        let sym = maximally_mixed_on(&symmetric_projector_two_qubits()).unwrap();
        assert!((sym.matrix().get(0, 0).re - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn span_of_product_states_matches_symmetric_projector() {
        let states: Vec<PureState> = (0..6)
            .map(|k| {
                let psi = random_pure_state(2, k);
                psi.tensor(&psi)
            })
            .collect();
        let p = span_projector(&states).unwrap();
        assert!(p.max_abs_diff(&symmetric_projector_two_qubits()) < 1e-10);
    }

    #[test]
    fn maximally_mixed_rejects_non_projectors() {
        let m = ComplexMatrix::identity(2).scale(c(0.5, 0.0));
        assert!(matches!(
            maximally_mixed_on(&m),
            Err(Error::NotAProjector(_))
        ));
        let z = ComplexMatrix::zeros(2, 2);
        assert!(matches!(
            maximally_mixed_on(&z),
            Err(Error::NotAProjector(_))
        ));
        let nh = ComplexMatrix::from_real(2, 2, &[1.0, 1.0, 0.0, 0.0]).unwrap();
        assert!(matches!(
            maximally_mixed_on(&nh),
            Err(Error::NotAProjector(_))
        ));
    }

    #[test]
    fn random_pure_state_determinism() {
        assert_eq!(random_pure_state(5, 3), random_pure_state(5, 3));
        assert_ne!(random_pure_state(5, 3), random_pure_state(5, 4));
        let scalar = random_pure_state(1, 99);
        assert!((scalar.amplitudes()[0].norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn random_pure_state_is_uniform_on_average() {
        // Haar average of |⟨0|ψ⟩|² in dimension 2 is 1/2.
        let n = 10_000;
        let mean: f64 = (0..n)
            .map(|seed| random_pure_state(2, seed).amplitudes()[0].norm_sqr())
            .sum::<f64>()
            / n as f64;
        assert!((mean - 0.5).abs() < 0.02, "mean {mean}");
    }

    #[test]
    fn random_unitary_contract() {
        assert!((random_unitary(1, 5).matrix().get(0, 0).norm() - 1.0).abs() < 1e-15);
        let u = random_unitary(4, 7);
        assert!(u.matrix().unitarity_deviation() < 1e-10);
        assert_eq!(u, random_unitary(4, 7));
    }

    #[test]
    fn unitary_conjugation_preserves_spectrum() {
        for seed in 0..20 {
            let rho = random_density_matrix(4, seed);
            let u = random_unitary(4, seed + 1000);
            let out = rho.evolve(&u).unwrap();
            let a = rho.spectrum().unwrap();
            let b = out.spectrum().unwrap();
            let dev = a
                .iter()
                .zip(&b)
                .map(|(x, y)| (x - y).abs())
                .fold(0.0, f64::max);
            assert!(dev < 1e-9);
        }
    }

    #[test]
    fn state_validation() {
        assert!(PureState::new(vec![ONE, ONE], vec![2]).is_err());
        assert!(PureState::new(vec![ONE, ZERO], vec![3]).is_err());
        assert!(PureState::normalized(vec![ZERO, ZERO], vec![2]).is_err());
        assert!(DensityMatrix::new(ComplexMatrix::identity(2), vec![2]).is_err());
        let neg = ComplexMatrix::from_real(2, 2, &[1.5, 0.0, 0.0, -0.5]).unwrap();
        assert!(DensityMatrix::new(neg, vec![2]).is_err());
        assert!(Gate::new(ComplexMatrix::from_real(2, 2, &[1.0, 1.0, 0.0, 1.0]).unwrap()).is_err());
    }

    #[test]
    fn state_json() {
        let psi = qubit(0.3, 1.1).tensor(&PureState::basis(3, 2));
        let text = serde_json::to_string(&psi).unwrap();
        assert!(text.contains("\"dims\":[2,3]"));
        assert!(text.contains("\"cols\":1"));
        let back: PureState = serde_json::from_str(&text).unwrap();
        assert_eq!(back, psi);
        let bad = r#"{"rows":2,"cols":1,"entries":[[1,0],[1,0]],"dims":[2]}"#;
        assert!(serde_json::from_str::<PureState>(bad).is_err());
    }
}
