//! Entropic quantities, all in bits (log base 2).

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eig, inner};
use crate::states::{DensityMatrix, PureState};

/// Eigenvalues below this contribute nothing to `−λ log λ`.
pub const EIGENVALUE_FLOOR: f64 = 1e-12;
/// Eigenvalues of the second argument of the relative entropy below this span
/// its kernel.
pub const KERNEL_EIGENVALUE: f64 = 1e-10;
/// Weight of the first argument inside that kernel at or above which the
/// relative entropy is reported as infinite.
pub const KERNEL_WEIGHT: f64 = 1e-10;
/// Slack allowed for probabilities and small negative rounding.
pub const MEASURE_TOLERANCE: f64 = 1e-9;

/// Value in bits that may be infinite.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum EntropyValue {
    Finite(f64),
    Infinite,
}

impl EntropyValue {
    pub fn is_infinite(self) -> bool {
        matches!(self, EntropyValue::Infinite)
    }

    /// Finite value, or `f64::INFINITY`.
    pub fn bits(self) -> f64 {
        match self {
            EntropyValue::Finite(x) => x,
            EntropyValue::Infinite => f64::INFINITY,
        }
    }

    fn clamped(x: f64) -> Self {
        if (-MEASURE_TOLERANCE..0.0).contains(&x) {
            EntropyValue::Finite(0.0)
        } else {
            EntropyValue::Finite(x)
        }
    }
}

impl fmt::Display for EntropyValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EntropyValue::Finite(x) => write!(f, "{x}"),
            EntropyValue::Infinite => write!(f, "INFINITE"),
        }
    }
}

fn xlog2x(x: f64) -> f64 {
    if x < EIGENVALUE_FLOOR {
        0.0
    } else {
        x * x.log2()
    }
}

/// `H₂(p) = −p log₂p − (1−p) log₂(1−p)`.
pub fn binary_entropy(p: f64) -> Result<f64> {
    const SLACK: f64 = 1e-12;
    if !(-SLACK..=1.0 + SLACK).contains(&p) {
        return Err(Error::DomainError(p));
    }
    let p = p.clamp(0.0, 1.0);
    let plog = |x: f64| if x <= 0.0 { 0.0 } else { x * x.log2() };
    Ok((-plog(p) - plog(1.0 - p)).max(0.0))
}

/// Shannon entropy of a spectrum, with the eigenvalue floor applied.
pub fn spectral_entropy(eigenvalues: &[f64]) -> f64 {
    (-eigenvalues.iter().map(|&x| xlog2x(x)).sum::<f64>()).max(0.0)
}

pub fn von_neumann_entropy(rho: &DensityMatrix) -> Result<f64> {
    Ok(spectral_entropy(&rho.spectrum()?))
}

/// `S(ρ|σ) = tr(ρ log₂ρ − ρ log₂σ)`, infinite when the support of `ρ` is not
/// contained in that of `σ`.
pub fn relative_entropy(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<EntropyValue> {
    if rho.dims() != sigma.dims() {
        return Err(Error::DimensionMismatch(format!(
            "relative entropy between dims {:?} and {:?}",
            rho.dims(),
            sigma.dims()
        )));
    }
    let rho_eig = hermitian_eig(rho.matrix())?;
    let sigma_eig = hermitian_eig(sigma.matrix())?;

    let neg_entropy: f64 = rho_eig.eigenvalues.iter().map(|&x| xlog2x(x)).sum();

    let mut cross = 0.0;
    let mut kernel_weight = 0.0;
    for (j, &mu) in sigma_eig.eigenvalues.iter().enumerate() {
        let v = sigma_eig.eigenvectors.column(j);
        let weight = inner(&v, &rho.matrix().apply(&v)).re;
        if mu < KERNEL_EIGENVALUE {
            kernel_weight += weight.max(0.0);
        } else {
            cross += weight * mu.log2();
        }
    }
    if kernel_weight >= KERNEL_WEIGHT {
        return Ok(EntropyValue::Infinite);
    }
    Ok(EntropyValue::clamped(neg_entropy - cross))
}

/// Probability-weighted collection of states sharing one factorization.
#[derive(Clone, Debug)]
pub struct Ensemble {
    members: Vec<(f64, DensityMatrix)>,
}

impl Ensemble {
    pub fn new(members: Vec<(f64, DensityMatrix)>) -> Result<Self> {
        let first = members
            .first()
            .ok_or_else(|| Error::InvalidState("empty ensemble".into()))?;
        let dims = first.1.dims().to_vec();
        let mut total = 0.0;
        for (p, rho) in &members {
            if !(0.0..=1.0).contains(p) {
                return Err(Error::DomainError(*p));
            }
            if rho.dims() != dims.as_slice() {
                return Err(Error::DimensionMismatch(
                    "ensemble members have different dims".into(),
                ));
            }
            total += p;
        }
        if (total - 1.0).abs() > MEASURE_TOLERANCE {
            return Err(Error::InvalidState(format!("probabilities sum to {total}")));
        }
        Ok(Self { members })
    }

    /// Equal-weight ensemble of pure states.
    pub fn uniform_pure(states: &[PureState]) -> Result<Self> {
        let p = 1.0 / states.len().max(1) as f64;
        Self::new(states.iter().map(|s| (p, s.to_density())).collect())
    }

    pub fn members(&self) -> &[(f64, DensityMatrix)] {
        &self.members
    }

    pub fn average(&self) -> Result<DensityMatrix> {
        let refs: Vec<(f64, &DensityMatrix)> = self.members.iter().map(|(p, r)| (*p, r)).collect();
        DensityMatrix::mixture(&refs)
    }

    /// Pushes every member through `f`, keeping the weights.
    pub fn map(&self, mut f: impl FnMut(&DensityMatrix) -> Result<DensityMatrix>) -> Result<Self> {
        let members = self
            .members
            .iter()
            .map(|(p, r)| Ok((*p, f(r)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(members)
    }
}

/// `χ = Σ pᵢ S(ρᵢ | ρ̄)`.
pub fn holevo_quantity(ensemble: &Ensemble) -> Result<f64> {
    let avg = ensemble.average()?;
    let mut chi = 0.0;
    for (p, rho) in ensemble.members() {
        if *p == 0.0 {
            continue;
        }
        chi += p * relative_entropy(rho, &avg)?.bits();
    }
    Ok(chi.max(0.0))
}

/// Entropy of the reduced state on `alice`, for a pure state.
pub fn entanglement_entropy(psi: &PureState, alice: &[usize]) -> Result<f64> {
    let n = psi.dims().len();
    if alice.is_empty() {
        return Err(Error::BadPartition("Alice holds no subsystem".into()));
    }
    if let Some(&bad) = alice.iter().find(|&&k| k >= n) {
        return Err(Error::BadSubsystemIndex {
            index: bad,
            count: n,
        });
    }
    let mut held = alice.to_vec();
    held.sort_unstable();
    held.dedup();
    if held.len() == n {
        return Err(Error::BadPartition("Alice holds every subsystem".into()));
    }
    let reduced = psi.to_density().partial_trace(&held)?;
    von_neumann_entropy(&reduced)
}

pub fn overlap(a: &PureState, b: &PureState) -> Result<Complex64> {
    a.overlap(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::ComplexMatrix;
    use crate::states::{
        maximally_mixed_on, plus, qubit, random_pure_state, random_unitary,
        symmetric_projector_two_qubits,
    };

    #[test]
    fn binary_entropy_values() {
        assert_eq!(binary_entropy(0.5).unwrap(), 1.0);
        assert_eq!(binary_entropy(0.0).unwrap(), 0.0);
        assert_eq!(binary_entropy(1.0).unwrap(), 0.0);
        // −0.75·log₂0.75 − 0.25·log₂0.25 = 0.311278… + 0.5
        assert!((binary_entropy(0.75).unwrap() - 0.811278).abs() < 1e-6);
        assert!(matches!(binary_entropy(1.1), Err(Error::DomainError(_))));
        assert!(matches!(binary_entropy(-0.01), Err(Error::DomainError(_))));
        assert!(binary_entropy(-1e-13).is_ok());
    }

    #[test]
    fn von_neumann_values() {
        assert_eq!(von_neumann_entropy(&plus().to_density()).unwrap(), 0.0);
        let sym = maximally_mixed_on(&symmetric_projector_two_qubits()).unwrap();
        assert!((von_neumann_entropy(&sym).unwrap() - 3f64.log2()).abs() < 1e-9);
        let half = DensityMatrix::maximally_mixed(2).tensor(&PureState::basis(2, 0).to_density());
        assert!((von_neumann_entropy(&half).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn relative_entropy_values() {
        let rho = crate::states::random_density_matrix(3, 4);
        assert!(relative_entropy(&rho, &rho).unwrap().bits().abs() < 1e-12);
        let zero = PureState::basis(2, 0).to_density();
        let one = PureState::basis(2, 1).to_density();
        let mixed = DensityMatrix::maximally_mixed(2);
        assert!((relative_entropy(&zero, &mixed).unwrap().bits() - 1.0).abs() < 1e-12);
        assert_eq!(
            relative_entropy(&zero, &one).unwrap(),
            EntropyValue::Infinite
        );
        let other = DensityMatrix::maximally_mixed(4);
        assert!(matches!(
            relative_entropy(&zero, &other),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn relative_entropy_against_closed_form_for_commuting_states() {
        // Diagonal states: S = Σ pᵢ log₂(pᵢ/qᵢ).
        let p = [0.5, 0.3, 0.2];
        let q = [0.2, 0.2, 0.6];
        let rho = DensityMatrix::new(ComplexMatrix::diagonal(&p), vec![3]).unwrap();
        let sigma = DensityMatrix::new(ComplexMatrix::diagonal(&q), vec![3]).unwrap();
        let expected: f64 = p.iter().zip(&q).map(|(a, b)| a * (a / b).log2()).sum();
        assert!((relative_entropy(&rho, &sigma).unwrap().bits() - expected).abs() < 1e-12);
    }

    #[test]
    fn holevo_values() {
        let single = Ensemble::new(vec![(1.0, plus().to_density())]).unwrap();
        assert!(holevo_quantity(&single).unwrap().abs() < 1e-12);
        let orth =
            Ensemble::uniform_pure(&[PureState::basis(2, 0), PureState::basis(2, 1)]).unwrap();
        assert!((holevo_quantity(&orth).unwrap() - 1.0).abs() < 1e-12);
        // overlap 1/2: Gram eigenvalues (1 ± 1/2)/2
        let theta = 0.5f64.acos();
        let pair = Ensemble::uniform_pure(&[qubit(0.0, 0.0), qubit(theta, 0.0)]).unwrap();
        let chi = holevo_quantity(&pair).unwrap();
        assert!((chi - 0.811278).abs() < 1e-6);
        assert!((chi - von_neumann_entropy(&pair.average().unwrap()).unwrap()).abs() < 1e-9);
    }

    #[test]
    fn ensemble_validation() {
        let r = plus().to_density();
        assert!(Ensemble::new(vec![]).is_err());
        assert!(Ensemble::new(vec![(0.5, r.clone())]).is_err());
        assert!(Ensemble::new(vec![
            (0.5, r.clone()),
            (0.5, DensityMatrix::maximally_mixed(3))
        ])
        .is_err());
        assert!(Ensemble::new(vec![(1.5, r.clone()), (-0.5, r)]).is_err());
    }

    #[test]
    fn entanglement_values() {
        let product = PureState::basis(2, 0).tensor(&random_pure_state(3, 1));
        assert!(entanglement_entropy(&product, &[0]).unwrap().abs() < 1e-12);
        let bell = PureState::superpose(&[
            &PureState::basis(2, 0).tensor(&PureState::basis(2, 0)),
            &PureState::basis(2, 1).tensor(&PureState::basis(2, 1)),
        ])
        .unwrap();
        assert!((entanglement_entropy(&bell, &[1]).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn entanglement_partition_errors() {
        let psi = random_pure_state(4, 1);
        let psi = PureState::new(psi.amplitudes().to_vec(), vec![2, 2]).unwrap();
        assert!(matches!(
            entanglement_entropy(&psi, &[]),
            Err(Error::BadPartition(_))
        ));
        assert!(matches!(
            entanglement_entropy(&psi, &[0, 1]),
            Err(Error::BadPartition(_))
        ));
        assert!(matches!(
            entanglement_entropy(&psi, &[5]),
            Err(Error::BadSubsystemIndex { .. })
        ));
    }

    #[test]
    fn overlap_values() {
        let psi = random_pure_state(2, 3);
        let phi = random_pure_state(2, 4);
        assert!((overlap(&psi, &psi).unwrap().re - 1.0).abs() < 1e-12);
        assert_eq!(
            overlap(&PureState::basis(2, 0), &PureState::basis(2, 1))
                .unwrap()
                .norm(),
            0.0
        );
        let lhs = overlap(&psi.tensor(&psi), &phi.tensor(&phi)).unwrap();
        let single = overlap(&psi, &phi).unwrap();
        assert!((lhs - single * single).norm() < 1e-14);
        assert!(overlap(&psi, &random_pure_state(3, 0)).is_err());
    }

    #[test]
    fn measures_are_unitarily_invariant() {
        let u = random_unitary(4, 21);
        let rho = crate::states::random_density_matrix(4, 22);
        let sigma = crate::states::random_density_matrix(4, 23);
        let s0 = von_neumann_entropy(&rho).unwrap();
        let s1 = von_neumann_entropy(&rho.evolve(&u).unwrap()).unwrap();
        assert!((s0 - s1).abs() < 1e-9);
        let d0 = relative_entropy(&rho, &sigma).unwrap().bits();
        let d1 = relative_entropy(&rho.evolve(&u).unwrap(), &sigma.evolve(&u).unwrap())
            .unwrap()
            .bits();
        assert!((d0 - d1).abs() < 1e-9);
    }
}
