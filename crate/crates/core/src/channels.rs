//! Kraus channels and their Stinespring dilations.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, hermitian_eig, ComplexMatrix, MatrixJson, ONE, ZERO};
use crate::states::{self, random_unitary, DensityMatrix, Gate, PureState};

/// Largest `‖Σ Aᵢ†Aᵢ − I‖_max` accepted as trace preserving.
pub const CPTP_TOLERANCE: f64 = 1e-9;
/// Gram–Schmidt candidates with a smaller residual norm are skipped.
pub const COMPLETION_CUTOFF: f64 = 1e-8;

/// Channel in Kraus form: `ρ ↦ Σ Aᵢ ρ Aᵢ†`.
///
/// Kraus lists are kept as given; two channels with different lists may act
/// identically.
#[derive(Clone, Debug)]
pub struct QuantumChannel {
    kraus: Vec<ComplexMatrix>,
    in_dims: Vec<usize>,
    out_dims: Vec<usize>,
    deviation: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CptpReport {
    pub max_deviation: f64,
    pub accepted: bool,
}

impl QuantumChannel {
    /// Checks shapes only; trace preservation is reported by [`validate_cptp`].
    pub fn new(
        kraus: Vec<ComplexMatrix>,
        in_dims: Vec<usize>,
        out_dims: Vec<usize>,
    ) -> Result<Self> {
        if kraus.is_empty() {
            return Err(Error::InvalidMatrix(
                "a channel needs at least one Kraus operator".into(),
            ));
        }
        if in_dims.is_empty()
            || out_dims.is_empty()
            || in_dims.contains(&0)
            || out_dims.contains(&0)
        {
            return Err(Error::DimensionMismatch(
                "channel dims must be nonempty and positive".into(),
            ));
        }
        let din: usize = in_dims.iter().product();
        let dout: usize = out_dims.iter().product();
        for (i, a) in kraus.iter().enumerate() {
            if a.rows() != dout || a.cols() != din {
                return Err(Error::DimensionMismatch(format!(
                    "Kraus operator {i} is {}x{}, expected {dout}x{din}",
                    a.rows(),
                    a.cols()
                )));
            }
        }
        let mut sum = ComplexMatrix::zeros(din, din);
        for a in &kraus {
            sum = &sum + &a.adjoint().matmul(a);
        }
        let deviation = sum.max_abs_diff(&ComplexMatrix::identity(din));
        Ok(Self {
            kraus,
            in_dims,
            out_dims,
            deviation,
        })
    }

    /// Like [`QuantumChannel::new`] but rejects non-CPTP Kraus lists.
    pub fn new_cptp(
        kraus: Vec<ComplexMatrix>,
        in_dims: Vec<usize>,
        out_dims: Vec<usize>,
    ) -> Result<Self> {
        let ch = Self::new(kraus, in_dims, out_dims)?;
        ch.ensure_valid()?;
        Ok(ch)
    }

    pub fn kraus(&self) -> &[ComplexMatrix] {
        &self.kraus
    }

    pub fn in_dims(&self) -> &[usize] {
        &self.in_dims
    }

    pub fn out_dims(&self) -> &[usize] {
        &self.out_dims
    }

    pub fn in_dim(&self) -> usize {
        self.kraus[0].cols()
    }

    pub fn out_dim(&self) -> usize {
        self.kraus[0].rows()
    }

    fn ensure_valid(&self) -> Result<()> {
        if self.deviation > CPTP_TOLERANCE {
            return Err(Error::InvalidChannel {
                deviation: self.deviation,
            });
        }
        Ok(())
    }

    pub fn apply(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        apply_channel(self, rho)
    }

    /// `Λ₂ ∘ Λ₁` (this channel applied first).
    pub fn then(&self, next: &QuantumChannel) -> Result<QuantumChannel> {
        if self.out_dim() != next.in_dim() {
            return Err(Error::DimensionMismatch(
                "channel composition dims disagree".into(),
            ));
        }
        let kraus = next
            .kraus
            .iter()
            .flat_map(|b| self.kraus.iter().map(move |a| b.matmul(a)))
            .collect();
        QuantumChannel::new(kraus, self.in_dims.clone(), next.out_dims.clone())
    }

    pub fn to_json(&self) -> ChannelJson {
        ChannelJson {
            kraus: self.kraus.iter().map(MatrixJson::from).collect(),
            in_dims: self.in_dims.clone(),
            out_dims: self.out_dims.clone(),
        }
    }

    /// Parses the JSON form and re-validates trace preservation.
    pub fn from_json_str(text: &str) -> Result<Self> {
        let j: ChannelJson = serde_json::from_str(text)?;
        j.try_into()
    }
}

/// JSON form of a channel.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ChannelJson {
    pub kraus: Vec<MatrixJson>,
    pub in_dims: Vec<usize>,
    pub out_dims: Vec<usize>,
}

impl TryFrom<ChannelJson> for QuantumChannel {
    type Error = Error;

    fn try_from(j: ChannelJson) -> Result<Self> {
        let kraus = j
            .kraus
            .into_iter()
            .map(ComplexMatrix::try_from)
            .collect::<Result<Vec<_>>>()?;
        QuantumChannel::new_cptp(kraus, j.in_dims, j.out_dims)
    }
}

pub fn validate_cptp(channel: &QuantumChannel) -> CptpReport {
    CptpReport {
        max_deviation: channel.deviation,
        accepted: channel.deviation <= CPTP_TOLERANCE,
    }
}

pub fn apply_channel(channel: &QuantumChannel, rho: &DensityMatrix) -> Result<DensityMatrix> {
    channel.ensure_valid()?;
    if rho.dim() != channel.in_dim() {
        return Err(Error::DimensionMismatch(format!(
            "channel takes dimension {}, state has {}",
            channel.in_dim(),
            rho.dim()
        )));
    }
    let mut out = ComplexMatrix::zeros(channel.out_dim(), channel.out_dim());
    for a in &channel.kraus {
        out = &out + &a.conjugate(rho.matrix());
    }
    DensityMatrix::new(out, channel.out_dims.clone())
}

/// Unitary-channel wrapper around a gate.
pub fn unitary_channel(gate: &Gate, dims: Vec<usize>) -> Result<QuantumChannel> {
    QuantumChannel::new_cptp(vec![gate.matrix().clone()], dims.clone(), dims)
}

pub fn identity_channel(dims: Vec<usize>) -> QuantumChannel {
    let d: usize = dims.iter().product();
    QuantumChannel::new(vec![ComplexMatrix::identity(d)], dims.clone(), dims)
        .expect("identity is CPTP")
}

/// Measure in the computational basis and flip a `1` outcome to `0`:
/// Kraus operators `|0⟩⟨0|` and `|0⟩⟨1|`.
pub fn demon_channel() -> QuantumChannel {
    let keep = ComplexMatrix::from_real(2, 2, &[1.0, 0.0, 0.0, 0.0]).expect("static shape");
    let flip = ComplexMatrix::from_real(2, 2, &[0.0, 1.0, 0.0, 0.0]).expect("static shape");
    QuantumChannel::new(vec![keep, flip], vec![2], vec![2]).expect("static shape")
}

/// Discards the input and prepares `omega`.
pub fn replacement_channel(in_dims: Vec<usize>, omega: &DensityMatrix) -> Result<QuantumChannel> {
    let din: usize = in_dims.iter().product();
    let eig = hermitian_eig(omega.matrix())?;
    let mut kraus = Vec::new();
    for (j, &mu) in eig.eigenvalues.iter().enumerate() {
        if mu <= 0.0 {
            continue;
        }
        let w = eig.eigenvectors.column(j);
        for k in 0..din {
            let mut bra = vec![ZERO; din];
            bra[k] = ONE;
            kraus.push(ComplexMatrix::outer(&w, &bra).scale(Complex64::new(mu.sqrt(), 0.0)));
        }
    }
    QuantumChannel::new_cptp(kraus, in_dims, omega.dims().to_vec())
}

/// Controlled-NOT with the first qubit as control.
pub fn cnot() -> Gate {
    Gate::new(
        ComplexMatrix::from_real(
            4,
            4,
            &[
                1.0, 0.0, 0.0, 0.0, //
                0.0, 1.0, 0.0, 0.0, //
                0.0, 0.0, 0.0, 1.0, //
                0.0, 0.0, 1.0, 0.0,
            ],
        )
        .expect("static shape"),
    )
    .expect("permutation is unitary")
}

/// Channel whose Kraus operators are slices of a Haar-random isometry
/// `in_dim → out_dim ⊗ env_dim`.
pub fn random_channel(
    in_dim: usize,
    out_dim: usize,
    env_dim: usize,
    seed: u64,
) -> Result<QuantumChannel> {
    if in_dim == 0 || out_dim == 0 || env_dim == 0 {
        return Err(Error::DimensionMismatch(
            "channel dims must be positive".into(),
        ));
    }
    if out_dim * env_dim < in_dim {
        return Err(Error::DimensionMismatch(format!(
            "no isometry from dimension {in_dim} into {out_dim}x{env_dim}"
        )));
    }
    let u = random_unitary(out_dim * env_dim, seed);
    let v = u.matrix();
    let kraus = (0..env_dim)
        .map(|k| ComplexMatrix::from_fn(out_dim, in_dim, |o, i| v.get(o * env_dim + k, i)))
        .collect();
    QuantumChannel::new(kraus, vec![in_dim], vec![out_dim])
}

/// Random channel with an environment size drawn from `1..=max_env`.
pub fn random_channel_any_env(
    in_dim: usize,
    out_dim: usize,
    max_env: usize,
    seed: u64,
) -> Result<QuantumChannel> {
    let mut rng = ChaCha20Rng::seed_from_u64(states::sub_seed(seed, u64::MAX));
    let min_env = in_dim.div_ceil(out_dim).max(1);
    let env = rng.random_range(min_env..=max_env.max(min_env));
    random_channel(in_dim, out_dim, env, seed)
}

/// Stinespring dilation of a channel.
///
/// The environment is the last tensor factor, initialized in `|0⟩_E`. When
/// `in_dim ≤ out_dim` the input `|j⟩|0⟩_E` sits at its natural tensor index
/// `j·env_dim` of `out ⊗ env`; otherwise the input sector occupies the first
/// `in_dim` columns.
#[derive(Clone, Debug)]
pub struct Dilation {
    pub isometry: ComplexMatrix,
    pub env_dim: usize,
    pub unitary: Gate,
    /// Column of `unitary` that hosts each input basis state `|j⟩|0⟩_E`.
    pub input_columns: Vec<usize>,
    pub out_dims: Vec<usize>,
}

impl Dilation {
    /// `V|ψ⟩` as a state on `out ⊗ env`.
    pub fn isometry_apply(&self, psi: &PureState) -> Result<PureState> {
        if psi.dim() != self.isometry.cols() {
            return Err(Error::DimensionMismatch(
                "state does not match dilation input".into(),
            ));
        }
        PureState::new(self.isometry.apply(psi.amplitudes()), self.extended_dims())
    }

    /// `U (|ψ⟩ ⊗ |0⟩_E)`.
    pub fn unitary_apply(&self, psi: &PureState) -> Result<PureState> {
        let embedded = self.embed_vector(psi)?;
        PureState::new(self.unitary.matrix().apply(&embedded), self.extended_dims())
    }

    /// `tr_E[U (ρ ⊗ |0⟩⟨0|_E) U†]`.
    pub fn reduce(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        if rho.dim() != self.input_columns.len() {
            return Err(Error::DimensionMismatch(
                "state does not match dilation input".into(),
            ));
        }
        let big = self.unitary.dim();
        let mut slot = vec![None; big];
        for (j, &c) in self.input_columns.iter().enumerate() {
            slot[c] = Some(j);
        }
        let embedded = ComplexMatrix::from_fn(big, big, |r, c| match (slot[r], slot[c]) {
            (Some(i), Some(j)) => rho.matrix().get(i, j),
            _ => ZERO,
        });
        let evolved = self.unitary.matrix().conjugate(&embedded);
        let dims = self.extended_dims();
        let keep: Vec<usize> = (0..dims.len() - 1).collect();
        let (reduced, _) = linalg::partial_trace(&evolved, &dims, &keep)?;
        DensityMatrix::new(reduced, self.out_dims.clone())
    }

    fn extended_dims(&self) -> Vec<usize> {
        let mut dims = self.out_dims.clone();
        dims.push(self.env_dim);
        dims
    }

    fn embed_vector(&self, psi: &PureState) -> Result<Vec<Complex64>> {
        if psi.dim() != self.input_columns.len() {
            return Err(Error::DimensionMismatch(
                "state does not match dilation input".into(),
            ));
        }
        let mut v = vec![ZERO; self.unitary.dim()];
        for (&col, &a) in self.input_columns.iter().zip(psi.amplitudes()) {
            v[col] = a;
        }
        Ok(v)
    }
}

/// Builds `V|φ⟩ = Σᵢ Aᵢ|φ⟩ ⊗ |i⟩_E` and completes it to a unitary by
/// Gram–Schmidt over the standard basis, tried in index order.
pub fn stinespring(channel: &QuantumChannel) -> Result<Dilation> {
    channel.ensure_valid()?;
    let env_dim = channel.kraus.len();
    let din = channel.in_dim();
    let dout = channel.out_dim();
    let big = dout * env_dim;
    let isometry = ComplexMatrix::from_fn(big, din, |r, j| {
        channel.kraus[r % env_dim].get(r / env_dim, j)
    });

    let input_columns: Vec<usize> = if din <= dout {
        (0..din).map(|j| j * env_dim).collect()
    } else {
        (0..din).collect()
    };

    let mut basis: Vec<Vec<Complex64>> = (0..din).map(|j| isometry.column(j)).collect();
    let mut k = 0;
    while basis.len() < big && k < big {
        let mut e = vec![ZERO; big];
        e[k] = ONE;
        let r = states::project_out(&e, &basis);
        let n = linalg::norm(&r);
        if n >= COMPLETION_CUTOFF {
            basis.push(r.into_iter().map(|z| z / n).collect());
        }
        k += 1;
    }
    let mut columns = vec![Vec::new(); big];
    let mut extra = basis.drain(din..);
    for (slot, col) in columns.iter_mut().enumerate() {
        *col = match input_columns.iter().position(|&c| c == slot) {
            Some(j) => isometry.column(j),
            None => extra.next().expect("completion produced a full basis"),
        };
    }
    drop(extra);
    let unitary = Gate::new(ComplexMatrix::from_columns(&columns)?)?;
    Ok(Dilation {
        isometry,
        env_dim,
        unitary,
        input_columns,
        out_dims: channel.out_dims.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{plus, random_density_matrix, random_pure_state};

    #[test]
    fn cptp_reports() {
        let u = random_unitary(3, 1);
        let rep = validate_cptp(&unitary_channel(&u, vec![3]).unwrap());
        assert!(rep.accepted && rep.max_deviation < 1e-12);
        let rep = validate_cptp(&demon_channel());
        assert!(rep.accepted && rep.max_deviation < 1e-12);
        let keep = ComplexMatrix::from_real(2, 2, &[1.0, 0.0, 0.0, 0.0]).unwrap();
        let partial = QuantumChannel::new(vec![keep], vec![2], vec![2]).unwrap();
        let rep = validate_cptp(&partial);
        assert!(!rep.accepted);
        assert!((rep.max_deviation - 1.0).abs() < 1e-15);
        let rho = DensityMatrix::maximally_mixed(2);
        assert!(matches!(
            apply_channel(&partial, &rho),
            Err(Error::InvalidChannel { .. })
        ));
    }

    #[test]
    fn demon_deletes() {
        let zero = PureState::basis(2, 0).to_density();
        for seed in 0..20 {
            let rho = random_density_matrix(2, seed);
            let out = apply_channel(&demon_channel(), &rho).unwrap();
            assert!(out.max_abs_diff(&zero) < 1e-10);
        }
        let out = apply_channel(&demon_channel(), &plus().to_density()).unwrap();
        assert!(out.max_abs_diff(&zero) < 1e-15);
    }

    #[test]
    fn demon_is_idempotent() {
        let rho = random_density_matrix(2, 11);
        let once = demon_channel().apply(&rho).unwrap();
        let twice = demon_channel().apply(&once).unwrap();
        assert!(once.max_abs_diff(&twice) < 1e-10);
    }

    #[test]
    fn identity_channel_is_noop() {
        let rho = random_density_matrix(3, 2);
        assert!(
            identity_channel(vec![3])
                .apply(&rho)
                .unwrap()
                .max_abs_diff(&rho)
                < 1e-15
        );
    }

    #[test]
    fn apply_rejects_wrong_dimension() {
        let rho = random_density_matrix(3, 2);
        assert!(matches!(
            demon_channel().apply(&rho),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn dilation_of_unitary_channel() {
        let u = random_unitary(2, 9);
        let d = stinespring(&unitary_channel(&u, vec![2]).unwrap()).unwrap();
        assert_eq!(d.env_dim, 1);
        assert!(d.unitary.matrix().max_abs_diff(u.matrix()) < 1e-15);
    }

    #[test]
    fn demon_dilation_moves_state_to_environment() {
        let d = stinespring(&demon_channel()).unwrap();
        assert_eq!(d.input_columns, vec![0, 2]);
        for seed in 0..20 {
            let psi = random_pure_state(2, seed);
            let expected = PureState::basis(2, 0).tensor(&psi);
            let out = d.unitary_apply(&psi).unwrap();
            assert!(out.distance(&expected).unwrap() < 1e-10);
            // Same thing through the explicit tensor embedding |ψ⟩|0⟩_E.
            let embedded = psi.tensor(&PureState::basis(2, 0));
            let direct = d.unitary.matrix().apply(embedded.amplitudes());
            let dev = direct
                .iter()
                .zip(expected.amplitudes())
                .map(|(a, b)| (a - b).norm())
                .fold(0.0, f64::max);
            assert!(dev < 1e-10);
        }
    }

    #[test]
    fn dilation_round_trip() {
        for seed in 0..50u64 {
            let ch = random_channel_any_env(2, 2, 4, seed).unwrap();
            let d = stinespring(&ch).unwrap();
            assert!(d.unitary.matrix().unitarity_deviation() < 1e-9);
            for k in 0..5 {
                let rho = random_density_matrix(2, 1000 * seed + k);
                let a = ch.apply(&rho).unwrap();
                let b = d.reduce(&rho).unwrap();
                assert!(a.max_abs_diff(&b) < 1e-10, "seed {seed}");
            }
        }
    }

    #[test]
    fn dilation_with_unequal_dims() {
        for (din, dout, env) in [(2, 3, 2), (4, 2, 2), (3, 1, 3)] {
            let ch = random_channel(din, dout, env, 5).unwrap();
            let d = stinespring(&ch).unwrap();
            let rho = random_density_matrix(din, 8);
            assert!(
                ch.apply(&rho)
                    .unwrap()
                    .max_abs_diff(&d.reduce(&rho).unwrap())
                    < 1e-10
            );
        }
    }

    #[test]
    fn random_channels_are_cptp() {
        for seed in 0..100 {
            let ch = random_channel(2, 2, 3, seed).unwrap();
            assert!(validate_cptp(&ch).max_deviation < 1e-9);
        }
        let single = random_channel(3, 3, 1, 4).unwrap();
        assert_eq!(single.kraus().len(), 1);
        assert!(single.kraus()[0].unitarity_deviation() < 1e-10);
        assert!(random_channel(4, 1, 2, 0).is_err());
        let rho = random_density_matrix(3, 1);
        let out = random_channel(3, 2, 4, 77).unwrap().apply(&rho).unwrap();
        assert!((out.matrix().trace().re - 1.0).abs() < 1e-9);
    }

    #[test]
    fn replacement_outputs_omega() {
        let omega = random_density_matrix(2, 3);
        let ch = replacement_channel(vec![2], &omega).unwrap();
        let out = ch.apply(&random_density_matrix(2, 4)).unwrap();
        assert!(out.max_abs_diff(&omega) < 1e-12);
    }

    #[test]
    fn cnot_action() {
        let g = cnot();
        let ket = |a: usize, b: usize| PureState::basis(2, a).tensor(&PureState::basis(2, b));
        assert_eq!(
            g.matrix().apply(ket(1, 1).amplitudes()),
            ket(1, 0).amplitudes()
        );
        assert_eq!(
            g.matrix().apply(ket(0, 0).amplitudes()),
            ket(0, 0).amplitudes()
        );
        assert_eq!(
            g.matrix().apply(ket(0, 1).amplitudes()),
            ket(0, 1).amplitudes()
        );
        assert_eq!(
            g.matrix().apply(ket(1, 0).amplitudes()),
            ket(1, 1).amplitudes()
        );
        let pp = plus().tensor(&plus());
        let out = pp.evolve(&g).unwrap();
        assert!(out.distance(&pp).unwrap() < 1e-15);
        let target = plus().tensor(&PureState::basis(2, 0));
        let fidelity = out.overlap(&target).unwrap().norm_sqr();
        assert!((fidelity - 0.5).abs() < 1e-12);
    }

    #[test]
    fn channel_json_round_trip_revalidates() {
        let text = serde_json::to_string(&demon_channel().to_json()).unwrap();
        let ch = QuantumChannel::from_json_str(&text).unwrap();
        assert_eq!(ch.kraus().len(), 2);
        let bad = r#"{"kraus":[{"rows":2,"cols":2,"entries":[[1,0],[0,0],[0,0],[0,0]]}],"in_dims":[2],"out_dims":[2]}"#;
        assert!(matches!(
            QuantumChannel::from_json_str(bad),
            Err(Error::InvalidChannel { .. })
        ));
    }
}
