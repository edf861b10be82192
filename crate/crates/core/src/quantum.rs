//! Tsallis and von Neumann entropies of density matrices.

use crate::classical::{qexp_mutual_from_entropies, shannon_of, tsallis_of, Rank};
use crate::error::{Error, Result};
use crate::linalg::{partial_trace, DensityMatrix, Subsystem};

/// `T_q(rho) = (1 - Tr rho^q) / (q - 1)`, evaluated on the spectrum.
pub fn tsallis_entropy_state(rho: &DensityMatrix, q: Rank) -> f64 {
    tsallis_of(rho.eigenvalues(), q)
}

/// `-Tr rho ln rho` in nats.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> f64 {
    shannon_of(rho.eigenvalues())
}

/// Both quantum mutual Tsallis entropies of a two-qubit state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuantumMutualResult {
    /// `T_q(A) + T_q(B) - T_q(AB)`.
    pub additive_variant: f64,
    /// `(T_q(A) + T_q(B) - T_q(AB) + (1-q) T_q(A) T_q(B)) / (1 + (1-q) T_q(B))`.
    pub qexp_variant: f64,
    pub q: Rank,
}

pub(crate) fn require_two_qubit(rho: &DensityMatrix) -> Result<()> {
    if rho.dim() == 4 {
        Ok(())
    } else {
        Err(Error::InvalidDimension { expected: 4, found: rho.dim() })
    }
}

/// `(T_q(A), T_q(B), T_q(AB))`.
pub fn tsallis_triple(rho: &DensityMatrix, q: Rank) -> Result<(f64, f64, f64)> {
    require_two_qubit(rho)?;
    let t_a = tsallis_entropy_state(&partial_trace(rho, Subsystem::A)?, q);
    let t_b = tsallis_entropy_state(&partial_trace(rho, Subsystem::B)?, q);
    Ok((t_a, t_b, tsallis_entropy_state(rho, q)))
}

pub fn quantum_mutual(rho: &DensityMatrix, q: Rank) -> Result<QuantumMutualResult> {
    let (t_a, t_b, t_ab) = tsallis_triple(rho, q)?;
    Ok(QuantumMutualResult {
        additive_variant: t_a + t_b - t_ab,
        qexp_variant: qexp_mutual_from_entropies(t_a, t_b, t_ab, q)?,
        q,
    })
}

/// von Neumann mutual information `H(A) + H(B) - H(AB)`.
pub fn von_neumann_mutual(rho: &DensityMatrix) -> Result<f64> {
    require_two_qubit(rho)?;
    let h_a = von_neumann_entropy(&partial_trace(rho, Subsystem::A)?);
    let h_b = von_neumann_entropy(&partial_trace(rho, Subsystem::B)?);
    Ok(h_a + h_b - von_neumann_entropy(rho))
}

/// `T_q(a (x) b) - [T_q(a) + T_q(b) + (1-q) T_q(a) T_q(b)]`.
pub fn pseudo_additivity_defect(a: &DensityMatrix, b: &DensityMatrix, q: Rank) -> Result<f64> {
    let ab = DensityMatrix::product(a, b)?;
    let (ta, tb) = (tsallis_entropy_state(a, q), tsallis_entropy_state(b, q));
    Ok(tsallis_entropy_state(&ab, q) - (ta + tb + (1.0 - q.get()) * ta * tb))
}
