//! Projective measurements on qubit B, measured conditional entropies,
//! classical correlations and q-discords.

use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

use crate::classical::{pow0, shannon_of, tsallis_of, Rank};
use crate::error::{Error, Result};
use crate::linalg::{c, partial_trace, tensor_product, validate_state, ComplexMatrix, DensityMatrix, Subsystem};
use crate::optimize::{minimize_on_sphere, OptimizerConfig};
use crate::quantum::{
    quantum_mutual, require_two_qubit, tsallis_entropy_state, von_neumann_entropy, von_neumann_mutual,
};

/// Outcomes with probability at or below this carry no post-measurement state.
pub const ZERO_PROBABILITY: f64 = 1e-14;
const UNIT_NORM_TOL: f64 = 1e-10;

/// Rank-one projector pair `Pi_k = U|k><k|U^dagger` with
/// `U = t0 I + i (t1 sigma_1 + t2 sigma_2 + t3 sigma_3)`, `|t| = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProjectiveMeasurement {
    t: [f64; 4],
}

impl ProjectiveMeasurement {
    pub fn from_t(t: [f64; 4]) -> Result<Self> {
        let norm = libm::sqrt(t.iter().map(|x| x * x).sum());
        if !((norm - 1.0).abs() <= UNIT_NORM_TOL) {
            return Err(Error::InvalidMeasurement { norm });
        }
        Ok(ProjectiveMeasurement { t: t.map(|x| x / norm) })
    }

    /// Measurement whose outcome 0 projects onto the Bloch direction `(theta, phi)`.
    pub fn from_bloch(theta: f64, phi: f64) -> Self {
        let (s, co) = libm::sincos(theta / 2.0);
        let (sp, cp) = libm::sincos(phi);
        ProjectiveMeasurement { t: [co, s * sp, -s * cp, 0.0] }
    }

    /// Measurement in the computational basis.
    pub fn computational() -> Self {
        ProjectiveMeasurement { t: [1.0, 0.0, 0.0, 0.0] }
    }

    pub fn t(&self) -> [f64; 4] {
        self.t
    }

    /// `k = t0^2 + t3^2`.
    pub fn k(&self) -> f64 {
        self.t[0] * self.t[0] + self.t[3] * self.t[3]
    }

    /// `l = t1^2 + t2^2`.
    pub fn l(&self) -> f64 {
        self.t[1] * self.t[1] + self.t[2] * self.t[2]
    }

    /// `m = (t0 t1 + t2 t3)^2`.
    pub fn m(&self) -> f64 {
        let x = self.t[0] * self.t[1] + self.t[2] * self.t[3];
        x * x
    }

    pub fn unitary(&self) -> ComplexMatrix {
        let [t0, t1, t2, t3] = self.t;
        ComplexMatrix::new(2, alloc::vec![c(t0, t3), c(t2, t1), c(-t2, t1), c(t0, -t3)]).expect("2x2 unitary")
    }

    /// Columns `U|0>` and `U|1>`.
    pub fn basis_vectors(&self) -> [[Complex64; 2]; 2] {
        let [t0, t1, t2, t3] = self.t;
        [[c(t0, t3), c(-t2, t1)], [c(t2, t1), c(t0, -t3)]]
    }

    pub fn projectors(&self) -> [ComplexMatrix; 2] {
        self.basis_vectors().map(|v| ComplexMatrix::outer(&v).expect("qubit projector"))
    }

    /// Bloch vector of the outcome-0 projector.
    pub fn bloch_vector(&self) -> [f64; 3] {
        let [a, b] = self.basis_vectors()[0];
        let ab = a.conj() * b;
        [2.0 * ab.re, 2.0 * ab.im, a.norm_sqr() - b.norm_sqr()]
    }

    /// `(theta, phi)` of [`Self::bloch_vector`], `theta in [0, pi]`, `phi in [0, 2 pi)`.
    pub fn angles(&self) -> (f64, f64) {
        let [x, y, z] = self.bloch_vector();
        let theta = libm::acos(z.clamp(-1.0, 1.0));
        let mut phi = libm::atan2(y, x);
        if phi < 0.0 {
            phi += 2.0 * PI;
        }
        if phi >= 2.0 * PI {
            phi = 0.0;
        }
        (theta, phi)
    }

    /// Same projector pair with the outcome labels exchanged.
    pub fn swapped(&self) -> Self {
        let [t0, t1, t2, t3] = self.t;
        ProjectiveMeasurement { t: [t2, -t3, -t0, t1] }
    }
}

/// One measurement outcome; `state` is `None` when `probability <= 1e-14`.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub probability: f64,
    pub state: Option<DensityMatrix>,
}

/// Post-measurement ensemble `{(p_k, rho_k)}`.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementEnsemble {
    pub outcomes: Vec<Outcome>,
}

/// Selects which conditional entropy / mutual entropy pair defines the discord.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DiscordVariant {
    /// Escort-weighted conditional entropy and normalized mutual entropy (`D_q`).
    QExp,
    /// Ordinary expectation and additive mutual entropy (`D~_q`).
    Additive,
}

impl DiscordVariant {
    pub fn name(self) -> &'static str {
        match self {
            DiscordVariant::QExp => "qexp",
            DiscordVariant::Additive => "additive",
        }
    }
}

/// `rho_k = (I (x) Pi_k) rho (I (x) Pi_k) / p_k`, `p_k = Tr (I (x) Pi_k) rho`.
pub fn apply_measurement(rho: &DensityMatrix, pm: &ProjectiveMeasurement) -> Result<MeasurementEnsemble> {
    require_two_qubit(rho)?;
    let id = ComplexMatrix::identity(2);
    let mut outcomes = Vec::with_capacity(2);
    for proj in pm.projectors() {
        let lift = tensor_product(&id, &proj)?;
        let post = &(&lift * rho.matrix()) * &lift;
        let probability = post.trace().re;
        let state =
            if probability > ZERO_PROBABILITY { Some(validate_state(&post.scale(1.0 / probability))?) } else { None };
        outcomes.push(Outcome { probability: probability.max(0.0), state });
    }
    Ok(MeasurementEnsemble { outcomes })
}

/// Conditional entropy computed from an explicit ensemble of 4x4 states.
pub fn ensemble_conditional_entropy(ens: &MeasurementEnsemble, q: Rank, variant: DiscordVariant) -> f64 {
    let live =
        ens.outcomes.iter().filter_map(|o| o.state.as_ref().map(|s| (o.probability, tsallis_entropy_state(s, q))));
    weighted(live, q, variant)
}

fn weighted(live: impl Iterator<Item = (f64, f64)>, q: Rank, variant: DiscordVariant) -> f64 {
    match variant {
        DiscordVariant::Additive => live.map(|(p, t)| p * t).sum(),
        DiscordVariant::QExp => {
            let (num, den) = live.fold((0.0, 0.0), |(n, d), (p, t)| {
                let w = pow0(p, q.get());
                (n + w * t, d + w)
            });
            num / den
        }
    }
}

/// Probability and Bloch radius of the conditional A state for each outcome.
///
/// Since `rho_k` factorizes as `rho_{A|k} (x) |psi_k><psi_k|`, its spectrum is
/// `{(1 +- r_k)/2, 0, 0}`.
fn conditional_outcomes(rho: &ComplexMatrix, pm: &ProjectiveMeasurement) -> [(f64, f64); 2] {
    pm.basis_vectors().map(|psi| {
        let mut sigma = [[c(0.0, 0.0); 2]; 2];
        for (a, row) in sigma.iter_mut().enumerate() {
            for (a2, entry) in row.iter_mut().enumerate() {
                for b in 0..2 {
                    for b2 in 0..2 {
                        *entry += psi[b].conj() * rho[(2 * a + b, 2 * a2 + b2)] * psi[b2];
                    }
                }
            }
        }
        let (x, y, z) = (sigma[0][0].re, sigma[1][1].re, sigma[0][1]);
        let p = x + y;
        if p <= ZERO_PROBABILITY {
            return (0.0, 0.0);
        }
        let mut r = (libm::sqrt((x - y) * (x - y) + 4.0 * z.norm_sqr()) / p).min(1.0);
        if 1.0 - r <= crate::linalg::EIGEN_ZERO_SNAP {
            r = 1.0;
        }
        (p, r)
    })
}

#[derive(Debug, Clone, Copy)]
enum Conditional {
    Tsallis(Rank, DiscordVariant),
    VonNeumann,
}

fn conditional_value(rho: &ComplexMatrix, pm: &ProjectiveMeasurement, kind: Conditional) -> f64 {
    let outcomes = conditional_outcomes(rho, pm);
    let live = outcomes.into_iter().filter(|&(p, _)| p > ZERO_PROBABILITY);
    let spectrum = |r: f64| [(1.0 + r) / 2.0, (1.0 - r) / 2.0];
    match kind {
        Conditional::Tsallis(q, variant) => weighted(live.map(|(p, r)| (p, tsallis_of(&spectrum(r), q))), q, variant),
        Conditional::VonNeumann => live.map(|(p, r)| p * shannon_of(&spectrum(r))).sum(),
    }
}

/// `T_q(rho_AB | {Pi_k})` for the chosen construction.
pub fn measured_conditional_entropy(
    rho: &DensityMatrix,
    pm: &ProjectiveMeasurement,
    q: Rank,
    variant: DiscordVariant,
) -> Result<f64> {
    require_two_qubit(rho)?;
    Ok(conditional_value(rho.matrix(), pm, Conditional::Tsallis(q, variant)))
}

/// Result of the optimization over measurements.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassicalCorrelation {
    /// `T_q(A) - inf T_q(rho | Pi)`.
    pub value: f64,
    /// The minimal conditional entropy found.
    pub conditional_entropy: f64,
    pub measurement: ProjectiveMeasurement,
    pub converged: bool,
    pub evaluations: usize,
}

fn optimize_conditional(
    rho: &DensityMatrix,
    kind: Conditional,
    opt: &OptimizerConfig,
) -> (f64, ProjectiveMeasurement, bool, usize) {
    let m = rho.matrix();
    let best = minimize_on_sphere(
        |theta, phi| conditional_value(m, &ProjectiveMeasurement::from_bloch(theta, phi), kind),
        opt,
    );
    let pm = ProjectiveMeasurement::from_bloch(best.theta, best.phi);
    (best.value, pm, best.converged, best.evaluations)
}

/// Classical correlations: entropy of A minus the minimized measured conditional entropy.
pub fn classical_correlations(
    rho: &DensityMatrix,
    q: Rank,
    variant: DiscordVariant,
    opt: &OptimizerConfig,
) -> Result<ClassicalCorrelation> {
    require_two_qubit(rho)?;
    let t_a = tsallis_entropy_state(&partial_trace(rho, Subsystem::A)?, q);
    let (cond, measurement, converged, evaluations) = optimize_conditional(rho, Conditional::Tsallis(q, variant), opt);
    Ok(ClassicalCorrelation { value: t_a - cond, conditional_entropy: cond, measurement, converged, evaluations })
}

/// `value = mutual_part - classical_part`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiscordResult {
    pub value: f64,
    pub classical_part: f64,
    pub mutual_part: f64,
    pub optimal_measurement: ProjectiveMeasurement,
    pub evaluations: usize,
    pub converged: bool,
}

pub fn q_discord(
    rho: &DensityMatrix,
    q: Rank,
    variant: DiscordVariant,
    opt: &OptimizerConfig,
) -> Result<DiscordResult> {
    let mutual = quantum_mutual(rho, q)?;
    let mutual_part = match variant {
        DiscordVariant::QExp => mutual.qexp_variant,
        DiscordVariant::Additive => mutual.additive_variant,
    };
    let cc = classical_correlations(rho, q, variant, opt)?;
    Ok(DiscordResult {
        value: mutual_part - cc.value,
        classical_part: cc.value,
        mutual_part,
        optimal_measurement: cc.measurement,
        evaluations: cc.evaluations,
        converged: cc.converged,
    })
}

/// Standard (von Neumann) discord with measurement on B.
pub fn von_neumann_discord(rho: &DensityMatrix, opt: &OptimizerConfig) -> Result<DiscordResult> {
    let mutual_part = von_neumann_mutual(rho)?;
    let h_a = von_neumann_entropy(&partial_trace(rho, Subsystem::A)?);
    let (cond, pm, converged, evaluations) = optimize_conditional(rho, Conditional::VonNeumann, opt);
    let classical_part = h_a - cond;
    Ok(DiscordResult {
        value: mutual_part - classical_part,
        classical_part,
        mutual_part,
        optimal_measurement: pm,
        evaluations,
        converged,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closed_form::{make_circulant, make_werner, CirculantParams, WernerParam};

    fn q(x: f64) -> Rank {
        Rank::new(x).unwrap()
    }

    fn close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b}");
    }

    fn sample_measurements() -> Vec<ProjectiveMeasurement> {
        [[0.3, -0.5, 0.7, 0.2], [0.0, 1.0, 0.0, 0.0], [0.5, 0.5, 0.5, 0.5], [0.9, 0.1, -0.3, 0.2]]
            .iter()
            .map(|t| {
                let n = libm::sqrt(t.iter().map(|x| x * x).sum());
                ProjectiveMeasurement::from_t(t.map(|x| x / n)).unwrap()
            })
            .collect()
    }

    #[test]
    fn projector_algebra() {
        for pm in sample_measurements() {
            let [p0, p1] = pm.projectors();
            let id = ComplexMatrix::identity(2);
            assert!((&p0 + &p1).max_abs_diff(&id) < 1e-12);
            assert!((&p0 * &p0).max_abs_diff(&p0) < 1e-12);
            assert!((&p0 * &p1).max_abs_diff(&ComplexMatrix::zeros(2)) < 1e-12);
            close(pm.k() + pm.l(), 1.0, 1e-15);
            assert!(pm.m() >= 0.0 && pm.m() <= 0.25 + 1e-15);
            let u = pm.unitary();
            assert!((&u * &u.adjoint()).max_abs_diff(&id) < 1e-14);
        }
    }

    #[test]
    fn rejects_non_unit_parameters() {
        assert!(matches!(ProjectiveMeasurement::from_t([1.0, 1.0, 0.0, 0.0]), Err(Error::InvalidMeasurement { .. })));
    }

    #[test]
    fn bloch_round_trip() {
        let pm = ProjectiveMeasurement::from_bloch(1.1, 4.0);
        let (t, p) = pm.angles();
        close(t, 1.1, 1e-14);
        close(p, 4.0, 1e-14);
        let [x, y, z] = pm.bloch_vector();
        close(pm.m(), y * y / 4.0, 1e-15);
        close(pm.k() - pm.l(), z, 1e-15);
        close(x * x + y * y + z * z, 1.0, 1e-15);
    }

    #[test]
    fn swapped_exchanges_projectors() {
        for pm in sample_measurements() {
            let [a0, a1] = pm.projectors();
            let [b0, b1] = pm.swapped().projectors();
            assert!(a0.max_abs_diff(&b1) < 1e-14);
            assert!(a1.max_abs_diff(&b0) < 1e-14);
        }
    }

    #[test]
    fn werner_computational_measurement() {
        let rho = make_werner(WernerParam::new(0.3).unwrap());
        let ens = apply_measurement(&rho, &ProjectiveMeasurement::computational()).unwrap();
        close(ens.outcomes[0].probability, 0.5, 1e-15);
        close(ens.outcomes[1].probability, 0.5, 1e-15);
    }

    #[test]
    fn measurement_eigenstate_of_product() {
        let mut ra = ComplexMatrix::zeros(2);
        ra[(0, 0)] = c(0.35, 0.0);
        ra[(1, 1)] = c(0.65, 0.0);
        ra[(0, 1)] = c(0.2, 0.1);
        ra[(1, 0)] = c(0.2, -0.1);
        let zero = ComplexMatrix::from_real_diagonal(&[1.0, 0.0]).unwrap();
        let rho = validate_state(&tensor_product(&ra, &zero).unwrap()).unwrap();
        let ens = apply_measurement(&rho, &ProjectiveMeasurement::computational()).unwrap();
        close(ens.outcomes[0].probability, 1.0, 1e-15);
        assert!(ens.outcomes[1].state.is_none());
        assert!(ens.outcomes[0].state.as_ref().unwrap().matrix().max_abs_diff(rho.matrix()) < 1e-15);
        for variant in [DiscordVariant::QExp, DiscordVariant::Additive] {
            let pa = validate_state(&ra).unwrap();
            for pm in sample_measurements() {
                close(
                    measured_conditional_entropy(&rho, &pm, q(1.7), variant).unwrap(),
                    tsallis_entropy_state(&pa, q(1.7)),
                    1e-13,
                );
            }
        }
    }

    #[test]
    fn circulant_probabilities_match_normalized_formula() {
        let (e, g) = (0.4, 0.7);
        let rho = make_circulant(CirculantParams::new(e, g).unwrap()).unwrap();
        let norm = 2.0 + e + 1.0 / e;
        for pm in sample_measurements() {
            let ens = apply_measurement(&rho, &pm).unwrap();
            let (k, l) = (pm.k(), pm.l());
            close(ens.outcomes[0].probability, ((1.0 + 1.0 / e) * k + (1.0 + e) * l) / norm, 1e-14);
            close(ens.outcomes[1].probability, ((1.0 + 1.0 / e) * l + (1.0 + e) * k) / norm, 1e-14);
        }
    }

    #[test]
    fn fast_path_matches_full_ensemble() {
        let rho = make_circulant(CirculantParams::new(0.3, 0.8).unwrap()).unwrap();
        for pm in sample_measurements() {
            let ens = apply_measurement(&rho, &pm).unwrap();
            for variant in [DiscordVariant::QExp, DiscordVariant::Additive] {
                for qq in [0.5, 2.0, 3.0] {
                    close(
                        measured_conditional_entropy(&rho, &pm, q(qq), variant).unwrap(),
                        ensemble_conditional_entropy(&ens, q(qq), variant),
                        1e-13,
                    );
                }
            }
        }
    }

    #[test]
    fn werner_conditional_entropy_is_measurement_independent() {
        let lambda: f64 = 0.8;
        let rho = make_werner(WernerParam::new(lambda).unwrap());
        let qq = 1.3;
        let expected = (1.0 - libm::pow((2.0 - lambda) / 3.0, qq) - libm::pow((1.0 + lambda) / 3.0, qq)) / (qq - 1.0);
        for pm in sample_measurements() {
            for variant in [DiscordVariant::QExp, DiscordVariant::Additive] {
                close(measured_conditional_entropy(&rho, &pm, q(qq), variant).unwrap(), expected, 1e-14);
            }
        }
    }

    #[test]
    fn circulant_computational_basis_case() {
        let e: f64 = 0.35;
        let rho = make_circulant(CirculantParams::new(e, 0.6).unwrap()).unwrap();
        let pm = ProjectiveMeasurement::from_t([0.0, 1.0, 0.0, 0.0]).unwrap();
        assert_eq!((pm.k(), pm.l(), pm.m()), (0.0, 1.0, 0.0));
        let expected = 1.0 - (e * e + 1.0) / ((e + 1.0) * (e + 1.0));
        close(measured_conditional_entropy(&rho, &pm, q(2.0), DiscordVariant::QExp).unwrap(), expected, 1e-14);
    }

    #[test]
    fn product_and_classical_states_have_zero_discord() {
        let mut ra = ComplexMatrix::zeros(2);
        ra[(0, 0)] = c(0.35, 0.0);
        ra[(1, 1)] = c(0.65, 0.0);
        ra[(0, 1)] = c(0.2, 0.1);
        ra[(1, 0)] = c(0.2, -0.1);
        let mut rb = ComplexMatrix::zeros(2);
        rb[(0, 0)] = c(0.8, 0.0);
        rb[(1, 1)] = c(0.2, 0.0);
        rb[(0, 1)] = c(0.0, 0.3);
        rb[(1, 0)] = c(0.0, -0.3);
        let rho = validate_state(&tensor_product(&ra, &rb).unwrap()).unwrap();
        let opt = OptimizerConfig::quick();
        let ta = tsallis_entropy_state(&validate_state(&ra).unwrap(), q(2.5));
        let tb = tsallis_entropy_state(&validate_state(&rb).unwrap(), q(2.5));
        for variant in [DiscordVariant::QExp, DiscordVariant::Additive] {
            let d = q_discord(&rho, q(2.5), variant, &opt).unwrap();
            close(d.classical_part, 0.0, 1e-9);
            close(d.value, d.mutual_part - d.classical_part, 1e-12);
            // the additive mutual entropy of a product is (q-1) T_A T_B, not 0
            let expected = match variant {
                DiscordVariant::QExp => 0.0,
                DiscordVariant::Additive => 1.5 * ta * tb,
            };
            close(d.value, expected, 1e-9);
        }
        close(von_neumann_discord(&rho, &opt).unwrap().value, 0.0, 1e-9);

        let classical = validate_state(&ComplexMatrix::from_real_diagonal(&[0.5, 0.0, 0.0, 0.5]).unwrap()).unwrap();
        let d = von_neumann_discord(&classical, &opt).unwrap();
        close(d.value, 0.0, 1e-9);
        close(d.mutual_part, core::f64::consts::LN_2, 1e-12);
    }

    #[test]
    fn single_qubit_input_rejected() {
        let rho = DensityMatrix::maximally_mixed(2);
        assert!(apply_measurement(&rho, &ProjectiveMeasurement::computational()).is_err());
        assert!(q_discord(&rho, q(2.0), DiscordVariant::QExp, &OptimizerConfig::quick()).is_err());
    }
}
