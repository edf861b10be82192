//! Werner, isotropic and circulant `(epsilon, g)` two-qubit families with
//! their analytic entropies, classical correlations and q-discords.
//!
//! These expressions are independent of the measurement optimizer and serve
//! as oracles for it.

use alloc::vec;

use crate::classical::{pow0, qexp_mutual_from_entropies, Rank};
use crate::error::{Error, Result};
use crate::linalg::{c, flip_operator, validate_state, ComplexMatrix, DensityMatrix};

/// Tolerance for clamping slightly negative radicands.
const RADICAND_TOL: f64 = 1e-12;

#[inline]
fn sq(x: f64) -> f64 {
    x * x
}

fn check_unit(name: &'static str, value: f64) -> Result<f64> {
    if (0.0..=1.0).contains(&value) {
        Ok(value)
    } else {
        Err(Error::InvalidParameter { name, value })
    }
}

/// Werner mixing parameter `lambda in [0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WernerParam(f64);

impl WernerParam {
    pub fn new(lambda: f64) -> Result<Self> {
        check_unit("lambda", lambda).map(WernerParam)
    }

    pub fn lambda(self) -> f64 {
        self.0
    }
}

/// Isotropic weight `lambda in [0, 1]` on the Bell projector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IsotropicParam(f64);

impl IsotropicParam {
    pub fn new(lambda: f64) -> Result<Self> {
        check_unit("lambda", lambda).map(IsotropicParam)
    }

    pub fn lambda(self) -> f64 {
        self.0
    }
}

/// Circulant-state parameters, `0 < epsilon <= 1`, `0 <= g <= 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CirculantParams {
    epsilon: f64,
    g: f64,
}

impl CirculantParams {
    pub fn new(epsilon: f64, g: f64) -> Result<Self> {
        if !(epsilon > 0.0 && epsilon <= 1.0) {
            return Err(Error::InvalidParameter { name: "epsilon", value: epsilon });
        }
        Ok(CirculantParams { epsilon, g: check_unit("g", g)? })
    }

    pub fn epsilon(self) -> f64 {
        self.epsilon
    }

    pub fn g(self) -> f64 {
        self.g
    }

    /// `2 + epsilon + 1/epsilon`.
    fn norm(self) -> f64 {
        2.0 + self.epsilon + 1.0 / self.epsilon
    }
}

/// `rho_W = [(2 - lambda) I + (2 lambda - 1) F] / 6`.
pub fn make_werner(p: WernerParam) -> DensityMatrix {
    let l = p.lambda();
    let m = &ComplexMatrix::identity(4).scale((2.0 - l) / 6.0) + &flip_operator().scale((2.0 * l - 1.0) / 6.0);
    validate_state(&m).expect("Werner state is valid for lambda in [0, 1]")
}

/// `rho_iso = lambda P+ + (1 - lambda)/3 (I - P+)`, `P+ = |psi+><psi+|`.
pub fn make_isotropic(p: IsotropicParam) -> DensityMatrix {
    let l = p.lambda();
    let h = core::f64::consts::FRAC_1_SQRT_2;
    let bell = ComplexMatrix::outer(&[c(h, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(h, 0.0)]).expect("4-vector");
    let rest = &ComplexMatrix::identity(4) - &bell;
    let m = &bell.scale(l) + &rest.scale((1.0 - l) / 3.0);
    validate_state(&m).expect("isotropic state is valid for lambda in [0, 1]")
}

/// The X-shaped circulant state with outer `|00>,|11>` block of ones and inner
/// block `[[epsilon, g], [g, 1/epsilon]]`, normalized by `2 + epsilon + 1/epsilon`.
pub fn make_circulant(p: CirculantParams) -> Result<DensityMatrix> {
    let (e, g) = (p.epsilon, p.g);
    let s = 1.0 / p.norm();
    let r = |x: f64| c(x * s, 0.0);
    let z = c(0.0, 0.0);
    let data = vec![r(1.0), z, z, r(1.0), z, r(e), r(g), z, z, r(g), r(1.0 / e), z, r(1.0), z, z, r(1.0)];
    validate_state(&ComplexMatrix::new(4, data)?)
}

/// `f_q(x) = [1 - ((1+x)/2)^q - ((1-x)/2)^q] / (q - 1)`: Tsallis entropy of a
/// qubit with Bloch radius `|x|`.
pub fn f_q(x: f64, q: Rank) -> f64 {
    let q = q.get();
    (1.0 - pow0((1.0 + x) / 2.0, q) - pow0((1.0 - x) / 2.0, q)) / (q - 1.0)
}

fn tsallis_sum(q: Rank, weights: &[(f64, f64)]) -> f64 {
    // weights: (multiplicity, eigenvalue)
    let s: f64 = weights.iter().map(|&(mult, x)| mult * pow0(x, q.get())).sum();
    (1.0 - s) / (q.get() - 1.0)
}

/// Analytic quantities of a Werner state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WernerClosedForms {
    pub t_a: f64,
    pub t_ab: f64,
    /// Classical correlations (identical for both variants).
    pub classical: f64,
    pub mutual_additive: f64,
    pub mutual_qexp: f64,
    pub discord_additive: f64,
    pub discord_qexp: f64,
}

pub fn werner_closed_forms(p: WernerParam, q: Rank) -> WernerClosedForms {
    let l = p.lambda();
    let qq = q.get();
    let pw = |x: f64| pow0(x, qq);
    let inv = 1.0 / (qq - 1.0);
    let two_1mq = libm::pow(2.0, 1.0 - qq);

    let t_a = inv * (1.0 - two_1mq);
    let t_ab = inv * (1.0 - 3.0 * pw((1.0 + l) / 6.0) - pw((1.0 - l) / 2.0));
    let classical = inv * (pw((2.0 - l) / 3.0) + pw((1.0 + l) / 3.0) - two_1mq);
    let mutual_additive = inv * (1.0 - libm::pow(2.0, 2.0 - qq) + pw((1.0 - l) / 2.0) + 3.0 * pw((1.0 + l) / 6.0));
    let mutual_qexp = inv * (0.5 * pw(1.0 - l) + 1.5 * pw((1.0 + l) / 3.0) - two_1mq);
    let discord_additive = inv
        * (1.0 - two_1mq + pw((1.0 - l) / 2.0) + 3.0 * pw((1.0 + l) / 6.0) - pw((2.0 - l) / 3.0) - pw((1.0 + l) / 3.0));
    let discord_qexp = inv * (0.5 * pw(1.0 - l) + 0.5 * pw((1.0 + l) / 3.0) - pw((2.0 - l) / 3.0));
    WernerClosedForms { t_a, t_ab, classical, mutual_additive, mutual_qexp, discord_additive, discord_qexp }
}

/// Analytic quantities of an isotropic state.
///
/// `t_a`, `t_ab`, `classical` and the mutual entropies follow from the
/// spectra `{lambda, (1-lambda)/3 x3}` and `{(1+2 lambda)/3, (2-2 lambda)/3}`
/// of the state and of every conditional state; the two discords are the
/// standalone closed forms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IsotropicClosedForms {
    pub t_a: f64,
    pub t_ab: f64,
    pub classical: f64,
    pub mutual_additive: f64,
    pub mutual_qexp: f64,
    pub discord_additive: f64,
    pub discord_qexp: f64,
}

pub fn isotropic_closed_forms(p: IsotropicParam, q: Rank) -> IsotropicClosedForms {
    let l = p.lambda();
    let qq = q.get();
    let pw = |x: f64| pow0(x, qq);
    let inv = 1.0 / (qq - 1.0);
    let two_1mq = libm::pow(2.0, 1.0 - qq);

    let t_a = inv * (1.0 - two_1mq);
    let t_ab = tsallis_sum(q, &[(1.0, l), (3.0, (1.0 - l) / 3.0)]);
    let classical = inv * (pw((1.0 + 2.0 * l) / 3.0) + pw((2.0 - 2.0 * l) / 3.0) - two_1mq);
    let mutual_additive = 2.0 * t_a - t_ab;
    let mutual_qexp = qexp_mutual_from_entropies(t_a, t_a, t_ab, q).expect("normalizer 2^(1-q) > 0");
    let discord_additive = inv
        * (1.0 - two_1mq + 3.0 * pw((1.0 - l) / 3.0) + pw(l) - pw((2.0 - 2.0 * l) / 3.0) - pw((1.0 + 2.0 * l) / 3.0));
    let discord_qexp = inv * (0.5 * pw((2.0 - 2.0 * l) / 3.0) + 0.5 * pw(2.0 * l) - pw((1.0 + 2.0 * l) / 3.0));
    IsotropicClosedForms { t_a, t_ab, classical, mutual_additive, mutual_qexp, discord_additive, discord_qexp }
}

/// Spectral data of a circulant state and of the post-measurement states for
/// a measurement with invariants `(k, l, m)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CirculantAnalytics {
    /// `(lambda_0, lambda_1, lambda_+, lambda_-)` with `lambda_0 = 0`.
    pub eigenvalues: [f64; 4],
    /// `(mu_1, mu_2)`, the spectrum of either reduction.
    pub reduced_spectrum: [f64; 2],
    /// Outcome probabilities `(p_0, p_1)`, normalized.
    pub probabilities: [f64; 2],
    /// `Spec(rho_0) = {(1 +- theta)/2}`.
    pub theta: f64,
    /// `Spec(rho_1) = {(1 +- theta')/2}`.
    pub theta_prime: f64,
    /// q-expectation conditional entropy `(p0^q f_q(theta) + p1^q f_q(theta')) / (p0^q + p1^q)`.
    pub conditional_entropy: f64,
}

fn clamped_sqrt(x: f64) -> Result<f64> {
    if x >= 0.0 {
        Ok(libm::sqrt(x))
    } else if x >= -RADICAND_TOL {
        Ok(0.0)
    } else {
        Err(Error::Domain("negative radicand in circulant formula"))
    }
}

/// `(lambda_0, lambda_1, lambda_+, lambda_-)`.
pub fn circulant_eigenvalues(p: CirculantParams) -> Result<[f64; 4]> {
    let (plus, minus) = inner_block_roots(p)?;
    let d = 1.0 / sq(1.0 + p.epsilon);
    Ok([0.0, 2.0 * p.epsilon * d, plus * d, minus * d])
}

/// `(1 + e^2 +- sqrt(e^4 + 2(2g^2 - 1)e^2 + 1)) / 2`, the minus branch written
/// as `2 e^2 (1 - g^2) / (1 + e^2 + sqrt(..))` so it is exactly 0 at `g = 1`.
fn inner_block_roots(p: CirculantParams) -> Result<(f64, f64)> {
    let (e, g) = (p.epsilon, p.g);
    let root = clamped_sqrt(sq(e * e) + 2.0 * (2.0 * g * g - 1.0) * e * e + 1.0)?;
    let sum = 1.0 + e * e;
    Ok((0.5 * (sum + root), 2.0 * e * e * (1.0 - g * g) / (sum + root)))
}

pub fn circulant_reduced_spectrum(p: CirculantParams) -> [f64; 2] {
    let e = p.epsilon;
    [(1.0 + e) / p.norm(), (1.0 + 1.0 / e) / p.norm()]
}

pub fn circulant_analytics(p: CirculantParams, q: Rank, k: f64, l: f64, m: f64) -> Result<CirculantAnalytics> {
    if !((k + l - 1.0).abs() <= 1e-12 && (-1e-15..=1.0 + 1e-15).contains(&k)) {
        return Err(Error::InvalidParameter { name: "k", value: k });
    }
    if !((-1e-15..=0.25 + 1e-15).contains(&m)) {
        return Err(Error::InvalidParameter { name: "m", value: m });
    }
    let (e, g) = (p.epsilon, p.g);
    let ei = 1.0 / e;
    let shared = 4.0 * k * l * (1.0 + g) * (1.0 + g) - 16.0 * m * g;

    let den0 = (1.0 + ei) * k + (1.0 + e) * l;
    let den1 = (1.0 + ei) * l + (1.0 + e) * k;
    let num0 = sq((1.0 - ei) * k + (e - 1.0) * l) + shared;
    let num1 = sq((1.0 - ei) * l + (e - 1.0) * k) + shared;
    let theta = clamped_sqrt(num0 / (den0 * den0))?;
    let theta_prime = clamped_sqrt(num1 / (den1 * den1))?;

    let p0 = den0 / p.norm();
    let p1 = den1 / p.norm();
    let (w0, w1) = (pow0(p0, q.get()), pow0(p1, q.get()));
    let conditional_entropy = (w0 * f_q(theta, q) + w1 * f_q(theta_prime, q)) / (w0 + w1);

    Ok(CirculantAnalytics {
        eigenvalues: circulant_eigenvalues(p)?,
        reduced_spectrum: circulant_reduced_spectrum(p),
        probabilities: [p0, p1],
        theta,
        theta_prime,
        conditional_entropy,
    })
}

/// Candidate measurements for the minimal conditional entropy of a circulant state.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InfimumCase {
    /// `k = 0` or `k = 1` (computational basis), `theta = |epsilon - 1|/(epsilon + 1)`.
    Computational,
    /// `k = l = 1/2`, `m = 0`, radicand with `(1 + g)^2`.
    EquatorSymmetric,
    /// `k = l = 1/2`, `m = 1/4`, radicand with `(1 - g)^2`.
    EquatorAntisymmetric,
}

/// Analytic q-expectation discord of a circulant state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CirculantClosedForms {
    pub t_a: f64,
    pub t_ab: f64,
    /// Normalized mutual entropy, evaluated from the explicit display formula.
    pub mutual_qexp: f64,
    /// `T_q(A) - f_q(theta_max)` with the `(1 + g)^2` radicand.
    pub classical_qexp: f64,
    pub discord_qexp: f64,
    /// Which candidate measurement attains the smallest conditional entropy.
    pub infimum_case: InfimumCase,
    /// Conditional entropies of the three candidates, in [`InfimumCase`] order.
    pub candidate_entropies: [f64; 3],
}

pub fn circulant_closed_forms(p: CirculantParams, q: Rank) -> Result<CirculantClosedForms> {
    let (e, g) = (p.epsilon, p.g);
    let qq = q.get();
    let [mu1, mu2] = circulant_reduced_spectrum(p);
    let t_a = (1.0 - pow0(mu1, qq) - pow0(mu2, qq)) / (qq - 1.0);
    let eig = circulant_eigenvalues(p)?;
    let t_ab = (1.0 - eig.iter().map(|&x| pow0(x, qq)).sum::<f64>()) / (qq - 1.0);

    let (plus, minus) = inner_block_roots(p)?;
    let eq = libm::pow(e, qq);
    let mutual_qexp = (eq * (libm::pow(2.0, qq) - eq - 2.0) - 1.0 + pow0(plus, qq) + pow0(minus, qq))
        / ((qq - 1.0) * (1.0 + eq) * libm::pow(1.0 + e, qq));

    let ei = 1.0 / e;
    let computational = (e - 1.0) / (e + 1.0);
    let symmetric = libm::sqrt(sq(e - ei) + 4.0 * sq(1.0 + g)) / p.norm();
    let antisymmetric = libm::sqrt(sq(e - ei) + 4.0 * sq(1.0 - g)) / p.norm();
    let candidate_entropies = [f_q(computational, q), f_q(symmetric, q), f_q(antisymmetric, q)];
    let cases = [InfimumCase::Computational, InfimumCase::EquatorSymmetric, InfimumCase::EquatorAntisymmetric];
    let mut best = 0;
    for i in 1..3 {
        if candidate_entropies[i] < candidate_entropies[best] {
            best = i;
        }
    }

    let classical_qexp = t_a - f_q(symmetric, q);
    Ok(CirculantClosedForms {
        t_a,
        t_ab,
        mutual_qexp,
        classical_qexp,
        discord_qexp: mutual_qexp - classical_qexp,
        infimum_case: cases[best],
        candidate_entropies,
    })
}

/// `x^q + y^q - 2 ((x + y)/2)^q`: nonnegative for `q >= 1`, nonpositive for `0 < q < 1`.
pub fn power_mean_gap(x: f64, y: f64, q: f64) -> f64 {
    let n = x + y;
    pow0(x, q) + pow0(y, q) - 2.0 * pow0(n / 2.0, q)
}

/// `(3(1-lambda)/(2-lambda))^q + ((1+lambda)/(2-lambda))^q - 2`, whose sign
/// times `sign(q - 1)` is the sign of the Werner q-expectation discord.
pub fn werner_nonnegativity_witness(p: WernerParam, q: Rank) -> f64 {
    let l = p.lambda();
    let qq = q.get();
    pow0(3.0 * (1.0 - l) / (2.0 - l), qq) + pow0((1.0 + l) / (2.0 - l), qq) - 2.0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{eigendecompose_hermitian, partial_trace, Subsystem};
    use crate::quantum::{quantum_mutual, tsallis_entropy_state};

    fn q(x: f64) -> Rank {
        Rank::new(x).unwrap()
    }

    fn close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b}");
    }

    fn assert_spectrum(rho: &DensityMatrix, expected: &[f64]) {
        for (a, b) in rho.eigenvalues().iter().zip(expected) {
            close(*a, *b, 1e-14);
        }
    }

    #[test]
    fn parameter_ranges() {
        assert!(WernerParam::new(1.1).is_err());
        assert!(IsotropicParam::new(-0.1).is_err());
        assert!(CirculantParams::new(0.0, 0.5).is_err());
        assert!(CirculantParams::new(1.0, 1.5).is_err());
        assert!(CirculantParams::new(1.0, 1.0).is_ok());
    }

    #[test]
    fn werner_states() {
        let half = make_werner(WernerParam::new(0.5).unwrap());
        assert!(half.matrix().max_abs_diff(&ComplexMatrix::identity(4).scale(0.25)) < 1e-16);
        assert_spectrum(&make_werner(WernerParam::new(0.0).unwrap()), &[0.5, 1.0 / 6.0, 1.0 / 6.0, 1.0 / 6.0]);
        for l in [0.0, 0.3, 1.0] {
            let rho = make_werner(WernerParam::new(l).unwrap());
            close(rho.matrix().trace().re, 1.0, 1e-15);
            for s in [Subsystem::A, Subsystem::B] {
                let red = partial_trace(&rho, s).unwrap();
                assert!(red.matrix().max_abs_diff(&ComplexMatrix::identity(2).scale(0.5)) < 1e-15);
            }
        }
    }

    #[test]
    fn isotropic_states() {
        let quarter = make_isotropic(IsotropicParam::new(0.25).unwrap());
        assert!(quarter.matrix().max_abs_diff(&ComplexMatrix::identity(4).scale(0.25)) < 1e-16);
        let bell = make_isotropic(IsotropicParam::new(1.0).unwrap());
        assert_spectrum(&bell, &[1.0, 0.0, 0.0, 0.0]);
        close(bell.matrix()[(0, 3)].re, 0.5, 1e-15);
        assert_spectrum(&make_isotropic(IsotropicParam::new(0.0).unwrap()), &[1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0, 0.0]);
    }

    #[test]
    fn circulant_states() {
        let s11 = make_circulant(CirculantParams::new(1.0, 1.0).unwrap()).unwrap();
        assert_spectrum(&s11, &[0.5, 0.5, 0.0, 0.0]);
        let s10 = make_circulant(CirculantParams::new(1.0, 0.0).unwrap()).unwrap();
        assert_spectrum(&s10, &[0.5, 0.25, 0.25, 0.0]);
        let s = make_circulant(CirculantParams::new(0.37, 0.61).unwrap()).unwrap();
        close(s.matrix().trace().re, 1.0, 1e-15);
    }

    #[test]
    fn circulant_reduction_matches_mu() {
        let p = CirculantParams::new(0.4, 0.2).unwrap();
        let rho = make_circulant(p).unwrap();
        let red = partial_trace(&rho, Subsystem::A).unwrap();
        let [mu1, mu2] = circulant_reduced_spectrum(p);
        close(red.matrix()[(0, 0)].re, mu1, 1e-15);
        close(red.matrix()[(1, 1)].re, mu2, 1e-15);
        close(red.matrix()[(0, 1)].norm_sqr(), 0.0, 0.0);
    }

    #[test]
    fn werner_examples() {
        let f = werner_closed_forms(WernerParam::new(0.5).unwrap(), q(2.0));
        close(f.discord_qexp, 0.0, 1e-15);
        let f = werner_closed_forms(WernerParam::new(1.0).unwrap(), q(2.0));
        close(f.discord_qexp, 1.0 / 9.0, 1e-15);
        let f = werner_closed_forms(WernerParam::new(0.0).unwrap(), q(2.0));
        close(f.t_ab, 2.0 / 3.0, 1e-15);
        close(f.mutual_additive, 1.0 / 3.0, 1e-15);
    }

    #[test]
    fn werner_forms_are_consistent() {
        for l in [0.0, 0.13, 0.5, 0.77, 1.0] {
            for qq in [0.1, 0.5, 1.2, 2.0, 5.0] {
                let f = werner_closed_forms(WernerParam::new(l).unwrap(), q(qq));
                close(f.discord_qexp, f.mutual_qexp - f.classical, 1e-12);
                close(f.discord_additive, f.mutual_additive - f.classical, 1e-12);
                close(f.mutual_additive, 2.0 * f.t_a - f.t_ab, 1e-12);
                let rho = make_werner(WernerParam::new(l).unwrap());
                close(f.t_ab, tsallis_entropy_state(&rho, q(qq)), 1e-12);
                close(f.mutual_qexp, quantum_mutual(&rho, q(qq)).unwrap().qexp_variant, 1e-12);
            }
        }
    }

    #[test]
    fn isotropic_examples() {
        for qq in [0.1, 0.5, 2.0, 5.0] {
            close(isotropic_closed_forms(IsotropicParam::new(0.25).unwrap(), q(qq)).discord_qexp, 0.0, 1e-15);
        }
        close(isotropic_closed_forms(IsotropicParam::new(1.0).unwrap(), q(2.0)).discord_qexp, 1.0, 1e-15);
        close(isotropic_closed_forms(IsotropicParam::new(0.0).unwrap(), q(2.0)).discord_qexp, 1.0 / 9.0, 1e-15);
    }

    #[test]
    fn isotropic_forms_are_consistent() {
        for l in [0.0, 0.1, 0.25, 0.6, 1.0] {
            for qq in [0.1, 0.5, 1.2, 2.0, 5.0] {
                let f = isotropic_closed_forms(IsotropicParam::new(l).unwrap(), q(qq));
                close(f.discord_qexp, f.mutual_qexp - f.classical, 1e-12);
                close(f.discord_additive, f.mutual_additive - f.classical, 1e-12);
                let rho = make_isotropic(IsotropicParam::new(l).unwrap());
                close(f.t_ab, tsallis_entropy_state(&rho, q(qq)), 1e-12);
            }
        }
    }

    #[test]
    fn analytics_examples() {
        let a = circulant_analytics(CirculantParams::new(1.0, 1.0).unwrap(), q(2.0), 0.5, 0.5, 0.0).unwrap();
        close(a.theta, 1.0, 1e-15);
        let a = circulant_analytics(CirculantParams::new(1.0, 0.0).unwrap(), q(2.0), 0.5, 0.5, 0.0).unwrap();
        close(a.theta, 0.5, 1e-15);
        let e = 0.3;
        let a = circulant_analytics(CirculantParams::new(e, 0.4).unwrap(), q(2.0), 0.0, 1.0, 0.0).unwrap();
        close(a.theta, (1.0 - e) / (1.0 + e), 1e-15);
        close(a.theta_prime, (1.0 - e) / (1.0 + e), 1e-15);
        close(a.probabilities[0] + a.probabilities[1], 1.0, 1e-15);
        assert!(circulant_analytics(CirculantParams::new(e, 0.4).unwrap(), q(2.0), 0.5, 0.6, 0.0).is_err());
        assert!(circulant_analytics(CirculantParams::new(e, 0.4).unwrap(), q(2.0), 0.5, 0.5, 0.3).is_err());
    }

    #[test]
    fn analytics_invariants_on_grid() {
        for i in 1..=20 {
            for j in 0..20 {
                let p = CirculantParams::new(i as f64 / 20.0, j as f64 / 19.0).unwrap();
                let eig = circulant_eigenvalues(p).unwrap();
                close(eig[0], 0.0, 0.0);
                close(eig.iter().sum::<f64>(), 1.0, 1e-12);
                let mu = circulant_reduced_spectrum(p);
                close(mu[0] + mu[1], 1.0, 1e-12);
                let num = eigendecompose_hermitian(make_circulant(p).unwrap().matrix(), false).unwrap();
                let mut sorted = eig;
                sorted.sort_by(|a, b| b.total_cmp(a));
                for (x, y) in num.eigenvalues.iter().zip(&sorted) {
                    close(*x, *y, 1e-10);
                }
                let a = circulant_analytics(p, q(2.0), 0.3, 0.7, 0.1).unwrap();
                assert!((0.0..=1.0).contains(&a.theta) && (0.0..=1.0).contains(&a.theta_prime));
            }
        }
    }

    #[test]
    fn closed_form_examples() {
        let f = circulant_closed_forms(CirculantParams::new(1.0, 1.0).unwrap(), q(2.0)).unwrap();
        close(f.mutual_qexp, 0.5, 1e-15);
        close(f.classical_qexp, 0.5, 1e-15);
        close(f.discord_qexp, 0.0, 1e-15);
        let f = circulant_closed_forms(CirculantParams::new(1.0, 0.0).unwrap(), q(2.0)).unwrap();
        close(f.mutual_qexp, 0.25, 1e-15);
        close(f.classical_qexp, 0.125, 1e-15);
        close(f.discord_qexp, 0.125, 1e-15);
    }

    #[test]
    fn display_mutual_matches_entropy_route() {
        for &(e, g) in &[(0.2, 0.3), (0.7, 1.0), (1.0, 0.5), (0.05, 0.0)] {
            for qq in [0.5, 1.75, 3.0] {
                let p = CirculantParams::new(e, g).unwrap();
                let f = circulant_closed_forms(p, q(qq)).unwrap();
                let from_entropies = qexp_mutual_from_entropies(f.t_a, f.t_a, f.t_ab, q(qq)).unwrap();
                close(f.mutual_qexp, from_entropies, 1e-13);
                let rho = make_circulant(p).unwrap();
                close(f.mutual_qexp, quantum_mutual(&rho, q(qq)).unwrap().qexp_variant, 1e-12);
            }
        }
    }

    #[test]
    fn negative_discord_at_fig3_parameters() {
        let min = (1..=200)
            .map(|i| {
                circulant_closed_forms(CirculantParams::new(i as f64 / 200.0, 0.5).unwrap(), q(1.75))
                    .unwrap()
                    .discord_qexp
            })
            .fold(f64::INFINITY, f64::min);
        assert!(min < 0.0, "{min}");
    }

    #[test]
    fn power_mean_gap_examples() {
        for qq in [0.3, 1.0, 2.0] {
            close(power_mean_gap(1.0, 1.0, qq), 0.0, 1e-15);
        }
        close(power_mean_gap(2.0, 0.0, 2.0), 2.0, 1e-15);
        close(power_mean_gap(2.0, 0.0, 0.5), libm::sqrt(2.0) - 2.0, 1e-15);
    }

    #[test]
    fn witness_examples() {
        for qq in [0.2, 3.0] {
            close(werner_nonnegativity_witness(WernerParam::new(0.5).unwrap(), q(qq)), 0.0, 1e-15);
        }
        close(werner_nonnegativity_witness(WernerParam::new(0.0).unwrap(), q(2.0)), 0.5, 1e-15);
        let w = werner_nonnegativity_witness(WernerParam::new(1.0).unwrap(), q(0.5));
        close(w, libm::sqrt(2.0) - 2.0, 1e-15);
    }

    #[test]
    fn witness_sign_tracks_discord() {
        for i in 0..=20 {
            let p = WernerParam::new(i as f64 / 20.0).unwrap();
            for qq in [0.1, 0.5, 1.2, 2.0, 5.0] {
                let w = werner_nonnegativity_witness(p, q(qq));
                let expected_sign = if qq > 1.0 { 1.0 } else { -1.0 };
                assert!(w * expected_sign >= -1e-12, "lambda {} q {qq}: {w}", p.lambda());
                assert!(werner_closed_forms(p, q(qq)).discord_qexp >= -1e-12);
            }
        }
    }

    #[test]
    fn f_q_is_decreasing() {
        for qq in [0.1, 0.5, 1.2, 1.75, 3.0, 7.0] {
            let mut prev = f_q(0.0, q(qq));
            for i in 1..=1000 {
                let cur = f_q(i as f64 / 1000.0, q(qq));
                assert!(cur - prev <= 1e-10, "q {qq} at {i}");
                prev = cur;
            }
        }
    }

    #[test]
    fn candidate_ordering() {
        for i in 1..=20 {
            for j in 0..=20 {
                let p = CirculantParams::new(i as f64 / 20.0, j as f64 / 20.0).unwrap();
                for qq in [0.5, 1.2, 2.0] {
                    let f = circulant_closed_forms(p, q(qq)).unwrap();
                    let [comp, sym, anti] = f.candidate_entropies;
                    assert!(sym <= anti + 1e-14 && anti <= comp + 1e-14);
                    assert!(f.candidate_entropies[0] >= f.candidate_entropies[1] - 1e-14);
                }
            }
        }
    }
}
