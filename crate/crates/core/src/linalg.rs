//! Dense complex linear algebra for one- and two-qubit operators.
//!
//! Two-qubit operators use the computational basis `|00>, |01>, |10>, |11>`
//! with qubit A as the first (most significant) tensor factor, so the row
//! index of `|ab>` is `2a + b`.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Hermiticity tolerance accepted by [`eigendecompose_hermitian`].
pub const EIGEN_HERMITIAN_TOL: f64 = 1e-8;
/// Hermiticity tolerance for a validated density matrix.
pub const STATE_HERMITIAN_TOL: f64 = 1e-10;
/// Maximum trace deviation for a validated density matrix.
pub const STATE_TRACE_TOL: f64 = 1e-8;
/// Most negative eigenvalue a density matrix may have before it is rejected.
pub const STATE_PSD_TOL: f64 = 1e-8;
/// Eigenvalues of a validated state below this are stored as exactly zero.
///
/// For small `q`, a residual of `1e-17` would otherwise contribute
/// `(1e-17)^q` to `Tr rho^q`.
pub const EIGEN_ZERO_SNAP: f64 = 1e-14;
/// Sweep cap of the cyclic Jacobi eigensolver.
pub const JACOBI_MAX_SWEEPS: usize = 100;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

#[inline]
pub(crate) fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[inline]
fn cabs(z: Complex64) -> f64 {
    libm::hypot(z.re, z.im)
}

/// Square complex matrix of dimension 2 or 4, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn new(dim: usize, data: Vec<Complex64>) -> Result<Self> {
        check_dim(dim)?;
        if data.len() != dim * dim {
            return Err(Error::InvalidDimension { expected: dim * dim, found: data.len() });
        }
        Ok(ComplexMatrix { dim, data })
    }

    /// Builds a matrix from separate real and imaginary row-major parts.
    pub fn from_parts(re: &[Vec<f64>], im: &[Vec<f64>]) -> Result<Self> {
        let dim = re.len();
        check_dim(dim)?;
        if im.len() != dim {
            return Err(Error::InvalidDimension { expected: dim, found: im.len() });
        }
        let mut data = Vec::with_capacity(dim * dim);
        for (rr, ir) in re.iter().zip(im) {
            if rr.len() != dim || ir.len() != dim {
                let found = if rr.len() != dim { rr.len() } else { ir.len() };
                return Err(Error::InvalidDimension { expected: dim, found });
            }
            data.extend(rr.iter().zip(ir).map(|(&a, &b)| c(a, b)));
        }
        Ok(ComplexMatrix { dim, data })
    }

    pub fn zeros(dim: usize) -> Self {
        assert!(dim == 2 || dim == 4, "dimension must be 2 or 4");
        ComplexMatrix { dim, data: vec![ZERO; dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Result<Self> {
        check_dim(diag.len())?;
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = c(d, 0.0);
        }
        Ok(m)
    }

    /// Projector `|psi><psi|` onto an (unnormalized) vector.
    pub fn outer(psi: &[Complex64]) -> Result<Self> {
        check_dim(psi.len())?;
        let n = psi.len();
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = psi[i] * psi[j].conj();
            }
        }
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn adjoint(&self) -> Self {
        let n = self.dim;
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = self[(j, i)].conj();
            }
        }
        m
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn scale(&self, s: f64) -> Self {
        ComplexMatrix { dim: self.dim, data: self.data.iter().map(|z| z * s).collect() }
    }

    /// `max |M[i][j] - conj(M[j][i])|`.
    pub fn hermitian_deviation(&self) -> f64 {
        let n = self.dim;
        let mut dev = 0.0f64;
        for i in 0..n {
            for j in i..n {
                dev = dev.max(cabs(self[(i, j)] - self[(j, i)].conj()));
            }
        }
        dev
    }

    /// Largest absolute entry of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim);
        self.data.iter().zip(&other.data).map(|(a, b)| cabs(a - b)).fold(0.0, f64::max)
    }

    /// `U M U^dagger`.
    pub fn conjugate_by(&self, u: &Self) -> Self {
        &(u * self) * &u.adjoint()
    }
}

fn check_dim(dim: usize) -> Result<()> {
    if dim == 2 || dim == 4 {
        Ok(())
    } else {
        Err(Error::InvalidDimension { expected: 4, found: dim })
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.dim + j]
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in product");
        let n = self.dim;
        let mut out = ComplexMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == ZERO {
                    continue;
                }
                for j in 0..n {
                    out[(i, j)] += a * rhs[(k, j)];
                }
            }
        }
        out
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in sum");
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect();
        ComplexMatrix { dim: self.dim, data }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in difference");
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect();
        ComplexMatrix { dim: self.dim, data }
    }
}

/// Pauli matrices `sigma_1, sigma_2, sigma_3`.
pub fn pauli() -> [ComplexMatrix; 3] {
    let x = ComplexMatrix { dim: 2, data: vec![ZERO, ONE, ONE, ZERO] };
    let y = ComplexMatrix { dim: 2, data: vec![ZERO, c(0.0, -1.0), c(0.0, 1.0), ZERO] };
    let z = ComplexMatrix { dim: 2, data: vec![ONE, ZERO, ZERO, -ONE] };
    [x, y, z]
}

/// Swap operator `F(|phi> (x) |psi>) = |psi> (x) |phi>` on two qubits.
pub fn flip_operator() -> ComplexMatrix {
    let mut f = ComplexMatrix::zeros(4);
    for a in 0..2 {
        for b in 0..2 {
            f[(2 * b + a, 2 * a + b)] = ONE;
        }
    }
    f
}

/// Single-qubit unitary `exp(i alpha) Rz(beta) Ry(gamma) Rz(delta)`.
pub fn unitary_from_angles(alpha: f64, beta: f64, gamma: f64, delta: f64) -> ComplexMatrix {
    let (sg, cg) = libm::sincos(gamma / 2.0);
    let ph = |t: f64| {
        let (s, co) = libm::sincos(t);
        c(co, s)
    };
    let g = ph(alpha);
    let data = vec![
        g * ph(-(beta + delta) / 2.0) * cg,
        -g * ph((delta - beta) / 2.0) * sg,
        g * ph((beta - delta) / 2.0) * sg,
        g * ph((beta + delta) / 2.0) * cg,
    ];
    ComplexMatrix { dim: 2, data }
}

/// Kronecker product `a (x) b` of two single-qubit operators.
pub fn tensor_product(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    if a.dim != 2 {
        return Err(Error::InvalidDimension { expected: 2, found: a.dim });
    }
    if b.dim != 2 {
        return Err(Error::InvalidDimension { expected: 2, found: b.dim });
    }
    let mut out = ComplexMatrix::zeros(4);
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    out[(2 * i + k, 2 * j + l)] = a[(i, j)] * b[(k, l)];
                }
            }
        }
    }
    Ok(out)
}

/// Subsystem selector for partial traces.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsystem {
    A,
    B,
}

/// Partial trace on a raw 4x4 matrix, keeping `keep`.
pub fn partial_trace_matrix(m: &ComplexMatrix, keep: Subsystem) -> Result<ComplexMatrix> {
    if m.dim != 4 {
        return Err(Error::InvalidDimension { expected: 4, found: m.dim });
    }
    let mut out = ComplexMatrix::zeros(2);
    for i in 0..2 {
        for j in 0..2 {
            out[(i, j)] = match keep {
                Subsystem::A => m[(2 * i, 2 * j)] + m[(2 * i + 1, 2 * j + 1)],
                Subsystem::B => m[(i, j)] + m[(2 + i, 2 + j)],
            };
        }
    }
    Ok(out)
}

/// Reduced state of a two-qubit density matrix.
pub fn partial_trace(rho: &DensityMatrix, keep: Subsystem) -> Result<DensityMatrix> {
    validate_state(&partial_trace_matrix(&rho.matrix, keep)?)
}

/// Eigenvalues (descending) and optionally the matching orthonormal eigenvector columns.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: Option<ComplexMatrix>,
}

impl Spectrum {
    /// `V diag(lambda) V^dagger`; `None` when eigenvectors were not requested.
    pub fn reconstruct(&self) -> Option<ComplexMatrix> {
        let v = self.eigenvectors.as_ref()?;
        let d = ComplexMatrix::from_real_diagonal(&self.eigenvalues).ok()?;
        Some(&(v * &d) * &v.adjoint())
    }
}

/// Hermitian eigendecomposition by cyclic complex Jacobi rotations.
pub fn eigendecompose_hermitian(m: &ComplexMatrix, with_vectors: bool) -> Result<Spectrum> {
    let deviation = m.hermitian_deviation();
    if !(deviation <= EIGEN_HERMITIAN_TOL) {
        return Err(Error::NonHermitian { deviation });
    }
    let n = m.dim;
    // symmetrize so the rotations see an exactly hermitian matrix
    let mut a = ComplexMatrix::zeros(n);
    for i in 0..n {
        for j in 0..n {
            a[(i, j)] = (m[(i, j)] + m[(j, i)].conj()) * 0.5;
        }
    }
    let mut v = ComplexMatrix::identity(n);
    let scale: f64 = a.data.iter().map(|z| z.norm_sqr()).sum();

    let mut converged = false;
    for _ in 0..JACOBI_MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[(i, j)].norm_sqr())
            .sum();
        if off <= 1e-32 * scale || off == 0.0 {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, &mut v, p, q, with_vectors);
            }
        }
    }
    if !converged {
        return Err(Error::NoConvergence { sweeps: JACOBI_MAX_SWEEPS });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(j, j)].re.total_cmp(&a[(i, i)].re));
    let eigenvalues = order.iter().map(|&i| a[(i, i)].re).collect();
    let eigenvectors = with_vectors.then(|| {
        let mut sorted = ComplexMatrix::zeros(n);
        for (col, &src) in order.iter().enumerate() {
            for row in 0..n {
                sorted[(row, col)] = v[(row, src)];
            }
        }
        sorted
    });
    Ok(Spectrum { eigenvalues, eigenvectors })
}

/// One Jacobi rotation annihilating `a[p][q]`.
fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize, with_vectors: bool) {
    let apq = a[(p, q)];
    let r = cabs(apq);
    if r == 0.0 {
        return;
    }
    // phase removal followed by a real Givens rotation
    let phase = apq / r;
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let tau = (aqq - app) / (2.0 * r);
    let t = if tau >= 0.0 {
        1.0 / (tau + libm::sqrt(1.0 + tau * tau))
    } else {
        -1.0 / (-tau + libm::sqrt(1.0 + tau * tau))
    };
    let cs = 1.0 / libm::sqrt(1.0 + t * t);
    let sn = t * cs;
    let jpp = c(cs, 0.0);
    let jpq = c(sn, 0.0);
    let jqp = -phase.conj() * sn;
    let jqq = phase.conj() * cs;

    let n = a.dim;
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * jpp + akq * jqp;
        a[(k, q)] = akp * jpq + akq * jqq;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = jpp.conj() * apk + jqp.conj() * aqk;
        a[(q, k)] = jpq.conj() * apk + jqq.conj() * aqk;
    }
    a[(p, q)] = ZERO;
    a[(q, p)] = ZERO;
    a[(p, p)] = c(a[(p, p)].re, 0.0);
    a[(q, q)] = c(a[(q, q)].re, 0.0);

    if with_vectors {
        for k in 0..n {
            let vkp = v[(k, p)];
            let vkq = v[(k, q)];
            v[(k, p)] = vkp * jpp + vkq * jqp;
            v[(k, q)] = vkp * jpq + vkq * jqq;
        }
    }
}

/// A validated density matrix together with its clamped spectrum.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
    eigenvalues: Vec<f64>,
}

impl DensityMatrix {
    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim
    }

    /// Eigenvalues in descending order, negative noise clamped to zero.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        validate_state(&ComplexMatrix::identity(dim).scale(1.0 / dim as f64)).expect("maximally mixed state is valid")
    }

    /// Pure state `|psi><psi|/<psi|psi>`.
    pub fn pure(psi: &[Complex64]) -> Result<Self> {
        let norm: f64 = psi.iter().map(|z| z.norm_sqr()).sum();
        if !(norm > 0.0) {
            return Err(Error::Domain("zero state vector"));
        }
        validate_state(&ComplexMatrix::outer(psi)?.scale(1.0 / norm))
    }

    /// `a (x) b`.
    pub fn product(a: &DensityMatrix, b: &DensityMatrix) -> Result<Self> {
        validate_state(&tensor_product(&a.matrix, &b.matrix)?)
    }

    /// `G G^dagger / Tr(G G^dagger)` for an arbitrary square matrix `G`.
    ///
    /// With `G` drawn from the Ginibre ensemble this samples the
    /// Hilbert-Schmidt measure on mixed states.
    pub fn from_ginibre(g: &ComplexMatrix) -> Result<Self> {
        let gg = g * &g.adjoint();
        let tr = gg.trace().re;
        if !(tr > 0.0) {
            return Err(Error::Domain("zero Ginibre matrix"));
        }
        validate_state(&gg.scale(1.0 / tr))
    }

    /// `U rho U^dagger`.
    pub fn transform(&self, u: &ComplexMatrix) -> Result<Self> {
        validate_state(&self.matrix.conjugate_by(u))
    }
}

/// Checks hermiticity, unit trace and positivity.
pub fn validate_state(m: &ComplexMatrix) -> Result<DensityMatrix> {
    let deviation = m.hermitian_deviation();
    if !(deviation <= STATE_HERMITIAN_TOL) {
        return Err(Error::NonHermitian { deviation });
    }
    let trace = m.trace().re;
    if !((trace - 1.0).abs() <= STATE_TRACE_TOL) {
        return Err(Error::Trace { trace });
    }
    let spectrum = eigendecompose_hermitian(m, false)?;
    let min = spectrum.eigenvalues.last().copied().unwrap_or(0.0);
    if min < -STATE_PSD_TOL {
        return Err(Error::NotPositive { min_eigenvalue: min });
    }
    let eigenvalues = spectrum.eigenvalues.into_iter().map(|x| if x < EIGEN_ZERO_SNAP { 0.0 } else { x }).collect();
    Ok(DensityMatrix { matrix: m.clone(), eigenvalues })
}
