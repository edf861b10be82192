//! Shannon and Tsallis information measures over finite distributions.

use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Normalization tolerance for [`ProbDist`] and [`JointDist`].
pub const NORMALIZATION_TOL: f64 = 1e-10;
/// Minimum distance of a Tsallis index from 1.
pub const RANK_GAP: f64 = 1e-6;
/// Smallest admissible q-expectation normalizer.
pub const NORMALIZER_FLOOR: f64 = 1e-12;

/// Entropic index `q` of a Tsallis quantity: `q > 0`, `|q - 1| >= 1e-6`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Rank(f64);

impl Rank {
    pub fn new(q: f64) -> Result<Self> {
        if q.is_finite() && q > 0.0 && (q - 1.0).abs() >= RANK_GAP {
            Ok(Rank(q))
        } else {
            Err(Error::InvalidRank { q })
        }
    }

    #[inline]
    pub fn get(self) -> f64 {
        self.0
    }
}

/// `x^q` with the convention `0^q = 0`.
#[inline]
pub(crate) fn pow0(x: f64, q: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        libm::pow(x, q)
    }
}

/// `sum_i p_i^q`.
#[inline]
pub(crate) fn power_sum<'a>(p: impl IntoIterator<Item = &'a f64>, q: f64) -> f64 {
    p.into_iter().map(|&x| pow0(x, q)).sum()
}

/// `(1 - sum_i p_i^q) / (q - 1)` for any nonnegative weight list.
#[inline]
pub(crate) fn tsallis_of<'a>(p: impl IntoIterator<Item = &'a f64>, q: Rank) -> f64 {
    (1.0 - power_sum(p, q.get())) / (q.get() - 1.0)
}

/// `-sum_i p_i ln p_i` with `0 ln 0 = 0`.
#[inline]
pub(crate) fn shannon_of<'a>(p: impl IntoIterator<Item = &'a f64>) -> f64 {
    p.into_iter().filter(|&&x| x > 0.0).map(|&x| -x * libm::log(x)).sum()
}

/// Finite probability vector.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbDist(Vec<f64>);

impl ProbDist {
    pub fn new(p: Vec<f64>) -> Result<Self> {
        if p.is_empty() {
            return Err(Error::InvalidDistribution("empty distribution"));
        }
        if p.iter().any(|x| !(x.is_finite() && *x >= 0.0)) {
            return Err(Error::InvalidDistribution("negative or non-finite probability"));
        }
        let total: f64 = p.iter().sum();
        if (total - 1.0).abs() > NORMALIZATION_TOL {
            return Err(Error::InvalidDistribution("probabilities do not sum to 1"));
        }
        Ok(ProbDist(p))
    }

    pub fn probs(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Joint distribution `p_ij`; rows index outcomes of A, columns outcomes of B.
#[derive(Debug, Clone, PartialEq)]
pub struct JointDist {
    rows: usize,
    cols: usize,
    p: Vec<f64>,
}

impl JointDist {
    pub fn new(table: &[Vec<f64>]) -> Result<Self> {
        let rows = table.len();
        let cols = table.first().map_or(0, Vec::len);
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidDistribution("empty joint table"));
        }
        if table.iter().any(|r| r.len() != cols) {
            return Err(Error::InvalidDistribution("ragged joint table"));
        }
        let p: Vec<f64> = table.iter().flatten().copied().collect();
        ProbDist::new(p.clone())?;
        Ok(JointDist { rows, cols, p })
    }

    /// Product table `p_i^A p_j^B`.
    pub fn product(a: &ProbDist, b: &ProbDist) -> Self {
        let p = a.probs().iter().flat_map(|&x| b.probs().iter().map(move |&y| x * y)).collect();
        JointDist { rows: a.len(), cols: b.len(), p }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.p[i * self.cols + j]
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn entries(&self) -> &[f64] {
        &self.p
    }

    pub fn marginal_a(&self) -> Vec<f64> {
        (0..self.rows).map(|i| (0..self.cols).map(|j| self.get(i, j)).sum()).collect()
    }

    pub fn marginal_b(&self) -> Vec<f64> {
        (0..self.cols).map(|j| (0..self.rows).map(|i| self.get(i, j)).sum()).collect()
    }

    /// Conditional distribution `p_{i|j}`; `None` for a zero-probability column.
    pub fn conditional_column(&self, j: usize) -> Option<Vec<f64>> {
        let pb: f64 = (0..self.rows).map(|i| self.get(i, j)).sum();
        (pb > 0.0).then(|| (0..self.rows).map(|i| self.get(i, j) / pb).collect())
    }

    /// `(p_j^B, T_q(A|B_j))` for every column with nonzero marginal.
    fn column_entropies(&self, q: Rank) -> impl Iterator<Item = (f64, f64)> + '_ {
        let pb = self.marginal_b();
        (0..self.cols).filter_map(move |j| {
            let cond = self.conditional_column(j)?;
            Some((pb[j], tsallis_of(&cond, q)))
        })
    }
}

/// `ln_q x = (x^{1-q} - 1) / (1 - q)`.
pub fn q_logarithm(x: f64, q: Rank) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::Domain("q-logarithm of a non-positive number"));
    }
    let q = q.get();
    Ok((libm::pow(x, 1.0 - q) - 1.0) / (1.0 - q))
}

/// Shannon entropy in nats.
pub fn shannon_entropy(p: &ProbDist) -> f64 {
    shannon_of(p.probs())
}

pub fn tsallis_entropy_dist(p: &ProbDist, q: Rank) -> f64 {
    tsallis_of(p.probs(), q)
}

/// Escort distribution `r_i = p_i^q / sum_j p_j^q`.
pub fn escort_distribution(p: &ProbDist, q: Rank) -> ProbDist {
    let z = power_sum(p.probs(), q.get());
    ProbDist(p.probs().iter().map(|&x| pow0(x, q.get()) / z).collect())
}

/// Ordinary expectation `sum_j p_j^B T_q(A|B_j)`.
pub fn conditional_tsallis_naive(j: &JointDist, q: Rank) -> f64 {
    j.column_entropies(q).map(|(pb, t)| pb * t).sum()
}

/// Expectation with unnormalized weights `(p_j^B)^q`; equals `T_q(AB) - T_q(B)`.
pub fn conditional_tsallis_modified(j: &JointDist, q: Rank) -> f64 {
    j.column_entropies(q).map(|(pb, t)| pow0(pb, q.get()) * t).sum()
}

/// q-expectation with escort weights of the B marginal.
pub fn conditional_tsallis_qexp(j: &JointDist, q: Rank) -> Result<f64> {
    let normalizer = power_sum(&j.marginal_b(), q.get());
    if !(normalizer > NORMALIZER_FLOOR) {
        return Err(Error::DegenerateNormalizer { value: normalizer });
    }
    let weighted: f64 = j.column_entropies(q).map(|(pb, t)| pow0(pb, q.get()) * t).sum();
    Ok(weighted / normalizer)
}

/// `T_q(A) + T_q(B) - T_q(AB)`.
pub fn mutual_tsallis_additive(j: &JointDist, q: Rank) -> f64 {
    tsallis_of(&j.marginal_a(), q) + tsallis_of(&j.marginal_b(), q) - tsallis_of(j.entries(), q)
}

/// `T_q(A) - T_q(A|B)` with the q-expectation conditional entropy.
pub fn mutual_tsallis_qexp(j: &JointDist, q: Rank) -> Result<f64> {
    Ok(tsallis_of(&j.marginal_a(), q) - conditional_tsallis_qexp(j, q)?)
}

/// Closed form of [`mutual_tsallis_qexp`] in terms of the three entropies:
/// `(T_A + T_B - T_AB + (1-q) T_A T_B) / (1 + (1-q) T_B)`.
pub fn qexp_mutual_from_entropies(t_a: f64, t_b: f64, t_ab: f64, q: Rank) -> Result<f64> {
    let q = q.get();
    let normalizer = 1.0 + (1.0 - q) * t_b;
    if !(normalizer > NORMALIZER_FLOOR) {
        return Err(Error::DegenerateNormalizer { value: normalizer });
    }
    Ok((t_a + t_b - t_ab + (1.0 - q) * t_a * t_b) / normalizer)
}

/// `(S(A|B), I(A:B))` in nats, with `S(A|B)` the marginal-weighted average of
/// column entropies and `I = S(A) - S(A|B)`.
pub fn shannon_conditional_and_mutual(j: &JointDist) -> (f64, f64) {
    let pb = j.marginal_b();
    let conditional: f64 =
        (0..j.shape().1).filter_map(|col| j.conditional_column(col).map(|c| pb[col] * shannon_of(&c))).sum();
    (conditional, shannon_of(&j.marginal_a()) - conditional)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn q(x: f64) -> Rank {
        Rank::new(x).unwrap()
    }

    fn dist(p: &[f64]) -> ProbDist {
        ProbDist::new(p.to_vec()).unwrap()
    }

    fn joint(t: &[[f64; 2]; 2]) -> JointDist {
        JointDist::new(&[t[0].to_vec(), t[1].to_vec()]).unwrap()
    }

    const SAMPLE: [[f64; 2]; 2] = [[0.4, 0.1], [0.2, 0.3]];
    const DIAG: [[f64; 2]; 2] = [[0.5, 0.0], [0.0, 0.5]];

    fn close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b}");
    }

    #[test]
    fn rank_guards() {
        assert!(Rank::new(0.0).is_err());
        assert!(Rank::new(-1.0).is_err());
        assert!(Rank::new(1.0).is_err());
        assert!(Rank::new(1.0 + 5e-7).is_err());
        assert!(Rank::new(f64::NAN).is_err());
        assert!(Rank::new(1.0 + 1e-4).is_ok());
    }

    #[test]
    fn distributions_validate() {
        assert!(ProbDist::new(vec![0.5, 0.6]).is_err());
        assert!(ProbDist::new(vec![1.2, -0.2]).is_err());
        assert!(ProbDist::new(vec![]).is_err());
        assert!(JointDist::new(&[vec![0.5, 0.0], vec![0.5]]).is_err());
    }

    #[test]
    fn q_logarithm_values() {
        close(q_logarithm(1.0, q(0.5)).unwrap(), 0.0, 1e-15);
        close(q_logarithm(2.0, q(2.0)).unwrap(), 0.5, 1e-15);
        close(q_logarithm(0.5, q(2.0)).unwrap(), -1.0, 1e-15);
        assert!(matches!(q_logarithm(0.0, q(2.0)), Err(Error::Domain(_))));
        assert!(q_logarithm(-1.0, q(2.0)).is_err());
    }

    #[test]
    fn shannon_values() {
        close(shannon_entropy(&dist(&[1.0, 0.0])), 0.0, 0.0);
        close(shannon_entropy(&dist(&[0.5, 0.5])), core::f64::consts::LN_2, 1e-15);
        close(shannon_entropy(&dist(&[0.25; 4])), 2.0 * core::f64::consts::LN_2, 1e-15);
    }

    #[test]
    fn tsallis_values() {
        close(tsallis_entropy_dist(&dist(&[0.5, 0.5]), q(2.0)), 0.5, 1e-15);
        for qq in [0.3, 2.0, 7.0] {
            close(tsallis_entropy_dist(&dist(&[1.0, 0.0, 0.0]), q(qq)), 0.0, 1e-15);
        }
        close(tsallis_entropy_dist(&dist(&[0.25; 4]), q(2.0)), 0.75, 1e-15);
    }

    #[test]
    fn escort_values() {
        let r = escort_distribution(&dist(&[0.8, 0.2]), q(2.0));
        close(r.probs()[0], 16.0 / 17.0, 1e-15);
        close(r.probs()[1], 1.0 / 17.0, 1e-15);
        let u = escort_distribution(&dist(&[0.5, 0.5]), q(3.0));
        assert_eq!(u.probs(), &[0.5, 0.5]);
        let u = escort_distribution(&dist(&[0.25; 4]), q(0.3));
        for x in u.probs() {
            close(*x, 0.25, 1e-15);
        }
    }

    #[test]
    fn naive_conditional_values() {
        close(conditional_tsallis_naive(&joint(&DIAG), q(2.0)), 0.0, 1e-15);
        close(conditional_tsallis_naive(&joint(&SAMPLE), q(2.0)), 5.0 / 12.0, 1e-15);
        let prod = JointDist::product(&dist(&[0.5, 0.5]), &dist(&[0.3, 0.7]));
        close(conditional_tsallis_naive(&prod, q(2.0)), 0.5, 1e-15);
    }

    #[test]
    fn modified_conditional_values() {
        close(conditional_tsallis_modified(&joint(&SAMPLE), q(2.0)), 0.22, 1e-15);
        close(conditional_tsallis_modified(&joint(&DIAG), q(2.0)), 0.0, 1e-15);
        let prod = JointDist::product(&dist(&[0.5, 0.5]), &dist(&[0.5, 0.5]));
        close(conditional_tsallis_modified(&prod, q(2.0)), 0.25, 1e-15);
    }

    #[test]
    fn qexp_conditional_values() {
        close(conditional_tsallis_qexp(&joint(&SAMPLE), q(2.0)).unwrap(), 11.0 / 26.0, 1e-15);
        close(conditional_tsallis_qexp(&joint(&DIAG), q(2.0)).unwrap(), 0.0, 1e-15);
        let a = dist(&[0.2, 0.3, 0.5]);
        let prod = JointDist::product(&a, &dist(&[0.6, 0.4]));
        for qq in [0.4, 1.5, 3.0] {
            close(conditional_tsallis_qexp(&prod, q(qq)).unwrap(), tsallis_entropy_dist(&a, q(qq)), 1e-14);
        }
    }

    #[test]
    fn zero_column_is_skipped() {
        let j = JointDist::new(&[vec![0.5, 0.0], vec![0.5, 0.0]]).unwrap();
        close(conditional_tsallis_naive(&j, q(2.0)), 0.5, 1e-15);
        close(conditional_tsallis_qexp(&j, q(2.0)).unwrap(), 0.5, 1e-15);
    }

    #[test]
    fn mutual_values() {
        close(mutual_tsallis_additive(&joint(&SAMPLE), q(2.0)), 0.28, 1e-15);
        let prod = JointDist::product(&dist(&[0.5, 0.5]), &dist(&[0.5, 0.5]));
        close(mutual_tsallis_additive(&prod, q(2.0)), 0.25, 1e-15);
        close(mutual_tsallis_additive(&joint(&DIAG), q(2.0)), 0.5, 1e-15);

        close(mutual_tsallis_qexp(&joint(&SAMPLE), q(2.0)).unwrap(), 1.0 / 13.0, 1e-15);
        close(mutual_tsallis_qexp(&joint(&DIAG), q(2.0)).unwrap(), 0.5, 1e-15);
        let prod = JointDist::product(&dist(&[0.1, 0.9]), &dist(&[0.35, 0.65]));
        close(mutual_tsallis_qexp(&prod, q(0.7)).unwrap(), 0.0, 1e-15);
    }

    #[test]
    fn shannon_conditional_values() {
        let a = dist(&[0.3, 0.7]);
        let (c, i) = shannon_conditional_and_mutual(&JointDist::product(&a, &dist(&[0.5, 0.5])));
        close(c, shannon_entropy(&a), 1e-15);
        close(i, 0.0, 1e-15);
        let (c, i) = shannon_conditional_and_mutual(&joint(&DIAG));
        close(c, 0.0, 0.0);
        close(i, core::f64::consts::LN_2, 1e-15);

        // oracle: direct summation of -sum p_ij ln p_{i|j} and S(A)+S(B)-S(AB)
        let (c, i) = shannon_conditional_and_mutual(&joint(&SAMPLE));
        let ln = libm::log;
        let oracle_c = -(0.4 * ln(0.4 / 0.6) + 0.2 * ln(0.2 / 0.6) + 0.1 * ln(0.1 / 0.4) + 0.3 * ln(0.3 / 0.4));
        let s = |v: &[f64]| -v.iter().map(|x| x * ln(*x)).sum::<f64>();
        let oracle_i = s(&[0.5, 0.5]) + s(&[0.6, 0.4]) - s(&[0.4, 0.1, 0.2, 0.3]);
        close(c, oracle_c, 1e-15);
        close(i, oracle_i, 1e-15);
    }

    #[test]
    fn degenerate_normalizer_guard() {
        assert!(matches!(qexp_mutual_from_entropies(0.0, 2.0, 0.0, q(1.5)), Err(Error::DegenerateNormalizer { .. })));
    }
}
