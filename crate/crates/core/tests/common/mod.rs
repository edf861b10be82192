#![allow(dead_code)]

use qdiscord_core::linalg::{tensor_product, unitary_from_angles, validate_state};
use qdiscord_core::{Complex64, ComplexMatrix, DensityMatrix, JointDist};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn gaussian(rng: &mut impl Rng) -> f64 {
    rng.sample(StandardNormal)
}

pub fn ginibre(rng: &mut impl Rng, dim: usize) -> ComplexMatrix {
    let data = (0..dim * dim).map(|_| Complex64::new(gaussian(rng), gaussian(rng))).collect();
    ComplexMatrix::new(dim, data).unwrap()
}

/// Hilbert-Schmidt random mixed state.
pub fn random_state(rng: &mut impl Rng, dim: usize) -> DensityMatrix {
    DensityMatrix::from_ginibre(&ginibre(rng, dim)).unwrap()
}

pub fn random_pure(rng: &mut impl Rng, dim: usize) -> DensityMatrix {
    let psi: Vec<Complex64> = (0..dim).map(|_| Complex64::new(gaussian(rng), gaussian(rng))).collect();
    DensityMatrix::pure(&psi).unwrap()
}

pub fn random_unitary(rng: &mut impl Rng) -> ComplexMatrix {
    let mut a = || rng.gen_range(0.0..2.0 * std::f64::consts::PI);
    unitary_from_angles(a(), a(), a(), a())
}

pub fn random_local_unitary(rng: &mut impl Rng) -> ComplexMatrix {
    tensor_product(&random_unitary(rng), &random_unitary(rng)).unwrap()
}

pub fn random_product(rng: &mut impl Rng) -> (DensityMatrix, DensityMatrix, DensityMatrix) {
    let a = random_state(rng, 2);
    let b = random_state(rng, 2);
    let ab = validate_state(&tensor_product(a.matrix(), b.matrix()).unwrap()).unwrap();
    (a, b, ab)
}

pub fn random_joint(rng: &mut impl Rng) -> JointDist {
    let rows = rng.gen_range(2..=4);
    let cols = rng.gen_range(2..=4);
    let raw: Vec<Vec<f64>> = (0..rows).map(|_| (0..cols).map(|_| rng.gen::<f64>()).collect()).collect();
    let total: f64 = raw.iter().flatten().sum();
    let table: Vec<Vec<f64>> = raw.iter().map(|r| r.iter().map(|x| x / total).collect()).collect();
    JointDist::new(&table).unwrap()
}
