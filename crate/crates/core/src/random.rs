//! Seeded random states and local group elements for numeric property checks.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::poly::{Mat2, State};

pub type TestRng = ChaCha8Rng;

/// Local groups acting slot-wise on a state.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LocalGroup {
    /// `U(2)^k`.
    Unitary,
    /// `SU(2)^k`.
    SpecialUnitary,
    /// `SL(2, C)^k`.
    Slocc,
}

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn gaussian(rng: &mut impl Rng) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// A unit vector drawn uniformly from the sphere in `C^{2^k}`.
pub fn random_state(rng: &mut impl Rng, k: usize) -> State {
    let amps = (0..1usize << k).map(|_| gaussian(rng)).collect();
    State::new(k, amps).expect("valid qubit count").normalized()
}

/// A Haar-distributed element of `SU(2)`.
pub fn random_su2(rng: &mut impl Rng) -> Mat2 {
    let (a, b) = (gaussian(rng), gaussian(rng));
    let n = (a.norm_sqr() + b.norm_sqr()).sqrt();
    let (a, b) = (a / n, b / n);
    [[a, -b.conj()], [b, a.conj()]]
}

/// A Haar-distributed element of `U(2)`.
pub fn random_u2(rng: &mut impl Rng) -> Mat2 {
    let phase = Complex64::from_polar(1.0, rng.gen_range(0.0..std::f64::consts::TAU));
    random_su2(rng).map(|row| row.map(|z| z * phase))
}

/// A random element of `SL(2, C)` with moderate condition number: a
/// Gaussian matrix rescaled to unit determinant, redrawn while its singular
/// values are far apart.
pub fn random_sl2(rng: &mut impl Rng) -> Mat2 {
    loop {
        let m = [[gaussian(rng), gaussian(rng)], [gaussian(rng), gaussian(rng)]];
        let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
        let frob: f64 = m.iter().flatten().map(|z| z.norm_sqr()).sum();
        // frob / |det| = σ₁/σ₂ + σ₂/σ₁
        if det.norm() < 1e-3 || frob / det.norm() > 8.0 {
            continue;
        }
        let s = det.sqrt();
        return m.map(|row| row.map(|z| z / s));
    }
}

pub fn random_local(rng: &mut impl Rng, k: usize, group: LocalGroup) -> Vec<Mat2> {
    (0..k)
        .map(|_| match group {
            LocalGroup::Unitary => random_u2(rng),
            LocalGroup::SpecialUnitary => random_su2(rng),
            LocalGroup::Slocc => random_sl2(rng),
        })
        .collect()
}

/// Random auxiliary points, one pair per slot.
pub fn random_aux(rng: &mut impl Rng, k: usize) -> Vec<[Complex64; 2]> {
    (0..k).map(|_| [gaussian(rng), gaussian(rng)]).collect()
}

/// Relative distance `|a − b| / max(|a|, |b|, floor)`.
pub fn relative_error(a: Complex64, b: Complex64, floor: f64) -> f64 {
    (a - b).norm() / a.norm().max(b.norm()).max(floor)
}
