//! Sampling from the invariant measure on G(d,k) and on spheres.
//!
//! The invariant (Haar) measure is realized two ways and tested against
//! itself elsewhere: directly, as the column span of the Q factor of a
//! Gaussian matrix, and as the pushforward of sphere × G(d−1,k−1) under the
//! lift F = span(ξ, T_ξ^{−1}(M)).
//!
//! All sampling is deterministic given a seed; independent draws come from
//! per-index ChaCha streams so parallel maps stay reproducible.

use nalgebra::DMatrix;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::frame::{norm, Frame, HemisphereChart};
use crate::LabError;

/// Independent reproducible stream: draws depend on (seed, index) only, not
/// on thread scheduling.
pub fn stream_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Haar sample of G(d,k): first k columns of the orthogonal factor of a d×d
/// standard Gaussian matrix, with the triangular factor's diagonal made
/// positive (the sign convention that makes the factorization Haar).
pub fn haar_frame(d: usize, k: usize, rng: &mut impl Rng) -> Result<Frame, LabError> {
    if k < 1 || k >= d {
        return Err(LabError::domain(format!(
            "Grassmannian G(d,k) needs 1 <= k < d, got k={k}, d={d}"
        )));
    }
    let g = DMatrix::<f64>::from_fn(d, d, |_, _| rng.sample(StandardNormal));
    let qr = g.qr();
    let r = qr.r();
    let mut q = qr.q();
    for i in 0..d {
        if r[(i, i)] < 0.0 {
            for row in 0..d {
                q[(row, i)] = -q[(row, i)];
            }
        }
    }
    let cols = (0..k)
        .map(|i| (0..d).map(|row| q[(row, i)]).collect())
        .collect();
    Frame::new(d, cols)
}

/// Seeded convenience wrapper around `haar_frame`.
pub fn haar_sample(d: usize, k: usize, seed: u64) -> Result<Frame, LabError> {
    haar_frame(d, k, &mut stream_rng(seed, 0))
}

/// Uniform point on S^{d−1}: normalized Gaussian vector.
pub fn sphere_point(d: usize, rng: &mut impl Rng) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..d).map(|_| rng.sample(StandardNormal)).collect();
        let n = norm(&v);
        if n > 1e-12 {
            return v.into_iter().map(|x| x / n).collect();
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SphereMode {
    Random,
    QuasiUniform,
}

/// Direction sets on S^{d−1}. `QuasiUniform` gives equally spaced angles for
/// d = 2 and a Fibonacci spiral for d = 3; for d ≥ 4 no comparably simple
/// low-discrepancy set exists, so it falls back to seeded random points.
pub fn sphere_sample(d: usize, n_points: usize, mode: SphereMode, seed: u64) -> Vec<Vec<f64>> {
    assert!(n_points >= 1);
    assert!(d >= 2);
    match mode {
        SphereMode::Random => (0..n_points)
            .map(|i| sphere_point(d, &mut stream_rng(seed, i as u64)))
            .collect(),
        SphereMode::QuasiUniform => match d {
            2 => (0..n_points)
                .map(|i| {
                    let theta = 2.0 * std::f64::consts::PI * (i as f64 + 0.5) / n_points as f64;
                    vec![theta.cos(), theta.sin()]
                })
                .collect(),
            3 => fibonacci_sphere(n_points),
            _ => (0..n_points)
                .map(|i| sphere_point(d, &mut stream_rng(seed, i as u64)))
                .collect(),
        },
    }
}

/// Fibonacci (golden-angle) spiral on S².
fn fibonacci_sphere(n: usize) -> Vec<Vec<f64>> {
    let golden_angle = std::f64::consts::PI * (3.0 - 5f64.sqrt());
    (0..n)
        .map(|i| {
            let z = 1.0 - 2.0 * (i as f64 + 0.5) / n as f64;
            let r = (1.0 - z * z).sqrt();
            let phi = golden_angle * i as f64;
            vec![r * phi.cos(), r * phi.sin(), z]
        })
        .collect()
}

/// The product lift T(ξ, M) = span(ξ, T_ξ^{−1}(M)): maps a sphere point and
/// a (d−1, k−1) frame to a (d, k) frame. Orthonormality of the output is
/// forced by T_ξ^{−1} landing in ξ^⊥.
pub fn lift(xi: &[f64], m: &Frame, chart: &HemisphereChart) -> Result<Frame, LabError> {
    let d = xi.len();
    if (norm(xi) - 1.0).abs() > 1e-9 {
        return Err(LabError::domain("lift requires a unit direction xi"));
    }
    if m.d() != d - 1 {
        return Err(LabError::domain(format!(
            "lift needs M in G(d-1, k-1): got M on R^{}, xi in R^{d}",
            m.d()
        )));
    }
    let mut cols = Vec::with_capacity(1 + m.k());
    cols.push(xi.to_vec());
    for c in m.cols() {
        cols.push(chart.inverse(xi, c));
    }
    Frame::new(d, cols)
}

/// Uniform sample of the unit ball in ℝ^m (radius scaled by `radius`).
pub fn ball_point(m: usize, radius: f64, rng: &mut impl Rng) -> Vec<f64> {
    match m {
        0 => Vec::new(),
        1 => vec![radius * (2.0 * rng.gen::<f64>() - 1.0)],
        _ => {
            let dir = sphere_point(m, rng);
            let u: f64 = rng.gen();
            let r = radius * u.powf(1.0 / m as f64);
            dir.into_iter().map(|x| x * r).collect()
        }
    }
}
