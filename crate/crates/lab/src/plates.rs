//! δ-plates and the maximal operators ℳ^k_δ and 𝒩^k on grid functions.

use rayon::prelude::*;

use crate::frame::Frame;
use crate::grassmann::{ball_point, stream_rng};
use crate::grid::{GridFunction, MAX_DIM};
use crate::xray::plane_integral;
use crate::LabError;

/// A δ-plate L_δ(a): the δ-neighborhood of B(a, 1/2) ∩ (L + a).
#[derive(Debug, Clone)]
pub struct PlateSpec {
    pub frame: Frame,
    pub center: Vec<f64>,
    pub delta: f64,
}

impl PlateSpec {
    pub fn new(frame: Frame, center: Vec<f64>, delta: f64) -> Result<Self, LabError> {
        if center.len() != frame.d() {
            return Err(LabError::domain("plate center dimension mismatch"));
        }
        if !(delta > 0.0 && delta <= 0.5) {
            return Err(LabError::domain(format!(
                "plate thickness must satisfy 0 < delta <= 1/2, got {delta}"
            )));
        }
        Ok(PlateSpec { frame, center, delta })
    }

    /// Exact membership: distance to the k-disk B(a,1/2) ∩ (L+a) at most δ.
    pub fn contains(&self, x: &[f64]) -> bool {
        let d = self.frame.d();
        let mut y = [0.0f64; MAX_DIM];
        for a in 0..d {
            y[a] = x[a] - self.center[a];
        }
        let u = self.frame.coords(&y[..d]);
        let u2: f64 = u.iter().map(|v| v * v).sum();
        let y2: f64 = y[..d].iter().map(|v| v * v).sum();
        let perp2 = (y2 - u2).max(0.0);
        let r = u2.sqrt();
        let over = (r - 0.5).max(0.0);
        over * over + perp2 <= self.delta * self.delta
    }
}

/// χ_{L_δ(a)} sampled on a centered grid.
pub fn plate_indicator(plate: &PlateSpec, n: usize, half_width: f64) -> GridFunction {
    GridFunction::from_fn(plate.frame.d(), n, half_width, |x| {
        if plate.contains(x) {
            1.0
        } else {
            0.0
        }
    })
}

fn box_lo_hi(f: &GridFunction) -> (Vec<f64>, Vec<f64>) {
    let lo = f.origin().to_vec();
    let hi: Vec<f64> = (0..f.d())
        .map(|a| f.origin()[a] + f.h() * (f.shape()[a] - 1) as f64)
        .collect();
    (lo, hi)
}

fn ball_intersects_box(f: &GridFunction, center: &[f64], radius: f64) -> bool {
    let (lo, hi) = box_lo_hi(f);
    let mut dist2 = 0.0;
    for a in 0..f.d() {
        let c = center[a].clamp(lo[a], hi[a]);
        let d = center[a] - c;
        dist2 += d * d;
    }
    dist2 <= radius * radius
}

/// Monte-Carlo average of f over the plate core: u uniform in the k-ball of
/// radius 1/2 (frame coordinates), w uniform in the (d−k)-ball of radius δ
/// (complement coordinates). Deterministic given the seed.
pub fn plate_average(
    f: &GridFunction,
    plate: &PlateSpec,
    n_samples: usize,
    seed: u64,
) -> Result<f64, LabError> {
    if n_samples == 0 {
        return Err(LabError::domain("plate averaging needs n_samples >= 1"));
    }
    let reach = 0.5 + plate.delta;
    if !ball_intersects_box(f, &plate.center, reach) {
        return Err(LabError::domain(
            "plate lies outside the grid box; averages there are undefined",
        ));
    }
    let complement = plate.frame.orthonormal_complement();
    Ok(plate_average_with(
        f,
        plate,
        &complement,
        n_samples,
        &mut stream_rng(seed, 0),
    ))
}

fn plate_average_with(
    f: &GridFunction,
    plate: &PlateSpec,
    complement: &Frame,
    n_samples: usize,
    rng: &mut impl rand::Rng,
) -> f64 {
    let d = plate.frame.d();
    let k = plate.frame.k();
    let mut acc = 0.0;
    let mut p = [0.0f64; MAX_DIM];
    for _ in 0..n_samples {
        let u = ball_point(k, 0.5, rng);
        let w = ball_point(d - k, plate.delta, rng);
        p[..d].copy_from_slice(&plate.center);
        for (ui, c) in u.iter().zip(plate.frame.cols()) {
            for a in 0..d {
                p[a] += ui * c[a];
            }
        }
        for (wi, c) in w.iter().zip(complement.cols()) {
            for a in 0..d {
                p[a] += wi * c[a];
            }
        }
        acc += f.sample(&p[..d]);
    }
    acc / n_samples as f64
}

/// ℳ^k_δ[f](L): maximum of `plate_average` over plate centers on a lattice
/// of the given spacing covering the grid box. Centers whose plate provably
/// misses the support of f are skipped. Deterministic given the seed, and
/// independent of thread count (max is order-free).
pub fn maximal_plate(
    f: &GridFunction,
    frame: &Frame,
    delta: f64,
    translation_spacing: f64,
    n_samples: usize,
    seed: u64,
) -> Result<f64, LabError> {
    if !(translation_spacing > 0.0 && translation_spacing <= delta) {
        return Err(LabError::domain(format!(
            "translation spacing must lie in (0, delta], got {translation_spacing} (delta {delta})"
        )));
    }
    if n_samples == 0 {
        return Err(LabError::domain("plate averaging needs n_samples >= 1"));
    }
    let d = f.d();
    if frame.d() != d {
        return Err(LabError::domain("frame dimension mismatch"));
    }
    let (support_center, support_radius) = f.support_ball();
    let (lo, hi) = box_lo_hi(f);
    // Lattice anchored at the box center so that centered inputs are probed
    // at their exact optimum; corner-anchored lattices can miss a δ-thin
    // plate by spacing/2 across it.
    let box_center = f.box_center();
    let half_counts: Vec<i64> = (0..d)
        .map(|a| (0.5 * (hi[a] - lo[a]) / translation_spacing).floor() as i64)
        .collect();
    let counts: Vec<usize> = half_counts.iter().map(|&m| (2 * m + 1) as usize).collect();
    let total: usize = counts.iter().product();
    let complement = frame.orthonormal_complement();

    // A center is relevant only if the plate's bounding ball can reach the
    // support ball.
    let reach = 0.5 + delta + support_radius;

    let best = (0..total)
        .into_par_iter()
        .map(|flat| {
            let mut center = [0.0f64; MAX_DIM];
            let mut rem = flat;
            for a in (0..d).rev() {
                let i = (rem % counts[a]) as i64 - half_counts[a];
                rem /= counts[a];
                center[a] = box_center[a] + i as f64 * translation_spacing;
            }
            let mut v = [0.0f64; MAX_DIM];
            let mut dist2 = 0.0;
            for a in 0..d {
                v[a] = support_center[a] - center[a];
                dist2 += v[a] * v[a];
            }
            if dist2 > reach * reach {
                return 0.0;
            }
            // Slab prune: the plate lies within distance delta of the plane
            // L + center, so a support ball farther than delta + radius from
            // that plane cannot meet it.
            let coords = frame.coords(&v[..d]);
            let along2: f64 = coords.iter().map(|c| c * c).sum();
            let perp = (dist2 - along2).max(0.0).sqrt();
            if perp > delta + support_radius {
                return 0.0;
            }
            let plate = PlateSpec {
                frame: frame.clone(),
                center: center[..d].to_vec(),
                delta,
            };
            plate_average_with(
                f,
                &plate,
                &complement,
                n_samples,
                &mut stream_rng(seed, flat as u64),
            )
        })
        .reduce(|| 0.0, f64::max);
    Ok(best)
}

/// 𝒩^k[f](L): maximum over offsets x ∈ L^⊥ (lattice at `quad_spacing`
/// covering the unit ball reach) of the k-plane quadrature of f over
/// (x + L) ∩ B(0, 1.2). Requires f supported in the unit ball; translations
/// inside L do not move the plane, so the search is over L^⊥ only.
pub fn maximal_plane(
    f: &GridFunction,
    frame: &Frame,
    quad_spacing: f64,
) -> Result<f64, LabError> {
    if !(quad_spacing > 0.0) {
        return Err(LabError::domain("quad spacing must be positive"));
    }
    if !f.supported_in_unit_ball() {
        return Err(LabError::domain(
            "maximal_plane requires f supported in the unit ball",
        ));
    }
    let d = f.d();
    if frame.d() != d {
        return Err(LabError::domain("frame dimension mismatch"));
    }
    let complement = frame.orthonormal_complement();
    let kc = complement.k();
    let m = (1.0 / quad_spacing).ceil() as i64;
    let counts = (2 * m + 1) as usize;
    let total = counts.pow(kc as u32);
    let best = (0..total)
        .into_par_iter()
        .map(|flat| {
            let mut offset = vec![0.0f64; d];
            let mut rem = flat;
            let mut r2 = 0.0;
            for c in complement.cols() {
                let i = (rem % counts) as i64 - m;
                rem /= counts;
                let y = i as f64 * quad_spacing;
                r2 += y * y;
                for a in 0..d {
                    offset[a] += y * c[a];
                }
            }
            if r2 > 1.0 + 1e-12 {
                return 0.0;
            }
            plane_integral(f, frame, &offset, 1.2, quad_spacing)
        })
        .reduce(|| 0.0, f64::max);
    Ok(best)
}
