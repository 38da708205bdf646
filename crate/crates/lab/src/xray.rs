//! The x-ray transform f_ξ(y) = ∫ f(y + tξ) dt on grid functions.

use rayon::prelude::*;

use crate::frame::{dot, Frame, HemisphereChart};
use crate::grid::{GridFunction, MAX_DIM};
use crate::LabError;

/// X-ray transform in direction ξ, returned as a grid function on ℝ^{d−1}
/// via the chart identification of ξ^⊥, same spacing as the input.
///
/// The output grid is cropped to the projection of the input's support (the
/// integrand vanishes elsewhere), and the line integral is the composite
/// midpoint rule over the multilinear interpolant.
pub fn xray(
    f: &GridFunction,
    xi: &[f64],
    chart: &HemisphereChart,
    step: f64,
) -> Result<GridFunction, LabError> {
    if !(step > 0.0) {
        return Err(LabError::domain(format!(
            "line integral step must be positive, got {step}"
        )));
    }
    let d = f.d();
    if xi.len() != d {
        return Err(LabError::domain("direction dimension mismatch"));
    }
    if d < 2 {
        return Err(LabError::domain("x-ray transform needs d >= 2"));
    }
    let (support_center, support_radius) = f.support_ball();
    let margin = 2.0 * f.h();
    let w = {
        let c_norm = dot(&support_center, &support_center).sqrt();
        c_norm + support_radius + margin
    };
    let h = f.h();
    let m = (w / h).ceil() as usize;
    let n_out = 2 * m + 1;
    let out_shape = vec![n_out; d - 1];
    let out_origin = vec![-(m as f64) * h; d - 1];

    let t_center = dot(xi, &support_center);
    let t_half = support_radius + margin;
    let n_t = ((2.0 * t_half) / step).ceil().max(1.0) as usize;
    let actual_step = 2.0 * t_half / n_t as f64;

    let total: usize = out_shape.iter().product();
    let values: Vec<f64> = (0..total)
        .into_par_iter()
        .map(|flat| {
            let mut y = [0.0f64; MAX_DIM];
            let mut rem = flat;
            for a in (0..d - 1).rev() {
                let i = rem % n_out;
                rem /= n_out;
                y[a] = out_origin[a] + i as f64 * h;
            }
            let base = chart.inverse(xi, &y[..d - 1]);
            let mut p = [0.0f64; MAX_DIM];
            let t0 = t_center - t_half + 0.5 * actual_step;
            for a in 0..d {
                p[a] = base[a] + t0 * xi[a];
            }
            let mut acc = 0.0;
            for _ in 0..n_t {
                acc += f.sample(&p[..d]);
                for a in 0..d {
                    p[a] += actual_step * xi[a];
                }
            }
            acc * actual_step
        })
        .collect();

    GridFunction::new(out_shape, h, out_origin, values)
}

/// ‖f_ξ(y)‖ averaged in L² over a direction set with normalized measure:
/// ( mean over ξ of h^{d−1}·Σ_y |f_ξ(y)|² )^{1/2}. Requires d ≥ 3.
pub fn xray_l2_norm(
    f: &GridFunction,
    directions: &[Vec<f64>],
    chart: &HemisphereChart,
    step: f64,
) -> Result<f64, LabError> {
    if f.d() < 3 {
        return Err(LabError::domain(format!(
            "the x-ray L2 identity is stated for d >= 3, got d={}",
            f.d()
        )));
    }
    if directions.is_empty() {
        return Err(LabError::domain("need at least one direction"));
    }
    // Keep the reduction order fixed regardless of thread count.
    let per_direction: Vec<f64> = directions
        .par_iter()
        .map(|xi| {
            let g = xray(f, xi, chart, step)?;
            Ok(g.norm_l2().powi(2))
        })
        .collect::<Result<Vec<f64>, LabError>>()?;
    let mean = per_direction.iter().sum::<f64>() / per_direction.len() as f64;
    Ok(mean.sqrt())
}

/// Quadrature of f over the affine k-plane (offset + span of frame) clipped
/// to |u| ≤ radius in plane coordinates: midpoint rule at the given spacing.
pub fn plane_integral(
    f: &GridFunction,
    frame: &Frame,
    offset: &[f64],
    radius: f64,
    spacing: f64,
) -> f64 {
    let k = frame.k();
    let d = frame.d();
    let m = (radius / spacing).ceil() as i64;
    let mut acc = 0.0;
    let mut idx = vec![-m; k];
    'outer: loop {
        let mut r2 = 0.0;
        for &i in &idx {
            let u = i as f64 * spacing;
            r2 += u * u;
        }
        if r2 <= radius * radius {
            let mut p = [0.0f64; MAX_DIM];
            p[..d].copy_from_slice(offset);
            for (a, c) in idx.iter().zip(frame.cols()) {
                let u = *a as f64 * spacing;
                for dim in 0..d {
                    p[dim] += u * c[dim];
                }
            }
            acc += f.sample(&p[..d]);
        }
        // advance the k-dimensional counter
        for a in 0..k {
            idx[a] += 1;
            if idx[a] <= m {
                continue 'outer;
            }
            idx[a] = -m;
        }
        break;
    }
    acc * spacing.powi(k as i32)
}
