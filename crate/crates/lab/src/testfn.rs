//! Deterministic random test functions for the experiments.

use rand_distr::StandardNormal;
use rand::Rng;

use crate::grassmann::stream_rng;
use crate::grid::GridFunction;
use crate::spectral::{highpass_index, lowpass_index, power_law_decay_index, shell_index};

/// Independent N(0,1) samples at every grid point.
pub fn white_noise(d: usize, n: usize, half_width: f64, seed: u64) -> GridFunction {
    let mut g = GridFunction::zeros_centered(d, n, half_width);
    let mut rng = stream_rng(seed, 0);
    for v in g.values_mut() {
        *v = rng.sample(StandardNormal);
    }
    g
}

/// C^∞ bump supported on |x| < radius, equal to 1 at the origin.
pub fn bump(d: usize, n: usize, half_width: f64, radius: f64) -> GridFunction {
    GridFunction::from_fn(d, n, half_width, |x| bump_value(x, radius))
}

pub fn bump_value(x: &[f64], radius: f64) -> f64 {
    let r2: f64 = x.iter().map(|v| v * v).sum();
    let t = r2 / (radius * radius);
    if t >= 1.0 {
        0.0
    } else {
        (1.0 - 1.0 / (1.0 - t)).exp()
    }
}

/// Band-limited random field: white noise restricted to modes |m| ≤ band.
pub fn random_bandlimited(d: usize, n: usize, half_width: f64, band: f64, seed: u64) -> GridFunction {
    let noise = white_noise(d, n, half_width, seed);
    let mut g = lowpass_index(&noise, band);
    normalize_l2(&mut g);
    g
}

/// Smooth random field supported in the unit ball: band-limited noise times
/// a bump window of the given radius.
pub fn random_smooth_in_ball(
    d: usize,
    n: usize,
    half_width: f64,
    band: f64,
    window_radius: f64,
    seed: u64,
) -> GridFunction {
    let mut g = random_bandlimited(d, n, half_width, band, seed);
    apply_window(&mut g, window_radius);
    normalize_l2(&mut g);
    g
}

/// Like `random_smooth_in_ball` but with the grid mean removed exactly while
/// keeping the support inside the ball: f ← f − (Σf/Σw)·w with w the window.
pub fn random_mean_zero_in_ball(
    d: usize,
    n: usize,
    half_width: f64,
    band: f64,
    window_radius: f64,
    seed: u64,
) -> GridFunction {
    let mut g = random_smooth_in_ball(d, n, half_width, band, window_radius, seed);
    let w = bump(d, n, half_width, window_radius);
    let sum_g: f64 = g.values().iter().sum();
    let sum_w: f64 = w.values().iter().sum();
    let c = sum_g / sum_w;
    for (gv, wv) in g.values_mut().iter_mut().zip(w.values()) {
        *gv -= c * wv;
    }
    normalize_l2(&mut g);
    g
}

/// Nonnegative smooth random function in the ball: the square of a smooth
/// windowed field.
pub fn random_nonneg_smooth_in_ball(
    d: usize,
    n: usize,
    half_width: f64,
    band: f64,
    window_radius: f64,
    seed: u64,
) -> GridFunction {
    let mut g = random_smooth_in_ball(d, n, half_width, band, window_radius, seed);
    for v in g.values_mut() {
        *v = *v * *v;
    }
    let m = g.max_value();
    if m > 0.0 {
        g.scale(1.0 / m);
    }
    g
}

/// Windowed noise with a (1+|m|²)^{−1} spectral envelope, then f̂ zeroed on
/// the index ball of radius r. After masking, the surviving spectrum
/// concentrates just above r, which is the regime where the high-pass decay
/// rate is visible.
pub fn random_highpassed(
    d: usize,
    n: usize,
    half_width: f64,
    window_radius: f64,
    r: f64,
    seed: u64,
) -> GridFunction {
    let noise = white_noise(d, n, half_width, seed);
    let mut base = power_law_decay_index(&noise);
    apply_window(&mut base, window_radius);
    let mut g = highpass_index(&base, r);
    normalize_l2(&mut g);
    g
}

/// Random field whose spectrum lives on the index shell | |m| − r | ≤ 1/2.
pub fn random_shell(d: usize, n: usize, half_width: f64, r: f64, seed: u64) -> GridFunction {
    let noise = white_noise(d, n, half_width, seed);
    let mut g = shell_index(&noise, r);
    normalize_l2(&mut g);
    g
}

/// Nonnegative window-supported function with roughly equal Littlewood–Paley
/// band masses: (w·g)² with g noise shaped to a |m|^{−d/2} amplitude
/// envelope (flat energy per dyadic band). Squaring keeps positivity and
/// spreads the spectrum, so no smooth deterministic pedestal buries the
/// high bands.
pub fn random_nonneg_flat_bands(d: usize, n: usize, half_width: f64, seed: u64) -> GridFunction {
    let noise = white_noise(d, n, half_width, seed);
    let exponent = -(d as f64) / 4.0;
    let g = crate::spectral::filter(&noise, |spec, flat| {
        (1.0 + spec.index_radius_sq(flat)).powf(exponent)
    });
    let mut out = g;
    let dloc = out.d();
    let shape = out.shape().to_vec();
    let h = out.h();
    let origin = out.origin().to_vec();
    let mut pos = [0.0f64; crate::grid::MAX_DIM];
    for (flat, v) in out.values_mut().iter_mut().enumerate() {
        let mut rem = flat;
        for a in (0..dloc).rev() {
            let i = rem % shape[a];
            rem /= shape[a];
            pos[a] = origin[a] + i as f64 * h;
        }
        let wg = bump_value(&pos[..dloc], 0.95) * *v;
        *v = wg * wg;
    }
    let m = out.max_value();
    if m > 0.0 {
        out.scale(1.0 / m);
    }
    out
}

fn apply_window(g: &mut GridFunction, radius: f64) {
    let d = g.d();
    let shape = g.shape().to_vec();
    let h = g.h();
    let origin = g.origin().to_vec();
    let mut pos = [0.0f64; crate::grid::MAX_DIM];
    for (flat, v) in g.values_mut().iter_mut().enumerate() {
        let mut rem = flat;
        for a in (0..d).rev() {
            let i = rem % shape[a];
            rem /= shape[a];
            pos[a] = origin[a] + i as f64 * h;
        }
        *v *= bump_value(&pos[..d], radius);
    }
}

pub fn normalize_l2(g: &mut GridFunction) {
    let n = g.norm_l2();
    if n > 0.0 {
        g.scale(1.0 / n);
    }
}

/// Uniform random point in the ball |x| ≤ radius around `center`.
pub fn random_point_in_ball(center: &[f64], radius: f64, rng: &mut impl Rng) -> Vec<f64> {
    let p = crate::grassmann::ball_point(center.len(), radius, rng);
    center.iter().zip(p).map(|(c, x)| c + x).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn windowed_fields_live_in_the_ball() {
        let f = random_smooth_in_ball(3, 32, 1.25, 5.0, 0.95, 9);
        assert!(f.supported_in_unit_ball());
        assert!((f.norm_l2() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn mean_zero_is_exact() {
        let f = random_mean_zero_in_ball(3, 32, 1.25, 5.0, 0.95, 9);
        let mean: f64 = f.values().iter().sum::<f64>() / f.len() as f64;
        assert!(mean.abs() < 1e-12);
        assert!(f.supported_in_unit_ball());
    }

    #[test]
    fn nonneg_field_is_nonneg() {
        let f = random_nonneg_smooth_in_ball(3, 24, 1.25, 4.0, 0.9, 3);
        assert!(f.values().iter().all(|v| *v >= 0.0));
        assert!((f.max_value() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn highpassed_field_has_empty_low_spectrum() {
        let f = random_highpassed(2, 32, 1.25, 0.95, 4.0, 1);
        let spec = crate::spectral::forward(&f);
        for flat in 0..spec.data.len() {
            if spec.index_radius_sq(flat) < 16.0 {
                assert!(spec.data[flat].norm() < 1e-10);
            }
        }
    }
}
