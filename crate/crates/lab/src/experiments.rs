//! Experiment drivers: parameter sweeps and numerical checks of the
//! analytic identities and inequalities. Everything is pure given its config
//! (seeds included), trials parallelize, and final reductions run in a fixed
//! order so reports reproduce bit-for-bit.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use kplane_core::rat::{parse_rat, to_f64, Rat};
use kplane_core::step::conjugate_exponent;

use crate::budgets;
use crate::fit::{fit_loglog, SweepMetadata, SweepResult};
use crate::frame::{dot, Frame, HemisphereChart};
use crate::grassmann::{haar_frame, lift, sphere_point, sphere_sample, stream_rng, SphereMode};
use crate::grid::{ball_indicator, GridFunction, DEFAULT_HALF_WIDTH};
use crate::plates::{maximal_plate, plate_average, plate_indicator, PlateSpec};
use crate::spectral::{lp_band, max_band_index, sobolev_norm};
use crate::testfn;
use crate::xray::{plane_integral, xray, xray_l2_norm};
use crate::LabError;

/// Derived per-trial seed so that nested Monte-Carlo stages never share a
/// ChaCha stream with the outer loop.
fn mix_seed(seed: u64, salt: u64) -> u64 {
    seed.wrapping_mul(0x9e3779b97f4a7c15).rotate_left(17) ^ salt.wrapping_mul(0xd1342543de82ef95)
}

// ---------------------------------------------------------------------------
// Necessity sweeps
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IndicatorFamily {
    /// f = χ_{B(0,δ)}.
    SmallBall,
    /// f = χ_{L_δ(0)} at the axis-aligned frame.
    Plate,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NecessitySweepConfig {
    pub family: IndicatorFamily,
    pub d: usize,
    pub k: usize,
    /// Exponents as exact "num/den" strings.
    pub p: String,
    pub q: String,
    pub deltas: Vec<f64>,
    pub resolution: usize,
    pub frames: usize,
    pub samples: usize,
    pub seed: u64,
}

impl NecessitySweepConfig {
    pub fn exponents(&self) -> Result<(Rat, Rat), LabError> {
        let p = parse_rat(&self.p)
            .ok_or_else(|| LabError::domain(format!("cannot parse p = {:?}", self.p)))?;
        let q = parse_rat(&self.q)
            .ok_or_else(|| LabError::domain(format!("cannot parse q = {:?}", self.q)))?;
        Ok((p, q))
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NecessitySweepOutput {
    pub sweep: SweepResult,
    /// Per-δ rows: (delta, operator norm, input norm, matching-frame value
    /// for the plate family).
    pub rows: Vec<NecessityRow>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NecessityRow {
    pub delta: f64,
    pub op_norm: f64,
    pub f_norm: f64,
    pub ratio: f64,
    pub matching_frame_value: Option<f64>,
}

/// Builds the indicator input per δ, measures ‖ℳ^k_δ f‖_{L^q(G(d,k))} by
/// Monte-Carlo over Haar frames and ‖f‖_p on the grid, and fits the
/// δ-exponent of the ratio.
pub fn necessity_sweep(cfg: &NecessitySweepConfig) -> Result<NecessitySweepOutput, LabError> {
    let (p, q) = cfg.exponents()?;
    let pf = to_f64(&p);
    let qf = to_f64(&q);
    if cfg.deltas.len() < 3 {
        return Err(LabError::domain("sweeps need at least 3 delta values"));
    }
    if cfg.deltas.windows(2).any(|w| w[1] >= w[0]) {
        return Err(LabError::domain("deltas must be strictly decreasing"));
    }
    let h = 2.0 * DEFAULT_HALF_WIDTH / cfg.resolution as f64;
    for &delta in &cfg.deltas {
        if delta < 4.0 * h {
            return Err(LabError::domain(format!(
                "resolution {} too coarse for delta {delta}: need delta >= 4h = {}",
                cfg.resolution,
                4.0 * h
            )));
        }
    }
    let mut rows = Vec::new();
    for (di, &delta) in cfg.deltas.iter().enumerate() {
        let f = match cfg.family {
            IndicatorFamily::SmallBall => ball_indicator(
                cfg.d,
                cfg.resolution,
                DEFAULT_HALF_WIDTH,
                &vec![0.0; cfg.d],
                delta,
            ),
            IndicatorFamily::Plate => {
                let plate = PlateSpec::new(
                    Frame::axis_aligned(cfg.d, cfg.k),
                    vec![0.0; cfg.d],
                    delta,
                )?;
                plate_indicator(&plate, cfg.resolution, DEFAULT_HALF_WIDTH)
            }
        };
        let values: Vec<f64> = (0..cfg.frames)
            .into_par_iter()
            .map(|i| {
                let frame = haar_frame(
                    cfg.d,
                    cfg.k,
                    &mut stream_rng(mix_seed(cfg.seed, (di * 1000 + 1) as u64), i as u64),
                )?;
                maximal_plate(
                    &f,
                    &frame,
                    delta,
                    delta,
                    cfg.samples,
                    mix_seed(cfg.seed, (di * 1000 + 2 + i) as u64),
                )
            })
            .collect::<Result<Vec<f64>, LabError>>()?;
        let op_norm = (values.iter().map(|v| v.powf(qf)).sum::<f64>()
            / values.len() as f64)
            .powf(1.0 / qf);
        let f_norm = f.norm_lp(pf);
        let matching = match cfg.family {
            IndicatorFamily::Plate => Some(maximal_plate(
                &f,
                &Frame::axis_aligned(cfg.d, cfg.k),
                delta,
                delta,
                cfg.samples,
                mix_seed(cfg.seed, (di * 1000) as u64),
            )?),
            IndicatorFamily::SmallBall => None,
        };
        rows.push(NecessityRow {
            delta,
            op_norm,
            f_norm,
            ratio: op_norm / f_norm,
            matching_frame_value: matching,
        });
    }
    let points: Vec<(f64, f64)> = rows.iter().map(|r| (r.delta, r.ratio)).collect();
    let sweep = SweepResult::from_points(
        "delta",
        points,
        SweepMetadata {
            d: cfg.d,
            k: cfg.k,
            p: cfg.p.clone(),
            q: cfg.q.clone(),
            resolution: cfg.resolution,
            frames: cfg.frames,
            samples: cfg.samples,
            seed: cfg.seed,
        },
    )?;
    Ok(NecessitySweepOutput { sweep, rows })
}

// ---------------------------------------------------------------------------
// Hölder k-plane inequality
// ---------------------------------------------------------------------------

/// Volume of the m-ball of radius r.
pub fn ball_volume(m: usize, r: f64) -> f64 {
    // V_m = π^{m/2} / Γ(m/2 + 1) · r^m, unrolled for the small m used here.
    let pi = std::f64::consts::PI;
    let unit = match m {
        0 => 1.0,
        1 => 2.0,
        2 => pi,
        3 => 4.0 * pi / 3.0,
        4 => pi * pi / 2.0,
        _ => unreachable!("dimensions above 4 are not used"),
    };
    unit * r.powi(m as i32)
}

/// One trial of the Hölder k-plane comparison at a given plate position:
/// returns LHS / (δ^{(d−k)/r′}·RHS) where LHS = ∫ over the plate core of f
/// and RHS is the L^r norm over L^⊥ of the full plane integrals of f.
pub fn holder_ratio_at(
    f: &GridFunction,
    frame: &Frame,
    center: &[f64],
    delta: f64,
    r: f64,
    samples: usize,
    seed: u64,
) -> Result<f64, LabError> {
    let d = f.d();
    let k = frame.k();
    let plate = PlateSpec::new(frame.clone(), center.to_vec(), delta)?;
    let avg = plate_average(f, &plate, samples, seed)?;
    let lhs = avg * ball_volume(k, 0.5) * ball_volume(d - k, delta);

    let complement = frame.orthonormal_complement();
    let h = f.h();
    let (support_center, support_radius) = f.support_ball();
    let reach = dot(&support_center, &support_center).sqrt() + support_radius + 2.0 * h;
    let m = (reach / h).ceil() as i64;
    let counts = (2 * m + 1) as usize;
    let total = counts.pow((d - k) as u32);
    let inner: Vec<f64> = (0..total)
        .into_par_iter()
        .map(|flat| {
            let mut offset = vec![0.0f64; d];
            let mut rem = flat;
            for c in complement.cols() {
                let i = (rem % counts) as i64 - m;
                rem /= counts;
                let y = i as f64 * h;
                for a in 0..d {
                    offset[a] += y * c[a];
                }
            }
            let g = plane_integral(f, frame, &offset, reach, h);
            g.powf(r)
        })
        .collect();
    let rhs = (inner.iter().sum::<f64>() * h.powi((d - k) as i32)).powf(1.0 / r);
    if rhs == 0.0 {
        return Ok(0.0);
    }
    let r_conj = r / (r - 1.0);
    Ok(lhs / (delta.powf((d - k) as f64 / r_conj) * rhs))
}

/// Ratios at `n_trials` random plate positions for one function and frame.
pub fn holder_kplane_check(
    f: &GridFunction,
    frame: &Frame,
    delta: f64,
    r: f64,
    n_trials: usize,
    seed: u64,
) -> Result<Vec<f64>, LabError> {
    if r <= 1.0 {
        return Err(LabError::domain("the Hölder comparison needs r > 1"));
    }
    if f.values().iter().any(|v| *v < 0.0) {
        return Err(LabError::domain("the Hölder comparison needs f >= 0"));
    }
    (0..n_trials)
        .map(|t| {
            let mut rng = stream_rng(mix_seed(seed, t as u64), 0);
            let center = testfn::random_point_in_ball(&vec![0.0; f.d()], 0.4, &mut rng);
            holder_ratio_at(
                f,
                frame,
                &center,
                delta,
                r,
                budgets::DEFAULT_PLATE_SAMPLES,
                mix_seed(seed, 7770 + t as u64),
            )
        })
        .collect()
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HolderConfig {
    pub d: usize,
    pub k: usize,
    pub r: f64,
    pub delta: f64,
    pub n_functions: usize,
    pub trials_per_function: usize,
    pub resolution: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HolderReport {
    pub max_ratio: f64,
    pub mean_ratio: f64,
    pub n_ratios: usize,
    pub cap: f64,
}

/// Random nonnegative smooth functions, random frames and positions; the
/// inequality itself is the oracle and every ratio must stay under the
/// frozen cap.
pub fn holder_experiment(cfg: &HolderConfig) -> Result<HolderReport, LabError> {
    let ratios: Vec<f64> = (0..cfg.n_functions)
        .into_par_iter()
        .map(|i| {
            let f = testfn::random_nonneg_smooth_in_ball(
                cfg.d,
                cfg.resolution,
                DEFAULT_HALF_WIDTH,
                5.0,
                0.95,
                mix_seed(cfg.seed, i as u64),
            );
            let frame = haar_frame(
                cfg.d,
                cfg.k,
                &mut stream_rng(mix_seed(cfg.seed, 5000 + i as u64), 0),
            )?;
            holder_kplane_check(
                &f,
                &frame,
                cfg.delta,
                cfg.r,
                cfg.trials_per_function,
                mix_seed(cfg.seed, 9000 + i as u64),
            )
        })
        .collect::<Result<Vec<Vec<f64>>, LabError>>()?
        .into_iter()
        .flatten()
        .collect();
    let max_ratio = ratios.iter().cloned().fold(0.0, f64::max);
    let mean_ratio = ratios.iter().sum::<f64>() / ratios.len().max(1) as f64;
    Ok(HolderReport {
        max_ratio,
        mean_ratio,
        n_ratios: ratios.len(),
        cap: budgets::HOLDER_RATIO_CAP,
    })
}

// ---------------------------------------------------------------------------
// Plancherel identity for the x-ray transform
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PlancherelConfig {
    pub d: usize,
    pub resolution: usize,
    pub n_functions: usize,
    pub n_directions: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PlancherelReport {
    /// Per-function ratios ‖f_ξ‖_{L²_{ξ,y}} / ‖f‖_{Ḣ^{−1/2}}.
    pub ratios: Vec<f64>,
    pub mean: f64,
    pub rel_spread: f64,
    pub budget: f64,
}

/// The x-ray L² norm against the Ḣ^{−1/2} norm on mean-zero band-limited
/// functions: the identity predicts one constant, so the spread across
/// functions is the whole check.
pub fn plancherel_experiment(cfg: &PlancherelConfig) -> Result<PlancherelReport, LabError> {
    if cfg.d < 3 {
        return Err(LabError::domain("the identity is stated for d >= 3"));
    }
    if cfg.n_functions < 2 {
        return Err(LabError::domain("need at least 2 functions to measure spread"));
    }
    let chart = HemisphereChart;
    let dirs = sphere_sample(cfg.d, cfg.n_directions, SphereMode::QuasiUniform, cfg.seed);
    let ratios: Vec<f64> = (0..cfg.n_functions)
        .map(|i| {
            let f = testfn::random_mean_zero_in_ball(
                cfg.d,
                cfg.resolution,
                DEFAULT_HALF_WIDTH,
                6.0,
                0.95,
                mix_seed(cfg.seed, 40 + i as u64),
            );
            let num = xray_l2_norm(&f, &dirs, &chart, f.h())?;
            let den = sobolev_norm(&f, -0.5)?;
            Ok(num / den)
        })
        .collect::<Result<Vec<f64>, LabError>>()?;
    let mean = ratios.iter().sum::<f64>() / ratios.len() as f64;
    let var = ratios.iter().map(|r| (r - mean) * (r - mean)).sum::<f64>()
        / (ratios.len() - 1) as f64;
    Ok(PlancherelReport {
        ratios,
        mean,
        rel_spread: var.sqrt() / mean,
        budget: budgets::PLANCHEREL_SPREAD,
    })
}

// ---------------------------------------------------------------------------
// High-pass decay (cancellation estimate)
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HighpassConfig {
    pub d: usize,
    pub resolution: usize,
    /// Mask radii in units of the grid's fundamental frequency.
    pub radii: Vec<f64>,
    pub n_functions: usize,
    pub n_directions: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HighpassReport {
    /// (radius, mean ratio ‖f_ξ‖_{L²_{ξ,y}} / ‖f‖₂) per mask radius.
    pub points: Vec<(f64, f64)>,
    pub slope: f64,
    pub residual: f64,
    pub slope_min: f64,
    pub slope_max: f64,
}

/// Masks random fields to have f̂ ≡ 0 on B(0,R) and fits the decay of the
/// x-ray L² norm against R; the predicted exponent is −1/2.
pub fn highpass_decay_experiment(cfg: &HighpassConfig) -> Result<HighpassReport, LabError> {
    if cfg.d < 3 {
        return Err(LabError::domain("the cancellation estimate is stated for d >= 3"));
    }
    if cfg.radii.len() < 3 {
        return Err(LabError::domain("need at least 3 mask radii for a fit"));
    }
    let nyquist = cfg.resolution as f64 / 2.0;
    for &r in &cfg.radii {
        if !(r >= 1.0 && r <= nyquist / 2.0) {
            return Err(LabError::domain(format!(
                "mask radius {r} outside [1, Nyquist/2] = [1, {}]",
                nyquist / 2.0
            )));
        }
    }
    let chart = HemisphereChart;
    let dirs = sphere_sample(cfg.d, cfg.n_directions, SphereMode::QuasiUniform, cfg.seed);
    let mut points = Vec::new();
    for &r in &cfg.radii {
        let ratios: Vec<f64> = (0..cfg.n_functions)
            .map(|i| {
                // Same base field per i across radii; only the mask varies.
                let f = testfn::random_highpassed(
                    cfg.d,
                    cfg.resolution,
                    DEFAULT_HALF_WIDTH,
                    0.95,
                    r,
                    mix_seed(cfg.seed, 300 + i as u64),
                );
                let num = xray_l2_norm(&f, &dirs, &chart, f.h())?;
                Ok(num / f.norm_l2())
            })
            .collect::<Result<Vec<f64>, LabError>>()?;
        points.push((r, ratios.iter().sum::<f64>() / ratios.len() as f64));
    }
    let fit = fit_loglog(&points)?;
    Ok(HighpassReport {
        points,
        slope: fit.slope,
        residual: fit.residual,
        slope_min: budgets::HIGHPASS_SLOPE_MIN,
        slope_max: budgets::HIGHPASS_SLOPE_MAX,
    })
}

// ---------------------------------------------------------------------------
// Littlewood–Paley splitting of the plate maximal operator
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LpCheckConfig {
    pub d: usize,
    pub k: usize,
    pub delta: f64,
    pub resolution: usize,
    pub n_functions: usize,
    pub n_directions: usize,
    pub samples: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LpCheckReport {
    /// Measured constants LHS/Σ-of-bands, one per test function.
    pub split_constants: Vec<f64>,
    pub max_split_constant: f64,
    /// Scale-comparison ratios ℳ_δ / ℳ_{2^{-j}} per band (bands with
    /// 2^{-j} ≥ δ), maximum over functions.
    pub scale_ratios: Vec<(u32, f64)>,
    pub max_scale_ratio: f64,
    /// Per-band ‖(f_j)_ξ‖_{L²}/‖f‖₂ decay: points (2^j, ratio) and slope.
    pub band_points: Vec<(f64, f64)>,
    pub band_slope: f64,
    pub split_budget: f64,
    pub scale_budget: f64,
}

/// Checks the band splitting ℳ_δ[f_ξ](M) ≤ C·Σ_j ℳ_δ[|(f_j)_ξ|](M), the
/// per-band scale comparison against thickness 2^{−j}, and the per-band L²
/// decay (2^{−j})^{1/2}.
pub fn lp_maximal_decomposition_check(cfg: &LpCheckConfig) -> Result<LpCheckReport, LabError> {
    if cfg.k < 2 {
        return Err(LabError::domain("the splitting needs k >= 2"));
    }
    if cfg.d < 3 {
        return Err(LabError::domain("the splitting driver needs d >= 3"));
    }
    let chart = HemisphereChart;
    let j_top = (1.0 / cfg.delta).log2().abs().ceil() as u32 + 1;

    let mut split_constants = Vec::new();
    let mut scale_worst: Vec<(u32, f64)> = Vec::new();
    let mut band_l2_acc: Vec<(f64, Vec<f64>)> = Vec::new();
    let dirs = sphere_sample(cfg.d, cfg.n_directions, SphereMode::QuasiUniform, cfg.seed);

    for i in 0..cfg.n_functions {
        let f = testfn::random_nonneg_flat_bands(
            cfg.d,
            cfg.resolution,
            DEFAULT_HALF_WIDTH,
            mix_seed(cfg.seed, 600 + i as u64),
        );
        let frame = haar_frame(
            cfg.d,
            cfg.k,
            &mut stream_rng(mix_seed(cfg.seed, 700 + i as u64), 0),
        )?;
        let xi = frame.cols()[0].clone();
        // M = T_ξ(remaining columns): L = span(ξ, T_ξ^{-1}(M)) by build.
        let m_cols: Vec<Vec<f64>> = frame.cols()[1..]
            .iter()
            .map(|c| chart.forward(&xi, c))
            .collect();
        let m_frame = Frame::new(cfg.d - 1, m_cols)?;

        let g = xray(&f, &xi, &chart, f.h())?;
        let lhs = maximal_plate(
            &g,
            &m_frame,
            cfg.delta,
            cfg.delta,
            cfg.samples,
            mix_seed(cfg.seed, 800 + i as u64),
        )?;

        let jmax = max_band_index(&f).min(j_top + 3);
        let mut rhs_sum = 0.0;
        for j in 0..=jmax.min(j_top) {
            let fj = lp_band(&f, j);
            let mut gj = xray(&fj, &xi, &chart, f.h())?;
            for v in gj.values_mut() {
                *v = v.abs();
            }
            let mj = maximal_plate(
                &gj,
                &m_frame,
                cfg.delta,
                cfg.delta,
                cfg.samples,
                mix_seed(cfg.seed, 900 + (i * 64 + j as usize) as u64),
            )?;
            rhs_sum += mj;
            // Scale comparison where the coarser thickness is a legal plate.
            let coarse = 2f64.powi(-(j as i32));
            if j >= 1 && coarse >= cfg.delta && coarse <= 0.5 && mj > 1e-12 {
                let m_coarse = maximal_plate(
                    &gj,
                    &m_frame,
                    coarse,
                    cfg.delta,
                    cfg.samples,
                    mix_seed(cfg.seed, 1700 + (i * 64 + j as usize) as u64),
                )?;
                if m_coarse > 1e-12 {
                    let ratio = mj / m_coarse;
                    match scale_worst.iter_mut().find(|(jj, _)| *jj == j) {
                        Some((_, worst)) => *worst = worst.max(ratio),
                        None => scale_worst.push((j, ratio)),
                    }
                }
            }
        }
        split_constants.push(lhs / rhs_sum);

        // Band L² decay against ‖f‖₂ over the direction set, fitted on the
        // bands the grid resolves: at least 4 samples per wavelength at the
        // band's top frequency, so interpolation error does not masquerade
        // as decay.
        let f_l2 = f.norm_l2();
        let fundamental = std::f64::consts::PI / DEFAULT_HALF_WIDTH;
        let resolved_top = fundamental * cfg.resolution as f64 / 4.0;
        for j in 2..=jmax {
            if 2f64.powi(j as i32) > resolved_top {
                break;
            }
            let fj = lp_band(&f, j);
            if fj.norm_l2() < 1e-6 * f_l2 {
                continue;
            }
            let num = xray_l2_norm(&fj, &dirs, &chart, f.h())?;
            let x = 2f64.powi(j as i32);
            match band_l2_acc.iter_mut().find(|(xx, _)| *xx == x) {
                Some((_, v)) => v.push(num / f_l2),
                None => band_l2_acc.push((x, vec![num / f_l2])),
            }
        }
    }

    band_l2_acc.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    let band_points: Vec<(f64, f64)> = band_l2_acc
        .into_iter()
        .map(|(x, v)| (x, v.iter().sum::<f64>() / v.len() as f64))
        .collect();
    let band_slope = if band_points.len() >= 3 {
        fit_loglog(&band_points)?.slope
    } else {
        f64::NAN
    };
    scale_worst.sort_by_key(|(j, _)| *j);
    let max_scale_ratio = scale_worst.iter().map(|(_, r)| *r).fold(0.0, f64::max);
    let max_split_constant = split_constants.iter().cloned().fold(0.0, f64::max);
    Ok(LpCheckReport {
        split_constants,
        max_split_constant,
        scale_ratios: scale_worst,
        max_scale_ratio,
        band_points,
        band_slope,
        split_budget: budgets::LP_SPLIT_C,
        scale_budget: budgets::SCALE_COMPARISON_C,
    })
}

// ---------------------------------------------------------------------------
// Grassmannian product measure
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GraProductConfig {
    pub d: usize,
    pub k: usize,
    pub samples: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MomentComparison {
    pub statistic: String,
    pub haar_mean: f64,
    pub haar_se: f64,
    pub lift_mean: f64,
    pub lift_se: f64,
    /// |difference| in combined standard errors.
    pub diff_in_se: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GraProductReport {
    pub comparisons: Vec<MomentComparison>,
    pub se_budget: f64,
    /// Analytic mean of ‖P e₁‖² under the invariant measure: k/d.
    pub expected_first_moment: f64,
}

fn moment_stats(samples: &[f64]) -> (f64, f64) {
    let n = samples.len() as f64;
    let mean = samples.iter().sum::<f64>() / n;
    let var = samples.iter().map(|s| (s - mean) * (s - mean)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

/// Compares moments of s(F) = ‖P_F v‖² (for v = e₁ and a fixed oblique
/// vector) between direct Haar frames and product-lift frames
/// (ξ, M) ↦ span(ξ, T_ξ^{−1}(M)).
pub fn graproduct_check(cfg: &GraProductConfig) -> Result<GraProductReport, LabError> {
    if cfg.k < 2 {
        return Err(LabError::domain("the product lift needs k >= 2 (M lives in G(d-1,k-1))"));
    }
    let chart = HemisphereChart;
    let d = cfg.d;
    let k = cfg.k;
    let mut oblique = vec![0.0; d];
    for (i, v) in oblique.iter_mut().enumerate() {
        *v = (i as f64 + 1.0).sqrt();
    }
    let n = dot(&oblique, &oblique).sqrt();
    oblique.iter_mut().for_each(|v| *v /= n);

    let stat = |frame: &Frame, v: &[f64]| -> f64 {
        let p = frame.project(v);
        dot(&p, &p)
    };

    let haar: Vec<(f64, f64)> = (0..cfg.samples)
        .into_par_iter()
        .map(|i| {
            let f = haar_frame(d, k, &mut stream_rng(mix_seed(cfg.seed, 1), i as u64))?;
            let mut e1 = vec![0.0; d];
            e1[0] = 1.0;
            Ok((stat(&f, &e1), stat(&f, &oblique)))
        })
        .collect::<Result<Vec<_>, LabError>>()?;
    let lifted: Vec<(f64, f64)> = (0..cfg.samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = stream_rng(mix_seed(cfg.seed, 2), i as u64);
            let xi = sphere_point(d, &mut rng);
            let m = haar_frame(d - 1, k - 1, &mut rng)?;
            let f = lift(&xi, &m, &chart)?;
            let mut e1 = vec![0.0; d];
            e1[0] = 1.0;
            Ok((stat(&f, &e1), stat(&f, &oblique)))
        })
        .collect::<Result<Vec<_>, LabError>>()?;

    let mut comparisons = Vec::new();
    for (name, pick) in [
        ("|P e1|^2", 0usize),
        ("|P v|^2 (oblique)", 1usize),
    ] {
        let hs: Vec<f64> = haar.iter().map(|t| if pick == 0 { t.0 } else { t.1 }).collect();
        let ls: Vec<f64> = lifted.iter().map(|t| if pick == 0 { t.0 } else { t.1 }).collect();
        let (hm, hse) = moment_stats(&hs);
        let (lm, lse) = moment_stats(&ls);
        let combined = (hse * hse + lse * lse).sqrt();
        comparisons.push(MomentComparison {
            statistic: name.to_string(),
            haar_mean: hm,
            haar_se: hse,
            lift_mean: lm,
            lift_se: lse,
            diff_in_se: (hm - lm).abs() / combined,
        });
        // Second moments, same machinery.
        let hs2: Vec<f64> = hs.iter().map(|s| s * s).collect();
        let ls2: Vec<f64> = ls.iter().map(|s| s * s).collect();
        let (hm2, hse2) = moment_stats(&hs2);
        let (lm2, lse2) = moment_stats(&ls2);
        let combined2 = (hse2 * hse2 + lse2 * lse2).sqrt();
        comparisons.push(MomentComparison {
            statistic: format!("{name} squared"),
            haar_mean: hm2,
            haar_se: hse2,
            lift_mean: lm2,
            lift_se: lse2,
            diff_in_se: (hm2 - lm2).abs() / combined2,
        });
    }
    Ok(GraProductReport {
        comparisons,
        se_budget: budgets::MOMENT_SE_FACTOR,
        expected_first_moment: k as f64 / d as f64,
    })
}

// ---------------------------------------------------------------------------
// X-ray mixed-norm exponent predicate
// ---------------------------------------------------------------------------

/// Pure predicate for the conjectured mixed-norm x-ray exponents:
/// (r finite with r ≥ 1, p = rd/(d+r−1), q ≤ r′d). Gates which exponents
/// the numerics may legitimately test; no numerics behind it.
pub fn xray_conjecture_check(p: &Rat, q: &Rat, r: &Rat, d: u32) -> (bool, bool, bool) {
    use kplane_core::rat::{int, uint};
    use num_traits::One;
    let r_ok = *r >= Rat::one();
    let dd = uint(d);
    let p_ok = *p == r * &dd / (&dd + r - int(1));
    let q_ok = if *r == Rat::one() {
        true // r' = ∞
    } else {
        match conjugate_exponent(r) {
            Ok(rc) => *q <= rc * &dd,
            Err(_) => false,
        }
    };
    (r_ok, p_ok, q_ok)
}
