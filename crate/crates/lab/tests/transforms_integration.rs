//! Cross-module identities: composition of the plate maximal operator with
//! the x-ray transform, Sobolev scaling, rotation invariance, chart
//! continuity, and Haar-measure statistics.

use kplane_lab::frame::{dot, norm, Frame, HemisphereChart};
use kplane_lab::grassmann::{haar_frame, lift, sphere_point, stream_rng};
use kplane_lab::grid::GridFunction;
use kplane_lab::plates::maximal_plate;
use kplane_lab::spectral::sobolev_norm;
use kplane_lab::testfn;
use kplane_lab::xray::{xray, xray_l2_norm};

/// Sum of a few fixed Gaussian bumps, as an analytic function (no grid
/// dependence), mean-free enough for Ḣ^{-1/2} at d = 3.
fn gaussian_mix(x: &[f64]) -> f64 {
    let centers: [[f64; 3]; 3] = [[0.2, -0.1, 0.3], [-0.3, 0.25, -0.1], [0.05, 0.2, -0.35]];
    let widths = [0.18, 0.25, 0.21];
    let signs = [1.0, -0.8, 0.6];
    let mut acc = 0.0;
    for i in 0..3 {
        let r2: f64 = x
            .iter()
            .zip(&centers[i])
            .map(|(a, b)| (a - b) * (a - b))
            .sum();
        acc += signs[i] * (-r2 / (2.0 * widths[i] * widths[i])).exp();
    }
    acc
}

#[test]
fn maximal_plate_composes_with_xray() {
    // M^k_delta[f](span(xi, T^-1 M)) <= C * M^{k-1}_delta[f_xi o T^-1](M).
    // With plate averages over the disk/segment cores, the sharp constant is
    // the volume ratio V_{k-1}(1/2)/V_k(1/2) (= 4/pi at k = 2): the k-disk
    // chord integrals are dominated by full line integrals, and the two
    // averages divide by different cross-section volumes.
    let chart = HemisphereChart;
    let c_dim = 1.0 / (std::f64::consts::PI / 4.0);
    let delta = 1.0 / 16.0;
    let n = 48;
    let mut worst: f64 = 0.0;
    for trial in 0..3u64 {
        let f = testfn::random_nonneg_smooth_in_ball(3, n, 1.25, 4.0, 0.9, 50 + trial);
        let mut rng = stream_rng(77, trial);
        let xi = sphere_point(3, &mut rng);
        let m = haar_frame(2, 1, &mut rng).unwrap();
        let l = lift(&xi, &m, &chart).unwrap();

        let lhs = maximal_plate(&f, &l, delta, delta, 768, 1000 + trial).unwrap();
        let g = xray(&f, &xi, &chart, f.h()).unwrap();
        let rhs = maximal_plate(&g, &m, delta, delta, 768, 2000 + trial).unwrap();
        worst = worst.max(lhs / rhs);
    }
    assert!(
        worst <= c_dim * 1.08,
        "composition ratio {worst} vs dimensional constant {c_dim}"
    );
}

#[test]
fn sobolev_dilation_homogeneity() {
    // f(x/2) sampled on a doubled box scales the Ḣ^s norm by 2^{d/2 - s}.
    let n = 96;
    let f1 = GridFunction::from_fn(3, n, 1.25, gaussian_mix);
    let f2 = GridFunction::from_fn(3, 2 * n, 2.5, |x| {
        gaussian_mix(&[x[0] / 2.0, x[1] / 2.0, x[2] / 2.0])
    });
    for s in [-0.5, 0.0, 0.7] {
        let want = 2f64.powf(1.5 - s);
        let got = sobolev_norm(&f2, s).unwrap() / sobolev_norm(&f1, s).unwrap();
        assert!(
            (got / want - 1.0).abs() < 0.02,
            "s={s}: ratio {got} vs 2^(3/2-s) = {want}"
        );
    }
}

#[test]
fn xray_l2_norm_rotation_invariance() {
    let n = 48;
    let chart = HemisphereChart;
    let dirs = kplane_lab::grassmann::sphere_sample(
        3,
        128,
        kplane_lab::grassmann::SphereMode::QuasiUniform,
        0,
    );
    // Rotation by a fixed orthogonal frame (Haar draw).
    let rot = haar_frame(4, 3, &mut stream_rng(5, 0)).unwrap();
    let r: Vec<Vec<f64>> = rot.cols()[..3]
        .iter()
        .map(|c| c[..3].to_vec())
        .collect();
    // Gram-Schmidt the 3x3 block to get an honest rotation.
    let mut rows = r;
    for i in 0..3 {
        for j in 0..i {
            let c = dot(&rows[i], &rows[j]);
            for a in 0..3 {
                rows[i][a] -= c * rows[j][a];
            }
        }
        let nn = norm(&rows[i]);
        rows[i].iter_mut().for_each(|v| *v /= nn);
    }
    let apply = |rows: &Vec<Vec<f64>>, x: &[f64]| -> [f64; 3] {
        [
            dot(&rows[0], x),
            dot(&rows[1], x),
            dot(&rows[2], x),
        ]
    };

    let f = GridFunction::from_fn(3, n, 1.25, gaussian_mix);
    let f_rot = GridFunction::from_fn(3, n, 1.25, |x| {
        let y = apply(&rows, x);
        gaussian_mix(&y)
    });
    let a = xray_l2_norm(&f, &dirs, &chart, f.h()).unwrap();
    let b = xray_l2_norm(&f_rot, &dirs, &chart, f_rot.h()).unwrap();
    assert!(
        (a / b - 1.0).abs() < 0.03,
        "rotation changed the norm: {a} vs {b}"
    );
}

#[test]
fn chart_is_continuous_within_hemispheres() {
    let chart = HemisphereChart;
    let mut rng = stream_rng(11, 0);
    for d in [2usize, 3, 4] {
        for _ in 0..20 {
            let xi = sphere_point(d, &mut rng);
            if xi[d - 1].abs() < 0.05 {
                continue; // stay away from the equator seam
            }
            for scale in [1e-3, 1e-5] {
                let mut xi2: Vec<f64> = xi
                    .iter()
                    .map(|v| v + scale * (rng.gen::<f64>() - 0.5))
                    .collect();
                let nn = norm(&xi2);
                xi2.iter_mut().for_each(|v| *v /= nn);
                if xi2[d - 1].signum() != xi[d - 1].signum() {
                    continue;
                }
                let ma = chart.matrix(&xi);
                let mb = chart.matrix(&xi2);
                let mut diff = 0.0f64;
                for i in 0..d - 1 {
                    for j in 0..d {
                        diff += (ma[i][j] - mb[i][j]).powi(2);
                    }
                }
                let diff = diff.sqrt();
                assert!(
                    diff < 50.0 * scale,
                    "chart jump {diff} for perturbation {scale} at d={d}"
                );
            }
        }
    }
}

use rand::Rng;

#[test]
fn haar_statistics_are_rotation_invariant_with_trace_identity() {
    // E |P_F e1|^2 = k/d under the invariant measure; the same holds after
    // any fixed rotation of the frames. (d,k) = (4,2): expect 1/2.
    let (d, k) = (4usize, 2usize);
    let n = 100_000;
    let rot = {
        // Orthogonal matrix from a Haar frame of full rank block.
        let f = haar_frame(d, d - 1, &mut stream_rng(21, 0)).unwrap();
        let mut cols = f.cols().to_vec();
        // complete to a rotation via the complement
        let comp = f.orthonormal_complement();
        cols.push(comp.cols()[0].clone());
        cols
    };
    let e1 = {
        let mut v = vec![0.0; d];
        v[0] = 1.0;
        v
    };
    let mut s_plain = Vec::with_capacity(n);
    let mut s_rot = Vec::with_capacity(n);
    for i in 0..n {
        let f = haar_frame(d, k, &mut stream_rng(1234, i as u64)).unwrap();
        let p = f.project(&e1);
        s_plain.push(dot(&p, &p));
        // Independent draw, rotated by the fixed R.
        let g = haar_frame(d, k, &mut stream_rng(4321, i as u64)).unwrap();
        let cols_rot: Vec<Vec<f64>> = g
            .cols()
            .iter()
            .map(|c| {
                (0..d)
                    .map(|row| (0..d).map(|l| rot[l][row] * c[l]).sum())
                    .collect()
            })
            .collect();
        let fr = Frame::new(d, cols_rot).unwrap();
        let p = fr.project(&e1);
        s_rot.push(dot(&p, &p));
    }
    let mean = |v: &[f64]| v.iter().sum::<f64>() / v.len() as f64;
    let se = |v: &[f64]| {
        let m = mean(v);
        let var = v.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / (v.len() - 1) as f64;
        (var / v.len() as f64).sqrt()
    };
    let (mp, sp) = (mean(&s_plain), se(&s_plain));
    let (mr, sr) = (mean(&s_rot), se(&s_rot));
    let want = k as f64 / d as f64;
    assert!((mp - want).abs() < 3.0 * sp, "E|Pe1|^2 = {mp} vs {want}");
    assert!(
        (mp - mr).abs() < 3.0 * (sp * sp + sr * sr).sqrt(),
        "rotation moved the statistic: {mp} vs {mr}"
    );
}

#[test]
fn shell_ratio_matches_plancherel_constant() {
    // For a spectral shell at index radius R the x-ray/Sobolev ratio must
    // reproduce the Plancherel constant measured on generic functions
    // (|ζ|^{-1} is constant on the shell, the sharp case).
    let n = 48;
    let chart = HemisphereChart;
    let dirs = kplane_lab::grassmann::sphere_sample(
        3,
        96,
        kplane_lab::grassmann::SphereMode::QuasiUniform,
        0,
    );
    let generic = testfn::random_mean_zero_in_ball(3, n, 1.25, 5.0, 0.95, 3);
    let c_d = xray_l2_norm(&generic, &dirs, &chart, generic.h()).unwrap()
        / sobolev_norm(&generic, -0.5).unwrap();

    let shell = testfn::random_shell(3, n, 1.25, 4.0, 9);
    let shell_ratio = xray_l2_norm(&shell, &dirs, &chart, shell.h()).unwrap()
        / sobolev_norm(&shell, -0.5).unwrap();
    assert!(
        (shell_ratio / c_d - 1.0).abs() < 0.05,
        "shell {shell_ratio} vs generic {c_d}"
    );
}
