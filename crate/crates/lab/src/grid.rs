//! Sampled real functions on regular grids over a cube in ℝ^d.
//!
//! Values live at x_i = origin + i·h per axis (row-major). The function is
//! taken to be zero outside its box, which is the right convention for the
//! compactly supported inputs of the transforms; `sample` evaluates the
//! multilinear interpolant, chosen because it is positivity-preserving
//! (the maximal operators act on nonnegative f) with O(h²) error on smooth f.

use crate::LabError;

/// Dense grids are only used up to d = 4.
pub const MAX_DIM: usize = 4;

/// Default half-width of the grid box: functions supported in the unit ball
/// leave room for plates of radius 1/2 + δ centered near the ball.
pub const DEFAULT_HALF_WIDTH: f64 = 1.25;

#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    d: usize,
    shape: Vec<usize>,
    strides: Vec<usize>,
    h: f64,
    origin: Vec<f64>,
    values: Vec<f64>,
}

fn strides_of(shape: &[usize]) -> Vec<usize> {
    let mut strides = vec![1usize; shape.len()];
    for a in (0..shape.len().saturating_sub(1)).rev() {
        strides[a] = strides[a + 1] * shape[a + 1];
    }
    strides
}

impl GridFunction {
    pub fn new(
        shape: Vec<usize>,
        h: f64,
        origin: Vec<f64>,
        values: Vec<f64>,
    ) -> Result<Self, LabError> {
        let d = shape.len();
        if d < 1 || d > MAX_DIM {
            return Err(LabError::domain(format!(
                "grid dimension must be 1..={MAX_DIM}, got {d}"
            )));
        }
        if origin.len() != d {
            return Err(LabError::domain("origin length must match dimension"));
        }
        if !(h > 0.0) {
            return Err(LabError::domain(format!("grid spacing must be positive, got {h}")));
        }
        let count: usize = shape.iter().product();
        if shape.iter().any(|&n| n < 2) {
            return Err(LabError::domain("each axis needs at least 2 samples"));
        }
        if values.len() != count {
            return Err(LabError::domain(format!(
                "value count {} does not match shape product {}",
                values.len(),
                count
            )));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(LabError::domain("grid values must all be finite"));
        }
        let strides = strides_of(&shape);
        Ok(GridFunction { d, shape, strides, h, origin, values })
    }

    /// Zero function on [-hw, hw)^d with n samples per axis (h = 2·hw/n; the
    /// sampling is periodic-style, so 0 is a grid point whenever n is even).
    pub fn zeros_centered(d: usize, n: usize, half_width: f64) -> Self {
        let h = 2.0 * half_width / n as f64;
        let shape = vec![n; d];
        let count: usize = shape.iter().product();
        let strides = strides_of(&shape);
        GridFunction {
            d,
            shape,
            strides,
            h,
            origin: vec![-half_width; d],
            values: vec![0.0; count],
        }
    }

    /// Samples `f` at every grid point of a centered box.
    pub fn from_fn(
        d: usize,
        n: usize,
        half_width: f64,
        f: impl Fn(&[f64]) -> f64,
    ) -> Self {
        let mut g = Self::zeros_centered(d, n, half_width);
        let mut pos = [0.0f64; MAX_DIM];
        let shape = g.shape.clone();
        let h = g.h;
        let origin = g.origin.clone();
        for (flat, v) in g.values.iter_mut().enumerate() {
            let mut rem = flat;
            for a in (0..d).rev() {
                let i = rem % shape[a];
                rem /= shape[a];
                pos[a] = origin[a] + i as f64 * h;
            }
            *v = f(&pos[..d]);
        }
        g
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn origin(&self) -> &[f64] {
        &self.origin
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Geometric center of the box.
    pub fn box_center(&self) -> Vec<f64> {
        (0..self.d)
            .map(|a| self.origin[a] + 0.5 * self.h * (self.shape[a] - 1) as f64)
            .collect()
    }

    /// Circumradius of the box around its center.
    pub fn box_radius(&self) -> f64 {
        let r2: f64 = self
            .shape
            .iter()
            .map(|&n| {
                let half = 0.5 * self.h * (n - 1) as f64;
                half * half
            })
            .sum();
        r2.sqrt()
    }

    /// Position of a multi-index.
    pub fn position(&self, multi: &[usize]) -> Vec<f64> {
        (0..self.d)
            .map(|a| self.origin[a] + multi[a] as f64 * self.h)
            .collect()
    }

    /// Multilinear interpolation; zero outside the sampled box.
    #[inline]
    pub fn sample(&self, x: &[f64]) -> f64 {
        debug_assert_eq!(x.len(), self.d);
        let mut base = [0usize; MAX_DIM];
        let mut frac = [0.0f64; MAX_DIM];
        for a in 0..self.d {
            let u = (x[a] - self.origin[a]) / self.h;
            let top = (self.shape[a] - 1) as f64;
            if !(u >= 0.0 && u <= top) {
                return 0.0;
            }
            let mut i = u.floor();
            if i >= top {
                i = top - 1.0;
            }
            base[a] = i as usize;
            frac[a] = u - i;
        }
        let mut acc = 0.0;
        let corners = 1usize << self.d;
        for c in 0..corners {
            let mut w = 1.0;
            let mut idx = 0usize;
            for a in 0..self.d {
                let bit = (c >> a) & 1;
                w *= if bit == 1 { frac[a] } else { 1.0 - frac[a] };
                idx += (base[a] + bit) * self.strides[a];
            }
            if w != 0.0 {
                acc += w * self.values[idx];
            }
        }
        acc
    }

    /// L^p norm with the grid measure h^d.
    pub fn norm_lp(&self, p: f64) -> f64 {
        assert!(p >= 1.0);
        let cell = self.h.powi(self.d as i32);
        let s: f64 = self.values.iter().map(|v| v.abs().powf(p)).sum();
        (cell * s).powf(1.0 / p)
    }

    pub fn norm_l2(&self) -> f64 {
        let cell = self.h.powi(self.d as i32);
        let s: f64 = self.values.iter().map(|v| v * v).sum();
        (cell * s).sqrt()
    }

    /// h^d · Σ values, the box integral of the sampled function.
    pub fn integral(&self) -> f64 {
        self.h.powi(self.d as i32) * self.values.iter().sum::<f64>()
    }

    pub fn max_value(&self) -> f64 {
        self.values.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn scale(&mut self, c: f64) {
        for v in &mut self.values {
            *v *= c;
        }
    }

    /// Bounding box (lo, hi corners) of the nonzero samples; `None` for the
    /// zero function. Used to prune translation lattices and crop x-ray
    /// output grids.
    pub fn support_bbox(&self) -> Option<(Vec<f64>, Vec<f64>)> {
        let mut lo = vec![usize::MAX; self.d];
        let mut hi = vec![0usize; self.d];
        let mut any = false;
        for (flat, v) in self.values.iter().enumerate() {
            if *v != 0.0 {
                any = true;
                let mut rem = flat;
                for a in (0..self.d).rev() {
                    let i = rem % self.shape[a];
                    rem /= self.shape[a];
                    lo[a] = lo[a].min(i);
                    hi[a] = hi[a].max(i);
                }
            }
        }
        if !any {
            return None;
        }
        let lo_pos = (0..self.d)
            .map(|a| self.origin[a] + lo[a] as f64 * self.h)
            .collect();
        let hi_pos = (0..self.d)
            .map(|a| self.origin[a] + hi[a] as f64 * self.h)
            .collect();
        Some((lo_pos, hi_pos))
    }

    /// Center and circumradius of the support bounding box; falls back to
    /// the whole box for the zero function.
    pub fn support_ball(&self) -> (Vec<f64>, f64) {
        match self.support_bbox() {
            Some((lo, hi)) => {
                let center: Vec<f64> =
                    lo.iter().zip(&hi).map(|(a, b)| 0.5 * (a + b)).collect();
                let r2: f64 = lo
                    .iter()
                    .zip(&hi)
                    .map(|(a, b)| {
                        let half = 0.5 * (b - a);
                        half * half
                    })
                    .sum();
                (center, r2.sqrt())
            }
            None => (self.box_center(), 0.0),
        }
    }

    /// True when every sample outside the closed unit ball vanishes, the
    /// support hypothesis for 𝒩^k inputs.
    pub fn supported_in_unit_ball(&self) -> bool {
        let mut pos = [0.0f64; MAX_DIM];
        for (flat, v) in self.values.iter().enumerate() {
            if *v == 0.0 {
                continue;
            }
            let mut rem = flat;
            let mut r2 = 0.0;
            for a in (0..self.d).rev() {
                let i = rem % self.shape[a];
                rem /= self.shape[a];
                pos[a] = self.origin[a] + i as f64 * self.h;
                r2 += pos[a] * pos[a];
            }
            if r2 > 1.0 {
                return false;
            }
        }
        true
    }
}

/// χ_{B(center, r)} sampled on a centered grid.
pub fn ball_indicator(d: usize, n: usize, half_width: f64, center: &[f64], r: f64) -> GridFunction {
    GridFunction::from_fn(d, n, half_width, |x| {
        let dist2: f64 = x.iter().zip(center).map(|(a, b)| (a - b) * (a - b)).sum();
        if dist2 <= r * r {
            1.0
        } else {
            0.0
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interpolation_reproduces_linear_functions() {
        let g = GridFunction::from_fn(2, 16, 1.0, |x| 2.0 * x[0] - 3.0 * x[1] + 0.5);
        let p = [0.317, -0.411];
        let want = 2.0 * p[0] - 3.0 * p[1] + 0.5;
        assert!((g.sample(&p) - want).abs() < 1e-12);
    }

    #[test]
    fn zero_outside_box() {
        let g = GridFunction::from_fn(2, 8, 1.0, |_| 1.0);
        assert_eq!(g.sample(&[1.5, 0.0]), 0.0);
        assert_eq!(g.sample(&[0.0, -1.01]), 0.0);
    }

    #[test]
    fn support_bbox_of_ball() {
        let g = ball_indicator(2, 64, 1.25, &[0.0, 0.0], 0.3);
        let (center, radius) = g.support_ball();
        assert!(center.iter().all(|c| c.abs() < 0.05));
        assert!(radius < 0.5, "radius = {radius}");
        assert!(g.supported_in_unit_ball());
    }

    #[test]
    fn norms_and_integral() {
        let g = GridFunction::from_fn(2, 32, 1.0, |_| 2.0);
        // Box [-1,1)^2 has area 4; constant 2 integrates to 8, ||f||_2 = 4.
        assert!((g.integral() - 8.0).abs() < 1e-12);
        assert!((g.norm_l2() - 4.0).abs() < 1e-12);
        assert!((g.norm_lp(2.0) - 4.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_malformed() {
        assert!(GridFunction::new(vec![4, 4], 0.1, vec![0.0], vec![0.0; 16]).is_err());
        assert!(GridFunction::new(vec![4, 4], 0.1, vec![0.0; 2], vec![0.0; 15]).is_err());
        assert!(GridFunction::new(vec![4, 4], -0.1, vec![0.0; 2], vec![0.0; 16]).is_err());
        assert!(GridFunction::new(vec![4, 4], 0.1, vec![0.0; 2], vec![f64::NAN; 16]).is_err());
    }
}
