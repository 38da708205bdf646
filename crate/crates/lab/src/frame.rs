//! Orthonormal k-frames in ℝ^d (points of G(d,k)) and the hemisphere chart
//! T_ξ : ξ^⊥ → ℝ^{d−1}.

use crate::LabError;

pub const GRAM_TOL: f64 = 1e-12;

/// An orthonormal k-frame spanning a point of G(d,k). Columns are the basis
/// vectors; the spanned subspace, not the basis, is the geometric object, so
/// comparisons go through the projector B·Bᵀ.
#[derive(Debug, Clone, PartialEq)]
pub struct Frame {
    d: usize,
    k: usize,
    cols: Vec<Vec<f64>>,
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

impl Frame {
    pub fn new(d: usize, cols: Vec<Vec<f64>>) -> Result<Self, LabError> {
        let k = cols.len();
        if k == 0 || k >= d {
            return Err(LabError::domain(format!(
                "frame needs 1 <= k < d, got k={k}, d={d}"
            )));
        }
        for c in &cols {
            if c.len() != d {
                return Err(LabError::domain("frame columns must have length d"));
            }
        }
        for i in 0..k {
            for j in i..k {
                let g = dot(&cols[i], &cols[j]);
                let want = if i == j { 1.0 } else { 0.0 };
                if (g - want).abs() > GRAM_TOL {
                    return Err(LabError::domain(format!(
                        "frame is not orthonormal: gram[{i}][{j}] = {g}"
                    )));
                }
            }
        }
        Ok(Frame { d, k, cols })
    }

    /// Axis-aligned frame spanning the first k coordinates.
    pub fn axis_aligned(d: usize, k: usize) -> Self {
        let cols = (0..k)
            .map(|i| {
                let mut c = vec![0.0; d];
                c[i] = 1.0;
                c
            })
            .collect();
        Frame { d, k, cols }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn cols(&self) -> &[Vec<f64>] {
        &self.cols
    }

    /// Coordinates of v in the frame (Bᵀ v).
    pub fn coords(&self, v: &[f64]) -> Vec<f64> {
        self.cols.iter().map(|c| dot(c, v)).collect()
    }

    /// B u for coordinates u ∈ ℝ^k.
    pub fn apply(&self, u: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.d];
        for (ui, c) in u.iter().zip(&self.cols) {
            for (o, x) in out.iter_mut().zip(c) {
                *o += ui * x;
            }
        }
        out
    }

    /// Orthogonal projection P v onto the spanned subspace.
    pub fn project(&self, v: &[f64]) -> Vec<f64> {
        self.apply(&self.coords(v))
    }

    /// The projector P = B Bᵀ as a dense matrix, the basis-independent
    /// representation of the subspace.
    pub fn projector(&self) -> Vec<Vec<f64>> {
        let mut p = vec![vec![0.0; self.d]; self.d];
        for c in &self.cols {
            for i in 0..self.d {
                for j in 0..self.d {
                    p[i][j] += c[i] * c[j];
                }
            }
        }
        p
    }

    /// An orthonormal frame for the orthogonal complement, built by
    /// Gram-Schmidt over the standard basis with re-orthogonalization.
    pub fn orthonormal_complement(&self) -> Frame {
        let mut basis: Vec<Vec<f64>> = self.cols.clone();
        let mut comp: Vec<Vec<f64>> = Vec::with_capacity(self.d - self.k);
        for axis in 0..self.d {
            if basis.len() == self.d {
                break;
            }
            let mut v = vec![0.0; self.d];
            v[axis] = 1.0;
            // Two passes keep orthogonality near machine precision.
            for _ in 0..2 {
                for b in &basis {
                    let c = dot(&v, b);
                    for (vi, bi) in v.iter_mut().zip(b) {
                        *vi -= c * bi;
                    }
                }
            }
            let n = norm(&v);
            if n > 1e-8 {
                for vi in &mut v {
                    *vi /= n;
                }
                basis.push(v.clone());
                comp.push(v);
            }
        }
        assert_eq!(comp.len(), self.d - self.k, "complement completion failed");
        Frame { d: self.d, k: self.d - self.k, cols: comp }
    }
}

/// Distance between two subspaces via their projectors (Frobenius norm of
/// P₁ − P₂); zero iff the frames span the same subspace.
pub fn projector_distance(a: &Frame, b: &Frame) -> f64 {
    assert_eq!(a.d(), b.d());
    let pa = a.projector();
    let pb = b.projector();
    let mut s = 0.0;
    for i in 0..a.d() {
        for j in 0..a.d() {
            let diff = pa[i][j] - pb[i][j];
            s += diff * diff;
        }
    }
    s.sqrt()
}

/// The orthogonal identification T_ξ : ξ^⊥ → ℝ^{d−1}, chosen continuously on
/// the open upper and lower hemispheres: the Householder reflection
/// exchanging ξ with sign(ξ_d)·e_d, followed by dropping the last
/// coordinate. The equator (ξ_d = 0) uses the upper-hemisphere rule; the
/// poles use the identity chart.
#[derive(Debug, Clone, Copy, Default)]
pub struct HemisphereChart;

impl HemisphereChart {
    fn reflection_data(&self, xi: &[f64]) -> Option<(Vec<f64>, f64)> {
        let d = xi.len();
        let s = if xi[d - 1] >= 0.0 { 1.0 } else { -1.0 };
        let mut v = xi.to_vec();
        v[d - 1] -= s;
        let vv = dot(&v, &v);
        if vv < 1e-28 {
            None // xi is (numerically) the pole ±e_d
        } else {
            Some((v, vv))
        }
    }

    fn reflect(v: &[f64], vv: f64, x: &mut [f64]) {
        let c = 2.0 * dot(v, x) / vv;
        for (xi, vi) in x.iter_mut().zip(v) {
            *xi -= c * vi;
        }
    }

    /// T_ξ w for w ⟂ ξ.
    pub fn forward(&self, xi: &[f64], w: &[f64]) -> Vec<f64> {
        let d = xi.len();
        let mut x = w.to_vec();
        if let Some((v, vv)) = self.reflection_data(xi) {
            Self::reflect(&v, vv, &mut x);
        }
        x.truncate(d - 1);
        x
    }

    /// T_ξ^{-1} z ∈ ξ^⊥ for z ∈ ℝ^{d−1}.
    pub fn inverse(&self, xi: &[f64], z: &[f64]) -> Vec<f64> {
        let d = xi.len();
        let mut x = vec![0.0; d];
        x[..d - 1].copy_from_slice(z);
        if let Some((v, vv)) = self.reflection_data(xi) {
            Self::reflect(&v, vv, &mut x);
        }
        x
    }

    /// The extension of T_ξ to all of ℝ^d as a (d−1)×d matrix (x ↦ the first
    /// d−1 coordinates of the reflected x), for continuity spot checks.
    pub fn matrix(&self, xi: &[f64]) -> Vec<Vec<f64>> {
        let d = xi.len();
        let mut m = vec![vec![0.0; d]; d - 1];
        for j in 0..d {
            let mut e = vec![0.0; d];
            e[j] = 1.0;
            if let Some((v, vv)) = self.reflection_data(xi) {
                Self::reflect(&v, vv, &mut e);
            }
            for i in 0..d - 1 {
                m[i][j] = e[i];
            }
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complement_is_orthonormal_and_orthogonal() {
        let f = Frame::new(
            3,
            vec![vec![1.0 / 2f64.sqrt(), 1.0 / 2f64.sqrt(), 0.0]],
        )
        .unwrap();
        let c = f.orthonormal_complement();
        assert_eq!(c.k(), 2);
        for col in c.cols() {
            assert!((norm(col) - 1.0).abs() < 1e-12);
            assert!(dot(col, &f.cols()[0]).abs() < 1e-12);
        }
    }

    #[test]
    fn chart_preserves_norm_on_perp() {
        let chart = HemisphereChart;
        let xi = {
            let mut v = vec![0.3, -0.4, 0.5, 0.2];
            let n = norm(&v);
            v.iter_mut().for_each(|x| *x /= n);
            v
        };
        // Build w ⟂ xi.
        let mut w = vec![1.0, 0.5, -0.25, 0.125];
        let c = dot(&w, &xi);
        for (wi, xii) in w.iter_mut().zip(&xi) {
            *wi -= c * xii;
        }
        let z = chart.forward(&xi, &w);
        assert!((norm(&z) - norm(&w)).abs() < 1e-12);
        let back = chart.inverse(&xi, &z);
        for (a, b) in back.iter().zip(&w) {
            assert!((a - b).abs() < 1e-10);
        }
        assert!(dot(&back, &xi).abs() < 1e-12);
    }

    #[test]
    fn chart_at_pole_is_coordinate_identification() {
        let chart = HemisphereChart;
        let xi = vec![0.0, 0.0, 1.0];
        let w = vec![0.7, -0.2, 0.0];
        assert_eq!(chart.forward(&xi, &w), vec![0.7, -0.2]);
        assert_eq!(chart.inverse(&xi, &[0.7, -0.2]), vec![0.7, -0.2, 0.0]);
    }

    #[test]
    fn projector_is_basis_independent() {
        // Same plane, two bases.
        let inv = 1.0 / 2f64.sqrt();
        let a = Frame::new(3, vec![vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0]]).unwrap();
        let b = Frame::new(3, vec![vec![inv, inv, 0.0], vec![inv, -inv, 0.0]]).unwrap();
        assert!(projector_distance(&a, &b) < 1e-10);
    }
}
