//! Desk-scale quantum extension: density matrices, POVM-induced outcome
//! distributions, and a deterministic maximization of the classical JSD over
//! two-outcome projective qubit measurements.
//!
//! The reported maximum is a lower bound to the supremum over all POVMs: the
//! search family is the projective qubit measurements parameterized by a
//! Bloch direction, scanned on a coarse grid and then refined by a
//! deterministic compass search.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::dist::ProbDist;
use crate::error::{Error, Result};

use std::f64::consts::PI;

/// Largest supported Hilbert-space dimension for state and POVM types.
pub const MAX_DIM: usize = 4;

/// Hermiticity / trace tolerance for validated matrices.
pub const MATRIX_TOL: f64 = 1e-10;

/// Eigenvalues may dip this far below zero and still count as PSD.
pub const EIGENVALUE_FLOOR: f64 = -1e-10;

/// A small dense complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![Complex64::ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.set(i, i, Complex64::ONE);
        }
        m
    }

    /// Build from row-major `[re, im]` pairs.
    pub fn from_parts(dim: usize, parts: &[[f64; 2]]) -> Result<Self> {
        if parts.len() != dim * dim {
            return Err(Error::InvalidMatrix(format!(
                "expected {} entries for dimension {dim}, got {}",
                dim * dim,
                parts.len()
            )));
        }
        Ok(Self {
            dim,
            data: parts.iter().map(|p| Complex64::new(p[0], p[1])).collect(),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[i * self.dim + j] = v;
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        Self {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == Complex64::ZERO {
                    continue;
                }
                for j in 0..n {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn adjoint(&self) -> Self {
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, self.get(j, i).conj());
            }
        }
        out
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    /// Tr(AB) without forming the product.
    pub fn trace_product(&self, other: &Self) -> Complex64 {
        assert_eq!(self.dim, other.dim);
        let n = self.dim;
        let mut acc = Complex64::ZERO;
        for i in 0..n {
            for j in 0..n {
                acc += self.get(i, j) * other.get(j, i);
            }
        }
        acc
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        let n = self.dim;
        for i in 0..n {
            if self.get(i, i).im.abs() > tol {
                return false;
            }
            for j in i + 1..n {
                if (self.get(i, j) - self.get(j, i).conj()).norm() > tol {
                    return false;
                }
            }
        }
        true
    }

    /// Largest entry-wise absolute difference.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// Pauli matrices (σx, σy, σz).
pub fn pauli() -> [CMatrix; 3] {
    let i = Complex64::I;
    let one = Complex64::ONE;
    let mut sx = CMatrix::zeros(2);
    sx.set(0, 1, one);
    sx.set(1, 0, one);
    let mut sy = CMatrix::zeros(2);
    sy.set(0, 1, -i);
    sy.set(1, 0, i);
    let mut sz = CMatrix::zeros(2);
    sz.set(0, 0, one);
    sz.set(1, 1, -one);
    [sx, sy, sz]
}

/// Eigenvalues of a Hermitian matrix by cyclic Jacobi rotations, ascending.
pub fn hermitian_eigenvalues(m: &CMatrix) -> Result<Vec<f64>> {
    if !m.is_hermitian(1e-8) {
        return Err(Error::InvalidMatrix(
            "eigenvalue routine requires a Hermitian matrix".into(),
        ));
    }
    let n = m.dim;
    let mut a = m.clone();
    if n > 1 {
        for _sweep in 0..100 {
            let mut off = 0.0;
            for p in 0..n {
                for q in p + 1..n {
                    off += a.get(p, q).norm_sqr();
                }
            }
            let diag: f64 = (0..n).map(|i| a.get(i, i).norm_sqr()).sum();
            if off <= 1e-30 * (1.0 + diag) {
                break;
            }
            for p in 0..n - 1 {
                for q in p + 1..n {
                    jacobi_rotate(&mut a, p, q);
                }
            }
        }
    }
    let mut eigs: Vec<f64> = (0..n).map(|i| a.get(i, i).re).collect();
    eigs.sort_by(|x, y| x.partial_cmp(y).expect("eigenvalues are finite"));
    Ok(eigs)
}

/// One complex Jacobi rotation annihilating the (p, q) off-diagonal entry.
fn jacobi_rotate(a: &mut CMatrix, p: usize, q: usize) {
    let apq = a.get(p, q);
    let r = apq.norm();
    if r < 1e-300 {
        return;
    }
    let phase = apq / r;
    let app = a.get(p, p).re;
    let aqq = a.get(q, q).re;
    let theta = (aqq - app) / (2.0 * r);
    let t = if theta == 0.0 {
        1.0
    } else {
        theta.signum() / (theta.abs() + (1.0 + theta * theta).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    let n = a.dim;
    // A <- A·J with J_pp = c, J_pq = s·phase, J_qp = -s·conj(phase), J_qq = c.
    for k in 0..n {
        let akp = a.get(k, p);
        let akq = a.get(k, q);
        a.set(k, p, c * akp - s * phase.conj() * akq);
        a.set(k, q, s * phase * akp + c * akq);
    }
    // A <- J†·A.
    for k in 0..n {
        let apk = a.get(p, k);
        let aqk = a.get(q, k);
        a.set(p, k, c * apk - s * phase * aqk);
        a.set(q, k, s * phase.conj() * apk + c * aqk);
    }
}

/// A validated density matrix: Hermitian, unit trace, positive semidefinite,
/// dimension at most [`MAX_DIM`].
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    mat: CMatrix,
}

impl DensityMatrix {
    pub fn new(mat: CMatrix) -> Result<Self> {
        let d = mat.dim();
        if d == 0 || d > MAX_DIM {
            return Err(Error::UnsupportedDimension(d));
        }
        if !mat.is_hermitian(MATRIX_TOL) {
            return Err(Error::InvalidMatrix("density matrix is not Hermitian".into()));
        }
        let tr = mat.trace();
        if (tr.re - 1.0).abs() > MATRIX_TOL || tr.im.abs() > MATRIX_TOL {
            return Err(Error::InvalidMatrix(format!(
                "density matrix has trace {tr}, expected 1"
            )));
        }
        let eigs = hermitian_eigenvalues(&mat)?;
        if eigs.iter().any(|&e| e < EIGENVALUE_FLOOR) {
            return Err(Error::InvalidMatrix(format!(
                "density matrix has negative eigenvalue {}",
                eigs[0]
            )));
        }
        Ok(Self { mat })
    }

    /// Qubit state ρ = ½(I + r·σ) from a Bloch vector with |r| ≤ 1.
    pub fn from_bloch(x: f64, y: f64, z: f64) -> Result<Self> {
        let norm = (x * x + y * y + z * z).sqrt();
        if norm > 1.0 + 1e-12 {
            return Err(Error::InvalidMatrix(format!(
                "Bloch vector has norm {norm} > 1"
            )));
        }
        let [sx, sy, sz] = pauli();
        let mat = CMatrix::identity(2)
            .add(&sx.scale(Complex64::new(x, 0.0)))
            .add(&sy.scale(Complex64::new(y, 0.0)))
            .add(&sz.scale(Complex64::new(z, 0.0)))
            .scale(Complex64::new(0.5, 0.0));
        Self::new(mat)
    }

    /// Diagonal state from a probability vector.
    pub fn from_diagonal(probs: &ProbDist) -> Result<Self> {
        let d = probs.len();
        let mut mat = CMatrix::zeros(d);
        for (i, &p) in probs.probs().iter().enumerate() {
            mat.set(i, i, Complex64::new(p, 0.0));
        }
        Self::new(mat)
    }

    pub fn dim(&self) -> usize {
        self.mat.dim()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.mat
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        hermitian_eigenvalues(&self.mat).expect("density matrices are Hermitian")
    }

    /// Bloch vector (Tr ρσx, Tr ρσy, Tr ρσz); qubits only.
    pub fn bloch_vector(&self) -> Result<[f64; 3]> {
        if self.dim() != 2 {
            return Err(Error::UnsupportedDimension(self.dim()));
        }
        let [sx, sy, sz] = pauli();
        Ok([
            self.mat.trace_product(&sx).re,
            self.mat.trace_product(&sy).re,
            self.mat.trace_product(&sz).re,
        ])
    }
}

/// A positive operator-valued measure: PSD elements summing to the identity.
#[derive(Debug, Clone)]
pub struct Povm {
    elements: Vec<CMatrix>,
}

impl Povm {
    pub fn new(elements: Vec<CMatrix>) -> Result<Self> {
        let first = elements
            .first()
            .ok_or_else(|| Error::InvalidMatrix("POVM has no elements".into()))?;
        let d = first.dim();
        if d == 0 || d > MAX_DIM {
            return Err(Error::UnsupportedDimension(d));
        }
        let mut sum = CMatrix::zeros(d);
        for (k, e) in elements.iter().enumerate() {
            if e.dim() != d {
                return Err(Error::DimensionMismatch {
                    left: d,
                    right: e.dim(),
                });
            }
            if !e.is_hermitian(MATRIX_TOL) {
                return Err(Error::InvalidMatrix(format!(
                    "POVM element {k} is not Hermitian"
                )));
            }
            let eigs = hermitian_eigenvalues(e)?;
            if eigs.iter().any(|&x| x < EIGENVALUE_FLOOR) {
                return Err(Error::InvalidMatrix(format!(
                    "POVM element {k} has negative eigenvalue {}",
                    eigs[0]
                )));
            }
            sum = sum.add(e);
        }
        if sum.max_abs_diff(&CMatrix::identity(d)) > MATRIX_TOL {
            return Err(Error::InvalidMatrix(
                "POVM elements do not sum to the identity".into(),
            ));
        }
        Ok(Self { elements })
    }

    /// The two-outcome projective qubit measurement along the Bloch direction
    /// (θ, φ): elements ½(I ± n̂·σ).
    pub fn projective_qubit(theta: f64, phi: f64) -> Self {
        let n = direction(theta, phi);
        let [sx, sy, sz] = pauli();
        let ns = sx
            .scale(Complex64::new(n[0], 0.0))
            .add(&sy.scale(Complex64::new(n[1], 0.0)))
            .add(&sz.scale(Complex64::new(n[2], 0.0)));
        let plus = CMatrix::identity(2).add(&ns).scale(Complex64::new(0.5, 0.0));
        let minus = CMatrix::identity(2)
            .add(&ns.scale(-Complex64::ONE))
            .scale(Complex64::new(0.5, 0.0));
        Self {
            elements: vec![plus, minus],
        }
    }

    pub fn elements(&self) -> &[CMatrix] {
        &self.elements
    }

    pub fn dim(&self) -> usize {
        self.elements[0].dim()
    }

    /// Bloch direction of the first element, for two-outcome qubit POVMs.
    pub fn bloch_direction(&self) -> Option<[f64; 3]> {
        if self.dim() != 2 || self.elements.len() != 2 {
            return None;
        }
        let [sx, sy, sz] = pauli();
        let e = &self.elements[0];
        Some([
            e.trace_product(&sx).re,
            e.trace_product(&sy).re,
            e.trace_product(&sz).re,
        ])
    }
}

fn direction(theta: f64, phi: f64) -> [f64; 3] {
    let (st, ct) = theta.sin_cos();
    let (sp, cp) = phi.sin_cos();
    [st * cp, st * sp, ct]
}

/// Outcome distribution (Tr E₁ρ, ..., Tr E_Kρ) of measuring a state.
pub fn povm_probs(state: &DensityMatrix, povm: &Povm) -> Result<ProbDist> {
    if state.dim() != povm.dim() {
        return Err(Error::DimensionMismatch {
            left: state.dim(),
            right: povm.dim(),
        });
    }
    let mut probs: Vec<f64> = povm
        .elements()
        .iter()
        .map(|e| e.trace_product(state.matrix()).re.max(0.0))
        .collect();
    let sum: f64 = probs.iter().sum();
    for p in probs.iter_mut() {
        *p /= sum;
    }
    ProbDist::new(probs)
}

/// Settings of the deterministic grid + compass-search maximizer.
#[derive(Debug, Clone, Copy)]
pub struct OptimizerConfig {
    /// θ samples on [0, π], endpoints included.
    pub theta_points: usize,
    /// φ samples on [0, 2π).
    pub phi_points: usize,
    /// Cap on refinement iterations.
    pub max_iters: usize,
    /// Refinement stops once the step falls below this.
    pub step_tol: f64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self {
            theta_points: 64,
            phi_points: 128,
            max_iters: 2000,
            step_tol: 1e-9,
        }
    }
}

/// Result of the measurement maximization. `value` is a certified lower
/// bound to the supremum of the classical JSD over all POVMs; equality holds
/// whenever a two-outcome projective measurement attains the optimum.
#[derive(Debug, Clone)]
pub struct QjsdResult {
    pub value: f64,
    pub best_povm: Povm,
    pub iterations: usize,
    pub converged: bool,
}

fn binary_entropy(x: f64) -> f64 {
    let mut h = 0.0;
    if x > 0.0 {
        h -= x * x.log2();
    }
    let y = 1.0 - x;
    if y > 0.0 {
        h -= y * y.log2();
    }
    h
}

/// JSD in bits between the binary distributions (p, 1-p) and (q, 1-q).
fn binary_jsd(p: f64, q: f64) -> f64 {
    let m = 0.5 * (p + q);
    (binary_entropy(m) - 0.5 * (binary_entropy(p) + binary_entropy(q))).clamp(0.0, 1.0)
}

fn dot(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

/// Maximize the classical JSD of measurement outcomes over two-outcome
/// projective qubit measurements: coarse (θ, φ) grid, then compass search.
pub fn qjsd_max(
    rho: &DensityMatrix,
    sigma: &DensityMatrix,
    config: &OptimizerConfig,
) -> Result<QjsdResult> {
    if rho.dim() != sigma.dim() {
        return Err(Error::DimensionMismatch {
            left: rho.dim(),
            right: sigma.dim(),
        });
    }
    if rho.dim() != 2 {
        return Err(Error::UnsupportedDimension(rho.dim()));
    }
    let r = rho.bloch_vector()?;
    let s = sigma.bloch_vector()?;
    let eval = |theta: f64, phi: f64| -> f64 {
        let n = direction(theta, phi);
        let p = (0.5 * (1.0 + dot(&n, &r))).clamp(0.0, 1.0);
        let q = (0.5 * (1.0 + dot(&n, &s))).clamp(0.0, 1.0);
        binary_jsd(p, q)
    };

    let tp = config.theta_points.max(2);
    let pp = config.phi_points.max(1);
    let dtheta = PI / (tp - 1) as f64;
    let dphi = 2.0 * PI / pp as f64;
    // Parallel over grid cells; ties resolve to the lowest cell index, so the
    // reduction is deterministic for any worker count.
    let (mut best_v, best_cell) = (0..tp * pp)
        .into_par_iter()
        .map(|k| (eval((k / pp) as f64 * dtheta, (k % pp) as f64 * dphi), k))
        .reduce(
            || (f64::NEG_INFINITY, usize::MAX),
            |a, b| {
                if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) {
                    b
                } else {
                    a
                }
            },
        );
    let mut best_t = (best_cell / pp) as f64 * dtheta;
    let mut best_p = (best_cell % pp) as f64 * dphi;

    let mut ht = dtheta;
    let mut hp = dphi;
    let mut iterations = 0;
    let mut converged = false;
    while iterations < config.max_iters {
        iterations += 1;
        let mut moved = false;
        for &(dt, dp) in &[
            (ht, 0.0),
            (-ht, 0.0),
            (0.0, hp),
            (0.0, -hp),
            (ht, hp),
            (ht, -hp),
            (-ht, hp),
            (-ht, -hp),
        ] {
            let v = eval(best_t + dt, best_p + dp);
            if v > best_v {
                best_v = v;
                best_t += dt;
                best_p += dp;
                moved = true;
            }
        }
        if !moved {
            ht *= 0.5;
            hp *= 0.5;
            if ht.max(hp) < config.step_tol {
                converged = true;
                break;
            }
        }
    }

    Ok(QjsdResult {
        value: best_v.clamp(0.0, 1.0),
        best_povm: Povm::projective_qubit(best_t, best_p),
        iterations,
        converged,
    })
}

/// The α-power of the measurement-maximized JSD.
pub fn qjsd_alpha(
    rho: &DensityMatrix,
    sigma: &DensityMatrix,
    alpha: f64,
    config: &OptimizerConfig,
) -> Result<f64> {
    if alpha <= 0.0 || !alpha.is_finite() {
        return Err(Error::Domain(format!(
            "exponent must be positive and finite, got {alpha}"
        )));
    }
    Ok(qjsd_max(rho, sigma, config)?.value.powf(alpha))
}
