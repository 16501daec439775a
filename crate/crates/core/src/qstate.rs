//! Single- and two-qubit state algebra.
//!
//! Conventions: logarithms are base 2, `0·log 0 = 0`, two-qubit basis index
//! is `2·a + b` for the computational state `|a b⟩` (qubit A is the most
//! significant), and the `+` outcome of an axis measurement is listed first.

use std::f64::consts::SQRT_2;
use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::{DMatrix, Matrix2, Matrix4, SMatrix, SymmetricEigen};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type C64 = Complex64;

const NORM_TOL: f64 = 1e-12;
const MATRIX_TOL: f64 = 1e-10;

/// Real 3-vector of Pauli expectations: a qubit state (norm ≤ 1) or,
/// when unit-norm, a measurement direction.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct BlochVector {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl BlochVector {
    pub const ZERO: BlochVector = BlochVector::new(0.0, 0.0, 0.0);

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        BlochVector { x, y, z }
    }

    /// Checked constructor for a physical state, `|s| ≤ 1`.
    pub fn state(x: f64, y: f64, z: f64) -> Result<Self> {
        let s = BlochVector::new(x, y, z);
        s.check_physical()?;
        Ok(s)
    }

    pub fn check_physical(&self) -> Result<()> {
        let n = self.norm();
        if !n.is_finite() || n > 1.0 + NORM_TOL {
            return Err(Error::domain(format!("Bloch vector norm {n} exceeds 1")));
        }
        Ok(())
    }

    pub fn from_array(a: [f64; 3]) -> Self {
        BlochVector::new(a[0], a[1], a[2])
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn dot(self, other: BlochVector) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn cross(self, o: BlochVector) -> BlochVector {
        BlochVector::new(
            self.y * o.z - self.z * o.y,
            self.z * o.x - self.x * o.z,
            self.x * o.y - self.y * o.x,
        )
    }

    pub fn norm(self) -> f64 {
        self.dot(self).sqrt()
    }

    /// Unit vector along `self`, or `None` for (numerically) zero vectors.
    pub fn normalized(self) -> Option<BlochVector> {
        let n = self.norm();
        (n > NORM_TOL).then(|| self * (1.0 / n))
    }

    pub fn max_abs_diff(self, other: BlochVector) -> f64 {
        let d = self - other;
        d.x.abs().max(d.y.abs()).max(d.z.abs())
    }
}

impl Add for BlochVector {
    type Output = BlochVector;
    fn add(self, o: BlochVector) -> BlochVector {
        BlochVector::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for BlochVector {
    type Output = BlochVector;
    fn sub(self, o: BlochVector) -> BlochVector {
        BlochVector::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Neg for BlochVector {
    type Output = BlochVector;
    fn neg(self) -> BlochVector {
        BlochVector::new(-self.x, -self.y, -self.z)
    }
}

impl Mul<f64> for BlochVector {
    type Output = BlochVector;
    fn mul(self, k: f64) -> BlochVector {
        BlochVector::new(self.x * k, self.y * k, self.z * k)
    }
}

/// A projective ±1 qubit observable `n·σ`, identified with its unit axis `n`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(into = "[f64; 3]", try_from = "[f64; 3]")]
pub struct MeasurementAxis(BlochVector);

impl MeasurementAxis {
    pub const X: MeasurementAxis = MeasurementAxis(BlochVector::new(1.0, 0.0, 0.0));
    pub const Y: MeasurementAxis = MeasurementAxis(BlochVector::new(0.0, 1.0, 0.0));
    pub const Z: MeasurementAxis = MeasurementAxis(BlochVector::new(0.0, 0.0, 1.0));

    /// Normalises `v`; fails only for the zero vector.
    pub fn new(v: BlochVector) -> Result<Self> {
        v.normalized()
            .map(MeasurementAxis)
            .ok_or_else(|| Error::domain("measurement axis must be nonzero"))
    }

    /// Accepts `v` only if it is already unit norm (within 1e-12).
    pub fn unit(v: BlochVector) -> Result<Self> {
        if (v.norm() - 1.0).abs() > NORM_TOL {
            return Err(Error::domain(format!(
                "measurement axis has norm {}, expected 1",
                v.norm()
            )));
        }
        Ok(MeasurementAxis(v))
    }

    /// `cosθ cosφ x̂ + cosθ sinφ ŷ + sinθ ẑ` (latitude θ, longitude φ).
    pub fn from_angles(theta: f64, phi: f64) -> Self {
        MeasurementAxis(BlochVector::new(
            theta.cos() * phi.cos(),
            theta.cos() * phi.sin(),
            theta.sin(),
        ))
    }

    pub fn vector(self) -> BlochVector {
        self.0
    }

    pub fn dot(self, v: BlochVector) -> f64 {
        self.0.dot(v)
    }

    pub fn flipped(self) -> Self {
        MeasurementAxis(-self.0)
    }

    pub fn is_orthogonal_to(self, other: MeasurementAxis, tol: f64) -> bool {
        self.0.dot(other.0).abs() <= tol
    }

    /// The observable `n·σ`.
    pub fn observable(self) -> Matrix2<C64> {
        let [x, y, z] = pauli();
        x * c(self.0.x) + y * c(self.0.y) + z * c(self.0.z)
    }

    /// Spectral projector for outcome `+1` (`outcome = 0`) or `−1` (`outcome = 1`).
    pub fn projector(self, outcome: usize) -> Matrix2<C64> {
        let sign = if outcome == 0 { 1.0 } else { -1.0 };
        (Matrix2::identity() + self.observable() * c(sign)) * c(0.5)
    }
}

impl From<MeasurementAxis> for [f64; 3] {
    fn from(a: MeasurementAxis) -> [f64; 3] {
        a.0.to_array()
    }
}

impl TryFrom<[f64; 3]> for MeasurementAxis {
    type Error = Error;
    fn try_from(a: [f64; 3]) -> Result<Self> {
        MeasurementAxis::new(BlochVector::from_array(a))
    }
}

/// Outcome distribution of a two-outcome measurement.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProbPair {
    pub p_plus: f64,
    pub p_minus: f64,
}

/// Which half of a two-qubit system.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Subsystem {
    A,
    B,
}

#[inline]
pub(crate) fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}

/// Pauli matrices `[X, Y, Z]`.
pub fn pauli() -> [Matrix2<C64>; 3] {
    let o = C64::new(0.0, 0.0);
    let i = C64::new(0.0, 1.0);
    [
        Matrix2::new(o, c(1.0), c(1.0), o),
        Matrix2::new(o, -i, i, o),
        Matrix2::new(c(1.0), o, o, c(-1.0)),
    ]
}

/// Kronecker product `a ⊗ b` of two single-qubit operators.
pub fn kron(a: &Matrix2<C64>, b: &Matrix2<C64>) -> Matrix4<C64> {
    Matrix4::from_fn(|r, col| a[(r / 2, col / 2)] * b[(r % 2, col % 2)])
}

/// Hermitian, positive semidefinite, unit-trace `D × D` matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix<const D: usize> {
    m: SMatrix<C64, D, D>,
}

pub type QubitDensity = DensityMatrix<2>;
pub type TwoQubitDensity = DensityMatrix<4>;

impl<const D: usize> DensityMatrix<D> {
    /// Validates Hermiticity and unit trace (1e-10) and eigenvalues ≥ −1e-10.
    pub fn new(m: SMatrix<C64, D, D>) -> Result<Self> {
        let herm_err = (0..D)
            .flat_map(|i| (0..D).map(move |j| (i, j)))
            .map(|(i, j)| (m[(i, j)] - m[(j, i)].conj()).norm())
            .fold(0.0, f64::max);
        if herm_err > MATRIX_TOL {
            return Err(Error::domain(format!(
                "matrix not Hermitian (error {herm_err:e})"
            )));
        }
        let tr = m.trace();
        if (tr.re - 1.0).abs() > MATRIX_TOL || tr.im.abs() > MATRIX_TOL {
            return Err(Error::domain(format!("trace {tr} differs from 1")));
        }
        let rho = DensityMatrix { m };
        let min = rho.eigenvalues().into_iter().fold(f64::INFINITY, f64::min);
        if min < -MATRIX_TOL {
            return Err(Error::domain(format!("negative eigenvalue {min:e}")));
        }
        Ok(rho)
    }

    /// Row-major `[re, im]` entries, validated as in [`DensityMatrix::new`].
    pub fn from_rows(rows: [[[f64; 2]; D]; D]) -> Result<Self> {
        Self::new(SMatrix::from_fn(|i, j| {
            C64::new(rows[i][j][0], rows[i][j][1])
        }))
    }

    /// Wraps a matrix known to be a valid state by construction.
    pub(crate) fn from_matrix_unchecked(m: SMatrix<C64, D, D>) -> Self {
        DensityMatrix { m }
    }

    pub fn maximally_mixed() -> Self {
        DensityMatrix {
            m: SMatrix::identity() * c(1.0 / D as f64),
        }
    }

    pub fn matrix(&self) -> &SMatrix<C64, D, D> {
        &self.m
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut ev = hermitian_eigenvalues(&self.m);
        ev.sort_by(f64::total_cmp);
        ev
    }

    pub fn trace_with(&self, op: &SMatrix<C64, D, D>) -> f64 {
        (self.m * op).trace().re
    }

    /// Convex mixture `Σ wᵢ ρᵢ`; weights must be a probability vector.
    pub fn mixture(parts: &[(f64, &DensityMatrix<D>)]) -> Result<Self> {
        let total: f64 = parts.iter().map(|(w, _)| *w).sum();
        if parts.iter().any(|(w, _)| *w < 0.0) || (total - 1.0).abs() > MATRIX_TOL {
            return Err(Error::domain("mixture weights must form a distribution"));
        }
        let m = parts
            .iter()
            .fold(SMatrix::zeros(), |acc, (w, r)| acc + r.m * c(*w));
        Ok(DensityMatrix { m })
    }

    /// `U ρ U†`.
    pub fn conjugate_by(&self, u: &SMatrix<C64, D, D>) -> Self {
        DensityMatrix {
            m: u * self.m * u.adjoint(),
        }
    }
}

fn hermitian_eigenvalues<const D: usize>(m: &SMatrix<C64, D, D>) -> Vec<f64> {
    if D == 2 {
        let a = m[(0, 0)].re;
        let d = m[(1, 1)].re;
        let b = m[(0, 1)].norm();
        let mean = 0.5 * (a + d);
        let radius = (0.25 * (a - d) * (a - d) + b * b).sqrt();
        return vec![mean - radius, mean + radius];
    }
    let dynamic = DMatrix::from_iterator(D, D, m.iter().copied());
    SymmetricEigen::new(dynamic)
        .eigenvalues
        .iter()
        .copied()
        .collect()
}

impl QubitDensity {
    /// Pauli-frame Bloch vector of this state.
    pub fn bloch(&self) -> BlochVector {
        density_to_bloch(self)
    }
}

impl TwoQubitDensity {
    /// Product state `ρ_A ⊗ ρ_B`.
    pub fn product(a: &QubitDensity, b: &QubitDensity) -> Self {
        DensityMatrix {
            m: kron(&a.m, &b.m),
        }
    }

    /// `tr(ρ · P ⊗ Q)`.
    pub fn expectation(&self, a: &Matrix2<C64>, b: &Matrix2<C64>) -> f64 {
        self.trace_with(&kron(a, b))
    }
}

/// Pure two-qubit state vector in the `|ab⟩` basis.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StateVector([C64; 4]);

impl StateVector {
    /// Requires unit norm within 1e-10.
    pub fn new(amps: [C64; 4]) -> Result<Self> {
        let n = norm4(&amps);
        if (n - 1.0).abs() > MATRIX_TOL {
            return Err(Error::domain(format!(
                "state vector norm {n} differs from 1"
            )));
        }
        Ok(StateVector(amps))
    }

    pub fn normalize(amps: [C64; 4]) -> Result<Self> {
        let n = norm4(&amps);
        if n <= NORM_TOL {
            return Err(Error::domain("cannot normalise the zero vector"));
        }
        Ok(StateVector(amps.map(|a| a / n)))
    }

    pub fn basis(index: usize) -> Self {
        let mut amps = [C64::new(0.0, 0.0); 4];
        amps[index] = c(1.0);
        StateVector(amps)
    }

    pub fn product(a: [C64; 2], b: [C64; 2]) -> Result<Self> {
        StateVector::new([a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1]])
    }

    pub(crate) fn from_amplitudes_unchecked(amps: [C64; 4]) -> Self {
        StateVector(amps)
    }

    pub fn amplitudes(&self) -> &[C64; 4] {
        &self.0
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &StateVector) -> C64 {
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// `|⟨self|other⟩|²`.
    pub fn fidelity(&self, other: &StateVector) -> f64 {
        self.inner(other).norm_sqr()
    }

    pub fn density(&self) -> TwoQubitDensity {
        let v = &self.0;
        DensityMatrix::from_matrix_unchecked(Matrix4::from_fn(|i, j| v[i] * v[j].conj()))
    }

    pub fn schmidt_coefficients(&self) -> (f64, f64) {
        schmidt_coefficients(&self.0).expect("StateVector is normalised")
    }
}

fn norm4(a: &[C64; 4]) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Shannon entropy (bits) of a probability vector; zero entries contribute 0.
pub fn shannon_entropy(probs: &[f64]) -> f64 {
    probs
        .iter()
        .map(|&p| p.clamp(0.0, 1.0))
        .filter(|&p| p > 0.0)
        .map(|p| -p * p.log2())
        .sum()
}

/// Binary entropy `h(p) = −p log₂p − (1−p) log₂(1−p)`.
pub fn binary_entropy(p: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::domain(format!("probability {p} outside [0, 1]")));
    }
    Ok(h(p))
}

/// Binary entropy with the argument clamped into `[0, 1]`.
pub(crate) fn h(p: f64) -> f64 {
    let p = p.clamp(0.0, 1.0);
    shannon_entropy(&[p, 1.0 - p])
}

/// `ρ = (I + Σ sᵢ eᵢ·σ)/2`, where the components of `s` refer to the
/// orthonormal `frame` (Pauli X, Y, Z when `None`).
pub fn bloch_to_density(
    s: BlochVector,
    frame: Option<[MeasurementAxis; 3]>,
) -> Result<QubitDensity> {
    s.check_physical()?;
    let pauli_vec = match frame {
        None => s,
        Some(f) => {
            for (i, j) in [(0, 1), (0, 2), (1, 2)] {
                if !f[i].is_orthogonal_to(f[j], 1e-9) {
                    return Err(Error::domain("frame axes must be mutually orthogonal"));
                }
            }
            f[0].vector() * s.x + f[1].vector() * s.y + f[2].vector() * s.z
        }
    };
    let [x, y, z] = pauli();
    let m = (Matrix2::identity() + x * c(pauli_vec.x) + y * c(pauli_vec.y) + z * c(pauli_vec.z))
        * c(0.5);
    Ok(DensityMatrix::from_matrix_unchecked(m))
}

/// Pauli-frame Bloch vector of a qubit density matrix.
pub fn density_to_bloch(rho: &QubitDensity) -> BlochVector {
    let m = rho.matrix();
    BlochVector::new(
        2.0 * m[(0, 1)].re,
        -2.0 * m[(0, 1)].im,
        (m[(0, 0)] - m[(1, 1)]).re,
    )
}

/// Outcome probabilities `(1 ± s·n)/2` of measuring `axis` on state `s`.
pub fn measurement_probs(s: BlochVector, axis: MeasurementAxis) -> ProbPair {
    let e = axis.dot(s).clamp(-1.0, 1.0);
    ProbPair {
        p_plus: 0.5 * (1.0 + e),
        p_minus: 0.5 * (1.0 - e),
    }
}

/// Shannon entropy of the outcomes of `axis` on `s`.
pub fn shannon_entropy_of(s: BlochVector, axis: MeasurementAxis) -> f64 {
    h(measurement_probs(s, axis).p_minus)
}

/// `S(ρ) = −Σ λ log₂ λ`, eigenvalues clamped to `[0, 1]`.
pub fn von_neumann_entropy<const D: usize>(rho: &DensityMatrix<D>) -> f64 {
    shannon_entropy(&rho.eigenvalues())
}

pub fn partial_trace(rho: &TwoQubitDensity, keep: Subsystem) -> QubitDensity {
    let m = rho.matrix();
    let reduced = Matrix2::from_fn(|i, j| match keep {
        Subsystem::A => m[(2 * i, 2 * j)] + m[(2 * i + 1, 2 * j + 1)],
        Subsystem::B => m[(i, j)] + m[(2 + i, 2 + j)],
    });
    DensityMatrix::from_matrix_unchecked(reduced)
}

/// `S(A|B) = S(AB) − S(B)`.
pub fn conditional_entropy(rho: &TwoQubitDensity) -> f64 {
    von_neumann_entropy(rho) - von_neumann_entropy(&partial_trace(rho, Subsystem::B))
}

/// Schmidt coefficients `(λ1 ≥ λ2)`: squared singular values of the 2×2
/// amplitude matrix.
pub fn schmidt_coefficients(amps: &[C64; 4]) -> Result<(f64, f64)> {
    let n = norm4(amps);
    if (n - 1.0).abs() > MATRIX_TOL {
        return Err(Error::domain(format!(
            "state vector norm {n} differs from 1"
        )));
    }
    let coeff = Matrix2::new(amps[0], amps[1], amps[2], amps[3]);
    let gram = coeff * coeff.adjoint();
    let ev = hermitian_eigenvalues(&gram);
    let (lo, hi) = (ev[0].min(ev[1]).max(0.0), ev[0].max(ev[1]).min(1.0));
    Ok((hi, lo))
}

/// Joint outcome distribution `[++, +−, −+, −−]` of measuring `axis_a` on A
/// and `axis_b` on B.
pub fn joint_probs(
    rho: &TwoQubitDensity,
    axis_a: MeasurementAxis,
    axis_b: MeasurementAxis,
) -> [f64; 4] {
    let mut out = [0.0; 4];
    for (k, slot) in out.iter_mut().enumerate() {
        let p = rho.expectation(&axis_a.projector(k / 2), &axis_b.projector(k % 2));
        *slot = p.clamp(0.0, 1.0);
    }
    out
}

/// The maximally entangled state `(|00⟩ + |11⟩)/√2`.
pub fn bell_state() -> StateVector {
    let a = c(1.0 / SQRT_2);
    let o = c(0.0);
    StateVector([a, o, o, a])
}

/// Seeded random states for property checks.
pub mod random {
    use nalgebra::{Matrix2, SMatrix};
    use rand::Rng;
    use rand_distr::StandardNormal;

    use super::{c, BlochVector, DensityMatrix, StateVector, C64};

    fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> C64 {
        C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    }

    /// Full-rank Ginibre state `G G† / tr(G G†)`.
    pub fn ginibre<const D: usize, R: Rng + ?Sized>(rng: &mut R) -> DensityMatrix<D> {
        ginibre_rank(rng, D)
    }

    /// Ginibre state built from a `D × k` Gaussian matrix (rank ≤ k).
    pub fn ginibre_rank<const D: usize, R: Rng + ?Sized>(
        rng: &mut R,
        k: usize,
    ) -> DensityMatrix<D> {
        let mut m = SMatrix::<C64, D, D>::zeros();
        for _ in 0..k.min(D) {
            let v: Vec<C64> = (0..D).map(|_| gaussian(rng)).collect();
            for i in 0..D {
                for j in 0..D {
                    m[(i, j)] += v[i] * v[j].conj();
                }
            }
        }
        let tr = m.trace().re;
        DensityMatrix::from_matrix_unchecked(m * c(1.0 / tr))
    }

    pub fn pure_state<R: Rng + ?Sized>(rng: &mut R) -> StateVector {
        let amps = [gaussian(rng), gaussian(rng), gaussian(rng), gaussian(rng)];
        StateVector::normalize(amps).expect("Gaussian vector is nonzero")
    }

    /// Uniform point in the ball of radius `max_norm`.
    pub fn bloch_in_ball<R: Rng + ?Sized>(rng: &mut R, max_norm: f64) -> BlochVector {
        let dir = BlochVector::new(
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
        )
        .normalized()
        .unwrap_or(BlochVector::new(0.0, 0.0, 1.0));
        let r: f64 = rng.random::<f64>().cbrt() * max_norm;
        dir * r
    }

    pub fn unit_vector<R: Rng + ?Sized>(rng: &mut R) -> BlochVector {
        loop {
            let v = BlochVector::new(
                rng.sample(StandardNormal),
                rng.sample(StandardNormal),
                rng.sample(StandardNormal),
            );
            if let Some(u) = v.normalized() {
                return u;
            }
        }
    }

    /// Haar-random single-qubit unitary (QR of a Ginibre matrix).
    pub fn unitary2<R: Rng + ?Sized>(rng: &mut R) -> Matrix2<C64> {
        let g = Matrix2::from_fn(|_, _| gaussian(rng));
        let qr = g.qr();
        let (q, r) = (qr.q(), qr.r());
        let phases = Matrix2::from_diagonal(&nalgebra::Vector2::new(
            r[(0, 0)] / r[(0, 0)].norm(),
            r[(1, 1)] / r[(1, 1)].norm(),
        ));
        q * phases
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn qubit(diag: [f64; 2]) -> QubitDensity {
        DensityMatrix::new(Matrix2::new(c(diag[0]), c(0.0), c(0.0), c(diag[1]))).unwrap()
    }

    #[test]
    fn from_rows_validates() {
        let z = [0.0, 0.0];
        let rho =
            QubitDensity::from_rows([[[0.5, 0.0], [0.0, -0.5]], [[0.0, 0.5], [0.5, 0.0]]]).unwrap();
        assert_abs_diff_eq!(rho.bloch().y, 1.0, epsilon = 1e-15);
        assert!(QubitDensity::from_rows([[[0.5, 0.0], [0.3, 0.0]], [z, [0.5, 0.0]]]).is_err());
        assert!(QubitDensity::from_rows([[[1.5, 0.0], z], [z, [-0.5, 0.0]]]).is_err());
    }

    #[test]
    fn binary_entropy_values() {
        assert_abs_diff_eq!(binary_entropy(0.5).unwrap(), 1.0, epsilon = 1e-15);
        assert_eq!(binary_entropy(0.0).unwrap(), 0.0);
        assert_eq!(binary_entropy(1.0).unwrap(), 0.0);
        let c = binary_entropy((2.0 - SQRT_2) / 4.0).unwrap();
        assert!((c - 0.6009).abs() < 5e-5, "{c}");
        assert!(binary_entropy(-0.1).is_err());
        assert!(binary_entropy(1.0001).is_err());
    }

    #[test]
    fn bloch_to_density_examples() {
        let rho = bloch_to_density(BlochVector::new(0.0, 0.0, 1.0), None).unwrap();
        assert_abs_diff_eq!(rho.matrix()[(0, 0)].re, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(rho.matrix()[(1, 1)].re, 0.0, epsilon = 1e-15);

        // (I + X/4 + √3 Y/4 + Z/2)/2
        let s = BlochVector::new(0.25, 3f64.sqrt() / 4.0, 0.5);
        let m = *bloch_to_density(s, None).unwrap().matrix();
        assert_abs_diff_eq!(m[(0, 0)].re, 0.75, epsilon = 1e-15);
        assert_abs_diff_eq!(m[(1, 1)].re, 0.25, epsilon = 1e-15);
        assert_abs_diff_eq!(m[(0, 1)].re, 0.125, epsilon = 1e-15);
        assert_abs_diff_eq!(m[(0, 1)].im, -3f64.sqrt() / 8.0, epsilon = 1e-15);

        let m = *bloch_to_density(BlochVector::new(0.6, 0.0, 0.0), None)
            .unwrap()
            .matrix();
        assert_abs_diff_eq!(m[(0, 0)].re, 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(m[(0, 1)].re, 0.3, epsilon = 1e-15);
        assert_abs_diff_eq!(m[(1, 0)].re, 0.3, epsilon = 1e-15);

        assert!(bloch_to_density(BlochVector::new(1.0, 0.1, 0.0), None).is_err());
    }

    #[test]
    fn bloch_to_density_in_rotated_frame() {
        let f = [MeasurementAxis::Y, MeasurementAxis::Z, MeasurementAxis::X];
        let rho = bloch_to_density(BlochVector::new(0.1, 0.2, 0.3), Some(f)).unwrap();
        assert!(rho.bloch().max_abs_diff(BlochVector::new(0.3, 0.1, 0.2)) < 1e-14);

        let skew = MeasurementAxis::new(BlochVector::new(1.0, 1.0, 0.0)).unwrap();
        let bad = [MeasurementAxis::X, skew, MeasurementAxis::Z];
        assert!(bloch_to_density(BlochVector::ZERO, Some(bad)).is_err());
    }

    #[test]
    fn measurement_probs_examples() {
        let p = measurement_probs(BlochVector::new(0.0, 0.0, 1.0), MeasurementAxis::Z);
        assert_eq!((p.p_plus, p.p_minus), (1.0, 0.0));

        let axis = MeasurementAxis::new(BlochVector::new(0.0, 1.0, 1.0)).unwrap();
        let p = measurement_probs(BlochVector::new(0.0, 0.6, 0.6), axis);
        assert_abs_diff_eq!(p.p_minus, (5.0 - 3.0 * SQRT_2) / 10.0, epsilon = 1e-15);

        let p = measurement_probs(BlochVector::ZERO, axis);
        assert_eq!((p.p_plus, p.p_minus), (0.5, 0.5));
    }

    #[test]
    fn shannon_entropy_of_examples() {
        let v = shannon_entropy_of(BlochVector::new(0.0, 0.0, 0.6), MeasurementAxis::Z);
        assert!((v - 0.7219).abs() < 5e-5);
        let axis = MeasurementAxis::new(BlochVector::new(1.0, 0.0, 1.0)).unwrap();
        let v = shannon_entropy_of(BlochVector::new(0.0, 0.6, 0.6), axis);
        assert_abs_diff_eq!(v, h((10.0 - 3.0 * SQRT_2) / 20.0), epsilon = 1e-14);
        assert!((v - 0.8660).abs() < 5e-5);
        let v = shannon_entropy_of(BlochVector::new(0.0, 0.3, 0.0), MeasurementAxis::X);
        assert_abs_diff_eq!(v, 1.0, epsilon = 1e-15);
    }

    #[test]
    fn von_neumann_examples() {
        assert_abs_diff_eq!(
            von_neumann_entropy(&qubit([1.0, 0.0])),
            0.0,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            von_neumann_entropy(&TwoQubitDensity::maximally_mixed()),
            2.0,
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(
            von_neumann_entropy(&qubit([0.9, 0.1])),
            h(0.1),
            epsilon = 1e-14
        );
        assert!((h(0.1) - 0.4690).abs() < 5e-5);
    }

    #[test]
    fn partial_trace_examples() {
        let rho = StateVector::basis(0).density();
        let a = partial_trace(&rho, Subsystem::A);
        assert_abs_diff_eq!(a.matrix()[(0, 0)].re, 1.0, epsilon = 1e-15);

        let a = partial_trace(&bell_state().density(), Subsystem::A);
        assert!((a.matrix() - Matrix2::identity() * c(0.5)).norm() < 1e-15);

        // |01⟩ keeps A in |0⟩ and B in |1⟩.
        let rho = StateVector::basis(1).density();
        assert_abs_diff_eq!(partial_trace(&rho, Subsystem::B).matrix()[(1, 1)].re, 1.0);
        assert_abs_diff_eq!(partial_trace(&rho, Subsystem::A).matrix()[(0, 0)].re, 1.0);
    }

    #[test]
    fn conditional_entropy_examples() {
        assert_abs_diff_eq!(
            conditional_entropy(&bell_state().density()),
            -1.0,
            epsilon = 1e-10
        );
        assert_abs_diff_eq!(
            conditional_entropy(&TwoQubitDensity::maximally_mixed()),
            1.0,
            epsilon = 1e-10
        );
        let prod = StateVector::product([c(0.6), c(0.8)], [c(0.0), c(1.0)]).unwrap();
        assert_abs_diff_eq!(conditional_entropy(&prod.density()), 0.0, epsilon = 1e-10);
    }

    #[test]
    fn schmidt_examples() {
        let (l1, l2) = StateVector::basis(1).schmidt_coefficients();
        assert_abs_diff_eq!(l1, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(l2, 0.0, epsilon = 1e-12);
        let (l1, l2) = bell_state().schmidt_coefficients();
        assert_abs_diff_eq!(l1, 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(l2, 0.5, epsilon = 1e-12);
        let unnormalised = [c(1.0), c(0.0), c(0.0), c(1.0)];
        assert!(schmidt_coefficients(&unnormalised).is_err());
    }

    #[test]
    fn density_validation_rejects_bad_matrices() {
        let not_herm = Matrix2::new(c(0.5), c(0.1), c(0.2), c(0.5));
        assert!(QubitDensity::new(not_herm).is_err());
        let bad_trace = Matrix2::new(c(0.6), c(0.0), c(0.0), c(0.6));
        assert!(QubitDensity::new(bad_trace).is_err());
        let negative = Matrix2::new(c(1.2), c(0.0), c(0.0), c(-0.2));
        assert!(QubitDensity::new(negative).is_err());
    }

    #[test]
    fn ginibre_states_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let rho: TwoQubitDensity = random::ginibre(&mut rng);
            assert!(TwoQubitDensity::new(*rho.matrix()).is_ok());
        }
    }
}
