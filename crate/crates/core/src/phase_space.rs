//! Even-dimensional discrete Wigner phase space.
//!
//! A Hilbert space of dimension `N` is mapped onto a `2N × 2N` grid of
//! phase-space points. Only the `N × N` first quadrant carries independent
//! information; the other three quadrants follow from it by a sign rule, see
//! [`fold_cell`].
//!
//! Grids are indexed `(q, p)` with `q` the row (position) and `p` the column
//! (momentum).

use std::f64::consts::PI;
use std::fmt::Write as _;

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qmat::{ComplexMatrix, DensityMatrix, HERMITIAN_TOL};

/// Imaginary trace residues below this are dropped silently.
pub const IMAG_TRUNCATE_TOL: f64 = 1e-10;
/// Imaginary trace residues above this are rejected.
pub const IMAG_REJECT_TOL: f64 = 1e-8;
/// Reconstructed operators with an eigenvalue below this are flagged.
pub const RECONSTRUCT_PSD_FLOOR: f64 = -1e-8;
/// Reconstructed operators whose trace is off by more than this are flagged.
pub const RECONSTRUCT_TRACE_TOL: f64 = 1e-9;

/// Folds a full-grid cell `(q, p) ∈ G_2N` into the first quadrant.
///
/// Returns `(q mod N, p mod N, sign)` where
/// `W(q + s_q N, p + s_p N) = sign · W(q, p)` and
/// `sign = (−1)^(s_p q + s_q p + s_q s_p N)`.
pub fn fold_cell(q: usize, p: usize, n: usize) -> (usize, usize, f64) {
    let (sq, q0) = ((q / n) % 2, q % n);
    let (sp, p0) = ((p / n) % 2, p % n);
    let exponent = sp * q0 + sq * p0 + sq * sp * n;
    let sign = if exponent.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    };
    (q0, p0, sign)
}

/// Precomputed operators of the discrete phase space for dimension `N`.
#[derive(Clone, Debug)]
pub struct PhaseSpaceFrame {
    dim: usize,
    qft: ComplexMatrix,
    shift: ComplexMatrix,
    boost: ComplexMatrix,
    reflection: ComplexMatrix,
    /// Row-major over the first quadrant: index `q * N + p`.
    points: Vec<ComplexMatrix>,
}

impl PhaseSpaceFrame {
    /// Builds every `A(q, p)` of the first quadrant.
    pub fn build(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidDimension(n));
        }
        let nf = n as f64;
        let qft = ComplexMatrix::from_fn(n, n, |row, col| {
            C64::from_polar(1.0 / nf.sqrt(), 2.0 * PI * (row * col) as f64 / nf)
        });
        let one = C64::new(1.0, 0.0);
        let zero = C64::new(0.0, 0.0);
        // U|n⟩ = |n ⊕ 1⟩
        let shift = ComplexMatrix::from_fn(n, n, |i, j| if i == (j + 1) % n { one } else { zero });
        // V|n⟩ = e^{i2πn/N}|n⟩
        let boost = ComplexMatrix::from_fn(n, n, |i, j| {
            if i == j {
                C64::from_polar(1.0, 2.0 * PI * i as f64 / nf)
            } else {
                zero
            }
        });
        // R|n⟩ = |−n mod N⟩
        let reflection =
            ComplexMatrix::from_fn(n, n, |i, j| if i == (n - j) % n { one } else { zero });

        let boost_inv = boost.adjoint();
        let shift_pows: Vec<ComplexMatrix> = (0..n).map(|q| shift.pow(q)).collect();
        let boost_inv_pows: Vec<ComplexMatrix> = (0..n).map(|p| boost_inv.pow(p)).collect();

        let mut points = Vec::with_capacity(n * n);
        for (q, shift_q) in shift_pows.iter().enumerate() {
            let ur = shift_q * &reflection;
            for (p, boost_p) in boost_inv_pows.iter().enumerate() {
                let phase = C64::from_polar(1.0 / (2.0 * nf), PI * (p * q) as f64 / nf);
                let a = (&ur * boost_p).scale(phase);
                debug_assert!(a.is_hermitian(HERMITIAN_TOL));
                points.push(a);
            }
        }
        Ok(Self {
            dim: n,
            qft,
            shift,
            boost,
            reflection,
            points,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Position-to-momentum change of basis, entry `(n, k) = e^{i2πnk/N}/√N`.
    pub fn qft(&self) -> &ComplexMatrix {
        &self.qft
    }

    /// Cyclic position shift `U`.
    pub fn shift(&self) -> &ComplexMatrix {
        &self.shift
    }

    /// Momentum shift `V`, diagonal in the position basis.
    pub fn boost(&self) -> &ComplexMatrix {
        &self.boost
    }

    /// Reflection `R|n⟩ = |N − n⟩`.
    pub fn reflection(&self) -> &ComplexMatrix {
        &self.reflection
    }

    /// `A(q, p)` for a first-quadrant cell.
    pub fn point(&self, q: usize, p: usize) -> &ComplexMatrix {
        assert!(q < self.dim && p < self.dim, "cell ({q}, {p}) outside G_N");
        &self.points[q * self.dim + p]
    }

    /// `A(q, p)` for any cell of the full `2N × 2N` grid.
    pub fn point_full(&self, q: usize, p: usize) -> ComplexMatrix {
        let (q0, p0, sign) = fold_cell(q, p, self.dim);
        self.point(q0, p0).scale_real(sign)
    }

    /// `2N · A(q, p)`, the unitary implemented by the readout circuit.
    pub fn scaled_point(&self, q: usize, p: usize) -> ComplexMatrix {
        self.point(q, p).scale_real(2.0 * self.dim as f64)
    }

    /// `W(q, p) = Tr[A(q, p) ρ]` for a single first-quadrant cell.
    pub fn wigner_cell(&self, rho: &DensityMatrix, q: usize, p: usize) -> Result<f64> {
        if rho.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: rho.dim(),
            });
        }
        let value = self.point(q, p).trace_product(rho.matrix())?;
        if value.im.abs() > IMAG_REJECT_TOL {
            return Err(Error::NonNegligibleImaginaryPart {
                q,
                p,
                residue: value.im.abs(),
            });
        }
        Ok(value.re)
    }

    /// Forward Wigner transform over the first quadrant.
    pub fn wigner_transform(&self, rho: &DensityMatrix) -> Result<WignerMatrix> {
        let n = self.dim;
        let mut quadrant = Vec::with_capacity(n * n);
        for q in 0..n {
            for p in 0..n {
                quadrant.push(self.wigner_cell(rho, q, p)?);
            }
        }
        Ok(WignerMatrix { dim: n, quadrant })
    }

    /// Inverse transform `ρ = N · Σ_{G_2N} W(q, p) A(q, p)`.
    ///
    /// Any real quadrant is accepted. If the resulting operator is not a
    /// density matrix the error carries it for inspection.
    pub fn reconstruct(&self, w: &WignerMatrix) -> Result<DensityMatrix> {
        let matrix = self.reconstruct_operator(w)?;
        let trace = matrix.trace().re;
        if (trace - 1.0).abs() > RECONSTRUCT_TRACE_TOL {
            return Err(Error::ReconstructionNotNormalized {
                trace,
                matrix: Box::new(matrix),
            });
        }
        let (values, _) = matrix.eigh()?;
        let min_eigenvalue = values.iter().copied().fold(f64::INFINITY, f64::min);
        if min_eigenvalue < RECONSTRUCT_PSD_FLOOR {
            return Err(Error::ReconstructionNotPositive {
                min_eigenvalue,
                matrix: Box::new(matrix),
            });
        }
        // Rescale so the tighter density-matrix trace check sees exactly 1.
        DensityMatrix::new(matrix.scale_real(1.0 / trace))
    }

    /// Unvalidated inverse transform, Hermitian by construction.
    pub fn reconstruct_operator(&self, w: &WignerMatrix) -> Result<ComplexMatrix> {
        let n = self.dim;
        if w.dim != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: w.dim,
            });
        }
        let mut acc = ComplexMatrix::zeros(n, n);
        for q in 0..2 * n {
            for p in 0..2 * n {
                let value = w.get_full(q, p);
                if value != 0.0 {
                    acc = &acc + &self.point_full(q, p).scale_real(value);
                }
            }
        }
        Ok(acc.scale_real(n as f64).hermitian_part())
    }
}

/// First-quadrant Wigner values of a state.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "WignerJson", into = "WignerJson")]
pub struct WignerMatrix {
    dim: usize,
    quadrant: Vec<f64>,
}

impl WignerMatrix {
    /// Wraps raw quadrant values, row-major, `q` major.
    pub fn from_quadrant(dim: usize, quadrant: Vec<f64>) -> Result<Self> {
        if quadrant.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                found: quadrant.len(),
            });
        }
        if quadrant.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self { dim, quadrant })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let dim = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: bad.len(),
            });
        }
        Self::from_quadrant(dim, rows.concat())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, q: usize, p: usize) -> f64 {
        assert!(q < self.dim && p < self.dim, "cell ({q}, {p}) outside G_N");
        self.quadrant[q * self.dim + p]
    }

    /// Value at any cell of the `2N × 2N` grid.
    pub fn get_full(&self, q: usize, p: usize) -> f64 {
        let (q0, p0, sign) = fold_cell(q, p, self.dim);
        sign * self.get(q0, p0)
    }

    pub fn values(&self) -> &[f64] {
        &self.quadrant
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.quadrant
            .chunks(self.dim)
            .map(<[f64]>::to_vec)
            .collect()
    }

    pub fn max_abs(&self) -> f64 {
        self.quadrant.iter().map(|x| x.abs()).fold(0.0, f64::max)
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Self {
        Self {
            dim: self.dim,
            quadrant: self.quadrant.iter().map(|&x| f(x)).collect(),
        }
    }

    /// The full `2N × 2N` grid, rows indexed by `q`.
    pub fn expand_full(&self) -> Vec<Vec<f64>> {
        let size = 2 * self.dim;
        (0..size)
            .map(|q| (0..size).map(|p| self.get_full(q, p)).collect())
            .collect()
    }

    /// Position and momentum probabilities from full-grid line sums.
    ///
    /// `position[n] = Σ_p W(2n, p)`, `momentum[k] = Σ_q W(q, 2k)`.
    pub fn marginals(&self) -> (Vec<f64>, Vec<f64>) {
        let size = 2 * self.dim;
        let position = (0..self.dim)
            .map(|n| (0..size).map(|p| self.get_full(2 * n, p)).sum())
            .collect();
        let momentum = (0..self.dim)
            .map(|k| (0..size).map(|q| self.get_full(q, 2 * k)).sum())
            .collect();
        (position, momentum)
    }

    /// Quadrant as CSV: one line per `q`, comma separated, no header.
    pub fn to_csv(&self) -> String {
        grid_to_csv(&self.rows())
    }

    /// Full `2N × 2N` grid as CSV.
    pub fn full_to_csv(&self) -> String {
        grid_to_csv(&self.expand_full())
    }

    /// Parses a quadrant written by [`WignerMatrix::to_csv`]. Lines starting
    /// with `#` are skipped.
    pub fn from_csv(text: &str) -> Result<Self> {
        let mut rows = Vec::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let row: std::result::Result<Vec<f64>, _> =
                line.split(',').map(|s| s.trim().parse::<f64>()).collect();
            rows.push(row.map_err(|_| Error::NonFinite)?);
        }
        Self::from_rows(&rows)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("Wigner matrix serializes")
    }
}

pub(crate) fn grid_to_csv(rows: &[Vec<f64>]) -> String {
    let mut out = String::new();
    for row in rows {
        for (i, x) in row.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            write!(out, "{x}").unwrap();
        }
        out.push('\n');
    }
    out
}

#[derive(Serialize, Deserialize)]
struct WignerJson {
    dim: usize,
    quadrant: Vec<Vec<f64>>,
}

impl From<WignerMatrix> for WignerJson {
    fn from(w: WignerMatrix) -> Self {
        Self {
            dim: w.dim,
            quadrant: w.rows(),
        }
    }
}

impl TryFrom<WignerJson> for WignerMatrix {
    type Error = Error;

    fn try_from(j: WignerJson) -> Result<Self> {
        let w = Self::from_rows(&j.quadrant)?;
        if w.dim != j.dim {
            return Err(Error::DimensionMismatch {
                expected: j.dim,
                found: w.dim,
            });
        }
        Ok(w)
    }
}

/// `F = Tr[ρ₁ρ₂] = 4N Σ_{G_N} W₁ W₂`
pub fn wigner_fidelity(w1: &WignerMatrix, w2: &WignerMatrix) -> Result<f64> {
    if w1.dim != w2.dim {
        return Err(Error::DimensionMismatch {
            expected: w1.dim,
            found: w2.dim,
        });
    }
    let dot: f64 = w1
        .quadrant
        .iter()
        .zip(&w2.quadrant)
        .map(|(a, b)| a * b)
        .sum();
    Ok(4.0 * w1.dim as f64 * dot)
}
