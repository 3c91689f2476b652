//! Two-qubit quantum kicked top (spin j = 1) with per-kick selective Wigner
//! readout, and the classical kicked-top map used for phase portraits.

use std::f64::consts::PI;

use num_complex::Complex64 as C64;
use serde::Serialize;

use crate::error::Result;
use crate::phase_space::PhaseSpaceFrame;
use crate::qmat::{expm_hermitian_generator, tensor, ComplexMatrix, DensityMatrix};
use crate::states::two_qubit_scs;
use crate::tomography::{circuit_read, direct_read, CellSelection, CellValue};

/// Spin quantum number of the two-qubit top.
pub const SPIN_J: f64 = 1.0;
const DIM: usize = 4;

/// Initial point in a regular region of the classical phase space.
pub const POINT_R: (f64, f64) = (PI / 2.0, PI);
/// Initial point in a chaotic region of the classical phase space.
pub const POINT_C: (f64, f64) = (1.0, 2.5);

/// Chaoticity presets of the regular, mixed and globally chaotic regimes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Chaoticity {
    Regular,
    Mixed,
    Chaotic,
}

impl Chaoticity {
    pub fn k(self) -> f64 {
        match self {
            Chaoticity::Regular => 0.5,
            Chaoticity::Mixed => 2.5,
            Chaoticity::Chaotic => 2.0 * PI + 2.5,
        }
    }
}

/// Collective spin operators `(J_x, J_y, J_z)` on two qubits, `J = I₁ + I₂`.
pub fn spin_operators() -> [ComplexMatrix; 3] {
    let z = C64::new(0.0, 0.0);
    let half = |a: C64, b: C64, c: C64, d: C64| ComplexMatrix::from_rows(&[vec![a, b], vec![c, d]]);
    let ix = half(z, C64::new(0.5, 0.0), C64::new(0.5, 0.0), z);
    let iy = half(z, C64::new(0.0, -0.5), C64::new(0.0, 0.5), z);
    let iz = half(C64::new(0.5, 0.0), z, z, C64::new(-0.5, 0.0));
    let id = ComplexMatrix::identity(2);
    let collective = |s: &ComplexMatrix| &tensor(s, &id) + &tensor(&id, s);
    [collective(&ix), collective(&iy), collective(&iz)]
}

/// `2 I_{z1} I_{z2}`, the part of `J_z²` beyond the identity.
fn bilinear_zz() -> ComplexMatrix {
    let d = |x: f64| C64::new(x, 0.0);
    ComplexMatrix::diagonal(&[d(0.5), d(-0.5), d(-0.5), d(0.5)])
}

/// `(U_kick, U_NL)` with `U_kick = exp(−i(π/2)J_x)` and
/// `U_NL = exp(−i(k/2j)·2I_{z1}I_{z2})`.
///
/// The identity part of `J_z² = I/2 + 2I_{z1}I_{z2}` is dropped, so `U_NL`
/// differs from `exp(−i k J_z²/2j)` by a global phase only.
pub fn qkt_unitaries(k: f64) -> (ComplexMatrix, ComplexMatrix) {
    let [jx, _, _] = spin_operators();
    let kick = expm_hermitian_generator(&jx, PI / 2.0).expect("J_x is Hermitian");
    let twist =
        expm_hermitian_generator(&bilinear_zz(), k / (2.0 * SPIN_J)).expect("diagonal generator");
    (kick, twist)
}

/// `exp(−i k J_z²/2j)` including the identity part.
pub fn full_twist(k: f64) -> ComplexMatrix {
    let [_, _, jz] = spin_operators();
    expm_hermitian_generator(&(&jz * &jz), k / (2.0 * SPIN_J)).expect("J_z² is Hermitian")
}

/// How selected cells are read after each kick.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Readout {
    Direct,
    /// Circuit simulation; `shots == 0` gives exact expectations.
    Circuit {
        shots: u64,
        seed: u64,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct QktParams {
    pub k: f64,
    pub kicks: usize,
    pub theta0: f64,
    pub phi0: f64,
    pub selection: CellSelection,
    pub readout: Readout,
    pub keep_states: bool,
}

impl QktParams {
    /// Direct readout of row `q = 0` starting from `(theta0, phi0)`.
    pub fn new(k: f64, kicks: usize, (theta0, phi0): (f64, f64)) -> Self {
        Self {
            k,
            kicks,
            theta0,
            phi0,
            selection: CellSelection::row(DIM, 0).expect("row 0 exists"),
            readout: Readout::Direct,
            keep_states: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct KickRecord {
    /// Completed kick-and-twist steps; 0 is the initial state.
    pub t: usize,
    pub cells: Vec<CellValue>,
    /// Sum of the selected values.
    pub s: f64,
    pub state: Option<DensityMatrix>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct KickedTopRun {
    pub params: QktParams,
    pub records: Vec<KickRecord>,
}

impl KickedTopRun {
    pub fn signature(&self) -> Vec<f64> {
        self.records.iter().map(|r| r.s).collect()
    }

    /// Sample variance of the signature over all records.
    pub fn signature_variance(&self) -> f64 {
        let s = self.signature();
        let n = s.len() as f64;
        if s.len() < 2 {
            return 0.0;
        }
        let mean = s.iter().sum::<f64>() / n;
        s.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0)
    }
}

/// Evolves `|θ₀,φ₀⟩^{⊗2}` under `U_NL·U_kick`, reading the selection before
/// the first kick and after every kick.
pub fn run_qkt(params: &QktParams) -> Result<KickedTopRun> {
    let (kick, twist) = qkt_unitaries(params.k);
    run_with_step(params, &(&twist * &kick))
}

/// Same as [`run_qkt`] with an arbitrary one-period unitary.
pub fn run_with_step(params: &QktParams, step: &ComplexMatrix) -> Result<KickedTopRun> {
    let frame = PhaseSpaceFrame::build(DIM)?;
    let mut rho = two_qubit_scs(params.theta0, params.phi0);
    let mut records = Vec::with_capacity(params.kicks + 1);
    for t in 0..=params.kicks {
        if t > 0 {
            rho = rho.evolve(step)?;
        }
        let result = match params.readout {
            Readout::Direct => direct_read(&frame, &rho, &params.selection)?,
            Readout::Circuit { shots, seed } => circuit_read(
                &frame,
                &rho,
                &params.selection,
                shots,
                seed.wrapping_add(t as u64),
            )?,
        };
        let s = result.sum();
        records.push(KickRecord {
            t,
            cells: result.cells,
            s,
            state: params.keep_states.then(|| rho.clone()),
        });
    }
    Ok(KickedTopRun {
        params: params.clone(),
        records,
    })
}

/// `(⟨J_x⟩, ⟨J_y⟩, ⟨J_z⟩)/j`
pub fn spin_expectation(rho: &DensityMatrix) -> [f64; 3] {
    spin_operators().map(|j| rho.matrix().trace_product(&j).expect("4x4").re / SPIN_J)
}

/// Unit spin vector of the classical top.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ClassicalTopState {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl ClassicalTopState {
    pub fn from_angles(theta: f64, phi: f64) -> Self {
        Self {
            x: theta.sin() * phi.cos(),
            y: theta.sin() * phi.sin(),
            z: theta.cos(),
        }
    }

    /// `(θ, φ)` with `θ = arccos Z ∈ [0, π]` and `φ ∈ [0, 2π)`.
    pub fn angles(&self) -> (f64, f64) {
        let theta = self.z.clamp(-1.0, 1.0).acos();
        let mut phi = self.y.atan2(self.x).rem_euclid(2.0 * PI);
        if phi >= 2.0 * PI {
            phi = 0.0;
        }
        (theta, phi)
    }

    pub fn norm(&self) -> f64 {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }
}

/// One period of the classical map: a π/2 rotation about x, then a rotation
/// about z by `k·Z`.
pub fn classical_step(s: ClassicalTopState, k: f64) -> ClassicalTopState {
    let (x, y, z) = (s.x, -s.z, s.y);
    let (sin, cos) = (k * z).sin_cos();
    let out = ClassicalTopState {
        x: x * cos - y * sin,
        y: x * sin + y * cos,
        z,
    };
    let norm = out.norm();
    ClassicalTopState {
        x: out.x / norm,
        y: out.y / norm,
        z: out.z / norm,
    }
}

/// Stroboscopic `(θ, φ)` samples after each of `steps` periods, per seed.
pub fn phase_portrait(k: f64, seeds: &[(f64, f64)], steps: usize) -> Vec<Vec<(f64, f64)>> {
    seeds
        .iter()
        .map(|&(theta, phi)| {
            let mut s = ClassicalTopState::from_angles(theta, phi);
            (0..steps)
                .map(|_| {
                    s = classical_step(s, k);
                    s.angles()
                })
                .collect()
        })
        .collect()
}

/// `rows × cols` seeds at cell centres of `θ ∈ (0, π)`, `φ ∈ (0, 2π)`.
pub fn seed_grid(rows: usize, cols: usize) -> Vec<(f64, f64)> {
    (0..rows)
        .flat_map(|i| {
            (0..cols).map(move |j| {
                (
                    (i as f64 + 0.5) * PI / rows as f64,
                    (j as f64 + 0.5) * 2.0 * PI / cols as f64,
                )
            })
        })
        .collect()
}

/// Fraction of a `bins × bins` `(θ, φ)` histogram visited by a trajectory.
pub fn histogram_occupancy(points: &[(f64, f64)], bins: usize) -> f64 {
    let mut hit = vec![false; bins * bins];
    for &(theta, phi) in points {
        let i = ((theta / PI * bins as f64) as usize).min(bins - 1);
        let j = ((phi / (2.0 * PI) * bins as f64) as usize).min(bins - 1);
        hit[i * bins + j] = true;
    }
    hit.iter().filter(|&&h| h).count() as f64 / (bins * bins) as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rephase_to_identity(u: &ComplexMatrix) -> f64 {
        let phase = u[(0, 0)] / u[(0, 0)].norm();
        u.scale(phase.conj())
            .max_abs_diff(&ComplexMatrix::identity(u.rows()))
    }

    #[test]
    fn kick_has_period_four() {
        let (kick, _) = qkt_unitaries(1.0);
        assert!(kick.is_unitary(1e-12));
        assert!(rephase_to_identity(&kick.pow(4)) < 1e-12);
    }

    #[test]
    fn kick_is_tensor_square_of_qubit_rotation() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let rx = ComplexMatrix::from_rows(&[
            vec![C64::new(h, 0.0), C64::new(0.0, -h)],
            vec![C64::new(0.0, -h), C64::new(h, 0.0)],
        ]);
        let (kick, _) = qkt_unitaries(0.0);
        assert!(kick.max_abs_diff(&tensor(&rx, &rx)) < 1e-12);
    }

    #[test]
    fn twist_is_diagonal_and_trivial_at_zero() {
        let (_, twist) = qkt_unitaries(0.0);
        assert!(rephase_to_identity(&twist) < 1e-12);
        for k in [0.5, 2.5, 2.0 * PI + 2.5] {
            let (_, twist) = qkt_unitaries(k);
            assert!(twist.is_unitary(1e-12));
            for i in 0..4 {
                for j in 0..4 {
                    if i != j {
                        assert!(twist[(i, j)].norm() < 1e-12);
                    }
                }
            }
        }
    }

    #[test]
    fn angular_momentum_commutator() {
        let [jx, jy, jz] = spin_operators();
        let comm = &(&jx * &jy) - &(&jy * &jx);
        assert!(comm.max_abs_diff(&jz.scale(C64::new(0.0, 1.0))) < 1e-12);
    }

    #[test]
    fn zero_kicks_single_record() {
        let run = run_qkt(&QktParams::new(0.5, 0, POINT_C)).unwrap();
        assert_eq!(run.records.len(), 1);
        let frame = PhaseSpaceFrame::build(4).unwrap();
        let w = frame
            .wigner_transform(&two_qubit_scs(POINT_C.0, POINT_C.1))
            .unwrap();
        let row: f64 = (0..4).map(|p| w.get(0, p)).sum();
        assert!((run.records[0].s - row).abs() < 1e-15);
    }

    #[test]
    fn circuit_readout_matches_direct() {
        let mut params = QktParams::new(2.5, 5, POINT_C);
        let direct = run_qkt(&params).unwrap();
        params.readout = Readout::Circuit { shots: 0, seed: 0 };
        let circuit = run_qkt(&params).unwrap();
        for (a, b) in direct.signature().iter().zip(circuit.signature()) {
            assert!((a - b).abs() < 1e-10);
        }
    }

    #[test]
    fn classical_zero_k_has_period_four() {
        let s0 = ClassicalTopState::from_angles(1.0, 2.5);
        let mut s = s0;
        for _ in 0..4 {
            s = classical_step(s, 0.0);
        }
        assert!((s.x - s0.x).abs() < 1e-12);
        assert!((s.y - s0.y).abs() < 1e-12);
        assert!((s.z - s0.z).abs() < 1e-12);
    }

    #[test]
    fn angles_round_trip() {
        for (theta, phi) in [(0.3, 0.2), (1.0, 2.5), (2.8, 6.1)] {
            let (t, p) = ClassicalTopState::from_angles(theta, phi).angles();
            assert!((t - theta).abs() < 1e-12 && (p - phi).abs() < 1e-12);
        }
    }

    #[test]
    fn portrait_first_step_is_classical_step() {
        let pts = phase_portrait(2.5, &[(1.0, 2.5)], 1);
        let s = classical_step(ClassicalTopState::from_angles(1.0, 2.5), 2.5);
        assert_eq!(pts[0][0], s.angles());
    }

    #[test]
    fn occupancy_counts_bins() {
        assert_eq!(
            histogram_occupancy(&[(0.0, 0.0), (0.01, 0.01), (PI, 2.0 * PI)], 10),
            0.02
        );
        assert_eq!(seed_grid(3, 4).len(), 12);
    }
}
