//! Wigner readout: direct traces, the ancilla interferometry circuit, and
//! selective readout over a subset of phase-space cells. Also pruning and
//! sparsity measures for Wigner and density matrices.

use std::collections::HashSet;
use std::fmt::{self, Write as _};
use std::str::FromStr;

use num_complex::Complex64 as C64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::phase_space::{fold_cell, wigner_fidelity, PhaseSpaceFrame, WignerMatrix};
use crate::qmat::{tensor, ComplexMatrix, DensityMatrix};
use crate::states::{randomized_harmonic, RandomizedHarmonicSpec};

/// Guard on `‖Ã†Ã − I‖` for the scaled point operator fed to the circuit.
pub const POINT_UNITARITY_TOL: f64 = 1e-10;

/// A requested phase-space cell, in `G_N` or the full `G_2N` grid.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Cell {
    pub q: usize,
    pub p: usize,
}

/// Ordered set of cells to read.
///
/// Cells outside the first quadrant are folded back when read; two requests
/// that fold onto the same first-quadrant cell are rejected.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellSelection {
    dim: usize,
    cells: Vec<Cell>,
}

impl CellSelection {
    pub fn new(dim: usize, cells: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for (q, p) in cells {
            for index in [q, p] {
                if index >= 2 * dim {
                    return Err(Error::IndexOutOfRange {
                        index,
                        dim: 2 * dim,
                    });
                }
            }
            let (q0, p0, _) = fold_cell(q, p, dim);
            if !seen.insert((q0, p0)) {
                return Err(Error::DuplicateCell { q, p });
            }
            out.push(Cell { q, p });
        }
        Ok(Self { dim, cells: out })
    }

    /// Every cell of `G_N`, row-major.
    pub fn all(dim: usize) -> Self {
        let cells = (0..dim)
            .flat_map(|q| (0..dim).map(move |p| Cell { q, p }))
            .collect();
        Self { dim, cells }
    }

    /// Row `q` of `G_N`.
    pub fn row(dim: usize, q: usize) -> Result<Self> {
        if q >= dim {
            return Err(Error::IndexOutOfRange { index: q, dim });
        }
        Ok(Self {
            dim,
            cells: (0..dim).map(|p| Cell { q, p }).collect(),
        })
    }

    /// Column `p` of `G_N`.
    pub fn column(dim: usize, p: usize) -> Result<Self> {
        if p >= dim {
            return Err(Error::IndexOutOfRange { index: p, dim });
        }
        Ok(Self {
            dim,
            cells: (0..dim).map(|q| Cell { q, p }).collect(),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// True when every cell of `G_N` is requested exactly in place.
    pub fn is_full_quadrant(&self) -> bool {
        self.cells.len() == self.dim * self.dim
            && self.cells.iter().all(|c| c.q < self.dim && c.p < self.dim)
    }
}

/// Textual selection: `all`, `row:<q>`, `col:<p>` or `q,p;q,p;…`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SelectionSpec {
    All,
    Row(usize),
    Column(usize),
    Cells(Vec<(usize, usize)>),
}

impl SelectionSpec {
    pub fn resolve(&self, dim: usize) -> Result<CellSelection> {
        match self {
            SelectionSpec::All => Ok(CellSelection::all(dim)),
            SelectionSpec::Row(q) => CellSelection::row(dim, *q),
            SelectionSpec::Column(p) => CellSelection::column(dim, *p),
            SelectionSpec::Cells(cells) => CellSelection::new(dim, cells.iter().copied()),
        }
    }
}

impl fmt::Display for SelectionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SelectionSpec::All => write!(f, "all"),
            SelectionSpec::Row(q) => write!(f, "row:{q}"),
            SelectionSpec::Column(p) => write!(f, "col:{p}"),
            SelectionSpec::Cells(cells) => {
                let parts: Vec<String> = cells.iter().map(|(q, p)| format!("{q},{p}")).collect();
                write!(f, "{}", parts.join(";"))
            }
        }
    }
}

impl FromStr for SelectionSpec {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let parse_index = |t: &str| {
            t.trim()
                .parse::<usize>()
                .map_err(|e| format!("bad index `{t}`: {e}"))
        };
        if s == "all" {
            return Ok(SelectionSpec::All);
        }
        if let Some(q) = s.strip_prefix("row:") {
            return parse_index(q).map(SelectionSpec::Row);
        }
        if let Some(p) = s.strip_prefix("col:") {
            return parse_index(p).map(SelectionSpec::Column);
        }
        let cells = s
            .split(';')
            .map(|pair| {
                let (q, p) = pair
                    .split_once(',')
                    .ok_or_else(|| format!("bad cell `{pair}`"))?;
                Ok((parse_index(q)?, parse_index(p)?))
            })
            .collect::<std::result::Result<Vec<_>, String>>()?;
        Ok(SelectionSpec::Cells(cells))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ReadoutMethod {
    Direct,
    CircuitExact,
    CircuitSampled,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CellValue {
    pub q: usize,
    pub p: usize,
    pub w: f64,
}

/// Wigner estimates for a selection of cells.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TomographyResult {
    pub method: ReadoutMethod,
    pub shots: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub cells: Vec<CellValue>,
}

impl TomographyResult {
    pub fn get(&self, q: usize, p: usize) -> Option<f64> {
        self.cells
            .iter()
            .find(|c| c.q == q && c.p == p)
            .map(|c| c.w)
    }

    pub fn sum(&self) -> f64 {
        self.cells.iter().map(|c| c.w).sum()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("result serializes")
    }

    /// Quadrant-shaped CSV; cells that were not read are empty fields.
    pub fn to_csv(&self, dim: usize) -> String {
        let mut grid: Vec<Vec<Option<f64>>> = vec![vec![None; dim]; dim];
        for c in &self.cells {
            let (q0, p0, sign) = fold_cell(c.q, c.p, dim);
            grid[q0][p0] = Some(sign * c.w);
        }
        let mut out = String::new();
        for row in grid {
            let fields: Vec<String> = row
                .iter()
                .map(|v| v.map(|x| x.to_string()).unwrap_or_default())
                .collect();
            writeln!(out, "{}", fields.join(",")).unwrap();
        }
        out
    }

    /// Assembles a quadrant when the result covers all of `G_N`.
    pub fn to_wigner(&self, dim: usize) -> Option<WignerMatrix> {
        let mut values = vec![None; dim * dim];
        for c in &self.cells {
            let (q0, p0, sign) = fold_cell(c.q, c.p, dim);
            values[q0 * dim + p0] = Some(sign * c.w);
        }
        let values: Option<Vec<f64>> = values.into_iter().collect();
        values.and_then(|v| WignerMatrix::from_quadrant(dim, v).ok())
    }
}

fn check_dims(frame: &PhaseSpaceFrame, rho: &DensityMatrix, sel: &CellSelection) -> Result<()> {
    if rho.dim() != frame.dim() {
        return Err(Error::DimensionMismatch {
            expected: frame.dim(),
            found: rho.dim(),
        });
    }
    if sel.dim() != frame.dim() {
        return Err(Error::DimensionMismatch {
            expected: frame.dim(),
            found: sel.dim(),
        });
    }
    Ok(())
}

/// Exact traces `Tr[A(q, p) ρ]` for the selected cells only.
pub fn direct_read(
    frame: &PhaseSpaceFrame,
    rho: &DensityMatrix,
    sel: &CellSelection,
) -> Result<TomographyResult> {
    check_dims(frame, rho, sel)?;
    let cells = sel
        .cells()
        .iter()
        .map(|&Cell { q, p }| {
            let (q0, p0, sign) = fold_cell(q, p, frame.dim());
            Ok(CellValue {
                q,
                p,
                w: sign * frame.wigner_cell(rho, q0, p0)?,
            })
        })
        .collect::<Result<_>>()?;
    Ok(TomographyResult {
        method: ReadoutMethod::Direct,
        shots: 0,
        seed: None,
        cells,
    })
}

/// Which interferometric quadrature the ancilla measurement reveals.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Quadrature {
    /// `Re Tr[Ũ ρ]`
    Real,
    /// `Im Tr[Ũ ρ]`, with an `S†` on the ancilla before the second Hadamard.
    Imaginary,
}

/// Hadamard test: ancilla `|0⟩`, `H`, controlled-`unitary` on the system,
/// optional `S†`, `H`, then `⟨Z⟩` on the ancilla.
///
/// The register is `ancilla ⊗ system` with the ancilla as the slow axis.
pub fn hadamard_test(
    rho: &DensityMatrix,
    unitary: &ComplexMatrix,
    quadrature: Quadrature,
) -> Result<f64> {
    let n = rho.dim();
    if unitary.rows() != n || unitary.cols() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: unitary.rows(),
        });
    }
    let zero = C64::new(0.0, 0.0);
    let one = C64::new(1.0, 0.0);
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let hadamard = ComplexMatrix::from_real_rows(&[vec![h, h], vec![h, -h]]);
    let ancilla_zero = ComplexMatrix::diagonal(&[one, zero]);
    let system_id = ComplexMatrix::identity(n);

    let h_full = tensor(&hadamard, &system_id);
    let controlled = ComplexMatrix::from_fn(2 * n, 2 * n, |i, j| match (i < n, j < n) {
        (true, true) => system_id[(i, j)],
        (false, false) => unitary[(i - n, j - n)],
        _ => zero,
    });

    let mut state = tensor(&ancilla_zero, rho.matrix());
    state = state.conjugate_by(&h_full)?;
    state = state.conjugate_by(&controlled)?;
    if quadrature == Quadrature::Imaginary {
        let s_dag = ComplexMatrix::diagonal(&[one, C64::new(0.0, -1.0)]);
        state = state.conjugate_by(&tensor(&s_dag, &system_id))?;
    }
    state = state.conjugate_by(&h_full)?;

    let z_anc = tensor(&ComplexMatrix::diagonal(&[one, -one]), &system_id);
    Ok(z_anc.trace_product(&state)?.re)
}

/// Simulated interferometric readout.
///
/// Each cell runs the Hadamard test with `Ã = 2N·A(q, p)` and reports
/// `⟨Z⟩/(2N)`. With `shots == 0` the exact expectation is returned;
/// otherwise `shots` two-outcome draws are taken from the ancilla
/// distribution `p(±) = (1 ± ⟨Z⟩)/2`, one RNG stream per cell.
pub fn circuit_read(
    frame: &PhaseSpaceFrame,
    rho: &DensityMatrix,
    sel: &CellSelection,
    shots: u64,
    seed: u64,
) -> Result<TomographyResult> {
    check_dims(frame, rho, sel)?;
    let n = frame.dim();
    let scale = 2.0 * n as f64;
    let mut cells = Vec::with_capacity(sel.len());
    for &Cell { q, p } in sel.cells() {
        let (q0, p0, sign) = fold_cell(q, p, n);
        let unitary = frame.scaled_point(q0, p0);
        let deviation = unitary.unitarity_deviation();
        if deviation > POINT_UNITARITY_TOL {
            return Err(Error::NonUnitaryPointOperator {
                q: q0,
                p: p0,
                deviation,
            });
        }
        let z = hadamard_test(rho, &unitary, Quadrature::Real)?;
        if cfg!(debug_assertions) {
            let imag = hadamard_test(rho, &unitary, Quadrature::Imaginary)?;
            debug_assert!(
                imag.abs() < 1e-8,
                "imaginary quadrature {imag} at ({q0}, {p0})"
            );
        }
        let estimate = if shots == 0 {
            z
        } else {
            let mut rng = cell_rng(seed, q, p);
            let p_plus = ((1.0 + z) / 2.0).clamp(0.0, 1.0);
            let plus = Binomial::new(shots, p_plus)
                .expect("probability in [0, 1]")
                .sample(&mut rng);
            (2.0 * plus as f64 - shots as f64) / shots as f64
        };
        cells.push(CellValue {
            q,
            p,
            w: sign * estimate / scale,
        });
    }
    let (method, seed) = if shots == 0 {
        (ReadoutMethod::CircuitExact, None)
    } else {
        (ReadoutMethod::CircuitSampled, Some(seed))
    };
    Ok(TomographyResult {
        method,
        shots,
        seed,
        cells,
    })
}

fn cell_rng(seed: u64, q: usize, p: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((q as u64) << 32) | p as u64);
    rng
}

/// Binomial standard error of a sampled Wigner estimate.
pub fn sampled_standard_error(w: f64, dim: usize, shots: u64) -> f64 {
    let z = 2.0 * dim as f64 * w;
    ((1.0 - z * z).max(0.0) / shots as f64).sqrt() / (2.0 * dim as f64)
}

/// Zeroes entries with `|W| < threshold · max|W|`.
pub fn prune(w: &WignerMatrix, threshold: f64) -> Result<WignerMatrix> {
    check_threshold(threshold)?;
    let cutoff = threshold * w.max_abs();
    Ok(w.map(|x| if x.abs() < cutoff { 0.0 } else { x }))
}

fn check_threshold(threshold: f64) -> Result<()> {
    if (0.0..=1.0).contains(&threshold) {
        Ok(())
    } else {
        Err(Error::InvalidThreshold(threshold))
    }
}

/// Anything whose entries have magnitudes.
pub trait Magnitudes {
    fn magnitudes(&self) -> Vec<f64>;
}

impl Magnitudes for WignerMatrix {
    fn magnitudes(&self) -> Vec<f64> {
        self.values().iter().map(|x| x.abs()).collect()
    }
}

impl Magnitudes for ComplexMatrix {
    fn magnitudes(&self) -> Vec<f64> {
        self.entries().iter().map(|z| z.norm()).collect()
    }
}

impl Magnitudes for DensityMatrix {
    fn magnitudes(&self) -> Vec<f64> {
        self.matrix().magnitudes()
    }
}

/// Fraction of entries with magnitude below `threshold · max magnitude`.
pub fn sparsity(m: &impl Magnitudes, threshold: f64) -> Result<f64> {
    check_threshold(threshold)?;
    let mags = m.magnitudes();
    if mags.is_empty() {
        return Ok(0.0);
    }
    let cutoff = threshold * mags.iter().copied().fold(0.0, f64::max);
    Ok(mags.iter().filter(|&&x| x < cutoff).count() as f64 / mags.len() as f64)
}

/// `1 − F(W, prune(W, threshold))`
pub fn pruning_infidelity(w: &WignerMatrix, threshold: f64) -> Result<f64> {
    Ok(1.0 - wigner_fidelity(w, &prune(w, threshold)?)?)
}

/// Mean and sample standard deviation.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Stat {
    pub mean: f64,
    pub std: f64,
}

impl Stat {
    pub fn of(xs: &[f64]) -> Self {
        let n = xs.len() as f64;
        let mean = xs.iter().sum::<f64>() / n;
        let std = if xs.len() > 1 {
            (xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt()
        } else {
            0.0
        };
        Self { mean, std }
    }
}

/// One (η, threshold) row of a randomized-harmonic sparsity sweep.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SparsityRow {
    pub eta: f64,
    pub threshold: f64,
    pub rho_sparsity: Stat,
    pub wigner_sparsity: Stat,
    pub pruning_infidelity: Stat,
}

/// Sweeps randomized harmonic states `ψ_j(η)` over `etas × thresholds`,
/// averaging over seeds `seed_base .. seed_base + seeds`.
pub fn sparsity_sweep(
    frame: &PhaseSpaceFrame,
    j: usize,
    etas: &[f64],
    thresholds: &[f64],
    seeds: u64,
    seed_base: u64,
) -> Result<Vec<SparsityRow>> {
    let n = frame.dim();
    for &t in thresholds {
        check_threshold(t)?;
    }
    let mut rows = Vec::with_capacity(etas.len() * thresholds.len());
    for &eta in etas {
        let samples = (seed_base..seed_base + seeds)
            .map(|seed| {
                let psi = randomized_harmonic(RandomizedHarmonicSpec { j, eta, seed }, n)?;
                let rho = psi.density();
                let w = frame.wigner_transform(&rho)?;
                Ok((rho, w))
            })
            .collect::<Result<Vec<_>>>()?;
        for &threshold in thresholds {
            let mut rho_sp = Vec::with_capacity(samples.len());
            let mut w_sp = Vec::with_capacity(samples.len());
            let mut infid = Vec::with_capacity(samples.len());
            for (rho, w) in &samples {
                rho_sp.push(sparsity(rho, threshold)?);
                w_sp.push(sparsity(w, threshold)?);
                infid.push(pruning_infidelity(w, threshold)?);
            }
            rows.push(SparsityRow {
                eta,
                threshold,
                rho_sparsity: Stat::of(&rho_sp),
                wigner_sparsity: Stat::of(&w_sp),
                pruning_infidelity: Stat::of(&infid),
            });
        }
    }
    Ok(rows)
}
