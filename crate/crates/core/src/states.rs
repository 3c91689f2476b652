//! State factories: basis, product and Bell states, spin coherent states,
//! harmonic and randomized harmonic states, pseudopure mixtures.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::qmat::{tensor, tensor_vec, ComplexMatrix, DensityMatrix};

const NORM_TOL: f64 = 1e-12;

/// Normalized state vector.
#[derive(Clone, Debug, PartialEq)]
pub struct PureState {
    amplitudes: Vec<C64>,
}

impl PureState {
    /// Accepts an already normalized amplitude vector.
    pub fn new(amplitudes: Vec<C64>) -> Result<Self> {
        let norm = l2_norm(&amplitudes);
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::InvalidDensityMatrix {
                reason: format!("state norm {norm} != 1"),
            });
        }
        Ok(Self { amplitudes })
    }

    /// Divides by the 2-norm.
    pub fn normalized(amplitudes: Vec<C64>) -> Result<Self> {
        let norm = l2_norm(&amplitudes);
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::ZeroNorm);
        }
        Ok(Self {
            amplitudes: amplitudes.into_iter().map(|a| a / norm).collect(),
        })
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    /// `⟨self|other⟩`
    pub fn inner(&self, other: &Self) -> C64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn tensor(&self, other: &Self) -> Self {
        Self {
            amplitudes: tensor_vec(&self.amplitudes, &other.amplitudes),
        }
    }

    /// `|ψ⟩⟨ψ|`
    pub fn density(&self) -> DensityMatrix {
        DensityMatrix::from_pure(&self.amplitudes).expect("normalized state gives a density matrix")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("state serializes")
    }
}

fn l2_norm(v: &[C64]) -> f64 {
    v.iter().map(C64::norm_sqr).sum::<f64>().sqrt()
}

/// JSON form: array of `[re, im]` pairs.
impl Serialize for PureState {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let pairs: Vec<[f64; 2]> = self.amplitudes.iter().map(|z| [z.re, z.im]).collect();
        pairs.serialize(s)
    }
}

impl<'de> Deserialize<'de> for PureState {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let pairs = Vec::<[f64; 2]>::deserialize(d)?;
        let amps = pairs.into_iter().map(|[re, im]| C64::new(re, im)).collect();
        PureState::new(amps).map_err(serde::de::Error::custom)
    }
}

/// Computational basis state `|n⟩`.
pub fn basis_state(n: usize, dim: usize) -> Result<PureState> {
    if n >= dim {
        return Err(Error::IndexOutOfRange { index: n, dim });
    }
    let mut amps = vec![C64::new(0.0, 0.0); dim];
    amps[n] = C64::new(1.0, 0.0);
    PureState::new(amps)
}

/// `|++⟩ = (|00⟩ + |01⟩ + |10⟩ + |11⟩)/2`
pub fn plus_plus() -> PureState {
    PureState {
        amplitudes: vec![C64::new(0.5, 0.0); 4],
    }
}

/// `(|00⟩ + |11⟩)/√2`
pub fn bell_phi_plus() -> PureState {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let z = C64::new(0.0, 0.0);
    PureState {
        amplitudes: vec![C64::new(h, 0.0), z, z, C64::new(h, 0.0)],
    }
}

/// `|θ,φ⟩ = cos(θ/2)|0⟩ + e^{iφ} sin(θ/2)|1⟩`
pub fn spin_coherent(theta: f64, phi: f64) -> PureState {
    let theta = theta.rem_euclid(2.0 * PI);
    let phi = phi.rem_euclid(2.0 * PI);
    let amps = vec![
        C64::new((theta / 2.0).cos(), 0.0),
        C64::from_polar((theta / 2.0).sin(), phi),
    ];
    PureState::normalized(amps).expect("coherent state has unit norm")
}

/// `|θ,φ⟩⟨θ,φ| ⊗ |θ,φ⟩⟨θ,φ|` on two system qubits.
pub fn two_qubit_scs(theta: f64, phi: f64) -> DensityMatrix {
    let single = spin_coherent(theta, phi).density();
    DensityMatrix::new(tensor(single.matrix(), single.matrix()))
        .expect("product of projectors is a state")
}

fn modulated_harmonic(
    j: usize,
    dim: usize,
    magnitudes: impl Fn(usize) -> f64,
) -> Result<PureState> {
    if j >= dim {
        return Err(Error::IndexOutOfRange { index: j, dim });
    }
    let amps = (0..dim)
        .map(|n| {
            let angle = 2.0 * PI * ((n * j) % dim) as f64 / dim as f64;
            C64::from_polar(magnitudes(n), angle)
        })
        .collect();
    PureState::normalized(amps)
}

/// Harmonic state `QFT|j⟩ = (1/√N) Σ_n e^{i2πnj/N} |n⟩`.
pub fn harmonic_state(j: usize, dim: usize) -> Result<PureState> {
    modulated_harmonic(j, dim, |_| 1.0)
}

/// Parameters of a randomized harmonic state.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RandomizedHarmonicSpec {
    pub j: usize,
    pub eta: f64,
    pub seed: u64,
}

/// Harmonic state with each magnitude multiplied by an independent
/// `r_n ~ U[1 − η, 1 + η]`, then renormalized.
///
/// With `η = 0` the result is bitwise equal to [`harmonic_state`].
pub fn randomized_harmonic(spec: RandomizedHarmonicSpec, dim: usize) -> Result<PureState> {
    if !(0.0..=1.0).contains(&spec.eta) {
        return Err(Error::InvalidEta(spec.eta));
    }
    if spec.j >= dim {
        return Err(Error::IndexOutOfRange { index: spec.j, dim });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let r: Vec<f64> = (0..dim)
        .map(|_| rng.random_range(1.0 - spec.eta..=1.0 + spec.eta))
        .collect();
    modulated_harmonic(spec.j, dim, |n| r[n])
}

/// `(1 − ε) I/N + ε ρ`
pub fn pseudopure(rho: &DensityMatrix, epsilon: f64) -> Result<DensityMatrix> {
    if !(0.0..=1.0).contains(&epsilon) {
        return Err(Error::InvalidEpsilon(epsilon));
    }
    rho.mix(&DensityMatrix::maximally_mixed(rho.dim()), epsilon)
}

/// Haar-random pure state from normalized complex Gaussians.
pub fn random_pure_state<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> PureState {
    let amps = (0..dim)
        .map(|_| C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
        .collect();
    PureState::normalized(amps).expect("gaussian vector is nonzero")
}

/// Random full-rank density matrix `G G† / Tr[G G†]` with Gaussian `G`.
pub fn random_density_matrix<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> DensityMatrix {
    let g = ComplexMatrix::from_fn(dim, dim, |_, _| {
        C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    });
    let m = &g * &g.adjoint();
    let tr = m.trace().re;
    DensityMatrix::new(m.scale_real(1.0 / tr)).expect("Wishart matrix is a state")
}

/// Textual state selector used by the command line.
#[derive(Clone, Debug, PartialEq)]
pub enum StateSpec {
    Basis(usize),
    PlusPlus,
    Bell,
    Scs { theta: f64, phi: f64 },
    Harmonic(usize),
    RandomizedHarmonic { j: usize, eta: f64 },
}

impl StateSpec {
    /// Builds the state in dimension `dim`. Two-qubit states require `dim = 4`.
    pub fn build(&self, dim: usize, seed: u64) -> Result<DensityMatrix> {
        let two_qubit = |s: DensityMatrix| {
            if dim == 4 {
                Ok(s)
            } else {
                Err(Error::DimensionMismatch {
                    expected: 4,
                    found: dim,
                })
            }
        };
        match *self {
            StateSpec::Basis(n) => Ok(basis_state(n, dim)?.density()),
            StateSpec::PlusPlus => two_qubit(plus_plus().density()),
            StateSpec::Bell => two_qubit(bell_phi_plus().density()),
            StateSpec::Scs { theta, phi } => two_qubit(two_qubit_scs(theta, phi)),
            StateSpec::Harmonic(j) => Ok(harmonic_state(j, dim)?.density()),
            StateSpec::RandomizedHarmonic { j, eta } => {
                Ok(randomized_harmonic(RandomizedHarmonicSpec { j, eta, seed }, dim)?.density())
            }
        }
    }
}

impl fmt::Display for StateSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StateSpec::Basis(n) => write!(f, "basis:{n}"),
            StateSpec::PlusPlus => write!(f, "plusplus"),
            StateSpec::Bell => write!(f, "bell"),
            StateSpec::Scs { theta, phi } => write!(f, "scs:{theta},{phi}"),
            StateSpec::Harmonic(j) => write!(f, "harmonic:{j}"),
            StateSpec::RandomizedHarmonic { j, eta } => write!(f, "randharm:{j},{eta}"),
        }
    }
}

impl FromStr for StateSpec {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let (kind, args) = s.split_once(':').unwrap_or((s, ""));
        let nums = |expected: usize| -> std::result::Result<Vec<f64>, String> {
            let parts: Vec<&str> = if args.is_empty() {
                vec![]
            } else {
                args.split(',').collect()
            };
            if parts.len() != expected {
                return Err(format!(
                    "`{kind}` takes {expected} argument(s), got `{args}`"
                ));
            }
            parts
                .iter()
                .map(|p| {
                    p.trim()
                        .parse::<f64>()
                        .map_err(|e| format!("bad number `{p}`: {e}"))
                })
                .collect()
        };
        let index = |x: f64| -> std::result::Result<usize, String> {
            if x >= 0.0 && x.fract() == 0.0 {
                Ok(x as usize)
            } else {
                Err(format!("bad index {x}"))
            }
        };
        match kind {
            "basis" => Ok(StateSpec::Basis(index(nums(1)?[0])?)),
            "plusplus" => nums(0).map(|_| StateSpec::PlusPlus),
            "bell" => nums(0).map(|_| StateSpec::Bell),
            "scs" => {
                let v = nums(2)?;
                Ok(StateSpec::Scs {
                    theta: v[0],
                    phi: v[1],
                })
            }
            "harmonic" => Ok(StateSpec::Harmonic(index(nums(1)?[0])?)),
            "randharm" => {
                let v = nums(2)?;
                if !(0.0..=1.0).contains(&v[1]) {
                    return Err(format!("eta {} outside [0, 1]", v[1]));
                }
                Ok(StateSpec::RandomizedHarmonic {
                    j: index(v[0])?,
                    eta: v[1],
                })
            }
            other => Err(format!("unknown state `{other}`")),
        }
    }
}
