//! Brute-force references shared by the integration tests. Nothing here goes
//! through `PhaseSpaceFrame`.

#![allow(dead_code, clippy::needless_range_loop)]

use std::f64::consts::PI;

use num_complex::Complex64 as C64;
use swpst::{ComplexMatrix, DensityMatrix};

pub type Dense = Vec<Vec<C64>>;

/// `A(q, p)` for any `(q, p) ∈ G_2N` from its matrix elements:
/// `A|n⟩ = (1/2N) e^{iπpq/N} e^{−i2πpn/N} |q − n mod N⟩`.
pub fn point_operator(n: usize, q: usize, p: usize) -> Dense {
    let nf = n as f64;
    let mut a = vec![vec![C64::new(0.0, 0.0); n]; n];
    for col in 0..n {
        let row = (q % n + n - col) % n;
        let phase = PI * (p * q) as f64 / nf - 2.0 * PI * (p * col) as f64 / nf;
        a[row][col] = C64::from_polar(1.0 / (2.0 * nf), phase);
    }
    a
}

pub fn trace_product(a: &Dense, b: &ComplexMatrix) -> C64 {
    let n = a.len();
    let mut acc = C64::new(0.0, 0.0);
    for i in 0..n {
        for k in 0..n {
            acc += a[i][k] * b[(k, i)];
        }
    }
    acc
}

/// `Tr[A(q, p) ρ]` over the full grid.
pub fn wigner_full(rho: &ComplexMatrix) -> Vec<Vec<C64>> {
    let n = rho.rows();
    (0..2 * n)
        .map(|q| {
            (0..2 * n)
                .map(|p| trace_product(&point_operator(n, q, p), rho))
                .collect()
        })
        .collect()
}

pub fn dense_to_matrix(a: &Dense) -> ComplexMatrix {
    ComplexMatrix::from_rows(a)
}

pub fn pure(amps: &[C64]) -> DensityMatrix {
    DensityMatrix::from_pure(amps).unwrap()
}

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}
