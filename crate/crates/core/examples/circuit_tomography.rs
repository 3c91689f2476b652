//! Reads one Wigner row of the Bell state three ways: exact traces, the exact
//! ancilla circuit and a shot-sampled circuit.

use swpst::phase_space::PhaseSpaceFrame;
use swpst::states::bell_phi_plus;
use swpst::tomography::{circuit_read, direct_read, sampled_standard_error, CellSelection};

fn main() -> swpst::Result<()> {
    let frame = PhaseSpaceFrame::build(4)?;
    let rho = bell_phi_plus().density();
    let row = CellSelection::row(4, 1)?;

    let direct = direct_read(&frame, &rho, &row)?;
    let exact = circuit_read(&frame, &rho, &row, 0, 0)?;
    let shots = 4000;
    let sampled = circuit_read(&frame, &rho, &row, shots, 7)?;

    println!("cell    direct    circuit   sampled   ±SE");
    for ((d, e), s) in direct.cells.iter().zip(&exact.cells).zip(&sampled.cells) {
        let se = sampled_standard_error(d.w, 4, shots);
        println!(
            "({},{})  {:+.5}  {:+.5}  {:+.5}  {se:.5}",
            d.q, d.p, d.w, e.w, s.w
        );
    }
    println!("{}", sampled.to_json());
    Ok(())
}
