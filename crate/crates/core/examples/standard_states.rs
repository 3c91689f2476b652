//! Wigner quadrants of |00⟩, |++⟩ and the Bell state, with their fidelities.

use swpst::phase_space::PhaseSpaceFrame;
use swpst::states::{basis_state, bell_phi_plus, plus_plus};
use swpst::wigner_fidelity;

fn main() -> swpst::Result<()> {
    let frame = PhaseSpaceFrame::build(4)?;
    let states = [
        ("|00>", basis_state(0, 4)?.density()),
        ("|++>", plus_plus().density()),
        ("bell", bell_phi_plus().density()),
    ];
    let mut quadrants = Vec::new();
    for (name, rho) in &states {
        let w = frame.wigner_transform(rho)?;
        println!("{name}:");
        for row in w.rows() {
            let cells: Vec<String> = row.iter().map(|x| format!("{x:+.4}")).collect();
            println!("  {}", cells.join(" "));
        }
        quadrants.push(w);
    }
    for i in 0..3 {
        for j in i + 1..3 {
            let f = wigner_fidelity(&quadrants[i], &quadrants[j])?;
            println!("F({}, {}) = {f:.4}", states[i].0, states[j].0);
        }
    }
    Ok(())
}
