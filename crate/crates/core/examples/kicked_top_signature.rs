//! Row-0 signature S of the two-qubit kicked top from a regular and a chaotic
//! starting point.

use swpst::kicked_top::{run_qkt, Chaoticity, QktParams, POINT_C, POINT_R};

fn main() -> swpst::Result<()> {
    for preset in [Chaoticity::Regular, Chaoticity::Mixed, Chaoticity::Chaotic] {
        println!("k = {:.4}", preset.k());
        for (name, point) in [("R", POINT_R), ("C", POINT_C)] {
            let run = run_qkt(&QktParams::new(preset.k(), 10, point))?;
            let s: Vec<String> = run.signature().iter().map(|x| format!("{x:.3}")).collect();
            println!(
                "  {name}: var {:.2e}  S = [{}]",
                run.signature_variance(),
                s.join(", ")
            );
        }
    }
    Ok(())
}
