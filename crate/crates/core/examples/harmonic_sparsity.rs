//! Sparsity of randomized harmonic states versus randomization strength.

use swpst::phase_space::PhaseSpaceFrame;
use swpst::tomography::sparsity_sweep;

fn main() -> swpst::Result<()> {
    let frame = PhaseSpaceFrame::build(8)?;
    let etas = [0.0, 0.1, 0.2, 0.4, 0.6, 0.8, 1.0];
    let rows = sparsity_sweep(&frame, 0, &etas, &[0.1, 0.01], 200, 0)?;
    println!("eta   thr    rho      W               1-F");
    for r in rows {
        println!(
            "{:.1}  {:.2}  {:.3}  {:.3} ± {:.3}  {:.2e}",
            r.eta,
            r.threshold,
            r.rho_sparsity.mean,
            r.wigner_sparsity.mean,
            r.wigner_sparsity.std,
            r.pruning_infidelity.mean
        );
    }
    Ok(())
}
