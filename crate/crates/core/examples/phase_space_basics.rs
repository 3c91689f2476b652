//! Builds the N = 4 frame, transforms a random state and inverts it.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use swpst::phase_space::PhaseSpaceFrame;
use swpst::states::random_density_matrix;

fn main() -> swpst::Result<()> {
    let frame = PhaseSpaceFrame::build(4)?;
    let v = frame.shift().conjugate_by(frame.qft())?;
    println!("|V − QFT·U·QFT†| = {:.1e}", v.max_abs_diff(frame.boost()));

    let rho = random_density_matrix(4, &mut ChaCha8Rng::seed_from_u64(1));
    let w = frame.wigner_transform(&rho)?;
    print!("W on G_N:\n{}", w.to_csv());

    let (position, momentum) = w.marginals();
    println!("position marginal {position:.4?}");
    println!("momentum marginal {momentum:.4?}");

    let back = frame.reconstruct(&w)?;
    println!(
        "round-trip error {:.1e}",
        back.matrix().max_abs_diff(rho.matrix())
    );
    Ok(())
}
