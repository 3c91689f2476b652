//! Histogram occupancy of classical kicked-top trajectories, the regularity
//! proxy behind the phase portraits. Pass `--csv` to dump the point cloud.

use swpst::kicked_top::{histogram_occupancy, phase_portrait, seed_grid, Chaoticity};

fn main() {
    let dump = std::env::args().any(|a| a == "--csv");
    let seeds = seed_grid(20, 20);
    for preset in [Chaoticity::Regular, Chaoticity::Mixed, Chaoticity::Chaotic] {
        let portrait = phase_portrait(preset.k(), &seeds, 500);
        if dump {
            println!("seed_id,step,theta,phi");
            for (id, traj) in portrait.iter().enumerate() {
                for (step, (t, p)) in traj.iter().enumerate() {
                    println!("{id},{},{t},{p}", step + 1);
                }
            }
            continue;
        }
        let occ: Vec<f64> = portrait
            .iter()
            .map(|t| histogram_occupancy(t, 50))
            .collect();
        let max = occ.iter().copied().fold(0.0, f64::max);
        let mean = occ.iter().sum::<f64>() / occ.len() as f64;
        println!(
            "k = {:.4}: occupancy mean {mean:.3}, max {max:.3}",
            preset.k()
        );
    }
}
