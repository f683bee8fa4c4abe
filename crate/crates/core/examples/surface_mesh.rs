//! Samples the cmc-1 immersion of a catalog frame, writes a Poincaré-ball
//! OBJ mesh and reports the mean-curvature error.

use bryantlab::frames::catalog;
use bryantlab::hyperbolic::{curvature_grid, mean_curvature, mean_curvature_richardson, sample_mesh, Grid};
use bryantlab::Complex64;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let name = std::env::args().nth(1).unwrap_or_else(|| "affine-null".to_owned());
    let frame = catalog(&name)?;
    let grid = Grid::new(Complex64::new(0.0, 0.0), 1.0, 10);

    let mesh = sample_mesh(&frame, grid);
    let path = std::env::temp_dir().join(format!("{name}.obj"));
    std::fs::write(&path, mesh.to_obj())?;
    println!("{} vertices, {} faces -> {}", mesh.valid_vertex_count(), mesh.faces.len(), path.display());

    let samples = curvature_grid(&frame, grid, 1e-4);
    let errs: Vec<f64> = samples
        .iter()
        .filter_map(|s| s.as_ref().ok())
        .map(|s| (s.mean_curvature - 1.0).abs())
        .collect();
    let skipped = samples.len() - errs.len();
    let max = errs.iter().copied().fold(0.0, f64::max);
    println!("max |H - 1| = {max:.3e} over {} points ({skipped} branch points skipped)", errs.len());

    // cusp-degree2 immerses as a quartic, so the O(step²) error is visible.
    let cusp = catalog("cusp-degree2")?;
    let z = Complex64::new(0.7, 0.4);
    for step in [4e-2, 2e-2, 1e-2] {
        let plain = mean_curvature(&cusp, z, step)?.mean_curvature;
        let rich = mean_curvature_richardson(&cusp, z, step)?.mean_curvature;
        println!("step {step:.0e}: |H - 1| = {:.3e}, Richardson {:.3e}", (plain - 1.0).abs(), (rich - 1.0).abs());
    }
    Ok(())
}
