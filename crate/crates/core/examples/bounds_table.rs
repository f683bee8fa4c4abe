//! Existence bounds for a few (g, d, d_P) and a CSV table over a small grid.

use bryantlab::parabolic::{bounds_grid, existence_bounds, write_bounds_csv};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for (g, d, dp) in [(0, 3, 3), (1, 8, 1), (2, 5, 0)] {
        let b = existence_bounds(g, d, dp);
        println!(
            "g={g} d={d} d_P={dp}: required d >= {}, met {}, rank {}, dim M >= {}",
            b.required_d, b.hypothesis_met, b.rank_r, b.dim_m_lower
        );
    }
    let rows: Vec<_> = bounds_grid(1, 10, 2).into_iter().filter(|b| b.hypothesis_met).collect();
    write_bounds_csv(&rows, std::io::stdout())?;
    Ok(())
}
