//! Exact Bryant check of the catalog frames, plus a special frame that is not Bryant.

use bryantlab::frames::{branch_points, catalog, check_bryant, omega_quadratic, Annulus, BryantFrame, CATALOG_NAMES};
use bryantlab::series::{LaurentMatrix, LaurentPoly};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for name in CATALOG_NAMES {
        let frame = catalog(name)?;
        let report = check_bryant(frame.matrix());
        let branch = branch_points(&frame, Annulus::disk(2.0), 1e-10)?;
        let branch: Vec<String> = branch.iter().map(|z| z.to_string()).collect();
        println!(
            "{name:>13}: special {}, bryant {}, branch points [{}]",
            report.is_special,
            report.is_bryant,
            branch.join(", ")
        );
    }

    // [[1, z], [z, 1 + z²]] has det 1 but det A' = −1.
    let z = LaurentPoly::z();
    let m = LaurentMatrix::new(LaurentPoly::one(), z.clone(), z, LaurentPoly::from_ints(&[(0, 1), (2, 1)]));
    let frame = BryantFrame::on_plane(m)?;
    println!(
        "[[1, z], [z, 1 + z^2]]: bryant {}, det A' = {}",
        check_bryant(frame.matrix()).is_bryant,
        omega_quadratic(frame.matrix())
    );
    println!("{}", serde_json::to_string(&catalog("affine-null")?)?);
    Ok(())
}
