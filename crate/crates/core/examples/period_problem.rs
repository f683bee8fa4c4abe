//! Non-abelian period problem at generator level: a real-weight end, an
//! imaginary-weight end, and a Fuchsian field with two punctures whose
//! residues do not commute.

use bryantlab::connection::{period_problem, DiagonalEnd, HiggsField, PathLoop, TransportControls};
use bryantlab::series::GaussianRational;
use bryantlab::Complex64;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let controls = TransportControls::default();
    let tol = 1e-8;
    let origin = Complex64::new(0.0, 0.0);
    let circle = PathLoop::circle(origin, Complex64::new(1.0, 0.0));

    for (label, end) in [
        ("weight 1/3", DiagonalEnd::real(1.0 / 3.0)),
        ("weight i", DiagonalEnd::new(Complex64::new(0.0, 1.0))),
    ] {
        let r = period_problem(&end, std::slice::from_ref(&circle), tol, &controls)?;
        println!(
            "{label:>10}: {:?}, unitary defect {:.3e}",
            r.holonomy.verdict, r.holonomy.unitary_defects[0]
        );
    }

    // Θ = R0 dz/z + R1 dz/(z − 1), R0 = −diag(1/4, −1/4), R1 = −(1/4)[[0, 1], [1, 0]]
    let q = GaussianRational::ratio(1, 4);
    let zero = GaussianRational::from_int(0);
    let theta = HiggsField::fuchsian(&[
        (zero.clone(), [[-q.clone(), zero.clone()], [zero.clone(), q.clone()]]),
        (GaussianRational::from_int(1), [[zero.clone(), -q.clone()], [-q.clone(), zero.clone()]]),
    ])?;
    let base = Complex64::new(0.5, 0.0);
    let loops = [
        PathLoop::circle(origin, base),
        PathLoop::circle(Complex64::new(1.0, 0.0), base),
    ];
    let r = period_problem(&theta, &loops, tol, &controls)?;
    println!(
        "two punctures: {:?}, abelian {}, commutator defect {:.4}",
        r.holonomy.verdict, r.abelian, r.max_commutator_defect
    );
    for (k, (u, d)) in r.holonomy.unitary_defects.iter().zip(&r.holonomy.det_defects).enumerate() {
        println!("  generator {k}: unitary defect {u:.3e}, det defect {d:.3e}");
    }
    Ok(())
}
