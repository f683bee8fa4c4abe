//! Quadratic differential, punctured-disk Bryant equations, pole bounds and
//! the local parabolic structure of an end.

use bryantlab::ends::{end_report, local_parabolic, nabla_alpha, omega_alpha, stareq_residuals, MeromorphicFramePair, SingularEnd};
use bryantlab::series::{LaurentMatrix, LaurentPoly};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let end: SingularEnd = "1/2".parse()?;
    let frame = MeromorphicFramePair::from_matrix(&LaurentMatrix::diag(LaurentPoly::z(), LaurentPoly::z_pow(-1)));

    let [ns, _] = nabla_alpha(&end, &frame.s);
    println!("nabla s = ({ns}) dz");
    println!("Omega = ({}) dz^2", omega_alpha(&end, &frame));
    let r = stareq_residuals(&end, &frame);
    println!("r1 = {}, r2 = {}", r.r1, r.r2);
    println!("{}", serde_json::to_string_pretty(&end_report(&end, &frame)?)?);

    let third: SingularEnd = "1/3".parse()?;
    let p = local_parabolic(&third)?;
    println!("weight {}, flag {:?}", p.weight, p.flag_line);
    Ok(())
}
