//! Transport around the model end ∇_α and recovery of α from the holonomy.

use bryantlab::connection::{parallel_transport, PathLoop, TransportControls};
use bryantlab::ends::{weight_from_holonomy, SingularEnd};
use bryantlab::Complex64;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let controls = TransportControls::default();
    let circle = PathLoop::circle(Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0));
    for alpha in ["0", "1/6", "1/4", "1/3", "1/2", "2/3", "7/10"] {
        let end: SingularEnd = alpha.parse()?;
        let u = parallel_transport(&end.as_higgs(), &circle, &controls)?;
        let err = (u - end.monodromy()).frobenius();
        let est = weight_from_holonomy(&u, 1e-8)?;
        let recovered = est.rational.map(|r| r.to_string()).unwrap_or_else(|| format!("{:.12}", est.alpha));
        println!("alpha {alpha:>4}: |U - diag(e^(2 pi i a), e^(-2 pi i a))| = {err:.2e}, recovered {recovered}");
    }
    Ok(())
}
