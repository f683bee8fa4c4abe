//! Higgs fields of frames: nilpotency, the trace identity and Cousin data.

use bryantlab::connection::{cousin_data, det_higgs, ktuy_check, HiggsField};
use bryantlab::frames::{catalog, CATALOG_NAMES};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for name in CATALOG_NAMES {
        let frame = catalog(name)?;
        let theta = HiggsField::from_frame(frame.matrix())?;
        let ktuy = ktuy_check(&theta);
        let cousin = cousin_data(&theta)?;
        let [w1, w2, w3] = cousin.forms();
        println!(
            "{name:>13}: det = {}, ktuy {}, omega = ({w1}, {w2}, {w3}), sum of squares {}",
            det_higgs(&theta),
            ktuy.passes,
            cousin.sum_of_squares()
        );
    }
    Ok(())
}
