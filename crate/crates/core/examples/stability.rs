//! Parabolic degrees and stability verdicts relative to candidate families.

use bryantlab::parabolic::{enumerate_candidates, parabolic_degree, stability_verdict, ParabolicData, SubbundleCandidate};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let data = ParabolicData::with_weights(0, &[(1, 4), (1, 3)])?;
    let c = SubbundleCandidate::new(0, vec![true, false]);
    println!("par(L) = {}", parabolic_degree(&data, &c)?);

    let half = ParabolicData::with_weights(0, &[(1, 2), (1, 2)])?;
    let report = stability_verdict(&half, &[SubbundleCandidate::new(0, vec![true, true])])?;
    println!("{}", serde_json::to_string(&report)?);

    let three = ParabolicData::with_weights(0, &[(1, 3), (1, 3), (1, 3)])?;
    let candidates = enumerate_candidates(&three, -2, -1)?;
    let report = stability_verdict(&three, &candidates)?;
    println!("{} candidates: {:?}, max par {}", candidates.len(), report.verdict, report.max_par);
    Ok(())
}
