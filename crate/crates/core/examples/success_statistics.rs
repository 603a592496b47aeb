//! Histograms, the bimodality test, rank correlation and Hamming distances.
use spinanneal::stats::{
    bimodality_flag, hamming_to_reference, histogram, pearson, spearman, BimodalityCriterion,
};
use spinanneal::{SolverKind, SpinConfig, SuccessRecord};

fn main() -> spinanneal::Result<()> {
    // two peaks: many hard instances, fewer easy ones
    let counts = [0, 0, 0, 1, 0, 2, 5, 40, 61, 75, 80, 85, 90, 95, 97, 98, 100, 100, 100, 100];
    let records: Vec<SuccessRecord> = counts
        .iter()
        .chain(&[0, 0, 0, 0, 3, 100, 50, 48, 52])
        .enumerate()
        .map(|(k, &s)| SuccessRecord::new(format!("i{k}"), SolverKind::O3, 100, s))
        .collect::<Result<_, _>>()?;
    let hist = histogram(&records, 20)?;
    println!("counts {:?}", hist.counts);
    let report = bimodality_flag(&hist)?;
    println!(
        "low {} mid {} high {} -> bimodal {}",
        report.low_mass, report.mid_mass, report.high_mass, report.bimodal
    );
    let strict = BimodalityCriterion {
        ratio: 4.0,
        ..Default::default()
    };
    println!("with a 4x ratio: {}", strict.evaluate(&hist)?.bimodal);

    let xs = [1.0, 2.0, 3.0, 4.0];
    let ys = [1.0, 3.0, 2.0, 4.0];
    println!("pearson {}, spearman {}", pearson(&xs, &ys)?.value, spearman(&xs, &ys)?.value);

    let g = SpinConfig::new(vec![1, 1, -1, 1, -1, -1, 1, 1])?;
    let mut near = g.clone().into_inner();
    near[2] = 1;
    println!("hamming(near, g) = {}", hamming_to_reference(&SpinConfig::new(near)?, &g)?);
    println!("hamming(-g, g) = {}", hamming_to_reference(&g.flipped(), &g)?);
    Ok(())
}
