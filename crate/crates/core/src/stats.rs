//! Success probabilities and the statistics built on them: histograms, a
//! bimodality test, Pearson/Spearman correlations and Hamming distances.

use std::collections::BTreeMap;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::GroundTruth;
use crate::instance::{energy, Instance, SpinConfig};
use crate::rng;
use crate::solver::{Solver, SolverKind};

/// Outcome of `repetitions` independent runs of one solver on one instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuccessRecord {
    pub instance_id: String,
    pub solver: SolverKind,
    pub repetitions: u64,
    pub successes: u64,
    pub p_hat: f64,
}

impl SuccessRecord {
    pub fn new(
        instance_id: impl Into<String>,
        solver: SolverKind,
        repetitions: u64,
        successes: u64,
    ) -> Result<Self> {
        if repetitions == 0 || successes > repetitions {
            return Err(Error::Stats(format!(
                "need 0 <= successes <= repetitions and repetitions >= 1 (got {successes}/{repetitions})"
            )));
        }
        Ok(SuccessRecord {
            instance_id: instance_id.into(),
            solver,
            repetitions,
            successes,
            p_hat: successes as f64 / repetitions as f64,
        })
    }
}

/// Check that `ground` is a valid ground-truth entry for `instance`.
pub fn check_ground(instance: &Instance, ground: &GroundTruth) -> Result<()> {
    match energy(instance, &ground.witness) {
        Ok(e) if e == ground.energy => Ok(()),
        _ => Err(Error::GroundMismatch(instance.id.clone())),
    }
}

/// Run `solver` `repetitions` times and count runs reaching the ground-state energy.
///
/// Run `k` uses the seed derived from `(master_seed, instance.id, k)`, so the count
/// does not depend on how the runs are scheduled across threads.
pub fn success_probability(
    solver: &dyn Solver,
    instance: &Instance,
    ground: &GroundTruth,
    repetitions: u64,
    master_seed: u64,
) -> Result<SuccessRecord> {
    if repetitions == 0 {
        return Err(Error::param("repetitions", "must be >= 1"));
    }
    check_ground(instance, ground)?;
    let hits = (0..repetitions)
        .into_par_iter()
        .map(|rep| {
            let seed = rng::run_seed(master_seed, &instance.id, rep);
            let config = solver.solve(instance, seed)?;
            Ok(energy(instance, &config)? == ground.energy)
        })
        .collect::<Result<Vec<bool>>>()?;
    let successes = hits.iter().filter(|&&h| h).count() as u64;
    SuccessRecord::new(instance.id.clone(), solver.kind(), repetitions, successes)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Histogram {
    pub bin_edges: Vec<f64>,
    pub counts: Vec<u64>,
}

impl Histogram {
    pub fn bins(&self) -> usize {
        self.counts.len()
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    fn empty(bins: usize) -> Result<Self> {
        if bins < 2 {
            return Err(Error::param("bins", format!("must be >= 2, got {bins}")));
        }
        Ok(Histogram {
            bin_edges: (0..=bins).map(|k| k as f64 / bins as f64).collect(),
            counts: vec![0; bins],
        })
    }
}

/// Uniform bins on `[0, 1]`, left-closed, with `1.0` in the last bin.
///
/// Bin indices are computed from the integer counts, so records whose `p_hat`
/// sits exactly on an edge are never misplaced by rounding.
pub fn histogram(records: &[SuccessRecord], bins: usize) -> Result<Histogram> {
    if records.is_empty() {
        return Err(Error::Stats("histogram of an empty record list".into()));
    }
    let mut hist = Histogram::empty(bins)?;
    for r in records {
        let k = (r.successes as u128 * bins as u128 / r.repetitions as u128) as usize;
        hist.counts[k.min(bins - 1)] += 1;
    }
    Ok(hist)
}

/// Histogram of raw values in `[0, 1]` (same binning rule as [`histogram`]).
pub fn histogram_values(values: &[f64], bins: usize) -> Result<Histogram> {
    if values.is_empty() {
        return Err(Error::Stats("histogram of an empty value list".into()));
    }
    let mut hist = Histogram::empty(bins)?;
    for &v in values {
        if !(0.0..=1.0).contains(&v) {
            return Err(Error::Stats(format!("value {v} outside [0, 1]")));
        }
        let k = (v * bins as f64 + 1e-9).floor() as usize;
        hist.counts[k.min(bins - 1)] += 1;
    }
    Ok(hist)
}

/// End-versus-middle mass test for a two-peaked success histogram.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct BimodalityCriterion {
    /// low ("hard") region is `p < low_max`
    pub low_max: f64,
    /// middle region is `[mid_lo, mid_hi)`
    pub mid_lo: f64,
    pub mid_hi: f64,
    /// high ("easy") region is `p >= high_min`
    pub high_min: f64,
    /// each end must hold at least `ratio` times the middle mass
    pub ratio: f64,
}

impl Default for BimodalityCriterion {
    fn default() -> Self {
        BimodalityCriterion {
            low_max: 0.1,
            mid_lo: 0.45,
            mid_hi: 0.55,
            high_min: 0.9,
            ratio: 2.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BimodalityReport {
    pub bimodal: bool,
    pub low_mass: u64,
    pub mid_mass: u64,
    pub high_mass: u64,
}

impl BimodalityCriterion {
    /// Region masses are sums of whole bins, so every threshold must sit on a bin edge.
    pub fn evaluate(&self, hist: &Histogram) -> Result<BimodalityReport> {
        let edge = |x: f64| -> Result<usize> {
            let k = (x * hist.bins() as f64).round();
            if (k / hist.bins() as f64 - x).abs() > 1e-9 {
                return Err(Error::Stats(format!(
                    "threshold {x} is not a bin edge of a {}-bin histogram",
                    hist.bins()
                )));
            }
            Ok(k as usize)
        };
        let sum = |a: usize, b: usize| hist.counts[a..b].iter().sum::<u64>();
        let low_mass = sum(0, edge(self.low_max)?);
        let mid_mass = sum(edge(self.mid_lo)?, edge(self.mid_hi)?);
        let high_mass = sum(edge(self.high_min)?, hist.bins());
        let ratio_ok = |end: u64| end as f64 >= self.ratio * mid_mass as f64;
        Ok(BimodalityReport {
            bimodal: low_mass > 0 && high_mass > 0 && ratio_ok(low_mass) && ratio_ok(high_mass),
            low_mass,
            mid_mass,
            high_mass,
        })
    }
}

/// Default bimodality test on a 20-bin histogram.
pub fn bimodality_flag(hist: &Histogram) -> Result<BimodalityReport> {
    if hist.bins() != 20 {
        return Err(Error::Stats(format!(
            "bimodality test expects 20 bins, got {}",
            hist.bins()
        )));
    }
    BimodalityCriterion::default().evaluate(hist)
}

/// A correlation coefficient; `degenerate` marks a constant input (value set to 0).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Coefficient {
    pub value: f64,
    pub degenerate: bool,
}

fn check_pair(xs: &[f64], ys: &[f64]) -> Result<()> {
    if xs.len() != ys.len() {
        return Err(Error::LengthMismatch {
            expected: xs.len(),
            got: ys.len(),
        });
    }
    if xs.len() < 3 {
        return Err(Error::Stats(format!(
            "correlation needs at least 3 samples, got {}",
            xs.len()
        )));
    }
    Ok(())
}

/// Sample Pearson correlation.
pub fn pearson(xs: &[f64], ys: &[f64]) -> Result<Coefficient> {
    check_pair(xs, ys)?;
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (x, y) in xs.iter().zip(ys) {
        let (dx, dy) = (x - mx, y - my);
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx == 0.0 || syy == 0.0 {
        return Ok(Coefficient {
            value: 0.0,
            degenerate: true,
        });
    }
    Ok(Coefficient {
        value: (sxy / (sxx.sqrt() * syy.sqrt())).clamp(-1.0, 1.0),
        degenerate: false,
    })
}

/// 1-based ranks with ties replaced by their average rank.
pub fn mid_ranks(xs: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..xs.len()).collect();
    order.sort_by(|&a, &b| xs[a].total_cmp(&xs[b]));
    let mut ranks = vec![0.0; xs.len()];
    let mut i = 0;
    while i < order.len() {
        let mut j = i;
        while j + 1 < order.len() && xs[order[j + 1]] == xs[order[i]] {
            j += 1;
        }
        let avg = (i + j) as f64 / 2.0 + 1.0;
        for &k in &order[i..=j] {
            ranks[k] = avg;
        }
        i = j + 1;
    }
    ranks
}

/// Spearman rank correlation: Pearson on mid-ranks.
pub fn spearman(xs: &[f64], ys: &[f64]) -> Result<Coefficient> {
    check_pair(xs, ys)?;
    pearson(&mid_ranks(xs), &mid_ranks(ys))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScatterPoint {
    pub instance_id: String,
    pub p_x: f64,
    pub p_y: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorrelationResult {
    pub x: SolverKind,
    pub y: SolverKind,
    pub pearson_r: f64,
    pub spearman_rho: f64,
    /// true when either input is constant
    pub degenerate: bool,
    pub n: usize,
    pub pairs: Vec<ScatterPoint>,
}

/// Correlate two record sets on their common instance ids (ordered by id).
pub fn correlate(xs: &[SuccessRecord], ys: &[SuccessRecord]) -> Result<CorrelationResult> {
    let kind = |rs: &[SuccessRecord]| rs.first().map(|r| r.solver);
    let (Some(kx), Some(ky)) = (kind(xs), kind(ys)) else {
        return Err(Error::Stats("correlation needs at least 3 samples, got 0".into()));
    };
    let by_id: BTreeMap<&str, f64> = ys.iter().map(|r| (r.instance_id.as_str(), r.p_hat)).collect();
    let mut pairs: Vec<ScatterPoint> = xs
        .iter()
        .filter_map(|r| {
            by_id.get(r.instance_id.as_str()).map(|&p_y| ScatterPoint {
                instance_id: r.instance_id.clone(),
                p_x: r.p_hat,
                p_y,
            })
        })
        .collect();
    pairs.sort_by(|a, b| a.instance_id.cmp(&b.instance_id));
    let px: Vec<f64> = pairs.iter().map(|p| p.p_x).collect();
    let py: Vec<f64> = pairs.iter().map(|p| p.p_y).collect();
    let r = pearson(&px, &py)?;
    let rho = spearman(&px, &py)?;
    Ok(CorrelationResult {
        x: kx,
        y: ky,
        pearson_r: r.value,
        spearman_rho: rho.value,
        degenerate: r.degenerate || rho.degenerate,
        n: pairs.len(),
        pairs,
    })
}

/// Hamming distance modulo the global spin flip: `min(d, N - d)`.
pub fn hamming_to_reference(config: &SpinConfig, reference: &SpinConfig) -> Result<usize> {
    let d = raw_hamming(config, reference)?;
    Ok(d.min(config.len() - d))
}

/// Number of disagreeing spins, without the flip quotient.
pub fn raw_hamming(config: &SpinConfig, reference: &SpinConfig) -> Result<usize> {
    if config.len() != reference.len() {
        return Err(Error::LengthMismatch {
            expected: reference.len(),
            got: config.len(),
        });
    }
    Ok(config
        .as_slice()
        .iter()
        .zip(reference.as_slice())
        .filter(|(a, b)| a != b)
        .count())
}

// CSV ------------------------------------------------------------------------

#[derive(Debug, Serialize, Deserialize)]
struct RecordRow {
    instance_id: String,
    solver: String,
    repetitions: u64,
    successes: u64,
    p_hat: f64,
}

pub fn records_to_csv(records: &[SuccessRecord]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in records {
        w.serialize(RecordRow {
            instance_id: r.instance_id.clone(),
            solver: r.solver.name().to_string(),
            repetitions: r.repetitions,
            successes: r.successes,
            p_hat: r.p_hat,
        })?;
    }
    finish_csv(w)
}

/// Parse the success-record CSV. Row errors carry their line number.
pub fn records_from_csv(text: &str, origin: &str) -> Result<Vec<SuccessRecord>> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let parse_err = |line: usize, reason: String| Error::Parse {
        path: origin.to_string(),
        line,
        reason,
    };
    let headers = reader.headers().map_err(|e| parse_err(1, e.to_string()))?.clone();
    let mut out = Vec::new();
    for raw in reader.records() {
        let raw = raw.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line() as usize);
            parse_err(line, e.to_string())
        })?;
        let line = raw.position().map_or(0, |p| p.line() as usize);
        let row: RecordRow = raw
            .deserialize(Some(&headers))
            .map_err(|e| parse_err(line, e.to_string()))?;
        let solver = row
            .solver
            .parse::<SolverKind>()
            .map_err(|e| parse_err(line, e))?;
        let rec = SuccessRecord::new(row.instance_id, solver, row.repetitions, row.successes)
            .map_err(|e| parse_err(line, e.to_string()))?;
        if (rec.p_hat - row.p_hat).abs() > 1e-9 {
            return Err(parse_err(
                line,
                format!("p_hat {} != successes/repetitions {}", row.p_hat, rec.p_hat),
            ));
        }
        out.push(rec);
    }
    Ok(out)
}

pub fn read_records(path: &Path) -> Result<Vec<SuccessRecord>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    records_from_csv(&text, &path.display().to_string())
}

fn finish_csv(w: csv::Writer<Vec<u8>>) -> Result<String> {
    let bytes = w.into_inner().map_err(|e| Error::Stats(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn histogram_to_csv(hist: &Histogram) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["bin_lo", "bin_hi", "count"])?;
    for (k, c) in hist.counts.iter().enumerate() {
        w.write_record(&[
            hist.bin_edges[k].to_string(),
            hist.bin_edges[k + 1].to_string(),
            c.to_string(),
        ])?;
    }
    finish_csv(w)
}

pub fn scatter_to_csv(result: &CorrelationResult) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["instance_id", "p_x", "p_y"])?;
    for p in &result.pairs {
        w.write_record(&[p.instance_id.clone(), p.p_x.to_string(), p.p_y.to_string()])?;
    }
    finish_csv(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chimera::{build_chimera, ChimeraSpec};
    use crate::exact::brute_force_ground;
    use crate::instance::Instance;
    use proptest::prelude::*;

    fn rec(id: &str, s: u64, r: u64) -> SuccessRecord {
        SuccessRecord::new(id, SolverKind::O3, r, s).unwrap()
    }

    #[test]
    fn histogram_edge_rule() {
        let rs = [rec("a", 0, 2), rec("b", 1, 2), rec("c", 2, 2)];
        assert_eq!(histogram(&rs, 2).unwrap().counts, vec![1, 2]);
        let zeros: Vec<_> = (0..7).map(|i| rec(&i.to_string(), 0, 10)).collect();
        assert_eq!(histogram(&zeros, 20).unwrap().counts[0], 7);
        assert!(histogram(&[], 20).is_err());
        assert!(histogram(&rs, 1).is_err());
    }

    #[test]
    fn histogram_values_matches_integer_rule() {
        let rs: Vec<_> = (0..=100).map(|s| rec("x", s, 100)).collect();
        let ps: Vec<f64> = rs.iter().map(|r| r.p_hat).collect();
        assert_eq!(histogram(&rs, 20).unwrap(), histogram_values(&ps, 20).unwrap());
    }

    fn hist20(counts: [u64; 20]) -> Histogram {
        let mut h = Histogram::empty(20).unwrap();
        h.counts = counts.to_vec();
        h
    }

    #[test]
    fn bimodality_cases() {
        let mut ends = [0u64; 20];
        ends[0] = 40;
        ends[19] = 30;
        ends[10] = 5;
        assert!(bimodality_flag(&hist20(ends)).unwrap().bimodal);
        assert!(!bimodality_flag(&hist20([5; 20])).unwrap().bimodal);
        let mut central = [0u64; 20];
        for (k, c) in central.iter_mut().enumerate() {
            *c = 50u64.saturating_sub(5 * (k as i64 - 10).unsigned_abs());
        }
        assert!(!bimodality_flag(&hist20(central)).unwrap().bimodal);
        let mut one_sided = [0u64; 20];
        one_sided[0] = 100;
        assert!(!bimodality_flag(&hist20(one_sided)).unwrap().bimodal);
        assert!(bimodality_flag(&Histogram::empty(10).unwrap()).is_err());
    }

    #[test]
    fn bimodality_masses() {
        let mut c = [0u64; 20];
        c[1] = 3;
        c[2] = 100;
        c[9] = 1;
        c[10] = 1;
        c[11] = 50;
        c[18] = 4;
        let rep = bimodality_flag(&hist20(c)).unwrap();
        assert_eq!((rep.low_mass, rep.mid_mass, rep.high_mass), (3, 2, 4));
        assert!(!rep.bimodal);
    }

    #[test]
    fn correlation_hand_values() {
        let r = pearson(&[1.0, 2.0, 3.0], &[1.0, 2.0, 3.0]).unwrap();
        assert!((r.value - 1.0).abs() < 1e-12);
        let r = spearman(&[1.0, 2.0, 3.0], &[3.0, 2.0, 1.0]).unwrap();
        assert!((r.value + 1.0).abs() < 1e-12);
        let rho = spearman(&[1.0, 2.0, 3.0, 4.0], &[1.0, 3.0, 2.0, 4.0]).unwrap();
        assert!((rho.value - 0.8).abs() < 1e-12);
    }

    #[test]
    fn correlation_errors_and_degeneracy() {
        assert!(pearson(&[1.0, 2.0], &[1.0, 2.0]).is_err());
        assert!(pearson(&[1.0, 2.0, 3.0], &[1.0, 2.0]).is_err());
        let c = pearson(&[1.0, 1.0, 1.0], &[1.0, 2.0, 3.0]).unwrap();
        assert!(c.degenerate && c.value == 0.0);
    }

    #[test]
    fn mid_rank_ties() {
        assert_eq!(mid_ranks(&[3.0, 1.0, 3.0, 2.0]), vec![3.5, 1.0, 3.5, 2.0]);
    }

    #[test]
    fn hamming_quotient() {
        let a = SpinConfig::new(vec![1, -1, 1, 1, -1, 1, 1, 1]).unwrap();
        assert_eq!(hamming_to_reference(&a, &a).unwrap(), 0);
        assert_eq!(hamming_to_reference(&a.flipped(), &a).unwrap(), 0);
        let mut b = a.clone().into_inner();
        b[3] = -1;
        assert_eq!(hamming_to_reference(&SpinConfig::new(b).unwrap(), &a).unwrap(), 1);
        assert!(hamming_to_reference(&a, &SpinConfig::all_up(3)).is_err());
    }

    struct Fixed(SpinConfig);
    impl Solver for Fixed {
        fn kind(&self) -> SolverKind {
            SolverKind::External
        }
        fn solve(&self, _: &Instance, _: u64) -> Result<SpinConfig> {
            Ok(self.0.clone())
        }
    }

    #[test]
    fn success_is_energy_based() {
        let spec = ChimeraSpec::new(1, 1, 4);
        let inst = crate::instance::gen_instance(&build_chimera(&spec).unwrap(), 3);
        let gt = brute_force_ground(&inst).unwrap();
        let same = success_probability(&Fixed(gt.witness.clone()), &inst, &gt, 20, 0).unwrap();
        assert_eq!(same.p_hat, 1.0);
        let flipped = success_probability(&Fixed(gt.witness.flipped()), &inst, &gt, 20, 0).unwrap();
        assert_eq!(flipped.p_hat, 1.0);
        let bad = GroundTruth {
            energy: gt.energy - 2,
            ..gt.clone()
        };
        assert!(matches!(
            success_probability(&Fixed(gt.witness.clone()), &inst, &bad, 5, 0),
            Err(Error::GroundMismatch(_))
        ));
    }

    #[test]
    fn record_csv_round_trip_and_errors() {
        let rs = vec![rec("a", 3, 10), rec("b", 10, 10)];
        let text = records_to_csv(&rs).unwrap();
        assert!(text.starts_with("instance_id,solver,repetitions,successes,p_hat\n"));
        assert_eq!(records_from_csv(&text, "m").unwrap(), rs);
        let broken = "instance_id,solver,repetitions,successes,p_hat\na,O3,10,3,0.3\nb,O3,10,12,1.2\n";
        let err = records_from_csv(broken, "m").unwrap_err().to_string();
        assert!(err.starts_with("m:3"), "{err}");
        let garbage = "instance_id,solver,repetitions,successes,p_hat\na,O3,ten,3,0.3\n";
        assert!(records_from_csv(garbage, "m").unwrap_err().to_string().starts_with("m:2"));
    }

    proptest! {
        #[test]
        fn spearman_monotone_invariance(xs in prop::collection::vec(-10.0f64..10.0, 5..40),
                                        seed in 0u64..1000) {
            let ys: Vec<f64> = xs.iter().enumerate()
                .map(|(i, x)| x.sin() + ((i as u64 * 7919 + seed) % 13) as f64 * 0.1)
                .collect();
            let base = spearman(&xs, &ys).unwrap().value;
            let tx: Vec<f64> = xs.iter().map(|x| x.powi(3) + 2.0 * x).collect();
            let ty: Vec<f64> = ys.iter().map(|y| (y * 0.5).exp()).collect();
            prop_assert!((spearman(&tx, &ty).unwrap().value - base).abs() <= 1e-12);
        }

        #[test]
        fn pearson_affine_invariance(xs in prop::collection::vec(-10.0f64..10.0, 5..40),
                                     a in 0.1f64..10.0, b in -5.0f64..5.0) {
            let ys: Vec<f64> = xs.iter().enumerate().map(|(i, x)| x * x - i as f64).collect();
            let base = pearson(&xs, &ys).unwrap();
            prop_assume!(!base.degenerate);
            let tx: Vec<f64> = xs.iter().map(|x| a * x + b).collect();
            prop_assert!((pearson(&tx, &ys).unwrap().value - base.value).abs() <= 1e-12);
        }

        #[test]
        fn histogram_conserves_count(succ in prop::collection::vec((0u64..=50, 1u64..=50), 1..200),
                                     bins in 2usize..40) {
            let rs: Vec<_> = succ.iter().map(|&(s, r)| rec("x", s.min(r), r)).collect();
            prop_assert_eq!(histogram(&rs, bins).unwrap().total(), rs.len() as u64);
        }
    }
}
