use std::collections::BTreeMap;
use std::path::Path;

use spinanneal::chimera::ChimeraSpec;
use spinanneal::experiment::{
    import_external_probabilities, run_experiment, ExperimentConfig, ExperimentManifest,
    CORRELATIONS_FILE, MANIFEST_FILE, RECORDS_FILE,
};
use spinanneal::stats::records_to_csv;
use spinanneal::{AnnealParamsO2, AnnealParamsO3, Error, SaSchedule, SolverKind, SuccessRecord};

fn small_config(dir: &Path, solvers: Vec<SolverKind>) -> ExperimentConfig {
    let mut c = ExperimentConfig::new(&ChimeraSpec::new(1, 1, 4), 10, 20, solvers, dir);
    c.master_seed = 3;
    c.o3 = AnnealParamsO3 {
        t_f: 20.0,
        ..Default::default()
    };
    c.o2 = AnnealParamsO2 {
        t_f: 20.0,
        ..Default::default()
    };
    c.sa = SaSchedule {
        sweeps: 50,
        ..Default::default()
    };
    c
}

/// Every regular file under `dir` with its bytes.
fn snapshot(dir: &Path) -> BTreeMap<String, Vec<u8>> {
    let mut out = BTreeMap::new();
    let mut stack = vec![dir.to_path_buf()];
    while let Some(d) = stack.pop() {
        for entry in std::fs::read_dir(&d).unwrap() {
            let p = entry.unwrap().path();
            if p.is_dir() {
                stack.push(p);
            } else {
                let key = p.strip_prefix(dir).unwrap().display().to_string();
                out.insert(key, std::fs::read(&p).unwrap());
            }
        }
    }
    out
}

#[test]
fn smoke_run_writes_consistent_manifest() {
    let tmp = tempfile::tempdir().unwrap();
    let config = small_config(tmp.path(), vec![SolverKind::O3]);
    let m = run_experiment(&config, 2).unwrap();
    assert_eq!(m.instances.len(), 10);
    assert_eq!(m.records.len(), 10);
    m.check_integrity().unwrap();
    assert!(m.instances.iter().any(|e| e.brute_force_checked));
    for name in [MANIFEST_FILE, RECORDS_FILE, CORRELATIONS_FILE, "histogram_O3.csv"] {
        assert!(tmp.path().join(name).is_file(), "{name}");
    }
    let reread = ExperimentManifest::read(&tmp.path().join(MANIFEST_FILE)).unwrap();
    assert_eq!(reread, m);
    for e in &m.instances {
        assert!(tmp.path().join(&e.path).is_file());
    }
}

#[test]
fn reruns_are_byte_identical_across_worker_counts() {
    let tmp = tempfile::tempdir().unwrap();
    let config = small_config(tmp.path(), vec![SolverKind::O3, SolverKind::SA]);
    run_experiment(&config, 1).unwrap();
    let first = snapshot(tmp.path());
    std::fs::remove_dir_all(tmp.path()).unwrap();
    run_experiment(&config, 4).unwrap();
    assert_eq!(first, snapshot(tmp.path()));
    // and a warm ground-truth cache changes nothing
    run_experiment(&config, 3).unwrap();
    assert_eq!(first, snapshot(tmp.path()));
}

#[test]
fn one_correlation_entry_per_solver_pair() {
    let tmp = tempfile::tempdir().unwrap();
    let config = small_config(tmp.path(), vec![SolverKind::O2, SolverKind::O3]);
    let m = run_experiment(&config, 2).unwrap();
    assert_eq!(m.correlations.len(), 1);
    let c = &m.correlations[0];
    assert_eq!((c.x, c.y, c.n), (SolverKind::O3, SolverKind::O2, 10));
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(tmp.path().join(CORRELATIONS_FILE)).unwrap())
            .unwrap();
    assert_eq!(json.as_array().unwrap().len(), 1);
    let scatter = std::fs::read_to_string(tmp.path().join("scatter_O3_O2.csv")).unwrap();
    assert_eq!(scatter.lines().count(), 11);
    assert_eq!(scatter.lines().next(), Some("instance_id,p_x,p_y"));
}

#[test]
fn config_file_round_trip() {
    let tmp = tempfile::tempdir().unwrap();
    let config = small_config(&tmp.path().join("out"), vec![SolverKind::SA]);
    let path = tmp.path().join("exp.toml");
    std::fs::write(&path, config.to_toml_string()).unwrap();
    assert_eq!(ExperimentConfig::from_file(&path).unwrap(), config);
}

fn external_csv(ids: &[&str]) -> String {
    let recs: Vec<SuccessRecord> = ids
        .iter()
        .enumerate()
        .map(|(k, id)| SuccessRecord::new(*id, SolverKind::External, 10, (k % 11) as u64).unwrap())
        .collect();
    records_to_csv(&recs).unwrap()
}

#[test]
fn external_probabilities_join_against_simulated_solvers() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("exp");
    let m = run_experiment(&small_config(&out, vec![SolverKind::O3]), 2).unwrap();
    let ids: Vec<&str> = m.instances.iter().map(|e| e.id.as_str()).collect();
    let csv = tmp.path().join("ext.csv");

    std::fs::write(&csv, external_csv(&ids)).unwrap();
    let merged = import_external_probabilities(&out, &csv).unwrap();
    assert_eq!(merged.records.len(), 20);
    let pair = &merged.correlations[0];
    assert_eq!((pair.x, pair.y, pair.n), (SolverKind::O3, SolverKind::External, 10));
    assert!(out.join("scatter_O3_External.csv").is_file());

    let mut bad_ids = ids.clone();
    bad_ids[4] = "nope";
    std::fs::write(&csv, external_csv(&bad_ids)).unwrap();
    let err = import_external_probabilities(&out, &csv).unwrap_err();
    assert!(matches!(&err, Error::UnknownInstance(id) if id == "nope"), "{err}");

    std::fs::write(&csv, "instance_id,solver,repetitions,successes,p_hat\n").unwrap();
    let err = import_external_probabilities(&out, &csv).unwrap_err();
    assert!(err.to_string().contains("at least 3"), "{err}");

    std::fs::write(&csv, format!("{}inst0001,External,10,x,0.1\n", external_csv(&ids[..3]))).unwrap();
    let err = import_external_probabilities(&out, &csv).unwrap_err();
    assert!(matches!(err, Error::Parse { line: 5, .. }), "{err}");
}

#[test]
fn imported_instance_files_are_used_as_given() {
    let tmp = tempfile::tempdir().unwrap();
    let first = run_experiment(&small_config(&tmp.path().join("a"), vec![SolverKind::SA]), 1).unwrap();
    let mut config = small_config(&tmp.path().join("b"), vec![SolverKind::SA]);
    config.instance_dir = Some(tmp.path().join("a/instances"));
    let second = run_experiment(&config, 1).unwrap();
    assert_eq!(first.records, second.records);
    let grounds = |m: &ExperimentManifest| m.instances.iter().map(|e| e.ground.energy).collect::<Vec<_>>();
    assert_eq!(grounds(&first), grounds(&second));
}
