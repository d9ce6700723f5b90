use stallings_core::experiments::{run, Experiment, ExperimentSpec, Kind, SamplingMode};
use stallings_core::Error;

fn spec(e: Experiment) -> ExperimentSpec {
    let mut s = ExperimentSpec::new(e, vec![10, 20], 300, 7);
    s.k = 3;
    s.k_prime = 3;
    s
}

#[test]
fn csv_schema_and_replay() {
    let s = spec(Experiment::NoFixpoint);
    let a = run(&s).unwrap().to_csv().unwrap();
    let b = run(&s).unwrap().to_csv().unwrap();
    assert_eq!(a, b);
    let mut lines = a.lines();
    assert_eq!(
        lines.next(),
        Some("experiment,r,k,n,trials,estimate,stderr,ci_lo,ci_hi,reference,exact,master_seed")
    );
    assert_eq!(lines.count(), 2);
}

#[test]
fn thread_count_does_not_change_results() {
    for e in [Experiment::SeqCount, Experiment::GraphMalnormal, Experiment::WordRankK] {
        let s = spec(e);
        let single = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap()
            .install(|| run(&s).unwrap().to_csv().unwrap());
        let many = rayon::ThreadPoolBuilder::new()
            .num_threads(4)
            .build()
            .unwrap()
            .install(|| run(&s).unwrap().to_csv().unwrap());
        assert_eq!(single, many, "{e}");
    }
}

#[test]
fn seeds_change_results() {
    let mut s = spec(Experiment::SeqCount);
    let a = run(&s).unwrap().to_csv().unwrap();
    s.master_seed = 8;
    assert_ne!(a, run(&s).unwrap().to_csv().unwrap());
}

#[test]
fn frequencies_stay_in_range() {
    for e in Experiment::ALL {
        let report = run(&spec(e)).unwrap();
        for row in &report.rows {
            let est = &row.estimate;
            assert!(est.ci_lo <= est.estimate && est.estimate <= est.ci_hi, "{e}");
            if e.kind() == Kind::Frequency {
                assert!((0.0..=1.0).contains(&est.estimate), "{e}");
                assert!(est.ci_lo >= 0.0 && est.ci_hi <= 1.0, "{e}");
                let p = est.estimate;
                let se = (p * (1.0 - p) / row.trials as f64).sqrt();
                assert!((est.stderr - se).abs() < 1e-12, "{e}");
            }
        }
        let json: serde_json::Value = serde_json::from_str(&report.to_json()).unwrap();
        assert_eq!(json["rows"].as_array().unwrap().len(), 2);
    }
}

#[test]
fn shnc_pairs_in_both_modes() {
    for mode in [SamplingMode::Graph, SamplingMode::Word] {
        let mut s = spec(Experiment::ShncPairs);
        s.mode = mode;
        let report = run(&s).unwrap();
        assert_eq!(report.rows[0].trials, 300);
    }
}

#[test]
fn bad_specs_are_rejected() {
    let mut s = spec(Experiment::NoFixpoint);
    s.trials = 0;
    assert!(matches!(run(&s), Err(Error::InvalidParameter(_))));
    assert!(matches!(
        "nope".parse::<Experiment>(),
        Err(Error::UnknownExperiment(_))
    ));
}
