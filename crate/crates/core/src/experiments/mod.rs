//! Reproducible Monte Carlo experiments on random partial injections and
//! random subgroups, with exact columns where the counting tables give one.

pub mod exact;
mod report;
mod stats;

pub use exact::{exact_ratio_table, ExactRatio, RatioRow};
pub use report::{Conditional, ExperimentReport, ReportRow};
pub use stats::{frequency, mean, Estimate, Tally, Z95};

use std::f64::consts::E;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_bigint::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::partial_injections::{
    gcd_not_one_table, uniform_partial_injection, uniform_permutation, CountCache,
};
use crate::properties::{
    avoids_generator_conjugates, hnc_report, intersection, is_malnormal,
    normal_closure_trivial_sufficient, purity_status, ClosureVerdict, DEFAULT_D_MAX,
};
use crate::samplers::{
    in_y, sample_graph_subgroup, GenericityParams, WordTuple, WordTupleSampler,
    DEFAULT_MAX_ATTEMPTS,
};
use crate::stallings::StallingsGraph;
use crate::words::Alphabet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Experiment {
    NoBigCycle,
    NoFixpoint,
    AvoidGenerators,
    SeqCount,
    RankMean,
    PermGcd,
    InjGcdTrivial,
    TrivialPresentation,
    GraphMalnormal,
    GraphPure,
    WordRankK,
    WordMalnormal,
    WordFreeProduct,
    ShncPairs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Frequency,
    Mean,
}

impl Experiment {
    pub const ALL: [Experiment; 14] = [
        Experiment::NoBigCycle,
        Experiment::NoFixpoint,
        Experiment::AvoidGenerators,
        Experiment::SeqCount,
        Experiment::RankMean,
        Experiment::PermGcd,
        Experiment::InjGcdTrivial,
        Experiment::TrivialPresentation,
        Experiment::GraphMalnormal,
        Experiment::GraphPure,
        Experiment::WordRankK,
        Experiment::WordMalnormal,
        Experiment::WordFreeProduct,
        Experiment::ShncPairs,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Experiment::NoBigCycle => "no_big_cycle",
            Experiment::NoFixpoint => "no_fixpoint",
            Experiment::AvoidGenerators => "avoid_generators",
            Experiment::SeqCount => "seq_count",
            Experiment::RankMean => "rank_mean",
            Experiment::PermGcd => "perm_gcd",
            Experiment::InjGcdTrivial => "inj_gcd_trivial",
            Experiment::TrivialPresentation => "trivial_presentation",
            Experiment::GraphMalnormal => "graph_malnormal",
            Experiment::GraphPure => "graph_pure",
            Experiment::WordRankK => "word_rank_k",
            Experiment::WordMalnormal => "word_malnormal",
            Experiment::WordFreeProduct => "word_free_product",
            Experiment::ShncPairs => "shnc_pairs",
        }
    }

    pub fn kind(self) -> Kind {
        match self {
            Experiment::SeqCount | Experiment::RankMean => Kind::Mean,
            _ => Kind::Frequency,
        }
    }

    fn uses_words(self, mode: SamplingMode) -> bool {
        matches!(
            self,
            Experiment::WordRankK | Experiment::WordMalnormal | Experiment::WordFreeProduct
        ) || (self == Experiment::ShncPairs && mode == SamplingMode::Word)
    }

    fn uses_graphs(self, mode: SamplingMode) -> bool {
        matches!(
            self,
            Experiment::AvoidGenerators
                | Experiment::RankMean
                | Experiment::TrivialPresentation
                | Experiment::GraphMalnormal
                | Experiment::GraphPure
        ) || (self == Experiment::ShncPairs && mode == SamplingMode::Graph)
    }

    fn uses_injections(self, mode: SamplingMode) -> bool {
        self.uses_graphs(mode)
            || matches!(
                self,
                Experiment::NoBigCycle
                    | Experiment::NoFixpoint
                    | Experiment::SeqCount
                    | Experiment::InjGcdTrivial
            )
    }

    /// Limit law or bound the estimate is compared with.
    pub fn reference(self, r: usize, n: usize) -> Option<f64> {
        let nf = n as f64;
        match self {
            Experiment::NoBigCycle => Some(E / nf.sqrt()),
            Experiment::NoFixpoint => Some(1.0 / E),
            Experiment::AvoidGenerators => Some((-(r as f64)).exp()),
            Experiment::SeqCount => Some(nf.sqrt()),
            Experiment::RankMean => {
                let r = r as f64;
                Some((r - 1.0) * nf - r * nf.sqrt() + 1.0)
            }
            Experiment::PermGcd => Some(perm_gcd_bound(n)),
            _ => None,
        }
    }
}

/// `2/√n + 2·n^{−2/3}·log₃ n`.
pub fn perm_gcd_bound(n: usize) -> f64 {
    let nf = n as f64;
    2.0 / nf.sqrt() + 2.0 * nf.powf(-2.0 / 3.0) * nf.ln() / 3f64.ln()
}

impl fmt::Display for Experiment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Experiment {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Experiment::ALL
            .into_iter()
            .find(|e| e.name() == s)
            .ok_or_else(|| Error::UnknownExperiment(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SamplingMode {
    Graph,
    Word,
}

impl FromStr for SamplingMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "graph" => Ok(SamplingMode::Graph),
            "word" => Ok(SamplingMode::Word),
            other => Err(Error::InvalidParameter(format!(
                "unknown mode '{other}', expected graph or word"
            ))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct ExperimentSpec {
    pub experiment: Experiment,
    pub r: usize,
    pub k: usize,
    /// Size of the second tuple in pair experiments.
    pub k_prime: usize,
    pub n_values: Vec<usize>,
    pub trials: u64,
    pub master_seed: u64,
    pub params: GenericityParams,
    pub d_max: usize,
    /// Distribution of `shnc_pairs`.
    pub mode: SamplingMode,
    pub max_attempts: usize,
}

impl ExperimentSpec {
    pub fn new(experiment: Experiment, n_values: Vec<usize>, trials: u64, master_seed: u64) -> Self {
        ExperimentSpec {
            experiment,
            r: 2,
            k: 5,
            k_prime: 5,
            n_values,
            trials,
            master_seed,
            params: GenericityParams::default(),
            d_max: DEFAULT_D_MAX,
            mode: SamplingMode::Graph,
            max_attempts: DEFAULT_MAX_ATTEMPTS,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::InvalidParameter("trials must be at least 1".into()));
        }
        if self.n_values.is_empty() {
            return Err(Error::InvalidParameter("no value of n given".into()));
        }
        if self.k == 0 || self.k_prime == 0 {
            return Err(Error::InvalidParameter("k must be at least 1".into()));
        }
        if self.d_max < 2 {
            return Err(Error::InvalidParameter("d_max must be at least 2".into()));
        }
        Alphabet::new(self.r)?.require_sampling()?;
        GenericityParams::new(self.params.alpha, self.params.lambda, self.params.beta)?;
        let needs_positive = self.experiment.uses_graphs(self.mode) || self.experiment == Experiment::PermGcd;
        if needs_positive && self.n_values.contains(&0) {
            return Err(Error::InvalidParameter(format!(
                "{} needs n >= 1",
                self.experiment
            )));
        }
        Ok(())
    }
}

/// 32-byte seed for trial `trial` of `name` at size `n`.
pub fn derive_seed(master_seed: u64, name: &str, n: usize, trial: u64) -> [u8; 32] {
    let mut h = Sha256::new();
    h.update(master_seed.to_le_bytes());
    h.update(format!("{name}:{n}").as_bytes());
    h.update(trial.to_le_bytes());
    h.finalize().into()
}

pub fn trial_rng(master_seed: u64, name: &str, n: usize, trial: u64) -> ChaCha8Rng {
    ChaCha8Rng::from_seed(derive_seed(master_seed, name, n, trial))
}

struct Outcome {
    value: i64,
    in_y: Option<bool>,
}

impl Outcome {
    fn flag(b: bool) -> Self {
        Outcome {
            value: b as i64,
            in_y: None,
        }
    }
}

struct Context<'a> {
    spec: &'a ExperimentSpec,
    alphabet: Alphabet,
    n: usize,
    cache: Option<&'a CountCache>,
    first: Option<WordTupleSampler>,
    second: Option<WordTupleSampler>,
}

impl Context<'_> {
    fn cache(&self) -> &CountCache {
        self.cache.expect("count tables built for this experiment")
    }

    fn graph(&self, rng: &mut ChaCha8Rng) -> Result<StallingsGraph> {
        sample_graph_subgroup(self.alphabet, self.n, self.cache(), rng, self.spec.max_attempts)
    }

    fn tuples(&self, rng: &mut ChaCha8Rng) -> (WordTuple, WordTuple) {
        let first = self.first.as_ref().expect("word sampler").sample(rng);
        let second = self.second.as_ref().expect("word sampler").sample(rng);
        (first, second)
    }

    fn trial(&self, rng: &mut ChaCha8Rng) -> Result<Outcome> {
        let n = self.n;
        let p = &self.spec.params;
        Ok(match self.spec.experiment {
            Experiment::NoBigCycle => {
                let f = uniform_partial_injection(n, self.cache(), rng)?;
                Outcome::flag(f.statistics().max_cycle_length <= 1)
            }
            Experiment::NoFixpoint => {
                let f = uniform_partial_injection(n, self.cache(), rng)?;
                Outcome::flag(!f.statistics().has_fixpoint)
            }
            Experiment::SeqCount => {
                let f = uniform_partial_injection(n, self.cache(), rng)?;
                Outcome {
                    value: f.statistics().num_sequences as i64,
                    in_y: None,
                }
            }
            Experiment::InjGcdTrivial => {
                let f = uniform_partial_injection(n, self.cache(), rng)?;
                Outcome::flag(f.cycle_length_gcd() == Some(1))
            }
            Experiment::PermGcd => {
                let f = uniform_permutation(n, rng);
                Outcome::flag(f.cycle_length_gcd().is_some_and(|d| d > 1))
            }
            Experiment::AvoidGenerators => {
                Outcome::flag(avoids_generator_conjugates(&self.graph(rng)?))
            }
            Experiment::RankMean => Outcome {
                value: self.graph(rng)?.rank() as i64,
                in_y: None,
            },
            Experiment::TrivialPresentation => {
                let report = normal_closure_trivial_sufficient(&self.graph(rng)?);
                Outcome::flag(report.verdict == ClosureVerdict::ProvablyTrivial)
            }
            Experiment::GraphMalnormal => Outcome::flag(is_malnormal(&self.graph(rng)?).malnormal),
            Experiment::GraphPure => {
                let verdict = purity_status(&self.graph(rng)?, self.spec.d_max)?;
                Outcome::flag(!verdict.is_non_pure())
            }
            Experiment::WordRankK => {
                let t = self.first.as_ref().expect("word sampler").sample(rng);
                Outcome {
                    value: (t.fold().rank() == t.k()) as i64,
                    in_y: Some(in_y(&t, p)),
                }
            }
            Experiment::WordMalnormal => {
                let t = self.first.as_ref().expect("word sampler").sample(rng);
                Outcome {
                    value: is_malnormal(&t.fold()).malnormal as i64,
                    in_y: Some(in_y(&t, p)),
                }
            }
            Experiment::WordFreeProduct => {
                let (h, k) = self.tuples(rng);
                let both = joined(&h, &k);
                let trivial_meet = intersection(&h.fold(), &k.fold())?.rank() == 0;
                let free = both.fold().rank() == both.k();
                Outcome {
                    value: (trivial_meet && free) as i64,
                    in_y: Some(in_y(&both, p)),
                }
            }
            Experiment::ShncPairs => {
                let (g1, g2, y) = match self.spec.mode {
                    SamplingMode::Graph => (self.graph(rng)?, self.graph(rng)?, None),
                    SamplingMode::Word => {
                        let (h, k) = self.tuples(rng);
                        let y = in_y(&joined(&h, &k), p);
                        (h.fold(), k.fold(), Some(y))
                    }
                };
                let report = hnc_report(&g1, &g2)?;
                if !report.hnc_ok || !report.shnc_ok {
                    return Err(Error::InequalityViolated(format!(
                        "{report:?} for {} and {}",
                        g1.to_json(),
                        g2.to_json()
                    )));
                }
                Outcome {
                    value: (report.chi_delta2 == 0) as i64,
                    in_y: y,
                }
            }
        })
    }
}

fn joined(h: &WordTuple, k: &WordTuple) -> WordTuple {
    let mut words = h.words.clone();
    words.extend(k.words.iter().cloned());
    WordTuple {
        alphabet: h.alphabet,
        n: h.n,
        words,
    }
}

/// Runs every `n` of the spec.
pub fn run(spec: &ExperimentSpec) -> Result<ExperimentReport> {
    spec.validate()?;
    let max_n = *spec.n_values.iter().max().expect("validated non-empty");
    let cache = spec
        .experiment
        .uses_injections(spec.mode)
        .then(|| CountCache::new(max_n));
    let exact = ExactColumns::new(spec.experiment, max_n, cache.as_ref());
    let rows = spec
        .n_values
        .iter()
        .map(|&n| run_row(spec, n, cache.as_ref(), &exact))
        .collect::<Result<Vec<_>>>()?;
    Ok(ExperimentReport { rows })
}

/// Tables behind the exact column.
struct ExactColumns<'a> {
    experiment: Experiment,
    cache: Option<&'a CountCache>,
    gcd_not_one: Vec<BigUint>,
}

impl<'a> ExactColumns<'a> {
    fn new(experiment: Experiment, max_n: usize, cache: Option<&'a CountCache>) -> Self {
        let gcd_not_one = match experiment {
            Experiment::PermGcd | Experiment::InjGcdTrivial => gcd_not_one_table(max_n),
            _ => Vec::new(),
        };
        ExactColumns {
            experiment,
            cache,
            gcd_not_one,
        }
    }

    fn get(&self, n: usize) -> Option<ExactRatio> {
        let cache = self.cache;
        match self.experiment {
            Experiment::NoBigCycle => {
                let c = cache?;
                Some(ExactRatio::new(c.k(n).clone(), c.i(n).clone()))
            }
            Experiment::NoFixpoint => {
                let c = cache?;
                Some(ExactRatio::new(c.l(n).clone(), c.i(n).clone()))
            }
            Experiment::SeqCount => Some(exact::expected_sequences(n, cache?)),
            Experiment::InjGcdTrivial => Some(exact::coprime_cycles(n, cache?, &self.gcd_not_one)),
            Experiment::PermGcd => Some(exact::perm_gcd(n, &self.gcd_not_one)),
            _ => None,
        }
    }
}

fn run_row(
    spec: &ExperimentSpec,
    n: usize,
    cache: Option<&CountCache>,
    exact: &ExactColumns<'_>,
) -> Result<ReportRow> {
    let start = Instant::now();
    let alphabet = Alphabet::new(spec.r)?;
    let words = spec.experiment.uses_words(spec.mode);
    let ctx = Context {
        spec,
        alphabet,
        n,
        cache,
        first: words
            .then(|| WordTupleSampler::new(alphabet, spec.k, n))
            .transpose()?,
        second: words
            .then(|| WordTupleSampler::new(alphabet, spec.k_prime, n))
            .transpose()?,
    };
    let name = spec.experiment.name();
    let (all, conditional) = (0..spec.trials)
        .into_par_iter()
        .map(|i| {
            let mut rng = trial_rng(spec.master_seed, name, n, i);
            let outcome = ctx.trial(&mut rng).map_err(|e| Error::Trial {
                experiment: name.to_string(),
                n,
                trial: i,
                source: Box::new(e),
            })?;
            let one = Tally::one(outcome.value);
            let cond = if outcome.in_y == Some(true) {
                one
            } else {
                Tally::default()
            };
            Ok::<_, Error>((one, cond))
        })
        .try_reduce(
            || (Tally::default(), Tally::default()),
            |a, b| Ok((a.0.merge(b.0), a.1.merge(b.1))),
        )?;
    let summarize = match spec.experiment.kind() {
        Kind::Frequency => frequency,
        Kind::Mean => mean,
    };
    let conditional_on_y = (words && conditional.count > 0).then(|| Conditional {
        trials: conditional.count,
        estimate: summarize(&conditional),
    });
    let exact = exact.get(n);
    Ok(ReportRow {
        experiment: name.to_string(),
        r: spec.r,
        k: words.then_some(spec.k),
        n,
        trials: spec.trials,
        estimate: summarize(&all),
        reference: spec.experiment.reference(spec.r, n),
        exact_value: exact.as_ref().map(ExactRatio::to_f64),
        exact: exact.map(|e| e.decimal(10)),
        master_seed: spec.master_seed,
        wall_time: start.elapsed().as_secs_f64(),
        conditional_on_y,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_names() {
        assert_eq!(Experiment::ALL.len(), 14);
        for e in Experiment::ALL {
            assert_eq!(e.name().parse::<Experiment>().unwrap(), e);
        }
        assert!(matches!(
            "nope".parse::<Experiment>(),
            Err(Error::UnknownExperiment(_))
        ));
        assert!((Experiment::AvoidGenerators.reference(2, 10).unwrap() - 0.1353).abs() < 1e-4);
    }

    #[test]
    fn seeds_differ() {
        let a = derive_seed(1, "x", 10, 0);
        assert_eq!(a, derive_seed(1, "x", 10, 0));
        assert_ne!(a, derive_seed(1, "x", 10, 1));
        assert_ne!(a, derive_seed(1, "x", 11, 0));
        assert_ne!(a, derive_seed(2, "x", 10, 0));
        assert_ne!(a, derive_seed(1, "y", 10, 0));
    }

    #[test]
    fn deterministic_replay() {
        let spec = ExperimentSpec::new(Experiment::NoFixpoint, vec![5, 20], 300, 42);
        let a = run(&spec).unwrap().to_csv().unwrap();
        let b = run(&spec).unwrap().to_csv().unwrap();
        assert_eq!(a, b);
        assert_eq!(a.lines().count(), 3);
    }

    #[test]
    fn every_experiment_runs() {
        for e in Experiment::ALL {
            let mut spec = ExperimentSpec::new(e, vec![12], 20, 7);
            spec.k = 2;
            spec.k_prime = 2;
            let report = run(&spec).unwrap();
            let row = &report.rows[0];
            assert_eq!(row.trials, 20);
            if e.kind() == Kind::Frequency {
                assert!((0.0..=1.0).contains(&row.estimate.estimate), "{e}");
            }
        }
        let mut spec = ExperimentSpec::new(Experiment::ShncPairs, vec![10], 20, 7);
        spec.mode = SamplingMode::Word;
        assert_eq!(run(&spec).unwrap().rows[0].k, Some(5));
    }

    #[test]
    fn invalid_specs() {
        assert!(run(&ExperimentSpec::new(Experiment::NoFixpoint, vec![5], 0, 1)).is_err());
        assert!(run(&ExperimentSpec::new(Experiment::RankMean, vec![0], 5, 1)).is_err());
        let mut spec = ExperimentSpec::new(Experiment::WordRankK, vec![5], 5, 1);
        spec.r = 1;
        assert!(run(&spec).is_err());
    }
}
