//! Monte Carlo campaigns, exhaustive ground truth, tables and bound suites.
//!
//! Trial `k` of a campaign reads only `(master_seed, k)`: its polynomials are
//! drawn one after another from sign stream `k`. Workers fold trials into
//! additive tallies, so reports do not depend on scheduling or thread count.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{
    common_root_decision, common_root_exists_2d_with, gcd_int, gcd_many, CommonRoot2d,
    DecisionStage, IntPoly, LiftOptions, PipelineOptions,
};
use crate::atom::{bound_report, power_vector, rational_to_f64, ser_display, AtomVector, BoundReport};
use crate::classify::{classify_gcd, classify_point, decompose_terms, DecompositionTerms, RootClass, ZoneTag};
use crate::error::{invalid, Result};
use crate::gaussian::GaussianRational;
use crate::numeric::{bernoulli_roots, roots_intersect};
use crate::poly::{BernoulliPolyMulti, BernoulliPolyUni};
use crate::rng::{Seed, SignStream};

/// `f64` written as a JSON number with 17 significant digits.
pub mod sig17 {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn format(v: f64) -> String {
        if v.is_finite() {
            format!("{v:.16e}")
        } else {
            "null".to_string()
        }
    }

    pub fn serialize<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
        let raw = serde_json::value::RawValue::from_string(format(*v))
            .map_err(serde::ser::Error::custom)?;
        serde::Serialize::serialize(&raw, s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        Ok(Option::<f64>::deserialize(d)?.unwrap_or(f64::NAN))
    }
}

pub mod sig17_opt {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(x) => super::sig17::serialize(x, s),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<f64>, D::Error> {
        Option::<f64>::deserialize(d)
    }
}

mod sig17_pair {
    use serde::ser::SerializeTuple;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[f64; 2], s: S) -> Result<S::Ok, S::Error> {
        struct W(f64);
        impl serde::Serialize for W {
            fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                super::sig17::serialize(&self.0, s)
            }
        }
        let mut t = s.serialize_tuple(2)?;
        t.serialize_element(&W(v[0]))?;
        t.serialize_element(&W(v[1]))?;
        t.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<[f64; 2], D::Error> {
        <[f64; 2]>::deserialize(d)
    }
}

/// Two-sided 95% normal quantile.
pub const Z_95: f64 = 1.959963984540054;

/// Wilson score interval for `hits` successes out of `trials`.
pub fn wilson_interval(hits: u64, trials: u64, z: f64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let n = trials as f64;
    let p = hits as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = z / denom * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt();
    let lo = if hits == 0 { 0.0 } else { (center - half).max(0.0) };
    let hi = if hits == trials { 1.0 } else { (center + half).min(1.0) };
    (lo, hi)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CampaignMode {
    MonteCarlo,
    Exhaustive,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CampaignConfig {
    pub d: usize,
    pub n: usize,
    pub ell: usize,
    pub trials: u64,
    pub master_seed: u64,
    pub mode: CampaignMode,
    pub prime_budget: usize,
    #[serde(with = "sig17")]
    pub tol: f64,
    pub pm1_filter: bool,
}

pub const MAX_EXHAUSTIVE_N: usize = 10;

impl CampaignConfig {
    pub fn monte_carlo(d: usize, n: usize, ell: usize, trials: u64, master_seed: u64) -> Self {
        Self {
            d,
            n,
            ell,
            trials,
            master_seed,
            mode: CampaignMode::MonteCarlo,
            prime_budget: 2,
            tol: LiftOptions::default().accept_tol,
            pm1_filter: true,
        }
    }

    pub fn exhaustive(n: usize) -> Self {
        Self {
            mode: CampaignMode::Exhaustive,
            trials: 1u64 << (2 * (n + 1)).min(63),
            ..Self::monte_carlo(1, n, 2, 1, 0)
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return invalid("n must be at least 1");
        }
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return invalid("tol must be positive and finite");
        }
        if self.prime_budget == 0 {
            return invalid("prime budget must be at least 1");
        }
        match self.mode {
            CampaignMode::Exhaustive => {
                if self.d != 1 || self.ell != 2 {
                    return invalid("exhaustive mode supports only d = 1, ell = 2");
                }
                if self.n > MAX_EXHAUSTIVE_N {
                    return invalid(format!("exhaustive mode supports n ≤ {MAX_EXHAUSTIVE_N}"));
                }
            }
            CampaignMode::MonteCarlo => {
                if self.trials == 0 {
                    return invalid("trials must be at least 1");
                }
                match self.d {
                    1 if self.ell >= 2 => {}
                    1 => return invalid("d = 1 needs ell ≥ 2 polynomials"),
                    2 if self.ell >= 3 => {}
                    2 => return invalid("d = 2 needs ell ≥ 3 polynomials (a generic pair always meets)"),
                    _ => return invalid(format!("d = {} is not supported (d must be 1 or 2)", self.d)),
                }
                if self.d == 2 && self.n > 64 {
                    return invalid("d = 2 campaigns support n ≤ 64");
                }
            }
        }
        Ok(())
    }

    fn lift_options(&self) -> LiftOptions {
        LiftOptions {
            accept_tol: self.tol,
            ..LiftOptions::default()
        }
    }

    fn pipeline(&self) -> PipelineOptions {
        PipelineOptions {
            pm1_filter: self.pm1_filter,
            prime_budget: self.prime_budget,
        }
    }
}

/// Per-stage decision counts of the univariate pipeline.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageCounts {
    pub pm1_accept: u64,
    pub modular_reject: u64,
    pub exact_gcd: u64,
}

impl StageCounts {
    fn record(&mut self, stage: DecisionStage) {
        match stage {
            DecisionStage::Pm1Accept => self.pm1_accept += 1,
            DecisionStage::ModularReject => self.modular_reject += 1,
            DecisionStage::ExactGcd => self.exact_gcd += 1,
        }
    }

    fn merge(&mut self, o: &Self) {
        self.pm1_accept += o.pm1_accept;
        self.modular_reject += o.modular_reject;
        self.exact_gcd += o.exact_gcd;
    }
}

/// Hit counts by the class of the shared roots. A hit whose common factor
/// has roots of several classes is counted once in each.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassCounts {
    pub root_plus_one: u64,
    pub root_minus_one: u64,
    pub low_degree: u64,
    pub higher: u64,
}

impl ClassCounts {
    fn record(&mut self, classes: &[(IntPoly, RootClass)]) {
        let has = |f: &dyn Fn(&RootClass) -> bool| classes.iter().any(|(_, c)| f(c));
        self.root_plus_one += u64::from(has(&|c| *c == RootClass::RationalPm1 { root: 1 }));
        self.root_minus_one += u64::from(has(&|c| *c == RootClass::RationalPm1 { root: -1 }));
        self.low_degree += u64::from(has(&|c| matches!(c, RootClass::LowDegree { .. })));
        self.higher += u64::from(has(&|c| *c == RootClass::Higher));
    }

    fn merge(&mut self, o: &Self) {
        self.root_plus_one += o.root_plus_one;
        self.root_minus_one += o.root_minus_one;
        self.low_degree += o.low_degree;
        self.higher += o.higher;
    }
}

/// Hit counts by the zone of the witness point (two variables).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZoneCounts {
    pub z1: u64,
    pub z2: u64,
    pub z3: u64,
}

impl ZoneCounts {
    fn merge(&mut self, o: &Self) {
        self.z1 += o.z1;
        self.z2 += o.z2;
        self.z3 += o.z3;
    }
}

#[derive(Clone, Copy, Debug, Default)]
struct Tally {
    hits: u64,
    misses: u64,
    undecided: u64,
    stages: StageCounts,
    classes: ClassCounts,
    zones: ZoneCounts,
}

impl Tally {
    fn merge(mut self, o: Tally) -> Tally {
        self.hits += o.hits;
        self.misses += o.misses;
        self.undecided += o.undecided;
        self.stages.merge(&o.stages);
        self.classes.merge(&o.classes);
        self.zones.merge(&o.zones);
        self
    }
}

/// Point estimate with its Wilson interval and the scaled forms `p̂·n`,
/// `p̂·n^{3/2}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub hits: u64,
    pub p_hat: String,
    #[serde(with = "sig17")]
    pub p_hat_decimal: f64,
    #[serde(with = "sig17_pair")]
    pub wilson_ci_95: [f64; 2],
    #[serde(with = "sig17")]
    pub scaled_n: f64,
    #[serde(with = "sig17")]
    pub scaled_n_three_halves: f64,
}

impl Estimate {
    pub fn new(hits: u64, trials: u64, n: usize) -> Self {
        let p = BigRational::new(BigInt::from(hits), BigInt::from(trials));
        let p_dec = hits as f64 / trials as f64;
        let (lo, hi) = wilson_interval(hits, trials, Z_95);
        let nf = n as f64;
        Self {
            hits,
            p_hat: p.to_string(),
            p_hat_decimal: p_dec,
            wilson_ci_95: [lo, hi],
            scaled_n: p_dec * nf,
            scaled_n_three_halves: p_dec * nf.powf(1.5),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EstimateReport {
    pub config: CampaignConfig,
    pub trials: u64,
    pub hits: u64,
    pub misses: u64,
    pub undecided: u64,
    /// Undecided trials counted as misses.
    pub optimistic: Estimate,
    /// Undecided trials counted as hits.
    pub pessimistic: Estimate,
    #[serde(with = "sig17")]
    pub undecided_frac: f64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub stages: Option<StageCounts>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub classes: Option<ClassCounts>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub zones: Option<ZoneCounts>,
    #[serde(with = "sig17_opt", default)]
    pub wall_time_seconds: Option<f64>,
}

/// Worker pool sized by `CRL_THREADS` when set.
pub fn thread_pool() -> Result<rayon::ThreadPool> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var("CRL_THREADS") {
        match v.trim().parse::<usize>() {
            Ok(t) if t >= 1 => b = b.num_threads(t),
            _ => return invalid(format!("CRL_THREADS must be a positive integer, got {v:?}")),
        }
    }
    b.build()
        .map_err(|e| crate::Error::InvalidArgument(format!("thread pool: {e}")))
}

/// Polynomials of univariate trial `k`.
pub fn trial_polys_1d(config: &CampaignConfig, k: u64) -> Vec<BernoulliPolyUni> {
    let mut s = SignStream::new(Seed::new(config.master_seed, k));
    (0..config.ell)
        .map(|_| BernoulliPolyUni::sample_from(&mut s, config.n))
        .collect()
}

/// Polynomials of two-variable trial `k`.
pub fn trial_polys_2d(config: &CampaignConfig, k: u64) -> Vec<BernoulliPolyMulti> {
    let mut s = SignStream::new(Seed::new(config.master_seed, k));
    (0..config.ell)
        .map(|_| BernoulliPolyMulti::sample_from(&mut s, 2, config.n).expect("valid shape"))
        .collect()
}

fn run_trial_1d(config: &CampaignConfig, k: u64, t: &mut Tally) {
    let polys = trial_polys_1d(config, k);
    let (hit, stage) = common_root_decision(&polys, config.pipeline());
    t.stages.record(stage);
    if hit {
        t.hits += 1;
        let ints: Vec<IntPoly> = polys.iter().map(IntPoly::from_bernoulli).collect();
        let g = gcd_many(&ints).expect("nonzero inputs");
        t.classes.record(&classify_gcd(g).expect("nonzero gcd"));
    } else {
        t.misses += 1;
    }
}

fn run_trial_2d(config: &CampaignConfig, k: u64, t: &mut Tally) {
    let polys = trial_polys_2d(config, k);
    match common_root_exists_2d_with(&polys, config.lift_options()).expect("validated shape") {
        CommonRoot2d::Yes { witness } => {
            t.hits += 1;
            match classify_point(&witness, config.n as u32, 1e-6) {
                Ok(ZoneTag::Z1 { .. }) => t.zones.z1 += 1,
                Ok(ZoneTag::Z2 { .. }) => t.zones.z2 += 1,
                _ => t.zones.z3 += 1,
            }
        }
        CommonRoot2d::No => t.misses += 1,
        CommonRoot2d::Undecided => t.undecided += 1,
    }
}

const CHUNK: u64 = 256;

/// Monte Carlo estimate of `p(n, d, ell)`.
pub fn estimate_p(config: &CampaignConfig) -> Result<EstimateReport> {
    config.validate()?;
    if config.mode != CampaignMode::MonteCarlo {
        return invalid("estimate_p needs Monte Carlo mode");
    }
    let pool = thread_pool()?;
    let chunks = config.trials.div_ceil(CHUNK);
    let tally = pool.install(|| {
        (0..chunks)
            .into_par_iter()
            .map(|c| {
                let mut t = Tally::default();
                for k in c * CHUNK..((c + 1) * CHUNK).min(config.trials) {
                    if config.d == 1 {
                        run_trial_1d(config, k, &mut t);
                    } else {
                        run_trial_2d(config, k, &mut t);
                    }
                }
                t
            })
            .reduce(Tally::default, Tally::merge)
    });
    let trials = config.trials;
    Ok(EstimateReport {
        config: config.clone(),
        trials,
        hits: tally.hits,
        misses: tally.misses,
        undecided: tally.undecided,
        optimistic: Estimate::new(tally.hits, trials, config.n),
        pessimistic: Estimate::new(tally.hits + tally.undecided, trials, config.n),
        undecided_frac: tally.undecided as f64 / trials as f64,
        stages: (config.d == 1).then_some(tally.stages),
        classes: (config.d == 1).then_some(tally.classes),
        zones: (config.d == 2).then_some(tally.zones),
        wall_time_seconds: None,
    })
}

/// A count of pairs together with its exact probability.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EventTally {
    pub count: u64,
    #[serde(serialize_with = "ser_display", deserialize_with = "de_rational")]
    pub probability: BigRational,
}

fn de_rational<'de, D: serde::Deserializer<'de>>(d: D) -> std::result::Result<BigRational, D::Error> {
    let s = String::deserialize(d)?;
    s.parse().map_err(serde::de::Error::custom)
}

impl EventTally {
    fn new(count: u64, total: u64) -> Self {
        Self {
            count,
            probability: BigRational::new(BigInt::from(count), BigInt::from(total)),
        }
    }
}

/// Exhaustive ground truth over all ordered pairs of degree-n polynomials.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExactReport {
    pub n: usize,
    pub pairs: u64,
    /// Pairs with a nonconstant GCD.
    pub common_root: EventTally,
    #[serde(with = "sig17")]
    pub p_decimal: f64,
    pub both_vanish_at_one: EventTally,
    pub both_vanish_at_minus_one: EventTally,
    pub both_vanish_at_both: EventTally,
    pub terms: DecompositionTerms,
    /// `p(n) − (I + II + III)`
    #[serde(serialize_with = "ser_display", deserialize_with = "de_rational")]
    pub residual: BigRational,
    pub classes: ClassCounts,
    /// Pairs flagged by root matching of floating-point roots.
    pub oracle_hits: u64,
    /// Pairs where root matching and the GCD disagree.
    pub oracle_discrepancies: u64,
    #[serde(with = "sig17")]
    pub oracle_tol: f64,
}

pub const ORACLE_TOL: f64 = 1e-6;

#[derive(Clone, Copy, Default)]
struct ExactTally {
    hits: u64,
    at_one: u64,
    at_minus_one: u64,
    at_both: u64,
    oracle_hits: u64,
    discrepancies: u64,
    classes: ClassCounts,
}

impl ExactTally {
    fn merge(mut self, o: ExactTally) -> ExactTally {
        self.hits += o.hits;
        self.at_one += o.at_one;
        self.at_minus_one += o.at_minus_one;
        self.at_both += o.at_both;
        self.oracle_hits += o.oracle_hits;
        self.discrepancies += o.discrepancies;
        self.classes.merge(&o.classes);
        self
    }
}

/// Exact `p(n)` for `d = 1, ell = 2` by walking every coefficient pair.
pub fn exact_p_bruteforce(config: &CampaignConfig) -> Result<ExactReport> {
    config.validate()?;
    if config.mode != CampaignMode::Exhaustive {
        return invalid("exact_p_bruteforce needs exhaustive mode");
    }
    let n = config.n;
    let count = 1u64 << (n + 1);
    let polys: Vec<BernoulliPolyUni> = (0..count).map(|m| BernoulliPolyUni::from_mask(n, m)).collect();
    let ints: Vec<IntPoly> = polys.iter().map(IntPoly::from_bernoulli).collect();
    let pm1: Vec<(i64, i64)> = polys.iter().map(BernoulliPolyUni::eval_at_pm1).collect();
    let roots: Vec<Vec<Complex64>> = polys.iter().map(bernoulli_roots).collect();
    let pool = thread_pool()?;
    let t = pool.install(|| {
        (0..count as usize)
            .into_par_iter()
            .map(|i| {
                let mut t = ExactTally::default();
                for j in 0..count as usize {
                    let g = gcd_int(&ints[i], &ints[j]).expect("nonzero inputs");
                    let hit = !g.is_constant();
                    let one = pm1[i].0 == 0 && pm1[j].0 == 0;
                    let minus_one = pm1[i].1 == 0 && pm1[j].1 == 0;
                    let oracle = roots_intersect(&roots[i], &roots[j], ORACLE_TOL);
                    t.hits += u64::from(hit);
                    t.at_one += u64::from(one);
                    t.at_minus_one += u64::from(minus_one);
                    t.at_both += u64::from(one && minus_one);
                    t.oracle_hits += u64::from(oracle);
                    t.discrepancies += u64::from(oracle != hit);
                    if hit {
                        t.classes.record(&classify_gcd(g).expect("nonzero gcd"));
                    }
                }
                t
            })
            .reduce(ExactTally::default, ExactTally::merge)
    });
    let pairs = count * count;
    let common_root = EventTally::new(t.hits, pairs);
    let terms = decompose_terms(n);
    let residual = &common_root.probability - terms.sum();
    Ok(ExactReport {
        n,
        pairs,
        p_decimal: rational_to_f64(&common_root.probability),
        common_root,
        both_vanish_at_one: EventTally::new(t.at_one, pairs),
        both_vanish_at_minus_one: EventTally::new(t.at_minus_one, pairs),
        both_vanish_at_both: EventTally::new(t.at_both, pairs),
        terms,
        residual,
        classes: t.classes,
        oracle_hits: t.oracle_hits,
        oracle_discrepancies: t.discrepancies,
        oracle_tol: ORACLE_TOL,
    })
}

pub const TABLE_HEADER: &str = "n,p_hat,ci_lo,ci_hi,scaled,undecided_frac,seconds";

/// One table row per `n`. `p_hat` is the pessimistic estimate (identical to
/// the optimistic one when nothing is undecided); `seconds` is left empty
/// unless `timing` is set, so untimed tables replay byte for byte.
pub fn asymptotic_table(base: &CampaignConfig, n_list: &[usize], timing: bool) -> Result<String> {
    if n_list.is_empty() {
        return invalid("table needs at least one n");
    }
    let mut out = String::from(TABLE_HEADER);
    out.push('\n');
    for &n in n_list {
        let config = CampaignConfig { n, ..base.clone() };
        let start = std::time::Instant::now();
        let r = estimate_p(&config)?;
        let secs = start.elapsed().as_secs_f64();
        let e = &r.pessimistic;
        let f = sig17::format;
        writeln!(
            out,
            "{n},{},{},{},{},{},{}",
            f(e.p_hat_decimal),
            f(e.wilson_ci_95[0]),
            f(e.wilson_ci_95[1]),
            f(e.scaled_n),
            f(r.undecided_frac),
            if timing { format!("{secs:.3}") } else { String::new() }
        )
        .expect("write to string");
    }
    Ok(out)
}

/// A labelled corpus vector.
#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub label: String,
    pub vector: AtomVector,
}

/// The fixed corpus of the bound suite: structured integer families, seeded
/// random integer vectors, Gaussian vectors and power vectors of algebraic
/// numbers.
pub fn bound_corpus() -> Vec<CorpusEntry> {
    let mut out = Vec::new();
    let mut push = |label: String, vector: AtomVector| out.push(CorpusEntry { label, vector });
    for m in 1..=24usize {
        push(format!("ones[{m}]"), AtomVector::integers(&vec![1; m]).unwrap());
        let range: Vec<i64> = (1..=m as i64).collect();
        push(format!("range[{m}]"), AtomVector::integers(&range).unwrap());
        let pm: Vec<i64> = (0..m as i64).map(|i| (i / 2 + 1) * if i % 2 == 0 { 1 } else { -1 }).collect();
        push(format!("pm_pairs[{m}]"), AtomVector::integers(&pm).unwrap());
        let two_level: Vec<i64> = (0..m).map(|i| if i % 2 == 0 { 1 } else { 2 }).collect();
        push(format!("ones_twos[{m}]"), AtomVector::integers(&two_level).unwrap());
    }
    for m in 1..=20usize {
        let pow: Vec<i64> = (0..m as u32).map(|k| 1i64 << k).collect();
        push(format!("powers_of_two[{m}]"), AtomVector::integers(&pow).unwrap());
    }
    let mut s = SignStream::new(Seed::new(0x5eed_b0d5, 0));
    for k in 0..200 {
        let m = 2 + s.next_below(19) as usize;
        let v: Vec<i64> = (0..m).map(|_| s.next_below(101) as i64 - 50).filter(|&x| x != 0).collect();
        if v.is_empty() {
            continue;
        }
        push(format!("random_int[{k}]"), AtomVector::integers(&v).unwrap());
    }
    for m in 2..=12usize {
        let g: Vec<GaussianRational> = (0..m)
            .map(|k| match k % 4 {
                0 => GaussianRational::one(),
                1 => "0:1".parse().unwrap(),
                2 => "1:1".parse().unwrap(),
                _ => "1:-1".parse().unwrap(),
            })
            .collect();
        push(format!("gaussian_cycle[{m}]"), AtomVector::gaussian(g).unwrap());
    }
    let fields = [
        ("x^2+1", IntPoly::from_i64s(&[1, 0, 1])),
        ("x^2-x-1", IntPoly::from_i64s(&[-1, -1, 1])),
        ("x^2+x+1", IntPoly::from_i64s(&[1, 1, 1])),
        ("x^3-x-1", IntPoly::from_i64s(&[-1, -1, 0, 1])),
    ];
    for (name, minpoly) in &fields {
        for m in 2..=14usize {
            push(format!("powers({name})[{m}]"), power_vector(minpoly, m).unwrap());
        }
    }
    out
}

/// Corpus maximum of one ratio with the vector attaining it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RatioMax {
    #[serde(with = "sig17")]
    pub value: f64,
    pub witness: String,
    pub vectors: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundSuiteReport {
    pub corpus_size: u64,
    /// `prob / (C(m, ⌊m/2⌋) / 2^m)` over vectors with nonzero entries.
    pub erdos_sharp_ratio: RatioMax,
    /// `prob · m^{1/2}`
    pub erdos_ratio: RatioMax,
    /// `prob · m^{3/2}` over vectors with distinct entries.
    pub ss_ratio: RatioMax,
    /// `prob · m^{5/2} / R`
    pub halasz_ratio: RatioMax,
}

fn fold_max(entries: &[(String, BoundReport)], f: impl Fn(&BoundReport) -> Option<f64>) -> RatioMax {
    let mut best = RatioMax {
        value: f64::NEG_INFINITY,
        witness: String::new(),
        vectors: 0,
    };
    for (label, r) in entries {
        if let Some(v) = f(r) {
            best.vectors += 1;
            if v > best.value {
                best.value = v;
                best.witness = label.clone();
            }
        }
    }
    best
}

pub fn bound_suite() -> BoundSuiteReport {
    let corpus = bound_corpus();
    let reports: Vec<(String, BoundReport)> = corpus
        .par_iter()
        .map(|e| (e.label.clone(), bound_report(&e.vector)))
        .collect();
    BoundSuiteReport {
        corpus_size: reports.len() as u64,
        erdos_sharp_ratio: fold_max(&reports, |r| r.erdos_sharp_ratio),
        erdos_ratio: fold_max(&reports, |r| r.all_nonzero.then_some(r.erdos_ratio)),
        ss_ratio: fold_max(&reports, |r| r.ss_ratio),
        halasz_ratio: fold_max(&reports, |r| Some(r.halasz_ratio)),
    }
}

/// Serialises a report as pretty JSON followed by a newline.
pub fn to_json<T: Serialize>(v: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(v)?;
    s.push('\n');
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    #[test]
    fn wilson_basics() {
        let (lo, hi) = wilson_interval(0, 100, Z_95);
        assert_eq!(lo, 0.0);
        assert!(hi > 0.03 && hi < 0.04);
        let (lo, hi) = wilson_interval(50, 100, Z_95);
        assert!((lo + hi - 1.0).abs() < 1e-12);
        assert!(lo < 0.5 && hi > 0.5);
    }

    #[test]
    fn config_validation() {
        assert!(CampaignConfig::monte_carlo(1, 5, 2, 10, 1).validate().is_ok());
        assert!(CampaignConfig::monte_carlo(1, 5, 1, 10, 1).validate().is_err());
        assert!(CampaignConfig::monte_carlo(2, 4, 2, 10, 1).validate().is_err());
        assert!(CampaignConfig::monte_carlo(3, 4, 4, 10, 1).validate().is_err());
        assert!(CampaignConfig::monte_carlo(1, 0, 2, 10, 1).validate().is_err());
        assert!(CampaignConfig::exhaustive(11).validate().is_err());
        assert!(CampaignConfig::exhaustive(10).validate().is_ok());
    }

    #[test]
    fn exact_n1() {
        let r = exact_p_bruteforce(&CampaignConfig::exhaustive(1)).unwrap();
        assert_eq!(r.pairs, 16);
        assert_eq!(r.common_root.probability, BigRational::new(1.into(), 2.into()));
        assert_eq!(r.oracle_discrepancies, 0);
        assert!(r.residual >= BigRational::zero());
    }

    #[test]
    fn estimate_counts_add_up() {
        let c = CampaignConfig::monte_carlo(1, 15, 2, 700, 9);
        let r = estimate_p(&c).unwrap();
        assert_eq!(r.hits + r.misses + r.undecided, 700);
        assert_eq!(r.undecided, 0);
        let s = r.stages.unwrap();
        assert_eq!(s.pm1_accept + s.modular_reject + s.exact_gcd, 700);
        assert_eq!(r, estimate_p(&c).unwrap());
    }

    #[test]
    fn json_floats_have_17_digits() {
        let e = Estimate::new(1, 3, 2);
        let s = serde_json::to_string(&e).unwrap();
        assert!(s.contains("3.3333333333333331e-1"), "{s}");
        let back: Estimate = serde_json::from_str(&s).unwrap();
        assert_eq!(back, e);
    }
}
