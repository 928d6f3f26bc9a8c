use std::fmt::Write as _;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::closest_string::{solve_closest_string, ClosestStringConfig};
use crate::closest_substring::{solve_closest_substring, solve_small_substring, SubstringConfig, SubstringMode};
use crate::error::{Error, Result};
use crate::exact::{best_input_center, exact_closest_string, exact_closest_substring, DEFAULT_EXACT_BUDGET};
use crate::instance::{StringInstance, SubstringInstance};
use crate::lp_round::RoundingConfig;
use crate::seed;

use super::instance_file::InstanceFile;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Algo {
    BestInput,
    Ptas,
    Small,
    Sampling,
}

impl Algo {
    pub fn name(self) -> &'static str {
        match self {
            Self::BestInput => "best-input",
            Self::Ptas => "ptas",
            Self::Small => "small",
            Self::Sampling => "sampling",
        }
    }
}

impl std::str::FromStr for Algo {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "best-input" => Ok(Self::BestInput),
            "ptas" => Ok(Self::Ptas),
            "small" => Ok(Self::Small),
            "sampling" => Ok(Self::Sampling),
            other => Err(Error::Parse(format!("unknown algorithm {other:?}"))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct BenchConfig {
    /// `None` runs `best-input,ptas` on string instances and
    /// `small,sampling` on substring instances.
    pub algos: Option<Vec<Algo>>,
    pub r: usize,
    pub epsilon: f64,
    pub rounding: RoundingConfig,
    pub y_budget: u64,
    pub oracle_budget: u64,
    pub seed: u64,
    pub parallel: bool,
    /// Fill the `ms` column. Off by default so output is reproducible.
    pub timing: bool,
}

impl Default for BenchConfig {
    fn default() -> Self {
        let sub = SubstringConfig::default();
        Self {
            algos: None,
            r: sub.r,
            epsilon: sub.epsilon,
            rounding: RoundingConfig::default(),
            y_budget: sub.y_budget,
            oracle_budget: DEFAULT_EXACT_BUDGET,
            seed: 0,
            parallel: false,
            timing: false,
        }
    }
}

#[derive(Debug, Clone)]
pub struct NamedInstance {
    pub name: String,
    pub file: InstanceFile,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub instance: String,
    pub seed: u64,
    pub algo: Algo,
    pub r: Option<usize>,
    pub epsilon: Option<f64>,
    pub radius: Option<usize>,
    pub oracle: Option<usize>,
    /// Proven ratio bound for this algorithm and parameter set.
    pub bound: f64,
    pub ms: Option<f64>,
    pub error: Option<String>,
}

impl BenchRow {
    /// `radius / oracle`, with `0/0 = 1` and `k/0 = ∞`.
    pub fn ratio(&self) -> Option<f64> {
        let (r, o) = (self.radius?, self.oracle?);
        Some(match (r, o) {
            (0, 0) => 1.0,
            (_, 0) => f64::INFINITY,
            _ => r as f64 / o as f64,
        })
    }

    pub fn within_bound(&self) -> bool {
        match (self.radius, self.oracle) {
            (Some(r), Some(o)) => r as f64 <= self.bound * o as f64 + 1e-9,
            _ => true,
        }
    }

    pub fn status(&self) -> String {
        match &self.error {
            Some(e) => format!("error: {e}"),
            None if !self.within_bound() => "over_bound".into(),
            None => "ok".into(),
        }
    }

    fn fields(&self) -> [String; 10] {
        let opt = |v: Option<String>| v.unwrap_or_default();
        [
            self.instance.clone(),
            self.seed.to_string(),
            self.algo.name().into(),
            opt(self.r.map(|v| v.to_string())),
            opt(self.epsilon.map(|v| v.to_string())),
            opt(self.radius.map(|v| v.to_string())),
            opt(self.oracle.map(|v| v.to_string())),
            opt(self.ratio().map(|v| if v.is_finite() { format!("{v:.6}") } else { "inf".into() })),
            opt(self.ms.map(|v| format!("{v:.3}"))),
            self.status(),
        ]
    }
}

pub const CSV_HEADER: [&str; 10] = ["instance", "seed", "algo", "r", "epsilon", "radius", "oracle", "ratio", "ms", "status"];

#[derive(Debug, Clone, PartialEq)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
}

impl BenchReport {
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(CSV_HEADER).expect("write to memory");
        for row in &self.rows {
            w.write_record(row.fields()).expect("write to memory");
        }
        String::from_utf8(w.into_inner().expect("flush to memory")).expect("fields are UTF-8")
    }

    pub fn to_table(&self) -> String {
        let cells: Vec<[String; 10]> = self.rows.iter().map(BenchRow::fields).collect();
        let mut widths = CSV_HEADER.map(str::len);
        for row in &cells {
            for (w, c) in widths.iter_mut().zip(row) {
                *w = (*w).max(c.len());
            }
        }
        let mut out = String::new();
        let mut line = |row: &[&str]| {
            let parts: Vec<String> = row.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
            writeln!(out, "{}", parts.join("  ").trim_end()).expect("write to String");
        };
        line(&CSV_HEADER);
        for row in &cells {
            line(&row.each_ref().map(String::as_str));
        }
        out
    }

    /// Rows whose radius exceeds their proven bound.
    pub fn violations(&self) -> usize {
        self.rows.iter().filter(|r| !r.within_bound()).count()
    }
}

/// Runs every configured algorithm on every instance. Instance `k` uses
/// seed `derive(cfg.seed, k)`. Rows come out in suite order whether or not
/// the suite runs in parallel. Failures become rows with an error status.
pub fn run_bench(suite: &[NamedInstance], cfg: &BenchConfig) -> BenchReport {
    let run = |(k, inst): (usize, &NamedInstance)| bench_instance(inst, seed::derive(cfg.seed, k as u64), cfg);
    let rows: Vec<Vec<BenchRow>> = if cfg.parallel {
        suite.par_iter().enumerate().map(run).collect()
    } else {
        suite.iter().enumerate().map(run).collect()
    };
    BenchReport { rows: rows.into_iter().flatten().collect() }
}

enum Loaded {
    String(StringInstance),
    Substring(SubstringInstance),
}

fn load(file: &InstanceFile) -> Result<Loaded> {
    if file.is_string_problem() {
        Ok(Loaded::String(file.string_instance()?))
    } else {
        Ok(Loaded::Substring(file.substring_instance()?))
    }
}

fn bench_instance(named: &NamedInstance, seed: u64, cfg: &BenchConfig) -> Vec<BenchRow> {
    let loaded = load(&named.file);
    let is_string = matches!(loaded, Ok(Loaded::String(_)));
    let algos = cfg.algos.clone().unwrap_or_else(|| {
        if is_string {
            vec![Algo::BestInput, Algo::Ptas]
        } else {
            vec![Algo::Small, Algo::Sampling]
        }
    });
    let oracle = match &loaded {
        Ok(Loaded::String(s)) => exact_closest_string(s, cfg.oracle_budget).ok().map(|c| c.radius),
        Ok(Loaded::Substring(s)) => exact_closest_substring(s, cfg.oracle_budget).ok().map(|c| c.radius),
        Err(_) => None,
    };
    let rounding = RoundingConfig { rng_seed: seed, ..cfg.rounding };
    let string_cfg = ClosestStringConfig { r: cfg.r, rounding, ..ClosestStringConfig::default() };
    let sub_cfg = SubstringConfig {
        r: cfg.r,
        epsilon: cfg.epsilon,
        rounding,
        y_budget: cfg.y_budget,
        mode: SubstringMode::Auto,
        rng_seed: seed,
        parallel: false,
        all_anchors: false,
    };

    algos
        .into_iter()
        .map(|algo| {
            let (r, epsilon, bound) = match algo {
                Algo::BestInput => (None, None, 2.0),
                Algo::Ptas => (Some(cfg.r), Some(cfg.r as f64 * cfg.rounding.epsilon_prime), string_cfg.ratio_bound()),
                Algo::Small => (Some(cfg.r), None, sub_cfg.small_ratio_bound()),
                Algo::Sampling => (Some(cfg.r), Some(cfg.epsilon), sub_cfg.sampling_ratio_bound()),
            };
            let start = Instant::now();
            let radius = match &loaded {
                Err(e) => Err(e.clone()),
                Ok(l) => run_algo(algo, l, &string_cfg, &sub_cfg),
            };
            let ms = cfg.timing.then(|| start.elapsed().as_secs_f64() * 1e3);
            let (radius, error) = match radius {
                Ok(v) => (Some(v), None),
                Err(e) => (None, Some(e.to_string())),
            };
            BenchRow { instance: named.name.clone(), seed, algo, r, epsilon, radius, oracle, bound, ms, error }
        })
        .collect()
}

fn run_algo(algo: Algo, inst: &Loaded, sc: &ClosestStringConfig, ssc: &SubstringConfig) -> Result<usize> {
    let as_substring = |l: &Loaded| match l {
        Loaded::String(s) => SubstringInstance::from(s),
        Loaded::Substring(s) => s.clone(),
    };
    match (algo, inst) {
        (Algo::BestInput, Loaded::String(s)) => Ok(best_input_center(s).radius),
        (Algo::Ptas, Loaded::String(s)) => Ok(solve_closest_string(s, sc)?.radius),
        (Algo::BestInput | Algo::Ptas, Loaded::Substring(_)) => {
            Err(Error::Domain(format!("{} needs a Closest String instance", algo.name())))
        }
        (Algo::Small, l) => Ok(solve_small_substring(&as_substring(l), ssc)?.radius),
        (Algo::Sampling, l) => Ok(solve_closest_substring(&as_substring(l), ssc)?.radius),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn file(strings: &[&str], window: Option<usize>) -> NamedInstance {
        NamedInstance {
            name: "t".into(),
            file: InstanceFile {
                alphabet: "01".into(),
                strings: strings.iter().map(|s| s.to_string()).collect(),
                window,
                planted: None,
            },
        }
    }

    #[test]
    fn ratio_conventions() {
        let mut row = BenchRow {
            instance: "x".into(),
            seed: 0,
            algo: Algo::Ptas,
            r: Some(2),
            epsilon: None,
            radius: Some(0),
            oracle: Some(0),
            bound: 2.0,
            ms: None,
            error: None,
        };
        assert_eq!(row.ratio(), Some(1.0));
        row.radius = Some(1);
        assert_eq!(row.ratio(), Some(f64::INFINITY));
        assert_eq!(row.status(), "over_bound");
        row.oracle = Some(1);
        assert_eq!(row.status(), "ok");
        row.oracle = None;
        assert_eq!(row.ratio(), None);
    }

    #[test]
    fn default_algorithms_follow_instance_kind() {
        let suite = [file(&["0011", "0101"], None), file(&["00110", "0101"], Some(3))];
        let rep = run_bench(&suite, &BenchConfig::default());
        let algos: Vec<_> = rep.rows.iter().map(|r| r.algo).collect();
        assert_eq!(algos, vec![Algo::BestInput, Algo::Ptas, Algo::Small, Algo::Sampling]);
        assert!(rep.rows.iter().all(|r| r.error.is_none() && r.oracle.is_some()));
        assert_eq!(rep.violations(), 0);
    }

    #[test]
    fn errors_become_rows() {
        let cfg = BenchConfig { algos: Some(vec![Algo::Ptas, Algo::Small]), ..BenchConfig::default() };
        let rep = run_bench(&[file(&["00110", "0101"], Some(3))], &cfg);
        assert!(rep.rows[0].status().starts_with("error:"));
        assert_eq!(rep.rows[1].status(), "ok");
        let csv = rep.to_csv();
        assert!(csv.starts_with("instance,seed,algo,r,epsilon,radius,oracle,ratio,ms,status\n"));
        assert_eq!(csv.lines().count(), 3);
    }

    #[test]
    fn table_is_aligned() {
        let rep = run_bench(&[file(&["0011", "0101"], None)], &BenchConfig::default());
        let t = rep.to_table();
        let lines: Vec<&str> = t.lines().collect();
        assert_eq!(lines.len(), 3);
        let col = lines[0].find("algo").unwrap();
        assert!(lines[1][col..].starts_with("best-input"));
    }
}
