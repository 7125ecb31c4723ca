//! Bound-versus-measured tables. Every suite is a pure function of its
//! parameters, so the same seed always yields the same JSON.

use std::fmt::Write as _;
use std::ops::RangeInclusive;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::approx::{run_random, Algorithm, Q};
use crate::complexity::brute::OracleLimits;
use crate::complexity::enumerate::{check_reduction_suite, twosat_random};
use crate::complexity::ReductionKind;
use crate::error::{Error, Result};
use crate::intmath::{ceil_log2, ceil_log2_factorial};
use crate::oracles::{Comparator, CountingComparator, FixedWorld, GroupOracle, LiarPolicy};
use crate::search_games::{
    bitonic_budget, bitonic_max, classify_group, coin_budget, find_counterfeit, find_radioactive, group_budget, Balance, CoinVerdict,
    FixedRadioactive, GroupTest, Probe, SliceProbe, TruthfulBalance,
};
use crate::sorting::{f_n, merge_insertion_sort};
use crate::tournament::{
    max_and_min, select_t_linear, select_t_linear_budget, select_t_tournament, select_t_tournament_budget, top_three, top_three_budget,
    top_two, tournament_max,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Sorting,
    Tournament,
    Search,
    Reductions,
    Twosat,
    Approx,
}

impl Suite {
    pub const ALL: [Suite; 6] = [Suite::Sorting, Suite::Tournament, Suite::Search, Suite::Reductions, Suite::Twosat, Suite::Approx];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Sorting => "sorting",
            Suite::Tournament => "tournament",
            Suite::Search => "search",
            Suite::Reductions => "reductions",
            Suite::Twosat => "twosat",
            Suite::Approx => "approx",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| Error::invalid(format!("unknown suite {s:?}")))
    }
}

/// `a..b` and `a..=b` are both inclusive; a bare `b` means `1..=b`.
pub fn parse_range(s: &str) -> Result<RangeInclusive<usize>> {
    let bad = || Error::invalid(format!("bad range {s:?}, expected a..b"));
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (a.parse().map_err(|_| bad())?, b.trim_start_matches('=').parse().map_err(|_| bad())?),
        None => (1, s.parse().map_err(|_| bad())?),
    };
    if a > b {
        return Err(bad());
    }
    Ok(a..=b)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchParams {
    pub n: RangeInclusive<usize>,
    pub seed: u64,
    pub trials: usize,
}

impl BenchParams {
    pub fn defaults(suite: Suite) -> Self {
        let n = match suite {
            Suite::Sorting => 1..=64,
            Suite::Tournament => 3..=64,
            Suite::Search => 1..=12,
            Suite::Reductions | Suite::Approx => 1..=1,
            Suite::Twosat => 1..=12,
        };
        BenchParams { n, seed: 0, trials: 100 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Table {
    pub suite: Suite,
    pub params: BenchParams,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Value>>,
}

impl Table {
    /// Compact JSON, one line, newline-terminated.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string(self).expect("tables serialize");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let cell = |v: &Value| match v {
            Value::String(s) => s.clone(),
            Value::Null => "-".into(),
            other => other.to_string(),
        };
        let cells: Vec<Vec<String>> = self.rows.iter().map(|r| r.iter().map(cell).collect()).collect();
        let width: Vec<usize> =
            (0..self.columns.len()).map(|c| cells.iter().map(|r| r[c].len()).chain([self.columns[c].len()]).max().unwrap()).collect();
        let mut s = String::new();
        let line = |s: &mut String, r: &[String]| {
            let padded: Vec<String> = r.iter().zip(&width).map(|(x, w)| format!("{x:>w$}")).collect();
            writeln!(s, "{}", padded.join("  ").trim_end()).unwrap();
        };
        line(&mut s, &self.columns.iter().map(|c| c.to_string()).collect::<Vec<_>>());
        for r in &cells {
            line(&mut s, r);
        }
        s
    }

    /// Every `ok` column is true.
    pub fn all_ok(&self) -> bool {
        self.columns
            .iter()
            .enumerate()
            .filter(|(_, c)| c.starts_with("ok"))
            .all(|(i, _)| self.rows.iter().all(|r| r[i] == Value::Bool(true)))
    }
}

fn rng_for(seed: u64, n: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ n as u64)
}

fn random_perms(n: usize, trials: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<u32>> {
    (0..trials)
        .map(|_| {
            let mut p: Vec<u32> = (0..n as u32).collect();
            p.shuffle(rng);
            p
        })
        .collect()
}

/// Worst count of `f` over the permutations.
fn worst<F: FnMut(&mut CountingComparator<u32>)>(perms: &[Vec<u32>], mut f: F) -> u64 {
    perms
        .iter()
        .map(|p| {
            let mut c = CountingComparator::new(p.clone()).expect("distinct keys");
            f(&mut c);
            c.comparisons()
        })
        .max()
        .unwrap_or(0)
}

fn sorting(p: &BenchParams) -> Table {
    let rows =
        p.n.clone()
            .map(|n| {
                let perms = random_perms(n, p.trials, &mut rng_for(p.seed, n));
                let measured = worst(&perms, |c| {
                    let order = merge_insertion_sort(c);
                    assert!(order.windows(2).all(|w| c.keys()[w[0]] < c.keys()[w[1]]), "merge insertion mis-sorted");
                });
                let fn_ = f_n(n as u64);
                vec![json!(n), json!(ceil_log2_factorial(n as u64)), json!(fn_), json!(measured), json!(measured <= fn_)]
            })
            .collect();
    Table { suite: Suite::Sorting, params: p.clone(), columns: vec!["n", "ceil_log2_n_fact", "f_n", "measured", "ok"], rows }
}

fn tournament(p: &BenchParams) -> Table {
    let rows =
        p.n.clone()
            .filter(|&n| n >= 3)
            .map(|n| {
                let perms = random_perms(n, p.trials, &mut rng_for(p.seed, n));
                let lg = ceil_log2(n as u64) as u64;
                let t = n.div_ceil(2);
                let mx = worst(&perms, |c| {
                    tournament_max(c);
                });
                let mm = worst(&perms, |c| {
                    max_and_min(c).unwrap();
                });
                let t2 = worst(&perms, |c| {
                    top_two(c).unwrap();
                });
                let t3 = worst(&perms, |c| {
                    top_three(c).unwrap();
                });
                let st = worst(&perms, |c| {
                    select_t_tournament(c, t).unwrap();
                });
                let sl = worst(&perms, |c| {
                    select_t_linear(c, t).unwrap();
                });
                let (n64, t64) = (n as u64, t as u64);
                let b_mm = (3 * n64).div_ceil(2) - 2;
                let b_t2 = n64 - 2 + lg;
                let b_t3 = top_three_budget(n64);
                let b_st = select_t_tournament_budget(n64, t64);
                let b_sl = select_t_linear_budget(n64);
                let ok = mx == n64 - 1 && mm <= b_mm && t2 <= b_t2 && t3 <= b_t3 && st <= b_st && (n <= 32 || sl as i64 <= b_sl);
                vec![
                    json!(n),
                    json!(mx),
                    json!(mm),
                    json!(b_mm),
                    json!(t2),
                    json!(b_t2),
                    json!(t3),
                    json!(b_t3),
                    json!(st),
                    json!(b_st),
                    json!(sl),
                    if n > 32 { json!(b_sl) } else { Value::Null },
                    json!(ok),
                ]
            })
            .collect();
    Table {
        suite: Suite::Tournament,
        params: p.clone(),
        columns: vec![
            "n",
            "max",
            "max_min",
            "bound",
            "top2",
            "bound",
            "top3",
            "bound",
            "select_tour",
            "bound",
            "select_lin",
            "bound",
            "ok",
        ],
        rows,
    }
}

fn search(p: &BenchParams) -> Table {
    let rows =
        p.n.clone()
            .filter(|&n| n >= 1)
            .map(|n| {
                let radio = (1..=n)
                    .map(|b| {
                        let mut t = FixedRadioactive::new(b);
                        assert_eq!(find_radioactive(n, &mut t).unwrap(), b);
                        t.tests()
                    })
                    .max()
                    .unwrap();
                let coins = CoinVerdict::all_worlds(n)
                    .into_iter()
                    .map(|w| {
                        let mut b = TruthfulBalance::new(w);
                        assert_eq!(find_counterfeit(n, &mut b).unwrap(), w);
                        b.weighings()
                    })
                    .max()
                    .unwrap();
                let bitonic = (1..=n)
                    .map(|peak| {
                        let vals: Vec<i64> = (1..=n as i64)
                            .map(|i| if i as usize <= peak { 2 * i } else { 2 * peak as i64 - 2 * (i - peak as i64) - 1 })
                            .collect();
                        let mut pr = SliceProbe::new(vals);
                        bitonic_max(n, &mut pr).unwrap();
                        pr.probes()
                    })
                    .max()
                    .unwrap();
                let group = (n >= 3).then(|| {
                    (0u32..1 << n)
                        .filter(|m| 2 * m.count_ones() as usize > n)
                        .map(|m| {
                            let honest: Vec<bool> = (0..n).map(|i| m >> i & 1 == 1).collect();
                            let mut w = FixedWorld::new(honest.clone(), LiarPolicy::AlwaysLie);
                            assert_eq!(classify_group(&mut w).unwrap(), honest);
                            w.questions()
                        })
                        .max()
                        .unwrap()
                });
                let (b_r, b_c, b_b) = (ceil_log2(n as u64) as u64, coin_budget(n as u64) as u64, bitonic_budget(n));
                let b_g = (n >= 3).then(|| group_budget(n));
                let ok = radio <= b_r && coins <= b_c && bitonic <= b_b && group.zip(b_g).is_none_or(|(g, b)| g <= b);
                vec![
                    json!(n),
                    json!(radio),
                    json!(b_r),
                    json!(coins),
                    json!(b_c),
                    json!(bitonic),
                    json!(b_b),
                    json!(group),
                    json!(b_g),
                    json!(ok),
                ]
            })
            .collect();
    Table {
        suite: Suite::Search,
        params: p.clone(),
        columns: vec!["n", "radioactive", "bound", "counterfeit", "bound", "bitonic", "bound", "who_is_who", "bound", "ok"],
        rows,
    }
}

fn reductions(p: &BenchParams) -> Result<Table> {
    let limits = OracleLimits::from_env()?;
    let mut rows = Vec::new();
    for kind in ReductionKind::ALL {
        let out = check_reduction_suite(kind, &limits)?;
        rows.push(vec![json!(kind.to_string()), json!(out.instances), json!(out.failures.len()), json!(out.failures.is_empty())]);
    }
    Ok(Table { suite: Suite::Reductions, params: p.clone(), columns: vec!["reduction", "instances", "failures", "ok"], rows })
}

fn twosat(p: &BenchParams) -> Result<Table> {
    let mut rows = Vec::new();
    for n in p.n.clone().filter(|&n| (1..=20).contains(&n)) {
        let out = twosat_random(p.trials, n, p.seed ^ n as u64)?;
        rows.push(vec![json!(n), json!(out.formulas), json!(out.unsat), json!(out.failures.len()), json!(out.failures.is_empty())]);
    }
    Ok(Table { suite: Suite::Twosat, params: p.clone(), columns: vec!["max_n", "formulas", "unsat", "failures", "ok"], rows })
}

fn approx(p: &BenchParams) -> Result<Table> {
    let mut rows = Vec::new();
    for alg in Algorithm::ALL {
        let mut worst = Q::from_integer(1);
        let mut bound: Option<Q> = None;
        let mut violations = 0;
        for i in 0..p.trials as u64 {
            let r = run_random(alg, p.seed.wrapping_add(i))?;
            // set cover and knapsack bounds vary by instance; keep the one beside the worst ratio
            let ratio = r.ratio.unwrap();
            if i == 0 || ratio > worst {
                worst = ratio;
                bound = r.bound;
            }
            violations += usize::from(!r.within_bound());
        }
        rows.push(vec![
            json!(alg.name()),
            json!(p.trials),
            json!(worst.to_string()),
            bound.map_or(Value::Null, |b| json!(b.to_string())),
            json!(violations),
            json!(violations == 0),
        ]);
    }
    Ok(Table {
        suite: Suite::Approx,
        params: p.clone(),
        columns: vec!["algorithm", "runs", "worst_ratio", "bound_at_worst", "violations", "ok"],
        rows,
    })
}

pub fn run_suite(suite: Suite, p: &BenchParams) -> Result<Table> {
    match suite {
        Suite::Sorting => Ok(sorting(p)),
        Suite::Tournament => Ok(tournament(p)),
        Suite::Search => {
            if *p.n.end() > 20 {
                return Err(Error::TooLarge("search suite enumerates every world; keep n <= 20".into()));
            }
            Ok(search(p))
        }
        Suite::Reductions => reductions(p),
        Suite::Twosat => twosat(p),
        Suite::Approx => approx(p),
    }
}
