//! `combinlab`: run the library's solvers, counters, reductions and
//! approximation algorithms on instance files.
//!
//! Exit codes: 0 success, 1 negative answer, 2 bad input or usage, 3 an
//! instance above an oracle's size limit.

use std::fmt::Write as _;
use std::fs;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use combinlab::approx::{self, Algorithm, ApproxReport, MetricTsp, Q};
use combinlab::bench::{parse_range, run_suite, BenchParams, Suite};
use combinlab::complexity::brute::{brute_force_decide_with, OracleLimits};
use combinlab::complexity::verify::tour_cost;
use combinlab::complexity::{reduce, twosat_solve, verify_witness, Problem, ReductionKind, SetSystem, TwoSat, Witness};
use combinlab::dp::{self, AllocationInstance};
use combinlab::generate::{generate, Family, GenParams};
use combinlab::graph;
use combinlab::io::{self, from_json, parse_dimacs, parse_graph, parse_int_list, parse_matrix, parse_weight, to_json};
use combinlab::oracles::{Comparator, CountingComparator};
use combinlab::paths;
use combinlab::search_games::{bitonic_budget, bitonic_max, Probe, SliceProbe};
use combinlab::sorting::{self, sort_budgets};
use combinlab::tournament;
use combinlab::{Error, Result};
use serde_json::json;

#[derive(Parser)]
#[command(name = "combinlab", version, about = "Query-counted algorithms, NP reductions and approximation ratios")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Solve a graph, DP or search instance, or decide an NP instance by exhaustive search.
    Solve {
        problem: String,
        file: String,
        /// Size parameter for clique, independent_set, vertex_cover and coloring text inputs.
        #[arg(long)]
        k: Option<usize>,
        /// Tour bound for tsp text inputs.
        #[arg(long)]
        bound: Option<i64>,
        /// Source vertex (1-based) for dijkstra.
        #[arg(long, default_value_t = 1)]
        source: usize,
    },
    /// Sort a list of integers with a counting comparator.
    Sort {
        #[arg(value_enum)]
        algo: SortAlgo,
        file: String,
        /// Report comparisons next to the closed-form budgets.
        #[arg(long)]
        count: bool,
    },
    /// Selection from a list of integers: largest, extremes, top two or three, t-th largest.
    Select {
        #[arg(value_enum)]
        algo: SelectAlgo,
        file: String,
        /// Rank from the top for tournament and linear selection.
        #[arg(long, default_value_t = 1)]
        t: usize,
        #[arg(long)]
        count: bool,
    },
    /// Apply a reduction; prints the target instance and the legend of target indices.
    Reduce {
        kind: String,
        file: String,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        bound: Option<i64>,
        /// Map a source witness (JSON) to the target.
        #[arg(long)]
        forward: Option<String>,
        /// Map a target witness (JSON) back to the source.
        #[arg(long)]
        backward: Option<String>,
        /// Write the target instance as JSON to this file.
        #[arg(long)]
        target_out: Option<String>,
    },
    /// Check a witness (JSON) against an instance.
    Verify {
        problem: String,
        instance: String,
        witness: String,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        bound: Option<i64>,
    },
    /// Solve a 2-CNF formula given in DIMACS format.
    Twosat { cnf: String },
    /// Run an approximation algorithm, optionally against the exact optimum.
    Approx {
        algo: String,
        file: String,
        #[arg(long)]
        oracle: bool,
        /// Accuracy for knapsack-fptas, integer or p/q.
        #[arg(long, default_value = "1/2")]
        eps: String,
    },
    /// Bound-versus-measured tables: sorting, tournament, search, reductions, twosat, approx.
    Bench {
        suite: String,
        /// Size range `a..b` (inclusive).
        #[arg(long)]
        n: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        trials: Option<usize>,
    },
    /// Generate an instance file.
    Gen {
        family: String,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long, default_value_t = 0.4)]
        p: f64,
        #[arg(long, default_value = "1")]
        eps: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SortAlgo {
    Insertion,
    Merge,
    MergeInsertion,
}

#[derive(Clone, Copy, ValueEnum)]
enum SelectAlgo {
    Max,
    MaxMin,
    Top2,
    Top3,
    Tournament,
    Linear,
}

/// Text printed on stdout and the exit code.
struct Out {
    text: String,
    code: u8,
}

impl Out {
    fn ok(text: String) -> Self {
        Out { text, code: 0 }
    }

    fn no(text: String) -> Self {
        Out { text, code: 1 }
    }
}

fn read(path: &str) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::invalid(format!("{path}: {e}")))
}

fn canonical(name: &str) -> String {
    name.replace('-', "_")
}

fn need<T>(x: Option<T>, flag: &str, problem: &str) -> Result<T> {
    x.ok_or_else(|| Error::invalid(format!("{problem} text input needs --{flag}")))
}

/// JSON instances carry their own tag; text instances take their format from the problem name.
fn load_problem(name: &str, path: &str, k: Option<usize>, bound: Option<i64>) -> Result<Problem> {
    let name = canonical(name);
    let text = read(path)?;
    let p = if text.trim_start().starts_with('{') {
        from_json::<Problem>(&text)?
    } else {
        match name.as_str() {
            "sat" => Problem::Sat { formula: parse_dimacs(&text)? },
            "three_sat" => Problem::ThreeSat { formula: parse_dimacs(&text)? },
            "clique" | "independent_set" | "vertex_cover" | "coloring" => {
                let graph = parse_graph(&text)?.graph()?;
                let k = need(k, "k", &name)?;
                match name.as_str() {
                    "clique" => Problem::Clique { graph, k },
                    "independent_set" => Problem::IndependentSet { graph, k },
                    "vertex_cover" => Problem::VertexCover { graph, k },
                    _ => Problem::Coloring { graph, k },
                }
            }
            "ham_cycle" => Problem::HamCycle { graph: parse_graph(&text)?.graph()? },
            "ham_circuit" => Problem::HamCircuit { digraph: parse_graph(&text)?.digraph()? },
            "tsp" => Problem::Tsp { cost: parse_matrix(&text)?, bound: need(bound, "bound", "tsp")? },
            other => return Err(Error::invalid(format!("{other} instances are read as JSON"))),
        }
    };
    // sat-to-3sat and friends also take 3-SAT input
    let compatible = p.name() == name || (name == "sat" && p.name() == "three_sat");
    if !compatible {
        return Err(Error::invalid(format!("instance is {}, expected {name}", p.name())));
    }
    p.validate()?;
    Ok(p)
}

fn one_based(v: &[usize]) -> String {
    v.iter().map(|x| (x + 1).to_string()).collect::<Vec<_>>().join(" ")
}

fn ints(path: &str) -> Result<Vec<i64>> {
    parse_int_list(&read(path)?)
}

#[derive(serde::Deserialize)]
struct KnapsackFile {
    values: Vec<u64>,
    volumes: Vec<u64>,
    capacity: u64,
}

#[derive(serde::Deserialize)]
struct LcsFile {
    x: String,
    y: String,
}

fn solve(problem: &str, path: &str, k: Option<usize>, bound: Option<i64>, source: usize, fmt: Format) -> Result<Out> {
    let graph_file = || -> Result<io::GraphFile> { parse_graph(&read(path)?) };
    let json_out = |v: serde_json::Value| Out::ok(to_json(&v));
    let p = canonical(problem);
    Ok(match p.as_str() {
        "euler" | "euler_fleury" => {
            let g = graph_file()?.graph()?;
            let r = if p == "euler" { graph::euler_cycle(&g) } else { graph::euler_cycle_fleury(&g) };
            match r {
                Ok(walk) if fmt == Format::Json => json_out(json!({ "eulerian": true, "edges": g.m(), "walk": walk })),
                Ok(walk) => Out::ok(format!("closed walk of {} edges: {}\n", walk.len().saturating_sub(1), one_based(&walk))),
                Err(e) if fmt == Format::Json => Out::no(to_json(&json!({ "eulerian": false, "reason": e.to_string() }))),
                Err(e) => Out::no(format!("not Eulerian: {e}\n")),
            }
        }
        "components" => {
            let comps = graph::connected_components(&graph_file()?.graph()?);
            match fmt {
                Format::Json => json_out(json!(comps)),
                Format::Text => Out::ok(comps.iter().map(|c| format!("{}\n", one_based(c))).collect()),
            }
        }
        "bfs" => {
            let f = graph::bfs_forest(&graph_file()?.graph()?);
            match fmt {
                Format::Json => json_out(json!({ "order": f.order, "tree_edges": f.tree_edges })),
                Format::Text => Out::ok(format!(
                    "order: {}\ntree edges: {}\n",
                    one_based(&f.order),
                    f.tree_edges.iter().map(|&(a, b)| format!("{}-{}", a + 1, b + 1)).collect::<Vec<_>>().join(" ")
                )),
            }
        }
        "scc" => {
            let comps = graph::scc_kosaraju(&graph_file()?.digraph()?);
            match fmt {
                Format::Json => json_out(json!(comps)),
                Format::Text => Out::ok(comps.iter().map(|c| format!("{}\n", one_based(c))).collect()),
            }
        }
        "closure" => {
            let c = paths::transitive_closure(&graph_file()?.digraph()?);
            let m: Vec<Vec<i64>> = c.iter().map(|r| r.iter().map(|&b| i64::from(b)).collect()).collect();
            match fmt {
                Format::Json => json_out(json!(m)),
                Format::Text => Out::ok(io::write_matrix(&m)),
            }
        }
        "dijkstra" => {
            let g = graph_file()?.weighted_digraph()?;
            if source == 0 || source > g.n() {
                return Err(Error::invalid(format!("source {source} outside 1..={}", g.n())));
            }
            let sp = paths::dijkstra(&g, source - 1)?;
            let dist: Vec<String> = sp.dist.iter().map(|d| d.to_string()).collect();
            match fmt {
                Format::Json => json_out(json!({ "source": source - 1, "dist": dist, "settled": sp.settled })),
                Format::Text => Out::ok(dist.iter().enumerate().map(|(v, d)| format!("{} {d}\n", v + 1)).collect()),
            }
        }
        "floyd" => {
            let t = paths::floyd_warshall(&graph_file()?.weighted_digraph()?);
            let d: Vec<Vec<String>> = t.d.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect();
            match fmt {
                Format::Json => json_out(json!({ "dist": d, "negative_cycle_vertices": t.negative_cycle_vertices })),
                Format::Text => {
                    let mut s: String = d.iter().map(|r| format!("{}\n", r.join(" "))).collect();
                    if !t.negative_cycle_vertices.is_empty() {
                        writeln!(s, "negative cycle through: {}", one_based(&t.negative_cycle_vertices)).unwrap();
                    }
                    Out::ok(s)
                }
            }
        }
        "mst_prim" | "mst_kruskal" => {
            let g = graph_file()?.weighted_graph()?;
            let t = if p == "mst_prim" { paths::prim(&g)? } else { paths::kruskal(&g)? };
            match fmt {
                Format::Json => json_out(json!({
                    "total": t.total.to_string(),
                    "edges": t.edges.iter().map(|(u, v, w)| json!([u, v, w.to_string()])).collect::<Vec<_>>(),
                })),
                Format::Text => {
                    let mut s = format!("total {}\n", t.total);
                    for (u, v, w) in &t.edges {
                        writeln!(s, "{} {} {w}", u + 1, v + 1).unwrap();
                    }
                    Out::ok(s)
                }
            }
        }
        "knapsack" | "knapsack_greedy" => {
            let f: KnapsackFile = from_json(&read(path)?)?;
            let s = if p == "knapsack" {
                dp::knapsack_pareto(&f.values, &f.volumes, f.capacity)?
            } else {
                dp::greedy_knapsack_by_density(&f.values, &f.volumes, f.capacity)?
            };
            match fmt {
                Format::Json => json_out(json!(s)),
                Format::Text => Out::ok(format!("value {} volume {} items {}\n", s.value, s.volume, one_based(&s.items))),
            }
        }
        "lcs" => {
            let f: LcsFile = from_json(&read(path)?)?;
            let (x, y): (Vec<char>, Vec<char>) = (f.x.chars().collect(), f.y.chars().collect());
            let (len, seq, _) = dp::lcs(&x, &y);
            let seq: String = seq.into_iter().collect();
            match fmt {
                Format::Json => json_out(json!({ "length": len, "lcs": seq })),
                Format::Text => Out::ok(format!("{len} {seq}\n")),
            }
        }
        "matrix_chain" => {
            let dims: Vec<u64> = ints(path)?
                .into_iter()
                .map(|x| u64::try_from(x).map_err(|_| Error::invalid("negative dimension")))
                .collect::<Result<_>>()?;
            let (cost, parens, _) = dp::matrix_chain(&dims)?;
            match fmt {
                Format::Json => json_out(json!({ "cost": cost.to_string(), "order": parens })),
                Format::Text => Out::ok(format!("{cost} {parens}\n")),
            }
        }
        "triangulation" => {
            // vertex weights p_0..p_n, triangle weight p_a p_b p_c
            let w = ints(path)?;
            if w.len() < 3 {
                return Err(Error::invalid("a polygon needs at least 3 vertices"));
            }
            let t = dp::polygon_triangulation(w.len() - 1, |a, b, c| w[a] * w[b] * w[c])?;
            match fmt {
                Format::Json => json_out(json!({ "cost": t.cost.to_string(), "diagonals": t.diagonals })),
                Format::Text => {
                    Out::ok(format!("{} {}\n", t.cost, t.diagonals.iter().map(|(a, b)| format!("{a}-{b}")).collect::<Vec<_>>().join(" ")))
                }
            }
        }
        "allocate" => {
            let inst: AllocationInstance = from_json(&read(path)?)?;
            let (best, plan) = dp::allocate(&inst)?;
            match fmt {
                Format::Json => json_out(json!({ "profit": best, "plan": plan })),
                Format::Text => Out::ok(format!("{best} {}\n", plan.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "))),
            }
        }
        "bitonic" => {
            let v = ints(path)?;
            let n = v.len();
            let mut probe = SliceProbe::new(v);
            let (at, value) = bitonic_max(n, &mut probe)?;
            match fmt {
                Format::Json => json_out(json!({ "position": at, "value": value, "probes": probe.probes(), "budget": bitonic_budget(n) })),
                Format::Text => Out::ok(format!("peak at {at} value {value} probes {} budget {}\n", probe.probes(), bitonic_budget(n))),
            }
        }
        _ => {
            let inst = load_problem(&p, path, k, bound)?;
            match brute_force_decide_with(&inst, &OracleLimits::from_env()?)? {
                Some(w) => Out::ok(to_json(&w)),
                None => Out::no(if fmt == Format::Json { "null\n".into() } else { "no\n".into() }),
            }
        }
    })
}

fn comparator(path: &str) -> Result<CountingComparator<i64>> {
    Ok(CountingComparator::with_tie_break(ints(path)?))
}

fn sort_cmd(algo: SortAlgo, path: &str, count: bool, fmt: Format) -> Result<Out> {
    let mut c = comparator(path)?;
    let order = match algo {
        SortAlgo::Insertion => sorting::insertion_sort(&mut c),
        SortAlgo::Merge => sorting::merge_sort_grouped(&mut c),
        SortAlgo::MergeInsertion => sorting::merge_insertion_sort(&mut c),
    };
    let sorted: Vec<i64> = order.iter().map(|&i| c.keys()[i]).collect();
    let b = sort_budgets(sorted.len() as u64);
    Ok(Out::ok(match fmt {
        Format::Json => to_json(&json!({ "sorted": sorted, "comparisons": c.comparisons(), "budgets": b })),
        Format::Text => {
            let mut s = sorted.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
            s.push('\n');
            if count {
                writeln!(
                    s,
                    "comparisons {}  ceil(log2 n!) {}  A(n) {}  B(n) {}  F(n) {}",
                    c.comparisons(),
                    b.info_lower,
                    b.a_n,
                    b.b_n,
                    b.f_n
                )
                .unwrap();
            }
            s
        }
    }))
}

fn select_cmd(algo: SelectAlgo, path: &str, t: usize, count: bool, fmt: Format) -> Result<Out> {
    let mut c = comparator(path)?;
    let n = c.len();
    if n == 0 {
        return Err(Error::invalid("empty input"));
    }
    let picked: Vec<usize> = match algo {
        SelectAlgo::Max => vec![tournament::tournament_max(&mut c).0],
        SelectAlgo::MaxMin => {
            let (a, b) = tournament::max_and_min(&mut c)?;
            vec![a, b]
        }
        SelectAlgo::Top2 => {
            let (a, b) = tournament::top_two(&mut c)?;
            vec![a, b]
        }
        SelectAlgo::Top3 => {
            let (a, b, d) = tournament::top_three(&mut c)?;
            vec![a, b, d]
        }
        SelectAlgo::Tournament => vec![tournament::select_t_tournament(&mut c, t)?],
        SelectAlgo::Linear => vec![tournament::select_t_linear(&mut c, t)?],
    };
    let values: Vec<i64> = picked.iter().map(|&i| c.keys()[i]).collect();
    Ok(Out::ok(match fmt {
        Format::Json => to_json(&json!({ "indices": picked, "values": values, "comparisons": c.comparisons() })),
        Format::Text => {
            let mut s = values.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
            s.push('\n');
            if count {
                writeln!(s, "comparisons {}", c.comparisons()).unwrap();
            }
            s
        }
    }))
}

#[allow(clippy::too_many_arguments)]
fn reduce_cmd(
    kind: &str,
    path: &str,
    k: Option<usize>,
    bound: Option<i64>,
    forward: Option<&str>,
    backward: Option<&str>,
    target_out: Option<&str>,
    fmt: Format,
) -> Result<Out> {
    let kind: ReductionKind = kind.parse()?;
    let src = load_problem(kind.source_problem(), path, k, bound)?;
    let r = reduce(kind, &src)?;
    if let Some(out) = target_out {
        fs::write(out, to_json(&r.target)).map_err(|e| Error::invalid(format!("{out}: {e}")))?;
    }
    if let Some(w) = forward {
        return Ok(Out::ok(to_json(&r.forward(&from_json::<Witness>(&read(w)?)?)?)));
    }
    if let Some(w) = backward {
        return Ok(Out::ok(to_json(&r.backward(&from_json::<Witness>(&read(w)?)?)?)));
    }
    Ok(Out::ok(match fmt {
        Format::Json => to_json(&json!({ "kind": kind.name(), "target": r.target, "legend": r.legend })),
        Format::Text => {
            let mut s = to_json(&r.target);
            writeln!(s, "legend ({} entries):", r.legend.len()).unwrap();
            for (i, l) in r.legend.iter().enumerate() {
                writeln!(s, "{i:>6}  {l}").unwrap();
            }
            s
        }
    }))
}

fn verify_cmd(problem: &str, inst: &str, witness: &str, k: Option<usize>, bound: Option<i64>, fmt: Format) -> Result<Out> {
    let p = load_problem(problem, inst, k, bound)?;
    let w: Witness = from_json(&read(witness)?)?;
    let ok = verify_witness(&p, &w)?;
    let text = match fmt {
        Format::Json => to_json(&json!({ "accepted": ok })),
        Format::Text => format!("{}\n", if ok { "accepted" } else { "rejected" }),
    };
    Ok(if ok { Out::ok(text) } else { Out::no(text) })
}

fn twosat_cmd(path: &str, fmt: Format) -> Result<Out> {
    let f = parse_dimacs(&read(path)?)?;
    Ok(match (twosat_solve(&f)?, fmt) {
        (r @ TwoSat::Sat(_), Format::Json) => Out::ok(to_json(&r)),
        (r @ TwoSat::Unsat { .. }, Format::Json) => Out::no(to_json(&r)),
        (TwoSat::Sat(a), Format::Text) => {
            let lits: Vec<String> =
                a.iter().enumerate().map(|(i, &b)| if b { format!("{}", i + 1) } else { format!("-{}", i + 1) }).collect();
            Out::ok(format!("SAT\n{} 0\n", lits.join(" ")))
        }
        (TwoSat::Unsat { var }, Format::Text) => Out::no(format!("UNSAT\nx{var} and ~x{var} share a strongly connected component\n")),
    })
}

fn approx_cmd(algo: &str, path: &str, oracle: bool, eps: &str, fmt: Format) -> Result<Out> {
    use combinlab::complexity::brute::{min_set_cover, min_vertex_cover, tsp_optimum};
    let alg: Algorithm = algo.parse()?;
    let text = read(path)?;
    let limits = OracleLimits::from_env()?;
    let too_large = |what: &str, n: usize, cap: usize| {
        if oracle && n > cap {
            Err(Error::TooLarge(format!("{what} oracle: {n} > {cap}")))
        } else {
            Ok(())
        }
    };
    let (report, solution) = match alg {
        Algorithm::VcMatching | Algorithm::VcDegreeGreedy => {
            let g = parse_graph(&text)?.graph()?;
            too_large("vertex cover", g.n(), limits.vertices)?;
            let c = if alg == Algorithm::VcMatching { approx::vc_matching_2approx(&g) } else { approx::vc_degree_greedy(&g) };
            let opt = oracle.then(|| min_vertex_cover(&g).len() as i64);
            let bound = (alg == Algorithm::VcMatching).then(|| Q::from_integer(2));
            (ApproxReport::new(alg, g.n(), c.len() as i64, opt, bound, None, &g), json!(c))
        }
        Algorithm::SetCoverGreedy => {
            let s: SetSystem = from_json(&text)?;
            too_large("set cover", s.m(), limits.set_elements)?;
            let c = approx::set_cover_greedy(&s)?;
            let opt = oracle.then(|| min_set_cover(&s).map(|x| x.len() as i64)).flatten();
            let largest = s.family().iter().map(Vec::len).max().unwrap_or(0);
            (
                ApproxReport::new(alg, s.universe(), c.len() as i64, opt, Some(combinlab::intmath::harmonic(largest as u64)), None, &s),
                json!(c),
            )
        }
        Algorithm::TspDoubleTree | Algorithm::TspChristofides => {
            let inst = MetricTsp::new(parse_matrix(&text)?)?;
            too_large("TSP", inst.n(), limits.tsp_cities)?;
            let tour = if alg == Algorithm::TspDoubleTree { approx::tsp_double_tree(&inst) } else { approx::tsp_christofides(&inst)? };
            let opt = oracle.then(|| tsp_optimum(inst.cost()).0 as i64);
            let bound = if alg == Algorithm::TspDoubleTree { Q::from_integer(2) } else { Q::new(3, 2) };
            (ApproxReport::new(alg, inst.n(), tour_cost(inst.cost(), &tour) as i64, opt, Some(bound), None, &inst), json!(tour))
        }
        Algorithm::MaxCut => {
            let g = parse_graph(&text)?.graph()?;
            too_large("max cut", g.n(), limits.bool_vars)?;
            let r = approx::max_cut_local_search(&g);
            let opt = if oracle { Some(approx::max_cut_brute(&g)? as i64) } else { None };
            (ApproxReport::new(alg, g.n(), r.cut as i64, opt, Some(Q::from_integer(2)), None, &g), json!(r.side))
        }
        Algorithm::KnapsackFptas => {
            let f: KnapsackFile = from_json(&text)?;
            too_large("knapsack", f.values.len(), limits.bool_vars)?;
            let eps = parse_weight(eps)?;
            let r = approx::knapsack_fptas(&f.values, &f.volumes, f.capacity, eps)?;
            let opt = if oracle { Some(approx::knapsack_brute(&f.values, &f.volumes, f.capacity)? as i64) } else { None };
            let inst = json!({ "values": f.values, "volumes": f.volumes, "capacity": f.capacity, "eps": eps.to_string() });
            (ApproxReport::new(alg, f.values.len(), r.value as i64, opt, Some(Q::from_integer(1) + eps), None, &inst), json!(r.items))
        }
        Algorithm::BinPackFirstFit => {
            let sizes: Vec<Q> = text.split_whitespace().map(parse_weight).collect::<Result<_>>()?;
            too_large("bin packing", sizes.len(), 14)?;
            let bins = approx::bin_pack_first_fit(&sizes)?;
            let used = bins.iter().max().map_or(0, |&b| b + 1);
            let opt = if oracle { Some(approx::bin_pack_brute(&sizes)? as i64) } else { None };
            let strs: Vec<String> = sizes.iter().map(Q::to_string).collect();
            (ApproxReport::new(alg, sizes.len(), used as i64, opt, Some(Q::from_integer(2)), None, &strs), json!(bins))
        }
    };
    Ok(Out::ok(match fmt {
        Format::Json => to_json(&json!({ "report": report, "solution": solution })),
        Format::Text => {
            let mut s = format!("{} on n = {}: value {}", report.algorithm, report.n, report.heuristic);
            if let (Some(o), Some(r)) = (report.optimal, report.ratio) {
                write!(s, ", optimum {o}, ratio {r}").unwrap();
            }
            if let Some(b) = report.bound {
                write!(s, ", guarantee {b}").unwrap();
            }
            writeln!(s, "\nsolution {solution}").unwrap();
            s
        }
    }))
}

fn bench_cmd(suite: &str, n: Option<&str>, seed: u64, trials: Option<usize>, fmt: Format) -> Result<Out> {
    let suite: Suite = suite.parse()?;
    let mut p = BenchParams::defaults(suite);
    if let Some(n) = n {
        p.n = parse_range(n)?;
    }
    p.seed = seed;
    if let Some(t) = trials {
        p.trials = t;
    }
    let t = run_suite(suite, &p)?;
    let text = match fmt {
        Format::Json => t.to_json(),
        Format::Text => t.to_text(),
    };
    Ok(if t.all_ok() { Out::ok(text) } else { Out::no(text) })
}

fn gen_cmd(family: &str, n: usize, seed: u64, m: Option<usize>, p: f64, eps: &str) -> Result<Out> {
    let family: Family = family.parse()?;
    let eps = parse_weight(eps)?;
    Ok(Out::ok(generate(family, &GenParams { n, m, p, eps, seed })?))
}

fn run(cli: Cli) -> Result<Out> {
    let fmt = cli.format;
    match cli.cmd {
        Cmd::Solve { problem, file, k, bound, source } => solve(&problem, &file, k, bound, source, fmt),
        Cmd::Sort { algo, file, count } => sort_cmd(algo, &file, count, fmt),
        Cmd::Select { algo, file, t, count } => select_cmd(algo, &file, t, count, fmt),
        Cmd::Reduce { kind, file, k, bound, forward, backward, target_out } => {
            reduce_cmd(&kind, &file, k, bound, forward.as_deref(), backward.as_deref(), target_out.as_deref(), fmt)
        }
        Cmd::Verify { problem, instance, witness, k, bound } => verify_cmd(&problem, &instance, &witness, k, bound, fmt),
        Cmd::Twosat { cnf } => twosat_cmd(&cnf, fmt),
        Cmd::Approx { algo, file, oracle, eps } => approx_cmd(&algo, &file, oracle, &eps, fmt),
        Cmd::Bench { suite, n, seed, trials } => bench_cmd(&suite, n.as_deref(), seed, trials, fmt),
        Cmd::Gen { family, n, seed, m, p, eps } => gen_cmd(&family, n, seed, m, p, &eps),
    }
}

fn main() -> ExitCode {
    // clap exits with 2 on usage errors and 0 on --help
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_size_limit() { 3 } else { 2 })
        }
    }
}
