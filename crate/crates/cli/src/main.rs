// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.


//! `uppertail`: command-line front end. Results go to standard output as one
//! JSON record per line (or CSV with `--csv`); exit status is 0 on success,
//! 1 on domain errors and 2 on usage errors.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use uppertail::counting;
use uppertail::decompose;
use uppertail::graph::{generators, io, Edge, Graph, PatternGraph, SparsityContext};
use uppertail::independence;
use uppertail::ratefn::{self, PlantKind, SearchFamily};
use uppertail::sim::{self, RngSpec};
use uppertail::structures::{self, CoreParams, PeelOptions};
use uppertail::verify;

const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser)]
#[command(name = "uppertail", version, about = "Upper tails of regular subgraph counts in G(n,p)")]
struct Cli {
    /// Emit CSV (header row, 12 significant digits) instead of JSON lines.
    #[arg(long, global = true)]
    csv: bool,
    /// Seed for every randomized computation.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct PatternArgs {
    /// Built-in pattern: k3, k4, c4, c5, c6, petersen, or kM / cL for other
    /// cliques and cycles.
    #[arg(long, conflicts_with = "pattern_file")]
    pattern: Option<String>,
    /// Edge-list file holding a connected regular pattern.
    #[arg(long)]
    pattern_file: Option<PathBuf>,
}

#[derive(Args, Clone)]
struct Scale {
    /// Number of vertices (scientific notation accepted).
    #[arg(long, value_parser = parse_n)]
    n: u64,
    /// Edge probability, strictly between 0 and 1.
    #[arg(long)]
    p: f64,
}

#[derive(Args, Clone)]
struct CoreArgs {
    #[command(flatten)]
    scale: Scale,
    #[arg(long)]
    delta: f64,
    #[arg(long, default_value_t = 0.1)]
    eps: f64,
    /// Override the core edge-budget constant.
    #[arg(long)]
    c_bar: Option<f64>,
    /// Override the strong-core constant.
    #[arg(long)]
    c_star: Option<f64>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Family {
    Cliques,
    Hubs,
    Kab2,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum SimMode {
    Mean,
    Cond,
    Tail,
}

#[derive(Subcommand)]
enum Command {
    /// Rate function of the upper tail.
    Rate {
        #[command(flatten)]
        pattern: PatternArgs,
        #[arg(long)]
        delta: f64,
        #[command(flatten)]
        scale: Scale,
    },
    /// Root θ of P_H(θ) = 1 + δ.
    Theta {
        #[command(flatten)]
        pattern: PatternArgs,
        #[arg(long)]
        delta: f64,
    },
    /// Labelled copies of the pattern in a graph.
    Count {
        #[command(flatten)]
        pattern: PatternArgs,
        #[arg(long)]
        graph: PathBuf,
        /// Also report the copies through every edge.
        #[arg(long)]
        per_edge: bool,
    },
    /// E[N(H, G(n,p) ∪ g)] for a planted graph g.
    CondExp {
        #[command(flatten)]
        pattern: PatternArgs,
        #[command(flatten)]
        scale: Scale,
        #[arg(long, conflicts_with = "plant")]
        graph: Option<PathBuf>,
        /// Planted structure descriptor, e.g. clique(12) or union(hub(2),kab(2,50)).
        #[arg(long)]
        plant: Option<String>,
        /// Check the planting inequality in exact rational arithmetic.
        #[arg(long)]
        exact: bool,
    },
    /// Evaluate the seed, core and strong-core predicates.
    Classify {
        #[command(flatten)]
        pattern: PatternArgs,
        #[arg(long)]
        graph: PathBuf,
        #[command(flatten)]
        core: CoreArgs,
    },
    /// Peel a graph to its core (or strong core, or an explicit threshold).
    Peel {
        #[command(flatten)]
        pattern: PatternArgs,
        #[arg(long)]
        graph: PathBuf,
        #[command(flatten)]
        core: CoreArgs,
        #[arg(long)]
        strong: bool,
        /// Explicit per-edge copy threshold instead of the core threshold.
        #[arg(long)]
        threshold: Option<f64>,
        /// Write the peeled graph to this edge-list file.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Low/high degree edge classes, optionally with the high/low/bad split.
    Partition {
        #[arg(long)]
        graph: PathBuf,
        /// Degree threshold D; derived from the pattern and ε when absent.
        #[arg(long)]
        d: Option<usize>,
        #[command(flatten)]
        pattern: PatternArgs,
        #[arg(long)]
        eps: Option<f64>,
        /// Also compute G_high / G_low / G_bad (needs --n, --p, --delta).
        #[arg(long)]
        high_low: bool,
        #[arg(long, value_parser = parse_n)]
        n: Option<u64>,
        #[arg(long)]
        p: Option<f64>,
        #[arg(long)]
        delta: Option<f64>,
        #[arg(long)]
        c_big0: Option<f64>,
    },
    /// Cycle/edge cover of a regular pattern avoiding an edge, or an ordered
    /// cover for an adjacent pair.
    Decompose {
        #[command(flatten)]
        pattern: PatternArgs,
        /// Edge to avoid, as "u,v".
        #[arg(long, conflicts_with = "pair")]
        edge: Option<String>,
        /// Adjacent pair "u1,u2,v" meaning edges (u1,u2) and (u2,v).
        #[arg(long)]
        pair: Option<String>,
    },
    /// König edge colouring of a bipartite graph, or a perfect matching
    /// avoiding given edges of a regular bipartite graph.
    Color {
        #[arg(long)]
        graph: PathBuf,
        /// Edges to avoid, as "u,v;u,v".
        #[arg(long)]
        avoid: Option<String>,
    },
    /// Realize a planted structure on n vertices.
    Plant {
        #[arg(long)]
        kind: String,
        #[arg(long, value_parser = parse_n)]
        n: u64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Upper bound from the variational problem over planted families.
    Varbound {
        #[command(flatten)]
        pattern: PatternArgs,
        #[arg(long)]
        delta: f64,
        #[command(flatten)]
        scale: Scale,
        #[arg(long, value_enum, default_values_t = [Family::Cliques])]
        family: Vec<Family>,
        /// Largest size searched in each chain family.
        #[arg(long)]
        max: Option<usize>,
        /// Extra explicit candidates (descriptors).
        #[arg(long)]
        candidate: Vec<String>,
    },
    /// Run the lemma checks; exits 1 if a gating check fails.
    Verify {
        #[arg(long, default_value_t = 50)]
        trials: u64,
        /// Check ids (or id prefixes), comma separated.
        #[arg(long, value_delimiter = ',')]
        lemma: Vec<String>,
    },
    /// Monte Carlo estimates in G(n,p).
    Simulate {
        #[command(flatten)]
        pattern: PatternArgs,
        #[command(flatten)]
        scale: Scale,
        #[arg(long, value_enum, default_value_t = SimMode::Mean)]
        mode: SimMode,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long)]
        plant: Option<String>,
        #[arg(long)]
        graph: Option<PathBuf>,
        #[arg(long)]
        delta: Option<f64>,
    },
}

fn parse_n(s: &str) -> Result<u64, String> {
    let x: f64 = s.trim().parse().map_err(|_| format!("{s:?} is not a number"))?;
    if !((1.0..=9.007_199_254_740_992e15).contains(&x) && x.fract() == 0.0) {
        return Err(format!("{s:?} is not a positive integer"));
    }
    Ok(x as u64)
}

fn parse_ints(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(|t| t.trim().parse().with_context(|| format!("{s:?}: expected comma-separated vertices")))
        .collect()
}

fn parse_edge(s: &str) -> Result<Edge> {
    match parse_ints(s)?.as_slice() {
        [u, v] => Ok((*u, *v)),
        _ => bail!("{s:?}: expected an edge \"u,v\""),
    }
}

fn builtin_pattern(name: &str) -> Result<Graph> {
    let lower = name.to_ascii_lowercase();
    let bad = || anyhow!("unknown pattern {name:?}");
    let g = match lower.as_str() {
        "petersen" => generators::petersen(),
        "k33" => generators::complete_bipartite(3, 3)?,
        s if s.starts_with('k') => generators::complete(s[1..].parse().map_err(|_| bad())?)?,
        s if s.starts_with('c') => generators::cycle(s[1..].parse().map_err(|_| bad())?)?,
        _ => return Err(bad()),
    };
    Ok(g)
}

fn read_graph(path: &PathBuf) -> Result<Graph> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read graph file {}", path.display()))?;
    io::parse_edge_list(&text).with_context(|| format!("malformed graph file {}", path.display()))
}

impl PatternArgs {
    fn load(&self) -> Result<(PatternGraph, String)> {
        let (g, label) = match (&self.pattern, &self.pattern_file) {
            (Some(name), _) => (builtin_pattern(name)?, name.clone()),
            (None, Some(path)) => (read_graph(path)?, path.display().to_string()),
            (None, None) => bail!("a pattern is required (--pattern or --pattern-file)"),
        };
        let h = PatternGraph::new(g).with_context(|| format!("invalid pattern {label}"))?;
        Ok((h, label))
    }
}

fn context(scale: &Scale) -> Result<SparsityContext> {
    Ok(SparsityContext::new(scale.n, scale.p)?)
}

/// Scales echoed with every computation at a given `(n, p)`.
fn scales(h: &PatternGraph, ctx: &SparsityContext) -> Value {
    json!({
        "n": ctx.n(),
        "p": ctx.p(),
        "log_inv_p": ctx.log_inv_p(),
        "n2_p_delta": ctx.edge_scale(h.delta()),
        "n_v_p_e": ctx.copy_scale(h),
        "n_p_half_delta": ctx.regime_parameter(h.delta()),
    })
}

fn pattern_info(h: &PatternGraph, label: &str) -> Value {
    json!({ "name": label, "v": h.v(), "e": h.e(), "delta": h.delta() })
}

fn core_params(h: &PatternGraph, core: &CoreArgs) -> Result<CoreParams> {
    let mut params = CoreParams::new(h.clone(), context(&core.scale)?, core.delta, core.eps)?;
    if let Some(c) = core.c_bar {
        params = params.with_c_bar(c)?;
    }
    if let Some(c) = core.c_star {
        params = params.with_c_star(c)?;
    }
    Ok(params)
}

fn params_json(params: &CoreParams) -> Value {
    json!({
        "delta": params.delta(),
        "eps": params.eps(),
        "c_bar": params.c_bar(),
        "c_star": params.c_star(),
        "degree_threshold": params.degree_threshold(),
        "core_edge_threshold": params.core_edge_threshold(),
        "strong_edge_threshold": params.strong_edge_threshold(),
        "c0": params.c0(),
        "default_c_big0": params.default_c_big0(),
    })
}

fn host(graph: &Option<PathBuf>, plant: &Option<String>, n: u64) -> Result<(Graph, String)> {
    match (graph, plant) {
        (Some(path), _) => Ok((read_graph(path)?, path.display().to_string())),
        (None, Some(desc)) => {
            let kind = PlantKind::parse(desc)?;
            Ok((ratefn::plant(&kind, n)?.graph, kind.descriptor()))
        }
        (None, None) => bail!("a planted graph is required (--graph or --plant)"),
    }
}

struct Record {
    command: &'static str,
    parameters: Value,
    result: Value,
}

fn run(cli: &Cli) -> Result<(Vec<Record>, bool)> {
    let seed = cli.seed;
    let mut ok = true;
    let rec = |command, parameters, result| Record {
        command,
        parameters,
        result,
    };
    let records = match &cli.command {
        Command::Rate { pattern, delta, scale } => {
            let (h, label) = pattern.load()?;
            let ctx = context(scale)?;
            let r = ratefn::rate_function(&h, *delta, &ctx)?;
            vec![rec(
                "rate",
                json!({ "pattern": pattern_info(&h, &label), "delta": delta, "scales": scales(&h, &ctx) }),
                serde_json::to_value(r)?,
            )]
        }
        Command::Theta { pattern, delta } => {
            let (h, label) = pattern.load()?;
            let theta = independence::theta(&h, *delta)?;
            let poly = h.independence_polynomial();
            vec![rec(
                "theta",
                json!({ "pattern": pattern_info(&h, &label), "delta": delta }),
                json!({
                    "theta": theta,
                    "independence_polynomial": poly.coefficients(),
                    "residual": poly.eval(theta) - (1.0 + delta),
                }),
            )]
        }
        Command::Count { pattern, graph, per_edge } => {
            let (h, label) = pattern.load()?;
            let g = read_graph(graph)?;
            let report = counting::count_report(h.graph(), &g, *per_edge)?;
            vec![rec(
                "count",
                json!({ "pattern": pattern_info(&h, &label), "graph": graph, "vertices": g.vertex_count(), "edges": g.edge_count() }),
                serde_json::to_value(report)?,
            )]
        }
        Command::CondExp {
            pattern,
            scale,
            graph,
            plant,
            exact,
        } => {
            let (h, label) = pattern.load()?;
            let ctx = context(scale)?;
            let (g, desc) = host(graph, plant, ctx.n())?;
            let expected = counting::expected_pattern_count(&h, &ctx)?;
            let gain = ratefn::exact_conditional_gain(&g, &h, &ctx)?;
            let asym = ratefn::asymptotic_conditional_gain(&g, &h, &ctx)?;
            let mut result = json!({
                "conditional_expectation": expected + gain,
                "expected_count": expected,
                "gain": gain,
                "asymptotic_gain": asym,
                "copies_in_plant": counting::count_pattern(&h, &g),
            });
            if *exact {
                let check = ratefn::planting_check(&g, &h, &ctx)?;
                result["planting_inequality"] = json!({
                    "holds": check.holds(),
                    "gain": check.gain.to_string(),
                    "bound": check.bound.to_string(),
                });
            }
            vec![rec(
                "cond-exp",
                json!({ "pattern": pattern_info(&h, &label), "plant": desc, "scales": scales(&h, &ctx) }),
                result,
            )]
        }
        Command::Classify { pattern, graph, core } => {
            let (h, label) = pattern.load()?;
            let g = read_graph(graph)?;
            let params = core_params(&h, core)?;
            vec![rec(
                "classify",
                json!({
                    "pattern": pattern_info(&h, &label),
                    "graph": graph,
                    "scales": scales(&h, params.ctx()),
                    "constants": params_json(&params),
                }),
                json!({
                    "regime": ratefn::classify_regime(&h, params.ctx()).tag(),
                    "seed": structures::is_seed(&g, &params),
                    "core": structures::is_core(&g, &params),
                    "strong_core": structures::is_strong_core(&g, &params),
                }),
            )]
        }
        Command::Peel {
            pattern,
            graph,
            core,
            strong,
            threshold,
            output,
        } => {
            let (h, label) = pattern.load()?;
            let g = read_graph(graph)?;
            let params = core_params(&h, core)?;
            let (t, out) = match (threshold, strong) {
                (Some(t), _) => (*t, structures::peel_edges(h.graph(), &g, *t, PeelOptions::default())),
                (None, true) => (params.strong_edge_threshold(), structures::peel_to_strong_core(&g, &params)),
                (None, false) => (params.core_edge_threshold(), structures::peel_to_core(&g, &params)),
            };
            if let Some(path) = output {
                fs::write(path, io::to_edge_list(&out.graph)).with_context(|| format!("cannot write {}", path.display()))?;
            }
            vec![rec(
                "peel",
                json!({
                    "pattern": pattern_info(&h, &label),
                    "graph": graph,
                    "threshold": t,
                    "scales": scales(&h, params.ctx()),
                    "constants": params_json(&params),
                }),
                json!({
                    "edges_before": g.edge_count(),
                    "edges_after": out.graph.edge_count(),
                    "removed": out.removed,
                    "copies_before": out.copies_before,
                    "copies_after": out.copies_after,
                }),
            )]
        }
        Command::Partition {
            graph,
            d,
            pattern,
            eps,
            high_low,
            n,
            p,
            delta,
            c_big0,
        } => {
            let g = read_graph(graph)?;
            let loaded = if pattern.pattern.is_some() || pattern.pattern_file.is_some() {
                Some(pattern.load()?)
            } else {
                None
            };
            let threshold = match (d, &loaded, eps) {
                (Some(d), _, _) => *d,
                (None, Some((h, _)), Some(eps)) => structures::degree_threshold(h.delta(), *eps),
                _ => bail!("give --d, or a pattern together with --eps"),
            };
            let part = structures::edge_partition(&g, threshold);
            let mut result = json!({
                "threshold": threshold,
                "low_vertices": part.low_vertices.len(),
                "e11": part.e11.len(),
                "e12": part.e12.len(),
                "e22": part.e22.len(),
                "e_bar": part.e_bar(),
            });
            let mut parameters = json!({ "graph": graph, "d": threshold });
            if *high_low {
                let ((h, label), n, p, delta, eps) = match (loaded, n, p, delta, eps) {
                    (Some(l), Some(n), Some(p), Some(delta), Some(eps)) => (l, *n, *p, *delta, *eps),
                    _ => bail!("--high-low needs a pattern, --n, --p, --delta and --eps"),
                };
                let ctx = SparsityContext::new(n, p)?;
                let params = CoreParams::new(h.clone(), ctx, delta, eps)?;
                let split = structures::high_low_bad_split(&g, &params, *c_big0, structures::DEFAULT_COPY_BUDGET)?;
                result["high_low"] = json!({
                    "g_high": split.g_high.len(),
                    "g_low": split.g_low.len(),
                    "g_bad": split.g_bad.len(),
                    "c0": split.c0,
                    "c_big0": split.c_big0,
                });
                parameters["pattern"] = pattern_info(&h, &label);
                parameters["scales"] = scales(&h, &ctx);
            }
            vec![rec("partition", parameters, result)]
        }
        Command::Decompose { pattern, edge, pair } => {
            let (h, label) = pattern.load()?;
            let g = h.graph();
            let (parameters, result) = match (edge, pair) {
                (Some(e), _) => {
                    let e = parse_edge(e)?;
                    let cover = decompose::cycle_edge_cover_avoiding(g, e)?;
                    let valid = decompose::validate_cycle_edge_cover(g, e, &cover);
                    (
                        json!({ "pattern": pattern_info(&h, &label), "avoid": e }),
                        json!({ "cover": cover, "valid": valid.is_ok() }),
                    )
                }
                (None, Some(q)) => {
                    let q = match parse_ints(q)?.as_slice() {
                        [a, b, c] => ((*a, *b), (*b, *c)),
                        _ => bail!("--pair expects \"u1,u2,v\""),
                    };
                    let oc = decompose::ordered_cover(g, q)?;
                    let valid = decompose::validate_ordered_cover(g, q, &oc);
                    (
                        json!({ "pattern": pattern_info(&h, &label), "pair": q }),
                        json!({ "ordered_cover": oc, "valid": valid.is_ok() }),
                    )
                }
                (None, None) => bail!("give --edge or --pair"),
            };
            vec![rec("decompose", parameters, result)]
        }
        Command::Color { graph, avoid } => {
            let g = read_graph(graph)?;
            let result = match avoid {
                None => {
                    let c = decompose::konig_coloring(&g)?;
                    json!({ "num_colors": c.num_colors, "proper": c.is_proper(&g), "colors": c.colors })
                }
                Some(list) => {
                    let avoid: Vec<Edge> = list
                        .split(';')
                        .filter(|s| !s.trim().is_empty())
                        .map(parse_edge)
                        .collect::<Result<_>>()?;
                    json!({ "matching": decompose::matching_avoiding(&g, &avoid)? })
                }
            };
            vec![rec("color", json!({ "graph": graph, "avoid": avoid }), result)]
        }
        Command::Plant { kind, n, output } => {
            let kind = PlantKind::parse(kind)?;
            let planted = ratefn::plant(&kind, *n)?;
            if let Some(path) = output {
                fs::write(path, io::to_edge_list(&planted.graph)).with_context(|| format!("cannot write {}", path.display()))?;
            }
            vec![rec(
                "plant",
                json!({ "kind": kind.descriptor(), "n": n }),
                json!({
                    "descriptor": kind.descriptor(),
                    "edges": planted.graph.edge_count(),
                    "support": planted.graph.non_isolated_count(),
                }),
            )]
        }
        Command::Varbound {
            pattern,
            delta,
            scale,
            family,
            max,
            candidate,
        } => {
            let (h, label) = pattern.load()?;
            let ctx = context(scale)?;
            let n = ctx.n() as usize;
            let cap = |x: f64| (x.ceil() as usize).min(n).max(1);
            let s = ctx.regime_parameter(h.delta());
            let mut families = Vec::new();
            for f in family {
                families.push(match f {
                    Family::Cliques => SearchFamily::Cliques {
                        min: h.v(),
                        max: max.unwrap_or_else(|| cap(4.0 * s + 10.0)),
                    },
                    Family::Hubs => SearchFamily::Hubs {
                        min: 1,
                        max: max.unwrap_or_else(|| cap((4.0 * n as f64 * ctx.p().powi(h.delta() as i32)).max(8.0))),
                    },
                    Family::Kab2 => SearchFamily::Bipartite {
                        a: 2,
                        min_b: 1,
                        max_b: max.unwrap_or_else(|| cap(4.0 * ctx.edge_scale(h.delta()) + 10.0)).min(n.saturating_sub(2)).max(1),
                    },
                });
            }
            if !candidate.is_empty() {
                families.push(SearchFamily::Explicit(
                    candidate.iter().map(|c| PlantKind::parse(c)).collect::<Result<_, _>>()?,
                ));
            }
            let r = ratefn::variational_upper_bound(&h, *delta, &ctx, &families)?;
            let mut result = serde_json::to_value(&r)?;
            result["clique_rate"] = json!(0.5 * delta.powf(2.0 / h.v() as f64));
            vec![rec(
                "varbound",
                json!({
                    "pattern": pattern_info(&h, &label),
                    "delta": delta,
                    "families": families,
                    "scales": scales(&h, &ctx),
                }),
                result,
            )]
        }
        Command::Verify { trials, lemma } => {
            let ids: Vec<&str> = verify::registry().into_iter().map(|(id, _)| id).collect();
            let mut selected = Vec::new();
            for want in lemma {
                let hits: Vec<&str> = ids
                    .iter()
                    .copied()
                    .filter(|id| *id == want || id.to_ascii_lowercase().starts_with(&want.to_ascii_lowercase()))
                    .collect();
                if hits.is_empty() {
                    bail!("unknown lemma id {want:?}; known: {}", ids.join(", "));
                }
                selected.extend(hits.into_iter().map(String::from));
            }
            let suite = verify::Suite { seed, trials: *trials };
            let only = (!selected.is_empty()).then_some(selected.as_slice());
            let results = verify::run_checks(&suite, only);
            ok = verify::all_gating_passed(&results);
            eprint!("{}", verify::summary_table(&results));
            results
                .iter()
                .map(|r| Ok(rec("verify", json!({ "trials": trials, "lemma": r.lemma_id }), serde_json::to_value(r)?)))
                .collect::<Result<_>>()?
        }
        Command::Simulate {
            pattern,
            scale,
            mode,
            trials,
            plant,
            graph,
            delta,
        } => {
            let (h, label) = pattern.load()?;
            let rng = RngSpec::new(seed);
            let (n, p) = (scale.n, scale.p);
            let nu = usize::try_from(n).context("n too large")?;
            let mut parameters = json!({ "pattern": pattern_info(&h, &label), "n": n, "p": p, "trials": trials, "rng": rng });
            let result = match mode {
                SimMode::Mean => {
                    let est = sim::mc_mean_count(h.graph(), nu, p, *trials, &rng)?;
                    let exact = counting::expected_count(h.graph(), n, p)?;
                    json!({ "estimate": est, "exact": exact, "z": est.z_score(exact) })
                }
                SimMode::Cond => {
                    let ctx = context(scale)?;
                    let (g, desc) = host(graph, plant, n)?;
                    parameters["plant"] = json!(desc);
                    let est = sim::mc_conditional_mean(&g, &h, &ctx, *trials, &rng)?;
                    let exact = ratefn::exact_conditional_expectation(&g, &h, &ctx)?;
                    json!({ "estimate": est, "exact": exact, "z": est.z_score(exact) })
                }
                SimMode::Tail => {
                    let delta = delta.ok_or_else(|| anyhow!("--mode tail needs --delta"))?;
                    parameters["delta"] = json!(delta);
                    let est = sim::upper_tail_frequency(h.graph(), nu, p, delta, *trials, &rng)?;
                    json!({ "estimate": est })
                }
            };
            vec![rec("simulate", parameters, result)]
        }
    };
    Ok((records, ok))
}

/// 12 significant digits, fixed notation for moderate magnitudes.
fn fmt_number(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    if x == 0.0 {
        return "0".into();
    }
    let exp = x.abs().log10().floor() as i32;
    if (-4..12).contains(&exp) {
        format!("{:.*}", (11 - exp).max(0) as usize, x)
    } else {
        format!("{:.11e}", x)
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    match v {
        Value::Object(map) => {
            for (k, child) in map {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&key, child, out);
            }
        }
        Value::Number(num) => {
            let text = if num.is_f64() {
                fmt_number(num.as_f64().unwrap())
            } else {
                num.to_string()
            };
            out.push((prefix.to_string(), text));
        }
        Value::String(s) => out.push((prefix.to_string(), s.clone())),
        Value::Bool(b) => out.push((prefix.to_string(), b.to_string())),
        Value::Null => out.push((prefix.to_string(), String::new())),
        Value::Array(_) => out.push((prefix.to_string(), v.to_string())),
    }
}

fn record_json(r: &Record, seed: u64) -> Value {
    let mut m = Map::new();
    m.insert("command".into(), json!(r.command));
    m.insert("parameters".into(), r.parameters.clone());
    m.insert("result".into(), r.result.clone());
    m.insert("version".into(), json!(VERSION));
    m.insert("seed".into(), json!(seed));
    Value::Object(m)
}

fn emit(records: &[Record], cli: &Cli) -> Result<()> {
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    if !cli.csv {
        for r in records {
            writeln!(out, "{}", serde_json::to_string(&record_json(r, cli.seed))?)?;
        }
        return Ok(());
    }
    let mut writer = csv::Writer::from_writer(out);
    let mut header: Option<Vec<String>> = None;
    for r in records {
        let mut cells = Vec::new();
        flatten("", &record_json(r, cli.seed), &mut cells);
        let (keys, values): (Vec<String>, Vec<String>) = cells.into_iter().unzip();
        if header.is_none() {
            writer.write_record(&keys)?;
            header = Some(keys);
        }
        writer.write_record(&values)?;
    }
    writer.flush()?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli).and_then(|(records, ok)| emit(&records, &cli).map(|_| ok)) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
