use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use latkit::dimension::{dim_bounds, dim_sd_extremal, dimension_oracle, DEFAULT_ORACLE_CAP};
use latkit::doubling::{certify, run_script, DoublingCertificate, DoublingScript};
use latkit::families::gentle::{tors_lattice, GentleQuiver, GentleQuiverJson};
use latkit::families::{bubble, hochschild, parabolic_tamari, word_lattice, Composition};
use latkit::galois::{canonical_join_graph, galois_graph_canonical, lattice_from_galois};
use latkit::graph::{DirectedGraph, GraphJson};
use latkit::labelling::gamma_labellings;
use latkit::lattice::LatticeJson;
use latkit::report::{analyze, AnalysisOptions};
use latkit::shelling::{brute_force_shelling, disjoint_source_sets, facet_adjacency, shellable_verdict, DEFAULT_CHAIN_CAP, DEFAULT_FACET_CAP};
use latkit::tafs::{classify_arrows, counterexample_pipeline, is_tafs, DecoratedMultigraph};
use latkit::verify::{run_suite, VerifyOptions, DEFAULT_COUNT, SUITES};
use latkit::{ChainPhi, Error, Lattice, Result};

#[derive(Parser)]
#[command(name = "latkit", version, about = "Build, certify and measure finite lattices")]
struct Cli {
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads; defaults to all cores.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Solver budget per coloring, in milliseconds.
    #[arg(long, global = true)]
    budget_ms: Option<u64>,
    /// Enumeration cap (maximal chains, critical pairs or facets, per command).
    #[arg(long, global = true)]
    cap: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Input {
    /// Lattice JSON file.
    file: Option<PathBuf>,
    /// Generator, e.g. `--gen hoch 3` or `--gen ptam 1,2,1`.
    #[arg(long, num_args = 1.., value_name = "SPEC")]
    gen: Option<Vec<String>>,
    /// Doubling script JSON.
    #[arg(long)]
    script: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print a generated lattice as JSON.
    Gen { spec: Vec<String> },
    /// Full report on one lattice.
    Analyze(Input),
    /// Edge labellings along a maximal chain.
    Labelling {
        #[command(flatten)]
        input: Input,
        /// Comma-separated element ids; defaults to the canonical longest chain.
        #[arg(long)]
        chain: Option<String>,
        #[arg(long)]
        dot: bool,
    },
    /// Run a doubling script.
    Double {
        #[arg(long)]
        script: PathBuf,
        #[arg(long)]
        certify: bool,
    },
    /// Galois graph of an extremal lattice.
    Galois {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        dot: bool,
    },
    /// Canonical join graph of a semidistributive lattice.
    Cjg {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        dot: bool,
    },
    /// Lattice of maximal orthogonal pairs of a graph JSON file.
    Reconstruct { graph: PathBuf },
    /// Order dimension.
    Dim {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value = "galois")]
        method: String,
    },
    /// Shellability.
    Shell {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        verdict: bool,
        /// Facet adjacency graph and its source sets.
        #[arg(long)]
        fa: bool,
        #[arg(long)]
        dot: bool,
        /// Search for a shelling order directly.
        #[arg(long)]
        brute: bool,
    },
    /// Two-acyclic factorization systems.
    Tafs {
        #[command(subcommand)]
        cmd: TafsCmd,
    },
    /// Run a property suite, or `all`.
    Verify {
        suite: String,
        #[arg(long, default_value_t = DEFAULT_COUNT)]
        count: usize,
    },
    /// Write a lattice in another format.
    Export {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        format: String,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum TafsCmd {
    /// Decorate the arrows of a graph JSON file.
    Classify { graph: PathBuf },
    /// Check a decorated multigraph JSON file.
    Check { file: PathBuf },
    /// Rebuild the non-canonical-join-graph counterexample.
    Counterexample {
        /// Also sweep every orientation.
        #[arg(long)]
        exhaustive: bool,
    },
}

enum Outcome {
    Ok,
    AssertionFailed,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::AssertionFailed) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_assertion() { 2 } else { 1 })
        }
    }
}

fn budget(cli: &Cli) -> Option<Duration> {
    Some(cli.budget_ms.map_or(latkit::dimension::DEFAULT_BUDGET, Duration::from_millis))
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("json value"));
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::InvalidParameter(format!("{}: {e}", path.display())))
}

fn parse_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    serde_json::from_str(&read(path)?)
        .map_err(|e| Error::InvalidParameter(format!("{}: {e}", path.display())))
}

fn number(s: &str) -> Result<usize> {
    s.parse()
        .map_err(|_| Error::InvalidParameter(format!("expected a number, got {s:?}")))
}

fn generate(spec: &[String]) -> Result<Lattice> {
    let args: Vec<&str> = spec.iter().map(String::as_str).collect();
    match args.as_slice() {
        ["hoch", n] => Ok(hochschild(number(n)?)?.1),
        ["bubble", m, n] => Ok(bubble(number(m)?, number(n)?)?.1),
        ["words", m, n] => word_lattice(number(m)?, number(n)?),
        ["ptam", a] => Ok(parabolic_tamari(&a.parse::<Composition>()?)?.1),
        ["gentle", file] => {
            let q: GentleQuiverJson = parse_json(Path::new(file))?;
            tors_lattice(&GentleQuiver::from_json(&q)?)
        }
        ["chain", k] => Ok(Lattice::chain(number(k)?)),
        ["boolean", k] => Ok(Lattice::boolean(number(k)?)),
        _ => Err(Error::InvalidParameter(format!(
            "unknown generator {:?}; expected hoch N, bubble M N, words M N, ptam A, gentle FILE, chain K or boolean K",
            spec.join(" ")
        ))),
    }
}

fn load(input: &Input) -> Result<(Lattice, Option<DoublingCertificate>)> {
    match (&input.file, &input.gen, &input.script) {
        (Some(f), None, None) => {
            let j: LatticeJson = parse_json(f)?;
            Ok((Lattice::from_json(&j)?, None))
        }
        (None, Some(g), None) => Ok((generate(g)?, None)),
        (None, None, Some(s)) => {
            let script: DoublingScript = parse_json(s)?;
            let (l, cert) = run_script(&script)?;
            Ok((l, Some(cert)))
        }
        _ => Err(Error::InvalidParameter(
            "give exactly one of a lattice file, --gen or --script".into(),
        )),
    }
}

fn parse_ids(s: &str) -> Result<Vec<usize>> {
    s.split(',').map(|t| number(t.trim())).collect()
}

fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.cmd {
        Cmd::Gen { spec } => print_json(&to_value(&generate(spec)?.to_json())),
        Cmd::Analyze(input) => {
            let (l, cert) = load(input)?;
            let opts = AnalysisOptions {
                chain_cap: cli.cap.unwrap_or(DEFAULT_CHAIN_CAP),
                oracle_cap: DEFAULT_ORACLE_CAP,
                budget: budget(cli),
            };
            print_json(&to_value(&analyze(&l, cert.as_ref(), &opts)?));
        }
        Cmd::Labelling { input, chain, dot } => {
            let (l, _) = load(input)?;
            let phi = match chain {
                Some(c) => ChainPhi::new(&l, parse_ids(c)?)?,
                None => ChainPhi::canonical(&l),
            };
            let g = gamma_labellings(&l, &phi);
            if *dot {
                let mut s = String::from("digraph labelling {\n  rankdir=BT;\n");
                for x in 0..l.n() {
                    s.push_str(&format!("  n{x} [label=\"{}\"];\n", l.label(x)));
                }
                for (e, &(a, b)) in l.edges().iter().enumerate() {
                    s.push_str(&format!(
                        "  n{a} -> n{b} [label=\"{},{},{},{}\"];\n",
                        g.gamma1.labels[e], g.gamma1p.labels[e], g.gamma2.labels[e], g.gamma2p.labels[e]
                    ));
                }
                s.push_str("}\n");
                print!("{s}");
            } else {
                println!("edge\tg1\tg1'\tg2\tg2'");
                for (e, &(a, b)) in l.edges().iter().enumerate() {
                    println!(
                        "{}->{}\t{}\t{}\t{}\t{}",
                        l.label(a),
                        l.label(b),
                        g.gamma1.labels[e],
                        g.gamma1p.labels[e],
                        g.gamma2.labels[e],
                        g.gamma2p.labels[e]
                    );
                }
            }
        }
        Cmd::Double { script, certify: with_cert } => {
            let s: DoublingScript = parse_json(script)?;
            let (l, cert) = run_script(&s)?;
            if *with_cert {
                print_json(&json!({
                    "lattice": to_value(&l.to_json()),
                    "certificate": to_value(&cert),
                    "verdicts": to_value(&certify(&cert)),
                }));
            } else {
                print_json(&to_value(&l.to_json()));
            }
        }
        Cmd::Galois { input, dot } => {
            let (l, _) = load(input)?;
            let g = galois_graph_canonical(&l)?.graph;
            if *dot {
                print!("{}", g.to_dot("galois"));
            } else {
                print_json(&to_value(&g.to_json()));
            }
        }
        Cmd::Cjg { input, dot } => {
            let (l, _) = load(input)?;
            let g = canonical_join_graph(&l)?;
            if *dot {
                print!("{}", g.to_dot("cjg"));
            } else {
                let labels: Vec<String> = (0..g.m()).map(|v| g.label(v)).collect();
                print_json(&json!({ "m": g.m(), "edges": g.edges(), "labels": labels }));
            }
        }
        Cmd::Reconstruct { graph } => {
            let j: GraphJson = parse_json(graph)?;
            let (l, _) = lattice_from_galois(&DirectedGraph::from_json(&j))?;
            print_json(&to_value(&l.to_json()));
        }
        Cmd::Dim { input, method } => {
            let (l, _) = load(input)?;
            match method.as_str() {
                "galois" => {
                    let r = dim_sd_extremal(&l, budget(cli))?;
                    print_json(&json!({
                        "chi": r.chi,
                        "clique": r.clique,
                        "coloring": r.coloring,
                        "bounds": to_value(&dim_bounds(&l)),
                    }));
                }
                "oracle" => {
                    let cap = cli.cap.unwrap_or(DEFAULT_ORACLE_CAP);
                    let pairs = latkit::dimension::critical_pairs(&l).pairs;
                    let dim = dimension_oracle(&l, cap)?;
                    print_json(&json!({ "dim": dim, "critical_pairs": pairs }));
                }
                "bounds" => print_json(&to_value(&dim_bounds(&l))),
                other => {
                    return Err(Error::InvalidParameter(format!(
                        "unknown method {other:?}; expected galois, oracle or bounds"
                    )))
                }
            }
        }
        Cmd::Shell { input, verdict: _, fa, dot, brute } => {
            let (l, cert) = load(input)?;
            let cap = cli.cap.unwrap_or(DEFAULT_CHAIN_CAP);
            if *fa {
                let g = facet_adjacency(&l, cap)?;
                if *dot {
                    print!("{}", g.graph.to_dot("fa"));
                } else {
                    let names = |s: &[usize]| -> Vec<String> { s.iter().map(|&i| g.graph.label(i)).collect() };
                    let r = disjoint_source_sets(&g.graph);
                    print_json(&json!({
                        "chains": (0..g.graph.m()).map(|i| g.graph.label(i)).collect::<Vec<_>>(),
                        "edges": g.graph.edges(),
                        "disjoint_source_sets": r.found.map(|(a, b)| vec![names(&a), names(&b)]),
                        "source_sets": r.all_source_sets.map(|all| all.iter().map(|s| names(s)).collect::<Vec<_>>()),
                    }));
                }
            } else if *brute {
                let order = brute_force_shelling(&l, cli.cap.unwrap_or(DEFAULT_FACET_CAP))?;
                print_json(&json!({ "shellable": order.is_some(), "order": order }));
            } else {
                print_json(&to_value(&shellable_verdict(&l, cert.as_ref(), cap)));
            }
        }
        Cmd::Tafs { cmd } => match cmd {
            TafsCmd::Classify { graph } => {
                let j: GraphJson = parse_json(graph)?;
                let edges: Vec<(usize, usize)> = j.edges.iter().map(|e| (e[0], e[1])).collect();
                let mut d = classify_arrows(j.m, &edges);
                d.labels = j.labels;
                print_json(&to_value(&d));
            }
            TafsCmd::Check { file } => {
                let d: DecoratedMultigraph = parse_json(file)?;
                let r = is_tafs(&d);
                print_json(&to_value(&r));
                if !r.ok {
                    return Ok(Outcome::AssertionFailed);
                }
            }
            TafsCmd::Counterexample { exhaustive } => {
                print_json(&to_value(&counterexample_pipeline(*exhaustive)?));
            }
        },
        Cmd::Verify { suite, count } => {
            let opts = VerifyOptions {
                seed: cli.seed,
                count: *count,
                jobs: cli.jobs,
                budget: budget(cli),
            };
            let names: Vec<&str> = if suite == "all" {
                SUITES.to_vec()
            } else {
                vec![suite.as_str()]
            };
            let mut ok = true;
            for name in names {
                let s = run_suite(name, &opts)?;
                println!(
                    "{}: {}/{} pass, {} skipped, {} failed",
                    s.suite, s.passed, s.total, s.skipped, s.failed
                );
                for f in &s.failures {
                    println!("  FAIL {f}");
                }
                ok &= s.ok();
            }
            if !ok {
                return Ok(Outcome::AssertionFailed);
            }
        }
        Cmd::Export { input, format, output } => {
            let (l, _) = load(input)?;
            let text = match format.as_str() {
                "dot_hasse" => l.to_dot(),
                "dot_galois" => galois_graph_canonical(&l)?.graph.to_dot("galois"),
                "dot_cjg" => canonical_join_graph(&l)?.to_dot("cjg"),
                "json" => serde_json::to_string_pretty(&l.to_json()).expect("json") + "\n",
                other => return Err(Error::UnsupportedFormat(other.to_string())),
            };
            match output {
                Some(p) => fs::write(p, text).map_err(|e| Error::InvalidParameter(format!("{}: {e}", p.display())))?,
                None => print!("{text}"),
            }
        }
    }
    Ok(Outcome::Ok)
}
