//! `nicplanar`: command-line front end for recognition, verification,
//! generation, dual analysis, density reports, the brute-force oracle and
//! figure export.
//!
//! Machine output (JSON, DOT, SVG, graph6) goes to stdout or `--out`;
//! diagnostics go to stderr. Exit codes: 0 success / accepted / pass,
//! 1 rejected / fail, 2 usage, I/O or parse error.

mod export;

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use nicplanar::dual::{
    build_dual, check_adjacency_rules, compute_levels, dual_to_dot, quarter_sphere_accounting,
    NodeKind,
};
use nicplanar::embedding::{verify_maximal_embedding, verify_nic, MaximalityOptions, NicEmbedding};
use nicplanar::generate::{
    gen_densest_intermediate, gen_flip_fixture, gen_nested_k5_variant, gen_optimal,
    gen_rac_counterexample, gen_sparsest, np_gadget_embedding, np_gadget_transform,
    GeneratedInstance,
};
use nicplanar::graph_core::{Graph, GraphFormat};
use nicplanar::oracle::{oracle_maximal_nic, OracleOptions, DEFAULT_LIMIT};
use nicplanar::recognize::{recognize_optimal_with, RecognitionResult};

/// Input and output formats.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    /// First line `n`, then one `u v` pair per line.
    EdgeList,
    /// graph6.
    Graph6,
    /// Embedding JSON.
    Json,
}

#[derive(Parser, Debug)]
#[command(
    name = "nicplanar",
    version,
    about = "NIC-planar graph recognition, verification and generation"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide whether graphs are optimal NIC-planar (exit 0 accepted, 1 rejected).
    Recognize {
        /// Input files (stdin if none or `-`).
        inputs: Vec<PathBuf>,
        /// Input format (detected if omitted).
        #[arg(long, value_enum)]
        format: Option<Format>,
        /// Output file for the embedding JSON.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Worker threads for multiple inputs.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// K4-listing budget in steps per vertex.
        #[arg(long, default_value_t = 256)]
        step_cap_multiplier: u64,
    },
    /// Verify an embedding JSON (exit 0 iff all checks pass).
    Verify {
        /// Embedding JSON (stdin if omitted).
        input: Option<PathBuf>,
        /// Also run the maximality checks.
        #[arg(long)]
        maximal: bool,
        /// Include the K5-sharing check (naive, small inputs only).
        #[arg(long)]
        k5: bool,
        /// Output file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generalized dual of a maximal embedding: DOT, rule report, accounting.
    Dual {
        /// Embedding JSON (stdin if omitted).
        input: Option<PathBuf>,
        /// Print only the DOT rendering.
        #[arg(long)]
        dot: bool,
        /// Output file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Report n, m and where m lies relative to 16(n−2)/5 and 18(n−2)/5.
    Density {
        /// Graph or embedding (stdin if omitted).
        input: Option<PathBuf>,
        /// Input format (detected if omitted).
        #[arg(long, value_enum)]
        format: Option<Format>,
        /// Output file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate a family instance.
    Generate {
        /// Family name.
        #[arg(value_enum)]
        family: FamilyArg,
        /// Family parameter k.
        #[arg(long, default_value_t = 2)]
        k: usize,
        /// Offset i for the intermediate family.
        #[arg(long, default_value_t = 1)]
        i: usize,
        /// Layer selection bits for nested-k5.
        #[arg(long, default_value_t = 0)]
        variant: u64,
        /// Embedding JSON of the source graph (gadget family; defaults to K5).
        #[arg(long)]
        input: Option<PathBuf>,
        /// Output format on stdout.
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Write `PREFIX.g6` and `PREFIX.json` instead of printing.
        #[arg(long)]
        out: Option<PathBuf>,
        /// With --out, also write `PREFIX.dot`.
        #[arg(long)]
        dot: bool,
        /// With --out, also write `PREFIX.svg`.
        #[arg(long)]
        svg: bool,
    },
    /// Brute-force search for kite sets (graphs up to --limit vertices).
    Oracle {
        /// Graph or embedding (stdin if omitted).
        input: Option<PathBuf>,
        /// Only optimal kite sets.
        #[arg(long)]
        optimal: bool,
        /// Vertex limit.
        #[arg(long, default_value_t = DEFAULT_LIMIT)]
        limit: usize,
        /// Disable pruning.
        #[arg(long)]
        no_prune: bool,
        /// Input format (detected if omitted).
        #[arg(long, value_enum)]
        format: Option<Format>,
        /// Output file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Render the planarization of an embedding as DOT or SVG.
    Export {
        /// Embedding JSON (stdin if omitted).
        input: Option<PathBuf>,
        /// Emit SVG instead of DOT.
        #[arg(long)]
        svg: bool,
        /// Output file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    Optimal,
    Sparsest,
    Intermediate,
    NestedK5,
    Rac,
    Gadget,
    FlipFixture,
}

/// A failure that maps to exit code 2.
struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

type Res<T> = Result<T, InputError>;

fn read_input(path: Option<&Path>) -> Res<Vec<u8>> {
    match path {
        Some(p) if p != Path::new("-") => {
            fs::read(p).map_err(|e| InputError(format!("{}: {e}", p.display())))
        }
        _ => {
            let mut buf = Vec::new();
            io::stdin().read_to_end(&mut buf)?;
            Ok(buf)
        }
    }
}

fn detect(bytes: &[u8]) -> Format {
    match bytes.iter().find(|b| !b.is_ascii_whitespace()) {
        Some(b'{') => Format::Json,
        Some(b) if b.is_ascii_digit() => Format::EdgeList,
        _ => Format::Graph6,
    }
}

fn parse_graph(bytes: &[u8], format: Option<Format>) -> Res<Graph> {
    Ok(match format.unwrap_or_else(|| detect(bytes)) {
        Format::Json => parse_embedding(bytes)?.graph().clone(),
        Format::EdgeList => Graph::parse(bytes, GraphFormat::EdgeList)?,
        Format::Graph6 => Graph::parse(bytes, GraphFormat::Graph6)?,
    })
}

fn parse_embedding(bytes: &[u8]) -> Res<NicEmbedding> {
    let s = std::str::from_utf8(bytes)?;
    Ok(NicEmbedding::from_json_str(s)?)
}

fn emit(out: Option<&Path>, text: &str) -> Res<()> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| InputError(format!("{}: {e}", p.display()))),
        None => {
            let mut so = io::stdout().lock();
            so.write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn recognition_json(name: &str, r: &RecognitionResult) -> Value {
    json!({
        "input": name,
        "accepted": r.is_accepted(),
        "reason": r.reason().map(|x| x.code()),
        "k4_count": r.diagnostics.k4_count,
        "kite_count": r.diagnostics.kite_count,
        "steps": r.diagnostics.steps,
        "step_cap": r.diagnostics.step_cap,
    })
}

fn cmd_recognize(
    inputs: Vec<PathBuf>,
    format: Option<Format>,
    out: Option<PathBuf>,
    jobs: usize,
    mult: u64,
) -> Res<u8> {
    if inputs.len() <= 1 {
        let g = parse_graph(&read_input(inputs.first().map(PathBuf::as_path))?, format)?;
        let r = recognize_optimal_with(&g, mult);
        return Ok(match r.embedding() {
            Some(e) => {
                emit(out.as_deref(), &format!("{}\n", e.to_json_string()))?;
                0
            }
            None => {
                eprintln!("{}", r.reason().expect("rejected results carry a reason"));
                1
            }
        });
    }
    // Several files: one summary line per input, in input order.
    let jobs = jobs.max(1).min(inputs.len());
    let mut results: Vec<Option<Res<RecognitionResult>>> =
        (0..inputs.len()).map(|_| None).collect();
    let chunk = inputs.len().div_ceil(jobs);
    std::thread::scope(|scope| {
        for (slots, paths) in results.chunks_mut(chunk).zip(inputs.chunks(chunk)) {
            scope.spawn(move || {
                for (slot, p) in slots.iter_mut().zip(paths) {
                    *slot = Some(
                        read_input(Some(p))
                            .and_then(|b| parse_graph(&b, format))
                            .map(|g| recognize_optimal_with(&g, mult)),
                    );
                }
            });
        }
    });
    let mut code = 0u8;
    let mut text = String::new();
    for (p, r) in inputs.iter().zip(results) {
        let name = p.display().to_string();
        match r.expect("every input is processed") {
            Ok(r) => {
                if !r.is_accepted() {
                    code = code.max(1);
                    eprintln!(
                        "{name}: {}",
                        r.reason().expect("rejected results carry a reason")
                    );
                }
                text.push_str(
                    &serde_json::to_string(&recognition_json(&name, &r)).expect("serializable"),
                );
                text.push('\n');
            }
            Err(InputError(e)) => {
                code = 2;
                eprintln!("{name}: {e}");
            }
        }
    }
    emit(out.as_deref(), &text)?;
    Ok(code)
}

fn cmd_verify(input: Option<PathBuf>, maximal: bool, k5: bool, out: Option<PathBuf>) -> Res<u8> {
    let emb = parse_embedding(&read_input(input.as_deref())?)?;
    let mut rep = verify_nic(&emb);
    let mut value = json!({ "nic": rep });
    if maximal {
        let mx = verify_maximal_embedding(
            &emb,
            MaximalityOptions {
                check_k5_sharing: k5,
            },
        );
        value["maximal"] = serde_json::to_value(&mx)?;
        rep.merge(mx);
    }
    value["pass"] = json!(rep.pass);
    emit(out.as_deref(), &pretty(&value))?;
    Ok(if rep.pass { 0 } else { 1 })
}

fn cmd_dual(input: Option<PathBuf>, dot: bool, out: Option<PathBuf>) -> Res<u8> {
    let emb = parse_embedding(&read_input(input.as_deref())?)?;
    let dual = build_dual(&emb)?;
    if dot {
        emit(out.as_deref(), &dual_to_dot(&dual))?;
        return Ok(0);
    }
    let rules = check_adjacency_rules(&dual, emb.graph());
    let levels = compute_levels(&dual);
    let accounting = levels
        .as_ref()
        .map_err(|e| e.to_string())
        .and_then(|l| quarter_sphere_accounting(&dual, l).map_err(|e| e.to_string()));
    let ok = rules.pass && accounting.is_ok();
    let value = json!({
        "nodes": {
            "kite": dual.count(NodeKind::Kite),
            "tetrahedron": dual.count(NodeKind::Tetrahedron),
            "triangle": dual.count(NodeKind::Triangle),
        },
        "rules": rules,
        "levels": levels.as_ref().map(|l| json!(l.level)).unwrap_or(Value::Null),
        "accounting": match &accounting { Ok(a) => a.to_json(), Err(e) => json!({ "error": e }) },
        "dot": dual_to_dot(&dual),
    });
    emit(out.as_deref(), &pretty(&value))?;
    Ok(if ok { 0 } else { 1 })
}

fn cmd_density(input: Option<PathBuf>, format: Option<Format>, out: Option<PathBuf>) -> Res<u8> {
    let g = parse_graph(&read_input(input.as_deref())?, format)?;
    let (n, m) = (g.n() as i128, g.m() as i128);
    let (lo, hi, five_m) = (16 * (n - 2), 18 * (n - 2), 5 * m);
    let status = if five_m < lo {
        "below-lower-bound"
    } else if five_m == lo {
        "at-lower-bound"
    } else if five_m < hi {
        "between-bounds"
    } else if five_m == hi {
        "at-upper-bound"
    } else {
        "above-upper-bound"
    };
    let value = json!({
        "n": g.n(), "m": g.m(),
        "lower_bound": format!("{lo}/5"),
        "upper_bound": format!("{hi}/5"),
        "status": status,
    });
    emit(out.as_deref(), &pretty(&value))?;
    Ok(0)
}

#[allow(clippy::too_many_arguments)]
fn cmd_generate(
    family: FamilyArg,
    k: usize,
    i: usize,
    variant: u64,
    input: Option<PathBuf>,
    format: Format,
    out: Option<PathBuf>,
    dot: bool,
    svg: bool,
) -> Res<u8> {
    let (graph, emb): (Graph, Option<NicEmbedding>) = match family {
        FamilyArg::Gadget => {
            let src = match input {
                Some(p) => parse_embedding(&read_input(Some(&p))?)?,
                None => nicplanar::generate::k5_one_planar(),
            };
            let emb = np_gadget_embedding(&src)?;
            debug_assert_eq!(emb.graph(), &np_gadget_transform(src.graph()));
            (emb.graph().clone(), Some(emb))
        }
        _ => {
            let inst: GeneratedInstance = match family {
                FamilyArg::Optimal => gen_optimal(k)?,
                FamilyArg::Sparsest => gen_sparsest(k)?,
                FamilyArg::Intermediate => gen_densest_intermediate(k, i)?,
                FamilyArg::NestedK5 => gen_nested_k5_variant(k, variant)?,
                FamilyArg::Rac => gen_rac_counterexample(),
                FamilyArg::FlipFixture => gen_flip_fixture(),
                FamilyArg::Gadget => unreachable!("handled above"),
            };
            (inst.graph, inst.embedding)
        }
    };
    let json_text = emb.as_ref().map(|e| format!("{}\n", e.to_json_string()));
    if let Some(prefix) = out {
        let with = |ext: &str| {
            let mut p = prefix.clone().into_os_string();
            p.push(ext);
            PathBuf::from(p)
        };
        emit(Some(&with(".g6")), &format!("{}\n", graph.to_graph6()))?;
        if let Some(e) = &emb {
            emit(
                Some(&with(".json")),
                json_text.as_deref().expect("embedding present"),
            )?;
            if dot {
                emit(Some(&with(".dot")), &export::planarization_dot(e))?;
            }
            if svg {
                emit(Some(&with(".svg")), &export::planarization_svg(e))?;
            }
        }
        return Ok(0);
    }
    let text = match (format, json_text) {
        (Format::Json, Some(t)) => t,
        (Format::Json, None) => {
            return Err(InputError("this family has no witness embedding".into()))
        }
        (Format::Graph6, _) => format!("{}\n", graph.to_graph6()),
        (Format::EdgeList, _) => String::from_utf8(graph.serialize(GraphFormat::EdgeList))?,
    };
    emit(None, &text)?;
    Ok(0)
}

fn cmd_oracle(
    input: Option<PathBuf>,
    optimal: bool,
    limit: usize,
    no_prune: bool,
    format: Option<Format>,
    out: Option<PathBuf>,
) -> Res<u8> {
    let g = parse_graph(&read_input(input.as_deref())?, format)?;
    let r = oracle_maximal_nic(
        &g,
        OracleOptions {
            limit,
            optimal,
            pruned: !no_prune,
        },
    )?;
    let value = json!({
        "decision": r.decision,
        "kite_sets": r.kite_sets.iter().map(|s| json!(s.kites)).collect::<Vec<_>>(),
        "stats": { "catalog": r.stats.catalog, "candidates": r.stats.candidates, "prunes": r.stats.prunes },
    });
    emit(out.as_deref(), &pretty(&value))?;
    Ok(if r.decision { 0 } else { 1 })
}

fn cmd_export(input: Option<PathBuf>, svg: bool, out: Option<PathBuf>) -> Res<u8> {
    let emb = parse_embedding(&read_input(input.as_deref())?)?;
    let text = if svg {
        export::planarization_svg(&emb)
    } else {
        export::planarization_dot(&emb)
    };
    emit(out.as_deref(), &text)?;
    Ok(0)
}

fn run(cli: Cli) -> Res<u8> {
    match cli.command {
        Command::Recognize {
            inputs,
            format,
            out,
            jobs,
            step_cap_multiplier,
        } => cmd_recognize(inputs, format, out, jobs, step_cap_multiplier),
        Command::Verify {
            input,
            maximal,
            k5,
            out,
        } => cmd_verify(input, maximal, k5, out),
        Command::Dual { input, dot, out } => cmd_dual(input, dot, out),
        Command::Density { input, format, out } => cmd_density(input, format, out),
        Command::Generate {
            family,
            k,
            i,
            variant,
            input,
            format,
            out,
            dot,
            svg,
        } => cmd_generate(family, k, i, variant, input, format, out, dot, svg),
        Command::Oracle {
            input,
            optimal,
            limit,
            no_prune,
            format,
            out,
        } => cmd_oracle(input, optimal, limit, no_prune, format, out),
        Command::Export { input, svg, out } => cmd_export(input, svg, out),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
