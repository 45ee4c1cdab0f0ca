//! `kostant`: command-line driver for the Kostant game, coroot strings and
//! Hilbert polynomial checks. Vertices are 1-based on the command line.

use std::fmt::Write as _;
use std::fs;
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use kostant_core::coroot_strings::{certify, maximal_good_string, to_json as string_json};
use kostant_core::hilbert::{hilbert, verify_case, Weight};
use kostant_core::kostant_game::{game_graph, play, Configuration, Strategy};
use kostant_core::report::{csv_header, csv_row, run_survey, DEGREE_BOX_LIMIT};
use kostant_core::weyl_words::coset_reps;
use kostant_core::{CartanData, Error, LieType, ParabolicSubset, RootData, RootSystem};

#[derive(Parser)]
#[command(name = "kostant", version, about = "Kostant games, coroot strings and Hilbert polynomials of G/P")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// List the positive roots with their heights.
    Roots {
        #[arg(value_name = "TYPE")]
        lie_type: String,
        /// Use the coroot diagram.
        #[arg(long)]
        dual: bool,
    },
    /// Play a (modified) Kostant game to its terminal configuration.
    Game(GameArgs),
    /// Minimal length coset representatives W^j.
    Coset {
        #[arg(value_name = "TYPE")]
        lie_type: String,
        #[arg(long)]
        vertex: usize,
        /// Include every reduced word.
        #[arg(long)]
        words: bool,
    },
    /// Maximal good string of coroots for `beta` relative to `S_P`.
    String {
        #[arg(value_name = "TYPE")]
        lie_type: String,
        #[arg(long, default_value = "")]
        parabolic: String,
        #[arg(long)]
        beta: usize,
    },
    /// Factored Hilbert polynomial, optionally evaluated at a weight.
    Hilbert {
        #[arg(value_name = "TYPE")]
        lie_type: String,
        #[arg(long, default_value = "")]
        parabolic: String,
        /// Values of k_b for b outside S_P, in increasing order.
        #[arg(long, allow_hyphen_values = true)]
        weight: Option<String>,
    },
    /// Vanishing box, factor certificates and inequalities for one case.
    Verify {
        #[arg(value_name = "TYPE")]
        lie_type: String,
        #[arg(long, default_value = "")]
        parabolic: String,
    },
    /// Verify every type of rank at most R and every proper parabolic.
    Survey {
        #[arg(long)]
        max_rank: usize,
        /// Worker threads; 0 uses the available parallelism.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
    },
}

#[derive(Args)]
struct GameArgs {
    #[arg(value_name = "TYPE")]
    lie_type: String,
    /// Play on the coroot diagram.
    #[arg(long)]
    dual: bool,
    /// Restrict to the subdiagram on these vertices.
    #[arg(long)]
    restrict: Option<String>,
    /// Modified game with an extra vertex pointing at `--vertex`.
    #[arg(long, requires = "vertex")]
    modified: bool,
    #[arg(long)]
    vertex: Option<usize>,
    #[arg(long, default_value_t = 1)]
    arrows: i64,
    /// Start vertex of the standard game.
    #[arg(long, conflicts_with = "modified")]
    start: Option<usize>,
    /// Vertices to fire first, comma separated.
    #[arg(long)]
    moves: Option<String>,
    /// Write the full game graph in DOT format.
    #[arg(long, value_name = "PATH")]
    dot: Option<String>,
}

/// Result of a command: rendered output and whether an invariant failed.
struct Outcome {
    output: String,
    falsified: bool,
}

impl Outcome {
    fn ok(output: String) -> Self {
        Outcome {
            output,
            falsified: false,
        }
    }
}

/// A usage error (exit 2) or a failed internal invariant (exit 1).
struct Usage {
    error: anyhow::Error,
    invariant: bool,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(out) => {
            print!("{}", out.output);
            if !out.output.ends_with('\n') {
                println!();
            }
            ExitCode::from(if out.falsified { 1 } else { 0 })
        }
        Err(Usage { error, invariant }) => {
            eprintln!("error: {error:#}");
            ExitCode::from(if invariant { 1 } else { 2 })
        }
    }
}

fn usage<E: Into<anyhow::Error>>(e: E) -> Usage {
    let error = e.into();
    let invariant = matches!(
        error.downcast_ref::<Error>(),
        Some(Error::Internal(_) | Error::Hypothesis(_))
    );
    Usage { error, invariant }
}

fn parse_type(s: &str) -> Result<LieType, Usage> {
    s.parse::<LieType>().map_err(usage)
}

fn parse_list(s: &str) -> anyhow::Result<Vec<i64>> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<i64>().with_context(|| format!("not an integer: `{t}`")))
        .collect()
}

fn vertex(v: usize, n: usize) -> Result<usize, Usage> {
    if v == 0 || v > n {
        return Err(usage(Error::VertexOutOfRange { vertex: v, rank: n }));
    }
    Ok(v - 1)
}

fn proper_parabolic(s: &str, n: usize) -> Result<ParabolicSubset, Usage> {
    let p = ParabolicSubset::parse(s, n).map_err(usage)?;
    if p.is_full() {
        return Err(usage(Error::FullParabolic));
    }
    Ok(p)
}

fn to_json(v: &impl serde::Serialize) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

fn tuple(v: &[i64]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

fn run(cli: &Cli) -> Result<Outcome, Usage> {
    match &cli.command {
        Command::Roots { lie_type, dual } => cmd_roots(cli.format, lie_type, *dual),
        Command::Game(args) => cmd_game(cli.format, args),
        Command::Coset {
            lie_type,
            vertex: j,
            words,
        } => cmd_coset(cli.format, lie_type, *j, *words),
        Command::String {
            lie_type,
            parabolic,
            beta,
        } => cmd_string(cli.format, lie_type, parabolic, *beta),
        Command::Hilbert {
            lie_type,
            parabolic,
            weight,
        } => cmd_hilbert(cli.format, lie_type, parabolic, weight.as_deref()),
        Command::Verify {
            lie_type,
            parabolic,
        } => cmd_verify(cli.format, lie_type, parabolic),
        Command::Survey { max_rank, jobs } => cmd_survey(cli.format, *max_rank, *jobs),
    }
}

fn cmd_roots(format: Format, lie_type: &str, dual: bool) -> Result<Outcome, Usage> {
    let t = parse_type(lie_type)?;
    let mut cartan = CartanData::build(t);
    if dual {
        cartan = cartan.dual();
    }
    let rs = RootSystem::new(cartan);
    let roots = rs.positive_roots();
    let out = match format {
        Format::Json => to_json(&json!({
            "type": rs.cartan().label(),
            "count": roots.len(),
            "roots": roots.iter().map(|r| json!({"root": r.0, "height": r.height()})).collect::<Vec<_>>(),
        })),
        Format::Csv => {
            let mut s = String::from("root,height\n");
            for r in roots {
                let _ = writeln!(s, "\"{}\",{}", tuple(&r.0), r.height());
            }
            s
        }
        Format::Text => {
            let mut s = String::new();
            for r in roots {
                let _ = writeln!(s, "{} {}", tuple(&r.0), r.height());
            }
            s
        }
    };
    Ok(Outcome::ok(out))
}

fn cmd_game(format: Format, args: &GameArgs) -> Result<Outcome, Usage> {
    let t = parse_type(&args.lie_type)?;
    let mut cartan = CartanData::build(t);
    if args.dual {
        cartan = cartan.dual();
    }
    let n_full = cartan.rank();
    let kept: Vec<usize> = match &args.restrict {
        Some(s) => {
            let p = ParabolicSubset::parse(s, n_full).map_err(usage)?;
            if p.members().is_empty() {
                return Err(usage(anyhow!("--restrict needs at least one vertex")));
            }
            p.members()
        }
        None => (0..n_full).collect(),
    };
    let d = cartan.subdiagram(&kept).map_err(usage)?;
    let n = d.rank();
    let local = |v: usize| -> Result<usize, Usage> {
        let full = vertex(v, n_full)?;
        kept.iter()
            .position(|&k| k == full)
            .ok_or_else(|| usage(anyhow!("vertex {v} is not in the restricted diagram")))
    };

    let start = if args.modified {
        let j = local(args.vertex.expect("clap requires --vertex"))?;
        if args.arrows < 1 {
            return Err(usage(Error::ZeroArrows));
        }
        Configuration::modified(n, j, args.arrows).map_err(usage)?
    } else {
        let s = args.start.or(args.vertex).unwrap_or(1);
        Configuration::single_chip(n, local(s)?)
    };

    let strategy = match &args.moves {
        Some(m) => {
            let mut seq = Vec::new();
            for v in parse_list(m).map_err(usage)? {
                let v = usize::try_from(v).map_err(|_| usage(anyhow!("negative vertex {v}")))?;
                seq.push(local(v)?);
            }
            Strategy::Sequence(seq)
        }
        None => Strategy::LowestIndex,
    };
    let (end, moves) = play(&d, &start, &strategy).map_err(usage)?;
    let graph = game_graph(&d, &start).map_err(usage)?;
    let terminals = graph.terminals();
    let confluent = terminals.len() == 1 && *terminals[0] == end;

    if let Some(path) = &args.dot {
        fs::write(path, graph.to_dot())
            .with_context(|| format!("cannot write {path}"))
            .map_err(usage)?;
    }

    let moves_1: Vec<usize> = moves.iter().map(|&v| kept[v] + 1).collect();
    let out = match format {
        Format::Json => to_json(&json!({
            "type": d.label(),
            "vertices": kept.iter().map(|v| v + 1).collect::<Vec<_>>(),
            "start": start.chips(),
            "marked_vertex": start.marking().map(|m| kept[m.vertex] + 1),
            "arrows": start.marking().map(|m| m.arrows),
            "terminal": end.chips(),
            "height": end.height(),
            "moves": moves_1,
            "configurations": graph.len(),
            "terminals": terminals.iter().map(|c| c.chips().to_vec()).collect::<Vec<_>>(),
            "confluent": confluent,
        })),
        Format::Csv => format!(
            "type,terminal,height,moves,configurations,confluent\n{},\"{}\",{},\"{}\",{},{}\n",
            d.label(),
            tuple(end.chips()),
            end.height(),
            moves_1.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" "),
            graph.len(),
            confluent
        ),
        Format::Text => format!(
            "type {}\nterminal {}\nheight {}\nmoves {:?}\nconfigurations {}\nconfluent {}\n",
            d.label(),
            tuple(end.chips()),
            end.height(),
            moves_1,
            graph.len(),
            confluent
        ),
    };
    Ok(Outcome {
        output: out,
        falsified: !confluent,
    })
}

fn cmd_coset(format: Format, lie_type: &str, j: usize, words: bool) -> Result<Outcome, Usage> {
    let t = parse_type(lie_type)?;
    let rs = RootSystem::of_type(t);
    let j = vertex(j, rs.rank())?;
    let fam = coset_reps(&rs, j).map_err(usage)?;
    let js = fam.to_json(words);
    let out = match format {
        Format::Json => to_json(&js),
        Format::Csv => {
            let mut s = String::from("index,word\n");
            for (i, w) in fam.words().iter().enumerate() {
                let letters: Vec<String> = w.one_based().iter().map(|v| v.to_string()).collect();
                let _ = writeln!(s, "{i},\"{}\"", letters.join(" "));
            }
            s
        }
        Format::Text => {
            let mut s = format!("type {}\nj {}\nsize {}\nlongest {:?}\n", js.type_label, js.j, js.size, js.longest_word);
            if words {
                for w in fam.words() {
                    let _ = writeln!(s, "{:?}", w.one_based());
                }
            }
            s
        }
    };
    Ok(Outcome::ok(out))
}

fn cmd_string(format: Format, lie_type: &str, parabolic: &str, beta: usize) -> Result<Outcome, Usage> {
    let t = parse_type(lie_type)?;
    let data = RootData::of_type(t);
    let p = proper_parabolic(parabolic, data.rank())?;
    let b = vertex(beta, data.rank())?;
    if p.contains(b) {
        return Err(usage(anyhow!("beta = {beta} lies in S_P")));
    }
    let s = maximal_good_string(&data, &p, b).map_err(usage)?;
    let cert = certify(&data, &s);
    let js = string_json(&data, &s);
    let out = match format {
        Format::Json => to_json(&js),
        Format::Csv => {
            let mut out = String::from("index,coroot,height\n");
            for (i, e) in s.elements().iter().enumerate() {
                let _ = writeln!(out, "{i},\"{}\",{}", tuple(&e.0), e.height());
            }
            out
        }
        Format::Text => {
            let mut out = format!(
                "type {}\nbeta {}\nn_beta {}\ngood {}\nmaximal {}\n",
                js.type_label, js.beta, js.n_beta, js.good, js.maximal
            );
            for e in s.elements() {
                let _ = writeln!(out, "{} {}", tuple(&e.0), e.height());
            }
            out
        }
    };
    Ok(Outcome {
        output: out,
        falsified: !(cert.valid && cert.good && cert.maximal),
    })
}

fn cmd_hilbert(format: Format, lie_type: &str, parabolic: &str, weight: Option<&str>) -> Result<Outcome, Usage> {
    let t = parse_type(lie_type)?;
    let data = RootData::of_type(t);
    let p = proper_parabolic(parabolic, data.rank())?;
    let h = hilbert(&data, &p).map_err(usage)?;
    let value = match weight {
        Some(w) => {
            let vals = parse_list(w).map_err(usage)?;
            let w = Weight::from_free(&vals, &p).map_err(usage)?;
            Some(h.evaluate(&w))
        }
        None => None,
    };
    let factors: Vec<String> = h.factors().iter().map(|f| f.to_string()).collect();
    let variables: Vec<String> = h.variables().iter().map(|v| format!("k{}", v + 1)).collect();
    let out = match format {
        Format::Json => {
            let mut v = json!({
                "type": data.cartan().label(),
                "S_P": p.members().iter().map(|v| v + 1).collect::<Vec<_>>(),
                "variables": variables,
                "degree": h.degree(),
                "factors": factors,
                "denominator": h.denominator().to_string(),
            });
            if let Some(val) = &value {
                v["value"] = Value::String(val.to_string());
            }
            to_json(&v)
        }
        Format::Csv => {
            let mut s = String::from("factor\n");
            for f in &factors {
                let _ = writeln!(s, "\"{f}\"");
            }
            s
        }
        Format::Text => {
            let num: Vec<String> = factors.iter().map(|f| format!("({f})")).collect();
            let mut s = format!("H = {} / {}\n", num.join(""), h.denominator());
            if let Some(val) = &value {
                let _ = writeln!(s, "value {val}");
            }
            s
        }
    };
    Ok(Outcome::ok(out))
}

fn cmd_verify(format: Format, lie_type: &str, parabolic: &str) -> Result<Outcome, Usage> {
    let t = parse_type(lie_type)?;
    let data = RootData::of_type(t);
    let p = proper_parabolic(parabolic, data.rank())?;
    let r = verify_case(&data, &p, DEGREE_BOX_LIMIT).map_err(usage)?;
    let out = match format {
        Format::Json => to_json(&r),
        Format::Csv => format!("{}\n{}\n", csv_header(), csv_row(&r)),
        Format::Text => {
            let mut s = format!(
                "type {} S_P {:?}\ndim {} b2 {} k0 {}\nn_beta {:?}\nbox {} points, all zero {}\nH(-c1) = {}\npasquier {} <= {} {}\nmukai {} <= {} {}{}\n",
                r.type_label,
                r.parabolic,
                r.dim,
                r.b2,
                r.index_k0,
                r.n_beta,
                r.box_points_checked,
                r.box_all_zero,
                r.value_at_minus_c1,
                r.pasquier.lhs,
                r.pasquier.rhs,
                r.pasquier.ok,
                r.mukai.lhs,
                r.mukai.rhs,
                r.mukai.ok,
                if r.mukai_equality { " (equality)" } else { "" },
            );
            for c in &r.factor_certificates {
                let _ = writeln!(s, "beta {}: {}", c.beta, c.factors.join(", "));
            }
            for f in &r.failures {
                let _ = writeln!(s, "FAIL {f}");
            }
            s
        }
    };
    Ok(Outcome {
        output: out,
        falsified: !r.ok(),
    })
}

fn jobs_from_env(flag: usize) -> anyhow::Result<usize> {
    match std::env::var("KOSTANT_JOBS") {
        Ok(v) => v
            .trim()
            .parse()
            .with_context(|| format!("KOSTANT_JOBS is not a number: `{v}`")),
        Err(_) => Ok(flag),
    }
}

fn cmd_survey(format: Format, max_rank: usize, jobs: usize) -> Result<Outcome, Usage> {
    if max_rank == 0 {
        return Err(usage(anyhow!("--max-rank must be at least 1")));
    }
    let jobs = jobs_from_env(jobs).map_err(usage)?;
    let r = run_survey(max_rank, jobs).map_err(usage)?;
    let out = match format {
        Format::Json => to_json(&r),
        Format::Csv => {
            let mut s = format!("{}\n", csv_header());
            for c in &r.cases {
                let _ = writeln!(s, "{}", csv_row(c));
            }
            s
        }
        Format::Text => {
            let mut s = format!(
                "cases {}\nfailures {}\nwall_time {:.3}s\n",
                r.summary.cases,
                r.summary.failures.len(),
                r.summary.wall_time
            );
            for f in &r.summary.failures {
                let _ = writeln!(s, "FAIL {f}");
            }
            s
        }
    };
    Ok(Outcome {
        output: out,
        falsified: !r.ok(),
    })
}
