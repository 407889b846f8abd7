//! Command-line front end: element algebra, length queries, oracle
//! verification, censuses and report emission.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use thompson_metric::cayley::{
    bfs_ball, dead_end_depth, extract_geodesic, fellow_traveller_divergence, find_dead_ends,
    DepthResult, DEFAULT_NODE_CAP,
};
use thompson_metric::diagram::{evaluate_word, TreePairDiagram};
use thompson_metric::plmap::diagram_to_map;
use thompson_metric::error::{Error, Result};
use thompson_metric::families::{
    is_dead_end_with, seesaw_normal_form, seesaw_word, structural_dead_end_check, verify_seesaw,
    SeesawParams,
};
use thompson_metric::metric::WeightTable;
use thompson_metric::tree::GroupParams;
use thompson_metric::words::{GeneratorLetter, GroupWord};

#[derive(Parser)]
#[command(
    name = "thompson-metric",
    version,
    about = "Geodesic lengths, oracles and element families for the groups F(p+1)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Args)]
struct Common {
    /// Group parameter p (trees have arity p+1). Defaults to 1, or to
    /// the p= field when the input is a serialized diagram.
    #[arg(short)]
    p: Option<usize>,
    /// Output format.
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Write the output to a file instead of stdout.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct BallArgs {
    /// Ball radius.
    #[arg(short, long)]
    radius: u32,
    /// Abort if the ball exceeds this many elements.
    #[arg(long, default_value_t = DEFAULT_NODE_CAP)]
    cap: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Geodesic length of an element (word or serialized diagram).
    Len {
        #[command(flatten)]
        common: Common,
        /// Element: a word like "0 1^-1" or a diagram "p=..;neg=..;pos=..".
        element: String,
        /// Also print the per-caret weight table.
        #[arg(long)]
        explain: bool,
    },
    /// Product of two elements.
    Mul {
        #[command(flatten)]
        common: Common,
        left: String,
        right: String,
    },
    /// Inverse of an element.
    Inv {
        #[command(flatten)]
        common: Common,
        element: String,
    },
    /// Reduce a (possibly unreduced) serialized diagram.
    Reduce {
        #[command(flatten)]
        common: Common,
        element: String,
    },
    /// The piecewise-linear map of an element, as breakpoints.
    Map {
        #[command(flatten)]
        common: Common,
        element: String,
    },
    /// Verify the length formula against breadth-first search distances.
    VerifyMetric {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        ball: BallArgs,
    },
    /// Enumerate a ball and report every dead end with length and depth.
    DeadendCensus {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        ball: BallArgs,
    },
    /// Dead-end depth of an element.
    Depth {
        #[command(flatten)]
        common: Common,
        element: String,
    },
    /// Build a seesaw word and verify its swing.
    Seesaw {
        #[command(flatten)]
        common: Common,
        #[arg(short)]
        m: u32,
        #[arg(short)]
        n: u32,
        #[arg(short)]
        k: u32,
    },
    /// Extract a geodesic representative of an element.
    Geodesic {
        #[command(flatten)]
        common: Common,
        element: String,
    },
    /// Fellow-traveller divergence of the geodesics to two nearby elements.
    Diverge {
        #[command(flatten)]
        common: Common,
        left: String,
        right: String,
    },
}

const SCHEMA: &str = "thompson-metric/1";

/// Parses an element given either as a word in the generators or as a
/// serialized diagram. A diagram's own p= field wins; a conflicting -p
/// is an error.
fn parse_element(p_flag: Option<usize>, text: &str) -> Result<TreePairDiagram> {
    let trimmed = text.trim();
    if trimmed.starts_with("p=") {
        let d = TreePairDiagram::parse(trimmed)?;
        if let Some(p) = p_flag {
            if p != d.params().p {
                return Err(Error::Parse(format!(
                    "-p {p} conflicts with the diagram's p={}",
                    d.params().p
                )));
            }
        }
        Ok(d)
    } else {
        let params = GroupParams::new(p_flag.unwrap_or(1))?;
        let word = GroupWord::parse(trimmed)?;
        Ok(evaluate_word(params, &word))
    }
}

fn group_params(p_flag: Option<usize>) -> Result<GroupParams> {
    GroupParams::new(p_flag.unwrap_or(1))
}

fn emit(common: &Common, body: String) -> Result<()> {
    match &common.output {
        Some(path) => std::fs::write(path, body)?,
        None => print!("{body}"),
    }
    Ok(())
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Len {
            common,
            element,
            explain,
        } => {
            let d = parse_element(common.p, &element)?;
            let table = WeightTable::new(d.params());
            let report = table.length_report(&d)?;
            let body = match common.format {
                Format::Text => {
                    let mut s = format!("{}\n", report.total);
                    if explain {
                        for c in &report.per_caret {
                            s.push_str(&format!(
                                "{}\t({}, {})\t{}\n",
                                c.index, c.neg_type, c.pos_type, c.weight
                            ));
                        }
                    }
                    s
                }
                Format::Json => {
                    let mut v = json!({
                        "schema": SCHEMA,
                        "p": d.params().p,
                        "length": report.total,
                    });
                    if explain {
                        v["carets"] = report
                            .per_caret
                            .iter()
                            .map(|c| {
                                json!({
                                    "index": c.index,
                                    "neg_type": c.neg_type.to_string(),
                                    "pos_type": c.pos_type.to_string(),
                                    "weight": c.weight,
                                })
                            })
                            .collect();
                    }
                    format!("{v:#}\n")
                }
                Format::Csv => {
                    let mut s = String::from("index,neg_type,pos_type,weight\n");
                    for c in &report.per_caret {
                        s.push_str(&format!(
                            "{},{},{},{}\n",
                            c.index, c.neg_type, c.pos_type, c.weight
                        ));
                    }
                    s
                }
            };
            emit(&common, body)?;
            Ok(true)
        }
        Command::Mul {
            common,
            left,
            right,
        } => {
            let a = parse_element(common.p, &left)?;
            let b = parse_element(Some(a.params().p), &right)?;
            let prod = a.multiply(&b);
            let body = match common.format {
                Format::Json => format!(
                    "{:#}\n",
                    json!({"schema": SCHEMA, "p": prod.params().p, "product": prod.canonical_key()})
                ),
                _ => format!("{}\n", prod.canonical_key()),
            };
            emit(&common, body)?;
            Ok(true)
        }
        Command::Inv { common, element } => {
            let d = parse_element(common.p, &element)?;
            let inv = d.inverse();
            let body = match common.format {
                Format::Json => format!(
                    "{:#}\n",
                    json!({"schema": SCHEMA, "p": inv.params().p, "inverse": inv.canonical_key()})
                ),
                _ => format!("{}\n", inv.canonical_key()),
            };
            emit(&common, body)?;
            Ok(true)
        }
        Command::Reduce { common, element } => {
            let d = parse_element(common.p, &element)?;
            let red = d.reduce();
            let body = match common.format {
                Format::Json => format!(
                    "{:#}\n",
                    json!({"schema": SCHEMA, "p": red.params().p, "reduced": red.canonical_key()})
                ),
                _ => format!("{}\n", red.canonical_key()),
            };
            emit(&common, body)?;
            Ok(true)
        }
        Command::Map { common, element } => {
            let d = parse_element(common.p, &element)?;
            let m = diagram_to_map(&d);
            let body = match common.format {
                Format::Text => format!("{m}\n"),
                Format::Json => {
                    let pts: Vec<_> = m
                        .breakpoints()
                        .iter()
                        .map(|(x, y)| json!([x.to_string(), y.to_string()]))
                        .collect();
                    format!(
                        "{:#}\n",
                        json!({"schema": SCHEMA, "p": d.params().p, "breakpoints": pts})
                    )
                }
                Format::Csv => {
                    let mut s = String::from("x,y\n");
                    for (x, y) in m.breakpoints() {
                        s.push_str(&format!("{x},{y}\n"));
                    }
                    s
                }
            };
            emit(&common, body)?;
            Ok(true)
        }
        Command::VerifyMetric { common, ball } => {
            let params = group_params(common.p)?;
            let dm = bfs_ball(params, ball.radius, ball.cap)?;
            let mismatches = thompson_metric::cayley::verify_metric(&dm)?;
            let pass = mismatches.is_empty();
            let body = match common.format {
                Format::Csv => {
                    let mut s = String::from("distance,sphere_size\n");
                    for (r, n) in dm.sphere_sizes().iter().enumerate() {
                        s.push_str(&format!("{r},{n}\n"));
                    }
                    s
                }
                Format::Text => format!(
                    "ball size {}\nsphere sizes {:?}\nmismatches {}\n{}\n",
                    dm.len(),
                    dm.sphere_sizes(),
                    mismatches.len(),
                    if pass { "PASS" } else { "FAIL" }
                ),
                Format::Json => format!(
                    "{:#}\n",
                    json!({
                        "schema": SCHEMA,
                        "p": params.p,
                        "radius": dm.radius(),
                        "ball_size": dm.len(),
                        "sphere_sizes": dm.sphere_sizes(),
                        "mismatch_count": mismatches.len(),
                        "mismatches": mismatches.iter().take(20).map(|m| json!({
                            "key": m.key,
                            "bfs_distance": m.bfs_distance,
                            "computed_length": m.computed_length,
                        })).collect::<Vec<_>>(),
                        "pass": pass,
                    })
                ),
            };
            emit(&common, body)?;
            Ok(pass)
        }
        Command::DeadendCensus { common, ball } => {
            let params = group_params(common.p)?;
            let dm = bfs_ball(params, ball.radius, ball.cap)?;
            let table = WeightTable::new(params);
            let dead = find_dead_ends(&dm)?;

            // Both recognizers must agree on every interior element.
            let mut equivalence_failures = Vec::new();
            for (key, dist) in dm.entries() {
                if dist + 1 > dm.radius() {
                    continue;
                }
                let d = TreePairDiagram::parse(key)?;
                let defn = is_dead_end_with(&d, &table)?;
                let structural = structural_dead_end_check(&d)?.is_dead_end;
                if defn != structural {
                    equivalence_failures.push(key.to_string());
                }
            }

            let mut entries = Vec::new();
            let mut depth_failures = Vec::new();
            for key in &dead {
                let d = TreePairDiagram::parse(key)?;
                let length = table.length_report(&d)?.total;
                let depth = match dead_end_depth(&d, 4)? {
                    DepthResult::Depth(n) => {
                        if n != 2 {
                            depth_failures.push(key.clone());
                        }
                        Some(n)
                    }
                    _ => {
                        depth_failures.push(key.clone());
                        None
                    }
                };
                entries.push((key.clone(), length, depth));
            }
            let pass = equivalence_failures.is_empty() && depth_failures.is_empty();

            let body = match common.format {
                Format::Csv => {
                    let mut s = String::from("key,length,depth\n");
                    for (key, length, depth) in &entries {
                        s.push_str(&format!(
                            "{key},{length},{}\n",
                            depth.map_or("-".into(), |d| d.to_string())
                        ));
                    }
                    s
                }
                Format::Text => {
                    let mut s = format!(
                        "ball size {}\nsphere sizes {:?}\ndead ends {}\n",
                        dm.len(),
                        dm.sphere_sizes(),
                        entries.len()
                    );
                    for (key, length, depth) in &entries {
                        s.push_str(&format!(
                            "{key}\tlength {length}\tdepth {}\n",
                            depth.map_or("-".into(), |d| d.to_string())
                        ));
                    }
                    s.push_str(if pass { "PASS\n" } else { "FAIL\n" });
                    s
                }
                Format::Json => format!(
                    "{:#}\n",
                    json!({
                        "schema": SCHEMA,
                        "p": params.p,
                        "radius": dm.radius(),
                        "ball_size": dm.len(),
                        "sphere_sizes": dm.sphere_sizes(),
                        "dead_ends": entries.iter().map(|(key, length, depth)| json!({
                            "key": key,
                            "length": length,
                            "depth": depth,
                        })).collect::<Vec<_>>(),
                    })
                ),
            };
            emit(&common, body)?;
            if !equivalence_failures.is_empty() {
                eprintln!(
                    "recognizer equivalence failed on {} elements, first: {}",
                    equivalence_failures.len(),
                    equivalence_failures[0]
                );
            }
            if !depth_failures.is_empty() {
                eprintln!("dead ends without depth 2: {depth_failures:?}");
            }
            Ok(pass)
        }
        Command::Depth { common, element } => {
            let d = parse_element(common.p, &element)?;
            let result = dead_end_depth(&d, 4)?;
            let body = match common.format {
                Format::Json => {
                    let (dead, depth) = match result {
                        DepthResult::NotADeadEnd => (false, None),
                        DepthResult::Depth(n) => (true, Some(n)),
                        DepthResult::ExceedsMax => (true, None),
                    };
                    format!(
                        "{:#}\n",
                        json!({"schema": SCHEMA, "p": d.params().p, "dead_end": dead, "depth": depth})
                    )
                }
                _ => match result {
                    DepthResult::NotADeadEnd => "not a dead end\n".into(),
                    DepthResult::Depth(n) => format!("{n}\n"),
                    DepthResult::ExceedsMax => "depth exceeds search bound\n".into(),
                },
            };
            emit(&common, body)?;
            Ok(true)
        }
        Command::Seesaw { common, m, n, k } => {
            let p = common.p.unwrap_or(1);
            let sp = SeesawParams::new(p, m, n, k)?;
            let word = seesaw_normal_form(&sp);
            let w = seesaw_word(&sp)?;
            let verdict = verify_seesaw(&w, GeneratorLetter::new(0), k)?;
            let length = WeightTable::new(w.params()).length_report(&w)?.total;
            let body = match common.format {
                Format::Csv => {
                    let mut s = String::from("q,length\n");
                    for (q, len) in &verdict.profile {
                        s.push_str(&format!("{q},{len}\n"));
                    }
                    s
                }
                Format::Text => {
                    let mut s = format!("word {word}\nlength {length}\n");
                    for (q, len) in &verdict.profile {
                        s.push_str(&format!("{q}\t{len}\n"));
                    }
                    s.push_str(if verdict.ok { "PASS\n" } else { "FAIL\n" });
                    if !verdict.ok {
                        for f in &verdict.condition1_failures {
                            s.push_str(&format!(
                                "condition 1 fails at power {}: expected {}, got {}\n",
                                f.power, f.expected, f.actual
                            ));
                        }
                        for f in &verdict.condition2_failures {
                            s.push_str(&format!(
                                "condition 2 fails at power {}: letter {} shortens {} to {}\n",
                                f.power, f.letter, f.base_length, f.extended_length
                            ));
                        }
                    }
                    s
                }
                Format::Json => format!(
                    "{:#}\n",
                    json!({
                        "schema": SCHEMA,
                        "p": p,
                        "m": m,
                        "n": n,
                        "k": k,
                        "word": word.to_string(),
                        "length": length,
                        "profile": verdict.profile,
                        "pass": verdict.ok,
                        "strict_reading_pass": verdict.strict_reading_ok,
                    })
                ),
            };
            emit(&common, body)?;
            Ok(verdict.ok)
        }
        Command::Geodesic { common, element } => {
            let d = parse_element(common.p, &element)?;
            let word = extract_geodesic(&d)?;
            let body = match common.format {
                Format::Json => format!(
                    "{:#}\n",
                    json!({
                        "schema": SCHEMA,
                        "p": d.params().p,
                        "word": word.to_string(),
                        "length": word.len(),
                    })
                ),
                _ => format!("{word}\n"),
            };
            emit(&common, body)?;
            Ok(true)
        }
        Command::Diverge {
            common,
            left,
            right,
        } => {
            let u = parse_element(common.p, &left)?;
            let v = parse_element(Some(u.params().p), &right)?;
            let divergence = fellow_traveller_divergence(&u, &v, None)?;
            let body = match common.format {
                Format::Json => format!(
                    "{:#}\n",
                    json!({"schema": SCHEMA, "p": u.params().p, "divergence": divergence})
                ),
                _ => format!("{divergence}\n"),
            };
            emit(&common, body)?;
            Ok(true)
        }
    }
}

fn error_exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_) | Error::InvalidDiagram(_) | Error::Precondition(_) => 2,
        Error::CapExceeded { .. } => 3,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(error_exit_code(&e))
        }
    }
}
