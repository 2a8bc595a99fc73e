use std::path::PathBuf;
use std::process::ExitCode;

use braidvol::allastate::{render_state_svg, AllAState};
use braidvol::jonesoracle::bracket_with_summary;
use braidvol::SyllableWord;
use braidvol_cli::batch::{run_batch, to_jsonl};
use braidvol_cli::report::{analyze, parse_word, render_text, Options};
use braidvol_cli::{generate, verify, GeneratorSpec};
use clap::{Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(
    name = "braidvol",
    version,
    about = "Volume bounds and normal forms for closed braids"
)]
struct Cli {
    /// Number of strands; inferred from the largest generator when omitted
    #[arg(long, global = true)]
    n: Option<usize>,

    /// Emit JSON instead of text
    #[arg(long, global = true)]
    json: bool,

    /// Seed for `gen`
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Run the Kauffman bracket oracle
    #[arg(long, global = true)]
    bracket: bool,

    /// Refuse bracket computations above this many crossings
    #[arg(long, global = true, default_value_t = 20)]
    max_crossings: usize,

    /// Apply bound formulas even when the Main Lemma check fails
    #[arg(long, global = true)]
    unsafe_assume_prime: bool,

    /// Compute the Jones-coefficient bounds (exit 3 when they do not apply)
    #[arg(long, global = true)]
    jones: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Full report for one braid word
    Analyze {
        #[arg(allow_hyphen_values = true)]
        word: String,
    },
    /// One JSON report per line of a file
    Batch { path: PathBuf },
    /// Sample words satisfying the Main Lemma conditions
    Gen {
        #[arg(long)]
        syllables: usize,
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long, default_value_t = 6)]
        neg_max: i32,
        #[arg(long, default_value_t = 4)]
        pos_max: i32,
    },
    /// Run every cross-identity check on a family word
    Verify {
        #[arg(allow_hyphen_values = true)]
        word: String,
    },
    /// Schreier normal form of a 3-braid
    Schreier {
        #[arg(allow_hyphen_values = true)]
        word: String,
    },
    /// Kauffman bracket and its all-A end
    Bracket {
        #[arg(allow_hyphen_values = true)]
        word: String,
    },
    /// All-A state summary, optionally drawn as SVG
    State {
        #[arg(allow_hyphen_values = true)]
        word: String,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Main Lemma conditions only
    Check {
        #[arg(allow_hyphen_values = true)]
        word: String,
    },
}

fn fail(code: u8, message: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {message}");
    ExitCode::from(code)
}

fn parse(cli: &Cli, text: &str) -> Result<SyllableWord, ExitCode> {
    parse_word(text, cli.n).map_err(|e| fail(2, format!("parse error: {e}")))
}

fn print_json(value: &impl serde::Serialize) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("serializable")
    );
}

fn run(cli: &Cli) -> Result<ExitCode, ExitCode> {
    let options = Options {
        bracket: cli.bracket,
        max_crossings: cli.max_crossings,
        jones: cli.jones,
        assume_prime: cli.unsafe_assume_prime,
    };
    match &cli.command {
        Command::Analyze { word } => {
            let parsed = parse(cli, word)?;
            let report =
                analyze(word, &parsed, &options).map_err(|e| fail(e.exit_code() as u8, e))?;
            if cli.json {
                print_json(&report);
            } else {
                println!("{}", render_text(&report));
            }
        }
        Command::Batch { path } => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| fail(1, format!("{}: {e}", path.display())))?;
            print!("{}", to_jsonl(&run_batch(&text, cli.n, &options)));
        }
        Command::Gen {
            syllables,
            count,
            neg_max,
            pos_max,
        } => {
            let n = cli.n.ok_or_else(|| fail(2, "gen needs --n"))?;
            let spec = GeneratorSpec {
                n,
                syllable_count: *syllables,
                neg_max: *neg_max,
                pos_max: *pos_max,
                seed: cli.seed,
                count: *count,
            };
            let words = generate(&spec).map_err(|e| fail(2, e))?;
            if cli.json {
                print_json(&words.iter().map(ToString::to_string).collect::<Vec<_>>());
            } else {
                for w in words {
                    println!("{w}");
                }
            }
        }
        Command::Verify { word } => {
            let parsed = parse(cli, word)?;
            let v = verify(&parsed, cli.max_crossings);
            if cli.json {
                print_json(&v);
            } else if !v.gated {
                println!("{}: outside the Main Lemma family", v.word);
            } else {
                for c in &v.checks {
                    let mark = if c.pass { "PASS" } else { "FAIL" };
                    println!("{mark} {:<32} {}", c.name, c.detail);
                }
            }
            return Ok(ExitCode::from(v.exit_code() as u8));
        }
        Command::Schreier { word } => {
            let parsed = parse(cli, word)?;
            if parsed.strands() != 3 {
                return Err(fail(
                    3,
                    format!("expected a 3-braid, got {} strands", parsed.strands()),
                ));
            }
            let report = analyze(word, &parsed, &Options::default())
                .map_err(|e| fail(e.exit_code() as u8, e))?;
            let s = report.schreier.expect("3-braid report");
            if cli.json {
                print_json(&s);
            } else {
                println!(
                    "k = {}, s = {}, eta = {}, pairs = {:?}",
                    s.k, s.s, s.eta_kind, s.pairs
                );
                println!("generic = {}, hyperbolic = {}", s.generic, s.hyperbolic);
                if let Some(reason) = s.reason {
                    println!("reason: {reason}");
                }
            }
        }
        Command::Bracket { word } => {
            let parsed = parse(cli, word)?;
            let (polynomial, summary) = match bracket_with_summary(&parsed, cli.max_crossings) {
                Ok((p, s)) => (p, Some(s)),
                Err(braidvol::OracleError::NotAdequate) => (
                    braidvol::jonesoracle::kauffman_bracket(&parsed, cli.max_crossings)
                        .map_err(|e| fail(3, e))?,
                    None,
                ),
                Err(e) => return Err(fail(3, e)),
            };
            if cli.json {
                print_json(&serde_json::json!({ "polynomial": polynomial, "summary": summary }));
            } else {
                println!("{polynomial}");
                print_json(&summary);
            }
        }
        Command::State { word, svg } => {
            let parsed = parse(cli, word)?;
            let state = AllAState::build(&parsed);
            if let Some(path) = svg {
                std::fs::write(path, render_state_svg(&state))
                    .map_err(|e| fail(1, format!("{}: {e}", path.display())))?;
            }
            let census = state.census();
            if cli.json {
                print_json(&serde_json::json!({
                    "census": census,
                    "graph": state.reduced_graph(),
                    "a_adequate": state.is_a_adequate(),
                    "telc": state.satisfies_telc(),
                }));
            } else {
                println!("circles  {}", state.circles().len());
                for c in state.circles() {
                    let class = c.class.map_or("untraced".to_owned(), |k| format!("{k:?}"));
                    println!(
                        "  {:>3} {:<22} winding {} support {:?}",
                        c.id, class, c.winding, c.support
                    );
                }
                println!("segments {}", state.segments().len());
                println!("-chi     {}", state.reduced_graph().neg_chi);
            }
        }
        Command::Check { word } => {
            let parsed = parse(cli, word)?;
            let report = braidvol::check_main_lemma(&parsed);
            if cli.json {
                print_json(&report);
            } else {
                println!("{}", if report.pass { "pass" } else { "fail" });
                for f in &report.cond1_failures {
                    println!("  cond1 fails at syllable {f}");
                }
                for f in &report.cond2_failures {
                    println!(
                        "  cond{} fails at syllable {}: {}",
                        f.clause, f.syllable, f.reason
                    );
                }
            }
            if !report.pass {
                return Ok(ExitCode::from(3));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) | Err(code) => code,
    }
}
