use clap::{Parser, Subcommand};
use serde_json::json;

use vbraid::{
    apply_gauss_move, apply_move, braid_morse_report, bracket_braid_limited,
    bracket_gauss_limited, close_braid, destab, equiv_within, evaluate_morse, f_poly,
    f_poly_braid, free_reduce, lmove_classical, lmove_virtual, odd_writhe, random_word, stab,
    thread_left, thread_right, underlying_permutation, writhe, BraidWord, Error, GaussCode,
    Generator, GaussMove, LmoveFlavor, MorseWord, Move, SearchBudget, Sign, StabFlavor, Verdict,
};

/// Virtual braid words: rewriting, closures, invariants, and search.
#[derive(Parser)]
#[command(name = "vbraid", version, propagate_version = true)]
struct Cli {
    /// Print results as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Crossing budget for bracket-polynomial evaluations.
    #[arg(long, global = true, default_value_t = 20)]
    max_crossings: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a braid word and print it back in canonical form.
    Parse { word: String },
    /// Freely reduce a braid word.
    Normalize { word: String },
    /// Print the underlying permutation (images of the top positions).
    Perm { word: String },
    /// Print the writhe of a braid word.
    Writhe { word: String },
    /// Print the canonical Gauss code of a braid word's closure.
    Close { word: String },
    /// Evaluate the bracket polynomial of a closure or code.
    Bracket {
        input: String,
        /// Treat the input as a Gauss code instead of a braid word.
        #[arg(long)]
        code: bool,
    },
    /// Evaluate the writhe-normalized bracket polynomial.
    Fpoly {
        input: String,
        /// Treat the input as a Gauss code instead of a braid word.
        #[arg(long)]
        code: bool,
    },
    /// Print the odd writhe of a one-component closure or code.
    Oddwrithe {
        input: String,
        /// Treat the input as a Gauss code instead of a braid word.
        #[arg(long)]
        code: bool,
    },
    /// Apply a move record (JSON) to a braid word.
    #[command(name = "move")]
    Apply { record: String, word: String },
    /// Insert a strand through a cut point of a braid word.
    Lmove {
        word: String,
        /// Cut position between letters (0 through the word length).
        #[arg(long)]
        p: usize,
        /// Strand position the insertion attaches to.
        #[arg(long)]
        j: usize,
        /// One of `virtual`, `real`, `over`, `under`.
        #[arg(long, value_parser = parse_lmove_flavor)]
        flavor: LmoveFlavor,
        /// Crossing sign (1 or -1), for the `real` flavor only.
        #[arg(long, value_parser = parse_sign, allow_hyphen_values = true)]
        eps: Option<Sign>,
    },
    /// Thread the rightmost strand through a new strand on the right.
    ThreadRight {
        word: String,
        #[arg(long, value_parser = parse_sign, allow_hyphen_values = true)]
        eps: Sign,
    },
    /// Thread the leftmost strand through a new strand on the right.
    ThreadLeft {
        word: String,
        #[arg(long, value_parser = parse_sign, allow_hyphen_values = true)]
        eps: Sign,
    },
    /// Append a stabilizing crossing on a new strand.
    Stab {
        word: String,
        /// One of `virtual`, `real`.
        #[arg(long, value_parser = parse_stab_flavor)]
        flavor: StabFlavor,
        /// Crossing sign (1 or -1), for the `real` flavor only.
        #[arg(long, value_parser = parse_sign, allow_hyphen_values = true)]
        eps: Option<Sign>,
    },
    /// Remove a stabilizing crossing and its strand.
    Destab { word: String },
    /// Apply a Gauss-code move record (JSON) to a code.
    Gmove { record: String, code: String },
    /// Rewrite a Morse diagram into a braid word with the same closure.
    Braid { morse: String },
    /// Print the canonical Gauss code of a Morse diagram.
    EvalMorse { morse: String },
    /// Search for a move sequence connecting two braid words.
    Equiv {
        a: String,
        b: String,
        #[arg(long, default_value_t = 6)]
        max_strands: usize,
        #[arg(long, default_value_t = 16)]
        max_len: usize,
        #[arg(long, default_value_t = 200_000)]
        max_nodes: usize,
    },
    /// Generate a seeded random braid word.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        len: usize,
        #[arg(long)]
        seed: u64,
    },
    /// Draw a braid word row by row.
    Render { word: String },
}

fn parse_sign(s: &str) -> Result<Sign, String> {
    let value: i8 = s.parse().map_err(|_| format!("expected 1 or -1, got `{s}`"))?;
    Sign::try_from(value).map_err(|e| e.to_string())
}

fn parse_stab_flavor(s: &str) -> Result<StabFlavor, String> {
    match s {
        "virtual" => Ok(StabFlavor::Virtual),
        "real" => Ok(StabFlavor::Real),
        _ => Err(format!("expected `virtual` or `real`, got `{s}`")),
    }
}

fn parse_lmove_flavor(s: &str) -> Result<LmoveFlavor, String> {
    match s {
        "virtual" => Ok(LmoveFlavor::Virtual),
        "real" => Ok(LmoveFlavor::Real),
        "over" => Ok(LmoveFlavor::Over),
        "under" => Ok(LmoveFlavor::Under),
        _ => Err(format!("expected `virtual`, `real`, `over` or `under`, got `{s}`")),
    }
}

fn bad_record(e: serde_json::Error) -> Error {
    Error::Parse {
        pos: e.column().saturating_sub(1),
        msg: format!("bad move record: {e}"),
    }
}

fn print_word(word: &BraidWord, as_json: bool) {
    if as_json {
        println!("{}", serde_json::to_string(word).expect("serializable"));
    } else {
        println!("{word}");
    }
}

fn print_code(code: &GaussCode, as_json: bool) {
    if as_json {
        println!("{}", serde_json::to_string(code).expect("serializable"));
    } else {
        println!("{code}");
    }
}

fn print_poly(poly: &vbraid::LaurentPoly, as_json: bool) {
    if as_json {
        println!("{}", serde_json::to_string(poly).expect("serializable"));
    } else {
        println!("{poly}");
    }
}

fn render_rows(word: &BraidWord) -> Vec<String> {
    let n = word.strands();
    if word.is_empty() {
        return vec![vec!["|"; n].join(" ")];
    }
    word.letters()
        .iter()
        .map(|g| {
            let mut glyphs = vec!["|"; n];
            match *g {
                Generator::Sigma(i) => {
                    glyphs[i - 1] = "O";
                    glyphs[i] = "u";
                }
                Generator::SigmaInv(i) => {
                    glyphs[i - 1] = "u";
                    glyphs[i] = "O";
                }
                Generator::V(i) => {
                    glyphs[i - 1] = "v";
                    glyphs[i] = "v";
                }
            }
            format!("{}  {}", glyphs.join(" "), g)
        })
        .collect()
}

fn run(cli: Cli) -> Result<(), Error> {
    let as_json = cli.json;
    let limit = cli.max_crossings;
    match cli.command {
        Command::Parse { word } => print_word(&word.parse()?, as_json),
        Command::Normalize { word } => print_word(&free_reduce(&word.parse()?), as_json),
        Command::Perm { word } => {
            let images = underlying_permutation(&word.parse()?).images().to_vec();
            if as_json {
                println!("{}", json!({ "images": images }));
            } else {
                let texts: Vec<String> = images.iter().map(usize::to_string).collect();
                println!("{}", texts.join(" "));
            }
        }
        Command::Writhe { word } => {
            let value = writhe(&word.parse()?);
            if as_json {
                println!("{}", json!({ "writhe": value }));
            } else {
                println!("{value}");
            }
        }
        Command::Close { word } => print_code(&close_braid(&word.parse()?), as_json),
        Command::Bracket { input, code } => {
            let poly = if code {
                bracket_gauss_limited(&input.parse()?, limit)?
            } else {
                bracket_braid_limited(&input.parse()?, limit)?
            };
            print_poly(&poly, as_json);
        }
        Command::Fpoly { input, code } => {
            let poly = if code {
                f_poly(&input.parse()?, limit)?
            } else {
                f_poly_braid(&input.parse()?, limit)?
            };
            print_poly(&poly, as_json);
        }
        Command::Oddwrithe { input, code } => {
            let value = if code {
                odd_writhe(&input.parse()?)?
            } else {
                odd_writhe(&close_braid(&input.parse()?))?
            };
            if as_json {
                println!("{}", json!({ "odd_writhe": value }));
            } else {
                println!("{value}");
            }
        }
        Command::Apply { record: text, word } => {
            let mv: Move = serde_json::from_str(&text).map_err(bad_record)?;
            print_word(&apply_move(&word.parse()?, &mv)?, as_json);
        }
        Command::Lmove { word, p, j, flavor, eps } => {
            let word: BraidWord = word.parse()?;
            let moved = match flavor {
                LmoveFlavor::Virtual | LmoveFlavor::Real => lmove_virtual(&word, p, j, flavor, eps)?,
                LmoveFlavor::Over | LmoveFlavor::Under => {
                    if eps.is_some() {
                        return Err(Error::InvalidMove(
                            "over/under strand insertion takes no sign".into(),
                        ));
                    }
                    lmove_classical(&word, p, j, flavor)?
                }
            };
            print_word(&moved, as_json);
        }
        Command::ThreadRight { word, eps } => {
            print_word(&thread_right(&word.parse()?, eps)?, as_json)
        }
        Command::ThreadLeft { word, eps } => {
            print_word(&thread_left(&word.parse()?, eps)?, as_json)
        }
        Command::Stab { word, flavor, eps } => {
            print_word(&stab(&word.parse()?, flavor, eps)?, as_json)
        }
        Command::Destab { word } => print_word(&destab(&word.parse()?)?, as_json),
        Command::Gmove { record: text, code } => {
            let mv: GaussMove = serde_json::from_str(&text).map_err(bad_record)?;
            print_code(&apply_gauss_move(&code.parse()?, &mv)?, as_json);
        }
        Command::Braid { morse } => {
            let (braid, stats) = braid_morse_report(&morse.parse::<MorseWord>()?)?;
            if as_json {
                println!(
                    "{}",
                    json!({
                        "word": braid,
                        "stats": stats,
                    })
                );
            } else {
                println!("{braid}");
            }
        }
        Command::EvalMorse { morse } => {
            print_code(&evaluate_morse(&morse.parse::<MorseWord>()?)?, as_json)
        }
        Command::Equiv { a, b, max_strands, max_len, max_nodes } => {
            let budget = SearchBudget { max_strands, max_len, max_nodes };
            let outcome = equiv_within(&a.parse()?, &b.parse()?, &budget)?;
            println!("{}", serde_json::to_string(&outcome).expect("serializable"));
            if outcome.verdict != Verdict::Equivalent {
                std::process::exit(4);
            }
        }
        Command::Random { n, len, seed } => print_word(&random_word(n, len, seed)?, as_json),
        Command::Render { word } => {
            let word: BraidWord = word.parse()?;
            let n = word.strands();
            let rows = render_rows(&word);
            if as_json {
                println!("{}", json!({ "strands": n, "rows": rows }));
            } else {
                println!("{n} {}", if n == 1 { "strand" } else { "strands" });
                for row in rows {
                    println!("{row}");
                }
            }
        }
    }
    Ok(())
}

fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Parse { .. }
        | Error::InvalidMorse(_)
        | Error::InvalidCode(_)
        | Error::InvalidMove(_) => 2,
        Error::NotAllowed
        | Error::NotDestabilizable { .. }
        | Error::NoMatch { .. }
        | Error::IndexOutOfRange(_)
        | Error::MultiComponent(_)
        | Error::StrandMismatch(..) => 3,
        Error::CrossingLimit { .. } => 5,
        Error::InvalidBudget(_) | Error::Internal(_) => 1,
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // Help and version requests are not failures.
            let code = if err.use_stderr() { 1 } else { 0 };
            let _ = err.print();
            std::process::exit(code);
        }
    };
    if let Err(err) = run(cli) {
        eprintln!("error: {err}");
        std::process::exit(exit_code(&err));
    }
}
