use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};
use patlang::reductions::{self, PcpInstance};
use patlang::text;
use patlang::{Dfa, Error, Limits, MatchWitness, Morphism, Pattern, Symbol, Word};

/// Pattern matching in finite regular and context-free languages.
///
/// Exit status: 0 yes, 1 no, 2 usage or input error, 3 resource cap hit.
#[derive(Parser)]
#[command(name = "patlang", version)]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
    #[command(flatten)]
    caps: Caps,
}

#[derive(Args)]
struct Caps {
    /// Most configurations any single search may visit.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    max_configs: usize,
    /// Longest bounded search (PCP indices per block).
    #[arg(long, global = true, default_value_t = 6)]
    max_len: usize,
    /// Soft wall-clock budget in seconds.
    #[arg(long, global = true, default_value_t = 30)]
    time_limit: u64,
}

#[derive(Args)]
struct PatternArg {
    #[arg(long)]
    pattern: Option<PathBuf>,
    /// Use the pattern `a^k` instead of a file.
    #[arg(long, conflicts_with = "pattern")]
    k: Option<usize>,
}

#[derive(Subcommand)]
enum Verb {
    /// Is the word an image of the pattern?
    Match {
        #[arg(long)]
        pattern: PathBuf,
        #[arg(long)]
        word: PathBuf,
    },
    /// Does the word contain an image of the pattern as a factor?
    MatchFactor {
        #[arg(long)]
        pattern: PathBuf,
        #[arg(long)]
        word: PathBuf,
    },
    /// Does the (finite) NFA accept an image of the pattern?
    NfaPattern {
        #[arg(long)]
        nfa: PathBuf,
        #[command(flatten)]
        pattern: PatternArg,
    },
    /// Does the NFA accept a word with an image of the pattern as a factor?
    NfaPatternFactor {
        #[arg(long)]
        nfa: PathBuf,
        #[command(flatten)]
        pattern: PatternArg,
    },
    /// Does the (finite) grammar generate a square?
    CfgSquare {
        #[arg(long)]
        cfg: PathBuf,
    },
    /// Does the grammar generate a word with an image of the pattern as a factor?
    CfgPatternFactor {
        #[arg(long)]
        cfg: PathBuf,
        #[command(flatten)]
        pattern: PatternArg,
    },
    /// Do the DFAs share a word?
    IntersectDfa {
        #[arg(long = "dfa", required = true)]
        dfas: Vec<PathBuf>,
    },
    /// Do the PDAs (finite languages) share a word?
    IntersectPda {
        #[arg(long = "pda", required = true)]
        pdas: Vec<PathBuf>,
    },
    /// 3-CNF to one DFA per clause.
    ReduceSatDfa {
        #[arg(long)]
        cnf: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// 3-CNF to a machine and a k-power pattern.
    ReduceSatKpower {
        #[arg(long)]
        cnf: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// 3-CNF to a pattern, a word and a single-word DFA.
    ReduceSatAngluin {
        #[arg(long)]
        cnf: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// PCP instance to a grammar that generates a square iff it is solvable.
    ReducePcpSquare {
        #[arg(long)]
        pcp: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// DFAs to a finite grammar and a k-power pattern.
    ReduceDfaKpowerFactor {
        #[arg(long = "dfa", required = true)]
        dfas: Vec<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Squarefree word of length at least N, and its straight-line grammar.
    GenSquarefree {
        #[arg(long)]
        min_len: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum Failure {
    Usage(String),
    Resource(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Resource(m) => Failure::Resource(m),
            other => Failure::Usage(other.to_string()),
        }
    }
}

type Outcome = Result<Report, Failure>;

/// What gets printed, and whether the answer was yes.
struct Report {
    yes: bool,
    body: String,
}

impl Report {
    fn no() -> Self {
        Report {
            yes: false,
            body: String::new(),
        }
    }

    fn yes(body: String) -> Self {
        Report { yes: true, body }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn load<T>(path: &Path, parse: fn(&str) -> patlang::Result<T>) -> Result<T, Failure> {
    parse(&read(path)?).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn load_pattern(arg: &PatternArg) -> Result<Pattern, Failure> {
    match (&arg.pattern, arg.k) {
        (Some(p), _) => load(p, text::parse_pattern),
        (None, Some(k)) => Ok(Pattern::power(Symbol::new("a"), k)?),
        (None, None) => Err(Failure::Usage("give --pattern FILE or --k N".into())),
    }
}

fn write_bundle(dir: &Path, files: &[(String, String)]) -> Result<String, Failure> {
    fs::create_dir_all(dir).map_err(|e| Failure::Usage(format!("{}: {e}", dir.display())))?;
    let mut listing = String::new();
    for (name, content) in files {
        let path = dir.join(name);
        fs::write(&path, content).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
        writeln!(listing, "wrote {}", path.display()).unwrap();
    }
    Ok(listing)
}

fn word_line(w: &Word) -> String {
    format!("word: {w}\n")
}

fn witness(word: &Word, h: &Morphism, at: Option<&MatchWitness>) -> String {
    let mut s = word_line(word);
    if let Some(m) = at {
        writeln!(s, "factor: {} {}", m.start, m.length).unwrap();
    }
    s.push_str(&text::write_morphism(h));
    s
}

fn run(cli: &Cli) -> Outcome {
    let limits = Limits {
        max_configs: cli.caps.max_configs,
        ..Limits::default()
    }
    .with_budget(Duration::from_secs(cli.caps.time_limit));
    Ok(match &cli.verb {
        Verb::Match { pattern, word } => {
            let p = load(pattern, text::parse_pattern)?;
            let w = load(word, text::parse_word)?;
            match patlang::match_exact(&p, &w) {
                Some(h) => Report::yes(text::write_morphism(&h)),
                None => Report::no(),
            }
        }
        Verb::MatchFactor { pattern, word } => {
            let p = load(pattern, text::parse_pattern)?;
            let w = load(word, text::parse_word)?;
            match patlang::match_factor(&p, &w) {
                Some(m) => Report::yes(witness(&w, &m.morphism, Some(&m))),
                None => Report::no(),
            }
        }
        Verb::NfaPattern { nfa, pattern } => {
            let m = load(nfa, text::parse_nfa)?;
            let p = load_pattern(pattern)?;
            match patlang::nfa_pattern_accept(&m, &p)? {
                Some((w, h)) => Report::yes(witness(&w, &h, None)),
                None => Report::no(),
            }
        }
        Verb::NfaPatternFactor { nfa, pattern } => {
            let m = load(nfa, text::parse_nfa)?;
            let p = load_pattern(pattern)?;
            match patlang::nfa_pattern_factor_accept(&m, &p)? {
                Some((w, at)) => Report::yes(witness(&w, &at.morphism, Some(&at))),
                None => Report::no(),
            }
        }
        Verb::CfgSquare { cfg } => {
            let g = load(cfg, text::parse_cfg)?;
            match patlang::cfg_square_search(&g, &limits)? {
                Some(w) => Report::yes(word_line(&w)),
                None => Report::no(),
            }
        }
        Verb::CfgPatternFactor { cfg, pattern } => {
            let g = load(cfg, text::parse_cfg)?;
            let p = load_pattern(pattern)?;
            match patlang::cfg_pattern_factor_search(&g, &p, &limits)? {
                Some((w, at)) => Report::yes(witness(&w, &at.morphism, Some(&at))),
                None => Report::no(),
            }
        }
        Verb::IntersectDfa { dfas } => {
            let ms = dfas
                .iter()
                .map(|f| load(f, text::parse_dfa))
                .collect::<Result<Vec<Dfa>, _>>()?;
            match patlang::shortest_common_word(&ms)? {
                Some(w) => Report::yes(word_line(&w)),
                None => Report::no(),
            }
        }
        Verb::IntersectPda { pdas } => {
            let ms = pdas
                .iter()
                .map(|f| load(f, text::parse_pda))
                .collect::<Result<Vec<_>, _>>()?;
            match patlang::pda::pda_intersection_nonempty(&ms, &limits)? {
                Some(w) => Report::yes(word_line(&w)),
                None => Report::no(),
            }
        }
        Verb::ReduceSatDfa { cnf, out } => {
            let phi = load(cnf, text::parse_dimacs)?;
            let files: Vec<(String, String)> = reductions::sat_to_clause_dfas(&phi)
                .iter()
                .enumerate()
                .map(|(j, d)| (format!("clause_{}.dfa", j + 1), text::write_dfa(d)))
                .collect();
            Report::yes(write_bundle(out, &files)?)
        }
        Verb::ReduceSatKpower { cnf, out } => {
            let phi = load(cnf, text::parse_dimacs)?;
            let dfas = reductions::sat_to_clause_dfas(&phi);
            if dfas.len() < 2 {
                return Err(Failure::Usage("the k-power reduction needs at least two clauses".into()));
            }
            let (m, p) = reductions::dfas_to_kpower_instance(&dfas)?;
            let files = [
                ("machine.dfa".to_string(), text::write_dfa(&m)),
                ("pattern.txt".to_string(), text::write_pattern(&p)),
            ];
            Report::yes(write_bundle(out, &files)?)
        }
        Verb::ReduceSatAngluin { cnf, out } => {
            let phi = load(cnf, text::parse_dimacs)?;
            let g = reductions::sat_to_angluin_gadget(&phi);
            let files = [
                ("pattern.txt".to_string(), text::write_pattern(&g.pattern)),
                ("word.txt".to_string(), text::write_word(&g.word)),
                ("machine.dfa".to_string(), text::write_dfa(&g.dfa)),
            ];
            let mut body = format!("length {}\n", g.word.len());
            body.push_str(&write_bundle(out, &files)?);
            Report::yes(body)
        }
        Verb::ReducePcpSquare { pcp, out } => {
            let inst: PcpInstance = load(pcp, text::parse_pcp)?;
            let depth = cli.caps.max_len.max(1);
            let files = [
                ("grammar.cfg".to_string(), text::write_cfg(&reductions::pcp_to_square_cfg(&inst)?)),
                (
                    "bounded.cfg".to_string(),
                    text::write_cfg(&reductions::pcp_to_square_cfg_bounded(&inst, depth)?),
                ),
            ];
            Report::yes(write_bundle(out, &files)?)
        }
        Verb::ReduceDfaKpowerFactor { dfas, out } => {
            let ms = dfas
                .iter()
                .map(|f| load(f, text::parse_dfa))
                .collect::<Result<Vec<Dfa>, _>>()?;
            let g = reductions::dfas_to_kpower_factor_cfg(&ms)?;
            let mut files = vec![
                ("slp.cfg".to_string(), text::write_cfg(&g.slp)),
                ("prefixes.cfg".to_string(), text::write_cfg(&g.prefixes)),
            ];
            for (i, b) in g.shuffles.iter().enumerate() {
                files.push((format!("shuffle_{}.cfg", i + 1), text::write_cfg(b)));
            }
            files.push(("grammar.cfg".to_string(), text::write_cfg(&g.grammar)));
            files.push(("pattern.txt".to_string(), text::write_pattern(&g.pattern)));
            Report::yes(write_bundle(out, &files)?)
        }
        Verb::GenSquarefree { min_len, out } => {
            let w = reductions::squarefree_word(*min_len)?;
            let mut body = word_line(&w);
            if let Some(dir) = out {
                let g = reductions::squarefree_slp_grammar(*min_len)?;
                let files = [
                    ("word.txt".to_string(), text::write_word(&w)),
                    ("slp.cfg".to_string(), text::write_cfg(&g)),
                ];
                body.push_str(&write_bundle(dir, &files)?);
            }
            Report::yes(body)
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(r) if r.yes => {
            print!("yes\n{}", r.body);
            ExitCode::from(0)
        }
        Ok(r) => {
            print!("no\n{}", r.body);
            ExitCode::from(1)
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Resource(m)) => {
            eprintln!("resource limit: {m}");
            ExitCode::from(3)
        }
    }
}
