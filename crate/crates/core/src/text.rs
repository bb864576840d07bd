//! Line-oriented text formats for words, patterns, morphisms, automata,
//! grammars, PDAs, 3-CNF formulas and PCP instances.
//!
//! Readers report the 1-based line of the first problem. Writers are
//! deterministic, and reading what a writer produced then writing again
//! gives the same text.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::automata::{Dfa, Nfa};
use crate::error::{Error, Result};
use crate::grammars::{Cfg, CfgBuilder, GSym};
use crate::pda::{Move, Pda, StackOp};
use crate::reductions::{Literal, PcpInstance, SatInstance};
use crate::words::{Alphabet, Morphism, Pattern, Symbol, Word};

/// Marks ε wherever a symbol is expected.
pub const EPSILON: &str = "~";

fn perr<T>(line: usize, msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse {
        line,
        msg: msg.into(),
    })
}

/// Attach a line number to a domain error raised while building.
fn at<T>(line: usize, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::Domain(msg) => Error::Parse { line, msg },
        other => other,
    })
}

fn symbol(line: usize, tok: &str) -> Result<Symbol> {
    match tok.parse() {
        Ok(s) => Ok(s),
        Err(_) => perr(line, format!("bad symbol {tok:?}")),
    }
}

fn number(line: usize, tok: &str) -> Result<usize> {
    tok.parse()
        .or_else(|_| perr(line, format!("expected a number, got {tok:?}")))
}

/// Non-blank lines as `(line number, tokens)`.
fn lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split_whitespace().collect::<Vec<_>>()))
        .filter(|(_, t)| !t.is_empty())
}

fn single_line(text: &str) -> Result<(usize, Vec<&str>)> {
    let mut it = lines(text);
    let first = it.next().unwrap_or((1, Vec::new()));
    if let Some((line, _)) = it.next() {
        return perr(line, "expected a single line");
    }
    Ok(first)
}

pub fn parse_word(text: &str) -> Result<Word> {
    let (line, toks) = single_line(text)?;
    toks.iter().map(|t| symbol(line, t)).collect()
}

pub fn write_word(w: &Word) -> String {
    format!("{w}\n")
}

pub fn parse_pattern(text: &str) -> Result<Pattern> {
    let (line, toks) = single_line(text)?;
    let vars = toks
        .iter()
        .map(|t| symbol(line, t))
        .collect::<Result<Vec<_>>>()?;
    at(line, Pattern::new(vars))
}

pub fn write_pattern(p: &Pattern) -> String {
    format!("{p}\n")
}

/// `var = image` per line.
pub fn parse_morphism(text: &str) -> Result<Morphism> {
    let mut h = Morphism::new();
    for (line, toks) in lines(text) {
        if toks.len() < 3 || toks[1] != "=" {
            return perr(line, "expected `var = image`");
        }
        let var = symbol(line, toks[0])?;
        if h.image(&var).is_some() {
            return perr(line, format!("{var} bound twice"));
        }
        let image = toks[2..]
            .iter()
            .map(|t| symbol(line, t))
            .collect::<Result<Word>>()?;
        at(line, h.bind(var, image))?;
    }
    Ok(h)
}

pub fn write_morphism(h: &Morphism) -> String {
    let mut s = String::new();
    for (v, img) in h.iter() {
        writeln!(s, "{v} = {img}").unwrap();
    }
    s
}

/// The directives shared by automata and PDAs.
#[derive(Default)]
struct Header {
    states: Option<usize>,
    alphabet: Option<Alphabet>,
    start: Option<BTreeSet<usize>>,
}

impl Header {
    /// Handles `states`, `alphabet` and `start`; false for other keywords.
    fn take(&mut self, line: usize, toks: &[&str]) -> Result<bool> {
        match toks[0] {
            "states" => {
                if toks.len() != 2 {
                    return perr(line, "expected `states N`");
                }
                self.states = Some(number(line, toks[1])?);
            }
            "alphabet" => {
                let syms = toks[1..]
                    .iter()
                    .map(|t| symbol(line, t))
                    .collect::<Result<Vec<_>>>()?;
                if syms.iter().any(|s| s.as_str() == EPSILON) {
                    return perr(line, "~ is reserved for the empty word");
                }
                self.alphabet = Some(at(line, Alphabet::new(syms))?);
            }
            "start" => {
                let n = self.states(line)?;
                let qs = toks[1..]
                    .iter()
                    .map(|t| state(line, t, n))
                    .collect::<Result<BTreeSet<_>>>()?;
                self.start = Some(qs);
            }
            _ => return Ok(false),
        }
        Ok(true)
    }

    fn states(&self, line: usize) -> Result<usize> {
        self.states
            .map_or_else(|| perr(line, "`states` must come first"), Ok)
    }

    fn alphabet(&self, line: usize) -> Result<&Alphabet> {
        self.alphabet
            .as_ref()
            .map_or_else(|| perr(line, "`alphabet` must come before its first use"), Ok)
    }

    /// Index of an input token, `None` for ε.
    fn label(&self, line: usize, tok: &str) -> Result<Option<usize>> {
        if tok == EPSILON {
            return Ok(None);
        }
        let s = symbol(line, tok)?;
        match self.alphabet(line)?.index_of(&s) {
            Some(a) => Ok(Some(a)),
            None => perr(line, format!("{s} is not in the alphabet")),
        }
    }
}

fn state(line: usize, tok: &str, n: usize) -> Result<usize> {
    let q = number(line, tok)?;
    if q >= n {
        return perr(line, format!("state {q} out of range"));
    }
    Ok(q)
}

fn last_line(text: &str) -> usize {
    text.lines().count().max(1)
}

pub fn parse_nfa(text: &str) -> Result<Nfa> {
    let mut h = Header::default();
    let mut accepting = BTreeSet::new();
    let mut transitions = Vec::new();
    for (line, toks) in lines(text) {
        if h.take(line, &toks)? {
            continue;
        }
        match toks[0] {
            "accept" => {
                let n = h.states(line)?;
                for t in &toks[1..] {
                    accepting.insert(state(line, t, n)?);
                }
            }
            "trans" => {
                if toks.len() != 4 {
                    return perr(line, "expected `trans q s q'`");
                }
                let n = h.states(line)?;
                let q = state(line, toks[1], n)?;
                let l = h.label(line, toks[2])?;
                let t = state(line, toks[3], n)?;
                transitions.push((q, l, t));
            }
            k => return perr(line, format!("unknown directive {k:?}")),
        }
    }
    let end = last_line(text);
    let n = h.states(end)?;
    let alphabet = h.alphabet(end)?.clone();
    let starts = h.start.clone().unwrap_or_default();
    at(end, Nfa::from_indexed(alphabet, n, starts, accepting, transitions))
}

/// The automaton format with one start state, no ε and a total transition
/// function.
pub fn parse_dfa(text: &str) -> Result<Dfa> {
    let nfa = parse_nfa(text)?;
    let end = last_line(text);
    if nfa.starts().len() != 1 {
        return perr(end, "a DFA needs exactly one start state");
    }
    let mut table = vec![vec![None; nfa.alphabet().len()]; nfa.states()];
    for &(q, l, t) in nfa.transitions() {
        let Some(a) = l else {
            return perr(end, "a DFA has no ε-transitions");
        };
        if table[q][a].replace(t).is_some() {
            return perr(end, format!("state {q} has two transitions on {}", nfa.alphabet().symbol(a)));
        }
    }
    let table = table
        .into_iter()
        .enumerate()
        .map(|(q, row)| {
            row.into_iter()
                .collect::<Option<Vec<_>>>()
                .map_or_else(|| perr(end, format!("state {q} is missing a transition")), Ok)
        })
        .collect::<Result<Vec<_>>>()?;
    let start = *nfa.starts().iter().next().unwrap();
    at(end, Dfa::new(nfa.alphabet().clone(), table, start, nfa.accepting().clone()))
}

fn join<T: ToString>(items: impl IntoIterator<Item = T>) -> String {
    items
        .into_iter()
        .map(|x| format!(" {}", x.to_string()))
        .collect()
}

pub fn write_nfa(m: &Nfa) -> String {
    let mut s = String::new();
    writeln!(s, "states {}", m.states()).unwrap();
    writeln!(s, "alphabet{}", join(m.alphabet().symbols())).unwrap();
    writeln!(s, "start{}", join(m.starts())).unwrap();
    writeln!(s, "accept{}", join(m.accepting())).unwrap();
    let mut ts = m.transitions().to_vec();
    ts.sort();
    for (q, l, t) in ts {
        let label = l.map_or(EPSILON, |a| m.alphabet().symbol(a).as_str());
        writeln!(s, "trans {q} {label} {t}").unwrap();
    }
    s
}

pub fn write_dfa(m: &Dfa) -> String {
    write_nfa(&m.to_nfa())
}

/// `start S`, `terminals ...`, then productions `X -> body` with `|`
/// between alternatives and `~` for an empty body. Tokens naming a
/// terminal are terminals; every other token is a variable.
pub fn parse_cfg(text: &str) -> Result<Cfg> {
    let mut start: Option<Symbol> = None;
    let mut builder: Option<CfgBuilder> = None;
    for (line, toks) in lines(text) {
        match toks[0] {
            "start" => {
                if toks.len() != 2 {
                    return perr(line, "expected `start S`");
                }
                start = Some(symbol(line, toks[1])?);
            }
            "terminals" => {
                if builder.is_some() {
                    return perr(line, "`terminals` given twice");
                }
                let syms = toks[1..]
                    .iter()
                    .map(|t| symbol(line, t))
                    .collect::<Result<Vec<_>>>()?;
                if syms.iter().any(|s| matches!(s.as_str(), EPSILON | "->" | "|")) {
                    return perr(line, "~, -> and | are reserved");
                }
                let mut b = CfgBuilder::new(at(line, Alphabet::new(syms))?);
                if let Some(s) = &start {
                    if b.terminals().contains(s) {
                        return perr(line, format!("start symbol {s} is a terminal"));
                    }
                    b.var(s);
                }
                builder = Some(b);
            }
            _ => {
                let Some(b) = builder.as_mut() else {
                    return perr(line, "`terminals` must come before productions");
                };
                if toks.len() < 3 || toks[1] != "->" {
                    return perr(line, "expected `X -> body`");
                }
                let lhs = symbol(line, toks[0])?;
                if b.terminals().contains(&lhs) {
                    return perr(line, format!("{lhs} is a terminal"));
                }
                let l = b.var(&lhs);
                for alt in toks[2..].split(|t| *t == "|") {
                    let rhs = match alt {
                        [] => return perr(line, "empty alternative; write ~ for ε"),
                        [e] if *e == EPSILON => Vec::new(),
                        _ => alt
                            .iter()
                            .map(|t| {
                                if *t == EPSILON || *t == "->" {
                                    return perr(line, format!("misplaced {t}"));
                                }
                                Ok(b.resolve(&symbol(line, t)?))
                            })
                            .collect::<Result<Vec<GSym>>>()?,
                    };
                    b.production(l, rhs);
                }
            }
        }
    }
    let end = last_line(text);
    let Some(start) = start else {
        return perr(end, "missing `start`");
    };
    let Some(mut b) = builder else {
        return perr(end, "missing `terminals`");
    };
    b.var(&start);
    at(end, b.build(&start))
}

/// Productions appear in the grammar's own order, one per line.
pub fn write_cfg(g: &Cfg) -> String {
    let mut s = String::new();
    writeln!(s, "start {}", g.start_symbol()).unwrap();
    writeln!(s, "terminals{}", join(g.terminals().symbols())).unwrap();
    for p in g.productions() {
        let body = if p.rhs.is_empty() {
            format!(" {EPSILON}")
        } else {
            join(p.rhs.iter().map(|&x| g.symbol_name(x)))
        };
        writeln!(s, "{} ->{body}", g.variables()[p.lhs]).unwrap();
    }
    s
}

/// The automaton header plus `stack ...`, `initstack g` and
/// `move q a push|pop g q'`.
pub fn parse_pda(text: &str) -> Result<Pda> {
    let mut h = Header::default();
    let mut stack: Option<Alphabet> = None;
    let mut init: Option<Symbol> = None;
    let mut moves = Vec::new();
    for (line, toks) in lines(text) {
        if h.take(line, &toks)? {
            continue;
        }
        match toks[0] {
            "stack" => {
                let syms = toks[1..]
                    .iter()
                    .map(|t| symbol(line, t))
                    .collect::<Result<Vec<_>>>()?;
                stack = Some(at(line, Alphabet::new(syms))?);
            }
            "initstack" => {
                if toks.len() != 2 {
                    return perr(line, "expected `initstack g`");
                }
                init = Some(symbol(line, toks[1])?);
            }
            "move" => {
                if toks.len() != 6 {
                    return perr(line, "expected `move q a push|pop g q'`");
                }
                let n = h.states(line)?;
                let from = state(line, toks[1], n)?;
                let input = h.label(line, toks[2])?;
                let Some(st) = stack.as_ref() else {
                    return perr(line, "`stack` must come before moves");
                };
                let g = symbol(line, toks[4])?;
                let Some(g) = st.index_of(&g) else {
                    return perr(line, format!("{g} is not a stack symbol"));
                };
                let op = match toks[3] {
                    "push" => StackOp::Push(g),
                    "pop" => StackOp::Pop(g),
                    o => return perr(line, format!("expected push or pop, got {o:?}")),
                };
                let to = state(line, toks[5], n)?;
                moves.push(Move {
                    from,
                    input,
                    op,
                    to,
                });
            }
            "accept" => return perr(line, "PDAs accept by empty stack; `accept` is not allowed"),
            k => return perr(line, format!("unknown directive {k:?}")),
        }
    }
    let end = last_line(text);
    let n = h.states(end)?;
    let input = h.alphabet(end)?.clone();
    let Some(stack) = stack else {
        return perr(end, "missing `stack`");
    };
    let start = match h.start.as_ref().map(|s| s.iter().copied().collect::<Vec<_>>()) {
        Some(v) if v.len() == 1 => v[0],
        _ => return perr(end, "a PDA needs exactly one start state"),
    };
    let Some(init) = init else {
        return perr(end, "missing `initstack`");
    };
    let Some(init) = stack.index_of(&init) else {
        return perr(end, format!("{init} is not a stack symbol"));
    };
    at(end, Pda::new(n, input, stack, moves, start, init))
}

pub fn write_pda(m: &Pda) -> String {
    let mut s = String::new();
    writeln!(s, "states {}", m.states()).unwrap();
    writeln!(s, "alphabet{}", join(m.input_alphabet().symbols())).unwrap();
    writeln!(s, "stack{}", join(m.stack_alphabet().symbols())).unwrap();
    writeln!(s, "start {}", m.start()).unwrap();
    writeln!(s, "initstack {}", m.stack_alphabet().symbol(m.initial_stack())).unwrap();
    for mv in m.moves() {
        let input = mv.input.map_or(EPSILON, |a| m.input_alphabet().symbol(a).as_str());
        let (op, g) = match mv.op {
            StackOp::Push(g) => ("push", g),
            StackOp::Pop(g) => ("pop", g),
        };
        let g = m.stack_alphabet().symbol(g);
        writeln!(s, "move {} {input} {op} {g} {}", mv.from, mv.to).unwrap();
    }
    s
}

/// DIMACS CNF restricted to clauses of exactly three literals. Comment
/// lines start with `c`; a clause may span lines and ends at `0`.
pub fn parse_dimacs(text: &str) -> Result<SatInstance> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses: Vec<[i64; 3]> = Vec::new();
    let mut current: Vec<i64> = Vec::new();
    for (line, toks) in lines(text) {
        if toks[0] == "c" || toks[0].starts_with('%') {
            continue;
        }
        if toks[0] == "p" {
            if toks.len() != 4 || toks[1] != "cnf" {
                return perr(line, "expected `p cnf n m`");
            }
            header = Some((number(line, toks[2])?, number(line, toks[3])?));
            continue;
        }
        let Some((n, _)) = header else {
            return perr(line, "clauses before the `p cnf` line");
        };
        for t in toks {
            let x: i64 = t
                .parse()
                .or_else(|_| perr(line, format!("expected an integer, got {t:?}")))?;
            if x == 0 {
                let Ok(c) = <[i64; 3]>::try_from(current.as_slice()) else {
                    return perr(line, format!("clause has {} literals, expected 3", current.len()));
                };
                clauses.push(c);
                current.clear();
            } else {
                if x.unsigned_abs() as usize > n {
                    return perr(line, format!("literal {x} exceeds the variable count"));
                }
                current.push(x);
            }
        }
    }
    let end = last_line(text);
    let Some((n, m)) = header else {
        return perr(end, "missing `p cnf` line");
    };
    if !current.is_empty() {
        return perr(end, "last clause is not terminated by 0");
    }
    if clauses.len() != m {
        return perr(end, format!("header promises {m} clauses, found {}", clauses.len()));
    }
    at(end, SatInstance::from_signed(n, &clauses))
}

pub fn write_dimacs(phi: &SatInstance) -> String {
    let mut s = String::new();
    writeln!(s, "p cnf {} {}", phi.variables(), phi.clauses().len()).unwrap();
    for c in phi.clauses() {
        let lit = |l: &Literal| if l.positive { l.var as i64 } else { -(l.var as i64) };
        writeln!(s, "{} {} {} 0", lit(&c[0]), lit(&c[1]), lit(&c[2])).unwrap();
    }
    s
}

/// One pair per line, `x y`, each character a symbol.
pub fn parse_pcp(text: &str) -> Result<PcpInstance> {
    let mut pairs = Vec::new();
    for (line, toks) in lines(text) {
        if toks.len() != 2 {
            return perr(line, "expected `x y`");
        }
        pairs.push((Word::from_chars(toks[0]), Word::from_chars(toks[1])));
    }
    at(last_line(text), PcpInstance::new(pairs))
}

pub fn write_pcp(inst: &PcpInstance) -> String {
    let flat = |w: &Word| w.iter().map(Symbol::as_str).collect::<String>();
    let mut s = String::new();
    for (x, y) in inst.pairs() {
        writeln!(s, "{} {}", flat(x), flat(y)).unwrap();
    }
    s
}
