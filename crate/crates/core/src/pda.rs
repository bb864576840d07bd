//! Pushdown automata in push-one/pop-one normal form with empty-stack
//! acceptance, and the configuration-space searches built on them.
//!
//! For a PDA with `n` states and `s` stack symbols accepting a finite
//! language, every accepted word has an accepting run whose stack never
//! exceeds `s * n^2` symbols. Exploring all configurations up to that height
//! therefore yields a finite automaton over configurations with the same
//! language, and the decision procedures below search that automaton.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use crate::automata::Nfa;
use crate::error::{domain, Result};
use crate::grammars::{Cfg, GSym};
use crate::limits::Limits;
use crate::matcher::{guided_search, MatchWitness};
use crate::words::{Alphabet, Morphism, Pattern, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StackOp {
    Push(usize),
    Pop(usize),
}

/// `from --input, op--> to`; `input == None` is an ε-move.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Move {
    pub from: usize,
    pub input: Option<usize>,
    pub op: StackOp,
    pub to: usize,
}

/// A normal-form PDA: every move pushes exactly one symbol or pops exactly
/// one symbol; a pop of `γ` fires only with `γ` on top. A run halts once the
/// stack is empty, and accepts iff that happens with all input read.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pda {
    states: usize,
    input: Alphabet,
    stack: Alphabet,
    moves: Vec<Move>,
    start: usize,
    initial_stack: usize,
    out: Vec<Vec<usize>>,
}

/// State plus stack contents (top last).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Configuration {
    pub state: usize,
    pub stack: Vec<usize>,
}

impl Pda {
    pub fn new(
        states: usize,
        input: Alphabet,
        stack: Alphabet,
        moves: Vec<Move>,
        start: usize,
        initial_stack: usize,
    ) -> Result<Self> {
        if start >= states {
            return domain("start state out of range");
        }
        if initial_stack >= stack.len() {
            return domain("initial stack symbol out of range");
        }
        let mut out = vec![Vec::new(); states];
        let mut seen = HashSet::new();
        let mut kept = Vec::new();
        for m in moves {
            if m.from >= states || m.to >= states {
                return domain("move references a missing state");
            }
            if m.input.is_some_and(|a| a >= input.len()) {
                return domain("move reads a symbol outside the input alphabet");
            }
            let (StackOp::Push(g) | StackOp::Pop(g)) = m.op;
            if g >= stack.len() {
                return domain("move uses a symbol outside the stack alphabet");
            }
            if seen.insert(m) {
                out[m.from].push(kept.len());
                kept.push(m);
            }
        }
        Ok(Pda {
            states,
            input,
            stack,
            moves: kept,
            start,
            initial_stack,
            out,
        })
    }

    pub fn states(&self) -> usize {
        self.states
    }

    pub fn input_alphabet(&self) -> &Alphabet {
        &self.input
    }

    pub fn stack_alphabet(&self) -> &Alphabet {
        &self.stack
    }

    pub fn moves(&self) -> &[Move] {
        &self.moves
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn initial_stack(&self) -> usize {
        self.initial_stack
    }

    pub fn initial_configuration(&self) -> Configuration {
        Configuration {
            state: self.start,
            stack: vec![self.initial_stack],
        }
    }

    /// Successors of `c` as `(input, configuration)`, skipping any that
    /// would exceed `bound`.
    pub fn successors(&self, c: &Configuration, bound: usize) -> Vec<(Option<usize>, Configuration)> {
        let Some(&top) = c.stack.last() else {
            return Vec::new();
        };
        let mut out = Vec::new();
        for &mi in &self.out[c.state] {
            let m = self.moves[mi];
            let stack = match m.op {
                StackOp::Push(g) => {
                    if c.stack.len() >= bound {
                        continue;
                    }
                    let mut s = c.stack.clone();
                    s.push(g);
                    s
                }
                StackOp::Pop(g) => {
                    if g != top {
                        continue;
                    }
                    c.stack[..c.stack.len() - 1].to_vec()
                }
            };
            out.push((
                m.input,
                Configuration {
                    state: m.to,
                    stack,
                },
            ));
        }
        out
    }
}

/// Top-down PDA for `L(g)`. A bottom marker sits under the start variable
/// so the stack only empties at the very end; a production `X -> s1 .. sr`
/// pops `X`, then pushes `sr, .., s1` through `r` intermediate states; a
/// terminal on top is popped while reading it.
///
/// The grammar is first trimmed, binarized and freed of ε-bodies, which
/// leaves its language unchanged. Afterwards every stacked symbol other
/// than the marker yields at least one input symbol, so stack height stays
/// within the remaining input length and the reachable configurations stay
/// few.
pub fn cfg_to_pda(g: &Cfg) -> Pda {
    let g = g.eliminate_epsilon();
    let nv = g.variables().len();
    let nt = g.terminals().len();
    let bottom = g.namer().fresh("$");
    let stack = Alphabet::new(
        g.variables()
            .iter()
            .chain(g.terminals().symbols())
            .cloned()
            .chain([bottom]),
    )
    .expect("variables, terminals and the marker are distinct");
    let marker = nv + nt;
    let gamma = |s: GSym| match s {
        GSym::V(v) => v,
        GSym::T(a) => nv + a,
    };
    const INIT: usize = 0;
    const LOOP: usize = 1;
    const DONE: usize = 2;
    let mut states = 3;
    let mut moves = vec![
        Move {
            from: INIT,
            input: None,
            op: StackOp::Push(g.start()),
            to: LOOP,
        },
        Move {
            from: LOOP,
            input: None,
            op: StackOp::Pop(marker),
            to: DONE,
        },
    ];
    for p in g.productions() {
        if p.rhs.is_empty() {
            moves.push(Move {
                from: LOOP,
                input: None,
                op: StackOp::Pop(p.lhs),
                to: LOOP,
            });
            continue;
        }
        let first = states;
        states += p.rhs.len();
        moves.push(Move {
            from: LOOP,
            input: None,
            op: StackOp::Pop(p.lhs),
            to: first,
        });
        for (k, &s) in p.rhs.iter().rev().enumerate() {
            let to = if k + 1 == p.rhs.len() { LOOP } else { first + k + 1 };
            moves.push(Move {
                from: first + k,
                input: None,
                op: StackOp::Push(gamma(s)),
                to,
            });
        }
    }
    for a in 0..nt {
        moves.push(Move {
            from: LOOP,
            input: Some(a),
            op: StackOp::Pop(nv + a),
            to: LOOP,
        });
    }
    Pda::new(states, g.terminals().clone(), stack, moves, INIT, marker)
        .expect("construction yields a valid PDA")
}

/// `s * n^2`: the stack height sufficient for some accepting run on every
/// accepted word, when the language is finite.
pub fn stack_bound(m: &Pda) -> usize {
    m.stack.len().saturating_mul(m.states.saturating_mul(m.states))
}

/// True iff some run reads exactly `w`, ends with an empty stack, and never
/// holds more than `bound` symbols. Depth-first over `(configuration,
/// position)` with a visited set, so ε-loops terminate.
pub fn accepts_bounded(m: &Pda, w: &Word, bound: usize) -> bool {
    let Ok(input) = m.input.encode(w) else {
        return false;
    };
    if bound == 0 {
        return false;
    }
    let init = (m.initial_configuration(), 0usize);
    let mut visited = HashSet::from([init.clone()]);
    let mut stack = vec![init];
    while let Some((c, pos)) = stack.pop() {
        if c.stack.is_empty() {
            if pos == input.len() {
                return true;
            }
            continue;
        }
        for (label, next) in m.successors(&c, bound) {
            let npos = match label {
                None => pos,
                Some(a) if pos < input.len() && input[pos] == a => pos + 1,
                Some(_) => continue,
            };
            let key = (next, npos);
            if visited.insert(key.clone()) {
                stack.push(key);
            }
        }
    }
    false
}

/// Every configuration reachable from the initial one with stack height at
/// most `bound`, restricted to those from which an empty stack is still
/// reachable, viewed as an NFA: states are configurations, the initial
/// configuration is the start, empty-stack configurations accept.
#[derive(Clone, Debug)]
pub struct ConfigurationAutomaton {
    pub nfa: Nfa,
    pub configurations: Vec<Configuration>,
}

impl ConfigurationAutomaton {
    pub fn build(m: &Pda, bound: usize, limits: &Limits) -> Result<Self> {
        let init = m.initial_configuration();
        let mut index: HashMap<Configuration, usize> = HashMap::from([(init.clone(), 0)]);
        let mut configs = vec![init];
        let mut edges: Vec<(usize, Option<usize>, usize)> = Vec::new();
        let mut i = 0;
        while i < configs.len() {
            limits.check(configs.len())?;
            let c = configs[i].clone();
            for (label, next) in m.successors(&c, bound) {
                let id = match index.get(&next) {
                    Some(&id) => id,
                    None => {
                        configs.push(next.clone());
                        index.insert(next, configs.len() - 1);
                        configs.len() - 1
                    }
                };
                edges.push((i, label, id));
            }
            i += 1;
        }

        // Keep configurations that can still empty their stack.
        let n = configs.len();
        let mut rev = vec![Vec::new(); n];
        for &(a, _, b) in &edges {
            rev[b].push(a);
        }
        let mut live = vec![false; n];
        let mut work: Vec<usize> = (0..n).filter(|&c| configs[c].stack.is_empty()).collect();
        for &c in &work {
            live[c] = true;
        }
        while let Some(c) = work.pop() {
            for &p in &rev[c] {
                if !live[p] {
                    live[p] = true;
                    work.push(p);
                }
            }
        }
        let mut remap = vec![usize::MAX; n];
        let mut kept = Vec::new();
        for c in 0..n {
            if live[c] || c == 0 {
                remap[c] = kept.len();
                kept.push(configs[c].clone());
            }
        }
        let transitions = edges
            .into_iter()
            .filter(|&(a, _, b)| live[a] && live[b])
            .map(|(a, l, b)| (remap[a], l, remap[b]))
            .collect();
        let accepting: BTreeSet<usize> = kept
            .iter()
            .enumerate()
            .filter(|(_, c)| c.stack.is_empty())
            .map(|(i, _)| i)
            .collect();
        let nfa = Nfa::from_indexed(
            m.input.clone(),
            kept.len(),
            [0].into(),
            accepting,
            transitions,
        )?;
        Ok(ConfigurationAutomaton {
            nfa,
            configurations: kept,
        })
    }
}

/// A word accepted by every PDA, searched jointly: each machine is explored
/// up to its own stack bound, and the tuple of configurations advances
/// either by one machine's ε-move or by all machines reading one symbol.
/// The first word found is a shortest one.
///
/// Each PDA must accept a finite language; when that fails the exploration
/// cap usually trips and the result is [`crate::Error::Resource`].
pub fn pda_intersection_nonempty(ms: &[Pda], limits: &Limits) -> Result<Option<Word>> {
    if ms.is_empty() {
        return domain("intersection of zero machines");
    }
    let autos = ms
        .iter()
        .map(|m| ConfigurationAutomaton::build(m, stack_bound(m), limits).map(|a| a.nfa))
        .collect::<Result<Vec<_>>>()?;
    let mut alphabet = autos[0].alphabet().clone();
    for a in &autos[1..] {
        alphabet = alphabet.union(a.alphabet());
    }
    // local[i][a] = index of joint symbol `a` in machine i, if it has one.
    let local: Vec<Vec<Option<usize>>> = autos
        .iter()
        .map(|n| {
            alphabet
                .symbols()
                .iter()
                .map(|s| n.alphabet().index_of(s))
                .collect()
        })
        .collect();

    let start: Vec<usize> = vec![0; autos.len()];
    let mut parent: HashMap<Vec<usize>, Option<(Vec<usize>, Option<usize>)>> =
        HashMap::from([(start.clone(), None)]);
    let mut dist: HashMap<Vec<usize>, usize> = HashMap::from([(start.clone(), 0)]);
    let mut done: HashSet<Vec<usize>> = HashSet::new();
    let mut dq = VecDeque::from([start]);
    while let Some(t) = dq.pop_front() {
        if !done.insert(t.clone()) {
            continue;
        }
        limits.check(done.len())?;
        if autos.iter().zip(&t).all(|(n, q)| n.accepting().contains(q)) {
            let mut word = Vec::new();
            let mut cur = t;
            while let Some(Some((prev, l))) = parent.get(&cur) {
                if let Some(a) = l {
                    word.push(*a);
                }
                cur = prev.clone();
            }
            word.reverse();
            return Ok(Some(alphabet.decode(&word)));
        }
        let d = dist[&t];
        let mut relax = |next: Vec<usize>, label: Option<usize>, dq: &mut VecDeque<Vec<usize>>| {
            let nd = d + usize::from(label.is_some());
            if dist.get(&next).is_none_or(|&old| nd < old) {
                dist.insert(next.clone(), nd);
                parent.insert(next.clone(), Some((t.clone(), label)));
                if label.is_none() {
                    dq.push_front(next);
                } else {
                    dq.push_back(next);
                }
            }
        };
        for (i, n) in autos.iter().enumerate() {
            for &(l, to) in n.out(t[i]) {
                if l.is_none() {
                    let mut next = t.clone();
                    next[i] = to;
                    relax(next, None, &mut dq);
                }
            }
        }
        for a in 0..alphabet.len() {
            let mut tuples: Vec<Vec<usize>> = vec![Vec::new()];
            for (i, n) in autos.iter().enumerate() {
                let Some(la) = local[i][a] else {
                    tuples.clear();
                    break;
                };
                let targets: Vec<usize> = n
                    .out(t[i])
                    .iter()
                    .filter(|(l, _)| *l == Some(la))
                    .map(|&(_, to)| to)
                    .collect();
                tuples = tuples
                    .into_iter()
                    .flat_map(|pre| {
                        targets.iter().map(move |&to| {
                            let mut v = pre.clone();
                            v.push(to);
                            v
                        })
                    })
                    .collect();
                if tuples.is_empty() {
                    break;
                }
            }
            for next in tuples {
                relax(next, Some(a), &mut dq);
            }
        }
    }
    Ok(None)
}

/// A shortest `w` with `ww` accepted, searched on a finite-language
/// automaton by running two copies in lock step: the first from the start,
/// the second from a guessed midpoint `C`; success when the first copy sits
/// in `C` and the second accepts, after at least one symbol.
pub(crate) fn square_in_nfa(n: &Nfa, limits: &Limits) -> Result<Option<Word>> {
    // Node: (midpoint, copy 1, copy 2, read anything yet).
    type Node = (usize, usize, usize, bool);
    let mut parent: HashMap<Node, Option<(Node, Option<usize>)>> = HashMap::new();
    let mut dist: HashMap<Node, usize> = HashMap::new();
    let mut dq: VecDeque<Node> = VecDeque::new();
    for c in 0..n.states() {
        for &s in n.starts() {
            let node = (c, s, c, false);
            if dist.insert(node, 0).is_none() {
                parent.insert(node, None);
                dq.push_back(node);
            }
        }
    }
    let mut done: HashSet<Node> = HashSet::new();
    while let Some(node) = dq.pop_front() {
        if !done.insert(node) {
            continue;
        }
        limits.check(done.len())?;
        let (mid, c1, c2, read) = node;
        if read && c1 == mid && n.accepting().contains(&c2) {
            let mut half = Vec::new();
            let mut cur = node;
            while let Some(Some((prev, l))) = parent.get(&cur) {
                if let Some(a) = l {
                    half.push(*a);
                }
                cur = *prev;
            }
            half.reverse();
            let w = n.alphabet().decode(&half);
            return Ok(Some(w.concat(&w)));
        }
        let d = dist[&node];
        let mut relax = |next: Node, label: Option<usize>, dq: &mut VecDeque<Node>| {
            let nd = d + usize::from(label.is_some());
            if dist.get(&next).is_none_or(|&old| nd < old) {
                dist.insert(next, nd);
                parent.insert(next, Some((node, label)));
                if label.is_none() {
                    dq.push_front(next);
                } else {
                    dq.push_back(next);
                }
            }
        };
        for &(l, t) in n.out(c1) {
            if l.is_none() {
                relax((mid, t, c2, read), None, &mut dq);
            }
        }
        for &(l, t) in n.out(c2) {
            if l.is_none() {
                relax((mid, c1, t, read), None, &mut dq);
            }
        }
        for &(l1, t1) in n.out(c1) {
            let Some(a) = l1 else { continue };
            for &(l2, t2) in n.out(c2) {
                if l2 == Some(a) {
                    relax((mid, t1, t2, true), Some(a), &mut dq);
                }
            }
        }
    }
    Ok(None)
}

/// A square `ww` generated by `g`, or `None`. Only finite languages are
/// decided: the grammar becomes a PDA, its configurations up to the stack
/// bound become the midpoint candidates, and two lock-stepped copies check
/// each candidate.
pub fn cfg_square_search(g: &Cfg, limits: &Limits) -> Result<Option<Word>> {
    if !g.is_finite() {
        return domain("square search is only decided for finite languages");
    }
    let m = cfg_to_pda(g);
    let auto = ConfigurationAutomaton::build(&m, stack_bound(&m), limits)?;
    square_in_nfa(&auto.nfa, limits)
}

/// A word of the finite language `L(g)` that is itself an image `h(p)`.
pub fn cfg_pattern_search(g: &Cfg, p: &Pattern, limits: &Limits) -> Result<Option<(Word, Morphism)>> {
    if !g.is_finite() {
        return domain("whole-word pattern search is only decided for finite languages");
    }
    let m = cfg_to_pda(g);
    let auto = ConfigurationAutomaton::build(&m, stack_bound(&m), limits)?;
    Ok(guided_search(&auto.nfa, p, false, limits)?.map(|(w, wit)| (w, wit.morphism)))
}

/// A word of `L(g)` containing `h(p)` as a factor for some non-erasing `h`.
///
/// Infinite languages always qualify: the pumping decomposition `u v w x y`
/// gives `u v^|p| w x^|p| y` with every variable mapped to the non-empty one
/// of `v`, `x`. Finite languages are searched over PDA configurations: the
/// border sets before and after each pattern position are tracked, each
/// variable is bound once at its first occurrence, and later occurrences
/// replay the bound image from their own border.
pub fn cfg_pattern_factor_search(
    g: &Cfg,
    p: &Pattern,
    limits: &Limits,
) -> Result<Option<(Word, MatchWitness)>> {
    if let Some(pump) = g.pumping_decomposition() {
        let k = p.len();
        let (core, start) = if pump.v.is_empty() {
            (pump.x.clone(), pump.u.len() + pump.w.len())
        } else {
            (pump.v.clone(), pump.u.len())
        };
        let morphism = Morphism::from_pairs(p.distinct().into_iter().map(|v| (v, core.clone())))?;
        return Ok(Some((
            pump.pumped(k),
            MatchWitness {
                morphism,
                start,
                length: core.len() * k,
            },
        )));
    }
    let m = cfg_to_pda(g);
    let auto = ConfigurationAutomaton::build(&m, stack_bound(&m), limits)?;
    guided_search(&auto.nfa, p, true, limits)
}
