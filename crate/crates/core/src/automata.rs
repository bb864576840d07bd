//! Finite automata: total DFAs and ε-NFAs over an [`Alphabet`].
//!
//! States are dense indices `0..n`. All enumeration is in length-then-
//! lexicographic order, where symbols compare by their alphabet position.

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::error::{domain, Error, Result};
use crate::words::{Alphabet, Symbol, Word};

/// A total deterministic automaton.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dfa {
    alphabet: Alphabet,
    /// `table[q][a]` is the successor of `q` on the symbol with index `a`.
    table: Vec<Vec<usize>>,
    start: usize,
    accepting: BTreeSet<usize>,
}

impl Dfa {
    pub fn new(
        alphabet: Alphabet,
        table: Vec<Vec<usize>>,
        start: usize,
        accepting: impl IntoIterator<Item = usize>,
    ) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return domain("a DFA needs at least one state");
        }
        for (q, row) in table.iter().enumerate() {
            if row.len() != alphabet.len() {
                return domain(format!("state {q} does not have one transition per symbol"));
            }
            if let Some(&t) = row.iter().find(|&&t| t >= n) {
                return domain(format!("transition from {q} targets missing state {t}"));
            }
        }
        if start >= n {
            return domain(format!("start state {start} out of range"));
        }
        let accepting: BTreeSet<usize> = accepting.into_iter().collect();
        if let Some(&q) = accepting.iter().find(|&&q| q >= n) {
            return domain(format!("accepting state {q} out of range"));
        }
        Ok(Dfa {
            alphabet,
            table,
            start,
            accepting,
        })
    }

    /// Builds a DFA from `(from, symbol, to)` triples; every `(state, symbol)`
    /// pair must be covered exactly once.
    pub fn from_transitions(
        alphabet: Alphabet,
        states: usize,
        start: usize,
        accepting: impl IntoIterator<Item = usize>,
        transitions: impl IntoIterator<Item = (usize, Symbol, usize)>,
    ) -> Result<Self> {
        let mut table = vec![vec![None; alphabet.len()]; states];
        for (q, s, t) in transitions {
            let a = alphabet
                .index_of(&s)
                .ok_or_else(|| Error::Domain(format!("symbol {s} is not in the alphabet")))?;
            let row = table
                .get_mut(q)
                .ok_or_else(|| Error::Domain(format!("state {q} out of range")))?;
            if row[a].replace(t).is_some() {
                return domain(format!("two transitions from state {q} on {s}"));
            }
        }
        let table = table
            .into_iter()
            .enumerate()
            .map(|(q, row)| {
                row.into_iter()
                    .enumerate()
                    .map(|(a, t)| {
                        t.ok_or_else(|| {
                            Error::Domain(format!(
                                "no transition from state {q} on {}",
                                alphabet.symbol(a)
                            ))
                        })
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Dfa::new(alphabet, table, start, accepting)
    }

    /// DFA accepting exactly the given finite set of words: a trie plus one
    /// dead state.
    pub fn from_words<'a>(alphabet: Alphabet, words: impl IntoIterator<Item = &'a Word>) -> Result<Self> {
        let mut table: Vec<Vec<Option<usize>>> = vec![vec![None; alphabet.len()]];
        let mut accepting = BTreeSet::new();
        for w in words {
            let mut q = 0;
            for a in alphabet.encode(w)? {
                q = match table[q][a] {
                    Some(t) => t,
                    None => {
                        table.push(vec![None; alphabet.len()]);
                        let t = table.len() - 1;
                        table[q][a] = Some(t);
                        t
                    }
                };
            }
            accepting.insert(q);
        }
        let dead = table.len();
        let mut table: Vec<Vec<usize>> = table
            .into_iter()
            .map(|row| row.into_iter().map(|t| t.unwrap_or(dead)).collect())
            .collect();
        table.push(vec![dead; alphabet.len()]);
        Dfa::new(alphabet, table, 0, accepting)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn states(&self) -> usize {
        self.table.len()
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn accepting(&self) -> &BTreeSet<usize> {
        &self.accepting
    }

    pub fn is_accepting(&self, q: usize) -> bool {
        self.accepting.contains(&q)
    }

    pub fn step(&self, q: usize, a: usize) -> usize {
        self.table[q][a]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn accepts(&self, w: &Word) -> Result<bool> {
        let q = self
            .alphabet
            .encode(w)?
            .into_iter()
            .fold(self.start, |q, a| self.table[q][a]);
        Ok(self.is_accepting(q))
    }

    pub fn to_nfa(&self) -> Nfa {
        let transitions = self
            .table
            .iter()
            .enumerate()
            .flat_map(|(q, row)| row.iter().enumerate().map(move |(a, &t)| (q, Some(a), t)))
            .collect();
        Nfa::from_indexed(
            self.alphabet.clone(),
            self.states(),
            [self.start].into(),
            self.accepting.clone(),
            transitions,
        )
        .expect("a valid DFA is a valid NFA")
    }
}

/// A transition label: a symbol index, or `None` for ε.
pub type Label = Option<usize>;

/// A nondeterministic automaton with ε-moves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Nfa {
    alphabet: Alphabet,
    states: usize,
    starts: BTreeSet<usize>,
    accepting: BTreeSet<usize>,
    transitions: Vec<(usize, Label, usize)>,
    out: Vec<Vec<(Label, usize)>>,
}

impl Nfa {
    pub fn new(
        alphabet: Alphabet,
        states: usize,
        starts: BTreeSet<usize>,
        accepting: BTreeSet<usize>,
        transitions: impl IntoIterator<Item = (usize, Option<Symbol>, usize)>,
    ) -> Result<Self> {
        let transitions = transitions
            .into_iter()
            .map(|(q, s, t)| {
                let label = match s {
                    None => None,
                    Some(s) => Some(alphabet.index_of(&s).ok_or_else(|| {
                        Error::Domain(format!("symbol {s} is not in the alphabet"))
                    })?),
                };
                Ok((q, label, t))
            })
            .collect::<Result<Vec<_>>>()?;
        Nfa::from_indexed(alphabet, states, starts, accepting, transitions)
    }

    /// Like [`Nfa::new`] with labels already given as symbol indices.
    pub fn from_indexed(
        alphabet: Alphabet,
        states: usize,
        starts: BTreeSet<usize>,
        accepting: BTreeSet<usize>,
        transitions: Vec<(usize, Label, usize)>,
    ) -> Result<Self> {
        if starts.is_empty() {
            return domain("an NFA needs at least one start state");
        }
        if let Some(&q) = starts.iter().chain(&accepting).find(|&&q| q >= states) {
            return domain(format!("state {q} out of range"));
        }
        let mut out = vec![Vec::new(); states];
        let mut seen = BTreeSet::new();
        let mut kept = Vec::with_capacity(transitions.len());
        for (q, l, t) in transitions {
            if q >= states || t >= states {
                return domain(format!("transition {q} -> {t} references a missing state"));
            }
            if let Some(a) = l {
                if a >= alphabet.len() {
                    return domain(format!("symbol index {a} out of range"));
                }
            }
            if seen.insert((q, l, t)) {
                out[q].push((l, t));
                kept.push((q, l, t));
            }
        }
        Ok(Nfa {
            alphabet,
            states,
            starts,
            accepting,
            transitions: kept,
            out,
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn states(&self) -> usize {
        self.states
    }

    pub fn starts(&self) -> &BTreeSet<usize> {
        &self.starts
    }

    pub fn accepting(&self) -> &BTreeSet<usize> {
        &self.accepting
    }

    pub fn transitions(&self) -> &[(usize, Label, usize)] {
        &self.transitions
    }

    pub fn out(&self, q: usize) -> &[(Label, usize)] {
        &self.out[q]
    }

    pub fn closure(&self, set: &BTreeSet<usize>) -> BTreeSet<usize> {
        let mut closed = set.clone();
        let mut stack: Vec<usize> = set.iter().copied().collect();
        while let Some(q) = stack.pop() {
            for &(l, t) in &self.out[q] {
                if l.is_none() && closed.insert(t) {
                    stack.push(t);
                }
            }
        }
        closed
    }

    /// Targets of `a`-transitions out of `set`, without ε-closure.
    pub fn step(&self, set: &BTreeSet<usize>, a: usize) -> BTreeSet<usize> {
        set.iter()
            .flat_map(|&q| self.out[q].iter())
            .filter(|(l, _)| *l == Some(a))
            .map(|&(_, t)| t)
            .collect()
    }

    pub fn initial(&self) -> BTreeSet<usize> {
        self.closure(&self.starts)
    }

    pub fn accepts(&self, w: &Word) -> Result<bool> {
        let mut cur = self.initial();
        for a in self.alphabet.encode(w)? {
            cur = self.closure(&self.step(&cur, a));
            if cur.is_empty() {
                return Ok(false);
            }
        }
        Ok(cur.iter().any(|q| self.accepting.contains(q)))
    }

    fn reach(&self, from: impl IntoIterator<Item = usize>, backwards: bool) -> Vec<bool> {
        let mut adj = vec![Vec::new(); self.states];
        for &(q, _, t) in &self.transitions {
            if backwards {
                adj[t].push(q);
            } else {
                adj[q].push(t);
            }
        }
        let mut seen = vec![false; self.states];
        let mut stack: Vec<usize> = from.into_iter().collect();
        for &q in &stack {
            seen[q] = true;
        }
        while let Some(q) = stack.pop() {
            for &t in &adj[q] {
                if !seen[t] {
                    seen[t] = true;
                    stack.push(t);
                }
            }
        }
        seen
    }

    /// States that are both accessible and co-accessible.
    pub fn useful(&self) -> Vec<bool> {
        let fwd = self.reach(self.starts.iter().copied(), false);
        let bwd = self.reach(self.accepting.iter().copied(), true);
        fwd.iter().zip(&bwd).map(|(a, b)| *a && *b).collect()
    }

    /// A symbol transition between useful states that lies on a cycle of
    /// useful states. Such a cycle pumps length.
    fn pumping_edge(&self, useful: &[bool]) -> Option<(usize, usize, usize)> {
        for &(q, l, t) in &self.transitions {
            let Some(a) = l else { continue };
            if !useful[q] || !useful[t] {
                continue;
            }
            if self.shortest_path(t, |s| s == q, useful).is_some() {
                return Some((q, a, t));
            }
        }
        None
    }

    /// Shortest word (fewest symbols) leading from `from` to a state
    /// satisfying `goal`, staying inside `allowed`.
    fn shortest_path(
        &self,
        from: usize,
        goal: impl Fn(usize) -> bool,
        allowed: &[bool],
    ) -> Option<Vec<usize>> {
        // 0-1 BFS: ε edges cost nothing.
        let mut dist: Vec<Option<usize>> = vec![None; self.states];
        let mut prev: Vec<Option<(usize, Label)>> = vec![None; self.states];
        let mut dq = VecDeque::new();
        dist[from] = Some(0);
        dq.push_back(from);
        let mut done = vec![false; self.states];
        while let Some(q) = dq.pop_front() {
            if done[q] {
                continue;
            }
            done[q] = true;
            if goal(q) {
                let mut word = Vec::new();
                let mut cur = q;
                while let Some((p, l)) = prev[cur] {
                    if let Some(a) = l {
                        word.push(a);
                    }
                    cur = p;
                }
                word.reverse();
                return Some(word);
            }
            let d = dist[q].unwrap();
            for &(l, t) in &self.out[q] {
                if !allowed[t] {
                    continue;
                }
                let nd = d + usize::from(l.is_some());
                if dist[t].is_none_or(|old| nd < old) {
                    dist[t] = Some(nd);
                    prev[t] = Some((q, l));
                    if l.is_none() {
                        dq.push_front(t);
                    } else {
                        dq.push_back(t);
                    }
                }
            }
        }
        None
    }

    /// True iff `L(self)` is finite: after trimming to useful states, no
    /// cycle reads a symbol. Pure ε-cycles do not pump length.
    pub fn is_finite(&self) -> bool {
        let useful = self.useful();
        self.pumping_edge(&useful).is_none()
    }

    /// A decomposition `(x, y, z)` with `y` non-empty and `x y^i z` accepted
    /// for every `i >= 0`; `None` when the language is finite.
    pub fn pumping(&self) -> Option<(Word, Word, Word)> {
        let useful = self.useful();
        let (q, a, t) = self.pumping_edge(&useful)?;
        let x = self
            .starts
            .iter()
            .filter(|&&s| useful[s])
            .filter_map(|&s| self.shortest_path(s, |r| r == q, &useful))
            .min_by_key(Vec::len)?;
        let mut y = vec![a];
        y.extend(self.shortest_path(t, |r| r == q, &useful)?);
        let z = self.shortest_path(q, |r| self.accepting.contains(&r), &useful)?;
        Some((
            self.alphabet.decode(&x),
            self.alphabet.decode(&y),
            self.alphabet.decode(&z),
        ))
    }

    /// Minimum number of symbols needed to reach acceptance from each state.
    fn distance_to_accept(&self) -> Vec<Option<usize>> {
        let mut rev = vec![Vec::new(); self.states];
        for &(q, l, t) in &self.transitions {
            rev[t].push((q, usize::from(l.is_some())));
        }
        let mut dist: Vec<Option<usize>> = vec![None; self.states];
        let mut dq = VecDeque::new();
        for &q in &self.accepting {
            dist[q] = Some(0);
            dq.push_back(q);
        }
        while let Some(q) = dq.pop_front() {
            let d = dist[q].unwrap();
            for &(p, c) in &rev[q] {
                if dist[p].is_none_or(|old| d + c < old) {
                    dist[p] = Some(d + c);
                    if c == 0 {
                        dq.push_front(p);
                    } else {
                        dq.push_back(p);
                    }
                }
            }
        }
        dist
    }

    /// All accepted words of length at most `max_len`, in length-then-
    /// lexicographic order.
    pub fn enumerate(&self, max_len: usize) -> Vec<Word> {
        self.enumerate_indexed(max_len)
            .into_iter()
            .map(|w| self.alphabet.decode(&w))
            .collect()
    }

    pub(crate) fn enumerate_indexed(&self, max_len: usize) -> Vec<Vec<usize>> {
        let dist = self.distance_to_accept();
        let mut out = Vec::new();
        let mut prefix = Vec::new();
        let init = self.initial();
        self.enumerate_from(&init, &dist, max_len, &mut prefix, &mut out);
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }

    fn enumerate_from(
        &self,
        set: &BTreeSet<usize>,
        dist: &[Option<usize>],
        max_len: usize,
        prefix: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let remaining = max_len - prefix.len();
        let reachable = set
            .iter()
            .filter_map(|&q| dist[q])
            .min()
            .is_some_and(|d| d <= remaining);
        if !reachable {
            return;
        }
        if set.iter().any(|q| self.accepting.contains(q)) {
            out.push(prefix.clone());
        }
        if remaining == 0 {
            return;
        }
        for a in 0..self.alphabet.len() {
            let next = self.closure(&self.step(set, a));
            if next.is_empty() {
                continue;
            }
            prefix.push(a);
            self.enumerate_from(&next, dist, max_len, prefix, out);
            prefix.pop();
        }
    }

    /// Subset construction. The empty subset, when reachable, becomes the
    /// dead state.
    pub fn determinize(&self) -> Dfa {
        let init = self.initial();
        let mut index: HashMap<BTreeSet<usize>, usize> = HashMap::new();
        let mut subsets = vec![init.clone()];
        index.insert(init, 0);
        let mut table: Vec<Vec<usize>> = Vec::new();
        let mut i = 0;
        while i < subsets.len() {
            let cur = subsets[i].clone();
            let mut row = Vec::with_capacity(self.alphabet.len());
            for a in 0..self.alphabet.len() {
                let next = self.closure(&self.step(&cur, a));
                let id = *index.entry(next.clone()).or_insert_with(|| {
                    subsets.push(next);
                    subsets.len() - 1
                });
                row.push(id);
            }
            table.push(row);
            i += 1;
        }
        let accepting = subsets
            .iter()
            .enumerate()
            .filter(|(_, s)| s.iter().any(|q| self.accepting.contains(q)))
            .map(|(i, _)| i);
        Dfa::new(self.alphabet.clone(), table, 0, accepting).expect("subset construction is total")
    }
}

impl From<&Dfa> for Nfa {
    fn from(d: &Dfa) -> Nfa {
        d.to_nfa()
    }
}

/// A shortest word accepted by every DFA, found by breadth-first search over
/// the lazily built product. All machines must share one alphabet.
pub fn shortest_common_word(machines: &[Dfa]) -> Result<Option<Word>> {
    let Some(first) = machines.first() else {
        return domain("intersection of zero machines");
    };
    let alphabet = first.alphabet();
    if machines.iter().any(|m| m.alphabet() != alphabet) {
        return domain("machines do not share one alphabet");
    }
    let start: Vec<usize> = machines.iter().map(Dfa::start).collect();
    let mut parent: HashMap<Vec<usize>, Option<(Vec<usize>, usize)>> = HashMap::new();
    parent.insert(start.clone(), None);
    let mut queue = VecDeque::from([start]);
    while let Some(tuple) = queue.pop_front() {
        if machines.iter().zip(&tuple).all(|(m, &q)| m.is_accepting(q)) {
            let mut word = Vec::new();
            let mut cur = tuple;
            while let Some(Some((prev, a))) = parent.get(&cur) {
                word.push(*a);
                cur = prev.clone();
            }
            word.reverse();
            return Ok(Some(alphabet.decode(&word)));
        }
        for a in 0..alphabet.len() {
            let next: Vec<usize> = machines
                .iter()
                .zip(&tuple)
                .map(|(m, &q)| m.step(q, a))
                .collect();
            if !parent.contains_key(&next) {
                parent.insert(next.clone(), Some((tuple.clone(), a)));
                queue.push_back(next);
            }
        }
    }
    Ok(None)
}
