//! Pattern matching against single words and against NFA languages.
//!
//! Single-word matching backtracks over the pattern left to right: a
//! variable's first occurrence tries image lengths shortest-first, later
//! occurrences verify the bound image. A length prefilter discards any
//! choice that cannot fit the remaining positions.
//!
//! Language-level matching runs the same backtracking while simulating the
//! automaton on the word being built, so only words of the language are ever
//! considered.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use crate::automata::Nfa;
use crate::error::{domain, Result};
use crate::limits::Limits;
use crate::words::{Morphism, Pattern, Symbol, Word};

/// An occurrence of `h(p)` inside a host word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchWitness {
    pub morphism: Morphism,
    pub start: usize,
    pub length: usize,
}

/// Pattern with variables renumbered `0..k` in order of first occurrence.
struct Compiled {
    vars: Vec<Symbol>,
    seq: Vec<usize>,
}

impl Compiled {
    fn new(p: &Pattern) -> Self {
        let vars = p.distinct();
        let seq = p
            .variables()
            .iter()
            .map(|v| vars.iter().position(|u| u == v).unwrap())
            .collect();
        Compiled { vars, seq }
    }

    /// Lower bound on the length still needed from position `i` on, given
    /// current bindings and excluding occurrences of `skip`.
    fn rest_min(&self, i: usize, lens: &[Option<usize>], skip: usize) -> usize {
        self.seq[i..]
            .iter()
            .filter(|&&x| x != skip)
            .map(|&x| lens[x].unwrap_or(1))
            .sum()
    }

    fn count_from(&self, i: usize, x: usize) -> usize {
        self.seq[i..].iter().filter(|&&y| y == x).count()
    }
}

struct ExactSearch<'a> {
    pat: &'a Compiled,
    word: &'a [Symbol],
    bind: Vec<Option<(usize, usize)>>,
}

impl ExactSearch<'_> {
    fn go(&mut self, i: usize, pos: usize) -> bool {
        let n = self.word.len();
        if i == self.pat.seq.len() {
            return pos == n;
        }
        let x = self.pat.seq[i];
        if let Some((s, l)) = self.bind[x] {
            return pos + l <= n
                && self.word[s..s + l] == self.word[pos..pos + l]
                && self.go(i + 1, pos + l);
        }
        let lens: Vec<Option<usize>> = self.bind.iter().map(|b| b.map(|(_, l)| l)).collect();
        let need = self.pat.rest_min(i, &lens, x);
        let Some(avail) = (n - pos).checked_sub(need) else {
            return false;
        };
        let cnt = self.pat.count_from(i, x);
        for l in 1..=avail / cnt {
            self.bind[x] = Some((pos, l));
            if self.go(i + 1, pos + l) {
                return true;
            }
        }
        self.bind[x] = None;
        false
    }
}

fn exact_on(pat: &Compiled, word: &[Symbol]) -> Option<Morphism> {
    let mut s = ExactSearch {
        pat,
        word,
        bind: vec![None; pat.vars.len()],
    };
    if !s.go(0, 0) {
        return None;
    }
    let pairs = pat.vars.iter().zip(&s.bind).map(|(v, b)| {
        let (st, l) = b.expect("every variable is bound after a full match");
        (v.clone(), Word::new(word[st..st + l].to_vec()))
    });
    Some(Morphism::from_pairs(pairs).expect("images are non-empty"))
}

/// A non-erasing morphism `h` with `h(p) = w`: the first one met when image
/// lengths are tried shortest-first at each variable's first occurrence.
pub fn match_exact(p: &Pattern, w: &Word) -> Option<Morphism> {
    exact_on(&Compiled::new(p), w)
}

/// The leftmost, then shortest, factor of `w` matched by `p`.
pub fn match_factor(p: &Pattern, w: &Word) -> Option<MatchWitness> {
    let pat = Compiled::new(p);
    let n = w.len();
    for start in 0..n {
        for length in p.len()..=n - start {
            if let Some(morphism) = exact_on(&pat, &w[start..start + length]) {
                return Some(MatchWitness {
                    morphism,
                    start,
                    length,
                });
            }
        }
    }
    None
}

/// Some `x` in `L(m)` and `h` with `h(p) = x`. Only finite languages are
/// accepted; the unrestricted problem is out of reach.
pub fn nfa_pattern_accept(m: &Nfa, p: &Pattern) -> Result<Option<(Word, Morphism)>> {
    if !m.is_finite() {
        return domain("pattern acceptance is only decided for finite languages");
    }
    Ok(guided_search(m, p, false, &Limits::unbounded())?.map(|(w, wit)| (w, wit.morphism)))
}

/// Some `x` in `L(m)` with a factor matched by `p`. Infinite languages are
/// answered by pumping: `x y^|p| z` with every variable mapped to `y`.
pub fn nfa_pattern_factor_accept(m: &Nfa, p: &Pattern) -> Result<Option<(Word, MatchWitness)>> {
    if let Some((x, y, z)) = m.pumping() {
        let word = x.concat(&y.repeat(p.len())).concat(&z);
        let morphism = Morphism::from_pairs(p.distinct().into_iter().map(|v| (v, y.clone())))?;
        return Ok(Some((
            word,
            MatchWitness {
                morphism,
                start: x.len(),
                length: y.len() * p.len(),
            },
        )));
    }
    let max_len = m.states().saturating_sub(1);
    for w in m.enumerate(max_len) {
        if let Some(wit) = match_factor(p, &w) {
            return Ok(Some((w, wit)));
        }
    }
    Ok(None)
}

type StateSet = BTreeSet<usize>;

/// Backtracking pattern search over the words of a finite-language NFA.
///
/// The automaton is simulated on sets of states, so each border between
/// pattern positions carries the set of states reachable there. A
/// variable's first occurrence extends its image one symbol at a time from
/// the current set; later occurrences replay the bound image. In factor mode
/// the search starts from every distinct set reachable by some prefix and
/// closes with a shortest accepted suffix.
pub(crate) fn guided_search(
    m: &Nfa,
    p: &Pattern,
    factor: bool,
    limits: &Limits,
) -> Result<Option<(Word, MatchWitness)>> {
    let useful = m.useful();
    let longest = longest_remaining(m, &useful);
    let pat = Compiled::new(p);
    let mut search = Guided {
        m,
        pat: &pat,
        useful: &useful,
        longest: &longest,
        bind: vec![None; pat.vars.len()],
        image: Vec::new(),
        failed: HashSet::new(),
        visited: 0,
        limits,
    };
    let init = restrict(&m.initial(), &useful);
    let starts: Vec<(Vec<usize>, StateSet)> = if factor {
        prefix_sets(m, &init, &useful)
    } else {
        vec![(Vec::new(), init)]
    };
    for (prefix, set) in starts {
        if set.is_empty() {
            continue;
        }
        if let Some(end) = search.go(0, &set, factor)? {
            let suffix = if factor {
                shortest_to_accept(m, &end, &useful).expect("useful states reach acceptance")
            } else {
                Vec::new()
            };
            let a = m.alphabet();
            let images: Vec<Word> = search
                .bind
                .iter()
                .map(|b| a.decode(b.as_ref().expect("all variables bound")))
                .collect();
            let length = search.image.len();
            let mut word = prefix.clone();
            word.extend_from_slice(&search.image);
            word.extend_from_slice(&suffix);
            let morphism = Morphism::from_pairs(pat.vars.iter().cloned().zip(images))?;
            return Ok(Some((
                a.decode(&word),
                MatchWitness {
                    morphism,
                    start: prefix.len(),
                    length,
                },
            )));
        }
    }
    Ok(None)
}

fn restrict(set: &StateSet, useful: &[bool]) -> StateSet {
    set.iter().copied().filter(|&q| useful[q]).collect()
}

/// Longest number of symbols readable from each useful state before
/// acceptance. Finite because a finite language has no useful symbol cycle.
fn longest_remaining(m: &Nfa, useful: &[bool]) -> Vec<usize> {
    let mut best = vec![0usize; m.states()];
    let mut reach = vec![false; m.states()];
    for &q in m.accepting() {
        reach[q] = useful[q];
    }
    // Max-relaxation; at most `states` rounds without a positive cycle.
    for _ in 0..=m.states() {
        let mut changed = false;
        for &(q, l, t) in m.transitions() {
            if !useful[q] || !useful[t] || !reach[t] {
                continue;
            }
            let cand = best[t] + usize::from(l.is_some());
            if !reach[q] || cand > best[q] {
                reach[q] = true;
                best[q] = cand;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    best
}

/// Distinct state sets reachable by some prefix, each with its shortest
/// (then lexicographically least) prefix, in breadth-first order.
fn prefix_sets(m: &Nfa, init: &StateSet, useful: &[bool]) -> Vec<(Vec<usize>, StateSet)> {
    let mut seen: HashMap<StateSet, ()> = HashMap::new();
    let mut out = Vec::new();
    let mut queue = VecDeque::from([(Vec::new(), init.clone())]);
    seen.insert(init.clone(), ());
    while let Some((w, s)) = queue.pop_front() {
        for a in 0..m.alphabet().len() {
            let next = restrict(&m.closure(&m.step(&s, a)), useful);
            if next.is_empty() || seen.contains_key(&next) {
                continue;
            }
            seen.insert(next.clone(), ());
            let mut nw = w.clone();
            nw.push(a);
            queue.push_back((nw, next));
        }
        out.push((w, s));
    }
    out
}

fn shortest_to_accept(m: &Nfa, from: &StateSet, useful: &[bool]) -> Option<Vec<usize>> {
    let mut seen = HashSet::from([from.clone()]);
    let mut queue = VecDeque::from([(Vec::new(), from.clone())]);
    while let Some((w, s)) = queue.pop_front() {
        if s.iter().any(|q| m.accepting().contains(q)) {
            return Some(w);
        }
        for a in 0..m.alphabet().len() {
            let next = restrict(&m.closure(&m.step(&s, a)), useful);
            if !next.is_empty() && seen.insert(next.clone()) {
                let mut nw = w.clone();
                nw.push(a);
                queue.push_back((nw, next));
            }
        }
    }
    None
}

struct Guided<'a> {
    m: &'a Nfa,
    pat: &'a Compiled,
    useful: &'a [bool],
    longest: &'a [usize],
    bind: Vec<Option<Vec<usize>>>,
    /// `h(p_1 .. p_i)` for the current branch.
    image: Vec<usize>,
    failed: HashSet<(usize, StateSet, Vec<Option<Vec<usize>>>)>,
    visited: usize,
    limits: &'a Limits,
}

impl Guided<'_> {
    fn advance(&self, set: &StateSet, a: usize) -> StateSet {
        restrict(&self.m.closure(&self.m.step(set, a)), self.useful)
    }

    fn budget(&self, set: &StateSet) -> usize {
        set.iter().map(|&q| self.longest[q]).max().unwrap_or(0)
    }

    /// Returns the state set after `h(p)` on success.
    fn go(&mut self, i: usize, set: &StateSet, factor: bool) -> Result<Option<StateSet>> {
        self.visited += 1;
        self.limits.check(self.visited)?;
        if i == self.pat.seq.len() {
            let done = factor || set.iter().any(|q| self.m.accepting().contains(q));
            return Ok(done.then(|| set.clone()));
        }
        let key = (i, set.clone(), self.bind.clone());
        if self.failed.contains(&key) {
            return Ok(None);
        }
        let x = self.pat.seq[i];
        let found = if let Some(img) = self.bind[x].clone() {
            let mut cur = set.clone();
            for &a in &img {
                cur = self.advance(&cur, a);
                if cur.is_empty() {
                    break;
                }
            }
            if cur.is_empty() {
                None
            } else {
                self.image.extend_from_slice(&img);
                let r = self.go(i + 1, &cur, factor)?;
                if r.is_none() {
                    self.image.truncate(self.image.len() - img.len());
                }
                r
            }
        } else {
            let lens: Vec<Option<usize>> =
                self.bind.iter().map(|b| b.as_ref().map(Vec::len)).collect();
            let need = self.pat.rest_min(i, &lens, x);
            let cnt = self.pat.count_from(i, x);
            let mut u = Vec::new();
            let r = self.extend(i, x, set, set, &mut u, need, cnt, factor)?;
            if r.is_none() {
                self.bind[x] = None;
            }
            r
        };
        if found.is_none() {
            self.failed.insert(key);
        }
        Ok(found)
    }

    #[allow(clippy::too_many_arguments)]
    fn extend(
        &mut self,
        i: usize,
        x: usize,
        origin: &StateSet,
        cur: &StateSet,
        u: &mut Vec<usize>,
        need: usize,
        cnt: usize,
        factor: bool,
    ) -> Result<Option<StateSet>> {
        let budget = self.budget(origin);
        if (u.len() + 1) * cnt + need > budget {
            return Ok(None);
        }
        for a in 0..self.m.alphabet().len() {
            let next = self.advance(cur, a);
            if next.is_empty() {
                continue;
            }
            u.push(a);
            self.bind[x] = Some(u.clone());
            self.image.push(a);
            if let Some(end) = self.go(i + 1, &next, factor)? {
                return Ok(Some(end));
            }
            if let Some(end) = self.extend(i, x, origin, &next, u, need, cnt, factor)? {
                return Ok(Some(end));
            }
            self.image.pop();
            u.pop();
        }
        Ok(None)
    }
}
