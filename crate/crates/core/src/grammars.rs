//! Context-free grammars: cleanup, finiteness, length bounds, bounded
//! enumeration, pumping, and the combinators used by the gadget builders.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use crate::error::{domain, Result};
use crate::words::{Alphabet, Symbol, Word};

/// A right-hand-side symbol: terminal index into the terminal alphabet, or
/// variable index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GSym {
    T(usize),
    V(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Production {
    pub lhs: usize,
    pub rhs: Vec<GSym>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cfg {
    variables: Vec<Symbol>,
    terminals: Alphabet,
    productions: Vec<Production>,
    start: usize,
}

/// Hands out symbol names that collide with nothing registered so far.
#[derive(Default)]
pub(crate) struct Namer {
    used: HashSet<Symbol>,
}

impl Namer {
    pub(crate) fn reserve<'a>(&mut self, names: impl IntoIterator<Item = &'a Symbol>) {
        self.used.extend(names.into_iter().cloned());
    }

    pub(crate) fn fresh(&mut self, base: &str) -> Symbol {
        let mut name = base.to_string();
        while self.used.contains(&Symbol::new(&name)) {
            name.push('\'');
        }
        let s = Symbol::new(&name);
        self.used.insert(s.clone());
        s
    }
}

/// Incremental construction by name. Tokens passed to [`CfgBuilder::rule`]
/// are terminals when they belong to the terminal alphabet and variables
/// otherwise.
#[derive(Clone, Debug)]
pub struct CfgBuilder {
    terminals: Alphabet,
    variables: Vec<Symbol>,
    index: HashMap<Symbol, usize>,
    productions: Vec<Production>,
}

impl CfgBuilder {
    pub fn new(terminals: Alphabet) -> Self {
        CfgBuilder {
            terminals,
            variables: Vec::new(),
            index: HashMap::new(),
            productions: Vec::new(),
        }
    }

    pub fn terminals(&self) -> &Alphabet {
        &self.terminals
    }

    /// Index of the variable named `name`, declaring it if needed.
    pub fn var(&mut self, name: &Symbol) -> usize {
        if let Some(&i) = self.index.get(name) {
            return i;
        }
        self.variables.push(name.clone());
        self.index.insert(name.clone(), self.variables.len() - 1);
        self.variables.len() - 1
    }

    pub fn resolve(&mut self, token: &Symbol) -> GSym {
        match self.terminals.index_of(token) {
            Some(a) => GSym::T(a),
            None => GSym::V(self.var(token)),
        }
    }

    pub fn rule(&mut self, lhs: &str, rhs: &[&str]) -> &mut Self {
        let l = self.var(&Symbol::new(lhs));
        let r = rhs.iter().map(|t| self.resolve(&Symbol::new(t))).collect();
        self.production(l, r)
    }

    pub fn production(&mut self, lhs: usize, rhs: Vec<GSym>) -> &mut Self {
        self.productions.push(Production { lhs, rhs });
        self
    }

    pub fn build(self, start: &Symbol) -> Result<Cfg> {
        let Some(&s) = self.index.get(start) else {
            return domain(format!("start variable {start} has no productions and is not declared"));
        };
        Cfg::new(self.variables, self.terminals, self.productions, s)
    }
}

/// A word as terminal indices.
type IdxWord = Vec<usize>;

fn len_lex(a: &IdxWord, b: &IdxWord) -> std::cmp::Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

impl Cfg {
    pub fn new(
        variables: Vec<Symbol>,
        terminals: Alphabet,
        productions: Vec<Production>,
        start: usize,
    ) -> Result<Self> {
        if start >= variables.len() {
            return domain("start variable out of range");
        }
        let mut seen = HashSet::new();
        for v in &variables {
            if !seen.insert(v) {
                return domain(format!("duplicate variable {v}"));
            }
            if terminals.contains(v) {
                return domain(format!("{v} is both a variable and a terminal"));
            }
        }
        let mut kept = Vec::with_capacity(productions.len());
        let mut dedup = HashSet::new();
        for p in productions {
            if p.lhs >= variables.len() {
                return domain("production head out of range");
            }
            for s in &p.rhs {
                let ok = match *s {
                    GSym::T(a) => a < terminals.len(),
                    GSym::V(v) => v < variables.len(),
                };
                if !ok {
                    return domain("production body references an undeclared symbol");
                }
            }
            if dedup.insert(p.clone()) {
                kept.push(p);
            }
        }
        Ok(Cfg {
            variables,
            terminals,
            productions: kept,
            start,
        })
    }

    /// The grammar `start -> (nothing)`: generates the empty language.
    pub fn empty(start: Symbol, terminals: Alphabet) -> Self {
        Cfg::new(vec![start], terminals, Vec::new(), 0).expect("empty grammar is valid")
    }

    pub fn variables(&self) -> &[Symbol] {
        &self.variables
    }

    pub fn terminals(&self) -> &Alphabet {
        &self.terminals
    }

    pub fn productions(&self) -> &[Production] {
        &self.productions
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn start_symbol(&self) -> &Symbol {
        &self.variables[self.start]
    }

    pub fn variable_index(&self, name: &Symbol) -> Option<usize> {
        self.variables.iter().position(|v| v == name)
    }

    /// Same productions, different start variable.
    pub fn with_start(&self, start: usize) -> Result<Cfg> {
        if start >= self.variables.len() {
            return domain("start variable out of range");
        }
        Ok(Cfg { start, ..self.clone() })
    }

    /// Number of productions plus the total length of their bodies.
    pub fn size(&self) -> usize {
        self.productions.iter().map(|p| 1 + p.rhs.len()).sum()
    }

    pub fn symbol_name(&self, s: GSym) -> &Symbol {
        match s {
            GSym::T(a) => self.terminals.symbol(a),
            GSym::V(v) => &self.variables[v],
        }
    }

    pub(crate) fn namer(&self) -> Namer {
        let mut n = Namer::default();
        n.reserve(&self.variables);
        n.reserve(self.terminals.symbols());
        n
    }

    fn productive(&self) -> Vec<bool> {
        let mut prod = vec![false; self.variables.len()];
        let mut changed = true;
        while changed {
            changed = false;
            for p in &self.productions {
                if !prod[p.lhs]
                    && p.rhs.iter().all(|s| match *s {
                        GSym::T(_) => true,
                        GSym::V(v) => prod[v],
                    })
                {
                    prod[p.lhs] = true;
                    changed = true;
                }
            }
        }
        prod
    }

    /// Removes non-productive and unreachable variables. When the start
    /// variable itself is useless the result is the canonical empty grammar.
    pub fn trim(&self) -> Cfg {
        let productive = self.productive();
        if !productive[self.start] {
            return Cfg::empty(self.start_symbol().clone(), self.terminals.clone());
        }
        let usable = |p: &Production| {
            productive[p.lhs]
                && p.rhs.iter().all(|s| match *s {
                    GSym::T(_) => true,
                    GSym::V(v) => productive[v],
                })
        };
        let mut reach = vec![false; self.variables.len()];
        reach[self.start] = true;
        let mut stack = vec![self.start];
        while let Some(x) = stack.pop() {
            for p in self.productions.iter().filter(|p| p.lhs == x && usable(p)) {
                for s in &p.rhs {
                    if let GSym::V(v) = *s {
                        if !reach[v] {
                            reach[v] = true;
                            stack.push(v);
                        }
                    }
                }
            }
        }
        let mut remap = vec![usize::MAX; self.variables.len()];
        let mut variables = Vec::new();
        for (i, v) in self.variables.iter().enumerate() {
            if reach[i] {
                remap[i] = variables.len();
                variables.push(v.clone());
            }
        }
        let productions = self
            .productions
            .iter()
            .filter(|p| reach[p.lhs] && usable(p))
            .map(|p| Production {
                lhs: remap[p.lhs],
                rhs: p
                    .rhs
                    .iter()
                    .map(|s| match *s {
                        GSym::T(a) => GSym::T(a),
                        GSym::V(v) => GSym::V(remap[v]),
                    })
                    .collect(),
            })
            .collect();
        Cfg::new(variables, self.terminals.clone(), productions, remap[self.start])
            .expect("trimming preserves validity")
    }

    pub fn is_empty_language(&self) -> bool {
        !self.productive()[self.start]
    }

    /// For each variable: can it derive some non-empty word? Assumes every
    /// variable is productive.
    fn derives_nonempty(&self) -> Vec<bool> {
        let mut ne = vec![false; self.variables.len()];
        let mut changed = true;
        while changed {
            changed = false;
            for p in &self.productions {
                if !ne[p.lhs]
                    && p.rhs.iter().any(|s| match *s {
                        GSym::T(_) => true,
                        GSym::V(v) => ne[v],
                    })
                {
                    ne[p.lhs] = true;
                    changed = true;
                }
            }
        }
        ne
    }

    /// Edges `X -> Y` for every occurrence of `Y` in a body of `X`, tagged
    /// with `(production, position)` and whether the surrounding context can
    /// contribute a non-empty word.
    fn occurrence_edges(&self, ne: &[bool]) -> Vec<(usize, usize, usize, usize, bool)> {
        let mut edges = Vec::new();
        for (pi, p) in self.productions.iter().enumerate() {
            for (i, s) in p.rhs.iter().enumerate() {
                if let GSym::V(y) = *s {
                    let growing = p.rhs.iter().enumerate().any(|(j, t)| {
                        j != i
                            && match *t {
                                GSym::T(_) => true,
                                GSym::V(v) => ne[v],
                            }
                    });
                    edges.push((p.lhs, y, pi, i, growing));
                }
            }
        }
        edges
    }

    /// Path of edge indices from `from` to `to` (empty when equal).
    fn edge_path(
        edges: &[(usize, usize, usize, usize, bool)],
        nvars: usize,
        from: usize,
        to: usize,
    ) -> Option<Vec<usize>> {
        let mut prev: Vec<Option<usize>> = vec![None; nvars];
        let mut seen = vec![false; nvars];
        seen[from] = true;
        let mut queue = VecDeque::from([from]);
        while let Some(x) = queue.pop_front() {
            if x == to {
                let mut path = Vec::new();
                let mut cur = x;
                while let Some(e) = prev[cur] {
                    path.push(e);
                    cur = edges[e].0;
                }
                path.reverse();
                return Some(path);
            }
            for (ei, e) in edges.iter().enumerate() {
                if e.0 == x && !seen[e.1] {
                    seen[e.1] = true;
                    prev[e.1] = Some(ei);
                    queue.push_back(e.1);
                }
            }
        }
        None
    }

    /// A growing edge lying on a cycle of the derives-graph, with the path
    /// closing the cycle. Works on a trimmed grammar.
    fn pumping_cycle(&self) -> Option<(usize, Vec<usize>)> {
        let ne = self.derives_nonempty();
        let edges = self.occurrence_edges(&ne);
        for (ei, e) in edges.iter().enumerate() {
            if !e.4 {
                continue;
            }
            if let Some(back) = Cfg::edge_path(&edges, self.variables.len(), e.1, e.0) {
                let mut cycle = vec![ei];
                cycle.extend(back);
                return Some((e.0, cycle));
            }
        }
        None
    }

    /// True iff `L(self)` is finite: no useful variable derives a sentential
    /// form that contains itself alongside a non-empty context.
    pub fn is_finite(&self) -> bool {
        self.trim().pumping_cycle().is_none()
    }

    /// `b^v` with `b = max(2, longest body)` and `v` the number of useful
    /// variables; an upper bound on the length of every generated word.
    pub fn length_bound(&self) -> Result<usize> {
        let t = self.trim();
        if t.pumping_cycle().is_some() {
            return domain("length bound requested for an infinite language");
        }
        let b = t
            .productions
            .iter()
            .map(|p| p.rhs.len())
            .max()
            .unwrap_or(0)
            .max(2);
        let v = u32::try_from(t.variables.len()).unwrap_or(u32::MAX);
        Ok(b.saturating_pow(v))
    }

    /// All generated words of length at most `max_len`, deduplicated, in
    /// length-then-lexicographic order.
    pub fn enumerate(&self, max_len: usize) -> Vec<Word> {
        self.enumerate_indexed(max_len)
            .into_iter()
            .map(|w| self.terminals.decode(&w))
            .collect()
    }

    /// Per-variable languages truncated at `max_len`, computed as a least
    /// fixpoint. Terminates on every grammar because the truncated sets are
    /// finite.
    pub(crate) fn truncated_languages(&self, max_len: usize) -> Vec<HashSet<IdxWord>> {
        let mut lang: Vec<HashSet<IdxWord>> = vec![HashSet::new(); self.variables.len()];
        let mut changed = true;
        while changed {
            changed = false;
            for p in &self.productions {
                let mut cur: HashSet<IdxWord> = HashSet::from([Vec::new()]);
                for s in &p.rhs {
                    let mut next = HashSet::new();
                    match *s {
                        GSym::T(a) => {
                            for mut w in cur {
                                if w.len() < max_len {
                                    w.push(a);
                                    next.insert(w);
                                }
                            }
                        }
                        GSym::V(v) => {
                            for w in &cur {
                                for u in &lang[v] {
                                    if w.len() + u.len() <= max_len {
                                        let mut x = w.clone();
                                        x.extend_from_slice(u);
                                        next.insert(x);
                                    }
                                }
                            }
                        }
                    }
                    cur = next;
                    if cur.is_empty() {
                        break;
                    }
                }
                for w in cur {
                    if lang[p.lhs].insert(w) {
                        changed = true;
                    }
                }
            }
        }
        lang
    }

    pub(crate) fn enumerate_indexed(&self, max_len: usize) -> Vec<IdxWord> {
        let t = self.trim();
        let mut words: Vec<IdxWord> = t
            .truncated_languages(max_len)
            .swap_remove(t.start)
            .into_iter()
            .collect();
        words.sort_by(len_lex);
        words
    }

    /// Shortest word derivable from each variable (`None` if unproductive).
    fn shortest_words(&self) -> Vec<Option<IdxWord>> {
        let mut best: Vec<Option<IdxWord>> = vec![None; self.variables.len()];
        let mut changed = true;
        while changed {
            changed = false;
            for p in &self.productions {
                let mut w = Vec::new();
                let mut ok = true;
                for s in &p.rhs {
                    match *s {
                        GSym::T(a) => w.push(a),
                        GSym::V(v) => match &best[v] {
                            Some(u) => w.extend_from_slice(u),
                            None => {
                                ok = false;
                                break;
                            }
                        },
                    }
                }
                if ok && best[p.lhs].as_ref().is_none_or(|b| len_lex(&w, b).is_lt()) {
                    best[p.lhs] = Some(w);
                    changed = true;
                }
            }
        }
        best
    }

    /// Shortest non-empty word derivable from each variable.
    fn shortest_nonempty_words(&self, short: &[Option<IdxWord>]) -> Vec<Option<IdxWord>> {
        let mut best: Vec<Option<IdxWord>> = vec![None; self.variables.len()];
        let mut changed = true;
        while changed {
            changed = false;
            for p in &self.productions {
                if p.rhs.iter().any(|s| matches!(s, GSym::V(v) if short[*v].is_none())) {
                    continue;
                }
                // Make position `i` the one that contributes a non-empty part.
                for i in 0..p.rhs.len() {
                    let mut w = Vec::new();
                    let mut ok = true;
                    for (j, s) in p.rhs.iter().enumerate() {
                        match *s {
                            GSym::T(a) => w.push(a),
                            GSym::V(v) if j == i => match &best[v] {
                                Some(u) => w.extend_from_slice(u),
                                None => ok = false,
                            },
                            GSym::V(v) => w.extend_from_slice(short[v].as_ref().unwrap()),
                        }
                    }
                    if ok
                        && !w.is_empty()
                        && best[p.lhs].as_ref().is_none_or(|b| len_lex(&w, b).is_lt())
                    {
                        best[p.lhs] = Some(w);
                        changed = true;
                    }
                }
            }
        }
        best
    }

    /// A decomposition `u v w x y` with `vx` non-empty such that
    /// `u v^i w x^i y` is generated for every `i >= 0`. `None` iff the
    /// language is finite.
    pub fn pumping_decomposition(&self) -> Option<Pumping> {
        let g = self.trim();
        let (head, cycle) = g.pumping_cycle()?;
        let short = g.shortest_words();
        let nonempty = g.shortest_nonempty_words(&short);
        let ne = g.derives_nonempty();
        let edges = g.occurrence_edges(&ne);

        let context = |ei: usize, force_nonempty: bool| -> (IdxWord, IdxWord) {
            let (_, _, pi, pos, _) = edges[ei];
            let rhs = &g.productions[pi].rhs;
            let mut forced = !force_nonempty;
            let mut render = |s: GSym, out: &mut IdxWord| match s {
                GSym::T(a) => {
                    out.push(a);
                    forced = true;
                }
                GSym::V(v) => {
                    if !forced {
                        if let Some(u) = &nonempty[v] {
                            out.extend_from_slice(u);
                            forced = true;
                            return;
                        }
                    }
                    out.extend_from_slice(short[v].as_ref().unwrap());
                }
            };
            let mut left = Vec::new();
            let mut right = Vec::new();
            for &s in &rhs[..pos] {
                render(s, &mut left);
            }
            for &s in &rhs[pos + 1..] {
                render(s, &mut right);
            }
            (left, right)
        };

        let mut v = Vec::new();
        let mut xs = Vec::new();
        for (k, &ei) in cycle.iter().enumerate() {
            let (l, r) = context(ei, k == 0);
            v.extend(l);
            xs.push(r);
        }
        let x: IdxWord = xs.into_iter().rev().flatten().collect();
        let w = short[head].clone().unwrap();

        let mut u = Vec::new();
        let mut ys = Vec::new();
        let to_head = Cfg::edge_path(&edges, g.variables.len(), g.start, head)?;
        for ei in to_head {
            let (l, r) = context(ei, false);
            u.extend(l);
            ys.push(r);
        }
        let y: IdxWord = ys.into_iter().rev().flatten().collect();
        let d = |w: &IdxWord| g.terminals.decode(w);
        Some(Pumping {
            u: d(&u),
            v: d(&v),
            w: d(&w),
            x: d(&x),
            y: d(&y),
        })
    }

    /// Length of the longest generated word; `None` for an infinite or
    /// empty language.
    pub fn max_word_length(&self) -> Option<usize> {
        let g = self.trim();
        if g.is_empty_language() || !g.is_finite() {
            return None;
        }
        // Longest-path relaxation; finiteness rules out cycles that add
        // length, so values settle within one round per variable.
        let mut longest = vec![0usize; g.variables.len()];
        for _ in 0..=g.variables.len() {
            let mut changed = false;
            for p in &g.productions {
                let len: usize = p
                    .rhs
                    .iter()
                    .map(|s| match *s {
                        GSym::T(_) => 1,
                        GSym::V(v) => longest[v],
                    })
                    .sum();
                if len > longest[p.lhs] {
                    longest[p.lhs] = len;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        Some(longest[g.start])
    }

    /// Variables that derive ε.
    pub fn nullable(&self) -> Vec<bool> {
        let mut null = vec![false; self.variables.len()];
        let mut changed = true;
        while changed {
            changed = false;
            for p in &self.productions {
                if !null[p.lhs] && p.rhs.iter().all(|s| matches!(*s, GSym::V(v) if null[v])) {
                    null[p.lhs] = true;
                    changed = true;
                }
            }
        }
        null
    }

    /// Equivalent grammar without ε-bodies, except possibly `S0 -> ε` for a
    /// fresh start `S0` that occurs in no body. Bodies are binarized first
    /// so dropping nullable symbols adds at most three variants each.
    pub fn eliminate_epsilon(&self) -> Cfg {
        let g = self.trim().binarize();
        let null = g.nullable();
        let mut productions = Vec::new();
        for p in &g.productions {
            let optional: Vec<usize> = (0..p.rhs.len())
                .filter(|&i| matches!(p.rhs[i], GSym::V(v) if null[v]))
                .collect();
            for mask in 0u32..1 << optional.len() {
                let rhs: Vec<GSym> = p
                    .rhs
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| {
                        optional
                            .iter()
                            .position(|o| o == i)
                            .is_none_or(|k| mask >> k & 1 == 0)
                    })
                    .map(|(_, &s)| s)
                    .collect();
                if !rhs.is_empty() {
                    productions.push(Production { lhs: p.lhs, rhs });
                }
            }
        }
        let mut variables = g.variables.clone();
        let mut start = g.start;
        if null[g.start] {
            variables.push(g.namer().fresh(&format!("{}0", g.variables[g.start])));
            let s0 = variables.len() - 1;
            productions.push(Production {
                lhs: s0,
                rhs: vec![GSym::V(g.start)],
            });
            productions.push(Production {
                lhs: s0,
                rhs: Vec::new(),
            });
            start = s0;
        }
        Cfg::new(variables, g.terminals.clone(), productions, start)
            .expect("ε-elimination preserves validity")
            .trim()
    }

    /// Equivalent grammar whose bodies have length at most two.
    pub fn binarize(&self) -> Cfg {
        let mut namer = self.namer();
        let mut variables = self.variables.clone();
        let mut productions = Vec::new();
        for p in &self.productions {
            if p.rhs.len() <= 2 {
                productions.push(p.clone());
                continue;
            }
            let base = self.variables[p.lhs].to_string();
            let mut lhs = p.lhs;
            for (i, &s) in p.rhs.iter().enumerate() {
                if i == p.rhs.len() - 2 {
                    productions.push(Production {
                        lhs,
                        rhs: vec![s, p.rhs[i + 1]],
                    });
                    break;
                }
                variables.push(namer.fresh(&format!("{base}/{i}")));
                let next = variables.len() - 1;
                productions.push(Production {
                    lhs,
                    rhs: vec![s, GSym::V(next)],
                });
                lhs = next;
            }
        }
        Cfg::new(variables, self.terminals.clone(), productions, self.start)
            .expect("binarization preserves validity")
    }
}

/// Witness of an infinite language: `u v^i w x^i y` is generated for all
/// `i >= 0`, and `v x` is non-empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pumping {
    pub u: Word,
    pub v: Word,
    pub w: Word,
    pub x: Word,
    pub y: Word,
}

impl Pumping {
    pub fn pumped(&self, i: usize) -> Word {
        self.u
            .concat(&self.v.repeat(i))
            .concat(&self.w)
            .concat(&self.x.repeat(i))
            .concat(&self.y)
    }
}

/// `L(g1) sep L(g2) sep ... L(gk) sep`, with component variables renamed apart.
pub fn concat_with_separators(gs: &[Cfg], sep: &Symbol) -> Result<Cfg> {
    if gs.is_empty() {
        return domain("nothing to concatenate");
    }
    if let Some(i) = gs.iter().position(|g| g.terminals.contains(sep)) {
        return domain(format!("separator {sep} occurs in the terminals of grammar {}", i + 1));
    }
    let mut terminals = gs[0].terminals.clone();
    for g in &gs[1..] {
        terminals = terminals.union(&g.terminals);
    }
    let terminals = terminals.union(&Alphabet::new([sep.clone()])?);
    let sep_idx = terminals.index_of(sep).unwrap();

    let mut namer = Namer::default();
    namer.reserve(terminals.symbols());
    let mut variables = vec![namer.fresh("S")];
    let mut productions = Vec::new();
    let mut top = Vec::new();
    for (k, g) in gs.iter().enumerate() {
        let offset = variables.len();
        for v in &g.variables {
            variables.push(namer.fresh(&format!("{v}.{}", k + 1)));
        }
        let tmap: Vec<usize> = g
            .terminals
            .symbols()
            .iter()
            .map(|s| terminals.index_of(s).unwrap())
            .collect();
        for p in &g.productions {
            productions.push(Production {
                lhs: p.lhs + offset,
                rhs: p
                    .rhs
                    .iter()
                    .map(|s| match *s {
                        GSym::T(a) => GSym::T(tmap[a]),
                        GSym::V(v) => GSym::V(v + offset),
                    })
                    .collect(),
            });
        }
        top.push(GSym::V(g.start + offset));
        top.push(GSym::T(sep_idx));
    }
    productions.push(Production { lhs: 0, rhs: top });
    Cfg::new(variables, terminals, productions, 0)
}

/// Grammar for `{ u : uv in L(g) for some v }`, including ε whenever `L(g)`
/// is non-empty. Each variable `X` gets a companion generating the prefixes
/// of its yields.
pub fn prefix_grammar(g: &Cfg) -> Cfg {
    let g = g.trim();
    if g.is_empty_language() {
        return g;
    }
    let mut namer = g.namer();
    let n = g.variables.len();
    let mut variables = g.variables.clone();
    for v in &g.variables {
        variables.push(namer.fresh(&format!("{v}'")));
    }
    let primed = |v: usize| v + n;
    let mut productions = g.productions.clone();
    for x in 0..n {
        productions.push(Production {
            lhs: primed(x),
            rhs: Vec::new(),
        });
    }
    for p in &g.productions {
        for i in 0..p.rhs.len() {
            let mut rhs = p.rhs[..i].to_vec();
            rhs.push(match p.rhs[i] {
                GSym::T(a) => GSym::T(a),
                GSym::V(v) => GSym::V(primed(v)),
            });
            productions.push(Production {
                lhs: primed(p.lhs),
                rhs,
            });
        }
    }
    Cfg::new(variables, g.terminals.clone(), productions, primed(g.start))
        .expect("prefix construction preserves validity")
}

/// Every word of `words` paired with all its prefixes, as a set.
pub fn prefix_closure(words: &[Word]) -> BTreeSet<Word> {
    words
        .iter()
        .flat_map(|w| (0..=w.len()).map(move |i| w.factor(0, i)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn grammar(start: &str, terminals: &str, rules: &[(&str, &[&str])]) -> Cfg {
        let mut b = CfgBuilder::new(Alphabet::from_chars(terminals).unwrap());
        b.var(&Symbol::new(start));
        for (l, r) in rules {
            b.rule(l, r);
        }
        b.build(&Symbol::new(start)).unwrap()
    }

    fn words(list: &[&str]) -> Vec<Word> {
        list.iter().map(|s| Word::from_chars(s)).collect()
    }

    fn aa01() -> Cfg {
        grammar("S", "01", &[("S", &["A", "A"]), ("A", &["0", "1"])])
    }

    #[test]
    fn longest_word() {
        let g = grammar("S", "ab", &[("S", &["A", "A"]), ("S", &["b"]), ("A", &["a", "b"]), ("A", &[])]);
        assert_eq!(g.max_word_length(), Some(4));
        let inf = grammar("S", "a", &[("S", &["a", "S"]), ("S", &["a"])]);
        assert_eq!(inf.max_word_length(), None);
    }

    #[test]
    fn epsilon_elimination_keeps_language() {
        let g = grammar("S", "ab", &[("S", &["A", "S", "B"]), ("S", &[]), ("A", &["a"]), ("A", &[]), ("B", &["b"])]);
        let e = g.eliminate_epsilon();
        assert_eq!(e.enumerate(6), g.enumerate(6));
        let start = e.start();
        for p in e.productions() {
            assert!(!p.rhs.is_empty() || p.lhs == start);
            assert!(!p.rhs.contains(&GSym::V(start)));
        }
        let g = grammar("S", "ab", &[("S", &["a"])]);
        assert_eq!(g.eliminate_epsilon().enumerate(3), g.enumerate(3));
    }

    #[test]
    fn trim_examples() {
        let g = grammar("S", "ab", &[("S", &["A", "B"]), ("A", &["a"])]);
        let t = g.trim();
        assert!(t.is_empty_language());
        assert!(t.enumerate(5).is_empty());

        let g = grammar("S", "ab", &[("S", &["a"]), ("X", &["b"])]);
        let t = g.trim();
        assert_eq!(t.variables().len(), 1);
        assert_eq!(t.productions().len(), 1);

        let g = aa01();
        assert_eq!(g.trim(), g);
        assert_eq!(g.trim().trim(), g.trim());
    }

    #[test]
    fn finiteness_examples() {
        let g = grammar("S", "ab", &[("S", &["a", "S", "b"]), ("S", &["a", "b"])]);
        assert!(!g.is_finite());
        assert!(aa01().is_finite());
        // Unit cycles and ε-contexts do not pump.
        let g = grammar(
            "S",
            "a",
            &[("S", &["X"]), ("X", &["S"]), ("X", &["a"]), ("X", &["E", "X"]), ("E", &[])],
        );
        assert!(g.is_finite());
        assert_eq!(g.enumerate(10), words(&["a"]));
    }

    #[test]
    fn length_bound_examples() {
        let g = aa01();
        let b = g.length_bound().unwrap();
        assert_eq!(b, 4);
        assert!(g.enumerate(100).iter().all(|w| w.len() <= b));
        assert_eq!(grammar("S", "a", &[("S", &["a"])]).length_bound().unwrap(), 2);
        let eps = grammar("S", "a", &[("S", &[])]);
        assert_eq!(eps.enumerate(3), vec![Word::empty()]);
        assert!(eps.length_bound().is_ok());
        let inf = grammar("S", "a", &[("S", &["a", "S"]), ("S", &["a"])]);
        assert!(inf.length_bound().is_err());
    }

    #[test]
    fn enumerate_examples() {
        assert_eq!(aa01().enumerate(10), words(&["0101"]));
        let empty = Cfg::empty(Symbol::new("S"), Alphabet::from_chars("0").unwrap());
        assert!(empty.enumerate(5).is_empty());
        let g = grammar("S", "ab", &[("S", &["a", "S", "b"]), ("S", &[])]);
        assert_eq!(g.enumerate(4), words(&["", "ab", "aabb"]));
        // Ambiguous grammar yields each word once.
        let g = grammar("S", "a", &[("S", &["S", "S"]), ("S", &["a"])]);
        assert_eq!(g.enumerate(3), words(&["a", "aa", "aaa"]));
    }

    #[test]
    fn concat_examples() {
        let sep = Symbol::new("#");
        let a = grammar("S", "a", &[("S", &["a"])]);
        let c = concat_with_separators(&[a], &sep).unwrap();
        assert_eq!(c.enumerate(5), vec!["a #".parse().unwrap()]);

        let zero = grammar("S", "0", &[("S", &["0"])]);
        let one = grammar("S", "1", &[("S", &["1"])]);
        let c = concat_with_separators(&[zero, one], &sep).unwrap();
        assert_eq!(c.enumerate(5), vec!["0 # 1 #".parse::<Word>().unwrap()]);

        let x = grammar("S", "01", &[("S", &["0", "1"])]);
        let c = concat_with_separators(&[x.clone(), x.clone()], &sep).unwrap();
        assert_eq!(c.enumerate(8), vec!["0 1 # 0 1 #".parse::<Word>().unwrap()]);

        let clash = grammar("S", "#", &[("S", &["#"])]);
        assert!(concat_with_separators(&[x, clash], &sep).is_err());
    }

    #[test]
    fn prefix_examples() {
        let g = grammar("S", "01", &[("S", &["0", "1"])]);
        assert_eq!(prefix_grammar(&g).enumerate(5), words(&["", "0", "01"]));
        let g = grammar("S", "abc", &[("S", &["a", "B"]), ("B", &["b", "c"])]);
        assert_eq!(prefix_grammar(&g).enumerate(5), words(&["", "a", "ab", "abc"]));
        let p = prefix_grammar(&g);
        assert_eq!(prefix_grammar(&p).enumerate(8), p.enumerate(8));
        let empty = Cfg::empty(Symbol::new("S"), Alphabet::from_chars("0").unwrap());
        assert!(prefix_grammar(&empty).enumerate(3).is_empty());
    }

    #[test]
    fn pumping_examples() {
        let g = grammar("S", "ab", &[("S", &["a", "S", "b"]), ("S", &["a", "b"])]);
        let pump = g.pumping_decomposition().unwrap();
        assert!(!pump.v.concat(&pump.x).is_empty());
        let lang = g.enumerate(20);
        for i in 0..4 {
            assert!(lang.contains(&pump.pumped(i)), "{:?}", pump.pumped(i));
        }
        assert!(aa01().pumping_decomposition().is_none());

        // Growth only through a nullable-or-not variable in context.
        let g = grammar(
            "S",
            "a",
            &[("S", &["E", "S"]), ("S", &["a"]), ("E", &[]), ("E", &["a"])],
        );
        let pump = g.pumping_decomposition().unwrap();
        assert!(!pump.v.concat(&pump.x).is_empty());
        let lang = g.enumerate(20);
        for i in 0..4 {
            assert!(lang.contains(&pump.pumped(i)));
        }
    }

    #[test]
    fn binarize_preserves_language() {
        let g = grammar(
            "S",
            "01",
            &[("S", &["0", "A", "1", "A", "0"]), ("A", &["1", "1", "1"]), ("A", &[])],
        );
        let b = g.binarize();
        assert!(b.productions().iter().all(|p| p.rhs.len() <= 2));
        assert_eq!(b.enumerate(20), g.enumerate(20));
    }
}
