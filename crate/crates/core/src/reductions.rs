//! Hardness gadgets and the brute-force oracles used to check them.

use std::collections::{BTreeSet, HashSet, VecDeque};

use crate::automata::{Dfa, Nfa};
use crate::error::{domain, Error, Result};
use crate::grammars::{concat_with_separators, prefix_grammar, Cfg, CfgBuilder, GSym, Namer};
use crate::words::{Alphabet, Pattern, Symbol, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Literal {
    /// 1-based variable index.
    pub var: usize,
    pub positive: bool,
}

impl Literal {
    pub fn holds(&self, assignment: &[bool]) -> bool {
        assignment[self.var - 1] == self.positive
    }
}

/// A 3-CNF formula over variables `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SatInstance {
    n: usize,
    clauses: Vec<[Literal; 3]>,
}

impl SatInstance {
    pub fn new(n: usize, clauses: Vec<[Literal; 3]>) -> Result<Self> {
        if n == 0 || clauses.is_empty() {
            return domain("a formula needs at least one variable and one clause");
        }
        if clauses.iter().flatten().any(|l| l.var == 0 || l.var > n) {
            return domain("literal refers to a variable out of range");
        }
        Ok(SatInstance { n, clauses })
    }

    /// Clauses from signed 1-based integers, DIMACS style.
    pub fn from_signed(n: usize, clauses: &[[i64; 3]]) -> Result<Self> {
        let lit = |x: i64| {
            if x == 0 {
                return domain("literal 0 is not a variable");
            }
            Ok(Literal {
                var: x.unsigned_abs() as usize,
                positive: x > 0,
            })
        };
        let clauses = clauses
            .iter()
            .map(|c| Ok([lit(c[0])?, lit(c[1])?, lit(c[2])?]))
            .collect::<Result<Vec<_>>>()?;
        SatInstance::new(n, clauses)
    }

    pub fn variables(&self) -> usize {
        self.n
    }

    pub fn clauses(&self) -> &[[Literal; 3]] {
        &self.clauses
    }

    pub fn satisfied_by(&self, assignment: &[bool]) -> bool {
        assignment.len() == self.n
            && self
                .clauses
                .iter()
                .all(|c| c.iter().any(|l| l.holds(assignment)))
    }
}

pub const SAT_BRUTE_FORCE_MAX_VARS: usize = 24;

/// Exhaustive search in binary counting order, `V1` as the high bit.
pub fn sat_brute_force(phi: &SatInstance) -> Result<Option<Vec<bool>>> {
    let n = phi.n;
    if n > SAT_BRUTE_FORCE_MAX_VARS {
        return Err(Error::Resource(format!(
            "brute force is limited to {SAT_BRUTE_FORCE_MAX_VARS} variables, got {n}"
        )));
    }
    for bits in 0u64..(1u64 << n) {
        let a: Vec<bool> = (0..n).map(|i| bits >> (n - 1 - i) & 1 == 1).collect();
        if phi.satisfied_by(&a) {
            return Ok(Some(a));
        }
    }
    Ok(None)
}

/// Encodes an assignment as a word over `{0,1}`, position `i` holding `V_{i+1}`.
pub fn assignment_word(a: &[bool]) -> Word {
    a.iter()
        .map(|&b| Symbol::new(if b { "1" } else { "0" }))
        .collect()
}

pub fn assignment_from_word(w: &Word) -> Option<Vec<bool>> {
    w.iter()
        .map(|s| match s.as_str() {
            "0" => Some(false),
            "1" => Some(true),
            _ => None,
        })
        .collect()
}

/// One DFA per clause over `{0,1}`, accepting the length-`n` assignments
/// that satisfy it. States `u_0..u_n` (nothing satisfied yet) and
/// `s_1..s_n` (satisfied); `u_n` also serves as the sink, giving `2n+1`.
pub fn sat_to_clause_dfas(phi: &SatInstance) -> Vec<Dfa> {
    let n = phi.n;
    let alphabet = Alphabet::from_chars("01").unwrap();
    let u = |i: usize| i;
    let s = |i: usize| n + i;
    phi.clauses
        .iter()
        .map(|clause| {
            let mut table = vec![vec![0; 2]; 2 * n + 1];
            for i in 0..n {
                for bit in 0..2 {
                    let sat = clause.iter().any(|l| l.var == i + 1 && l.positive == (bit == 1));
                    table[u(i)][bit] = if sat { s(i + 1) } else { u(i + 1) };
                    if i > 0 {
                        table[s(i)][bit] = s(i + 1);
                    }
                }
            }
            table[u(n)] = vec![u(n); 2];
            table[s(n)] = vec![u(n); 2];
            Dfa::new(alphabet.clone(), table, u(0), [s(n)])
                .expect("clause automaton is well formed")
        })
        .collect()
}

/// Machine for `L(A1) # L(A2) # ... L(Ak) #` together with the pattern `a^k`:
/// it accepts a `k`-power exactly when the `Ai` share a word.
pub fn dfas_to_kpower_instance(dfas: &[Dfa]) -> Result<(Dfa, Pattern)> {
    let k = dfas.len();
    if k < 2 {
        return domain("the k-power reduction needs at least two automata");
    }
    let sigma = dfas[0].alphabet();
    if dfas.iter().any(|d| d.alphabet() != sigma) {
        return domain("automata must share one alphabet");
    }
    let hash = Symbol::new("#");
    if sigma.contains(&hash) {
        return domain("# must not be in the input alphabet");
    }
    let nfas: Vec<Nfa> = dfas.iter().map(Dfa::to_nfa).collect();
    if nfas.iter().any(|n| !n.is_finite()) {
        return domain("every automaton must accept a finite language");
    }
    let alphabet = sigma.union(&Alphabet::new([hash.clone()])?);
    let h = alphabet.index_of(&hash).unwrap();
    let remap: Vec<usize> = sigma
        .symbols()
        .iter()
        .map(|s| alphabet.index_of(s).unwrap())
        .collect();

    let mut transitions = Vec::new();
    let mut offset = 0;
    let mut starts = Vec::new();
    for d in dfas {
        starts.push(offset + d.start());
        offset += d.states();
    }
    // One bridge state after each component; the last one accepts.
    let bridges: Vec<usize> = (0..k).map(|i| offset + i).collect();
    let mut base = 0;
    for (i, d) in dfas.iter().enumerate() {
        for q in 0..d.states() {
            for a in 0..sigma.len() {
                transitions.push((base + q, Some(remap[a]), base + d.step(q, a)));
            }
        }
        for &f in d.accepting() {
            transitions.push((base + f, Some(h), bridges[i]));
        }
        if i + 1 < k {
            transitions.push((bridges[i], None, starts[i + 1]));
        }
        base += d.states();
    }
    let nfa = Nfa::from_indexed(
        alphabet,
        offset + k,
        [starts[0]].into(),
        [bridges[k - 1]].into(),
        transitions,
    )?;
    let pattern = Pattern::power(Symbol::new("a"), k)?;
    Ok((nfa.determinize(), pattern))
}

/// Pattern, word and single-word DFA encoding a 3-CNF formula.
#[derive(Clone, Debug)]
pub struct AngluinGadget {
    pub pattern: Pattern,
    pub word: Word,
    pub dfa: Dfa,
}

pub fn sat_to_angluin_gadget(phi: &SatInstance) -> AngluinGadget {
    let n = phi.n;
    let m = phi.clauses.len();
    let pad = 2 * n + 6 * m;
    let var = |name: String| Symbol::new(&name);
    let v = Symbol::new("v");
    let x = |i: usize| var(format!("x{i}"));
    let y = |i: usize| var(format!("y{i}"));
    let z = |j: usize| var(format!("z{j}"));
    let u = |j: usize| var(format!("u{j}"));
    let f = |l: &Literal| if l.positive { x(l.var) } else { y(l.var) };

    let mut p: Vec<Symbol> = vec![v.clone(); pad];
    for i in 1..=n {
        p.push(v.clone());
        p.extend([x(i), y(i)]);
    }
    for (j, clause) in phi.clauses.iter().enumerate() {
        p.push(v.clone());
        p.extend(clause.iter().map(f));
        p.push(z(j + 1));
    }
    for j in 1..=m {
        p.push(v.clone());
        p.extend([z(j), u(j)]);
    }
    p.push(v.clone());
    p.extend(std::iter::repeat_n(v.clone(), pad));

    let mut w = String::new();
    w.push_str(&"0".repeat(pad));
    w.push_str(&"0111".repeat(n));
    w.push_str(&"01111111".repeat(m));
    w.push_str(&"01111".repeat(m));
    w.push('0');
    w.push_str(&"0".repeat(pad));
    let word = Word::from_chars(&w);

    let dfa = Dfa::from_words(Alphabet::from_chars("01").unwrap(), [&word])
        .expect("word is over {0,1}");
    AngluinGadget {
        pattern: Pattern::new(p).expect("pattern is non-empty"),
        word,
        dfa,
    }
}

/// Pairs `(x_i, y_i)` of non-empty words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PcpInstance {
    pairs: Vec<(Word, Word)>,
}

impl PcpInstance {
    pub fn new(pairs: Vec<(Word, Word)>) -> Result<Self> {
        if pairs.is_empty() {
            return domain("a PCP instance needs at least one pair");
        }
        if pairs.iter().any(|(x, y)| x.is_empty() || y.is_empty()) {
            return domain("PCP words must be non-empty");
        }
        Ok(PcpInstance { pairs })
    }

    pub fn from_chars(pairs: &[(&str, &str)]) -> Result<Self> {
        PcpInstance::new(
            pairs
                .iter()
                .map(|(x, y)| (Word::from_chars(x), Word::from_chars(y)))
                .collect(),
        )
    }

    pub fn pairs(&self) -> &[(Word, Word)] {
        &self.pairs
    }

    /// Symbols used by the pairs, in order of first appearance.
    pub fn alphabet(&self) -> Alphabet {
        let mut seen = Vec::new();
        for s in self.pairs.iter().flat_map(|(x, y)| x.iter().chain(y.iter())) {
            if !seen.contains(s) {
                seen.push(s.clone());
            }
        }
        Alphabet::new(seen).expect("symbols are distinct")
    }

    /// Concatenations of the top and bottom words along 1-based `indices`.
    pub fn sides(&self, indices: &[usize]) -> (Word, Word) {
        let mut top = Word::empty();
        let mut bottom = Word::empty();
        for &i in indices {
            top.extend_from(&self.pairs[i - 1].0);
            bottom.extend_from(&self.pairs[i - 1].1);
        }
        (top, bottom)
    }

    pub fn is_solution(&self, indices: &[usize]) -> bool {
        !indices.is_empty()
            && indices.iter().all(|&i| (1..=self.pairs.len()).contains(&i))
            && {
                let (t, b) = self.sides(indices);
                t == b
            }
    }
}

fn index_symbol(i: usize) -> Symbol {
    Symbol::new(&format!("c{i}"))
}

struct PcpNames {
    terminals: Alphabet,
    s: Symbol,
    a: Symbol,
    b: Symbol,
}

fn pcp_names(inst: &PcpInstance) -> Result<PcpNames> {
    let sigma = inst.alphabet();
    let mut extra = vec![Symbol::new("#")];
    extra.extend((1..=inst.pairs.len()).map(index_symbol));
    if let Some(s) = extra.iter().find(|s| sigma.contains(s)) {
        return domain(format!("PCP alphabet must not contain the marker {s}"));
    }
    let terminals = sigma.union(&Alphabet::new(extra)?);
    let mut namer = Namer::default();
    namer.reserve(terminals.symbols());
    Ok(PcpNames {
        s: namer.fresh("S"),
        a: namer.fresh("A"),
        b: namer.fresh("B"),
        terminals,
    })
}

fn pcp_block_rules(b: &mut CfgBuilder, lhs: usize, next: Option<usize>, top: &Word, i: usize) {
    let mut rhs: Vec<GSym> = top.iter().map(|s| b.resolve(s)).collect();
    if let Some(n) = next {
        rhs.push(GSym::V(n));
    }
    rhs.push(b.resolve(&index_symbol(i)));
    b.production(lhs, rhs);
}

/// `S -> A # B #`, `A -> x_i A c_i | x_i c_i`, `B -> y_i B c_i | y_i c_i`.
/// The language contains a square iff the instance has a solution.
pub fn pcp_to_square_cfg(inst: &PcpInstance) -> Result<Cfg> {
    let names = pcp_names(inst)?;
    let mut b = CfgBuilder::new(names.terminals.clone());
    let s = b.var(&names.s);
    let a = b.var(&names.a);
    let bb = b.var(&names.b);
    let hash = b.resolve(&Symbol::new("#"));
    b.production(s, vec![GSym::V(a), hash, GSym::V(bb), hash]);
    for (i, (x, y)) in inst.pairs.iter().enumerate() {
        pcp_block_rules(&mut b, a, Some(a), x, i + 1);
        pcp_block_rules(&mut b, a, None, x, i + 1);
        pcp_block_rules(&mut b, bb, Some(bb), y, i + 1);
        pcp_block_rules(&mut b, bb, None, y, i + 1);
    }
    b.build(&names.s)
}

/// The same grammar with each block limited to at most `depth` index
/// symbols, by unrolling `A` and `B` into `A1..A{depth}`, `B1..B{depth}`.
/// The language is finite.
pub fn pcp_to_square_cfg_bounded(inst: &PcpInstance, depth: usize) -> Result<Cfg> {
    if depth == 0 {
        return domain("depth must be at least 1");
    }
    let names = pcp_names(inst)?;
    let mut b = CfgBuilder::new(names.terminals.clone());
    let s = b.var(&names.s);
    let level = |b: &mut CfgBuilder, base: &Symbol, d: usize| b.var(&Symbol::new(&format!("{base}{d}")));
    let top_a = level(&mut b, &names.a, depth);
    let top_b = level(&mut b, &names.b, depth);
    let hash = b.resolve(&Symbol::new("#"));
    b.production(s, vec![GSym::V(top_a), hash, GSym::V(top_b), hash]);
    for d in 1..=depth {
        let a = level(&mut b, &names.a, d);
        let bb = level(&mut b, &names.b, d);
        let below = (d > 1).then(|| (level(&mut b, &names.a, d - 1), level(&mut b, &names.b, d - 1)));
        for (i, (x, y)) in inst.pairs.iter().enumerate() {
            pcp_block_rules(&mut b, a, None, x, i + 1);
            pcp_block_rules(&mut b, bb, None, y, i + 1);
            if let Some((na, nb)) = below {
                pcp_block_rules(&mut b, a, Some(na), x, i + 1);
                pcp_block_rules(&mut b, bb, Some(nb), y, i + 1);
            }
        }
    }
    b.build(&names.s)
}

/// A square of the bounded gadget grammar, by enumerating both block
/// languages separately. A word `a # b #` has exactly two `#`, so it is a
/// square iff `a = b`; the shortest such square is returned.
pub fn pcp_bounded_square(inst: &PcpInstance, depth: usize) -> Result<Option<Word>> {
    let g = pcp_to_square_cfg_bounded(inst, depth)?;
    let block = |name: String| -> Result<BTreeSet<Word>> {
        let idx = g
            .variable_index(&Symbol::new(&name))
            .expect("block variable exists");
        let sub = g.with_start(idx)?;
        let bound = sub.length_bound()?;
        Ok(sub.enumerate(bound).into_iter().collect())
    };
    let names = pcp_names(inst)?;
    let tops = block(format!("{}{depth}", names.a))?;
    let bottoms = block(format!("{}{depth}", names.b))?;
    let hash = Word::new(vec![Symbol::new("#")]);
    let mut common: Vec<&Word> = tops.intersection(&bottoms).collect();
    common.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(common.first().map(|a| {
        let half = a.concat(&hash);
        half.concat(&half)
    }))
}

pub const PCP_MAX_INDICES: usize = 12;

/// Shortest solution with at most `max_indices` indices; ties go to the
/// lexicographically smallest index sequence.
pub fn pcp_bounded_solve(inst: &PcpInstance, max_indices: usize) -> Result<Option<Vec<usize>>> {
    if max_indices > PCP_MAX_INDICES {
        return Err(Error::Resource(format!(
            "bounded PCP search is limited to {PCP_MAX_INDICES} indices, got {max_indices}"
        )));
    }
    let mut queue: VecDeque<Vec<usize>> = VecDeque::from([Vec::new()]);
    while let Some(seq) = queue.pop_front() {
        if seq.len() == max_indices {
            continue;
        }
        for i in 1..=inst.pairs.len() {
            let mut next = seq.clone();
            next.push(i);
            let (t, b) = inst.sides(&next);
            let k = t.len().min(b.len());
            if t[..k] != b[..k] {
                continue;
            }
            if t.len() == b.len() {
                return Ok(Some(next));
            }
            queue.push_back(next);
        }
    }
    Ok(None)
}

const SQUAREFREE_MORPHISM: [&str; 3] = ["0121021201210", "1202102012021", "2010210120102"];

/// Smallest `t` with `13^t >= min_len`.
fn morphism_depth(min_len: usize) -> usize {
    let mut t = 0;
    let mut len = 1usize;
    while len < min_len {
        len = len.saturating_mul(13);
        t += 1;
    }
    t
}

/// `h^t(0)` for the squarefree uniform morphism `h`, with `t` smallest such
/// that the length `13^t` reaches `min_len`.
pub fn squarefree_word(min_len: usize) -> Result<Word> {
    if min_len == 0 {
        return domain("min_len must be at least 1");
    }
    let mut w = vec![0u8];
    for _ in 0..morphism_depth(min_len) {
        w = w
            .iter()
            .flat_map(|&d| SQUAREFREE_MORPHISM[d as usize].bytes().map(|c| c - b'0'))
            .collect();
    }
    Ok(w.iter().map(|d| Symbol::new(&d.to_string())).collect())
}

/// Straight-line grammar for [`squarefree_word`]: `H0_a -> a` and
/// `Ht_a -> H{t-1}_b1 ... H{t-1}_b13` where `h(a) = b1..b13`.
pub fn squarefree_slp_grammar(min_len: usize) -> Result<Cfg> {
    if min_len == 0 {
        return domain("min_len must be at least 1");
    }
    let depth = morphism_depth(min_len);
    let name = |t: usize, a: usize| format!("H{t}_{a}");
    let mut b = CfgBuilder::new(Alphabet::from_chars("012").unwrap());
    for a in 0..3 {
        b.rule(&name(0, a), &[&a.to_string()]);
    }
    for t in 1..=depth {
        for (a, image) in SQUAREFREE_MORPHISM.iter().enumerate() {
            let rhs: Vec<String> = image.chars().map(|c| name(t - 1, c as usize - '0' as usize)).collect();
            let rhs: Vec<&str> = rhs.iter().map(String::as_str).collect();
            b.rule(&name(t, a), &rhs);
        }
    }
    b.build(&Symbol::new(&name(depth, 0)))
}

/// Grammar for the perfect shuffles `u1 v1 u2 v2 .. ul vl` with `u` accepted
/// by `m` and `v` generated by `g`, `|u| = |v|`. Built as a product: each
/// variable of the binarized `g` is indexed by the automaton states before
/// and after the symbols of `u` interleaved with its yield.
pub fn shuffle_grammar(m: &Dfa, g: &Cfg) -> Result<Cfg> {
    let g = g.binarize();
    let sigma = m.alphabet();
    if let Some(s) = sigma.symbols().iter().find(|s| g.terminals().contains(s)) {
        return domain(format!("symbol {s} occurs in both alphabets"));
    }
    let terminals = sigma.union(g.terminals());
    let mut namer = g.namer();
    namer.reserve(terminals.symbols());
    let start = namer.fresh("S");
    let n = m.states();
    let mut b = CfgBuilder::new(terminals.clone());
    let sv = b.var(&start);
    let v = |b: &mut CfgBuilder, x: usize, p: usize, q: usize| {
        b.var(&Symbol::new(&format!("{}[{p},{q}]", g.variables()[x])))
    };
    let t = |b: &mut CfgBuilder, a: usize, p: usize, q: usize| {
        b.var(&Symbol::new(&format!("{}<{p},{q}>", g.terminals().symbol(a))))
    };
    let item = |b: &mut CfgBuilder, s: GSym, p: usize, q: usize| match s {
        GSym::V(x) => GSym::V(v(b, x, p, q)),
        GSym::T(a) => GSym::V(t(b, a, p, q)),
    };
    for p in 0..n {
        for a in 0..g.terminals().len() {
            let ta = terminals.index_of(g.terminals().symbol(a)).unwrap();
            for s in 0..sigma.len() {
                let q = m.step(p, s);
                let ts = terminals.index_of(sigma.symbol(s)).unwrap();
                let lhs = t(&mut b, a, p, q);
                b.production(lhs, vec![GSym::T(ts), GSym::T(ta)]);
            }
        }
    }
    for prod in g.productions() {
        match prod.rhs[..] {
            [] => {
                for p in 0..n {
                    let lhs = v(&mut b, prod.lhs, p, p);
                    b.production(lhs, vec![]);
                }
            }
            [s1] => {
                for p in 0..n {
                    for q in 0..n {
                        let lhs = v(&mut b, prod.lhs, p, q);
                        let r = item(&mut b, s1, p, q);
                        b.production(lhs, vec![r]);
                    }
                }
            }
            [s1, s2] => {
                for p in 0..n {
                    for r in 0..n {
                        for q in 0..n {
                            let lhs = v(&mut b, prod.lhs, p, q);
                            let x1 = item(&mut b, s1, p, r);
                            let x2 = item(&mut b, s2, r, q);
                            b.production(lhs, vec![x1, x2]);
                        }
                    }
                }
            }
            _ => unreachable!("grammar is binarized"),
        }
    }
    for &f in m.accepting() {
        let x = v(&mut b, g.start(), m.start(), f);
        b.production(sv, vec![GSym::V(x)]);
    }
    Ok(b.build(&start)?.trim())
}

/// Intermediate grammars of the k-power-factor reduction, kept for
/// inspection and testing.
#[derive(Clone, Debug)]
pub struct KPowerFactorGadget {
    /// Generates the single squarefree word of length at least `n^k`.
    pub slp: Cfg,
    /// All prefixes of that word.
    pub prefixes: Cfg,
    /// One shuffle grammar per input automaton.
    pub shuffles: Vec<Cfg>,
    /// `L(B1) # ... L(Bk) #`.
    pub grammar: Cfg,
    pub pattern: Pattern,
}

/// Finite grammar `C` and pattern `a^k` such that `C` is meant to generate
/// a word with a `k`-power factor iff the automata share a word.
pub fn dfas_to_kpower_factor_cfg(ms: &[Dfa]) -> Result<KPowerFactorGadget> {
    let k = ms.len();
    if k < 2 {
        return domain("the k-power-factor reduction needs at least two automata");
    }
    let sigma = ms[0].alphabet();
    if ms.iter().any(|m| m.alphabet() != sigma) {
        return domain("automata must share one alphabet");
    }
    let reserved: HashSet<&str> = ["0", "1", "2", "#"].into();
    if let Some(s) = sigma.symbols().iter().find(|s| reserved.contains(s.as_str())) {
        return domain(format!("input alphabet must avoid 0, 1, 2 and #, found {s}"));
    }
    let n = ms.iter().map(Dfa::states).max().unwrap_or(1);
    let len = (0..k).fold(1usize, |acc, _| acc.saturating_mul(n));
    let slp = squarefree_slp_grammar(len.max(1))?;
    let prefixes = prefix_grammar(&slp);
    let shuffles = ms
        .iter()
        .map(|m| shuffle_grammar(m, &prefixes))
        .collect::<Result<Vec<_>>>()?;
    let grammar = concat_with_separators(&shuffles, &Symbol::new("#"))?;
    Ok(KPowerFactorGadget {
        slp,
        prefixes,
        shuffles,
        grammar,
        pattern: Pattern::power(Symbol::new("a"), k)?,
    })
}
