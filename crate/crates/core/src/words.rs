//! Symbols, words, patterns and non-erasing morphisms.
//!
//! Symbols are atomic tokens rather than characters, so alphabets such as
//! `{#, c1, c2}` need no escaping. The textual form of a word separates
//! symbols with single spaces; the empty word prints as an empty string.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::Deref;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{domain, Error, Result};

/// An atomic symbol token. Non-empty, no whitespace.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Symbol(Arc<str>);

impl Symbol {
    /// Builds a symbol from a token known to be valid.
    ///
    /// Panics if `token` is empty or contains whitespace; use `str::parse`
    /// for untrusted input.
    pub fn new(token: &str) -> Self {
        token.parse().unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl FromStr for Symbol {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.is_empty() {
            return domain("empty symbol token");
        }
        if s.chars().any(char::is_whitespace) {
            return domain(format!("symbol token {s:?} contains whitespace"));
        }
        Ok(Symbol(Arc::from(s)))
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// An ordered, non-empty set of distinct symbols. The order fixes the
/// lexicographic order used by every enumeration in the crate.
#[derive(Clone, PartialEq, Eq)]
pub struct Alphabet {
    symbols: Vec<Symbol>,
    index: HashMap<Symbol, usize>,
}

impl Alphabet {
    pub fn new(symbols: impl IntoIterator<Item = Symbol>) -> Result<Self> {
        let symbols: Vec<Symbol> = symbols.into_iter().collect();
        if symbols.is_empty() {
            return domain("alphabet must be non-empty");
        }
        let mut index = HashMap::with_capacity(symbols.len());
        for (i, s) in symbols.iter().enumerate() {
            if index.insert(s.clone(), i).is_some() {
                return domain(format!("duplicate symbol {s} in alphabet"));
            }
        }
        Ok(Alphabet { symbols, index })
    }

    /// Alphabet of single-character symbols, e.g. `Alphabet::from_chars("01")`.
    pub fn from_chars(chars: &str) -> Result<Self> {
        let syms = chars
            .chars()
            .map(|c| c.to_string().parse())
            .collect::<Result<Vec<Symbol>>>()?;
        Alphabet::new(syms)
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn index_of(&self, s: &Symbol) -> Option<usize> {
        self.index.get(s).copied()
    }

    pub fn contains(&self, s: &Symbol) -> bool {
        self.index.contains_key(s)
    }

    pub fn symbol(&self, i: usize) -> &Symbol {
        &self.symbols[i]
    }

    /// Maps a word to symbol indices, failing on the first foreign symbol.
    pub fn encode(&self, w: &Word) -> Result<Vec<usize>> {
        w.iter()
            .map(|s| {
                self.index_of(s)
                    .ok_or_else(|| Error::Domain(format!("symbol {s} is not in the alphabet")))
            })
            .collect()
    }

    pub fn decode(&self, idx: &[usize]) -> Word {
        Word(idx.iter().map(|&i| self.symbols[i].clone()).collect())
    }

    /// Symbols of `self` followed by the symbols of `other` not already present.
    pub fn union(&self, other: &Alphabet) -> Alphabet {
        let mut symbols = self.symbols.clone();
        symbols.extend(other.symbols.iter().filter(|s| !self.contains(s)).cloned());
        Alphabet::new(symbols).expect("union of alphabets is duplicate-free")
    }
}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(&self.symbols).finish()
    }
}

/// A finite sequence of symbols; the empty word is `Word::default()`.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Symbol>);

impl Word {
    pub fn new(symbols: Vec<Symbol>) -> Self {
        Word(symbols)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    /// One symbol per character: `Word::from_chars("0101")`.
    pub fn from_chars(s: &str) -> Self {
        Word(s.chars().map(|c| Symbol::new(&c.to_string())).collect())
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }

    pub fn into_symbols(self) -> Vec<Symbol> {
        self.0
    }

    pub fn push(&mut self, s: Symbol) {
        self.0.push(s);
    }

    pub fn extend_from(&mut self, other: &Word) {
        self.0.extend_from_slice(&other.0);
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut out = self.clone();
        out.extend_from(other);
        out
    }

    pub fn repeat(&self, k: usize) -> Word {
        Word((0..k).flat_map(|_| self.0.iter().cloned()).collect())
    }

    pub fn factor(&self, start: usize, len: usize) -> Word {
        Word(self.0[start..start + len].to_vec())
    }
}

impl Deref for Word {
    type Target = [Symbol];

    fn deref(&self) -> &[Symbol] {
        &self.0
    }
}

impl FromIterator<Symbol> for Word {
    fn from_iter<I: IntoIterator<Item = Symbol>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.split_whitespace().map(str::parse).collect()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{self}\"")
    }
}

/// A non-empty word over pattern variables.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Pattern(Vec<Symbol>);

impl Pattern {
    pub fn new(variables: Vec<Symbol>) -> Result<Self> {
        if variables.is_empty() {
            return domain("a pattern must be non-empty");
        }
        Ok(Pattern(variables))
    }

    /// One variable per character: `Pattern::from_chars("aba")`.
    pub fn from_chars(s: &str) -> Result<Self> {
        Pattern::new(Word::from_chars(s).into_symbols())
    }

    /// The pattern `var^k`.
    pub fn power(var: Symbol, k: usize) -> Result<Self> {
        Pattern::new(vec![var; k])
    }

    pub fn variables(&self) -> &[Symbol] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Distinct variables in order of first occurrence.
    pub fn distinct(&self) -> Vec<Symbol> {
        let mut seen = Vec::new();
        for v in &self.0 {
            if !seen.contains(v) {
                seen.push(v.clone());
            }
        }
        seen
    }

    pub fn concat(&self, other: &Pattern) -> Pattern {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Pattern(v)
    }
}

impl FromStr for Pattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let w: Word = s.parse()?;
        Pattern::new(w.into_symbols())
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", Word(self.0.clone()))
    }
}

impl fmt::Debug for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Pattern({self})")
    }
}

/// A non-erasing morphism from pattern variables to words.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct Morphism(BTreeMap<Symbol, Word>);

impl Morphism {
    pub fn new() -> Self {
        Morphism::default()
    }

    /// Binds `var` to `image`; the empty image is rejected.
    pub fn bind(&mut self, var: Symbol, image: Word) -> Result<()> {
        if image.is_empty() {
            return domain(format!("image of {var} must be non-empty"));
        }
        self.0.insert(var, image);
        Ok(())
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (Symbol, Word)>) -> Result<Self> {
        let mut h = Morphism::new();
        for (v, w) in pairs {
            h.bind(v, w)?;
        }
        Ok(h)
    }

    pub fn image(&self, var: &Symbol) -> Option<&Word> {
        self.0.get(var)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Symbol, &Word)> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for Morphism {
    /// One `var = image` line per binding.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (v, w) in &self.0 {
            writeln!(f, "{v} = {w}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.0.iter()).finish()
    }
}

/// `h(p)`: the images of the pattern's variables concatenated in order.
pub fn apply_morphism(h: &Morphism, p: &Pattern) -> Result<Word> {
    let mut out = Word::empty();
    for v in p.variables() {
        match h.image(v) {
            Some(img) => out.extend_from(img),
            None => return domain(format!("morphism has no image for variable {v}")),
        }
    }
    Ok(out)
}

/// Returns the root `x` with `w = x^k`, if there is one.
pub fn is_k_power(w: &Word, k: usize) -> Result<Option<Word>> {
    if k < 2 {
        return domain(format!("k-power test needs k >= 2, got {k}"));
    }
    if w.is_empty() || !w.len().is_multiple_of(k) {
        return Ok(None);
    }
    let r = w.len() / k;
    let root = &w[..r];
    if w.chunks(r).all(|c| c == root) {
        Ok(Some(Word(root.to_vec())))
    } else {
        Ok(None)
    }
}

/// Leftmost, then shortest, non-empty square factor as `(start, length)`.
/// `None` iff `w` is squarefree.
pub fn shortest_square_factor(w: &Word) -> Option<(usize, usize)> {
    let n = w.len();
    for start in 0..n {
        for half in 1..=(n - start) / 2 {
            if w[start..start + half] == w[start + half..start + 2 * half] {
                return Some((start, 2 * half));
            }
        }
    }
    None
}
