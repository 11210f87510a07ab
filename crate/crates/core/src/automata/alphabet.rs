use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Prefix that marks symbols generated by the reductions.
pub const RESERVED_PREFIX: char = '#';

/// An event name. Two symbols are equal iff their names are equal.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Symbol(String);

impl Symbol {
    /// A user symbol: non-empty, printable, no whitespace, no `#` prefix.
    pub fn new(name: impl Into<String>) -> Result<Self> {
        let sym = Self::parse(name)?;
        if sym.is_reserved() {
            return Err(Error::ReservedSymbol(sym.0));
        }
        Ok(sym)
    }

    /// Like [`Symbol::new`] but also accepts `#`-prefixed names. Used when
    /// reading instance files, which may be the output of a reduction.
    pub fn parse(name: impl Into<String>) -> Result<Self> {
        let name = name.into();
        if name.is_empty() || name.chars().any(|c| c.is_whitespace() || c.is_control()) {
            return Err(Error::InvalidSymbol(name));
        }
        Ok(Symbol(name))
    }

    pub(crate) fn reserved(name: String) -> Self {
        debug_assert!(name.starts_with(RESERVED_PREFIX));
        Symbol(name)
    }

    pub fn name(&self) -> &str {
        &self.0
    }

    pub fn is_reserved(&self) -> bool {
        self.0.starts_with(RESERVED_PREFIX)
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// A finite set of symbols that remembers insertion order.
///
/// Every construction in the crate iterates alphabets in this order, which is
/// what makes state numbering and enumeration order reproducible.
#[derive(Clone, Default)]
pub struct Alphabet {
    symbols: Vec<Symbol>,
    index: HashMap<Symbol, usize>,
}

impl Alphabet {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn new(symbols: impl IntoIterator<Item = Symbol>) -> Result<Self> {
        let mut alphabet = Self::empty();
        for sym in symbols {
            if alphabet.contains(&sym) {
                return Err(Error::DuplicateSymbol(sym.0));
            }
            alphabet.push(sym);
        }
        Ok(alphabet)
    }

    /// Builds an alphabet of user symbols from names.
    pub fn from_names<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        Self::new(
            names
                .iter()
                .map(|n| Symbol::new(n.as_ref()))
                .collect::<Result<Vec<_>>>()?,
        )
    }

    fn push(&mut self, sym: Symbol) {
        self.index.insert(sym.clone(), self.symbols.len());
        self.symbols.push(sym);
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Symbol> {
        self.symbols.iter()
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn get(&self, i: usize) -> &Symbol {
        &self.symbols[i]
    }

    pub fn index_of(&self, sym: &Symbol) -> Option<usize> {
        self.index.get(sym).copied()
    }

    pub fn contains(&self, sym: &Symbol) -> bool {
        self.index.contains_key(sym)
    }

    pub fn is_subset_of(&self, other: &Alphabet) -> bool {
        self.symbols.iter().all(|s| other.contains(s))
    }

    /// Set equality, ignoring order.
    pub fn same_set(&self, other: &Alphabet) -> bool {
        self.len() == other.len() && self.is_subset_of(other)
    }

    /// This alphabet extended with `sym` (no-op if already present).
    pub fn with(&self, sym: Symbol) -> Alphabet {
        let mut out = self.clone();
        if !out.contains(&sym) {
            out.push(sym);
        }
        out
    }

    /// Symbols of `self` followed by the symbols of `other` not already present.
    pub fn union(&self, other: &Alphabet) -> Alphabet {
        let mut out = self.clone();
        for s in other.iter() {
            if !out.contains(s) {
                out.push(s.clone());
            }
        }
        out
    }

    /// Symbols of `self` that are not in `other`, in `self`'s order.
    pub fn difference(&self, other: &Alphabet) -> Alphabet {
        let mut out = Alphabet::empty();
        for s in self.iter().filter(|s| !other.contains(s)) {
            out.push(s.clone());
        }
        out
    }

    /// Symbols of `self` that are also in `other`, in `self`'s order.
    pub fn intersection(&self, other: &Alphabet) -> Alphabet {
        let mut out = Alphabet::empty();
        for s in self.iter().filter(|s| other.contains(s)) {
            out.push(s.clone());
        }
        out
    }

    /// A reserved symbol not in this alphabet: `base`, then `base1`, `base2`, ...
    pub fn fresh(&self, base: &str) -> Symbol {
        debug_assert!(base.starts_with(RESERVED_PREFIX));
        let mut candidate = Symbol::reserved(base.to_string());
        let mut n = 1usize;
        while self.contains(&candidate) {
            candidate = Symbol::reserved(format!("{base}{n}"));
            n += 1;
        }
        candidate
    }

    /// Orders words by length, then lexicographically by this alphabet's order.
    /// Symbols outside the alphabet sort after all members, by name.
    pub fn cmp_words(&self, a: &Word, b: &Word) -> Ordering {
        a.len().cmp(&b.len()).then_with(|| {
            for (x, y) in a.iter().zip(b.iter()) {
                let ord = match (self.index_of(x), self.index_of(y)) {
                    (Some(i), Some(j)) => i.cmp(&j),
                    (Some(_), None) => Ordering::Less,
                    (None, Some(_)) => Ordering::Greater,
                    (None, None) => x.cmp(y),
                };
                if ord != Ordering::Equal {
                    return ord;
                }
            }
            Ordering::Equal
        })
    }

    pub fn names(&self) -> Vec<String> {
        self.symbols.iter().map(|s| s.0.clone()).collect()
    }
}

impl PartialEq for Alphabet {
    fn eq(&self, other: &Self) -> bool {
        self.symbols == other.symbols
    }
}

impl Eq for Alphabet {}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.symbols.iter()).finish()
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.names().join(", "))
    }
}

impl<'a> IntoIterator for &'a Alphabet {
    type Item = &'a Symbol;
    type IntoIter = std::slice::Iter<'a, Symbol>;

    fn into_iter(self) -> Self::IntoIter {
        self.symbols.iter()
    }
}

/// A finite sequence of symbols; the empty word is ε.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Symbol>);

impl Word {
    pub fn epsilon() -> Self {
        Word(Vec::new())
    }

    pub fn new(symbols: Vec<Symbol>) -> Self {
        Word(symbols)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Symbol> {
        self.0.iter()
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }

    pub fn push(&mut self, sym: Symbol) {
        self.0.push(sym);
    }

    pub fn pop(&mut self) -> Option<Symbol> {
        self.0.pop()
    }

    /// `self · sym`.
    pub fn then(&self, sym: &Symbol) -> Word {
        let mut out = self.clone();
        out.push(sym.clone());
        out
    }

    pub fn last(&self) -> Option<&Symbol> {
        self.0.last()
    }

    /// The word without its final symbol if that symbol is `sym`.
    pub fn strip_suffix(&self, sym: &Symbol) -> Option<Word> {
        match self.0.split_last() {
            Some((last, rest)) if last == sym => Some(Word(rest.to_vec())),
            _ => None,
        }
    }

    pub fn prefixes(&self) -> impl Iterator<Item = Word> + '_ {
        (0..=self.0.len()).map(move |k| Word(self.0[..k].to_vec()))
    }

    /// Natural projection: keep exactly the symbols in `observed`.
    pub fn project(&self, observed: &Alphabet) -> Word {
        Word(self.0.iter().filter(|s| observed.contains(s)).cloned().collect())
    }

    /// Names concatenated without separator (`""` for ε).
    pub fn compact(&self) -> String {
        self.0.iter().map(Symbol::name).collect()
    }

    pub fn names(&self) -> Vec<String> {
        self.0.iter().map(|s| s.0.clone()).collect()
    }
}

/// Parses whitespace-separated symbol names; `""` and `"ε"` give the empty word.
impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "ε" {
            return Ok(Word::epsilon());
        }
        s.split_whitespace()
            .map(Symbol::parse)
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            f.write_str("ε")
        } else {
            f.write_str(&self.names().join(" "))
        }
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟨{self}⟩")
    }
}

impl FromIterator<Symbol> for Word {
    fn from_iter<T: IntoIterator<Item = Symbol>>(iter: T) -> Self {
        Word(iter.into_iter().collect())
    }
}

/// `project_word`: natural projection of a single word.
pub fn project_word(w: &Word, observed: &Alphabet) -> Word {
    w.project(observed)
}

/// An explicit finite set of words over an alphabet, kept in length-then-
/// alphabet order.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteLanguage {
    alphabet: Alphabet,
    words: Vec<Word>,
}

impl FiniteLanguage {
    pub fn new(alphabet: Alphabet, words: impl IntoIterator<Item = Word>) -> Result<Self> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for w in words {
            if let Some(bad) = w.iter().find(|s| !alphabet.contains(s)) {
                return Err(Error::UnknownSymbol(bad.0.clone()));
            }
            if seen.insert(w.clone()) {
                out.push(w);
            }
        }
        out.sort_by(|a, b| alphabet.cmp_words(a, b));
        Ok(FiniteLanguage { alphabet, words: out })
    }

    /// Convenience constructor from whitespace-separated word strings.
    pub fn parse(alphabet: &Alphabet, words: &[&str]) -> Result<Self> {
        let words = words
            .iter()
            .map(|w| w.parse::<Word>())
            .collect::<Result<Vec<_>>>()?;
        Self::new(alphabet.clone(), words)
    }

    pub fn empty(alphabet: Alphabet) -> Self {
        FiniteLanguage { alphabet, words: Vec::new() }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Word> {
        self.words.iter()
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.words
            .binary_search_by(|probe| self.alphabet.cmp_words(probe, w))
            .is_ok()
    }

    pub fn to_set(&self) -> HashSet<Word> {
        self.words.iter().cloned().collect()
    }
}

impl fmt::Debug for FiniteLanguage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.words.iter()).finish()
    }
}
