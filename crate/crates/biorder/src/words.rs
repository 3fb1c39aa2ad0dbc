//! Free-group words over named alphabets: parsing, eager free reduction,
//! multiplication, inversion, conjugation, commutators, Nielsen reduction and
//! membership in finitely generated subgroups.
//!
//! Words are stored run-length encoded and always freely reduced; every
//! operation reduces its result before returning it.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::{Error, Result};

/// A finite ordered set of generator names. The order of `symbols` is total
/// and fixed; it is the order downstream modules use whenever a generator
/// ranking is needed.
#[derive(Debug, Clone)]
pub struct Alphabet {
    name: String,
    symbols: Vec<String>,
    index: HashMap<String, u32>,
}

impl PartialEq for Alphabet {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name && self.symbols == other.symbols
    }
}

impl Eq for Alphabet {}

impl Alphabet {
    pub fn new(name: impl Into<String>, symbols: Vec<String>) -> Result<Arc<Self>> {
        let name = name.into();
        let mut index = HashMap::new();
        for (i, s) in symbols.iter().enumerate() {
            if index.insert(s.clone(), i as u32).is_some() {
                return Err(Error::Presentation(format!(
                    "duplicate generator `{s}` in alphabet `{name}`"
                )));
            }
        }
        Ok(Arc::new(Alphabet { name, symbols, index }))
    }

    /// Alphabet with symbols `base1`, .., `base<n>`.
    pub fn numbered(base: &str, n: usize) -> Arc<Self> {
        let symbols = (1..=n).map(|i| format!("{base}{i}")).collect();
        Self::new(base, symbols).expect("numbered symbols are distinct")
    }

    /// Concatenation of several alphabets into one, preserving order.
    pub fn union(name: impl Into<String>, parts: &[&Arc<Alphabet>]) -> Result<Arc<Self>> {
        let mut symbols = Vec::new();
        for p in parts {
            symbols.extend(p.symbols.iter().cloned());
        }
        Self::new(name, symbols)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbol(&self, gen: u32) -> &str {
        &self.symbols[gen as usize]
    }

    pub fn index_of(&self, symbol: &str) -> Option<u32> {
        self.index.get(symbol).copied()
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }
}

/// A freely reduced word: adjacent runs carry distinct generators and no run
/// has exponent zero. The empty run list is the identity.
#[derive(Debug, Clone)]
pub struct Word {
    alphabet: Arc<Alphabet>,
    runs: Vec<(u32, i64)>,
}

impl PartialEq for Word {
    fn eq(&self, other: &Self) -> bool {
        self.runs == other.runs && self.alphabet == other.alphabet
    }
}

impl Eq for Word {}

impl std::hash::Hash for Word {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.alphabet.name.hash(state);
        self.runs.hash(state);
    }
}

impl Word {
    pub fn identity(alphabet: &Arc<Alphabet>) -> Self {
        Word { alphabet: Arc::clone(alphabet), runs: Vec::new() }
    }

    pub fn generator(alphabet: &Arc<Alphabet>, gen: u32, exp: i64) -> Self {
        Word::from_runs(alphabet, vec![(gen, exp)])
    }

    /// Builds a word from arbitrary runs, reducing them.
    pub fn from_runs(alphabet: &Arc<Alphabet>, runs: Vec<(u32, i64)>) -> Self {
        let mut w = Word { alphabet: Arc::clone(alphabet), runs: Vec::new() };
        for (g, e) in runs {
            w.push_run(g, e);
        }
        w
    }

    fn push_run(&mut self, gen: u32, exp: i64) {
        if exp == 0 {
            return;
        }
        match self.runs.last_mut() {
            Some((g, e)) if *g == gen => {
                *e += exp;
                if *e == 0 {
                    self.runs.pop();
                }
            }
            _ => self.runs.push((gen, exp)),
        }
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn runs(&self) -> &[(u32, i64)] {
        &self.runs
    }

    pub fn is_identity(&self) -> bool {
        self.runs.is_empty()
    }

    /// Reduced length: the sum of the absolute run exponents.
    pub fn len(&self) -> usize {
        self.runs.iter().map(|(_, e)| e.unsigned_abs() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.runs.is_empty()
    }

    /// First letter as `(generator, sign)`, if any.
    pub fn first_letter(&self) -> Option<(u32, i64)> {
        self.runs.first().map(|&(g, e)| (g, e.signum()))
    }

    /// Iterates the individual letters `(generator, sign)`.
    pub fn letters(&self) -> impl Iterator<Item = (u32, i8)> + '_ {
        self.runs.iter().flat_map(|&(g, e)| {
            let sign = if e > 0 { 1i8 } else { -1 };
            (0..e.unsigned_abs()).map(move |_| (g, sign))
        })
    }

    fn check_same_alphabet(&self, other: &Word) -> Result<()> {
        if self.alphabet == other.alphabet {
            Ok(())
        } else {
            Err(Error::AlphabetMismatch(
                self.alphabet.name.clone(),
                other.alphabet.name.clone(),
            ))
        }
    }

    pub fn multiply(&self, other: &Word) -> Result<Word> {
        self.check_same_alphabet(other)?;
        let mut out = self.clone();
        for &(g, e) in &other.runs {
            out.push_run(g, e);
        }
        Ok(out)
    }

    pub fn invert(&self) -> Word {
        let runs = self.runs.iter().rev().map(|&(g, e)| (g, -e)).collect();
        Word { alphabet: Arc::clone(&self.alphabet), runs }
    }

    /// `w^g = g^{-1} w g`.
    pub fn conjugate(&self, g: &Word) -> Result<Word> {
        g.invert().multiply(self)?.multiply(g)
    }

    /// `[a, b] = a^{-1} b^{-1} a b`.
    pub fn commutator(&self, other: &Word) -> Result<Word> {
        self.invert()
            .multiply(&other.invert())?
            .multiply(self)?
            .multiply(other)
    }

    pub fn power(&self, n: i64) -> Word {
        let base = if n < 0 { self.invert() } else { self.clone() };
        let mut out = Word::identity(&self.alphabet);
        for _ in 0..n.unsigned_abs() {
            out = out.multiply(&base).expect("same alphabet");
        }
        out
    }

    /// Re-expresses the word over another alphabet by symbol name.
    pub fn embed(&self, target: &Arc<Alphabet>) -> Result<Word> {
        let mut runs = Vec::with_capacity(self.runs.len());
        for &(g, e) in &self.runs {
            let sym = self.alphabet.symbol(g);
            let t = target
                .index_of(sym)
                .ok_or_else(|| Error::UnknownGenerator(sym.to_string()))?;
            runs.push((t, e));
        }
        Ok(Word::from_runs(target, runs))
    }

    /// Exponent-sum vector over the alphabet.
    pub fn abelianization(&self) -> Vec<i64> {
        let mut v = vec![0i64; self.alphabet.len()];
        for &(g, e) in &self.runs {
            v[g as usize] += e;
        }
        v
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.runs.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for &(g, e) in &self.runs {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{}", self.alphabet.symbol(g))?;
            } else {
                write!(f, "{}^{}", self.alphabet.symbol(g), e)?;
            }
        }
        Ok(())
    }
}

/// Parses whitespace-separated tokens `name` or `name^k` (`k` a nonzero
/// integer), or the literal `1` for the identity.
pub fn parse_word(text: &str, alphabet: &Arc<Alphabet>) -> Result<Word> {
    let mut runs = Vec::new();
    for token in text.split_whitespace() {
        if token == "1" {
            continue;
        }
        let (name, exp) = match token.split_once('^') {
            Some((name, exp_str)) => {
                let exp: i64 = exp_str
                    .parse()
                    .map_err(|_| Error::MalformedExponent(token.to_string()))?;
                if exp == 0 {
                    return Err(Error::MalformedExponent(token.to_string()));
                }
                (name, exp)
            }
            None => (token, 1),
        };
        let gen = alphabet
            .index_of(name)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))?;
        runs.push((gen, exp));
    }
    Ok(Word::from_runs(alphabet, runs))
}

// ---------------------------------------------------------------------------
// Nielsen reduction and subgroup membership
// ---------------------------------------------------------------------------

// Letter code `(generator, 0|1)` with positive letters sorting first.
type Letters = Vec<(u32, u8)>;

fn word_letters(w: &Word) -> Letters {
    w.letters().map(|(g, s)| (g, if s > 0 { 0 } else { 1 })).collect()
}

/// Weight used by the greedy Nielsen minimisation. Ordered first by length,
/// then by the sorted pair of the lexicographic codes of the leading halves of
/// the word and of its inverse. The pair is inversion-invariant and detects
/// same-length improvements on either end, which is what makes a local minimum
/// Nielsen-reduced.
fn nielsen_key(w: &Word) -> (usize, Letters, Letters) {
    let n = w.len();
    let half = n.div_ceil(2);
    let a: Letters = word_letters(w).into_iter().take(half).collect();
    let b: Letters = word_letters(&w.invert()).into_iter().take(half).collect();
    if a <= b {
        (n, a, b)
    } else {
        (n, b, a)
    }
}

/// Greedy Nielsen reduction: repeatedly replaces some `u_i` by `u_i u_j^{±1}`
/// or `u_j^{±1} u_i` whenever that strictly decreases its weight, dropping
/// identities as they appear. The resulting tuple is Nielsen-reduced and is a
/// free basis of the subgroup generated by the input.
pub fn nielsen_reduce(gens: &[Word]) -> Result<Vec<Word>> {
    let mut basis: Vec<Word> = Vec::new();
    for (k, g) in gens.iter().enumerate() {
        if k > 0 {
            gens[0].check_same_alphabet(g)?;
        }
        if !g.is_identity() {
            basis.push(g.clone());
        }
    }
    let mut keys: Vec<_> = basis.iter().map(nielsen_key).collect();
    'outer: loop {
        for i in 0..basis.len() {
            for j in 0..basis.len() {
                if i == j {
                    continue;
                }
                for delta in [1i64, -1] {
                    let uj = if delta == 1 { basis[j].clone() } else { basis[j].invert() };
                    for cand in [
                        basis[i].multiply(&uj).expect("same alphabet"),
                        uj.multiply(&basis[i]).expect("same alphabet"),
                    ] {
                        let key = nielsen_key(&cand);
                        if key < keys[i] {
                            if cand.is_identity() {
                                basis.remove(i);
                                keys.remove(i);
                            } else {
                                basis[i] = cand;
                                keys[i] = key;
                            }
                            continue 'outer;
                        }
                    }
                }
            }
        }
        break;
    }
    // Deterministic output: orient and sort by weight.
    for w in basis.iter_mut() {
        let inv = w.invert();
        if word_letters(&inv) < word_letters(w) {
            *w = inv;
        }
    }
    basis.sort_by(|a, b| nielsen_key(a).cmp(&nielsen_key(b)));
    debug_assert!(is_nielsen_reduced(&basis));
    Ok(basis)
}

/// Checks the Nielsen conditions: no trivial element, `l(uv) >= max(l(u), l(v))`
/// and `l(uvw) > l(u) - l(v) + l(w)` over all admissible choices from the
/// tuple and its inverses.
pub fn is_nielsen_reduced(basis: &[Word]) -> bool {
    let mut closure: Vec<Word> = Vec::new();
    for b in basis {
        if b.is_identity() {
            return false;
        }
        closure.push(b.clone());
        closure.push(b.invert());
    }
    for u in &closure {
        for v in &closure {
            let uv = u.multiply(v).expect("same alphabet");
            if uv.is_identity() {
                continue;
            }
            if uv.len() < u.len().max(v.len()) {
                return false;
            }
            for w in &closure {
                let vw = v.multiply(w).expect("same alphabet");
                if vw.is_identity() {
                    continue;
                }
                let uvw = uv.multiply(w).expect("same alphabet");
                if uvw.len() + v.len() <= u.len() + w.len() {
                    return false;
                }
            }
        }
    }
    true
}

/// Decides membership of `w` in the subgroup generated by a Nielsen-reduced
/// basis. Bounded depth-first peeling: a Nielsen-reduced expression of length
/// `k` has reduced word length at least `k`, so `l(w)` bounds the search depth,
/// and intermediate remainders never exceed `l(w)` plus one basis length.
pub fn member_of_subgroup(w: &Word, basis: &[Word]) -> Result<bool> {
    if !is_nielsen_reduced(basis) {
        return Err(Error::BasisNotReduced);
    }
    for b in basis {
        w.check_same_alphabet(b)?;
    }
    if w.is_identity() {
        return Ok(true);
    }
    let max_basis = basis.iter().map(Word::len).max().unwrap_or(0);
    let limit = w.len() + max_basis;
    let mut steps: Vec<Word> = Vec::new();
    for b in basis {
        steps.push(b.invert());
        steps.push(b.clone());
    }
    let mut best_budget: HashMap<Vec<(u32, i64)>, usize> = HashMap::new();
    fn dfs(
        z: &Word,
        budget: usize,
        steps: &[Word],
        limit: usize,
        seen: &mut HashMap<Vec<(u32, i64)>, usize>,
    ) -> bool {
        if z.is_identity() {
            return true;
        }
        if budget == 0 {
            return false;
        }
        if let Some(&b) = seen.get(z.runs()) {
            if b >= budget {
                return false;
            }
        }
        seen.insert(z.runs().to_vec(), budget);
        for s in steps {
            let next = s.multiply(z).expect("same alphabet");
            if next.len() > limit {
                continue;
            }
            let next_budget = (budget - 1).min(next.len());
            if dfs(&next, next_budget, steps, limit, seen) {
                return true;
            }
        }
        false
    }
    Ok(dfs(w, w.len(), &steps, limit, &mut best_budget))
}
