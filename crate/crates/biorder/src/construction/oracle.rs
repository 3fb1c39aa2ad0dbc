//! Membership oracles for the normal closure N of the relators in the free
//! group on the x-alphabet.
//!
//! Two stand-ins are provided. The abelianization oracle is total and decides
//! membership through the integer lattice spanned by the relator exponent
//! vectors; it is a correct N-oracle exactly when the normal closure equals
//! the kernel of the abelianization composed with that lattice quotient, which
//! holds for the shipped preset (all commutators). The bounded-search oracle
//! certifies `Yes` by exhibiting the word as a bounded product of bounded
//! conjugates of relators, answers `No` on abelianization evidence, and
//! otherwise reports `Unknown`.

use std::collections::HashSet;
use std::sync::Arc;

use crate::intmat;
use crate::words::{Alphabet, Word};
use crate::{Result, Tri};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleKind {
    Abelianization,
    BoundedSearch { max_factors: usize, max_conjugator_len: usize },
}

#[derive(Debug, Clone)]
pub struct NOracle {
    kind: OracleKind,
    x_alphabet: Arc<Alphabet>,
    relators: Vec<Word>,
    /// Echelon basis of the lattice spanned by relator exponent vectors.
    lattice: Vec<Vec<i128>>,
}

fn abelianization_i128(w: &Word) -> Vec<i128> {
    w.abelianization().iter().map(|&x| x as i128).collect()
}

impl NOracle {
    pub fn abelianization(x_alphabet: &Arc<Alphabet>, relators: &[Word]) -> Result<Self> {
        Self::build(OracleKind::Abelianization, x_alphabet, relators)
    }

    pub fn bounded_search(
        x_alphabet: &Arc<Alphabet>,
        relators: &[Word],
        max_factors: usize,
        max_conjugator_len: usize,
    ) -> Result<Self> {
        Self::build(
            OracleKind::BoundedSearch { max_factors, max_conjugator_len },
            x_alphabet,
            relators,
        )
    }

    fn build(kind: OracleKind, x_alphabet: &Arc<Alphabet>, relators: &[Word]) -> Result<Self> {
        let mut rows = Vec::new();
        for r in relators {
            let r = r.embed(x_alphabet)?;
            rows.push(abelianization_i128(&r));
        }
        Ok(NOracle {
            kind,
            x_alphabet: Arc::clone(x_alphabet),
            relators: relators.to_vec(),
            lattice: intmat::lattice_echelon(&rows),
        })
    }

    pub fn kind(&self) -> &OracleKind {
        &self.kind
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    /// Whether the relator lattice is trivial (every relator has exponent sum
    /// zero), as in the shipped preset.
    pub fn lattice_is_trivial(&self) -> bool {
        self.lattice.is_empty()
    }

    /// Canonical residue of an exponent vector modulo the relator lattice.
    /// Coset-equal words share a residue, so it can serve as a transversal
    /// coordinate.
    pub fn reduce_mod_lattice(&self, v: &[i64]) -> Vec<i128> {
        let mut out: Vec<i128> = v.iter().map(|&x| x as i128).collect();
        for row in &self.lattice {
            let c = row.iter().position(|&x| x != 0).expect("echelon rows are nonzero");
            if out[c] != 0 {
                let q = out[c].div_euclid(row[c]);
                for j in 0..out.len() {
                    out[j] -= q * row[j];
                }
            }
        }
        out
    }

    pub fn decide(&self, w: &Word) -> Tri {
        let vector = abelianization_i128(w);
        let in_lattice = intmat::in_lattice(&self.lattice, &vector);
        match self.kind {
            OracleKind::Abelianization => {
                if in_lattice {
                    Tri::Yes
                } else {
                    Tri::No
                }
            }
            OracleKind::BoundedSearch { max_factors, max_conjugator_len } => {
                if !in_lattice {
                    return Tri::No;
                }
                if self.search(w, max_factors, max_conjugator_len) {
                    Tri::Yes
                } else {
                    Tri::Unknown
                }
            }
        }
    }

    /// Breadth-first search for an expression of `w` as a product of at most
    /// `max_factors` conjugates `u_j^{+-1, g}` with conjugator length at most
    /// `max_conjugator_len`.
    fn search(&self, w: &Word, max_factors: usize, max_conjugator_len: usize) -> bool {
        let w = match w.embed(&self.x_alphabet) {
            Ok(w) => w,
            Err(_) => return false,
        };
        let mut moves: Vec<Word> = Vec::new();
        for g in all_words_up_to(&self.x_alphabet, max_conjugator_len) {
            for r in &self.relators {
                for s in [1i64, -1] {
                    let conj = r.power(s).conjugate(&g).expect("same alphabet");
                    if !moves.contains(&conj) {
                        moves.push(conj);
                    }
                }
            }
        }
        let max_step = moves.iter().map(Word::len).max().unwrap_or(0);
        let limit = w.len() + max_factors * max_step;
        let mut frontier: Vec<Word> = vec![Word::identity(&self.x_alphabet)];
        let mut seen: HashSet<Vec<(u32, i64)>> = HashSet::new();
        for _ in 0..max_factors {
            let mut next = Vec::new();
            for p in &frontier {
                for mv in &moves {
                    let q = p.multiply(mv).expect("same alphabet");
                    if q == w {
                        return true;
                    }
                    if q.len() <= limit && seen.insert(q.runs().to_vec()) {
                        next.push(q);
                    }
                }
            }
            frontier = next;
        }
        w.is_identity()
    }
}

/// All freely reduced words of length at most `n`, identity first.
fn all_words_up_to(alphabet: &Arc<Alphabet>, n: usize) -> Vec<Word> {
    let mut out = vec![Word::identity(alphabet)];
    let mut layer = vec![Word::identity(alphabet)];
    for _ in 0..n {
        let mut next = Vec::new();
        for w in &layer {
            for g in 0..alphabet.len() as u32 {
                for e in [1i64, -1] {
                    let cand = w.multiply(&Word::generator(alphabet, g, e)).expect("same");
                    if cand.len() == w.len() + 1 {
                        next.push(cand);
                    }
                }
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}
