//! The subgroup T0 of G1 generated by the conjugates of the stable letter.
//! It is free on the conjugates `t^{v h}` with `v` a b-word and `h` a
//! transversal representative, so elements are reduced words over that
//! infinite alphabet. The module provides collection of G1 words into this
//! form, the kill maps deciding membership in the convex subgroups attached
//! to each conjugator, the two-sided order evaluated through the central
//! order on the surviving finite sub-alphabet, the y-endomorphisms, and their
//! inverse approximants via the Cauchy words.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::hnn;
use crate::orders::{dominant_vector_sign, scc_sign, Sign};
use crate::words::{Alphabet, Word};
use crate::{Error, Result};

use super::{ConstructionContext, G0Element};

/// A canonical conjugator: b-part arbitrary, x-part fixed under the
/// transversal. These index the free generators of T0.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LambdaElement {
    v: Word,
    h: Word,
}

impl LambdaElement {
    pub fn v(&self) -> &Word {
        &self.v
    }

    pub fn h(&self) -> &Word {
        &self.h
    }

    pub fn is_identity(&self) -> bool {
        self.v.is_identity() && self.h.is_identity()
    }
}

fn compact(w: &Word) -> String {
    if w.is_identity() {
        return "1".into();
    }
    w.to_string().replace(' ', ".")
}

impl fmt::Display for LambdaElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{};{}}}", compact(&self.v), compact(&self.h))
    }
}

/// Freely reduced word over the conjugator alphabet: runs of
/// `(conjugator, exponent)` with adjacent conjugators distinct.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct T0Word {
    runs: Vec<(Arc<LambdaElement>, i64)>,
}

impl T0Word {
    pub fn identity() -> Self {
        T0Word { runs: Vec::new() }
    }

    pub fn generator(conjugator: Arc<LambdaElement>, exp: i64) -> Self {
        Self::from_runs(vec![(conjugator, exp)])
    }

    pub fn from_runs(runs: Vec<(Arc<LambdaElement>, i64)>) -> Self {
        let mut out = T0Word { runs: Vec::with_capacity(runs.len()) };
        for (g, e) in runs {
            out.push_run(g, e);
        }
        out
    }

    fn push_run(&mut self, gen: Arc<LambdaElement>, exp: i64) {
        if exp == 0 {
            return;
        }
        match self.runs.last_mut() {
            Some((g, e)) if **g == *gen => {
                *e += exp;
                if *e == 0 {
                    self.runs.pop();
                }
            }
            _ => self.runs.push((gen, exp)),
        }
    }

    pub fn runs(&self) -> &[(Arc<LambdaElement>, i64)] {
        &self.runs
    }

    pub fn is_identity(&self) -> bool {
        self.runs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.runs.iter().map(|(_, e)| e.unsigned_abs() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.runs.is_empty()
    }

    pub fn multiply(&self, other: &T0Word) -> T0Word {
        let mut out = self.clone();
        for (g, e) in &other.runs {
            out.push_run(Arc::clone(g), *e);
        }
        out
    }

    pub fn invert(&self) -> T0Word {
        T0Word { runs: self.runs.iter().rev().map(|(g, e)| (Arc::clone(g), -e)).collect() }
    }

    pub fn power(&self, n: i64) -> T0Word {
        let base = if n < 0 { self.invert() } else { self.clone() };
        let mut out = T0Word::identity();
        for _ in 0..n.unsigned_abs() {
            out = out.multiply(&base);
        }
        out
    }

    /// Conjugation inside T0: `w^u = u^{-1} w u`.
    pub fn conjugate_t0(&self, u: &T0Word) -> T0Word {
        u.invert().multiply(self).multiply(u)
    }

    /// Distinct conjugators in order of first occurrence.
    pub fn occurring(&self) -> Vec<Arc<LambdaElement>> {
        let mut out: Vec<Arc<LambdaElement>> = Vec::new();
        for (g, _) in &self.runs {
            if !out.iter().any(|o| **o == **g) {
                out.push(Arc::clone(g));
            }
        }
        out
    }

    /// Image under the free-group endomorphism mapping each generator to the
    /// given word.
    pub fn substitute<F>(&self, mut image: F) -> Result<T0Word>
    where
        F: FnMut(&Arc<LambdaElement>) -> Result<T0Word>,
    {
        let mut out = T0Word::identity();
        for (g, e) in &self.runs {
            out = out.multiply(&image(g)?.power(*e));
        }
        Ok(out)
    }
}

impl fmt::Display for T0Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.runs.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for (g, e) in &self.runs {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            if *e == 1 {
                write!(f, "t{g}")?;
            } else {
                write!(f, "t{g}^{e}")?;
            }
        }
        Ok(())
    }
}

impl ConstructionContext {
    /// Canonicalises a G0 element into its conjugator form, pushing the
    /// x-part through the transversal.
    pub fn lambda(&self, g: &G0Element) -> Result<Arc<LambdaElement>> {
        Ok(Arc::new(LambdaElement { v: g.v.clone(), h: self.transversal(&g.w)? }))
    }

    pub fn lambda_identity(&self) -> Arc<LambdaElement> {
        Arc::new(LambdaElement {
            v: Word::identity(self.b_alphabet()),
            h: Word::identity(self.x_alphabet()),
        })
    }

    pub fn lambda_from_parts(&self, v: Word, h: Word) -> Result<Arc<LambdaElement>> {
        self.lambda(&self.g0_from_parts(v, h)?)
    }

    pub fn lambda_as_g0(&self, l: &LambdaElement) -> G0Element {
        G0Element { v: l.v.clone(), w: l.h.clone() }
    }

    /// Comparison of conjugators under the inherited right order on G0.
    pub fn cmp_lambda(&self, a: &LambdaElement, b: &LambdaElement) -> Result<Ordering> {
        self.cmp_g0_right(&self.lambda_as_g0(a), &self.lambda_as_g0(b))
    }

    fn sort_lambdas(&self, xs: &mut [Arc<LambdaElement>]) -> Result<()> {
        for i in 1..xs.len() {
            let mut j = i;
            while j > 0 && self.cmp_lambda(&xs[j - 1], &xs[j])? == Ordering::Greater {
                xs.swap(j - 1, j);
                j -= 1;
            }
        }
        Ok(())
    }

    /// Collects a G1 word with trivial G0 image into its reduced T0 form:
    /// Britton-reduce the sequence, express it as a product of conjugated
    /// stable letters using suffix products, and canonicalise every
    /// conjugator.
    pub fn t0_collect(&self, word: &Word) -> Result<T0Word> {
        let seq = self.g1_sequence(word)?;
        let spec = self.g1_spec();
        if !self.g0_is_identity(&seq.base_image(&spec)) {
            return Err(Error::NotInT0);
        }
        let reduced = hnn::britton_reduce(&seq, &spec)?;
        let mut suffix = self.g0_identity();
        let mut factors: Vec<(Arc<LambdaElement>, i64)> = Vec::new();
        for (eps, gi) in reduced.tail().iter().rev() {
            suffix = self.g0_mul(gi, &suffix)?;
            factors.push((self.lambda(&suffix)?, *eps as i64));
        }
        factors.reverse();
        Ok(T0Word::from_runs(factors))
    }

    /// Retraction killing every generator whose conjugator lies at or below
    /// `g` (`strict`: strictly below).
    pub fn kill(&self, w: &T0Word, g: &LambdaElement, strict: bool) -> Result<T0Word> {
        let mut verdicts: HashMap<*const LambdaElement, bool> = HashMap::new();
        let mut runs = Vec::new();
        for (gamma, e) in w.runs() {
            let key = Arc::as_ptr(gamma);
            let keep = match verdicts.get(&key) {
                Some(&k) => k,
                None => {
                    let cmp = self.cmp_lambda(gamma, g)?;
                    let keep = if strict { cmp != Ordering::Less } else { cmp == Ordering::Greater };
                    verdicts.insert(key, keep);
                    keep
                }
            };
            if keep {
                runs.push((Arc::clone(gamma), *e));
            }
        }
        Ok(T0Word::from_runs(runs))
    }

    /// Membership in the normal closure of the generators with conjugator at
    /// or below `g` (`strict`: strictly below): the kill image must vanish.
    pub fn cg_member(&self, w: &T0Word, g: &LambdaElement, strict: bool) -> Result<bool> {
        Ok(self.kill(w, g, strict)?.is_identity())
    }

    /// The unique conjugator `g` with `w` in the closure at `g` but not
    /// strictly below it: the smallest occurring conjugator whose kill map
    /// absorbs `w`.
    pub fn witness_g(&self, w: &T0Word) -> Result<Arc<LambdaElement>> {
        if w.is_identity() {
            return Err(Error::EmptyWord);
        }
        let mut occ = w.occurring();
        self.sort_lambdas(&mut occ)?;
        for f in &occ {
            if self.cg_member(w, f, false)? {
                debug_assert!(!self.cg_member(w, f, true)?);
                return Ok(Arc::clone(f));
            }
        }
        unreachable!("killing at the greatest occurring conjugator absorbs the word");
    }

    /// Central-order sign of a T0 word over the finite sub-alphabet of its
    /// occurring conjugators, ranked by the inherited order; layer one is
    /// decided by the greatest occurring conjugator with generators positive.
    fn t0_scc_sign(&self, w: &T0Word) -> Result<Sign> {
        if w.is_identity() {
            return Ok(Sign::Zero);
        }
        let mut occ = w.occurring();
        self.sort_lambdas(&mut occ)?;
        let index_of = |g: &LambdaElement| -> u32 {
            occ.iter().position(|o| **o == *g).expect("occurring conjugator") as u32
        };
        let names: Vec<String> = (0..occ.len()).map(|i| format!("g{i}")).collect();
        let alphabet = Alphabet::new("t0-window", names)?;
        let runs: Vec<(u32, i64)> =
            w.runs().iter().map(|(g, e)| (index_of(g), *e)).collect();
        let word = Word::from_runs(&alphabet, runs);
        let ascending = |a: u32, b: u32| a.cmp(&b);
        scc_sign(&word, self.cap(), &ascending, &|vec: &[i64]| {
            dominant_vector_sign(vec, &ascending)
        })
    }

    /// The two-sided order on T0: shift the witness conjugator to the
    /// identity, project modulo the subgroup strictly below the identity
    /// conjugator, and evaluate the central order there.
    pub fn t0_sign(&self, w: &T0Word) -> Result<Sign> {
        if w.is_identity() {
            return Ok(Sign::Zero);
        }
        let g = self.witness_g(w)?;
        let g_inv = self.g0_inv(&self.lambda_as_g0(&g))?;
        let shifted = self.t0_conjugate_g0(w, &g_inv)?;
        let identity = self.lambda_identity();
        let projected = self.kill(&shifted, &identity, true)?;
        debug_assert!(!projected.is_identity());
        self.t0_scc_sign(&projected)
    }

    /// Conjugation of a T0 word by a G0 element: right-multiplies every
    /// conjugator.
    pub fn t0_conjugate_g0(&self, w: &T0Word, a: &G0Element) -> Result<T0Word> {
        let mut runs = Vec::with_capacity(w.runs().len());
        for (gamma, e) in w.runs() {
            let moved = self.g0_mul(&self.lambda_as_g0(gamma), a)?;
            runs.push((self.lambda(&moved)?, *e));
        }
        Ok(T0Word::from_runs(runs))
    }

    /// Order on G1 through the convex subgroup T0: a nontrivial G0 image
    /// decides by the bi-invariant order there; otherwise the word collects
    /// into T0 and the order on T0 decides.
    pub fn g1_sign(&self, word: &Word) -> Result<Sign> {
        let image = self.g1_base_image(word)?;
        if !self.g0_is_identity(&image) {
            return self.g0_bi_sign(&image);
        }
        let collected = self.t0_collect(word)?;
        self.t0_sign(&collected)
    }

    /// Prepends `b_i^k` to the b-part of a conjugator. The x-part stays
    /// canonical, so no transversal pass is needed.
    fn lambda_shift_b(&self, gamma: &LambdaElement, i: usize, k: i64) -> Result<Arc<LambdaElement>> {
        let bi = Word::generator(self.b_alphabet(), i as u32, k);
        Ok(Arc::new(LambdaElement { v: bi.multiply(&gamma.v)?, h: gamma.h.clone() }))
    }

    /// The i-th y-endomorphism of T0 (0-based index into the b/y alphabets):
    /// each generator `t^g` maps to `(t^{b_i g})^{-1} t^g`.
    pub fn y_apply(&self, w: &T0Word, i: usize) -> Result<T0Word> {
        assert!(i < 2 * self.m(), "y index out of range");
        w.substitute(|gamma| {
            let lifted = self.lambda_shift_b(gamma, i, 1)?;
            Ok(T0Word::from_runs(vec![(lifted, -1), (Arc::clone(gamma), 1)]))
        })
    }

    /// The Cauchy word `t^{b_i^k g} t^{b_i^{k-1} g} ... t^{g}` approximating
    /// the preimage of `t^g` under the i-th y-endomorphism.
    pub fn cauchy_c(&self, g: &LambdaElement, i: usize, k: usize) -> Result<T0Word> {
        assert!(i < 2 * self.m(), "y index out of range");
        let mut runs = Vec::with_capacity(k + 1);
        for j in (0..=k as i64).rev() {
            runs.push((self.lambda_shift_b(g, i, j)?, 1));
        }
        Ok(T0Word::from_runs(runs))
    }

    /// Truncated inverse of the i-th y-endomorphism: substitutes every
    /// generator by its level-`k` Cauchy word.
    pub fn y_inverse_approx(&self, w: &T0Word, i: usize, k: usize) -> Result<T0Word> {
        w.substitute(|gamma| self.cauchy_c(gamma, i, k))
    }

    /// Random T0 word over a small pool of conjugators.
    pub fn sample_t0<R: rand::Rng>(&self, rng: &mut R, max_len: usize) -> Result<T0Word> {
        let mut pool = Vec::new();
        for _ in 0..4 {
            let v = crate::sampling::word_up_to(rng, self.b_alphabet(), 2);
            let h = crate::sampling::word_up_to(rng, self.x_alphabet(), 1);
            pool.push(self.lambda_from_parts(v, h)?);
        }
        let len = rng.gen_range(0..=max_len);
        let mut runs = Vec::with_capacity(len);
        for _ in 0..len {
            let g = pool[rng.gen_range(0..pool.len())].clone();
            let e: i64 = if rng.gen() { 1 } else { -1 };
            runs.push((g, e));
        }
        Ok(T0Word::from_runs(runs))
    }
}
