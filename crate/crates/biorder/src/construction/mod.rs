//! The specific tower built over a finitely presented quotient of a free
//! group: the semidirect product G0, its HNN extension G1 with a stable letter
//! commuting with the kernel N, the free subgroup T0 generated by conjugates
//! of the stable letter, the orders on all of them, the y-endomorphisms with
//! their inverse approximants, the generator rewriting into canonical form,
//! and the abelianized independence machinery.

mod derive;
mod g0;
mod g1;
mod gen;
mod indep;
mod oracle;
mod t0;

pub use derive::{derive_relation, verify_derivation, DerivationStep, DerivationTrace, DeriveRule};
pub use g0::G0Element;
pub use g1::G1Spec;
pub use gen::{
    evaluate_conjugate, gen_rewrite, gen_rewrite_verify, verify_trace, ConjugateProduct,
    Conjugator, GenConjugate, RewriteOutcome, RewriteRule, RewriteStep,
};
pub use indep::{abelianized_independence, det_matrix, IndependenceMatrix, IndependenceReport};
pub use oracle::{NOracle, OracleKind};
pub use t0::{LambdaElement, T0Word};

use std::cmp::Ordering;
use std::sync::Arc;

use rand::Rng;

use crate::magnus::DEFAULT_CAP;
use crate::orders::{lex_sign, lex_vector_sign, ArchimedeanWeights, Direction, Sign};
use crate::words::{Alphabet, Word};
use crate::{Error, Result, Tri};

/// Everything the tower needs, wired once: alphabets, relators, the N-oracle,
/// the transversal, archimedean weights for the b-alphabet and the degree and
/// truncation defaults. Immutable after construction; all operations are pure
/// given the context.
pub struct ConstructionContext {
    m: usize,
    x_alphabet: Arc<Alphabet>,
    b_alphabet: Arc<Alphabet>,
    y_alphabet: Arc<Alphabet>,
    /// x-alphabet, b-alphabet and the stable letter, for words in G1.
    g1_alphabet: Arc<Alphabet>,
    /// y-, b- and x-alphabet, for conjugators of the stable letter.
    conj_alphabet: Arc<Alphabet>,
    relators: Vec<Word>,
    oracle: NOracle,
    weights: ArchimedeanWeights,
    cap: usize,
    truncation_floor: usize,
}

impl ConstructionContext {
    pub fn new(
        m: usize,
        relators: Vec<Word>,
        kind: OracleKind,
        cap: usize,
        truncation_floor: usize,
    ) -> Result<Self> {
        if m == 0 {
            return Err(Error::Presentation("the x-alphabet must be nonempty".into()));
        }
        let x_alphabet = Alphabet::numbered("x", m);
        let b_alphabet = Alphabet::numbered("b", 2 * m);
        let y_alphabet = Alphabet::numbered("y", 2 * m);
        let t_alphabet = Alphabet::new("t", vec!["t".into()])?;
        let g1_alphabet = Alphabet::union("g1", &[&x_alphabet, &b_alphabet, &t_alphabet])?;
        let conj_alphabet = Alphabet::union("conj", &[&y_alphabet, &b_alphabet, &x_alphabet])?;
        let relators: Vec<Word> = relators
            .into_iter()
            .map(|r| r.embed(&x_alphabet))
            .collect::<Result<_>>()?;
        if relators.iter().any(Word::is_identity) {
            return Err(Error::Presentation("relators must be nontrivial".into()));
        }
        let oracle = match kind {
            OracleKind::Abelianization => NOracle::abelianization(&x_alphabet, &relators)?,
            OracleKind::BoundedSearch { max_factors, max_conjugator_len } => {
                NOracle::bounded_search(&x_alphabet, &relators, max_factors, max_conjugator_len)?
            }
        };
        Ok(ConstructionContext {
            m,
            weights: ArchimedeanWeights::sqrt_primes(2 * m),
            x_alphabet,
            b_alphabet,
            y_alphabet,
            g1_alphabet,
            conj_alphabet,
            relators,
            oracle,
            cap,
            truncation_floor,
        })
    }

    /// The fully decidable preset: relators all commutators `[x_i, x_j]`
    /// (i < j), so the quotient is free abelian of rank m and the
    /// abelianization oracle is exact.
    pub fn abelian(m: usize) -> Result<Self> {
        let x_alphabet = Alphabet::numbered("x", m);
        let mut relators = Vec::new();
        for i in 0..m as u32 {
            for j in i + 1..m as u32 {
                let xi = Word::generator(&x_alphabet, i, 1);
                let xj = Word::generator(&x_alphabet, j, 1);
                relators.push(xi.commutator(&xj)?);
            }
        }
        Self::new(m, relators, OracleKind::Abelianization, DEFAULT_CAP, 8)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn x_alphabet(&self) -> &Arc<Alphabet> {
        &self.x_alphabet
    }

    pub fn b_alphabet(&self) -> &Arc<Alphabet> {
        &self.b_alphabet
    }

    pub fn y_alphabet(&self) -> &Arc<Alphabet> {
        &self.y_alphabet
    }

    pub fn g1_alphabet(&self) -> &Arc<Alphabet> {
        &self.g1_alphabet
    }

    pub fn conj_alphabet(&self) -> &Arc<Alphabet> {
        &self.conj_alphabet
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn oracle(&self) -> &NOracle {
        &self.oracle
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn truncation_floor(&self) -> usize {
        self.truncation_floor
    }

    /// The primes whose square roots weight the b-generators.
    pub fn b_weight_primes(&self) -> &[u64] {
        self.weights.primes()
    }

    pub fn with_cap(mut self, cap: usize) -> Self {
        self.cap = cap;
        self
    }

    pub fn with_truncation_floor(mut self, floor: usize) -> Self {
        self.truncation_floor = floor;
        self
    }

    /// Membership of an x-word in the normal closure N of the relators.
    pub fn n_member(&self, w: &Word) -> Tri {
        self.oracle.decide(w)
    }

    /// Canonical coset representative of an x-word: the sorted power word
    /// `x1^{a1} .. xm^{am}` built from the residue of the exponent vector
    /// modulo the relator lattice. The identity maps to the identity, and
    /// coset-equal words share a representative. Oracles that cannot certify
    /// the representative refuse.
    pub fn transversal(&self, w: &Word) -> Result<Word> {
        let w = w.embed(&self.x_alphabet)?;
        let residue = self.oracle.reduce_mod_lattice(&w.abelianization());
        let mut runs = Vec::new();
        for (i, &a) in residue.iter().enumerate() {
            if a != 0 {
                runs.push((i as u32, a as i64));
            }
        }
        let rep = Word::from_runs(&self.x_alphabet, runs);
        match self.oracle.kind() {
            OracleKind::Abelianization if self.oracle.lattice_is_trivial() => Ok(rep),
            _ => {
                // Certify the representative before trusting it.
                let delta = w.multiply(&rep.invert())?;
                match self.oracle.decide(&delta) {
                    Tri::Yes => Ok(rep),
                    Tri::No | Tri::Unknown => Err(Error::OracleUnknown),
                }
            }
        }
    }

    // -- generator orders ---------------------------------------------------

    /// Generator ranking used on the b-alphabet: consistent with the
    /// archimedean layer, where a larger prime weight sits further below the
    /// identity, so b1 is the greatest generator.
    pub fn b_gen_order(&self) -> impl Fn(u32, u32) -> Ordering {
        |a, b| b.cmp(&a)
    }

    /// Generator ranking on the x-alphabet: x1 greatest, matching the
    /// lexicographic layer-one order where x1 dominates.
    pub fn x_gen_order(&self) -> impl Fn(u32, u32) -> Ordering {
        |a, b| b.cmp(&a)
    }

    // -- sign functions -----------------------------------------------------

    /// Standard central order on the free group over the b-alphabet: layer
    /// one archimedean with every generator below the identity, higher layers
    /// by s-monomial ranking.
    pub fn fb_sign(&self, v: &Word) -> Result<Sign> {
        let v =
            if v.alphabet() == &self.b_alphabet { v.clone() } else { v.embed(&self.b_alphabet)? };
        crate::orders::scc_sign(&v, self.cap, &self.b_gen_order(), &|vec: &[i64]| {
            self.weights.sign(vec, Direction::ValueNegative)
        })
    }

    /// Standard central order on the free group over the x-alphabet with the
    /// lexicographic abelianization layer. Bi-invariant, and invariant under
    /// the b-action, which is by inner automorphisms.
    pub fn fx_scc_sign(&self, w: &Word) -> Result<Sign> {
        let w =
            if w.alphabet() == &self.x_alphabet { w.clone() } else { w.embed(&self.x_alphabet)? };
        crate::orders::scc_sign(&w, self.cap, &self.x_gen_order(), &lex_vector_sign)
    }

    /// Right order on the quotient of the free x-group by N, evaluated on
    /// coset images. Only the free abelian preset is decidable; anything else
    /// refuses.
    pub fn hat_sign(&self, w: &Word) -> Result<Sign> {
        let w =
            if w.alphabet() == &self.x_alphabet { w.clone() } else { w.embed(&self.x_alphabet)? };
        match self.oracle.kind() {
            OracleKind::Abelianization if self.oracle.lattice_is_trivial() => {
                Ok(lex_vector_sign(&w.abelianization()))
            }
            _ => match self.oracle.decide(&w) {
                Tri::Yes => Ok(Sign::Zero),
                Tri::No | Tri::Unknown => Err(Error::OracleUnknown),
            },
        }
    }

    /// Right order on the free x-group: quotient order first, kernel elements
    /// by the central order.
    pub fn fx_right_sign(&self, w: &Word) -> Result<Sign> {
        let w =
            if w.alphabet() == &self.x_alphabet { w.clone() } else { w.embed(&self.x_alphabet)? };
        let eval = crate::orders::fx_right_sign(
            |f: &Word| self.hat_sign(f),
            |f: &Word| self.n_member(f),
            |f: &Word| self.fx_scc_sign(f),
        );
        eval(&w)
    }

    /// The right order on G0: the b-part decides unless trivial, then the
    /// right order on the x-part.
    pub fn g0_right_sign(&self, g: &G0Element) -> Result<Sign> {
        Ok(lex_sign(self.fb_sign(&g.v)?, self.fx_right_sign(&g.w)?))
    }

    /// The bi-invariant order on G0: the b-part decides unless trivial, then
    /// the conjugation-invariant central order on the x-part.
    pub fn g0_bi_sign(&self, g: &G0Element) -> Result<Sign> {
        Ok(lex_sign(self.fb_sign(&g.v)?, self.fx_scc_sign(&g.w)?))
    }

    /// Comparison under the right order: `Less` when `a` sits below `b`,
    /// i.e. `b a^{-1}` is positive.
    pub fn cmp_g0_right(&self, a: &G0Element, b: &G0Element) -> Result<Ordering> {
        let diff = self.g0_mul(b, &self.g0_inv(a)?)?;
        Ok(match self.g0_right_sign(&diff)? {
            Sign::Positive => Ordering::Less,
            Sign::Zero => Ordering::Equal,
            Sign::Negative => Ordering::Greater,
        })
    }

    // -- sampling -----------------------------------------------------------

    pub fn sample_g0<R: Rng>(&self, rng: &mut R, max_len: usize) -> G0Element {
        G0Element {
            v: crate::sampling::word_up_to(rng, &self.b_alphabet, max_len),
            w: crate::sampling::word_up_to(rng, &self.x_alphabet, max_len),
        }
    }
}
