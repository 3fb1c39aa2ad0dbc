//! The HNN extension G1 of G0: a stable letter commuting with every element
//! of the kernel N, i.e. both associated subgroups are N and the isomorphism
//! is the identity. N is normal in G0 (it is normalised by the b-action), so
//! one representative function, through the transversal, serves both sides.

use crate::hnn::{self, HnnSequence, HnnSpec};
use crate::words::Word;
use crate::{Error, Result, Tri};

use super::{ConstructionContext, G0Element};

/// HNN wiring for G1 over a construction context.
pub struct G1Spec<'a> {
    ctx: &'a ConstructionContext,
}

impl ConstructionContext {
    pub fn g1_spec(&self) -> G1Spec<'_> {
        G1Spec { ctx: self }
    }
}

impl<'a> HnnSpec for G1Spec<'a> {
    type Elt = G0Element;

    fn identity(&self) -> G0Element {
        self.ctx.g0_identity()
    }

    fn multiply(&self, a: &G0Element, b: &G0Element) -> G0Element {
        self.ctx.g0_mul(a, b).expect("context-owned elements share alphabets")
    }

    fn invert(&self, a: &G0Element) -> G0Element {
        self.ctx.g0_inv(a).expect("context-owned elements share alphabets")
    }

    fn in_a(&self, g: &G0Element) -> Tri {
        if !g.v.is_identity() {
            return Tri::No;
        }
        self.ctx.n_member(&g.w)
    }

    fn in_b(&self, g: &G0Element) -> Tri {
        self.in_a(g)
    }

    fn rep_a(&self, g: &G0Element) -> Result<G0Element> {
        // N (v, w) = { (v, n w) : n in N }, so the representative keeps the
        // b-part and canonicalises the x-part through the transversal.
        Ok(G0Element { v: g.v.clone(), w: self.ctx.transversal(&g.w)? })
    }

    fn rep_b(&self, g: &G0Element) -> Result<G0Element> {
        self.rep_a(g)
    }

    fn phi(&self, a: &G0Element) -> G0Element {
        a.clone()
    }

    fn phi_inv(&self, b: &G0Element) -> G0Element {
        b.clone()
    }
}

impl ConstructionContext {
    /// Splits a word over the combined alphabet (x-, b-generators and the
    /// stable letter) into an alternating HNN sequence over G0.
    pub fn g1_sequence(&self, word: &Word) -> Result<HnnSequence<G0Element>> {
        let word = word.embed(self.g1_alphabet())?;
        let m = self.m() as u32;
        let t_index = 3 * m;
        let spec = self.g1_spec();
        let mut seq = HnnSequence::base(self.g0_identity());
        for (g, sign) in word.letters() {
            if g == t_index {
                seq.push(sign, self.g0_identity());
            } else {
                let elt = if g < m {
                    G0Element {
                        v: Word::identity(self.b_alphabet()),
                        w: Word::generator(self.x_alphabet(), g, sign as i64),
                    }
                } else {
                    G0Element {
                        v: Word::generator(self.b_alphabet(), g - m, sign as i64),
                        w: Word::identity(self.x_alphabet()),
                    }
                };
                seq.extend_base(&spec, &elt);
            }
        }
        Ok(seq)
    }

    /// Image of a G1 word under the retraction killing the stable letter.
    pub fn g1_base_image(&self, word: &Word) -> Result<G0Element> {
        let seq = self.g1_sequence(word)?;
        Ok(seq.base_image(&self.g1_spec()))
    }

    /// Whether a word over the combined alphabet represents the identity of
    /// G1, by Britton reduction.
    pub fn g1_is_trivial(&self, word: &Word) -> Result<bool> {
        let seq = self.g1_sequence(word)?;
        hnn::is_trivial(&seq, &self.g1_spec())
    }

    /// Whether the stable letter commutes with an x-word in G1. Equivalent to
    /// N-membership of the word; this is the word-problem reduction the
    /// construction is built around.
    pub fn t_commutes_with(&self, w: &Word) -> Result<bool> {
        let w = w.embed(self.x_alphabet())?;
        let t = Word::generator(self.g1_alphabet(), 3 * self.m() as u32, 1);
        let comm = t.commutator(&w.embed(self.g1_alphabet())?)?;
        self.g1_is_trivial(&comm)
    }
}
