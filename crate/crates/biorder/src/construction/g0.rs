//! Arithmetic of the base group G0, a semidirect product of the free group on
//! the x-alphabet by the free group on the b-alphabet: `b_j` acts on x-words
//! as conjugation by `x_j`, and `b_{m+j}` as conjugation by `x_j^{-1}`
//! (indices 1..=m).

use crate::words::Word;
use crate::{Error, Result};

use super::ConstructionContext;

/// Element of G0 stored in normal form: a b-word followed by an x-word, both
/// freely reduced.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct G0Element {
    pub v: Word,
    pub w: Word,
}

impl std::fmt::Display for G0Element {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}; {})", self.v, self.w)
    }
}

impl ConstructionContext {
    pub fn g0_identity(&self) -> G0Element {
        G0Element {
            v: Word::identity(self.b_alphabet()),
            w: Word::identity(self.x_alphabet()),
        }
    }

    pub fn g0_from_parts(&self, v: Word, w: Word) -> Result<G0Element> {
        if v.alphabet() != self.b_alphabet() || w.alphabet() != self.x_alphabet() {
            return Err(Error::RankMismatch(
                "G0 components must use the b- and x-alphabets of the context".into(),
            ));
        }
        Ok(G0Element { v, w })
    }

    /// Applies a b-word to an x-word letterwise, leftmost letter first.
    pub fn g0_act_b(&self, w: &Word, v: &Word) -> Result<Word> {
        if w.alphabet() != self.x_alphabet() || v.alphabet() != self.b_alphabet() {
            return Err(Error::RankMismatch(
                "action arguments must use the x- and b-alphabets".into(),
            ));
        }
        let m = self.m() as u32;
        let mut out = w.clone();
        for (j, sign) in v.letters() {
            // b_j conjugates by x_j, b_{m+j} by x_j^{-1}; an inverse letter
            // conjugates by the inverse.
            let (x_index, x_sign) = if j < m { (j, 1i64) } else { (j - m, -1) };
            let exp = x_sign * sign as i64;
            let conj = Word::generator(self.x_alphabet(), x_index, exp);
            out = out.conjugate(&conj)?;
        }
        Ok(out)
    }

    /// `(v1, w1) (v2, w2) = (v1 v2, (w1 acted by v2) w2)`.
    pub fn g0_mul(&self, a: &G0Element, b: &G0Element) -> Result<G0Element> {
        Ok(G0Element {
            v: a.v.multiply(&b.v)?,
            w: self.g0_act_b(&a.w, &b.v)?.multiply(&b.w)?,
        })
    }

    pub fn g0_inv(&self, a: &G0Element) -> Result<G0Element> {
        let v_inv = a.v.invert();
        Ok(G0Element { w: self.g0_act_b(&a.w.invert(), &v_inv)?, v: v_inv })
    }

    pub fn g0_conjugate(&self, a: &G0Element, c: &G0Element) -> Result<G0Element> {
        let ci = self.g0_inv(c)?;
        self.g0_mul(&self.g0_mul(&ci, a)?, c)
    }

    pub fn g0_is_identity(&self, a: &G0Element) -> bool {
        a.v.is_identity() && a.w.is_identity()
    }
}

#[cfg(test)]
mod tests {
    use super::super::ConstructionContext;
    use crate::words::parse_word;

    #[test]
    fn action_matches_defining_relations() {
        let ctx = ConstructionContext::abelian(2).unwrap();
        let x = |s: &str| parse_word(s, ctx.x_alphabet()).unwrap();
        let b = |s: &str| parse_word(s, ctx.b_alphabet()).unwrap();
        // x1 acted by b1 is x1^{x1} = x1.
        assert_eq!(ctx.g0_act_b(&x("x1"), &b("b1")).unwrap(), x("x1"));
        // x2 acted by b1 is x1^-1 x2 x1.
        assert_eq!(ctx.g0_act_b(&x("x2"), &b("b1")).unwrap(), x("x1^-1 x2 x1"));
        // x2 acted by b3 = b_{m+1} is x1 x2 x1^-1.
        assert_eq!(ctx.g0_act_b(&x("x2"), &b("b3")).unwrap(), x("x1 x2 x1^-1"));
        // b1 b3 acts trivially: the conjugations cancel.
        assert_eq!(ctx.g0_act_b(&x("x2"), &b("b1 b3")).unwrap(), x("x2"));
        // Inverse letters conjugate by the inverse.
        assert_eq!(ctx.g0_act_b(&x("x2"), &b("b1^-1")).unwrap(), x("x1 x2 x1^-1"));
    }

    #[test]
    fn group_axioms_on_samples() {
        let ctx = ConstructionContext::abelian(2).unwrap();
        let mut rng = crate::sampling::rng(3);
        for _ in 0..60 {
            let a = ctx.sample_g0(&mut rng, 4);
            let b = ctx.sample_g0(&mut rng, 4);
            let c = ctx.sample_g0(&mut rng, 4);
            let ab_c = ctx.g0_mul(&ctx.g0_mul(&a, &b).unwrap(), &c).unwrap();
            let a_bc = ctx.g0_mul(&a, &ctx.g0_mul(&b, &c).unwrap()).unwrap();
            assert_eq!(ab_c, a_bc);
            let e = ctx.g0_mul(&a, &ctx.g0_inv(&a).unwrap()).unwrap();
            assert!(ctx.g0_is_identity(&e));
        }
    }

    #[test]
    fn action_is_a_homomorphism_in_both_arguments() {
        let ctx = ConstructionContext::abelian(2).unwrap();
        let mut rng = crate::sampling::rng(9);
        for _ in 0..40 {
            let w1 = crate::sampling::word_up_to(&mut rng, ctx.x_alphabet(), 5);
            let w2 = crate::sampling::word_up_to(&mut rng, ctx.x_alphabet(), 5);
            let v1 = crate::sampling::word_up_to(&mut rng, ctx.b_alphabet(), 4);
            let v2 = crate::sampling::word_up_to(&mut rng, ctx.b_alphabet(), 4);
            // (w1 w2)^v = w1^v w2^v
            let lhs = ctx.g0_act_b(&w1.multiply(&w2).unwrap(), &v1).unwrap();
            let rhs = ctx
                .g0_act_b(&w1, &v1)
                .unwrap()
                .multiply(&ctx.g0_act_b(&w2, &v1).unwrap())
                .unwrap();
            assert_eq!(lhs, rhs);
            // w^(v1 v2) = (w^v1)^v2
            let lhs = ctx.g0_act_b(&w1, &v1.multiply(&v2).unwrap()).unwrap();
            let rhs = ctx.g0_act_b(&ctx.g0_act_b(&w1, &v1).unwrap(), &v2).unwrap();
            assert_eq!(lhs, rhs);
        }
    }
}
