//! Derivation of the infinite relation family `[t, u_j^w] = 1` from the
//! finite presentation: conjugating `[t, u_j^v] = 1` by a y-generator and then
//! by the inverse of the matching b-generator extends the conjugator `v` by
//! one x-letter. A trace records one step per letter and a replayer checks
//! every step formally.

use crate::words::Word;
use crate::{Error, Result};

use super::ConstructionContext;

/// Names of the finite defining relation families a step may cite.
pub const REL_BASE_ACTION: &str = "x-under-b-action";
pub const REL_XY_COMMUTE: &str = "x-y-commutation";
pub const REL_BY_COMMUTE: &str = "b-y-commutation";
pub const REL_Y_TWIST: &str = "stable-letter-y-twist";
pub const REL_AXIOM: &str = "stable-letter-commutes-with-relator";

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DeriveRule {
    /// The finite relation `[t, u_j] = 1` itself.
    Axiom,
    /// Conjugation by `y_{i+1}` then `b_{i+1}^-1` (0-based `y_index` = i),
    /// extending the conjugator by one x-letter.
    ExtendByLetter { y_index: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivationStep {
    pub rule: DeriveRule,
    /// Conjugator established after this step.
    pub conjugator: Word,
    /// Relation families the step uses.
    pub uses: Vec<&'static str>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivationTrace {
    pub relator_index: usize,
    pub target: Word,
    pub steps: Vec<DerivationStep>,
}

impl ConstructionContext {
    /// The y-index whose conjugation pair appends the given x-letter: the
    /// first m indices append inverse letters, the next m positive ones.
    fn y_index_for_letter(&self, x_index: u32, sign: i8) -> usize {
        if sign < 0 {
            x_index as usize
        } else {
            x_index as usize + self.m()
        }
    }
}

/// Produces the step list deriving `[t, u_j^w] = 1` from the finite
/// relations, one step per letter of `w`.
pub fn derive_relation(
    ctx: &ConstructionContext,
    relator_index: usize,
    w: &Word,
) -> Result<DerivationTrace> {
    if relator_index >= ctx.relators().len() {
        return Err(Error::Presentation(format!(
            "relator index {relator_index} out of range"
        )));
    }
    let w = w.embed(ctx.x_alphabet())?;
    let mut steps = vec![DerivationStep {
        rule: DeriveRule::Axiom,
        conjugator: Word::identity(ctx.x_alphabet()),
        uses: vec![REL_AXIOM],
    }];
    let mut v = Word::identity(ctx.x_alphabet());
    for (g, sign) in w.letters() {
        v = v.multiply(&Word::generator(ctx.x_alphabet(), g, sign as i64))?;
        steps.push(DerivationStep {
            rule: DeriveRule::ExtendByLetter { y_index: ctx.y_index_for_letter(g, sign) },
            conjugator: v.clone(),
            uses: vec![REL_Y_TWIST, REL_BY_COMMUTE, REL_XY_COMMUTE, REL_BASE_ACTION],
        });
    }
    Ok(DerivationTrace { relator_index, target: w, steps })
}

/// Replays a trace: the first step must be the axiom with trivial
/// conjugator, every extension step must append exactly the x-letter its
/// y-index encodes, and the final conjugator must be the target. As a
/// semantic cross-check, each established commutation is confirmed in G1.
pub fn verify_derivation(ctx: &ConstructionContext, trace: &DerivationTrace) -> Result<bool> {
    if trace.relator_index >= ctx.relators().len() {
        return Ok(false);
    }
    let Some(first) = trace.steps.first() else {
        return Ok(false);
    };
    if first.rule != DeriveRule::Axiom || !first.conjugator.is_identity() {
        return Ok(false);
    }
    let mut v = Word::identity(ctx.x_alphabet());
    for step in &trace.steps[1..] {
        let DeriveRule::ExtendByLetter { y_index } = step.rule else {
            return Ok(false);
        };
        if y_index >= 2 * ctx.m() {
            return Ok(false);
        }
        // Recover the appended letter from the y-index.
        let (x_index, sign) = if y_index < ctx.m() {
            (y_index as u32, -1i64)
        } else {
            ((y_index - ctx.m()) as u32, 1)
        };
        v = v.multiply(&Word::generator(ctx.x_alphabet(), x_index, sign))?;
        if step.conjugator != v {
            return Ok(false);
        }
    }
    if v != trace.target {
        return Ok(false);
    }
    // Semantic cross-check of the derived relation.
    let relator = ctx.relators()[trace.relator_index].clone();
    let conjugated = relator.conjugate(&trace.target)?;
    ctx.t_commutes_with(&conjugated)
}
