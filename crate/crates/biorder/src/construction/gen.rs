//! Rewriting of conjugated stable letters into the canonical generating form:
//! a conjugator `alpha(y) v(b) h(x)` is acceptable when `alpha` is empty or
//! starts with some `y_i^-1` while `v` does not start with `b_i^{+-1}`.
//!
//! Three local identities drive the rewriting. A leading positive `y_i`
//! splits the conjugate in two with shorter y-parts; a leading `y_i^-1`
//! whose b-part starts with `b_i` or `b_i^-1` absorbs that letter. The
//! recursion strictly decreases the pair `(l(alpha), l(v))` lexicographically,
//! which is asserted at every call. Each rule application is recorded in a
//! trace that a separate replayer checks schema by schema, and a truncated
//! evaluation into T0 verifies the rewrite semantically modulo a convex
//! subgroup.

use std::sync::Arc;

use crate::words::Word;
use crate::{Error, Result};

use super::{ConstructionContext, LambdaElement, T0Word};

/// Conjugator of a stable-letter power: y-part, b-part and x-part, each
/// freely reduced. As a group element the conjugator is the product
/// `alpha v f` (the y-part commutes with the other two).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Conjugator {
    pub alpha: Word,
    pub v: Word,
    pub f: Word,
}

impl std::fmt::Display for Conjugator {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}; {}; {})", self.alpha, self.v, self.f)
    }
}

/// Formal product of signed conjugates of the stable letter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugateProduct {
    pub factors: Vec<(i8, Conjugator)>,
}

impl ConjugateProduct {
    pub fn single(conjugator: Conjugator) -> Self {
        ConjugateProduct { factors: vec![(1, conjugator)] }
    }
}

/// A conjugator satisfying the canonical-form constraints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenConjugate {
    inner: Conjugator,
}

impl GenConjugate {
    pub fn conjugator(&self) -> &Conjugator {
        &self.inner
    }
}

impl std::fmt::Display for GenConjugate {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.inner.fmt(f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RewriteRule {
    /// Replace the x-part by its transversal representative.
    Canonicalize,
    /// Peel a leading positive y-letter, splitting into two factors.
    SplitLeading { index: usize },
    /// Absorb a leading `b_i` matching the leading `y_i^-1`.
    AbsorbHead { index: usize },
    /// Absorb a leading `b_i^-1` matching the leading `y_i^-1`.
    AbsorbHeadInverse { index: usize },
}

/// One rule application: the factor it consumed and the signed factors it
/// produced, in order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewriteStep {
    pub rule: RewriteRule,
    pub input: Conjugator,
    pub output: Vec<(i8, Conjugator)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewriteOutcome {
    pub factors: Vec<(i8, GenConjugate)>,
    pub steps: Vec<RewriteStep>,
}

impl ConstructionContext {
    /// Parses a mixed conjugator word over the y-, b- and x-alphabets: the
    /// y-letters are extracted in order (they commute with everything else
    /// here) and the remaining letters multiply out in G0.
    pub fn parse_conjugator(&self, text: &str) -> Result<Conjugator> {
        let word = crate::words::parse_word(text, self.conj_alphabet())?;
        let two_m = 2 * self.m() as u32;
        let mut alpha = Word::identity(self.y_alphabet());
        let mut rest = self.g0_identity();
        for (g, sign) in word.letters() {
            if g < two_m {
                alpha = alpha.multiply(&Word::generator(self.y_alphabet(), g, sign as i64))?;
            } else if g < 2 * two_m {
                let b = Word::generator(self.b_alphabet(), g - two_m, sign as i64);
                rest = self.g0_mul(&rest, &self.g0_from_parts(b, Word::identity(self.x_alphabet()))?)?;
            } else {
                let x = Word::generator(self.x_alphabet(), g - 2 * two_m, sign as i64);
                rest = self.g0_mul(&rest, &self.g0_from_parts(Word::identity(self.b_alphabet()), x)?)?;
            }
        }
        Ok(Conjugator { alpha, v: rest.v, f: rest.w })
    }

    /// Checks the canonical-form constraints and wraps the conjugator.
    pub fn gen_conjugate(&self, c: Conjugator) -> Result<GenConjugate> {
        if !self.is_gen_form(&c)? {
            return Err(Error::Presentation(format!(
                "conjugator {c} is not in canonical generating form"
            )));
        }
        Ok(GenConjugate { inner: c })
    }

    pub fn is_gen_form(&self, c: &Conjugator) -> Result<bool> {
        if c.f != self.transversal(&c.f)? {
            return Ok(false);
        }
        match c.alpha.first_letter() {
            None => Ok(true),
            Some((_, 1)) => Ok(false),
            Some((i, _)) => match c.v.first_letter() {
                Some((j, _)) if j == i => Ok(false),
                _ => Ok(true),
            },
        }
    }
}

fn measure(c: &Conjugator) -> (usize, usize) {
    (c.alpha.len(), c.v.len())
}

fn strip_first_letter(w: &Word) -> Word {
    let mut runs = w.runs().to_vec();
    if let Some((_, e)) = runs.first_mut() {
        if *e > 0 {
            *e -= 1;
        } else {
            *e += 1;
        }
        if *e == 0 {
            runs.remove(0);
        }
    }
    Word::from_runs(w.alphabet(), runs)
}

fn invert_factors(mut factors: Vec<(i8, Conjugator)>) -> Vec<(i8, Conjugator)> {
    factors.reverse();
    for (s, _) in factors.iter_mut() {
        *s = -*s;
    }
    factors
}

/// Rewrites a formal product of conjugates into canonical generating form,
/// emitting the step trace.
pub fn gen_rewrite(ctx: &ConstructionContext, p: &ConjugateProduct) -> Result<RewriteOutcome> {
    let mut steps = Vec::new();
    let mut factors = Vec::new();
    for (sign, raw) in &p.factors {
        let rep = ctx.transversal(&raw.f)?;
        let canonical = Conjugator { alpha: raw.alpha.clone(), v: raw.v.clone(), f: rep };
        if canonical.f != raw.f {
            steps.push(RewriteStep {
                rule: RewriteRule::Canonicalize,
                input: raw.clone(),
                output: vec![(1, canonical.clone())],
            });
        }
        let fs = rewrite_factor(ctx, &canonical, None, &mut steps)?;
        if *sign == 1 {
            factors.extend(fs);
        } else {
            factors.extend(invert_factors(fs));
        }
    }
    let factors = factors
        .into_iter()
        .map(|(s, c)| Ok((s, ctx.gen_conjugate(c)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(RewriteOutcome { factors, steps })
}

fn rewrite_factor(
    ctx: &ConstructionContext,
    c: &Conjugator,
    parent: Option<(usize, usize)>,
    steps: &mut Vec<RewriteStep>,
) -> Result<Vec<(i8, Conjugator)>> {
    if let Some(pm) = parent {
        assert!(measure(c) < pm, "rewriting measure must strictly decrease");
    }
    let m = measure(c);
    let Some((i, sign)) = c.alpha.first_letter() else {
        return Ok(vec![(1, c.clone())]);
    };
    if sign > 0 {
        // t^{y_i a' v h} = (t^{a' b_i v h})^{-1} t^{a' v h}.
        let alpha_rest = strip_first_letter(&c.alpha);
        let bi = Word::generator(ctx.b_alphabet(), i, 1);
        let left =
            Conjugator { alpha: alpha_rest.clone(), v: bi.multiply(&c.v)?, f: c.f.clone() };
        let right = Conjugator { alpha: alpha_rest, v: c.v.clone(), f: c.f.clone() };
        steps.push(RewriteStep {
            rule: RewriteRule::SplitLeading { index: i as usize },
            input: c.clone(),
            output: vec![(-1, left.clone()), (1, right.clone())],
        });
        let mut out = invert_factors(rewrite_factor(ctx, &left, Some(m), steps)?);
        out.extend(rewrite_factor(ctx, &right, Some(m), steps)?);
        return Ok(out);
    }
    match c.v.first_letter() {
        Some((j, d)) if j == i => {
            let v_rest = strip_first_letter(&c.v);
            let alpha_rest = strip_first_letter(&c.alpha);
            if d > 0 {
                // t^{a b_i v' h} = t^{a v' h} (t^{a' v' h})^{-1}.
                let first = Conjugator { alpha: c.alpha.clone(), v: v_rest.clone(), f: c.f.clone() };
                let second = Conjugator { alpha: alpha_rest, v: v_rest, f: c.f.clone() };
                steps.push(RewriteStep {
                    rule: RewriteRule::AbsorbHead { index: i as usize },
                    input: c.clone(),
                    output: vec![(1, first.clone()), (-1, second.clone())],
                });
                let mut out = rewrite_factor(ctx, &first, Some(m), steps)?;
                out.extend(invert_factors(rewrite_factor(ctx, &second, Some(m), steps)?));
                Ok(out)
            } else {
                // t^{a b_i^-1 v' h} = t^{a v' h} t^{a' b_i^-1 v' h}.
                let first = Conjugator { alpha: c.alpha.clone(), v: v_rest, f: c.f.clone() };
                let second = Conjugator { alpha: alpha_rest, v: c.v.clone(), f: c.f.clone() };
                steps.push(RewriteStep {
                    rule: RewriteRule::AbsorbHeadInverse { index: i as usize },
                    input: c.clone(),
                    output: vec![(1, first.clone()), (1, second.clone())],
                });
                let mut out = rewrite_factor(ctx, &first, Some(m), steps)?;
                out.extend(rewrite_factor(ctx, &second, Some(m), steps)?);
                Ok(out)
            }
        }
        _ => Ok(vec![(1, c.clone())]),
    }
}

/// Schema check of a single step.
fn validate_step(ctx: &ConstructionContext, step: &RewriteStep) -> Result<bool> {
    let c = &step.input;
    match step.rule {
        RewriteRule::Canonicalize => {
            let rep = ctx.transversal(&c.f)?;
            Ok(rep != c.f
                && step.output.len() == 1
                && step.output[0]
                    == (1, Conjugator { alpha: c.alpha.clone(), v: c.v.clone(), f: rep }))
        }
        RewriteRule::SplitLeading { index } => {
            if c.alpha.first_letter() != Some((index as u32, 1)) {
                return Ok(false);
            }
            let alpha_rest = strip_first_letter(&c.alpha);
            let bi = Word::generator(ctx.b_alphabet(), index as u32, 1);
            let left =
                Conjugator { alpha: alpha_rest.clone(), v: bi.multiply(&c.v)?, f: c.f.clone() };
            let right = Conjugator { alpha: alpha_rest, v: c.v.clone(), f: c.f.clone() };
            Ok(step.output == vec![(-1, left), (1, right)])
        }
        RewriteRule::AbsorbHead { index } => {
            if c.alpha.first_letter() != Some((index as u32, -1))
                || c.v.first_letter() != Some((index as u32, 1))
            {
                return Ok(false);
            }
            let v_rest = strip_first_letter(&c.v);
            let first = Conjugator { alpha: c.alpha.clone(), v: v_rest.clone(), f: c.f.clone() };
            let second =
                Conjugator { alpha: strip_first_letter(&c.alpha), v: v_rest, f: c.f.clone() };
            Ok(step.output == vec![(1, first), (-1, second)])
        }
        RewriteRule::AbsorbHeadInverse { index } => {
            if c.alpha.first_letter() != Some((index as u32, -1))
                || c.v.first_letter() != Some((index as u32, -1))
            {
                return Ok(false);
            }
            let first =
                Conjugator { alpha: c.alpha.clone(), v: strip_first_letter(&c.v), f: c.f.clone() };
            let second =
                Conjugator { alpha: strip_first_letter(&c.alpha), v: c.v.clone(), f: c.f.clone() };
            Ok(step.output == vec![(1, first), (1, second)])
        }
    }
}

/// Replays a rewrite trace: every step must match its schema exactly, the
/// steps must expand the input product depth-first in order, and the final
/// factor list must equal the claimed outcome.
pub fn verify_trace(
    ctx: &ConstructionContext,
    p: &ConjugateProduct,
    outcome: &RewriteOutcome,
) -> Result<bool> {
    fn expand(
        ctx: &ConstructionContext,
        c: &Conjugator,
        steps: &[RewriteStep],
        pos: &mut usize,
    ) -> Result<Option<Vec<(i8, Conjugator)>>> {
        if *pos < steps.len() && steps[*pos].input == *c {
            let step = &steps[*pos];
            *pos += 1;
            if !validate_step(ctx, step)? {
                return Ok(None);
            }
            let mut out = Vec::new();
            for (s, sub) in &step.output {
                let Some(sub_factors) = expand(ctx, sub, steps, pos)? else {
                    return Ok(None);
                };
                if *s == 1 {
                    out.extend(sub_factors);
                } else {
                    out.extend(invert_factors(sub_factors));
                }
            }
            return Ok(Some(out));
        }
        if ctx.is_gen_form(c)? {
            Ok(Some(vec![(1, c.clone())]))
        } else {
            Ok(None)
        }
    }

    let mut pos = 0usize;
    let mut all = Vec::new();
    for (sign, raw) in &p.factors {
        let Some(fs) = expand(ctx, raw, &outcome.steps, &mut pos)? else {
            return Ok(false);
        };
        if *sign == 1 {
            all.extend(fs);
        } else {
            all.extend(invert_factors(fs));
        }
    }
    if pos != outcome.steps.len() {
        return Ok(false);
    }
    let claimed: Vec<(i8, Conjugator)> =
        outcome.factors.iter().map(|(s, g)| (*s, g.conjugator().clone())).collect();
    Ok(all == claimed)
}

/// Evaluates `t^{alpha v f}` into T0, replacing positive y-letters by the
/// endomorphism and inverse letters by the level-`k` Cauchy approximation,
/// then conjugating by the G0 part.
pub fn evaluate_conjugate(
    ctx: &ConstructionContext,
    c: &Conjugator,
    k: usize,
) -> Result<T0Word> {
    let mut w = T0Word::generator(ctx.lambda_identity(), 1);
    for (i, sign) in c.alpha.letters() {
        w = if sign > 0 {
            ctx.y_apply(&w, i as usize)?
        } else {
            ctx.y_inverse_approx(&w, i as usize, k)?
        };
    }
    let g0 = ctx.g0_from_parts(c.v.clone(), c.f.clone())?;
    ctx.t0_conjugate_g0(&w, &g0)
}

fn evaluate_product(
    ctx: &ConstructionContext,
    factors: &[(i8, Conjugator)],
    k: usize,
) -> Result<T0Word> {
    let mut out = T0Word::identity();
    for (sign, c) in factors {
        let w = evaluate_conjugate(ctx, c, k)?;
        out = out.multiply(&if *sign == 1 { w } else { w.invert() });
    }
    Ok(out)
}

/// Default truncation level for a product: floor of the context, raised to
/// twice the total b-length plus two.
pub fn default_truncation(ctx: &ConstructionContext, p: &ConjugateProduct) -> usize {
    let sum_lv: usize = p.factors.iter().map(|(_, c)| c.v.len()).sum();
    ctx.truncation_floor().max(2 * sum_lv + 2)
}

/// Conjugator exponent below which truncation artifacts may hide, as a power
/// of the first b-generator: everything produced by cutting the Cauchy words
/// at level `k` lies at or below this threshold.
fn accuracy_exponent(ctx: &ConstructionContext, k: usize, max_lv: usize) -> i64 {
    let sqrt2 = 2f64.sqrt();
    let p_max = *ctx.b_weight_primes().last().expect("at least one weight") as f64;
    ((k as f64 * sqrt2 - max_lv as f64 * p_max.sqrt()) / sqrt2).floor() as i64
}

/// Verifies a rewrite semantically: both sides evaluate into T0 by truncated
/// y-substitution at level `k`, generators at or below `g_prime` are killed,
/// and the images must agree. When the images differ only below the
/// guaranteed-accuracy threshold the verdict is `TruncationInsufficient`
/// rather than a spurious mismatch. Defaults: `k` from
/// [`default_truncation`]; `g_prime` a power of the first b-generator chosen
/// strictly above every truncation artifact, which also keeps `b_i^k` below
/// `g_prime` as the construction requires.
pub fn gen_rewrite_verify(
    ctx: &ConstructionContext,
    p: &ConjugateProduct,
    rewritten: &[(i8, GenConjugate)],
    k: Option<usize>,
    g_prime: Option<Arc<LambdaElement>>,
) -> Result<bool> {
    let k = k.unwrap_or_else(|| default_truncation(ctx, p));
    let max_lv = p.factors.iter().map(|(_, c)| c.v.len()).max().unwrap_or(0);
    let accuracy = accuracy_exponent(ctx, k, max_lv);
    let g_prime = match g_prime {
        Some(g) => {
            // The threshold must sit above b_i^k for every i, so that killing
            // at it removes all truncation artifacts.
            for i in 0..2 * ctx.m() {
                let bik = ctx.lambda_from_parts(
                    Word::generator(ctx.b_alphabet(), i as u32, k as i64),
                    Word::identity(ctx.x_alphabet()),
                )?;
                if ctx.cmp_lambda(&bik, &g)? != std::cmp::Ordering::Less {
                    return Err(Error::TruncationInsufficient);
                }
            }
            g
        }
        None => {
            let j = (accuracy - 1).clamp(1, k as i64 - 1);
            ctx.lambda_from_parts(
                Word::generator(ctx.b_alphabet(), 0, j),
                Word::identity(ctx.x_alphabet()),
            )?
        }
    };
    let claimed: Vec<(i8, Conjugator)> =
        rewritten.iter().map(|(s, g)| (*s, g.conjugator().clone())).collect();
    let lhs = ctx.kill(&evaluate_product(ctx, &p.factors, k)?, &g_prime, false)?;
    let rhs = ctx.kill(&evaluate_product(ctx, &claimed, k)?, &g_prime, false)?;
    if lhs == rhs {
        return Ok(true);
    }
    let diff = lhs.multiply(&rhs.invert());
    let tau = ctx.lambda_from_parts(
        Word::generator(ctx.b_alphabet(), 0, accuracy.max(1)),
        Word::identity(ctx.x_alphabet()),
    )?;
    let mut all_below = true;
    for gamma in diff.occurring() {
        if ctx.cmp_lambda(&gamma, &tau)? == std::cmp::Ordering::Greater {
            all_below = false;
            break;
        }
    }
    if all_below {
        Err(Error::TruncationInsufficient)
    } else {
        Ok(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::parse_word;

    fn ctx() -> ConstructionContext {
        ConstructionContext::abelian(2).unwrap()
    }

    fn conj(c: &ConstructionContext, text: &str) -> Conjugator {
        c.parse_conjugator(text).unwrap()
    }

    #[test]
    fn parse_splits_blocks() {
        let c = ctx();
        let k = conj(&c, "y1^-1 b2 x1");
        assert_eq!(k.alpha, parse_word("y1^-1", c.y_alphabet()).unwrap());
        assert_eq!(k.v, parse_word("b2", c.b_alphabet()).unwrap());
        assert_eq!(k.f, parse_word("x1", c.x_alphabet()).unwrap());
        // Interleaved letters still split: y commutes with b and x.
        let k2 = conj(&c, "b2 y1^-1 x1");
        assert_eq!(k, k2);
    }

    #[test]
    fn rewrite_positive_y() {
        let c = ctx();
        let p = ConjugateProduct::single(conj(&c, "y1"));
        let out = gen_rewrite(&c, &p).unwrap();
        // (t^{b1})^{-1} t.
        assert_eq!(out.factors.len(), 2);
        assert_eq!(out.factors[0].0, -1);
        assert_eq!(out.factors[0].1.conjugator(), &conj(&c, "b1"));
        assert_eq!(out.factors[1].0, 1);
        assert_eq!(out.factors[1].1.conjugator(), &conj(&c, "1"));
        assert!(verify_trace(&c, &p, &out).unwrap());
        assert!(gen_rewrite_verify(&c, &p, &out.factors, None, None).unwrap());
    }

    #[test]
    fn rewrite_keeps_gen_form_fixed() {
        let c = ctx();
        let p = ConjugateProduct::single(conj(&c, "y1^-1 b2^-1 x1"));
        let out = gen_rewrite(&c, &p).unwrap();
        assert_eq!(out.factors.len(), 1);
        assert_eq!(out.factors[0].1.conjugator(), &conj(&c, "y1^-1 b2^-1 x1"));
        assert!(out.steps.is_empty());
        assert!(verify_trace(&c, &p, &out).unwrap());
        assert!(gen_rewrite_verify(&c, &p, &out.factors, None, None).unwrap());
    }

    #[test]
    fn rewrite_absorbs_matching_head() {
        let c = ctx();
        // t^{y1^-1 b1} = t^{y1^-1} t^{-1}.
        let p = ConjugateProduct::single(conj(&c, "y1^-1 b1"));
        let out = gen_rewrite(&c, &p).unwrap();
        assert_eq!(out.factors.len(), 2);
        assert_eq!(out.factors[0].0, 1);
        assert_eq!(out.factors[0].1.conjugator(), &conj(&c, "y1^-1"));
        assert_eq!(out.factors[1].0, -1);
        assert_eq!(out.factors[1].1.conjugator(), &conj(&c, "1"));
        assert!(verify_trace(&c, &p, &out).unwrap());
        assert!(gen_rewrite_verify(&c, &p, &out.factors, None, None).unwrap());
        // t^{y1^-1 b1^-1} = t^{y1^-1} t^{b1^-1}.
        let p = ConjugateProduct::single(conj(&c, "y1^-1 b1^-1"));
        let out = gen_rewrite(&c, &p).unwrap();
        assert_eq!(out.factors.len(), 2);
        assert_eq!(out.factors[0].1.conjugator(), &conj(&c, "y1^-1"));
        assert_eq!(out.factors[1].0, 1);
        assert_eq!(out.factors[1].1.conjugator(), &conj(&c, "b1^-1"));
        assert!(verify_trace(&c, &p, &out).unwrap());
        assert!(gen_rewrite_verify(&c, &p, &out.factors, None, None).unwrap());
    }

    #[test]
    fn canonicalize_step_is_recorded() {
        let c = ctx();
        // x2 x1 is not a transversal representative; x1 x2 is.
        let p = ConjugateProduct::single(conj(&c, "x2 x1"));
        let out = gen_rewrite(&c, &p).unwrap();
        assert_eq!(out.steps.len(), 1);
        assert!(matches!(out.steps[0].rule, RewriteRule::Canonicalize));
        assert_eq!(out.factors[0].1.conjugator(), &conj(&c, "x1 x2"));
        assert!(verify_trace(&c, &p, &out).unwrap());
    }

    #[test]
    fn identity_product_verifies() {
        let c = ctx();
        let p = ConjugateProduct { factors: vec![] };
        let out = gen_rewrite(&c, &p).unwrap();
        assert!(out.factors.is_empty());
        assert!(gen_rewrite_verify(&c, &p, &out.factors, None, None).unwrap());
    }

    #[test]
    fn corrupted_output_fails_verification() {
        let c = ctx();
        let p = ConjugateProduct::single(conj(&c, "y1^-1 b1"));
        let out = gen_rewrite(&c, &p).unwrap();
        // Flip the sign of one factor.
        let mut bad = out.factors.clone();
        bad[1].0 = -bad[1].0;
        assert_eq!(gen_rewrite_verify(&c, &p, &bad, None, None), Ok(false));
        // A corrupted trace is rejected by the replayer.
        let mut bad_outcome = out.clone();
        bad_outcome.factors[1].0 = -bad_outcome.factors[1].0;
        assert!(!verify_trace(&c, &p, &bad_outcome).unwrap());
    }

    #[test]
    fn inverted_factors_reverse() {
        let c = ctx();
        let p = ConjugateProduct { factors: vec![(-1, conj(&c, "y1"))] };
        let out = gen_rewrite(&c, &p).unwrap();
        // Inverse of (t^{b1})^{-1} t is t^{-1} t^{b1}.
        assert_eq!(out.factors.len(), 2);
        assert_eq!(out.factors[0].0, -1);
        assert_eq!(out.factors[0].1.conjugator(), &conj(&c, "1"));
        assert_eq!(out.factors[1].0, 1);
        assert_eq!(out.factors[1].1.conjugator(), &conj(&c, "b1"));
        assert!(verify_trace(&c, &p, &out).unwrap());
        assert!(gen_rewrite_verify(&c, &p, &out.factors, None, None).unwrap());
    }

    #[test]
    fn evaluation_matches_endomorphism() {
        let c = ctx();
        let t = T0Word::generator(c.lambda_identity(), 1);
        let lhs = evaluate_conjugate(&c, &conj(&c, "y1"), 6).unwrap();
        assert_eq!(lhs, c.y_apply(&t, 0).unwrap());
        let lhs = evaluate_conjugate(&c, &conj(&c, "b2 x1"), 6).unwrap();
        let g0 = c
            .g0_from_parts(
                parse_word("b2", c.b_alphabet()).unwrap(),
                parse_word("x1", c.x_alphabet()).unwrap(),
            )
            .unwrap();
        assert_eq!(lhs, c.t0_conjugate_g0(&t, &g0).unwrap());
    }

    #[test]
    fn nested_rewrite_verifies() {
        let c = ctx();
        for text in ["y1 y2^-1 b2", "y2^-1 b2 b1^-1 x1", "y1 y1 b1^-1", "y1^-1 b1^2"] {
            let p = ConjugateProduct::single(conj(&c, text));
            let out = gen_rewrite(&c, &p).unwrap();
            for (_, g) in &out.factors {
                assert!(c.is_gen_form(g.conjugator()).unwrap());
            }
            assert!(verify_trace(&c, &p, &out).unwrap(), "trace for {text}");
            assert!(
                gen_rewrite_verify(&c, &p, &out.factors, None, None).unwrap(),
                "evaluation for {text}"
            );
        }
    }

    #[test]
    fn explicit_threshold_below_truncation_is_rejected() {
        let c = ctx();
        let p = ConjugateProduct::single(conj(&c, "y1^-1 b1"));
        let out = gen_rewrite(&c, &p).unwrap();
        // A threshold deeper than b_i^k violates the precondition: killing at
        // it cannot remove the truncation artifacts.
        let deep = c
            .lambda_from_parts(
                parse_word("b1^20", c.b_alphabet()).unwrap(),
                crate::words::Word::identity(c.x_alphabet()),
            )
            .unwrap();
        assert_eq!(
            gen_rewrite_verify(&c, &p, &out.factors, Some(8), Some(deep)),
            Err(Error::TruncationInsufficient)
        );
    }
}
