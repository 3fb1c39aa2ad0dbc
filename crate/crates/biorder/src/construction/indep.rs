//! Abelianized independence of canonical generators, and the integer matrix
//! whose unimodularity underpins it: `a_{k,1} = 1` and
//! `a_{k,p+1} = sum_{l <= k} a_{l,p}`.

use std::collections::HashMap;
use std::sync::Arc;

use crate::intmat;
use crate::words::Word;
use crate::Result;

use super::{evaluate_conjugate, ConstructionContext, GenConjugate, LambdaElement};

/// The coefficient matrix of the iterated y-preimages of the stable letter,
/// stored densely; indices are 1-based in the accessors to match the
/// recursion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndependenceMatrix {
    entries: Vec<Vec<i128>>,
}

impl IndependenceMatrix {
    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, l: usize, p: usize) -> i128 {
        self.entries[l - 1][p - 1]
    }

    pub fn column(&self, p: usize) -> Vec<i128> {
        self.entries.iter().map(|row| row[p - 1]).collect()
    }

    pub fn rows(&self) -> &[Vec<i128>] {
        &self.entries
    }
}

/// Builds the matrix up to size `p` and returns it with its exact
/// determinant (fraction-free elimination).
pub fn det_matrix(p: usize) -> (IndependenceMatrix, i128) {
    assert!(p >= 1);
    let mut entries = vec![vec![0i128; p]; p];
    for row in entries.iter_mut() {
        row[0] = 1;
    }
    for col in 1..p {
        let mut acc = 0i128;
        for l in 0..p {
            acc += entries[l][col - 1];
            entries[l][col] = acc;
        }
    }
    let m = IndependenceMatrix { entries };
    let det = intmat::determinant(m.rows());
    (m, det)
}

/// Outcome of an independence check: the kill threshold used, the truncation
/// level, the bound the threshold was derived from, and the exact rank.
#[derive(Debug, Clone)]
pub struct IndependenceReport {
    pub threshold: Arc<LambdaElement>,
    pub truncation: usize,
    pub bound: usize,
    pub rank: usize,
    pub full_rank: bool,
}

/// Evaluates each canonical generator by truncated y-substitution, kills
/// everything at or below a threshold chosen from the total b-length bound,
/// abelianizes over the surviving conjugators and returns the exact integer
/// rank of the resulting vectors.
pub fn abelianized_independence(
    ctx: &ConstructionContext,
    gens: &[GenConjugate],
    truncation: Option<usize>,
) -> Result<IndependenceReport> {
    let sum_lv: usize = gens.iter().map(|g| g.conjugator().v.len()).sum();
    // The witness bound: strictly more than twice the total b-length.
    let bound = 2 * sum_lv + 1;
    let k = truncation.unwrap_or(0).max(2 * bound).max(ctx.truncation_floor());
    // Threshold below b_i^{2N} for every i: a slightly deeper power of the
    // heaviest generator.
    let last = 2 * ctx.m() as u32 - 1;
    let threshold = ctx.lambda_from_parts(
        Word::generator(ctx.b_alphabet(), last, 2 * bound as i64 + 1),
        Word::identity(ctx.x_alphabet()),
    )?;

    let mut support: Vec<Arc<LambdaElement>> = Vec::new();
    let mut rows_sparse: Vec<HashMap<usize, i128>> = Vec::new();
    for g in gens {
        let image = evaluate_conjugate(ctx, g.conjugator(), k)?;
        let killed = ctx.kill(&image, &threshold, false)?;
        let mut row: HashMap<usize, i128> = HashMap::new();
        for (gamma, e) in killed.runs() {
            let idx = match support.iter().position(|s| **s == **gamma) {
                Some(i) => i,
                None => {
                    support.push(Arc::clone(gamma));
                    support.len() - 1
                }
            };
            *row.entry(idx).or_insert(0) += *e as i128;
        }
        rows_sparse.push(row);
    }
    let rows: Vec<Vec<i128>> = rows_sparse
        .into_iter()
        .map(|r| (0..support.len()).map(|i| r.get(&i).copied().unwrap_or(0)).collect())
        .collect();
    let rank = intmat::rank(&rows);
    Ok(IndependenceReport {
        threshold,
        truncation: k,
        bound,
        rank,
        full_rank: rank == gens.len(),
    })
}
