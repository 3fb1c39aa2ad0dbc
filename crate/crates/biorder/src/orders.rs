//! Group orders realised as sign functions on elements: Negative, Zero or
//! Positive, with Zero exactly on the identity. Combinators build the orders
//! used downstream: lexicographic products, archimedean abelian orders with
//! weights `sqrt(p)` for distinct primes `p`, standard central orders through
//! the Magnus layers, and the right order on the base free group through a
//! quotient-group order plus a membership oracle.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_integer::Roots;
use num_traits::{Signed, Zero as NumZero};

use crate::magnus::{compare_basis, lie_coordinates, lyndon_basis, magnus_expand, weight, Weight};
use crate::words::Word;
use crate::{Error, Result, Tri};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
            Sign::Positive => Sign::Negative,
        }
    }

    pub fn is_positive(self) -> bool {
        self == Sign::Positive
    }

    pub fn is_zero(self) -> bool {
        self == Sign::Zero
    }

    /// `Less` when the signed element compares below the identity.
    pub fn as_ordering(self) -> Ordering {
        match self {
            Sign::Negative => Ordering::Less,
            Sign::Zero => Ordering::Equal,
            Sign::Positive => Ordering::Greater,
        }
    }

    pub fn of_bigint(x: &BigInt) -> Sign {
        if x.is_zero() {
            Sign::Zero
        } else if x.is_positive() {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }
}

impl std::fmt::Display for Sign {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Sign::Negative => write!(f, "negative"),
            Sign::Zero => write!(f, "zero"),
            Sign::Positive => write!(f, "positive"),
        }
    }
}

/// A named sign function over one carrier type.
pub struct SignFn<T: ?Sized> {
    carrier: String,
    eval: Box<dyn Fn(&T) -> Result<Sign> + Send + Sync>,
}

impl<T: ?Sized> SignFn<T> {
    pub fn new(
        carrier: impl Into<String>,
        eval: impl Fn(&T) -> Result<Sign> + Send + Sync + 'static,
    ) -> Self {
        SignFn { carrier: carrier.into(), eval: Box::new(eval) }
    }

    pub fn carrier(&self) -> &str {
        &self.carrier
    }

    pub fn eval(&self, t: &T) -> Result<Sign> {
        (self.eval)(t)
    }
}

/// Sign of a lexicographic pair: the first coordinate decides unless it is
/// zero.
pub fn lex_sign(first: Sign, second: Sign) -> Sign {
    match first {
        Sign::Zero => second,
        other => other,
    }
}

/// Lexicographic product of two sign functions.
pub fn lex_product_sign<X, Y>(
    sx: impl Fn(&X) -> Result<Sign>,
    sy: impl Fn(&Y) -> Result<Sign>,
) -> impl Fn(&X, &Y) -> Result<Sign> {
    move |x, y| Ok(lex_sign(sx(x)?, sy(y)?))
}

// ---------------------------------------------------------------------------
// Archimedean abelian order
// ---------------------------------------------------------------------------

/// Orientation of an archimedean order relative to the real value
/// `sum n_i sqrt(p_i)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// Element positive iff the value is positive.
    ValuePositive,
    /// Element positive iff the value is negative (used for the b-alphabet,
    /// which sits below the identity).
    ValueNegative,
}

/// Per-generator weights `sqrt(p)` over distinct primes, evaluated by integer
/// interval arithmetic with doubling precision. Square roots of distinct
/// primes are linearly independent over the rationals, so a combination
/// vanishes exactly when all exponents do; that case is decided syntactically
/// and evaluation terminates on everything else.
pub struct ArchimedeanWeights {
    primes: Vec<u64>,
    // prime -> (scale bits, floor(sqrt(p) * 2^scale)) at the best precision
    // computed so far.
    cache: Mutex<HashMap<u64, (u32, BigInt)>>,
}

fn first_primes(n: usize) -> Vec<u64> {
    let mut primes = Vec::with_capacity(n);
    let mut candidate = 2u64;
    while primes.len() < n {
        if primes.iter().all(|&p| candidate % p != 0) {
            primes.push(candidate);
        }
        candidate += 1;
    }
    primes
}

impl ArchimedeanWeights {
    /// Weights `sqrt(2), sqrt(3), sqrt(5), ...` for the first `n` primes.
    pub fn sqrt_primes(n: usize) -> Self {
        ArchimedeanWeights { primes: first_primes(n), cache: Mutex::new(HashMap::new()) }
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    /// `floor(sqrt(p) * 2^scale)`, refined and cached per prime.
    fn sqrt_floor(&self, prime: u64, scale: u32) -> BigInt {
        let mut cache = self.cache.lock().expect("weight cache poisoned");
        let entry = cache.entry(prime).or_insert_with(|| (0, BigInt::from(0)));
        if entry.0 < scale {
            let scaled = BigInt::from(prime) << (2 * scale);
            *entry = (scale, scaled.sqrt());
        }
        let (have, ref lo) = *entry;
        lo >> (have - scale)
    }

    /// Sign of `sum exponents[i] * sqrt(p_i)` under the chosen orientation.
    pub fn sign(&self, exponents: &[i64], direction: Direction) -> Sign {
        assert_eq!(
            exponents.len(),
            self.primes.len(),
            "exponent vector length must match the weight count"
        );
        if exponents.iter().all(|&n| n == 0) {
            return Sign::Zero;
        }
        let mut scale: u32 = 16;
        loop {
            let mut lo = BigInt::from(0);
            let mut hi = BigInt::from(0);
            for (&n, &p) in exponents.iter().zip(&self.primes) {
                if n == 0 {
                    continue;
                }
                let s_lo = self.sqrt_floor(p, scale);
                let s_hi = &s_lo + 1;
                if n > 0 {
                    lo += &s_lo * n;
                    hi += &s_hi * n;
                } else {
                    lo += &s_hi * n;
                    hi += &s_lo * n;
                }
            }
            let value_sign = if lo.is_positive() {
                Some(Sign::Positive)
            } else if hi.is_negative() {
                Some(Sign::Negative)
            } else {
                None
            };
            if let Some(s) = value_sign {
                return match direction {
                    Direction::ValuePositive => s,
                    Direction::ValueNegative => s.flip(),
                };
            }
            scale *= 2;
        }
    }
}

// ---------------------------------------------------------------------------
// Layer-one vector orders
// ---------------------------------------------------------------------------

/// Lexicographic sign on an integer vector: the first nonzero coordinate
/// decides, oriented so unit vectors are positive.
pub fn lex_vector_sign(v: &[i64]) -> Sign {
    for &x in v {
        if x > 0 {
            return Sign::Positive;
        }
        if x < 0 {
            return Sign::Negative;
        }
    }
    Sign::Zero
}

/// Sign decided by the greatest coordinate under a generator order, oriented
/// so generators are positive.
pub fn dominant_vector_sign<F>(v: &[i64], gen_order: &F) -> Sign
where
    F: Fn(u32, u32) -> Ordering,
{
    let mut best: Option<u32> = None;
    for (i, &x) in v.iter().enumerate() {
        if x == 0 {
            continue;
        }
        let i = i as u32;
        best = Some(match best {
            None => i,
            Some(j) => {
                if gen_order(i, j) == Ordering::Greater {
                    i
                } else {
                    j
                }
            }
        });
    }
    match best {
        None => Sign::Zero,
        Some(i) => {
            if v[i as usize] > 0 {
                Sign::Positive
            } else {
                Sign::Negative
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Standard central order
// ---------------------------------------------------------------------------

/// Sign of a free-group word under a standard central order: the first
/// nontrivial lower-central layer decides. Layer one is delegated to `level1`
/// on the exponent vector; layers two and above compare the Lie coordinates
/// over the weight-k basis ranked by s-monomial with the Lyndon tie-break, the
/// greatest nonzero coordinate deciding with generators-positive orientation.
/// The resulting order is bi-invariant because the layers are central.
pub fn scc_sign<O, L>(w: &Word, cap: usize, gen_order: &O, level1: &L) -> Result<Sign>
where
    O: Fn(u32, u32) -> Ordering,
    L: Fn(&[i64]) -> Sign,
{
    match weight(w, cap)? {
        Weight::Trivial => Ok(Sign::Zero),
        Weight::Indeterminate => Err(Error::Indeterminate(cap)),
        Weight::Finite(1) => Ok(level1(&w.abelianization())),
        Weight::Finite(k) => {
            let basis = lyndon_basis(w.alphabet(), k);
            let series = magnus_expand(w, k)?;
            let coords = lie_coordinates(&series, k, &basis)?;
            let mut best: Option<usize> = None;
            for (i, c) in coords.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                best = Some(match best {
                    None => i,
                    Some(j) => {
                        if compare_basis(&basis[i], &basis[j], gen_order)? == Ordering::Greater {
                            i
                        } else {
                            j
                        }
                    }
                });
            }
            let i = best.expect("a weight-k word has a nonzero layer-k component");
            Ok(Sign::of_bigint(&coords[i]))
        }
    }
}

/// Right order on a free group built from a right order on its quotient plus
/// an order on the kernel: positive iff the quotient image is positive, or the
/// element lies in the kernel and the kernel order makes it positive. The
/// membership oracle guards the kernel branch; `Unknown` (or an inconsistency
/// between the quotient order and the oracle) aborts.
pub fn fx_right_sign<'a>(
    hat: impl Fn(&Word) -> Result<Sign> + 'a,
    n_oracle: impl Fn(&Word) -> Tri + 'a,
    kernel_sign: impl Fn(&Word) -> Result<Sign> + 'a,
) -> impl Fn(&Word) -> Result<Sign> + 'a {
    move |f: &Word| match hat(f)? {
        Sign::Positive => Ok(Sign::Positive),
        Sign::Negative => Ok(Sign::Negative),
        Sign::Zero => match n_oracle(f) {
            Tri::Yes => kernel_sign(f),
            Tri::No | Tri::Unknown => Err(Error::OracleUnknown),
        },
    }
}

/// Sign on a semidirect pair ordered lexicographically: the acting coordinate
/// decides unless trivial. With a right order on the fibre this is a right
/// order on the product; with a conjugation-invariant fibre order it is the
/// bi-invariant one.
pub fn g0_pair_sign<V, W>(
    fb: impl Fn(&V) -> Result<Sign>,
    fx: impl Fn(&W) -> Result<Sign>,
) -> impl Fn(&V, &W) -> Result<Sign> {
    move |v, w| Ok(lex_sign(fb(v)?, fx(w)?))
}
