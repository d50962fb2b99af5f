//! Cyclic words `cyc = A/[A,A]`, the trace map, and the actions of
//! tangential derivations and automorphisms on cyclic words.

use std::fmt;

use num_traits::One;

use crate::assoc::{bch_unchecked, lie_to_assoc, AssocElt};
use crate::lie::LieElt;
use crate::series::{fmt_terms, impl_linear_ops, Terms};
use crate::tangential::{TAutElt, TDer};
use crate::word::{Word, MAX_WORD_LEN};
use crate::{Error, Rational};

/// Linear combination of necklaces (least rotations) of length `≤ cap`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycElt {
    pub(crate) cap: usize,
    pub(crate) terms: Terms,
}

impl_linear_ops!(CycElt);

impl CycElt {
    pub fn zero(cap: usize) -> Self {
        assert!(cap <= MAX_WORD_LEN, "cap {cap} out of range");
        CycElt {
            cap,
            terms: Terms::new(),
        }
    }

    /// Accepts arbitrary words and canonicalizes each to its necklace.
    pub fn from_word_terms(cap: usize, terms: impl IntoIterator<Item = (Word, Rational)>) -> Self {
        let mut out = CycElt::zero(cap);
        for (w, c) in terms {
            if w.len() <= cap {
                out.terms.add_term(w.necklace(), c);
            }
        }
        out
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: Word) -> Rational {
        self.terms.coeff(w.necklace())
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (Word, &Rational)> + '_ {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn min_degree(&self) -> Option<usize> {
        self.terms.min_degree()
    }

    pub fn degree_part(&self, d: usize) -> CycElt {
        self.degree_range(d, d)
    }

    pub fn degree_range(&self, lo: usize, hi: usize) -> CycElt {
        CycElt {
            cap: self.cap,
            terms: self.terms.degree_range(lo, hi),
        }
    }

    pub fn with_cap(&self, cap: usize) -> CycElt {
        let mut terms = self.terms.clone();
        terms.retain_degree_le(cap);
        CycElt { cap, terms }
    }

    pub fn scale(&self, s: &Rational) -> CycElt {
        s * self
    }

    /// The sum of the necklace words, a representative in `A`.
    pub fn representative(&self) -> AssocElt {
        AssocElt::from_terms_unchecked(self.cap, self.terms.clone())
    }
}

impl fmt::Display for CycElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_terms(f, &self.terms, |w| format!("tr({w})"))
    }
}

/// Maps each word to its least rotation.
pub fn trace(a: &AssocElt) -> CycElt {
    CycElt::from_word_terms(a.cap(), a.terms().map(|(w, c)| (w, c.clone())))
}

/// Which argument the Duflo series is evaluated at: `x + y` (SolKV, KRV, krv)
/// or `bch(x, y)` (KV).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DufloTarget {
    Sum,
    Bch,
}

/// `tr(w^k - x^k - y^k)` truncated at `cap`, with `w = x + y` or `bch(x, y)`.
pub fn duflo_pattern(k: usize, target: DufloTarget, cap: usize) -> Result<CycElt, Error> {
    if k < 2 || k > cap {
        return Err(Error::InvalidDegree(format!(
            "Duflo pattern index {k} outside 2..={cap}"
        )));
    }
    let w = match target {
        DufloTarget::Sum => &AssocElt::x(cap) + &AssocElt::y(cap),
        DufloTarget::Bch => lie_to_assoc(&bch_unchecked(&LieElt::x(cap), &LieElt::y(cap))),
    };
    let mut wk = AssocElt::one(cap);
    for _ in 0..k {
        wk = wk.product(&w);
    }
    let xk = AssocElt::word(cap, Word::from_bits(k, 0));
    let yk = AssocElt::word(cap, Word::from_bits(k, (1u64 << k) - 1));
    Ok(trace(&(wk - xk - yk)))
}

/// Action of a tangential derivation on cyclic words.
pub fn cyc_tder_act(u: &TDer, c: &CycElt) -> Result<CycElt, Error> {
    if u.cap() != c.cap {
        return Err(Error::CapMismatch {
            left: u.cap(),
            right: c.cap,
        });
    }
    Ok(tder_act_unchecked(u, c))
}

pub(crate) fn tder_act_unchecked(u: &TDer, c: &CycElt) -> CycElt {
    trace(&u.act_assoc(&c.representative()))
}

/// Action of a tangential automorphism on cyclic words.
pub fn cyc_taut_act(f: &TAutElt, c: &CycElt) -> Result<CycElt, Error> {
    if f.cap() != c.cap {
        return Err(Error::CapMismatch {
            left: f.cap(),
            right: c.cap,
        });
    }
    Ok(trace(&f.act_assoc(&c.representative())))
}

pub(crate) fn one_over(k: usize) -> Rational {
    Rational::new(One::one(), k.into())
}
