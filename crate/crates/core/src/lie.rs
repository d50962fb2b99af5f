//! The free Lie algebra on `x, y`, truncated at a degree cap, in the Lyndon
//! basis with standard-factorization bracketing.
//!
//! The associative expansion of the basis element `P_w` is `w` plus words that
//! are lexicographically larger, so converting a primitive element of the
//! free associative algebra back to the Lyndon basis is a triangular solve.

use std::collections::HashMap;
use std::fmt;
use std::sync::OnceLock;

use num_traits::{One, Zero};

use crate::assoc::{lie_to_assoc, AssocElt};
use crate::series::{fmt_terms, impl_linear_ops, Terms};
use crate::word::{words_of_len, Word, MAX_WORD_LEN};
use crate::{Error, Rational};

/// Per-degree Lyndon basis data.
pub(crate) struct DegreeBasis {
    pub words: Vec<Word>,
    pub index: HashMap<Word, usize>,
    /// Associative expansion of each bracketed basis element.
    pub expansions: Vec<Terms>,
    /// For basis index `i`, the Lyndon words `j > i` occurring in the
    /// expansion of `P_{w_i}` with their coefficients.
    upper: Vec<Vec<(usize, Rational)>>,
}

static BASES: [OnceLock<DegreeBasis>; MAX_WORD_LEN + 1] =
    [const { OnceLock::new() }; MAX_WORD_LEN + 1];

pub(crate) fn basis(d: usize) -> &'static DegreeBasis {
    assert!((1..=MAX_WORD_LEN).contains(&d), "degree {d} out of range");
    BASES[d].get_or_init(|| build_basis(d))
}

fn build_basis(d: usize) -> DegreeBasis {
    let words: Vec<Word> = words_of_len(d).filter(|w| w.is_lyndon()).collect();
    let index: HashMap<Word, usize> = words.iter().enumerate().map(|(i, &w)| (w, i)).collect();
    let expansions: Vec<Terms> = words
        .iter()
        .map(|&w| match w.standard_factorization() {
            None => [(w, Rational::one())].into_iter().collect(),
            Some((u, v)) => {
                let pu = expansion(u);
                let pv = expansion(v);
                let mut t = Terms::new();
                for (a, ca) in pu.iter() {
                    for (b, cb) in pv.iter() {
                        let c = ca * cb;
                        t.add_term(a.concat(b), c.clone());
                        t.add_term(b.concat(a), -c);
                    }
                }
                t
            }
        })
        .collect();
    let upper = expansions
        .iter()
        .enumerate()
        .map(|(i, t)| {
            debug_assert_eq!(
                t.first().map(|(w, c)| (w, c.clone())),
                Some((words[i], Rational::one()))
            );
            t.iter()
                .filter_map(|(w, c)| index.get(&w).filter(|&&j| j > i).map(|&j| (j, c.clone())))
                .collect()
        })
        .collect();
    DegreeBasis {
        words,
        index,
        expansions,
        upper,
    }
}

fn expansion(w: Word) -> &'static Terms {
    let b = basis(w.len());
    &b.expansions[b.index[&w]]
}

/// Lyndon words of degree `n` in lexicographic order.
pub fn lyndon_words(n: usize) -> Result<Vec<Word>, Error> {
    if n == 0 {
        return Err(Error::InvalidDegree(
            "Lyndon words need degree at least 1".into(),
        ));
    }
    if n > MAX_WORD_LEN {
        return Err(Error::InvalidDegree(format!(
            "degree {n} exceeds {MAX_WORD_LEN}"
        )));
    }
    Ok(basis(n).words.clone())
}

/// Dimension of the degree-`n` part of the free Lie algebra on two letters.
pub fn lie_dim(n: usize) -> usize {
    basis(n).words.len()
}

/// Element of the free Lie algebra truncated at `cap`, in the Lyndon basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LieElt {
    pub(crate) cap: usize,
    pub(crate) terms: Terms,
}

impl_linear_ops!(LieElt);

impl LieElt {
    pub fn zero(cap: usize) -> Self {
        assert!((1..=MAX_WORD_LEN).contains(&cap), "cap {cap} out of range");
        LieElt {
            cap,
            terms: Terms::new(),
        }
    }

    pub fn x(cap: usize) -> Self {
        Self::basis_element(cap, Word::X)
    }

    pub fn y(cap: usize) -> Self {
        Self::basis_element(cap, Word::Y)
    }

    /// The bracketed basis element `P_w`, or zero if `w` is longer than `cap`.
    pub fn basis_element(cap: usize, w: Word) -> Self {
        Self::from_lyndon_terms(cap, [(w, Rational::one())]).expect("Lyndon word")
    }

    /// Builds an element from Lyndon-basis coefficients; words above the cap
    /// are dropped.
    pub fn from_lyndon_terms(
        cap: usize,
        terms: impl IntoIterator<Item = (Word, Rational)>,
    ) -> Result<Self, Error> {
        let mut out = LieElt::zero(cap);
        for (w, c) in terms {
            if !w.is_lyndon() {
                return Err(Error::NotLyndon(w.to_string()));
            }
            if w.len() <= cap {
                out.terms.add_term(w, c);
            }
        }
        Ok(out)
    }

    pub(crate) fn from_terms_unchecked(cap: usize, terms: Terms) -> Self {
        LieElt { cap, terms }
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: Word) -> Rational {
        self.terms.coeff(w)
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

    /// Lowest degree with a nonzero coefficient.
    pub fn min_degree(&self) -> Option<usize> {
        self.terms.min_degree()
    }

    /// Homogeneous component of degree `d`, same cap.
    pub fn degree_part(&self, d: usize) -> LieElt {
        self.degree_range(d, d)
    }

    pub fn degree_range(&self, lo: usize, hi: usize) -> LieElt {
        LieElt {
            cap: self.cap,
            terms: self.terms.degree_range(lo, hi),
        }
    }

    /// Re-caps the element: drops terms above `cap`, or just raises the bound.
    pub fn with_cap(&self, cap: usize) -> LieElt {
        let mut terms = self.terms.clone();
        terms.retain_degree_le(cap);
        LieElt { cap, terms }
    }

    pub fn scale(&self, s: &Rational) -> LieElt {
        s * self
    }
}

impl fmt::Display for LieElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_terms(f, &self.terms, |w| format!("P({w})"))
    }
}

fn check_caps(a: usize, b: usize) -> Result<(), Error> {
    if a == b {
        Ok(())
    } else {
        Err(Error::CapMismatch { left: a, right: b })
    }
}

/// Lie bracket, computed as the commutator in the associative algebra and
/// converted back to the Lyndon basis.
pub fn lie_bracket(u: &LieElt, v: &LieElt) -> Result<LieElt, Error> {
    check_caps(u.cap, v.cap)?;
    Ok(bracket(u, v))
}

pub(crate) fn bracket(u: &LieElt, v: &LieElt) -> LieElt {
    let a = lie_to_assoc(u);
    let b = lie_to_assoc(v);
    project_to_lie(&a.commutator(&b))
}

/// Converts an associative element back to the Lyndon basis, failing with
/// the unexplained residual when it is not a Lie element.
pub fn lie_from_assoc(a: &AssocElt) -> Result<LieElt, Error> {
    if !a.constant_term().is_zero() {
        return Err(Error::NonzeroConstant);
    }
    let mut out = Terms::new();
    let mut stuck = Terms::new();
    for d in 1..=a.cap() {
        let mut residual = a.terms.degree_range(d, d);
        while let Some((w, c)) = residual.first() {
            if !w.is_lyndon() {
                stuck.add_assign(&residual);
                break;
            }
            let c = c.clone();
            residual.add_scaled(expansion(w), &-c.clone());
            out.add_term(w, c);
        }
    }
    if stuck.is_empty() {
        Ok(LieElt::from_terms_unchecked(a.cap(), out))
    } else {
        Err(Error::NotPrimitive {
            residual: AssocElt::from_terms_unchecked(a.cap(), stuck),
        })
    }
}

/// Lyndon-basis coordinates of `a`, assuming `a` is primitive. Only the
/// coefficients of Lyndon words in `a` are read.
pub(crate) fn project_to_lie(a: &AssocElt) -> LieElt {
    let mut out = Terms::new();
    let max = a.terms.max_degree().unwrap_or(0).min(a.cap());
    for d in 1..=max {
        let b = basis(d);
        let mut acc: Vec<Rational> = b.words.iter().map(|&w| a.coeff(w)).collect();
        for i in 0..acc.len() {
            if acc[i].is_zero() {
                continue;
            }
            let lambda = std::mem::take(&mut acc[i]);
            for (j, c) in &b.upper[i] {
                acc[*j] -= &lambda * c;
            }
            out.add_term(b.words[i], lambda);
        }
    }
    LieElt::from_terms_unchecked(a.cap(), out)
}
