//! Sparse coefficient maps shared by the truncated algebra types.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::word::Word;
use crate::Rational;

/// Word-indexed coefficients with no stored zeros, ordered graded-lex.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Terms(BTreeMap<Word, Rational>);

impl Terms {
    pub fn new() -> Self {
        Terms(BTreeMap::new())
    }

    pub fn coeff(&self, w: Word) -> Rational {
        self.0.get(&w).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, w: Word, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.0.entry(w) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_term_ref(&mut self, w: Word, c: &Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.0.entry(w) {
            Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Terms, s: &Rational) {
        if s.is_zero() {
            return;
        }
        for (&w, c) in &other.0 {
            self.add_term(w, c * s);
        }
    }

    pub fn add_assign(&mut self, other: &Terms) {
        for (&w, c) in &other.0 {
            self.add_term_ref(w, c);
        }
    }

    pub fn sub_assign(&mut self, other: &Terms) {
        for (&w, c) in &other.0 {
            self.add_term(w, -c.clone());
        }
    }

    pub fn scaled(&self, s: &Rational) -> Terms {
        if s.is_zero() {
            return Terms::new();
        }
        Terms(self.0.iter().map(|(&w, c)| (w, c * s)).collect())
    }

    pub fn negated(&self) -> Terms {
        Terms(self.0.iter().map(|(&w, c)| (w, -c.clone())).collect())
    }

    pub fn remove(&mut self, w: Word) -> Option<Rational> {
        self.0.remove(&w)
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = (Word, &Rational)> + '_ {
        self.0.iter().map(|(&w, c)| (w, c))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn first(&self) -> Option<(Word, &Rational)> {
        self.0.iter().next().map(|(&w, c)| (w, c))
    }

    /// Keeps words with length in `lo..=hi`.
    pub fn degree_range(&self, lo: usize, hi: usize) -> Terms {
        Terms(
            self.0
                .iter()
                .filter(|(w, _)| (lo..=hi).contains(&w.len()))
                .map(|(&w, c)| (w, c.clone()))
                .collect(),
        )
    }

    pub fn retain_degree_le(&mut self, cap: usize) {
        self.0.retain(|w, _| w.len() <= cap);
    }

    pub fn min_degree(&self) -> Option<usize> {
        self.0.keys().next().map(|w| w.len())
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.0.keys().next_back().map(|w| w.len())
    }
}

impl FromIterator<(Word, Rational)> for Terms {
    fn from_iter<I: IntoIterator<Item = (Word, Rational)>>(iter: I) -> Self {
        let mut t = Terms::new();
        for (w, c) in iter {
            t.add_term(w, c);
        }
        t
    }
}

/// Arithmetic operators for a `{ cap, terms }` element type. Mixing caps is a
/// programming error and panics; the checked entry points live on the types.
macro_rules! impl_linear_ops {
    ($ty:ident) => {
        impl std::ops::Add<&$ty> for &$ty {
            type Output = $ty;
            fn add(self, rhs: &$ty) -> $ty {
                assert_eq!(self.cap, rhs.cap, "cap mismatch");
                let mut terms = self.terms.clone();
                terms.add_assign(&rhs.terms);
                $ty {
                    cap: self.cap,
                    terms,
                }
            }
        }
        impl std::ops::Add for $ty {
            type Output = $ty;
            fn add(mut self, rhs: $ty) -> $ty {
                assert_eq!(self.cap, rhs.cap, "cap mismatch");
                self.terms.add_assign(&rhs.terms);
                self
            }
        }
        impl std::ops::AddAssign<&$ty> for $ty {
            fn add_assign(&mut self, rhs: &$ty) {
                assert_eq!(self.cap, rhs.cap, "cap mismatch");
                self.terms.add_assign(&rhs.terms);
            }
        }
        impl std::ops::SubAssign<&$ty> for $ty {
            fn sub_assign(&mut self, rhs: &$ty) {
                assert_eq!(self.cap, rhs.cap, "cap mismatch");
                self.terms.sub_assign(&rhs.terms);
            }
        }
        impl std::ops::Sub<&$ty> for &$ty {
            type Output = $ty;
            fn sub(self, rhs: &$ty) -> $ty {
                assert_eq!(self.cap, rhs.cap, "cap mismatch");
                let mut terms = self.terms.clone();
                terms.sub_assign(&rhs.terms);
                $ty {
                    cap: self.cap,
                    terms,
                }
            }
        }
        impl std::ops::Sub for $ty {
            type Output = $ty;
            fn sub(mut self, rhs: $ty) -> $ty {
                assert_eq!(self.cap, rhs.cap, "cap mismatch");
                self.terms.sub_assign(&rhs.terms);
                self
            }
        }
        impl std::ops::Neg for &$ty {
            type Output = $ty;
            fn neg(self) -> $ty {
                $ty {
                    cap: self.cap,
                    terms: self.terms.negated(),
                }
            }
        }
        impl std::ops::Neg for $ty {
            type Output = $ty;
            fn neg(self) -> $ty {
                -&self
            }
        }
        impl std::ops::Mul<&$ty> for &$crate::Rational {
            type Output = $ty;
            fn mul(self, rhs: &$ty) -> $ty {
                $ty {
                    cap: rhs.cap,
                    terms: rhs.terms.scaled(self),
                }
            }
        }
    };
}

pub(crate) use impl_linear_ops;

/// Writes `c word + c word ...` for display impls.
pub(crate) fn fmt_terms(
    f: &mut std::fmt::Formatter<'_>,
    terms: &Terms,
    word: impl Fn(Word) -> String,
) -> std::fmt::Result {
    if terms.is_empty() {
        return f.write_str("0");
    }
    for (i, (w, c)) in terms.iter().enumerate() {
        if i > 0 {
            f.write_str(" + ")?;
        }
        write!(f, "{c} {}", word(w))?;
    }
    Ok(())
}
