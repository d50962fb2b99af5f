//! The free associative algebra on `x, y` truncated at a degree cap:
//! products, exp/log, the BCH product and the `∂_x`/`∂_y` decomposition.

use std::fmt;

use num_traits::{One, Zero};

use crate::lie::{basis, project_to_lie, LieElt};
use crate::series::{fmt_terms, impl_linear_ops, Terms};
use crate::word::{Letter, Word, MAX_WORD_LEN};
use crate::{Error, Rational};

/// Noncommutative polynomial in `x, y` with all words of length `≤ cap`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AssocElt {
    pub(crate) cap: usize,
    pub(crate) terms: Terms,
}

impl_linear_ops!(AssocElt);

impl AssocElt {
    pub fn zero(cap: usize) -> Self {
        assert!(cap <= MAX_WORD_LEN, "cap {cap} out of range");
        AssocElt {
            cap,
            terms: Terms::new(),
        }
    }

    pub fn one(cap: usize) -> Self {
        Self::word(cap, Word::EMPTY)
    }

    pub fn x(cap: usize) -> Self {
        Self::word(cap, Word::X)
    }

    pub fn y(cap: usize) -> Self {
        Self::word(cap, Word::Y)
    }

    pub fn word(cap: usize, w: Word) -> Self {
        Self::from_word_terms(cap, [(w, Rational::one())])
    }

    pub fn scalar(cap: usize, c: Rational) -> Self {
        Self::from_word_terms(cap, [(Word::EMPTY, c)])
    }

    /// Builds an element from word coefficients, dropping words above `cap`.
    pub fn from_word_terms(cap: usize, terms: impl IntoIterator<Item = (Word, Rational)>) -> Self {
        let mut out = AssocElt::zero(cap);
        for (w, c) in terms {
            if w.len() <= cap {
                out.terms.add_term(w, c);
            }
        }
        out
    }

    pub(crate) fn from_terms_unchecked(cap: usize, terms: Terms) -> Self {
        AssocElt { cap, terms }
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

    pub fn constant_term(&self) -> Rational {
        self.coeff(Word::EMPTY)
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

    pub fn degree_part(&self, d: usize) -> AssocElt {
        AssocElt {
            cap: self.cap,
            terms: self.terms.degree_range(d, d),
        }
    }

    pub fn with_cap(&self, cap: usize) -> AssocElt {
        let mut terms = self.terms.clone();
        terms.retain_degree_le(cap);
        AssocElt { cap, terms }
    }

    pub fn scale(&self, s: &Rational) -> AssocElt {
        s * self
    }

    /// Concatenation product truncated at the cap. Caps must agree.
    pub fn mul(&self, other: &AssocElt) -> Result<AssocElt, Error> {
        if self.cap != other.cap {
            return Err(Error::CapMismatch {
                left: self.cap,
                right: other.cap,
            });
        }
        Ok(self.product(other))
    }

    pub(crate) fn product(&self, other: &AssocElt) -> AssocElt {
        debug_assert_eq!(self.cap, other.cap);
        let cap = self.cap;
        let mut out = Terms::new();
        for (a, ca) in self.terms.iter() {
            let room = cap - a.len();
            for (b, cb) in other.terms.iter() {
                if b.len() > room {
                    break;
                }
                out.add_term(a.concat(b), ca * cb);
            }
        }
        AssocElt { cap, terms: out }
    }

    /// `ab - ba`.
    pub fn commutator(&self, other: &AssocElt) -> AssocElt {
        self.product(other) - other.product(self)
    }
}

impl fmt::Display for AssocElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_terms(f, &self.terms, |w| w.to_string())
    }
}

/// `a · b` truncated at the common cap.
pub fn assoc_mul(a: &AssocElt, b: &AssocElt) -> Result<AssocElt, Error> {
    a.mul(b)
}

/// `Σ a^k / k!`. The constant term of `a` must vanish.
pub fn assoc_exp(a: &AssocElt) -> Result<AssocElt, Error> {
    if !a.constant_term().is_zero() {
        return Err(Error::NonzeroConstant);
    }
    Ok(exp_series(a))
}

pub(crate) fn exp_series(a: &AssocElt) -> AssocElt {
    let mut sum = AssocElt::one(a.cap);
    let mut term = AssocElt::one(a.cap);
    for k in 1..=a.cap {
        term = term.product(a).scale(&Rational::new(1.into(), k.into()));
        if term.is_zero() {
            break;
        }
        sum += &term;
    }
    sum
}

/// `Σ (-1)^{k+1} (a - 1)^k / k`. The constant term of `a` must be 1.
pub fn assoc_log(a: &AssocElt) -> Result<AssocElt, Error> {
    if !a.constant_term().is_one() {
        return Err(Error::ConstantNotOne);
    }
    let b = a - &AssocElt::one(a.cap);
    let mut sum = AssocElt::zero(a.cap);
    let mut power = AssocElt::one(a.cap);
    for k in 1..=a.cap {
        power = power.product(&b);
        if power.is_zero() {
            break;
        }
        let sign = if k % 2 == 1 { 1 } else { -1 };
        sum += &power.scale(&Rational::new(sign.into(), k.into()));
    }
    Ok(sum)
}

/// Expands Lyndon-basis brackets as commutators.
pub fn lie_to_assoc(u: &LieElt) -> AssocElt {
    let mut terms = Terms::new();
    for (w, c) in u.terms() {
        let b = basis(w.len());
        terms.add_scaled(&b.expansions[b.index[&w]], c);
    }
    AssocElt {
        cap: u.cap(),
        terms,
    }
}

/// `log(e^u e^v)` as a Lie element.
pub fn bch(u: &LieElt, v: &LieElt) -> Result<LieElt, Error> {
    if u.cap() != v.cap() {
        return Err(Error::CapMismatch {
            left: u.cap(),
            right: v.cap(),
        });
    }
    Ok(bch_unchecked(u, v))
}

pub(crate) fn bch_unchecked(u: &LieElt, v: &LieElt) -> LieElt {
    if u.is_zero() {
        return v.clone();
    }
    if v.is_zero() {
        return u.clone();
    }
    let eu = exp_series(&lie_to_assoc(u));
    let ev = exp_series(&lie_to_assoc(v));
    let log = assoc_log(&eu.product(&ev)).expect("group-like product");
    project_to_lie(&log)
}

/// Splits `a = a0 + ∂_x(a)·x + ∂_y(a)·y`.
pub fn decompose(a: &AssocElt) -> (Rational, AssocElt, AssocElt) {
    let mut dx = Terms::new();
    let mut dy = Terms::new();
    for (w, c) in a.terms() {
        let Some(last) = w.last() else { continue };
        let head = w.slice(0, w.len() - 1);
        match last {
            Letter::X => dx.add_term_ref(head, c),
            Letter::Y => dy.add_term_ref(head, c),
        }
    }
    (
        a.constant_term(),
        AssocElt {
            cap: a.cap,
            terms: dx,
        },
        AssocElt {
            cap: a.cap,
            terms: dy,
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::{lie_bracket, lie_from_assoc};

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn a(cap: usize, terms: &[(&str, i64, i64)]) -> AssocElt {
        AssocElt::from_word_terms(cap, terms.iter().map(|&(s, n, d)| (w(s), q(n, d))))
    }

    #[test]
    fn products() {
        assert_eq!(
            AssocElt::x(3).mul(&AssocElt::y(3)).unwrap(),
            a(3, &[("xy", 1, 1)])
        );
        let lhs = &AssocElt::one(3) + &AssocElt::x(3);
        let rhs = &AssocElt::one(3) + &AssocElt::y(3);
        assert_eq!(
            lhs.mul(&rhs).unwrap(),
            a(3, &[("1", 1, 1), ("x", 1, 1), ("y", 1, 1), ("xy", 1, 1)])
        );
        assert!(AssocElt::x(1).mul(&AssocElt::x(1)).unwrap().is_zero());
        assert!(AssocElt::x(1).mul(&AssocElt::x(2)).is_err());
    }

    #[test]
    fn exponentials() {
        assert_eq!(assoc_exp(&AssocElt::zero(3)).unwrap(), AssocElt::one(3));
        assert_eq!(
            assoc_exp(&AssocElt::x(2)).unwrap(),
            a(2, &[("1", 1, 1), ("x", 1, 1), ("xx", 1, 2)])
        );
        let xy = &AssocElt::x(2) + &AssocElt::y(2);
        assert_eq!(
            assoc_exp(&xy).unwrap(),
            a(
                2,
                &[
                    ("1", 1, 1),
                    ("x", 1, 1),
                    ("y", 1, 1),
                    ("xx", 1, 2),
                    ("xy", 1, 2),
                    ("yx", 1, 2),
                    ("yy", 1, 2)
                ]
            )
        );
        assert!(matches!(
            assoc_exp(&AssocElt::one(2)),
            Err(Error::NonzeroConstant)
        ));
    }

    #[test]
    fn logarithms() {
        assert!(assoc_log(&AssocElt::one(3)).unwrap().is_zero());
        let ex = assoc_exp(&AssocElt::x(5)).unwrap();
        assert_eq!(assoc_log(&ex).unwrap(), AssocElt::x(5));
        let one_xy = a(4, &[("1", 1, 1), ("xy", 1, 1)]);
        assert_eq!(
            assoc_log(&one_xy).unwrap(),
            a(4, &[("xy", 1, 1), ("xyxy", -1, 2)])
        );
        assert!(matches!(
            assoc_log(&AssocElt::x(2)),
            Err(Error::ConstantNotOne)
        ));
    }

    #[test]
    fn bch_low_degree() {
        let x = LieElt::x(2);
        let y = LieElt::y(2);
        let expected = &(&x + &y) + &LieElt::basis_element(2, w("xy")).scale(&q(1, 2));
        assert_eq!(bch(&x, &y).unwrap(), expected);
        assert_eq!(bch(&LieElt::x(4), &LieElt::zero(4)).unwrap(), LieElt::x(4));
    }

    #[test]
    fn bch_degree_three() {
        let x = LieElt::x(3);
        let y = LieElt::y(3);
        let xy = lie_bracket(&x, &y).unwrap();
        let yx = lie_bracket(&y, &x).unwrap();
        let expected = lie_bracket(&x, &xy).unwrap().scale(&q(1, 12))
            + lie_bracket(&y, &yx).unwrap().scale(&q(1, 12));
        assert_eq!(bch(&x, &y).unwrap().degree_part(3), expected);
    }

    #[test]
    fn decompositions() {
        assert_eq!(
            decompose(&a(3, &[("xy", 1, 1)])),
            (q(0, 1), AssocElt::zero(3), AssocElt::x(3))
        );
        assert_eq!(
            decompose(&a(3, &[("1", 1, 1), ("x", 1, 1)])),
            (q(1, 1), AssocElt::one(3), AssocElt::zero(3))
        );
        assert_eq!(
            decompose(&a(3, &[("xy", 1, 1), ("yx", -1, 1)])),
            (q(0, 1), -AssocElt::y(3), AssocElt::x(3))
        );
    }

    #[test]
    fn nested_commutator_expansion() {
        let x = LieElt::x(3);
        let y = LieElt::y(3);
        let u = lie_bracket(&x, &lie_bracket(&x, &y).unwrap()).unwrap();
        assert_eq!(
            lie_to_assoc(&u),
            a(3, &[("xxy", 1, 1), ("xyx", -2, 1), ("yxx", 1, 1)])
        );
        assert_eq!(
            lie_to_assoc(&lie_bracket(&x, &y).unwrap()),
            a(3, &[("xy", 1, 1), ("yx", -1, 1)])
        );
        assert_eq!(lie_from_assoc(&lie_to_assoc(&u)).unwrap(), u);
    }
}
