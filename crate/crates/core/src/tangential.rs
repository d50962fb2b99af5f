//! Tangential derivations and tangential automorphisms of the truncated free
//! Lie algebra.
//!
//! A derivation `u = (u1, u2)` acts by `x ↦ [x, u1]`, `y ↦ [y, u2]`. An
//! automorphism `F = (e^{f1}, e^{f2})` acts by `x ↦ e^{-f1} x e^{f1}`,
//! `y ↦ e^{-f2} y e^{f2}`. Both are stored modulo the kernel `Cx ⊕ Cy`: the
//! coefficient of `x` in the first component and of `y` in the second is
//! always zero. For automorphisms that representative is reached by
//! replacing `f1` with `bch(-a x, f1)`, which leaves the action unchanged.
//!
//! An automorphism with cap `N` carries exponents up to degree `N`, i.e. it
//! lives in `TAut / F_{N+1}`. Its action on `L_{≤N}` only sees exponents
//! of degree `< N`; the top degree matters for composition, logarithm and
//! the Jacobian.

use std::collections::HashMap;
use std::fmt;

use num_traits::Zero;

use crate::assoc::{bch_unchecked, decompose, lie_to_assoc, AssocElt};
use crate::cyc::{one_over, tder_act_unchecked, trace, CycElt};
use crate::lie::{basis, bracket, project_to_lie, LieElt};
use crate::word::{Letter, Word};
use crate::{Error, Rational};

fn check_caps(a: usize, b: usize) -> Result<(), Error> {
    if a == b {
        Ok(())
    } else {
        Err(Error::CapMismatch { left: a, right: b })
    }
}

/// Drops the kernel direction: coefficient of `letter` in degree one.
fn strip_generator(u: &LieElt, generator: Word) -> LieElt {
    let mut out = u.clone();
    out.terms.remove(generator);
    out
}

/// Tangential derivation `(u1, u2)`, normalized.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TDer {
    cap: usize,
    u1: LieElt,
    u2: LieElt,
}

impl TDer {
    pub fn new(u1: LieElt, u2: LieElt) -> Result<Self, Error> {
        check_caps(u1.cap(), u2.cap())?;
        Ok(TDer {
            cap: u1.cap(),
            u1: strip_generator(&u1, Word::X),
            u2: strip_generator(&u2, Word::Y),
        })
    }

    pub fn zero(cap: usize) -> Self {
        TDer {
            cap,
            u1: LieElt::zero(cap),
            u2: LieElt::zero(cap),
        }
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn u1(&self) -> &LieElt {
        &self.u1
    }

    pub fn u2(&self) -> &LieElt {
        &self.u2
    }

    pub fn is_zero(&self) -> bool {
        self.u1.is_zero() && self.u2.is_zero()
    }

    pub fn min_degree(&self) -> Option<usize> {
        match (self.u1.min_degree(), self.u2.min_degree()) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        }
    }

    pub fn degree_part(&self, d: usize) -> TDer {
        self.degree_range(d, d)
    }

    pub fn degree_range(&self, lo: usize, hi: usize) -> TDer {
        TDer {
            cap: self.cap,
            u1: self.u1.degree_range(lo, hi),
            u2: self.u2.degree_range(lo, hi),
        }
    }

    pub fn with_cap(&self, cap: usize) -> TDer {
        TDer {
            cap,
            u1: self.u1.with_cap(cap),
            u2: self.u2.with_cap(cap),
        }
    }

    pub fn scale(&self, s: &Rational) -> TDer {
        TDer {
            cap: self.cap,
            u1: self.u1.scale(s),
            u2: self.u2.scale(s),
        }
    }

    pub fn add(&self, other: &TDer) -> Result<TDer, Error> {
        check_caps(self.cap, other.cap)?;
        Ok(TDer {
            cap: self.cap,
            u1: &self.u1 + &other.u1,
            u2: &self.u2 + &other.u2,
        })
    }

    pub fn sub(&self, other: &TDer) -> Result<TDer, Error> {
        check_caps(self.cap, other.cap)?;
        Ok(TDer {
            cap: self.cap,
            u1: &self.u1 - &other.u1,
            u2: &self.u2 - &other.u2,
        })
    }

    /// `[x, u1]` and `[y, u2]` in the associative algebra.
    fn generator_images(&self) -> (AssocElt, AssocElt) {
        let x = AssocElt::x(self.cap);
        let y = AssocElt::y(self.cap);
        (
            x.commutator(&lie_to_assoc(&self.u1)),
            y.commutator(&lie_to_assoc(&self.u2)),
        )
    }

    /// Extends the derivation to the associative algebra by the Leibniz rule.
    pub fn act_assoc(&self, a: &AssocElt) -> AssocElt {
        let cap = a.cap();
        let (ix, iy) = self.generator_images();
        let (ix, iy) = (ix.with_cap(cap), iy.with_cap(cap));
        let mut out = AssocElt::zero(cap);
        for (w, c) in a.terms() {
            let n = w.len();
            if n == 0 {
                continue;
            }
            let room = cap + 1 - n;
            for i in 0..n {
                let image = match w.letter(i) {
                    Letter::X => &ix,
                    Letter::Y => &iy,
                };
                let left = w.slice(0, i);
                let right = w.slice(i + 1, n);
                for (t, ct) in image.terms() {
                    if t.len() > room {
                        break;
                    }
                    out.terms.add_term(left.concat(t).concat(right), c * ct);
                }
            }
        }
        out
    }
}

impl fmt::Display for TDer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.u1, self.u2)
    }
}

/// `u(w)` for a Lie element `w`.
pub fn tder_apply(u: &TDer, w: &LieElt) -> Result<LieElt, Error> {
    check_caps(u.cap, w.cap())?;
    Ok(project_to_lie(&u.act_assoc(&lie_to_assoc(w))))
}

/// Commutator `u∘v - v∘u` of derivations.
pub fn tder_bracket(u: &TDer, v: &TDer) -> Result<TDer, Error> {
    check_caps(u.cap, v.cap)?;
    let apply = |d: &TDer, w: &LieElt| project_to_lie(&d.act_assoc(&lie_to_assoc(w)));
    let c1 = apply(u, &v.u1) - apply(v, &u.u1) + bracket(&u.u1, &v.u1);
    let c2 = apply(u, &v.u2) - apply(v, &u.u2) + bracket(&u.u2, &v.u2);
    TDer::new(c1, c2)
}

/// Divergence `tr(∂_x(u1) x + ∂_y(u2) y)`.
pub fn divergence(u: &TDer) -> CycElt {
    let (_, dx, _) = decompose(&lie_to_assoc(&u.u1));
    let (_, _, dy) = decompose(&lie_to_assoc(&u.u2));
    let cap = u.cap;
    trace(&(dx.product(&AssocElt::x(cap)) + dy.product(&AssocElt::y(cap))))
}

/// `e^{-f} g e^{f} = Σ_k ad_{-f}^k(g)/k!` in the associative algebra.
fn conjugate(g: &AssocElt, f: &AssocElt) -> AssocElt {
    let mut sum = g.clone();
    let mut term = g.clone();
    for k in 1..=g.cap() {
        term = term.commutator(f).scale(&one_over(k));
        if term.is_zero() {
            break;
        }
        sum += &term;
    }
    sum
}

/// Tangential automorphism `(e^{f1}, e^{f2})`, normalized.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TAutElt {
    cap: usize,
    f1: LieElt,
    f2: LieElt,
}

/// Lowest degree of a nonzero exponent; infinite for the identity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(usize),
    Infinite,
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(n) => write!(f, "{n}"),
            Valuation::Infinite => f.write_str("inf"),
        }
    }
}

impl TAutElt {
    /// Builds `(e^{f1}, e^{f2})` and moves it to the normalized representative.
    pub fn new(f1: LieElt, f2: LieElt) -> Result<Self, Error> {
        check_caps(f1.cap(), f2.cap())?;
        Ok(TAutElt {
            cap: f1.cap(),
            f1: normalize_exponent(&f1, Word::X),
            f2: normalize_exponent(&f2, Word::Y),
        })
    }

    pub fn identity(cap: usize) -> Self {
        TAutElt {
            cap,
            f1: LieElt::zero(cap),
            f2: LieElt::zero(cap),
        }
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn f1(&self) -> &LieElt {
        &self.f1
    }

    pub fn f2(&self) -> &LieElt {
        &self.f2
    }

    pub fn is_identity(&self) -> bool {
        self.f1.is_zero() && self.f2.is_zero()
    }

    /// Same exponents under a different cap (drops or pads degrees).
    pub fn with_cap(&self, cap: usize) -> TAutElt {
        TAutElt {
            cap,
            f1: self.f1.with_cap(cap),
            f2: self.f2.with_cap(cap),
        }
    }

    /// Image in the automorphism group of `L_{≤n}`: exponents of degree
    /// `≥ n` act trivially there and are dropped. Two solutions "agree up
    /// to degree n" exactly when their projections coincide.
    pub fn tower_project(&self, n: usize) -> Result<TAutElt, Error> {
        if n == 0 || n > self.cap + 1 {
            return Err(Error::InvalidDegree(format!(
                "cannot project cap {} element to level {n}",
                self.cap
            )));
        }
        let mut out = self.with_cap(n);
        out.f1 = out.f1.degree_range(1, n - 1);
        out.f2 = out.f2.degree_range(1, n - 1);
        Ok(out)
    }

    /// `(e^{-f1} x e^{f1}, e^{-f2} y e^{f2})` in the associative algebra.
    pub(crate) fn generator_images(&self) -> (AssocElt, AssocElt) {
        let cap = self.cap;
        (
            conjugate(&AssocElt::x(cap), &lie_to_assoc(&self.f1)),
            conjugate(&AssocElt::y(cap), &lie_to_assoc(&self.f2)),
        )
    }

    /// Applies the automorphism to the associative algebra (substituting the
    /// conjugated generators into every word).
    pub fn act_assoc(&self, a: &AssocElt) -> AssocElt {
        let cap = a.cap();
        let (ix, iy) = self.generator_images();
        let (ix, iy) = (ix.with_cap(cap), iy.with_cap(cap));
        let mut memo: HashMap<Word, AssocElt> = HashMap::new();
        memo.insert(Word::EMPTY, AssocElt::one(cap));
        let mut out = AssocElt::zero(cap);
        for (w, c) in a.terms() {
            let img = word_image(w, &ix, &iy, &mut memo);
            out.terms.add_scaled(&img.terms, c);
        }
        out
    }

    pub(crate) fn lie_action(&self) -> LieAction {
        LieAction::new(self)
    }
}

fn word_image(
    w: Word,
    ix: &AssocElt,
    iy: &AssocElt,
    memo: &mut HashMap<Word, AssocElt>,
) -> AssocElt {
    if let Some(img) = memo.get(&w) {
        return img.clone();
    }
    let n = w.len();
    let prefix = word_image(w.slice(0, n - 1), ix, iy, memo);
    let last = match w.letter(n - 1) {
        Letter::X => ix,
        Letter::Y => iy,
    };
    let img = prefix.product(last);
    memo.insert(w, img.clone());
    img
}

impl fmt::Display for TAutElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(e^[{}], e^[{}])", self.f1, self.f2)
    }
}

fn normalize_exponent(f: &LieElt, generator: Word) -> LieElt {
    let a = f.coeff(generator);
    if a.is_zero() {
        return f.clone();
    }
    let shift = LieElt::basis_element(f.cap(), generator).scale(&-a);
    let mut out = bch_unchecked(&shift, f);
    // The shift cancels the degree-one coefficient exactly; remove any
    // rounding-free leftover from the representation as well.
    out.terms.remove(generator);
    out
}

/// An automorphism evaluated on the Lyndon basis, reusable across many
/// applications.
pub(crate) struct LieAction {
    cap: usize,
    images: HashMap<Word, AssocElt>,
}

impl LieAction {
    fn new(f: &TAutElt) -> Self {
        let cap = f.cap;
        let (ix, iy) = f.generator_images();
        let mut images = HashMap::new();
        images.insert(Word::X, ix);
        images.insert(Word::Y, iy);
        for d in 2..=cap {
            for &w in &basis(d).words {
                let (u, v) = w.standard_factorization().expect("degree ≥ 2");
                let img = images[&u].commutator(&images[&v]);
                images.insert(w, img);
            }
        }
        LieAction { cap, images }
    }

    pub(crate) fn apply_assoc(&self, u: &LieElt) -> AssocElt {
        debug_assert_eq!(u.cap(), self.cap);
        let mut out = AssocElt::zero(self.cap);
        for (w, c) in u.terms() {
            out.terms.add_scaled(&self.images[&w].terms, c);
        }
        out
    }

    pub(crate) fn apply(&self, u: &LieElt) -> LieElt {
        project_to_lie(&self.apply_assoc(u))
    }
}

/// `F(w)` for a Lie element `w`.
pub fn taut_apply(f: &TAutElt, w: &LieElt) -> Result<LieElt, Error> {
    check_caps(f.cap, w.cap())?;
    Ok(f.lie_action().apply(w))
}

/// `F∘G`, with exponents `(bch(f1, F(g1)), bch(f2, F(g2)))`.
pub fn taut_compose(f: &TAutElt, g: &TAutElt) -> Result<TAutElt, Error> {
    check_caps(f.cap, g.cap)?;
    Ok(compose(f, g))
}

pub(crate) fn compose(f: &TAutElt, g: &TAutElt) -> TAutElt {
    if g.is_identity() {
        return f.clone();
    }
    if f.is_identity() {
        return g.clone();
    }
    let act = f.lie_action();
    let h1 = bch_unchecked(&f.f1, &act.apply(&g.f1));
    let h2 = bch_unchecked(&f.f2, &act.apply(&g.f2));
    TAutElt::new(h1, h2).expect("equal caps")
}

/// Inverse automorphism. Uses the fixed point `g_i = -G(f_i)`, which gains
/// one correct degree per round.
pub fn taut_inverse(f: &TAutElt) -> TAutElt {
    let mut g = TAutElt::identity(1);
    for d in 1..=f.cap {
        let fd = f.with_cap(d);
        let act = g.with_cap(d).lie_action();
        g = TAutElt::new(-act.apply(&fd.f1), -act.apply(&fd.f2)).expect("equal caps");
    }
    g.with_cap(f.cap)
}

/// `e^u` as a normalized exponent pair.
pub fn taut_exp(u: &TDer) -> TAutElt {
    let cap = u.cap;
    if u.is_zero() {
        return TAutElt::identity(cap);
    }
    // The degree-`cap` exponent only shows up in degree `cap + 1` of F(x).
    let big = u.with_cap(cap + 1);
    let f1 = exponent_from_image(&exp_derivation(&big, &AssocElt::x(cap + 1)), Letter::X);
    let f2 = exponent_from_image(&exp_derivation(&big, &AssocElt::y(cap + 1)), Letter::Y);
    TAutElt::new(f1.with_cap(cap), f2.with_cap(cap)).expect("equal caps")
}

/// `Σ u^k(a)/k!`.
fn exp_derivation(u: &TDer, a: &AssocElt) -> AssocElt {
    let mut sum = a.clone();
    let mut term = a.clone();
    for k in 1..=a.cap() {
        term = u.act_assoc(&term).scale(&one_over(k));
        if term.is_zero() {
            break;
        }
        sum += &term;
    }
    sum
}

/// Finds `f` (Lie, no generator component) with `e^{-f} g e^{f} = image`
/// where `g` is the generator `letter`, one degree at a time.
fn exponent_from_image(image: &AssocElt, letter: Letter) -> LieElt {
    let cap = image.cap();
    let gen = match letter {
        Letter::X => Word::X,
        Letter::Y => Word::Y,
    };
    let mut f = LieElt::zero(cap);
    for d in 1..cap {
        let conj = conjugate(&AssocElt::word(cap, gen), &lie_to_assoc(&f));
        let residual = (image - &conj).degree_part(d + 1);
        if residual.is_zero() {
            continue;
        }
        let step = solve_commutator(&residual, letter, d);
        f += &project_to_lie(&step);
    }
    f
}

/// Solves `g f - f g = r` for homogeneous `f` of degree `d`, where `g` is a
/// single letter and `r` is known to be in the image. Only coefficients of
/// Lyndon words of `f` are produced, which is all the Lie projection reads.
fn solve_commutator(r: &AssocElt, letter: Letter, d: usize) -> AssocElt {
    let cap = r.cap();
    let (gen, other) = match letter {
        Letter::X => (Word::X, Letter::Y),
        Letter::Y => (Word::Y, Letter::X),
    };
    let mut out = AssocElt::zero(cap);
    for &v in &basis(d).words {
        // v = v'' other gen^k; c_v = Σ_i r[gen^{i+1} v'' other gen^{k-i}]
        let Some(pos) = (0..d).rev().find(|&i| v.letter(i) == other) else {
            continue;
        };
        let k = d - 1 - pos;
        let core = v.slice(0, pos + 1);
        let mut c = Rational::zero();
        for i in 0..=k {
            let lead = Word::from_bits(
                i + 1,
                if gen == Word::Y {
                    (1 << (i + 1)) - 1
                } else {
                    0
                },
            );
            let tail = Word::from_bits(
                k - i,
                if gen == Word::Y {
                    (1 << (k - i)) - 1
                } else {
                    0
                },
            );
            c += r.coeff(lead.concat(core).concat(tail));
        }
        out.terms.add_term(v, c);
    }
    out
}

/// The unique derivation `u` with `e^u = F`, built degree by degree.
pub fn taut_log(f: &TAutElt) -> TDer {
    let cap = f.cap;
    let mut u = TDer::zero(cap);
    for d in 1..=cap {
        let e = taut_exp(&u.with_cap(d));
        let fd = f.with_cap(d);
        let c1 = fd.f1.degree_part(d) - e.f1.degree_part(d);
        let c2 = fd.f2.degree_part(d) - e.f2.degree_part(d);
        if c1.is_zero() && c2.is_zero() {
            continue;
        }
        u.u1 += &c1.with_cap(cap);
        u.u2 += &c2.with_cap(cap);
    }
    u
}

/// Non-commutative Jacobian `J(e^w) = Σ_k w^k·j(w)/(k+1)!`.
pub fn jacobian(f: &TAutElt) -> CycElt {
    let w = taut_log(f);
    let jw = divergence(&w);
    let mut sum = jw.clone();
    let mut term = jw;
    for k in 1..=f.cap {
        term = tder_act_unchecked(&w, &term).scale(&one_over(k + 1));
        if term.is_zero() {
            break;
        }
        sum += &term;
    }
    sum
}

/// `F^{-1}∘G^{-1}∘F∘G`.
pub fn group_commutator(f: &TAutElt, g: &TAutElt) -> Result<TAutElt, Error> {
    check_caps(f.cap, g.cap)?;
    let fi = taut_inverse(f);
    let gi = taut_inverse(g);
    Ok(compose(&compose(&compose(&fi, &gi), f), g))
}

pub fn valuation(f: &TAutElt) -> Valuation {
    match (f.f1.min_degree(), f.f2.min_degree()) {
        (None, None) => Valuation::Infinite,
        (a, b) => Valuation::Finite(a.unwrap_or(usize::MAX).min(b.unwrap_or(usize::MAX))),
    }
}

/// Projection `TAut_{≤cap} → TAut_{≤n}` dropping exponents above degree `n`.
pub fn truncate(f: &TAutElt, n: usize) -> Result<TAutElt, Error> {
    if n == 0 || n > f.cap {
        return Err(Error::InvalidDegree(format!(
            "cannot truncate cap {} element to {n}",
            f.cap
        )));
    }
    Ok(f.with_cap(n))
}
