//! The KV equations and their truncations, the Duflo solver, and the
//! degree-by-degree extension of solutions.
//!
//! Level `n` means the equations are read in the truncated algebras seen by
//! an automorphism of `L_{≤n}`: the first equation holds in `L_{≤n}` and the
//! Jacobian equation in `cyc_{≤n-1}`, so the Duflo coefficients `r_2 ..
//! r_{n-1}` are determined. Exponents of degree `≥ n` are invisible at level
//! `n`; an extension step fixes the degree-`n` exponents and thereby moves a
//! solution from level `n` to level `n + 1`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::assoc::{bch_unchecked, lie_to_assoc, AssocElt};
use crate::cyc::{trace, CycElt, DufloTarget};
use crate::lie::{basis, bracket, LieElt};
use crate::linalg::{kernel_basis, rank, solve_linear, QMatrix};
use crate::tangential::{
    compose, divergence, jacobian, taut_exp, taut_inverse, taut_log, valuation, TAutElt, TDer,
    Valuation,
};
use crate::word::{words_of_len, Word};
use crate::{Error, Rational};

/// Which system a report refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    SolKV,
    KV,
    KRV,
    KrvLie,
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Variant::SolKV => "SolKV",
            Variant::KV => "KV",
            Variant::KRV => "KRV",
            Variant::KrvLie => "krv",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Duflo coefficients `r_k` for `2 ≤ k ≤ cap`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DufloSeries {
    cap: usize,
    coeffs: BTreeMap<usize, Rational>,
}

impl DufloSeries {
    /// Zero entries are dropped; indices outside `2..=cap` are rejected.
    pub fn new(
        cap: usize,
        coeffs: impl IntoIterator<Item = (usize, Rational)>,
    ) -> Result<Self, Error> {
        let mut map = BTreeMap::new();
        for (k, c) in coeffs {
            if !(2..=cap).contains(&k) {
                return Err(Error::InvalidDegree(format!(
                    "Duflo index {k} outside 2..={cap}"
                )));
            }
            if !c.is_zero() {
                map.insert(k, c);
            }
        }
        Ok(DufloSeries { cap, coeffs: map })
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(&k).cloned().unwrap_or_else(Rational::zero)
    }

    /// Nonzero coefficients in increasing `k`.
    pub fn iter(&self) -> impl Iterator<Item = (usize, &Rational)> + '_ {
        self.coeffs.iter().map(|(&k, c)| (k, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

/// Outcome of one of the checkers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KVReport {
    pub variant: Variant,
    pub degree: usize,
    /// Zero iff the first equation holds at this level.
    pub eq1_defect: LieElt,
    /// The derived Duflo series, or the residual proving there is none.
    pub duflo: Result<DufloSeries, CycElt>,
    pub passed: bool,
}

impl KVReport {
    fn new(
        variant: Variant,
        degree: usize,
        eq1_defect: LieElt,
        duflo: Result<DufloSeries, CycElt>,
    ) -> Self {
        let passed = eq1_defect.is_zero() && duflo.is_ok();
        KVReport {
            variant,
            degree,
            eq1_defect,
            duflo,
            passed,
        }
    }
}

/// `tr(w^k - x^k - y^k)` for `k = 2..=n`, all truncated at `n`.
fn patterns(n: usize, target: DufloTarget) -> Vec<CycElt> {
    if n < 2 {
        return Vec::new();
    }
    let w = match target {
        DufloTarget::Sum => &AssocElt::x(n) + &AssocElt::y(n),
        DufloTarget::Bch => lie_to_assoc(&bch_unchecked(&LieElt::x(n), &LieElt::y(n))),
    };
    let mut out = Vec::new();
    let mut wk = w.clone();
    for k in 2..=n {
        wk = wk.product(&w);
        let xk = AssocElt::word(n, Word::from_bits(k, 0));
        let yk = AssocElt::word(n, Word::from_bits(k, (1u64 << k) - 1));
        out.push(trace(&(&(&wk - &xk) - &yk)));
    }
    out
}

/// Solves `Σ_k r_k tr(w^k - x^k - y^k) = c` in `cyc_{≤n}`.
///
/// The pattern for `k` starts in degree `k` with coefficient `k` on the
/// necklace `x^{k-1} y`, so the system is triangular and the solution, if
/// any, is unique. On failure the residual after the triangular sweep is
/// returned; it is nonzero exactly when no solution exists.
pub fn solve_duflo(c: &CycElt, n: usize, target: DufloTarget) -> Result<DufloSeries, CycElt> {
    let mut residual = c.with_cap(n);
    let mut coeffs = Vec::new();
    for (i, p) in patterns(n, target).iter().enumerate() {
        let k = i + 2;
        let pivot = Word::from_bits(k, 1);
        let r = residual.coeff(pivot) / p.coeff(pivot);
        if !r.is_zero() {
            residual -= &p.scale(&r);
            coeffs.push((k, r));
        }
    }
    if residual.is_zero() {
        Ok(DufloSeries::new(n.max(1), coeffs).expect("indices in range"))
    } else {
        Err(residual)
    }
}

fn check_level(n: usize, cap: usize) -> Result<(), Error> {
    if n == 0 || n > cap {
        Err(Error::InvalidDegree(format!("level {n} outside 1..={cap}")))
    } else {
        Ok(())
    }
}

fn sum_xy(cap: usize) -> LieElt {
    &LieElt::x(cap) + &LieElt::y(cap)
}

/// Duflo part shared by the group-level checkers: `J(F)` read in
/// `cyc_{≤n-1}`.
fn group_duflo(f: &TAutElt, n: usize, target: DufloTarget) -> Result<DufloSeries, CycElt> {
    if n < 2 {
        return solve_duflo(&CycElt::zero(1), 1, target);
    }
    let j = jacobian(&f.with_cap(n - 1));
    solve_duflo(&j, n - 1, target)
}

fn group_check(
    f: &TAutElt,
    n: usize,
    variant: Variant,
    input: &LieElt,
    expected: &LieElt,
    target: DufloTarget,
) -> KVReport {
    let g = f.with_cap(n);
    let image = g.lie_action().apply(input);
    let defect = &image - expected;
    KVReport::new(variant, n, defect, group_duflo(f, n, target))
}

/// `F(bch(x, y)) = x + y` and `J(F) = tr(r(x+y) - r(x) - r(y))` at level `n`.
pub fn check_sol_kv(f: &TAutElt, n: usize) -> Result<KVReport, Error> {
    check_level(n, f.cap())?;
    let b = bch_unchecked(&LieElt::x(n), &LieElt::y(n));
    Ok(group_check(
        f,
        n,
        Variant::SolKV,
        &b,
        &sum_xy(n),
        DufloTarget::Sum,
    ))
}

/// `F(bch(x, y)) = bch(x, y)` and `J(F) = tr(r(bch) - r(x) - r(y))` at level `n`.
pub fn check_kv(f: &TAutElt, n: usize) -> Result<KVReport, Error> {
    check_level(n, f.cap())?;
    let b = bch_unchecked(&LieElt::x(n), &LieElt::y(n));
    Ok(group_check(f, n, Variant::KV, &b, &b, DufloTarget::Bch))
}

/// `F(x + y) = x + y` and `J(F) = tr(r(x+y) - r(x) - r(y))` at level `n`.
pub fn check_krv(f: &TAutElt, n: usize) -> Result<KVReport, Error> {
    check_level(n, f.cap())?;
    let s = sum_xy(n);
    Ok(group_check(f, n, Variant::KRV, &s, &s, DufloTarget::Sum))
}

/// `u(x + y) = 0` in `L_{≤n}` and `j(u) = tr(r(x+y) - r(x) - r(y))` in
/// `cyc_{≤n-1}`.
pub fn check_krv_lie(u: &TDer, n: usize) -> Result<KVReport, Error> {
    check_level(n, u.cap())?;
    let defect = crate::tangential::tder_apply(&u.with_cap(n), &sum_xy(n)).expect("equal caps");
    let duflo = if n < 2 {
        solve_duflo(&CycElt::zero(1), 1, DufloTarget::Sum)
    } else {
        solve_duflo(&divergence(&u.with_cap(n - 1)), n - 1, DufloTarget::Sum)
    };
    Ok(KVReport::new(Variant::KrvLie, n, defect, duflo))
}

fn require(report: &KVReport, what: &str) -> Result<(), Error> {
    if report.passed {
        Ok(())
    } else {
        Err(Error::Precondition(format!(
            "input does not satisfy {what} at level {}",
            report.degree
        )))
    }
}

/// Necklaces of length `n` in increasing order.
fn necklaces(n: usize) -> Vec<Word> {
    words_of_len(n).filter(|w| w.necklace() == *w).collect()
}

/// Column layout of the homogeneous degree-`n` system: normalized `a1`,
/// normalized `a2`, then `r_n` when `n ≥ 2`.
struct HomogeneousSystem {
    a1: Vec<Word>,
    a2: Vec<Word>,
    lie_rows: Vec<Word>,
    cyc_rows: Vec<Word>,
    matrix: QMatrix,
}

impl HomogeneousSystem {
    /// Rows: `[x, a1] + [y, a2]` in `L_{n+1}`, then `j(a) - r_n·pattern_n`
    /// in `cyc_n`.
    fn new(n: usize) -> Self {
        let words = &basis(n).words;
        let a1: Vec<Word> = words.iter().copied().filter(|&w| w != Word::X).collect();
        let a2: Vec<Word> = words.iter().copied().filter(|&w| w != Word::Y).collect();
        let with_r = n >= 2;
        let lie_rows = basis(n + 1).words.clone();
        let cyc_rows = necklaces(n);
        let lie_index: BTreeMap<Word, usize> =
            lie_rows.iter().enumerate().map(|(i, &w)| (w, i)).collect();
        let cyc_index: BTreeMap<Word, usize> = cyc_rows
            .iter()
            .enumerate()
            .map(|(i, &w)| (w, lie_rows.len() + i))
            .collect();
        let cols = a1.len() + a2.len() + usize::from(with_r);
        let mut matrix = QMatrix::zeros(lie_rows.len() + cyc_rows.len(), cols);
        let cap = n + 1;
        let blocks = [(&a1, 0usize, true), (&a2, a1.len(), false)];
        for (block, offset, first) in blocks {
            for (i, &w) in block.iter().enumerate() {
                let col = offset + i;
                let p = LieElt::basis_element(cap, w);
                let (gen, u) = if first {
                    (LieElt::x(cap), TDer::new(p.clone(), LieElt::zero(cap)))
                } else {
                    (LieElt::y(cap), TDer::new(LieElt::zero(cap), p.clone()))
                };
                for (row, c) in bracket(&gen, &p).terms() {
                    matrix.add_to(lie_index[&row], col, c);
                }
                for (row, c) in divergence(&u.expect("equal caps")).terms() {
                    matrix.add_to(cyc_index[&row], col, c);
                }
            }
        }
        if with_r {
            let pattern = patterns(n, DufloTarget::Sum).pop().expect("n ≥ 2");
            for (row, c) in pattern.terms() {
                matrix.add_to(cyc_index[&row], cols - 1, &-c.clone());
            }
        }
        HomogeneousSystem {
            a1,
            a2,
            lie_rows,
            cyc_rows,
            matrix,
        }
    }

    /// The derivation encoded by a solution vector, at the given cap.
    fn derivation(&self, v: &[Rational], cap: usize) -> TDer {
        let block = |words: &[Word], offset: usize| {
            let mut e = LieElt::zero(cap);
            for (i, &w) in words.iter().enumerate() {
                let c = &v[offset + i];
                if !c.is_zero() {
                    e.terms.add_term(w, c.clone());
                }
            }
            e
        };
        let u1 = block(&self.a1, 0);
        let u2 = block(&self.a2, self.a1.len());
        TDer::new(u1, u2).expect("equal caps")
    }

    fn rhs(&self, lie: &LieElt, cyc: &CycElt) -> Vec<Rational> {
        self.lie_rows
            .iter()
            .map(|&w| -lie.coeff(w))
            .chain(self.cyc_rows.iter().map(|&w| -cyc.coeff(w)))
            .collect()
    }
}

/// Moves a SolKV solution from level `n = F.cap` to level `n + 1`.
///
/// The degree-`n` exponents are corrected by `(a1, a2)` solving
/// `[x, a1] + [y, a2] = -(degree n+1 part of F(bch) - x - y)` and
/// `j(a) - r_n·pattern_n = -(degree n part of J(F))`. Free variables are set
/// to zero.
pub fn extend_solkv_step(f: &TAutElt) -> Result<TAutElt, Error> {
    let n = f.cap();
    require(&check_sol_kv(f, n)?, "SolKV")?;
    let cap = n + 1;
    let f0 = f.with_cap(cap);
    let b = bch_unchecked(&LieElt::x(cap), &LieElt::y(cap));
    let eq1 = (&f0.lie_action().apply(&b) - &sum_xy(cap)).degree_part(cap);
    let eq2 = jacobian(f).degree_part(n);
    let system = HomogeneousSystem::new(n);
    let sol = solve_linear(&system.matrix, &system.rhs(&eq1, &eq2))?;
    let v = sol
        .particular
        .ok_or(Error::ExtensionInconsistent { degree: cap })?;
    let a = system.derivation(&v, cap);
    TAutElt::new(f0.f1() + a.u1(), f0.f2() + a.u2())
}

/// Moves a KRV element from level `n = G.cap` to level `n + 1` by
/// exponentiating its logarithm. The degree-`n` part of the logarithm is kept
/// when it already satisfies the linearized equations and dropped otherwise.
pub fn extend_krv_step(g: &TAutElt) -> Result<TAutElt, Error> {
    let n = g.cap();
    require(&check_krv(g, n)?, "KRV")?;
    let cap = n + 1;
    let w = taut_log(g).with_cap(cap);
    let w = if check_krv_lie(&w, cap)?.passed {
        w
    } else {
        w.degree_range(1, n - 1)
    };
    Ok(taut_exp(&w))
}

fn pair_at_level(f: &TAutElt, g: &TAutElt, n: usize) -> Result<(TAutElt, TAutElt), Error> {
    check_level(n, f.cap())?;
    check_level(n, g.cap())?;
    Ok((f.with_cap(n), g.with_cap(n)))
}

/// `H = G∘F^{-1}` at cap `n`, the unique KRV element with `H^{-1}∘G = F`.
pub fn torsor_quotient(f: &TAutElt, g: &TAutElt, n: usize) -> Result<TAutElt, Error> {
    let (f, g) = pair_at_level(f, g, n)?;
    require(&check_sol_kv(&f, n)?, "SolKV")?;
    require(&check_sol_kv(&g, n)?, "SolKV")?;
    Ok(compose(&g, &taut_inverse(&f)))
}

/// `F∘G∘F^{-1}` at cap `n`, carrying KV to KRV along the solution `F`.
pub fn psi_conjugate(f: &TAutElt, g: &TAutElt, n: usize) -> Result<TAutElt, Error> {
    let (f, g) = pair_at_level(f, g, n)?;
    require(&check_sol_kv(&f, n)?, "SolKV")?;
    require(&check_kv(&g, n)?, "KV")?;
    Ok(compose(&compose(&f, &g), &taut_inverse(&f)))
}

/// Dimension and basis of the homogeneous degree-`n` part of `krv`: pairs
/// `(u1, u2)` with `[x, u1] + [y, u2] = 0` and `j(u)` a multiple of the
/// degree-`n` Duflo pattern. Basis elements have cap `n`.
pub fn krv_dim(n: usize) -> Result<(usize, Vec<TDer>), Error> {
    if n == 0 {
        return Err(Error::InvalidDegree("krv degree must be at least 1".into()));
    }
    let system = HomogeneousSystem::new(n);
    let basis: Vec<TDer> = kernel_basis(&system.matrix)
        .iter()
        .map(|v| system.derivation(v, n))
        .collect();
    Ok((basis.len(), basis))
}

/// Rank of the leading terms of `F^{-1}∘e^u∘F` over the degree-`n` krv
/// basis. Each conjugate is verified to solve the KV equations at the level
/// of `F` and to have valuation exactly `n`.
pub fn gr_leading_rank(f: &TAutElt, n: usize) -> Result<usize, Error> {
    let level = f.cap();
    if level < n + 1 {
        return Err(Error::Precondition(format!(
            "solution of level {level} cannot probe degree {n}"
        )));
    }
    require(&check_sol_kv(f, level)?, "SolKV")?;
    let (_, krv) = krv_dim(n)?;
    let finv = taut_inverse(f);
    let mut rows = Vec::new();
    for u in &krv {
        let g = compose(&compose(&finv, &taut_exp(&u.with_cap(level))), f);
        require(&check_kv(&g, level)?, "KV")?;
        if valuation(&g) != Valuation::Finite(n) {
            return Err(Error::Precondition(format!(
                "conjugate has valuation {} instead of {n}",
                valuation(&g)
            )));
        }
        rows.push(taut_log(&g).degree_part(n));
    }
    let words = &basis(n).words;
    let mut m = QMatrix::zeros(rows.len(), 2 * words.len());
    for (i, lead) in rows.iter().enumerate() {
        for (j, &w) in words.iter().enumerate() {
            m.set(i, j, lead.u1().coeff(w));
            m.set(i, words.len() + j, lead.u2().coeff(w));
        }
    }
    Ok(rank(&m))
}
