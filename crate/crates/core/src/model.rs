//! Exact matrix realization of the generators `T_u` and the diagonal
//! representation `φ` on `ℓ²(X)` for a finite shift space `X`.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::shift::{Alphabet, EventuallyPeriodicPoint, ShiftPresentation, Word};

/// Square matrix of exact rationals.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    n: usize,
    data: Vec<BigRational>,
}

impl RationalMatrix {
    pub fn zeros(n: usize) -> Self {
        RationalMatrix {
            n,
            data: vec![BigRational::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::diagonal(&vec![BigRational::one(); n])
    }

    pub fn diagonal(values: &[BigRational]) -> Self {
        let mut m = Self::zeros(values.len());
        for (i, v) in values.iter().enumerate() {
            m[(i, i)] = v.clone();
        }
        m
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| i == j || self[(i, j)].is_zero()))
    }

    pub fn diagonal_entries(&self) -> Vec<BigRational> {
        (0..self.n).map(|i| self[(i, i)].clone()).collect()
    }

    /// The adjoint; entries are real, so this is the transpose.
    pub fn adjoint(&self) -> Self {
        let mut m = Self::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                m[(j, i)] = self[(i, j)].clone();
            }
        }
        m
    }

    pub fn rank(&self) -> usize {
        let mut a = self.clone();
        let mut rank = 0;
        for col in 0..self.n {
            let Some(p) = (rank..self.n).find(|&r| !a[(r, col)].is_zero()) else {
                continue;
            };
            a.swap_rows(rank, p);
            for r in 0..self.n {
                if r != rank && !a[(r, col)].is_zero() {
                    let q = &a[(r, col)] / &a[(rank, col)];
                    for c in 0..self.n {
                        let v = &a[(rank, c)] * &q;
                        a[(r, c)] -= v;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    /// Gauss–Jordan inverse.
    pub fn inverse(&self) -> Result<Self> {
        let n = self.n;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let p = (col..n).find(|&r| !a[(r, col)].is_zero()).ok_or(Error::Singular)?;
            a.swap_rows(col, p);
            inv.swap_rows(col, p);
            let pivot = a[(col, col)].clone();
            for c in 0..n {
                a[(col, c)] /= &pivot;
                inv[(col, c)] /= &pivot;
            }
            for r in 0..n {
                if r != col && !a[(r, col)].is_zero() {
                    let q = a[(r, col)].clone();
                    for c in 0..n {
                        let (x, y) = (&a[(col, c)] * &q, &inv[(col, c)] * &q);
                        a[(r, c)] -= x;
                        inv[(r, c)] -= y;
                    }
                }
            }
        }
        Ok(inv)
    }

    fn swap_rows(&mut self, i: usize, k: usize) {
        if i != k {
            for c in 0..self.n {
                self.data.swap(i * self.n + c, k * self.n + c);
            }
        }
    }

    pub fn rows(&self) -> Vec<Vec<String>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self[(i, j)].to_string()).collect())
            .collect()
    }
}

impl std::ops::Index<(usize, usize)> for RationalMatrix {
    type Output = BigRational;
    fn index(&self, (i, j): (usize, usize)) -> &BigRational {
        &self.data[i * self.n + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RationalMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigRational {
        &mut self.data[i * self.n + j]
    }
}

impl Mul for &RationalMatrix {
    type Output = RationalMatrix;
    fn mul(self, rhs: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.n, rhs.n);
        let mut out = RationalMatrix::zeros(self.n);
        for i in 0..self.n {
            for k in 0..self.n {
                if self[(i, k)].is_zero() {
                    continue;
                }
                for j in 0..self.n {
                    let v = &self[(i, k)] * &rhs[(k, j)];
                    out[(i, j)] += v;
                }
            }
        }
        out
    }
}

impl Add for &RationalMatrix {
    type Output = RationalMatrix;
    fn add(self, rhs: &RationalMatrix) -> RationalMatrix {
        RationalMatrix {
            n: self.n,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &RationalMatrix {
    type Output = RationalMatrix;
    fn sub(self, rhs: &RationalMatrix) -> RationalMatrix {
        RationalMatrix {
            n: self.n,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self.rows().iter().map(|r| format!("[{}]", r.join(","))).collect();
        write!(f, "[{}]", rows.join(","))
    }
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A function on the points of `X`, one value per basis point.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FunctionOnX(pub Vec<BigRational>);

impl FunctionOnX {
    pub fn constant(n: usize, c: i64) -> Self {
        FunctionOnX(vec![BigRational::from_integer(c.into()); n])
    }

    pub fn from_ints(values: &[i64]) -> Self {
        FunctionOnX(values.iter().map(|&v| BigRational::from_integer(v.into())).collect())
    }

    pub fn values(&self) -> &[BigRational] {
        &self.0
    }

    pub fn mul(&self, other: &FunctionOnX) -> FunctionOnX {
        FunctionOnX(self.0.iter().zip(&other.0).map(|(a, b)| a * b).collect())
    }
}

/// `ℓ²(X)` with basis `(e_x)` for a finite shift `X`, points in canonical order.
#[derive(Clone, Debug)]
pub struct FiniteModel {
    alphabet: Alphabet,
    basis: Vec<EventuallyPeriodicPoint>,
    index: HashMap<EventuallyPeriodicPoint, usize>,
}

impl FiniteModel {
    pub fn new(p: &ShiftPresentation) -> Result<Self> {
        let ShiftPresentation::Finite(f) = p else {
            return Err(Error::Unsupported(
                "the operator model needs a finite presentation".into(),
            ));
        };
        let basis: Vec<EventuallyPeriodicPoint> = f.points().cloned().collect();
        let index = basis.iter().cloned().enumerate().map(|(i, x)| (x, i)).collect();
        Ok(FiniteModel {
            alphabet: p.alphabet().clone(),
            basis,
            index,
        })
    }

    pub fn n(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[EventuallyPeriodicPoint] {
        &self.basis
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    fn position(&self, x: &EventuallyPeriodicPoint) -> Option<usize> {
        self.index.get(x).copied()
    }

    fn shifted(&self, i: usize) -> usize {
        self.position(&self.basis[i].shift()).expect("σ-closed")
    }

    /// Indices `j` with `σ^n(x_j) = x_i`.
    fn preimages(&self, i: usize, n: usize) -> Vec<usize> {
        (0..self.n())
            .filter(|&j| self.position(&self.basis[j].shift_by(n)) == Some(i))
            .collect()
    }

    /// `T_u e_x = e_{ux}` when `ux ∈ X`, else `0`.
    pub fn op_t(&self, u: &Word) -> Result<RationalMatrix> {
        self.alphabet.check_word(u)?;
        let mut m = RationalMatrix::zeros(self.n());
        for (j, x) in self.basis.iter().enumerate() {
            if let Some(i) = self.position(&x.prepend(u)) {
                m[(i, j)] = BigRational::one();
            }
        }
        Ok(m)
    }

    /// `φ(f) e_x = f(x) e_x`.
    pub fn op_phi(&self, f: &FunctionOnX) -> RationalMatrix {
        RationalMatrix::diagonal(&f.0)
    }

    /// `(Σ_a T_a)* x (Σ_b T_b)`.
    pub fn op_lambda_x(&self, x: &RationalMatrix) -> RationalMatrix {
        let s = self.sum_t(1);
        &(&s.adjoint() * x) * &s
    }

    /// `Σ_{|u| = n} T_u`.
    pub fn sum_t(&self, n: usize) -> RationalMatrix {
        self.alphabet
            .words_of_length(n)
            .iter()
            .map(|u| self.op_t(u).expect("words over the model alphabet"))
            .fold(RationalMatrix::zeros(self.n()), |acc, t| &acc + &t)
    }

    /// `χ_{C(u, v)}`, `C(u, v) = { v·y : y ∈ X, u·y ∈ X }`.
    pub fn fn_cylinder(&self, u: &Word, v: &Word) -> FunctionOnX {
        FunctionOnX(
            self.basis
                .iter()
                .map(|x| {
                    let inside = x
                        .strip_prefix(v)
                        .is_some_and(|y| self.index.contains_key(&y) && self.index.contains_key(&y.prepend(u)));
                    if inside { BigRational::one() } else { BigRational::zero() }
                })
                .collect(),
        )
    }

    /// `α(f)(x) = f(σ(x))`.
    pub fn fn_alpha(&self, f: &FunctionOnX) -> FunctionOnX {
        self.fn_alpha_n(1, f)
    }

    pub fn fn_alpha_n(&self, n: usize, f: &FunctionOnX) -> FunctionOnX {
        FunctionOnX(
            (0..self.n())
                .map(|i| {
                    let j = self.position(&self.basis[i].shift_by(n)).expect("σ-closed");
                    f.0[j].clone()
                })
                .collect(),
        )
    }

    /// One-step transfer operator: average over `σ⁻¹(x)`, zero off `σ(X)`.
    pub fn fn_l(&self, f: &FunctionOnX) -> FunctionOnX {
        self.fn_l_n(1, f)
    }

    /// Average over `σ⁻ⁿ(x)`, zero off `σⁿ(X)`.
    pub fn fn_l_n(&self, n: usize, f: &FunctionOnX) -> FunctionOnX {
        FunctionOnX(
            (0..self.n())
                .map(|i| {
                    let pre = self.preimages(i, n);
                    if pre.is_empty() {
                        return BigRational::zero();
                    }
                    let total: BigRational = pre.iter().map(|&j| f.0[j].clone()).sum();
                    total / BigRational::from_integer(BigInt::from(pre.len()))
                })
                .collect(),
        )
    }

    /// `λ_w(f)(x) = f(wx)` if `wx ∈ X`, else `0`.
    pub fn fn_lambda(&self, w: &Word, f: &FunctionOnX) -> FunctionOnX {
        FunctionOnX(
            self.basis
                .iter()
                .map(|x| match self.position(&x.prepend(w)) {
                    Some(j) => f.0[j].clone(),
                    None => BigRational::zero(),
                })
                .collect(),
        )
    }

    /// `x ↦ #σ⁻ⁿ({σⁿ(x)})`.
    pub fn fn_preimage_count(&self, n: usize) -> FunctionOnX {
        FunctionOnX(
            (0..self.n())
                .map(|i| {
                    let target = (0..n).fold(i, |j, _| self.shifted(j));
                    BigRational::from_integer(BigInt::from(self.preimages(target, n).len()))
                })
                .collect(),
        )
    }

    fn words_up_to(&self, l: usize) -> Vec<Word> {
        self.alphabet.words_up_to(l)
    }

    /// Cylinder indicators for `|u|, |v| ≤ L`, without repeats.
    pub fn cylinder_functions(&self, l: usize) -> Vec<FunctionOnX> {
        let words = self.words_up_to(l);
        let set: BTreeSet<FunctionOnX> = words
            .iter()
            .flat_map(|u| words.iter().map(move |v| (u, v)))
            .map(|(u, v)| self.fn_cylinder(u, v))
            .collect();
        set.into_iter().collect()
    }

    /// Seeded random functions with small rational values.
    pub fn random_functions(&self, count: usize, seed: u64) -> Vec<FunctionOnX> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..count)
            .map(|_| {
                FunctionOnX(
                    (0..self.n())
                        .map(|_| {
                            BigRational::new(rng.gen_range(-9i64..=9).into(), rng.gen_range(1i64..=5).into())
                        })
                        .collect(),
                )
            })
            .collect()
    }

    fn render(&self, w: &Word) -> String {
        if w.is_empty() { "e".to_string() } else { self.alphabet.render(w) }
    }
}

/// Pass/fail tally for one identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ItemReport {
    pub name: String,
    pub checked: usize,
    pub failed: usize,
    pub first_counterexample: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub items: Vec<ItemReport>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.items.iter().all(|i| i.failed == 0)
    }

    pub fn violations(&self) -> usize {
        self.items.iter().map(|i| i.failed).sum()
    }
}

struct Tally(ItemReport);

impl Tally {
    fn new(name: &str) -> Self {
        Tally(ItemReport {
            name: name.to_string(),
            checked: 0,
            failed: 0,
            first_counterexample: None,
        })
    }

    fn check(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.0.checked += 1;
        if !ok {
            self.0.failed += 1;
            if self.0.first_counterexample.is_none() {
                self.0.first_counterexample = Some(detail());
            }
        }
    }
}

/// `T_u T_v = T_{uv}` and `φ(χ_{C(u,v)}) = T_v T_u* T_u T_v*` for `|u|, |v| ≤ L`.
pub fn verify_representation(m: &FiniteModel, l: usize) -> VerifyReport {
    let words = m.words_up_to(l);
    let t: HashMap<&Word, RationalMatrix> = words.iter().map(|u| (u, m.op_t(u).unwrap())).collect();
    let mut product = Tally::new("T_u T_v = T_uv");
    let mut cylinder = Tally::new("phi(chi_C(u,v)) = T_v T_u* T_u T_v*");
    for u in &words {
        for v in &words {
            let lhs = &t[u] * &t[v];
            let rhs = m.op_t(&u.concat(v)).unwrap();
            product.check(lhs == rhs, || {
                format!("u={}, v={}: {} vs {}", m.render(u), m.render(v), lhs, rhs)
            });
            let phi = m.op_phi(&m.fn_cylinder(u, v));
            let rhs = &(&(&t[v] * &t[u].adjoint()) * &t[u]) * &t[v].adjoint();
            cylinder.check(phi == rhs, || {
                format!("u={}, v={}: {} vs {}", m.render(u), m.render(v), phi, rhs)
            });
        }
    }
    VerifyReport {
        items: vec![product.0, cylinder.0],
    }
}

/// Unit, range and source projections, partial isometries, orthogonality.
pub fn verify_structure(m: &FiniteModel, l: usize) -> VerifyReport {
    let words = m.words_up_to(l);
    let id = RationalMatrix::identity(m.n());
    let mut unit = Tally::new("T_e = T_e* = T_e^2 = 1");
    let t_e = m.op_t(&Word::empty()).unwrap();
    unit.check(t_e == id && t_e.adjoint() == id && &t_e * &t_e == id, || format!("T_e = {t_e}"));

    let mut projections = Tally::new("T_u T_u* = chi_C(e,u), T_u* T_u = chi_C(u,e)");
    let mut partial = Tally::new("T_u T_u* T_u = T_u, T_u* T_u T_u* = T_u*");
    let mut orthogonal = Tally::new("T_u* T_v = delta_uv chi_C(u,e) for |u| = |v|");
    let e = Word::empty();
    for u in &words {
        let tu = m.op_t(u).unwrap();
        let tus = tu.adjoint();
        let range = &tu * &tus;
        let source = &tus * &tu;
        projections.check(
            range == m.op_phi(&m.fn_cylinder(&e, u)) && source == m.op_phi(&m.fn_cylinder(u, &e)),
            || format!("u={}: T_u T_u* = {range}, T_u* T_u = {source}", m.render(u)),
        );
        partial.check(&range * &tu == tu && &source * &tus == tus, || format!("u={}", m.render(u)));
        for v in words.iter().filter(|v| v.len() == u.len()) {
            let lhs = &tus * &m.op_t(v).unwrap();
            let rhs = if u == v { m.op_phi(&m.fn_cylinder(u, &e)) } else { RationalMatrix::zeros(m.n()) };
            orthogonal.check(lhs == rhs, || {
                format!("u={}, v={}: {} vs {}", m.render(u), m.render(v), lhs, rhs)
            });
        }
    }
    VerifyReport {
        items: vec![unit.0, projections.0, partial.0, orthogonal.0],
    }
}

/// The six identities linking `λ_w`, `α^n` and `𝓛^n` with the generators,
/// for `|w|, n ≤ L` and `f` ranging over cylinder indicators and seeded
/// random functions. `𝓛^n` is the average over `σ⁻ⁿ(x)`.
pub fn verify_prop_structure(m: &FiniteModel, l: usize) -> Result<VerifyReport> {
    let mut functions = m.cylinder_functions(l);
    functions.extend(m.random_functions(4, 0x5eed));
    let phis: Vec<RationalMatrix> = functions.iter().map(|f| m.op_phi(f)).collect();
    let words = m.words_up_to(l);
    let mut lambda_conj = Tally::new("lambda_w(f) = T_w* f T_w");
    let mut lambda_comm = Tally::new("T_w* f = lambda_w(f) T_w*");
    let mut alpha_sum = Tally::new("alpha^n(f) = sum_u T_u f T_u*");
    let mut alpha_comm = Tally::new("T_w f = alpha^n(f) T_w");
    let mut count = Tally::new("sum_uv T_u T_v* T_v T_u* = #preimages, invertible");
    let mut transfer = Tally::new("L^n(f) = S* D^-1 f S");

    for w in &words {
        let tw = m.op_t(w)?;
        let tws = tw.adjoint();
        for (f, phi) in functions.iter().zip(&phis) {
            let lam = m.op_phi(&m.fn_lambda(w, f));
            lambda_conj.check(lam == &(&tws * phi) * &tw, || format!("w={}, f={:?}", m.render(w), f.0));
            lambda_comm.check(&tws * phi == &lam * &tws, || format!("w={}, f={:?}", m.render(w), f.0));
            let alpha = m.op_phi(&m.fn_alpha_n(w.len(), f));
            alpha_comm.check(&tw * phi == &alpha * &tw, || format!("w={}, f={:?}", m.render(w), f.0));
        }
    }
    for n in 0..=l {
        let level: Vec<RationalMatrix> = m
            .alphabet()
            .words_of_length(n)
            .iter()
            .map(|u| m.op_t(u))
            .collect::<Result<_>>()?;
        let d = level
            .iter()
            .flat_map(|tu| level.iter().map(move |tv| (tu, tv)))
            .map(|(tu, tv)| &(&(tu * &tv.adjoint()) * tv) * &tu.adjoint())
            .fold(RationalMatrix::zeros(m.n()), |acc, x| &acc + &x);
        let expected = m.op_phi(&m.fn_preimage_count(n));
        let d_inv = d.inverse()?;
        count.check(d == expected, || format!("n={n}: {d} vs {expected}"));
        let s = m.sum_t(n);
        for (f, phi) in functions.iter().zip(&phis) {
            let sum = level
                .iter()
                .map(|tu| &(tu * phi) * &tu.adjoint())
                .fold(RationalMatrix::zeros(m.n()), |acc, x| &acc + &x);
            let alpha = m.op_phi(&m.fn_alpha_n(n, f));
            alpha_sum.check(sum == alpha, || format!("n={n}, f={:?}", f.0));
            let rhs = &(&(&s.adjoint() * &d_inv) * phi) * &s;
            let lhs = m.op_phi(&m.fn_l_n(n, f));
            transfer.check(lhs == rhs, || format!("n={n}, f={:?}: {lhs} vs {rhs}", f.0));
        }
    }
    Ok(VerifyReport {
        items: vec![lambda_conj.0, lambda_comm.0, alpha_sum.0, alpha_comm.0, count.0, transfer.0],
    })
}

/// A monomial `T_u φ(f) T_v*`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Monomial {
    pub u: Word,
    pub f: FunctionOnX,
    pub v: Word,
}

impl FiniteModel {
    pub fn monomial_matrix(&self, x: &Monomial) -> Result<RationalMatrix> {
        Ok(&(&self.op_t(&x.u)? * &self.op_phi(&x.f)) * &self.op_t(&x.v)?.adjoint())
    }

    /// The product of two monomials written as one monomial, or `None` when it vanishes.
    pub fn monomial_product(&self, a: &Monomial, b: &Monomial) -> Option<Monomial> {
        let e = Word::empty();
        if a.v.len() >= b.u.len() {
            // v = u'·w
            if !a.v.starts_with(&b.u) {
                return None;
            }
            let w = a.v.slice(b.u.len(), a.v.len());
            let g = self.fn_lambda(&w, &self.fn_cylinder(&b.u, &e).mul(&b.f));
            Some(Monomial {
                u: a.u.clone(),
                f: a.f.mul(&g),
                v: b.v.concat(&w),
            })
        } else {
            // u' = v·w
            if !b.u.starts_with(&a.v) {
                return None;
            }
            let w = b.u.slice(a.v.len(), b.u.len());
            let g = self.fn_lambda(&w, &a.f.mul(&self.fn_cylinder(&a.v, &e)));
            Some(Monomial {
                u: a.u.concat(&w),
                f: g.mul(&b.f),
                v: b.v.clone(),
            })
        }
    }
}

/// Products of monomials over cylinder indicators with `|u|, |v| ≤ L`
/// equal the single monomial given by the closure formulas (zero residual).
pub fn verify_monomial_closure(m: &FiniteModel, l: usize) -> Result<VerifyReport> {
    let words = m.words_up_to(l);
    let functions = m.cylinder_functions(1);
    let monomials: Vec<Monomial> = words
        .iter()
        .flat_map(|u| words.iter().map(move |v| (u, v)))
        .flat_map(|(u, v)| {
            functions.iter().map(move |f| Monomial {
                u: u.clone(),
                f: f.clone(),
                v: v.clone(),
            })
        })
        .collect();
    let mats = monomials
        .iter()
        .map(|x| m.monomial_matrix(x))
        .collect::<Result<Vec<_>>>()?;
    let mut closure = Tally::new("monomial products are monomials");
    for (a, ma) in monomials.iter().zip(&mats) {
        for (b, mb) in monomials.iter().zip(&mats) {
            let product = ma * mb;
            let expected = match m.monomial_product(a, b) {
                Some(c) => m.monomial_matrix(&c)?,
                None => RationalMatrix::zeros(m.n()),
            };
            closure.check((&product - &expected).is_zero(), || {
                format!("{a:?} * {b:?}: {product} vs {expected}")
            });
        }
    }
    Ok(VerifyReport {
        items: vec![closure.0],
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(pre: &[usize], per: &[usize]) -> EventuallyPeriodicPoint {
        EventuallyPeriodicPoint::new(Word::from(pre), Word::from(per)).unwrap()
    }

    fn two_points() -> FiniteModel {
        let p = ShiftPresentation::finite(Alphabet::numbered(2).unwrap(), [pt(&[], &[0]), pt(&[1], &[0])]).unwrap();
        FiniteModel::new(&p).unwrap()
    }

    fn r(v: i64) -> BigRational {
        BigRational::from_integer(v.into())
    }

    fn w(v: &[usize]) -> Word {
        Word::from(v)
    }

    #[test]
    fn generators_on_two_points() {
        let m = two_points();
        assert_eq!(m.basis()[0], pt(&[], &[0]));
        let t1 = m.op_t(&w(&[1])).unwrap();
        assert_eq!(t1.rows(), [["0", "0"], ["1", "0"]]);
        let t0 = m.op_t(&w(&[0])).unwrap();
        assert_eq!(t0.rows(), [["1", "0"], ["0", "0"]]);
        assert_eq!(m.op_t(&Word::empty()).unwrap(), RationalMatrix::identity(2));
        assert_eq!(m.fn_cylinder(&Word::empty(), &w(&[1])), FunctionOnX::from_ints(&[0, 1]));
        assert_eq!(m.fn_cylinder(&w(&[1]), &Word::empty()), FunctionOnX::from_ints(&[1, 0]));
        assert_eq!(&t1 * &t1.adjoint(), RationalMatrix::diagonal(&[r(0), r(1)]));
    }

    #[test]
    fn function_maps_on_two_points() {
        let m = two_points();
        let one = FunctionOnX::constant(2, 1);
        assert_eq!(m.fn_l(&one), FunctionOnX::from_ints(&[1, 0]));
        assert_eq!(m.fn_lambda(&w(&[1]), &one), FunctionOnX::from_ints(&[1, 0]));
        assert_eq!(m.fn_preimage_count(1), FunctionOnX::from_ints(&[2, 2]));
        let z1 = m.fn_cylinder(&Word::empty(), &w(&[1]));
        assert_eq!(m.fn_alpha(&z1), FunctionOnX::from_ints(&[0, 0]));
    }

    #[test]
    fn all_identities_hold_on_two_points() {
        let m = two_points();
        assert!(verify_representation(&m, 3).passed());
        assert!(verify_structure(&m, 3).passed());
        assert!(verify_prop_structure(&m, 3).unwrap().passed());
        assert!(verify_monomial_closure(&m, 2).unwrap().passed());
    }

    #[test]
    fn iterated_transfer_operator_differs_from_the_averaged_one() {
        // two-step average vs applying the one-step operator twice
        let p = ShiftPresentation::finite(
            Alphabet::numbered(2).unwrap(),
            [pt(&[], &[0]), pt(&[1], &[0]), pt(&[1, 1], &[0])],
        )
        .unwrap();
        let m = FiniteModel::new(&p).unwrap();
        let f = FunctionOnX::from_ints(&[0, 0, 6]);
        assert_ne!(m.fn_l(&m.fn_l(&f)), m.fn_l_n(2, &f));
    }

    #[test]
    fn inverse_and_rank() {
        let a = RationalMatrix::diagonal(&[r(2), r(4)]);
        assert_eq!(&a * &a.inverse().unwrap(), RationalMatrix::identity(2));
        assert!(matches!(RationalMatrix::zeros(2).inverse(), Err(Error::Singular)));
        assert_eq!(a.rank(), 2);
    }
}
