//! Lattices over a truncated power series ring `F[[xi]]/xi^N`.
//!
//! Matrices are reduced to Smith form with recorded unimodular transforms.
//! Pivots are chosen by certified valuation, so p-adic coefficients that
//! vanish only to working precision stop the computation instead of being
//! guessed.

use std::collections::BTreeMap;
use std::fmt::Debug;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::padic::Padic;

/// Exact field operations with a certified zero test.
pub trait Coefficient: Clone + Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    /// `Ok(true)` only for a certified zero, `Err` when undecidable.
    fn is_zero(&self) -> Result<bool>;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Result<Self>;
    /// `self += a * b`.
    fn add_mul(&mut self, a: &Self, b: &Self) {
        *self = self.add(&a.mul(b));
    }
    /// Equality as used by tests; may be approximate for inexact types.
    fn same(&self, o: &Self) -> bool;
}

impl Coefficient for BigRational {
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }
    fn one_like(&self) -> Self {
        BigRational::one()
    }
    fn is_zero(&self) -> Result<bool> {
        Ok(Zero::is_zero(self))
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Result<Self> {
        if Zero::is_zero(self) {
            return Err(Error::Singular("division by zero".into()));
        }
        Ok(self.recip())
    }
    fn add_mul(&mut self, a: &Self, b: &Self) {
        *self += a * b;
    }
    fn same(&self, o: &Self) -> bool {
        self == o
    }
}

impl Coefficient for Padic {
    fn zero_like(&self) -> Self {
        Padic::exact_zero(self.p())
    }
    fn one_like(&self) -> Self {
        Padic::one(self.p(), self.precision().unwrap_or(crate::padic::DEFAULT_PRECISION))
    }
    fn is_zero(&self) -> Result<bool> {
        if self.is_exact_zero() {
            Ok(true)
        } else if self.is_zero_at_precision() {
            Err(Error::PrecisionExhausted("coefficient vanishes at working precision".into()))
        } else {
            Ok(false)
        }
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Result<Self> {
        Padic::inv(self)
    }
    fn same(&self, o: &Self) -> bool {
        (self - o).is_zero_at_precision()
    }
}

/// Truncated series `sum c_k xi^k`, `k < N`.
pub type Series<T> = Vec<T>;

fn s_zero<T: Coefficient>(proto: &T, n: usize) -> Series<T> {
    vec![proto.zero_like(); n]
}

fn s_add<T: Coefficient>(a: &Series<T>, b: &Series<T>) -> Series<T> {
    a.iter().zip(b).map(|(x, y)| x.add(y)).collect()
}

fn s_sub<T: Coefficient>(a: &Series<T>, b: &Series<T>) -> Series<T> {
    a.iter().zip(b).map(|(x, y)| x.sub(y)).collect()
}

fn s_mul<T: Coefficient>(a: &Series<T>, b: &Series<T>) -> Series<T> {
    let n = a.len();
    let mut out = s_zero(&a[0], n);
    for (i, x) in a.iter().enumerate() {
        if matches!(x.is_zero(), Ok(true)) {
            continue;
        }
        for (j, y) in b.iter().take(n - i).enumerate() {
            if !matches!(y.is_zero(), Ok(true)) {
                out[i + j].add_mul(x, y);
            }
        }
    }
    out
}

/// Certified valuation; `None` when the series is zero modulo `xi^N`.
fn s_val<T: Coefficient>(a: &Series<T>) -> Result<Option<usize>> {
    for (k, c) in a.iter().enumerate() {
        if !c.is_zero()? {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

fn s_is_zero<T: Coefficient>(a: &Series<T>) -> bool {
    a.iter().all(|c| matches!(c.is_zero(), Ok(true)))
}

/// `a / xi^k`, padded with zeros.
fn s_unshift<T: Coefficient>(a: &Series<T>, k: usize) -> Series<T> {
    let mut out: Series<T> = a[k..].to_vec();
    out.resize(a.len(), a[0].zero_like());
    out
}

fn s_inv_unit<T: Coefficient>(a: &Series<T>) -> Result<Series<T>> {
    let n = a.len();
    let c0 = a[0].inv()?;
    let mut out = s_zero(&a[0], n);
    out[0] = c0.clone();
    for k in 1..n {
        let mut acc = a[0].zero_like();
        for j in 1..=k {
            acc.add_mul(&a[j], &out[k - j]);
        }
        out[k] = acc.mul(&c0).neg();
    }
    Ok(out)
}

/// Matrix over `F[[xi]]/xi^N`.
#[derive(Clone, Debug)]
pub struct TruncatedDVRMatrix<T: Coefficient> {
    pub precision: usize,
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<Series<T>>>,
    proto: T,
}

impl<T: Coefficient> TruncatedDVRMatrix<T> {
    /// Entries are coefficient lists in `xi`, lowest first; longer lists are
    /// truncated, shorter ones padded.
    pub fn new(proto: &T, precision: usize, entries: Vec<Vec<Vec<T>>>) -> Result<Self> {
        if precision == 0 {
            return Err(Error::InvalidInput("truncation precision must be positive".into()));
        }
        let rows = entries.len();
        let cols = entries.first().map_or(0, Vec::len);
        if rows == 0 || cols == 0 || entries.iter().any(|r| r.len() != cols) {
            return Err(Error::InvalidInput("matrix must be a nonempty rectangle".into()));
        }
        let entries = entries
            .into_iter()
            .map(|r| {
                r.into_iter()
                    .map(|mut s| {
                        s.resize(precision, proto.zero_like());
                        s
                    })
                    .collect()
            })
            .collect();
        Ok(TruncatedDVRMatrix { precision, rows, cols, entries, proto: proto.zero_like() })
    }

    pub fn identity(proto: &T, n: usize, precision: usize) -> Self {
        Self::diagonal(proto, &vec![0; n], precision)
    }

    /// `diag(xi^l_1, ..)`; exponents at or beyond the precision give zero.
    pub fn diagonal(proto: &T, exps: &[usize], precision: usize) -> Self {
        let n = exps.len();
        let entries = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let mut s = s_zero(proto, precision);
                        if i == j && exps[i] < precision {
                            s[exps[i]] = proto.one_like();
                        }
                        s
                    })
                    .collect()
            })
            .collect();
        TruncatedDVRMatrix { precision, rows: n, cols: n, entries, proto: proto.zero_like() }
    }

    pub fn entry(&self, i: usize, j: usize) -> &Series<T> {
        &self.entries[i][j]
    }

    pub fn mul(&self, o: &Self) -> Result<Self> {
        if self.cols != o.rows || self.precision != o.precision {
            return Err(Error::InvalidInput("incompatible matrices".into()));
        }
        let n = self.precision;
        let entries = (0..self.rows)
            .map(|i| {
                (0..o.cols)
                    .map(|j| {
                        (0..self.cols).fold(s_zero(&self.proto, n), |acc, k| {
                            s_add(&acc, &s_mul(&self.entries[i][k], &o.entries[k][j]))
                        })
                    })
                    .collect()
            })
            .collect();
        Ok(TruncatedDVRMatrix { precision: n, rows: self.rows, cols: o.cols, entries, proto: self.proto.clone() })
    }

    pub fn transpose(&self) -> Self {
        let entries = (0..self.cols).map(|j| (0..self.rows).map(|i| self.entries[i][j].clone()).collect()).collect();
        TruncatedDVRMatrix { precision: self.precision, rows: self.cols, cols: self.rows, entries, proto: self.proto.clone() }
    }

    /// Entrywise equality through [`Coefficient::same`].
    pub fn same(&self, o: &Self) -> bool {
        self.rows == o.rows
            && self.cols == o.cols
            && self.entries.iter().flatten().flatten().zip(o.entries.iter().flatten().flatten()).all(|(a, b)| a.same(b))
    }

    /// Certified xi-valuation of the determinant, through the Smith form.
    pub fn det_valuation(&self) -> Result<Option<usize>> {
        let r = smith(self)?;
        if r.divisors.iter().any(Option::is_none) || r.divisors.len() < self.rows {
            return Ok(None);
        }
        let v: usize = r.divisors.iter().map(|d| d.unwrap()).sum();
        Ok((v < self.precision).then_some(v))
    }

    /// True when every off-diagonal entry is zero and the diagonal is
    /// `xi^d` exactly.
    pub fn is_monomial_diagonal(&self, exps: &[usize]) -> bool {
        let one = self.proto.one_like();
        (0..self.rows).all(|i| {
            (0..self.cols).all(|j| {
                self.entries[i][j].iter().enumerate().all(|(k, c)| {
                    if i == j && i < exps.len() && k == exps[i] {
                        c.same(&one)
                    } else {
                        matches!(c.is_zero(), Ok(true)) || c.same(&self.proto)
                    }
                })
            })
        })
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        self.entries.swap(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        for r in &mut self.entries {
            r.swap(a, b);
        }
    }

    /// `row_i -= s * row_k`.
    fn row_axpy(&mut self, i: usize, k: usize, s: &Series<T>) {
        self.row_axpy_from(i, k, 0, s);
    }

    /// `row_i -= s * row_k` on columns `from..`.
    fn row_axpy_from(&mut self, i: usize, k: usize, from: usize, s: &Series<T>) {
        for j in from..self.cols {
            if s_is_zero(&self.entries[k][j]) {
                continue;
            }
            let t = s_mul(s, &self.entries[k][j]);
            self.entries[i][j] = s_sub(&self.entries[i][j], &t);
        }
    }

    fn col_axpy(&mut self, j: usize, k: usize, s: &Series<T>) {
        for i in 0..self.rows {
            if s_is_zero(&self.entries[i][k]) {
                continue;
            }
            let t = s_mul(&self.entries[i][k], s);
            self.entries[i][j] = s_sub(&self.entries[i][j], &t);
        }
    }

    fn scale_row(&mut self, i: usize, s: &Series<T>) {
        for j in 0..self.cols {
            self.entries[i][j] = s_mul(s, &self.entries[i][j]);
        }
    }
}

/// Raw Smith form of a rectangular matrix: `u * a * v = d` with
/// `d = diag(xi^l_i)` (ascending, `None` for zero) padded by zeros.
#[derive(Clone, Debug)]
pub struct Smith<T: Coefficient> {
    pub divisors: Vec<Option<usize>>,
    pub left: TruncatedDVRMatrix<T>,
    pub right: TruncatedDVRMatrix<T>,
    pub diagonal: TruncatedDVRMatrix<T>,
}

pub fn smith<T: Coefficient>(a: &TruncatedDVRMatrix<T>) -> Result<Smith<T>> {
    let n = a.precision;
    let mut d = a.clone();
    let mut u = TruncatedDVRMatrix::identity(&a.proto, a.rows, n);
    let mut v = TruncatedDVRMatrix::identity(&a.proto, a.cols, n);
    let mut divisors = Vec::new();
    for k in 0..a.rows.min(a.cols) {
        let mut best: Option<(usize, usize, usize)> = None;
        for i in k..a.rows {
            for j in k..a.cols {
                if let Some(val) = s_val(&d.entries[i][j])? {
                    if best.is_none_or(|b| val < b.0) {
                        best = Some((val, i, j));
                    }
                }
            }
        }
        let Some((val, pi, pj)) = best else {
            divisors.extend(std::iter::repeat_n(None, a.rows.min(a.cols) - k));
            break;
        };
        d.swap_rows(k, pi);
        u.swap_rows(k, pi);
        d.swap_cols(k, pj);
        v.swap_cols(k, pj);
        let unit = s_unshift(&d.entries[k][k], val);
        let uinv = s_inv_unit(&unit)?;
        d.scale_row(k, &uinv);
        u.scale_row(k, &uinv);
        let zero = s_zero(&a.proto, n);
        for i in k + 1..a.rows {
            let q = s_unshift(&d.entries[i][k], val);
            if s_val(&q)?.is_some() {
                d.row_axpy_from(i, k, k + 1, &q);
                u.row_axpy(i, k, &q);
            }
            d.entries[i][k] = zero.clone();
        }
        for j in k + 1..a.cols {
            let q = s_unshift(&d.entries[k][j], val);
            if s_val(&q)?.is_some() {
                v.col_axpy(j, k, &q);
            }
            d.entries[k][j] = zero.clone();
        }
        divisors.push(Some(val));
    }
    Ok(Smith { divisors, left: u, right: v, diagonal: d })
}

/// Smith form of a square matrix with divisors sorted descending.
#[derive(Clone, Debug)]
pub struct Snf<T: Coefficient> {
    pub divisors: Vec<i64>,
    pub left: TruncatedDVRMatrix<T>,
    pub right: TruncatedDVRMatrix<T>,
}

/// `left * a * right = diag(xi^l_1, .., xi^l_n)`, `l_1 >= .. >= l_n`.
pub fn snf<T: Coefficient>(a: &TruncatedDVRMatrix<T>) -> Result<Snf<T>> {
    if a.rows != a.cols {
        return Err(Error::InvalidInput("Smith form of a non-square matrix; use cokernel_divisors".into()));
    }
    let s = smith(a)?;
    let mut exps = Vec::with_capacity(a.rows);
    for d in &s.divisors {
        match d {
            Some(x) => exps.push(*x),
            None => return Err(Error::Singular("determinant vanishes modulo the truncation".into())),
        }
    }
    let total: usize = exps.iter().sum();
    if total >= a.precision {
        return Err(Error::Singular(format!(
            "determinant valuation {total} is not below the truncation {}",
            a.precision
        )));
    }
    let n = a.rows;
    let order: Vec<usize> = (0..n).rev().collect();
    let mut left = s.left.clone();
    let mut right = s.right.clone();
    left.entries = order.iter().map(|&i| s.left.entries[i].clone()).collect();
    for (r, src) in right.entries.iter_mut().zip(&s.right.entries) {
        *r = order.iter().map(|&j| src[j].clone()).collect();
    }
    let divisors = order.iter().map(|&i| exps[i] as i64).collect();
    Ok(Snf { divisors, left, right })
}

/// Dimensions of `Fil^j` and `gr^j` on the window where they change.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Filtration {
    pub fil: BTreeMap<i64, usize>,
    pub gr: BTreeMap<i64, usize>,
}

impl Filtration {
    pub fn fil_dim(&self, j: i64) -> usize {
        match (self.fil.keys().next(), self.fil.keys().next_back()) {
            (Some(&lo), _) if j < lo => self.fil[&lo],
            (_, Some(&hi)) if j > hi => 0,
            _ => self.fil.get(&j).copied().unwrap_or(0),
        }
    }

    pub fn gr_dim(&self, j: i64) -> usize {
        self.gr.get(&j).copied().unwrap_or(0)
    }
}

/// `dim Fil^j = #{i : l_i + j <= 0}`, `dim gr^j = #{i : l_i = -j}`.
pub fn filtration(lambda: &[i64]) -> Filtration {
    let lo = lambda.iter().map(|l| -l).min().unwrap_or(0) - 1;
    let hi = lambda.iter().map(|l| -l).max().unwrap_or(0) + 1;
    let fil = (lo..=hi).map(|j| (j, lambda.iter().filter(|&&l| l + j <= 0).count())).collect();
    let mut gr = BTreeMap::new();
    for l in lambda {
        *gr.entry(-l).or_insert(0) += 1;
    }
    Filtration { fil, gr }
}

/// A lattice `Xi = span(xi^l_i e_i)` inside `T (x) B_dR`, with an optional
/// presentation whose column span is `Xi` inside the standard lattice.
#[derive(Clone, Debug)]
pub struct LatticePair {
    pub dimension: usize,
    /// Sorted descending.
    pub divisors: Vec<i64>,
    pub presentation: Option<TruncatedDVRMatrix<BigRational>>,
}

impl LatticePair {
    pub fn from_divisors(mut divisors: Vec<i64>) -> Self {
        divisors.sort_by(|a, b| b.cmp(a));
        LatticePair { dimension: divisors.len(), divisors, presentation: None }
    }

    pub fn from_presentation(a: TruncatedDVRMatrix<BigRational>) -> Result<Self> {
        let s = snf(&a)?;
        Ok(LatticePair { dimension: a.rows, divisors: s.divisors, presentation: Some(a) })
    }

    /// The diagonal presentation, available when all divisors are `>= 0`.
    pub fn diagonal_presentation(&self, precision: usize) -> Option<TruncatedDVRMatrix<BigRational>> {
        if self.divisors.iter().any(|&l| l < 0) {
            return None;
        }
        let exps: Vec<usize> = self.divisors.iter().map(|&l| l as usize).collect();
        Some(TruncatedDVRMatrix::diagonal(&BigRational::zero(), &exps, precision))
    }

    pub fn dual(&self) -> Self {
        Self::from_divisors(self.divisors.iter().map(|l| -l).collect())
    }

    pub fn direct_sum(&self, o: &Self) -> Self {
        Self::from_divisors(self.divisors.iter().chain(&o.divisors).copied().collect())
    }

    pub fn filtration(&self) -> Filtration {
        filtration(&self.divisors)
    }

    /// Default truncation for presentations of this lattice.
    pub fn default_precision(&self) -> usize {
        self.divisors.iter().map(|l| l.unsigned_abs() as usize).max().unwrap_or(0) + self.dimension + 4
    }
}

/// Outcome of [`cokernel_divisors`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cokernel {
    /// Divisors of the map in adapted coordinates, sorted descending.
    pub divisors: Vec<i64>,
    /// The cokernel is free, i.e. every divisor is 0.
    pub free: bool,
    /// Rank of the cokernel when free.
    pub free_rank: Option<usize>,
}

/// Smith divisors of `f: Xi -> Xi'` written in adapted coordinates of the
/// source and target lattices. `f` is given in the bases `e_i`, `e'_j` of
/// the underlying spaces (rows: target, columns: source).
pub fn cokernel_divisors<T: Coefficient>(
    f: &TruncatedDVRMatrix<T>,
    source: &LatticePair,
    target: &LatticePair,
) -> Result<Cokernel> {
    if f.cols != source.dimension || f.rows != target.dimension {
        return Err(Error::InvalidInput("map does not match the lattice dimensions".into()));
    }
    let n = f.precision;
    let mut g = f.clone();
    for j in 0..f.rows {
        for i in 0..f.cols {
            let shift = source.divisors[i] - target.divisors[j];
            let e = &f.entries[j][i];
            g.entries[j][i] = if shift >= 0 {
                let mut s = s_zero(&f.proto, n);
                for k in 0..n.saturating_sub(shift as usize) {
                    s[k + shift as usize] = e[k].clone();
                }
                s
            } else {
                let k = (-shift) as usize;
                if let Some(v) = s_val(e)? {
                    if v < k {
                        return Err(Error::InvalidInput("map does not carry the source lattice into the target".into()));
                    }
                }
                s_unshift(e, k.min(n))
            };
        }
    }
    let s = smith(&g)?;
    let mut divisors = Vec::with_capacity(f.cols);
    for d in &s.divisors {
        match d {
            Some(x) => divisors.push(*x as i64),
            None => return Err(Error::NotInjective("the map has a kernel modulo the truncation".into())),
        }
    }
    if divisors.len() < f.cols {
        return Err(Error::NotInjective("more source than target dimensions".into()));
    }
    divisors.sort_by(|a, b| b.cmp(a));
    let free = divisors.iter().all(|&d| d == 0);
    Ok(Cokernel { free, free_rank: free.then_some(f.rows - f.cols), divisors })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(x: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(x))
    }

    fn mat(n: usize, e: &[&[&[i64]]]) -> TruncatedDVRMatrix<BigRational> {
        let entries = e.iter().map(|r| r.iter().map(|s| s.iter().map(|&x| q(x)).collect()).collect()).collect();
        TruncatedDVRMatrix::new(&q(0), n, entries).unwrap()
    }

    fn check(a: &TruncatedDVRMatrix<BigRational>) -> Vec<i64> {
        let s = snf(a).unwrap();
        let d = s.left.mul(a).unwrap().mul(&s.right).unwrap();
        let exps: Vec<usize> = s.divisors.iter().map(|&x| x as usize).collect();
        assert!(d.is_monomial_diagonal(&exps), "{d:?}");
        s.divisors
    }

    #[test]
    fn snf_examples() {
        assert_eq!(check(&mat(6, &[&[&[0, 0, 1], &[0]], &[&[0], &[1]]])), vec![2, 0]);
        assert_eq!(check(&mat(6, &[&[&[1], &[1]], &[&[0, 1], &[0]]])), vec![1, 0]);
        assert_eq!(check(&TruncatedDVRMatrix::identity(&q(0), 3, 5)), vec![0, 0, 0]);
    }

    #[test]
    fn singular_is_reported() {
        assert!(matches!(snf(&mat(3, &[&[&[0, 0, 0, 1]]])), Err(Error::Singular(_))));
        assert!(matches!(snf(&mat(4, &[&[&[0, 0, 1], &[0]], &[&[0], &[0, 0, 1]]])), Err(Error::Singular(_))));
    }

    #[test]
    fn padic_pivot_must_be_certified() {
        let p = Padic::from_int(5, 0, 10);
        let z = Padic::zero(5, 10);
        let a = TruncatedDVRMatrix::new(&p, 3, vec![vec![vec![z.clone(), Padic::from_int(5, 1, 10)]]]).unwrap();
        assert!(matches!(snf(&a), Err(Error::PrecisionExhausted(_))));
        let b = TruncatedDVRMatrix::new(&p, 3, vec![vec![vec![Padic::from_int(5, 25, 10)]]]).unwrap();
        assert_eq!(snf(&b).unwrap().divisors, vec![0]);
    }

    #[test]
    fn filtration_examples() {
        let f = filtration(&[-3]);
        assert_eq!(f.fil_dim(3), 1);
        assert_eq!(f.fil_dim(-10), 1);
        assert_eq!(f.fil_dim(4), 0);
        assert_eq!(f.gr, BTreeMap::from([(3, 1)]));
        let f = filtration(&[1, 0, 0, -2]);
        assert_eq!(f.gr, BTreeMap::from([(-1, 1), (0, 2), (2, 1)]));
        let f = filtration(&[0, 0, 0]);
        assert_eq!(f.gr, BTreeMap::from([(0, 3)]));
    }

    #[test]
    fn cokernel_examples() {
        let id = mat(6, &[&[&[1], &[0]], &[&[0], &[1]]]);
        let l = LatticePair::from_divisors(vec![0, 0]);
        let c = cokernel_divisors(&id, &l, &l).unwrap();
        assert_eq!(c, Cokernel { divisors: vec![0, 0], free: true, free_rank: Some(0) });
        let one = mat(6, &[&[&[1]]]);
        let c = cokernel_divisors(&one, &LatticePair::from_divisors(vec![1]), &LatticePair::from_divisors(vec![0])).unwrap();
        assert_eq!(c, Cokernel { divisors: vec![1], free: false, free_rank: None });
        let inc = mat(6, &[&[&[1]], &[&[0]]]);
        let c = cokernel_divisors(&inc, &LatticePair::from_divisors(vec![0]), &l).unwrap();
        assert_eq!(c.free_rank, Some(1));
        let zero = mat(6, &[&[&[0]]]);
        let z = LatticePair::from_divisors(vec![0]);
        assert!(matches!(cokernel_divisors(&zero, &z, &z), Err(Error::NotInjective(_))));
    }

    #[test]
    fn dual_lattice_negates() {
        let l = LatticePair::from_divisors(vec![0, 2, 1]);
        assert_eq!(l.divisors, vec![2, 1, 0]);
        assert_eq!(l.dual().divisors, vec![0, -1, -2]);
    }
}
