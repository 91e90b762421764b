#![allow(dead_code)]

use std::sync::Arc;

use cmbkf::cmtype::CMType;
use cmbkf::corpus::{corpus, CorpusField};
use cmbkf::drlattice::TruncatedDVRMatrix;
use cmbkf::localfield::{splitting_context, GaloisContext, GaloisOptions, LocalField};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;

pub struct Level {
    pub entry: CorpusField,
    pub field: Arc<LocalField>,
    pub context: Arc<GaloisContext>,
    pub zero: CMType,
}

pub fn levels(prec: i64) -> Vec<Level> {
    corpus()
        .into_iter()
        .map(|entry| {
            let field = Arc::new(entry.build(prec).unwrap());
            let ctx = splitting_context(&field, &GaloisOptions::default()).unwrap();
            let context = Arc::new(ctx);
            let zero = CMType::new(
                cmbkf::cmtype::Algebra::Field(field.clone()),
                context.clone(),
                vec![0; field.degree()],
            )
            .unwrap();
            Level { entry, field, context, zero }
        })
        .collect()
}

/// All vectors of length `n` with entries in `lo..=hi`.
pub fn all_types(n: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out.into_iter().flat_map(|v| (lo..=hi).map(move |x| [v.clone(), vec![x]].concat())).collect();
    }
    out
}

pub fn q(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

pub type M = TruncatedDVRMatrix<BigRational>;

pub fn from_series(n: usize, prec: usize, mut f: impl FnMut(usize, usize) -> Vec<i64>) -> M {
    let mut entries = Vec::new();
    for i in 0..n {
        let row: Vec<Vec<BigRational>> = (0..n).map(|j| f(i, j).into_iter().map(q).collect()).collect();
        entries.push(row);
    }
    TruncatedDVRMatrix::new(&q(0), prec, entries).unwrap()
}

/// Random matrix whose entries have random valuations.
pub fn random_matrix(rng: &mut impl Rng, n: usize, prec: usize) -> M {
    from_series(n, prec, |_, _| {
        let v = rng.gen_range(0..3usize);
        let mut s = vec![0; prec];
        for c in s.iter_mut().skip(v).take(3) {
            *c = rng.gen_range(-3..=3);
        }
        s
    })
}

/// Random unimodular matrix: a product of elementary operations.
pub fn random_unimodular(rng: &mut impl Rng, n: usize, prec: usize) -> M {
    let mut m = from_series(n, prec, |i, j| if i == j { vec![1] } else { vec![0] });
    for _ in 0..4 {
        let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if a == b {
            continue;
        }
        let s: Vec<i64> = (0..3).map(|_| rng.gen_range(-2..=2)).collect();
        let e = from_series(n, prec, |i, j| {
            if i == j {
                vec![1]
            } else if i == a && j == b {
                s.clone()
            } else {
                vec![0]
            }
        });
        m = e.mul(&m).unwrap();
    }
    if rng.gen_bool(0.5) {
        let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
        m.entries.swap(a, b);
    }
    m
}

fn s_mul(a: &[i128], b: &[i128]) -> Vec<i128> {
    let n = a.len();
    let mut out = vec![0; n];
    for i in 0..n {
        for j in 0..n - i {
            out[i + j] += a[i] * b[j];
        }
    }
    out
}

/// Determinant of an integer-coefficient matrix by permutation expansion,
/// then its xi-valuation.
pub fn det_valuation(m: &M) -> Option<usize> {
    let n = m.rows;
    let prec = m.precision;
    let ints: Vec<Vec<Vec<i128>>> = m
        .entries
        .iter()
        .map(|r| {
            r.iter()
                .map(|s| s.iter().map(|c| i128::try_from(c.to_integer()).expect("integer entries")).collect())
                .collect()
        })
        .collect();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut det = vec![0i128; prec];
    loop {
        let inv = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| perm[i] > perm[j]).count();
        let mut term = vec![0i128; prec];
        term[0] = if inv % 2 == 0 { 1 } else { -1 };
        for (i, &j) in perm.iter().enumerate() {
            term = s_mul(&term, &ints[i][j]);
        }
        for (d, t) in det.iter_mut().zip(term) {
            *d += t;
        }
        if !next_perm(&mut perm) {
            break;
        }
    }
    det.iter().position(|&c| c != 0)
}

fn next_perm(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let Some(i) = (0..n - 1).rev().find(|&i| p[i] < p[i + 1]) else { return false };
    let j = (i + 1..n).rev().find(|&j| p[j] > p[i]).unwrap();
    p.swap(i, j);
    p[i + 1..].reverse();
    true
}

/// Determinant of an integer matrix by fraction-free elimination.
pub fn int_det(m: &[Vec<i64>]) -> BigRational {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect();
    let mut det = BigRational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else { return BigRational::zero() };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det *= &a[c][c];
        let pivot = a[c].clone();
        for row in a.iter_mut().skip(c + 1) {
            let f = &row[c] / &pivot[c];
            for (x, y) in row.iter_mut().zip(&pivot).skip(c) {
                *x -= &f * y;
            }
        }
    }
    det
}
