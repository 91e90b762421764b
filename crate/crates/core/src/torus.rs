//! Character lattices of Weil restriction tori at a finite Galois level.
//!
//! Functions `f: G -> Z` carry the left action `(h.f)(g) = f(h^-1 g)`, which
//! keeps functions constant on left cosets `gH` constant on left cosets. The
//! character function of a type at `tau` is `f_tau(g) = Phi(g^-1 tau)`.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::cmtype::CMType;
use crate::error::{Error, Result};
use crate::localfield::{FiniteGroup, GaloisContext, LocalField};

/// `Z[G/H]` with `G` permuting the cosets by left multiplication.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterLattice {
    pub cosets: Vec<Vec<usize>>,
    /// `action[g][c]`: index of `g . c`.
    pub action: Vec<Vec<usize>>,
}

impl CharacterLattice {
    pub fn new(g: &FiniteGroup, h: &[usize]) -> Result<Self> {
        if !g.is_subgroup(h) {
            return Err(Error::InvalidInput("not a subgroup".into()));
        }
        let cosets = g.left_cosets(h);
        let mut of = vec![0; g.order()];
        for (i, c) in cosets.iter().enumerate() {
            for &x in c {
                of[x] = i;
            }
        }
        let action = g.elements().map(|a| cosets.iter().map(|c| of[g.mul(a, c[0])]).collect()).collect();
        Ok(CharacterLattice { cosets, action })
    }

    pub fn rank(&self) -> usize {
        self.cosets.len()
    }

    pub fn act(&self, g: usize, v: &[i64]) -> Vec<i64> {
        let mut out = vec![0; v.len()];
        for (c, &x) in v.iter().enumerate() {
            out[self.action[g][c]] += x;
        }
        out
    }
}

/// The isomorphism between `H`-coset-constant functions on `G` and
/// `Z[G/H]`, `f -> sum over cosets of f(g) gH`.
#[derive(Clone, Debug)]
pub struct Coinduction {
    pub group: FiniteGroup,
    pub lattice: CharacterLattice,
}

impl Coinduction {
    /// Function (vector indexed by `G`) to lattice coordinates.
    pub fn forward(&self, f: &[i64]) -> Result<Vec<i64>> {
        if f.len() != self.group.order() {
            return Err(Error::InvalidInput("function has the wrong length".into()));
        }
        self.lattice
            .cosets
            .iter()
            .map(|c| {
                if c.iter().any(|&x| f[x] != f[c[0]]) {
                    Err(Error::InvalidInput("function is not constant on cosets".into()))
                } else {
                    Ok(f[c[0]])
                }
            })
            .collect()
    }

    pub fn inverse(&self, v: &[i64]) -> Vec<i64> {
        let mut f = vec![0; self.group.order()];
        for (c, &x) in self.lattice.cosets.iter().zip(v) {
            for &g in c {
                f[g] = x;
            }
        }
        f
    }

    /// `(h.f)(g) = f(h^-1 g)`.
    pub fn act_on_function(&self, h: usize, f: &[i64]) -> Vec<i64> {
        let hi = self.group.inv(h);
        self.group.elements().map(|g| f[self.group.mul(hi, g)]).collect()
    }
}

pub fn coinduction_iso(g: &FiniteGroup, h: &[usize]) -> Result<Coinduction> {
    Ok(Coinduction { group: g.clone(), lattice: CharacterLattice::new(g, h)? })
}

/// Matrix of `Z[G/H1] -> Z[G/H2]` sending a coset of `H1` to the sum of the
/// cosets of `H2` inside it. Rows are indexed by `G/H2`, columns by `G/H1`.
pub fn norm_char_map(g: &FiniteGroup, h1: &[usize], h2: &[usize]) -> Result<Vec<Vec<i64>>> {
    if !g.is_subgroup(h1) || !g.is_subgroup(h2) {
        return Err(Error::InvalidInput("not a subgroup".into()));
    }
    if !h2.iter().all(|x| h1.contains(x)) {
        return Err(Error::NotNested("the larger field's subgroup is not inside the smaller one's".into()));
    }
    let c1 = g.left_cosets(h1);
    let c2 = g.left_cosets(h2);
    Ok(c2.iter().map(|b| c1.iter().map(|a| a.contains(&b[0]) as i64).collect()).collect())
}

/// [`norm_char_map`] for fields `L1 <= L2` inside the level `ctx`. `L2` is
/// placed by its first embedding, `L1` by the first embedding whose
/// stabilizer contains that of `L2`.
pub fn norm_char_map_fields(ctx: &GaloisContext, l1: &Arc<LocalField>, l2: &Arc<LocalField>) -> Result<Vec<Vec<i64>>> {
    let g = ctx.group();
    let h2 = subgroup_of(ctx, l2, None)?;
    let h1 = subgroup_of(ctx, l1, Some(&h2))?;
    norm_char_map(g, &h1, &h2)
}

fn subgroup_of(ctx: &GaloisContext, l: &Arc<LocalField>, inside: Option<&[usize]>) -> Result<Vec<usize>> {
    if l.is_qp() {
        return Ok(ctx.group().elements().collect());
    }
    let hs = ctx.hom_set(l)?;
    (0..hs.gset.size())
        .map(|x| hs.gset.stabilizer(x))
        .find(|s| inside.is_none_or(|h| h.iter().all(|x| s.contains(x))))
        .ok_or_else(|| Error::NotNested("no embedding of the smaller field lies below the larger one".into()))
}

/// True when the integer matrix has full column rank.
pub fn is_injective(m: &[Vec<i64>]) -> bool {
    use num_rational::BigRational;
    use num_traits::Zero;
    let cols = m.first().map_or(0, Vec::len);
    let mut a: Vec<Vec<BigRational>> =
        m.iter().map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect()).collect();
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..a.len()).find(|&r| !a[r][c].is_zero()) else { continue };
        a.swap(rank, piv);
        let pivot = a[rank].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r != rank && !row[c].is_zero() {
                let q = &row[c] / &pivot[c];
                for (x, y) in row.iter_mut().zip(&pivot).skip(c) {
                    *x -= &q * y;
                }
            }
        }
        rank += 1;
    }
    rank == cols
}

/// Multiset of character functions `G -> Z` at one Galois level.
#[derive(Clone, Debug)]
pub struct CharacterMultiset {
    pub level: Arc<GaloisContext>,
    /// Sorted.
    pub entries: Vec<Vec<i64>>,
}

impl CharacterMultiset {
    pub fn counts(&self) -> BTreeMap<&[i64], usize> {
        let mut m = BTreeMap::new();
        for e in &self.entries {
            *m.entry(e.as_slice()).or_insert(0) += 1;
        }
        m
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Stable under the G-action.
    pub fn is_stable(&self) -> bool {
        let g = self.level.group();
        g.elements().all(|h| {
            let hi = g.inv(h);
            let mut moved: Vec<Vec<i64>> =
                self.entries.iter().map(|f| g.elements().map(|x| f[g.mul(hi, x)]).collect()).collect();
            moved.sort();
            moved == self.entries
        })
    }

    pub fn negate(&self) -> Self {
        let mut entries: Vec<Vec<i64>> = self.entries.iter().map(|f| f.iter().map(|x| -x).collect()).collect();
        entries.sort();
        CharacterMultiset { level: self.level.clone(), entries }
    }

    /// Pairwise sums.
    pub fn convolve(&self, other: &Self) -> Result<Self> {
        let (a, b) = align(self, other)?;
        let mut entries: Vec<Vec<i64>> = a
            .entries
            .iter()
            .flat_map(|f| b.entries.iter().map(move |h| f.iter().zip(h).map(|(x, y)| x + y).collect()))
            .collect();
        entries.sort();
        Ok(CharacterMultiset { level: a.level, entries })
    }

    /// Multiset union.
    pub fn union(&self, other: &Self) -> Result<Self> {
        let (a, b) = align(self, other)?;
        let mut entries = a.entries;
        entries.extend(b.entries);
        entries.sort();
        Ok(CharacterMultiset { level: a.level, entries })
    }

    fn inflate(&self, into: &Arc<GaloisContext>) -> Self {
        let n = into.group().order();
        let mut entries: Vec<Vec<i64>> = self.entries.iter().map(|f| vec![f[0]; n]).collect();
        entries.sort();
        CharacterMultiset { level: into.clone(), entries }
    }
}

fn align(a: &CharacterMultiset, b: &CharacterMultiset) -> Result<(CharacterMultiset, CharacterMultiset)> {
    if a.level.same_level(&b.level) {
        return Ok((a.clone(), b.clone()));
    }
    if a.level.group().order() == 1 {
        return Ok((a.inflate(&b.level), b.clone()));
    }
    if b.level.group().order() == 1 {
        return Ok((a.clone(), b.inflate(&a.level)));
    }
    Err(Error::LevelMismatch("character multisets at different Galois levels".into()))
}

/// One function per embedding: `f_tau(g) = Phi(g^-1 tau)`.
pub fn character_multiset(t: &CMType) -> CharacterMultiset {
    let g = t.group();
    let mut entries: Vec<Vec<i64>> = (0..t.dimension())
        .map(|tau| g.elements().map(|x| t.phi[t.homs.act(g.inv(x), tau)]).collect())
        .collect();
    entries.sort();
    CharacterMultiset { level: t.context.clone(), entries }
}

/// `sum over f of mult1(f) mult2(f)`.
pub fn hom_dimension(m1: &CharacterMultiset, m2: &CharacterMultiset) -> Result<usize> {
    let (a, b) = align(m1, m2)?;
    let cb = b.counts();
    Ok(a.counts().iter().map(|(f, n)| n * cb.get(f).copied().unwrap_or(0)).sum())
}
