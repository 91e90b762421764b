//! The CM module `M_Phi` attached to a type and its realizations.
//!
//! Nothing here touches period rings. A module is stored through its type,
//! the exponent vector of its Frobenius scalar and its lattice avatar with
//! divisors `-Phi`. The crystalline side is a monomial Frobenius on the
//! components of `E (x) W(k)[1/p]`: one component per inertia orbit of
//! embeddings, permuted by Frobenius, with scalar `pi^(sum of Phi)`.

use std::collections::BTreeMap;

use num_rational::Rational64;
use rayon::prelude::*;
use serde::Serialize;

use crate::cmtype::{common_level, reflex, CMType};
use crate::drlattice::LatticePair;
use crate::error::Result;
use crate::localfield::GaloisOptions;
use crate::torus::{character_multiset, hom_dimension};

/// A component of `E (x) W(k)[1/p]`: the embeddings restricting to one
/// embedding of the maximal unramified subfield.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub embeddings: Vec<usize>,
    /// Ramification index of the factor; also the rank over `W(k)[1/p]`.
    pub ramification: usize,
}

/// `prod_tau xi_tau^Phi(tau)`, kept as exponents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrobeniusScalar {
    pub exponents: Vec<i64>,
    pub components: Vec<Component>,
    /// Exponent of `pi` in each component: the sum of `Phi` over it.
    pub crystalline_image: Vec<i64>,
}

#[derive(Clone, Debug)]
pub struct CMBKFModule {
    pub cm_type: CMType,
    pub frobenius: FrobeniusScalar,
    pub lattice: LatticePair,
}

/// Frobenius as a permutation of components with a `pi`-power on each.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Isocrystal {
    pub rank: usize,
    /// `permutation[c]`: component that Frobenius sends `c` to.
    pub permutation: Vec<usize>,
    /// p-adic valuation of the scalar on each component.
    pub scalar_valuations: Vec<Rational64>,
    pub ranks: Vec<usize>,
    /// Ascending, equal slopes merged.
    pub newton_slopes: Vec<(Rational64, usize)>,
}

impl Isocrystal {
    pub fn slope_sum(&self) -> Rational64 {
        self.newton_slopes.iter().map(|(s, m)| s * Rational64::from(*m as i64)).sum()
    }
}

fn components(t: &CMType) -> (Vec<Component>, Vec<usize>) {
    let ctx = &t.context;
    let g = ctx.group();
    let inertia = ctx.inertia();
    let frob = ctx.frobenius();
    let homs = &t.homs;
    let mut comps: Vec<Component> = Vec::new();
    let mut comp_of = vec![usize::MAX; homs.size()];
    let i_orbit = |x: usize| {
        let mut v: Vec<usize> = inertia.iter().map(|&i| homs.act(i, x)).collect();
        v.sort_unstable();
        v.dedup();
        v
    };
    for orbit in homs.orbits() {
        let mut x = orbit[0];
        while comp_of[x] == usize::MAX {
            let emb = i_orbit(x);
            for &y in &emb {
                comp_of[y] = comps.len();
            }
            comps.push(Component { ramification: emb.len(), embeddings: emb });
            x = homs.act(frob, x);
        }
    }
    let perm = comps.iter().map(|c| comp_of[homs.act(frob, c.embeddings[0])]).collect();
    debug_assert!(g.order().is_multiple_of(inertia.len()));
    (comps, perm)
}

pub fn build_module(t: &CMType) -> CMBKFModule {
    let (comps, _) = components(t);
    let crystalline_image = comps.iter().map(|c| c.embeddings.iter().map(|&x| t.phi[x]).sum()).collect();
    let frobenius = FrobeniusScalar { exponents: t.phi.clone(), components: comps, crystalline_image };
    let lattice = LatticePair::from_divisors(t.phi.iter().map(|x| -x).collect());
    CMBKFModule { cm_type: t.clone(), frobenius, lattice }
}

/// The étale realization: a rank-one module over the CM algebra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EtaleRealization {
    pub dimension: usize,
    pub cm_dimension: usize,
}

pub fn etale_realization(m: &CMBKFModule) -> EtaleRealization {
    let n = m.cm_type.dimension();
    EtaleRealization { dimension: n, cm_dimension: n }
}

/// `i -> dim gr^i`.
pub fn hodge_tate(m: &CMBKFModule) -> BTreeMap<i64, usize> {
    let mut out = BTreeMap::new();
    for &x in &m.cm_type.phi {
        *out.entry(x).or_insert(0) += 1;
    }
    out
}

pub fn crystalline_realization(m: &CMBKFModule) -> Isocrystal {
    let (comps, perm) = components(&m.cm_type);
    let vals: Vec<Rational64> = comps
        .iter()
        .zip(&m.frobenius.crystalline_image)
        .map(|(c, &s)| Rational64::new(s, c.ramification as i64))
        .collect();
    let ranks: Vec<usize> = comps.iter().map(|c| c.ramification).collect();
    let mut seen = vec![false; comps.len()];
    let mut slopes: BTreeMap<Rational64, usize> = BTreeMap::new();
    for start in 0..comps.len() {
        if seen[start] {
            continue;
        }
        let (mut c, mut len, mut total, mut rank) = (start, 0i64, Rational64::from(0), 0usize);
        while !seen[c] {
            seen[c] = true;
            total += vals[c];
            rank += ranks[c];
            len += 1;
            c = perm[c];
        }
        *slopes.entry(total / len).or_insert(0) += rank;
    }
    Isocrystal {
        rank: ranks.iter().sum(),
        permutation: perm,
        scalar_valuations: vals,
        ranks,
        newton_slopes: slopes.into_iter().collect(),
    }
}

/// Rank of `Hom(A_inf{d}, A_inf{d'})`, plain or rigidified.
pub fn hom_rank1(d: i64, d2: i64, rigidified: bool) -> usize {
    if rigidified {
        (d == d2) as usize
    } else {
        (d <= d2) as usize
    }
}

/// Dimension of the space of morphisms between two CM objects.
pub fn hom_cm(m1: &CMBKFModule, m2: &CMBKFModule, opts: &GaloisOptions) -> Result<usize> {
    let (a, b) = common_level(&m1.cm_type, &m2.cm_type, opts)?;
    hom_dimension(&character_multiset(&a), &character_multiset(&b))
}

/// Invariants used to tell modules apart: étale rank, Hodge-Tate
/// multiplicities and Newton slopes.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Invariants {
    pub etale_rank: usize,
    pub hodge_tate: Vec<(i64, usize)>,
    pub newton_slopes: Vec<(i64, i64, usize)>,
}

pub fn invariants(m: &CMBKFModule) -> Invariants {
    Invariants {
        etale_rank: etale_realization(m).dimension,
        hodge_tate: hodge_tate(m).into_iter().collect(),
        newton_slopes: crystalline_realization(m)
            .newton_slopes
            .iter()
            .map(|(s, k)| (*s.numer(), *s.denom(), *k))
            .collect(),
    }
}

/// Everything computed for one module, in serializable form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModuleReport {
    pub phi: Vec<i64>,
    pub etale_rank: usize,
    pub hodge_tate: BTreeMap<i64, usize>,
    /// `[numerator, denominator, multiplicity]`.
    pub newton_slopes: Vec<[i64; 3]>,
    pub reflex_degree: usize,
    pub lattice_divisors: Vec<i64>,
    pub frobenius_exponents: Vec<i64>,
    pub crystalline_image: Vec<i64>,
}

pub fn report(t: &CMType) -> ModuleReport {
    let m = build_module(t);
    let iso = crystalline_realization(&m);
    ModuleReport {
        phi: t.phi.clone(),
        etale_rank: etale_realization(&m).dimension,
        hodge_tate: hodge_tate(&m),
        newton_slopes: iso.newton_slopes.iter().map(|(s, k)| [*s.numer(), *s.denom(), *k as i64]).collect(),
        reflex_degree: reflex(t).degree,
        lattice_divisors: m.lattice.divisors.clone(),
        frobenius_exponents: m.frobenius.exponents.clone(),
        crystalline_image: m.frobenius.crystalline_image.clone(),
    }
}

/// [`report`] over many types in parallel; output order follows input order.
pub fn report_batch(types: &[CMType]) -> Vec<ModuleReport> {
    types.par_iter().map(report).collect()
}

/// Weighted sum of Hodge-Tate weights, `sum i dim gr^i`.
pub fn hodge_tate_weight(m: &CMBKFModule) -> i64 {
    hodge_tate(m).iter().map(|(i, d)| i * *d as i64).sum()
}
