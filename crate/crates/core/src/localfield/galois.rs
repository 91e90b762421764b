use std::collections::BTreeSet;
use std::sync::Arc;

use super::extend::extend;
use super::field::{FieldElem, LocalField};
use super::roots::{find_roots, separation, Obstruction};
use super::unramified::UElem;
use crate::error::{Error, Result};
use crate::padic::Valuation;

/// Limits for splitting-field construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GaloisOptions {
    /// Largest `[E:Q_p]` accepted as input.
    pub degree_bound: usize,
    /// Largest degree the Galois closure may reach.
    pub closure_bound: usize,
}

impl Default for GaloisOptions {
    fn default() -> Self {
        GaloisOptions { degree_bound: 8, closure_bound: 48 }
    }
}

/// A finite group given by its multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
    inverse: Vec<usize>,
    identity: usize,
}

impl FiniteGroup {
    /// Validate a Cayley table (`table[a][b] = a*b`).
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidInput("empty group table".into()));
        }
        if table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(Error::InvalidInput("group table is not an n x n table over 0..n".into()));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| table[e][a] == a && table[a][e] == a))
            .ok_or_else(|| Error::InvalidInput("group table has no identity".into()))?;
        let mut inverse = vec![0; n];
        for a in 0..n {
            inverse[a] = (0..n)
                .find(|&b| table[a][b] == identity && table[b][a] == identity)
                .ok_or_else(|| Error::InvalidInput(format!("element {a} has no inverse")))?;
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::InvalidInput("group table is not associative".into()));
                    }
                }
            }
        }
        Ok(FiniteGroup { table, inverse, identity })
    }

    pub fn trivial() -> Self {
        FiniteGroup { table: vec![vec![0]], inverse: vec![0], identity: 0 }
    }

    pub fn cyclic(n: usize) -> Self {
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        FiniteGroup::from_table(table).expect("cyclic table")
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    /// Subgroup generated by `gens`, as a sorted list.
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut set: BTreeSet<usize> = BTreeSet::new();
        set.insert(self.identity);
        let mut frontier: Vec<usize> = vec![self.identity];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if set.insert(y) {
                    frontier.push(y);
                }
            }
        }
        set.into_iter().collect()
    }

    pub fn is_subgroup(&self, h: &[usize]) -> bool {
        let set: BTreeSet<usize> = h.iter().copied().collect();
        set.contains(&self.identity) && h.iter().all(|&a| h.iter().all(|&b| set.contains(&self.mul(a, self.inv(b)))))
    }

    /// All subgroups, ordered by size then lexicographically.
    pub fn subgroups(&self) -> Vec<Vec<usize>> {
        let mut all: BTreeSet<Vec<usize>> = self.elements().map(|g| self.closure(&[g])).collect();
        loop {
            let current: Vec<Vec<usize>> = all.iter().cloned().collect();
            let mut added = false;
            for i in 0..current.len() {
                for j in i + 1..current.len() {
                    let gens: Vec<usize> = current[i].iter().chain(&current[j]).copied().collect();
                    if all.insert(self.closure(&gens)) {
                        added = true;
                    }
                }
            }
            if !added {
                break;
            }
        }
        let mut v: Vec<Vec<usize>> = all.into_iter().collect();
        v.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
        v
    }

    /// Left cosets `gH`, each sorted, ordered by smallest element.
    pub fn left_cosets(&self, h: &[usize]) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.order()];
        let mut out = Vec::new();
        for g in self.elements() {
            if seen[g] {
                continue;
            }
            let mut c: Vec<usize> = h.iter().map(|&x| self.mul(g, x)).collect();
            c.sort_unstable();
            for &x in &c {
                seen[x] = true;
            }
            out.push(c);
        }
        out
    }

    pub fn conjugate_subgroup(&self, h: &[usize], g: usize) -> Vec<usize> {
        let mut c: Vec<usize> = h.iter().map(|&x| self.mul(self.mul(g, x), self.inv(g))).collect();
        c.sort_unstable();
        c
    }
}

/// A left action: `action[g][x]` is the image of point `x` under `g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GSet {
    action: Vec<Vec<usize>>,
}

impl GSet {
    pub fn new(group: &FiniteGroup, action: Vec<Vec<usize>>) -> Result<Self> {
        if action.len() != group.order() {
            return Err(Error::InvalidInput("action table needs one row per group element".into()));
        }
        let n = action.first().map_or(0, Vec::len);
        for row in &action {
            let mut seen = vec![false; n];
            if row.len() != n {
                return Err(Error::InvalidInput("action rows differ in length".into()));
            }
            for &x in row {
                if x >= n || seen[x] {
                    return Err(Error::InvalidInput("action row is not a permutation".into()));
                }
                seen[x] = true;
            }
        }
        if action[group.identity()].iter().enumerate().any(|(i, &x)| i != x) {
            return Err(Error::InvalidInput("identity does not act trivially".into()));
        }
        for g in group.elements() {
            for h in group.elements() {
                let gh = group.mul(g, h);
                if (0..n).any(|x| action[gh][x] != action[g][action[h][x]]) {
                    return Err(Error::InvalidInput("table is not a left action".into()));
                }
            }
        }
        Ok(GSet { action })
    }

    /// `n` points fixed by every element.
    pub fn trivial(group: &FiniteGroup, n: usize) -> Self {
        GSet { action: vec![(0..n).collect(); group.order()] }
    }

    /// Disjoint union, points of `other` numbered after those of `self`.
    pub fn disjoint_union(&self, other: &GSet) -> GSet {
        let n = self.size();
        let action = self
            .action
            .iter()
            .zip(&other.action)
            .map(|(a, b)| a.iter().copied().chain(b.iter().map(|&x| x + n)).collect())
            .collect();
        GSet { action }
    }

    /// Product set with `(x, y)` numbered `x * |other| + y`.
    pub fn product(&self, other: &GSet) -> GSet {
        let m = other.size();
        let action = self
            .action
            .iter()
            .zip(&other.action)
            .map(|(a, b)| {
                let mut row = vec![0; a.len() * m];
                for (x, &gx) in a.iter().enumerate() {
                    for (y, &gy) in b.iter().enumerate() {
                        row[x * m + y] = gx * m + gy;
                    }
                }
                row
            })
            .collect();
        GSet { action }
    }

    pub fn size(&self) -> usize {
        self.action.first().map_or(0, Vec::len)
    }

    pub fn act(&self, g: usize, x: usize) -> usize {
        self.action[g][x]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.action
    }

    pub fn stabilizer(&self, x: usize) -> Vec<usize> {
        (0..self.action.len()).filter(|&g| self.action[g][x] == x).collect()
    }

    pub fn orbit(&self, x: usize) -> Vec<usize> {
        let s: BTreeSet<usize> = self.action.iter().map(|row| row[x]).collect();
        s.into_iter().collect()
    }

    /// Orbits as sorted lists, ordered by smallest point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.size()];
        let mut out = Vec::new();
        for x in 0..self.size() {
            if !seen[x] {
                let o = self.orbit(x);
                for &y in &o {
                    seen[y] = true;
                }
                out.push(o);
            }
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.size() == 0 || self.orbit(0).len() == self.size()
    }
}

/// A field embedding `E -> L`, recorded by the images of the generators.
#[derive(Clone, Debug)]
pub struct Embedding {
    pub source: Arc<LocalField>,
    pub target: Arc<LocalField>,
    /// Image of the unramified generator `y` of the source.
    pub eta: UElem,
    /// Image of the source uniformizer.
    pub pi_image: FieldElem,
    /// Image of the source primitive element `pi + y`.
    pub image_of_primitive: FieldElem,
}

impl Embedding {
    pub fn apply(&self, z: &FieldElem) -> FieldElem {
        let (s, t) = (&self.source, &self.target);
        let mut acc = t.zero();
        for c in z.iter().rev() {
            let mapped = t.from_u(s.unramified().map_into(c, t.unramified(), &self.eta));
            acc = t.add(&t.mul(&acc, &self.pi_image), &mapped);
        }
        acc
    }
}

/// An automorphism of the splitting field: `Frob^k` on the unramified part and
/// `pi -> pi_image`.
#[derive(Clone, Debug)]
pub struct Automorphism {
    pub frobenius_power: usize,
    pub pi_image: FieldElem,
    pub theta_image: FieldElem,
}

/// Field data behind a [`GaloisContext`].
#[derive(Clone, Debug)]
pub struct Splitting {
    pub field: Arc<LocalField>,
    pub automorphisms: Vec<Automorphism>,
    separation: Option<i64>,
}

impl Splitting {
    pub fn apply(&self, g: usize, z: &FieldElem) -> FieldElem {
        let l = &self.field;
        let a = &self.automorphisms[g];
        let u = l.unramified();
        let mut acc = l.zero();
        for c in z.iter().rev() {
            let fc = l.from_u(u.frobenius(c, a.frobenius_power));
            acc = l.add(&l.mul(&acc, &a.pi_image), &fc);
        }
        acc
    }
}

/// The set `Hom(E, L)` of a field in a context, with its G-action.
#[derive(Clone, Debug)]
pub struct HomSet {
    pub field: Arc<LocalField>,
    pub embeddings: Vec<Embedding>,
    pub gset: GSet,
}

/// A finite Galois level: the group, optionally the splitting field it comes
/// from, and the G-sets tracked so far.
#[derive(Clone, Debug)]
pub struct GaloisContext {
    group: FiniteGroup,
    splitting: Option<Splitting>,
    tracked: Vec<HomSet>,
}

fn key_digits(l: &LocalField) -> i64 {
    (l.precision() / 2).max(4)
}

fn nearest(l: &LocalField, x: &FieldElem, list: &[FieldElem], sep: Option<i64>) -> Result<usize> {
    let mut best: Option<(usize, i64)> = None;
    for (i, r) in list.iter().enumerate() {
        let d = l.sub(x, r);
        let v = if l.is_zero_at_precision(&d) {
            i64::MAX
        } else {
            match l.valuation(&d) {
                Ok(Valuation::Finite(v)) => v,
                Ok(Valuation::Infinity) => i64::MAX,
                Err(_) => l.val_lower_bound(&d),
            }
        };
        if best.is_none_or(|(_, bv)| v > bv) {
            best = Some((i, v));
        }
    }
    let (i, v) = best.ok_or_else(|| Error::InvalidInput("no candidates to match".into()))?;
    if let Some(s) = sep {
        if v <= s {
            return Err(Error::PrecisionExhausted(
                "image of a root is not closer to one root than the roots are to each other".into(),
            ));
        }
    }
    Ok(i)
}

/// Embeddings of `e` into `l` together with the first obstruction to
/// finding all `[E:Q_p]` of them.
fn embedding_search(e: &Arc<LocalField>, l: &Arc<LocalField>) -> Result<(Vec<Embedding>, Option<Obstruction>)> {
    let ul = l.unramified();
    let g: Vec<UElem> = e.unramified().modulus_ints().iter().map(|&c| ul.from_int(c)).collect();
    let (etas, bad) = ul.simple_roots(&g)?;
    let mut obstruction = bad.first().map(|&d| Obstruction::Unramified { degree: d });
    let mut out = Vec::new();
    for eta in etas {
        let poly: Vec<FieldElem> = e
            .eisenstein()
            .iter()
            .map(|h| l.from_u(e.unramified().map_into(h, ul, &eta)))
            .collect();
        let search = find_roots(l, &poly)?;
        if obstruction.is_none() {
            obstruction = search.obstruction.clone();
        }
        for r in search.roots {
            let theta = l.add(&r, &l.from_u(eta.clone()));
            out.push(Embedding {
                source: e.clone(),
                target: l.clone(),
                eta: eta.clone(),
                pi_image: r,
                image_of_primitive: theta,
            });
        }
    }
    let digits = key_digits(l);
    out.sort_by_cached_key(|emb| l.key(&emb.image_of_primitive, digits));
    Ok((out, obstruction))
}

/// All embeddings `E -> L`, sorted by the canonical representative of the
/// image of the primitive element.
pub fn embeddings(e: &LocalField, l: &LocalField) -> Result<Vec<Embedding>> {
    let (e, l) = (Arc::new(e.clone()), Arc::new(l.clone()));
    let (out, _) = embedding_search(&e, &l)?;
    let images: Vec<FieldElem> = out.iter().map(|x| x.image_of_primitive.clone()).collect();
    separation(&l, &images)?;
    Ok(out)
}

/// Smallest field (built as a tower over `fields[0]`) containing every
/// conjugate of every field in `fields`.
fn split_all(fields: &[Arc<LocalField>], opts: &GaloisOptions) -> Result<Arc<LocalField>> {
    let prec = fields.iter().map(|f| f.precision()).min().unwrap();
    let mut l = Arc::new(fields[0].as_ref().clone());
    if l.precision() != prec {
        l = Arc::new(LocalField::from_unit_poly(l.unramified().clone(), l.eisenstein().to_vec(), prec)?);
    }
    'outer: loop {
        for e in fields {
            let (embs, obs) = embedding_search(e, &l)?;
            if let Some(o) = obs {
                let next = extend(&l, &o)?;
                if next.degree() > opts.closure_bound {
                    return Err(Error::DegreeBoundExceeded { degree: next.degree(), bound: opts.closure_bound });
                }
                l = Arc::new(next);
                continue 'outer;
            }
            if embs.len() != e.degree() {
                return Err(Error::PrecisionExhausted(format!(
                    "found {} of {} embeddings without an obstruction",
                    embs.len(),
                    e.degree()
                )));
            }
        }
        return Ok(l);
    }
}

fn automorphisms(l: &Arc<LocalField>) -> Result<Splitting> {
    let u = l.unramified();
    let mut autos = Vec::new();
    for k in 0..l.f() {
        let poly: Vec<FieldElem> = l.eisenstein().iter().map(|h| l.from_u(u.frobenius(h, k))).collect();
        let search = find_roots(l, &poly)?;
        if search.obstruction.is_some() || search.roots.len() != l.e() {
            return Err(Error::InvalidInput("field is not Galois over Q_p".into()));
        }
        for r in search.roots {
            let theta = l.add(&r, &l.from_u(u.frobenius(&u.y(), k)));
            autos.push(Automorphism { frobenius_power: k, pi_image: r, theta_image: theta });
        }
    }
    let digits = key_digits(l);
    let id_theta = l.theta();
    let (mut id, mut rest): (Vec<Automorphism>, Vec<Automorphism>) = autos
        .into_iter()
        .partition(|a| a.frobenius_power == 0 && l.is_zero_at_precision(&l.sub(&a.theta_image, &id_theta)));
    if id.len() != 1 {
        return Err(Error::PrecisionExhausted("identity automorphism not isolated".into()));
    }
    rest.sort_by_cached_key(|a| l.key(&a.theta_image, digits));
    id.append(&mut rest);
    let images: Vec<FieldElem> = id.iter().map(|a| a.theta_image.clone()).collect();
    let sep = separation(l, &images)?;
    Ok(Splitting { field: l.clone(), automorphisms: id, separation: sep })
}

impl GaloisContext {
    /// Context of the Galois field `l` itself.
    pub fn of_galois_field(l: Arc<LocalField>) -> Result<Self> {
        let s = automorphisms(&l)?;
        let n = s.automorphisms.len();
        let images: Vec<FieldElem> = s.automorphisms.iter().map(|a| a.theta_image.clone()).collect();
        let mut table = vec![vec![0; n]; n];
        for (a, row) in table.iter_mut().enumerate() {
            for (cell, image) in row.iter_mut().zip(&images) {
                *cell = nearest(&l, &s.apply(a, image), &images, s.separation)?;
            }
        }
        let group = FiniteGroup::from_table(table)?;
        Ok(GaloisContext { group, splitting: Some(s), tracked: Vec::new() })
    }

    /// Purely combinatorial context.
    pub fn abstract_context(group: FiniteGroup) -> Self {
        GaloisContext { group, splitting: None, tracked: Vec::new() }
    }

    pub fn trivial() -> Self {
        Self::abstract_context(FiniteGroup::trivial())
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn splitting(&self) -> Option<&Splitting> {
        self.splitting.as_ref()
    }

    pub fn field(&self) -> Option<&Arc<LocalField>> {
        self.splitting.as_ref().map(|s| &s.field)
    }

    pub fn tracked(&self) -> &[HomSet] {
        &self.tracked
    }

    /// Elements acting trivially on the residue field. Without field data
    /// the whole group is returned.
    pub fn inertia(&self) -> Vec<usize> {
        match &self.splitting {
            Some(s) => (0..s.automorphisms.len()).filter(|&g| s.automorphisms[g].frobenius_power == 0).collect(),
            None => self.group.elements().collect(),
        }
    }

    /// An element inducing the arithmetic Frobenius on the residue field
    /// (the identity when the residue extension is trivial).
    pub fn frobenius(&self) -> usize {
        match &self.splitting {
            Some(s) if s.field.f() > 1 => {
                s.automorphisms.iter().position(|a| a.frobenius_power == 1).unwrap_or(self.group.identity())
            }
            _ => self.group.identity(),
        }
    }

    /// Prime of the context field, if there is one.
    pub fn prime(&self) -> Option<u64> {
        self.field().map(|l| l.p())
    }

    /// True when both contexts describe the same level with the same
    /// element ordering.
    pub fn same_level(&self, other: &GaloisContext) -> bool {
        if self.group != other.group {
            return false;
        }
        match (self.field(), other.field()) {
            (Some(a), Some(b)) => Arc::ptr_eq(a, b) || a.same_presentation(b),
            (None, None) => true,
            _ => self.group.order() == 1,
        }
    }

    /// `Hom(E, L)` with the action by post-composition.
    pub fn hom_set(&self, e: &Arc<LocalField>) -> Result<HomSet> {
        if let Some(h) = self.tracked.iter().find(|h| h.field.same_presentation(e)) {
            return Ok(h.clone());
        }
        let s = self
            .splitting
            .as_ref()
            .ok_or_else(|| Error::LevelMismatch("abstract context carries no field data".into()))?;
        let l = &s.field;
        let (embs, _) = embedding_search(e, l)?;
        if embs.len() != e.degree() {
            return Err(Error::LevelMismatch(format!(
                "{} has only {} of {} embeddings into the context field",
                e,
                embs.len(),
                e.degree()
            )));
        }
        let images: Vec<FieldElem> = embs.iter().map(|x| x.image_of_primitive.clone()).collect();
        let sep = separation(l, &images)?;
        let mut action = Vec::with_capacity(self.group.order());
        for g in self.group.elements() {
            let row = images
                .iter()
                .map(|x| nearest(l, &s.apply(g, x), &images, sep))
                .collect::<Result<Vec<usize>>>()?;
            action.push(row);
        }
        let gset = GSet::new(&self.group, action)?;
        Ok(HomSet { field: e.clone(), embeddings: embs, gset })
    }

    pub fn track(&mut self, e: &Arc<LocalField>) -> Result<HomSet> {
        let h = self.hom_set(e)?;
        if !self.tracked.iter().any(|t| t.field.same_presentation(e)) {
            self.tracked.push(h.clone());
        }
        Ok(h)
    }

    /// Position of `iota o tau` in `target`, for every `tau` in `source`,
    /// where `iota` is the first embedding of this context's field into the
    /// field of `into`.
    pub fn transport(&self, source: &HomSet, into: &GaloisContext, target: &HomSet) -> Result<Vec<usize>> {
        let (Some(l1), Some(m)) = (self.field(), into.field()) else {
            return Err(Error::LevelMismatch("transport needs field data on both levels".into()));
        };
        let iotas = into.hom_set(l1)?;
        let iota = &iotas.embeddings[0];
        let images: Vec<FieldElem> = target.embeddings.iter().map(|x| x.image_of_primitive.clone()).collect();
        let sep = separation(m, &images)?;
        source
            .embeddings
            .iter()
            .map(|tau| nearest(m, &iota.apply(&tau.image_of_primitive), &images, sep))
            .collect()
    }
}

/// Galois closure of `E` with `Hom(E, L)` tracked.
pub fn splitting_context(e: &LocalField, opts: &GaloisOptions) -> Result<GaloisContext> {
    if e.degree() > opts.degree_bound {
        return Err(Error::DegreeBoundExceeded { degree: e.degree(), bound: opts.degree_bound });
    }
    let e = Arc::new(e.clone());
    let l = split_all(std::slice::from_ref(&e), opts)?;
    let mut ctx = GaloisContext::of_galois_field(l)?;
    ctx.track(&e)?;
    Ok(ctx)
}

/// Smallest Galois level containing all of `fields`, each tracked.
pub fn joint_context(fields: &[Arc<LocalField>], opts: &GaloisOptions) -> Result<GaloisContext> {
    if fields.is_empty() {
        return Err(Error::InvalidInput("no fields given".into()));
    }
    for e in fields {
        if e.degree() > opts.degree_bound {
            return Err(Error::DegreeBoundExceeded { degree: e.degree(), bound: opts.degree_bound });
        }
        if e.p() != fields[0].p() {
            return Err(Error::LevelMismatch("fields over different primes".into()));
        }
    }
    let mut order: Vec<Arc<LocalField>> = fields.to_vec();
    order.sort_by_key(|f| std::cmp::Reverse(f.degree()));
    let l = split_all(&order, opts)?;
    let mut ctx = GaloisContext::of_galois_field(l)?;
    for e in fields {
        ctx.track(e)?;
    }
    Ok(ctx)
}
