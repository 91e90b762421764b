//! CM types `(E, Phi)`, their algebra, reflex data and reflex norms.
//!
//! The Galois group acts on types by `(g.Phi)(tau) = Phi(g^-1 tau)`. The
//! same orientation is used for the reflex norm matrix and, in the torus
//! module, for the character functions.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::localfield::{joint_context, splitting_context, FiniteGroup, GSet, GaloisContext, GaloisOptions, LocalField};

/// The CM algebra of a type, up to the data needed to rebuild `Hom(E, C)`.
#[derive(Clone, Debug)]
pub enum Algebra {
    /// `Q_p` with no prime attached.
    Base,
    Field(Arc<LocalField>),
    /// Product of algebras; embeddings are concatenated in factor order.
    Product(Vec<Algebra>),
    /// Tensor product; embeddings are pairs, left index major.
    Tensor(Box<Algebra>, Box<Algebra>),
    /// A bare G-set without field data.
    Abstract,
}

impl Algebra {
    fn fields(&self, out: &mut Vec<Arc<LocalField>>) {
        match self {
            Algebra::Field(e) => {
                if !out.iter().any(|f| f.same_presentation(e)) {
                    out.push(e.clone());
                }
            }
            Algebra::Product(v) => v.iter().for_each(|a| a.fields(out)),
            Algebra::Tensor(a, b) => {
                a.fields(out);
                b.fields(out);
            }
            Algebra::Base | Algebra::Abstract => {}
        }
    }

    fn has_abstract(&self) -> bool {
        match self {
            Algebra::Abstract => true,
            Algebra::Product(v) => v.iter().any(Algebra::has_abstract),
            Algebra::Tensor(a, b) => a.has_abstract() || b.has_abstract(),
            _ => false,
        }
    }

    /// `Hom(self, C)` as a G-set of `ctx`.
    pub fn gset(&self, ctx: &GaloisContext) -> Result<GSet> {
        let g = ctx.group();
        match self {
            Algebra::Base => Ok(GSet::trivial(g, 1)),
            Algebra::Field(e) => {
                if e.is_qp() {
                    return Ok(GSet::trivial(g, 1));
                }
                Ok(ctx.hom_set(e)?.gset)
            }
            Algebra::Product(v) => {
                let mut out: Option<GSet> = None;
                for a in v {
                    let s = a.gset(ctx)?;
                    out = Some(match out {
                        None => s,
                        Some(o) => o.disjoint_union(&s),
                    });
                }
                out.ok_or_else(|| Error::InvalidInput("empty product algebra".into()))
            }
            Algebra::Tensor(a, b) => Ok(a.gset(ctx)?.product(&b.gset(ctx)?)),
            Algebra::Abstract => Err(Error::LevelMismatch("abstract algebra has no field data".into())),
        }
    }

    /// Position in `into` of each embedding of `self` at level `from`.
    fn transport(&self, from: &GaloisContext, into: &GaloisContext) -> Result<Vec<usize>> {
        match self {
            Algebra::Base => Ok(vec![0]),
            Algebra::Field(e) if e.is_qp() => Ok(vec![0]),
            Algebra::Field(e) => from.transport(&from.hom_set(e)?, into, &into.hom_set(e)?),
            Algebra::Product(v) => {
                let mut out = Vec::new();
                for a in v {
                    let off = out.len();
                    out.extend(a.transport(from, into)?.into_iter().map(|i| i + off));
                }
                Ok(out)
            }
            Algebra::Tensor(a, b) => {
                let pa = a.transport(from, into)?;
                let pb = b.transport(from, into)?;
                let nb = pb.len();
                Ok(pa.iter().flat_map(|&i| pb.iter().map(move |&j| i * nb + j)).collect())
            }
            Algebra::Abstract => Err(Error::LevelMismatch("abstract algebra cannot change level".into())),
        }
    }
}

/// A CM type: an algebra, a Galois level, the G-set `Hom(E, C)` and the
/// integer vector `Phi` indexed by it.
#[derive(Clone, Debug)]
pub struct CMType {
    pub algebra: Algebra,
    pub context: Arc<GaloisContext>,
    pub homs: GSet,
    pub phi: Vec<i64>,
}

impl CMType {
    pub fn new(algebra: Algebra, context: Arc<GaloisContext>, phi: Vec<i64>) -> Result<Self> {
        let homs = algebra.gset(&context)?;
        Self::with_gset(algebra, context, homs, phi)
    }

    fn with_gset(algebra: Algebra, context: Arc<GaloisContext>, homs: GSet, phi: Vec<i64>) -> Result<Self> {
        if phi.len() != homs.size() {
            return Err(Error::InvalidInput(format!(
                "type has {} values but the algebra has {} embeddings",
                phi.len(),
                homs.size()
            )));
        }
        Ok(CMType { algebra, context, homs, phi })
    }

    /// `(Q_p, d)`.
    pub fn base(d: i64) -> Self {
        let ctx = Arc::new(GaloisContext::trivial());
        let homs = GSet::trivial(ctx.group(), 1);
        CMType { algebra: Algebra::Base, context: ctx, homs, phi: vec![d] }
    }

    /// A type on a field, at the level of its Galois closure.
    pub fn for_field(e: &LocalField, phi: Vec<i64>, opts: &GaloisOptions) -> Result<Self> {
        let ctx = splitting_context(e, opts)?;
        Self::new(Algebra::Field(Arc::new(e.clone())), Arc::new(ctx), phi)
    }

    /// A type on a product of fields, at their joint Galois level.
    pub fn for_product(fields: &[LocalField], phi: Vec<i64>, opts: &GaloisOptions) -> Result<Self> {
        let fields: Vec<Arc<LocalField>> = fields.iter().map(|f| Arc::new(f.clone())).collect();
        let ctx = joint_context(&fields, opts)?;
        let alg = Algebra::Product(fields.into_iter().map(Algebra::Field).collect());
        Self::new(alg, Arc::new(ctx), phi)
    }

    /// A type on a bare G-set.
    pub fn abstract_type(group: FiniteGroup, action: Vec<Vec<usize>>, phi: Vec<i64>) -> Result<Self> {
        let homs = GSet::new(&group, action)?;
        let ctx = Arc::new(GaloisContext::abstract_context(group));
        Self::with_gset(Algebra::Abstract, ctx, homs, phi)
    }

    /// Same algebra and level, new values.
    pub fn with_phi(&self, phi: Vec<i64>) -> Result<Self> {
        Self::with_gset(self.algebra.clone(), self.context.clone(), self.homs.clone(), phi)
    }

    pub fn dimension(&self) -> usize {
        self.phi.len()
    }

    pub fn group(&self) -> &FiniteGroup {
        self.context.group()
    }

    /// `g . Phi`.
    pub fn act(&self, g: usize) -> Vec<i64> {
        let gi = self.group().inv(g);
        (0..self.phi.len()).map(|t| self.phi[self.homs.act(gi, t)]).collect()
    }

    pub fn stabilizer(&self) -> Vec<usize> {
        self.group().elements().filter(|&g| self.act(g) == self.phi).collect()
    }

    /// The G-orbit of `Phi`, sorted.
    pub fn conjugates(&self) -> Vec<Vec<i64>> {
        let mut v: Vec<Vec<i64>> = self.group().elements().map(|g| self.act(g)).collect();
        v.sort();
        v.dedup();
        v
    }

    pub fn is_conjugate(&self, other: &[i64]) -> bool {
        self.group().elements().any(|g| self.act(g) == other)
    }

    pub fn is_constant(&self) -> bool {
        self.phi.windows(2).all(|w| w[0] == w[1])
    }
}

/// Stabilizer, reflex degree, reflex norm and (when recognised) a field
/// presentation of the reflex field.
#[derive(Clone, Debug)]
pub struct ReflexDatum {
    pub subgroup: Vec<usize>,
    pub degree: usize,
    /// Left cosets `gH`, each sorted, ordered by smallest element.
    pub cosets: Vec<Vec<usize>>,
    /// Row `gH`, column `tau'`: `Phi(g^-1 tau')` with `g` the smallest
    /// element of the coset.
    pub norm_matrix: Vec<Vec<i64>>,
    pub field: Option<Arc<LocalField>>,
}

pub fn reflex(t: &CMType) -> ReflexDatum {
    let g = t.group();
    let h = t.stabilizer();
    let cosets = g.left_cosets(&h);
    let norm_matrix = cosets
        .iter()
        .map(|c| {
            let gi = g.inv(c[0]);
            (0..t.phi.len()).map(|tau| t.phi[t.homs.act(gi, tau)]).collect()
        })
        .collect();
    let field = reflex_field(t, &h);
    ReflexDatum { degree: cosets.len(), subgroup: h, cosets, norm_matrix, field }
}

fn reflex_field(t: &CMType, h: &[usize]) -> Option<Arc<LocalField>> {
    let ctx = &t.context;
    let l = ctx.field()?;
    if h.len() == ctx.group().order() {
        return LocalField::qp(l.p(), l.precision()).ok().map(Arc::new);
    }
    if h.len() == 1 {
        return Some(l.clone());
    }
    let mut fields = Vec::new();
    t.algebra.fields(&mut fields);
    for e in fields {
        let Ok(hs) = ctx.hom_set(&e) else { continue };
        if (0..hs.gset.size()).any(|x| hs.gset.stabilizer(x) == h) {
            return Some(e);
        }
    }
    None
}

/// `Phi -> -Phi`.
pub fn type_dual(t: &CMType) -> CMType {
    CMType { phi: t.phi.iter().map(|x| -x).collect(), ..t.clone() }
}

/// Move `t` to the level `into`, which must contain the fields of `t`.
pub fn rebase(t: &CMType, into: &Arc<GaloisContext>) -> Result<CMType> {
    if t.context.same_level(into) {
        return Ok(CMType { context: into.clone(), ..t.clone() });
    }
    if t.group().order() == 1 && !t.algebra.has_abstract() {
        if let (Some(p), Some(q)) = (t.context.prime(), into.prime()) {
            if p != q {
                return Err(Error::LevelMismatch(format!("levels over {p} and {q}")));
            }
        }
        let homs = GSet::trivial(into.group(), t.phi.len());
        return Ok(CMType { context: into.clone(), homs, ..t.clone() });
    }
    let perm = t.algebra.transport(&t.context, into)?;
    let mut phi = vec![0; perm.len()];
    for (i, &j) in perm.iter().enumerate() {
        phi[j] = t.phi[i];
    }
    CMType::new(t.algebra.clone(), into.clone(), phi)
}

/// Bring two types to one Galois level.
pub fn common_level(t1: &CMType, t2: &CMType, opts: &GaloisOptions) -> Result<(CMType, CMType)> {
    if t1.context.same_level(&t2.context) {
        return Ok((t1.clone(), CMType { context: t1.context.clone(), ..t2.clone() }));
    }
    if t1.group().order() == 1 && !t1.algebra.has_abstract() {
        return Ok((rebase(t1, &t2.context)?, t2.clone()));
    }
    if t2.group().order() == 1 && !t2.algebra.has_abstract() {
        return Ok((t1.clone(), rebase(t2, &t1.context)?));
    }
    if t1.algebra.has_abstract() || t2.algebra.has_abstract() {
        return Err(Error::LevelMismatch("abstract types live at different levels".into()));
    }
    let mut fields = Vec::new();
    t1.algebra.fields(&mut fields);
    t2.algebra.fields(&mut fields);
    if let (Some(l1), Some(l2)) = (t1.context.field(), t2.context.field()) {
        for l in [l1, l2] {
            if !fields.iter().any(|f| f.same_presentation(l)) {
                fields.push(l.clone());
            }
        }
    }
    let ctx = Arc::new(joint_context(&fields, opts)?);
    Ok((rebase(t1, &ctx)?, rebase(t2, &ctx)?))
}

/// Type of the tensor product: `Phi(tau1, tau2) = Phi1(tau1) + Phi2(tau2)`,
/// embeddings ordered with `tau1` major.
pub fn type_tensor(t1: &CMType, t2: &CMType, opts: &GaloisOptions) -> Result<CMType> {
    if matches!(t2.algebra, Algebra::Base) {
        return Ok(CMType { phi: t1.phi.iter().map(|x| x + t2.phi[0]).collect(), ..t1.clone() });
    }
    if matches!(t1.algebra, Algebra::Base) {
        return Ok(CMType { phi: t2.phi.iter().map(|x| x + t1.phi[0]).collect(), ..t2.clone() });
    }
    let (a, b) = common_level(t1, t2, opts)?;
    let phi = a.phi.iter().flat_map(|x| b.phi.iter().map(move |y| x + y)).collect();
    let homs = a.homs.product(&b.homs);
    let algebra = Algebra::Tensor(Box::new(a.algebra), Box::new(b.algebra));
    CMType::with_gset(algebra, a.context, homs, phi)
}

/// Type of the direct sum: the product algebra with the concatenated type.
pub fn type_sum(t1: &CMType, t2: &CMType, opts: &GaloisOptions) -> Result<CMType> {
    let (a, b) = common_level(t1, t2, opts)?;
    let phi = a.phi.iter().chain(&b.phi).copied().collect();
    let homs = a.homs.disjoint_union(&b.homs);
    let algebra = Algebra::Product(vec![a.algebra, b.algebra]);
    CMType::with_gset(algebra, a.context, homs, phi)
}

/// `Phi_tau`: one at the embedding with index `tau`, zero elsewhere.
pub fn special_type(e: &LocalField, tau: usize, opts: &GaloisOptions) -> Result<CMType> {
    let n = e.degree();
    if tau >= n {
        return Err(Error::InvalidInput(format!("embedding index {tau} out of range for degree {n}")));
    }
    let mut phi = vec![0; n];
    phi[tau] = 1;
    CMType::for_field(e, phi, opts)
}

/// `Phi_tau` on an existing type's algebra and level.
pub fn special_like(t: &CMType, tau: usize) -> Result<CMType> {
    let mut phi = vec![0; t.dimension()];
    *phi.get_mut(tau).ok_or_else(|| Error::InvalidInput(format!("embedding index {tau} out of range")))? = 1;
    t.with_phi(phi)
}
