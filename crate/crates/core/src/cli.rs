//! JSON front end: job parsing, dispatch and result serialization.
//!
//! Every response carries `"schema": "cm-bkf/1"`. Exit codes: 0 on success,
//! 2 for input errors, 3 when a precision or degree limit was hit.

use std::fmt::Write as _;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{ToPrimitive, Zero};
use serde_json::{json, Map, Value};

use crate::bkf::{self, build_module, hom_cm, invariants, report, report_batch};
use crate::cmtype::{reflex, type_dual, type_tensor, Algebra, CMType};
use crate::drlattice::{cokernel_divisors, snf, LatticePair, TruncatedDVRMatrix};
use crate::error::{Error, Result};
use crate::localfield::{splitting_context, FiniteGroup, GaloisContext, GaloisOptions, LocalField};
use crate::padic::{newton_polygon, Padic, PadicPolynomial, DEFAULT_PRECISION};

pub const SCHEMA: &str = "cm-bkf/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Reflex,
    Classify,
    Realize,
    Hom,
    Tensor,
    Dual,
    Newton,
    Snf,
    Galois,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Reflex => "reflex",
            Command::Classify => "classify",
            Command::Realize => "realize",
            Command::Hom => "hom",
            Command::Tensor => "tensor",
            Command::Dual => "dual",
            Command::Newton => "newton",
            Command::Snf => "snf",
            Command::Galois => "galois",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "reflex" => Command::Reflex,
            "classify" => Command::Classify,
            "realize" => Command::Realize,
            "hom" => Command::Hom,
            "tensor" => Command::Tensor,
            "dual" => Command::Dual,
            "newton" => Command::Newton,
            "snf" => Command::Snf,
            "galois" => Command::Galois,
            _ => return Err(Error::InvalidInput(format!("unknown command {s}"))),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

#[derive(Clone, Debug)]
pub struct Options {
    pub precision: i64,
    pub degree_bound: usize,
    pub format: Format,
}

impl Default for Options {
    fn default() -> Self {
        Options { precision: DEFAULT_PRECISION, degree_bound: GaloisOptions::default().degree_bound, format: Format::Json }
    }
}

impl Options {
    fn galois(&self) -> GaloisOptions {
        GaloisOptions { degree_bound: self.degree_bound, ..GaloisOptions::default() }
    }
}

#[derive(Clone, Debug)]
pub struct JobSpec {
    pub command: Command,
    pub input: Value,
    pub options: Options,
}

/// Exit code and the serialized response.
pub fn run(job: &JobSpec) -> (i32, String) {
    let out = dispatch(job);
    let code = match &out {
        Ok(_) => 0,
        Err(e) if e.is_limit() => 3,
        Err(_) => 2,
    };
    let text = match (job.options.format, out) {
        (Format::Json, Ok(v)) => pretty(&json!({"schema": SCHEMA, "command": job.command.name(), "result": v})),
        (Format::Json, Err(e)) => pretty(&error_value(&e)),
        (Format::Text, Ok(v)) => text_report(job.command, &v),
        (Format::Text, Err(e)) => format!("error ({}): {e}\n", e.kind()),
    };
    (code, text)
}

/// Response for input that could not even be read or parsed.
pub fn input_error(msg: &str, format: Format) -> (i32, String) {
    let e = Error::InvalidInput(msg.to_string());
    match format {
        Format::Json => (2, pretty(&error_value(&e))),
        Format::Text => (2, format!("error ({}): {e}\n", e.kind())),
    }
}

fn error_value(e: &Error) -> Value {
    json!({"schema": SCHEMA, "error": {"kind": e.kind(), "message": e.to_string(), "limit": e.is_limit()}})
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

fn dispatch(job: &JobSpec) -> Result<Value> {
    let o = &job.options;
    let v = &job.input;
    match job.command {
        Command::Reflex => cmd_reflex(v, o),
        Command::Classify => cmd_classify(v, o),
        Command::Realize => cmd_realize(v, o),
        Command::Hom => cmd_hom(v, o),
        Command::Tensor => cmd_tensor(v, o),
        Command::Dual => cmd_dual(v, o),
        Command::Newton => cmd_newton(v, o),
        Command::Snf => cmd_snf(v),
        Command::Galois => cmd_galois(v, o),
    }
}

// ----- parsing -----

fn bad(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}

fn get<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| bad(format!("missing key \"{key}\"")))
}

fn as_int(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => n.as_i64().map(BigInt::from).ok_or_else(|| bad(format!("{n} is not an integer"))),
        Value::String(s) => s.parse().map_err(|_| bad(format!("{s} is not an integer"))),
        _ => Err(bad(format!("expected an integer, got {v}"))),
    }
}

fn as_i64(v: &Value) -> Result<i64> {
    as_int(v)?.to_i64().ok_or_else(|| bad("integer out of range"))
}

fn as_array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| bad(format!("{what} must be an array")))
}

fn as_rational(v: &Value) -> Result<BigRational> {
    if let Value::String(s) = v {
        if let Some((a, b)) = s.split_once('/') {
            let (a, b): (BigInt, BigInt) =
                (a.trim().parse().map_err(|_| bad(s.clone()))?, b.trim().parse().map_err(|_| bad(s.clone()))?);
            if b.is_zero() {
                return Err(bad("zero denominator"));
            }
            return Ok(BigRational::new(a, b));
        }
    }
    Ok(BigRational::from_integer(as_int(v)?))
}

fn phi_of(v: &Value) -> Result<Vec<i64>> {
    as_array(get(v, "phi")?, "phi")?.iter().map(as_i64).collect()
}

/// A parsed `"field"` value.
enum FieldSpec {
    Base,
    Field(LocalField),
    Product(Vec<LocalField>),
    Abstract(FiniteGroup, Vec<Vec<usize>>),
}

fn parse_local_field(v: &Value, prec: i64) -> Result<LocalField> {
    let p = as_i64(get(v, "p")?)?;
    let f = match v.get("f") {
        Some(x) => as_i64(x)?,
        None => 1,
    };
    if p < 2 || f < 1 {
        return Err(bad("p must be a prime and f positive"));
    }
    let coeffs = as_array(get(v, "eisenstein")?, "eisenstein")?
        .iter()
        .map(|c| match c {
            Value::Array(a) => a.iter().map(as_int).collect(),
            _ => Ok(vec![as_int(c)?]),
        })
        .collect::<Result<Vec<Vec<BigInt>>>>()?;
    LocalField::new(p as u64, f as usize, &coeffs, prec)
}

fn parse_table(v: &Value, what: &str) -> Result<Vec<Vec<usize>>> {
    as_array(v, what)?
        .iter()
        .map(|r| as_array(r, what)?.iter().map(|x| Ok(as_i64(x)? as usize)).collect())
        .collect()
}

fn parse_field(v: &Value, prec: i64) -> Result<FieldSpec> {
    if v.as_str() == Some("Qp") {
        return Ok(FieldSpec::Base);
    }
    if let Some(list) = v.get("product") {
        let items = as_array(list, "product")?;
        let p = items.iter().find_map(|x| x.get("p")).map(as_i64).transpose()?;
        let fields = items
            .iter()
            .map(|x| match (x.as_str(), p) {
                (Some("Qp"), Some(p)) => LocalField::qp(p as u64, prec),
                (Some("Qp"), None) => Err(bad("a product of copies of Qp needs a prime; give one factor as a field")),
                _ => parse_local_field(x, prec),
            })
            .collect::<Result<Vec<_>>>()?;
        if fields.is_empty() {
            return Err(bad("empty product"));
        }
        return Ok(FieldSpec::Product(fields));
    }
    if let Some(g) = v.get("group") {
        let group = FiniteGroup::from_table(parse_table(g, "group")?)?;
        let action = parse_table(get(v, "action")?, "action")?;
        return Ok(FieldSpec::Abstract(group, action));
    }
    Ok(FieldSpec::Field(parse_local_field(v, prec)?))
}

fn parse_type(v: &Value, o: &Options) -> Result<CMType> {
    let phi = phi_of(v)?;
    let g = o.galois();
    match parse_field(get(v, "field")?, o.precision)? {
        FieldSpec::Base => {
            if phi.len() != 1 {
                return Err(bad("a type on Qp has exactly one value"));
            }
            Ok(CMType::base(phi[0]))
        }
        FieldSpec::Field(e) => CMType::for_field(&e, phi, &g),
        FieldSpec::Product(es) => CMType::for_product(&es, phi, &g),
        FieldSpec::Abstract(group, action) => CMType::abstract_type(group, action, phi),
    }
}

fn pair(v: &Value) -> Result<(&Value, &Value)> {
    if let Some(a) = v.as_array() {
        if a.len() == 2 {
            return Ok((&a[0], &a[1]));
        }
        return Err(bad("expected exactly two types"));
    }
    Ok((get(v, "left")?, get(v, "right")?))
}

// ----- rendering -----

fn int_value(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(i) => json!(i),
        None => json!(x.to_string()),
    }
}

fn rational_value(x: &BigRational) -> Value {
    if x.is_integer() {
        int_value(x.numer())
    } else {
        json!(format!("{}/{}", x.numer(), x.denom()))
    }
}

fn field_value(k: &LocalField) -> Value {
    let eis: Vec<Value> = k
        .eisenstein_ints()
        .iter()
        .map(|c| if k.f() == 1 { int_value(&c[0]) } else { Value::Array(c.iter().map(int_value).collect()) })
        .collect();
    json!({"p": k.p(), "f": k.f(), "e": k.e(), "eisenstein": eis})
}

fn algebra_value(a: &Algebra) -> Value {
    match a {
        Algebra::Base => json!("Qp"),
        Algebra::Field(k) => field_value(k),
        Algebra::Product(v) => json!({"product": v.iter().map(algebra_value).collect::<Vec<_>>()}),
        Algebra::Tensor(x, y) => json!({"tensor": [algebra_value(x), algebra_value(y)]}),
        Algebra::Abstract => json!("abstract"),
    }
}

fn level_value(ctx: &GaloisContext) -> Value {
    json!({
        "group_order": ctx.group().order(),
        "field": ctx.field().map(|l| field_value(l)),
    })
}

fn slopes_value(s: &[(Rational64, usize)]) -> Value {
    json!(s.iter().map(|(r, m)| [*r.numer(), *r.denom(), *m as i64]).collect::<Vec<_>>())
}

// ----- commands -----

fn cmd_reflex(v: &Value, o: &Options) -> Result<Value> {
    let t = parse_type(v, o)?;
    let r = reflex(&t);
    Ok(json!({
        "field": algebra_value(&t.algebra),
        "phi": t.phi,
        "level": level_value(&t.context),
        "stabilizer": r.subgroup,
        "reflex_degree": r.degree,
        "cosets": r.cosets,
        "norm_matrix": r.norm_matrix,
        "reflex_field": r.field.as_deref().map(field_value),
    }))
}

fn invariants_value(t: &CMType) -> Value {
    let inv = invariants(&build_module(t));
    json!({
        "etale_rank": inv.etale_rank,
        "hodge_tate": inv.hodge_tate.iter().map(|(i, d)| (i.to_string(), json!(d))).collect::<Map<_, _>>(),
        "newton_slopes": inv.newton_slopes.iter().map(|(a, b, m)| [*a, *b, *m as i64]).collect::<Vec<_>>(),
    })
}

const CLASSIFY_LIMIT: usize = 100_000;

fn cmd_classify(v: &Value, o: &Options) -> Result<Value> {
    if v.get("phi").is_some() {
        let t = parse_type(v, o)?;
        return Ok(json!({
            "field": algebra_value(&t.algebra),
            "phi": t.phi,
            "conjugates": t.conjugates(),
            "stabilizer_order": t.stabilizer().len(),
            "reflex_degree": reflex(&t).degree,
            "invariants": invariants_value(&t),
        }));
    }
    let (lo, hi) = match v.get("range") {
        Some(r) => {
            let r = as_array(r, "range")?;
            if r.len() != 2 {
                return Err(bad("range is [low, high]"));
            }
            (as_i64(&r[0])?, as_i64(&r[1])?)
        }
        None => (0, 1),
    };
    if lo > hi {
        return Err(bad("empty range"));
    }
    let mut probe = v.clone();
    let n = match parse_field(get(v, "field")?, o.precision)? {
        FieldSpec::Base => 1,
        FieldSpec::Field(e) => e.degree(),
        FieldSpec::Product(es) => es.iter().map(LocalField::degree).sum(),
        FieldSpec::Abstract(_, a) => a.first().map_or(0, Vec::len),
    };
    let width = (hi - lo + 1) as usize;
    let total = (0..n).try_fold(1usize, |acc, _| acc.checked_mul(width)).filter(|&t| t <= CLASSIFY_LIMIT);
    let total = total.ok_or_else(|| bad(format!("more than {CLASSIFY_LIMIT} types in range")))?;
    probe["phi"] = json!(vec![lo; n]);
    let base = parse_type(&probe, o)?;
    let mut seen = std::collections::BTreeSet::new();
    let mut classes = Vec::new();
    for code in 0..total {
        let mut c = code;
        let phi: Vec<i64> = (0..n)
            .map(|_| {
                let d = (c % width) as i64 + lo;
                c /= width;
                d
            })
            .collect();
        if seen.contains(&phi) {
            continue;
        }
        let t = base.with_phi(phi.clone())?;
        let orbit = t.conjugates();
        seen.extend(orbit.iter().cloned());
        classes.push(json!({
            "representative": orbit[0],
            "orbit_size": orbit.len(),
            "reflex_degree": reflex(&t).degree,
            "invariants": invariants_value(&t),
        }));
    }
    Ok(json!({
        "field": algebra_value(&base.algebra),
        "level": level_value(&base.context),
        "range": [lo, hi],
        "class_count": classes.len(),
        "classes": classes,
    }))
}

fn report_value(t: &CMType, r: &bkf::ModuleReport) -> Value {
    let mut v = serde_json::to_value(r).expect("report serializes");
    v["field"] = algebra_value(&t.algebra);
    v
}

fn cmd_realize(v: &Value, o: &Options) -> Result<Value> {
    if let Some(items) = v.as_array() {
        let types = items.iter().map(|x| parse_type(x, o)).collect::<Result<Vec<_>>>()?;
        let reports = report_batch(&types);
        return Ok(Value::Array(types.iter().zip(&reports).map(|(t, r)| report_value(t, r)).collect()));
    }
    let t = parse_type(v, o)?;
    let mut out = report_value(&t, &report(&t));
    let iso = bkf::crystalline_realization(&build_module(&t));
    out["isocrystal"] = json!({
        "rank": iso.rank,
        "permutation": iso.permutation,
        "ranks": iso.ranks,
        "scalar_valuations": iso.scalar_valuations.iter().map(|r| [*r.numer(), *r.denom()]).collect::<Vec<_>>(),
    });
    Ok(out)
}

fn cmd_hom(v: &Value, o: &Options) -> Result<Value> {
    let (a, b) = pair(v)?;
    let (t1, t2) = (parse_type(a, o)?, parse_type(b, o)?);
    let n = hom_cm(&build_module(&t1), &build_module(&t2), &o.galois())?;
    let mut out = json!({"hom": n});
    if let (Algebra::Base, Algebra::Base) = (&t1.algebra, &t2.algebra) {
        out["rank1"] = json!({
            "plain": bkf::hom_rank1(t1.phi[0], t2.phi[0], false),
            "rigidified": bkf::hom_rank1(t1.phi[0], t2.phi[0], true),
        });
    }
    Ok(out)
}

fn cmd_tensor(v: &Value, o: &Options) -> Result<Value> {
    let (a, b) = pair(v)?;
    let (t1, t2) = (parse_type(a, o)?, parse_type(b, o)?);
    let t = type_tensor(&t1, &t2, &o.galois())?;
    Ok(json!({
        "field": algebra_value(&t.algebra),
        "phi": t.phi,
        "level": level_value(&t.context),
    }))
}

fn cmd_dual(v: &Value, o: &Options) -> Result<Value> {
    let t = type_dual(&parse_type(v, o)?);
    Ok(json!({"field": algebra_value(&t.algebra), "phi": t.phi}))
}

fn cmd_newton(v: &Value, o: &Options) -> Result<Value> {
    let p = as_i64(get(v, "p")?)?;
    if p < 2 {
        return Err(bad("p must be a prime"));
    }
    let coeffs = as_array(get(v, "coeffs")?, "coeffs")?
        .iter()
        .map(|c| {
            let r = as_rational(c)?;
            Padic::from_ratio(p as u64, r.numer().clone(), r.denom().clone(), o.precision)
        })
        .collect::<Result<Vec<_>>>()?;
    let poly = PadicPolynomial::new(p as u64, coeffs)?;
    Ok(json!({"slopes": slopes_value(&newton_polygon(&poly)?)}))
}

fn parse_matrix(v: &Value, prec: usize) -> Result<TruncatedDVRMatrix<BigRational>> {
    let rows = as_array(v, "matrix")?
        .iter()
        .map(|r| {
            as_array(r, "matrix row")?
                .iter()
                .map(|e| match e {
                    Value::Array(cs) => cs.iter().map(as_rational).collect(),
                    _ => Ok(vec![as_rational(e)?]),
                })
                .collect::<Result<Vec<Vec<BigRational>>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    TruncatedDVRMatrix::new(&BigRational::zero(), prec, rows)
}

fn matrix_value(m: &TruncatedDVRMatrix<BigRational>) -> Value {
    json!(m
        .entries
        .iter()
        .map(|r| r
            .iter()
            .map(|s| {
                let last = s.iter().rposition(|c| !c.is_zero()).map_or(1, |i| i + 1);
                s[..last].iter().map(rational_value).collect::<Vec<_>>()
            })
            .collect::<Vec<_>>())
        .collect::<Vec<_>>())
}

fn cmd_snf(v: &Value) -> Result<Value> {
    let m = get(v, "matrix")?;
    let size = as_array(m, "matrix")?.len();
    let prec = match v.get("precision") {
        Some(x) => as_i64(x)?.max(1) as usize,
        None => {
            let deg = m.as_array().into_iter().flatten().flat_map(|r| r.as_array().into_iter().flatten()).map(|e| {
                e.as_array().map_or(1, Vec::len)
            });
            deg.max().unwrap_or(1) * size.max(1) + size + 4
        }
    };
    let a = parse_matrix(m, prec)?;
    if let (Some(s), Some(t)) = (v.get("source"), v.get("target")) {
        let div = |x: &Value| -> Result<LatticePair> {
            Ok(LatticePair::from_divisors(as_array(x, "divisors")?.iter().map(as_i64).collect::<Result<_>>()?))
        };
        let (src, tgt) = (div(s)?, div(t)?);
        let keep = |x: &LatticePair| x.divisors.clone();
        let c = cokernel_divisors(&a, &src, &tgt)?;
        return Ok(json!({
            "precision": prec,
            "source": keep(&src),
            "target": keep(&tgt),
            "divisors": c.divisors,
            "cokernel_free": c.free,
            "cokernel_rank": c.free_rank,
        }));
    }
    let s = snf(&a)?;
    Ok(json!({
        "precision": prec,
        "divisors": s.divisors,
        "left": matrix_value(&s.left),
        "right": matrix_value(&s.right),
    }))
}

fn cmd_galois(v: &Value, o: &Options) -> Result<Value> {
    let fv = v.get("field").unwrap_or(v);
    let e = match parse_field(fv, o.precision)? {
        FieldSpec::Field(e) => e,
        FieldSpec::Base => return Err(bad("galois needs a field with a prime; use {\"p\": p, \"eisenstein\": [-p, 1]}")),
        _ => return Err(bad("galois takes a single field")),
    };
    let ctx = splitting_context(&e, &o.galois())?;
    let homs = ctx.hom_set(&Arc::new(e.clone()))?;
    Ok(json!({
        "field": field_value(&e),
        "closure": ctx.field().map(|l| field_value(l)),
        "group_order": ctx.group().order(),
        "group_table": ctx.group().table(),
        "inertia": ctx.inertia(),
        "frobenius": ctx.frobenius(),
        "embeddings": homs.gset.size(),
        "action": homs.gset.table(),
        "orbits": homs.gset.orbits(),
    }))
}

// ----- text mode -----

fn text_report(cmd: Command, v: &Value) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{}", cmd.name());
    match cmd {
        Command::Realize | Command::Classify => {
            let _ = writeln!(
                s,
                "CM objects with this algebra are classified by their type Phi: Hom(E, C) -> Z; \
                 isomorphic objects have Galois-conjugate types."
            );
        }
        _ => {}
    }
    flatten(&mut s, "", v);
    s
}

fn flatten(out: &mut String, prefix: &str, v: &Value) {
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                let p = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(out, &p, x);
            }
        }
        Value::Array(a) if a.iter().any(Value::is_object) => {
            for (i, x) in a.iter().enumerate() {
                flatten(out, &format!("{prefix}[{i}]"), x);
            }
        }
        _ => {
            let _ = writeln!(out, "  {prefix}: {v}");
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn job(cmd: Command, input: Value) -> (i32, Value) {
        let (code, out) = run(&JobSpec { command: cmd, input, options: Options { precision: 24, ..Options::default() } });
        (code, serde_json::from_str(&out).unwrap())
    }

    #[test]
    fn realize_sqrt5() {
        let (code, v) = job(Command::Realize, json!({"field": {"p": 5, "f": 1, "eisenstein": [-5, 0, 1]}, "phi": [1, 0]}));
        assert_eq!(code, 0);
        assert_eq!(v["schema"], SCHEMA);
        let r = &v["result"];
        assert_eq!(r["etale_rank"], 2);
        assert_eq!(r["hodge_tate"], json!({"0": 1, "1": 1}));
        assert_eq!(r["newton_slopes"], json!([[1, 2, 2]]));
    }

    #[test]
    fn hom_of_rank_one() {
        let t = json!({"field": "Qp", "phi": [3]});
        let (code, v) = job(Command::Hom, json!([t, t]));
        assert_eq!(code, 0);
        assert_eq!(v["result"]["hom"], 1);
    }

    #[test]
    fn snf_example() {
        let (code, v) = job(Command::Snf, json!({"matrix": [[1, 1], [[0, 1], 0]]}));
        assert_eq!(code, 0);
        assert_eq!(v["result"]["divisors"], json!([1, 0]));
    }

    #[test]
    fn exit_codes() {
        let (code, v) = job(Command::Realize, json!({"field": {"p": 5, "eisenstein": [6, 0, 1]}, "phi": [1, 0]}));
        assert_eq!(code, 2);
        assert_eq!(v["error"]["kind"], "NotEisenstein");
        let (code, _) = job(Command::Realize, json!({"phi": [1]}));
        assert_eq!(code, 2);
        let big = json!({"field": {"p": 5, "f": 9, "eisenstein": [-5, 1]}, "phi": vec![0; 9]});
        let (code, v) = job(Command::Reflex, big);
        assert_eq!(code, 3);
        assert_eq!(v["error"]["kind"], "DegreeBoundExceeded");
    }
}
