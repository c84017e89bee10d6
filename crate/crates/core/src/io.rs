//! The JSON document format shared by every command.
//!
//! A document is a version string and an ordered list of records. Records
//! refer to each other by id. Scalars are strings `"p/q"`; an element is a
//! list of terms `[coefficient, [[symbol, exponent], ...]]` where a symbol is
//! `x` for a generator, `d:x` for its form and `t:x` for its tangent dual.
//! The grammar is spelled out in `docs/FORMAT.md`.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::algebra::{self, Element, Generator, Kind, Monomial, Truncation};
use crate::cdga::FreeWCDGA;
use crate::correspondence::CompatibilityWitness;
use crate::derham::{IsotropicPair, PreSymplectic};
use crate::dgla::{BasisVector, CyclicPairing, Dgla, SmallExtension, Tensor};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::polyvector::PolyContext;
use crate::scalar::{self, Scalar};

pub const FORMAT_VERSION: &str = "1";

/// `[coefficient, [[symbol, exponent], ...]]` terms.
pub type ElementCode = Vec<(String, Vec<(String, u32)>)>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Document {
    pub format_version: String,
    pub entities: Vec<Record>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Record {
    Algebra(AlgebraRecord),
    Dgla(DglaRecord),
    Pairing(PairingRecord),
    FormStructure(FormRecord),
    PolyvectorStructure(PolyRecord),
    Witness(WitnessRecord),
    Lagrangian(LagrangianRecord),
    Extension(ExtensionRecord),
    Tensor(TensorRecord),
    Result(ResultRecord),
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TruncationRecord {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_order: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_tangent_order: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_form_order: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weight_window: Option<(i64, i64)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree_window: Option<(i64, i64)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorRecord {
    pub name: String,
    pub degree: i64,
    pub weight: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraRecord {
    pub id: String,
    pub generators: Vec<GeneratorRecord>,
    #[serde(default)]
    pub differential: BTreeMap<String, ElementCode>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub relations: Vec<ElementCode>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub nonneg_chain: bool,
    pub truncation: TruncationRecord,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LinearTerms {
    pub source: String,
    pub terms: Vec<(String, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketRecord {
    pub left: String,
    pub right: String,
    pub terms: Vec<(String, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DglaRecord {
    pub id: String,
    pub basis: Vec<GeneratorRecord>,
    #[serde(default)]
    pub differential: Vec<LinearTerms>,
    #[serde(default)]
    pub brackets: Vec<BracketRecord>,
    pub truncation: TruncationRecord,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairingEntry {
    pub left: String,
    pub right: String,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairingRecord {
    pub id: String,
    pub dgla: String,
    pub d: i64,
    pub weight: i64,
    pub entries: Vec<PairingEntry>,
    pub truncation: TruncationRecord,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormRecord {
    pub id: String,
    pub algebra: String,
    pub n: i64,
    pub m: i64,
    /// Keyed by form order.
    pub forms: BTreeMap<String, ElementCode>,
    pub truncation: TruncationRecord,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolyRecord {
    pub id: String,
    pub algebra: String,
    pub n: i64,
    pub m: i64,
    pub pi: ElementCode,
    pub truncation: TruncationRecord,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessRecord {
    pub id: String,
    pub form: String,
    pub polyvector: String,
    pub h: ElementCode,
    pub max_level: u32,
    pub truncation: TruncationRecord,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LagrangianRecord {
    pub id: String,
    /// Form structure on the source algebra.
    pub form: String,
    pub target: String,
    pub map: BTreeMap<String, ElementCode>,
    pub lambda: ElementCode,
    pub truncation: TruncationRecord,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExtensionRecord {
    pub id: String,
    pub algebra: String,
    pub kernel: Vec<Vec<(String, u32)>>,
    pub truncation: TruncationRecord,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TensorRecord {
    pub id: String,
    pub dgla: String,
    pub algebra: String,
    pub components: BTreeMap<String, ElementCode>,
    pub truncation: TruncationRecord,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResultRecord {
    pub id: String,
    pub command: String,
    pub subject: String,
    pub status: Status,
    pub summary: String,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub values: BTreeMap<String, serde_json::Value>,
    pub truncation: TruncationRecord,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
}

impl Record {
    pub fn id(&self) -> &str {
        match self {
            Record::Algebra(r) => &r.id,
            Record::Dgla(r) => &r.id,
            Record::Pairing(r) => &r.id,
            Record::FormStructure(r) => &r.id,
            Record::PolyvectorStructure(r) => &r.id,
            Record::Witness(r) => &r.id,
            Record::Lagrangian(r) => &r.id,
            Record::Extension(r) => &r.id,
            Record::Tensor(r) => &r.id,
            Record::Result(r) => &r.id,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Record::Algebra(_) => "algebra",
            Record::Dgla(_) => "dgla",
            Record::Pairing(_) => "pairing",
            Record::FormStructure(_) => "form_structure",
            Record::PolyvectorStructure(_) => "polyvector_structure",
            Record::Witness(_) => "witness",
            Record::Lagrangian(_) => "lagrangian",
            Record::Extension(_) => "extension",
            Record::Tensor(_) => "tensor",
            Record::Result(_) => "result",
        }
    }

    /// `(field, referenced id, expected kind)` for every reference.
    fn references(&self) -> Vec<(&'static str, &str, &'static str)> {
        match self {
            Record::Pairing(r) => vec![("dgla", &r.dgla, "dgla")],
            Record::FormStructure(r) => vec![("algebra", &r.algebra, "algebra")],
            Record::PolyvectorStructure(r) => vec![("algebra", &r.algebra, "algebra")],
            Record::Witness(r) => vec![("form", &r.form, "form_structure"), ("polyvector", &r.polyvector, "polyvector_structure")],
            Record::Lagrangian(r) => vec![("form", &r.form, "form_structure"), ("target", &r.target, "algebra")],
            Record::Extension(r) => vec![("algebra", &r.algebra, "algebra")],
            Record::Tensor(r) => vec![("dgla", &r.dgla, "dgla"), ("algebra", &r.algebra, "algebra")],
            _ => vec![],
        }
    }
}

fn map_serde_error(e: serde_json::Error) -> Error {
    let message = e.to_string();
    if let Some(rest) = message.strip_prefix("unknown field `") {
        if let Some(end) = rest.find('`') {
            return Error::UnknownField(rest[..end].to_string());
        }
    }
    Error::Parse { line: e.line(), column: e.column(), message }
}

/// Parse a document and check that ids are unique and references resolve.
pub fn parse(text: &str) -> Result<Document> {
    let doc: Document = serde_json::from_str(text).map_err(map_serde_error)?;
    if doc.format_version != FORMAT_VERSION {
        return Err(Error::InvalidInput(format!("unsupported format_version `{}`", doc.format_version)));
    }
    check_references(&doc)?;
    Ok(doc)
}

pub fn check_references(doc: &Document) -> Result<()> {
    let mut kinds: BTreeMap<&str, &'static str> = BTreeMap::new();
    for r in &doc.entities {
        if kinds.insert(r.id(), r.kind()).is_some() {
            return Err(Error::InvalidInput(format!("duplicate id `{}`", r.id())));
        }
    }
    for r in &doc.entities {
        for (field, target, kind) in r.references() {
            match kinds.get(target) {
                None => return Err(Error::DanglingReference(target.to_string())),
                Some(k) if *k != kind => {
                    return Err(Error::InvalidInput(format!("`{}`.{field} must name a {kind}, found {k} `{target}`", r.id())));
                }
                Some(_) => {}
            }
        }
    }
    Ok(())
}

/// Canonical text: keys sorted, two-space indentation, trailing newline.
pub fn print(doc: &Document) -> String {
    let value = serde_json::to_value(doc).expect("documents serialize");
    let mut s = serde_json::to_string_pretty(&value).expect("values print");
    s.push('\n');
    s
}

// symbols -----------------------------------------------------------------

/// Resolves element symbols against a set of generators.
#[derive(Clone, Debug, Default)]
pub struct Symbols {
    table: BTreeMap<String, Generator>,
}

pub fn symbol(g: &Generator) -> String {
    match g.kind() {
        Kind::Base => g.name().to_string(),
        Kind::Form => format!("d:{}", g.name()),
        Kind::Tangent => format!("t:{}", g.name()),
    }
}

impl Symbols {
    pub fn of(gens: impl IntoIterator<Item = Generator>) -> Self {
        Symbols { table: gens.into_iter().map(|g| (symbol(&g), g)).collect() }
    }

    /// Generators, their forms and, if given, the tangents of a polyvector context.
    pub fn for_algebra(a: &FreeWCDGA, ctx: Option<&PolyContext>) -> Self {
        let mut gens: Vec<Generator> = a.generators.clone();
        gens.extend(a.generators.iter().map(Generator::differential));
        if let Some(c) = ctx {
            gens.extend(c.tangents.iter().cloned());
        }
        Symbols::of(gens)
    }

    pub fn get(&self, s: &str) -> Result<&Generator> {
        self.table.get(s).ok_or_else(|| Error::InvalidInput(format!("unknown symbol `{s}`")))
    }

    pub fn monomial(&self, factors: &[(String, u32)]) -> Result<(i8, Monomial)> {
        let raw = factors.iter().map(|(s, k)| Ok((self.get(s)?.clone(), *k))).collect::<Result<Vec<_>>>()?;
        algebra::normalize(&raw)
    }

    pub fn element(&self, code: &ElementCode) -> Result<Element> {
        let mut out = Element::zero();
        for (c, factors) in code {
            let c = scalar::parse(c)?;
            let (sign, m) = self.monomial(factors)?;
            if sign != 0 {
                out.add_term(m, c * scalar::int(sign as i64));
            }
        }
        Ok(out)
    }
}

pub fn encode_monomial(m: &Monomial) -> Vec<(String, u32)> {
    m.factors().iter().map(|(g, k)| (symbol(g), *k)).collect()
}

pub fn encode(e: &Element) -> ElementCode {
    e.terms().map(|(m, c)| (scalar::format(c), encode_monomial(m))).collect()
}

fn truncation_of(t: &TruncationRecord) -> Truncation {
    Truncation { max_order: t.max_order, max_tangent_order: t.max_tangent_order, weight_window: t.weight_window, degree_window: t.degree_window }
}

fn truncation_record(t: &Truncation) -> TruncationRecord {
    TruncationRecord {
        max_order: t.max_order,
        max_tangent_order: t.max_tangent_order,
        max_form_order: None,
        weight_window: t.weight_window,
        degree_window: t.degree_window,
    }
}

// decoding ------------------------------------------------------------------

/// Typed access to the records of a document.
pub struct Workspace<'a> {
    pub doc: &'a Document,
}

impl<'a> Workspace<'a> {
    pub fn new(doc: &'a Document) -> Self {
        Workspace { doc }
    }

    pub fn record(&self, id: &str) -> Result<&'a Record> {
        self.doc.entities.iter().find(|r| r.id() == id).ok_or_else(|| Error::DanglingReference(id.to_string()))
    }

    /// The id of the first record of a kind.
    pub fn first(&self, kind: &str) -> Result<&'a str> {
        self.doc
            .entities
            .iter()
            .find(|r| r.kind() == kind)
            .map(Record::id)
            .ok_or_else(|| Error::InvalidInput(format!("document has no {kind} record")))
    }

    fn expect<T>(&self, id: &str, kind: &str, pick: impl Fn(&'a Record) -> Option<&'a T>) -> Result<&'a T> {
        let r = self.record(id)?;
        pick(r).ok_or_else(|| Error::InvalidInput(format!("`{id}` is a {}, expected {kind}", r.kind())))
    }

    pub fn algebra_record(&self, id: &str) -> Result<&'a AlgebraRecord> {
        self.expect(id, "algebra", |r| if let Record::Algebra(a) = r { Some(a) } else { None })
    }

    pub fn algebra(&self, id: &str) -> Result<FreeWCDGA> {
        let r = self.algebra_record(id)?;
        let gens: Vec<Generator> = r.generators.iter().map(|g| Generator::new(&g.name, g.degree, g.weight)).collect();
        let names: BTreeSet<&str> = r.generators.iter().map(|g| g.name.as_str()).collect();
        if names.len() != gens.len() {
            return Err(Error::InvalidInput(format!("`{id}` repeats a generator name")));
        }
        let symbols = Symbols::of(gens.clone());
        let mut a = FreeWCDGA::new(gens).with_truncation(truncation_of(&r.truncation));
        a.nonneg_chain = r.nonneg_chain;
        for (name, code) in &r.differential {
            let g = symbols.get(name)?.clone();
            a.differential.set(&g, symbols.element(code)?);
        }
        Ok(a)
    }

    pub fn relations(&self, id: &str) -> Result<Vec<Element>> {
        let r = self.algebra_record(id)?;
        let a = self.algebra(id)?;
        let symbols = Symbols::for_algebra(&a, None);
        r.relations.iter().map(|c| symbols.element(c)).collect()
    }

    pub fn form(&self, id: &str) -> Result<(FreeWCDGA, PreSymplectic)> {
        let r = self.expect(id, "form_structure", |r| if let Record::FormStructure(f) = r { Some(f) } else { None })?;
        let a = self.algebra(&r.algebra)?;
        let symbols = Symbols::for_algebra(&a, None);
        let maxp = r
            .truncation
            .max_form_order
            .ok_or_else(|| Error::InvalidInput(format!("`{id}` needs truncation.max_form_order")))?;
        let mut forms = BTreeMap::new();
        for (key, code) in &r.forms {
            let order: u32 = key.parse().map_err(|_| Error::InvalidInput(format!("`{id}`: form order `{key}` is not a natural number")))?;
            let e = symbols.element(code)?;
            if e.terms().any(|(m, _)| m.form_order() != order) {
                return Err(Error::InvalidInput(format!("`{id}`: entry {order} has terms of another form order")));
            }
            forms.insert(order, e);
        }
        Ok((a, PreSymplectic { n: r.n, m: r.m, forms, max_form_order: maxp }))
    }

    pub fn poly(&self, id: &str) -> Result<(PolyContext, Element)> {
        let r = self.expect(id, "polyvector_structure", |r| if let Record::PolyvectorStructure(p) = r { Some(p) } else { None })?;
        let a = self.algebra(&r.algebra)?;
        let ctx = PolyContext::new(a, r.n, r.m, r.truncation.max_tangent_order);
        let symbols = Symbols::for_algebra(&ctx.base, Some(&ctx));
        let pi = symbols.element(&r.pi)?;
        Ok((ctx, pi))
    }

    pub fn witness(&self, id: &str) -> Result<CompatibilityWitness> {
        let r = self.expect(id, "witness", |r| if let Record::Witness(w) = r { Some(w) } else { None })?;
        let (_, omega) = self.form(&r.form)?;
        let (mut ctx, pi) = self.poly(&r.polyvector)?;
        ctx.max_tangent_order = Some(r.max_level);
        let symbols = Symbols::for_algebra(&ctx.base, Some(&ctx));
        let h = symbols.element(&r.h)?;
        let residue = crate::correspondence::compatibility_residue(&ctx, &omega.total(), &pi, &h)?;
        Ok(CompatibilityWitness { context: ctx, omega, pi, h, residue, max_level: r.max_level })
    }

    pub fn lagrangian(&self, id: &str) -> Result<IsotropicPair> {
        let r = self.expect(id, "lagrangian", |r| if let Record::Lagrangian(l) = r { Some(l) } else { None })?;
        let (source, omega) = self.form(&r.form)?;
        let target = self.algebra(&r.target)?;
        let src = Symbols::of(source.generators.clone());
        let tgt = Symbols::for_algebra(&target, None);
        let mut map = BTreeMap::new();
        for (name, code) in &r.map {
            map.insert(src.get(name)?.clone(), tgt.element(code)?);
        }
        let lambda = tgt.element(&r.lambda)?;
        Ok(IsotropicPair { source, target, map, omega, lambda })
    }

    pub fn dgla(&self, id: &str) -> Result<Dgla> {
        let r = self.expect(id, "dgla", |r| if let Record::Dgla(l) = r { Some(l) } else { None })?;
        let basis: Vec<BasisVector> = r.basis.iter().map(|b| BasisVector { name: b.name.clone(), degree: b.degree, weight: b.weight }).collect();
        let mut l = Dgla::new(basis);
        let index = |name: &str| l.index(name).ok_or_else(|| Error::InvalidInput(format!("`{id}` has no basis vector `{name}`")));
        let mut diff = Vec::new();
        for t in &r.differential {
            let terms = t.terms.iter().map(|(n, c)| Ok((index(n)?, scalar::parse(c)?))).collect::<Result<Vec<_>>>()?;
            diff.push((index(&t.source)?, terms));
        }
        let mut brackets = Vec::new();
        for b in &r.brackets {
            let terms = b.terms.iter().map(|(n, c)| Ok((index(n)?, scalar::parse(c)?))).collect::<Result<Vec<_>>>()?;
            brackets.push((index(&b.left)?, index(&b.right)?, terms));
        }
        for (a, terms) in diff {
            l.set_differential(a, &terms);
        }
        // a listed pair fills in its antisymmetric partner unless that is listed too
        let listed: BTreeSet<(usize, usize)> = brackets.iter().map(|(a, b, _)| (*a, *b)).collect();
        for (a, b, terms) in &brackets {
            if listed.contains(&(*b, *a)) && a > b {
                continue;
            }
            l.set_bracket(*a, *b, terms);
        }
        for (a, b, terms) in &brackets {
            if listed.contains(&(*b, *a)) && a > b {
                l.bracket.insert((*a, *b), terms.iter().cloned().filter(|(_, c)| !num_traits::Zero::is_zero(c)).collect());
            }
        }
        Ok(l)
    }

    pub fn pairing(&self, id: &str) -> Result<(Dgla, CyclicPairing)> {
        let r = self.expect(id, "pairing", |r| if let Record::Pairing(p) = r { Some(p) } else { None })?;
        let l = self.dgla(&r.dgla)?;
        let n = l.dim();
        let mut m = Matrix::zeros(n, n);
        let mut seen = BTreeSet::new();
        let index = |name: &str| l.index(name).ok_or_else(|| Error::InvalidInput(format!("`{id}` names unknown basis vector `{name}`")));
        for e in &r.entries {
            let (a, b) = (index(&e.left)?, index(&e.right)?);
            m.set(a, b, scalar::parse(&e.value)?);
            seen.insert((a, b));
        }
        // an entry fixes its graded-symmetric partner unless that is listed too
        for e in &r.entries {
            let (a, b) = (index(&e.left)?, index(&e.right)?);
            if !seen.contains(&(b, a)) {
                let v = scalar::parse(&e.value)? * scalar::sign(l.degree(a) * l.degree(b));
                m.set(b, a, v);
            }
        }
        Ok((l, CyclicPairing { matrix: m, d: r.d, weight: r.weight }))
    }

    pub fn extension(&self, id: &str) -> Result<SmallExtension> {
        let r = self.expect(id, "extension", |r| if let Record::Extension(e) = r { Some(e) } else { None })?;
        let a = self.algebra(&r.algebra)?;
        let symbols = Symbols::of(a.generators.clone());
        let kernel = r.kernel.iter().map(|f| symbols.monomial(f).map(|(_, m)| m)).collect::<Result<Vec<_>>>()?;
        Ok(SmallExtension { algebra: a, kernel })
    }

    pub fn tensor(&self, id: &str) -> Result<(Dgla, FreeWCDGA, Tensor)> {
        let r = self.expect(id, "tensor", |r| if let Record::Tensor(t) = r { Some(t) } else { None })?;
        let l = self.dgla(&r.dgla)?;
        let a = self.algebra(&r.algebra)?;
        let symbols = Symbols::of(a.generators.clone());
        let mut t = vec![Element::zero(); l.dim()];
        for (name, code) in &r.components {
            let i = l.index(name).ok_or_else(|| Error::InvalidInput(format!("`{id}` names unknown basis vector `{name}`")))?;
            t[i] = symbols.element(code)?;
        }
        Ok((l, a, t))
    }
}

// encoding ------------------------------------------------------------------

pub fn algebra_record(id: &str, a: &FreeWCDGA, relations: &[Element]) -> AlgebraRecord {
    let differential = a
        .generators
        .iter()
        .filter_map(|g| a.differential.image(g).filter(|e| !e.is_zero()).map(|e| (g.name().to_string(), encode(e))))
        .collect();
    AlgebraRecord {
        id: id.into(),
        generators: a.generators.iter().map(|g| GeneratorRecord { name: g.name().into(), degree: g.degree(), weight: g.weight() }).collect(),
        differential,
        relations: relations.iter().map(encode).collect(),
        nonneg_chain: a.nonneg_chain,
        truncation: truncation_record(&a.truncation),
    }
}

pub fn form_record(id: &str, algebra: &str, a: &FreeWCDGA, w: &PreSymplectic) -> FormRecord {
    let mut truncation = truncation_record(&a.truncation);
    truncation.max_form_order = Some(w.max_form_order);
    FormRecord {
        id: id.into(),
        algebra: algebra.into(),
        n: w.n,
        m: w.m,
        forms: w.forms.iter().filter(|(_, e)| !e.is_zero()).map(|(k, e)| (k.to_string(), encode(e))).collect(),
        truncation,
    }
}

pub fn poly_record(id: &str, algebra: &str, ctx: &PolyContext, pi: &Element) -> PolyRecord {
    PolyRecord { id: id.into(), algebra: algebra.into(), n: ctx.n, m: ctx.m, pi: encode(pi), truncation: truncation_record(&ctx.truncation()) }
}

pub fn dgla_record(id: &str, l: &Dgla) -> DglaRecord {
    let name = |i: usize| l.basis[i].name.clone();
    let mut differential = Vec::new();
    for a in 0..l.dim() {
        let terms: Vec<(String, String)> = (0..l.dim())
            .filter(|c| !num_traits::Zero::is_zero(l.differential.get(*c, a)))
            .map(|c| (name(c), scalar::format(l.differential.get(c, a))))
            .collect();
        if !terms.is_empty() {
            differential.push(LinearTerms { source: name(a), terms });
        }
    }
    let brackets = l
        .bracket
        .iter()
        .filter(|(_, t)| !t.is_empty())
        .map(|((a, b), t)| BracketRecord { left: name(*a), right: name(*b), terms: t.iter().map(|(c, v)| (name(*c), scalar::format(v))).collect() })
        .collect();
    DglaRecord {
        id: id.into(),
        basis: l.basis.iter().map(|b| GeneratorRecord { name: b.name.clone(), degree: b.degree, weight: b.weight }).collect(),
        differential,
        brackets,
        truncation: TruncationRecord::default(),
    }
}

pub fn pairing_record(id: &str, dgla: &str, l: &Dgla, p: &CyclicPairing) -> PairingRecord {
    let mut entries = Vec::new();
    for a in 0..l.dim() {
        for b in 0..l.dim() {
            let v = p.matrix.get(a, b);
            if !num_traits::Zero::is_zero(v) {
                entries.push(PairingEntry { left: l.basis[a].name.clone(), right: l.basis[b].name.clone(), value: scalar::format(v) });
            }
        }
    }
    PairingRecord { id: id.into(), dgla: dgla.into(), d: p.d, weight: p.weight, entries, truncation: TruncationRecord::default() }
}

pub fn tensor_record(id: &str, dgla: &str, algebra: &str, l: &Dgla, a: &FreeWCDGA, t: &[Element]) -> TensorRecord {
    TensorRecord {
        id: id.into(),
        dgla: dgla.into(),
        algebra: algebra.into(),
        components: t.iter().enumerate().filter(|(_, e)| !e.is_zero()).map(|(i, e)| (l.basis[i].name.clone(), encode(e))).collect(),
        truncation: truncation_record(&a.truncation),
    }
}

pub fn witness_record(id: &str, form: &str, polyvector: &str, w: &CompatibilityWitness) -> WitnessRecord {
    WitnessRecord {
        id: id.into(),
        form: form.into(),
        polyvector: polyvector.into(),
        h: encode(&w.h),
        max_level: w.max_level,
        truncation: truncation_record(&w.context.truncation()),
    }
}

/// Scalars of a matrix as a JSON array of rows of `"p/q"` strings.
pub fn matrix_value(m: &Matrix) -> serde_json::Value {
    serde_json::Value::Array(
        (0..m.rows())
            .map(|i| serde_json::Value::Array((0..m.cols()).map(|j| serde_json::Value::String(scalar::format(m.get(i, j)))).collect()))
            .collect(),
    )
}

pub fn element_value(e: &Element) -> serde_json::Value {
    serde_json::to_value(encode(e)).expect("elements serialize")
}

pub fn scalar_value(q: &Scalar) -> serde_json::Value {
    serde_json::Value::String(scalar::format(q))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances;

    fn minimal() -> &'static str {
        r#"{
  "format_version": "1",
  "entities": [
    {"type": "algebra", "id": "A", "generators": [{"name": "x", "degree": 0, "weight": 0}, {"name": "e", "degree": -1, "weight": 0}],
     "differential": {"e": [["1", [["x", 2]]]]}, "truncation": {"max_order": 4}}
  ]
}"#
    }

    #[test]
    fn round_trip() {
        let doc = parse(minimal()).unwrap();
        let text = print(&doc);
        assert_eq!(parse(&text).unwrap(), doc);
        assert_eq!(print(&parse(&text).unwrap()), text);
        let a = Workspace::new(&doc).algebra("A").unwrap();
        assert_eq!(a.delta(&a.gen("e")).unwrap(), a.gen("x").pow(2));
    }

    #[test]
    fn unknown_field_and_dangling_reference() {
        let bad = minimal().replace("\"truncation\": {\"max_order\": 4}", "\"truncation\": {\"max_order\": 4}, \"colour\": 1");
        assert!(matches!(parse(&bad), Err(Error::UnknownField(f)) if f == "colour"));
        let dangling = r#"{"format_version": "1", "entities": [
            {"type": "polyvector_structure", "id": "P", "algebra": "missing", "n": 0, "m": 0, "pi": [], "truncation": {}}]}"#;
        assert!(matches!(parse(dangling), Err(Error::DanglingReference(id)) if id == "missing"));
        assert!(matches!(parse("{\"format_version\": \"1\",\n \"entities\": [}"), Err(Error::Parse { line: 2, .. })));
    }

    #[test]
    fn dgla_and_pairing_round_trip() {
        let (l, p) = instances::sl2();
        let doc = Document {
            format_version: FORMAT_VERSION.into(),
            entities: vec![Record::Dgla(dgla_record("L", &l)), Record::Pairing(pairing_record("K", "L", &l, &p))],
        };
        let doc = parse(&print(&doc)).unwrap();
        let ws = Workspace::new(&doc);
        assert_eq!(ws.dgla("L").unwrap(), l);
        assert_eq!(ws.pairing("K").unwrap().1, p);
    }

    #[test]
    fn structure_constant_table_fills_partners() {
        let text = r#"{"format_version": "1", "entities": [
            {"type": "dgla", "id": "L", "basis": [{"name": "h", "degree": 0, "weight": 0}, {"name": "e", "degree": 0, "weight": 0}, {"name": "f", "degree": 0, "weight": 0}],
             "brackets": [{"left": "h", "right": "e", "terms": [["e", "2"]]}, {"left": "h", "right": "f", "terms": [["f", "-2"]]}, {"left": "e", "right": "f", "terms": [["h", "1"]]}],
             "truncation": {}},
            {"type": "pairing", "id": "K", "dgla": "L", "d": 0, "weight": 0,
             "entries": [{"left": "h", "right": "h", "value": "8"}, {"left": "e", "right": "f", "value": "4"}], "truncation": {}}]}"#;
        let doc = parse(text).unwrap();
        let ws = Workspace::new(&doc);
        let (l, p) = ws.pairing("K").unwrap();
        let (l0, p0) = instances::sl2();
        assert_eq!(l, l0);
        assert_eq!(p, p0);
    }
}
