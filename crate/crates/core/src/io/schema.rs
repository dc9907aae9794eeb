//! JSON documents describing algebras, representations and maps.
//!
//! Coefficients are strings `"p/q"`. Linear terms name a basis label; cdga
//! polynomial terms name a monomial such as `"x^2*u"` (or `"1"`).

use std::collections::BTreeMap;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::cdga::{AlgebraMap, ArtinianAlgebra, CdgaPresentation};
use crate::error::{Error, Result};
use crate::lie::{adjoint_rep, coadjoint_rep, free_lie, trivial_rep, DgLieAlgebra, LieMorphism, Representation};
use crate::linalg::{add_entry, SparseVec};
use crate::monomial::{add_term, GenSet, Monomial, Poly};
use crate::rational::Q;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    DgLie,
    FreeLie,
    Cdga,
    Artinian,
    Representation,
    AlgebraMap,
    LieMorphism,
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct Generator {
    pub label: String,
    pub degree: i32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weight: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct Term {
    pub label: String,
    #[serde(default = "one")]
    pub coeff: String,
}

fn one() -> String {
    "1".into()
}

/// `value` of the binary operation on `args`.
#[derive(Clone, Debug, PartialEq, Eq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct Entry {
    pub args: [String; 2],
    pub value: Vec<Term>,
}

/// `value` of a unary map on the basis element `of`.
#[derive(Clone, Debug, PartialEq, Eq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct Image {
    pub of: String,
    pub value: Vec<Term>,
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct Document {
    pub kind: Kind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub generators: Vec<Generator>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub brackets: Vec<Entry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub products: Vec<Entry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub action: Vec<Entry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub differential: Vec<Image>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub augmentation: Vec<Image>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub relations: Vec<Vec<Term>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub images: Vec<Image>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_weight: Option<u32>,
    /// `adjoint`, `coadjoint` or `trivial` for representations.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub builtin: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lie: Option<Box<Document>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<Box<Document>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<Box<Document>>,
}

impl Document {
    pub fn new(kind: Kind) -> Self {
        Self {
            kind,
            name: None,
            generators: vec![],
            brackets: vec![],
            products: vec![],
            action: vec![],
            differential: vec![],
            augmentation: vec![],
            relations: vec![],
            images: vec![],
            max_weight: None,
            builtin: None,
            lie: None,
            source: None,
            target: None,
        }
    }
}

/// A parsed and validated input.
#[derive(Clone, Debug)]
pub enum Object {
    Lie(DgLieAlgebra),
    Cdga(CdgaPresentation),
    Artinian(ArtinianAlgebra),
    Representation(Representation),
    AlgebraMap(AlgebraMap),
    LieMorphism(LieMorphism),
}

impl Object {
    pub fn kind_name(&self) -> &'static str {
        match self {
            Object::Lie(_) => "dg_lie",
            Object::Cdga(_) => "cdga",
            Object::Artinian(_) => "artinian",
            Object::Representation(_) => "representation",
            Object::AlgebraMap(_) => "algebra_map",
            Object::LieMorphism(_) => "lie_morphism",
        }
    }
}

/// Context for documents that depend on job parameters.
#[derive(Clone, Debug, Default)]
pub struct ParseContext {
    /// Used for `free_lie` documents without their own `max_weight`.
    pub max_weight: Option<u32>,
    /// The algebra a representation acts on, unless it embeds `lie`.
    pub lie: Option<DgLieAlgebra>,
}

pub fn parse_str(text: &str, ctx: &ParseContext) -> Result<Object> {
    let doc: Document = serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
    from_document(&doc, ctx, true)
}

pub fn parse_unvalidated(text: &str, ctx: &ParseContext) -> Result<Object> {
    let doc: Document = serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
    from_document(&doc, ctx, false)
}

pub fn parse_coeff(s: &str, at: &str) -> Result<Q> {
    Q::from_str(s.trim()).map_err(|_| Error::Schema(format!("{at}: coefficient `{s}` is not a rational p/q")))
}

fn schema(at: impl AsRef<str>, msg: impl AsRef<str>) -> Error {
    Error::Schema(format!("{}: {}", at.as_ref(), msg.as_ref()))
}

fn gens_of(doc: &Document) -> Result<GenSet> {
    let mut seen = BTreeMap::new();
    for (i, g) in doc.generators.iter().enumerate() {
        if g.label.is_empty() {
            return Err(schema(format!("generators[{i}]"), "empty label"));
        }
        if let Some(j) = seen.insert(g.label.clone(), i) {
            return Err(schema(format!("generators[{i}]"), format!("label `{}` repeats generators[{j}]", g.label)));
        }
    }
    Ok(GenSet::new(
        doc.generators.iter().map(|g| g.label.clone()).collect(),
        doc.generators.iter().map(|g| g.degree).collect(),
    ))
}

fn weights_of(doc: &Document) -> Result<Option<Vec<u32>>> {
    let given = doc.generators.iter().filter(|g| g.weight.is_some()).count();
    match given {
        0 => Ok(None),
        n if n == doc.generators.len() => Ok(Some(doc.generators.iter().map(|g| g.weight.unwrap()).collect())),
        _ => Err(schema("generators", "weights must be given for all generators or none")),
    }
}

fn index(g: &GenSet, label: &str, at: &str) -> Result<usize> {
    g.index(label).ok_or_else(|| schema(at, format!("unknown label `{label}`")))
}

fn linear(g: &GenSet, terms: &[Term], at: &str) -> Result<SparseVec> {
    let mut v = SparseVec::new();
    for (k, t) in terms.iter().enumerate() {
        let at = format!("{at}.value[{k}]");
        add_entry(&mut v, index(g, &t.label, &at)?, parse_coeff(&t.coeff, &at)?);
    }
    Ok(v)
}

pub fn parse_monomial(g: &GenSet, s: &str, at: &str) -> Result<(Q, Monomial)> {
    let s = s.trim();
    if s == "1" {
        return Ok((Q::from_integer(1.into()), Monomial::new()));
    }
    let mut word = Vec::new();
    for factor in s.split('*') {
        let (label, e) = match factor.split_once('^') {
            Some((l, e)) => (l.trim(), e.trim().parse::<u32>().map_err(|_| schema(at, format!("bad exponent in `{factor}`")))?),
            None => (factor.trim(), 1),
        };
        let i = index(g, label, at)?;
        word.extend(std::iter::repeat_n(i, e as usize));
    }
    g.from_word(&word).ok_or_else(|| schema(at, format!("monomial `{s}` vanishes (odd square)")))
}

fn poly(g: &GenSet, terms: &[Term], at: &str) -> Result<Poly> {
    let mut p = Poly::new();
    for (k, t) in terms.iter().enumerate() {
        let at = format!("{at}[{k}]");
        let (s, m) = parse_monomial(g, &t.label, &at)?;
        add_term(&mut p, m, s * parse_coeff(&t.coeff, &at)?);
    }
    Ok(p)
}

fn unary(g: &GenSet, target: &GenSet, items: &[Image], field: &str) -> Result<Vec<SparseVec>> {
    let mut out = vec![SparseVec::new(); g.len()];
    for (k, im) in items.iter().enumerate() {
        let at = format!("{field}[{k}]");
        let i = index(g, &im.of, &format!("{at}.of"))?;
        out[i] = linear(target, &im.value, &at)?;
    }
    Ok(out)
}

fn binary(g: &GenSet, right: &GenSet, out: &GenSet, items: &[Entry], field: &str) -> Result<BTreeMap<(usize, usize), SparseVec>> {
    let mut table = BTreeMap::new();
    for (k, e) in items.iter().enumerate() {
        let at = format!("{field}[{k}]");
        let a = index(g, &e.args[0], &format!("{at}.args[0]"))?;
        let b = index(right, &e.args[1], &format!("{at}.args[1]"))?;
        if table.insert((a, b), linear(out, &e.value, &at)?).is_some() {
            return Err(schema(at, "entry given twice"));
        }
    }
    Ok(table)
}

fn nested<'a>(doc: &'a Option<Box<Document>>, field: &str) -> Result<&'a Document> {
    doc.as_deref().ok_or_else(|| schema(field, "missing nested document"))
}

fn lie_of(obj: Object, at: &str) -> Result<DgLieAlgebra> {
    match obj {
        Object::Lie(l) => Ok(l),
        o => Err(schema(at, format!("expected a Lie algebra, found {}", o.kind_name()))),
    }
}

fn artinian_of(obj: Object, at: &str) -> Result<ArtinianAlgebra> {
    match obj {
        Object::Artinian(a) => Ok(a),
        Object::Cdga(p) => p.to_artinian(),
        o => Err(schema(at, format!("expected an artinian algebra, found {}", o.kind_name()))),
    }
}

pub fn from_document(doc: &Document, ctx: &ParseContext, validate: bool) -> Result<Object> {
    match doc.kind {
        Kind::DgLie => {
            let g = gens_of(doc)?;
            let d = unary(&g, &g, &doc.differential, "differential")?;
            let given = binary(&g, &g, &g, &doc.brackets, "brackets")?;
            let bracket = DgLieAlgebra::complete_antisymmetry(&g, given);
            let weights = weights_of(doc)?;
            if validate {
                DgLieAlgebra::new(g, d, bracket, weights).map(Object::Lie)
            } else {
                Ok(Object::Lie(DgLieAlgebra::from_parts(g, d, bracket, weights)))
            }
        }
        Kind::FreeLie => {
            let w = doc
                .max_weight
                .or(ctx.max_weight)
                .ok_or_else(|| schema("max_weight", "free_lie needs a max weight"))?;
            let g = gens_of(doc)?;
            if (0..g.len()).any(|i| g.degrees[i] < 1) {
                return Err(schema("generators", "free Lie generators must have degree ≥ 1"));
            }
            let gens: Vec<(String, i32)> = g.labels.iter().cloned().zip(g.degrees.iter().copied()).collect();
            free_lie(&gens, w).map(|f| Object::Lie(f.lie))
        }
        Kind::Cdga => {
            let g = gens_of(doc)?;
            let mut d = vec![Poly::new(); g.len()];
            for (k, im) in doc.differential.iter().enumerate() {
                let at = format!("differential[{k}]");
                d[index(&g, &im.of, &format!("{at}.of"))?] = poly(&g, &im.value, &format!("{at}.value"))?;
            }
            for (k, im) in doc.augmentation.iter().enumerate() {
                let at = format!("augmentation[{k}]");
                index(&g, &im.of, &format!("{at}.of"))?;
                for (j, t) in im.value.iter().enumerate() {
                    if !parse_coeff(&t.coeff, &format!("{at}.value[{j}]"))?.eq(&Q::from_integer(0.into())) {
                        return Err(schema(at, "the augmentation must send every generator to 0"));
                    }
                }
            }
            let relations = doc
                .relations
                .iter()
                .enumerate()
                .map(|(k, r)| poly(&g, r, &format!("relations[{k}]")))
                .collect::<Result<_>>()?;
            CdgaPresentation::new(g, weights_of(doc)?, d, relations).map(Object::Cdga)
        }
        Kind::Artinian => {
            let g = gens_of(doc)?;
            if g.labels.first().map(String::as_str) != Some("1") || g.degrees[0] != 0 {
                return Err(schema("generators[0]", "the first basis element must be the unit `1` in degree 0"));
            }
            let d = unary(&g, &g, &doc.differential, "differential")?;
            let mult = binary(&g, &g, &g, &doc.products, "products")?;
            if mult.keys().any(|(a, b)| *a == 0 || *b == 0) {
                return Err(schema("products", "products with the unit are implicit"));
            }
            let mut weights = weights_of(doc)?;
            if let Some(w) = weights.as_mut() {
                w[0] = 0;
            }
            let a = ArtinianAlgebra::new(g.labels.clone(), g.degrees.clone(), weights, mult, d)?;
            a.nilpotency_order()?;
            Ok(Object::Artinian(a))
        }
        Kind::Representation => {
            let lie = match &doc.lie {
                Some(l) => lie_of(from_document(l, ctx, validate)?, "lie")?,
                None => ctx.lie.clone().ok_or_else(|| schema("lie", "a representation needs its Lie algebra"))?,
            };
            if let Some(b) = &doc.builtin {
                return match b.as_str() {
                    "adjoint" => Ok(Object::Representation(adjoint_rep(&lie))),
                    "coadjoint" => Ok(Object::Representation(coadjoint_rep(&lie))),
                    "trivial" => {
                        let g = if doc.generators.is_empty() { GenSet::new(vec!["1".into()], vec![0]) } else { gens_of(doc)? };
                        let d = unary(&g, &g, &doc.differential, "differential")?;
                        Ok(Object::Representation(trivial_rep(&lie, g, d)))
                    }
                    other => Err(schema("builtin", format!("unknown representation `{other}`"))),
                };
            }
            let g = gens_of(doc)?;
            let d = unary(&g, &g, &doc.differential, "differential")?;
            let action = binary(lie.basis(), &g, &g, &doc.action, "action")?;
            if validate {
                Representation::new(lie, g, d, action).map(Object::Representation)
            } else {
                Ok(Object::Representation(Representation::from_parts(lie, g, d, action)))
            }
        }
        Kind::AlgebraMap => {
            let s = artinian_of(from_document(nested(&doc.source, "source")?, ctx, validate)?, "source")?;
            let t = artinian_of(from_document(nested(&doc.target, "target")?, ctx, validate)?, "target")?;
            let sg = GenSet::new(s.labels.clone(), s.degrees.clone());
            let tg = GenSet::new(t.labels.clone(), t.degrees.clone());
            let mut images = unary(&sg, &tg, &doc.images, "images")?;
            if doc.images.iter().all(|im| im.of != "1") {
                images[0] = crate::linalg::unit(0);
            }
            AlgebraMap::new(s, t, images).map(Object::AlgebraMap)
        }
        Kind::LieMorphism => {
            let s = lie_of(from_document(nested(&doc.source, "source")?, ctx, validate)?, "source")?;
            let t = lie_of(from_document(nested(&doc.target, "target")?, ctx, validate)?, "target")?;
            let images = unary(s.basis(), t.basis(), &doc.images, "images")?;
            let m = LieMorphism {
                source: s,
                target: t,
                images,
            };
            if validate {
                m.validate()?;
            }
            Ok(Object::LieMorphism(m))
        }
    }
}

fn terms(g: &GenSet, v: &SparseVec) -> Vec<Term> {
    v.iter()
        .map(|(k, c)| Term {
            label: g.labels[*k].clone(),
            coeff: c.to_string(),
        })
        .collect()
}

fn generators(g: &GenSet, weights: Option<&[u32]>) -> Vec<Generator> {
    (0..g.len())
        .map(|i| Generator {
            label: g.labels[i].clone(),
            degree: g.degrees[i],
            weight: weights.map(|w| w[i]),
        })
        .collect()
}

/// Canonical document of a Lie algebra: brackets `[e_i, e_j]` with `i ≤ j`.
pub fn lie_document(l: &DgLieAlgebra) -> Document {
    let g = l.basis();
    let mut doc = Document::new(Kind::DgLie);
    doc.generators = generators(g, l.weights());
    doc.differential = (0..l.dim())
        .filter(|i| !l.d_of(*i).is_empty())
        .map(|i| Image {
            of: g.labels[i].clone(),
            value: terms(g, l.d_of(i)),
        })
        .collect();
    doc.brackets = l
        .bracket_table()
        .iter()
        .filter(|((i, j), _)| i <= j)
        .map(|((i, j), v)| Entry {
            args: [g.labels[*i].clone(), g.labels[*j].clone()],
            value: terms(g, v),
        })
        .collect();
    doc
}

/// Canonical document of an artinian algebra in structure-constant form.
pub fn artinian_document(a: &ArtinianAlgebra) -> Document {
    let g = GenSet::new(a.labels.clone(), a.degrees.clone());
    let mut doc = Document::new(Kind::Artinian);
    doc.generators = generators(&g, a.weights.as_deref());
    doc.differential = (0..a.dim())
        .filter(|i| !a.d[*i].is_empty())
        .map(|i| Image {
            of: g.labels[i].clone(),
            value: terms(&g, &a.d[i]),
        })
        .collect();
    doc.products = a
        .mult
        .iter()
        .map(|((i, j), v)| Entry {
            args: [g.labels[*i].clone(), g.labels[*j].clone()],
            value: terms(&g, v),
        })
        .collect();
    doc
}

pub fn to_json(doc: &Document) -> String {
    serde_json::to_string_pretty(doc).expect("documents serialize")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::examples::*;

    const SL2: &str = r#"{
      "kind": "dg_lie",
      "generators": [{"label": "h", "degree": 0}, {"label": "e", "degree": 0}, {"label": "f", "degree": 0}],
      "brackets": [
        {"args": ["h", "e"], "value": [{"label": "e", "coeff": "2"}]},
        {"args": ["h", "f"], "value": [{"label": "f", "coeff": "-2"}]},
        {"args": ["e", "f"], "value": [{"label": "h", "coeff": "1"}]}
      ]
    }"#;

    #[test]
    fn sl2_parses() {
        let Object::Lie(l) = parse_str(SL2, &ParseContext::default()).unwrap() else { panic!() };
        assert_eq!(l, sl2());
    }

    #[test]
    fn corrupted_sl2_names_the_triple() {
        let bad = SL2.replace(
            r#"{"args": ["e", "f"], "value": [{"label": "h", "coeff": "1"}]}"#,
            r#"{"args": ["e", "f"], "value": [{"label": "h", "coeff": "2"}]},
               {"args": ["f", "e"], "value": [{"label": "h", "coeff": "-1"}]}"#,
        );
        let err = parse_str(&bad, &ParseContext::default()).unwrap_err().to_string();
        assert!(err.contains("Jacobi") && err.contains("e,f,h"), "{err}");
        assert!(parse_unvalidated(&bad, &ParseContext::default()).is_ok());
    }

    #[test]
    fn diagnostics_name_the_field() {
        let bad = SL2.replace(r#""args": ["h", "f"]"#, r#""args": ["h", "q"]"#);
        let err = parse_str(&bad, &ParseContext::default()).unwrap_err().to_string();
        assert!(err.contains("brackets[1].args[1]") && err.contains("`q`"), "{err}");
        let bad = SL2.replace(r#""coeff": "-2""#, r#""coeff": "-2.5""#);
        assert!(parse_str(&bad, &ParseContext::default()).unwrap_err().to_string().contains("brackets[1].value[0]"));
        let err = parse_str(r#"{"kind": "dg_lie", "gens": []}"#, &ParseContext::default()).unwrap_err();
        assert!(matches!(err, Error::Schema(_)));
    }

    #[test]
    fn empty_generators_give_zero_algebra() {
        let Object::Lie(l) = parse_str(r#"{"kind": "dg_lie"}"#, &ParseContext::default()).unwrap() else { panic!() };
        assert_eq!(l.dim(), 0);
    }

    #[test]
    fn round_trip_is_idempotent() {
        for l in [sl2(), heisenberg(), dg_example()] {
            let text = to_json(&lie_document(&l));
            let Object::Lie(m) = parse_str(&text, &ParseContext::default()).unwrap() else { panic!() };
            assert_eq!(m, l);
            assert_eq!(to_json(&lie_document(&m)), text);
        }
        let a = ArtinianAlgebra::truncated_polynomial(3);
        let text = to_json(&artinian_document(&a));
        let Object::Artinian(b) = parse_str(&text, &ParseContext::default()).unwrap() else { panic!() };
        assert_eq!(to_json(&artinian_document(&b)), text);
    }

    #[test]
    fn cdga_and_non_artinian() {
        let text = r#"{"kind": "cdga", "generators": [{"label": "x", "degree": 0}],
                       "relations": [[{"label": "x^3"}]]}"#;
        let Object::Cdga(p) = parse_str(text, &ParseContext::default()).unwrap() else { panic!() };
        assert_eq!(p.to_artinian().unwrap().dim(), 3);
        let map = format!(r#"{{"kind": "algebra_map", "source": {text}, "target": {text}, "images": [{{"of": "x", "value": [{{"label": "x"}}]}}, {{"of": "x^2", "value": [{{"label": "x^2"}}]}}]}}"#);
        assert!(parse_str(&map, &ParseContext::default()).is_ok());
        let free = r#"{"kind": "cdga", "generators": [{"label": "x", "degree": 0}]}"#;
        let Object::Cdga(p) = parse_str(free, &ParseContext::default()).unwrap() else { panic!() };
        assert!(matches!(p.to_artinian(), Err(Error::NotArtinian(_))));
    }
}
