//! JSON forms of groups, Burnside elements and biset morphisms.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

use crate::bisets::BisetMorphism;
use crate::burnside::BurnsideElement;
use crate::error::{Error, Result};
use crate::groups::{build_group, Group};

#[derive(Clone, Debug)]
pub enum IoObject {
    Group(Arc<Group>),
    Element(BurnsideElement),
    Morphism(BisetMorphism),
}

impl PartialEq for IoObject {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (IoObject::Group(a), IoObject::Group(b)) => a.same_as(b),
            (IoObject::Element(a), IoObject::Element(b)) => a == b,
            (IoObject::Morphism(a), IoObject::Morphism(b)) => a == b,
            _ => false,
        }
    }
}

fn schema(path: &str, message: impl Into<String>) -> Error {
    Error::Schema {
        path: path.to_string(),
        message: message.into(),
    }
}

fn coeff_json(c: &BigInt) -> Value {
    match c.to_i64() {
        Some(x) => json!(x),
        None => json!(c.to_string()),
    }
}

fn object<'a>(v: &'a Value, path: &str) -> Result<&'a Map<String, Value>> {
    v.as_object()
        .ok_or_else(|| schema(path, "expected an object"))
}

fn field<'a>(m: &'a Map<String, Value>, key: &str, path: &str) -> Result<&'a Value> {
    m.get(key)
        .ok_or_else(|| schema(path, format!("missing field `{key}`")))
}

fn string_field<'a>(m: &'a Map<String, Value>, key: &str, path: &str) -> Result<&'a str> {
    field(m, key, path)?
        .as_str()
        .ok_or_else(|| schema(&format!("{path}.{key}"), "expected a string"))
}

fn usize_field(m: &Map<String, Value>, key: &str, path: &str) -> Result<usize> {
    field(m, key, path)?
        .as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| schema(&format!("{path}.{key}"), "expected a nonnegative integer"))
}

fn expect_kind(m: &Map<String, Value>, kind: &str, path: &str) -> Result<()> {
    let k = string_field(m, "kind", path)?;
    if k != kind {
        return Err(schema(
            &format!("{path}.kind"),
            format!("expected `{kind}`, found `{k}`"),
        ));
    }
    Ok(())
}

fn named_group(m: &Map<String, Value>, key: &str, path: &str) -> Result<Arc<Group>> {
    let name = string_field(m, key, path)?;
    build_group(name).map_err(|e| schema(&format!("{path}.{key}"), e.to_string()))
}

fn parse_coeff(v: &Value, path: &str) -> Result<BigInt> {
    if let Some(x) = v.as_i64() {
        return Ok(BigInt::from(x));
    }
    v.as_str()
        .and_then(|s| s.parse::<BigInt>().ok())
        .ok_or_else(|| schema(path, "expected an integer"))
}

fn terms_json(x: &BurnsideElement) -> Value {
    Value::Array(
        x.class_terms()
            .iter()
            .map(|(i, c)| json!({"class": i, "coeff": coeff_json(c)}))
            .collect(),
    )
}

fn parse_terms(group: &Arc<Group>, m: &Map<String, Value>, path: &str) -> Result<BurnsideElement> {
    let arr = field(m, "terms", path)?
        .as_array()
        .ok_or_else(|| schema(&format!("{path}.terms"), "expected an array"))?;
    let n = group.lattice().len();
    let mut v = vec![BigInt::from(0); n];
    for (k, t) in arr.iter().enumerate() {
        let tp = format!("{path}.terms[{k}]");
        let tm = object(t, &tp)?;
        let class = usize_field(tm, "class", &tp)?;
        if class >= n {
            return Err(schema(
                &format!("{tp}.class"),
                format!(
                    "class index {class} out of range for {} ({n} classes)",
                    group.name()
                ),
            ));
        }
        v[class] += parse_coeff(field(tm, "coeff", &tp)?, &format!("{tp}.coeff"))?;
    }
    BurnsideElement::from_vector(group, &v)
}

pub fn group_to_json(g: &Group) -> Value {
    json!({"kind": "group", "name": g.name(), "order": g.order(), "prime": g.prime()})
}

pub fn group_from_json(v: &Value) -> Result<Arc<Group>> {
    let m = object(v, "$")?;
    expect_kind(m, "group", "$")?;
    let g = named_group(m, "name", "$")?;
    if usize_field(m, "order", "$")? != g.order() {
        return Err(schema(
            "$.order",
            format!("{} has order {}", g.name(), g.order()),
        ));
    }
    if usize_field(m, "prime", "$")? != g.prime() as usize {
        return Err(schema(
            "$.prime",
            format!("{} has prime {}", g.name(), g.prime()),
        ));
    }
    Ok(g)
}

pub fn element_to_json(x: &BurnsideElement) -> Value {
    json!({"kind": "burnside_element", "group": x.group.name(), "terms": terms_json(x)})
}

pub fn element_from_json(v: &Value) -> Result<BurnsideElement> {
    let m = object(v, "$")?;
    expect_kind(m, "burnside_element", "$")?;
    let g = named_group(m, "group", "$")?;
    parse_terms(&g, m, "$")
}

/// Classes index the subgroup lattice of `target x source`; both groups need
/// catalog names to parse back.
pub fn morphism_to_json(f: &BisetMorphism) -> Value {
    json!({
        "kind": "morphism",
        "source": f.source.name(),
        "target": f.target.name(),
        "terms": terms_json(&f.element),
    })
}

pub fn morphism_from_json(v: &Value) -> Result<BisetMorphism> {
    let m = object(v, "$")?;
    expect_kind(m, "morphism", "$")?;
    let source = named_group(m, "source", "$")?;
    let target = named_group(m, "target", "$")?;
    let element = parse_terms(&crate::bisets::hom_group(&source, &target)?, m, "$")?;
    BisetMorphism::from_element(&source, &target, element)
}

pub fn to_json(x: &IoObject) -> Value {
    match x {
        IoObject::Group(g) => group_to_json(g),
        IoObject::Element(e) => element_to_json(e),
        IoObject::Morphism(f) => morphism_to_json(f),
    }
}

pub fn from_json(v: &Value) -> Result<IoObject> {
    let m = object(v, "$")?;
    match string_field(m, "kind", "$")? {
        "group" => group_from_json(v).map(IoObject::Group),
        "burnside_element" => element_from_json(v).map(IoObject::Element),
        "morphism" => morphism_from_json(v).map(IoObject::Morphism),
        k => Err(schema("$.kind", format!("unknown kind `{k}`"))),
    }
}

pub fn parse(text: &str) -> Result<IoObject> {
    let v: Value = serde_json::from_str(text).map_err(|e| schema("$", e.to_string()))?;
    from_json(&v)
}

pub fn render(x: &IoObject) -> String {
    serde_json::to_string(&to_json(x)).expect("JSON values always serialize")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bisets::{compose, iso, res, Method};
    use crate::rational::delta_context;

    #[test]
    fn restriction_round_trips() {
        let c4 = build_group("C4").unwrap();
        let c2 = c4
            .classes()
            .into_iter()
            .find(|c| c.rep.order() == 2)
            .unwrap()
            .rep;
        let r = res(&c4, &c2).unwrap();
        let named = build_group("C2").unwrap();
        let phi = crate::groups::is_isomorphic(&r.target, &named).unwrap();
        let r = compose(&iso(&r.target, &named, &phi).unwrap(), &r, Method::Both).unwrap();
        let back = parse(&render(&IoObject::Morphism(r.clone()))).unwrap();
        assert_eq!(back, IoObject::Morphism(r));
    }

    #[test]
    fn delta_round_trips() {
        let d = delta_context(2).unwrap().delta.clone();
        assert_eq!(
            parse(&render(&IoObject::Element(d.clone()))).unwrap(),
            IoObject::Element(d)
        );
        let g = build_group("D16").unwrap();
        assert_eq!(
            parse(&render(&IoObject::Group(g.clone()))).unwrap(),
            IoObject::Group(g)
        );
    }

    #[test]
    fn corrupted_class_index_names_its_path() {
        let text = r#"{"kind":"burnside_element","group":"C4","terms":[{"class":0,"coeff":1},{"class":9,"coeff":2}]}"#;
        match parse(text) {
            Err(Error::Schema { path, .. }) => assert_eq!(path, "$.terms[1].class"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn other_schema_errors() {
        let bad = [
            (
                r#"{"kind":"group","name":"C4","order":8,"prime":2}"#,
                "$.order",
            ),
            (r#"{"kind":"widget"}"#, "$.kind"),
            (
                r#"{"kind":"morphism","source":"C2","target":"Z7","terms":[]}"#,
                "$.target",
            ),
            (
                r#"{"kind":"burnside_element","group":"C2","terms":[{"class":1,"coeff":"x"}]}"#,
                "$.terms[0].coeff",
            ),
            (r#"[1,"#, "$"),
        ];
        for (text, want) in bad {
            match parse(text) {
                Err(Error::Schema { path, .. }) => assert_eq!(path, want, "{text}"),
                other => panic!("{text}: {other:?}"),
            }
        }
    }
}
