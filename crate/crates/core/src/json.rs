//! JSON form of stochastic matrices.
//!
//! ```json
//! {"dom": [obj, ...], "cod": [obj, ...],
//!  "entries": [[ [{"arrow": a, "prob": "n/d"}, ...], ... ], ...]}
//! ```
//!
//! `entries` is row-major: one array per codomain monomial, one cell per
//! domain monomial.

use serde_json::{json, Value};

use crate::base::boolean::{BoolFns, FnTable};
use crate::base::diagram::{Diagrams, SortWord};
use crate::base::free_monoid::{FreeMonoid, Point, Word};
use crate::base::Base;
use crate::dsl::parse_circuit;
use crate::error::{Error, Result};
use crate::prob::{parse_prob, Rational, Subdist};
use crate::stmat::StochMatrix;

/// Bases whose objects and arrows have a JSON encoding.
pub trait JsonBase: Base {
    fn obj_to_json(&self, u: &Self::Obj) -> Value;
    fn obj_from_json(&self, v: &Value) -> Result<Self::Obj>;
    fn arrow_to_json(&self, f: &Self::Arrow) -> Value;
    fn arrow_from_json(&self, v: &Value) -> Result<Self::Arrow>;
}

fn invalid(what: &str, v: &Value) -> Error {
    Error::Invalid(format!("expected {what}, found {v}"))
}

fn as_str<'a>(what: &str, v: &'a Value) -> Result<&'a str> {
    v.as_str().ok_or_else(|| invalid(what, v))
}

fn as_array<'a>(what: &str, v: &'a Value) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| invalid(what, v))
}

impl JsonBase for FreeMonoid {
    fn obj_to_json(&self, _: &Point) -> Value {
        json!("•")
    }

    fn obj_from_json(&self, v: &Value) -> Result<Point> {
        match as_str("the object \"•\"", v)? {
            "•" => Ok(Point),
            _ => Err(invalid("the object \"•\"", v)),
        }
    }

    fn arrow_to_json(&self, f: &Word) -> Value {
        json!(f.0)
    }

    fn arrow_from_json(&self, v: &Value) -> Result<Word> {
        Ok(Word::new(as_str("a word", v)?))
    }
}

impl JsonBase for BoolFns {
    fn obj_to_json(&self, u: &usize) -> Value {
        json!(u)
    }

    fn obj_from_json(&self, v: &Value) -> Result<usize> {
        v.as_u64().map(|n| n as usize).ok_or_else(|| invalid("a width", v))
    }

    fn arrow_to_json(&self, f: &FnTable) -> Value {
        serde_json::to_value(f).expect("tables serialise")
    }

    fn arrow_from_json(&self, v: &Value) -> Result<FnTable> {
        serde_json::from_value(v.clone()).map_err(|e| Error::Invalid(e.to_string()))
    }
}

impl JsonBase for Diagrams {
    fn obj_to_json(&self, u: &SortWord) -> Value {
        json!(u.to_string())
    }

    fn obj_from_json(&self, v: &Value) -> Result<SortWord> {
        let w: SortWord = as_str("a word", v)?.parse()?;
        self.sig.check_word(&w)?;
        Ok(w)
    }

    fn arrow_to_json(&self, f: &Self::Arrow) -> Value {
        json!(f.to_string())
    }

    fn arrow_from_json(&self, v: &Value) -> Result<Self::Arrow> {
        self.sig.circuit(parse_circuit(as_str("a circuit", v)?)?)
    }
}

fn prob_to_json(p: &Rational) -> Value {
    json!(format!("{}/{}", p.numer(), p.denom()))
}

pub fn matrix_to_json<B: JsonBase>(base: &B, m: &StochMatrix<B::Obj, B::Arrow>) -> Value {
    let cell = |d: &Subdist<B::Arrow>| {
        Value::Array(
            d.iter()
                .map(|(f, p)| json!({"arrow": base.arrow_to_json(f), "prob": prob_to_json(p)}))
                .collect(),
        )
    };
    json!({
        "dom": m.dom().iter().map(|u| base.obj_to_json(u)).collect::<Vec<_>>(),
        "cod": m.cod().iter().map(|u| base.obj_to_json(u)).collect::<Vec<_>>(),
        "entries": m.entries().iter()
            .map(|row| Value::Array(row.iter().map(cell).collect()))
            .collect::<Vec<_>>(),
    })
}

pub fn matrix_from_json<B: JsonBase>(base: &B, v: &Value) -> Result<StochMatrix<B::Obj, B::Arrow>> {
    let field = |k: &str| v.get(k).ok_or_else(|| Error::Invalid(format!("missing field `{k}`")));
    let objs = |k: &str| -> Result<Vec<B::Obj>> {
        as_array("an array of objects", field(k)?)?
            .iter()
            .map(|u| base.obj_from_json(u))
            .collect()
    };
    let (dom, cod) = (objs("dom")?, objs("cod")?);
    let mut entries = Vec::new();
    for row in as_array("an array of rows", field("entries")?)? {
        let mut cells = Vec::new();
        for cell in as_array("a row of cells", row)? {
            let mut pairs = Vec::new();
            for item in as_array("a cell", cell)? {
                let arrow = item.get("arrow").ok_or_else(|| invalid("an arrow", item))?;
                let prob = item.get("prob").ok_or_else(|| invalid("a probability", item))?;
                pairs.push((base.arrow_from_json(arrow)?, parse_prob(as_str("a probability", prob)?)?));
            }
            cells.push(Subdist::from_weights(pairs)?);
        }
        entries.push(cells);
    }
    StochMatrix::new(base, dom, cod, entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolcirc::{b_base, encode, to_bool_tape};
    use crate::dsl::parse_circuit;
    use crate::prob::rat;

    #[test]
    fn free_monoid_round_trip() {
        let m = StochMatrix::new(
            &FreeMonoid,
            vec![Point],
            vec![Point, Point],
            vec![
                vec![Subdist::from_weights([(Word::new("ab"), rat(1, 3))]).unwrap()],
                vec![Subdist::from_weights([(Word::new(""), rat(1, 2))]).unwrap()],
            ],
        )
        .unwrap();
        let v = matrix_to_json(&FreeMonoid, &m);
        assert_eq!(
            v.to_string(),
            r#"{"cod":["•","•"],"dom":["•"],"entries":[[[{"arrow":"ab","prob":"1/3"}]],[[{"arrow":"","prob":"1/2"}]]]}"#
        );
        assert_eq!(matrix_from_json(&FreeMonoid, &v).unwrap(), m);
    }

    #[test]
    fn boolean_round_trip() {
        let c = parse_circuit("copy ; (id A * flip 1/3 * id A) ; (and * discard)").unwrap();
        let m = to_bool_tape(&encode(&c).unwrap()).unwrap().compile(&BoolFns).unwrap();
        let v = matrix_to_json(&BoolFns, &m);
        assert_eq!(matrix_from_json(&BoolFns, &v).unwrap(), m);
        assert_eq!(v["entries"][0][0][0]["arrow"]["n"], json!(1));
        assert!(v["entries"][0][0][0]["arrow"]["table"][0].is_string());
    }

    #[test]
    fn diagram_round_trip() {
        let base = b_base();
        let sig = &base.sig;
        let t = crate::dsl::parse_tape(sig, "split 1/4 A ; [ not ] + [ id A ] ; merge A").unwrap();
        let m = t.compile(&base).unwrap();
        let v = matrix_to_json(&base, &m);
        assert_eq!(matrix_from_json(&base, &v).unwrap(), m);
    }

    #[test]
    fn invalid_documents() {
        let bad = [
            r#"{"dom":[1],"cod":[1]}"#,
            r#"{"dom":[1],"cod":[1],"entries":[[[{"arrow":{"n":1,"m":1,"table":["0","1"]},"prob":"3/2"}]]]}"#,
            r#"{"dom":[1],"cod":[1],"entries":[[[{"arrow":{"n":2,"m":1,"table":["0","1","0","0"]},"prob":"1/2"}]]]}"#,
            r#"{"dom":[1],"cod":[1,1],"entries":[[[{"arrow":{"n":1,"m":1,"table":["0","1"]},"prob":"2/3"}]],[[{"arrow":{"n":1,"m":1,"table":["1","1"]},"prob":"2/3"}]]]}"#,
        ];
        for b in bad {
            let v: Value = serde_json::from_str(b).unwrap();
            assert!(matrix_from_json(&BoolFns, &v).is_err(), "{b}");
        }
    }
}
