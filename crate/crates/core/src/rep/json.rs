use std::sync::Arc;

use serde_json::{json, Map, Value};

use super::{RepMorphism, Representation};
use crate::error::{Error, Result};
use crate::exactla::{Field, Matrix};
use crate::quiver::Quiver;

fn bad(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}

fn str_field<'a>(obj: &'a Map<String, Value>, key: &str) -> Result<&'a str> {
    obj.get(key)
        .and_then(Value::as_str)
        .ok_or_else(|| bad(format!("missing string field `{key}`")))
}

pub fn quiver_to_json(q: &Quiver) -> Value {
    let arrows: Vec<Value> = q
        .arrows()
        .iter()
        .map(|a| json!({"id": a.id, "source": q.vertex_id(a.source), "target": q.vertex_id(a.target)}))
        .collect();
    json!({"name": q.name(), "vertices": q.vertices(), "arrows": arrows})
}

pub fn quiver_from_json(v: &Value) -> Result<Quiver> {
    let obj = v.as_object().ok_or_else(|| bad("quiver must be an object"))?;
    let name = str_field(obj, "name")?;
    let vertices = obj
        .get("vertices")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("missing array `vertices`"))?
        .iter()
        .map(|x| x.as_str().map(str::to_owned).ok_or_else(|| bad("vertex ids must be strings")))
        .collect::<Result<Vec<_>>>()?;
    let arrows = match obj.get("arrows") {
        None => Vec::new(),
        Some(a) => a
            .as_array()
            .ok_or_else(|| bad("`arrows` must be an array"))?
            .iter()
            .map(|a| {
                let a = a.as_object().ok_or_else(|| bad("arrow must be an object"))?;
                Ok((
                    str_field(a, "id")?.to_owned(),
                    str_field(a, "source")?.to_owned(),
                    str_field(a, "target")?.to_owned(),
                ))
            })
            .collect::<Result<Vec<_>>>()?,
    };
    Quiver::new(name, vertices, arrows)
}

fn matrix_to_json(m: &Matrix) -> Value {
    json!(m.to_string_rows())
}

fn matrix_from_json(v: &Value, field: Field, rows: usize, cols: usize, what: &str) -> Result<Matrix> {
    let cells: Vec<Vec<String>> =
        serde_json::from_value(v.clone()).map_err(|e| bad(format!("matrix for `{what}`: {e}")))?;
    Matrix::from_string_rows(field, rows, cols, &cells)
        .map_err(|e| bad(format!("matrix for `{what}`: {e}")))
}

/// `{"quiver", "field", "dims", "mats"}` with the quiver inlined.
pub fn rep_to_json(m: &Representation) -> Value {
    let q = m.quiver();
    let dims: Map<String, Value> = (0..q.vertex_count())
        .map(|v| (q.vertex_id(v).to_owned(), json!(m.dim(v))))
        .collect();
    let mats: Map<String, Value> = q
        .arrows()
        .iter()
        .zip(m.mats())
        .map(|(a, mat)| (a.id.clone(), matrix_to_json(mat)))
        .collect();
    json!({
        "quiver": quiver_to_json(q),
        "field": m.field().to_string(),
        "dims": dims,
        "mats": mats,
    })
}

/// Reads a representation. `"quiver"` may be inline or a name, in which case
/// it must match `known`. Missing vertices default to dimension 0 and a
/// missing matrix is accepted only when it has no entries.
pub fn rep_from_json(v: &Value, known: Option<&Arc<Quiver>>) -> Result<Representation> {
    let obj = v.as_object().ok_or_else(|| bad("representation must be an object"))?;
    let q = match obj.get("quiver") {
        Some(Value::String(name)) => match known {
            Some(k) if k.name() == name => k.clone(),
            Some(k) => return Err(bad(format!("representation names quiver `{name}`, loaded `{}`", k.name()))),
            None => return Err(bad(format!("quiver `{name}` is referenced by name but not supplied"))),
        },
        Some(inline @ Value::Object(_)) => {
            let q = quiver_from_json(inline)?;
            match known {
                Some(k) if **k == q => k.clone(),
                _ => Arc::new(q),
            }
        }
        Some(_) => return Err(bad("`quiver` must be a name or an object")),
        None => known.cloned().ok_or_else(|| bad("missing `quiver`"))?,
    };
    let field = Field::parse(str_field(obj, "field").unwrap_or("Q"))?;

    let mut dims = vec![0; q.vertex_count()];
    if let Some(d) = obj.get("dims") {
        let d = d.as_object().ok_or_else(|| bad("`dims` must be an object"))?;
        for (id, n) in d {
            let n = n
                .as_u64()
                .ok_or_else(|| bad(format!("dimension of `{id}` must be a natural number")))?;
            dims[q.vertex(id)?] = n as usize;
        }
    }
    let empty = Map::new();
    let mats_obj = match obj.get("mats") {
        Some(m) => m.as_object().ok_or_else(|| bad("`mats` must be an object"))?,
        None => &empty,
    };
    for id in mats_obj.keys() {
        q.arrow_by_id(id)?;
    }
    let mut mats = Vec::with_capacity(q.arrow_count());
    for a in q.arrows() {
        let (r, c) = (dims[a.target], dims[a.source]);
        match mats_obj.get(&a.id) {
            Some(m) => mats.push(matrix_from_json(m, field, r, c, &a.id)?),
            None if r * c == 0 => mats.push(Matrix::zeros(field, r, c)),
            None => return Err(bad(format!("missing matrix for arrow `{}`", a.id))),
        }
    }
    Representation::new(q, field, dims, mats)
}

pub fn morphism_to_json(f: &RepMorphism) -> Value {
    let q = f.source().quiver();
    let comps: Map<String, Value> = (0..q.vertex_count())
        .map(|v| (q.vertex_id(v).to_owned(), matrix_to_json(f.comp(v))))
        .collect();
    json!({
        "source": rep_to_json(f.source()),
        "target": rep_to_json(f.target()),
        "comps": comps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::Field;
    use crate::rep::{e_lambda, injective_envelope, stalk};

    #[test]
    fn rep_round_trip() {
        let q = Arc::new(Quiver::from_edges("dbl", 2, &[(0, 1), (0, 1)]).unwrap());
        let p = e_lambda(&q, Field::Rational, 0, 1).unwrap();
        let v = rep_to_json(&p);
        assert_eq!(v["mats"]["a1"], json!([["1"], ["0"]]));
        assert_eq!(rep_from_json(&v, None).unwrap(), p);
        assert_eq!(rep_from_json(&v, Some(&q)).unwrap(), p);
    }

    #[test]
    fn named_quiver_and_defaults() {
        let q = Arc::new(Quiver::linear(2).unwrap());
        let v = json!({"quiver": "A2", "field": "Fp:3", "dims": {"2": 1}});
        let m = rep_from_json(&v, Some(&q)).unwrap();
        assert_eq!(m, stalk(&q, Field::Prime(3), 1, 1));
        assert!(rep_from_json(&v, None).is_err());
        let missing = json!({"quiver": "A2", "dims": {"1": 1, "2": 1}});
        assert!(rep_from_json(&missing, Some(&q)).is_err());
        let unknown = json!({"quiver": "A2", "dims": {"7": 1}});
        assert_eq!(rep_from_json(&unknown, Some(&q)).unwrap_err(), Error::UnknownVertex("7".into()));
    }

    #[test]
    fn morphism_json_shape() {
        let q = Arc::new(Quiver::linear(2).unwrap());
        let (_, psi) = injective_envelope(&stalk(&q, Field::Rational, 1, 1)).unwrap();
        let v = morphism_to_json(&psi);
        assert_eq!(v["comps"]["2"], json!([["1"]]));
        assert_eq!(v["target"]["dims"], json!({"1": 1, "2": 1}));
    }
}
