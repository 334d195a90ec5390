//! JSON encodings of cells, computads and elaborated programs.
//!
//! Cells are `{"var": name}` or `{"coh": {"tree", "sphere", "sub"}}`; hom
//! cells use `{"homgen": cell}` in place of `{"var": name}`. Decoding needs
//! the ambient computad to recover generator dimensions.

use std::sync::Arc;

use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::computads::{BipointedComputad, Cell, Computad, ComputadError, Sphere, Substitution};
use crate::globular::GlobularError;
use crate::homcat::{HomCell, HomGenerator};
use crate::name::Name;
use crate::surface::{Item, Program, Value as SValue};
use crate::trees::{Position, Tree};

#[derive(Debug, Error)]
pub enum JsonError {
    #[error("malformed JSON: {0}")]
    Serde(#[from] serde_json::Error),
    #[error(transparent)]
    Globular(#[from] GlobularError),
    #[error(transparent)]
    Computad(#[from] ComputadError),
    #[error("{0}")]
    Shape(String),
}

fn shape<T>(msg: impl Into<String>) -> Result<T, JsonError> {
    Err(JsonError::Shape(msg.into()))
}

fn coh_json<V: crate::computads::Leaf>(
    tree: &Tree,
    sphere: &Sphere,
    sub: &Substitution<V>,
    leaf: &dyn Fn(&V) -> Value,
) -> Value {
    let mut s = Map::new();
    for (k, x) in sub.iter() {
        s.insert(k.to_string(), encode(x, leaf));
    }
    let pos = |v: &Name| json!({ "var": v.as_str() });
    json!({ "coh": {
        "tree": tree.to_string(),
        "sphere": { "src": encode(&sphere.src, &pos), "tgt": encode(&sphere.tgt, &pos) },
        "sub": s,
    }})
}

fn encode<V: crate::computads::Leaf>(c: &Cell<V>, leaf: &dyn Fn(&V) -> Value) -> Value {
    match c {
        Cell::Var { gen, .. } => leaf(gen),
        Cell::Coh(coh) => coh_json(&coh.tree, &coh.sphere, &coh.sub, leaf),
    }
}

pub fn cell_to_json(c: &Cell) -> Value {
    encode(c, &|v: &Name| json!({ "var": v.as_str() }))
}

pub fn hom_cell_to_json(h: &HomCell) -> Value {
    encode(h, &|g: &HomGenerator| json!({ "homgen": cell_to_json(&g.0) }))
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value, JsonError> {
    v.get(key).ok_or_else(|| JsonError::Shape(format!("missing field `{key}`")))
}

fn string<'a>(v: &'a Value, what: &str) -> Result<&'a str, JsonError> {
    v.as_str().ok_or_else(|| JsonError::Shape(format!("{what} must be a string")))
}

/// Decodes a leaf, or `None` when the value is not a leaf.
type LeafDecoder<'a, V> = &'a dyn Fn(&Value) -> Result<Option<Cell<V>>, JsonError>;

fn decode<V: crate::computads::Leaf>(
    v: &Value,
    leaf: LeafDecoder<'_, V>,
) -> Result<Cell<V>, JsonError> {
    if let Some(c) = leaf(v)? {
        return Ok(c);
    }
    let Some(coh) = v.get("coh") else {
        return shape(format!("expected a cell, found {v}"));
    };
    let tree: Tree = string(field(coh, "tree")?, "tree")?
        .parse()
        .map_err(|e| JsonError::Shape(format!("bad tree: {e}")))?;
    let sphere = field(coh, "sphere")?;
    let pos = |x: &Value| -> Result<Option<Cell>, JsonError> {
        let Some(n) = x.get("var") else { return Ok(None) };
        let n = string(n, "var")?;
        match Position::parse(n) {
            Some(p) if tree.contains_position(&p) => Ok(Some(Cell::var(Name::from(n), p.dim()))),
            _ => shape(format!("`{n}` is not a position of {tree}")),
        }
    };
    let sphere = Sphere::new(decode(field(sphere, "src")?, &pos)?, decode(field(sphere, "tgt")?, &pos)?);
    let Some(entries) = field(coh, "sub")?.as_object() else {
        return shape("sub must be an object");
    };
    let mut sub = Substitution::new(Default::default());
    for (k, x) in entries {
        sub.insert(Name::from(k.as_str()), decode(x, leaf)?);
    }
    Ok(Cell::coh(tree, sphere, sub))
}

/// Decode a cell whose generators are looked up in `home`.
pub fn cell_from_json(v: &Value, home: &Computad) -> Result<Cell, JsonError> {
    decode(v, &|x: &Value| {
        let Some(n) = x.get("var") else { return Ok(None) };
        let n = string(n, "var")?;
        match home.var(n) {
            Some(c) => Ok(Some(c)),
            None => shape(format!("unknown generator `{n}`")),
        }
    })
}

pub fn hom_cell_from_json(v: &Value, home: &BipointedComputad) -> Result<HomCell, JsonError> {
    decode(v, &|x: &Value| {
        let Some(g) = x.get("homgen") else { return Ok(None) };
        let c = cell_from_json(g, &home.computad)?;
        if c.dim() == 0 {
            return shape("a hom generator must have positive dimension");
        }
        let d = c.dim() - 1;
        Ok(Some(Cell::var(HomGenerator(c), d)))
    })
}

/// `{"generators": [{"name", "dim", "src"?, "tgt"?}, ...]}` by dimension, then name.
pub fn computad_to_json(c: &Computad) -> Value {
    let gens: Vec<Value> = c
        .generators()
        .map(|(n, d, attach)| {
            let mut g = Map::new();
            g.insert("name".into(), json!(n.as_str()));
            g.insert("dim".into(), json!(d));
            if let Some(s) = attach {
                g.insert("src".into(), cell_to_json(&s.src));
                g.insert("tgt".into(), cell_to_json(&s.tgt));
            }
            Value::Object(g)
        })
        .collect();
    json!({ "generators": gens })
}

pub fn computad_from_json(v: &Value) -> Result<Computad, JsonError> {
    let Some(gens) = field(v, "generators")?.as_array() else {
        return shape("generators must be an array");
    };
    let mut c = Computad::new();
    for g in gens {
        let name = Name::from(string(field(g, "name")?, "name")?);
        let sphere = match (g.get("src"), g.get("tgt")) {
            (Some(s), Some(t)) => Some(Sphere::new(cell_from_json(s, &c)?, cell_from_json(t, &c)?)),
            (None, None) => None,
            _ => return shape(format!("generator `{name}` needs both src and tgt")),
        };
        let want = sphere.as_ref().map_or(0, |s| s.dim() + 1);
        if let Some(d) = g.get("dim") {
            if d.as_u64() != Some(want as u64) {
                return shape(format!("generator `{name}` declares dimension {d} but its sphere gives {want}"));
            }
        }
        c.add_generator(name, sphere)?;
    }
    Ok(c)
}

fn home_json(p: &Program, home: &Computad) -> Value {
    match p.computad_name(home) {
        Some(n) => json!(n.as_str()),
        None => computad_to_json(home),
    }
}

/// `{"computads": [...], "cells": [...]}`; a cell's home is the name of a
/// declared computad when it is one, else the computad itself.
pub fn program_to_json(p: &Program) -> Value {
    let computads: Vec<Value> = p
        .computads()
        .map(|(n, c)| {
            let mut o = Map::new();
            o.insert("name".into(), json!(n.as_str()));
            o.extend(computad_to_json(c).as_object().cloned().unwrap_or_default());
            Value::Object(o)
        })
        .collect();
    let cells: Vec<Value> = p
        .lets()
        .map(|(n, v)| match v {
            SValue::Cell { home, cell } => json!({
                "name": n.as_str(),
                "dim": cell.dim(),
                "home": home_json(p, home),
                "cell": cell_to_json(cell),
            }),
            SValue::Hom { home, cell } => json!({
                "name": n.as_str(),
                "dim": cell.dim(),
                "home": home_json(p, &home.computad),
                "base": [home.base_minus.as_str(), home.base_plus.as_str()],
                "hom": hom_cell_to_json(cell),
            }),
        })
        .collect();
    json!({ "computads": computads, "cells": cells })
}

pub fn program_from_json(v: &Value) -> Result<Program, JsonError> {
    let mut p = Program::default();
    let list = |key: &str| -> Result<Vec<Value>, JsonError> {
        match v.get(key) {
            None => Ok(Vec::new()),
            Some(Value::Array(a)) => Ok(a.clone()),
            Some(_) => shape(format!("`{key}` must be an array")),
        }
    };
    for c in list("computads")? {
        let name = Name::from(string(field(&c, "name")?, "name")?);
        p.items.push(Item::Computad { name, computad: Arc::new(computad_from_json(&c)?) });
    }
    for c in list("cells")? {
        let name = Name::from(string(field(&c, "name")?, "name")?);
        let home = match field(&c, "home")? {
            Value::String(n) => match p.computads().filter(|(x, _)| x.as_str() == n).last() {
                Some((_, h)) => h.clone(),
                None => return shape(format!("unknown computad `{n}`")),
            },
            h => Arc::new(computad_from_json(h)?),
        };
        let value = if let Some(h) = c.get("hom") {
            let Some([a, b]) = field(&c, "base")?.as_array().map(|x| x.as_slice()) else {
                return shape("base must be a pair");
            };
            let bc = BipointedComputad::new(
                (*home).clone(),
                Name::from(string(a, "base")?),
                Name::from(string(b, "base")?),
            )?;
            let cell = hom_cell_from_json(h, &bc)?;
            SValue::Hom { home: Arc::new(bc), cell }
        } else {
            let cell = cell_from_json(field(&c, "cell")?, &home)?;
            SValue::Cell { home, cell }
        };
        p.items.push(Item::Let { name, value });
    }
    Ok(p)
}

/// Pretty JSON with a trailing newline.
pub fn to_string(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}
