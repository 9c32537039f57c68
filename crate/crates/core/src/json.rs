//! JSON interchange for simplicial sets, maps and markings, plus DOT export
//! of 1-skeleta.

use crate::error::{invalid, Result};
use crate::map::{MarkedMap, MarkedSet, SimplicialMap};
use crate::simplex::{CellId, DegeneracyWord, Simplex};
use crate::sset::{Builder, SimplicialSet};
use serde_json::{json, Map, Value};
use std::collections::BTreeSet;
use std::fmt::Write;
use std::sync::Arc;

fn simplex_json(x: &SimplicialSet, s: &Simplex) -> Value { json!({ "word": s.word.indices(), "cell": x.name(s.cell) }) }

pub fn set_to_json(x: &SimplicialSet) -> Value { marked_to_json(&MarkedSet::flat(Arc::new(x.clone()))) }

pub fn marked_to_json(m: &MarkedSet) -> Value {
  let x = &m.space;
  let mut cells = Map::new();
  let mut faces = Map::new();
  for d in 0..x.levels() {
    if x.num_cells(d) == 0 && x.bound().is_none_or(|b| d > b) {
      continue;
    }
    cells.insert(d.to_string(), Value::from(x.cells(d).map(|c| x.name(c).to_string()).collect::<Vec<_>>()));
    if d > 0 {
      for c in x.cells(d) {
        faces.insert(x.name(c).to_string(), Value::from(x.faces(c).iter().map(|f| simplex_json(x, f)).collect::<Vec<_>>()));
      }
    }
  }
  let marked: Vec<String> = m.marked.iter().map(|&e| x.name(CellId::new(1, e)).to_string()).collect();
  json!({
    "dim": x.bound().unwrap_or_else(|| x.dim()),
    "truncated": x.truncated(),
    "cells": cells,
    "faces": faces,
    "marked": marked,
  })
}

fn parse_simplex(x: &SimplicialSet, v: &Value) -> Result<Simplex> {
  let name = v.get("cell").and_then(Value::as_str).ok_or_else(|| crate::Error::Invalid("cell reference lacks a name".into()))?;
  let cell = x.find(name).ok_or_else(|| crate::Error::Invalid(format!("unknown cell {name}")))?;
  let word: Vec<usize> = match v.get("word") {
    None => Vec::new(),
    Some(w) => serde_json::from_value(w.clone()).map_err(|e| crate::Error::Invalid(format!("bad word: {e}")))?,
  };
  let word = DegeneracyWord::new(word).ok_or_else(|| crate::Error::Invalid(format!("degeneracy word on {name} is not strictly increasing")))?;
  if !word.fits(cell.dim) {
    return invalid(format!("degeneracy word on {name} is not in normal form"));
  }
  Ok(Simplex { word, cell })
}

/// Parses a marked simplicial set. Face data is loaded verbatim; run
/// `validate` to check the simplicial identities.
pub fn marked_from_json(v: &Value) -> Result<MarkedSet> {
  let cells = v.get("cells").and_then(Value::as_object).ok_or_else(|| crate::Error::Invalid("missing \"cells\"".into()))?;
  let faces = v.get("faces").and_then(Value::as_object).cloned().unwrap_or_default();
  let mut dims: Vec<usize> = Vec::new();
  for k in cells.keys() {
    dims.push(k.parse().map_err(|_| crate::Error::Invalid(format!("bad dimension key {k}")))?);
  }
  dims.sort();
  let mut b = Builder::new();
  let mut seen = BTreeSet::new();
  for d in dims {
    let names = cells[&d.to_string()].as_array().ok_or_else(|| crate::Error::Invalid("cell lists must be arrays".into()))?;
    for n in names {
      let name = n.as_str().ok_or_else(|| crate::Error::Invalid("cell names must be strings".into()))?;
      if !seen.insert(name.to_string()) {
        return invalid(format!("duplicate cell name {name}"));
      }
      let fs = if d == 0 {
        Vec::new()
      } else {
        let list = faces.get(name).and_then(Value::as_array).ok_or_else(|| crate::Error::Invalid(format!("missing faces of {name}")))?;
        if list.len() != d + 1 {
          return invalid(format!("cell {name} of dimension {d} lists {} faces", list.len()));
        }
        list.iter().map(|f| parse_simplex(b.peek(), f)).collect::<Result<Vec<_>>>()?
      };
      b.add_cell(name, fs)?;
    }
  }
  if v.get("truncated").and_then(Value::as_bool).unwrap_or(false) {
    let d = v.get("dim").and_then(Value::as_u64).ok_or_else(|| crate::Error::Invalid("truncated set needs \"dim\"".into()))?;
    b.truncate(d as usize);
  }
  let space = Arc::new(b.build());
  let marked: Vec<String> = match v.get("marked") {
    None => Vec::new(),
    Some(m) => serde_json::from_value(m.clone()).map_err(|e| crate::Error::Invalid(format!("bad marking: {e}")))?,
  };
  let refs: Vec<&str> = marked.iter().map(String::as_str).collect();
  MarkedSet::with_marked(space, &refs)
}

pub fn set_from_json(v: &Value) -> Result<Arc<SimplicialSet>> { Ok(marked_from_json(v)?.space) }

pub fn map_to_json(f: &SimplicialMap) -> Value {
  let mut images = Map::new();
  for c in f.dom.all_cells() {
    images.insert(f.dom.name(c).to_string(), simplex_json(&f.cod, f.cell_image(c)));
  }
  json!({ "dom": set_to_json(&f.dom), "cod": set_to_json(&f.cod), "images": images })
}

pub fn marked_map_to_json(f: &MarkedMap) -> Value {
  let mut v = map_to_json(&f.map);
  v["dom"] = marked_to_json(&f.dom);
  v["cod"] = marked_to_json(&f.cod);
  v
}

/// Parses a marked map; marking preservation is checked, faces are not.
pub fn marked_map_from_json(v: &Value) -> Result<MarkedMap> {
  let dom = marked_from_json(v.get("dom").ok_or_else(|| crate::Error::Invalid("missing \"dom\"".into()))?)?;
  let cod = marked_from_json(v.get("cod").ok_or_else(|| crate::Error::Invalid("missing \"cod\"".into()))?)?;
  let map = map_from_images_json(dom.space.clone(), cod.space.clone(), v.get("images").unwrap_or(&Value::Null))?;
  MarkedMap::new(dom, cod, map)
}

/// Images only, by cell name: `{cell: "s0(x)"}`.
pub fn map_images_brief(f: &SimplicialMap) -> Value {
  let mut images = Map::new();
  for c in f.dom.all_cells() {
    images.insert(f.dom.name(c).to_string(), Value::from(f.cod.simplex_name(f.cell_image(c))));
  }
  Value::Object(images)
}

/// Parses a map; its validity is not checked here.
pub fn map_from_json(v: &Value) -> Result<SimplicialMap> {
  let dom = set_from_json(v.get("dom").ok_or_else(|| crate::Error::Invalid("missing \"dom\"".into()))?)?;
  let cod = set_from_json(v.get("cod").ok_or_else(|| crate::Error::Invalid("missing \"cod\"".into()))?)?;
  map_from_images_json(dom, cod, v.get("images").unwrap_or(&Value::Null))
}

pub fn map_from_images_json(dom: Arc<SimplicialSet>, cod: Arc<SimplicialSet>, images: &Value) -> Result<SimplicialMap> {
  let images = images.as_object().ok_or_else(|| crate::Error::Invalid("missing \"images\"".into()))?;
  if let Some(extra) = images.keys().find(|k| dom.find(k).is_none()) {
    return invalid(format!("image given for {extra}, which is not a cell of the domain"));
  }
  let mut out = Vec::with_capacity(dom.levels());
  for d in 0..dom.levels() {
    let mut level = Vec::with_capacity(dom.num_cells(d));
    for c in dom.cells(d) {
      let name = dom.name(c);
      let v = images.get(name).ok_or_else(|| crate::Error::Invalid(format!("no image for {name}")))?;
      let s = parse_simplex(&cod, v)?;
      if s.dim() != d {
        return invalid(format!("dimension mismatch: {name} has dimension {d} but its image has dimension {}", s.dim()));
      }
      level.push(s);
    }
    out.push(level);
  }
  Ok(SimplicialMap::from_images(dom, cod, out))
}

/// DOT rendering of the 1-skeleton; marked edges are drawn bold.
pub fn to_dot(m: &MarkedSet) -> String {
  let x = &m.space;
  let mut s = String::from("digraph sset {\n");
  for v in x.cells(0) {
    let _ = writeln!(s, "  \"{}\";", x.name(v));
  }
  for e in x.cells(1) {
    let vs = x.cell_vertices(e);
    let style = if m.marked.contains(&e.index) { " style=bold" } else { "" };
    let _ = writeln!(s, "  \"{}\" -> \"{}\" [label=\"{}\"{style}];", x.name(CellId::new(0, vs[0])), x.name(CellId::new(0, vs[1])), x.name(e));
  }
  s.push_str("}\n");
  s
}

#[cfg(test)]
mod tests {
  use super::*;
  use crate::iso::iso_check;
  use crate::standard::{interval_j, simplex};

  #[test]
  fn round_trip() {
    for x in [simplex(3), interval_j(3)] {
      let v = set_to_json(&x);
      let y = set_from_json(&v).unwrap();
      assert!(iso_check(&Arc::new(x), &y).is_iso());
    }
  }

  #[test]
  fn wrong_dimension_image_reported() {
    let d1 = Arc::new(simplex(1));
    let v = json!({"0": {"word": [], "cell": "0"}, "1": {"word": [], "cell": "1"}, "01": {"word": [], "cell": "0"}});
    let e = map_from_images_json(d1.clone(), d1, &v).unwrap_err();
    assert!(e.to_string().contains("dimension mismatch"));
  }
}
