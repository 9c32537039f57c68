//! Lifting problems by exhaustive search, and the fibration predicates built
//! on them. Every verdict is relative to a dimension bound.

use crate::error::{invalid, Error, Result};
use crate::json::map_images_brief;
use crate::map::{MarkedMap, MarkedSet, SimplicialMap};
use crate::simplex::{CellId, Simplex};
use crate::sset::SimplicialSet;
use crate::standard::{boundary, face_inclusion, horn, simplex};
use serde_json::{json, Value};
use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

/// All simplices of `X` through some dimension, indexed by their face tuples.
pub struct SimplexIndex {
  x: Arc<SimplicialSet>,
  by_faces: Vec<HashMap<Vec<Simplex>, Vec<Simplex>>>,
  vertices: Vec<Simplex>,
}

impl SimplexIndex {
  pub fn new(x: &Arc<SimplicialSet>, top: usize) -> Self {
    let mut by_faces = vec![HashMap::new()];
    for n in 1..=top {
      let mut m: HashMap<Vec<Simplex>, Vec<Simplex>> = HashMap::new();
      for s in x.all_simplices(n) {
        let fs = (0..=n).map(|i| x.face(&s, i)).collect();
        m.entry(fs).or_default().push(s);
      }
      by_faces.push(m);
    }
    let vertices = x.cells(0).map(Simplex::cell).collect();
    Self { x: x.clone(), by_faces, vertices }
  }

  pub fn top(&self) -> usize { self.by_faces.len() - 1 }

  /// Simplices with the given faces, ordered by (word length, name).
  pub fn with_faces(&self, faces: &[Simplex]) -> Vec<Simplex> {
    let mut v = self.by_faces[faces.len() - 1].get(faces).cloned().unwrap_or_default();
    v.sort_by_key(|a| (a.word.len(), self.x.simplex_name(a)));
    v
  }
}

/// Backtracking over the free cells of `b` (those without a fixed image).
struct Search<'a> {
  b: &'a SimplicialSet,
  index: &'a SimplexIndex,
  images: Vec<Vec<Option<Simplex>>>,
  order: Vec<CellId>,
  accept: &'a dyn Fn(CellId, &Simplex) -> bool,
  nodes: usize,
}

impl Search<'_> {
  fn candidates(&self, c: CellId) -> Vec<Simplex> {
    let raw = if c.dim == 0 {
      self.index.vertices.clone()
    } else {
      let faces: Vec<Simplex> = self
        .b
        .faces(c)
        .iter()
        .map(|f| {
          let base = self.images[f.cell.dim][f.cell.index].as_ref().expect("faces are assigned first");
          base.degenerate_by(&f.word.surjection(f.cell.dim))
        })
        .collect();
      self.index.with_faces(&faces)
    };
    raw.into_iter().filter(|s| (self.accept)(c, s)).collect()
  }

  fn run(&mut self, pos: usize, visit: &mut dyn FnMut(&[Vec<Option<Simplex>>]) -> bool) -> bool {
    self.nodes += 1;
    if pos == self.order.len() {
      return visit(&self.images);
    }
    let c = self.order[pos];
    for s in self.candidates(c) {
      self.images[c.dim][c.index] = Some(s);
      if !self.run(pos + 1, visit) {
        return false;
      }
    }
    self.images[c.dim][c.index] = None;
    true
  }
}

fn finish(b: &Arc<SimplicialSet>, x: &Arc<SimplicialSet>, images: &[Vec<Option<Simplex>>]) -> SimplicialMap {
  let imgs = images.iter().map(|l| l.iter().map(|s| s.clone().unwrap()).collect()).collect();
  SimplicialMap::from_images(b.clone(), x.clone(), imgs)
}

/// Enumerates maps `b → x` extending `fixed` and satisfying `accept` on free
/// cells. `visit` returns false to stop. Returns the number of search nodes.
pub fn search_maps(
  b: &Arc<SimplicialSet>,
  x: &Arc<SimplicialSet>,
  index: &SimplexIndex,
  fixed: Vec<Vec<Option<Simplex>>>,
  accept: &dyn Fn(CellId, &Simplex) -> bool,
  visit: &mut dyn FnMut(SimplicialMap) -> bool,
) -> Result<usize> {
  let mut order: Vec<CellId> = b.all_cells().filter(|c| fixed[c.dim][c.index].is_none()).collect();
  order.sort_by(|p, q| (p.dim, b.name(*p)).cmp(&(q.dim, b.name(*q))));
  if let Some(top) = order.last().map(|c| c.dim) {
    if !x.complete_through(top) || index.top() < top {
      return Err(Error::Inconclusive { reason: format!("target is only known through dimension {}", x.bound().unwrap_or(index.top()).min(index.top())), bound: top });
    }
  }
  let mut s = Search { b, index, images: fixed, order, accept, nodes: 0 };
  s.run(0, &mut |imgs| visit(finish(b, x, imgs)));
  Ok(s.nodes)
}

/// All maps `a → x` (at most `limit` of them).
pub fn enumerate_maps(a: &Arc<SimplicialSet>, x: &Arc<SimplicialSet>, limit: Option<usize>) -> Result<Vec<SimplicialMap>> {
  let index = SimplexIndex::new(x, a.dim().min(x.levels().saturating_sub(1)).max(a.dim()));
  enumerate_maps_indexed(a, x, &index, limit)
}

pub fn enumerate_maps_indexed(a: &Arc<SimplicialSet>, x: &Arc<SimplicialSet>, index: &SimplexIndex, limit: Option<usize>) -> Result<Vec<SimplicialMap>> {
  let mut out = Vec::new();
  let fixed = (0..a.levels()).map(|d| vec![None; a.num_cells(d)]).collect();
  search_maps(a, x, index, fixed, &|_, _| true, &mut |m| {
    out.push(m);
    limit.is_none_or(|l| out.len() < l)
  })?;
  Ok(out)
}

/// A commutative square `i: A → B` against `p: X → Y`, with `top: A → X` and
/// `bottom: B → Y`. Markings are optional.
#[derive(Clone, Debug)]
pub struct LiftingProblem {
  pub i: SimplicialMap,
  pub p: SimplicialMap,
  pub top: SimplicialMap,
  pub bottom: SimplicialMap,
  pub marked_b: Option<BTreeSet<usize>>,
  pub marked_x: Option<MarkedSet>,
}

#[derive(Clone, Debug)]
pub enum LiftOutcome {
  Lift(SimplicialMap),
  NoLift { nodes: usize },
}

impl LiftOutcome {
  pub fn is_lift(&self) -> bool { matches!(self, LiftOutcome::Lift(_)) }
}

impl LiftingProblem {
  pub fn new(i: SimplicialMap, p: SimplicialMap, top: SimplicialMap, bottom: SimplicialMap) -> Result<Self> {
    let lp = Self { i, p, top, bottom, marked_b: None, marked_x: None };
    lp.check()?;
    Ok(lp)
  }

  pub fn marked(i: &MarkedMap, p: &MarkedMap, top: SimplicialMap, bottom: SimplicialMap) -> Result<Self> {
    let lp = Self { i: i.map.clone(), p: p.map.clone(), top, bottom, marked_b: Some(i.cod.marked.clone()), marked_x: Some(p.dom.clone()) };
    lp.check()?;
    Ok(lp)
  }

  fn check(&self) -> Result<()> {
    if !self.i.is_mono() {
      return invalid("the left map of a lifting problem must be a monomorphism");
    }
    for c in self.i.dom.all_cells() {
      let a = self.p.image(self.top.cell_image(c));
      let b = self.bottom.image(self.i.cell_image(c));
      if a != b {
        return invalid(format!("square does not commute at {}", self.i.dom.name(c)));
      }
    }
    Ok(())
  }

  pub fn solve(&self) -> Result<LiftOutcome> {
    let b = &self.i.cod;
    let x = &self.p.dom;
    let index = SimplexIndex::new(x, b.dim());
    self.solve_with(&index)
  }

  pub fn solve_with(&self, index: &SimplexIndex) -> Result<LiftOutcome> {
    let b = &self.i.cod;
    let x = &self.p.dom;
    let mut fixed: Vec<Vec<Option<Simplex>>> = (0..b.levels()).map(|d| vec![None; b.num_cells(d)]).collect();
    for c in self.i.dom.all_cells() {
      let img = self.i.cell_image(c);
      fixed[img.cell.dim][img.cell.index] = Some(self.top.cell_image(c).clone());
    }
    // edges marked only in B are already pinned by the top map
    if let (Some(mb), Some(mx)) = (&self.marked_b, &self.marked_x) {
      if mb.iter().any(|&e| fixed[1][e].as_ref().is_some_and(|s| !mx.is_marked(s))) {
        return Ok(LiftOutcome::NoLift { nodes: 0 });
      }
    }
    let accept = |c: CellId, s: &Simplex| -> bool {
      if self.p.image(s) != *self.bottom.cell_image(c) {
        return false;
      }
      if let (Some(mb), Some(mx)) = (&self.marked_b, &self.marked_x) {
        if c.dim == 1 && mb.contains(&c.index) && !mx.is_marked(s) {
          return false;
        }
      }
      true
    };
    let mut found = None;
    let nodes = search_maps(b, x, index, fixed, &accept, &mut |m| {
      found = Some(m);
      false
    })?;
    Ok(match found {
      Some(m) => LiftOutcome::Lift(m),
      None => LiftOutcome::NoLift { nodes },
    })
  }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FibrationKind {
  Inner,
  Left,
  Right,
  Trivial,
}

impl std::str::FromStr for FibrationKind {
  type Err = Error;
  fn from_str(s: &str) -> Result<Self> {
    Ok(match s {
      "inner" => Self::Inner,
      "left" => Self::Left,
      "right" => Self::Right,
      "trivial" => Self::Trivial,
      _ => return invalid(format!("unknown fibration kind {s}")),
    })
  }
}

/// Outcome of a bounded check.
#[derive(Clone, Debug, PartialEq)]
pub enum Verdict {
  Holds { bound: usize },
  Fails { bound: usize, witness: Value },
}

impl Verdict {
  pub fn holds(&self) -> bool { matches!(self, Verdict::Holds { .. }) }

  pub fn to_json(&self) -> Value {
    match self {
      Verdict::Holds { bound } => json!({"verdict": "holds", "bound": bound}),
      Verdict::Fails { bound, witness } => json!({"verdict": "fails", "bound": bound, "witness": witness}),
    }
  }
}

/// The boundary-type inclusions tested for a fibration kind in dimension `n`.
fn test_inclusions(kind: FibrationKind, n: usize) -> Vec<(String, Arc<SimplicialSet>)> {
  let ks: Vec<usize> = match kind {
    FibrationKind::Inner => (1..n).collect(),
    FibrationKind::Left => (0..n).collect(),
    FibrationKind::Right => (1..=n).collect(),
    FibrationKind::Trivial => return vec![(format!("boundary {n}"), Arc::new(boundary(n)))],
  };
  if n == 0 {
    return Vec::new();
  }
  ks.into_iter().map(|k| (format!("horn {n},{k}"), Arc::new(horn(n, k).unwrap()))).collect()
}

/// Every square from `sub ⊆ Δ^n` into `p`; `filter` restricts the top maps.
/// Returns the first square without a lift.
fn check_squares(
  p: &SimplicialMap,
  n: usize,
  sub: &Arc<SimplicialSet>,
  x_index: &SimplexIndex,
  y_index: &SimplexIndex,
  filter: &dyn Fn(&SimplicialMap) -> bool,
) -> Result<Option<(SimplicialMap, SimplicialMap)>> {
  let delta = Arc::new(simplex(n));
  let inc = face_inclusion(sub, n, &delta);
  let x = &p.dom;
  let y = &p.cod;
  let tops = enumerate_maps_indexed(sub, x, x_index, None)?;
  for top in tops {
    if !filter(&top) {
      continue;
    }
    let py = top.compose(p);
    // extensions of p∘top over Δ^n
    let mut fixed: Vec<Vec<Option<Simplex>>> = (0..delta.levels()).map(|d| vec![None; delta.num_cells(d)]).collect();
    for c in sub.all_cells() {
      let img = inc.cell_image(c);
      fixed[img.cell.dim][img.cell.index] = Some(py.cell_image(c).clone());
    }
    let mut bottoms = Vec::new();
    search_maps(&delta, y, y_index, fixed, &|_, _| true, &mut |m| {
      bottoms.push(m);
      true
    })?;
    for bottom in bottoms {
      let lp = LiftingProblem { i: inc.clone(), p: p.clone(), top: top.clone(), bottom: bottom.clone(), marked_b: None, marked_x: None };
      if let LiftOutcome::NoLift { .. } = lp.solve_with(x_index)? {
        return Ok(Some((top, bottom)));
      }
    }
  }
  Ok(None)
}

fn square_json(label: &str, top: &SimplicialMap, bottom: &SimplicialMap) -> Value {
  json!({"inclusion": label, "top": map_images_brief(top), "bottom": map_images_brief(bottom)})
}

fn require_through(x: &SimplicialSet, d: usize, what: &str) -> Result<()> {
  if !x.complete_through(d) {
    return Err(Error::Inconclusive { reason: format!("{what} is truncated at {}", x.bound().unwrap()), bound: d });
  }
  Ok(())
}

/// Right lifting against horn (or boundary) inclusions of dimension ≤ `d`.
pub fn classify_fibration(p: &SimplicialMap, kind: FibrationKind, d: usize) -> Result<Verdict> {
  require_through(&p.dom, d, "total space")?;
  require_through(&p.cod, d, "base")?;
  let xi = SimplexIndex::new(&p.dom, d);
  let yi = SimplexIndex::new(&p.cod, d);
  let start = if kind == FibrationKind::Trivial { 0 } else { 1 };
  for n in start..=d {
    for (label, sub) in test_inclusions(kind, n) {
      if let Some((top, bottom)) = check_squares(p, n, &sub, &xi, &yi, &|_| true)? {
        return Ok(Verdict::Fails { bound: d, witness: square_json(&label, &top, &bottom) });
      }
    }
  }
  Ok(Verdict::Holds { bound: d })
}

/// Whether `p` is an inner fibration to the point, i.e. `x` is an
/// ∞-category through dimension `d`.
pub fn is_quasi_category(x: &Arc<SimplicialSet>, d: usize) -> Result<Verdict> {
  let pt = Arc::new(simplex(0));
  classify_fibration(&SimplicialMap::constant(x.clone(), pt, CellId::new(0, 0)), FibrationKind::Inner, d)
}

/// Fillability of every `Λ^n_n` square (2 ≤ n ≤ d) whose last edge is `e`.
pub fn is_p_cartesian(p: &SimplicialMap, e: &Simplex, d: usize) -> Result<Verdict> {
  if e.dim() != 1 {
    return invalid("is_p_cartesian needs an edge");
  }
  if d < 2 {
    return invalid("is_p_cartesian needs a bound of at least 2");
  }
  require_through(&p.dom, d, "total space")?;
  require_through(&p.cod, d, "base")?;
  let xi = SimplexIndex::new(&p.dom, d);
  let yi = SimplexIndex::new(&p.cod, d);
  p_cartesian_indexed(p, e, d, &xi, &yi)
}

fn p_cartesian_indexed(p: &SimplicialMap, e: &Simplex, d: usize, xi: &SimplexIndex, yi: &SimplexIndex) -> Result<Verdict> {
  for n in 2..=d {
    let sub = Arc::new(horn(n, n)?);
    // the edge {n-1, n} of the horn
    let last = sub.find(&crate::standard::face_name(n, &[n - 1, n])).expect("horn contains its last edge");
    let filter = |top: &SimplicialMap| top.cell_image(last) == e;
    if let Some((top, bottom)) = check_squares(p, n, &sub, xi, yi, &filter)? {
      return Ok(Verdict::Fails { bound: d, witness: square_json(&format!("horn {n},{n}"), &top, &bottom) });
    }
  }
  Ok(Verdict::Holds { bound: d })
}

/// The three conditions characterizing marked cartesian fibrations over a
/// sharp base: inner fibration, marked = p-cartesian, cartesian lifts exist.
pub fn is_marked_cartesian_fibration(p: &MarkedMap, d: usize) -> Result<Verdict> {
  if d < 2 {
    return invalid("is_marked_cartesian_fibration needs a bound of at least 2");
  }
  let under = &p.map;
  let inner = classify_fibration(under, FibrationKind::Inner, d)?;
  if let Verdict::Fails { witness, .. } = inner {
    return Ok(Verdict::Fails { bound: d, witness: json!({"condition": "inner fibration", "square": witness}) });
  }
  let x = &under.dom;
  let s = &under.cod;
  let xi = SimplexIndex::new(x, d);
  let yi = SimplexIndex::new(s, d);
  let mut cartesian = BTreeSet::new();
  for e in x.cells(1) {
    let c = p_cartesian_indexed(under, &Simplex::cell(e), d, &xi, &yi)?.holds();
    if c {
      cartesian.insert(e.index);
    }
    if c != p.dom.marked.contains(&e.index) {
      let why = if c { "p-cartesian edge is not marked" } else { "marked edge is not p-cartesian" };
      return Ok(Verdict::Fails { bound: d, witness: json!({"condition": "marked edges are the p-cartesian edges", "edge": x.name(e), "reason": why}) });
    }
  }
  for f in s.cells(1) {
    let t = CellId::new(0, s.cell_vertices(f)[1]);
    for v in x.cells(0) {
      if under.cell_image(v).cell != t {
        continue;
      }
      let found = x.cells(1).any(|e| cartesian.contains(&e.index) && x.cell_vertices(e)[1] == v.index && under.cell_image(e) == &Simplex::cell(f));
      if !found {
        return Ok(Verdict::Fails { bound: d, witness: json!({"condition": "cartesian lifts exist", "edge": s.name(f), "vertex": x.name(v)}) });
      }
    }
  }
  Ok(Verdict::Holds { bound: d })
}

#[cfg(test)]
mod tests {
  use super::*;
  use crate::category::{nerve, FiniteCategory};
  use crate::standard::interval_j;

  fn to_point(x: &Arc<SimplicialSet>) -> SimplicialMap { SimplicialMap::constant(x.clone(), Arc::new(simplex(0)), CellId::new(0, 0)) }

  #[test]
  fn simplices_are_quasi_categories() {
    for n in 0..=3 {
      assert!(is_quasi_category(&Arc::new(simplex(n)), 4).unwrap().holds());
    }
  }

  #[test]
  fn inner_horn_is_not() {
    let h = Arc::new(horn(2, 1).unwrap());
    let v = is_quasi_category(&h, 3).unwrap();
    assert!(!v.holds());
  }

  #[test]
  fn horn_fills_in_a_nerve() {
    let n = nerve(&FiniteCategory::linear(2), 3).set;
    let h = Arc::new(horn(2, 1).unwrap());
    let d2 = Arc::new(simplex(2));
    let i = face_inclusion(&h, 2, &d2);
    let top = i.compose(&SimplicialMap::identity(d2.clone()));
    let top = SimplicialMap::from_images(h.clone(), n.clone(), top.images().to_vec());
    let lp = LiftingProblem::new(i, to_point(&n), top, to_point(&d2)).unwrap();
    assert!(lp.solve().unwrap().is_lift());
  }

  #[test]
  fn interval_edges_are_equivalences() {
    let j = Arc::new(interval_j(4));
    let p = to_point(&j);
    let e = Simplex::cell(j.find("01").unwrap());
    assert!(is_p_cartesian(&p, &e, 3).unwrap().holds());
    let d1 = Arc::new(simplex(1));
    let e = Simplex::cell(d1.find("01").unwrap());
    assert!(!is_p_cartesian(&to_point(&d1), &e, 3).unwrap().holds());
  }

  #[test]
  fn truncation_is_inconclusive() {
    let j = Arc::new(interval_j(2));
    assert!(matches!(is_quasi_category(&j, 3), Err(Error::Inconclusive { .. })));
  }
}
