//! Isomorphism search between finite simplicial sets.

use crate::map::{MarkedMap, MarkedSet, SimplicialMap};
use crate::simplex::{CellId, Simplex};
use crate::sset::SimplicialSet;
use std::collections::HashMap;
use std::sync::Arc;

#[derive(Clone, Debug)]
pub enum IsoVerdict {
  Isomorphic(SimplicialMap),
  NotIsomorphic(String),
}

impl IsoVerdict {
  pub fn is_iso(&self) -> bool { matches!(self, IsoVerdict::Isomorphic(_)) }
  pub fn witness(&self) -> Option<&SimplicialMap> {
    match self {
      IsoVerdict::Isomorphic(m) => Some(m),
      IsoVerdict::NotIsomorphic(_) => None,
    }
  }
}

pub fn iso_check(x: &Arc<SimplicialSet>, y: &Arc<SimplicialSet>) -> IsoVerdict { colored_iso(x, y, None, None) }

/// Isomorphism of `d`-skeleta.
pub fn bounded_iso(x: &SimplicialSet, y: &SimplicialSet, d: usize) -> IsoVerdict { iso_check(&Arc::new(x.skeleton(d)), &Arc::new(y.skeleton(d))) }

pub fn bounded_marked_iso(x: &MarkedSet, y: &MarkedSet, d: usize) -> IsoVerdict {
  let sx = MarkedSet { space: Arc::new(x.space.skeleton(d)), marked: if d >= 1 { x.marked.clone() } else { Default::default() } };
  let sy = MarkedSet { space: Arc::new(y.space.skeleton(d)), marked: if d >= 1 { y.marked.clone() } else { Default::default() } };
  marked_iso_check(&sx, &sy)
}

/// Isomorphism preserving and reflecting markings.
pub fn marked_iso_check(x: &MarkedSet, y: &MarkedSet) -> IsoVerdict {
  let cx = marking_colors(x);
  let cy = marking_colors(y);
  colored_iso(&x.space, &y.space, Some(&cx), Some(&cy))
}

fn marking_colors(x: &MarkedSet) -> Vec<Vec<u64>> {
  (0..x.space.levels()).map(|d| x.space.cells(d).map(|c| u64::from(d == 1 && x.marked.contains(&c.index))).collect()).collect()
}

type Sig = (Vec<(Vec<usize>, usize)>, Vec<usize>, u64);

fn signatures(x: &SimplicialSet, colors: Option<&Vec<Vec<u64>>>) -> Vec<Vec<Sig>> {
  let levels = x.levels();
  let mut cof: Vec<Vec<Vec<usize>>> = (0..levels).map(|d| vec![vec![0; levels]; x.num_cells(d)]).collect();
  for c in x.all_cells() {
    for f in x.faces(c) {
      cof[f.cell.dim][f.cell.index][c.dim] += 1;
    }
  }
  (0..levels)
    .map(|d| {
      x.cells(d)
        .map(|c| {
          let faces = x.faces(c).iter().map(|f| (f.word.indices().to_vec(), f.cell.dim)).collect();
          let col = colors.map_or(0, |cs| cs[d][c.index]);
          (faces, cof[d][c.index].clone(), col)
        })
        .collect()
    })
    .collect()
}

struct Search<'a> {
  x: &'a SimplicialSet,
  y: &'a SimplicialSet,
  sx: Vec<Vec<Sig>>,
  sy: Vec<Vec<Sig>>,
  fwd: Vec<Vec<Option<usize>>>,
  bwd: Vec<Vec<Option<usize>>>,
  trail: Vec<CellId>,
  nodes: usize,
}

impl Search<'_> {
  fn assign(&mut self, a: CellId, b: CellId) -> bool {
    if a.dim != b.dim {
      return false;
    }
    match (self.fwd[a.dim][a.index], self.bwd[b.dim][b.index]) {
      (Some(t), _) => return t == b.index,
      (None, Some(_)) => return false,
      (None, None) => {}
    }
    if self.sx[a.dim][a.index] != self.sy[b.dim][b.index] {
      return false;
    }
    self.fwd[a.dim][a.index] = Some(b.index);
    self.bwd[b.dim][b.index] = Some(a.index);
    self.trail.push(a);
    let fx = self.x.faces(a).to_vec();
    let fy = self.y.faces(b).to_vec();
    for (p, q) in fx.iter().zip(fy.iter()) {
      if p.word != q.word || !self.assign(p.cell, q.cell) {
        return false;
      }
    }
    true
  }

  fn undo(&mut self, mark: usize) {
    while self.trail.len() > mark {
      let a = self.trail.pop().unwrap();
      let b = self.fwd[a.dim][a.index].take().unwrap();
      self.bwd[a.dim][b] = None;
    }
  }

  fn solve(&mut self, order: &[CellId], pos: usize) -> bool {
    self.nodes += 1;
    let mut pos = pos;
    while pos < order.len() && self.fwd[order[pos].dim][order[pos].index].is_some() {
      pos += 1;
    }
    if pos == order.len() {
      return true;
    }
    let a = order[pos];
    for bi in 0..self.y.num_cells(a.dim) {
      if self.bwd[a.dim][bi].is_some() || self.sx[a.dim][a.index] != self.sy[a.dim][bi] {
        continue;
      }
      let mark = self.trail.len();
      if self.assign(a, CellId::new(a.dim, bi)) && self.solve(order, pos + 1) {
        return true;
      }
      self.undo(mark);
    }
    false
  }
}

/// Isomorphism search where cells may carry colours that must be preserved.
pub fn colored_iso(x: &Arc<SimplicialSet>, y: &Arc<SimplicialSet>, cx: Option<&Vec<Vec<u64>>>, cy: Option<&Vec<Vec<u64>>>) -> IsoVerdict {
  if x.bound() != y.bound() {
    return IsoVerdict::NotIsomorphic(format!("truncation bounds differ ({:?} vs {:?})", x.bound(), y.bound()));
  }
  let levels = x.levels().max(y.levels());
  for d in 0..levels {
    if x.num_cells(d) != y.num_cells(d) {
      return IsoVerdict::NotIsomorphic(format!("cell counts differ in dimension {d}: {} vs {}", x.num_cells(d), y.num_cells(d)));
    }
  }
  let sx = signatures(x, cx);
  let sy = signatures(y, cy);
  for d in 0..x.levels() {
    let mut a: HashMap<&Sig, i64> = HashMap::new();
    for s in &sx[d] {
      *a.entry(s).or_default() += 1;
    }
    for s in &sy[d] {
      *a.entry(s).or_default() -= 1;
    }
    if a.values().any(|&v| v != 0) {
      return IsoVerdict::NotIsomorphic(format!("cell signatures differ in dimension {d}"));
    }
  }
  let mut search = Search {
    x,
    y,
    sx,
    sy,
    fwd: (0..x.levels()).map(|d| vec![None; x.num_cells(d)]).collect(),
    bwd: (0..y.levels()).map(|d| vec![None; y.num_cells(d)]).collect(),
    trail: Vec::new(),
    nodes: 0,
  };
  // top cells first: assigning them fixes their faces
  let mut order: Vec<CellId> = x.all_cells().collect();
  order.sort_by(|a, b| b.dim.cmp(&a.dim).then(a.index.cmp(&b.index)));
  if search.solve(&order, 0) {
    let images = (0..x.levels()).map(|d| x.cells(d).map(|c| Simplex::cell(CellId::new(d, search.fwd[d][c.index].unwrap()))).collect()).collect();
    IsoVerdict::Isomorphic(SimplicialMap::from_images(x.clone(), y.clone(), images))
  } else {
    IsoVerdict::NotIsomorphic(format!("search exhausted after {} nodes", search.nodes))
  }
}

/// For monomorphisms `f: A → B` and `g: A' → B'`, an isomorphism `B ≅ B'`
/// carrying the image of `f` onto the image of `g` (markings included). When the
/// domains coincide the induced isomorphism must be the identity of `A`.
pub fn arrow_iso(f: &MarkedMap, g: &MarkedMap) -> IsoVerdict {
  if !f.map.is_mono() || !g.map.is_mono() {
    return IsoVerdict::NotIsomorphic("arrow comparison needs monomorphisms".into());
  }
  let same_dom = f.dom == g.dom;
  let colour = |m: &MarkedMap| -> Vec<Vec<u64>> {
    let pre = m.map.preimages();
    let cod = &m.cod;
    let dom_marked = |a: CellId| u64::from(a.dim == 1 && m.dom.marked.contains(&a.index));
    (0..cod.space.levels())
      .map(|d| {
        cod
          .space
          .cells(d)
          .map(|c| {
            let marked = u64::from(d == 1 && cod.marked.contains(&c.index));
            // when domains agree, pin each image cell to its preimage
            let (tag, dm) = match pre[d][c.index] {
              None => (0, 0),
              Some(a) if same_dom => (2 + a.index as u64, dom_marked(a)),
              Some(a) => (1, dom_marked(a)),
            };
            marked | (dm << 1) | (tag << 2)
          })
          .collect()
      })
      .collect()
  };
  let cf = colour(f);
  let cg = colour(g);
  colored_iso(&f.cod.space, &g.cod.space, Some(&cf), Some(&cg))
}

#[cfg(test)]
mod tests {
  use super::*;
  use crate::category::{nerve, FiniteCategory};
  use crate::constructions::product;
  use crate::standard::{boundary, simplex};

  #[test]
  fn simplex_is_nerve_of_order() {
    let d2 = Arc::new(simplex(2));
    let n = nerve(&FiniteCategory::linear(2), 3);
    assert!(iso_check(&d2, &n.set).is_iso());
  }

  #[test]
  fn product_symmetry() {
    let a = Arc::new(simplex(1));
    let b = Arc::new(simplex(2));
    let p = product(&a, &b);
    let q = product(&b, &a);
    let v = iso_check(&p.set, &q.set);
    assert!(v.is_iso());
    assert!(v.witness().unwrap().validate().is_ok());
  }

  #[test]
  fn counts_refute() {
    let v = iso_check(&Arc::new(simplex(1)), &Arc::new(boundary(2)));
    assert!(matches!(v, IsoVerdict::NotIsomorphic(ref s) if s.contains("counts")));
  }
}
