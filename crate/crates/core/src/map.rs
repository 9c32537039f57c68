//! Simplicial maps and marked simplicial sets.

use crate::error::{invalid, Result};
use crate::simplex::{CellId, Simplex};
use crate::sset::{SimplicialSet, Violation};
use std::collections::BTreeSet;
use std::sync::Arc;

#[derive(Clone, Debug)]
pub struct SimplicialMap {
  pub dom: Arc<SimplicialSet>,
  pub cod: Arc<SimplicialSet>,
  images: Vec<Vec<Simplex>>,
}

impl PartialEq for SimplicialMap {
  fn eq(&self, other: &Self) -> bool {
    (Arc::ptr_eq(&self.dom, &other.dom) || self.dom == other.dom)
      && (Arc::ptr_eq(&self.cod, &other.cod) || self.cod == other.cod)
      && self.images == other.images
  }
}

impl SimplicialMap {
  /// Builds a map from the images of non-degenerate cells without checking
  /// compatibility with faces (see [`SimplicialMap::validate`]).
  pub fn from_images(dom: Arc<SimplicialSet>, cod: Arc<SimplicialSet>, images: Vec<Vec<Simplex>>) -> Self {
    Self { dom, cod, images }
  }

  /// Builds a map from a function on non-degenerate cells, checking faces.
  pub fn from_fn(dom: Arc<SimplicialSet>, cod: Arc<SimplicialSet>, mut f: impl FnMut(CellId) -> Simplex) -> Result<Self> {
    let images = (0..dom.levels()).map(|d| dom.cells(d).map(&mut f).collect()).collect();
    let m = Self { dom, cod, images };
    m.validate().map_err(|v| crate::Error::Invalid(v.to_string()))?;
    Ok(m)
  }

  pub fn identity(x: Arc<SimplicialSet>) -> Self {
    let images = (0..x.levels()).map(|d| x.cells(d).map(Simplex::cell).collect()).collect();
    Self { dom: x.clone(), cod: x, images }
  }

  /// The unique map out of the empty simplicial set.
  pub fn from_empty(cod: Arc<SimplicialSet>) -> Self { Self { dom: Arc::new(SimplicialSet::empty()), cod, images: Vec::new() } }

  /// The constant map to a vertex.
  pub fn constant(dom: Arc<SimplicialSet>, cod: Arc<SimplicialSet>, v: CellId) -> Self {
    let images = (0..dom.levels()).map(|d| dom.cells(d).map(|_| Simplex::constant(v, d)).collect()).collect();
    Self { dom, cod, images }
  }

  /// Maps into a nerve of a poset-like object are determined by vertices: the
  /// image of each cell is located among the simplices of `cod` by its vertex
  /// sequence via `locate`.
  pub fn from_vertices(
    dom: Arc<SimplicialSet>,
    cod: Arc<SimplicialSet>,
    vertex: impl Fn(CellId) -> CellId,
    locate: impl Fn(&[CellId]) -> Option<Simplex>,
  ) -> Result<Self> {
    let mut images = Vec::new();
    for d in 0..dom.levels() {
      let mut level = Vec::new();
      for c in dom.cells(d) {
        let vs: Vec<CellId> = dom.cell_vertices(c).iter().map(|&v| vertex(CellId::new(0, v))).collect();
        match locate(&vs) {
          Some(s) => level.push(s),
          None => return invalid(format!("no simplex of the codomain over the vertices of {}", dom.name(c))),
        }
      }
      images.push(level);
    }
    let m = Self { dom, cod, images };
    m.validate().map_err(|v| crate::Error::Invalid(v.to_string()))?;
    Ok(m)
  }

  pub fn cell_image(&self, c: CellId) -> &Simplex { &self.images[c.dim][c.index] }

  pub fn images(&self) -> &[Vec<Simplex>] { &self.images }

  pub fn image(&self, x: &Simplex) -> Simplex {
    let y = &self.images[x.cell.dim][x.cell.index];
    y.degenerate_by(&x.word.surjection(x.cell.dim))
  }

  pub fn compose(&self, g: &SimplicialMap) -> SimplicialMap {
    // g ∘ self
    let images = self.images.iter().map(|l| l.iter().map(|y| g.image(y)).collect()).collect();
    SimplicialMap { dom: self.dom.clone(), cod: g.cod.clone(), images }
  }

  /// Injective on simplices: non-degenerate cells go to distinct non-degenerate
  /// cells.
  pub fn is_mono(&self) -> bool {
    let mut seen = BTreeSet::new();
    self.images.iter().flatten().all(|y| !y.is_degenerate() && seen.insert(y.cell))
  }

  /// Whether every non-degenerate cell of the codomain is hit by a simplex.
  pub fn is_surjective(&self) -> bool {
    let hit: BTreeSet<CellId> = self.images.iter().flatten().map(|y| y.cell).collect();
    self.cod.all_cells().all(|c| hit.contains(&c))
  }

  /// For a monomorphism, the preimage cell of each codomain cell.
  pub fn preimages(&self) -> Vec<Vec<Option<CellId>>> {
    let mut out: Vec<Vec<Option<CellId>>> = (0..self.cod.levels()).map(|d| vec![None; self.cod.num_cells(d)]).collect();
    for (d, level) in self.images.iter().enumerate() {
      for (i, y) in level.iter().enumerate() {
        if !y.is_degenerate() {
          out[y.cell.dim][y.cell.index] = Some(CellId::new(d, i));
        }
      }
    }
    out
  }

  pub fn validate(&self) -> std::result::Result<(), Violation> {
    for d in 0..self.dom.levels() {
      let level = self.images.get(d).map_or(&[][..], |l| &l[..]);
      if level.len() != self.dom.num_cells(d) {
        return Err(Violation { cell: format!("dimension {d}"), message: "image table does not cover the domain".into() });
      }
      for c in self.dom.cells(d) {
        let y = &level[c.index];
        let name = self.dom.name(c).to_string();
        if y.dim() != d {
          return Err(Violation { cell: name, message: format!("dimension mismatch: image has dimension {} but the cell has dimension {d}", y.dim()) });
        }
        if y.cell.index >= self.cod.num_cells(y.cell.dim) || !y.word.fits(y.cell.dim) {
          return Err(Violation { cell: name, message: "image is not a normal form in the codomain".into() });
        }
        if d > 0 {
          for (i, f) in self.dom.faces(c).iter().enumerate() {
            if self.cod.face(y, i) != self.image(f) {
              return Err(Violation { cell: name, message: format!("map does not commute with d{i}") });
            }
          }
        }
      }
    }
    Ok(())
  }
}

/// A simplicial set with a set of marked non-degenerate edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkedSet {
  pub space: Arc<SimplicialSet>,
  pub marked: BTreeSet<usize>,
}

impl MarkedSet {
  pub fn flat(space: Arc<SimplicialSet>) -> Self { Self { space, marked: BTreeSet::new() } }

  pub fn sharp(space: Arc<SimplicialSet>) -> Self {
    let marked = (0..space.num_cells(1)).collect();
    Self { space, marked }
  }

  pub fn with_marked(space: Arc<SimplicialSet>, names: &[&str]) -> Result<Self> {
    let mut marked = BTreeSet::new();
    for n in names {
      match space.find(n) {
        Some(c) if c.dim == 1 => {
          marked.insert(c.index);
        }
        _ => return invalid(format!("{n} is not an edge")),
      }
    }
    Ok(Self { space, marked })
  }

  /// Degenerate edges count as marked.
  pub fn is_marked(&self, e: &Simplex) -> bool {
    debug_assert_eq!(e.dim(), 1);
    e.is_degenerate() || self.marked.contains(&e.cell.index)
  }

  pub fn validate(&self) -> std::result::Result<(), Violation> {
    self.space.validate()?;
    if let Some(&e) = self.marked.iter().find(|&&e| e >= self.space.num_cells(1)) {
      return Err(Violation { cell: format!("edge #{e}"), message: "marked edge is not a 1-cell".into() });
    }
    Ok(())
  }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MarkedMap {
  pub dom: MarkedSet,
  pub cod: MarkedSet,
  pub map: SimplicialMap,
}

impl MarkedMap {
  pub fn new(dom: MarkedSet, cod: MarkedSet, map: SimplicialMap) -> Result<Self> {
    let m = Self { dom, cod, map };
    m.validate().map_err(|v| crate::Error::Invalid(v.to_string()))?;
    Ok(m)
  }

  pub fn unchecked(dom: MarkedSet, cod: MarkedSet, map: SimplicialMap) -> Self { Self { dom, cod, map } }

  pub fn flat(map: SimplicialMap) -> Self {
    Self { dom: MarkedSet::flat(map.dom.clone()), cod: MarkedSet::flat(map.cod.clone()), map }
  }

  pub fn identity(x: MarkedSet) -> Self {
    Self { map: SimplicialMap::identity(x.space.clone()), dom: x.clone(), cod: x }
  }

  pub fn compose(&self, g: &MarkedMap) -> MarkedMap {
    MarkedMap { dom: self.dom.clone(), cod: g.cod.clone(), map: self.map.compose(&g.map) }
  }

  pub fn validate(&self) -> std::result::Result<(), Violation> {
    self.dom.validate()?;
    self.cod.validate()?;
    self.map.validate()?;
    for &e in &self.dom.marked {
      let y = self.map.cell_image(CellId::new(1, e));
      if !self.cod.is_marked(y) {
        return Err(Violation { cell: self.dom.space.name(CellId::new(1, e)).to_string(), message: "marked edge sent to an unmarked edge".into() });
      }
    }
    Ok(())
  }

  /// Monomorphism that also reflects nothing extra: a marked cofibration is just
  /// a mono of underlying simplicial sets.
  pub fn is_mono(&self) -> bool { self.map.is_mono() }
}
