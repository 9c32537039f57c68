//! Finite-type simplicial sets stored as non-degenerate cells with faces in
//! normal form.

use crate::error::{invalid, Result};
use crate::simplex::{coface, epi_mono, CellId, DegeneracyWord, Simplex};
use std::collections::HashMap;
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
#[derive(Default)]
pub struct SimplicialSet {
  names: Vec<Vec<String>>,
  faces: Vec<Vec<Vec<Simplex>>>,
  // vertex list of every cell, cached at construction
  vertices: Vec<Vec<Vec<usize>>>,
  lookup: HashMap<String, CellId>,
  bound: Option<usize>,
}

/// A failed invariant, reported by [`SimplicialSet::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
  pub cell: String,
  pub message: String,
}

impl fmt::Display for Violation {
  fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result { write!(f, "{}: {}", self.cell, self.message) }
}

impl SimplicialSet {
  pub fn empty() -> Self { Builder::new().build() }

  /// Number of dimension slots that carry data (including empty trailing
  /// dimensions of a truncation).
  pub fn levels(&self) -> usize { self.names.len() }

  /// Top dimension with cells, or the declared truncation bound.
  pub fn dim(&self) -> usize {
    if let Some(b) = self.bound {
      return b;
    }
    (0..self.names.len()).rev().find(|&d| !self.names[d].is_empty()).unwrap_or(0)
  }

  pub fn is_empty(&self) -> bool { self.num_cells(0) == 0 }
  pub fn truncated(&self) -> bool { self.bound.is_some() }
  pub fn bound(&self) -> Option<usize> { self.bound }

  /// Whether simplices of dimension `n` are completely described.
  pub fn complete_through(&self, n: usize) -> bool { self.bound.is_none_or(|b| n <= b) }

  pub fn num_cells(&self, d: usize) -> usize { self.names.get(d).map_or(0, Vec::len) }

  pub fn counts(&self) -> Vec<usize> {
    (0..=self.dim()).map(|d| self.num_cells(d)).collect()
  }

  pub fn total_cells(&self) -> usize { self.names.iter().map(Vec::len).sum() }

  pub fn cells(&self, d: usize) -> impl Iterator<Item = CellId> + '_ {
    (0..self.num_cells(d)).map(move |i| CellId::new(d, i))
  }

  pub fn all_cells(&self) -> impl Iterator<Item = CellId> + '_ { (0..self.names.len()).flat_map(move |d| self.cells(d)) }

  pub fn name(&self, c: CellId) -> &str { &self.names[c.dim][c.index] }

  pub fn find(&self, name: &str) -> Option<CellId> { self.lookup.get(name).copied() }

  pub fn vertex(&self, name: &str) -> Option<CellId> { self.find(name).filter(|c| c.dim == 0) }

  pub fn faces(&self, c: CellId) -> &[Simplex] { &self.faces[c.dim][c.index] }

  /// Vertex indices of a non-degenerate cell, in order.
  pub fn cell_vertices(&self, c: CellId) -> &[usize] { &self.vertices[c.dim][c.index] }

  /// Vertex sequence of an arbitrary simplex.
  pub fn vertices_of(&self, x: &Simplex) -> Vec<CellId> {
    let vs = self.cell_vertices(x.cell);
    x.word.surjection(x.cell.dim).into_iter().map(|j| CellId::new(0, vs[j])).collect()
  }

  /// `θ^* x` for a monotone `θ: [m] → [dim x]` given by its values.
  pub fn apply(&self, theta: &[usize], x: &Simplex) -> Simplex {
    let sigma = x.word.surjection(x.cell.dim);
    let comp: Vec<usize> = theta.iter().map(|&t| sigma[t]).collect();
    let (epi, image) = epi_mono(&comp);
    self.restrict(x.cell, &image).degenerate_by(&epi)
  }

  /// The face of a non-degenerate cell spanned by the (strictly increasing)
  /// vertex positions `inj`.
  pub fn restrict(&self, c: CellId, inj: &[usize]) -> Simplex {
    let p = c.dim;
    if inj.len() == p + 1 {
      return Simplex::cell(c);
    }
    if inj.len() == 1 {
      return Simplex::cell(CellId::new(0, self.vertices[p][c.index][inj[0]]));
    }
    let missing = (0..=p).zip(inj.iter().copied().chain(std::iter::once(usize::MAX))).find(|(a, b)| a != b).map(|(a, _)| a);
    let i = missing.unwrap_or(p);
    let rest: Vec<usize> = inj.iter().map(|&v| if v > i { v - 1 } else { v }).collect();
    self.apply(&rest, &self.faces[p][c.index][i])
  }

  pub fn face(&self, x: &Simplex, i: usize) -> Simplex { self.apply(&coface(x.dim(), i), x) }

  /// All simplices (degenerate included) of dimension `n`, ordered by the
  /// dimension of their core, then word, then cell.
  pub fn all_simplices(&self, n: usize) -> Vec<Simplex> {
    let mut out = Vec::new();
    for p in 0..=n.min(self.names.len().saturating_sub(1)) {
      if self.num_cells(p) == 0 {
        continue;
      }
      for w in words(n, p) {
        for c in self.cells(p) {
          out.push(Simplex { word: w.clone(), cell: c });
        }
      }
    }
    out
  }

  pub fn simplex_name(&self, x: &Simplex) -> String {
    if x.word.is_empty() {
      self.name(x.cell).to_string()
    } else {
      format!("{}({})", x.word, self.name(x.cell))
    }
  }

  /// Checks the simplicial identities and the well-formedness of every face
  /// reference; returns the first violation.
  pub fn validate(&self) -> std::result::Result<(), Violation> {
    for c in self.all_cells() {
      let fs = self.faces(c);
      let name = self.name(c).to_string();
      let expected = if c.dim == 0 { 0 } else { c.dim + 1 };
      if fs.len() != expected {
        return Err(Violation { cell: name, message: format!("expected {expected} faces, found {}", fs.len()) });
      }
      for (i, f) in fs.iter().enumerate() {
        if f.dim() + 1 != c.dim {
          return Err(Violation { cell: name, message: format!("face d{i} has dimension {} instead of {}", f.dim(), c.dim - 1) });
        }
        if f.cell.index >= self.num_cells(f.cell.dim) || !f.word.fits(f.cell.dim) {
          return Err(Violation { cell: name, message: format!("face d{i} is not a normal form over existing cells") });
        }
      }
    }
    for c in self.all_cells() {
      if c.dim < 2 {
        continue;
      }
      let x = Simplex::cell(c);
      for i in 0..c.dim {
        for j in i + 1..=c.dim {
          let lhs = self.face(&self.face(&x, j), i);
          let rhs = self.face(&self.face(&x, i), j - 1);
          if lhs != rhs {
            return Err(Violation {
              cell: self.name(c).to_string(),
              message: format!("simplicial identity fails at (d{i},d{j}): d{i}d{j} = {} but d{}d{i} = {}", self.simplex_name(&lhs), j - 1, self.simplex_name(&rhs)),
            });
          }
        }
      }
    }
    Ok(())
  }

  /// Reindexes the dimension slots so that `levels()` is at least `n + 1`.
  pub fn with_truncation(mut self, bound: Option<usize>) -> Self {
    self.bound = bound;
    if let Some(b) = bound {
      self.ensure_levels(b + 1);
    }
    self
  }

  fn ensure_levels(&mut self, n: usize) {
    while self.names.len() < n {
      self.names.push(Vec::new());
      self.faces.push(Vec::new());
      self.vertices.push(Vec::new());
    }
  }

  /// The `d`-skeleton, marked as truncated at `d`.
  pub fn skeleton(&self, d: usize) -> SimplicialSet {
    let gens: Vec<CellId> = self.all_cells().filter(|c| c.dim <= d).collect();
    self.subcomplex(&gens).0.with_truncation(Some(d))
  }

  /// Sub-complex generated by the given cells (closed under faces), with the
  /// inclusion's cell correspondence. Names are kept.
  pub fn subcomplex(&self, generators: &[CellId]) -> (SimplicialSet, Vec<Vec<Option<usize>>>) {
    let mut keep: Vec<Vec<bool>> = self.names.iter().map(|l| vec![false; l.len()]).collect();
    let mut stack: Vec<CellId> = generators.to_vec();
    while let Some(c) = stack.pop() {
      if keep[c.dim][c.index] {
        continue;
      }
      keep[c.dim][c.index] = true;
      for f in self.faces(c) {
        stack.push(f.cell);
      }
    }
    let mut b = Builder::new();
    let mut map: Vec<Vec<Option<usize>>> = self.names.iter().map(|l| vec![None; l.len()]).collect();
    for d in 0..self.names.len() {
      for c in self.cells(d) {
        if !keep[d][c.index] {
          continue;
        }
        let faces = self.faces(c).iter().map(|f| Simplex { word: f.word.clone(), cell: CellId::new(f.cell.dim, map[f.cell.dim][f.cell.index].unwrap()) }).collect();
        let id = b.add_cell(self.name(c), faces).expect("faces of a sub-complex");
        map[d][c.index] = Some(id.index);
      }
    }
    (b.build(), map)
  }
}

/// All degeneracy words turning a `p`-simplex into an `n`-simplex.
pub fn words(n: usize, p: usize) -> Vec<DegeneracyWord> {
  let k = n - p;
  let mut out = Vec::new();
  let mut cur = Vec::with_capacity(k);
  fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<DegeneracyWord>) {
    if cur.len() == k {
      out.push(DegeneracyWord::new(cur.clone()).unwrap());
      return;
    }
    for j in start..n {
      if n - j < k - cur.len() {
        break;
      }
      cur.push(j);
      rec(j + 1, n, k, cur, out);
      cur.pop();
    }
  }
  rec(0, n, k, &mut cur, &mut out);
  out
}

/// Incremental construction; cells must be added after their faces.
#[derive(Default)]
pub struct Builder {
  set: SimplicialSet,
}


impl Builder {
  pub fn new() -> Self { Self::default() }

  pub fn add_vertex(&mut self, name: &str) -> CellId { self.add_cell(name, Vec::new()).unwrap() }

  /// Adds a cell with the given faces; a name already in use is disambiguated by
  /// appending primes.
  pub fn add_cell(&mut self, name: &str, faces: Vec<Simplex>) -> Result<CellId> {
    let dim = if faces.is_empty() { 0 } else { faces.len() - 1 };
    if dim > 0 {
      for (i, f) in faces.iter().enumerate() {
        if f.dim() + 1 != dim {
          return invalid(format!("face d{i} of {name} has dimension {} (expected {})", f.dim(), dim - 1));
        }
        if f.cell.index >= self.set.num_cells(f.cell.dim) || !f.word.fits(f.cell.dim) {
          return invalid(format!("face d{i} of {name} refers to a missing cell"));
        }
      }
    }
    if faces.len() == 1 {
      return invalid(format!("cell {name} has a single face"));
    }
    let s = &mut self.set;
    s.ensure_levels(dim + 1);
    let vertices = if dim == 0 {
      vec![s.names[0].len()]
    } else {
      let mut vs: Vec<usize> = s.vertices_of(&faces[dim]).into_iter().map(|c| c.index).collect();
      vs.push(*s.vertices_of(&faces[0]).last().map(|c| &c.index).unwrap());
      vs
    };
    let mut unique = name.to_string();
    while s.lookup.contains_key(&unique) {
      unique.push('\'');
    }
    let id = CellId::new(dim, s.names[dim].len());
    s.lookup.insert(unique.clone(), id);
    s.names[dim].push(unique);
    s.faces[dim].push(faces);
    s.vertices[dim].push(vertices);
    Ok(id)
  }

  pub fn truncate(&mut self, bound: usize) {
    self.set.bound = Some(bound);
    self.set.ensure_levels(bound + 1);
  }

  pub fn num_cells(&self, d: usize) -> usize { self.set.num_cells(d) }

  pub fn peek(&self) -> &SimplicialSet { &self.set }

  pub fn build(self) -> SimplicialSet { self.set }
}

#[cfg(test)]
mod tests {
  use super::*;

  fn triangle() -> SimplicialSet {
    let mut b = Builder::new();
    let v: Vec<_> = ["0", "1", "2"].iter().map(|n| b.add_vertex(n)).collect();
    let e = |b: &mut Builder, n: &str, s: CellId, t: CellId| b.add_cell(n, vec![Simplex::cell(t), Simplex::cell(s)]).unwrap();
    let e01 = e(&mut b, "01", v[0], v[1]);
    let e02 = e(&mut b, "02", v[0], v[2]);
    let e12 = e(&mut b, "12", v[1], v[2]);
    b.add_cell("012", vec![Simplex::cell(e12), Simplex::cell(e02), Simplex::cell(e01)]).unwrap();
    b.build()
  }

  #[test]
  fn faces_and_vertices() {
    let t = triangle();
    let top = Simplex::cell(t.find("012").unwrap());
    assert_eq!(t.vertices_of(&top).iter().map(|c| t.name(*c)).collect::<Vec<_>>(), vec!["0", "1", "2"]);
    let e = t.apply(&[0, 2], &top);
    assert_eq!(t.name(e.cell), "02");
    let degenerate = top.degeneracy(1);
    assert_eq!(t.face(&degenerate, 1), top);
    assert_eq!(t.face(&degenerate, 2), top);
    assert_eq!(t.face(&degenerate, 0), t.face(&top, 0).degeneracy(0));
    assert!(t.validate().is_ok());
  }

  #[test]
  fn permuted_faces_violate_identities() {
    let t = triangle();
    let mut b = Builder::new();
    for d in 0..2 {
      for c in t.cells(d) {
        b.add_cell(t.name(c), t.faces(c).to_vec()).unwrap();
      }
    }
    let mut fs = t.faces(t.find("012").unwrap()).to_vec();
    fs.swap(1, 2);
    b.add_cell("012", fs).unwrap();
    let v = b.build().validate().unwrap_err();
    assert!(v.message.contains("(d0,d1)"), "{v}");
  }

  #[test]
  fn word_enumeration_counts() {
    assert_eq!(words(3, 1).len(), 3);
    assert_eq!(words(4, 4).len(), 1);
    assert_eq!(words(4, 0).len(), 1);
  }
}
