//! Integer homology of normalized chains, via exact Smith normal forms.

use crate::error::{Error, Result};
use crate::map::SimplicialMap;
use crate::simplex::CellId;
use crate::sset::SimplicialSet;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};

/// Sparse integer matrix stored by rows; `rows × cols`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
  pub rows: usize,
  pub cols: usize,
  pub entries: Vec<BTreeMap<usize, i64>>,
}

impl SparseMatrix {
  pub fn zero(rows: usize, cols: usize) -> Self { Self { rows, cols, entries: vec![BTreeMap::new(); rows] } }

  pub fn add(&mut self, r: usize, c: usize, v: i64) {
    let e = self.entries[r].entry(c).or_insert(0);
    *e += v;
    if *e == 0 {
      self.entries[r].remove(&c);
    }
  }

  pub fn get(&self, r: usize, c: usize) -> i64 { self.entries[r].get(&c).copied().unwrap_or(0) }

  /// `self · other`
  pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
    assert_eq!(self.cols, other.rows);
    let mut out = SparseMatrix::zero(self.rows, other.cols);
    for (r, row) in self.entries.iter().enumerate() {
      for (&k, &a) in row {
        for (&c, &b) in &other.entries[k] {
          out.add(r, c, a * b);
        }
      }
    }
    out
  }

  pub fn is_zero(&self) -> bool { self.entries.iter().all(BTreeMap::is_empty) }

  pub fn to_dense_text(&self) -> String {
    let mut s = String::new();
    for r in 0..self.rows {
      let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
      s.push_str(&row.join(" "));
      s.push('\n');
    }
    s
  }
}

/// Normalized chains up to degree `top`: `boundaries[n]` maps degree `n` to
/// degree `n - 1` (rows index degree `n - 1`).
#[derive(Clone, Debug)]
pub struct ChainComplex {
  pub ranks: Vec<usize>,
  pub boundaries: Vec<SparseMatrix>,
}

impl ChainComplex {
  pub fn boundary_squared_zero(&self) -> bool {
    (2..self.boundaries.len()).all(|n| self.boundaries[n - 1].mul(&self.boundaries[n]).is_zero())
  }
}

/// Chains on non-degenerate cells through degree `top`. The input must be
/// complete through `top`.
pub fn normalized_chains(x: &SimplicialSet, top: usize) -> Result<ChainComplex> {
  if !x.complete_through(top) {
    return Err(Error::Inconclusive { reason: format!("chains in degree {top} need cells the truncation omits"), bound: x.dim() });
  }
  let ranks: Vec<usize> = (0..=top).map(|n| x.num_cells(n)).collect();
  let mut boundaries = vec![SparseMatrix::zero(0, ranks[0])];
  for n in 1..=top {
    let mut m = SparseMatrix::zero(ranks[n - 1], ranks[n]);
    for c in x.cells(n) {
      for (i, f) in x.faces(c).iter().enumerate() {
        if !f.is_degenerate() {
          m.add(f.cell.index, c.index, if i % 2 == 0 { 1 } else { -1 });
        }
      }
    }
    boundaries.push(m);
  }
  Ok(ChainComplex { ranks, boundaries })
}

/// Invariant factors (all nonzero diagonal entries) of an integer matrix.
pub fn invariant_factors(m: &SparseMatrix) -> Vec<BigInt> {
  let mut rows: Vec<BTreeMap<usize, BigInt>> = m.entries.iter().map(|r| r.iter().map(|(&c, &v)| (c, BigInt::from(v))).collect()).collect();
  let mut cols: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); m.cols];
  for (r, row) in rows.iter().enumerate() {
    for &c in row.keys() {
      cols[c].insert(r);
    }
  }
  let mut alive: BTreeSet<usize> = (0..m.rows).filter(|&r| !rows[r].is_empty()).collect();
  let mut units = 0usize;
  // unit pivots first, cheapest rows first
  loop {
    let mut best: Option<(usize, usize, usize)> = None;
    for &r in &alive {
      let len = rows[r].len();
      if best.is_some_and(|b| b.0 <= len) {
        continue;
      }
      if let Some((&c, _)) = rows[r].iter().find(|(_, v)| v.abs().is_one()) {
        best = Some((len, r, c));
        if len == 1 {
          break;
        }
      }
    }
    let Some((_, r, c)) = best else { break };
    let pivot_row = rows[r].clone();
    let p = pivot_row[&c].clone();
    let others: Vec<usize> = cols[c].iter().copied().filter(|&o| o != r).collect();
    for o in others {
      let factor = &rows[o][&c] * &p;
      for (&k, v) in &pivot_row {
        let e = rows[o].entry(k).or_insert_with(BigInt::zero);
        *e -= &factor * v;
        if e.is_zero() {
          rows[o].remove(&k);
          cols[k].remove(&o);
        } else {
          cols[k].insert(o);
        }
      }
      if rows[o].is_empty() {
        alive.remove(&o);
      }
    }
    for &k in pivot_row.keys() {
      cols[k].remove(&r);
    }
    rows[r].clear();
    alive.remove(&r);
    units += 1;
  }
  let mut out: Vec<BigInt> = vec![BigInt::one(); units];
  let live_cols: Vec<usize> = (0..m.cols).filter(|&c| !cols[c].is_empty()).collect();
  if !alive.is_empty() {
    let col_pos: BTreeMap<usize, usize> = live_cols.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let mut dense: Vec<Vec<BigInt>> = alive
      .iter()
      .map(|&r| {
        let mut v = vec![BigInt::zero(); live_cols.len()];
        for (c, x) in &rows[r] {
          v[col_pos[c]] = x.clone();
        }
        v
      })
      .collect();
    out.extend(dense_smith(&mut dense));
  }
  out
}

/// Diagonal of the Smith normal form of a dense matrix (nonzero entries only).
fn dense_smith(a: &mut [Vec<BigInt>]) -> Vec<BigInt> {
  let m = a.len();
  let n = if m == 0 { 0 } else { a[0].len() };
  let mut diag = Vec::new();
  let mut t = 0;
  while t < m.min(n) {
    // smallest nonzero entry of the trailing block
    let mut best: Option<(usize, usize)> = None;
    for i in t..m {
      for j in t..n {
        if !a[i][j].is_zero() && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
          best = Some((i, j));
        }
      }
    }
    let Some((bi, bj)) = best else { break };
    a.swap(t, bi);
    for row in a.iter_mut() {
      row.swap(t, bj);
    }
    loop {
      let mut dirty = false;
      for i in t + 1..m {
        if a[i][t].is_zero() {
          continue;
        }
        let q = a[i][t].div_floor(&a[t][t]);
        for j in t..n {
          let v = &q * &a[t][j];
          a[i][j] -= v;
        }
        if !a[i][t].is_zero() {
          dirty = true;
        }
      }
      for j in t + 1..n {
        if a[t][j].is_zero() {
          continue;
        }
        let q = a[t][j].div_floor(&a[t][t]);
        for i in t..m {
          let v = &q * &a[i][t];
          a[i][j] -= v;
        }
        if !a[t][j].is_zero() {
          dirty = true;
        }
      }
      if !dirty {
        // divisibility of the rest of the block
        let mut bad = None;
        'scan: for i in t + 1..m {
          for j in t + 1..n {
            if !(&a[i][j] % &a[t][t]).is_zero() {
              bad = Some(i);
              break 'scan;
            }
          }
        }
        match bad {
          None => break,
          Some(i) => {
            for j in t..n {
              let v = a[i][j].clone();
              a[t][j] += v;
            }
            continue;
          }
        }
      }
      // move the smallest entry of row/column t to the pivot
      let mut best = (t, t);
      for i in t..m {
        if !a[i][t].is_zero() && a[i][t].abs() < a[best.0][best.1].abs() {
          best = (i, t);
        }
      }
      for j in t..n {
        if !a[t][j].is_zero() && a[t][j].abs() < a[best.0][best.1].abs() {
          best = (t, j);
        }
      }
      a.swap(t, best.0);
      for row in a.iter_mut() {
        row.swap(t, best.1);
      }
    }
    diag.push(a[t][t].abs());
    t += 1;
  }
  diag.sort();
  diag
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeReport {
  pub degree: usize,
  pub betti: usize,
  pub torsion: Vec<String>,
}

/// Homology through degree `top`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyReport {
  pub degrees: Vec<DegreeReport>,
}

impl HomologyReport {
  pub fn betti(&self) -> Vec<usize> { self.degrees.iter().map(|d| d.betti).collect() }

  /// Reduced homology vanishes (the space is nonempty and acyclic).
  pub fn is_acyclic(&self) -> bool {
    self.degrees.iter().all(|d| d.torsion.is_empty() && d.betti == usize::from(d.degree == 0))
  }
}

fn ranks_and_torsion(m: &SparseMatrix) -> (usize, Vec<BigInt>) {
  let f = invariant_factors(m);
  let torsion = f.iter().filter(|d| !d.is_one()).cloned().collect();
  (f.len(), torsion)
}

/// Homology from a chain complex whose boundaries reach degree `top + 1`.
pub fn homology_of(cc: &ChainComplex, top: usize) -> HomologyReport {
  let ranks: Vec<(usize, Vec<BigInt>)> = cc.boundaries.iter().map(ranks_and_torsion).collect();
  let mut degrees = Vec::new();
  for n in 0..=top {
    let rank_out = if n == 0 { 0 } else { ranks[n].0 };
    let (rank_in, torsion) = ranks.get(n + 1).cloned().unwrap_or((0, Vec::new()));
    degrees.push(DegreeReport { degree: n, betti: cc.ranks[n] - rank_out - rank_in, torsion: torsion.iter().map(|t| t.to_string()).collect() });
  }
  HomologyReport { degrees }
}

/// Homology through degree `top`; needs cells through `top + 1`.
pub fn homology(x: &SimplicialSet, top: usize) -> Result<HomologyReport> {
  let cc = normalized_chains(x, top + 1)?;
  Ok(homology_of(&cc, top))
}

/// Matrix of the chain map in degree `n` (rows: cells of the codomain).
pub fn chain_map(f: &SimplicialMap, n: usize) -> SparseMatrix {
  let mut m = SparseMatrix::zero(f.cod.num_cells(n), f.dom.num_cells(n));
  for c in f.dom.cells(n) {
    let y = f.cell_image(c);
    if !y.is_degenerate() {
      m.add(y.cell.index, c.index, 1);
    }
  }
  m
}

pub fn induced_homology(f: &SimplicialMap, top: usize) -> Vec<SparseMatrix> { (0..=top).map(|n| chain_map(f, n)).collect() }

/// Mapping cone of a chain map through degree `top`.
fn cone(f: &SimplicialMap, top: usize) -> Result<ChainComplex> {
  let cx = normalized_chains(&f.dom, top)?;
  let cy = normalized_chains(&f.cod, top)?;
  // cone_n = C_{n-1}(X) ⊕ C_n(Y); d(x, y) = (-∂x, f x + ∂y)
  let rx = |n: isize| if n < 0 { 0 } else { cx.ranks[n as usize] };
  let ranks: Vec<usize> = (0..=top).map(|n| rx(n as isize - 1) + cy.ranks[n]).collect();
  let mut boundaries = vec![SparseMatrix::zero(0, ranks[0])];
  for n in 1..=top {
    let mut m = SparseMatrix::zero(ranks[n - 1], ranks[n]);
    let (xo_src, xo_tgt) = (rx(n as isize - 1), rx(n as isize - 2));
    // -∂x
    if n >= 2 {
      for (r, row) in cx.boundaries[n - 1].entries.iter().enumerate() {
        for (&c, &v) in row {
          m.add(r, c, -v);
        }
      }
    }
    // f x, x in degree n-1
    let fm = chain_map(f, n - 1);
    for (r, row) in fm.entries.iter().enumerate() {
      for (&c, &v) in row {
        m.add(xo_tgt + r, c, v);
      }
    }
    // ∂y
    for (r, row) in cy.boundaries[n].entries.iter().enumerate() {
      for (&c, &v) in row {
        m.add(xo_tgt + r, xo_src + c, v);
      }
    }
    boundaries.push(m);
  }
  Ok(ChainComplex { ranks, boundaries })
}

/// Verdict of [`is_homology_iso`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsoReport {
  pub range: usize,
  pub iso: bool,
  pub first_failure: Option<usize>,
}

/// Whether `f` induces isomorphisms on `H_n` for all `n ≤ range`. Uses the
/// mapping cone through degree `range` (which gives isomorphisms below `range`
/// and a surjection in degree `range`) and a comparison of the abstract groups
/// in degree `range`; a surjection between isomorphic finitely generated
/// abelian groups is an isomorphism.
pub fn is_homology_iso(f: &SimplicialMap, range: usize) -> Result<IsoReport> {
  let c = cone(f, range + 1)?;
  let hc = homology_of(&c, range);
  let hx = homology(&f.dom, range)?;
  let hy = homology(&f.cod, range)?;
  for n in 0..=range {
    let cone_zero = hc.degrees[n].betti == 0 && hc.degrees[n].torsion.is_empty();
    if !cone_zero {
      return Ok(IsoReport { range, iso: false, first_failure: Some(if n == 0 { 0 } else { n - 1 }) });
    }
  }
  if hx.degrees[range] != hy.degrees[range] {
    return Ok(IsoReport { range, iso: false, first_failure: Some(range) });
  }
  Ok(IsoReport { range, iso: true, first_failure: None })
}

/// Path components: the component index of each vertex.
pub fn components(x: &SimplicialSet) -> (usize, Vec<usize>) {
  let n = x.num_cells(0);
  let mut parent: Vec<usize> = (0..n).collect();
  fn find(p: &mut [usize], mut i: usize) -> usize {
    while p[i] != i {
      p[i] = p[p[i]];
      i = p[i];
    }
    i
  }
  for e in x.cells(1) {
    let vs = x.cell_vertices(e);
    let (a, b) = (find(&mut parent, vs[0]), find(&mut parent, vs[1]));
    parent[a.max(b)] = a.min(b);
  }
  let mut label = BTreeMap::new();
  let mut out = Vec::with_capacity(n);
  for v in 0..n {
    let r = find(&mut parent, v);
    let next = label.len();
    out.push(*label.entry(r).or_insert(next));
  }
  (label.len(), out)
}

/// Whether `f` induces a bijection on path components.
pub fn pi0_bijection(f: &SimplicialMap) -> bool {
  let (nx, cx) = components(&f.dom);
  let (ny, cy) = components(&f.cod);
  if nx != ny {
    return false;
  }
  let mut img: BTreeMap<usize, usize> = BTreeMap::new();
  for v in f.dom.cells(0) {
    let w = f.cell_image(v).cell;
    let (a, b) = (cx[v.index], cy[w.index]);
    if let Some(&prev) = img.get(&a) {
      if prev != b {
        return false;
      }
    }
    img.insert(a, b);
  }
  let hit: BTreeSet<usize> = img.values().copied().collect();
  hit.len() == ny
}

/// Alternating sum of cell counts through `top`.
pub fn euler_characteristic(x: &SimplicialSet, top: usize) -> i64 {
  (0..=top).map(|n| if n % 2 == 0 { x.num_cells(n) as i64 } else { -(x.num_cells(n) as i64) }).sum()
}

pub fn vertex_component(x: &SimplicialSet, v: CellId) -> usize { components(x).1[v.index] }

#[cfg(test)]
mod tests {
  use super::*;
  use crate::standard::{boundary, simplex};

  fn dense(rows: &[&[i64]]) -> SparseMatrix {
    let mut m = SparseMatrix::zero(rows.len(), rows[0].len());
    for (r, row) in rows.iter().enumerate() {
      for (c, &v) in row.iter().enumerate() {
        if v != 0 {
          m.add(r, c, v);
        }
      }
    }
    m
  }

  #[test]
  fn smith_of_small_matrices() {
    let f = invariant_factors(&dense(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]));
    assert_eq!(f, vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]);
    let g = invariant_factors(&dense(&[&[1, 2], &[3, 4]]));
    assert_eq!(g, vec![BigInt::from(1), BigInt::from(2)]);
  }

  #[test]
  fn spheres() {
    let h = homology(&boundary(3), 2).unwrap();
    assert_eq!(h.betti(), vec![1, 0, 1]);
    assert!(homology(&simplex(3), 2).unwrap().is_acyclic());
  }

  #[test]
  fn truncation_guard() {
    let j = crate::standard::interval_j(3);
    assert!(homology(&j, 3).is_err());
    assert!(homology(&j, 2).unwrap().is_acyclic());
  }
}
