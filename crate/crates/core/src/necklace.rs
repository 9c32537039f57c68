//! Necklace model of the hom complexes of the path category `𝔠(S)`.
//!
//! A flagged necklace is a chain of beads (simplices of `S` glued end to end)
//! together with a flag `T_0 ⊆ ⋯ ⊆ T_k` of vertex positions, each containing
//! every joint. Flags are stored as bitmasks over the positions `0..=ω`.

use crate::category::{nerve, FiniteCategory};
use crate::error::{invalid, Error, Result};
use crate::map::SimplicialMap;
use crate::simplex::{CellId, DegeneracyWord, Simplex};
use crate::sset::{Builder, SimplicialSet};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::sync::Arc;

/// A flagged necklace over a base; beads may be degenerate and the flag may
/// have repeated entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FlaggedNecklace {
  pub beads: Vec<Simplex>,
  pub flag: Vec<u64>,
}

/// Canonical data of a non-degenerate cell: non-degenerate beads and a
/// strictly increasing flag from the joints to all vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalCell {
  pub beads: Vec<CellId>,
  pub flag: Vec<u64>,
}

impl FlaggedNecklace {
  /// The point necklace at a vertex with a constant flag of length `k + 1`.
  pub fn point(v: CellId, k: usize) -> Self { Self { beads: vec![Simplex::cell(v)], flag: vec![1; k + 1] } }

  pub fn omega(&self) -> usize { self.beads.iter().map(Simplex::dim).sum() }

  /// Bitmask of joints (bead endpoints).
  pub fn joints(&self) -> u64 {
    let mut m = 1u64;
    let mut a = 0;
    for b in &self.beads {
      a += b.dim();
      m |= 1 << a;
    }
    m
  }

  pub fn simplex_dim(&self) -> usize { self.flag.len() - 1 }

  /// Splits repeated flag entries off as a degeneracy word.
  pub fn split_word(&self) -> (DegeneracyWord, CanonicalCell) {
    let values: Vec<usize> = {
      let mut out = Vec::with_capacity(self.flag.len());
      let mut k = 0;
      for i in 0..self.flag.len() {
        if i > 0 && self.flag[i] != self.flag[i - 1] {
          k += 1;
        }
        out.push(k);
      }
      out
    };
    let mut flag = self.flag.clone();
    flag.dedup();
    (DegeneracyWord::from_surjection(&values), CanonicalCell { beads: self.beads.iter().map(|b| b.cell).collect(), flag })
  }
}

impl CanonicalCell {
  pub fn to_necklace(&self) -> FlaggedNecklace {
    FlaggedNecklace { beads: self.beads.iter().map(|&c| Simplex::cell(c)).collect(), flag: self.flag.clone() }
  }

  pub fn vertex_count(&self) -> usize { self.beads.iter().map(|c| c.dim).sum::<usize>() + 1 }
}

fn bits(m: u64) -> impl Iterator<Item = usize> { (0..64).filter(move |i| m >> i & 1 == 1) }

/// Checks the structural conditions: beads chain from `s` to `t`, flag
/// increasing and containing all joints, positions within range.
pub fn check_necklace(s: &SimplicialSet, n: &FlaggedNecklace) -> Result<(CellId, CellId)> {
  if n.beads.is_empty() || n.flag.is_empty() {
    return invalid("necklace needs at least one bead and one flag entry");
  }
  let omega = n.omega();
  if omega >= 64 {
    return invalid("necklaces are limited to 64 vertices");
  }
  let all = if omega == 63 { u64::MAX } else { (1u64 << (omega + 1)) - 1 };
  let j = n.joints();
  for w in n.flag.windows(2) {
    if w[0] & !w[1] != 0 {
      return invalid("flag is not increasing");
    }
  }
  for &t in &n.flag {
    if t & !all != 0 || t & j != j {
      return invalid("flag entry misses a joint or leaves the necklace");
    }
  }
  for w in n.beads.windows(2) {
    let a = *s.vertices_of(&w[0]).last().unwrap();
    let b = s.vertices_of(&w[1])[0];
    if a != b {
      return invalid("consecutive beads do not share a joint");
    }
  }
  let first = s.vertices_of(&n.beads[0])[0];
  let last = *s.vertices_of(n.beads.last().unwrap()).last().unwrap();
  Ok((first, last))
}

/// The unique totally non-degenerate representative: restrict to the last flag
/// entry, split beads at the first flag entry, then factor degenerate beads
/// through their cores and contract collapsed beads.
pub fn normalize(s: &SimplicialSet, n: &FlaggedNecklace) -> FlaggedNecklace {
  let first_vertex = s.vertices_of(&n.beads[0])[0];
  // (a) restrict along T_k
  let top = *n.flag.last().unwrap();
  let mut rank = vec![usize::MAX; 64];
  let mut r = 0;
  for p in bits(top) {
    rank[p] = r;
    r += 1;
  }
  let remap = |m: u64| -> u64 { bits(m).fold(0u64, |acc, p| acc | 1 << rank[p]) };
  let mut beads = Vec::with_capacity(n.beads.len());
  let mut a = 0;
  for b in &n.beads {
    let d = b.dim();
    let kept: Vec<usize> = (0..=d).filter(|j| top >> (a + j) & 1 == 1).collect();
    beads.push(if kept.len() == d + 1 { b.clone() } else { s.apply(&kept, b) });
    a += d;
  }
  let flag: Vec<u64> = n.flag.iter().map(|&m| remap(m)).collect();
  // (b) split at interior points of T_0
  let t0 = flag[0];
  let mut split = Vec::with_capacity(beads.len());
  let mut a = 0;
  for b in &beads {
    let d = b.dim();
    let mut cuts = vec![0];
    cuts.extend((1..d).filter(|j| t0 >> (a + j) & 1 == 1));
    cuts.push(d);
    if cuts.len() == 2 || d == 0 {
      split.push(b.clone());
    } else {
      for w in cuts.windows(2) {
        let range: Vec<usize> = (w[0]..=w[1]).collect();
        split.push(s.apply(&range, b));
      }
    }
    a += d;
  }
  // (c) factor degenerate beads and contract collapsed ones
  let mut g = Vec::with_capacity(65);
  let mut out_beads = Vec::with_capacity(split.len());
  let mut pos = 0usize;
  g.push(0);
  for b in &split {
    let d = b.dim();
    let sigma = b.word.surjection(b.cell.dim);
    for j in 1..=d {
      g.push(pos + sigma[j]);
    }
    pos += b.cell.dim;
    if b.cell.dim > 0 {
      out_beads.push(Simplex::cell(b.cell));
    }
  }
  let map = |m: u64| -> u64 { bits(m).fold(0u64, |acc, p| acc | 1 << g[p]) };
  let flag: Vec<u64> = flag.iter().map(|&m| map(m)).collect();
  if out_beads.is_empty() {
    return FlaggedNecklace { beads: vec![Simplex::cell(first_vertex)], flag: vec![1; n.flag.len()] };
  }
  FlaggedNecklace { beads: out_beads, flag }
}

/// Whether a flagged necklace already satisfies the canonical conditions.
pub fn is_canonical(n: &FlaggedNecklace) -> bool {
  let omega = n.omega();
  let all = (1u64 << (omega + 1)) - 1;
  let point = n.beads.len() == 1 && n.beads[0].dim() == 0;
  n.beads.iter().all(|b| !b.is_degenerate() && (point || b.dim() > 0)) && n.flag[0] == n.joints() && *n.flag.last().unwrap() == all
}

/// Concatenation `x ∘ y` for `y` from `s` to `t` and `x` from `t` to `u`, both
/// of the same simplicial dimension. The result is canonical when the inputs
/// are.
pub fn concatenate(x: &FlaggedNecklace, y: &FlaggedNecklace) -> Result<FlaggedNecklace> {
  if x.flag.len() != y.flag.len() {
    return invalid("composed simplices have different dimensions");
  }
  let y_point = y.beads.len() == 1 && y.beads[0].dim() == 0;
  let x_point = x.beads.len() == 1 && x.beads[0].dim() == 0;
  if x_point {
    return Ok(y.clone());
  }
  if y_point {
    return Ok(x.clone());
  }
  let shift = y.omega();
  if shift + x.omega() >= 64 {
    return invalid("composite necklace exceeds 64 vertices");
  }
  let mut beads = y.beads.clone();
  beads.extend(x.beads.iter().cloned());
  let flag = y.flag.iter().zip(&x.flag).map(|(&a, &b)| a | (b << shift)).collect();
  Ok(FlaggedNecklace { beads, flag })
}

/// Ordered set partitions of the positions in `interior` into `k` blocks,
/// returned as strictly increasing flags starting at `joints`.
pub fn ordered_flags(joints: u64, interior: u64, k: usize) -> Vec<Vec<u64>> {
  let mut out = Vec::new();
  if k == 0 {
    if interior == 0 {
      out.push(vec![joints]);
    }
    return out;
  }
  fn rec(cur: u64, rest: u64, left: usize, acc: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
    if left == 1 {
      if rest != 0 {
        acc.push(cur | rest);
        out.push(acc.clone());
        acc.pop();
      }
      return;
    }
    // nonempty proper subsets of rest, leaving room for the remaining blocks
    let mut sub = rest;
    let mut subs = Vec::new();
    while sub != 0 {
      if sub != rest && (rest & !sub).count_ones() as usize >= left - 1 {
        subs.push(sub);
      }
      sub = (sub - 1) & rest;
    }
    subs.sort();
    for b in subs {
      acc.push(cur | b);
      rec(cur | b, rest & !b, left - 1, acc, out);
      acc.pop();
    }
  }
  let mut acc = vec![joints];
  rec(joints, interior, k, &mut acc, &mut out);
  out
}

/// Hom complex `F_{𝔠(S)}(s, t)` through dimension `dim_bound`, restricted to
/// necklaces with at most `vertex_bound` vertices.
#[derive(Clone, Debug)]
pub struct MappingComplex {
  pub base: Arc<SimplicialSet>,
  pub source: CellId,
  pub target: CellId,
  pub set: Arc<SimplicialSet>,
  pub cells: Vec<Vec<CanonicalCell>>,
  index: HashMap<CanonicalCell, CellId>,
  pub dim_bound: usize,
  pub vertex_bound: usize,
  /// necklaces were cut off by the vertex bound
  pub bound_reached: bool,
}

/// Default vertex bound `dim(S)·(D+2) + 2`.
pub fn default_vertex_bound(s: &SimplicialSet, d: usize) -> usize { (s.dim() * (d + 2) + 2).min(63) }

pub fn mapping_complex(s: &Arc<SimplicialSet>, from: CellId, to: CellId, d: usize, vertex_bound: Option<usize>) -> Result<MappingComplex> {
  if from.dim != 0 || to.dim != 0 {
    return invalid("mapping complexes are taken between vertices");
  }
  let bound = vertex_bound.unwrap_or_else(|| default_vertex_bound(s, d)).min(63);
  // non-degenerate cells of positive dimension by first vertex
  let mut by_first: Vec<Vec<CellId>> = vec![Vec::new(); s.num_cells(0)];
  for n in 1..s.levels() {
    for c in s.cells(n) {
      by_first[s.cell_vertices(c)[0]].push(c);
    }
  }
  let mut necklaces: Vec<Vec<CellId>> = Vec::new();
  let mut bound_reached = false;
  if from == to {
    necklaces.push(vec![from]);
  }
  let mut stack: Vec<(Vec<CellId>, usize, usize)> = vec![(Vec::new(), from.index, 1)];
  while let Some((beads, v, count)) = stack.pop() {
    for &c in &by_first[v] {
      let nc = count + c.dim;
      if nc > bound {
        bound_reached = true;
        continue;
      }
      let mut nb = beads.clone();
      nb.push(c);
      let end = *s.cell_vertices(c).last().unwrap();
      if end == to.index {
        necklaces.push(nb.clone());
      }
      stack.push((nb, end, nc));
    }
  }
  necklaces.sort_by(|a, b| {
    let va: usize = a.iter().map(|c| c.dim).sum::<usize>();
    let vb: usize = b.iter().map(|c| c.dim).sum::<usize>();
    let pa: Vec<usize> = a.iter().map(|c| c.dim).collect();
    let pb: Vec<usize> = b.iter().map(|c| c.dim).collect();
    (va, pa, a).cmp(&(vb, pb, b))
  });
  let mut per_dim: Vec<Vec<CanonicalCell>> = vec![Vec::new(); d + 1];
  let mut higher = false;
  for nk in &necklaces {
    let omega: usize = nk.iter().map(|c| c.dim).sum();
    let mut joints = 1u64;
    let mut a = 0;
    for c in nk {
      a += c.dim;
      joints |= 1 << a;
    }
    let all = (1u64 << (omega + 1)) - 1;
    let interior = all & !joints;
    let u = interior.count_ones() as usize;
    if u > d {
      higher = true;
    }
    for k in 0..=d.min(u) {
      for f in ordered_flags(joints, interior, k) {
        per_dim[k].push(CanonicalCell { beads: nk.clone(), flag: f });
      }
    }
  }
  let mut b = Builder::new();
  let mut index: HashMap<CanonicalCell, CellId> = HashMap::new();
  for (k, level) in per_dim.iter().enumerate() {
    for cell in level {
      let faces = if k == 0 {
        Vec::new()
      } else {
        let mut fs = Vec::with_capacity(k + 1);
        for i in 0..=k {
          let mut flag = cell.flag.clone();
          flag.remove(i);
          let nf = normalize(s, &FlaggedNecklace { beads: cell.beads.iter().map(|&c| Simplex::cell(c)).collect(), flag });
          let (w, key) = nf.split_word();
          match index.get(&key) {
            Some(&id) => fs.push(Simplex { word: w, cell: id }),
            None => return invalid("face of a canonical necklace fell outside the enumeration"),
          }
        }
        fs
      };
      let id = b.add_cell(&cell_name(s, cell), faces)?;
      index.insert(cell.clone(), id);
    }
  }
  if higher || bound_reached {
    b.truncate(d);
  }
  Ok(MappingComplex { base: s.clone(), source: from, target: to, set: Arc::new(b.build()), cells: per_dim, index, dim_bound: d, vertex_bound: bound, bound_reached })
}

fn cell_name(s: &SimplicialSet, c: &CanonicalCell) -> String {
  let mut name: String = c.beads.iter().map(|&b| s.name(b).to_string()).collect::<Vec<_>>().join("|");
  if c.flag.len() > 2 {
    let j = c.flag[0];
    for t in &c.flag[1..c.flag.len() - 1] {
      let added: Vec<String> = bits(t & !j).map(|p| p.to_string()).collect();
      name.push('/');
      name.push_str(&added.join(","));
    }
  }
  name
}

impl MappingComplex {
  /// The simplex represented by a flagged necklace (normalized first).
  pub fn locate(&self, n: &FlaggedNecklace) -> Result<Simplex> {
    let nf = normalize(&self.base, n);
    let (w, key) = nf.split_word();
    match self.index.get(&key) {
      Some(&c) => Ok(Simplex { word: w, cell: c }),
      None => Err(Error::Inconclusive { reason: "necklace lies beyond the enumerated bound".into(), bound: self.vertex_bound }),
    }
  }

  /// The flagged necklace of an arbitrary simplex of the complex (repeated
  /// flag entries encode the degeneracies).
  pub fn necklace(&self, x: &Simplex) -> FlaggedNecklace {
    let c = &self.cells[x.cell.dim][x.cell.index];
    let sigma = x.word.surjection(x.cell.dim);
    FlaggedNecklace { beads: c.beads.iter().map(|&b| Simplex::cell(b)).collect(), flag: sigma.iter().map(|&j| c.flag[j]).collect() }
  }

  pub fn canonical(&self, c: CellId) -> &CanonicalCell { &self.cells[c.dim][c.index] }

  /// The identity of `s` as an `m`-simplex (when `source == target`).
  pub fn identity(&self, m: usize) -> Result<Simplex> { self.locate(&FlaggedNecklace::point(self.source, m)) }

  /// Whether the enumerated complex is exactly the truncation of the full hom
  /// complex at `dim_bound`.
  pub fn is_exact(&self) -> bool { !self.bound_reached }
}

/// `x ∘ y` for `y ∈ F(s,t)`, `x ∈ F(t,u)` into `F(s,u)`.
pub fn compose(target: &MappingComplex, x_hom: &MappingComplex, x: &Simplex, y_hom: &MappingComplex, y: &Simplex) -> Result<Simplex> {
  if y_hom.target != x_hom.source || target.source != y_hom.source || target.target != x_hom.target {
    return invalid("endpoints do not match");
  }
  let n = concatenate(&x_hom.necklace(x), &y_hom.necklace(y))?;
  target.locate(&n)
}

/// The map `F_{𝔠(S)}(s,t) → F_{𝔠(S')}(f s, f t)` induced by `f: S → S'`.
pub fn induced_map(f: &SimplicialMap, src: &MappingComplex, dst: &MappingComplex) -> Result<SimplicialMap> {
  let mut images = Vec::new();
  for (k, level) in src.cells.iter().enumerate() {
    let mut out = Vec::with_capacity(level.len());
    for c in level {
      let beads: Vec<Simplex> = c.beads.iter().map(|&b| f.image(&Simplex::cell(b))).collect();
      let n = if c.beads.len() == 1 && c.beads[0].dim == 0 {
        FlaggedNecklace::point(beads[0].cell, k)
      } else {
        FlaggedNecklace { beads, flag: c.flag.clone() }
      };
      out.push(dst.locate(&n)?);
    }
    images.push(out);
  }
  while images.len() < src.set.levels() {
    images.push(Vec::new());
  }
  Ok(SimplicialMap::from_images(src.set.clone(), dst.set.clone(), images))
}

/// Independent oracle: the nerve of `P_{i,j}` through dimension `d`.
pub fn cube_oracle(n: usize, i: usize, j: usize, d: usize) -> Result<Arc<SimplicialSet>> {
  if !(i <= j && j <= n) {
    return invalid(format!("need 0 ≤ i ≤ j ≤ n, got ({n},{i},{j})"));
  }
  Ok(nerve(&FiniteCategory::cube_poset(i, j), d).set)
}

/// Hom complexes between every ordered pair of vertices.
#[derive(Clone, Debug)]
pub struct PathCategory {
  pub base: Arc<SimplicialSet>,
  pub dim_bound: usize,
  homs: HashMap<(usize, usize), Arc<MappingComplex>>,
}

impl PathCategory {
  pub fn new(base: &Arc<SimplicialSet>, d: usize, vertex_bound: Option<usize>) -> Result<Self> {
    let mut homs = HashMap::new();
    for a in base.cells(0) {
      for b in base.cells(0) {
        homs.insert((a.index, b.index), Arc::new(mapping_complex(base, a, b, d, vertex_bound)?));
      }
    }
    Ok(Self { base: base.clone(), dim_bound: d, homs })
  }

  pub fn hom(&self, a: CellId, b: CellId) -> &Arc<MappingComplex> { &self.homs[&(a.index, b.index)] }

  pub fn objects(&self) -> Vec<CellId> { self.base.cells(0).collect() }

  /// `x ∘ y` for `y: a → b`, `x: b → c`.
  pub fn compose(&self, a: CellId, b: CellId, c: CellId, x: &Simplex, y: &Simplex) -> Result<Simplex> {
    compose(self.hom(a, c), self.hom(b, c), x, self.hom(a, b), y)
  }

  pub fn is_exact(&self) -> bool { self.homs.values().all(|h| h.is_exact()) }
}

#[cfg(test)]
mod tests {
  use super::*;
  use crate::iso::iso_check;
  use crate::standard::simplex;

  #[test]
  fn triangle_hom_is_interval() {
    let d2 = Arc::new(simplex(2));
    let m = mapping_complex(&d2, CellId::new(0, 0), CellId::new(0, 2), 2, None).unwrap();
    assert_eq!(m.set.counts(), vec![2, 1]);
    assert!(m.set.validate().is_ok());
  }

  #[test]
  fn tetrahedron_hom_matches_cube() {
    let d3 = Arc::new(simplex(3));
    let m = mapping_complex(&d3, CellId::new(0, 0), CellId::new(0, 3), 3, None).unwrap();
    assert_eq!(m.set.counts(), vec![4, 5, 2]);
    let oracle = cube_oracle(3, 0, 3, 3).unwrap();
    assert!(iso_check(&m.set, &oracle).is_iso());
  }

  #[test]
  fn degenerate_loop_normalizes_to_point() {
    let d2 = simplex(2);
    let v = CellId::new(0, 1);
    let n = FlaggedNecklace { beads: vec![Simplex::constant(v, 1)], flag: vec![0b11] };
    let out = normalize(&d2, &n);
    assert_eq!(out, FlaggedNecklace::point(v, 0));
  }

  #[test]
  fn canonical_input_is_fixed() {
    let d2 = simplex(2);
    let e01 = Simplex::cell(d2.find("01").unwrap());
    let e12 = Simplex::cell(d2.find("12").unwrap());
    let n = FlaggedNecklace { beads: vec![e01, e12], flag: vec![0b111] };
    assert!(is_canonical(&n));
    assert_eq!(normalize(&d2, &n), n);
  }

  #[test]
  fn flag_enumeration_counts_ordered_partitions() {
    // ordered partitions of a 3-set into k blocks: 1, 6, 6
    assert_eq!(ordered_flags(0b10001, 0b01110, 1).len(), 1);
    assert_eq!(ordered_flags(0b10001, 0b01110, 2).len(), 6);
    assert_eq!(ordered_flags(0b10001, 0b01110, 3).len(), 6);
  }
}
