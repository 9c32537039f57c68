//! The cosimplicial object `Q`, the adjunction `|−|_Q ⊣ Sing_Q`, the
//! comparison map into necklace hom complexes, and Bousfield–Kan homotopy
//! colimits.

use crate::category::FiniteCategory;
use crate::constructions::colimit;
use crate::error::{invalid, Error, Result};
use crate::homotopy::hom_right_with_cells;
use crate::iso::iso_check;
use crate::levelwise::from_levels;
use crate::lifting::{enumerate_maps, is_quasi_category};
use crate::map::SimplicialMap;
use crate::necklace::{induced_map, mapping_complex, normalize, ordered_flags, FlaggedNecklace, MappingComplex};
use crate::simplex::{CellId, Simplex};
use crate::sset::{Builder, SimplicialSet};
use crate::standard::{simplex, simplex_with_vertices, ConeInterval};
use std::collections::HashMap;
use std::sync::Arc;

/// `Q^n = F_{𝔠(I^n)}(0,1)` through dimension `d`.
#[derive(Clone, Debug)]
pub struct QComplex {
  pub n: usize,
  pub cone: ConeInterval,
  pub hom: MappingComplex,
}

impl QComplex {
  pub fn set(&self) -> &Arc<SimplicialSet> { &self.hom.set }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QMethod {
  Necklace,
  ChainQuotient,
  Both,
}

impl std::str::FromStr for QMethod {
  type Err = Error;
  fn from_str(s: &str) -> Result<Self> {
    Ok(match s {
      "necklace" => Self::Necklace,
      "chain_quotient" | "chain-quotient" => Self::ChainQuotient,
      "both" => Self::Both,
      _ => return invalid(format!("unknown method {s}")),
    })
  }
}

pub fn q_necklace(n: usize, d: usize) -> Result<QComplex> {
  let cone = ConeInterval::new(n);
  let hom = mapping_complex(&cone.set, cone.zero(), cone.one(), d, None)?;
  Ok(QComplex { n, cone, hom })
}

fn set_name(m: u64) -> String {
  let vs: Vec<String> = (0..64).filter(|i| m >> i & 1 == 1).map(|i| i.to_string()).collect();
  format!("{{{}}}", vs.join(","))
}

fn chain_key(c: &[u64]) -> Vec<Vec<usize>> { c.iter().map(|&m| (0..64).filter(|i| m >> i & 1 == 1).collect()).collect() }

/// The nerve of nonempty subsets of `[n]` modulo the identification of chains
/// `S_•`, `S'_•` that agree above some `i ∈ S_0 ∩ S'_0`. Classes are named by
/// their lexicographically least chain.
pub fn q_chain_quotient(n: usize, d: usize) -> Result<Arc<SimplicialSet>> {
  if n >= 63 {
    return invalid("n too large");
  }
  let full = (1u64 << (n + 1)) - 1;
  let subsets: Vec<u64> = (1..=full).collect();
  let above = |i: usize| full & !((1u64 << i) - 1);
  // multichains by level
  let mut chains: Vec<Vec<Vec<u64>>> = vec![subsets.iter().map(|&s| vec![s]).collect()];
  for k in 1..=d {
    let mut next = Vec::new();
    for c in &chains[k - 1] {
      let last = *c.last().unwrap();
      for &s in &subsets {
        if last & !s == 0 {
          let mut c2 = c.clone();
          c2.push(s);
          next.push(c2);
        }
      }
    }
    chains.push(next);
  }
  // union-find per level under the identification rule
  let mut rep: Vec<HashMap<Vec<u64>, Vec<u64>>> = Vec::new();
  let mut levels: Vec<Vec<Vec<u64>>> = Vec::new();
  for level in &chains {
    let mut uf: Vec<usize> = (0..level.len()).collect();
    fn root(uf: &mut [usize], a: usize) -> usize {
      let mut r = a;
      while uf[r] != r {
        r = uf[r];
      }
      uf[a] = r;
      r
    }
    let mut by_key: HashMap<(usize, Vec<u64>), usize> = HashMap::new();
    for (ci, c) in level.iter().enumerate() {
      for i in 0..=n {
        if c[0] >> i & 1 == 0 {
          continue;
        }
        let key = (i, c.iter().map(|&s| s & above(i)).collect());
        match by_key.get(&key) {
          Some(&other) => {
            let (a, b) = (root(&mut uf, ci), root(&mut uf, other));
            uf[a.max(b)] = a.min(b);
          }
          None => {
            by_key.insert(key, ci);
          }
        }
      }
    }
    let mut best: HashMap<usize, usize> = HashMap::new();
    for ci in 0..level.len() {
      let r = root(&mut uf, ci);
      let e = best.entry(r).or_insert(ci);
      if chain_key(&level[ci]) < chain_key(&level[*e]) {
        *e = ci;
      }
    }
    let mut map = HashMap::with_capacity(level.len());
    let mut reps: Vec<Vec<u64>> = Vec::new();
    for ci in 0..level.len() {
      let r = root(&mut uf, ci);
      let b = best[&r];
      if b == ci {
        reps.push(level[ci].clone());
      }
      map.insert(level[ci].clone(), level[b].clone());
    }
    reps.sort_by_key(|c| chain_key(c));
    rep.push(map);
    levels.push(reps);
  }
  let ex = from_levels(
    &levels,
    |k, c, i| {
      let mut c2 = c.clone();
      c2.remove(i);
      rep[k - 1][&c2].clone()
    },
    |k, c, i| {
      let mut c2 = c.clone();
      c2.insert(i, c[i]);
      rep[k + 1][&c2].clone()
    },
    |_, c| c.iter().map(|&s| set_name(s)).collect::<Vec<_>>().join("⊆"),
    if d < n { Some(d) } else { None },
  )?;
  Ok(Arc::new(ex.set))
}

/// `Q^n` by the chosen method; `Both` builds the two models and insists that
/// they are isomorphic.
pub fn q_complex(n: usize, d: usize, method: QMethod) -> Result<Arc<SimplicialSet>> {
  match method {
    QMethod::Necklace => Ok(q_necklace(n, d)?.hom.set),
    QMethod::ChainQuotient => q_chain_quotient(n, d),
    QMethod::Both => {
      let a = q_necklace(n, d)?.hom.set;
      let b = q_chain_quotient(n, d)?;
      if !iso_check(&a, &b).is_iso() {
        return invalid(format!("the two models of Q^{n} disagree"));
      }
      Ok(a)
    }
  }
}

/// `Q(θ): Q^m → Q^n` for monotone `θ: [m] → [n]`.
pub fn q_map(src: &QComplex, dst: &QComplex, theta: &[usize]) -> Result<SimplicialMap> {
  let f = src.cone.induced(&dst.cone, theta);
  induced_map(&f, &src.hom, &dst.hom)
}

pub fn q_coface(src: &QComplex, dst: &QComplex, i: usize) -> Result<SimplicialMap> {
  let theta: Vec<usize> = (0..=src.n).map(|j| if j < i { j } else { j + 1 }).collect();
  q_map(src, dst, &theta)
}

pub fn q_codegeneracy(src: &QComplex, dst: &QComplex, i: usize) -> Result<SimplicialMap> {
  let theta: Vec<usize> = (0..=src.n).map(|j| if j <= i { j } else { j - 1 }).collect();
  q_map(src, dst, &theta)
}

/// `Q^n → Δ^n`, a vertex class `S` going to `max S`.
pub fn q_to_delta(q: &QComplex) -> SimplicialMap {
  let n = q.n;
  let delta = Arc::new(simplex(n));
  let images = q
    .hom
    .cells
    .iter()
    .map(|level| {
      level
        .iter()
        .map(|c| {
          let t = q.cone.subset(c.beads[0]);
          let vs: Vec<usize> = c
            .flag
            .iter()
            .map(|&m| {
              let p = (0..t.len()).rev().find(|&p| m >> p & 1 == 1).expect("flags contain the first joint");
              t[p]
            })
            .collect();
          simplex_with_vertices(&delta, n, &vs).unwrap()
        })
        .collect()
    })
    .collect();
  SimplicialMap::from_images(q.hom.set.clone(), delta, images)
}

/// `|X|_Q` through dimension `d`. Its cells are pairs of a non-degenerate cell
/// `y` of `X` and an interior cell of `Q^{dim y}` (one whose bead is all of
/// `[dim y]⋆Δ⁰`).
pub struct Realization {
  pub x: Arc<SimplicialSet>,
  pub set: Arc<SimplicialSet>,
  pub cones: Vec<ConeInterval>,
  /// `(y, flag)` of every cell, by dimension
  pub cells: Vec<Vec<(CellId, Vec<u64>)>>,
  index: HashMap<(CellId, Vec<u64>), CellId>,
}

impl Realization {
  /// Pushes a flagged necklace over `I^{dim x}` down to its interior
  /// representative over a non-degenerate cell.
  pub fn reduce(&self, x: &Simplex, n: &FlaggedNecklace) -> (CellId, FlaggedNecklace) {
    let mut x = x.clone();
    let mut nk = normalize(&self.cones[x.dim()].set, n);
    loop {
      let m = x.cell.dim;
      if x.is_degenerate() {
        let sigma = x.word.surjection(m);
        let src = &self.cones[x.dim()];
        let t = src.subset(nk.beads[0].cell);
        let vs: Vec<usize> = t.iter().map(|&v| sigma[v]).collect();
        let bead = self.cones[m].cone_simplex(&vs);
        nk = normalize(&self.cones[m].set, &FlaggedNecklace { beads: vec![bead], flag: nk.flag.clone() });
        x = Simplex::cell(x.cell);
      }
      let t = self.cones[m].subset(nk.beads[0].cell).to_vec();
      if t.len() == m + 1 {
        return (x.cell, nk);
      }
      let face = self.x.restrict(x.cell, &t);
      let k = t.len() - 1;
      let all: Vec<usize> = (0..=k).collect();
      nk = FlaggedNecklace { beads: vec![Simplex::cell(self.cones[k].cell_of(&all))], flag: nk.flag };
      x = face;
    }
  }

  pub fn locate(&self, x: &Simplex, n: &FlaggedNecklace) -> Result<Simplex> {
    let (y, nk) = self.reduce(x, n);
    let (w, key) = nk.split_word();
    match self.index.get(&(y, key.flag)) {
      Some(&c) => Ok(Simplex { word: w, cell: c }),
      None => Err(Error::Inconclusive { reason: "simplex of the realization lies above the bound".into(), bound: self.set.bound().unwrap_or(0) }),
    }
  }

  /// The necklace over `I^{dim y}` of a cell.
  pub fn necklace(&self, c: CellId) -> (CellId, FlaggedNecklace) {
    let (y, flag) = &self.cells[c.dim][c.index];
    let m = y.dim;
    let all: Vec<usize> = (0..=m).collect();
    (*y, FlaggedNecklace { beads: vec![Simplex::cell(self.cones[m].cell_of(&all))], flag: flag.clone() })
  }
}

fn block_name(flag: &[u64]) -> String {
  flag
    .windows(2)
    .map(|w| (0..64).filter(|i| (w[1] & !w[0]) >> i & 1 == 1).map(|i: usize| i.to_string()).collect::<Vec<_>>().join(","))
    .collect::<Vec<_>>()
    .join("|")
}

pub fn realize_q(x: &Arc<SimplicialSet>, d: usize) -> Result<Realization> {
  let top = x.dim();
  let cones: Vec<ConeInterval> = (0..=top.max(d)).map(ConeInterval::new).collect();
  let mut per_dim: Vec<Vec<(CellId, Vec<u64>)>> = vec![Vec::new(); d + 1];
  let mut higher = x.truncated();
  for y in x.all_cells() {
    let m = y.dim;
    let joints = 1u64 | 1 << (m + 1);
    let interior = ((1u64 << (m + 2)) - 1) & !joints;
    if m > d {
      higher = true;
    }
    for k in 0..=d.min(m) {
      for f in ordered_flags(joints, interior, k) {
        per_dim[k].push((y, f));
      }
    }
  }
  let mut r = Realization { x: x.clone(), set: Arc::new(SimplicialSet::empty()), cones, cells: per_dim.clone(), index: HashMap::new() };
  let mut b = Builder::new();
  for (k, level) in per_dim.iter().enumerate() {
    for (y, flag) in level {
      let faces = if k == 0 {
        Vec::new()
      } else {
        let all: Vec<usize> = (0..=y.dim).collect();
        let bead = Simplex::cell(r.cones[y.dim].cell_of(&all));
        let mut fs = Vec::with_capacity(k + 1);
        for i in 0..=k {
          let mut f2 = flag.clone();
          f2.remove(i);
          let (y2, nk2) = r.reduce(&Simplex::cell(*y), &FlaggedNecklace { beads: vec![bead.clone()], flag: f2 });
          let (w, key) = nk2.split_word();
          let c = *r.index.get(&(y2, key.flag)).ok_or_else(|| Error::Invalid("face of a realization cell is missing".into()))?;
          fs.push(Simplex { word: w, cell: c });
        }
        fs
      };
      let name = if k == 0 { x.name(*y).to_string() } else { format!("{}[{}]", x.name(*y), block_name(flag)) };
      let id = b.add_cell(&name, faces)?;
      r.index.insert((*y, flag.clone()), id);
    }
  }
  if higher {
    b.truncate(d);
  }
  r.set = Arc::new(b.build());
  Ok(r)
}

/// The map `|f|_Q`.
pub fn realize_map(f: &SimplicialMap, src: &Realization, dst: &Realization) -> Result<SimplicialMap> {
  let mut images = Vec::with_capacity(src.set.levels());
  for d in 0..src.set.levels() {
    let mut level = Vec::with_capacity(src.set.num_cells(d));
    for c in src.set.cells(d) {
      let (y, nk) = src.necklace(c);
      let img = f.cell_image(y);
      // the bead lives over I^{dim y}; dim f(y) = dim y
      level.push(dst.locate(img, &FlaggedNecklace { beads: vec![Simplex::cell(dst.cones[y.dim].cell_of(&(0..=y.dim).collect::<Vec<_>>()))], flag: nk.flag })?);
    }
    images.push(level);
  }
  Ok(SimplicialMap::from_images(src.set.clone(), dst.set.clone(), images))
}

/// `Sing_Q(X)` through dimension `d`: `n`-simplices are the maps `Q^n → X`.
pub fn sing_q(x: &Arc<SimplicialSet>, d: usize) -> Result<Arc<SimplicialSet>> {
  if !x.complete_through(d) {
    return Err(Error::Inconclusive { reason: "target truncated below the requested dimension".into(), bound: d });
  }
  let qs: Vec<QComplex> = (0..=d + 1).map(|n| q_necklace(n, n)).collect::<Result<_>>()?;
  let mut levels: Vec<Vec<Vec<Vec<Simplex>>>> = Vec::new();
  for n in 0..=d {
    let maps = enumerate_maps(&qs[n].hom.set, x, None)?;
    levels.push(maps.into_iter().map(|m| m.images().to_vec()).collect());
  }
  let cofaces: Vec<Vec<SimplicialMap>> = (1..=d).map(|n| (0..=n).map(|i| q_coface(&qs[n - 1], &qs[n], i)).collect::<Result<_>>()).collect::<Result<_>>()?;
  let codegs: Vec<Vec<SimplicialMap>> = (0..d).map(|n| (0..=n).map(|i| q_codegeneracy(&qs[n + 1], &qs[n], i)).collect::<Result<_>>()).collect::<Result<_>>()?;
  let pull = |g: &SimplicialMap, imgs: &Vec<Vec<Simplex>>| -> Vec<Vec<Simplex>> {
    let f = SimplicialMap::from_images(g.cod.clone(), x.clone(), imgs.clone());
    g.compose(&f).images().to_vec()
  };
  let ex = from_levels(
    &levels,
    |n, f, i| pull(&cofaces[n - 1][i], f),
    |n, f, i| pull(&codegs[n][i], f),
    |n, f| {
      let q = &qs[n].hom.set;
      let top: Vec<String> = q.cells(n).map(|c| x.simplex_name(&f[n][c.index])).collect();
      if n == 0 {
        top.join(",")
      } else {
        format!("[{}]", top.join(","))
      }
    },
    if x.truncated() || x.dim() > d { Some(d) } else { None },
  )?;
  Ok(Arc::new(ex.set))
}

/// The comparison `|Hom^R_S(s,t)|_Q → F_{𝔠(S)}(s,t)`, cell by cell on
/// canonical necklaces.
pub struct Comparison {
  pub source: Realization,
  pub target: MappingComplex,
  pub map: SimplicialMap,
}

pub fn comparison_map(s: &Arc<SimplicialSet>, from: CellId, to: CellId, d: usize, bead_bound: Option<usize>) -> Result<Comparison> {
  let check = d.max(2).min(s.bound().unwrap_or(usize::MAX));
  if !is_quasi_category(s, check)?.holds() {
    return invalid("comparison needs an ∞-category");
  }
  let (h, behind) = hom_right_with_cells(s, from, to, d)?;
  let source = realize_q(&h, d)?;
  let target = mapping_complex(s, from, to, d, bead_bound)?;
  let mut images = Vec::with_capacity(source.set.levels());
  for k in 0..source.set.levels() {
    let mut level = Vec::new();
    for c in source.set.cells(k) {
      let (y, nk) = source.necklace(c);
      let sigma = behind[y.dim][y.index].clone();
      level.push(target.locate(&FlaggedNecklace { beads: vec![sigma], flag: nk.flag })?);
    }
    images.push(level);
  }
  let map = SimplicialMap::from_images(source.set.clone(), target.set.clone(), images);
  map.validate().map_err(|v| Error::Invalid(format!("comparison map is not simplicial: {v}")))?;
  Ok(Comparison { source, target, map })
}

/// A diagram `C → sSet`.
#[derive(Clone, Debug)]
pub struct Diagram {
  pub category: FiniteCategory,
  pub values: Vec<Arc<SimplicialSet>>,
  /// one map per morphism of `C`
  pub maps: Vec<SimplicialMap>,
}

impl Diagram {
  pub fn check(&self) -> Result<()> {
    let c = &self.category;
    c.check()?;
    if self.values.len() != c.objects.len() || self.maps.len() != c.morphisms.len() {
      return invalid("diagram sizes do not match the category");
    }
    for (f, m) in c.morphisms.iter().enumerate() {
      if *self.maps[f].dom != *self.values[m.src] || *self.maps[f].cod != *self.values[m.tgt] {
        return invalid(format!("map for {} has the wrong ends", m.name));
      }
      self.maps[f].validate().map_err(|v| Error::Invalid(v.to_string()))?;
    }
    Ok(())
  }

  pub fn constant_point(c: &FiniteCategory) -> Self {
    let pt = Arc::new(simplex(0));
    Self { category: c.clone(), values: vec![pt.clone(); c.objects.len()], maps: c.morphisms.iter().map(|_| SimplicialMap::identity(pt.clone())).collect() }
  }
}

/// Diagonal of the Bousfield–Kan bisimplicial set through dimension `d`,
/// together with its augmentation to the colimit.
pub struct Hocolim {
  pub set: Arc<SimplicialSet>,
  pub colimit: Arc<SimplicialSet>,
  pub augmentation: SimplicialMap,
}

pub fn bousfield_kan_hocolim(f: &Diagram, d: usize) -> Result<Hocolim> {
  f.check()?;
  let c = &f.category;
  // composable chains of length n (identities included), with their start
  let mut chains: Vec<Vec<(usize, Vec<usize>)>> = vec![(0..c.objects.len()).map(|o| (o, Vec::new())).collect()];
  for n in 1..=d {
    let mut next = Vec::new();
    for (o, ch) in &chains[n - 1] {
      let end = ch.last().map_or(*o, |&g| c.morphisms[g].tgt);
      for g in 0..c.morphisms.len() {
        if c.morphisms[g].src == end {
          let mut ch2 = ch.clone();
          ch2.push(g);
          next.push((*o, ch2));
        }
      }
    }
    chains.push(next);
  }
  type Elem = (usize, Vec<usize>, Simplex);
  let levels: Vec<Vec<Elem>> = (0..=d)
    .map(|n| chains[n].iter().flat_map(|(o, ch)| f.values[*o].all_simplices(n).into_iter().map(move |x| (*o, ch.clone(), x))).collect())
    .collect();
  for v in &f.values {
    if !v.complete_through(d) {
      return Err(Error::Inconclusive { reason: "diagram value truncated below the bound".into(), bound: d });
    }
  }
  let face = |n: usize, e: &Elem, i: usize| -> Elem {
    let (o, ch, x) = e;
    let x2 = f.values[*o].face(x, i);
    if i == 0 {
      let g = ch[0];
      (c.morphisms[g].tgt, ch[1..].to_vec(), f.maps[g].image(&x2))
    } else if i == n {
      (*o, ch[..n - 1].to_vec(), x2)
    } else {
      let mut ch2 = ch.clone();
      let h = c.comp(ch[i], ch[i - 1]);
      ch2.splice(i - 1..=i, [h]);
      (*o, ch2, x2)
    }
  };
  let degen = |_: usize, e: &Elem, i: usize| -> Elem {
    let (o, ch, x) = e;
    let obj = if i == 0 { *o } else { c.morphisms[ch[i - 1]].tgt };
    let mut ch2 = ch.clone();
    ch2.insert(i, c.identities[obj]);
    (*o, ch2, x.degeneracy(i))
  };
  let name = |_: usize, e: &Elem| -> String {
    let (o, ch, x) = e;
    let path = if ch.is_empty() { c.objects[*o].clone() } else { ch.iter().map(|&g| c.morphisms[g].name.clone()).collect::<Vec<_>>().join(";") };
    format!("{}:{}", path, f.values[*o].simplex_name(x))
  };
  // for a poset the nerve direction stops after |C| - 1 steps
  let poset = c.is_thin() && c.morphisms.iter().all(|m| m.src == m.tgt || c.hom(m.tgt, m.src).is_empty());
  let span = c.objects.len().saturating_sub(1) + f.values.iter().map(|v| v.dim()).max().unwrap_or(0);
  let bound = if !poset || span > d || f.values.iter().any(|v| v.truncated()) { Some(d) } else { None };
  let ex = from_levels(&levels, face, degen, name, bound)?;
  let set = Arc::new(ex.set);
  let arrows: Vec<(usize, usize, &SimplicialMap)> = c.morphisms.iter().enumerate().filter(|(g, _)| !c.is_identity(*g)).map(|(g, m)| (m.src, m.tgt, &f.maps[g])).collect();
  let (colim, legs) = colimit(&f.values, &arrows)?;
  let mut images: Vec<Vec<Simplex>> = vec![Vec::new(); ex.normal.len()];
  for (n, m) in ex.normal.iter().enumerate() {
    let mut found: Vec<(usize, Simplex)> = m
      .iter()
      .filter(|(_, v)| !v.is_degenerate())
      .map(|((o, _, x), v)| (v.cell.index, legs[*o].image(x)))
      .collect();
    found.sort_by_key(|(i, _)| *i);
    images[n] = found.into_iter().map(|(_, s)| s).collect();
  }
  images.truncate(set.levels());
  let augmentation = SimplicialMap::from_images(set.clone(), colim.clone(), images);
  Ok(Hocolim { set, colimit: colim, augmentation })
}

#[cfg(test)]
mod tests {
  use super::*;
  use crate::homology::{homology, is_homology_iso};
  use crate::standard::boundary;

  #[test]
  fn q_low_degrees() {
    assert_eq!(q_complex(0, 3, QMethod::Both).unwrap().counts(), vec![1]);
    let q1 = q_complex(1, 3, QMethod::Both).unwrap();
    assert!(iso_check(&q1, &Arc::new(simplex(1))).is_iso());
  }

  #[test]
  fn q_models_agree_and_are_contractible() {
    for n in 2..=3 {
      let q = q_complex(n, 3, QMethod::Both).unwrap();
      assert!(homology(&q, 2).unwrap().is_acyclic());
    }
  }

  #[test]
  fn q_to_delta_is_simplicial() {
    for n in 0..=3 {
      let q = q_necklace(n, n).unwrap();
      let f = q_to_delta(&q);
      assert!(f.validate().is_ok());
      assert!(is_homology_iso(&f, n.saturating_sub(1)).unwrap().iso);
    }
  }

  #[test]
  fn realization_of_simplex_is_q() {
    for n in 0..=3 {
      let r = realize_q(&Arc::new(simplex(n)), 3).unwrap();
      let q = q_necklace(n, 3).unwrap();
      assert!(r.set.validate().is_ok());
      assert!(iso_check(&r.set, &q.hom.set).is_iso(), "n = {n}");
    }
    let r = realize_q(&Arc::new(boundary(1)), 2).unwrap();
    assert_eq!(r.set.counts(), vec![2]);
  }

  #[test]
  fn cosimplicial_identities() {
    let qs: Vec<QComplex> = (0..=3).map(|n| q_necklace(n, 3).unwrap()).collect();
    // δ^j δ^i = δ^i δ^{j-1} for i < j
    for n in 1..3 {
      for j in 0..=n + 1 {
        for i in 0..j {
          let a = q_coface(&qs[n - 1], &qs[n], i).unwrap().compose(&q_coface(&qs[n], &qs[n + 1], j).unwrap());
          let b = q_coface(&qs[n - 1], &qs[n], j - 1).unwrap().compose(&q_coface(&qs[n], &qs[n + 1], i).unwrap());
          assert_eq!(a.images(), b.images());
        }
      }
    }
  }

  #[test]
  fn sing_of_point() {
    let s = sing_q(&Arc::new(simplex(0)), 2).unwrap();
    assert_eq!(s.counts(), vec![1]);
  }

  #[test]
  fn comparison_on_triangle() {
    let d2 = Arc::new(simplex(2));
    let c = comparison_map(&d2, CellId::new(0, 0), CellId::new(0, 2), 2, None).unwrap();
    assert_eq!(c.source.set.counts(), vec![1]);
    assert_eq!(c.target.set.counts(), vec![2, 1]);
    assert!(is_homology_iso(&c.map, 1).unwrap().iso);
  }

  #[test]
  fn hocolim_of_constant_point_is_nerve() {
    let c = FiniteCategory::linear(2);
    let h = bousfield_kan_hocolim(&Diagram::constant_point(&c), 3).unwrap();
    assert!(iso_check(&h.set, &Arc::new(simplex(2))).is_iso());
  }
}
