//! Finite categories, their nerves, and the Grothendieck construction.

use crate::error::{invalid, Result};
use crate::map::{MarkedMap, MarkedSet, SimplicialMap};
use crate::simplex::{CellId, DegeneracyWord, Simplex};
use crate::sset::{Builder, SimplicialSet};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::sync::Arc;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Morphism {
  pub name: String,
  pub src: usize,
  pub tgt: usize,
}

/// A finite category with an explicit composition table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteCategory {
  pub objects: Vec<String>,
  pub morphisms: Vec<Morphism>,
  pub identities: Vec<usize>,
  /// `compose[g][f] = Some(g∘f)` whenever `tgt f = src g`
  pub compose: Vec<Vec<Option<usize>>>,
}

impl FiniteCategory {
  /// A preorder given by a reflexive–transitive relation `le(a, b)`.
  pub fn poset(objects: &[&str], le: impl Fn(usize, usize) -> bool) -> Result<Self> {
    let n = objects.len();
    let mut morphisms = Vec::new();
    let mut table = vec![vec![None; n]; n];
    for a in 0..n {
      for b in 0..n {
        if le(a, b) {
          table[a][b] = Some(morphisms.len());
          let name = if a == b { format!("id_{}", objects[a]) } else { format!("{}<{}", objects[a], objects[b]) };
          morphisms.push(Morphism { name, src: a, tgt: b });
        }
      }
    }
    let mut identities = Vec::new();
    for a in 0..n {
      match table[a][a] {
        Some(i) => identities.push(i),
        None => return invalid("relation is not reflexive"),
      }
    }
    let m = morphisms.len();
    let mut compose = vec![vec![None; m]; m];
    for (gi, g) in morphisms.iter().enumerate() {
      for (fi, f) in morphisms.iter().enumerate() {
        if f.tgt == g.src {
          match table[f.src][g.tgt] {
            Some(h) => compose[gi][fi] = Some(h),
            None => return invalid("relation is not transitive"),
          }
        }
      }
    }
    Ok(Self { objects: objects.iter().map(|s| s.to_string()).collect(), morphisms, identities, compose })
  }

  /// The linear order `[n]`.
  pub fn linear(n: usize) -> Self {
    let names: Vec<String> = (0..=n).map(|i| i.to_string()).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    Self::poset(&refs, |a, b| a <= b).unwrap()
  }

  /// The chaotic (trivial) groupoid: exactly one morphism between any two objects.
  pub fn chaotic(objects: &[&str]) -> Self { Self::poset(objects, |_, _| true).unwrap() }

  /// `P_{i,j}`: subsets of `[i,j]` containing both ends, ordered by inclusion.
  pub fn cube_poset(i: usize, j: usize) -> Self {
    let inner: Vec<usize> = if j > i + 1 { (i + 1..j).collect() } else { Vec::new() };
    let mut subsets: Vec<u64> = (0..(1u64 << inner.len())).collect();
    subsets.sort_by_key(|m| (m.count_ones(), *m));
    let names: Vec<String> = subsets
      .iter()
      .map(|m| {
        let mut vs = vec![i];
        vs.extend(inner.iter().enumerate().filter(|(k, _)| m >> k & 1 == 1).map(|(_, &v)| v));
        if j != i {
          vs.push(j);
        }
        format!("{{{}}}", vs.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","))
      })
      .collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    Self::poset(&refs, |a, b| subsets[a] & !subsets[b] == 0).unwrap()
  }

  /// Builds a category from generators: all morphisms must be listed, together
  /// with the composite of every composable pair of non-identities.
  pub fn from_table(objects: &[&str], morphisms: Vec<Morphism>, identities: Vec<usize>, comps: &[(usize, usize, usize)]) -> Result<Self> {
    let m = morphisms.len();
    let mut compose = vec![vec![None; m]; m];
    for (gi, g) in morphisms.iter().enumerate() {
      for (fi, f) in morphisms.iter().enumerate() {
        if f.tgt != g.src {
          continue;
        }
        if identities.contains(&gi) {
          compose[gi][fi] = Some(fi);
        } else if identities.contains(&fi) {
          compose[gi][fi] = Some(gi);
        }
      }
    }
    for &(g, f, h) in comps {
      compose[g][f] = Some(h);
    }
    let c = Self { objects: objects.iter().map(|s| s.to_string()).collect(), morphisms, identities, compose };
    c.check()?;
    Ok(c)
  }

  pub fn is_identity(&self, f: usize) -> bool { self.identities[self.morphisms[f].src] == f }

  pub fn comp(&self, g: usize, f: usize) -> usize { self.compose[g][f].expect("composable morphisms") }

  pub fn hom(&self, a: usize, b: usize) -> Vec<usize> {
    (0..self.morphisms.len()).filter(|&f| self.morphisms[f].src == a && self.morphisms[f].tgt == b).collect()
  }

  pub fn is_iso(&self, f: usize) -> bool {
    let m = &self.morphisms[f];
    self.hom(m.tgt, m.src).into_iter().any(|g| self.comp(g, f) == self.identities[m.src] && self.comp(f, g) == self.identities[m.tgt])
  }

  /// Exhaustive check of typing, unit and associativity laws.
  pub fn check(&self) -> Result<()> {
    let m = self.morphisms.len();
    for (a, &i) in self.identities.iter().enumerate() {
      if self.morphisms[i].src != a || self.morphisms[i].tgt != a {
        return invalid(format!("identity of {} has the wrong ends", self.objects[a]));
      }
    }
    for g in 0..m {
      for f in 0..m {
        let (mf, mg) = (&self.morphisms[f], &self.morphisms[g]);
        match self.compose[g][f] {
          Some(h) if mf.tgt == mg.src => {
            if self.morphisms[h].src != mf.src || self.morphisms[h].tgt != mg.tgt {
              return invalid(format!("{} ∘ {} has the wrong ends", mg.name, mf.name));
            }
          }
          None if mf.tgt == mg.src => return invalid(format!("missing composite {} ∘ {}", mg.name, mf.name)),
          Some(_) => return invalid("composite of non-composable morphisms"),
          None => {}
        }
      }
    }
    for f in 0..m {
      let mf = &self.morphisms[f];
      if self.comp(self.identities[mf.tgt], f) != f || self.comp(f, self.identities[mf.src]) != f {
        return invalid(format!("unit law fails for {}", mf.name));
      }
    }
    for f in 0..m {
      for g in self.hom_from(self.morphisms[f].tgt) {
        for h in self.hom_from(self.morphisms[g].tgt) {
          if self.comp(h, self.comp(g, f)) != self.comp(self.comp(h, g), f) {
            return invalid("associativity fails");
          }
        }
      }
    }
    Ok(())
  }

  fn hom_from(&self, a: usize) -> Vec<usize> { (0..self.morphisms.len()).filter(|&f| self.morphisms[f].src == a).collect() }

  /// Thin categories get vertex-sequence cell names.
  pub fn is_thin(&self) -> bool {
    let mut seen = std::collections::HashSet::new();
    self.morphisms.iter().all(|m| seen.insert((m.src, m.tgt)))
  }

  pub fn opposite(&self) -> Self {
    let morphisms = self.morphisms.iter().map(|m| Morphism { name: format!("{}^op", m.name), src: m.tgt, tgt: m.src }).collect();
    let m = self.morphisms.len();
    let mut compose = vec![vec![None; m]; m];
    for g in 0..m {
      for f in 0..m {
        compose[g][f] = self.compose[f][g];
      }
    }
    Self { objects: self.objects.clone(), morphisms, identities: self.identities.clone(), compose }
  }
}

/// A nerve together with the chain behind every cell.
#[derive(Clone, Debug)]
pub struct Nerve {
  pub category: Arc<FiniteCategory>,
  pub set: Arc<SimplicialSet>,
  index: HashMap<Vec<usize>, CellId>,
  chains: Vec<Vec<Vec<usize>>>,
}

impl Nerve {
  /// The simplex given by a composable chain of morphisms (identities allowed).
  pub fn simplex(&self, chain: &[usize], start: usize) -> Simplex {
    let c = &self.category;
    let core: Vec<usize> = chain.iter().copied().filter(|&f| !c.is_identity(f)).collect();
    let word: Vec<usize> = chain.iter().enumerate().filter(|(_, &f)| c.is_identity(f)).map(|(j, _)| j).collect();
    let cell = if core.is_empty() {
      let obj = if chain.is_empty() { start } else { c.morphisms[chain[0]].src };
      CellId::new(0, obj)
    } else {
      self.index[&core]
    };
    Simplex { word: DegeneracyWord::new(word).unwrap(), cell }
  }

  pub fn chain(&self, c: CellId) -> &[usize] { &self.chains[c.dim][c.index] }

  /// Full chain (with identities) of an arbitrary simplex.
  pub fn full_chain(&self, x: &Simplex) -> (usize, Vec<usize>) {
    let vs = self.set.vertices_of(x);
    let core = self.chain(x.cell);
    let cat = &self.category;
    let mut out = Vec::new();
    let mut k = 0;
    for j in 0..x.dim() {
      if x.word.indices().contains(&j) {
        out.push(cat.identities[vs[j].index]);
      } else {
        out.push(core[k]);
        k += 1;
      }
    }
    (vs[0].index, out)
  }

  /// Simplex of a thin category's nerve with the given vertex sequence.
  pub fn simplex_on(&self, vs: &[usize]) -> Option<Simplex> {
    let c = &self.category;
    let mut chain = Vec::new();
    for w in vs.windows(2) {
      let hs = c.hom(w[0], w[1]);
      if hs.len() != 1 {
        return None;
      }
      chain.push(hs[0]);
    }
    Some(self.simplex(&chain, vs[0]))
  }
}

/// The nerve up to dimension `d`; the result is truncated iff non-degenerate
/// chains exist above `d`.
pub fn nerve(c: &FiniteCategory, d: usize) -> Nerve {
  let cat = Arc::new(c.clone());
  let thin = c.is_thin();
  let mut b = Builder::new();
  let mut index: HashMap<Vec<usize>, CellId> = HashMap::new();
  let mut chains: Vec<Vec<Vec<usize>>> = vec![Vec::new(); d + 1];
  for (i, o) in c.objects.iter().enumerate() {
    b.add_vertex(o);
    chains[0].push(Vec::new());
    let _ = i;
  }
  let non_id: Vec<usize> = (0..c.morphisms.len()).filter(|&f| !c.is_identity(f)).collect();
  let mut level: Vec<Vec<usize>> = non_id.iter().map(|&f| vec![f]).collect();
  let mut truncated = false;
  let mut n = 1;
  while !level.is_empty() {
    if n > d {
      truncated = true;
      break;
    }
    let mut next = Vec::new();
    for ch in &level {
      let faces: Vec<Simplex> = (0..=n)
        .map(|i| {
          let start = c.morphisms[ch[0]].src;
          let (face, fstart) = chain_face(c, ch, i, start);
          partial_simplex(c, &index, &face, fstart)
        })
        .collect();
      let name = if thin {
        let mut vs = vec![c.objects[c.morphisms[ch[0]].src].clone()];
        vs.extend(ch.iter().map(|&f| c.objects[c.morphisms[f].tgt].clone()));
        vs.join("-")
      } else {
        ch.iter().map(|&f| c.morphisms[f].name.clone()).collect::<Vec<_>>().join(";")
      };
      let id = b.add_cell(&name, faces).unwrap();
      index.insert(ch.clone(), id);
      chains[n].push(ch.clone());
      for &g in &non_id {
        if c.morphisms[g].src == c.morphisms[*ch.last().unwrap()].tgt {
          let mut e = ch.clone();
          e.push(g);
          next.push(e);
        }
      }
    }
    level = next;
    n += 1;
  }
  if truncated {
    b.truncate(d);
  }
  let set = Arc::new(b.build());
  chains.truncate(set.levels().max(1));
  while chains.len() < set.levels() {
    chains.push(Vec::new());
  }
  Nerve { category: cat, set, index, chains }
}

fn chain_face(c: &FiniteCategory, ch: &[usize], i: usize, start: usize) -> (Vec<usize>, usize) {
  let n = ch.len();
  if i == 0 {
    let s = c.morphisms[ch[0]].tgt;
    (ch[1..].to_vec(), s)
  } else if i == n {
    (ch[..n - 1].to_vec(), start)
  } else {
    let mut out = ch[..i - 1].to_vec();
    out.push(c.comp(ch[i], ch[i - 1]));
    out.extend_from_slice(&ch[i + 1..]);
    (out, start)
  }
}

fn partial_simplex(c: &FiniteCategory, index: &HashMap<Vec<usize>, CellId>, chain: &[usize], start: usize) -> Simplex {
  let core: Vec<usize> = chain.iter().copied().filter(|&f| !c.is_identity(f)).collect();
  let word: Vec<usize> = chain.iter().enumerate().filter(|(_, &f)| c.is_identity(f)).map(|(j, _)| j).collect();
  let cell = if core.is_empty() { CellId::new(0, start) } else { index[&core] };
  Simplex { word: DegeneracyWord::new(word).unwrap(), cell }
}

/// A strict functor `F: C^op → Cat` given on objects and morphisms.
#[derive(Clone, Debug)]
pub struct CatPresheaf {
  pub base: FiniteCategory,
  pub values: Vec<FiniteCategory>,
  /// for `f: a → b` in the base, the functor `F(b) → F(a)` as
  /// (object map, morphism map)
  pub action: Vec<(Vec<usize>, Vec<usize>)>,
}

impl CatPresheaf {
  /// Checks functoriality exhaustively.
  pub fn check(&self) -> Result<()> {
    let c = &self.base;
    for (f, m) in c.morphisms.iter().enumerate() {
      let (om, mm) = &self.action[f];
      let (src, tgt) = (&self.values[m.tgt], &self.values[m.src]);
      if om.len() != src.objects.len() || mm.len() != src.morphisms.len() {
        return invalid(format!("functor for {} has the wrong size", m.name));
      }
      for (g, gm) in src.morphisms.iter().enumerate() {
        let h = &tgt.morphisms[mm[g]];
        if h.src != om[gm.src] || h.tgt != om[gm.tgt] {
          return invalid(format!("functor for {} does not respect ends", m.name));
        }
      }
      for (x, &i) in src.identities.iter().enumerate() {
        if mm[i] != tgt.identities[om[x]] {
          return invalid(format!("functor for {} does not preserve identities", m.name));
        }
      }
      for g in 0..src.morphisms.len() {
        for h in 0..src.morphisms.len() {
          if let Some(k) = src.compose[h][g] {
            if tgt.compose[mm[h]][mm[g]] != Some(mm[k]) {
              return invalid(format!("functor for {} does not preserve composition", m.name));
            }
          }
        }
      }
      if c.is_identity(f) && (om.iter().enumerate().any(|(a, &b)| a != b) || mm.iter().enumerate().any(|(a, &b)| a != b)) {
        return invalid("identity acts non-trivially");
      }
    }
    for g in 0..c.morphisms.len() {
      for f in 0..c.morphisms.len() {
        if let Some(h) = c.compose[g][f] {
          // F(g∘f) = F(f)∘F(g)
          let (og, mg) = &self.action[g];
          let (of, mf) = &self.action[f];
          let (oh, mh) = &self.action[h];
          if og.iter().map(|&x| of[x]).ne(oh.iter().copied()) || mg.iter().map(|&x| mf[x]).ne(mh.iter().copied()) {
            return invalid("presheaf does not respect composition");
          }
        }
      }
    }
    Ok(())
  }
}

/// Objects of the Grothendieck construction, with the projection and the set of
/// morphisms whose fibre component is an isomorphism.
pub struct Grothendieck {
  pub total: FiniteCategory,
  /// (base object, fibre object) of each total object
  pub objects: Vec<(usize, usize)>,
  /// (base morphism, fibre morphism) of each total morphism
  pub morphisms: Vec<(usize, usize)>,
  /// base morphism of each total morphism
  pub projection: Vec<usize>,
  pub cartesian: Vec<bool>,
}

/// `∫F` for `F: C^op → Cat`: morphisms `(c,x) → (d,y)` are pairs
/// `(f: c → d, φ: x → F(f)(y))`.
pub fn grothendieck(f: &CatPresheaf) -> Result<Grothendieck> {
  f.check()?;
  let c = &f.base;
  let mut objects = Vec::new();
  let mut obj_names = Vec::new();
  for (ci, fc) in f.values.iter().enumerate() {
    for (xi, x) in fc.objects.iter().enumerate() {
      objects.push((ci, xi));
      obj_names.push(format!("{}.{}", c.objects[ci], x));
    }
  }
  let obj_id = |ci: usize, xi: usize| objects.iter().position(|&o| o == (ci, xi)).unwrap();
  let mut morphisms = Vec::new();
  let mut mors = Vec::new();
  for (fi, fm) in c.morphisms.iter().enumerate() {
    let (om, _) = &f.action[fi];
    let (cat_c, cat_d) = (&f.values[fm.src], &f.values[fm.tgt]);
    for x in 0..cat_c.objects.len() {
      for y in 0..cat_d.objects.len() {
        for phi in cat_c.hom(x, om[y]) {
          morphisms.push((fi, phi));
          let name = format!("({},{})", fm.name, cat_c.morphisms[phi].name);
          mors.push(Morphism { name, src: obj_id(fm.src, x), tgt: obj_id(fm.tgt, y) });
        }
      }
    }
  }
  let identities: Vec<usize> = objects
    .iter()
    .map(|&(ci, xi)| {
      let idc = c.identities[ci];
      let idx = f.values[ci].identities[xi];
      morphisms.iter().position(|&m| m == (idc, idx)).unwrap()
    })
    .collect();
  let m = morphisms.len();
  let mut compose = vec![vec![None; m]; m];
  for g in 0..m {
    for h in 0..m {
      if mors[h].tgt != mors[g].src {
        continue;
      }
      // h = (f1, φ): (c,x) → (d,y), g = (f2, ψ): (d,y) → (e,z)
      // g∘h = (f2∘f1, F(f1)(ψ)∘φ)
      let (f1, phi) = morphisms[h];
      let (f2, psi) = morphisms[g];
      let (_, mm1) = &f.action[f1];
      let fc = &f.values[c.morphisms[f1].src];
      let comp_fibre = fc.comp(mm1[psi], phi);
      let comp_base = c.comp(f2, f1);
      // the pair does not determine the target when F(f) is not injective
      compose[g][h] = (0..m).find(|&k| morphisms[k] == (comp_base, comp_fibre) && mors[k].src == mors[h].src && mors[k].tgt == mors[g].tgt);
    }
  }
  let names: Vec<&str> = obj_names.iter().map(String::as_str).collect();
  let total = FiniteCategory { objects: names.iter().map(|s| s.to_string()).collect(), morphisms: mors, identities, compose };
  total.check()?;
  let projection = morphisms.iter().map(|&(fi, _)| fi).collect();
  let cartesian = morphisms.iter().map(|&(fi, phi)| f.values[c.morphisms[fi].src].is_iso(phi)).collect();
  Ok(Grothendieck { total, objects, morphisms, projection, cartesian })
}

/// The map of nerves induced by a functor given on objects and morphisms.
pub fn nerve_functor(src: &Nerve, dst: &Nerve, objects: &[usize], morphisms: &[usize]) -> SimplicialMap {
  let images = (0..src.set.levels())
    .map(|d| {
      src
        .set
        .cells(d)
        .map(|c| {
          let chain: Vec<usize> = src.chain(c).iter().map(|&f| morphisms[f]).collect();
          // only vertices need the start object
          dst.simplex(&chain, if d == 0 { objects[c.index] } else { 0 })
        })
        .collect()
    })
    .collect();
  SimplicialMap::from_images(src.set.clone(), dst.set.clone(), images)
}

impl Grothendieck {
  /// `N(∫F)` with cartesian morphisms marked, over `N(C)^♯`.
  pub fn marked_projection(&self, base: &FiniteCategory, d: usize) -> MarkedMap {
    let total = nerve(&self.total, d);
    let b = nerve(base, d);
    let objects: Vec<usize> = self.objects.iter().map(|&(c, _)| c).collect();
    let map = nerve_functor(&total, &b, &objects, &self.projection);
    let marked = total.set.cells(1).filter(|&e| self.cartesian[total.chain(e)[0]]).map(|e| e.index).collect();
    MarkedMap::unchecked(MarkedSet { space: total.set.clone(), marked }, MarkedSet::sharp(b.set.clone()), map)
  }
}

#[cfg(test)]
mod tests {
  use super::*;

  #[test]
  fn nerve_of_linear_order() {
    let n = nerve(&FiniteCategory::linear(3), 4);
    assert_eq!(n.set.counts(), vec![4, 6, 4, 1]);
    assert!(!n.set.truncated());
    assert!(n.set.validate().is_ok());
  }

  #[test]
  fn nerve_of_cube_poset() {
    let n = nerve(&FiniteCategory::cube_poset(0, 3), 4);
    assert_eq!(n.set.counts(), vec![4, 5, 2]);
  }

  #[test]
  fn chaotic_nerve_truncates() {
    let n = nerve(&FiniteCategory::chaotic(&["0", "1"]), 3);
    assert!(n.set.truncated());
    assert_eq!(n.set.counts(), vec![2, 2, 2, 2]);
    assert!(n.set.validate().is_ok());
  }

  #[test]
  fn categories_pass_their_laws() {
    assert!(FiniteCategory::cube_poset(0, 4).check().is_ok());
    assert!(FiniteCategory::chaotic(&["a", "b", "c"]).check().is_ok());
    assert!(FiniteCategory::linear(3).opposite().check().is_ok());
  }
}
