//! Right mapping spaces and the homotopy category of an ∞-category.

use crate::category::{FiniteCategory, Morphism};
use crate::error::{invalid, Result};
use crate::levelwise::from_levels;
use crate::lifting::is_quasi_category;
use crate::simplex::{CellId, Simplex};
use crate::sset::SimplicialSet;
use std::collections::HashMap;
use std::sync::Arc;

/// `Hom^R_S(s,t)` through dimension `d`: its `n`-simplices are the
/// `(n+1)`-simplices of `S` with front face constant at `s` and last vertex `t`.
/// Returns the complex and, per dimension, the simplex of `S` behind each
/// non-degenerate cell.
pub fn hom_right_with_cells(s: &Arc<SimplicialSet>, from: CellId, to: CellId, d: usize) -> Result<(Arc<SimplicialSet>, Vec<Vec<Simplex>>)> {
  if from.dim != 0 || to.dim != 0 {
    return invalid("hom_right is taken between vertices");
  }
  if !s.complete_through(d + 1) {
    return Err(crate::Error::Inconclusive { reason: "base is truncated below the needed dimension".into(), bound: d + 1 });
  }
  let levels: Vec<Vec<Simplex>> = (0..=d)
    .map(|n| {
      s.all_simplices(n + 1)
        .into_iter()
        .filter(|x| {
          let vs = s.vertices_of(x);
          vs[n + 1] == to && vs[..=n].iter().all(|&v| v == from) && s.apply(&(0..=n).collect::<Vec<_>>(), x) == Simplex::constant(from, n)
        })
        .collect()
    })
    .collect();
  let ex = from_levels(
    &levels,
    |n, x, i| s.apply(&crate::simplex::coface(n + 1, i), x),
    |_, x, i| x.degeneracy(i),
    |_, x| s.simplex_name(x),
    if s.dim() > d + 1 || s.truncated() { Some(d) } else { None },
  )?;
  let mut cells: Vec<Vec<Simplex>> = vec![Vec::new(); ex.normal.len()];
  for (n, m) in ex.normal.iter().enumerate() {
    let mut found: Vec<(usize, Simplex)> = m.iter().filter(|(_, v)| !v.is_degenerate()).map(|(k, v)| (v.cell.index, k.clone())).collect();
    found.sort_by_key(|(i, _)| *i);
    cells[n] = found.into_iter().map(|(_, k)| k).collect();
  }
  Ok((Arc::new(ex.set), cells))
}

pub fn hom_right(s: &Arc<SimplicialSet>, from: CellId, to: CellId, d: usize) -> Result<Arc<SimplicialSet>> { Ok(hom_right_with_cells(s, from, to, d)?.0) }

/// The homotopy category, with each morphism labelled by its least
/// representative edge.
pub struct HomotopyCategory {
  pub category: FiniteCategory,
  /// class of every 1-simplex (degenerate ones included), keyed by simplex
  pub class_of: HashMap<Simplex, usize>,
}

fn find(uf: &mut Vec<usize>, a: usize) -> usize {
  let mut r = a;
  while uf[r] != r {
    r = uf[r];
  }
  let mut a = a;
  while uf[a] != r {
    let next = uf[a];
    uf[a] = r;
    a = next;
  }
  r
}

/// Requires `x` to pass the inner-horn check through `d ≥ 2`.
pub fn homotopy_category(x: &Arc<SimplicialSet>, d: usize) -> Result<HomotopyCategory> {
  if d < 2 {
    return invalid("the homotopy category needs a bound of at least 2");
  }
  if !is_quasi_category(x, d)?.holds() {
    return invalid("not an ∞-category at this bound");
  }
  let edges = x.all_simplices(1);
  let pos: HashMap<Simplex, usize> = edges.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
  let tris = x.all_simplices(2);
  let faces: Vec<[Simplex; 3]> = tris.iter().map(|t| [x.face(t, 0), x.face(t, 1), x.face(t, 2)]).collect();
  let mut uf: Vec<usize> = (0..edges.len()).collect();
  for f in &faces {
    if f[0].is_degenerate() {
      let a = find(&mut uf, pos[&f[2]]);
      let b = find(&mut uf, pos[&f[1]]);
      uf[a.max(b)] = a.min(b);
    }
  }
  let mut roots: Vec<usize> = (0..edges.len()).filter(|&i| find(&mut uf, i) == i).collect();
  let name = |e: &Simplex| x.simplex_name(e);
  // least representative by (word length, name): identities first
  let mut rep: HashMap<usize, usize> = HashMap::new();
  for i in 0..edges.len() {
    let r = find(&mut uf, i);
    let cur = rep.entry(r).or_insert(i);
    let key = |j: usize| (edges[j].word.is_empty(), name(&edges[j]));
    if key(i) < key(*cur) {
      *cur = i;
    }
  }
  roots.sort_by_key(|r| (x.vertices_of(&edges[rep[r]])[0].index, name(&edges[rep[r]])));
  let class_index: HashMap<usize, usize> = roots.iter().enumerate().map(|(k, &r)| (r, k)).collect();
  let mut class_of = HashMap::new();
  for (i, e) in edges.iter().enumerate() {
    let r = find(&mut uf, i);
    class_of.insert(e.clone(), class_index[&r]);
  }
  let morphisms: Vec<Morphism> = roots
    .iter()
    .map(|r| {
      let e = &edges[rep[r]];
      let vs = x.vertices_of(e);
      let n = if e.is_degenerate() { format!("id_{}", x.name(vs[0])) } else { name(e) };
      Morphism { name: n, src: vs[0].index, tgt: vs[1].index }
    })
    .collect();
  let identities: Vec<usize> = x.cells(0).map(|v| class_of[&Simplex::constant(v, 1)]).collect();
  let mut comps = Vec::new();
  let mut seen = HashMap::new();
  for f in &faces {
    let (cf, cg, ch) = (class_of[&f[2]], class_of[&f[0]], class_of[&f[1]]);
    if let Some(&h) = seen.get(&(cg, cf)) {
      if h != ch {
        return invalid("composition is not well defined on homotopy classes");
      }
      continue;
    }
    seen.insert((cg, cf), ch);
    comps.push((cg, cf, ch));
  }
  let objs: Vec<String> = x.cells(0).map(|v| x.name(v).to_string()).collect();
  let refs: Vec<&str> = objs.iter().map(String::as_str).collect();
  let category = FiniteCategory::from_table(&refs, morphisms, identities, &comps)?;
  Ok(HomotopyCategory { category, class_of })
}

pub fn is_equivalence_edge(x: &Arc<SimplicialSet>, e: &Simplex, d: usize) -> Result<bool> {
  let h = homotopy_category(x, d)?;
  let c = *h.class_of.get(e).ok_or_else(|| crate::Error::Invalid("not an edge of X".into()))?;
  Ok(h.category.is_iso(c))
}

#[cfg(test)]
mod tests {
  use super::*;
  use crate::standard::{interval_j, simplex};

  #[test]
  fn hom_right_of_triangle() {
    let d2 = Arc::new(simplex(2));
    let h = hom_right(&d2, CellId::new(0, 0), CellId::new(0, 2), 3).unwrap();
    assert_eq!(h.counts(), vec![1]);
    assert!(!h.truncated());
  }

  #[test]
  fn ho_of_triangle_is_poset() {
    let d2 = Arc::new(simplex(2));
    let h = homotopy_category(&d2, 3).unwrap();
    assert_eq!(h.category.morphisms.len(), 6);
    assert!(!is_equivalence_edge(&Arc::new(simplex(1)), &Simplex::cell(CellId::new(1, 0)), 3).unwrap());
  }

  #[test]
  fn interval_edge_is_invertible() {
    let j = Arc::new(interval_j(4));
    let e = Simplex::cell(j.find("01").unwrap());
    assert!(is_equivalence_edge(&j, &e, 4).unwrap());
  }
}
