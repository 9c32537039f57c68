//! Standard simplices, boundaries, horns, the interval `J`, the complex `K` and
//! the cones `I^n`.

use crate::constructions::quotient;
use crate::error::{invalid, Result};
use crate::map::{MarkedSet, SimplicialMap};
use crate::simplex::{CellId, DegeneracyWord, Simplex};
use crate::sset::{Builder, SimplicialSet};
use std::collections::HashMap;
use std::sync::Arc;

/// Name of the face of `Δ^n` spanned by `vs`.
pub fn face_name(n: usize, vs: &[usize]) -> String {
  if n >= 10 {
    vs.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
  } else {
    vs.iter().map(|v| v.to_string()).collect()
  }
}

/// Sub-complex of `Δ^n` consisting of the faces accepted by `keep` (which must be
/// closed under taking faces).
fn simplex_subcomplex(n: usize, keep: impl Fn(&[usize]) -> bool) -> SimplicialSet {
  let mut b = Builder::new();
  let mut ids: HashMap<Vec<usize>, CellId> = HashMap::new();
  for k in 0..=n {
    for vs in subsets_of_size(n + 1, k + 1) {
      if !keep(&vs) {
        continue;
      }
      let faces = if k == 0 {
        Vec::new()
      } else {
        (0..=k)
          .map(|i| {
            let mut f = vs.clone();
            f.remove(i);
            Simplex::cell(ids[&f])
          })
          .collect()
      };
      let id = b.add_cell(&face_name(n, &vs), faces).unwrap();
      ids.insert(vs, id);
    }
  }
  b.build()
}

/// Strictly increasing `k`-element subsets of `0..m`, lexicographic.
pub fn subsets_of_size(m: usize, k: usize) -> Vec<Vec<usize>> {
  let mut out = Vec::new();
  let mut cur = Vec::new();
  fn rec(start: usize, m: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if cur.len() == k {
      out.push(cur.clone());
      return;
    }
    for j in start..m {
      cur.push(j);
      rec(j + 1, m, k, cur, out);
      cur.pop();
    }
  }
  rec(0, m, k, &mut cur, &mut out);
  out
}

pub fn simplex(n: usize) -> SimplicialSet { simplex_subcomplex(n, |_| true) }

pub fn boundary(n: usize) -> SimplicialSet { simplex_subcomplex(n, |vs| vs.len() <= n) }

pub fn horn(n: usize, k: usize) -> Result<SimplicialSet> {
  if n == 0 {
    return invalid("horns need n ≥ 1");
  }
  if k > n {
    return invalid(format!("horn index {k} exceeds {n}"));
  }
  Ok(simplex_subcomplex(n, |vs| vs.len() < n || (vs.len() == n && vs.contains(&k))))
}

/// The simplex of `Δ^n` with the given (weakly increasing) vertex sequence.
pub fn simplex_with_vertices(x: &SimplicialSet, n: usize, vs: &[usize]) -> Option<Simplex> {
  let mut core: Vec<usize> = vs.to_vec();
  core.dedup();
  let c = x.find(&face_name(n, &core))?;
  let values: Vec<usize> = {
    let mut out = Vec::with_capacity(vs.len());
    let mut j = 0;
    for (i, v) in vs.iter().enumerate() {
      if i > 0 && *v != vs[i - 1] {
        j += 1;
      }
      out.push(j);
    }
    out
  };
  Some(Simplex { word: DegeneracyWord::from_surjection(&values), cell: c })
}

/// Inclusion of a sub-complex of `Δ^n` (named by vertex strings) into `Δ^n`.
pub fn face_inclusion(sub: &Arc<SimplicialSet>, n: usize, delta: &Arc<SimplicialSet>) -> SimplicialMap {
  let images = (0..sub.levels())
    .map(|d| sub.cells(d).map(|c| Simplex::cell(delta.find(sub.name(c)).unwrap())).collect())
    .collect();
  let _ = n;
  SimplicialMap::from_images(sub.clone(), delta.clone(), images)
}

/// The map `Δ^m → Δ^n` induced by a monotone `θ: [m] → [n]`.
pub fn simplex_map(n: usize, theta: &[usize], dm: &Arc<SimplicialSet>, dn: &Arc<SimplicialSet>) -> SimplicialMap {
  let images = (0..dm.levels())
    .map(|d| {
      dm.cells(d)
        .map(|c| {
          let vs: Vec<usize> = dm.cell_vertices(c).iter().map(|&v| theta[v]).collect();
          simplex_with_vertices(dn, n, &vs).unwrap()
        })
        .collect()
    })
    .collect();
  SimplicialMap::from_images(dm.clone(), dn.clone(), images)
}

/// The nerve of the trivial groupoid on `{0, 1}`, truncated at `d`: two
/// alternating cells in every dimension.
pub fn interval_j(d: usize) -> SimplicialSet {
  let mut b = Builder::new();
  let mut ids: Vec<[CellId; 2]> = Vec::new();
  for n in 0..=d {
    let mut pair = [CellId::new(0, 0); 2];
    for start in 0..2usize {
      let seq: String = (0..=n).map(|j| if (start + j) % 2 == 0 { '0' } else { '1' }).collect();
      let faces = if n == 0 {
        Vec::new()
      } else {
        (0..=n)
          .map(|i| {
            if i == 0 {
              Simplex::cell(ids[n - 1][1 - start])
            } else if i == n {
              Simplex::cell(ids[n - 1][start])
            } else {
              // removing an interior vertex creates a repeat at position i - 1
              let first = start;
              let reduced = if n == 1 { unreachable!() } else { n - 2 };
              Simplex { word: DegeneracyWord::new(vec![i - 1]).unwrap(), cell: ids[reduced][first] }
            }
          })
          .collect()
      };
      pair[start] = b.add_cell(&seq, faces).unwrap();
    }
    ids.push(pair);
  }
  b.truncate(d);
  b.build()
}

/// `J` with both non-degenerate edges marked (`J^♯` at the truncation).
pub fn interval_j_marked(d: usize, marks: &[&str]) -> MarkedSet {
  MarkedSet::with_marked(Arc::new(interval_j(d)), marks).unwrap()
}

/// `K = Δ³/{Δ^{02}, Δ^{13}}` with its projection from `Δ³`.
pub fn complex_k() -> (Arc<SimplicialSet>, SimplicialMap) {
  let d3 = Arc::new(simplex(3));
  let a = d3.find("02").unwrap();
  let c = d3.find("13").unwrap();
  let (k, proj, _) = quotient(&d3, &[vec![a], vec![c]]).unwrap();
  (k, proj)
}

/// The map `K → J` with `0,2 ↦ 1` and `1,3 ↦ 0`.
pub fn k_to_j(k: &Arc<SimplicialSet>, j: &Arc<SimplicialSet>) -> Result<SimplicialMap> {
  let target = |v: CellId| -> usize {
    let name = k.name(v);
    if name.contains('0') || name.contains('2') {
      1
    } else {
      0
    }
  };
  SimplicialMap::from_vertices(
    k.clone(),
    j.clone(),
    |v| CellId::new(0, target(v)),
    |vs| chaotic_simplex(j, &vs.iter().map(|v| v.index).collect::<Vec<_>>()),
  )
}

/// Simplex of `J` (a chaotic nerve) with the given vertex sequence.
pub fn chaotic_simplex(j: &SimplicialSet, vs: &[usize]) -> Option<Simplex> {
  let mut core = vs.to_vec();
  core.dedup();
  let name: String = core.iter().map(|v| v.to_string()).collect();
  let c = j.find(&name)?;
  let values: Vec<usize> = {
    let mut out = Vec::new();
    let mut k = 0;
    for i in 0..vs.len() {
      if i > 0 && vs[i] != vs[i - 1] {
        k += 1;
      }
      out.push(k);
    }
    out
  };
  Some(Simplex { word: DegeneracyWord::from_surjection(&values), cell: c })
}

/// `I^n = (Δ^n ⋆ Δ^0)/Δ^n`, built directly: vertex `0` is the collapsed base,
/// vertex `1` the cone point, and every nonempty `T ⊆ [n]` gives a cell `T*` of
/// dimension `|T|`.
#[derive(Clone, Debug)]
pub struct ConeInterval {
  pub n: usize,
  pub set: Arc<SimplicialSet>,
  cells: HashMap<Vec<usize>, CellId>,
  subsets: HashMap<CellId, Vec<usize>>,
}

impl ConeInterval {
  pub fn new(n: usize) -> Self {
    let mut b = Builder::new();
    let zero = b.add_vertex("0");
    let one = b.add_vertex("1");
    let mut cells: HashMap<Vec<usize>, CellId> = HashMap::new();
    for k in 1..=n + 1 {
      for t in subsets_of_size(n + 1, k) {
        let mut faces = Vec::with_capacity(k + 1);
        for i in 0..k {
          if k == 1 {
            faces.push(Simplex::cell(one));
          } else {
            let mut f = t.clone();
            f.remove(i);
            faces.push(Simplex::cell(cells[&f]));
          }
        }
        faces.push(Simplex::constant(zero, k - 1));
        let name = format!("{}*", face_name(n, &t));
        let id = b.add_cell(&name, faces).unwrap();
        cells.insert(t, id);
      }
    }
    let subsets = cells.iter().map(|(t, &c)| (c, t.clone())).collect();
    Self { n, set: Arc::new(b.build()), cells, subsets }
  }

  pub fn zero(&self) -> CellId { CellId::new(0, 0) }
  pub fn one(&self) -> CellId { CellId::new(0, 1) }

  pub fn cell_of(&self, t: &[usize]) -> CellId { self.cells[t] }

  /// The simplex with vertex sequence `vs ⋆ {cone}`, where `vs` is weakly
  /// increasing in `[n]`.
  pub fn cone_simplex(&self, vs: &[usize]) -> Simplex {
    let mut core = vs.to_vec();
    core.dedup();
    let c = self.cells[&core];
    let mut values = Vec::with_capacity(vs.len() + 1);
    let mut k = 0;
    for i in 0..vs.len() {
      if i > 0 && vs[i] != vs[i - 1] {
        k += 1;
      }
      values.push(k);
    }
    values.push(k + 1);
    Simplex { word: DegeneracyWord::from_surjection(&values), cell: c }
  }

  /// Subset `T` of a cone cell.
  pub fn subset(&self, c: CellId) -> &[usize] { &self.subsets[&c] }

  /// `I(θ): I^m → I^n` for monotone `θ: [m] → [n]`.
  pub fn induced(&self, target: &ConeInterval, theta: &[usize]) -> SimplicialMap {
    let mut images = vec![vec![Simplex::cell(target.zero()), Simplex::cell(target.one())]];
    for d in 1..self.set.levels() {
      images.push(
        self
          .set
          .cells(d)
          .map(|c| {
            let vs: Vec<usize> = self.subset(c).iter().map(|&v| theta[v]).collect();
            target.cone_simplex(&vs)
          })
          .collect(),
      );
    }
    SimplicialMap::from_images(self.set.clone(), target.set.clone(), images)
  }
}

#[cfg(test)]
mod tests {
  use super::*;

  #[test]
  fn standard_counts() {
    assert_eq!(simplex(3).counts(), vec![4, 6, 4, 1]);
    assert_eq!(boundary(2).counts(), vec![3, 3]);
    let h = horn(2, 1).unwrap();
    assert_eq!(h.counts(), vec![3, 2]);
    assert!(h.find("01").is_some() && h.find("12").is_some() && h.find("02").is_none());
    assert!(horn(0, 0).is_err());
    assert!(horn(2, 3).is_err());
  }

  #[test]
  fn standard_complexes_validate() {
    for n in 0..5 {
      assert!(simplex(n).validate().is_ok());
      assert!(boundary(n).validate().is_ok());
    }
    for n in 1..5 {
      for k in 0..=n {
        assert!(horn(n, k).unwrap().validate().is_ok());
      }
    }
    let j = interval_j(4);
    assert_eq!(j.counts(), vec![2, 2, 2, 2, 2]);
    assert!(j.truncated());
    assert!(j.validate().is_ok());
  }

  #[test]
  fn complex_k_and_map_to_j() {
    let (k, proj) = complex_k();
    assert_eq!(k.counts()[0], 2);
    assert!(k.validate().is_ok() && proj.validate().is_ok());
    let j = Arc::new(interval_j(4));
    let f = k_to_j(&k, &j).unwrap();
    assert!(f.validate().is_ok());
  }

  #[test]
  fn cone_interval_validates() {
    for n in 0..4 {
      let i = ConeInterval::new(n);
      assert!(i.set.validate().is_ok());
    }
    let i1 = ConeInterval::new(1);
    assert_eq!(i1.set.counts(), vec![2, 2, 1]);
  }
}
