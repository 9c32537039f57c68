//! Turns levelwise data (all simplices per dimension with face and degeneracy
//! functions) into normal-form storage.

use crate::error::{invalid, Result};
use crate::simplex::Simplex;
use crate::sset::{Builder, SimplicialSet};
use std::collections::HashMap;
use std::hash::Hash;

/// Result of [`from_levels`]: the simplicial set and the normal form of every
/// input element.
pub struct Extracted<T> {
  pub set: SimplicialSet,
  pub normal: Vec<HashMap<T, Simplex>>,
}

impl<T: Eq + Hash> Extracted<T> {
  pub fn get(&self, n: usize, x: &T) -> Option<&Simplex> { self.normal.get(n).and_then(|m| m.get(x)) }
}

/// `levels[n]` lists every `n`-simplex. Faces of level `n` must land in level
/// `n-1`, degeneracies of level `n < top` in level `n+1`. Elements of a level
/// not reached by any degeneracy become non-degenerate cells, in list order.
pub fn from_levels<T: Clone + Eq + Hash>(
  levels: &[Vec<T>],
  face: impl Fn(usize, &T, usize) -> T,
  degen: impl Fn(usize, &T, usize) -> T,
  name: impl Fn(usize, &T) -> String,
  bound: Option<usize>,
) -> Result<Extracted<T>> {
  let mut b = Builder::new();
  let mut normal: Vec<HashMap<T, Simplex>> = Vec::with_capacity(levels.len());
  for (n, level) in levels.iter().enumerate() {
    let mut nf: HashMap<T, Simplex> = HashMap::with_capacity(level.len());
    if n > 0 {
      for (y, ny) in &normal[n - 1] {
        for i in 0..n {
          let x = degen(n - 1, y, i);
          nf.entry(x).or_insert_with(|| ny.degeneracy(i));
        }
      }
      if nf.len() > level.len() {
        return invalid(format!("degeneracies of level {} leave the listed level {n}", n - 1));
      }
    }
    for x in level {
      if nf.contains_key(x) {
        continue;
      }
      let faces = if n == 0 {
        Vec::new()
      } else {
        let mut fs = Vec::with_capacity(n + 1);
        for i in 0..=n {
          let f = face(n, x, i);
          match normal[n - 1].get(&f) {
            Some(s) => fs.push(s.clone()),
            None => return invalid(format!("face d{i} of a level-{n} element is not listed")),
          }
        }
        fs
      };
      let id = b.add_cell(&name(n, x), faces)?;
      nf.insert(x.clone(), Simplex::cell(id));
    }
    if nf.len() != level.len() {
      return invalid(format!("level {n} has duplicate elements or stray degeneracies"));
    }
    normal.push(nf);
  }
  if let Some(d) = bound {
    b.truncate(d);
  }
  Ok(Extracted { set: b.build(), normal })
}

#[cfg(test)]
mod tests {
  use super::*;

  #[test]
  fn nerve_of_two_point_chaotic_category() {
    // simplices of the chaotic category on {0,1}: all sequences
    let top = 3;
    let levels: Vec<Vec<Vec<u8>>> = (0..=top)
      .map(|n| (0..(1u32 << (n + 1))).map(|m| (0..=n).map(|j| ((m >> j) & 1) as u8).collect()).collect())
      .collect();
    let ex = from_levels(
      &levels,
      |_, x, i| { let mut y = x.clone(); y.remove(i); y },
      |_, x, i| { let mut y = x.clone(); y.insert(i, x[i]); y },
      |_, x| x.iter().map(|v| v.to_string()).collect(),
      Some(top),
    )
    .unwrap();
    assert_eq!(ex.set.counts(), vec![2, 2, 2, 2]);
    assert!(ex.set.validate().is_ok());
  }
}
