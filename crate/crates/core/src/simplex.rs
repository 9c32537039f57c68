//! Eilenberg–Zilber normal forms: a simplex is a degeneracy word applied to a
//! non-degenerate cell.

use serde::{Deserialize, Serialize};
use std::fmt;

/// Identifier of a non-degenerate cell inside one simplicial set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CellId {
  pub dim: usize,
  pub index: usize,
}

impl CellId {
  pub fn new(dim: usize, index: usize) -> Self { Self { dim, index } }
}

/// The word `s_{j_k} ⋯ s_{j_1}` with `j_1 < ⋯ < j_k`.
///
/// Read as a monotone surjection `σ: [p + k] → [p]`, the indices are exactly the
/// positions `i` with `σ(i) = σ(i + 1)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DegeneracyWord(Vec<usize>);

impl DegeneracyWord {
  pub fn identity() -> Self { Self(Vec::new()) }

  /// Builds a word, rejecting lists that are not strictly increasing.
  pub fn new(indices: Vec<usize>) -> Option<Self> {
    if indices.windows(2).all(|w| w[0] < w[1]) { Some(Self(indices)) } else { None }
  }

  pub fn indices(&self) -> &[usize] { &self.0 }
  pub fn len(&self) -> usize { self.0.len() }
  pub fn is_empty(&self) -> bool { self.0.is_empty() }

  /// Whether the word can act on a `p`-simplex: the largest index must be at most
  /// `p + k - 1`.
  pub fn fits(&self, p: usize) -> bool {
    match self.0.last() {
      None => true,
      Some(&j) => j < p + self.0.len(),
    }
  }

  /// Values of the surjection `[p + k] → [p]`.
  pub fn surjection(&self, p: usize) -> Vec<usize> {
    let m = p + self.0.len();
    let mut out = Vec::with_capacity(m + 1);
    let mut seen = 0;
    for j in 0..=m {
      out.push(j - seen);
      if seen < self.0.len() && self.0[seen] == j {
        seen += 1;
      }
    }
    out
  }

  /// Recovers the word from the values of a monotone surjection.
  pub fn from_surjection(values: &[usize]) -> Self {
    Self((0..values.len().saturating_sub(1)).filter(|&i| values[i] == values[i + 1]).collect())
  }
}

impl fmt::Display for DegeneracyWord {
  fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    for j in self.0.iter().rev() {
      write!(f, "s{j}")?;
    }
    Ok(())
  }
}

/// A simplex in normal form: a degeneracy word applied to a non-degenerate cell.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Simplex {
  pub word: DegeneracyWord,
  pub cell: CellId,
}

impl Simplex {
  pub fn cell(cell: CellId) -> Self { Self { word: DegeneracyWord::identity(), cell } }
  pub fn dim(&self) -> usize { self.cell.dim + self.word.len() }
  pub fn is_degenerate(&self) -> bool { !self.word.is_empty() }

  /// Applies a further surjection `τ: [m] → [dim self]` on the right, i.e. returns
  /// `τ^* self`.
  pub fn degenerate_by(&self, tau: &[usize]) -> Self {
    let sigma = self.word.surjection(self.cell.dim);
    let comp: Vec<usize> = tau.iter().map(|&t| sigma[t]).collect();
    Self { word: DegeneracyWord::from_surjection(&comp), cell: self.cell }
  }

  /// `s_i` applied to this simplex.
  pub fn degeneracy(&self, i: usize) -> Self {
    let n = self.dim();
    let tau: Vec<usize> = (0..=n + 1).map(|j| if j <= i { j } else { j - 1 }).collect();
    self.degenerate_by(&tau)
  }

  /// The totally degenerate `n`-simplex on a vertex.
  pub fn constant(vertex: CellId, n: usize) -> Self {
    debug_assert_eq!(vertex.dim, 0);
    Self { word: DegeneracyWord((0..n).collect()), cell: vertex }
  }
}

/// Splits a monotone map `[m] → [p]` into a surjection onto its image and the
/// injective image list.
pub fn epi_mono(values: &[usize]) -> (Vec<usize>, Vec<usize>) {
  let mut image: Vec<usize> = Vec::new();
  let mut epi = Vec::with_capacity(values.len());
  for &v in values {
    if image.last() != Some(&v) {
      image.push(v);
    }
    epi.push(image.len() - 1);
  }
  (epi, image)
}

/// The coface `δ^i: [n-1] → [n]` as a value list.
pub fn coface(n: usize, i: usize) -> Vec<usize> {
  (0..n).map(|j| if j < i { j } else { j + 1 }).collect()
}

/// The codegeneracy `σ^i: [n+1] → [n]` as a value list.
pub fn codegeneracy(n: usize, i: usize) -> Vec<usize> {
  (0..=n + 1).map(|j| if j <= i { j } else { j - 1 }).collect()
}

/// Whether a value list is a weakly increasing map into `[n]`.
pub fn is_monotone_into(values: &[usize], n: usize) -> bool {
  values.windows(2).all(|w| w[0] <= w[1]) && values.iter().all(|&v| v <= n)
}

#[cfg(test)]
mod tests {
  use super::*;

  #[test]
  fn word_surjection_round_trip() {
    let w = DegeneracyWord::new(vec![0, 2]).unwrap();
    let s = w.surjection(1);
    assert_eq!(s, vec![0, 0, 1, 1]);
    assert_eq!(DegeneracyWord::from_surjection(&s), w);
  }

  #[test]
  fn rejects_unsorted_words() {
    assert!(DegeneracyWord::new(vec![2, 1]).is_none());
    assert!(DegeneracyWord::new(vec![1, 1]).is_none());
  }

  #[test]
  fn degeneracy_identities_on_words() {
    // s_i s_j = s_{j+1} s_i for i <= j
    let x = Simplex::cell(CellId::new(2, 0));
    for i in 0..=2 {
      for j in i..=2 {
        let lhs = x.degeneracy(j).degeneracy(i);
        let rhs = x.degeneracy(i).degeneracy(j + 1);
        assert_eq!(lhs, rhs, "i={i} j={j}");
      }
    }
  }

  #[test]
  fn epi_mono_splits() {
    let (e, m) = epi_mono(&[0, 0, 2, 3, 3]);
    assert_eq!(e, vec![0, 0, 1, 2, 2]);
    assert_eq!(m, vec![0, 2, 3]);
  }
}
