//! The comparison map from the Q-realized right mapping space to the necklace
//! mapping complex, checked by homology and components on corpus bases.

use marked_sset::corpus::Corpus;
use marked_sset::error::Result;
use marked_sset::homology::{is_homology_iso, pi0_bijection};
use marked_sset::homspace::comparison_map;

fn main() -> Result<()> {
  let corpus = Corpus::default_corpus()?;
  let d = 3;
  for b in corpus.bases.iter().filter(|b| b.quasi_category) {
    for &(from, to) in &b.pairs {
      let c = comparison_map(b.set(), from, to, d, b.bead_bound)?;
      let r = is_homology_iso(&c.map, d - 1)?;
      let s = b.set();
      println!("{} ({} → {}): homology iso through {}: {}, π0 bijection: {}", b.name, s.name(from), s.name(to), r.range, r.iso, pi0_bijection(&c.map));
    }
  }
  Ok(())
}
