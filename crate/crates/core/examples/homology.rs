//! Integral homology of spheres and of the Grothendieck total space, and the
//! chain maps induced by a horn inclusion.

use marked_sset::anodyne::horn_inclusion;
use marked_sset::corpus::Corpus;
use marked_sset::error::Result;
use marked_sset::homology::{homology, induced_homology, is_homology_iso};
use marked_sset::standard::boundary;

fn main() -> Result<()> {
  for n in 1..=4 {
    let h = homology(&boundary(n), n)?;
    println!("∂Δ^{n}: betti {:?}", h.betti());
  }
  let corpus = Corpus::default_corpus()?;
  let g = corpus.base("grothendieck")?;
  println!("grothendieck total space: {}", serde_json::to_string(&homology(g.set(), 2)?.degrees).unwrap());
  let f = horn_inclusion(2, 1)?.map;
  for (n, m) in induced_homology(&f, 1).iter().enumerate() {
    println!("C_{n}(Λ²₁) → C_{n}(Δ²):\n{}", m.to_dense_text());
  }
  println!("Λ²₁ → Δ² homology iso through 2: {}", is_homology_iso(&f, 2)?.iso);
  Ok(())
}
