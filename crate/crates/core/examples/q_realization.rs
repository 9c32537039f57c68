//! The two models of Q^n, their acyclicity, and the Q-realization and Sing_Q
//! of a small set.

use marked_sset::error::Result;
use marked_sset::homology::homology;
use marked_sset::homspace::{q_complex, realize_q, sing_q, QMethod};
use marked_sset::iso::{iso_check, IsoVerdict};
use marked_sset::standard::boundary;
use std::sync::Arc;

fn main() -> Result<()> {
  let d = 4;
  for n in 0..=3 {
    let a = q_complex(n, d, QMethod::Necklace)?;
    let b = q_complex(n, d, QMethod::ChainQuotient)?;
    let agree = matches!(iso_check(&a, &b), IsoVerdict::Isomorphic(_));
    let acyclic = homology(&a, d - 1)?.is_acyclic();
    println!("Q^{n}: counts {:?}, models agree: {agree}, acyclic: {acyclic}", a.counts());
  }
  let x = Arc::new(boundary(2));
  let r = realize_q(&x, 3)?;
  println!("|∂Δ²|_Q: counts {:?}, betti {:?}", r.set.counts(), homology(&r.set, 2)?.betti());
  let s = sing_q(&x, 2)?;
  println!("Sing_Q ∂Δ²: counts {:?}, betti {:?}", s.counts(), homology(&s, 1)?.betti());
  Ok(())
}
