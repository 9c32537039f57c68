//! Necklace mapping complexes of a simplex agree with the nerve of the cube
//! of vertex subsets, and truncated J is counted cell by cell.

use marked_sset::error::Result;
use marked_sset::iso::{iso_check, IsoVerdict};
use marked_sset::necklace::{cube_oracle, mapping_complex};
use marked_sset::standard::{interval_j, simplex};
use std::sync::Arc;

fn main() -> Result<()> {
  let d = 3;
  for n in 1..=4 {
    let s = Arc::new(simplex(n));
    let (a, b) = (s.vertex("0").unwrap(), s.vertex(&n.to_string()).unwrap());
    let hom = mapping_complex(&s, a, b, d, None)?;
    let cube = cube_oracle(n, 0, n, d)?;
    let same = matches!(iso_check(&hom.set, &cube), IsoVerdict::Isomorphic(_));
    println!("F(Δ^{n})(0, {n}): counts {:?}, exact {}, matches the cube: {same}", hom.set.counts(), hom.is_exact());
  }
  let j = Arc::new(interval_j(4));
  let hom = mapping_complex(&j, j.vertex("0").unwrap(), j.vertex("1").unwrap(), 2, Some(6))?;
  println!("F(J)(0, 1) with six necklace vertices: counts {:?}, exact {}", hom.set.counts(), hom.is_exact());
  Ok(())
}
