//! Horn filling, fibration classes and cartesian edges, each reported as a
//! verdict at a dimension bound.

use marked_sset::anodyne::horn_inclusion;
use marked_sset::corpus::Corpus;
use marked_sset::error::Result;
use marked_sset::lifting::{classify_fibration, is_marked_cartesian_fibration, is_p_cartesian, is_quasi_category, FibrationKind, LiftOutcome, LiftingProblem};
use marked_sset::map::SimplicialMap;
use marked_sset::simplex::Simplex;
use marked_sset::standard::{boundary, simplex};
use std::sync::Arc;

fn main() -> Result<()> {
  let d = 3;
  // fill Λ²₁ → Δ² against Δ² → Δ⁰
  let i = horn_inclusion(2, 1)?.map;
  let pt = Arc::new(simplex(0));
  let p = SimplicialMap::constant(i.cod.clone(), pt.clone(), pt.vertex("0").unwrap());
  let bottom = SimplicialMap::constant(i.cod.clone(), pt, p.cod.vertex("0").unwrap());
  let lp = LiftingProblem::new(i.clone(), p, i.clone(), bottom)?;
  match lp.solve()? {
    LiftOutcome::Lift(l) => println!("Λ²₁ fills in Δ²: lift sends 012 to {}", l.cod.simplex_name(&l.image(&Simplex::cell(i.cod.find("012").unwrap())))),
    LiftOutcome::NoLift { nodes } => println!("no lift after {nodes} nodes"),
  }
  println!("∂Δ² is a quasi-category: {}", is_quasi_category(&Arc::new(boundary(2)), d)?.to_json());

  let corpus = Corpus::default_corpus()?;
  let p = corpus.marked_map("grothendieck-delta1")?;
  for kind in [FibrationKind::Inner, FibrationKind::Left, FibrationKind::Right] {
    println!("grothendieck → Δ¹ {kind:?}: {}", classify_fibration(&p.map, kind, d)?.to_json());
  }
  for e in p.dom.space.cells(1) {
    let v = is_p_cartesian(&p.map, &Simplex::cell(e), d)?;
    println!("edge {} p-cartesian: {}, marked: {}", p.dom.space.name(e), v.holds(), p.dom.is_marked(&Simplex::cell(e)));
  }
  println!("marked cartesian fibration: {}", is_marked_cartesian_fibration(&p, d)?.to_json());
  Ok(())
}
