//! The homotopy colimit of a span of points is an interval with two arms, read
//! from the same JSON format the command line accepts.

use marked_sset::cli::diagram_from_json;
use marked_sset::error::Result;
use marked_sset::homology::homology;
use marked_sset::homspace::bousfield_kan_hocolim;
use marked_sset::json::set_to_json;
use marked_sset::standard::{boundary, simplex};
use serde_json::json;

fn main() -> Result<()> {
  let pt = set_to_json(&simplex(0));
  let two = set_to_json(&boundary(1));
  // the span pt ← pt → pt and the span pt ← ∂Δ¹ → pt
  let to_pt = |n: usize| json!((0..n).map(|i| (i.to_string(), json!({ "word": [], "cell": "0" }))).collect::<serde_json::Map<_, _>>());
  for (name, middle, n) in [("point", &pt, 1), ("pair of points", &two, 2)] {
    let v = json!({
      "category": { "objects": ["a", "b", "c"], "relations": [["a", "b"], ["a", "c"]] },
      "values": [middle, pt, pt],
      "maps": { "a<b": to_pt(n), "a<c": to_pt(n) },
    });
    let h = bousfield_kan_hocolim(&diagram_from_json(&v)?, 3)?;
    println!("hocolim over a {name}: counts {:?}, betti {:?}, colimit counts {:?}", h.set.counts(), homology(&h.set, 2)?.betti(), h.colimit.counts());
  }
  Ok(())
}
