//! Straightening a Grothendieck projection recovers its fibres, and
//! unstraightening the result lands back over the base.

use marked_sset::corpus::{presheaf_projection, PreorderSpec, PresheafSpec};
use marked_sset::error::Result;
use marked_sset::straighten::{fibre_check, straighten_marked, unstraighten};
use std::collections::BTreeMap;

fn main() -> Result<()> {
  let d = 3;
  // F(0) = {u < v}, F(1) = {x, y}, F(0 < 1) sends u to x and v to y
  let spec = PresheafSpec {
    base: PreorderSpec { objects: vec!["0".into(), "1".into()], relations: vec![("0".into(), "1".into())] },
    values: vec![
      PreorderSpec { objects: vec!["u".into(), "v".into()], relations: vec![("u".into(), "v".into())] },
      PreorderSpec { objects: vec!["x".into(), "y".into()], relations: vec![] },
    ],
    action: BTreeMap::from([("0<1".to_string(), vec![0, 1])]),
  };
  let (_, p) = presheaf_projection(&spec.presheaf()?, d)?;
  println!("total space: counts {:?}, {} marked edges", p.dom.space.counts(), p.dom.marked.len());
  let st = straighten_marked(&p, d, None)?;
  for v in st.functor.base().cells(0) {
    let x = st.functor.value(v);
    println!("Str⁺(p) at {}: counts {:?}, {} marked edges", st.functor.base().name(v), x.space.counts(), x.marked.len());
  }
  for c in fibre_check(&st.functor, d)? {
    println!("fibre of Un⁺ Str⁺ at {} matches: {} {}", c.vertex, c.holds, c.detail);
  }
  let un = unstraighten(&st.functor, d)?;
  println!("Un⁺ Str⁺(p): counts {:?}", un.set.space.counts());
  Ok(())
}
