//! Fixed-value checks against independently derived answers.

use marked_sset::anodyne::{horn_inclusion, rlp_refute, AnodyneClass};
use marked_sset::constructions::{coproduct, product, quotient, suspension, Side};
use marked_sset::homology::{homology, is_homology_iso, normalized_chains};
use marked_sset::homotopy::{hom_right, is_equivalence_edge};
use marked_sset::homspace::{q_complex, realize_q, sing_q, QMethod};
use marked_sset::iso::{bounded_iso, iso_check};
use marked_sset::lifting::{classify_fibration, is_marked_cartesian_fibration, is_p_cartesian, FibrationKind, LiftOutcome, LiftingProblem, Verdict};
use marked_sset::map::{MarkedMap, MarkedSet, SimplicialMap};
use marked_sset::necklace::{compose, cube_oracle, mapping_complex};
use marked_sset::simplex::{CellId, Simplex};
use marked_sset::standard::{boundary, horn, interval_j, simplex, simplex_map};
use marked_sset::straighten::{cone_base, kan_extend, straighten, SimplicialFunctor};
use marked_sset::sset::SimplicialSet;
use marked_sset::necklace::PathCategory;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;

fn arc(x: SimplicialSet) -> Arc<SimplicialSet> { Arc::new(x) }

fn point() -> Arc<SimplicialSet> { arc(simplex(0)) }

fn iso(x: &Arc<SimplicialSet>, y: &Arc<SimplicialSet>) -> bool { iso_check(x, y).is_iso() }

fn v(x: &SimplicialSet, name: &str) -> CellId { x.vertex(name).unwrap() }

#[test]
fn suspensions() {
  let i1 = {
    let d2 = arc(simplex(2));
    quotient(&d2, &[vec![d2.find("01").unwrap()]]).unwrap().0
  };
  assert!(iso(&suspension(&point(), Side::Right).unwrap().set, &arc(simplex(1))));
  assert!(iso(&suspension(&arc(simplex(1)), Side::Right).unwrap().set, &i1));
  assert!(iso(&suspension(&point(), Side::Symmetric).unwrap().set, &arc(simplex(1))));
}

#[test]
fn right_hom_spaces() {
  let d2 = arc(simplex(2));
  assert!(iso(&hom_right(&d2, v(&d2, "0"), v(&d2, "2"), 3).unwrap(), &point()));
  let (two, _, _) = coproduct(&arc(simplex(1)), &arc(simplex(1)));
  let (a, b) = (CellId::new(0, 0), CellId::new(0, 3));
  assert_eq!(hom_right(&two, a, b, 3).unwrap().total_cells(), 0);
}

#[test]
fn mapping_complexes_match_cubes() {
  for n in 0..=4 {
    let s = arc(simplex(n));
    for i in 0..=n {
      for j in i..=n {
        let m = mapping_complex(&s, CellId::new(0, i), CellId::new(0, j), 3, None).unwrap();
        assert!(iso(&m.set, &cube_oracle(n, i, j, 3).unwrap()), "Δ^{n} ({i}, {j})");
      }
    }
  }
  assert_eq!(cube_oracle(4, 0, 4, 4).unwrap().counts(), vec![8, 19, 18, 6]);
  assert!(iso(&cube_oracle(3, 2, 2, 3).unwrap(), &point()));
}

/// Composition in the path category of Δ³ is union of vertex subsets.
#[test]
fn composition_is_union_of_subsets() {
  let s = arc(simplex(3));
  let paths = PathCategory::new(&s, 3, None).unwrap();
  let mut rng = ChaCha8Rng::seed_from_u64(11);
  let support = |n: &marked_sset::necklace::FlaggedNecklace| -> Vec<usize> {
    let mut vs: Vec<usize> = n.beads.iter().flat_map(|b| s.vertices_of(b)).map(|c| c.index).collect();
    vs.sort();
    vs.dedup();
    vs
  };
  for _ in 0..20 {
    let a = rng.gen_range(0..=3);
    let b = rng.gen_range(a..=3);
    let c = rng.gen_range(b..=3);
    let (x_hom, y_hom) = (paths.hom(CellId::new(0, a), CellId::new(0, b)), paths.hom(CellId::new(0, b), CellId::new(0, c)));
    let target = paths.hom(CellId::new(0, a), CellId::new(0, c));
    let x = Simplex::cell(CellId::new(0, rng.gen_range(0..x_hom.set.num_cells(0))));
    let y = Simplex::cell(CellId::new(0, rng.gen_range(0..y_hom.set.num_cells(0))));
    let z = compose(target, y_hom, &y, x_hom, &x).unwrap();
    let mut union = support(&x_hom.necklace(&x));
    union.extend(support(&y_hom.necklace(&y)));
    union.sort();
    union.dedup();
    assert_eq!(support(&target.necklace(&z)), union);
    let name = format!("{{{}}}", union.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(","));
    assert!(cube_oracle(3, a, c, 3).unwrap().vertex(&name).is_some(), "{name}");
  }
}

#[test]
fn q_and_realization() {
  assert!(iso(&q_complex(0, 4, QMethod::Both).unwrap(), &point()));
  assert!(iso(&q_complex(1, 4, QMethod::Both).unwrap(), &arc(simplex(1))));
  for n in 0..=4 {
    assert!(homology(&q_complex(n, 4, QMethod::Both).unwrap(), 3).unwrap().is_acyclic(), "Q^{n}");
  }
  assert!(iso(&realize_q(&point(), 3).unwrap().set, &point()));
  let r = realize_q(&arc(boundary(1)), 3).unwrap();
  assert_eq!(r.set.counts(), vec![2]);
  for n in 0..=3 {
    assert!(iso(&realize_q(&arc(simplex(n)), 3).unwrap().set, &q_complex(n, 3, QMethod::Necklace).unwrap()));
  }
  assert!(iso(&sing_q(&point(), 3).unwrap(), &point()));
  let j = arc(interval_j(3));
  assert_eq!(sing_q(&j, 2).unwrap().num_cells(0), j.num_cells(0));
}

#[test]
fn chain_ranks() {
  assert_eq!(normalized_chains(&boundary(2), 2).unwrap().ranks[..2], [3, 3]);
  let p = product(&arc(simplex(1)), &arc(simplex(1)));
  let cc = normalized_chains(&p.set, 2).unwrap();
  assert_eq!(cc.ranks, vec![4, 5, 2]);
  assert!(cc.boundary_squared_zero());
  assert_eq!(homology(&boundary(3), 2).unwrap().betti(), vec![1, 0, 1]);
  for n in 0..=4 {
    assert!(homology(&simplex(n), 4).unwrap().is_acyclic());
  }
}

#[test]
fn homology_isomorphisms() {
  let f = horn_inclusion(2, 1).unwrap().map;
  assert!(is_homology_iso(&f, 2).unwrap().iso);
  let g = marked_sset::anodyne::boundary_inclusion(2).map;
  let r = is_homology_iso(&g, 2).unwrap();
  assert!(!r.iso);
  assert_eq!(r.first_failure, Some(1));
  assert!(is_homology_iso(&SimplicialMap::identity(arc(boundary(3))), 3).unwrap().iso);
}

#[test]
fn lifting_examples() {
  let i = horn_inclusion(2, 1).unwrap().map;
  let h = i.dom.clone();
  let pt = point();
  // the tautological square for Λ²₁ → Δ⁰ has no lift
  let p = SimplicialMap::constant(h.clone(), pt.clone(), CellId::new(0, 0));
  let bottom = SimplicialMap::constant(i.cod.clone(), pt.clone(), CellId::new(0, 0));
  let lp = LiftingProblem::new(i.clone(), p.clone(), SimplicialMap::identity(h.clone()), bottom).unwrap();
  assert!(matches!(lp.solve().unwrap(), LiftOutcome::NoLift { .. }));
  match classify_fibration(&p, FibrationKind::Inner, 3).unwrap() {
    Verdict::Fails { .. } => {}
    v => panic!("{v:?}"),
  }
  for n in 0..=3 {
    let q = SimplicialMap::constant(arc(simplex(n)), pt.clone(), CellId::new(0, 0));
    assert!(classify_fibration(&q, FibrationKind::Inner, 4).unwrap().holds());
  }
  let id = SimplicialMap::identity(arc(horn(3, 1).unwrap()));
  for kind in [FibrationKind::Inner, FibrationKind::Left, FibrationKind::Right, FibrationKind::Trivial] {
    assert!(classify_fibration(&id, kind, 3).unwrap().holds());
  }
}

#[test]
fn cartesian_edges_over_a_point() {
  let pt = point();
  let d2 = arc(simplex(2));
  let to_pt = SimplicialMap::constant(d2.clone(), pt.clone(), CellId::new(0, 0));
  let e = Simplex::cell(d2.find("01").unwrap());
  assert!(!is_p_cartesian(&to_pt, &e, 3).unwrap().holds());
  assert!(!is_equivalence_edge(&d2, &e, 3).unwrap());
  let degenerate = Simplex::cell(CellId::new(0, 1)).degeneracy(0);
  assert!(is_p_cartesian(&to_pt, &degenerate, 3).unwrap().holds());
  let j = arc(interval_j(3));
  let jp = SimplicialMap::constant(j.clone(), pt.clone(), CellId::new(0, 0));
  let je = Simplex::cell(j.find("01").unwrap());
  assert!(is_equivalence_edge(&j, &je, 3).unwrap());
  assert!(is_p_cartesian(&jp, &je, 3).unwrap().holds());
}

#[test]
fn natural_markings_over_a_point() {
  let pt = MarkedSet::sharp(point());
  let d2 = arc(simplex(2));
  let natural = MarkedMap::new(MarkedSet::flat(d2.clone()), pt.clone(), SimplicialMap::constant(d2.clone(), pt.space.clone(), CellId::new(0, 0))).unwrap();
  assert!(is_marked_cartesian_fibration(&natural, 3).unwrap().holds());
  let extra = MarkedMap::new(MarkedSet::with_marked(d2.clone(), &["01"]).unwrap(), pt.clone(), natural.map.clone()).unwrap();
  assert!(!is_marked_cartesian_fibration(&extra, 3).unwrap().holds());
}

#[test]
fn refutation_examples() {
  assert!(rlp_refute(&marked_sset::anodyne::boundary_inclusion(1), AnodyneClass::Right, 3).unwrap().is_refuted());
  assert!(!rlp_refute(&horn_inclusion(2, 2).unwrap(), AnodyneClass::Right, 3).unwrap().is_refuted());
  assert!(rlp_refute(&marked_sset::anodyne::marking_inclusion(), AnodyneClass::Cartesian, 3).unwrap().is_refuted());
}

#[test]
fn cones() {
  let d1 = arc(simplex(1));
  let empty = SimplicialMap::from_empty(d1.clone());
  let c = cone_base(&empty).unwrap();
  let (expected, _, _) = coproduct(&d1, &point());
  assert!(iso(&c.set, &expected));
  let c = cone_base(&SimplicialMap::identity(d1.clone())).unwrap();
  assert!(iso(&c.set, &arc(simplex(2))));
}

#[test]
fn straightening_values() {
  let d1 = arc(simplex(1));
  let st = straighten(&SimplicialMap::identity(d1.clone()), 3, None).unwrap();
  assert!(iso(&st.functor.values[0].space, &d1));
  assert!(iso(&st.functor.values[1].space, &point()));
  let pt = straighten(&SimplicialMap::identity(point()), 3, None).unwrap();
  assert!(iso(&pt.functor.values[0].space, &point()));
}

/// Left Kan extension of a representable is the representable at the image.
#[test]
fn kan_extension_of_representable() {
  let d1 = arc(simplex(1));
  let d2 = arc(simplex(2));
  let f = simplex_map(1, &[0, 2], &d1, &d2);
  let src = Arc::new(PathCategory::new(&d1, 3, None).unwrap());
  let dst = Arc::new(PathCategory::new(&d2, 3, None).unwrap());
  let rep = SimplicialFunctor::representable(src, CellId::new(0, 0), false).unwrap();
  let ext = kan_extend(&f, &rep, dst.clone(), 3).unwrap();
  let target = SimplicialFunctor::representable(dst, CellId::new(0, 0), false).unwrap();
  for t in 0..3 {
    assert!(bounded_iso(&ext.functor.values[t].space, &target.values[t].space, 3).is_iso(), "value at {t}");
  }
}
