//! Invariants over randomly generated inputs.

use marked_sset::constructions::{product, pushout};
use marked_sset::corpus::{random_presheaf, presheaf_projection};
use marked_sset::homology::{chain_map, euler_characteristic, homology, is_homology_iso, normalized_chains};
use marked_sset::iso::iso_check;
use marked_sset::json::{map_from_json, map_to_json, marked_from_json, marked_to_json, set_from_json, set_to_json};
use marked_sset::lifting::is_marked_cartesian_fibration;
use marked_sset::map::{MarkedSet, SimplicialMap};
use marked_sset::necklace::{is_canonical, mapping_complex, normalize};
use marked_sset::simplex::{CellId, Simplex};
use marked_sset::sset::SimplicialSet;
use marked_sset::standard::simplex;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;

/// The subcomplex of Δ^n generated by the chosen vertex subsets.
fn sub_of_simplex(n: usize, picks: &[u32]) -> (Arc<SimplicialSet>, SimplicialMap) {
  let d = Arc::new(simplex(n));
  let mut gens = Vec::new();
  for &mask in picks {
    let vs: Vec<usize> = (0..=n).filter(|i| mask & (1 << i) != 0).collect();
    if vs.is_empty() {
      continue;
    }
    let name: String = vs.iter().map(|v| v.to_string()).collect();
    gens.push(d.find(&name).unwrap());
  }
  let incl = marked_sset::constructions::inclusion(&d, &gens);
  (incl.dom.clone(), incl)
}

fn sub_strategy() -> impl Strategy<Value = (usize, Vec<u32>)> { (1usize..=4).prop_flat_map(|n| (Just(n), prop::collection::vec(1u32..(1 << (n + 1)), 1..5))) }

proptest! {
  #![proptest_config(ProptestConfig::with_cases(48))]

  #[test]
  fn subcomplexes_validate_and_round_trip((n, picks) in sub_strategy()) {
    let (x, incl) = sub_of_simplex(n, &picks);
    prop_assert!(x.validate().is_ok());
    prop_assert!(incl.validate().is_ok());
    prop_assert!(incl.is_mono());
    let back = set_from_json(&set_to_json(&x)).unwrap();
    prop_assert_eq!(set_to_json(&back), set_to_json(&x));
    let m = map_from_json(&map_to_json(&incl)).unwrap();
    prop_assert_eq!(map_to_json(&m), map_to_json(&incl));
  }

  #[test]
  fn boundary_squares_to_zero_and_euler_matches((n, picks) in sub_strategy()) {
    let (x, _) = sub_of_simplex(n, &picks);
    let cc = normalized_chains(&x, n).unwrap();
    prop_assert!(cc.boundary_squared_zero());
    let h = homology(&x, n).unwrap();
    let from_betti: i64 = h.betti().iter().enumerate().map(|(i, &b)| if i % 2 == 0 { b as i64 } else { -(b as i64) }).sum();
    prop_assert_eq!(euler_characteristic(&x, n), from_betti);
  }

  #[test]
  fn euler_characteristic_is_multiplicative((n, a) in sub_strategy(), (m, b) in sub_strategy()) {
    prop_assume!(n + m <= 5);
    let (x, _) = sub_of_simplex(n, &a);
    let (y, _) = sub_of_simplex(m, &b);
    let p = product(&x, &y);
    prop_assert!(p.set.validate().is_ok());
    prop_assert_eq!(euler_characteristic(&p.set, n + m), euler_characteristic(&x, n) * euler_characteristic(&y, m));
  }

  #[test]
  fn chain_maps_are_functorial((n, picks) in sub_strategy()) {
    let (_, incl) = sub_of_simplex(n, &picks);
    let d = incl.cod.clone();
    let to_pt = SimplicialMap::constant(d.clone(), Arc::new(simplex(0)), CellId::new(0, 0));
    let g = incl.compose(&to_pt);
    for k in 0..=n {
      prop_assert_eq!(chain_map(&g, k), chain_map(&to_pt, k).mul(&chain_map(&incl, k)));
    }
  }

  #[test]
  fn identities_are_homology_isomorphisms((n, picks) in sub_strategy()) {
    let (x, _) = sub_of_simplex(n, &picks);
    prop_assert!(is_homology_iso(&SimplicialMap::identity(x), n).unwrap().iso);
  }

  #[test]
  fn sets_are_isomorphic_to_their_round_trips((n, picks) in sub_strategy()) {
    let (x, _) = sub_of_simplex(n, &picks);
    let y = set_from_json(&set_to_json(&x)).unwrap();
    prop_assert!(iso_check(&x, &y).is_iso());
  }

  /// Collapsing a subcomplex to a point gives a valid pushout square.
  #[test]
  fn pushouts_validate((n, picks) in sub_strategy()) {
    let (_, f) = sub_of_simplex(n, &picks);
    let to_pt = SimplicialMap::constant(f.dom.clone(), Arc::new(simplex(0)), CellId::new(0, 0));
    let p = pushout(&f, &to_pt).unwrap();
    prop_assert!(p.set.validate().is_ok());
    prop_assert!(p.from_x.validate().is_ok() && p.from_y.validate().is_ok());
    prop_assert!(f.compose(&p.from_x) == to_pt.compose(&p.from_y));
    // collapsing a contractible subcomplex does not change homology
    if homology(&f.dom, n).unwrap().is_acyclic() {
      prop_assert!(is_homology_iso(&p.from_x, n).unwrap().iso);
    }
  }

  /// Every vertex of a mapping complex of Δ^n is a canonical necklace, and
  /// normalization fixes it.
  #[test]
  fn necklace_vertices_are_canonical(n in 1usize..=4, i in 0usize..=4, j in 0usize..=4) {
    prop_assume!(i <= j && j <= n);
    let s = Arc::new(simplex(n));
    let m = mapping_complex(&s, CellId::new(0, i), CellId::new(0, j), 2, None).unwrap();
    for d in 0..m.set.levels() {
      for c in m.set.cells(d) {
        let k = m.necklace(&Simplex::cell(c));
        prop_assert!(is_canonical(&k));
        prop_assert_eq!(normalize(&s, &k), k);
      }
    }
  }

  #[test]
  fn marked_sets_round_trip((n, picks) in sub_strategy(), sharp in any::<bool>()) {
    let (x, _) = sub_of_simplex(n, &picks);
    let m = if sharp { MarkedSet::sharp(x) } else { MarkedSet::flat(x) };
    let back = marked_from_json(&marked_to_json(&m)).unwrap();
    prop_assert_eq!(back.marked, m.marked);
  }
}

proptest! {
  #![proptest_config(ProptestConfig::with_cases(8))]

  /// Grothendieck projections of random presheaves are marked cartesian
  /// fibrations at a small bound.
  #[test]
  fn grothendieck_projections_are_cartesian(seed in any::<u64>()) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let f = random_presheaf(&mut rng);
    let (_, p) = presheaf_projection(&f, 2).unwrap();
    prop_assert!(is_marked_cartesian_fibration(&p, 2).unwrap().holds());
  }
}
