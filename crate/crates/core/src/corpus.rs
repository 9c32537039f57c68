//! The shipped corpus of named bases and maps, and seeded generators of random
//! spans and presheaves for the randomized suites.

use crate::category::{grothendieck, nerve, CatPresheaf, FiniteCategory, Grothendieck};
use crate::constructions::inclusion;
use crate::error::{invalid, Error, Result};
use crate::json::marked_from_json;
use crate::map::{MarkedMap, MarkedSet, SimplicialMap};
use crate::simplex::{CellId, DegeneracyWord, Simplex};
use crate::standard::{boundary, complex_k, horn, interval_j, simplex};
use crate::sset::SimplicialSet;
use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

const DEFAULT: &str = include_str!("../corpus/default.json");

/// A preorder generated by the listed relations.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PreorderSpec {
  pub objects: Vec<String>,
  #[serde(default)]
  pub relations: Vec<(String, String)>,
}

impl PreorderSpec {
  pub fn category(&self) -> Result<FiniteCategory> {
    let n = self.objects.len();
    let pos = |s: &str| self.objects.iter().position(|o| o == s).ok_or_else(|| Error::Invalid(format!("unknown object {s}")));
    let mut le = vec![vec![false; n]; n];
    for (i, row) in le.iter_mut().enumerate() {
      row[i] = true;
    }
    for (a, b) in &self.relations {
      le[pos(a)?][pos(b)?] = true;
    }
    for k in 0..n {
      for i in 0..n {
        for j in 0..n {
          if le[i][k] && le[k][j] {
            le[i][j] = true;
          }
        }
      }
    }
    let refs: Vec<&str> = self.objects.iter().map(String::as_str).collect();
    FiniteCategory::poset(&refs, |a, b| le[a][b])
  }
}

/// A presheaf of preorders on a preorder: for each non-identity `a<b` of the
/// base, the monotone object map `F(b) → F(a)`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PresheafSpec {
  pub base: PreorderSpec,
  pub values: Vec<PreorderSpec>,
  pub action: BTreeMap<String, Vec<usize>>,
}

impl PresheafSpec {
  pub fn presheaf(&self) -> Result<CatPresheaf> {
    let base = self.base.category()?;
    let values = self.values.iter().map(PreorderSpec::category).collect::<Result<Vec<_>>>()?;
    if values.len() != base.objects.len() {
      return invalid("one value per base object is required");
    }
    let mut maps = Vec::new();
    for (f, m) in base.morphisms.iter().enumerate() {
      let om: Vec<usize> = if base.is_identity(f) {
        (0..values[m.tgt].objects.len()).collect()
      } else {
        self.action.get(&m.name).cloned().ok_or_else(|| Error::Invalid(format!("no action given for {}", m.name)))?
      };
      maps.push(om);
    }
    preorder_presheaf(base, values, maps)
  }
}

/// Builds a presheaf of preorders from object maps, one per base morphism.
pub fn preorder_presheaf(base: FiniteCategory, values: Vec<FiniteCategory>, object_maps: Vec<Vec<usize>>) -> Result<CatPresheaf> {
  let mut action = Vec::new();
  for (f, om) in object_maps.into_iter().enumerate() {
    let m = &base.morphisms[f];
    let (src, tgt) = (&values[m.tgt], &values[m.src]);
    if om.len() != src.objects.len() || om.iter().any(|&x| x >= tgt.objects.len()) {
      return invalid(format!("object map for {} has the wrong shape", m.name));
    }
    let mut mm = Vec::new();
    for g in &src.morphisms {
      match tgt.hom(om[g.src], om[g.tgt]).first() {
        Some(&h) => mm.push(h),
        None => return invalid(format!("object map for {} is not monotone", m.name)),
      }
    }
    action.push((om, mm));
  }
  let p = CatPresheaf { base, values, action };
  p.check()?;
  Ok(p)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Recipe {
  Simplex { n: usize },
  Boundary { n: usize },
  Horn { n: usize, k: usize },
  IntervalJ { bound: usize },
  ComplexK,
  Poset {
    objects: Vec<String>,
    #[serde(default)]
    relations: Vec<(String, String)>,
    bound: usize,
  },
  Grothendieck { presheaf: PresheafSpec, bound: usize },
  Inline { set: Value },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BaseEntry {
  pub name: String,
  pub recipe: Recipe,
  #[serde(default)]
  pub pairs: Vec<(String, String)>,
  #[serde(default)]
  pub marked: Vec<String>,
  pub quasi_category: bool,
  /// vertex bound for necklace enumeration where mapping complexes are infinite
  #[serde(default, skip_serializing_if = "Option::is_none")]
  pub bead_bound: Option<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MapEntry {
  pub name: String,
  pub dom: String,
  pub cod: String,
  pub vertices: BTreeMap<String, String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BaseChangeEntry {
  pub name: String,
  /// `p: X → S`
  pub p: String,
  /// `p': Y → X`, with `Y` marked as in its base entry
  pub p_prime: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CorpusSpec {
  pub bases: Vec<BaseEntry>,
  pub maps: Vec<MapEntry>,
  pub base_changes: Vec<BaseChangeEntry>,
}

/// A built corpus base.
#[derive(Clone, Debug)]
pub struct Base {
  pub name: String,
  pub marked: MarkedSet,
  pub pairs: Vec<(CellId, CellId)>,
  pub quasi_category: bool,
  pub bead_bound: Option<usize>,
  /// the presheaf behind a Grothendieck-construction nerve
  pub presheaf: Option<CatPresheaf>,
}

impl Base {
  pub fn set(&self) -> &Arc<SimplicialSet> { &self.marked.space }
}

#[derive(Clone, Debug)]
pub struct NamedMap {
  pub name: String,
  pub dom: String,
  pub cod: String,
  pub map: SimplicialMap,
}

#[derive(Clone, Debug)]
pub struct Corpus {
  pub bases: Vec<Base>,
  pub maps: Vec<NamedMap>,
  pub base_changes: Vec<BaseChangeEntry>,
}

impl Corpus {
  pub fn default_corpus() -> Result<Self> {
    let spec: CorpusSpec = serde_json::from_str(DEFAULT).map_err(|e| Error::Invalid(format!("bad corpus: {e}")))?;
    Self::build(&spec)
  }

  pub fn from_json(v: &Value) -> Result<Self> {
    let spec: CorpusSpec = serde_json::from_value(v.clone()).map_err(|e| Error::Invalid(format!("bad corpus: {e}")))?;
    Self::build(&spec)
  }

  pub fn build(spec: &CorpusSpec) -> Result<Self> {
    let mut bases: Vec<Base> = Vec::new();
    for e in &spec.bases {
      if bases.iter().any(|b| b.name == e.name) {
        return invalid(format!("duplicate base {}", e.name));
      }
      bases.push(build_base(e)?);
    }
    let mut out = Self { bases, maps: Vec::new(), base_changes: spec.base_changes.clone() };
    for m in &spec.maps {
      let dom = out.base(&m.dom)?.set().clone();
      let cod = out.base(&m.cod)?.set().clone();
      let vertex = |v: CellId| -> Result<CellId> {
        let name = dom.name(v);
        let t = m.vertices.get(name).ok_or_else(|| Error::Invalid(format!("{}: vertex {name} is not assigned", m.name)))?;
        cod.find(t).filter(|c| c.dim == 0).ok_or_else(|| Error::Invalid(format!("{}: {t} is not a vertex of {}", m.name, m.cod)))
      };
      let assignment = dom.cells(0).map(vertex).collect::<Result<Vec<_>>>()?;
      let map = SimplicialMap::from_vertices(dom.clone(), cod.clone(), |v| assignment[v.index], |vs| locate_by_vertices(&cod, vs))
        .map_err(|e| Error::Invalid(format!("{}: {e}", m.name)))?;
      out.maps.push(NamedMap { name: m.name.clone(), dom: m.dom.clone(), cod: m.cod.clone(), map });
    }
    for bc in &out.base_changes {
      let p = out.map(&bc.p)?;
      let q = out.map(&bc.p_prime)?;
      if q.cod != p.dom {
        return invalid(format!("{}: p' does not land in the domain of p", bc.name));
      }
    }
    Ok(out)
  }

  pub fn base(&self, name: &str) -> Result<&Base> {
    self.bases.iter().find(|b| b.name == name).ok_or_else(|| Error::Invalid(format!("no corpus base named {name}")))
  }

  pub fn map(&self, name: &str) -> Result<&NamedMap> {
    self.maps.iter().find(|m| m.name == name).ok_or_else(|| Error::Invalid(format!("no corpus map named {name}")))
  }

  /// The map `p'` of a base-change entry with its domain marking, over `X^♯`.
  pub fn marked_map(&self, name: &str) -> Result<MarkedMap> {
    let m = self.map(name)?;
    let dom = self.base(&m.dom)?.marked.clone();
    MarkedMap::new(dom, MarkedSet::sharp(m.map.cod.clone()), m.map.clone())
  }

  /// Checks every entry: simplicial identities, markings, maps.
  pub fn validate(&self) -> Result<()> {
    for b in &self.bases {
      b.set().validate().map_err(|v| Error::Invalid(format!("{}: {v}", b.name)))?;
      b.marked.validate().map_err(|v| Error::Invalid(format!("{}: {v}", b.name)))?;
    }
    for m in &self.maps {
      m.map.validate().map_err(|v| Error::Invalid(format!("{}: {v}", m.name)))?;
    }
    Ok(())
  }
}

fn build_base(e: &BaseEntry) -> Result<Base> {
  let mut presheaf = None;
  let set: Arc<SimplicialSet> = match &e.recipe {
    Recipe::Simplex { n } => Arc::new(simplex(*n)),
    Recipe::Boundary { n } => Arc::new(boundary(*n)),
    Recipe::Horn { n, k } => Arc::new(horn(*n, *k)?),
    Recipe::IntervalJ { bound } => Arc::new(interval_j(*bound)),
    Recipe::ComplexK => complex_k().0,
    Recipe::Poset { objects, relations, bound } => {
      let spec = PreorderSpec { objects: objects.clone(), relations: relations.clone() };
      nerve(&spec.category()?, *bound).set
    }
    Recipe::Grothendieck { presheaf: spec, bound } => {
      let f = spec.presheaf()?;
      let g = grothendieck(&f)?;
      let set = nerve(&g.total, *bound).set;
      presheaf = Some(f);
      set
    }
    Recipe::Inline { set } => marked_from_json(set)?.space,
  };
  let refs: Vec<&str> = e.marked.iter().map(String::as_str).collect();
  let marked = MarkedSet::with_marked(set.clone(), &refs).map_err(|err| Error::Invalid(format!("{}: {err}", e.name)))?;
  let vertex = |s: &str| set.find(s).filter(|c| c.dim == 0).ok_or_else(|| Error::Invalid(format!("{}: {s} is not a vertex", e.name)));
  let pairs = e.pairs.iter().map(|(a, b)| Ok((vertex(a)?, vertex(b)?))).collect::<Result<Vec<_>>>()?;
  Ok(Base { name: e.name.clone(), marked, pairs, quasi_category: e.quasi_category, bead_bound: e.bead_bound, presheaf })
}

/// The simplex of `x` with the given vertex sequence, when a unique
/// non-degenerate cell carries the reduced sequence.
pub fn locate_by_vertices(x: &SimplicialSet, vs: &[CellId]) -> Option<Simplex> {
  let mut core: Vec<usize> = vs.iter().map(|v| v.index).collect();
  core.dedup();
  let d = core.len() - 1;
  let mut hits = x.cells(d).filter(|&c| x.cell_vertices(c) == core.as_slice());
  let cell = hits.next()?;
  if hits.next().is_some() {
    return None;
  }
  let mut values = Vec::with_capacity(vs.len());
  let mut k = 0;
  for i in 0..vs.len() {
    if i > 0 && vs[i] != vs[i - 1] {
      k += 1;
    }
    values.push(k);
  }
  Some(Simplex { word: DegeneracyWord::from_surjection(&values), cell })
}

/// A span `X₁ ← X₀ → X₂` of marked monomorphisms over a base `S`.
#[derive(Clone, Debug)]
pub struct RandomSpan {
  pub base: String,
  pub f: MarkedMap,
  pub g: MarkedMap,
  pub p1: SimplicialMap,
  pub p2: SimplicialMap,
}

/// Small bases (at most 8 non-degenerate cells) for random spans.
pub fn span_bases() -> Vec<(&'static str, Arc<SimplicialSet>)> {
  let sq = PreorderSpec {
    objects: vec!["a".into(), "b".into(), "c".into()],
    relations: vec![("a".into(), "b".into()), ("a".into(), "c".into())],
  };
  vec![
    ("delta1", Arc::new(simplex(1))),
    ("delta2", Arc::new(simplex(2))),
    ("boundary2", Arc::new(boundary(2))),
    ("horn2-1", Arc::new(horn(2, 1).unwrap())),
    ("span-poset", nerve(&sq.category().unwrap(), 2).set),
  ]
}

fn random_sub(rng: &mut impl Rng, x: &Arc<SimplicialSet>, within: Option<&BTreeSet<String>>) -> Vec<CellId> {
  x.all_cells().filter(|&c| within.is_none_or(|w| w.contains(x.name(c))) && rng.gen_bool(0.5)).collect()
}

/// Sub-complexes carry their cell names, so maps between nested ones are found
/// by name.
fn nested(small: &Arc<SimplicialSet>, big: &Arc<SimplicialSet>) -> SimplicialMap {
  let images = (0..small.levels()).map(|d| small.cells(d).map(|c| Simplex::cell(big.find(small.name(c)).unwrap())).collect()).collect();
  SimplicialMap::from_images(small.clone(), big.clone(), images)
}

fn names(x: &SimplicialSet) -> BTreeSet<String> { x.all_cells().map(|c| x.name(c).to_string()).collect() }

/// A seeded random span of sub-complexes of a small base, with random edge
/// markings compatible with the legs. An empty `X₀` gives a coproduct.
pub fn random_span(rng: &mut impl Rng) -> RandomSpan {
  let bases = span_bases();
  let (name, s) = bases.choose(rng).unwrap().clone();
  let i1 = inclusion(&s, &random_sub(rng, &s, None));
  let i2 = inclusion(&s, &random_sub(rng, &s, None));
  let (x1, x2) = (i1.dom.clone(), i2.dom.clone());
  let common: BTreeSet<String> = names(&x1).intersection(&names(&x2)).cloned().collect();
  let gens0: Vec<CellId> = if rng.gen_bool(0.2) { Vec::new() } else { random_sub(rng, &s, Some(&common)) };
  let x0 = Arc::new(s.subcomplex(&gens0).0);
  let mark = |rng: &mut dyn rand::RngCore, x: &Arc<SimplicialSet>| -> BTreeSet<String> { x.cells(1).filter(|_| rng.gen_bool(0.4)).map(|e| x.name(e).to_string()).collect() };
  let m1 = mark(rng, &x1);
  let m2 = mark(rng, &x2);
  let m0: BTreeSet<String> = x0.cells(1).map(|e| x0.name(e).to_string()).filter(|n| m1.contains(n) && m2.contains(n) && rng.gen_bool(0.7)).collect();
  let marked = |x: &Arc<SimplicialSet>, m: &BTreeSet<String>| {
    let refs: Vec<&str> = m.iter().map(String::as_str).collect();
    MarkedSet::with_marked(x.clone(), &refs).unwrap()
  };
  let (a0, a1, a2) = (marked(&x0, &m0), marked(&x1, &m1), marked(&x2, &m2));
  let f = MarkedMap::new(a0.clone(), a1, nested(&x0, &x1)).unwrap();
  let g = MarkedMap::new(a0, a2, nested(&x0, &x2)).unwrap();
  RandomSpan { base: name.to_string(), f, g, p1: i1, p2: i2 }
}

/// A random preorder on `n` objects named `x0, x1, …`.
fn random_preorder(rng: &mut impl Rng, n: usize) -> FiniteCategory {
  let objects: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
  let relations = (0..n)
    .flat_map(|a| (0..n).map(move |b| (a, b)))
    .filter(|&(a, b)| a != b)
    .collect::<Vec<_>>()
    .into_iter()
    .filter(|_| rng.gen_bool(0.3))
    .map(|(a, b)| (objects[a].clone(), objects[b].clone()))
    .collect();
  PreorderSpec { objects, relations }.category().unwrap()
}

fn is_monotone(src: &FiniteCategory, tgt: &FiniteCategory, om: &[usize]) -> bool { src.morphisms.iter().all(|m| !tgt.hom(om[m.src], om[m.tgt]).is_empty()) }

fn random_monotone(rng: &mut impl Rng, src: &FiniteCategory, tgt: &FiniteCategory) -> Vec<usize> {
  for _ in 0..64 {
    let om: Vec<usize> = (0..src.objects.len()).map(|_| rng.gen_range(0..tgt.objects.len())).collect();
    if is_monotone(src, tgt, &om) {
      return om;
    }
  }
  vec![rng.gen_range(0..tgt.objects.len()); src.objects.len()]
}

/// Bases for random presheaves: `[1]`, `[2]` and the span `b ← a → c`.
pub fn presheaf_bases() -> Vec<FiniteCategory> {
  let v = PreorderSpec { objects: vec!["a".into(), "b".into(), "c".into()], relations: vec![("a".into(), "b".into()), ("a".into(), "c".into())] };
  vec![FiniteCategory::linear(1), FiniteCategory::linear(2), v.category().unwrap()]
}

/// A seeded presheaf of preorders with at most three objects per value.
/// Actions are chosen on the covering relations and composed for the rest.
pub fn random_presheaf(rng: &mut impl Rng) -> CatPresheaf {
  let bases = presheaf_bases();
  let base = bases.choose(rng).unwrap().clone();
  let values: Vec<FiniteCategory> = base.objects.iter().map(|_| {
    let n = rng.gen_range(1..=3);
    random_preorder(rng, n)
  }).collect();
  let m = base.morphisms.len();
  let mut maps: Vec<Option<Vec<usize>>> = vec![None; m];
  // process morphisms by the length of their longest factorization
  let mut order: Vec<usize> = (0..m).collect();
  let length = |f: usize| -> usize {
    let (a, b) = (base.morphisms[f].src, base.morphisms[f].tgt);
    (0..base.objects.len()).filter(|&c| c != a && c != b && !base.hom(a, c).is_empty() && !base.hom(c, b).is_empty()).count()
  };
  order.sort_by_key(|&f| length(f));
  for f in order {
    let mf = &base.morphisms[f];
    let om = if base.is_identity(f) {
      (0..values[mf.tgt].objects.len()).collect()
    } else {
      let mid = (0..base.objects.len()).find(|&c| c != mf.src && c != mf.tgt && !base.hom(mf.src, c).is_empty() && !base.hom(c, mf.tgt).is_empty());
      match mid {
        // F(c<b) then F(a<c)
        Some(c) => {
          let first = maps[base.hom(c, mf.tgt)[0]].clone().unwrap();
          let second = maps[base.hom(mf.src, c)[0]].clone().unwrap();
          first.iter().map(|&x| second[x]).collect()
        }
        None => random_monotone(rng, &values[mf.tgt], &values[mf.src]),
      }
    };
    maps[f] = Some(om);
  }
  preorder_presheaf(base, values, maps.into_iter().map(Option::unwrap).collect()).expect("random presheaf is functorial")
}

/// The Grothendieck construction of a presheaf and its marked projection.
pub fn presheaf_projection(f: &CatPresheaf, d: usize) -> Result<(Grothendieck, MarkedMap)> {
  let g = grothendieck(f)?;
  let p = g.marked_projection(&f.base, d);
  Ok((g, p))
}

#[cfg(test)]
mod tests {
  use super::*;
  use crate::lifting::is_quasi_category;
  use rand::SeedableRng;
  use rand_chacha::ChaCha8Rng;

  #[test]
  fn default_corpus_validates() {
    let c = Corpus::default_corpus().unwrap();
    c.validate().unwrap();
    assert!(c.bases.len() >= 10);
    assert_eq!(c.base("delta3").unwrap().set().counts(), vec![4, 6, 4, 1]);
  }

  #[test]
  fn quasi_category_flags_are_right() {
    let c = Corpus::default_corpus().unwrap();
    for b in &c.bases {
      let d = b.set().bound().unwrap_or(3).min(3);
      assert_eq!(is_quasi_category(b.set(), d).unwrap().holds(), b.quasi_category, "{}", b.name);
    }
  }

  #[test]
  fn random_spans_commute() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..30 {
      let s = random_span(&mut rng);
      assert_eq!(s.f.map.compose(&s.p1), s.g.map.compose(&s.p2));
      assert!(s.f.is_mono() && s.g.is_mono());
      assert!(s.p1.cod.all_cells().count() <= 8);
    }
  }

  #[test]
  fn random_presheaves_are_functors() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..20 {
      let f = random_presheaf(&mut rng);
      f.check().unwrap();
      assert!(f.values.iter().all(|v| v.objects.len() <= 3));
    }
  }

  #[test]
  fn locate_degenerate_simplex() {
    let d2 = simplex(2);
    let s = locate_by_vertices(&d2, &[CellId::new(0, 0), CellId::new(0, 0), CellId::new(0, 2)]).unwrap();
    assert_eq!(d2.name(s.cell), "02");
    assert_eq!(s.word.indices(), &[0]);
  }
}
