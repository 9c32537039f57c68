//! The acceptance suite: seven property checks at desk scale, each with a time
//! limit. Shared by the `acceptance` test target and `msset corpus-run`.

use crate::anodyne::{check_certificate, corrupted_certificates, k_pushout_certificate, retract_from_deformation, rlp_refute, shipped_certificates, boundary_inclusion, AnodyneClass, DeformationRetractData};
use crate::corpus::{presheaf_projection, random_presheaf, random_span, Corpus};
use crate::error::Result;
use crate::homology::{chain_map, homology, is_homology_iso, normalized_chains, pi0_bijection};
use crate::homotopy::is_equivalence_edge;
use crate::homspace::{comparison_map, q_complex, q_necklace, q_to_delta, QMethod};
use crate::iso::{iso_check, IsoVerdict};
use crate::lifting::{is_marked_cartesian_fibration, is_p_cartesian, is_quasi_category};
use crate::map::{MarkedMap, MarkedSet, SimplicialMap};
use crate::necklace::{cube_oracle, mapping_complex};
use crate::simplex::{CellId, Simplex};
use crate::standard::{boundary, simplex};
use crate::straighten::{base_change_check, edge_extension_check, fibre_check, pushout_preservation_check, straighten_marked, VertexCheck};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::Value;
use std::sync::Arc;
use std::time::Instant;

/// Outcome of one criterion.
#[derive(Clone, Debug, Serialize)]
pub struct CriterionReport {
  pub id: usize,
  pub title: &'static str,
  pub passed: bool,
  pub checks: usize,
  pub failures: Vec<String>,
  pub seconds: f64,
  pub limit_seconds: f64,
}

impl CriterionReport {
  pub fn line(&self) -> String {
    let status = if self.passed { "PASS" } else { "FAIL" };
    let mut s = format!("criterion {}: {status} {} ({} checks, {:.1}s of {:.0}s)", self.id, self.title, self.checks, self.seconds, self.limit_seconds);
    if let Some(f) = self.failures.first() {
      s.push_str(&format!(" first failure: {f}"));
    }
    s
  }
}

/// Counts checks and records failures.
#[derive(Default)]
struct Tally {
  checks: usize,
  failures: Vec<String>,
}

impl Tally {
  fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
    self.checks += 1;
    if !ok {
      self.failures.push(what());
    }
  }

  fn result<T>(&mut self, r: Result<T>, what: &str) -> Option<T> {
    self.checks += 1;
    match r {
      Ok(v) => Some(v),
      Err(e) => {
        self.failures.push(format!("{what}: {e}"));
        None
      }
    }
  }

  fn vertices(&mut self, r: Result<Vec<VertexCheck>>, what: &str) {
    if let Some(vs) = self.result(r, what) {
      for v in vs {
        self.check(v.holds, || format!("{what} at {}: {}", v.vertex, v.detail));
      }
    }
  }
}

pub const TITLES: [&str; 7] = [
  "cube law for mapping complexes",
  "Q^n models agree and are acyclic",
  "comparison maps are homology isomorphisms",
  "straightening preserves pushouts, base change and fibres",
  "fibration predicates match the Grothendieck oracle",
  "anodyne certificates",
  "homology engine",
];

pub const LIMITS: [f64; 7] = [30.0, 60.0, 300.0, 300.0, 300.0, 120.0, 60.0];

/// Runs criterion `id` (1 to 7) with the given seed for its random parts.
pub fn run_criterion(id: usize, seed: u64) -> CriterionReport {
  let start = Instant::now();
  let mut t = Tally::default();
  match id {
    1 => cube_law(&mut t),
    2 => q_sanity(&mut t),
    3 => comparison(&mut t),
    4 => straightening(&mut t, seed),
    5 => fibrations(&mut t, seed),
    6 => certificates(&mut t, seed),
    7 => homology_engine(&mut t),
    _ => t.check(false, || format!("no criterion {id}")),
  }
  let seconds = start.elapsed().as_secs_f64();
  let limit_seconds = LIMITS.get(id - 1).copied().unwrap_or(0.0);
  if seconds > limit_seconds {
    t.failures.push(format!("time limit exceeded: {seconds:.1}s"));
  }
  CriterionReport { id, title: TITLES.get(id - 1).copied().unwrap_or("unknown"), passed: t.failures.is_empty(), checks: t.checks, failures: t.failures, seconds, limit_seconds }
}

pub fn run_all(seed: u64) -> Vec<CriterionReport> { (1..=7).map(|i| run_criterion(i, seed)).collect() }

pub fn summary_json(reports: &[CriterionReport], seed: u64) -> Value {
  serde_json::json!({
    "seed": seed,
    "passed": reports.iter().all(|r| r.passed),
    "criteria": reports,
  })
}

fn corpus(t: &mut Tally) -> Option<Corpus> { t.result(Corpus::default_corpus().and_then(|c| c.validate().map(|_| c)), "corpus") }

fn cube_law(t: &mut Tally) {
  for n in 2..=5 {
    let d = Arc::new(simplex(n));
    let Some(m) = t.result(mapping_complex(&d, CellId::new(0, 0), CellId::new(0, n), 3, None), "mapping complex") else { continue };
    let Some(o) = t.result(cube_oracle(n, 0, n, 3), "cube oracle") else { continue };
    let v = iso_check(&m.set, &o);
    let ok = match &v {
      IsoVerdict::Isomorphic(w) => w.validate().is_ok(),
      IsoVerdict::NotIsomorphic(_) => false,
    };
    t.check(ok, || format!("n = {n}: {v:?}"));
  }
}

fn q_sanity(t: &mut Tally) {
  for n in 0..=4 {
    t.result(q_complex(n, 4, QMethod::Both), &format!("Q^{n} models"));
    let Some(q) = t.result(q_necklace(n, 4), "Q") else { continue };
    if let Some(h) = t.result(homology(q.set(), 3), "homology of Q") {
      t.check(h.is_acyclic(), || format!("Q^{n} has reduced homology {:?}", h.betti()));
    }
    if let Some(r) = t.result(is_homology_iso(&q_to_delta(&q), 3), "q_to_delta") {
      t.check(r.iso, || format!("Q^{n} → Δ^{n} fails at degree {:?}", r.first_failure));
    }
  }
}

fn comparison(t: &mut Tally) {
  let Some(c) = corpus(t) else { return };
  let mut bases = 0;
  for b in c.bases.iter().filter(|b| b.quasi_category) {
    bases += 1;
    for &(from, to) in &b.pairs {
      let what = format!("{} {}→{}", b.name, b.set().name(from), b.set().name(to));
      let Some(cmp) = t.result(comparison_map(b.set(), from, to, 3, b.bead_bound), &what) else { continue };
      if let Some(r) = t.result(is_homology_iso(&cmp.map, 2), &what) {
        t.check(r.iso, || format!("{what}: fails at degree {:?}", r.first_failure));
      }
      t.check(pi0_bijection(&cmp.map), || format!("{what}: not a bijection on components"));
    }
  }
  t.check(bases >= 6, || format!("only {bases} ∞-category bases in the corpus"));
}

fn sharp_over(dom: MarkedSet, p: &SimplicialMap) -> Result<MarkedMap> { MarkedMap::new(dom, MarkedSet::sharp(p.cod.clone()), p.clone()) }

fn straightening(t: &mut Tally, seed: u64) {
  let d = 2;
  let mut rng = ChaCha8Rng::seed_from_u64(seed);
  for k in 0..100 {
    let s = random_span(&mut rng);
    t.vertices(pushout_preservation_check(&s.f, &s.g, &s.p1, &s.p2, d, None), &format!("span {k} over {}", s.base));
  }
  let Some(c) = corpus(t) else { return };
  for bc in &c.base_changes {
    let Ok(p) = c.map(&bc.p) else { continue };
    let Some(pp) = t.result(c.marked_map(&bc.p_prime), &bc.name) else { continue };
    t.vertices(base_change_check(&p.map, &pp, d, None), &bc.name);
  }
  for m in &c.maps {
    let Ok(dom) = c.base(&m.dom) else { continue };
    let Some(pm) = t.result(sharp_over(dom.marked.clone(), &m.map), &m.name) else { continue };
    let Some(st) = t.result(straighten_marked(&pm, d, None), &m.name) else { continue };
    t.vertices(fibre_check(&st.functor, d), &format!("fibres of Un(Str({}))", m.name));
  }
  for b in &c.bases {
    for v in b.set().cells(0) {
      t.vertices(edge_extension_check(b.set(), v, d, b.bead_bound), &format!("edge extension of {} at {}", b.name, b.set().name(v)));
    }
  }
}

fn fibrations(t: &mut Tally, seed: u64) {
  let d = 3;
  let mut rng = ChaCha8Rng::seed_from_u64(seed);
  for k in 0..20 {
    let f = random_presheaf(&mut rng);
    let what = format!("presheaf {k}");
    let Some((g, p)) = t.result(presheaf_projection(&f, d), &what) else { continue };
    let Some(v) = t.result(is_marked_cartesian_fibration(&p, d), &what) else { continue };
    t.check(v.holds(), || format!("{what}: {}", v.to_json()));
    let total = &p.dom.space;
    let chains = crate::category::nerve(&g.total, d);
    for e in total.cells(1) {
      let oracle = g.cartesian[chains.chain(e)[0]];
      if let Some(v) = t.result(is_p_cartesian(&p.map, &Simplex::cell(e), d), &what) {
        t.check(v.holds() == oracle, || format!("{what}: edge {} is {}cartesian in the oracle", total.name(e), if oracle { "" } else { "not " }));
      }
    }
    // each change of marking must be detected
    for e in total.cells(1) {
      let mut q = p.clone();
      if !q.dom.marked.remove(&e.index) {
        q.dom.marked.insert(e.index);
      }
      if let Some(v) = t.result(is_marked_cartesian_fibration(&q, d), &what) {
        t.check(!v.holds(), || format!("{what}: toggling the marking of {} goes unnoticed", total.name(e)));
      }
    }
  }
  // over a point: fibrant iff ∞-category with exactly the equivalences marked
  let Some(c) = corpus(t) else { return };
  let pt = Arc::new(simplex(0));
  for b in &c.bases {
    let x = b.set();
    let to_pt = SimplicialMap::constant(x.clone(), pt.clone(), CellId::new(0, 0));
    let Some(qc) = t.result(is_quasi_category(x, d.min(x.bound().unwrap_or(d))), &b.name) else { continue };
    let equivalences: Option<std::collections::BTreeSet<usize>> = if qc.holds() {
      let mut out = std::collections::BTreeSet::new();
      for e in x.cells(1) {
        match is_equivalence_edge(x, &Simplex::cell(e), d) {
          Ok(true) => {
            out.insert(e.index);
          }
          Ok(false) => {}
          Err(err) => t.check(false, || format!("{}: {err}", b.name)),
        }
      }
      Some(out)
    } else {
      None
    };
    let mut markings = vec![("flat", MarkedSet::flat(x.clone())), ("sharp", MarkedSet::sharp(x.clone())), ("corpus", b.marked.clone())];
    if let Some(eq) = &equivalences {
      markings.push(("equivalences", MarkedSet { space: x.clone(), marked: eq.clone() }));
    }
    for (label, m) in markings {
      let expect = equivalences.as_ref().is_some_and(|eq| *eq == m.marked);
      let p = MarkedMap::unchecked(m, MarkedSet::sharp(pt.clone()), to_pt.clone());
      if let Some(v) = t.result(is_marked_cartesian_fibration(&p, d), &b.name) {
        t.check(v.holds() == expect, || format!("{} with the {label} marking: predicate says {}, expected {expect}", b.name, v.holds()));
      }
    }
  }
}

fn certificates(t: &mut Tally, seed: u64) {
  let d = 4;
  let Some(shipped) = t.result(shipped_certificates(d), "shipped certificates") else { return };
  for (name, c, target) in &shipped {
    let v = check_certificate(c, Some(target));
    t.check(v.valid, || format!("{name}: {}", v.to_json()));
    if let Some(r) = t.result(rlp_refute(target, c.class, d), name) {
      t.check(!r.is_refuted(), || format!("{name} is refuted although certified: {}", r.to_json()));
    }
  }
  for n in 1..=3 {
    let data = DeformationRetractData::final_vertex(n);
    if let Some(c) = t.result(retract_from_deformation(&data), "retract_from_deformation") {
      let v = check_certificate(&c, Some(&data.i));
      t.check(v.valid, || format!("deformation retract onto {{{n}}}: {}", v.to_json()));
    }
  }
  if let Some((c, target)) = t.result(k_pushout_certificate(4), "K pushout") {
    let v = check_certificate(&c, Some(&target));
    t.check(v.valid, || format!("K pushout: {}", v.to_json()));
  }
  if let Some(bad) = t.result(corrupted_certificates(seed), "corrupted certificates") {
    t.check(bad.len() == 10, || format!("{} corrupted certificates", bad.len()));
    for (name, c) in &bad {
      let v = check_certificate(c, None);
      t.check(!v.valid, || format!("corrupted certificate accepted: {name}"));
    }
  }
  if let Some(r) = t.result(rlp_refute(&boundary_inclusion(1), AnodyneClass::Right, d), "rlp_refute") {
    t.check(r.is_refuted(), || format!("∂Δ¹ → Δ¹ not refuted as right anodyne: {}", r.to_json()));
  }
}

fn homology_engine(t: &mut Tally) {
  for n in 1..=4 {
    let Some(h) = t.result(homology(&boundary(n), n), "homology") else { continue };
    let expect: Vec<usize> = (0..=n).map(|k| if n == 1 { if k == 0 { 2 } else { 0 } } else { usize::from(k == 0 || k == n - 1) }).collect();
    let torsion_free = h.degrees.iter().all(|d| d.torsion.is_empty());
    t.check(h.betti() == expect && torsion_free, || format!("∂Δ^{n}: betti {:?}", h.betti()));
  }
  let Some(c) = corpus(t) else { return };
  for b in &c.bases {
    let x = b.set();
    let top = x.bound().unwrap_or_else(|| x.dim()).min(4);
    if let Some(cc) = t.result(normalized_chains(x, top), &b.name) {
      t.check(cc.boundary_squared_zero(), || format!("{}: ∂² ≠ 0", b.name));
    }
  }
  for f in &c.maps {
    for g in c.maps.iter().filter(|g| g.dom == f.cod) {
      let h = f.map.compose(&g.map);
      let top = h.dom.dim().min(3);
      for n in 0..=top {
        let ok = chain_map(&h, n) == chain_map(&g.map, n).mul(&chain_map(&f.map, n));
        t.check(ok, || format!("functoriality fails for {} then {} in degree {n}", f.name, g.name));
      }
    }
  }
}
