//! Straightening and unstraightening over a base `S`, and the enriched left
//! Kan extension along path-category functors `𝔠(p)`.
//!
//! A functor `G: 𝔠(S)^op → mSet` is stored by its values and a table of the
//! action `F(s,t)_k × G(t)_k → G(s)_k` on jointly non-degenerate pairs, for
//! `k` up to a declared bound.

use crate::constructions::{join, marked_pushout, pushout_mediating, normalize_pair, pullback, pushout, Join};
use crate::error::{invalid, Error, Result};
use crate::iso::{bounded_marked_iso, IsoVerdict};
use crate::json::{marked_to_json, set_to_json};
use crate::levelwise::from_levels;
use crate::lifting::{search_maps, SimplexIndex};
use crate::map::{MarkedMap, MarkedSet, SimplicialMap};
use crate::necklace::{concatenate, default_vertex_bound, induced_map, mapping_complex, FlaggedNecklace, MappingComplex, PathCategory};
use crate::simplex::{coface, codegeneracy, CellId, DegeneracyWord, Simplex};
use crate::sset::{Builder, SimplicialSet};
use serde_json::{json, Value};
use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

fn point() -> Arc<SimplicialSet> {
  let mut b = Builder::new();
  b.add_vertex("*");
  Arc::new(b.build())
}

fn push_necklace(n: &FlaggedNecklace, f: &SimplicialMap) -> FlaggedNecklace {
  FlaggedNecklace { beads: n.beads.iter().map(|b| f.image(b)).collect(), flag: n.flag.clone() }
}

/// The pushout `S_p = S ∪_X (X ⋆ Δ⁰)` with its cone point.
pub struct ConeBase {
  pub base: Arc<SimplicialSet>,
  pub total: Arc<SimplicialSet>,
  pub p: SimplicialMap,
  pub cone: Join,
  pub set: Arc<SimplicialSet>,
  /// `S → S_p`
  pub i: SimplicialMap,
  /// `X ⋆ Δ⁰ → S_p`
  pub q: SimplicialMap,
  pub star: CellId,
}

pub fn cone_base(p: &SimplicialMap) -> Result<ConeBase> {
  let cone = join(&p.dom, &point());
  let po = pushout(&cone.left, p)?;
  let star = po.from_x.image(cone.right.cell_image(CellId::new(0, 0))).cell;
  let cb = ConeBase { base: p.cod.clone(), total: p.dom.clone(), p: p.clone(), cone, set: po.set, i: po.from_y, q: po.from_x, star };
  cb.check()?;
  Ok(cb)
}

impl ConeBase {
  /// Commutativity of the square and joint surjectivity of `i` and `q`.
  pub fn check(&self) -> Result<()> {
    if self.cone.left.compose(&self.q) != self.p.compose(&self.i) {
      return invalid("cone square does not commute");
    }
    let mut hit: BTreeSet<CellId> = BTreeSet::new();
    for m in [&self.i, &self.q] {
      hit.extend(m.images().iter().flatten().map(|s| s.cell));
    }
    if let Some(c) = self.set.all_cells().find(|c| !hit.contains(c)) {
      return invalid(format!("cell {} of S_p is not in the image of the legs", self.set.name(c)));
    }
    Ok(())
  }

  /// The cone point of `X ⋆ Δ⁰` as a simplex of the join.
  fn join_point(&self) -> Simplex { self.cone.right.cell_image(CellId::new(0, 0)).clone() }

  /// The simplex `q(f ⋆ *)` of `S_p` for a simplex `f` of `X`.
  pub fn coned(&self, f: &Simplex) -> Simplex { self.q.image(&self.cone.join_simplices(f, &Simplex::cell(CellId::new(0, 0)))) }

  /// The map `S_p → S'_{p'}` induced by `u: S → S'` and `v: X → X'` with
  /// `p' ∘ v = u ∘ p`.
  pub fn induced(&self, dst: &ConeBase, u: &SimplicialMap, v: &SimplicialMap) -> Result<SimplicialMap> {
    if v.compose(&dst.p) != self.p.compose(u) {
      return invalid("the maps do not commute with the projections");
    }
    let from_base = self.i.preimages();
    let from_cone = self.q.preimages();
    let left = self.cone.left.preimages();
    let right = self.cone.right.preimages();
    let pairs: HashMap<CellId, CellId> = self.cone.pairs.iter().map(|(&(x, _), &c)| (c, x)).collect();
    SimplicialMap::from_fn(self.set.clone(), dst.set.clone(), |c| {
      if let Some(a) = from_base[c.dim][c.index] {
        return dst.i.image(&u.image(&Simplex::cell(a)));
      }
      let j = from_cone[c.dim][c.index].expect("cells of S_p come from one of the legs");
      let y = if let Some(x) = left[j.dim][j.index] {
        dst.cone.left.image(&v.image(&Simplex::cell(x)))
      } else if right[j.dim][j.index].is_some() {
        dst.join_point()
      } else {
        dst.cone.join_simplices(&v.image(&Simplex::cell(pairs[&j])), &Simplex::cell(CellId::new(0, 0)))
      };
      dst.q.image(&y)
    })
  }
}

/// A simplicial functor `𝔠(S)^op → mSet` known through `bound`.
#[derive(Clone, Debug)]
pub struct SimplicialFunctor {
  pub paths: Arc<PathCategory>,
  pub values: Vec<MarkedSet>,
  pub bound: usize,
  action: HashMap<(usize, usize), HashMap<(Simplex, Simplex), Simplex>>,
}

impl SimplicialFunctor {
  /// Tabulates `act(s, t, σ, y) = σ^* y` on jointly non-degenerate pairs.
  pub fn from_action(
    paths: Arc<PathCategory>,
    values: Vec<MarkedSet>,
    bound: usize,
    mut act: impl FnMut(CellId, CellId, &Simplex, &Simplex) -> Result<Simplex>,
  ) -> Result<Self> {
    let objs = paths.objects();
    if values.len() != objs.len() {
      return invalid(format!("{} values for {} objects", values.len(), objs.len()));
    }
    if bound > paths.dim_bound {
      return invalid("functor bound exceeds the bound of the hom complexes");
    }
    let mut action = HashMap::new();
    for &s in &objs {
      for &t in &objs {
        let hom = paths.hom(s, t);
        let mut table = HashMap::new();
        for k in 0..=bound {
          let hs = hom.set.all_simplices(k);
          if hs.is_empty() {
            continue;
          }
          let ys = values[t.index].space.all_simplices(k);
          for sigma in &hs {
            for y in &ys {
              if !normalize_pair(sigma, y).0.is_empty() {
                continue;
              }
              let r = act(s, t, sigma, y)?;
              table.insert((sigma.clone(), y.clone()), r);
            }
          }
        }
        action.insert((s.index, t.index), table);
      }
    }
    Ok(Self { paths, values, bound, action })
  }

  pub fn base(&self) -> &Arc<SimplicialSet> { &self.paths.base }

  pub fn value(&self, s: CellId) -> &MarkedSet { &self.values[s.index] }

  /// `σ^* y` for `σ ∈ F(s,t)_k` and `y ∈ G(t)_k`.
  pub fn act(&self, s: CellId, t: CellId, sigma: &Simplex, y: &Simplex) -> Result<Simplex> {
    if sigma.dim() != y.dim() {
      return invalid("acting simplices have different dimensions");
    }
    if sigma.dim() > self.bound {
      return Err(Error::Inconclusive { reason: "action is only known up to the bound".into(), bound: self.bound });
    }
    let (w, a, b) = normalize_pair(sigma, y);
    let r = self.action[&(s.index, t.index)].get(&(a, b)).ok_or_else(|| Error::Invalid("no action entry for this pair".into()))?;
    Ok(r.degenerate_by(&w.surjection(r.dim())))
  }

  /// The constant functor at `Δ⁰`.
  pub fn terminal(paths: Arc<PathCategory>, bound: usize) -> Result<Self> {
    let pt = point();
    let values = paths.objects().iter().map(|_| MarkedSet::sharp(pt.clone())).collect();
    Self::from_action(paths, values, bound, |_, _, sigma, _| Ok(Simplex::constant(CellId::new(0, 0), sigma.dim())))
  }

  /// `F(−, c)`, flat or fully marked.
  pub fn representable(paths: Arc<PathCategory>, c: CellId, sharp: bool) -> Result<Self> {
    let values = paths
      .objects()
      .iter()
      .map(|&s| {
        let x = paths.hom(s, c).set.clone();
        if sharp { MarkedSet::sharp(x) } else { MarkedSet::flat(x) }
      })
      .collect();
    let bound = paths.dim_bound;
    let p2 = paths.clone();
    Self::from_action(paths, values, bound, move |s, t, sigma, y| p2.compose(s, t, c, y, sigma))
  }

  /// `𝔠(p)^* G` for `p: S' → S`, with `paths` the path category of `S'`.
  pub fn restrict(&self, p: &SimplicialMap, paths: Arc<PathCategory>) -> Result<Self> {
    if p.cod.as_ref() != self.base().as_ref() || p.dom.as_ref() != paths.base.as_ref() {
      return invalid("restriction map does not match the bases");
    }
    let vertex = |s: CellId| p.cell_image(s).cell;
    let values = paths.objects().iter().map(|&s| self.value(vertex(s)).clone()).collect();
    let bound = self.bound.min(paths.dim_bound);
    let p2 = paths.clone();
    let mut memo: HashMap<(usize, usize, Simplex), Simplex> = HashMap::new();
    Self::from_action(paths, values, bound, |s, t, sigma, y| {
      let (ps, pt) = (vertex(s), vertex(t));
      let key = (s.index, t.index, sigma.clone());
      let ps_sigma = match memo.get(&key) {
        Some(x) => x.clone(),
        None => {
          let n = push_necklace(&p2.hom(s, t).necklace(sigma), p);
          let x = self.paths.hom(ps, pt).locate(&n)?;
          memo.insert(key, x.clone());
          x
        }
      };
      self.act(ps, pt, &ps_sigma, y)
    })
  }

  /// Functoriality, simplicial identities and marking preservation of the
  /// tabulated action. Returns the first violation.
  pub fn check(&self) -> Result<()> {
    let objs = self.paths.objects();
    let base = self.base();
    let mut keys: Vec<&(usize, usize)> = self.action.keys().collect();
    keys.sort();
    for &&(si, ti) in &keys {
      let (s, t) = (CellId::new(0, si), CellId::new(0, ti));
      let hom = &self.paths.hom(s, t).set;
      let gt = &self.values[ti];
      let gs = &self.values[si];
      let mut entries: Vec<_> = self.action[&(si, ti)].iter().collect();
      entries.sort();
      for ((sigma, y), r) in entries {
        let k = sigma.dim();
        for i in (0..=k).filter(|_| k > 0) {
          let f = self.act(s, t, &hom.face(sigma, i), &gt.space.face(y, i))?;
          if gs.space.face(r, i) != f {
            return invalid(format!("action {}→{} does not commute with d{i} on ({}, {})", base.name(s), base.name(t), hom.simplex_name(sigma), gt.space.simplex_name(y)));
          }
        }
        if k == 1 && gt.is_marked(y) && !gs.is_marked(r) {
          return invalid(format!("action {}→{} does not preserve the marking of {}", base.name(s), base.name(t), gt.space.simplex_name(y)));
        }
      }
    }
    for &s in &objs {
      let hom = self.paths.hom(s, s);
      for k in 0..=self.bound {
        let id = hom.identity(k)?;
        for y in self.values[s.index].space.all_simplices(k) {
          if self.act(s, s, &id, &y)? != y {
            return invalid(format!("identity of {} acts non-trivially", base.name(s)));
          }
        }
      }
    }
    for &s in &objs {
      for &t in &objs {
        for &u in &objs {
          for k in 0..=self.bound {
            let sig = self.paths.hom(s, t).set.all_simplices(k);
            if sig.is_empty() {
              continue;
            }
            for tau in self.paths.hom(t, u).set.all_simplices(k) {
              let comp: Vec<Simplex> = sig.iter().map(|x| self.paths.compose(s, t, u, &tau, x)).collect::<Result<_>>()?;
              for y in self.values[u.index].space.all_simplices(k) {
                let ty = self.act(t, u, &tau, &y)?;
                for (x, c) in sig.iter().zip(&comp) {
                  if self.act(s, t, x, &ty)? != self.act(s, u, c, &y)? {
                    return invalid(format!("action is not functorial on {}→{}→{}", base.name(s), base.name(t), base.name(u)));
                  }
                }
              }
            }
          }
        }
      }
    }
    Ok(())
  }

  pub fn to_json(&self) -> Value {
    let base = self.base();
    let objs = self.paths.objects();
    let mut homs = serde_json::Map::new();
    let mut values = serde_json::Map::new();
    let mut action = Vec::new();
    for &s in &objs {
      values.insert(base.name(s).to_string(), marked_to_json(&self.values[s.index]));
      for &t in &objs {
        let hom = &self.paths.hom(s, t).set;
        homs.insert(format!("{},{}", base.name(s), base.name(t)), set_to_json(hom));
        let mut entries: Vec<_> = self.action[&(s.index, t.index)].iter().filter(|((sig, y), _)| !sig.is_degenerate() || !y.is_degenerate()).collect();
        entries.sort();
        for ((sig, y), r) in entries {
          action.push(json!([base.name(s), base.name(t), hom.simplex_name(sig), self.values[t.index].space.simplex_name(y), self.values[s.index].space.simplex_name(r)]));
        }
      }
    }
    json!({
      "objects": objs.iter().map(|&s| base.name(s)).collect::<Vec<_>>(),
      "homs": homs,
      "values": values,
      "action": action,
      "bound": self.bound,
    })
  }
}

/// `Str(p)` or `Str⁺(p)` with the data needed to read off necklaces.
pub struct Straightening {
  pub cone: ConeBase,
  /// `F_{𝔠(S_p)}(s, *)` per vertex `s` of `S`
  pub homs: Vec<Arc<MappingComplex>>,
  pub functor: SimplicialFunctor,
}

pub fn straighten(p: &SimplicialMap, d: usize, bead_bound: Option<usize>) -> Result<Straightening> {
  let paths = Arc::new(PathCategory::new(&p.cod, d, bead_bound)?);
  straighten_over(p, paths, d, bead_bound)
}

/// As [`straighten`], reusing an already computed path category of the base.
pub fn straighten_over(p: &SimplicialMap, paths: Arc<PathCategory>, d: usize, bead_bound: Option<usize>) -> Result<Straightening> {
  if paths.base.as_ref() != p.cod.as_ref() {
    return invalid("path category is not over the codomain of p");
  }
  let cone = cone_base(p)?;
  let homs: Vec<Arc<MappingComplex>> =
    p.cod.cells(0).map(|s| mapping_complex(&cone.set, cone.i.cell_image(s).cell, cone.star, d, bead_bound).map(Arc::new)).collect::<Result<_>>()?;
  let values = homs.iter().map(|h| MarkedSet::flat(h.set.clone())).collect();
  let p2 = paths.clone();
  let functor = SimplicialFunctor::from_action(paths, values, d, |s, t, sigma, y| {
    let sn = push_necklace(&p2.hom(s, t).necklace(sigma), &cone.i);
    let n = concatenate(&homs[t.index].necklace(y), &sn)?;
    homs[s.index].locate(&n)
  })?;
  Ok(Straightening { cone, homs, functor })
}

/// `Str⁺(p)` for `p: X → S^♯`.
pub fn straighten_marked(p: &MarkedMap, d: usize, bead_bound: Option<usize>) -> Result<Straightening> {
  let paths = Arc::new(PathCategory::new(&p.map.cod, d, bead_bound)?);
  straighten_marked_over(p, paths, d, bead_bound)
}

pub fn straighten_marked_over(p: &MarkedMap, paths: Arc<PathCategory>, d: usize, bead_bound: Option<usize>) -> Result<Straightening> {
  if p.cod.marked.len() != p.cod.space.num_cells(1) {
    return invalid("the base must be fully marked");
  }
  let mut st = straighten_over(&p.map, paths, d, bead_bound)?;
  if d == 0 {
    return Ok(st);
  }
  let x = &p.dom.space;
  // degenerate edges of X count as marked
  let mut edges: Vec<Simplex> = x.cells(0).map(|v| Simplex::constant(v, 1)).collect();
  edges.extend(p.dom.marked.iter().map(|&e| Simplex::cell(CellId::new(1, e))));
  let objs = st.functor.paths.objects();
  let mut marked: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); objs.len()];
  for f in &edges {
    let px = p.map.cell_image(x.vertices_of(f)[0]).cell;
    let n = FlaggedNecklace { beads: vec![st.cone.coned(f)], flag: vec![0b101, 0b111] };
    let e = st.homs[px.index].locate(&n)?;
    for &s in &objs {
      for sigma in st.functor.paths.hom(s, px).set.all_simplices(1) {
        let r = st.functor.act(s, px, &sigma, &e)?;
        if !r.is_degenerate() {
          marked[s.index].insert(r.cell.index);
        }
      }
    }
  }
  for (v, m) in st.functor.values.iter_mut().zip(marked) {
    v.marked = m;
  }
  Ok(st)
}

/// `Str(g)` for `g: X → X'` over `S`: one map per vertex of `S`.
pub fn straighten_morphism(g: &SimplicialMap, src: &Straightening, dst: &Straightening) -> Result<Vec<SimplicialMap>> {
  let id = SimplicialMap::identity(src.cone.base.clone());
  let phi = src.cone.induced(&dst.cone, &id, g)?;
  src.homs.iter().zip(&dst.homs).map(|(a, b)| induced_map(&phi, a, b)).collect()
}

fn find(uf: &mut [usize], a: usize) -> usize {
  let mut r = a;
  while uf[r] != r {
    r = uf[r];
  }
  let mut a = a;
  while uf[a] != r {
    let next = uf[a];
    uf[a] = r;
    a = next;
  }
  r
}

type Triple = (usize, Simplex, Simplex);

/// One value of a left Kan extension: classes of triples `(c, τ, y)`.
struct Coend {
  rep_of: Vec<HashMap<Triple, Triple>>,
  normal: Vec<HashMap<Triple, Simplex>>,
  cells: Vec<Vec<Triple>>,
}

impl Coend {
  fn class(&self, t: &Triple) -> Simplex {
    let k = t.1.dim();
    self.normal[k][&self.rep_of[k][t]].clone()
  }

  fn representative(&self, x: &Simplex) -> Triple {
    let (c, tau, y) = &self.cells[x.cell.dim][x.cell.index];
    let w = x.word.surjection(x.cell.dim);
    (*c, tau.degenerate_by(&w), y.degenerate_by(&w))
  }
}

/// `𝔠(p)^op_! G` for `p: S → T`.
pub struct KanExtension {
  pub functor: SimplicialFunctor,
  coends: Vec<Coend>,
}

impl KanExtension {
  /// The least triple `(c, τ, y)` of a simplex of the value at `e`.
  pub fn representative(&self, e: CellId, x: &Simplex) -> Triple { self.coends[e.index].representative(x) }
}

/// The value at `e` is the coend `∫^c F_T(e, pc) × G(c)`, computed levelwise
/// as a quotient of the coproduct by union–find; classes are named by their
/// least representative.
pub fn kan_extend(p: &SimplicialMap, g: &SimplicialFunctor, target: Arc<PathCategory>, d: usize) -> Result<KanExtension> {
  if p.dom.as_ref() != g.base().as_ref() || p.cod.as_ref() != target.base.as_ref() {
    return invalid("the map does not match the functor and target bases");
  }
  if d > g.bound || d > target.dim_bound {
    return invalid("bound exceeds the known part of the functor or the target homs");
  }
  let src = g.paths.objects();
  let pv = |c: CellId| p.cell_image(c).cell;
  let mut ind: HashMap<(usize, usize), SimplicialMap> = HashMap::new();
  for &c in &src {
    for &c2 in &src {
      ind.insert((c.index, c2.index), induced_map(p, g.paths.hom(c, c2), target.hom(pv(c), pv(c2)))?);
    }
  }
  let mut coends = Vec::new();
  let mut values = Vec::new();
  for e in target.objects() {
    let mut rep_of: Vec<HashMap<Triple, Triple>> = Vec::new();
    let mut levels: Vec<Vec<Triple>> = Vec::new();
    for k in 0..=d {
      let mut elems: Vec<Triple> = Vec::new();
      for &c in &src {
        let ys = g.value(c).space.all_simplices(k);
        for tau in target.hom(e, pv(c)).set.all_simplices(k) {
          for y in &ys {
            elems.push((c.index, tau.clone(), y.clone()));
          }
        }
      }
      let pos: HashMap<Triple, usize> = elems.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
      let mut uf: Vec<usize> = (0..elems.len()).collect();
      for &c in &src {
        for &c2 in &src {
          let taus = target.hom(e, pv(c)).set.all_simplices(k);
          if taus.is_empty() {
            continue;
          }
          let ys = g.value(c2).space.all_simplices(k);
          for sigma in g.paths.hom(c, c2).set.all_simplices(k) {
            let psig = ind[&(c.index, c2.index)].image(&sigma);
            for y in &ys {
              let a = g.act(c, c2, &sigma, y)?;
              for tau in &taus {
                let l = pos[&(c.index, tau.clone(), a.clone())];
                let comp = target.compose(e, pv(c), pv(c2), &psig, tau)?;
                let r = pos[&(c2.index, comp, y.clone())];
                let (x, z) = (find(&mut uf, l), find(&mut uf, r));
                if x != z {
                  uf[x.max(z)] = x.min(z);
                }
              }
            }
          }
        }
      }
      let key = |t: &Triple| (t.0, target.hom(e, pv(CellId::new(0, t.0))).set.simplex_name(&t.1), g.values[t.0].space.simplex_name(&t.2));
      let keys: Vec<_> = elems.iter().map(key).collect();
      let mut best: HashMap<usize, usize> = HashMap::new();
      for i in 0..elems.len() {
        let r = find(&mut uf, i);
        let b = best.entry(r).or_insert(i);
        if keys[i] < keys[*b] {
          *b = i;
        }
      }
      let mut reps: Vec<usize> = best.values().copied().collect();
      reps.sort_by(|&a, &b| keys[a].cmp(&keys[b]));
      let mut m = HashMap::with_capacity(elems.len());
      for i in 0..elems.len() {
        let r = find(&mut uf, i);
        m.insert(elems[i].clone(), elems[best[&r]].clone());
      }
      rep_of.push(m);
      levels.push(reps.into_iter().map(|i| elems[i].clone()).collect());
    }
    let ex = from_levels(
      &levels,
      |n, t, i| {
        let c = CellId::new(0, t.0);
        let tf = target.hom(e, pv(c)).set.face(&t.1, i);
        let yf = g.value(c).space.face(&t.2, i);
        rep_of[n - 1][&(t.0, tf, yf)].clone()
      },
      |n, t, i| rep_of[n + 1][&(t.0, t.1.degeneracy(i), t.2.degeneracy(i))].clone(),
      |_, t| {
        let c = CellId::new(0, t.0);
        format!("{};{}", target.hom(e, pv(c)).set.simplex_name(&t.1), g.value(c).space.simplex_name(&t.2))
      },
      Some(d),
    )?;
    let set = Arc::new(ex.set);
    let mut cells: Vec<Vec<Triple>> = vec![Vec::new(); set.levels()];
    for (k, m) in ex.normal.iter().enumerate().take(set.levels()) {
      let mut found: Vec<(usize, Triple)> = m.iter().filter(|(_, s)| !s.is_degenerate()).map(|(t, s)| (s.cell.index, t.clone())).collect();
      found.sort_by_key(|(i, _)| *i);
      cells[k] = found.into_iter().map(|(_, t)| t).collect();
    }
    let mut marked = BTreeSet::new();
    if d >= 1 {
      for (t, r) in &rep_of[1] {
        if g.value(CellId::new(0, t.0)).is_marked(&t.2) {
          let s = &ex.normal[1][r];
          if !s.is_degenerate() {
            marked.insert(s.cell.index);
          }
        }
      }
    }
    values.push(MarkedSet { space: set, marked });
    coends.push(Coend { rep_of, normal: ex.normal, cells });
  }
  let t2 = target.clone();
  let functor = SimplicialFunctor::from_action(target, values, d, |e2, e, tau2, x| {
    let (c, tau, y) = coends[e.index].representative(x);
    let comp = t2.compose(e2, e, pv(CellId::new(0, c)), &tau, tau2)?;
    Ok(coends[e2.index].class(&(c, comp, y)))
  })?;
  Ok(KanExtension { functor, coends })
}

/// Per-vertex outcome of an exact comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexCheck {
  pub vertex: String,
  pub holds: bool,
  pub detail: String,
}

fn bijective_marked(f: &SimplicialMap, src: &MarkedSet, dst: &MarkedSet, d: usize) -> std::result::Result<(), String> {
  f.validate().map_err(|v| v.to_string())?;
  let mut seen = BTreeSet::new();
  for c in f.dom.all_cells().filter(|c| c.dim <= d) {
    let y = f.cell_image(c);
    if y.is_degenerate() || !seen.insert(y.cell) {
      return Err(format!("not injective at {}", f.dom.name(c)));
    }
  }
  if let Some(c) = f.cod.all_cells().find(|c| c.dim <= d && !seen.contains(c)) {
    return Err(format!("{} is not hit", f.cod.name(c)));
  }
  if d >= 1 {
    for e in f.dom.cells(1) {
      if src.marked.contains(&e.index) != dst.is_marked(f.cell_image(e)) {
        return Err(format!("marking differs at {}", f.dom.name(e)));
      }
    }
  }
  Ok(())
}

/// Checks `Str⁺(p ∘ p') ≅ 𝔠(p)^op_! Str⁺(p')` through the canonical comparison
/// map `[c, τ, y] ↦ φ(y) ∘ τ`, which must be bijective on cells through `d` and
/// preserve and reflect markings.
pub fn base_change_check(p: &SimplicialMap, p_prime: &MarkedMap, d: usize, bead_bound: Option<usize>) -> Result<Vec<VertexCheck>> {
  let x_sharp = MarkedSet::sharp(p.dom.clone());
  let s_sharp = MarkedSet::sharp(p.cod.clone());
  let inner_map = MarkedMap::new(p_prime.dom.clone(), x_sharp, p_prime.map.clone())?;
  let outer_map = MarkedMap::new(p_prime.dom.clone(), s_sharp, p_prime.map.compose(p))?;
  let inner = straighten_marked(&inner_map, d, bead_bound)?;
  let outer = straighten_marked(&outer_map, d, bead_bound)?;
  let ext = kan_extend(p, &inner.functor, outer.functor.paths.clone(), d)?;
  let id_y = SimplicialMap::identity(p_prime.dom.space.clone());
  let phi = inner.cone.induced(&outer.cone, p, &id_y)?;
  let paths = &outer.functor.paths;
  let mut out = Vec::new();
  for e in paths.objects() {
    let src = ext.functor.value(e);
    let dst = outer.functor.value(e);
    let f = SimplicialMap::from_fn(src.space.clone(), dst.space.clone(), |c| {
      let (ci, tau, y) = ext.representative(e, &Simplex::cell(c));
      let pc = p.cell_image(CellId::new(0, ci)).cell;
      let yn = push_necklace(&inner.homs[ci].necklace(&y), &phi);
      let tn = push_necklace(&paths.hom(e, pc).necklace(&tau), &outer.cone.i);
      concatenate(&yn, &tn).and_then(|n| outer.homs[e.index].locate(&n)).unwrap_or_else(|_| Simplex::constant(CellId::new(0, 0), c.dim))
    });
    let (holds, detail) = match f {
      Err(err) => (false, err.to_string()),
      Ok(f) => match bijective_marked(&f, src, dst, d) {
        Ok(()) => (true, "isomorphism".into()),
        Err(m) => (false, m),
      },
    };
    out.push(VertexCheck { vertex: p.cod.name(e).to_string(), holds, detail });
  }
  Ok(out)
}

/// The map `F_{𝔠(S)}(t, s) → F_{𝔠(S ∪_{Δ⁰} Δ¹)}(t, 1)` given by composing with
/// the new edge, for every vertex `t`; each must be an isomorphism.
pub fn edge_extension_check(s: &Arc<SimplicialSet>, v: CellId, d: usize, bead_bound: Option<usize>) -> Result<Vec<VertexCheck>> {
  let pt = point();
  let inc = SimplicialMap::constant(pt, s.clone(), v);
  let cb = cone_base(&inc)?;
  let edge = cb.coned(&Simplex::cell(CellId::new(0, 0)));
  // every necklace into the new vertex ends with the new edge, one vertex more
  let vb = bead_bound.unwrap_or_else(|| default_vertex_bound(s, d));
  let mut out = Vec::new();
  for t in s.cells(0) {
    let src = mapping_complex(s, t, v, d, Some(vb))?;
    let dst = mapping_complex(&cb.set, cb.i.cell_image(t).cell, cb.star, d, Some(vb + 1))?;
    let f = SimplicialMap::from_fn(src.set.clone(), dst.set.clone(), |c| {
      let k = c.dim;
      let sn = push_necklace(&src.necklace(&Simplex::cell(c)), &cb.i);
      let en = FlaggedNecklace { beads: vec![edge.clone()], flag: vec![0b11; k + 1] };
      concatenate(&en, &sn).and_then(|n| dst.locate(&n)).unwrap_or_else(|_| Simplex::constant(CellId::new(0, 0), k))
    });
    let (holds, detail) = match f {
      Err(err) => (false, err.to_string()),
      Ok(f) => match bijective_marked(&f, &MarkedSet::flat(src.set.clone()), &MarkedSet::flat(dst.set.clone()), d) {
        Ok(()) if src.is_exact() == dst.is_exact() => (true, "isomorphism".into()),
        Ok(()) => (false, "only one side is exact".into()),
        Err(m) => (false, m),
      },
    };
    out.push(VertexCheck { vertex: s.name(t).to_string(), holds, detail });
  }
  Ok(out)
}

/// The canonical map `P → S` out of a pushout of `X₁ ← X₀ → X₂` over `S`.
/// For a span `X₁ ←f X₀ →g X₂` of marked sets over `S` (via `p1`, `p2`),
/// compares `Str⁺` of the pushout with the objectwise pushout of the `Str⁺`
/// values, as bounded marked isomorphisms at `d`.
pub fn pushout_preservation_check(f: &MarkedMap, g: &MarkedMap, p1: &SimplicialMap, p2: &SimplicialMap, d: usize, bead_bound: Option<usize>) -> Result<Vec<VertexCheck>> {
  let s = p1.cod.clone();
  let sharp = MarkedSet::sharp(s.clone());
  let paths = Arc::new(PathCategory::new(&s, d, bead_bound)?);
  let p0 = f.map.compose(p1);
  if p0 != g.map.compose(p2) {
    return invalid("the span does not commute over the base");
  }
  let (pm, fx, fy) = marked_pushout(f, g)?;
  let pp = pushout_mediating(&pm.space, &fx.map, &fy.map, p1, p2)?;
  let lift = |dom: &MarkedSet, m: &SimplicialMap| MarkedMap::new(dom.clone(), sharp.clone(), m.clone());
  let st0 = straighten_marked_over(&lift(&f.dom, &p0)?, paths.clone(), d, bead_bound)?;
  let st1 = straighten_marked_over(&lift(&f.cod, p1)?, paths.clone(), d, bead_bound)?;
  let st2 = straighten_marked_over(&lift(&g.cod, p2)?, paths.clone(), d, bead_bound)?;
  let stp = straighten_marked_over(&lift(&pm, &pp)?, paths.clone(), d, bead_bound)?;
  let m1 = straighten_morphism(&f.map, &st0, &st1)?;
  let m2 = straighten_morphism(&g.map, &st0, &st2)?;
  let mut out = Vec::new();
  for v in s.cells(0) {
    let a = MarkedMap::unchecked(st0.functor.value(v).clone(), st1.functor.value(v).clone(), m1[v.index].clone());
    let b = MarkedMap::unchecked(st0.functor.value(v).clone(), st2.functor.value(v).clone(), m2[v.index].clone());
    let (q, _, _) = marked_pushout(&a, &b)?;
    let verdict = bounded_marked_iso(&q, stp.functor.value(v), d);
    let detail = match &verdict {
      IsoVerdict::Isomorphic(_) => "isomorphism".to_string(),
      IsoVerdict::NotIsomorphic(m) => m.clone(),
    };
    out.push(VertexCheck { vertex: s.name(v).to_string(), holds: verdict.is_iso(), detail });
  }
  Ok(out)
}

/// The nerve of the poset of subsets of `[lo, hi]` containing both ends,
/// with subsets as bitmasks over absolute positions.
struct CubeNerve {
  set: Arc<SimplicialSet>,
  index: HashMap<Vec<u64>, CellId>,
  chains: Vec<Vec<Vec<u64>>>,
}

fn subset_name(m: u64) -> String { (0..64).filter(|b| m >> b & 1 == 1).map(|b| b.to_string()).collect::<Vec<_>>().join("") }

fn cube_nerve(lo: usize, hi: usize) -> CubeNerve {
  let inner: Vec<usize> = (lo + 1..hi).collect();
  let ends = (1u64 << lo) | (1u64 << hi);
  let mut elems: Vec<u64> = (0..1u64 << inner.len()).map(|m| inner.iter().enumerate().filter(|(k, _)| m >> k & 1 == 1).fold(ends, |a, (_, &b)| a | 1 << b)).collect();
  elems.sort_by_key(|&e| (e.count_ones(), e));
  let mut chains: Vec<Vec<Vec<u64>>> = vec![elems.iter().map(|&e| vec![e]).collect()];
  loop {
    let next: Vec<Vec<u64>> = chains
      .last()
      .unwrap()
      .iter()
      .flat_map(|c| {
        let last = *c.last().unwrap();
        elems.iter().filter(move |&&e| e != last && e & last == last).map(move |&e| {
          let mut d = c.clone();
          d.push(e);
          d
        })
      })
      .collect();
    if next.is_empty() {
      break;
    }
    chains.push(next);
  }
  let mut b = Builder::new();
  let mut index = HashMap::new();
  for level in &chains {
    for c in level {
      let faces = if c.len() == 1 {
        Vec::new()
      } else {
        (0..c.len())
          .map(|t| {
            let mut f = c.clone();
            f.remove(t);
            Simplex::cell(index[&f])
          })
          .collect()
      };
      let name = c.iter().map(|&m| subset_name(m)).collect::<Vec<_>>().join("<");
      index.insert(c.clone(), b.add_cell(&name, faces).unwrap());
    }
  }
  CubeNerve { set: Arc::new(b.build()), index, chains }
}

impl CubeNerve {
  /// The simplex of a weakly increasing chain.
  fn simplex(&self, chain: &[u64]) -> Simplex {
    let mut core = chain.to_vec();
    core.dedup();
    let mut values = Vec::with_capacity(chain.len());
    let mut k = 0;
    for i in 0..chain.len() {
      if i > 0 && chain[i] != chain[i - 1] {
        k += 1;
      }
      values.push(k);
    }
    Simplex { word: DegeneracyWord::from_surjection(&values), cell: self.index[&core] }
  }
}

fn range_mask(a: usize, b: usize) -> u64 { ((1u64 << (b + 1)) - 1) & !((1u64 << a) - 1) }

/// Images of the non-degenerate cells of each `N(P_{i,n+1})`, `i ∈ [n]`.
type Alpha = Vec<Vec<Vec<Simplex>>>;

fn alpha_image(alpha: &[Vec<Simplex>], x: &Simplex) -> Simplex { alpha[x.cell.dim][x.cell.index].degenerate_by(&x.word.surjection(x.cell.dim)) }

/// `Un⁺(G)` with its projection to the base.
pub struct Unstraightening {
  pub set: MarkedSet,
  pub projection: SimplicialMap,
}

struct UnContext<'a> {
  g: &'a SimplicialFunctor,
  cubes: HashMap<(usize, usize), CubeNerve>,
  indexes: Vec<SimplexIndex>,
}

impl UnContext<'_> {
  fn cube(&self, lo: usize, hi: usize) -> &CubeNerve { &self.cubes[&(lo, hi)] }

  /// Natural transformations `Str(id_{Δ^n}) ⇒ 𝔠(x)^* G`, found by fixing the
  /// values forced by naturality and searching the rest, from `i = n` down.
  fn alphas(&self, x: &Simplex, n: usize) -> Result<Vec<Alpha>> {
    let s = self.g.base();
    let verts = s.vertices_of(x);
    let mut memo: HashMap<(usize, usize, Vec<u64>), Simplex> = HashMap::new();
    let mut out = Vec::new();
    let mut partial: Vec<Vec<Vec<Simplex>>> = vec![Vec::new(); n + 1];
    self.extend(x, n, n as isize, &verts, &mut memo, &mut partial, &mut out)?;
    Ok(out)
  }

  #[allow(clippy::too_many_arguments)]
  fn extend(
    &self,
    x: &Simplex,
    n: usize,
    i: isize,
    verts: &[CellId],
    memo: &mut HashMap<(usize, usize, Vec<u64>), Simplex>,
    partial: &mut Vec<Vec<Vec<Simplex>>>,
    out: &mut Vec<Alpha>,
  ) -> Result<()> {
    if i < 0 {
      out.push(partial.clone());
      return Ok(());
    }
    let i = i as usize;
    let s = self.g.base();
    let cube = self.cube(i, n + 1);
    let mut fixed: Vec<Vec<Option<Simplex>>> = (0..cube.set.levels()).map(|k| vec![None; cube.set.num_cells(k)]).collect();
    for (k, level) in cube.chains.iter().enumerate() {
      for (idx, chain) in level.iter().enumerate() {
        let rest = chain[0] & !(1u64 << i);
        let j = rest.trailing_zeros() as usize;
        if j > n {
          continue;
        }
        let lower: Vec<u64> = chain.iter().map(|&a| (a & range_mask(i, j)) >> i).collect();
        let key = (i, j, lower.clone());
        let sigma = match memo.get(&key) {
          Some(v) => v.clone(),
          None => {
            let bead = s.apply(&(i..=j).collect::<Vec<_>>(), x);
            let v = self.g.paths.hom(verts[i], verts[j]).locate(&FlaggedNecklace { beads: vec![bead], flag: lower })?;
            memo.insert(key, v.clone());
            v
          }
        };
        let upper: Vec<u64> = chain.iter().map(|&a| a & range_mask(j, n + 1)).collect();
        let a = alpha_image(&partial[j], &self.cube(j, n + 1).simplex(&upper));
        fixed[k][idx] = Some(self.g.act(verts[i], verts[j], &sigma, &a)?);
      }
    }
    let target = &self.g.value(verts[i]).space;
    let mut found: Vec<Vec<Vec<Simplex>>> = Vec::new();
    search_maps(&cube.set, target, &self.indexes[verts[i].index], fixed, &|_, _| true, &mut |m| {
      found.push(m.images().to_vec());
      true
    })?;
    for a in found {
      partial[i] = a;
      self.extend(x, n, i as isize - 1, verts, memo, partial, out)?;
    }
    Ok(())
  }

  /// `θ^*` on a pair `(x, α)` for monotone `θ: [m] → [n]`.
  fn transport(&self, x: &Simplex, alpha: &Alpha, n: usize, theta: &[usize]) -> (Simplex, Alpha) {
    let m = theta.len() - 1;
    let star = |a: u64| -> u64 {
      (0..=m + 1).filter(|b| a >> b & 1 == 1).fold(0u64, |acc, b| acc | 1 << if b == m + 1 { n + 1 } else { theta[b] })
    };
    let y = self.g.base().apply(theta, x);
    let beta = (0..=m)
      .map(|i| {
        let cube = self.cube(i, m + 1);
        let dst = self.cube(theta[i], n + 1);
        cube
          .chains
          .iter()
          .map(|level| level.iter().map(|c| alpha_image(&alpha[theta[i]], &dst.simplex(&c.iter().map(|&a| star(a)).collect::<Vec<_>>()))).collect())
          .collect()
      })
      .collect();
    (y, beta)
  }
}

/// `Un⁺(G)` through dimension `d`: an `n`-simplex over `x: Δ^n → S` is a
/// natural transformation `Str(id_{Δ^n}) ⇒ 𝔠(x)^* G`. An edge is marked when
/// its transformation sends the distinguished edge of `Str⁺(id_{Δ¹})(0)` to a
/// marked edge.
pub fn unstraighten(g: &SimplicialFunctor, d: usize) -> Result<Unstraightening> {
  if d > g.bound {
    return Err(Error::Inconclusive { reason: "the functor is only known through a lower bound".into(), bound: g.bound });
  }
  let s = g.base().clone();
  let mut cubes = HashMap::new();
  for hi in 1..=d + 1 {
    for lo in 0..hi {
      cubes.insert((lo, hi), cube_nerve(lo, hi));
    }
  }
  let indexes = g.values.iter().map(|v| SimplexIndex::new(&v.space, d)).collect();
  let ctx = UnContext { g, cubes, indexes };
  let mut levels: Vec<Vec<(Simplex, Alpha)>> = Vec::new();
  for n in 0..=d {
    let mut level = Vec::new();
    for x in s.all_simplices(n) {
      for a in ctx.alphas(&x, n)? {
        level.push((x.clone(), a));
      }
    }
    levels.push(level);
  }
  let ex = from_levels(
    &levels,
    |n, (x, a), k| ctx.transport(x, a, n, &coface(n, k)),
    |n, (x, a), k| ctx.transport(x, a, n, &codegeneracy(n, k)),
    |n, (x, a)| {
      let parts: Vec<String> = (0..=n)
        .map(|i| {
          let top = n - i;
          let v = &g.value(s.vertices_of(x)[i]).space;
          a[i].get(top).map(|l| l.iter().map(|y| v.simplex_name(y)).collect::<Vec<_>>().join(",")).unwrap_or_default()
        })
        .collect();
      format!("{}:{}", s.simplex_name(x), parts.join("|"))
    },
    Some(d),
  )?;
  let set = Arc::new(ex.set);
  let mut proj: Vec<Vec<Simplex>> = (0..set.levels()).map(|k| vec![Simplex::constant(CellId::new(0, 0), k); set.num_cells(k)]).collect();
  let mut marked = BTreeSet::new();
  let dist = if d >= 1 { Some(ctx.cube(0, 2).simplex(&[0b101, 0b111])) } else { None };
  for (k, m) in ex.normal.iter().enumerate().take(set.levels()) {
    for ((x, a), c) in m {
      if c.is_degenerate() {
        continue;
      }
      proj[k][c.cell.index] = x.clone();
      if let (1, Some(e)) = (k, &dist) {
        let v0 = s.vertices_of(x)[0];
        if g.value(v0).is_marked(&alpha_image(&a[0], e)) {
          marked.insert(c.cell.index);
        }
      }
    }
  }
  let projection = SimplicialMap::from_images(set.clone(), s, proj);
  Ok(Unstraightening { set: MarkedSet { space: set, marked }, projection })
}

/// The fibre of `Un⁺(G)` over each vertex `s` against `Un⁺(G(s))` over a
/// point, as bounded marked isomorphisms.
pub fn fibre_check(g: &SimplicialFunctor, d: usize) -> Result<Vec<VertexCheck>> {
  let un = unstraighten(g, d)?;
  let pt = point();
  let pt_paths = Arc::new(PathCategory::new(&pt, g.bound, None)?);
  let s = g.base();
  let mut out = Vec::new();
  for v in s.cells(0) {
    let inc = SimplicialMap::constant(pt.clone(), s.clone(), v);
    let gs = g.restrict(&inc, pt_paths.clone())?;
    let local = unstraighten(&gs, d)?;
    let (fib, pr, _) = pullback(&un.projection, &inc)?;
    let marked = fib.cells(1).filter(|&e| un.set.is_marked(pr.cell_image(e))).map(|e| e.index).collect();
    let fibre = MarkedSet { space: fib, marked };
    let verdict = bounded_marked_iso(&fibre, &local.set, d);
    let detail = match &verdict {
      IsoVerdict::Isomorphic(_) => "isomorphism".to_string(),
      IsoVerdict::NotIsomorphic(m) => m.clone(),
    };
    out.push(VertexCheck { vertex: s.name(v).to_string(), holds: verdict.is_iso(), detail });
  }
  Ok(out)
}

#[cfg(test)]
mod tests {
  use super::*;
  use crate::homspace::sing_q;
  use crate::iso::{bounded_iso, iso_check};
  use crate::standard::{horn, simplex};

  fn arc(x: SimplicialSet) -> Arc<SimplicialSet> { Arc::new(x) }

  #[test]
  fn cone_of_identity_is_a_triangle() {
    let d1 = arc(simplex(1));
    let cb = cone_base(&SimplicialMap::identity(d1)).unwrap();
    assert!(iso_check(&cb.set, &arc(simplex(2))).is_iso());
    let empty = SimplicialMap::from_empty(arc(simplex(1)));
    assert_eq!(cone_base(&empty).unwrap().set.counts(), vec![3, 1]);
  }

  #[test]
  fn straighten_identity_of_interval() {
    let d1 = arc(simplex(1));
    let st = straighten(&SimplicialMap::identity(d1), 3, None).unwrap();
    assert!(iso_check(&st.functor.values[0].space, &arc(simplex(1))).is_iso());
    assert_eq!(st.functor.values[1].space.counts(), vec![1]);
    st.functor.check().unwrap();
  }

  #[test]
  fn vertex_straightens_to_representable() {
    let s = arc(horn(2, 1).unwrap());
    let v = CellId::new(0, 2);
    let p = SimplicialMap::constant(point(), s.clone(), v);
    let pm = MarkedMap::new(MarkedSet::sharp(p.dom.clone()), MarkedSet::sharp(s.clone()), p.clone()).unwrap();
    let st = straighten_marked(&pm, 2, None).unwrap();
    st.functor.check().unwrap();
    for t in s.cells(0) {
      let rep = mapping_complex(&s, t, v, 2, None).unwrap();
      assert!(bounded_iso(&st.functor.values[t.index].space, &rep.set, 2).is_iso());
      assert_eq!(st.functor.values[t.index].marked.len(), st.functor.values[t.index].space.num_cells(1));
    }
    assert!(edge_extension_check(&s, v, 2, None).unwrap().iter().all(|c| c.holds));
  }

  #[test]
  fn marked_edge_over_point() {
    let d1 = arc(simplex(1));
    let p = SimplicialMap::constant(d1.clone(), point(), CellId::new(0, 0));
    let pm = MarkedMap::new(MarkedSet::sharp(d1.clone()), MarkedSet::sharp(point()), p.clone()).unwrap();
    let st = straighten_marked(&pm, 2, None).unwrap();
    assert_eq!(st.functor.values[0].space.counts(), vec![2, 1]);
    assert_eq!(st.functor.values[0].marked.len(), 1);
    let flat = MarkedMap::new(MarkedSet::flat(d1), MarkedSet::sharp(point()), p).unwrap();
    assert!(straighten_marked(&flat, 2, None).unwrap().functor.values[0].marked.is_empty());
  }

  #[test]
  fn kan_extension_along_identity() {
    let d1 = arc(simplex(1));
    let st = straighten(&SimplicialMap::identity(d1.clone()), 2, None).unwrap();
    let ext = kan_extend(&SimplicialMap::identity(d1), &st.functor, st.functor.paths.clone(), 2).unwrap();
    ext.functor.check().unwrap();
    for v in 0..2 {
      assert!(bounded_iso(&ext.functor.values[v].space, &st.functor.values[v].space, 2).is_iso());
    }
  }

  #[test]
  fn base_change_for_endpoint() {
    let d1 = arc(simplex(1));
    let pt = point();
    let p = SimplicialMap::constant(pt.clone(), d1, CellId::new(0, 0));
    let pp = MarkedMap::identity(MarkedSet::sharp(pt));
    let r = base_change_check(&p, &pp, 2, None).unwrap();
    assert!(r.iter().all(|c| c.holds), "{r:?}");
  }

  #[test]
  fn unstraighten_terminal_is_base() {
    let s = arc(horn(2, 1).unwrap());
    let paths = Arc::new(PathCategory::new(&s, 2, None).unwrap());
    let g = SimplicialFunctor::terminal(paths, 2).unwrap();
    let un = unstraighten(&g, 2).unwrap();
    assert!(bounded_iso(&un.set.space, &s, 2).is_iso());
    assert!(un.projection.validate().is_ok());
  }

  #[test]
  fn unstraighten_over_point_is_sing() {
    let pt = point();
    let paths = Arc::new(PathCategory::new(&pt, 2, None).unwrap());
    let x = arc(simplex(1));
    let g = SimplicialFunctor::from_action(paths, vec![MarkedSet::flat(x.clone())], 2, |_, _, _, y| Ok(y.clone())).unwrap();
    let un = unstraighten(&g, 2).unwrap();
    let sing = sing_q(&x, 2).unwrap();
    assert!(bounded_iso(&un.set.space, &sing, 2).is_iso());
  }

  #[test]
  fn fibres_of_unstraightened_straightening() {
    let d1 = arc(simplex(1));
    let pm = MarkedMap::new(MarkedSet::sharp(d1.clone()), MarkedSet::sharp(d1.clone()), SimplicialMap::identity(d1)).unwrap();
    let st = straighten_marked(&pm, 2, None).unwrap();
    let r = fibre_check(&st.functor, 2).unwrap();
    assert!(r.iter().all(|c| c.holds), "{r:?}");
  }
}
