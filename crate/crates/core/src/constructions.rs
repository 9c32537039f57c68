//! Limits, colimits, joins and suspensions.

use crate::error::{invalid, Error, Result};
use crate::levelwise::from_levels;
use crate::map::{MarkedMap, MarkedSet, SimplicialMap};
use crate::simplex::{CellId, DegeneracyWord, Simplex};
use crate::sset::{words, Builder, SimplicialSet};
use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

fn min_bound(a: Option<usize>, b: Option<usize>) -> Option<usize> {
  match (a, b) {
    (Some(x), Some(y)) => Some(x.min(y)),
    (x, None) => x,
    (None, y) => y,
  }
}

/// Splits off the common degeneracies of a pair of `m`-simplices.
pub fn normalize_pair(a: &Simplex, b: &Simplex) -> (DegeneracyWord, Simplex, Simplex) {
  let m = a.dim();
  let wa: BTreeSet<usize> = a.word.indices().iter().copied().collect();
  let common: Vec<usize> = b.word.indices().iter().copied().filter(|j| wa.contains(j)).collect();
  if common.is_empty() {
    return (DegeneracyWord::identity(), a.clone(), b.clone());
  }
  let word = DegeneracyWord::new(common.clone()).unwrap();
  // section of the collapsing surjection: first element of each fibre
  let rho = word.surjection(m - common.len());
  let (_, section) = {
    let mut firsts = Vec::new();
    for (j, &r) in rho.iter().enumerate() {
      if firsts.len() == r {
        firsts.push(j);
      }
    }
    ((), firsts)
  };
  (word, a.degenerate_by(&section), b.degenerate_by(&section))
}

/// Cartesian product with its two projections.
pub struct Product {
  pub set: Arc<SimplicialSet>,
  pub pr1: SimplicialMap,
  pub pr2: SimplicialMap,
  index: HashMap<(Simplex, Simplex), CellId>,
}

impl Product {
  /// The simplex of the product with the given components.
  pub fn pair(&self, a: &Simplex, b: &Simplex) -> Simplex {
    let (w, a2, b2) = normalize_pair(a, b);
    let c = self.index[&(a2, b2)];
    Simplex { word: DegeneracyWord::identity(), cell: c }.degenerate_by(&w.surjection(c.dim))
  }

  pub fn components(&self, c: CellId) -> (Simplex, Simplex) {
    (self.pr1.cell_image(c).clone(), self.pr2.cell_image(c).clone())
  }
}

pub fn product(x: &Arc<SimplicialSet>, y: &Arc<SimplicialSet>) -> Product {
  let bound = min_bound(x.bound(), y.bound());
  let top = bound.unwrap_or(x.dim() + y.dim());
  let mut b = Builder::new();
  let mut index: HashMap<(Simplex, Simplex), CellId> = HashMap::new();
  let mut p1: Vec<Vec<Simplex>> = Vec::new();
  let mut p2: Vec<Vec<Simplex>> = Vec::new();
  for n in 0..=top {
    p1.push(Vec::new());
    p2.push(Vec::new());
    for p in 0..=n.min(x.levels().saturating_sub(1)) {
      for q in 0..=n.min(y.levels().saturating_sub(1)) {
        if (n - p) + (n - q) > n || x.num_cells(p) == 0 || y.num_cells(q) == 0 {
          continue;
        }
        for wa in words(n, p) {
          for wb in words(n, q) {
            if wa.indices().iter().any(|j| wb.indices().contains(j)) {
              continue;
            }
            for cx in x.cells(p) {
              for cy in y.cells(q) {
                let a = Simplex { word: wa.clone(), cell: cx };
                let bb = Simplex { word: wb.clone(), cell: cy };
                let faces = if n == 0 {
                  Vec::new()
                } else {
                  (0..=n)
                    .map(|i| {
                      let (w, fa, fb) = normalize_pair(&x.face(&a, i), &y.face(&bb, i));
                      let c = index[&(fa, fb)];
                      Simplex::cell(c).degenerate_by(&w.surjection(c.dim))
                    })
                    .collect()
                };
                let name = format!("({},{})", x.simplex_name(&a), y.simplex_name(&bb));
                let id = b.add_cell(&name, faces).expect("product faces");
                index.insert((a.clone(), bb.clone()), id);
                p1[n].push(a);
                p2[n].push(bb);
              }
            }
          }
        }
      }
    }
  }
  if let Some(d) = bound {
    b.truncate(d);
  }
  let set = Arc::new(b.build());
  let pr1 = SimplicialMap::from_images(set.clone(), x.clone(), p1);
  let pr2 = SimplicialMap::from_images(set.clone(), y.clone(), p2);
  Product { set, pr1, pr2, index }
}

/// Product of marked simplicial sets: an edge is marked when both components are.
pub fn marked_product(x: &MarkedSet, y: &MarkedSet) -> (MarkedSet, Product) {
  let p = product(&x.space, &y.space);
  let marked = p
    .set
    .cells(1)
    .filter(|&e| x.is_marked(p.pr1.cell_image(e)) && y.is_marked(p.pr2.cell_image(e)))
    .map(|e| e.index)
    .collect();
  (MarkedSet { space: p.set.clone(), marked }, p)
}

/// `f × g` between products.
pub fn product_map(f: &SimplicialMap, g: &SimplicialMap, dom: &Product, cod: &Product) -> SimplicialMap {
  let images = (0..dom.set.levels())
    .map(|d| dom.set.cells(d).map(|c| cod.pair(&f.image(dom.pr1.cell_image(c)), &g.image(dom.pr2.cell_image(c)))).collect())
    .collect();
  SimplicialMap::from_images(dom.set.clone(), cod.set.clone(), images)
}

/// Joins `X ⋆ Y` with the two inclusions.
pub struct Join {
  pub set: Arc<SimplicialSet>,
  pub left: SimplicialMap,
  pub right: SimplicialMap,
  /// cell of `x ⋆ y` for non-degenerate `x`, `y`
  pub pairs: HashMap<(CellId, CellId), CellId>,
}

impl Join {
  /// The simplex `a ⋆ b` for arbitrary simplices `a` of X and `b` of Y.
  pub fn join_simplices(&self, a: &Simplex, b: &Simplex) -> Simplex {
    let c = self.pairs[&(a.cell, b.cell)];
    let shift = a.dim() + 1;
    let mut w: Vec<usize> = a.word.indices().to_vec();
    w.extend(b.word.indices().iter().map(|j| j + shift));
    Simplex { word: DegeneracyWord::new(w).unwrap(), cell: c }
  }
}

pub fn join(x: &Arc<SimplicialSet>, y: &Arc<SimplicialSet>) -> Join {
  let mut b = Builder::new();
  let top = x.dim() + y.dim() + 1;
  let mut lx: Vec<Vec<Simplex>> = vec![Vec::new(); x.levels()];
  let mut ly: Vec<Vec<Simplex>> = vec![Vec::new(); y.levels()];
  let mut pairs = HashMap::new();
  // cells are added in dimension order so that faces exist
  for n in 0..=top {
    for c in x.cells(n) {
      let fs = x.faces(c).iter().map(|f| lx[f.cell.dim][f.cell.index].degenerate_by(&f.word.surjection(f.cell.dim))).collect();
      lx[n].push(Simplex::cell(b.add_cell(x.name(c), fs).unwrap()));
    }
    for c in y.cells(n) {
      let fs = y.faces(c).iter().map(|f| ly[f.cell.dim][f.cell.index].degenerate_by(&f.word.surjection(f.cell.dim))).collect();
      ly[n].push(Simplex::cell(b.add_cell(y.name(c), fs).unwrap()));
    }
    if n == 0 {
      continue;
    }
    for p in 0..n {
      let q = n - 1 - p;
      for cx in x.cells(p) {
        for cy in y.cells(q) {
          let mut fs = Vec::with_capacity(n + 1);
          let xs = Simplex::cell(cx);
          let ys = Simplex::cell(cy);
          for i in 0..=n {
            let f = if i <= p {
              if p == 0 {
                ly[q][cy.index].clone()
              } else {
                let fx = x.face(&xs, i);
                join_word(&pairs, &fx, &ys)
              }
            } else if q == 0 {
              lx[p][cx.index].clone()
            } else {
              let fy = y.face(&ys, i - p - 1);
              join_word(&pairs, &xs, &fy)
            };
            fs.push(f);
          }
          let id = b.add_cell(&format!("{}*{}", x.name(cx), y.name(cy)), fs).unwrap();
          pairs.insert((cx, cy), id);
        }
      }
    }
  }
  let set = Arc::new(b.build());
  Join {
    left: SimplicialMap::from_images(x.clone(), set.clone(), lx),
    right: SimplicialMap::from_images(y.clone(), set.clone(), ly),
    set,
    pairs,
  }
}

fn join_word(pairs: &HashMap<(CellId, CellId), CellId>, a: &Simplex, b: &Simplex) -> Simplex {
  let c = pairs[&(a.cell, b.cell)];
  let shift = a.dim() + 1;
  let mut w: Vec<usize> = a.word.indices().to_vec();
  w.extend(b.word.indices().iter().map(|j| j + shift));
  Simplex { word: DegeneracyWord::new(w).unwrap(), cell: c }
}

/// Coproduct; cell names are prefixed with `l:` and `r:`.
pub fn coproduct(x: &Arc<SimplicialSet>, y: &Arc<SimplicialSet>) -> (Arc<SimplicialSet>, SimplicialMap, SimplicialMap) {
  let (set, mut maps) = coproduct_many(&[x.clone(), y.clone()], &["l:", "r:"]);
  let r = maps.pop().unwrap();
  let l = maps.pop().unwrap();
  (set, l, r)
}

pub fn coproduct_many(xs: &[Arc<SimplicialSet>], prefixes: &[&str]) -> (Arc<SimplicialSet>, Vec<SimplicialMap>) {
  let mut b = Builder::new();
  let top = xs.iter().map(|x| x.levels()).max().unwrap_or(0);
  let mut imgs: Vec<Vec<Vec<Simplex>>> = xs.iter().map(|x| vec![Vec::new(); x.levels()]).collect();
  for n in 0..top {
    for (k, x) in xs.iter().enumerate() {
      for c in x.cells(n) {
        let fs = x.faces(c).iter().map(|f| imgs[k][f.cell.dim][f.cell.index].degenerate_by(&f.word.surjection(f.cell.dim))).collect();
        let id = b.add_cell(&format!("{}{}", prefixes[k], x.name(c)), fs).unwrap();
        imgs[k][n].push(Simplex::cell(id));
      }
    }
  }
  let bound = xs.iter().fold(None, |acc, x| min_bound(acc, x.bound()));
  if let Some(d) = bound {
    b.truncate(d);
  }
  let set = Arc::new(b.build());
  let maps = xs.iter().zip(imgs).map(|(x, im)| SimplicialMap::from_images(x.clone(), set.clone(), im)).collect();
  (set, maps)
}

/// A pushout square `Y → P ← X` of a span `X ← A → Y`.
pub struct Pushout {
  pub set: Arc<SimplicialSet>,
  /// `X → P`
  pub from_x: SimplicialMap,
  /// `Y → P`
  pub from_y: SimplicialMap,
}

/// Pushout of `X ←f A →g Y`. When `f` is a monomorphism the cells of `P` are the
/// cells of `Y` followed by the cells of `X` outside the image of `f`; otherwise a
/// levelwise quotient is computed.
pub fn pushout(f: &SimplicialMap, g: &SimplicialMap) -> Result<Pushout> {
  if !Arc::ptr_eq(&f.dom, &g.dom) && f.dom != g.dom {
    return invalid("pushout legs have different domains");
  }
  if f.is_mono() {
    return Ok(pushout_along_mono(f, g));
  }
  if g.is_mono() {
    let p = pushout_along_mono(g, f);
    return Ok(Pushout { set: p.set, from_x: p.from_y, from_y: p.from_x });
  }
  let (set, mut maps) = colimit(&[f.dom.clone(), f.cod.clone(), g.cod.clone()], &[(0, 1, f), (0, 2, g)])?;
  let from_y = maps.pop().unwrap();
  let from_x = maps.pop().unwrap();
  Ok(Pushout { set, from_x, from_y })
}

fn pushout_along_mono(f: &SimplicialMap, g: &SimplicialMap) -> Pushout {
  let x = &f.cod;
  let y = &g.cod;
  let pre = f.preimages();
  let mut b = Builder::new();
  let mut ly: Vec<Vec<Simplex>> = vec![Vec::new(); y.levels()];
  for n in 0..y.levels() {
    for c in y.cells(n) {
      let fs = y.faces(c).iter().map(|s| ly[s.cell.dim][s.cell.index].degenerate_by(&s.word.surjection(s.cell.dim))).collect();
      ly[n].push(Simplex::cell(b.add_cell(y.name(c), fs).unwrap()));
    }
  }
  let mut lx: Vec<Vec<Simplex>> = vec![Vec::new(); x.levels()];
  for n in 0..x.levels() {
    for c in x.cells(n) {
      let img = match pre[n][c.index] {
        Some(a) => {
          let s = g.cell_image(a);
          ly[s.cell.dim][s.cell.index].degenerate_by(&s.word.surjection(s.cell.dim))
        }
        None => {
          let fs = x.faces(c).iter().map(|s| lx[s.cell.dim][s.cell.index].degenerate_by(&s.word.surjection(s.cell.dim))).collect();
          Simplex::cell(b.add_cell(x.name(c), fs).unwrap())
        }
      };
      lx[n].push(img);
    }
  }
  if let Some(d) = min_bound(x.bound(), y.bound()) {
    b.truncate(d);
  }
  let set = Arc::new(b.build());
  Pushout { from_x: SimplicialMap::from_images(x.clone(), set.clone(), lx), from_y: SimplicialMap::from_images(y.clone(), set.clone(), ly), set }
}

/// Colimit of a finite diagram, computed levelwise with union–find. Returns the
/// colimit and the coprojections. Class names are the least representative name
/// among non-degenerate representatives (ordered by object, then name).
pub fn colimit(objects: &[Arc<SimplicialSet>], arrows: &[(usize, usize, &SimplicialMap)]) -> Result<(Arc<SimplicialSet>, Vec<SimplicialMap>)> {
  let bound = objects.iter().fold(None, |acc, x| min_bound(acc, x.bound()));
  let top = bound.unwrap_or_else(|| objects.iter().map(|x| x.dim()).max().unwrap_or(0));
  // element = (object, simplex)
  let mut elems: Vec<Vec<(usize, Simplex)>> = Vec::new();
  let mut idx: Vec<HashMap<(usize, Simplex), usize>> = Vec::new();
  for n in 0..=top {
    let mut level = Vec::new();
    let mut map = HashMap::new();
    for (k, x) in objects.iter().enumerate() {
      for s in x.all_simplices(n) {
        map.insert((k, s.clone()), level.len());
        level.push((k, s));
      }
    }
    elems.push(level);
    idx.push(map);
  }
  let mut uf: Vec<Vec<usize>> = elems.iter().map(|l| (0..l.len()).collect()).collect();
  fn find(p: &mut [usize], mut i: usize) -> usize {
    while p[i] != i {
      p[i] = p[p[i]];
      i = p[i];
    }
    i
  }
  for &(s, t, f) in arrows {
    for n in 0..=top {
      for a in objects[s].all_simplices(n) {
        let i = idx[n][&(s, a.clone())];
        let j = idx[n][&(t, f.image(&a))];
        let (ri, rj) = (find(&mut uf[n], i), find(&mut uf[n], j));
        if ri != rj {
          uf[n][ri.max(rj)] = ri.min(rj);
        }
      }
    }
  }
  let roots: Vec<Vec<usize>> = (0..=top).map(|n| (0..elems[n].len()).map(|i| find(&mut uf[n], i)).collect()).collect();
  let mut reps: Vec<Vec<usize>> = Vec::new();
  let mut names: Vec<HashMap<usize, String>> = Vec::new();
  for n in 0..=top {
    let mut rs: BTreeSet<usize> = BTreeSet::new();
    let mut nm: HashMap<usize, String> = HashMap::new();
    for (i, (k, s)) in elems[n].iter().enumerate() {
      let r = roots[n][i];
      rs.insert(r);
      if !s.is_degenerate() {
        let cand = objects[*k].name(s.cell).to_string();
        nm.entry(r).and_modify(|e| if cand < *e { *e = cand.clone() }).or_insert(cand);
      }
    }
    reps.push(rs.into_iter().collect());
    names.push(nm);
  }
  let ex = from_levels(
    &reps,
    |n, &r, i| {
      let (k, s) = &elems[n][r];
      roots[n - 1][idx[n - 1][&(*k, objects[*k].face(s, i))]]
    },
    |n, &r, i| {
      let (k, s) = &elems[n][r];
      roots[n + 1][idx[n + 1][&(*k, s.degeneracy(i))]]
    },
    |n, r| names[n].get(r).cloned().unwrap_or_else(|| format!("c{n}_{r}")),
    bound,
  )?;
  let set = Arc::new(ex.set);
  let mut maps = Vec::new();
  for (k, x) in objects.iter().enumerate() {
    let images = (0..x.levels())
      .map(|d| x.cells(d).map(|c| if d <= top { ex.normal[d][&roots[d][idx[d][&(k, Simplex::cell(c))]]].clone() } else { Simplex::cell(c) }).collect())
      .collect();
    maps.push(SimplicialMap::from_images(x.clone(), set.clone(), images));
  }
  Ok((set, maps))
}

/// Marked pushout: the marked edges of `P` are the images of marked edges.
pub fn marked_pushout(f: &MarkedMap, g: &MarkedMap) -> Result<(MarkedSet, MarkedMap, MarkedMap)> {
  let p = pushout(&f.map, &g.map)?;
  let mut marked = BTreeSet::new();
  for (m, src) in [(&p.from_x, &f.cod), (&p.from_y, &g.cod)] {
    for &e in &src.marked {
      let y = m.cell_image(CellId::new(1, e));
      if !y.is_degenerate() {
        marked.insert(y.cell.index);
      }
    }
  }
  let ms = MarkedSet { space: p.set.clone(), marked };
  let fx = MarkedMap::unchecked(f.cod.clone(), ms.clone(), p.from_x);
  let fy = MarkedMap::unchecked(g.cod.clone(), ms.clone(), p.from_y);
  Ok((ms, fx, fy))
}

/// The map out of a pushout `P` determined by maps `mx`, `my` on the two legs.
pub fn pushout_mediating(p: &Arc<SimplicialSet>, from_x: &SimplicialMap, from_y: &SimplicialMap, mx: &SimplicialMap, my: &SimplicialMap) -> Result<SimplicialMap> {
  let a = from_x.preimages();
  let b = from_y.preimages();
  let cod = mx.cod.clone();
  let mut missing = None;
  let m = SimplicialMap::from_fn(p.clone(), cod, |c| match (a[c.dim][c.index], b[c.dim][c.index]) {
    (Some(x), _) => mx.cell_image(x).clone(),
    (None, Some(y)) => my.cell_image(y).clone(),
    (None, None) => {
      missing = Some(c);
      Simplex::constant(CellId::new(0, 0), c.dim)
    }
  });
  if let Some(c) = missing {
    return invalid(format!("cell {} of the pushout lies in neither leg", p.name(c)));
  }
  m
}

/// A pushout-product `f ⊠ g: F₀×G₁ ∪_{F₀×G₀} F₁×G₀ → F₁×G₁` with its pieces.
pub struct PushoutProduct {
  pub map: MarkedMap,
  /// `F₀×G₁ → P`
  pub from_left: MarkedMap,
  /// `F₁×G₀ → P`
  pub from_right: MarkedMap,
  pub left: Product,
  pub right: Product,
  pub top: Product,
}

pub fn pushout_product_parts(f: &MarkedMap, g: &MarkedMap) -> Result<PushoutProduct> {
  if !f.is_mono() || !g.is_mono() {
    return invalid("pushout-products are formed from monomorphisms");
  }
  let (ad, pad) = marked_product(&f.dom, &g.cod);
  let (bc, pbc) = marked_product(&f.cod, &g.dom);
  let (ac, pac) = marked_product(&f.dom, &g.dom);
  let (bd, pbd) = marked_product(&f.cod, &g.cod);
  let id_a = SimplicialMap::identity(f.dom.space.clone());
  let id_b = SimplicialMap::identity(f.cod.space.clone());
  let id_c = SimplicialMap::identity(g.dom.space.clone());
  let id_d = SimplicialMap::identity(g.cod.space.clone());
  let u = MarkedMap::unchecked(ac.clone(), ad, product_map(&id_a, &g.map, &pac, &pad));
  let v = MarkedMap::unchecked(ac, bc, product_map(&f.map, &id_c, &pac, &pbc));
  let (p, px, py) = marked_pushout(&u, &v)?;
  let m = pushout_mediating(&p.space, &px.map, &py.map, &product_map(&f.map, &id_d, &pad, &pbd), &product_map(&id_b, &g.map, &pbc, &pbd))?;
  Ok(PushoutProduct { map: MarkedMap::unchecked(p, bd, m), from_left: px, from_right: py, left: pad, right: pbc, top: pbd })
}

pub fn pushout_product(f: &MarkedMap, g: &MarkedMap) -> Result<MarkedMap> { Ok(pushout_product_parts(f, g)?.map) }

/// Coproduct of marked maps.
pub fn marked_coproduct(maps: &[MarkedMap]) -> MarkedMap {
  let prefixes: Vec<String> = (0..maps.len()).map(|k| format!("{k}:")).collect();
  let refs: Vec<&str> = prefixes.iter().map(String::as_str).collect();
  let side = |sets: Vec<&MarkedSet>| {
    let (set, legs) = coproduct_many(&sets.iter().map(|m| m.space.clone()).collect::<Vec<_>>(), &refs);
    let mut marked = BTreeSet::new();
    for (m, leg) in sets.iter().zip(&legs) {
      marked.extend(m.marked.iter().map(|&e| leg.cell_image(CellId::new(1, e)).cell.index));
    }
    (MarkedSet { space: set, marked }, legs)
  };
  let (dom, dl) = side(maps.iter().map(|m| &m.dom).collect());
  let (cod, cl) = side(maps.iter().map(|m| &m.cod).collect());
  let mut images: Vec<Vec<Simplex>> = (0..dom.space.levels()).map(|d| vec![Simplex::constant(CellId::new(0, 0), d); dom.space.num_cells(d)]).collect();
  for ((m, l), r) in maps.iter().zip(&dl).zip(&cl) {
    for c in m.dom.space.all_cells() {
      let t = l.cell_image(c);
      images[t.cell.dim][t.cell.index] = r.image(m.map.cell_image(c));
    }
  }
  let map = SimplicialMap::from_images(dom.space.clone(), cod.space.clone(), images);
  MarkedMap::unchecked(dom, cod, map)
}

/// Quotient by disjoint sub-complexes, each collapsed to its own vertex. A
/// sub-complex is given by generating cells; an empty list adds a new isolated
/// point. Returns the quotient, the projection, and the vertex of each class.
pub fn quotient(x: &Arc<SimplicialSet>, subs: &[Vec<CellId>]) -> Result<(Arc<SimplicialSet>, SimplicialMap, Vec<CellId>)> {
  let mut owner: Vec<Vec<Option<usize>>> = (0..x.levels()).map(|d| vec![None; x.num_cells(d)]).collect();
  for (k, gens) in subs.iter().enumerate() {
    let mut stack = gens.clone();
    while let Some(c) = stack.pop() {
      match owner[c.dim][c.index] {
        Some(o) if o == k => continue,
        Some(_) => return invalid("collapsed sub-complexes overlap"),
        None => {}
      }
      owner[c.dim][c.index] = Some(k);
      stack.extend(x.faces(c).iter().map(|f| f.cell));
    }
  }
  let mut b = Builder::new();
  let mut points = Vec::new();
  for (k, _) in subs.iter().enumerate() {
    // least representative: dimension first, then name
    let least = x
      .all_cells()
      .filter(|c| owner[c.dim][c.index] == Some(k))
      .min_by(|a, c| (a.dim, x.name(*a)).cmp(&(c.dim, x.name(*c))))
      .map(|c| x.name(c).to_string())
      .unwrap_or_else(|| "pt".into());
    points.push(b.add_vertex(&least));
  }
  let mut img: Vec<Vec<Simplex>> = vec![Vec::new(); x.levels()];
  for n in 0..x.levels() {
    for c in x.cells(n) {
      let s = match owner[n][c.index] {
        Some(k) => Simplex::constant(points[k], n),
        None => {
          let fs = x.faces(c).iter().map(|f| img[f.cell.dim][f.cell.index].degenerate_by(&f.word.surjection(f.cell.dim))).collect();
          Simplex::cell(b.add_cell(x.name(c), fs)?)
        }
      };
      img[n].push(s);
    }
  }
  if let Some(d) = x.bound() {
    b.truncate(d);
  }
  let set = Arc::new(b.build());
  Ok((set.clone(), SimplicialMap::from_images(x.clone(), set, img), points))
}

/// Pullback `X ×_S T` with its projections.
pub fn pullback(f: &SimplicialMap, g: &SimplicialMap) -> Result<(Arc<SimplicialSet>, SimplicialMap, SimplicialMap)> {
  if !Arc::ptr_eq(&f.cod, &g.cod) && f.cod != g.cod {
    return invalid("pullback legs have different codomains");
  }
  let p = product(&f.dom, &g.dom);
  let gens: Vec<CellId> = p.set.all_cells().filter(|&c| f.image(p.pr1.cell_image(c)) == g.image(p.pr2.cell_image(c))).collect();
  let (sub, map) = p.set.subcomplex(&gens);
  let mut i1 = vec![Vec::new(); sub.levels()];
  let mut i2 = vec![Vec::new(); sub.levels()];
  for d in 0..p.set.levels() {
    for c in p.set.cells(d) {
      if map[d][c.index].is_some() {
        i1[d].push(p.pr1.cell_image(c).clone());
        i2[d].push(p.pr2.cell_image(c).clone());
      }
    }
  }
  let sub = Arc::new(sub.with_truncation(p.set.bound()));
  let sub_levels = sub.levels();
  i1.resize(sub_levels, Vec::new());
  i2.resize(sub_levels, Vec::new());
  Ok((sub.clone(), SimplicialMap::from_images(sub.clone(), f.dom.clone(), i1), SimplicialMap::from_images(sub, g.dom.clone(), i2)))
}

/// Which of the three suspensions to form.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
  Left,
  Symmetric,
  Right,
}

/// A simplicial set with two distinguished vertices `0` and `1`.
#[derive(Clone, Debug)]
pub struct Bipointed {
  pub set: Arc<SimplicialSet>,
  pub zero: CellId,
  pub one: CellId,
}

pub fn suspension(x: &Arc<SimplicialSet>, side: Side) -> Result<Bipointed> {
  let pt = Arc::new(crate::standard::simplex(0));
  match side {
    Side::Right | Side::Left => {
      let j = if side == Side::Right { join(x, &pt) } else { join(&pt, x) };
      let base = if side == Side::Right { &j.left } else { &j.right };
      let cone = if side == Side::Right { &j.right } else { &j.left };
      let gens: Vec<CellId> = base.images().iter().flatten().map(|s| s.cell).collect();
      let (set, proj, points) = quotient(&j.set, &[gens])?;
      let apex = proj.image(cone.cell_image(CellId::new(0, 0))).cell;
      let (zero, one) = if side == Side::Right { (points[0], apex) } else { (apex, points[0]) };
      Ok(Bipointed { set, zero, one })
    }
    Side::Symmetric => {
      let interval = Arc::new(crate::standard::simplex(1));
      let p = product(x, &interval);
      let mut ends = [Vec::new(), Vec::new()];
      for c in p.set.all_cells() {
        let b = p.pr2.cell_image(c);
        let vs = interval.vertices_of(b);
        if vs.iter().all(|v| v.index == 0) {
          ends[0].push(c);
        } else if vs.iter().all(|v| v.index == 1) {
          ends[1].push(c);
        }
      }
      let (set, _, points) = quotient(&p.set, &ends)?;
      Ok(Bipointed { set, zero: points[0], one: points[1] })
    }
  }
}

/// Relabels a map's codomain-side structure: the map `X → Y` restricted to the
/// image sub-complex.
pub fn image_subcomplex(f: &SimplicialMap) -> Vec<CellId> {
  let mut set: BTreeSet<CellId> = BTreeSet::new();
  for s in f.images().iter().flatten() {
    set.insert(s.cell);
  }
  set.into_iter().collect()
}

/// Inclusion of the sub-complex generated by `gens`.
pub fn inclusion(x: &Arc<SimplicialSet>, gens: &[CellId]) -> SimplicialMap {
  let (sub, map) = x.subcomplex(gens);
  let sub = Arc::new(sub);
  let mut images: Vec<Vec<Simplex>> = vec![Vec::new(); sub.levels()];
  for d in 0..x.levels() {
    for c in x.cells(d) {
      if let Some(i) = map[d][c.index] {
        debug_assert_eq!(i, images[d].len());
        images[d].push(Simplex::cell(c));
      }
    }
  }
  SimplicialMap::from_images(sub, x.clone(), images)
}

/// Maps with a common domain into a product.
pub fn pair_map(f: &SimplicialMap, g: &SimplicialMap, p: &Product) -> SimplicialMap {
  let images = (0..f.dom.levels()).map(|d| f.dom.cells(d).map(|c| p.pair(f.cell_image(c), g.cell_image(c))).collect()).collect();
  SimplicialMap::from_images(f.dom.clone(), p.set.clone(), images)
}

/// Rejects results that would silently lose cells above a truncation.
pub fn require_complete(x: &SimplicialSet, n: usize) -> Result<()> {
  if x.complete_through(n) {
    Ok(())
  } else {
    Err(Error::Inconclusive { reason: format!("dimension {n} exceeds the truncation"), bound: x.dim() })
  }
}

#[cfg(test)]
mod tests {
  use super::*;
  use crate::standard::{boundary, simplex};

  #[test]
  fn product_of_intervals_counts() {
    let d1 = Arc::new(simplex(1));
    let p = product(&d1, &d1);
    assert_eq!(p.set.counts(), vec![4, 5, 2]);
    assert!(p.set.validate().is_ok());
    assert!(p.pr1.validate().is_ok() && p.pr2.validate().is_ok());
  }

  #[test]
  fn join_of_simplices_is_simplex() {
    let j = join(&Arc::new(simplex(1)), &Arc::new(simplex(0)));
    assert_eq!(j.set.counts(), vec![3, 3, 1]);
    assert!(j.set.validate().is_ok());
  }

  #[test]
  fn quotient_of_triangle_by_edge() {
    let d2 = Arc::new(simplex(2));
    let (q, proj, _) = quotient(&d2, &[vec![d2.find("01").unwrap()]]).unwrap();
    assert_eq!(q.counts(), vec![2, 2, 1]);
    assert!(q.validate().is_ok());
    assert!(proj.validate().is_ok());
  }

  #[test]
  fn pushout_of_boundary_into_simplex() {
    let b = Arc::new(boundary(2));
    let d2 = Arc::new(simplex(2));
    let incl = SimplicialMap::from_fn(b.clone(), d2.clone(), |c| Simplex::cell(d2.find(b.name(c)).unwrap())).unwrap();
    let pt = Arc::new(simplex(0));
    let to_pt = SimplicialMap::constant(b.clone(), pt.clone(), CellId::new(0, 0));
    let p = pushout(&incl, &to_pt).unwrap();
    assert_eq!(p.set.counts(), vec![1, 0, 1]);
    assert!(p.set.validate().is_ok());
    let (s, maps) = colimit(&[b.clone(), d2.clone(), pt.clone()], &[(0, 1, &incl), (0, 2, &to_pt)]).unwrap();
    assert_eq!(s.counts(), vec![1, 0, 1]);
    assert!(maps.iter().all(|m| m.validate().is_ok()));
  }
}
