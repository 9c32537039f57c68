//! Certificates for membership of a map in a weakly saturated class.
//!
//! A certificate is a finite tree. Every node states the map it denotes; the
//! checker rebuilds that map from the node's children and compares the two as
//! arrows up to isomorphism (pinned to the identity when the domains agree).

use crate::category::{grothendieck, nerve, nerve_functor, CatPresheaf, FiniteCategory};
use crate::constructions::{coproduct_many, marked_coproduct, marked_product, marked_pushout, pair_map, pushout_mediating, pushout_product, pushout_product_parts, Product};
use crate::error::{invalid, Error, Result};
use crate::iso::arrow_iso;
use crate::json::{map_images_brief, marked_map_from_json, marked_map_to_json};
use crate::lifting::{enumerate_maps, LiftOutcome, LiftingProblem};
use crate::map::{MarkedMap, MarkedSet, SimplicialMap};
use crate::simplex::CellId;
use crate::standard::{boundary, complex_k, face_inclusion, horn, interval_j, k_to_j, simplex, simplex_with_vertices};
use crate::sset::SimplicialSet;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use std::fmt;
use std::sync::Arc;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AnodyneClass {
  Inner,
  Left,
  Right,
  /// generated by `(A^♯ → B^♯) ⊠ (C → D)` with `A → B` right anodyne
  MarkedRight,
  /// generated by the two cylinder families over `{1} → (Δ¹)^♯`
  MarkedRightSmall,
  /// marked right anodynes, flat inner horns and `J^♭ → (J, 0→1)`
  Cartesian,
  /// as `Cartesian` with `K^♭ → K^♯` in place of the `J` generator
  CartesianK,
}

impl AnodyneClass {
  pub const ALL: [AnodyneClass; 7] = [Self::Inner, Self::Left, Self::Right, Self::MarkedRight, Self::MarkedRightSmall, Self::Cartesian, Self::CartesianK];

  pub fn name(self) -> &'static str {
    match self {
      Self::Inner => "inner",
      Self::Left => "left",
      Self::Right => "right",
      Self::MarkedRight => "marked-right",
      Self::MarkedRightSmall => "marked-right-small",
      Self::Cartesian => "cartesian",
      Self::CartesianK => "cartesian-k",
    }
  }

  pub fn parse(s: &str) -> Result<Self> {
    Self::ALL.into_iter().find(|c| c.name() == s).ok_or_else(|| Error::Invalid(format!("unknown anodyne class {s}")))
  }

  /// Classes of marked maps; the others live in plain simplicial sets.
  pub fn is_marked(self) -> bool { !matches!(self, Self::Inner | Self::Left | Self::Right) }

  /// Whether a `PushoutProduct` node (with an arbitrary monomorphism) may be used.
  pub fn allows_pushout_product(self) -> bool { matches!(self, Self::Left | Self::Right | Self::MarkedRight | Self::MarkedRightSmall | Self::Cartesian) }

  pub fn families(self) -> Vec<&'static str> {
    let horns = match self {
      Self::Inner | Self::Cartesian | Self::CartesianK => "horn(n,k): Λ^n_k → Δ^n, 0 < k < n",
      Self::Left => "horn(n,k): Λ^n_k → Δ^n, 0 ≤ k < n",
      Self::Right => "horn(n,k): Λ^n_k → Δ^n, 0 < k ≤ n",
      _ => "",
    };
    let sharp = "sharp-product: (A^♯ → B^♯) ⊠ (C → D), A → B certified right anodyne, C → D a marked monomorphism";
    let mut out = Vec::new();
    match self {
      Self::Inner | Self::Left | Self::Right => out.push(horns),
      Self::MarkedRight => out.push(sharp),
      Self::MarkedRightSmall => {
        out.push("cylinder(n): ({1} → (Δ¹)^♯) ⊠ (∂Δ^n → Δ^n)^♭");
        out.push("cylinder-marking: ({1} → (Δ¹)^♯) ⊠ ((Δ¹)^♭ → (Δ¹)^♯)");
      }
      Self::Cartesian | Self::CartesianK => {
        out.push(sharp);
        out.push(horns);
        out.push(if self == Self::Cartesian { "j-marking(d): J^♭ → (J, 0→1), J truncated at d" } else { "k-marking: K^♭ → K^♯" });
      }
    }
    out
  }
}

impl fmt::Display for AnodyneClass {
  fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result { f.write_str(self.name()) }
}

// ---- standard maps

fn face_map(sub: SimplicialSet, n: usize) -> MarkedMap {
  MarkedMap::flat(face_inclusion(&Arc::new(sub), n, &Arc::new(simplex(n))))
}

/// `(Λ^n_k)^♭ → (Δ^n)^♭`.
pub fn horn_inclusion(n: usize, k: usize) -> Result<MarkedMap> { Ok(face_map(horn(n, k)?, n)) }

/// `(∂Δ^n)^♭ → (Δ^n)^♭`; for `n = 0` this is `∅ → Δ⁰`.
pub fn boundary_inclusion(n: usize) -> MarkedMap { face_map(boundary(n), n) }

/// Both ends marked with every edge.
pub fn sharpen(f: &MarkedMap) -> MarkedMap {
  MarkedMap::unchecked(MarkedSet::sharp(f.dom.space.clone()), MarkedSet::sharp(f.cod.space.clone()), f.map.clone())
}

/// `{1} → (Δ¹)^♯`.
pub fn endpoint_inclusion() -> MarkedMap { sharpen(&horn_inclusion(1, 1).expect("Λ¹₁")) }

/// `(Δ¹)^♭ → (Δ¹)^♯`.
pub fn marking_inclusion() -> MarkedMap {
  let d1 = Arc::new(simplex(1));
  MarkedMap::unchecked(MarkedSet::flat(d1.clone()), MarkedSet::sharp(d1.clone()), SimplicialMap::identity(d1))
}

/// `J^♭ → (J, 0→1)` at truncation `d`.
pub fn j_marking(d: usize) -> MarkedMap {
  let j = Arc::new(interval_j(d));
  let marked = MarkedSet::with_marked(j.clone(), &["01"]).expect("J has the edge 01");
  MarkedMap::unchecked(MarkedSet::flat(j.clone()), marked, SimplicialMap::identity(j))
}

/// `K^♭ → K^♯`.
pub fn k_marking() -> MarkedMap {
  let (k, _) = complex_k();
  MarkedMap::unchecked(MarkedSet::flat(k.clone()), MarkedSet::sharp(k.clone()), SimplicialMap::identity(k))
}

// ---- generators

#[derive(Clone, Debug)]
pub enum Generator {
  Horn { n: usize, k: usize },
  SharpProduct { right: Box<Certificate>, cofibration: MarkedMap },
  Cylinder { n: usize },
  CylinderMarking,
  JMarking { bound: usize },
  KMarking,
}

impl Generator {
  pub fn family(&self) -> &'static str {
    match self {
      Self::Horn { .. } => "horn",
      Self::SharpProduct { .. } => "sharp-product",
      Self::Cylinder { .. } => "cylinder",
      Self::CylinderMarking => "cylinder-marking",
      Self::JMarking { .. } => "j-marking",
      Self::KMarking => "k-marking",
    }
  }

  pub fn allowed_in(&self, class: AnodyneClass) -> bool {
    use AnodyneClass::*;
    match *self {
      Self::Horn { n, k } => match class {
        Inner | Cartesian | CartesianK => 0 < k && k < n,
        Left => k < n,
        Right => 0 < k && k <= n,
        _ => false,
      },
      Self::SharpProduct { .. } => matches!(class, MarkedRight | Cartesian | CartesianK),
      Self::Cylinder { .. } | Self::CylinderMarking => class == MarkedRightSmall,
      Self::JMarking { .. } => class == Cartesian,
      Self::KMarking => class == CartesianK,
    }
  }

  /// The generating map itself.
  pub fn instance(&self) -> Result<MarkedMap> {
    match self {
      Self::Horn { n, k } => horn_inclusion(*n, *k),
      Self::SharpProduct { right, cofibration } => pushout_product(&sharpen(&right.claimed), cofibration),
      Self::Cylinder { n } => pushout_product(&endpoint_inclusion(), &boundary_inclusion(*n)),
      Self::CylinderMarking => pushout_product(&endpoint_inclusion(), &marking_inclusion()),
      Self::JMarking { bound } => Ok(j_marking(*bound)),
      Self::KMarking => Ok(k_marking()),
    }
  }
}

// ---- certificates

#[derive(Clone, Debug)]
pub enum Node {
  Generator(Generator),
  /// cobase change of the child along `attach: A → C`, where the child is `A → B`
  Pushout { child: Box<Certificate>, attach: MarkedMap },
  /// children in the order they are applied; empty means an identity
  Composite(Vec<Certificate>),
  /// the stated map `X → Y` as a retract of the child `A → B`, with
  /// `section = [X → A, Y → B]` and `retraction = [A → X, B → Y]`
  Retract { child: Box<Certificate>, section: [MarkedMap; 2], retraction: [MarkedMap; 2] },
  PushoutProduct { child: Box<Certificate>, cofibration: MarkedMap },
  Coproduct(Vec<Certificate>),
}

impl Node {
  pub fn kind(&self) -> &'static str {
    match self {
      Self::Generator(_) => "generator",
      Self::Pushout { .. } => "pushout",
      Self::Composite(_) => "composite",
      Self::Retract { .. } => "retract",
      Self::PushoutProduct { .. } => "pushout-product",
      Self::Coproduct(_) => "coproduct",
    }
  }
}

#[derive(Clone, Debug)]
pub struct Certificate {
  pub class: AnodyneClass,
  pub claimed: MarkedMap,
  pub node: Node,
}

impl Certificate {
  /// A generator node stating its own instance.
  pub fn generator(class: AnodyneClass, g: Generator) -> Result<Self> {
    let claimed = g.instance()?;
    Ok(Self { class, claimed, node: Node::Generator(g) })
  }

  pub fn horn(class: AnodyneClass, n: usize, k: usize) -> Result<Self> { Self::generator(class, Generator::Horn { n, k }) }

  /// Cobase change along `attach`, stating the computed pushout leg.
  pub fn pushout(child: Certificate, attach: MarkedMap) -> Result<Self> {
    let (_, _, leg) = marked_pushout(&child.claimed, &attach)?;
    Ok(Self { class: child.class, claimed: leg, node: Node::Pushout { child: Box::new(child), attach } })
  }

  pub fn composite(class: AnodyneClass, children: Vec<Certificate>) -> Result<Self> {
    let claimed = compose_all(&children)?;
    Ok(Self { class, claimed, node: Node::Composite(children) })
  }

  /// The identity of `x`, as an empty composite.
  pub fn identity(class: AnodyneClass, x: MarkedSet) -> Self { Self { class, claimed: MarkedMap::identity(x), node: Node::Composite(Vec::new()) } }

  pub fn coproduct(class: AnodyneClass, children: Vec<Certificate>) -> Result<Self> {
    if children.is_empty() {
      return invalid("a coproduct node needs at least one child");
    }
    let maps: Vec<MarkedMap> = children.iter().map(|c| c.claimed.clone()).collect();
    Ok(Self { class, claimed: marked_coproduct(&maps), node: Node::Coproduct(children) })
  }

  pub fn node_count(&self) -> usize {
    1 + match &self.node {
      Node::Generator(Generator::SharpProduct { right, .. }) => right.node_count(),
      Node::Generator(_) => 0,
      Node::Pushout { child, .. } | Node::Retract { child, .. } | Node::PushoutProduct { child, .. } => child.node_count(),
      Node::Composite(cs) | Node::Coproduct(cs) => cs.iter().map(Certificate::node_count).sum(),
    }
  }
}

/// `a ⊠ c` for a certificate `a` in a class closed under pushout-products.
pub fn pp_certificate(a: Certificate, c: MarkedMap) -> Result<Certificate> {
  if !a.class.allows_pushout_product() {
    return invalid(format!("{} is not closed under pushout-products here", a.class));
  }
  if !c.is_mono() {
    return invalid("the cofibration of a pushout-product must be a monomorphism");
  }
  let claimed = pushout_product(&a.claimed, &c)?;
  Ok(Certificate { class: a.class, claimed, node: Node::PushoutProduct { child: Box::new(a), cofibration: c } })
}

fn compose_all(children: &[Certificate]) -> Result<MarkedMap> {
  let first = children.first().ok_or_else(|| Error::Invalid("an empty composite has no stated map".into()))?;
  let mut acc = first.claimed.clone();
  for (i, c) in children.iter().enumerate().skip(1) {
    if acc.cod != c.claimed.dom {
      return invalid(format!("composite step {i} does not start where step {} ends", i - 1));
    }
    acc = acc.compose(&c.claimed);
  }
  Ok(acc)
}

// ---- checking

#[derive(Clone, Debug, PartialEq)]
pub struct CertVerdict {
  pub valid: bool,
  /// path of the first failing node, e.g. `root/retract`
  pub failing_node: Option<String>,
  pub reason: Option<String>,
  pub nodes: usize,
}

impl CertVerdict {
  pub fn to_json(&self) -> Value { json!({ "valid": self.valid, "failing_node": self.failing_node, "reason": self.reason, "nodes": self.nodes }) }
}

type NodeResult = std::result::Result<(), (String, String)>;

fn fail(path: &str, msg: impl Into<String>) -> NodeResult { Err((path.to_string(), msg.into())) }

fn same_arrow(path: &str, stated: &MarkedMap, rebuilt: &MarkedMap) -> NodeResult {
  if arrow_iso(stated, rebuilt).is_iso() {
    Ok(())
  } else {
    fail(path, "the stated map does not match the reconstruction")
  }
}

fn valid_map(path: &str, what: &str, m: &MarkedMap) -> NodeResult {
  m.validate().or_else(|v| fail(path, format!("{what} is not a marked map: {v}")))
}

/// Verifies bottom-up; `claimed`, when given, must agree with the root's stated map.
pub fn check_certificate(cert: &Certificate, claimed: Option<&MarkedMap>) -> CertVerdict {
  let nodes = cert.node_count();
  let mut result = check_node(cert, "root");
  if result.is_ok() {
    if let Some(m) = claimed {
      if !arrow_iso(m, &cert.claimed).is_iso() {
        result = fail("root", "the certificate is for a different map");
      }
    }
  }
  match result {
    Ok(()) => CertVerdict { valid: true, failing_node: None, reason: None, nodes },
    Err((p, r)) => CertVerdict { valid: false, failing_node: Some(p), reason: Some(r), nodes },
  }
}

fn check_node(cert: &Certificate, path: &str) -> NodeResult {
  let path = format!("{path}/{}", cert.node.kind());
  let path = path.as_str();
  let class = cert.class;
  let children: Vec<&Certificate> = match &cert.node {
    Node::Generator(_) => Vec::new(),
    Node::Pushout { child, .. } | Node::Retract { child, .. } | Node::PushoutProduct { child, .. } => vec![child],
    Node::Composite(cs) | Node::Coproduct(cs) => cs.iter().collect(),
  };
  for (i, c) in children.iter().enumerate() {
    if c.class != class {
      return fail(path, format!("child {i} is certified in {} rather than {class}", c.class));
    }
    check_node(c, &format!("{path}[{i}]"))?;
  }
  let f = &cert.claimed;
  valid_map(path, "the stated map", f)?;
  if !f.is_mono() {
    return fail(path, "the stated map is not a monomorphism");
  }
  if !class.is_marked() && (!f.dom.marked.is_empty() || !f.cod.marked.is_empty()) {
    return fail(path, format!("{class} is a class of unmarked maps"));
  }
  match &cert.node {
    Node::Generator(g) => {
      if !g.allowed_in(class) {
        return fail(path, format!("{} generator {} is not in {class}", g.family(), generator_label(g)));
      }
      if let Generator::SharpProduct { right, cofibration } = g {
        if right.class != AnodyneClass::Right {
          return fail(path, "a sharp-product generator needs a right anodyne certificate");
        }
        check_node(right, &format!("{path}[right]"))?;
        valid_map(path, "the cofibration", cofibration)?;
        if !cofibration.is_mono() {
          return fail(path, "the cofibration is not a monomorphism");
        }
      }
      let inst = g.instance().map_err(|e| (path.to_string(), e.to_string()))?;
      same_arrow(path, f, &inst)
    }
    Node::Pushout { child, attach } => {
      valid_map(path, "the attaching map", attach)?;
      if attach.dom != child.claimed.dom {
        return fail(path, "the attaching map does not start at the domain of the child");
      }
      let (_, _, leg) = marked_pushout(&child.claimed, attach).map_err(|e| (path.to_string(), e.to_string()))?;
      same_arrow(path, f, &leg)
    }
    Node::Composite(cs) => {
      if cs.is_empty() {
        return if f.dom == f.cod && f.map == SimplicialMap::identity(f.dom.space.clone()) { Ok(()) } else { fail(path, "an empty composite states a non-identity") };
      }
      let m = compose_all(cs).map_err(|e| (path.to_string(), e.to_string()))?;
      same_arrow(path, f, &m)
    }
    Node::Retract { child, section, retraction } => check_retract(path, f, &child.claimed, section, retraction),
    Node::PushoutProduct { child, cofibration } => {
      if !class.allows_pushout_product() {
        return fail(path, format!("pushout-product nodes are not allowed in {class}"));
      }
      valid_map(path, "the cofibration", cofibration)?;
      if !cofibration.is_mono() {
        return fail(path, "the cofibration is not a monomorphism");
      }
      let m = pushout_product(&child.claimed, cofibration).map_err(|e| (path.to_string(), e.to_string()))?;
      same_arrow(path, f, &m)
    }
    Node::Coproduct(cs) => {
      if cs.is_empty() {
        return fail(path, "empty coproduct");
      }
      let maps: Vec<MarkedMap> = cs.iter().map(|c| c.claimed.clone()).collect();
      same_arrow(path, f, &marked_coproduct(&maps))
    }
  }
}

fn check_retract(path: &str, f: &MarkedMap, g: &MarkedMap, s: &[MarkedMap; 2], r: &[MarkedMap; 2]) -> NodeResult {
  let ends = [
    ("section on domains", &s[0], &f.dom, &g.dom),
    ("section on codomains", &s[1], &f.cod, &g.cod),
    ("retraction on domains", &r[0], &g.dom, &f.dom),
    ("retraction on codomains", &r[1], &g.cod, &f.cod),
  ];
  for (what, m, dom, cod) in ends {
    if &m.dom != dom || &m.cod != cod {
      return fail(path, format!("{what} has the wrong ends"));
    }
    valid_map(path, what, m)?;
  }
  if f.map.compose(&s[1].map) != s[0].map.compose(&g.map) {
    return fail(path, "the section square does not commute");
  }
  if g.map.compose(&r[1].map) != r[0].map.compose(&f.map) {
    return fail(path, "the retraction square does not commute");
  }
  if s[0].map.compose(&r[0].map) != SimplicialMap::identity(f.dom.space.clone()) {
    return fail(path, "r∘s is not the identity on the domain");
  }
  if s[1].map.compose(&r[1].map) != SimplicialMap::identity(f.cod.space.clone()) {
    return fail(path, "r∘s is not the identity on the codomain");
  }
  Ok(())
}

fn generator_label(g: &Generator) -> String {
  match g {
    Generator::Horn { n, k } => format!("Λ^{n}_{k}"),
    Generator::Cylinder { n } => format!("n = {n}"),
    Generator::JMarking { bound } => format!("at truncation {bound}"),
    _ => String::new(),
  }
}

// ---- deformation retracts

/// `i: A → B` with `r: B → A` and a marked homotopy `h: (Δ¹)^♯ × B → B`
/// from the identity to `i∘r`, constant on `A`.
#[derive(Clone, Debug)]
pub struct DeformationRetractData {
  pub i: MarkedMap,
  pub r: MarkedMap,
  pub h: MarkedMap,
}

/// `(Δ¹)^♯ × B` as used for homotopies.
pub fn cylinder(b: &MarkedSet) -> (MarkedSet, Product) { marked_product(&endpoint_inclusion().cod, b) }

fn at_end(x: &MarkedSet, t: usize, p: &Product) -> SimplicialMap {
  let d1 = endpoint_inclusion().cod.space;
  pair_map(&SimplicialMap::constant(x.space.clone(), d1, CellId::new(0, t)), &SimplicialMap::identity(x.space.clone()), p)
}

impl DeformationRetractData {
  pub fn check(&self) -> Result<()> {
    let (i, r, h) = (&self.i, &self.r, &self.h);
    for (what, m) in [("i", i), ("r", r), ("h", h)] {
      m.validate().map_err(|v| Error::Invalid(format!("{what}: {v}")))?;
    }
    if !i.is_mono() {
      return invalid("i is not a monomorphism");
    }
    let (cyl, p) = cylinder(&i.cod);
    if r.dom != i.cod || r.cod != i.dom || h.dom != cyl || h.cod != i.cod {
      return invalid("the maps do not have the ends of a deformation retract");
    }
    if i.map.compose(&r.map) != SimplicialMap::identity(i.dom.space.clone()) {
      return invalid("r∘i is not the identity");
    }
    if at_end(&i.cod, 0, &p).compose(&h.map) != SimplicialMap::identity(i.cod.space.clone()) {
      return invalid("h does not start at the identity");
    }
    if at_end(&i.cod, 1, &p).compose(&h.map) != r.map.compose(&i.map) {
      return invalid("h does not end at i∘r");
    }
    let (_, pa) = cylinder(&i.dom);
    let d1 = SimplicialMap::identity(endpoint_inclusion().cod.space);
    let on_a = crate::constructions::product_map(&d1, &i.map, &pa, &p).compose(&h.map);
    if on_a != pa.pr2.compose(&i.map) {
      return invalid("h is not constant on A");
    }
    Ok(())
  }

  /// `{1} → (Δ¹)^♯` with `r` constant and `h(t, b) = max(t, b)`.
  pub fn endpoint() -> Self { Self::final_vertex(1) }

  /// `{n} → (Δ^n)^♯` with `r` constant and `h(t, b) = n` for `t = 1`, else `b`.
  pub fn final_vertex(n: usize) -> Self {
    let delta = Arc::new(simplex(n));
    let pt = point_set();
    let i = if n == 1 {
      endpoint_inclusion()
    } else {
      MarkedMap::new(MarkedSet::sharp(pt.clone()), MarkedSet::sharp(delta.clone()), SimplicialMap::constant(pt, delta, CellId::new(0, n))).expect("vertex inclusion")
    };
    let b = i.cod.clone();
    let r = MarkedMap::unchecked(b.clone(), i.dom.clone(), SimplicialMap::constant(b.space.clone(), i.dom.space.clone(), CellId::new(0, 0)));
    let (cyl, p) = cylinder(&b);
    let coord = |v: CellId| (p.pr1.cell_image(v).cell.index, p.pr2.cell_image(v).cell.index);
    let d1 = b.space.clone();
    let map = SimplicialMap::from_vertices(
      cyl.space.clone(),
      d1.clone(),
      |v| {
        let (t, x) = coord(v);
        CellId::new(0, if t == 1 { n } else { x })
      },
      |vs| simplex_with_vertices(&d1, n, &vs.iter().map(|v| v.index).collect::<Vec<_>>()),
    )
    .expect("the homotopy is monotone");
    Self { h: MarkedMap::unchecked(cyl, b, map), i, r }
  }
}

/// `{1} → (Δ¹)^♯` as a marked right anodyne generator: the sharpened right
/// horn `Λ¹₁ → Δ¹` times `∅ → Δ⁰`.
pub fn endpoint_certificate() -> Result<Certificate> {
  let right = Certificate::horn(AnodyneClass::Right, 1, 1)?;
  let g = Generator::SharpProduct { right: Box::new(right), cofibration: boundary_inclusion(0) };
  Ok(Certificate { class: AnodyneClass::MarkedRight, claimed: endpoint_inclusion(), node: Node::Generator(g) })
}

/// Exhibits `i` as a retract of `({1} → (Δ¹)^♯) ⊠ i`.
pub fn retract_from_deformation(d: &DeformationRetractData) -> Result<Certificate> {
  d.check()?;
  let i = &d.i;
  if i.dom == i.cod && i.map == SimplicialMap::identity(i.dom.space.clone()) {
    return Ok(Certificate::identity(AnodyneClass::MarkedRight, i.dom.clone()));
  }
  let e = endpoint_certificate()?;
  let parts = pushout_product_parts(&e.claimed, i)?;
  let d1 = e.claimed.cod.space.clone();
  let zero = |x: &MarkedSet| SimplicialMap::constant(x.space.clone(), d1.clone(), CellId::new(0, 0));
  let id = |x: &MarkedSet| SimplicialMap::identity(x.space.clone());
  // A → Δ¹×A → P and B → Δ¹×B, both at 0
  let s_dom = pair_map(&zero(&i.dom), &id(&i.dom), &parts.right).compose(&parts.from_right.map);
  let s_cod = pair_map(&zero(&i.cod), &id(&i.cod), &parts.top);
  let p = &parts.map.dom;
  let r_dom = pushout_mediating(&p.space, &parts.from_left.map, &parts.from_right.map, &parts.left.pr2.compose(&d.r.map), &parts.right.pr2)?;
  let section = [MarkedMap::new(i.dom.clone(), p.clone(), s_dom)?, MarkedMap::new(i.cod.clone(), parts.map.cod.clone(), s_cod)?];
  let retraction = [MarkedMap::new(p.clone(), i.dom.clone(), r_dom)?, MarkedMap::new(parts.map.cod.clone(), i.cod.clone(), d.h.map.clone())?];
  let child = pp_certificate(e, i.clone())?;
  Ok(Certificate { class: AnodyneClass::MarkedRight, claimed: i.clone(), node: Node::Retract { child: Box::new(child), section, retraction } })
}

// ---- shipped certificates

/// Each cylinder generator certified over the sharp-product family.
pub fn small_over_sharp(max_n: usize) -> Result<Vec<(String, Certificate, MarkedMap)>> {
  let mut out = Vec::new();
  let right = Certificate::horn(AnodyneClass::Right, 1, 1)?;
  let mut cases: Vec<(String, Generator, MarkedMap)> = (0..=max_n).map(|n| (format!("cylinder({n})"), Generator::Cylinder { n }, boundary_inclusion(n))).collect();
  cases.push(("cylinder-marking".into(), Generator::CylinderMarking, marking_inclusion()));
  for (name, small, cof) in cases {
    let target = small.instance()?;
    let g = Generator::SharpProduct { right: Box::new(right.clone()), cofibration: cof };
    out.push((name, Certificate { class: AnodyneClass::MarkedRight, claimed: target.clone(), node: Node::Generator(g) }, target));
  }
  Ok(out)
}

/// Sharp-product generators whose right anodyne part is a cylinder
/// `({1} → Δ¹) ⊠ (∂Δ^n → Δ^n)`, certified over the cylinder families by
/// rewriting as `({1} → (Δ¹)^♯) ⊠ (i^♯ ⊠ k)`.
pub fn sharp_over_small(max_n: usize) -> Result<Vec<(String, Certificate, MarkedMap)>> {
  let mut out = Vec::new();
  let ks = [("∅→Δ⁰", boundary_inclusion(0)), ("∂Δ¹→Δ¹", boundary_inclusion(1)), ("marking", marking_inclusion())];
  for n in 0..=max_n {
    let i = boundary_inclusion(n);
    let j = pp_certificate(Certificate::horn(AnodyneClass::Right, 1, 1)?, i.clone())?;
    for (kname, k) in &ks {
      let target = Generator::SharpProduct { right: Box::new(j.clone()), cofibration: k.clone() }.instance()?;
      let base = Certificate::generator(AnodyneClass::MarkedRightSmall, Generator::Cylinder { n: 0 })?;
      let cert = pp_certificate(base, pushout_product(&sharpen(&i), k)?)?;
      out.push((format!("sharp-product(cylinder({n}), {kname})"), cert, target));
    }
  }
  Ok(out)
}

/// `J^♭ → J^♯` as the cobase change of `K^♭ → K^♯` along `K → J`.
pub fn k_pushout_certificate(d: usize) -> Result<(Certificate, MarkedMap)> {
  let (k, _) = complex_k();
  let j = Arc::new(interval_j(d));
  let attach = MarkedMap::flat(k_to_j(&k, &j)?);
  let cert = Certificate::pushout(Certificate::generator(AnodyneClass::CartesianK, Generator::KMarking)?, attach)?;
  let target = MarkedMap::unchecked(MarkedSet::flat(j.clone()), MarkedSet::sharp(j.clone()), SimplicialMap::identity(j));
  Ok((cert, target))
}

/// All certificates shipped with the library, with the map each is for.
pub fn shipped_certificates(d: usize) -> Result<Vec<(String, Certificate, MarkedMap)>> {
  let mut out = Vec::new();
  let inner = Certificate::horn(AnodyneClass::Inner, 2, 1)?;
  out.push(("inner horn Λ²₁".to_string(), inner.clone(), inner.claimed.clone()));
  let right = Certificate::horn(AnodyneClass::Right, 2, 2)?;
  out.push(("right horn Λ²₂".to_string(), right.clone(), right.claimed.clone()));
  let two = Certificate::coproduct(AnodyneClass::Inner, vec![inner.clone(), Certificate::horn(AnodyneClass::Inner, 3, 1)?])?;
  out.push(("Λ²₁ ⊔ Λ³₁".to_string(), two.clone(), two.claimed.clone()));
  let edge_pair = Certificate::horn(AnodyneClass::Right, 1, 1)?;
  out.push(("{1} → Δ¹".to_string(), edge_pair.clone(), edge_pair.claimed.clone()));
  let cyl = pp_certificate(edge_pair, boundary_inclusion(1))?;
  out.push(("({1} → Δ¹) ⊠ (∂Δ¹ → Δ¹)".to_string(), cyl.clone(), cyl.claimed.clone()));
  for (name, c, t) in small_over_sharp(2)? {
    out.push((name, c, t));
  }
  for (name, c, t) in sharp_over_small(2)? {
    out.push((name, c, t));
  }
  let e = DeformationRetractData::endpoint();
  out.push(("deformation retract {1} → (Δ¹)^♯".to_string(), retract_from_deformation(&e)?, e.i.clone()));
  let (kc, kt) = k_pushout_certificate(d)?;
  out.push((format!("J^♭ → J^♯ at truncation {d}"), kc, kt));
  Ok(out)
}

/// Ten broken certificates, one per kind of defect; the seed picks dimensions.
pub fn corrupted_certificates(seed: u64) -> Result<Vec<(String, Certificate)>> {
  use AnodyneClass::*;
  let mut rng = ChaCha8Rng::seed_from_u64(seed);
  let n = rng.gen_range(2..=3usize);
  let k = rng.gen_range(1..n);
  let mut out = Vec::new();

  let mut retract = retract_from_deformation(&DeformationRetractData::endpoint())?;
  if let Node::Retract { retraction, .. } = &mut retract.node {
    let r = &mut retraction[1];
    r.map = SimplicialMap::constant(r.dom.space.clone(), r.cod.space.clone(), CellId::new(0, rng.gen_range(0..2)));
  }
  out.push(("bad retraction".to_string(), retract));

  let mut illegal = Certificate::horn(Inner, n, 0)?;
  illegal.node = Node::Generator(Generator::Horn { n, k: if rng.gen_bool(0.5) { 0 } else { n } });
  out.push(("outer horn in the inner class".to_string(), illegal));

  let mut wrong = Certificate::horn(Inner, n, k)?;
  wrong.claimed = horn_inclusion(n, 0)?;
  out.push(("stated map differs from the generator".to_string(), wrong));

  let inner = Certificate::horn(Inner, n, k)?;
  let cof = boundary_inclusion(rng.gen_range(0..2));
  let pp_inner = Certificate { class: Inner, claimed: pushout_product(&inner.claimed, &cof)?, node: Node::PushoutProduct { child: Box::new(inner.clone()), cofibration: cof } };
  out.push(("pushout-product in the inner class".to_string(), pp_inner));

  let attach = MarkedMap::flat(SimplicialMap::identity(inner.claimed.cod.space.clone()));
  let bad_attach = Certificate { class: Inner, claimed: inner.claimed.clone(), node: Node::Pushout { child: Box::new(inner.clone()), attach } };
  out.push(("attaching map from the wrong object".to_string(), bad_attach));

  let comp = Certificate { class: Inner, claimed: inner.claimed.clone(), node: Node::Composite(vec![inner.clone(), inner.clone()]) };
  out.push(("composite of non-composable steps".to_string(), comp));

  let collapse = {
    let d1 = Arc::new(simplex(1));
    let pt = Arc::new(simplex(0));
    MarkedMap::flat(SimplicialMap::constant(d1, pt, CellId::new(0, 0)))
  };
  let e = endpoint_certificate()?;
  let non_mono = Certificate { class: MarkedRight, claimed: e.claimed.clone(), node: Node::PushoutProduct { child: Box::new(e), cofibration: collapse } };
  out.push(("pushout-product with a non-monomorphism".to_string(), non_mono));

  let bound = rng.gen_range(2..=4usize);
  let mut jm = Certificate::generator(Cartesian, Generator::JMarking { bound })?;
  jm.class = MarkedRight;
  out.push(("J marking in the marked right class".to_string(), jm));

  let left = Certificate::horn(Left, 1, 0)?;
  let mut bad_right = left.clone();
  bad_right.class = Right;
  let cof = boundary_inclusion(rng.gen_range(0..2));
  let g = Generator::SharpProduct { right: Box::new(bad_right), cofibration: cof };
  let claimed = g.instance()?;
  out.push(("sharp-product over a left horn".to_string(), Certificate { class: MarkedRight, claimed, node: Node::Generator(g) }));

  let mut bad_child = Certificate::horn(Inner, n, k)?;
  bad_child.node = Node::Generator(Generator::Horn { n, k: 0 });
  let cop = Certificate::coproduct(Inner, vec![inner, bad_child])?;
  out.push(("coproduct with an invalid child".to_string(), cop));
  Ok(out)
}

// ---- refutation by lifting

/// A map known to have the right lifting property against a class.
pub struct TestFibration {
  pub name: String,
  pub map: MarkedMap,
}

fn point_set() -> Arc<SimplicialSet> { Arc::new(simplex(0)) }

fn to_point(x: Arc<SimplicialSet>, sharp_base: bool) -> MarkedMap {
  let pt = point_set();
  let cod = if sharp_base { MarkedSet::sharp(pt.clone()) } else { MarkedSet::flat(pt.clone()) };
  MarkedMap::unchecked(MarkedSet::flat(x.clone()), cod, SimplicialMap::constant(x, pt, CellId::new(0, 0)))
}

fn two_points() -> Arc<SimplicialSet> {
  let pt = point_set();
  coproduct_many(&[pt.clone(), pt], &["a", "b"]).0
}

fn vertex_of_interval(v: usize) -> MarkedMap {
  let d1 = Arc::new(simplex(1));
  let name = v.to_string();
  let sub = Arc::new(d1.subcomplex(&[d1.find(&name).unwrap()]).0);
  MarkedMap::flat(face_inclusion(&sub, 1, &d1))
}

/// A cartesian fibration over `Δ¹` with fibres `[1]` over 0 and a point over 1.
fn grothendieck_example() -> (FiniteCategory, crate::category::Grothendieck) {
  let base = FiniteCategory::linear(1);
  let values = vec![FiniteCategory::linear(1), FiniteCategory::linear(0)];
  let action = base
    .morphisms
    .iter()
    .enumerate()
    .map(|(f, _)| if base.is_identity(f) { let v = &values[base.morphisms[f].src]; ((0..v.objects.len()).collect(), (0..v.morphisms.len()).collect()) } else { (vec![1], vec![values[0].identities[1]]) })
    .collect();
  let g = grothendieck(&CatPresheaf { base: base.clone(), values, action }).expect("a strict presheaf");
  (base, g)
}

/// Exact test fibrations for a class, complete through dimension `d`.
pub fn test_fibrations(class: AnodyneClass, d: usize) -> Vec<TestFibration> {
  use AnodyneClass::*;
  let mut out = Vec::new();
  let mut add = |name: &str, map: MarkedMap| out.push(TestFibration { name: name.to_string(), map });
  let j = Arc::new(interval_j(d.max(1)));
  let (base, g) = grothendieck_example();
  if class.is_marked() {
    add("two points over a point", to_point(two_points(), true));
    add("(Δ¹)^♭ over a point", to_point(Arc::new(simplex(1)), true));
    let jm = to_point(j.clone(), true);
    add("J^♯ over a point", MarkedMap::unchecked(MarkedSet::sharp(j), jm.cod, jm.map));
    let v0 = sharpen(&vertex_of_interval(0));
    add("{0} inside (Δ¹)^♯", v0);
    add("Grothendieck construction over Δ¹", g.marked_projection(&base, d.max(1)));
  } else {
    add("two points over a point", to_point(two_points(), false));
    add("J over a point", to_point(j, false));
    match class {
      Right => add("{0} inside Δ¹", vertex_of_interval(0)),
      Left => add("{1} inside Δ¹", vertex_of_interval(1)),
      _ => {
        add("Δ¹ over a point", to_point(Arc::new(simplex(1)), false));
        let (c2, c1) = (FiniteCategory::linear(2), FiniteCategory::linear(1));
        let (n2, n1) = (nerve(&c2, d.max(2)), nerve(&c1, d.max(2)));
        let mors: Vec<usize> = c2
          .morphisms
          .iter()
          .map(|m| {
            let o = |x: usize| usize::from(x == 2);
            c1.hom(o(m.src), o(m.tgt))[0]
          })
          .collect();
        add("Δ² collapsing onto Δ¹", MarkedMap::flat(nerve_functor(&n2, &n1, &[0, 0, 1], &mors)));
        let total = g.marked_projection(&base, d.max(1));
        add("Grothendieck construction over Δ¹", MarkedMap::flat(total.map));
      }
    }
  }
  out
}

#[derive(Clone, Debug)]
pub enum Refutation {
  /// `f` fails to lift against a fibration of the class's right partner
  Refuted { fibration: String, witness: Value },
  Unknown { squares: usize, skipped: Vec<String> },
}

impl Refutation {
  pub fn is_refuted(&self) -> bool { matches!(self, Refutation::Refuted { .. }) }

  pub fn to_json(&self) -> Value {
    match self {
      Refutation::Refuted { fibration, witness } => json!({ "verdict": "refuted", "fibration": fibration, "witness": witness }),
      Refutation::Unknown { squares, skipped } => json!({ "verdict": "unknown", "squares": squares, "skipped": skipped }),
    }
  }
}

fn marked_maps(a: &MarkedSet, x: &MarkedSet, limit: usize) -> Result<Vec<SimplicialMap>> {
  let all = enumerate_maps(&a.space, &x.space, Some(limit))?;
  Ok(all.into_iter().filter(|m| a.marked.iter().all(|&e| x.is_marked(m.cell_image(CellId::new(1, e))))).collect())
}

/// Searches for a commuting square from `f` to a test fibration with no lift.
/// Sound for every fibration complete through `dim B`; `d` is the truncation
/// used for infinite test objects.
pub fn rlp_refute(f: &MarkedMap, class: AnodyneClass, d: usize) -> Result<Refutation> {
  if !f.is_mono() {
    return invalid("only monomorphisms can be anodyne");
  }
  const LIMIT: usize = 4096;
  let top_dim = f.cod.space.dim();
  let mut squares = 0;
  let mut skipped = Vec::new();
  for t in test_fibrations(class, d) {
    let p = &t.map;
    if !p.dom.space.complete_through(top_dim) || !p.cod.space.complete_through(top_dim) {
      skipped.push(t.name.clone());
      continue;
    }
    let bottoms = marked_maps(&f.cod, &p.cod, LIMIT)?;
    let tops = marked_maps(&f.dom, &p.dom, LIMIT)?;
    for bottom in &bottoms {
      let along = f.map.compose(bottom);
      for top in tops.iter().filter(|top| top.compose(&p.map) == along) {
        squares += 1;
        let lp = LiftingProblem::marked(f, p, top.clone(), bottom.clone())?;
        if let LiftOutcome::NoLift { .. } = lp.solve()? {
          let witness = json!({ "top": map_images_brief(top), "bottom": map_images_brief(bottom) });
          return Ok(Refutation::Refuted { fibration: t.name, witness });
        }
      }
    }
  }
  Ok(Refutation::Unknown { squares, skipped })
}

// ---- JSON

fn generator_to_json(g: &Generator) -> Value {
  let mut v = json!({ "family": g.family() });
  match g {
    Generator::Horn { n, k } => {
      v["n"] = json!(n);
      v["k"] = json!(k);
    }
    Generator::SharpProduct { right, cofibration } => {
      v["right"] = right.to_json();
      v["cofibration"] = marked_map_to_json(cofibration);
    }
    Generator::Cylinder { n } => v["n"] = json!(n),
    Generator::JMarking { bound } => v["bound"] = json!(bound),
    Generator::CylinderMarking | Generator::KMarking => {}
  }
  v
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> { v.get(key).ok_or_else(|| Error::Invalid(format!("certificate is missing \"{key}\""))) }

fn usize_field(v: &Value, key: &str) -> Result<usize> {
  field(v, key)?.as_u64().map(|x| x as usize).ok_or_else(|| Error::Invalid(format!("\"{key}\" must be a non-negative integer")))
}

fn generator_from_json(v: &Value) -> Result<Generator> {
  let family = field(v, "family")?.as_str().unwrap_or("");
  Ok(match family {
    "horn" => Generator::Horn { n: usize_field(v, "n")?, k: usize_field(v, "k")? },
    "sharp-product" => Generator::SharpProduct { right: Box::new(Certificate::from_json(field(v, "right")?)?), cofibration: marked_map_from_json(field(v, "cofibration")?)? },
    "cylinder" => Generator::Cylinder { n: usize_field(v, "n")? },
    "cylinder-marking" => Generator::CylinderMarking,
    "j-marking" => Generator::JMarking { bound: usize_field(v, "bound")? },
    "k-marking" => Generator::KMarking,
    other => return invalid(format!("unknown generator family {other}")),
  })
}

fn children_from_json(v: &Value) -> Result<Vec<Certificate>> {
  field(v, "children")?.as_array().ok_or_else(|| Error::Invalid("\"children\" must be a list".into()))?.iter().map(Certificate::from_json).collect()
}

fn pair_from_json(v: &Value, key: &str) -> Result<[MarkedMap; 2]> {
  let a = field(v, key)?.as_array().filter(|a| a.len() == 2).ok_or_else(|| Error::Invalid(format!("\"{key}\" must list two maps")))?;
  Ok([marked_map_from_json(&a[0])?, marked_map_from_json(&a[1])?])
}

impl Certificate {
  pub fn to_json(&self) -> Value {
    let node = match &self.node {
      Node::Generator(g) => json!({ "kind": "generator", "generator": generator_to_json(g) }),
      Node::Pushout { child, attach } => json!({ "kind": "pushout", "child": child.to_json(), "attach": marked_map_to_json(attach) }),
      Node::Composite(cs) => json!({ "kind": "composite", "children": cs.iter().map(Certificate::to_json).collect::<Vec<_>>() }),
      Node::Retract { child, section, retraction } => json!({
        "kind": "retract",
        "child": child.to_json(),
        "section": section.iter().map(marked_map_to_json).collect::<Vec<_>>(),
        "retraction": retraction.iter().map(marked_map_to_json).collect::<Vec<_>>(),
      }),
      Node::PushoutProduct { child, cofibration } => json!({ "kind": "pushout-product", "child": child.to_json(), "cofibration": marked_map_to_json(cofibration) }),
      Node::Coproduct(cs) => json!({ "kind": "coproduct", "children": cs.iter().map(Certificate::to_json).collect::<Vec<_>>() }),
    };
    json!({ "class": self.class.name(), "claimed": marked_map_to_json(&self.claimed), "node": node })
  }

  pub fn from_json(v: &Value) -> Result<Self> {
    let class = AnodyneClass::parse(field(v, "class")?.as_str().unwrap_or(""))?;
    let claimed = marked_map_from_json(field(v, "claimed")?)?;
    let n = field(v, "node")?;
    let child = || -> Result<Box<Certificate>> { Ok(Box::new(Certificate::from_json(field(n, "child")?)?)) };
    let node = match field(n, "kind")?.as_str().unwrap_or("") {
      "generator" => Node::Generator(generator_from_json(field(n, "generator")?)?),
      "pushout" => Node::Pushout { child: child()?, attach: marked_map_from_json(field(n, "attach")?)? },
      "composite" => Node::Composite(children_from_json(n)?),
      "retract" => Node::Retract { child: child()?, section: pair_from_json(n, "section")?, retraction: pair_from_json(n, "retraction")? },
      "pushout-product" => Node::PushoutProduct { child: child()?, cofibration: marked_map_from_json(field(n, "cofibration")?)? },
      "coproduct" => Node::Coproduct(children_from_json(n)?),
      other => return invalid(format!("unknown node kind {other}")),
    };
    Ok(Self { class, claimed, node })
  }
}

#[cfg(test)]
mod tests {
  use super::*;

  fn valid(c: &Certificate) -> bool {
    let v = check_certificate(c, None);
    assert!(v.valid || v.failing_node.is_some());
    v.valid
  }

  #[test]
  fn inner_horn_generator() {
    let c = Certificate::horn(AnodyneClass::Inner, 2, 1).unwrap();
    assert!(valid(&c));
    assert!(!valid(&Certificate::horn(AnodyneClass::Inner, 2, 0).unwrap()));
  }

  #[test]
  fn endpoint_retract_validates() {
    let d = DeformationRetractData::endpoint();
    d.check().unwrap();
    let c = retract_from_deformation(&d).unwrap();
    let v = check_certificate(&c, Some(&d.i));
    assert!(v.valid, "{v:?}");
  }

  #[test]
  fn final_vertex_retracts_validate() {
    for n in 2..=3 {
      let d = DeformationRetractData::final_vertex(n);
      d.check().unwrap();
      let v = check_certificate(&retract_from_deformation(&d).unwrap(), Some(&d.i));
      assert!(v.valid, "{n}: {v:?}");
    }
  }

  #[test]
  fn homotopy_with_wrong_end_is_rejected() {
    let mut d = DeformationRetractData::endpoint();
    // the constant homotopy never reaches i∘r
    d.h.map = cylinder(&d.i.cod).1.pr2;
    assert!(d.check().is_err());
  }

  #[test]
  fn identity_retract() {
    let x = MarkedSet::sharp(Arc::new(simplex(1)));
    let (cyl, p) = cylinder(&x);
    let d = DeformationRetractData { i: MarkedMap::identity(x.clone()), r: MarkedMap::identity(x.clone()), h: MarkedMap::unchecked(cyl, x.clone(), p.pr2.clone()) };
    let c = retract_from_deformation(&d).unwrap();
    assert!(matches!(c.node, Node::Composite(ref v) if v.is_empty()));
    assert!(valid(&c));
  }

  #[test]
  fn pp_with_point_is_unit() {
    let e = endpoint_certificate().unwrap();
    let c = pp_certificate(e.clone(), boundary_inclusion(0)).unwrap();
    assert!(arrow_iso(&c.claimed, &e.claimed).is_iso());
    assert!(valid(&c));
  }

  #[test]
  fn k_pushout_presents_j_sharp() {
    let (c, target) = k_pushout_certificate(4).unwrap();
    let v = check_certificate(&c, Some(&target));
    assert!(v.valid, "{v:?}");
  }

  #[test]
  fn corrupted_certificates_fail() {
    for seed in 0..3 {
      for (name, c) in corrupted_certificates(seed).unwrap() {
        let v = check_certificate(&c, None);
        assert!(!v.valid, "{name} passed");
      }
    }
  }

  #[test]
  fn json_round_trip() {
    let c = retract_from_deformation(&DeformationRetractData::endpoint()).unwrap();
    let back = Certificate::from_json(&c.to_json()).unwrap();
    assert!(valid(&back));
  }

  #[test]
  fn refutations() {
    let f = boundary_inclusion(1);
    assert!(rlp_refute(&f, AnodyneClass::Right, 3).unwrap().is_refuted());
    let g = horn_inclusion(2, 2).unwrap();
    assert!(!rlp_refute(&g, AnodyneClass::Right, 3).unwrap().is_refuted());
    assert!(rlp_refute(&marking_inclusion(), AnodyneClass::Cartesian, 3).unwrap().is_refuted());
  }
}

#[cfg(test)]
mod shipped {
  use super::*;

  #[test]
  fn shipped_certificates_validate_and_survive_refutation() {
    for (name, c, target) in shipped_certificates(4).unwrap() {
      let v = check_certificate(&c, Some(&target));
      assert!(v.valid, "{name}: {v:?}");
      let r = rlp_refute(&target, c.class, 4).unwrap();
      assert!(!r.is_refuted(), "{name} refuted: {:?}", r.to_json());
    }
  }
}
