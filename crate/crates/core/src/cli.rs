//! The `msset` command line: every operation as a subcommand printing JSON,
//! with exit codes 0 (true), 1 (refuted), 2 (inconclusive), 3 (invalid input).

use crate::anodyne::{check_certificate, rlp_refute, shipped_certificates, AnodyneClass, Certificate};
use crate::corpus::{Corpus, PreorderSpec};
use crate::error::{Error, Result};
use crate::homology::{components, homology, induced_homology, is_homology_iso, pi0_bijection};
use crate::homspace::{bousfield_kan_hocolim, comparison_map, q_complex, Diagram, QMethod};
use crate::iso::{iso_check, marked_iso_check, IsoVerdict};
use crate::json::{map_from_images_json, map_images_brief, map_to_json, marked_from_json, marked_map_from_json, marked_map_to_json, marked_to_json, set_to_json, to_dot};
use crate::lifting::{classify_fibration, is_marked_cartesian_fibration, is_p_cartesian, FibrationKind, LiftOutcome, LiftingProblem, Verdict};
use crate::map::{MarkedMap, MarkedSet, SimplicialMap};
use crate::necklace::{cube_oracle, mapping_complex, PathCategory};
use crate::simplex::{CellId, Simplex};
use crate::standard::{boundary, complex_k, horn, interval_j, simplex};
use crate::sset::SimplicialSet;
use crate::straighten::{kan_extend, straighten, straighten_marked, unstraighten, SimplicialFunctor};
use crate::suite::{run_criterion, summary_json};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

pub const EXIT_OK: i32 = 0;
pub const EXIT_REFUTED: i32 = 1;
pub const EXIT_INCONCLUSIVE: i32 = 2;
pub const EXIT_INVALID: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "msset", version, about = "Exact computation with finite marked simplicial sets")]
pub struct Cli {
  #[command(flatten)]
  pub global: Global,
  #[command(subcommand)]
  pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
  /// dimension bound D for every truncated computation
  #[arg(long, global = true, default_value_t = 4)]
  pub dim_bound: usize,
  /// seed for randomized suites
  #[arg(long, global = true, default_value_t = 0)]
  pub seed: u64,
  #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
  pub format: Format,
  /// vertex bound for necklace enumeration
  #[arg(long, global = true)]
  pub bead_bound: Option<usize>,
  /// no log lines on standard error
  #[arg(long, global = true)]
  pub quiet: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
  Json,
  Dot,
}

/// A simplicial set: a corpus base name or a JSON file.
#[derive(Args, Debug, Clone)]
pub struct SetArg {
  /// corpus base name
  #[arg(long)]
  pub base: Option<String>,
  /// simplicial set JSON file
  #[arg(long)]
  pub input: Option<String>,
}

#[derive(Args, Debug, Clone)]
pub struct PairArg {
  #[command(flatten)]
  pub set: SetArg,
  #[arg(long)]
  pub from: String,
  #[arg(long)]
  pub to: String,
}

#[derive(Subcommand, Debug)]
pub enum Command {
  /// Build a standard complex: simplex N, boundary N, horn N K, interval-j D, complex-k, or a corpus base
  Build {
    kind: String,
    args: Vec<String>,
  },
  /// Necklace mapping complex F(s, t)
  MapComplex(PairArg),
  /// Nerve of the poset of subsets of [i, j] containing both ends
  CubeOracle {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    i: usize,
    #[arg(long)]
    j: usize,
  },
  /// Straightening of a map (a corpus map name or a map JSON file)
  Straighten {
    #[arg(long)]
    map: String,
    /// use the domain marking (corpus marking or file marking) over the sharp base
    #[arg(long)]
    marked: bool,
  },
  /// Unstraightening of the straightening of a map, or of the terminal functor over a base
  Unstraighten {
    #[arg(long)]
    map: Option<String>,
    #[command(flatten)]
    set: SetArg,
  },
  /// Left Kan extension of Str(q) along p, where q lands in the domain of p
  KanExtend {
    #[arg(long)]
    along: String,
    #[arg(long)]
    of: String,
  },
  /// Q^n through the dimension bound
  Qcomplex {
    #[arg(long)]
    n: usize,
    #[arg(long, default_value = "both")]
    method: String,
  },
  /// Q-realization of a simplicial set
  RealizeQ(SetArg),
  /// Sing_Q of a simplicial set
  SingQ(SetArg),
  /// Comparison of the right mapping space with the necklace mapping complex, by homology
  Compare(PairArg),
  /// Bousfield–Kan homotopy colimit of a diagram file
  Hocolim {
    #[arg(long)]
    diagram: String,
  },
  /// Solve a lifting problem file
  Lift {
    #[arg(long)]
    problem: String,
  },
  /// Check a fibration property: inner, left, right, trivial or marked-cartesian
  CheckFibration {
    #[arg(long)]
    map: String,
    #[arg(long)]
    kind: String,
  },
  /// Check whether an edge is p-cartesian
  CheckCartesianEdge {
    #[arg(long)]
    map: String,
    #[arg(long)]
    edge: String,
  },
  /// Check a certificate file
  CertCheck {
    #[arg(long)]
    cert: String,
    /// also look for a refuting test fibration
    #[arg(long)]
    refute: bool,
  },
  /// List the shipped certificates, or print one
  CertCatalog {
    #[arg(long)]
    emit: Option<String>,
  },
  /// Integral homology through the dimension bound minus one
  Homology(SetArg),
  /// Chain maps and the homology-isomorphism verdict of a map
  Induced {
    #[arg(long)]
    map: String,
    #[arg(long)]
    range: Option<usize>,
  },
  /// Isomorphism search between two simplicial sets
  Iso {
    #[arg(long)]
    left: String,
    #[arg(long)]
    right: String,
  },
  /// Validate a simplicial set or map file
  Validate {
    #[arg(long)]
    input: String,
  },
  /// Run the acceptance suite
  CorpusRun {
    /// criteria to run (default: all)
    #[arg(long, value_delimiter = ',')]
    criteria: Vec<usize>,
  },
}

/// Output of a command: the JSON (or DOT text) and the exit code.
pub struct Outcome {
  pub output: String,
  pub code: i32,
}

pub fn run(cli: &Cli) -> Outcome {
  match dispatch(cli) {
    Ok((v, code)) => Outcome { output: v, code },
    Err(e) => {
      let (v, code) = match &e {
        Error::Invalid(msg) => (json!({ "error": msg }), EXIT_INVALID),
        Error::Inconclusive { reason, bound } => (json!({ "verdict": "inconclusive", "bound": bound, "reason": reason }), EXIT_INCONCLUSIVE),
      };
      Outcome { output: pretty(&v), code }
    }
  }
}

fn pretty(v: &Value) -> String { serde_json::to_string_pretty(v).expect("JSON values serialize") }

fn log(g: &Global, msg: &str) {
  if !g.quiet {
    eprintln!("{msg}");
  }
}

fn read_json(path: &str) -> Result<Value> {
  let text = std::fs::read_to_string(path).map_err(|e| Error::Invalid(format!("{path}: {e}")))?;
  serde_json::from_str(&text).map_err(|e| Error::Invalid(format!("{path}: {e}")))
}

fn corpus() -> Result<Corpus> { Corpus::default_corpus() }

fn load_marked(arg: &SetArg) -> Result<MarkedSet> {
  match (&arg.base, &arg.input) {
    (Some(name), None) => Ok(corpus()?.base(name)?.marked.clone()),
    (None, Some(path)) => {
      let m = marked_from_json(&read_json(path)?)?;
      m.space.validate().map_err(|v| Error::Invalid(v.to_string()))?;
      Ok(m)
    }
    _ => Err(Error::Invalid("give exactly one of --base and --input".into())),
  }
}

fn load_set(arg: &SetArg) -> Result<Arc<SimplicialSet>> { Ok(load_marked(arg)?.space) }

/// A named corpus base or a file.
fn load_named_set(s: &str) -> Result<MarkedSet> {
  if Path::new(s).exists() {
    load_marked(&SetArg { base: None, input: Some(s.into()) })
  } else {
    load_marked(&SetArg { base: Some(s.into()), input: None })
  }
}

/// A corpus map (its domain marked as in the corpus, over the sharp codomain)
/// or a map file (markings as given).
fn load_map(s: &str) -> Result<MarkedMap> {
  if Path::new(s).exists() {
    let m = marked_map_from_json(&read_json(s)?)?;
    m.dom.space.validate().map_err(|v| Error::Invalid(format!("domain: {v}")))?;
    m.cod.space.validate().map_err(|v| Error::Invalid(format!("codomain: {v}")))?;
    m.map.validate().map_err(|v| Error::Invalid(v.to_string()))?;
    Ok(m)
  } else {
    corpus()?.marked_map(s)
  }
}

fn vertex(x: &SimplicialSet, name: &str) -> Result<CellId> { x.find(name).filter(|c| c.dim == 0).ok_or_else(|| Error::Invalid(format!("{name} is not a vertex"))) }

fn emit_set(g: &Global, m: &MarkedSet, extra: Value) -> String {
  match g.format {
    Format::Dot => to_dot(m),
    Format::Json => {
      let mut v = marked_to_json(m);
      if let (Value::Object(o), Value::Object(e)) = (&mut v, extra) {
        o.extend(e);
      }
      pretty(&v)
    }
  }
}

fn verdict_code(v: &Verdict) -> i32 { if v.holds() { EXIT_OK } else { EXIT_REFUTED } }

fn dispatch(cli: &Cli) -> Result<(String, i32)> {
  let g = &cli.global;
  let d = g.dim_bound;
  let bb = g.bead_bound;
  let ok = |v: Value| Ok((pretty(&v), EXIT_OK));
  match &cli.command {
    Command::Build { kind, args } => {
      let num = |i: usize| -> Result<usize> { args.get(i).ok_or_else(|| Error::Invalid(format!("{kind} needs more arguments")))?.parse().map_err(|_| Error::Invalid("arguments must be integers".into())) };
      let set: MarkedSet = match kind.as_str() {
        "simplex" => MarkedSet::flat(Arc::new(simplex(num(0)?))),
        "boundary" => MarkedSet::flat(Arc::new(boundary(num(0)?))),
        "horn" => MarkedSet::flat(Arc::new(horn(num(0)?, num(1)?)?)),
        "interval-j" => {
          let bound = if args.is_empty() { d } else { num(0)? };
          if bound == 0 {
            return Err(Error::Invalid("J needs a truncation of at least 1".into()));
          }
          MarkedSet::flat(Arc::new(interval_j(bound)))
        }
        "complex-k" => MarkedSet::flat(complex_k().0),
        "base" => corpus()?.base(args.first().ok_or_else(|| Error::Invalid("base needs a name".into()))?)?.marked.clone(),
        other => return Err(Error::Invalid(format!("unknown kind {other}"))),
      };
      Ok((emit_set(g, &set, json!({ "counts": set.space.counts() })), EXIT_OK))
    }
    Command::MapComplex(p) => {
      let s = load_set(&p.set)?;
      let m = mapping_complex(&s, vertex(&s, &p.from)?, vertex(&s, &p.to)?, d, bb)?;
      let exact = m.is_exact();
      let out = emit_set(g, &MarkedSet::flat(m.set.clone()), json!({ "counts": m.set.counts(), "exact": exact }));
      Ok((out, if exact { EXIT_OK } else { EXIT_INCONCLUSIVE }))
    }
    Command::CubeOracle { n, i, j } => {
      if i > j || j > n {
        return Err(Error::Invalid("need i ≤ j ≤ n".into()));
      }
      let x = cube_oracle(*n, *i, *j, d)?;
      Ok((emit_set(g, &MarkedSet::flat(x.clone()), json!({ "counts": x.counts() })), EXIT_OK))
    }
    Command::Straighten { map, marked } => {
      let p = load_map(map)?;
      let st = if *marked {
        straighten_marked(&MarkedMap::new(p.dom.clone(), MarkedSet::sharp(p.map.cod.clone()), p.map.clone())?, d, bb)?
      } else {
        straighten(&p.map, d, bb)?
      };
      ok(st.functor.to_json())
    }
    Command::Unstraighten { map, set } => {
      let functor: SimplicialFunctor = match map {
        Some(m) => {
          let p = load_map(m)?;
          straighten_marked(&MarkedMap::new(p.dom.clone(), MarkedSet::sharp(p.map.cod.clone()), p.map.clone())?, d, bb)?.functor
        }
        None => {
          let s = load_set(set)?;
          SimplicialFunctor::terminal(Arc::new(PathCategory::new(&s, d, bb)?), d)?
        }
      };
      let un = unstraighten(&functor, d)?;
      match g.format {
        Format::Dot => Ok((to_dot(&un.set), EXIT_OK)),
        Format::Json => ok(json!({ "set": marked_to_json(&un.set), "counts": un.set.space.counts(), "projection": map_images_brief(&un.projection) })),
      }
    }
    Command::KanExtend { along, of } => {
      let p = load_map(along)?;
      let q = load_map(of)?;
      if q.map.cod != p.map.dom {
        return Err(Error::Invalid("the second map must land in the domain of the first".into()));
      }
      let st = straighten_marked(&MarkedMap::new(q.dom.clone(), MarkedSet::sharp(q.map.cod.clone()), q.map.clone())?, d, bb)?;
      let target = Arc::new(PathCategory::new(&p.map.cod, d, bb)?);
      let ext = kan_extend(&p.map, &st.functor, target, d)?;
      ok(ext.functor.to_json())
    }
    Command::Qcomplex { n, method } => {
      let m: QMethod = method.parse()?;
      let x = q_complex(*n, d, m)?;
      Ok((emit_set(g, &MarkedSet::flat(x.clone()), json!({ "counts": x.counts() })), EXIT_OK))
    }
    Command::RealizeQ(a) => {
      let x = load_set(a)?;
      let r = crate::homspace::realize_q(&x, d)?;
      Ok((emit_set(g, &MarkedSet::flat(r.set.clone()), json!({ "counts": r.set.counts() })), EXIT_OK))
    }
    Command::SingQ(a) => {
      let x = load_set(a)?;
      let s = crate::homspace::sing_q(&x, d)?;
      Ok((emit_set(g, &MarkedSet::flat(s.clone()), json!({ "counts": s.counts() })), EXIT_OK))
    }
    Command::Compare(p) => {
      let s = load_set(&p.set)?;
      let bound = match (&p.set.base, bb) {
        (Some(name), None) => corpus()?.base(name)?.bead_bound,
        _ => bb,
      };
      let range = d.saturating_sub(1);
      let c = comparison_map(&s, vertex(&s, &p.from)?, vertex(&s, &p.to)?, d, bound)?;
      let r = is_homology_iso(&c.map, range)?;
      let pi0 = pi0_bijection(&c.map);
      let verdict = if r.iso { "homology-iso" } else { "not-homology-iso" };
      let v = json!({ "verdict": verdict, "range": range, "first_failure": r.first_failure, "pi0_bijection": pi0, "exact": c.target.is_exact() });
      Ok((pretty(&v), if r.iso && pi0 { EXIT_OK } else { EXIT_REFUTED }))
    }
    Command::Hocolim { diagram } => {
      let f = diagram_from_json(&read_json(diagram)?)?;
      let h = bousfield_kan_hocolim(&f, d)?;
      ok(json!({ "set": set_to_json(&h.set), "counts": h.set.counts(), "colimit": set_to_json(&h.colimit), "augmentation": map_images_brief(&h.augmentation) }))
    }
    Command::Lift { problem } => {
      let v = read_json(problem)?;
      let lp = lifting_problem_from_json(&v)?;
      match lp.solve()? {
        LiftOutcome::Lift(l) => Ok((pretty(&json!({ "verdict": "holds", "bound": d, "witness": map_images_brief(&l) })), EXIT_OK)),
        LiftOutcome::NoLift { nodes } => Ok((pretty(&json!({ "verdict": "fails", "bound": d, "nodes": nodes })), EXIT_REFUTED)),
      }
    }
    Command::CheckFibration { map, kind } => {
      let p = load_map(map)?;
      let v = if kind == "marked-cartesian" {
        is_marked_cartesian_fibration(&MarkedMap::new(p.dom.clone(), MarkedSet::sharp(p.map.cod.clone()), p.map.clone())?, d)?
      } else {
        classify_fibration(&p.map, kind.parse::<FibrationKind>()?, d)?
      };
      Ok((pretty(&v.to_json()), verdict_code(&v)))
    }
    Command::CheckCartesianEdge { map, edge } => {
      let p = load_map(map)?;
      let e = p.map.dom.find(edge).filter(|c| c.dim == 1).ok_or_else(|| Error::Invalid(format!("{edge} is not an edge")))?;
      let v = is_p_cartesian(&p.map, &Simplex::cell(e), d)?;
      Ok((pretty(&v.to_json()), verdict_code(&v)))
    }
    Command::CertCheck { cert, refute } => {
      let c = Certificate::from_json(&read_json(cert)?)?;
      let v = check_certificate(&c, None);
      let mut out = v.to_json();
      let mut code = if v.valid { EXIT_OK } else { EXIT_REFUTED };
      if *refute {
        let r = rlp_refute(&c.claimed, c.class, d)?;
        if r.is_refuted() {
          code = EXIT_REFUTED;
        }
        out["refutation"] = r.to_json();
      }
      Ok((pretty(&out), code))
    }
    Command::CertCatalog { emit } => {
      let all = shipped_certificates(d)?;
      match emit {
        Some(name) => {
          let (_, c, _) = all.iter().find(|(n, _, _)| n == name).ok_or_else(|| Error::Invalid(format!("no shipped certificate {name}")))?;
          ok(c.to_json())
        }
        None => {
          let list: Vec<Value> = all.iter().map(|(n, c, t)| json!({ "name": n, "class": c.class.name(), "nodes": c.node_count(), "valid": check_certificate(c, Some(t)).valid })).collect();
          let classes: BTreeMap<&str, Vec<&str>> = AnodyneClass::ALL.iter().map(|c| (c.name(), c.families())).collect();
          ok(json!({ "certificates": list, "classes": classes }))
        }
      }
    }
    Command::Homology(a) => {
      let x = load_set(a)?;
      let top = d.saturating_sub(1);
      let h = homology(&x, top)?;
      ok(json!({ "degrees": h.degrees, "components": components(&x).0, "acyclic": h.is_acyclic() }))
    }
    Command::Induced { map, range } => {
      let f = load_map(map)?.map;
      let range = range.unwrap_or(d.saturating_sub(1));
      let mats: Vec<String> = induced_homology(&f, range).iter().map(|m| m.to_dense_text()).collect();
      let r = is_homology_iso(&f, range)?;
      let v = json!({ "matrices": mats, "iso": r.iso, "range": r.range, "first_failure": r.first_failure });
      Ok((pretty(&v), if r.iso { EXIT_OK } else { EXIT_REFUTED }))
    }
    Command::Iso { left, right } => {
      let x = load_named_set(left)?;
      let y = load_named_set(right)?;
      let v = if x.marked.is_empty() && y.marked.is_empty() { iso_check(&x.space, &y.space) } else { marked_iso_check(&x, &y) };
      match v {
        IsoVerdict::Isomorphic(w) => Ok((pretty(&json!({ "isomorphic": true, "witness": map_images_brief(&w) })), EXIT_OK)),
        IsoVerdict::NotIsomorphic(why) => Ok((pretty(&json!({ "isomorphic": false, "reason": why })), EXIT_REFUTED)),
      }
    }
    Command::Validate { input } => {
      let v = read_json(input)?;
      let report = validate_value(&v);
      let code = if report["valid"] == json!(true) { EXIT_OK } else { EXIT_INVALID };
      Ok((pretty(&report), code))
    }
    Command::CorpusRun { criteria } => {
      let ids: Vec<usize> = if criteria.is_empty() { (1..=7).collect() } else { criteria.clone() };
      log(g, &format!("corpus-run seed {}", g.seed));
      let mut reports = Vec::new();
      for id in ids {
        let r = run_criterion(id, g.seed);
        log(g, &r.line());
        reports.push(r);
      }
      let v = summary_json(&reports, g.seed);
      let code = if v["passed"] == json!(true) { EXIT_OK } else { EXIT_REFUTED };
      Ok((pretty(&v), code))
    }
  }
}

/// Validation report for a set or a map document.
pub fn validate_value(v: &Value) -> Value {
  let fail = |what: &str, e: String| json!({ "valid": false, "kind": what, "violation": e });
  if v.get("images").is_some() {
    let m = match marked_map_from_json(v) {
      Ok(m) => m,
      Err(e) => return fail("map", e.to_string()),
    };
    for (end, x) in [("domain", &m.dom), ("codomain", &m.cod)] {
      if let Err(e) = x.space.validate() {
        return fail("map", format!("{end}: {e}"));
      }
    }
    match m.validate() {
      Ok(()) => json!({ "valid": true, "kind": "map" }),
      Err(e) => fail("map", e.to_string()),
    }
  } else {
    let m = match marked_from_json(v) {
      Ok(m) => m,
      Err(e) => return fail("set", e.to_string()),
    };
    match m.space.validate().and_then(|_| m.validate()) {
      Ok(()) => json!({ "valid": true, "kind": "set", "counts": m.space.counts() }),
      Err(e) => fail("set", e.to_string()),
    }
  }
}

/// `{"category": {"objects", "relations"}, "values": [set…], "maps": {"a<b": images}}`;
/// identities are implied.
pub fn diagram_from_json(v: &Value) -> Result<Diagram> {
  let spec: PreorderSpec = serde_json::from_value(v.get("category").cloned().unwrap_or(Value::Null)).map_err(|e| Error::Invalid(format!("bad category: {e}")))?;
  let category = spec.category()?;
  let values = v.get("values").and_then(Value::as_array).ok_or_else(|| Error::Invalid("missing \"values\"".into()))?;
  let values = values.iter().map(|x| Ok(marked_from_json(x)?.space)).collect::<Result<Vec<_>>>()?;
  if values.len() != category.objects.len() {
    return Err(Error::Invalid("one value per object is required".into()));
  }
  let maps_v = v.get("maps").cloned().unwrap_or(json!({}));
  let mut maps = Vec::new();
  for (f, m) in category.morphisms.iter().enumerate() {
    let (a, b) = (values[m.src].clone(), values[m.tgt].clone());
    if category.is_identity(f) {
      maps.push(SimplicialMap::identity(a));
      continue;
    }
    let images = maps_v.get(&m.name).ok_or_else(|| Error::Invalid(format!("no map for {}", m.name)))?;
    maps.push(map_from_images_json(a, b, images)?);
  }
  let d = Diagram { category, values, maps };
  d.check()?;
  Ok(d)
}

/// `{"i": map, "p": map, "top": images, "bottom": images}`; markings on `i`
/// and `p` make it a marked problem.
pub fn lifting_problem_from_json(v: &Value) -> Result<LiftingProblem> {
  let get = |k: &str| v.get(k).ok_or_else(|| Error::Invalid(format!("missing \"{k}\"")));
  let i = marked_map_from_json(get("i")?)?;
  let p = marked_map_from_json(get("p")?)?;
  let top = map_from_images_json(i.map.dom.clone(), p.map.dom.clone(), get("top")?)?;
  let bottom = map_from_images_json(i.map.cod.clone(), p.map.cod.clone(), get("bottom")?)?;
  let marked = !i.dom.marked.is_empty() || !i.cod.marked.is_empty() || !p.dom.marked.is_empty() || !p.cod.marked.is_empty();
  if marked {
    LiftingProblem::marked(&i, &p, top, bottom)
  } else {
    LiftingProblem::new(i.map, p.map, top, bottom)
  }
}

/// Serializes a lifting problem in the format read by `lift`.
pub fn lifting_problem_to_json(i: &MarkedMap, p: &MarkedMap, top: &SimplicialMap, bottom: &SimplicialMap) -> Value {
  json!({ "i": marked_map_to_json(i), "p": marked_map_to_json(p), "top": map_to_json(top)["images"], "bottom": map_to_json(bottom)["images"] })
}

pub fn main_with_args<I, T>(args: I) -> i32
where
  I: IntoIterator<Item = T>,
  T: Into<std::ffi::OsString> + Clone,
{
  let cli = match Cli::try_parse_from(args) {
    Ok(c) => c,
    Err(e) => {
      let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
      let _ = e.print();
      return code;
    }
  };
  let out = run(&cli);
  use std::io::Write;
  // a closed pipe downstream is not an error of ours
  let _ = writeln!(std::io::stdout().lock(), "{}", out.output.trim_end());
  out.code
}
