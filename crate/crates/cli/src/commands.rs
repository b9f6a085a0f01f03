use std::fmt::Write;
use std::sync::Arc;

use serde_json::{json, Value};

use qring::assoc::{self, PowerIdentity};
use qring::ideals::{self, IdealHandle};
use qring::quandle::{are_isomorphic, find_homs, QuandleHom};
use qring::units::{self, ScanDomain};
use qring::zlattice::{quotient_shape, IntLattice};
use qring::{catalog, Classification, CoeffRing, Error, Exec, ExtElt, FiniteRack, Result, RingElt};

use crate::render;
use crate::{Command, RunConfig};

pub struct Output {
    pub text: String,
    pub json: Value,
    pub code: u8,
}

impl Output {
    fn ok(text: String, json: Value) -> Self {
        Output { text, json, code: 0 }
    }
}

const SCAN_CAP: usize = 1 << 24;

fn load(key: Option<&str>, cfg: &RunConfig) -> Result<Arc<FiniteRack>> {
    let rack = match (&cfg.file, key) {
        (Some(path), _) => {
            let text =
                std::fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
            FiniteRack::from_json_str(&text)?
        }
        (None, Some(key)) => catalog::lookup(key)?,
        (None, None) => return Err(Error::InvalidInput("give a catalog key or --file".into())),
    };
    Ok(Arc::new(rack))
}

fn ring_or(cfg: &RunConfig, default: CoeffRing) -> CoeffRing {
    cfg.ring.clone().unwrap_or(default)
}

pub fn run(cmd: &Command, cfg: &RunConfig) -> Result<Output> {
    match cmd {
        Command::List => list(),
        Command::Export { key } => export(&load(key.as_deref(), cfg)?),
        Command::Info { key } => info(&load(key.as_deref(), cfg)?),
        Command::Graded { key, k } => graded(&load(key.as_deref(), cfg)?, k.unwrap_or(cfg.max_k)),
        Command::Conjecture { n } => conjecture(n, cfg.max_k),
        Command::Ideal { key, ideal, gens } => {
            let rack = load(key.as_deref(), cfg)?;
            ideal_cmd(&build_ideal(&rack, ideal.as_deref(), gens, cfg)?)
        }
        Command::Partition { key, ideal, gens, orbit_iso } => {
            let rack = load(key.as_deref(), cfg)?;
            partition(&build_ideal(&rack, ideal.as_deref(), gens, cfg)?, *orbit_iso)
        }
        Command::Dictionary { key, target, map, base } => {
            dictionary(&load(key.as_deref(), cfg)?, &catalog::lookup(target)?, map.as_deref(), *base)
        }
        Command::Units { key, element, split } => {
            let rack = load(key.as_deref(), cfg)?;
            let ring = ring_or(cfg, CoeffRing::Int);
            match (element, split) {
                (Some(e), _) => unit_element(&rack, &ring, e),
                (None, true) => split_probe(&rack, &ring),
                (None, false) => unit_scan(&rack, &ring, cfg.radius),
            }
        }
        Command::Center { key, alpha } => center(&load(key.as_deref(), cfg)?, alpha.as_deref()),
        Command::Commutators { ev, eu, depth } => commutators(&ring_or(cfg, CoeffRing::Rat), ev, eu, *depth),
        Command::Assoc { key } => assoc_cmd(&load(key.as_deref(), cfg)?),
        Command::PowerAssoc { key, numeric, symbolic, element } => {
            let rack = load(key.as_deref(), cfg)?;
            let numeric = *numeric || !*symbolic;
            power_assoc(&rack, numeric, *symbolic, cfg.radius, element.as_deref())
        }
        Command::Iso { a, b } => {
            let left = catalog::lookup(a)?;
            let right = match b {
                Some(b) => catalog::lookup(b)?,
                None => (*load(None, cfg)?).clone(),
            };
            iso(&left, &right)
        }
    }
}

fn list() -> Result<Output> {
    let entries = catalog::entries();
    let mut text = String::new();
    for e in &entries {
        let _ = writeln!(text, "{:<12} {:>3}  {}", e.key, e.size, e.description);
    }
    Ok(Output::ok(text, serde_json::to_value(&entries).expect("entries serialize")))
}

fn export(rack: &Arc<FiniteRack>) -> Result<Output> {
    let j = serde_json::to_value(rack.to_json()).expect("quandle serializes");
    Ok(Output::ok(serde_json::to_string(&j).expect("json") + "\n", j))
}

fn summary(rack: &FiniteRack, orbits: &[Vec<usize>]) -> String {
    let flags = rack.flags();
    let mut parts: Vec<String> = vec![match rack.classification() {
        Classification::Quandle => "quandle".into(),
        Classification::RackOnly => "rack, not quandle".into(),
        Classification::NotRack => "not a rack".into(),
    }];
    if rack.classification() == Classification::NotRack {
        return parts.join(", ");
    }
    if rack.is_trivial() {
        parts.push("trivial".into());
    }
    if flags.is_involutary {
        parts.push("involutary".into());
    }
    if flags.is_latin {
        parts.push("latin".into());
    }
    parts.push(if flags.is_connected { "connected".into() } else { "not connected".into() });
    parts.push(format!("orbits {}", render::blocks(orbits)));
    parts.join(", ")
}

fn info(rack: &Arc<FiniteRack>) -> Result<Output> {
    let orbits = if rack.is_rack() { rack.orbits()? } else { Vec::new() };
    let line = summary(rack, &orbits);
    let mut text = String::new();
    let _ = writeln!(text, "{} (size {})", rack.label(), rack.size());
    let _ = writeln!(text, "{line}");
    let j = json!({
        "name": rack.label(),
        "size": rack.size(),
        "classification": rack.classification(),
        "flags": rack.flags(),
        "trivial": rack.is_trivial(),
        "orbits": orbits,
        "summary": line,
    });
    Ok(Output::ok(text, j))
}

fn graded(rack: &Arc<FiniteRack>, k_max: usize) -> Result<Output> {
    if k_max > crate::MAX_K_CAP {
        return Err(Error::ResourceLimit { what: "graded series depth", cap: crate::MAX_K_CAP });
    }
    let series = ideals::graded_series(rack, k_max, Exec::default())?;
    let mut text = String::new();
    let _ = writeln!(text, "{}", rack.label());
    let mut rows = Vec::new();
    for k in 1..=k_max {
        let lat = series.power(k);
        let shape = series.shape(k);
        let basis = if lat.is_zero() { "0".to_string() } else { lat.to_string() };
        let _ = writeln!(text, "k={k}  Delta^{k} = {basis}  Delta^{k}/Delta^{} = {shape}", k + 1);
        rows.push(json!({
            "k": k,
            "basis": render::lattice_json(lat),
            "quotient": shape.to_string(),
            "shape": shape,
        }));
    }
    Ok(Output::ok(text, json!({ "rack": series.rack, "series": rows })))
}

fn conjecture(ns: &[usize], k_max: usize) -> Result<Output> {
    let mut text = String::new();
    let mut rows = Vec::new();
    let mut failures = 0;
    for &n in ns {
        if n < 3 {
            return Err(Error::TooSmall { got: n, min: 3 });
        }
        let rack = FiniteRack::dihedral(n)?;
        let series = ideals::graded_series(&rack, k_max, Exec::default())?;
        let first = if n % 2 == 1 { 1 } else { 2 };
        for k in first..=k_max {
            let shape = series.shape(k);
            let order = shape.order().map(|o| o.to_string()).unwrap_or_else(|| "infinite".into());
            let pass = if n % 2 == 1 { shape.is_cyclic_of_order(n as u64) } else { shape.order() == Some(n.into()) };
            failures += usize::from(!pass);
            let verdict = if pass { "pass" } else { "counterexample" };
            let _ = writeln!(text, "R{n} k={k}  {shape}  order {order}  {verdict}");
            rows.push(json!({ "n": n, "k": k, "quotient": shape.to_string(), "order": order, "pass": pass }));
        }
    }
    let _ = writeln!(text, "{failures} counterexample(s)");
    Ok(Output::ok(text, json!({ "rows": rows, "counterexamples": failures })))
}

fn build_ideal(rack: &Arc<FiniteRack>, name: Option<&str>, gens: &[String], cfg: &RunConfig) -> Result<IdealHandle> {
    if !gens.is_empty() {
        if name.is_some() {
            return Err(Error::InvalidInput("give either --ideal or --gen, not both".into()));
        }
        let rows: Vec<_> = gens.iter().map(|g| render::parse_int_row(g)).collect::<Result<_>>()?;
        return match &cfg.ring {
            None | Some(CoeffRing::Int) => ideals::two_sided_closure(rack, &rows),
            Some(CoeffRing::Mod(m)) => ideals::two_sided_closure_mod(rack, &rows, *m),
            Some(other) => Err(Error::InvalidRing(format!("ideal closures need Z or Zmod:m, not {other}"))),
        };
    }
    let name = name.unwrap_or("delta");
    let k =
        match name {
            "delta" | "aug" => 1,
            _ => name.strip_prefix("delta").and_then(|k| k.parse::<usize>().ok()).filter(|&k| k >= 1).ok_or_else(
                || Error::InvalidInput(format!("unknown ideal `{name}` (expected delta, deltaK or aug)")),
            )?,
        };
    if k > crate::MAX_K_CAP {
        return Err(Error::ResourceLimit { what: "ideal power", cap: crate::MAX_K_CAP });
    }
    ideals::ideal_power(rack, k, Exec::default())
}

fn ideal_cmd(ideal: &IdealHandle) -> Result<Output> {
    let n = ideal.rack().size();
    let lat = ideal.lattice();
    let shape = quotient_shape(lat, &IntLattice::full(n))?;
    let mut text = String::new();
    let _ = writeln!(text, "{}  rank {}  two-sided {}", ideal.rack().label(), lat.rank(), ideal.is_certified());
    render::lattice(&mut text, lat, "  ");
    let _ = writeln!(text, "Z^{n}/I = {shape}");
    let j = json!({
        "rack": ideal.rack().label(),
        "basis": render::lattice_json(lat),
        "rank": lat.rank(),
        "two_sided": ideal.is_certified(),
        "quotient": shape.to_string(),
    });
    Ok(Output::ok(text, j))
}

fn partition(ideal: &IdealHandle, orbit_iso: bool) -> Result<Output> {
    let n = ideal.rack().size();
    let mut text = String::new();
    let mut subs = Vec::new();
    for x in 0..n {
        let s = ideals::sub_from_ideal(ideal, x)?;
        let _ = writeln!(text, "X_(I,{x}) = {}", render::set(&s));
        subs.push(s);
    }
    let parts = ideals::partition_from_ideal(ideal)?;
    let _ = writeln!(text, "partition: {}", render::blocks(&parts));
    let mut j = json!({ "rack": ideal.rack().label(), "subquandles": subs, "partition": parts });
    if orbit_iso {
        let rep = ideals::orbit_iso_check(ideal)?;
        for p in &rep.pairs {
            let _ = writeln!(text, "({}, {})  same orbit {}  isomorphic {}", p.x0, p.y0, p.same_orbit, p.isomorphic);
        }
        let _ = writeln!(text, "same-orbit blocks isomorphic: {}", rep.holds());
        j["orbit_iso"] = serde_json::to_value(&rep).expect("report serializes");
        j["orbit_iso_holds"] = json!(rep.holds());
    }
    Ok(Output::ok(text, j))
}

fn dictionary(source: &Arc<FiniteRack>, target: &FiniteRack, map: Option<&[usize]>, base: usize) -> Result<Output> {
    let map = match map {
        Some(m) => m.to_vec(),
        None => find_homs(source, target, usize::MAX)
            .into_iter()
            .find(|m| {
                let mut seen = vec![false; target.size()];
                m.iter().for_each(|&y| seen[y] = true);
                seen.iter().all(|&s| s)
            })
            .ok_or_else(|| {
                Error::HypothesisNotMet(format!("no surjection {} -> {}", source.label(), target.label()))
            })?,
    };
    let hom = QuandleHom::new(source, target, map.clone())?;
    let rep = ideals::dictionary_check(&hom, base)?;
    let mut text = String::new();
    let _ = writeln!(text, "map {:?}", map);
    let _ = writeln!(text, "kernel ideal:");
    render::lattice(&mut text, &rep.kernel_basis, "  ");
    let _ = writeln!(text, "fiber through {base}: {}", render::set(&rep.fiber));
    let _ = writeln!(text, "recovered subquandle: {}", render::set(&rep.recovered));
    let _ = writeln!(text, "agree: {}", rep.holds);
    let mut j = serde_json::to_value(&rep).expect("report serializes");
    j["map"] = json!(map);
    Ok(Output::ok(text, j))
}

fn unit_element(rack: &Arc<FiniteRack>, ring: &CoeffRing, coords: &[String]) -> Result<Output> {
    let n = rack.size();
    if coords.len() != n + 1 {
        return Err(Error::DimensionMismatch { expected: n + 1, found: coords.len() });
    }
    let scalars: Vec<_> = coords.iter().map(|c| render::parse_scalar(ring, c)).collect::<Result<_>>()?;
    let body = RingElt::new(rack.clone(), ring.clone(), scalars[..n].to_vec())?;
    let u = ExtElt::new(body, scalars[n].clone())?;
    let rec = units::trivial_rack_unit(&u, 0)?;
    let mut text = String::new();
    let j = match &rec {
        Some(r) => {
            let _ = writeln!(text, "{u} is a unit ({:?})", r.class);
            let _ = writeln!(text, "inverse: {}", r.inverse);
            let _ = writeln!(text, "verified: {}", r.verify()?);
            json!({ "unit": true, "record": r.to_json() })
        }
        None => {
            let _ = writeln!(text, "{u} is not a unit");
            json!({ "unit": false, "element": u.to_json() })
        }
    };
    Ok(Output::ok(text, j))
}

fn unit_scan(rack: &Arc<FiniteRack>, ring: &CoeffRing, radius: i64) -> Result<Output> {
    let dom = match ring {
        CoeffRing::Int => ScanDomain::IntBox(radius),
        CoeffRing::Mod(m) => ScanDomain::Mod(*m),
        other => return Err(Error::InvalidRing(format!("unit scans need Z or Zmod:m, not {other}"))),
    };
    let found = units::unit_scan(rack, dom, SCAN_CAP, Exec::default())?;
    let mut text = String::new();
    let scope = match dom {
        ScanDomain::IntBox(r) => format!("coefficients in [-{r}, {r}]"),
        ScanDomain::Mod(m) => format!("over Z/{m}"),
    };
    let _ = writeln!(text, "{}: {} unit(s) with {scope}", rack.label(), found.len());
    let mut records = Vec::new();
    for (u, inv) in &found {
        let elt = units::small_to_ext(rack, ring, u)?;
        let inv_elt = units::small_to_ext(rack, ring, inv)?;
        let class = if rack.is_trivial() { units::trivial_rack_unit(&elt, 0)?.map(|r| r.class) } else { None };
        let tag = class.map(|c| format!("  {c:?}")).unwrap_or_default();
        let _ = writeln!(text, "{elt}  inverse {inv_elt}{tag}");
        records.push(json!({ "element": elt.to_json(), "inverse": inv_elt.to_json(), "class": class }));
    }
    let mut j = json!({ "rack": rack.label(), "ring": ring.to_string(), "units": records });
    if rack.is_trivial() {
        let cmp = units::compare_with_closed_form(rack, dom, SCAN_CAP, Exec::default())?;
        let _ = writeln!(text, "closed form agrees: {}", cmp.agree);
        j["closed_form"] = serde_json::to_value(&cmp).expect("comparison serializes");
    }
    Ok(Output::ok(text, j))
}

fn split_probe(rack: &Arc<FiniteRack>, ring: &CoeffRing) -> Result<Output> {
    let CoeffRing::Mod(m) = ring else {
        return Err(Error::InvalidRing("--split needs --ring Zmod:m".into()));
    };
    let rep = units::split_sequence_probe(rack, *m, SCAN_CAP, Exec::default())?;
    let mut text = String::new();
    let _ = writeln!(text, "{} over Z/{m}: {} elements, {} units", rep.rack, rep.elements, rep.units);
    let _ = writeln!(
        text,
        "|V| = {}  |V1| = {}  |V2| = {}  ring units {}",
        rep.v_size, rep.v1_size, rep.v2_size, rep.ring_units
    );
    let _ = writeln!(
        text,
        "V1 normal {}  phi homomorphism {}  kernel is V1 {}",
        rep.v1_normal, rep.phi_homomorphism, rep.kernel_is_v1
    );
    let _ = writeln!(text, "split sequence holds: {}", rep.holds());
    let mut j = serde_json::to_value(&rep).expect("report serializes");
    j["holds"] = json!(rep.holds());
    Ok(Output::ok(text, j))
}

fn center(rack: &Arc<FiniteRack>, alpha: Option<&str>) -> Result<Output> {
    let c = units::center_lattice(rack)?;
    let (right, left) = units::w_absorption(rack)?;
    let mut text = String::new();
    let _ = writeln!(text, "center of Z[{}]: rank {}", c.rack, c.lattice.rank());
    render::lattice(&mut text, &c.lattice, "  ");
    let _ = writeln!(text, "w x = w for all x: {right}");
    let _ = writeln!(text, "x w = w for all x: {left}");
    let mut j = json!({
        "rack": c.rack,
        "basis": render::lattice_json(&c.lattice),
        "w_right_absorbs": right,
        "w_left_absorbs": left,
    });
    if let Some(a) = alpha {
        let alpha = render::parse_scalar(&CoeffRing::Rat, a)?;
        let rep = units::latin_central_units(rack, &alpha)?;
        let _ = writeln!(text, "unit {}  inverse {}", rep.record.element, rep.record.inverse);
        let _ = writeln!(
            text,
            "inverse verified {}  w central {}  idempotent {}",
            rep.inverse_verified, rep.w_central, rep.idempotent
        );
        j["latin_unit"] = json!({
            "record": rep.record.to_json(),
            "inverse_verified": rep.inverse_verified,
            "w_central": rep.w_central,
            "idempotent": rep.idempotent,
        });
    }
    Ok(Output::ok(text, j))
}

fn commutators(ring: &CoeffRing, ev: &str, eu: &str, depth: usize) -> Result<Output> {
    if depth > 64 {
        return Err(Error::ResourceLimit { what: "commutator depth", cap: 64 });
    }
    let t2 = Arc::new(FiniteRack::trivial(2)?);
    let v = units::t2_element(&t2, ring, &render::parse_scalar(ring, ev)?)?;
    let u = units::t2_element(&t2, ring, &render::parse_scalar(ring, eu)?)?;
    let rep = units::commutator_sequence(&v, &u, depth)?;
    let mut text = String::new();
    let _ = writeln!(text, "v = {v}");
    let _ = writeln!(text, "u = {u}");
    let mut rows = Vec::new();
    for (i, (w, c)) in rep.terms.iter().zip(&rep.closed_form).enumerate() {
        let _ = writeln!(text, "w{} = {w}  closed form {c}", i + 1);
        rows.push(json!({ "n": i + 1, "term": w.to_json(), "closed_form": c.to_json() }));
    }
    let first = rep.first_identity();
    let _ = writeln!(text, "matches closed form: {}", rep.matches());
    let _ = writeln!(text, "first trivial term: {}", first.map(|n| format!("w{n}")).unwrap_or_else(|| "none".into()));
    Ok(Output::ok(text, json!({ "terms": rows, "matches": rep.matches(), "first_identity": first })))
}

fn assoc_cmd(rack: &Arc<FiniteRack>) -> Result<Output> {
    let rep = assoc::is_associative(rack, Exec::default());
    let mut text = String::new();
    match rep.witness {
        None => {
            let _ = writeln!(text, "Z[{}] is associative", rack.label());
        }
        Some((x, y, z)) => {
            let _ = writeln!(
                text,
                "Z[{}] is not associative: ({x}.{y}).{z} = {} but {x}.({y}.{z}) = {}",
                rack.label(),
                rack.op(rack.op(x, y), z),
                rack.op(x, rack.op(y, z))
            );
        }
    }
    let mut j = serde_json::to_value(&rep).expect("report serializes");
    j["rack"] = json!(rack.label());
    Ok(Output::ok(text, j))
}

fn power_assoc(
    rack: &Arc<FiniteRack>,
    numeric: bool,
    symbolic: bool,
    radius: i64,
    element: Option<&[i64]>,
) -> Result<Output> {
    let mut text = String::new();
    let mut j = json!({ "rack": rack.label() });
    if numeric {
        let w = match element {
            Some(e) => {
                if e.len() != rack.size() {
                    return Err(Error::DimensionMismatch { expected: rack.size(), found: e.len() });
                }
                assoc::check_element(rack, e)?
            }
            None => assoc::power_assoc_numeric(rack, radius, SCAN_CAP, Exec::default())?,
        };
        match &w {
            None if element.is_some() => {
                let _ = writeln!(text, "both identities hold for this element");
            }
            None => {
                let _ = writeln!(text, "no numeric witness with coefficients in [-{radius}, {radius}]");
            }
            Some(w) => {
                let (l, r) = w.products.sides(w.identity);
                let _ = writeln!(text, "witness u = {}", w.element);
                let _ = writeln!(text, "fails {}", w.identity.describe());
                let _ = writeln!(text, "  lhs = {l}");
                let _ = writeln!(text, "  rhs = {r}");
                let _ = writeln!(text, "  coefficient {}: {} vs {}", w.basis_index, w.lhs_value, w.rhs_value);
            }
        }
        j["numeric"] = w.map(|w| w.to_json()).unwrap_or(Value::Null);
    }
    if symbolic {
        let rep = assoc::power_assoc_symbolic(rack)?;
        for (id, w) in [(PowerIdentity::Cubic, &rep.cubic), (PowerIdentity::Quartic, &rep.quartic)] {
            match w {
                None => {
                    let _ = writeln!(text, "{} holds identically", id.describe());
                }
                Some(w) => {
                    let _ = writeln!(text, "{} fails in {} monomial(s)", id.describe(), w.differences.len());
                    for i in 0..rack.size() {
                        let _ = writeln!(text, "  lhs[a{i}] = {}", w.lhs.coeff(i));
                        let _ = writeln!(text, "  rhs[a{i}] = {}", w.rhs.coeff(i));
                    }
                    let d = w.first();
                    let _ =
                        writeln!(text, "  first difference: a{} {}: {} vs {}", d.basis_index, d.monomial, d.lhs, d.rhs);
                }
            }
        }
        j["symbolic"] = json!({
            "cubic": rep.cubic.as_ref().map(|w| w.to_json()),
            "quartic": rep.quartic.as_ref().map(|w| w.to_json()),
        });
    }
    Ok(Output::ok(text, j))
}

fn iso(a: &FiniteRack, b: &FiniteRack) -> Result<Output> {
    let phi = are_isomorphic(a, b);
    let text = match &phi {
        Some(p) => format!("{} ~ {} via {:?}\n", a.label(), b.label(), p.image()),
        None => format!("{} and {} are not isomorphic\n", a.label(), b.label()),
    };
    let j =
        json!({ "a": a.label(), "b": b.label(), "isomorphic": phi.is_some(), "map": phi.map(|p| p.image().to_vec()) });
    Ok(Output::ok(text, j))
}
