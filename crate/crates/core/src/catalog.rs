//! Named racks and groups available without external data.
//!
//! Keys: `T1`..`T6`, `R1`..`R9`, `flip2`..`flip6`, `rack2`, `conj<G>`,
//! `core<G>` for every group `G` of order at most 8, `alexZ<m>t<k>` for the
//! Alexander quandle of `ℤ_m` with `t = k`, `tetra` (Alexander quandle of
//! `ℤ₂×ℤ₂` with an order-3 automorphism) and `genalexS3`.

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::quandle::{FiniteGroup, FiniteRack, Permutation};

pub const GROUP_KEYS: [&str; 14] =
    ["Z1", "Z2", "Z3", "Z4", "Z2xZ2", "Z5", "Z6", "S3", "Z7", "Z8", "Z2xZ4", "Z2xZ2xZ2", "D4", "Q8"];

/// Groups of order at most 8, one per isomorphism class.
pub fn group(key: &str) -> Result<FiniteGroup> {
    let z = FiniteGroup::cyclic;
    match key {
        "Z2xZ2" => Ok(FiniteGroup::direct_product(&z(2)?, &z(2)?)),
        "Z2xZ4" => Ok(FiniteGroup::direct_product(&z(2)?, &z(4)?)),
        "Z2xZ2xZ2" => Ok(FiniteGroup::direct_product(&FiniteGroup::direct_product(&z(2)?, &z(2)?), &z(2)?)),
        "S3" => FiniteGroup::symmetric(3),
        "D4" => FiniteGroup::dihedral_group(4),
        "Q8" => FiniteGroup::quaternion(),
        _ => match key.strip_prefix('Z').and_then(|m| m.parse::<usize>().ok()) {
            Some(m @ 1..=8) => z(m),
            _ => Err(unknown(key)),
        },
    }
}

pub fn groups() -> Vec<FiniteGroup> {
    GROUP_KEYS.iter().map(|k| group(k).expect("catalog group")).collect()
}

fn unknown(key: &str) -> Error {
    Error::InvalidInput(format!("unknown catalog key `{key}`"))
}

fn alexander_keys() -> Vec<String> {
    let mut keys = Vec::new();
    for m in 3..=8u64 {
        for k in 2..m {
            if k.gcd(&m) == 1 {
                keys.push(format!("alexZ{m}t{k}"));
            }
        }
    }
    keys
}

/// Every catalog key, in a fixed order.
pub fn keys() -> Vec<String> {
    let mut keys: Vec<String> = Vec::new();
    keys.extend((1..=6).map(|n| format!("T{n}")));
    keys.extend((1..=9).map(|n| format!("R{n}")));
    keys.extend((2..=6).map(|n| format!("flip{n}")));
    keys.push("rack2".into());
    keys.extend(GROUP_KEYS.iter().map(|g| format!("conj{g}")));
    keys.extend(GROUP_KEYS.iter().map(|g| format!("core{g}")));
    keys.extend(alexander_keys());
    keys.push("tetra".into());
    keys.push("genalexS3".into());
    keys
}

fn parse_size(s: &str, range: std::ops::RangeInclusive<usize>) -> Option<usize> {
    s.parse::<usize>().ok().filter(|n| range.contains(n))
}

fn tetrahedral() -> Result<FiniteRack> {
    let g = group("Z2xZ2")?;
    // index 2*x1 + x2; (x1, x2) -> (x2, x1 + x2)
    let t = Permutation::new((0..4).map(|x| (x % 2) * 2 + (x / 2 + x % 2) % 2).collect())?;
    Ok(FiniteRack::alexander(&g, &t)?.with_name("tetra"))
}

fn gen_alexander_s3() -> Result<FiniteRack> {
    let g = group("S3")?;
    let g_elt = (0..g.size()).find(|&a| g.order_of(a) == 2).expect("S3 has involutions");
    Ok(FiniteRack::gen_alexander(&g, &g.inner_automorphism(g_elt))?.with_name("genalexS3"))
}

/// Builds the rack for a catalog key.
pub fn lookup(key: &str) -> Result<FiniteRack> {
    if key == "rack2" {
        return Ok(FiniteRack::two_elem_rack());
    }
    if key == "tetra" {
        return tetrahedral();
    }
    if key == "genalexS3" {
        return gen_alexander_s3();
    }
    if let Some(rest) = key.strip_prefix("flip") {
        return parse_size(rest, 2..=6).ok_or_else(|| unknown(key)).and_then(FiniteRack::flip_rack);
    }
    if let Some(rest) = key.strip_prefix("conj") {
        return Ok(FiniteRack::conj(&group(rest).map_err(|_| unknown(key))?));
    }
    if let Some(rest) = key.strip_prefix("core") {
        return Ok(FiniteRack::core(&group(rest).map_err(|_| unknown(key))?));
    }
    if let Some(rest) = key.strip_prefix("alexZ") {
        if !alexander_keys().iter().any(|k| k == key) {
            return Err(unknown(key));
        }
        let (m, k) = rest.split_once('t').ok_or_else(|| unknown(key))?;
        let (m, k): (usize, i64) = (m.parse().map_err(|_| unknown(key))?, k.parse().map_err(|_| unknown(key))?);
        let g = FiniteGroup::cyclic(m)?;
        return Ok(FiniteRack::alexander(&g, &g.power_map(k)?)?.with_name(key));
    }
    if let Some(rest) = key.strip_prefix('T') {
        return parse_size(rest, 1..=6).ok_or_else(|| unknown(key)).and_then(FiniteRack::trivial);
    }
    if let Some(rest) = key.strip_prefix('R') {
        return parse_size(rest, 1..=9).ok_or_else(|| unknown(key)).and_then(FiniteRack::dihedral);
    }
    Err(unknown(key))
}

#[derive(Debug, Clone, Serialize)]
pub struct CatalogEntry {
    pub key: String,
    pub size: usize,
    pub description: String,
}

pub fn describe(key: &str) -> Result<String> {
    lookup(key)?;
    let d = if key == "rack2" {
        "two-element rack a.a = a.b = b, b.a = b.b = a".to_string()
    } else if key == "tetra" {
        "Alexander quandle of Z2xZ2 with an order-3 automorphism".to_string()
    } else if key == "genalexS3" {
        "generalized Alexander quandle of S3 twisted by conjugation with a transposition".to_string()
    } else if let Some(g) = key.strip_prefix("flip") {
        format!("rack on {g} points with i.j = n-1-i")
    } else if let Some(g) = key.strip_prefix("conj") {
        format!("conjugation quandle of {g}")
    } else if let Some(g) = key.strip_prefix("core") {
        format!("core quandle of {g}")
    } else if let Some(rest) = key.strip_prefix("alexZ") {
        let (m, k) = rest.split_once('t').expect("validated");
        format!("Alexander quandle of Z{m} with t = {k}")
    } else if let Some(n) = key.strip_prefix('T') {
        format!("trivial quandle of order {n}")
    } else {
        format!("dihedral quandle of order {}", &key[1..])
    };
    Ok(d)
}

pub fn entries() -> Vec<CatalogEntry> {
    keys()
        .into_iter()
        .map(|key| {
            let size = lookup(&key).expect("catalog key").size();
            let description = describe(&key).expect("catalog key");
            CatalogEntry { key, size, description }
        })
        .collect()
}

/// All catalog racks, in key order.
pub fn racks() -> Vec<FiniteRack> {
    keys().iter().map(|k| lookup(k).expect("catalog key").with_name(k.clone())).collect()
}

/// Catalog entries satisfying the quandle axioms.
pub fn quandles() -> Vec<FiniteRack> {
    racks().into_iter().filter(FiniteRack::is_quandle).collect()
}
