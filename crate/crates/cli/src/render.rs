use std::fmt::Write;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;

use qring::zlattice::ZVec;
use qring::{CoeffRing, Error, IntLattice, Result, Scalar};

/// `{0,2},{1,3}`.
pub fn blocks(sets: &[Vec<usize>]) -> String {
    sets.iter().map(|s| set(s)).collect::<Vec<_>>().join(",")
}

pub fn set(s: &[usize]) -> String {
    format!("{{{}}}", s.iter().map(ToString::to_string).collect::<Vec<_>>().join(","))
}

pub fn row(v: &[BigInt]) -> String {
    format!("[{}]", v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "))
}

/// Basis rows, one per line, indented.
pub fn lattice(out: &mut String, lat: &IntLattice, indent: &str) {
    if lat.is_zero() {
        let _ = writeln!(out, "{indent}0");
    }
    for r in lat.basis() {
        let _ = writeln!(out, "{indent}{}", row(r));
    }
}

pub fn lattice_json(lat: &IntLattice) -> serde_json::Value {
    serde_json::to_value(lat).expect("lattice serializes")
}

pub fn parse_scalar(ring: &CoeffRing, s: &str) -> Result<Scalar> {
    let s = s.trim();
    match ring {
        CoeffRing::Rat => BigRational::from_str(s)
            .map(Scalar::Rat)
            .map_err(|_| Error::InvalidInput(format!("`{s}` is not a rational number"))),
        _ => BigInt::from_str(s)
            .map(|v| ring.from_bigint(&v))
            .map_err(|_| Error::InvalidInput(format!("`{s}` is not an integer"))),
    }
}

pub fn parse_int_row(s: &str) -> Result<ZVec> {
    s.split(',')
        .map(|t| BigInt::from_str(t.trim()).map_err(|_| Error::InvalidInput(format!("`{t}` is not an integer"))))
        .collect()
}
