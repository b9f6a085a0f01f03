//! The rack ring `R[X]` and the extended ring `R°[X] = R[X] ⊕ Re`.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::coeff::{CoeffRing, Scalar};
use crate::error::{Error, Result};
use crate::quandle::FiniteRack;
use crate::zlattice::ZVec;

/// `Σ α_i x_i` with dense coefficients over the elements of a rack.
#[derive(Debug, Clone)]
pub struct RingElt {
    rack: Arc<FiniteRack>,
    ring: CoeffRing,
    coeffs: Vec<Scalar>,
}

impl PartialEq for RingElt {
    fn eq(&self, other: &Self) -> bool {
        same_rack(&self.rack, &other.rack) && self.ring == other.ring && self.coeffs == other.coeffs
    }
}

impl Eq for RingElt {}

impl std::hash::Hash for RingElt {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

pub(crate) fn same_rack(a: &Arc<FiniteRack>, b: &Arc<FiniteRack>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl RingElt {
    pub fn new(rack: Arc<FiniteRack>, ring: CoeffRing, coeffs: Vec<Scalar>) -> Result<Self> {
        if coeffs.len() != rack.size() {
            return Err(Error::DimensionMismatch { expected: rack.size(), found: coeffs.len() });
        }
        if let Some(bad) = coeffs.iter().find(|c| !c.is_in(&ring)) {
            return Err(Error::RingMismatch(ring.to_string(), bad.ring().to_string()));
        }
        Ok(RingElt { rack, ring, coeffs })
    }

    pub fn zero(rack: Arc<FiniteRack>, ring: CoeffRing) -> Self {
        let coeffs = vec![ring.zero(); rack.size()];
        RingElt { rack, ring, coeffs }
    }

    /// The basis element `x_i`.
    pub fn basis(rack: Arc<FiniteRack>, ring: CoeffRing, i: usize) -> Result<Self> {
        if i >= rack.size() {
            return Err(Error::IndexOutOfRange { index: i, size: rack.size() });
        }
        let mut e = RingElt::zero(rack, ring);
        e.coeffs[i] = e.ring.one();
        Ok(e)
    }

    pub fn from_ints(rack: Arc<FiniteRack>, ring: CoeffRing, values: &[i64]) -> Result<Self> {
        let coeffs = values.iter().map(|&v| ring.from_int(v)).collect();
        RingElt::new(rack, ring, coeffs)
    }

    pub fn from_bigints(rack: Arc<FiniteRack>, ring: CoeffRing, values: &[BigInt]) -> Result<Self> {
        let coeffs = values.iter().map(|v| ring.from_bigint(v)).collect();
        RingElt::new(rack, ring, coeffs)
    }

    pub fn rack(&self) -> &Arc<FiniteRack> {
        &self.rack
    }

    pub fn ring(&self) -> &CoeffRing {
        &self.ring
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &Scalar {
        &self.coeffs[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    fn check_compatible(&self, other: &RingElt) -> Result<()> {
        if !same_rack(&self.rack, &other.rack) {
            return Err(Error::RackMismatch);
        }
        if self.ring != other.ring {
            return Err(Error::RingMismatch(self.ring.to_string(), other.ring.to_string()));
        }
        Ok(())
    }

    pub fn add(&self, other: &RingElt) -> Result<RingElt> {
        self.check_compatible(other)?;
        Ok(self.zip_with(other, |a, b| a + b))
    }

    pub fn sub(&self, other: &RingElt) -> Result<RingElt> {
        self.check_compatible(other)?;
        Ok(self.zip_with(other, |a, b| a - b))
    }

    fn zip_with(&self, other: &RingElt, f: impl Fn(&Scalar, &Scalar) -> Scalar) -> RingElt {
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| f(a, b)).collect();
        RingElt { rack: self.rack.clone(), ring: self.ring.clone(), coeffs }
    }

    pub fn neg(&self) -> RingElt {
        RingElt { rack: self.rack.clone(), ring: self.ring.clone(), coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn scale(&self, s: &Scalar) -> Result<RingElt> {
        if !s.is_in(&self.ring) {
            return Err(Error::RingMismatch(self.ring.to_string(), s.ring().to_string()));
        }
        Ok(RingElt {
            rack: self.rack.clone(),
            ring: self.ring.clone(),
            coeffs: self.coeffs.iter().map(|c| s * c).collect(),
        })
    }

    /// Bilinear extension of the rack operation.
    pub fn mul(&self, other: &RingElt) -> Result<RingElt> {
        self.check_compatible(other)?;
        let n = self.rack.size();
        let mut out = vec![self.ring.zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let k = self.rack.op(i, j);
                out[k] = &out[k] + &(a * b);
            }
        }
        Ok(RingElt { rack: self.rack.clone(), ring: self.ring.clone(), coeffs: out })
    }

    /// `ε(Σ α_i x_i) = Σ α_i`.
    pub fn augmentation(&self) -> Scalar {
        self.coeffs.iter().fold(self.ring.zero(), |acc, c| &acc + c)
    }

    /// Integer coordinates, when the coefficient ring is ℤ.
    pub fn to_int_vector(&self) -> Option<ZVec> {
        self.coeffs.iter().map(|c| c.as_int().cloned()).collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({ "coeffs": self.coeffs.iter().map(Scalar::to_json).collect::<Vec<_>>() })
    }
}

fn write_terms(f: &mut fmt::Formatter<'_>, terms: &[(String, &Scalar)]) -> fmt::Result {
    let mut first = true;
    for (label, c) in terms {
        if c.is_zero() {
            continue;
        }
        let text = c.to_string();
        let compound = matches!(c, Scalar::Poly(p) if p.terms().len() > 1);
        let (neg, mag) = match text.strip_prefix('-') {
            Some(rest) if !compound => (true, rest.to_string()),
            _ => (false, text),
        };
        if first {
            if neg {
                write!(f, "-")?;
            }
        } else if neg {
            write!(f, " - ")?;
        } else {
            write!(f, " + ")?;
        }
        first = false;
        if mag == "1" {
            write!(f, "{label}")?;
        } else if compound {
            write!(f, "({mag})*{label}")?;
        } else {
            write!(f, "{mag}*{label}")?;
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Display for RingElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<(String, &Scalar)> = self.coeffs.iter().enumerate().map(|(i, c)| (format!("a{i}"), c)).collect();
        write_terms(f, &terms)
    }
}

/// Integer-coordinate product in `ℤ[X]`.
pub fn mul_int(rack: &FiniteRack, u: &[BigInt], v: &[BigInt]) -> ZVec {
    let n = rack.size();
    let mut out = vec![BigInt::zero(); n];
    for (i, a) in u.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, b) in v.iter().enumerate() {
            if b.is_zero() {
                continue;
            }
            out[rack.op(i, j)] += a * b;
        }
    }
    out
}

/// `x·y + y·x - x - y`, which lies in `Δ²` for quandles.
pub fn symmetrization_defect(rack: &Arc<FiniteRack>, x: usize, y: usize) -> Result<RingElt> {
    if !rack.is_quandle() {
        return Err(Error::HypothesisNotMet(format!("{} is not a quandle", rack.label())));
    }
    let n = rack.size();
    for i in [x, y] {
        if i >= n {
            return Err(Error::IndexOutOfRange { index: i, size: n });
        }
    }
    let mut v = vec![0i64; n];
    v[rack.op(x, y)] += 1;
    v[rack.op(y, x)] += 1;
    v[x] -= 1;
    v[y] -= 1;
    RingElt::from_ints(rack.clone(), CoeffRing::Int, &v)
}

/// `a + βe` in the extended ring.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExtElt {
    body: RingElt,
    unit: Scalar,
}

impl ExtElt {
    pub fn new(body: RingElt, unit: Scalar) -> Result<Self> {
        if !unit.is_in(body.ring()) {
            return Err(Error::RingMismatch(body.ring().to_string(), unit.ring().to_string()));
        }
        Ok(ExtElt { body, unit })
    }

    /// The identity `e`.
    pub fn identity(rack: Arc<FiniteRack>, ring: CoeffRing) -> Self {
        let unit = ring.one();
        ExtElt { body: RingElt::zero(rack, ring), unit }
    }

    pub fn from_body(body: RingElt) -> Self {
        let unit = body.ring().zero();
        ExtElt { body, unit }
    }

    /// Coefficients over `x_0..x_{n-1}` followed by the coefficient of `e`.
    pub fn from_ints(rack: Arc<FiniteRack>, ring: CoeffRing, body: &[i64], unit: i64) -> Result<Self> {
        let u = ring.from_int(unit);
        ExtElt::new(RingElt::from_ints(rack, ring, body)?, u)
    }

    pub fn body(&self) -> &RingElt {
        &self.body
    }

    pub fn unit_coeff(&self) -> &Scalar {
        &self.unit
    }

    pub fn ring(&self) -> &CoeffRing {
        self.body.ring()
    }

    pub fn rack(&self) -> &Arc<FiniteRack> {
        self.body.rack()
    }

    pub fn is_identity(&self) -> bool {
        self.body.is_zero() && self.unit.is_one()
    }

    pub fn add(&self, other: &ExtElt) -> Result<ExtElt> {
        Ok(ExtElt { body: self.body.add(&other.body)?, unit: &self.unit + &other.unit })
    }

    pub fn sub(&self, other: &ExtElt) -> Result<ExtElt> {
        Ok(ExtElt { body: self.body.sub(&other.body)?, unit: &self.unit - &other.unit })
    }

    pub fn neg(&self) -> ExtElt {
        ExtElt { body: self.body.neg(), unit: -&self.unit }
    }

    pub fn scale(&self, s: &Scalar) -> Result<ExtElt> {
        Ok(ExtElt { body: self.body.scale(s)?, unit: s * &self.unit })
    }

    /// `(a + αe)(b + βe) = ab + αb + βa + αβe`.
    pub fn mul(&self, other: &ExtElt) -> Result<ExtElt> {
        let ab = self.body.mul(&other.body)?;
        let body = ab.add(&other.body.scale(&self.unit)?)?.add(&self.body.scale(&other.unit)?)?;
        Ok(ExtElt { body, unit: &self.unit * &other.unit })
    }

    /// `ε` extended by `ε(e) = 1`.
    pub fn augmentation(&self) -> Scalar {
        &self.body.augmentation() + &self.unit
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "coeffs": self.body.coeffs.iter().map(Scalar::to_json).collect::<Vec<_>>(),
            "e": self.unit.to_json(),
        })
    }
}

impl fmt::Display for ExtElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<(String, &Scalar)> =
            self.body.coeffs.iter().enumerate().map(|(i, c)| (format!("a{i}"), c)).collect();
        terms.push(("e".to_string(), &self.unit));
        write_terms(f, &terms)
    }
}
