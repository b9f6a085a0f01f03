//! Exact coefficient rings: ℤ, ℚ, ℤ/m and ℤ[c₀, …, c_k].

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum CoeffRing {
    Int,
    Rat,
    Mod(u64),
    Poly(Arc<[String]>),
}

impl CoeffRing {
    pub fn modular(m: u64) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidRing(format!("modulus {m} must be at least 2")));
        }
        Ok(CoeffRing::Mod(m))
    }

    pub fn poly<S: AsRef<str>>(vars: &[S]) -> Result<Self> {
        let names: Vec<String> = vars.iter().map(|s| s.as_ref().to_string()).collect();
        let mut sorted = names.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != names.len() {
            return Err(Error::InvalidRing("polynomial variable names must be distinct".into()));
        }
        Ok(CoeffRing::Poly(names.into()))
    }

    /// Parses `Z`, `Q` or `Zmod:m`.
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "Z" => Ok(CoeffRing::Int),
            "Q" => Ok(CoeffRing::Rat),
            _ => {
                let m = s
                    .strip_prefix("Zmod:")
                    .and_then(|m| m.parse::<u64>().ok())
                    .ok_or_else(|| Error::InvalidRing(format!("unknown ring `{s}` (expected Z, Q or Zmod:m)")))?;
                CoeffRing::modular(m)
            }
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_int(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_int(1)
    }

    pub fn from_int(&self, v: i64) -> Scalar {
        self.from_bigint(&BigInt::from(v))
    }

    pub fn from_bigint(&self, v: &BigInt) -> Scalar {
        match self {
            CoeffRing::Int => Scalar::Int(v.clone()),
            CoeffRing::Rat => Scalar::Rat(BigRational::from_integer(v.clone())),
            CoeffRing::Mod(m) => {
                let r = v.mod_floor(&BigInt::from(*m)).to_u64().expect("residue fits");
                Scalar::Mod { value: r, modulus: *m }
            }
            CoeffRing::Poly(vars) => Scalar::Poly(Poly::constant(vars.clone(), v.clone())),
        }
    }

    /// Whether the ring has a multiplicative identity usable by the extended
    /// ring constructions (everything here does).
    pub fn is_unital(&self) -> bool {
        true
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, CoeffRing::Mod(_))
    }

    /// All elements of a finite ring, in residue order.
    pub fn elements(&self) -> Option<Vec<Scalar>> {
        match self {
            CoeffRing::Mod(m) => Some((0..*m).map(|v| Scalar::Mod { value: v, modulus: *m }).collect()),
            _ => None,
        }
    }
}

impl fmt::Display for CoeffRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoeffRing::Int => write!(f, "Z"),
            CoeffRing::Rat => write!(f, "Q"),
            CoeffRing::Mod(m) => write!(f, "Zmod:{m}"),
            CoeffRing::Poly(v) => write!(f, "Z[{}]", v.join(",")),
        }
    }
}

/// Exponent vector of a monomial.
pub type Monomial = Vec<u32>;

/// Sparse polynomial with integer coefficients; never stores zero terms.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    vars: Arc<[String]>,
    terms: BTreeMap<Monomial, BigInt>,
}

impl Poly {
    pub fn zero(vars: Arc<[String]>) -> Self {
        Poly { vars, terms: BTreeMap::new() }
    }

    pub fn constant(vars: Arc<[String]>, c: BigInt) -> Self {
        let mut p = Poly::zero(vars);
        let mono = vec![0; p.vars.len()];
        p.add_term(mono, c);
        p
    }

    /// The variable `vars[i]`.
    pub fn var(vars: Arc<[String]>, i: usize) -> Self {
        let mut mono = vec![0; vars.len()];
        mono[i] = 1;
        let mut p = Poly::zero(vars);
        p.add_term(mono, BigInt::one());
        p
    }

    pub fn vars(&self) -> &Arc<[String]> {
        &self.vars
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, BigInt> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, mono: &[u32]) -> BigInt {
        self.terms.get(mono).cloned().unwrap_or_default()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|m| m.iter().sum()).max().unwrap_or(0)
    }

    fn add_term(&mut self, mono: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn same_vars(&self, other: &Poly) -> bool {
        Arc::ptr_eq(&self.vars, &other.vars) || self.vars == other.vars
    }

    fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    fn neg(&self) -> Poly {
        Poly { vars: self.vars.clone(), terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }

    fn mul(&self, other: &Poly) -> Poly {
        let mut acc: BTreeMap<Monomial, BigInt> = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let m: Monomial = m1.iter().zip(m2).map(|(a, b)| a + b).collect();
                *acc.entry(m).or_default() += c1 * c2;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Poly { vars: self.vars.clone(), terms: acc }
    }

    /// Exact substitution of integers for every variable.
    pub fn eval(&self, assignment: &HashMap<String, BigInt>) -> Result<BigInt> {
        let values = self
            .vars
            .iter()
            .map(|v| assignment.get(v).cloned().ok_or_else(|| Error::UnboundSymbol(v.clone())))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.eval_slice(&values))
    }

    /// Substitution with values listed in variable order.
    pub fn eval_slice(&self, values: &[BigInt]) -> BigInt {
        let mut total = BigInt::zero();
        for (mono, c) in &self.terms {
            let mut t = c.clone();
            for (v, &e) in values.iter().zip(mono) {
                t *= num_traits::pow(v.clone(), e as usize);
            }
            total += t;
        }
        total
    }

    fn as_constant(&self) -> Option<BigInt> {
        match self.terms.len() {
            0 => Some(BigInt::zero()),
            1 => {
                let (m, c) = self.terms.iter().next()?;
                m.iter().all(|&e| e == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    /// Renders one monomial as `a^1*b^3`.
    pub fn monomial_string(&self, mono: &[u32]) -> String {
        let parts: Vec<String> =
            self.vars.iter().zip(mono).filter(|(_, &e)| e > 0).map(|(v, e)| format!("{v}^{e}")).collect();
        parts.join("*")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // highest-degree terms first
        let mut terms: Vec<(&Monomial, &BigInt)> = self.terms.iter().collect();
        terms.sort_by(|a, b| {
            let da: u32 = a.0.iter().sum();
            let db: u32 = b.0.iter().sum();
            db.cmp(&da).then_with(|| b.0.cmp(a.0))
        });
        for (k, (mono, c)) in terms.into_iter().enumerate() {
            let mstr = self.monomial_string(mono);
            let mag = c.abs();
            if k == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match (mstr.is_empty(), mag.is_one()) {
                (true, _) => write!(f, "{mag}")?,
                (false, true) => write!(f, "{mstr}")?,
                (false, false) => write!(f, "{mag}*{mstr}")?,
            }
        }
        Ok(())
    }
}

/// A value in one of the coefficient rings.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Int(BigInt),
    Rat(BigRational),
    Mod { value: u64, modulus: u64 },
    Poly(Poly),
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

impl Scalar {
    pub fn ring(&self) -> CoeffRing {
        match self {
            Scalar::Int(_) => CoeffRing::Int,
            Scalar::Rat(_) => CoeffRing::Rat,
            Scalar::Mod { modulus, .. } => CoeffRing::Mod(*modulus),
            Scalar::Poly(p) => CoeffRing::Poly(p.vars.clone()),
        }
    }

    pub fn rational(num: i64, den: i64) -> Scalar {
        Scalar::Rat(BigRational::new(num.into(), den.into()))
    }

    pub fn is_in(&self, ring: &CoeffRing) -> bool {
        match (self, ring) {
            (Scalar::Int(_), CoeffRing::Int) | (Scalar::Rat(_), CoeffRing::Rat) => true,
            (Scalar::Mod { modulus, .. }, CoeffRing::Mod(m)) => modulus == m,
            (Scalar::Poly(p), CoeffRing::Poly(v)) => Arc::ptr_eq(&p.vars, v) || *p.vars == **v,
            _ => false,
        }
    }

    fn check_same(&self, other: &Scalar) -> Result<()> {
        let ok = match (self, other) {
            (Scalar::Int(_), Scalar::Int(_)) | (Scalar::Rat(_), Scalar::Rat(_)) => true,
            (Scalar::Mod { modulus: a, .. }, Scalar::Mod { modulus: b, .. }) => a == b,
            (Scalar::Poly(a), Scalar::Poly(b)) => a.same_vars(b),
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::RingMismatch(self.ring().to_string(), other.ring().to_string()))
        }
    }

    pub fn try_add(&self, other: &Scalar) -> Result<Scalar> {
        self.check_same(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn try_sub(&self, other: &Scalar) -> Result<Scalar> {
        self.check_same(other)?;
        Ok(self.add_unchecked(&other.neg_value()))
    }

    pub fn try_mul(&self, other: &Scalar) -> Result<Scalar> {
        self.check_same(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn add_unchecked(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Int(a), Scalar::Int(b)) => Scalar::Int(a + b),
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::Mod { value: a, modulus }, Scalar::Mod { value: b, .. }) => {
                Scalar::Mod { value: ((*a as u128 + *b as u128) % *modulus as u128) as u64, modulus: *modulus }
            }
            (Scalar::Poly(a), Scalar::Poly(b)) => Scalar::Poly(a.add(b)),
            _ => panic!("scalar ring mismatch: {} vs {}", self.ring(), other.ring()),
        }
    }

    fn mul_unchecked(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Int(a), Scalar::Int(b)) => Scalar::Int(a * b),
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Mod { value: a, modulus }, Scalar::Mod { value: b, .. }) => {
                Scalar::Mod { value: mulmod(*a, *b, *modulus), modulus: *modulus }
            }
            (Scalar::Poly(a), Scalar::Poly(b)) => Scalar::Poly(a.mul(b)),
            _ => panic!("scalar ring mismatch: {} vs {}", self.ring(), other.ring()),
        }
    }

    fn neg_value(&self) -> Scalar {
        match self {
            Scalar::Int(a) => Scalar::Int(-a),
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Mod { value, modulus } => Scalar::Mod { value: (modulus - value) % modulus, modulus: *modulus },
            Scalar::Poly(p) => Scalar::Poly(p.neg()),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Int(a) => a.is_zero(),
            Scalar::Rat(a) => a.is_zero(),
            Scalar::Mod { value, .. } => *value == 0,
            Scalar::Poly(p) => p.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        *self == self.ring().one()
    }

    /// ℤ: ±1; ℚ: nonzero; ℤ/m: coprime to m; polynomials: constant ±1.
    pub fn is_unit(&self) -> bool {
        match self {
            Scalar::Int(a) => a.abs().is_one(),
            Scalar::Rat(a) => !a.is_zero(),
            Scalar::Mod { value, modulus } => value.gcd(modulus) == 1,
            Scalar::Poly(p) => p.as_constant().is_some_and(|c| c.abs().is_one()),
        }
    }

    pub fn inv(&self) -> Result<Scalar> {
        if !self.is_unit() {
            return Err(Error::NonUnit(self.to_string()));
        }
        Ok(match self {
            Scalar::Int(a) => Scalar::Int(a.clone()),
            Scalar::Rat(a) => Scalar::Rat(a.recip()),
            Scalar::Mod { value, modulus } => {
                let e = (*value as i128).extended_gcd(&(*modulus as i128));
                Scalar::Mod { value: e.x.rem_euclid(*modulus as i128) as u64, modulus: *modulus }
            }
            Scalar::Poly(p) => Scalar::Poly(p.clone()),
        })
    }

    /// Integer value, for the integer ring only.
    pub fn as_int(&self) -> Option<&BigInt> {
        match self {
            Scalar::Int(a) => Some(a),
            _ => None,
        }
    }

    pub fn as_poly(&self) -> Option<&Poly> {
        match self {
            Scalar::Poly(p) => Some(p),
            _ => None,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        match self {
            Scalar::Int(a) => a.to_i64().map(serde_json::Value::from).unwrap_or_else(|| a.to_string().into()),
            Scalar::Mod { value, .. } => (*value).into(),
            Scalar::Rat(_) | Scalar::Poly(_) => self.to_string().into(),
        }
    }
}

/// Evaluates a polynomial scalar at an integer assignment.
pub fn poly_eval(p: &Scalar, assignment: &HashMap<String, BigInt>) -> Result<BigInt> {
    match p {
        Scalar::Poly(p) => p.eval(assignment),
        other => Err(Error::RingMismatch(other.ring().to_string(), "polynomial".into())),
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Int(a) => write!(f, "{a}"),
            Scalar::Rat(a) if a.is_integer() => write!(f, "{}", a.numer()),
            Scalar::Rat(a) => write!(f, "{}/{}", a.numer(), a.denom()),
            Scalar::Mod { value, .. } => write!(f, "{value}"),
            Scalar::Poly(p) => write!(f, "{p}"),
        }
    }
}

// Operator forms panic on mixed rings; use the `try_*` methods for
// operands whose rings are not already known to agree.
impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.add_unchecked(rhs)
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self.add_unchecked(&rhs.neg_value())
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.mul_unchecked(rhs)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_value()
    }
}
