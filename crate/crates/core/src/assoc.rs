//! Associativity and the two low-degree power-associativity identities
//! `u²u = uu²` and `(u²u)u = u²u²`, numerically and with polynomial
//! coefficients.

use std::sync::Arc;

use num_bigint::BigInt;
use serde::Serialize;

use crate::coeff::{CoeffRing, Monomial, Poly, Scalar};
use crate::error::{Error, Result};
use crate::par::{box_point, box_size, Exec};
use crate::quandle::{FiniteGroup, FiniteRack};
use crate::ring::RingElt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AssocKind {
    Associative,
    NonAssociative,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AssocReport {
    pub kind: AssocKind,
    /// Lexicographically first `(x, y, z)` with `(xy)z ≠ x(yz)`.
    pub witness: Option<(usize, usize, usize)>,
}

impl AssocReport {
    pub fn is_associative(&self) -> bool {
        self.kind == AssocKind::Associative
    }
}

/// The ring `R[X]` is associative exactly when the basis is.
pub fn is_associative(rack: &FiniteRack, exec: Exec) -> AssocReport {
    let n = rack.size();
    let witness = exec.find_map_first(0..n * n * n, |k| {
        let (x, y, z) = (k / (n * n), (k / n) % n, k % n);
        (rack.op(rack.op(x, y), z) != rack.op(x, rack.op(y, z))).then_some((x, y, z))
    });
    let kind = if witness.is_some() { AssocKind::NonAssociative } else { AssocKind::Associative };
    AssocReport { kind, witness }
}

/// `(Core(G) is associative, G has exponent dividing 2)`.
pub fn core_exponent2_check(g: &FiniteGroup, exec: Exec) -> (bool, bool) {
    let core = FiniteRack::core(g);
    (is_associative(&core, exec).is_associative(), g.exponent_divides_two())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PowerIdentity {
    /// `u²u = uu²`.
    Cubic,
    /// `(u²u)u = u²u²`.
    Quartic,
}

impl PowerIdentity {
    pub fn describe(self) -> &'static str {
        match self {
            PowerIdentity::Cubic => "u^2*u = u*u^2",
            PowerIdentity::Quartic => "(u^2*u)*u = u^2*u^2",
        }
    }
}

/// All the products the two identities need.
#[derive(Debug, Clone)]
pub struct PowerProducts {
    pub u: RingElt,
    pub u2: RingElt,
    pub u2u: RingElt,
    pub uu2: RingElt,
    pub u2u_u: RingElt,
    pub u2u2: RingElt,
}

impl PowerProducts {
    pub fn compute(u: &RingElt) -> Result<Self> {
        let u2 = u.mul(u)?;
        let u2u = u2.mul(u)?;
        let uu2 = u.mul(&u2)?;
        let u2u_u = u2u.mul(u)?;
        let u2u2 = u2.mul(&u2)?;
        Ok(PowerProducts { u: u.clone(), u2, u2u, uu2, u2u_u, u2u2 })
    }

    /// `(lhs, rhs)` of an identity.
    pub fn sides(&self, id: PowerIdentity) -> (&RingElt, &RingElt) {
        match id {
            PowerIdentity::Cubic => (&self.u2u, &self.uu2),
            PowerIdentity::Quartic => (&self.u2u_u, &self.u2u2),
        }
    }

    pub fn holds(&self, id: PowerIdentity) -> bool {
        let (l, r) = self.sides(id);
        l == r
    }
}

#[derive(Debug, Clone)]
pub struct NumericWitness {
    pub identity: PowerIdentity,
    pub element: RingElt,
    pub basis_index: usize,
    pub lhs_value: Scalar,
    pub rhs_value: Scalar,
    pub products: PowerProducts,
}

impl NumericWitness {
    fn from_products(identity: PowerIdentity, products: PowerProducts) -> Option<Self> {
        let (l, r) = products.sides(identity);
        let i = (0..l.coeffs().len()).find(|&i| l.coeff(i) != r.coeff(i))?;
        Some(NumericWitness {
            identity,
            element: products.u.clone(),
            basis_index: i,
            lhs_value: l.coeff(i).clone(),
            rhs_value: r.coeff(i).clone(),
            products,
        })
    }

    /// Recomputes the products from scratch and confirms the inequality.
    pub fn reverify(&self) -> Result<bool> {
        let p = PowerProducts::compute(&self.element)?;
        let (l, r) = p.sides(self.identity);
        Ok(l.coeff(self.basis_index) == &self.lhs_value
            && r.coeff(self.basis_index) == &self.rhs_value
            && self.lhs_value != self.rhs_value)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let (l, r) = self.products.sides(self.identity);
        serde_json::json!({
            "identity": self.identity,
            "element": self.element.to_json(),
            "basis_index": self.basis_index,
            "lhs_value": self.lhs_value.to_json(),
            "rhs_value": self.rhs_value.to_json(),
            "lhs": l.to_json(),
            "rhs": r.to_json(),
        })
    }
}

/// Tests both identities at one integer element; the first failing
/// identity is reported.
pub fn check_element(rack: &Arc<FiniteRack>, coeffs: &[i64]) -> Result<Option<NumericWitness>> {
    let u = RingElt::from_ints(rack.clone(), CoeffRing::Int, coeffs)?;
    let products = PowerProducts::compute(&u)?;
    Ok([PowerIdentity::Cubic, PowerIdentity::Quartic]
        .into_iter()
        .find_map(|id| NumericWitness::from_products(id, products.clone())))
}

fn mul_small(rack: &FiniteRack, u: &[i128], v: &[i128]) -> Vec<i128> {
    let n = rack.size();
    let mut out = vec![0i128; n];
    for i in 0..n {
        if u[i] == 0 {
            continue;
        }
        for j in 0..n {
            out[rack.op(i, j)] += u[i] * v[j];
        }
    }
    out
}

fn fails_somewhere(rack: &FiniteRack, u: &[i128]) -> bool {
    let u2 = mul_small(rack, u, u);
    let u2u = mul_small(rack, &u2, u);
    u2u != mul_small(rack, u, &u2) || mul_small(rack, &u2u, u) != mul_small(rack, &u2, &u2)
}

/// Largest rack size the numeric scan accepts; keeps `i128` products exact
/// for radius up to [`MAX_RADIUS`].
pub const MAX_NUMERIC_SIZE: usize = 64;
pub const MAX_RADIUS: i64 = 1000;

/// First element of `[-r, r]^n` (lexicographic, starting at `(-r, …, -r)`)
/// violating either identity.
pub fn power_assoc_numeric(
    rack: &Arc<FiniteRack>,
    radius: i64,
    cap: usize,
    exec: Exec,
) -> Result<Option<NumericWitness>> {
    if !(1..=MAX_RADIUS).contains(&radius) {
        return Err(Error::InvalidInput(format!("box radius must be in 1..={MAX_RADIUS}")));
    }
    let n = rack.size();
    if n > MAX_NUMERIC_SIZE {
        return Err(Error::ResourceLimit { what: "numeric power-associativity size", cap: MAX_NUMERIC_SIZE });
    }
    let total = box_size(n, radius).filter(|&t| t <= cap).ok_or(Error::ResourceLimit { what: "box size", cap })?;
    let hit = exec.find_map_first(0..total, |k| {
        let p = box_point(k, n, radius);
        let u: Vec<i128> = p.iter().map(|&c| c as i128).collect();
        fails_somewhere(rack, &u).then_some(p)
    });
    match hit {
        None => Ok(None),
        Some(p) => check_element(rack, &p),
    }
}

/// One monomial on one basis element where the two sides disagree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MonomialDiff {
    pub basis_index: usize,
    pub monomial: String,
    #[serde(skip)]
    pub exponents: Monomial,
    #[serde(serialize_with = "crate::zlattice::serialize_int")]
    pub lhs: BigInt,
    #[serde(serialize_with = "crate::zlattice::serialize_int")]
    pub rhs: BigInt,
}

#[derive(Debug, Clone)]
pub struct SymbolicWitness {
    pub identity: PowerIdentity,
    /// Every disagreement, by basis index then monomial order.
    pub differences: Vec<MonomialDiff>,
    pub lhs: RingElt,
    pub rhs: RingElt,
}

impl SymbolicWitness {
    pub fn first(&self) -> &MonomialDiff {
        &self.differences[0]
    }

    /// The disagreement at a given basis index and exponent vector.
    pub fn find(&self, basis_index: usize, exponents: &[u32]) -> Option<&MonomialDiff> {
        self.differences.iter().find(|d| d.basis_index == basis_index && d.exponents == exponents)
    }

    /// Substitutes integers for the variables and re-checks the inequality
    /// through ordinary ring multiplication.
    pub fn reverify_at(&self, rack: &Arc<FiniteRack>, values: &[i64]) -> Result<bool> {
        let p = PowerProducts::compute(&RingElt::from_ints(rack.clone(), CoeffRing::Int, values)?)?;
        let (l, r) = p.sides(self.identity);
        let big: Vec<BigInt> = values.iter().map(|&v| BigInt::from(v)).collect();
        let eval = |e: &RingElt| -> Vec<BigInt> {
            e.coeffs().iter().map(|c| c.as_poly().expect("polynomial").eval_slice(&big)).collect()
        };
        let (le, re) = (eval(&self.lhs), eval(&self.rhs));
        Ok(l.to_int_vector() == Some(le) && r.to_int_vector() == Some(re))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "identity": self.identity,
            "differences": self.differences,
            "lhs": self.lhs.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            "rhs": self.rhs.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        })
    }
}

#[derive(Debug, Clone)]
pub struct SymbolicReport {
    pub products: PowerProducts,
    pub cubic: Option<SymbolicWitness>,
    pub quartic: Option<SymbolicWitness>,
}

pub const MAX_SYMBOLIC_SIZE: usize = 8;

/// Generic element `u = Σ c_i x_i` with `c_i` polynomial variables.
pub fn generic_element(rack: &Arc<FiniteRack>) -> Result<RingElt> {
    let names: Vec<String> = (0..rack.size()).map(|i| format!("c{i}")).collect();
    let ring = CoeffRing::poly(&names)?;
    let CoeffRing::Poly(vars) = &ring else { unreachable!() };
    let coeffs = (0..rack.size()).map(|i| Scalar::Poly(Poly::var(vars.clone(), i))).collect();
    RingElt::new(rack.clone(), ring, coeffs)
}

fn symbolic_witness(id: PowerIdentity, products: &PowerProducts) -> Option<SymbolicWitness> {
    let (l, r) = products.sides(id);
    let mut differences = Vec::new();
    for i in 0..l.coeffs().len() {
        let (lp, rp) = (l.coeff(i).as_poly().expect("polynomial"), r.coeff(i).as_poly().expect("polynomial"));
        let monos: std::collections::BTreeSet<&Monomial> = lp.terms().keys().chain(rp.terms().keys()).collect();
        for m in monos {
            let (a, b) = (lp.coefficient(m), rp.coefficient(m));
            if a != b {
                differences.push(MonomialDiff {
                    basis_index: i,
                    monomial: lp.monomial_string(m),
                    exponents: m.clone(),
                    lhs: a,
                    rhs: b,
                });
            }
        }
    }
    (!differences.is_empty()).then(|| SymbolicWitness { identity: id, differences, lhs: l.clone(), rhs: r.clone() })
}

/// Expands both identities with polynomial coefficients.
pub fn power_assoc_symbolic(rack: &Arc<FiniteRack>) -> Result<SymbolicReport> {
    if rack.size() > MAX_SYMBOLIC_SIZE {
        return Err(Error::ResourceLimit { what: "symbolic power-associativity size", cap: MAX_SYMBOLIC_SIZE });
    }
    let products = PowerProducts::compute(&generic_element(rack)?)?;
    let cubic = symbolic_witness(PowerIdentity::Cubic, &products);
    let quartic = symbolic_witness(PowerIdentity::Quartic, &products);
    Ok(SymbolicReport { products, cubic, quartic })
}
