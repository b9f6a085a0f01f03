//! Units of the extended ring `R°[X]`: closed forms for trivial racks, the
//! `𝒱 = 𝒱₁ ⋊ 𝒱₂` splitting, commutator sequences, centers and latin-rack
//! central units.

use std::collections::HashSet;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::coeff::{CoeffRing, Scalar};
use crate::error::{Error, Result};
use crate::par::{box_point, box_size, Exec};
use crate::quandle::FiniteRack;
use crate::ring::{ExtElt, RingElt};
use crate::zlattice::{integer_kernel, IntLattice, ZVec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum UnitClass {
    V1,
    V2,
    General,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitRecord {
    pub element: ExtElt,
    pub inverse: ExtElt,
    pub class: UnitClass,
    pub epsilon: Scalar,
}

impl UnitRecord {
    fn build(element: ExtElt, inverse: ExtElt, x0: usize) -> Self {
        let class = classify(&element, x0);
        let epsilon = element.augmentation();
        UnitRecord { element, inverse, class, epsilon }
    }

    /// `element · inverse = inverse · element = e`.
    pub fn verify(&self) -> Result<bool> {
        Ok(self.element.mul(&self.inverse)?.is_identity() && self.inverse.mul(&self.element)?.is_identity())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "element": self.element.to_json(),
            "inverse": self.inverse.to_json(),
            "class": self.class,
            "epsilon": self.epsilon.to_json(),
        })
    }
}

fn classify(u: &ExtElt, x0: usize) -> UnitClass {
    if !u.unit_coeff().is_one() {
        return UnitClass::General;
    }
    if u.augmentation().is_one() {
        return UnitClass::V1;
    }
    let body = u.body();
    let lambda = u.augmentation();
    let only_x0 = body.coeffs().iter().enumerate().all(|(i, c)| i == x0 || c.is_zero());
    if only_x0 && lambda.is_unit() {
        UnitClass::V2
    } else {
        UnitClass::General
    }
}

fn require_trivial(rack: &FiniteRack) -> Result<()> {
    if rack.is_trivial() {
        Ok(())
    } else {
        Err(Error::HypothesisNotMet(format!("{} is not a trivial rack", rack.label())))
    }
}

fn require_unital_numeric(ring: &CoeffRing) -> Result<()> {
    match ring {
        CoeffRing::Poly(_) => Err(Error::InvalidRing(ring.to_string())),
        _ => Ok(()),
    }
}

fn check_index(rack: &FiniteRack, x0: usize) -> Result<()> {
    if x0 >= rack.size() {
        Err(Error::IndexOutOfRange { index: x0, size: rack.size() })
    } else {
        Ok(())
    }
}

/// The normalized form `u = e + a + α(x0 - e)` of an element with `ε(u) = 1`.
pub fn normalized_decomposition(u: &ExtElt, x0: usize) -> Result<Option<(RingElt, Scalar)>> {
    check_index(u.rack(), x0)?;
    if !u.augmentation().is_one() {
        return Ok(None);
    }
    let ring = u.ring().clone();
    let alpha = &ring.one() - u.unit_coeff();
    let x = RingElt::basis(u.rack().clone(), ring, x0)?;
    let a = u.body().sub(&x.scale(&alpha)?)?;
    Ok(Some((a, alpha)))
}

/// Inverse of a normalized unit of `R°[T]` in closed form:
/// `e + (α-1)⁻¹a + (α/(α-1))(x0 - e)`.
pub fn normalized_inverse(u: &ExtElt, x0: usize) -> Result<Option<ExtElt>> {
    require_trivial(u.rack())?;
    let Some((a, alpha)) = normalized_decomposition(u, x0)? else {
        return Ok(None);
    };
    let ring = u.ring().clone();
    let am1 = &alpha - &ring.one();
    if !am1.is_unit() {
        return Ok(None);
    }
    let inv = am1.inv()?;
    let beta = &alpha * &inv;
    let x = RingElt::basis(u.rack().clone(), ring.clone(), x0)?;
    let body = a.scale(&inv)?.add(&x.scale(&beta)?)?;
    Ok(Some(ExtElt::new(body, &ring.one() - &beta)?))
}

/// Unit test for `R°[T]`, `T` trivial: `u = λ u₁` with `λ = ε(u)` a unit and
/// `u₁` a normalized unit. Returns the record with its inverse, or `None`.
pub fn trivial_rack_unit(u: &ExtElt, x0: usize) -> Result<Option<UnitRecord>> {
    require_trivial(u.rack())?;
    require_unital_numeric(u.ring())?;
    check_index(u.rack(), x0)?;
    let lambda = u.augmentation();
    if !lambda.is_unit() {
        return Ok(None);
    }
    let linv = lambda.inv()?;
    let normalized = u.scale(&linv)?;
    let Some(n_inv) = normalized_inverse(&normalized, x0)? else {
        return Ok(None);
    };
    let inverse = n_inv.scale(&linv)?;
    Ok(Some(UnitRecord::build(u.clone(), inverse, x0)))
}

/// `v = u₁ u₂` with `u₁ ∈ 𝒱₁`, `u₂ = e + (ε(v)-1)x0 ∈ 𝒱₂`.
#[derive(Debug, Clone)]
pub struct VDecomposition {
    pub u1: ExtElt,
    pub u2: ExtElt,
    pub recombines: bool,
}

pub fn v_decompose(v: &ExtElt, x0: usize) -> Result<VDecomposition> {
    check_index(v.rack(), x0)?;
    if !v.unit_coeff().is_one() {
        return Err(Error::InvalidInput(format!("{v} is not of the form e + a")));
    }
    let lambda = v.augmentation();
    if !lambda.is_unit() {
        return Err(Error::NonUnitAugmentation(lambda.to_string()));
    }
    let ring = v.ring().clone();
    let rack = v.rack().clone();
    let one = ring.one();
    let x = RingElt::basis(rack.clone(), ring.clone(), x0)?;
    let a0 = v.body().sub(&x.scale(&(&lambda - &one))?)?;
    let factor = ExtElt::new(x.scale(&(&lambda.inv()? - &one))?, one.clone())?;
    let u1 = ExtElt::new(RingElt::zero(rack.clone(), ring.clone()), one.clone())?
        .add(&ExtElt::from_body(a0).mul(&factor)?)?;
    let u2 = ExtElt::new(x.scale(&(&lambda - &one))?, one)?;
    let recombines = u1.mul(&u2)? == *v;
    Ok(VDecomposition { u1, u2, recombines })
}

/// Where an exhaustive unit scan draws coefficients from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScanDomain {
    /// Integers in `[-r, r]`.
    IntBox(i64),
    /// All of `ℤ/m`.
    Mod(u64),
}

impl ScanDomain {
    fn ring(self) -> CoeffRing {
        match self {
            ScanDomain::IntBox(_) => CoeffRing::Int,
            ScanDomain::Mod(m) => CoeffRing::Mod(m),
        }
    }

    fn count(self, len: usize) -> Option<usize> {
        match self {
            ScanDomain::IntBox(r) => box_size(len, r),
            ScanDomain::Mod(m) => (m as usize).checked_pow(len as u32),
        }
    }

    fn point(self, index: usize, len: usize) -> Vec<i64> {
        match self {
            ScanDomain::IntBox(r) => box_point(index, len, r),
            ScanDomain::Mod(m) => {
                let mut out = vec![0; len];
                let mut rest = index;
                for slot in out.iter_mut().rev() {
                    *slot = (rest % m as usize) as i64;
                    rest /= m as usize;
                }
                out
            }
        }
    }

    fn reduce(self, v: i64) -> i64 {
        match self {
            ScanDomain::IntBox(_) => v,
            ScanDomain::Mod(m) => v.rem_euclid(m as i64),
        }
    }
}

/// Product in `R°[X]` on small coordinates `(x_0..x_{n-1}, e)`, straight
/// from the Cayley table.
fn ext_mul_small(rack: &FiniteRack, dom: ScanDomain, u: &[i64], v: &[i64]) -> Vec<i64> {
    let n = rack.size();
    let mut out = vec![0i64; n + 1];
    for i in 0..n {
        if u[i] == 0 {
            continue;
        }
        for j in 0..n {
            out[rack.op(i, j)] += u[i] * v[j];
        }
    }
    for i in 0..n {
        out[i] += u[n] * v[i] + v[n] * u[i];
    }
    out[n] = u[n] * v[n];
    out.iter().map(|&c| dom.reduce(c)).collect()
}

fn is_identity_small(v: &[i64]) -> bool {
    let n = v.len() - 1;
    v[..n].iter().all(|&c| c == 0) && v[n] == 1
}

/// Every element of the scan domain with a two-sided inverse inside the same
/// domain, by brute force over all pairs. Coordinates are `(x_0.., e)`.
pub fn unit_scan(rack: &FiniteRack, dom: ScanDomain, cap: usize, exec: Exec) -> Result<Vec<(Vec<i64>, Vec<i64>)>> {
    if let ScanDomain::IntBox(r) = dom {
        if !(0..=1000).contains(&r) {
            return Err(Error::InvalidInput(format!("box radius {r}")));
        }
    }
    let len = rack.size() + 1;
    let total = dom.count(len).filter(|&t| t <= cap).ok_or(Error::ResourceLimit { what: "unit scan", cap })?;
    let points: Vec<Vec<i64>> = (0..total).map(|k| dom.point(k, len)).collect();
    Ok(exec
        .map(0..total, |k| {
            let u = &points[k];
            points
                .iter()
                .find(|v| {
                    is_identity_small(&ext_mul_small(rack, dom, u, v))
                        && is_identity_small(&ext_mul_small(rack, dom, v, u))
                })
                .map(|v| (u.clone(), v.clone()))
        })
        .into_iter()
        .flatten()
        .collect())
}

pub fn small_to_ext(rack: &Arc<FiniteRack>, ring: &CoeffRing, coords: &[i64]) -> Result<ExtElt> {
    let n = rack.size();
    ExtElt::from_ints(rack.clone(), ring.clone(), &coords[..n], coords[n])
}

/// Compares a brute-force scan against the closed form over trivial racks.
#[derive(Debug, Clone, Serialize)]
pub struct ClosedFormComparison {
    pub scanned: usize,
    pub units_found: usize,
    pub closed_form_units: usize,
    pub agree: bool,
    pub mismatches: Vec<Vec<i64>>,
}

pub fn compare_with_closed_form(
    rack: &Arc<FiniteRack>,
    dom: ScanDomain,
    cap: usize,
    exec: Exec,
) -> Result<ClosedFormComparison> {
    require_trivial(rack)?;
    let ring = dom.ring();
    let found = unit_scan(rack, dom, cap, exec)?;
    let found_set: HashSet<Vec<i64>> = found.iter().map(|(u, _)| u.clone()).collect();
    let len = rack.size() + 1;
    let total = dom.count(len).expect("scan succeeded");
    let mut mismatches = Vec::new();
    let mut closed = 0;
    for k in 0..total {
        let p = dom.point(k, len);
        let u = small_to_ext(rack, &ring, &p)?;
        let admitted = trivial_rack_unit(&u, 0)?.is_some();
        closed += usize::from(admitted);
        if admitted != found_set.contains(&p) {
            mismatches.push(p);
        }
    }
    Ok(ClosedFormComparison {
        scanned: total,
        units_found: found.len(),
        closed_form_units: closed,
        agree: mismatches.is_empty(),
        mismatches,
    })
}

/// Exhaustive check of `1 → 𝒱₁ → 𝒱 → 𝒱₂ → 1` over `ℤ/m`.
#[derive(Debug, Clone, Serialize)]
pub struct SplitProbeReport {
    pub rack: String,
    pub modulus: u64,
    pub elements: usize,
    pub units: usize,
    pub v_size: usize,
    pub v1_size: usize,
    pub v2_size: usize,
    pub ring_units: usize,
    pub order_product_holds: bool,
    pub v1_normal: bool,
    pub phi_homomorphism: bool,
    pub kernel_is_v1: bool,
    pub closed_form_agrees: bool,
}

impl SplitProbeReport {
    pub fn holds(&self) -> bool {
        self.order_product_holds
            && self.v1_normal
            && self.phi_homomorphism
            && self.kernel_is_v1
            && self.closed_form_agrees
            && self.v2_size == self.ring_units
    }
}

fn coord_key(u: &ExtElt) -> (&[Scalar], &Scalar) {
    (u.body().coeffs(), u.unit_coeff())
}

/// `φ(v) = e + (ε(v) - 1) x0`.
pub fn phi(v: &ExtElt, x0: usize) -> Result<ExtElt> {
    let ring = v.ring().clone();
    let one = ring.one();
    let x = RingElt::basis(v.rack().clone(), ring, x0)?;
    ExtElt::new(x.scale(&(&v.augmentation() - &one))?, one)
}

pub fn split_sequence_probe(rack: &Arc<FiniteRack>, modulus: u64, cap: usize, exec: Exec) -> Result<SplitProbeReport> {
    require_trivial(rack)?;
    let ring = CoeffRing::modular(modulus)?;
    let dom = ScanDomain::Mod(modulus);
    let len = rack.size() + 1;
    let elements = dom.count(len).filter(|&t| t <= cap).ok_or(Error::ResourceLimit { what: "split probe", cap })?;
    let scan = unit_scan(rack, dom, cap, exec)?;
    let units: Vec<(ExtElt, ExtElt)> = scan
        .iter()
        .map(|(u, v)| Ok((small_to_ext(rack, &ring, u)?, small_to_ext(rack, &ring, v)?)))
        .collect::<Result<_>>()?;
    let closed = compare_with_closed_form(rack, dom, cap, exec)?;

    let v: Vec<&(ExtElt, ExtElt)> = units.iter().filter(|(u, _)| u.unit_coeff().is_one()).collect();
    let v1: Vec<&ExtElt> = v.iter().filter(|(u, _)| u.augmentation().is_one()).map(|(u, _)| u).collect();
    let v1_set: HashSet<(&[Scalar], &Scalar)> = v1.iter().copied().map(coord_key).collect();
    let ring_units: Vec<Scalar> = ring.elements().expect("finite").into_iter().filter(Scalar::is_unit).collect();
    let x0 = 0;
    let v2: Vec<ExtElt> = ring_units
        .iter()
        .map(|l| {
            let x = RingElt::basis(rack.clone(), ring.clone(), x0)?;
            ExtElt::new(x.scale(&(l - &ring.one()))?, ring.one())
        })
        .collect::<Result<_>>()?;

    let mut v1_normal = true;
    for (g, g_inv) in &units {
        for r in &v1 {
            let conj = g_inv.mul(r)?.mul(g)?;
            v1_normal &= v1_set.contains(&coord_key(&conj));
        }
    }
    let mut phi_hom = true;
    for (a, _) in &v {
        for (b, _) in &v {
            phi_hom &= phi(&a.mul(b)?, x0)? == phi(a, x0)?.mul(&phi(b, x0)?)?;
        }
    }
    let identity = ExtElt::identity(rack.clone(), ring.clone());
    let mut kernel: Vec<&ExtElt> = Vec::new();
    for (a, _) in &v {
        if phi(a, x0)? == identity {
            kernel.push(a);
        }
    }
    let kernel_set: HashSet<(&[Scalar], &Scalar)> = kernel.into_iter().map(coord_key).collect();
    let v2_in_v = v2.iter().all(|w| v.iter().any(|(u, _)| u == w));

    Ok(SplitProbeReport {
        rack: rack.label(),
        modulus,
        elements,
        units: units.len(),
        v_size: v.len(),
        v1_size: v1.len(),
        v2_size: v2.len(),
        ring_units: ring_units.len(),
        order_product_holds: v.len() == v1.len() * v2.len() && v2_in_v,
        v1_normal,
        phi_homomorphism: phi_hom,
        kernel_is_v1: kernel_set == v1_set,
        closed_form_agrees: closed.agree,
    })
}

/// `[v, u] = v⁻¹u⁻¹vu` over a trivial rack (associative there).
pub fn commutator(v: &ExtElt, u: &ExtElt) -> Result<ExtElt> {
    let vi = trivial_rack_unit(v, 0)?.ok_or_else(|| Error::NonUnit(v.to_string()))?.inverse;
    let ui = trivial_rack_unit(u, 0)?.ok_or_else(|| Error::NonUnit(u.to_string()))?.inverse;
    vi.mul(&ui)?.mul(v)?.mul(u)
}

/// `e + (y - x) + (λ - 1) x` in `R°[T₂]`.
pub fn t2_element(rack: &Arc<FiniteRack>, ring: &CoeffRing, lambda: &Scalar) -> Result<ExtElt> {
    if rack.size() != 2 {
        return Err(Error::HypothesisNotMet("expected a two-element rack".into()));
    }
    let one = ring.one();
    let body = RingElt::new(rack.clone(), ring.clone(), vec![&(lambda - &one) - &one, one.clone()])?;
    ExtElt::new(body, one)
}

#[derive(Debug, Clone)]
pub struct CommutatorReport {
    pub terms: Vec<ExtElt>,
    pub closed_form: Vec<ExtElt>,
}

impl CommutatorReport {
    pub fn matches(&self) -> bool {
        self.terms == self.closed_form
    }

    /// First index (1-based) with `w_n = e`.
    pub fn first_identity(&self) -> Option<usize> {
        self.terms.iter().position(ExtElt::is_identity).map(|i| i + 1)
    }
}

/// `w_1 = [v,u]`, `w_n = [w_{n-1}, u]` alongside
/// `e + (ε(u) - ε(v))(ε(u) - 1)^{n-1}(y - x)`.
pub fn commutator_sequence(v: &ExtElt, u: &ExtElt, depth: usize) -> Result<CommutatorReport> {
    let rack = v.rack().clone();
    require_trivial(&rack)?;
    if rack.size() != 2 {
        return Err(Error::HypothesisNotMet("commutator sequence is defined on T2".into()));
    }
    let ring = v.ring().clone();
    if matches!(ring, CoeffRing::Int | CoeffRing::Poly(_)) {
        return Err(Error::InvalidRing(ring.to_string()));
    }
    let (ev, eu) = (v.augmentation(), u.augmentation());
    for e in [&ev, &eu] {
        if !e.is_unit() {
            return Err(Error::NonUnitAugmentation(e.to_string()));
        }
    }
    let one = ring.one();
    let y_minus_x = RingElt::new(rack.clone(), ring.clone(), vec![-&one, one.clone()])?;
    let mut terms = Vec::with_capacity(depth);
    let mut closed_form = Vec::with_capacity(depth);
    let mut w = v.clone();
    let mut coeff = &eu - &ev;
    for _ in 0..depth {
        w = commutator(&w, u)?;
        terms.push(w.clone());
        closed_form.push(ExtElt::new(y_minus_x.scale(&coeff)?, one.clone())?);
        coeff = &coeff * &(&eu - &one);
    }
    Ok(CommutatorReport { terms, closed_form })
}

/// Integer vectors `u` with `u · x_j = x_j · u` for all `j`.
#[derive(Debug, Clone, Serialize)]
pub struct CenterLattice {
    pub rack: String,
    pub lattice: IntLattice,
}

pub fn center_lattice(rack: &FiniteRack) -> Result<CenterLattice> {
    let n = rack.size();
    let mut matrix: Vec<ZVec> = vec![vec![BigInt::zero(); n * n]; n];
    for (i, row) in matrix.iter_mut().enumerate() {
        for j in 0..n {
            row[j * n + rack.op(i, j)] += 1;
            row[j * n + rack.op(j, i)] -= 1;
        }
    }
    Ok(CenterLattice { rack: rack.label(), lattice: integer_kernel(&matrix, n * n)? })
}

/// `w = Σ x_i`.
pub fn sum_element(rack: &Arc<FiniteRack>, ring: &CoeffRing) -> RingElt {
    RingElt::new(rack.clone(), ring.clone(), vec![ring.one(); rack.size()]).expect("ring matches")
}

/// `(w·x_i = w ∀i, x_i·w = w ∀i)`.
pub fn w_absorption(rack: &Arc<FiniteRack>) -> Result<(bool, bool)> {
    let w = sum_element(rack, &CoeffRing::Int);
    let mut right = true;
    let mut left = true;
    for i in 0..rack.size() {
        let x = RingElt::basis(rack.clone(), CoeffRing::Int, i)?;
        right &= w.mul(&x)? == w;
        left &= x.mul(&w)? == w;
    }
    Ok((right, left))
}

#[derive(Debug, Clone)]
pub struct LatinUnitReport {
    pub record: UnitRecord,
    pub inverse_verified: bool,
    pub w_central: bool,
    pub idempotent: bool,
}

/// `e + αw` with inverse `e - α/(1+nα) w` in `ℚ°[X]`, `X` latin.
pub fn latin_central_units(rack: &Arc<FiniteRack>, alpha: &Scalar) -> Result<LatinUnitReport> {
    if !rack.is_latin() {
        return Err(Error::HypothesisNotMet(format!("{} is not latin", rack.label())));
    }
    let alpha = match alpha {
        Scalar::Rat(_) => alpha.clone(),
        Scalar::Int(a) => Scalar::Rat(a.clone().into()),
        other => return Err(Error::InvalidRing(other.ring().to_string())),
    };
    let ring = CoeffRing::Rat;
    let n = ring.from_int(rack.size() as i64);
    let denom = &ring.one() + &(&n * &alpha);
    if denom.is_zero() {
        return Err(Error::SingularUnit(alpha.to_string()));
    }
    let w = sum_element(rack, &ring);
    let beta = -&(&alpha * &denom.inv()?);
    let element = ExtElt::new(w.scale(&alpha)?, ring.one())?;
    let inverse = ExtElt::new(w.scale(&beta)?, ring.one())?;
    let record = UnitRecord::build(element, inverse, 0);
    let inverse_verified = record.verify()?;

    let center = center_lattice(rack)?;
    let w_int = vec![BigInt::from(1); rack.size()];
    let mut w_central = center.lattice.contains(&w_int)?;
    for j in 0..rack.size() {
        let x = RingElt::basis(rack.clone(), ring.clone(), j)?;
        w_central &= w.mul(&x)? == x.mul(&w)?;
    }
    let p = w.scale(&n.inv()?)?;
    let idempotent = p.mul(&p)? == p;
    Ok(LatinUnitReport { record, inverse_verified, w_central, idempotent })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(n: usize) -> Arc<FiniteRack> {
        Arc::new(FiniteRack::trivial(n).unwrap())
    }

    #[test]
    fn identity_is_its_own_inverse() {
        let r = t(3);
        let e = ExtElt::identity(r, CoeffRing::Int);
        let rec = trivial_rack_unit(&e, 0).unwrap().unwrap();
        assert!(rec.inverse.is_identity());
        assert_eq!(rec.class, UnitClass::V1);
    }

    #[test]
    fn t1_units_over_z() {
        let r = t(1);
        let mk = |b: i64, e: i64| ExtElt::from_ints(r.clone(), CoeffRing::Int, &[b], e).unwrap();
        for (b, e) in [(0, 1), (0, -1), (2, -1), (-2, 1)] {
            let rec = trivial_rack_unit(&mk(b, e), 0).unwrap().unwrap();
            assert!(rec.verify().unwrap());
        }
        assert!(trivial_rack_unit(&mk(1, 1), 0).unwrap().is_none());
        assert!(trivial_rack_unit(&mk(1, 0), 0).unwrap().is_none());
        let cmp = compare_with_closed_form(&r, ScanDomain::IntBox(3), 1 << 20, Exec::default()).unwrap();
        assert!(cmp.agree);
        assert_eq!(cmp.units_found, 4);
    }

    #[test]
    fn non_trivial_rack_rejected() {
        let r = Arc::new(FiniteRack::dihedral(3).unwrap());
        let e = ExtElt::identity(r, CoeffRing::Int);
        assert!(matches!(trivial_rack_unit(&e, 0), Err(Error::HypothesisNotMet(_))));
    }

    #[test]
    fn decomposition_mod5() {
        let r = t(2);
        let ring = CoeffRing::modular(5).unwrap();
        let v = t2_element(&r, &ring, &ring.from_int(2)).unwrap();
        let d = v_decompose(&v, 0).unwrap();
        assert!(d.recombines);
        assert!(d.u1.augmentation().is_one());
        let v2 = phi(&v, 0).unwrap();
        let d = v_decompose(&v2, 0).unwrap();
        assert!(d.u1.is_identity() && d.u2 == v2);
        let bad = t2_element(&r, &ring, &ring.from_int(0)).unwrap();
        assert!(matches!(v_decompose(&bad, 0), Err(Error::NonUnitAugmentation(_))));
    }

    #[test]
    fn split_probe_mod5_t2() {
        let rep = split_sequence_probe(&t(2), 5, 10_000, Exec::default()).unwrap();
        assert_eq!(rep.elements, 125);
        assert_eq!(rep.v2_size, 4);
        assert!(rep.holds(), "{rep:?}");
    }

    #[test]
    fn commutators_over_q() {
        let r = t(2);
        let ring = CoeffRing::Rat;
        let v = t2_element(&r, &ring, &ring.from_int(2)).unwrap();
        let u = t2_element(&r, &ring, &ring.from_int(3)).unwrap();
        let rep = commutator_sequence(&v, &u, 5).unwrap();
        assert!(rep.matches());
        assert_eq!(rep.terms[1].body().coeff(1), &ring.from_int(2));
        let same = commutator_sequence(&u, &u, 1).unwrap();
        assert!(same.terms[0].is_identity());
        let one = t2_element(&r, &ring, &ring.one()).unwrap();
        let rep = commutator_sequence(&v, &one, 3).unwrap();
        assert_eq!(rep.first_identity(), Some(2));
    }

    #[test]
    fn centers() {
        let r3 = FiniteRack::dihedral(3).unwrap();
        let c = center_lattice(&r3).unwrap();
        assert!(c.lattice.contains(&crate::zlattice::zvec(&[1, 1, 1])).unwrap());
        let t2 = FiniteRack::trivial(2).unwrap();
        let c = center_lattice(&t2).unwrap();
        for a in -2..=2i64 {
            for b in -2..=2i64 {
                let u = [a, b];
                // u·x_j = ε(x_j)u = u, x_j·u = ε(u)x_j
                let central = (0..2).all(|j| (0..2).all(|k| u[k] == if k == j { a + b } else { 0 }));
                assert_eq!(c.lattice.contains(&crate::zlattice::zvec(&u)).unwrap(), central);
            }
        }
    }

    #[test]
    fn latin_units() {
        let r5 = Arc::new(FiniteRack::dihedral(5).unwrap());
        let rep = latin_central_units(&r5, &Scalar::rational(1, 1)).unwrap();
        assert!(rep.inverse_verified && rep.w_central && rep.idempotent);
        assert_eq!(rep.record.inverse.body().coeff(0), &Scalar::rational(-1, 6));
        let rep = latin_central_units(&r5, &Scalar::rational(0, 1)).unwrap();
        assert!(rep.record.element.is_identity() && rep.record.inverse.is_identity());
        assert!(matches!(latin_central_units(&r5, &Scalar::rational(-1, 5)), Err(Error::SingularUnit(_))));
        let r4 = Arc::new(FiniteRack::dihedral(4).unwrap());
        assert!(matches!(latin_central_units(&r4, &Scalar::rational(1, 1)), Err(Error::HypothesisNotMet(_))));
        assert_eq!(w_absorption(&r4).unwrap(), (true, false));
        assert_eq!(w_absorption(&r5).unwrap(), (true, true));
    }
}
