//! Two-sided ideals of `ℤ[X]` as sublattices of ℤⁿ (coordinates in the basis
//! `X`): augmentation ideals and their powers, closures, and the
//! correspondence between ideals and subquandles.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::coeff::CoeffRing;
use crate::error::{Error, Result};
use crate::par::Exec;
use crate::quandle::{are_isomorphic, FiniteRack, QuandleHom};
use crate::ring::{mul_int, RingElt};
use crate::zlattice::{hnf, integer_kernel, quotient_shape, IntLattice, QuotientShape, ZVec};

fn unit_vec(n: usize, i: usize) -> ZVec {
    let mut v = vec![BigInt::zero(); n];
    v[i] = BigInt::one();
    v
}

/// `x_i · v` for a basis element `x_i`.
pub fn left_mul_basis(rack: &FiniteRack, i: usize, v: &[BigInt]) -> ZVec {
    let mut out = vec![BigInt::zero(); rack.size()];
    for (j, c) in v.iter().enumerate() {
        if !c.is_zero() {
            out[rack.op(i, j)] += c;
        }
    }
    out
}

/// `v · x_j` for a basis element `x_j`.
pub fn right_mul_basis(rack: &FiniteRack, v: &[BigInt], j: usize) -> ZVec {
    let mut out = vec![BigInt::zero(); rack.size()];
    for (i, c) in v.iter().enumerate() {
        if !c.is_zero() {
            out[rack.op(i, j)] += c;
        }
    }
    out
}

/// Whether `lattice` is closed under multiplication by `X` on both sides.
pub fn is_two_sided(rack: &FiniteRack, lattice: &IntLattice) -> bool {
    lattice.basis().iter().all(|v| {
        (0..rack.size()).all(|x| {
            lattice.contains(&left_mul_basis(rack, x, v)).unwrap_or(false)
                && lattice.contains(&right_mul_basis(rack, v, x)).unwrap_or(false)
        })
    })
}

/// An additive subgroup of `ℤ[X]`, optionally certified as a two-sided ideal.
#[derive(Debug, Clone)]
pub struct IdealHandle {
    rack: Arc<FiniteRack>,
    lattice: IntLattice,
    certified: bool,
}

impl IdealHandle {
    /// Wraps a lattice without certifying it.
    pub fn new(rack: Arc<FiniteRack>, lattice: IntLattice) -> Result<Self> {
        if lattice.dim() != rack.size() {
            return Err(Error::DimensionMismatch { expected: rack.size(), found: lattice.dim() });
        }
        Ok(IdealHandle { rack, lattice, certified: false })
    }

    /// Verifies two-sided closure and sets the certificate.
    pub fn certify(mut self) -> Result<Self> {
        if !is_two_sided(&self.rack, &self.lattice) {
            return Err(Error::NotAnIdeal(self.lattice.to_string()));
        }
        self.certified = true;
        Ok(self)
    }

    fn certified_unchecked(rack: Arc<FiniteRack>, lattice: IntLattice) -> Self {
        IdealHandle { rack, lattice, certified: true }
    }

    pub fn rack(&self) -> &Arc<FiniteRack> {
        &self.rack
    }

    pub fn lattice(&self) -> &IntLattice {
        &self.lattice
    }

    pub fn is_certified(&self) -> bool {
        self.certified
    }

    pub fn contains(&self, v: &[BigInt]) -> Result<bool> {
        self.lattice.contains(v)
    }

    pub fn contains_elt(&self, u: &RingElt) -> Result<bool> {
        let v = u.to_int_vector().ok_or_else(|| Error::InvalidRing(u.ring().to_string()))?;
        self.contains(&v)
    }

    /// `x - y` as a coordinate vector.
    pub fn difference(&self, x: usize, y: usize) -> ZVec {
        let mut v = vec![BigInt::zero(); self.rack.size()];
        v[x] += 1;
        v[y] -= 1;
        v
    }

    fn require_certificate(&self) -> Result<()> {
        if self.certified {
            Ok(())
        } else {
            Err(Error::UncertifiedIdeal)
        }
    }
}

fn aug_generators(n: usize) -> Vec<ZVec> {
    (1..n)
        .map(|i| {
            let mut v = unit_vec(n, i);
            v[0] = BigInt::from(-1);
            v
        })
        .collect()
}

/// The augmentation ideal `Δ(X)` with basis `x_i - x_0`.
pub fn aug_ideal(rack: &Arc<FiniteRack>) -> IdealHandle {
    let n = rack.size();
    let lattice = hnf(&aug_generators(n), n).expect("dimensions agree");
    IdealHandle::certified_unchecked(rack.clone(), lattice)
}

/// Additive span of all products `u · v`, `u` from `a`, `v` from `b`.
pub fn product_lattice(rack: &FiniteRack, a: &IntLattice, b: &IntLattice, exec: Exec) -> IntLattice {
    let (ab, bb) = (a.basis(), b.basis());
    let products = exec.map(0..ab.len() * bb.len(), |k| mul_int(rack, &ab[k / bb.len()], &bb[k % bb.len()]));
    hnf(&products, rack.size()).expect("dimensions agree")
}

/// Bracketing convention for powers in a non-associative ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PowerConvention {
    /// `Δ^m = Σ_{a+b=m} Δ^a Δ^b`.
    #[default]
    Full,
    /// `Δ^m = Δ^{m-1} Δ + Δ Δ^{m-1}`.
    Sides,
}

/// `[Δ^1, …, Δ^k_max]`.
pub fn augmentation_powers(
    rack: &FiniteRack,
    k_max: usize,
    convention: PowerConvention,
    exec: Exec,
) -> Vec<IntLattice> {
    let n = rack.size();
    let mut powers: Vec<IntLattice> = Vec::with_capacity(k_max);
    if k_max == 0 {
        return powers;
    }
    powers.push(hnf(&aug_generators(n), n).expect("dimensions agree"));
    for m in 2..=k_max {
        let splits: Vec<(usize, usize)> = match convention {
            Convention::Full => (1..m).map(|a| (a, m - a)).collect(),
            Convention::Sides => vec![(m - 1, 1), (1, m - 1)],
        };
        let mut acc = IntLattice::zero(n);
        for (a, b) in splits {
            if powers[a - 1].is_zero() || powers[b - 1].is_zero() {
                continue;
            }
            let p = product_lattice(rack, &powers[a - 1], &powers[b - 1], exec);
            acc = acc.sum(&p).expect("dimensions agree");
        }
        powers.push(acc);
    }
    powers
}

use PowerConvention as Convention;

/// `Δ^k` as an ideal handle; certified when two-sided closure verifies.
pub fn ideal_power(rack: &Arc<FiniteRack>, k: usize, exec: Exec) -> Result<IdealHandle> {
    if k == 0 {
        return Err(Error::InvalidInput("power must be at least 1".into()));
    }
    let lattice = augmentation_powers(rack, k, Convention::Full, exec).pop().expect("k >= 1");
    let handle = IdealHandle::new(rack.clone(), lattice)?;
    let certified = is_two_sided(rack, handle.lattice());
    Ok(IdealHandle { certified, ..handle })
}

/// Δ¹ … Δ^{k+1} and the shapes of the successive quotients.
#[derive(Debug, Clone, Serialize)]
pub struct GradedSeries {
    pub rack: String,
    pub lattices: Vec<IntLattice>,
    pub shapes: Vec<QuotientShape>,
}

impl GradedSeries {
    /// `Δ^k`, 1-based.
    pub fn power(&self, k: usize) -> &IntLattice {
        &self.lattices[k - 1]
    }

    /// Shape of `Δ^k / Δ^{k+1}`, 1-based.
    pub fn shape(&self, k: usize) -> &QuotientShape {
        &self.shapes[k - 1]
    }
}

pub fn graded_series(rack: &FiniteRack, k_max: usize, exec: Exec) -> Result<GradedSeries> {
    if k_max == 0 {
        return Err(Error::InvalidInput("k_max must be at least 1".into()));
    }
    let lattices = augmentation_powers(rack, k_max + 1, Convention::Full, exec);
    let shapes = lattices.windows(2).map(|w| quotient_shape(&w[1], &w[0])).collect::<Result<Vec<_>>>()?;
    Ok(GradedSeries { rack: rack.label(), lattices, shapes })
}

/// Smallest two-sided ideal containing `gens`.
pub fn two_sided_closure(rack: &Arc<FiniteRack>, gens: &[ZVec]) -> Result<IdealHandle> {
    let n = rack.size();
    let mut lattice = hnf(gens, n)?;
    loop {
        let mut new_gens = Vec::new();
        for v in lattice.basis() {
            for x in 0..n {
                new_gens.push(left_mul_basis(rack, x, v));
                new_gens.push(right_mul_basis(rack, v, x));
            }
        }
        let next = lattice.extend(&new_gens)?;
        if next == lattice {
            return Ok(IdealHandle::certified_unchecked(rack.clone(), lattice));
        }
        lattice = next;
    }
}

/// Closure of integer-coefficient ring elements.
pub fn two_sided_closure_elts(rack: &Arc<FiniteRack>, gens: &[RingElt]) -> Result<IdealHandle> {
    let mut vecs = Vec::with_capacity(gens.len());
    for g in gens {
        if g.ring() != &CoeffRing::Int {
            return Err(Error::InvalidRing(g.ring().to_string()));
        }
        if !Arc::ptr_eq(g.rack(), rack) && g.rack().as_ref() != rack.as_ref() {
            return Err(Error::RackMismatch);
        }
        vecs.push(g.to_int_vector().expect("integer ring"));
    }
    two_sided_closure(rack, &vecs)
}

/// Closure after adjoining `m · x_i`, for questions over `ℤ/m`.
pub fn two_sided_closure_mod(rack: &Arc<FiniteRack>, gens: &[ZVec], m: u64) -> Result<IdealHandle> {
    let n = rack.size();
    let mut all = gens.to_vec();
    all.extend((0..n).map(|i| {
        let mut v = unit_vec(n, i);
        v[i] = BigInt::from(m);
        v
    }));
    two_sided_closure(rack, &all)
}

/// Ideal generated by `Δ(Y)` inside `ℤ[X]`.
pub fn relative_ideal(rack: &Arc<FiniteRack>, subset: &[usize]) -> Result<IdealHandle> {
    let n = rack.size();
    if let Some(&bad) = subset.iter().find(|&&y| y >= n) {
        return Err(Error::IndexOutOfRange { index: bad, size: n });
    }
    if subset.is_empty() {
        return Err(Error::Empty);
    }
    if !rack.is_closed(subset) {
        return Err(Error::NotClosed);
    }
    let y0 = subset[0];
    let gens: Vec<ZVec> = subset[1..]
        .iter()
        .map(|&y| {
            let mut v = unit_vec(n, y);
            v[y0] -= 1;
            v
        })
        .collect();
    two_sided_closure(rack, &gens)
}

/// `X_{I,x0} = {x : x - x0 ∈ I}`.
pub fn sub_from_ideal(ideal: &IdealHandle, x0: usize) -> Result<Vec<usize>> {
    ideal.require_certificate()?;
    let n = ideal.rack.size();
    if x0 >= n {
        return Err(Error::IndexOutOfRange { index: x0, size: n });
    }
    let mut block = Vec::new();
    for x in 0..n {
        if ideal.contains(&ideal.difference(x, x0))? {
            block.push(x);
        }
    }
    if !ideal.rack.is_closed(&block) {
        return Err(Error::NotClosed);
    }
    Ok(block)
}

/// The blocks `X_{I,x}`, ordered by least element.
pub fn partition_from_ideal(ideal: &IdealHandle) -> Result<Vec<Vec<usize>>> {
    ideal.require_certificate()?;
    let n = ideal.rack.size();
    let mut seen = vec![false; n];
    let mut blocks = Vec::new();
    for x in 0..n {
        if seen[x] {
            continue;
        }
        let block = sub_from_ideal(ideal, x)?;
        for &y in &block {
            seen[y] = true;
        }
        blocks.push(block);
    }
    Ok(blocks)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitPair {
    pub x0: usize,
    pub y0: usize,
    pub same_orbit: bool,
    pub equal_blocks: bool,
    pub isomorphic: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct OrbitIsoReport {
    pub blocks: Vec<Vec<usize>>,
    pub pairs: Vec<OrbitPair>,
}

impl OrbitIsoReport {
    /// Pairs in a common orbit whose blocks are all isomorphic.
    pub fn holds(&self) -> bool {
        self.pairs.iter().filter(|p| p.same_orbit).all(|p| p.isomorphic)
    }

    /// Cross-orbit pairs with non-isomorphic blocks.
    pub fn cross_orbit_differences(&self) -> Vec<&OrbitPair> {
        self.pairs.iter().filter(|p| !p.same_orbit && !p.isomorphic).collect()
    }
}

/// Compares `X_{I,x0}` and `X_{I,y0}` for every pair `x0 < y0`.
pub fn orbit_iso_check(ideal: &IdealHandle) -> Result<OrbitIsoReport> {
    let rack = &ideal.rack;
    if !rack.is_quandle() || !rack.is_involutary() {
        return Err(Error::HypothesisNotMet("quandle must be involutary".into()));
    }
    let n = rack.size();
    let orbits = rack.orbits()?;
    let mut orbit_of = vec![0; n];
    for (k, orbit) in orbits.iter().enumerate() {
        for &x in orbit {
            orbit_of[x] = k;
        }
    }
    let blocks: Vec<Vec<usize>> = (0..n).map(|x| sub_from_ideal(ideal, x)).collect::<Result<_>>()?;
    let subs: Vec<FiniteRack> = blocks.iter().map(|b| rack.subrack(b).map(|(s, _)| s)).collect::<Result<_>>()?;
    let mut pairs = Vec::new();
    for x0 in 0..n {
        for y0 in x0 + 1..n {
            pairs.push(OrbitPair {
                x0,
                y0,
                same_orbit: orbit_of[x0] == orbit_of[y0],
                equal_blocks: blocks[x0] == blocks[y0],
                isomorphic: are_isomorphic(&subs[x0], &subs[y0]).is_some(),
            });
        }
    }
    Ok(OrbitIsoReport { blocks, pairs })
}

/// `Ψ`: the kernel of `ℤ[X] → ℤ[X/∼]` induced by a homomorphism.
pub fn normal_ideal(hom: &QuandleHom<'_>) -> Result<IdealHandle> {
    let rack = Arc::new(hom.source().clone());
    let (classes, class_map) = hom.fibers();
    let matrix: Vec<ZVec> = class_map.iter().map(|&c| unit_vec(classes.len(), c)).collect();
    let lattice = integer_kernel(&matrix, classes.len())?;
    IdealHandle::new(rack, lattice)?.certify()
}

#[derive(Debug, Clone, Serialize)]
pub struct DictionaryReport {
    pub base_point: usize,
    pub fiber: Vec<usize>,
    pub kernel_basis: IntLattice,
    pub recovered: Vec<usize>,
    pub holds: bool,
}

/// Checks `Φ(Ψ(Y)) = Y` for `Y` the fiber of `f` through `x0`.
pub fn dictionary_check(hom: &QuandleHom<'_>, x0: usize) -> Result<DictionaryReport> {
    let n = hom.source().size();
    if x0 >= n {
        return Err(Error::IndexOutOfRange { index: x0, size: n });
    }
    let fiber = hom.fiber_of(x0);
    let ideal = normal_ideal(hom)?;
    let recovered = sub_from_ideal(&ideal, x0)?;
    Ok(DictionaryReport { base_point: x0, holds: recovered == fiber, fiber, kernel_basis: ideal.lattice, recovered })
}

/// `ΨΦ` applied to the whole ring `ℤ[X]`: returns the resulting lattice.
pub fn psi_phi_whole_ring(rack: &Arc<FiniteRack>) -> Result<IntLattice> {
    let whole = IdealHandle::certified_unchecked(rack.clone(), IntLattice::full(rack.size()));
    let block = sub_from_ideal(&whole, 0)?;
    let point = FiniteRack::trivial(1)?;
    let map = vec![0; block.len()];
    debug_assert_eq!(block.len(), rack.size());
    let collapse = QuandleHom::new(rack, &point, map)?;
    Ok(normal_ideal(&collapse)?.lattice)
}

/// `(X is trivial, Δ²(X) = 0)`.
pub fn trivial_iff_delta_sq_zero(rack: &FiniteRack, exec: Exec) -> (bool, bool) {
    let powers = augmentation_powers(rack, 2, Convention::Full, exec);
    let delta_sq_zero = powers.get(1).is_none_or(IntLattice::is_zero);
    (rack.is_trivial(), delta_sq_zero)
}

/// Product in `ℤ°[X]`, coordinates `(x_0, …, x_{n-1}, e)`.
pub fn ext_mul_int(rack: &FiniteRack, u: &[BigInt], v: &[BigInt]) -> ZVec {
    let n = rack.size();
    let (ub, ue) = (&u[..n], &u[n]);
    let (vb, ve) = (&v[..n], &v[n]);
    let mut out = mul_int(rack, ub, vb);
    for i in 0..n {
        out[i] += ue * &vb[i] + ve * &ub[i];
    }
    out.push(ue * ve);
    out
}

/// `Δ°(X)` spanned by `x - e`, in `n + 1` coordinates.
pub fn extended_aug_lattice(rack: &FiniteRack) -> IntLattice {
    let n = rack.size();
    let gens: Vec<ZVec> = (0..n)
        .map(|i| {
            let mut v = unit_vec(n + 1, i);
            v[n] = BigInt::from(-1);
            v
        })
        .collect();
    hnf(&gens, n + 1).expect("dimensions agree")
}

/// `(Δ°, Δ°²)`.
pub fn extended_delta_square(rack: &FiniteRack, exec: Exec) -> (IntLattice, IntLattice) {
    let n = rack.size();
    let delta = extended_aug_lattice(rack);
    let b = delta.basis();
    let products = exec.map(0..b.len() * b.len(), |k| ext_mul_int(rack, &b[k / b.len()], &b[k % b.len()]));
    let square = hnf(&products, n + 1).expect("dimensions agree");
    (delta, square)
}

pub fn extended_idempotent(rack: &FiniteRack, exec: Exec) -> bool {
    let (delta, square) = extended_delta_square(rack, exec);
    delta == square
}
