//! Subgroups of ℤⁿ in row-style Hermite normal form, Smith normal form with
//! transforms, and invariant factors of lattice quotients.
//!
//! All arithmetic is `BigInt`; nothing wraps.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

pub type ZVec = Vec<BigInt>;

pub fn zvec(values: &[i64]) -> ZVec {
    values.iter().map(|&v| BigInt::from(v)).collect()
}

fn axpy(target: &mut [BigInt], q: &BigInt, src: &[BigInt]) {
    // target -= q * src
    for (t, s) in target.iter_mut().zip(src) {
        if !s.is_zero() {
            *t -= q * s;
        }
    }
}

/// A subgroup of ℤⁿ. The basis is the canonical HNF: nonzero rows, strictly
/// increasing pivot columns, positive pivots, entries above each pivot
/// reduced into `[0, pivot)`. Equality is equality of this form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct IntLattice {
    dim: usize,
    #[serde(serialize_with = "serialize_rows")]
    basis: Vec<ZVec>,
}

fn serialize_rows<S: serde::Serializer>(rows: &[ZVec], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(rows.iter().map(|r| r.iter().map(int_json).collect::<Vec<_>>()))
}

pub(crate) fn int_json(v: &BigInt) -> serde_json::Value {
    num_traits::ToPrimitive::to_i64(v).map(serde_json::Value::from).unwrap_or_else(|| v.to_string().into())
}

pub(crate) fn serialize_int<S: serde::Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    serde::Serialize::serialize(&int_json(v), s)
}

fn serialize_ints<S: serde::Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(int_json))
}

/// Canonical HNF basis of the subgroup generated by `rows`.
pub fn hnf(rows: &[ZVec], dim: usize) -> Result<IntLattice> {
    if let Some(r) = rows.iter().find(|r| r.len() != dim) {
        return Err(Error::DimensionMismatch { expected: dim, found: r.len() });
    }
    let mut a: Vec<ZVec> = rows.iter().filter(|r| r.iter().any(|v| !v.is_zero())).cloned().collect();
    let m = a.len();
    let mut r = 0;
    for c in 0..dim {
        if r == m {
            break;
        }
        while let Some(p) = (r..m).filter(|&k| !a[k][c].is_zero()).min_by(|&x, &y| a[x][c].abs().cmp(&a[y][c].abs())) {
            a.swap(r, p);
            let (head, tail) = a.split_at_mut(r + 1);
            let pivot_row = &head[r];
            let mut clean = true;
            for row in tail.iter_mut() {
                if !row[c].is_zero() {
                    let q = row[c].div_floor(&pivot_row[c]);
                    axpy(row, &q, pivot_row);
                    clean &= row[c].is_zero();
                }
            }
            if !clean {
                continue;
            }
            if a[r][c].is_negative() {
                for v in a[r].iter_mut() {
                    *v = -&*v;
                }
            }
            let (above, rest) = a.split_at_mut(r);
            let pivot_row = &rest[0];
            for row in above.iter_mut() {
                let q = row[c].div_floor(&pivot_row[c]);
                if !q.is_zero() {
                    axpy(row, &q, pivot_row);
                }
            }
            r += 1;
            break;
        }
    }
    a.truncate(r);
    Ok(IntLattice { dim, basis: a })
}

impl IntLattice {
    pub fn zero(dim: usize) -> Self {
        IntLattice { dim, basis: Vec::new() }
    }

    /// ℤⁿ itself.
    pub fn full(dim: usize) -> Self {
        let basis =
            (0..dim).map(|i| (0..dim).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect();
        IntLattice { dim, basis }
    }

    pub fn from_rows(rows: &[ZVec], dim: usize) -> Result<Self> {
        hnf(rows, dim)
    }

    pub fn from_i64_rows(rows: &[&[i64]], dim: usize) -> Result<Self> {
        let rows: Vec<ZVec> = rows.iter().map(|r| zvec(r)).collect();
        hnf(&rows, dim)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[ZVec] {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    fn pivot(row: &[BigInt]) -> usize {
        row.iter().position(|v| !v.is_zero()).expect("HNF rows are nonzero")
    }

    fn check_dim(&self, found: usize) -> Result<()> {
        if found != self.dim {
            Err(Error::DimensionMismatch { expected: self.dim, found })
        } else {
            Ok(())
        }
    }

    /// Integer coordinates of `v` in the basis, by back-substitution against
    /// the pivots; `None` when `v` is not in the lattice.
    pub fn coordinates(&self, v: &[BigInt]) -> Result<Option<ZVec>> {
        self.check_dim(v.len())?;
        let mut w = v.to_vec();
        let mut coords = Vec::with_capacity(self.basis.len());
        for row in &self.basis {
            let p = Self::pivot(row);
            if w[..p].iter().any(|x| !x.is_zero()) {
                return Ok(None);
            }
            let (q, rem) = w[p].div_rem(&row[p]);
            if !rem.is_zero() {
                return Ok(None);
            }
            axpy(&mut w, &q, row);
            coords.push(q);
        }
        Ok(w.iter().all(Zero::is_zero).then_some(coords))
    }

    pub fn contains(&self, v: &[BigInt]) -> Result<bool> {
        Ok(self.coordinates(v)?.is_some())
    }

    /// `L1 + L2`.
    pub fn sum(&self, other: &IntLattice) -> Result<IntLattice> {
        self.check_dim(other.dim)?;
        let rows: Vec<ZVec> = self.basis.iter().chain(&other.basis).cloned().collect();
        hnf(&rows, self.dim)
    }

    /// Adds generators to the lattice.
    pub fn extend(&self, gens: &[ZVec]) -> Result<IntLattice> {
        let rows: Vec<ZVec> = self.basis.iter().chain(gens).cloned().collect();
        hnf(&rows, self.dim)
    }

    pub fn is_subset_of(&self, other: &IntLattice) -> Result<bool> {
        self.check_dim(other.dim)?;
        for row in &self.basis {
            if !other.contains(row)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Multiplies every vector by `k`.
    pub fn scaled(&self, k: &BigInt) -> IntLattice {
        if k.is_zero() {
            return IntLattice::zero(self.dim);
        }
        let rows: Vec<ZVec> = self.basis.iter().map(|r| r.iter().map(|v| v * k).collect()).collect();
        hnf(&rows, self.dim).expect("same dimension")
    }
}

impl fmt::Display for IntLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.basis.is_empty() {
            return write!(f, "[]");
        }
        let rows: Vec<String> = self
            .basis
            .iter()
            .map(|r| format!("[{}]", r.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")))
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

/// `U · A · V = diag(d_1, …, d_r, 0, …)` with `d_1 | d_2 | …` and `U`, `V`
/// unimodular.
#[derive(Debug, Clone)]
pub struct SmithForm {
    pub diag: Vec<BigInt>,
    pub left: Vec<ZVec>,
    pub right: Vec<ZVec>,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.diag.len()
    }
}

fn identity(n: usize) -> Vec<ZVec> {
    IntLattice::full(n).basis
}

/// Smith normal form of an `m × ncols` matrix by elementary operations,
/// tracking both transforms.
pub fn smith_normal_form(matrix: &[ZVec], ncols: usize) -> Result<SmithForm> {
    if let Some(r) = matrix.iter().find(|r| r.len() != ncols) {
        return Err(Error::DimensionMismatch { expected: ncols, found: r.len() });
    }
    let m = matrix.len();
    let n = ncols;
    let mut a: Vec<ZVec> = matrix.to_vec();
    let mut u = identity(m);
    let mut v = identity(n);
    let mut diag = Vec::new();

    let col_axpy = |mat: &mut Vec<ZVec>, target: usize, q: &BigInt, src: usize| {
        for row in mat.iter_mut() {
            if !row[src].is_zero() {
                let d = q * &row[src];
                row[target] -= d;
            }
        }
    };

    for t in 0..m.min(n) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    if !a[i][j].is_zero() && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return Ok(SmithForm { diag, left: u, right: v });
            };
            a.swap(t, pi);
            u.swap(t, pi);
            if pj != t {
                for row in a.iter_mut() {
                    row.swap(t, pj);
                }
                for row in v.iter_mut() {
                    row.swap(t, pj);
                }
            }
            let mut clean = true;
            for i in t + 1..m {
                if !a[i][t].is_zero() {
                    let q = a[i][t].div_floor(&a[t][t]);
                    let (src, dst) = (a[t].clone(), &mut a[i]);
                    axpy(dst, &q, &src);
                    let usrc = u[t].clone();
                    axpy(&mut u[i], &q, &usrc);
                    clean &= a[i][t].is_zero();
                }
            }
            for j in t + 1..n {
                if !a[t][j].is_zero() {
                    let q = a[t][j].div_floor(&a[t][t]);
                    col_axpy(&mut a, j, &q, t);
                    col_axpy(&mut v, j, &q, t);
                    clean &= a[t][j].is_zero();
                }
            }
            if !clean {
                continue;
            }
            let pivot = a[t][t].clone();
            let offender = (t + 1..m).find(|&i| (t + 1..n).any(|j| !a[i][j].is_multiple_of(&pivot)));
            if let Some(i) = offender {
                let (src, usrc) = (a[i].clone(), u[i].clone());
                axpy(&mut a[t], &-BigInt::one(), &src);
                axpy(&mut u[t], &-BigInt::one(), &usrc);
                continue;
            }
            break;
        }
        if a[t][t].is_negative() {
            for x in a[t].iter_mut() {
                *x = -&*x;
            }
            for x in u[t].iter_mut() {
                *x = -&*x;
            }
        }
        diag.push(a[t][t].clone());
    }
    Ok(SmithForm { diag, left: u, right: v })
}

/// Shape of a finitely generated abelian group `ℤ^r ⊕ ℤ/d_1 ⊕ …`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuotientShape {
    pub free_rank: usize,
    #[serde(serialize_with = "serialize_ints")]
    pub torsion: Vec<BigInt>,
}

impl QuotientShape {
    pub fn new(free_rank: usize, torsion: &[i64]) -> Self {
        QuotientShape { free_rank, torsion: zvec(torsion) }
    }

    /// Group order, or `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        (self.free_rank == 0).then(|| self.torsion.iter().product())
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Cyclic of order `n` (`ℤ_n`).
    pub fn is_cyclic_of_order(&self, n: u64) -> bool {
        self.free_rank == 0
            && match self.torsion.as_slice() {
                [] => n == 1,
                [d] => *d == BigInt::from(n),
                _ => false,
            }
    }
}

impl fmt::Display for QuotientShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Invariant factors of `sup / sub`.
pub fn quotient_shape(sub: &IntLattice, sup: &IntLattice) -> Result<QuotientShape> {
    sup.check_dim(sub.dim)?;
    let mut coords = Vec::with_capacity(sub.rank());
    for row in &sub.basis {
        coords.push(sup.coordinates(row)?.ok_or(Error::NotContained)?);
    }
    let snf = smith_normal_form(&coords, sup.rank())?;
    let torsion = snf.diag.iter().filter(|d| !d.is_one()).cloned().collect();
    Ok(QuotientShape { free_rank: sup.rank() - snf.rank(), torsion })
}

/// `{v ∈ ℤ^m : v · M = 0}` for an `m × ncols` matrix `M`.
pub fn integer_kernel(matrix: &[ZVec], ncols: usize) -> Result<IntLattice> {
    let m = matrix.len();
    let snf = smith_normal_form(matrix, ncols)?;
    let rows: Vec<ZVec> = snf.left[snf.rank()..].to_vec();
    hnf(&rows, m)
}
