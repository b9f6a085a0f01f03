//! Finite racks and quandles stored as Cayley tables.
//!
//! Elements are the indices `0..n`; `table[i][j]` is the index of `x_i · x_j`.
//! Right translations `S_j: i ↦ i·j` are the inner generators.

mod group;
mod hom;
mod iso;
mod perm;

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

pub use group::FiniteGroup;
pub use hom::{find_homs, QuandleHom};
pub use iso::are_isomorphic;
pub use perm::Permutation;

use crate::error::{Error, Result};
use crate::par::Exec;

/// Default cap on `|Inn(X)|` for [`FiniteRack::inner_group_closure`] (10!).
pub const DEFAULT_INN_CAP: usize = 3_628_800;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    NotRack,
    RackOnly,
    Quandle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RackFlags {
    pub is_rack: bool,
    pub is_quandle: bool,
    pub is_involutary: bool,
    pub is_latin: bool,
    pub is_connected: bool,
}

/// A finite magma given by its Cayley table, with lazily computed axiom flags.
#[derive(Debug, Clone)]
pub struct FiniteRack {
    name: Option<String>,
    size: usize,
    table: Vec<usize>,
    flags: OnceLock<RackFlags>,
}

impl PartialEq for FiniteRack {
    fn eq(&self, other: &Self) -> bool {
        self.size == other.size && self.table == other.table
    }
}

impl Eq for FiniteRack {}

fn flatten(table: &[Vec<usize>]) -> Result<(usize, Vec<usize>)> {
    let n = table.len();
    if n == 0 {
        return Err(Error::Empty);
    }
    let mut flat = Vec::with_capacity(n * n);
    for (i, row) in table.iter().enumerate() {
        if row.len() != n {
            return Err(Error::MalformedTable(format!("row {i} has length {}, expected {n}", row.len())));
        }
        for (j, &v) in row.iter().enumerate() {
            if v >= n {
                return Err(Error::MalformedTable(format!("entry ({i},{j}) = {v} is out of range 0..{n}")));
            }
            flat.push(v);
        }
    }
    Ok((n, flat))
}

/// Classifies a Cayley table against the rack and quandle axioms.
///
/// R1 is read as "every right translation `z ↦ z·y` is a bijection", R2 as
/// right self-distributivity, Q1 as idempotence.
pub fn check_axioms(table: &[Vec<usize>]) -> Result<Classification> {
    let (n, flat) = flatten(table)?;
    Ok(classify(n, &flat, Exec::default()))
}

fn right_translations_bijective(n: usize, t: &[usize]) -> bool {
    (0..n).all(|j| {
        let mut seen = vec![false; n];
        (0..n).all(|i| !std::mem::replace(&mut seen[t[i * n + j]], true))
    })
}

fn self_distributive(n: usize, t: &[usize], exec: Exec) -> bool {
    exec.all(0..n, |i| {
        (0..n).all(|j| {
            let ij = t[i * n + j];
            (0..n).all(|k| t[ij * n + k] == t[t[i * n + k] * n + t[j * n + k]])
        })
    })
}

fn classify(n: usize, t: &[usize], exec: Exec) -> Classification {
    if !right_translations_bijective(n, t) || !self_distributive(n, t, exec) {
        Classification::NotRack
    } else if (0..n).all(|i| t[i * n + i] == i) {
        Classification::Quandle
    } else {
        Classification::RackOnly
    }
}

/// Full R2 scan with an explicit execution strategy (benchmark entry point).
pub fn check_axioms_with(rack: &FiniteRack, exec: Exec) -> Classification {
    classify(rack.size, &rack.table, exec)
}

impl FiniteRack {
    /// Wraps a table after range checks. Axioms are not required; query
    /// [`FiniteRack::classification`] for them.
    pub fn from_table(name: Option<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let (size, table) = flatten(&table)?;
        Ok(FiniteRack { name, size, table, flags: OnceLock::new() })
    }

    /// Builds a table from an operation on `0..n`.
    pub fn from_fn(name: impl Into<String>, n: usize, op: impl Fn(usize, usize) -> usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Empty);
        }
        let table = (0..n).map(|i| (0..n).map(|j| op(i, j)).collect()).collect();
        FiniteRack::from_table(Some(name.into()), table)
    }

    /// Trivial quandle `T_n`: `x·y = x`.
    pub fn trivial(n: usize) -> Result<Self> {
        FiniteRack::from_fn(format!("T{n}"), n, |i, _| i)
    }

    /// Dihedral quandle `R_n`: `a_i·a_j = a_{2j-i mod n}`.
    pub fn dihedral(n: usize) -> Result<Self> {
        FiniteRack::from_fn(format!("R{n}"), n, |i, j| (2 * j + n - i) % n)
    }

    /// The rack `a_i·a_j = a_{n-i+1}` (1-based), i.e. `i·j = n-1-i` on `0..n`.
    pub fn flip_rack(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::TooSmall { got: n, min: 2 });
        }
        FiniteRack::from_fn(format!("flip{n}"), n, |i, _| n - 1 - i)
    }

    /// `{a, b}` with `a·a = a·b = b`, `b·a = b·b = a`.
    pub fn two_elem_rack() -> Self {
        FiniteRack::from_fn("rack2", 2, |i, _| 1 - i).expect("non-empty")
    }

    /// `Conj(G)`: `a·b = b⁻¹ a b`.
    pub fn conj(g: &FiniteGroup) -> Self {
        FiniteRack::from_fn(format!("conj{}", g.label()), g.size(), |a, b| g.op(g.op(g.inv(b), a), b))
            .expect("non-empty group")
    }

    /// `Core(G)`: `a·b = b a⁻¹ b`.
    pub fn core(g: &FiniteGroup) -> Self {
        FiniteRack::from_fn(format!("core{}", g.label()), g.size(), |a, b| g.op(g.op(b, g.inv(a)), b))
            .expect("non-empty group")
    }

    /// Generalized Alexander quandle: `a·b = φ(a b⁻¹) b`.
    pub fn gen_alexander(g: &FiniteGroup, phi: &Permutation) -> Result<Self> {
        if !g.is_automorphism(phi) {
            return Err(Error::InvalidAutomorphism(format!("{phi} on {}", g.label())));
        }
        FiniteRack::from_fn(format!("genalex{}", g.label()), g.size(), |a, b| g.op(phi.apply(g.op(a, g.inv(b))), b))
    }

    /// Alexander quandle of an abelian group: `a·b = t a + (id - t) b`.
    pub fn alexander(a: &FiniteGroup, t: &Permutation) -> Result<Self> {
        if !a.is_abelian() {
            return Err(Error::HypothesisNotMet(format!("{} is not abelian", a.label())));
        }
        if !a.is_automorphism(t) {
            return Err(Error::InvalidAutomorphism(format!("{t} on {}", a.label())));
        }
        FiniteRack::from_fn(format!("alex{}", a.label()), a.size(), |x, y| {
            // t(x) - t(y) + y
            a.op(a.op(t.apply(x), a.inv(t.apply(y))), y)
        })
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn label(&self) -> String {
        self.name.clone().unwrap_or_else(|| format!("X{}", self.size))
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// `x_i · x_j`.
    #[inline]
    pub fn op(&self, i: usize, j: usize) -> usize {
        self.table[i * self.size + j]
    }

    pub fn table(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.size).map(<[usize]>::to_vec).collect()
    }

    pub fn classification(&self) -> Classification {
        let f = self.flags();
        if f.is_quandle {
            Classification::Quandle
        } else if f.is_rack {
            Classification::RackOnly
        } else {
            Classification::NotRack
        }
    }

    pub fn flags(&self) -> RackFlags {
        *self.flags.get_or_init(|| {
            let class = classify(self.size, &self.table, Exec::default());
            let is_rack = class != Classification::NotRack;
            let n = self.size;
            let is_involutary = is_rack && (0..n).all(|i| (0..n).all(|j| self.op(self.op(i, j), j) == i));
            let is_latin = (0..n).all(|i| {
                let row: HashSet<usize> = (0..n).map(|j| self.op(i, j)).collect();
                row.len() == n
            });
            let is_connected = is_rack && self.orbits_unchecked().len() == 1;
            RackFlags { is_rack, is_quandle: class == Classification::Quandle, is_involutary, is_latin, is_connected }
        })
    }

    pub fn is_rack(&self) -> bool {
        self.flags().is_rack
    }

    pub fn is_quandle(&self) -> bool {
        self.flags().is_quandle
    }

    pub fn is_involutary(&self) -> bool {
        self.flags().is_involutary
    }

    pub fn is_latin(&self) -> bool {
        self.flags().is_latin
    }

    pub fn is_connected(&self) -> bool {
        self.flags().is_connected
    }

    /// `x·y = x` for all `x, y`.
    pub fn is_trivial(&self) -> bool {
        (0..self.size).all(|i| (0..self.size).all(|j| self.op(i, j) == i))
    }

    fn require_rack(&self) -> Result<()> {
        if self.is_rack() {
            Ok(())
        } else {
            Err(Error::HypothesisNotMet(format!("{} is not a rack", self.label())))
        }
    }

    /// `S_x: y ↦ y·x`.
    pub fn right_translation(&self, x: usize) -> Permutation {
        Permutation::from_image_unchecked((0..self.size).map(|y| self.op(y, x)).collect())
    }

    /// The generators `S_x` of `Inn(X)`, one per element.
    pub fn inner_generators(&self) -> Result<Vec<Permutation>> {
        self.require_rack()?;
        Ok((0..self.size).map(|x| self.right_translation(x)).collect())
    }

    /// `Inn(X)` by breadth-first product closure, sorted.
    pub fn inner_group_closure(&self, cap: usize) -> Result<Vec<Permutation>> {
        let gens = self.inner_generators()?;
        let id = Permutation::identity(self.size);
        let mut seen: HashSet<Permutation> = HashSet::from([id.clone()]);
        let mut queue = VecDeque::from([id]);
        while let Some(p) = queue.pop_front() {
            for g in &gens {
                let q = g.compose(&p);
                if !seen.contains(&q) {
                    if seen.len() >= cap {
                        return Err(Error::ResourceLimit { what: "inner automorphism group", cap });
                    }
                    seen.insert(q.clone());
                    queue.push_back(q);
                }
            }
        }
        let mut out: Vec<Permutation> = seen.into_iter().collect();
        out.sort();
        Ok(out)
    }

    fn orbits_unchecked(&self) -> Vec<Vec<usize>> {
        let n = self.size;
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for x in 0..n {
            for y in 0..n {
                let (a, b) = (find(&mut parent, y), find(&mut parent, self.op(y, x)));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        let mut root_block = vec![usize::MAX; n];
        for x in 0..n {
            let r = find(&mut parent, x);
            if root_block[r] == usize::MAX {
                root_block[r] = blocks.len();
                blocks.push(Vec::new());
            }
            blocks[root_block[r]].push(x);
        }
        blocks
    }

    /// Orbits of `Inn(X)`, each sorted, ordered by least element.
    pub fn orbits(&self) -> Result<Vec<Vec<usize>>> {
        self.require_rack()?;
        Ok(self.orbits_unchecked())
    }

    /// Smallest superset of `seed` closed under the operation; the result is
    /// re-verified to be a subrack.
    pub fn subquandle_closure(&self, seed: &[usize]) -> Result<Vec<usize>> {
        if seed.is_empty() {
            return Err(Error::InvalidInput("seed set must be nonempty".into()));
        }
        let mut set = BTreeSet::new();
        for &s in seed {
            if s >= self.size {
                return Err(Error::IndexOutOfRange { index: s, size: self.size });
            }
            set.insert(s);
        }
        loop {
            let items: Vec<usize> = set.iter().copied().collect();
            let before = set.len();
            for &a in &items {
                for &b in &items {
                    set.insert(self.op(a, b));
                }
            }
            if set.len() == before {
                break;
            }
        }
        let out: Vec<usize> = set.into_iter().collect();
        let (sub, _) = self.subrack(&out)?;
        if self.is_rack() && !sub.is_rack() {
            return Err(Error::NotClosed);
        }
        Ok(out)
    }

    pub fn is_closed(&self, subset: &[usize]) -> bool {
        let set: HashSet<usize> = subset.iter().copied().collect();
        subset.iter().all(|&a| subset.iter().all(|&b| set.contains(&self.op(a, b))))
    }

    /// The induced structure on a closed subset, relabelled `0..k` in the
    /// order given; also returns the embedding.
    pub fn subrack(&self, subset: &[usize]) -> Result<(FiniteRack, Vec<usize>)> {
        if subset.is_empty() {
            return Err(Error::Empty);
        }
        let mut pos = vec![usize::MAX; self.size];
        for (k, &s) in subset.iter().enumerate() {
            if s >= self.size {
                return Err(Error::IndexOutOfRange { index: s, size: self.size });
            }
            pos[s] = k;
        }
        let mut table = Vec::with_capacity(subset.len());
        for &a in subset {
            let mut row = Vec::with_capacity(subset.len());
            for &b in subset {
                let p = pos[self.op(a, b)];
                if p == usize::MAX {
                    return Err(Error::NotClosed);
                }
                row.push(p);
            }
            table.push(row);
        }
        let name = format!("{}{:?}", self.label(), subset);
        Ok((FiniteRack::from_table(Some(name), table)?, subset.to_vec()))
    }

    /// Serializable form `{"name", "size", "table"}`.
    pub fn to_json(&self) -> QuandleJson {
        QuandleJson {
            name: self.label(),
            size: self.size,
            table: self.table(),
            classification: Some(self.classification()),
        }
    }

    /// Parses the JSON quandle format and re-runs the axiom check.
    pub fn from_json_str(text: &str) -> Result<Self> {
        let q: QuandleJson = serde_json::from_str(text).map_err(|e| Error::InvalidInput(e.to_string()))?;
        if q.size != q.table.len() {
            return Err(Error::MalformedTable(format!("size {} but {} rows", q.size, q.table.len())));
        }
        let rack = FiniteRack::from_table(Some(q.name), q.table)?;
        rack.flags();
        Ok(rack)
    }
}

/// On-disk quandle format; `table[i][j]` is `i·j`, 0-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuandleJson {
    pub name: String,
    pub size: usize,
    pub table: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub classification: Option<Classification>,
}
