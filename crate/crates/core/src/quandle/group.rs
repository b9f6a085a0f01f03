use std::collections::HashMap;
use std::hash::Hash;

use super::perm::Permutation;
use crate::error::{Error, Result};

/// A finite group given by its Cayley table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    name: Option<String>,
    size: usize,
    table: Vec<usize>,
    identity: usize,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    /// Validates closure, associativity, identity and inverses.
    pub fn from_table(name: Option<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let size = table.len();
        if size == 0 {
            return Err(Error::Empty);
        }
        let mut flat = Vec::with_capacity(size * size);
        for row in &table {
            if row.len() != size {
                return Err(Error::MalformedGroup("table is not square".into()));
            }
            for &v in row {
                if v >= size {
                    return Err(Error::MalformedGroup(format!("entry {v} out of range")));
                }
                flat.push(v);
            }
        }
        let op = |a: usize, b: usize| flat[a * size + b];
        let identity = (0..size)
            .find(|&e| (0..size).all(|a| op(e, a) == a && op(a, e) == a))
            .ok_or_else(|| Error::MalformedGroup("no identity".into()))?;
        let inverse = (0..size)
            .map(|a| {
                (0..size)
                    .find(|&b| op(a, b) == identity && op(b, a) == identity)
                    .ok_or_else(|| Error::MalformedGroup(format!("{a} has no inverse")))
            })
            .collect::<Result<Vec<_>>>()?;
        for a in 0..size {
            for b in 0..size {
                for c in 0..size {
                    if op(op(a, b), c) != op(a, op(b, c)) {
                        return Err(Error::MalformedGroup(format!("not associative at ({a},{b},{c})")));
                    }
                }
            }
        }
        Ok(FiniteGroup { name, size, table: flat, identity, inverse })
    }

    /// Builds the group table from an explicit element list closed under `mul`.
    pub fn from_elements<T, F>(name: &str, elements: &[T], mul: F) -> Result<Self>
    where
        T: Eq + Hash + Clone,
        F: Fn(&T, &T) -> T,
    {
        let index: HashMap<&T, usize> = elements.iter().enumerate().map(|(i, e)| (e, i)).collect();
        let mut table = Vec::with_capacity(elements.len());
        for a in elements {
            let mut row = Vec::with_capacity(elements.len());
            for b in elements {
                let c = mul(a, b);
                let k = index.get(&c).ok_or_else(|| Error::MalformedGroup("element list not closed".into()))?;
                row.push(*k);
            }
            table.push(row);
        }
        FiniteGroup::from_table(Some(name.to_string()), table)
    }

    /// The cyclic group ℤ_m, element `i` standing for the residue `i`.
    pub fn cyclic(m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::Empty);
        }
        let elems: Vec<usize> = (0..m).collect();
        FiniteGroup::from_elements(&format!("Z{m}"), &elems, |a, b| (a + b) % m)
    }

    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> FiniteGroup {
        let n = a.size * b.size;
        let mut table = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                let (x1, x2) = (x / b.size, x % b.size);
                let (y1, y2) = (y / b.size, y % b.size);
                table[x * n + y] = a.op(x1, y1) * b.size + b.op(x2, y2);
            }
        }
        let inverse = (0..n).map(|x| a.inv(x / b.size) * b.size + b.inv(x % b.size)).collect();
        FiniteGroup {
            name: Some(format!("{}x{}", a.label(), b.label())),
            size: n,
            table,
            identity: a.identity * b.size + b.identity,
            inverse,
        }
    }

    /// The group generated by the given permutations, elements sorted.
    pub fn from_permutations(name: &str, gens: &[Permutation]) -> Result<Self> {
        let degree = gens.first().map(Permutation::len).ok_or(Error::Empty)?;
        let mut elems = vec![Permutation::identity(degree)];
        let mut frontier = elems.clone();
        let mut seen: std::collections::HashSet<Permutation> = elems.iter().cloned().collect();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for p in &frontier {
                for g in gens {
                    let q = g.compose(p);
                    if seen.insert(q.clone()) {
                        next.push(q);
                    }
                }
            }
            elems.extend(next.iter().cloned());
            frontier = next;
        }
        elems.sort();
        FiniteGroup::from_elements(name, &elems, |a, b| a.compose(b))
    }

    /// Symmetric group on `k` points.
    pub fn symmetric(k: usize) -> Result<Self> {
        if k < 2 {
            return FiniteGroup::cyclic(1);
        }
        let swap = Permutation::new((0..k).map(|i| if i < 2 { 1 - i } else { i }).collect())?;
        let cycle = Permutation::new((0..k).map(|i| (i + 1) % k).collect())?;
        FiniteGroup::from_permutations(&format!("S{k}"), &[swap, cycle])
    }

    /// Dihedral group of order `2k` (symmetries of a k-gon).
    pub fn dihedral_group(k: usize) -> Result<Self> {
        if k < 3 {
            return Err(Error::TooSmall { got: k, min: 3 });
        }
        let rot = Permutation::new((0..k).map(|i| (i + 1) % k).collect())?;
        let refl = Permutation::new((0..k).map(|i| (k - i) % k).collect())?;
        FiniteGroup::from_permutations(&format!("D{k}"), &[rot, refl])
    }

    /// Quaternion group {±1, ±i, ±j, ±k}.
    pub fn quaternion() -> Result<Self> {
        // (sign, unit) with unit 0 = 1, 1 = i, 2 = j, 3 = k.
        let elems: Vec<(bool, u8)> = [false, true].iter().flat_map(|&s| (0..4u8).map(move |u| (s, u))).collect();
        let unit_mul = |a: u8, b: u8| -> (bool, u8) {
            match (a, b) {
                (0, x) | (x, 0) => (false, x),
                (x, y) if x == y => (true, 0),
                (1, 2) => (false, 3),
                (2, 3) => (false, 1),
                (3, 1) => (false, 2),
                (2, 1) => (true, 3),
                (3, 2) => (true, 1),
                (1, 3) => (true, 2),
                _ => unreachable!(),
            }
        };
        FiniteGroup::from_elements("Q8", &elems, |&(s1, a), &(s2, b)| {
            let (s, u) = unit_mul(a, b);
            (s1 ^ s2 ^ s, u)
        })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn label(&self) -> String {
        self.name.clone().unwrap_or_else(|| format!("G{}", self.size))
    }

    pub fn op(&self, a: usize, b: usize) -> usize {
        self.table[a * self.size + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.size).all(|a| (0..self.size).all(|b| self.op(a, b) == self.op(b, a)))
    }

    /// Order of `a`.
    pub fn order_of(&self, a: usize) -> usize {
        let mut k = 1;
        let mut x = a;
        while x != self.identity {
            x = self.op(x, a);
            k += 1;
        }
        k
    }

    /// Whether `g^2 = 1` for every element.
    pub fn exponent_divides_two(&self) -> bool {
        (0..self.size).all(|a| self.op(a, a) == self.identity)
    }

    pub fn is_automorphism(&self, phi: &Permutation) -> bool {
        phi.len() == self.size
            && (0..self.size)
                .all(|a| (0..self.size).all(|b| phi.apply(self.op(a, b)) == self.op(phi.apply(a), phi.apply(b))))
    }

    /// Conjugation `x ↦ g x g⁻¹`.
    pub fn inner_automorphism(&self, g: usize) -> Permutation {
        let gi = self.inv(g);
        Permutation::from_image_unchecked((0..self.size).map(|x| self.op(self.op(g, x), gi)).collect())
    }

    /// `x ↦ x^k`; an automorphism exactly when the group is abelian and `k`
    /// is prime to the exponent (verified by the caller via [`is_automorphism`]).
    ///
    /// [`is_automorphism`]: FiniteGroup::is_automorphism
    pub fn power_map(&self, k: i64) -> Result<Permutation> {
        let image = (0..self.size)
            .map(|x| {
                let base = if k < 0 { self.inv(x) } else { x };
                let mut acc = self.identity;
                for _ in 0..k.unsigned_abs() {
                    acc = self.op(acc, base);
                }
                acc
            })
            .collect();
        Permutation::new(image)
    }
}
