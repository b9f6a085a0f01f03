use super::{are_isomorphic, FiniteRack};
use crate::error::{Error, Result};

/// A verified homomorphism `f: source → target`.
#[derive(Debug, Clone)]
pub struct QuandleHom<'a> {
    source: &'a FiniteRack,
    target: &'a FiniteRack,
    map: Vec<usize>,
}

impl<'a> QuandleHom<'a> {
    /// Checks `f(x·y) = f(x)·f(y)` for all pairs.
    pub fn new(source: &'a FiniteRack, target: &'a FiniteRack, map: Vec<usize>) -> Result<Self> {
        if map.len() != source.size() {
            return Err(Error::InvalidHom(format!("map has {} entries for {} elements", map.len(), source.size())));
        }
        if let Some(&bad) = map.iter().find(|&&m| m >= target.size()) {
            return Err(Error::InvalidHom(format!("image {bad} outside target")));
        }
        let n = source.size();
        for x in 0..n {
            for y in 0..n {
                if map[source.op(x, y)] != target.op(map[x], map[y]) {
                    return Err(Error::InvalidHom(format!("f({x}·{y}) != f({x})·f({y})")));
                }
            }
        }
        Ok(QuandleHom { source, target, map })
    }

    pub fn source(&self) -> &'a FiniteRack {
        self.source
    }

    pub fn target(&self) -> &'a FiniteRack {
        self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.target.size()];
        for &m in &self.map {
            hit[m] = true;
        }
        hit.into_iter().all(|h| h)
    }

    pub fn is_injective(&self) -> bool {
        let mut hit = vec![false; self.target.size()];
        self.map.iter().all(|&m| !std::mem::replace(&mut hit[m], true))
    }

    /// The fiber `X_x = {x' : f(x') = f(x)}`.
    pub fn fiber_of(&self, x: usize) -> Vec<usize> {
        (0..self.source.size()).filter(|&y| self.map[y] == self.map[x]).collect()
    }

    /// Fibers numbered by first appearance, and the class of each element.
    pub fn fibers(&self) -> (Vec<Vec<usize>>, Vec<usize>) {
        let mut class_of_image = vec![usize::MAX; self.target.size()];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        let mut class_map = Vec::with_capacity(self.map.len());
        for (x, &m) in self.map.iter().enumerate() {
            if class_of_image[m] == usize::MAX {
                class_of_image[m] = classes.len();
                classes.push(Vec::new());
            }
            classes[class_of_image[m]].push(x);
            class_map.push(class_of_image[m]);
        }
        (classes, class_map)
    }

    /// The quotient `X/∼` with `X_{x₁} ∘ X_{x₂} = X_{x₁·x₂}` and the class map.
    /// When `f` is onto, the quotient is checked isomorphic to the target.
    pub fn quotient(&self) -> Result<(FiniteRack, Vec<usize>)> {
        let (classes, class_map) = self.fibers();
        let k = classes.len();
        let mut table = vec![vec![usize::MAX; k]; k];
        for x in 0..self.source.size() {
            for y in 0..self.source.size() {
                let c = class_map[self.source.op(x, y)];
                let slot = &mut table[class_map[x]][class_map[y]];
                assert!(*slot == usize::MAX || *slot == c, "class product ill-defined for a verified hom");
                *slot = c;
            }
        }
        let q = FiniteRack::from_table(Some(format!("{}/~", self.source.label())), table)?;
        if self.is_surjective() && are_isomorphic(&q, self.target).is_none() {
            return Err(Error::InvalidHom("quotient is not isomorphic to the image".into()));
        }
        Ok((q, class_map))
    }

    /// The map induced on the quotient, `X_x ↦ f(x)`.
    pub fn induced_map(&self) -> Vec<usize> {
        let (classes, _) = self.fibers();
        classes.iter().map(|c| self.map[c[0]]).collect()
    }
}

/// All homomorphisms `source → target`, up to `limit`, in lexicographic
/// order of their image vectors.
pub fn find_homs(source: &FiniteRack, target: &FiniteRack, limit: usize) -> Vec<Vec<usize>> {
    let n = source.size();
    let mut out = Vec::new();
    let mut assign = vec![usize::MAX; n];
    search(source, target, &mut assign, 0, limit, &mut out);
    out
}

fn consistent(source: &FiniteRack, target: &FiniteRack, assign: &[usize], x: usize) -> bool {
    let fx = assign[x];
    for y in 0..=x {
        let fy = assign[y];
        for (a, b, fa, fb) in [(x, y, fx, fy), (y, x, fy, fx)] {
            let fab = assign[source.op(a, b)];
            if fab != usize::MAX && fab != target.op(fa, fb) {
                return false;
            }
        }
    }
    // products landing on x from earlier pairs
    for a in 0..x {
        for b in 0..x {
            if source.op(a, b) == x && target.op(assign[a], assign[b]) != fx {
                return false;
            }
        }
    }
    true
}

fn search(
    source: &FiniteRack,
    target: &FiniteRack,
    assign: &mut Vec<usize>,
    x: usize,
    limit: usize,
    out: &mut Vec<Vec<usize>>,
) {
    if out.len() >= limit {
        return;
    }
    if x == source.size() {
        out.push(assign.clone());
        return;
    }
    for v in 0..target.size() {
        assign[x] = v;
        if consistent(source, target, assign, x) {
            search(source, target, assign, x + 1, limit, out);
            if out.len() >= limit {
                break;
            }
        }
    }
    assign[x] = usize::MAX;
}
