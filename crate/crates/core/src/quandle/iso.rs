use super::{FiniteRack, Permutation};

/// Per-element invariants preserved by any isomorphism.
fn signature(x: &FiniteRack, i: usize) -> (bool, usize, usize, usize) {
    let n = x.size();
    let idempotent = x.op(i, i) == i;
    let fixed_by_s = (0..n).filter(|&y| x.op(y, i) == y).count();
    let left_fixed = (0..n).filter(|&y| x.op(i, y) == i).count();
    let row_image = {
        let mut seen = vec![false; n];
        (0..n).filter(|&y| !std::mem::replace(&mut seen[x.op(i, y)], true)).count()
    };
    (idempotent, fixed_by_s, left_fixed, row_image)
}

/// Searches for a bijection `φ` with `φ(a·b) = φ(a)·φ(b)`.
pub fn are_isomorphic(a: &FiniteRack, b: &FiniteRack) -> Option<Permutation> {
    let n = a.size();
    if n != b.size() {
        return None;
    }
    let sa: Vec<_> = (0..n).map(|i| signature(a, i)).collect();
    let sb: Vec<_> = (0..n).map(|i| signature(b, i)).collect();
    let mut ms_a = sa.clone();
    let mut ms_b = sb.clone();
    ms_a.sort();
    ms_b.sort();
    if ms_a != ms_b {
        return None;
    }
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if extend(a, b, &sa, &sb, &mut map, &mut used, 0) {
        Some(Permutation::from_image_unchecked(map))
    } else {
        None
    }
}

fn extend(
    a: &FiniteRack,
    b: &FiniteRack,
    sa: &[(bool, usize, usize, usize)],
    sb: &[(bool, usize, usize, usize)],
    map: &mut Vec<usize>,
    used: &mut Vec<bool>,
    x: usize,
) -> bool {
    let n = a.size();
    if x == n {
        return true;
    }
    if map[x] != usize::MAX {
        return extend(a, b, sa, sb, map, used, x + 1);
    }
    for y in 0..n {
        if used[y] || sa[x] != sb[y] {
            continue;
        }
        let snapshot = map.clone();
        let used_snapshot = used.clone();
        map[x] = y;
        used[y] = true;
        if propagate(a, b, map, used) && extend(a, b, sa, sb, map, used, x + 1) {
            return true;
        }
        *map = snapshot;
        *used = used_snapshot;
    }
    false
}

/// Forces `φ(p·q) = φ(p)·φ(q)` for assigned pairs; false on conflict.
fn propagate(a: &FiniteRack, b: &FiniteRack, map: &mut [usize], used: &mut [bool]) -> bool {
    let n = a.size();
    loop {
        let mut changed = false;
        for p in 0..n {
            if map[p] == usize::MAX {
                continue;
            }
            for q in 0..n {
                if map[q] == usize::MAX {
                    continue;
                }
                let r = a.op(p, q);
                let want = b.op(map[p], map[q]);
                if map[r] == usize::MAX {
                    if used[want] {
                        return false;
                    }
                    map[r] = want;
                    used[want] = true;
                    changed = true;
                } else if map[r] != want {
                    return false;
                }
            }
        }
        if !changed {
            return true;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quandle::FiniteGroup;

    fn check_witness(a: &FiniteRack, b: &FiniteRack, p: &Permutation) {
        for i in 0..a.size() {
            for j in 0..a.size() {
                assert_eq!(p.apply(a.op(i, j)), b.op(p.apply(i), p.apply(j)));
            }
        }
    }

    #[test]
    fn examples() {
        let r2 = FiniteRack::dihedral(2).unwrap();
        let t2 = FiniteRack::trivial(2).unwrap();
        check_witness(&r2, &t2, &are_isomorphic(&r2, &t2).unwrap());
        assert!(are_isomorphic(&FiniteRack::dihedral(3).unwrap(), &FiniteRack::trivial(3).unwrap()).is_none());
        let core = FiniteRack::core(&FiniteGroup::cyclic(4).unwrap());
        let r4 = FiniteRack::dihedral(4).unwrap();
        check_witness(&core, &r4, &are_isomorphic(&core, &r4).unwrap());
        assert!(are_isomorphic(&r4, &FiniteRack::dihedral(5).unwrap()).is_none());
    }

    #[test]
    fn relabelled_copy_is_found() {
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let c = FiniteRack::conj(&s3);
        let p = [3usize, 5, 0, 1, 4, 2];
        let mut t = vec![vec![0; 6]; 6];
        for i in 0..6 {
            for j in 0..6 {
                t[p[i]][p[j]] = p[c.op(i, j)];
            }
        }
        let d = FiniteRack::from_table(None, t).unwrap();
        check_witness(&c, &d, &are_isomorphic(&c, &d).unwrap());
    }
}
