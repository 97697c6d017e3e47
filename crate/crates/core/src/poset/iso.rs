use serde::Serialize;

use super::FinitePoset;

/// A bijection `mapping[x] = y` from the elements of one poset onto another
/// that preserves and reflects the order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IsoWitness {
    pub mapping: Vec<usize>,
}

impl IsoWitness {
    pub fn inverse(&self) -> IsoWitness {
        let mut inv = vec![0; self.mapping.len()];
        for (x, &y) in self.mapping.iter().enumerate() {
            inv[y] = x;
        }
        IsoWitness { mapping: inv }
    }

    pub fn is_valid(&self, p: &FinitePoset, q: &FinitePoset) -> bool {
        let n = p.size();
        if q.size() != n || self.mapping.len() != n {
            return false;
        }
        let mut hit = vec![false; n];
        for &y in &self.mapping {
            if y >= n || hit[y] {
                return false;
            }
            hit[y] = true;
        }
        (0..n).all(|a| (0..n).all(|b| p.leq(a, b) == q.leq(self.mapping[a], self.mapping[b])))
    }
}

fn invariants(p: &FinitePoset) -> Vec<(usize, usize, usize)> {
    let h = p.heights();
    (0..p.size())
        .map(|x| (p.down_set(x).count(), p.up_set(x).count(), h[x]))
        .collect()
}

/// Backtracking search for an order isomorphism `p -> q`, pruned by
/// per-element (down-degree, up-degree, height) invariants. Deterministic for
/// fixed inputs.
pub fn is_isomorphic(p: &FinitePoset, q: &FinitePoset) -> Option<IsoWitness> {
    let n = p.size();
    if q.size() != n {
        return None;
    }
    let ip = invariants(p);
    let iq = invariants(q);
    let mut sp = ip.clone();
    let mut sq = iq.clone();
    sp.sort_unstable();
    sq.sort_unstable();
    if sp != sq {
        return None;
    }
    // Assign elements from the rarest invariant class first.
    let class_size = |inv: &(usize, usize, usize)| ip.iter().filter(|i| *i == inv).count();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&x| (class_size(&ip[x]), std::cmp::Reverse(ip[x].0 + ip[x].1), x));

    let mut mapping = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if extend(p, q, &ip, &iq, &order, 0, &mut mapping, &mut used) {
        Some(IsoWitness { mapping })
    } else {
        None
    }
}

#[allow(clippy::too_many_arguments)]
fn extend(
    p: &FinitePoset,
    q: &FinitePoset,
    ip: &[(usize, usize, usize)],
    iq: &[(usize, usize, usize)],
    order: &[usize],
    depth: usize,
    mapping: &mut [usize],
    used: &mut [bool],
) -> bool {
    if depth == order.len() {
        return true;
    }
    let x = order[depth];
    for y in 0..q.size() {
        if used[y] || iq[y] != ip[x] {
            continue;
        }
        let consistent = order[..depth].iter().all(|&a| {
            let b = mapping[a];
            p.leq(a, x) == q.leq(b, y) && p.leq(x, a) == q.leq(y, b)
        });
        if !consistent {
            continue;
        }
        mapping[x] = y;
        used[y] = true;
        if extend(p, q, ip, iq, order, depth + 1, mapping, used) {
            return true;
        }
        used[y] = false;
        mapping[x] = usize::MAX;
    }
    false
}
