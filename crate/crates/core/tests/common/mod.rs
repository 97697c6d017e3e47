//! Brute-force oracles written directly from the definitions, sharing no
//! code with the library beyond `FinitePoset::leq` and constructors.
#![allow(dead_code)]

use std::collections::BTreeSet;

use ordkit::secpsc::Groupoid;
use ordkit::FinitePoset;
use rand::seq::SliceRandom;
use rand::Rng;

pub fn leq_matrix(p: &FinitePoset) -> Vec<Vec<bool>> {
    let n = p.size();
    (0..n).map(|x| (0..n).map(|y| p.leq(x, y)).collect()).collect()
}

/// Lower cone of a set given as a bitmask.
pub fn lower(le: &[Vec<bool>], s: u32) -> u32 {
    let n = le.len();
    (0..n)
        .filter(|&x| (0..n).all(|y| s >> y & 1 == 0 || le[x][y]))
        .fold(0, |m, x| m | 1 << x)
}

pub fn upper(le: &[Vec<bool>], s: u32) -> u32 {
    let n = le.len();
    (0..n)
        .filter(|&x| (0..n).all(|y| s >> y & 1 == 0 || le[y][x]))
        .fold(0, |m, x| m | 1 << x)
}

fn greatest(le: &[Vec<bool>], s: u32) -> Option<usize> {
    let n = le.len();
    (0..n).find(|&g| s >> g & 1 == 1 && (0..n).all(|x| s >> x & 1 == 0 || le[x][g]))
}

/// `a * b` straight from the definition: the greatest `c` with
/// `L(U(a,b) ∪ {c}) = L(b)`.
pub fn naive_sec_pc(le: &[Vec<bool>], a: usize, b: usize) -> Option<usize> {
    let n = le.len();
    let u = upper(le, 1 << a | 1 << b);
    let lb = lower(le, 1 << b);
    let sat = (0..n).filter(|&c| lower(le, u | 1 << c) == lb).fold(0, |m, c| m | 1 << c);
    greatest(le, sat)
}

pub fn naive_table(p: &FinitePoset) -> Vec<Vec<Option<usize>>> {
    let le = leq_matrix(p);
    let n = p.size();
    (0..n).map(|a| (0..n).map(|b| naive_sec_pc(&le, a, b)).collect()).collect()
}

/// Every `LU(S)` for `S` ranging over all subsets.
pub fn naive_cuts(p: &FinitePoset) -> BTreeSet<u32> {
    let le = leq_matrix(p);
    (0u32..1 << p.size()).map(|s| lower(&le, upper(&le, s))).collect()
}

/// Restricted growth strings: every set partition of `0..n` as a class
/// index per element.
pub fn all_partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, n: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        let next = prefix.iter().max().map_or(0, |m| m + 1);
        for c in 0..=next {
            prefix.push(c);
            go(prefix, n, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), n, &mut out);
    out
}

pub fn is_congruence(g: &Groupoid, class: &[usize]) -> bool {
    let n = class.len();
    (0..n).all(|x| {
        (0..n).all(|y| {
            class[x] != class[y]
                || (0..n).all(|z| {
                    class[g.apply(x, z)] == class[g.apply(y, z)] && class[g.apply(z, x)] == class[g.apply(z, y)]
                })
        })
    })
}

/// Normalises class ids to first-occurrence order.
pub fn normalise(class: &[usize]) -> Vec<usize> {
    let mut seen: Vec<usize> = Vec::new();
    class
        .iter()
        .map(|c| match seen.iter().position(|s| s == c) {
            Some(i) => i,
            None => {
                seen.push(*c);
                seen.len() - 1
            }
        })
        .collect()
}

pub fn brute_congruences(g: &Groupoid) -> Vec<Vec<usize>> {
    all_partitions(g.size()).into_iter().filter(|c| is_congruence(g, c)).collect()
}

/// Intersection of all congruences identifying `a` and `b`.
pub fn brute_principal(cons: &[Vec<usize>], a: usize, b: usize) -> Vec<usize> {
    let n = cons[0].len();
    let containing: Vec<&Vec<usize>> = cons.iter().filter(|c| c[a] == c[b]).collect();
    let key: Vec<Vec<usize>> = (0..n).map(|x| containing.iter().map(|c| c[x]).collect()).collect();
    let mut ids: Vec<&Vec<usize>> = Vec::new();
    let raw: Vec<usize> = key
        .iter()
        .map(|k| match ids.iter().position(|i| *i == k) {
            Some(i) => i,
            None => {
                ids.push(k);
                ids.len() - 1
            }
        })
        .collect();
    normalise(&raw)
}

/// Canonical key of a labelled order: the lexicographically smallest
/// relation matrix over all `n!` relabellings.
pub fn brute_canonical(le: &[Vec<bool>]) -> Vec<bool> {
    let n = le.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best: Option<Vec<bool>> = None;
    loop {
        let key: Vec<bool> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| le[perm[i]][perm[j]]).collect();
        if best.as_ref().is_none_or(|b| key < *b) {
            best = Some(key);
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    best.unwrap()
}

fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// All partial orders on `0..n` (labelled), by checking every relation.
pub fn all_labelled_orders(n: usize) -> Vec<Vec<Vec<bool>>> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).filter(|(i, j)| i != j).collect();
    let mut out = Vec::new();
    for mask in 0u64..1 << pairs.len() {
        let mut le = vec![vec![false; n]; n];
        for (i, row) in le.iter_mut().enumerate() {
            row[i] = true;
        }
        for (k, &(i, j)) in pairs.iter().enumerate() {
            le[i][j] = mask >> k & 1 == 1;
        }
        let antisym = (0..n).all(|i| (0..n).all(|j| i == j || !(le[i][j] && le[j][i])));
        let trans = antisym
            && (0..n).all(|i| (0..n).all(|j| !le[i][j] || (0..n).all(|k| !le[j][k] || le[i][k])));
        if trans {
            out.push(le);
        }
    }
    out
}

pub fn brute_classes(n: usize) -> BTreeSet<Vec<bool>> {
    all_labelled_orders(n).iter().map(|le| brute_canonical(le)).collect()
}

/// Complete L-semidistributivity by iterating every nonempty `M`.
pub fn naive_l_semidistributive(p: &FinitePoset) -> bool {
    let le = leq_matrix(p);
    let n = p.size();
    (0..n).all(|a| {
        (0..n).all(|b| {
            let lb = lower(&le, 1 << b);
            (1u32..1 << n).all(|m| {
                let hyp = (0..n).all(|x| m >> x & 1 == 0 || lower(&le, 1 << x | 1 << a) == lb);
                !hyp || lower(&le, upper(&le, m) | 1 << a) == lb
            })
        })
    })
}

pub fn names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("x{i}")).collect()
}

/// A random order on `n` elements: random pairs `i < j` closed
/// transitively, then shuffled.
pub fn random_poset<R: Rng>(rng: &mut R, n: usize, density: f64) -> FinitePoset {
    let mut le = vec![vec![false; n]; n];
    for i in 0..n {
        le[i][i] = true;
        for j in i + 1..n {
            le[i][j] = rng.gen_bool(density);
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if le[i][k] && le[k][j] {
                    le[i][j] = true;
                }
            }
        }
    }
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    FinitePoset::from_relation(names(n), |x, y| le[perm[x]][perm[y]]).unwrap()
}
