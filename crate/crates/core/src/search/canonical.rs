//! Canonical forms of posets with at most eight elements.
//!
//! The code of a poset under an ordering of its elements packs the order
//! relation between distinct elements into a `u64`, pairs ordered by their
//! larger position so that every prefix depends only on a prefix of the
//! ordering. The canonical code is the least code over orderings that list
//! the invariant cells in order; cells come from iterated refinement by the
//! cells of each element's strict down- and up-set.

use crate::poset::FinitePoset;

pub const MAX_CANONICAL_SIZE: usize = 8;

fn cells(p: &FinitePoset) -> Vec<usize> {
    let n = p.size();
    let mut cell: Vec<usize> = vec![0; n];
    let mut count = 1;
    loop {
        let keys: Vec<(usize, Vec<usize>, Vec<usize>)> = (0..n)
            .map(|x| {
                let mut down: Vec<usize> = p.down_set(x).iter().filter(|&y| y != x).map(|y| cell[y]).collect();
                let mut up: Vec<usize> = p.up_set(x).iter().filter(|&y| y != x).map(|y| cell[y]).collect();
                down.sort_unstable();
                up.sort_unstable();
                (cell[x], down, up)
            })
            .collect();
        let mut distinct = keys.clone();
        distinct.sort();
        distinct.dedup();
        let next: Vec<usize> = keys.iter().map(|k| distinct.binary_search(k).unwrap()).collect();
        if distinct.len() == count {
            return next;
        }
        count = distinct.len();
        cell = next;
    }
}

struct Search<'a> {
    p: &'a FinitePoset,
    n: usize,
    total_bits: u32,
    /// Cell required at each position.
    slots: Vec<usize>,
    cell: Vec<usize>,
    order: Vec<usize>,
    used: Vec<bool>,
    best: Option<(u64, Vec<usize>)>,
}

impl Search<'_> {
    fn run(&mut self, pos: usize, code: u64, bits: u32) {
        if pos == self.n {
            if self.best.as_ref().is_none_or(|(b, _)| code < *b) {
                self.best = Some((code, self.order.clone()));
            }
            return;
        }
        for x in 0..self.n {
            if self.used[x] || self.cell[x] != self.slots[pos] {
                continue;
            }
            let mut c = code;
            for j in 0..pos {
                let y = self.order[j];
                c = c << 2 | (self.p.leq(x, y) as u64) << 1 | self.p.leq(y, x) as u64;
            }
            let nb = bits + 2 * pos as u32;
            // Equal-length prefixes compare like the codes they start.
            if let Some((b, _)) = &self.best {
                if nb > 0 && c > b >> (self.total_bits - nb) {
                    continue;
                }
            }
            self.used[x] = true;
            self.order.push(x);
            self.run(pos + 1, c, nb);
            self.order.pop();
            self.used[x] = false;
        }
    }
}

/// Canonical code and an ordering achieving it.
pub fn canonical_form(p: &FinitePoset) -> (u64, Vec<usize>) {
    let n = p.size();
    assert!(n <= MAX_CANONICAL_SIZE, "canonical codes support at most {MAX_CANONICAL_SIZE} elements");
    let cell = cells(p);
    let mut slots = cell.clone();
    slots.sort_unstable();
    let mut s = Search {
        p,
        n,
        total_bits: (n * n.saturating_sub(1)) as u32,
        slots,
        cell,
        order: Vec::with_capacity(n),
        used: vec![false; n],
        best: None,
    };
    s.run(0, 0, 0);
    s.best.expect("at least one ordering")
}

pub fn canonical_code(p: &FinitePoset) -> u64 {
    canonical_form(p).0
}

/// Default labels for generated posets: `a`, `b`, ...
pub fn generated_labels(n: usize) -> Vec<String> {
    (0..n).map(|i| ((b'a' + i as u8) as char).to_string()).collect()
}

/// The poset with the given code, elements labelled `a`, `b`, ... in code
/// order.
pub fn from_code(n: usize, code: u64) -> FinitePoset {
    let mut leq = vec![vec![false; n]; n];
    let mut bit = (n * n.saturating_sub(1)) as u32;
    for (i, row) in leq.iter_mut().enumerate() {
        row[i] = true;
    }
    for pos in 0..n {
        for j in 0..pos {
            bit -= 2;
            let pair = code >> bit & 3;
            leq[pos][j] = pair & 2 != 0;
            leq[j][pos] = pair & 1 != 0;
        }
    }
    FinitePoset::from_matrix(generated_labels(n), &leq).expect("codes describe partial orders")
}
