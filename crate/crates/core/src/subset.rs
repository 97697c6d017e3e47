use std::fmt;

/// A set of element indices over a poset of fixed size, stored as a bitset.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subset {
    len: usize,
    words: Vec<u64>,
}

fn word_count(len: usize) -> usize {
    len.div_ceil(64)
}

impl Subset {
    pub fn empty(len: usize) -> Self {
        Subset {
            len,
            words: vec![0; word_count(len)],
        }
    }

    pub fn full(len: usize) -> Self {
        let mut s = Subset::empty(len);
        for i in 0..len {
            s.insert(i);
        }
        s
    }

    pub fn singleton(len: usize, x: usize) -> Self {
        let mut s = Subset::empty(len);
        s.insert(x);
        s
    }

    pub fn from_elements(len: usize, elements: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Subset::empty(len);
        for x in elements {
            s.insert(x);
        }
        s
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        Subset::from_elements(bits.len(), bits.iter().enumerate().filter(|(_, b)| **b).map(|(i, _)| i))
    }

    /// Size of the ambient universe, not the number of members.
    pub fn universe(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        debug_assert!(x < self.len);
        self.words[x / 64] >> (x % 64) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, x: usize) {
        assert!(x < self.len, "element {x} outside universe of size {}", self.len);
        self.words[x / 64] |= 1 << (x % 64);
    }

    #[inline]
    pub fn remove(&mut self, x: usize) {
        assert!(x < self.len, "element {x} outside universe of size {}", self.len);
        self.words[x / 64] &= !(1 << (x % 64));
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|w| *w == 0)
    }

    pub fn intersect_with(&mut self, other: &Subset) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= *b;
        }
    }

    pub fn union_with(&mut self, other: &Subset) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= *b;
        }
    }

    pub fn intersection(&self, other: &Subset) -> Subset {
        let mut s = self.clone();
        s.intersect_with(other);
        s
    }

    pub fn union(&self, other: &Subset) -> Subset {
        let mut s = self.clone();
        s.union_with(other);
        s
    }

    pub fn is_subset(&self, other: &Subset) -> bool {
        debug_assert_eq!(self.len, other.len);
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&x| self.contains(x))
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}
