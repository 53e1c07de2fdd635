//! Branch and bound clique search with a greedy colouring bound.

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BitSet {
    words: Vec<u64>,
    len: usize,
}

impl BitSet {
    pub fn new(len: usize) -> Self {
        BitSet {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    pub fn full(len: usize) -> Self {
        let mut b = BitSet::new(len);
        for i in 0..len {
            b.insert(i);
        }
        b
    }

    pub fn universe(&self) -> usize {
        self.len
    }

    pub fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn remove(&mut self, i: usize) {
        self.words[i / 64] &= !(1 << (i % 64));
    }

    pub fn contains(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn first(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    pub fn intersect_with(&mut self, other: &BitSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn difference_with(&mut self, other: &BitSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    pub fn union_with(&mut self, other: &BitSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn is_subset(&self, other: &BitSet) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                (w != 0).then(|| {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    i * 64 + b
                })
            })
        })
    }
}

/// Some clique of size `k` in the graph given by symmetric adjacency
/// rows, or `None`. Vertices in the result are in increasing order.
pub fn find_clique(adj: &[BitSet], k: usize) -> Option<Vec<usize>> {
    if k == 0 {
        return Some(Vec::new());
    }
    let mut r = Vec::new();
    if expand(adj, &mut r, BitSet::full(adj.len()), k) {
        r.sort_unstable();
        Some(r)
    } else {
        None
    }
}

/// A maximum clique.
pub fn max_clique(adj: &[BitSet]) -> Vec<usize> {
    let mut best = Vec::new();
    for k in 1..=adj.len() {
        match find_clique(adj, k) {
            Some(c) => best = c,
            None => break,
        }
    }
    best
}

fn expand(adj: &[BitSet], r: &mut Vec<usize>, mut p: BitSet, target: usize) -> bool {
    for (v, colour) in colour_order(adj, &p).into_iter().rev() {
        if r.len() + colour < target {
            return false;
        }
        r.push(v);
        if r.len() >= target {
            return true;
        }
        let mut next = p.clone();
        next.intersect_with(&adj[v]);
        if !next.is_empty() && expand(adj, r, next, target) {
            return true;
        }
        r.pop();
        p.remove(v);
    }
    false
}

/// Greedy sequential colouring; colours are nondecreasing along the list.
fn colour_order(adj: &[BitSet], p: &BitSet) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(p.count());
    let mut uncoloured = p.clone();
    let mut colour = 0;
    while !uncoloured.is_empty() {
        colour += 1;
        let mut q = uncoloured.clone();
        while let Some(v) = q.first() {
            q.remove(v);
            q.difference_with(&adj[v]);
            uncoloured.remove(v);
            out.push((v, colour));
        }
    }
    out
}
