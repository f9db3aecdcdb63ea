use fixedbitset::FixedBitSet;

use super::{GroupTable, Side};

/// Bruhat lower intervals `{y : y <= w}` as bitsets over the table.
///
/// Built from `below(w) = below(sw) ∪ s·below(sw)` for a left descent `s`.
#[derive(Clone, Debug)]
pub struct Bruhat {
    below: Vec<FixedBitSet>,
}

impl Bruhat {
    pub fn new(g: &GroupTable) -> Self {
        let n = g.size();
        let mut below: Vec<FixedBitSet> = Vec::with_capacity(n);
        let mut id = FixedBitSet::with_capacity(n);
        id.insert(0);
        below.push(id);
        for w in 1..n {
            let s = g.first_left_descent(w).expect("non-identity has a descent");
            let x = g.lmul(w, s).unwrap();
            let mut set = below[x].clone();
            for y in below[x].ones() {
                set.insert(g.mul_gen(y, s, Side::Left).expect("stays below w"));
            }
            below.push(set);
        }
        Bruhat { below }
    }

    pub fn leq(&self, y: usize, w: usize) -> bool {
        self.below[w].contains(y)
    }

    pub fn lower(&self, w: usize) -> &FixedBitSet {
        &self.below[w]
    }

    /// The interval `[y, w]`, increasing in index.
    pub fn interval(&self, y: usize, w: usize) -> Vec<usize> {
        if !self.leq(y, w) {
            return Vec::new();
        }
        self.below[w].ones().filter(|&z| self.leq(y, z)).collect()
    }
}

/// `y <= w` by the descent recursion: for `sw < w`,
/// `y <= w` iff `sy <= sw` when `sy < y`, and iff `y <= sw` otherwise.
pub fn bruhat_leq(g: &GroupTable, mut y: usize, mut w: usize) -> bool {
    loop {
        if g.len(y) > g.len(w) {
            return false;
        }
        if w == 0 {
            return y == 0;
        }
        let s = g.first_left_descent(w).unwrap();
        w = g.lmul(w, s).unwrap();
        if g.is_left_descent(y, s) {
            y = g.lmul(y, s).unwrap();
        }
    }
}
