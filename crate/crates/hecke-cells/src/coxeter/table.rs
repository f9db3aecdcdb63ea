use std::collections::HashMap;

use super::{CoxeterSystem, Gen};
use crate::error::{Error, Result};

const NONE: u32 = u32::MAX;

/// How much of the group to enumerate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Extent {
    /// The whole group; fails with `CapExceeded` past `cap` elements.
    Full { cap: usize },
    /// All elements of length `<= radius`.
    Ball(u32),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// An enumerated Coxeter group (or ball). Element `0` is the identity and
/// indices increase with (length, ShortLex order of the canonical word).
#[derive(Clone, Debug)]
pub struct GroupTable {
    system: CoxeterSystem,
    words: Vec<Vec<Gen>>,
    lens: Vec<u32>,
    weights: Vec<u32>,
    rmul: Vec<Vec<u32>>,
    lmul: Vec<Vec<u32>>,
    rdes: Vec<u32>,
    ldes: Vec<u32>,
    inv: Vec<u32>,
    index: HashMap<Vec<Gen>, u32>,
    finite: bool,
    radius: Option<u32>,
}

impl GroupTable {
    /// Breadth-first enumeration in ShortLex order.
    ///
    /// For a candidate `x = us` with `s` not a right descent of `u`, the right
    /// descent set of `x` is read off by stripping alternating `t, s, t, ...`
    /// from `u`: `t` is a descent of `us` iff that tail has length `m(s,t) - 1`.
    /// The canonical word of `x` is `canon(xt) t` for the descent `t` with the
    /// smallest `xt`, so `x` is new exactly when `u` is that smallest element.
    pub fn enumerate(system: &CoxeterSystem, extent: Extent) -> Result<Self> {
        let n = system.rank();
        let (cap, radius) = match extent {
            Extent::Full { cap } => (cap, None),
            Extent::Ball(r) => (usize::MAX, Some(r)),
        };
        let mut words: Vec<Vec<Gen>> = vec![Vec::new()];
        let mut lens = vec![0u32];
        let mut rmul: Vec<Vec<u32>> = vec![vec![NONE; n]];
        let mut rdes = vec![0u32];
        let mut level_start = 0usize;
        let mut level_len = 0u32;
        loop {
            let level_end = words.len();
            if level_start == level_end {
                break;
            }
            if radius.is_some_and(|r| level_len >= r) {
                break;
            }
            for u in level_start..level_end {
                for s in 0..n as Gen {
                    if rdes[u] >> s & 1 == 1 || rmul[u][s as usize] != NONE {
                        continue;
                    }
                    // Descents of x = us and the elements xt.
                    let mut des = 1u32 << s;
                    let mut best = u;
                    let mut others: Vec<(Gen, usize)> = Vec::new();
                    for t in 0..n as Gen {
                        if t == s {
                            continue;
                        }
                        let Some(m) = system.m(s, t) else { continue };
                        let m = m as usize;
                        // strip t, s, t, ... from the right of u
                        let mut y = u;
                        let mut tail = 0usize;
                        let mut letter = t;
                        while tail < m - 1 && rdes[y] >> letter & 1 == 1 {
                            y = rmul[y][letter as usize] as usize;
                            tail += 1;
                            letter = if letter == t { s } else { t };
                        }
                        if tail == m - 1 {
                            // x t = y * (alternating word of length m-1 ending in s)
                            let mut z = y;
                            let start = if (m - 1) % 2 == 1 { s } else { t };
                            let mut letter = start;
                            for _ in 0..m - 1 {
                                z = rmul[z][letter as usize] as usize;
                                letter = if letter == t { s } else { t };
                            }
                            des |= 1 << t;
                            others.push((t, z));
                            best = best.min(z);
                        }
                    }
                    if best < u {
                        let t = others.iter().find(|o| o.1 == best).unwrap().0;
                        let x = rmul[best][t as usize];
                        debug_assert_ne!(x, NONE);
                        rmul[u][s as usize] = x;
                        continue;
                    }
                    let x = words.len();
                    if x >= cap {
                        return Err(Error::CapExceeded(cap));
                    }
                    let mut w = words[u].clone();
                    w.push(s);
                    words.push(w);
                    lens.push(level_len + 1);
                    rdes.push(des);
                    let mut row = vec![NONE; n];
                    row[s as usize] = u as u32;
                    for &(t, z) in &others {
                        row[t as usize] = z as u32;
                    }
                    rmul.push(row);
                    rmul[u][s as usize] = x as u32;
                }
            }
            level_start = level_end;
            level_len += 1;
        }
        let size = words.len();
        let full = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
        let finite = rdes.iter().any(|&d| d == full);
        if radius.is_none() && !finite {
            return Err(Error::CapExceeded(cap));
        }
        let index: HashMap<Vec<Gen>, u32> =
            words.iter().enumerate().map(|(i, w)| (w.clone(), i as u32)).collect();
        let eval = |word: &[Gen]| -> u32 {
            let mut x = 0u32;
            for &s in word {
                x = rmul[x as usize][s as usize];
                if x == NONE {
                    break;
                }
            }
            x
        };
        let inv: Vec<u32> = words
            .iter()
            .map(|w| {
                let r: Vec<Gen> = w.iter().rev().copied().collect();
                eval(&r)
            })
            .collect();
        let mut lmul = vec![vec![NONE; n]; size];
        let mut ldes = vec![0u32; size];
        for w in 0..size {
            let wi = inv[w] as usize;
            ldes[w] = rdes[wi];
            for s in 0..n {
                let y = rmul[wi][s];
                lmul[w][s] = if y == NONE { NONE } else { inv[y as usize] };
            }
        }
        let weights = words
            .iter()
            .map(|w| w.iter().map(|&s| system.weight(s)).sum())
            .collect();
        Ok(GroupTable {
            system: system.clone(),
            words,
            lens,
            weights,
            rmul,
            lmul,
            rdes,
            ldes,
            inv,
            index,
            finite,
            radius: if finite { None } else { radius },
        })
    }

    /// Enumerate a finite group with a generous cap.
    pub fn full(system: &CoxeterSystem) -> Result<Self> {
        Self::enumerate(system, Extent::Full { cap: 1 << 20 })
    }

    pub fn system(&self) -> &CoxeterSystem {
        &self.system
    }

    pub fn rank(&self) -> usize {
        self.system.rank()
    }

    pub fn size(&self) -> usize {
        self.words.len()
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.words.len()
    }

    /// Whole group enumerated (group is finite).
    pub fn is_finite(&self) -> bool {
        self.finite
    }

    /// `None` when the table is the whole group.
    pub fn radius(&self) -> Option<u32> {
        self.radius
    }

    pub fn word(&self, w: usize) -> &[Gen] {
        &self.words[w]
    }

    pub fn word_string(&self, w: usize) -> String {
        self.system.format_word(&self.words[w])
    }

    pub fn len(&self, w: usize) -> u32 {
        self.lens[w]
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `L(w)`.
    pub fn weight(&self, w: usize) -> u32 {
        self.weights[w]
    }

    /// `(-1)^{l(w)}`.
    pub fn sign(&self, w: usize) -> i64 {
        if self.lens[w] % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn inverse(&self, w: usize) -> usize {
        self.inv[w] as usize
    }

    pub fn identity(&self) -> usize {
        0
    }

    /// The element `s` itself.
    pub fn gen(&self, s: Gen) -> usize {
        self.rmul[0][s as usize] as usize
    }

    /// `ws` (right) or `sw` (left); `None` when it leaves the ball.
    pub fn mul_gen(&self, w: usize, s: Gen, side: Side) -> Option<usize> {
        let x = match side {
            Side::Right => self.rmul[w][s as usize],
            Side::Left => self.lmul[w][s as usize],
        };
        (x != NONE).then_some(x as usize)
    }

    pub fn rmul(&self, w: usize, s: Gen) -> Option<usize> {
        self.mul_gen(w, s, Side::Right)
    }

    pub fn lmul(&self, w: usize, s: Gen) -> Option<usize> {
        self.mul_gen(w, s, Side::Left)
    }

    /// `s` in the left descent set of `w` (`sw < w`).
    pub fn is_left_descent(&self, w: usize, s: Gen) -> bool {
        self.ldes[w] >> s & 1 == 1
    }

    /// `s` in the right descent set of `w` (`ws < w`).
    pub fn is_right_descent(&self, w: usize, s: Gen) -> bool {
        self.rdes[w] >> s & 1 == 1
    }

    pub fn left_descents(&self, w: usize) -> u32 {
        self.ldes[w]
    }

    pub fn right_descents(&self, w: usize) -> u32 {
        self.rdes[w]
    }

    /// First generator in the left descent set.
    pub fn first_left_descent(&self, w: usize) -> Option<Gen> {
        (self.ldes[w] != 0).then(|| self.ldes[w].trailing_zeros() as Gen)
    }

    pub fn first_right_descent(&self, w: usize) -> Option<Gen> {
        (self.rdes[w] != 0).then(|| self.rdes[w].trailing_zeros() as Gen)
    }

    /// Evaluate an arbitrary word; `None` if a prefix leaves the ball.
    pub fn eval(&self, word: &[Gen]) -> Option<usize> {
        let mut x = 0usize;
        for &s in word {
            x = self.rmul(x, s)?;
        }
        Some(x)
    }

    /// `xy`; `None` if it leaves the ball.
    pub fn mul(&self, x: usize, y: usize) -> Option<usize> {
        let mut z = x;
        for &s in &self.words[y] {
            z = self.rmul(z, s)?;
        }
        Some(z)
    }

    /// Element with the given canonical word.
    pub fn lookup(&self, word: &[Gen]) -> Option<usize> {
        self.index.get(word).map(|&i| i as usize)
    }

    /// The longest element of a finite group.
    pub fn longest(&self) -> Result<usize> {
        if !self.finite {
            return Err(Error::InfiniteGroup);
        }
        Ok(self.size() - 1)
    }

    /// The permutation `s -> w0 s w0` of the generators.
    pub fn longest_conjugation(&self) -> Result<Vec<Gen>> {
        let w0 = self.longest()?;
        Ok(self
            .system
            .gens()
            .map(|s| {
                let x = self.mul(self.mul(w0, self.gen(s)).unwrap(), w0).unwrap();
                self.words[x][0]
            })
            .collect())
    }

    /// `w` lies on the boundary of a ball: some generator leads outside.
    pub fn on_frontier(&self, w: usize) -> bool {
        self.radius.is_some() && self.system.gens().any(|s| self.rmul(w, s).is_none() || self.lmul(w, s).is_none())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(label: &str) -> GroupTable {
        GroupTable::full(&CoxeterSystem::from_type(label, &[]).unwrap()).unwrap()
    }

    #[test]
    fn orders() {
        for (label, order) in [
            ("A1", 2),
            ("A2", 6),
            ("A3", 24),
            ("B2", 8),
            ("B3", 48),
            ("G2", 12),
            ("H3", 120),
            ("A1xA1", 4),
            ("F4", 1152),
            ("D4", 192),
            ("H4", 14400),
        ] {
            assert_eq!(table(label).size(), order, "{label}");
        }
    }

    #[test]
    fn a2_lengths_and_words() {
        let g = table("A2");
        let lens: Vec<u32> = g.elements().map(|w| g.len(w)).collect();
        assert_eq!(lens, vec![0, 1, 1, 2, 2, 3]);
        assert_eq!(g.word(5), &[0, 1, 0]);
        assert_eq!(g.longest().unwrap(), 5);
    }

    #[test]
    fn b2_longest() {
        let s = CoxeterSystem::dihedral(Some(4), 1, 2).unwrap();
        let g = GroupTable::full(&s).unwrap();
        let w0 = g.longest().unwrap();
        assert_eq!(g.len(w0), 4);
        assert_eq!(g.weight(w0), 6);
        assert_eq!(g.word_string(w0), "1212");
        assert_eq!(g.longest_conjugation().unwrap(), vec![0, 1]);
        let a2 = table("A2");
        assert_eq!(a2.longest_conjugation().unwrap(), vec![1, 0]);
    }

    #[test]
    fn infinite_ball() {
        let s = CoxeterSystem::dihedral(None, 1, 2).unwrap();
        let g = GroupTable::enumerate(&s, Extent::Ball(5)).unwrap();
        assert_eq!(g.size(), 11);
        assert!(!g.is_finite());
        assert_eq!(g.radius(), Some(5));
        let top = g.lookup(&[0, 1, 0, 1, 0]).unwrap();
        assert!(g.rmul(top, 1).is_none());
        assert!(g.on_frontier(top));
        assert!(matches!(g.longest(), Err(Error::InfiniteGroup)));
        assert!(matches!(
            GroupTable::enumerate(&s, Extent::Full { cap: 100 }),
            Err(Error::CapExceeded(100))
        ));
    }

    #[test]
    fn length_changes_by_one_and_exchange() {
        for label in ["A3", "B3", "H3"] {
            let g = table(label);
            for w in g.elements() {
                for s in g.system().gens() {
                    for side in [Side::Left, Side::Right] {
                        let x = g.mul_gen(w, s, side).unwrap();
                        assert_eq!((g.len(x) as i64 - g.len(w) as i64).abs(), 1);
                        assert_eq!(g.mul_gen(x, s, side), Some(w));
                    }
                    assert_eq!(g.is_left_descent(w, s), g.len(g.lmul(w, s).unwrap()) < g.len(w));
                }
                assert_eq!(g.mul(w, g.inverse(w)), Some(0));
                // exchange: sw < w, w = s1..sq  =>  s s1..s_{j-1} = s1..s_j
                let word = g.word(w);
                for s in g.system().gens().filter(|&s| g.is_left_descent(w, s)) {
                    let found = (1..=word.len()).any(|j| {
                        let mut lhs = vec![s];
                        lhs.extend_from_slice(&word[..j - 1]);
                        g.eval(&lhs) == g.eval(&word[..j])
                    });
                    assert!(found);
                }
            }
        }
    }

    #[test]
    fn weight_is_additive() {
        let s = CoxeterSystem::from_type("B3", &[2, 3]).unwrap();
        let g = GroupTable::full(&s).unwrap();
        for x in g.elements() {
            for y in g.elements() {
                let z = g.mul(x, y).unwrap();
                if g.len(z) == g.len(x) + g.len(y) {
                    assert_eq!(g.weight(z), g.weight(x) + g.weight(y));
                }
            }
        }
    }
}
