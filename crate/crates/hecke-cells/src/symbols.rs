//! Ranked multisets, symbols, admissible involutions and constructible families
//! for the type-B weights L(s_i) = a (i < n), L(s_n) = b.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use petgraph::unionfind::UnionFind;
use serde::Serialize;

use crate::error::{Error, Result};

/// Weights a > 0, b >= 0, with b = a r + b', 0 <= b' < a.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Params {
    pub a: i64,
    pub b: i64,
}

impl Params {
    pub fn new(a: i64, b: i64) -> Result<Self> {
        if a <= 0 || b < 0 {
            return Err(Error::DomainError(format!("need a > 0, b >= 0, got a={a}, b={b}")));
        }
        Ok(Params { a, b })
    }

    pub fn r(&self) -> usize {
        (self.b / self.a) as usize
    }

    pub fn b_prime(&self) -> i64 {
        self.b % self.a
    }

    /// Entry sum of a rank-0 member at level `n_level`.
    pub fn base_sum(&self, n_level: usize) -> i64 {
        let (a, b, bp) = (self.a, self.b, self.b_prime());
        let (nl, r) = (n_level as i64, self.r() as i64);
        a * nl * nl + nl * (b - a) + a * r * (r - 1) / 2 + bp * r
    }

    fn rank_of_sum(&self, n_level: usize, sum: i64) -> Result<usize> {
        let d = sum - self.base_sum(n_level);
        if d < 0 || d % self.a != 0 {
            return Err(Error::NotInFamily(format!("entry sum {sum} gives no rank")));
        }
        Ok((d / self.a) as usize)
    }
}

/// A member of the multiset family at level N: 2N + r entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct RankedMultiset {
    pub params: Params,
    pub n_level: usize,
    pub entries: Vec<i64>,
}

impl PartialOrd for Params {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Params {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.a, self.b).cmp(&(other.a, other.b))
    }
}

impl RankedMultiset {
    pub fn new(params: Params, n_level: usize, mut entries: Vec<i64>) -> Result<Self> {
        entries.sort_unstable();
        let (a, bp, r) = (params.a, params.b_prime(), params.r());
        let bad = |m: String| Err(Error::NotInFamily(m));
        if entries.len() != 2 * n_level + r {
            return bad(format!("{} entries, expected {}", entries.len(), 2 * n_level + r));
        }
        if entries.first().is_some_and(|&z| z < 0) {
            return bad("negative entry".into());
        }
        if bp == 0 {
            if entries.iter().any(|z| z % a != 0) {
                return bad(format!("entry not divisible by {a}"));
            }
            let mult = multiplicities(&entries);
            if mult.values().any(|&k| k > 2) {
                return bad("entry repeated more than twice".into());
            }
            if mult.len() < n_level + r {
                return bad(format!("fewer than {} distinct entries", n_level + r));
            }
        } else {
            if entries.windows(2).any(|w| w[0] == w[1]) {
                return bad("repeated entry".into());
            }
            let zeros = entries.iter().filter(|&&z| z % a == 0).count();
            let tops = entries.iter().filter(|&&z| z % a == bp).count();
            if zeros != n_level || tops != n_level + r {
                return bad(format!("residue counts ({zeros}, {tops}) at N={n_level}"));
            }
        }
        params.rank_of_sum(n_level, entries.iter().sum())?;
        Ok(RankedMultiset { params, n_level, entries })
    }

    /// The rank-0 member {0, a, .., (N-1)a, b', a+b', .., (N+r-1)a+b'}.
    pub fn base(params: Params, n_level: usize) -> Self {
        let (a, bp) = (params.a, params.b_prime());
        let mut entries: Vec<i64> = (0..n_level as i64).map(|k| k * a).collect();
        entries.extend((0..(n_level + params.r()) as i64).map(|k| k * a + bp));
        entries.sort_unstable();
        RankedMultiset { params, n_level, entries }
    }

    pub fn rank(&self) -> usize {
        self.params.rank_of_sum(self.n_level, self.entries.iter().sum()).expect("validated")
    }

    pub fn shift(&self) -> Self {
        let a = self.params.a;
        let mut entries = vec![0, self.params.b_prime()];
        entries.extend(self.entries.iter().map(|z| z + a));
        entries.sort_unstable();
        RankedMultiset { params: self.params, n_level: self.n_level + 1, entries }
    }

    /// Entries occurring exactly once, increasing.
    pub fn singles(&self) -> Vec<i64> {
        multiplicities(&self.entries).into_iter().filter(|&(_, k)| k == 1).map(|(z, _)| z).collect()
    }

    /// Entries occurring twice, increasing, each listed once.
    pub fn doubles(&self) -> Vec<i64> {
        multiplicities(&self.entries).into_iter().filter(|&(_, k)| k == 2).map(|(z, _)| z).collect()
    }
}

fn multiplicities(entries: &[i64]) -> BTreeMap<i64, usize> {
    let mut m = BTreeMap::new();
    for &z in entries {
        *m.entry(z).or_insert(0) += 1;
    }
    m
}

/// Two-row tableau: `top` has N + r entries congruent to b', `bottom` has N entries divisible by a.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Symbol {
    pub params: Params,
    pub n_level: usize,
    pub top: Vec<i64>,
    pub bottom: Vec<i64>,
}

impl Symbol {
    pub fn new(params: Params, n_level: usize, top: Vec<i64>, bottom: Vec<i64>) -> Result<Self> {
        let (a, bp, r) = (params.a, params.b_prime(), params.r());
        let bad = |m: String| Err(Error::NotInFamily(m));
        if top.len() != n_level + r || bottom.len() != n_level {
            return bad(format!("row lengths ({}, {}) at N={n_level}", top.len(), bottom.len()));
        }
        for (row, res) in [(&top, bp), (&bottom, 0)] {
            if row.windows(2).any(|w| w[0] >= w[1]) {
                return bad("row not strictly increasing".into());
            }
            if row.iter().any(|&z| z < 0 || z % a != res) {
                return bad(format!("row entry not >= 0 and congruent to {res} mod {a}"));
            }
        }
        params.rank_of_sum(n_level, top.iter().chain(&bottom).sum())?;
        Ok(Symbol { params, n_level, top, bottom })
    }

    /// The symbol of the bipartition (alpha, beta) at level N.
    pub fn from_bipartition(params: Params, alpha: &[usize], beta: &[usize], n_level: usize) -> Result<Self> {
        for p in [alpha, beta] {
            if p.windows(2).any(|w| w[0] < w[1]) {
                return Err(Error::NotInFamily(format!("{p:?} is not a partition")));
            }
        }
        let parts = |p: &[usize]| p.iter().filter(|&&x| x > 0).count();
        let (a, bp, r) = (params.a, params.b_prime(), params.r());
        if parts(alpha) > n_level + r || parts(beta) > n_level {
            return Err(Error::NTooSmall);
        }
        let part = |p: &[usize], k: usize| p.get(k).copied().unwrap_or(0) as i64;
        let top = (1..=n_level + r).map(|i| a * (part(alpha, n_level + r - i) + i as i64 - 1) + bp).collect();
        let bottom = (1..=n_level).map(|j| a * (part(beta, n_level - j) + j as i64 - 1)).collect();
        Symbol::new(params, n_level, top, bottom)
    }

    /// Inverse of `from_bipartition`.
    pub fn bipartition(&self) -> (Vec<usize>, Vec<usize>) {
        let (a, bp) = (self.params.a, self.params.b_prime());
        let row = |xs: &[i64], off: i64| -> Vec<usize> {
            let mut p: Vec<usize> =
                xs.iter().enumerate().map(|(i, &x)| ((x - off - a * i as i64) / a) as usize).filter(|&k| k > 0).collect();
            p.reverse();
            p
        };
        (row(&self.top, bp), row(&self.bottom, 0))
    }

    pub fn rank(&self) -> usize {
        self.params.rank_of_sum(self.n_level, self.top.iter().chain(&self.bottom).sum()).expect("validated")
    }

    pub fn flatten(&self) -> RankedMultiset {
        let mut entries: Vec<i64> = self.top.iter().chain(&self.bottom).copied().collect();
        entries.sort_unstable();
        RankedMultiset { params: self.params, n_level: self.n_level, entries }
    }

    pub fn shift(&self) -> Self {
        let a = self.params.a;
        let mut top = vec![self.params.b_prime()];
        top.extend(self.top.iter().map(|z| z + a));
        let mut bottom = vec![0];
        bottom.extend(self.bottom.iter().map(|z| z + a));
        Symbol { params: self.params, n_level: self.n_level + 1, top, bottom }
    }

    /// Inverse of `shift`, if `self` is in its image.
    pub fn unshift(&self) -> Option<Self> {
        let a = self.params.a;
        if self.n_level == 0 || self.top[0] != self.params.b_prime() || self.bottom[0] != 0 {
            return None;
        }
        Some(Symbol {
            params: self.params,
            n_level: self.n_level - 1,
            top: self.top[1..].iter().map(|z| z - a).collect(),
            bottom: self.bottom[1..].iter().map(|z| z - a).collect(),
        })
    }

    /// Representative at the smallest level; symbols are equivalent iff their normal forms agree.
    pub fn normalize(&self) -> Self {
        let mut s = self.clone();
        while let Some(t) = s.unshift() {
            s = t;
        }
        s
    }

    pub fn shift_to(&self, n_level: usize) -> Option<Self> {
        let mut s = self.normalize();
        if s.n_level > n_level {
            return None;
        }
        while s.n_level < n_level {
            s = s.shift();
        }
        Some(s)
    }

    pub fn equivalent(&self, other: &Symbol) -> bool {
        self.params == other.params && self.normalize() == other.normalize()
    }

    /// The complement symbol at level t + 1 - N - r.
    pub fn bar_complement(&self, t: i64) -> Result<Self> {
        let (a, bp) = (self.params.a, self.params.b_prime());
        let top_max = a * t + bp;
        if t < 0 || self.top.iter().any(|&l| l > top_max) || self.bottom.iter().any(|&m| m > a * t) {
            return Err(Error::TTooSmall);
        }
        let drop_m: BTreeSet<i64> = self.bottom.iter().map(|m| top_max - m).collect();
        let drop_l: BTreeSet<i64> = self.top.iter().map(|l| top_max - l).collect();
        let top = (0..=t).map(|k| k * a + bp).filter(|z| !drop_m.contains(z)).collect();
        let bottom: Vec<i64> = (0..=t).map(|k| k * a).filter(|z| !drop_l.contains(z)).collect();
        Symbol::new(self.params, bottom.len(), top, bottom)
    }

    /// Smallest t accepted by `bar_complement`.
    pub fn min_t(&self) -> i64 {
        let (a, bp) = (self.params.a, self.params.b_prime());
        let t_top = self.top.last().map_or(0, |&l| (l - bp + a - 1).div_euclid(a));
        let t_bot = self.bottom.last().map_or(0, |&m| m / a);
        t_top.max(t_bot).max(0)
    }

    /// a-value A_N - B_N.
    pub fn a_value(&self) -> i64 {
        let (a, bp) = (self.params.a, self.params.b_prime());
        let base_top: Vec<i64> = (0..self.top.len() as i64).map(|i| a * i + bp).collect();
        let base_bottom: Vec<i64> = (0..self.bottom.len() as i64).map(|j| a * j).collect();
        inf_sum(&self.top, &self.bottom) - inf_sum(&base_top, &base_bottom)
    }

    /// 2^d with 2d + r singles if b' = 0, else 1.
    pub fn f_value(&self) -> u64 {
        if self.params.b_prime() > 0 {
            return 1;
        }
        let d = (self.flatten().singles().len() - self.params.r()) / 2;
        1 << d
    }
}

fn inf_sum(top: &[i64], bottom: &[i64]) -> i64 {
    let pairs = |xs: &[i64]| -> i64 {
        (0..xs.len()).flat_map(|i| (i + 1..xs.len()).map(move |j| (i, j))).map(|(i, j)| xs[i].min(xs[j])).sum()
    };
    let cross: i64 = top.iter().map(|&l| bottom.iter().map(|&m| l.min(m)).sum::<i64>()).sum();
    cross + pairs(top) + pairs(bottom)
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let row = |xs: &[i64]| xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
        writeln!(f, "{}", row(&self.top))?;
        write!(f, "  {}", row(&self.bottom))
    }
}

/// Partitions of n with at most `max_parts` parts, in reverse lexicographic order.
pub fn partitions(n: usize, max_parts: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, max_part: usize, parts_left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        if parts_left == 0 {
            return;
        }
        for p in (1..=max_part.min(n)).rev() {
            cur.push(p);
            go(n - p, p, parts_left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, max_parts, &mut Vec::new(), &mut out);
    out
}

/// All symbols of rank n at level N.
pub fn symbols(params: Params, n_level: usize, n: usize) -> Vec<Symbol> {
    let mut out = Vec::new();
    for k in 0..=n {
        for alpha in partitions(k, n_level + params.r()) {
            for beta in partitions(n - k, n_level) {
                out.push(Symbol::from_bipartition(params, &alpha, &beta, n_level).expect("parts fit"));
            }
        }
    }
    out.sort();
    out
}

/// All multisets of rank n at level N, as flattenings of symbols.
pub fn multisets(params: Params, n_level: usize, n: usize) -> Vec<RankedMultiset> {
    let set: BTreeSet<RankedMultiset> = symbols(params, n_level, n).iter().map(Symbol::flatten).collect();
    set.into_iter().collect()
}

/// Smallest N from which the multiset count of rank n stays constant, with that count.
pub fn stabilization(params: Params, n: usize) -> (usize, usize) {
    // every part fits once N >= n, so counts are constant from there on
    let counts: Vec<usize> = (0..=n).map(|nl| multisets(params, nl, n).len()).collect();
    let last = counts[n];
    let start = (0..=n).rev().take_while(|&nl| counts[nl] == last).last().unwrap_or(n);
    (start, last)
}

/// An r-admissible involution of the ordered set `z`: `pairs` are index pairs (i < j).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct AdmissibleInvolution {
    pub z: Vec<i64>,
    pub r: usize,
    pub pairs: Vec<(usize, usize)>,
}

impl AdmissibleInvolution {
    pub fn image(&self, i: usize) -> usize {
        self.pairs.iter().find_map(|&(x, y)| if x == i { Some(y) } else if y == i { Some(x) } else { None }).unwrap_or(i)
    }

    pub fn fixed_points(&self) -> Vec<i64> {
        (0..self.z.len()).filter(|&i| self.image(i) == i).map(|i| self.z[i]).collect()
    }

    /// Subsets meeting each 2-orbit in exactly one element; 2^p of them.
    pub fn s_iota(&self) -> Vec<Vec<i64>> {
        let p = self.pairs.len();
        let mut out: Vec<Vec<i64>> = (0..1u64 << p)
            .map(|mask| {
                let mut y: Vec<i64> = self
                    .pairs
                    .iter()
                    .enumerate()
                    .map(|(k, &(i, j))| self.z[if mask >> k & 1 == 1 { j } else { i }])
                    .collect();
                y.sort_unstable();
                y
            })
            .collect();
        out.sort();
        out
    }
}

/// All r-admissible involutions of the increasing sequence `z`.
pub fn admissible_involutions(z: &[i64], r: usize) -> Result<Vec<AdmissibleInvolution>> {
    if r > z.len() || (z.len() - r) % 2 != 0 {
        return Err(Error::ParityError);
    }
    if z.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::DomainError("Z must be strictly increasing".into()));
    }
    fn go(rest: &[usize], r: usize, cur: &mut Vec<(usize, usize)>, out: &mut BTreeSet<Vec<(usize, usize)>>) {
        if rest.len() == r {
            let mut p = cur.clone();
            p.sort_unstable();
            out.insert(p);
            return;
        }
        for k in 0..rest.len() - 1 {
            let mut next = rest.to_vec();
            next.drain(k..k + 2);
            cur.push((rest[k], rest[k + 1]));
            go(&next, r, cur, out);
            cur.pop();
        }
    }
    let mut found = BTreeSet::new();
    let idx: Vec<usize> = (0..z.len()).collect();
    go(&idx, r, &mut Vec::new(), &mut found);
    Ok(found.into_iter().map(|pairs| AdmissibleInvolution { z: z.to_vec(), r, pairs }).collect())
}

/// Number of components of the graph on (|Z|-r)/2-subsets joined when they share some S_iota.
pub fn involution_graph_components(z: &[i64], r: usize) -> Result<usize> {
    let invs = admissible_involutions(z, r)?;
    let p = (z.len() - r) / 2;
    let vertices: Vec<Vec<i64>> = subsets(z, p);
    let index: BTreeMap<&Vec<i64>, usize> = vertices.iter().enumerate().map(|(i, y)| (y, i)).collect();
    let mut uf = UnionFind::<usize>::new(vertices.len());
    for inv in &invs {
        let family = inv.s_iota();
        for y in &family[1..] {
            uf.union(index[&family[0]], index[y]);
        }
    }
    let roots: BTreeSet<usize> = (0..vertices.len()).map(|i| uf.find(i)).collect();
    Ok(roots.len())
}

fn subsets(z: &[i64], k: usize) -> Vec<Vec<i64>> {
    if k == 0 {
        return vec![vec![]];
    }
    if z.len() < k {
        return vec![];
    }
    let mut out: Vec<Vec<i64>> =
        subsets(&z[1..], k - 1).into_iter().map(|mut y| { y.insert(0, z[0]); y }).collect();
    out.extend(subsets(&z[1..], k));
    out
}

/// The symbols Lambda_Y, Y in S_iota, attached to a multiset with b' = 0.
pub fn constructible_family(m: &RankedMultiset, inv: &AdmissibleInvolution) -> Result<Vec<Symbol>> {
    if m.params.b_prime() != 0 {
        return Err(Error::WrongResidue);
    }
    if inv.z != m.singles() || inv.r != m.params.r() {
        return Err(Error::DomainError("involution is not on the singles of the multiset with r fixed points".into()));
    }
    let doubles = m.doubles();
    let mut out = Vec::new();
    for y in inv.s_iota() {
        let mut top: Vec<i64> = inv.z.iter().filter(|z| !y.contains(z)).chain(&doubles).copied().collect();
        let mut bottom: Vec<i64> = y.iter().chain(&doubles).copied().collect();
        top.sort_unstable();
        bottom.sort_unstable();
        out.push(Symbol::new(m.params, m.n_level, top, bottom)?);
    }
    Ok(out)
}

/// Every constructible family of rank n at level N, one per (multiset, involution) when b' = 0.
pub fn constructible_families(params: Params, n_level: usize, n: usize) -> Result<Vec<Vec<Symbol>>> {
    if params.b_prime() != 0 {
        return Err(Error::WrongResidue);
    }
    let mut out = Vec::new();
    for m in multisets(params, n_level, n) {
        for inv in admissible_involutions(&m.singles(), params.r())? {
            out.push(constructible_family(&m, &inv)?);
        }
    }
    Ok(out)
}
