//! Brute-force oracle: `c_w` as the unique solution of the bar-fixedness linear system.
//!
//! Works from the multiplication table only: `T_w T_s` by the quadratic relation,
//! `bar(T_y) = T_{s1}^-1 .. T_{sk}^-1` for a reduced word, and Gaussian elimination over `Q`.

use std::collections::{BTreeMap, HashMap};

use hecke_cells::coxeter::{Gen, GroupTable};
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Poly = BTreeMap<i32, BigRational>;
type Elt = HashMap<usize, Poly>;

fn add_poly(p: &mut Poly, e: i32, c: BigRational) {
    let cur = p.entry(e).or_insert_with(BigRational::zero);
    *cur += c;
    if cur.is_zero() {
        p.remove(&e);
    }
}

fn add_term(h: &mut Elt, w: usize, e: i32, c: BigRational) {
    let p = h.entry(w).or_default();
    add_poly(p, e, c);
    if p.is_empty() {
        h.remove(&w);
    }
}

/// `T_w T_s^-1` is `T_ws` when `ws < w` and `T_ws - (v_s - v_s^-1) T_w` otherwise.
fn times_inverse_gen(g: &GroupTable, h: &Elt, s: Gen) -> Elt {
    let l = g.system().weight(s) as i32;
    let mut out = Elt::new();
    for (&w, p) in h {
        let ws = g.rmul(w, s).expect("finite table");
        for (&e, c) in p {
            add_term(&mut out, ws, e, c.clone());
            if g.len(ws) > g.len(w) {
                add_term(&mut out, w, e + l, -c.clone());
                add_term(&mut out, w, e - l, c.clone());
            }
        }
    }
    out
}

fn bar_t(g: &GroupTable, y: usize) -> Elt {
    let mut h = Elt::new();
    add_term(&mut h, 0, 0, BigRational::one());
    for &s in g.word(y) {
        h = times_inverse_gen(g, &h, s);
    }
    h
}

/// Solve `A x = b` over `Q`; `None` unless the solution is unique.
fn solve(mut rows: Vec<Vec<BigRational>>, ncols: usize) -> Option<Vec<BigRational>> {
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { return None };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                let pivot = rows[r].clone();
                for (x, y) in rows[i].iter_mut().zip(pivot) {
                    *x -= &f * y;
                }
            }
        }
        r += 1;
    }
    if rows[r..].iter().any(|row| !row[ncols].is_zero()) {
        return None;
    }
    Some((0..ncols).map(|c| rows[c][ncols].clone()).collect())
}

/// `p_{y,w}` for every `y`, as `y -> {degree: coefficient}`; unknowns range over all `y != w`
/// with degrees in `[-L(w), -1]`.
pub fn kl_column_by_linear_algebra(g: &GroupTable, w: usize) -> Vec<Poly> {
    let n = g.size();
    let depth = g.weight(w) as i32;
    let bars: Vec<Elt> = g.elements().map(|y| bar_t(g, y)).collect();
    let unknowns: Vec<(usize, i32)> = g.elements().filter(|&y| y != w).flat_map(|y| (1..=depth).map(move |k| (y, k))).collect();
    let ncols = unknowns.len();
    // rows indexed by (x, degree)
    let mut rows: BTreeMap<(usize, i32), Vec<BigRational>> = BTreeMap::new();
    let mut row = |key: (usize, i32), col: usize, c: BigRational| {
        rows.entry(key).or_insert_with(|| vec![BigRational::zero(); ncols + 1])[col] += c;
    };
    for (col, &(y, k)) in unknowns.iter().enumerate() {
        for (&x, p) in &bars[y] {
            for (&e, c) in p {
                row((x, e + k), col, c.clone());
            }
        }
        row((y, -k), col, -BigRational::one());
    }
    // rhs: T_w - bar(T_w)
    row((w, 0), ncols, BigRational::one());
    for (&x, p) in &bars[w] {
        for (&e, c) in p {
            row((x, e), ncols, -c.clone());
        }
    }
    let sol = solve(rows.into_values().collect(), ncols).expect("bar-fixed solution is unique");
    let mut out = vec![Poly::new(); n];
    out[w].insert(0, BigRational::one());
    for (&(y, k), c) in unknowns.iter().zip(sol) {
        if !c.is_zero() {
            out[y].insert(-k, c);
        }
    }
    out
}

