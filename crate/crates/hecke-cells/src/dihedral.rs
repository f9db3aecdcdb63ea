//! Closed forms for dihedral groups, used as oracles and as certificates on balls.
//!
//! Generators are `s_1 = 0` and `s_2 = 1`; `s_k` is the alternating word of length `k`
//! starting with `s`. Forms marked "unequal" assume `L_2 > L_1`.

use crate::coxeter::{Gen, GroupTable};
use crate::hecke::{Basis, HeckeElt};
use crate::laurent::LaurentPoly;

/// `(s, k)` with `z = s_k`. The identity gives `(0, 0)`.
pub fn coords(g: &GroupTable, z: usize) -> (Gen, usize) {
    let w = g.word(z);
    (w.first().copied().unwrap_or(0), w.len())
}

/// The element `s_k`, if it lies in the table.
pub fn elt(g: &GroupTable, s: Gen, k: usize) -> Option<usize> {
    let word: Vec<Gen> = (0..k).map(|i| if i % 2 == 0 { s } else { 1 - s }).collect();
    g.eval(&word)
}

fn weights(g: &GroupTable) -> (i32, i32) {
    let l = g.system().weights();
    (l[0] as i32, l[1] as i32)
}

fn v(e: i32) -> LaurentPoly {
    LaurentPoly::v(e)
}

/// `1 - v^{2L_1} + v^{4L_1} - ... + (-1)^s v^{2sL_1}`.
fn alt(l1: i32, s: usize) -> LaurentPoly {
    LaurentPoly::from_i64_terms(&(0..=s).map(|i| (2 * i as i32 * l1, if i % 2 == 0 { 1 } else { -1 })).collect::<Vec<_>>())
}

/// `a(z)` for the infinite dihedral group: `0`, `L(s)` on generators, `max(L_1, L_2)` beyond.
pub fn a_infinite(g: &GroupTable, z: usize) -> i32 {
    let (s, k) = coords(g, z);
    let (l1, l2) = weights(g);
    match k {
        0 => 0,
        1 => [l1, l2][s as usize],
        _ => l1.max(l2),
    }
}

/// `a(z)` for a finite dihedral group of order `2m`, `m >= 4`, unequal.
pub fn a_finite_unequal(g: &GroupTable, z: usize, m: usize) -> i32 {
    let (s, k) = coords(g, z);
    let (l1, l2) = weights(g);
    let m32 = m as i32;
    match (s, k) {
        (_, 0) => 0,
        (_, k) if k == m => m32 * (l1 + l2) / 2,
        (0, 1) => l1,
        (1, 1) => l2,
        (1, k) if k == m - 1 => (m32 * l2 - (m32 - 2) * l1) / 2,
        _ => l2,
    }
}

/// `Delta(z)` for the infinite dihedral group, unequal.
pub fn delta_infinite(g: &GroupTable, z: usize) -> i32 {
    let (s, k) = coords(g, z);
    let (l1, l2) = weights(g);
    let h = (k / 2) as i32;
    match (s, k) {
        (_, 0) => 0,
        (_, k) if k % 2 == 0 => h * (l1 + l2),
        (1, _) => -h * l1 + (h + 1) * l2,
        (0, 1) => l1,
        _ => (h - 1) * l1 + h * l2,
    }
}

/// `Gamma_w = sum_{y <= w} v^{L(y) - L(w)} T_y`.
pub fn gamma(g: &GroupTable, w: usize) -> HeckeElt {
    let (s, k) = coords(g, w);
    let lw = g.weight(w) as i32;
    let mut out = HeckeElt::zero(Basis::T);
    for y in lower(g, s, k) {
        out.add_term(y, &v(g.weight(y) as i32 - lw));
    }
    out
}

/// Elements `y <= s_k`: every alternating word of length below `k`, and `s_k`.
fn lower(g: &GroupTable, s: Gen, k: usize) -> Vec<usize> {
    let mut out: Vec<usize> = (0..k).flat_map(|j| [elt(g, 0, j), elt(g, 1, j)]).flatten().collect();
    out.extend(elt(g, s, k));
    out.sort_unstable();
    out.dedup();
    out
}

/// `Gamma'_w`, unequal.
pub fn gamma_prime(g: &GroupTable, w: usize) -> HeckeElt {
    let (s, k) = coords(g, w);
    let (l1, l2) = weights(g);
    if k % 2 == 0 || (s, k) == (0, 1) {
        return gamma(g, w);
    }
    let e = |s: Gen, j: usize| elt(g, s, j).expect("y <= w lies in the table");
    let mut out = HeckeElt::zero(Basis::T);
    let h = k / 2;
    if s == 1 {
        for t in 0..h {
            let c = alt(l1, t).shift(-(t as i32) * (l1 + l2));
            let j = 2 * h - 2 * t;
            out.add_term(e(1, j + 1), &c);
            out.add_term(e(1, j), &c.shift(-l2));
            out.add_term(e(0, j), &c.shift(-l2));
            out.add_term(e(0, j - 1), &c.shift(-2 * l2));
        }
        let c = alt(l1, h).shift(-(h as i32) * (l1 + l2));
        out.add_term(e(1, 1), &c);
        out.add_term(0, &c.shift(-l2));
    } else {
        let lw = g.weight(w) as i32;
        out.add_term(w, &LaurentPoly::one());
        out.add_term(e(0, k - 1), &v(-l1));
        out.add_term(e(1, k - 1), &v(-l1));
        out.add_term(e(1, k - 2), &v(-2 * l1));
        let f = &LaurentPoly::one() + &v(2 * l1);
        for y in lower(g, 0, k - 2) {
            out.add_term(y, &f.shift(g.weight(y) as i32 - lw));
        }
    }
    out
}

/// The coefficient `p` of `c_{2_{m-1}}` in `c_{2_{m-1}}^2`, for `m = 2k + 2`, unequal.
pub fn square_coefficient(l1: i32, l2: i32, m: usize) -> LaurentPoly {
    let k = (m - 2) / 2;
    let d = l2 - l1;
    let sum = LaurentPoly::from_i64_terms(&(0..=k).map(|j| ((k as i32 - 2 * j as i32) * d, 1)).collect::<Vec<_>>());
    let sign = if k % 2 == 0 { 1 } else { -1 };
    (&LaurentPoly::v_plus_inv(l2) * &sum).scale(&sign.into())
}

/// `c_x c_y` in the c-basis from the closed forms for the infinite dihedral group, unequal.
/// `None` when the pair is not covered or some term leaves the table.
pub fn product_infinite(g: &GroupTable, x: usize, y: usize) -> Option<HeckeElt> {
    let (l1, l2) = weights(g);
    let zeta = &v(l2 - l1) + &v(l1 - l2);
    let (f1, f2) = (LaurentPoly::v_plus_inv(l1), LaurentPoly::v_plus_inv(l2));
    let (xs, xk) = coords(g, x);
    let (ys, yk) = coords(g, y);
    let mut out = HeckeElt::zero(Basis::C);
    if xk == 0 || yk == 0 {
        out.add_term(if xk == 0 { y } else { x }, &LaurentPoly::one());
        return Some(out);
    }
    let kp = yk;
    // Terms `f_2 c_{s_j}` over `u in [0, k]` with `2u <= k' - 1`.
    let same_family = |s: Gen, k: usize, base: usize, out: &mut HeckeElt| -> Option<()> {
        for u in (0..=k).filter(|&u| 2 * u < kp) {
            out.add_term(elt(g, s, base - 4 * u)?, &f2);
        }
        Some(())
    };
    let pu = |k: usize, u: usize| -> LaurentPoly {
        let d = |b: bool| if b { LaurentPoly::one() } else { LaurentPoly::zero() };
        if u == 0 {
            LaurentPoly::one()
        } else if u == 2 * k + 2 {
            d(kp > 2 * k + 3)
        } else if u % 2 == 1 {
            if kp > u {
                zeta.clone()
            } else {
                LaurentPoly::zero()
            }
        } else {
            &d(kp > u - 1) + &d(kp > u + 1)
        }
    };
    let mixed = |s: Gen, k: usize, top: usize, scale: &LaurentPoly, out: &mut HeckeElt| -> Option<()> {
        for u in 0..=2 * k + 2 {
            let c = &pu(k, u) * scale;
            if !c.is_zero() {
                out.add_term(elt(g, s, top - 2 * u)?, &c);
            }
        }
        Some(())
    };
    let one = LaurentPoly::one();
    match (xs, xk % 2, ys) {
        (1, 1, 1) => same_family(1, xk / 2, xk + kp - 1, &mut out)?,
        (0, 0, 1) => same_family(0, (xk - 2) / 2, xk + kp - 1, &mut out)?,
        (1, 1, 0) => mixed(1, xk / 2, kp + xk, &one, &mut out)?,
        (0, 0, 0) => mixed(0, (xk - 2) / 2, kp + xk, &one, &mut out)?,
        (1, 0, 0) => mixed(1, (xk - 2) / 2, kp + xk - 1, &f1, &mut out)?,
        (0, 1, 0) if xk == 1 => out.add_term(y, &f1),
        (0, 1, 1) if xk == 1 => out.add_term(elt(g, 0, kp + 1)?, &one),
        (0, 1, 0) => mixed(0, (xk - 3) / 2, kp + xk - 1, &f1, &mut out)?,
        _ => return None,
    }
    Some(out)
}

/// `D_{s_1}` in the T-basis, unequal. For `m` infinite the series is truncated to the table.
pub fn d_s1(g: &GroupTable) -> HeckeElt {
    let (l1, l2) = weights(g);
    let m = g.system().m(0, 1).map(|m| m as usize);
    let top = m.unwrap_or_else(|| g.elements().map(|z| g.len(z) as usize).max().unwrap_or(0));
    let mut out = HeckeElt::zero(Basis::T);
    let put = |out: &mut HeckeElt, s: Gen, k: usize, c: &LaurentPoly| {
        if let Some(z) = elt(g, s, k).filter(|&z| g.len(z) as usize == k && m.is_none_or(|m| k < m)) {
            out.add_term(z, c);
        }
    };
    let last = m.map_or(top / 2, |m| (m - 2) / 2);
    for t in 0..=last {
        let c = alt(l1, t).shift(-(t as i32) * (l1 + l2));
        put(&mut out, 0, 2 * t + 1, &c);
        put(&mut out, 1, 2 * t + 2, &-&c.shift(-l2));
        put(&mut out, 0, 2 * t + 2, &-&c.shift(-l2));
        put(&mut out, 1, 2 * t + 3, &c.shift(-2 * l2));
        if m.is_some() && t == last {
            out.add_term(g.elements().last().unwrap(), &-&c.shift(-l2));
        }
    }
    out
}

/// Structure constants of `J` for the infinite dihedral group, unequal: `t_x t_y` as `(z, coeff)`.
/// `None` when some term leaves the table.
pub fn j_product_infinite(g: &GroupTable, x: usize, y: usize) -> Option<Vec<(usize, i64)>> {
    let (xs, xk) = coords(g, x);
    let (ys, yk) = coords(g, y);
    if xk == 0 || yk == 0 {
        return Some(if xk == 0 && yk == 0 { vec![(0, 1)] } else { vec![] });
    }
    if (xs, xk) == (0, 1) || (ys, yk) == (0, 1) {
        return Some(if x == y { vec![(x, 1)] } else { vec![] });
    }
    // Write `x` and `y` as `(family, parity, k)` following the matrix-unit labels.
    let label = |s: Gen, k: usize| -> (u8, usize) {
        match (s, k % 2) {
            (1, 1) => (0, (k - 1) / 2),
            (0, 1) => (1, (k - 3) / 2),
            (1, 0) => (2, (k - 2) / 2),
            _ => (3, (k - 2) / 2),
        }
    };
    let (lx, k) = label(xs, xk);
    let (ly, kp) = label(ys, yk);
    let (s, base) = match (lx, ly) {
        (0, 0) => (1, 2 * k + 2 * kp + 1),
        (1, 1) => (0, 2 * k + 2 * kp + 3),
        (0, 2) => (1, 2 * k + 2 * kp + 2),
        (1, 3) => (0, 2 * k + 2 * kp + 2),
        (2, 1) => (1, 2 * k + 2 * kp + 2),
        (2, 3) => (1, 2 * k + 2 * kp + 1),
        (3, 0) => (0, 2 * k + 2 * kp + 2),
        (3, 2) => (0, 2 * k + 2 * kp + 3),
        _ => return Some(vec![]),
    };
    (0..=k.min(kp)).map(|u| elt(g, s, base - 4 * u).map(|z| (z, 1))).collect()
}
