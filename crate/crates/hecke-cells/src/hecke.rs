//! The Hecke algebra in the standard basis, its involutions and the r-polynomials.

use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};
use std::sync::Arc;

use crate::coxeter::{Bruhat, Gen, GroupTable, Side};
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Basis {
    T,
    C,
}

/// A finite combination of basis elements `T_w` or `c_w`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeckeElt {
    basis: Basis,
    coords: BTreeMap<usize, LaurentPoly>,
}

static ZERO: LaurentPoly = LaurentPoly::zero_const();

impl HeckeElt {
    pub fn zero(basis: Basis) -> Self {
        HeckeElt { basis, coords: BTreeMap::new() }
    }

    pub fn basis_elt(basis: Basis, w: usize) -> Self {
        Self::monomial(basis, w, LaurentPoly::one())
    }

    pub fn monomial(basis: Basis, w: usize, a: LaurentPoly) -> Self {
        let mut h = Self::zero(basis);
        h.add_term(w, &a);
        h
    }

    pub fn from_coords<I: IntoIterator<Item = (usize, LaurentPoly)>>(basis: Basis, it: I) -> Self {
        let mut h = Self::zero(basis);
        for (w, a) in it {
            h.add_term(w, &a);
        }
        h
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn with_basis(mut self, basis: Basis) -> Self {
        self.basis = basis;
        self
    }

    pub fn coeff(&self, w: usize) -> &LaurentPoly {
        self.coords.get(&w).unwrap_or(&ZERO)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &LaurentPoly)> {
        self.coords.iter().map(|(&w, a)| (w, a))
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.coords.keys().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    /// `self += a * basis(w)`.
    pub fn add_term(&mut self, w: usize, a: &LaurentPoly) {
        if a.is_zero() {
            return;
        }
        let slot = self.coords.entry(w).or_default();
        *slot += a;
        if slot.is_zero() {
            self.coords.remove(&w);
        }
    }

    /// `self += a * b * basis(w)`.
    pub fn add_term_mul(&mut self, w: usize, a: &LaurentPoly, b: &LaurentPoly) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        let slot = self.coords.entry(w).or_default();
        slot.add_mul(a, b);
        if slot.is_zero() {
            self.coords.remove(&w);
        }
    }

    /// `self += a * other`.
    pub fn add_scaled(&mut self, other: &HeckeElt, a: &LaurentPoly) {
        assert_eq!(self.basis, other.basis, "basis mismatch");
        for (w, b) in other.iter() {
            self.add_term_mul(w, a, b);
        }
    }

    pub fn scale(&self, a: &LaurentPoly) -> HeckeElt {
        let mut out = HeckeElt::zero(self.basis);
        out.add_scaled(self, a);
        out
    }

    /// Apply `v -> v^-1` to the coordinates only.
    pub fn bar_coords(&self) -> HeckeElt {
        HeckeElt { basis: self.basis, coords: self.coords.iter().map(|(&w, a)| (w, a.bar())).collect() }
    }

    /// Transport coordinates along a map of indices.
    pub fn map_support(&self, f: impl Fn(usize) -> usize) -> HeckeElt {
        HeckeElt::from_coords(self.basis, self.coords.iter().map(|(&w, a)| (f(w), a.clone())))
    }
}

impl Add for &HeckeElt {
    type Output = HeckeElt;
    fn add(self, o: &HeckeElt) -> HeckeElt {
        let mut out = self.clone();
        out.add_scaled(o, &LaurentPoly::one());
        out
    }
}

impl Sub for &HeckeElt {
    type Output = HeckeElt;
    fn sub(self, o: &HeckeElt) -> HeckeElt {
        let mut out = self.clone();
        out.add_scaled(o, &LaurentPoly::monomial(-1, 0));
        out
    }
}

impl Neg for &HeckeElt {
    type Output = HeckeElt;
    fn neg(self) -> HeckeElt {
        self.scale(&LaurentPoly::monomial(-1, 0))
    }
}

/// Lower-triangular table indexed by `(y, w)` with `y <= w` in table order.
#[derive(Clone, Debug)]
pub struct Triangle {
    rows: Vec<Vec<LaurentPoly>>,
}

impl Triangle {
    pub fn from_rows(rows: Vec<Vec<LaurentPoly>>) -> Self {
        Triangle { rows }
    }

    pub fn get(&self, y: usize, w: usize) -> &LaurentPoly {
        self.rows.get(w).and_then(|r| r.get(y)).unwrap_or(&ZERO)
    }

    pub fn row(&self, w: usize) -> &[LaurentPoly] {
        &self.rows[w]
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }
}

/// `r_{y,w}`: the matrix of the bar involution, `bar(T_w) = sum_y bar(r_{y,w}) T_y`.
pub type RTable = Triangle;

/// Pivot on the first left descent `s` of `w`:
/// `r_{y,w} = r_{sy,sw}` if `sy < y`, else `r_{sy,sw} + (v_s - v_s^-1) r_{y,sw}`.
pub fn r_table(g: &GroupTable, bruhat: &Bruhat, xi: &[LaurentPoly]) -> RTable {
    let mut rows: Vec<Vec<LaurentPoly>> = Vec::with_capacity(g.size());
    rows.push(vec![LaurentPoly::one()]);
    for w in 1..g.size() {
        let s = g.first_left_descent(w).unwrap();
        let x = g.lmul(w, s).unwrap();
        let mut row = vec![LaurentPoly::zero(); w + 1];
        for y in bruhat.lower(w).ones() {
            let sy = g.lmul(y, s).expect("sy stays in the ball");
            let get = |a: usize, b: usize| rows[b].get(a).unwrap_or(&ZERO);
            row[y] = if g.is_left_descent(y, s) {
                get(sy, x).clone()
            } else {
                let mut r = get(sy, x).clone();
                r.add_mul(&xi[s as usize], get(y, x));
                r
            };
        }
        rows.push(row);
    }
    Triangle { rows }
}

/// The Hecke algebra of an enumerated group, with its r-polynomials.
#[derive(Clone, Debug)]
pub struct Hecke {
    g: Arc<GroupTable>,
    bruhat: Bruhat,
    r: RTable,
    xi: Vec<LaurentPoly>,
}

impl Hecke {
    pub fn new(g: GroupTable) -> Self {
        Self::from_arc(Arc::new(g))
    }

    pub fn from_arc(g: Arc<GroupTable>) -> Self {
        let bruhat = Bruhat::new(&g);
        let xi: Vec<LaurentPoly> =
            g.system().gens().map(|s| LaurentPoly::v_minus_inv(g.system().weight(s) as i32)).collect();
        let r = r_table(&g, &bruhat, &xi);
        Hecke { g, bruhat, r, xi }
    }

    pub fn table(&self) -> &GroupTable {
        &self.g
    }

    pub fn table_arc(&self) -> Arc<GroupTable> {
        self.g.clone()
    }

    pub fn bruhat(&self) -> &Bruhat {
        &self.bruhat
    }

    pub fn r(&self, y: usize, w: usize) -> &LaurentPoly {
        self.r.get(y, w)
    }

    pub fn r_table(&self) -> &RTable {
        &self.r
    }

    /// `v_s - v_s^-1`.
    pub fn xi(&self, s: Gen) -> &LaurentPoly {
        &self.xi[s as usize]
    }

    /// `v_s = v^{L(s)}`.
    pub fn vs(&self, s: Gen) -> LaurentPoly {
        LaurentPoly::v(self.g.system().weight(s) as i32)
    }

    pub fn t(&self, w: usize) -> HeckeElt {
        HeckeElt::basis_elt(Basis::T, w)
    }

    /// `T_s h` or `h T_s`.
    pub fn mul_gen(&self, s: Gen, h: &HeckeElt, side: Side) -> Result<HeckeElt> {
        debug_assert_eq!(h.basis(), Basis::T);
        let mut out = HeckeElt::zero(Basis::T);
        for (w, a) in h.iter() {
            let sw = self.g.mul_gen(w, s, side).ok_or(Error::BallExceeded)?;
            out.add_term(sw, a);
            let down = match side {
                Side::Left => self.g.is_left_descent(w, s),
                Side::Right => self.g.is_right_descent(w, s),
            };
            if down {
                out.add_term_mul(w, a, &self.xi[s as usize]);
            }
        }
        Ok(out)
    }

    /// `h T_y`.
    pub fn mul_right_basis(&self, h: &HeckeElt, y: usize) -> Result<HeckeElt> {
        let mut out = h.clone();
        for &s in self.g.word(y) {
            out = self.mul_gen(s, &out, Side::Right)?;
        }
        Ok(out)
    }

    /// `T_x T_y = sum_z f_{x,y,z} T_z`.
    pub fn f_struct(&self, x: usize, y: usize) -> Result<HeckeElt> {
        self.mul_right_basis(&self.t(x), y)
    }

    pub fn mul(&self, h1: &HeckeElt, h2: &HeckeElt) -> Result<HeckeElt> {
        let mut out = HeckeElt::zero(Basis::T);
        for (y, b) in h2.iter() {
            out.add_scaled(&self.mul_right_basis(h1, y)?, b);
        }
        Ok(out)
    }

    /// `T_w^-1 = T_{s_q}^-1 ... T_{s_1}^-1` with `T_s^-1 = T_s - (v_s - v_s^-1)`.
    pub fn inverse_t(&self, w: usize) -> Result<HeckeElt> {
        let mut out = self.t(0);
        for &s in self.g.word(w) {
            let mut next = self.mul_gen(s, &out, Side::Left)?;
            next.add_scaled(&out, &-&self.xi[s as usize]);
            out = next;
        }
        Ok(out)
    }

    /// `h T_w^-1`.
    pub fn mul_right_inverse(&self, h: &HeckeElt, w: usize) -> Result<HeckeElt> {
        let mut out = h.clone();
        for &s in self.g.word(w).iter().rev() {
            let mut next = self.mul_gen(s, &out, Side::Right)?;
            next.add_scaled(&out, &-&self.xi[s as usize]);
            out = next;
        }
        Ok(out)
    }

    /// The bar involution: semilinear, `bar(T_w) = sum_y bar(r_{y,w}) T_y`.
    pub fn bar(&self, h: &HeckeElt) -> HeckeElt {
        let mut out = HeckeElt::zero(Basis::T);
        for (w, a) in h.iter() {
            let ab = a.bar();
            for y in self.bruhat.lower(w).ones() {
                out.add_term_mul(y, &ab, &self.r(y, w).bar());
            }
        }
        out
    }

    /// The antiautomorphism `T_w -> T_{w^-1}`.
    pub fn flip(&self, h: &HeckeElt) -> HeckeElt {
        h.map_support(|w| self.g.inverse(w))
    }

    /// The linear involution `T_w -> sgn(w) T_{w^-1}^-1 = sum_y sgn(y) r_{y,w} T_y`.
    pub fn dagger(&self, h: &HeckeElt) -> HeckeElt {
        let mut out = HeckeElt::zero(Basis::T);
        for (w, a) in h.iter() {
            for y in self.bruhat.lower(w).ones() {
                let r = self.r(y, w);
                let r = if self.g.sign(y) < 0 { -r } else { r.clone() };
                out.add_term_mul(y, a, &r);
            }
        }
        out
    }

    /// `tau(T_w) = delta_{w,1}`.
    pub fn tau(&self, h: &HeckeElt) -> LaurentPoly {
        h.coeff(0).clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::CoxeterSystem;
    use proptest::prelude::*;

    fn hecke(label: &str, weights: &[u32]) -> Hecke {
        Hecke::new(GroupTable::full(&CoxeterSystem::from_type(label, weights).unwrap()).unwrap())
    }

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    fn random_elt(h: &Hecke, seed: &[(usize, i64, i32)]) -> HeckeElt {
        HeckeElt::from_coords(
            Basis::T,
            seed.iter().map(|&(w, c, e)| (w % h.table().size(), LaurentPoly::monomial(c, e))),
        )
    }

    #[test]
    fn generator_products() {
        let h = hecke("B2", &[1, 2]);
        let s = h.table().gen(1);
        assert_eq!(h.mul_gen(1, &h.t(0), Side::Left).unwrap(), h.t(s));
        let ss = h.f_struct(s, s).unwrap();
        assert_eq!(ss, HeckeElt::from_coords(Basis::T, [(0, LaurentPoly::one()), (s, p("v^2 - v^-2"))]));
        let inv = h.inverse_t(s).unwrap();
        assert_eq!(inv, HeckeElt::from_coords(Basis::T, [(s, LaurentPoly::one()), (0, p("-v^2 + v^-2"))]));
        assert_eq!(h.inverse_t(0).unwrap(), h.t(0));
    }

    #[test]
    fn quadratic_and_braid_relations() {
        for (label, w) in [("B2", vec![1, 2]), ("G2", vec![3, 1]), ("A3", vec![])] {
            let h = hecke(label, &w);
            let g = h.table();
            for s in g.system().gens() {
                // (T_s - v_s)(T_s + v_s^-1) = 0 on every T_w
                let vs = h.vs(s);
                for w in g.elements() {
                    let tw = h.t(w);
                    let a = &h.mul_gen(s, &tw, Side::Left).unwrap() + &tw.scale(&vs.bar());
                    let b = &h.mul_gen(s, &a, Side::Left).unwrap() - &a.scale(&vs);
                    assert!(b.is_zero());
                }
                for t in g.system().gens().filter(|&t| t != s) {
                    let m = g.system().m(s, t).unwrap() as usize;
                    let alt = |a: Gen, b: Gen| -> Vec<Gen> { (0..m).map(|i| if i % 2 == 0 { a } else { b }).collect() };
                    for w in g.elements() {
                        let mut x = h.t(w);
                        let mut y = h.t(w);
                        for c in alt(s, t) {
                            x = h.mul_gen(c, &x, Side::Left).unwrap();
                        }
                        for c in alt(t, s) {
                            y = h.mul_gen(c, &y, Side::Left).unwrap();
                        }
                        assert_eq!(x, y);
                    }
                }
            }
        }
    }

    #[test]
    fn inverses() {
        let h = hecke("B2", &[1, 2]);
        for w in h.table().elements() {
            let prod = h.mul(&h.t(w), &h.inverse_t(w).unwrap()).unwrap();
            assert_eq!(prod, h.t(0));
        }
    }

    #[test]
    fn r_polynomials() {
        let h = hecke("B2", &[1, 2]);
        let g = h.table();
        for s in g.system().gens() {
            assert_eq!(h.r(0, g.gen(s)), h.xi(s));
        }
        for w in g.elements() {
            assert!(h.r(w, w).is_one());
            for y in g.elements() {
                let r = h.r(y, w);
                assert_eq!(!r.is_zero(), h.bruhat().leq(y, w));
                if r.is_zero() {
                    continue;
                }
                let sgn = g.sign(y) * g.sign(w);
                assert_eq!(r.bar(), if sgn > 0 { r.clone() } else { -r });
                assert_eq!(h.r(g.inverse(y), g.inverse(w)), r);
                let d = g.weight(w) as i32 - g.weight(y) as i32;
                assert_eq!(r.leading(), Some((d, &crate::laurent::Int::one())));
                assert_eq!(r.trailing().unwrap().0, -d);
                assert_eq!(r.trailing().unwrap().1.to_i64(), Some(sgn));
                assert!(r.terms().iter().all(|(e, _)| (e - d).rem_euclid(2) == 0));
            }
        }
    }

    #[test]
    fn r_inverse_relation() {
        for (label, w) in [("A2", vec![]), ("B2", vec![1, 2]), ("G2", vec![1, 3])] {
            let h = hecke(label, &w);
            let g = h.table();
            for x in g.elements() {
                for z in g.elements() {
                    let mut acc = LaurentPoly::zero();
                    for y in g.elements() {
                        acc.add_mul(&h.r(x, y).bar(), h.r(y, z));
                    }
                    assert_eq!(acc.is_one(), x == z);
                    assert!(x == z || acc.is_zero());
                }
            }
        }
    }

    #[test]
    fn bar_examples() {
        let h = hecke("B2", &[1, 2]);
        let s = h.table().gen(0);
        let cs = HeckeElt::from_coords(Basis::T, [(s, LaurentPoly::one()), (0, LaurentPoly::v(-1))]);
        assert_eq!(h.bar(&cs), cs);
        assert_eq!(h.bar(&h.t(0)), h.t(0));
        let d = h.dagger(&h.t(s));
        assert_eq!(d, HeckeElt::from_coords(Basis::T, [(s, LaurentPoly::monomial(-1, 0)), (0, p("v - v^-1"))]));
    }

    #[test]
    fn ball_products() {
        let g = GroupTable::enumerate(&CoxeterSystem::dihedral(None, 1, 2).unwrap(), crate::coxeter::Extent::Ball(4)).unwrap();
        let h = Hecke::new(g);
        let g = h.table();
        let x = g.lookup(&[0, 1]).unwrap();
        let y = g.lookup(&[0, 1]).unwrap();
        assert_eq!(h.f_struct(x, y).unwrap(), h.t(g.lookup(&[0, 1, 0, 1]).unwrap()));
        let top = g.lookup(&[0, 1, 0, 1]).unwrap();
        assert!(matches!(h.f_struct(top, g.gen(0)), Err(Error::BallExceeded)));
    }

    #[test]
    fn trace_bounds() {
        let h = hecke("B2", &[1, 2]);
        let g = h.table();
        for x in g.elements() {
            for y in g.elements() {
                let txy = h.f_struct(x, y).unwrap();
                assert_eq!(h.tau(&txy).is_one(), g.mul(x, y) == Some(0));
                for z in g.elements() {
                    let t = h.tau(&h.mul_right_basis(&txy, z).unwrap());
                    let m = g.weight(x).min(g.weight(y)).min(g.weight(z)) as i32;
                    assert!(t.all_below(m + 1));
                }
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn algebra_laws(
            a in prop::collection::vec((0usize..8, -3i64..4, -3i32..4), 0..4),
            b in prop::collection::vec((0usize..8, -3i64..4, -3i32..4), 0..4),
            c in prop::collection::vec((0usize..8, -3i64..4, -3i32..4), 0..4),
        ) {
            let h = hecke("B2", &[1, 2]);
            let (a, b, c) = (random_elt(&h, &a), random_elt(&h, &b), random_elt(&h, &c));
            let ab = h.mul(&a, &b).unwrap();
            prop_assert_eq!(h.mul(&ab, &c).unwrap(), h.mul(&a, &h.mul(&b, &c).unwrap()).unwrap());
            prop_assert_eq!(h.tau(&ab), h.tau(&h.mul(&b, &a).unwrap()));
            prop_assert_eq!(h.bar(&h.bar(&a)), a.clone());
            prop_assert_eq!(h.dagger(&h.dagger(&a)), a.clone());
            prop_assert_eq!(h.bar(&ab), h.mul(&h.bar(&a), &h.bar(&b)).unwrap());
            prop_assert_eq!(h.dagger(&ab), h.mul(&h.dagger(&a), &h.dagger(&b)).unwrap());
            prop_assert_eq!(h.flip(&ab), h.mul(&h.flip(&b), &h.flip(&a)).unwrap());
            prop_assert_eq!(h.bar(&h.flip(&a)), h.flip(&h.bar(&a)));
            prop_assert_eq!(h.bar(&h.dagger(&a)), h.dagger(&h.bar(&a)));
        }
    }
}
