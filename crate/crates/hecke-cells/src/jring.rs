//! The ring `J` with basis `t_w`, its unit and blocks, the map `phi` and the module action.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::afun::{AData, ConjectureReport};
use crate::cells::Flavor;
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::report::{first_failure, Check};

/// Element of `J`: integer coordinates on the `t_w`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct JElt {
    pub coords: BTreeMap<usize, i64>,
}

impl JElt {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(w: usize) -> Self {
        JElt { coords: BTreeMap::from([(w, 1)]) }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coeff(&self, w: usize) -> i64 {
        self.coords.get(&w).copied().unwrap_or(0)
    }

    pub fn add_term(&mut self, w: usize, c: i64) {
        let e = self.coords.entry(w).or_insert(0);
        *e += c;
        if *e == 0 {
            self.coords.remove(&w);
        }
    }
}

/// Element of `A (x) J`: Laurent coordinates on the `t_w`.
pub type JaElt = BTreeMap<usize, LaurentPoly>;

fn ja_add(out: &mut JaElt, w: usize, a: &LaurentPoly) {
    let e = out.entry(w).or_default();
    *e += a;
    if e.is_zero() {
        out.remove(&w);
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Block {
    /// A two-sided cell.
    pub cell: Vec<usize>,
    /// `sum_{d in D, d in cell} n_d t_d`.
    pub unit: JElt,
}

/// `J` on the data of `ad`; refused unless P1-P15 passed there.
pub struct JRing<'a> {
    ad: &'a AData,
    /// `t_x t_y = sum_z prod[(x,y)][z] t_z`.
    prod: BTreeMap<(usize, usize), Vec<(usize, i64)>>,
    nhat: Vec<i64>,
}

impl<'a> JRing<'a> {
    pub fn new(ad: &'a AData, report: &ConjectureReport) -> Result<Self> {
        if !report.all_pass() {
            return Err(Error::ConjecturesUnverified(report.failures().join(", ")));
        }
        let g = ad.table();
        let mut prod: BTreeMap<(usize, usize), Vec<(usize, i64)>> = BTreeMap::new();
        for ((x, y, z), c) in ad.gamma_entries() {
            prod.entry((x, y)).or_default().push((g.inverse(z), c));
        }
        let cells = ad.cells();
        let nhat = g
            .elements()
            .map(|z| {
                let zi = g.inverse(z);
                let ds: Vec<usize> =
                    ad.dset().iter().copied().filter(|&d| cells.equiv(Flavor::Left, d, zi)).collect();
                match ds.as_slice() {
                    [d] => ad.n(*d).to_i64().ok_or_else(|| Error::ConjecturesUnverified("n_d out of range".into())),
                    _ if g.on_frontier(zi) => Ok(0),
                    _ => Err(Error::ConjecturesUnverified(format!("no unique d ~_L {}", g.word_string(zi)))),
                }
            })
            .collect::<Result<_>>()?;
        Ok(JRing { ad, prod, nhat })
    }

    pub fn data(&self) -> &AData {
        self.ad
    }

    /// `n^_z = n_d` for the `d in D` with `d ~_L z^-1`.
    pub fn nhat(&self, z: usize) -> i64 {
        self.nhat[z]
    }

    /// `t_x t_y`, or `BallExceeded` when `c_x c_y` was not formed in the ball.
    pub fn t_mul(&self, x: usize, y: usize) -> Result<JElt> {
        self.ad.h(x, y)?;
        let mut out = JElt::zero();
        for &(z, c) in self.prod.get(&(x, y)).map_or(&[][..], |v| v.as_slice()) {
            out.add_term(z, c);
        }
        Ok(out)
    }

    pub fn mul(&self, a: &JElt, b: &JElt) -> Result<JElt> {
        let mut out = JElt::zero();
        for (&x, &c) in &a.coords {
            for (&y, &d) in &b.coords {
                for (z, e) in self.t_mul(x, y)?.coords {
                    out.add_term(z, c * d * e);
                }
            }
        }
        Ok(out)
    }

    pub fn ja_mul(&self, a: &JaElt, b: &JaElt) -> Result<JaElt> {
        let mut out = JaElt::new();
        for (&x, p) in a {
            for (&y, q) in b {
                let pq = p * q;
                for (z, e) in self.t_mul(x, y)?.coords {
                    ja_add(&mut out, z, &pq.scale(&e.into()));
                }
            }
        }
        Ok(out)
    }

    /// `sum_{d in D} n_d t_d`.
    pub fn unit(&self) -> JElt {
        let mut out = JElt::zero();
        for &d in self.ad.dset() {
            out.add_term(d, self.ad.n(d).to_i64().expect("n_d = +-1"));
        }
        out
    }

    /// One block per two-sided cell.
    pub fn blocks(&self) -> Vec<Block> {
        self.ad
            .cells()
            .cells(Flavor::TwoSided)
            .iter()
            .map(|cell| {
                let mut unit = JElt::zero();
                for &d in cell.iter().filter(|&&d| self.ad.is_duflo(d)) {
                    unit.add_term(d, self.ad.n(d).to_i64().expect("n_d = +-1"));
                }
                Block { cell: cell.clone(), unit }
            })
            .collect()
    }

    /// `phi(c_x^dagger) = sum_{z, d in D, a(d) = a(z)} h_{x,d,z} n^_z t_z`.
    pub fn phi(&self, x: usize) -> Result<JaElt> {
        let g = self.ad.table();
        if !g.is_finite() {
            return Err(Error::InfiniteGroup);
        }
        let mut out = JaElt::new();
        for &d in self.ad.dset() {
            let ad = self.ad.a(d)?;
            for (z, p) in self.ad.h(x, d)?.iter() {
                if self.ad.a(z)? == ad {
                    ja_add(&mut out, z, &p.scale(&self.nhat[z].into()));
                }
            }
        }
        Ok(out)
    }

    /// `phi` of `sum_w coords[w] c_w^dagger`.
    pub fn phi_of(&self, coords: &BTreeMap<usize, LaurentPoly>) -> Result<JaElt> {
        let mut out = JaElt::new();
        for (&w, a) in coords {
            for (z, p) in self.phi(w)? {
                ja_add(&mut out, z, &(a * &p));
            }
        }
        Ok(out)
    }
}

/// The ring axioms and the properties of `phi` on a finite group.
pub fn jring_checks(j: &JRing) -> Result<Vec<Check>> {
    let ad = j.data();
    let g = ad.table();
    if !g.is_finite() {
        return Err(Error::InfiniteGroup);
    }
    let cells = ad.cells();
    let words = |v: &[usize]| v.iter().map(|&x| g.word_string(x)).collect::<Vec<_>>().join(", ");
    let pairs: Vec<(usize, usize)> = g.elements().flat_map(|x| g.elements().map(move |y| (x, y))).collect();
    let unit = j.unit();
    let mut out = Vec::new();

    out.push(Check::from_failure(
        "unit * t_x = t_x = t_x * unit",
        first_failure(g.elements(), |&x| {
            let t = JElt::basis(x);
            (j.mul(&unit, &t).ok()? != t || j.mul(&t, &unit).ok()? != t).then(|| words(&[x]))
        }),
    ));
    let assoc = (0..g.size()).into_par_iter().find_map_first(|x| {
        for y in g.elements() {
            let xy = j.t_mul(x, y).ok()?;
            for u in g.elements() {
                let l = j.mul(&xy, &JElt::basis(u)).ok()?;
                let r = j.mul(&JElt::basis(x), &j.t_mul(y, u).ok()?).ok()?;
                if l != r {
                    return Some(words(&[x, y, u]));
                }
            }
        }
        None
    });
    out.push(Check::from_failure("(t_x t_y) t_u = t_x (t_y t_u)", assoc));
    out.push(Check::from_failure(
        "t_x t_y = 0 across two-sided cells",
        first_failure(pairs.iter(), |&&(x, y)| {
            (!cells.equiv(Flavor::TwoSided, x, y) && !j.t_mul(x, y).ok()?.is_zero()).then(|| words(&[x, y]))
        }),
    ));
    let blocks = j.blocks();
    out.push(Check::from_failure(
        "block units act as units on their blocks",
        first_failure(blocks.iter(), |b| {
            b.cell
                .iter()
                .find(|&&x| {
                    let t = JElt::basis(x);
                    j.mul(&b.unit, &t).ok() != Some(t.clone()) || j.mul(&t, &b.unit).ok() != Some(t)
                })
                .map(|&x| words(&[x]))
        }),
    ));
    out.push(Check::from_failure(
        "span of a left cell is a left ideal",
        first_failure(pairs.iter(), |&&(x, y)| {
            j.t_mul(x, y)
                .ok()?
                .coords
                .keys()
                .find(|&&z| !cells.equiv(Flavor::Left, z, y))
                .map(|&z| words(&[x, y, z]))
        }),
    ));

    let phis: Vec<JaElt> = g.elements().map(|x| j.phi(x)).collect::<Result<_>>()?;
    let unit_a: JaElt = unit.coords.iter().map(|(&w, &c)| (w, LaurentPoly::monomial(c, 0))).collect();
    out.push(Check::from_failure(
        "phi(1) = unit of J",
        (phis[0] != unit_a).then(|| "phi(c_1) differs from the unit".to_string()),
    ));
    out.push(Check::from_failure(
        "coefficients of phi(c_x^dagger) are bar-invariant",
        first_failure(g.elements(), |&x| phis[x].values().any(|p| !p.is_bar_invariant()).then(|| words(&[x]))),
    ));
    let mult = pairs.par_iter().find_map_first(|&(x, y)| {
        let lhs = ad.h(x, y).ok()?.iter().fold(JaElt::new(), |mut acc, (w, p)| {
            for (z, q) in &phis[w] {
                ja_add(&mut acc, *z, &(p * q));
            }
            acc
        });
        (lhs != j.ja_mul(&phis[x], &phis[y]).ok()?).then(|| words(&[x, y]))
    });
    out.push(Check::from_failure("phi(c_x^dagger c_y^dagger) = phi(c_x^dagger) phi(c_y^dagger)", mult));
    let graded = pairs.par_iter().find_map_first(|&(x, w)| {
        let aw = ad.a(w).ok()?;
        let mut act = JaElt::new();
        for (z, p) in &phis[x] {
            for (u, c) in j.t_mul(*z, w).ok()?.coords {
                ja_add(&mut act, u, &p.scale(&(c * j.nhat(w) * j.nhat(u)).into()));
            }
        }
        let prod = ad.h(x, w).ok()?;
        g.elements()
            .filter(|&u| ad.a(u).is_ok_and(|au| au <= aw))
            .find(|&u| act.get(&u).unwrap_or(&LaurentPoly::zero()) != prod.coeff(u))
            .map(|u| words(&[x, w, u]))
    });
    out.push(Check::from_failure("h c_w^dagger = phi(h) * c_w^dagger mod H_{>=a(w)+1}", graded));
    out.push(Check::from_failure(
        "phi is injective",
        (!phi_injective(&phis, g.size())).then(|| "determinant vanished at the sample point".to_string()),
    ));
    Ok(out)
}

const P: u128 = (1 << 61) - 1;

fn pow_mod(mut b: u128, mut e: u128) -> u128 {
    let mut r = 1;
    b %= P;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % P;
        }
        b = b * b % P;
        e >>= 1;
    }
    r
}

/// The matrix of `phi` has nonzero determinant: it is nonzero after evaluating `v` at a point mod a prime.
fn phi_injective(phis: &[JaElt], n: usize) -> bool {
    let v: u128 = 1_000_003;
    let vinv = pow_mod(v, P - 2);
    let eval = |p: &LaurentPoly| -> u128 {
        p.terms().iter().fold(0, |acc, (e, c)| {
            let base = if *e >= 0 { pow_mod(v, *e as u128) } else { pow_mod(vinv, (-*e) as u128) };
            let c = c.to_i64().expect("small coefficient") as i128;
            let c = c.rem_euclid(P as i128) as u128;
            (acc + c * base % P) % P
        })
    };
    let mut m: Vec<Vec<u128>> =
        phis.iter().map(|row| (0..n).map(|z| row.get(&z).map_or(0, eval)).collect()).collect();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| m[r][col] != 0) else { return false };
        m.swap(col, piv);
        let inv = pow_mod(m[col][col], P - 2);
        for r in col + 1..n {
            let f = m[r][col] * inv % P;
            if f == 0 {
                continue;
            }
            for c in col..n {
                m[r][c] = (m[r][c] + P - f * m[col][c] % P) % P;
            }
        }
    }
    true
}
