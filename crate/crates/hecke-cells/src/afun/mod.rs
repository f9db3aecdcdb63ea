//! Structure constants `h_{x,y,z}`, the bound `N`, the a-function, `gamma`, `Delta`, `n_z` and `D`.

mod conjectures;

pub use conjectures::{check_conjectures, CheckScope, ConjectureReport, ConjectureResult, P15Mode};

use std::collections::HashMap;

use rayon::prelude::*;

use crate::cells::{CellPartition, Flavor};
use crate::coxeter::{GroupTable, Side};
use crate::dihedral;
use crate::error::{Error, Result};
use crate::hecke::{Basis, HeckeElt};
use crate::kl::KLTable;
use crate::laurent::{Int, LaurentPoly};
use crate::report::{first_failure, Check};

/// `c_x c_y` computed as `c_s (c_{x'} c_y) - sum_z mu^s_{z,x'} c_z c_y` with `x = s x' > x'`.
/// Entries are `None` where some intermediate product leaves the ball.
fn h_column(kl: &KLTable, y: usize) -> Vec<Option<HeckeElt>> {
    let g = kl.table();
    let mut col: Vec<Option<HeckeElt>> = Vec::with_capacity(g.size());
    col.push(Some(HeckeElt::basis_elt(Basis::C, y)));
    for x in 1..g.size() {
        let s = g.first_left_descent(x).expect("x != 1 has a left descent");
        let xp = g.lmul(x, s).expect("sx < x");
        debug_assert!(xp < x);
        let val = (|| {
            let mut out = kl.cs_times(s, col[xp].as_ref()?, Side::Left).ok()?;
            for (z, m) in kl.mu_column(s, xp) {
                out.add_scaled(col[*z].as_ref()?, &-m);
            }
            Some(out)
        })();
        col.push(val);
    }
    col
}

/// `c_x c_y` through the T-basis: multiply there, then convert with `q'`.
pub fn h_struct_via_t(kl: &KLTable, x: usize, y: usize) -> Result<HeckeElt> {
    let prod = kl.hecke().mul(&kl.c_element(x), &kl.c_element(y))?;
    Ok(kl.to_c(&prod))
}

/// Everything derived from the structure constants of an enumerated group or ball.
///
/// On a ball, `a` is the maximum over the products that could be formed inside it, hence
/// a lower bound; it becomes exact only when certified against the infinite dihedral closed form.
pub struct AData {
    kl: KLTable,
    cells: CellPartition,
    h: Vec<Vec<Option<HeckeElt>>>,
    a: Vec<Option<i32>>,
    certified: bool,
    gamma: HashMap<(usize, usize, usize), i64>,
    delta: Vec<i32>,
    nz: Vec<Int>,
    dset: Vec<usize>,
}

impl AData {
    pub fn new(kl: KLTable) -> Self {
        let cells = CellPartition::new(&kl);
        let g = kl.table();
        let n = g.size();
        let mut cols: Vec<Vec<Option<HeckeElt>>> = (0..n).into_par_iter().map(|y| h_column(&kl, y)).collect();
        let h: Vec<Vec<Option<HeckeElt>>> =
            (0..n).map(|x| cols.iter_mut().map(|c| c[x].take()).collect()).collect();

        let mut a: Vec<Option<i32>> = vec![None; n];
        for e in h.iter().flatten().flatten() {
            for (z, p) in e.iter() {
                let d = p.max_deg().expect("stored coefficients are nonzero");
                a[z] = Some(a[z].map_or(d, |c| c.max(d)));
            }
        }
        let certified = g.is_finite()
            || (g.rank() == 2
                && g.system().m(0, 1).is_none()
                && g.elements().all(|z| a[z] == Some(dihedral::a_infinite(g, z))));

        let mut gamma = HashMap::new();
        for (x, row) in h.iter().enumerate() {
            for (y, e) in row.iter().enumerate() {
                for (z, p) in e.iter().flat_map(|e| e.iter()) {
                    let c = p.coeff(a[z].expect("z occurs"));
                    if !c.is_zero() {
                        gamma.insert((x, y, g.inverse(z)), c.to_i64().expect("gamma fits in i64"));
                    }
                }
            }
        }

        let (delta, nz): (Vec<i32>, Vec<Int>) = g.elements().map(|z| kl.delta_n(z)).unzip();
        let dset = g.elements().filter(|&z| a[z] == Some(delta[z])).collect();
        AData { kl, cells, h, a, certified, gamma, delta, nz, dset }
    }

    pub fn build(g: GroupTable) -> Self {
        Self::new(KLTable::build(g))
    }

    pub fn kl(&self) -> &KLTable {
        &self.kl
    }

    pub fn table(&self) -> &GroupTable {
        self.kl.table()
    }

    pub fn cells(&self) -> &CellPartition {
        &self.cells
    }

    /// `c_x c_y` in the c-basis.
    pub fn h(&self, x: usize, y: usize) -> Result<&HeckeElt> {
        self.h[x][y].as_ref().ok_or(Error::BallExceeded)
    }

    /// `c_x c_y`, or `None` when it cannot be formed inside the ball.
    pub fn h_opt(&self, x: usize, y: usize) -> Option<&HeckeElt> {
        self.h[x][y].as_ref()
    }

    pub fn h_coeff(&self, x: usize, y: usize, z: usize) -> Result<&LaurentPoly> {
        Ok(self.h(x, y)?.coeff(z))
    }

    /// Whether `a` is exact on every element of the table.
    pub fn is_certified(&self) -> bool {
        self.certified
    }

    pub fn a(&self, z: usize) -> Result<i32> {
        if !self.certified {
            return Err(Error::UncertifiedBall);
        }
        Ok(self.a[z].expect("certified tables define a everywhere"))
    }

    /// Largest degree seen in the computed `h_{x,y,z}`.
    pub fn a_lower(&self, z: usize) -> Option<i32> {
        self.a[z]
    }

    /// `gamma_{x,y,z}`: the coefficient of `v^{a(z)}` in `h_{x,y,z^-1}`.
    pub fn gamma(&self, x: usize, y: usize, z: usize) -> i64 {
        self.gamma.get(&(x, y, z)).copied().unwrap_or(0)
    }

    /// Nonzero `gamma_{x,y,z}`, sorted.
    pub fn gamma_entries(&self) -> Vec<((usize, usize, usize), i64)> {
        let mut v: Vec<_> = self.gamma.iter().map(|(k, c)| (*k, *c)).collect();
        v.sort_unstable();
        v
    }

    pub fn delta(&self, z: usize) -> i32 {
        self.delta[z]
    }

    pub fn n(&self, z: usize) -> &Int {
        &self.nz[z]
    }

    /// `D = {z : a(z) = Delta(z)}`, increasing.
    pub fn dset(&self) -> &[usize] {
        &self.dset
    }

    pub fn is_duflo(&self, z: usize) -> bool {
        self.dset.binary_search(&z).is_ok()
    }

    /// Smallest `N` with `v^-N f_{x,y,z}` in `A_{<=0}` over the products formed in the table.
    pub fn bound(&self) -> i32 {
        let g = self.table();
        let h = self.kl.hecke();
        g.elements()
            .into_par_iter()
            .map(|x| {
                g.elements()
                    .filter_map(|y| h.f_struct(x, y).ok())
                    .flat_map(|f| f.iter().map(|(_, p)| p.max_deg().unwrap()).collect::<Vec<_>>())
                    .max()
                    .unwrap_or(0)
            })
            .max()
            .unwrap_or(0)
    }
}

/// The structural identities of the a-function, checked on the computed data.
pub fn afun_checks(ad: &AData) -> Result<Vec<Check>> {
    let g = ad.table();
    let kl = ad.kl();
    let cells = ad.cells();
    let a = |z: usize| ad.a_lower(z).unwrap_or(i32::MIN);
    let pairs = || g.elements().flat_map(move |x| g.elements().map(move |y| (x, y)));
    let words = |v: &[usize]| v.iter().map(|&x| g.word_string(x)).collect::<Vec<_>>().join(", ");
    let bound = ad.bound();
    let mut out = Vec::new();

    out.push(Check::from_failure(
        "h_{1,y,z} = delta_{y,z}",
        first_failure(g.elements(), |&y| {
            let e = ad.h_opt(0, y)?;
            (*e != HeckeElt::basis_elt(Basis::C, y)).then(|| words(&[y]))
        }),
    ));
    out.push(Check::from_failure(
        "h_{s,z,z} = v_s + v_s^-1 for sz < z",
        first_failure(g.system().gens().flat_map(|s| g.elements().map(move |z| (s, z))), |&(s, z)| {
            if !g.is_left_descent(z, s) {
                return None;
            }
            let vs = kl.hecke().vs(s);
            (*ad.h_opt(g.gen(s), z)?.coeff(z) != &vs + &vs.bar()).then(|| words(&[g.gen(s), z]))
        }),
    ));
    out.push(Check::from_failure(
        "h_{x,y,z} != 0 implies z <=_R x and z <=_L y",
        first_failure(pairs(), |&(x, y)| {
            let e = ad.h_opt(x, y)?;
            e.support()
                .find(|&z| !cells.leq(Flavor::Right, z, x) || !cells.leq(Flavor::Left, z, y))
                .map(|z| words(&[x, y, z]))
        }),
    ));
    out.push(Check::from_failure(
        "h_{x,y,z} = h_{y^-1,x^-1,z^-1}",
        first_failure(pairs(), |&(x, y)| {
            let (e, f) = (ad.h_opt(x, y)?, ad.h_opt(g.inverse(y), g.inverse(x))?);
            (e.map_support(|z| g.inverse(z)) != *f).then(|| words(&[x, y]))
        }),
    ));
    out.push(Check::from_failure(
        "0 <= a(z) <= N",
        first_failure(g.elements(), |&z| {
            (!(0..=bound).contains(&a(z))).then(|| format!("z={}, a={:?}, N={bound}", g.word_string(z), ad.a_lower(z)))
        }),
    ));
    out.push(Check::from_failure("a(1) = 0", (a(0) != 0).then(|| format!("a(1)={}", a(0)))));
    let lmin = g.system().weights().iter().copied().min().unwrap_or(0) as i32;
    out.push(Check::from_failure(
        "a(z) >= min L(s) for z != 1",
        first_failure(1..g.size(), |&z| (a(z) < lmin).then(|| words(&[z]))),
    ));
    if g.is_finite() {
        let w0 = g.longest()?;
        let lw0 = g.weight(w0) as i32;
        out.push(Check::from_failure(
            "a(w0) = L(w0) and a(w) < L(w0) otherwise",
            first_failure(g.elements(), |&w| ((w == w0) != (a(w) == lw0) || a(w) > lw0).then(|| words(&[w]))),
        ));
        out.push(Check::from_failure("N = L(w0)", (bound != lw0).then(|| format!("N={bound}, L(w0)={lw0}"))));
    }
    out.push(Check::from_failure(
        "a(z) = a(z^-1)",
        first_failure(g.elements(), |&z| (a(z) != a(g.inverse(z))).then(|| words(&[z]))),
    ));
    out.push(Check::from_failure(
        "gamma_{x,y,z} = gamma_{y^-1,x^-1,z^-1}",
        first_failure(ad.gamma_entries(), |&((x, y, z), c)| {
            ad.h_opt(g.inverse(y), g.inverse(x))?;
            (ad.gamma(g.inverse(y), g.inverse(x), g.inverse(z)) != c).then(|| words(&[x, y, z]))
        }),
    ));
    out.push(Check::from_failure(
        "f'_{x,y,z} has degree <= a(z) with coefficient gamma_{x,y,z^-1}",
        g.elements().into_par_iter().find_map_first(|x| {
            g.elements().find_map(|y| {
                let f = kl.hecke().f_struct(x, y).ok()?;
                let fp = kl.to_c(&f);
                g.elements().find_map(|z| {
                    let p = fp.coeff(z);
                    let bad = p.max_deg().is_some_and(|d| d > a(z))
                        || p.coeff(a(z)).to_i64() != Some(ad.gamma(x, y, g.inverse(z)));
                    bad.then(|| words(&[x, y, z]))
                })
            })
        }),
    ));
    out.push(Check::from_failure(
        "0 < Delta(z) <= L(z) for z != 1",
        first_failure(1..g.size(), |&z| {
            let d = ad.delta(z);
            (d <= 0 || d > g.weight(z) as i32).then(|| format!("z={}, Delta={d}", g.word_string(z)))
        }),
    ));
    out.push(Check::from_failure(
        "D is closed under inversion",
        first_failure(ad.dset().to_vec(), |&d| (!ad.is_duflo(g.inverse(d))).then(|| words(&[d]))),
    ));
    if g.is_finite() {
        out.push(Check::from_failure(
            "sum_{d in D} gamma_{y^-1,y,d} n_d = 1",
            first_failure(g.elements(), |&y| {
                let yi = g.inverse(y);
                let s: i64 = ad.dset().iter().map(|&d| ad.gamma(yi, y, d) * ad.n(d).to_i64().unwrap()).sum();
                (s != 1).then(|| format!("y={}, sum={s}", g.word_string(y)))
            }),
        ));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::{CoxeterSystem, Extent};

    fn data(label: &str, weights: &[u32]) -> AData {
        AData::build(GroupTable::full(&CoxeterSystem::from_type(label, weights).unwrap()).unwrap())
    }

    fn by_word(g: &GroupTable, w: &str) -> usize {
        g.lookup(&g.system().parse_word(w).unwrap()).unwrap()
    }

    #[test]
    fn b2_unequal_values() {
        let ad = data("B2", &[1, 2]);
        let g = ad.table();
        let a: Vec<i32> = ["e", "1", "2", "12", "21", "121", "212", "1212"]
            .iter()
            .map(|w| ad.a(by_word(g, w)).unwrap())
            .collect();
        assert_eq!(a, vec![0, 1, 2, 2, 2, 2, 3, 6]);
        assert_eq!(ad.bound(), 6);
        let z = by_word(g, "212");
        assert_eq!(ad.n(z).to_i64(), Some(-1));
        assert_eq!(ad.gamma(z, z, z), -1);
        let mut d: Vec<String> = ad.dset().iter().map(|&x| g.word_string(x)).collect();
        d.sort();
        assert_eq!(d, ["1", "121", "1212", "2", "212", "e"]);
    }

    #[test]
    fn identities_hold() {
        for (t, w) in [("A2", vec![1, 1]), ("B2", vec![1, 2]), ("G2", vec![3, 1]), ("B3", vec![2, 1])] {
            let ad = data(t, &w);
            for c in afun_checks(&ad).unwrap() {
                assert!(c.pass, "{t} {w:?}: {}", c.line());
            }
        }
    }

    #[test]
    fn t_route_agrees() {
        for (t, w) in [("B2", vec![1, 2]), ("G2", vec![2, 1]), ("A3", vec![1, 1, 1])] {
            let ad = data(t, &w);
            let g = ad.table();
            for x in g.elements() {
                for y in g.elements() {
                    assert_eq!(ad.h(x, y).unwrap(), &h_struct_via_t(ad.kl(), x, y).unwrap());
                }
            }
        }
    }

    #[test]
    fn infinite_dihedral_ball() {
        let s = CoxeterSystem::dihedral(None, 1, 2).unwrap();
        let ad = AData::build(GroupTable::enumerate(&s, Extent::Ball(12)).unwrap());
        assert!(ad.is_certified());
        let g = ad.table();
        let mut d: Vec<String> = ad.dset().iter().map(|&x| g.word_string(x)).collect();
        d.sort();
        assert_eq!(d, ["1", "121", "2", "e"]);
        let x = by_word(g, "12");
        for k in 1..=5 {
            let y = dihedral::elt(g, 1, 2 * k).unwrap();
            let z = dihedral::elt(g, 0, 2 * k + 1).unwrap();
            let mut want = HeckeElt::zero(Basis::C);
            want.add_term(z, &(&LaurentPoly::v(2) + &LaurentPoly::v(-2)));
            assert_eq!(ad.h(x, y).unwrap(), &want);
        }
        for c in afun_checks(&ad).unwrap() {
            assert!(c.pass, "{}", c.line());
        }
    }

    #[test]
    fn uncertified_ball() {
        let s = CoxeterSystem::from_matrix(vec![vec![1, 3, 3], vec![3, 1, 3], vec![3, 3, 1]], vec![1, 1, 1]).unwrap();
        let ad = AData::build(GroupTable::enumerate(&s, Extent::Ball(3)).unwrap());
        assert!(matches!(ad.a(0), Err(Error::UncertifiedBall)));
    }
}
