//! Direct checks of P1-P15 with structured counterexamples.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use super::AData;
use crate::cells::Flavor;
use crate::coxeter::{parabolic_table, Gen, GroupTable};
use crate::error::{Error, Result};
use crate::kl::KLTable;
use crate::laurent::BiLaurentPoly;

/// How P15 was checked.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum P15Mode {
    /// Over all quadruples `(x, x', w, y)` with `a(w) = a(y)`.
    Literal,
    /// The generator form: `x = s`, `x' = s'` with the descent conditions attached.
    Generator,
}

#[derive(Clone, Copy, Debug)]
pub struct CheckScope {
    /// Largest number of quadruples for the literal P15 check.
    pub p15_cap: u64,
    /// Past the cap, use the generator form instead of failing with `ScopeTooLarge`.
    pub p15_fallback: bool,
}

impl Default for CheckScope {
    fn default() -> Self {
        CheckScope { p15_cap: 5_000_000, p15_fallback: true }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ConjectureResult {
    pub conjecture: String,
    pub status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Value>,
}

impl ConjectureResult {
    fn new(name: &str, failure: Option<Value>) -> Self {
        ConjectureResult {
            conjecture: name.to_string(),
            status: if failure.is_none() { "pass" } else { "fail" },
            counterexample: failure,
        }
    }

    pub fn pass(&self) -> bool {
        self.counterexample.is_none()
    }

    pub fn line(&self) -> String {
        match &self.counterexample {
            None => format!("{}: pass", self.conjecture),
            Some(c) => format!("{}: FAIL {c}", self.conjecture),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ConjectureReport {
    pub results: Vec<ConjectureResult>,
    pub p15_mode: P15Mode,
    /// Number of quadruples `(x, x', w, y)` with `a(w) = a(y)`.
    pub p15_quadruples: u64,
    /// Whether the data come from a ball, where quantifiers run over the products formed in it.
    pub ball: bool,
}

impl ConjectureReport {
    pub fn all_pass(&self) -> bool {
        self.results.iter().all(ConjectureResult::pass)
    }

    pub fn failures(&self) -> Vec<&str> {
        self.results.iter().filter(|r| !r.pass()).map(|r| r.conjecture.as_str()).collect()
    }
}

struct Ctx<'a> {
    ad: &'a AData,
    g: &'a GroupTable,
    a: Vec<i32>,
}

impl Ctx<'_> {
    fn w(&self, x: usize) -> String {
        self.g.word_string(x)
    }

    /// Off the frontier of a ball, where the cell preorders are complete enough to compare.
    fn inner(&self, x: usize) -> bool {
        !self.g.on_frontier(x)
    }

    fn inv(&self, x: usize) -> usize {
        self.g.inverse(x)
    }

    fn gamma_json(&self, x: usize, y: usize, z: usize) -> Value {
        json!({"x": self.w(x), "y": self.w(y), "z": self.w(z), "gamma": self.ad.gamma(x, y, z)})
    }
}

/// P1-P15 on the data of `ad`. On a certified ball, every statement is restricted to the
/// products that can be formed inside the ball, and cell statements to elements off its frontier.
pub fn check_conjectures(ad: &AData, scope: &CheckScope) -> Result<ConjectureReport> {
    if !ad.is_certified() {
        return Err(Error::UncertifiedBall);
    }
    let g = ad.table();
    let a: Vec<i32> = g.elements().map(|z| ad.a(z)).collect::<Result<_>>()?;
    let cx = Ctx { ad, g, a };
    let ball = !g.is_finite();

    let mut by_a: HashMap<i32, u64> = HashMap::new();
    for &v in &cx.a {
        *by_a.entry(v).or_default() += 1;
    }
    let n = g.size() as u64;
    let quadruples = n * n * by_a.values().map(|c| c * c).sum::<u64>();
    let p15_mode = if quadruples <= scope.p15_cap {
        P15Mode::Literal
    } else if scope.p15_fallback {
        P15Mode::Generator
    } else {
        return Err(Error::ScopeTooLarge(format!(
            "P15 needs {quadruples} quadruples, cap is {}",
            scope.p15_cap
        )));
    };

    let results = vec![
        ConjectureResult::new("P1", p1(&cx)),
        ConjectureResult::new("P2", p2(&cx)),
        ConjectureResult::new("P3", p3(&cx)),
        ConjectureResult::new("P4", p4(&cx)),
        ConjectureResult::new("P5", p5(&cx)),
        ConjectureResult::new("P6", p6(&cx)),
        ConjectureResult::new("P7", p7(&cx)),
        ConjectureResult::new("P8", p8(&cx)),
        ConjectureResult::new("P9", same_a_cells(&cx, Flavor::Left)),
        ConjectureResult::new("P10", same_a_cells(&cx, Flavor::Right)),
        ConjectureResult::new("P11", same_a_cells(&cx, Flavor::TwoSided)),
        ConjectureResult::new("P12", p12(&cx)?),
        ConjectureResult::new("P13", p13(&cx)),
        ConjectureResult::new("P14", p14(&cx)),
        ConjectureResult::new(
            "P15",
            match p15_mode {
                P15Mode::Literal => p15_literal(&cx),
                P15Mode::Generator => p15_generator(&cx),
            },
        ),
    ];
    Ok(ConjectureReport { results, p15_mode, p15_quadruples: quadruples, ball })
}

fn p1(cx: &Ctx) -> Option<Value> {
    cx.g.elements().find(|&z| cx.a[z] > cx.ad.delta(z)).map(|z| {
        json!({"z": cx.w(z), "a": cx.a[z], "Delta": cx.ad.delta(z)})
    })
}

fn p2(cx: &Ctx) -> Option<Value> {
    cx.ad
        .gamma_entries()
        .into_iter()
        .find(|&((x, y, d), _)| cx.ad.is_duflo(d) && x != cx.inv(y))
        .map(|((x, y, d), _)| cx.gamma_json(x, y, d))
}

fn p3(cx: &Ctx) -> Option<Value> {
    cx.g.elements().find_map(|y| {
        let yi = cx.inv(y);
        cx.ad.h_opt(yi, y)?;
        let ds: Vec<usize> = cx.ad.dset().iter().copied().filter(|&d| cx.ad.gamma(yi, y, d) != 0).collect();
        (ds.len() != 1).then(|| json!({"y": cx.w(y), "d": ds.iter().map(|&d| cx.w(d)).collect::<Vec<_>>()}))
    })
}

fn p4(cx: &Ctx) -> Option<Value> {
    let cells = cx.ad.cells();
    cx.g.elements().find_map(|z| {
        cx.g.elements()
            .find(|&zp| cells.leq(Flavor::TwoSided, zp, z) && cx.a[zp] < cx.a[z])
            .map(|zp| json!({"z'": cx.w(zp), "z": cx.w(z), "a(z')": cx.a[zp], "a(z)": cx.a[z]}))
    })
}

fn p5(cx: &Ctx) -> Option<Value> {
    cx.g.elements().find_map(|y| {
        let yi = cx.inv(y);
        cx.ad.dset().iter().find_map(|&d| {
            let c = cx.ad.gamma(yi, y, d);
            let n = cx.ad.n(d).to_i64();
            (c != 0 && (Some(c) != n || c.abs() != 1))
                .then(|| json!({"y": cx.w(y), "d": cx.w(d), "gamma": c, "n_d": cx.ad.n(d).to_string()}))
        })
    })
}

fn p6(cx: &Ctx) -> Option<Value> {
    cx.ad.dset().iter().find(|&&d| cx.inv(d) != d).map(|&d| json!({"d": cx.w(d)}))
}

fn p7(cx: &Ctx) -> Option<Value> {
    cx.ad.gamma_entries().into_iter().find_map(|((x, y, z), c)| {
        cx.ad.h_opt(y, z)?;
        let c2 = cx.ad.gamma(y, z, x);
        (c2 != c).then(|| json!({"x": cx.w(x), "y": cx.w(y), "z": cx.w(z), "gamma_xyz": c, "gamma_yzx": c2}))
    })
}

fn p8(cx: &Ctx) -> Option<Value> {
    let cells = cx.ad.cells();
    let left = |u: usize, v: usize| cells.equiv(Flavor::Left, u, cx.inv(v));
    cx.ad
        .gamma_entries()
        .into_iter()
        .filter(|&((x, y, z), _)| [x, y, z].iter().all(|&u| cx.inner(u) && cx.inner(cx.inv(u))))
        .find(|&((x, y, z), _)| !(left(x, y) && left(y, z) && left(z, x)))
        .map(|((x, y, z), _)| cx.gamma_json(x, y, z))
}

/// P9/P10/P11: `z' <= z` with `a(z') = a(z)` forces `z' ~ z`.
fn same_a_cells(cx: &Ctx, f: Flavor) -> Option<Value> {
    let cells = cx.ad.cells();
    cx.g.elements().filter(|&z| cx.inner(z)).find_map(|z| {
        cx.g.elements()
            .filter(|&zp| cx.inner(zp))
            .find(|&zp| cells.leq(f, zp, z) && cx.a[zp] == cx.a[z] && !cells.equiv(f, zp, z))
            .map(|zp| json!({"z'": cx.w(zp), "z": cx.w(z), "preorder": f.name(), "a": cx.a[z]}))
    })
}

/// a-values of every proper standard parabolic subgroup agree with those of `W`.
fn p12(cx: &Ctx) -> Result<Option<Value>> {
    let rank = cx.g.rank();
    for mask in 1..(1u32 << rank) - 1 {
        let gens: Vec<Gen> = (0..rank as Gen).filter(|&s| mask & (1 << s) != 0).collect();
        let par = parabolic_table(cx.g, &gens)?;
        let sub = AData::new(KLTable::build(par.table.clone()));
        if !sub.is_certified() {
            continue;
        }
        for (y, &w) in par.embed.iter().enumerate() {
            let ai = sub.a(y)?;
            if ai != cx.a[w] {
                let names: Vec<&str> = gens.iter().map(|&s| cx.g.system().name(s)).collect();
                return Ok(Some(json!({"I": names, "y": cx.w(w), "a_I": ai, "a": cx.a[w]})));
            }
        }
    }
    Ok(None)
}

fn p13(cx: &Ctx) -> Option<Value> {
    let cells = cx.ad.cells();
    let words = |v: &[usize]| v.iter().map(|&x| cx.w(x)).collect::<Vec<_>>();
    cells.cells(Flavor::Left).iter().filter(|cell| cell.iter().any(|&x| cx.inner(x))).find_map(|cell| {
        let ds: Vec<usize> = cell.iter().copied().filter(|&z| cx.ad.is_duflo(z)).collect();
        if ds.len() != 1 {
            return Some(json!({"cell": words(cell), "d": words(&ds)}));
        }
        let d = ds[0];
        cell.iter()
            .filter(|&&x| cx.inner(x))
            .find(|&&x| cx.ad.h_opt(cx.inv(x), x).is_some() && cx.ad.gamma(cx.inv(x), x, d) == 0)
            .map(|&x| json!({"cell": words(cell), "d": cx.w(d), "x": cx.w(x), "gamma": 0}))
    })
}

fn p14(cx: &Ctx) -> Option<Value> {
    let cells = cx.ad.cells();
    cx.g.elements().find(|&z| !cells.equiv(Flavor::TwoSided, z, cx.inv(z))).map(|z| json!({"z": cx.w(z)}))
}

fn p15_json(cx: &Ctx, x: usize, xp: usize, w: usize, y: usize, l: &BiLaurentPoly, r: &BiLaurentPoly) -> Value {
    json!({"x": cx.w(x), "x'": cx.w(xp), "w": cx.w(w), "y": cx.w(y), "lhs": l.to_string(), "rhs": r.to_string()})
}

/// `sum_{y'} h'_{w,x',y'} h_{x,y',y} = sum_{y'} h_{x,w,y'} h'_{y',x',y}` with `h'` in a second
/// variable `v'`, for all `x, x', w, y` with `a(w) = a(y)`.
fn p15_literal(cx: &Ctx) -> Option<Value> {
    let ad = cx.ad;
    let g = cx.g;
    g.elements().into_par_iter().find_map_first(|x| {
        for xp in g.elements() {
            for w in g.elements() {
                let (Some(wx), Some(xw)) = (ad.h_opt(w, xp), ad.h_opt(x, w)) else { continue };
                let mut lhs: HashMap<usize, BiLaurentPoly> = HashMap::new();
                let mut rhs: HashMap<usize, BiLaurentPoly> = HashMap::new();
                let mut complete = true;
                for (yp, q) in wx.iter() {
                    let Some(e) = ad.h_opt(x, yp) else {
                        complete = false;
                        break;
                    };
                    for (y, p) in e.iter() {
                        lhs.entry(y).or_default().add_outer(p, q);
                    }
                }
                for (yp, p) in xw.iter() {
                    let Some(e) = ad.h_opt(yp, xp) else {
                        complete = false;
                        break;
                    };
                    for (y, q) in e.iter() {
                        rhs.entry(y).or_default().add_outer(p, q);
                    }
                }
                if !complete {
                    continue;
                }
                let zero = BiLaurentPoly::zero();
                for y in lhs.keys().chain(rhs.keys()) {
                    if cx.a[*y] != cx.a[w] {
                        continue;
                    }
                    let (l, r) = (lhs.get(y).unwrap_or(&zero), rhs.get(y).unwrap_or(&zero));
                    if l != r {
                        return Some(p15_json(cx, x, xp, w, *y, l, r));
                    }
                }
            }
        }
        None
    })
}

/// The generator form: for `sw > w`, `ws' > w`, `sy < y`, `ys' < y` and `a(y) = a(w)`,
/// `sum_{y's'<y'<sy'} h'_{w,s',y'} h_{s,y',y} = sum_{sy'<y'<y's'} h_{s,w,y'} h'_{y',s',y}`.
fn p15_generator(cx: &Ctx) -> Option<Value> {
    let ad = cx.ad;
    let g = cx.g;
    let gens: Vec<Gen> = g.system().gens().collect();
    g.elements().into_par_iter().find_map_first(|w| {
        for &s in &gens {
            for &sp in &gens {
                if g.is_left_descent(w, s) || g.is_right_descent(w, sp) {
                    continue;
                }
                let (es, esp) = (g.gen(s), g.gen(sp));
                let (Some(wsp), Some(sw)) = (ad.h_opt(w, esp), ad.h_opt(es, w)) else { continue };
                let mut lhs: HashMap<usize, BiLaurentPoly> = HashMap::new();
                let mut rhs: HashMap<usize, BiLaurentPoly> = HashMap::new();
                let mut complete = true;
                for (yp, q) in wsp.iter().filter(|&(yp, _)| g.is_right_descent(yp, sp) && !g.is_left_descent(yp, s)) {
                    let Some(e) = ad.h_opt(es, yp) else {
                        complete = false;
                        break;
                    };
                    for (y, p) in e.iter() {
                        lhs.entry(y).or_default().add_outer(p, q);
                    }
                }
                for (yp, p) in sw.iter().filter(|&(yp, _)| g.is_left_descent(yp, s) && !g.is_right_descent(yp, sp)) {
                    let Some(e) = ad.h_opt(yp, esp) else {
                        complete = false;
                        break;
                    };
                    for (y, q) in e.iter() {
                        rhs.entry(y).or_default().add_outer(p, q);
                    }
                }
                if !complete {
                    continue;
                }
                let zero = BiLaurentPoly::zero();
                let ys = g
                    .elements()
                    .filter(|&y| g.is_left_descent(y, s) && g.is_right_descent(y, sp) && cx.a[y] == cx.a[w]);
                for y in ys {
                    let (l, r) = (lhs.get(&y).unwrap_or(&zero), rhs.get(&y).unwrap_or(&zero));
                    if l != r {
                        return Some(p15_json(cx, es, esp, w, y, l, r));
                    }
                }
            }
        }
        None
    })
}
