//! Instance configuration and the versioned JSON exports.

use std::path::Path;

use serde::Deserialize;
use serde_json::{json, Value};

use crate::afun::{AData, ConjectureReport};
use crate::cells::{CellPartition, Flavor};
use crate::coxeter::{CoxeterSystem, Extent, GroupTable};
use crate::error::{Error, Result};
use crate::jring::JRing;
use crate::kl::KLTable;
use crate::symbols::{constructible_families, symbols, Params, Symbol};

pub const SCHEMA_VERSION: u32 = 1;

/// Largest full enumeration attempted without an explicit radius.
pub const DEFAULT_ELEMENT_CAP: usize = 2_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(untagged)]
pub enum Radius {
    Ball(u32),
    Word(String),
}

/// `{"type": "B2"}` or `{"generators": [..], "matrix": [[..]]}`, plus optional
/// `"weights"` and `"radius"` (a number or `"full"`). Matrix entry 0 means infinity.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceConfig {
    #[serde(rename = "type")]
    pub type_label: Option<String>,
    pub generators: Option<Vec<String>>,
    pub matrix: Option<Vec<Vec<u32>>>,
    #[serde(default)]
    pub weights: Vec<u32>,
    pub radius: Option<Radius>,
}

impl InstanceConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn system(&self) -> Result<CoxeterSystem> {
        match (&self.type_label, &self.matrix) {
            (Some(t), None) => CoxeterSystem::from_type(t, &self.weights),
            (None, Some(m)) => {
                let n = m.len();
                let names = self.generators.clone().unwrap_or_else(|| (1..=n).map(|i| i.to_string()).collect());
                let weights = match self.weights.len() {
                    0 => vec![1; n],
                    1 => vec![self.weights[0]; n],
                    _ => self.weights.clone(),
                };
                CoxeterSystem::new(names, m.clone(), weights)
            }
            (Some(_), Some(_)) => Err(Error::Parse("give either \"type\" or \"matrix\", not both".into())),
            (None, None) => Err(Error::Parse("missing \"type\" or \"matrix\"".into())),
        }
    }

    pub fn extent(&self, cap: usize) -> Result<Extent> {
        match &self.radius {
            None => Ok(Extent::Full { cap }),
            Some(Radius::Ball(r)) => Ok(Extent::Ball(*r)),
            Some(Radius::Word(w)) if w == "full" => Ok(Extent::Full { cap }),
            Some(Radius::Word(w)) => Err(Error::Parse(format!("radius must be a number or \"full\", got {w:?}"))),
        }
    }

    pub fn table(&self, cap: usize) -> Result<GroupTable> {
        GroupTable::enumerate(&self.system()?, self.extent(cap)?)
    }
}

fn header(kind: &str, g: &GroupTable) -> Value {
    let sys = g.system();
    json!({
        "schema": SCHEMA_VERSION,
        "kind": kind,
        "generators": sys.names(),
        "matrix": sys.matrix(),
        "weights": sys.weights(),
        "finite": g.is_finite(),
        "radius": g.radius(),
        "size": g.size(),
    })
}

fn with(mut base: Value, key: &str, v: Value) -> Value {
    base.as_object_mut().expect("header is an object").insert(key.into(), v);
    base
}

fn gen_names(g: &GroupTable, mask: u32) -> Vec<String> {
    g.system().gens().filter(|&s| mask >> s & 1 == 1).map(|s| g.system().name(s).to_string()).collect()
}

pub fn group_json(g: &GroupTable) -> Value {
    let rows: Vec<Value> = g
        .elements()
        .map(|w| {
            json!({
                "index": w,
                "word": g.word_string(w),
                "length": g.len(w),
                "weight": g.weight(w),
                "left_descents": gen_names(g, g.left_descents(w)),
                "right_descents": gen_names(g, g.right_descents(w)),
                "inverse": g.word_string(g.inverse(w)),
            })
        })
        .collect();
    with(header("group", g), "elements", Value::Array(rows))
}

pub fn group_text(g: &GroupTable) -> String {
    let mut out = String::from("index\tword\tlength\tweight\tleft\tright\n");
    for w in g.elements() {
        out += &format!(
            "{w}\t{}\t{}\t{}\t{}\t{}\n",
            g.word_string(w),
            g.len(w),
            g.weight(w),
            gen_names(g, g.left_descents(w)).join(","),
            gen_names(g, g.right_descents(w)).join(",")
        );
    }
    out
}

/// Nonzero `p_{y,w}` for `y <= w`.
pub fn kl_json(kl: &KLTable) -> Value {
    let g = kl.table();
    let mut rows = Vec::new();
    for w in g.elements() {
        for y in kl.hecke().bruhat().lower(w).ones() {
            rows.push(json!({"y": g.word_string(y), "w": g.word_string(w), "p": kl.p(y, w)}));
        }
    }
    with(header("kl", g), "entries", Value::Array(rows))
}

/// Nonzero `mu^s_{y,w}` with `sy < y < w < sw`.
pub fn mu_json(kl: &KLTable) -> Value {
    let g = kl.table();
    let mut rows = Vec::new();
    for w in g.elements() {
        for s in g.system().gens().filter(|&s| !g.is_left_descent(w, s)) {
            for (y, m) in kl.mu_column(s, w) {
                rows.push(json!({"s": g.system().name(s), "y": g.word_string(*y), "w": g.word_string(w), "mu": m}));
            }
        }
    }
    with(header("mu", g), "entries", Value::Array(rows))
}

pub fn cells_json(part: &CellPartition, g: &GroupTable) -> Value {
    let mut out = header("cells", g);
    for f in Flavor::ALL {
        let cells: Vec<Value> = part
            .cells(f)
            .iter()
            .enumerate()
            .map(|(i, c)| {
                json!({
                    "elements": c.iter().map(|&w| g.word_string(w)).collect::<Vec<_>>(),
                    "open": part.is_open(f, i),
                })
            })
            .collect();
        out = with(out, &f.name().replace('-', "_"), Value::Array(cells));
    }
    out
}

pub fn cells_text(part: &CellPartition, g: &GroupTable) -> String {
    let mut out = String::new();
    for f in Flavor::ALL {
        out += &format!("{} cells: {}\n", f.name(), part.cells(f).len());
        for (i, c) in part.cell_words(g, f).iter().enumerate() {
            let open = if part.is_open(f, i) { " (open)" } else { "" };
            out += &format!("  {{{}}}{open}\n", c.join(", "));
        }
    }
    out
}

/// a, Delta, n per element; gamma and D.
pub fn afun_json(ad: &AData) -> Value {
    let g = ad.table();
    let rows: Vec<Value> = g
        .elements()
        .map(|z| {
            json!({
                "word": g.word_string(z),
                "a": ad.a_lower(z),
                "delta": ad.delta(z),
                "n": ad.n(z).to_string(),
                "duflo": ad.is_duflo(z),
                "frontier": g.on_frontier(z),
            })
        })
        .collect();
    let gamma: Vec<Value> = ad
        .gamma_entries()
        .into_iter()
        .map(|((x, y, z), c)| json!({"x": g.word_string(x), "y": g.word_string(y), "z": g.word_string(z), "gamma": c}))
        .collect();
    let mut out = header("afun", g);
    out = with(out, "certified", json!(ad.is_certified()));
    out = with(out, "elements", Value::Array(rows));
    out = with(out, "gamma", Value::Array(gamma));
    with(out, "duflo", json!(ad.dset().iter().map(|&d| g.word_string(d)).collect::<Vec<_>>()))
}

pub fn afun_text(ad: &AData) -> String {
    let g = ad.table();
    let mut out = String::from("word\ta\tDelta\tn\tD\n");
    for z in g.elements() {
        let a = ad.a_lower(z).map_or("?".to_string(), |a| a.to_string());
        let d = if ad.is_duflo(z) { "*" } else { "" };
        out += &format!("{}\t{a}\t{}\t{}\t{d}\n", g.word_string(z), ad.delta(z), ad.n(z));
    }
    out += &format!("certified: {}\n", ad.is_certified());
    out
}

/// Structure constants of `J`, the unit and the blocks.
pub fn jring_json(j: &JRing) -> Value {
    let ad = j.data();
    let g = ad.table();
    let w = |x: usize| g.word_string(x);
    let mut products = Vec::new();
    for x in g.elements() {
        for y in g.elements() {
            if let Ok(t) = j.t_mul(x, y) {
                if !t.is_zero() {
                    let terms: Vec<Value> = t.coords.iter().map(|(&z, &c)| json!({"z": w(z), "coeff": c})).collect();
                    products.push(json!({"x": w(x), "y": w(y), "product": terms}));
                }
            }
        }
    }
    let unit: Vec<Value> = j.unit().coords.iter().map(|(&z, &c)| json!({"z": w(z), "coeff": c})).collect();
    let blocks: Vec<Value> = j
        .blocks()
        .iter()
        .map(|b| {
            json!({
                "cell": b.cell.iter().map(|&x| w(x)).collect::<Vec<_>>(),
                "unit": b.unit.coords.iter().map(|(&z, &c)| json!({"z": w(z), "coeff": c})).collect::<Vec<_>>(),
            })
        })
        .collect();
    let mut out = header("jring", g);
    out = with(out, "products", Value::Array(products));
    out = with(out, "unit", Value::Array(unit));
    with(out, "blocks", Value::Array(blocks))
}

pub fn report_json(report: &ConjectureReport, g: &GroupTable) -> Value {
    let mut out = header("conjectures", g);
    let body = serde_json::to_value(report).expect("report serializes");
    for (k, v) in body.as_object().expect("struct").clone() {
        out = with(out, &k, v);
    }
    with(out, "all_pass", json!(report.all_pass()))
}

fn symbol_json(s: &Symbol) -> Value {
    let (alpha, beta) = s.bipartition();
    json!({
        "top": s.top,
        "bottom": s.bottom,
        "alpha": alpha,
        "beta": beta,
        "a": s.a_value(),
        "f": s.f_value(),
    })
}

/// Symbols of rank `n` at the smallest stable level, with a, f and (when b' = 0) the families.
pub fn symbols_json(params: Params, n: usize) -> Result<Value> {
    let level = n;
    let syms: Vec<Value> = symbols(params, level, n).iter().map(symbol_json).collect();
    let families = if params.b_prime() == 0 {
        let fams = constructible_families(params, level, n)?;
        json!(fams.iter().map(|f| f.iter().map(symbol_json).collect::<Vec<_>>()).collect::<Vec<_>>())
    } else {
        Value::Null
    };
    Ok(json!({
        "schema": SCHEMA_VERSION,
        "kind": "symbols",
        "a": params.a,
        "b": params.b,
        "r": params.r(),
        "b_prime": params.b_prime(),
        "n": n,
        "level": level,
        "symbols": syms,
        "families": families,
    }))
}

pub fn symbols_text(params: Params, n: usize) -> String {
    let mut out = format!("a={} b={} n={} (N={n})\n", params.a, params.b, n);
    for s in symbols(params, n, n) {
        let (alpha, beta) = s.bipartition();
        out += &format!("{alpha:?} {beta:?}  a={} f={}\n{s}\n", s.a_value(), s.f_value());
    }
    out
}

/// Pretty JSON with a trailing newline; identical inputs give identical bytes.
pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_forms() {
        let c = InstanceConfig::from_json(r#"{"type": "B2", "weights": [1, 2]}"#).unwrap();
        assert_eq!(c.table(100).unwrap().size(), 8);
        let c = InstanceConfig::from_json(r#"{"generators": ["s", "t"], "matrix": [[1, 0], [0, 1]], "weights": [1, 2], "radius": 4}"#)
            .unwrap();
        assert_eq!(c.table(100).unwrap().size(), 9);
        let c = InstanceConfig::from_json(r#"{"matrix": [[1, 3], [3, 1]], "radius": "full"}"#).unwrap();
        assert_eq!(c.table(100).unwrap().size(), 6);
        assert!(matches!(InstanceConfig::from_json(r#"{"matrix": [[1, 3], [3, 1]], "radius": "half"}"#).unwrap().extent(9), Err(Error::Parse(_))));
        assert!(matches!(InstanceConfig::from_json(r#"{"matrix": [[1, 2], [3, 1]]}"#).unwrap().system(), Err(Error::BadMatrix(_))));
        assert!(matches!(InstanceConfig::from_json(r#"{"typo": 1}"#), Err(Error::Parse(_))));
    }

    #[test]
    fn exports_are_deterministic() {
        let c = InstanceConfig::from_json(r#"{"type": "B2", "weights": [1, 2]}"#).unwrap();
        let make = || {
            let ad = AData::build(c.table(100).unwrap());
            [render(&afun_json(&ad)), render(&kl_json(ad.kl())), render(&cells_json(ad.cells(), ad.table()))]
        };
        let a = make();
        assert_eq!(a, make());
        let v: Value = serde_json::from_str(&a[0]).unwrap();
        assert_eq!(v["schema"], SCHEMA_VERSION);
        assert_eq!(v["duflo"].as_array().unwrap().len(), 6);
    }
}
