use std::collections::BTreeMap;

use super::{Gen, GroupTable};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Reflection {
    pub elt: usize,
    /// `(w, s)` with `t = w s w^-1`.
    pub witness: (usize, Gen),
}

/// All conjugates of generators, sorted by element index.
pub fn reflections(g: &GroupTable) -> Result<Vec<Reflection>> {
    if !g.is_finite() {
        return Err(Error::InfiniteGroup);
    }
    let mut found: BTreeMap<usize, (usize, Gen)> = BTreeMap::new();
    for w in g.elements() {
        for s in g.system().gens() {
            let t = g.mul(g.mul(w, g.gen(s)).unwrap(), g.inverse(w)).unwrap();
            found.entry(t).or_insert((w, s));
        }
    }
    Ok(found.into_iter().map(|(elt, witness)| Reflection { elt, witness }).collect())
}

/// The cocycle `eta(w, t)`, computed by letting `U_{s_q} ... U_{s_1}` act on
/// `(1, t)` along the canonical word `s_1 ... s_q` of `w`.
pub fn eta(g: &GroupTable, w: usize, t: usize) -> Option<i64> {
    let mut eps = 1;
    let mut cur = t;
    for &s in g.word(w) {
        let sg = g.gen(s);
        if cur == sg {
            eps = -eps;
        }
        cur = g.lmul(g.rmul(cur, s)?, s)?;
    }
    Some(eps)
}

/// `s_1 ... s_i ... s_1` for `i = 1..q` along the canonical word.
pub fn prefix_reflections(g: &GroupTable, w: usize) -> Option<Vec<usize>> {
    let word = g.word(w);
    let mut out = Vec::with_capacity(word.len());
    let mut prefix = 0usize;
    for &s in word {
        let t = g.mul(g.rmul(prefix, s)?, g.inverse(prefix))?;
        out.push(t);
        prefix = g.rmul(prefix, s)?;
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::CoxeterSystem;

    fn table(label: &str) -> GroupTable {
        GroupTable::full(&CoxeterSystem::from_type(label, &[]).unwrap()).unwrap()
    }

    #[test]
    fn counts() {
        assert_eq!(reflections(&table("A1")).unwrap().len(), 1);
        assert_eq!(reflections(&table("A2")).unwrap().len(), 3);
        assert_eq!(reflections(&table("B2")).unwrap().len(), 4);
        assert_eq!(reflections(&table("H3")).unwrap().len(), 15);
    }

    #[test]
    fn reflections_are_odd_involutions() {
        let g = table("B3");
        for r in reflections(&g).unwrap() {
            assert_eq!(g.mul(r.elt, r.elt), Some(0));
            assert_eq!(g.len(r.elt) % 2, 1);
            let (w, s) = r.witness;
            assert_eq!(g.mul(g.mul(w, g.gen(s)).unwrap(), g.inverse(w)), Some(r.elt));
        }
    }

    #[test]
    fn eta_spot_values() {
        let g = table("A2");
        let s = g.gen(0);
        assert_eq!(eta(&g, s, s), Some(-1));
        for r in reflections(&g).unwrap() {
            assert_eq!(eta(&g, 0, r.elt), Some(1));
        }
        let w0 = g.longest().unwrap();
        let flips = reflections(&g).unwrap().iter().filter(|r| eta(&g, w0, r.elt) == Some(-1)).count();
        assert_eq!(flips, 3);
    }

    #[test]
    fn three_descriptions_of_left_inversions() {
        for label in ["A3", "B3", "H3"] {
            let g = table(label);
            let refl = reflections(&g).unwrap();
            for w in g.elements() {
                let prefixes = prefix_reflections(&g, w).unwrap();
                let mut sorted = prefixes.clone();
                sorted.sort();
                sorted.dedup();
                assert_eq!(sorted.len(), g.len(w) as usize);
                for r in &refl {
                    let by_eta = eta(&g, w, r.elt) == Some(-1);
                    let by_prefix = prefixes.contains(&r.elt);
                    let by_length = g.len(g.mul(r.elt, w).unwrap()) < g.len(w);
                    assert_eq!(by_eta, by_prefix);
                    assert_eq!(by_prefix, by_length);
                }
            }
        }
    }
}
