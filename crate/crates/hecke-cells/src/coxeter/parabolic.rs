use super::{Extent, Gen, GroupTable};
use crate::error::{Error, Result};

/// A standard parabolic subgroup `W_I` as its own table, with the embedding into `W`.
#[derive(Clone, Debug)]
pub struct Parabolic {
    pub gens: Vec<Gen>,
    pub table: GroupTable,
    /// Index in `W` of each element of `W_I`.
    pub embed: Vec<usize>,
}

impl Parabolic {
    /// Index in `W_I` of an element of `W`, if it lies in `W_I`.
    pub fn locate(&self, w: usize) -> Option<usize> {
        self.embed.iter().position(|&x| x == w)
    }
}

/// `W_I` with induced weights. A ball of `W` gives a ball of `W_I` of the same radius.
pub fn parabolic_table(g: &GroupTable, gens: &[Gen]) -> Result<Parabolic> {
    let sub = g.system().restrict(gens)?;
    let table = match g.radius() {
        None => GroupTable::full(&sub)?,
        Some(r) => GroupTable::enumerate(&sub, Extent::Ball(r))?,
    };
    let embed = table
        .elements()
        .map(|x| {
            let word: Vec<Gen> = table.word(x).iter().map(|&i| gens[i as usize]).collect();
            g.eval(&word).ok_or(Error::BallExceeded)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Parabolic { gens: gens.to_vec(), table, embed })
}

fn in_set(gens: &[Gen], s: Gen) -> bool {
    gens.contains(&s)
}

/// Minimal length element of the coset `W_I w`, together with `y in W_I` (as an
/// element of `W`) such that `w = y * min`.
pub fn coset_min(g: &GroupTable, w: usize, gens: &[Gen]) -> (usize, usize) {
    let mut x = w;
    let mut y = 0usize;
    while let Some(s) = g.system().gens().find(|&s| in_set(gens, s) && g.is_left_descent(x, s)) {
        x = g.lmul(x, s).unwrap();
        y = g.rmul(y, s).unwrap();
    }
    (x, y)
}

/// Maximal length element of `W_I w`; needs `W_I` finite.
pub fn coset_max(g: &GroupTable, w: usize, gens: &[Gen]) -> Result<usize> {
    let sub = g.system().restrict(gens)?;
    if gens.iter().any(|&s| gens.iter().any(|&t| s != t && g.system().m(s, t).is_none())) {
        return Err(Error::InfiniteParabolic);
    }
    match GroupTable::enumerate(&sub, Extent::Full { cap: 1 << 16 }) {
        Err(Error::CapExceeded(_)) => return Err(Error::InfiniteParabolic),
        Err(e) => return Err(e),
        Ok(_) => {}
    }
    let mut x = w;
    while let Some(s) = g.system().gens().find(|&s| in_set(gens, s) && !g.is_left_descent(x, s)) {
        x = g.lmul(x, s).ok_or(Error::BallExceeded)?;
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::CoxeterSystem;

    fn b(label: &str, weights: &[u32]) -> GroupTable {
        GroupTable::full(&CoxeterSystem::from_type(label, weights).unwrap()).unwrap()
    }

    #[test]
    fn spot_values() {
        let g = b("B2", &[1, 2]);
        let w = g.lookup(&[0, 1]).unwrap();
        assert_eq!(coset_min(&g, w, &[0]).0, g.gen(1));
        assert_eq!(coset_min(&g, w, &[]).0, w);
        assert_eq!(coset_min(&g, g.gen(0), &[0]).0, 0);
        assert_eq!(parabolic_table(&g, &[1]).unwrap().table.size(), 2);
        assert_eq!(parabolic_table(&g, &[]).unwrap().table.size(), 1);
        let full = parabolic_table(&g, &[0, 1]).unwrap();
        assert_eq!(full.embed, (0..8).collect::<Vec<_>>());
        assert_eq!(full.table.system().weights(), &[1, 2]);
    }

    #[test]
    fn coset_decomposition_is_length_additive() {
        let g = b("B3", &[2, 1]);
        for gens in [vec![0u8, 1], vec![1, 2], vec![0, 2], vec![2]] {
            for w in g.elements() {
                let (m, y) = coset_min(&g, w, &gens);
                assert_eq!(g.mul(y, m), Some(w));
                assert_eq!(g.len(w), g.len(y) + g.len(m));
                assert!(gens.iter().all(|&s| !g.is_left_descent(m, s)));
                let top = coset_max(&g, w, &gens).unwrap();
                assert!(gens.iter().all(|&s| g.is_left_descent(top, s)));
                assert_eq!(coset_min(&g, top, &gens).0, m);
            }
        }
    }

    #[test]
    fn infinite_parabolic() {
        let s = CoxeterSystem::from_matrix(vec![vec![1, 0, 2], vec![0, 1, 3], vec![2, 3, 1]], vec![1, 1, 1]).unwrap();
        let g = GroupTable::enumerate(&s, Extent::Ball(4)).unwrap();
        assert!(matches!(coset_max(&g, 0, &[0, 1]), Err(Error::InfiniteParabolic)));
        let p = parabolic_table(&g, &[1, 2]).unwrap();
        assert_eq!(p.table.size(), 6);
        assert_eq!(coset_max(&g, 0, &[1, 2]).unwrap(), p.embed[5]);
    }
}
