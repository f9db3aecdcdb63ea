//! Left, right and two-sided preorders and their cells.

use std::fmt::Write as _;

use fixedbitset::FixedBitSet;
use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;
use serde::Serialize;

use crate::coxeter::{coset_min, parabolic_table, Gen, GroupTable, Side};
use crate::error::Result;
use crate::hecke::HeckeElt;
use crate::kl::KLTable;
use crate::laurent::LaurentPoly;
use crate::report::{first_failure, Check};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Flavor {
    Left,
    Right,
    TwoSided,
}

impl Flavor {
    pub const ALL: [Flavor; 3] = [Flavor::Left, Flavor::Right, Flavor::TwoSided];

    fn idx(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Flavor::Left => "left",
            Flavor::Right => "right",
            Flavor::TwoSided => "two-sided",
        }
    }
}

#[derive(Clone, Debug)]
struct Preorder {
    /// `arrows[w']` lists `w != w'` with `c_w` in `c_s c_{w'}` (or the right/either variant).
    arrows: Vec<Vec<usize>>,
    /// `below[w'] = {w : w <= w'}`.
    below: Vec<FixedBitSet>,
    cells: Vec<Vec<usize>>,
    cell_of: Vec<usize>,
    open: Vec<bool>,
}

/// All three preorders on an enumerated group (or ball).
///
/// In a ball, a cell is flagged open when one of its members has an arrow
/// to an element outside the ball, so that the class may still grow.
#[derive(Clone, Debug)]
pub struct CellPartition {
    orders: [Preorder; 3],
}

fn arrows(kl: &KLTable, side: Side) -> (Vec<Vec<usize>>, Vec<bool>) {
    let g = kl.table();
    let mut out = vec![Vec::new(); g.size()];
    let mut leaks = vec![false; g.size()];
    for w in g.elements() {
        for s in g.system().gens() {
            let (e, leak) = kl.cs_times_cw_partial(s, w, side);
            leaks[w] |= leak;
            out[w].extend(e.support().filter(|&z| z != w));
        }
        out[w].sort_unstable();
        out[w].dedup();
    }
    (out, leaks)
}

fn preorder(n: usize, arrows: Vec<Vec<usize>>, leaks: &[bool]) -> Preorder {
    let mut below = Vec::with_capacity(n);
    for w in 0..n {
        let mut seen = FixedBitSet::with_capacity(n);
        let mut stack = vec![w];
        seen.insert(w);
        while let Some(x) = stack.pop() {
            for &y in &arrows[x] {
                if !seen.put(y) {
                    stack.push(y);
                }
            }
        }
        below.push(seen);
    }
    let mut graph = DiGraph::<(), ()>::with_capacity(n, 0);
    let nodes: Vec<_> = (0..n).map(|_| graph.add_node(())).collect();
    for (w, out) in arrows.iter().enumerate() {
        for &z in out {
            graph.add_edge(nodes[w], nodes[z], ());
        }
    }
    let mut cells: Vec<Vec<usize>> = tarjan_scc(&graph)
        .into_iter()
        .map(|c| {
            let mut c: Vec<usize> = c.into_iter().map(|x| x.index()).collect();
            c.sort_unstable();
            c
        })
        .collect();
    cells.sort();
    let mut cell_of = vec![0; n];
    for (i, c) in cells.iter().enumerate() {
        for &w in c {
            cell_of[w] = i;
        }
    }
    let open = cells.iter().map(|c| c.iter().any(|&w| leaks[w])).collect();
    Preorder { arrows, below, cells, cell_of, open }
}

impl CellPartition {
    pub fn new(kl: &KLTable) -> Self {
        let n = kl.table().size();
        let (left, leak_l) = arrows(kl, Side::Left);
        let (right, leak_r) = arrows(kl, Side::Right);
        let mut both: Vec<Vec<usize>> = left.iter().zip(&right).map(|(a, b)| [a.as_slice(), b].concat()).collect();
        for b in &mut both {
            b.sort_unstable();
            b.dedup();
        }
        let leak_b: Vec<bool> = leak_l.iter().zip(&leak_r).map(|(a, b)| *a || *b).collect();
        CellPartition {
            orders: [preorder(n, left, &leak_l), preorder(n, right, &leak_r), preorder(n, both, &leak_b)],
        }
    }

    fn order(&self, f: Flavor) -> &Preorder {
        &self.orders[f.idx()]
    }

    /// `y <= w` in the given preorder.
    pub fn leq(&self, f: Flavor, y: usize, w: usize) -> bool {
        self.order(f).below[w].contains(y)
    }

    pub fn equiv(&self, f: Flavor, y: usize, w: usize) -> bool {
        self.cell_of(f, y) == self.cell_of(f, w)
    }

    pub fn arrows(&self, f: Flavor) -> &[Vec<usize>] {
        &self.order(f).arrows
    }

    /// Cells as sorted index lists, ordered by their smallest member.
    pub fn cells(&self, f: Flavor) -> &[Vec<usize>] {
        &self.order(f).cells
    }

    pub fn cell_of(&self, f: Flavor, w: usize) -> usize {
        self.order(f).cell_of[w]
    }

    pub fn is_open(&self, f: Flavor, cell: usize) -> bool {
        self.order(f).open[cell]
    }

    /// Cells rendered as canonical words.
    pub fn cell_words(&self, g: &GroupTable, f: Flavor) -> Vec<Vec<String>> {
        self.cells(f).iter().map(|c| c.iter().map(|&w| g.word_string(w)).collect()).collect()
    }

    /// Arrow graph with one cluster per cell.
    pub fn to_dot(&self, g: &GroupTable, f: Flavor) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "digraph {} {{", f.name().replace('-', "_"));
        for (i, cell) in self.cells(f).iter().enumerate() {
            let _ = writeln!(out, "  subgraph cluster_{i} {{");
            if self.is_open(f, i) {
                let _ = writeln!(out, "    style=dashed;");
            }
            for &w in cell {
                let _ = writeln!(out, "    n{w} [label=\"{}\"];", g.word_string(w));
            }
            let _ = writeln!(out, "  }}");
        }
        for (w, out_edges) in self.arrows(f).iter().enumerate() {
            for z in out_edges {
                let _ = writeln!(out, "  n{w} -> n{z};");
            }
        }
        out.push_str("}\n");
        out
    }
}

/// `R` constant on left cells, `L` constant on right cells, and
/// `w <=_L w'` implies `R(w') ⊆ R(w)` (dually on the right).
pub fn descent_invariant_check(part: &CellPartition, g: &GroupTable) -> Vec<Check> {
    let constant = |f: Flavor, des: &dyn Fn(usize) -> u32| {
        first_failure(part.cells(f), |c| {
            c.iter().find(|&&w| des(w) != des(c[0])).map(|&w| format!("{} vs {}", g.word_string(c[0]), g.word_string(w)))
        })
    };
    let monotone = |f: Flavor, des: &dyn Fn(usize) -> u32| {
        first_failure(g.elements(), |&wp| {
            part.order(f).below[wp]
                .ones()
                .find(|&w| des(wp) & !des(w) != 0)
                .map(|w| format!("{} <= {}", g.word_string(w), g.word_string(wp)))
        })
    };
    let r = |w: usize| g.right_descents(w);
    let l = |w: usize| g.left_descents(w);
    vec![
        Check::from_failure("right descents constant on left cells", constant(Flavor::Left, &r)),
        Check::from_failure("left descents constant on right cells", constant(Flavor::Right, &l)),
        Check::from_failure("right descents shrink along <=_L", monotone(Flavor::Left, &r)),
        Check::from_failure("left descents shrink along <=_R", monotone(Flavor::Right, &l)),
    ]
}

/// Action of each `c_s` on the left cell module of `cell`: entry `[i][j]` is the
/// coefficient of `c_{cell[i]}` in `c_s c_{cell[j]}`.
#[derive(Clone, Debug)]
pub struct CellModule {
    pub cell: Vec<usize>,
    pub matrices: Vec<Vec<Vec<LaurentPoly>>>,
}

pub fn cell_module(kl: &KLTable, cell: &[usize]) -> Result<CellModule> {
    let g = kl.table();
    let matrices = g
        .system()
        .gens()
        .map(|s| {
            let cols: Vec<HeckeElt> =
                cell.iter().map(|&w| kl.cs_times_cw(s, w, Side::Left)).collect::<Result<_>>()?;
            Ok(cell.iter().map(|&z| cols.iter().map(|c| c.coeff(z).clone()).collect()).collect())
        })
        .collect::<Result<_>>()?;
    Ok(CellModule { cell: cell.to_vec(), matrices })
}

/// Multiplication by `w0` on either side reverses all three preorders and permutes cells.
pub fn w0_cell_duality(part: &CellPartition, g: &GroupTable) -> Result<Vec<Check>> {
    let w0 = g.longest()?;
    let r = |x: usize| g.mul(x, w0).unwrap();
    let l = |x: usize| g.mul(w0, x).unwrap();
    let mut out = Vec::new();
    for f in Flavor::ALL {
        let rev = first_failure(g.elements().flat_map(|y| g.elements().map(move |w| (y, w))), |&(y, w)| {
            let a = part.leq(f, y, w);
            (a != part.leq(f, r(w), r(y)) || a != part.leq(f, l(w), l(y)))
                .then(|| format!("y={}, w={}", g.word_string(y), g.word_string(w)))
        });
        out.push(Check::from_failure(&format!("{} preorder reversed by w0", f.name()), rev));
        let perm = first_failure(part.cells(f), |c| {
            [true, false].into_iter().find_map(|right| {
                let mut img: Vec<usize> = c.iter().map(|&w| if right { r(w) } else { l(w) }).collect();
                img.sort_unstable();
                (part.cells(f)[part.cell_of(f, img[0])] != img).then(|| format!("cell of {}", g.word_string(c[0])))
            })
        });
        out.push(Check::from_failure(&format!("{} cells permuted by w0", f.name()), perm));
    }
    Ok(out)
}

/// Transport from a standard parabolic subgroup along minimal coset representatives:
/// `p_{xz,yz} = p^I_{x,y}`, `mu^{s,I}_{x,y} = mu^s_{xz,yz}` and left cells of `W_I`
/// landing inside left cells of `W`.
pub fn parabolic_checks(kl: &KLTable, part: &CellPartition, gens: &[Gen]) -> Result<Vec<Check>> {
    let g = kl.table();
    let par = parabolic_table(g, gens)?;
    let sub = KLTable::build(par.table.clone());
    let sub_part = CellPartition::new(&sub);
    let gi = sub.table();
    let reps: Vec<usize> = g.elements().filter(|&z| coset_min(g, z, gens).0 == z).collect();
    let tr = |x: usize, z: usize| g.mul(par.embed[x], z);
    let mut p_fail = None;
    let mut mu_fail = None;
    let mut cell_fail = None;
    'z: for &z in &reps {
        for x in gi.elements() {
            for y in gi.elements() {
                let (Some(xz), Some(yz)) = (tr(x, z), tr(y, z)) else { continue };
                if sub.p(x, y) != kl.p(xz, yz) {
                    p_fail = Some(format!("x={}, y={}, z={}", gi.word_string(x), gi.word_string(y), g.word_string(z)));
                    break 'z;
                }
                for s in gi.system().gens() {
                    if x != y && gi.is_left_descent(x, s) && !gi.is_left_descent(y, s) {
                        let big = kl.mu(gens[s as usize], xz, yz).ok();
                        if big.as_ref() != Some(&sub.mu(s, x, y)?) {
                            mu_fail = Some(format!("x={}, y={}, z={}", gi.word_string(x), gi.word_string(y), g.word_string(z)));
                            break 'z;
                        }
                    }
                }
                if sub_part.leq(Flavor::Left, x, y) && !part.leq(Flavor::Left, xz, yz) {
                    cell_fail = Some(format!("x={}, y={}, z={}", gi.word_string(x), gi.word_string(y), g.word_string(z)));
                    break 'z;
                }
            }
        }
    }
    Ok(vec![
        Check::from_failure("p_{xz,yz} = p^I_{x,y}", p_fail),
        Check::from_failure("mu^{s,I}_{x,y} = mu^s_{xz,yz}", mu_fail),
        Check::from_failure("x <=_L y in W_I implies xz <=_L yz", cell_fail),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::{CoxeterSystem, Extent};

    fn setup(m: Option<u32>, l1: u32, l2: u32) -> (KLTable, CellPartition) {
        let s = CoxeterSystem::dihedral(m, l1, l2).unwrap();
        let g = match m {
            Some(_) => GroupTable::full(&s).unwrap(),
            None => GroupTable::enumerate(&s, Extent::Ball(8)).unwrap(),
        };
        let kl = KLTable::build(g);
        let part = CellPartition::new(&kl);
        (kl, part)
    }

    fn words(kl: &KLTable, part: &CellPartition, f: Flavor) -> Vec<Vec<String>> {
        let mut c = part.cell_words(kl.table(), f);
        c.iter_mut().for_each(|x| x.sort());
        c.sort();
        c
    }

    fn sorted(v: &[&[&str]]) -> Vec<Vec<String>> {
        let mut out: Vec<Vec<String>> = v
            .iter()
            .map(|c| {
                let mut c: Vec<String> = c.iter().map(|s| s.to_string()).collect();
                c.sort();
                c
            })
            .collect();
        out.sort();
        out
    }

    #[test]
    fn dihedral_equal_parameters() {
        let (kl, part) = setup(Some(6), 1, 1);
        let left = words(&kl, &part, Flavor::Left);
        assert_eq!(
            left,
            sorted(&[&["e"], &["2", "12", "212", "1212", "21212"], &["1", "21", "121", "2121", "12121"], &["121212"]])
        );
    }

    #[test]
    fn b2_unequal() {
        let (kl, part) = setup(Some(4), 1, 2);
        assert_eq!(
            words(&kl, &part, Flavor::Left),
            sorted(&[&["e"], &["2", "12"], &["212"], &["1"], &["21", "121"], &["1212"]])
        );
        assert_eq!(
            words(&kl, &part, Flavor::TwoSided),
            sorted(&[&["e"], &["1"], &["212"], &["1212"], &["2", "12", "21", "121"]])
        );
    }

    #[test]
    fn inverse_swaps_left_and_right() {
        let (kl, part) = setup(Some(4), 2, 3);
        let g = kl.table();
        for y in g.elements() {
            for w in g.elements() {
                assert_eq!(
                    part.leq(Flavor::Left, y, w),
                    part.leq(Flavor::Right, g.inverse(y), g.inverse(w))
                );
            }
        }
        for c in descent_invariant_check(&part, g) {
            assert!(c.pass, "{}", c.line());
        }
        for c in w0_cell_duality(&part, g).unwrap() {
            assert!(c.pass, "{}", c.line());
        }
    }

    #[test]
    fn down_sets_are_left_ideals() {
        let kl = KLTable::build(GroupTable::full(&CoxeterSystem::from_type("B3", &[1, 2]).unwrap()).unwrap());
        let part = CellPartition::new(&kl);
        let g = kl.table();
        for wp in g.elements() {
            for w in g.elements().filter(|&w| part.leq(Flavor::Left, w, wp)) {
                for s in g.system().gens() {
                    let e = kl.cs_times_cw(s, w, Side::Left).unwrap();
                    assert!(e.support().all(|z| part.leq(Flavor::Left, z, wp)));
                }
            }
        }
        for c in descent_invariant_check(&part, g) {
            assert!(c.pass, "{}", c.line());
        }
        for gens in [vec![0u8, 1], vec![1, 2], vec![0, 2]] {
            for c in parabolic_checks(&kl, &part, &gens).unwrap() {
                assert!(c.pass, "{gens:?}: {}", c.line());
            }
        }
    }

    #[test]
    fn cell_modules() {
        let (kl, part) = setup(Some(4), 1, 2);
        let g = kl.table();
        let w0 = g.longest().unwrap();
        let top = cell_module(&kl, &[w0]).unwrap();
        for (s, m) in g.system().gens().zip(&top.matrices) {
            let vs = kl.hecke().vs(s);
            assert_eq!(m[0][0], &vs + &vs.bar());
        }
        let bottom = cell_module(&kl, &[0]).unwrap();
        assert!(bottom.matrices.iter().all(|m| m[0][0].is_zero()));
        let cell = &part.cells(Flavor::Left)[part.cell_of(Flavor::Left, g.gen(1))];
        let m = cell_module(&kl, cell).unwrap();
        assert_eq!(m.matrices[0].len(), 2);
    }

    #[test]
    fn infinite_ball_cells() {
        let (kl, part) = setup(None, 1, 2);
        let g = kl.table();
        // extra arrows 2_1 <- 1_4 in the unequal case
        let w = g.lookup(&[0, 1, 0, 1]).unwrap();
        assert!(part.arrows(Flavor::Left)[w].contains(&g.gen(1)));
        let e = part.cell_of(Flavor::Left, 0);
        assert!(!part.is_open(Flavor::Left, e));
        let top = g.lookup(&[0, 1, 0, 1, 0, 1, 0, 1]).unwrap();
        assert!(part.is_open(Flavor::Left, part.cell_of(Flavor::Left, top)));
        assert!(part.to_dot(g, Flavor::Left).contains("style=dashed"));
    }
}
