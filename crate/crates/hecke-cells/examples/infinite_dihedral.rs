//! The infinite dihedral group with weights (1, 2) on a ball: a, Delta, D and the closed forms.

use hecke_cells::afun::AData;
use hecke_cells::coxeter::{CoxeterSystem, Extent, GroupTable};
use hecke_cells::dihedral;

fn main() -> hecke_cells::Result<()> {
    let ad = AData::build(GroupTable::enumerate(&CoxeterSystem::dihedral(None, 1, 2)?, Extent::Ball(12))?);
    let g = ad.table();
    println!("certified: {}", ad.is_certified());
    for z in g.elements().take(10) {
        println!("{}\ta={}\tDelta={}", g.word_string(z), ad.a(z)?, ad.delta(z));
    }
    let d: Vec<String> = ad.dset().iter().map(|&d| g.word_string(d)).collect();
    println!("D = {{{}}}", d.join(", "));
    let mut agree = 0;
    for x in g.elements() {
        for y in g.elements() {
            if let (Some(h), Some(want)) = (ad.h_opt(x, y), dihedral::product_infinite(g, x, y)) {
                assert_eq!(h, &want);
                agree += 1;
            }
        }
    }
    println!("{agree} products agree with the closed forms");
    Ok(())
}
