//! a-function, gamma, Delta, n and D for G2 with weights (3, 1).

use hecke_cells::afun::AData;
use hecke_cells::coxeter::{CoxeterSystem, GroupTable};

fn main() -> hecke_cells::Result<()> {
    let ad = AData::build(GroupTable::full(&CoxeterSystem::from_type("G2", &[3, 1])?)?);
    let g = ad.table();
    println!("word\ta\tDelta\tn");
    for z in g.elements() {
        println!("{}\t{}\t{}\t{}", g.word_string(z), ad.a(z)?, ad.delta(z), ad.n(z));
    }
    let d: Vec<String> = ad.dset().iter().map(|&d| g.word_string(d)).collect();
    println!("D = {{{}}}", d.join(", "));
    println!("bound N = {}", ad.bound());
    let negative = ad.gamma_entries().into_iter().filter(|(_, c)| *c < 0).count();
    println!("{} nonzero gamma, {negative} of them negative", ad.gamma_entries().len());
    Ok(())
}
