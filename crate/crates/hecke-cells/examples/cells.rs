//! Left and two-sided cells of B2 for two weight choices, plus a DOT rendering.

use hecke_cells::cells::{CellPartition, Flavor};
use hecke_cells::coxeter::{CoxeterSystem, GroupTable};
use hecke_cells::kl::KLTable;

fn main() -> hecke_cells::Result<()> {
    for weights in [[1, 1], [1, 2]] {
        let kl = KLTable::build(GroupTable::full(&CoxeterSystem::from_type("B2", &weights)?)?);
        let part = CellPartition::new(&kl);
        println!("B2 {weights:?}");
        for f in [Flavor::Left, Flavor::TwoSided] {
            println!("  {} cells: {:?}", f.name(), part.cell_words(kl.table(), f));
        }
        if weights == [1, 2] {
            print!("{}", part.to_dot(kl.table(), Flavor::Left));
        }
    }
    Ok(())
}
