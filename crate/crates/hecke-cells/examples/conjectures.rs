//! P1-P15 on B3 with weights (1, 2), and on a ball of the infinite dihedral group.

use hecke_cells::afun::{check_conjectures, AData, CheckScope};
use hecke_cells::coxeter::{CoxeterSystem, Extent, GroupTable};

fn main() -> hecke_cells::Result<()> {
    let ad = AData::build(GroupTable::full(&CoxeterSystem::from_type("B3", &[1, 2])?)?);
    let report = check_conjectures(&ad, &CheckScope::default())?;
    for r in &report.results {
        println!("{}", r.line());
    }
    println!("P15 {:?} over {} quadruples", report.p15_mode, report.p15_quadruples);

    let ball = AData::build(GroupTable::enumerate(&CoxeterSystem::dihedral(None, 1, 3)?, Extent::Ball(10))?);
    let report = check_conjectures(&ball, &CheckScope::default())?;
    println!("infinite dihedral (1,3), radius 10: certified {}, all pass {}", ball.is_certified(), report.all_pass());
    Ok(())
}
