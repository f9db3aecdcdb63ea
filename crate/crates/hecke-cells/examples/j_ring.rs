//! The ring J of B2 with weights (1, 2): blocks, the sign in t_212^2, and phi.

use hecke_cells::afun::{check_conjectures, AData, CheckScope};
use hecke_cells::coxeter::{CoxeterSystem, GroupTable};
use hecke_cells::jring::{jring_checks, JRing};

fn main() -> hecke_cells::Result<()> {
    let ad = AData::build(GroupTable::full(&CoxeterSystem::from_type("B2", &[1, 2])?)?);
    let report = check_conjectures(&ad, &CheckScope::default())?;
    let j = JRing::new(&ad, &report)?;
    let g = ad.table();
    let name = |coords: &std::collections::BTreeMap<usize, i64>| {
        coords.iter().map(|(&z, &c)| format!("{c}*t_{}", g.word_string(z))).collect::<Vec<_>>().join(" + ")
    };
    for b in j.blocks() {
        let cell: Vec<String> = b.cell.iter().map(|&x| g.word_string(x)).collect();
        println!("block {{{}}} with unit {}", cell.join(", "), name(&b.unit.coords));
    }
    let x = g.eval(&g.system().parse_word("212")?).unwrap();
    println!("t_212 t_212 = {}", name(&j.t_mul(x, x)?.coords));
    let phi: Vec<String> = j.phi(g.gen(1))?.iter().map(|(&z, p)| format!("({p}) t_{}", g.word_string(z))).collect();
    println!("phi(c_2^dagger) = {}", phi.join(" + "));
    for c in jring_checks(&j)? {
        println!("{}", c.line());
    }
    Ok(())
}
