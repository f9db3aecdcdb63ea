//! Kazhdan-Lusztig polynomials and mu-coefficients of B3 with weights (2, 1, 1).

use hecke_cells::coxeter::{CoxeterSystem, GroupTable};
use hecke_cells::kl::KLTable;

fn main() -> hecke_cells::Result<()> {
    let g = GroupTable::full(&CoxeterSystem::from_type("B3", &[2, 1])?)?;
    let kl = KLTable::build(g);
    let g = kl.table();
    let w0 = g.longest()?;
    for y in kl.hecke().bruhat().lower(w0).ones().take(6) {
        println!("p[{}, {}] = {}", g.word_string(y), g.word_string(w0), kl.p(y, w0));
    }
    let mut shown = 0;
    for w in g.elements() {
        for s in g.system().gens().filter(|&s| !g.is_left_descent(w, s)) {
            for (y, mu) in kl.mu_column(s, w) {
                if shown < 8 && mu.terms().len() > 1 {
                    println!("mu^{}[{}, {}] = {mu}", g.system().name(s), g.word_string(*y), g.word_string(w));
                    shown += 1;
                }
            }
        }
    }
    Ok(())
}
