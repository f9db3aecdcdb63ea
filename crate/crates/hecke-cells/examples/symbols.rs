//! Symbols of rank 2 for a = 1, b = 2, their a- and f-values and constructible families.

use hecke_cells::symbols::{constructible_families, involution_graph_components, stabilization, symbols, Params};

fn main() -> hecke_cells::Result<()> {
    let params = Params::new(1, 2)?;
    for s in symbols(params, 2, 2) {
        let (alpha, beta) = s.bipartition();
        println!("{alpha:?} {beta:?}: a={} f={}\n{s}", s.a_value(), s.f_value());
    }
    for fam in constructible_families(params, 2, 2)? {
        let labels: Vec<String> = fam.iter().map(|s| format!("{:?}", s.bipartition())).collect();
        println!("family (a={}): {}", fam[0].a_value(), labels.join(", "));
    }
    let (level, count) = stabilization(params, 3);
    println!("rank 3 multisets stabilize at N={level} with {count} members");
    println!("involution graph on 8 points, r=2: {} component(s)", involution_graph_components(&[0, 1, 2, 3, 4, 5, 6, 7], 2)?);
    Ok(())
}
