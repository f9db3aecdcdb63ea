//! Enumerate H3 and an infinite dihedral ball; compare ShortLex words with braid closure.

use hecke_cells::coxeter::{CoxeterSystem, Extent, GroupTable, WordProblem};

fn main() -> hecke_cells::Result<()> {
    let h3 = GroupTable::full(&CoxeterSystem::from_type("H3", &[])?)?;
    let w0 = h3.longest()?;
    println!("H3: {} elements, w0 = {} (length {})", h3.size(), h3.word_string(w0), h3.len(w0));

    let mut wp = WordProblem::new(h3.system(), 1_000_000);
    let class = wp.braid_class(h3.word(w0))?;
    println!("reduced words of w0: {}", class.len());
    let word = h3.system().parse_word("1213231")?;
    println!("1213231 -> {} (table) / {} (braid closure)",
        h3.word_string(h3.eval(&word).unwrap()),
        h3.system().format_word(&wp.canonical(&word)?));

    let ball = GroupTable::enumerate(&CoxeterSystem::dihedral(None, 1, 2)?, Extent::Ball(4))?;
    let words: Vec<String> = ball.elements().map(|w| ball.word_string(w)).collect();
    println!("infinite dihedral ball of radius 4: {}", words.join(" "));
    Ok(())
}
