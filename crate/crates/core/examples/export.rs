//! DOT and JSON exports.
//!
//! cargo run --example export | dot -Tsvg > dual.svg

use mbs::builders::seifert_example;
use mbs::export::{dual_graph_dot, to_json};
use mbs::homology::SpineGraph;
use mbs::neighborhood::genus_upper_bound_heegaard;
use mbs::neighborhood::{boundary_surface, DualGraph};

fn main() -> mbs::Result<()> {
    let x = seifert_example(&[2, 3, 5])?;
    let witness = genus_upper_bound_heegaard(&x, 1000, false)?.witness;
    let boundary = boundary_surface(&x, &witness, None)?;
    print!("{}", dual_graph_dot(&DualGraph::from_boundary(&x, &boundary)));
    eprintln!("{}", to_json(&SpineGraph::of(&x)?));
    Ok(())
}
