//! Heegaard genus upper bounds from neighborhoods.
//!
//! cargo run --example genus_bounds

use mbs::builders::{obstruction_example, rose_times_circle, seifert_example};
use mbs::neighborhood::{
    boundary_surface, enumerate_permutation_systems, genus_upper_bound_heegaard, genus_upper_bound_sectors, DualGraph,
};

fn main() -> mbs::Result<()> {
    for x in [
        seifert_example(&[2, 3, 4])?,
        obstruction_example(),
        rose_times_circle(1)?,
    ] {
        let name = x.name().unwrap_or("?");
        let systems = enumerate_permutation_systems(&x, 1000)?;
        println!("{name}: {} permutation systems", systems.systems.len());
        for p in systems.systems.iter().take(3) {
            let b = boundary_surface(&x, p, None)?;
            let g = DualGraph::from_boundary(&x, &b);
            println!(
                "  {}  ->  g(dN) = {}, b1(G) = {}",
                p.describe(&x),
                b.total_genus(),
                g.betti_number()
            );
        }
        let hb = genus_upper_bound_heegaard(&x, 1000, true)?;
        println!(
            "  sector bound {}, Heegaard bound {} (exhaustive: {})",
            genus_upper_bound_sectors(&x)?,
            hb.bound,
            hb.exhaustive
        );
    }
    Ok(())
}
