//! First homology of the standard families and the S³ obstruction.
//!
//! cargo run --example homology

use mbs::builders::{obstruction_example, one_sector, pants_example, seifert_example};
use mbs::homology::{h1, relation_matrix, s3_obstruction};

fn main() -> mbs::Result<()> {
    let surfaces = [
        ("one sector, g=1, degrees 2,4", one_sector(1, &[2, 4], None)?),
        ("four pants", pants_example()),
        ("seifert 2,3,5", seifert_example(&[2, 3, 5])?),
        ("obstruction", obstruction_example()),
    ];
    for (label, x) in &surfaces {
        println!("{label}");
        println!("  chi = {}", x.euler_characteristic());
        println!("  relation matrix:\n{}", relation_matrix(x)?);
        println!("  H1 = {}", h1(x)?);
        let verdict = s3_obstruction(x)?;
        println!(
            "  embeds in S3: {}",
            if verdict.is_obstructed() { "no" } else { "not excluded" }
        );
    }
    Ok(())
}
