//! Minor operations, isomorphism and obstruction-set candidacy.
//!
//! cargo run --example minors

use mbs::builders::{obstruction_example, one_sector, pants_example};
use mbs::minors::{
    all_minors, are_isomorphic, contract_annulus, is_minor, neighborhood_minor_certificate, obstruction_candidate_s3,
    reduce_degree, torus_sum,
};
use mbs::{MultibranchedSurface, Prebranch, Sector};

fn main() -> mbs::Result<()> {
    let pants = pants_example();
    println!(
        "pants has {} minors up to isomorphism",
        all_minors(&pants, 10_000)?.len()
    );

    let annulus = one_sector(0, &[2, 2], None)?;
    let one_pants = one_sector(0, &[1, 1, 1], None)?;
    println!(
        "single pair of pants ≺ four pants: {}",
        is_minor(&one_pants, &pants, 10_000)?
    );
    let report = obstruction_candidate_s3(&annulus, 100)?;
    println!("annulus(2,2): {:?}, {}", report.verdict, report.note);

    // two disks joined by an annulus contract to a sphere
    let x = MultibranchedSurface::from_parts(
        None,
        vec!["p".into(), "q".into()],
        vec![
            Sector::new("d1", 0, vec![Prebranch::new("p", 1)]),
            Sector::new("d2", 0, vec![Prebranch::new("q", 1)]),
            Sector::new("a", 0, vec![Prebranch::new("p", 1), Prebranch::new("q", 1)]),
        ],
    );
    let sphere = contract_annulus(&x, &"a".into())?;
    println!(
        "after contraction: {} sectors, chi = {}",
        sphere.sectors().len(),
        sphere.euler_characteristic()
    );

    let y = obstruction_example();
    let target = torus_sum(&reduce_degree(&y, &"l1".into())?, &"e1".into())?;
    if let Some(cert) = neighborhood_minor_certificate(&target, &y, 3)? {
        let steps: Vec<String> = cert.steps.iter().map(|s| s.step.to_string()).collect();
        println!("neighborhood minor via {}", steps.join(", "));
        println!("certificate verifies: {}", cert.verify(&y, &target)?);
    }
    println!(
        "pants ≅ pants with sectors reversed: {}",
        are_isomorphic(&pants, &reversed(&pants))
    );
    Ok(())
}

fn reversed(x: &MultibranchedSurface) -> MultibranchedSurface {
    let sectors = x.sectors().iter().rev().cloned().collect();
    MultibranchedSurface::from_parts(None, x.branches().to_vec(), sectors)
}
