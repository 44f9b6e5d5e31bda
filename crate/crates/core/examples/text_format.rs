//! Building surfaces, writing them in the text format and reading them back.
//!
//! cargo run --example text_format

use mbs::builders::graph_to_mbs;
use mbs::format::{parse, serialize};
use mbs::minors::are_isomorphic;

const DOC: &str = "\
# a torus with one hole, glued twice around a circle, and a Möbius band
mbs handle
branch l
sector t genus 1
prebranch t l 2

mbs mobius
branch c
sector m genus 1 nonorientable
prebranch m c 1
";

fn main() -> mbs::Result<()> {
    for x in parse(DOC)? {
        let x = x.validate(false)?;
        println!(
            "{}: chi = {}, regular = {}",
            x.name().unwrap_or("?"),
            x.euler_characteristic(),
            x.is_regular()
        );
    }

    let theta = graph_to_mbs(2, &[(0, 1), (0, 1), (0, 1)])?;
    let text = serialize(&theta);
    print!("{text}");
    let back = parse(&text)?.remove(0);
    println!("round trip isomorphic: {}", are_isomorphic(&theta, &back));
    Ok(())
}
