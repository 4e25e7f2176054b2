// Words in spherical twists, line bundle tensors and shifts acting on the
// algebraic Mukai lattice.

use std::sync::Arc;

use mukai_lattice::{build_word, K3Model};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let s = Arc::new(K3Model::quartic_with_line());
    // words act right to left: lb:D first, shift last
    let phi = build_word(s.clone(), "shift tw:O lb:D tw:O lb:D")?;
    println!("(T_O ∘ ⊗O(D))²[-1] has transcendental sign {}", phi.transcendental_sign());
    for text in ["(1,0,0)", "(0,D,0)", "(0,E,0)", "(0,0,1)"] {
        let v = s.parse_vector(text)?;
        println!("  {} -> {}", s.format_vector(&v), s.format_vector(&phi.apply(&v)?));
    }

    let phi_gm = build_word(s.clone(), "shift tw:U tw:O lb:D+E")?;
    let psi = build_word(s.clone(), "tw:O(-D) lb:-E")?;
    let conj = build_word(s.clone(), "tw:O(-D) tw:O(-D)")?.compose(&phi_gm)?.conjugate(&psi)?;
    println!("conjugated GM action agrees: {}", conj == phi);

    let inv = phi.invariant_sublattice()?;
    println!("invariant lattice rank {}, Gram {}", inv.rank(), inv.gram());

    let twist = build_word(s.clone(), "tw:U")?;
    println!("T_U squares to the identity on cohomology: {}", twist.pow(2).is_identity());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
