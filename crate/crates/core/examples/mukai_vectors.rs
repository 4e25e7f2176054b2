// Mukai vectors, pairings, Euler characteristics and slopes on bundled K3 models.

use mukai_lattice::K3Model;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for name in K3Model::BUNDLED {
        let model = K3Model::bundled(name)?;
        let lattice = model.algebraic_mukai_lattice();
        println!("{name}: algebraic Mukai lattice {} has signature {}", lattice.gram(), lattice.signature());
    }

    let s = K3Model::quartic_with_line();
    let u = s.parse_vector("U")?;
    let o_minus_d = s.parse_vector("O(-D)")?;
    let vs = s.parse_vector("(2, -D-2E, 4)")?;
    println!("v(U) = {}, v(U)^2 = {}", s.format_vector(&u), s.mukai_square(&u)?);
    println!("v(O(-D)) = {}", s.format_vector(&o_minus_d));
    println!("chi(O(-D), U) = {}", s.euler_characteristic(&o_minus_d, &u)?);
    println!("chi(O(-D), V_s) = {}", s.euler_characteristic(&o_minus_d, &vs)?);

    // slopes are exact rationals
    for v in [&u, &vs] {
        println!("mu_D{} = {}", s.format_vector(v), s.slope(s.polarization(), v)?);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
