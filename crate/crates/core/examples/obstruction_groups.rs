// Cohomology of cyclic groups acting trivially on C^×, Z and finite groups.

use mukai_lattice::{cyclic_cohomology, AbelianGroupModel};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let units = AbelianGroupModel::field_units();
    let laurent: AbelianGroupModel = "Cx + Z".parse()?;
    for n in 0..=4 {
        println!(
            "H^{n}(Z/2, C^x) = {:<8} H^{n}(Z/3, C^x + Z) = {}",
            cyclic_cohomology(2, n, &units)?.to_string(),
            cyclic_cohomology(3, n, &laurent)?
        );
    }
    let a: AbelianGroupModel = "Z^2 + Z/4 + Z/6".parse()?;
    println!("A = {a}: A[2] = {}, A/2A = {}", a.m_torsion(2)?, a.mod_m_quotient(2)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
