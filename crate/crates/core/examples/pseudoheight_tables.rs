// Pseudoheight of exceptional collections and the resulting connectedness verdict.

use mukai_lattice::{connectedness_verdict, pseudoheight, Degree, ExtDegreeTable};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let fano = ExtDegreeTable::from_json_str(
        r#"{"n": 2, "rel_dim": 3, "e_plain": {"1,2": 0}, "e_serre": {"1,1": 3, "2,2": 3, "2,1": 3}}"#,
    )?;
    fano.validate_sheaf_mode()?;
    let ph = pseudoheight(&fano);
    let v = connectedness_verdict(ph, fano.rel_dim(), fano.n());
    println!("O, O(1) on a relative index-2 Fano threefold: ph = {ph}");
    println!("  iso through degree {}, injective in degree {}, connected: {}", v.iso_range_max, v.injection_at, v.connected_by_criterion);

    for n in 1..=5 {
        let t = ExtDegreeTable::uniform(n, 4, Degree::Finite(0), Degree::Finite(4));
        println!("{n} objects with e = 0 and e_S = 4: ph = {}", pseudoheight(&t));
    }

    let mut cut = ExtDegreeTable::uniform(3, 2, Degree::Finite(1), Degree::Finite(2));
    cut.set_serre(0, 0, Degree::Infinite);
    println!("a single infinite entry leaves ph = {}", pseudoheight(&cut));
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
