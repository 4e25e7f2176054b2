// Determinant, signature, Smith form, complements and cones in small lattices.

use mukai_lattice::lattice::{smith_normal_form, SublatticeSpan};
use mukai_lattice::{IntLattice, IntMatrix};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    // Picard lattice of a quartic containing a line, basis (D, E)
    let pic = IntLattice::from_i64(&[&[4, 3], &[3, 0]], &["D", "E"]);
    println!("Picard lattice {pic}");
    println!("  det = {}, signature = {}", pic.determinant(), pic.signature());
    println!("  Smith form diagonal: {:?}", smith_normal_form(pic.gram()).invariant_factors());

    let e = pic.class("E")?;
    let line = pic.class("D-E")?;
    let nef = pic.dual_cone_rank2([&e, &line])?;
    println!("  nef cone = <{}, {}>", pic.format(&nef[0]), pic.format(&nef[1]));

    let h = pic.class("D+E")?;
    let he = pic.change_of_basis(&IntMatrix::from_columns(&[h.coords().to_vec(), e.coords().to_vec()])?, None)?;
    println!("  in the basis (D+E, E): {}", he.gram());

    // D+E and D-E span an index-2 sublattice
    let span = SublatticeSpan::new(pic.clone(), vec![h.clone(), line.clone()])?;
    println!("  <D+E, D-E> has index {} in its saturation", span.saturation_index());

    let l = IntLattice::from_i64(&[&[2, 0, -1], &[0, 2, -1], &[-1, -1, 0]], &[]);
    let a1a1 = SublatticeSpan::new(l.clone(), vec![l.basis_vector(0), l.basis_vector(1)])?;
    let perp = a1a1.orthogonal_complement()?;
    println!("L = {l}: det {}, signature {}", l.determinant(), l.signature());
    println!("  complement of the first two basis vectors: {} with Gram {}", l.format(&perp.generators()[0]), perp.gram());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
