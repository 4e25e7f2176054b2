// Integer solutions of 4d² + 6de = t, i.e. classes dD + eE of square t in (4, 3; 3, 0).

use mukai_lattice::solve_wall_equation;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for t in [-8, -6, -4, -2, 0, 10, 40] {
        println!("t = {t:>3}: {}", solve_wall_equation(t));
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
