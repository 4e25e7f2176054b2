// Runs every verification scenario and prints a one-line summary per report.

use mukai_lattice::run_all;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let reports = run_all();
    for r in &reports {
        println!("{:<26} {:>2} checks  {}", r.name, r.checks.len(), if r.verdict { "pass" } else { "FAIL" });
    }
    let failed: Vec<&str> = reports.iter().filter(|r| !r.verdict).map(|r| r.name.as_str()).collect();
    if !failed.is_empty() {
        return Err(format!("failing scenarios: {}", failed.join(", ")).into());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
