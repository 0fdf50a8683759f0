// Truncated Euler products converging to zeta(s) as primes are added.

use feedback_zeta::cli::literal::Fixed;
use feedback_zeta::evaluator::{euler_product, reference_zeta};
use feedback_zeta::primes::generate_primes;
use feedback_zeta::ComplexValue;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let table = generate_primes(1_000_000)?;
    for s in [ComplexValue::new(2.0, 0.0), ComplexValue::new(1.5, 3.0)] {
        let zeta = reference_zeta(s)?;
        println!("s = {}, zeta(s) = {}", Fixed(s, 1), Fixed(zeta, 12));
        for n in [10, 100, 1_000, 10_000, 100_000, 1_000_000] {
            let v = euler_product(s, table.prefix(n)?)?;
            println!(
                "  N = {n:>8}  P = {}  |P - zeta| = {:.3e}",
                Fixed(v, 12),
                (v - zeta).norm()
            );
        }
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
