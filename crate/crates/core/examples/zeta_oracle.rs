// Accelerated eta-series evaluation of zeta(s) for Re(s) > 0.

use feedback_zeta::cli::literal::Fixed;
use feedback_zeta::evaluator::reference_zeta;
use feedback_zeta::ComplexValue;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let points = [
        ComplexValue::new(2.0, 0.0),
        ComplexValue::new(0.5, 0.0),
        ComplexValue::new(0.5, 14.134725141734693),
        ComplexValue::new(1.0, 1.0),
        ComplexValue::new(3.0, -2.0),
    ];
    for s in points {
        println!("zeta({}) = {}", Fixed(s, 4), Fixed(reference_zeta(s)?, 12));
    }
    match reference_zeta(ComplexValue::new(1.0, 0.0)) {
        Ok(v) => println!("zeta(1) = {}", Fixed(v, 12)),
        Err(e) => println!("zeta(1): {e}"),
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
