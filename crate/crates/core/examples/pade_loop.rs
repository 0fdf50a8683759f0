// First-order Pade replacement of the delay: exact on the real axis,
// the PI factor at `a = 0`, and close to the base element at low frequency.

use feedback_zeta::blocks::{base_element, pade_factor, pi_factor, pi_params};
use feedback_zeta::cli::literal::Fixed;
use feedback_zeta::evaluator::{euler_product, pade_zeta, reference_zeta};
use feedback_zeta::primes::generate_primes;
use feedback_zeta::ComplexValue;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let p = 5;
    for b in [0.0, 0.1, 0.5, 1.0, 4.0] {
        let exact = base_element(p, ComplexValue::new(2.0, b))?;
        let pade = pade_factor(p, 2.0, ComplexValue::new(0.0, b))?;
        println!(
            "b = {b:<4} base {}  pade {}  diff {:.2e}",
            Fixed(exact, 6),
            Fixed(pade, 6),
            (exact - pade).norm()
        );
    }

    let s = ComplexValue::new(0.3, 1.7);
    let gap = (pade_factor(p, 0.0, s)? - pi_factor(&pi_params(p), s)?).norm();
    println!("a = 0: |pade - pi| = {gap:.1e}");

    let table = generate_primes(100_000)?;
    for s in [ComplexValue::new(2.0, 0.0), ComplexValue::new(2.0, 0.5)] {
        println!(
            "s = {}: pade {}  euler {}  zeta {}",
            Fixed(s, 1),
            Fixed(pade_zeta(s, &table)?, 6),
            Fixed(euler_product(s, &table)?, 6),
            Fixed(reference_zeta(s)?, 6)
        );
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
