// The unit-gain loop seen as a PI controller `1/2 + 1/(s ln p)`.
//
// Close to s = 0 on the imaginary axis the PI factor tracks the base
// element; on the real axis the PI product collapses toward zero.

use feedback_zeta::blocks::{base_element, pi_factor, pi_params};
use feedback_zeta::cli::literal::Fixed;
use feedback_zeta::evaluator::{partial_products_scaled, Method};
use feedback_zeta::primes::generate_primes;
use feedback_zeta::simulator::{pi_step_response, simulate_feedback_step};
use feedback_zeta::ComplexValue;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let s = ComplexValue::new(0.0, 0.2);
    for p in [2, 3, 5, 7] {
        let exact = base_element(p, s)?;
        let pi = pi_factor(&pi_params(p), s)?;
        println!("p = {p}: base {}  pi {}", Fixed(exact, 6), Fixed(pi, 6));
    }

    // the line 1/2 + t/ln 2 passes through every step midpoint
    let trace = simulate_feedback_step(1.0, std::f64::consts::LN_2, 5.0)?;
    for n in 1..=5 {
        let t = (2 * n - 1) as f64 * std::f64::consts::LN_2 / 2.0;
        println!(
            "t = {t:.4}  staircase {}  pi line {}",
            trace.value_at(t).unwrap(),
            pi_step_response(&pi_params(2), t)
        );
    }

    let table = generate_primes(10_000)?;
    let partial = partial_products_scaled(Method::Pi, ComplexValue::new(2.0, 0.0), &table)?;
    for n in [1, 10, 100, 1_000, 10_000] {
        println!(
            "N = {n:>5}  log10 |PI product| = {:.2}",
            partial[n - 1].log10_norm()
        );
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
