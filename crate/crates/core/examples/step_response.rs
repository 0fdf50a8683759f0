// Exact staircase of a delay loop next to its FOPDT and Pade curves.

use feedback_zeta::simulator::{simulate_feedback_step, ApproxKind, Approximant};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let (gain, delay) = (0.5, 1.0);
    let trace = simulate_feedback_step(gain, delay, 8.0)?;
    let fopdt = Approximant::for_loop(ApproxKind::FopdtCurve, gain, delay)?;
    let pade = Approximant::for_loop(ApproxKind::PadeCurve, gain, delay)?;

    println!("{:>5}  {:>8}  {:>8}  {:>8}", "t", "exact", "fopdt", "pade");
    for i in 0..=32 {
        let t = i as f64 * 0.25;
        println!(
            "{t:>5.2}  {:>8.5}  {:>8.5}  {:>8.5}",
            trace.value_at(t).unwrap(),
            fopdt.value(t),
            pade.value(t)
        );
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
