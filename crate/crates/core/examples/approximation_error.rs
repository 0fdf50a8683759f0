// Worst and mean deviation of each approximant from the exact staircase.

use feedback_zeta::simulator::{approximation_error, simulate_feedback_step, ApproxKind};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let delay = std::f64::consts::LN_2;
    let n_max = 20;
    for gain in [1.0, 0.9, 0.5, 0.25, 0.01] {
        let trace = simulate_feedback_step(gain, delay, (n_max + 1) as f64 * delay)?;
        let kinds: &[ApproxKind] = if gain == 1.0 {
            &[ApproxKind::PiLine, ApproxKind::PadeCurve]
        } else {
            &[ApproxKind::FopdtCurve, ApproxKind::PadeCurve]
        };
        for &kind in kinds {
            let report = approximation_error(&trace, kind, n_max)?;
            println!(
                "K = {gain:<5} {:<6} max {:.4e}  mean {:.4e}",
                kind.name(),
                report.max_abs,
                report.mean_abs
            );
        }
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
