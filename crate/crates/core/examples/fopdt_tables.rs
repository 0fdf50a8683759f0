// FOPDT products on the real axis and along `s = 2 + ib`, with the
// oracle values beside them.

use feedback_zeta::blocks::{fopdt_factor, fopdt_params, fopdt_params_naive};
use feedback_zeta::cli::{table3, table4, Format};

use feedback_zeta::cli::literal::Fixed;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let p3 = fopdt_params(3, 1.0)?;
    let naive = fopdt_params_naive(3, 1.0)?;
    println!(
        "p = 3, a = 1: K = {:.6}  T = {:.6}  dead time = {:.6}  (naive T = {:.6})",
        p3.loop_gain, p3.time_constant, p3.dead_time, naive.time_constant
    );
    println!("factor at b = 0.5: {}", Fixed(fopdt_factor(&p3, 0.5), 6));
    println!();

    print!("{}", table3(1_000_000)?.render(Format::Pretty));
    println!();
    print!("{}", table4(1_000_000)?.render(Format::Pretty));
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
