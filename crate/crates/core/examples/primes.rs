// First N primes from the segmented sieve, with their cached logarithms.

use feedback_zeta::primes::generate_primes;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for count in [10, 1_000, 100_000, 1_000_000] {
        let table = generate_primes(count)?;
        println!(
            "p_{count:<9} = {:>10}   ln p = {:.6}",
            table.last(),
            table.logs()[count - 1]
        );
    }
    let first = generate_primes(10)?;
    println!("first ten: {:?}", first.primes());
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
