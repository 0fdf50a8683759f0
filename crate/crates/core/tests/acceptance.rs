//! Acceptance suite: one line per criterion, non-zero exit if any fails.
//!
//! Runs as a plain binary (`harness = false`) so the per-criterion report is
//! always printed by `cargo test`.

use std::f64::consts::{LN_2, PI};
use std::panic::{self, AssertUnwindSafe};
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use feedback_zeta::blocks::{fopdt_params, pade_factor, pi_factor, pi_params};
use feedback_zeta::evaluator::{
    self, euler_product, fopdt_zeta, partial_products, partial_products_scaled, Method,
};
use feedback_zeta::primes::generate_primes;
use feedback_zeta::simulator::{
    geometric_level, pi_step_response, simulate_feedback_step, staircase_levels,
};
use feedback_zeta::ComplexValue;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const BIN: &str = env!("CARGO_BIN_EXE_feedback-zeta");
const MILLION: &str = "1000000";

/// Expected four-decimal FOPDT values on the real axis.
const TABLE3: [(u32, &str); 10] = [
    (2, "1.6449"),
    (3, "1.2021"),
    (4, "1.0823"),
    (5, "1.0369"),
    (6, "1.0173"),
    (7, "1.0083"),
    (8, "1.0041"),
    (9, "1.0020"),
    (10, "1.0010"),
    (12, "1.0002"),
];

/// `(re, im)` in units of the fourth decimal.
type Units = (i64, i64);

/// Expected `(b, fopdt, zeta)` values at `s = 2 + ib`.
const TABLE4: [(&str, Units, Units); 10] = [
    ("0.1", (16351, -928), (16350, -927)),
    ("0.2", (16067, -1799), (16067, -1798)),
    ("0.3", (15627, -2567), (15628, -2565)),
    ("0.4", (15075, -3202), (15079, -3198)),
    ("0.5", (14455, -3692), (14463, -3688)),
    ("0.6", (13807, -4041), (13821, -4037)),
    ("0.7", (13165, -4262), (13187, -4261)),
    ("0.8", (12552, -4375), (12582, -4378)),
    ("0.9", (11980, -4399), (12018, -4410)),
    ("1.0", (11459, -4353), (11504, -4375)),
];

type Check = fn(&Path) -> Result<String, String>;

fn main() {
    let dir = tempfile::tempdir().expect("temp dir");
    let criteria: [(u32, &str, Check); 10] = [
        (1, "Table 3 reproduction", table3_reproduction),
        (2, "Table 4 reproduction", table4_reproduction),
        (3, "Euler product convergence at s = 2", euler_convergence),
        (
            4,
            "FOPDT equals Euler on the real axis",
            real_axis_exactness,
        ),
        (
            5,
            "Staircase equals unrolled loop and geometric sum",
            staircase_oracle,
        ),
        (6, "PI line through delay midpoints", pi_midpoints),
        (
            7,
            "Pade loop coincides with PI at a = 0",
            pade_pi_coincidence,
        ),
        (8, "Residence time identity", residence_time_identity),
        (9, "PI product decreases without limit", pi_divergence),
        (10, "Table commands are byte-deterministic", determinism),
    ];

    let mut failed = 0;
    for (id, name, check) in criteria {
        let outcome = panic::catch_unwind(AssertUnwindSafe(|| check(dir.path())))
            .unwrap_or_else(|e| Err(panic_message(e)));
        match outcome {
            Ok(detail) => println!("[PASS] {id:>2} {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("[FAIL] {id:>2} {name}: {detail}");
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}

fn panic_message(e: Box<dyn std::any::Any + Send>) -> String {
    e.downcast_ref::<String>()
        .cloned()
        .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
        .unwrap_or_else(|| "panicked".to_string())
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Runs the CLI, writing to `out`; returns the elapsed time.
fn run_cli(args: &[&str], out: &Path) -> Result<Duration, String> {
    let start = Instant::now();
    let status = Command::new(BIN)
        .args(args)
        .arg("--out")
        .arg(out)
        .status()
        .map_err(|e| format!("cannot run {BIN}: {e}"))?;
    let elapsed = start.elapsed();
    ensure(status.success(), || {
        format!("`{}` exited with {status}", args.join(" "))
    })?;
    Ok(elapsed)
}

/// Data rows of a pretty table (header and rule skipped), split on whitespace.
fn pretty_rows(path: &Path) -> Vec<Vec<String>> {
    let text = std::fs::read_to_string(path).expect("table output");
    text.lines()
        .skip(2)
        .map(|l| l.split_whitespace().map(str::to_string).collect())
        .collect()
}

fn table3_reproduction(dir: &Path) -> Result<String, String> {
    let out = dir.join("table3_a.txt");
    let elapsed = run_cli(&["table3", "--primes", MILLION], &out)?;
    let rows = pretty_rows(&out);
    ensure(rows.len() == TABLE3.len(), || {
        format!("expected 10 rows, got {}", rows.len())
    })?;
    for (row, (a, expected)) in rows.iter().zip(TABLE3) {
        ensure(row[0] == a.to_string(), || {
            format!("row order: got a = {}", row[0])
        })?;
        ensure(row[1] == expected, || {
            format!("a = {a}: got {}, expected {expected}", row[1])
        })?;
    }

    let csv = dir.join("table3.csv");
    run_cli(&["table3", "--primes", MILLION, "--format", "csv"], &csv)?;
    let text = std::fs::read_to_string(&csv).unwrap();
    let first: Vec<&str> = text.lines().nth(1).unwrap().split(',').collect();
    let zeta2: f64 = first[1].parse().map_err(|e| format!("{e}"))?;
    let err = (zeta2 - PI * PI / 6.0).abs();
    ensure(err < 1e-4, || format!("|fopdt(2) - pi^2/6| = {err:e}"))?;
    ensure(elapsed < Duration::from_secs(5), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!(
        "10/10 values match at 4 decimals, |fopdt(2) - pi^2/6| = {err:.2e}, {elapsed:.2?}"
    ))
}

fn parse_units(re: &str, sign: &str, im: &str) -> Result<(i64, i64), String> {
    let re: f64 = re.parse().map_err(|_| format!("bad real part `{re}`"))?;
    let im: f64 = im
        .trim_end_matches('i')
        .parse()
        .map_err(|_| format!("bad imaginary part `{im}`"))?;
    let im = if sign == "-" { -im } else { im };
    Ok(((re * 1e4).round() as i64, (im * 1e4).round() as i64))
}

fn table4_reproduction(dir: &Path) -> Result<String, String> {
    let out = dir.join("table4_a.txt");
    let elapsed = run_cli(&["table4", "--primes", MILLION], &out)?;
    let rows = pretty_rows(&out);
    ensure(rows.len() == TABLE4.len(), || {
        format!("expected 10 rows, got {}", rows.len())
    })?;
    let mut exact = 0;
    for (row, (b, fopdt, zeta)) in rows.iter().zip(TABLE4) {
        ensure(row[0] == b, || format!("row order: got b = {}", row[0]))?;
        let got_fopdt = parse_units(&row[1], &row[2], &row[3])?;
        let got_ref = parse_units(&row[4], &row[5], &row[6])?;
        for (what, got, want) in [("fopdt", got_fopdt, fopdt), ("reference", got_ref, zeta)] {
            let off = (got.0 - want.0).abs().max((got.1 - want.1).abs());
            ensure(off <= 1, || {
                format!("b = {b} {what}: got {got:?}, expected {want:?} (1e-4 units)")
            })?;
            exact += usize::from(off == 0);
        }
    }
    ensure(elapsed < Duration::from_secs(10), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!(
        "20/20 values within 1 unit of the 4th decimal ({exact} exact), {elapsed:.2?}"
    ))
}

fn euler_convergence(_: &Path) -> Result<String, String> {
    let start = Instant::now();
    let table = generate_primes(1_000_000).map_err(|e| e.to_string())?;
    let v = euler_product(ComplexValue::new(2.0, 0.0), &table).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let err = (v - PI * PI / 6.0).norm();
    ensure(err < 1e-6, || format!("error {err:e}"))?;
    ensure(elapsed < Duration::from_secs(2), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!("|P - pi^2/6| = {err:.2e}, {elapsed:.2?}"))
}

fn real_axis_exactness(_: &Path) -> Result<String, String> {
    let table = generate_primes(10_000).unwrap();
    let mut worst: f64 = 0.0;
    for a in 2..=12 {
        let s = ComplexValue::new(a as f64, 0.0);
        let f = fopdt_zeta(s, &table).unwrap();
        let e = euler_product(s, &table).unwrap();
        let rel = (f - e).norm() / e.norm();
        worst = worst.max(rel);
        ensure(rel < 1e-12, || {
            format!("a = {a}: relative difference {rel:e}")
        })?;
    }
    Ok(format!(
        "max relative difference {worst:.2e} over a = 2..12"
    ))
}

/// The loop unrolled by hand: `1 + K(1 + K(1 + …))`, `n` delays deep.
fn unrolled(k: f64, n: usize) -> f64 {
    if n == 0 {
        1.0
    } else {
        1.0 + k * unrolled(k, n - 1)
    }
}

fn ulps(x: f64, y: f64) -> u64 {
    (x.to_bits() as i64 - y.to_bits() as i64).unsigned_abs()
}

fn staircase_oracle(_: &Path) -> Result<String, String> {
    let mut worst = 0;
    for k in [1.0, 0.5, 0.25, 1e-3] {
        for delay in [LN_2, 1.0] {
            let trace =
                simulate_feedback_step(k, delay, 30.0 * delay).map_err(|e| e.to_string())?;
            ensure(trace.breakpoints.len() == 31, || {
                format!("K = {k}: {} breakpoints", trace.breakpoints.len())
            })?;
            let levels = staircase_levels(k, 30).unwrap();
            for (n, &(t, y)) in trace.breakpoints.iter().enumerate() {
                ensure(t == n as f64 * delay, || format!("breakpoint {n} at {t}"))?;
                let brute = unrolled(k, n);
                ensure(y.to_bits() == brute.to_bits(), || {
                    format!("K = {k}, n = {n}: {y} vs unrolled {brute}")
                })?;
                if n > 0 {
                    ensure(levels[n - 1].to_bits() == y.to_bits(), || {
                        format!("K = {k}, n = {n}: levels differ")
                    })?;
                }
                let d = ulps(y, geometric_level(k, n));
                worst = worst.max(d);
                ensure(d <= 4, || {
                    format!("K = {k}, n = {n}: {d} ulp from closed form")
                })?;
            }
        }
    }
    Ok(format!(
        "bit-exact against unrolled sums, max {worst} ulp from closed form"
    ))
}

fn pi_midpoints(_: &Path) -> Result<String, String> {
    let params = pi_params(2);
    for n in 1..=8u32 {
        let t = (2 * n - 1) as f64 * LN_2 / 2.0;
        let y = pi_step_response(&params, t);
        ensure(y == n as f64, || format!("n = {n}: y = {y}"))?;
    }
    Ok("y((2n-1) ln2/2) = n exactly for n = 1..8".to_string())
}

fn pade_pi_coincidence(_: &Path) -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0007);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let modulus = 10f64.powf(rng.gen_range(-1.0..=2.0));
        let angle = rng.gen_range(0.0..2.0 * PI);
        let s = ComplexValue::from_polar(modulus, angle);
        for p in [2, 3, 5] {
            let pade = pade_factor(p, 0.0, s).unwrap();
            let pi = pi_factor(&pi_params(p), s).unwrap();
            let d = (pade - pi).norm();
            worst = worst.max(d);
            ensure(d < 1e-12, || format!("p = {p}, s = {s}: difference {d:e}"))?;
        }
    }
    Ok(format!("300 comparisons, max difference {worst:.2e}"))
}

fn residence_time_identity(_: &Path) -> Result<String, String> {
    let primes = generate_primes(1229).unwrap();
    ensure(primes.last() == 9973, || {
        "prime table below 10^4".to_string()
    })?;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0008);
    let mut worst = 0;
    for _ in 0..1000 {
        let p = primes.primes()[rng.gen_range(0..primes.len())];
        let a = rng.gen_range(0.5..=12.0);
        let f = fopdt_params(p, a).unwrap();
        let expected = (p as f64).ln() / (1.0 - f.loop_gain);
        let d = ulps(f.time_constant + f.dead_time, expected);
        worst = worst.max(d);
        ensure(d <= 4, || format!("p = {p}, a = {a}: {d} ulp"))?;
    }
    Ok(format!("1000 pairs, max {worst} ulp"))
}

fn pi_divergence(_: &Path) -> Result<String, String> {
    let table = generate_primes(10_000).unwrap();
    let s = ComplexValue::new(2.0, 0.0);
    let scaled = partial_products_scaled(Method::Pi, s, &table).unwrap();
    ensure(
        scaled
            .iter()
            .all(|v| v.mantissa.im == 0.0 && v.mantissa.re > 0.0),
        || "PI product left the positive real axis".to_string(),
    )?;
    // mantissas are normalized to [1, 2), so (exponent, mantissa) orders positive reals
    let key = |n: usize| (scaled[n - 1].exponent, scaled[n - 1].mantissa.re);
    for n in 2..=10_000 {
        ensure(key(n) < key(n - 1), || format!("P_{n} >= P_{}", n - 1))?;
    }
    let below_half = (1..=10_000).find(|&n| scaled[n - 1].exponent <= -2);
    let Some(first) = below_half else {
        return Err("never falls below 0.5".to_string());
    };

    // the extended-range values are the plain products wherever those are normal
    let plain = partial_products(Method::Pi, s, &table).unwrap();
    for n in [1, 2, 10, 100, 1000] {
        let direct = evaluator::pi_zeta(s, table.prefix(n).unwrap()).unwrap();
        ensure(
            direct == plain[n - 1] && direct == scaled[n - 1].to_complex(),
            || format!("N = {n}: extended-range value differs from pi_zeta"),
        )?;
    }
    let underflow = plain
        .iter()
        .position(|v| v.re < f64::MIN_POSITIVE)
        .map_or(0, |i| i + 1);
    Ok(format!(
        "strictly decreasing for N = 1..10^4, below 0.5 from N = {first}, log10 P_10^4 = {:.1} \
         (plain f64 product leaves the normal range at N = {underflow})",
        scaled[9_999].log10_norm()
    ))
}

fn determinism(dir: &Path) -> Result<String, String> {
    let mut checked = Vec::new();
    for cmd in ["table3", "table4"] {
        let first = dir.join(format!("{cmd}_a.txt"));
        if !first.exists() {
            run_cli(&[cmd, "--primes", MILLION], &first)?;
        }
        let second = dir.join(format!("{cmd}_b.txt"));
        run_cli(&[cmd, "--primes", MILLION], &second)?;
        let (a, b) = (
            std::fs::read(&first).unwrap(),
            std::fs::read(&second).unwrap(),
        );
        ensure(!a.is_empty() && a == b, || {
            format!("{cmd} output differs between runs")
        })?;
        checked.push(format!("{cmd} {} bytes", a.len()));
    }
    Ok(format!("identical reruns ({})", checked.join(", ")))
}
