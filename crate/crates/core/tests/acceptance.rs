//! Acceptance criteria 1 to 7, one line each. Exits nonzero if any fails.

use marked_sset::suite::run_criterion;

const SEED: u64 = 20240601;

fn main() {
  let mut failed = 0;
  for id in 1..=7 {
    let r = run_criterion(id, SEED);
    println!("{}", r.line());
    if !r.passed {
      failed += 1;
    }
  }
  println!("acceptance: {} of 7 criteria pass (seed {SEED})", 7 - failed);
  if failed > 0 {
    std::process::exit(1);
  }
}
