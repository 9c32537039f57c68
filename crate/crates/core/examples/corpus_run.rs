//! Runs the acceptance suite over the shipped corpus and prints one line per
//! criterion. Pass a seed as the first argument.

use marked_sset::suite::run_all;

fn main() {
  let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(0);
  for r in run_all(seed) {
    println!("{}", r.line());
  }
}
