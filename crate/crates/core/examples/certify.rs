//! Certifies the built-in genus-2 example at a chosen half-length.
//!
//! ```text
//! cargo run --release --example certify -- 4
//! ```

use anosov_cert::certifier::{builtin_example, run, JobConfig};

fn main() {
    let k = std::env::args()
        .nth(1)
        .and_then(|a| a.parse().ok())
        .unwrap_or(2);
    let config = JobConfig {
        half_length: k,
        ..builtin_example()
    };
    let cert = run(&config).expect("certification run");
    if let Some(s) = &cert.survey {
        println!(
            "k = {k}: {} pairs, S = {:.4}, eps = {:.4}",
            s.pair_count, s.spacing, s.eps
        );
    }
    println!("verdict: {:?}", cert.verdict);
    if let Some(d) = &cert.diagnostic {
        println!("{d}");
    }
}
