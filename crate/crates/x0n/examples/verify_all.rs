use x0n::pipeline::{all_records, verify_level};

fn main() {
    let only: Option<u32> = std::env::args().nth(1).and_then(|s| s.parse().ok());
    for rec in all_records() {
        if let Some(n) = only {
            if rec.n != n { continue; }
        }
        let t0 = std::time::Instant::now();
        match verify_level(rec.n) {
            Ok(report) => {
                let fails: Vec<_> = report.checks.iter().filter(|c| c.diff.is_some()).collect();
                if fails.is_empty() {
                    println!("N={}: all {} checks pass ({:.1?})", rec.n, report.checks.len(), t0.elapsed());
                } else {
                    println!("N={}: {}/{} DIFF ({:.1?})", rec.n, fails.len(), report.checks.len(), t0.elapsed());
                    for c in fails {
                        println!("   {}: {}", c.name, c.diff.as_ref().unwrap());
                    }
                }
            }
            Err(e) => println!("N={}: ERROR {e} ({:.1?})", rec.n, t0.elapsed()),
        }
    }
}
