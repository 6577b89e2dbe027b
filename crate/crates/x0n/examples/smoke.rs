use x0n::pipeline::{run, record, verify_against_paper, PipelineConfig};

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let n: u32 = args[1].parse().unwrap();
    let t0 = std::time::Instant::now();
    let mut config = PipelineConfig::new(n);
    config.use_paper_generators = true;
    match run(&config) {
        Ok(result) => {
            println!("N={n}: pipeline ok in {:.2?}", t0.elapsed());
            if let Some(eq) = &result.equation {
                println!("  equation: {}", eq.canonical_integer().0.text());
            }
            if let Some(rec) = record(n) {
                let report = verify_against_paper(&result, rec).unwrap();
                for c in &report.checks {
                    match &c.diff {
                        None => println!("  [pass] {}", c.name),
                        Some(d) => println!("  [DIFF] {}: {}", c.name, d),
                    }
                }
            }
        }
        Err(e) => {
            println!("N={n}: FAILED in {:.2?}: {e}", t0.elapsed());
            std::process::exit(1);
        }
    }
}
