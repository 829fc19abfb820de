//! Drive a seeded experiment from a JSON config and print its summary.
//!
//! ```bash
//! cargo run --release --example run_experiment -- '{"experiment":"t4","lmax":12}'
//! ```

use mdlab::harness::{self, ExperimentConfig};

fn main() -> mdlab::error::Result<()> {
    let text = std::env::args().nth(1).unwrap_or_else(|| {
        r#"{"experiment":"profile","seq":"poly:0,0,1","seeds":3,"Nmax":4096}"#.into()
    });
    let config = ExperimentConfig::from_json(&text)?;
    let dir = std::env::temp_dir().join(format!("mdlab-{}", &config.hash()[..12]));
    let out = harness::run_experiment(&config, &dir)?;
    for f in &out.files {
        println!("wrote {}", f.display());
    }
    println!("{}", serde_json::to_string_pretty(&out.summary)?);
    Ok(())
}
