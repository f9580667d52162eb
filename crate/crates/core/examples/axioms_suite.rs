//! Runs the identity catalog on every backend and prints a summary.

use quasishuffle::axioms::{run_suite, Backend, SuiteConfig};

fn main() -> quasishuffle::Result<()> {
    for backend in Backend::ALL {
        let mut cfg = SuiteConfig::new(backend);
        cfg.trials = 20;
        if backend == Backend::Words {
            cfg.catalog = "karandikar,shuffle,prelie".into();
        }
        let r = run_suite(&cfg)?;
        let skipped = r.checks.iter().filter(|c| c.skipped.is_some()).count();
        println!("{:<14} {} checks, {skipped} skipped, pass = {}", backend.name(), r.checks.len(), r.pass);
    }
    Ok(())
}
