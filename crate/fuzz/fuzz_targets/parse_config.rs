#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(cfg) = twouni_cli::parse_config(text) {
        // Resolving a parsed operator may fail, but must not panic.
        if cfg.grid.as_ref().is_some_and(|g| g.value <= 64) {
            for name in cfg.operators.keys() {
                let _ = cfg.resolve(name);
            }
        }
    }
});
