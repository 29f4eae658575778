#![no_main]

use libfuzzer_sys::fuzz_target;
use twouni_cli::parse_table_rows;
use twouni_core::make_grid;

// First byte picks the grid, the rest is newline-separated rows.
fuzz_target!(|data: &[u8]| {
    let Some((&n, rest)) = data.split_first() else { return };
    let Ok(grid) = make_grid(u32::from(n % 8) + 1) else { return };
    let Ok(text) = std::str::from_utf8(rest) else { return };
    let rows: Vec<&str> = text.lines().collect();
    if let Ok(table) = parse_table_rows(&rows, grid) {
        assert_eq!(table.size(), grid.len());
    }
});
