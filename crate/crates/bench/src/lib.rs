//! Shared fixtures for the criterion benchmarks.

use khovanov::diagram::LinkDiagram;
use khovanov::table::KnotTable;

/// Named diagrams spanning the sizes the benchmarks care about.
pub fn fixtures() -> Vec<(String, LinkDiagram)> {
    let table = KnotTable::load().expect("bundled table");
    ["3_1", "4_1", "6_2", "8_12", "8_19"]
        .iter()
        .map(|name| {
            (
                name.to_string(),
                table.get(name).expect("table entry").expect("valid PD"),
            )
        })
        .collect()
}
