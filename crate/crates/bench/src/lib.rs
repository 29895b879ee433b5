//! Shared fixtures for the benchmarks.

use nichols_core::tables::builtin_rows;
use nichols_core::DynkinData;

/// First diagram of a table row, instantiated the way the self-check does.
pub fn row_diagram(p: u64, id: &str) -> DynkinData {
    let row = builtin_rows(p).expect("supported characteristic").into_iter().find(|r| r.id == id).expect("known row");
    let inst = row.instantiations(p).expect("row instantiates").remove(0);
    row.diagrams[0].instantiate(&inst.ctx, &inst.assignment)
}

/// Every row's first diagram for `p`.
pub fn all_row_diagrams(p: u64) -> Vec<DynkinData> {
    builtin_rows(p).expect("supported characteristic").into_iter().map(|r| row_diagram(p, &r.id)).collect()
}
