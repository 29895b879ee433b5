//! Table rows instantiated the same way the self-check does.
#![allow(dead_code)]

use nichols_core::tables::builtin_rows;
use nichols_core::DynkinData;

pub struct Instance {
    pub row: String,
    pub label: String,
    pub base: DynkinData,
}

pub fn all_instances(p: u64) -> Vec<Instance> {
    let mut out = Vec::new();
    for row in builtin_rows(p).unwrap() {
        for inst in row.instantiations(p).unwrap() {
            let base = row.diagrams[0].instantiate(&inst.ctx, &inst.assignment);
            out.push(Instance { row: row.id.clone(), label: inst.label, base });
        }
    }
    out
}

pub fn instances(p: u64, id: &str) -> Vec<Instance> {
    let v: Vec<Instance> = all_instances(p).into_iter().filter(|i| i.row == id).collect();
    assert!(!v.is_empty(), "no row {id} for p = {p}");
    v
}
