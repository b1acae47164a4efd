//! Batch drivers over the other modules: cover records, reproduction of the
//! published tables against bundled expectations, verification of the
//! printed covers and the two heuristic searches for special covers.

mod appendix;
mod fixtures;
mod record;
mod search;
mod spaces;
mod tables;

pub use appendix::{hempel_class, verify_appendix, verify_cores, verify_six_cover, Check, Verdict};
pub use fixtures::{search_expectations, subgroup_table, subgroup_words, NamedSubgroup, SearchExpectations};
pub use record::{analyze, cover_record, CoverRecord, CoverReport, NpcSummary, SurfaceSummary};
pub use search::{
    double_cover_actions, search_cores, search_towers, CoreRow, CoreSearch, CoreSearchOptions, EDoubles, HomologyRow,
    LargeCore, TowerReport,
};
pub use spaces::{phs_lattice, rp3_report, PhsCover, PhsLattice, Rp3Report};
pub use tables::{
    reproduce_table1, reproduce_table2, reproduce_table3, reproduce_table4, Census, RowDiff, TableDataset,
};

use crate::error::{Error, Result};

/// Runs `f` on a pool of `jobs` threads (all cores when zero).
pub fn with_jobs<T: Send>(jobs: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::InvalidInput(format!("thread pool: {e}")))?;
    Ok(pool.install(f))
}
