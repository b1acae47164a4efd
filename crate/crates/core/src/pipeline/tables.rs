use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use super::fixtures::{csv_rows, TABLE1, TABLE2, TABLE3, TABLE4};
use super::record::{cover_record, CoverRecord};
use super::search::TowerReport;
use super::spaces::PhsCover;
use super::with_jobs;
use crate::cosets::{low_index_classes_with_jobs, PermutationAction, Provenance, SubgroupRecord};
use crate::error::{Error, Result};
use crate::fpgroup::{builtin_presentation, Space};
use crate::homology::AbelianGroup;

/// A row present on only one side, or with different values.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RowDiff {
    pub key: Vec<String>,
    pub expected: Option<Vec<String>>,
    pub computed: Option<Vec<String>>,
}

/// Computed rows of one published table and their differences from the
/// bundled expectation.
#[derive(Clone, Debug, Serialize)]
pub struct TableDataset {
    pub table: String,
    pub columns: Vec<String>,
    /// The leading columns that identify a row.
    pub key_columns: usize,
    pub rows: Vec<Vec<String>>,
    pub diff: Vec<RowDiff>,
    pub notes: Vec<String>,
}

impl TableDataset {
    pub fn passes(&self) -> bool {
        self.diff.is_empty()
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.columns).expect("in-memory csv");
        for r in &self.rows {
            w.write_record(r).expect("in-memory csv");
        }
        String::from_utf8(w.into_inner().expect("in-memory csv")).expect("csv is utf-8")
    }

    fn build(
        table: &str,
        columns: &[&str],
        key_columns: usize,
        computed: BTreeMap<Vec<String>, Vec<String>>,
        expected: BTreeMap<Vec<String>, Vec<String>>,
    ) -> TableDataset {
        let mut diff = Vec::new();
        for (k, v) in &expected {
            match computed.get(k) {
                Some(c) if c == v => {}
                c => diff.push(RowDiff { key: k.clone(), expected: Some(v.clone()), computed: c.cloned() }),
            }
        }
        for (k, v) in &computed {
            if !expected.contains_key(k) {
                diff.push(RowDiff { key: k.clone(), expected: None, computed: Some(v.clone()) });
            }
        }
        TableDataset {
            table: table.into(),
            columns: columns.iter().map(|s| s.to_string()).collect(),
            key_columns,
            rows: computed
                .into_iter()
                .map(|(mut k, v)| {
                    k.extend(v);
                    k
                })
                .collect(),
            diff,
            notes: Vec::new(),
        }
    }
}

fn normalize_homology(s: &str) -> Result<String> {
    Ok(s.parse::<AbelianGroup>()?.to_string())
}

/// Reads a bundled table, normalizing homology columns, and sums the value
/// column over repeated keys when `sum` is set.
fn expected_rows(
    text: &str,
    columns: &[&str],
    key_columns: usize,
    sum: bool,
) -> Result<BTreeMap<Vec<String>, Vec<String>>> {
    let (header, rows) = csv_rows(text)?;
    let idx: Vec<usize> = columns
        .iter()
        .map(|c| header.iter().position(|h| h == c).ok_or_else(|| Error::CorruptFixture(format!("missing column {c}"))))
        .collect::<Result<_>>()?;
    let mut out: BTreeMap<Vec<String>, Vec<String>> = BTreeMap::new();
    for r in rows {
        let mut fields = Vec::with_capacity(idx.len());
        for (&i, c) in idx.iter().zip(columns) {
            fields.push(if *c == "homology" { normalize_homology(&r[i])? } else { r[i].clone() });
        }
        let v = fields.split_off(key_columns);
        match out.get_mut(&fields) {
            Some(old) if sum => {
                let total: usize = old[0].parse::<usize>().unwrap_or(0) + v[0].parse::<usize>().unwrap_or(0);
                old[0] = total.to_string();
            }
            Some(_) => return Err(Error::CorruptFixture(format!("duplicate row {fields:?}"))),
            None => {
                out.insert(fields, v);
            }
        }
    }
    Ok(out)
}

/// All covers of one space up to some degree, with their records.
#[derive(Clone, Debug)]
pub struct Census {
    pub space: Space,
    pub max_index: usize,
    pub classes: Vec<SubgroupRecord>,
    pub records: Vec<CoverRecord>,
}

impl Census {
    pub fn run(space: Space, max_index: usize, jobs: usize) -> Result<Census> {
        let classes = low_index_classes_with_jobs(&builtin_presentation(space), max_index, jobs)?;
        let records = with_jobs(jobs, || {
            classes
                .par_iter()
                .map(|c| cover_record(space, &c.action(), c.provenance.clone()))
                .collect::<Result<Vec<_>>>()
        })??;
        Ok(Census { space, max_index, classes, records })
    }

    /// A census from stored covers (e.g. the files written by `enumerate`),
    /// sorted the way the enumeration sorts them.
    pub fn from_covers(space: Space, covers: Vec<(PermutationAction, Provenance)>, jobs: usize) -> Result<Census> {
        let mut classes: Vec<SubgroupRecord> = covers
            .into_iter()
            .map(|(a, provenance)| {
                Ok(SubgroupRecord { table: a.to_table(0)?.canonical(), generator_words: None, provenance })
            })
            .collect::<Result<_>>()?;
        classes.sort_by_key(|a| (a.degree(), a.table.flat()));
        let max_index = classes.iter().map(SubgroupRecord::degree).max().unwrap_or(0);
        let records = with_jobs(jobs, || {
            classes
                .par_iter()
                .map(|c| cover_record(space, &c.action(), c.provenance.clone()))
                .collect::<Result<Vec<_>>>()
        })??;
        Ok(Census { space, max_index, classes, records })
    }

    pub fn degree_counts(&self) -> BTreeMap<usize, usize> {
        let mut m = BTreeMap::new();
        for r in &self.records {
            *m.entry(r.degree).or_default() += 1;
        }
        m
    }
}

const TABLE1_COLUMNS: [&str; 6] = ["degree", "homology", "betti", "components", "embedded", "count"];

/// Homology, Betti number, surface components and embeddedness of every
/// cover of WS up to degree nine.
pub fn reproduce_table1(census: &Census) -> Result<TableDataset> {
    let mut computed: BTreeMap<Vec<String>, usize> = BTreeMap::new();
    for r in &census.records {
        let key = vec![
            r.degree.to_string(),
            r.homology.to_string(),
            r.betti.to_string(),
            r.components.to_string(),
            r.embedded_label(),
        ];
        *computed.entry(key).or_default() += 1;
    }
    let computed = computed.into_iter().map(|(k, n)| (k, vec![n.to_string()])).collect();
    let mut t =
        TableDataset::build("table1", &TABLE1_COLUMNS, 5, computed, expected_rows(TABLE1, &TABLE1_COLUMNS, 5, false)?);
    for (d, n) in census.degree_counts() {
        t.notes.push(format!("degree {d}: {n} covers"));
    }
    t.notes.push(format!("total {}", census.records.len()));
    Ok(t)
}

const TABLE2_COLUMNS: [&str; 3] = ["homology", "components", "count"];

/// Fixed-point free double covers of the six-sheeted cover.
pub fn reproduce_table2(towers: &TowerReport) -> Result<TableDataset> {
    let computed = towers
        .table2
        .iter()
        .map(|r| (vec![r.homology.to_string(), r.components.to_string()], vec![r.count.to_string()]))
        .collect();
    let mut t =
        TableDataset::build("table2", &TABLE2_COLUMNS, 2, computed, expected_rows(TABLE2, &TABLE2_COLUMNS, 2, false)?);
    t.notes.push(format!("{} doubles, {} fixed-point free", towers.doubles, towers.doubles_fpf));
    if !towers.doubles_all_embedded {
        t.notes.push("some double cover has a non-embedded surface component".into());
    }
    Ok(t)
}

const TABLE3_COLUMNS: [&str; 2] = ["components", "count"];

/// Fixed-point free double covers of the double covers, counted by number
/// of surface components. The printed table splits some counts into
/// several columns; those are compared summed.
pub fn reproduce_table3(towers: &TowerReport) -> Result<TableDataset> {
    let computed = towers.table3.iter().map(|(c, n)| (vec![c.to_string()], vec![n.to_string()])).collect();
    let mut t =
        TableDataset::build("table3", &TABLE3_COLUMNS, 1, computed, expected_rows(TABLE3, &TABLE3_COLUMNS, 1, true)?);
    t.notes
        .push(format!("{} doubles of doubles, {} fixed-point free", towers.second_doubles, towers.second_doubles_fpf));
    t.notes.push("printed sub-columns with equal component counts are compared summed".into());
    Ok(t)
}

const TABLE4_COLUMNS: [&str; 8] =
    ["degree", "subgroup_order", "f_vector", "embedded", "components", "regular", "deck_order", "topological_type"];

fn yes_no(b: bool) -> String {
    if b { "yes" } else { "no" }.into()
}

/// Covers of the Poincare homology sphere, one per subgroup class. The
/// topological type is carried over from the bundled table, not computed.
pub fn reproduce_table4(covers: &[PhsCover]) -> Result<TableDataset> {
    let expected = expected_rows(TABLE4, &TABLE4_COLUMNS, 1, false)?;
    let computed = covers
        .iter()
        .map(|c| {
            let key = vec![c.degree.to_string()];
            let (v, e, f, k) = c.f_vector.as_tuple();
            let topo = expected.get(&key).map_or_else(|| "?".to_string(), |r| r[6].clone());
            let row = vec![
                c.subgroup_order.to_string(),
                format!("{v} {e} {f} {k}"),
                yes_no(c.all_embedded),
                c.components.to_string(),
                yes_no(c.regular),
                c.image_order.to_string(),
                topo,
            ];
            (key, row)
        })
        .collect();
    let mut t = TableDataset::build("table4", &TABLE4_COLUMNS, 1, computed, expected);
    t.notes.push("topological types are not recomputed".into());
    Ok(t)
}
