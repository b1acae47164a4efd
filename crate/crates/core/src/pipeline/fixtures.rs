use std::collections::BTreeMap;

use serde::Deserialize;

use crate::cosets::{todd_coxeter, CosetTable};
use crate::error::{Error, Result};
use crate::fpgroup::{builtin_presentation, parse_word_list, Space, Word};

const C_WORDS: &str = include_str!("../../fixtures/c_words.txt");
const S_WORDS: &str = include_str!("../../fixtures/s_words.txt");
const E_WORDS: &str = include_str!("../../fixtures/e_words.txt");
pub(crate) const TABLE1: &str = include_str!("../../fixtures/table1.csv");
pub(crate) const TABLE2: &str = include_str!("../../fixtures/table2.csv");
pub(crate) const TABLE3: &str = include_str!("../../fixtures/table3.csv");
pub(crate) const TABLE4: &str = include_str!("../../fixtures/table4.csv");
const SEARCHES: &str = include_str!("../../fixtures/searches.json");

/// The named subgroups of the WS group given by generator words.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NamedSubgroup {
    /// The six-sheeted cover with six embedded surface components.
    SixCover,
    /// The degree-60 special cover.
    Special,
    /// The degree-24 cover with 24 surface components.
    TwentyFour,
}

impl NamedSubgroup {
    fn text(self) -> &'static str {
        match self {
            NamedSubgroup::SixCover => C_WORDS,
            NamedSubgroup::Special => S_WORDS,
            NamedSubgroup::TwentyFour => E_WORDS,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            NamedSubgroup::SixCover => "C",
            NamedSubgroup::Special => "S",
            NamedSubgroup::TwentyFour => "E",
        }
    }
}

/// Generator words in our (right action) convention. The bundled lists are
/// written for a left action, so each word is read back to front.
pub fn subgroup_words(which: NamedSubgroup) -> Result<Vec<Word>> {
    let body: String = which.text().lines().filter(|l| !l.starts_with('#')).collect::<Vec<_>>().join("\n");
    let words = parse_word_list(&body).map_err(|e| Error::CorruptFixture(format!("{} words: {e}", which.name())))?;
    Ok(words.into_iter().map(|w| Word::from_letters(w.letters().iter().rev().copied().collect())).collect())
}

/// Coset table of the subgroup generated by the words.
pub fn subgroup_table(which: NamedSubgroup) -> Result<CosetTable> {
    let words = subgroup_words(which)?;
    todd_coxeter(&builtin_presentation(Space::Ws), &words, 10_000)
}

/// Rows of a bundled CSV, keyed by header.
pub(crate) fn csv_rows(text: &str) -> Result<(Vec<String>, Vec<Vec<String>>)> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let header = r.headers().map_err(|e| Error::CorruptFixture(e.to_string()))?.iter().map(String::from).collect();
    let mut rows = Vec::new();
    for rec in r.records() {
        let rec = rec.map_err(|e| Error::CorruptFixture(e.to_string()))?;
        rows.push(rec.iter().map(|f| f.trim().to_string()).collect());
    }
    Ok((header, rows))
}

#[derive(Clone, Debug, Deserialize)]
pub struct Degree9Expectation {
    pub classes: usize,
    pub homology: String,
    pub core_degree: usize,
    pub components: usize,
    pub pentagons: usize,
    pub genus: i64,
    pub core_homology: String,
}

#[derive(Clone, Debug, Deserialize)]
pub struct Core1344Expectation {
    pub classes: usize,
    pub eight_components: usize,
}

#[derive(Clone, Debug, Deserialize)]
pub struct TowerExpectation {
    pub doubles: usize,
    pub doubles_fpf: usize,
    pub second_doubles: usize,
    pub second_doubles_fpf: usize,
    pub e_components: usize,
    pub e_doubles_fpf: usize,
    pub e_distribution: BTreeMap<usize, usize>,
}

/// Published numbers for the two heuristic searches.
#[derive(Clone, Debug, Deserialize)]
pub struct SearchExpectations {
    pub core_indices: Vec<usize>,
    pub core_max_build: usize,
    pub degree9_two_component: Degree9Expectation,
    pub core_1344: Core1344Expectation,
    pub towers: TowerExpectation,
}

pub fn search_expectations() -> SearchExpectations {
    serde_json::from_str(SEARCHES).expect("bundled search expectations")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cosets::is_conjugate;
    use crate::dodecomplex::appendix::{six_cover, special_cover};

    #[test]
    fn words_give_the_named_covers() {
        let c = subgroup_table(NamedSubgroup::SixCover).unwrap();
        assert!(is_conjugate(&c, &six_cover().action.as_table()));
        let s = subgroup_table(NamedSubgroup::Special).unwrap();
        assert!(is_conjugate(&s, &special_cover().action.as_table()));
        assert_eq!(subgroup_table(NamedSubgroup::TwentyFour).unwrap().index(), 24);
    }

    #[test]
    fn bundled_tables_parse() {
        for t in [TABLE1, TABLE2, TABLE3, TABLE4] {
            let (h, rows) = csv_rows(t).unwrap();
            assert!(rows.iter().all(|r| r.len() == h.len()));
        }
        assert_eq!(search_expectations().towers.e_distribution.values().sum::<usize>(), 131_071);
    }
}
