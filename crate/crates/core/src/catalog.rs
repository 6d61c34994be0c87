//! Built-in links with known data, used by the test suites and the CLI
//! `--known` mode. The fixture data ships as JSON mirroring the braid text
//! and raw graph grammars.

use serde::{Deserialize, Serialize};

use crate::bounds::BestBounds;
use crate::braid::BraidWord;
use crate::graph::{RawGraph, SeifertGraph};

const FIXTURES_JSON: &str = include_str!("../fixtures/fixtures.json");

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct BraidInput {
    pub word: String,
    pub strands: usize,
}

/// Expected per-bound values; braid-side bounds are absent for raw-graph
/// fixtures or when the coil prefix does not exist.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct ExpectedBounds {
    pub bk_braid: Option<usize>,
    pub bk_diagram: usize,
    pub fp_braid: Option<usize>,
    pub fp_diagram: usize,
    pub fp_refined: usize,
    pub fpbk_braid: Option<usize>,
    pub fpbk_signed_counts: Option<usize>,
    pub fpbk_diagram_min_beta: usize,
    pub best: BestBounds,
    pub exact_bk: Option<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct Fixture {
    pub name: String,
    pub braid: Option<BraidInput>,
    pub graph: Option<RawGraph>,
    pub l: usize,
    pub genus: usize,
    pub alternating: bool,
    pub positive: bool,
    pub expected: ExpectedBounds,
}

impl Fixture {
    pub fn braid_word(&self) -> Option<BraidWord> {
        self.braid.as_ref().map(|b| {
            BraidWord::parse(&b.word, Some(b.strands)).expect("fixture braid words parse")
        })
    }

    pub fn seifert_graph(&self) -> SeifertGraph {
        if let Some(word) = self.braid_word() {
            return word.closure_seifert_graph();
        }
        let raw = self.graph.as_ref().expect("fixture has a braid or a graph");
        SeifertGraph::from_raw(raw).expect("fixture graphs validate")
    }
}

/// All built-in fixtures: the unknot, the (2,k) torus family through k = 8
/// (Hopf link and trefoil among them), the figure-eight knot, and the
/// four-circle seven-band link given as a raw graph.
pub fn load_fixtures() -> Vec<Fixture> {
    serde_json::from_str(FIXTURES_JSON).expect("embedded fixture JSON parses")
}

pub fn find_fixture(name: &str) -> Option<Fixture> {
    load_fixtures().into_iter().find(|f| f.name == name)
}

/// Boundary-component count of the four-circle seven-band fixture, frozen
/// after tracing its drawn diagram once: the outermost circle encloses the
/// other three, and following the strands through the seven bands closes up
/// into three components. Cross-checks: c - s + l = 7 - 4 + 3 is even, and
/// the genus (2 - l - s + c)/2 = 1 is a nonnegative integer.
pub fn fixture_l_for_figure2() -> usize {
    3
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_load_and_validate() {
        let fixtures = load_fixtures();
        assert!(fixtures.len() >= 11);
        for fixture in &fixtures {
            let g = fixture.seifert_graph();
            g.validate().unwrap_or_else(|e| panic!("{}: {e}", fixture.name));
            assert!(g.is_connected(), "{} disconnected", fixture.name);
            assert_eq!(g.l, fixture.l, "{} boundary count", fixture.name);
            assert_eq!(
                (g.c() + g.s + g.l) % 2,
                0,
                "{} parity c-s+l",
                fixture.name
            );
            assert_eq!(
                g.canonical_surface_genus().unwrap(),
                fixture.genus,
                "{} genus",
                fixture.name
            );
        }
    }

    #[test]
    fn fixture_flags_match_words() {
        for fixture in load_fixtures() {
            if let Some(word) = fixture.braid_word() {
                assert_eq!(word.is_positive(), fixture.positive, "{}", fixture.name);
                assert_eq!(
                    word.is_alternating_closure(),
                    fixture.alternating,
                    "{}",
                    fixture.name
                );
            }
        }
    }

    #[test]
    fn figure2_frozen_l() {
        let fixture = find_fixture("figure2").unwrap();
        assert_eq!(fixture.graph.as_ref().unwrap().l, fixture_l_for_figure2());
        assert_eq!(fixture_l_for_figure2() % 2, 1);
    }

    #[test]
    fn lookup_by_name() {
        assert!(find_fixture("trefoil").is_some());
        assert!(find_fixture("nope").is_none());
    }
}
