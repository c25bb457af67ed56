//! The built-in test corpus, shipped as problem files.

use crate::frontend::{parse, ProblemFile};
use crate::gmaction::GradedAlgebra;

#[derive(Debug, Clone, Copy)]
pub struct CorpusEntry {
    pub name: &'static str,
    pub source: &'static str,
}

impl CorpusEntry {
    pub fn problem(&self) -> ProblemFile {
        parse(self.source).unwrap_or_else(|e| panic!("corpus file {} is invalid: {e}", self.name))
    }

    pub fn algebra(&self) -> GradedAlgebra {
        let p = self.problem();
        GradedAlgebra::new(&p.ring, p.ideal).expect("parser checks homogeneity")
    }
}

macro_rules! entry {
    ($name:literal) => {
        CorpusEntry {
            name: $name,
            source: include_str!(concat!("../../corpus/", $name, ".gm")),
        }
    };
}

pub fn corpus() -> Vec<CorpusEntry> {
    vec![
        entry!("line_wm3"),
        entry!("line_wm2"),
        entry!("line_wm1"),
        entry!("line_w0"),
        entry!("line_w1"),
        entry!("line_w2"),
        entry!("line_w3"),
        entry!("plane_1_m1"),
        entry!("axes"),
        entry!("cone"),
        entry!("hypersurface"),
        entry!("space_2_0_m1"),
        entry!("trivial_double"),
        entry!("contracting_2_3"),
        entry!("point"),
    ]
}

pub fn corpus_entry(name: &str) -> Option<CorpusEntry> {
    corpus().into_iter().find(|e| e.name == name)
}
