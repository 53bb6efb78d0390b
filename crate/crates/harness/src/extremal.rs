//! Rendering for the tightness search.

use std::fmt::Write as _;

use revunc::search::SearchResult;
use revunc::Relation;
use serde::Serialize;

use crate::format::sig6;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExtremalReport {
    pub relation: Relation,
    pub best_gap: f64,
    pub defined: bool,
    /// `[re, im]` per component, with the global phase fixed so the largest component is real.
    pub best_state: Vec<[f64; 2]>,
    pub evaluations: usize,
    pub converged: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<Vec<(usize, f64)>>,
}

impl ExtremalReport {
    pub fn new(relation: Relation, result: &SearchResult) -> Self {
        let v = result.best_state.vector();
        let largest = v
            .entries()
            .iter()
            .copied()
            .fold(v[0], |m, z| if z.norm() > m.norm() { z } else { m });
        let phase = largest.conj() / largest.norm();
        Self {
            relation,
            best_gap: result.best_gap,
            defined: result.defined,
            best_state: v.entries().iter().map(|z| z * phase).map(|z| [z.re, z.im]).collect(),
            evaluations: result.evaluations,
            converged: result.converged,
            trace: result.trace.clone(),
        }
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "relation: {}", self.relation);
        if self.defined {
            let _ = writeln!(out, "best gap: {}", sig6(self.best_gap));
        } else {
            let _ = writeln!(out, "best gap: UNDEFINED everywhere searched (penalty {})", sig6(self.best_gap));
        }
        let _ = writeln!(out, "best state:");
        for (k, [re, im]) in self.best_state.iter().enumerate() {
            let _ = writeln!(out, "  [{k}] re = {:<12} im = {}", sig6(*re), sig6(*im));
        }
        let _ = writeln!(out, "evaluations: {}", self.evaluations);
        let _ = writeln!(out, "converged: {}", self.converged);
        out
    }
}
