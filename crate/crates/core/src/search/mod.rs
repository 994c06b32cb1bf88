//! Exhaustive desk-scale searches and their proof records.
//!
//! Every search splits its root into top-level branches that are explored
//! independently (each with its own incumbent) on a rayon pool and merged by
//! branch index, so results and node counts do not depend on the number of
//! worker threads.

mod boxes;
mod brute;
mod grid;

use std::fmt::{self, Write};
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::error::usage;
use crate::Result;

pub use boxes::{min_nontrivial_boxes, BoxSearch};
pub use brute::{brute_force_graphs, BruteReport};
pub use grid::{enumerate_extremal, min_grid_boxes, verify_theorem1, ExtremalReport, GridSearch, Tile};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchLimits {
    /// Abort (inconclusive) once more nodes than this have been expanded.
    pub node_budget: Option<u64>,
    pub timeout: Option<Duration>,
    /// Worker threads; 1 keeps everything on the calling thread.
    pub threads: usize,
    /// Unlocks parameter values whose searches take minutes rather than seconds.
    pub extended: bool,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits { node_budget: None, timeout: None, threads: 1, extended: false }
    }
}

impl SearchLimits {
    pub fn threads(mut self, threads: usize) -> Self {
        self.threads = threads;
        self
    }

    pub fn budget(mut self, nodes: u64) -> Self {
        self.node_budget = Some(nodes);
        self
    }

    pub fn extended(mut self) -> Self {
        self.extended = true;
        self
    }
}

const FLUSH_EVERY: u64 = 1024;

/// Shared node counter and abort flag.
pub(crate) struct Ctx<'a> {
    limits: &'a SearchLimits,
    start: Instant,
    nodes: AtomicU64,
    aborted: AtomicBool,
}

impl<'a> Ctx<'a> {
    pub(crate) fn new(limits: &'a SearchLimits) -> Self {
        Ctx { limits, start: Instant::now(), nodes: AtomicU64::new(0), aborted: AtomicBool::new(false) }
    }

    /// Counts one node; false once the search must stop.
    #[inline]
    pub(crate) fn tick(&self, pending: &mut u64) -> bool {
        *pending += 1;
        if *pending >= FLUSH_EVERY {
            self.flush(pending)
        } else {
            !self.aborted.load(Ordering::Relaxed)
        }
    }

    pub(crate) fn flush(&self, pending: &mut u64) -> bool {
        let total = self.nodes.fetch_add(*pending, Ordering::Relaxed) + *pending;
        *pending = 0;
        let over_budget = self.limits.node_budget.is_some_and(|b| total > b);
        let timed_out = self.limits.timeout.is_some_and(|t| self.start.elapsed() > t);
        if over_budget || timed_out {
            self.aborted.store(true, Ordering::Relaxed);
        }
        !self.aborted.load(Ordering::Relaxed)
    }

    pub(crate) fn nodes(&self) -> u64 {
        self.nodes.load(Ordering::Relaxed)
    }

    pub(crate) fn elapsed_ms(&self) -> u128 {
        self.start.elapsed().as_millis()
    }

    /// Reason the search stopped early, if it did.
    pub(crate) fn stop_reason(&self) -> Option<String> {
        if !self.aborted.load(Ordering::Relaxed) {
            return None;
        }
        match (self.limits.node_budget, self.limits.timeout) {
            (Some(b), _) if self.nodes() > b => Some(format!("node budget {b} exhausted")),
            (_, Some(t)) => Some(format!("timeout after {} s", t.as_secs_f64())),
            _ => Some("search aborted".into()),
        }
    }

    /// Runs `f` on every branch and returns the results in branch order.
    pub(crate) fn run_branches<B, T, F>(&self, branches: &[B], f: F) -> Result<Vec<T>>
    where
        B: Sync,
        T: Send,
        F: Fn(&B, &mut u64) -> T + Sync,
    {
        let run = |b: &B| {
            let mut pending = 0;
            let out = f(b, &mut pending);
            self.flush(&mut pending);
            out
        };
        if self.limits.threads <= 1 {
            return Ok(branches.iter().map(run).collect());
        }
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(self.limits.threads)
            .build()
            .map_err(|e| usage(format!("cannot start {} worker threads: {e}", self.limits.threads)))?;
        Ok(pool.install(|| branches.par_iter().map(run).collect()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Conclusion {
    /// The least value is attained and nothing smaller exists.
    Minimum(usize),
    /// Exhausted: no object of size at most the bound.
    NoneUpTo(usize),
    Exists,
    Absent,
    /// An enumeration finished and every class was accounted for.
    Enumerated { objects: usize, classes: usize },
    /// The search finished but contradicts the expected statement.
    Failed(String),
    Inconclusive(String),
}

impl Conclusion {
    /// 0 confirmed, 1 refuted or nothing found, 3 inconclusive.
    pub fn exit_code(&self) -> i32 {
        match self {
            Conclusion::Minimum(_) | Conclusion::Exists | Conclusion::Enumerated { .. } => 0,
            Conclusion::NoneUpTo(_) | Conclusion::Absent | Conclusion::Failed(_) => 1,
            Conclusion::Inconclusive(_) => 3,
        }
    }

    pub fn is_inconclusive(&self) -> bool {
        matches!(self, Conclusion::Inconclusive(_))
    }
}

impl fmt::Display for Conclusion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Conclusion::Minimum(m) => write!(f, "minimum {m}"),
            Conclusion::NoneUpTo(m) => write!(f, "none <= {m}"),
            Conclusion::Exists => f.write_str("exists"),
            Conclusion::Absent => f.write_str("none"),
            Conclusion::Enumerated { objects, classes } => write!(f, "enumerated {objects} objects in {classes} classes"),
            Conclusion::Failed(why) => write!(f, "failed: {why}"),
            Conclusion::Inconclusive(why) => write!(f, "inconclusive: {why}"),
        }
    }
}

/// One searched sub-range and what it produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RangeEntry {
    pub label: String,
    pub nodes: u64,
    pub result: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub name: String,
    pub text: String,
}

/// Outcome of an exhaustive run in a stable line-oriented text form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProofRecord {
    pub statement: String,
    pub params: Vec<(String, String)>,
    pub ranges: Vec<RangeEntry>,
    pub justification: Vec<String>,
    pub nodes: u64,
    pub elapsed_ms: u128,
    pub conclusion: Conclusion,
    pub witnesses: Vec<Witness>,
}

impl ProofRecord {
    pub(crate) fn new(statement: &str) -> Self {
        ProofRecord {
            statement: statement.into(),
            params: Vec::new(),
            ranges: Vec::new(),
            justification: Vec::new(),
            nodes: 0,
            elapsed_ms: 0,
            conclusion: Conclusion::Absent,
            witnesses: Vec::new(),
        }
    }

    pub(crate) fn param(mut self, name: &str, value: impl fmt::Display) -> Self {
        self.params.push((name.into(), value.to_string()));
        self
    }

    pub(crate) fn justify(mut self, line: &str) -> Self {
        self.justification.push(line.into());
        self
    }

    pub(crate) fn witness(&mut self, name: impl Into<String>, text: impl Into<String>) {
        self.witnesses.push(Witness { name: name.into(), text: text.into() });
    }

    pub fn exit_code(&self) -> i32 {
        self.conclusion.exit_code()
    }

    fn render(&self, timing: bool) -> String {
        let mut out = String::from("proof-record 1\n");
        writeln!(out, "statement: {}", self.statement).unwrap();
        for (k, v) in &self.params {
            writeln!(out, "param: {k} = {v}").unwrap();
        }
        for r in &self.ranges {
            writeln!(out, "range: {} | nodes {} | {}", r.label, r.nodes, r.result).unwrap();
        }
        for j in &self.justification {
            writeln!(out, "justification: {j}").unwrap();
        }
        writeln!(out, "nodes: {}", self.nodes).unwrap();
        if timing {
            writeln!(out, "elapsed_ms: {}", self.elapsed_ms).unwrap();
        }
        writeln!(out, "conclusion: {}", self.conclusion).unwrap();
        for w in &self.witnesses {
            writeln!(out, "witness: {}", w.name).unwrap();
            for line in w.text.lines() {
                writeln!(out, "  {line}").unwrap();
            }
        }
        out
    }

    /// Text without timing fields; identical across runs and thread counts.
    pub fn stable_text(&self) -> String {
        self.render(false)
    }
}

impl fmt::Display for ProofRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(true))
    }
}
