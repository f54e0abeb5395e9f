//! Line protocol over a live index.
//!
//! ```text
//! P <sym>      prepend a symbol (silent)
//! D            delete the first symbol (silent)
//! Q <pattern>  "count pos..." (0-based, ascending)
//! A            suffix array
//! L            lcp array
//! V            "OK" / "FAIL" against the oracles
//! S            statistics as one JSON line
//! ```
//!
//! Errors are answered with `ERR <reason>` and the loop continues.

use std::io::{BufRead, Write};

use lcpindex::metrics::OpRecorder;
use lcpindex::{CounterSnapshot, Error, SuffixTree};
use serde_json::json;

use crate::{extend_recorded, join, occurrences_line, to_symbols, verify_tree, write_stats, Opts};

struct Session<'a> {
    opts: &'a Opts,
    tree: SuffixTree,
    extends: OpRecorder,
    contracts: OpRecorder,
}

impl Session<'_> {
    /// Runs one command; `Some(line)` is the reply.
    fn exec(&mut self, line: &str) -> Option<String> {
        let (cmd, arg) = match line.split_once(' ') {
            Some((c, a)) => (c, Some(a)),
            None => (line, None),
        };
        match (cmd, arg) {
            ("P", Some(a)) => {
                let sym = match to_symbols(a.as_bytes(), self.opts.tokens) {
                    Ok(s) if s.len() == 1 => s[0],
                    Ok(_) => return Some("ERR expected one symbol".into()),
                    Err(e) => return Some(format!("ERR {e}")),
                };
                if let Err(e) = extend_recorded(&mut self.tree, sym, &mut self.extends) {
                    return Some(format!("ERR {e}"));
                }
                self.after_mutation()
            }
            ("D", None) => {
                let probes = self.tree.index().list().counters().snapshot().probes;
                match self.tree.contract_front() {
                    Err(Error::Underflow) => return Some("ERR underflow".into()),
                    Err(e) => return Some(format!("ERR {e}")),
                    Ok(_) => {}
                }
                let c = self.tree.last_cost();
                self.contracts.record(CounterSnapshot {
                    steps: c.steps,
                    rebuild_steps: c.rebuild_steps,
                    probes: self.tree.index().list().counters().snapshot().probes - probes,
                    char_reads: 0,
                });
                self.after_mutation()
            }
            ("Q", arg) => match to_symbols(arg.unwrap_or("").as_bytes(), self.opts.tokens) {
                Ok(p) => Some(occurrences_line(&self.tree.locate(&p).positions)),
                Err(e) => Some(format!("ERR {e}")),
            },
            ("A", None) => Some(join(&self.tree.dump_suffix_array().0)),
            ("L", None) => Some(join(&self.tree.dump_suffix_array().1)),
            ("V", None) => Some(match verify_tree(&self.tree, self.opts.verify_limit) {
                Ok(true) => "OK".into(),
                Ok(false) => "FAIL".into(),
                Err(e) => format!("ERR {e}"),
            }),
            ("S", None) => Some(self.stats_line()),
            _ => Some(format!("ERR unknown command {line:?}")),
        }
    }

    /// With `--verify`, every mutation is checked; only failures answer.
    fn after_mutation(&self) -> Option<String> {
        if !self.opts.verify {
            return None;
        }
        match verify_tree(&self.tree, self.opts.verify_limit) {
            Ok(true) => None,
            Ok(false) => Some("ERR verification failed".into()),
            Err(e) => Some(format!("ERR {e}")),
        }
    }

    fn stats_line(&self) -> String {
        let v = json!({
            "len": self.tree.text().user_len(),
            "nodes": self.tree.node_count(),
            "shape": self.tree.index().list().shape(),
            "ops": [self.extends.finish("extend", self.extends.len() as u64),
                    self.contracts.finish("contract", self.contracts.len() as u64)],
        });
        v.to_string()
    }
}

pub fn run(opts: &Opts, input: impl BufRead, mut out: impl Write) -> Result<(), String> {
    let mut s = Session {
        opts,
        tree: SuffixTree::with_options(opts.seed, opts.bucket_b),
        extends: OpRecorder::default(),
        contracts: OpRecorder::default(),
    };
    for line in input.lines() {
        let line = line.map_err(|e| e.to_string())?;
        let line = line.strip_suffix('\r').unwrap_or(&line);
        if line.is_empty() {
            continue;
        }
        if let Some(reply) = s.exec(line) {
            writeln!(out, "{reply}").map_err(|e| e.to_string())?;
        }
    }
    out.flush().map_err(|e| e.to_string())?;
    write_stats(
        &opts.stats,
        &[
            s.extends.finish("extend", s.extends.len() as u64),
            s.contracts.finish("contract", s.contracts.len() as u64),
        ],
    )
}
