//! Loop tracing.
//!
//! Every link contributes four ports (below/above on each of its two threads).
//! Ports are joined by link edges (cross or bar pairing) and by vertical
//! thread segments, possibly running through the wrap and the site
//! permutations. Each port has degree two, so loops are the cycles.

use serde::{Deserialize, Serialize};

use super::config::{LinkKind, LoopConfiguration};
use crate::error::{Error, Result};
use crate::partition::Partition;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LoopSpectrum {
    /// Nonzero loop lengths.
    pub lengths: Partition,
    /// All loops, those of length zero included.
    pub n_loops_total: usize,
}

pub fn trace_loops(config: &LoopConfiguration) -> Result<LoopSpectrum> {
    config.validate()?;
    Tracer::default().trace(config)
}

/// Reusable buffers for repeated tracing of configurations of one size.
#[derive(Debug, Default, Clone)]
pub struct Tracer {
    events: Vec<Vec<(f64, u32)>>,
    vertical: Vec<u32>,
    crossings: Vec<u32>,
    visited: Vec<bool>,
    lengths: Vec<u32>,
}

const BELOW: u32 = 0;
const ABOVE: u32 = 1;

impl Tracer {
    /// Traces without re-validating links; malformed input can still yield an integrity error.
    pub fn trace(&mut self, config: &LoopConfiguration) -> Result<LoopSpectrum> {
        let np = config.pseudo_sites() as usize;
        let two_s = config.two_s;
        let at_wrap = config.window.zero_at_wrap();
        self.events.resize_with(np, Vec::new);
        self.events.iter_mut().for_each(Vec::clear);
        for (k, l) in config.links.iter().enumerate() {
            let base = 4 * k as u32;
            self.events[l.a as usize].push((l.time, base));
            self.events[l.b as usize].push((l.time, base + 2));
        }
        for (p, ev) in self.events.iter_mut().enumerate() {
            ev.sort_unstable_by(|x, y| x.0.total_cmp(&y.0));
            if ev.windows(2).any(|w| w[0].0 == w[1].0) {
                return Err(Error::Integrity(format!("two links share a time on thread {p}")));
            }
        }
        let n_ports = 4 * config.links.len();
        self.vertical.clear();
        self.vertical.resize(n_ports, u32::MAX);
        self.crossings.clear();
        self.crossings.resize(n_ports, 0);
        self.lengths.clear();
        let wrap_target = |p: u32| -> u32 {
            let site = p / two_s;
            site * two_s + config.site_perms[site as usize][(p % two_s) as usize]
        };

        let mut free_visited = vec![false; np];
        for p in 0..np as u32 {
            let ev = &self.events[p as usize];
            if ev.is_empty() {
                continue;
            }
            for w in ev.windows(2) {
                let (lo, hi) = (w[0].1 + ABOVE, w[1].1 + BELOW);
                let c = u32::from(!at_wrap && w[0].0 < 0.0 && w[1].0 > 0.0);
                join(&mut self.vertical, &mut self.crossings, lo, hi, c);
            }
            let (t_last, port_last) = *ev.last().expect("non-empty");
            let mut q = wrap_target(p);
            let mut skipped = 0;
            while self.events[q as usize].is_empty() {
                free_visited[q as usize] = true;
                skipped += 1;
                q = wrap_target(q);
            }
            let (t_first, port_first) = self.events[q as usize][0];
            let c = if at_wrap {
                1 + skipped
            } else {
                u32::from(t_last < 0.0) + skipped + u32::from(t_first > 0.0)
            };
            join(&mut self.vertical, &mut self.crossings, port_last + ABOVE, port_first + BELOW, c);
        }
        if self.vertical.iter().any(|&v| v == u32::MAX) {
            return Err(Error::Integrity("dangling thread segment".into()));
        }

        // Threads whose whole permutation orbit carries no link close on themselves.
        for p in 0..np as u32 {
            if free_visited[p as usize] || !self.events[p as usize].is_empty() {
                continue;
            }
            let mut len = 0;
            let mut q = p;
            loop {
                free_visited[q as usize] = true;
                len += 1;
                q = wrap_target(q);
                if q == p {
                    break;
                }
            }
            self.lengths.push(len);
        }

        self.visited.clear();
        self.visited.resize(n_ports, false);
        for start in 0..n_ports as u32 {
            if self.visited[start as usize] {
                continue;
            }
            let mut len = 0;
            let mut port = start;
            loop {
                self.visited[port as usize] = true;
                let other = link_partner(port, config.links[(port / 4) as usize].kind);
                self.visited[other as usize] = true;
                len += self.crossings[other as usize];
                port = self.vertical[other as usize];
                if port == start {
                    break;
                }
            }
            self.lengths.push(len);
        }

        let n_loops_total = self.lengths.len();
        let parts: Vec<u32> = self.lengths.iter().copied().filter(|&l| l > 0).collect();
        let lengths = Partition::from_unsorted(parts);
        if lengths.size() != np as u64 {
            return Err(Error::Integrity(format!("loop lengths sum to {} instead of {np}", lengths.size())));
        }
        Ok(LoopSpectrum { lengths, n_loops_total })
    }
}

fn join(vertical: &mut [u32], crossings: &mut [u32], x: u32, y: u32, c: u32) {
    vertical[x as usize] = y;
    vertical[y as usize] = x;
    crossings[x as usize] = c;
    crossings[y as usize] = c;
}

/// Port offsets: 0/1 below/above on thread `a`, 2/3 below/above on thread `b`.
fn link_partner(port: u32, kind: LinkKind) -> u32 {
    let base = port & !3;
    let offset = port & 3;
    let to = match kind {
        LinkKind::Cross => 3 - offset,
        LinkKind::Bar => offset ^ 2,
    };
    base + to
}
