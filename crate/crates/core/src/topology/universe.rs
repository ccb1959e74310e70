//! The window universe: the finite point pool cut out of an assignment by a
//! window bound, together with its meet closure up to a small depth.

use std::collections::BTreeSet;

use crate::model::{Elt, LimitAssignment};
use crate::scan::{self, SplitMix};

#[derive(Clone, Debug)]
pub struct WindowUniverse {
    window: u64,
    depth: u32,
    gens: Vec<Elt>,
}

impl WindowUniverse {
    /// Generators: all limits, then every entry's window values, in order,
    /// deduplicated.
    pub fn new(l: &LimitAssignment, window: u64, depth: u32) -> WindowUniverse {
        let mut seen = BTreeSet::new();
        let mut gens = Vec::new();
        for x in l.limits() {
            if seen.insert(x.clone()) {
                gens.push(x);
            }
        }
        for i in 0..l.len() {
            for v in scan::eval_window(l.seq(i), window) {
                if seen.insert(v.clone()) {
                    gens.push(v);
                }
            }
        }
        WindowUniverse {
            window,
            depth: depth.max(1),
            gens,
        }
    }

    pub fn window(&self) -> u64 {
        self.window
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    pub fn generators(&self) -> &[Elt] {
        &self.gens
    }

    /// A deterministic sample: the meet of up to `depth` generators.
    pub fn sample(&self, rng: &mut SplitMix) -> Elt {
        let count = 1 + rng.below(self.depth as u64) as usize;
        let mut out = self.gens[rng.below(self.gens.len() as u64) as usize].clone();
        for _ in 1..count {
            out = out.meet(&self.gens[rng.below(self.gens.len() as u64) as usize]);
        }
        out
    }

    /// The whole universe when it fits under the cap: generators closed
    /// under meets of up to `depth` factors.
    pub fn enumerate_capped(&self, cap: usize) -> Option<Vec<Elt>> {
        let mut seen: BTreeSet<Elt> = self.gens.iter().cloned().collect();
        let mut frontier: Vec<Elt> = self.gens.clone();
        for _ in 1..self.depth {
            let mut next = Vec::new();
            for f in &frontier {
                for g in &self.gens {
                    let m = f.meet(g);
                    if seen.insert(m.clone()) {
                        if seen.len() > cap {
                            return None;
                        }
                        next.push(m);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            frontier = next;
        }
        Some(seen.into_iter().collect())
    }

    /// Membership for depth-2 universes; falls back to enumeration beyond.
    pub fn contains(&self, x: &Elt, cap: usize) -> bool {
        if self.gens.contains(x) {
            return true;
        }
        if self.depth == 2 {
            for i in 0..self.gens.len() {
                for j in i..self.gens.len() {
                    if self.gens[i].meet(&self.gens[j]) == *x {
                        return true;
                    }
                }
            }
            return false;
        }
        self.enumerate_capped(cap)
            .map_or(false, |all| all.contains(x))
    }
}
