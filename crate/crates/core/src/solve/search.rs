//! Depth-first search over label partitions of the inserted vertices.
//!
//! A state keeps the regular label classes as a sorted list of vertex masks,
//! the reserved sink class, and (without saturation) the edges built so far.
//! With saturation the built edges are always exactly the target edges among
//! the inserted vertices, so they are left out of the state.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use dashmap::{DashMap, DashSet};
use rayon::prelude::*;
use smallvec::SmallVec;

pub(crate) type Classes = SmallVec<[u64; 4]>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct State {
    pub classes: Classes,
    pub sink: u64,
    pub built: Vec<u64>,
}

impl State {
    fn inserted(&self) -> u64 {
        self.classes.iter().fold(self.sink, |acc, c| acc | c)
    }

    fn with_classes(&self, mut classes: Classes) -> State {
        classes.sort_unstable();
        State { classes, sink: self.sink, built: self.built.clone() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Target {
    Class(u64),
    New,
    Sink,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Move {
    Insert(usize, Target),
    /// Relabel the first class onto the target (an existing class or the sink).
    Merge(u64, Target),
    Join(u64, u64),
}

pub(crate) fn bits(mut m: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            return None;
        }
        let v = m.trailing_zeros() as usize;
        m &= m - 1;
        Some(v)
    })
}

pub(crate) struct Problem {
    pub adj: Vec<u64>,
    pub all: u64,
    /// Upper limit on the number of regular classes.
    pub cap: usize,
    pub sink_mode: bool,
    pub saturation: bool,
    pub dominance: bool,
    /// `lower_twins[v]`: twins of `v` with smaller ids, when twin pruning is on.
    pub lower_twins: Option<Vec<u64>>,
}

pub(crate) enum Flow {
    Found(Vec<Move>),
    Exhausted,
    OverBudget,
    Stopped,
}

struct Shared {
    visited: DashSet<State>,
    groups: DashMap<(Classes, u64), Vec<Vec<u64>>>,
    count: AtomicU64,
    budget: u64,
    stop: AtomicBool,
}

enum Admit {
    New,
    Seen,
    OverBudget,
}

impl Shared {
    fn new(budget: u64) -> Self {
        Shared {
            visited: DashSet::new(),
            groups: DashMap::new(),
            count: AtomicU64::new(0),
            budget,
            stop: AtomicBool::new(false),
        }
    }

    fn admit(&self, s: &State, dominance: bool) -> Admit {
        let fresh = if dominance {
            let mut entry = self.groups.entry((s.classes.clone(), s.sink)).or_default();
            let covered = entry.iter().any(|b| b.iter().zip(&s.built).all(|(x, y)| y & !x == 0));
            if !covered {
                entry.push(s.built.clone());
            }
            !covered
        } else {
            self.visited.insert(s.clone())
        };
        if !fresh {
            return Admit::Seen;
        }
        if self.count.fetch_add(1, Ordering::Relaxed) + 1 > self.budget {
            Admit::OverBudget
        } else {
            Admit::New
        }
    }
}

pub(crate) struct SearchResult {
    pub flow: Flow,
    pub states: u64,
}

impl Problem {
    pub fn root(&self) -> State {
        let built = if self.saturation { Vec::new() } else { vec![0; self.adj.len()] };
        State { classes: Classes::new(), sink: 0, built }
    }

    fn common(&self, c: u64) -> u64 {
        bits(c).fold(self.all, |acc, u| acc & self.adj[u])
    }

    fn neighbourhood(&self, c: u64) -> u64 {
        bits(c).fold(0, |acc, u| acc | self.adj[u])
    }

    fn accepting(&self, s: &State) -> bool {
        s.inserted() == self.all && (!self.sink_mode || s.sink != 0) && (self.saturation || s.built == self.adj)
    }

    /// Necessary conditions for a state to have an accepting completion.
    fn alive(&self, s: &State) -> bool {
        let pending = self.all & !s.inserted();
        for w in bits(pending) {
            if self.adj[w] & s.sink != 0 {
                return false;
            }
            for &c in &s.classes {
                let x = self.adj[w] & c;
                if x != 0 && x != c {
                    return false;
                }
            }
        }
        if self.saturation {
            return true;
        }
        let unbuilt = |u: usize| self.adj[u] & !s.built[u];
        if bits(s.sink).any(|u| unbuilt(u) != 0) {
            return false;
        }
        for (i, &a) in s.classes.iter().enumerate() {
            if bits(a).any(|u| unbuilt(u) & a != 0) {
                return false;
            }
            let common = self.common(a);
            for &b in &s.classes[i + 1..] {
                if b & !common != 0 && bits(a).any(|u| unbuilt(u) & b != 0) {
                    return false;
                }
            }
        }
        true
    }

    fn may_insert(&self, s: &State, v: usize) -> bool {
        match &self.lower_twins {
            Some(t) => t[v] & !s.inserted() == 0,
            None => true,
        }
    }

    /// With saturation: `v` may join class `i` (or a new class) iff every
    /// edge from `v` back into the inserted vertices is created right away.
    fn saturated_insert_ok(&self, s: &State, v: usize, target: Option<usize>) -> bool {
        let nv = self.adj[v];
        if nv & s.sink != 0 {
            return false;
        }
        let c = target.map_or(0, |i| s.classes[i]);
        if nv & c != 0 {
            return false;
        }
        let joinable = nv & self.common(c);
        s.classes.iter().enumerate().all(|(j, &d)| Some(j) == target || nv & d == 0 || d & !joinable == 0)
    }

    fn successors(&self, s: &State) -> Vec<(Move, State)> {
        let mut out = Vec::new();
        let inserted = s.inserted();
        let pending = self.all & !inserted;
        let k = s.classes.len();

        for v in bits(pending) {
            if !self.may_insert(s, v) {
                continue;
            }
            let bit = 1u64 << v;
            for i in 0..k {
                if self.saturation && !self.saturated_insert_ok(s, v, Some(i)) {
                    continue;
                }
                let mut classes = s.classes.clone();
                classes[i] |= bit;
                out.push((Move::Insert(v, Target::Class(s.classes[i])), s.with_classes(classes)));
            }
            if k < self.cap && (!self.saturation || self.saturated_insert_ok(s, v, None)) {
                let mut classes = s.classes.clone();
                classes.push(bit);
                out.push((Move::Insert(v, Target::New), s.with_classes(classes)));
            }
            if self.sink_mode && self.adj[v] == 0 {
                let mut child = s.clone();
                child.sink |= bit;
                out.push((Move::Insert(v, Target::Sink), child));
            }
        }

        for i in 0..k {
            for j in i + 1..k {
                let mut classes = s.classes.clone();
                classes[j] |= classes[i];
                classes.remove(i);
                out.push((Move::Merge(s.classes[i], Target::Class(s.classes[j])), s.with_classes(classes)));
            }
        }

        if self.sink_mode {
            for i in 0..k {
                let c = s.classes[i];
                let done = if self.saturation {
                    self.neighbourhood(c) & !inserted == 0
                } else {
                    bits(c).all(|u| s.built[u] == self.adj[u])
                };
                if done {
                    let mut classes = s.classes.clone();
                    classes.remove(i);
                    let mut child = s.with_classes(classes);
                    child.sink |= c;
                    out.push((Move::Merge(c, Target::Sink), child));
                }
            }
        }

        if !self.saturation {
            for i in 0..k {
                let a = s.classes[i];
                let common = self.common(a);
                for &b in &s.classes[i + 1..] {
                    if b & !common != 0 || bits(a).all(|u| b & !s.built[u] == 0) {
                        continue;
                    }
                    let mut child = s.clone();
                    for u in bits(a) {
                        child.built[u] |= b;
                    }
                    for u in bits(b) {
                        child.built[u] |= a;
                    }
                    out.push((Move::Join(a, b), child));
                }
            }
        }
        out
    }

    fn dfs(&self, shared: &Shared, s: &State, path: &mut Vec<Move>) -> Flow {
        if shared.stop.load(Ordering::Relaxed) {
            return Flow::Stopped;
        }
        if self.accepting(s) {
            return Flow::Found(path.clone());
        }
        for (mv, child) in self.successors(s) {
            if !self.alive(&child) {
                continue;
            }
            match shared.admit(&child, self.dominance) {
                Admit::Seen => continue,
                Admit::OverBudget => return Flow::OverBudget,
                Admit::New => {}
            }
            path.push(mv);
            let flow = self.dfs(shared, &child, path);
            path.pop();
            if !matches!(flow, Flow::Exhausted) {
                return flow;
            }
        }
        Flow::Exhausted
    }

    pub fn run(&self, budget: u64) -> SearchResult {
        let shared = Shared::new(budget);
        let root = self.root();
        let flow = match shared.admit(&root, self.dominance) {
            Admit::OverBudget => Flow::OverBudget,
            _ => self.dfs(&shared, &root, &mut Vec::new()),
        };
        SearchResult { flow, states: shared.count.load(Ordering::Relaxed) }
    }

    /// Splits the search at the root's children across the rayon pool. The
    /// visited store is shared, so the Yes/No answer is the sequential one.
    pub fn run_parallel(&self, budget: u64, jobs: usize) -> SearchResult {
        let shared = Shared::new(budget);
        let root = self.root();
        if let Admit::OverBudget = shared.admit(&root, self.dominance) {
            return SearchResult { flow: Flow::OverBudget, states: 1 };
        }
        if self.accepting(&root) {
            return SearchResult { flow: Flow::Found(Vec::new()), states: 1 };
        }
        let children: Vec<(Move, State)> = self.successors(&root).into_iter().filter(|(_, c)| self.alive(c)).collect();
        let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build().expect("thread pool");
        let flows: Vec<Flow> = pool.install(|| {
            children
                .par_iter()
                .map(|(mv, child)| {
                    let flow = match shared.admit(child, self.dominance) {
                        Admit::Seen => Flow::Exhausted,
                        Admit::OverBudget => Flow::OverBudget,
                        Admit::New => self.dfs(&shared, child, &mut vec![*mv]),
                    };
                    if matches!(flow, Flow::Found(_) | Flow::OverBudget) {
                        shared.stop.store(true, Ordering::Relaxed);
                    }
                    flow
                })
                .collect()
        });
        let states = shared.count.load(Ordering::Relaxed);
        let mut over = false;
        for flow in flows {
            match flow {
                Flow::Found(p) => return SearchResult { flow: Flow::Found(p), states },
                Flow::OverBudget => over = true,
                _ => {}
            }
        }
        SearchResult { flow: if over { Flow::OverBudget } else { Flow::Exhausted }, states }
    }
}
