//! Exhaustive search for truncations of a fixed genus with a fixed conductor.
//!
//! Points of the box `[0, c]` are decided in (modulus, lex) order. Including
//! a point forces every capped sum and every min with the points already in;
//! excluding it makes those forcings fail later. Two genus bounds prune:
//! a saturated chain is at least as long as the longest chain through
//! included points and at most as long as the longest chain through points
//! not yet excluded.

use crate::valsgp::{Point, ValueTruncation};

#[derive(Clone, Copy, PartialEq, Eq)]
enum State {
    Unknown,
    In,
    Out,
}

struct Grid {
    c: Point,
    strides: Vec<usize>,
    len: usize,
}

impl Grid {
    fn new(c: &[u32]) -> Self {
        let mut strides = vec![0; c.len()];
        let mut len = 1;
        for k in (0..c.len()).rev() {
            strides[k] = len;
            len *= c[k] as usize + 1;
        }
        Self {
            c: c.to_vec(),
            strides,
            len,
        }
    }

    fn index(&self, p: &[u32]) -> usize {
        p.iter().zip(&self.strides).map(|(&x, s)| x as usize * s).sum()
    }

    fn point(&self, idx: usize) -> Point {
        self.strides
            .iter()
            .zip(&self.c)
            .map(|(s, &c)| ((idx / s) % (c as usize + 1)) as u32)
            .collect()
    }
}

struct Search<'a> {
    grid: &'a Grid,
    points: Vec<Point>,
    state: Vec<State>,
    members: Vec<usize>,
    trail: Vec<usize>,
    genus: u32,
    modulus: u32,
    found: Vec<ValueTruncation>,
}

impl Search<'_> {
    fn set_in(&mut self, idx: usize, pending: &mut Vec<usize>) -> bool {
        match self.state[idx] {
            State::In => true,
            State::Out => false,
            State::Unknown => {
                self.state[idx] = State::In;
                self.trail.push(idx);
                pending.push(idx);
                true
            }
        }
    }

    /// Include `idx` and everything it forces; `false` on a conflict.
    fn include(&mut self, idx: usize) -> bool {
        let mut pending = Vec::new();
        if !self.set_in(idx, &mut pending) {
            return false;
        }
        while let Some(x) = pending.pop() {
            let px = self.grid.point(x);
            self.members.push(x);
            for k in 0..self.members.len() {
                let py = self.grid.point(self.members[k]);
                let sum: Point = px.iter().zip(&py).zip(&self.grid.c).map(|((a, b), c)| (a + b).min(*c)).collect();
                let min: Point = px.iter().zip(&py).map(|(a, b)| *a.min(b)).collect();
                let (s, m) = (self.grid.index(&sum), self.grid.index(&min));
                if !self.set_in(s, &mut pending) || !self.set_in(m, &mut pending) {
                    return false;
                }
            }
        }
        true
    }

    fn exclude(&mut self, idx: usize) -> bool {
        match self.state[idx] {
            State::In => false,
            State::Out => true,
            State::Unknown => {
                self.state[idx] = State::Out;
                self.trail.push(idx);
                true
            }
        }
    }

    fn undo(&mut self, mark: usize, members: usize) {
        for idx in self.trail.drain(mark..) {
            self.state[idx] = State::Unknown;
        }
        self.members.truncate(members);
    }

    /// Most points of the admitted set on a monotone path from `0` to `c`.
    fn longest_chain(&self, admit: impl Fn(State) -> bool) -> u32 {
        let g = self.grid;
        let mut best = vec![0u32; g.len];
        for idx in 0..g.len {
            let mut b = 0;
            for (k, &s) in g.strides.iter().enumerate() {
                if (idx / s) % (g.c[k] as usize + 1) > 0 {
                    b = b.max(best[idx - s]);
                }
            }
            best[idx] = b + u32::from(admit(self.state[idx]));
        }
        best[g.len - 1]
    }

    fn genus_window(&self) -> (u32, u32) {
        let hi = self.longest_chain(|s| s != State::Out);
        let lo = self.longest_chain(|s| s == State::In);
        (self.modulus + 1 - hi, self.modulus + 1 - lo)
    }

    fn run(&mut self, k: usize) {
        let (gmin, gmax) = self.genus_window();
        if gmin > self.genus || gmax < self.genus {
            return;
        }
        let Some(pos) = (k..self.points.len()).find(|&i| self.state[self.grid.index(&self.points[i])] == State::Unknown) else {
            self.leaf();
            return;
        };
        let idx = self.grid.index(&self.points[pos]);
        let (mark, members) = (self.trail.len(), self.members.len());
        if self.include(idx) {
            self.run(pos + 1);
        }
        self.undo(mark, members);
        if self.exclude(idx) {
            self.run(pos + 1);
        }
        self.undo(mark, members);
    }

    fn leaf(&mut self) {
        let r = self.grid.c.len();
        let elems = (0..self.grid.len)
            .filter(|&i| self.state[i] == State::In)
            .map(|i| self.grid.point(i));
        let t = ValueTruncation::new(r, self.grid.c.clone(), elems).expect("box points");
        if t.is_valid() && t.genus() == self.genus {
            self.found.push(t.canonical_form());
        }
    }
}

/// All valid truncations with conductor `c` and genus `genus`, canonicalized
/// (possibly with repeats when `c` has equal coordinates).
pub(crate) fn search_conductor(c: &[u32], genus: u32) -> Vec<ValueTruncation> {
    let grid = Grid::new(c);
    let r = c.len();
    let mut state = vec![State::Unknown; grid.len];
    for (idx, s) in state.iter_mut().enumerate() {
        let p = grid.point(idx);
        // Locality: only 0 may have a zero coordinate.
        if p.contains(&0) && p.iter().any(|&x| x > 0) {
            *s = State::Out;
        }
    }
    for i in 0..r {
        if c[i] > 0 {
            let mut p = c.to_vec();
            p[i] -= 1;
            state[grid.index(&p)] = State::Out;
        }
    }
    let mut points: Vec<Point> = (0..grid.len)
        .filter(|&i| state[i] == State::Unknown)
        .map(|i| grid.point(i))
        .collect();
    points.sort_by_key(|p| (p.iter().sum::<u32>(), p.clone()));

    let mut s = Search {
        grid: &grid,
        points,
        state,
        members: Vec::new(),
        trail: Vec::new(),
        genus,
        modulus: c.iter().sum(),
        found: Vec::new(),
    };
    let zero = grid.index(&vec![0; r]);
    let top = grid.len - 1;
    if !(s.include(zero) && s.include(top)) {
        return Vec::new();
    }
    s.trail.clear();
    s.run(0);
    s.found
}
