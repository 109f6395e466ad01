//! Layout of a CCD as a word of elementary morphisms.
//!
//! Layers run top to bottom. The bottom boundary is the Wilson legs in loop
//! order starting after `wilson[0]` (legs `1, 2, .., L-1, 0`). Conventions:
//! `Cup` creates two strands weighted by `b^{ij}`, `Cap` closes two with
//! `kappa_{ij}`, `Vertex` merges a left input `i` and right input `j` into
//! `k` with `f^k_{ij}` and reads counterclockwise (left input, output, right
//! input), `Cross` swaps two strands with the Koszul sign.

use super::LieError;
use crate::diagram::Ccd;
use rand::Rng;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Gen {
    Id,
    Cap,
    Cup,
    Vertex,
    Cross,
}

impl Gen {
    /// Strands above.
    pub fn inputs(self) -> usize {
        match self {
            Gen::Id => 1,
            Gen::Cup => 0,
            Gen::Cap | Gen::Vertex | Gen::Cross => 2,
        }
    }

    /// Strands below.
    pub fn outputs(self) -> usize {
        match self {
            Gen::Id | Gen::Vertex => 1,
            Gen::Cap => 0,
            Gen::Cup | Gen::Cross => 2,
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            Gen::Id => "|",
            Gen::Cap => "cap",
            Gen::Cup => "cup",
            Gen::Vertex => "f",
            Gen::Cross => "x",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LayerWord {
    /// Top to bottom.
    pub layers: Vec<Vec<Gen>>,
    /// Edge id of each strand per level; `levels[0]` is above the first
    /// layer and `levels[k + 1]` below layer `k`.
    pub levels: Vec<Vec<usize>>,
    /// Whether each edge joins two trivalent vertices.
    pub internal_edge: Vec<bool>,
}

impl LayerWord {
    /// A word without diagram bookkeeping; every strand gets edge id 0.
    pub fn from_layers(layers: Vec<Vec<Gen>>) -> Result<LayerWord, LieError> {
        let mut width = 0usize;
        let mut levels = vec![Vec::new()];
        for (i, l) in layers.iter().enumerate() {
            let inputs: usize = l.iter().map(|g| g.inputs()).sum();
            if inputs != width {
                return Err(LieError::Invalid(format!("layer {i} consumes {inputs} strands but {width} are present")));
            }
            width = l.iter().map(|g| g.outputs()).sum();
            levels.push(vec![0; width]);
        }
        Ok(LayerWord { layers, levels, internal_edge: vec![false] })
    }

    pub fn legs(&self) -> usize {
        self.levels.last().map_or(0, Vec::len)
    }

    pub fn crossings(&self) -> usize {
        self.layers.iter().flatten().filter(|g| **g == Gen::Cross).count()
    }

    /// Strand counts match between consecutive layers.
    pub fn is_consistent(&self) -> bool {
        self.levels.len() == self.layers.len() + 1
            && self.levels[0].is_empty()
            && self.layers.iter().enumerate().all(|(k, l)| {
                l.iter().map(|g| g.inputs()).sum::<usize>() == self.levels[k].len()
                    && l.iter().map(|g| g.outputs()).sum::<usize>() == self.levels[k + 1].len()
            })
    }
}

impl fmt::Display for LayerWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.layers {
            let parts: Vec<&str> = l.iter().map(|g| g.symbol()).collect();
            writeln!(f, "{}", parts.join(" "))?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Entry {
    edge: usize,
    /// Following the strand upward leads to this dart.
    toward: u32,
}

#[derive(Clone, Copy, Debug)]
enum Move {
    /// Bring `j` next to `i` (or `i` next to `j` when `shift_left` is false) and cup them.
    Join { i: usize, j: usize, shift_left: bool },
    Place(usize),
    /// Open an edge of vertex `v` at dart position `r` with a cap at `pos`.
    Open { v: usize, r: usize, pos: usize, vertex_left: bool },
}

struct Compiler<'a> {
    d: &'a Ccd,
    edge_of: Vec<usize>,
    placed: Vec<bool>,
    frontier: Vec<Entry>,
    /// Bottom-up: each layer with the frontier above it.
    built: Vec<(Vec<Gen>, Vec<Entry>)>,
}

fn layer(width_before: usize, at: usize, g: Gen) -> Vec<Gen> {
    let mut l = vec![Gen::Id; at];
    l.push(g);
    l.extend(std::iter::repeat(Gen::Id).take(width_before));
    l
}

impl<'a> Compiler<'a> {
    fn new(d: &'a Ccd) -> Self {
        let mut edge_of = vec![0; d.n_darts()];
        for (e, (a, b)) in d.edges().into_iter().enumerate() {
            edge_of[a as usize] = e;
            edge_of[b as usize] = e;
        }
        let l = d.legs() as u32;
        let frontier = (1..l)
            .chain((l > 0).then_some(0))
            .map(|leg| Entry { edge: edge_of[leg as usize], toward: d.partner(leg) })
            .collect();
        Compiler { d, edge_of, placed: vec![false; d.trivalent()], frontier, built: Vec::new() }
    }

    fn entry(&self, dart_from: u32) -> Entry {
        Entry { edge: self.edge_of[dart_from as usize], toward: self.d.partner(dart_from) }
    }

    fn push(&mut self, layer: Vec<Gen>, above: Vec<Entry>) {
        self.built.push((layer, above.clone()));
        self.frontier = above;
    }

    fn joins(&self) -> Vec<(usize, usize)> {
        let f = &self.frontier;
        let mut out = Vec::new();
        for i in 0..f.len() {
            for j in i + 1..f.len() {
                if f[i].edge == f[j].edge && f[i].toward != f[j].toward {
                    out.push((i, j));
                }
            }
        }
        out
    }

    fn places(&self) -> Vec<usize> {
        (0..self.frontier.len())
            .filter(|&i| match self.d.vertex_of(self.frontier[i].toward) {
                Some((v, _)) => !self.placed[v],
                None => false,
            })
            .collect()
    }

    fn cross(&mut self, k: usize) {
        let w = self.frontier.len();
        let mut above = self.frontier.clone();
        above.swap(k, k + 1);
        self.push(layer(w - k - 2, k, Gen::Cross), above);
    }

    fn apply(&mut self, m: Move) {
        match m {
            Move::Join { i, j, shift_left } => {
                let at = if shift_left {
                    for k in (i + 1..j).rev() {
                        self.cross(k);
                    }
                    i
                } else {
                    for k in i..j - 1 {
                        self.cross(k);
                    }
                    j - 1
                };
                let w = self.frontier.len();
                let mut above = self.frontier.clone();
                above.drain(at..at + 2);
                self.push(layer(w - at - 2, at, Gen::Cup), above);
            }
            Move::Place(i) => {
                let out = self.frontier[i].toward;
                let (v, _) = self.d.vertex_of(out).expect("placing a vertex dart");
                self.placed[v] = true;
                let (left, right) = (self.d.prev_ccw(out), self.d.next_ccw(out));
                let w = self.frontier.len();
                let mut above = self.frontier.clone();
                above.splice(i..i + 1, [self.entry(left), self.entry(right)]);
                self.push(layer(w - i - 1, i, Gen::Vertex), above);
            }
            Move::Open { v, r, pos, vertex_left } => {
                let o = self.d.vertex_darts(v)[r];
                let toward_o = Entry { edge: self.edge_of[o as usize], toward: o };
                let away = Entry { edge: self.edge_of[o as usize], toward: self.d.partner(o) };
                let pair = if vertex_left { [toward_o, away] } else { [away, toward_o] };
                let w = self.frontier.len();
                let mut above = self.frontier.clone();
                above.splice(pos..pos, pair);
                self.push(layer(w - pos, pos, Gen::Cap), above);
                self.apply(Move::Place(if vertex_left { pos } else { pos + 1 }));
            }
        }
    }

    fn run(mut self, mut choose: impl FnMut(&Self, Vec<(usize, usize)>, Vec<usize>) -> Move) -> LayerWord {
        let bottom = self.frontier.clone();
        loop {
            let joins = self.joins();
            let places = self.places();
            if joins.is_empty() && places.is_empty() && self.placed.iter().all(|&p| p) {
                break;
            }
            let m = choose(&self, joins, places);
            self.apply(m);
        }
        debug_assert!(self.frontier.is_empty());
        let internal_edge = self
            .d
            .edges()
            .into_iter()
            .map(|(a, b)| !self.d.is_leg(a) && !self.d.is_leg(b))
            .collect();
        let mut layers = Vec::with_capacity(self.built.len());
        let mut levels = Vec::with_capacity(self.built.len() + 1);
        for (l, above) in self.built.into_iter().rev() {
            levels.push(above.iter().map(|e| e.edge).collect());
            layers.push(l);
        }
        levels.push(bottom.iter().map(|e| e.edge).collect());
        if layers.is_empty() {
            levels = vec![Vec::new()];
        }
        LayerWord { layers, levels, internal_edge }
    }
}

/// Deterministic layout: joins first, then vertex placement, then caps.
pub fn compile(d: &Ccd) -> LayerWord {
    Compiler::new(d).run(|c, joins, places| {
        if let Some(&(i, j)) = joins.first() {
            Move::Join { i, j, shift_left: true }
        } else if let Some(&i) = places.first() {
            Move::Place(i)
        } else {
            let v = c.placed.iter().position(|&p| !p).expect("an unplaced vertex remains");
            Move::Open { v, r: 0, pos: c.frontier.len(), vertex_left: true }
        }
    })
}

/// Layout with randomly chosen moves, routing directions and cap positions.
pub fn compile_random<R: Rng>(d: &Ccd, rng: &mut R) -> LayerWord {
    Compiler::new(d).run(|c, joins, places| {
        let unplaced: Vec<usize> = (0..c.placed.len()).filter(|&v| !c.placed[v]).collect();
        let forced = joins.is_empty() && places.is_empty();
        if !unplaced.is_empty() && (forced || rng.gen_bool(0.15)) {
            return Move::Open {
                v: unplaced[rng.gen_range(0..unplaced.len())],
                r: rng.gen_range(0..3),
                pos: rng.gen_range(0..=c.frontier.len()),
                vertex_left: rng.gen_bool(0.5),
            };
        }
        let k = rng.gen_range(0..joins.len() + places.len());
        if k < joins.len() {
            let (i, j) = joins[k];
            Move::Join { i, j, shift_left: rng.gen_bool(0.5) }
        } else {
            Move::Place(places[k - joins.len()])
        }
    })
}
