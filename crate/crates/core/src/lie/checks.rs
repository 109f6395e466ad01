//! Structural checks of Lie weight systems.

use super::compile::{compile, compile_random};
use super::eval::{evaluate_tensor, for_each_coloring, Evaluator};
use super::pbw::PbwElement;
use super::spec::{gl11, AlgebraSpec};
use crate::deframing::phi;
use crate::diagram::{enumerate_ccds, enumerate_chinese_characters, enumerate_closed_characters, Ccd, ChineseCharacter};
use crate::hopf::{expand_cc, DiagramComb, HopfError};
use rand::SeedableRng;

/// `W_gl(1|1)(phi_n(v))`.
pub fn gl11_deframed(n: usize, v: &DiagramComb, ev: &mut Evaluator) -> Result<PbwElement, HopfError> {
    ev.eval_comb(&phi(n, v)?)
}

#[derive(Clone, Debug, Default)]
pub struct VanishingReport {
    pub diagrams: usize,
    pub colorings: usize,
    /// Diagram key and level of a coloring with nonzero weight that puts
    /// `G` or `H` on an edge between two vertices.
    pub coloring_violations: Vec<String>,
    pub characters: usize,
    /// Characters with fewer than `n` legs whose expansion evaluates nonzero.
    pub character_violations: Vec<String>,
}

impl VanishingReport {
    pub fn passed(&self) -> bool {
        self.coloring_violations.is_empty() && self.character_violations.is_empty()
    }
}

/// Chordless characters of degree `n` with fewer than `n` legs, including
/// those with closed components.
pub fn small_leg_characters(n: usize) -> Vec<ChineseCharacter> {
    let mut out: Vec<ChineseCharacter> = enumerate_chinese_characters(n, true).into_iter().filter(|c| c.legs() < n).collect();
    for k in 1..=n {
        for closed in enumerate_closed_characters(k) {
            if k == n {
                out.push(closed.clone());
                continue;
            }
            for open in enumerate_chinese_characters(n - k, true) {
                if open.legs() < n {
                    out.push(closed.disjoint_union(&open).canonical());
                }
            }
        }
    }
    out.sort_by_key(|c| c.key());
    out.dedup_by_key(|c| c.key());
    out
}

/// The gl(1|1) vanishing audit in degree `n`: (i) every nonzero coloring of
/// every degree-`n` CCD (deterministic and one random layout) keeps `G`
/// and `H` off vertex-to-vertex edges; (ii) characters with fewer than `n`
/// legs evaluate to zero.
pub fn check_gl11_vanishing(n: usize, seed: u64) -> VanishingReport {
    let spec = gl11();
    let mut ev = Evaluator::new(&spec);
    let (g, h) = (spec.index_of("G").unwrap() as u8, spec.index_of("H").unwrap() as u8);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut rep = VanishingReport::default();
    for d in enumerate_ccds(n) {
        if !d.edges().iter().any(|&(a, b)| !d.is_leg(a) && !d.is_leg(b)) {
            continue;
        }
        rep.diagrams += 1;
        for w in [compile(&d), compile_random(&d, &mut rng)] {
            for_each_coloring(&w, &ev.tables, |levels, _| {
                rep.colorings += 1;
                for (k, colors) in levels.iter().enumerate() {
                    for (s, &c) in colors.iter().enumerate() {
                        if (c == g || c == h) && w.internal_edge[w.levels[k][s]] {
                            rep.coloring_violations.push(format!("{} level {k} strand {s}", d.key()));
                        }
                    }
                }
            });
        }
    }
    for sigma in small_leg_characters(n) {
        rep.characters += 1;
        let img = ev.eval_comb(&expand_cc(&sigma)).expect("expansion keys decode");
        if !img.is_zero() {
            rep.character_violations.push(format!("{}: {}", sigma.key(), ev.display(&img)));
        }
    }
    rep
}

#[derive(Clone, Debug, Default)]
pub struct IndependenceReport {
    pub comparisons: usize,
    pub mismatches: Vec<(String, u64)>,
}

impl IndependenceReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Compare the word tensors of random layouts against the deterministic one
/// for every CCD of degree `1..=max_degree`, once per seed.
pub fn check_compile_independence(spec: &AlgebraSpec, max_degree: usize, seeds: &[u64]) -> IndependenceReport {
    let ev = Evaluator::new(spec);
    let mut rep = IndependenceReport::default();
    let diagrams: Vec<Ccd> = (1..=max_degree).flat_map(enumerate_ccds).collect();
    let base: Vec<_> = diagrams.iter().map(|d| evaluate_tensor(&compile(d), &ev.tables)).collect();
    for &seed in seeds {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        for (d, t) in diagrams.iter().zip(&base) {
            rep.comparisons += 1;
            let w = compile_random(d, &mut rng);
            if !w.is_consistent() || &evaluate_tensor(&w, &ev.tables) != t {
                rep.mismatches.push((d.key().to_string(), seed));
            }
        }
    }
    rep
}

#[derive(Clone, Debug, Default)]
pub struct MultiplicativityReport {
    pub pairs: usize,
    pub failures: Vec<(String, String)>,
}

impl MultiplicativityReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// `W(X # Y) = W(X) W(Y)` for CCDs of degree `1..=max_degree` with total
/// degree at most `max_total`.
pub fn check_multiplicativity(spec: &AlgebraSpec, max_degree: usize, max_total: usize) -> MultiplicativityReport {
    let mut ev = Evaluator::new(spec);
    let diagrams: Vec<Ccd> = (1..=max_degree).flat_map(enumerate_ccds).collect();
    let mut rep = MultiplicativityReport::default();
    for x in &diagrams {
        for y in &diagrams {
            if x.degree() + y.degree() > max_total {
                continue;
            }
            rep.pairs += 1;
            let (wx, wy) = (ev.eval_ccd(x), ev.eval_ccd(y));
            let prod = ev.pbw.mul(&wx, &wy);
            if ev.eval_ccd(&x.connect_sum(y)) != prod {
                rep.failures.push((x.key().to_string(), y.key().to_string()));
            }
        }
    }
    rep
}
