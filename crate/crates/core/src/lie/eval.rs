//! State-sum evaluation of layer words and the weight system `W_L`.

use super::compile::{compile, Gen, LayerWord};
use super::pbw::{Pbw, PbwElement};
use super::spec::AlgebraSpec;
use crate::diagram::{CanonKey, Ccd};
use crate::hopf::{ccd_of, generate_stu, DiagramComb, HopfError};
use crate::linear::Rational;
use num_traits::{One, Zero};
use std::collections::HashMap;

/// Coefficient of each colour word on the bottom boundary.
pub type WordTensor = HashMap<Vec<u8>, Rational>;

/// Sparse views of the structure tensors.
#[derive(Clone, Debug)]
pub struct Tables {
    pub dim: usize,
    pub odd: Vec<bool>,
    pub kappa: Vec<Rational>,
    pub b: Vec<(u8, u8, Rational)>,
    /// `f_by_inputs[i * dim + j]` lists `(k, f^k_{ij})`.
    pub f_by_inputs: Vec<Vec<(u8, Rational)>>,
}

impl Tables {
    pub fn new(a: &AlgebraSpec) -> Tables {
        let d = a.dim;
        let mut b = Vec::new();
        let mut kappa = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                kappa.push(a.kappa(i, j).clone());
                if !a.b(i, j).is_zero() {
                    b.push((i as u8, j as u8, a.b(i, j).clone()));
                }
            }
        }
        let f_by_inputs = (0..d * d)
            .map(|ij| {
                (0..d)
                    .filter(|&k| !a.f(ij / d, ij % d, k).is_zero())
                    .map(|k| (k as u8, a.f(ij / d, ij % d, k).clone()))
                    .collect()
            })
            .collect();
        Tables { dim: d, odd: a.parity.iter().map(|&p| p == 1).collect(), kappa, b, f_by_inputs }
    }

    /// All ways to push colours `above` through one layer.
    fn expand(&self, layer: &[Gen], above: &[u8], coeff: &Rational) -> Vec<(Vec<u8>, Rational)> {
        let mut partial: Vec<(Vec<u8>, Rational)> = vec![(Vec::new(), coeff.clone())];
        let mut pos = 0;
        for g in layer {
            match g {
                Gen::Id => {
                    for (c, _) in partial.iter_mut() {
                        c.push(above[pos]);
                    }
                }
                Gen::Cross => {
                    let (i, j) = (above[pos], above[pos + 1]);
                    let flip = self.odd[i as usize] && self.odd[j as usize];
                    for (c, w) in partial.iter_mut() {
                        c.push(j);
                        c.push(i);
                        if flip {
                            *w = -w.clone();
                        }
                    }
                }
                Gen::Cap => {
                    let k = &self.kappa[above[pos] as usize * self.dim + above[pos + 1] as usize];
                    if k.is_zero() {
                        return Vec::new();
                    }
                    for (_, w) in partial.iter_mut() {
                        *w *= k;
                    }
                }
                Gen::Cup => {
                    let mut next = Vec::with_capacity(partial.len() * self.b.len());
                    for (c, w) in &partial {
                        for (i, j, v) in &self.b {
                            let mut c2 = c.clone();
                            c2.push(*i);
                            c2.push(*j);
                            next.push((c2, w * v));
                        }
                    }
                    partial = next;
                }
                Gen::Vertex => {
                    let fs = &self.f_by_inputs[above[pos] as usize * self.dim + above[pos + 1] as usize];
                    if fs.is_empty() {
                        return Vec::new();
                    }
                    let mut next = Vec::with_capacity(partial.len() * fs.len());
                    for (c, w) in &partial {
                        for (k, v) in fs {
                            let mut c2 = c.clone();
                            c2.push(*k);
                            next.push((c2, w * v));
                        }
                    }
                    partial = next;
                }
            }
            pos += g.inputs();
        }
        partial
    }
}

/// Signed state sum of a layer word.
pub fn evaluate_tensor(w: &LayerWord, t: &Tables) -> WordTensor {
    let mut state: WordTensor = HashMap::from([(Vec::new(), Rational::one())]);
    for layer in &w.layers {
        let mut next: WordTensor = HashMap::new();
        for (colors, c) in &state {
            for (out, v) in t.expand(layer, colors, c) {
                *next.entry(out).or_insert_with(Rational::zero) += v;
            }
        }
        next.retain(|_, v| !v.is_zero());
        state = next;
    }
    state
}

/// Visit every coloring with nonzero weight, with the colours at each level.
pub fn for_each_coloring(w: &LayerWord, t: &Tables, mut visit: impl FnMut(&[Vec<u8>], &Rational)) {
    fn rec(w: &LayerWord, t: &Tables, path: &mut Vec<Vec<u8>>, c: &Rational, visit: &mut dyn FnMut(&[Vec<u8>], &Rational)) {
        let k = path.len() - 1;
        if k == w.layers.len() {
            visit(path, c);
            return;
        }
        let above = path[k].clone();
        for (out, v) in t.expand(&w.layers[k], &above, c) {
            if v.is_zero() {
                continue;
            }
            path.push(out);
            rec(w, t, path, &v, visit);
            path.pop();
        }
    }
    let mut path = vec![Vec::new()];
    rec(w, t, &mut path, &Rational::one(), &mut visit);
}

/// `W_L` with memoized diagram values.
#[derive(Debug)]
pub struct Evaluator {
    pub spec: AlgebraSpec,
    pub tables: Tables,
    pub pbw: Pbw,
    cache: HashMap<CanonKey, PbwElement>,
}

impl Evaluator {
    pub fn new(spec: &AlgebraSpec) -> Evaluator {
        Evaluator { spec: spec.clone(), tables: Tables::new(spec), pbw: Pbw::new(spec), cache: HashMap::new() }
    }

    pub fn tensor_to_pbw(&mut self, t: &WordTensor) -> PbwElement {
        let mut out = PbwElement::zero();
        let mut words: Vec<(&Vec<u8>, &Rational)> = t.iter().collect();
        words.sort();
        for (w, c) in words {
            out.axpy(c, &self.pbw.normal_word(w));
        }
        out
    }

    pub fn evaluate(&mut self, w: &LayerWord) -> PbwElement {
        let t = evaluate_tensor(w, &self.tables);
        self.tensor_to_pbw(&t)
    }

    pub fn eval_ccd(&mut self, d: &Ccd) -> PbwElement {
        let key = d.key();
        if let Some(v) = self.cache.get(&key) {
            return v.clone();
        }
        let v = self.evaluate(&compile(d));
        self.cache.insert(key, v.clone());
        v
    }

    pub fn eval_key(&mut self, k: &CanonKey) -> Result<PbwElement, HopfError> {
        if let Some(v) = self.cache.get(k) {
            return Ok(v.clone());
        }
        Ok(self.eval_ccd(&ccd_of(k)?))
    }

    pub fn eval_comb(&mut self, v: &DiagramComb) -> Result<PbwElement, HopfError> {
        let mut out = PbwElement::zero();
        for (k, c) in v.iter() {
            let e = self.eval_key(k)?;
            out.axpy(c, &e);
        }
        Ok(out)
    }

    pub fn display(&self, e: &PbwElement) -> String {
        e.display(&self.spec)
    }
}

/// `W_L(D)` in PBW form.
pub fn w_l(spec: &AlgebraSpec, d: &Ccd) -> PbwElement {
    Evaluator::new(spec).eval_ccd(d)
}

#[derive(Clone, Debug)]
pub struct StuReport {
    pub degree: usize,
    pub relations: usize,
    /// `(T key, position, image)` of each relation with nonzero image.
    pub failures: Vec<(CanonKey, usize, PbwElement)>,
}

impl StuReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Evaluate `S - T + U` for every STU relation in degree `n`.
pub fn check_stu_invariance(spec: &AlgebraSpec, n: usize) -> StuReport {
    let mut ev = Evaluator::new(spec);
    let rels = generate_stu(n);
    let mut failures = Vec::new();
    for r in &rels {
        let img = ev.eval_comb(&r.to_lincomb()).expect("relation keys decode");
        if !img.is_zero() {
            failures.push((r.t.clone(), r.position, img));
        }
    }
    StuReport { degree: n, relations: rels.len(), failures }
}
