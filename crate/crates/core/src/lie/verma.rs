//! Highest-weight evaluation `k(λ)[D]` in a truncated Verma module.

use super::compile::compile;
use super::eval::{evaluate_tensor, Tables, WordTensor};
use super::pbw::Pbw;
use super::poly::Poly;
use super::spec::{AlgebraSpec, TriangularData};
use super::LieError;
use crate::conway::WeightSystem;
use crate::diagram::Ccd;
use crate::deframing::phi;
use crate::hopf::{ccd_of, AlgebraSpace, DiagramComb};
use crate::linear::Rational;
use num_traits::One;
use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

/// Module vector: `N^-`-monomials (sorted lowering indices) with polynomial coefficients.
type Vector = BTreeMap<Vec<u8>, Poly>;

/// The Verma module of highest weight `λ` (formal), truncated at `depth`
/// lowering operators.
#[derive(Debug)]
pub struct Verma {
    tri: TriangularData,
    /// Position of each basis index in the order y < h < x.
    class: Vec<Class>,
    pbw: Pbw,
    nvars: usize,
    pub depth: usize,
    memo: HashMap<(u8, Vec<u8>), Vec<(Vec<u8>, Poly)>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Class {
    Lower,
    Cartan(usize),
    Raise,
}

impl Verma {
    pub fn new(spec: &AlgebraSpec, depth: usize) -> Result<Verma, LieError> {
        let tri = spec.triangular.clone().ok_or(LieError::NoTriangular)?;
        let mut order: Vec<usize> = tri.roots.iter().map(|r| r.y).collect();
        order.extend(&tri.cartan);
        order.extend(tri.roots.iter().map(|r| r.x));
        if order.len() != spec.dim {
            return Err(LieError::Invalid("triangular data must cover the basis".into()));
        }
        let mut class = vec![Class::Raise; spec.dim];
        for r in &tri.roots {
            class[r.y] = Class::Lower;
        }
        for (i, &h) in tri.cartan.iter().enumerate() {
            class[h] = Class::Cartan(i);
        }
        let nvars = tri.cartan.len();
        Ok(Verma { pbw: Pbw::with_order(spec, &order), tri, class, nvars, depth, memo: HashMap::new() })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn triangular(&self) -> &TriangularData {
        &self.tri
    }

    /// `g . (m v0)`
    fn act(&mut self, g: u8, m: &[u8]) -> Result<Vec<(Vec<u8>, Poly)>, LieError> {
        let key = (g, m.to_vec());
        if let Some(r) = self.memo.get(&key) {
            return Ok(r.clone());
        }
        let prod = self.pbw.left_mult(g, m);
        let mut out: BTreeMap<Vec<u8>, Poly> = BTreeMap::new();
        for (mono, c) in prod.terms() {
            let mut lower = Vec::new();
            let mut weight = Poly::constant(self.nvars, c.clone());
            let mut killed = false;
            for &i in mono {
                match self.class[i as usize] {
                    Class::Lower => lower.push(i),
                    Class::Cartan(v) => weight = weight.mul(&Poly::var(self.nvars, v)),
                    Class::Raise => {
                        killed = true;
                        break;
                    }
                }
            }
            if killed {
                continue;
            }
            if lower.len() > self.depth {
                return Err(LieError::Truncation { depth: self.depth });
            }
            out.entry(lower).or_insert_with(|| Poly::zero(self.nvars)).axpy(&Rational::one(), &weight);
        }
        let r: Vec<(Vec<u8>, Poly)> = out.into_iter().filter(|(_, p)| !p.is_zero()).collect();
        self.memo.insert(key, r.clone());
        Ok(r)
    }

    /// Apply a word (leftmost letter acts last) to `v0`.
    pub fn apply_word(&mut self, w: &[u8]) -> Result<Vector, LieError> {
        let mut v: Vector = BTreeMap::from([(Vec::new(), Poly::one(self.nvars))]);
        for &g in w.iter().rev() {
            let mut next: Vector = BTreeMap::new();
            for (m, p) in &v {
                for (m2, q) in self.act(g, m)? {
                    let e = next.entry(m2).or_insert_with(|| Poly::zero(self.nvars));
                    *e = e.add(&p.mul(&q));
                }
            }
            next.retain(|_, p| !p.is_zero());
            v = next;
        }
        Ok(v)
    }

    /// Coefficient of `v0` in `T . v0` for a word tensor `T`.
    pub fn vacuum_coefficient(&mut self, t: &WordTensor) -> Result<Poly, LieError> {
        let mut total = Poly::zero(self.nvars);
        let mut words: Vec<(&Vec<u8>, &Rational)> = t.iter().collect();
        words.sort();
        for (w, c) in words {
            let v = self.apply_word(w)?;
            if let Some(p) = v.get(&Vec::new()) {
                total.axpy(c, p);
            }
        }
        Ok(total)
    }

    /// Harish-Chandra projection: the purely Cartan part of the triangular
    /// normal form, with `h_i` replaced by `λ_i`.
    pub fn harish_chandra(&mut self, t: &WordTensor) -> Poly {
        let mut total = Poly::zero(self.nvars);
        for (w, c) in t {
            for (m, v) in self.pbw.normal_word(w).terms() {
                let mut exps = vec![0u32; self.nvars];
                let mut ok = true;
                for &i in m {
                    match self.class[i as usize] {
                        Class::Cartan(k) => exps[k] += 1,
                        _ => ok = false,
                    }
                }
                if ok {
                    total.add_term(exps, c * v);
                }
            }
        }
        total
    }
}

/// `k(λ)[D]`, with truncation depth `2 * degree`.
pub fn highest_weight_poly(d: &Ccd, spec: &AlgebraSpec) -> Result<Poly, LieError> {
    let mut v = Verma::new(spec, 2 * d.degree())?;
    let t = evaluate_tensor(&compile(d), &Tables::new(spec));
    v.vacuum_coefficient(&t)
}

/// `λ(h_α)` as a linear polynomial.
pub fn root_pairing(spec: &AlgebraSpec, root: usize) -> Result<Poly, LieError> {
    let tri = spec.triangular.as_ref().ok_or(LieError::NoTriangular)?;
    let h = spec.coroot(&tri.roots[root])?;
    let n = tri.cartan.len();
    let mut p = Poly::zero(n);
    for (i, c) in h.iter().enumerate() {
        p.axpy(c, &Poly::var(n, i));
    }
    Ok(p)
}

/// `k(λ)` of a linear combination of diagrams.
pub fn highest_weight_poly_comb(v: &DiagramComb, verma: &mut Verma, tables: &Tables) -> Result<Poly, LieError> {
    let mut total = Poly::zero(verma.nvars());
    for (k, c) in v.iter() {
        let t = evaluate_tensor(&compile(&ccd_of(k)?), tables);
        total.axpy(c, &verma.vacuum_coefficient(&t)?);
    }
    Ok(total)
}

/// `v -> [degree-n part of k(λ)[phi_n(v)]]` on each basis diagram, evaluated
/// along `direction` (required when the Cartan subalgebra has dimension > 1).
pub fn knn(space: Arc<AlgebraSpace>, spec: &AlgebraSpec, direction: Option<&[Rational]>) -> Result<WeightSystem, LieError> {
    let n = space.degree;
    let mut verma = Verma::new(spec, 2 * n)?;
    let tables = Tables::new(spec);
    let nv = verma.nvars();
    let dir: Vec<Rational> = match direction {
        Some(d) if d.len() == nv => d.to_vec(),
        Some(d) => return Err(LieError::Invalid(format!("λ direction has {} entries, expected {nv}", d.len()))),
        None if nv == 1 => vec![Rational::one()],
        None => return Err(LieError::Invalid("a λ direction is required for this algebra".into())),
    };
    let mut values = Vec::with_capacity(space.dim());
    for key in space.basis_keys() {
        let deframed = phi(n, &DiagramComb::basis(key))?;
        let p = highest_weight_poly_comb(&deframed, &mut verma, &tables)?;
        values.push(p.homogeneous_part(n as u32).eval(&dir));
    }
    Ok(WeightSystem { degree: n, name: format!("knn-{}", spec.name), space, values })
}
