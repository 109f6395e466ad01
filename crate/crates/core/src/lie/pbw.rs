//! Normal ordering in the universal enveloping algebra.

use super::poly::write_terms;
use super::spec::AlgebraSpec;
use crate::linear::Rational;
use num_traits::{One, Zero};
use std::collections::{BTreeMap, HashMap};

/// A PBW monomial: basis indices, non-decreasing in the engine's order.
pub type Monomial = Vec<u8>;

/// Element of `U(L)` in PBW normal form.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PbwElement {
    terms: BTreeMap<Monomial, Rational>,
}

impl PbwElement {
    pub fn zero() -> PbwElement {
        PbwElement::default()
    }

    pub fn one() -> PbwElement {
        PbwElement::monomial(Vec::new(), Rational::one())
    }

    pub fn monomial(m: Monomial, c: Rational) -> PbwElement {
        let mut e = PbwElement::zero();
        e.add_term(m, c);
        e
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn axpy(&mut self, c: &Rational, other: &PbwElement) {
        for (m, v) in &other.terms {
            self.add_term(m.clone(), c * v);
        }
    }

    pub fn sub(&self, other: &PbwElement) -> PbwElement {
        let mut r = self.clone();
        r.axpy(&-Rational::one(), other);
        r
    }

    pub fn scaled(&self, c: &Rational) -> PbwElement {
        let mut r = PbwElement::zero();
        r.axpy(c, self);
        r
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &[u8]) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Render with basis labels: by descending degree, then lexicographically.
    pub fn display(&self, spec: &AlgebraSpec) -> String {
        let mut items: Vec<(&Monomial, &Rational)> = self.terms.iter().collect();
        items.sort_by(|(a, _), (b, _)| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        let terms: Vec<(String, Rational)> = items
            .into_iter()
            .map(|(m, c)| {
                let mut parts: Vec<String> = Vec::new();
                let mut i = 0;
                while i < m.len() {
                    let mut j = i;
                    while j < m.len() && m[j] == m[i] {
                        j += 1;
                    }
                    let l = &spec.labels[m[i] as usize];
                    parts.push(if j - i == 1 { l.clone() } else { format!("{l}^{}", j - i) });
                    i = j;
                }
                (parts.join("*"), c.clone())
            })
            .collect();
        let mut s = String::new();
        write_terms(&mut s, &terms).unwrap();
        s
    }
}

/// Normal-ordering engine for one algebra and one total order of its basis.
#[derive(Debug)]
pub struct Pbw {
    parity: Vec<u8>,
    /// `rank[i]` is the position of basis index `i` in the order.
    rank: Vec<usize>,
    /// Nonzero `f^k_{ij}` by `(i, j)`.
    brackets: Vec<Vec<(u8, Rational)>>,
    dim: usize,
    memo: HashMap<(u8, Monomial), PbwElement>,
}

impl Pbw {
    /// Order by basis index.
    pub fn new(spec: &AlgebraSpec) -> Pbw {
        let order: Vec<usize> = (0..spec.dim).collect();
        Pbw::with_order(spec, &order)
    }

    /// `order` lists basis indices from smallest to largest.
    pub fn with_order(spec: &AlgebraSpec, order: &[usize]) -> Pbw {
        let d = spec.dim;
        assert_eq!(order.len(), d);
        let mut rank = vec![usize::MAX; d];
        for (r, &i) in order.iter().enumerate() {
            rank[i] = r;
        }
        assert!(rank.iter().all(|&r| r < d), "order must be a permutation");
        let brackets = (0..d * d)
            .map(|ij| {
                (0..d)
                    .filter(|&k| !spec.f(ij / d, ij % d, k).is_zero())
                    .map(|k| (k as u8, spec.f(ij / d, ij % d, k).clone()))
                    .collect()
            })
            .collect();
        Pbw { parity: spec.parity.clone(), rank, brackets, dim: d, memo: HashMap::new() }
    }

    fn odd(&self, i: u8) -> bool {
        self.parity[i as usize] == 1
    }

    /// `x * m` for a normal monomial `m`.
    pub fn left_mult(&mut self, x: u8, m: &[u8]) -> PbwElement {
        let key = (x, m.to_vec());
        if let Some(r) = self.memo.get(&key) {
            return r.clone();
        }
        let r = self.left_mult_uncached(x, m);
        self.memo.insert(key, r.clone());
        r
    }

    fn left_mult_uncached(&mut self, x: u8, m: &[u8]) -> PbwElement {
        let prepend = |m: &[u8]| {
            let mut v = Vec::with_capacity(m.len() + 1);
            v.push(x);
            v.extend_from_slice(m);
            PbwElement::monomial(v, Rational::one())
        };
        let Some(&y) = m.first() else { return prepend(m) };
        let (rx, ry) = (self.rank[x as usize], self.rank[y as usize]);
        if rx < ry || (rx == ry && !self.odd(x)) {
            return prepend(m);
        }
        let rest = &m[1..];
        let mut out = PbwElement::zero();
        let brs = self.brackets[x as usize * self.dim + y as usize].clone();
        if x == y {
            // x x = 1/2 [x, x] for odd x
            let half = Rational::new(1.into(), 2.into());
            for (k, c) in brs {
                out.axpy(&(&half * c), &self.left_mult(k, rest));
            }
            return out;
        }
        // x y = (-1)^{[x][y]} y x + [x, y]
        let sign = if self.odd(x) && self.odd(y) { -Rational::one() } else { Rational::one() };
        let xr = self.left_mult(x, rest);
        for (mono, c) in xr.terms.iter() {
            out.axpy(&(&sign * c), &self.left_mult(y, mono));
        }
        for (k, c) in brs {
            out.axpy(&c, &self.left_mult(k, rest));
        }
        out
    }

    /// Normal form of an arbitrary word.
    pub fn normal_word(&mut self, w: &[u8]) -> PbwElement {
        let mut acc = PbwElement::one();
        for &x in w.iter().rev() {
            let mut next = PbwElement::zero();
            for (m, c) in acc.terms.iter() {
                next.axpy(c, &self.left_mult(x, m));
            }
            acc = next;
        }
        acc
    }

    pub fn mul(&mut self, a: &PbwElement, b: &PbwElement) -> PbwElement {
        let mut out = PbwElement::zero();
        for (ma, ca) in a.terms() {
            for (mb, cb) in b.terms() {
                let mut w = ma.clone();
                w.extend_from_slice(mb);
                out.axpy(&(ca * cb), &self.normal_word(&w));
            }
        }
        out
    }

    fn monomial_parity(&self, m: &[u8]) -> bool {
        m.iter().filter(|&&i| self.odd(i)).count() % 2 == 1
    }

    /// Super-commutator `[x, e]` with a basis vector `x`.
    pub fn commutator(&mut self, x: u8, e: &PbwElement) -> PbwElement {
        let mut out = PbwElement::zero();
        for (m, c) in e.terms() {
            let mut w = vec![x];
            w.extend_from_slice(m);
            out.axpy(c, &self.normal_word(&w));
            let mut w2 = m.clone();
            w2.push(x);
            let s = if self.odd(x) && self.monomial_parity(m) { c.clone() } else { -c.clone() };
            out.axpy(&s, &self.normal_word(&w2));
        }
        out
    }
}

/// Result of a centrality check.
#[derive(Clone, Debug)]
pub struct CentralityReport {
    /// Basis vectors whose super-commutator with the element is nonzero.
    pub failures: Vec<(usize, PbwElement)>,
}

impl CentralityReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn check_central(e: &PbwElement, spec: &AlgebraSpec) -> CentralityReport {
    let mut pbw = Pbw::new(spec);
    let failures = (0..spec.dim)
        .filter_map(|g| {
            let c = pbw.commutator(g as u8, e);
            (!c.is_zero()).then_some((g, c))
        })
        .collect();
    CentralityReport { failures }
}
