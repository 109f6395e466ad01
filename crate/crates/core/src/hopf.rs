//! The graded algebra of CCDs modulo STU, with its Hopf structure.

use crate::diagram::{enumerate_ccds_by_trivalent, enumerate_chord_diagrams, CanonKey, Ccd, ChineseCharacter, DiagramError};
use crate::linear::{LinComb, LinearError, QuotientSpace, Rational};
use num_traits::One;
use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, Mutex};
use thiserror::Error;

pub type DiagramComb = LinComb<CanonKey>;
pub type TensorComb = LinComb<(CanonKey, CanonKey)>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HopfError {
    #[error(transparent)]
    Linear(#[from] LinearError),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error("expected a homogeneous element of degree {expected}, found a term of degree {found}")]
    Degree { expected: usize, found: usize },
    #[error("the chord model is only available through reduction of CCDs, not `{0}`")]
    NotCcd(String),
}

pub fn ccd_of(key: &CanonKey) -> Result<Ccd, HopfError> {
    Ok(Ccd::from_key(key)?)
}

/// Check that every term has degree `n`.
pub fn check_degree(v: &DiagramComb, n: usize) -> Result<(), HopfError> {
    for k in v.keys() {
        let d = ccd_of(k)?.degree();
        if d != n {
            return Err(HopfError::Degree { expected: n, found: d });
        }
    }
    Ok(())
}

/// Exchange the legs at Wilson positions `i` and `j`.
pub fn swap_legs(d: &Ccd, i: usize, j: usize) -> Ccd {
    let mut order: Vec<usize> = (0..d.legs()).collect();
    order.swap(i, j);
    let legs: Vec<u32> = order.iter().map(|&x| x as u32).collect();
    let ct = d.to_chinese_character();
    ct.arrange(&legs)
}

/// One STU relation `S - T + U`: `t` has adjacent legs at positions
/// `(position, position + 1 mod legs)`, `s` fuses them, `u` swaps them.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct StuRelation {
    pub s: CanonKey,
    pub t: CanonKey,
    pub u: CanonKey,
    pub position: usize,
}

impl StuRelation {
    pub fn at(t: &Ccd, i: usize) -> StuRelation {
        let l = t.legs();
        StuRelation {
            s: t.fuse(i).key(),
            t: t.key(),
            u: swap_legs(t, i, (i + 1) % l).key(),
            position: i,
        }
    }

    pub fn to_lincomb(&self) -> DiagramComb {
        let mut v = DiagramComb::new();
        v.add_term(self.s.clone(), Rational::one());
        v.add_term(self.t.clone(), -Rational::one());
        v.add_term(self.u.clone(), Rational::one());
        v
    }
}

/// STU relations for every degree-`n` CCD and every cyclically adjacent
/// pair of legs.
pub fn generate_stu(n: usize) -> Vec<StuRelation> {
    let mut out = Vec::new();
    for t in enumerate_ccds_by_trivalent(n).into_iter().flatten() {
        if t.legs() >= 2 {
            for i in 0..t.legs() {
                out.push(StuRelation::at(&t, i));
            }
        }
    }
    out
}

/// Undo a fusion: leg `i` is attached to a vertex; replace that vertex by
/// two legs at position `i` (left toward the previous dart, right toward the
/// next). Returns `(T, U)` with `S = T - U`.
pub fn unfuse(d: &Ccd, i: usize) -> (Ccd, Ccd) {
    let c = d.partner(i as u32);
    let (v, _) = d.vertex_of(c).expect("leg must attach to a vertex");
    let (a, b) = (d.prev_ccw(c), d.next_ccw(c));
    let n = d.n_darts() as u32;
    let (p, q) = (n, n + 1);
    let mut wilson = Vec::with_capacity(d.legs() + 1);
    for j in 0..d.legs() as u32 {
        if j as usize == i {
            wilson.push(p);
            wilson.push(q);
        } else {
            wilson.push(j);
        }
    }
    let vdarts = d.vertex_darts(v);
    let vertices: Vec<[u32; 3]> = (0..d.trivalent()).filter(|&w| w != v).map(|w| d.vertex_darts(w)).collect();
    let mut edges: Vec<(u32, u32)> = d
        .edges()
        .into_iter()
        .filter(|(x, y)| !vdarts.contains(x) && !vdarts.contains(y))
        .collect();
    let (xa, xb) = (d.partner(a), d.partner(b));
    if xa == b {
        edges.push((p, q));
    } else {
        edges.push((p, xa));
        edges.push((q, xb));
    }
    let t = Ccd::from_parts(&wilson, &vertices, &edges).expect("unfused diagram is valid");
    let u = swap_legs(&t, i, i + 1);
    (t, u)
}

/// Rewrite a CCD as a combination of chord diagrams using `S = T - U` at
/// the vertex attached to the first leg that meets one.
#[derive(Default, Debug)]
pub struct ChordResolver {
    memo: HashMap<CanonKey, DiagramComb>,
}

impl ChordResolver {
    pub fn resolve_ccd(&mut self, d: &Ccd) -> DiagramComb {
        let key = d.key();
        if let Some(v) = self.memo.get(&key) {
            return v.clone();
        }
        let out = match (0..d.legs()).find(|&i| !d.is_leg(d.partner(i as u32))) {
            None => {
                assert!(d.trivalent() == 0, "components without legs cannot be resolved to chords");
                DiagramComb::basis(key.clone())
            }
            Some(i) => {
                let (t, u) = unfuse(d, i);
                let mut r = self.resolve_ccd(&t);
                r.axpy(&-Rational::one(), &self.resolve_ccd(&u));
                r
            }
        };
        self.memo.insert(key, out.clone());
        out
    }

    pub fn resolve(&mut self, v: &DiagramComb) -> Result<DiagramComb, HopfError> {
        let mut out = DiagramComb::new();
        for (k, c) in v.iter() {
            let d = ccd_of(k)?;
            if d.has_closed_component() {
                return Err(LinearError::UnknownKey(k.to_string()).into());
            }
            out.axpy(c, &self.resolve_ccd(&d));
        }
        Ok(out)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Model {
    /// All CCDs modulo all STU relations.
    Full,
    /// Chord diagrams and one-vertex diagrams modulo STU relations whose `T`
    /// term is a chord diagram; other diagrams are resolved to chords first.
    Chord,
}

impl Model {
    pub fn name(self) -> &'static str {
        match self {
            Model::Full => "full",
            Model::Chord => "chord",
        }
    }
}

/// The degree-`n` part of the diagram algebra.
#[derive(Debug)]
pub struct AlgebraSpace {
    pub degree: usize,
    pub model: Model,
    pub space: Arc<QuotientSpace<CanonKey>>,
    resolver: Mutex<ChordResolver>,
}

/// Ambient elements and relations for a model.
pub fn model_presentation(n: usize, model: Model) -> (Vec<CanonKey>, Vec<DiagramComb>) {
    match model {
        Model::Full => {
            let levels = enumerate_ccds_by_trivalent(n);
            let mut ambient = Vec::new();
            let mut rels = Vec::new();
            for level in levels.iter().rev() {
                ambient.extend(level.iter().map(Ccd::key));
            }
            for t in levels.iter().flatten() {
                if t.legs() >= 2 {
                    for i in 0..t.legs() {
                        rels.push(StuRelation::at(t, i).to_lincomb());
                    }
                }
            }
            (ambient, rels)
        }
        Model::Chord => {
            let chords = enumerate_chord_diagrams(n);
            let mut one_vertex = BTreeSet::new();
            let mut rels = Vec::new();
            for t in &chords {
                for i in 0..t.legs() {
                    let r = StuRelation::at(t, i);
                    one_vertex.insert(r.s.clone());
                    rels.push(r.to_lincomb());
                }
            }
            let mut ambient: Vec<CanonKey> = one_vertex.into_iter().collect();
            ambient.extend(chords.iter().map(Ccd::key));
            (ambient, rels)
        }
    }
}

impl AlgebraSpace {
    pub fn build(n: usize, model: Model) -> Result<AlgebraSpace, HopfError> {
        let (ambient, rels) = model_presentation(n, model);
        let space = QuotientSpace::new(ambient, &rels)?;
        Ok(Self::from_space(n, model, space))
    }

    pub fn from_space(n: usize, model: Model, space: QuotientSpace<CanonKey>) -> AlgebraSpace {
        AlgebraSpace { degree: n, model, space: Arc::new(space), resolver: Mutex::new(ChordResolver::default()) }
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn basis_keys(&self) -> Vec<CanonKey> {
        self.space.basis_keys()
    }

    pub fn basis_ccds(&self) -> Vec<Ccd> {
        self.basis_keys().iter().map(|k| Ccd::from_key(k).expect("basis key decodes")).collect()
    }

    /// Rewrite into the ambient span (identity for the full model).
    pub fn to_ambient(&self, v: &DiagramComb) -> Result<DiagramComb, HopfError> {
        check_degree(v, self.degree)?;
        match self.model {
            Model::Full => Ok(v.clone()),
            Model::Chord => self.resolver.lock().unwrap().resolve(v),
        }
    }

    /// Coordinates in the quotient basis.
    pub fn reduce(&self, v: &DiagramComb) -> Result<Vec<Rational>, HopfError> {
        let amb = self.to_ambient(v)?;
        Ok(self.space.reduce(&amb)?)
    }

    pub fn reduce_ccd(&self, d: &Ccd) -> Result<Vec<Rational>, HopfError> {
        self.reduce(&DiagramComb::basis(d.key()))
    }

    /// True when `v` vanishes in the quotient.
    pub fn is_zero(&self, v: &DiagramComb) -> Result<bool, HopfError> {
        Ok(self.reduce(v)?.iter().all(num_traits::Zero::is_zero))
    }
}

/// `build_A(n)`: the full model.
pub fn build_a(n: usize) -> Result<AlgebraSpace, HopfError> {
    AlgebraSpace::build(n, Model::Full)
}

/// Bilinear extension of Wilson-line concatenation.
pub fn connect_sum(x: &DiagramComb, y: &DiagramComb) -> Result<DiagramComb, HopfError> {
    let mut out = DiagramComb::new();
    for (a, ca) in x.iter() {
        let da = ccd_of(a)?;
        for (b, cb) in y.iter() {
            let db = ccd_of(b)?;
            out.add_term(da.connect_sum(&db).key(), ca * cb);
        }
    }
    Ok(out)
}

/// `Delta(D) = sum over subsets S of components of D_S (x) D_{C - S}`,
/// where `D_S` deletes the components in `S`.
pub fn coproduct(v: &DiagramComb) -> Result<TensorComb, HopfError> {
    let mut out = TensorComb::new();
    for (k, c) in v.iter() {
        let d = ccd_of(k)?;
        let comps = d.components();
        let m = comps.len();
        assert!(m < 31, "too many components for subset expansion");
        for mask in 0u32..(1 << m) {
            let del: Vec<bool> = (0..m).map(|i| mask >> i & 1 == 1).collect();
            let keep: Vec<bool> = del.iter().map(|x| !x).collect();
            let left = d.delete_components(&comps, &del).key();
            let right = d.delete_components(&comps, &keep).key();
            out.add_term((left, right), c.clone());
        }
    }
    Ok(out)
}

fn permutations(items: &[u32]) -> Vec<Vec<u32>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

/// Sum of all cyclic arrangements of the legs of `sigma` on a Wilson loop.
pub fn expand_cc(sigma: &ChineseCharacter) -> DiagramComb {
    let l = sigma.legs() as u32;
    if l == 0 {
        return DiagramComb::basis(sigma.arrange(&[]).key());
    }
    let rest: Vec<u32> = (1..l).collect();
    let mut out = DiagramComb::new();
    for p in permutations(&rest) {
        let mut order = vec![0u32];
        order.extend(p);
        out.add_term(sigma.arrange(&order).key(), Rational::one());
    }
    out
}

/// `D + D'` where `D'` reverses the cyclic order at vertex `v`.
pub fn as_relation(d: &Ccd, v: usize) -> DiagramComb {
    let mut r = DiagramComb::basis(d.key());
    r.add_term(d.reverse_vertex(v).key(), Rational::one());
    r
}

/// The three-term IHX relation at the internal edge through dart `e`,
/// or `None` when the edge does not join two distinct vertices.
pub fn ihx_relation(d: &Ccd, e: u32) -> Option<DiagramComb> {
    let f = d.partner(e);
    let (u, _) = d.vertex_of(e)?;
    let (w, _) = d.vertex_of(f)?;
    if u == w {
        return None;
    }
    let (a, b) = (d.next_ccw(e), d.prev_ccw(e));
    let (c, dd) = (d.next_ccw(f), d.prev_ccw(f));
    let roles = [a, b, c, dd];
    let n = d.n_darts() as u32;
    let (ue, we) = (n, n + 3);
    let mut out = DiagramComb::new();
    // slot order for (u: e, s0, s1), (w: e, s2, s3) as role indices
    for slots in [[0usize, 1, 2, 3], [1, 2, 0, 3], [2, 0, 1, 3]] {
        let mut slot_of = [0u32; 4];
        for (pos, &role) in slots.iter().enumerate() {
            slot_of[role] = if pos < 2 { ue + 1 + pos as u32 } else { we + 1 + (pos - 2) as u32 };
        }
        let wilson: Vec<u32> = (0..d.legs() as u32).collect();
        let mut vertices: Vec<[u32; 3]> =
            (0..d.trivalent()).filter(|&x| x != u && x != w).map(|x| d.vertex_darts(x)).collect();
        vertices.push([ue, ue + 1, ue + 2]);
        vertices.push([we, we + 1, we + 2]);
        let old: Vec<u32> = d.vertex_darts(u).into_iter().chain(d.vertex_darts(w)).collect();
        let mut edges: Vec<(u32, u32)> =
            d.edges().into_iter().filter(|(x, y)| !old.contains(x) && !old.contains(y)).collect();
        edges.push((ue, we));
        for (r, &dart) in roles.iter().enumerate() {
            let p = d.partner(dart);
            match roles.iter().position(|&x| x == p) {
                Some(r2) if r2 > r => edges.push((slot_of[r], slot_of[r2])),
                Some(_) => {}
                None => edges.push((slot_of[r], p)),
            }
        }
        let t = Ccd::from_parts(&wilson, &vertices, &edges).expect("rewired diagram is valid");
        out.add_term(t.key(), Rational::one());
    }
    Some(out)
}

#[derive(Clone, Debug, Default)]
pub struct IhxAsReport {
    pub checked: usize,
    /// Keys of diagrams whose AS or IHX relation survives in the quotient.
    pub failures: Vec<String>,
}

impl IhxAsReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// AS at every vertex and IHX at every internal edge of every CCD of the
/// space's degree reduce to zero.
pub fn check_ihx_as(space: &AlgebraSpace) -> Result<IhxAsReport, HopfError> {
    let mut rep = IhxAsReport::default();
    for d in crate::diagram::enumerate_ccds(space.degree) {
        for v in 0..d.trivalent() {
            rep.checked += 1;
            if !space.is_zero(&as_relation(&d, v))? {
                rep.failures.push(format!("AS {} vertex {v}", d.key()));
            }
        }
        for (a, _) in d.edges() {
            if let Some(r) = ihx_relation(&d, a) {
                rep.checked += 1;
                if !space.is_zero(&r)? {
                    rep.failures.push(format!("IHX {} dart {a}", d.key()));
                }
            }
        }
    }
    Ok(rep)
}
