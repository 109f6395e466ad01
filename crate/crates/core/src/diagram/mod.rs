//! Chord diagrams with support (CCDs) and Chinese characters (CCs).
//!
//! Both are stored in a dense "standard layout": darts `0..legs` are the
//! univalent legs (in Wilson-line order for a CCD), and trivalent vertex `k`
//! owns darts `legs + 3k .. legs + 3k + 3` listed counterclockwise. Edges are
//! a fixed-point-free involution on darts.

mod canon;
mod enumerate;
mod text;

pub use canon::CanonKey;
pub use enumerate::{
    enumerate_ccds, enumerate_ccds_by_trivalent, enumerate_chinese_characters, enumerate_closed_characters,
    enumerate_chord_diagrams, perfect_matchings,
};
pub use text::{parse_diagram, Diagram};

use std::collections::HashMap;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("undeclared dart `{0}`")]
    UndeclaredDart(String),
    #[error("dart `{0}` is declared more than once")]
    DuplicateDart(String),
    #[error("dart `{0}` is not paired by any edge")]
    UnpairedDart(String),
    #[error("dart `{0}` appears in more than one edge")]
    MultiplyPaired(String),
    #[error("dart `{0}` is paired with itself")]
    SelfPaired(String),
    #[error("legs + trivalent vertices = {0} is odd, so the degree is not an integer")]
    OddDegree(usize),
    #[error("declared degree {declared} but diagram has degree {actual}")]
    DegreeMismatch { declared: usize, actual: usize },
    #[error("malformed canonical key: {0}")]
    BadKey(String),
    #[error("expected a {expected} but found a {found}")]
    WrongKind { expected: &'static str, found: &'static str },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct Skeleton {
    legs: usize,
    partner: Vec<u32>,
}

impl Skeleton {
    pub(crate) fn new(legs: usize, partner: Vec<u32>) -> Result<Self, DiagramError> {
        let n = partner.len();
        if n < legs || (n - legs) % 3 != 0 {
            return Err(DiagramError::BadKey(format!(
                "{n} darts cannot hold {legs} legs plus whole vertices"
            )));
        }
        for (d, &p) in partner.iter().enumerate() {
            let p = p as usize;
            if p >= n {
                return Err(DiagramError::UndeclaredDart(format!("d{p}")));
            }
            if p == d {
                return Err(DiagramError::SelfPaired(format!("d{d}")));
            }
            if partner[p] as usize != d {
                return Err(DiagramError::MultiplyPaired(format!("d{p}")));
            }
        }
        let t = (n - legs) / 3;
        if (legs + t) % 2 != 0 {
            return Err(DiagramError::OddDegree(legs + t));
        }
        Ok(Skeleton { legs, partner })
    }

    fn new_unchecked(legs: usize, partner: Vec<u32>) -> Self {
        debug_assert!(Skeleton::new(legs, partner.clone()).is_ok());
        Skeleton { legs, partner }
    }

    pub(crate) fn legs(&self) -> usize {
        self.legs
    }

    pub(crate) fn n_darts(&self) -> usize {
        self.partner.len()
    }

    pub(crate) fn n_vertices(&self) -> usize {
        (self.partner.len() - self.legs) / 3
    }

    pub(crate) fn degree(&self) -> usize {
        (self.legs + self.n_vertices()) / 2
    }

    pub(crate) fn partner(&self, d: u32) -> u32 {
        self.partner[d as usize]
    }

    pub(crate) fn partners(&self) -> &[u32] {
        &self.partner
    }

    pub(crate) fn is_leg(&self, d: u32) -> bool {
        (d as usize) < self.legs
    }

    /// Vertex index and position within the vertex triple.
    pub(crate) fn vertex_of(&self, d: u32) -> Option<(usize, usize)> {
        let d = d as usize;
        (d >= self.legs).then(|| ((d - self.legs) / 3, (d - self.legs) % 3))
    }

    pub(crate) fn vertex_darts(&self, v: usize) -> [u32; 3] {
        let b = (self.legs + 3 * v) as u32;
        [b, b + 1, b + 2]
    }

    pub(crate) fn next_ccw(&self, d: u32) -> u32 {
        let (v, r) = self.vertex_of(d).expect("leg has no cyclic order");
        self.vertex_darts(v)[(r + 1) % 3]
    }

    pub(crate) fn prev_ccw(&self, d: u32) -> u32 {
        let (v, r) = self.vertex_of(d).expect("leg has no cyclic order");
        self.vertex_darts(v)[(r + 2) % 3]
    }

    /// Connected components of the internal graph (Wilson line ignored).
    pub(crate) fn components(&self) -> Vec<Component> {
        let n = self.n_darts();
        let mut comp = vec![usize::MAX; n];
        let mut out = Vec::new();
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut c = Component::default();
            let mut stack = vec![start as u32];
            comp[start] = id;
            while let Some(d) = stack.pop() {
                let mut nbrs = vec![self.partner(d)];
                match self.vertex_of(d) {
                    None => c.legs.push(d),
                    Some((v, r)) => {
                        if r == 0 {
                            c.vertices.push(v);
                        }
                        nbrs.extend(self.vertex_darts(v));
                    }
                }
                for e in nbrs {
                    if comp[e as usize] == usize::MAX {
                        comp[e as usize] = id;
                        stack.push(e);
                    }
                }
            }
            // a vertex is counted via its r == 0 dart, which is always reached
            c.legs.sort_unstable();
            c.vertices.sort_unstable();
            out.push(c);
        }
        out
    }

    /// Build a new standard-layout skeleton from a selection of old darts.
    /// `legs` lists old leg darts in their new order, `vertices` lists old
    /// vertex ids with a rotation `r` (new position j takes old position
    /// `(j + r) % 3`). Every selected dart's partner must also be selected.
    pub(crate) fn relabel(&self, legs: &[u32], vertices: &[(usize, usize)]) -> Skeleton {
        let mut map = vec![u32::MAX; self.n_darts()];
        for (i, &d) in legs.iter().enumerate() {
            map[d as usize] = i as u32;
        }
        let nl = legs.len();
        for (k, &(v, r)) in vertices.iter().enumerate() {
            let ds = self.vertex_darts(v);
            for j in 0..3 {
                map[ds[(j + r) % 3] as usize] = (nl + 3 * k + j) as u32;
            }
        }
        let total = nl + 3 * vertices.len();
        let mut partner = vec![0u32; total];
        for (old, &new) in map.iter().enumerate() {
            if new != u32::MAX {
                let p = map[self.partner[old] as usize];
                assert!(p != u32::MAX, "relabel dropped the partner of a kept dart");
                partner[new as usize] = p;
            }
        }
        Skeleton::new_unchecked(nl, partner)
    }

    fn delete_components(&self, comps: &[Component], delete: &[bool]) -> Skeleton {
        let mut keep_leg = vec![true; self.legs];
        let mut keep_vertex = vec![true; self.n_vertices()];
        for (c, &del) in comps.iter().zip(delete) {
            if del {
                for &l in &c.legs {
                    keep_leg[l as usize] = false;
                }
                for &v in &c.vertices {
                    keep_vertex[v] = false;
                }
            }
        }
        let legs: Vec<u32> = (0..self.legs as u32).filter(|&l| keep_leg[l as usize]).collect();
        let verts: Vec<(usize, usize)> = (0..self.n_vertices())
            .filter(|&v| keep_vertex[v])
            .map(|v| (v, 0))
            .collect();
        self.relabel(&legs, &verts)
    }

    fn disjoint_union(&self, other: &Skeleton) -> Skeleton {
        let (la, lb) = (self.legs, other.legs);
        let (ta, tb) = (self.n_vertices(), other.n_vertices());
        let map_a = |d: u32| -> u32 {
            if (d as usize) < la {
                d
            } else {
                d + lb as u32
            }
        };
        let map_b = |d: u32| -> u32 {
            if (d as usize) < lb {
                d + la as u32
            } else {
                d + la as u32 + 3 * ta as u32
            }
        };
        let mut partner = vec![0u32; la + lb + 3 * (ta + tb)];
        for d in 0..self.n_darts() as u32 {
            partner[map_a(d) as usize] = map_a(self.partner(d));
        }
        for d in 0..other.n_darts() as u32 {
            partner[map_b(d) as usize] = map_b(other.partner(d));
        }
        Skeleton::new_unchecked(la + lb, partner)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Component {
    /// Leg darts (positions on the Wilson line for a CCD), ascending.
    pub legs: Vec<u32>,
    /// Vertex indices, ascending.
    pub vertices: Vec<usize>,
}

impl Component {
    pub fn is_chord(&self) -> bool {
        self.vertices.is_empty() && self.legs.len() == 2
    }

    pub fn is_closed(&self) -> bool {
        self.legs.is_empty()
    }

    pub fn degree(&self) -> usize {
        (self.legs.len() + self.vertices.len()) / 2
    }
}

/// Build a skeleton from arbitrary dart ids.
fn assemble(
    legs: &[u32],
    vertices: &[[u32; 3]],
    edges: &[(u32, u32)],
) -> Result<Skeleton, DiagramError> {
    let name = |d: u32| format!("{d}");
    let mut index: HashMap<u32, u32> = HashMap::new();
    for (i, &d) in legs.iter().chain(vertices.iter().flatten()).enumerate() {
        if index.insert(d, i as u32).is_some() {
            return Err(DiagramError::DuplicateDart(name(d)));
        }
    }
    let n = index.len();
    let mut partner = vec![u32::MAX; n];
    for &(a, b) in edges {
        let ia = *index.get(&a).ok_or_else(|| DiagramError::UndeclaredDart(name(a)))?;
        let ib = *index.get(&b).ok_or_else(|| DiagramError::UndeclaredDart(name(b)))?;
        if ia == ib {
            return Err(DiagramError::SelfPaired(name(a)));
        }
        for (x, ix, iy) in [(a, ia, ib), (b, ib, ia)] {
            if partner[ix as usize] != u32::MAX {
                return Err(DiagramError::MultiplyPaired(name(x)));
            }
            partner[ix as usize] = iy;
        }
    }
    if let Some(i) = partner.iter().position(|&p| p == u32::MAX) {
        let d = *index.iter().find(|(_, &v)| v as usize == i).unwrap().0;
        return Err(DiagramError::UnpairedDart(name(d)));
    }
    Skeleton::new(legs.len(), partner)
}

/// A chord diagram with support: a Jacobi diagram whose legs sit in order
/// along an oriented Wilson line.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ccd {
    sk: Skeleton,
}

/// A Jacobi diagram with an unordered set of legs.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ChineseCharacter {
    sk: Skeleton,
}

macro_rules! common_accessors {
    ($t:ty) => {
        impl $t {
            pub fn legs(&self) -> usize {
                self.sk.legs()
            }

            pub fn trivalent(&self) -> usize {
                self.sk.n_vertices()
            }

            pub fn degree(&self) -> usize {
                self.sk.degree()
            }

            pub fn n_darts(&self) -> usize {
                self.sk.n_darts()
            }

            pub fn partner(&self, d: u32) -> u32 {
                self.sk.partner(d)
            }

            pub fn partners(&self) -> &[u32] {
                self.sk.partners()
            }

            pub fn is_leg(&self, d: u32) -> bool {
                self.sk.is_leg(d)
            }

            /// Vertex index and counterclockwise position of a vertex dart.
            pub fn vertex_of(&self, d: u32) -> Option<(usize, usize)> {
                self.sk.vertex_of(d)
            }

            pub fn vertex_darts(&self, v: usize) -> [u32; 3] {
                self.sk.vertex_darts(v)
            }

            pub fn next_ccw(&self, d: u32) -> u32 {
                self.sk.next_ccw(d)
            }

            pub fn prev_ccw(&self, d: u32) -> u32 {
                self.sk.prev_ccw(d)
            }

            pub fn components(&self) -> Vec<Component> {
                self.sk.components()
            }

            /// Edges as dart pairs `(a, b)` with `a < b`, ascending.
            pub fn edges(&self) -> Vec<(u32, u32)> {
                (0..self.n_darts() as u32)
                    .filter(|&d| d < self.partner(d))
                    .map(|d| (d, self.partner(d)))
                    .collect()
            }

            pub fn has_closed_component(&self) -> bool {
                self.components().iter().any(Component::is_closed)
            }

            /// A copy with vertex `v`'s cyclic order reversed.
            pub fn reverse_vertex(&self, v: usize) -> Self {
                let [a, b, _] = self.vertex_darts(v);
                let swap = |x: u32| {
                    if x == a {
                        b
                    } else if x == b {
                        a
                    } else {
                        x
                    }
                };
                let mut partner = vec![0u32; self.n_darts()];
                for d in 0..self.n_darts() as u32 {
                    partner[swap(d) as usize] = swap(self.partner(d));
                }
                Self { sk: Skeleton::new_unchecked(self.legs(), partner) }
            }

            /// A copy with vertices reordered by `perm` (new vertex k is old
            /// vertex `perm[k].0`, rotated by `perm[k].1`).
            pub fn relabel_vertices(&self, perm: &[(usize, usize)]) -> Self {
                assert_eq!(perm.len(), self.trivalent());
                let legs: Vec<u32> = (0..self.legs() as u32).collect();
                Self { sk: self.sk.relabel(&legs, perm) }
            }
        }
    };
}

common_accessors!(Ccd);
common_accessors!(ChineseCharacter);

impl Ccd {
    /// Build from arbitrary dart ids: `wilson` lists the legs left to right,
    /// each vertex triple is counterclockwise, `edges` pair every dart once.
    pub fn from_parts(
        wilson: &[u32],
        vertices: &[[u32; 3]],
        edges: &[(u32, u32)],
    ) -> Result<Self, DiagramError> {
        Ok(Ccd { sk: assemble(wilson, vertices, edges)? })
    }

    pub fn from_layout(legs: usize, partner: Vec<u32>) -> Result<Self, DiagramError> {
        Ok(Ccd { sk: Skeleton::new(legs, partner)? })
    }

    pub fn empty() -> Self {
        Ccd { sk: Skeleton::new_unchecked(0, Vec::new()) }
    }

    /// Chord diagram from a perfect matching on Wilson positions `0..2n`.
    pub fn chord(pairs: &[(u32, u32)]) -> Result<Self, DiagramError> {
        let legs: Vec<u32> = (0..2 * pairs.len() as u32).collect();
        Ccd::from_parts(&legs, &[], pairs)
    }

    pub fn is_chord_diagram(&self) -> bool {
        self.trivalent() == 0
    }

    pub fn key(&self) -> CanonKey {
        canon::ccd_canonical(&self.sk).1
    }

    /// The canonical representative of this diagram's isomorphism class.
    pub fn canonical(&self) -> Ccd {
        Ccd { sk: canon::ccd_canonical(&self.sk).0 }
    }

    pub fn from_key(key: &CanonKey) -> Result<Self, DiagramError> {
        match key.decode()? {
            (canon::Kind::Ccd, sk) => Ok(Ccd { sk }),
            (canon::Kind::Cc, _) => Err(DiagramError::WrongKind {
                expected: "CCD key",
                found: "CC key",
            }),
        }
    }

    /// Same diagram with the Wilson line read starting from leg `k`.
    pub fn rotate(&self, k: usize) -> Ccd {
        let l = self.legs();
        let legs: Vec<u32> = (0..l).map(|i| ((i + k) % l) as u32).collect();
        let verts: Vec<(usize, usize)> = (0..self.trivalent()).map(|v| (v, 0)).collect();
        Ccd { sk: self.sk.relabel(&legs, &verts) }
    }

    /// Fuse the adjacent legs at Wilson positions `i` and `(i + 1) % legs`
    /// into a new trivalent vertex. The new vertex reads counterclockwise
    /// (toward partner of leg i, toward the new leg, toward partner of leg
    /// i+1); the new leg takes the place of the pair.
    pub fn fuse(&self, i: usize) -> Ccd {
        let l = self.legs();
        assert!(l >= 2, "fusion needs two legs");
        let (p, q) = (i as u32, ((i + 1) % l) as u32);
        let (x, y) = (self.partner(p), self.partner(q));
        // new layout: legs with the pair replaced, old vertices, new vertex
        let new_l = l - 1;
        let t = self.trivalent();
        let mut leg_map = vec![u32::MAX; l];
        let mut next = 0u32;
        for old in 0..l as u32 {
            if old == q {
                continue;
            }
            leg_map[old as usize] = next;
            next += 1;
        }
        let new_leg = leg_map[p as usize];
        let m = |d: u32| -> u32 {
            if (d as usize) < l {
                leg_map[d as usize]
            } else {
                d - 1
            }
        };
        let base = (new_l + 3 * t) as u32;
        let (a, c, b) = (base, base + 1, base + 2);
        let mut partner = vec![0u32; new_l + 3 * t + 3];
        for d in 0..self.n_darts() as u32 {
            if d == p || d == q {
                continue;
            }
            let pd = self.partner(d);
            let img = if pd == p {
                a
            } else if pd == q {
                b
            } else {
                m(pd)
            };
            partner[m(d) as usize] = img;
        }
        if x == q {
            partner[a as usize] = b;
            partner[b as usize] = a;
        } else {
            partner[a as usize] = m(x);
            partner[b as usize] = m(y);
        }
        partner[c as usize] = new_leg;
        partner[new_leg as usize] = c;
        Ccd { sk: Skeleton::new_unchecked(new_l, partner) }
    }

    /// Wilson-line concatenation (connected sum).
    pub fn connect_sum(&self, other: &Ccd) -> Ccd {
        Ccd { sk: self.sk.disjoint_union(&other.sk) }
    }

    /// Delete the components flagged in `delete` (indexed like `components()`).
    pub fn delete_components(&self, comps: &[Component], delete: &[bool]) -> Ccd {
        Ccd { sk: self.sk.delete_components(comps, delete) }
    }

    /// Forget the Wilson order.
    pub fn to_chinese_character(&self) -> ChineseCharacter {
        ChineseCharacter { sk: self.sk.clone() }
    }
}

impl ChineseCharacter {
    /// Build from arbitrary dart ids; `legs` is an unordered set.
    pub fn from_parts(
        legs: &[u32],
        vertices: &[[u32; 3]],
        edges: &[(u32, u32)],
    ) -> Result<Self, DiagramError> {
        Ok(ChineseCharacter { sk: assemble(legs, vertices, edges)? })
    }

    pub fn from_layout(legs: usize, partner: Vec<u32>) -> Result<Self, DiagramError> {
        Ok(ChineseCharacter { sk: Skeleton::new(legs, partner)? })
    }

    pub fn key(&self) -> CanonKey {
        canon::cc_canonical(&self.sk).1
    }

    pub fn canonical(&self) -> ChineseCharacter {
        ChineseCharacter { sk: canon::cc_canonical(&self.sk).0 }
    }

    pub fn from_key(key: &CanonKey) -> Result<Self, DiagramError> {
        match key.decode()? {
            (canon::Kind::Cc, sk) => Ok(ChineseCharacter { sk }),
            (canon::Kind::Ccd, _) => Err(DiagramError::WrongKind {
                expected: "CC key",
                found: "CCD key",
            }),
        }
    }

    /// True when no component is an isolated chord.
    pub fn is_chordless(&self) -> bool {
        !self.components().iter().any(Component::is_chord)
    }

    /// Fuse two distinct legs into a new vertex reading counterclockwise
    /// (toward partner of `p`, toward the new leg, toward partner of `q`).
    pub fn fuse(&self, p: u32, q: u32) -> ChineseCharacter {
        assert!(p != q && self.is_leg(p) && self.is_leg(q));
        // put p, q last among the legs, then reuse the CCD fusion
        let l = self.legs() as u32;
        let mut legs: Vec<u32> = (0..l).filter(|&d| d != p && d != q).collect();
        legs.push(p);
        legs.push(q);
        let verts: Vec<(usize, usize)> = (0..self.trivalent()).map(|v| (v, 0)).collect();
        let sk = self.sk.relabel(&legs, &verts);
        let fused = Ccd { sk }.fuse(l as usize - 2);
        ChineseCharacter { sk: fused.sk }
    }

    /// Place the legs on a Wilson line in the given order of leg darts.
    pub fn arrange(&self, order: &[u32]) -> Ccd {
        assert_eq!(order.len(), self.legs());
        let verts: Vec<(usize, usize)> = (0..self.trivalent()).map(|v| (v, 0)).collect();
        Ccd { sk: self.sk.relabel(order, &verts) }
    }

    pub fn disjoint_union(&self, other: &ChineseCharacter) -> ChineseCharacter {
        ChineseCharacter { sk: self.sk.disjoint_union(&other.sk) }
    }

    /// Remove legs `p` and `q` and join what they were attached to. `None`
    /// when `p` and `q` form a chord (the result would be a bare circle).
    pub fn glue_legs(&self, p: u32, q: u32) -> Option<ChineseCharacter> {
        assert!(p != q && self.is_leg(p) && self.is_leg(q));
        if self.partner(p) == q {
            return None;
        }
        let legs: Vec<u32> = (0..self.legs() as u32).filter(|&d| d != p && d != q).collect();
        let vertices: Vec<[u32; 3]> = (0..self.trivalent()).map(|v| self.vertex_darts(v)).collect();
        let mut edges: Vec<(u32, u32)> = self
            .edges()
            .into_iter()
            .filter(|&(a, b)| ![a, b].iter().any(|x| *x == p || *x == q))
            .collect();
        edges.push((self.partner(p), self.partner(q)));
        Some(ChineseCharacter::from_parts(&legs, &vertices, &edges).expect("gluing keeps the diagram valid"))
    }
}
