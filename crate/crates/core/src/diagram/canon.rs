//! Canonical labellings.
//!
//! A labelling is fixed by a start (a leg, or a vertex dart for closed
//! components) followed by a breadth-first traversal where each newly
//! reached vertex is rotated so that its entry dart comes first. Isomorphic
//! diagrams produce identical dart arrays for corresponding starts, so the
//! lexicographically least array over all starts is a complete invariant.

use super::{DiagramError, Skeleton};
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Kind {
    Ccd = 0,
    Cc = 1,
}

/// Stable encoding of an isomorphism class: big-endian `u16` words
/// `[kind, legs, vertices, partner of dart 0, partner of dart 1, ...]` of the
/// canonical representative.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonKey(Vec<u8>);

impl CanonKey {
    fn encode(kind: Kind, sk: &Skeleton) -> CanonKey {
        let mut words = Vec::with_capacity(3 + sk.n_darts());
        words.push(kind as u16);
        words.push(to_u16(sk.legs()));
        words.push(to_u16(sk.n_vertices()));
        words.extend(sk.partners().iter().map(|&p| to_u16(p as usize)));
        CanonKey(words.iter().flat_map(|w| w.to_be_bytes()).collect())
    }

    pub(crate) fn decode(&self) -> Result<(Kind, Skeleton), DiagramError> {
        let w = self.words();
        if w.len() < 3 {
            return Err(DiagramError::BadKey("too short".into()));
        }
        let kind = match w[0] {
            0 => Kind::Ccd,
            1 => Kind::Cc,
            k => return Err(DiagramError::BadKey(format!("unknown kind {k}"))),
        };
        let (l, t) = (w[1] as usize, w[2] as usize);
        if w.len() != 3 + l + 3 * t {
            return Err(DiagramError::BadKey("length does not match header".into()));
        }
        let partner = w[3..].iter().map(|&x| x as u32).collect();
        Ok((kind, Skeleton::new(l, partner)?))
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn from_bytes(bytes: Vec<u8>) -> Result<CanonKey, DiagramError> {
        if bytes.len() % 2 != 0 {
            return Err(DiagramError::BadKey("odd byte length".into()));
        }
        let key = CanonKey(bytes);
        key.decode()?;
        Ok(key)
    }

    pub fn words(&self) -> Vec<u16> {
        self.0.chunks(2).map(|c| u16::from_be_bytes([c[0], c[1]])).collect()
    }

    /// Parse the dotted decimal form produced by `Display`.
    pub fn parse(s: &str) -> Result<CanonKey, DiagramError> {
        let words: Result<Vec<u16>, _> = s.split('.').map(str::parse::<u16>).collect();
        let words = words.map_err(|e| DiagramError::BadKey(format!("{s}: {e}")))?;
        CanonKey::from_bytes(words.iter().flat_map(|w| w.to_be_bytes()).collect())
    }

    pub fn is_ccd(&self) -> bool {
        self.0.get(1) == Some(&0)
    }
}

impl fmt::Display for CanonKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let words = self.words();
        for (i, w) in words.iter().enumerate() {
            if i > 0 {
                f.write_str(".")?;
            }
            write!(f, "{w}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for CanonKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonKey({self})")
    }
}

fn to_u16(x: usize) -> u16 {
    u16::try_from(x).expect("diagram too large for a canonical key")
}

/// Breadth-first labelling. `legs` holds the already-ordered legs (CCD
/// case); when `discover_legs` is set, legs are instead numbered as they are
/// reached (CC case) starting from the contents of `legs`.
struct Traversal<'a> {
    sk: &'a Skeleton,
    vertex_seen: Vec<bool>,
    leg_seen: Vec<bool>,
    legs: Vec<u32>,
    vertices: Vec<(usize, usize)>,
}

impl<'a> Traversal<'a> {
    fn new(sk: &'a Skeleton) -> Self {
        Traversal {
            sk,
            vertex_seen: vec![false; sk.n_vertices()],
            leg_seen: vec![false; sk.legs()],
            legs: Vec::new(),
            vertices: Vec::new(),
        }
    }

    fn reach(&mut self, d: u32) {
        match self.sk.vertex_of(d) {
            Some((v, r)) => {
                if !self.vertex_seen[v] {
                    self.vertex_seen[v] = true;
                    self.vertices.push((v, r));
                }
            }
            None => {
                if !self.leg_seen[d as usize] {
                    self.leg_seen[d as usize] = true;
                    self.legs.push(d);
                }
            }
        }
    }

    /// Reach partners of all known legs in order, then drain the vertex queue.
    fn run(&mut self) {
        let mut li = 0;
        let mut vi = 0;
        loop {
            if li < self.legs.len() {
                let d = self.legs[li];
                li += 1;
                self.reach(self.sk.partner(d));
            } else if vi < self.vertices.len() {
                let (v, r) = self.vertices[vi];
                vi += 1;
                let ds = self.sk.vertex_darts(v);
                for j in 0..3 {
                    self.reach(self.sk.partner(ds[(j + r) % 3]));
                }
            } else {
                break;
            }
        }
    }
}

/// Local dart array of a selection, used for comparisons.
fn encode_selection(sk: &Skeleton, legs: &[u32], vertices: &[(usize, usize)]) -> Vec<u32> {
    sk.relabel(legs, vertices).partner
}

struct ClosedPart {
    enc: (usize, Vec<u32>),
    vertices: Vec<(usize, usize)>,
}

fn canonical_closed(sk: &Skeleton, comp_vertices: &[usize]) -> ClosedPart {
    let mut best: Option<ClosedPart> = None;
    for &v in comp_vertices {
        for r in 0..3 {
            let mut tr = Traversal::new(sk);
            tr.vertex_seen[v] = true;
            tr.vertices.push((v, r));
            tr.run();
            let enc = (tr.vertices.len(), encode_selection(sk, &[], &tr.vertices));
            if best.as_ref().map_or(true, |b| enc < b.enc) {
                best = Some(ClosedPart { enc, vertices: tr.vertices });
            }
        }
    }
    best.expect("closed component without vertices")
}

fn closed_parts(sk: &Skeleton) -> Vec<ClosedPart> {
    let mut parts: Vec<ClosedPart> = sk
        .components()
        .into_iter()
        .filter(|c| c.legs.is_empty())
        .map(|c| canonical_closed(sk, &c.vertices))
        .collect();
    parts.sort_by(|a, b| a.enc.cmp(&b.enc));
    parts
}

pub(crate) fn ccd_canonical(sk: &Skeleton) -> (Skeleton, CanonKey) {
    let l = sk.legs();
    let mut best: Option<(Vec<u32>, Vec<(usize, usize)>, Vec<u32>)> = None;
    for r in 0..l.max(1) {
        let legs: Vec<u32> = (0..l).map(|i| ((i + r) % l) as u32).collect();
        let mut tr = Traversal::new(sk);
        for &d in &legs {
            tr.reach(d);
        }
        tr.run();
        let enc = encode_selection(sk, &legs, &tr.vertices);
        if best.as_ref().map_or(true, |b| enc < b.0) {
            best = Some((enc, tr.vertices, legs));
        }
    }
    let (_, mut vertices, legs) = best.unwrap();
    for part in closed_parts(sk) {
        vertices.extend(part.vertices);
    }
    let canon = sk.relabel(&legs, &vertices);
    let key = CanonKey::encode(Kind::Ccd, &canon);
    (canon, key)
}

pub(crate) fn cc_canonical(sk: &Skeleton) -> (Skeleton, CanonKey) {
    struct Part {
        enc: (usize, usize, Vec<u32>),
        legs: Vec<u32>,
        vertices: Vec<(usize, usize)>,
    }
    let mut parts: Vec<Part> = Vec::new();
    for c in sk.components() {
        if c.legs.is_empty() {
            let p = canonical_closed(sk, &c.vertices);
            parts.push(Part { enc: (0, p.enc.0, p.enc.1), legs: Vec::new(), vertices: p.vertices });
            continue;
        }
        let mut best: Option<Part> = None;
        for &s in &c.legs {
            let mut tr = Traversal::new(sk);
            tr.reach(s);
            tr.run();
            let enc = (
                tr.legs.len(),
                tr.vertices.len(),
                encode_selection(sk, &tr.legs, &tr.vertices),
            );
            if best.as_ref().map_or(true, |b| enc < b.enc) {
                best = Some(Part { enc, legs: tr.legs, vertices: tr.vertices });
            }
        }
        parts.push(best.unwrap());
    }
    parts.sort_by(|a, b| a.enc.cmp(&b.enc));
    let legs: Vec<u32> = parts.iter().flat_map(|p| p.legs.iter().copied()).collect();
    let vertices: Vec<(usize, usize)> =
        parts.iter().flat_map(|p| p.vertices.iter().copied()).collect();
    let canon = sk.relabel(&legs, &vertices);
    let key = CanonKey::encode(Kind::Cc, &canon);
    (canon, key)
}
