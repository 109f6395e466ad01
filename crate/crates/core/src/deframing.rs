//! Chord deletion, the deframing projector and the wheel basis.

use crate::diagram::{enumerate_chinese_characters, CanonKey, Ccd, ChineseCharacter};
use crate::hopf::{ccd_of, check_degree, connect_sum, expand_cc, AlgebraSpace, DiagramComb, HopfError};
use crate::linear::{rank, solve_linear, Rational};
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Multiset of positive parts, sorted descending.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition(pub Vec<usize>);

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// Partitions of `n` into positive even parts, in reverse lexicographic order.
pub fn even_partitions(n: usize) -> Vec<Partition> {
    fn rec(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        let mut p = max.min(rest) & !1;
        while p >= 2 {
            cur.push(p);
            rec(rest - p, p, cur, out);
            cur.pop();
            p -= 2;
        }
    }
    let mut out = Vec::new();
    if n % 2 == 0 {
        rec(n, n, &mut Vec::new(), &mut out);
    }
    out
}

/// The single chord diagram of degree 1.
pub fn theta() -> Ccd {
    Ccd::chord(&[(0, 1)]).unwrap()
}

/// Disjoint union of wheels: part `k` is a cycle of `k` vertices, each with
/// one radial leg. Vertex `i` reads counterclockwise (spoke, rim toward
/// `i + 1`, rim from `i - 1`).
pub fn tau(p: &Partition) -> ChineseCharacter {
    let mut legs = Vec::new();
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    let mut next = 0u32;
    for &k in &p.0 {
        assert!(k >= 1, "wheel parts must be positive");
        let first_leg = next;
        next += k as u32;
        let first_dart = next;
        next += 3 * k as u32;
        for i in 0..k as u32 {
            let leg = first_leg + i;
            let (s, o, n) = (first_dart + 3 * i, first_dart + 3 * i + 1, first_dart + 3 * i + 2);
            legs.push(leg);
            vertices.push([s, o, n]);
            edges.push((leg, s));
            let j = (i + 1) % k as u32;
            edges.push((o, first_dart + 3 * j + 2));
        }
    }
    ChineseCharacter::from_parts(&legs, &vertices, &edges).expect("wheel is a valid character")
}

/// The member of `E(tau(P))` with legs placed wheel by wheel, in rim order.
pub fn planar_representative(p: &Partition) -> Ccd {
    let c = tau(p);
    let order: Vec<u32> = (0..c.legs() as u32).collect();
    c.arrange(&order)
}

/// Distinct classes occurring in `expand_cc(v)`.
pub fn e_set(v: &ChineseCharacter) -> Vec<Ccd> {
    expand_cc(v).keys().map(|k| Ccd::from_key(k).expect("expansion key decodes")).collect()
}

/// `s_n`: sum over chord components, deleting each in turn.
pub fn s(v: &DiagramComb) -> Result<DiagramComb, HopfError> {
    let mut out = DiagramComb::new();
    let mut degree = None;
    for (k, c) in v.iter() {
        let d = ccd_of(k)?;
        match degree {
            None => degree = Some(d.degree()),
            Some(n) if n != d.degree() => return Err(HopfError::Degree { expected: n, found: d.degree() }),
            _ => {}
        }
        let comps = d.components();
        for (i, comp) in comps.iter().enumerate() {
            if comp.is_chord() {
                let mut del = vec![false; comps.len()];
                del[i] = true;
                out.add_term(d.delete_components(&comps, &del).key(), c.clone());
            }
        }
    }
    Ok(out)
}

/// `phi_n = sum_i (-1)^i / i! theta^i # s^i`.
pub fn phi(n: usize, v: &DiagramComb) -> Result<DiagramComb, HopfError> {
    check_degree(v, n)?;
    let mut out = v.clone();
    let mut si = v.clone();
    let mut theta_i = DiagramComb::basis(Ccd::empty().key());
    let theta1 = DiagramComb::basis(theta().key());
    let mut coeff = Rational::one();
    for i in 1..=n {
        si = s(&si)?;
        if si.is_zero() {
            break;
        }
        theta_i = connect_sum(&theta_i, &theta1)?;
        coeff = -coeff / Rational::from_integer(i.into());
        out.axpy(&coeff, &connect_sum(&theta_i, &si)?);
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct DeframedDecomposition {
    pub phi: DiagramComb,
    pub kernel_part: DiagramComb,
    /// Leg count -> piece of `phi(v)` spanned by chordless characters.
    pub invariant_parts: BTreeMap<usize, DiagramComb>,
}

/// Chordless characters of degree `n` with their reduced expansions.
pub fn chordless_images(n: usize, space: &AlgebraSpace) -> Result<Vec<(ChineseCharacter, Vec<Rational>)>, HopfError> {
    let mut out = Vec::new();
    for sigma in enumerate_chinese_characters(n, true) {
        if sigma.has_closed_component() {
            continue;
        }
        let r = space.reduce(&expand_cc(&sigma))?;
        out.push((sigma, r));
    }
    Ok(out)
}

/// Split `v` into `v - phi(v)` and leg-graded pieces of `phi(v)`.
pub fn decompose(n: usize, v: &DiagramComb, space: &AlgebraSpace) -> Result<DeframedDecomposition, HopfError> {
    let phi_v = phi(n, v)?;
    let kernel_part = v.sub(&phi_v);
    let images = chordless_images(n, space)?;
    let target = space.reduce(&phi_v)?;
    let columns: Vec<Vec<Rational>> = images.iter().map(|(_, r)| r.clone()).collect();
    let a = if target.iter().all(Zero::is_zero) {
        vec![Rational::zero(); columns.len()]
    } else {
        solve_linear(&columns, &target).ok_or_else(|| {
            HopfError::Linear(crate::linear::LinearError::UnknownKey(
                "phi(v) is not in the span of chordless characters".into(),
            ))
        })?
    };
    let mut invariant_parts: BTreeMap<usize, DiagramComb> = BTreeMap::new();
    for ((sigma, _), c) in images.iter().zip(&a) {
        if !c.is_zero() {
            invariant_parts.entry(sigma.legs()).or_default().axpy(c, &expand_cc(sigma));
        }
    }
    Ok(DeframedDecomposition { phi: phi_v, kernel_part, invariant_parts })
}

/// Rank of the wheel images in the quotient.
pub fn dim_inn(n: usize, space: &AlgebraSpace) -> Result<usize, HopfError> {
    let mut vecs = Vec::new();
    for p in even_partitions(n) {
        vecs.push(space.reduce(&expand_cc(&tau(&p)))?);
    }
    Ok(if vecs.is_empty() { 0 } else { rank(&vecs) })
}

/// Keys of the members of `E(tau(P))`.
pub fn e_set_keys(p: &Partition) -> Vec<CanonKey> {
    expand_cc(&tau(p)).keys().cloned().collect()
}
