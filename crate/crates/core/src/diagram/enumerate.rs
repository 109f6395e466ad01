//! Enumeration of isomorphism classes.
//!
//! Every diagram with `t + 1` trivalent vertices, all of whose components
//! meet a leg, arises by fusing two legs of such a diagram with `t`
//! vertices (undo the fusion at any vertex adjacent to a leg). Enumeration
//! therefore starts from chord diagrams and closes under fusion, deduplicating
//! by canonical key. Components without legs are never produced.

use super::{CanonKey, Ccd, ChineseCharacter};
use std::collections::BTreeMap;

/// All perfect matchings of `0..2n`, as sorted pair lists.
pub fn perfect_matchings(n: usize) -> Vec<Vec<(u32, u32)>> {
    fn rec(free: &mut Vec<u32>, cur: &mut Vec<(u32, u32)>, out: &mut Vec<Vec<(u32, u32)>>) {
        if free.is_empty() {
            out.push(cur.clone());
            return;
        }
        let a = free.remove(0);
        for i in 0..free.len() {
            let b = free.remove(i);
            cur.push((a, b));
            rec(free, cur, out);
            cur.pop();
            free.insert(i, b);
        }
        free.insert(0, a);
    }
    let mut out = Vec::new();
    rec(&mut (0..2 * n as u32).collect(), &mut Vec::new(), &mut out);
    out
}

/// Chord diagrams of degree `n` up to rotation, canonical and sorted by key.
pub fn enumerate_chord_diagrams(n: usize) -> Vec<Ccd> {
    let mut seen: BTreeMap<CanonKey, Ccd> = BTreeMap::new();
    for m in perfect_matchings(n) {
        let d = Ccd::chord(&m).expect("matching is a valid chord diagram");
        let c = d.canonical();
        seen.entry(c.key()).or_insert(c);
    }
    seen.into_values().collect()
}

/// CCDs of degree `n`, grouped by number of trivalent vertices.
pub fn enumerate_ccds_by_trivalent(n: usize) -> Vec<Vec<Ccd>> {
    let mut levels = vec![enumerate_chord_diagrams(n)];
    loop {
        let mut next: BTreeMap<CanonKey, Ccd> = BTreeMap::new();
        for d in levels.last().unwrap() {
            if d.legs() < 2 {
                continue;
            }
            for i in 0..d.legs() {
                let c = d.fuse(i).canonical();
                next.entry(c.key()).or_insert(c);
            }
        }
        if next.is_empty() {
            break;
        }
        levels.push(next.into_values().collect());
    }
    levels
}

/// All CCDs of degree `n` with every component meeting the Wilson line,
/// ordered by trivalent count then key.
pub fn enumerate_ccds(n: usize) -> Vec<Ccd> {
    enumerate_ccds_by_trivalent(n).into_iter().flatten().collect()
}

/// Chinese characters of degree `n` with at least one leg per component.
/// With `chordless`, characters containing an isolated chord are dropped.
pub fn enumerate_chinese_characters(n: usize, chordless: bool) -> Vec<ChineseCharacter> {
    let pairs: Vec<(u32, u32)> = (0..n as u32).map(|i| (2 * i, 2 * i + 1)).collect();
    let legs: Vec<u32> = (0..2 * n as u32).collect();
    let start = ChineseCharacter::from_parts(&legs, &[], &pairs)
        .expect("disjoint chords")
        .canonical();
    let mut all: BTreeMap<CanonKey, ChineseCharacter> = BTreeMap::new();
    let mut frontier = vec![start];
    while !frontier.is_empty() {
        let mut next: BTreeMap<CanonKey, ChineseCharacter> = BTreeMap::new();
        for c in &frontier {
            all.insert(c.key(), c.clone());
            let l = c.legs() as u32;
            for p in 0..l {
                for q in 0..l {
                    if p != q {
                        let f = c.fuse(p, q).canonical();
                        next.entry(f.key()).or_insert(f);
                    }
                }
            }
        }
        frontier = next.into_values().collect();
    }
    all.into_values().filter(|c| !chordless || c.is_chordless()).collect()
}

/// Connected characters of degree `n >= 1` without legs, obtained by gluing
/// the two legs of connected two-leg characters of degree `n + 1`.
pub fn enumerate_closed_characters(n: usize) -> Vec<ChineseCharacter> {
    let mut all: BTreeMap<CanonKey, ChineseCharacter> = BTreeMap::new();
    for c in enumerate_chinese_characters(n + 1, true) {
        if c.legs() == 2 && c.components().len() == 1 {
            if let Some(g) = c.glue_legs(0, 1) {
                let g = g.canonical();
                all.entry(g.key()).or_insert(g);
            }
        }
    }
    all.into_values().collect()
}
