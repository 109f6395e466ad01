use jacobiws::diagram::*;
use proptest::prelude::*;
use std::collections::BTreeSet;

fn perms(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in perms(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

fn rotations(t: usize) -> Vec<Vec<usize>> {
    (0..3usize.pow(t as u32))
        .map(|mut x| {
            (0..t)
                .map(|_| {
                    let r = x % 3;
                    x /= 3;
                    r
                })
                .collect()
        })
        .collect()
}

/// Relabel a layout: leg `i` goes to `leg_map[i]`, vertex `k` to `vperm[k]`
/// rotated by `rot[k]`.
fn relabel(legs: usize, partner: &[u32], leg_map: &[usize], vperm: &[usize], rot: &[usize]) -> Vec<u32> {
    let sigma = |d: u32| -> u32 {
        let d = d as usize;
        if d < legs {
            leg_map[d] as u32
        } else {
            let (k, j) = ((d - legs) / 3, (d - legs) % 3);
            (legs + 3 * vperm[k] + (j + 3 - rot[k]) % 3) as u32
        }
    };
    let mut out = vec![0u32; partner.len()];
    for (d, &p) in partner.iter().enumerate() {
        out[sigma(d as u32) as usize] = sigma(p);
    }
    out
}

/// Lexicographically least partner vector over all relabellings: Wilson
/// rotations (or all leg permutations when `cyclic` is false), vertex
/// permutations and vertex rotations.
fn brute_form(legs: usize, partner: &[u32], cyclic: bool) -> Vec<u32> {
    let t = (partner.len() - legs) / 3;
    let leg_maps: Vec<Vec<usize>> = if cyclic {
        (0..legs.max(1)).map(|r| (0..legs).map(|i| (i + legs - r) % legs.max(1)).collect()).collect()
    } else {
        perms(legs)
    };
    let mut best: Option<Vec<u32>> = None;
    for lm in &leg_maps {
        for vp in perms(t) {
            for rot in rotations(t) {
                let c = relabel(legs, partner, lm, &vp, &rot);
                if best.as_ref().map_or(true, |b| c < *b) {
                    best = Some(c);
                }
            }
        }
    }
    best.unwrap()
}

fn matchings(items: &[u32]) -> Vec<Vec<(u32, u32)>> {
    if items.is_empty() {
        return vec![vec![]];
    }
    let a = items[0];
    let mut out = Vec::new();
    for i in 1..items.len() {
        let rest: Vec<u32> = items[1..].iter().copied().filter(|&x| x != items[i]).collect();
        for mut m in matchings(&rest) {
            m.push((a, items[i]));
            out.push(m);
        }
    }
    out
}

/// True when some connected component has no leg.
fn has_closed(legs: usize, partner: &[u32]) -> bool {
    let n = partner.len();
    let mut comp: Vec<usize> = (0..n).collect();
    fn find(c: &mut [usize], mut x: usize) -> usize {
        while c[x] != x {
            c[x] = c[c[x]];
            x = c[x];
        }
        x
    }
    let union = |c: &mut Vec<usize>, a: usize, b: usize| {
        let (ra, rb) = (find(c, a), find(c, b));
        c[ra] = rb;
    };
    for d in 0..n {
        union(&mut comp, d, partner[d] as usize);
    }
    for k in 0..(n - legs) / 3 {
        let b = legs + 3 * k;
        union(&mut comp, b, b + 1);
        union(&mut comp, b, b + 2);
    }
    let with_leg: BTreeSet<usize> = (0..legs).map(|d| find(&mut comp, d)).collect();
    (0..n).any(|d| !with_leg.contains(&find(&mut comp, d)))
}

/// Isomorphism classes of layouts of degree `n` (at most `max_t` vertices)
/// with no closed component, counted by brute force.
fn brute_classes(n: usize, max_t: usize, cyclic: bool, chordless: bool) -> BTreeSet<(usize, Vec<u32>)> {
    let mut out = BTreeSet::new();
    for t in 0..=max_t.min(2 * n) {
        let legs = 2 * n - t;
        let darts: Vec<u32> = (0..(legs + 3 * t) as u32).collect();
        for m in matchings(&darts) {
            let mut partner = vec![0u32; darts.len()];
            for (a, b) in m {
                partner[a as usize] = b;
                partner[b as usize] = a;
            }
            if has_closed(legs, &partner) {
                continue;
            }
            if chordless && (0..legs).any(|d| (partner[d] as usize) < legs) {
                continue;
            }
            out.insert((legs, brute_form(legs, &partner, cyclic)));
        }
    }
    out
}

#[test]
fn chord_diagram_counts() {
    let counts: Vec<usize> = (0..=5).map(|n| enumerate_chord_diagrams(n).len()).collect();
    assert_eq!(counts, vec![1, 1, 2, 5, 18, 105]);
}

#[test]
fn empty_ccd_is_the_only_degree_zero_diagram() {
    let all = enumerate_ccds(0);
    assert_eq!(all.len(), 1);
    assert_eq!(all[0].legs(), 0);
}

#[test]
fn degree_one_has_chord_and_tadpole() {
    let all = enumerate_ccds(1);
    assert_eq!(all.len(), 2);
    assert_eq!(all.iter().filter(|d| d.is_chord_diagram()).count(), 1);
}

#[test]
fn ccd_enumeration_matches_brute_force_classes() {
    for (n, max_t) in [(1, 2), (2, 4), (3, 2)] {
        let brute = brute_classes(n, max_t, true, false);
        let ours: Vec<Ccd> = enumerate_ccds(n).into_iter().filter(|d| d.trivalent() <= max_t).collect();
        let mut forms = BTreeSet::new();
        for d in &ours {
            let p = d.partners().to_vec();
            forms.insert((d.legs(), brute_form(d.legs(), &p, true)));
        }
        assert_eq!(forms.len(), ours.len(), "distinct keys must be non-isomorphic (n={n})");
        assert_eq!(forms, brute, "enumeration must hit every class (n={n})");
    }
}

#[test]
fn cc_enumeration_matches_brute_force_classes() {
    for n in 1..=2 {
        let brute = brute_classes(n, 2 * n, false, false);
        let ours = enumerate_chinese_characters(n, false);
        let forms: BTreeSet<_> =
            ours.iter().map(|c| (c.legs(), brute_form(c.legs(), c.partners(), false))).collect();
        assert_eq!(forms.len(), ours.len());
        assert_eq!(forms, brute, "n={n}");
        let chordless = brute_classes(n, 2 * n, false, true);
        assert_eq!(enumerate_chinese_characters(n, true).len(), chordless.len());
    }
}

#[test]
fn wheel_two_is_a_chordless_degree_two_character() {
    let legs = [0u32, 1];
    let c = ChineseCharacter::from_parts(&legs, &[[2, 3, 4], [5, 6, 7]], &[(0, 2), (1, 5), (3, 7), (4, 6)]).unwrap();
    let keys: BTreeSet<_> = enumerate_chinese_characters(2, true).iter().map(|c| c.key()).collect();
    assert!(keys.contains(&c.key()));
}

#[test]
fn keys_decode_to_the_same_class() {
    for n in 0..=3 {
        for d in enumerate_ccds(n) {
            let k = d.key();
            let back = Ccd::from_key(&k).unwrap();
            assert_eq!(back.key(), k);
            assert_eq!(CanonKey::parse(&k.to_string()).unwrap(), k);
        }
        for c in enumerate_chinese_characters(n, false) {
            assert_eq!(ChineseCharacter::from_key(&c.key()).unwrap().key(), c.key());
        }
    }
}

#[test]
fn key_kinds_are_not_interchangeable() {
    let c = enumerate_chinese_characters(1, false).remove(0);
    assert!(matches!(Ccd::from_key(&c.key()), Err(DiagramError::WrongKind { .. })));
    assert!(CanonKey::parse("1.2.x").is_err());
}

#[test]
fn text_roundtrip() {
    for n in 0..=3 {
        for d in enumerate_ccds(n) {
            let text = d.serialize();
            let back = parse_diagram(&text).unwrap().into_ccd().unwrap();
            assert_eq!(back.key(), d.key(), "{text}");
        }
        for c in enumerate_chinese_characters(n, false) {
            let back = parse_diagram(&c.serialize()).unwrap().into_cc().unwrap();
            assert_eq!(back.key(), c.key());
        }
    }
}

#[test]
fn parse_accepts_comments_and_semicolons() {
    let a = parse_diagram("ccd v1 # theta\ndegree 1; wilson p q\nedge p q\n").unwrap();
    let theta = Ccd::chord(&[(0, 1)]).unwrap();
    assert_eq!(a.into_ccd().unwrap().key(), theta.key());
}

#[test]
fn parse_errors() {
    let bad = [
        ("", "empty"),
        ("graph v1", "header"),
        ("ccd v1\nwilson a b\nedge a c", "undeclared"),
        ("ccd v1\nwilson a a\nedge a a", "duplicate"),
        ("ccd v1\nwilson a b c d\nedge a b", "unpaired"),
        ("ccd v1\nwilson a b c\nedge a b\nedge a c", "multiply"),
        ("ccd v1\nwilson a b\ndegree 2\nedge a b", "degree"),
        ("ccd v1\nwilson a\nvertex v x y\nedge a x", "vertex arity"),
        ("ccd v1\nwilson a b c\nvertex v x y z\nedge a x\nedge b y\nedge c z\nbogus", "unknown"),
    ];
    for (text, what) in bad {
        assert!(parse_diagram(text).is_err(), "{what} should fail");
    }
    assert!(matches!(
        parse_diagram("ccd v1\nwilson a b c d\nedge a b"),
        Err(DiagramError::UnpairedDart(_))
    ));
    assert!(matches!(parse_diagram("ccd v1\nwilson a b\nedge a c"), Err(DiagramError::UndeclaredDart(_))));
    assert!(matches!(parse_diagram("ccd\nwilson a\nedge a b"), Err(DiagramError::UndeclaredDart(_))));
    match parse_diagram("ccd v1\nwilson a b\nfrob a") {
        Err(DiagramError::Syntax { line, col, .. }) => assert_eq!((line, col), (3, 1)),
        other => panic!("expected syntax error, got {other:?}"),
    }
    let odd = parse_diagram("ccd v1\nwilson a b c d\nvertex v x y z\nedge a x\nedge b y\nedge c z\nedge d d");
    assert!(odd.is_err());
}

#[test]
fn cc_text_kind_checked() {
    let cc = parse_diagram("cc v1\nlegs a b\nedge a b").unwrap();
    assert!(cc.clone().into_ccd().is_err());
    assert_eq!(cc.degree(), 1);
}

#[test]
fn rotation_and_vertex_reversal() {
    for d in enumerate_ccds(3) {
        for k in 0..d.legs() {
            assert_eq!(d.rotate(k).key(), d.key());
        }
        for v in 0..d.trivalent() {
            assert_eq!(d.reverse_vertex(v).reverse_vertex(v).key(), d.key());
        }
    }
}

#[test]
fn glue_legs_of_wheel_gives_closed_theta_graph() {
    let wheel = ChineseCharacter::from_parts(&[0, 1], &[[2, 3, 4], [5, 6, 7]], &[(0, 2), (1, 5), (3, 7), (4, 6)]).unwrap();
    let g = wheel.glue_legs(0, 1).unwrap();
    assert_eq!(g.legs(), 0);
    assert_eq!(g.trivalent(), 2);
    assert!(g.has_closed_component());
    let chord = ChineseCharacter::from_parts(&[0, 1], &[], &[(0, 1)]).unwrap();
    assert!(chord.glue_legs(0, 1).is_none());
    let closed1 = enumerate_closed_characters(1);
    // planar theta, twisted theta, dumbbell
    assert_eq!(closed1.len(), 3);
    assert!(closed1.iter().all(|c| c.legs() == 0 && c.trivalent() == 2));
    assert!(closed1.iter().any(|c| c.key() == g.canonical().key()));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]
    #[test]
    fn relabelling_preserves_the_key(
        idx in 0usize..1000,
        r in 0usize..64,
        order in prop::collection::vec(any::<u32>(), 6),
        rot in prop::collection::vec(0..3usize, 6),
    ) {
        let all = enumerate_ccds(3);
        let d = &all[idx % all.len()];
        let (legs, t) = (d.legs(), d.trivalent());
        let mut vp: Vec<usize> = (0..t).collect();
        vp.sort_by_key(|&k| (order[k], k));
        let lm: Vec<usize> = (0..legs).map(|i| (i + r) % legs.max(1)).collect();
        let p = relabel(legs, d.partners(), &lm, &vp, &rot[..t]);
        let e = Ccd::from_layout(legs, p).unwrap();
        prop_assert_eq!(e.key(), d.key());
    }
}
