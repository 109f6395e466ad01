use jacobiws::conway::*;
use jacobiws::deframing::*;
use jacobiws::diagram::*;
use jacobiws::hopf::*;
use jacobiws::linear::{int, Rational};
use num_traits::Zero;

/// Boundary components of the surface obtained by attaching a band to a
/// disk along every chord: the cycles of `i -> matching(i) + 1`.
fn boundary_components(d: &Ccd) -> usize {
    let l = d.legs();
    let step = |i: usize| (d.partner(i as u32) as usize + 1) % l;
    let mut seen = vec![false; l];
    let mut cycles = 0;
    for start in 0..l {
        if seen[start] {
            continue;
        }
        cycles += 1;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = step(i);
        }
    }
    cycles.max(1)
}

#[test]
fn conway_on_chord_diagrams_matches_band_surfaces() {
    let tower = Tower::new(Model::Full);
    for n in 1..=4 {
        let c = tower.conway(n).unwrap();
        for d in enumerate_chord_diagrams(n) {
            let expected = if boundary_components(&d) == 1 { int(1) } else { Rational::zero() };
            assert_eq!(c.eval_ccd(&d).unwrap(), expected, "n={n} {}", d.key());
        }
    }
}

#[test]
fn low_degree_values() {
    let tower = Tower::new(Model::Full);
    let crossed = Ccd::chord(&[(0, 2), (1, 3)]).unwrap();
    let parallel = Ccd::chord(&[(0, 1), (2, 3)]).unwrap();
    assert_eq!(tower.conway(2).unwrap().eval_ccd(&crossed).unwrap(), int(1));
    assert_eq!(tower.conway(2).unwrap().eval_ccd(&parallel).unwrap(), int(0));
    assert_eq!(tower.conway_bar(2).unwrap().eval_ccd(&crossed).unwrap(), int(-1));
    assert_eq!(tower.conway(1).unwrap().eval_ccd(&theta()).unwrap(), int(0));
    assert_eq!(tower.conway(0).unwrap().values, vec![int(1)]);
    let w2 = planar_representative(&Partition::new(vec![2]));
    assert_eq!(tower.conway(2).unwrap().eval_ccd(&w2).unwrap(), int(-2));
    assert_eq!(tower.conway_bar(2).unwrap().eval_ccd(&w2).unwrap(), int(2));
    // four mutually crossing chords
    let star = Ccd::chord(&[(0, 4), (1, 5), (2, 6), (3, 7)]).unwrap();
    assert_eq!(boundary_components(&star), 1);
    assert_eq!(tower.conway(4).unwrap().eval_ccd(&star).unwrap(), int(1));
    for n in [1, 3] {
        assert!(tower.conway(n).unwrap().values.iter().all(Zero::is_zero));
        assert!(tower.conway_bar(n).unwrap().values.iter().all(Zero::is_zero));
    }
}

#[test]
fn wheel_values() {
    let tower = Tower::new(Model::Full);
    for n in [2, 4] {
        let (c, cb) = (tower.conway(n).unwrap(), tower.conway_bar(n).unwrap());
        for p in even_partitions(n) {
            let k = p.len() as u32;
            for key in e_set_keys(&p) {
                assert_eq!(c.eval_key(&key).unwrap(), int((-2i64).pow(k)), "{p}");
                assert_eq!(cb.eval_key(&key).unwrap(), int(2i64.pow(k)), "{p}");
            }
        }
    }
}

#[test]
fn isolated_chords_are_killed() {
    let tower = Tower::new(Model::Full);
    for n in 1..=4 {
        let (c, cb) = (tower.conway(n).unwrap(), tower.conway_bar(n).unwrap());
        for d in enumerate_ccds(n) {
            // a chord joining neighbouring points of the Wilson loop
            let l = d.legs() as u32;
            if (0..l).any(|i| d.partner(i) == (i + 1) % l) {
                assert!(c.eval_ccd(&d).unwrap().is_zero(), "{}", d.key());
                assert!(cb.eval_ccd(&d).unwrap().is_zero(), "{}", d.key());
            }
        }
    }
}

#[test]
fn convolution_identity() {
    let tower = Tower::new(Model::Full);
    for n in 0..=4 {
        let rep = check_convolution_identity(n, &tower).unwrap();
        assert!(rep.passes(), "n={n}: {:?}", rep.values);
        assert_eq!(rep.values.len(), tower.space(n).unwrap().dim());
    }
}

#[test]
fn product_weight_system_matches_pointwise_evaluation() {
    let tower = Tower::new(Model::Full);
    let (c2, cb2) = (tower.conway(2).unwrap(), tower.conway_bar(2).unwrap());
    let target = tower.space(4).unwrap();
    let prod = ws_product(&c2, &cb2, target.clone()).unwrap();
    for d in enumerate_ccds(4) {
        let v = DiagramComb::basis(d.key());
        assert_eq!(prod.eval(&v).unwrap(), product_value(&c2, &cb2, &v).unwrap(), "{}", d.key());
    }
}

#[test]
fn counit_is_unit_of_convolution() {
    let tower = Tower::new(Model::Full);
    let e0 = counit(tower.space(0).unwrap());
    let c2 = tower.conway(2).unwrap();
    let prod = ws_product(&e0, &c2, tower.space(2).unwrap()).unwrap();
    assert_eq!(prod.values, c2.values);
}
