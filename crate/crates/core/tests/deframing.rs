use jacobiws::deframing::*;
use jacobiws::diagram::*;
use jacobiws::hopf::*;
use jacobiws::linear::{int, Rational};
use num_traits::Zero;

fn basis(d: &Ccd) -> DiagramComb {
    DiagramComb::basis(d.key())
}

fn theta_power(k: usize) -> DiagramComb {
    let mut v = DiagramComb::basis(Ccd::empty().key());
    for _ in 0..k {
        v = connect_sum(&v, &basis(&theta())).unwrap();
    }
    v
}

#[test]
fn chord_deletion_examples() {
    assert_eq!(s(&basis(&theta())).unwrap(), DiagramComb::basis(Ccd::empty().key()));
    assert_eq!(s(&theta_power(2)).unwrap(), theta_power(1).scaled(&int(2)));
    let tadpole = enumerate_ccds(1).into_iter().find(|d| d.trivalent() == 1).unwrap();
    assert!(s(&basis(&tadpole)).unwrap().is_zero());
    // crossed chords: each deletion leaves theta
    let crossed = Ccd::chord(&[(0, 2), (1, 3)]).unwrap();
    assert_eq!(s(&basis(&crossed)).unwrap(), theta_power(1).scaled(&int(2)));
    let wheel = planar_representative(&Partition::new(vec![2]));
    assert!(s(&basis(&wheel)).unwrap().is_zero());
}

#[test]
fn chord_deletion_rejects_mixed_degrees() {
    let v = theta_power(1).add(&theta_power(2));
    assert!(s(&v).is_err());
}

#[test]
fn phi_kills_theta_powers() {
    for k in 1..=4 {
        assert!(phi(k, &theta_power(k)).unwrap().is_zero(), "k={k}");
    }
    assert_eq!(phi(0, &theta_power(0)).unwrap(), theta_power(0));
}

#[test]
fn phi_fixes_diagrams_without_chords() {
    for n in 1..=4 {
        for d in enumerate_ccds(n) {
            let v = basis(&d);
            if s(&v).unwrap().is_zero() {
                assert_eq!(phi(n, &v).unwrap(), v);
            }
        }
    }
}

#[test]
fn phi_properties_on_the_basis() {
    for n in 1..=4 {
        let a = build_a(n).unwrap();
        let lower = build_a(n - 1).unwrap();
        for k in a.basis_keys() {
            let v = DiagramComb::basis(k.clone());
            let p = phi(n, &v).unwrap();
            let pp = phi(n, &p).unwrap();
            assert_eq!(a.reduce(&pp).unwrap(), a.reduce(&p).unwrap(), "idempotence at {k}");
            let sp = s(&p).unwrap();
            assert!(lower.is_zero(&sp).unwrap(), "s(phi(v)) at {k}");
        }
    }
}

#[test]
fn phi_kills_isolated_chords() {
    for n in 1..=4 {
        let a = build_a(n).unwrap();
        for d in enumerate_ccds(n - 1) {
            let with_chord = connect_sum(&basis(&theta()), &basis(&d)).unwrap();
            assert!(a.is_zero(&phi(n, &with_chord).unwrap()).unwrap(), "{}", d.key());
        }
    }
}

#[test]
fn phi_is_well_defined_on_the_quotient() {
    for n in 1..=4 {
        let a = build_a(n).unwrap();
        for r in generate_stu(n) {
            assert!(a.is_zero(&phi(n, &r.to_lincomb()).unwrap()).unwrap());
        }
    }
}

#[test]
fn even_partition_lists() {
    let show = |n| even_partitions(n).iter().map(ToString::to_string).collect::<Vec<_>>();
    assert_eq!(show(0), vec!["[]"]);
    assert!(show(3).is_empty());
    assert_eq!(show(2), vec!["[2]"]);
    assert_eq!(show(4), vec!["[4]", "[2,2]"]);
    assert_eq!(show(6), vec!["[6]", "[4,2]", "[2,2,2]"]);
}

#[test]
fn wheels() {
    for parts in [vec![2], vec![4], vec![2, 2], vec![3], vec![4, 2]] {
        let p = Partition::new(parts.clone());
        let t = tau(&p);
        assert_eq!(t.legs(), p.total());
        assert_eq!(t.trivalent(), p.total());
        assert_eq!(t.degree(), p.total());
        assert_eq!(t.components().len(), p.len());
        assert!(t.is_chordless());
        assert_eq!(planar_representative(&p).key(), t.arrange(&(0..t.legs() as u32).collect::<Vec<_>>()).key());
    }
    // (2-1)! = 1 arrangement of the two-spoke wheel
    assert_eq!(e_set_keys(&Partition::new(vec![2])).len(), 1);
}

#[test]
fn odd_wheels_vanish() {
    for k in [1usize, 3] {
        let a = build_a(k).unwrap();
        assert!(a.is_zero(&expand_cc(&tau(&Partition::new(vec![k])))).unwrap());
    }
}

#[test]
fn wheel_ranks() {
    assert_eq!(dim_inn(2, &build_a(2).unwrap()).unwrap(), 1);
    assert_eq!(dim_inn(4, &build_a(4).unwrap()).unwrap(), 2);
    assert_eq!(dim_inn(3, &build_a(3).unwrap()).unwrap(), 0);
}

#[test]
fn decomposition_resums() {
    for n in 1..=4 {
        let a = build_a(n).unwrap();
        for d in enumerate_chord_diagrams(n).iter().chain(a.basis_ccds().iter()) {
            let v = basis(d);
            let dec = decompose(n, &v, &a).unwrap();
            assert_eq!(dec.kernel_part.add(&dec.phi), v);
            let mut total = dec.kernel_part.clone();
            for (legs, part) in &dec.invariant_parts {
                assert!(*legs >= 1 && *legs <= n);
                total = total.add(part);
            }
            assert!(a.is_zero(&total.sub(&v)).unwrap(), "{}", d.key());
            assert!(!dec.invariant_parts.contains_key(&0));
        }
    }
}

#[test]
fn deframed_wheel_is_its_own_top_piece() {
    let p = Partition::new(vec![2]);
    let a = build_a(2).unwrap();
    let v = basis(&planar_representative(&p));
    let dec = decompose(2, &v, &a).unwrap();
    assert!(dec.kernel_part.is_zero());
    let coords: Vec<Rational> = a.reduce(&dec.invariant_parts[&2]).unwrap();
    assert_eq!(coords, a.reduce(&v).unwrap());
    assert!(coords.iter().any(|c| !c.is_zero()));
}
