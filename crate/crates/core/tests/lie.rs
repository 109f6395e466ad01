use jacobiws::conway::Tower;
use jacobiws::deframing::{phi, planar_representative, theta, Partition};
use jacobiws::diagram::*;
use jacobiws::hopf::{DiagramComb, Model};
use jacobiws::lie::*;
use jacobiws::linear::{int, rat, Rational};
use num_traits::{One, Zero};
use std::collections::HashMap;

fn builtins() -> Vec<AlgebraSpec> {
    vec![sl2(), gl11(), osp12()]
}

#[test]
fn builtin_specs_validate() {
    for a in builtins() {
        let rep = validate_spec(&a);
        assert!(rep.passed(), "{}:\n{rep}", a.name);
    }
}

#[test]
fn literal_gl11_fails_only_the_inverse_check() {
    let rep = validate_spec(&gl11_literal());
    assert!(!rep.passed());
    let failed: Vec<&str> = rep.checks.iter().filter(|c| c.violation.is_some()).map(|c| c.name).collect();
    assert_eq!(failed, vec!["inverse"]);
    assert!(rep.to_string().contains("FAIL inverse"));
}

fn broken_sl2() -> AlgebraSpec {
    let mut a = sl2();
    // [H, X] = 3X: the (H, X, Y) Jacobi sum becomes -H
    a.set_bracket(0, 1, 1, int(3));
    a
}

#[test]
fn corrupted_bracket_fails_jacobi() {
    let rep = validate_spec(&broken_sl2());
    assert!(rep.check("super-jacobi").unwrap().violation.is_some());
}

#[test]
fn spec_text_roundtrip() {
    for a in builtins().into_iter().chain([gl11_literal()]) {
        let text = a.to_text();
        let back = AlgebraSpec::parse(&text).unwrap();
        assert_eq!(back, a, "{text}");
        assert_eq!(AlgebraSpec::builtin(&a.name).unwrap(), a);
    }
}

#[test]
fn spec_parse_defaults_and_errors() {
    let mut text = String::new();
    for line in sl2().to_text().lines() {
        if !line.starts_with("b ") {
            text.push_str(line);
            text.push('\n');
        }
    }
    assert_eq!(AlgebraSpec::parse(&text).unwrap(), sl2());
    assert!(matches!(AlgebraSpec::parse("algebra x\ndim 2\nparity 0\n"), Err(LieError::Parse { .. })));
    assert!(matches!(AlgebraSpec::parse("algebra x\ndim 1\nparity 0\nf 0 0 3 1\n"), Err(LieError::Parse { .. })));
    assert!(AlgebraSpec::parse("algebra x\ndim 1\nparity 0\nbogus\n").is_err());
}

fn show(spec: &AlgebraSpec, d: &Ccd) -> String {
    w_l(spec, d).display(spec)
}

#[test]
fn casimir_values() {
    assert_eq!(show(&sl2(), &theta()), "1/2*H^2 + 2*X*Y - H");
    assert_eq!(show(&gl11(), &theta()), "-2*G*H + H^2 + 2*Q+*Q- - H");
    assert_eq!(show(&osp12(), &theta()), "1/2*H^2 + 2*X*Y - 2*Q+*Q- - 1/2*H");
    for a in builtins() {
        assert_eq!(show(&a, &Ccd::empty()), "1");
    }
}

#[test]
fn centrality() {
    for a in builtins() {
        for n in 1..=2 {
            for d in enumerate_ccds(n) {
                let rep = check_central(&w_l(&a, &d), &a);
                assert!(rep.passed(), "{} {}", a.name, d.key());
            }
        }
    }
    let x = PbwElement::monomial(vec![1], Rational::one());
    assert!(!check_central(&x, &sl2()).passed());
    let h = PbwElement::monomial(vec![1], Rational::one());
    assert!(check_central(&h, &gl11()).passed());
    let literal = gl11_literal();
    assert!(!check_central(&w_l(&literal, &theta()), &literal).passed());
}

#[test]
fn pbw_commutation() {
    let a = sl2();
    let mut p = Pbw::new(&a);
    // Y X = X Y - H
    let yx = p.normal_word(&[2, 1]);
    let mut expected = PbwElement::monomial(vec![1, 2], Rational::one());
    expected.add_term(vec![0], int(-1));
    assert_eq!(yx, expected);
    let g = gl11();
    let mut q = Pbw::new(&g);
    // Q- Q+ = -Q+ Q- + H, and Q+ Q+ = 0
    let w = q.normal_word(&[3, 2]);
    assert_eq!(w.coeff(&[2, 3]), int(-1));
    assert_eq!(w.coeff(&[1]), int(1));
    assert!(q.normal_word(&[2, 2]).is_zero());
}

#[test]
fn crossing_twice_is_the_identity() {
    let cups = vec![Gen::Cup, Gen::Cup];
    let cross = vec![Gen::Id, Gen::Cross, Gen::Id];
    let plain = LayerWord::from_layers(vec![cups.clone()]).unwrap();
    let twice = LayerWord::from_layers(vec![cups, cross.clone(), cross]).unwrap();
    assert!(twice.is_consistent());
    assert_eq!(twice.crossings(), 2);
    for a in builtins() {
        let t = Tables::new(&a);
        assert_eq!(evaluate_tensor(&plain, &t), evaluate_tensor(&twice, &t));
    }
    assert!(LayerWord::from_layers(vec![vec![Gen::Cap]]).is_err());
}

#[test]
fn tripod_state_sum() {
    // Wilson line d a g; one vertex whose darts, counterclockwise, run to d, g, a.
    let d = parse_diagram(
        "ccd v1\nwilson d a g\nvertex v p q r\nedge p d\nedge q g\nedge r a\n",
    )
    .unwrap()
    .into_ccd()
    .unwrap();
    for a in [sl2(), gl11(), osp12()] {
        let t = Tables::new(&a);
        let got = evaluate_tensor(&compile(&d), &t);
        let n = a.dim;
        let mut want: HashMap<Vec<u8>, Rational> = HashMap::new();
        for ia in 0..n {
            for ig in 0..n {
                for id in 0..n {
                    let mut s = Rational::zero();
                    for b in 0..n {
                        for c in 0..n {
                            let sign = if a.parity[b] == 1 && a.parity[c] == 1 { int(-1) } else { int(1) };
                            s += a.b(ia, b) * a.b(c, id) * sign * a.f(c, b, ig);
                        }
                    }
                    if !s.is_zero() {
                        want.insert(vec![ia as u8, ig as u8, id as u8], s);
                    }
                }
            }
        }
        assert_eq!(got, want, "{}", a.name);
    }
}

#[test]
fn compiled_words_are_consistent() {
    for n in 0..=3 {
        for d in enumerate_ccds(n) {
            let w = compile(&d);
            assert!(w.is_consistent(), "{}\n{w}", d.key());
            assert_eq!(w.legs(), d.legs());
        }
    }
}

#[test]
fn stu_annihilation() {
    for a in builtins() {
        for n in 1..=2 {
            let rep = check_stu_invariance(&a, n);
            assert!(rep.passed(), "{} n={n}", a.name);
            assert!(rep.relations > 0);
        }
    }
}

#[test]
fn broken_jacobi_breaks_stu() {
    let rep = check_stu_invariance(&broken_sl2(), 2);
    assert!(!rep.passed());
}

#[test]
fn layout_independence() {
    for a in builtins() {
        let rep = check_compile_independence(&a, 2, &[1, 2, 3]);
        assert!(rep.passed(), "{} {:?}", a.name, rep.mismatches);
    }
}

#[test]
fn multiplicativity() {
    for a in builtins() {
        let rep = check_multiplicativity(&a, 2, 3);
        assert!(rep.passed(), "{} {:?}", a.name, rep.failures);
        assert!(rep.pairs > 0);
    }
}

/// `v_j = y^j v_0 / j!`: `h v_j = (λ - 2j) v_j`, `y v_j = (j + 1) v_{j+1}`,
/// `x v_j = (λ - j + 1) v_{j-1}`.
fn sl2_vacuum(t: &WordTensor) -> Poly {
    let lam = Poly::var(1, 0);
    let c = |v: i64| Poly::constant(1, int(v));
    let mut total = Poly::zero(1);
    for (w, coeff) in t {
        let mut v: Vec<Poly> = vec![Poly::one(1)];
        for &g in w.iter().rev() {
            let mut next = vec![Poly::zero(1); v.len() + 1];
            for (j, p) in v.iter().enumerate() {
                if p.is_zero() {
                    continue;
                }
                let j = j as i64;
                match g {
                    0 => next[j as usize] = next[j as usize].add(&p.mul(&lam.sub(&c(2 * j)))),
                    1 if j > 0 => {
                        next[j as usize - 1] = next[j as usize - 1].add(&p.mul(&lam.sub(&c(j - 1))))
                    }
                    1 => {}
                    _ => next[j as usize + 1] = next[j as usize + 1].add(&p.scale(&int(j + 1))),
                }
            }
            v = next;
        }
        total.axpy(coeff, &v[0]);
    }
    total
}

#[test]
fn sl2_highest_weight_matches_explicit_module() {
    let a = sl2();
    let t = Tables::new(&a);
    for n in 0..=3 {
        for d in enumerate_ccds(n) {
            let tensor = evaluate_tensor(&compile(&d), &t);
            assert_eq!(highest_weight_poly(&d, &a).unwrap(), sl2_vacuum(&tensor), "{}", d.key());
        }
    }
}

#[test]
fn harish_chandra_agrees_with_verma() {
    for a in builtins() {
        let Ok(mut v) = Verma::new(&a, 6) else {
            continue;
        };
        let t = Tables::new(&a);
        for n in 0..=3 {
            for d in enumerate_ccds(n) {
                let tensor = evaluate_tensor(&compile(&d), &t);
                assert_eq!(v.harish_chandra(&tensor), v.vacuum_coefficient(&tensor).unwrap(), "{} {}", a.name, d.key());
            }
        }
    }
}

#[test]
fn gl11_has_no_triangular_data() {
    assert!(matches!(Verma::new(&gl11(), 2), Err(LieError::NoTriangular)));
}

#[test]
fn highest_weight_of_theta() {
    assert_eq!(highest_weight_poly(&theta(), &sl2()).unwrap().to_string(), "1/2*λ^2 + λ");
    assert_eq!(highest_weight_poly(&theta(), &osp12()).unwrap().to_string(), "1/2*λ^2 + 1/2*λ");
    let w2 = planar_representative(&Partition::new(vec![2]));
    assert_eq!(highest_weight_poly(&w2, &sl2()).unwrap().to_string(), "2*λ^2 + 4*λ");
}

#[test]
fn truncation_is_reported() {
    let a = sl2();
    let mut v = Verma::new(&a, 0).unwrap();
    let t = evaluate_tensor(&compile(&theta()), &Tables::new(&a));
    assert!(matches!(v.vacuum_coefficient(&t), Err(LieError::Truncation { depth: 0 })));
}

#[test]
fn knn_low_degree() {
    let tower = Tower::new(Model::Full);
    for n in 0..=3 {
        let k = knn(tower.space(n).unwrap(), &sl2(), None).unwrap();
        assert_eq!(k.values, tower.conway_bar(n).unwrap().values, "n={n}");
    }
    let w2 = planar_representative(&Partition::new(vec![2]));
    let k2 = knn(tower.space(2).unwrap(), &sl2(), None).unwrap();
    assert_eq!(k2.eval_ccd(&w2).unwrap(), int(2));
    assert!(knn(tower.space(1).unwrap(), &sl2(), Some(&[int(1), int(2)])).is_err());
}

#[test]
fn osp_wheel_matches_root_sum() {
    let a = osp12();
    let p = Partition::new(vec![2]);
    let v = DiagramComb::basis(planar_representative(&p).key());
    let mut verma = Verma::new(&a, 4).unwrap();
    let got = highest_weight_poly_comb(&phi(2, &v).unwrap(), &mut verma, &Tables::new(&a)).unwrap();
    let tri = a.triangular.clone().unwrap();
    let mut want = Poly::zero(1);
    for (i, r) in tri.roots.iter().enumerate() {
        let sign = if r.parity == 1 { int(-2) } else { int(2) };
        want.axpy(&sign, &root_pairing(&a, i).unwrap().pow(2));
    }
    assert_eq!(got.homogeneous_part(2), want);
    assert_eq!(want.to_string(), "3/2*λ^2");
    assert_eq!(root_pairing(&a, 0).unwrap().to_string(), "1/2*λ");
}

#[test]
fn gl11_deframed_is_conway_times_power_of_h() {
    let tower = Tower::new(Model::Full);
    let mut ev = Evaluator::new(&gl11());
    for n in 0..=2 {
        let c = tower.conway(n).unwrap();
        for (i, k) in tower.space(n).unwrap().basis_keys().iter().enumerate() {
            let got = gl11_deframed(n, &DiagramComb::basis(k.clone()), &mut ev).unwrap();
            assert_eq!(got, PbwElement::monomial(vec![1; n], c.values[i].clone()), "{k}");
        }
    }
}

#[test]
fn gl11_vanishing_audit_small() {
    for n in 1..=2 {
        let rep = check_gl11_vanishing(n, 7);
        assert!(rep.passed(), "{rep:?}");
        assert!(rep.characters > 0);
    }
}

#[test]
fn poly_arithmetic() {
    let l = Poly::var(1, 0);
    let p = l.add(&Poly::one(1)).pow(2);
    assert_eq!(p.to_string(), "λ^2 + 2*λ + 1");
    assert_eq!(p.degree(), Some(2));
    assert_eq!(p.eval(&[rat(1, 2)]), rat(9, 4));
    assert_eq!(p.homogeneous_part(1).to_string(), "2*λ");
    assert_eq!(Poly::zero(1).degree(), None);
    assert_eq!(p.sub(&p).to_string(), "0");
}
