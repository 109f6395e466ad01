//! Alexander-Conway weight systems, their inverses, the counit and the
//! convolution product.

use crate::deframing::{e_set_keys, even_partitions, phi};
use crate::diagram::{enumerate_chinese_characters, enumerate_chord_diagrams, CanonKey, Ccd};
use crate::hopf::{ccd_of, coproduct, expand_cc, AlgebraSpace, DiagramComb, HopfError, Model};
use crate::linear::{solve_functional_with, Functional, Rational};
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};

/// A linear functional on the degree-`n` part of the diagram algebra.
#[derive(Clone, Debug)]
pub struct WeightSystem {
    pub degree: usize,
    pub name: String,
    pub space: Arc<AlgebraSpace>,
    pub values: Vec<Rational>,
}

impl WeightSystem {
    pub fn from_functional(name: &str, space: Arc<AlgebraSpace>, f: Functional<CanonKey>) -> Self {
        WeightSystem { degree: space.degree, name: name.to_string(), space, values: f.values }
    }

    pub fn eval(&self, v: &DiagramComb) -> Result<Rational, HopfError> {
        let coords = self.space.reduce(v)?;
        Ok(coords.iter().zip(&self.values).map(|(a, b)| a * b).sum())
    }

    pub fn eval_key(&self, k: &CanonKey) -> Result<Rational, HopfError> {
        self.eval(&DiagramComb::basis(k.clone()))
    }

    pub fn eval_ccd(&self, d: &Ccd) -> Result<Rational, HopfError> {
        self.eval_key(&d.key())
    }
}

/// Solve for a weight system from `(v, value)` constraints.
pub fn solve_weight_system(
    name: &str,
    space: Arc<AlgebraSpace>,
    constraints: &[(DiagramComb, Rational)],
) -> Result<WeightSystem, HopfError> {
    let mut rows = Vec::with_capacity(constraints.len());
    for (v, c) in constraints {
        rows.push((space.reduce(v)?, c.clone()));
    }
    let f = solve_functional_with(space.space.clone(), rows)?;
    Ok(WeightSystem::from_functional(name, space, f))
}

/// Constraints defining `c_n` (`wheel_value = -2`) or `c̄_n` (`wheel_value = 2`).
pub fn conway_constraints(n: usize, wheel_value: i64) -> Result<Vec<(DiagramComb, Rational)>, HopfError> {
    let mut cons = Vec::new();
    // (a) vanish on the kernel of phi
    for d in enumerate_chord_diagrams(n) {
        let v = DiagramComb::basis(d.key());
        let k = v.sub(&phi(n, &v)?);
        if !k.is_zero() {
            cons.push((k, Rational::zero()));
        }
    }
    // (b) vanish on invariant pieces with fewer than n legs
    for sigma in enumerate_chinese_characters(n, true) {
        if sigma.legs() < n && !sigma.has_closed_component() {
            cons.push((expand_cc(&sigma), Rational::zero()));
        }
    }
    // (c) wheel values on each member of E(tau_P)
    let w = Rational::from_integer(wheel_value.into());
    for p in even_partitions(n) {
        let mut val = Rational::one();
        for _ in 0..p.len() {
            val *= &w;
        }
        for k in e_set_keys(&p) {
            cons.push((DiagramComb::basis(k), val.clone()));
        }
    }
    Ok(cons)
}

pub fn conway(space: Arc<AlgebraSpace>) -> Result<WeightSystem, HopfError> {
    let cons = conway_constraints(space.degree, -2)?;
    solve_weight_system("conway", space, &cons)
}

pub fn conway_bar(space: Arc<AlgebraSpace>) -> Result<WeightSystem, HopfError> {
    let cons = conway_constraints(space.degree, 2)?;
    solve_weight_system("conway-bar", space, &cons)
}

/// `1` on the empty diagram in degree 0, zero otherwise.
pub fn counit(space: Arc<AlgebraSpace>) -> WeightSystem {
    let mut values = vec![Rational::zero(); space.dim()];
    if space.degree == 0 {
        values[0] = Rational::one();
    }
    WeightSystem { degree: space.degree, name: "counit".into(), space, values }
}

/// `(X.Y)(v) = (X x Y)(Delta v)` evaluated on a CCD.
pub fn product_value(x: &WeightSystem, y: &WeightSystem, d: &DiagramComb) -> Result<Rational, HopfError> {
    let mut total = Rational::zero();
    for ((l, r), c) in coproduct(d)?.iter() {
        if ccd_of(l)?.degree() == x.degree && ccd_of(r)?.degree() == y.degree {
            total += c * x.eval_key(l)? * y.eval_key(r)?;
        }
    }
    Ok(total)
}

/// The convolution product as a weight system on `target`.
pub fn ws_product(x: &WeightSystem, y: &WeightSystem, target: Arc<AlgebraSpace>) -> Result<WeightSystem, HopfError> {
    assert_eq!(target.degree, x.degree + y.degree);
    let mut cons = Vec::new();
    for d in enumerate_chord_diagrams(target.degree) {
        let v = DiagramComb::basis(d.key());
        let val = product_value(x, y, &v)?;
        cons.push((v, val));
    }
    let name = format!("{}*{}", x.name, y.name);
    solve_weight_system(&name, target, &cons)
}

/// Algebra spaces and Conway weight systems for a range of degrees.
#[derive(Debug)]
pub struct Tower {
    pub model: Model,
    spaces: Mutex<BTreeMap<usize, Arc<AlgebraSpace>>>,
    conway: Mutex<BTreeMap<(usize, i64), WeightSystem>>,
}

impl Tower {
    pub fn new(model: Model) -> Tower {
        Tower { model, spaces: Mutex::new(BTreeMap::new()), conway: Mutex::new(BTreeMap::new()) }
    }

    pub fn insert_space(&self, space: AlgebraSpace) -> Arc<AlgebraSpace> {
        let a = Arc::new(space);
        self.spaces.lock().unwrap().insert(a.degree, a.clone());
        a
    }

    pub fn space(&self, n: usize) -> Result<Arc<AlgebraSpace>, HopfError> {
        if let Some(s) = self.spaces.lock().unwrap().get(&n) {
            return Ok(s.clone());
        }
        let s = AlgebraSpace::build(n, self.model)?;
        Ok(self.insert_space(s))
    }

    fn family(&self, n: usize, wheel_value: i64) -> Result<WeightSystem, HopfError> {
        if let Some(w) = self.conway.lock().unwrap().get(&(n, wheel_value)) {
            return Ok(w.clone());
        }
        let space = self.space(n)?;
        let w = if wheel_value < 0 { conway(space)? } else { conway_bar(space)? };
        self.conway.lock().unwrap().insert((n, wheel_value), w.clone());
        Ok(w)
    }

    pub fn conway(&self, n: usize) -> Result<WeightSystem, HopfError> {
        self.family(n, -2)
    }

    pub fn conway_bar(&self, n: usize) -> Result<WeightSystem, HopfError> {
        self.family(n, 2)
    }
}

#[derive(Clone, Debug)]
pub struct ConvolutionReport {
    pub degree: usize,
    /// Value of `sum_i c_i . c̄_{n-i}` on each basis diagram.
    pub values: Vec<(CanonKey, Rational)>,
}

impl ConvolutionReport {
    pub fn passes(&self) -> bool {
        self.values.iter().all(|(k, v)| {
            let expected = if self.degree == 0 && ccd_of(k).map(|d| d.legs() == 0).unwrap_or(false) {
                Rational::one()
            } else {
                Rational::zero()
            };
            *v == expected
        })
    }
}

/// Evaluate `sum_i (c_i x c̄_{n-i}) o Delta` on every basis vector of degree `n`.
pub fn check_convolution_identity(n: usize, tower: &Tower) -> Result<ConvolutionReport, HopfError> {
    let space = tower.space(n)?;
    let cs: Vec<WeightSystem> = (0..=n).map(|i| tower.conway(i)).collect::<Result<_, _>>()?;
    let cbs: Vec<WeightSystem> = (0..=n).map(|i| tower.conway_bar(i)).collect::<Result<_, _>>()?;
    let mut values = Vec::new();
    for k in space.basis_keys() {
        let mut total = Rational::zero();
        for ((l, r), c) in coproduct(&DiagramComb::basis(k.clone()))?.iter() {
            let i = ccd_of(l)?.degree();
            total += c * cs[i].eval_key(l)? * cbs[n - i].eval_key(r)?;
        }
        values.push((k, total));
    }
    Ok(ConvolutionReport { degree: n, values })
}
