//! Verification suites behind `jacobiws verify`.

use crate::{cache, CliError};
use jacobiws::conway::{check_convolution_identity, Tower};
use jacobiws::deframing::{decompose, dim_inn, e_set_keys, even_partitions, phi, s};
use jacobiws::diagram::{enumerate_ccds, enumerate_chinese_characters, Ccd};
use jacobiws::hopf::{check_ihx_as, coproduct, expand_cc, generate_stu, AlgebraSpace, DiagramComb, Model};
use jacobiws::lie::*;
use jacobiws::linear::{int, rank, LinComb, Rational};
use num_traits::Zero;
use std::collections::BTreeMap;
use std::path::PathBuf;
use std::sync::Arc;
use std::time::Instant;

pub const SUITES: [&str; 6] = ["hopf", "deframing", "conway", "mmr-sl2", "gl11", "classical-osp12"];

/// Dimensions of the degree-`n` diagram algebra for small `n`.
const KNOWN_DIMS: [usize; 9] = [1, 1, 2, 3, 6, 10, 19, 33, 61];

#[derive(Clone, Debug)]
pub struct Line {
    pub pass: bool,
    pub suite: &'static str,
    pub check: &'static str,
    pub degree: Option<usize>,
    pub count: usize,
    pub detail: String,
    pub secs: f64,
}

pub struct Verifier {
    pub max_degree: usize,
    pub seed: u64,
    pub model: Option<Model>,
    pub cache_dir: Option<PathBuf>,
    tower: Option<Tower>,
    pub lines: Vec<Line>,
}

/// Largest degree at which checks that enumerate every CCD still run.
const CCD_CAP: usize = 4;

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn has_isolated_chord(d: &Ccd) -> bool {
    let l = d.legs() as u32;
    (0..l).any(|i| d.partner(i) == (i + 1) % l)
}

pub fn model_for(n: usize, forced: Option<Model>) -> Model {
    forced.unwrap_or(if n <= CCD_CAP { Model::Full } else { Model::Chord })
}

/// Build (or load) the spaces of degrees `0..=max`, one thread per degree.
pub fn build_tower(max: usize, forced: Option<Model>, dir: Option<&PathBuf>) -> Result<Tower, CliError> {
    let built: Vec<Result<AlgebraSpace, CliError>> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..=max)
            .map(|n| scope.spawn(move || cache::load_or_build(dir.map(|p| p.as_path()), n, model_for(n, forced))))
            .collect();
        handles.into_iter().map(|h| h.join().expect("space builder panicked")).collect()
    });
    let tower = Tower::new(model_for(max, forced));
    for space in built {
        tower.insert_space(space?);
    }
    Ok(tower)
}

impl Verifier {
    pub fn new(max_degree: usize, seed: u64, model: Option<Model>, cache_dir: Option<PathBuf>) -> Verifier {
        Verifier { max_degree, seed, model, cache_dir, tower: None, lines: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.lines.iter().all(|l| l.pass)
    }

    fn tower(&mut self) -> Result<&Tower, CliError> {
        if self.tower.is_none() {
            self.tower = Some(build_tower(self.max_degree, self.model, self.cache_dir.as_ref())?);
        }
        Ok(self.tower.as_ref().unwrap())
    }

    fn space(&mut self, n: usize) -> Result<Arc<AlgebraSpace>, CliError> {
        Ok(self.tower()?.space(n)?)
    }

    /// Run one check; `f` returns `(count, detail)` or a failure message.
    fn record(
        &mut self,
        suite: &'static str,
        check: &'static str,
        degree: Option<usize>,
        f: impl FnOnce(&mut Self) -> Result<(usize, String), String>,
    ) {
        let t = Instant::now();
        let outcome = f(self);
        let secs = t.elapsed().as_secs_f64();
        let (pass, count, detail) = match outcome {
            Ok((c, d)) => (true, c, d),
            Err(d) => (false, 0, d),
        };
        self.lines.push(Line { pass, suite, check, degree, count, detail, secs });
    }

    pub fn run(&mut self, suite: &str) -> Result<(), CliError> {
        match suite {
            "all" => {
                for s in SUITES {
                    self.run(s)?;
                }
            }
            "hopf" => self.hopf(),
            "deframing" => self.deframing(),
            "conway" => self.conway(),
            "mmr-sl2" => self.mmr_sl2(),
            "gl11" => self.gl11(),
            "classical-osp12" => self.osp12(),
            other => return Err(CliError::Usage(format!("unknown suite `{other}`; expected one of {} or all", SUITES.join(", ")))),
        }
        Ok(())
    }

    fn small(&self, cap: usize) -> std::ops::RangeInclusive<usize> {
        1..=self.max_degree.min(cap)
    }

    fn hopf(&mut self) {
        for n in 0..=self.max_degree {
            self.record("hopf", "dimension", Some(n), |v| {
                let d = v.space(n).map_err(err)?.dim();
                match KNOWN_DIMS.get(n) {
                    Some(&k) if k != d => Err(format!("dim = {d}, expected {k}")),
                    _ => Ok((d, format!("dim = {d}"))),
                }
            });
        }
        for n in self.small(3) {
            self.record("hopf", "stu-ihx-as", Some(n), |v| {
                let space = v.space(n).map_err(err)?;
                let mut count = 0;
                for r in generate_stu(n) {
                    count += 1;
                    if !space.is_zero(&r.to_lincomb()).map_err(err)? {
                        return Err(format!("STU relation at {} survives", r.t));
                    }
                }
                if space.model == Model::Full {
                    let rep = check_ihx_as(&space).map_err(err)?;
                    if !rep.passed() {
                        return Err(rep.failures.join("; "));
                    }
                    count += rep.checked;
                }
                Ok((count, "relations vanish".into()))
            });
            self.record("hopf", "coproduct", Some(n), |_| {
                let mut count = 0;
                for d in enumerate_ccds(n) {
                    count += 1;
                    let delta = coproduct(&DiagramComb::basis(d.key())).map_err(err)?;
                    let swapped = LinComb::from_terms(delta.iter().map(|((l, r), c)| ((r.clone(), l.clone()), c.clone())));
                    if swapped != delta {
                        return Err(format!("not cocommutative at {}", d.key()));
                    }
                    let mut left = BTreeMap::new();
                    let mut right = BTreeMap::new();
                    for ((l, r), c) in delta.iter() {
                        for ((a, b), c2) in coproduct(&DiagramComb::basis(l.clone())).map_err(err)?.iter() {
                            *left.entry((a.clone(), b.clone(), r.clone())).or_insert_with(Rational::zero) += c * c2;
                        }
                        for ((a, b), c2) in coproduct(&DiagramComb::basis(r.clone())).map_err(err)?.iter() {
                            *right.entry((l.clone(), a.clone(), b.clone())).or_insert_with(Rational::zero) += c * c2;
                        }
                    }
                    left.retain(|_, c: &mut Rational| !c.is_zero());
                    right.retain(|_, c: &mut Rational| !c.is_zero());
                    if left != right {
                        return Err(format!("not coassociative at {}", d.key()));
                    }
                }
                Ok((count, "coassociative and cocommutative".into()))
            });
        }
        for n in self.small(CCD_CAP) {
            self.record("hopf", "spanning", Some(n), |v| {
                let space = v.space(n).map_err(err)?;
                let mut images = Vec::new();
                for c in enumerate_chinese_characters(n, false) {
                    images.push(space.reduce(&expand_cc(&c)).map_err(err)?);
                }
                let r = rank(&images);
                if r != space.dim() {
                    return Err(format!("characters span rank {r} of {}", space.dim()));
                }
                Ok((images.len(), format!("rank {r}")))
            });
        }
        for n in 2..=self.max_degree {
            self.record("hopf", "commutativity", Some(n), |v| {
                let target = v.space(n).map_err(err)?;
                let mut count = 0;
                for i in 1..n {
                    let (a, b) = (v.space(i).map_err(err)?, v.space(n - i).map_err(err)?);
                    for x in a.basis_keys() {
                        for y in b.basis_keys() {
                            count += 1;
                            let (dx, dy) = (Ccd::from_key(&x).map_err(err)?, Ccd::from_key(&y).map_err(err)?);
                            let xy = DiagramComb::basis(dx.connect_sum(&dy).key());
                            let yx = DiagramComb::basis(dy.connect_sum(&dx).key());
                            if !target.is_zero(&xy.sub(&yx)).map_err(err)? {
                                return Err(format!("{x} # {y} != {y} # {x}"));
                            }
                            for k in 0..dx.legs() {
                                let z = DiagramComb::basis(dx.rotate(k).connect_sum(&dy).key());
                                if !target.is_zero(&z.sub(&xy)).map_err(err)? {
                                    return Err(format!("product of {x} and {y} depends on the splice point"));
                                }
                            }
                        }
                    }
                }
                Ok((count, "basis products commute".into()))
            });
        }
    }

    fn deframing(&mut self) {
        for n in 1..=self.max_degree {
            self.record("deframing", "projector", Some(n), |v| {
                let space = v.space(n).map_err(err)?;
                let lower = v.space(n - 1).map_err(err)?;
                let mut count = 0;
                for k in space.basis_keys() {
                    count += 1;
                    let x = DiagramComb::basis(k.clone());
                    let p = phi(n, &x).map_err(err)?;
                    if space.reduce(&phi(n, &p).map_err(err)?).map_err(err)? != space.reduce(&p).map_err(err)? {
                        return Err(format!("phi is not idempotent at {k}"));
                    }
                    if !lower.is_zero(&s(&p).map_err(err)?).map_err(err)? {
                        return Err(format!("s(phi({k})) != 0"));
                    }
                }
                if n <= CCD_CAP {
                    for d in enumerate_ccds(n) {
                        let x = DiagramComb::basis(d.key());
                        if has_isolated_chord(&d) {
                            count += 1;
                            if !space.is_zero(&phi(n, &x).map_err(err)?).map_err(err)? {
                                return Err(format!("phi({}) != 0", d.key()));
                            }
                        }
                        if s(&x).map_err(err)?.is_zero() && phi(n, &x).map_err(err)? != x {
                            return Err(format!("phi moves {}", d.key()));
                        }
                    }
                }
                Ok((count, "idempotent, s(phi) = 0, isolated chords killed".into()))
            });
            if n <= CCD_CAP {
                self.record("deframing", "decompose", Some(n), |v| {
                    let space = v.space(n).map_err(err)?;
                    let mut count = 0;
                    for k in space.basis_keys() {
                        count += 1;
                        let x = DiagramComb::basis(k.clone());
                        let dec = decompose(n, &x, &space).map_err(err)?;
                        let mut total = dec.kernel_part.clone();
                        for part in dec.invariant_parts.values() {
                            total = total.add(part);
                        }
                        if !space.is_zero(&total.sub(&x)).map_err(err)? {
                            return Err(format!("decomposition of {k} does not re-sum"));
                        }
                    }
                    Ok((count, "pieces re-sum".into()))
                });
            }
            if n % 2 == 0 {
                self.record("deframing", "wheel-rank", Some(n), |v| {
                    let space = v.space(n).map_err(err)?;
                    let d = dim_inn(n, &space).map_err(err)?;
                    let parts = even_partitions(n).len();
                    if d != parts {
                        return Err(format!("rank {d}, expected {parts}"));
                    }
                    Ok((parts, format!("dim I^{n}_{n} = {d}")))
                });
            }
        }
    }

    fn conway(&mut self) {
        for n in 1..=self.max_degree {
            self.record("conway", "wheel-values", Some(n), |v| {
                let tower = v.tower().map_err(err)?;
                let (c, cb) = (tower.conway(n).map_err(err)?, tower.conway_bar(n).map_err(err)?);
                let mut count = 0;
                for p in even_partitions(n) {
                    let k = p.len() as u32;
                    for key in e_set_keys(&p) {
                        count += 1;
                        let (x, y) = (c.eval_key(&key).map_err(err)?, cb.eval_key(&key).map_err(err)?);
                        if x != int((-2i64).pow(k)) || y != int(2i64.pow(k)) {
                            return Err(format!("c = {x}, c̄ = {y} on {key} in E(tau_{p})"));
                        }
                    }
                }
                if n <= CCD_CAP {
                    for d in enumerate_ccds(n).into_iter().filter(has_isolated_chord) {
                        count += 1;
                        if !c.eval_ccd(&d).map_err(err)?.is_zero() || !cb.eval_ccd(&d).map_err(err)?.is_zero() {
                            return Err(format!("nonzero on isolated-chord diagram {}", d.key()));
                        }
                    }
                }
                Ok((count, "(∓2)^#P on wheels, 0 on isolated chords".into()))
            });
        }
        for n in 0..=self.max_degree {
            self.record("conway", "convolution", Some(n), |v| {
                let rep = check_convolution_identity(n, v.tower().map_err(err)?).map_err(err)?;
                if !rep.passes() {
                    return Err("sum c_i c̄_(n-i) differs from the counit".into());
                }
                Ok((rep.values.len(), "sum c_i c̄_(n-i) = counit".into()))
            });
        }
    }

    fn algebra_structure(&mut self, suite: &'static str, a: &AlgebraSpec) {
        self.record(suite, "validate", None, |_| {
            let rep = validate_spec(a);
            if !rep.passed() {
                return Err(rep.to_string().replace('\n', "; "));
            }
            Ok((rep.checks.len(), "structure checks pass".into()))
        });
        for n in self.small(3) {
            self.record(suite, "stu", Some(n), |_| {
                let rep = check_stu_invariance(a, n);
                if !rep.passed() {
                    return Err(format!("{} relations survive", rep.failures.len()));
                }
                Ok((rep.relations, "S - T + U evaluates to 0".into()))
            });
        }
        let seeds: Vec<u64> = (0..10).map(|i| self.seed.wrapping_add(i)).collect();
        let top = self.max_degree.min(3);
        self.record(suite, "layout-independence", Some(top), |_| {
            let rep = check_compile_independence(a, top, &seeds);
            if !rep.passed() {
                return Err(format!("{} mismatches", rep.mismatches.len()));
            }
            Ok((rep.comparisons, format!("seeds {}..{}", seeds[0], seeds[seeds.len() - 1])))
        });
        for n in self.small(2) {
            self.record(suite, "centrality", Some(n), |_| {
                let mut ev = Evaluator::new(a);
                let mut count = 0;
                for d in enumerate_ccds(n) {
                    count += 1;
                    if !check_central(&ev.eval_ccd(&d), a).passed() {
                        return Err(format!("W({}) is not central", d.key()));
                    }
                }
                Ok((count, "W_L(D) central".into()))
            });
        }
        let total = self.max_degree.min(4);
        self.record(suite, "multiplicativity", Some(total), |_| {
            let rep = check_multiplicativity(a, 2, total);
            if !rep.passed() {
                return Err(format!("{} pairs fail", rep.failures.len()));
            }
            Ok((rep.pairs, "W(X # Y) = W(X) W(Y)".into()))
        });
    }

    fn mmr_sl2(&mut self) {
        let a = sl2();
        self.algebra_structure("mmr-sl2", &a);
        for n in 0..=self.max_degree {
            self.record("mmr-sl2", "knn", Some(n), |v| {
                let space = v.space(n).map_err(err)?;
                let k = knn(space.clone(), &a, None).map_err(err)?;
                let cb = v.tower().map_err(err)?.conway_bar(n).map_err(err)?;
                if k.values != cb.values {
                    return Err("k_nn differs from c̄_n".into());
                }
                let mut verma = Verma::new(&a, 2 * n).map_err(err)?;
                let tables = Tables::new(&a);
                for key in space.basis_keys() {
                    let x = phi(n, &DiagramComb::basis(key.clone())).map_err(err)?;
                    let p = highest_weight_poly_comb(&x, &mut verma, &tables).map_err(err)?;
                    if p.degree().unwrap_or(0) > n as u32 {
                        return Err(format!("deg k(λ)[phi({key})] = {:?} > {n}", p.degree()));
                    }
                }
                if n <= CCD_CAP.min(3) {
                    for d in enumerate_ccds(n) {
                        let p = highest_weight_poly(&d, &a).map_err(err)?;
                        if p.degree().unwrap_or(0) > d.legs() as u32 {
                            return Err(format!("deg k(λ)[{}] exceeds its leg count", d.key()));
                        }
                    }
                }
                Ok((k.values.len(), "k_nn = c̄_n, degree bounds hold".into()))
            });
        }
    }

    fn gl11(&mut self) {
        let a = gl11();
        self.algebra_structure("gl11", &a);
        for n in 0..=self.max_degree {
            self.record("gl11", "deframed", Some(n), |v| {
                let space = v.space(n).map_err(err)?;
                let c = v.tower().map_err(err)?.conway(n).map_err(err)?;
                let mut ev = Evaluator::new(&a);
                for (i, k) in space.basis_keys().iter().enumerate() {
                    let got = gl11_deframed(n, &DiagramComb::basis(k.clone()), &mut ev).map_err(err)?;
                    let want = PbwElement::monomial(vec![1; n], c.values[i].clone());
                    if got != want {
                        return Err(format!("W(phi({k})) = {}, expected {} H^{n}", ev.display(&got), c.values[i]));
                    }
                }
                Ok((space.dim(), "W(phi_n(v)) = c_n(v) H^n".into()))
            });
        }
        let seed = self.seed;
        for n in self.small(3) {
            self.record("gl11", "vanishing", Some(n), |_| {
                let rep = check_gl11_vanishing(n, seed);
                if !rep.passed() {
                    let mut all = rep.coloring_violations.clone();
                    all.extend(rep.character_violations.clone());
                    return Err(all.join("; "));
                }
                Ok((rep.colorings + rep.characters, format!("{} colorings, {} characters", rep.colorings, rep.characters)))
            });
        }
    }

    fn osp12(&mut self) {
        let a = osp12();
        self.algebra_structure("classical-osp12", &a);
        for n in 1..=self.max_degree {
            self.record("classical-osp12", "wheel-formula", Some(n), |_| {
                let tri = a.triangular.clone().ok_or("no triangular data")?;
                let tables = Tables::new(&a);
                let mut verma = Verma::new(&a, 2 * n).map_err(err)?;
                let mut count = 0;
                for p in even_partitions(n) {
                    let mut want = Poly::one(1);
                    for &ni in &p.0 {
                        let mut factor = Poly::zero(1);
                        for (i, r) in tri.roots.iter().enumerate() {
                            let sign = if r.parity == 1 { int(-2) } else { int(2) };
                            factor.axpy(&sign, &root_pairing(&a, i).map_err(err)?.pow(ni as u32));
                        }
                        want = want.mul(&factor);
                    }
                    for key in e_set_keys(&p) {
                        count += 1;
                        let x = phi(n, &DiagramComb::basis(key.clone())).map_err(err)?;
                        let got = highest_weight_poly_comb(&x, &mut verma, &tables).map_err(err)?.homogeneous_part(n as u32);
                        if got != want {
                            return Err(format!("{got} != {want} on {key} in E(tau_{p})"));
                        }
                    }
                }
                Ok((count, "prod_i sum_α (-1)^[α] 2<λ,α>^n_i".into()))
            });
        }
    }
}
