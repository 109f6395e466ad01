//! Lie superalgebra specifications: structure constants, metric, inverse
//! tensor and optional triangular decomposition.

use super::LieError;
use crate::linear::{int, rat, Rational};
use num_traits::{One, Zero};
use std::fmt::{self, Write as _};

/// A positive root given by its root vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Root {
    pub name: String,
    pub parity: u8,
    pub x: usize,
    pub y: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangularData {
    pub cartan: Vec<usize>,
    pub roots: Vec<Root>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraSpec {
    pub name: String,
    pub dim: usize,
    pub parity: Vec<u8>,
    pub labels: Vec<String>,
    f: Vec<Rational>,
    kappa: Vec<Rational>,
    b: Vec<Rational>,
    pub triangular: Option<TriangularData>,
}

impl AlgebraSpec {
    /// All-zero tensors; fill with `set_f`, `set_kappa`, `set_b`.
    pub fn new(name: &str, parity: Vec<u8>, labels: Vec<String>) -> AlgebraSpec {
        let d = parity.len();
        assert_eq!(labels.len(), d);
        AlgebraSpec {
            name: name.to_string(),
            dim: d,
            parity,
            labels,
            f: vec![Rational::zero(); d * d * d],
            kappa: vec![Rational::zero(); d * d],
            b: vec![Rational::zero(); d * d],
            triangular: None,
        }
    }

    /// `f^k_{ij}`, i.e. `[v_i, v_j] = sum_k f^k_{ij} v_k`.
    pub fn f(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.f[(i * self.dim + j) * self.dim + k]
    }

    pub fn kappa(&self, i: usize, j: usize) -> &Rational {
        &self.kappa[i * self.dim + j]
    }

    pub fn b(&self, i: usize, j: usize) -> &Rational {
        &self.b[i * self.dim + j]
    }

    pub fn set_f(&mut self, i: usize, j: usize, k: usize, v: Rational) {
        let d = self.dim;
        self.f[(i * d + j) * d + k] = v;
    }

    pub fn set_kappa(&mut self, i: usize, j: usize, v: Rational) {
        let d = self.dim;
        self.kappa[i * d + j] = v;
    }

    pub fn set_b(&mut self, i: usize, j: usize, v: Rational) {
        let d = self.dim;
        self.b[i * d + j] = v;
    }

    /// Set `[v_i, v_j] = c v_k` together with its super-antisymmetric partner.
    pub fn set_bracket(&mut self, i: usize, j: usize, k: usize, c: Rational) {
        let s = self.sign(i, j);
        self.set_f(j, i, k, -(s * &c));
        self.set_f(i, j, k, c);
    }

    /// `(-1)^{[i][j]}`
    pub fn sign(&self, i: usize, j: usize) -> Rational {
        if self.parity[i] & self.parity[j] == 1 {
            -Rational::one()
        } else {
            Rational::one()
        }
    }

    /// The bracket of two basis vectors as a coefficient vector.
    pub fn bracket(&self, i: usize, j: usize) -> Vec<Rational> {
        (0..self.dim).map(|k| self.f(i, j, k).clone()).collect()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Replace `b` by the matrix inverse of `kappa`.
    pub fn set_b_from_kappa(&mut self) -> Result<(), LieError> {
        let inv = invert(&self.kappa, self.dim).ok_or_else(|| LieError::Invalid("kappa is singular".into()))?;
        self.b = inv;
        Ok(())
    }

    /// `h_alpha = [x_alpha, y_alpha]` in Cartan coordinates.
    pub fn coroot(&self, root: &Root) -> Result<Vec<Rational>, LieError> {
        let tri = self.triangular.as_ref().ok_or(LieError::NoTriangular)?;
        let br = self.bracket(root.x, root.y);
        for (k, c) in br.iter().enumerate() {
            if !c.is_zero() && !tri.cartan.contains(&k) {
                return Err(LieError::Invalid(format!("[x,y] for root {} leaves the Cartan subalgebra", root.name)));
            }
        }
        Ok(tri.cartan.iter().map(|&h| br[h].clone()).collect())
    }

    /// `alpha(h_i)` for each Cartan index, read from `[h_i, x_alpha]`.
    pub fn root_values(&self, root: &Root) -> Result<Vec<Rational>, LieError> {
        let tri = self.triangular.as_ref().ok_or(LieError::NoTriangular)?;
        Ok(tri.cartan.iter().map(|&h| self.f(h, root.x, root.x).clone()).collect())
    }

    pub fn builtin(name: &str) -> Option<AlgebraSpec> {
        match name {
            "sl2" => Some(sl2()),
            "gl11" => Some(gl11()),
            "osp12" => Some(osp12()),
            "gl11_literal" => Some(gl11_literal()),
            _ => None,
        }
    }

    /// Parse the text format; see [`AlgebraSpec::to_text`].
    pub fn parse(input: &str) -> Result<AlgebraSpec, LieError> {
        parse(input)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("algebra {}\ndim {}\n", self.name, self.dim);
        let p: Vec<String> = self.parity.iter().map(u8::to_string).collect();
        writeln!(s, "parity {}", p.join(" ")).unwrap();
        for (i, l) in self.labels.iter().enumerate() {
            writeln!(s, "label {i} {l}").unwrap();
        }
        let d = self.dim;
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    if !self.f(i, j, k).is_zero() {
                        writeln!(s, "f {i} {j} {k} {}", self.f(i, j, k)).unwrap();
                    }
                }
            }
        }
        for (kw, t) in [("kappa", &self.kappa), ("b", &self.b)] {
            for i in 0..d {
                for j in 0..d {
                    if !t[i * d + j].is_zero() {
                        writeln!(s, "{kw} {i} {j} {}", t[i * d + j]).unwrap();
                    }
                }
            }
        }
        if let Some(tri) = &self.triangular {
            let c: Vec<String> = tri.cartan.iter().map(usize::to_string).collect();
            writeln!(s, "cartan {}", c.join(" ")).unwrap();
            for r in &tri.roots {
                writeln!(s, "root {} {} {} {}", r.name, r.parity, r.x, r.y).unwrap();
            }
        }
        s
    }
}

fn invert(m: &[Rational], d: usize) -> Option<Vec<Rational>> {
    let mut a: Vec<Vec<Rational>> = (0..d)
        .map(|i| {
            let mut row: Vec<Rational> = m[i * d..(i + 1) * d].to_vec();
            row.extend((0..d).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            row
        })
        .collect();
    for c in 0..d {
        let p = (c..d).find(|&r| !a[r][c].is_zero())?;
        a.swap(c, p);
        let inv = Rational::one() / &a[c][c];
        for x in a[c].iter_mut() {
            *x *= &inv;
        }
        for r in 0..d {
            if r != c && !a[r][c].is_zero() {
                let f = a[r][c].clone();
                for k in 0..2 * d {
                    let v = &f * &a[c][k];
                    a[r][k] -= v;
                }
            }
        }
    }
    Some(a.into_iter().flat_map(|row| row[d..].to_vec()).collect())
}

fn labels(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

/// sl(2) on `H, X, Y`.
pub fn sl2() -> AlgebraSpec {
    let mut a = AlgebraSpec::new("sl2", vec![0, 0, 0], labels(&["H", "X", "Y"]));
    let (h, x, y) = (0, 1, 2);
    a.set_bracket(h, x, x, int(2));
    a.set_bracket(h, y, y, int(-2));
    a.set_bracket(x, y, h, int(1));
    a.set_kappa(h, h, int(2));
    a.set_kappa(x, y, int(1));
    a.set_kappa(y, x, int(1));
    a.set_b(h, h, rat(1, 2));
    a.set_b(x, y, int(1));
    a.set_b(y, x, int(1));
    a.triangular = Some(TriangularData {
        cartan: vec![h],
        roots: vec![Root { name: "alpha".into(), parity: 0, x, y }],
    });
    a
}

fn gl11_common(name: &str) -> AlgebraSpec {
    let mut a = AlgebraSpec::new(name, vec![0, 0, 1, 1], labels(&["G", "H", "Q+", "Q-"]));
    let (g, h, qp, qm) = (0, 1, 2, 3);
    a.set_bracket(g, qp, qp, int(1));
    a.set_bracket(g, qm, qm, int(-1));
    a.set_bracket(qp, qm, h, int(1));
    a.set_kappa(h, g, int(-1));
    a.set_kappa(g, h, int(-1));
    a.set_kappa(g, g, int(-1));
    a.set_kappa(qp, qm, int(-1));
    a.set_kappa(qm, qp, int(1));
    a.set_b(h, h, int(1));
    a.set_b(g, h, int(-1));
    a.set_b(h, g, int(-1));
    a
}

/// gl(1|1) on `G, H, Q+, Q-` with `b` the matrix inverse of `kappa`.
pub fn gl11() -> AlgebraSpec {
    let mut a = gl11_common("gl11");
    a.set_b(2, 3, int(1));
    a.set_b(3, 2, int(-1));
    a
}

/// gl(1|1) with the odd part of `b` transposed. Not inverse to `kappa`
/// under the `sum_j kappa_ij b^jk` convention; kept as a negative control.
pub fn gl11_literal() -> AlgebraSpec {
    let mut a = gl11_common("gl11_literal");
    a.set_b(2, 3, int(-1));
    a.set_b(3, 2, int(1));
    a
}

/// osp(1|2) on `H, X, Y, Q+, Q-`; odd root `alpha` (Q+, Q-) and even root
/// `2alpha` (X, Y).
pub fn osp12() -> AlgebraSpec {
    let mut a = AlgebraSpec::new("osp12", vec![0, 0, 0, 1, 1], labels(&["H", "X", "Y", "Q+", "Q-"]));
    let (h, x, y, qp, qm) = (0, 1, 2, 3, 4);
    a.set_bracket(h, x, x, int(2));
    a.set_bracket(h, y, y, int(-2));
    a.set_bracket(x, y, h, int(1));
    a.set_bracket(h, qp, qp, int(1));
    a.set_bracket(h, qm, qm, int(-1));
    a.set_bracket(x, qm, qp, int(1));
    a.set_bracket(y, qp, qm, int(1));
    a.set_bracket(qp, qp, x, int(-1));
    a.set_bracket(qm, qm, y, int(1));
    a.set_bracket(qp, qm, h, rat(1, 2));
    a.set_kappa(h, h, int(2));
    a.set_kappa(x, y, int(1));
    a.set_kappa(y, x, int(1));
    a.set_kappa(qp, qm, int(1));
    a.set_kappa(qm, qp, int(-1));
    a.set_b_from_kappa().expect("osp(1|2) metric is non-degenerate");
    a.triangular = Some(TriangularData {
        cartan: vec![h],
        roots: vec![
            Root { name: "alpha".into(), parity: 1, x: qp, y: qm },
            Root { name: "2alpha".into(), parity: 0, x, y },
        ],
    });
    a
}

/// Outcome of one invariant check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    /// First violation found, if any.
    pub violation: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.violation.is_none())
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            match &c.violation {
                None => writeln!(f, "PASS {}", c.name)?,
                Some(v) => writeln!(f, "FAIL {}: {v}", c.name)?,
            }
        }
        Ok(())
    }
}

fn first<I: Iterator<Item = String>>(mut it: I) -> Option<String> {
    it.next()
}

/// Check every structural invariant and report the first violation of each.
pub fn validate_spec(a: &AlgebraSpec) -> ValidationReport {
    let d = a.dim;
    let idx = || (0..d).flat_map(move |i| (0..d).map(move |j| (i, j)));
    let idx3 = || (0..d).flat_map(move |i| (0..d).flat_map(move |j| (0..d).map(move |k| (i, j, k))));
    let mut checks = Vec::new();

    let parity_ok = a.parity.iter().all(|&p| p <= 1);
    checks.push(Check {
        name: "parity-values",
        violation: (!parity_ok).then(|| "parities must be 0 or 1".to_string()),
    });
    if !parity_ok {
        return ValidationReport { checks };
    }

    checks.push(Check {
        name: "super-antisymmetry",
        violation: first(idx3().filter_map(|(i, j, k)| {
            (a.f(i, j, k) != &-(a.sign(i, j) * a.f(j, i, k))).then(|| format!("f^{k}_({i},{j})"))
        })),
    });
    checks.push(Check {
        name: "parity-closure",
        violation: first(idx3().filter_map(|(i, j, k)| {
            (!a.f(i, j, k).is_zero() && a.parity[k] != a.parity[i] ^ a.parity[j]).then(|| format!("f^{k}_({i},{j})"))
        }))
        .or_else(|| {
            first(idx().filter_map(|(i, j)| {
                ((!a.kappa(i, j).is_zero() || !a.b(i, j).is_zero()) && a.parity[i] != a.parity[j])
                    .then(|| format!("metric entry ({i},{j}) mixes parities"))
            }))
        }),
    });
    // [v_i,[v_j,v_k]] = [[v_i,v_j],v_k] + (-1)^{[i][j]} [v_j,[v_i,v_k]]
    checks.push(Check {
        name: "super-jacobi",
        violation: first(idx3().filter_map(|(i, j, k)| {
            (0..d)
                .any(|t| {
                    let mut lhs = Rational::zero();
                    let mut rhs = Rational::zero();
                    for m in 0..d {
                        lhs += a.f(j, k, m) * a.f(i, m, t);
                        rhs += a.f(i, j, m) * a.f(m, k, t);
                        rhs += a.sign(i, j) * a.f(i, k, m) * a.f(j, m, t);
                    }
                    lhs != rhs
                })
                .then(|| format!("({i},{j},{k})"))
        })),
    });
    checks.push(Check {
        name: "kappa-supersymmetry",
        violation: first(idx().filter_map(|(i, j)| {
            (a.kappa(i, j) != &(a.sign(i, j) * a.kappa(j, i))).then(|| format!("kappa({i},{j})"))
        })),
    });
    // kappa([x,y],z) = kappa(x,[y,z])
    checks.push(Check {
        name: "kappa-invariance",
        violation: first(idx3().filter_map(|(i, j, k)| {
            let mut l = Rational::zero();
            let mut r = Rational::zero();
            for m in 0..d {
                l += a.f(i, j, m) * a.kappa(m, k);
                r += a.f(j, k, m) * a.kappa(i, m);
            }
            (l != r).then(|| format!("({i},{j},{k})"))
        })),
    });
    checks.push(Check {
        name: "b-supersymmetry",
        violation: first(idx().filter_map(|(i, j)| {
            (a.b(i, j) != &(a.sign(i, j) * a.b(j, i))).then(|| format!("b({i},{j})"))
        })),
    });
    checks.push(Check {
        name: "inverse",
        violation: first(idx().filter_map(|(i, k)| {
            let s: Rational = (0..d).map(|j| a.kappa(i, j) * a.b(j, k)).sum();
            let want = if i == k { Rational::one() } else { Rational::zero() };
            (s != want).then(|| format!("sum_j kappa_({i},j) b^(j,{k}) = {s}"))
        })),
    });
    if let Some(tri) = &a.triangular {
        checks.push(Check { name: "triangular", violation: check_triangular(a, tri).err() });
    }
    ValidationReport { checks }
}

fn check_triangular(a: &AlgebraSpec, tri: &TriangularData) -> Result<(), String> {
    let d = a.dim;
    let mut seen = vec![0u8; d];
    let xs: Vec<usize> = tri.roots.iter().map(|r| r.x).collect();
    for &i in tri.cartan.iter().chain(&xs).chain(tri.roots.iter().map(|r| &r.y)) {
        if i >= d {
            return Err(format!("index {i} out of range"));
        }
        seen[i] += 1;
    }
    if let Some(i) = seen.iter().position(|&c| c != 1) {
        return Err(format!("basis index {i} must appear exactly once among Cartan and root vectors"));
    }
    for &h in &tri.cartan {
        if a.parity[h] != 0 {
            return Err(format!("Cartan element {h} is odd"));
        }
        for &h2 in &tri.cartan {
            if a.bracket(h, h2).iter().any(|c| !c.is_zero()) {
                return Err(format!("Cartan elements {h} and {h2} do not commute"));
            }
        }
    }
    for r in &tri.roots {
        if a.parity[r.x] != r.parity || a.parity[r.y] != r.parity {
            return Err(format!("root {} parity does not match its vectors", r.name));
        }
        let h = a.coroot(r).map_err(|e| e.to_string())?;
        if h.iter().all(Zero::is_zero) {
            return Err(format!("[x,y] vanishes for root {}", r.name));
        }
        for &hc in &tri.cartan {
            let ax = a.bracket(hc, r.x);
            let ay = a.bracket(hc, r.y);
            let val = ax[r.x].clone();
            let weight_ok = (0..d).all(|k| {
                (k == r.x || ax[k].is_zero()) && (k == r.y || ay[k].is_zero())
            }) && ay[r.y] == -val;
            if !weight_ok {
                return Err(format!("root vectors of {} are not weight vectors", r.name));
            }
        }
    }
    // the positive part must be a subalgebra
    for &x1 in &xs {
        for &x2 in &xs {
            if let Some(k) = (0..d).find(|&k| !a.f(x1, x2, k).is_zero() && !xs.contains(&k)) {
                return Err(format!("[{x1},{x2}] has a component along {k} outside the positive part"));
            }
        }
    }
    Ok(())
}

fn parse_rat(s: &str, line: usize) -> Result<Rational, LieError> {
    let bad = || LieError::Parse { line, msg: format!("bad rational `{s}`") };
    match s.split_once('/') {
        Some((n, d)) => {
            let n: i64 = n.parse().map_err(|_| bad())?;
            let d: i64 = d.parse().map_err(|_| bad())?;
            if d == 0 {
                return Err(bad());
            }
            Ok(rat(n, d))
        }
        None => Ok(int(s.parse().map_err(|_| bad())?)),
    }
}

fn parse(input: &str) -> Result<AlgebraSpec, LieError> {
    let mut name = None;
    let mut dim: Option<usize> = None;
    let mut spec: Option<AlgebraSpec> = None;
    let mut have_b = false;
    let mut cartan: Option<Vec<usize>> = None;
    let mut roots = Vec::new();
    for (ln, raw) in input.lines().enumerate() {
        let line = ln + 1;
        let toks: Vec<&str> = raw.split('#').next().unwrap().split_whitespace().collect();
        let Some(&kw) = toks.first() else { continue };
        let err = |msg: &str| LieError::Parse { line, msg: msg.to_string() };
        let index = |s: &str| -> Result<usize, LieError> {
            let i: usize = s.parse().map_err(|_| err(&format!("bad index `{s}`")))?;
            match dim {
                Some(d) if i < d => Ok(i),
                _ => Err(err(&format!("index {s} out of range"))),
            }
        };
        match kw {
            "algebra" if toks.len() == 2 => name = Some(toks[1].to_string()),
            "dim" if toks.len() == 2 => dim = Some(toks[1].parse().map_err(|_| err("bad dimension"))?),
            "parity" => {
                let d = dim.ok_or_else(|| err("`dim` must precede `parity`"))?;
                if toks.len() != d + 1 {
                    return Err(err("parity needs one entry per basis vector"));
                }
                let p: Vec<u8> = toks[1..]
                    .iter()
                    .map(|t| match *t {
                        "0" => Ok(0),
                        "1" => Ok(1),
                        _ => Err(err("parity entries must be 0 or 1")),
                    })
                    .collect::<Result<_, _>>()?;
                let labels = (0..d).map(|i| format!("e{i}")).collect();
                spec = Some(AlgebraSpec::new(name.as_deref().unwrap_or("unnamed"), p, labels));
            }
            _ if spec.is_none() => return Err(err("expected `algebra`, `dim` and `parity` first")),
            "label" if toks.len() == 3 => {
                let i = index(toks[1])?;
                spec.as_mut().unwrap().labels[i] = toks[2].to_string();
            }
            "f" if toks.len() == 5 => {
                let (i, j, k) = (index(toks[1])?, index(toks[2])?, index(toks[3])?);
                spec.as_mut().unwrap().set_f(i, j, k, parse_rat(toks[4], line)?);
            }
            "kappa" if toks.len() == 4 => {
                let (i, j) = (index(toks[1])?, index(toks[2])?);
                spec.as_mut().unwrap().set_kappa(i, j, parse_rat(toks[3], line)?);
            }
            "b" if toks.len() == 4 => {
                let (i, j) = (index(toks[1])?, index(toks[2])?);
                spec.as_mut().unwrap().set_b(i, j, parse_rat(toks[3], line)?);
                have_b = true;
            }
            "cartan" => cartan = Some(toks[1..].iter().map(|t| index(t)).collect::<Result<_, _>>()?),
            "root" if toks.len() == 5 => {
                let parity = match toks[2] {
                    "0" => 0,
                    "1" => 1,
                    _ => return Err(err("root parity must be 0 or 1")),
                };
                roots.push(Root { name: toks[1].to_string(), parity, x: index(toks[3])?, y: index(toks[4])? });
            }
            _ => return Err(err(&format!("malformed `{kw}` statement"))),
        }
    }
    let mut spec = spec.ok_or(LieError::Parse { line: 0, msg: "missing `parity`".into() })?;
    if let Some(n) = name {
        spec.name = n;
    }
    if !have_b {
        spec.set_b_from_kappa()?;
    }
    match (cartan, roots.is_empty()) {
        (Some(cartan), _) => spec.triangular = Some(TriangularData { cartan, roots }),
        (None, false) => return Err(LieError::Parse { line: 0, msg: "`root` requires `cartan`".into() }),
        (None, true) => {}
    }
    Ok(spec)
}
