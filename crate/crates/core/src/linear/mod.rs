//! Exact rational linear algebra over formal spans.

mod lincomb;
mod rref;

pub use lincomb::LinComb;
pub use rref::{rref, Echelon, Rref, SparseRow};

use num_traits::{One, Zero};
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::hash::Hash;
use std::sync::Arc;
use thiserror::Error;

pub type Rational = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinearError {
    #[error("key `{0}` is not in the ambient space")]
    UnknownKey(String),
    #[error("constraints are inconsistent: {0}")]
    Inconsistent(Certificate),
    #[error("constraints leave {} basis direction(s) free: {}", .0.len(), .0.join(", "))]
    Underdetermined(Vec<String>),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
}

/// Witness of inconsistency: the combination `sum c_i * constraint_i`
/// reduces to zero in the quotient while the required values combine to
/// `value != 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub combination: Vec<(usize, Rational)>,
    pub value: Rational,
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .combination
            .iter()
            .map(|(i, c)| format!("{c}*constraint[{i}]"))
            .collect();
        write!(f, "{} vanishes but its value is {}", terms.join(" + "), self.value)
    }
}

/// The quotient of the formal span of `ambient` by a set of relations.
/// The basis consists of the non-pivot ambient elements, in ambient order.
#[derive(Clone, Debug)]
pub struct QuotientSpace<K> {
    ambient: Vec<K>,
    index: HashMap<K, usize>,
    rref: Rref,
    pivot_row: Vec<Option<usize>>,
    basis: Vec<usize>,
    coord_of: Vec<Option<usize>>,
}

impl<K: Ord + Hash + Clone + fmt::Display> QuotientSpace<K> {
    /// Every relation term must lie in `ambient`.
    pub fn new(ambient: Vec<K>, relations: &[LinComb<K>]) -> Result<Self, LinearError> {
        let index: HashMap<K, usize> = ambient.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
        let mut e = Echelon::new(ambient.len());
        for rel in relations {
            let mut row = Vec::with_capacity(rel.len());
            for (k, c) in rel.iter() {
                let i = *index.get(k).ok_or_else(|| LinearError::UnknownKey(k.to_string()))?;
                row.push((i, c.clone()));
            }
            row.sort_by_key(|(i, _)| *i);
            e.insert(row);
        }
        Ok(Self::from_rref(ambient, e.finish()))
    }

    pub fn from_rref(ambient: Vec<K>, rref: Rref) -> Self {
        let index: HashMap<K, usize> = ambient.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
        let mut pivot_row = vec![None; ambient.len()];
        for (r, &p) in rref.pivots.iter().enumerate() {
            pivot_row[p] = Some(r);
        }
        let basis: Vec<usize> = (0..ambient.len()).filter(|&i| pivot_row[i].is_none()).collect();
        let mut coord_of = vec![None; ambient.len()];
        for (j, &i) in basis.iter().enumerate() {
            coord_of[i] = Some(j);
        }
        QuotientSpace { ambient, index, rref, pivot_row, basis, coord_of }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn rank(&self) -> usize {
        self.rref.rank()
    }

    pub fn ambient(&self) -> &[K] {
        &self.ambient
    }

    pub fn rref(&self) -> &Rref {
        &self.rref
    }

    pub fn contains(&self, k: &K) -> bool {
        self.index.contains_key(k)
    }

    pub fn basis_keys(&self) -> Vec<K> {
        self.basis.iter().map(|&i| self.ambient[i].clone()).collect()
    }

    pub fn basis_vector(&self, j: usize) -> LinComb<K> {
        LinComb::basis(self.ambient[self.basis[j]].clone())
    }

    /// Coordinates of a single ambient element.
    pub fn reduce_key(&self, k: &K, c: &Rational, out: &mut [Rational]) -> Result<(), LinearError> {
        let i = *self.index.get(k).ok_or_else(|| LinearError::UnknownKey(k.to_string()))?;
        if let Some(j) = self.coord_of[i] {
            out[j] += c;
        } else {
            let r = self.pivot_row[i].expect("non-basis column is a pivot");
            // row says e_i + sum_{free f} a_f e_f == 0
            for (col, a) in &self.rref.rows[r] {
                if *col != i {
                    let j = self.coord_of[*col].expect("reduced row touches only free columns");
                    out[j] -= c * a;
                }
            }
        }
        Ok(())
    }

    /// Coordinates in the quotient basis.
    pub fn reduce(&self, v: &LinComb<K>) -> Result<Vec<Rational>, LinearError> {
        let mut out = vec![Rational::zero(); self.dim()];
        for (k, c) in v.iter() {
            self.reduce_key(k, c, &mut out)?;
        }
        Ok(out)
    }

    pub fn from_coords(&self, coords: &[Rational]) -> LinComb<K> {
        coords
            .iter()
            .enumerate()
            .map(|(j, c)| (self.ambient[self.basis[j]].clone(), c.clone()))
            .collect()
    }
}

/// A linear functional on a quotient space, stored by its basis values.
#[derive(Clone, Debug)]
pub struct Functional<K> {
    pub space: Arc<QuotientSpace<K>>,
    pub values: Vec<Rational>,
}

impl<K: Ord + Hash + Clone + fmt::Display> Functional<K> {
    pub fn new(space: Arc<QuotientSpace<K>>, values: Vec<Rational>) -> Result<Self, LinearError> {
        if values.len() != space.dim() {
            return Err(LinearError::Dimension { expected: space.dim(), got: values.len() });
        }
        Ok(Functional { space, values })
    }

    pub fn eval_coords(&self, coords: &[Rational]) -> Rational {
        coords.iter().zip(&self.values).map(|(a, b)| a * b).sum()
    }

    pub fn eval(&self, v: &LinComb<K>) -> Result<Rational, LinearError> {
        Ok(self.eval_coords(&self.space.reduce(v)?))
    }
}

/// Solve for the unique functional with `F(v_i) = c_i` for all constraints,
/// using an explicit reduction map (which may resolve keys outside the
/// ambient span first).
pub fn solve_functional_with<K: Ord + Hash + Clone + fmt::Display>(
    space: Arc<QuotientSpace<K>>,
    coords: impl IntoIterator<Item = (Vec<Rational>, Rational)>,
) -> Result<Functional<K>, LinearError> {
    let dim = space.dim();
    struct Row {
        a: Vec<Rational>,
        val: Rational,
        prov: BTreeMap<usize, Rational>,
    }
    let mut piv: BTreeMap<usize, Row> = BTreeMap::new();
    for (i, (a, val)) in coords.into_iter().enumerate() {
        if a.len() != dim {
            return Err(LinearError::Dimension { expected: dim, got: a.len() });
        }
        let mut row = Row { a, val, prov: BTreeMap::from([(i, Rational::one())]) };
        let mut lead = None;
        for c in 0..dim {
            if row.a[c].is_zero() {
                continue;
            }
            match piv.get(&c) {
                Some(p) => {
                    let f = row.a[c].clone();
                    for k in c..dim {
                        if !p.a[k].is_zero() {
                            row.a[k] -= &f * &p.a[k];
                        }
                    }
                    row.val -= &f * &p.val;
                    for (j, w) in &p.prov {
                        let e = row.prov.entry(*j).or_insert_with(Rational::zero);
                        *e -= &f * w;
                    }
                }
                None => {
                    lead = Some(c);
                    break;
                }
            }
        }
        match lead {
            Some(c) => {
                let inv = Rational::one() / &row.a[c];
                for x in row.a.iter_mut() {
                    *x *= &inv;
                }
                row.val *= &inv;
                for w in row.prov.values_mut() {
                    *w *= &inv;
                }
                piv.insert(c, row);
            }
            None if !row.val.is_zero() => {
                let combination = row.prov.into_iter().filter(|(_, w)| !w.is_zero()).collect();
                return Err(LinearError::Inconsistent(Certificate { combination, value: row.val }));
            }
            None => {}
        }
    }
    if piv.len() < dim {
        let free = (0..dim)
            .filter(|c| !piv.contains_key(c))
            .map(|c| space.basis_keys()[c].to_string())
            .collect();
        return Err(LinearError::Underdetermined(free));
    }
    let mut values = vec![Rational::zero(); dim];
    for c in (0..dim).rev() {
        let p = &piv[&c];
        let mut v = p.val.clone();
        for k in c + 1..dim {
            if !p.a[k].is_zero() {
                v -= &p.a[k] * &values[k];
            }
        }
        values[c] = v;
    }
    Functional::new(space, values)
}

/// Solve for the unique functional with `F(v_i) = c_i`.
pub fn solve_functional<K: Ord + Hash + Clone + fmt::Display>(
    space: Arc<QuotientSpace<K>>,
    constraints: &[(LinComb<K>, Rational)],
) -> Result<Functional<K>, LinearError> {
    let mut rows = Vec::with_capacity(constraints.len());
    for (v, c) in constraints {
        rows.push((space.reduce(v)?, c.clone()));
    }
    solve_functional_with(space, rows)
}

fn to_sparse(v: &[Rational]) -> SparseRow {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect()
}

/// Rank of a list of dense vectors.
pub fn rank(vectors: &[Vec<Rational>]) -> usize {
    let ncols = vectors.first().map_or(0, Vec::len);
    rref(vectors.iter().map(|v| to_sparse(v)), ncols).rank()
}

/// A solution `a` of `sum_j a_j * columns[j] = rhs`, free unknowns set to 0.
pub fn solve_linear(columns: &[Vec<Rational>], rhs: &[Rational]) -> Option<Vec<Rational>> {
    let m = columns.len();
    // transpose into rows over unknowns plus the right-hand side column
    let rows = (0..rhs.len()).map(|r| {
        let mut row: SparseRow = (0..m)
            .filter(|&j| !columns[j][r].is_zero())
            .map(|j| (j, columns[j][r].clone()))
            .collect();
        if !rhs[r].is_zero() {
            row.push((m, rhs[r].clone()));
        }
        row
    });
    let red = rref(rows, m + 1);
    if red.pivots.contains(&m) {
        return None;
    }
    let mut a = vec![Rational::zero(); m];
    for (row, &p) in red.rows.iter().zip(&red.pivots) {
        if let Some((_, v)) = row.iter().find(|(c, _)| *c == m) {
            a[p] = v.clone();
        }
    }
    Some(a)
}
