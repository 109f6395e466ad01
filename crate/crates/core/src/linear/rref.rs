use super::Rational;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt::Write as _;

/// Sparse row: `(column, coefficient)` pairs with strictly increasing
/// columns and no zero coefficients.
pub type SparseRow = Vec<(usize, Rational)>;

/// Reduced row echelon form: `rows[i]` has leading column `pivots[i]` with
/// coefficient 1, and no other row has a nonzero entry in a pivot column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub ncols: usize,
    pub rows: Vec<SparseRow>,
    pub pivots: Vec<usize>,
}

/// Row echelon form built one row at a time, with leftmost pivots.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    ncols: usize,
    rows: BTreeMap<usize, SparseRow>,
}

fn sub_scaled(acc: &mut BTreeMap<usize, Rational>, c: &Rational, row: &SparseRow) {
    for (col, v) in row {
        let e = acc.entry(*col).or_insert_with(Rational::zero);
        *e -= c * v;
        if e.is_zero() {
            acc.remove(col);
        }
    }
}

impl Echelon {
    pub fn new(ncols: usize) -> Self {
        Echelon { ncols, rows: BTreeMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduce `row` against the current pivots; returns the remainder.
    pub fn reduce(&self, row: SparseRow) -> SparseRow {
        let mut acc: BTreeMap<usize, Rational> = row.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        let mut cursor = 0;
        loop {
            let Some((&c, v)) = acc.range(cursor..).next() else { break };
            match self.rows.get(&c) {
                Some(prow) => {
                    let v = v.clone();
                    sub_scaled(&mut acc, &v, prow);
                }
                None => cursor = c + 1,
            }
        }
        acc.into_iter().collect()
    }

    /// Insert a row; returns false when it was dependent on earlier rows.
    pub fn insert(&mut self, row: SparseRow) -> bool {
        debug_assert!(row.iter().all(|(c, _)| *c < self.ncols));
        let r = self.reduce(row);
        let Some((lead, lc)) = r.first().cloned() else { return false };
        let inv = Rational::one() / lc;
        let r: SparseRow = r.into_iter().map(|(c, v)| (c, v * &inv)).collect();
        self.rows.insert(lead, r);
        true
    }

    /// Back-substitute into fully reduced form.
    pub fn finish(self) -> Rref {
        let mut done: BTreeMap<usize, SparseRow> = BTreeMap::new();
        for (p, row) in self.rows.into_iter().rev() {
            let mut acc: BTreeMap<usize, Rational> = row.into_iter().collect();
            let cols: Vec<usize> = acc.keys().copied().filter(|&c| c > p).collect();
            for c in cols {
                if let Some(prow) = done.get(&c) {
                    if let Some(v) = acc.get(&c).cloned() {
                        sub_scaled(&mut acc, &v, prow);
                    }
                }
            }
            done.insert(p, acc.into_iter().collect());
        }
        let (pivots, rows) = done.into_iter().unzip();
        Rref { ncols: self.ncols, rows, pivots }
    }
}

/// Reduced row echelon form of a sparse matrix.
pub fn rref(rows: impl IntoIterator<Item = SparseRow>, ncols: usize) -> Rref {
    let mut e = Echelon::new(ncols);
    for r in rows {
        e.insert(r);
    }
    e.finish()
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Triplet dump: one `row col num/den` line per nonzero entry.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        for (i, row) in self.rows.iter().enumerate() {
            for (c, v) in row {
                writeln!(s, "{i} {c} {}/{}", v.numer(), v.denom()).unwrap();
            }
        }
        s
    }
}
