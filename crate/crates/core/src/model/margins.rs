use std::fmt;

use super::cell::{bitstring, restrict_index};
use super::complex::SimplicialComplex;
use super::table::{Entry, Flavor, Table};
use crate::error::{Error, Result};

/// Row label of the margin operator: a facet and an assignment to its
/// vertices (ascending vertex order, first vertex most significant).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MarginKey {
    pub facet: Vec<usize>,
    pub assignment: usize,
}

impl MarginKey {
    pub fn assignment_bits(&self) -> String {
        bitstring(self.assignment, self.facet.len())
    }
}

impl fmt::Debug for MarginKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}={}", self.facet, self.assignment_bits())
    }
}

/// The 0/1 matrix `A_Δ` with one row per (facet, assignment) and one column
/// per cell. Only the row layout is stored; entries are computed on demand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarginOperator {
    n: usize,
    facets: Vec<Vec<usize>>,
    offsets: Vec<usize>,
    rows: usize,
}

impl MarginOperator {
    pub fn new(model: &SimplicialComplex) -> Self {
        let facets = model.facets().to_vec();
        let mut offsets = Vec::with_capacity(facets.len());
        let mut rows = 0;
        for f in &facets {
            offsets.push(rows);
            rows += 1 << f.len();
        }
        MarginOperator {
            n: model.n(),
            facets,
            offsets,
            rows,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_rows(&self) -> usize {
        self.rows
    }

    pub fn num_cols(&self) -> usize {
        1 << self.n
    }

    pub fn facets(&self) -> &[Vec<usize>] {
        &self.facets
    }

    /// Row of facet number `facet` hit by `cell`.
    pub fn row_of(&self, facet: usize, cell: usize) -> usize {
        self.offsets[facet] + restrict_index(self.n, cell, &self.facets[facet])
    }

    /// The rows with a 1 in column `cell`, one per facet, ascending.
    pub fn column(&self, cell: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.facets.len()).map(move |f| self.row_of(f, cell))
    }

    pub fn entry(&self, row: usize, col: usize) -> bool {
        let key = self.key(row);
        restrict_index(self.n, col, &key.facet) == key.assignment
    }

    pub fn key(&self, row: usize) -> MarginKey {
        assert!(row < self.rows, "row {row} out of range");
        let f = self.offsets.partition_point(|&o| o <= row) - 1;
        MarginKey {
            facet: self.facets[f].clone(),
            assignment: row - self.offsets[f],
        }
    }

    pub fn keys(&self) -> Vec<MarginKey> {
        (0..self.rows).map(|r| self.key(r)).collect()
    }

    pub fn row_index(&self, key: &MarginKey) -> Option<usize> {
        let f = self.facets.iter().position(|g| *g == key.facet)?;
        (key.assignment < 1 << key.facet.len()).then(|| self.offsets[f] + key.assignment)
    }

    /// Column indices of each row, in row order.
    pub fn row_supports(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.rows];
        for cell in 0..self.num_cols() {
            for r in self.column(cell) {
                out[r].push(cell);
            }
        }
        out
    }

    pub fn facet_range(&self, facet: usize) -> std::ops::Range<usize> {
        self.offsets[facet]..self.offsets[facet] + (1 << self.facets[facet].len())
    }
}

/// Values indexed by the margin keys of a model, in canonical row order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MarginVector<V> {
    n: usize,
    facets: Vec<Vec<usize>>,
    values: Vec<V>,
}

impl<V: Entry> MarginVector<V> {
    /// Takes values already in the canonical row order of `model`.
    pub fn new(model: &SimplicialComplex, values: Vec<V>) -> Result<Self> {
        let op = MarginOperator::new(model);
        if values.len() != op.num_rows() {
            return Err(Error::WrongLength {
                expected: op.num_rows(),
                found: values.len(),
            });
        }
        Ok(MarginVector {
            n: model.n(),
            facets: model.facets().to_vec(),
            values,
        })
    }

    pub fn zeros(model: &SimplicialComplex) -> Self {
        let rows = MarginOperator::new(model).num_rows();
        MarginVector {
            n: model.n(),
            facets: model.facets().to_vec(),
            values: vec![V::zero(); rows],
        }
    }

    /// Builds from keyed entries; every key of the model must occur exactly once.
    pub fn from_entries<I>(model: &SimplicialComplex, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (MarginKey, V)>,
    {
        let op = MarginOperator::new(model);
        let mut slots: Vec<Option<V>> = vec![None; op.num_rows()];
        for (key, v) in entries {
            let row = op.row_index(&key).ok_or_else(|| Error::UnknownMarginKey {
                facet: key.facet.clone(),
                assignment: key.assignment_bits(),
            })?;
            if slots[row].replace(v).is_some() {
                return Err(Error::DuplicateMarginKey {
                    facet: key.facet.clone(),
                    assignment: key.assignment_bits(),
                });
            }
        }
        let values = slots
            .into_iter()
            .enumerate()
            .map(|(row, v)| {
                v.ok_or_else(|| {
                    let key = op.key(row);
                    Error::MissingMarginKey {
                        assignment: key.assignment_bits(),
                        facet: key.facet,
                    }
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(MarginVector {
            n: model.n(),
            facets: model.facets().to_vec(),
            values,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn facets(&self) -> &[Vec<usize>] {
        &self.facets
    }

    pub fn values(&self) -> &[V] {
        &self.values
    }

    /// Whether these margins are indexed by exactly the keys of `model`.
    pub fn matches_model(&self, model: &SimplicialComplex) -> bool {
        self.n == model.n() && self.facets == model.facets()
    }

    /// `(key, value)` pairs in canonical row order.
    pub fn entries(&self) -> impl Iterator<Item = (MarginKey, &V)> {
        let mut keys = Vec::with_capacity(self.values.len());
        for f in &self.facets {
            for a in 0..1usize << f.len() {
                keys.push(MarginKey {
                    facet: f.clone(),
                    assignment: a,
                });
            }
        }
        keys.into_iter().zip(self.values.iter())
    }

    pub fn get(&self, key: &MarginKey) -> Option<&V> {
        let mut offset = 0;
        for f in &self.facets {
            if *f == key.facet {
                return (key.assignment < 1 << f.len())
                    .then(|| &self.values[offset + key.assignment]);
            }
            offset += 1 << f.len();
        }
        None
    }

    /// The block of values belonging to facet number `facet`.
    pub fn facet_block(&self, facet: usize) -> &[V] {
        let start: usize = self.facets[..facet].iter().map(|f| 1usize << f.len()).sum();
        &self.values[start..start + (1 << self.facets[facet].len())]
    }

    pub fn facet_totals(&self) -> Vec<V> {
        (0..self.facets.len())
            .map(|f| {
                let mut s = V::zero();
                for v in self.facet_block(f) {
                    s += v;
                }
                s
            })
            .collect()
    }

    /// The common grand total, or `None` if facets disagree (or there are none).
    pub fn grand_total(&self) -> Option<V> {
        let totals = self.facet_totals();
        let first = totals.first()?.clone();
        totals.iter().all(|t| *t == first).then_some(first)
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }

    pub fn to_rational(&self) -> MarginVector<crate::rational::Rational> {
        MarginVector {
            n: self.n,
            facets: self.facets.clone(),
            values: self.values.iter().map(Entry::to_rational).collect(),
        }
    }
}

impl<V: Entry> fmt::Debug for MarginVector<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.entries()).finish()
    }
}

/// The Δ-margins of `table`: for each facet `F` and assignment `a`, the sum
/// of the cells whose restriction to `F` equals `a`.
pub fn compute_margins<V: Entry>(
    model: &SimplicialComplex,
    table: &Table<V>,
) -> Result<MarginVector<V>> {
    if table.n() != model.n() {
        return Err(Error::DimensionMismatch {
            expected: model.n(),
            found: table.n(),
        });
    }
    let n = model.n();
    let mut values = Vec::new();
    for facet in model.facets() {
        let mut block = vec![V::zero(); 1 << facet.len()];
        for (cell, v) in table.support() {
            block[restrict_index(n, cell, facet)] += v;
        }
        values.extend(block);
    }
    Ok(MarginVector {
        n,
        facets: model.facets().to_vec(),
        values,
    })
}

/// Whether every Δ-margin of `table` vanishes.
pub fn is_kernel<V: Entry>(model: &SimplicialComplex, table: &Table<V>) -> Result<bool> {
    Ok(compute_margins(model, table)?.is_zero())
}

/// Maps `u` on `n-1` variables to `(u, -u)` on `n` variables: the new last
/// variable at 0 carries `u`, at 1 carries `-u`.
pub fn lift_kernel<V: Entry>(u: &Table<V>) -> Table<V> {
    let n = u.n() + 1;
    let mut values = Vec::with_capacity(1 << n);
    for v in u.values() {
        values.push(v.clone());
        values.push(-v.clone());
    }
    Table::new(n, values, Flavor::Signed).expect("lift of a valid table")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{CellIndex, IntTable};
    use crate::rational::Rational;

    fn complex(n: usize, sets: &[&[usize]]) -> SimplicialComplex {
        SimplicialComplex::new(n, sets.iter().map(|s| s.iter().copied())).unwrap()
    }

    fn dense(op: &MarginOperator) -> Vec<Vec<u8>> {
        (0..op.num_rows())
            .map(|r| (0..op.num_cols()).map(|c| op.entry(r, c) as u8).collect())
            .collect()
    }

    #[test]
    fn single_variable_is_identity() {
        let op = MarginOperator::new(&complex(1, &[&[1]]));
        assert_eq!(dense(&op), vec![vec![1, 0], vec![0, 1]]);
    }

    #[test]
    fn independence_model_two_ones_per_column() {
        let op = MarginOperator::new(&complex(2, &[&[1], &[2]]));
        assert_eq!((op.num_rows(), op.num_cols()), (4, 4));
        let m = dense(&op);
        for c in 0..4 {
            assert_eq!(m.iter().map(|row| row[c]).sum::<u8>(), 2);
        }
    }

    #[test]
    fn delta4_shape() {
        let op = MarginOperator::new(&complex(4, &[&[1, 4], &[2, 4], &[3, 4], &[1, 2, 3]]));
        assert_eq!((op.num_rows(), op.num_cols()), (20, 16));
        let m = dense(&op);
        for c in 0..16 {
            assert_eq!(m.iter().map(|row| row[c]).sum::<u8>(), 4);
        }
        let supports = op.row_supports();
        for (cols, row) in supports.iter().zip(&m) {
            for (c, &e) in row.iter().enumerate() {
                assert_eq!(cols.contains(&c), e == 1);
            }
        }
        assert_eq!(op.key(6).facet, vec![2, 4]);
        assert_eq!(op.key(12).facet, vec![1, 2, 3]);
        assert_eq!(op.row_index(&op.key(13)), Some(13));
    }

    #[test]
    fn zero_table_has_zero_margins() {
        let d = complex(3, &[&[1, 2], &[2, 3]]);
        let m = compute_margins(&d, &IntTable::zeros(3, Flavor::NonNegative)).unwrap();
        assert!(m.is_zero());
        assert_eq!(m.values().len(), 8);
    }

    #[test]
    fn gamma4_margins_of_positive_part() {
        // 2 e_000 + e_111
        let g = complex(3, &[&[1], &[2], &[3]]);
        let t = IntTable::from_entries(3, [(0b000, 2), (0b111, 1)], Flavor::NonNegative).unwrap();
        let m = compute_margins(&g, &t).unwrap();
        for f in 0..3 {
            assert_eq!(m.facet_block(f), &[2, 1]);
        }
    }

    #[test]
    fn dimension_mismatch() {
        let g = complex(3, &[&[1]]);
        let t = IntTable::zeros(2, Flavor::Signed);
        assert!(matches!(
            compute_margins(&g, &t),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn lift_layout() {
        let u = IntTable::new(1, vec![3, -1], Flavor::Signed).unwrap();
        assert_eq!(lift_kernel(&u).values(), &[3, -3, -1, 1]);
        let z = Table::<Rational>::zeros(3, Flavor::Signed);
        assert!(lift_kernel(&z).is_zero());
    }

    #[test]
    fn keyed_construction_validates() {
        let d = complex(2, &[&[1], &[2]]);
        let key = |f: &[usize], a| MarginKey {
            facet: f.to_vec(),
            assignment: a,
        };
        let full = vec![
            (key(&[1], 0), 1i64),
            (key(&[1], 1), 2),
            (key(&[2], 0), 3),
            (key(&[2], 1), 0),
        ];
        let mv = MarginVector::from_entries(&d, full.clone()).unwrap();
        assert_eq!(mv.values(), &[1, 2, 3, 0]);
        assert_eq!(mv.grand_total(), Some(3));
        assert_eq!(mv.get(&key(&[2], 0)), Some(&3));

        let mut dup = full.clone();
        dup.push((key(&[1], 0), 1));
        assert!(matches!(
            MarginVector::from_entries(&d, dup),
            Err(Error::DuplicateMarginKey { .. })
        ));
        assert!(matches!(
            MarginVector::from_entries(&d, full[..3].to_vec()),
            Err(Error::MissingMarginKey { .. })
        ));
        let mut unknown = full;
        unknown[0].0 = key(&[1, 2], 0);
        assert!(matches!(
            MarginVector::from_entries(&d, unknown),
            Err(Error::UnknownMarginKey { .. })
        ));
    }

    #[test]
    fn restriction_matches_cell_api() {
        let c = CellIndex::parse("10110").unwrap();
        assert_eq!(
            restrict_index(5, c.index(), &[1, 3, 5]),
            c.restrict(&[1, 3, 5])
        );
    }
}
