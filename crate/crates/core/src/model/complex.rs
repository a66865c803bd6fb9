use std::fmt;

use crate::error::{Error, Result};

/// Largest variable count accepted; dense tables hold `2^n` entries.
pub const MAX_VARS: usize = 24;

/// A simplicial complex on `[n] = {1, ..., n}` stored by its facets.
///
/// Facets form an antichain and are kept in canonical order: by size, then
/// lexicographically on the ascending vertex lists.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SimplicialComplex {
    n: usize,
    facets: Vec<Vec<usize>>,
}

fn is_subset(small: &[usize], big: &[usize]) -> bool {
    // both sorted ascending
    let mut it = big.iter();
    small.iter().all(|v| it.by_ref().any(|w| w == v))
}

impl SimplicialComplex {
    /// Validates a raw subset list and reduces it to its maximal elements.
    pub fn new<I, S>(n: usize, subsets: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: IntoIterator<Item = usize>,
    {
        if n < 1 {
            return Err(Error::NoVariables);
        }
        if n > MAX_VARS {
            return Err(Error::TooManyVariables(n));
        }
        let mut sets = Vec::new();
        for subset in subsets {
            let mut s: Vec<usize> = subset.into_iter().collect();
            if s.is_empty() {
                return Err(Error::EmptySubset);
            }
            if let Some(&vertex) = s.iter().find(|&&v| v < 1 || v > n) {
                return Err(Error::VertexOutOfRange { vertex, n });
            }
            s.sort_unstable();
            s.dedup();
            sets.push(s);
        }
        Ok(Self::from_sorted_sets(n, sets))
    }

    fn from_sorted_sets(n: usize, mut sets: Vec<Vec<usize>>) -> Self {
        // Larger sets first so each set only needs checking against kept ones.
        sets.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        sets.dedup();
        let mut facets: Vec<Vec<usize>> = Vec::new();
        for s in sets {
            if !facets.iter().any(|f| is_subset(&s, f)) {
                facets.push(s);
            }
        }
        facets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        SimplicialComplex { n, facets }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn facets(&self) -> &[Vec<usize>] {
        &self.facets
    }

    pub fn num_facets(&self) -> usize {
        self.facets.len()
    }

    pub fn num_cells(&self) -> usize {
        1 << self.n
    }

    /// True if `face` (ascending) is contained in some facet.
    pub fn contains_face(&self, face: &[usize]) -> bool {
        self.facets.iter().any(|f| is_subset(face, f))
    }

    pub fn facet_index(&self, facet: &[usize]) -> Option<usize> {
        self.facets.iter().position(|f| f == facet)
    }

    /// Adds a binary response variable `n + 1`: facets `F ∪ {n+1}` for each
    /// facet `F`, plus the full vertex set `[n]`.
    pub fn logit(&self) -> SimplicialComplex {
        let m = self.n + 1;
        let mut sets: Vec<Vec<usize>> = self
            .facets
            .iter()
            .map(|f| {
                let mut s = f.clone();
                s.push(m);
                s
            })
            .collect();
        sets.push((1..=self.n).collect());
        Self::from_sorted_sets(m, sets)
    }
}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SimplicialComplex(n={}, {:?})", self.n, self.facets)
    }
}
