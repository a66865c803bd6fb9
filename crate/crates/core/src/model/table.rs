use std::fmt;
use std::ops::{AddAssign, Neg};

use num_traits::Zero;

use super::cell::CellIndex;
use crate::error::{Error, Result};
use crate::rational::Rational;

/// Numeric entry type of a table or margin vector.
pub trait Entry:
    Clone
    + Eq
    + Ord
    + Zero
    + fmt::Display
    + fmt::Debug
    + for<'a> AddAssign<&'a Self>
    + Neg<Output = Self>
{
    fn to_rational(&self) -> Rational;
    const KIND: &'static str;
}

impl Entry for i64 {
    fn to_rational(&self) -> Rational {
        Rational::from_integer(*self)
    }
    const KIND: &'static str = "integer";
}

impl Entry for Rational {
    fn to_rational(&self) -> Rational {
        self.clone()
    }
    const KIND: &'static str = "rational";
}

/// Sign constraint carried by a table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Flavor {
    Signed,
    NonNegative,
}

/// A dense assignment of values to all `2^n` cells, in canonical cell order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Table<V> {
    n: usize,
    values: Vec<V>,
    flavor: Flavor,
}

pub type IntTable = Table<i64>;
pub type RatTable = Table<Rational>;

impl<V: Entry> Table<V> {
    pub fn new(n: usize, values: Vec<V>, flavor: Flavor) -> Result<Self> {
        if n < 1 {
            return Err(Error::NoVariables);
        }
        if n > super::MAX_VARS {
            return Err(Error::TooManyVariables(n));
        }
        if values.len() != 1 << n {
            return Err(Error::WrongLength {
                expected: 1 << n,
                found: values.len(),
            });
        }
        let t = Table { n, values, flavor };
        t.check_flavor()?;
        Ok(t)
    }

    pub fn zeros(n: usize, flavor: Flavor) -> Self {
        assert!((1..=super::MAX_VARS).contains(&n));
        Table {
            n,
            values: vec![V::zero(); 1 << n],
            flavor,
        }
    }

    /// Builds a table from `(cell index, value)` pairs; repeated cells add up.
    pub fn from_entries<I>(n: usize, entries: I, flavor: Flavor) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, V)>,
    {
        if n < 1 {
            return Err(Error::NoVariables);
        }
        if n > super::MAX_VARS {
            return Err(Error::TooManyVariables(n));
        }
        let mut values = vec![V::zero(); 1 << n];
        for (cell, v) in entries {
            let slot = values.get_mut(cell).ok_or(Error::DimensionMismatch {
                expected: n,
                found: usize::BITS as usize - cell.leading_zeros() as usize,
            })?;
            *slot += &v;
        }
        Self::new(n, values, flavor)
    }

    fn check_flavor(&self) -> Result<()> {
        if self.flavor == Flavor::NonNegative {
            if let Some(cell) = self.values.iter().position(|v| *v < V::zero()) {
                return Err(Error::FlavorViolation {
                    cell,
                    flavor: self.flavor_name(),
                });
            }
        }
        Ok(())
    }

    pub fn flavor_name(&self) -> &'static str {
        match (self.flavor, V::KIND) {
            (Flavor::Signed, "integer") => "signed-integer",
            (Flavor::Signed, _) => "signed-rational",
            (Flavor::NonNegative, "integer") => "nonnegative-integer",
            (Flavor::NonNegative, _) => "nonnegative-rational",
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn values(&self) -> &[V] {
        &self.values
    }

    pub fn into_values(self) -> Vec<V> {
        self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, index: usize) -> &V {
        &self.values[index]
    }

    pub fn at(&self, cell: CellIndex) -> &V {
        debug_assert_eq!(cell.n(), self.n);
        &self.values[cell.index()]
    }

    /// Nonzero entries in canonical cell order.
    pub fn support(&self) -> impl Iterator<Item = (usize, &V)> {
        self.values.iter().enumerate().filter(|(_, v)| !v.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Zero::is_zero)
    }

    pub fn total(&self) -> V {
        let mut s = V::zero();
        for v in &self.values {
            s += v;
        }
        s
    }

    pub fn is_nonnegative(&self) -> bool {
        self.values.iter().all(|v| *v >= V::zero())
    }

    /// Relabels the flavor, re-checking its constraint.
    pub fn with_flavor(self, flavor: Flavor) -> Result<Self> {
        let t = Table { flavor, ..self };
        t.check_flavor()?;
        Ok(t)
    }

    /// Entry-wise `self - other` as a signed table.
    pub fn difference(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| {
                let mut d = -b.clone();
                d += a;
                d
            })
            .collect();
        Ok(Table {
            n: self.n,
            values,
            flavor: Flavor::Signed,
        })
    }

    /// Positive part `t⁺` (nonnegative, disjoint support from `t⁻`).
    pub fn positive_part(&self) -> Self {
        let values = self
            .values
            .iter()
            .map(|v| if *v > V::zero() { v.clone() } else { V::zero() })
            .collect();
        Table {
            n: self.n,
            values,
            flavor: Flavor::NonNegative,
        }
    }

    /// Negative part `t⁻`, so that `t = t⁺ - t⁻`.
    pub fn negative_part(&self) -> Self {
        let values = self
            .values
            .iter()
            .map(|v| {
                if *v < V::zero() {
                    -v.clone()
                } else {
                    V::zero()
                }
            })
            .collect();
        Table {
            n: self.n,
            values,
            flavor: Flavor::NonNegative,
        }
    }

    pub fn to_rational(&self) -> RatTable {
        Table {
            n: self.n,
            values: self.values.iter().map(Entry::to_rational).collect(),
            flavor: self.flavor,
        }
    }
}

impl Table<i64> {
    pub fn scaled(&self, k: i64) -> Self {
        let flavor = if k < 0 { Flavor::Signed } else { self.flavor };
        Table {
            n: self.n,
            values: self.values.iter().map(|v| v * k).collect(),
            flavor,
        }
    }
}

impl Table<Rational> {
    /// Converts to an integer table if every entry is an `i64` integer.
    pub fn to_integer(&self) -> Option<IntTable> {
        let values = self
            .values
            .iter()
            .map(Rational::to_i64)
            .collect::<Option<Vec<_>>>()?;
        Some(Table {
            n: self.n,
            values,
            flavor: self.flavor,
        })
    }
}

impl<V: Entry> fmt::Debug for Table<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Table[{}](", self.flavor_name())?;
        let mut first = true;
        for (i, v) in self.support() {
            if !first {
                write!(f, ", ")?;
            }
            first = false;
            write!(f, "{}:{}", super::cell::bitstring(i, self.n), v)?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flavor_enforced() {
        assert!(IntTable::new(1, vec![1, -1], Flavor::NonNegative).is_err());
        assert!(IntTable::new(1, vec![1, -1], Flavor::Signed).is_ok());
        assert!(IntTable::new(2, vec![1, 1], Flavor::Signed).is_err());
        let r = RatTable::new(
            1,
            vec![Rational::new(-1, 2), Rational::ZERO],
            Flavor::NonNegative,
        );
        assert_eq!(
            r.unwrap_err(),
            Error::FlavorViolation {
                cell: 0,
                flavor: "nonnegative-rational"
            }
        );
    }

    #[test]
    fn parts_recombine() {
        let t = IntTable::new(2, vec![2, -1, 0, -3], Flavor::Signed).unwrap();
        let back = t.positive_part().difference(&t.negative_part()).unwrap();
        assert_eq!(back, t);
        assert_eq!(t.total(), -2);
        assert_eq!(t.support().count(), 3);
    }

    #[test]
    fn from_entries_accumulates() {
        let t = IntTable::from_entries(2, [(1, 2), (1, 3), (0, 1)], Flavor::NonNegative).unwrap();
        assert_eq!(t.values(), &[1, 5, 0, 0]);
        assert!(IntTable::from_entries(2, [(4, 1)], Flavor::Signed).is_err());
    }
}
