//! Sparse vectors indexed by the subset lattice of `V`.

use std::collections::BTreeMap;
use std::fmt::Debug;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use crate::error::{check_cap, Result};
use crate::vertex_set::VertexSet;

/// Largest `n` for which dense `2^n` lattice arrays are materialized.
pub const DENSE_CAP: usize = 16;

/// Entry type of a [`SubsetVector`]: integers for clique vectors and imsets,
/// reals for parameters and log-likelihood tables.
pub trait Scalar:
    Copy
    + PartialEq
    + Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Neg<Output = Self>
    + Mul<Output = Self>
    + AddAssign
    + SubAssign
{
    const ZERO: Self;
    const ONE: Self;

    fn to_f64(self) -> f64;
}

impl Scalar for i64 {
    const ZERO: Self = 0;
    const ONE: Self = 1;

    fn to_f64(self) -> f64 {
        self as f64
    }
}

impl Scalar for f64 {
    const ZERO: Self = 0.0;
    const ONE: Self = 1.0;

    fn to_f64(self) -> f64 {
        self
    }
}

/// Vector over subsets of `{0, .., n-1}` with implicit zeros.
///
/// Zero entries are never stored, so two vectors are equal exactly when
/// their stored entries agree.
#[derive(Clone, PartialEq)]
pub struct SubsetVector<T = i64> {
    n: usize,
    entries: BTreeMap<VertexSet, T>,
}

impl<T: Scalar> SubsetVector<T> {
    pub fn zeros(n: usize) -> Self {
        SubsetVector {
            n,
            entries: BTreeMap::new(),
        }
    }

    /// Indicator `δ(A)` of the single set `A`.
    pub fn delta(n: usize, a: VertexSet) -> Self {
        let mut v = Self::zeros(n);
        v.set(a, T::ONE);
        v
    }

    pub fn from_entries<I: IntoIterator<Item = (VertexSet, T)>>(n: usize, entries: I) -> Self {
        let mut v = Self::zeros(n);
        for (a, x) in entries {
            v.add_at(a, x);
        }
        v
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, a: VertexSet) -> T {
        self.entries.get(&a).copied().unwrap_or(T::ZERO)
    }

    pub fn set(&mut self, a: VertexSet, x: T) {
        debug_assert!(a.fits(self.n), "{a} outside 0..{}", self.n);
        if x == T::ZERO {
            self.entries.remove(&a);
        } else {
            self.entries.insert(a, x);
        }
    }

    pub fn add_at(&mut self, a: VertexSet, x: T) {
        let cur = self.get(a);
        self.set(a, cur + x);
    }

    /// Stored (nonzero) entries in increasing set order.
    pub fn iter(&self) -> impl Iterator<Item = (VertexSet, T)> + '_ {
        self.entries.iter().map(|(&a, &x)| (a, x))
    }

    pub fn support_len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Dense `2^n` array indexed by set mask.
    pub fn to_dense(&self) -> Result<Vec<T>> {
        check_cap("dense subset lattice", self.n, DENSE_CAP)?;
        let mut out = vec![T::ZERO; 1 << self.n];
        for (a, x) in self.iter() {
            out[a.index()] = x;
        }
        Ok(out)
    }

    pub fn from_dense(n: usize, dense: &[T]) -> Self {
        assert_eq!(dense.len(), 1 << n);
        Self::from_entries(
            n,
            dense
                .iter()
                .enumerate()
                .map(|(i, &x)| (VertexSet::from_bits(i as u64), x)),
        )
    }

    /// `Σ_A self_A · other_A`, evaluated in `f64`.
    pub fn dot<U: Scalar>(&self, other: &SubsetVector<U>) -> f64 {
        if self.support_len() <= other.support_len() {
            self.iter()
                .map(|(a, x)| x.to_f64() * other.get(a).to_f64())
                .sum()
        } else {
            other
                .iter()
                .map(|(a, y)| self.get(a).to_f64() * y.to_f64())
                .sum()
        }
    }

    /// Entries on subsets of `a`, zero elsewhere.
    #[must_use]
    pub fn restricted_to(&self, a: VertexSet) -> Self {
        SubsetVector {
            n: self.n,
            entries: self
                .entries
                .iter()
                .filter(|(s, _)| s.is_subset(a))
                .map(|(&s, &x)| (s, x))
                .collect(),
        }
    }

    pub fn to_f64(&self) -> SubsetVector<f64> {
        SubsetVector {
            n: self.n,
            entries: self.iter().map(|(a, x)| (a, x.to_f64())).collect(),
        }
    }

    /// Largest absolute coordinate difference.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut keys: Vec<VertexSet> = self.entries.keys().copied().collect();
        keys.extend(other.entries.keys().copied());
        keys.into_iter()
            .map(|a| (self.get(a).to_f64() - other.get(a).to_f64()).abs())
            .fold(0.0, f64::max)
    }

    pub fn scale(&self, k: T) -> Self {
        Self::from_entries(self.n, self.iter().map(|(a, x)| (a, x * k)))
    }
}

impl SubsetVector<f64> {
    /// Nonzero entries must be integers; returns the integer vector.
    pub fn to_integer(&self) -> Option<SubsetVector<i64>> {
        self.iter()
            .map(|(a, x)| (x.fract() == 0.0).then_some((a, x as i64)))
            .collect::<Option<Vec<_>>>()
            .map(|e| SubsetVector::from_entries(self.n, e))
    }
}

impl<T: Scalar> Debug for SubsetVector<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_map().entries(self.entries.iter()).finish()
    }
}

impl<T: Scalar> Add for &SubsetVector<T> {
    type Output = SubsetVector<T>;

    fn add(self, rhs: Self) -> SubsetVector<T> {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<T: Scalar> Sub for &SubsetVector<T> {
    type Output = SubsetVector<T>;

    fn sub(self, rhs: Self) -> SubsetVector<T> {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<T: Scalar> Neg for &SubsetVector<T> {
    type Output = SubsetVector<T>;

    fn neg(self) -> SubsetVector<T> {
        SubsetVector {
            n: self.n,
            entries: self.entries.iter().map(|(&a, &x)| (a, -x)).collect(),
        }
    }
}

impl<T: Scalar> AddAssign<&SubsetVector<T>> for SubsetVector<T> {
    fn add_assign(&mut self, rhs: &SubsetVector<T>) {
        debug_assert_eq!(self.n, rhs.n);
        for (a, x) in rhs.iter() {
            self.add_at(a, x);
        }
    }
}

impl<T: Scalar> SubAssign<&SubsetVector<T>> for SubsetVector<T> {
    fn sub_assign(&mut self, rhs: &SubsetVector<T>) {
        debug_assert_eq!(self.n, rhs.n);
        for (a, x) in rhs.iter() {
            self.add_at(a, -x);
        }
    }
}
